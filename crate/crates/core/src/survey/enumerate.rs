//! Labeled connected graphs on a few vertices, encoded as edge bitmasks.
//!
//! Bit `i` of a mask stands for the `i`-th pair in lexicographic order
//! (`{0,1}, {0,2}, .., {n-2,n-1}`), matching [`Graph::to_mask`].

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MIN_ORDER: usize = 2;
pub const MAX_ORDER: usize = 7;

pub fn pair_slots(n: usize) -> usize {
    n * (n - 1) / 2
}

pub(crate) fn check_order(n: usize) -> Result<()> {
    if (MIN_ORDER..=MAX_ORDER).contains(&n) {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "exhaustive enumeration supports {MIN_ORDER} <= n <= {MAX_ORDER}, got {n}"
        )))
    }
}

/// Neighbour bitsets for the graph encoded by `mask`.
fn adjacency(n: usize, mask: u64) -> [u8; MAX_ORDER] {
    let mut adj = [0u8; MAX_ORDER];
    let mut bit = 0;
    for x in 0..n {
        for y in x + 1..n {
            if mask >> bit & 1 == 1 {
                adj[x] |= 1 << y;
                adj[y] |= 1 << x;
            }
            bit += 1;
        }
    }
    adj
}

pub fn mask_is_connected(n: usize, mask: u64) -> bool {
    let adj = adjacency(n, mask);
    let full: u8 = ((1u16 << n) - 1) as u8;
    let mut reached: u8 = 1;
    loop {
        let mut next = reached;
        for (v, nb) in adj.iter().enumerate().take(n) {
            if reached >> v & 1 == 1 {
                next |= nb;
            }
        }
        if next == reached {
            return reached == full;
        }
        reached = next;
    }
}

/// Connected masks in `range`, ascending.
pub fn connected_masks(n: usize, range: std::ops::Range<u64>) -> impl Iterator<Item = u64> {
    range.filter(move |&m| mask_is_connected(n, m))
}

/// Every labeled simple connected graph on `n` vertices, once each, in
/// ascending mask order.
pub fn enumerate_connected(n: usize) -> Result<impl Iterator<Item = (u64, Graph)>> {
    check_order(n)?;
    let total = 1u64 << pair_slots(n);
    Ok(connected_masks(n, 0..total).map(move |m| (m, Graph::from_mask(n, m))))
}
