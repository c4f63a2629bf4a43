//! Exhaustive extremal search over all labeled connected graphs of each
//! order, with the full table check applied to every graph visited.
//!
//! Per order the search keeps the five largest distinct `dK` values, the five
//! smallest, and the five largest eigenvalue derivatives. Values are
//! compared on a `1e-9` grid; equal values are resolved by smallest mask and
//! then smallest pair, so the outcome does not depend on how the masks were
//! split across threads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::graph::{Graph, TwinKind, VertexPair};
use crate::spectral::{derivative_table_with, Spectrum};
use crate::survey::enumerate::{check_order, connected_masks, pair_slots};
use crate::survey::growth::growth_fit;
use crate::theorems::{check_mfpt, check_table, Violation};

pub const TOP_K: usize = 5;
const KEY_SCALE: f64 = 1e9;
const CHUNK: u64 = 1 << 12;
const CHUNKS_PER_CHECKPOINT: u64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub n: usize,
    /// Edge bitmask over the lexicographic pair slots.
    pub mask: u64,
    pub pair: VertexPair,
    pub d_kemeny: f64,
    /// Largest eigenvalue derivative over groups for this pair.
    pub d_lambda_max: f64,
    /// Eigenvalue at which `d_lambda_max` is attained.
    pub lambda_at_max: f64,
    pub kemeny: f64,
    pub kemeny_lower_bound: f64,
    pub kemeny_upper_bound: f64,
}

impl SearchRecord {
    pub fn graph(&self) -> Graph {
        Graph::from_mask(self.n, self.mask)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Max,
    Min,
}

/// Best records with distinct quantized values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopRecords {
    pub direction: Direction,
    entries: Vec<(i64, SearchRecord)>,
}

fn quantize(v: f64) -> i64 {
    (v * KEY_SCALE).round() as i64
}

impl TopRecords {
    pub fn new(direction: Direction) -> Self {
        TopRecords {
            direction,
            entries: Vec::new(),
        }
    }

    fn better_key(&self, a: i64, b: i64) -> bool {
        match self.direction {
            Direction::Max => a > b,
            Direction::Min => a < b,
        }
    }

    fn admits(&self, key: i64) -> bool {
        self.entries.len() < TOP_K
            || self
                .entries
                .last()
                .is_some_and(|(k, _)| !self.better_key(*k, key))
    }

    fn offer(&mut self, key: i64, rec: impl FnOnce() -> SearchRecord) {
        if !self.admits(key) {
            return;
        }
        let rec = rec();
        match self.entries.iter().position(|(k, _)| *k == key) {
            Some(i) => {
                let cur = &self.entries[i].1;
                if (rec.mask, rec.pair) < (cur.mask, cur.pair) {
                    self.entries[i].1 = rec;
                }
            }
            None => {
                let pos = self
                    .entries
                    .iter()
                    .position(|(k, _)| self.better_key(key, *k))
                    .unwrap_or(self.entries.len());
                self.entries.insert(pos, (key, rec));
                self.entries.truncate(TOP_K);
            }
        }
    }

    fn merge(mut self, other: TopRecords) -> TopRecords {
        for (k, r) in other.entries {
            self.offer(k, || r);
        }
        self
    }

    pub fn best(&self) -> Option<&SearchRecord> {
        self.entries.first().map(|(_, r)| r)
    }

    pub fn records(&self) -> impl Iterator<Item = &SearchRecord> {
        self.entries.iter().map(|(_, r)| r)
    }
}

/// Aggregate over a prefix `0..next_mask` of the masks of one order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderState {
    pub n: usize,
    pub next_mask: u64,
    pub graphs_visited: u64,
    pub max_d_kemeny: TopRecords,
    pub min_d_kemeny: TopRecords,
    pub max_d_lambda: TopRecords,
    /// Like `max_d_lambda`, restricted to pairs of degree-1 isolated twins.
    pub max_d_lambda_twins: TopRecords,
}

impl OrderState {
    fn new(n: usize) -> Self {
        OrderState {
            n,
            next_mask: 0,
            graphs_visited: 0,
            max_d_kemeny: TopRecords::new(Direction::Max),
            min_d_kemeny: TopRecords::new(Direction::Min),
            max_d_lambda: TopRecords::new(Direction::Max),
            max_d_lambda_twins: TopRecords::new(Direction::Max),
        }
    }

    fn merge(self, other: OrderState) -> OrderState {
        OrderState {
            n: self.n,
            next_mask: self.next_mask.max(other.next_mask),
            graphs_visited: self.graphs_visited + other.graphs_visited,
            max_d_kemeny: self.max_d_kemeny.merge(other.max_d_kemeny),
            min_d_kemeny: self.min_d_kemeny.merge(other.min_d_kemeny),
            max_d_lambda: self.max_d_lambda.merge(other.max_d_lambda),
            max_d_lambda_twins: self.max_d_lambda_twins.merge(other.max_d_lambda_twins),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.next_mask == 1u64 << pair_slots(self.n)
    }
}

/// A graph whose derivative table failed one or more checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Witness {
    pub n: usize,
    pub mask: u64,
    pub edges: Vec<(usize, usize)>,
    pub violations: Vec<Violation>,
}

#[derive(Debug)]
pub enum SearchError {
    Numerical(Error),
    Invariant(Box<Witness>),
}

impl From<Error> for SearchError {
    fn from(e: Error) -> Self {
        SearchError::Numerical(e)
    }
}

impl std::fmt::Display for SearchError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SearchError::Numerical(e) => write!(f, "{e}"),
            SearchError::Invariant(w) => write!(
                f,
                "graph n={} mask={} violates {} check(s)",
                w.n,
                w.mask,
                w.violations.len()
            ),
        }
    }
}

impl std::error::Error for SearchError {}

fn visit(state: &mut OrderState, n: usize, mask: u64) -> std::result::Result<(), SearchError> {
    let g = Graph::from_mask(n, mask);
    let s = Spectrum::of(&g)?;
    let table = derivative_table_with(&g, &s)?;
    let mut violations = check_table(&g, &table);
    violations.extend(check_mfpt(&g, &table)?);
    if !violations.is_empty() {
        return Err(SearchError::Invariant(Box::new(Witness {
            n,
            mask,
            edges: g.edges().iter().map(|p| p.key()).collect(),
            violations,
        })));
    }
    state.graphs_visited += 1;
    let leaf_twins: Vec<(usize, usize)> = g
        .find_twins()
        .iter()
        .filter(|t| t.kind == TwinKind::Isolated && t.degree == 1)
        .map(|t| t.pair.key())
        .collect();
    for row in &table.rows {
        let (gi, dl_max) =
            row.d_lambda
                .iter()
                .enumerate()
                .fold(
                    (0, f64::NEG_INFINITY),
                    |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc },
                );
        let rec = || SearchRecord {
            n,
            mask,
            pair: row.pair,
            d_kemeny: row.d_kemeny,
            d_lambda_max: dl_max,
            lambda_at_max: table.eigenvalues[gi],
            kemeny: table.kemeny,
            kemeny_lower_bound: table.kemeny_bounds.lower,
            kemeny_upper_bound: table.kemeny_bounds.upper,
        };
        let kk = quantize(row.d_kemeny);
        state.max_d_kemeny.offer(kk, rec);
        state.min_d_kemeny.offer(kk, rec);
        state.max_d_lambda.offer(quantize(dl_max), rec);
        if leaf_twins.contains(&row.pair.key()) {
            state.max_d_lambda_twins.offer(quantize(dl_max), rec);
        }
    }
    Ok(())
}

fn scan_range(n: usize, start: u64, end: u64) -> std::result::Result<OrderState, SearchError> {
    let mut state = OrderState::new(n);
    for mask in connected_masks(n, start..end) {
        visit(&mut state, n, mask)?;
    }
    state.next_mask = end;
    Ok(state)
}

/// Continues `state` up to mask `end`, splitting the work into chunks that
/// run on the current rayon pool.
fn advance(state: OrderState, end: u64) -> std::result::Result<OrderState, SearchError> {
    let n = state.n;
    let start = state.next_mask;
    let chunks: Vec<(u64, u64)> = (start..end)
        .step_by(CHUNK as usize)
        .map(|a| (a, (a + CHUNK).min(end)))
        .collect();
    let parts: Vec<_> = chunks
        .par_iter()
        .map(|&(a, b)| scan_range(n, a, b))
        .collect();
    let mut acc = state;
    for part in parts {
        acc = acc.merge(part?);
    }
    acc.next_mask = end;
    Ok(acc)
}

/// JSONL checkpoint log: one [`OrderState`] per line, appended as the
/// search progresses.
pub struct CheckpointLog {
    path: PathBuf,
}

impl CheckpointLog {
    pub fn new(path: impl AsRef<Path>) -> Self {
        CheckpointLog {
            path: path.as_ref().to_path_buf(),
        }
    }

    /// Latest saved state for order `n`, if any.
    pub fn latest(&self, n: usize) -> Result<Option<OrderState>> {
        let file = match std::fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let mut latest = None;
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let state: OrderState = serde_json::from_str(&line).map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })?;
            if state.n == n {
                latest = Some(state);
            }
        }
        Ok(latest)
    }

    pub fn append(&self, state: &OrderState) -> Result<()> {
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        writeln!(f, "{}", serde_json::to_string(state)?)?;
        Ok(())
    }
}

/// Exhaustive search of order `n`, optionally resuming from and appending
/// to a checkpoint log.
pub fn search_order(
    n: usize,
    log: Option<&CheckpointLog>,
) -> std::result::Result<OrderState, SearchError> {
    check_order(n)?;
    let total = 1u64 << pair_slots(n);
    let mut state = match log {
        Some(l) => l.latest(n)?.unwrap_or_else(|| OrderState::new(n)),
        None => OrderState::new(n),
    };
    let step = CHUNK * CHUNKS_PER_CHECKPOINT;
    while state.next_mask < total {
        let end = (state.next_mask + step).min(total);
        state = advance(state, end)?;
        if let Some(l) = log {
            l.append(&state)?;
        }
    }
    Ok(state)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrderReport {
    pub n: usize,
    pub graphs_visited: u64,
    pub max_d_lambda: SearchRecord,
    /// Best pair of degree-1 isolated twins; absent when the order has none.
    pub max_d_lambda_twins: Option<SearchRecord>,
    pub max_d_kemeny: SearchRecord,
    pub min_d_kemeny: SearchRecord,
    pub top_max_d_lambda: Vec<SearchRecord>,
    pub top_max_d_kemeny: Vec<SearchRecord>,
    pub top_min_d_kemeny: Vec<SearchRecord>,
}

impl From<&OrderState> for OrderReport {
    fn from(s: &OrderState) -> Self {
        let all = |t: &TopRecords| t.records().copied().collect::<Vec<_>>();
        OrderReport {
            n: s.n,
            graphs_visited: s.graphs_visited,
            max_d_lambda: *s
                .max_d_lambda
                .best()
                .expect("every order has a connected graph"),
            max_d_lambda_twins: s.max_d_lambda_twins.best().copied(),
            max_d_kemeny: *s
                .max_d_kemeny
                .best()
                .expect("every order has a connected graph"),
            min_d_kemeny: *s
                .min_d_kemeny
                .best()
                .expect("every order has a connected graph"),
            top_max_d_lambda: all(&s.max_d_lambda),
            top_max_d_kemeny: all(&s.max_d_kemeny),
            top_min_d_kemeny: all(&s.min_d_kemeny),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SurveyReport {
    pub n_max: usize,
    pub orders: Vec<OrderReport>,
    /// Log-log slope of the max-`dK` series, when at least four orders exist.
    pub max_d_kemeny_exponent: Option<f64>,
    pub min_d_kemeny_exponent: Option<f64>,
    pub verdicts: Vec<Verdict>,
}

/// Smallest order from which the lollipop and path claims are compared.
pub const FAMILY_CLAIMS_FROM: usize = 5;

/// `(r, s)` when `g` is the lollipop `L(r,s)` with `r >= 3` (a clique on
/// `r` vertices joined by a bridge to a path on `s` vertices) and `pair` is
/// the edge at the far end of the path.
pub fn lollipop_far_edge_shape(g: &Graph, pair: VertexPair) -> Option<(usize, usize)> {
    let n = g.n();
    if !pair.is_edge() || !g.is_connected() {
        return None;
    }
    let deg = |v: usize| g.neighbors(v).count();
    let (leaf, mut next) = match (deg(pair.x), deg(pair.y)) {
        (1, _) => (pair.x, pair.y),
        (_, 1) => (pair.y, pair.x),
        _ => return None,
    };
    let mut on_path = vec![false; n];
    on_path[leaf] = true;
    let mut prev = leaf;
    while deg(next) == 2 {
        on_path[next] = true;
        let after = g.neighbors(next).find(|&u| u != prev)?;
        prev = next;
        next = after;
    }
    let s = on_path.iter().filter(|&&b| b).count();
    let r = n - s;
    let clique: Vec<usize> = (0..n).filter(|&v| !on_path[v]).collect();
    let is_clique = clique
        .iter()
        .all(|&a| clique.iter().all(|&b| a == b || g.weight(a, b) > 0.0));
    (r >= 3 && is_clique && g.edge_count() == r * (r - 1) / 2 + s).then_some((r, s))
}

/// True when `g` is a path and `pair` joins its two ends.
pub fn is_path_closing_pair(g: &Graph, pair: VertexPair) -> bool {
    let n = g.n();
    if !g.is_connected() || g.edge_count() != n - 1 {
        return false;
    }
    let deg = |v: usize| g.neighbors(v).count();
    (0..n).all(|v| deg(v) <= 2) && deg(pair.x) == 1 && deg(pair.y) == 1 && !pair.is_edge()
}

pub fn is_degree_one_isolated_twins(g: &Graph, pair: VertexPair) -> bool {
    g.find_twins()
        .iter()
        .any(|t| t.pair.key() == pair.key() && t.kind == TwinKind::Isolated && t.degree == 1)
}

fn verdicts(orders: &[OrderReport]) -> Vec<Verdict> {
    let mut out = Vec::new();

    let global = orders
        .iter()
        .map(|o| o.max_d_lambda.d_lambda_max)
        .fold(f64::NEG_INFINITY, f64::max);
    let global_key = quantize(global);
    let twin_orders: Vec<String> = orders
        .iter()
        .filter(|o| {
            o.max_d_lambda_twins
                .is_some_and(|t| quantize(t.d_lambda_max) == global_key)
        })
        .map(|o| o.n.to_string())
        .collect();
    out.push(Verdict {
        claim: "maximum eigenvalue derivative over all graphs and pairs is 1, attained by degree-1 isolated twins".into(),
        holds: global_key == quantize(1.0) && !twin_orders.is_empty(),
        detail: format!(
            "max dλ = {global:.12}; attained by degree-1 isolated twins for n = {}",
            if twin_orders.is_empty() { "none".to_string() } else { twin_orders.join(", ") }
        ),
    });

    let family = orders.iter().filter(|o| o.n >= FAMILY_CLAIMS_FROM);
    let lollipop: Vec<String> = family
        .clone()
        .filter(|o| lollipop_far_edge_shape(&o.max_d_kemeny.graph(), o.max_d_kemeny.pair).is_none())
        .map(|o| o.n.to_string())
        .collect();
    out.push(Verdict {
        claim: "largest dK is on a lollipop at its far edge".into(),
        holds: lollipop.is_empty(),
        detail: if lollipop.is_empty() {
            format!(
                "holds for n = {FAMILY_CLAIMS_FROM}..={}",
                orders.last().map_or(0, |o| o.n)
            )
        } else {
            format!("fails for n = {}", lollipop.join(", "))
        },
    });

    let path: Vec<String> = family
        .filter(|o| !is_path_closing_pair(&o.min_d_kemeny.graph(), o.min_d_kemeny.pair))
        .map(|o| o.n.to_string())
        .collect();
    out.push(Verdict {
        claim: "smallest dK is on the path at the pair joining its ends".into(),
        holds: path.is_empty(),
        detail: if path.is_empty() {
            format!(
                "holds for n = {FAMILY_CLAIMS_FROM}..={}",
                orders.last().map_or(0, |o| o.n)
            )
        } else {
            format!("fails for n = {}", path.join(", "))
        },
    });
    out
}

fn exponent(orders: &[OrderReport], pick: impl Fn(&OrderReport) -> f64) -> Option<f64> {
    let series: Vec<(f64, f64)> = orders
        .iter()
        .filter(|o| o.n >= FAMILY_CLAIMS_FROM)
        .map(|o| (o.n as f64, pick(o)))
        .collect();
    growth_fit(&series).ok()
}

/// Searches every order `2..=n_max` and summarizes the extremal findings.
pub fn conjecture_search(
    n_max: usize,
    log: Option<&CheckpointLog>,
) -> std::result::Result<SurveyReport, SearchError> {
    check_order(n_max)?;
    let mut orders = Vec::new();
    for n in 2..=n_max {
        let state = search_order(n, log)?;
        orders.push(OrderReport::from(&state));
    }
    Ok(SurveyReport {
        n_max,
        max_d_kemeny_exponent: exponent(&orders, |o| o.max_d_kemeny.d_kemeny),
        min_d_kemeny_exponent: exponent(&orders, |o| o.min_d_kemeny.d_kemeny),
        verdicts: verdicts(&orders),
        orders,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::PairKind;

    fn rec(mask: u64, x: usize) -> SearchRecord {
        SearchRecord {
            n: 4,
            mask,
            pair: VertexPair {
                x,
                y: 3,
                kind: PairKind::Edge,
            },
            d_kemeny: 0.0,
            d_lambda_max: 0.0,
            lambda_at_max: 0.0,
            kemeny: 0.0,
            kemeny_lower_bound: 0.0,
            kemeny_upper_bound: 0.0,
        }
    }

    #[test]
    fn top_records_keep_distinct_best() {
        let mut t = TopRecords::new(Direction::Max);
        for (i, key) in [3, 9, 1, 9, 7, 5, 8, 2].into_iter().enumerate() {
            t.offer(key, || rec(100 - i as u64, 0));
        }
        let keys: Vec<i64> = t.entries.iter().map(|(k, _)| *k).collect();
        assert_eq!(keys, vec![9, 8, 7, 5, 3]);
        // key 9 offered at i=1 (mask 99) and i=3 (mask 97): smaller mask wins
        assert_eq!(t.best().unwrap().mask, 97);
    }

    #[test]
    fn top_records_merge_is_order_independent() {
        let offers: Vec<(i64, u64)> = (0..40)
            .map(|i| ((i * 7 % 11) as i64, 1000 - (i * 13 % 17) as u64))
            .collect();
        let build = |items: &[(i64, u64)]| {
            let mut t = TopRecords::new(Direction::Min);
            for &(k, m) in items {
                t.offer(k, || rec(m, 0));
            }
            t
        };
        let whole = build(&offers);
        let split = build(&offers[25..]).merge(build(&offers[..25]));
        assert_eq!(whole, split);
    }

    #[test]
    fn structure_recognizers() {
        for (r, s) in [(3, 1), (3, 3), (4, 2), (5, 4)] {
            let lol = families::lollipop(r, s).unwrap();
            let far = families::lollipop_far_edge(r, s).unwrap();
            assert_eq!(lollipop_far_edge_shape(&lol, far), Some((r, s)));
            assert_eq!(lollipop_far_edge_shape(&lol, lol.pair(0, 1).unwrap()), None);
        }
        let lol = families::lollipop(3, 3).unwrap();
        assert_eq!(lollipop_far_edge_shape(&lol, lol.pair(3, 4).unwrap()), None);
        assert_eq!(
            lollipop_far_edge_shape(
                &families::path(5).unwrap(),
                VertexPair {
                    x: 0,
                    y: 1,
                    kind: PairKind::Edge
                }
            ),
            None
        );
        let mut t = Graph::empty(6);
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5)] {
            t.add_edge(a, b, 1.0).unwrap();
        }
        assert_eq!(lollipop_far_edge_shape(&t, t.pair(4, 5).unwrap()), None);

        let p = families::path(6).unwrap();
        assert!(is_path_closing_pair(&p, p.pair(0, 5).unwrap()));
        assert!(!is_path_closing_pair(&p, p.pair(0, 4).unwrap()));

        let c = families::cricket();
        assert!(is_degree_one_isolated_twins(&c, c.pair(3, 4).unwrap()));
        assert!(!is_degree_one_isolated_twins(&c, c.pair(0, 1).unwrap()));
    }

    #[test]
    fn order_three() {
        let s = search_order(3, None).unwrap();
        assert_eq!(s.graphs_visited, 4);
        assert!(s.is_complete());
        let best = s.max_d_lambda.best().unwrap();
        assert!((best.d_lambda_max - 1.0).abs() < 1e-12);
    }
}
