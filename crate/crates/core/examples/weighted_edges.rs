//! Derivatives on a weighted graph. With the unit rate the pair's weight
//! grows as `w + t`; with the weighted rate it grows as `w(1 + t)`.

use spectral_edge::graph::{EdgeSet, Graph};
use spectral_edge::spectral::{self, Spectrum};
use spectral_edge::verify;

fn main() -> spectral_edge::Result<()> {
    let mut g = Graph::empty(4);
    g.add_edge(0, 1, 2.0)?;
    g.add_edge(0, 2, 1.0)?;
    g.add_edge(1, 2, 0.5)?;
    g.add_edge(2, 3, 3.0)?;
    let s = Spectrum::of(&g)?;
    let unit = EdgeSet::single(g.pair(2, 3)?);
    let scaled = spectral::weight_scaled(&g, &unit)?;

    for (name, ec) in [("w + t", &unit), ("w(1 + t)", &scaled)] {
        let fd = verify::fd_report_with(&g, &s, ec, verify::DEFAULT_STEP)?;
        println!("{name}:");
        for (grp, n) in s.groups.iter().zip(&fd.numeric) {
            let a = spectral::eigenvalue_edge_derivative(&g, grp, ec)?;
            println!("  λ={:.4}  dλ {a:>9.6}  fd {n:>9.6}", grp.value);
        }
        println!(
            "  dK {:.6}",
            spectral::kemeny_edge_derivative_with(&g, &s, ec)?
        );
    }
    Ok(())
}
