//! Removing one clique edge from a barbell and asking what restoring it
//! would do to Kemeny's constant: the derivative is positive, so adding the
//! edge back makes the walk slower to mix.

use spectral_edge::{families, spectral, verify};

fn main() -> spectral_edge::Result<()> {
    for (r, p) in [(4, 2), (5, 3), (6, 4)] {
        let g = families::almost_barbell(r, p)?;
        let e = families::almost_barbell_missing_edge(r, p)?;
        let dk = spectral::kemeny_edge_derivative(&g, &spectral_edge::EdgeSet::single(e))?;
        let delta = verify::delta_kemeny(&g, e)?;
        println!("almost-barbell({r},{p}) missing {e}: dK {dk:+.4}, ΔK {delta:+.4}");
    }
    Ok(())
}
