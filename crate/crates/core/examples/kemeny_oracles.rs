//! Kemeny's constant two ways: from the normalized Laplacian spectrum and
//! from mean first passage times of the random walk.

use spectral_edge::families::Family;
use spectral_edge::{spectral, verify};

fn main() -> spectral_edge::Result<()> {
    for spec in [
        "path:6",
        "cycle:7",
        "complete:5",
        "bipartite:2,4",
        "cricket",
        "lollipop:4,3",
        "barbell:4,2",
    ] {
        let g = spec.parse::<Family>()?.build()?;
        let k = spectral::kemeny(&g)?;
        let m = verify::kemeny_via_mfpt(&g)?;
        println!(
            "{spec:<14} spectral {k:>10.6}  mfpt {m:>10.6}  diff {:.1e}",
            (k - m).abs()
        );
    }
    Ok(())
}
