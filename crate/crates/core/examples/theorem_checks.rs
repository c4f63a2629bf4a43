//! Runs the structural identities (sum rules, bounds, bipartite and twin
//! formulas, MFPT agreement) on a handful of graphs and reports violations.

use spectral_edge::families::Family;
use spectral_edge::theorems;

fn main() -> spectral_edge::Result<()> {
    for spec in [
        "cricket",
        "paw",
        "complete:6",
        "cycle:9",
        "bipartite:3,4",
        "lollipop:5,2",
        "almost-barbell:5,3",
    ] {
        let g = spec.parse::<Family>()?.build()?;
        let (t, violations) = theorems::check_graph(&g)?;
        println!(
            "{spec:<20} {} pairs, {} groups, {} violations",
            t.rows.len(),
            t.eigenvalues.len(),
            violations.len()
        );
        for v in violations {
            println!("  {v}");
        }
    }
    Ok(())
}
