//! Adding an edge from one end of the 15-vertex path: the Kemeny derivative
//! against the actual change in Kemeny's constant.

use spectral_edge::{families, spectral, verify};

fn main() -> spectral_edge::Result<()> {
    let g = families::path(15)?;
    let t = spectral::derivative_table(&g)?;
    println!("{:<8} {:>10} {:>10}", "pair", "dK", "ΔK");
    for y in 2..15 {
        let p = g.pair(0, y)?;
        let dk = t.row(0, y).unwrap().d_kemeny;
        println!(
            "{:<8} {dk:>10.3} {:>10.3}",
            p.to_string(),
            verify::delta_kemeny(&g, p)?
        );
    }
    Ok(())
}
