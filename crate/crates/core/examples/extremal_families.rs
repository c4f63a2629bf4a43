//! The lollipop far edge and the path's end-to-end non-edge, the pairs that
//! maximize and minimize the Kemeny derivative on small graphs, together with
//! the spectral bounds for each graph.

use spectral_edge::{families, spectral, survey};

fn main() -> spectral_edge::Result<()> {
    println!("lollipop L(r,s), far edge");
    let mut max_series = Vec::new();
    for (r, s) in [
        (3, 2),
        (3, 3),
        (3, 4),
        (4, 4),
        (4, 5),
        (5, 5),
        (5, 6),
        (5, 7),
    ] {
        let g = families::lollipop(r, s)?;
        let p = families::lollipop_far_edge(r, s)?;
        let t = spectral::derivative_table(&g)?;
        let dk = t.row(p.x, p.y).unwrap().d_kemeny;
        max_series.push(((r + s) as f64, dk));
        println!(
            "  n={:<3} L({r},{s}) {p:<8} dK {dk:>8.4}  upper {:>8.3}",
            r + s,
            t.kemeny_bounds.upper
        );
    }

    println!("path P_n, non-edge {{0,n-1}}");
    let mut min_series = Vec::new();
    for n in 5..=12 {
        let t = spectral::derivative_table(&families::path(n)?)?;
        let dk = t.row(0, n - 1).unwrap().d_kemeny;
        min_series.push((n as f64, dk));
        println!(
            "  n={n:<3} dK {dk:>10.4}  lower {:>10.3}",
            t.kemeny_bounds.lower
        );
    }

    println!(
        "log-log slopes: lollipop {:.3}, path {:.3}",
        survey::growth_fit(&max_series)?,
        survey::growth_fit(&min_series)?
    );
    Ok(())
}
