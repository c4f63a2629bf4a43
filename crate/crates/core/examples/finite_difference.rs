//! Compare the analytic derivative with a finite-difference estimate for a
//! few pairs, including a pair spanning a repeated eigenvalue.

use spectral_edge::graph::EdgeSet;
use spectral_edge::{families, verify};

fn main() -> spectral_edge::Result<()> {
    let cases = [
        ("cricket", families::cricket(), (3, 4)),
        ("cricket", families::cricket(), (0, 1)),
        ("cycle:6", families::cycle(6)?, (0, 3)),
        ("lollipop:4,3", families::lollipop(4, 3)?, (5, 6)),
    ];
    for (name, g, (x, y)) in cases {
        let p = g.pair(x, y)?;
        let r = verify::fd_report(&g, &EdgeSet::single(p), verify::DEFAULT_STEP)?;
        println!("{name} {p} ({:?} stencil)", r.stencil);
        for ((l, a), n) in r.eigenvalues.iter().zip(&r.analytic).zip(&r.numeric) {
            println!("  λ={l:<8.4} analytic {a:>11.7}  fd {n:>11.7}");
        }
        println!(
            "  dK analytic {:.7}  fd {:.7}  agree: {}",
            r.analytic_dk,
            r.numeric_dk,
            r.agrees()
        );
    }
    Ok(())
}
