//! Eigenvalue and Kemeny derivatives for every vertex pair of the cricket
//! graph (a triangle with two pendant vertices on one corner).
//!
//! ```text
//! cargo run --example cricket_table
//! ```

use spectral_edge::{families, spectral};

fn main() -> spectral_edge::Result<()> {
    let g = families::cricket();
    let t = spectral::derivative_table(&g)?;

    print!("{:<7}", "pair");
    for l in &t.eigenvalues {
        print!("{:>10}", format!("λ={l:.3}"));
    }
    println!("{:>10}", "dK");
    for r in &t.rows {
        let tag = if r.pair.is_edge() { "" } else { "*" };
        print!("{:<7}", format!("{}{tag}", r.pair));
        for d in &r.d_lambda {
            print!("{d:>10.4}");
        }
        println!("{:>10.4}", r.d_kemeny);
    }
    println!("(* non-edge)  K = {:.6}", t.kemeny);
    Ok(())
}
