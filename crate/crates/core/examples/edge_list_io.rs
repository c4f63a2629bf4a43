//! Writing a generated graph to the edge-list format and reading it back.

use spectral_edge::{families, io, spectral};

fn main() -> spectral_edge::Result<()> {
    let mut g = families::lollipop(4, 2)?;
    g.set_weight(4, 5, 2.5);
    let text = io::format_edge_list(&g);
    print!("{text}");

    let back = io::parse_edge_list(&text)?;
    assert_eq!(back, g);
    println!(
        "K = {:.6} before and {:.6} after the round trip",
        spectral::kemeny(&g)?,
        spectral::kemeny(&back)?
    );
    Ok(())
}
