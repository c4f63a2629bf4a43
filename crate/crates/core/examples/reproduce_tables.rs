//! Recomputes the reference tables and writes them as CSV to stdout.

use spectral_edge::survey::reproduce_tables;

fn main() -> spectral_edge::Result<()> {
    let report = reproduce_tables()?;
    report.write_csv(std::io::stdout().lock())?;
    eprintln!(
        "{} of {} entries within tolerance",
        report.passed(),
        report.entries.len()
    );
    for e in report.failures() {
        eprintln!(
            "  {} {} {}: computed {:.4}, published {}",
            e.table.name(),
            e.row,
            e.column,
            e.computed,
            e.published
        );
    }
    Ok(())
}
