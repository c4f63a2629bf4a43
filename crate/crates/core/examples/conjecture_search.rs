//! Exhaustive search over all labeled connected graphs up to a given order.
//!
//! ```text
//! cargo run --release --example conjecture_search -- 7 /tmp/search.jsonl
//! ```
//!
//! The optional second argument is a checkpoint log; rerunning with the same
//! path resumes where the previous run stopped.

use spectral_edge::survey::search::conjecture_search;
use spectral_edge::survey::CheckpointLog;

fn main() {
    let mut args = std::env::args().skip(1);
    let n_max: usize = args.next().map(|a| a.parse().expect("order")).unwrap_or(6);
    let log = args.next().map(CheckpointLog::new);

    let report = match conjecture_search(n_max, log.as_ref()) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("search aborted: {e}");
            std::process::exit(1);
        }
    };
    for o in &report.orders {
        println!(
            "n={} graphs={:<8} max dλ {:.6}  max dK {:>8.4} (mask {})  min dK {:>9.4} (mask {})",
            o.n,
            o.graphs_visited,
            o.max_d_lambda.d_lambda_max,
            o.max_d_kemeny.d_kemeny,
            o.max_d_kemeny.mask,
            o.min_d_kemeny.d_kemeny,
            o.min_d_kemeny.mask
        );
    }
    for v in &report.verdicts {
        println!(
            "{} {} ({})",
            if v.holds { "holds:" } else { "fails:" },
            v.claim,
            v.detail
        );
    }
}
