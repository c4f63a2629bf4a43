use spectral_edge::survey::search::{search_order, OrderState};
use spectral_edge::survey::CheckpointLog;

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

fn run(threads: usize, n: usize) -> OrderState {
    in_pool(threads, || search_order(n, None).unwrap())
}

#[test]
fn identical_across_worker_counts() {
    let one = run(1, 6);
    let four = run(4, 6);
    assert_eq!(one, four);
    assert_eq!(
        serde_json::to_string(&one).unwrap(),
        serde_json::to_string(&four).unwrap()
    );
}

#[test]
fn resumes_from_checkpoint() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("search.jsonl");
    let log = CheckpointLog::new(&path);
    let full = search_order(6, Some(&log)).unwrap();

    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(
        lines.len() > 1,
        "expected several checkpoints, got {}",
        lines.len()
    );

    // keep only the first checkpoint and finish from there
    std::fs::write(&path, format!("{}\n", lines[0])).unwrap();
    let partial = log.latest(6).unwrap().unwrap();
    assert!(!partial.is_complete());
    let resumed = search_order(6, Some(&log)).unwrap();
    assert_eq!(resumed, full);
}
