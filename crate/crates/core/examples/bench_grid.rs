// A small (dataset, k, method) grid with its table and JSON lines.

use boolfact::bench::{run_bench, BenchDataset, Method, RunConfig};
use boolfact::factor::{generate_planted, GenSpec};
use boolfact::report::emit_report;
use boolfact::{BoolMatrix, Result};

pub fn run_example() -> Result<()> {
    let planted = generate_planted(&GenSpec {
        m: 30,
        n: 24,
        k: 4,
        d: 0.3,
        seed: 2,
    })?;
    let datasets = vec![
        BenchDataset {
            name: "planted".into(),
            matrix: planted,
            ks: Vec::new(),
        },
        BenchDataset {
            name: "identity".into(),
            matrix: BoolMatrix::identity(8),
            ks: vec![2, 8],
        },
    ];
    let cells = run_bench(&datasets, &[Method::Rui, Method::Frui], &RunConfig::default(), 2)?;
    let (table, jsonl) = emit_report(&cells)?;
    print!("{table}");
    assert_eq!(jsonl.lines().count(), cells.len());
    assert!(cells.iter().filter(|c| c.dataset == "identity" && c.k == 8).all(|c| c.errors == 0));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
