// Pairwise incompatible 1-entries and the cost they force up front.

use boolfact::encode::{encode_undercover, find_incompatible_sets, incompatible};
use boolfact::oll::{solve_maxsat, OllOptions};
use boolfact::{BoolMatrix, Result};

pub fn run_example() -> Result<()> {
    let x = BoolMatrix::identity(6);
    assert!(incompatible(&x, (0, 0), (1, 1)));
    let sets = find_incompatible_sets(&x);
    println!("identity 6: incompatible set sizes {:?}", sets.iter().map(|s| s.len()).collect::<Vec<_>>());

    for simplify in [false, true] {
        let (f, _, report) = encode_undercover(&x, 1, true, simplify)?;
        let out = solve_maxsat(&f, &OllOptions::default())?;
        println!(
            "simplify {simplify:<5}: precharged {}, cores {}, cost {:?}",
            report.precharged,
            out.stats().cores,
            out.cost()
        );
        assert_eq!(out.cost(), Some(5));
        if simplify {
            assert_eq!(report.precharged, 5);
            assert_eq!(out.stats().cores, 0);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
