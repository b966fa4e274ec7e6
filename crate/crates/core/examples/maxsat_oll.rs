// Weighted-CNF construction and core-guided MaxSAT.

use boolfact::cnf::{Var, WcnfFormula};
use boolfact::oll::{brute_force_min_cost, solve_maxsat, OllOptions};
use boolfact::Result;

pub fn run_example() -> Result<()> {
    // at most one of x1..x4 may hold, yet each is wanted
    let mut f = WcnfFormula::new();
    let xs: Vec<Var> = f.new_vars(4);
    for i in 0..4 {
        for j in i + 1..4 {
            f.add_hard(&[xs[i].neg(), xs[j].neg()])?;
        }
        f.add_soft(xs[i].pos(), 1)?;
    }
    let out = solve_maxsat(&f, &OllOptions::default())?;
    let stats = out.stats();
    println!(
        "cost {:?}, {} cores, {} totalizers, {} SAT calls",
        out.cost(),
        stats.cores,
        stats.totalizers,
        stats.sat_calls
    );
    assert!(out.is_optimal());
    assert_eq!(out.cost(), Some(3));
    assert_eq!(brute_force_min_cost(&f), Some(3));

    let model = out.model().expect("optimal outcome has a model");
    assert_eq!(f.violated_hard(model), 0);
    assert_eq!(f.cost_of(model), 3);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
