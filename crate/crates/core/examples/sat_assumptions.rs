// Incremental SAT with assumptions and unsatisfiable cores.

use boolfact::cnf::Lit;
use boolfact::sat::{Budget, SolveResult, Solver};
use boolfact::Result;

pub fn run_example() -> Result<()> {
    let mut s = Solver::new();
    let v: Vec<Lit> = (0..4).map(|_| s.new_var().pos()).collect();
    // v0 -> v1 -> v2, and v2 excludes v3
    s.add_clause(&[!v[0], v[1]]);
    s.add_clause(&[!v[1], v[2]]);
    s.add_clause(&[!v[2], !v[3]]);

    match s.solve(&[v[0]], &Budget::unlimited()) {
        SolveResult::Sat => println!("v0 alone: model {:?}", s.model()),
        other => panic!("expected SAT, got {other:?}"),
    }
    match s.solve(&[v[0], v[3]], &Budget::unlimited()) {
        SolveResult::Unsat(core) => {
            println!("v0 and v3: core {:?}", core.iter().map(|l| l.to_dimacs()).collect::<Vec<_>>());
            assert!(core.iter().all(|l| *l == v[0] || *l == v[3]));
        }
        other => panic!("expected UNSAT, got {other:?}"),
    }
    // the solver stays usable after an UNSAT answer under assumptions
    assert!(s.solve(&[v[3]], &Budget::unlimited()).is_sat());
    println!("{:?}", s.stats());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
