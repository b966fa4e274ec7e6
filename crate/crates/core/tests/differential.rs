//! The internal solver against an exhaustive Python checker.

use std::collections::HashMap;
use std::path::Path;
use std::process::Command;

use boolfact::cnf::{write_dimacs_cnf, ExternalVerdict, Lit, Var, WcnfFormula};
use boolfact::sat::{Budget, ExternalSolver, SolveResult, Solver};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/brute_sat.py");

fn python_available() -> bool {
    Command::new("python3").arg("--version").output().is_ok_and(|o| o.status.success())
}

fn random_formula(rng: &mut ChaCha8Rng) -> WcnfFormula {
    let nvars = rng.gen_range(1..=10);
    // clause/variable ratios around the 3-SAT threshold give both verdicts
    let nclauses = rng.gen_range(1..=5 * nvars);
    let mut f = WcnfFormula::new();
    f.new_vars(nvars);
    for _ in 0..nclauses {
        let len = rng.gen_range(1..=3);
        let clause: Vec<Lit> = (0..len)
            .map(|_| Var::from_index(rng.gen_range(0..nvars)).lit(rng.gen_bool(0.5)))
            .collect();
        f.add_hard(&clause).expect("nonempty clause");
    }
    f
}

fn internal_sat(f: &WcnfFormula) -> bool {
    let mut s = Solver::from_formula(f);
    match s.solve(&[], &Budget::unlimited()) {
        SolveResult::Sat => {
            assert_eq!(f.violated_hard(s.model()), 0);
            true
        }
        SolveResult::Unsat(_) => false,
        SolveResult::Unknown => panic!("unlimited budget returned unknown"),
    }
}

fn write_cnf(f: &WcnfFormula, path: &Path) {
    let mut buf = Vec::new();
    write_dimacs_cnf(f, &mut buf).unwrap();
    std::fs::write(path, buf).unwrap();
}

#[test]
fn agrees_with_exhaustive_checker_on_600_formulas() {
    if !python_available() {
        eprintln!("python3 not found; skipping");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xD1FF);
    let mut expected = HashMap::new();
    for i in 0..600 {
        let f = random_formula(&mut rng);
        let name = format!("f{i:04}.cnf");
        write_cnf(&f, &dir.path().join(&name));
        expected.insert(name, internal_sat(&f));
    }
    let out = Command::new("python3").arg(FIXTURE).arg("--batch").arg(dir.path()).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut seen = 0;
    let mut sat = 0;
    for line in text.lines() {
        let (name, verdict) = line.split_once(' ').unwrap();
        let want = verdict == "SAT";
        assert_eq!(expected[name], want, "{name}");
        seen += 1;
        sat += want as usize;
    }
    assert_eq!(seen, 600);
    assert!(sat > 100 && sat < 500, "unbalanced sample: {sat} SAT");
}

#[test]
fn external_bridge_runs_the_checker() {
    if !python_available() {
        eprintln!("python3 not found; skipping");
        return;
    }
    let ext = ExternalSolver::new(format!("python3 {FIXTURE} {{file}}")).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..25 {
        let f = random_formula(&mut rng);
        match ext.solve_cnf(&f).unwrap() {
            ExternalVerdict::Sat(model) => {
                assert!(internal_sat(&f));
                assert_eq!(f.violated_hard(&model), 0);
            }
            ExternalVerdict::Unsat => assert!(!internal_sat(&f)),
            ExternalVerdict::Unknown => panic!("checker always decides"),
        }
    }
}
