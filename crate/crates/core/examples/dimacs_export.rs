// Writing encodings for external solvers and reading them back.

use boolfact::cnf::{parse_dimacs, write_dimacs_cnf, write_wdimacs, WcnfStyle};
use boolfact::encode::{encode_approx, encode_exact};
use boolfact::oll::{solve_maxsat, OllOptions};
use boolfact::sat::{Budget, Solver};
use boolfact::{BoolMatrix, Result};

pub fn run_example() -> Result<()> {
    let x = BoolMatrix::from_strs(&["110", "011", "101"])?;

    let (exact, _) = encode_exact(&x, 2, true)?;
    let mut cnf = Vec::new();
    write_dimacs_cnf(&exact, &mut cnf)?;
    let text = String::from_utf8(cnf).expect("DIMACS is ASCII");
    println!("{}", text.lines().next().unwrap_or_default());
    let back = parse_dimacs(&text)?;
    let mut s = Solver::from_formula(&back);
    assert!(s.solve(&[], &Budget::unlimited()).is_unsat());

    let (approx, _) = encode_approx(&x, 2, true)?;
    for style in [WcnfStyle::Legacy, WcnfStyle::Modern] {
        let mut buf = Vec::new();
        write_wdimacs(&approx, &mut buf, style)?;
        let back = parse_dimacs(std::str::from_utf8(&buf).expect("ASCII"))?;
        let cost = solve_maxsat(&back, &OllOptions::default())?.cost();
        println!("{style:?} WCNF: {} bytes, optimum {:?}", buf.len(), cost);
        assert_eq!(cost, Some(1));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
