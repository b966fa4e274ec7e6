//! DIMACS CNF / WCNF writers, a reader for both, and a parser for
//! SAT-competition style solver output (`s` / `v` / `o` lines).

use std::io::Write;

use super::{Lit, WcnfFormula};
use crate::error::{Error, Result};

/// Which WCNF dialect to emit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WcnfStyle {
    /// `p wcnf V C TOP` header, hard clauses weighted `TOP`.
    #[default]
    Legacy,
    /// Header-free format with `h`-prefixed hard clauses.
    Modern,
}

fn write_clause<W: Write>(w: &mut W, prefix: &str, lits: &[Lit]) -> std::io::Result<()> {
    w.write_all(prefix.as_bytes())?;
    for l in lits {
        write!(w, "{} ", l.to_dimacs())?;
    }
    w.write_all(b"0\n")
}

/// Writes the hard clauses as DIMACS CNF (soft literals are ignored).
pub fn write_dimacs_cnf<W: Write>(f: &WcnfFormula, w: &mut W) -> Result<()> {
    writeln!(w, "p cnf {} {}", f.var_count(), f.hard().len())?;
    for c in f.hard() {
        write_clause(w, "", c)?;
    }
    Ok(())
}

/// Writes the formula as weighted CNF.
pub fn write_wdimacs<W: Write>(f: &WcnfFormula, w: &mut W, style: WcnfStyle) -> Result<()> {
    if f.base_cost() > 0 {
        writeln!(w, "c base_cost {}", f.base_cost())?;
    }
    match style {
        WcnfStyle::Legacy => {
            let top = 1 + f.soft_weight_sum();
            writeln!(
                w,
                "p wcnf {} {} {}",
                f.var_count(),
                f.hard().len() + f.soft().len(),
                top
            )?;
            let hp = format!("{top} ");
            for c in f.hard() {
                write_clause(w, &hp, c)?;
            }
        }
        WcnfStyle::Modern => {
            for c in f.hard() {
                write_clause(w, "h ", c)?;
            }
        }
    }
    for &(l, wt) in f.soft() {
        write_clause(w, &format!("{wt} "), &[l])?;
    }
    Ok(())
}

fn parse_lits(tokens: &[&str], line: usize) -> Result<Vec<Lit>> {
    let mut lits = Vec::with_capacity(tokens.len());
    let mut terminated = false;
    for t in tokens {
        let v: i32 = t
            .parse()
            .map_err(|_| Error::parse(line, format!("bad literal {t:?}")))?;
        if v == 0 {
            terminated = true;
            break;
        }
        lits.push(Lit::from_dimacs(v));
    }
    if !terminated {
        return Err(Error::parse(line, "clause not terminated by 0"));
    }
    Ok(lits)
}

/// Reads DIMACS CNF, legacy WCNF or modern WCNF into a formula. Non-unit
/// soft clauses are reified through a fresh variable. A `c base_cost N`
/// comment restores the base cost written by [`write_wdimacs`].
pub fn parse_dimacs(text: &str) -> Result<WcnfFormula> {
    enum Kind {
        Unknown,
        Cnf,
        Wcnf { top: Option<u64> },
    }
    let mut kind = Kind::Unknown;
    let mut declared_vars = 0u32;
    let mut hard: Vec<Vec<Lit>> = Vec::new();
    let mut soft: Vec<(Vec<Lit>, u64)> = Vec::new();
    let mut base = 0u64;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lno = ln + 1;
        if line.is_empty() || line == "%" {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() == 2 && toks[0] == "base_cost" {
                base = toks[1]
                    .parse()
                    .map_err(|_| Error::parse(lno, "bad base_cost"))?;
            }
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks[0] == "p" {
            match toks.get(1) {
                Some(&"cnf") if toks.len() == 4 => kind = Kind::Cnf,
                Some(&"wcnf") if toks.len() == 5 => {
                    let top = toks[4].parse().map_err(|_| Error::parse(lno, "bad TOP"))?;
                    kind = Kind::Wcnf { top: Some(top) }
                }
                Some(&"wcnf") if toks.len() == 4 => kind = Kind::Wcnf { top: None },
                _ => return Err(Error::parse(lno, format!("bad header {line:?}"))),
            }
            declared_vars = toks[2]
                .parse()
                .map_err(|_| Error::parse(lno, "bad variable count"))?;
            continue;
        }
        if toks[0] == "h" {
            kind = match kind {
                Kind::Unknown => Kind::Wcnf { top: None },
                k => k,
            };
            hard.push(parse_lits(&toks[1..], lno)?);
            continue;
        }
        match kind {
            Kind::Unknown | Kind::Cnf => hard.push(parse_lits(&toks, lno)?),
            Kind::Wcnf { top } => {
                let w: u64 = toks[0]
                    .parse()
                    .map_err(|_| Error::parse(lno, format!("bad weight {:?}", toks[0])))?;
                let lits = parse_lits(&toks[1..], lno)?;
                if top == Some(w) {
                    hard.push(lits);
                } else {
                    soft.push((lits, w));
                }
            }
        }
    }

    let max_var = hard
        .iter()
        .chain(soft.iter().map(|(c, _)| c))
        .flatten()
        .map(|l| l.var().get())
        .max()
        .unwrap_or(0);
    let mut f = WcnfFormula::new();
    for _ in 0..declared_vars.max(max_var) {
        f.new_var();
    }
    for c in &hard {
        f.add_hard(c)?;
    }
    for (c, w) in soft {
        match c.len() {
            0 => f.add_base_cost(w),
            1 => f.add_soft(c[0], w)?,
            _ => {
                let r = f.new_var();
                let mut clause = c.clone();
                clause.push(r.neg());
                f.add_hard(&clause)?;
                f.add_soft(r.pos(), w)?;
            }
        }
    }
    f.add_base_cost(base);
    Ok(f)
}

/// Verdict parsed from an external solver's output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExternalVerdict {
    /// Total assignment indexed by `Var::index`.
    Sat(Vec<bool>),
    Unsat,
    Unknown,
}

/// Parses `s`/`v` lines. Multiple `v` lines are concatenated; variables not
/// mentioned default to false. Both the literal list form (`v 1 -2 0`) and
/// the bit-string form used by MaxSAT evaluations (`v 0110`) are accepted.
pub fn parse_external_model(text: &str, var_count: u32) -> Result<ExternalVerdict> {
    let mut status: Option<&str> = None;
    let mut assignment = vec![false; var_count as usize];
    let mut saw_values = false;
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            status = Some(rest.trim());
        } else if let Some(rest) = line.strip_prefix("v ") {
            saw_values = true;
            let toks: Vec<&str> = rest.split_whitespace().collect();
            let bitstring = toks.len() == 1
                && var_count > 1
                && toks[0].len() == var_count as usize
                && toks[0].bytes().all(|b| b == b'0' || b == b'1');
            if bitstring {
                for (i, b) in toks[0].bytes().enumerate() {
                    if i < assignment.len() {
                        assignment[i] = b == b'1';
                    }
                }
                continue;
            }
            for t in toks {
                let v: i64 = t
                    .parse()
                    .map_err(|_| Error::parse(ln + 1, format!("bad value token {t:?}")))?;
                if v == 0 {
                    continue;
                }
                let idx = v.unsigned_abs() as usize - 1;
                if idx >= assignment.len() {
                    if idx >= u32::MAX as usize {
                        return Err(Error::parse(ln + 1, "variable index overflow"));
                    }
                    assignment.resize(idx + 1, false);
                }
                assignment[idx] = v > 0;
            }
        } else if line == "v" {
            saw_values = true;
        }
    }
    match status {
        Some("SATISFIABLE") | Some("OPTIMUM FOUND") => {
            if !saw_values {
                return Err(Error::External("satisfiable verdict without a model".into()));
            }
            assignment.truncate(var_count as usize);
            Ok(ExternalVerdict::Sat(assignment))
        }
        Some("UNSATISFIABLE") => Ok(ExternalVerdict::Unsat),
        Some("UNKNOWN") => Ok(ExternalVerdict::Unknown),
        Some(other) => Err(Error::External(format!("unrecognized status {other:?}"))),
        None => Err(Error::External("no status line in solver output".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render_cnf(f: &WcnfFormula) -> String {
        let mut buf = Vec::new();
        write_dimacs_cnf(f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    fn render_wcnf(f: &WcnfFormula, style: WcnfStyle) -> String {
        let mut buf = Vec::new();
        write_wdimacs(f, &mut buf, style).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn empty_formula_header() {
        assert_eq!(render_cnf(&WcnfFormula::new()), "p cnf 0 0\n");
    }

    #[test]
    fn single_clause() {
        let mut f = WcnfFormula::new();
        let v = f.new_vars(2);
        f.add_hard(&[v[0].pos(), v[1].neg()]).unwrap();
        assert_eq!(render_cnf(&f), "p cnf 2 1\n1 -2 0\n");
    }

    #[test]
    fn legacy_top_weight() {
        let mut f = WcnfFormula::new();
        let v = f.new_vars(2);
        f.add_hard(&[v[0].pos(), v[1].pos()]).unwrap();
        f.add_soft(v[0].neg(), 1).unwrap();
        f.add_soft(v[1].neg(), 1).unwrap();
        assert_eq!(
            render_wcnf(&f, WcnfStyle::Legacy),
            "p wcnf 2 3 3\n3 1 2 0\n1 -1 0\n1 -2 0\n"
        );
        assert_eq!(render_wcnf(&f, WcnfStyle::Modern), "h 1 2 0\n1 -1 0\n1 -2 0\n");
    }

    #[test]
    fn reads_back_both_styles() {
        let mut f = WcnfFormula::new();
        let v = f.new_vars(3);
        f.add_hard(&[v[0].pos(), v[2].neg()]).unwrap();
        f.add_hard(&[v[1].pos()]).unwrap();
        f.add_soft(v[2].pos(), 2).unwrap();
        f.add_base_cost(4);
        for style in [WcnfStyle::Legacy, WcnfStyle::Modern] {
            let g = parse_dimacs(&render_wcnf(&f, style)).unwrap();
            assert_eq!(g.hard(), f.hard());
            assert_eq!(g.soft(), f.soft());
            assert_eq!(g.base_cost(), 4);
            assert_eq!(g.var_count(), 3);
        }
        let g = parse_dimacs(&render_cnf(&f)).unwrap();
        assert_eq!(g.hard(), f.hard());
        assert!(g.soft().is_empty());
    }

    #[test]
    fn reads_non_unit_softs_by_reification() {
        let g = parse_dimacs("p wcnf 2 2 10\n10 1 2 0\n3 -1 -2 0\n").unwrap();
        assert_eq!(g.var_count(), 3);
        assert_eq!(g.soft().len(), 1);
        assert_eq!(g.soft()[0].1, 3);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_dimacs("p cnf 2 1\n1 x 0\n").is_err());
        assert!(parse_dimacs("p cnf 2 1\n1 2\n").is_err());
        assert!(parse_dimacs("p foo 2\n").is_err());
    }

    #[test]
    fn external_model_lines() {
        assert_eq!(
            parse_external_model("s SATISFIABLE\nv 1 -2 0\n", 2).unwrap(),
            ExternalVerdict::Sat(vec![true, false])
        );
        assert_eq!(
            parse_external_model("c hi\ns UNSATISFIABLE\n", 2).unwrap(),
            ExternalVerdict::Unsat
        );
        assert_eq!(
            parse_external_model("s SATISFIABLE\nv 1 -2\nv 3 0\n", 4).unwrap(),
            ExternalVerdict::Sat(vec![true, false, true, false])
        );
        assert_eq!(
            parse_external_model("o 3\ns OPTIMUM FOUND\nv 101\n", 3).unwrap(),
            ExternalVerdict::Sat(vec![true, false, true])
        );
    }

    #[test]
    fn external_model_errors() {
        assert!(parse_external_model("garbage\n", 2).is_err());
        assert!(parse_external_model("s SATISFIABLE\n", 2).is_err());
        assert!(parse_external_model("s SATISFIABLE\nv 1 zz 0\n", 2).is_err());
        assert!(parse_external_model("s MAYBE\n", 2).is_err());
    }
}
