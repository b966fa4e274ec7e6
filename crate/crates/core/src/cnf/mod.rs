//! Propositional formulas: variables, literals, hard clauses and unit soft
//! literals, plus the totalizer cardinality encoding and DIMACS I/O.

mod dimacs;
mod totalizer;

use std::collections::HashSet;
use std::fmt;
use std::ops::Not;

pub use dimacs::{
    parse_dimacs, parse_external_model, write_dimacs_cnf, write_wdimacs, ExternalVerdict,
    WcnfStyle,
};
pub use totalizer::{build_totalizer, CardinalityGroup};

use crate::error::{Error, Result};

/// A propositional variable, 1-based as in DIMACS.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    /// Panics on zero.
    pub fn new(dimacs_index: u32) -> Self {
        assert!(dimacs_index > 0, "variables are 1-based");
        Var(dimacs_index)
    }

    /// 0-based index for array storage.
    #[inline]
    pub fn index(self) -> usize {
        (self.0 - 1) as usize
    }

    #[inline]
    pub fn from_index(idx: usize) -> Self {
        Var(idx as u32 + 1)
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn pos(self) -> Lit {
        Lit::new(self, false)
    }

    #[inline]
    pub fn neg(self) -> Lit {
        Lit::new(self, true)
    }

    #[inline]
    pub fn lit(self, value: bool) -> Lit {
        Lit::new(self, !value)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A literal, encoded as `2 * var_index + negated`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    #[inline]
    pub fn new(var: Var, negated: bool) -> Self {
        Lit(((var.0 - 1) << 1) | negated as u32)
    }

    #[inline]
    pub fn var(self) -> Var {
        Var((self.0 >> 1) + 1)
    }

    #[inline]
    pub fn is_negated(self) -> bool {
        self.0 & 1 == 1
    }

    /// Dense code usable as an array index (`2·index + sign`).
    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn from_code(code: usize) -> Self {
        Lit(code as u32)
    }

    pub fn from_dimacs(v: i32) -> Self {
        assert!(v != 0, "0 is not a DIMACS literal");
        Lit::new(Var(v.unsigned_abs()), v < 0)
    }

    pub fn to_dimacs(self) -> i32 {
        let v = self.var().0 as i32;
        if self.is_negated() {
            -v
        } else {
            v
        }
    }

    /// Truth value of this literal under a total assignment indexed by
    /// `Var::index`.
    #[inline]
    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var().index()] != self.is_negated()
    }
}

impl Not for Lit {
    type Output = Lit;

    #[inline]
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// Anything clauses can be emitted into.
pub trait ClauseSink {
    fn new_var(&mut self) -> Var;
    fn add_clause(&mut self, clause: &[Lit]) -> Result<()>;
}

/// Outcome of normalizing a clause before storage.
pub(crate) enum Normalized {
    Tautology,
    Clause(Vec<Lit>),
}

pub(crate) fn normalize_clause(clause: &[Lit]) -> Normalized {
    let mut lits = clause.to_vec();
    lits.sort_unstable();
    lits.dedup();
    if lits.windows(2).any(|w| w[0] == !w[1]) {
        return Normalized::Tautology;
    }
    Normalized::Clause(lits)
}

/// Hard clauses plus unit soft literals with positive weights.
#[derive(Clone, Debug, Default)]
pub struct WcnfFormula {
    var_count: u32,
    hard: Vec<Vec<Lit>>,
    soft: Vec<(Lit, u64)>,
    base_cost: u64,
}

impl WcnfFormula {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn var_count(&self) -> u32 {
        self.var_count
    }

    pub fn hard(&self) -> &[Vec<Lit>] {
        &self.hard
    }

    pub fn soft(&self) -> &[(Lit, u64)] {
        &self.soft
    }

    pub fn soft_weight_sum(&self) -> u64 {
        self.soft.iter().map(|&(_, w)| w).sum()
    }

    /// Cost already proven on top of the soft literals (e.g. by injected
    /// cardinality constraints).
    pub fn base_cost(&self) -> u64 {
        self.base_cost
    }

    pub fn add_base_cost(&mut self, delta: u64) {
        self.base_cost += delta;
    }

    pub fn new_var(&mut self) -> Var {
        self.var_count += 1;
        Var(self.var_count)
    }

    pub fn new_vars(&mut self, n: usize) -> Vec<Var> {
        (0..n).map(|_| self.new_var()).collect()
    }

    fn check_lits(&self, lits: &[Lit]) -> Result<()> {
        if let Some(l) = lits.iter().find(|l| l.var().0 > self.var_count) {
            return Err(Error::InvalidArgument(format!(
                "literal {l:?} references unallocated variable (var_count {})",
                self.var_count
            )));
        }
        Ok(())
    }

    /// Adds a hard clause. Duplicate literals are merged and tautologies are
    /// dropped; returns whether the clause was stored. An empty clause is
    /// rejected with [`Error::EmptyClause`].
    pub fn add_hard(&mut self, clause: &[Lit]) -> Result<bool> {
        self.check_lits(clause)?;
        if clause.is_empty() {
            return Err(Error::EmptyClause);
        }
        match normalize_clause(clause) {
            Normalized::Tautology => Ok(false),
            Normalized::Clause(lits) => {
                self.hard.push(lits);
                Ok(true)
            }
        }
    }

    /// Adds a soft unit literal. Adding the same literal again accumulates
    /// its weight.
    pub fn add_soft(&mut self, lit: Lit, weight: u64) -> Result<()> {
        self.check_lits(&[lit])?;
        if weight == 0 {
            return Err(Error::InvalidArgument("soft weight must be at least 1".into()));
        }
        if let Some(entry) = self.soft.iter_mut().find(|(l, _)| *l == lit) {
            entry.1 += weight;
        } else {
            self.soft.push((lit, weight));
        }
        Ok(())
    }

    /// Removes the given soft literals; returns how many were present.
    pub fn remove_softs(&mut self, lits: &[Lit]) -> usize {
        let drop: HashSet<Lit> = lits.iter().copied().collect();
        let before = self.soft.len();
        self.soft.retain(|(l, _)| !drop.contains(l));
        before - self.soft.len()
    }

    /// Number of hard clauses violated by a total assignment.
    pub fn violated_hard(&self, assignment: &[bool]) -> usize {
        self.hard
            .iter()
            .filter(|c| !c.iter().any(|l| l.eval(assignment)))
            .count()
    }

    /// `base_cost` plus the weight of falsified soft literals.
    pub fn cost_of(&self, assignment: &[bool]) -> u64 {
        self.base_cost
            + self
                .soft
                .iter()
                .filter(|(l, _)| !l.eval(assignment))
                .map(|&(_, w)| w)
                .sum::<u64>()
    }
}

impl ClauseSink for WcnfFormula {
    fn new_var(&mut self) -> Var {
        WcnfFormula::new_var(self)
    }

    fn add_clause(&mut self, clause: &[Lit]) -> Result<()> {
        self.add_hard(clause).map(|_| ())
    }
}
