//! Core-guided MaxSAT (OLL) over the internal SAT solver.
//!
//! Soft literals are passed as assumptions. Each unsat core raises the lower
//! bound by one and is replaced by a totalizer over the complements of its
//! literals; the negated second output of that totalizer becomes a new
//! assumption. When a bound assumption of an earlier totalizer shows up in a
//! core, the bound is relaxed by one.

use std::collections::HashMap;

use crate::cnf::{
    build_totalizer, parse_external_model, write_wdimacs, CardinalityGroup, ClauseSink,
    ExternalVerdict, Lit, Var, WcnfFormula, WcnfStyle,
};
use crate::error::{Error, Result};
use crate::sat::{Budget, ExternalSolver, SolveResult, Solver};

/// A MaxSAT instance: hard clauses plus unit softs, with a pre-charged cost.
#[derive(Clone, Debug, Default)]
pub struct MaxSatInstance {
    formula: WcnfFormula,
    injected: usize,
}

impl MaxSatInstance {
    pub fn new(formula: WcnfFormula) -> Self {
        MaxSatInstance {
            formula,
            injected: 0,
        }
    }

    pub fn formula(&self) -> &WcnfFormula {
        &self.formula
    }

    pub fn formula_mut(&mut self) -> &mut WcnfFormula {
        &mut self.formula
    }

    pub fn into_formula(self) -> WcnfFormula {
        self.formula
    }

    /// Number of cardinality groups injected so far.
    pub fn injected_groups(&self) -> usize {
        self.injected
    }

    /// See [`inject_cardinality`]. Returns `None` when nothing was injected.
    pub fn inject_cardinality(&mut self, inputs: &[Lit], k: usize) -> Result<Option<CardinalityGroup>> {
        let g = inject_cardinality(&mut self.formula, inputs, k)?;
        if g.is_some() {
            self.injected += 1;
        }
        Ok(g)
    }

    pub fn solve(&self, opts: &OllOptions) -> Result<MaxSatOutcome> {
        solve_maxsat(&self.formula, opts)
    }
}

/// Replaces the unit softs `inputs` by a totalizer whose first `k` outputs
/// become softs, charging `|inputs| - k` up front.
///
/// The caller guarantees that at most `k` of the inputs can hold together
/// with the hard clauses; under that guarantee the optimum is unchanged.
/// When `|inputs| <= k` nothing is done.
pub fn inject_cardinality(
    f: &mut WcnfFormula,
    inputs: &[Lit],
    k: usize,
) -> Result<Option<CardinalityGroup>> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "cardinality bound 0 would make every input unsatisfiable".into(),
        ));
    }
    let mut seen = std::collections::HashSet::new();
    for &l in inputs {
        if !seen.insert(l) {
            return Err(Error::InvalidArgument(format!("duplicate input {l:?}")));
        }
        match f.soft().iter().find(|(s, _)| *s == l) {
            None => {
                return Err(Error::InvalidArgument(format!(
                    "{l:?} is not an active soft literal"
                )))
            }
            Some(&(_, w)) if w != 1 => {
                return Err(Error::InvalidArgument(format!(
                    "{l:?} has weight {w}; cardinality injection needs unit weights"
                )))
            }
            _ => {}
        }
    }
    if inputs.len() <= k {
        return Ok(None);
    }
    f.remove_softs(inputs);
    f.add_base_cost((inputs.len() - k) as u64);
    let group = build_totalizer(f, inputs, k)?;
    for &o in group.outputs() {
        f.add_soft(o, 1)?;
    }
    Ok(Some(group))
}

/// Options for [`solve_maxsat`].
#[derive(Clone, Copy, Debug, Default)]
pub struct OllOptions {
    pub budget: Budget,
    pub seed: u64,
}

impl OllOptions {
    pub fn with_budget(budget: Budget) -> Self {
        OllOptions { budget, seed: 0 }
    }
}

/// Counters of one OLL run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OllStats {
    pub sat_calls: u64,
    pub cores: u64,
    pub totalizers: u64,
    pub bound_extensions: u64,
    pub conflicts: u64,
}

/// Result of a MaxSAT solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaxSatOutcome {
    /// Proven optimal; `cost` includes the formula's base cost.
    Optimal {
        model: Vec<bool>,
        cost: u64,
        stats: OllStats,
    },
    /// The budget ran out. `model` satisfies the hard clauses when present;
    /// `lower_bound` is the proven bound on the optimum.
    Indeterminate {
        model: Option<Vec<bool>>,
        model_cost: Option<u64>,
        lower_bound: u64,
        stats: OllStats,
    },
}

impl MaxSatOutcome {
    pub fn model(&self) -> Option<&[bool]> {
        match self {
            MaxSatOutcome::Optimal { model, .. } => Some(model),
            MaxSatOutcome::Indeterminate { model, .. } => model.as_deref(),
        }
    }

    /// Cost of the returned model, if any.
    pub fn cost(&self) -> Option<u64> {
        match self {
            MaxSatOutcome::Optimal { cost, .. } => Some(*cost),
            MaxSatOutcome::Indeterminate { model_cost, .. } => *model_cost,
        }
    }

    pub fn lower_bound(&self) -> u64 {
        match self {
            MaxSatOutcome::Optimal { cost, .. } => *cost,
            MaxSatOutcome::Indeterminate { lower_bound, .. } => *lower_bound,
        }
    }

    pub fn is_optimal(&self) -> bool {
        matches!(self, MaxSatOutcome::Optimal { .. })
    }

    pub fn stats(&self) -> OllStats {
        match self {
            MaxSatOutcome::Optimal { stats, .. } | MaxSatOutcome::Indeterminate { stats, .. } => *stats,
        }
    }
}

struct SolverSink<'a>(&'a mut Solver);

impl ClauseSink for SolverSink<'_> {
    fn new_var(&mut self) -> Var {
        self.0.new_var()
    }

    fn add_clause(&mut self, clause: &[Lit]) -> Result<()> {
        self.0.add_clause(clause);
        Ok(())
    }
}

/// Largest total soft weight accepted by [`solve_maxsat`].
pub const MAX_EXPANDED_WEIGHT: u64 = 1 << 20;

/// Copy of `f` in which a soft `l` of weight `w` becomes `l` plus `w - 1`
/// fresh softs `y` with hard `¬y ∨ l`, all of weight 1.
fn expand_weights(f: &WcnfFormula) -> Result<WcnfFormula> {
    if f.soft_weight_sum() > MAX_EXPANDED_WEIGHT {
        return Err(Error::InvalidArgument(format!(
            "total soft weight {} exceeds {MAX_EXPANDED_WEIGHT}",
            f.soft_weight_sum()
        )));
    }
    let mut g = f.clone();
    let heavy: Vec<(Lit, u64)> = f.soft().iter().copied().filter(|&(_, w)| w > 1).collect();
    g.remove_softs(&heavy.iter().map(|&(l, _)| l).collect::<Vec<_>>());
    for (l, w) in heavy {
        g.add_soft(l, 1)?;
        for _ in 1..w {
            let y = g.new_var();
            g.add_hard(&[y.neg(), l])?;
            g.add_soft(y.pos(), 1)?;
        }
    }
    Ok(g)
}

fn restrict(outcome: MaxSatOutcome, vars: usize) -> MaxSatOutcome {
    match outcome {
        MaxSatOutcome::Optimal { mut model, cost, stats } => {
            model.truncate(vars);
            MaxSatOutcome::Optimal { model, cost, stats }
        }
        MaxSatOutcome::Indeterminate {
            mut model,
            model_cost,
            lower_bound,
            stats,
        } => {
            if let Some(m) = model.as_mut() {
                m.truncate(vars);
            }
            MaxSatOutcome::Indeterminate {
                model,
                model_cost,
                lower_bound,
                stats,
            }
        }
    }
}

/// Runs OLL on `f`. Softs of weight `w > 1` are split into `w` unit softs.
pub fn solve_maxsat(f: &WcnfFormula, opts: &OllOptions) -> Result<MaxSatOutcome> {
    if f.soft().iter().all(|&(_, w)| w == 1) {
        return solve_unit(f, opts);
    }
    let g = expand_weights(f)?;
    Ok(restrict(solve_unit(&g, opts)?, f.var_count() as usize))
}

fn solve_unit(f: &WcnfFormula, opts: &OllOptions) -> Result<MaxSatOutcome> {
    let mut solver = Solver::with_seed(opts.seed);
    solver.load_formula(f);
    if !solver.is_ok() {
        return Err(Error::HardUnsat);
    }

    let mut stats = OllStats::default();
    let mut cost = f.base_cost();
    let mut active: Vec<Lit> = f.soft().iter().map(|&(l, _)| l).collect();
    let mut groups: Vec<CardinalityGroup> = Vec::new();
    let mut bound_of: HashMap<Lit, (usize, usize)> = HashMap::new();
    let start_conflicts = solver.stats().conflicts;

    loop {
        let spent = solver.stats().conflicts - start_conflicts;
        let call_budget = Budget {
            conflicts: opts.budget.conflicts.map(|c| c.saturating_sub(spent)),
            deadline: opts.budget.deadline,
        };
        if call_budget.conflicts == Some(0) || call_budget.deadline_passed() {
            return Ok(indeterminate(f, &mut solver, cost, stats, start_conflicts));
        }
        stats.sat_calls += 1;
        let result = solver.solve(&active, &call_budget);
        stats.conflicts = solver.stats().conflicts - start_conflicts;
        match result {
            SolveResult::Sat => {
                let model: Vec<bool> = solver.model()[..f.var_count() as usize].to_vec();
                debug_assert_eq!(f.cost_of(&model), cost);
                return Ok(MaxSatOutcome::Optimal { model, cost, stats });
            }
            SolveResult::Unknown => {
                return Ok(indeterminate(f, &mut solver, cost, stats, start_conflicts));
            }
            SolveResult::Unsat(core) => {
                if core.is_empty() {
                    return Err(Error::HardUnsat);
                }
                stats.cores += 1;
                cost += 1;
                active.retain(|l| !core.contains(l));
                let mut sink = SolverSink(&mut solver);
                for l in &core {
                    if let Some((g, j)) = bound_of.remove(l) {
                        let group = &mut groups[g];
                        if j + 1 < group.inputs().len() {
                            group.extend_bound(&mut sink, j + 2)?;
                            stats.bound_extensions += 1;
                            let next = !group.outputs()[j + 1];
                            active.push(next);
                            bound_of.insert(next, (g, j + 1));
                        }
                    }
                }
                if core.len() > 1 {
                    let inputs: Vec<Lit> = core.iter().map(|&l| !l).collect();
                    let group = build_totalizer(&mut sink, &inputs, 2)?;
                    stats.totalizers += 1;
                    let next = !group.outputs()[1];
                    active.push(next);
                    bound_of.insert(next, (groups.len(), 1));
                    groups.push(group);
                }
            }
        }
    }
}

fn indeterminate(
    f: &WcnfFormula,
    solver: &mut Solver,
    lower_bound: u64,
    mut stats: OllStats,
    start_conflicts: u64,
) -> MaxSatOutcome {
    for &(l, _) in f.soft() {
        solver.set_phase(l.var(), !l.is_negated());
    }
    stats.sat_calls += 1;
    let model = match solver.solve(&[], &Budget::unlimited()) {
        SolveResult::Sat => Some(solver.model()[..f.var_count() as usize].to_vec()),
        _ => None,
    };
    stats.conflicts = solver.stats().conflicts - start_conflicts;
    let model_cost = model.as_ref().map(|m| f.cost_of(m));
    MaxSatOutcome::Indeterminate {
        model,
        model_cost,
        lower_bound,
        stats,
    }
}

/// Solves `f` with an external MaxSAT solver reading WCNF. The returned
/// model is checked against the hard clauses; its cost is recomputed
/// locally.
pub fn solve_maxsat_external(
    f: &WcnfFormula,
    ext: &ExternalSolver,
    style: WcnfStyle,
) -> Result<MaxSatOutcome> {
    let out = ext.run_with(".wcnf", |w| write_wdimacs(f, w, style))?;
    match parse_external_model(&out, f.var_count())? {
        ExternalVerdict::Sat(model) => {
            let bad = f.violated_hard(&model);
            if bad > 0 {
                return Err(Error::ModelCheck(format!(
                    "external model violates {bad} hard clause(s)"
                )));
            }
            let cost = f.cost_of(&model);
            let optimal = out.lines().any(|l| l.trim() == "s OPTIMUM FOUND");
            let stats = OllStats::default();
            Ok(if optimal {
                MaxSatOutcome::Optimal { model, cost, stats }
            } else {
                MaxSatOutcome::Indeterminate {
                    model: Some(model),
                    model_cost: Some(cost),
                    lower_bound: f.base_cost(),
                    stats,
                }
            })
        }
        ExternalVerdict::Unsat => Err(Error::HardUnsat),
        ExternalVerdict::Unknown => Ok(MaxSatOutcome::Indeterminate {
            model: None,
            model_cost: None,
            lower_bound: f.base_cost(),
            stats: OllStats::default(),
        }),
    }
}

/// Minimum cost over all assignments by enumeration; `None` if the hard
/// clauses are unsatisfiable. Exponential, for testing small instances.
pub fn brute_force_min_cost(f: &WcnfFormula) -> Option<u64> {
    let n = f.var_count() as usize;
    assert!(n <= 24, "too many variables for enumeration");
    let mut asg = vec![false; n];
    let mut best = None;
    for mask in 0u64..(1 << n) {
        for (i, a) in asg.iter_mut().enumerate() {
            *a = (mask >> i) & 1 == 1;
        }
        if f.violated_hard(&asg) == 0 {
            let c = f.cost_of(&asg);
            best = Some(best.map_or(c, |b: u64| b.min(c)));
        }
    }
    best
}
