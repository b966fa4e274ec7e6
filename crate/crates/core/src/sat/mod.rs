//! SAT solving: an internal CDCL solver with assumption-based incremental
//! solving and unsat cores, and a subprocess bridge to DIMACS solvers.

mod external;
mod solver;

use std::time::{Duration, Instant};

pub use external::ExternalSolver;
pub use solver::{Solver, SolverStats};

use crate::cnf::Lit;

/// Resource limits for a solve call. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub conflicts: Option<u64>,
    pub deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn with_timeout(d: Duration) -> Self {
        Budget {
            conflicts: None,
            deadline: Some(Instant::now() + d),
        }
    }

    pub fn with_conflicts(n: u64) -> Self {
        Budget {
            conflicts: Some(n),
            deadline: None,
        }
    }

    /// Budget from an optional millisecond limit.
    pub fn from_ms(ms: Option<u64>) -> Self {
        match ms {
            Some(ms) => Self::with_timeout(Duration::from_millis(ms)),
            None => Self::unlimited(),
        }
    }

    pub fn deadline_passed(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    pub fn remaining(&self) -> Option<Duration> {
        self.deadline
            .map(|d| d.saturating_duration_since(Instant::now()))
    }
}

/// Result of a solve call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult {
    /// A model is available from the solver.
    Sat,
    /// Unsatisfiable under the assumptions; the core is a subset of them.
    /// An empty core means the clauses alone are unsatisfiable.
    Unsat(Vec<Lit>),
    /// The budget ran out before a verdict.
    Unknown,
}

impl SolveResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SolveResult::Sat)
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, SolveResult::Unsat(_))
    }
}

/// Which SAT backend to use for plain satisfiability checks.
#[derive(Clone, Debug, Default)]
pub enum SolverChoice {
    #[default]
    Internal,
    External(ExternalSolver),
}

impl std::str::FromStr for SolverChoice {
    type Err = crate::Error;

    /// `internal` or `external:<command with {file}>`.
    fn from_str(s: &str) -> crate::Result<Self> {
        if s == "internal" {
            return Ok(SolverChoice::Internal);
        }
        if let Some(cmd) = s.strip_prefix("external:") {
            let cmd = cmd.trim().trim_matches('"');
            return Ok(SolverChoice::External(ExternalSolver::new(cmd)?));
        }
        Err(crate::Error::InvalidArgument(format!(
            "unknown solver {s:?}; expected `internal` or `external:\"CMD {{file}}\"`"
        )))
    }
}
