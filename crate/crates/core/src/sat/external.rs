//! Subprocess bridge to DIMACS solvers such as kissat or cadical.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::Duration;

use wait_timeout::ChildExt;

use crate::cnf::{parse_external_model, write_dimacs_cnf, ExternalVerdict, WcnfFormula};
use crate::error::{Error, Result};

const FILE_PLACEHOLDER: &str = "{file}";

/// An external solver invoked through `sh -c` with `{file}` replaced by the
/// path of a temporary instance file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExternalSolver {
    command: String,
    workdir: Option<PathBuf>,
    timeout_secs: Option<u64>,
}

impl ExternalSolver {
    pub fn new(command: impl Into<String>) -> Result<Self> {
        let command = command.into();
        if !command.contains(FILE_PLACEHOLDER) {
            return Err(Error::InvalidArgument(format!(
                "external solver command {command:?} must contain {FILE_PLACEHOLDER}"
            )));
        }
        Ok(ExternalSolver {
            command,
            workdir: None,
            timeout_secs: None,
        })
    }

    pub fn with_workdir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.workdir = Some(dir.into());
        self
    }

    pub fn with_timeout(mut self, secs: u64) -> Self {
        self.timeout_secs = Some(secs);
        self
    }

    pub fn command(&self) -> &str {
        &self.command
    }

    pub fn timeout_secs(&self) -> Option<u64> {
        self.timeout_secs
    }

    /// Solves the hard clauses of `f`. A reported model is re-checked
    /// against the formula before it is returned.
    pub fn solve_cnf(&self, f: &WcnfFormula) -> Result<ExternalVerdict> {
        let output = self.run_with(".cnf", |w| write_dimacs_cnf(f, w))?;
        let verdict = parse_external_model(&output, f.var_count())?;
        if let ExternalVerdict::Sat(model) = &verdict {
            let bad = f.violated_hard(model);
            if bad > 0 {
                return Err(Error::ModelCheck(format!(
                    "external model violates {bad} hard clause(s)"
                )));
            }
        }
        Ok(verdict)
    }

    /// Writes an instance with `write`, runs the command on it and returns
    /// the captured standard output.
    pub fn run_with(
        &self,
        suffix: &str,
        write: impl FnOnce(&mut BufWriter<File>) -> Result<()>,
    ) -> Result<String> {
        let dir = match &self.workdir {
            Some(d) => tempfile::Builder::new().prefix("boolfact").tempdir_in(d)?,
            None => tempfile::Builder::new().prefix("boolfact").tempdir()?,
        };
        let input = dir.path().join(format!("instance{suffix}"));
        {
            let mut w = BufWriter::new(File::create(&input)?);
            write(&mut w)?;
            w.flush()?;
        }
        let stdout_path = dir.path().join("stdout.txt");
        self.execute(&input, &stdout_path)
    }

    fn execute(&self, input: &Path, stdout_path: &Path) -> Result<String> {
        let cmd = self
            .command
            .replace(FILE_PLACEHOLDER, &shell_quote(&input.to_string_lossy()));
        let mut command = Command::new("sh");
        command
            .arg("-c")
            .arg(&cmd)
            .stdin(Stdio::null())
            .stdout(File::create(stdout_path)?)
            .stderr(Stdio::null());
        if let Some(d) = &self.workdir {
            command.current_dir(d);
        }
        let mut child = command
            .spawn()
            .map_err(|e| Error::External(format!("cannot spawn `{cmd}`: {e}")))?;
        let status = match self.timeout_secs {
            Some(secs) => match child.wait_timeout(Duration::from_secs(secs))? {
                Some(s) => s,
                None => {
                    let _ = child.kill();
                    let _ = child.wait();
                    return Err(Error::Timeout(secs));
                }
            },
            None => child.wait()?,
        };
        // SAT-competition solvers exit with 10 (SAT) / 20 (UNSAT)
        match status.code() {
            Some(0 | 10 | 20 | 30) => {}
            Some(c) => return Err(Error::External(format!("`{cmd}` exited with status {c}"))),
            None => return Err(Error::External(format!("`{cmd}` terminated by a signal"))),
        }
        let mut out = String::new();
        File::open(stdout_path)?.read_to_string(&mut out)?;
        Ok(out)
    }
}

fn shell_quote(s: &str) -> String {
    format!("'{}'", s.replace('\'', r"'\''"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::Lit;

    fn lits(v: &[i32]) -> Vec<Lit> {
        v.iter().map(|&x| Lit::from_dimacs(x)).collect()
    }

    fn formula(clauses: &[&[i32]], vars: usize) -> WcnfFormula {
        let mut f = WcnfFormula::new();
        f.new_vars(vars);
        for c in clauses {
            f.add_hard(&lits(c)).unwrap();
        }
        f
    }

    #[test]
    fn requires_placeholder() {
        assert!(ExternalSolver::new("kissat").is_err());
        assert!(ExternalSolver::new("kissat {file}").is_ok());
    }

    #[test]
    fn canned_sat_output_is_checked() {
        let f = formula(&[&[1, -2]], 2);
        let ok = ExternalSolver::new("cat >/dev/null {file}; echo 's SATISFIABLE'; echo 'v 1 -2 0'").unwrap();
        assert_eq!(ok.solve_cnf(&f).unwrap(), ExternalVerdict::Sat(vec![true, false]));
        let lying = ExternalSolver::new("echo 's SATISFIABLE'; echo 'v -1 2 0' # {file}").unwrap();
        assert!(matches!(lying.solve_cnf(&f), Err(Error::ModelCheck(_))));
    }

    #[test]
    fn unsat_exit_code_accepted() {
        let f = formula(&[&[1], &[-1]], 1);
        let s = ExternalSolver::new("echo 's UNSATISFIABLE'; exit 20 # {file}").unwrap();
        assert_eq!(s.solve_cnf(&f).unwrap(), ExternalVerdict::Unsat);
    }

    #[test]
    fn failures_surface() {
        let f = formula(&[&[1]], 1);
        let bad_exit = ExternalSolver::new("exit 3 # {file}").unwrap();
        assert!(matches!(bad_exit.solve_cnf(&f), Err(Error::External(_))));
        let garbage = ExternalSolver::new("echo hello # {file}").unwrap();
        assert!(garbage.solve_cnf(&f).is_err());
        let slow = ExternalSolver::new("sleep 5 # {file}").unwrap().with_timeout(1);
        assert!(matches!(slow.solve_cnf(&f), Err(Error::Timeout(1))));
    }

    #[test]
    fn file_contains_dimacs() {
        let f = formula(&[&[1, -2]], 2);
        let s = ExternalSolver::new("cat {file}").unwrap();
        let out = s.run_with(".cnf", |w| write_dimacs_cnf(&f, w)).unwrap();
        assert_eq!(out, "p cnf 2 1\n1 -2 0\n");
    }
}
