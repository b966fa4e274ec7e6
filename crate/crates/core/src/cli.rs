//! Command-line front end: argument parsing and the subcommand drivers.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bench::{run_bench, run_method, BenchDataset, Method, RunConfig};
use crate::bitmat::{write_matrix, BoolMatrix, FactorPair};
use crate::cnf::{write_dimacs_cnf, write_wdimacs, WcnfFormula, WcnfStyle};
use crate::dataset::{load_dataset, DatasetFormat, DatasetSpec};
use crate::encode::{encode_approx, encode_exact, encode_undercover, find_incompatible_sets};
use crate::error::{Error, Result};
use crate::factor::{exact_rank, generate_planted_pair, undercover_optimal, GenSpec, RankVerdict, RelaxPolicy, SolveOptions};
use crate::report::{emit_report, format_error_pct};
use crate::sat::{ExternalSolver, SolverChoice};

#[derive(Debug, Parser)]
#[command(name = "boolfact", version, about = "Boolean matrix factorization via SAT and MaxSAT")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Boolean rank and an exact witness factorization.
    Rank(RankArgs),
    /// Rank-k approximate factorization.
    Factorize(FactorizeArgs),
    /// Rank-k undercover covering as many 1s as possible.
    Undercover(UndercoverArgs),
    /// Random matrix of planted rank.
    Gen(GenArgs),
    /// Grid of (dataset, k, method) runs.
    Bench(BenchArgs),
    /// Write an encoding in DIMACS or WCNF without solving it.
    Export(ExportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OnOff {
    On,
    Off,
}

impl OnOff {
    fn get(self) -> bool {
        self == OnOff::On
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Dense,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PresetArg {
    Zoo,
    Lung,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    Maxsat,
    Rui,
    Frui,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Exact => Method::Exact,
            MethodArg::Maxsat => Method::MaxSat,
            MethodArg::Rui => Method::Rui,
            MethodArg::Frui => Method::Frui,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    Steepest,
    First,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EncodingArg {
    Exact,
    Approx,
    Undercover,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WcnfStyleArg {
    Legacy,
    Modern,
}

/// Where the input matrix comes from.
#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Matrix file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "dense")]
    pub format: FormatArg,
    /// Column typing of a known CSV dataset; implies --format csv.
    #[arg(long, value_enum)]
    pub preset: Option<PresetArg>,
    /// CSV columns to one-hot encode.
    #[arg(long, value_delimiter = ',')]
    pub categorical: Vec<String>,
    /// CSV columns to drop.
    #[arg(long, value_delimiter = ',')]
    pub ignore: Vec<String>,
    /// CSV token for a missing value.
    #[arg(long)]
    pub missing: Option<String>,
    /// CSV file has no header row.
    #[arg(long)]
    pub no_header: bool,
}

impl InputArgs {
    pub fn spec(&self) -> DatasetSpec {
        let mut spec = match (self.preset, self.format) {
            (Some(PresetArg::Zoo), _) => DatasetSpec::zoo(&self.input),
            (Some(PresetArg::Lung), _) => DatasetSpec::lung(&self.input),
            (None, FormatArg::Dense) => DatasetSpec::dense(&self.input),
            (None, FormatArg::Csv) => DatasetSpec::csv(&self.input),
        };
        if spec.format == DatasetFormat::CsvOneHot {
            spec.categorical.extend(self.categorical.iter().cloned());
            spec.ignore.extend(self.ignore.iter().cloned());
            if self.missing.is_some() {
                spec.missing = self.missing.clone();
            }
            if self.no_header {
                spec.has_header = false;
            }
        }
        spec
    }

    pub fn load(&self) -> Result<(String, BoolMatrix)> {
        let spec = self.spec();
        Ok((spec.name(), load_dataset(&spec)?))
    }
}

/// Solver settings shared by the solving subcommands.
#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    #[arg(long, value_enum, default_value = "on")]
    pub symmetry: OnOff,
    #[arg(long, value_enum, default_value = "on")]
    pub simplify: OnOff,
    /// `internal` or `external:"CMD {file}"` for plain SAT calls.
    #[arg(long, default_value = "internal")]
    pub solver: String,
    /// External MaxSAT command reading the WCNF file `{file}`.
    #[arg(long)]
    pub maxsat_solver: Option<String>,
    /// Time limit per solver call.
    #[arg(long)]
    pub budget_ms: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl SolverArgs {
    pub fn options(&self) -> Result<SolveOptions> {
        Ok(SolveOptions {
            symmetry: self.symmetry.get(),
            simplify: self.simplify.get(),
            budget_ms: self.budget_ms,
            seed: self.seed,
            solver: self.solver.parse::<SolverChoice>()?,
            maxsat_solver: self.maxsat_solver.as_deref().map(ExternalSolver::new).transpose()?,
        })
    }
}

/// Heuristic settings.
#[derive(Debug, Clone, Args)]
pub struct HeuristicArgs {
    #[arg(long, value_enum, default_value = "steepest")]
    pub relax_policy: PolicyArg,
    /// Rank of each RUI undercover.
    #[arg(long, default_value_t = 1)]
    pub rui_kprime: usize,
    /// Rank of the reused RUI encoding when it differs from --rui-kprime.
    #[arg(long)]
    pub rui_formula_rank: Option<usize>,
}

/// Output settings.
#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Directory for matrices and reports.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report wall-clock times as 0 so reruns give identical bytes.
    #[arg(long)]
    pub no_timing: bool,
}

/// Encoding dump settings.
#[derive(Debug, Clone, Args)]
pub struct ExportTargets {
    /// Write the hard clauses as DIMACS CNF here and skip solving.
    #[arg(long)]
    pub export_dimacs: Option<PathBuf>,
    /// Write the formula as weighted DIMACS here and skip solving.
    #[arg(long)]
    pub export_wcnf: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "legacy")]
    pub wcnf_style: WcnfStyleArg,
}

impl ExportTargets {
    fn any(&self) -> bool {
        self.export_dimacs.is_some() || self.export_wcnf.is_some()
    }

    fn write(&self, f: &WcnfFormula) -> Result<()> {
        if let Some(p) = &self.export_dimacs {
            let mut w = BufWriter::new(fs::File::create(p)?);
            write_dimacs_cnf(f, &mut w)?;
            w.flush()?;
        }
        if let Some(p) = &self.export_wcnf {
            let style = match self.wcnf_style {
                WcnfStyleArg::Legacy => WcnfStyle::Legacy,
                WcnfStyleArg::Modern => WcnfStyle::Modern,
            };
            let mut w = BufWriter::new(fs::File::create(p)?);
            write_wdimacs(f, &mut w, style)?;
            w.flush()?;
        }
        Ok(())
    }
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub export: ExportTargets,
    /// Rank of the exported encoding; the incompatibility bound by default.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FactorizeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value = "maxsat")]
    pub method: MethodArg,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub heuristic: HeuristicArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub export: ExportTargets,
}

#[derive(Debug, Args)]
pub struct UndercoverArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(flatten)]
    pub export: ExportTargets,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Target density of the product.
    #[arg(long)]
    pub d: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Dataset files; `PRESET:PATH` applies a CSV preset (zoo or lung).
    #[arg(long, required = true)]
    pub input: Vec<String>,
    /// Ranks; 10, 25 and 50 % of min(m, n), rounded up, by default.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "rui,frui")]
    pub method: Vec<MethodArg>,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub heuristic: HeuristicArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value = "approx")]
    pub encoding: EncodingArg,
    #[arg(long, value_enum, default_value = "on")]
    pub symmetry: OnOff,
    #[arg(long, value_enum, default_value = "on")]
    pub simplify: OnOff,
    #[command(flatten)]
    pub export: ExportTargets,
}

#[derive(Serialize)]
struct RankStep {
    k: usize,
    verdict: &'static str,
    ms: u64,
}

#[derive(Serialize)]
struct RankReport {
    dataset: String,
    m: usize,
    n: usize,
    rank: Option<usize>,
    fooling_bound: usize,
    refuted: usize,
    steps: Vec<RankStep>,
}

#[derive(Serialize)]
struct FactorReport {
    dataset: String,
    m: usize,
    n: usize,
    k: usize,
    method: String,
    errors: usize,
    error_pct: String,
    optimal: bool,
    wall_ms: u64,
}

#[derive(Serialize)]
struct UndercoverReport {
    dataset: String,
    m: usize,
    n: usize,
    k: usize,
    ones: usize,
    covered: usize,
    optimal: bool,
    lower_bound: u64,
    wall_ms: u64,
}

#[derive(Serialize)]
struct GenReport {
    m: usize,
    n: usize,
    k: usize,
    d: f64,
    seed: u64,
    ones: usize,
    density: f64,
}

fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(dir.join(name), text)?;
    Ok(())
}

fn write_pair(dir: &Path, pair: &FactorPair) -> Result<()> {
    write_matrix(pair.a(), dir.join("A.bm"))?;
    write_matrix(pair.b(), dir.join("B.bm"))
}

fn out_dir(output: &OutputArgs) -> Result<Option<&Path>> {
    if let Some(dir) = &output.out {
        fs::create_dir_all(dir)?;
    }
    Ok(output.out.as_deref())
}

fn timing(output: &OutputArgs, ms: u64) -> u64 {
    if output.no_timing {
        0
    } else {
        ms
    }
}

fn cmd_rank(a: &RankArgs, out: &mut dyn Write) -> Result<()> {
    let (name, x) = a.input.load()?;
    let opts = a.solver.options()?;
    if a.export.any() {
        let k = match a.k {
            Some(k) => k,
            None => find_incompatible_sets(&x).iter().map(|s| s.len()).max().unwrap_or(1),
        };
        let (f, _) = encode_exact(&x, k, opts.symmetry)?;
        a.export.write(&f)?;
        writeln!(out, "exported exact encoding for k={k}: {} vars, {} clauses", f.var_count(), f.hard().len())?;
        return Ok(());
    }
    let r = exact_rank(&x, &opts)?;
    match r.rank {
        Some(k) => writeln!(out, "rank {k}")?,
        None => writeln!(
            out,
            "rank unknown: budget exhausted; {} < rank",
            r.refuted
        )?,
    }
    if let Some(dir) = out_dir(&a.output)? {
        if let Some(w) = &r.witness {
            write_pair(dir, w)?;
        }
        let report = RankReport {
            dataset: name,
            m: x.rows(),
            n: x.cols(),
            rank: r.rank,
            fooling_bound: r.fooling_bound,
            refuted: r.refuted,
            steps: r
                .steps
                .iter()
                .map(|&(k, v, ms)| RankStep {
                    k,
                    verdict: match v {
                        RankVerdict::Sat => "sat",
                        RankVerdict::Unsat => "unsat",
                        RankVerdict::Unknown => "unknown",
                    },
                    ms: timing(&a.output, ms),
                })
                .collect(),
        };
        write_json(dir, "report.json", &report)?;
    }
    if r.rank.is_none() {
        return Err(Error::Timeout(a.solver.budget_ms.unwrap_or(0).div_ceil(1000)));
    }
    Ok(())
}

fn run_config(solver: &SolverArgs, h: &HeuristicArgs) -> Result<RunConfig> {
    Ok(RunConfig {
        solve: solver.options()?,
        relax_policy: match h.relax_policy {
            PolicyArg::Steepest => RelaxPolicy::Steepest,
            PolicyArg::First => RelaxPolicy::First,
        },
        rui_k_prime: h.rui_kprime,
        rui_formula_rank: h.rui_formula_rank,
    })
}

fn cmd_factorize(a: &FactorizeArgs, out: &mut dyn Write) -> Result<()> {
    let (name, x) = a.input.load()?;
    let cfg = run_config(&a.solver, &a.heuristic)?;
    let method = Method::from(a.method);
    if a.export.any() {
        let (f, _) = match method {
            Method::Exact => encode_exact(&x, a.k, cfg.solve.symmetry)?,
            _ => encode_approx(&x, a.k, cfg.solve.symmetry)?,
        };
        a.export.write(&f)?;
        writeln!(out, "exported {method} encoding for k={}: {} vars", a.k, f.var_count())?;
        return Ok(());
    }
    let (pair, errors, optimal, wall_ms) = if method == Method::Exact {
        let start = std::time::Instant::now();
        let (f, h) = encode_exact(&x, a.k, cfg.solve.symmetry)?;
        let mut s = crate::sat::Solver::with_seed(cfg.solve.seed);
        s.load_formula(&f);
        match s.solve(&[], &crate::sat::Budget::from_ms(cfg.solve.budget_ms)) {
            crate::sat::SolveResult::Sat => {
                let p = h.decode(s.model())?;
                (p, 0, true, start.elapsed().as_millis() as u64)
            }
            crate::sat::SolveResult::Unsat(_) => return Err(Error::Unsat),
            crate::sat::SolveResult::Unknown => return Err(Error::Timeout(cfg.solve.budget_ms.unwrap_or(0).div_ceil(1000))),
        }
    } else {
        let r = run_method(&x, a.k, method, &cfg)?;
        (r.pair, r.errors, r.optimal, r.wall_ms)
    };
    let cells = x.rows() * x.cols();
    writeln!(out, "errors {errors} ({}%)", format_error_pct(errors, cells))?;
    if let Some(dir) = out_dir(&a.output)? {
        write_pair(dir, &pair)?;
        let report = FactorReport {
            dataset: name,
            m: x.rows(),
            n: x.cols(),
            k: a.k,
            method: method.name().into(),
            errors,
            error_pct: format_error_pct(errors, cells),
            optimal,
            wall_ms: timing(&a.output, wall_ms),
        };
        write_json(dir, "report.json", &report)?;
    }
    Ok(())
}

fn cmd_undercover(a: &UndercoverArgs, out: &mut dyn Write) -> Result<()> {
    let (name, x) = a.input.load()?;
    let opts = a.solver.options()?;
    if a.export.any() {
        let (f, _, _) = encode_undercover(&x, a.k, opts.symmetry, opts.simplify)?;
        a.export.write(&f)?;
        writeln!(out, "exported undercover encoding for k={}: {} vars", a.k, f.var_count())?;
        return Ok(());
    }
    let r = undercover_optimal(&x, a.k, &opts)?;
    writeln!(out, "covered {} of {}", r.value, x.ones_count())?;
    if let Some(dir) = out_dir(&a.output)? {
        write_pair(dir, &r.pair)?;
        let report = UndercoverReport {
            dataset: name,
            m: x.rows(),
            n: x.cols(),
            k: a.k,
            ones: x.ones_count(),
            covered: r.value,
            optimal: r.optimal,
            lower_bound: r.lower_bound,
            wall_ms: timing(&a.output, r.elapsed.as_millis() as u64),
        };
        write_json(dir, "report.json", &report)?;
    }
    Ok(())
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Result<()> {
    let spec = GenSpec {
        m: a.m,
        n: a.n,
        k: a.k,
        d: a.d,
        seed: a.seed,
    };
    let pair = generate_planted_pair(&spec)?;
    let x = pair.product();
    match out_dir(&a.output)? {
        Some(dir) => {
            write_matrix(&x, dir.join("X.bm"))?;
            write_pair(dir, &pair)?;
            let report = GenReport {
                m: a.m,
                n: a.n,
                k: a.k,
                d: a.d,
                seed: a.seed,
                ones: x.ones_count(),
                density: x.density(),
            };
            write_json(dir, "report.json", &report)?;
            writeln!(out, "density {:.4}", x.density())?;
        }
        None => out.write_all(x.to_dense_string().as_bytes())?,
    }
    Ok(())
}

fn bench_dataset(arg: &str) -> Result<BenchDataset> {
    let (preset, path) = match arg.split_once(':') {
        Some(("zoo", p)) => (Some(PresetArg::Zoo), p),
        Some(("lung", p)) => (Some(PresetArg::Lung), p),
        Some(("csv", p)) => (None, p),
        Some(("dense", p)) => (None, p),
        _ => (None, arg),
    };
    let input = InputArgs {
        input: PathBuf::from(path),
        format: if arg.starts_with("csv:") { FormatArg::Csv } else { FormatArg::Dense },
        preset,
        categorical: Vec::new(),
        ignore: Vec::new(),
        missing: None,
        no_header: false,
    };
    let (name, matrix) = input.load()?;
    Ok(BenchDataset {
        name,
        matrix,
        ks: Vec::new(),
    })
}

fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> Result<()> {
    let mut datasets = a.input.iter().map(|s| bench_dataset(s)).collect::<Result<Vec<_>>>()?;
    for d in &mut datasets {
        d.ks = a.k.clone();
    }
    let methods: Vec<Method> = a.method.iter().map(|&m| m.into()).collect();
    let cfg = run_config(&a.solver, &a.heuristic)?;
    let mut cells = run_bench(&datasets, &methods, &cfg, a.jobs)?;
    if a.output.no_timing {
        for c in &mut cells {
            c.wall_ms = 0;
        }
    }
    let (table, jsonl) = emit_report(&cells)?;
    out.write_all(table.as_bytes())?;
    if let Some(dir) = out_dir(&a.output)? {
        fs::write(dir.join("bench.jsonl"), jsonl)?;
    }
    Ok(())
}

fn cmd_export(a: &ExportArgs, out: &mut dyn Write) -> Result<()> {
    if !a.export.any() {
        return Err(Error::InvalidArgument("export needs --export-dimacs or --export-wcnf".into()));
    }
    let (_, x) = a.input.load()?;
    let sym = a.symmetry.get();
    let f = match a.encoding {
        EncodingArg::Exact => encode_exact(&x, a.k, sym)?.0,
        EncodingArg::Approx => encode_approx(&x, a.k, sym)?.0,
        EncodingArg::Undercover => encode_undercover(&x, a.k, sym, a.simplify.get())?.0,
    };
    a.export.write(&f)?;
    writeln!(
        out,
        "{} vars, {} hard clauses, {} soft clauses, base cost {}",
        f.var_count(),
        f.hard().len(),
        f.soft().len(),
        f.base_cost()
    )?;
    Ok(())
}

/// Runs a parsed command line, writing human-readable output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Rank(a) => cmd_rank(a, out),
        Command::Factorize(a) => cmd_factorize(a, out),
        Command::Undercover(a) => cmd_undercover(a, out),
        Command::Gen(a) => cmd_gen(a, out),
        Command::Bench(a) => cmd_bench(a, out),
        Command::Export(a) => cmd_export(a, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("boolfact").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn parses_shared_flags() {
        let cli = parse(&[
            "factorize", "--input", "x.bm", "--k", "3", "--method", "frui", "--symmetry", "off",
            "--budget-ms", "500", "--seed", "9", "--relax-policy", "first",
        ]);
        let Command::Factorize(a) = cli.command else { panic!() };
        assert_eq!(a.k, 3);
        assert_eq!(a.method, MethodArg::Frui);
        let o = a.solver.options().unwrap();
        assert!(!o.symmetry && o.simplify);
        assert_eq!((o.budget_ms, o.seed), (Some(500), 9));
        assert_eq!(a.heuristic.relax_policy, PolicyArg::First);
    }

    #[test]
    fn bench_lists() {
        let cli = parse(&["bench", "--input", "zoo:data/zoo.csv", "--k", "3,7,14", "--method", "rui,frui", "--jobs", "2"]);
        let Command::Bench(a) = cli.command else { panic!() };
        assert_eq!(a.k, vec![3, 7, 14]);
        assert_eq!(a.method, vec![MethodArg::Rui, MethodArg::Frui]);
    }

    #[test]
    fn bad_solver_spec() {
        let cli = parse(&["rank", "--input", "x.bm", "--solver", "minisat"]);
        let Command::Rank(a) = cli.command else { panic!() };
        assert!(a.solver.options().is_err());
    }

    #[test]
    fn gen_then_factorize_in_process() {
        let dir = tempfile::tempdir().unwrap();
        let d = dir.path().to_str().unwrap();
        let mut sink = Vec::new();
        run(&parse(&["gen", "--m", "8", "--n", "7", "--k", "2", "--d", "0.4", "--seed", "3", "--out", d]), &mut sink).unwrap();
        let x = format!("{d}/X.bm");
        let fdir = format!("{d}/f");
        run(&parse(&["factorize", "--input", &x, "--k", "2", "--out", &fdir]), &mut sink).unwrap();
        let text = String::from_utf8(sink).unwrap();
        assert!(text.contains("errors 0 (0.00%)"), "{text}");
        let a = crate::read_matrix(format!("{fdir}/A.bm")).unwrap();
        let b = crate::read_matrix(format!("{fdir}/B.bm")).unwrap();
        let xm = crate::read_matrix(&x).unwrap();
        assert_eq!(a.bool_product(&b).unwrap(), xm);
    }
}
