//! Command-line front end.
//!
//! [`run`] parses arguments and returns the exit code together with
//! everything that would be written, so the binary is a thin wrapper and
//! tests can drive the CLI in-process.
//!
//! Exit codes: 0 success, 1 invalid input, 2 numerical failure, 3 invariant
//! violation (the offending graph is dumped as JSON on stderr).
//!
//! CSV columns:
//!
//! * `spectrum`: `eigenvalue,multiplicity`
//! * `deriv`: `eigenvalue,multiplicity,d_lambda` plus `fd_d_lambda` with
//!   `--verify`; the last row has eigenvalue `K` and holds `dK`
//! * `kemeny`: `method,kemeny`
//! * `scan`: `x,y,edge,d_kemeny,fd_max_gap,fd_agrees` followed by one
//!   `d_lambda` column per eigenvalue group, headed `lambda=<value>`
//! * `tables`: `table,row,column,computed,published,tolerance,pass`
//! * `search`: `n,category,rank,mask,x,y,d_kemeny,d_lambda_max,lambda_at_max,kemeny,kemeny_lower_bound,kemeny_upper_bound`

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::families::Family;
use crate::graph::{EdgeSet, Graph, VertexPair};
use crate::spectral::{self, Spectrum};
use crate::survey::{self, search::SearchRecord, CheckpointLog, SearchError};
use crate::verify::{self, DEFAULT_STEP};
use crate::{io, theorems};

/// Worker threads for `search`; unset or 0 means one per core.
pub const WORKERS_ENV: &str = "SPECTRAL_EDGE_WORKERS";

#[derive(Debug, Parser)]
#[command(
    name = "spectral-edge",
    version,
    about = "Edge derivatives of normalized-Laplacian spectra and Kemeny's constant"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Edge-list file
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    pub file: Option<PathBuf>,
    /// Generator such as `cricket`, `path:5` or `lollipop:3,2`
    #[arg(long)]
    pub family: Option<Family>,
}

impl Input {
    fn graph(&self) -> Result<Graph> {
        match (&self.file, &self.family) {
            (Some(path), None) => io::read_edge_list(path),
            (None, Some(f)) => f.build(),
            _ => Err(Error::Parameter(
                "exactly one of --file and --family is required".into(),
            )),
        }
    }
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Read and print vertex labels starting from 1
    #[arg(long)]
    pub one_based: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grouped eigenvalues of the normalized Laplacian
    Spectrum {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Derivatives with respect to one or more vertex pairs
    Deriv {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        /// Pair `x,y`; repeat to perturb several pairs together
        #[arg(long = "pair", required = true)]
        pairs: Vec<String>,
        /// Scale each pair's rate by its current weight
        #[arg(long)]
        weighted: bool,
        /// Cross-check against finite differences
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = DEFAULT_STEP)]
        h: f64,
    },
    /// Kemeny's constant from the spectrum and from mean first passage times
    Kemeny {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
    },
    /// Full derivative table with checks
    Scan {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        output: Output,
        #[arg(long, default_value_t = DEFAULT_STEP)]
        h: f64,
    },
    /// Write a generated graph as an edge list
    Family {
        #[arg(long)]
        family: Family,
        /// Destination file; stdout when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute the reference tables
    Tables {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exhaustive extremal search over connected graphs
    Search {
        #[arg(long, default_value_t = 6)]
        nmax: usize,
        /// JSONL checkpoint log
        #[arg(long)]
        log: Option<PathBuf>,
        /// Continue from the checkpoints in `--log` instead of starting over
        #[arg(long, requires = "log")]
        resume: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Input(String),
    Numerical(String),
    Invariant { message: String, dump: String },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<std::fmt::Error> for Failure {
    fn from(e: std::fmt::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut out = String::new();
    let result = execute(cli.command, &mut out);
    let out = strip_trailing_spaces(&out);
    match result {
        Ok(()) => Outcome {
            code: 0,
            stdout: out,
            stderr: String::new(),
        },
        Err(Failure::Input(m)) => Outcome {
            code: 1,
            stdout: out,
            stderr: format!("error: {m}\n"),
        },
        Err(Failure::Numerical(m)) => Outcome {
            code: 2,
            stdout: out,
            stderr: format!("numerical failure: {m}\n"),
        },
        Err(Failure::Invariant { message, dump }) => Outcome {
            code: 3,
            stdout: out,
            stderr: format!("invariant violation: {message}\n{dump}\n"),
        },
    }
}

fn strip_trailing_spaces(text: &str) -> String {
    let mut s = String::with_capacity(text.len());
    for line in text.split_inclusive('\n') {
        match line.strip_suffix('\n') {
            Some(body) => {
                s.push_str(body.trim_end_matches(' '));
                s.push('\n');
            }
            None => s.push_str(line.trim_end_matches(' ')),
        }
    }
    s
}

/// Six significant digits; magnitudes below `1e-12` print as `0`.
pub fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x.abs() < 1e-12 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&mag) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn json<T: Serialize>(out: &mut String, value: &T) -> CliResult<()> {
    let s = serde_json::to_string_pretty(value).map_err(Error::from)?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn csv_rows(out: &mut String, rows: &[Vec<String>]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.write_record(r).map_err(Error::from)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    out.push_str(&String::from_utf8(bytes).expect("csv output is utf-8"));
    Ok(())
}

fn label(p: VertexPair, one_based: bool) -> (usize, usize) {
    let b = one_based as usize;
    (p.x + b, p.y + b)
}

fn show_pair(p: VertexPair, one_based: bool) -> String {
    let (x, y) = label(p, one_based);
    format!("{{{x},{y}}}")
}

fn parse_pair(g: &Graph, text: &str, one_based: bool) -> Result<VertexPair> {
    let bad = || Error::Parameter(format!("pair must look like x,y, got {text:?}"));
    let (a, b) = text.split_once(',').ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    let shift = |v: usize| -> Result<usize> {
        if one_based {
            v.checked_sub(1)
                .ok_or_else(|| Error::Parameter("vertex labels start at 1 with --one-based".into()))
        } else {
            Ok(v)
        }
    };
    g.pair(shift(a)?, shift(b)?)
}

fn execute(cmd: Command, out: &mut String) -> CliResult<()> {
    match cmd {
        Command::Spectrum { input, output } => spectrum(&input.graph()?, output.format, out),
        Command::Deriv {
            input,
            output,
            pairs,
            weighted,
            verify,
            h,
        } => deriv(
            &input.graph()?,
            &output,
            &pairs,
            weighted,
            verify.then_some(h),
            out,
        ),
        Command::Kemeny { input, output } => kemeny(&input.graph()?, output.format, out),
        Command::Scan { input, output, h } => scan(&input.graph()?, &output, h, out),
        Command::Family { family, out: path } => {
            let g = family.build()?;
            match path {
                Some(p) => io::write_edge_list(&g, p)?,
                None => out.push_str(&io::format_edge_list(&g)),
            }
            Ok(())
        }
        Command::Tables { format } => tables(format, out),
        Command::Search {
            nmax,
            log,
            resume,
            format,
        } => search(nmax, log, resume, format, out),
    }
}

fn spectrum(g: &Graph, format: Format, out: &mut String) -> CliResult<()> {
    let s = Spectrum::of(g)?;
    let (values, mult) = (s.values(), s.multiplicities());
    match format {
        Format::Text => {
            writeln!(out, "eigenvalue  multiplicity")?;
            for (v, k) in values.iter().zip(&mult) {
                writeln!(out, "{:<10}  {k}", sig6(*v))?;
            }
        }
        Format::Csv => {
            let mut rows = vec![vec!["eigenvalue".to_string(), "multiplicity".to_string()]];
            rows.extend(
                values
                    .iter()
                    .zip(&mult)
                    .map(|(v, k)| vec![format!("{v:?}"), k.to_string()]),
            );
            csv_rows(out, &rows)?;
        }
        Format::Json => {
            #[derive(Serialize)]
            struct S<'a> {
                eigenvalues: &'a [f64],
                multiplicities: &'a [usize],
            }
            json(
                out,
                &S {
                    eigenvalues: &values,
                    multiplicities: &mult,
                },
            )?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct DerivOutput {
    pairs: Vec<VertexPair>,
    weighted: bool,
    eigenvalues: Vec<f64>,
    multiplicities: Vec<usize>,
    d_lambda: Vec<f64>,
    d_kemeny: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    finite_difference: Option<verify::FdReport>,
}

fn deriv(
    g: &Graph,
    output: &Output,
    pairs: &[String],
    weighted: bool,
    h: Option<f64>,
    out: &mut String,
) -> CliResult<()> {
    spectral::require_connected(g)?;
    let parsed = pairs
        .iter()
        .map(|p| parse_pair(g, p, output.one_based))
        .collect::<Result<Vec<_>>>()?;
    let unit = EdgeSet::from_pairs(parsed.iter().copied())?;
    let ec = if weighted {
        spectral::weight_scaled(g, &unit)?
    } else {
        unit
    };
    let s = Spectrum::of(g)?;
    let d_lambda = s
        .groups
        .iter()
        .map(|grp| spectral::eigenvalue_edge_derivative(g, grp, &ec))
        .collect::<Result<Vec<_>>>()?;
    let d_kemeny = spectral::kemeny_edge_derivative_with(g, &s, &ec)?;
    let fd = match h {
        Some(h) => Some(verify::fd_report_with(g, &s, &ec, h)?),
        None => None,
    };
    let res = DerivOutput {
        pairs: parsed,
        weighted,
        eigenvalues: s.values(),
        multiplicities: s.multiplicities(),
        d_lambda,
        d_kemeny,
        finite_difference: fd,
    };
    match output.format {
        Format::Text => {
            let names: Vec<String> = res
                .pairs
                .iter()
                .map(|p| show_pair(*p, output.one_based))
                .collect();
            writeln!(
                out,
                "pairs: {}{}",
                names.join(" "),
                if weighted { " (weighted)" } else { "" }
            )?;
            write!(
                out,
                "{:<12}  {:<4}  {:<12}",
                "eigenvalue", "mult", "d_lambda"
            )?;
            if res.finite_difference.is_some() {
                write!(out, "  {:<12}", "fd")?;
            }
            writeln!(out)?;
            for i in 0..res.eigenvalues.len() {
                write!(
                    out,
                    "{:<12}  {:<4}  {:<12}",
                    sig6(res.eigenvalues[i]),
                    res.multiplicities[i],
                    sig6(res.d_lambda[i])
                )?;
                if let Some(fd) = &res.finite_difference {
                    write!(out, "  {:<12}", sig6(fd.numeric[i]))?;
                }
                writeln!(out)?;
            }
            write!(out, "dK = {}", sig6(res.d_kemeny))?;
            if let Some(fd) = &res.finite_difference {
                write!(out, "  (fd {})", sig6(fd.numeric_dk))?;
            }
            writeln!(out)?;
            if let Some(fd) = &res.finite_difference {
                writeln!(
                    out,
                    "finite differences: {} (h = {}, {:?} stencil, max gap {:.3e})",
                    if fd.agrees() { "agree" } else { "DISAGREE" },
                    fd.h,
                    fd.stencil,
                    fd.max_gap()
                )?;
            }
        }
        Format::Csv => {
            let mut header = vec!["eigenvalue", "multiplicity", "d_lambda"];
            if res.finite_difference.is_some() {
                header.push("fd_d_lambda");
            }
            let mut rows = vec![header.into_iter().map(String::from).collect::<Vec<_>>()];
            for i in 0..res.eigenvalues.len() {
                let mut r = vec![
                    format!("{:?}", res.eigenvalues[i]),
                    res.multiplicities[i].to_string(),
                    format!("{:?}", res.d_lambda[i]),
                ];
                if let Some(fd) = &res.finite_difference {
                    r.push(format!("{:?}", fd.numeric[i]));
                }
                rows.push(r);
            }
            let mut last = vec![
                "K".to_string(),
                String::new(),
                format!("{:?}", res.d_kemeny),
            ];
            if let Some(fd) = &res.finite_difference {
                last.push(format!("{:?}", fd.numeric_dk));
            }
            rows.push(last);
            csv_rows(out, &rows)?;
        }
        Format::Json => json(out, &res)?,
    }
    if let Some(fd) = &res.finite_difference {
        if !fd.agrees() {
            return Err(Failure::Invariant {
                message: format!("finite differences disagree (max gap {:e})", fd.max_gap()),
                dump: io::format_edge_list(g),
            });
        }
    }
    Ok(())
}

fn kemeny(g: &Graph, format: Format, out: &mut String) -> CliResult<()> {
    let k_spec = spectral::kemeny(g)?;
    let k_mfpt = verify::kemeny_via_mfpt(g)?;
    match format {
        Format::Text => {
            writeln!(out, "spectral  {}", sig6(k_spec))?;
            writeln!(out, "mfpt      {}", sig6(k_mfpt))?;
        }
        Format::Csv => csv_rows(
            out,
            &[
                vec!["method".into(), "kemeny".into()],
                vec!["spectral".into(), format!("{k_spec:?}")],
                vec!["mfpt".into(), format!("{k_mfpt:?}")],
            ],
        )?,
        Format::Json => {
            #[derive(Serialize)]
            struct K {
                spectral: f64,
                mfpt: f64,
            }
            json(
                out,
                &K {
                    spectral: k_spec,
                    mfpt: k_mfpt,
                },
            )?;
        }
    }
    if (k_spec - k_mfpt).abs() > theorems::KEMENY_TOL {
        return Err(Failure::Invariant {
            message: format!(
                "spectral and MFPT Kemeny differ by {:e}",
                (k_spec - k_mfpt).abs()
            ),
            dump: io::format_edge_list(g),
        });
    }
    Ok(())
}

fn scan(g: &Graph, output: &Output, h: f64, out: &mut String) -> CliResult<()> {
    let rep = survey::scan_graph(g, h)?;
    let t = &rep.table;
    match output.format {
        Format::Text => {
            writeln!(
                out,
                "n = {}, K = {}, dK bounds [{}, {}]",
                t.n,
                sig6(t.kemeny),
                sig6(t.kemeny_bounds.lower),
                sig6(t.kemeny_bounds.upper)
            )?;
            write!(out, "{:<8}  {:<4}", "pair", "edge")?;
            for (l, k) in t.eigenvalues.iter().zip(&t.multiplicities) {
                let head = if *k > 1 {
                    format!("{}(x{k})", sig6(*l))
                } else {
                    sig6(*l)
                };
                write!(out, "  {head:<12}")?;
            }
            writeln!(out, "  {:<12}  fd", "dK")?;
            for (r, c) in t.rows.iter().zip(&rep.oracle) {
                write!(
                    out,
                    "{:<8}  {:<4}",
                    show_pair(r.pair, output.one_based),
                    if r.pair.is_edge() { "yes" } else { "no" }
                )?;
                for d in &r.d_lambda {
                    write!(out, "  {:<12}", sig6(*d))?;
                }
                writeln!(
                    out,
                    "  {:<12}  {}",
                    sig6(r.d_kemeny),
                    if c.agrees { "ok" } else { "FAIL" }
                )?;
            }
            if rep.violations.is_empty() {
                writeln!(out, "violations: none")?;
            } else {
                writeln!(out, "violations: {}", rep.violations.len())?;
                for v in &rep.violations {
                    writeln!(out, "  {v}")?;
                }
            }
        }
        Format::Csv => {
            let mut header: Vec<String> = ["x", "y", "edge", "d_kemeny", "fd_max_gap", "fd_agrees"]
                .map(String::from)
                .to_vec();
            header.extend(t.eigenvalues.iter().map(|l| format!("lambda={l:?}")));
            let mut rows = vec![header];
            for (r, c) in t.rows.iter().zip(&rep.oracle) {
                let (x, y) = label(r.pair, output.one_based);
                let mut row = vec![
                    x.to_string(),
                    y.to_string(),
                    r.pair.is_edge().to_string(),
                    format!("{:?}", r.d_kemeny),
                    format!("{:?}", c.max_gap),
                    c.agrees.to_string(),
                ];
                row.extend(r.d_lambda.iter().map(|d| format!("{d:?}")));
                rows.push(row);
            }
            csv_rows(out, &rows)?;
        }
        Format::Json => json(out, &rep)?,
    }
    if !rep.is_clean() {
        #[derive(Serialize)]
        struct Dump<'a> {
            edges: String,
            violations: &'a [theorems::Violation],
            fd_failures: Vec<VertexPair>,
        }
        let dump = Dump {
            edges: io::format_edge_list(g),
            violations: &rep.violations,
            fd_failures: rep
                .oracle
                .iter()
                .filter(|c| !c.agrees)
                .map(|c| c.pair)
                .collect(),
        };
        return Err(Failure::Invariant {
            message: "scan found inconsistencies".into(),
            dump: serde_json::to_string_pretty(&dump).map_err(Error::from)?,
        });
    }
    Ok(())
}

fn tables(format: Format, out: &mut String) -> CliResult<()> {
    let rep = survey::reproduce_tables()?;
    match format {
        Format::Text => {
            let mut current = None;
            for e in &rep.entries {
                if current != Some(e.table) {
                    writeln!(out, "[{}]", e.table.name())?;
                    current = Some(e.table);
                }
                writeln!(
                    out,
                    "{:<4}  {:<22}  {:<12}  computed {:<12}  published {:<10}  tol {}",
                    if e.pass { "PASS" } else { "FAIL" },
                    e.row,
                    e.column,
                    sig6(e.computed),
                    sig6(e.published),
                    e.tolerance
                )?;
            }
            writeln!(
                out,
                "{} of {} entries within tolerance",
                rep.passed(),
                rep.entries.len()
            )?;
        }
        Format::Csv => {
            let mut buf = Vec::new();
            rep.write_csv(&mut buf)?;
            out.push_str(&String::from_utf8(buf).expect("csv output is utf-8"));
        }
        Format::Json => json(out, &rep)?,
    }
    Ok(())
}

/// Worker count from [`WORKERS_ENV`]; `None` uses the rayon default.
pub fn workers_from_env() -> Result<Option<usize>> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(0) => Ok(None),
            Ok(k) => Ok(Some(k)),
            Err(_) => Err(Error::Parameter(format!(
                "{WORKERS_ENV} must be a non-negative integer, got {v:?}"
            ))),
        },
        Err(_) => Ok(None),
    }
}

fn search(
    nmax: usize,
    log: Option<PathBuf>,
    resume: bool,
    format: Format,
    out: &mut String,
) -> CliResult<()> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = workers_from_env()? {
        builder = builder.num_threads(k);
    }
    let pool = builder
        .build()
        .map_err(|e| Failure::Input(format!("cannot start worker pool: {e}")))?;
    if let Some(path) = &log {
        if !resume && path.exists() {
            std::fs::remove_file(path).map_err(Error::from)?;
        }
    }
    let log = log.map(CheckpointLog::new);
    let report = pool
        .install(|| survey::conjecture_search(nmax, log.as_ref()))
        .map_err(|e| match e {
            SearchError::Numerical(e) => Failure::from(e),
            SearchError::Invariant(w) => Failure::Invariant {
                message: format!("graph n={} mask={} fails the table checks", w.n, w.mask),
                dump: serde_json::to_string_pretty(&w).unwrap_or_default(),
            },
        })?;
    match format {
        Format::Text => {
            for o in &report.orders {
                writeln!(out, "n = {} ({} connected graphs)", o.n, o.graphs_visited)?;
                let line =
                    |out: &mut String, name: &str, r: &SearchRecord, v: f64| -> std::fmt::Result {
                        writeln!(
                            out,
                            "  {name:<12} {:<12} graph mask {} pair {}",
                            sig6(v),
                            r.mask,
                            show_pair(r.pair, false)
                        )
                    };
                line(
                    out,
                    "max dlambda",
                    &o.max_d_lambda,
                    o.max_d_lambda.d_lambda_max,
                )?;
                line(out, "max dK", &o.max_d_kemeny, o.max_d_kemeny.d_kemeny)?;
                line(out, "min dK", &o.min_d_kemeny, o.min_d_kemeny.d_kemeny)?;
            }
            if let Some(e) = report.max_d_kemeny_exponent {
                writeln!(out, "growth exponent of max dK: {}", sig6(e))?;
            }
            if let Some(e) = report.min_d_kemeny_exponent {
                writeln!(out, "growth exponent of min dK: {}", sig6(e))?;
            }
            for v in &report.verdicts {
                writeln!(
                    out,
                    "{}: {} ({})",
                    if v.holds { "HOLDS" } else { "FAILS" },
                    v.claim,
                    v.detail
                )?;
            }
        }
        Format::Csv => {
            let mut rows = vec![[
                "n",
                "category",
                "rank",
                "mask",
                "x",
                "y",
                "d_kemeny",
                "d_lambda_max",
                "lambda_at_max",
                "kemeny",
                "kemeny_lower_bound",
                "kemeny_upper_bound",
            ]
            .map(String::from)
            .to_vec()];
            for o in &report.orders {
                for (cat, recs) in [
                    ("max_d_lambda", &o.top_max_d_lambda),
                    ("max_d_kemeny", &o.top_max_d_kemeny),
                    ("min_d_kemeny", &o.top_min_d_kemeny),
                ] {
                    for (rank, r) in recs.iter().enumerate() {
                        rows.push(vec![
                            o.n.to_string(),
                            cat.to_string(),
                            (rank + 1).to_string(),
                            r.mask.to_string(),
                            r.pair.x.to_string(),
                            r.pair.y.to_string(),
                            format!("{:?}", r.d_kemeny),
                            format!("{:?}", r.d_lambda_max),
                            format!("{:?}", r.lambda_at_max),
                            format!("{:?}", r.kemeny),
                            format!("{:?}", r.kemeny_lower_bound),
                            format!("{:?}", r.kemeny_upper_bound),
                        ]);
                    }
                }
            }
            csv_rows(out, &rows)?;
        }
        Format::Json => json(out, &report)?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig6(0.25), "0.25");
        assert_eq!(sig6(-9.375), "-9.375");
        assert_eq!(sig6(11.0 / 3.0), "3.66667");
        assert_eq!(sig6(-163.35), "-163.35");
        assert_eq!(sig6(1288.0), "1288");
        assert_eq!(sig6(3e-17), "0");
        assert_eq!(sig6(-1e-13), "0");
        assert_eq!(sig6(2.5e-6), "2.50000e-6");
        assert_eq!(sig6(123456.7), "123457");
        assert_eq!(sig6(1234567.0), "1.23457e6");
    }

    #[test]
    fn pair_parsing() {
        let g = crate::families::cricket();
        assert_eq!(parse_pair(&g, "0,1", false).unwrap().key(), (0, 1));
        assert_eq!(parse_pair(&g, " 5 , 4", true).unwrap().key(), (3, 4));
        assert!(parse_pair(&g, "0,5", false).is_err());
        assert!(parse_pair(&g, "0,1", true).is_err());
        assert!(parse_pair(&g, "0-1", false).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["se", "spectrum", "--family", "cricket"]).code, 0);
        assert_eq!(run(["se", "spectrum"]).code, 1);
        assert_eq!(
            run(["se", "spectrum", "--family", "cricket", "--file", "x"]).code,
            1
        );
        assert_eq!(run(["se", "kemeny", "--family", "nope:3"]).code, 1);
        assert_eq!(
            run(["se", "deriv", "--family", "path:4", "--pair", "0,9"]).code,
            1
        );
    }
}
