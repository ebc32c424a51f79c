//! Command-line front end. `run` parses arguments, validates them before doing
//! any work, and writes results to `out` and diagnostics to `err`.
//!
//! Exit codes: 0 success, 1 a verified instance failed, 2 misuse or bad input,
//! 3 a safety cap was hit.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mexkit_core::colex::{ffk_min_shadow, kk_min_shadow, ColexError};
use mexkit_core::constructions::{
    blowup, colex_graph, colex_turan_graph, critical_edge_gadget, turan_graph, turan_number, ConstructionError,
};
use mexkit_core::extremal::{
    beta, c_rs, closed_form_check, lovasz_kk_bound, mex_clique, mex_profile, prop22_sides, zykov_ex, ExtremalError,
};
use mexkit_core::oracle::{
    brute_force_ex, brute_force_min_shadow, enumerate_levels, find_blowup, mex_over, min_edits_to_r_partite,
    min_edits_upper_bound, OracleConfig, OracleError, SearchResult,
};
use mexkit_core::processes::{
    edge_deletion_process, stability_experiment, vertex_deletion_process, ProcessConfig, ProcessError,
};
use mexkit_core::{Graph, GraphError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "mexkit", version, about = "Extremal clique counts with a fixed number of edges")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a named graph.
    Construct(ConstructArgs),
    /// Count cliques in a graph file.
    Count(CountArgs),
    /// Largest number of K_s in a K_{r+1}-free graph with m edges.
    Mex(MexArgs),
    /// Largest number of K_t in a K_{r+1}-free graph on n vertices.
    Ex(ExArgs),
    /// Upper bound on K_s in any graph with m edges.
    Bound(BoundArgs),
    /// Exact constants beta_r and c_{r,s}.
    Constants(ConstantsArgs),
    /// Check closed forms against exhaustive search or exact arithmetic.
    Verify(VerifyArgs),
    /// Run an exhaustive search.
    Search(SearchArgs),
    /// Run a deletion procedure and print its trace as JSON lines.
    Process(ProcessArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Edges,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConstructKind {
    Turan,
    Colex,
    Ct,
    Blowup,
    Gadget,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    kind: ConstructKind,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    /// Graph to blow up (edge-list file, `-` for stdin).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "edges")]
    format: Format,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(long)]
    input: PathBuf,
    /// Count only t-cliques; otherwise the whole clique profile.
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct MexArgs {
    #[arg(long, conflicts_with = "m_max", required_unless_present = "m_max")]
    m: Option<usize>,
    /// Emit the whole profile for m = 1..=m_max.
    #[arg(long)]
    m_max: Option<usize>,
    #[arg(long)]
    s: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug)]
struct ExArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: usize,
    #[arg(long)]
    r: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[arg(long)]
    m: usize,
    #[arg(long)]
    s: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct ConstantsArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug, Clone)]
struct OracleFlags {
    /// Parallel workers for exhaustive searches.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Lift the safety caps (same as MEXKIT_CAP_OVERRIDE=1).
    #[arg(long, global = true)]
    override_caps: bool,
    #[arg(long, global = true, default_value_t = 16)]
    witness_limit: usize,
}

impl OracleFlags {
    fn config(&self) -> OracleConfig {
        let mut c = OracleConfig::from_env();
        c.workers = self.workers.max(1);
        c.override_caps |= self.override_caps;
        c.witness_limit = self.witness_limit;
        c
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(subcommand)]
    suite: VerifySuite,
    #[command(flatten)]
    oracle: OracleFlags,
}

#[derive(Subcommand, Debug)]
enum VerifySuite {
    /// Exhaustive mex over all m-edge graphs against the colex Turán count.
    Frohmader {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        m_max: usize,
    },
    /// Exhaustive ex over labelled graphs against the Turán count, with uniqueness.
    Zykov {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Least shadows by exhaustion against colex (or r-partite colex) segments.
    Shadow {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        size_max: usize,
        /// Restrict to r-colourable families and compare with the r-partite order.
        #[arg(long)]
        r: Option<usize>,
    },
    /// kappa_s(CT_r(t_r(n)))^2 = c_{r,s}^2 t_r(n)^s and regularity, for r | n.
    ClosedForm {
        #[arg(long, default_value_t = 5)]
        r_max: usize,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
    },
    /// The beta_r / c_{r,s} identity and bound in exact arithmetic.
    Prop22 {
        #[arg(long, default_value_t = 12)]
        r_max: usize,
    },
    /// The critical-edge gadget beats the colex Turán graph.
    Gadget {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        s: usize,
    },
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[command(subcommand)]
    target: SearchTarget,
    #[command(flatten)]
    oracle: OracleFlags,
    /// Write each witness as an edge-list file into this directory.
    #[arg(long, global = true)]
    dump_witnesses: Option<PathBuf>,
    /// Report elapsed_ms as 0 so output is byte-identical across runs.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Subcommand, Debug)]
enum SearchTarget {
    /// Max K_s over F-free graphs with m edges (F = K_{r+1}, or --forbidden FILE).
    Mex {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        s: usize,
        #[arg(long, required_unless_present = "forbidden")]
        r: Option<usize>,
        #[arg(long)]
        forbidden: Option<PathBuf>,
    },
    /// Max K_t over F-free graphs on n labelled vertices.
    Ex {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, required_unless_present = "forbidden")]
        r: Option<usize>,
        #[arg(long)]
        forbidden: Option<PathBuf>,
    },
    /// Least p-shadow of a family of `size` k-subsets of [n].
    Shadow {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        r: Option<usize>,
    },
    /// Least edge deletions making a graph r-partite.
    Edits {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        r: usize,
        /// Local-search upper bound instead of the exact search.
        #[arg(long)]
        heuristic: bool,
    },
    /// Look for K_parts[t] in a graph.
    Blowup {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        parts: usize,
        #[arg(long)]
        t: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProcessModeArg {
    Edge,
    Vertex,
    Stability,
}

#[derive(Args, Debug)]
struct ProcessArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    mode: ProcessModeArg,
    #[arg(long)]
    s: usize,
    #[arg(long)]
    r: usize,
    #[arg(long)]
    epsilon: f64,
    #[arg(long)]
    coefficient: Option<f64>,
    #[arg(long)]
    exponent: Option<f64>,
    #[arg(long)]
    budget: Option<usize>,
    #[command(flatten)]
    oracle: OracleFlags,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Cap(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::CapExceeded { .. } | OracleError::TooLargeForExact { .. } => Failure::Cap(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ProcessError> for Failure {
    fn from(e: ProcessError) -> Self {
        match e {
            ProcessError::Oracle(o) => o.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

macro_rules! usage_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Usage(e.to_string())
            }
        }
    )*};
}
usage_from!(GraphError, ColexError, ConstructionError, ExtremalError, serde_json::Error);

type Outcome = Result<bool, Failure>;

/// Runs the tool on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Cap(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_CAP
        }
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Construct(a) => construct(a, out),
        Command::Count(a) => count(a, out),
        Command::Mex(a) => mex(a, out),
        Command::Ex(a) => ex(a, out),
        Command::Bound(a) => bound(a, out),
        Command::Constants(a) => constants(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Search(a) => search(a, out),
        Command::Process(a) => process(a, out),
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
    };
    Graph::parse_edge_list(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn need(value: Option<usize>, flag: &str, what: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("{what} needs --{flag}")))
}

fn json_line(out: &mut dyn Write, value: &impl Serialize) -> Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string(value)?)?;
    Ok(())
}

fn reject_format(format: Format, allowed: &[Format], what: &str) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("{what} does not support --format {format:?}").to_lowercase()))
    }
}

#[derive(Serialize)]
struct GraphJson<'a> {
    kind: &'a str,
    vertex_count: usize,
    edge_count: usize,
    edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    apex: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    attachment: Option<usize>,
}

fn construct(a: ConstructArgs, out: &mut dyn Write) -> Outcome {
    reject_format(a.format, &[Format::Edges, Format::Json], "construct")?;
    let mut extra = (None, None);
    let (kind, g) = match a.kind {
        ConstructKind::Turan => {
            let r = need(a.r, "r", "turan")?;
            if r == 0 {
                return Err(Failure::Usage("r must be at least 1".into()));
            }
            ("turan", turan_graph(r, need(a.n, "n", "turan")?))
        }
        ConstructKind::Colex => ("colex", colex_graph(need(a.m, "m", "colex")?)),
        ConstructKind::Ct => ("ct", colex_turan_graph(need(a.r, "r", "ct")?, need(a.m, "m", "ct")?)?),
        ConstructKind::Blowup => {
            let t = need(a.t, "t", "blowup")?;
            let input = a.input.ok_or_else(|| Failure::Usage("blowup needs --input".into()))?;
            ("blowup", blowup(&read_graph(&input)?, t)?)
        }
        ConstructKind::Gadget => {
            let gadget = critical_edge_gadget(need(a.r, "r", "gadget")?, need(a.m, "m", "gadget")?)?;
            extra = (Some(gadget.apex), Some(gadget.attachment));
            ("gadget", gadget.graph)
        }
    };
    match a.format {
        Format::Edges => write!(out, "{}", g.to_edge_list())?,
        _ => json_line(
            out,
            &GraphJson {
                kind,
                vertex_count: g.vertex_count(),
                edge_count: g.edge_count(),
                edges: g.edges(),
                apex: extra.0,
                attachment: extra.1,
            },
        )?,
    }
    Ok(true)
}

fn count(a: CountArgs, out: &mut dyn Write) -> Outcome {
    reject_format(a.format, &[Format::Json, Format::Csv], "count")?;
    let g = read_graph(&a.input)?;
    #[derive(Serialize)]
    struct Single {
        t: usize,
        value: u128,
    }
    #[derive(Serialize)]
    struct Profile {
        vertex_count: usize,
        edge_count: usize,
        omega: usize,
        profile: Vec<u128>,
    }
    match (a.t, a.format) {
        (Some(t), Format::Json) => json_line(out, &Single { t, value: g.count_cliques(t)? })?,
        (Some(t), _) => write!(out, "t,value\n{t},{}\n", g.count_cliques(t)?)?,
        (None, Format::Json) => {
            let p = g.clique_profile();
            json_line(
                out,
                &Profile { vertex_count: g.vertex_count(), edge_count: g.edge_count(), omega: p.omega(), profile: p.counts },
            )?
        }
        (None, _) => {
            writeln!(out, "t,value")?;
            for (i, c) in g.clique_profile().counts.iter().enumerate() {
                writeln!(out, "{},{c}", i + 1)?;
            }
        }
    }
    Ok(true)
}

fn mex(a: MexArgs, out: &mut dyn Write) -> Outcome {
    #[derive(Serialize)]
    struct Scalar {
        m: usize,
        s: usize,
        r: usize,
        value: u128,
    }
    match (a.m, a.m_max) {
        (Some(m), None) => {
            let format = a.format.unwrap_or(Format::Json);
            reject_format(format, &[Format::Json, Format::Csv], "mex")?;
            let value = mex_clique(m, a.s, a.r)?;
            if format == Format::Json {
                json_line(out, &Scalar { m, s: a.s, r: a.r, value })?;
            } else {
                write!(out, "m,value\n{m},{value}\n")?;
            }
        }
        (None, Some(m_max)) => {
            let format = a.format.unwrap_or(Format::Csv);
            reject_format(format, &[Format::Json, Format::Csv], "mex")?;
            let profile = mex_profile(a.r, a.s, m_max)?;
            if format == Format::Csv {
                writeln!(out, "m,value")?;
                for (i, v) in profile.iter().enumerate() {
                    writeln!(out, "{},{v}", i + 1)?;
                }
            } else {
                for (i, &value) in profile.iter().enumerate() {
                    json_line(out, &Scalar { m: i + 1, s: a.s, r: a.r, value })?;
                }
            }
        }
        _ => return Err(Failure::Usage("give exactly one of --m and --m-max".into())),
    }
    Ok(true)
}

fn ex(a: ExArgs, out: &mut dyn Write) -> Outcome {
    reject_format(a.format, &[Format::Json], "ex")?;
    #[derive(Serialize)]
    struct Scalar {
        n: usize,
        t: usize,
        r: usize,
        value: u128,
    }
    let value = zykov_ex(a.n, a.t, a.r)?;
    json_line(out, &Scalar { n: a.n, t: a.t, r: a.r, value })?;
    Ok(true)
}

fn bound(a: BoundArgs, out: &mut dyn Write) -> Outcome {
    reject_format(a.format, &[Format::Json], "bound")?;
    if a.s < 3 {
        return Err(Failure::Usage("bound needs s >= 3".into()));
    }
    #[derive(Serialize)]
    struct Scalar {
        m: usize,
        s: usize,
        value: f64,
    }
    json_line(out, &Scalar { m: a.m, s: a.s, value: lovasz_kk_bound(a.m, a.s) })?;
    Ok(true)
}

fn constants(a: ConstantsArgs, out: &mut dyn Write) -> Outcome {
    reject_format(a.format, &[Format::Json], "constants")?;
    #[derive(Serialize)]
    struct Constants {
        r: usize,
        beta: mexkit_core::extremal::ExactSquareScalar,
        #[serde(skip_serializing_if = "Option::is_none")]
        s: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        c: Option<mexkit_core::extremal::ExactSquareScalar>,
        #[serde(skip_serializing_if = "Option::is_none")]
        prop22: Option<bool>,
    }
    let c = a.s.map(|s| c_rs(a.r, s)).transpose()?;
    let prop22 = match a.s {
        Some(s) if s >= 3 && a.r >= 2 => Some(prop22_sides(a.r, s)?.holds()),
        _ => None,
    };
    json_line(out, &Constants { r: a.r, beta: beta(a.r)?, s: a.s, c, prop22 })?;
    Ok(true)
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

fn verify(a: VerifyArgs, out: &mut dyn Write) -> Outcome {
    let config = a.oracle.config();
    let mut all_ok = true;
    match a.suite {
        VerifySuite::Frohmader { r, s, m_max } => {
            if !(r >= s && s >= 2) {
                return Err(Failure::Usage("frohmader needs r >= s >= 2".into()));
            }
            let levels = enumerate_levels(m_max, 2 * m_max, &config)?;
            writeln!(out, "{:>4} {:>8} {:>8} {:>9} status", "m", "search", "formula", "graphs")?;
            for (i, level) in levels.iter().enumerate() {
                let m = i + 1;
                let found = mex_over(level, s, &Graph::complete(r + 1), &config);
                let formula = mex_clique(m, s, r)?;
                let ok = found.optimum == formula;
                all_ok &= ok;
                writeln!(out, "{m:>4} {:>8} {formula:>8} {:>9} {}", found.optimum, level.len(), mark(ok))?;
            }
        }
        VerifySuite::Zykov { r, t, n_max } => {
            if !(r >= t && t >= 2) {
                return Err(Failure::Usage("zykov needs r >= t >= 2".into()));
            }
            writeln!(out, "{:>3} {:>8} {:>8} {:>9} status", "n", "search", "formula", "witnesses")?;
            for n in r..=n_max {
                let found = brute_force_ex(n, t, &Graph::complete(r + 1), &config)?;
                let formula = zykov_ex(n, t, r)?;
                let unique = found.witness_count == 1
                    && mexkit_core::canonical_form(&found.witnesses[0]) == mexkit_core::canonical_form(&turan_graph(r, n));
                let ok = found.optimum == formula && unique;
                all_ok &= ok;
                writeln!(out, "{n:>3} {:>8} {formula:>8} {:>9} {}", found.optimum, found.witness_count, mark(ok))?;
            }
        }
        VerifySuite::Shadow { n, k, p, size_max, r } => {
            writeln!(out, "{:>5} {:>8} {:>8} status", "size", "search", "segment")?;
            for size in 1..=size_max {
                let found = brute_force_min_shadow(n, k, size, p, r, &config)?.minimum;
                let segment = match r {
                    Some(r) => ffk_min_shadow(r, k, size, p)?,
                    None => kk_min_shadow(k, size, p)?,
                };
                let ok = found == segment;
                all_ok &= ok;
                writeln!(out, "{size:>5} {found:>8} {segment:>8} {}", mark(ok))?;
            }
        }
        VerifySuite::ClosedForm { r_max, n_max } => {
            writeln!(out, "{:>3} {:>3} {:>4} {:>6} {:>8} status", "r", "s", "n", "m", "kappa")?;
            for r in 2..=r_max {
                for n in (r..=n_max).step_by(r) {
                    let m = turan_number(r, n);
                    let ct = colex_turan_graph(r, m)?;
                    let regular = ct.non_isolated_vertices().iter().all(|&v| ct.degree(v) * r == n * (r - 1));
                    for s in 2..=r {
                        let ok = closed_form_check(r, s, n)? && regular;
                        all_ok &= ok;
                        writeln!(out, "{r:>3} {s:>3} {n:>4} {m:>6} {:>8} {}", mex_clique(m, s, r)?, mark(ok))?;
                    }
                }
            }
        }
        VerifySuite::Prop22 { r_max } => {
            writeln!(out, "{:>3} {:>3} status", "r", "s")?;
            for r in 2..=r_max {
                for s in 3..=r_max.max(r + 2) {
                    let ok = prop22_sides(r, s)?.holds();
                    all_ok &= ok;
                    writeln!(out, "{r:>3} {s:>3} {}", mark(ok))?;
                }
            }
        }
        VerifySuite::Gadget { r, m, s } => {
            if !(r >= s && s >= 2) {
                return Err(Failure::Usage("gadget needs r >= s >= 2".into()));
            }
            let gadget = critical_edge_gadget(r, m)?;
            let kappa = gadget.graph.count_cliques(s)?;
            let colex = mex_clique(m, s, r)?;
            let ok = kappa > colex;
            all_ok &= ok;
            writeln!(out, "{:>4} {:>10} {:>10} {:>10} status", "m", "attachment", "gadget", "colex")?;
            writeln!(out, "{m:>4} {:>10} {kappa:>10} {colex:>10} {}", gadget.attachment, mark(ok))?;
        }
    }
    writeln!(out, "{}", if all_ok { "all checks passed" } else { "some checks FAILED" })?;
    Ok(all_ok)
}

#[derive(Serialize)]
struct SearchJson {
    optimum: u128,
    witness_count: usize,
    search_space_size: u128,
    elapsed_ms: u128,
}

fn forbidden_graph(r: Option<usize>, forbidden: Option<PathBuf>) -> Result<Graph, Failure> {
    match (r, forbidden) {
        (_, Some(path)) => read_graph(&path),
        (Some(r), None) => Ok(Graph::complete(r + 1)),
        (None, None) => Err(Failure::Usage("give --r or --forbidden".into())),
    }
}

fn dump(dir: &Path, witnesses: &[Graph]) -> Result<(), Failure> {
    std::fs::create_dir_all(dir)?;
    for (i, w) in witnesses.iter().enumerate() {
        std::fs::write(dir.join(format!("witness_{i:03}.edges")), w.to_edge_list())?;
    }
    Ok(())
}

fn search(a: SearchArgs, out: &mut dyn Write) -> Outcome {
    let config = a.oracle.config();
    let report = |res: &SearchResult, out: &mut dyn Write| -> Result<(), Failure> {
        json_line(
            out,
            &SearchJson {
                optimum: res.optimum,
                witness_count: res.witness_count,
                search_space_size: res.search_space_size,
                elapsed_ms: if a.no_timing { 0 } else { res.elapsed.as_millis() },
            },
        )
    };
    match a.target {
        SearchTarget::Mex { m, s, r, forbidden } => {
            let f = forbidden_graph(r, forbidden)?;
            let res = mexkit_core::oracle::brute_force_mex(m, s, &f, &config)?;
            report(&res, out)?;
            if let Some(dir) = &a.dump_witnesses {
                dump(dir, &res.witnesses)?;
            }
        }
        SearchTarget::Ex { n, t, r, forbidden } => {
            let f = forbidden_graph(r, forbidden)?;
            let res = brute_force_ex(n, t, &f, &config)?;
            report(&res, out)?;
            if let Some(dir) = &a.dump_witnesses {
                dump(dir, &res.witnesses)?;
            }
        }
        SearchTarget::Shadow { n, k, size, p, r } => {
            let started = std::time::Instant::now();
            let res = brute_force_min_shadow(n, k, size, p, r, &config)?;
            json_line(
                out,
                &SearchJson {
                    optimum: res.minimum as u128,
                    witness_count: 0,
                    search_space_size: res.families_examined,
                    elapsed_ms: if a.no_timing { 0 } else { started.elapsed().as_millis() },
                },
            )?;
        }
        SearchTarget::Edits { input, r, heuristic } => {
            let g = read_graph(&input)?;
            #[derive(Serialize)]
            struct Edits {
                r: usize,
                edges: usize,
                edits: usize,
                exact: bool,
            }
            let edits = if heuristic { min_edits_upper_bound(&g, r) } else { min_edits_to_r_partite(&g, r, &config)? };
            json_line(out, &Edits { r, edges: g.edge_count(), edits, exact: !heuristic })?;
        }
        SearchTarget::Blowup { input, parts, t } => {
            let g = read_graph(&input)?;
            #[derive(Serialize)]
            struct Found {
                parts: usize,
                t: usize,
                found: bool,
                witness: Option<Vec<Vec<usize>>>,
            }
            let witness = find_blowup(&g, parts, t, &config)?;
            json_line(out, &Found { parts, t, found: witness.is_some(), witness })?;
        }
    }
    Ok(true)
}

fn process(a: ProcessArgs, out: &mut dyn Write) -> Outcome {
    let g = read_graph(&a.input)?;
    let m = g.edge_count();
    let mut config = match a.mode {
        ProcessModeArg::Edge => ProcessConfig::edge_defaults(a.s, a.r, a.epsilon, m)?,
        ProcessModeArg::Vertex => ProcessConfig::vertex_defaults(a.s, a.r, a.epsilon, m)?,
        ProcessModeArg::Stability => {
            let report = stability_experiment(&g, a.r, a.s, a.epsilon, &a.oracle.config())?;
            json_line(out, &report)?;
            return Ok(true);
        }
    };
    if let Some(c) = a.coefficient {
        config.coefficient = c;
    }
    if let Some(e) = a.exponent {
        config.exponent = e;
    }
    if let Some(b) = a.budget {
        config.edge_budget = b;
    }
    let trace = match a.mode {
        ProcessModeArg::Edge => edge_deletion_process(&g, &config)?,
        _ => vertex_deletion_process(&g, &config)?,
    };
    for step in &trace.steps {
        json_line(out, step)?;
    }
    Ok(true)
}
