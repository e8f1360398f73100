//! Command-line front end. [`run`] is the whole program; `main` only wires
//! it to the process streams.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 on input or usage
//! errors.

use std::fmt;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::embeddings::{
    cgs_matrix, dual_point_check, omega_matrix, omega_resistance, omega_resistance_reduced,
    to_v_basis, x_matrix, EmbeddingBundle,
};
use crate::error::{Error, Result};
use crate::exact_linalg::{
    fmt_rational, plucker_of_rowspace, RatMatrix, Rational, SubspaceRelation, WedgeVector,
};
use crate::groves_dimers::{
    cgs_plucker, dimer_table, dual_temperley, grove_measurements_capped, lagrangian_plucker,
    lam_plucker, temperley, GroveTable, DEFAULT_MAX_EDGES,
};
use crate::lam_action::{crystal_check, invariance_check};
use crate::network::{effective_resistance, Network, ResponseMatrix};
use crate::noncrossing::{
    enumerate_nc, lagrangian_concordant_sets, lagrangian_extension, NonCrossingPartition,
};
use crate::symplectic_concordance::{
    algorithm_factorization, standard_forms, unique_form_solver, SkewForm,
};

/// Name of the environment variable capping grove enumeration.
pub const MAX_EDGES_VAR: &str = "ENET_MAX_EDGES";

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Witness {
    pub context: String,
    pub expected: String,
    pub actual: String,
}

impl Witness {
    pub fn new(context: impl Into<String>, expected: &impl fmt::Display, actual: &impl fmt::Display) -> Self {
        Witness {
            context: context.into(),
            expected: flatten(&expected.to_string()),
            actual: flatten(&actual.to_string()),
        }
    }
}

fn flatten(s: &str) -> String {
    let parts: Vec<&str> = s.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("; ")
    }
}

/// Outcome of one named check. A failed report always carries a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub status: CheckStatus,
    pub witnesses: Vec<Witness>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            status: CheckStatus::Pass,
            witnesses: Vec::new(),
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            status: CheckStatus::Skipped,
            witnesses: vec![Witness {
                context: reason.into(),
                expected: String::new(),
                actual: String::new(),
            }],
        }
    }

    pub fn fail(&mut self, w: Witness) {
        self.status = CheckStatus::Fail;
        self.witnesses.push(w);
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut ws = self.witnesses.clone();
        ws.sort();
        json!({
            "name": self.name,
            "status": self.status.to_string(),
            "witnesses": ws.iter().map(|w| json!({
                "context": w.context,
                "expected": w.expected,
                "actual": w.actual,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            CheckStatus::Pass => write!(f, "PASS {}", self.name),
            CheckStatus::Skipped => {
                let reason = self.witnesses.first().map_or("", |w| w.context.as_str());
                write!(f, "SKIP {} ({reason})", self.name)
            }
            CheckStatus::Fail => {
                write!(f, "FAIL {}", self.name)?;
                let mut ws = self.witnesses.clone();
                ws.sort();
                for w in ws {
                    write!(f, "\n  {}: expected {} got {}", w.context, w.expected, w.actual)?;
                }
                Ok(())
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Argument grammar
// ---------------------------------------------------------------------------

#[derive(Parser, Debug)]
#[command(name = "circnet", about = "Exact embeddings of circular planar electrical networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Commands on a network file (or a response matrix file).
    #[command(subcommand)]
    Enet(EnetCmd),
    /// Non-crossing partition utilities.
    #[command(subcommand)]
    Ncp(NcpCmd),
    /// Skew forms.
    #[command(subcommand)]
    Sym(SymCmd),
    /// Lam group checks.
    #[command(subcommand)]
    Lam(LamCmd),
}

#[derive(Subcommand, Debug)]
enum EnetCmd {
    /// Print the response matrix.
    Response { file: String },
    /// Print the effective resistance matrix.
    Resistance { file: String },
    /// Print the grove measurements.
    Groves { file: String },
    /// Print Plücker coordinates.
    Plucker {
        file: String,
        #[arg(long, value_enum, default_value_t = PluckerMap::Lam)]
        map: PluckerMap,
        /// Compute from dimer partition functions instead of groves.
        #[arg(long)]
        dimers: bool,
    },
    /// Run the theorem checks.
    Verify {
        file: String,
        /// Comma separated check names, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long)]
        json: bool,
    },
    /// Print one embedding matrix.
    Emit {
        file: String,
        #[arg(long, value_enum)]
        emit: EmitKind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PluckerMap {
    Lam,
    Cgs,
    Lagrangian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EmitKind {
    Omega,
    OmegaV,
    OmegaR,
    Cgs,
    X,
    Dual,
}

#[derive(Subcommand, Debug)]
enum NcpCmd {
    /// List all non-crossing partitions of [n].
    List { n: usize },
    /// Dual partition.
    Dual {
        partition: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Merged partition on [2n].
    Merge {
        partition: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Bracket factorization of the concordance vector.
    Wedge {
        partition: String,
        #[arg(long)]
        n: Option<usize>,
    },
    /// Lagrangian extension and Lagrangian-concordant sets.
    Lext {
        partition: String,
        #[arg(long)]
        n: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
enum SymCmd {
    /// Solve for the skew forms whose convolution kills every w_σ on V.
    UniqueForm { n: usize },
    /// Print the standard forms.
    Forms { n: usize },
}

#[derive(Subcommand, Debug)]
enum LamCmd {
    Crystal {
        n: usize,
        #[arg(long)]
        json: bool,
    },
    Invariance {
        n: usize,
        #[arg(long)]
        json: bool,
    },
}

// ---------------------------------------------------------------------------
// Input loading
// ---------------------------------------------------------------------------

/// A network, or only its response matrix when the file holds a matrix.
enum Source {
    Network(Network),
    Response(ResponseMatrix),
}

impl Source {
    fn load(path: &str) -> Result<Source> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read {path}: {e}")))?;
        let first = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .unwrap_or("");
        if first.starts_with("enet") {
            Ok(Source::Network(Network::parse(&text)?))
        } else {
            let stripped: String = text
                .lines()
                .map(|l| l.split('#').next().unwrap_or(""))
                .collect::<Vec<_>>()
                .join("\n");
            let m = RatMatrix::parse(&stripped)?;
            if !m.is_square() || m.rows() < 2 {
                return Err(Error::Input("a response matrix must be square with n >= 2".into()));
            }
            Ok(Source::Response(ResponseMatrix::new(m)?))
        }
    }

    fn response(&self) -> Result<ResponseMatrix> {
        match self {
            Source::Network(net) => net.response_matrix(),
            Source::Response(m) => Ok(m.clone()),
        }
    }

    fn network(&self) -> Result<&Network> {
        match self {
            Source::Network(net) => Ok(net),
            Source::Response(_) => Err(Error::Unsupported(
                "this command needs a network file, not a response matrix".into(),
            )),
        }
    }
}

fn max_edges() -> Result<usize> {
    match std::env::var(MAX_EDGES_VAR) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Input(format!("{MAX_EDGES_VAR} must be a non-negative integer"))),
        Err(_) => Ok(DEFAULT_MAX_EDGES),
    }
}

fn groves(net: &Network) -> Result<GroveTable> {
    grove_measurements_capped(net, max_edges()?)
}

fn partition(text: &str, n: Option<usize>) -> Result<NonCrossingPartition> {
    NonCrossingPartition::parse(text, n)
}

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

/// Names accepted by `--checks`, in report order.
pub const CHECK_NAMES: [&str; 8] = [
    "point-equality",
    "isotropy",
    "orthogonality",
    "inclusion",
    "resistance-embedding",
    "dual-shift",
    "dimer-vs-grove",
    "x-matrix",
];

fn select_checks(spec: &str) -> Result<Vec<&'static str>> {
    let spec = spec.trim();
    if spec == "all" {
        return Ok(CHECK_NAMES.to_vec());
    }
    let mut wanted = Vec::new();
    for name in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match CHECK_NAMES.iter().find(|c| **c == name) {
            Some(c) => wanted.push(*c),
            None => return Err(Error::Input(format!("unknown check {name:?}"))),
        }
    }
    if wanted.is_empty() {
        return Err(Error::Input("no checks selected".into()));
    }
    Ok(CHECK_NAMES.iter().copied().filter(|c| wanted.contains(c)).collect())
}

fn zero_check(name: &str, m: &RatMatrix) -> CheckReport {
    let mut r = CheckReport::new(name);
    if !m.is_zero() {
        r.fail(Witness::new("product", &"0", m));
    }
    r
}

fn wedge_equality(name: &str, context: &str, expected: &WedgeVector, actual: &WedgeVector) -> CheckReport {
    let mut r = CheckReport::new(name);
    if expected != actual {
        r.fail(Witness::new(context, expected, actual));
    }
    r
}

fn proportional_check(name: &str, context: &str, a: &WedgeVector, b: &WedgeVector) -> CheckReport {
    let mut r = CheckReport::new(name);
    if a.proportionality(b).is_none() {
        r.fail(Witness::new(context, a, b));
    }
    r
}

/// Maps an error inside a check to a skipped report when it only says the
/// check does not apply; other errors propagate.
fn guard(name: &str, res: Result<Vec<CheckReport>>) -> Result<Vec<CheckReport>> {
    match res {
        Ok(r) => Ok(r),
        Err(Error::Unsupported(msg)) => Ok(vec![CheckReport::skipped(name, msg)]),
        Err(e) => Err(e),
    }
}

struct Ctx<'a> {
    source: &'a Source,
    m: ResponseMatrix,
    bundle: EmbeddingBundle,
    groves: Option<GroveTable>,
}

impl Ctx<'_> {
    fn groves(&self) -> Result<&GroveTable> {
        self.groves
            .as_ref()
            .ok_or_else(|| Error::Unsupported("grove measurements need a network file".into()))
    }
}

fn run_check(ctx: &Ctx, name: &'static str) -> Result<Vec<CheckReport>> {
    let b = &ctx.bundle;
    let n = b.n;
    let res = match name {
        "point-equality" => (|| {
            let gt = ctx.groves()?;
            let p = plucker_of_rowspace(&b.omega)?.scale(&gt.l_unc());
            Ok(vec![wedge_equality(name, "Δ(Ω')·L_unc vs Δ•", &lam_plucker(gt), &p)])
        })(),
        "isotropy" => {
            let (lam, tilde, bar) = standard_forms(n);
            let prod = |m: &RatMatrix, f: &SkewForm| m.mul(f.matrix()).mul(&m.transpose());
            Ok(vec![
                zero_check("isotropy:omega-lambda-bar", &prod(&b.omega, &bar)),
                zero_check("isotropy:omega-tilde-lambda", &prod(&b.omega_tilde, &lam)),
                zero_check("isotropy:md-lambda-tilde", &prod(&b.cgs_md, &tilde)),
            ])
        }
        "orthogonality" => Ok(vec![zero_check(name, &b.orthogonality_product())]),
        "inclusion" => (|| {
            let bar_inv = standard_forms(n)
                .2
                .matrix()
                .inverse()
                .ok_or_else(|| Error::Input("Λ̄ is not invertible".into()))?;
            let rel = b.inclusion(&bar_inv)?;
            let mut r = CheckReport::new(name);
            if rel != SubspaceRelation::AInB {
                r.fail(Witness::new("rowspace(Ω D̃) vs colspace(Λ̄^-1 (MD)^T)", &"A_in_B", &rel));
            }
            Ok(vec![r])
        })(),
        "resistance-embedding" => (|| {
            let r = effective_resistance(&ctx.m)?;
            let p = plucker_of_rowspace(&omega_resistance_reduced(&r))?;
            match &ctx.groves {
                Some(gt) => Ok(vec![wedge_equality(
                    name,
                    "Δ(Ω'_R)·L_12..n vs Δ•",
                    &lam_plucker(gt),
                    &p.scale(&gt.l_connected()),
                )]),
                None => {
                    let q = plucker_of_rowspace(&b.omega)?;
                    Ok(vec![proportional_check(name, "Δ(Ω'_R) vs Δ(Ω')", &q, &p)])
                }
            }
        })(),
        "dual-shift" => (|| {
            let net = ctx.source.network()?;
            let mut r = CheckReport::new(name);
            if !dual_point_check(net)? {
                r.fail(Witness::new("Ω(e*) vs Ω(e)·s^-1", &"proportional", &"not proportional"));
            }
            Ok(vec![r])
        })(),
        "dimer-vs-grove" => (|| {
            let net = ctx.source.network()?;
            let gt = ctx.groves()?;
            let lam = dimer_table(&temperley(net)?);
            let cgs = dimer_table(&dual_temperley(net)?);
            Ok(vec![
                wedge_equality("dimer-vs-grove:lam", "dimers on N vs Δ•", &lam_plucker(gt), &lam),
                wedge_equality("dimer-vs-grove:cgs", "dimers on N^d vs Δ∘", &cgs_plucker(gt), &cgs),
            ])
        })(),
        "x-matrix" => (|| {
            let x = x_matrix(&ctx.m)?;
            let mut reports = Vec::new();
            let mut row = CheckReport::new("x-matrix:first-row");
            let expected: Vec<Rational> = (0..2 * n)
                .map(|c| match c % 4 {
                    1 => Rational::from_integer(1.into()),
                    3 => Rational::from_integer((-1).into()),
                    _ => Rational::from_integer(0.into()),
                })
                .collect();
            if x.row(0) != expected {
                let fmt = |v: &[Rational]| v.iter().map(fmt_rational).collect::<Vec<_>>().join(" ");
                row.fail(Witness::new("row 1", &fmt(&expected), &fmt(&x.row(0))));
            }
            reports.push(row);
            match &ctx.groves {
                Some(gt) => reports.push(proportional_check(
                    "x-matrix:minors",
                    "Δ(X) vs Δ∘",
                    &cgs_plucker(gt),
                    &plucker_of_rowspace(&x)?,
                )),
                None => reports.push(CheckReport::skipped(
                    "x-matrix:minors",
                    "grove measurements need a network file",
                )),
            }
            Ok(reports)
        })(),
        other => Err(Error::Input(format!("unknown check {other:?}"))),
    };
    guard(name, res)
}

/// Runs the selected checks on a network or response file.
pub fn verify_source(path: &str, checks: &str) -> Result<Vec<CheckReport>> {
    let selected = select_checks(checks)?;
    let source = Source::load(path)?;
    let m = source.response()?;
    let bundle = EmbeddingBundle::new(&m)?;
    let needs_groves = selected
        .iter()
        .any(|c| matches!(*c, "point-equality" | "resistance-embedding" | "dimer-vs-grove" | "x-matrix"));
    let groves = match (&source, needs_groves) {
        (Source::Network(net), true) => Some(groves(net)?),
        _ => None,
    };
    let ctx = Ctx {
        source: &source,
        m,
        bundle,
        groves,
    };
    let mut out = Vec::new();
    for name in selected {
        out.extend(run_check(&ctx, name)?);
    }
    Ok(out)
}

fn print_reports(out: &mut dyn Write, reports: &[CheckReport], json_out: bool) -> std::io::Result<i32> {
    let failed = reports.iter().filter(|r| r.status == CheckStatus::Fail).count();
    let skipped = reports.iter().filter(|r| r.status == CheckStatus::Skipped).count();
    let passed = reports.len() - failed - skipped;
    if json_out {
        let v = json!({
            "checks": reports.iter().map(CheckReport::to_json).collect::<Vec<_>>(),
            "passed": passed,
            "failed": failed,
            "skipped": skipped,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json values serialize"))?;
    } else {
        for r in reports {
            writeln!(out, "{r}")?;
        }
        writeln!(out, "summary: {passed} passed, {failed} failed, {skipped} skipped")?;
    }
    Ok(if failed > 0 { 1 } else { 0 })
}

// ---------------------------------------------------------------------------
// Formatting helpers
// ---------------------------------------------------------------------------

fn format_a_multiple(c: &Rational) -> String {
    use num::{One, Zero};
    if c.is_zero() {
        "0".into()
    } else if c.is_one() {
        "a".into()
    } else if *c == -Rational::one() {
        "-a".into()
    } else {
        format!("{}a", fmt_rational(c))
    }
}

fn write_unique_form(out: &mut dyn Write, n: usize) -> Result<()> {
    use num::Zero;
    let sol = unique_form_solver(n)?;
    let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(io_err);
    w(out, format!("dimension: {}", sol.dimension()))?;
    w(out, format!("constraints: {}", sol.constraints))?;
    if let Some(g) = sol.basis.first() {
        let m = g.matrix();
        let pivot = (0..m.rows())
            .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
            .map(|(i, j)| m.get(i, j).clone())
            .find(|x| !x.is_zero())
            .unwrap_or_else(|| Rational::from_integer(1.into()));
        let pivot = if pivot.is_zero() { Rational::from_integer(1.into()) } else { pivot };
        w(out, "generator:".into())?;
        for i in 0..m.rows() {
            let row: Vec<String> = (0..m.cols()).map(|j| format_a_multiple(&(m.get(i, j) / &pivot))).collect();
            w(out, row.join(" "))?;
        }
        for extra in sol.basis.iter().skip(1) {
            w(out, "further generator:".into())?;
            write!(out, "{extra}").map_err(io_err)?;
        }
    }
    Ok(())
}

fn io_err(e: std::io::Error) -> Error {
    Error::Input(format!("write failed: {e}"))
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    macro_rules! say {
        ($($arg:tt)*) => { writeln!(out, $($arg)*).map_err(io_err)? };
    }
    match cli.command {
        Command::Enet(cmd) => match cmd {
            EnetCmd::Response { file } => {
                let m = Source::load(&file)?.response()?;
                write!(out, "{}", m.matrix()).map_err(io_err)?;
            }
            EnetCmd::Resistance { file } => {
                let m = Source::load(&file)?.response()?;
                write!(out, "{}", effective_resistance(&m)?.matrix()).map_err(io_err)?;
            }
            EnetCmd::Groves { file } => {
                let src = Source::load(&file)?;
                write!(out, "{}", groves(src.network()?)?).map_err(io_err)?;
            }
            EnetCmd::Plucker { file, map, dimers } => {
                let src = Source::load(&file)?;
                let net = src.network()?;
                let w = if dimers {
                    match map {
                        PluckerMap::Lam => dimer_table(&temperley(net)?),
                        PluckerMap::Cgs => dimer_table(&dual_temperley(net)?),
                        PluckerMap::Lagrangian => {
                            return Err(Error::Unsupported(
                                "Lagrangian coordinates come from grove measurements only".into(),
                            ))
                        }
                    }
                } else {
                    let gt = groves(net)?;
                    match map {
                        PluckerMap::Lam => lam_plucker(&gt),
                        PluckerMap::Cgs => cgs_plucker(&gt),
                        PluckerMap::Lagrangian => lagrangian_plucker(&gt),
                    }
                };
                write!(out, "{w}").map_err(io_err)?;
            }
            EnetCmd::Verify { file, checks, json } => {
                let reports = verify_source(&file, &checks)?;
                return print_reports(out, &reports, json).map_err(io_err);
            }
            EnetCmd::Emit { file, emit } => {
                let src = Source::load(&file)?;
                match emit {
                    EmitKind::Dual => {
                        write!(out, "{}", src.network()?.dual_network()?.serialize()).map_err(io_err)?
                    }
                    _ => {
                        let m = src.response()?;
                        let mat = match emit {
                            EmitKind::Omega => omega_matrix(&m),
                            EmitKind::OmegaV => to_v_basis(&omega_matrix(&m))?,
                            EmitKind::OmegaR => omega_resistance(&effective_resistance(&m)?),
                            EmitKind::Cgs => cgs_matrix(&m)?,
                            EmitKind::X => x_matrix(&m)?,
                            EmitKind::Dual => unreachable!("handled above"),
                        };
                        write!(out, "{mat}").map_err(io_err)?;
                    }
                }
            }
        },
        Command::Ncp(cmd) => match cmd {
            NcpCmd::List { n } => {
                for p in enumerate_nc(n)? {
                    say!("{p}");
                }
            }
            NcpCmd::Dual { partition: p, n } => say!("{}", partition(&p, n)?.dual()),
            NcpCmd::Merge { partition: p, n } => say!("{}", partition(&p, n)?.merge()),
            NcpCmd::Wedge { partition: p, n } => {
                let sigma = partition(&p, n)?;
                let f = algorithm_factorization(&sigma);
                say!("merged: {}", sigma.merge());
                say!("pairs: {}", f.pairs_line());
                say!("brackets: {}", f.brackets_line());
                say!("v-basis: {}", f.v_line());
                say!("expansion:");
                write!(out, "{}", f.expand()).map_err(io_err)?;
            }
            NcpCmd::Lext { partition: p, n } => {
                let sigma = partition(&p, n)?;
                say!("extension: {}", lagrangian_extension(&sigma));
                say!("sets:");
                for s in lagrangian_concordant_sets(&sigma) {
                    say!("{s}");
                }
            }
        },
        Command::Sym(cmd) => match cmd {
            SymCmd::UniqueForm { n } => write_unique_form(out, n)?,
            SymCmd::Forms { n } => {
                if n < 2 {
                    return Err(Error::Input("forms need n >= 2".into()));
                }
                let (lam, tilde, bar) = standard_forms(n);
                say!("Lambda_{}:", 2 * n - 2);
                write!(out, "{lam}").map_err(io_err)?;
                say!("Lambda_tilde_{}:", 2 * n);
                write!(out, "{tilde}").map_err(io_err)?;
                say!("Lambda_bar_{}:", 2 * n);
                write!(out, "{bar}").map_err(io_err)?;
            }
        },
        Command::Lam(cmd) => {
            let (report, json) = match cmd {
                LamCmd::Crystal { n, json } => (crystal_check(n)?, json),
                LamCmd::Invariance { n, json } => (invariance_check(n)?, json),
            };
            return print_reports(out, &[report], json).map_err(io_err);
        }
    }
    Ok(0)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["circnet"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn report_display() {
        let mut r = CheckReport::new("demo");
        assert_eq!(r.to_string(), "PASS demo");
        r.fail(Witness::new("ctx", &"1\n2", &3));
        assert_eq!(r.to_string(), "FAIL demo\n  ctx: expected 1; 2 got 3");
        assert_eq!(r.to_json()["status"], "fail");
        let s = CheckReport::skipped("x", "why");
        assert_eq!(s.to_string(), "SKIP x (why)");
    }

    #[test]
    fn ncp_commands() {
        let (code, out, _) = run_str(&["ncp", "list", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 5);
        let (_, out, _) = run_str(&["ncp", "wedge", "1 4 6|2 3|5", "--n", "6"]);
        assert!(out.contains("pairs: (1 7)(7 11)(2 6)(3 5)(8 10)"), "{out}");
        assert!(out.contains("v-basis: (v1-v3+v5)∧(v2-v4)∧(v3)∧(v7-v9)∧(v8)"), "{out}");
        let (code, _, err) = run_str(&["ncp", "dual", "1 3|2 4"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn sym_commands() {
        let (code, out, _) = run_str(&["sym", "unique-form", "3"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("dimension: 1\n"));
        assert!(out.contains("0 a 0 0\n-a 0 -a 0\n0 a 0 a\n0 0 -a 0\n"), "{out}");
        let (code, _, _) = run_str(&["sym", "forms", "3"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn lam_commands() {
        let (code, out, _) = run_str(&["lam", "crystal", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("PASS crystal n=3"));
        let (code, out, _) = run_str(&["lam", "invariance", "3", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["failed"], 0);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&["nope"]).0, 2);
        assert_eq!(run_str(&["enet", "verify", "/nonexistent/file.enet"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
        assert!(select_checks("isotropy,bogus").is_err());
        assert_eq!(select_checks("x-matrix,isotropy").unwrap(), vec!["isotropy", "x-matrix"]);
    }
}
