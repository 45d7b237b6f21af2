//! The `crinv` command line.
//!
//! Exit codes: 0 on success, 2 for usage or parse errors (including
//! malformed manifold JSON), 3 when the input violates a mathematical
//! precondition. Output is deterministic; JSON payloads carry
//! `"schema_version": 1`.

use std::ffi::OsString;
use std::fmt;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::catalog::{grassmannian_degree, total_qprime, InvariantReport, ManifoldSpec};
use crate::error::Error;
use crate::exact::{ExactScalar, Rational};
use crate::spectral::{Geometry, Mode};
use crate::sphere::{enumerate_modes, Bidegree};
use crate::variation::{
    classify_mode, counterexample_positive, counterexample_vanishing, scan_modes, Counterexample,
    ModeClassification, SignSummary,
};

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: u8 = 0;
pub const EXIT_IO: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// Rendering options shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OutputFormat {
    pub format: Format,
    /// Adds decimal renderings with this many fractional digits (1..=50).
    pub decimal_digits: Option<u32>,
}

#[derive(Debug, Parser)]
#[command(
    name = "crinv",
    version,
    about = "Exact CR invariants of Sasakian η-Einstein manifolds"
)]
pub struct Cli {
    /// Output format.
    #[arg(
        long,
        global = true,
        env = "CRINV_FORMAT",
        value_enum,
        default_value = "table"
    )]
    pub format: Format,
    /// Also print decimal values with this many fractional digits.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=50))]
    pub digits: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Total Q'-curvature, Q'-curvature and volume of a catalog manifold.
    Qprime(QprimeArgs),
    /// Classify the second-variation sign of a single mode (p, q).
    Classify {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        lambda: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        p: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        q: Rational,
    },
    /// Classify every realizable mode on a rational grid.
    Scan {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        lambda: Rational,
        #[arg(long, value_parser = parse_rational)]
        p_max: Rational,
        #[arg(long, value_parser = parse_rational)]
        q_max: Rational,
        /// Grid spacing is 1/denom.
        #[arg(long, default_value_t = 1)]
        denom: u32,
    },
    /// Degree of the Grassmannian G(k, n) in its Plücker embedding.
    Degree {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
    },
    /// Explicit deformations violating the non-positivity of the second variation.
    Counterexample {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        kind: CounterexampleKind,
    },
    /// Joint eigenvalues of bigraded spherical harmonics on S^{2n+1}.
    SphereModes {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        max_degree: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CounterexampleKind {
    Vanishing,
    Positive,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct QprimeArgs {
    /// Round sphere S^{2n+1}.
    #[arg(long, value_name = "N")]
    pub sphere: Option<u32>,
    /// Sasaki-Einstein Y^{p,q}.
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    pub ypq: Option<Vec<u64>>,
    /// Link over the quadric hypersurface of dimension N.
    #[arg(long, value_name = "N")]
    pub fermat: Option<u32>,
    /// Link over the Grassmannian G(K, N).
    #[arg(long, num_args = 2, value_names = ["K", "N"])]
    pub grassmannian: Option<Vec<u32>>,
    /// Link over a Kähler-Einstein projective manifold.
    #[arg(long, num_args = 3, value_names = ["N", "LAMBDA", "DEGREE"], allow_hyphen_values = true)]
    pub projective: Option<Vec<String>>,
    /// Circle bundle over a product of hyperbolic surfaces with eigenvalue P.
    #[arg(long, num_args = 2, value_names = ["N", "P"])]
    pub tube: Option<Vec<String>>,
    /// Manifold as JSON: a file path, `-` for stdin, or an inline object.
    #[arg(long, value_name = "SOURCE")]
    pub spec: Option<String>,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_domain() {
            Failure::Domain(e)
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(std::io::Error::other(e))
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
                return EXIT_OK;
            }
            let _ = write!(err, "{text}");
            return EXIT_USAGE;
        }
    };
    let fmt = OutputFormat {
        format: cli.format,
        decimal_digits: cli.digits,
    };
    match dispatch(&cli.command, fmt, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_IO
        }
    }
}

fn dispatch(cmd: &Command, fmt: OutputFormat, out: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Qprime(args) => cmd_qprime(&spec_from_args(args)?, fmt, out),
        Command::Classify { n, lambda, p, q } => {
            let g = Geometry::new(*n, lambda.clone())?;
            let m = Mode::new(p.clone(), q.clone())?;
            cmd_classify(&g, &m, fmt, out)
        }
        Command::Scan {
            n,
            lambda,
            p_max,
            q_max,
            denom,
        } => {
            let g = Geometry::new(*n, lambda.clone())?;
            cmd_scan(&g, p_max, q_max, *denom, fmt, out)
        }
        Command::Degree { k, n } => cmd_degree(*k, *n, fmt, out),
        Command::Counterexample { n, kind } => cmd_counterexample(*n, *kind, fmt, out),
        Command::SphereModes { n, max_degree } => cmd_sphere_modes(*n, *max_degree, fmt, out),
    }
}

fn spec_from_args(args: &QprimeArgs) -> Result<ManifoldSpec, Failure> {
    let usage = |m: String| Failure::Usage(m);
    if let Some(n) = args.sphere {
        return Ok(ManifoldSpec::Sphere { n });
    }
    if let Some(v) = &args.ypq {
        return Ok(ManifoldSpec::Ypq { p: v[0], q: v[1] });
    }
    if let Some(n) = args.fermat {
        return Ok(ManifoldSpec::FermatQuadricLink { n });
    }
    if let Some(v) = &args.grassmannian {
        return Ok(ManifoldSpec::GrassmannianLink {
            k: v[0],
            n_amb: v[1],
        });
    }
    if let Some(v) = &args.projective {
        let n = v[0]
            .parse()
            .map_err(|_| usage(format!("invalid N {:?}", v[0])))?;
        let lambda = parse_rational(&v[1]).map_err(usage)?;
        let degree = v[2]
            .parse()
            .map_err(|_| usage(format!("invalid degree {:?}", v[2])))?;
        return Ok(ManifoldSpec::ProjectiveLink { n, lambda, degree });
    }
    if let Some(v) = &args.tube {
        let n = v[0]
            .parse()
            .map_err(|_| usage(format!("invalid N {:?}", v[0])))?;
        let p_eig = parse_rational(&v[1]).map_err(usage)?;
        return Ok(ManifoldSpec::SurfaceProductTube { n, p_eig });
    }
    let source = args
        .spec
        .as_deref()
        .expect("clap enforces one manifold option");
    let text = if source == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else if source.trim_start().starts_with('{') {
        source.to_string()
    } else {
        std::fs::read_to_string(source)
            .map_err(|e| usage(format!("cannot read spec {source:?}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| usage(format!("malformed manifold spec: {e}")))
}

impl fmt::Display for ManifoldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldSpec::Sphere { n } => write!(f, "S^{}", 2 * n + 1),
            ManifoldSpec::Ypq { p, q } => write!(f, "Y^{{{p},{q}}}"),
            ManifoldSpec::ProjectiveLink { n, lambda, degree } => {
                write!(
                    f,
                    "projective link (n={n}, lambda={lambda}, degree={degree})"
                )
            }
            ManifoldSpec::FermatQuadricLink { n } => write!(f, "quadric link (n={n})"),
            ManifoldSpec::GrassmannianLink { k, n_amb } => write!(f, "G({k},{n_amb}) link"),
            ManifoldSpec::SurfaceProductTube { n, p_eig } => {
                write!(f, "surface tube (n={n}, p={p_eig})")
            }
        }
    }
}

// ---- payloads ----

/// Decimal renderings of the report's scalars.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDecimals {
    pub digits: u32,
    pub total_qprime: String,
    pub qprime_density: String,
    pub volume: String,
    /// `c·π^k` with `c` in decimal, when the total is a monomial in π.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_qprime_pi: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QprimeOutput {
    pub schema_version: u32,
    pub spec: ManifoldSpec,
    #[serde(flatten)]
    pub report: InvariantReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub decimal: Option<ReportDecimals>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOutput {
    pub schema_version: u32,
    pub geometry: Geometry,
    pub classification: ModeClassification,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanBounds {
    pub p_max: Rational,
    pub q_max: Rational,
    pub denom: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanOutput {
    pub schema_version: u32,
    pub geometry: Geometry,
    pub bounds: ScanBounds,
    pub modes: Vec<ModeClassification>,
    pub summary: SignSummary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeOutput {
    pub schema_version: u32,
    pub k: u32,
    pub n: u32,
    /// Decimal string; degrees outgrow JSON integers quickly.
    pub degree: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleOutput {
    pub schema_version: u32,
    pub kind: CounterexampleKind,
    #[serde(flatten)]
    pub counterexample: Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereModeEntry {
    pub bidegree: Bidegree,
    pub mode: Mode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereModesOutput {
    pub schema_version: u32,
    pub n: u32,
    pub max_degree: u32,
    pub modes: Vec<SphereModeEntry>,
}

// ---- rendering ----

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Two-column `key value` table.
struct Table(Vec<(String, String)>);

impl Table {
    fn new() -> Self {
        Table(Vec::new())
    }

    fn row(&mut self, key: impl Into<String>, value: impl fmt::Display) -> &mut Self {
        self.0.push((key.into(), value.to_string()));
        self
    }

    fn write(&self, out: &mut dyn Write) -> std::io::Result<()> {
        let width = self
            .0
            .iter()
            .map(|(k, _)| k.chars().count())
            .max()
            .unwrap_or(0);
        for (k, v) in &self.0 {
            writeln!(out, "{k:<width$}  {v}")?;
        }
        Ok(())
    }
}

fn mode_label(m: &Mode) -> String {
    format!("({}, {})", m.p(), m.q())
}

fn decimals(report: &InvariantReport, digits: u32) -> ReportDecimals {
    let total_qprime_pi = report.total_qprime.as_monomial().and_then(|(k, c)| {
        (k > 0).then(|| {
            let coef = ExactScalar::term(c.clone(), 0).to_decimal(digits);
            format!("{coef}·π^{k}")
        })
    });
    ReportDecimals {
        digits,
        total_qprime: report.total_qprime.to_decimal(digits),
        qprime_density: report.qprime_density.to_decimal(digits),
        volume: report.volume.to_decimal(digits),
        total_qprime_pi,
    }
}

fn cmd_qprime(spec: &ManifoldSpec, fmt: OutputFormat, out: &mut dyn Write) -> Result<(), Failure> {
    let report = total_qprime(spec)?;
    let decimal = fmt.decimal_digits.map(|d| decimals(&report, d));
    match fmt.format {
        Format::Json => write_json(
            out,
            &QprimeOutput {
                schema_version: SCHEMA_VERSION,
                spec: spec.clone(),
                report,
                decimal,
            },
        ),
        Format::Table => {
            let mut t = Table::new();
            t.row("manifold", spec)
                .row("n", report.geometry.n())
                .row("lambda", report.geometry.lambda())
                .row("total_qprime", &report.total_qprime)
                .row("qprime_density", &report.qprime_density)
                .row("volume", &report.volume);
            if let Some(unit) = &report.volume_unit {
                t.row("volume_unit", unit);
            }
            if let Some(deg) = &report.degree {
                t.row("degree", deg);
            }
            if let Some(c) = &report.tube_mode {
                t.row("tube_mode", mode_label(&c.mode))
                    .row("tube_mode.p11", &c.p11)
                    .row("tube_mode.sv_sign", c.sv_sign.as_str());
            }
            if let Some(d) = &decimal {
                t.row("total_qprime.decimal", &d.total_qprime);
                if let Some(pi) = &d.total_qprime_pi {
                    t.row("total_qprime.pi_coefficient", pi);
                }
                t.row("qprime_density.decimal", &d.qprime_density)
                    .row("volume.decimal", &d.volume);
            }
            t.write(out)?;
            Ok(())
        }
    }
}

fn classification_rows(t: &mut Table, c: &ModeClassification, fmt: OutputFormat) {
    t.row("mode", mode_label(&c.mode))
        .row("p11", &c.p11)
        .row("edge_product", &c.edge_product)
        .row("middle_product", &c.middle_product)
        .row("in_ker_d", c.in_ker_d)
        .row("in_ker_dbar", c.in_ker_dbar)
        .row("sv_sign", c.sv_sign.as_str());
    if let Some(d) = fmt.decimal_digits {
        t.row(
            "p11.decimal",
            ExactScalar::from_rational(c.p11.clone()).to_decimal(d),
        );
    }
}

fn cmd_classify(
    g: &Geometry,
    m: &Mode,
    fmt: OutputFormat,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let classification = classify_mode(g, m);
    match fmt.format {
        Format::Json => write_json(
            out,
            &ClassifyOutput {
                schema_version: SCHEMA_VERSION,
                geometry: g.clone(),
                classification,
            },
        ),
        Format::Table => {
            let mut t = Table::new();
            t.row("n", g.n()).row("lambda", g.lambda());
            classification_rows(&mut t, &classification, fmt);
            t.write(out)?;
            Ok(())
        }
    }
}

fn cmd_scan(
    g: &Geometry,
    p_max: &Rational,
    q_max: &Rational,
    denom: u32,
    fmt: OutputFormat,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let modes = scan_modes(g, p_max, q_max, denom)?;
    let summary = SignSummary::of(&modes);
    match fmt.format {
        Format::Json => write_json(
            out,
            &ScanOutput {
                schema_version: SCHEMA_VERSION,
                geometry: g.clone(),
                bounds: ScanBounds {
                    p_max: p_max.clone(),
                    q_max: q_max.clone(),
                    denom,
                },
                modes,
                summary,
            },
        ),
        Format::Table => {
            writeln!(out, "# n = {}, lambda = {}", g.n(), g.lambda())?;
            writeln!(out, "p\tq\tp11\tsv_sign\tin_ker_d\tin_ker_dbar")?;
            for c in &modes {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    c.mode.p(),
                    c.mode.q(),
                    c.p11,
                    c.sv_sign.as_str(),
                    c.in_ker_d,
                    c.in_ker_dbar
                )?;
            }
            writeln!(
                out,
                "summary: negative: {}, zero: {}, positive: {}",
                summary.negative, summary.zero, summary.positive
            )?;
            Ok(())
        }
    }
}

fn cmd_degree(k: u32, n: u32, fmt: OutputFormat, out: &mut dyn Write) -> Result<(), Failure> {
    let degree: BigInt = grassmannian_degree(k, n)?;
    match fmt.format {
        Format::Json => write_json(
            out,
            &DegreeOutput {
                schema_version: SCHEMA_VERSION,
                k,
                n,
                degree: degree.to_string(),
            },
        ),
        Format::Table => {
            writeln!(out, "{degree}")?;
            Ok(())
        }
    }
}

fn cmd_counterexample(
    n: u32,
    kind: CounterexampleKind,
    fmt: OutputFormat,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let cx = match kind {
        CounterexampleKind::Vanishing => counterexample_vanishing(n)?,
        CounterexampleKind::Positive => counterexample_positive(n)?,
    };
    match fmt.format {
        Format::Json => write_json(
            out,
            &CounterexampleOutput {
                schema_version: SCHEMA_VERSION,
                kind,
                counterexample: cx,
            },
        ),
        Format::Table => {
            let mut t = Table::new();
            t.row(
                "kind",
                if kind == CounterexampleKind::Vanishing {
                    "vanishing"
                } else {
                    "positive"
                },
            )
            .row("n", cx.geometry.n())
            .row("lambda", cx.geometry.lambda());
            classification_rows(&mut t, &cx.classification, fmt);
            t.write(out)?;
            Ok(())
        }
    }
}

fn cmd_sphere_modes(
    n: u32,
    max_degree: u32,
    fmt: OutputFormat,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Domain(Error::InvalidDimension {
            n,
            reason: "CR dimension must be at least 1",
        }));
    }
    let modes: Vec<SphereModeEntry> = enumerate_modes(n, max_degree)
        .into_iter()
        .map(|(bidegree, mode)| SphereModeEntry { bidegree, mode })
        .collect();
    match fmt.format {
        Format::Json => write_json(
            out,
            &SphereModesOutput {
                schema_version: SCHEMA_VERSION,
                n,
                max_degree,
                modes,
            },
        ),
        Format::Table => {
            writeln!(out, "a\tb\tp\tq")?;
            for e in &modes {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}",
                    e.bidegree.a,
                    e.bidegree.b,
                    e.mode.p(),
                    e.mode.q()
                )?;
            }
            Ok(())
        }
    }
}
