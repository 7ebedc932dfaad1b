//! `heatflow` — command-line front end for the heat-flow monotonicity
//! toolkit.
//!
//! Subcommands map one-to-one onto the library entry points: `sweep`
//! evaluates Q_{p,q}(t) on a time grid and encodes the monotonicity verdict
//! in its exit code, `certificate` produces the rigorous negativity
//! certificate for c₁ + c₋₁ together with a quadrature cross-check,
//! `lemmas` brute-forces the lattice emptiness lemmas, `blcheck` verifies
//! the exact matrix hypotheses behind the even-q argument, and `coeffs`
//! tabulates Fourier coefficients of |μ̂|^q.
//!
//! Every command is deterministic: the same configuration produces
//! byte-identical output. CSV is the plotting interface; nothing here
//! draws pictures.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use heatflow::lattice::{
    c1_certificate, generate_params, verify_bezout_lemma, verify_parity_lemma,
    verify_sign_structure, Certificate, CounterexampleParams, Family, LemmaReport, SignStructure,
};
use heatflow::spectral::{
    fourier_coefficient, sweep, CoeffTable, GridScale, QuadratureControl, SweepGrid, Verdict,
};
use heatflow::{DiscreteMeasure, ExponentPair};

/// Environment variable consulted for the default quadrature tolerance.
const TOL_ENV: &str = "HEATFLOW_TOL";

const EXIT_CODES_HELP: &str = "\
Exit codes:
    0    success (sweep: nondecreasing; certificate: negativity certified)
    1    lemmas/blcheck: at least one check failed
    10   sweep: strictly decreasing initially
    11   sweep: mixed (neither monotone pattern)
    12   certificate: not conclusive, or cross-check disagrees
    64   usage error (bad flags, malformed measure, invalid exponents)
    65   numeric failure; diagnostic JSON on standard error
    74   output file could not be written";

#[derive(Parser)]
#[command(
    name = "heatflow",
    version,
    about = "Monotonicity sweeps, sign certificates, and exact hypothesis checks \
             for heat-flow functionals of discrete measures",
    after_help = EXIT_CODES_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Q_{p,q}(t) on a time grid and classify its monotonicity.
    ///
    /// The verdict is encoded in the exit code (0 nondecreasing, 10
    /// strictly decreasing initially, 11 mixed) so shell scripts can
    /// branch on it directly.
    #[command(after_help = EXIT_CODES_HELP, allow_negative_numbers = true)]
    Sweep(SweepCmd),

    /// Certify the sign of the first Fourier coefficient pair c₁ + c₋₁.
    ///
    /// Generates the requested family, runs the truncated-sum certificate
    /// with its rigorous tail bound, verifies the sign structure of the
    /// contributing lattice pairs, and cross-checks the certified value
    /// against direct numeric quadrature. Exit 0 only when the certificate
    /// is conclusively negative and the cross-check agrees; exit 12
    /// otherwise.
    #[command(after_help = EXIT_CODES_HELP)]
    Certificate(CertificateCmd),

    /// Verify the lattice emptiness lemmas by exhaustive enumeration.
    ///
    /// Scans all (k, k') up to --kmax and reports every pair where a lemma
    /// claims the collision set is empty but enumeration finds solutions.
    /// Exit 0 when no violations exist.
    #[command(after_help = EXIT_CODES_HELP)]
    Lemmas(LemmasCmd),

    /// Check the matrix hypotheses of the even-q argument in exact
    /// rational arithmetic.
    ///
    /// Exit 0 when every residual is exactly zero.
    #[command(after_help = EXIT_CODES_HELP)]
    Blcheck(BlcheckCmd),

    /// Tabulate Fourier coefficients c_n of |μ̂|^q with error estimates.
    #[command(after_help = EXIT_CODES_HELP)]
    Coeffs(CoeffsCmd),
}

/// A decimal number that also accepts the exact form "a/b".
///
/// The fraction is kept so that even-integer detection for q stays exact
/// instead of relying on floating-point rounding.
#[derive(Clone, Copy, Debug)]
struct Real {
    value: f64,
    fraction: Option<(i64, i64)>,
}

fn parse_real(s: &str) -> Result<Real, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: i64 = num
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: i64 = den
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in {s:?}"))?;
        if d <= 0 {
            return Err(format!("denominator must be positive in {s:?}"));
        }
        return Ok(Real {
            value: n as f64 / d as f64,
            fraction: Some((n, d)),
        });
    }
    let value: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if !value.is_finite() {
        return Err(format!("{s:?} is not finite"));
    }
    // Plain integers are exact fractions too; remembering that keeps
    // --q 4 as rigorously even as --q 4/1.
    let fraction = s.parse::<i64>().ok().map(|n| (n, 1));
    Ok(Real { value, fraction })
}

/// Where the measure comes from: inline JSON, a file, or a generator spec.
#[derive(Args)]
struct MeasureArgs {
    /// Measure source: inline JSON '{"dim":1,"atoms":[{"x":[0],"w":1}]}',
    /// a path to such a file, or a generator spec "family:A,q=3,r=0.4"
    #[arg(long, value_name = "json|path|spec")]
    measure: Option<String>,

    /// Generate the three-atom counterexample measure for this family,
    /// using --q as the family exponent (see also --r)
    #[arg(long, value_name = "A|B", conflicts_with = "measure")]
    family: Option<String>,

    /// Satellite weight for the generated family, in (0, 1/2)
    /// [default: 0.4 for family A, 0.25 for family B]
    #[arg(long, value_name = "real")]
    r: Option<f64>,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format [default: csv for sweep/coeffs, json otherwise]
    #[arg(long, value_enum, value_name = "csv|json")]
    format: Option<Format>,

    /// Write the report to this file instead of standard output
    #[arg(long, value_name = "path")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scale {
    Linear,
    Log,
}

impl From<Scale> for GridScale {
    fn from(s: Scale) -> Self {
        match s {
            Scale::Linear => GridScale::Linear,
            Scale::Log => GridScale::Log,
        }
    }
}

#[derive(Args)]
struct SweepCmd {
    #[command(flatten)]
    measure: MeasureArgs,

    /// Integrability exponent p in [1, 2]; accepts "a/b"
    #[arg(long, value_parser = parse_real, default_value = "1")]
    p: Real,

    /// Norm exponent q in [2, p']; accepts "a/b"
    #[arg(long, value_parser = parse_real)]
    q: Real,

    /// Smallest time on the grid (> 0)
    #[arg(long, default_value_t = 1e-3)]
    tmin: f64,

    /// Largest time on the grid
    #[arg(long, default_value_t = 10.0)]
    tmax: f64,

    /// Number of grid points (>= 2)
    #[arg(long, default_value_t = 50)]
    tcount: usize,

    /// Grid spacing
    #[arg(long, value_enum, default_value = "log")]
    tscale: Scale,

    /// Relative quadrature tolerance [default: $HEATFLOW_TOL or 1e-10]
    #[arg(long, value_name = "real")]
    tol: Option<f64>,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CertificateCmd {
    /// Which counterexample family to generate
    #[arg(long, value_name = "A|B")]
    family: String,

    /// Family exponent q (must not be an even integer); accepts "a/b"
    #[arg(long, value_parser = parse_real)]
    q: Real,

    /// Satellite weight in (0, 1/2)
    /// [default: 0.4 for family A, 0.25 for family B]
    #[arg(long, value_name = "real")]
    r: Option<f64>,

    /// Truncation degree of the certified box sum
    #[arg(long, default_value_t = 60)]
    kmax: i64,

    /// Degree cap for the sign-structure scan
    #[arg(long, default_value_t = 30)]
    cap: i64,

    /// Relative quadrature tolerance for the cross-check
    /// [default: $HEATFLOW_TOL or 1e-10]
    #[arg(long, value_name = "real")]
    tol: Option<f64>,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct LemmasCmd {
    /// First satellite location
    #[arg(long)]
    m: i64,

    /// Second satellite location (> m)
    #[arg(long)]
    n: i64,

    /// Scan all pairs k, k' up to this degree
    #[arg(long, default_value_t = 40)]
    kmax: i64,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BlcheckCmd {
    /// Half-exponent: checks the system for q = 2k
    #[arg(long)]
    k: usize,

    /// Ambient dimension of the underlying measure space
    #[arg(long)]
    d: usize,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CoeffsCmd {
    #[command(flatten)]
    measure: MeasureArgs,

    /// Norm exponent q >= 2; accepts "a/b"
    #[arg(long, value_parser = parse_real)]
    q: Real,

    /// Tabulate c_0 through c_nmax
    #[arg(long, default_value_t = 10)]
    nmax: i64,

    /// Relative quadrature tolerance [default: $HEATFLOW_TOL or 1e-10]
    #[arg(long, value_name = "real")]
    tol: Option<f64>,

    #[command(flatten)]
    output: OutputArgs,
}

/// Failure channel, mapped to an exit code in `main`.
enum Failure {
    /// The caller's input was wrong; human-readable message on stderr.
    Usage(String),
    /// A computation exhausted its budget; JSON diagnostic on stderr.
    Numeric(heatflow::Error),
    /// The report could not be written.
    Io(String),
}

impl From<heatflow::Error> for Failure {
    fn from(e: heatflow::Error) -> Self {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Numeric(e)
        }
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version to stdout and real errors to stderr.
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Sweep(cmd) => cmd_sweep(cmd),
        Command::Certificate(cmd) => cmd_certificate(cmd),
        Command::Lemmas(cmd) => cmd_lemmas(cmd),
        Command::Blcheck(cmd) => cmd_blcheck(cmd),
        Command::Coeffs(cmd) => cmd_coeffs(cmd),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            64
        }
        Err(Failure::Numeric(e)) => {
            let diag = serde_json::json!({
                "error": e.kind(),
                "detail": e.to_string(),
            });
            eprintln!("{diag}");
            65
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            74
        }
    }
}

/// Resolve --tol, falling back to $HEATFLOW_TOL, then the library default.
fn quadrature_control(tol: Option<f64>) -> Result<QuadratureControl, Failure> {
    let ctrl = match tol {
        Some(t) => QuadratureControl::with_rel_tol(t),
        None => match std::env::var(TOL_ENV) {
            Ok(raw) => {
                let t: f64 = raw.trim().parse().map_err(|_| {
                    Failure::Usage(format!("{TOL_ENV}={raw:?} is not a number"))
                })?;
                QuadratureControl::with_rel_tol(t)
            }
            Err(_) => QuadratureControl::default(),
        },
    };
    ctrl.validate()?;
    Ok(ctrl)
}

fn parse_family(s: &str) -> Result<Family, Failure> {
    Family::from_str(s).map_err(|e| Failure::Usage(e.to_string()))
}

/// Build the measure from whichever source the caller specified.
///
/// `q` is the fallback family exponent when `--family` is used without a
/// full generator spec.
fn resolve_measure(args: &MeasureArgs, q: f64) -> Result<DiscreteMeasure, Failure> {
    if let Some(src) = &args.measure {
        let src = src.trim();
        if src.starts_with('{') {
            return Ok(DiscreteMeasure::from_json(src)?);
        }
        if let Some(spec) = src.strip_prefix("family:") {
            return generator_measure(spec, args.r);
        }
        let text = fs::read_to_string(src)
            .map_err(|e| Failure::Usage(format!("cannot read measure file {src:?}: {e}")))?;
        return Ok(DiscreteMeasure::from_json(&text)?);
    }
    if let Some(family) = &args.family {
        let family = parse_family(family)?;
        let params = generate_params(q, family, args.r)?;
        return Ok(params.measure());
    }
    Err(Failure::Usage(
        "no measure given: pass --measure <json|path|spec> or --family <A|B>".into(),
    ))
}

/// Parse the generator spec tail "A,q=3,r=0.4" (the "family:" prefix is
/// already stripped). The embedded q is the family exponent and may differ
/// from the exponent the command evaluates at.
fn generator_measure(spec: &str, r_flag: Option<f64>) -> Result<DiscreteMeasure, Failure> {
    let mut parts = spec.split(',').map(str::trim);
    let family = parse_family(parts.next().unwrap_or(""))?;
    let mut q: Option<f64> = None;
    let mut r: Option<f64> = r_flag;
    for part in parts {
        if let Some(v) = part.strip_prefix("q=") {
            let real =
                parse_real(v).map_err(|e| Failure::Usage(format!("bad q in generator spec: {e}")))?;
            q = Some(real.value);
        } else if let Some(v) = part.strip_prefix("r=") {
            let parsed: f64 = v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("bad r in generator spec: {v:?}")))?;
            r = Some(parsed);
        } else {
            return Err(Failure::Usage(format!(
                "unrecognized generator field {part:?}; expected \"family:A|B,q=<real>[,r=<real>]\""
            )));
        }
    }
    let q = q.ok_or_else(|| {
        Failure::Usage("generator spec needs an explicit q, e.g. \"family:A,q=3\"".into())
    })?;
    let params = generate_params(q, family, r)?;
    Ok(params.measure())
}

fn exponent_pair(p: Real, q: Real) -> Result<ExponentPair, Failure> {
    let pair = match (p.fraction, q.fraction) {
        (Some(pf), Some(qf)) => ExponentPair::from_fractions(pf, qf)?,
        _ => ExponentPair::new(p.value, q.value)?,
    };
    Ok(pair)
}

/// Send the finished report to --out or stdout.
fn write_output(out: &Option<PathBuf>, body: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, body)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .map_err(|e| Failure::Io(format!("cannot write to stdout: {e}"))),
    }
}

fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut body = serde_json::to_string_pretty(value).expect("report serialization is infallible");
    body.push('\n');
    body
}

/// Formats that make sense for tabular commands (sweep, coeffs).
fn tabular_format(args: &OutputArgs) -> Format {
    args.format.unwrap_or(Format::Csv)
}

/// Report-only commands emit JSON; CSV has no sensible shape for them.
fn report_format(args: &OutputArgs, command: &str) -> Result<(), Failure> {
    match args.format {
        None | Some(Format::Json) => Ok(()),
        Some(Format::Csv) => Err(Failure::Usage(format!(
            "{command} reports have no CSV form; use --format json"
        ))),
    }
}

fn cmd_sweep(cmd: SweepCmd) -> Result<i32, Failure> {
    let ctrl = quadrature_control(cmd.tol)?;
    let pq = exponent_pair(cmd.p, cmd.q)?;
    let mu = resolve_measure(&cmd.measure, cmd.q.value)?;
    let grid = SweepGrid::new(cmd.tmin, cmd.tmax, cmd.tcount, cmd.tscale.into())?;
    let report = sweep(&mu, &pq, &grid, &ctrl)?;

    let body = match tabular_format(&cmd.output) {
        Format::Json => to_pretty_json(&report),
        Format::Csv => {
            let mut csv = String::from("t,Q,dQq_dt,route\n");
            for pt in &report.points {
                let _ = write!(csv, "{},{},", pt.t, pt.q_value);
                if let Some(d) = pt.dqq_dt {
                    let _ = write!(csv, "{d}");
                }
                let _ = writeln!(csv, ",{}", pt.route.as_str());
            }
            csv
        }
    };
    write_output(&cmd.output.out, &body)?;

    Ok(match report.verdict {
        Verdict::Nondecreasing => 0,
        Verdict::StrictlyDecreasingInitially => 10,
        Verdict::Mixed => 11,
    })
}

/// Everything the certificate command learned, in one JSON document.
#[derive(Serialize)]
struct CertificateReport {
    params: CounterexampleParams,
    certificate: Certificate,
    sign_structure: SignStructure,
    cross_check: CrossCheck,
}

/// Agreement between the certified truncated sum and plain quadrature.
///
/// The certificate value approximates c₁ + c₋₁ = 2c₁, so it is compared
/// against twice the numerically integrated c₁, with an allowance of the
/// certificate's tail bound plus the quadrature error estimate.
#[derive(Serialize)]
struct CrossCheck {
    c1_quadrature: f64,
    quadrature_err: f64,
    difference: f64,
    allowance: f64,
    agrees: bool,
}

fn cmd_certificate(cmd: CertificateCmd) -> Result<i32, Failure> {
    report_format(&cmd.output, "certificate")?;
    let ctrl = quadrature_control(cmd.tol)?;
    let family = parse_family(&cmd.family)?;
    let params = generate_params(cmd.q.value, family, cmd.r)?;
    let certificate = c1_certificate(&params, cmd.kmax)?;
    let sign_structure = verify_sign_structure(&params, cmd.cap)?;

    let mu = params.measure();
    let (c1, err) = fourier_coefficient(&mu, params.q, 1, &ctrl)?;
    let difference = (certificate.value - 2.0 * c1).abs();
    let allowance =
        certificate.tail_bound + 2.0 * err + 1e-8 * certificate.value.abs().max(1.0);
    let cross_check = CrossCheck {
        c1_quadrature: c1,
        quadrature_err: err,
        difference,
        allowance,
        agrees: difference <= allowance,
    };

    let conclusive =
        certificate.is_negative_certified() && sign_structure.pass() && cross_check.agrees;
    let report = CertificateReport {
        params,
        certificate,
        sign_structure,
        cross_check,
    };
    write_output(&cmd.output.out, &to_pretty_json(&report))?;
    Ok(if conclusive { 0 } else { 12 })
}

#[derive(Serialize)]
struct LemmasReport {
    parity: LemmaReport,
    bezout_threshold: LemmaReport,
}

fn cmd_lemmas(cmd: LemmasCmd) -> Result<i32, Failure> {
    report_format(&cmd.output, "lemmas")?;
    let parity = verify_parity_lemma(cmd.m, cmd.n, cmd.kmax)?;
    let bezout_threshold = verify_bezout_lemma(cmd.m, cmd.n, cmd.kmax)?;
    let pass = parity.pass() && bezout_threshold.pass();
    let report = LemmasReport {
        parity,
        bezout_threshold,
    };
    write_output(&cmd.output.out, &to_pretty_json(&report))?;
    Ok(if pass { 0 } else { 1 })
}

fn cmd_blcheck(cmd: BlcheckCmd) -> Result<i32, Failure> {
    report_format(&cmd.output, "blcheck")?;
    let report = heatflow::blcheck::verify_hypotheses(cmd.k, cmd.d)?;
    let pass = report.pass_all();
    write_output(&cmd.output.out, &to_pretty_json(&report))?;
    Ok(if pass { 0 } else { 1 })
}

#[derive(Serialize)]
struct CoeffRow {
    n: i64,
    c_n: f64,
    err: f64,
}

#[derive(Serialize)]
struct CoeffReport {
    q: f64,
    n_max: i64,
    rows: Vec<CoeffRow>,
}

fn cmd_coeffs(cmd: CoeffsCmd) -> Result<i32, Failure> {
    let ctrl = quadrature_control(cmd.tol)?;
    let mu = resolve_measure(&cmd.measure, cmd.q.value)?;
    let table = CoeffTable::build(&mu, cmd.q.value, cmd.nmax, &ctrl)?;
    let rows: Vec<CoeffRow> = (0..=cmd.nmax)
        .map(|n| CoeffRow {
            n,
            c_n: table.coeff(n),
            err: table.err(n),
        })
        .collect();

    let body = match tabular_format(&cmd.output) {
        Format::Json => to_pretty_json(&CoeffReport {
            q: cmd.q.value,
            n_max: cmd.nmax,
            rows,
        }),
        Format::Csv => {
            let mut csv = String::from("n,c_n,err\n");
            for row in &rows {
                let _ = writeln!(csv, "{},{},{}", row.n, row.c_n, row.err);
            }
            csv
        }
    };
    write_output(&cmd.output.out, &body)?;
    Ok(0)
}
