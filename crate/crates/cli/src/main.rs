use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use satcert::certifier::{certify_cable, certify_satellite, replay, Certificate, Verdict};
use satcert::projective_sets::{covers_circle, uncovered_witness, SlopeSet};
use satcert::schema::{parse_companion_str, parse_pattern_str};
use satcert::Slope;

mod oracle;
mod sweep;

const EXIT_NOT_CERTIFIED: u8 = 1;
const EXIT_REJECTED: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "satcert",
    version,
    about = "Certify satellite L-space knots with exact slope arithmetic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Certify that a satellite P(K) is an L-space knot.
    Certify(CertifyArgs),
    /// Compare the certifier with the exact cable criterion for one cable.
    Cable(CableArgs),
    /// Sweep cables (p, q) of the given companions.
    Sweep(sweep::SweepArgs),
    /// Union, intersection, interior, complement and cover tests on slope sets.
    SetAlgebra(SetArgs),
    /// Cross-check cover tests against Farey brute force.
    Oracle(oracle::OracleArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["pattern", "replay"])))]
struct CertifyArgs {
    /// Pattern JSON, or @file.
    #[arg(long, requires = "companion")]
    pattern: Option<String>,
    /// Companion JSON or shortcut (trefoil, T(p,q)), or @file.
    #[arg(long)]
    companion: Option<String>,
    /// Re-validate a certificate file instead of certifying.
    #[arg(long, conflicts_with_all = ["pattern", "companion"])]
    replay: Option<PathBuf>,
    /// Write the certificate JSON here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct CableArgs {
    #[arg(long, default_value = "trefoil")]
    companion: String,
    #[arg(long, allow_hyphen_values = true)]
    p: i64,
    #[arg(long, allow_hyphen_values = true)]
    q: i64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
#[command(group(ArgGroup::new("op").required(true)
    .args(["covers", "union", "intersection", "interior", "complement", "contains"])))]
struct SetArgs {
    /// Whether two sets together cover the whole circle.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    covers: Option<Vec<String>>,
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    union: Option<Vec<String>>,
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    intersection: Option<Vec<String>>,
    #[arg(long, value_name = "A", allow_hyphen_values = true)]
    interior: Option<String>,
    #[arg(long, value_name = "A", allow_hyphen_values = true)]
    complement: Option<String>,
    /// Membership of a slope in a set.
    #[arg(long, num_args = 2, value_names = ["A", "SLOPE"], allow_hyphen_values = true)]
    contains: Option<Vec<String>>,
}

/// A failure reported on stderr with an exit status.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Certify(a) => run_certify(a),
        Command::Cable(a) => run_cable(a),
        Command::Sweep(a) => sweep::run(a),
        Command::SetAlgebra(a) => run_set_algebra(a),
        Command::Oracle(a) => oracle::run(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// `@path` reads a file; anything else is taken literally.
fn read_arg(value: &str) -> Result<String, Failure> {
    match value.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}"))),
        None => Ok(value.to_string()),
    }
}

pub fn write_out(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn verdict_code(v: &Verdict) -> u8 {
    match v {
        Verdict::Certified => 0,
        Verdict::NotCertified(_) => EXIT_NOT_CERTIFIED,
        Verdict::Rejected(_) => EXIT_REJECTED,
    }
}

fn verdict_line(cert: &Certificate) -> String {
    let statement = |id: &str| {
        let id = id.strip_prefix("unknown:").unwrap_or(id);
        cert.check(id)
            .map_or_else(String::new, |c| format!(" ({})", c.statement))
    };
    match &cert.verdict {
        Verdict::Certified => format!(
            "CERTIFIED: r={} surgery is an L-space",
            cert.surgery_coefficient()
                .expect("certified certificates carry parameters")
        ),
        Verdict::NotCertified(id) => format!("NOT CERTIFIED: {id}{}", statement(id)),
        Verdict::Rejected(id) => format!("REJECTED: {id}{}", statement(id)),
    }
}

fn report(cert: &Certificate, format: Format, out: Option<&Path>) -> Outcome {
    if let Some(path) = out {
        write_out(path, &cert.to_json())?;
    }
    match format {
        Format::Json => println!("{}", cert.to_json()),
        _ => println!("{}", verdict_line(cert)),
    }
    if let Some(reason) = cert.verdict.reason() {
        eprintln!("condition {reason} not met");
    }
    Ok(verdict_code(&cert.verdict))
}

fn run_certify(a: CertifyArgs) -> Outcome {
    if let Some(path) = &a.replay {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
        let cert = Certificate::from_json(&text).map_err(|e| Failure::input(e.to_string()))?;
        let verdict = replay(&cert).map_err(|e| Failure::input(format!("replay failed: {e}")))?;
        println!("REPLAY OK: {verdict}");
        return Ok(verdict_code(&verdict));
    }
    let pattern = parse_pattern_str(&read_arg(a.pattern.as_deref().expect("required by clap"))?)
        .map_err(|e| Failure::input(format!("pattern: {e}")))?;
    let companion = parse_companion_str(&read_arg(
        a.companion.as_deref().expect("required by clap"),
    )?)
    .map_err(|e| Failure::input(format!("companion: {e}")))?;
    let cert = certify_satellite(&pattern, &companion);
    report(&cert, a.format, a.out.as_deref())
}

fn run_cable(a: CableArgs) -> Outcome {
    let companion = parse_companion_str(&read_arg(&a.companion)?)
        .map_err(|e| Failure::input(format!("companion: {e}")))?;
    let cmp = certify_cable(&companion, a.p, a.q).map_err(|e| Failure::input(e.to_string()))?;
    if a.format != Format::Json {
        println!(
            "cable ({}, {}) of {}: exact criterion {}, gap {}",
            a.p,
            a.q,
            companion.name(),
            if cmp.exact {
                "L-space knot"
            } else {
                "not an L-space knot"
            },
            cmp.is_gap()
        );
    }
    report(&cmp.certificate, a.format, a.out.as_deref())
}

fn parse_set(text: &str) -> Result<SlopeSet, Failure> {
    text.parse()
        .map_err(|e| Failure::input(format!("{text:?}: {e}")))
}

fn run_set_algebra(a: SetArgs) -> Outcome {
    if let Some(v) = a.covers {
        let (s1, s2) = (parse_set(&v[0])?, parse_set(&v[1])?);
        if covers_circle(&s1, &s2) {
            println!("FULL");
            return Ok(0);
        }
        let w = uncovered_witness(&s1, &s2).expect("a non-cover has a witness");
        println!("NOT FULL: {w} is uncovered");
        return Ok(1);
    }
    let result = if let Some(v) = a.union {
        parse_set(&v[0])?.union(&parse_set(&v[1])?)
    } else if let Some(v) = a.intersection {
        parse_set(&v[0])?.intersection(&parse_set(&v[1])?)
    } else if let Some(s) = a.interior {
        parse_set(&s)?.interior()
    } else if let Some(s) = a.complement {
        parse_set(&s)?.complement()
    } else if let Some(v) = a.contains {
        let x: Slope = v[1]
            .parse()
            .map_err(|e| Failure::input(format!("{:?}: {e}", v[1])))?;
        let inside = parse_set(&v[0])?.contains(&x);
        println!("{inside}");
        return Ok(if inside { 0 } else { 1 });
    } else {
        unreachable!("clap requires one operation")
    };
    println!("{result}");
    Ok(0)
}
