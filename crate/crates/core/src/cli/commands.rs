//! Subcommands. Each returns a [`ReportDocument`] and an exit code.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use super::corpus::{run_corpus, CorpusConfig};
use super::format::{format_rational_function, format_rational_function_factored};
use super::parse::{parse_map, parse_point, parse_rational_arg};
use super::report::{exit, ReportDocument};
use crate::analysis::criteria::MapAnalysis;
use crate::arith::modp::{ModPForm, Prime, PrimeField};
use crate::arith::form::IntBinaryForm;
use crate::dynamics::bounds::{
    canci_log_bound, canci_log_correction, corollary_log_c, ms_bound, BoundSpec,
};
use crate::dynamics::lattes::{curve_discriminant, lattes_map};
use crate::dynamics::orbit::orbit;
use crate::dynamics::periodic::{periodic_points, preperiodic_points};
use crate::error::{Error, Result};
use crate::proj::map::RationalMap;
use crate::proj::reduce::ReducedMap;
use crate::with_field;

#[derive(Debug, Parser)]
#[command(
    name = "goodred",
    version,
    about = "Good reduction of rational maps of the projective line over Q"
)]
pub struct Cli {
    /// Print a short text summary instead of the JSON report.
    #[arg(long, global = true)]
    pub text: bool,
    /// Omit the generation timestamp from the report.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    /// Map in `x`, e.g. "(x^2+x)/(x+2)", or "num=[...];den=[...]".
    #[arg(allow_hyphen_values = true)]
    pub map: String,
    /// Compose the map with itself this many times first.
    #[arg(long, default_value_t = 1)]
    pub iterate: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// All verdicts at one prime.
    Analyze {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        prime: String,
    },
    /// Primes where simple good reduction, critically good reduction or
    /// separability fails.
    BadPrimes {
        #[command(flatten)]
        map: MapArgs,
    },
    /// Check the consistency of the verdicts over a seeded random corpus.
    VerifyTheorem {
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        deg_min: usize,
        #[arg(long, default_value_t = 5)]
        deg_max: usize,
        #[arg(long, default_value_t = 20)]
        coeff_bound: i64,
        #[arg(long, default_value_t = 50)]
        prime_bound: u32,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Count inseparable primes too; violations are then expected.
        #[arg(long)]
        skip_separability_guard: bool,
    },
    /// Forward orbit of a point.
    Orbit {
        #[command(flatten)]
        map: MapArgs,
        /// `inf`, an integer or `a/b`.
        #[arg(allow_hyphen_values = true)]
        start: String,
        #[arg(long, default_value_t = 1000)]
        max_steps: usize,
        #[arg(long, default_value_t = 4096)]
        max_bits: u64,
    },
    /// Rational preperiodic points, by backward closure of periodic ones.
    Preper {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = 2)]
        n_max: usize,
        #[arg(long, default_value_t = 10)]
        depth_max: usize,
    },
    /// Rational periodic points by minimal period.
    Periodic {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = 2)]
        n_max: usize,
    },
    /// Duplication map on the x-line of y^2 = x^3 + p x + q.
    Lattes {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
        /// Also analyze the map at this prime.
        #[arg(long)]
        prime: Option<String>,
    },
    /// Period and orbit-size bounds; the large ones in log scale.
    Bounds {
        #[arg(long)]
        t: u64,
        #[arg(long = "D", default_value_t = 1)]
        field_degree: u64,
        /// Map degree, for the combined bound.
        #[arg(long, default_value_t = 2)]
        d: u64,
    },
}

/// The finished report and the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub doc: Option<ReportDocument>,
    pub code: i32,
    pub summary: Vec<String>,
}

impl Outcome {
    fn report(doc: ReportDocument, code: i32, summary: Vec<String>) -> Self {
        Outcome {
            doc: Some(doc),
            code,
            summary,
        }
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded(_) => exit::BUDGET,
        Error::Internal(_) => exit::VIOLATION,
        _ => exit::INPUT,
    }
}

fn load_map(args: &MapArgs) -> Result<RationalMap> {
    let base = parse_map(&args.map)?;
    if args.iterate == 0 {
        return Err(Error::InvalidArgument("--iterate must be at least 1".into()));
    }
    Ok(base.iterate(args.iterate))
}

fn map_input(args: &MapArgs) -> Value {
    json!({ "map": args.map, "iterate": args.iterate })
}

fn parse_prime(text: &str) -> Result<Prime> {
    let n = text
        .trim()
        .parse()
        .map_err(|_| Error::NotPrime(text.trim().to_string()))?;
    Prime::new(n)
}

/// The reduction with common factors stripped, in the map syntax.
fn reduced_string<K: PrimeField>(r: &ReducedMap<K>) -> String {
    let lift = |f: &ModPForm<K>| {
        IntBinaryForm::new(f.residues().into_iter().map(Into::into).collect())
    };
    let (f, g) = (lift(r.f1()), lift(r.g1()));
    format_rational_function(&f.chart(), &g.chart())
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Analyze { map, prime } => analyze(map, prime),
        Command::BadPrimes { map } => bad_primes(map),
        Command::VerifyTheorem {
            count,
            seed,
            deg_min,
            deg_max,
            coeff_bound,
            prime_bound,
            workers,
            skip_separability_guard,
        } => verify_theorem(&CorpusConfig {
            count: *count,
            seed: *seed,
            deg_min: *deg_min,
            deg_max: *deg_max,
            coeff_bound: *coeff_bound,
            prime_bound: *prime_bound,
            workers: *workers,
            skip_separability_guard: *skip_separability_guard,
        }),
        Command::Orbit {
            map,
            start,
            max_steps,
            max_bits,
        } => cmd_orbit(map, start, *max_steps, *max_bits),
        Command::Preper {
            map,
            n_max,
            depth_max,
        } => preper(map, *n_max, *depth_max),
        Command::Periodic { map, n_max } => periodic(map, *n_max),
        Command::Lattes { p, q, prime } => lattes(p, q, prime.as_deref()),
        Command::Bounds { t, field_degree, d } => bounds(*t, *field_degree, *d),
    };
    match result {
        Ok(mut out) => {
            if !cli.no_timestamp {
                out.doc = out.doc.map(ReportDocument::with_timestamp);
            }
            out
        }
        Err(e) => Outcome {
            doc: None,
            code: exit_code_for(&e),
            summary: vec![format!("error: {e}")],
        },
    }
}

pub fn analyze(args: &MapArgs, prime: &str) -> Result<Outcome> {
    let map = load_map(args)?;
    let p = parse_prime(prime)?;
    let a = MapAnalysis::new(map);
    let report = a.report_at(&p)?;
    let reduction = with_field!(&p, |k| reduced_string(&a.reduce(k)));
    let code = if report.is_consistent() {
        exit::OK
    } else {
        exit::VIOLATION
    };
    let summary = vec![
        format!("map: {}", a.map()),
        format!("p = {p}: reduction {reduction}"),
        format!(
            "sgr={} cgr={} separable={} branch_nonsingular={} consistent={}",
            report.sgr,
            report.cgr,
            report.separable,
            report.branch_nonsingular,
            report.is_consistent()
        ),
    ];
    let payload = json!({
        "map": a.map().to_string(),
        "degree": a.degree(),
        "resultant": a.resultant().to_string(),
        "reduction": reduction,
        "report": report,
        "ramification": a.ramification()?,
    });
    let mut input = map_input(args);
    input["prime"] = json!(p.to_string());
    Ok(Outcome::report(
        ReportDocument::new("analyze", input, payload, true),
        code,
        summary,
    ))
}

pub fn bad_primes(args: &MapArgs) -> Result<Outcome> {
    let a = MapAnalysis::new(load_map(args)?);
    let sgr = a.sgr_bad_primes()?;
    let cgr = a.cgr_bad_primes()?;
    let insep = a.inseparable_primes()?;
    let complete = sgr.complete && cgr.complete && insep.complete;
    let list = |b: &crate::analysis::BadPrimes| {
        b.primes.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
    };
    let summary = vec![
        format!("map: {}", a.map()),
        format!("sgr_bad: [{}]", list(&sgr)),
        format!("cgr_bad: [{}]", list(&cgr)),
        format!("inseparable: [{}]", list(&insep)),
    ];
    let payload = json!({
        "map": a.map().to_string(),
        "degree": a.degree(),
        "sgr_bad": sgr,
        "cgr_bad": cgr,
        "inseparable": insep,
    });
    let code = if complete { exit::OK } else { exit::BUDGET };
    Ok(Outcome::report(
        ReportDocument::new("bad-primes", map_input(args), payload, complete),
        code,
        summary,
    ))
}

pub fn verify_theorem(cfg: &CorpusConfig) -> Result<Outcome> {
    let (summary, _) = run_corpus(cfg)?;
    let code = if summary.total_violations() > 0 {
        exit::VIOLATION
    } else if !summary.complete {
        exit::BUDGET
    } else {
        exit::OK
    };
    let lines = vec![
        format!(
            "maps: {}, (map, prime) pairs: {}",
            summary.maps, summary.verdicts.pairs
        ),
        format!("violations: {}", summary.violation_count),
        format!("all findings: {:?}", summary.violations_by_kind),
    ];
    let input = serde_json::to_value(cfg).expect("config serializes");
    let complete = summary.complete;
    let payload = serde_json::to_value(summary).expect("summary serializes");
    Ok(Outcome::report(
        ReportDocument::new("verify-theorem", input, payload, complete),
        code,
        lines,
    ))
}

pub fn cmd_orbit(args: &MapArgs, start: &str, max_steps: usize, max_bits: u64) -> Result<Outcome> {
    let map = load_map(args)?;
    let p = parse_point(start)?;
    if max_steps == 0 {
        return Err(Error::InvalidArgument("--max-steps must be at least 1".into()));
    }
    let o = orbit(&map, &p, max_steps, max_bits);
    let names: Vec<String> = o.points.iter().map(|q| q.to_string()).collect();
    let summary = if o.budget_exceeded {
        vec![format!("budget exhausted after {} points", names.len())]
    } else {
        vec![
            format!("tail: [{}]", names[..o.tail_length].join(", ")),
            format!("cycle: [{}]", names[o.tail_length..].join(", ")),
        ]
    };
    let mut input = map_input(args);
    input["start"] = json!(start);
    input["max_steps"] = json!(max_steps);
    input["max_bits"] = json!(max_bits);
    let complete = !o.budget_exceeded;
    let payload = json!({ "map": map.to_string(), "orbit": o });
    Ok(Outcome::report(
        ReportDocument::new("orbit", input, payload, complete),
        if complete { exit::OK } else { exit::BUDGET },
        summary,
    ))
}

pub fn preper(args: &MapArgs, n_max: usize, depth_max: usize) -> Result<Outcome> {
    let map = load_map(args)?;
    let pre = preperiodic_points(&map, n_max, depth_max)?;
    let names: Vec<String> = pre.points.iter().map(|q| q.to_string()).collect();
    let summary = vec![
        format!("preperiodic: [{}]", names.join(", ")),
        format!("complete: {}", pre.complete),
    ];
    let mut input = map_input(args);
    input["n_max"] = json!(n_max);
    input["depth_max"] = json!(depth_max);
    let complete = pre.complete;
    let payload = json!({ "map": map.to_string(), "preperiodic": pre });
    Ok(Outcome::report(
        ReportDocument::new("preper", input, payload, complete),
        if complete { exit::OK } else { exit::BUDGET },
        summary,
    ))
}

pub fn periodic(args: &MapArgs, n_max: usize) -> Result<Outcome> {
    let map = load_map(args)?;
    let per = periodic_points(&map, n_max)?;
    let summary = per
        .by_period
        .iter()
        .map(|(n, pts)| {
            let names: Vec<String> = pts.iter().map(|q| q.to_string()).collect();
            format!("period {n}: [{}]", names.join(", "))
        })
        .collect();
    let mut input = map_input(args);
    input["n_max"] = json!(n_max);
    let complete = per.complete;
    let payload = json!({ "map": map.to_string(), "periodic": per });
    Ok(Outcome::report(
        ReportDocument::new("periodic", input, payload, complete),
        if complete { exit::OK } else { exit::BUDGET },
        summary,
    ))
}

pub fn lattes(p: &str, q: &str, prime: Option<&str>) -> Result<Outcome> {
    let pr = parse_rational_arg(p)?;
    let qr = parse_rational_arg(q)?;
    let map = lattes_map(&pr, &qr)?;
    let (num, den) = map.chart();
    let factored = format_rational_function_factored(&num, &den);
    let mut summary = vec![factored.clone()];
    let mut payload = json!({
        "map": map.to_string(),
        "factored": factored,
        "discriminant": curve_discriminant(&pr, &qr).to_string(),
    });
    let mut code = exit::OK;
    if let Some(text) = prime {
        let l = parse_prime(text)?;
        let report = MapAnalysis::new(map).report_at(&l)?;
        summary.push(format!(
            "p = {l}: sgr={} cgr={} separable={}",
            report.sgr, report.cgr, report.separable
        ));
        if !report.is_consistent() {
            code = exit::VIOLATION;
        }
        payload["report"] = serde_json::to_value(report).expect("report serializes");
    }
    let input = json!({ "p": p, "q": q, "prime": prime });
    Ok(Outcome::report(
        ReportDocument::new("lattes", input, payload, true),
        code,
        summary,
    ))
}

pub fn bounds(t: u64, field_degree: u64, d: u64) -> Result<Outcome> {
    let spec = BoundSpec::new(t, field_degree, d)?;
    let ms = ms_bound(t, field_degree);
    let cor = corollary_log_c(&spec);
    let summary = vec![
        format!("period bound: {ms:.0}"),
        format!(
            "ln(orbit bound) = {t}e12 + {:.12}",
            canci_log_correction(t)
        ),
        format!("ln ln(preperiodic bound) = {:.6}", cor.ln_ln_c_total),
    ];
    let payload = json!({
        "period_bound": format!("{ms:.0}"),
        "orbit_bound": {
            "scale": "natural log",
            "value": canci_log_bound(t),
            "excess_over_t_times_1e12": canci_log_correction(t),
        },
        "preperiodic_bound": {
            "scale": "log of natural log",
            "value": cor,
        },
    });
    let input = json!({ "t": t, "D": field_degree, "d": d });
    Ok(Outcome::report(
        ReportDocument::new("bounds", input, payload, true),
        exit::OK,
        summary,
    ))
}

/// Parses `args`, runs, prints, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::INPUT } else { exit::OK };
        }
    };
    let out = run(&cli);
    let mut stdout = std::io::stdout().lock();
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = match (&out.doc, cli.text) {
        (Some(doc), false) => writeln!(stdout, "{}", doc.to_json()),
        (None, _) => {
            for line in &out.summary {
                eprintln!("{line}");
            }
            Ok(())
        }
        (Some(_), true) => out.summary.iter().try_for_each(|line| writeln!(stdout, "{line}")),
    };
    out.code
}
