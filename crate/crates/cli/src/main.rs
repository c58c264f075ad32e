use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use p1dyn::arith::{factor, PlaceSet};
use p1dyn::census::{self, CensusConfig, Strategy};
use p1dyn::dynamics::{conjugacy_via_cycles, Conjugacy, Orbit, RationalMap};
use p1dyn::families;
use p1dyn::proj::{delta_p, ideal_i, ProjPoint};
use p1dyn::reduction::{reduction_report, to_normal_form};
use p1dyn::wire::{parse_map, parse_place_set, parse_point, parse_points, parse_rat};
use p1dyn::Error;

#[derive(Parser)]
#[command(name = "p1dyn", version, about = "Exact dynamics of rational maps on P^1 over Q")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Discriminant, bad primes and good reduction outside S.
    Goodred {
        #[arg(long)]
        map: String,
        #[arg(long, default_value = "")]
        s: String,
    },
    /// Forward orbit of a point until it repeats.
    Orbit {
        #[arg(long)]
        map: String,
        #[arg(long)]
        point: String,
        #[arg(long, default_value_t = p1dyn::dynamics::DEFAULT_ORBIT_STEPS)]
        steps: usize,
    },
    /// Rational points of exact period n.
    Periodic {
        #[arg(long)]
        map: String,
        #[arg(long)]
        period: usize,
    },
    /// Normal form from an orbit `eta;alpha;beta;gamma`.
    Normalform {
        #[arg(long)]
        map: String,
        #[arg(long)]
        orbit: String,
    },
    /// p-adic distances of two points and their ideal outside S.
    Distance {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
        #[arg(long, default_value = "")]
        s: String,
    },
    /// A member of one of the explicit families.
    Family {
        family: FamilyArg,
        #[arg(long, allow_hyphen_values = true)]
        param: String,
        #[arg(long, default_value = "")]
        s: String,
    },
    /// Conjugacy of two maps through their rational n-cycles.
    Conjugacy {
        #[arg(long)]
        map1: String,
        #[arg(long)]
        map2: String,
        #[arg(long)]
        period: usize,
    },
    /// Bounded census of good-reduction quadratic maps.
    Census {
        #[arg(long, default_value = "2,3")]
        s: String,
        #[arg(long, default_value_t = 8)]
        height: u32,
        #[arg(long, default_value_t = 6)]
        max_period: usize,
        #[arg(long, default_value = "by-cycles")]
        strategy: String,
        /// Worker threads (0: available parallelism).
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a census report.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Phi4,
    Psi3,
}

/// A failed theorem check, reported with exit code 2.
#[derive(Debug)]
struct Violations(Vec<String>);

impl std::fmt::Display for Violations {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} verification failure(s)", self.0.len())?;
        for v in &self.0 {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for Violations {}

fn points_json(pts: &[ProjPoint]) -> Value {
    pts.iter().map(|p| Value::String(format!("{},{}", p.x(), p.y()))).collect()
}

fn map_json(phi: &RationalMap) -> Value {
    Value::String(phi.to_string())
}

fn distance(p: &ProjPoint, q: &ProjPoint, s: &PlaceSet) -> anyhow::Result<Value> {
    if p == q {
        return Err(Error::InfiniteDistance.into());
    }
    let cross = p.cross(q);
    let mut table = serde_json::Map::new();
    for prime in factor(&cross)?.primes() {
        let prime = u64::try_from(prime).context("prime factor beyond 64 bits")?;
        table.insert(prime.to_string(), json!(delta_p(p, q, prime)?));
    }
    Ok(json!({
        "p": p.to_string(),
        "q": q.to_string(),
        "delta": table,
        "ideal": ideal_i(p, q, s)?.generator().to_string(),
    }))
}

const ENGR_SEARCH_BOUND: i64 = 12;

fn family(which: FamilyArg, param: &str, s: &PlaceSet) -> anyhow::Result<Value> {
    let a = parse_rat(param)?;
    let (member, cycle) = match which {
        FamilyArg::Phi4 => (families::phi4(&a)?, families::phi4_cycle(&a)),
        FamilyArg::Psi3 => (families::psi3(&a)?, families::pp0_cycle()),
    };
    let report = reduction_report(&member.map, s)?;
    let mut out = json!({
        "family": member.tag.to_string(),
        "param": a.to_string(),
        "map": map_json(&member.map),
        "cycle": points_json(cycle.points()),
        "is_cycle": member.map.is_cycle(&cycle),
        "reduction": report,
    });
    if let FamilyArg::Phi4 = which {
        let p2 = families::period2_points_on_c(&a)?;
        out["bad_bound"] = json!(families::phi4_bad_bound(&a)?.to_string());
        out["period2"] = json!({
            "points": p2.period2.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "all_on_curve": p2.all_on_curve,
            "nonconverse": p2.nonconverse.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        });
        let eq = families::engr_equivalent(&a, s, ENGR_SEARCH_BOUND)?;
        out["equivalent_params"] = json!({
            "search_bound": ENGR_SEARCH_BOUND,
            "params": eq.equivalent.iter().map(|(b, h)| json!({ "b": b.to_string(), "rotation": h })).collect::<Vec<_>>(),
            "agrees_with_two": eq.agrees_with_two(),
        });
    }
    Ok(out)
}

fn print_json(v: &Value) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn run(cmd: Cmd) -> anyhow::Result<()> {
    match cmd {
        Cmd::Goodred { map, s } => {
            let phi = parse_map(&map)?;
            let s = parse_place_set(&s)?;
            print_json(&serde_json::to_value(reduction_report(&phi, &s)?)?)
        }
        Cmd::Orbit { map, point, steps } => {
            let phi = parse_map(&map)?;
            let p = parse_point(&point)?;
            let v = match phi.orbit(&p, steps)? {
                Orbit::Periodic { tail, cycle } => json!({
                    "kind": "periodic",
                    "tail": points_json(&tail),
                    "cycle": points_json(cycle.points()),
                }),
                Orbit::Exhausted { visited } => json!({
                    "kind": "exhausted",
                    "visited": points_json(&visited),
                }),
            };
            print_json(&v)
        }
        Cmd::Periodic { map, period } => {
            let phi = parse_map(&map)?;
            let pts = phi.periodic_points(period)?;
            let cycles: Vec<Value> = phi.cycles(period)?.iter().map(|c| points_json(c.points())).collect();
            print_json(&json!({ "period": period, "points": points_json(&pts), "cycles": cycles }))
        }
        Cmd::Normalform { map, orbit } => {
            let phi = parse_map(&map)?;
            let pts = parse_points(&orbit)?;
            let [eta, alpha, beta, gamma]: [ProjPoint; 4] = pts
                .try_into()
                .map_err(|_| Error::Parse("orbit needs four points eta;alpha;beta;gamma".into()))?;
            let (nf, a) = to_normal_form(&phi, &eta, &alpha, &beta, &gamma)?;
            print_json(&json!({
                "lambda": nf.lambda.to_string(),
                "a": nf.a.to_string(),
                "b": nf.b.to_string(),
                "c": nf.c.to_string(),
                "normal_form": nf.to_string(),
                "mobius": a.to_string(),
            }))
        }
        Cmd::Distance { p, q, s } => {
            let v = distance(&parse_point(&p)?, &parse_point(&q)?, &parse_place_set(&s)?)?;
            print_json(&v)
        }
        Cmd::Family { family: which, param, s } => print_json(&family(which, &param, &parse_place_set(&s)?)?),
        Cmd::Conjugacy { map1, map2, period } => {
            let phi = parse_map(&map1)?;
            let psi = parse_map(&map2)?;
            let v = match conjugacy_via_cycles(&phi, &psi, period)? {
                Conjugacy::Witness(a) => json!({ "result": "witness", "mobius": a.to_string() }),
                Conjugacy::Refuted => json!({ "result": "refuted" }),
                Conjugacy::Inconclusive => json!({ "result": "inconclusive" }),
            };
            print_json(&v)
        }
        Cmd::Census { s, height, max_period, strategy, workers, out } => {
            let cfg = CensusConfig {
                s: parse_place_set(&s)?,
                height,
                max_period,
                strategy: strategy.parse::<Strategy>()?,
                workers,
            };
            let report = census::run_census(&cfg)?;
            match &out {
                Some(path) => {
                    let mut f = fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
                    census::emit_report(&report, &mut f)?;
                    eprintln!(
                        "{} records, {} classes, {} violations -> {}",
                        report.summary.records,
                        report.summary.classes,
                        report.summary.violations.len(),
                        path.display()
                    );
                }
                None => census::emit_report(&report, &mut io::stdout().lock())?,
            }
            if report.summary.violations.is_empty() {
                Ok(())
            } else {
                Err(Violations(report.summary.violations).into())
            }
        }
        Cmd::Verify { input } => {
            let text = fs::read_to_string(&input).with_context(|| format!("cannot read {}", input.display()))?;
            let report = census::parse_report(&text)?;
            let problems = census::verify_report(&report)?;
            if problems.is_empty() {
                println!("ok: {} records, {} classes", report.records.len(), report.classes.len());
                Ok(())
            } else {
                Err(Violations(problems).into())
            }
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Violations>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_resource() => 3,
        Some(Error::IdentityViolation(_)) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
