use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use qharm::groups::{character_json, enumerate, graded_character, GroupSpec};
use qharm::harmonics::{
    check_conjecture_e, check_inflation, check_main_conjecture, check_n2_closed_form, format_series,
    harmonic_space, hbasis_expression, layer_decomposition, reference_top_degree, singular_scan, DegreeBound,
    HarmonicQuery, QMode, Report, ENUMERATION_LIMIT,
};
use qharm::operators::bracket_check;
use qharm::polyspace::{multidegrees_up_to, Shape};
use qharm::Error;

#[derive(Parser)]
#[command(name = "qharm", version, about = "q-harmonic polynomials of complex reflection groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert series of the q-harmonics.
    Hilbert {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Full kernel bases as JSON.
    Basis {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Runs one of the conjecture or identity checks.
    Check(CheckArgs),
    /// Scans q = -a/b for values where the space grows.
    Singular {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        sets: usize,
        #[arg(long)]
        a_max: u32,
        #[arg(long)]
        b_max: u32,
        #[arg(long)]
        max_deg: u32,
    },
    /// Layer decomposition of the G(m,n) harmonics by e_n-height.
    Layers {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_deg: Option<u32>,
    },
    /// Graded character of the q-harmonics at formal q.
    Character {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_deg: Option<u32>,
    },
}

#[derive(Args)]
struct SpaceArgs {
    #[arg(long)]
    m: u32,
    #[arg(long, default_value_t = 1)]
    p: u32,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    sets: usize,
    /// Total-degree bound; defaults to the top degree for one set of variables.
    #[arg(long)]
    max_deg: Option<u32>,
    /// `formal` or an exact rational `A/B`.
    #[arg(long, default_value = "formal", allow_hyphen_values = true)]
    q: String,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    what: Check,
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long, default_value_t = 1)]
    p: u32,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    sets: usize,
    #[arg(long)]
    max_deg: Option<u32>,
    /// Inflation factor (defaults to m).
    #[arg(long)]
    r: Option<u32>,
    /// Largest |d| for the bracket check.
    #[arg(long, default_value_t = 4)]
    max_op_deg: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Hbasis,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Main,
    E,
    Bracket,
    Inflate,
    N2closed,
}

/// Failure modes mapped to exit codes.
enum Failure {
    Usage(String),
    Capacity(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TooLarge { .. } => Failure::Capacity(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

enum Outcome {
    Ok,
    Failed,
    Truncated,
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn bound_for(group: &GroupSpec, sets: usize, max_deg: Option<u32>) -> Result<DegreeBound, Failure> {
    match (max_deg, sets) {
        (Some(d), _) => Ok(DegreeBound::Total(d)),
        (None, 1) => Ok(DegreeBound::Total(reference_top_degree(group))),
        (None, _) => Err(Failure::Usage("--max-deg is required for more than one set of variables".into())),
    }
}

fn query(args: &SpaceArgs) -> Result<HarmonicQuery, Failure> {
    let group = GroupSpec::new(args.m, args.p, args.n)?;
    let qmode: QMode = args.q.parse()?;
    let bound = bound_for(&group, args.sets, args.max_deg)?;
    Ok(HarmonicQuery::new(group, args.sets, qmode, bound)?)
}

fn report(r: &Report) -> Outcome {
    print_json(&r.to_json());
    if r.passed() {
        Outcome::Ok
    } else {
        Outcome::Failed
    }
}

fn run_check(args: &CheckArgs) -> Result<Outcome, Failure> {
    let group = GroupSpec::new(args.m, args.p, args.n)?;
    match args.what {
        Check::Main => {
            let bound = bound_for(&group, args.sets, args.max_deg)?;
            let q = HarmonicQuery::new(group, args.sets, QMode::Formal, bound)?;
            Ok(report(&check_main_conjecture(&q)?))
        }
        Check::E => {
            if args.p != 1 || args.sets != 1 {
                return Err(Failure::Usage("--what e needs --p 1 --sets 1".into()));
            }
            let bound = args.max_deg.unwrap_or_else(|| reference_top_degree(&group));
            Ok(report(&check_conjecture_e(args.m, args.n, bound)?))
        }
        Check::Inflate => {
            let r = args.r.unwrap_or(args.m);
            let n = args.n as u32;
            let bound = args.max_deg.unwrap_or(n * (n - 1) / 2);
            Ok(report(&check_inflation(args.m, r, args.n, bound)?))
        }
        Check::N2closed => {
            if args.n != 2 {
                return Err(Failure::Usage("--what n2closed needs --n 2".into()));
            }
            Ok(report(&check_n2_closed_form(args.m, args.p)?))
        }
        Check::Bracket => {
            let shape = Shape::new(args.sets, args.n)?;
            let maxdeg = args.max_deg.unwrap_or(6);
            let ops = multidegrees_up_to(args.sets, args.max_op_deg);
            let mut details = Vec::new();
            let mut ok = true;
            for d in &ops {
                for d2 in &ops {
                    let b = bracket_check(d, d2, shape, maxdeg);
                    ok &= b.holds();
                    details.push(json!(b));
                }
            }
            let verdict = if ok { "PASS" } else { "FAIL" };
            print_json(&json!({ "check": "bracket", "verdict": verdict, "details": details }));
            Ok(if ok { Outcome::Ok } else { Outcome::Failed })
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    match cli.command {
        Command::Hilbert { space, format } => {
            let q = query(&space)?;
            let hs = harmonic_space(&q);
            let hilbert = hs.hilbert();
            match format {
                Format::Text => println!("{}", format_series(&hilbert, q.l)),
                Format::Hbasis => println!("{}", hbasis_expression(&hilbert, q.l)?),
                Format::Json => {
                    let mut map = serde_json::Map::new();
                    for (d, k) in &hilbert {
                        map.insert(d.to_string(), json!(k));
                    }
                    print_json(&json!({
                        "query": q.to_json(),
                        "hilbert": map,
                        "series": format_series(&hilbert, q.l),
                        "total": hs.total_dim(),
                        "truncated": hs.truncated,
                    }));
                }
            }
            Ok(if hs.truncated { Outcome::Truncated } else { Outcome::Ok })
        }
        Command::Basis { space } => {
            let q = query(&space)?;
            let hs = harmonic_space(&q);
            let h = hbasis_expression(&hs.hilbert(), q.l).ok();
            print_json(&hs.to_json(h.as_ref()));
            Ok(if hs.truncated { Outcome::Truncated } else { Outcome::Ok })
        }
        Command::Check(args) => run_check(&args),
        Command::Singular {
            m,
            p,
            n,
            sets,
            a_max,
            b_max,
            max_deg,
        } => {
            let group = GroupSpec::new(m, p, n)?;
            let scan = singular_scan(&group, sets, a_max, b_max, DegreeBound::Total(max_deg))?;
            print_json(&scan.to_json());
            Ok(Outcome::Ok)
        }
        Command::Layers { m, n, max_deg } => {
            let group = GroupSpec::full(m, n);
            let bound = max_deg.unwrap_or_else(|| reference_top_degree(&group));
            let q = HarmonicQuery::new(group, 1, QMode::Formal, DegreeBound::Total(bound))?;
            let hs = harmonic_space(&q);
            let dec = layer_decomposition(m, n, &hs)?;
            print_json(&dec.to_json());
            Ok(if dec.eps_maps.iter().all(|c| c.holds()) {
                Outcome::Ok
            } else {
                Outcome::Failed
            })
        }
        Command::Character { m, p, n, max_deg } => {
            let group = GroupSpec::new(m, p, n)?;
            let bound = max_deg.unwrap_or_else(|| reference_top_degree(&group));
            let q = HarmonicQuery::new(group, 1, QMode::Formal, DegreeBound::Total(bound))?;
            let elements = enumerate(&group, ENUMERATION_LIMIT)?;
            let hs = harmonic_space(&q);
            let chi = graded_character(&elements, &hs.pairs())?;
            let labels: Vec<String> = elements.iter().map(|w| w.label()).collect();
            print_json(&json!({
                "group": group,
                "elements": labels,
                "character": character_json(&elements, &chi),
            }));
            Ok(Outcome::Ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Ok(Outcome::Truncated) => {
            eprintln!("warning: the degree bound was reached; the space may be truncated");
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Capacity(msg)) => {
            eprintln!("capacity: {msg}");
            ExitCode::from(2)
        }
    }
}
