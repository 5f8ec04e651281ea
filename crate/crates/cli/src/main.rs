use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dlcurve::curve::CurveModel;
use dlcurve::error::Error;
use dlcurve::par::Execution;
use dlcurve::params::{HermitianParams, SuzukiParams};
use dlcurve::report::{Report, Section};
use dlcurve::suite::{self, OvoidChecks, SuiteConfig};

#[derive(Parser)]
#[command(name = "dlcurve", version, about = "Exact checks on the Suzuki and Hermitian curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for random point samples; recorded in the report.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Run every kernel on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Count points over GF(q^n).
    Count(CurveArgs),
    /// Compare the candidate L-polynomial with exhaustive counts.
    Zeta(CurveArgs),
    /// Semigroup genus, Apéry sets and the L-partition.
    Semigroup(SemigroupArgs),
    /// Vanishing sequences, Stöhr-Voloch degrees and bounds.
    Orders(OrdersArgs),
    /// The ovoid and the image of the rational points.
    Ovoid(OvoidArgs),
    /// Every check applicable to the given curve.
    VerifyAll(OrdersArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Suzuki,
    Hermitian,
}

#[derive(Args, Clone)]
struct CurveArgs {
    #[arg(long, value_enum, default_value = "suzuki")]
    family: FamilyArg,
    /// Suzuki parameter: q0 = 2^s, q = 2 q0^2.
    #[arg(long)]
    s: Option<u32>,
    /// Hermitian field size (a square prime power).
    #[arg(long)]
    q: Option<u64>,
    /// Extension degrees, comma separated.
    #[arg(long, value_delimiter = ',')]
    n: Vec<u32>,
    /// Cross-check with the exhaustive counter (slow for large fields).
    #[arg(long)]
    long: bool,
}

#[derive(Args, Clone)]
struct OrdersArgs {
    #[command(flatten)]
    curve: CurveArgs,
    /// Starting expansion precision.
    #[arg(long)]
    precision: Option<usize>,
    /// Points per class: this many in coordinate order plus as many random.
    #[arg(long, default_value_t = 5)]
    samples: usize,
}

#[derive(Args)]
struct SemigroupArgs {
    /// Generators, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "s")]
    gens: Vec<u64>,
    /// Apéry set modulus (defaults to the multiplicity).
    #[arg(long, requires = "gens")]
    apery: Option<u64>,
    /// Run the Suzuki semigroup suite for this s.
    #[arg(long)]
    s: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OvoidCheck {
    Equality,
    Injectivity,
    Secant,
    All,
}

#[derive(Args)]
struct OvoidArgs {
    #[arg(long, default_value_t = 1)]
    s: u32,
    #[arg(long, value_enum, default_value = "all")]
    check: OvoidCheck,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidParameter(_)
            | Error::NotSquare(_)
            | Error::NotPrimePower(_)
            | Error::InvalidGenerators(_)
            | Error::FieldTooLarge { .. }
            | Error::NoModulus { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

fn model(args: &CurveArgs) -> Result<CurveModel, Failure> {
    let m = match args.family {
        FamilyArg::Suzuki => {
            let s = args.s.ok_or_else(|| Failure::Usage("--s is required for the suzuki family".into()))?;
            CurveModel::suzuki(SuzukiParams::new(s)?)?
        }
        FamilyArg::Hermitian => {
            let q = args.q.ok_or_else(|| Failure::Usage("--q is required for the hermitian family".into()))?;
            CurveModel::hermitian(HermitianParams::new(q)?)?
        }
    };
    Ok(m)
}

fn extensions(args: &CurveArgs, m: &CurveModel) -> Vec<u32> {
    if args.n.is_empty() {
        suite::feasible_extensions(m, 3)
    } else {
        args.n.clone()
    }
}

fn run(cli: &Cli) -> Result<(String, Section), Failure> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let mut cfg = SuiteConfig { seed: cli.seed, exec, ..SuiteConfig::default() };
    let orders_cfg = |cfg: &mut SuiteConfig, a: &OrdersArgs| {
        cfg.precision = a.precision;
        cfg.lex_samples = a.samples;
        cfg.random_samples = a.samples;
        cfg.long = a.curve.long;
    };
    match &cli.command {
        Command::Count(a) => {
            let m = model(a)?;
            cfg.long = a.long;
            Ok(("count".into(), suite::count_section(&m, &extensions(a, &m), &cfg)?))
        }
        Command::Zeta(a) => {
            let m = model(a)?;
            cfg.long = a.long;
            Ok(("zeta".into(), suite::zeta_section(&m, &extensions(a, &m), &cfg)?))
        }
        Command::Semigroup(a) => match (a.gens.is_empty(), a.s) {
            (false, _) => Ok(("semigroup".into(), suite::semigroup_gens_section(&a.gens, a.apery)?)),
            (true, Some(s)) => Ok(("semigroup".into(), suite::semigroup_section(&SuzukiParams::new(s)?)?)),
            (true, None) => Err(Failure::Usage("give --gens or --s".into())),
        },
        Command::Orders(a) => {
            let m = model(&a.curve)?;
            orders_cfg(&mut cfg, a);
            Ok(("orders".into(), suite::orders_section(&m, &cfg)?))
        }
        Command::Ovoid(a) => {
            let which = match a.check {
                OvoidCheck::Equality => OvoidChecks { equality: true, injectivity: false, secant: false },
                OvoidCheck::Injectivity => OvoidChecks { equality: false, injectivity: true, secant: false },
                OvoidCheck::Secant => OvoidChecks { equality: false, injectivity: false, secant: true },
                OvoidCheck::All => OvoidChecks::ALL,
            };
            Ok(("ovoid".into(), suite::ovoid_section(&SuzukiParams::new(a.s)?, which, exec)?))
        }
        Command::VerifyAll(a) => {
            let m = model(&a.curve)?;
            orders_cfg(&mut cfg, a);
            Ok(("verify-all".into(), suite::verify_all(&m, &cfg)?))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, section) = match run(&cli) {
        Ok(v) => v,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let report = Report::new(&name, cli.seed, section);
    let text = report.to_json();
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{text}"),
    }
    if report.overall {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
