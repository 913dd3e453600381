//! `padic-lab`: verification suites, identity derivation and p-adic evaluation.

mod derive;
mod eval;
mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use padic_ode::padic::is_prime;

use report::SuiteReport;
use suites::{run_suite, Settings, Suite};

const EXIT_DISCREPANCY: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "padic-lab", version, about = "Exact and p-adic checks for factorial series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and print a report.
    Verify(VerifyArgs),
    /// Derive a sum identity or a differential equation.
    Derive(DeriveArgs),
    /// Evaluate sum n! P(n) x^n in Q_p.
    Eval(EvalArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Debug)]
struct Primes(Vec<u64>);

fn prime_list(s: &str) -> Result<Primes, String> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let p: u64 = part.trim().parse().map_err(|_| format!("{part:?} is not an integer"))?;
        if !is_prime(p) {
            return Err(format!("{p} is not prime"));
        }
        out.push(p);
    }
    out.sort_unstable();
    out.dedup();
    Ok(Primes(out))
}

fn prime(s: &str) -> Result<u64, String> {
    match prime_list(s)?.0.as_slice() {
        [p] => Ok(*p),
        _ => Err("expected a single prime".into()),
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    /// Comma-separated primes.
    #[arg(long, default_value = "2,3,5,7", value_parser = prime_list)]
    primes: Primes,
    /// Target p-adic precision M.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..=200))]
    prec: u32,
    /// Series order N for formal checks.
    #[arg(long, default_value_t = 60, value_parser = clap::value_parser!(u64).range(10..=400))]
    order: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "what")]
struct DeriveArgs {
    /// U_k and V_(k-1) of the identity for sum n! n^k x^n.
    #[arg(long, group = "what", value_parser = clap::value_parser!(u32).range(1..=40))]
    k: Option<u32>,
    /// Repeated differentiation of A F' + B F = C: "A;B;C;mu".
    #[arg(long, group = "what")]
    prop1: Option<String>,
    /// Equation for x^m F.
    #[arg(long, group = "what")]
    shift: Option<u32>,
    /// Base equation "A;B;C" for --shift (default x^2 F' + (x - 1) F = -1).
    #[arg(long, requires = "shift")]
    form: Option<String>,
    /// A TOML file with coefficients a, b, b_log, c, d, e, f in t, or `example_6_5`.
    #[arg(long, group = "what")]
    euler_lagrange: Option<String>,
}

#[derive(Args)]
struct EvalArgs {
    /// P(n) in the variable n.
    #[arg(long, allow_hyphen_values = true)]
    series: String,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long, value_parser = prime)]
    p: u64,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=500))]
    prec: u32,
}

fn configure_threads() {
    if let Some(n) = std::env::var("PADIC_LAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second initialisation only happens in tests and is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn verify(args: VerifyArgs) -> ExitCode {
    let primes = args.primes.0;
    let settings = Settings { primes: primes.clone(), precision: args.prec, order: args.order as usize };
    let suites = args.suite.expand();
    let records = suites.iter().flat_map(|&s| run_suite(s, &settings)).collect();
    let names = suites.iter().map(|s| s.name().to_string()).collect();
    let report = SuiteReport::new(names, primes, args.prec, settings.order, records);
    let body = match args.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE);
            }
        }
        None => print!("{body}"),
    }
    if report.unexpected() > 0 {
        ExitCode::from(EXIT_DISCREPANCY)
    } else {
        ExitCode::SUCCESS
    }
}

fn derive(args: DeriveArgs) -> ExitCode {
    let result = if let Some(k) = args.k {
        derive::derive_k(k)
    } else if let Some(src) = &args.prop1 {
        derive::derive_prop1(src)
    } else if let Some(m) = args.shift {
        derive::derive_shift(m, args.form.as_deref())
    } else if let Some(src) = &args.euler_lagrange {
        derive::derive_euler_lagrange(src)
    } else {
        unreachable!("clap requires one derivation")
    };
    match result {
        Ok(d) => {
            print!("{}", d.text);
            if d.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_DISCREPANCY)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match cli.command {
        Command::Verify(args) => verify(args),
        Command::Derive(args) => derive(args),
        Command::Eval(args) => match eval::eval(&args.series, &args.x, args.p, args.prec) {
            Ok(out) => {
                print!("{out}");
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_USAGE)
            }
        },
    }
}
