use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use wdc_core::asymptotics::{
    dominant_remainder_expansion, full_expansion, hermite_expansion, leading_term,
};
use wdc_core::lattice::{self, CountMethod, DEFAULT_BUDGET};
use wdc_core::remainder::{evaluate_remainder, fit_exponent};
use wdc_core::zeta::hurwitz_zeta;
use wdc_core::{Error, GridSpec, ProductSpec, SequenceSpec, SpecFile, TermExpansion};

/// Exact and asymptotic eigenvalue counting for tensor products.
#[derive(Debug, Parser)]
#[command(name = "wdc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the exact count N(λ) of product eigenvalues ≤ λ.
    Count {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        lambda: f64,
        #[arg(long, value_enum, default_value_t = Method::Recursive)]
        method: Method,
        /// Iteration budget of the naive method.
        #[arg(long, env = "WDC_BUDGET", default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Print the Hurwitz zeta value ζ(s; a).
    Zeta {
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
    },
    /// Print an asymptotic expansion of N(λ) as JSON.
    Expand {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum)]
        method: Expansion,
        #[command(flatten)]
        dominant: DominantArgs,
    },
    /// Fit the growth exponent of N(λ) minus an expansion over a geometric grid.
    RemainderFit {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum)]
        method: Expansion,
        #[arg(long)]
        min: f64,
        #[arg(long)]
        max: f64,
        #[arg(long)]
        points: usize,
        /// Where to write the lambda,count_exact,prediction,remainder table.
        #[arg(long)]
        csv: PathBuf,
        /// Smallest λ used in the fit [default: 10·min].
        #[arg(long)]
        floor: Option<f64>,
        #[command(flatten)]
        dominant: DominantArgs,
    },
    /// Print eigenvalues λ_k for k in from..=to, one factor per column.
    Spectrum {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long)]
        to: u64,
        /// Only this factor (1-based).
        #[arg(long)]
        factor: Option<usize>,
    },
}

#[derive(Debug, clap::Args)]
struct DominantArgs {
    /// Dominant factor (1-based) for the dominant method [default: the fastest-growing factor].
    #[arg(long)]
    index: Option<usize>,
    /// Remainder exponent of the dominant factor, overriding its model.
    #[arg(long)]
    eta: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Naive,
    Recursive,
    Hyperbola,
    Dirichlet,
}

impl From<Method> for CountMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Naive => CountMethod::Naive,
            Method::Recursive => CountMethod::Recursive,
            Method::Hyperbola => CountMethod::Hyperbola2,
            Method::Dirichlet => CountMethod::DirichletFast,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Expansion {
    Leading,
    Dominant,
    Full,
    Hermite,
}

fn load(path: &Path) -> wdc_core::Result<ProductSpec> {
    SpecFile::read(path)?.to_product_spec()
}

/// 16 significant digits, trailing zeros trimmed.
fn format_real(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&exp) {
        return format!("{x:.15e}");
    }
    let s = format!("{:.*}", (15 - exp).max(0) as usize, x);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn fastest_factor(spec: &ProductSpec) -> usize {
    let mut best = 0;
    for (i, f) in spec.factors().iter().enumerate() {
        let a = f.growth_exponent().map_or(f64::NEG_INFINITY, |e| e.value());
        let b = spec.factors()[best]
            .growth_exponent()
            .map_or(f64::NEG_INFINITY, |e| e.value());
        if a > b {
            best = i;
        }
    }
    best + 1
}

fn hermite_parameters(spec: &ProductSpec) -> wdc_core::Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let mut c = Vec::new();
    let mut b = Vec::new();
    let mut beta = Vec::new();
    for f in spec.factors() {
        match f {
            SequenceSpec::AffinePower(a) => {
                c.push(a.c());
                b.push(a.b());
                beta.push(a.beta().value());
            }
            _ => {
                return Err(Error::UnsupportedVariant(
                    "the hermite expansion needs affine_power factors".into(),
                ))
            }
        }
    }
    Ok((c, b, beta))
}

/// The expansion as JSON, with the principal-part data for `full`.
fn expand(
    spec: &ProductSpec,
    method: Expansion,
    dominant: &DominantArgs,
) -> wdc_core::Result<(TermExpansion, serde_json::Value)> {
    let factors = spec.factors();
    let expansion = match method {
        Expansion::Leading => leading_term(factors)?,
        Expansion::Dominant => {
            let l = dominant.index.unwrap_or_else(|| fastest_factor(spec));
            dominant_remainder_expansion(factors, l, dominant.eta)?
        }
        Expansion::Full => {
            let (b, e) = full_expansion(factors)?;
            let mut value = serde_json::to_value(&e).expect("expansions serialize");
            value["b"] = serde_json::to_value(&b).expect("coefficients serialize");
            return Ok((e, value));
        }
        Expansion::Hermite => {
            let (c, b, beta) = hermite_parameters(spec)?;
            hermite_expansion(&c, &b, &beta)?
        }
    };
    let value = serde_json::to_value(&expansion).expect("expansions serialize");
    Ok((expansion, value))
}

fn run(command: Command) -> wdc_core::Result<()> {
    match command {
        Command::Count {
            spec,
            lambda,
            method,
            budget,
        } => {
            let spec = load(&spec)?;
            log::debug!("counting with {method:?}, mode {:?}", spec.mode());
            let result = lattice::count(&spec, lambda, method.into(), budget)?;
            println!("{}", result.count);
        }
        Command::Zeta { s, a } => println!("{}", format_real(hurwitz_zeta(s, a)?)),
        Command::Expand {
            spec,
            method,
            dominant,
        } => {
            let spec = load(&spec)?;
            let (_, value) = expand(&spec, method, &dominant)?;
            println!("{value}");
        }
        Command::RemainderFit {
            spec,
            method,
            min,
            max,
            points,
            csv,
            floor,
            dominant,
        } => {
            let spec = load(&spec)?;
            let grid = GridSpec::new(min, max, points)?;
            let (expansion, _) = expand(&spec, method, &dominant)?;
            let table = evaluate_remainder(&spec, &expansion, &grid)?;
            let file = File::create(&csv).map_err(|e| {
                Error::InvalidParameter(format!("cannot create {}: {e}", csv.display()))
            })?;
            table.write_csv(BufWriter::new(file)).map_err(|e| {
                Error::InvalidParameter(format!("cannot write {}: {e}", csv.display()))
            })?;
            let fit = fit_exponent(&table, floor.unwrap_or(10.0 * min))?;
            println!("{}", json!(fit));
        }
        Command::Spectrum {
            spec,
            from,
            to,
            factor,
        } => {
            let spec = load(&spec)?;
            if from == 0 || from > to {
                return Err(Error::InvalidParameter(format!(
                    "need 1 ≤ from ≤ to, got {from}..{to}"
                )));
            }
            let chosen: Vec<&SequenceSpec> = match factor {
                Some(i) if (1..=spec.factors().len()).contains(&i) => vec![&spec.factors()[i - 1]],
                Some(i) => return Err(Error::InvalidParameter(format!("no factor {i}"))),
                None => spec.factors().iter().collect(),
            };
            for k in from..=to {
                let row = chosen
                    .iter()
                    .map(|f| f.kth_value(k).map(|v| format!("{v:?}")))
                    .collect::<wdc_core::Result<Vec<_>>>()?;
                println!("{k} {}", row.join(" "));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ Error::BudgetExceeded { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
