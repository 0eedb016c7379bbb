use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rug::Complex;

use zetakit::checks::{self, Suite};
use zetakit::gamma::{gamma_inc_param_deriv, upper_gamma, upper_gamma_complex};
use zetakit::stieltjes::{gamma0, gamma1, gamma2, log_gamma_series};
use zetakit::zeta::{eta, eta_series, hurwitz_zeta_with_terms, lerch_phi, polylog, riemann_zeta, SplitTerms};
use zetakit::{ApproxValue, Error, PrecisionContext};

use zetakit_cli::format;
use zetakit_cli::literal::{parse_complex, parse_order, parse_real, ParseError};
use zetakit_cli::report::{ComputeReport, VerificationReport};

#[derive(Parser)]
#[command(name = "zetakit", version, about = "Zeta, Hurwitz zeta, Stieltjes constants and incomplete Gamma derivatives")]
struct Cli {
    /// Significant decimal digits
    #[arg(long, global = true, env = "ZETAKIT_DIGITS", default_value_t = 30)]
    digits: u32,

    /// Splitting parameter
    #[arg(long, global = true, default_value_t = 1.0, allow_negative_numbers = true)]
    lambda: f64,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function
    Compute {
        function: Function,
        #[arg(allow_negative_numbers = true)]
        args: Vec<String>,
    },
    /// Run a suite of identity checks
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
    /// Term counts and timings across a grid of splitting parameters
    Bench {
        #[arg(long, value_enum)]
        function: BenchFunction,
        #[arg(long, default_value = "2.5", allow_negative_numbers = true)]
        s: String,
        /// Shift of the Hurwitz zeta function
        #[arg(long, default_value = "1")]
        a: String,
        #[arg(long, value_delimiter = ',', default_value = "0.5,1,2,4,6", allow_negative_numbers = true)]
        lambda_grid: Vec<f64>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Function {
    Hurwitz,
    Zeta,
    Eta,
    Lerch,
    Polylog,
    GammaInc,
    GammaIncDeriv,
    Stieltjes,
    Loggamma,
}

impl Function {
    fn name(self) -> &'static str {
        match self {
            Function::Hurwitz => "hurwitz",
            Function::Zeta => "zeta",
            Function::Eta => "eta",
            Function::Lerch => "lerch",
            Function::Polylog => "polylog",
            Function::GammaInc => "gamma-inc",
            Function::GammaIncDeriv => "gamma-inc-deriv",
            Function::Stieltjes => "stieltjes",
            Function::Loggamma => "loggamma",
        }
    }

    fn usage(self) -> &'static str {
        match self {
            Function::Hurwitz => "hurwitz S A",
            Function::Zeta => "zeta S",
            Function::Eta => "eta S",
            Function::Lerch => "lerch Z S A",
            Function::Polylog => "polylog S X",
            Function::GammaInc => "gamma-inc S X",
            Function::GammaIncDeriv => "gamma-inc-deriv S X [ORDER]",
            Function::Stieltjes => "stieltjes K A",
            Function::Loggamma => "loggamma X",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Identities,
    Stieltjes,
    Gamma,
    Contour,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchFunction {
    Hurwitz,
    Eta,
}

enum Failure {
    Parse(String),
    Compute(Error),
    Verify,
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Pole(_) | Error::Domain(_) | Error::TailBoundUnavailable(_) => 3,
        Error::MaxTermsExceeded { .. }
        | Error::PrecisionLoss { .. }
        | Error::QuadratureFailure(_)
        | Error::ConvergenceFailure(_) => 4,
    }
}

/// Complex literals such as `-1+2i` would otherwise read as short flags; their
/// leading minus is swapped for U+2212, which the literal parser accepts.
fn protect_literals(args: impl Iterator<Item = String>) -> Vec<String> {
    args.map(|a| {
        let mut chars = a.chars();
        let looks_numeric = chars.next() == Some('-')
            && chars.next().is_some_and(|c| c.is_ascii_digit() || c == '.' || c == 'i');
        if looks_numeric && a.parse::<f64>().is_err() {
            format!("\u{2212}{}", &a[1..])
        } else {
            a
        }
    })
    .collect()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse_from(protect_literals(std::env::args())) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verify) => ExitCode::from(1),
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn context(cli: &Cli) -> Result<PrecisionContext, Failure> {
    Ok(PrecisionContext::new(cli.digits)?.with_lambda(cli.lambda))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Compute { function, args } => compute(cli, *function, args),
        Command::Verify { suite } => verify(cli, *suite),
        Command::Bench {
            function,
            s,
            a,
            lambda_grid,
        } => bench(cli, *function, s, a, lambda_grid),
    }
}

fn compute(cli: &Cli, function: Function, args: &[String]) -> Result<(), Failure> {
    let expected = function.usage().split(' ').skip(1).collect::<Vec<_>>();
    let required = expected.iter().filter(|a| !a.starts_with('[')).count();
    if args.len() < required || args.len() > expected.len() {
        return Err(Failure::Parse(format!("usage: zetakit compute {}", function.usage())));
    }
    let ctx = context(cli)?;
    let prec = ctx.working_bits;
    let z = |k: usize| parse_complex(&args[k], prec);
    let x = |k: usize| parse_real(&args[k], prec);

    let start = Instant::now();
    let value: ApproxValue = match function {
        Function::Hurwitz => {
            let (s, a) = (z(0)?, z(1)?);
            hurwitz_zeta_with_terms(&s, &a, &ctx)?.0
        }
        Function::Zeta => riemann_zeta(&z(0)?, &ctx)?,
        Function::Eta => eta(&z(0)?, &ctx)?,
        Function::Lerch => {
            let (zz, s, a) = (z(0)?, z(1)?, z(2)?);
            lerch_phi(&zz, &s, &a, &ctx)?
        }
        Function::Polylog => {
            let (s, xx) = (z(0)?, x(1)?);
            polylog(&s, &xx, &ctx)?
        }
        Function::GammaInc => {
            let (s, xx) = (z(0)?, z(1)?);
            if xx.imag().is_zero() {
                upper_gamma(&s, xx.real(), &ctx)?
            } else {
                upper_gamma_complex(&s, &xx, &ctx)?
            }
        }
        Function::GammaIncDeriv => {
            let (s, xx) = (z(0)?, x(1)?);
            let order = match args.get(2) {
                Some(o) => parse_order(o)?,
                None => 1,
            };
            gamma_inc_param_deriv(order, &s, &xx, &ctx)?
        }
        Function::Stieltjes => {
            let k = parse_order(&args[0])?;
            let a = z(1)?;
            match k {
                0 => gamma0(&a, &ctx)?,
                1 => gamma1(&a, &ctx)?,
                2 => gamma2(&a, &ctx)?,
                _ => return Err(Error::Domain(format!("stieltjes supports k in {{0, 1, 2}}, got {k}")).into()),
            }
        }
        Function::Loggamma => log_gamma_series(&z(0)?, &ctx)?,
    };
    let runtime_ms = start.elapsed().as_millis() as u64;

    let digits = cli.digits as usize;
    let (value_re, value_im) = format::parts(&value.value, digits);
    let report = ComputeReport {
        function: function.name().into(),
        args: args.iter().map(|a| a.replace('\u{2212}', "-")).collect(),
        lambda: cli.lambda,
        digits: cli.digits,
        value_re,
        value_im,
        err: format::err(value.err),
        terms_used: value.terms_used,
        runtime_ms,
    };
    let mut out = std::io::stdout().lock();
    let _ = match cli.format {
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string(&report).expect("report serializes")),
        OutputFormat::Text => writeln!(
            out,
            "{}\nerr        {}\nterms_used {}\nruntime_ms {}",
            format::complex(&value.value, digits),
            report.err,
            report.terms_used,
            report.runtime_ms
        ),
    };
    Ok(())
}

fn verify(cli: &Cli, suite: SuiteArg) -> Result<(), Failure> {
    let ctx = context(cli)?;
    let suites: Vec<Suite> = match suite {
        SuiteArg::Identities => vec![Suite::Identities],
        SuiteArg::Stieltjes => vec![Suite::Stieltjes],
        SuiteArg::Gamma => vec![Suite::Gamma],
        SuiteArg::Contour => vec![Suite::Contour],
        SuiteArg::All => Suite::all().to_vec(),
    };
    let json = cli.format == OutputFormat::Json;
    let mut out = std::io::stdout().lock();
    let (mut passed, mut total) = (0usize, 0usize);
    if !json {
        let _ = writeln!(out, "{:<34} {:>10} {:>10} {:>8}  result", "identity", "|delta|", "tolerance", "ms");
    }
    for suite in suites {
        for check in checks::run_suite(suite, &ctx) {
            let report = VerificationReport::new(&check, &ctx);
            total += 1;
            passed += report.passed as usize;
            if json {
                let _ = writeln!(out, "{}", report.to_json());
            } else {
                let delta = report.abs_delta.map_or("-".to_string(), |d| format!("{d:.2e}"));
                let status = if report.passed { "PASS" } else { "FAIL" };
                let _ = write!(
                    out,
                    "{:<34} {:>10} {:>10.1e} {:>8}  {status}",
                    report.identity_id, delta, report.tolerance, report.runtime_ms
                );
                match &report.error {
                    Some(e) => writeln!(out, " ({e})"),
                    None => writeln!(out),
                }
                .ok();
            }
            let _ = out.flush();
        }
        if suite == Suite::Contour {
            for (label, value, err, candidate) in checks::contour_observations() {
                let guess = candidate.map_or("none".to_string(), |c| format!("{c:.6}"));
                eprintln!("observation {label}: {value:.6} (err {err:.1e}, candidate within tolerance {guess})");
            }
        }
    }
    if !json {
        let _ = writeln!(out, "{passed}/{total} passed");
    }
    if passed == total {
        Ok(())
    } else {
        Err(Failure::Verify)
    }
}

fn bench(cli: &Cli, function: BenchFunction, s: &str, a: &str, grid: &[f64]) -> Result<(), Failure> {
    let base = context(cli)?;
    let prec = base.working_bits;
    let s = parse_complex(s, prec)?;
    let a = parse_complex(a, prec)?;
    let json = cli.format == OutputFormat::Json;
    if !json {
        println!("{:>8} {:>12} {:>12} {:>8} {:>10}", "lambda", "incgamma", "coefficient", "total", "ms");
    }
    let mut best: Option<(f64, usize)> = None;
    for &lambda in grid {
        let ctx = base.clone().with_lambda(lambda);
        let start = Instant::now();
        let (value, terms): (Complex, SplitTerms) = match function {
            BenchFunction::Hurwitz => {
                let (v, t) = hurwitz_zeta_with_terms(&s, &a, &ctx)?;
                (v.value, t)
            }
            BenchFunction::Eta => {
                let (v, t) = eta_series(&s, &ctx)?;
                (v.value, t)
            }
        };
        let ms = start.elapsed().as_millis();
        let total = terms.incomplete_gamma + terms.coefficient;
        if best.map_or(true, |(_, n)| total < n) {
            best = Some((lambda, total));
        }
        if json {
            let row = serde_json::json!({
                "lambda": lambda,
                "incomplete_gamma_terms": terms.incomplete_gamma,
                "coefficient_terms": terms.coefficient,
                "total_terms": total,
                "runtime_ms": ms as u64,
                "value": format::complex(&value, cli.digits as usize),
            });
            println!("{row}");
        } else {
            println!(
                "{lambda:>8} {:>12} {:>12} {total:>8} {ms:>10}",
                terms.incomplete_gamma, terms.coefficient
            );
        }
    }
    if let Some((lambda, total)) = best {
        if json {
            println!("{}", serde_json::json!({ "best_lambda": lambda, "total_terms": total }));
        } else {
            println!("fewest terms at lambda = {lambda} ({total})");
        }
    }
    Ok(())
}
