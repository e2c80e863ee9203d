use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use fracpow::experiments::{self, defaults, SchemeSpec, Source};
use fracpow::field_io::write_field;
use fracpow::Executor;
use fracpow_core::{MChoice, SolverConfig};

/// Quadrature approximations of fractional powers of the Dirichlet Laplacian.
#[derive(Parser, Debug)]
#[command(name = "fracpow", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for the node solves (1 runs inline).
    #[arg(long, global = true, env = "FRACPOW_THREADS")]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sup-errors of the graded rectangle rule over λ ≥ 10.
    Table1 {
        #[arg(long, value_delimiter = ',', default_values_t = defaults::BETAS)]
        beta: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = defaults::TABLE1_N)]
        n: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sup-errors of the dyadic Gauss rule over λ ≥ 10.
    Table2 {
        #[arg(long, value_delimiter = ',', default_values_t = defaults::BETAS)]
        beta: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = defaults::TABLE2_N)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, value_enum, default_value_t = MArg::Reported)]
        m_choice: MArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sup-errors of the equalized exponential rule over λ ≥ 10.
    Table3 {
        #[arg(long, value_delimiter = ',', default_values_t = defaults::BETAS)]
        beta: Vec<f64>,
        /// Steps; fractions such as 1/3 are accepted.
        #[arg(long, value_delimiter = ',', value_parser = parse_fraction,
              default_values = ["1", "1/2", "1/3", "1/4"])]
        k: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply the quadrature operator to a source and write the field file.
    Solve {
        #[arg(long)]
        beta: f64,
        /// Squares per side (taken from the file for a file source).
        #[arg(long)]
        mesh: Option<usize>,
        #[command(flatten)]
        scheme: SchemeArgs,
        /// `checkerboard`, `zero` or the path of a field file.
        #[arg(long, default_value = "checkerboard")]
        source: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Mesh convergence study against the sine series solution.
    Convergence {
        #[arg(long, value_delimiter = ',', default_values_t = defaults::CONVERGENCE_BETAS)]
        beta: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = defaults::CONVERGENCE_MESHES)]
        mesh: Vec<usize>,
        /// Fix the exponential step instead of choosing it from the error level.
        #[arg(long, value_parser = parse_fraction)]
        k: Option<f64>,
        #[arg(long, default_value_t = defaults::MODES)]
        modes: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the quadrature operator with the dense eigendecomposition.
    OracleCheck {
        #[arg(long)]
        beta: f64,
        #[arg(long, default_value_t = 16)]
        mesh: usize,
        #[command(flatten)]
        scheme: SchemeArgs,
    },
}

#[derive(Args, Debug)]
struct SchemeArgs {
    #[arg(long, value_enum, default_value_t = SchemeArg::Exp)]
    scheme: SchemeArg,
    /// Intervals for rect and gauss.
    #[arg(long, default_value_t = 63)]
    n: usize,
    /// Gauss points per interval.
    #[arg(long, default_value_t = 2)]
    r: usize,
    /// Exponential step.
    #[arg(long, value_parser = parse_fraction, default_value = "1/3")]
    k: f64,
    /// Symmetric exponential rule instead of the equalized one.
    #[arg(long)]
    symmetric: bool,
}

impl SchemeArgs {
    fn spec(&self) -> SchemeSpec {
        match self.scheme {
            SchemeArg::Rect => SchemeSpec::Rect { n: self.n },
            SchemeArg::Gauss => SchemeSpec::Gauss {
                n: self.n,
                r: self.r,
                m_choice: MChoice::PerIntegral,
            },
            SchemeArg::Exp => SchemeSpec::Exp {
                k: self.k,
                equalize: !self.symmetric,
            },
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SchemeArg {
    Rect,
    Gauss,
    Exp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MArg {
    Combined,
    PerIntegral,
    Reported,
}

impl From<MArg> for MChoice {
    fn from(m: MArg) -> Self {
        match m {
            MArg::Combined => MChoice::Combined,
            MArg::PerIntegral => MChoice::PerIntegral,
            MArg::Reported => MChoice::Reported,
        }
    }
}

fn parse_fraction(s: &str) -> Result<f64, String> {
    let v = match s.split_once('/') {
        Some((a, b)) => {
            let a: f64 = a.trim().parse().map_err(|e| format!("{s}: {e}"))?;
            let b: f64 = b.trim().parse().map_err(|e| format!("{s}: {e}"))?;
            a / b
        }
        None => s.trim().parse().map_err(|e| format!("{s}: {e}"))?,
    };
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{s}: expected a positive number"))
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn run(cli: Cli) -> Result<()> {
    let exec = Executor::with_threads(cli.threads).context("building the thread pool")?;
    let config = SolverConfig::default();
    match cli.command {
        Command::Table1 { beta, n, out } => {
            experiments::write_table(output(&out)?, &experiments::table1(&beta, &n)?)?
        }
        Command::Table2 {
            beta,
            n,
            r,
            m_choice,
            out,
        } => experiments::write_table(
            output(&out)?,
            &experiments::table2(&beta, &n, r, m_choice.into())?,
        )?,
        Command::Table3 { beta, k, out } => {
            experiments::write_table(output(&out)?, &experiments::table3(&beta, &k)?)?
        }
        Command::Solve {
            beta,
            mesh,
            scheme,
            source,
            out,
        } => {
            let source = match source.as_str() {
                "checkerboard" => Source::Checkerboard,
                "zero" => Source::Zero,
                path => Source::File(PathBuf::from(path)),
            };
            let result = experiments::solve(beta, scheme.spec(), mesh, &source, &config, &exec)?;
            let file = File::create(&out).with_context(|| format!("creating {}", out.display()))?;
            write_field(file, &result.mesh, &result.field)?;
            let r = &result.report;
            eprintln!(
                "{}: nsys {} cg iterations max {} total {} max residual {:e} time {:.3?}",
                r.scheme,
                r.nsys_executed,
                r.max_cg_iterations,
                r.total_cg_iterations,
                r.max_relative_residual,
                r.wall_time.unwrap_or_default()
            );
        }
        Command::Convergence {
            beta,
            mesh,
            k,
            modes,
            out,
        } => {
            let mut studies = Vec::with_capacity(beta.len());
            for b in beta {
                let s = experiments::convergence(b, &mesh, modes, k, &config, &exec)?;
                eprintln!(
                    "beta {}: AROC {:.3} (expected {:.2}), k = 1/{:.0}, nsys {}, quadrature bound {:.2e}, series tail bound {:.2e}",
                    s.beta,
                    s.aroc,
                    s.expected_rate,
                    1.0 / s.k,
                    s.nsys,
                    s.quadrature_bound,
                    s.series_tail_bound
                );
                studies.push(s);
            }
            experiments::write_convergence(output(&out)?, &studies)?;
        }
        Command::OracleCheck { beta, mesh, scheme } => {
            let c = experiments::oracle_check(beta, mesh, scheme.spec(), &config, &exec)?;
            println!(
                "{} dofs {} lambda_min {:.6} relative error {:.3e} bound {:.3e}{}",
                c.scheme,
                c.dofs,
                c.lambda_min,
                c.relative_error,
                c.bound,
                if c.rate_only { " (rate only)" } else { "" }
            );
            if !c.within_bound() {
                bail!("quadrature error exceeds the operator bound");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
