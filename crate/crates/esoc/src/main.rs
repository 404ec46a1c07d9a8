//! Thin command-line front end over [`esoc::harness`].

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use esoc::harness::{
    cmd_bench, cmd_gen, cmd_project, cmd_verify, BenchOptions, CaseMix, GenOptions,
};
use esoc::point::ConeDims;
use esoc::psi::{SolveMethod, SolverConfig};
use esoc::Error;

/// Batch projection onto the extended second order cone and its dual.
#[derive(Parser)]
#[command(name = "esoc", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Newton,
    Picard,
    Bisection,
    Enumeration,
}

impl From<MethodArg> for SolveMethod {
    fn from(value: MethodArg) -> Self {
        match value {
            MethodArg::Auto => SolveMethod::Auto,
            MethodArg::Newton => SolveMethod::Newton,
            MethodArg::Picard => SolveMethod::Picard,
            MethodArg::Bisection => SolveMethod::Bisection,
            MethodArg::Enumeration => SolveMethod::Enumeration,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CaseMixArg {
    Uniform,
    Case1,
    Case2,
    Case3,
}

impl From<CaseMixArg> for CaseMix {
    fn from(value: CaseMixArg) -> Self {
        match value {
            CaseMixArg::Uniform => CaseMix::Uniform,
            CaseMixArg::Case1 => CaseMix::Case1,
            CaseMixArg::Case2 => CaseMix::Case2,
            CaseMixArg::Case3 => CaseMix::Case3,
        }
    }
}

#[derive(Debug, Args)]
struct IoArgs {
    /// Input path; `-` reads stdin.
    #[arg(long, default_value = "-")]
    input: String,
    /// Output path; `-` writes stdout.
    #[arg(long, default_value = "-")]
    output: String,
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// Residual tolerance of the scalar solve, relative to `1 + ||w||`.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Iteration budget of the scalar solvers.
    #[arg(long, default_value_t = 200)]
    max_iter: usize,
    /// Starting iterate for Newton and Picard.
    #[arg(long, default_value_t = 1.0)]
    lambda0: f64,
}

impl SolverArgs {
    fn config(&self, method: SolveMethod) -> SolverConfig {
        SolverConfig {
            method,
            tol: self.tol,
            max_iter: self.max_iter,
            lambda0: self.lambda0,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Project each input record onto L, certify, and emit one record per line.
    Project {
        #[command(flatten)]
        io: IoArgs,
        /// Scalar solver for the general case.
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Emit a deterministic stream of random instances.
    Gen {
        /// Order-block size.
        #[arg(long)]
        p: usize,
        /// Norm-block size.
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Case distribution of the stream.
        #[arg(long, value_enum, default_value_t = CaseMixArg::Uniform)]
        case_mix: CaseMixArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; `-` writes stdout.
        #[arg(long, default_value = "-")]
        output: String,
    },
    /// Compare scalar solvers over the input instances, one row per pair.
    Bench {
        #[command(flatten)]
        io: IoArgs,
        /// Comma-separated subset of newton,picard,bisection,enumeration,auto.
        #[arg(long, default_value = "newton,picard,bisection,enumeration")]
        methods: String,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Recompute certificates for project output and fail on violations.
    Verify {
        #[command(flatten)]
        io: IoArgs,
        /// Relative certificate tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

fn open_input(path: &str) -> io::Result<Box<dyn BufRead>> {
    Ok(if path == "-" {
        Box::new(BufReader::new(io::stdin()))
    } else {
        Box::new(BufReader::new(File::open(path)?))
    })
}

fn open_output(path: &str) -> io::Result<Box<dyn Write>> {
    Ok(if path == "-" {
        Box::new(BufWriter::new(io::stdout()))
    } else {
        Box::new(BufWriter::new(File::create(path)?))
    })
}

fn parse_methods(list: &str) -> Result<Vec<SolveMethod>, Error> {
    let mut methods = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let method = match name {
            "auto" => SolveMethod::Auto,
            "newton" => SolveMethod::Newton,
            "picard" => SolveMethod::Picard,
            "bisection" => SolveMethod::Bisection,
            "enumeration" => SolveMethod::Enumeration,
            other => return Err(Error::Usage(format!("unknown method {other:?}"))),
        };
        methods.push(method);
    }
    if methods.is_empty() {
        return Err(Error::Usage("no methods requested".into()));
    }
    Ok(methods)
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Project { io, method, solver } => {
            let input = open_input(&io.input)?;
            let output = open_output(&io.output)?;
            let summary = cmd_project(input, output, &solver.config(method.into()))?;
            eprintln!(
                "project: {} records, {} failed",
                summary.records, summary.failures
            );
            Ok(summary.failures == 0)
        }
        Command::Gen {
            p,
            q,
            count,
            case_mix,
            seed,
            output,
        } => {
            let opts = GenOptions {
                dims: ConeDims::new(p, q)?,
                count,
                mix: case_mix.into(),
                seed,
            };
            cmd_gen(&opts, open_output(&output)?)?;
            Ok(true)
        }
        Command::Bench {
            io,
            methods,
            solver,
        } => {
            let opts = BenchOptions {
                methods: parse_methods(&methods)?,
                cfg: solver.config(SolveMethod::Auto),
            };
            let input = open_input(&io.input)?;
            let output = open_output(&io.output)?;
            let summary = cmd_bench(input, output, &opts)?;
            eprintln!(
                "bench: {} records, {} rows, {} failed",
                summary.records, summary.rows, summary.failures
            );
            eprintln!(
                "bench: picard precondition holds on {:.1}% of records",
                100.0 * summary.picard_fraction()
            );
            for (method, iterations) in &summary.max_iterations {
                eprintln!("bench: max iterations [{method}] = {iterations}");
            }
            Ok(summary.failures == 0)
        }
        Command::Verify { io, tol } => {
            let input = open_input(&io.input)?;
            let output = open_output(&io.output)?;
            let summary = cmd_verify(input, output, tol)?;
            eprintln!(
                "verify: {} records, {} failed (tol {tol:e})",
                summary.records, summary.failures
            );
            Ok(summary.failures == 0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("esoc: {err}");
            ExitCode::from(2)
        }
    }
}
