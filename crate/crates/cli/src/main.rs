//! `wkb`: command-line front end.

mod args;
mod commands;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;

use wkb_core::hardy::OdeConvention;
use wkb_core::prec::Precision;
use wkb_core::WkbError;

use args::{parse_complex, parse_pair};
use commands::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] WkbError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0} verification check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_numeric() => 3,
            CliError::ChecksFailed(_) => 3,
            _ => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "wkb", version, about = "Exact WKB analysis toolkit")]
struct Cli {
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write plot-ready CSV rows here.
    #[arg(long, global = true)]
    plot_data: Option<PathBuf>,
    /// Working precision in decimal digits (at least 15).
    #[arg(long, global = true, env = "TP_PRECISION", default_value_t = 16)]
    precision: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Borel-Pade sum of the Airy symbol against the contour integral.
    Airy {
        #[arg(long, value_parser = parse_complex, default_value = "1")]
        z: Complex64,
        /// One or more values; a list is evaluated as a sweep.
        #[arg(long, value_parser = parse_complex, num_args = 1.., required = true)]
        eps: Vec<Complex64>,
        #[arg(long, default_value_t = 24)]
        orders: usize,
        #[arg(long, value_parser = parse_pair)]
        pade: Option<(usize, usize)>,
    },
    /// Transport coefficients g_n for a potential F, with the Riccati cross-check.
    Transport {
        #[arg(long = "F")]
        f: Option<String>,
        #[arg(long, default_value_t = 8)]
        orders: usize,
    },
    /// Taylor solution of the singular PDE.
    Pde {
        #[arg(long = "F")]
        f: Option<String>,
        #[arg(long)]
        h: Option<String>,
        #[arg(long, value_parser = parse_pair, default_value = "20,20")]
        orders: (usize, usize),
        #[arg(long, default_value_t = 1.0)]
        r0: f64,
        #[arg(long, default_value_t = 2.0)]
        r1: f64,
        #[arg(long = "R", default_value_t = 10.0)]
        big_r: f64,
    },
    /// Confluent solution by contour integration of the PDE kernel.
    Confluent {
        #[arg(long = "F")]
        f: Option<String>,
        #[arg(long)]
        h: Option<String>,
        #[arg(long, value_parser = parse_complex)]
        z: Complex64,
        #[arg(long, value_parser = parse_complex, num_args = 1.., required = true)]
        eps: Vec<Complex64>,
        /// `default` or a JSON file with polyline nodes.
        #[arg(long, default_value = "default")]
        contour: String,
    },
    /// Borel-Pade sum of the transport symbol along a ray.
    Borel {
        #[arg(long = "F")]
        f: Option<String>,
        #[arg(long, value_parser = parse_complex)]
        z: Complex64,
        /// Branch of arg z (defaults to the principal one).
        #[arg(long, allow_hyphen_values = true)]
        arg: Option<f64>,
        #[arg(long, value_parser = parse_complex, num_args = 1.., required = true)]
        eps: Vec<Complex64>,
        #[arg(long, default_value_t = 24)]
        orders: usize,
        #[arg(long, value_parser = parse_pair)]
        pade: Option<(usize, usize)>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        phi: f64,
    },
    /// Stokes curves; polylines go to --plot-data.
    Stokes {
        #[arg(long = "V", default_value = "builtin:canonical")]
        v: String,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = 1.5)]
        extent: f64,
        #[arg(long, default_value_t = 0.02)]
        step: f64,
    },
    /// Liouville map, induced potential and reduction to Airy.
    Reduce {
        #[arg(long = "V")]
        v: String,
        #[arg(long, default_value_t = 6)]
        orders: usize,
    },
    /// Hardy polynomials S_n, T_n and optional evaluation of Phi_n.
    Hardy {
        #[arg(long)]
        n: usize,
        /// `z eps`
        #[arg(long, num_args = 2, value_parser = parse_complex)]
        eval: Option<Vec<Complex64>>,
        /// `eps2` (default) or `eps`.
        #[arg(long, default_value = "eps2")]
        convention: String,
    },
    /// Run a self-verification suite.
    Verify {
        #[arg(long, default_value = "identities")]
        suite: String,
    },
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let precision = Precision::new(cli.precision)?;
    match &cli.command {
        Command::Airy { z, eps, orders, pade } => commands::airy(*z, eps, *orders, *pade, precision),
        Command::Transport { f, orders } => commands::transport(f, *orders),
        Command::Pde { f, h, orders, r0, r1, big_r } => commands::pde(f, h, *orders, (*r0, *r1, *big_r)),
        Command::Confluent { f, h, z, eps, contour } => commands::confluent(f, h, *z, eps, contour, precision),
        Command::Borel { f, z, arg, eps, orders, pade, phi } => {
            commands::borel(f, *z, *arg, eps, *orders, *pade, *phi, precision)
        }
        Command::Stokes { v, alpha, extent, step } => commands::stokes(v, *alpha, *extent, *step),
        Command::Reduce { v, orders } => commands::reduce(v, *orders),
        Command::Hardy { n, eval, convention } => {
            let conv: OdeConvention = convention.parse()?;
            commands::hardy(*n, eval.as_ref().map(|p| (p[0], p[1])), conv, precision)
        }
        Command::Verify { suite } => {
            let checks = verify::suite(suite).ok_or_else(|| CliError::Usage(format!("unknown suite {:?}", suite)))?;
            let failed = checks.iter().filter(|c| !c.passed).count();
            let json = json!({"command": "verify", "suite": suite, "passed": failed == 0, "checks": checks});
            let mut csv = String::from("check,passed\n");
            for c in &checks {
                csv.push_str(&format!("{},{}\n", c.name, c.passed));
            }
            Ok(Report { json, csv: Some(csv) })
        }
    }
}

fn emit(cli: &Cli, report: &Report) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(&report.json).map_err(|e| CliError::Usage(e.to_string()))?;
    text.push('\n');
    match &cli.out {
        Some(p) => std::fs::write(p, &text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    if let Some(p) = &cli.plot_data {
        let csv = report.csv.as_ref().ok_or_else(|| CliError::Usage("this command has no plot data".into()))?;
        std::fs::write(p, csv)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli).and_then(|r| {
        emit(&cli, &r)?;
        match r.json.get("passed") {
            Some(serde_json::Value::Bool(false)) => {
                let n = r.json["checks"].as_array().map_or(0, |c| c.iter().filter(|x| x["passed"] == false).count());
                Err(CliError::ChecksFailed(n))
            }
            _ => Ok(()),
        }
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(e.exit_code())
        }
    }
}
