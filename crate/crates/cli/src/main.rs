use std::process::ExitCode;

use clap::{Parser, Subcommand};

use g2skt::checks::{reports_json, run_checks, Fixtures, Status};
use g2skt::emit::emit;
use g2skt::metric::{evaluate_metric, parse_params};
use g2skt::numeric::{group_check, sample, FloatModel, SampleConfig, DEFAULT_TOL, GROUP_TOL};
use g2skt::CliError;
use g2skt_core::context::Context;
use g2skt_core::scalar::parse_rational;
use g2skt_core::Error;

#[derive(Parser)]
#[command(name = "g2skt", version, about = "Exact certificates for the left-invariant SKT metrics on G2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every exact certificate (and one float cross-check).
    CheckAll {
        /// Run a single check by id.
        #[arg(long)]
        only: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the SKT metric at (a1, a2, a3); rationals like 7/3 are accepted.
    Metric {
        #[arg(allow_hyphen_values = true)]
        a1: String,
        #[arg(allow_hyphen_values = true)]
        a2: String,
        #[arg(allow_hyphen_values = true)]
        a3: String,
        #[arg(long)]
        json: bool,
    },
    /// Random parameters checked in double precision.
    Sample {
        /// Number of accepted points wanted.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Six bounds `lo1,hi1,lo2,hi2,lo3,hi3`; rationals allowed.
        #[arg(long = "box", value_name = "BOUNDS")]
        bounds: Option<String>,
        /// Evaluate `a1,a2,a3` instead of drawing.
        #[arg(long)]
        point: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Matrix exponentials of random algebra elements against the group facts.
    GroupCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = GROUP_TOL)]
        tol: f64,
        #[arg(long)]
        json: bool,
    },
    /// Print a computed table.
    Emit {
        table: String,
        #[arg(long)]
        json: bool,
    },
}

fn floats<const K: usize>(s: &str, what: &str) -> Result<[f64; K], CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != K {
        return Err(CliError::BadInput(format!("{what} needs {K} comma-separated values")));
    }
    let mut out = [0.0; K];
    for (o, p) in out.iter_mut().zip(parts) {
        let q = parse_rational(p).map_err(|e| CliError::BadInput(e.to_string()))?;
        *o = num_traits::ToPrimitive::to_f64(&q).ok_or_else(|| CliError::BadInput(format!("{p} overflows")))?;
    }
    Ok(out)
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialize"));
}

fn code(pass: bool) -> ExitCode {
    ExitCode::from(if pass { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::CheckAll { only, json } => {
            let reports = run_checks(&Fixtures::default(), only.as_deref())?;
            if json {
                print_json(&reports_json(&reports));
            } else {
                for r in &reports {
                    println!("{}", r.render_text());
                }
                let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
                println!("{passed}/{} checks passed", reports.len());
            }
            Ok(code(reports.iter().all(|r| r.status == Status::Pass)))
        }
        Command::Metric { a1, a2, a3, json } => {
            let a = parse_params(&a1, &a2, &a3)?;
            let report = evaluate_metric(Context::global(), &a)?;
            if json {
                print_json(&report.to_json());
            } else {
                print!("{}", report.render_text());
            }
            Ok(code(report.all_pass()))
        }
        Command::Sample {
            n,
            seed,
            tol,
            bounds,
            point,
            json,
        } => {
            let mut cfg = SampleConfig::new(n, seed);
            cfg.tol = tol;
            if let Some(b) = bounds {
                let v: [f64; 6] = floats(&b, "--box")?;
                cfg.bounds = [(v[0], v[1]), (v[2], v[3]), (v[4], v[5])];
            }
            if let Some(p) = point {
                cfg.point = Some(floats(&p, "--point")?);
            }
            cfg.validate()?;
            let model = FloatModel::new(Context::global());
            let report = sample(&model, &cfg)?;
            if json {
                print_json(&report.to_json());
            } else {
                print!("{}", report.render_text());
            }
            if report.accepted() == 0 {
                eprintln!("warning: no sample landed in the SKT region");
            }
            Ok(code(report.all_pass()))
        }
        Command::GroupCheck { n, seed, tol, json } => {
            let model = FloatModel::new(Context::global());
            let report = group_check(&model, n, seed, tol)?;
            if json {
                print_json(&report.to_json());
            } else {
                print!("{}", report.render_text());
            }
            Ok(code(report.pass() && report.control_rejected()))
        }
        Command::Emit { table, json } => {
            print!("{}", emit(Context::global(), &table, json)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(c) => c,
        Err(CliError::Core(Error::OutsideRegion(v))) => {
            println!("region: outside ({v})");
            eprintln!("error: parameters outside the SKT region: {v}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
