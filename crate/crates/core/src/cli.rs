//! The `sqfree` command line.
//!
//! Exit status is 0 on success, 2 on a usage error and 1 when a computation
//! fails. With `--json` every subcommand prints exactly one JSON object,
//! tagged `"schema": 1`, on standard output.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::approx::squarefree_approx;
use crate::error::Error;
use crate::gf2poly::PolyF2;
use crate::irreducibles::IrreducibleTable;
use crate::oracle::{nearest_squarefree_with, scan, write_csv, ScanMode};
use crate::zarith::{kfree_construct_with, kfree_verify, lift_squarefree, PolyZ};

pub const SCHEMA_VERSION: u32 = 1;
pub const THREADS_ENV: &str = "SQFREE_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "sqfree",
    version,
    about = "Nearby squarefree polynomials over GF(2) and Z"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Approximate f by a squarefree polynomial of the same degree.
    Approx {
        #[arg(long, value_parser = parse_f2)]
        poly: PolyF2,
        #[arg(long, value_parser = parse_epsilon)]
        epsilon: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Test whether f is squarefree.
    Check {
        #[arg(long, value_parser = parse_f2)]
        poly: PolyF2,
        #[command(flatten)]
        out: Output,
    },
    /// Exact distance from f to the nearest squarefree polynomial.
    Oracle {
        #[arg(long, value_parser = parse_f2)]
        poly: PolyF2,
        /// Only consider candidates of the same degree as f.
        #[arg(long)]
        exact_degree: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Histogram of oracle distances over inputs of one degree.
    Scan {
        #[arg(long)]
        degree: u32,
        #[arg(long, conflicts_with_all = ["samples", "seed"])]
        exhaustive: bool,
        #[arg(long, required_unless_present = "exhaustive")]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write `degree,distance,count` rows here (`-` for standard output).
        #[arg(long)]
        csv: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Count the irreducible polynomials of each degree up to t.
    Irr {
        #[arg(long)]
        max_degree: u32,
        /// Also list every irreducible polynomial in hex.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Build a degree-n polynomial none of whose length-one neighbours is k-free.
    Kfree(KfreeArgs),
    /// Squarefree approximation in Z[x] via reduction modulo 2.
    Lift {
        /// JSON array of decimal coefficients, constant term first.
        #[arg(long, value_parser = parse_z)]
        poly: PolyZ,
        #[arg(long, value_parser = parse_epsilon)]
        epsilon: f64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Args)]
struct KfreeArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    n: u64,
    #[arg(long, allow_hyphen_values = true)]
    a: BigInt,
    #[arg(long, allow_hyphen_values = true)]
    b: BigInt,
    /// Check every neighbour for divisibility by one of the moduli.
    #[arg(long)]
    verify: bool,
    /// Permit n below N0; only verification can then confirm the result.
    #[arg(long)]
    allow_below_n0: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Debug, Args, Clone, Copy)]
struct Output {
    #[arg(long)]
    json: bool,
}

fn parse_f2(s: &str) -> Result<PolyF2, String> {
    s.parse::<PolyF2>().map_err(|e| e.to_string())
}

fn parse_z(s: &str) -> Result<PolyZ, String> {
    PolyZ::from_json(s).map_err(|e| e.to_string())
}

fn parse_epsilon(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(e) if e.is_finite() && e > 0.0 => Ok(e),
        Ok(e) => Err(format!("epsilon must be a positive real, got {e}")),
        Err(e) => Err(e.to_string()),
    }
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::OutOfRange(_)
            | Error::DegreeTooSmall { .. }
            | Error::NotPrime(_) => Failure::Usage(e.to_string()),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                2
            } else {
                let _ = write!(stdout, "{text}");
                0
            };
        }
    };
    let pool = match thread_pool() {
        Ok(pool) => pool,
        Err(msg) => {
            let _ = writeln!(stderr, "error: {msg}");
            return 2;
        }
    };
    let mut buffer = Vec::new();
    let outcome = pool.install(|| execute(cli.command, &mut buffer));
    if stdout
        .write_all(&buffer)
        .and_then(|_| stdout.flush())
        .is_err()
    {
        return 1;
    }
    match outcome {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Compute(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(value) = std::env::var(THREADS_ENV) {
        let n: usize = value
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {value:?}"))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| e.to_string())
}

fn emit_json(stdout: &mut Vec<u8>, mut payload: Value) -> Result<(), Failure> {
    payload["schema"] = json!(SCHEMA_VERSION);
    let text = serde_json::to_string(&payload).map_err(|e| Failure::Compute(e.to_string()))?;
    writeln!(stdout, "{text}")?;
    Ok(())
}

fn execute(command: Command, stdout: &mut Vec<u8>) -> Result<(), Failure> {
    match command {
        Command::Approx { poly, epsilon, out } => {
            let (g, cert) = squarefree_approx(&poly, epsilon)?;
            if out.json {
                return emit_json(stdout, json!({ "g": g, "certificate": cert }));
            }
            writeln!(stdout, "g = {}", g.to_hex())?;
            writeln!(stdout, "distance = {}", cert.total_dist)?;
            if cert.fallback_used {
                writeln!(stdout, "(exhaustive fallback)")?;
            } else {
                let p = &cert.params;
                writeln!(stdout, "t = {}, window = {}", p.t, p.window)?;
                for (name, d, bound) in [
                    ("stage1", cert.stage1_dist, p.stage1_bound()),
                    ("stage2", cert.stage2_dist, p.stage2_bound()),
                    ("stage3", cert.stage3_dist, p.stage3_bound()),
                ] {
                    writeln!(stdout, "{name} = {} (bound {bound})", d.unwrap_or(0))?;
                }
            }
        }
        Command::Check { poly, out } => {
            let squarefree = poly.is_squarefree();
            if out.json {
                return emit_json(stdout, json!({ "squarefree": squarefree }));
            }
            writeln!(
                stdout,
                "{}",
                if squarefree {
                    "squarefree"
                } else {
                    "not squarefree"
                }
            )?;
        }
        Command::Oracle {
            poly,
            exact_degree,
            out,
        } => {
            let r = nearest_squarefree_with(&poly, exact_degree)?;
            if out.json {
                return emit_json(stdout, serde_json::to_value(&r).expect("serializable"));
            }
            writeln!(stdout, "distance = {}", r.distance)?;
            writeln!(stdout, "witness = {}", r.witness.to_hex())?;
            writeln!(stdout, "ties = {}", r.ties)?;
        }
        Command::Scan {
            degree,
            exhaustive,
            samples,
            seed,
            csv,
            out,
        } => {
            let mode = if exhaustive {
                ScanMode::Exhaustive
            } else {
                ScanMode::Sampled {
                    count: samples.expect("clap enforces --samples"),
                    seed,
                }
            };
            let report = scan(degree, mode)?;
            match csv.as_deref() {
                Some("-") => return Ok(write_csv(&report, stdout)?),
                Some(path) => write_csv(&report, std::fs::File::create(path)?)?,
                None => {}
            }
            if out.json {
                return emit_json(stdout, serde_json::to_value(&report).expect("serializable"));
            }
            writeln!(
                stdout,
                "degree {} ({}, {} inputs)",
                report.degree, report.mode, report.sample_count
            )?;
            for (d, c) in &report.histogram {
                writeln!(stdout, "  distance {d}: {c}")?;
            }
            writeln!(stdout, "max distance {}", report.max_distance)?;
        }
        Command::Irr {
            max_degree,
            list,
            out,
        } => {
            let table = IrreducibleTable::enumerate(max_degree)?;
            if out.json {
                let mut payload = json!({
                    "max_degree": max_degree,
                    "counts": table.counts(),
                    "total": table.len(),
                });
                if list {
                    payload["polynomials"] =
                        json!(table.iter().map(|p| p.to_hex()).collect::<Vec<_>>());
                }
                return emit_json(stdout, payload);
            }
            for c in table.counts() {
                writeln!(stdout, "{:>3} {}", c.degree, c.count)?;
            }
            writeln!(stdout, "total {}", table.len())?;
            if list {
                for p in table.iter() {
                    writeln!(stdout, "{}", p.to_hex())?;
                }
            }
        }
        Command::Kfree(args) => {
            let w = kfree_construct_with(args.k, args.n, &args.a, &args.b, args.allow_below_n0)?;
            let report = if args.verify {
                Some(kfree_verify(&w)?)
            } else {
                None
            };
            if args.out.json {
                return emit_json(stdout, json!({ "witness": w, "verification": report }));
            }
            writeln!(
                stdout,
                "k = {}, N = {}, N0 = {}, n = {}",
                w.k, w.big_n, w.n0, w.n
            )?;
            writeln!(stdout, "F = {}", w.f)?;
            if w.degenerate {
                writeln!(stdout, "warning: a = b = 0, F is just g")?;
            }
            if let Some(r) = report {
                writeln!(stdout, "verified {} neighbours", r.checked)?;
            }
        }
        Command::Lift { poly, epsilon, out } => {
            let r = lift_squarefree(&poly, epsilon)?;
            if out.json {
                return emit_json(stdout, serde_json::to_value(&r).expect("serializable"));
            }
            writeln!(stdout, "g = {}", r.g.to_json())?;
            writeln!(stdout, "distance = {}", r.dist)?;
        }
    }
    Ok(())
}
