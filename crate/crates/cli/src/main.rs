use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use cubic_spin::analysis::characters::{default_centers, pv_scales, pv_scan, sample_pv_moduli};
use cubic_spin::analysis::poisson::{poisson_check, primary_moduli, PoissonWindow};
use cubic_spin::analysis::sums::{cube_proportion, default_checkpoints, lambda3, spin_sum};
use cubic_spin::ideals::prime_ideals_up_to;
use cubic_spin::parse::{parse_eis, parse_z12};
use cubic_spin::spin::spin_ideal;
use cubic_spin::verify::{run_suite, Suite, VerifyConfig};
use cubic_spin::{cubic_symbol, Eis, Error, Z12};

mod table;

use table::{Cell, Table};

#[derive(Parser, Debug)]
#[command(
    name = "cubic-spin",
    version,
    about = "Cubic residue symbols and the cubic spin of prime ideals of Z[ζ12]"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Seed for every randomized computation.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Worker threads; output does not depend on this.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cubic residue symbol [A/B] of two Eisenstein integers `(a1,a2)`.
    Symbol { a: String, b: String },
    /// Spin of the ideal generated by `((r1,r2),(s1,s2))`.
    Spin { z: String },
    /// Prime ideals of norm at most `xmax`.
    Primes {
        #[arg(long, value_parser = parse_count)]
        xmax: u64,
    },
    /// Root counts of the spin sum at checkpoints.
    Sum {
        #[arg(long, value_parser = parse_count)]
        xmax: u64,
        /// Comma-separated cutoffs; defaults to powers of ten.
        #[arg(long, value_delimiter = ',', value_parser = parse_count)]
        checkpoints: Vec<u64>,
    },
    /// Proportion of primes π = r² + s² with r a cube mod π.
    CubeProp {
        #[arg(long, value_parser = parse_count)]
        xmax: u64,
        #[arg(long, value_delimiter = ',', value_parser = parse_count)]
        checkpoints: Vec<u64>,
    },
    /// λ3(n), printed as an integer when real.
    Lambda3 {
        #[arg(value_parser = parse_count)]
        n: u64,
    },
    /// Truncated Poisson summation for every primary q with N(q) ≤ qnorm.
    Poisson {
        #[arg(long, value_parser = parse_count)]
        qnorm: u64,
        #[arg(long = "K", value_delimiter = ',', default_value = "50,100")]
        k: Vec<f64>,
        /// Dual cutoff H; defaults to K^0.05·N(q)^(1/2)/K.
        #[arg(long)]
        h: Option<i64>,
    },
    /// Smoothed character sums for seeded random moduli.
    Pv {
        #[arg(long, value_parser = parse_count)]
        qnorm_max: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Seeded identity checks; exit status 1 if any sample fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, value_parser = parse_count, default_value = "2000")]
        norm_bound: u64,
    },
}

/// Integers written plainly or as `1e5`.
fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(f) if f >= 0.0 && f.fract() == 0.0 && f < 1.8e19 => Ok(f as u64),
        _ => Err(format!("expected a non-negative integer, got {s:?}")),
    }
}

enum Failure {
    Usage(String),
    Suite,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn literal<T>(what: &str, text: &str, r: cubic_spin::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Usage(format!("invalid {what} {text:?}: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = &cli.global;
    let workers = g
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
        .max(1);
    let header = format!("# seed={}\n", g.seed);
    let render = |t: Table| -> Result<String, Failure> {
        Ok(match g.format {
            Format::Csv => header.clone() + &t.to_csv()?,
            Format::Json => t.to_json() + "\n",
        })
    };
    let (text, ok) = match &cli.command {
        Command::Symbol { a, b } => {
            let a: Eis = literal("element", a, parse_eis(a))?;
            let b: Eis = literal("element", b, parse_eis(b))?;
            (format!("{}\n", cubic_symbol(&a, &b)?), true)
        }
        Command::Spin { z } => {
            let z: Z12 = literal("element", z, parse_z12(z))?;
            (format!("{}\n", spin_ideal(&z)?), true)
        }
        Command::Lambda3 { n } => {
            let l = lambda3(*n)?;
            let text = match l.real_value() {
                Some(v) => format!("{v}\n"),
                None => format!("{} + {}·w + {}·w^2\n", l.c1, l.cw, l.cw2),
            };
            (text, true)
        }
        Command::Primes { xmax } => {
            let mut t = Table::new(&["p", "f", "norm", "r1", "r2", "s1", "s2", "spin"]);
            for r in prime_ideals_up_to(*xmax, workers)? {
                let coords = match &r.gen {
                    Some(z) => [&z.r.a1, &z.r.a2, &z.s.a1, &z.s.a2].map(|c| Cell::Int(*c)),
                    None => [Cell::Empty, Cell::Empty, Cell::Empty, Cell::Empty],
                };
                let mut row = vec![
                    Cell::Int(r.p as i128),
                    Cell::Int(r.f as i128),
                    Cell::Int(r.norm as i128),
                ];
                row.extend(coords);
                row.push(Cell::Str(r.spin.to_string()));
                t.push(row);
            }
            (render(t)?, true)
        }
        Command::Sum { xmax, checkpoints } => {
            let cps = if checkpoints.is_empty() {
                default_checkpoints(*xmax)
            } else {
                checkpoints.clone()
            };
            let mut t = Table::new(&["x", "c1", "cw", "cw2", "zeros", "total", "re_S"]);
            for r in spin_sum(*xmax, &cps, workers)? {
                t.push(vec![
                    Cell::Int(r.x as i128),
                    Cell::Int(r.c1 as i128),
                    Cell::Int(r.cw as i128),
                    Cell::Int(r.cw2 as i128),
                    Cell::Int(r.zeros as i128),
                    Cell::Int(r.total as i128),
                    Cell::Float(r.re_s()),
                ]);
            }
            (render(t)?, true)
        }
        Command::CubeProp { xmax, checkpoints } => {
            let cps = if checkpoints.is_empty() {
                default_checkpoints(*xmax)
            } else {
                checkpoints.clone()
            };
            let mut t = Table::new(&["x", "hits", "total", "ratio"]);
            for r in cube_proportion(*xmax, &cps, workers)? {
                t.push(vec![
                    Cell::Int(r.x as i128),
                    Cell::Int(r.hits as i128),
                    Cell::Int(r.total as i128),
                    Cell::Float(r.ratio),
                ]);
            }
            (render(t)?, true)
        }
        Command::Poisson { qnorm, k, h } => {
            let jobs: Vec<(Eis, f64)> = primary_moduli(*qnorm)
                .into_iter()
                .flat_map(|q| k.iter().map(move |&k| (q.clone(), k)))
                .collect();
            let results = pool(workers).install(|| {
                jobs.par_iter()
                    .map(|(q, k)| poisson_check(&PoissonWindow::standard(q.clone(), *k), *h))
                    .collect::<Vec<_>>()
            });
            let mut t = Table::new(&["q_norm", "K", "abs_err", "rel_err"]);
            for r in results {
                let r = r?;
                t.push(vec![
                    Cell::Int(r.q_norm as i128),
                    Cell::Float(r.k),
                    Cell::Float(r.abs_err),
                    Cell::Float(r.rel_err),
                ]);
            }
            (render(t)?, true)
        }
        Command::Pv { qnorm_max, count } => {
            let qs = sample_pv_moduli(g.seed, *count, *qnorm_max)?;
            let results = pool(workers).install(|| {
                qs.par_iter()
                    .map(|q| {
                        let n = q.norm() as u64;
                        pv_scales(n)
                            .into_iter()
                            .map(|k| pv_scan(q, k, &default_centers(n, k)))
                            .collect::<cubic_spin::Result<Vec<_>>>()
                    })
                    .collect::<Vec<_>>()
            });
            let mut t = Table::new(&["q_norm", "K", "max_ratio"]);
            for r in results {
                for r in r? {
                    t.push(vec![
                        Cell::Int(r.q_norm as i128),
                        Cell::Float(r.k),
                        Cell::Float(r.max_ratio),
                    ]);
                }
            }
            (render(t)?, true)
        }
        Command::Verify {
            suite,
            samples,
            norm_bound,
        } => {
            let suites = Suite::parse(suite).ok_or_else(|| {
                Failure::Usage(format!(
                    "unknown suite {suite:?}; expected one of reciprocity, twist, units, pairsymbol, splitting, fixing, all"
                ))
            })?;
            let cfg = VerifyConfig {
                samples: *samples,
                norm_bound: *norm_bound,
                seed: g.seed,
                workers,
            };
            let mut text = header.clone();
            let mut ok = true;
            for s in suites {
                let report = run_suite(s, &cfg);
                ok &= report.passed();
                text += &serde_json::to_string(&report).expect("report serializes");
                text.push('\n');
            }
            (text, ok)
        }
    };
    match &g.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Suite)
    }
}

fn pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Suite) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
