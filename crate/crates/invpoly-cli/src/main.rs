use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use invpoly::pipeline::{
    analyze_matrix_json, analyze_poly_text, analyze_weights, emit_report, load_list, reproduce_table, scan,
    verify_suite, EmitFormat, InputFormat, ScanReport,
};
use invpoly::{bh_transpose, enumerate_monomials, h0, parse_poly, WeightSystem};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;

#[derive(Parser)]
#[command(name = "invpoly", version, about = "Link invariants and moduli counts for invertible polynomials in five variables")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze one polynomial, exponent matrix, or weight system
    Analyze {
        #[arg(long, conflicts_with_all = ["matrix", "weights"])]
        poly: Option<String>,
        /// 5x5 JSON array of exponents
        #[arg(long, conflicts_with = "weights")]
        matrix: Option<String>,
        #[arg(long, value_parser = parse_weights, requires = "degree")]
        weights: Option<[u64; 5]>,
        #[arg(long)]
        degree: Option<u64>,
    },
    /// Count (or list) monomials of weighted degree k
    H0 {
        #[arg(long, value_parser = parse_weights)]
        weights: [u64; 5],
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long)]
        list: bool,
    },
    /// Print the Berglund-Hubsch transpose of a polynomial
    Transpose {
        #[arg(long)]
        poly: String,
    },
    /// Analyze a list of weight systems
    Scan {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "csv")]
        format: String,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        emit: String,
    },
    /// Run a generated property suite
    Verify {
        #[arg(long)]
        suite: String,
    },
    /// Recompute the reference table of dual weight systems
    Table {
        #[arg(long, default_value = "markdown")]
        emit: String,
    },
}

/// `W0,W1,W2,W3,W4`, all positive.
fn parse_weights(s: &str) -> Result<[u64; 5], String> {
    let w: Vec<u64> = s
        .split(',')
        .map(|f| match f.trim().parse::<u64>() {
            Ok(0) | Err(_) => Err(format!("'{}' is not a positive integer", f.trim())),
            Ok(v) => Ok(v),
        })
        .collect::<Result<_, _>>()?;
    w.try_into().map_err(|w: Vec<u64>| format!("expected 5 weights, found {}", w.len()))
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT)
}

fn run(cli: Cli) -> ExitCode {
    match cli.cmd {
        Cmd::Analyze { poly, matrix, weights, degree } => {
            let row = if let Some(p) = poly {
                analyze_poly_text(&p)
            } else if let Some(m) = matrix {
                analyze_matrix_json(&m)
            } else if let (Some(w), Some(d)) = (weights, degree) {
                WeightSystem::new(w, d).map(analyze_weights)
            } else {
                return input_error("one of --poly, --matrix or --weights/--degree is required");
            };
            match row {
                Ok(row) => {
                    let failed = matches!(row.status, invpoly::pipeline::RowStatus::Error(_));
                    print!("{}", emit_report(&ScanReport { rows: vec![row] }, EmitFormat::Json));
                    if failed {
                        ExitCode::from(EXIT_INPUT)
                    } else {
                        ExitCode::SUCCESS
                    }
                }
                Err(e) => input_error(e),
            }
        }
        Cmd::H0 { weights, k, list } => {
            if list {
                for x in enumerate_monomials(&weights, k).solutions {
                    println!("{}", x.map(|e| e.to_string()).join(" "));
                }
            } else {
                println!("{}", h0(&weights, k));
            }
            ExitCode::SUCCESS
        }
        Cmd::Transpose { poly } => match parse_poly(&poly).and_then(|p| bh_transpose(&p)) {
            Ok(t) => {
                println!("{t}");
                ExitCode::SUCCESS
            }
            Err(e) => input_error(e),
        },
        Cmd::Scan { input, format, out, emit } => {
            let (format, emit) = match (format.parse::<InputFormat>(), emit.parse::<EmitFormat>()) {
                (Ok(f), Ok(e)) => (f, e),
                (Err(e), _) | (_, Err(e)) => return input_error(e),
            };
            let rows = match load_list(&input, format) {
                Ok(r) => r,
                Err(e) => return input_error(e),
            };
            let text = emit_report(&scan(&rows), emit);
            match out {
                Some(path) => {
                    if let Err(e) = fs::write(&path, text) {
                        return input_error(format!("{}: {e}", path.display()));
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Cmd::Verify { suite } => match verify_suite(&suite) {
            Ok(report) => {
                for f in &report.failures {
                    println!("FAIL {f}");
                }
                let verdict = if report.passed() { "PASS" } else { "FAIL" };
                println!("{verdict} {}: {} instances, {} failures", report.suite, report.checked, report.failures.len());
                if report.passed() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(EXIT_FAIL)
                }
            }
            Err(e) => input_error(e),
        },
        Cmd::Table { emit } => {
            let emit = match emit.parse::<EmitFormat>() {
                Ok(e) => e,
                Err(e) => return input_error(e),
            };
            let check = reproduce_table();
            match emit {
                EmitFormat::Json => println!("{}", serde_json::to_string_pretty(&check).expect("serializable")),
                _ => {
                    println!("| w̃ | d̃ | m₃ | h⁰ | Σ | μ_R |\n|---|---|---|---|---|---|");
                    for r in &check.rows {
                        let w = r.fixture.weights.map(|x| x.to_string()).join(",");
                        let m3 = r.m3.map_or_else(|| "-".to_string(), |m| m.to_string());
                        println!("| ({w}) | {} | {m3} | {} | {} | {} |", r.fixture.degree, r.h0, r.sum_h0, r.mu_real);
                    }
                }
            }
            for d in &check.diffs {
                eprintln!("diff: {d}");
            }
            if check.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse())
}
