//! Command-line interface for the WRP invariant of alternating links.

use std::io::Read;
use std::path::Path;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use wrp_core::diagram::build_diagram;
use wrp_core::flype::{apply_flype, find_flype_sites};
use wrp_core::invariant::wrp_of_diagram;
use wrp_core::medial::pd_twist;
use wrp_core::pd::{load_table, parse_pd, pd_torus2, serialize_pd, PdCode};
use wrp_core::table::{collision_report, compute_table, render_table, TableFormat as CoreFormat};
use wrp_core::DEFAULT_CYCLE_BUDGET;

#[derive(Parser)]
#[command(
    name = "wrp",
    about = "WRP invariant of alternating knots and links: the unordered pair of cycle-sum \
             polynomials of the two checkerboard graphs of a reduced diagram",
    after_help = "Set WRP_CYCLE_BUDGET to override the simple-cycle budget (default 10000000)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Txt,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the invariant of one diagram (PD string, file path, or '-' for stdin)
    Wrp {
        input: String,
        /// Emit the machine-readable term lists instead of the rendered pair
        #[arg(long)]
        json: bool,
    },
    /// Compute a whole table file to OUT
    Table {
        input: String,
        out: String,
        #[arg(long, value_enum, default_value = "txt")]
        format: Format,
        /// Also emit each entry's mirror
        #[arg(long)]
        mirrors: bool,
    },
    /// Group the entries of a table file by invariant value
    Collisions {
        input: String,
        #[arg(long)]
        mirrors: bool,
    },
    /// Check flype invariance for every entry of a table file
    FlypeCheck { input: String },
    /// Generate a PD code
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    /// Torus link T(2,k), all crossings positive
    Torus2 { k: u32 },
    /// Twist knot with a k-crossing twist region and a 2-crossing clasp
    Twist { k: u32 },
}

fn cycle_budget() -> u64 {
    std::env::var("WRP_CYCLE_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_CYCLE_BUDGET)
}

fn read_pd_input(input: &str) -> Result<PdCode> {
    let text = if input == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else if Path::new(input).is_file() {
        std::fs::read_to_string(input).with_context(|| format!("reading {input}"))?
    } else {
        input.to_string()
    };
    Ok(parse_pd(&text)?)
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    let budget = cycle_budget();
    match cli.command {
        Command::Wrp { input, json } => {
            let pd = read_pd_input(&input)?;
            let d = build_diagram(&pd)?;
            let out = wrp_of_diagram(&d, budget)?;
            if json {
                println!("{}", out.pair.render_json());
            } else {
                println!("{}", out.pair.render());
            }
            if !out.alternating {
                eprintln!(
                    "warning: diagram is not alternating; the value is not an invariant for this input"
                );
            }
            if out.prime_warning {
                eprintln!("warning: diagram may be a connected sum");
            }
            Ok(0)
        }
        Command::Table {
            input,
            out,
            format,
            mirrors,
        } => {
            let entries = load_table(&input)?;
            let table = compute_table(&entries, budget);
            let format = match format {
                Format::Txt => CoreFormat::Txt,
                Format::Csv => CoreFormat::Csv,
                Format::Json => CoreFormat::Json,
            };
            let rendered = render_table(&table, format, mirrors);
            std::fs::write(&out, rendered).with_context(|| format!("writing {out}"))?;
            let failed = table.iter().filter(|e| e.result.is_err()).count();
            if failed > 0 {
                eprintln!("{failed} entries failed");
                return Ok(1);
            }
            Ok(0)
        }
        Command::Collisions { input, mirrors } => {
            let entries = load_table(&input)?;
            let table = compute_table(&entries, budget);
            let report = collision_report(&table, mirrors);
            print!("{}", report.render_text());
            Ok(if report.failed.is_empty() { 0 } else { 1 })
        }
        Command::FlypeCheck { input } => {
            let entries = load_table(&input)?;
            let mut failures = 0usize;
            for (name, pd) in &entries {
                let outcome = (|| -> Result<(usize, bool)> {
                    let d = build_diagram(pd)?;
                    let base = wrp_of_diagram(&d, budget)?.pair;
                    let sites = find_flype_sites(&d)?;
                    let mut ok = true;
                    for site in &sites {
                        let flyped = apply_flype(&d, site)?;
                        if wrp_of_diagram(&flyped, budget)?.pair != base {
                            ok = false;
                        }
                    }
                    Ok((sites.len(), ok))
                })();
                match outcome {
                    Ok((sites, true)) => println!("{name}: sites={sites}, invariance=PASS"),
                    Ok((sites, false)) => {
                        println!("{name}: sites={sites}, invariance=FAIL");
                        failures += 1;
                    }
                    Err(e) => {
                        println!("{name}: error: {e}");
                        failures += 1;
                    }
                }
            }
            Ok(if failures == 0 { 0 } else { 1 })
        }
        Command::Gen { family } => {
            let pd = match family {
                GenFamily::Torus2 { k } => pd_torus2(k)?,
                GenFamily::Twist { k } => pd_twist(k)?,
            };
            println!("{}", serialize_pd(&pd));
            Ok(0)
        }
    }
}

fn main() {
    match run() {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}
