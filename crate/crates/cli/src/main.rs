//! `khevo`: Khovanov and Jones polynomials of the double-braid family.
//!
//! Exit status: 0 on success, 1 when a verification finds a mismatch, 2 on
//! usage errors (including an even `b`).

mod render;

use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};

use khevo::bracket::{jones_evolution, jones_unreduced};
use khevo::diagram::{double_braid, DiagramDump, FamilyPoint};
use khevo::evolution::{chamber_relations_check, khovanov_evolution, newton_plane, signature_formula, Chamber};
use khevo::fitter::verify_fit;
use khevo::harness::{scan_breakdown, verify_grid};
use khevo::khovanov::homology_dims;
use khevo::lee::reconstruct_khovanov;

use render::{Format, Output};

#[derive(Parser)]
#[command(name = "khevo", version, about = "Exact Khovanov and Jones polynomials of the double-braid family")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON (the default, except for pd-export).
    #[arg(long, global = true, conflicts_with = "tsv")]
    json: bool,
    /// Emit tab-separated values.
    #[arg(long, global = true)]
    tsv: bool,
}

#[derive(Args, Clone, Copy)]
struct PointArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: i32,
    /// Must be odd.
    #[arg(long, allow_hyphen_values = true)]
    b: i32,
}

#[derive(Args, Clone, Copy)]
struct GridArgs {
    #[arg(long, default_value_t = 5)]
    amax: u32,
    #[arg(long, default_value_t = 5)]
    bmax: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum KhMethod {
    Oracle,
    Evolution,
    Lee,
}

#[derive(Clone, Copy, ValueEnum)]
enum JonesMethod {
    Oracle,
    Evolution,
}

#[derive(Subcommand)]
enum Command {
    /// Khovanov polynomial Kh(q, t).
    Kh {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum, default_value = "oracle")]
        method: KhMethod,
    },
    /// Unreduced Jones polynomial J(q).
    Jones {
        #[command(flatten)]
        point: PointArgs,
        #[arg(long, value_enum, default_value = "oracle")]
        method: JonesMethod,
    },
    /// Compare every route on a grid; exits 1 on any mismatch.
    VerifyGrid {
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Check the inter-chamber relations of the evolution matrices.
    Relations,
    /// Recover a chamber matrix from oracle data at seeded rational points.
    Fit {
        #[arg(long)]
        chamber: Chamber,
        #[arg(long, default_value_t = 3)]
        points: usize,
    },
    /// Monomials of a scaled matrix entry on the (q, t) Newton plane.
    Newton {
        #[arg(long)]
        chamber: Chamber,
        /// 1-based `row,col`.
        #[arg(long, value_parser = parse_entry)]
        entry: (usize, usize),
    },
    /// Export the diagram as PD text (or a JSON dump with --json).
    PdExport {
        #[command(flatten)]
        point: PointArgs,
    },
    /// Find where each chamber formula stops matching the oracle.
    ScanBreakdown {
        #[command(flatten)]
        grid: GridArgs,
    },
}

fn parse_entry(s: &str) -> Result<(usize, usize), String> {
    let (r, c) = s.split_once(',').ok_or("expected ROW,COL")?;
    let r = r.trim().parse().map_err(|e| format!("bad row: {e}"))?;
    let c = c.trim().parse().map_err(|e| format!("bad column: {e}"))?;
    Ok((r, c))
}

/// Failure classes mapped to exit codes.
enum Failure {
    Usage(String),
    Mismatch(Output),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

fn point(p: PointArgs) -> Result<FamilyPoint, Failure> {
    FamilyPoint::new(p.a, p.b).map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Kh { point: p, method } => {
            let pt = point(*p)?;
            let (name, kh, dims) = match method {
                KhMethod::Oracle => {
                    let dims = homology_dims(&double_braid(pt)).map_err(anyhow::Error::from)?;
                    ("oracle", dims.poincare(), Some(dims))
                }
                KhMethod::Evolution => ("evolution", khovanov_evolution(pt).map_err(anyhow::Error::from)?, None),
                KhMethod::Lee => {
                    let sigma = signature_formula(pt).map_err(|e| Failure::Usage(e.to_string()))?;
                    let j = jones_unreduced(&double_braid(pt)).map_err(anyhow::Error::from)?;
                    let kh = reconstruct_khovanov(&j, sigma, pt.a(), pt.b()).map_err(anyhow::Error::from)?;
                    ("lee", kh, None)
                }
            };
            Ok(Output::kh(pt, name, kh, dims))
        }
        Command::Jones { point: p, method } => {
            let pt = point(*p)?;
            let (name, j) = match method {
                JonesMethod::Oracle => ("oracle", jones_unreduced(&double_braid(pt)).map_err(anyhow::Error::from)?),
                JonesMethod::Evolution => ("evolution", jones_evolution(pt).map_err(anyhow::Error::from)?),
            };
            Ok(Output::jones(pt, name, j))
        }
        Command::VerifyGrid { grid } => {
            let report = verify_grid(grid.amax, grid.bmax).map_err(anyhow::Error::from)?;
            let passed = report.passed();
            let out = Output::Grid(report);
            if passed {
                Ok(out)
            } else {
                Err(Failure::Mismatch(out))
            }
        }
        Command::Relations => {
            let report = chamber_relations_check();
            let passed = report.iter().all(|r| r.passed);
            let out = Output::Relations(report);
            if passed {
                Ok(out)
            } else {
                Err(Failure::Mismatch(out))
            }
        }
        Command::Fit { chamber, points } => {
            let report = verify_fit(*chamber, *points).map_err(|e| Failure::Usage(e.to_string()))?;
            let passed = report.all_match();
            let out = Output::Fit(report);
            if passed {
                Ok(out)
            } else {
                Err(Failure::Mismatch(out))
            }
        }
        Command::Newton { chamber, entry } => {
            let pts = newton_plane(*chamber, entry.0, entry.1).map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(Output::Newton {
                chamber: *chamber,
                entry: *entry,
                points: pts,
            })
        }
        Command::PdExport { point: p } => {
            let d = double_braid(point(*p)?);
            Ok(Output::Diagram(DiagramDump::from(&d)))
        }
        Command::ScanBreakdown { grid } => {
            let report = scan_breakdown(grid.amax, grid.bmax).map_err(anyhow::Error::from)?;
            let passed = report.consistent();
            let out = Output::Breakdown(report);
            if passed {
                Ok(out)
            } else {
                Err(Failure::Mismatch(out))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match (cli.json, cli.tsv, &cli.command) {
        (_, true, _) => Format::Tsv,
        (true, _, _) => Format::Json,
        (false, false, Command::PdExport { .. }) => Format::Text,
        _ => Format::Json,
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.render(format));
            ExitCode::SUCCESS
        }
        Err(Failure::Mismatch(out)) => {
            print!("{}", out.render(format));
            eprintln!("error: verification mismatch");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
