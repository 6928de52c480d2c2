//! Command line interface.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::json;

use crate::basis::{build_basis, pairing_table, verify_against_reference, LineStatus};
use crate::block::{assemble_problem, SdpProblem};
use crate::error::{Error, Result};
use crate::oracle::{compare_all_blocks, full_problem, psd_equivalence_trial, VECTOR_CAP};
use crate::orbit::enumerate_orbits;
use crate::sdpa::{bound_report, run_solver, write_sdpa, Scaling, SolverConfig, WriteOptions, SOLVER_ENV};

#[derive(Parser, Debug)]
#[command(name = "quadbound", version, about = "Semidefinite upper bounds on q-ary code sizes from quadruples of codewords")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Params {
    /// Alphabet size.
    #[arg(long)]
    q: usize,
    /// Word length.
    #[arg(long)]
    n: usize,
    /// Minimum distance.
    #[arg(long)]
    d: usize,
}

#[derive(Args, Debug, Clone)]
struct ScalingArgs {
    /// Write the blocks without power-of-two rescaling.
    #[arg(long, conflicts_with = "density_log2")]
    no_scaling: bool,
    /// Rescale around codes of density 2^K (default from the Hamming ball volume).
    #[arg(long, value_name = "K", allow_hyphen_values = true)]
    density_log2: Option<i32>,
}

impl ScalingArgs {
    fn scaling(&self) -> Scaling {
        match (self.no_scaling, self.density_log2) {
            (true, _) => Scaling::None,
            (false, Some(k)) => Scaling::Density(k),
            (false, None) => Scaling::Auto,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Assemble the reduced SDP and write it in sparse SDPA format.
    Generate {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        manifest: Option<PathBuf>,
        /// Entries above this magnitude get a decimal rescaling.
        #[arg(long, default_value_t = 1u64 << 53)]
        magnitude_cap: u64,
        /// Write the unreduced problem instead (toy sizes only).
        #[arg(long)]
        unreduced: bool,
        #[command(flatten)]
        scaling: ScalingArgs,
    },
    /// Generate, run the external solver, and print the bound report.
    Solve {
        #[command(flatten)]
        params: Params,
        #[arg(long, env = SOLVER_ENV)]
        solver: PathBuf,
        /// Extra argument passed to the solver before the file names.
        #[arg(long = "solver-arg", allow_hyphen_values = true)]
        solver_args: Vec<String>,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Directory for the problem, manifest and solution files.
        #[arg(long)]
        workdir: Option<PathBuf>,
        #[arg(long)]
        time_limit: Option<f64>,
        #[arg(long, default_value_t = 1e-4)]
        tolerance: f64,
        /// Treat a partial-success exit (status 3) as a solver failure.
        #[arg(long)]
        strict: bool,
        #[arg(long)]
        unreduced: bool,
        #[command(flatten)]
        scaling: ScalingArgs,
    },
    /// Cross-check the reduction against the explicit construction.
    Verify {
        #[command(flatten)]
        params: Params,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the pairing table and its check against the reference expansions.
    Tables {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        json: bool,
    },
    /// Dump the orbit catalog.
    Orbits {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        json: bool,
    },
}

/// Runs the CLI; returns the process exit status.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InvalidParameter(_) => 2,
                _ => 1,
            }
        }
    }
}

fn build(params: &Params, unreduced: bool) -> Result<SdpProblem> {
    if unreduced {
        full_problem(params.q, params.n, params.d)
    } else {
        assemble_problem(params.q, params.n, params.d)
    }
}

fn write_problem(problem: &SdpProblem, out: &Path, manifest: Option<&Path>, options: &WriteOptions) -> Result<()> {
    let mut w = BufWriter::new(File::create(out)?);
    let summary = write_sdpa(problem, &mut w, options)?;
    w.flush()?;
    if let Some(m) = manifest {
        let text = serde_json::to_string_pretty(&problem.manifest(&summary))?;
        fs::write(m, text + "\n")?;
    }
    Ok(())
}

fn print_json(v: &serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn run(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::Generate { params, out, manifest, magnitude_cap, unreduced, scaling } => {
            let problem = build(&params, unreduced)?;
            let options = WriteOptions { magnitude_cap: BigInt::from(magnitude_cap), scaling: scaling.scaling() };
            write_problem(&problem, &out, manifest.as_deref(), &options)?;
            eprintln!(
                "wrote {} ({} variables, {} blocks, largest {})",
                out.display(),
                problem.num_variables(),
                problem.blocks.len() + 1,
                problem.max_block_size()
            );
            Ok(0)
        }
        Cmd::Solve { params, solver, solver_args, json, workdir, time_limit, tolerance, strict, unreduced, scaling } => {
            let config = SolverConfig { executable: solver, args: solver_args, time_limit, tolerance, accept_partial: !strict };
            config.validate()?;
            let dir = workdir.unwrap_or_else(|| {
                std::env::temp_dir().join(format!("quadbound-{}-{}-{}-{}", params.q, params.n, params.d, std::process::id()))
            });
            fs::create_dir_all(&dir)?;
            let stem = format!("q{}n{}d{}{}", params.q, params.n, params.d, if unreduced { "-full" } else { "" });
            let problem_path = dir.join(format!("{stem}.dat-s"));
            let problem = build(&params, unreduced)?;
            let options = WriteOptions { scaling: scaling.scaling(), ..Default::default() };
            write_problem(&problem, &problem_path, Some(&dir.join(format!("{stem}.json"))), &options)?;
            let run = run_solver(&problem_path, &config)?;
            let report = bound_report(&run, &problem, &config)?;
            let value = serde_json::to_value(&report)?;
            if let Some(p) = json {
                fs::write(p, serde_json::to_string_pretty(&value)? + "\n")?;
            }
            print_json(&value)?;
            Ok(if report.trusted { 0 } else { 3 })
        }
        Cmd::Verify { params, trials, seed, json } => {
            let Params { q, n, d } = params;
            let trial = psd_equivalence_trial(q, n, d, trials, seed)?;
            let entries = if q.checked_pow(n as u32).is_some_and(|s| s <= VECTOR_CAP) {
                let (cells, mismatches) = compare_all_blocks(q, n, d)?;
                Some(json!({ "cells": cells, "mismatches": mismatches }))
            } else {
                None
            };
            let ok = trial.all_agree()
                && entries.as_ref().is_none_or(|e| e["mismatches"].as_array().is_some_and(|a| a.is_empty()));
            let report = json!({ "ok": ok, "psd_equivalence": trial, "entries": entries });
            if let Some(p) = json {
                fs::write(p, serde_json::to_string_pretty(&report)? + "\n")?;
            }
            print_json(&report)?;
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Tables { q, json } => {
            let basis = build_basis(q)?;
            let table = pairing_table(&basis);
            let report = verify_against_reference(q)?;
            if json {
                print_json(&json!({ "q": q, "dims": basis.dims(), "table": table.to_records(), "check": report }))?;
            } else {
                println!("q = {q}, dims = {:?}", basis.dims());
                for rec in table.to_records() {
                    let terms: Vec<String> = rec.coefficients.iter().map(|(p, c)| format!("{c} d*[{p}]")).collect();
                    println!("{} ⊗ {} = {}", rec.left, rec.right, if terms.is_empty() { "0".into() } else { terms.join(" + ") });
                }
                println!();
                for line in &report.lines {
                    let status = match &line.status {
                        LineStatus::Pass => "pass".to_string(),
                        LineStatus::Skipped { reason } => format!("skipped ({reason})"),
                        LineStatus::Fail { mismatches } => {
                            let m: Vec<String> = mismatches
                                .iter()
                                .map(|m| format!("{}: expected {}, computed {}", m.pattern, m.expected, m.computed))
                                .collect();
                            format!("FAIL [{}]", m.join("; "))
                        }
                    };
                    match &line.erratum {
                        Some(e) => println!("{:<20} {status} (known misprint: {e})", line.line),
                        None => println!("{:<20} {status}", line.line),
                    }
                }
                println!("{} passed, {} failed ({} known misprints), {} skipped", report.passed(), report.failed(), report.failed() - report.unexplained(), report.skipped());
            }
            Ok(if report.unexplained() == 0 { 0 } else { 1 })
        }
        Cmd::Orbits { params, json } => {
            let Params { q, n, d } = params;
            if d == 0 || d > n {
                return Err(crate::error::invalid(format!("distance d = {d} must be in 1..={n}")));
            }
            let catalog = enumerate_orbits(q, n)?;
            let records = catalog.to_records(d);
            if json {
                print_json(&json!({ "q": q, "n": n, "d": d, "orbits": records }))?;
            } else {
                println!("{:>6} {:>4} {:>6} {:>10}  id", "index", "size", "mindist", "admissible");
                for r in &records {
                    let md = r.min_distance.map_or("-".to_string(), |m| m.to_string());
                    println!("{:>6} {:>4} {:>6} {:>10}  {}", r.index, r.cardinality, md, r.admissible, r.id);
                }
                let adm = records.iter().filter(|r| r.admissible).count();
                println!("{} orbits, {} admissible for d = {d}", records.len(), adm);
            }
            Ok(0)
        }
    }
}
