//! Command-line surface: solve, kernelize, verify, gen, reduce-ham.
//!
//! Exit codes: 0 = YES / success, 1 = NO, 2 = error or guard abort. All
//! output is deterministic for a fixed (input, seed, flags) triple; `--json`
//! mirrors each text output one-to-one.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::costs::{brute_force_solve, SearchLimits};
use crate::gen::{generate, reduce_hamiltonicity, GenModel, GenParams};
use crate::instance::{apply_edits, verify_solution, EditInstance, EditSet};
use crate::io::{
    instance_to_json, parse_instance, parse_solution, solution_to_json, write_instance,
    write_solution,
};
use crate::kernel::{kernelize, trivial_no, KernelOutcome};
use crate::regular::{solve_regular, SolveOptions};

#[derive(Parser)]
#[command(
    name = "dce",
    about = "Edit a graph into a connected graph with prescribed degrees",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide an instance and print a solution file.
    Solve {
        /// Instance file.
        instance: PathBuf,
        /// Force the brute-force search instead of the pipeline.
        #[arg(long)]
        oracle: bool,
        /// Abort (exit 2) after examining this many records.
        #[arg(long)]
        max_records: Option<u64>,
        /// Write the kernelization trace here (a comment-only file when the
        /// regular-target solver runs instead of the kernel pipeline).
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Shrink an instance to an equivalent kernel of bounded size.
    Kernelize {
        /// Instance file.
        instance: PathBuf,
        /// Write the rule-by-rule trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Check a solution file against an instance.
    Verify {
        /// Instance file.
        instance: PathBuf,
        /// Solution file.
        solution: PathBuf,
    },
    /// Generate a seeded instance.
    Gen {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// random, planted, or regular-planted.
        #[arg(long, default_value = "planted", value_parser = GenModel::from_str)]
        model: GenModel,
    },
    /// Reduce Hamiltonian Cycle to this problem (d = 2, k = m − n). Only the
    /// graph lines of the input instance file are used.
    ReduceHam {
        /// Instance file providing the graph.
        graph: PathBuf,
    },
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_instance(path: &Path) -> Result<EditInstance, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: &Cli) -> Result<(String, u8), String> {
    match &cli.cmd {
        Cmd::Solve {
            instance,
            oracle,
            max_records,
            trace,
        } => {
            let inst = read_instance(instance)?;
            let sol = solve_pipeline(&inst, *oracle, *max_records, trace.as_deref())?;
            if let Some(edits) = &sol {
                let ok = verify_solution(&inst, edits)
                    .map_err(|e| format!("solver returned invalid edits: {e}"))?;
                if !ok.all() {
                    return Err("solver returned a non-verifying solution".into());
                }
            }
            let out = if cli.json {
                format!("{:#}\n", solution_to_json(sol.as_ref()))
            } else {
                write_solution(sol.as_ref())
            };
            Ok((out, if sol.is_some() { 0 } else { 1 }))
        }
        Cmd::Kernelize { instance, trace } => {
            let inst = read_instance(instance)?;
            let res = kernelize(&inst).map_err(|e| e.to_string())?;
            if let Some(path) = trace {
                std::fs::write(path, res.trace.render())
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
            let (no, kinst) = match res.outcome {
                KernelOutcome::No => (true, trivial_no(inst.d.max(3), inst.k)),
                KernelOutcome::Kernel(kinst) => (false, kinst),
            };
            let out = if cli.json {
                format!(
                    "{:#}\n",
                    json!({ "no": no, "kernel": instance_to_json(&kinst) })
                )
            } else {
                write_instance(&kinst)
            };
            Ok((out, if no { 1 } else { 0 }))
        }
        Cmd::Verify { instance, solution } => {
            let inst = read_instance(instance)?;
            let text = std::fs::read_to_string(solution)
                .map_err(|e| format!("{}: {e}", solution.display()))?;
            let sol = parse_solution(&text).map_err(|e| format!("{}: {e}", solution.display()))?;
            let (report, ok) = verify_report(&inst, &sol)?;
            let out = if cli.json {
                format!("{:#}\n", json!({ "ok": ok, "report": report }))
            } else {
                report.join("\n") + "\n"
            };
            Ok((out, if ok { 0 } else { 2 }))
        }
        Cmd::Gen { n, d, k, seed, model } => {
            let params = GenParams {
                n: *n,
                d: *d,
                k: *k,
                seed: *seed,
                model: *model,
            };
            let (inst, _witness) = generate(&params).map_err(|e| e.to_string())?;
            let out = if cli.json {
                format!("{:#}\n", instance_to_json(&inst))
            } else {
                write_instance(&inst)
            };
            Ok((out, 0))
        }
        Cmd::ReduceHam { graph } => {
            let inst = read_instance(graph)?;
            let reduced = reduce_hamiltonicity(&inst.graph).map_err(|e| e.to_string())?;
            let out = if cli.json {
                format!("{:#}\n", instance_to_json(&reduced))
            } else {
                write_instance(&reduced)
            };
            Ok((out, 0))
        }
    }
}

/// Full solve pipeline: brute force under `--oracle`; the record solver when
/// every target equals d; otherwise kernelize for the answer and brute-force
/// the original instance for a witness.
fn solve_pipeline(
    inst: &EditInstance,
    oracle: bool,
    max_records: Option<u64>,
    trace: Option<&Path>,
) -> Result<Option<EditSet>, String> {
    let limits = SearchLimits::default();
    if oracle {
        write_trace(trace, "c brute-force oracle; no kernelization\n")?;
        return brute_force_solve(inst, &limits).map_err(|e| e.to_string());
    }
    if inst.delta.values().all(|&t| t == inst.d) {
        write_trace(trace, "c regular-target record solver; no kernelization\n")?;
        let mut opts = SolveOptions::default();
        if let Some(limit) = max_records {
            opts.max_records = limit;
        }
        return solve_regular(inst, &opts).map_err(|e| e.to_string());
    }
    let res = kernelize(inst).map_err(|e| e.to_string())?;
    if let Some(path) = trace {
        std::fs::write(path, res.trace.render())
            .map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let kinst = match res.outcome {
        KernelOutcome::No => return Ok(None),
        KernelOutcome::Kernel(kinst) => kinst,
    };
    if brute_force_solve(&kinst, &limits)
        .map_err(|e| e.to_string())?
        .is_none()
    {
        return Ok(None);
    }
    match brute_force_solve(inst, &limits).map_err(|e| e.to_string())? {
        Some(edits) => Ok(Some(edits)),
        None => Err("kernel and direct search disagree".into()),
    }
}

fn write_trace(trace: Option<&Path>, note: &str) -> Result<(), String> {
    if let Some(path) = trace {
        std::fs::write(path, note).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}

/// Human-readable verification report plus the overall outcome.
fn verify_report(
    inst: &EditInstance,
    sol: &crate::io::SolutionFile,
) -> Result<(Vec<String>, bool), String> {
    if !sol.yes {
        return Ok((vec!["ok (solution claims NO; nothing to check)".into()], true));
    }
    let edited = apply_edits(&inst.graph, &sol.edits).map_err(|e| e.to_string())?;
    let mut report = Vec::new();
    for v in edited.vertices() {
        let have = edited.degree(v);
        let want = inst.delta[&v];
        if have != want {
            report.push(format!("degree mismatch at {v}: have {have}, want {want}"));
        }
    }
    if edited.components().len() != 1 {
        report.push(format!(
            "edited graph has {} components; want 1",
            edited.components().len()
        ));
    }
    if sol.edits.cost() > inst.k as usize {
        report.push(format!(
            "budget exceeded: {} edits > k = {}",
            sol.edits.cost(),
            inst.k
        ));
    }
    let ok = report.is_empty();
    if ok {
        report.push("ok".into());
    }
    Ok((report, ok))
}
