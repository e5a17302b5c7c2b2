//! Command implementations and the exit-code plumbing.
//!
//! Failures carry the process exit code: 2 for anything wrong with the
//! request (unreadable input, parse diagnostics, bad noise model, ineligible
//! selections), 3 for failures after validation (simulation, report
//! assembly, output IO). Output files are computed fully, then written via
//! a temp file and rename so a crash never leaves a half-written report.

use crate::{BenchFamily, ExecOpts, SuiteOpts};
use gatescope::analysis::{build_report, qubit_tracks, report_csv};
use gatescope::bench::{ghz_circuit, qft_circuit, tfim_circuit};
use gatescope::mitigation::{select_target_layers, serialize_layers, evaluate_mitigation};
use gatescope::qasm::{emit_qasm, parse_qasm, EmitOptions};
use gatescope::reversal::{eligible_gate_indices, generate_suite, insert_group_reversal, insert_reversal};
use gatescope::sim::{execute_suite, ideal_probabilities, run_noisy};
use gatescope::{compute_layers, Circuit, NoiseModel};
use serde_json::json;
use std::collections::BTreeSet;
use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use time::format_description::well_known::Rfc3339;
use time::OffsetDateTime;

pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub type CmdResult = Result<(), Failure>;

fn usage(e: impl Display) -> Failure {
    Failure { code: 2, message: e.to_string() }
}

fn exec_fail(e: impl Display) -> Failure {
    Failure { code: 3, message: e.to_string() }
}

fn load_circuit(path: &Path) -> Result<Circuit, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_qasm(&text).map_err(|diags| {
        for d in &diags {
            eprintln!("{}: {d}", path.display());
        }
        usage(format!("{} problem(s) parsing {}", diags.len(), path.display()))
    })
}

fn load_noise(spec: &str, num_qubits: usize) -> Result<NoiseModel, Failure> {
    let model = match spec {
        "default" => NoiseModel::default(),
        "ideal" => NoiseModel::ideal(),
        path => {
            let text = fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read noise model {path}: {e}")))?;
            NoiseModel::from_json(&text).map_err(usage)?
        }
    };
    model.validate(num_qubits).map_err(usage)?;
    Ok(model)
}

fn timestamp() -> String {
    OffsetDateTime::now_utc()
        .format(&Rfc3339)
        .unwrap_or_else(|_| "unknown".into())
}

fn ensure_out(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir)
        .map_err(|e| exec_fail(format!("cannot create {}: {e}", dir.display())))
}

fn write_atomic(path: &Path, text: &str) -> Result<(), Failure> {
    let mut name = path
        .file_name()
        .map(|s| s.to_os_string())
        .unwrap_or_else(|| "out".into());
    name.push(format!(".tmp{}", std::process::id()));
    let tmp = path.with_file_name(name);
    fs::write(&tmp, text).map_err(|e| exec_fail(format!("write {}: {e}", tmp.display())))?;
    fs::rename(&tmp, path)
        .map_err(|e| exec_fail(format!("rename to {}: {e}", path.display())))
}

fn pretty(value: &serde_json::Value) -> Result<String, Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(exec_fail)?;
    text.push('\n');
    Ok(text)
}

pub fn analyze(input: &Path, suite_opts: &SuiteOpts, exec: &ExecOpts, out: &Path) -> CmdResult {
    let circuit = load_circuit(input)?;
    let model = load_noise(&exec.noise, circuit.num_qubits)?;
    let r = suite_opts.reversals as usize;
    let suite = generate_suite(&circuit, r, suite_opts.include_rz).map_err(usage)?;
    let execution = execute_suite(&suite, &model, exec.shots, exec.seed).map_err(exec_fail)?;
    let schedule = compute_layers(&circuit, Some(&model));
    let report = build_report(&execution, &suite, &circuit, &schedule).map_err(exec_fail)?;

    let config = json!({
        "command": "analyze",
        "input": input.display().to_string(),
        "reversals": r,
        "shots": exec.shots,
        "seed": exec.seed,
        "include_rz": suite_opts.include_rz,
        "noise": exec.noise,
    });
    let doc = json!({
        "config": config,
        "generated_at": timestamp(),
        "report": report,
    });
    let tracks = qubit_tracks(&report);

    ensure_out(out)?;
    write_atomic(&out.join("report.json"), &pretty(&doc)?)?;
    write_atomic(&out.join("report.csv"), &report_csv(&report))?;
    for (q, csv) in &tracks {
        write_atomic(&out.join(format!("track_q{q}.csv")), csv)?;
    }

    match report.records.first() {
        Some(top) => {
            let qubits: Vec<String> = top.qubits.iter().map(|q| q.to_string()).collect();
            println!(
                "top impact: gate {} ({} on q{}) layer {} tvd {:.4}",
                top.gate_index,
                top.kind.name(),
                qubits.join(",q"),
                top.layer,
                top.tvd
            );
        }
        None => println!("no eligible gates to analyze"),
    }
    println!(
        "{} variants scored, {} ops skipped; reports in {}",
        report.records.len(),
        report.skipped.len(),
        out.display()
    );
    Ok(())
}

pub fn transform(
    input: &Path,
    gate_index: Option<usize>,
    group: Option<Vec<usize>>,
    suite_opts: &SuiteOpts,
    extended_gates: bool,
    out: &Path,
) -> CmdResult {
    let circuit = load_circuit(input)?;
    let r = suite_opts.reversals as usize;
    let opts = EmitOptions { extended_gates };

    let mut files: Vec<(PathBuf, String)> = Vec::new();
    match (gate_index, group) {
        (Some(i), _) => {
            let variant = insert_reversal(&circuit, i, r).map_err(usage)?;
            files.push((out.join(format!("variant_gate_{i}.qasm")), emit_qasm(&variant, opts)));
        }
        (None, Some(indices)) => {
            let set: BTreeSet<usize> = indices.into_iter().collect();
            if set.is_empty() {
                return Err(usage("--group needs at least one index"));
            }
            let variant = insert_group_reversal(&circuit, &set, r).map_err(usage)?;
            let tag: Vec<String> = set.iter().map(|i| i.to_string()).collect();
            files.push((
                out.join(format!("variant_group_{}.qasm", tag.join("-"))),
                emit_qasm(&variant, opts),
            ));
        }
        (None, None) => {
            for i in eligible_gate_indices(&circuit, suite_opts.include_rz) {
                let variant = insert_reversal(&circuit, i, r).map_err(exec_fail)?;
                files.push((
                    out.join(format!("variant_gate_{i}.qasm")),
                    emit_qasm(&variant, opts),
                ));
            }
        }
    }

    ensure_out(out)?;
    for (path, text) in &files {
        write_atomic(path, text)?;
        println!("wrote {}", path.display());
    }
    println!("{} variant(s)", files.len());
    Ok(())
}

pub fn mitigate(
    input: &Path,
    k: usize,
    seeds: Option<Vec<u64>>,
    suite_opts: &SuiteOpts,
    exec: &ExecOpts,
    out: &Path,
) -> CmdResult {
    let circuit = load_circuit(input)?;
    let model = load_noise(&exec.noise, circuit.num_qubits)?;
    let r = suite_opts.reversals as usize;

    let suite = generate_suite(&circuit, r, suite_opts.include_rz).map_err(usage)?;
    let execution = execute_suite(&suite, &model, exec.shots, exec.seed).map_err(exec_fail)?;
    let schedule = compute_layers(&circuit, Some(&model));
    let report = build_report(&execution, &suite, &circuit, &schedule).map_err(exec_fail)?;
    let layers = select_target_layers(&report, k).map_err(usage)?;
    let (mitigated, plan) = serialize_layers(&circuit, &layers).map_err(exec_fail)?;

    let reference = ideal_probabilities(&circuit).map_err(exec_fail)?;
    let seeds = seeds.unwrap_or_else(|| vec![exec.seed]);
    let mut runs = Vec::with_capacity(seeds.len());
    let (mut sum_before, mut sum_after) = (0.0, 0.0);
    for &s in &seeds {
        let (before, after) =
            evaluate_mitigation(&circuit, &mitigated, &model, exec.shots, s, &reference)
                .map_err(exec_fail)?;
        sum_before += before;
        sum_after += after;
        runs.push(json!({ "seed": s, "tvd_before": before, "tvd_after": after }));
    }
    let mean_before = sum_before / seeds.len() as f64;
    let mean_after = sum_after / seeds.len() as f64;

    let config = json!({
        "command": "mitigate",
        "input": input.display().to_string(),
        "k": k,
        "reversals": r,
        "shots": exec.shots,
        "seed": exec.seed,
        "seeds": seeds,
        "include_rz": suite_opts.include_rz,
        "noise": exec.noise,
    });
    let doc = json!({
        "config": config,
        "generated_at": timestamp(),
        "plan": plan,
        "runs": runs,
        "mean_tvd_before": mean_before,
        "mean_tvd_after": mean_after,
    });

    ensure_out(out)?;
    write_atomic(&out.join("mitigated.qasm"), &emit_qasm(&mitigated, EmitOptions::default()))?;
    write_atomic(&out.join("mitigation.json"), &pretty(&doc)?)?;

    let layer_list: Vec<String> = plan.target_layers.iter().map(|l| l.to_string()).collect();
    println!(
        "serialized layer(s) {}; depth {} -> {}; mean tvd {:.4} -> {:.4}",
        layer_list.join(","),
        plan.before_depth,
        plan.after_depth,
        mean_before,
        mean_after
    );
    Ok(())
}

pub fn bench(family: &BenchFamily) -> CmdResult {
    let (circuit, path) = match family {
        BenchFamily::Qft { n, target, out } => {
            let target = target.clone().unwrap_or_else(|| "0".repeat(*n));
            let c = qft_circuit(*n, &target).map_err(usage)?;
            (c, out.join(format!("qft_{n}.qasm")))
        }
        BenchFamily::Ghz { n, out } => {
            (ghz_circuit(*n).map_err(usage)?, out.join(format!("ghz_{n}.qasm")))
        }
        BenchFamily::Tfim { n, steps, theta_zz, theta_x, out } => {
            let c = tfim_circuit(*n, *steps, *theta_zz, *theta_x).map_err(usage)?;
            (c, out.join(format!("tfim_{n}_{steps}.qasm")))
        }
    };
    if let Some(dir) = path.parent() {
        ensure_out(dir)?;
    }
    write_atomic(&path, &emit_qasm(&circuit, EmitOptions::default()))?;
    println!("wrote {} ({} ops)", path.display(), circuit.ops.len());
    Ok(())
}

pub fn simulate(input: &Path, exec: &ExecOpts, out: &Path) -> CmdResult {
    let circuit = load_circuit(input)?;
    let model = load_noise(&exec.noise, circuit.num_qubits)?;
    let dist = run_noisy(&circuit, &model, exec.shots, exec.seed).map_err(exec_fail)?;

    let config = json!({
        "command": "simulate",
        "input": input.display().to_string(),
        "shots": exec.shots,
        "seed": exec.seed,
        "noise": exec.noise,
    });
    let doc = json!({
        "config": config,
        "generated_at": timestamp(),
        "distribution": dist,
    });

    ensure_out(out)?;
    write_atomic(&out.join("distribution.json"), &pretty(&doc)?)?;

    let mut rows: Vec<(&String, f64)> = dist.probs.iter().map(|(k, &p)| (k, p)).collect();
    rows.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(b.0)));
    for (key, p) in rows.iter().take(5) {
        println!("{key} {p:.4}");
    }
    if rows.len() > 5 {
        println!("... {} more outcome(s)", rows.len() - 5);
    }
    Ok(())
}
