//! Impact scoring and derived analyses.
//!
//! The centerpiece is [`build_report`]: given an executed reversal suite it
//! scores every gate by the total variation distance between its variant's
//! output and the original's, ranks the records, and attaches the three
//! derived analyses (layer-position correlation, qubit coverage, one- vs
//! two-qubit comparison). [`input_impact`] ranks labeled gate groups the
//! same way using group reversals.

use crate::circuit::{Circuit, GateKind};
use crate::error::{Error, Result};
use crate::noise::NoiseModel;
use crate::reversal::{insert_group_reversal, ReversalSuite};
use crate::schedule::LayerSchedule;
use crate::sim::{run_noisy, set_seed, Distribution, SuiteExecution};
use crate::stats;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Total variation distance between two outcome distributions:
/// half the sum of absolute probability differences over the union of keys.
pub fn tvd(p: &Distribution, q: &Distribution) -> Result<f64> {
    if let (Some(l), Some(r)) = (p.num_bits(), q.num_bits()) {
        if l != r {
            return Err(Error::KeyLengthMismatch { left: l, right: r });
        }
    }
    let mut total = 0.0;
    for (key, &pv) in &p.probs {
        total += (pv - q.prob(key)).abs();
    }
    for (key, &qv) in &q.probs {
        if !p.probs.contains_key(key) {
            total += qv;
        }
    }
    Ok((0.5 * total).clamp(0.0, 1.0))
}

/// Sample Pearson correlation with a two-sided p-value from the exact
/// t-distribution with `n - 2` degrees of freedom.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    if x.len() != y.len() {
        return Err(Error::SampleLengthMismatch { left: x.len(), right: y.len() });
    }
    let n = x.len();
    if n < 3 {
        return Err(Error::TooFewSamples { need: 3, got: n });
    }
    if x.iter().all(|&v| v == x[0]) {
        return Err(Error::DegenerateVariance("x"));
    }
    if y.iter().all(|&v| v == y[0]) {
        return Err(Error::DegenerateVariance("y"));
    }
    let mean_x = x.iter().sum::<f64>() / n as f64;
    let mean_y = y.iter().sum::<f64>() / n as f64;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    let mut sxy = 0.0;
    for i in 0..n {
        let dx = x[i] - mean_x;
        let dy = y[i] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if sxx == 0.0 {
        return Err(Error::DegenerateVariance("x"));
    }
    if syy == 0.0 {
        return Err(Error::DegenerateVariance("y"));
    }
    let r = (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0);
    let nu = (n - 2) as f64;
    let p = if r.abs() == 1.0 {
        0.0
    } else {
        let t = r * (nu / (1.0 - r * r)).sqrt();
        stats::students_t_two_sided_p(t, nu)
    };
    Ok((r, p))
}

/// One scored gate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImpactRecord {
    /// Op index in the original circuit.
    pub gate_index: usize,
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    /// Scheduled layer in the original circuit.
    pub layer: usize,
    /// TVD between the variant's output and the original's.
    pub tvd: f64,
}

/// Gate counts and depth of the analyzed circuit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircuitSummary {
    pub num_qubits: usize,
    /// Qubits touched by at least one gate op.
    pub active_qubits: usize,
    /// Gate layers (measurements excluded).
    pub depth: usize,
    pub gate_counts: BTreeMap<String, usize>,
}

/// A correlation estimate attached to a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Correlation {
    pub r: f64,
    pub p_value: f64,
}

/// Fraction of active qubits touched by the top `threshold` share of records.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverageRow {
    pub threshold: f64,
    pub fraction: f64,
}

/// How many one-qubit (SX/X) records score above the weakest CX record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OneVsTwo {
    pub count: usize,
    pub fraction: f64,
}

/// An op that received no variant, with the reason.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkippedSummary {
    pub op_index: usize,
    pub reason: String,
}

/// Full analysis output for one executed suite.
///
/// `records` is sorted by descending TVD, ties broken by ascending gate
/// index. The derived analyses hold `None` when undefined for the data
/// (fewer than three records, zero variance, or a missing gate class).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImpactReport {
    pub summary: CircuitSummary,
    /// Reversed-pair repetitions used by the suite.
    pub reversals: usize,
    pub shots: u64,
    pub include_rz: bool,
    pub records: Vec<ImpactRecord>,
    pub skipped: Vec<SkippedSummary>,
    pub positional: Option<Correlation>,
    pub coverage: Vec<CoverageRow>,
    pub one_vs_two: Option<OneVsTwo>,
}

/// Coverage thresholds used by [`build_report`]: top 5%, 10%, 25%, 50%.
pub const DEFAULT_COVERAGE_THRESHOLDS: [f64; 4] = [0.05, 0.10, 0.25, 0.50];

fn active_qubit_count(circuit: &Circuit) -> usize {
    let mut seen = vec![false; circuit.num_qubits];
    for op in circuit.ops.iter().filter(|op| op.is_gate()) {
        for &q in &op.qubits {
            seen[q] = true;
        }
    }
    seen.iter().filter(|&&s| s).count()
}

/// Score every variant of an executed suite and attach the derived analyses.
pub fn build_report(
    execution: &SuiteExecution,
    suite: &ReversalSuite,
    circuit: &Circuit,
    schedule: &LayerSchedule,
) -> Result<ImpactReport> {
    let by_gate: HashMap<usize, &Distribution> =
        execution.variants.iter().map(|(g, d)| (*g, d)).collect();
    let mut records = Vec::with_capacity(suite.variants.len());
    for variant in &suite.variants {
        let i = variant.gate_index;
        let dist = by_gate
            .get(&i)
            .ok_or(Error::MissingVariant { gate_index: i })?;
        let op = circuit
            .ops
            .get(i)
            .ok_or(Error::IndexOutOfRange { index: i, len: circuit.ops.len() })?;
        records.push(ImpactRecord {
            gate_index: i,
            kind: op.kind,
            qubits: op.qubits.clone(),
            layer: schedule.layer_of[i],
            tvd: tvd(&execution.original, dist)?,
        });
    }
    records.sort_by(|a, b| {
        b.tvd.total_cmp(&a.tvd).then(a.gate_index.cmp(&b.gate_index))
    });

    let mut gate_counts = BTreeMap::new();
    for op in &circuit.ops {
        *gate_counts.entry(op.kind.name().to_string()).or_insert(0usize) += 1;
    }
    let mut report = ImpactReport {
        summary: CircuitSummary {
            num_qubits: circuit.num_qubits,
            active_qubits: active_qubit_count(circuit),
            depth: schedule.num_layers,
            gate_counts,
        },
        reversals: suite.reversals,
        shots: execution.original.shots,
        include_rz: suite.include_rz,
        records,
        skipped: suite
            .skipped
            .iter()
            .map(|s| SkippedSummary {
                op_index: s.op_index,
                reason: s.reason.as_str().to_string(),
            })
            .collect(),
        positional: None,
        coverage: Vec::new(),
        one_vs_two: None,
    };
    report.positional = positional_correlation(&report)
        .ok()
        .map(|(r, p_value)| Correlation { r, p_value });
    report.coverage = qubit_coverage(&report, &DEFAULT_COVERAGE_THRESHOLDS).unwrap_or_default();
    report.one_vs_two = one_vs_two_qubit(&report).ok();
    Ok(report)
}

/// Pearson correlation between each record's layer and its TVD.
pub fn positional_correlation(report: &ImpactReport) -> Result<(f64, f64)> {
    let layers: Vec<f64> = report.records.iter().map(|r| r.layer as f64).collect();
    let tvds: Vec<f64> = report.records.iter().map(|r| r.tvd).collect();
    pearson(&layers, &tvds)
}

/// For each threshold `t`, the fraction of active qubits touched by the top
/// `ceil(t * record_count)` records.
pub fn qubit_coverage(report: &ImpactReport, thresholds: &[f64]) -> Result<Vec<CoverageRow>> {
    if report.records.is_empty() {
        return Err(Error::InvalidSelection("coverage of an empty report".into()));
    }
    let denom = report.summary.active_qubits;
    if denom == 0 {
        return Err(Error::InvalidSelection("no active qubits".into()));
    }
    let mut rows = Vec::with_capacity(thresholds.len());
    for &t in thresholds {
        if !(t > 0.0 && t <= 1.0) {
            return Err(Error::InvalidSelection(format!(
                "coverage threshold {t} outside (0, 1]"
            )));
        }
        let take = ((t * report.records.len() as f64).ceil() as usize)
            .clamp(1, report.records.len());
        let touched: BTreeSet<usize> = report.records[..take]
            .iter()
            .flat_map(|r| r.qubits.iter().copied())
            .collect();
        rows.push(CoverageRow { threshold: t, fraction: touched.len() as f64 / denom as f64 });
    }
    Ok(rows)
}

/// Count the SX/X records whose TVD exceeds the lowest CX record's TVD.
pub fn one_vs_two_qubit(report: &ImpactReport) -> Result<OneVsTwo> {
    let cx_min = report
        .records
        .iter()
        .filter(|r| r.kind == GateKind::Cx)
        .map(|r| r.tvd)
        .min_by(f64::total_cmp)
        .ok_or_else(|| Error::InvalidSelection("report has no cx records".into()))?;
    let one_q: Vec<f64> = report
        .records
        .iter()
        .filter(|r| matches!(r.kind, GateKind::Sx | GateKind::X))
        .map(|r| r.tvd)
        .collect();
    if one_q.is_empty() {
        return Err(Error::InvalidSelection("report has no sx/x records".into()));
    }
    let count = one_q.iter().filter(|&&t| t > cx_min).count();
    Ok(OneVsTwo { count, fraction: count as f64 / one_q.len() as f64 })
}

/// Rank labeled gate groups by the output error their group reversal causes.
///
/// Each labeled index set is group-reversed against the same base circuit,
/// executed with a seed derived from the set, and scored by TVD against the
/// base circuit's own noisy output. Sorted descending; equal scores keep the
/// input order.
pub fn input_impact(
    circuit: &Circuit,
    input_sets: &[(String, BTreeSet<usize>)],
    r: usize,
    model: &NoiseModel,
    shots: u64,
    seed: u64,
) -> Result<Vec<(String, f64)>> {
    let base = run_noisy(circuit, model, shots, seed)?;
    let mut scored = Vec::with_capacity(input_sets.len());
    for (label, indices) in input_sets {
        let variant = insert_group_reversal(circuit, indices, r)?;
        let dist = run_noisy(&variant, model, shots, set_seed(seed, indices.iter().copied()))?;
        scored.push((label.clone(), tvd(&base, &dist)?));
    }
    scored.sort_by(|a, b| b.1.total_cmp(&a.1));
    Ok(scored)
}

/// One row per record: `gate_index,kind,qubits,layer,tvd`. Qubits are
/// `;`-separated so the file stays plain CSV.
pub fn report_csv(report: &ImpactReport) -> String {
    let mut out = String::from("gate_index,kind,qubits,layer,tvd\n");
    for rec in &report.records {
        let qubits: Vec<String> = rec.qubits.iter().map(|q| q.to_string()).collect();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            rec.gate_index,
            rec.kind.name(),
            qubits.join(";"),
            rec.layer,
            rec.tvd
        ));
    }
    out
}

/// Per-qubit plot tracks: for each qubit with at least one record, the
/// records touching it ordered by layer. Columns: `layer,tvd,gate_index,kind`.
pub fn qubit_tracks(report: &ImpactReport) -> Vec<(usize, String)> {
    let qubits: BTreeSet<usize> = report
        .records
        .iter()
        .flat_map(|r| r.qubits.iter().copied())
        .collect();
    qubits
        .into_iter()
        .map(|q| {
            let mut rows: Vec<&ImpactRecord> =
                report.records.iter().filter(|r| r.qubits.contains(&q)).collect();
            rows.sort_by_key(|r| (r.layer, r.gate_index));
            let mut csv = String::from("layer,tvd,gate_index,kind\n");
            for rec in rows {
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    rec.layer,
                    rec.tvd,
                    rec.gate_index,
                    rec.kind.name()
                ));
            }
            (q, csv)
        })
        .collect()
}
