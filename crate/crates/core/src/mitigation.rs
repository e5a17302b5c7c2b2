//! Selective layer serialization.
//!
//! Crosstalk only fires when coupled neighbors run physical gates in the
//! same layer, so forcing the gates of a high-impact layer to run one at a
//! time removes that channel there, at the cost of depth. Only the selected
//! layers are touched; serializing everything would trade a little crosstalk
//! for a lot of decoherence.

use crate::analysis::ImpactReport;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::noise::NoiseModel;
use crate::schedule::compute_layers;
use crate::sim::{run_noisy, Distribution};
use crate::{analysis, GateOp, OpOrigin};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// What a serialization pass did to a circuit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MitigationPlan {
    pub target_layers: BTreeSet<usize>,
    pub inserted_barriers: usize,
    pub before_depth: usize,
    pub after_depth: usize,
}

/// Layers hosting the top-`k` records of a report, deduplicated.
pub fn select_target_layers(report: &ImpactReport, k: usize) -> Result<BTreeSet<usize>> {
    if k == 0 {
        return Err(Error::InvalidSelection("top-k selection needs k >= 1".into()));
    }
    if report.records.is_empty() {
        return Err(Error::InvalidSelection("layer selection over an empty report".into()));
    }
    let take = k.min(report.records.len());
    Ok(report.records[..take].iter().map(|r| r.layer).collect())
}

/// Serialize the gates of the given layers: within each target layer, gate
/// ops are separated by full-width barriers so no two of them stay parallel.
/// Layers with fewer than two gates are left alone; if nothing needs
/// serializing the circuit is returned unchanged.
///
/// Depth grows by at most 2·(gates − 1) per serialized layer (the extra gate
/// layers plus one barrier layer per gap), with equality whenever following
/// ops depend on the layer's last gate.
pub fn serialize_layers(
    circuit: &Circuit,
    layers: &BTreeSet<usize>,
) -> Result<(Circuit, MitigationPlan)> {
    let schedule = compute_layers(circuit, None);
    for &layer in layers {
        if layer >= schedule.num_layers {
            return Err(Error::UnknownLayer { layer, depth: schedule.num_layers });
        }
    }
    let by_layer = schedule.ops_by_layer();
    let needs_work = layers.iter().any(|&l| {
        by_layer[l].iter().filter(|&&i| circuit.ops[i].is_gate()).count() >= 2
    });
    let mut plan = MitigationPlan {
        target_layers: layers.clone(),
        inserted_barriers: 0,
        before_depth: schedule.num_layers,
        after_depth: schedule.num_layers,
    };
    if !needs_work {
        return Ok((circuit.clone(), plan));
    }

    let fence = || {
        GateOp::barrier((0..circuit.num_qubits).collect())
            .with_origin(OpOrigin::InsertedBarrier)
    };
    let mut ops = Vec::with_capacity(circuit.ops.len() + 8);
    // Emitting layer by layer keeps each target layer's members adjacent;
    // per-qubit op order is unchanged, so the circuit computes the same
    // function and non-target layers schedule exactly as before.
    for (layer, members) in by_layer.iter().enumerate() {
        let serialize = layers.contains(&layer);
        let gates = members.iter().filter(|&&i| circuit.ops[i].is_gate()).count();
        if serialize && gates >= 2 {
            let mut emitted = 0;
            for &i in members.iter().filter(|&&i| circuit.ops[i].is_gate()) {
                if emitted > 0 {
                    ops.push(fence());
                    plan.inserted_barriers += 1;
                }
                ops.push(circuit.ops[i].clone());
                emitted += 1;
            }
            for &i in members.iter().filter(|&&i| !circuit.ops[i].is_gate()) {
                ops.push(circuit.ops[i].clone());
            }
        } else {
            for &i in members {
                ops.push(circuit.ops[i].clone());
            }
        }
    }
    let mitigated = Circuit { num_qubits: circuit.num_qubits, ops };
    plan.after_depth = compute_layers(&mitigated, None).num_layers;
    Ok((mitigated, plan))
}

/// Run the original and the mitigated circuit under the same model, shots
/// and seed, and report each one's TVD to the reference distribution
/// (normally the circuit's ideal output).
pub fn evaluate_mitigation(
    circuit: &Circuit,
    mitigated: &Circuit,
    model: &NoiseModel,
    shots: u64,
    seed: u64,
    reference: &Distribution,
) -> Result<(f64, f64)> {
    let before = run_noisy(circuit, model, shots, seed)?;
    let after = run_noisy(mitigated, model, shots, seed)?;
    Ok((
        analysis::tvd(reference, &before)?,
        analysis::tvd(reference, &after)?,
    ))
}
