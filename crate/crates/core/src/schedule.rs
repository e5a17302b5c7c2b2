//! ASAP layer scheduling.
//!
//! Ops are packed greedily into layers: two ops sharing a qubit never share a
//! layer, and a barrier synchronizes its qubit set, occupying a layer that no
//! op on those qubits may enter or cross. Scheduling is deterministic and
//! depends only on op order and qubit overlap.

use crate::circuit::{Circuit, GateKind};
use crate::noise::NoiseModel;

/// Layer assignment for every op of a circuit.
#[derive(Clone, Debug, PartialEq)]
pub struct LayerSchedule {
    /// Layer index per op, parallel to `circuit.ops`.
    pub layer_of: Vec<usize>,
    /// Depth of the circuit. Measure ops do not count toward depth; layers
    /// holding only measurements sit above `num_layers`.
    pub num_layers: usize,
    /// Wall-clock duration of each layer in nanoseconds: the longest op in
    /// the layer under the model's durations, zero without a model. Indexed
    /// over all layers including measurement layers.
    pub layer_durations: Vec<f64>,
}

impl LayerSchedule {
    /// Total layer count including measure-only layers.
    pub fn total_layers(&self) -> usize {
        self.layer_durations.len()
    }

    /// Op indices grouped by layer, preserving op order within a layer.
    pub fn ops_by_layer(&self) -> Vec<Vec<usize>> {
        let mut grouped = vec![Vec::new(); self.total_layers()];
        for (op, &layer) in self.layer_of.iter().enumerate() {
            grouped[layer].push(op);
        }
        grouped
    }
}

/// Schedule a circuit. The model only supplies per-kind durations; pass
/// `None` when timing is irrelevant.
pub fn compute_layers(circuit: &Circuit, model: Option<&NoiseModel>) -> LayerSchedule {
    let mut next_free = vec![0usize; circuit.num_qubits];
    let mut layer_of = Vec::with_capacity(circuit.ops.len());
    let mut gate_top = 0usize; // one past the last non-measure layer
    let mut total = 0usize;

    for op in &circuit.ops {
        let layer = op.qubits.iter().map(|&q| next_free[q]).max().unwrap_or(0);
        for &q in &op.qubits {
            next_free[q] = layer + 1;
        }
        layer_of.push(layer);
        total = total.max(layer + 1);
        if op.kind != GateKind::Measure {
            gate_top = gate_top.max(layer + 1);
        }
    }

    let mut layer_durations = vec![0.0f64; total];
    if let Some(model) = model {
        for (i, op) in circuit.ops.iter().enumerate() {
            let d = model.durations_ns.of(op.kind);
            let slot = &mut layer_durations[layer_of[i]];
            if d > *slot {
                *slot = d;
            }
        }
    }

    LayerSchedule { layer_of, num_layers: gate_top, layer_durations }
}
