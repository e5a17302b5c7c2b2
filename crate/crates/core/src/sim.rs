//! Ideal and noisy circuit execution.
//!
//! [`ideal_probabilities`] evolves an exact state vector. [`run_noisy`] draws
//! Monte Carlo trajectories: per scheduled layer each physical gate applies
//! its unitary and then a depolarizing Pauli error with the model's
//! probability (scaled by the crosstalk factor when another physical gate in
//! the same layer sits on a coupled neighbor qubit); idle qubits undergo
//! amplitude damping and phase-flip dephasing for the layer's duration; each
//! measured bit flips with the readout error. Runs are reproducible: the
//! outcome is a pure function of `(circuit, model, shots, seed)` regardless
//! of thread count.

use crate::circuit::{Circuit, GateKind};
use crate::error::{Error, Result};
use crate::kernels::{self, C64, Mat2, ONE, ZERO};
use crate::noise::NoiseModel;
use crate::reversal::ReversalSuite;
use crate::schedule::compute_layers;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// Maximum register width the simulators accept.
pub const SIM_QUBIT_LIMIT: usize = 20;

/// Ideal amplitudes below this probability are dropped from distributions.
const PROB_FLOOR: f64 = 1e-14;

/// An outcome distribution over measured bitstrings.
///
/// Keys are binary strings over the measured qubits, written most-significant
/// qubit first, so qubit 0 is the rightmost character. `shots = 0` marks an
/// exact (analytic) distribution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub probs: BTreeMap<String, f64>,
    pub shots: u64,
}

impl Distribution {
    pub fn prob(&self, key: &str) -> f64 {
        self.probs.get(key).copied().unwrap_or(0.0)
    }

    /// Width of the measured register, if any outcome was recorded.
    pub fn num_bits(&self) -> Option<usize> {
        self.probs.keys().next().map(|k| k.len())
    }

    /// Number of distinct outcomes observed.
    pub fn support(&self) -> usize {
        self.probs.len()
    }

    fn from_counts(counts: HashMap<u64, u64>, shots: u64, width: usize) -> Self {
        let probs = counts
            .into_iter()
            .map(|(idx, n)| (bit_key(idx, width), n as f64 / shots as f64))
            .collect();
        Distribution { probs, shots }
    }
}

fn bit_key(index: u64, width: usize) -> String {
    (0..width.max(1))
        .rev()
        .map(|b| if index >> b & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Shot-noise bound on the TVD between two empirical distributions of the
/// same underlying `outcomes`-outcome distribution, each sampled with
/// `shots` shots: `2 * sqrt(outcomes / (2 * shots))`. The factor 2 leaves
/// at least five standard deviations of slack, so tests may use the bound
/// directly as a tolerance.
pub fn shot_noise_bound(outcomes: usize, shots: u64) -> f64 {
    2.0 * (outcomes as f64 / (2.0 * shots as f64)).sqrt()
}

pub(crate) fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for one suite variant: the run seed XORed with a stable hash of the
/// reversed gate's index.
pub fn derived_seed(seed: u64, gate_index: usize) -> u64 {
    seed ^ splitmix64(gate_index as u64)
}

/// Seed for a whole index set (group reversals), order independent because
/// the set iterates sorted.
pub(crate) fn set_seed(seed: u64, indices: impl IntoIterator<Item = usize>) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for i in indices {
        h = splitmix64(h ^ splitmix64(i as u64));
    }
    seed ^ h
}

fn trajectory_rng(circuit_seed: u64, trajectory: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(splitmix64(circuit_seed ^ splitmix64(trajectory.wrapping_add(1))))
}

fn check_circuit(circuit: &Circuit) -> Result<()> {
    if circuit.num_qubits > SIM_QUBIT_LIMIT {
        return Err(Error::TooManyQubits { qubits: circuit.num_qubits, limit: SIM_QUBIT_LIMIT });
    }
    let violations = circuit.validate();
    if let Some(v) = violations.first() {
        return Err(Error::InvalidCircuit(v.to_string()));
    }
    Ok(())
}

/// Exact outcome distribution ignoring all noise. Unmeasured qubits are
/// traced out; a circuit with no measure ops reads out every qubit.
pub fn ideal_probabilities(circuit: &Circuit) -> Result<Distribution> {
    check_circuit(circuit)?;
    let n = circuit.num_qubits;
    let mut state = vec![ZERO; 1usize << n];
    state[0] = ONE;
    for op in &circuit.ops {
        apply_gate(&mut state, op.kind, op.adjoint, &op.qubits);
    }
    let mut measured = circuit.measured_qubits();
    if measured.is_empty() {
        measured = (0..n).collect();
    }
    let mut probs: BTreeMap<String, f64> = BTreeMap::new();
    for (idx, amp) in state.iter().enumerate() {
        let p = amp.norm_sqr();
        if p <= PROB_FLOOR {
            continue;
        }
        let mut outcome = 0u64;
        for (pos, &q) in measured.iter().enumerate() {
            if idx >> q & 1 == 1 {
                outcome |= 1 << pos;
            }
        }
        *probs.entry(bit_key(outcome, measured.len())).or_insert(0.0) += p;
    }
    Ok(Distribution { probs, shots: 0 })
}

fn apply_gate(state: &mut [C64], kind: GateKind, adjoint: bool, qubits: &[usize]) {
    match kind {
        GateKind::Rz(theta) => kernels::apply_1q(state, qubits[0], &kernels::rz_matrix(theta)),
        GateKind::Sx => kernels::apply_1q(state, qubits[0], &kernels::sx_matrix(adjoint)),
        GateKind::X => kernels::apply_1q(state, qubits[0], &kernels::x_matrix()),
        GateKind::Cx => kernels::apply_cx(state, qubits[0], qubits[1]),
        GateKind::Barrier | GateKind::Measure => {}
    }
}

// --- execution plan ---------------------------------------------------------

/// What a gate does in a trajectory step.
pub(crate) enum StepAction {
    OneQ(Mat2),
    Cx,
}

pub(crate) struct GateStep {
    pub op_index: usize,
    pub qubits: (usize, Option<usize>),
    pub action: StepAction,
    /// Effective depolarizing probability, crosstalk included. Zero for RZ.
    pub p_err: f64,
    /// SX/X/CX as opposed to a virtual RZ.
    pub physical: bool,
}

pub(crate) struct IdleStep {
    pub qubit: usize,
    pub gamma: f64,
    pub p_phi: f64,
}

pub(crate) struct LayerPlan {
    pub gates: Vec<GateStep>,
    pub idles: Vec<IdleStep>,
    pub measures: Vec<usize>,
}

/// Precompiled schedule-aware execution plan. Trajectories and the
/// density-matrix oracle both replay it.
pub(crate) struct ExecPlan {
    pub num_qubits: usize,
    pub layers: Vec<LayerPlan>,
    /// Measured qubits in ascending order; bit `j` of an outcome index is
    /// `measured[j]`.
    pub measured: Vec<usize>,
    /// False when the circuit had no measure ops and every qubit is read
    /// out implicitly at the end.
    pub explicit_measures: bool,
    pub readout_flip: Vec<f64>,
}

impl ExecPlan {
    pub(crate) fn build(circuit: &Circuit, model: &NoiseModel) -> Result<ExecPlan> {
        check_circuit(circuit)?;
        model.validate(circuit.num_qubits)?;
        let n = circuit.num_qubits;
        let schedule = compute_layers(circuit, Some(model));
        let by_layer = schedule.ops_by_layer();

        let mut adjacent = vec![false; n * n];
        for (a, b) in model.coupling_pairs(n) {
            if a < n && b < n {
                adjacent[a * n + b] = true;
                adjacent[b * n + a] = true;
            }
        }

        let mut layers = Vec::with_capacity(by_layer.len());
        let mut done_measuring = vec![false; n];
        for (layer_idx, op_indices) in by_layer.iter().enumerate() {
            let mut gates = Vec::new();
            let mut measures = Vec::new();
            let mut busy = vec![false; n];
            // Physical gates in this layer, for the crosstalk test.
            let physical: Vec<&[usize]> = op_indices
                .iter()
                .filter(|&&i| circuit.ops[i].is_physical())
                .map(|&i| circuit.ops[i].qubits.as_slice())
                .collect();
            for &i in op_indices {
                let op = &circuit.ops[i];
                match op.kind {
                    GateKind::Barrier => continue,
                    GateKind::Measure => {
                        busy[op.qubits[0]] = true;
                        measures.push(op.qubits[0]);
                        continue;
                    }
                    _ => {}
                }
                let action = match op.kind {
                    GateKind::Rz(theta) => StepAction::OneQ(kernels::rz_matrix(theta)),
                    GateKind::Sx => StepAction::OneQ(kernels::sx_matrix(op.adjoint)),
                    GateKind::X => StepAction::OneQ(kernels::x_matrix()),
                    GateKind::Cx => StepAction::Cx,
                    _ => unreachable!(),
                };
                let mut p_err = 0.0;
                if op.is_physical() {
                    for &q in &op.qubits {
                        busy[q] = true;
                    }
                    let base = if op.kind == GateKind::Cx { model.p2 } else { model.p1 };
                    let coupled_neighbor = physical.iter().any(|other| {
                        !std::ptr::eq(*other, op.qubits.as_slice())
                            && op
                                .qubits
                                .iter()
                                .any(|&a| other.iter().any(|&b| adjacent[a * n + b]))
                    });
                    p_err = if coupled_neighbor {
                        (base * model.crosstalk_factor).min(1.0)
                    } else {
                        base
                    };
                }
                gates.push(GateStep {
                    op_index: i,
                    qubits: (op.qubits[0], op.qubits.get(1).copied()),
                    action,
                    p_err,
                    physical: op.is_physical(),
                });
            }
            let duration = schedule.layer_durations[layer_idx];
            let mut idles = Vec::new();
            if duration > 0.0 {
                for q in 0..n {
                    if busy[q] || done_measuring[q] {
                        continue;
                    }
                    let t1 = model.t1_ns.get(q);
                    let t2 = model.t2_ns.get(q);
                    let gamma = 1.0 - (-duration / t1).exp();
                    let rate = (1.0 / t2 - 1.0 / (2.0 * t1)).max(0.0);
                    let p_phi = 1.0 - (-duration * rate).exp();
                    if gamma > 0.0 || p_phi > 0.0 {
                        idles.push(IdleStep { qubit: q, gamma, p_phi });
                    }
                }
            }
            for &q in &measures {
                done_measuring[q] = true;
            }
            layers.push(LayerPlan { gates, idles, measures });
        }

        let mut measured = circuit.measured_qubits();
        let explicit_measures = !measured.is_empty();
        if !explicit_measures {
            measured = (0..n).collect();
        }
        let readout_flip = (0..n).map(|q| model.readout_flip.get(q)).collect();
        Ok(ExecPlan { num_qubits: n, layers, measured, explicit_measures, readout_flip })
    }

    fn bit_position(&self, qubit: usize) -> usize {
        self.measured.binary_search(&qubit).expect("measured qubit")
    }
}

/// Effective depolarizing probability per physical gate op, crosstalk
/// included, keyed by op index. Exposes the plan-level numbers so callers
/// and tests can reason about crosstalk without sampling.
pub fn effective_gate_error_probs(
    circuit: &Circuit,
    model: &NoiseModel,
) -> Result<Vec<(usize, f64)>> {
    let plan = ExecPlan::build(circuit, model)?;
    let mut out: Vec<(usize, f64)> = plan
        .layers
        .iter()
        .flat_map(|l| l.gates.iter())
        .filter(|g| g.physical)
        .map(|g| (g.op_index, g.p_err))
        .collect();
    out.sort_unstable_by_key(|&(i, _)| i);
    Ok(out)
}

// --- trajectory execution ---------------------------------------------------

fn measure_qubit(state: &mut [C64], q: usize, rng: &mut ChaCha8Rng) -> bool {
    let p_one = kernels::one_weight(state, q);
    let outcome = rng.gen::<f64>() < p_one;
    let mask = 1usize << q;
    for (i, amp) in state.iter_mut().enumerate() {
        if (i & mask != 0) != outcome {
            *amp = ZERO;
        }
    }
    kernels::renormalize(state);
    outcome
}

fn amplitude_damp(state: &mut [C64], q: usize, gamma: f64, rng: &mut ChaCha8Rng) {
    if gamma <= 0.0 {
        return;
    }
    let weight = kernels::one_weight(state, q);
    if weight <= 0.0 {
        return;
    }
    let mask = 1usize << q;
    if rng.gen::<f64>() < gamma * weight {
        // Quantum jump: |1> decays to |0>.
        let scale = 1.0 / weight.sqrt();
        for i in 0..state.len() {
            if i & mask == 0 {
                state[i] = state[i | mask] * scale;
                state[i | mask] = ZERO;
            }
        }
    } else {
        let keep = (1.0 - gamma).sqrt();
        for (i, amp) in state.iter_mut().enumerate() {
            if i & mask != 0 {
                *amp *= keep;
            }
        }
        kernels::renormalize(state);
    }
}

fn run_trajectory(plan: &ExecPlan, state: &mut Vec<C64>, rng: &mut ChaCha8Rng) -> u64 {
    let dim = 1usize << plan.num_qubits;
    state.clear();
    state.resize(dim, ZERO);
    state[0] = ONE;
    let mut outcome = 0u64;
    for layer in &plan.layers {
        for gate in &layer.gates {
            match &gate.action {
                StepAction::OneQ(m) => kernels::apply_1q(state, gate.qubits.0, m),
                StepAction::Cx => {
                    kernels::apply_cx(state, gate.qubits.0, gate.qubits.1.unwrap())
                }
            }
            if gate.p_err > 0.0 && rng.gen::<f64>() < gate.p_err {
                match gate.qubits.1 {
                    None => {
                        let which = rng.gen_range(0..3u8);
                        kernels::apply_pauli(state, gate.qubits.0, which);
                    }
                    Some(q1) => {
                        // One of the fifteen non-identity two-qubit Paulis.
                        let pick = rng.gen_range(1..16u8);
                        let (a, b) = (pick / 4, pick % 4);
                        if a > 0 {
                            kernels::apply_pauli(state, gate.qubits.0, a - 1);
                        }
                        if b > 0 {
                            kernels::apply_pauli(state, q1, b - 1);
                        }
                    }
                }
            }
        }
        for idle in &layer.idles {
            amplitude_damp(state, idle.qubit, idle.gamma, rng);
            if idle.p_phi > 0.0 && rng.gen::<f64>() < idle.p_phi {
                kernels::apply_pauli(state, idle.qubit, 2);
            }
        }
        for &q in &layer.measures {
            let mut bit = measure_qubit(state, q, rng);
            if rng.gen::<f64>() < plan.readout_flip[q] {
                bit = !bit;
            }
            if bit {
                outcome |= 1 << plan.bit_position(q);
            }
        }
    }
    if !plan.explicit_measures {
        for pos in 0..plan.measured.len() {
            let q = plan.measured[pos];
            let mut bit = measure_qubit(state, q, rng);
            if rng.gen::<f64>() < plan.readout_flip[q] {
                bit = !bit;
            }
            if bit {
                outcome |= 1 << pos;
            }
        }
    }
    outcome
}

/// Sample `shots` noisy trajectories of a circuit under a noise model.
pub fn run_noisy(
    circuit: &Circuit,
    model: &NoiseModel,
    shots: u64,
    seed: u64,
) -> Result<Distribution> {
    if shots == 0 {
        return Err(Error::TooFewSamples { need: 1, got: 0 });
    }
    let plan = ExecPlan::build(circuit, model)?;
    let width = plan.measured.len();
    let counts = (0..shots)
        .into_par_iter()
        .map_init(
            || (Vec::new(), HashMap::<u64, u64>::new()),
            |(scratch, _), t| {
                let mut rng = trajectory_rng(seed, t);
                run_trajectory(&plan, scratch, &mut rng)
            },
        )
        .fold(HashMap::<u64, u64>::new, |mut acc, key| {
            *acc.entry(key).or_insert(0) += 1;
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    Ok(Distribution::from_counts(counts, shots, width))
}

/// Execution results for a reversal suite: the unmodified circuit plus every
/// per-gate variant, each run with a seed derived from the gate index.
#[derive(Clone, Debug)]
pub struct SuiteExecution {
    pub original: Distribution,
    /// `(gate_index, distribution)` per variant, in suite order.
    pub variants: Vec<(usize, Distribution)>,
}

/// Run a whole suite. Variants execute independently (and in parallel); the
/// result is identical to sequential execution because every variant's seed
/// depends only on the run seed and its gate index.
pub fn execute_suite(
    suite: &ReversalSuite,
    model: &NoiseModel,
    shots: u64,
    seed: u64,
) -> Result<SuiteExecution> {
    let original = run_noisy(&suite.base, model, shots, seed)?;
    let variants = suite
        .variants
        .par_iter()
        .map(|v| {
            run_noisy(&v.circuit, model, shots, derived_seed(seed, v.gate_index))
                .map(|d| (v.gate_index, d))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteExecution { original, variants })
}
