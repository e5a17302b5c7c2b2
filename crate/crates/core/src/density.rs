//! Exact density-matrix evaluation of the noise model.
//!
//! Built as a test oracle for the trajectory sampler, not as an executor: it
//! replays the very same execution plan (same layering, same effective error
//! probabilities), but evolves the full density matrix through each channel's
//! Kraus form, so its output probabilities are exact.
//!
//! The density matrix is stored row major and treated as a `2n`-bit state
//! vector: column bits sit at positions `0..n`, row bits at `n..2n`. Left
//! multiplication by `K` is then a 1-qubit apply at bit `n + q`, and right
//! multiplication by `K\dagger` is an apply of `conj(K)` at bit `q`, which
//! lets the state-vector kernels do all the work.
//!
//! Measurements are deferred: a measured qubit sees no further ops (validated
//! circuit) and every later channel acts on other qubits, so skipping the
//! collapse changes no final diagonal entry. Readout flips are applied to the
//! marginal distribution at the end.

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::kernels::{self, C64, Mat2, ONE, ZERO};
use crate::noise::NoiseModel;
use crate::sim::{Distribution, ExecPlan, StepAction};
use std::collections::BTreeMap;

/// Width limit: the matrix has `4^n` entries and every channel term copies it.
pub const DENSITY_QUBIT_LIMIT: usize = 8;

const PROB_FLOOR: f64 = 1e-14;

struct Density {
    n: usize,
    rho: Vec<C64>,
}

impl Density {
    fn new(n: usize) -> Self {
        let mut rho = vec![ZERO; 1 << (2 * n)];
        rho[0] = ONE;
        Density { n, rho }
    }

    /// rho -> K rho K^dagger for a 1-qubit operator K on `q`.
    fn conjugate_1q(rho: &mut [C64], n: usize, q: usize, k: &Mat2) {
        kernels::apply_1q(rho, n + q, k);
        kernels::apply_1q(rho, q, &kernels::conj2(k));
    }

    fn conjugate_cx(rho: &mut [C64], n: usize, c: usize, t: usize) {
        kernels::apply_cx(rho, n + c, n + t);
        kernels::apply_cx(rho, c, t);
    }

    fn apply_unitary(&mut self, action: &StepAction, q0: usize, q1: Option<usize>) {
        match action {
            StepAction::OneQ(m) => Self::conjugate_1q(&mut self.rho, self.n, q0, m),
            StepAction::Cx => Self::conjugate_cx(&mut self.rho, self.n, q0, q1.expect("cx arity")),
        }
    }

    fn pauli(which: u8) -> Mat2 {
        match which {
            0 => kernels::x_matrix(),
            1 => kernels::y_matrix(),
            _ => kernels::z_matrix(),
        }
    }

    fn scale(rho: &mut [C64], s: f64) {
        for v in rho.iter_mut() {
            *v *= s;
        }
    }

    fn add_scaled(rho: &mut [C64], term: &[C64], s: f64) {
        for (dst, src) in rho.iter_mut().zip(term) {
            *dst += src * s;
        }
    }

    fn depolarize_1q(&mut self, q: usize, p: f64) {
        if p <= 0.0 {
            return;
        }
        let base = self.rho.clone();
        Self::scale(&mut self.rho, 1.0 - p);
        for which in 0..3u8 {
            let mut term = base.clone();
            Self::conjugate_1q(&mut term, self.n, q, &Self::pauli(which));
            Self::add_scaled(&mut self.rho, &term, p / 3.0);
        }
    }

    fn depolarize_2q(&mut self, qc: usize, qt: usize, p: f64) {
        if p <= 0.0 {
            return;
        }
        let base = self.rho.clone();
        Self::scale(&mut self.rho, 1.0 - p);
        for pick in 1..16u8 {
            let (a, b) = (pick / 4, pick % 4);
            let mut term = base.clone();
            if a > 0 {
                Self::conjugate_1q(&mut term, self.n, qc, &Self::pauli(a - 1));
            }
            if b > 0 {
                Self::conjugate_1q(&mut term, self.n, qt, &Self::pauli(b - 1));
            }
            Self::add_scaled(&mut self.rho, &term, p / 15.0);
        }
    }

    fn amplitude_damp(&mut self, q: usize, gamma: f64) {
        if gamma <= 0.0 {
            return;
        }
        let k0: Mat2 = [ONE, ZERO, ZERO, C64::new((1.0 - gamma).sqrt(), 0.0)];
        let k1: Mat2 = [ZERO, C64::new(gamma.sqrt(), 0.0), ZERO, ZERO];
        let mut jump = self.rho.clone();
        Self::conjugate_1q(&mut self.rho, self.n, q, &k0);
        Self::conjugate_1q(&mut jump, self.n, q, &k1);
        Self::add_scaled(&mut self.rho, &jump, 1.0);
    }

    fn dephase(&mut self, q: usize, p: f64) {
        if p <= 0.0 {
            return;
        }
        let mut term = self.rho.clone();
        Self::scale(&mut self.rho, 1.0 - p);
        Self::conjugate_1q(&mut term, self.n, q, &kernels::z_matrix());
        Self::add_scaled(&mut self.rho, &term, p);
    }

    fn diagonal(&self) -> Vec<f64> {
        (0..1usize << self.n)
            .map(|s| self.rho[(s << self.n) | s].re.max(0.0))
            .collect()
    }
}

/// Exact outcome probabilities of a circuit under a noise model.
pub fn exact_probabilities(circuit: &Circuit, model: &NoiseModel) -> Result<Distribution> {
    if circuit.num_qubits > DENSITY_QUBIT_LIMIT {
        return Err(Error::TooManyQubits {
            qubits: circuit.num_qubits,
            limit: DENSITY_QUBIT_LIMIT,
        });
    }
    let plan = ExecPlan::build(circuit, model)?;
    let mut rho = Density::new(plan.num_qubits);
    for layer in &plan.layers {
        for gate in &layer.gates {
            rho.apply_unitary(&gate.action, gate.qubits.0, gate.qubits.1);
            match gate.qubits.1 {
                None => rho.depolarize_1q(gate.qubits.0, gate.p_err),
                Some(q1) => rho.depolarize_2q(gate.qubits.0, q1, gate.p_err),
            }
        }
        for idle in &layer.idles {
            rho.amplitude_damp(idle.qubit, idle.gamma);
            rho.dephase(idle.qubit, idle.p_phi);
        }
        // Measurements are deferred; see the module docs.
    }

    let diag = rho.diagonal();
    let m = plan.measured.len();
    let mut probs = vec![0.0f64; 1 << m];
    for (state, &p) in diag.iter().enumerate() {
        let mut key = 0usize;
        for (j, &q) in plan.measured.iter().enumerate() {
            if state >> q & 1 == 1 {
                key |= 1 << j;
            }
        }
        probs[key] += p;
    }
    // Readout confusion, one measured bit at a time.
    for (j, &q) in plan.measured.iter().enumerate() {
        let ro = plan.readout_flip[q];
        if ro <= 0.0 {
            continue;
        }
        let mask = 1usize << j;
        for i in 0..probs.len() {
            if i & mask == 0 {
                let (a, b) = (probs[i], probs[i | mask]);
                probs[i] = (1.0 - ro) * a + ro * b;
                probs[i | mask] = ro * a + (1.0 - ro) * b;
            }
        }
    }

    let mut out = BTreeMap::new();
    for (key, &p) in probs.iter().enumerate() {
        if p > PROB_FLOOR {
            let bits: String = (0..m.max(1))
                .rev()
                .map(|b| if key >> b & 1 == 1 { '1' } else { '0' })
                .collect();
            out.insert(bits, p);
        }
    }
    Ok(Distribution { probs: out, shots: 0 })
}
