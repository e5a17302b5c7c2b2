//! Benchmark circuit generators.
//!
//! Three deterministic families over the native basis: QFT with a chosen
//! output bitstring (the state-prep prefix realizes the requested output, so
//! different inputs reshape the start of the circuit), a GHZ chain, and a
//! trotterized transverse-field Ising model. Composite gates are decomposed
//! as
//!
//!   H      = RZ(pi/2) SX RZ(pi/2)
//!   CP(t)  = RZ(t/2)_c RZ(t/2)_t CX RZ(-t/2)_t CX
//!   RX(t)  = RZ(pi/2) SX RZ(t + pi) SX RZ(pi/2)
//!   RZZ(t) = CX RZ(t)_t CX
//!   SWAP   = CX CX CX
//!
//! each verified against its textbook matrix in the tests below (all hold up
//! to global phase).

use crate::circuit::{Circuit, GateOp};
use crate::error::{Error, Result};
use std::f64::consts::PI;

fn append_h(c: &mut Circuit, q: usize) {
    c.push(GateOp::rz(PI / 2.0, q));
    c.push(GateOp::sx(q));
    c.push(GateOp::rz(PI / 2.0, q));
}

fn append_cp(c: &mut Circuit, theta: f64, ctrl: usize, tgt: usize) {
    c.push(GateOp::rz(theta / 2.0, ctrl));
    c.push(GateOp::rz(theta / 2.0, tgt));
    c.push(GateOp::cx(ctrl, tgt));
    c.push(GateOp::rz(-theta / 2.0, tgt));
    c.push(GateOp::cx(ctrl, tgt));
}

fn append_rx(c: &mut Circuit, theta: f64, q: usize) {
    c.push(GateOp::rz(PI / 2.0, q));
    c.push(GateOp::sx(q));
    c.push(GateOp::rz(theta + PI, q));
    c.push(GateOp::sx(q));
    c.push(GateOp::rz(PI / 2.0, q));
}

fn append_rzz(c: &mut Circuit, theta: f64, a: usize, b: usize) {
    c.push(GateOp::cx(a, b));
    c.push(GateOp::rz(theta, b));
    c.push(GateOp::cx(a, b));
}

fn append_swap(c: &mut Circuit, a: usize, b: usize) {
    c.push(GateOp::cx(a, b));
    c.push(GateOp::cx(b, a));
    c.push(GateOp::cx(a, b));
}

fn append_measure_all(c: &mut Circuit) {
    for q in 0..c.num_qubits {
        c.push(GateOp::measure(q));
    }
}

/// Bits of `target` as an integer, qubit 0 being the rightmost character.
fn target_value(n: usize, target: &str) -> Result<u64> {
    if target.len() != n {
        return Err(Error::InvalidBenchmark(format!(
            "target `{target}` must have exactly {n} bits"
        )));
    }
    let mut value = 0u64;
    for (i, ch) in target.chars().enumerate() {
        let q = n - 1 - i;
        match ch {
            '0' => {}
            '1' => value |= 1 << q,
            other => {
                return Err(Error::InvalidBenchmark(format!(
                    "target contains `{other}`; only 0 and 1 are allowed"
                )))
            }
        }
    }
    Ok(value)
}

/// QFT over `n` qubits, prefixed with the preparation of the Fourier state
/// of `target` so the ideal measured output is exactly `target`.
///
/// Preparation puts every qubit in the plane state `(|0> + e^{i phi_q}|1>)/sqrt 2`
/// with `phi_q = -2 pi t / 2^(n-q)`; the phase RZ is emitted even when the
/// angle is zero so the op count does not depend on the chosen target.
pub fn qft_circuit(n: usize, target: &str) -> Result<Circuit> {
    if n == 0 || n > 32 {
        return Err(Error::InvalidBenchmark(format!("qft size {n} outside 1..=32")));
    }
    let t = target_value(n, target)?;
    let mut c = Circuit::new(n);
    for q in 0..n {
        append_h(&mut c, q);
        let window = 1u64 << (n - q);
        let phi = -2.0 * PI * ((t % window) as f64) / window as f64;
        c.push(GateOp::rz(phi, q));
    }
    for j in (0..n).rev() {
        append_h(&mut c, j);
        for m in (0..j).rev() {
            append_cp(&mut c, PI / (1u64 << (j - m)) as f64, m, j);
        }
    }
    for i in 0..n / 2 {
        append_swap(&mut c, i, n - 1 - i);
    }
    append_measure_all(&mut c);
    Ok(c)
}

/// GHZ state: H on qubit 0, then a CX chain, then measurement.
pub fn ghz_circuit(n: usize) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::InvalidBenchmark(format!("ghz needs n >= 2, got {n}")));
    }
    let mut c = Circuit::new(n);
    append_h(&mut c, 0);
    for q in 0..n - 1 {
        c.push(GateOp::cx(q, q + 1));
    }
    append_measure_all(&mut c);
    Ok(c)
}

/// Trotterized transverse-field Ising model: per step, ZZ rotations on every
/// nearest-neighbor pair, then an X rotation on every qubit.
pub fn tfim_circuit(n: usize, steps: usize, theta_zz: f64, theta_x: f64) -> Result<Circuit> {
    if n < 2 {
        return Err(Error::InvalidBenchmark(format!("tfim needs n >= 2, got {n}")));
    }
    if steps < 1 {
        return Err(Error::InvalidBenchmark("tfim needs at least one trotter step".into()));
    }
    if !(theta_zz.is_finite() && theta_x.is_finite()) {
        return Err(Error::InvalidBenchmark("tfim angles must be finite".into()));
    }
    let mut c = Circuit::new(n);
    for _ in 0..steps {
        for q in 0..n - 1 {
            append_rzz(&mut c, theta_zz, q, q + 1);
        }
        for q in 0..n {
            append_rx(&mut c, theta_x, q);
        }
    }
    append_measure_all(&mut c);
    Ok(c)
}

/// A benchmark request, as taken by the CLI.
#[derive(Clone, Debug, PartialEq)]
pub enum BenchSpec {
    Qft { n: usize, target: String },
    Ghz { n: usize },
    Tfim { n: usize, steps: usize, theta_zz: f64, theta_x: f64 },
}

impl BenchSpec {
    pub fn build(&self) -> Result<Circuit> {
        match self {
            BenchSpec::Qft { n, target } => qft_circuit(*n, target),
            BenchSpec::Ghz { n } => ghz_circuit(*n),
            BenchSpec::Tfim { n, steps, theta_zz, theta_x } => {
                tfim_circuit(*n, *steps, *theta_zz, *theta_x)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::C64;
    use crate::sim::ideal_probabilities;
    use crate::unitary::{equivalent_up_to_phase, unitary_of, Unitary};

    fn gates_only(c: &Circuit) -> Circuit {
        Circuit {
            num_qubits: c.num_qubits,
            ops: c.ops.iter().filter(|op| op.is_gate()).cloned().collect(),
        }
    }

    fn check(c: &Circuit, reference: Unitary) {
        let u = unitary_of(c).unwrap();
        assert!(equivalent_up_to_phase(&u, &reference, 1e-10).unwrap());
    }

    #[test]
    fn hadamard_decomposition() {
        let mut c = Circuit::new(1);
        append_h(&mut c, 0);
        let s = 1.0 / 2.0f64.sqrt();
        check(
            &c,
            Unitary::from_fn(2, |r, k| {
                if r == 1 && k == 1 {
                    C64::new(-s, 0.0)
                } else {
                    C64::new(s, 0.0)
                }
            }),
        );
    }

    #[test]
    fn controlled_phase_decomposition() {
        for &theta in &[0.3, PI / 2.0, -1.2, PI] {
            let mut c = Circuit::new(2);
            append_cp(&mut c, theta, 0, 1);
            check(
                &c,
                Unitary::from_fn(4, |r, k| {
                    if r != k {
                        C64::new(0.0, 0.0)
                    } else if r == 3 {
                        C64::from_polar(1.0, theta)
                    } else {
                        C64::new(1.0, 0.0)
                    }
                }),
            );
        }
    }

    #[test]
    fn rx_decomposition() {
        for &theta in &[0.0, 0.7, -2.1, PI] {
            let mut c = Circuit::new(1);
            append_rx(&mut c, theta, 0);
            let (cos, sin) = ((theta / 2.0).cos(), (theta / 2.0).sin());
            check(
                &c,
                Unitary::from_fn(2, |r, k| {
                    if r == k {
                        C64::new(cos, 0.0)
                    } else {
                        C64::new(0.0, -sin)
                    }
                }),
            );
        }
    }

    #[test]
    fn rzz_decomposition() {
        let theta = 0.9f64;
        let mut c = Circuit::new(2);
        append_rzz(&mut c, theta, 0, 1);
        check(
            &c,
            Unitary::from_fn(4, |r, k| {
                if r != k {
                    return C64::new(0.0, 0.0);
                }
                let sign = if r == 0 || r == 3 { -1.0 } else { 1.0 };
                C64::from_polar(1.0, sign * theta / 2.0)
            }),
        );
    }

    #[test]
    fn swap_decomposition() {
        let mut c = Circuit::new(2);
        append_swap(&mut c, 0, 1);
        check(
            &c,
            Unitary::from_fn(4, |r, k| {
                let swapped = ((k & 1) << 1) | (k >> 1);
                C64::new(if r == swapped { 1.0 } else { 0.0 }, 0.0)
            }),
        );
    }

    #[test]
    fn qft_hits_its_target() {
        for target in ["000", "101", "011", "111"] {
            let c = qft_circuit(3, target).unwrap();
            assert!(c.validate().is_empty());
            let dist = ideal_probabilities(&c).unwrap();
            assert!(
                dist.prob(target) > 1.0 - 1e-9,
                "target {target}: got {:?}",
                dist.probs
            );
        }
        for target in ["0", "1"] {
            let dist = ideal_probabilities(&qft_circuit(1, target).unwrap()).unwrap();
            assert!(dist.prob(target) > 1.0 - 1e-9);
        }
        for value in 0..4u32 {
            let target = format!("{value:02b}");
            let dist = ideal_probabilities(&qft_circuit(2, &target).unwrap()).unwrap();
            assert!(dist.prob(&target) > 1.0 - 1e-9, "target {target}");
        }
    }

    #[test]
    fn qft3_golden_counts() {
        // Fixed by the construction: 3 prep blocks of (H + phase RZ), 3 core
        // H's, 3 controlled phases, 1 swap, 3 measurements.
        let c = qft_circuit(3, "000").unwrap();
        assert_eq!(c.count_kind("rz"), 24);
        assert_eq!(c.count_kind("sx"), 6);
        assert_eq!(c.count_kind("cx"), 9);
        assert_eq!(c.count_kind("measure"), 3);
        assert_eq!(c.ops.len(), 42);
        // Op counts do not depend on the target.
        let other = qft_circuit(3, "110").unwrap();
        assert_eq!(other.ops.len(), c.ops.len());
        assert_eq!(other.count_kind("rz"), 24);
    }

    #[test]
    fn qft_rejects_bad_targets() {
        assert!(matches!(qft_circuit(3, "00"), Err(Error::InvalidBenchmark(_))));
        assert!(matches!(qft_circuit(3, "0a0"), Err(Error::InvalidBenchmark(_))));
        assert!(matches!(qft_circuit(0, ""), Err(Error::InvalidBenchmark(_))));
    }

    #[test]
    fn ghz_is_a_ghz_state() {
        let dist = ideal_probabilities(&ghz_circuit(2).unwrap()).unwrap();
        assert!((dist.prob("00") - 0.5).abs() < 1e-10);
        assert!((dist.prob("11") - 0.5).abs() < 1e-10);
        let dist = ideal_probabilities(&ghz_circuit(4).unwrap()).unwrap();
        assert!((dist.prob("0000") - 0.5).abs() < 1e-10);
        assert!((dist.prob("1111") - 0.5).abs() < 1e-10);
        assert_eq!(dist.support(), 2);
        let c = ghz_circuit(5).unwrap();
        assert_eq!(c.count_kind("cx"), 4);
        assert!(c.validate().is_empty());
        assert!(matches!(ghz_circuit(1), Err(Error::InvalidBenchmark(_))));
    }

    #[test]
    fn tfim_zero_angles_is_identity() {
        let c = tfim_circuit(3, 2, 0.0, 0.0).unwrap();
        assert!(c.validate().is_empty());
        let u = unitary_of(&gates_only(&c)).unwrap();
        assert!(equivalent_up_to_phase(&u, &Unitary::identity(8), 1e-10).unwrap());
    }

    #[test]
    fn tfim_step_matches_closed_form() {
        // One step on two qubits is RX(tx) x RX(tx) applied after the ZZ
        // rotation; both factors have closed-form matrices.
        let (tzz, tx) = (0.7, 0.3);
        let c = tfim_circuit(2, 1, tzz, tx).unwrap();
        let u = unitary_of(&gates_only(&c)).unwrap();
        let (cos, sin) = ((tx / 2.0).cos(), (tx / 2.0).sin());
        let rx = [
            [C64::new(cos, 0.0), C64::new(0.0, -sin)],
            [C64::new(0.0, -sin), C64::new(cos, 0.0)],
        ];
        let rx2 = Unitary::from_fn(4, |r, k| {
            rx[r >> 1][k >> 1] * rx[r & 1][k & 1]
        });
        let rzz = Unitary::from_fn(4, |r, k| {
            if r != k {
                return C64::new(0.0, 0.0);
            }
            let sign = if r == 0 || r == 3 { -1.0 } else { 1.0 };
            C64::from_polar(1.0, sign * tzz / 2.0)
        });
        let step = rx2.mul(&rzz).unwrap();
        assert!(equivalent_up_to_phase(&u, &step, 1e-8).unwrap());
    }

    #[test]
    fn tfim_grows_linearly_and_validates_args() {
        let len = |steps| tfim_circuit(4, steps, 0.5, 0.5).unwrap().ops.len();
        assert_eq!(len(2) - len(1), len(3) - len(2));
        assert!(matches!(tfim_circuit(1, 1, 0.5, 0.5), Err(Error::InvalidBenchmark(_))));
        assert!(matches!(tfim_circuit(3, 0, 0.5, 0.5), Err(Error::InvalidBenchmark(_))));
        assert!(matches!(
            tfim_circuit(3, 1, f64::NAN, 0.5),
            Err(Error::InvalidBenchmark(_))
        ));
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(qft_circuit(3, "101").unwrap(), qft_circuit(3, "101").unwrap());
        assert_eq!(ghz_circuit(4).unwrap(), ghz_circuit(4).unwrap());
        assert_eq!(
            tfim_circuit(3, 2, 0.4, 0.9).unwrap(),
            tfim_circuit(3, 2, 0.4, 0.9).unwrap()
        );
        let spec = BenchSpec::Qft { n: 2, target: "10".into() };
        assert_eq!(spec.build().unwrap(), qft_circuit(2, "10").unwrap());
    }
}
