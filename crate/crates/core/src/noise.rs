//! Noise model configuration.
//!
//! A [`NoiseModel`] drives the trajectory simulator: depolarizing error per
//! gate, idle-qubit decoherence from T1/T2 over scheduled layer durations,
//! readout bit flips, and a crosstalk multiplier for gates co-scheduled on
//! coupled qubits. Models serialize to and from JSON; missing fields fall
//! back to the built-in defaults.

use crate::circuit::GateKind;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A per-qubit quantity: either one value shared by every qubit or an
/// explicit list indexed by qubit. In JSON write either `0.02` or
/// `[0.02, 0.05, 0.02]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PerQubit {
    Uniform(f64),
    PerQubit(Vec<f64>),
}

impl PerQubit {
    pub fn get(&self, qubit: usize) -> f64 {
        match self {
            PerQubit::Uniform(v) => *v,
            PerQubit::PerQubit(vs) => vs[qubit],
        }
    }

    fn check(&self, num_qubits: usize, name: &str, min: f64, max: f64) -> Result<()> {
        let values: Vec<f64> = match self {
            PerQubit::Uniform(v) => vec![*v],
            PerQubit::PerQubit(vs) => {
                if vs.len() < num_qubits {
                    return Err(Error::InvalidNoiseModel(format!(
                        "{name} lists {} qubits, circuit needs {num_qubits}",
                        vs.len()
                    )));
                }
                vs.clone()
            }
        };
        for v in values {
            if !(min..=max).contains(&v) || v.is_nan() {
                return Err(Error::InvalidNoiseModel(format!(
                    "{name} value {v} outside [{min}, {max}]"
                )));
            }
        }
        Ok(())
    }
}

/// Gate durations in nanoseconds, keyed by kind. Barriers always take zero
/// time; RZ must as well (it is a virtual frame change).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Durations {
    pub rz: f64,
    pub sx: f64,
    pub x: f64,
    pub cx: f64,
    pub measure: f64,
}

impl Default for Durations {
    fn default() -> Self {
        Durations { rz: 0.0, sx: 35.0, x: 35.0, cx: 300.0, measure: 1000.0 }
    }
}

impl Durations {
    pub fn of(&self, kind: GateKind) -> f64 {
        match kind {
            GateKind::Rz(_) => self.rz,
            GateKind::Sx => self.sx,
            GateKind::X => self.x,
            GateKind::Cx => self.cx,
            GateKind::Measure => self.measure,
            GateKind::Barrier => 0.0,
        }
    }
}

/// Simulator noise parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseModel {
    /// Depolarizing probability per one-qubit physical gate (SX/X).
    pub p1: f64,
    /// Depolarizing probability per CX.
    pub p2: f64,
    /// Bit-flip probability applied to each measured bit.
    pub readout_flip: PerQubit,
    /// Relaxation time in nanoseconds.
    pub t1_ns: PerQubit,
    /// Dephasing time in nanoseconds; must satisfy `t2 <= 2*t1` per qubit.
    pub t2_ns: PerQubit,
    pub durations_ns: Durations,
    /// Multiplier (`>= 1`) on a gate's depolarizing probability when another
    /// physical gate runs in the same layer on a coupled neighbor qubit.
    pub crosstalk_factor: f64,
    /// Undirected coupling pairs. `None` means a line: `(0,1), (1,2), ...`
    /// over the executed circuit's register.
    pub coupling: Option<Vec<(usize, usize)>>,
}

impl Default for NoiseModel {
    fn default() -> Self {
        NoiseModel {
            p1: 0.001,
            p2: 0.01,
            readout_flip: PerQubit::Uniform(0.02),
            t1_ns: PerQubit::Uniform(100_000.0),
            t2_ns: PerQubit::Uniform(80_000.0),
            durations_ns: Durations::default(),
            crosstalk_factor: 2.0,
            coupling: None,
        }
    }
}

impl NoiseModel {
    /// Noise-free model: every error probability zero, no decoherence,
    /// zero durations.
    pub fn ideal() -> Self {
        NoiseModel {
            p1: 0.0,
            p2: 0.0,
            readout_flip: PerQubit::Uniform(0.0),
            t1_ns: PerQubit::Uniform(f64::INFINITY),
            t2_ns: PerQubit::Uniform(f64::INFINITY),
            durations_ns: Durations { rz: 0.0, sx: 0.0, x: 0.0, cx: 0.0, measure: 0.0 },
            crosstalk_factor: 1.0,
            coupling: None,
        }
    }

    /// Parse a model from JSON. Unknown fields are rejected; omitted fields
    /// take their default values. Structural checks that need the circuit
    /// width happen in [`NoiseModel::validate`].
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidNoiseModel(format!("JSON parse failed: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("noise model serializes")
    }

    /// Check every invariant against a register of `num_qubits` qubits.
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        for (name, v) in [("p1", self.p1), ("p2", self.p2)] {
            if !(0.0..=1.0).contains(&v) || v.is_nan() {
                return Err(Error::InvalidNoiseModel(format!(
                    "{name} value {v} outside [0, 1]"
                )));
            }
        }
        self.readout_flip.check(num_qubits, "readout_flip", 0.0, 1.0)?;
        self.t1_ns.check(num_qubits, "t1_ns", f64::MIN_POSITIVE, f64::INFINITY)?;
        self.t2_ns.check(num_qubits, "t2_ns", f64::MIN_POSITIVE, f64::INFINITY)?;
        for q in 0..num_qubits {
            let (t1, t2) = (self.t1_ns.get(q), self.t2_ns.get(q));
            if t2 > 2.0 * t1 {
                return Err(Error::InvalidNoiseModel(format!(
                    "qubit {q}: t2 ({t2}) exceeds 2*t1 ({})",
                    2.0 * t1
                )));
            }
        }
        if !(self.crosstalk_factor >= 1.0) {
            return Err(Error::InvalidNoiseModel(format!(
                "crosstalk_factor {} must be >= 1",
                self.crosstalk_factor
            )));
        }
        let d = &self.durations_ns;
        for (name, v) in [
            ("rz", d.rz),
            ("sx", d.sx),
            ("x", d.x),
            ("cx", d.cx),
            ("measure", d.measure),
        ] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::InvalidNoiseModel(format!(
                    "duration for {name} must be finite and non-negative, got {v}"
                )));
            }
        }
        if d.rz != 0.0 {
            return Err(Error::InvalidNoiseModel(
                "rz is virtual and must have zero duration".into(),
            ));
        }
        if let Some(pairs) = &self.coupling {
            for &(a, b) in pairs {
                if a == b {
                    return Err(Error::InvalidNoiseModel(format!(
                        "coupling pair ({a}, {b}) must join distinct qubits"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Undirected coupling pairs in effect for a register of the given
    /// width; falls back to the line topology.
    pub fn coupling_pairs(&self, num_qubits: usize) -> Vec<(usize, usize)> {
        match &self.coupling {
            Some(pairs) => pairs.clone(),
            None => (1..num_qubits).map(|q| (q - 1, q)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_model_is_valid() {
        NoiseModel::default().validate(5).unwrap();
        NoiseModel::ideal().validate(5).unwrap();
    }

    #[test]
    fn json_round_trip_and_partial_config() {
        let m = NoiseModel::default();
        let back = NoiseModel::from_json(&m.to_json()).unwrap();
        assert_eq!(m, back);

        let partial = NoiseModel::from_json(r#"{"p1": 0.005}"#).unwrap();
        assert_eq!(partial.p1, 0.005);
        assert_eq!(partial.p2, NoiseModel::default().p2);
    }

    #[test]
    fn json_rejects_unknown_fields() {
        assert!(NoiseModel::from_json(r#"{"p3": 0.1}"#).is_err());
    }

    #[test]
    fn per_qubit_lists_parse_and_validate() {
        let m = NoiseModel::from_json(r#"{"readout_flip": [0.01, 0.03]}"#).unwrap();
        assert_eq!(m.readout_flip.get(1), 0.03);
        m.validate(2).unwrap();
        // List shorter than the register is rejected.
        assert!(m.validate(3).is_err());
    }

    #[test]
    fn invariants_rejected() {
        let mut m = NoiseModel::default();
        m.p1 = 1.5;
        assert!(m.validate(2).is_err());

        let mut m = NoiseModel::default();
        m.t2_ns = PerQubit::Uniform(300_000.0);
        assert!(m.validate(2).is_err());

        let mut m = NoiseModel::default();
        m.crosstalk_factor = 0.5;
        assert!(m.validate(2).is_err());

        let mut m = NoiseModel::default();
        m.durations_ns.rz = 10.0;
        assert!(m.validate(2).is_err());
    }

    #[test]
    fn line_coupling_by_default() {
        let m = NoiseModel::default();
        assert_eq!(m.coupling_pairs(4), vec![(0, 1), (1, 2), (2, 3)]);
        let m = NoiseModel { coupling: Some(vec![(0, 2)]), ..NoiseModel::default() };
        assert_eq!(m.coupling_pairs(4), vec![(0, 2)]);
    }
}
