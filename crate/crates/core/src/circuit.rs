//! Circuit intermediate representation.
//!
//! Circuits are flat ordered op lists over the basis `{RZ(theta), SX, X, CX}`
//! plus `Barrier` and `Measure`. Bit order is little-endian throughout: qubit 0
//! is the least-significant bit of a measured bitstring, i.e. the rightmost
//! character of an outcome key.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Gate and non-gate op kinds supported by the toolkit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GateKind {
    /// Virtual Z rotation by the given angle in radians.
    Rz(f64),
    /// Square root of X.
    Sx,
    /// Pauli X.
    X,
    /// Controlled X; the first qubit of the op is the control.
    Cx,
    /// Scheduling fence over the op's qubit set.
    Barrier,
    /// Computational-basis readout of a single qubit.
    Measure,
}

impl GateKind {
    /// Lower-case name used in QASM text, reports and diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::Rz(_) => "rz",
            GateKind::Sx => "sx",
            GateKind::X => "x",
            GateKind::Cx => "cx",
            GateKind::Barrier => "barrier",
            GateKind::Measure => "measure",
        }
    }

    /// True for RZ/SX/X/CX.
    pub fn is_gate(&self) -> bool {
        !matches!(self, GateKind::Barrier | GateKind::Measure)
    }
}

/// Provenance of an op within a transformed circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpOrigin {
    /// Present in the input circuit.
    Original,
    /// Adjoint half of an inserted reversed pair.
    InsertedReverse,
    /// Re-applied forward half of an inserted reversed pair.
    InsertedForward,
    /// Full-width barrier added by a transform (reversal isolation or
    /// layer serialization).
    InsertedBarrier,
}

/// One op in a circuit.
#[derive(Clone, Debug, PartialEq)]
pub struct GateOp {
    pub kind: GateKind,
    /// Target qubits. CX stores `[control, target]`; barriers store their
    /// full fence set.
    pub qubits: Vec<usize>,
    /// Adjoint marker; only meaningful for SX (RZ adjoints negate the angle,
    /// X and CX are self-inverse).
    pub adjoint: bool,
    pub origin: OpOrigin,
}

impl GateOp {
    fn new(kind: GateKind, qubits: Vec<usize>) -> Self {
        GateOp { kind, qubits, adjoint: false, origin: OpOrigin::Original }
    }

    pub fn rz(theta: f64, q: usize) -> Self {
        Self::new(GateKind::Rz(theta), vec![q])
    }

    pub fn sx(q: usize) -> Self {
        Self::new(GateKind::Sx, vec![q])
    }

    /// SX adjoint as a first-class op.
    pub fn sx_adj(q: usize) -> Self {
        GateOp { adjoint: true, ..Self::new(GateKind::Sx, vec![q]) }
    }

    pub fn x(q: usize) -> Self {
        Self::new(GateKind::X, vec![q])
    }

    pub fn cx(control: usize, target: usize) -> Self {
        Self::new(GateKind::Cx, vec![control, target])
    }

    pub fn barrier(qubits: Vec<usize>) -> Self {
        Self::new(GateKind::Barrier, qubits)
    }

    pub fn measure(q: usize) -> Self {
        Self::new(GateKind::Measure, vec![q])
    }

    pub fn with_origin(mut self, origin: OpOrigin) -> Self {
        self.origin = origin;
        self
    }

    /// True for RZ/SX/X/CX.
    pub fn is_gate(&self) -> bool {
        self.kind.is_gate()
    }

    /// True for gates that take physical duration and carry gate error
    /// (SX/X/CX). RZ is a virtual frame change: zero duration, error free.
    pub fn is_physical(&self) -> bool {
        matches!(self.kind, GateKind::Sx | GateKind::X | GateKind::Cx)
    }

    /// Display name; SX with the adjoint flag reads `sxdg`.
    pub fn display_name(&self) -> &'static str {
        if self.adjoint && self.kind == GateKind::Sx {
            "sxdg"
        } else {
            self.kind.name()
        }
    }
}

impl fmt::Display for GateOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GateKind::Rz(theta) => write!(f, "rz({theta})")?,
            _ => write!(f, "{}", self.display_name())?,
        }
        let qs: Vec<String> = self.qubits.iter().map(|q| format!("q{q}")).collect();
        write!(f, " {}", qs.join(","))
    }
}

/// Adjoint of a single op.
///
/// RZ negates its angle, X and CX are self-inverse, SX toggles its adjoint
/// flag. Barriers and measurements have no adjoint.
pub fn adjoint_of(op: &GateOp) -> Result<GateOp> {
    let mut out = op.clone();
    match op.kind {
        GateKind::Rz(theta) => {
            out.kind = GateKind::Rz(-theta);
            out.adjoint = false;
        }
        GateKind::Sx => out.adjoint = !op.adjoint,
        GateKind::X | GateKind::Cx => out.adjoint = false,
        GateKind::Barrier | GateKind::Measure => {
            return Err(Error::NoAdjoint { kind: op.kind.name() })
        }
    }
    Ok(out)
}

/// A violation found by [`Circuit::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Offending op index; `None` for circuit-level violations.
    pub op_index: Option<usize>,
    pub rule: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.op_index {
            Some(i) => write!(f, "op {}: {}", i, self.rule),
            None => write!(f, "{}", self.rule),
        }
    }
}

/// Flat ordered op list over a fixed-width qubit register.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub num_qubits: usize,
    pub ops: Vec<GateOp>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit { num_qubits, ops: Vec::new() }
    }

    pub fn push(&mut self, op: GateOp) {
        self.ops.push(op);
    }

    /// Barrier spanning the whole register.
    pub fn full_barrier(&self) -> GateOp {
        GateOp::barrier((0..self.num_qubits).collect())
    }

    /// Qubits read out, sorted ascending. Empty when the circuit has no
    /// measure ops (simulators then treat every qubit as measured).
    pub fn measured_qubits(&self) -> Vec<usize> {
        let mut qs: Vec<usize> = self
            .ops
            .iter()
            .filter(|op| op.kind == GateKind::Measure)
            .map(|op| op.qubits[0])
            .collect();
        qs.sort_unstable();
        qs.dedup();
        qs
    }

    /// Count ops of a given kind name (`"rz"`, `"sx"`, `"x"`, `"cx"`,
    /// `"barrier"`, `"measure"`).
    pub fn count_kind(&self, name: &str) -> usize {
        self.ops.iter().filter(|op| op.kind.name() == name).count()
    }

    /// Structural validation. Returns every violated rule; an empty list
    /// means the circuit is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.num_qubits == 0 {
            out.push(Violation {
                op_index: None,
                rule: "circuit must have at least one qubit".into(),
            });
        }
        // Per-qubit measurement bookkeeping for the measure-last rule.
        let mut measured = vec![false; self.num_qubits];
        for (i, op) in self.ops.iter().enumerate() {
            let arity_ok = match op.kind {
                GateKind::Cx => op.qubits.len() == 2,
                GateKind::Barrier => !op.qubits.is_empty(),
                _ => op.qubits.len() == 1,
            };
            if !arity_ok {
                out.push(Violation {
                    op_index: Some(i),
                    rule: format!(
                        "`{}` takes {} qubit(s), got {}",
                        op.kind.name(),
                        match op.kind {
                            GateKind::Cx => "2",
                            GateKind::Barrier => "1 or more",
                            _ => "1",
                        },
                        op.qubits.len()
                    ),
                });
            }
            let mut seen = std::collections::BTreeSet::new();
            for &q in &op.qubits {
                if q >= self.num_qubits {
                    out.push(Violation {
                        op_index: Some(i),
                        rule: format!("qubit {q} out of range (register width {})", self.num_qubits),
                    });
                } else if !seen.insert(q) {
                    out.push(Violation {
                        op_index: Some(i),
                        rule: format!("qubit {q} repeated"),
                    });
                }
            }
            if let GateKind::Rz(theta) = op.kind {
                if !theta.is_finite() {
                    out.push(Violation {
                        op_index: Some(i),
                        rule: "rz angle must be finite".into(),
                    });
                }
            }
            if op.adjoint && op.kind != GateKind::Sx {
                out.push(Violation {
                    op_index: Some(i),
                    rule: format!("adjoint flag is only meaningful on sx, found on `{}`", op.kind.name()),
                });
            }
            for &q in op.qubits.iter().filter(|&&q| q < self.num_qubits) {
                if op.kind == GateKind::Measure {
                    if measured[q] {
                        out.push(Violation {
                            op_index: Some(i),
                            rule: format!("qubit {q} measured more than once"),
                        });
                    }
                    measured[q] = true;
                } else if measured[q] {
                    out.push(Violation {
                        op_index: Some(i),
                        rule: format!("op follows measurement of qubit {q}"),
                    });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjoint_rz_negates_angle() {
        let op = GateOp::rz(0.75, 2);
        let adj = adjoint_of(&op).unwrap();
        assert_eq!(adj.kind, GateKind::Rz(-0.75));
        assert!(!adj.adjoint);
        assert_eq!(adj.qubits, vec![2]);
    }

    #[test]
    fn adjoint_sx_toggles_flag() {
        let adj = adjoint_of(&GateOp::sx(0)).unwrap();
        assert!(adj.adjoint);
        let back = adjoint_of(&adj).unwrap();
        assert_eq!(back, GateOp::sx(0));
    }

    #[test]
    fn adjoint_self_inverse_kinds() {
        assert_eq!(adjoint_of(&GateOp::x(1)).unwrap(), GateOp::x(1));
        assert_eq!(adjoint_of(&GateOp::cx(0, 1)).unwrap(), GateOp::cx(0, 1));
    }

    #[test]
    fn adjoint_rejects_barrier_and_measure() {
        assert!(matches!(
            adjoint_of(&GateOp::barrier(vec![0, 1])),
            Err(Error::NoAdjoint { kind: "barrier" })
        ));
        assert!(matches!(
            adjoint_of(&GateOp::measure(0)),
            Err(Error::NoAdjoint { kind: "measure" })
        ));
    }

    #[test]
    fn adjoint_is_involutive() {
        let ops = [
            GateOp::rz(1.25, 0),
            GateOp::sx(0),
            GateOp::sx_adj(0),
            GateOp::x(0),
            GateOp::cx(1, 0),
        ];
        for op in ops {
            let twice = adjoint_of(&adjoint_of(&op).unwrap()).unwrap();
            assert_eq!(twice, op, "double adjoint must restore {op}");
        }
    }

    #[test]
    fn validate_clean_circuit() {
        let mut c = Circuit::new(2);
        c.push(GateOp::sx(0));
        c.push(GateOp::cx(0, 1));
        c.push(GateOp::barrier(vec![0, 1]));
        c.push(GateOp::measure(0));
        c.push(GateOp::measure(1));
        assert!(c.validate().is_empty());
    }

    #[test]
    fn validate_flags_bad_ops() {
        let mut c = Circuit::new(2);
        c.push(GateOp { kind: GateKind::Cx, qubits: vec![0, 0], adjoint: false, origin: OpOrigin::Original });
        c.push(GateOp::x(5));
        c.push(GateOp::rz(f64::NAN, 0));
        c.push(GateOp { kind: GateKind::X, qubits: vec![1], adjoint: true, origin: OpOrigin::Original });
        let violations = c.validate();
        assert_eq!(violations.len(), 4);
        assert!(violations.iter().all(|v| v.op_index.is_some()));
    }

    #[test]
    fn validate_measure_must_be_last_per_qubit() {
        let mut c = Circuit::new(2);
        c.push(GateOp::measure(0));
        c.push(GateOp::x(0));
        let violations = c.validate();
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].op_index, Some(1));

        // A gate on another qubit after a measurement is fine.
        let mut c = Circuit::new(2);
        c.push(GateOp::measure(0));
        c.push(GateOp::x(1));
        assert!(c.validate().is_empty());
    }

    #[test]
    fn measured_qubits_sorted_and_deduplicated() {
        let mut c = Circuit::new(3);
        c.push(GateOp::measure(2));
        c.push(GateOp::measure(0));
        assert_eq!(c.measured_qubits(), vec![0, 2]);
        assert!(Circuit::new(1).measured_qubits().is_empty());
    }
}
