//! Reversed-pair insertion.
//!
//! The core transform: after a chosen gate `g`, insert `r` repetitions of
//! `(g†, g)` between two full-width barriers. The product is the identity, so
//! the ideal output is untouched, while on noisy hardware the extra physical
//! gates amplify exactly the error contributed by `g`'s location. One variant
//! per eligible gate makes a suite; scoring each variant against the
//! unmodified circuit ranks the gates.

use crate::circuit::{adjoint_of, Circuit, GateKind, GateOp, OpOrigin};
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// Why an op index produced no variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SkipReason {
    /// RZ is virtual (error free) and only probed when explicitly requested.
    VirtualRz,
    Barrier,
    Measure,
}

impl SkipReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            SkipReason::VirtualRz => "rz-virtual",
            SkipReason::Barrier => "barrier",
            SkipReason::Measure => "measure",
        }
    }
}

/// An op index excluded from a suite, with the rule that excluded it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkippedOp {
    pub op_index: usize,
    pub reason: SkipReason,
}

/// One per-gate variant circuit.
#[derive(Clone, Debug)]
pub struct SuiteVariant {
    /// Index of the reversed gate in the base circuit.
    pub gate_index: usize,
    pub circuit: Circuit,
}

/// Every per-gate variant of a circuit at a fixed amplification, plus the
/// bookkeeping needed to interpret results.
#[derive(Clone, Debug)]
pub struct ReversalSuite {
    pub base: Circuit,
    /// Reversed-pair repetitions inserted per variant.
    pub reversals: usize,
    /// Whether virtual RZ gates received variants.
    pub include_rz: bool,
    pub variants: Vec<SuiteVariant>,
    pub skipped: Vec<SkippedOp>,
}

/// Indices of ops that would receive a variant: SX/X/CX always, RZ only when
/// `include_rz` is set, barriers and measurements never.
pub fn eligible_gate_indices(circuit: &Circuit, include_rz: bool) -> Vec<usize> {
    circuit
        .ops
        .iter()
        .enumerate()
        .filter(|(_, op)| match op.kind {
            GateKind::Rz(_) => include_rz,
            GateKind::Sx | GateKind::X | GateKind::Cx => true,
            GateKind::Barrier | GateKind::Measure => false,
        })
        .map(|(i, _)| i)
        .collect()
}

fn check_no_measure_before(circuit: &Circuit, insert_after: usize) -> Result<()> {
    // The inserted block opens with a full-width barrier; a barrier after a
    // measurement would break the measure-last invariant, so reversal across
    // an earlier measurement is unsupported.
    for (i, op) in circuit.ops[..=insert_after].iter().enumerate() {
        if op.kind == GateKind::Measure {
            return Err(Error::InsertAfterMeasure { measure_index: i });
        }
    }
    Ok(())
}

/// Inserted block for a gate sequence: opening barrier, `r` repetitions of
/// (adjoints in reverse order, originals in order), closing barrier.
fn reversal_block(circuit: &Circuit, members: &[&GateOp], r: usize) -> Result<Vec<GateOp>> {
    let fence = circuit.full_barrier().with_origin(OpOrigin::InsertedBarrier);
    let mut block = Vec::with_capacity(2 + 2 * r * members.len());
    block.push(fence.clone());
    for _ in 0..r {
        for op in members.iter().rev() {
            block.push(adjoint_of(op)?.with_origin(OpOrigin::InsertedReverse));
        }
        for op in members.iter() {
            block.push((*op).clone().with_origin(OpOrigin::InsertedForward));
        }
    }
    block.push(fence);
    Ok(block)
}

/// Build the variant that amplifies the gate at `gate_index` with `r`
/// reversed pairs.
pub fn insert_reversal(circuit: &Circuit, gate_index: usize, r: usize) -> Result<Circuit> {
    if r == 0 {
        return Err(Error::ZeroReversals);
    }
    let op = circuit
        .ops
        .get(gate_index)
        .ok_or(Error::IndexOutOfRange { index: gate_index, len: circuit.ops.len() })?;
    if !op.is_gate() {
        return Err(Error::NotReversible { index: gate_index, kind: op.kind.name() });
    }
    check_no_measure_before(circuit, gate_index)?;
    let block = reversal_block(circuit, &[op], r)?;
    let mut ops = Vec::with_capacity(circuit.ops.len() + block.len());
    ops.extend_from_slice(&circuit.ops[..=gate_index]);
    ops.extend(block);
    ops.extend_from_slice(&circuit.ops[gate_index + 1..]);
    Ok(Circuit { num_qubits: circuit.num_qubits, ops })
}

/// Build one variant per eligible gate.
pub fn generate_suite(circuit: &Circuit, r: usize, include_rz: bool) -> Result<ReversalSuite> {
    if r == 0 {
        return Err(Error::ZeroReversals);
    }
    let mut variants = Vec::new();
    let mut skipped = Vec::new();
    for (i, op) in circuit.ops.iter().enumerate() {
        let reason = match op.kind {
            GateKind::Rz(_) if !include_rz => Some(SkipReason::VirtualRz),
            GateKind::Barrier => Some(SkipReason::Barrier),
            GateKind::Measure => Some(SkipReason::Measure),
            _ => None,
        };
        match reason {
            Some(reason) => skipped.push(SkippedOp { op_index: i, reason }),
            None => variants.push(SuiteVariant {
                gate_index: i,
                circuit: insert_reversal(circuit, i, r)?,
            }),
        }
    }
    Ok(ReversalSuite {
        base: circuit.clone(),
        reversals: r,
        include_rz,
        variants,
        skipped,
    })
}

/// Reverse a set of gates as one unit: after the set's last member, insert
/// `r` repetitions of (member adjoints in reverse order, members in original
/// order) between full-width barriers.
///
/// The member set must be contiguous per qubit: no non-member op touching any
/// member's qubit may sit between two members, otherwise the block would not
/// cancel the members alone and the score could not be attributed to the set.
pub fn insert_group_reversal(
    circuit: &Circuit,
    indices: &BTreeSet<usize>,
    r: usize,
) -> Result<Circuit> {
    if r == 0 {
        return Err(Error::ZeroReversals);
    }
    let first = *indices.iter().next().ok_or(Error::EmptyGroup)?;
    let last = *indices.iter().next_back().expect("non-empty");
    for &i in indices {
        let op = circuit
            .ops
            .get(i)
            .ok_or(Error::IndexOutOfRange { index: i, len: circuit.ops.len() })?;
        if !op.is_gate() {
            return Err(Error::NotReversible { index: i, kind: op.kind.name() });
        }
    }
    let member_qubits: BTreeSet<usize> = indices
        .iter()
        .flat_map(|&i| circuit.ops[i].qubits.iter().copied())
        .collect();
    for j in first + 1..last {
        if indices.contains(&j) {
            continue;
        }
        if circuit.ops[j].qubits.iter().any(|q| member_qubits.contains(q)) {
            return Err(Error::NonContiguousGroup { blocker: j });
        }
    }
    check_no_measure_before(circuit, last)?;
    let members: Vec<&GateOp> = indices.iter().map(|&i| &circuit.ops[i]).collect();
    let block = reversal_block(circuit, &members, r)?;
    let mut ops = Vec::with_capacity(circuit.ops.len() + block.len());
    ops.extend_from_slice(&circuit.ops[..=last]);
    ops.extend(block);
    ops.extend_from_slice(&circuit.ops[last + 1..]);
    Ok(Circuit { num_qubits: circuit.num_qubits, ops })
}
