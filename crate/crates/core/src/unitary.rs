//! Dense unitary construction for small circuits.
//!
//! Intended as a verification oracle: exact matrices up to 10 qubits, plus a
//! global-phase-insensitive equivalence check.

use crate::circuit::{Circuit, GateKind};
use crate::error::{Error, Result};
use crate::kernels::{self, C64, Mat2, ONE, ZERO};

/// Maximum register width accepted by [`unitary_of`].
pub const UNITARY_QUBIT_LIMIT: usize = 10;

/// Dense complex matrix, row major.
#[derive(Clone, Debug, PartialEq)]
pub struct Unitary {
    dim: usize,
    data: Vec<C64>,
}

impl Unitary {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = ONE;
        }
        Unitary { dim, data }
    }

    /// Build from a row-major element function.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Unitary { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim + col]
    }

    pub fn mul(&self, rhs: &Unitary) -> Result<Unitary> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: rhs.dim });
        }
        let d = self.dim;
        let mut out = vec![ZERO; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..d {
                    out[i * d + j] += a * rhs.data[k * d + j];
                }
            }
        }
        Ok(Unitary { dim: d, data: out })
    }

    pub fn dagger(&self) -> Unitary {
        Unitary::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    /// Largest entry-wise magnitude of `self - other`.
    pub fn max_diff(&self, other: &Unitary) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest deviation of `U U†` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let product = self.mul(&self.dagger()).expect("same dimension");
        let id = Unitary::identity(self.dim);
        product.max_diff(&id).expect("same dimension")
    }
}

fn matrix_1q(kind: GateKind, adjoint: bool) -> Option<Mat2> {
    match kind {
        GateKind::Rz(theta) => Some(kernels::rz_matrix(theta)),
        GateKind::Sx => Some(kernels::sx_matrix(adjoint)),
        GateKind::X => Some(kernels::x_matrix()),
        _ => None,
    }
}

/// Fold a circuit's gates into a single matrix. Barriers are skipped;
/// measurements are rejected. Limited to [`UNITARY_QUBIT_LIMIT`] qubits.
pub fn unitary_of(circuit: &Circuit) -> Result<Unitary> {
    if circuit.num_qubits > UNITARY_QUBIT_LIMIT {
        return Err(Error::TooManyQubits {
            qubits: circuit.num_qubits,
            limit: UNITARY_QUBIT_LIMIT,
        });
    }
    let dim = 1usize << circuit.num_qubits;
    // Columns of the accumulated matrix evolve like independent states, so
    // store them contiguously (column major) and reuse the kernels.
    let mut cols = vec![ZERO; dim * dim];
    for c in 0..dim {
        cols[c * dim + c] = ONE;
    }
    for (index, op) in circuit.ops.iter().enumerate() {
        match op.kind {
            GateKind::Barrier => continue,
            GateKind::Measure => {
                return Err(Error::NonUnitaryOp { index, kind: "measure" })
            }
            GateKind::Cx => {
                for col in cols.chunks_mut(dim) {
                    kernels::apply_cx(col, op.qubits[0], op.qubits[1]);
                }
            }
            _ => {
                let m = matrix_1q(op.kind, op.adjoint).expect("one-qubit gate");
                for col in cols.chunks_mut(dim) {
                    kernels::apply_1q(col, op.qubits[0], &m);
                }
            }
        }
    }
    Ok(Unitary::from_fn(dim, |i, j| cols[j * dim + i]))
}

/// Whether `a == c * b` for some unit-modulus scalar `c`, within `tol` on
/// the entry-wise max norm. The scalar is read off the largest-magnitude
/// entry of `b`.
pub fn equivalent_up_to_phase(a: &Unitary, b: &Unitary, tol: f64) -> Result<bool> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch { left: a.dim, right: b.dim });
    }
    let (mut best, mut best_mag) = (0usize, 0.0f64);
    for (i, v) in b.data.iter().enumerate() {
        let mag = v.norm();
        if mag > best_mag {
            best = i;
            best_mag = mag;
        }
    }
    if best_mag == 0.0 {
        return Ok(a.data.iter().all(|v| v.norm() <= tol));
    }
    let c = a.data[best] / b.data[best];
    if c.norm() == 0.0 {
        return Ok(false);
    }
    let phase = c / c.norm();
    let worst = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| (x - phase * y).norm())
        .fold(0.0, f64::max);
    Ok(worst <= tol)
}
