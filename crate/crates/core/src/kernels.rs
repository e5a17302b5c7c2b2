//! Low-level state-vector primitives shared by the unitary builder, the
//! trajectory simulator and the density-matrix oracle.
//!
//! States are contiguous complex arrays indexed little-endian: bit `q` of an
//! array index holds qubit `q`. A density matrix of `n` qubits reuses the
//! same kernels by treating its row-major storage as a `2n`-bit state whose
//! column bits occupy positions `0..n` and row bits `n..2n`.

use num_complex::Complex64;

pub(crate) type C64 = Complex64;

pub(crate) const ZERO: C64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: C64 = Complex64::new(1.0, 0.0);

/// A 2x2 matrix in row-major order `[m00, m01, m10, m11]`.
pub(crate) type Mat2 = [C64; 4];

pub(crate) fn rz_matrix(theta: f64) -> Mat2 {
    let half = theta / 2.0;
    [
        Complex64::from_polar(1.0, -half),
        ZERO,
        ZERO,
        Complex64::from_polar(1.0, half),
    ]
}

pub(crate) fn sx_matrix(adjoint: bool) -> Mat2 {
    let (p, m) = (Complex64::new(0.5, 0.5), Complex64::new(0.5, -0.5));
    if adjoint {
        [m, p, p, m]
    } else {
        [p, m, m, p]
    }
}

pub(crate) fn x_matrix() -> Mat2 {
    [ZERO, ONE, ONE, ZERO]
}

pub(crate) fn y_matrix() -> Mat2 {
    [ZERO, Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0), ZERO]
}

pub(crate) fn z_matrix() -> Mat2 {
    [ONE, ZERO, ZERO, -ONE]
}

pub(crate) fn conj2(m: &Mat2) -> Mat2 {
    [m[0].conj(), m[1].conj(), m[2].conj(), m[3].conj()]
}

/// Apply a 2x2 matrix to bit `q` of the index space.
pub(crate) fn apply_1q(state: &mut [C64], q: usize, m: &Mat2) {
    let mask = 1usize << q;
    let low = mask - 1;
    for i in 0..state.len() / 2 {
        let base = ((i & !low) << 1) | (i & low);
        let a = state[base];
        let b = state[base | mask];
        state[base] = m[0] * a + m[1] * b;
        state[base | mask] = m[2] * a + m[3] * b;
    }
}

/// Apply CX with control bit `c` and target bit `t`.
pub(crate) fn apply_cx(state: &mut [C64], c: usize, t: usize) {
    let (cmask, tmask) = (1usize << c, 1usize << t);
    for i in 0..state.len() {
        if i & cmask != 0 && i & tmask == 0 {
            state.swap(i, i | tmask);
        }
    }
}

/// Apply a Pauli selected by `which` (0 = X, 1 = Y, 2 = Z) to bit `q`.
pub(crate) fn apply_pauli(state: &mut [C64], q: usize, which: u8) {
    let mask = 1usize << q;
    match which {
        0 => {
            for i in 0..state.len() {
                if i & mask == 0 {
                    state.swap(i, i | mask);
                }
            }
        }
        1 => {
            let im = Complex64::new(0.0, 1.0);
            for i in 0..state.len() {
                if i & mask == 0 {
                    let a = state[i];
                    let b = state[i | mask];
                    state[i] = -im * b;
                    state[i | mask] = im * a;
                }
            }
        }
        _ => {
            for (i, amp) in state.iter_mut().enumerate() {
                if i & mask != 0 {
                    *amp = -*amp;
                }
            }
        }
    }
}

/// Probability weight of bit `q` being 1.
pub(crate) fn one_weight(state: &[C64], q: usize) -> f64 {
    let mask = 1usize << q;
    state
        .iter()
        .enumerate()
        .filter(|(i, _)| i & mask != 0)
        .map(|(_, a)| a.norm_sqr())
        .sum()
}

pub(crate) fn renormalize(state: &mut [C64]) {
    let norm: f64 = state.iter().map(|a| a.norm_sqr()).sum();
    if norm > 0.0 {
        let scale = 1.0 / norm.sqrt();
        for a in state.iter_mut() {
            *a *= scale;
        }
    }
}
