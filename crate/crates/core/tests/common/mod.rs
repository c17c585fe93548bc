//! Independent brute-force oracles.
//!
//! Everything here builds full `2^n × 2^n` operators with Kronecker products
//! and multiplies them out. Nothing calls the crate's in-place gate kernels,
//! so these values can check them.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
pub use num_complex::Complex64 as C;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn rot(theta: f64) -> DMatrix<C> {
    let (s, co) = theta.sin_cos();
    DMatrix::from_row_slice(2, 2, &[c(co, 0.0), c(s, 0.0), c(-s, 0.0), c(co, 0.0)])
}

pub fn x() -> DMatrix<C> {
    DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
}

/// Embeds a single-qubit operator acting on qubit `k` of `n` (little-endian:
/// qubit `k` is bit `k` of the basis index).
pub fn embed1(u: &DMatrix<C>, k: usize, n: usize) -> DMatrix<C> {
    let mut m = DMatrix::<C>::identity(1, 1);
    // standard Kronecker order puts the most significant bit leftmost
    for q in (0..n).rev() {
        let f = if q == k { u.clone() } else { DMatrix::identity(2, 2) };
        m = m.kronecker(&f);
    }
    m
}

/// C-NOT on `n` qubits as `|0⟩⟨0|_c ⊗ I + |1⟩⟨1|_c ⊗ X_t`.
pub fn cnot(control: usize, target: usize, n: usize) -> DMatrix<C> {
    let p0 = DMatrix::from_row_slice(2, 2, &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    let p1 = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
    let a = embed1(&p0, control, n);
    let b = embed1(&p1, control, n) * embed1(&x(), target, n);
    a + b
}

pub fn ket(amps: &[C]) -> DVector<C> {
    DVector::from_column_slice(amps)
}

/// Little-endian Kronecker product: `lo` occupies the low bits.
pub fn kron_le(lo: &DVector<C>, hi: &DVector<C>) -> DVector<C> {
    hi.kronecker(lo)
}

pub fn phi_plus() -> DVector<C> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    ket(&[c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)])
}

pub fn projector(v: &DVector<C>) -> DMatrix<C> {
    v * v.adjoint()
}

/// Reduced matrix keeping the lowest `keep` qubits of a density matrix.
pub fn trace_out_high(rho: &DMatrix<C>, keep: usize) -> DMatrix<C> {
    let kd = 1 << keep;
    let td = rho.nrows() / kd;
    DMatrix::from_fn(kd, kd, |r, col| (0..td).map(|e| rho[(r + e * kd, col + e * kd)]).sum())
}

/// Probability that qubit `k` of `rho` is found in `|basis⟩`.
pub fn prob_in(rho: &DMatrix<C>, k: usize, n: usize, basis: (C, C)) -> f64 {
    let b = ket(&[basis.0, basis.1]);
    let p = embed1(&projector(&b), k, n);
    (p * rho).trace().re
}

/// Haar-random single-qubit amplitudes from a tiny LCG; test-local so the
/// oracle does not share the crate's sampler.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next_f64(&mut self) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((self.0 >> 11) as f64) / ((1u64 << 53) as f64)
    }

    pub fn gauss(&mut self) -> f64 {
        let u1 = self.next_f64().max(1e-300);
        let u2 = self.next_f64();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    pub fn qubit(&mut self) -> (C, C) {
        let (a, b) = (c(self.gauss(), self.gauss()), c(self.gauss(), self.gauss()));
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        (a / n, b / n)
    }
}
