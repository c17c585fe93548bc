//! Gate matrices and the in-place kernels that embed them into a register.

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

use super::C64;

pub type Gate1 = Matrix2<C64>;
/// Two-qubit gate on the ordered pair `(first, second)`; the row index of
/// basis state `|x y⟩` is `2x + y`.
pub type Gate2 = Matrix4<C64>;

const ZERO: C64 = Complex64::new(0.0, 0.0);
const ONE: C64 = Complex64::new(1.0, 0.0);

/// `R(θ) = [[cos θ, sin θ], [−sin θ, cos θ]]`.
pub fn rotation(theta: f64) -> Gate1 {
    let (s, c) = theta.sin_cos();
    Matrix2::new(c.into(), s.into(), (-s).into(), c.into())
}

pub fn pauli_x() -> Gate1 {
    Matrix2::new(ZERO, ONE, ONE, ZERO)
}

pub fn identity1() -> Gate1 {
    Matrix2::identity()
}

pub fn identity2() -> Gate2 {
    Matrix4::identity()
}

/// C-NOT with `first` as control and `second` as target.
pub fn cnot_matrix() -> Gate2 {
    let mut m = Matrix4::zeros();
    m[(0, 0)] = ONE;
    m[(1, 1)] = ONE;
    m[(2, 3)] = ONE;
    m[(3, 2)] = ONE;
    m
}

pub fn swap_matrix() -> Gate2 {
    let mut m = Matrix4::zeros();
    m[(0, 0)] = ONE;
    m[(1, 2)] = ONE;
    m[(2, 1)] = ONE;
    m[(3, 3)] = ONE;
    m
}

/// Largest entry of `U†U − I`.
pub fn unitarity_defect<const N: usize>(
    m: &nalgebra::SMatrix<C64, N, N>,
) -> f64 {
    let d = m.adjoint() * m - nalgebra::SMatrix::<C64, N, N>::identity();
    d.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub(crate) fn apply_1q(data: &mut [C64], pos: usize, m: &Gate1) {
    let mask = 1usize << pos;
    for i in 0..data.len() {
        if i & mask == 0 {
            let j = i | mask;
            let (x, y) = (data[i], data[j]);
            data[i] = m[(0, 0)] * x + m[(0, 1)] * y;
            data[j] = m[(1, 0)] * x + m[(1, 1)] * y;
        }
    }
}

pub(crate) fn apply_2q(data: &mut [C64], first: usize, second: usize, m: &Gate2) {
    let (m1, m2) = (1usize << first, 1usize << second);
    for i in 0..data.len() {
        if i & (m1 | m2) != 0 {
            continue;
        }
        let idx = [i, i | m2, i | m1, i | m1 | m2];
        let v = [data[idx[0]], data[idx[1]], data[idx[2]], data[idx[3]]];
        for (r, &target) in idx.iter().enumerate() {
            data[target] = (0..4).map(|c| m[(r, c)] * v[c]).sum();
        }
    }
}

pub(crate) fn cnot_index(i: usize, control: usize, target: usize) -> usize {
    if (i >> control) & 1 == 1 {
        i ^ (1 << target)
    } else {
        i
    }
}
