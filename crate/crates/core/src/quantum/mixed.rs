use nalgebra::{DMatrix, SymmetricEigen};

use super::error::{QuantumError, Result};
use super::gate::{self, Gate1, Gate2};
use super::label::{scatter, Register};
use super::measure::{Measurement, SingleQubit};
use super::pure::split_positions;
use super::{QubitLabel, C64};

/// Tolerance for Hermiticity, trace and positivity of matrices built from
/// numerical data.
pub const DENSITY_TOL: f64 = 1e-10;

/// Density matrix over a register of labeled qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedState {
    register: Register,
    rho: DMatrix<C64>,
}

impl MixedState {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(labels: Vec<QubitLabel>, matrix: DMatrix<C64>) -> Result<Self> {
        let register = Register::new(labels)?;
        let d = register.dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(QuantumError::DimensionMismatch { expected: d, found: matrix.nrows().max(matrix.ncols()) });
        }
        let dev = hermitian_defect(&matrix);
        if dev > DENSITY_TOL {
            return Err(QuantumError::NotHermitian(dev));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > DENSITY_TOL || tr.im.abs() > DENSITY_TOL {
            return Err(QuantumError::InvalidDensity(format!("trace is {tr}")));
        }
        let state = Self { register, rho: matrix };
        let min = state.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min < -DENSITY_TOL {
            return Err(QuantumError::InvalidDensity(format!("negative eigenvalue {min:e}")));
        }
        Ok(state)
    }

    pub fn maximally_mixed(labels: Vec<QubitLabel>) -> Result<Self> {
        let register = Register::new(labels)?;
        let d = register.dim();
        let rho = DMatrix::identity(d, d) / C64::new(d as f64, 0.0);
        Ok(Self { register, rho })
    }

    /// `Σ pₖ ρₖ`; weights must be non-negative and sum to 1.
    pub fn mixture(parts: &[(f64, &MixedState)]) -> Result<Self> {
        let (_, first) = parts.first().ok_or(QuantumError::InvalidDensity("empty mixture".into()))?;
        let total: f64 = parts.iter().map(|(p, _)| p).sum();
        if parts.iter().any(|(p, _)| *p < 0.0) || (total - 1.0).abs() > DENSITY_TOL {
            return Err(QuantumError::InvalidDensity(format!("mixture weights sum to {total}")));
        }
        let d = first.rho.nrows();
        let mut rho = DMatrix::zeros(d, d);
        for (p, s) in parts {
            let s = s.aligned_to(&first.register)?;
            rho += s.rho * C64::new(*p, 0.0);
        }
        Ok(Self { register: first.register.clone(), rho })
    }

    pub(crate) fn from_parts(labels: Vec<QubitLabel>, rho: DMatrix<C64>) -> Self {
        let register = Register::new(labels).expect("labels are unique");
        debug_assert_eq!(rho.nrows(), register.dim());
        Self { register, rho }
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn labels(&self) -> &[QubitLabel] {
        self.register.labels()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.rho
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    pub fn purity(&self) -> f64 {
        (&self.rho * &self.rho).trace().re
    }

    pub fn hermitian_defect(&self) -> f64 {
        hermitian_defect(&self.rho)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.rho)
    }

    /// Labels are `self` followed by `other`.
    pub fn tensor(&self, other: &MixedState) -> Result<MixedState> {
        let register = self.register.concat(&other.register)?;
        let (da, db) = (self.rho.nrows(), other.rho.nrows());
        let d = da * db;
        let rho = DMatrix::from_fn(d, d, |r, c| {
            self.rho[(r % da, c % da)] * other.rho[(r / da, c / da)]
        });
        Ok(Self { register, rho })
    }

    /// `ρ → U ρ U†` with `U` acting on `qubit`.
    pub fn apply_single(&self, qubit: QubitLabel, m: &Gate1) -> Result<MixedState> {
        let pos = self.register.position(qubit)?;
        Ok(self.conjugate_by(|data| gate::apply_1q(data, pos, m)))
    }

    pub fn apply_rotation(&self, qubit: QubitLabel, theta: f64) -> Result<MixedState> {
        self.apply_single(qubit, &gate::rotation(theta))
    }

    pub fn apply_not(&self, qubit: QubitLabel) -> Result<MixedState> {
        self.apply_single(qubit, &gate::pauli_x())
    }

    pub fn apply_cnot(&self, control: QubitLabel, target: QubitLabel) -> Result<MixedState> {
        let (c, t) = self.pair_positions(control, target)?;
        let d = self.rho.nrows();
        let rho = DMatrix::from_fn(d, d, |r, col| {
            self.rho[(gate::cnot_index(r, c, t), gate::cnot_index(col, c, t))]
        });
        Ok(Self { register: self.register.clone(), rho })
    }

    pub fn apply_two_qubit(&self, first: QubitLabel, second: QubitLabel, m: &Gate2) -> Result<MixedState> {
        let (p1, p2) = self.pair_positions(first, second)?;
        Ok(self.conjugate_by(|data| gate::apply_2q(data, p1, p2, m)))
    }

    pub fn measure_in_basis(&self, qubit: QubitLabel, basis: &SingleQubit) -> Result<Measurement<MixedState>> {
        basis.check_basis()?;
        let pos = self.register.position(qubit)?;
        let p = basis.projector();
        let q = gate::identity1() - p;
        let pass = self.sandwich(|data| gate::apply_1q(data, pos, &p));
        let fail = self.sandwich(|data| gate::apply_1q(data, pos, &q));
        let (wp, wf) = (pass.trace().re, fail.trace().re);
        let total = wp + wf;
        let branch = |m: DMatrix<C64>, w: f64| {
            (w > 0.0).then(|| Self { register: self.register.clone(), rho: m / C64::new(w, 0.0) })
        };
        Ok(Measurement::new(wp / total, branch(pass, wp), branch(fail, wf)))
    }

    /// Non-selective measurement: `PρP + QρQ` with `P = |basis⟩⟨basis|`.
    pub fn dephase(&self, qubit: QubitLabel, basis: &SingleQubit) -> Result<MixedState> {
        basis.check_basis()?;
        let pos = self.register.position(qubit)?;
        let p = basis.projector();
        let q = gate::identity1() - p;
        let rho = self.sandwich(|data| gate::apply_1q(data, pos, &p))
            + self.sandwich(|data| gate::apply_1q(data, pos, &q));
        Ok(Self { register: self.register.clone(), rho })
    }

    /// Reduced density matrix over `keep`, in the order given.
    pub fn partial_trace(&self, keep: &[QubitLabel]) -> Result<MixedState> {
        let (kp, tp) = split_positions(&self.register, keep)?;
        let kd = 1usize << kp.len();
        let td = 1usize << tp.len();
        let rho = DMatrix::from_fn(kd, kd, |r, c| {
            let (ri, ci) = (scatter(r, &kp), scatter(c, &kp));
            (0..td)
                .map(|e| {
                    let off = scatter(e, &tp);
                    self.rho[(ri | off, ci | off)]
                })
                .sum()
        });
        Ok(Self::from_parts(keep.to_vec(), rho))
    }

    pub fn permuted(&self, labels: &[QubitLabel]) -> Result<MixedState> {
        let target = Register::new(labels.to_vec())?;
        self.aligned_to(&target)
    }

    pub(crate) fn aligned_to(&self, target: &Register) -> Result<MixedState> {
        if *target == self.register {
            return Ok(self.clone());
        }
        if !target.same_set(&self.register) {
            return Err(QuantumError::RegisterMismatch);
        }
        let perm = self.register.positions(target.labels())?;
        let d = self.rho.nrows();
        let rho = DMatrix::from_fn(d, d, |r, c| self.rho[(scatter(r, &perm), scatter(c, &perm))]);
        Ok(Self { register: target.clone(), rho })
    }

    /// `⟨u|ρ|u⟩`; `u` is reordered to this register if needed.
    pub fn expectation(&self, u: &super::PureState) -> Result<f64> {
        let u = u.aligned_to(&self.register)?;
        let v = nalgebra::DVector::from_column_slice(u.amplitudes());
        Ok((v.adjoint() * &self.rho * &v)[(0, 0)].re)
    }

    /// `U ρ U†` where `apply` maps a column vector `x` to `U x` in place.
    fn conjugate_by(&self, apply: impl Fn(&mut [C64])) -> MixedState {
        let rho = self.sandwich(apply);
        Self { register: self.register.clone(), rho }
    }

    fn sandwich(&self, apply: impl Fn(&mut [C64])) -> DMatrix<C64> {
        let d = self.rho.nrows();
        // U ρ, column by column, then (U (Uρ)†)† = U ρ U†
        let mut left = self.rho.clone();
        for col in left.as_mut_slice().chunks_mut(d) {
            apply(col);
        }
        let mut right = left.adjoint();
        for col in right.as_mut_slice().chunks_mut(d) {
            apply(col);
        }
        right.adjoint()
    }

    fn pair_positions(&self, a: QubitLabel, b: QubitLabel) -> Result<(usize, usize)> {
        if a == b {
            return Err(QuantumError::SameQubit(a));
        }
        Ok((self.register.position(a)?, self.register.position(b)?))
    }
}

pub(crate) fn hermitian_defect(m: &DMatrix<C64>) -> f64 {
    (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Eigenvalues of the Hermitian part of `m`, ascending.
pub(crate) fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Principal square root of a positive semidefinite Hermitian matrix.
pub(crate) fn psd_sqrt(m: &DMatrix<C64>) -> DMatrix<C64> {
    let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(h);
    let roots = eig.eigenvalues.map(|l| C64::new(l.max(0.0).sqrt(), 0.0));
    &eig.eigenvectors * DMatrix::from_diagonal(&roots) * eig.eigenvectors.adjoint()
}
