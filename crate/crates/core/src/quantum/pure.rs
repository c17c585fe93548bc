use super::error::{QuantumError, Result};
use super::gate::{self, Gate1, Gate2};
use super::label::{scatter, Register};
use super::measure::{Measurement, SingleQubit};
use super::mixed::MixedState;
use super::{QubitLabel, C64};

/// Normalized amplitude vector over a register of labeled qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    register: Register,
    amps: Vec<C64>,
}

impl PureState {
    /// Builds a state from raw amplitudes, normalizing them.
    pub fn new(labels: Vec<QubitLabel>, amplitudes: Vec<C64>) -> Result<Self> {
        let register = Register::new(labels)?;
        if amplitudes.len() != register.dim() {
            return Err(QuantumError::DimensionMismatch {
                expected: register.dim(),
                found: amplitudes.len(),
            });
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(QuantumError::ZeroVector);
        }
        let amps = amplitudes.into_iter().map(|z| z / norm).collect();
        Ok(Self { register, amps })
    }

    /// Computational basis state; `bits[k]` is the value of `labels[k]`.
    pub fn basis(labels: Vec<QubitLabel>, bits: &[u8]) -> Result<Self> {
        let register = Register::new(labels)?;
        if bits.len() != register.len() {
            return Err(QuantumError::DimensionMismatch { expected: register.len(), found: bits.len() });
        }
        let mut amps = vec![C64::new(0.0, 0.0); register.dim()];
        amps[bits_to_index(bits)] = C64::new(1.0, 0.0);
        Ok(Self { register, amps })
    }

    /// `(|00⟩ + |11⟩)/√2` on `(first, second)`.
    pub fn phi_plus(first: QubitLabel, second: QubitLabel) -> Result<Self> {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let z = C64::new(0.0, 0.0);
        Self::new(vec![first, second], vec![h, z, z, h])
    }

    /// `(|0…0⟩ + |1…1⟩)/√2`.
    pub fn ghz(labels: Vec<QubitLabel>) -> Result<Self> {
        let n = labels.len();
        let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
        amps[0] = C64::new(1.0, 0.0);
        amps[(1 << n) - 1] = C64::new(1.0, 0.0);
        Self::new(labels, amps)
    }

    pub(crate) fn from_parts(labels: Vec<QubitLabel>, amps: Vec<C64>) -> Self {
        let register = Register::new(labels).expect("labels are unique");
        debug_assert_eq!(amps.len(), register.dim());
        Self { register, amps }
    }

    pub fn register(&self) -> &Register {
        &self.register
    }

    pub fn labels(&self) -> &[QubitLabel] {
        self.register.labels()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    /// Amplitude of the basis state with `bits[k]` on `labels()[k]`.
    pub fn amplitude(&self, bits: &[u8]) -> C64 {
        assert_eq!(bits.len(), self.register.len(), "one bit per qubit");
        self.amps[bits_to_index(bits)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`; `other` is reordered to this register if needed.
    pub fn inner(&self, other: &PureState) -> Result<C64> {
        let other = other.aligned_to(&self.register)?;
        Ok(self.amps.iter().zip(&other.amps).map(|(x, y)| x.conj() * y).sum())
    }

    /// Distance `‖self − other‖` in the same label order.
    pub fn distance(&self, other: &PureState) -> Result<f64> {
        let other = other.aligned_to(&self.register)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Kronecker product; the result's labels are `self` followed by `other`.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let register = self.register.concat(&other.register)?;
        let mut amps = Vec::with_capacity(register.dim());
        for hi in &other.amps {
            for lo in &self.amps {
                amps.push(lo * hi);
            }
        }
        Ok(Self { register, amps })
    }

    pub fn apply_single(&self, qubit: QubitLabel, m: &Gate1) -> Result<PureState> {
        let pos = self.register.position(qubit)?;
        let mut out = self.clone();
        gate::apply_1q(&mut out.amps, pos, m);
        Ok(out)
    }

    pub fn apply_rotation(&self, qubit: QubitLabel, theta: f64) -> Result<PureState> {
        self.apply_single(qubit, &gate::rotation(theta))
    }

    pub fn apply_not(&self, qubit: QubitLabel) -> Result<PureState> {
        let pos = self.register.position(qubit)?;
        let amps = (0..self.amps.len()).map(|i| self.amps[i ^ (1 << pos)]).collect();
        Ok(Self { register: self.register.clone(), amps })
    }

    pub fn apply_cnot(&self, control: QubitLabel, target: QubitLabel) -> Result<PureState> {
        let (c, t) = self.pair_positions(control, target)?;
        let amps = (0..self.amps.len())
            .map(|i| self.amps[gate::cnot_index(i, c, t)])
            .collect();
        Ok(Self { register: self.register.clone(), amps })
    }

    /// Applies a 4×4 gate to the ordered pair `(first, second)`.
    pub fn apply_two_qubit(&self, first: QubitLabel, second: QubitLabel, m: &Gate2) -> Result<PureState> {
        let (p1, p2) = self.pair_positions(first, second)?;
        let mut out = self.clone();
        gate::apply_2q(&mut out.amps, p1, p2, m);
        Ok(out)
    }

    /// Projective measurement of `qubit` onto `{|basis⟩, |basis⊥⟩}`.
    pub fn measure_in_basis(&self, qubit: QubitLabel, basis: &SingleQubit) -> Result<Measurement<PureState>> {
        basis.check_basis()?;
        let pos = self.register.position(qubit)?;
        let mask = 1usize << pos;
        let mut pass = vec![C64::new(0.0, 0.0); self.amps.len()];
        for i in (0..self.amps.len()).filter(|i| i & mask == 0) {
            let j = i | mask;
            let c = basis.a.conj() * self.amps[i] + basis.b.conj() * self.amps[j];
            pass[i] = basis.a * c;
            pass[j] = basis.b * c;
        }
        let fail: Vec<C64> = self.amps.iter().zip(&pass).map(|(x, p)| x - p).collect();
        let p_pass: f64 = pass.iter().map(|z| z.norm_sqr()).sum();
        let p_fail: f64 = fail.iter().map(|z| z.norm_sqr()).sum();
        let total = p_pass + p_fail;
        let branch = |v: Vec<C64>, w: f64| {
            (w > 0.0).then(|| {
                let n = w.sqrt();
                Self { register: self.register.clone(), amps: v.into_iter().map(|z| z / n).collect() }
            })
        };
        Ok(Measurement::new(p_pass / total, branch(pass, p_pass), branch(fail, p_fail)))
    }

    /// Reduced density matrix over `keep`, in the order given.
    pub fn partial_trace(&self, keep: &[QubitLabel]) -> Result<MixedState> {
        let (kp, tp) = split_positions(&self.register, keep)?;
        let kd = 1usize << kp.len();
        let td = 1usize << tp.len();
        let mut rho = nalgebra::DMatrix::<C64>::zeros(kd, kd);
        for e in 0..td {
            let off = scatter(e, &tp);
            for r in 0..kd {
                let x = self.amps[off | scatter(r, &kp)];
                if x == C64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..kd {
                    rho[(r, c)] += x * self.amps[off | scatter(c, &kp)].conj();
                }
            }
        }
        Ok(MixedState::from_parts(keep.to_vec(), rho))
    }

    pub fn to_density(&self) -> MixedState {
        let v = nalgebra::DVector::from_column_slice(&self.amps);
        MixedState::from_parts(self.labels().to_vec(), &v * v.adjoint())
    }

    /// Same state with labels reordered to `labels`.
    pub fn permuted(&self, labels: &[QubitLabel]) -> Result<PureState> {
        let target = Register::new(labels.to_vec())?;
        self.aligned_to(&target)
    }

    pub(crate) fn aligned_to(&self, target: &Register) -> Result<PureState> {
        if *target == self.register {
            return Ok(self.clone());
        }
        if !target.same_set(&self.register) {
            return Err(QuantumError::RegisterMismatch);
        }
        let perm = self.register.positions(target.labels())?;
        let amps = (0..self.amps.len()).map(|j| self.amps[scatter(j, &perm)]).collect();
        Ok(Self { register: target.clone(), amps })
    }

    /// Removes `qubit`, which must be in the product state `factor` with the
    /// rest of the register.
    pub fn detach(&self, qubit: QubitLabel, factor: &SingleQubit) -> Result<PureState> {
        let pos = self.register.position(qubit)?;
        let rest: Vec<QubitLabel> = self.labels().iter().copied().filter(|l| *l != qubit).collect();
        let mut amps = Vec::with_capacity(self.amps.len() / 2);
        for r in 0..self.amps.len() / 2 {
            let lo = r & ((1 << pos) - 1);
            let i = lo | ((r >> pos) << (pos + 1));
            let j = i | (1 << pos);
            amps.push(factor.a.conj() * self.amps[i] + factor.b.conj() * self.amps[j]);
        }
        let w: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (w - 1.0).abs() > 1e-9 {
            return Err(QuantumError::NotSeparable(qubit));
        }
        Ok(Self::from_parts(rest, amps))
    }

    fn pair_positions(&self, a: QubitLabel, b: QubitLabel) -> Result<(usize, usize)> {
        if a == b {
            return Err(QuantumError::SameQubit(a));
        }
        Ok((self.register.position(a)?, self.register.position(b)?))
    }
}

pub(crate) fn bits_to_index(bits: &[u8]) -> usize {
    bits.iter().enumerate().fold(0, |acc, (k, b)| acc | (((*b & 1) as usize) << k))
}

/// Positions of the kept labels (in `keep` order) and of the traced ones.
pub(crate) fn split_positions(register: &Register, keep: &[QubitLabel]) -> Result<(Vec<usize>, Vec<usize>)> {
    if keep.is_empty() {
        return Err(QuantumError::EmptyKeep);
    }
    Register::new(keep.to_vec())?;
    let kp = register.positions(keep)?;
    let tp = (0..register.len()).filter(|p| !kp.contains(p)).collect();
    Ok((kp, tp))
}
