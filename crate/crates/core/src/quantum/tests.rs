use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

use super::*;

const A0: QubitLabel = QubitLabel::alice(0);
const B0: QubitLabel = QubitLabel::bob(0);
const C0: QubitLabel = QubitLabel::challenge(0);
const E0: QubitLabel = QubitLabel::eve(0);

fn close(x: C64, y: C64) -> bool {
    (x - y).norm() < 1e-12
}

fn qubit(a: C64, b: C64) -> SingleQubit {
    SingleQubit::new(a, b).unwrap()
}

fn sample_qubit() -> SingleQubit {
    SingleQubit::normalized(C64::new(0.3, -0.4), C64::new(0.5, 0.7)).unwrap()
}

#[test]
fn make_pure_builds_phi_plus() {
    let h = re(FRAC_1_SQRT_2);
    let s = PureState::new(vec![A0, B0], vec![h, re(0.0), re(0.0), h]).unwrap();
    assert!(close(s.amplitude(&[0, 0]), h));
    assert!(close(s.amplitude(&[1, 1]), h));
    assert!(close(s.amplitude(&[0, 1]), re(0.0)));
    assert_eq!(s.labels(), &[A0, B0]);
    assert_eq!(s, PureState::phi_plus(A0, B0).unwrap());
}

#[test]
fn make_pure_normalizes() {
    let s = PureState::new(vec![C0], vec![re(2.0), re(0.0)]).unwrap();
    assert_eq!(s.amplitudes(), &[re(1.0), re(0.0)]);
    let z = PureState::new(vec![C0], vec![re(1.0), re(0.0)]).unwrap();
    assert_eq!(s, z);
}

#[test]
fn make_pure_rejects_bad_input() {
    assert_eq!(
        PureState::new(vec![C0], vec![re(1.0)]),
        Err(QuantumError::DimensionMismatch { expected: 2, found: 1 })
    );
    assert_eq!(PureState::new(vec![C0], vec![re(0.0), re(0.0)]), Err(QuantumError::ZeroVector));
    assert_eq!(
        PureState::new(vec![C0, C0], vec![re(1.0); 4]),
        Err(QuantumError::DuplicateLabel(C0))
    );
}

#[test]
fn tensor_gives_key_times_challenge() {
    let q = sample_qubit();
    let s = PureState::phi_plus(A0, B0).unwrap().tensor(&q.to_state(C0)).unwrap();
    assert_eq!(s.labels(), &[A0, B0, C0]);
    let h = re(FRAC_1_SQRT_2);
    for x in 0..2u8 {
        assert!(close(s.amplitude(&[x, x, 0]), h * q.a));
        assert!(close(s.amplitude(&[x, x, 1]), h * q.b));
        assert!(close(s.amplitude(&[x, 1 - x, 0]), re(0.0)));
    }
}

#[test]
fn tensor_of_basis_states_and_norm() {
    let z0 = SingleQubit::zero().to_state(A0);
    let z1 = SingleQubit::zero().to_state(B0);
    assert_eq!(z0.tensor(&z1).unwrap(), PureState::basis(vec![A0, B0], &[0, 0]).unwrap());
    let four = PureState::phi_plus(A0, B0)
        .unwrap()
        .tensor(&PureState::phi_plus(C0, E0).unwrap())
        .unwrap();
    assert!((four.norm_sqr() - 1.0).abs() < 1e-12);
    assert_eq!(z0.tensor(&z0), Err(QuantumError::OverlappingLabels(A0)));
}

#[test]
fn rotation_reads_off_matrix() {
    let zero = SingleQubit::zero().to_state(C0);
    let s = zero.apply_rotation(C0, FRAC_PI_2).unwrap();
    assert!(close(s.amplitude(&[0]), re(0.0)));
    assert!(close(s.amplitude(&[1]), re(-1.0)));
    let s = zero.apply_rotation(C0, FRAC_PI_4).unwrap();
    assert!(close(s.amplitude(&[0]), re(FRAC_1_SQRT_2)));
    assert!(close(s.amplitude(&[1]), re(-FRAC_1_SQRT_2)));
    assert_eq!(zero.apply_rotation(A0, 0.1), Err(QuantumError::UnknownLabel(A0)));
}

#[test]
fn bilateral_rotation_leaves_phi_plus() {
    let phi = PureState::phi_plus(A0, B0).unwrap();
    for k in 0..50 {
        let theta = k as f64 * 0.137 - 3.0;
        let s = phi.apply_rotation(A0, theta).unwrap().apply_rotation(B0, theta).unwrap();
        assert!(s.distance(&phi).unwrap() < 1e-12);
    }
}

#[test]
fn cnot_encodes_and_decodes_challenge() {
    let q = sample_qubit();
    let start = PureState::phi_plus(A0, B0).unwrap().tensor(&q.to_state(C0)).unwrap();
    let enc = start.apply_cnot(A0, C0).unwrap();
    let h = re(FRAC_1_SQRT_2);
    // (a|000⟩ + b|001⟩ + a|111⟩ + b|110⟩)/√2 in (A, B, C) order
    assert!(close(enc.amplitude(&[0, 0, 0]), h * q.a));
    assert!(close(enc.amplitude(&[0, 0, 1]), h * q.b));
    assert!(close(enc.amplitude(&[1, 1, 1]), h * q.a));
    assert!(close(enc.amplitude(&[1, 1, 0]), h * q.b));
    let dec = enc.apply_cnot(B0, C0).unwrap();
    assert!(dec.distance(&start).unwrap() < 1e-12);
}

#[test]
fn cnot_edge_cases() {
    let s = PureState::basis(vec![A0, B0], &[0, 0]).unwrap();
    assert_eq!(s.apply_cnot(A0, B0).unwrap(), s);
    let s = PureState::basis(vec![A0, B0], &[1, 0]).unwrap();
    assert_eq!(s.apply_cnot(A0, B0).unwrap(), PureState::basis(vec![A0, B0], &[1, 1]).unwrap());
    assert_eq!(s.apply_cnot(A0, A0), Err(QuantumError::SameQubit(A0)));
    assert_eq!(s.apply_cnot(A0, C0), Err(QuantumError::UnknownLabel(C0)));
}

#[test]
fn not_flips_and_is_involution() {
    let zero = SingleQubit::zero().to_state(C0);
    assert_eq!(zero.apply_not(C0).unwrap(), SingleQubit::one().to_state(C0));
    let s = sample_qubit().to_state(C0);
    assert!(s.apply_not(C0).unwrap().apply_not(C0).unwrap().distance(&s).unwrap() < 1e-12);
    assert_eq!(s.apply_not(A0), Err(QuantumError::UnknownLabel(A0)));
}

#[test]
fn measurement_of_restored_challenge_passes() {
    let q = sample_qubit();
    let s = PureState::phi_plus(A0, B0)
        .unwrap()
        .tensor(&q.to_state(C0))
        .unwrap()
        .apply_cnot(A0, C0)
        .unwrap()
        .apply_cnot(B0, C0)
        .unwrap();
    let m = s.measure_in_basis(C0, &q).unwrap();
    assert_eq!(m.prob_pass, 1.0);
    assert!(m.fail_state().is_none());
}

#[test]
fn measurement_orthogonal_and_errors() {
    let zero = SingleQubit::zero().to_state(C0);
    let m = zero.measure_in_basis(C0, &SingleQubit::one()).unwrap();
    assert_eq!(m.prob_pass, 0.0);
    let bad = SingleQubit { a: re(1.0), b: re(1.0) };
    assert_eq!(zero.measure_in_basis(C0, &bad).unwrap_err(), QuantumError::UnnormalizedBasis(2.0));
    assert_eq!(zero.measure_in_basis(A0, &SingleQubit::zero()).unwrap_err(), QuantumError::UnknownLabel(A0));
}

#[test]
fn measurement_branches_are_renormalized() {
    let s = PureState::phi_plus(A0, B0).unwrap();
    let m = s.measure_in_basis(A0, &SingleQubit::plus()).unwrap();
    assert!((m.prob_pass - 0.5).abs() < 1e-12);
    let pass = m.pass_state().unwrap();
    assert!((pass.norm_sqr() - 1.0).abs() < 1e-12);
    // B collapses to |+⟩ as well
    let reduced = pass.partial_trace(&[B0]).unwrap();
    let plus = SingleQubit::plus().to_state(B0);
    assert!((fidelity(&plus, &reduced).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn orthogonal_basis_vector_is_fixed() {
    let q = sample_qubit();
    let o = q.orthogonal();
    assert!(close(o.a, q.b.conj()));
    assert!(close(o.b, -q.a.conj()));
    assert!(q.inner(&o).norm() < 1e-15);
}

#[test]
fn partial_trace_of_phi_plus_is_maximally_mixed() {
    let r = PureState::phi_plus(A0, B0).unwrap().partial_trace(&[B0]).unwrap();
    let half = MixedState::maximally_mixed(vec![B0]).unwrap();
    assert!(trace_distance(&r, &half).unwrap() < 1e-12);
}

#[test]
fn partial_trace_of_quarter_pi_theft_leaves_bell_pair() {
    let ghz = PureState::ghz(vec![A0, B0, E0]).unwrap();
    let mut s = ghz;
    for l in [A0, B0, E0] {
        s = s.apply_rotation(l, FRAC_PI_4).unwrap();
    }
    let s = s.apply_cnot(A0, E0).unwrap();
    let be = s.partial_trace(&[B0, E0]).unwrap();
    let phi = PureState::phi_plus(B0, E0).unwrap().to_density();
    assert!((be.matrix() - phi.matrix()).iter().all(|z| z.norm() < 1e-12));
}

#[test]
fn partial_trace_keep_all_is_projector() {
    let s = PureState::phi_plus(A0, B0).unwrap().tensor(&sample_qubit().to_state(C0)).unwrap();
    let r = s.partial_trace(&[A0, B0, C0]).unwrap();
    assert!((r.matrix() - s.to_density().matrix()).iter().all(|z| z.norm() < 1e-12));
    assert_eq!(s.partial_trace(&[]).unwrap_err(), QuantumError::EmptyKeep);
    assert_eq!(s.partial_trace(&[E0]).unwrap_err(), QuantumError::UnknownLabel(E0));
}

#[test]
fn partial_trace_respects_requested_order() {
    let s = PureState::basis(vec![A0, B0], &[1, 0]).unwrap();
    let r = s.partial_trace(&[B0, A0]).unwrap();
    assert_eq!(r.labels(), &[B0, A0]);
    // |0⟩_B |1⟩_A → index 0 + 2·1
    assert!(close(r.matrix()[(2, 2)], re(1.0)));
}

#[test]
fn fidelity_examples() {
    let phi = PureState::phi_plus(A0, B0).unwrap();
    assert!((fidelity(&phi, &phi).unwrap() - 1.0).abs() < 1e-12);
    let mixed = MixedState::maximally_mixed(vec![A0, B0]).unwrap();
    assert!((fidelity(&phi, &mixed).unwrap() - 0.25).abs() < 1e-12);
    assert!((fidelity(&phi.to_density(), &mixed).unwrap() - 0.25).abs() < 1e-12);
    let other = PureState::phi_plus(A0, C0).unwrap();
    assert_eq!(fidelity(&phi, &other).unwrap_err(), QuantumError::RegisterMismatch);
}

#[test]
fn fidelity_ignores_label_order() {
    let phi = PureState::phi_plus(A0, B0).unwrap();
    let swapped = phi.permuted(&[B0, A0]).unwrap();
    assert!((fidelity(&phi, &swapped).unwrap() - 1.0).abs() < 1e-12);
    let prod = PureState::basis(vec![A0, B0], &[1, 0]).unwrap();
    let prod_rev = prod.permuted(&[B0, A0]).unwrap();
    assert!(close(prod_rev.amplitude(&[0, 1]), re(1.0)));
    assert!((fidelity(&prod.to_density(), &prod_rev.to_density()).unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn trace_distance_examples() {
    let zero = SingleQubit::zero().to_state(C0).to_density();
    let one = SingleQubit::one().to_state(C0).to_density();
    assert!(trace_distance(&zero, &zero).unwrap() < 1e-12);
    assert!((trace_distance(&zero, &one).unwrap() - 2.0).abs() < 1e-12);
    let phi = PureState::phi_plus(A0, B0).unwrap();
    assert_eq!(trace_distance(&phi, &zero).unwrap_err(), QuantumError::RegisterMismatch);
}

#[test]
fn mixed_state_validation() {
    let m = nalgebra::DMatrix::from_row_slice(2, 2, &[re(0.5), re(0.3), re(0.1), re(0.5)]);
    assert!(matches!(MixedState::new(vec![C0], m), Err(QuantumError::NotHermitian(_))));
    let m = nalgebra::DMatrix::from_row_slice(2, 2, &[re(0.7), re(0.0), re(0.0), re(0.7)]);
    assert!(matches!(MixedState::new(vec![C0], m), Err(QuantumError::InvalidDensity(_))));
    let m = nalgebra::DMatrix::from_row_slice(2, 2, &[re(1.5), re(0.0), re(0.0), re(-0.5)]);
    assert!(matches!(MixedState::new(vec![C0], m), Err(QuantumError::InvalidDensity(_))));
}

type StateOp = Box<dyn Fn(&State) -> State>;

#[test]
fn mixed_gates_match_pure_gates() {
    let s = PureState::phi_plus(A0, B0).unwrap().tensor(&sample_qubit().to_state(C0)).unwrap();
    let rho = s.to_density();
    let ops: Vec<StateOp> = vec![
        Box::new(|x| x.apply_rotation(A0, 0.7).unwrap()),
        Box::new(|x| x.apply_cnot(B0, C0).unwrap()),
        Box::new(|x| x.apply_not(A0).unwrap()),
        Box::new(|x| x.apply_two_qubit(C0, A0, &gate::swap_matrix()).unwrap()),
    ];
    let (mut p, mut m) = (State::Pure(s), State::Mixed(rho));
    for op in &ops {
        p = op(&p);
        m = op(&m);
        assert!(trace_distance(&p, &m).unwrap() < 1e-12);
    }
}

#[test]
fn mixed_measurement_matches_pure() {
    let s = PureState::phi_plus(A0, B0).unwrap().tensor(&sample_qubit().to_state(C0)).unwrap();
    let s = s.apply_cnot(A0, C0).unwrap();
    let basis = SingleQubit::normalized(re(0.2), C64::new(0.1, 0.9)).unwrap();
    let mp = s.measure_in_basis(C0, &basis).unwrap();
    let mm = s.to_density().measure_in_basis(C0, &basis).unwrap();
    assert!((mp.prob_pass - mm.prob_pass).abs() < 1e-12);
    assert!(trace_distance(mp.pass_state().unwrap(), mm.pass_state().unwrap()).unwrap() < 1e-12);
    assert!(trace_distance(mp.fail_state().unwrap(), mm.fail_state().unwrap()).unwrap() < 1e-12);
}

#[test]
fn dephasing_keeps_diagonal_in_basis() {
    let s = SingleQubit::plus().to_state(C0).to_density();
    let d = s.dephase(C0, &SingleQubit::zero()).unwrap();
    let half = MixedState::maximally_mixed(vec![C0]).unwrap();
    assert!(trace_distance(&d, &half).unwrap() < 1e-12);
}

#[test]
fn detach_recovers_factor() {
    let q = sample_qubit();
    let s = PureState::phi_plus(A0, B0).unwrap().tensor(&q.to_state(C0)).unwrap();
    let s = s.permuted(&[A0, C0, B0]).unwrap();
    let rest = s.detach(C0, &q).unwrap();
    assert!(rest.distance(&PureState::phi_plus(A0, B0).unwrap()).unwrap() < 1e-12);
    let ent = PureState::phi_plus(A0, C0).unwrap();
    assert_eq!(ent.detach(C0, &SingleQubit::zero()), Err(QuantumError::NotSeparable(C0)));
}

#[test]
fn rotation_period() {
    let s = sample_qubit().to_state(C0);
    let r = s.apply_rotation(C0, 2.0 * PI).unwrap();
    assert!(r.distance(&s).unwrap() < 1e-12);
    let q = qubit(re(1.0), re(0.0));
    assert_eq!(q, SingleQubit::zero());
}
