mod common;

use common::{c, cnot, embed1, rot, x};
use epr_auth::analysis::random_density;
use epr_auth::quantum::{
    fidelity, gate, trace_distance, MixedState, PureState, QubitLabel, SingleQubit, State, C64,
};
use epr_auth::rng;
use nalgebra::DVector;
use proptest::prelude::*;

const A: QubitLabel = QubitLabel::alice(1);
const B: QubitLabel = QubitLabel::bob(1);
const G: QubitLabel = QubitLabel::challenge(1);
const LABELS: [QubitLabel; 3] = [A, B, G];

fn amplitudes(n: usize) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n)
        .prop_filter("non-zero", |v| v.iter().map(|(r, i)| r * r + i * i).sum::<f64>() > 1e-3)
        .prop_map(|v| v.into_iter().map(|(r, i)| C64::new(r, i)).collect())
}

fn pure3() -> impl Strategy<Value = PureState> {
    amplitudes(3).prop_map(|a| PureState::new(LABELS.to_vec(), a).unwrap())
}

fn qubit() -> impl Strategy<Value = SingleQubit> {
    amplitudes(1).prop_map(|a| SingleQubit::normalized(a[0], a[1]).unwrap())
}

fn mixed2(seed: u64) -> MixedState {
    random_density(&mut rng::stream(seed, 0), vec![A, B]).unwrap()
}

fn vec_of(s: &PureState) -> DVector<C64> {
    DVector::from_column_slice(s.amplitudes())
}

fn max_diff(a: &DVector<C64>, b: &DVector<C64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gates_preserve_norm(s in pure3(), t in -10.0f64..10.0) {
        let out = s.apply_rotation(B, t).unwrap().apply_cnot(A, G).unwrap().apply_not(G).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn gates_match_dense_oracle(s in pure3(), t in -10.0f64..10.0) {
        let out = s.apply_rotation(B, t).unwrap().apply_cnot(A, G).unwrap().apply_not(A).unwrap();
        let want = embed1(&x(), 0, 3) * cnot(0, 2, 3) * embed1(&rot(t), 1, 3) * vec_of(&s);
        prop_assert!(max_diff(&vec_of(&out), &want) < 1e-12);
    }

    #[test]
    fn mixed_gates_preserve_trace_and_hermiticity(seed in any::<u64>(), t in -10.0f64..10.0) {
        let rho = mixed2(seed).apply_rotation(A, t).unwrap().apply_cnot(B, A).unwrap().apply_not(B).unwrap();
        prop_assert!((rho.trace() - 1.0).abs() < 1e-12);
        prop_assert!(rho.hermitian_defect() < 1e-12);
        prop_assert!(rho.eigenvalues().iter().all(|l| *l > -1e-12));
    }

    #[test]
    fn bilateral_rotation_leaves_phi_plus(t in -100.0f64..100.0) {
        let phi = PureState::phi_plus(A, B).unwrap();
        let r = phi.apply_rotation(A, t).unwrap().apply_rotation(B, t).unwrap();
        prop_assert!(r.distance(&phi).unwrap() < 1e-12);
    }

    #[test]
    fn cnot_is_self_inverse(s in pure3()) {
        let twice = s.apply_cnot(G, B).unwrap().apply_cnot(G, B).unwrap();
        prop_assert!(twice.distance(&s).unwrap() < 1e-12);
    }

    #[test]
    fn fidelity_is_symmetric_and_bounded(s in pure3(), u in pure3(), seed in any::<u64>()) {
        let f = fidelity(&s, &u).unwrap();
        prop_assert!((f - fidelity(&u, &s).unwrap()).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&f));
        prop_assert!((fidelity(&s, &s).unwrap() - 1.0).abs() < 1e-12);
        let (r1, r2) = (mixed2(seed), mixed2(seed ^ 0x5555));
        let g = fidelity(&r1, &r2).unwrap();
        prop_assert!((g - fidelity(&r2, &r1).unwrap()).abs() < 1e-9);
        prop_assert!((0.0..=1.0).contains(&g));
    }

    #[test]
    fn pure_fidelity_one_only_for_equal_states(s in pure3(), u in pure3()) {
        let f = fidelity(&s, &u).unwrap();
        let d = s.distance(&u).unwrap();
        if d > 1e-6 {
            prop_assert!(f < 1.0 - 1e-13);
        }
    }

    #[test]
    fn trace_distance_is_a_metric(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (x, y, z) = (mixed2(a), mixed2(b), mixed2(c));
        let xy = trace_distance(&x, &y).unwrap();
        prop_assert!((xy - trace_distance(&y, &x).unwrap()).abs() < 1e-12);
        prop_assert!(xy <= trace_distance(&x, &z).unwrap() + trace_distance(&z, &y).unwrap() + 1e-12);
        prop_assert!(trace_distance(&x, &x).unwrap() < 1e-12);
        prop_assert!(xy <= 2.0 + 1e-12);
    }

    #[test]
    fn partial_trace_of_product_recovers_factor(a in amplitudes(2), q in qubit()) {
        let ab = PureState::new(vec![A, B], a).unwrap();
        let prod = ab.tensor(&q.to_state(G)).unwrap();
        let reduced = prod.partial_trace(&[A, B]).unwrap();
        let want = ab.to_density();
        let diff = (reduced.matrix() - want.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(diff < 1e-12);
    }

    #[test]
    fn measurement_probabilities_match_oracle(s in pure3(), q in qubit()) {
        let m = s.measure_in_basis(G, &q).unwrap();
        let rho = vec_of(&s) * vec_of(&s).adjoint();
        let pass = common::prob_in(&rho, 2, 3, (q.a, q.b));
        let perp = q.orthogonal();
        let fail = common::prob_in(&rho, 2, 3, (perp.a, perp.b));
        prop_assert!((m.prob_pass - pass).abs() < 1e-12);
        prop_assert!((pass + fail - 1.0).abs() < 1e-12);
        prop_assert!((m.prob_pass + m.prob_fail() - 1.0).abs() < 1e-12);
        if let Some(p) = m.pass_state() {
            prop_assert!((p.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn mixed_measurement_sums_to_one(seed in any::<u64>(), q in qubit()) {
        let rho = mixed2(seed);
        let m = State::from(rho).measure_in_basis(B, &q).unwrap();
        prop_assert!((0.0..=1.0).contains(&m.prob_pass));
        if let Some(State::Mixed(p)) = m.pass_state() {
            prop_assert!((p.trace() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn gate_matrices_are_unitary(t in -10.0f64..10.0) {
        prop_assert!(gate::unitarity_defect(&gate::rotation(t)) < 1e-12);
        prop_assert!(gate::unitarity_defect(&gate::cnot_matrix()) < 1e-15);
    }
}

#[test]
fn rotation_oracle_on_single_qubit() {
    let s = PureState::new(vec![G], vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
    let r = s.apply_rotation(G, 0.3).unwrap();
    let want = rot(0.3) * DVector::from_column_slice(&[c(1.0, 0.0), c(0.0, 0.0)]);
    assert!(max_diff(&vec_of(&r), &want) < 1e-15);
}
