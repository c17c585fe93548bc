mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use common::{c, cnot, kron_le, ket, phi_plus, Lcg, C};
use epr_auth::adversary::theta_average;
use epr_auth::analysis::*;
use epr_auth::protocol::ChallengeEnsemble;
use epr_auth::quantum::{MixedState, QubitLabel, SingleQubit, C64};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use rand::SeedableRng;

const A: QubitLabel = QubitLabel::alice(1);
const B: QubitLabel = QubitLabel::bob(1);

fn lcg_qubit(l: &mut Lcg) -> SingleQubit {
    let (a, b) = l.qubit();
    SingleQubit::normalized(a, b).unwrap()
}

fn lcg_ensemble(l: &mut Lcg) -> Vec<(f64, SingleQubit)> {
    let p = l.next_f64();
    vec![(p, lcg_qubit(l)), (1.0 - p, lcg_qubit(l))]
}

/// Bob's pass probability with Eve's mixture on γ, by full density-matrix
/// evolution over (A, B, γ).
fn oracle_pass(q: &SingleQubit, parts: &[(f64, SingleQubit)]) -> f64 {
    let mut rho_g = DMatrix::<C>::zeros(2, 2);
    for (p, r) in parts {
        let v = ket(&[r.a, r.b]);
        rho_g += &v * v.adjoint() * c(*p, 0.0);
    }
    let pair = phi_plus() * phi_plus().adjoint();
    let full = rho_g.kronecker(&pair);
    let u = cnot(1, 2, 3);
    let out = &u * full * u.adjoint();
    common::prob_in(&out, 2, 3, (q.a, q.b))
}

#[test]
fn fidelity_formula_matches_direct_evolution() {
    let mut l = Lcg(71);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let q = lcg_qubit(&mut l);
        let ens = lcg_ensemble(&mut l);
        worst = worst.max((impersonation_fidelity(&q, &ens) - oracle_pass(&q, &ens)).abs());
    }
    assert!(worst < 1e-10, "{worst}");
}

#[test]
fn fidelity_formula_basis_challenge_gives_half() {
    let mut l = Lcg(3);
    for _ in 0..50 {
        let ens = lcg_ensemble(&mut l);
        assert!((impersonation_fidelity(&SingleQubit::zero(), &ens) - 0.5).abs() < 1e-15);
        assert!((impersonation_fidelity(&SingleQubit::one(), &ens) - 0.5).abs() < 1e-15);
    }
}

#[test]
fn fidelity_formula_averages_to_half() {
    let mut l = Lcg(19);
    let n = 20_000;
    let mut total = 0.0;
    for _ in 0..n {
        let q = lcg_qubit(&mut l);
        let ens = lcg_ensemble(&mut l);
        total += impersonation_fidelity(&q, &ens);
    }
    assert!((total / n as f64 - 0.5).abs() < 0.01);
}

#[test]
fn self_response_is_not_perfect() {
    let mut l = Lcg(44);
    for _ in 0..200 {
        let q = lcg_qubit(&mut l);
        let own = [(1.0, q)];
        let lit = impersonation_fidelity(&q, &own);
        assert!((lit - oracle_pass(&q, &own)).abs() < 1e-12);
        assert!((lit - self_response_fidelity(&q)).abs() < 1e-12);
    }
    let q = SingleQubit::normalized(c(0.6, 0.0), c(0.0, 0.8)).unwrap();
    assert!((self_response_fidelity(&q) - 0.5).abs() < 1e-12);
    let avg = ChallengeEnsemble::Haar.exact_average(|q| Ok::<_, epr_auth::protocol::ProtocolError>(self_response_fidelity(q))).unwrap();
    assert!((avg - 2.0 / 3.0).abs() < 1e-12);
}

#[test]
fn fidelity_cross_check_report() {
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let rep = fidelity_cross_check(&mut r, 2000, ChallengeEnsemble::Haar).unwrap();
    assert_eq!(rep.samples, 2000);
    assert!(rep.max_abs_diff < 1e-10);
    assert!((rep.mean_direct - 0.5).abs() < 4.0 * rep.std_error + 1e-3);
    assert!(rep.self_response.abs_diff < 1e-12);
    assert!(rep.self_response.numeric < 1.0);
}

#[test]
fn detection_bound_examples() {
    assert_eq!(detection_bound(0), 1.0);
    assert_eq!(detection_bound(1), 0.5);
    assert!((detection_bound(20) - 9.5367431640625e-7).abs() < 1e-20);
}

#[test]
fn ghz_detection_examples() {
    assert_eq!(ghz_detection(0.0), 0.0);
    assert!((ghz_detection(FRAC_PI_2) - 0.5).abs() < 1e-15);
    let avg = theta_average(|t| Ok::<_, epr_auth::protocol::ProtocolError>(ghz_detection(t))).unwrap();
    assert!((avg - 0.25).abs() < 1e-15);
}

#[test]
fn p1_p2_examples() {
    let t = (2.0 / 5f64.sqrt()).acos();
    assert_eq!(p1(0.0), 1.0);
    assert!((p1(FRAC_PI_4) - 0.75).abs() < 1e-15);
    assert!((p1(t) - 0.9).abs() < 1e-12);
    assert!((p2(FRAC_PI_4) - 1.0).abs() < 1e-15);
    assert!((p2(0.0) - 0.5).abs() < 1e-15);
    assert!((p2(t) - 0.9).abs() < 1e-12);
}

#[test]
fn optimal_angle() {
    let o = optimal_fixed_angle();
    assert!((o.cos_values[0] - 2.0 / 5f64.sqrt()).abs() < 1e-10);
    assert!((o.cos_values[1] - 1.0 / 5f64.sqrt()).abs() < 1e-10);
    assert!((o.p - 0.9).abs() < 1e-10);
    assert!(o.residual < 1e-10);
    assert!((o.thetas[0] + o.thetas[1] - FRAC_PI_2).abs() < 1e-10);
}

proptest! {
    #[test]
    fn closed_forms_are_periodic(t in -10.0..10.0f64) {
        prop_assert!((p1(t) - p1(PI - t)).abs() < 1e-12);
        prop_assert!((p1(t) - p1(t + FRAC_PI_2)).abs() < 1e-12);
        prop_assert!((p2(t) - p2(t + FRAC_PI_2)).abs() < 1e-12);
        prop_assert!((ghz_detection(t) - ghz_detection(t + PI)).abs() < 1e-12);
    }

    #[test]
    fn closed_forms_stay_in_range(t in -10.0..10.0f64) {
        prop_assert!((0.0..=0.5).contains(&ghz_detection(t)));
        prop_assert!((0.5..=1.0 + 1e-15).contains(&p1(t)));
        prop_assert!((0.5 - 1e-15..=1.0 + 1e-15).contains(&p2(t)));
    }

    #[test]
    fn literal_fidelity_is_a_probability(seed in any::<u64>()) {
        let mut l = Lcg(seed);
        let q = lcg_qubit(&mut l);
        let ens = lcg_ensemble(&mut l);
        let f = impersonation_fidelity(&q, &ens);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&f));
    }
}

fn maximally_mixed() -> MixedState {
    MixedState::new(vec![A, B], DMatrix::<C64>::identity(4, 4) / C64::new(4.0, 0.0)).unwrap()
}

#[test]
fn robustness_without_noise() {
    let r = robustness_bounds(0.0, &maximally_mixed(), &SingleQubit::plus(), 0.4).unwrap();
    assert!(r.failure_probability.abs() < 1e-12);
    assert!(r.trace_distance.abs() < 1e-7);
    assert!((r.fidelity_before - 1.0).abs() < 1e-12);
}

#[test]
fn robustness_with_white_noise() {
    let mut l = Lcg(8);
    for _ in 0..20 {
        let q = lcg_qubit(&mut l);
        let theta = l.next_f64() * TAU;
        let r = robustness_bounds(0.1, &maximally_mixed(), &q, theta).unwrap();
        let overlap = (q.a.conj() * q.b + q.b.conj() * q.a).norm_sqr();
        // white noise flips the challenge half the time
        assert!((r.failure_probability - 0.1 * 0.5 * (1.0 - overlap)).abs() < 1e-12);
        assert!((r.trace_distance - 0.15).abs() < 1e-10);
        assert!((r.fidelity_before - 0.925).abs() < 1e-12);
        assert!(r.failure_probability <= r.failure_bound);
        assert!(r.trace_distance <= r.distance_bound);
    }
}

#[test]
fn robustness_bounds_hold_for_random_noise() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let mut l = Lcg(9);
    for k in 0..100 {
        let eps = 0.3 * l.next_f64();
        let rho1 = random_density(&mut rng, vec![A, B]).unwrap();
        let r = robustness_bounds(eps, &rho1, &lcg_qubit(&mut l), l.next_f64() * TAU).unwrap();
        assert!(r.failure_probability <= r.failure_bound + 1e-12, "{k}");
        assert!(r.trace_distance <= r.distance_bound + 1e-12, "{k}");
        assert!(r.trace_distance_after <= r.distance_bound + 1e-12, "{k}");
        assert!(r.fidelity_before >= r.fidelity_bound - 1e-12, "{k}");
        assert!(r.fidelity_after >= r.fidelity_bound - 1e-12, "{k}");
    }
}

#[test]
fn corrupted_key_is_a_state() {
    let rho = corrupted_key(0.2, &maximally_mixed()).unwrap();
    let m = rho.matrix();
    assert!((m.trace().re - 1.0).abs() < 1e-12);
    let phi: DVector<C> = phi_plus();
    let f = (phi.adjoint() * m * &phi)[(0, 0)].re;
    assert!((f - 0.85).abs() < 1e-12);
    let _ = kron_le;
}
