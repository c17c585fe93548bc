use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use serde::Serialize;

use crate::quantum::SingleQubit;

/// Pass probability of a random-state impersonator, as the closed form
/// `F = ½ + Σ_k p_k [Re(a* b a′_k b′_k*) + Re(a* b a′_k* b′_k)]`.
pub fn impersonation_fidelity(challenge: &SingleQubit, ensemble: &[(f64, SingleQubit)]) -> f64 {
    let (a, b) = (challenge.a, challenge.b);
    let cross: f64 = ensemble
        .iter()
        .map(|(p, r)| p * ((a.conj() * b * r.a * r.b.conj()).re + (a.conj() * b * r.a.conj() * r.b).re))
        .sum();
    0.5 + cross
}

/// `(½)^K′`.
pub fn detection_bound(k_prime: u32) -> f64 {
    0.5f64.powi(k_prime as i32)
}

/// `½ sin²θ`.
pub fn ghz_detection(theta: f64) -> f64 {
    0.5 * theta.sin().powi(2)
}

/// `P₁(θ) = max{1 − ½ sin²θ, 1 − ½ cos²θ}`.
pub fn p1(theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    (1.0 - 0.5 * s * s).max(1.0 - 0.5 * c * c)
}

/// `P₂(θ) = ½ (|cos θ| + |sin θ|)²`.
pub fn p2(theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    0.5 * (c.abs() + s.abs()).powi(2)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimalAngle {
    /// Roots of `P₁ = P₂` in `[0, π/4]` and `[π/4, π/2]`.
    pub thetas: [f64; 2],
    pub cos_values: [f64; 2],
    /// `P₁` at the first root.
    pub p: f64,
    /// Largest `|P₁ − P₂|` over the two roots.
    pub residual: f64,
}

/// Solves `P₁(θ) = P₂(θ)` by bisection on each half of `[0, π/2]`.
pub fn optimal_fixed_angle() -> OptimalAngle {
    let g = |t: f64| p1(t) - p2(t);
    let roots = [bisect(g, 0.0, FRAC_PI_4), bisect(g, FRAC_PI_4, FRAC_PI_2)];
    OptimalAngle {
        thetas: roots,
        cos_values: roots.map(f64::cos),
        p: p1(roots[0]),
        residual: roots.iter().map(|t| g(*t).abs()).fold(0.0, f64::max),
    }
}

fn bisect(g: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let glo = g(lo);
    assert!(glo * g(hi) <= 0.0, "bracket does not change sign");
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0) == (glo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
