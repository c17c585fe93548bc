//! Fidelity and trace distance.
//!
//! Fidelity uses the squared-overlap convention: `|⟨u|v⟩|²` for two pure
//! states, `⟨u|ρ|u⟩` for pure against mixed, and `(Tr √(√ρ σ √ρ))²` for two
//! mixed states. Trace distance is the unnormalized `Tr|A − B|`, so
//! orthogonal pure states are at distance 2.

use super::error::{QuantumError, Result};
use super::mixed::{hermitian_defect, hermitian_eigenvalues, psd_sqrt, DENSITY_TOL};
use super::state::{AsStateRef, StateRef};

/// Uhlmann fidelity in `[0, 1]`. Registers must hold the same labels; order
/// may differ.
pub fn fidelity(a: &impl AsStateRef, b: &impl AsStateRef) -> Result<f64> {
    let (a, b) = (a.as_state_ref(), b.as_state_ref());
    if !a.register().same_set(b.register()) {
        return Err(QuantumError::RegisterMismatch);
    }
    let f = match (a, b) {
        (StateRef::Pure(u), StateRef::Pure(v)) => u.inner(v)?.norm_sqr(),
        (StateRef::Pure(u), StateRef::Mixed(r)) | (StateRef::Mixed(r), StateRef::Pure(u)) => r.expectation(u)?,
        (StateRef::Mixed(r), StateRef::Mixed(s)) => {
            let s = s.aligned_to(r.register())?;
            let root = psd_sqrt(r.matrix());
            let inner = &root * s.matrix() * &root;
            let t: f64 = hermitian_eigenvalues(&inner).iter().map(|l| l.max(0.0).sqrt()).sum();
            t * t
        }
    };
    Ok(f.clamp(0.0, 1.0))
}

/// `Tr|A − B|`, the sum of absolute eigenvalues of the difference.
pub fn trace_distance(a: &impl AsStateRef, b: &impl AsStateRef) -> Result<f64> {
    let (a, b) = (a.as_state_ref(), b.as_state_ref());
    if !a.register().same_set(b.register()) {
        return Err(QuantumError::RegisterMismatch);
    }
    let ra = a.density();
    let rb = b.density().aligned_to(ra.register())?;
    for m in [ra.matrix(), rb.matrix()] {
        let dev = hermitian_defect(m);
        if dev > DENSITY_TOL {
            return Err(QuantumError::NotHermitian(dev));
        }
    }
    let diff = ra.matrix() - rb.matrix();
    Ok(hermitian_eigenvalues(&diff).iter().map(|l| l.abs()).sum())
}
