use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::protocol::Result;
use crate::quantum::gate::{apply_1q, apply_2q, cnot_matrix, rotation};
use crate::quantum::{QubitLabel, C64};

use super::ops::ghz_after_rotation;

/// Grid points per angle in the coarse search.
pub const GRID: usize = 360;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KeyStealOptimum {
    pub phi1: f64,
    pub phi2: f64,
    pub fidelity: f64,
}

/// Maximizes the stolen fidelity over `(φ₁, φ₂)` for a known angle: a
/// `GRID × GRID` search over `[0, π)²` followed by a pattern search from the
/// best grid point. `R(φ + π) = −R(φ)`, so the square covers every distinct
/// pair of rotations.
pub fn optimize_key_steal(theta: f64) -> Result<KeyStealOptimum> {
    let start = rotated_ghz(theta)?;
    Ok(maximize(GRID, |p1, p2| steal_objective(&start, p1, p2)))
}

/// The best `(φ₁, φ₂)` when Eve does not know the angle: the stolen
/// fidelity averaged over `θ` uniform on `[0, 2π)`, maximized on a coarser
/// grid of `grid × grid` points plus refinement.
pub fn optimize_blind_key_steal(grid: usize) -> Result<KeyStealOptimum> {
    let starts = (0..16)
        .map(|k| rotated_ghz(std::f64::consts::TAU * k as f64 / 16.0))
        .collect::<Result<Vec<_>>>()?;
    Ok(maximize(grid, |p1, p2| {
        starts.iter().map(|s| steal_objective(s, p1, p2)).sum::<f64>() / starts.len() as f64
    }))
}

fn maximize(grid: usize, f: impl Fn(f64, f64) -> f64 + Sync) -> KeyStealOptimum {
    let step = PI / grid as f64;
    let rows: Vec<(f64, f64, f64)> = (0..grid)
        .into_par_iter()
        .map(|i| {
            let p1 = i as f64 * step;
            (0..grid)
                .map(|j| {
                    let p2 = j as f64 * step;
                    (f(p1, p2), p1, p2)
                })
                .fold((f64::NEG_INFINITY, 0.0, 0.0), |best, c| if c.0 > best.0 { c } else { best })
        })
        .collect();
    let (mut best, mut p1, mut p2) =
        rows.into_iter().fold((f64::NEG_INFINITY, 0.0, 0.0), |best, c| if c.0 > best.0 { c } else { best });
    let mut h = step;
    while h > 1e-11 {
        let mut moved = false;
        for (d1, d2) in [(h, 0.0), (-h, 0.0), (0.0, h), (0.0, -h)] {
            let v = f(p1 + d1, p2 + d2);
            if v > best {
                best = v;
                p1 += d1;
                p2 += d2;
                moved = true;
                break;
            }
        }
        if !moved {
            h /= 2.0;
        }
    }
    KeyStealOptimum { phi1: p1.rem_euclid(PI), phi2: p2.rem_euclid(PI), fidelity: best.clamp(0.0, 1.0) }
}

/// Amplitudes of `(A, B, E)` after injection and rotation, bit 0 = A.
fn rotated_ghz(theta: f64) -> Result<[C64; 8]> {
    let joint = ghz_after_rotation(theta)?;
    let labels = [QubitLabel::alice(1), QubitLabel::bob(1), QubitLabel::eve(1)];
    let pure = joint.pure_part(&labels).expect("injection keeps the pair pure");
    let mut out = [C64::new(0.0, 0.0); 8];
    out.copy_from_slice(pure.amplitudes());
    Ok(out)
}

/// Fidelity of `(B, E)` with `|Φ⁺⟩` after `R(φ₁)` on E, C-NOT A → E and
/// `R(φ₂)` on E. For a pure three-qubit state this is
/// `½ Σ_a |ψ(a,0,0) + ψ(a,1,1)|²`.
fn steal_objective(start: &[C64; 8], phi1: f64, phi2: f64) -> f64 {
    let mut s = *start;
    apply_1q(&mut s, 2, &rotation(phi1));
    apply_2q(&mut s, 0, 2, &cnot_matrix());
    apply_1q(&mut s, 2, &rotation(phi2));
    (0..2).map(|a| (s[a] + s[a | 0b110]).norm_sqr()).sum::<f64>() / 2.0
}
