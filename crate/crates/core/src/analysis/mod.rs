//! Closed-form values from the security analysis, each paired with an
//! independent evaluation by state evolution.

mod closed;
mod report;
mod robust;

pub use closed::{detection_bound, impersonation_fidelity, ghz_detection, optimal_fixed_angle, p1, p2, OptimalAngle};
pub use report::{fidelity_cross_check, self_response_fidelity, FidelityReport, OracleReport};
pub use robust::{corrupted_key, random_density, robustness_bounds, RobustnessReport};
