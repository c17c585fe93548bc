//! Seeded Monte Carlo estimates of pass, detection and key-theft rates,
//! compared against the closed forms.

mod estimate;
mod oracle;
mod scenario;

pub use estimate::{run, sweep, Estimate};
pub use oracle::{oracle_for, Oracle};
pub use scenario::{EstimateMode, Quantity, Scenario};
