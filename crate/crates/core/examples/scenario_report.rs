//! Loads a scenario file and prints the same JSON report the command-line
//! tool would write.
//!
//! ```text
//! cargo run --example scenario_report -- crates/core/scenarios/ghz_sweep.json
//! ```

use std::path::PathBuf;

use epr_auth::cli::{cmd_estimate, Format, ScenarioFile};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios/ghz_detection.json"));
    let file = ScenarioFile::load(&path)?;
    let out = cmd_estimate(&file, None, Some(2_000))?;
    print!("{}", out.report.render(Format::Json)?);
    Ok(())
}
