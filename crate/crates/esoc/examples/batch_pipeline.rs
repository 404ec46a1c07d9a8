//! The whole batch pipeline in process: generate instances, project them,
//! verify every certificate. The `esoc` binary exposes the same three
//! stages as `gen | project | verify`.
//!
//! ```bash
//! cargo run -p esoc --example batch_pipeline
//! ```

use esoc::harness::{cmd_gen, cmd_project, cmd_verify, CaseMix, GenOptions};
use esoc::{ConeDims, SolverConfig};

fn main() -> Result<(), esoc::Error> {
    let opts = GenOptions {
        dims: ConeDims::new(4, 3)?,
        count: 8,
        mix: CaseMix::Uniform,
        seed: 2024,
    };
    let mut instances = Vec::new();
    cmd_gen(&opts, &mut instances)?;
    println!("generated {} bytes of instances:", instances.len());
    for line in String::from_utf8_lossy(&instances).lines().take(2) {
        println!("  {line}");
    }
    println!("  ...");

    let mut projected = Vec::new();
    let summary = cmd_project(instances.as_slice(), &mut projected, &SolverConfig::default())?;
    println!(
        "projected {} records ({} failed):",
        summary.records, summary.failures
    );
    for line in String::from_utf8_lossy(&projected).lines().take(1) {
        println!("  {line}");
    }
    println!("  ...");

    let mut reports = Vec::new();
    let verify = cmd_verify(projected.as_slice(), &mut reports, 1e-10)?;
    println!(
        "verified {} records, {} failures",
        verify.records, verify.failures
    );
    assert!(reports.is_empty());
    Ok(())
}
