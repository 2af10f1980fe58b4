//! Cross-checks the closed-form solution against independent numerics:
//! the spectral split-operator solver must reproduce the analytic packet
//! under both force signs, the error must contract fourfold per time-step
//! halving (second order), and the Madelung continuity equation must hold
//! between the analytic density and the guidance velocity.
//!
//! This is the `sg verify --level full` suite run as a library call.
//!
//! Run with: cargo run --example oracle_verification

use stern_gerlach::runner::{cmd_verify, VerifyLevel};
use stern_gerlach::Experiment;

fn main() {
    let experiment = Experiment::silver_defaults();
    let mut stdout = std::io::stdout().lock();
    let report = cmd_verify(&experiment, VerifyLevel::Full, &mut stdout).expect("verification run");
    std::process::exit(if report.all_pass() { 0 } else { 2 });
}
