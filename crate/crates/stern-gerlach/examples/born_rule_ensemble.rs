//! Born-rule statistics from trajectory ensembles.
//!
//! For a fixed initial polarization theta0, the fraction of atoms measured
//! spin-up is decided purely by how many start above the threshold height
//! sigma0 * F^-1(sin^2(theta0/2)): and that fraction is exactly
//! cos^2(theta0/2). This example runs 10^4 atoms per polarization and
//! compares the empirical up fractions against the projection rule, then
//! runs a fully random ensemble whose impacts split 50/50. Outputs go to
//! out/born_rule/.
//!
//! Run with: cargo run --example born_rule_ensemble

use std::f64::consts::PI;

use stern_gerlach::ensemble::{Phi0Law, SamplingSpec, Theta0Law};
use stern_gerlach::runner::cmd_ensemble;
use stern_gerlach::Experiment;

fn main() {
    let experiment = Experiment::silver_defaults();
    let d = *experiment.derived();
    let n = 10_000;
    let t_end = d.transit_time + 5.0 * d.separation_time;
    let dt_max = Some(d.separation_time / 300.0);

    println!("{:>10} {:>12} {:>12}", "theta0", "up fraction", "cos^2(t0/2)");
    for (i, theta0) in [PI / 6.0, PI / 3.0, PI / 2.0, 2.0 * PI / 3.0, 5.0 * PI / 6.0]
        .into_iter()
        .enumerate()
    {
        let spec = SamplingSpec {
            n,
            seed: 100 + i as u64,
            theta0_law: Theta0Law::Fixed(theta0),
            phi0_law: Phi0Law::Uniform,
        };
        let atoms = experiment.sample_atoms(&spec).expect("sampling");
        let result = experiment
            .run_ensemble(&atoms, t_end, dt_max)
            .expect("ensemble");
        println!(
            "{:>10.4} {:>12.4} {:>12.4}",
            theta0,
            result.up_fraction,
            (0.5 * theta0).cos().powi(2)
        );
    }

    println!("\nrandom polarization ensemble written to out/born_rule/:");
    let spec = SamplingSpec {
        n,
        seed: 42,
        theta0_law: Theta0Law::UniformInterval,
        phi0_law: Phi0Law::Uniform,
    };
    let mut stdout = std::io::stdout().lock();
    cmd_ensemble(
        &experiment,
        &spec,
        None,
        std::path::Path::new("out/born_rule"),
        &mut stdout,
    )
    .expect("ensemble command");
}
