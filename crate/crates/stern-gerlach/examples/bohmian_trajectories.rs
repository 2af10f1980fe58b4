//! De Broglie-Bohm trajectories of individual atoms through the apparatus.
//!
//! Two runs of ten atoms each, drawn from the packet's Gaussian position
//! distribution:
//! * fixed polarization theta0 = pi/3: the fan splits into an upper and a
//!   lower bundle, decided by each atom's initial height in the packet;
//! * fully random polarization: the mixed-bundle picture.
//!
//! Per-atom CSVs and an SVG with spin-orientation arrows land in
//! out/trajectories_fixed/ and out/trajectories_random/.
//!
//! Run with: cargo run --example bohmian_trajectories

use std::f64::consts::PI;

use stern_gerlach::ensemble::Theta0Law;
use stern_gerlach::runner::cmd_trajectories;
use stern_gerlach::Experiment;

fn main() {
    let experiment = Experiment::silver_defaults();
    let mut stdout = std::io::stdout().lock();

    println!("fixed polarization theta0 = pi/3:");
    cmd_trajectories(
        &experiment,
        10,
        Theta0Law::Fixed(PI / 3.0),
        42,
        None,
        false,
        std::path::Path::new("out/trajectories_fixed"),
        &mut stdout,
    )
    .expect("fixed-polarization run");

    println!("\nrandom polarization:");
    cmd_trajectories(
        &experiment,
        10,
        Theta0Law::UniformInterval,
        7,
        None,
        false,
        std::path::Path::new("out/trajectories_random"),
        &mut stdout,
    )
    .expect("random-polarization run");

    println!("\nSVGs: out/trajectories_fixed/trajectories.svg, out/trajectories_random/trajectories.svg");
}
