//! Evolution of the beam's probability density along the flight path.
//!
//! Samples the polarization-averaged density at four beam positions
//! (y = 0, 1, 11, 21 cm): the profile is still a single merged peak when the
//! atoms leave the magnet and has split into two well-separated packets
//! 10 cm further downstream. Writes one CSV per position plus an SVG overlay
//! to out/density_evolution/.
//!
//! Run with: cargo run --example density_evolution

use stern_gerlach::runner::cmd_density;
use stern_gerlach::Experiment;

fn main() {
    let experiment = Experiment::silver_defaults();
    let out_dir = std::path::Path::new("out/density_evolution");
    let mut stdout = std::io::stdout().lock();
    let files = cmd_density(&experiment, &[0.0, 0.01, 0.11, 0.21], 1024, out_dir, &mut stdout)
        .expect("density profiles");
    println!("\nwrote:");
    for f in files {
        println!("  {}", f.display());
    }
}
