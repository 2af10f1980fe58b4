//! Prints the apparatus quantities derived from the beam configuration:
//! transit time through the magnet, transverse exit displacement and speed,
//! the packet separation time, the spin-coupling frequency, and the packet
//! spreading parameter that justifies the frozen-width treatment.
//!
//! Run with: cargo run --example derived_quantities

use stern_gerlach::runner::cmd_constants;
use stern_gerlach::Experiment;

fn main() {
    let experiment = Experiment::silver_defaults();
    let mut stdout = std::io::stdout().lock();
    cmd_constants(&experiment, &mut stdout).expect("stdout is writable");

    let d = experiment.derived();
    println!();
    println!(
        "Each packet leaves the 1 cm magnet displaced by {:.2} packet widths,",
        d.exit_displacement / experiment.config().sigma0
    );
    println!(
        "so the split is invisible at the exit and takes {:.2e} s (u t_s = {:.1} widths) to develop.",
        d.separation_time,
        d.exit_speed * d.separation_time / experiment.config().sigma0
    );
}
