//! The outcome threshold: which atoms end up spin-up.
//!
//! An atom polarized at theta0 flips to "up" exactly when its initial height
//! in the packet exceeds z = sigma0 * F^-1(sin^2(theta0/2)), F the standard
//! normal CDF. This example tabulates the threshold across polar angles and
//! then integrates trajectories bracketing it to show the classifier agree.
//!
//! Run with: cargo run --example spin_threshold

use std::f64::consts::PI;

use stern_gerlach::{Experiment, PolarizedAtom};

fn main() {
    let experiment = Experiment::silver_defaults();
    let s0 = experiment.config().sigma0;
    let d = *experiment.derived();

    println!("{:>10} {:>16} {:>14}", "theta0/pi", "threshold/sigma0", "P(up)");
    for k in 1..10 {
        let theta0 = PI * f64::from(k) / 10.0;
        let zt = experiment.threshold_z(theta0);
        println!(
            "{:>10.2} {:>16.4} {:>14.4}",
            theta0 / PI,
            zt / s0,
            (0.5 * theta0).cos().powi(2)
        );
    }

    // Bracket the pi/3 threshold with two trajectories.
    let theta0 = PI / 3.0;
    let zt = experiment.threshold_z(theta0);
    let t_end = d.transit_time + 3.0 * d.separation_time;
    println!("\ntheta0 = pi/3: threshold at {:.4} sigma0", zt / s0);
    for offset in [0.25 * s0, -0.25 * s0] {
        let atom = PolarizedAtom::new(theta0, 0.0, zt + offset, 0.0).expect("valid atom");
        let trajectory = experiment
            .integrate_trajectory(&atom, t_end, None)
            .expect("integration");
        let end = trajectory.final_point();
        println!(
            "  z0 = threshold {} 0.25 sigma0 -> z = {:+.3e} m, cos(theta) = {:+.4}, {:?}",
            if offset > 0.0 { "+" } else { "-" },
            end.z,
            end.cos_theta,
            trajectory.outcome
        );
    }
}
