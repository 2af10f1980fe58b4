//! Command implementations behind the `sg` binary.
//!
//! Each command is an ordinary function writing data files plus a manifest,
//! logging progress to the supplied writer, so the CLI shell stays thin and
//! everything is testable without spawning processes.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use crate::config::Experiment;
use crate::density::ZGrid;
use crate::ensemble::{Phi0Law, SamplingSpec, Theta0Law, DEFAULT_BINS};
use crate::error::{Error, Result};
use crate::oracle::{l2_error, GridSpec, GridWavefunction};
use crate::output::{
    density_csv, histogram_csv, impacts_csv, num, trajectory_csv, write_output, RunManifest,
    SvgPlot, PALETTE,
};

/// Prints the derived quantities with units, then any config warnings.
pub fn cmd_constants(experiment: &Experiment, out: &mut dyn Write) -> Result<()> {
    let d = experiment.derived();
    writeln!(out, "transit time       delta_t      = {} s", num(d.transit_time))?;
    writeln!(out, "exit displacement  z_delta      = {} m", num(d.exit_displacement))?;
    writeln!(out, "exit speed         u            = {} m/s", num(d.exit_speed))?;
    writeln!(out, "separation time    t_s          = {} s", num(d.separation_time))?;
    writeln!(out, "coupling frequency omega        = {} rad/s", num(d.coupling_omega))?;
    writeln!(out, "                   omega/(2 pi) = {} 1/s", num(d.coupling_frequency_hz()))?;
    writeln!(out, "spread ratio       hbar dt/(2 m sigma0^2) = {}", num(d.spread_ratio))?;
    for w in experiment.config().warnings() {
        writeln!(out, "warning: {w}")?;
    }
    Ok(())
}

/// Density profiles at the beam coordinates `times_y` (meters along y).
/// One CSV per time plus one overlay SVG.
pub fn cmd_density(
    experiment: &Experiment,
    times_y: &[f64],
    grid_points: usize,
    out_dir: &Path,
    log: &mut dyn Write,
) -> Result<Vec<PathBuf>> {
    if times_y.is_empty() {
        return Err(Error::InvalidArgument(
            "density command needs at least one y value".into(),
        ));
    }
    if times_y.iter().any(|y| *y < 0.0 || !y.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "y values must be finite and non-negative, got {times_y:?}"
        )));
    }
    let v = experiment.config().speed;
    let t_max = times_y.iter().cloned().fold(0.0, f64::max) / v;
    let half = experiment.profile_half_span(t_max);
    let grid = ZGrid::new(-half, half, grid_points.max(2))?;

    let mut manifest = RunManifest::new(
        "density",
        None,
        json!({"times_y_m": times_y, "grid_points": grid.n}),
        experiment.config(),
        experiment.constants(),
    );
    let mut outputs = Vec::new();
    let mut plot = SvgPlot::new(
        "Probability density across the beam",
        "z (m)",
        "rho (1/m)",
        (-half, half),
        (0.0, 1.05 * (2.0 * std::f64::consts::PI).sqrt().recip() / experiment.config().sigma0),
    );
    for (i, &y) in times_y.iter().enumerate() {
        let t = y / v;
        let profile = experiment.density_profile(t, &grid)?;
        let name = format!("density_y_{:.3}cm.csv", y * 100.0);
        outputs.push(write_output(out_dir, &name, &density_csv(&profile), &mut manifest)?);
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<(f64, f64)> = profile
            .grid_z
            .iter()
            .zip(&profile.values)
            .map(|(&z, &r)| (z, r))
            .collect();
        plot.polyline(&pts, color);
        let peak = profile.values.iter().cloned().fold(0.0, f64::max);
        plot.text(
            0.45 * half,
            peak * (1.0 - 0.06 * i as f64),
            &format!("y = {} cm ({})", y * 100.0, if profile.is_bimodal() { "split" } else { "merged" }),
            color,
        );
        writeln!(
            log,
            "y = {:>7.3} cm: t = {} s, {} maxima",
            y * 100.0,
            num(t),
            profile.local_maxima_count()
        )?;
    }
    outputs.push(write_output(out_dir, "density.svg", &plot.render(), &mut manifest)?);
    outputs.push(manifest.write(out_dir)?);
    Ok(outputs)
}

/// Integrates `n` seeded atoms and writes per-atom CSVs plus a (y, z) SVG
/// with spin-orientation arrows sampled every t_s/10.
///
/// With `exact = true` the atoms are driven by the phase gradients of the
/// spreading-packet spinor instead of the closed-form frozen-width laws.
#[allow(clippy::too_many_arguments)]
pub fn cmd_trajectories(
    experiment: &Experiment,
    n: usize,
    theta0_law: Theta0Law,
    seed: u64,
    t_end: Option<f64>,
    exact: bool,
    out_dir: &Path,
    log: &mut dyn Write,
) -> Result<Vec<PathBuf>> {
    if n == 0 {
        return Err(Error::InvalidArgument("need n >= 1 trajectories".into()));
    }
    let d = experiment.derived();
    let t_end = t_end.unwrap_or(d.transit_time + experiment.screen_flight_time());
    // Figure-style runs pin phi0 = 0 for a fixed polarization; it does not
    // influence the transverse motion.
    let phi0_law = match theta0_law {
        Theta0Law::Fixed(_) => Phi0Law::Fixed(0.0),
        _ => Phi0Law::Uniform,
    };
    let spec = SamplingSpec {
        n,
        seed,
        theta0_law,
        phi0_law,
    };
    let atoms = experiment.sample_atoms(&spec)?;

    let mut manifest = RunManifest::new(
        "trajectories",
        Some(seed),
        json!({"n": n, "theta0_law": theta0_law, "t_end_s": t_end, "exact": exact}),
        experiment.config(),
        experiment.constants(),
    );
    let v = experiment.config().speed;
    let z_span = experiment.packet_center_at(t_end) + 4.0 * experiment.config().sigma0;
    let mut plot = SvgPlot::new(
        "Atom trajectories with local spin orientation",
        "y = v t (m)",
        "z (m)",
        (0.0, v * t_end),
        (-z_span, z_span),
    );
    let arrow_every = d.separation_time / 10.0;
    let mut outputs = Vec::new();
    for (i, atom) in atoms.iter().enumerate() {
        let traj = if exact {
            experiment.integrate_trajectory_from_spinor(atom, t_end, None, true)?
        } else {
            experiment.integrate_trajectory(atom, t_end, None)?
        };
        let name = format!("trajectory_{i:03}.csv");
        outputs.push(write_output(out_dir, &name, &trajectory_csv(&traj), &mut manifest)?);
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<(f64, f64)> = traj.points.iter().map(|p| (v * p.t, p.z)).collect();
        plot.polyline(&pts, color);
        let mut next_arrow = 0.0;
        for p in &traj.points {
            if p.t >= next_arrow {
                plot.arrow(v * p.t, p.z, p.cos_theta.clamp(-1.0, 1.0).acos(), color);
                next_arrow += arrow_every;
            }
        }
        writeln!(
            log,
            "atom {i:03}: theta0 = {:.4} rad, z0 = {} m -> z = {} m, {:?}",
            atom.theta0,
            num(atom.z0),
            num(traj.final_point().z),
            traj.outcome
        )?;
    }
    outputs.push(write_output(out_dir, "trajectories.svg", &plot.render(), &mut manifest)?);
    outputs.push(manifest.write(out_dir)?);
    Ok(outputs)
}

/// Statistics block written by the ensemble command.
#[derive(Debug, Serialize)]
struct EnsembleReport {
    spec: SamplingSpec,
    t_end_s: f64,
    up_fraction: f64,
    unresolved: usize,
    divergence_l1: Option<f64>,
    spot_centroid_up_m: f64,
    spot_centroid_down_m: f64,
    spot_mass_ratio: f64,
}

/// Runs a full ensemble: JSON statistics, impact CSV, histogram CSV.
pub fn cmd_ensemble(
    experiment: &Experiment,
    spec: &SamplingSpec,
    t_end: Option<f64>,
    out_dir: &Path,
    log: &mut dyn Write,
) -> Result<Vec<PathBuf>> {
    spec.validate()?;
    let d = experiment.derived();
    let t_end = t_end.unwrap_or(d.transit_time + experiment.screen_flight_time());
    let atoms = experiment.sample_atoms(spec)?;
    // Batch runs take a coarser fixed step: the guidance field varies on the
    // separation-time scale, so a few hundred RK4 steps per regime are ample.
    let dt_max = Some(d.separation_time / 400.0);
    let mut result = experiment.run_ensemble(&atoms, t_end, dt_max)?;
    if matches!(spec.theta0_law, Theta0Law::UniformInterval) {
        result.divergence_l1 = Some(experiment.compare_to_density(&result, t_end)?);
    }
    let (histogram, spots) = experiment.impact_map(&result, DEFAULT_BINS)?;

    let unresolved = result
        .impacts
        .iter()
        .filter(|i| i.outcome == crate::bohm::Outcome::Unresolved)
        .count();
    let report = EnsembleReport {
        spec: *spec,
        t_end_s: t_end,
        up_fraction: result.up_fraction,
        unresolved,
        divergence_l1: result.divergence_l1,
        spot_centroid_up_m: spots.centroid_up,
        spot_centroid_down_m: spots.centroid_down,
        spot_mass_ratio: spots.mass_ratio(),
    };
    let mut manifest = RunManifest::new(
        "ensemble",
        Some(spec.seed),
        serde_json::to_value(&report).expect("report serializes"),
        experiment.config(),
        experiment.constants(),
    );
    let report_json = write_output(
        out_dir,
        "ensemble.json",
        &(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"),
        &mut manifest,
    )?;
    let impacts = write_output(out_dir, "impacts.csv", &impacts_csv(&result), &mut manifest)?;
    let histogram_file = write_output(
        out_dir,
        "impact_histogram.csv",
        &histogram_csv(&histogram),
        &mut manifest,
    )?;
    let outputs = vec![report_json, impacts, histogram_file, manifest.write(out_dir)?];
    writeln!(
        log,
        "n = {}: up fraction {:.4}, unresolved {}, spots at {} / {} m",
        spec.n,
        result.up_fraction,
        unresolved,
        num(spots.centroid_up),
        num(spots.centroid_down)
    )?;
    if let Some(l1) = result.divergence_l1 {
        writeln!(log, "L1 distance to analytic density: {l1:.4}")?;
    }
    Ok(outputs)
}

/// Verification depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyLevel {
    Quick,
    Full,
}

/// One verification check with its tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyCheck {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Collected verification results.
#[derive(Debug, Clone, Serialize, Default)]
pub struct VerifyReport {
    pub checks: Vec<VerifyCheck>,
}

impl VerifyReport {
    fn upper(&mut self, name: &str, value: f64, tolerance: f64) {
        self.checks.push(VerifyCheck {
            name: name.to_string(),
            value,
            tolerance,
            pass: value < tolerance,
        });
    }

    fn window(&mut self, name: &str, value: f64, lo: f64, hi: f64) {
        self.checks.push(VerifyCheck {
            name: format!("{name} (in [{lo}, {hi}])"),
            value,
            tolerance: hi,
            pass: (lo..=hi).contains(&value),
        });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Runs the spectral-oracle and continuity suites.
///
/// Quick: L2 against the exact packet for both force signs on a 2048-point
/// grid plus two continuity samples. Full: 4096-point grid, a dt-halving
/// convergence study, and six continuity samples. Always reports the size of
/// the frozen-width approximation as an informational check.
pub fn cmd_verify(
    experiment: &Experiment,
    level: VerifyLevel,
    log: &mut dyn Write,
) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let e = experiment;
    let s0 = e.config().sigma0;
    let dt_total = e.derived().transit_time;
    let ts = e.derived().separation_time;
    let n_points = match level {
        VerifyLevel::Quick => 2048,
        VerifyLevel::Full => 4096,
    };
    let steps = n_points;
    let grid = GridSpec::new(-10.0 * s0, 10.0 * s0, n_points, dt_total / steps as f64)?;
    let initial = GridWavefunction::gaussian(grid, s0);

    for (tag, sign) in [("K=-mu_B*B0'", -1.0), ("K=+mu_B*B0'", 1.0)] {
        let k = sign * e.gradient_force();
        let numeric = e.evolve_linear_potential(&initial, k, dt_total)?;
        let analytic = e.analytic_packet_on_grid(grid, k, dt_total, true);
        report.upper(
            &format!("oracle L2 vs exact packet, {tag}"),
            l2_error(&numeric, &analytic)?,
            1e-3,
        );
    }

    if level == VerifyLevel::Full {
        let k = -e.gradient_force();
        let mut errs = Vec::new();
        for halvings in 0..3 {
            let steps = steps << halvings;
            let g = GridSpec::new(-10.0 * s0, 10.0 * s0, n_points, dt_total / steps as f64)?;
            let wf = GridWavefunction::gaussian(g, s0);
            let numeric = e.evolve_linear_potential(&wf, k, dt_total)?;
            let analytic = e.analytic_packet_on_grid(g, k, dt_total, true);
            errs.push(l2_error(&numeric, &analytic)?);
        }
        for (i, pair) in errs.windows(2).enumerate() {
            report.window(&format!("dt-halving error ratio #{i}"), pair[0] / pair[1], 3.0, 5.0);
        }
    }

    let continuity_samples: Vec<(f64, f64)> = match level {
        VerifyLevel::Quick => vec![
            (0.5 * dt_total, std::f64::consts::FRAC_PI_3),
            (dt_total + 0.5 * ts, std::f64::consts::FRAC_PI_3),
        ],
        VerifyLevel::Full => {
            let thetas = [0.0, std::f64::consts::FRAC_PI_3, std::f64::consts::FRAC_PI_2];
            thetas
                .iter()
                .flat_map(|&th| [(0.5 * dt_total, th), (dt_total + 0.5 * ts, th)])
                .collect()
        }
    };
    let cont_grid = GridSpec::new(
        -(10.0 * s0 + e.packet_center_at(dt_total + 0.5 * ts)),
        10.0 * s0 + e.packet_center_at(dt_total + 0.5 * ts),
        2048,
        1e-9,
    )?;
    for (t, theta0) in continuity_samples {
        report.upper(
            &format!("continuity residual t={:.2e}s theta0={theta0:.3}", t),
            e.continuity_residual(t, theta0, &cont_grid)?,
            1e-3,
        );
    }

    // Informational: how large the sigma_t ~ sigma0 approximation actually is.
    let exact = e.analytic_packet_on_grid(grid, -e.gradient_force(), dt_total, true);
    let approx = e.analytic_packet_on_grid(grid, -e.gradient_force(), dt_total, false);
    report.upper(
        "frozen-width approximation L2 (informational)",
        l2_error(&exact, &approx)?,
        1e-2,
    );

    for c in &report.checks {
        writeln!(
            log,
            "{:60} {:>12.4e}  tol {:>9.1e}  {}",
            c.name,
            c.value,
            c.tolerance,
            if c.pass { "PASS" } else { "FAIL" }
        )?;
    }
    writeln!(
        log,
        "verification {}",
        if report.all_pass() { "PASSED" } else { "FAILED" }
    )?;
    Ok(report)
}
