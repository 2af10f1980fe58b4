//! De Broglie-Bohm velocity field, spin-angle law, trajectory integration,
//! and the outcome-threshold classifier.
//!
//! The tan-half-angle law tan(theta/2) = tan(theta0/2) exp(-b z) is evaluated
//! everywhere in the algebraically identical form
//!     cos(theta) = (tanh(b z) + cos(theta0)) / (1 + tanh(b z) cos(theta0)),
//! which stays finite for theta0 in {0, pi} and for |b z| of order 10^3,
//! where exp(+/- b z) would overflow.

use serde::Serialize;

use crate::config::Experiment;
use crate::error::{Error, Result};
use crate::numerics::normal::norm_ppf;
use crate::spinor::PolarizedAtom;

/// Default central-difference step (m) for velocities derived from the
/// spinor phases. The transverse de Broglie wavelength is ~3.6e-9 m, so the
/// step must sit far below it; 5e-13 m balances truncation against rounding.
pub const DEFAULT_FD_STEP: f64 = 5e-13;

/// Default number of fixed Runge-Kutta steps per dynamical regime.
pub const DEFAULT_STEPS_PER_REGIME: usize = 2000;

/// Measured spin direction at the end of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Up,
    Down,
    Unresolved,
}

/// One recorded sample along a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    /// Time since packet entry (s)
    pub t: f64,
    /// Transverse position (m)
    pub z: f64,
    /// x position (m); constant in frozen-width mode
    pub x: f64,
    /// Local spin projection cos(theta(z, t))
    pub cos_theta: f64,
}

/// A full integrated path with its classification.
#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub atom: PolarizedAtom,
    pub points: Vec<TrajectoryPoint>,
    pub outcome: Outcome,
}

impl Trajectory {
    pub fn final_point(&self) -> &TrajectoryPoint {
        self.points.last().expect("trajectory has at least t = 0")
    }
}

/// Velocity components of the guidance field at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VelocitySample {
    pub v_x: f64,
    pub v_z: f64,
}

/// (tanh(bz) + c0) / (1 + tanh(bz) c0), guarded at the pure-spin poles.
fn blended_cos_theta(bz: f64, cos_theta0: f64) -> f64 {
    if cos_theta0 == 1.0 {
        return 1.0;
    }
    if cos_theta0 == -1.0 {
        return -1.0;
    }
    let h = bz.tanh();
    (h + cos_theta0) / (1.0 + h * cos_theta0)
}

impl Experiment {
    /// Spin projection cos(theta(z, t)) inside the magnet.
    pub fn cos_theta_in_field(&self, z: f64, t: f64, theta0: f64) -> f64 {
        debug_assert!((0.0..=self.derived().transit_time).contains(&t));
        let b = self.gradient_force() * t * t
            / (2.0 * self.config().mass * self.config().sigma0 * self.config().sigma0);
        blended_cos_theta(b * z, theta0.cos())
    }

    /// Spin projection cos(theta(z, t_post)) after the magnet.
    pub fn cos_theta_after_field(&self, z: f64, t_post: f64, theta0: f64) -> f64 {
        debug_assert!(t_post >= 0.0);
        let center = self.derived().exit_displacement + self.derived().exit_speed * t_post;
        let b = center / (self.config().sigma0 * self.config().sigma0);
        blended_cos_theta(b * z, theta0.cos())
    }

    /// cos(theta) at total time `t` since entry.
    pub fn cos_theta_at(&self, z: f64, t: f64, theta0: f64) -> f64 {
        let dt = self.derived().transit_time;
        if t <= dt {
            self.cos_theta_in_field(z, t, theta0)
        } else {
            self.cos_theta_after_field(z, t - dt, theta0)
        }
    }

    /// Closed-form dz/dt inside the magnet: (mu_B B0' t / m) cos(theta(z,t)).
    pub fn velocity_in_field(&self, z: f64, t: f64, theta0: f64) -> f64 {
        self.gradient_force() * t / self.config().mass * self.cos_theta_in_field(z, t, theta0)
    }

    /// Closed-form dz/dt after the magnet: u cos(theta(z, t_post)), |v| <= u.
    pub fn velocity_after_field(&self, z: f64, t_post: f64, theta0: f64) -> f64 {
        self.derived().exit_speed * self.cos_theta_after_field(z, t_post, theta0)
    }

    /// Guidance velocity from the spinor itself: convective probability
    /// current over density, with the phase gradients taken by central
    /// differences of the analytic spinor (step `h`, see [`DEFAULT_FD_STEP`]).
    /// The spin-magnetization (Gordon) current is not included; its
    /// contribution is negligible for this apparatus.
    ///
    /// Fails where both components underflow to zero.
    pub fn general_velocity(
        &self,
        atom: &PolarizedAtom,
        x: f64,
        z: f64,
        t: f64,
        exact: bool,
        h: f64,
    ) -> Result<VelocitySample> {
        let hbar = self.constants().hbar;
        let m = self.config().mass;
        let center = self.spinor_at(atom, x, z, t, exact)?;
        let rho = center.density();
        if rho == 0.0 || !rho.is_finite() {
            return Err(Error::VanishingSpinor { x, z });
        }
        let zp = self.spinor_at(atom, x, z + h, t, exact)?;
        let zm = self.spinor_at(atom, x, z - h, t, exact)?;
        let xp = self.spinor_at(atom, x + h, z, t, exact)?;
        let xm = self.spinor_at(atom, x - h, z, t, exact)?;
        let dz_plus = (zp.plus - zm.plus) / (2.0 * h);
        let dz_minus = (zp.minus - zm.minus) / (2.0 * h);
        let dx_plus = (xp.plus - xm.plus) / (2.0 * h);
        let dx_minus = (xp.minus - xm.minus) / (2.0 * h);
        let current = |grad_p: num_complex::Complex64, grad_m: num_complex::Complex64| {
            (center.plus.conj() * grad_p).im + (center.minus.conj() * grad_m).im
        };
        Ok(VelocitySample {
            v_x: hbar * current(dx_plus, dx_minus) / (m * rho),
            v_z: hbar * current(dz_plus, dz_minus) / (m * rho),
        })
    }

    /// Initial-position threshold separating Up from Down outcomes:
    /// sigma0 * F^{-1}(sin^2(theta0/2)), with -inf at theta0 = 0 and +inf at pi.
    pub fn threshold_z(&self, theta0: f64) -> f64 {
        debug_assert!((0.0..=std::f64::consts::PI).contains(&theta0));
        let q = (0.5 * theta0).sin().powi(2);
        self.config().sigma0 * norm_ppf(q)
    }

    /// Integrates one atom with fixed-step classical RK4, switching the
    /// velocity law at the magnet exit and recording every step.
    ///
    /// `dt_max = None` uses transit/2000 in the field and separation/2000
    /// beyond it; a supplied value caps the step in both regimes (spans are
    /// subdivided evenly so regime boundaries are hit exactly).
    pub fn integrate_trajectory(
        &self,
        atom: &PolarizedAtom,
        t_end: f64,
        dt_max: Option<f64>,
    ) -> Result<Trajectory> {
        let mut points = Vec::new();
        let (z, x) = self.integrate_observed(atom, t_end, dt_max, |t, z, x, cos| {
            points.push(TrajectoryPoint {
                t,
                z,
                x,
                cos_theta: cos,
            });
        })?;
        let cos_final = self.cos_theta_at(z, t_end, atom.theta0);
        let outcome = classify(cos_final);
        debug_assert_eq!(points.first().map(|p| (p.t, p.z)), Some((0.0, atom.z0)));
        let _ = x;
        Ok(Trajectory {
            atom: *atom,
            points,
            outcome,
        })
    }

    /// Endpoint-only variant used for large ensembles.
    pub fn integrate_endpoint(
        &self,
        atom: &PolarizedAtom,
        t_end: f64,
        dt_max: Option<f64>,
    ) -> Result<(f64, Outcome)> {
        let (z, _) = self.integrate_observed(atom, t_end, dt_max, |_, _, _, _| {})?;
        Ok((z, classify(self.cos_theta_at(z, t_end, atom.theta0))))
    }

    /// Integrates one atom driven by the phase-gradient velocity of the
    /// spinor itself ([`Experiment::general_velocity`]) instead of the
    /// closed-form laws, in plane (z, x). With `exact = true` the spreading
    /// packet is used, so the tiny sigma_t corrections enter the motion.
    ///
    /// Slower than [`Experiment::integrate_trajectory`] (five spinor
    /// evaluations per stage); intended for cross-checks and small batches.
    pub fn integrate_trajectory_from_spinor(
        &self,
        atom: &PolarizedAtom,
        t_end: f64,
        dt_max: Option<f64>,
        exact: bool,
    ) -> Result<Trajectory> {
        if t_end.is_nan() || t_end <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "t_end must be positive, got {t_end:e}"
            )));
        }
        let dt_field = self.derived().transit_time;
        let spin_here = |zz: f64, xx: f64, tt: f64| -> Result<f64> {
            let s = self.spinor_at(atom, xx, zz, tt, exact)?;
            let rho = s.density();
            if rho == 0.0 {
                return Err(Error::VanishingSpinor { x: xx, z: zz });
            }
            Ok((s.plus.norm_sqr() - s.minus.norm_sqr()) / rho)
        };
        let mut points = Vec::new();
        let mut z = atom.z0;
        let mut x = atom.x0;
        points.push(TrajectoryPoint {
            t: 0.0,
            z,
            x,
            cos_theta: spin_here(z, x, 0.0)?,
        });
        // Legs split at the magnet exit: the field kinks there in time.
        let legs = if t_end <= dt_field {
            vec![(0.0, t_end, dt_field / DEFAULT_STEPS_PER_REGIME as f64)]
        } else {
            vec![
                (0.0, dt_field, dt_field / DEFAULT_STEPS_PER_REGIME as f64),
                (
                    dt_field,
                    t_end,
                    self.derived().separation_time / DEFAULT_STEPS_PER_REGIME as f64,
                ),
            ]
        };
        for (t0, t1, default_dt) in legs {
            let steps = step_count(t1 - t0, dt_max, default_dt);
            let h = (t1 - t0) / steps as f64;
            // The spreading current adds ~1e-10 m/s on top of the
            // tanh-blended bound.
            let slack = 1e-6;
            for i in 0..steps {
                let t = t0 + h * i as f64;
                let t_next = if i + 1 == steps { t1 } else { t0 + h * (i + 1) as f64 };
                let vel = |zz: f64, xx: f64, tt: f64| -> Result<VelocitySample> {
                    let v = self.general_velocity(atom, xx, zz, tt, exact, DEFAULT_FD_STEP)?;
                    let cap = if tt <= dt_field {
                        self.gradient_force() * tt / self.config().mass
                    } else {
                        self.derived().exit_speed
                    };
                    let cap = cap * (1.0 + slack) + 1e-9;
                    if !v.v_z.is_finite() || !v.v_x.is_finite() {
                        return Err(Error::NonFiniteState { t: tt });
                    }
                    if v.v_z.abs() > cap {
                        return Err(Error::VelocityBound {
                            v: v.v_z,
                            bound: cap,
                            t: tt,
                        });
                    }
                    Ok(v)
                };
                let k1 = vel(z, x, t)?;
                let tm = t + 0.5 * h;
                let k2 = vel(z + 0.5 * h * k1.v_z, x + 0.5 * h * k1.v_x, tm)?;
                let k3 = vel(z + 0.5 * h * k2.v_z, x + 0.5 * h * k2.v_x, tm)?;
                let k4 = vel(z + h * k3.v_z, x + h * k3.v_x, t_next)?;
                z += h / 6.0 * (k1.v_z + 2.0 * k2.v_z + 2.0 * k3.v_z + k4.v_z);
                x += h / 6.0 * (k1.v_x + 2.0 * k2.v_x + 2.0 * k3.v_x + k4.v_x);
                if !z.is_finite() || !x.is_finite() {
                    return Err(Error::NonFiniteState { t: t_next });
                }
                points.push(TrajectoryPoint {
                    t: t_next,
                    z,
                    x,
                    cos_theta: spin_here(z, x, t_next)?,
                });
            }
        }
        let outcome = classify(points.last().expect("at least t = 0").cos_theta);
        Ok(Trajectory {
            atom: *atom,
            points,
            outcome,
        })
    }

    /// Shared integrator core. The observer is called once per recorded
    /// state, starting at t = 0 and ending exactly at `t_end`.
    fn integrate_observed<F: FnMut(f64, f64, f64, f64)>(
        &self,
        atom: &PolarizedAtom,
        t_end: f64,
        dt_max: Option<f64>,
        mut observe: F,
    ) -> Result<(f64, f64)> {
        if t_end.is_nan() || t_end <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "t_end must be positive, got {t_end:e}"
            )));
        }
        if let Some(h) = dt_max {
            if h.is_nan() || h <= 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "dt_max must be positive, got {h:e}"
                )));
            }
        }
        let dt_field = self.derived().transit_time;
        let theta0 = atom.theta0;
        let mut z = atom.z0;
        let x = atom.x0;
        observe(0.0, z, x, self.cos_theta_in_field(z, 0.0, theta0));

        // In-field leg.
        let field_end = t_end.min(dt_field);
        if field_end > 0.0 {
            let steps = step_count(field_end, dt_max, dt_field / DEFAULT_STEPS_PER_REGIME as f64);
            z = self.rk4_leg(
                z,
                0.0,
                field_end,
                steps,
                |zz, tt| self.velocity_in_field(zz, tt, theta0),
                |tt| self.gradient_force() * tt / self.config().mass,
                |tt, zz| observe(tt, zz, x, self.cos_theta_in_field(zz, tt, theta0)),
            )?;
        }
        // Free-flight leg.
        if t_end > dt_field {
            let span = t_end - dt_field;
            let steps = step_count(span, dt_max, self.derived().separation_time / DEFAULT_STEPS_PER_REGIME as f64);
            let u = self.derived().exit_speed;
            z = self.rk4_leg(
                z,
                0.0,
                span,
                steps,
                |zz, tt| self.velocity_after_field(zz, tt, theta0),
                |_| u,
                |tt, zz| {
                    observe(
                        dt_field + tt,
                        zz,
                        x,
                        self.cos_theta_after_field(zz, tt, theta0),
                    )
                },
            )?;
        }
        Ok((z, x))
    }

    /// One fixed-step RK4 leg of dz/dt = v(z, t) over [t0, t1], checking the
    /// velocity bound |v| <= bound(t) and state finiteness at every stage.
    #[allow(clippy::too_many_arguments)]
    fn rk4_leg<V, B, O>(
        &self,
        z0: f64,
        t0: f64,
        t1: f64,
        steps: usize,
        v: V,
        bound: B,
        mut observe: O,
    ) -> Result<f64>
    where
        V: Fn(f64, f64) -> f64,
        B: Fn(f64) -> f64,
        O: FnMut(f64, f64),
    {
        let h = (t1 - t0) / steps as f64;
        let mut z = z0;
        let checked = |vel: f64, t: f64| -> Result<f64> {
            let cap = bound(t) * (1.0 + 1e-9) + f64::MIN_POSITIVE;
            if !vel.is_finite() {
                return Err(Error::NonFiniteState { t });
            }
            if vel.abs() > cap {
                return Err(Error::VelocityBound {
                    v: vel,
                    bound: cap,
                    t,
                });
            }
            Ok(vel)
        };
        for i in 0..steps {
            let t = t0 + h * i as f64;
            let k1 = checked(v(z, t), t)?;
            let k2 = checked(v(z + 0.5 * h * k1, t + 0.5 * h), t + 0.5 * h)?;
            let k3 = checked(v(z + 0.5 * h * k2, t + 0.5 * h), t + 0.5 * h)?;
            let t_next = if i + 1 == steps { t1 } else { t0 + h * (i + 1) as f64 };
            let k4 = checked(v(z + h * k3, t_next), t_next)?;
            z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if !z.is_finite() {
                return Err(Error::NonFiniteState { t: t_next });
            }
            observe(t_next, z);
        }
        Ok(z)
    }
}

fn classify(cos_theta: f64) -> Outcome {
    if cos_theta > 0.99 {
        Outcome::Up
    } else if cos_theta < -0.99 {
        Outcome::Down
    } else {
        Outcome::Unresolved
    }
}

fn step_count(span: f64, dt_max: Option<f64>, default_dt: f64) -> usize {
    let dt = dt_max.unwrap_or(default_dt);
    (span / dt).ceil().max(1.0) as usize
}
