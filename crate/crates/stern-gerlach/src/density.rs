//! Polarization-averaged atomic density along z, classical comparison paths,
//! and separation diagnostics.
//!
//! Averaging the component weights cos^2(theta0/2) and sin^2(theta0/2) over
//! uniformly drawn theta0 gives exactly 1/2 each, so the density is an equal
//! mixture of the two displaced Gaussians; no quadrature is needed here.

use std::f64::consts::PI;

use serde::Serialize;

use crate::config::Experiment;
use crate::error::{Error, Result};
use crate::numerics::quad::trapezoid;

/// Sampling grid for density profiles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZGrid {
    pub z_min: f64,
    pub z_max: f64,
    pub n: usize,
}

impl ZGrid {
    pub fn new(z_min: f64, z_max: f64, n: usize) -> Result<Self> {
        if z_max.is_nan() || z_min.is_nan() || z_max <= z_min || n < 2 {
            return Err(Error::InvalidGrid(format!(
                "need z_max > z_min and n >= 2, got [{z_min:e}, {z_max:e}] x {n}"
            )));
        }
        Ok(Self { z_min, z_max, n })
    }

    /// Symmetric grid covering both packet centers at time `t` with an
    /// 10-sigma guard, 1024 points.
    pub fn default_for(experiment: &Experiment, t: f64) -> Self {
        let half = experiment.profile_half_span(t);
        Self {
            z_min: -half,
            z_max: half,
            n: 1024,
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let step = (self.z_max - self.z_min) / (self.n - 1) as f64;
        (0..self.n).map(move |i| self.z_min + step * i as f64)
    }
}

/// A sampled density profile rho(z) at one instant.
#[derive(Debug, Clone, Serialize)]
pub struct DensityProfile {
    /// Ordered sample positions (m)
    pub grid_z: Vec<f64>,
    /// Density samples (1/m)
    pub values: Vec<f64>,
    /// Time since packet entry (s)
    pub t: f64,
    /// Equivalent beam coordinate y = v t (m)
    pub y: f64,
}

impl DensityProfile {
    /// Trapezoid integral over the grid; ~1 when the grid covers the packets.
    pub fn integral(&self) -> f64 {
        trapezoid(&self.grid_z, &self.values)
    }

    /// Number of strict interior local maxima.
    pub fn local_maxima_count(&self) -> usize {
        let v = &self.values;
        let mut count = 0;
        let mut i = 1;
        while i + 1 < v.len() {
            if v[i] > v[i - 1] {
                // Walk across any flat top.
                let mut j = i;
                while j + 1 < v.len() && v[j + 1] == v[j] {
                    j += 1;
                }
                if j + 1 < v.len() && v[j + 1] < v[j] {
                    count += 1;
                }
                i = j + 1;
            } else {
                i += 1;
            }
        }
        count
    }

    pub fn is_bimodal(&self) -> bool {
        self.local_maxima_count() >= 2
    }
}

/// Equal mixture of two unit-mass Gaussians centered at +/-c.
fn two_gaussian_density(z: f64, center: f64, sigma: f64) -> f64 {
    let norm = (2.0 * PI * sigma * sigma).powf(-0.5);
    let up = z - center;
    let down = z + center;
    norm * 0.5
        * ((-up * up / (2.0 * sigma * sigma)).exp() + (-down * down / (2.0 * sigma * sigma)).exp())
}

impl Experiment {
    /// Center displacement mu_B B0' t^2 / (2 m) of the up packet while in the field.
    pub fn in_field_center(&self, t: f64) -> f64 {
        self.gradient_force() * t * t / (2.0 * self.config().mass)
    }

    /// Displacement of the up packet at total time `t` since entry.
    pub fn packet_center_at(&self, t: f64) -> f64 {
        let dt = self.derived().transit_time;
        if t <= dt {
            self.in_field_center(t)
        } else {
            self.derived().exit_displacement + self.derived().exit_speed * (t - dt)
        }
    }

    /// Half-width of a grid covering both packets with a 10-sigma guard.
    pub fn profile_half_span(&self, t: f64) -> f64 {
        10.0 * self.config().sigma0 + self.packet_center_at(t)
    }

    /// Polarization-averaged density inside the magnet, 0 <= t <= transit time.
    pub fn density_in_field(&self, z: f64, t: f64) -> Result<f64> {
        let dt = self.derived().transit_time;
        if !(0.0..=dt).contains(&t) {
            return Err(Error::TimeOutOfField { t, delta_t: dt });
        }
        Ok(two_gaussian_density(
            z,
            self.in_field_center(t),
            self.config().sigma0,
        ))
    }

    /// Polarization-averaged density `t_post` seconds after the magnet.
    pub fn density_after_field(&self, z: f64, t_post: f64) -> f64 {
        debug_assert!(t_post >= 0.0);
        let center = self.derived().exit_displacement + self.derived().exit_speed * t_post;
        two_gaussian_density(z, center, self.config().sigma0)
    }

    /// Density at total time `t` since packet entry.
    pub fn density_at(&self, z: f64, t: f64) -> Result<f64> {
        let dt = self.derived().transit_time;
        if t <= dt {
            self.density_in_field(z, t)
        } else {
            Ok(self.density_after_field(z, t - dt))
        }
    }

    /// Classical comparison paths z_+(t), z_-(t) for pure up/down moments.
    pub fn classical_paths(&self, t: f64) -> (f64, f64) {
        debug_assert!(t >= 0.0);
        let z = self.packet_center_at(t);
        (z, -z)
    }

    /// Time after the magnet at which the packets are effectively disjoint.
    pub fn separation_time(&self) -> f64 {
        self.derived().separation_time
    }

    /// Samples the density at total time `t` on `grid`.
    ///
    /// The grid must cover both packet centers with an 8-sigma margin,
    /// otherwise the unit-mass invariant of the profile would silently break.
    pub fn density_profile(&self, t: f64, grid: &ZGrid) -> Result<DensityProfile> {
        let center = self.packet_center_at(t);
        let required = center + 8.0 * self.config().sigma0;
        if grid.z_min > -required || grid.z_max < required {
            return Err(Error::GridTooSmall {
                z_min: grid.z_min,
                z_max: grid.z_max,
                required,
            });
        }
        let grid_z: Vec<f64> = grid.points().collect();
        let values = grid_z
            .iter()
            .map(|&z| self.density_at(z, t))
            .collect::<Result<Vec<f64>>>()?;
        Ok(DensityProfile {
            grid_z,
            values,
            t,
            y: self.config().speed * t,
        })
    }
}
