//! Seeded atom ensembles, batched trajectory runs, impact statistics, and
//! comparison of empirical impact distributions against the analytic density.
//!
//! Reproducibility model: every atom draws from its own ChaCha8 stream
//! (`seed_from_u64(seed)` + `set_stream(atom index)`), so sampling and
//! integration order never matter; batch results are collected in input
//! order and statistics are reduced sequentially with compensated sums.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::bohm::Outcome;
use crate::config::Experiment;
use crate::error::{Error, Result};
use crate::numerics::normal::norm_cdf;
use crate::numerics::sum::{compensated_mean, compensated_sum};
use crate::spinor::PolarizedAtom;

/// Law for the initial polar angle theta0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Theta0Law {
    /// Every atom carries the same polar angle.
    Fixed(f64),
    /// theta0 uniform on [0, pi] (the default preparation model).
    UniformInterval,
    /// theta0 with density sin(theta0)/2 (isotropic moments); never a default.
    SineWeighted,
}

/// Law for the initial azimuth phi0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Phi0Law {
    Fixed(f64),
    /// phi0 uniform on [0, 2 pi).
    Uniform,
}

/// Ensemble description. Initial offsets z0 and x0 are always Gaussian with
/// the packet width sigma0 (matching the initial quantum density).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SamplingSpec {
    pub n: usize,
    pub seed: u64,
    pub theta0_law: Theta0Law,
    pub phi0_law: Phi0Law,
}

impl SamplingSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidArgument("ensemble size n must be >= 1".into()));
        }
        if let Theta0Law::Fixed(v) = self.theta0_law {
            if !(0.0..=std::f64::consts::PI).contains(&v) {
                return Err(Error::InvalidArgument(format!(
                    "fixed theta0 = {v} outside [0, pi]"
                )));
            }
        }
        if let Phi0Law::Fixed(v) = self.phi0_law {
            if !(0.0..2.0 * std::f64::consts::PI).contains(&v) {
                return Err(Error::InvalidArgument(format!(
                    "fixed phi0 = {v} outside [0, 2 pi)"
                )));
            }
        }
        Ok(())
    }
}

/// One atom's screen record.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Impact {
    pub atom: PolarizedAtom,
    pub z_impact: f64,
    pub outcome: Outcome,
}

/// Normalized histogram over fixed bin edges; outermost bins absorb overflow.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub masses: Vec<f64>,
}

impl Histogram {
    /// Bins `values` into `bins` equal cells over [lo, hi], clamping outliers
    /// into the end cells so the mass always sums to one.
    pub fn from_values(values: &[f64], bins: usize, lo: f64, hi: f64) -> Result<Self> {
        if bins == 0 || hi.is_nan() || lo.is_nan() || hi <= lo {
            return Err(Error::InvalidArgument(format!(
                "bad histogram range [{lo:e}, {hi:e}] x {bins}"
            )));
        }
        if values.is_empty() {
            return Err(Error::InvalidArgument("empty sample for histogram".into()));
        }
        let width = (hi - lo) / bins as f64;
        let mut counts = vec![0u64; bins];
        for &v in values {
            let idx = ((v - lo) / width).floor();
            let idx = (idx.max(0.0) as usize).min(bins - 1);
            counts[idx] += 1;
        }
        let n = values.len() as f64;
        let edges = (0..=bins).map(|i| lo + width * i as f64).collect();
        let masses = counts.iter().map(|&c| c as f64 / n).collect();
        Ok(Self { edges, masses })
    }

    pub fn total_mass(&self) -> f64 {
        compensated_sum(self.masses.iter().copied())
    }

    /// L1 distance between the bin masses of two aligned histograms.
    pub fn l1_distance(&self, other: &Histogram) -> Result<f64> {
        if self.edges.len() != other.edges.len() {
            return Err(Error::GridMismatch(format!(
                "histogram bins differ: {} vs {}",
                self.masses.len(),
                other.masses.len()
            )));
        }
        Ok(compensated_sum(
            self.masses
                .iter()
                .zip(&other.masses)
                .map(|(a, b)| (a - b).abs()),
        ))
    }
}

/// Centroids and masses of the two impact spots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpotSummary {
    pub centroid_up: f64,
    pub centroid_down: f64,
    pub mass_up: f64,
    pub mass_down: f64,
}

impl SpotSummary {
    pub fn mass_ratio(&self) -> f64 {
        self.mass_up / self.mass_down
    }
}

/// Outcome of one ensemble run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleResult {
    pub impacts: Vec<Impact>,
    pub up_fraction: f64,
    pub histogram: Histogram,
    /// L1 distance to the analytic density; filled by [`Experiment::compare_to_density`].
    pub divergence_l1: Option<f64>,
}

/// Number of histogram bins used for impact maps and density comparison.
pub const DEFAULT_BINS: usize = 100;

impl Experiment {
    /// Draws an atom list; deterministic in (seed, n) independent of ordering.
    pub fn sample_atoms(&self, spec: &SamplingSpec) -> Result<Vec<PolarizedAtom>> {
        spec.validate()?;
        let s0 = self.config().sigma0;
        Ok((0..spec.n)
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
                rng.set_stream(i as u64);
                let theta0 = match spec.theta0_law {
                    Theta0Law::Fixed(v) => v,
                    Theta0Law::UniformInterval => std::f64::consts::PI * rng.random::<f64>(),
                    Theta0Law::SineWeighted => (1.0 - 2.0 * rng.random::<f64>()).acos(),
                };
                let phi0 = match spec.phi0_law {
                    Phi0Law::Fixed(v) => v,
                    Phi0Law::Uniform => 2.0 * std::f64::consts::PI * rng.random::<f64>(),
                };
                let z0: f64 = s0 * rng.sample::<f64, _>(StandardNormal);
                let x0: f64 = s0 * rng.sample::<f64, _>(StandardNormal);
                PolarizedAtom {
                    theta0,
                    phi0,
                    z0,
                    x0,
                }
            })
            .collect())
    }

    /// Integrates every atom to `t_end` and collects impact statistics.
    ///
    /// Atoms are integrated in parallel; impacts keep the input order so the
    /// result is bitwise reproducible for a fixed spec.
    pub fn run_ensemble(
        &self,
        atoms: &[PolarizedAtom],
        t_end: f64,
        dt_max: Option<f64>,
    ) -> Result<EnsembleResult> {
        if atoms.is_empty() {
            return Err(Error::InvalidArgument("empty atom list".into()));
        }
        let impacts: Vec<Impact> = atoms
            .par_iter()
            .enumerate()
            .map(|(index, atom)| {
                self.integrate_endpoint(atom, t_end, dt_max)
                    .map(|(z_impact, outcome)| Impact {
                        atom: *atom,
                        z_impact,
                        outcome,
                    })
                    .map_err(|e| Error::AtomFailed {
                        index,
                        source: Box::new(e),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        let n_up = impacts
            .iter()
            .filter(|i| i.outcome == Outcome::Up)
            .count();
        let up_fraction = n_up as f64 / impacts.len() as f64;
        let zs: Vec<f64> = impacts.iter().map(|i| i.z_impact).collect();
        let half = self.profile_half_span(t_end);
        let histogram = Histogram::from_values(&zs, DEFAULT_BINS, -half, half)?;
        Ok(EnsembleResult {
            impacts,
            up_fraction,
            histogram,
            divergence_l1: None,
        })
    }

    /// Re-bins impacts and reports the two spot centroids and masses.
    pub fn impact_map(&self, result: &EnsembleResult, bins: usize) -> Result<(Histogram, SpotSummary)> {
        if result.impacts.is_empty() {
            return Err(Error::InvalidArgument("empty ensemble result".into()));
        }
        let zs: Vec<f64> = result.impacts.iter().map(|i| i.z_impact).collect();
        let lo = zs.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = zs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let pad = 1e-12 * (hi - lo).abs().max(1.0);
        let histogram = Histogram::from_values(&zs, bins, lo - pad, hi + pad)?;
        let (up, down): (Vec<f64>, Vec<f64>) = zs.iter().partition(|&&z| z > 0.0);
        let n = zs.len() as f64;
        let summary = SpotSummary {
            centroid_up: compensated_mean(&up),
            centroid_down: compensated_mean(&down),
            mass_up: up.len() as f64 / n,
            mass_down: down.len() as f64 / n,
        };
        Ok((histogram, summary))
    }

    /// L1 distance between the impact histogram and the analytic density
    /// integrated over the same bins (both normalized).
    ///
    /// Meaningful when the ensemble used the uniform theta0 law: the analytic
    /// density is exactly the theta0-averaged law.
    pub fn compare_to_density(&self, result: &EnsembleResult, t_end: f64) -> Result<f64> {
        let h = &result.histogram;
        let edges = &h.edges;
        let center = self.packet_center_at(t_end);
        let s0 = self.config().sigma0;
        let bins = h.masses.len();
        let analytic: Vec<f64> = (0..bins)
            .map(|i| {
                // Outermost bins absorb the tails, mirroring the histogram clamp.
                let lo = if i == 0 { f64::NEG_INFINITY } else { edges[i] };
                let hi = if i + 1 == bins {
                    f64::INFINITY
                } else {
                    edges[i + 1]
                };
                let mass = |c: f64| norm_cdf((hi - c) / s0) - norm_cdf((lo - c) / s0);
                0.5 * (mass(center) + mass(-center))
            })
            .collect();
        Ok(compensated_sum(
            h.masses
                .iter()
                .zip(&analytic)
                .map(|(p, q)| (p - q).abs()),
        ))
    }
}
