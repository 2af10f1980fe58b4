//! Experiment configuration and the scalar quantities derived from it.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

/// Apparatus and beam parameters, strict SI units throughout.
///
/// JSON configs use the short field names shown in the serde attributes;
/// any missing field falls back to the silver-atom defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Atom mass (kg)
    #[serde(rename = "m")]
    pub mass: f64,
    /// Beam speed along y (m/s)
    #[serde(rename = "v")]
    pub speed: f64,
    /// Initial packet standard deviation (m)
    #[serde(rename = "sigma0")]
    pub sigma0: f64,
    /// Field magnitude B0 (T)
    #[serde(rename = "B0")]
    pub field_strength: f64,
    /// Field gradient B0' (T/m)
    #[serde(rename = "B0_prime")]
    pub field_gradient: f64,
    /// Magnet length along y (m)
    #[serde(rename = "delta_l")]
    pub magnet_length: f64,
    /// Magnet-to-screen distance (m)
    #[serde(rename = "D")]
    pub screen_distance: f64,
}

impl Default for ExperimentConfig {
    /// Silver-atom beam defaults: m = 1.8e-25 kg, v = 500 m/s, sigma0 = 1e-4 m,
    /// B0 = 5 T, B0' = 1e3 T/m, magnet length 1 cm, screen 20 cm downstream.
    fn default() -> Self {
        Self {
            mass: 1.8e-25,
            speed: 500.0,
            sigma0: 1.0e-4,
            field_strength: 5.0,
            field_gradient: 1.0e3,
            magnet_length: 0.01,
            screen_distance: 0.20,
        }
    }
}

/// Optional-field mirror of [`ExperimentConfig`] used for JSON ingestion.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartialConfig {
    m: Option<f64>,
    v: Option<f64>,
    sigma0: Option<f64>,
    #[serde(rename = "B0")]
    b0: Option<f64>,
    #[serde(rename = "B0_prime")]
    b0_prime: Option<f64>,
    delta_l: Option<f64>,
    #[serde(rename = "D")]
    d: Option<f64>,
}

impl ExperimentConfig {
    /// Loads a config from JSON, filling missing fields with defaults.
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::ConfigFile {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json_str(&text).map_err(|e| match e {
            Error::ConfigFile { message, .. } => Error::ConfigFile {
                path: path.display().to_string(),
                message,
            },
            other => other,
        })
    }

    /// Parses a JSON object with the config field names; missing fields default.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let partial: PartialConfig =
            serde_json::from_str(text).map_err(|e| Error::ConfigFile {
                path: String::from("<inline>"),
                message: e.to_string(),
            })?;
        let d = Self::default();
        let cfg = Self {
            mass: partial.m.unwrap_or(d.mass),
            speed: partial.v.unwrap_or(d.speed),
            sigma0: partial.sigma0.unwrap_or(d.sigma0),
            field_strength: partial.b0.unwrap_or(d.field_strength),
            field_gradient: partial.b0_prime.unwrap_or(d.field_gradient),
            magnet_length: partial.delta_l.unwrap_or(d.magnet_length),
            screen_distance: partial.d.unwrap_or(d.screen_distance),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Rejects non-positive fields.
    pub fn validate(&self) -> Result<()> {
        for (field, value) in [
            ("m", self.mass),
            ("v", self.speed),
            ("sigma0", self.sigma0),
            ("B0", self.field_strength),
            ("B0_prime", self.field_gradient),
            ("delta_l", self.magnet_length),
            ("D", self.screen_distance),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::NonPositiveConfig { field, value });
            }
        }
        Ok(())
    }

    /// Non-fatal diagnostics, e.g. a packet wide relative to the magnet.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.sigma0 > self.magnet_length / 10.0 {
            out.push(format!(
                "sigma0 = {:e} m is not small against the magnet length {:e} m; \
                 the frozen-packet approximation degrades",
                self.sigma0, self.magnet_length
            ));
        }
        out
    }
}

/// Scalar quantities derived from a config; every module reads these.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedQuantities {
    /// Time spent inside the magnet, delta_l / v (s)
    pub transit_time: f64,
    /// Transverse displacement of each packet at magnet exit (m)
    pub exit_displacement: f64,
    /// Transverse speed of each packet at magnet exit (m/s)
    pub exit_speed: f64,
    /// Time after the magnet at which the packets are effectively disjoint (s)
    pub separation_time: f64,
    /// Angular frequency of the dropped spin-coupling oscillation, 2 mu_B B0 / hbar (rad/s)
    pub coupling_omega: f64,
    /// Packet spreading parameter hbar*transit_time/(2 m sigma0^2), dimensionless
    pub spread_ratio: f64,
}

impl DerivedQuantities {
    /// Computes all derived scalars; rejects invalid configs.
    pub fn derive(config: &ExperimentConfig, constants: &PhysicalConstants) -> Result<Self> {
        config.validate()?;
        constants.validate()?;
        let transit_time = config.magnet_length / config.speed;
        let exit_speed = constants.mu_b * config.field_gradient * transit_time / config.mass;
        // u * dt / 2; multiplying by 0.5 keeps the kinematic identity exact.
        let exit_displacement = exit_speed * transit_time * 0.5;
        let separation_time = 3.0 * config.sigma0 / exit_speed;
        let coupling_omega = 2.0 * constants.mu_b * config.field_strength / constants.hbar;
        let spread_ratio =
            constants.hbar * transit_time / (2.0 * config.mass * config.sigma0 * config.sigma0);
        Ok(Self {
            transit_time,
            exit_displacement,
            exit_speed,
            separation_time,
            coupling_omega,
            spread_ratio,
        })
    }

    /// The coupling frequency in cycles per second.
    pub fn coupling_frequency_hz(&self) -> f64 {
        self.coupling_omega / std::f64::consts::TAU
    }
}

/// A validated configuration together with its constants and derived scalars.
///
/// Immutable after construction; all physics entry points hang off this type.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Experiment {
    config: ExperimentConfig,
    constants: PhysicalConstants,
    derived: DerivedQuantities,
}

impl Experiment {
    pub fn new(config: ExperimentConfig) -> Result<Self> {
        let constants = PhysicalConstants::default();
        let derived = DerivedQuantities::derive(&config, &constants)?;
        Ok(Self {
            config,
            constants,
            derived,
        })
    }

    /// The default silver-atom experiment.
    pub fn silver_defaults() -> Self {
        Self::new(ExperimentConfig::default()).expect("default config is valid")
    }

    pub fn config(&self) -> &ExperimentConfig {
        &self.config
    }

    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }

    pub fn derived(&self) -> &DerivedQuantities {
        &self.derived
    }

    /// Time for the beam to reach the screen after leaving the magnet (s).
    pub fn screen_flight_time(&self) -> f64 {
        self.config.screen_distance / self.config.speed
    }

    /// Force magnitude mu_B * B0' felt by each spin component (N).
    pub fn gradient_force(&self) -> f64 {
        self.constants.mu_b * self.config.field_gradient
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_exp() -> Experiment {
        Experiment::silver_defaults()
    }

    #[test]
    fn default_config_matches_silver_beam() {
        let c = ExperimentConfig::default();
        assert_eq!(c.mass, 1.8e-25);
        assert_eq!(c.speed, 500.0);
        assert_eq!(c.sigma0, 1.0e-4);
        assert_eq!(c.field_strength, 5.0);
        assert_eq!(c.field_gradient, 1.0e3);
        assert_eq!(c.magnet_length, 0.01);
        assert_eq!(c.screen_distance, 0.20);
    }

    #[test]
    fn transit_time_exact() {
        let d = default_exp().derived().to_owned();
        assert_eq!(d.transit_time, 2.0e-5);
    }

    #[test]
    fn exit_kinematics_match_tabulated_magneton() {
        // u = mu_B B0' dt / m ~ 1 m/s and z_delta ~ 1e-5 m within 5%.
        let d = default_exp().derived().to_owned();
        assert!((d.exit_speed - 1.0).abs() / 1.0 < 0.05, "u = {}", d.exit_speed);
        assert!(
            (d.exit_displacement - 1.0e-5).abs() / 1.0e-5 < 0.05,
            "z_delta = {}",
            d.exit_displacement
        );
    }

    #[test]
    fn separation_time_within_ten_percent() {
        let d = default_exp().derived().to_owned();
        assert!((d.separation_time - 3.0e-4).abs() / 3.0e-4 < 0.10);
    }

    #[test]
    fn coupling_frequency_in_cycles() {
        // 2 mu_B B0 / hbar = 8.79e11 rad/s, i.e. 1.4e11 cycles/s.
        let d = default_exp().derived().to_owned();
        assert!((d.coupling_omega - 8.794e11).abs() / 8.794e11 < 1e-3);
        assert!((d.coupling_frequency_hz() - 1.4e11).abs() / 1.4e11 < 0.01);
    }

    #[test]
    fn spread_ratio_is_negligible() {
        let d = default_exp().derived().to_owned();
        assert!(d.spread_ratio < 1e-3);
        assert!(d.spread_ratio > 0.0);
    }

    #[test]
    fn kinematic_identity_is_exact() {
        let d = default_exp().derived().to_owned();
        assert_eq!(d.exit_displacement / (d.exit_speed * d.transit_time), 0.5);
    }

    #[test]
    fn derive_is_pure() {
        let c = ExperimentConfig::default();
        let k = PhysicalConstants::default();
        let a = DerivedQuantities::derive(&c, &k).unwrap();
        let b = DerivedQuantities::derive(&c, &k).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn doubling_gradient_scales_exactly() {
        let c = ExperimentConfig::default();
        let k = PhysicalConstants::default();
        let base = DerivedQuantities::derive(&c, &k).unwrap();
        let doubled_cfg = ExperimentConfig {
            field_gradient: 2.0 * c.field_gradient,
            ..c
        };
        let doubled = DerivedQuantities::derive(&doubled_cfg, &k).unwrap();
        assert_eq!(doubled.exit_speed, 2.0 * base.exit_speed);
        assert_eq!(doubled.exit_displacement, 2.0 * base.exit_displacement);
        assert_eq!(doubled.separation_time, base.separation_time / 2.0);
    }

    #[test]
    fn rejects_non_positive_fields() {
        for bad in [0.0, -1.0, f64::NAN] {
            let cfg = ExperimentConfig {
                field_gradient: bad,
                ..Default::default()
            };
            assert!(Experiment::new(cfg).is_err(), "accepted B0' = {bad}");
        }
    }

    #[test]
    fn json_partial_config_fills_defaults() {
        let cfg = ExperimentConfig::from_json_str(r#"{"v": 250.0, "B0": 2.5}"#).unwrap();
        assert_eq!(cfg.speed, 250.0);
        assert_eq!(cfg.field_strength, 2.5);
        assert_eq!(cfg.mass, 1.8e-25);
        assert_eq!(cfg.sigma0, 1.0e-4);
    }

    #[test]
    fn json_rejects_unknown_field() {
        let err = ExperimentConfig::from_json_str(r#"{"mass": 1.0}"#).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("mass"), "diagnostic should name the field: {msg}");
    }

    #[test]
    fn json_rejects_non_positive_value() {
        assert!(ExperimentConfig::from_json_str(r#"{"v": -5.0}"#).is_err());
    }

    #[test]
    fn doubling_speed_halves_transit_time() {
        let c = ExperimentConfig {
            speed: 1000.0,
            ..Default::default()
        };
        let d = Experiment::new(c).unwrap().derived().to_owned();
        assert_eq!(d.transit_time, 1.0e-5);
    }

    #[test]
    fn wide_packet_warns() {
        let c = ExperimentConfig {
            sigma0: 0.005,
            ..Default::default()
        };
        assert_eq!(c.warnings().len(), 1);
        assert!(ExperimentConfig::default().warnings().is_empty());
    }
}
