//! Physical constants in SI units (CODATA 2018 recommended values).

use crate::error::{Error, Result};
use serde::Serialize;

/// Reduced Planck constant ħ (J·s)
pub const HBAR: f64 = 1.054_571_817e-34;

/// Bohr magneton μ_B = eħ/(2mₑ) (J/T)
pub const MU_B: f64 = 9.274_010_078_3e-24;

/// Electron mass (kg)
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;

/// Elementary charge (C)
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// The tabulated constants used by a simulation run.
///
/// Bundled as a value (rather than bare consts) so a run manifest can echo
/// exactly what it computed with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    /// Reduced Planck constant (J·s)
    pub hbar: f64,
    /// Bohr magneton (J/T)
    pub mu_b: f64,
    /// Electron mass (kg)
    pub electron_mass: f64,
    /// Elementary charge (C)
    pub elementary_charge: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self {
            hbar: HBAR,
            mu_b: MU_B,
            electron_mass: ELECTRON_MASS,
            elementary_charge: ELEMENTARY_CHARGE,
        }
    }
}

impl PhysicalConstants {
    /// Checks positivity and that μ_B is consistent with eħ/(2mₑ).
    pub fn validate(&self) -> Result<()> {
        for (field, value) in [
            ("hbar", self.hbar),
            ("mu_b", self.mu_b),
            ("electron_mass", self.electron_mass),
            ("elementary_charge", self.elementary_charge),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::NonPositiveConfig { field, value });
            }
        }
        let derived = self.elementary_charge * self.hbar / (2.0 * self.electron_mass);
        let rel = (derived - self.mu_b).abs() / self.mu_b;
        if rel >= 1e-6 {
            return Err(Error::InvalidArgument(format!(
                "mu_b inconsistent with e*hbar/(2*m_e): relative error {rel:e}"
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tabulated_values_consistent() {
        PhysicalConstants::default().validate().unwrap();
    }

    #[test]
    fn bohr_magneton_matches_definition() {
        let derived = ELEMENTARY_CHARGE * HBAR / (2.0 * ELECTRON_MASS);
        assert!((derived - MU_B).abs() / MU_B < 1e-6);
    }

    #[test]
    fn rejects_inconsistent_magneton() {
        let c = PhysicalConstants {
            mu_b: MU_B * 1.001,
            ..Default::default()
        };
        assert!(c.validate().is_err());
    }

    #[test]
    fn rejects_non_positive() {
        let c = PhysicalConstants {
            hbar: 0.0,
            ..Default::default()
        };
        assert!(c.validate().is_err());
    }
}
