//! Space-and-time resolved model of the Stern-Gerlach experiment for
//! spin-1/2 silver atoms.
//!
//! The crate evaluates the closed-form Pauli spinor of a Gaussian beam
//! crossing an inhomogeneous magnet (field B = (B0' x, 0, B0 - B0' z)),
//! the polarization-averaged probability density that splits in two, the
//! de Broglie-Bohm trajectories that carry individual atoms into one spot
//! or the other, and Monte Carlo ensembles whose statistics recover the
//! Born rule. A split-operator spectral solver independently verifies the
//! analytic propagator, and a Madelung continuity check ties density and
//! guidance velocity together.
//!
//! Entry point is [`Experiment`]: a validated configuration plus derived
//! quantities, with all physics exposed as methods.
//!
//! ```
//! use stern_gerlach::{Experiment, PolarizedAtom};
//!
//! let experiment = Experiment::silver_defaults();
//! let derived = experiment.derived();
//! assert_eq!(derived.transit_time, 2.0e-5);
//!
//! let atom = PolarizedAtom::centered(std::f64::consts::PI / 3.0, 0.0).unwrap();
//! let t_end = derived.transit_time + derived.separation_time;
//! let path = experiment.integrate_trajectory(&atom, t_end, None).unwrap();
//! assert!(path.final_point().z > 0.0);
//! ```
//!
//! The `examples/` directory exercises every capability; the thin `sg`
//! binary exposes the same operations as subcommands.

pub mod bohm;
pub mod config;
pub mod constants;
pub mod density;
pub mod ensemble;
pub mod error;
pub mod numerics;
pub mod oracle;
pub mod output;
pub mod runner;
pub mod spinor;

pub use bohm::{Outcome, Trajectory, TrajectoryPoint, VelocitySample};
pub use config::{DerivedQuantities, Experiment, ExperimentConfig};
pub use constants::PhysicalConstants;
pub use density::{DensityProfile, ZGrid};
pub use ensemble::{EnsembleResult, Histogram, Phi0Law, SamplingSpec, SpotSummary, Theta0Law};
pub use error::{Error, Result};
pub use oracle::{GridSpec, GridWavefunction};
pub use spinor::{PacketParams, PolarizedAtom, SpinorValue};
