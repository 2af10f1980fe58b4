//! Shared numerical utilities: normal-distribution functions, quadrature,
//! and compensated summation.

pub mod normal;
pub mod quad;
pub mod sum;
