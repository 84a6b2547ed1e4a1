//! Dirac fermions on ideal Aharonov-Bohm cylinders.
//!
//! Natural units (ħ = c = 1) with lengths measured in units of the radius R.
//! The core is generic over [`Real`] (`f32` or `f64`); the aliases below fix
//! `f64` for everyday use.

// NaN must fail range checks, so `!(x > 0)` is intended
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod currents;
pub mod error;
pub mod fermi;
pub mod params;
pub mod quadrature;
pub mod scalar;
pub mod spectrum;
pub mod spinors;
pub mod summation;

pub use error::{Error, Result};
pub use fermi::{Method, PersistentReport as GenericPersistentReport};
pub use params::{ParamConfig, ParamKey, Regime};
pub use scalar::{Complex, Real};
pub use spectrum::{HalfOdd, Longitudinal, Polarization, SeaCriterion};

pub type Params = params::DimensionlessParams<f64>;
pub type PhysicalParams = params::PhysicalParams<f64>;
pub type ModeSpec = spectrum::ModeSpec<f64>;
pub type FermiSea = spectrum::FermiSea<f64>;
pub type Mode = spinors::Mode<f64>;
pub type SpinorValue = spinors::SpinorValue<f64>;
pub type QuadratureRule = spinors::QuadratureRule<f64>;
pub type MixedState = currents::MixedState<f64>;
pub type PacketSpec = currents::PacketSpec<f64>;
pub type PersistentReport = fermi::PersistentReport<f64>;
