//! Nonretarded Casimir interaction between a metallic nanosphere and a flat substrate.
//!
//! The sphere and its image in the substrate are treated in the dipolar approximation.
//! Geometry enters only through the depolarization factors `n_s` of the coupled
//! sphere-image system; material properties enter through the spectral variable
//! `u = 1 / (1 - eps_s / eps_a)`. The zero-point energy is the integral of
//! `hbar * omega / 2` over the change in electromagnetic density of states.
//!
//! All frequencies are photon energies in eV, lengths are in nm, so energies come
//! out in eV and forces in eV/nm.

// NaN-rejecting checks are written as `!(x > 0.0)` on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dos;
pub mod eigen;
pub mod energy;
mod error;
pub mod materials;
pub mod output;
pub mod quadrature;
pub mod spectral;
pub mod units;

pub use crate::dos::{DosProfile, Normalization};
pub use crate::energy::{EnergyResult, ForceMethod, ForceResult, QuadratureConfig, Solver};
pub use crate::error::{Error, Result};
pub use crate::materials::{Drude, Environment, Material};
pub use crate::spectral::{Coupling, Geometry, ModeEntry, SpectralModes};
