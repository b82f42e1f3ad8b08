//! Casimir interaction between two concentric cylinders at zero and finite temperature.
//!
//! The crate is layered bottom-up:
//!
//! - [`special`]: modified and ordinary Bessel functions (exponentially scaled and
//!   log-ratio forms) and the Debye uniform-asymptotic ingredients.
//! - [`quadrature`]: adaptive Gauss-Kronrod integration and an oscillatory
//!   integrator that partitions at Bessel zeros.
//! - [`kernel`]: geometry, boundary configurations, and the mode functions
//!   `M_n(xi)` / `A_n(omega)` with a cancellation-safe `ln(1 - M_n)`.
//! - [`engine`]: zero-temperature energy, Matsubara free energy, classical term,
//!   Poisson-resummed thermal correction and low-temperature leading terms.
//! - [`asymptotics`]: small-gap expansions, proximity-force leading terms and the
//!   Mellin coefficient closed forms with their quadrature cross-checks.
//!
//! All energies are per unit cylinder length in natural units (hbar = c = k_B = 1).

// Input guards are written `!(x > 0.0)` on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod engine;
pub mod error;
pub mod kernel;
pub mod quadrature;
pub mod special;

pub use asymptotics::{
    expansion, mellin_integral_check, pfa_leading, script_e, DebyeCoefficients, ExpansionResult,
    ExpansionTerm, MellinCheck, MellinKind, Regime,
};
pub use engine::{
    abel_plana_phase, classical_term, free_energy, free_energy_matsubara,
    thermal_correction_poisson, thermal_leading, zero_temperature_energy,
    zero_temperature_energy_double_form, EnergyRegime, EnergyResult, NumericsSpec, ThermalState,
};
pub use error::{CasimirError, Result};
pub use kernel::{
    BoundaryCondition, CylinderGeometry, EmKind, FieldConfig, ModeValue, ScalarConfig,
};

/// Apery's constant, zeta(3).
pub const ZETA3: f64 = 1.202_056_903_159_594_3;
/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
