//! Casimir-Polder shifts of an excited two-level atom held above a square
//! array of ground-state atoms.
//!
//! Lengths are scaled by the test atom's resonant wavenumber `k₀`, shifts are
//! in units of its free-space linewidth `γ₀`. The numerical core is generic
//! over [`Real`]; the `f64` aliases below cover the usual case.
//!
//! Three routes to the shift are provided and cross-checked: direct lattice
//! sums ([`lattice_sum`]), the bulk/edge/vertex continuum decomposition
//! ([`euler_maclaurin`]) and leading-order laws ([`asymptotics`]).

pub mod asymptotics;
pub mod compensated;
pub mod diagrams;
pub mod error;
pub mod euler_maclaurin;
pub mod fastmath;
pub mod fitting;
pub mod greens;
pub mod lattice_sum;
pub mod model;
pub mod quadrature;
pub mod scalar;
pub mod specfun;

pub use asymptotics::{Alignment, Density, Exponent, Regime, Retardation};
pub use error::{CpError, Result};
pub use euler_maclaurin::ShiftBreakdown;
pub use fitting::FitReport;
pub use lattice_sum::{LatticeSum, ShiftKind, ShiftResult};
pub use model::{Geometry, LatticeSpec, ModelParams, Orientation};
pub use scalar::{Real, Vec3};

pub type Params = model::ModelParams<f64>;
pub type Lattice = model::LatticeSpec<f64>;
pub type Height = model::Geometry<f64>;
pub type System = model::System<f64>;
pub type Breakdown = euler_maclaurin::ShiftBreakdown<f64>;
pub type Fit = fitting::FitReport<f64>;
pub type Tensor = greens::DyadicTensor<f64>;
