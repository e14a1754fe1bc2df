//! Numerical toolkit for three-dimensional integrable systems with axial symmetry.
//!
//! The Hamiltonian `H = p²/2m + U(x)` commutes with the axial angular momentum
//! `L = n·(x × p)` and with a second quadratic invariant `H̃ = pᵢ g^{ik} pₖ/2m + Φ(x)`
//! whenever `(U, Φ)` is built from two one-variable functions in oblate-spheroidal
//! coordinates. The crate covers
//!
//! * [`coords`]: the spheroidal charts and the metric `g`,
//! * [`potentials`]: the separable potential pairs and the involution check,
//! * [`dynamics`]: invariants, Poisson brackets, Cartesian and separated integrators,
//! * [`hj`]: the Hamilton–Jacobi quadratures, constants of motion and momentum reconstruction,
//! * [`quantum`]: the separated spheroidal-type equations, Frobenius series and the
//!   angular eigenvalue problem.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the `*64` aliases below fix
//! double precision, which is what the tolerances throughout the crate are tuned for.

pub mod coords;
pub mod diff;
pub mod dynamics;
pub mod error;
pub mod hj;
pub mod linalg;
pub mod ode;
pub mod potentials;
pub mod quadrature;
pub mod quantum;
pub mod scalar;

pub use error::{Error, Result};
pub use linalg::{Mat3, Vec3};
pub use scalar::Scalar;

pub type Vec3f64 = linalg::Vec3<f64>;
pub type AxisConfig64 = coords::AxisConfig<f64>;
pub type PhaseState64 = coords::PhaseState<f64>;
pub type SpheroidalPoint64 = coords::SpheroidalPoint<f64>;
pub type SeparablePotential64 = potentials::SeparablePotential<f64>;
pub type InvariantTriple64 = dynamics::InvariantTriple<f64>;
pub type TrajectoryRecord64 = dynamics::TrajectoryRecord<f64>;
pub type QuantumParams64 = quantum::QuantumParams<f64>;
pub type SeriesSolution64 = quantum::series::SeriesSolution<f64>;
