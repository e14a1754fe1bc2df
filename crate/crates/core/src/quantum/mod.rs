//! The separated quantum problem for the Coulomb-like pair `f = 0`, `g = Q(λ₋ + a²)`.
//!
//! With `t = sinh α`, `u = sin β` and `𝓔 = 2ma²E`, `q = 2ma²Q`, `𝓔̃ = ℓ² + 2mẼ`:
//!
//! ```text
//! (t²+1)ψ'' + 2tψ' + [ℓ²/(t²+1) + 𝓔t² - 𝓔̃]ψ = 0
//! (1-u²)ψ'' - 2uψ' + [-ℓ²/(1-u²) + 𝓔u² + q(1-u²) + 𝓔̃]ψ = 0
//! ```
//!
//! Both are spheroidal wave equations
//! `(1-z²)w'' - 2zw' + [λ - μ²/(1-z²) + γ²(1-z²)]w = 0` with `λ = G = 𝓔̃ + 𝓔`, `μ = ℓ`,
//! and `γ² = q - 𝓔` (angular) or `γ² = -𝓔` (radial, after `t = i z`).
//! In `z = t²` the radial equation becomes
//! `4z(z+1)ψ'' + (6z+2)ψ' + [ℓ²/(z+1) + 𝓔z - 𝓔̃]ψ = 0`.

pub mod angular;
pub mod radial;
pub mod series;

use crate::coords::AxisConfig;
use crate::scalar::Scalar;

/// Dimensionless parameters of the separated equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumParams<T> {
    pub cal_e: T,
    pub q: T,
    pub cal_e_tilde: T,
    pub ell: i64,
    /// `𝓔̃ + 𝓔`
    pub g: T,
    /// `q - 𝓔`
    pub q_prime: T,
}

impl<T: Scalar> QuantumParams<T> {
    pub fn new(cal_e: T, q: T, cal_e_tilde: T, ell: i64) -> Self {
        QuantumParams {
            cal_e,
            q,
            cal_e_tilde,
            ell,
            g: cal_e_tilde + cal_e,
            q_prime: q - cal_e,
        }
    }

    pub fn ell_t(&self) -> T {
        T::from_i64(self.ell).expect("ℓ representable")
    }

    /// Inverse map back to `(E, Ẽ, Q)`.
    pub fn to_physical(&self, cfg: &AxisConfig<T>) -> (T, T, T) {
        let two_m = cfg.m() + cfg.m();
        let k = two_m * cfg.a2();
        let l = self.ell_t();
        (self.cal_e / k, (self.cal_e_tilde - l * l) / two_m, self.q / k)
    }
}

pub fn to_quantum_params<T: Scalar>(e: T, e_tilde: T, ell: i64, q_charge: T, cfg: &AxisConfig<T>) -> QuantumParams<T> {
    let two_m = cfg.m() + cfg.m();
    let k = two_m * cfg.a2();
    let l = T::from_i64(ell).expect("ℓ representable");
    QuantumParams::new(k * e, k * q_charge, l * l + two_m * e_tilde, ell)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    /// The `t` (radial) equation.
    Plus,
    /// The `u` (angular) equation.
    Minus,
}

/// Coefficients `(λ, μ, γ²)` of a spheroidal wave equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpheroidalForm<T> {
    pub lambda_p: T,
    pub mu: i64,
    pub gamma2: T,
}

pub fn to_spheroidal_form<T: Scalar>(qp: &QuantumParams<T>, which: Which) -> SpheroidalForm<T> {
    SpheroidalForm {
        lambda_p: qp.g,
        mu: qp.ell,
        gamma2: match which {
            Which::Minus => qp.q_prime,
            Which::Plus => -qp.cal_e,
        },
    }
}

/// Left side of the radial equation in `t`.
pub fn ode_residual_plus<T: Scalar>(t: T, psi: T, dpsi: T, d2psi: T, qp: &QuantumParams<T>) -> T {
    let l = qp.ell_t();
    let s = t * t + T::one();
    s * d2psi + (t + t) * dpsi + (l * l / s + qp.cal_e * t * t - qp.cal_e_tilde) * psi
}

/// Left side of the angular equation in `u`.
pub fn ode_residual_minus<T: Scalar>(u: T, psi: T, dpsi: T, d2psi: T, qp: &QuantumParams<T>) -> T {
    let l = qp.ell_t();
    let w = T::one() - u * u;
    let centrifugal = if qp.ell == 0 { T::zero() } else { l * l / w };
    w * d2psi - (u + u) * dpsi + (-centrifugal + qp.cal_e * u * u + qp.q * w + qp.cal_e_tilde) * psi
}

/// Left side of the radial equation in `z = t²`.
pub fn ode_residual_z<T: Scalar>(z: T, psi: T, dpsi: T, d2psi: T, qp: &QuantumParams<T>) -> T {
    let l = qp.ell_t();
    let four = T::lit(4.0);
    four * z * (z + T::one()) * d2psi
        + (T::lit(6.0) * z + T::lit(2.0)) * dpsi
        + (l * l / (z + T::one()) + qp.cal_e * z - qp.cal_e_tilde) * psi
}

/// Left side of the spheroidal wave equation.
pub fn ode_residual_spheroidal<T: Scalar>(z: T, w: T, dw: T, d2w: T, form: &SpheroidalForm<T>) -> T {
    let mu = T::from_i64(form.mu).expect("μ representable");
    let s = T::one() - z * z;
    let centrifugal = if form.mu == 0 { T::zero() } else { mu * mu / s };
    s * d2w - (z + z) * dw + (form.lambda_p - centrifugal + form.gamma2 * s) * w
}
