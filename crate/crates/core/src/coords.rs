//! Oblate-spheroidal charts about a symmetry axis `n`.
//!
//! Two equivalent descriptions of a point are carried side by side:
//!
//! * the eigenvalues `λ₊ ≥ 0`, `λ₋ ∈ [-a², 0]` of the metric `g(x)` together with the
//!   azimuth `φ`;
//! * the angles `(α, β, φ)` with `λ₊ = a² sinh²α` and `λ₋ = -a² sin²β`.
//!
//! With that parametrisation the Cartesian point is
//!
//! ```text
//! x = a cosh α cos β (cos φ e₁ + sin φ e₂) + a sinh α sin β n
//! ```
//!
//! so the symmetry axis is `cos β = 0`, the equatorial plane is `sin β = 0` outside the
//! focal disk and `α = 0` inside it, and the focal ring `|x| = a, x·n = 0` is `α = β = 0`.
//! The canonical chart returned by [`to_spheroidal`] has `α ≥ 0` and `β ∈ [-π/2, π/2]`
//! with `sign(sin β) = sign(x·n)`.

use crate::error::{Error, Result};
use crate::linalg::{Mat3, Vec3};
use crate::scalar::{lit, Scalar};

/// Symmetry axis, focal scale and particle mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisConfig<T> {
    n: Vec3<T>,
    e1: Vec3<T>,
    e2: Vec3<T>,
    a: T,
    m: T,
}

impl<T: Scalar> AxisConfig<T> {
    /// Builds a configuration; `n` is normalised, `a` and `m` must be positive.
    pub fn new(n: Vec3<T>, a: T, m: T) -> Result<Self> {
        let len = n.norm();
        if !n.is_finite() || len <= T::epsilon() {
            return Err(Error::InvalidInput("axis direction must be a non-zero finite vector".into()));
        }
        if !(a > T::zero() && a.is_finite()) {
            return Err(Error::InvalidInput("focal scale a must be positive".into()));
        }
        if !(m > T::zero() && m.is_finite()) {
            return Err(Error::InvalidInput("mass m must be positive".into()));
        }
        let n = n / len;
        let (e1, e2) = transverse_frame(&n);
        Ok(AxisConfig { n, e1, e2, a, m })
    }

    /// Axis along `ẑ`.
    pub fn z_axis(a: T, m: T) -> Result<Self> {
        Self::new(Vec3::basis(2), a, m)
    }

    pub fn n(&self) -> Vec3<T> {
        self.n
    }
    pub fn e1(&self) -> Vec3<T> {
        self.e1
    }
    pub fn e2(&self) -> Vec3<T> {
        self.e2
    }
    pub fn a(&self) -> T {
        self.a
    }
    pub fn a2(&self) -> T {
        self.a * self.a
    }
    pub fn m(&self) -> T {
        self.m
    }

    /// Minimum admissible separation `λ₊ - λ₋`; closer to the focal ring the chart
    /// and the potentials are treated as singular.
    pub fn focal_tolerance(&self) -> T {
        lit::<T>(1e-10).max(T::epsilon() * lit(1e3)) * self.a2()
    }

    /// Splits `x` into its axial coordinate `x·n` and transverse part.
    pub fn split(&self, x: &Vec3<T>) -> (T, Vec3<T>) {
        let s = x.dot(&self.n);
        (s, *x - self.n * s)
    }
}

/// `e₁` is the normalised projection of the standard basis vector least aligned with
/// `n` (lowest index on ties); `e₂ = n × e₁`.
fn transverse_frame<T: Scalar>(n: &Vec3<T>) -> (Vec3<T>, Vec3<T>) {
    let mut best = 0;
    for i in 1..3 {
        if n[i].abs() < n[best].abs() {
            best = i;
        }
    }
    let h = Vec3::basis(best);
    let e1 = (h - *n * h.dot(n)).normalized();
    let e2 = n.cross(&e1);
    (e1, e2)
}

/// Cartesian position and momentum.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PhaseState<T> {
    pub x: Vec3<T>,
    pub p: Vec3<T>,
}

impl<T: Scalar> PhaseState<T> {
    pub fn new(x: Vec3<T>, p: Vec3<T>) -> Self {
        PhaseState { x, p }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.p.is_finite()
    }

    /// Flat `[x₁, x₂, x₃, p₁, p₂, p₃]` layout used by the integrators.
    pub fn to_array(&self) -> [T; 6] {
        let (x, p) = (self.x.0, self.p.0);
        [x[0], x[1], x[2], p[0], p[1], p[2]]
    }

    pub fn from_array(y: &[T; 6]) -> Self {
        PhaseState {
            x: Vec3([y[0], y[1], y[2]]),
            p: Vec3([y[3], y[4], y[5]]),
        }
    }
}

/// A point in both spheroidal charts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpheroidalPoint<T> {
    pub lambda_plus: T,
    pub lambda_minus: T,
    pub phi: T,
    pub alpha: T,
    pub beta: T,
}

impl<T: Scalar> SpheroidalPoint<T> {
    /// Point from angles; the λ values follow from `λ₊ = a² sinh²α`, `λ₋ = -a² sin²β`.
    pub fn from_angles(alpha: T, beta: T, phi: T, a: T) -> Self {
        let a2 = a * a;
        SpheroidalPoint {
            lambda_plus: a2 * alpha.sinh().powi(2),
            lambda_minus: -a2 * beta.sin().powi(2),
            phi,
            alpha,
            beta,
        }
    }

    /// `λ₊ - λ₋ = a²(sinh²α + sin²β)`.
    pub fn separation(&self) -> T {
        self.lambda_plus - self.lambda_minus
    }

    /// `λ₋ + a² = a² cos²β`, evaluated without cancellation.
    pub fn lambda_minus_shifted(&self, a: T) -> T {
        let c = a * self.beta.cos();
        c * c
    }

    /// `λ₊ + a² = a² cosh²α`.
    pub fn lambda_plus_shifted(&self, a: T) -> T {
        let c = a * self.alpha.cosh();
        c * c
    }
}

/// Canonical chart of `x`: `α ≥ 0`, `β ∈ [-π/2, π/2]`, `φ ∈ [0, 2π)` (zero on the axis).
pub fn to_spheroidal<T: Scalar>(x: &Vec3<T>, cfg: &AxisConfig<T>) -> Result<SpheroidalPoint<T>> {
    let a = cfg.a();
    let a2 = cfg.a2();
    let (s, perp) = cfg.split(x);
    let rho = perp.norm();
    let half = (x.norm_sq() - a2) * lit(0.5);
    let disc = half.hypot(a * s);
    let sep = disc + disc;
    if !(sep >= cfg.focal_tolerance()) {
        return Err(Error::FocalRingSingularity {
            separation: sep.to_f64().unwrap_or(f64::NAN),
        });
    }
    // λ₊λ₋ = -a² s²: take the root without cancellation, recover the other from the product.
    let (lp, lm) = if half >= T::zero() {
        let lp = half + disc;
        (lp, -(a * s) * (a * s) / lp)
    } else {
        let lm = half - disc;
        (-(a * s) * (a * s) / lm, lm)
    };
    let lp = lp.max(T::zero());
    let lm = lm.min(T::zero()).max(-a2);

    let alpha = (lp.sqrt() / a).asinh();
    let sin_part = if s < T::zero() { -(-lm).sqrt() } else { (-lm).sqrt() };
    let cos_part = a * rho / (lp + a2).sqrt();
    let beta = sin_part.atan2(cos_part);

    let on_axis = rho <= T::epsilon() * x.norm();
    let phi = if on_axis {
        T::zero()
    } else {
        let raw = x.dot(&cfg.e2()).atan2(x.dot(&cfg.e1()));
        if raw < T::zero() {
            raw + T::TAU()
        } else {
            raw
        }
    };
    Ok(SpheroidalPoint {
        lambda_plus: lp,
        lambda_minus: lm,
        phi,
        alpha,
        beta,
    })
}

/// Cartesian point from the angle chart. Accepts any real `(α, β)`; the pairs `(α, β)`
/// and `(-α, -β)` describe the same point.
pub fn from_spheroidal<T: Scalar>(pt: &SpheroidalPoint<T>, cfg: &AxisConfig<T>) -> Vec3<T> {
    from_angles(pt.alpha, pt.beta, pt.phi, cfg)
}

pub fn from_angles<T: Scalar>(alpha: T, beta: T, phi: T, cfg: &AxisConfig<T>) -> Vec3<T> {
    let a = cfg.a();
    let radial = cfg.e1() * phi.cos() + cfg.e2() * phi.sin();
    radial * (a * alpha.cosh() * beta.cos()) + cfg.n() * (a * alpha.sinh() * beta.sin())
}

/// Tangent vectors `(∂x/∂α, ∂x/∂β, ∂x/∂φ)` of the angle chart.
pub fn chart_tangents<T: Scalar>(alpha: T, beta: T, phi: T, cfg: &AxisConfig<T>) -> [Vec3<T>; 3] {
    let a = cfg.a();
    let (sa, ca) = (alpha.sinh(), alpha.cosh());
    let (sb, cb) = beta.sin_cos();
    let radial = cfg.e1() * phi.cos() + cfg.e2() * phi.sin();
    let azimuthal = cfg.e2() * phi.cos() - cfg.e1() * phi.sin();
    let n = cfg.n();
    [
        radial * (a * sa * cb) + n * (a * ca * sb),
        radial * (-a * ca * sb) + n * (a * sa * cb),
        azimuthal * (a * ca * cb),
    ]
}

/// The metric `g^{ik}(x)` of the quadratic invariant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricTensor<T> {
    pub entries: Mat3<T>,
}

impl<T: Scalar> MetricTensor<T> {
    /// `pᵀ g p`
    pub fn quad(&self, p: &Vec3<T>) -> T {
        self.entries.quad(p, p)
    }

    pub fn apply(&self, v: &Vec3<T>) -> Vec3<T> {
        self.entries.mul_vec(v)
    }
}

/// `g^{ik} = δ^{ik}(x·n)² - (x·n)(x_i n_k + x_k n_i) + (x² - a²) n_i n_k`.
pub fn metric<T: Scalar>(x: &Vec3<T>, cfg: &AxisConfig<T>) -> MetricTensor<T> {
    let n = cfg.n();
    let s = x.dot(&n);
    let cross = Mat3::outer(x, &n) + Mat3::outer(&n, x);
    let entries = Mat3::identity().scale(s * s) - cross.scale(s)
        + Mat3::outer(&n, &n).scale(x.norm_sq() - cfg.a2());
    MetricTensor { entries }
}

/// Eigenvalues of `g(x)` and the gradient fields that diagonalise it.
///
/// Note the cross pairing: `v_plus = ∇λ₋` has eigenvalue `λ₊` and `v_minus = ∇λ₊`
/// has eigenvalue `λ₋`. `v_zero = ∇φ = (n × x)/ρ²` has eigenvalue `λ₀ = (x·n)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricEigensystem<T> {
    pub lambda_plus: T,
    pub lambda_minus: T,
    pub lambda_zero: T,
    pub v_plus: Vec3<T>,
    pub v_minus: Vec3<T>,
    pub v_zero: Vec3<T>,
}

/// `λ±` and their analytic gradients
/// `∇λ₊ = (λ₊ x + a² s n)/D`, `∇λ₋ = -(λ₋ x + a² s n)/D` with `D = (λ₊ - λ₋)/2`, `s = x·n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambdaGradients<T> {
    pub point: SpheroidalPoint<T>,
    pub grad_plus: Vec3<T>,
    pub grad_minus: Vec3<T>,
}

pub fn lambda_gradients<T: Scalar>(x: &Vec3<T>, cfg: &AxisConfig<T>) -> Result<LambdaGradients<T>> {
    let point = to_spheroidal(x, cfg)?;
    let n = cfg.n();
    let (s, perp) = cfg.split(x);
    let half_sep = point.separation() * lit(0.5);
    // λx + a²s n = λ x⊥ + (λ + a²) s n, with λ + a² taken from the angles.
    let a = cfg.a();
    Ok(LambdaGradients {
        point,
        grad_plus: (perp * point.lambda_plus + n * (point.lambda_plus_shifted(a) * s)) / half_sep,
        grad_minus: -(perp * point.lambda_minus + n * (point.lambda_minus_shifted(a) * s)) / half_sep,
    })
}

pub fn metric_eigensystem<T: Scalar>(x: &Vec3<T>, cfg: &AxisConfig<T>) -> Result<MetricEigensystem<T>> {
    let grads = lambda_gradients(x, cfg)?;
    let (s, perp) = cfg.split(x);
    let rho2 = perp.norm_sq();
    if rho2 <= T::epsilon() * T::epsilon() * x.norm_sq().max(cfg.a2()) {
        return Err(Error::AxisSingularity);
    }
    Ok(MetricEigensystem {
        lambda_plus: grads.point.lambda_plus,
        lambda_minus: grads.point.lambda_minus,
        lambda_zero: s * s,
        v_plus: grads.grad_minus,
        v_minus: grads.grad_plus,
        v_zero: cfg.n().cross(x) / rho2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> AxisConfig<f64> {
        AxisConfig::z_axis(1.0, 1.0).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn on_axis_point() {
        let pt = to_spheroidal(&Vec3::new(0.0, 0.0, 2.0), &cfg()).unwrap();
        assert!(close(pt.lambda_plus, 4.0, 1e-14));
        assert!(close(pt.lambda_minus, -1.0, 1e-14));
        assert_eq!(pt.phi, 0.0);
    }

    #[test]
    fn equatorial_exterior_point() {
        let pt = to_spheroidal(&Vec3::new(2.0, 0.0, 0.0), &cfg()).unwrap();
        assert!(close(pt.lambda_plus, 3.0, 1e-14));
        assert_eq!(pt.lambda_minus, 0.0);
        assert_eq!(pt.phi, 0.0);
        assert_eq!(pt.beta, 0.0);
    }

    #[test]
    fn equatorial_interior_point() {
        let pt = to_spheroidal(&Vec3::new(0.5, 0.0, 0.0), &cfg()).unwrap();
        assert_eq!(pt.lambda_plus, 0.0);
        assert!(close(pt.lambda_minus, -0.75, 1e-14));
        assert_eq!(pt.alpha, 0.0);
    }

    #[test]
    fn focal_ring_is_rejected() {
        let err = to_spheroidal(&Vec3::new(0.0, 1.0, 0.0), &cfg()).unwrap_err();
        assert!(matches!(err, Error::FocalRingSingularity { .. }));
    }

    #[test]
    fn angle_chart_special_points() {
        let c = cfg();
        let ring = from_angles(0.0, 0.0, 0.0, &c);
        assert!((ring - Vec3::new(1.0, 0.0, 0.0)).max_abs() < 1e-15);
        let top = from_angles(1f64.asinh(), std::f64::consts::FRAC_PI_2, 0.0, &c);
        assert!((top - Vec3::new(0.0, 0.0, 1.0)).max_abs() < 1e-15);
        let origin = from_angles(0.0, std::f64::consts::FRAC_PI_2, 0.0, &c);
        assert!(origin.max_abs() < 1e-15);
    }

    #[test]
    fn sign_of_beta_follows_axial_coordinate() {
        let c = cfg();
        let up = to_spheroidal(&Vec3::new(0.7, 0.2, 0.4), &c).unwrap();
        let down = to_spheroidal(&Vec3::new(0.7, 0.2, -0.4), &c).unwrap();
        assert!(up.beta > 0.0 && down.beta < 0.0);
        assert!(close(up.beta, -down.beta, 1e-15));
    }

    #[test]
    fn frame_is_right_handed_for_tilted_axis() {
        let c = AxisConfig::new(Vec3::new(1.0f64, 2.0, -0.5), 1.3, 1.0).unwrap();
        let (e1, e2, n) = (c.e1(), c.e2(), c.n());
        assert!(e1.dot(&n).abs() < 1e-15 && e2.dot(&n).abs() < 1e-15);
        assert!((e1.cross(&e2) - n).max_abs() < 1e-15);
    }

    #[test]
    fn metric_quadratic_form_examples() {
        let c = cfg();
        let g = metric(&Vec3::new(1.0, 0.0, 0.0), &c);
        assert_eq!(g.quad(&Vec3::new(0.0, 1.0, 0.0)), 0.0);
        let g = metric(&Vec3::new(0.0, 0.0, 1.0), &c);
        assert_eq!(g.quad(&Vec3::new(0.0, 0.0, 1.0)), -1.0);
    }

    #[test]
    fn eigensystem_residual_and_pairing() {
        let c = AxisConfig::new(Vec3::new(0.3f64, -0.4, 0.8), 1.7, 1.0).unwrap();
        let x = Vec3::new(0.9, 1.1, -0.6);
        let g = metric(&x, &c);
        let es = metric_eigensystem(&x, &c).unwrap();
        for (lam, v) in [
            (es.lambda_plus, es.v_plus),
            (es.lambda_minus, es.v_minus),
            (es.lambda_zero, es.v_zero),
        ] {
            let r = g.apply(&v) - v * lam;
            assert!(r.max_abs() < 1e-12 * (1.0 + v.norm() * lam.abs()));
        }
    }

    #[test]
    fn axis_has_no_azimuthal_eigenvector() {
        assert_eq!(
            metric_eigensystem(&Vec3::new(0.0, 0.0, 3.0), &cfg()).unwrap_err(),
            Error::AxisSingularity
        );
    }

    #[test]
    fn invalid_configs_are_rejected() {
        assert!(AxisConfig::new(Vec3::<f64>::zero(), 1.0, 1.0).is_err());
        assert!(AxisConfig::z_axis(0.0, 1.0).is_err());
        assert!(AxisConfig::z_axis(1.0, -1.0).is_err());
    }

    #[test]
    fn single_precision_round_trip() {
        let c = AxisConfig::<f32>::z_axis(1.0, 1.0).unwrap();
        let x = Vec3::new(0.8f32, -0.3, 1.2);
        let back = from_spheroidal(&to_spheroidal(&x, &c).unwrap(), &c);
        assert!((back - x).max_abs() < 1e-5);
    }
}
