//! The two-function family of potential pairs `(U, Φ)` compatible with a
//! quadratic second invariant.
//!
//! For arbitrary one-variable functions `f(λ₊)` and `g(λ₋)`
//!
//! ```text
//! U = (f(λ₊) - g(λ₋)) / (λ₊ - λ₋)
//! Φ = (λ₋ f(λ₊) - λ₊ g(λ₋)) / (λ₊ - λ₋)
//! ```
//!
//! so that `Φ - λ₊U = -f(λ₊)` and `Φ - λ₋U = -g(λ₋)`. The separated equations of motion
//! use the opposite sign (`Φ - a² sinh²α U = -f`, `Φ + a² sin²β U = -g` with the functions
//! above), which only flips the sign in front of `f`, `g` there.
//!
//! The Coulomb-like member stores `f = 0`, `g(λ) = Q(λ + a²)`, which reproduces
//! `U = -Q(λ₋ + a²)/(λ₊ - λ₋)` and `Φ = -Q λ₊(λ₋ + a²)/(λ₊ - λ₋)`.

use std::fmt;
use std::sync::Arc;

use crate::coords::{lambda_gradients, metric, to_spheroidal, AxisConfig, SpheroidalPoint};
use crate::diff;
use crate::error::{Error, Result};
use crate::linalg::Vec3;
use crate::scalar::{lit, Scalar};

pub type ScalarFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// Named members of the family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family<T> {
    General,
    CoulombLike { q: T },
}

/// A potential pair generated by `(f, g)`.
#[derive(Clone)]
pub struct SeparablePotential<T> {
    f: ScalarFn<T>,
    g: ScalarFn<T>,
    df: Option<ScalarFn<T>>,
    dg: Option<ScalarFn<T>>,
    family: Family<T>,
}

impl<T: Scalar> fmt::Debug for SeparablePotential<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeparablePotential")
            .field("family", &self.family)
            .field("analytic_derivatives", &(self.df.is_some() && self.dg.is_some()))
            .finish()
    }
}

fn poly_eval<T: Scalar>(coeffs: &[T], x: T) -> T {
    coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * x + c)
}

fn poly_derivative<T: Scalar>(coeffs: &[T]) -> Vec<T> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * T::from_usize_lossy(k))
        .collect()
}

impl<T: Scalar> SeparablePotential<T> {
    /// Arbitrary `(f, g)` without analytic derivatives; derivatives fall back to
    /// central differences.
    pub fn general(f: impl Fn(T) -> T + Send + Sync + 'static, g: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        SeparablePotential {
            f: Arc::new(f),
            g: Arc::new(g),
            df: None,
            dg: None,
            family: Family::General,
        }
    }

    /// Attaches analytic derivatives `f'`, `g'`.
    pub fn with_derivatives(
        mut self,
        df: impl Fn(T) -> T + Send + Sync + 'static,
        dg: impl Fn(T) -> T + Send + Sync + 'static,
    ) -> Self {
        self.df = Some(Arc::new(df));
        self.dg = Some(Arc::new(dg));
        self
    }

    /// `f = g = 0`.
    pub fn free() -> Self {
        Self::general(|_| T::zero(), |_| T::zero()).with_derivatives(|_| T::zero(), |_| T::zero())
    }

    /// `f = 0`, `g(λ) = Q(λ + a²)`.
    pub fn coulomb_like(q: T, a: T) -> Self {
        let a2 = a * a;
        let mut pot = Self::general(|_| T::zero(), move |l| q * (l + a2)).with_derivatives(|_| T::zero(), move |_| q);
        pot.family = Family::CoulombLike { q };
        pot
    }

    /// Polynomials `f(λ) = Σ fₖ λᵏ`, `g(λ) = Σ gₖ λᵏ` (coefficients in ascending order).
    pub fn polynomial(f_coeffs: Vec<T>, g_coeffs: Vec<T>) -> Self {
        let df_coeffs = poly_derivative(&f_coeffs);
        let dg_coeffs = poly_derivative(&g_coeffs);
        Self::general(move |l| poly_eval(&f_coeffs, l), move |l| poly_eval(&g_coeffs, l))
            .with_derivatives(move |l| poly_eval(&df_coeffs, l), move |l| poly_eval(&dg_coeffs, l))
    }

    pub fn family(&self) -> Family<T> {
        self.family
    }

    pub fn f(&self, lambda_plus: T) -> T {
        (self.f)(lambda_plus)
    }

    pub fn g(&self, lambda_minus: T) -> T {
        (self.g)(lambda_minus)
    }

    fn fd_step(l: T) -> T {
        lit::<T>(1e-6) * l.abs().max(T::one())
    }

    /// `f'(λ₊)`, analytic when supplied.
    pub fn df(&self, lambda_plus: T) -> T {
        match &self.df {
            Some(d) => d(lambda_plus),
            None => diff::central(|l| self.f(l), lambda_plus, Self::fd_step(lambda_plus)),
        }
    }

    /// `g'(λ₋)`, analytic when supplied.
    pub fn dg(&self, lambda_minus: T) -> T {
        match &self.dg {
            Some(d) => d(lambda_minus),
            None => diff::central(|l| self.g(l), lambda_minus, Self::fd_step(lambda_minus)),
        }
    }

    pub fn has_analytic_derivatives(&self) -> bool {
        self.df.is_some() && self.dg.is_some()
    }
}

fn check_separation<T: Scalar>(pt: &SpheroidalPoint<T>, cfg: &AxisConfig<T>) -> Result<T> {
    let sep = pt.separation();
    if sep > cfg.focal_tolerance() {
        Ok(sep)
    } else {
        Err(Error::FocalRingSingularity {
            separation: sep.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// `U` at a chart point.
pub fn eval_u<T: Scalar>(pt: &SpheroidalPoint<T>, pot: &SeparablePotential<T>, cfg: &AxisConfig<T>) -> Result<T> {
    let sep = check_separation(pt, cfg)?;
    Ok(match pot.family {
        Family::CoulombLike { q } => -q * pt.lambda_minus_shifted(cfg.a()) / sep,
        Family::General => (pot.f(pt.lambda_plus) - pot.g(pt.lambda_minus)) / sep,
    })
}

/// `Φ` at a chart point.
pub fn eval_phi<T: Scalar>(pt: &SpheroidalPoint<T>, pot: &SeparablePotential<T>, cfg: &AxisConfig<T>) -> Result<T> {
    let sep = check_separation(pt, cfg)?;
    Ok(match pot.family {
        Family::CoulombLike { q } => -q * pt.lambda_plus * pt.lambda_minus_shifted(cfg.a()) / sep,
        Family::General => {
            (pt.lambda_minus * pot.f(pt.lambda_plus) - pt.lambda_plus * pot.g(pt.lambda_minus)) / sep
        }
    })
}

/// Closed Cartesian form of the Coulomb-like `U`:
/// `-Q/2 · ((x² + a²)/√((x² + a²)² - 4a²(x² - (x·n)²)) - 1)`.
pub fn eval_u_cartesian<T: Scalar>(x: &Vec3<T>, cfg: &AxisConfig<T>, q: T) -> Result<T> {
    let a2 = cfg.a2();
    let (_, perp) = cfg.split(x);
    let sum = x.norm_sq() + a2;
    let disc = sum * sum - lit::<T>(4.0) * a2 * perp.norm_sq();
    if !(disc.max(T::zero()).sqrt() > cfg.focal_tolerance()) {
        return Err(Error::FocalRingSingularity {
            separation: disc.max(T::zero()).sqrt().to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(-q * lit(0.5) * (sum / disc.sqrt() - T::one()))
}

/// Field-level access to a potential pair, implemented by [`SeparablePotential`] and by
/// deliberately corrupted variants used to check that audits discriminate.
pub trait PotentialField<T: Scalar>: Send + Sync {
    fn u(&self, x: &Vec3<T>, cfg: &AxisConfig<T>) -> Result<T>;
    fn phi(&self, x: &Vec3<T>, cfg: &AxisConfig<T>) -> Result<T>;

    /// `∇U`; finite differences unless overridden.
    fn grad_u(&self, x: &Vec3<T>, cfg: &AxisConfig<T>) -> Result<Vec3<T>> {
        diff::try_gradient(|y| self.u(y, cfg), x, lit::<T>(1e-5) * cfg.a())
    }
}

impl<T: Scalar> PotentialField<T> for SeparablePotential<T> {
    fn u(&self, x: &Vec3<T>, cfg: &AxisConfig<T>) -> Result<T> {
        eval_u(&to_spheroidal(x, cfg)?, self, cfg)
    }

    fn phi(&self, x: &Vec3<T>, cfg: &AxisConfig<T>) -> Result<T> {
        eval_phi(&to_spheroidal(x, cfg)?, self, cfg)
    }

    /// `∇U = ∂₊U ∇λ₊ + ∂₋U ∇λ₋` with `∂₊U = (f' - U)/(λ₊ - λ₋)`, `∂₋U = (U - g')/(λ₊ - λ₋)`.
    fn grad_u(&self, x: &Vec3<T>, cfg: &AxisConfig<T>) -> Result<Vec3<T>> {
        if !self.has_analytic_derivatives() {
            return diff::try_gradient(|y| self.u(y, cfg), x, lit::<T>(1e-5) * cfg.a());
        }
        let lg = lambda_gradients(x, cfg)?;
        let pt = lg.point;
        let u = eval_u(&pt, self, cfg)?;
        let sep = pt.separation();
        let du_plus = (self.df(pt.lambda_plus) - u) / sep;
        let du_minus = (u - self.dg(pt.lambda_minus)) / sep;
        Ok(lg.grad_plus * du_plus + lg.grad_minus * du_minus)
    }
}

/// `Φ` multiplied by `1 + ε w(x)` with a fixed seeded field `|w| ≤ 1`; `U` untouched.
#[derive(Clone)]
pub struct CorruptedPhi<T> {
    pub base: SeparablePotential<T>,
    pub epsilon: T,
    waves: [(Vec3<T>, T); 3],
}

impl<T: Scalar> fmt::Debug for CorruptedPhi<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CorruptedPhi")
            .field("base", &self.base)
            .field("epsilon", &self.epsilon)
            .finish()
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn unit_interval(state: &mut u64) -> f64 {
    (splitmix64(state) >> 11) as f64 / (1u64 << 53) as f64
}

impl<T: Scalar> CorruptedPhi<T> {
    /// Fine-grained corruption: wave numbers between `1/ℓ_c` and `2/ℓ_c` with
    /// `ℓ_c = 0.003 a`, directions and phases drawn from `seed`. At this scale the
    /// corruption dominates `∇Φ` pointwise while staying resolved by a `1e-5 a` stencil.
    pub fn new(base: SeparablePotential<T>, epsilon: T, seed: u64, cfg: &AxisConfig<T>) -> Self {
        Self::with_length(base, epsilon, seed, lit::<T>(0.003) * cfg.a())
    }

    /// As [`CorruptedPhi::new`] with wave numbers between `1/length` and `2/length`.
    pub fn with_length(base: SeparablePotential<T>, epsilon: T, seed: u64, length: T) -> Self {
        let mut state = seed;
        let mut waves = [(Vec3::zero(), T::zero()); 3];
        for w in waves.iter_mut() {
            let dir = Vec3::new(
                lit::<T>(unit_interval(&mut state) * 2.0 - 1.0),
                lit::<T>(unit_interval(&mut state) * 2.0 - 1.0),
                lit::<T>(unit_interval(&mut state) * 2.0 - 1.0),
            );
            let dir = if dir.norm() > lit(1e-3) { dir.normalized() } else { Vec3::basis(0) };
            let k = lit::<T>(1.0 + unit_interval(&mut state)) / length;
            let phase = lit::<T>(unit_interval(&mut state) * std::f64::consts::TAU);
            *w = (dir * k, phase);
        }
        CorruptedPhi { base, epsilon, waves }
    }

    fn noise(&self, x: &Vec3<T>) -> T {
        let sum = self.waves.iter().fold(T::zero(), |acc, (k, ph)| acc + (k.dot(x) + *ph).sin());
        sum / lit(3.0)
    }
}

impl<T: Scalar> PotentialField<T> for CorruptedPhi<T> {
    fn u(&self, x: &Vec3<T>, cfg: &AxisConfig<T>) -> Result<T> {
        self.base.u(x, cfg)
    }

    fn phi(&self, x: &Vec3<T>, cfg: &AxisConfig<T>) -> Result<T> {
        Ok(self.base.phi(x, cfg)? * (T::one() + self.epsilon * self.noise(x)))
    }

    fn grad_u(&self, x: &Vec3<T>, cfg: &AxisConfig<T>) -> Result<Vec3<T>> {
        self.base.grad_u(x, cfg)
    }
}

/// Residual of `∇Φ = g ∇U`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvolutionResidual<T> {
    /// `max_i |∇Φ - g∇U|_i`
    pub residual: T,
    pub grad_u_norm: T,
}

impl<T: Scalar> InvolutionResidual<T> {
    /// `residual < tol · (1 + |∇U|)`
    pub fn passes(&self, tol: T) -> bool {
        self.residual < tol * (T::one() + self.grad_u_norm)
    }
}

/// Checks `∂ᵢΦ = g^{ik} ∂ₖU` with Richardson central differences (step `1e-5 a`).
pub fn check_involution<T: Scalar>(
    x: &Vec3<T>,
    cfg: &AxisConfig<T>,
    pot: &impl PotentialField<T>,
) -> Result<InvolutionResidual<T>> {
    let h = lit::<T>(1e-5) * cfg.a();
    let grad_u = diff::try_gradient(|y| pot.u(y, cfg), x, h)?;
    let grad_phi = diff::try_gradient(|y| pot.phi(y, cfg), x, h)?;
    let r = grad_phi - metric(x, cfg).apply(&grad_u);
    Ok(InvolutionResidual {
        residual: r.max_abs(),
        grad_u_norm: grad_u.norm(),
    })
}

/// Rectangle in the half-plane spanned by `e₁` (abscissa) and `n` (ordinate).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneExtent<T> {
    pub x_min: T,
    pub x_max: T,
    pub z_min: T,
    pub z_max: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSample<T> {
    pub x: T,
    pub z: T,
    /// `None` marks points masked near the focal ring.
    pub u: Option<T>,
}

/// Row-major samples (abscissa fastest) of `U` in the meridian plane.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialGrid<T> {
    pub nx: usize,
    pub nz: usize,
    pub samples: Vec<GridSample<T>>,
    pub masked: usize,
}

impl<T: Scalar> PotentialGrid<T> {
    pub fn at(&self, ix: usize, iz: usize) -> &GridSample<T> {
        &self.samples[iz * self.nx + ix]
    }
}

// Measured from the midpoint so that a symmetric range gives exactly mirrored nodes.
fn linspace<T: Scalar>(lo: T, hi: T, n: usize, i: usize) -> T {
    if i == 0 {
        return lo;
    }
    if i + 1 == n {
        return hi;
    }
    let mid = (lo + hi) * lit(0.5);
    let half = (hi - lo) * lit(0.5);
    let k = T::from_usize_lossy(2 * i) - T::from_usize_lossy(n - 1);
    mid + half * k / T::from_usize_lossy(n - 1)
}

pub fn potential_grid<T: Scalar>(
    cfg: &AxisConfig<T>,
    pot: &SeparablePotential<T>,
    extent: PlaneExtent<T>,
    nx: usize,
    nz: usize,
) -> Result<PotentialGrid<T>> {
    if nx < 2 || nz < 2 {
        return Err(Error::InvalidInput("grid resolution must be at least 2 per axis".into()));
    }
    let mut samples = Vec::with_capacity(nx * nz);
    let mut masked = 0;
    for iz in 0..nz {
        let z = linspace(extent.z_min, extent.z_max, nz, iz);
        for ix in 0..nx {
            let x = linspace(extent.x_min, extent.x_max, nx, ix);
            let point = cfg.e1() * x + cfg.n() * z;
            let u = match pot.u(&point, cfg) {
                Ok(u) => Some(u),
                Err(Error::FocalRingSingularity { .. }) => {
                    masked += 1;
                    None
                }
                Err(e) => return Err(e),
            };
            samples.push(GridSample { x, z, u });
        }
    }
    Ok(PotentialGrid { nx, nz, samples, masked })
}
