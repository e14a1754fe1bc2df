//! Hamilton–Jacobi separation in the angle chart.
//!
//! ```text
//! Δ_α(α) = 2m[a² sinh²α E - Ẽ - f(a² sinh²α)] - ℓ² tanh²α
//! Δ_β(β) = 2m[a² sin²β E + Ẽ + g(-a² sin²β)] - ℓ² tan²β
//! ```
//!
//! On a branch `σ = (σ_α, σ_β)` the characteristic function is
//! `F = σ_α ∫ Δ_α^{1/2} dα + σ_β ∫ Δ_β^{1/2} dβ + ℓφ`, with
//! `∂F/∂E = t + const`, `∂F/∂Ẽ = -m C₂`, `∂F/∂ℓ = C₃` where
//!
//! ```text
//! C₂ = σ_α ∫ dα/Δ_α^{1/2} - σ_β ∫ dβ/Δ_β^{1/2}
//! C₃ = φ - ℓ [σ_α ∫ tanh²α dα/Δ_α^{1/2} + σ_β ∫ tan²β dβ/Δ_β^{1/2}]
//! τ  = σ_α ∫ sinh²α dα/Δ_α^{1/2} + σ_β ∫ sin²β dβ/Δ_β^{1/2} - t/(a² m)
//! ```
//!
//! Every integral starts at the origin of the allowed interval: `0` when the interval
//! contains it, else the inner turning point.

use crate::coords::{to_spheroidal, AxisConfig};
use crate::dynamics::{chart_momentum, InvariantTriple, Sign, TrajectorySample};
use crate::error::{Error, Result};
use crate::linalg::Vec3;
use crate::potentials::SeparablePotential;
use crate::quadrature::{integrate_sqrt_endpoints, QuadOptions};
use crate::scalar::{lit, Scalar};

pub fn delta_alpha<T: Scalar>(alpha: T, inv: &InvariantTriple<T>, cfg: &AxisConfig<T>, pot: &SeparablePotential<T>) -> T {
    let sh2 = alpha.sinh().powi(2);
    let two_m = cfg.m() + cfg.m();
    let centrifugal = if inv.ell == T::zero() {
        T::zero()
    } else {
        inv.ell * inv.ell * alpha.tanh().powi(2)
    };
    two_m * (cfg.a2() * sh2 * inv.e - inv.e_tilde - pot.f(cfg.a2() * sh2)) - centrifugal
}

/// `Δ_β`; `-∞` on the axis (`|cos β|` below machine epsilon) when `ℓ ≠ 0`.
pub fn delta_beta<T: Scalar>(beta: T, inv: &InvariantTriple<T>, cfg: &AxisConfig<T>, pot: &SeparablePotential<T>) -> T {
    let s2 = beta.sin().powi(2);
    let c2 = beta.cos().powi(2);
    let two_m = cfg.m() + cfg.m();
    let centrifugal = if inv.ell == T::zero() {
        T::zero()
    } else if c2 <= T::epsilon() * T::epsilon() {
        return T::neg_infinity();
    } else {
        inv.ell * inv.ell * s2 / c2
    };
    two_m * (cfg.a2() * s2 * inv.e + inv.e_tilde + pot.g(-cfg.a2() * s2)) - centrifugal
}

pub fn delta_alpha_derivative<T: Scalar>(
    alpha: T,
    inv: &InvariantTriple<T>,
    cfg: &AxisConfig<T>,
    pot: &SeparablePotential<T>,
) -> T {
    let (sh, ch) = (alpha.sinh(), alpha.cosh());
    let two_m = cfg.m() + cfg.m();
    let two = lit::<T>(2.0);
    let centrifugal = if inv.ell == T::zero() {
        T::zero()
    } else {
        two * inv.ell * inv.ell * alpha.tanh() / (ch * ch)
    };
    two_m * two * cfg.a2() * sh * ch * (inv.e - pot.df(cfg.a2() * sh * sh)) - centrifugal
}

pub fn delta_beta_derivative<T: Scalar>(
    beta: T,
    inv: &InvariantTriple<T>,
    cfg: &AxisConfig<T>,
    pot: &SeparablePotential<T>,
) -> T {
    let (s, c) = (beta.sin(), beta.cos());
    let two_m = cfg.m() + cfg.m();
    let two = lit::<T>(2.0);
    let centrifugal = if inv.ell == T::zero() {
        T::zero()
    } else {
        two * inv.ell * inv.ell * s / (c * c * c)
    };
    two_m * two * cfg.a2() * s * c * (inv.e - pot.dg(-cfg.a2() * s * s)) - centrifugal
}

/// Magnitude used to decide when a slightly negative `Δ` is rounding noise.
pub fn delta_scale<T: Scalar>(inv: &InvariantTriple<T>, cfg: &AxisConfig<T>) -> T {
    let two_m = cfg.m() + cfg.m();
    T::one() + two_m * (cfg.a2() * inv.e.abs() + inv.e_tilde.abs()) + inv.ell * inv.ell
}

/// Branch of the characteristic function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Branch {
    pub sigma_alpha: Sign,
    pub sigma_beta: Sign,
}

impl Branch {
    pub const ALL: [Branch; 4] = [
        Branch { sigma_alpha: Sign::Plus, sigma_beta: Sign::Plus },
        Branch { sigma_alpha: Sign::Plus, sigma_beta: Sign::Minus },
        Branch { sigma_alpha: Sign::Minus, sigma_beta: Sign::Plus },
        Branch { sigma_alpha: Sign::Minus, sigma_beta: Sign::Minus },
    ];

    pub fn positive() -> Self {
        Branch::ALL[0]
    }

    pub fn of_sample<T: Scalar>(s: &TrajectorySample<T>) -> Self {
        Branch {
            sigma_alpha: Sign::of(s.p_alpha),
            sigma_beta: Sign::of(s.p_beta),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConstants<T> {
    pub c2: T,
    pub c3: T,
    /// `σ_α ∫ sinh²α/Δ_α^{1/2} + σ_β ∫ sin²β/Δ_β^{1/2} - t/(a²m)`
    pub time_integral: T,
    /// Largest magnitude among the terms summed into each constant.
    pub scale: T,
}

fn tight<T: Scalar>() -> QuadOptions<T> {
    QuadOptions {
        abs_tol: lit(1e-13),
        rel_tol: lit(1e-13),
        max_intervals: 300,
    }
}

fn relaxed<T: Scalar>() -> QuadOptions<T> {
    QuadOptions {
        abs_tol: lit(1e-10),
        rel_tol: lit(1e-10),
        max_intervals: 4000,
    }
}

/// Origin of the allowed interval containing `x`: `0` if `Δ(0) > 0` and no zero of `Δ`
/// separates it from `x`, else the nearest zero between `0` and `x`.
fn interval_origin<T: Scalar>(delta: impl Fn(T) -> T, x: T) -> T {
    if x == T::zero() {
        return T::zero();
    }
    let steps = 400;
    let mut hi = x;
    for k in 1..=steps {
        let y = x * T::from_usize_lossy(steps - k) / T::from_usize_lossy(steps);
        if !(delta(y) >= T::zero()) {
            let mut lo = y;
            for _ in 0..200 {
                let mid = (lo + hi) * lit(0.5);
                if mid == lo || mid == hi {
                    break;
                }
                if delta(mid) >= T::zero() {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return hi;
        }
        hi = y;
    }
    T::zero()
}

fn require_allowed<T: Scalar>(value: T, scale: T, which: &'static str) -> Result<()> {
    if value >= -lit::<T>(1e-9) * scale {
        Ok(())
    } else {
        Err(Error::ForbiddenRegion {
            which,
            value: value.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// `∫_origin^x w(y) Δ(y)^{±1/2} dy` with the square-root substitution at both ends.
fn delta_integral<T: Scalar>(
    delta: &impl Fn(T) -> T,
    weight: impl Fn(T) -> T,
    origin: T,
    x: T,
    inverse: bool,
) -> Result<T> {
    let integrand = |y: T| {
        let d = delta(y);
        if !(d > T::zero()) {
            return T::zero();
        }
        if inverse {
            weight(y) / d.sqrt()
        } else {
            weight(y) * d.sqrt()
        }
    };
    match integrate_sqrt_endpoints(integrand, origin, x, &tight()) {
        Ok(r) => Ok(r.value),
        // Rounding noise in Δ next to a turning point caps the attainable accuracy.
        Err(Error::QuadratureFailure(_)) => Ok(integrate_sqrt_endpoints(integrand, origin, x, &relaxed())?.value),
        Err(e) => Err(e),
    }
}

/// Branch-aware separated integrals at one chart point.
pub struct SeparatedIntegrals<'a, T: Scalar> {
    pub inv: InvariantTriple<T>,
    cfg: &'a AxisConfig<T>,
    pot: &'a SeparablePotential<T>,
}

impl<'a, T: Scalar> SeparatedIntegrals<'a, T> {
    pub fn new(inv: InvariantTriple<T>, cfg: &'a AxisConfig<T>, pot: &'a SeparablePotential<T>) -> Self {
        SeparatedIntegrals { inv, cfg, pot }
    }

    fn da(&self) -> impl Fn(T) -> T + '_ {
        move |y| delta_alpha(y, &self.inv, self.cfg, self.pot)
    }

    fn db(&self) -> impl Fn(T) -> T + '_ {
        move |y| delta_beta(y, &self.inv, self.cfg, self.pot)
    }

    fn check(&self, alpha: T, beta: T) -> Result<()> {
        let scale = delta_scale(&self.inv, self.cfg);
        require_allowed(delta_alpha(alpha, &self.inv, self.cfg, self.pot), scale, "Δ_α")?;
        require_allowed(delta_beta(beta, &self.inv, self.cfg, self.pot), scale, "Δ_β")
    }

    pub fn alpha_origin(&self, alpha: T) -> T {
        interval_origin(self.da(), alpha)
    }

    pub fn beta_origin(&self, beta: T) -> T {
        interval_origin(self.db(), beta)
    }

    /// `A(α) = ∫ Δ_α^{1/2} dα`
    pub fn a_integral(&self, alpha: T) -> Result<T> {
        delta_integral(&self.da(), |_| T::one(), self.alpha_origin(alpha), alpha, false)
    }

    /// `B(β) = ∫ Δ_β^{1/2} dβ`
    pub fn b_integral(&self, beta: T) -> Result<T> {
        delta_integral(&self.db(), |_| T::one(), self.beta_origin(beta), beta, false)
    }

    pub fn characteristic(&self, alpha: T, beta: T, phi: T, branch: Branch) -> Result<T> {
        self.check(alpha, beta)?;
        Ok(branch.sigma_alpha.value::<T>() * self.a_integral(alpha)?
            + branch.sigma_beta.value::<T>() * self.b_integral(beta)?
            + self.inv.ell * phi)
    }

    pub fn constants(&self, alpha: T, beta: T, phi: T, t: T, branch: Branch) -> Result<QuadratureConstants<T>> {
        self.check(alpha, beta)?;
        let (sa, sb) = (branch.sigma_alpha.value::<T>(), branch.sigma_beta.value::<T>());
        let (da, db) = (self.da(), self.db());
        let (oa, ob) = (self.alpha_origin(alpha), self.beta_origin(beta));
        let ia = delta_integral(&da, |_| T::one(), oa, alpha, true)?;
        let ib = delta_integral(&db, |_| T::one(), ob, beta, true)?;
        let ka = delta_integral(&da, |y: T| y.tanh().powi(2), oa, alpha, true)?;
        let kb = delta_integral(&db, |y: T| y.tan().powi(2), ob, beta, true)?;
        let ja = delta_integral(&da, |y: T| y.sinh().powi(2), oa, alpha, true)?;
        let jb = delta_integral(&db, |y: T| y.sin().powi(2), ob, beta, true)?;
        let ell = self.inv.ell;
        let t_term = t / (self.cfg.a2() * self.cfg.m());
        let scale = [ia, ib, ell * ka, ell * kb, ja, jb, t_term, phi]
            .iter()
            .fold(T::zero(), |m, v| m.max(v.abs()));
        Ok(QuadratureConstants {
            c2: sa * ia - sb * ib,
            c3: phi - ell * (sa * ka + sb * kb),
            time_integral: sa * ja + sb * jb - t_term,
            scale,
        })
    }
}

/// `F(α, β, φ)` on the given branch.
pub fn hj_eval<T: Scalar>(
    alpha: T,
    beta: T,
    phi: T,
    branch: Branch,
    inv: &InvariantTriple<T>,
    cfg: &AxisConfig<T>,
    pot: &SeparablePotential<T>,
) -> Result<T> {
    SeparatedIntegrals::new(*inv, cfg, pot).characteristic(alpha, beta, phi, branch)
}

/// `(∂F/∂E, ∂F/∂Ẽ, ∂F/∂ℓ)` by central differences with relative step `1e-5`.
pub fn hj_parameter_derivatives<T: Scalar>(
    alpha: T,
    beta: T,
    phi: T,
    branch: Branch,
    inv: &InvariantTriple<T>,
    cfg: &AxisConfig<T>,
    pot: &SeparablePotential<T>,
) -> Result<InvariantTriple<T>> {
    let rel = lit::<T>(1e-5);
    let step = |v: T| if v == T::zero() { rel } else { rel * v.abs() };
    let eval = |i: InvariantTriple<T>| hj_eval(alpha, beta, phi, branch, &i, cfg, pot);
    let diff = |plus: InvariantTriple<T>, minus: InvariantTriple<T>, h: T| -> Result<T> {
        Ok((eval(plus)? - eval(minus)?) / (h + h))
    };
    let (he, het, hl) = (step(inv.e), step(inv.e_tilde), step(inv.ell));
    Ok(InvariantTriple {
        e: diff(
            InvariantTriple { e: inv.e + he, ..*inv },
            InvariantTriple { e: inv.e - he, ..*inv },
            he,
        )?,
        e_tilde: diff(
            InvariantTriple { e_tilde: inv.e_tilde + het, ..*inv },
            InvariantTriple { e_tilde: inv.e_tilde - het, ..*inv },
            het,
        )?,
        ell: diff(
            InvariantTriple { ell: inv.ell + hl, ..*inv },
            InvariantTriple { ell: inv.ell - hl, ..*inv },
            hl,
        )?,
    })
}

/// Quadrature constants at every sample of a single-branch segment. The azimuth is
/// unwrapped along the segment so that `C₃` does not jump by `2π`.
pub fn quadrature_constants<T: Scalar>(
    segment: &[TrajectorySample<T>],
    inv: &InvariantTriple<T>,
    cfg: &AxisConfig<T>,
    pot: &SeparablePotential<T>,
) -> Result<Vec<QuadratureConstants<T>>> {
    let ints = SeparatedIntegrals::new(*inv, cfg, pot);
    let mut prev: Option<T> = None;
    segment
        .iter()
        .map(|s| {
            let phi = match prev {
                Some(p) => p + wrap_angle(s.chart.phi - p),
                None => s.chart.phi,
            };
            prev = Some(phi);
            ints.constants(s.chart.alpha, s.chart.beta, phi, s.t, Branch::of_sample(s))
        })
        .collect()
}

/// `d` reduced to `(-π, π]`.
fn wrap_angle<T: Scalar>(d: T) -> T {
    let tau = T::TAU();
    let r = d - tau * (d / tau).round();
    if r <= -T::PI() {
        r + tau
    } else {
        r
    }
}

/// Splits a record's samples into maximal runs with constant branch signs, dropping
/// samples closer than `guard` in time to a turning event.
pub fn single_branch_segments<T: Scalar>(samples: &[TrajectorySample<T>], guard: T) -> Vec<Vec<TrajectorySample<T>>> {
    let mut out: Vec<Vec<TrajectorySample<T>>> = Vec::new();
    let mut current: Vec<TrajectorySample<T>> = Vec::new();
    let mut branch: Option<Branch> = None;
    for s in samples {
        let b = Branch::of_sample(s);
        if branch != Some(b) && !current.is_empty() {
            out.push(std::mem::take(&mut current));
        }
        branch = Some(b);
        current.push(*s);
    }
    if !current.is_empty() {
        out.push(current);
    }
    out.into_iter()
        .map(|seg| {
            let (t0, t1) = (seg[0].t, seg[seg.len() - 1].t);
            seg.into_iter().filter(|s| s.t - t0 >= guard && t1 - s.t >= guard).collect::<Vec<_>>()
        })
        .filter(|seg| !seg.is_empty())
        .collect()
}

/// Momentum `∇F` at `x` on the given branch.
pub fn momentum_from_hj<T: Scalar>(
    x: &Vec3<T>,
    branch: Branch,
    inv: &InvariantTriple<T>,
    cfg: &AxisConfig<T>,
    pot: &SeparablePotential<T>,
) -> Result<Vec3<T>> {
    let pt = to_spheroidal(x, cfg)?;
    let scale = delta_scale(inv, cfg);
    let da = delta_alpha(pt.alpha, inv, cfg, pot);
    let db = delta_beta(pt.beta, inv, cfg, pot);
    require_allowed(da, scale, "Δ_α")?;
    require_allowed(db, scale, "Δ_β")?;
    let pa = branch.sigma_alpha.value::<T>() * da.max(T::zero()).sqrt();
    let pb = branch.sigma_beta.value::<T>() * db.max(T::zero()).sqrt();
    Ok(chart_momentum(pt.alpha, pt.beta, pt.phi, pa, pb, inv.ell, cfg))
}
