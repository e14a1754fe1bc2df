//! Classical flow of `H = p²/2m + U`, its invariants `H`, `L`, `H̃`, numerical Poisson
//! brackets, and two independent integrators: Cartesian and separated.
//!
//! The separated integrator works in the angle chart `(α, β, φ)`. Along the flow
//! `p_α² = Δ_α(α)` and `p_β² = Δ_β(β)` with `α̇ = p_α/(m a² S)`, `β̇ = p_β/(m a² S)`,
//! `S = sinh²α + sin²β`. In the rescaled time `dt = m a² S dτ` the two angles decouple:
//!
//! ```text
//! dα/dτ = p_α      dp_α/dτ = Δ_α'(α)/2
//! dβ/dτ = p_β      dp_β/dτ = Δ_β'(β)/2
//! dφ/dτ = ℓ (1/cos²β - 1/cosh²α)
//! dt/dτ = m a² S
//! ```
//!
//! which is regular at turning points: the branch signs `σ = sign(p)` flip on their own and
//! the flips are located by bisection on the dense output.

use crate::coords::{chart_tangents, from_angles, metric, to_spheroidal, AxisConfig, PhaseState, SpheroidalPoint};
use crate::error::{Error, Result};
use crate::hj::{delta_alpha, delta_alpha_derivative, delta_beta, delta_beta_derivative, delta_scale};
use crate::linalg::Vec3;
use crate::ode::{self, Control, DenseStep, Tolerances};
use crate::potentials::{PotentialField, SeparablePotential};
use crate::scalar::{lit, sign_of, Scalar};

/// Values of `H`, `H̃` and `L`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct InvariantTriple<T> {
    pub e: T,
    pub e_tilde: T,
    pub ell: T,
}

/// Branch sign of a separated velocity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of<T: Scalar>(v: T) -> Self {
        if v < T::zero() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value<T: Scalar>(self) -> T {
        match self {
            Sign::Plus => T::one(),
            Sign::Minus => -T::one(),
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Position in the angle chart plus the branch signs of `α̇`, `β̇`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparatedState<T> {
    pub alpha: T,
    pub beta: T,
    pub phi: T,
    pub sigma_alpha: Sign,
    pub sigma_beta: Sign,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TurningCoordinate {
    Alpha,
    Beta,
}

/// A zero of `Δ_α` or `Δ_β` crossed by the separated flow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TurningEvent<T> {
    pub t: T,
    pub coordinate: TurningCoordinate,
}

/// One row of a trajectory table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample<T> {
    pub t: T,
    pub x: Vec3<T>,
    pub p: Vec3<T>,
    /// Canonical chart of `x`.
    pub chart: SpheroidalPoint<T>,
    /// `p·∂x/∂α`, `p·∂x/∂β` in the canonical chart.
    pub p_alpha: T,
    pub p_beta: T,
    pub invariants: InvariantTriple<T>,
}

impl<T: Scalar> TrajectorySample<T> {
    pub fn state(&self) -> PhaseState<T> {
        PhaseState::new(self.x, self.p)
    }
}

/// Time-indexed trajectory table.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryRecord<T> {
    pub samples: Vec<TrajectorySample<T>>,
    pub turning_events: Vec<TurningEvent<T>>,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
}

impl<T: Scalar> TrajectoryRecord<T> {
    /// Largest deviation of each invariant from its initial value, relative to
    /// `max(|I₀|, scale)` where `scale` is the magnitude of the terms forming `I₀`.
    pub fn max_relative_drift(&self, cfg: &AxisConfig<T>, pot: &impl PotentialField<T>) -> Result<InvariantTriple<T>> {
        let Some(first) = self.samples.first() else {
            return Ok(InvariantTriple::default());
        };
        let scale = invariant_scales(&first.state(), cfg, pot)?;
        let i0 = first.invariants;
        let denom = |v: T, s: T| v.abs().max(s).max(T::min_positive_value());
        let mut drift: InvariantTriple<T> = InvariantTriple::default();
        for s in &self.samples {
            let i = s.invariants;
            drift.e = drift.e.max((i.e - i0.e).abs() / denom(i0.e, scale.e));
            drift.e_tilde = drift.e_tilde.max((i.e_tilde - i0.e_tilde).abs() / denom(i0.e_tilde, scale.e_tilde));
            drift.ell = drift.ell.max((i.ell - i0.ell).abs() / denom(i0.ell, scale.ell));
        }
        Ok(drift)
    }
}

/// `H = p²/2m + U(x)`
pub fn hamiltonian<T: Scalar>(s: &PhaseState<T>, cfg: &AxisConfig<T>, pot: &impl PotentialField<T>) -> Result<T> {
    Ok(s.p.norm_sq() / (cfg.m() + cfg.m()) + pot.u(&s.x, cfg)?)
}

/// `L = n·(x × p)`
pub fn axial_momentum<T: Scalar>(s: &PhaseState<T>, cfg: &AxisConfig<T>) -> T {
    cfg.n().dot(&s.x.cross(&s.p))
}

/// `H̃ = pᵢ g^{ik} pₖ/2m + Φ(x)`
pub fn second_invariant<T: Scalar>(s: &PhaseState<T>, cfg: &AxisConfig<T>, pot: &impl PotentialField<T>) -> Result<T> {
    Ok(metric(&s.x, cfg).quad(&s.p) / (cfg.m() + cfg.m()) + pot.phi(&s.x, cfg)?)
}

/// The kinetic part of `H̃` in its two forms: `p·g·p/2m` and `(L⊥² - a² p_n²)/2m`.
pub fn second_kinetic_forms<T: Scalar>(s: &PhaseState<T>, cfg: &AxisConfig<T>) -> (T, T) {
    let two_m = cfg.m() + cfg.m();
    let l = s.x.cross(&s.p);
    let ln = l.dot(&cfg.n());
    let l_perp2 = l.norm_sq() - ln * ln;
    let pn = s.p.dot(&cfg.n());
    (metric(&s.x, cfg).quad(&s.p) / two_m, (l_perp2 - cfg.a2() * pn * pn) / two_m)
}

pub fn invariants<T: Scalar>(
    s: &PhaseState<T>,
    cfg: &AxisConfig<T>,
    pot: &impl PotentialField<T>,
) -> Result<InvariantTriple<T>> {
    Ok(InvariantTriple {
        e: hamiltonian(s, cfg, pot)?,
        e_tilde: second_invariant(s, cfg, pot)?,
        ell: axial_momentum(s, cfg),
    })
}

/// Magnitudes of the individual terms of each invariant.
pub fn invariant_scales<T: Scalar>(
    s: &PhaseState<T>,
    cfg: &AxisConfig<T>,
    pot: &impl PotentialField<T>,
) -> Result<InvariantTriple<T>> {
    let two_m = cfg.m() + cfg.m();
    let (kin, _) = second_kinetic_forms(s, cfg);
    Ok(InvariantTriple {
        e: s.p.norm_sq() / two_m + pot.u(&s.x, cfg)?.abs(),
        e_tilde: kin.abs() + pot.phi(&s.x, cfg)?.abs(),
        ell: s.x.norm() * s.p.norm(),
    })
}

/// Numerical Poisson bracket together with the magnitude of the terms it sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket<T> {
    pub value: T,
    /// `Σₖ |∂A/∂pₖ ∂B/∂xₖ| + |∂A/∂xₖ ∂B/∂pₖ|`
    pub scale: T,
}

impl<T: Scalar> Bracket<T> {
    /// `|{A,B}| / scale` (zero when every term vanishes).
    pub fn relative(&self) -> T {
        if self.scale > T::zero() {
            self.value.abs() / self.scale
        } else {
            self.value.abs()
        }
    }
}

fn phase_gradient<T: Scalar>(
    f: &impl Fn(&PhaseState<T>) -> Result<T>,
    s: &PhaseState<T>,
    hx: T,
    hp: T,
) -> Result<[T; 6]> {
    let base = s.to_array();
    let mut out = [T::zero(); 6];
    for (k, slot) in out.iter_mut().enumerate() {
        let h = if k < 3 { hx } else { hp };
        *slot = crate::diff::try_central(
            |d| {
                let mut y = base;
                y[k] = y[k] + d;
                f(&PhaseState::from_array(&y))
            },
            T::zero(),
            h,
        )?;
    }
    Ok(out)
}

/// `{A,B} = ∂A/∂pₖ ∂B/∂xₖ - ∂A/∂xₖ ∂B/∂pₖ` by Richardson central differences with steps
/// `1e-5·x_scale` in position and `1e-5·p_scale` in momentum.
pub fn poisson_bracket<T: Scalar>(
    a: impl Fn(&PhaseState<T>) -> Result<T>,
    b: impl Fn(&PhaseState<T>) -> Result<T>,
    s: &PhaseState<T>,
    x_scale: T,
    p_scale: T,
) -> Result<Bracket<T>> {
    let hx = lit::<T>(1e-5) * x_scale;
    let hp = lit::<T>(1e-5) * p_scale;
    let ga = phase_gradient(&a, s, hx, hp)?;
    let gb = phase_gradient(&b, s, hx, hp)?;
    Ok(bracket_of(&ga, &gb))
}

/// Natural finite-difference scales for a state: `max(|x|, a)` and `|p|` (one when `p = 0`).
pub fn phase_scales<T: Scalar>(s: &PhaseState<T>, cfg: &AxisConfig<T>) -> (T, T) {
    let xs = s.x.norm().max(cfg.a());
    let ps = s.p.norm();
    (xs, if ps > T::zero() { ps } else { T::one() })
}

fn bracket_of<T: Scalar>(ga: &[T; 6], gb: &[T; 6]) -> Bracket<T> {
    let mut value = T::zero();
    let mut scale = T::zero();
    for k in 0..3 {
        let t1 = ga[k + 3] * gb[k];
        let t2 = ga[k] * gb[k + 3];
        value = value + t1 - t2;
        scale = scale + t1.abs() + t2.abs();
    }
    Bracket { value, scale }
}

fn join<T: Scalar>(dx: Vec3<T>, dp: Vec3<T>) -> [T; 6] {
    [dx.0[0], dx.0[1], dx.0[2], dp.0[0], dp.0[1], dp.0[2]]
}

/// `{H, L}`, `{H̃, L}` and `{H, H̃}` at a state. Kinetic gradients are exact:
/// `∂K/∂x = p × L⊥/m`, `∂K/∂p = (L⊥ × x - a² p_n n)/m` for `K = (L⊥² - a² p_n²)/2m`;
/// `∇U` and `∇Φ` come from Richardson differences with step `1e-5·max(|x|, a)`.
pub fn invariant_brackets<T: Scalar>(
    s: &PhaseState<T>,
    cfg: &AxisConfig<T>,
    pot: &impl PotentialField<T>,
) -> Result<[Bracket<T>; 3]> {
    let (xs, _) = phase_scales(s, cfg);
    let h = lit::<T>(1e-3) * xs;
    let m = cfg.m();
    let n = cfg.n();
    let (x, p) = (s.x, s.p);
    let l = x.cross(&p);
    let l_perp = l - n * l.dot(&n);
    let grad_u = crate::diff::try_gradient(|y| pot.u(y, cfg), &x, h)?;
    let grad_phi = crate::diff::try_gradient(|y| pot.phi(y, cfg), &x, h)?;
    let gh = join(grad_u, p / m);
    let gk = join(p.cross(&l_perp) / m + grad_phi, (l_perp.cross(&x) - n * (cfg.a2() * p.dot(&n))) / m);
    let gl = join(p.cross(&n), n.cross(&x));
    Ok([bracket_of(&gh, &gl), bracket_of(&gk, &gl), bracket_of(&gh, &gk)])
}

fn canonical_sample<T: Scalar>(
    t: T,
    x: Vec3<T>,
    p: Vec3<T>,
    cfg: &AxisConfig<T>,
    pot: &impl PotentialField<T>,
) -> Result<TrajectorySample<T>> {
    let chart = to_spheroidal(&x, cfg)?;
    let [ta, tb, _] = chart_tangents(chart.alpha, chart.beta, chart.phi, cfg);
    let s = PhaseState::new(x, p);
    Ok(TrajectorySample {
        t,
        x,
        p,
        chart,
        p_alpha: p.dot(&ta),
        p_beta: p.dot(&tb),
        invariants: invariants(&s, cfg, pot)?,
    })
}

fn singular_at<T: Scalar>(t: T) -> impl Fn(Error) -> Error {
    let tf = t.to_f64().unwrap_or(f64::NAN);
    move |e| match e {
        Error::FocalRingSingularity { .. } => Error::SingularityApproach { t: tf },
        other => other,
    }
}

fn check_times<T: Scalar>(t_final: T, times: &[T]) -> Result<()> {
    if !(t_final > T::zero()) {
        return Err(Error::InvalidInput("final time must be positive".into()));
    }
    if times.windows(2).any(|w| w[1] < w[0]) || times.iter().any(|&t| t < T::zero() || t > t_final) {
        return Err(Error::InvalidInput("sample times must be sorted and inside [0, t_final]".into()));
    }
    Ok(())
}

/// `count` equally spaced sample times covering `[0, t_final]`.
pub fn uniform_times<T: Scalar>(t_final: T, count: usize) -> Vec<T> {
    match count {
        0 => Vec::new(),
        1 => vec![t_final],
        _ => (0..count)
            .map(|i| {
                if i + 1 == count {
                    t_final
                } else {
                    t_final * T::from_usize_lossy(i) / T::from_usize_lossy(count - 1)
                }
            })
            .collect(),
    }
}

/// Integrates `ẋ = p/m`, `ṗ = -∇U` and records the state at `sample_times`.
pub fn integrate_cartesian<T: Scalar>(
    s0: &PhaseState<T>,
    cfg: &AxisConfig<T>,
    pot: &impl PotentialField<T>,
    t_final: T,
    sample_times: &[T],
    tol: T,
) -> Result<TrajectoryRecord<T>> {
    check_times(t_final, sample_times)?;
    if !(tol > T::zero()) || !s0.is_finite() {
        return Err(Error::InvalidInput("tolerance must be positive and the state finite".into()));
    }
    to_spheroidal(&s0.x, cfg).map_err(singular_at(T::zero()))?;

    let m = cfg.m();
    let rhs = |t: T, y: &[T; 6]| -> Result<[T; 6]> {
        let x = Vec3([y[0], y[1], y[2]]);
        let force = pot.grad_u(&x, cfg).map_err(singular_at(t))?;
        Ok([y[3] / m, y[4] / m, y[5] / m, -force[0], -force[1], -force[2]])
    };

    let mut samples = Vec::with_capacity(sample_times.len());
    let mut next = 0;
    while next < sample_times.len() && sample_times[next] <= T::zero() {
        samples.push(canonical_sample(sample_times[next], s0.x, s0.p, cfg, pot)?);
        next += 1;
    }
    let stats = ode::integrate(rhs, T::zero(), s0.to_array(), t_final, &Tolerances::uniform(tol), |step| {
        while next < sample_times.len() && sample_times[next] <= step.t1 {
            let t = sample_times[next];
            let y = step.eval(t);
            let s = PhaseState::from_array(&y);
            samples.push(canonical_sample(t, s.x, s.p, cfg, pot).map_err(singular_at(t))?);
            next += 1;
        }
        Ok(Control::Continue)
    })?;
    Ok(TrajectoryRecord {
        samples,
        turning_events: Vec::new(),
        accepted_steps: stats.accepted,
        rejected_steps: stats.rejected,
    })
}

fn check_delta<T: Scalar>(value: T, scale: T, which: &'static str) -> Result<T> {
    if value >= T::zero() {
        Ok(value)
    } else if value >= -lit::<T>(1e-9) * scale {
        Ok(T::zero())
    } else {
        Err(Error::ForbiddenRegion {
            which,
            value: value.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// `(α̇, β̇, φ̇)` with `α̇ = σ_α Δ_α^{1/2}/(a² m S)`, `β̇ = σ_β Δ_β^{1/2}/(a² m S)`,
/// `φ̇ = ℓ/(m a² cosh²α cos²β)`.
pub fn separated_rhs<T: Scalar>(
    st: &SeparatedState<T>,
    inv: &InvariantTriple<T>,
    cfg: &AxisConfig<T>,
    pot: &SeparablePotential<T>,
) -> Result<(T, T, T)> {
    let scale = delta_scale(inv, cfg);
    let da = check_delta(delta_alpha(st.alpha, inv, cfg, pot), scale, "Δ_α")?;
    let db = check_delta(delta_beta(st.beta, inv, cfg, pot), scale, "Δ_β")?;
    let s = st.alpha.sinh().powi(2) + st.beta.sin().powi(2);
    if !(s * cfg.a2() > cfg.focal_tolerance()) {
        return Err(Error::FocalRingSingularity {
            separation: (s * cfg.a2()).to_f64().unwrap_or(f64::NAN),
        });
    }
    let denom = cfg.a2() * cfg.m() * s;
    let phi_dot = if inv.ell == T::zero() {
        T::zero()
    } else {
        inv.ell / (cfg.m() * cfg.a2() * (st.alpha.cosh() * st.beta.cos()).powi(2))
    };
    Ok((
        st.sigma_alpha.value::<T>() * da.sqrt() / denom,
        st.sigma_beta.value::<T>() * db.sqrt() / denom,
        phi_dot,
    ))
}

/// Separated chart of a phase-space state together with its chart momenta.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparatedInitial<T> {
    pub state: SeparatedState<T>,
    pub p_alpha: T,
    pub p_beta: T,
}

pub fn separate<T: Scalar>(s: &PhaseState<T>, cfg: &AxisConfig<T>) -> Result<SeparatedInitial<T>> {
    let chart = to_spheroidal(&s.x, cfg)?;
    let [ta, tb, _] = chart_tangents(chart.alpha, chart.beta, chart.phi, cfg);
    let (pa, pb) = (s.p.dot(&ta), s.p.dot(&tb));
    Ok(SeparatedInitial {
        state: SeparatedState {
            alpha: chart.alpha,
            beta: chart.beta,
            phi: chart.phi,
            sigma_alpha: Sign::of(pa),
            sigma_beta: Sign::of(pb),
        },
        p_alpha: pa,
        p_beta: pb,
    })
}

/// Cartesian momentum from chart momenta:
/// `p = (p_α ∂x/∂α + p_β ∂x/∂β)/(a² S) + ℓ ∂x/∂φ / ρ²`.
pub fn chart_momentum<T: Scalar>(alpha: T, beta: T, phi: T, p_alpha: T, p_beta: T, ell: T, cfg: &AxisConfig<T>) -> Vec3<T> {
    let [ta, tb, tp] = chart_tangents(alpha, beta, phi, cfg);
    let h2 = cfg.a2() * (alpha.sinh().powi(2) + beta.sin().powi(2));
    let rho2 = tp.norm_sq();
    let azimuthal = if ell == T::zero() || rho2 == T::zero() { Vec3::zero() } else { tp * (ell / rho2) };
    (ta * p_alpha + tb * p_beta) / h2 + azimuthal
}

// State layout of the separated system in rescaled time.
const IA: usize = 0;
const IPA: usize = 1;
const IB: usize = 2;
const IPB: usize = 3;
const IPHI: usize = 4;
const IT: usize = 5;

fn t_of<T: Scalar>(step: &DenseStep<T, 6>, tau: T) -> T {
    step.eval(tau)[IT]
}

/// Solves `t(τ) = target` inside a step by bisection on the dense output.
fn tau_at_time<T: Scalar>(step: &DenseStep<T, 6>, target: T) -> T {
    let (mut lo, mut hi) = (step.t0, step.t1);
    for _ in 0..200 {
        let mid = (lo + hi) * lit(0.5);
        if mid == lo || mid == hi {
            break;
        }
        if t_of(step, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) * lit(0.5)
}

/// Integrates the separated equations from `st0` with invariants `inv`, flipping branch
/// signs at turning points, and records Cartesian states at `sample_times`.
pub fn integrate_separated<T: Scalar>(
    st0: &SeparatedState<T>,
    inv: &InvariantTriple<T>,
    cfg: &AxisConfig<T>,
    pot: &SeparablePotential<T>,
    t_final: T,
    sample_times: &[T],
    tol: T,
) -> Result<TrajectoryRecord<T>> {
    let scale = delta_scale(inv, cfg);
    let da = check_delta(delta_alpha(st0.alpha, inv, cfg, pot), scale, "Δ_α")?;
    let db = check_delta(delta_beta(st0.beta, inv, cfg, pot), scale, "Δ_β")?;
    let momenta = (st0.sigma_alpha.value::<T>() * da.sqrt(), st0.sigma_beta.value::<T>() * db.sqrt());
    separated_flow(st0, momenta, inv, cfg, pot, t_final, sample_times, tol)
}

/// Like [`integrate_separated`] but starts from the chart momenta of a phase-space state
/// instead of `±Δ^{1/2}`, which at a turning point would turn rounding in `Δ` into a
/// spurious momentum of order `√ε`.
pub fn integrate_separated_from<T: Scalar>(
    s0: &PhaseState<T>,
    cfg: &AxisConfig<T>,
    pot: &SeparablePotential<T>,
    t_final: T,
    sample_times: &[T],
    tol: T,
) -> Result<TrajectoryRecord<T>> {
    let inv = invariants(s0, cfg, pot)?;
    let init = separate(s0, cfg)?;
    separated_flow(&init.state, (init.p_alpha, init.p_beta), &inv, cfg, pot, t_final, sample_times, tol)
}

#[allow(clippy::too_many_arguments)]
fn separated_flow<T: Scalar>(
    st0: &SeparatedState<T>,
    momenta: (T, T),
    inv: &InvariantTriple<T>,
    cfg: &AxisConfig<T>,
    pot: &SeparablePotential<T>,
    t_final: T,
    sample_times: &[T],
    tol: T,
) -> Result<TrajectoryRecord<T>> {
    check_times(t_final, sample_times)?;
    if !(tol > T::zero()) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    let (m, a2, ell) = (cfg.m(), cfg.a2(), inv.ell);
    let two = lit::<T>(2.0);

    let rhs = |_tau: T, y: &[T; 6]| -> Result<[T; 6]> {
        let (al, be) = (y[IA], y[IB]);
        let s = al.sinh().powi(2) + be.sin().powi(2);
        let cb2 = be.cos().powi(2);
        let phi_rate = if ell == T::zero() {
            T::zero()
        } else {
            ell * (T::one() / cb2 - T::one() / al.cosh().powi(2))
        };
        Ok([
            y[IPA],
            delta_alpha_derivative(al, inv, cfg, pot) / two,
            y[IPB],
            delta_beta_derivative(be, inv, cfg, pot) / two,
            phi_rate,
            m * a2 * s,
        ])
    };

    let y0 = [st0.alpha, momenta.0, st0.beta, momenta.1, st0.phi, T::zero()];

    let sample_at = |t: T, y: &[T; 6]| -> Result<TrajectorySample<T>> {
        let x = from_angles(y[IA], y[IB], y[IPHI], cfg);
        let p = chart_momentum(y[IA], y[IB], y[IPHI], y[IPA], y[IPB], ell, cfg);
        canonical_sample(t, x, p, cfg, pot).map_err(singular_at(t))
    };

    let mut samples = Vec::with_capacity(sample_times.len());
    let mut events = Vec::new();
    let mut next = 0;
    while next < sample_times.len() && sample_times[next] <= T::zero() {
        samples.push(sample_at(sample_times[next], &y0)?);
        next += 1;
    }

    // The τ-length needed to reach t_final is not known in advance; integrate in chunks.
    let s0 = st0.alpha.sinh().powi(2) + st0.beta.sin().powi(2);
    let chunk = t_final / (m * a2 * s0.max(lit(1e-2)));
    let tol_cfg = Tolerances::uniform(tol);
    let event_tol = lit::<T>(1e-12);
    let mut y = y0;
    let mut tau = T::zero();
    let (mut accepted, mut rejected) = (0, 0);
    let mut done = false;
    let mut chunks = 0;
    while !done {
        chunks += 1;
        if chunks > 10_000 {
            return Err(Error::StepFailure {
                t: y[IT].to_f64().unwrap_or(f64::NAN),
                reason: "rescaled time does not advance physical time".into(),
            });
        }
        let mut last = y;
        let stats = ode::integrate(rhs, tau, y, tau + chunk, &tol_cfg, |step| {
            for (idx, coord) in [(IPA, TurningCoordinate::Alpha), (IPB, TurningCoordinate::Beta)] {
                let (p0, p1) = (step.y0[idx], step.y1[idx]);
                if (p0 < T::zero()) != (p1 < T::zero()) && p0 != T::zero() {
                    let g = |tau: T| step.eval(tau)[idx];
                    let (mut lo, mut hi) = (step.t0, step.t1);
                    let neg_lo = p0 < T::zero();
                    for _ in 0..200 {
                        if (t_of(step, hi) - t_of(step, lo)).abs() <= event_tol {
                            break;
                        }
                        let mid = (lo + hi) * lit(0.5);
                        if mid == lo || mid == hi {
                            break;
                        }
                        if (g(mid) < T::zero()) == neg_lo {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    let t_event = t_of(step, (lo + hi) * lit(0.5));
                    if t_event <= t_final {
                        events.push(TurningEvent { t: t_event, coordinate: coord });
                    }
                }
            }
            while next < sample_times.len() && sample_times[next] <= step.y1[IT] {
                let t = sample_times[next];
                let tau_t = tau_at_time(step, t);
                samples.push(sample_at(t, &step.eval(tau_t))?);
                next += 1;
            }
            last = step.y1;
            if step.y1[IT] >= t_final {
                done = true;
                return Ok(Control::Stop);
            }
            Ok(Control::Continue)
        })?;
        accepted += stats.accepted;
        rejected += stats.rejected;
        tau = stats.t_end;
        y = last;
    }
    events.sort_by(|a, b| a.t.partial_cmp(&b.t).unwrap_or(std::cmp::Ordering::Equal));
    Ok(TrajectoryRecord {
        samples,
        turning_events: events,
        accepted_steps: accepted,
        rejected_steps: rejected,
    })
}

/// `sign_of` re-exported for callers that build branch choices from raw momenta.
pub fn branch_of<T: Scalar>(v: T) -> T {
    sign_of(v)
}
