//! Dormand–Prince 5(4) integrator with 4th-order continuous extension.
//!
//! The driver hands every accepted step to an observer as a [`DenseStep`], which can be
//! evaluated anywhere inside the step. Sampling at requested times and event location
//! are both built on top of that.

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

/// Tolerances and limits of the step-size controller.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    pub rtol: T,
    pub atol: T,
    pub h_max: T,
    pub max_steps: usize,
}

impl<T: Scalar> Tolerances<T> {
    /// Same relative and absolute tolerance, unlimited step size.
    pub fn uniform(tol: T) -> Self {
        Tolerances {
            rtol: tol,
            atol: tol,
            h_max: T::infinity(),
            max_steps: 5_000_000,
        }
    }
}

/// One accepted step and its continuous extension.
#[derive(Debug, Clone)]
pub struct DenseStep<T, const N: usize> {
    pub t0: T,
    pub t1: T,
    pub y0: [T; N],
    pub y1: [T; N],
    rcont: [[T; N]; 5],
}

impl<T: Scalar, const N: usize> DenseStep<T, N> {
    fn theta(&self, t: T) -> T {
        (t - self.t0) / (self.t1 - self.t0)
    }

    /// Interpolated state at `t ∈ [t0, t1]`.
    pub fn eval(&self, t: T) -> [T; N] {
        let th = self.theta(t);
        let th1 = T::one() - th;
        let r = &self.rcont;
        std::array::from_fn(|i| r[0][i] + th * (r[1][i] + th1 * (r[2][i] + th * (r[3][i] + th1 * r[4][i]))))
    }

    /// Time derivative of the interpolant at `t`.
    pub fn eval_derivative(&self, t: T) -> [T; N] {
        let th = self.theta(t);
        let th1 = T::one() - th;
        let r = &self.rcont;
        let h = self.t1 - self.t0;
        std::array::from_fn(|i| {
            // P(θ) = r0 + θ(r1 + (1-θ)(r2 + θ(r3 + (1-θ) r4)))
            let inner = r[3][i] + th1 * r[4][i];
            let d_inner = -r[4][i];
            let mid = r[2][i] + th * inner;
            let d_mid = inner + th * d_inner;
            let outer = r[1][i] + th1 * mid;
            let d_outer = -mid + th1 * d_mid;
            (outer + th * d_outer) / h
        })
    }

    pub fn contains(&self, t: T) -> bool {
        let (lo, hi) = if self.t1 >= self.t0 { (self.t0, self.t1) } else { (self.t1, self.t0) };
        t >= lo && t <= hi
    }
}

/// Observer verdict after each accepted step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Control {
    Continue,
    Stop,
}

/// Summary of a completed integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stats<T> {
    pub t_end: T,
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

fn combine<T: Scalar, const N: usize>(y: &[T; N], h: T, terms: &[(f64, &[T; N])]) -> [T; N] {
    std::array::from_fn(|i| {
        let acc = terms.iter().fold(T::zero(), |acc, (c, k)| acc + lit::<T>(*c) * k[i]);
        y[i] + h * acc
    })
}

/// Integrates `y' = f(t, y)` from `t0` to `t_end` (either direction), calling `observer`
/// after every accepted step. Errors raised by `f` or the observer abort the run.
pub fn integrate<T, const N: usize, F, O>(
    mut f: F,
    t0: T,
    y0: [T; N],
    t_end: T,
    tol: &Tolerances<T>,
    mut observer: O,
) -> Result<Stats<T>>
where
    T: Scalar,
    F: FnMut(T, &[T; N]) -> Result<[T; N]>,
    O: FnMut(&DenseStep<T, N>) -> Result<Control>,
{
    let dir = if t_end >= t0 { T::one() } else { -T::one() };
    let span = (t_end - t0).abs();
    let mut stats = Stats {
        t_end: t0,
        accepted: 0,
        rejected: 0,
        evaluations: 0,
    };
    if span == T::zero() {
        return Ok(stats);
    }

    let scale = |y0: &[T; N], y1: &[T; N], i: usize| tol.atol + tol.rtol * y0[i].abs().max(y1[i].abs());
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y)?;
    stats.evaluations += 1;

    // Initial step from the Hairer–Wanner heuristic.
    let mut h = {
        let d0 = rms(&y, |i| y[i] / scale(&y, &y, i));
        let d1 = rms(&k1, |i| k1[i] / scale(&y, &y, i));
        let h0 = if d0 < lit(1e-5) || d1 < lit(1e-5) { lit(1e-6) } else { lit::<T>(0.01) * d0 / d1 };
        let y_trial = combine(&y, dir * h0, &[(1.0, &k1)]);
        let k_trial = f(t + dir * h0, &y_trial)?;
        stats.evaluations += 1;
        let d2 = rms(&k1, |i| (k_trial[i] - k1[i]) / scale(&y, &y, i)) / h0;
        let h1 = if d1.max(d2) <= lit(1e-15) {
            (h0 * lit(1e-3)).max(lit(1e-6))
        } else {
            (lit::<T>(0.01) / d1.max(d2)).powf(lit(0.2))
        };
        (h0 * lit(100.0)).min(h1).min(span).min(tol.h_max)
    };

    let mut last_rejected = false;
    loop {
        if stats.accepted + stats.rejected >= tol.max_steps {
            return Err(Error::StepFailure {
                t: t.to_f64().unwrap_or(f64::NAN),
                reason: "maximum number of steps exceeded".into(),
            });
        }
        let remaining = (t_end - t).abs();
        let finishing = h >= remaining * (T::one() - lit(1e-12));
        if finishing {
            h = remaining;
        }
        let hs = dir * h;
        let min_h = T::epsilon() * lit(16.0) * t.abs().max(span);
        if h <= min_h {
            return Err(Error::StepFailure {
                t: t.to_f64().unwrap_or(f64::NAN),
                reason: "step size underflow".into(),
            });
        }

        let stages = (|| -> Result<_> {
            let k2 = f(t + hs * lit(C2), &combine(&y, hs, &[(A21, &k1)]))?;
            let k3 = f(t + hs * lit(C3), &combine(&y, hs, &[(A31, &k1), (A32, &k2)]))?;
            let k4 = f(t + hs * lit(C4), &combine(&y, hs, &[(A41, &k1), (A42, &k2), (A43, &k3)]))?;
            let k5 = f(
                t + hs * lit(C5),
                &combine(&y, hs, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
            )?;
            let k6 = f(
                t + hs,
                &combine(&y, hs, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
            )?;
            let y1 = combine(&y, hs, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
            let k7 = f(t + hs, &y1)?;
            Ok((k2, k3, k4, k5, k6, k7, y1))
        })();
        stats.evaluations += 6;

        let (k3, k4, k5, k6, k7, y1) = match stages {
            Ok((_k2, k3, k4, k5, k6, k7, y1)) => (k3, k4, k5, k6, k7, y1),
            // A stage that leaves the admissible domain is treated like a rejected step.
            Err(e) if h > min_h * lit(1e3) && !matches!(e, Error::InvalidInput(_)) => {
                stats.rejected += 1;
                h = h * lit(0.25);
                last_rejected = true;
                continue;
            }
            Err(e) => return Err(e),
        };

        let err = rms(&y1, |i| {
            let e = hs
                * (lit::<T>(E1) * k1[i]
                    + lit::<T>(E3) * k3[i]
                    + lit::<T>(E4) * k4[i]
                    + lit::<T>(E5) * k5[i]
                    + lit::<T>(E6) * k6[i]
                    + lit::<T>(E7) * k7[i]);
            e / scale(&y, &y1, i)
        });
        if !err.is_finite() {
            stats.rejected += 1;
            h = h * lit(0.25);
            last_rejected = true;
            continue;
        }

        if err <= T::one() {
            let t1 = if finishing { t_end } else { t + hs };
            let rcont = {
                let r0 = y;
                let r1: [T; N] = std::array::from_fn(|i| y1[i] - y[i]);
                let r2: [T; N] = std::array::from_fn(|i| hs * k1[i] - r1[i]);
                let r3: [T; N] = std::array::from_fn(|i| r1[i] - hs * k7[i] - r2[i]);
                let r4: [T; N] = std::array::from_fn(|i| {
                    hs * (lit::<T>(D1) * k1[i]
                        + lit::<T>(D3) * k3[i]
                        + lit::<T>(D4) * k4[i]
                        + lit::<T>(D5) * k5[i]
                        + lit::<T>(D6) * k6[i]
                        + lit::<T>(D7) * k7[i])
                });
                [r0, r1, r2, r3, r4]
            };
            let step = DenseStep {
                t0: t,
                t1,
                y0: y,
                y1,
                rcont,
            };
            stats.accepted += 1;
            t = t1;
            y = y1;
            k1 = k7;
            stats.t_end = t;
            if observer(&step)? == Control::Stop || finishing {
                return Ok(stats);
            }
            let mut fac = lit::<T>(0.9) * err.max(lit(1e-10)).powf(lit(-0.2));
            fac = fac.min(lit(5.0)).max(lit(0.2));
            if last_rejected {
                fac = fac.min(T::one());
            }
            h = (h * fac).min(tol.h_max);
            last_rejected = false;
        } else {
            stats.rejected += 1;
            let fac = (lit::<T>(0.9) * err.powf(lit(-0.2))).max(lit(0.2));
            h = h * fac;
            last_rejected = true;
        }
    }
}

fn rms<T: Scalar, const N: usize>(_y: &[T; N], term: impl Fn(usize) -> T) -> T {
    let sum = (0..N).fold(T::zero(), |acc, i| {
        let v = term(i);
        acc + v * v
    });
    (sum / T::from_usize_lossy(N)).sqrt()
}

/// Locates a sign change of `g` inside `step` by bisection until the bracket in `t`
/// is narrower than `t_tol`. `g` must change sign between the step ends.
pub fn bisect_event<T: Scalar, const N: usize>(
    step: &DenseStep<T, N>,
    g: impl Fn(T, &[T; N]) -> T,
    t_tol: T,
) -> T {
    let (mut lo, mut hi) = (step.t0, step.t1);
    let g_lo = g(lo, &step.y0);
    for _ in 0..200 {
        if (hi - lo).abs() <= t_tol {
            break;
        }
        let mid = (lo + hi) * lit(0.5);
        let g_mid = g(mid, &step.eval(mid));
        if (g_mid < T::zero()) == (g_lo < T::zero()) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) * lit(0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay() {
        let tol = Tolerances::uniform(1e-10);
        let mut last = [0.0; 1];
        integrate(|_, y: &[f64; 1]| Ok([-y[0]]), 0.0, [1.0], 3.0, &tol, |s| {
            last = s.y1;
            Ok(Control::Continue)
        })
        .unwrap();
        assert!((last[0] - (-3.0f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn harmonic_oscillator_dense_output() {
        let tol = Tolerances::uniform(1e-11);
        let mut worst: f64 = 0.0;
        let mut worst_d: f64 = 0.0;
        integrate(
            |_, y: &[f64; 2]| Ok([y[1], -y[0]]),
            0.0,
            [1.0, 0.0],
            10.0,
            &tol,
            |s| {
                for j in 0..=4 {
                    let t = s.t0 + (s.t1 - s.t0) * j as f64 / 4.0;
                    worst = worst.max((s.eval(t)[0] - t.cos()).abs());
                    worst_d = worst_d.max((s.eval_derivative(t)[0] + t.sin()).abs());
                }
                Ok(Control::Continue)
            },
        )
        .unwrap();
        assert!(worst < 1e-9, "{worst}");
        assert!(worst_d < 1e-7, "{worst_d}");
    }

    #[test]
    fn backward_integration() {
        let tol = Tolerances::uniform(1e-10);
        let mut last = [0.0; 1];
        let stats = integrate(|t, _: &[f64; 1]| Ok([t]), 2.0, [2.0], 0.0, &tol, |s| {
            last = s.y1;
            Ok(Control::Continue)
        })
        .unwrap();
        assert_eq!(stats.t_end, 0.0);
        assert!(last[0].abs() < 1e-12);
    }

    #[test]
    fn event_bisection() {
        let tol = Tolerances::uniform(1e-10);
        let mut crossing = None;
        integrate(
            |_, y: &[f64; 2]| Ok([y[1], -y[0]]),
            0.0,
            [1.0, 0.0],
            3.0,
            &tol,
            |s| {
                if s.y0[0] > 0.0 && s.y1[0] <= 0.0 {
                    crossing = Some(bisect_event(s, |_, y| y[0], 1e-12));
                }
                Ok(Control::Continue)
            },
        )
        .unwrap();
        assert!((crossing.unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-9);
    }

    #[test]
    fn step_budget_is_enforced() {
        let mut tol = Tolerances::uniform(1e-12);
        tol.max_steps = 3;
        let err = integrate(|_, y: &[f64; 1]| Ok([y[0]]), 0.0, [1.0], 50.0, &tol, |_| Ok(Control::Continue));
        assert!(matches!(err, Err(Error::StepFailure { .. })));
    }
}
