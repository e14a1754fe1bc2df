//! Adaptive Gauss–Kronrod (7/15) quadrature and the square-root substitution used for
//! integrands with `1/√` endpoint singularities at turning points.

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_intervals: usize,
}

impl<T: Scalar> Default for QuadOptions<T> {
    fn default() -> Self {
        QuadOptions {
            abs_tol: lit(1e-10),
            rel_tol: lit(1e-12),
            max_intervals: 4000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: T,
    pub intervals: usize,
}

fn kronrod<T: Scalar>(f: &impl Fn(T) -> T, lo: T, hi: T) -> (T, T) {
    let half = (hi - lo) * lit(0.5);
    let center = (hi + lo) * lit(0.5);
    let fc = f(center);
    let mut kron = fc * lit(WGK[7]);
    let mut gauss = fc * lit(WG[3]);
    for j in 0..7 {
        let dx = half * lit(XGK[j]);
        let pair = f(center - dx) + f(center + dx);
        kron = kron + pair * lit(WGK[j]);
        if j % 2 == 1 {
            gauss = gauss + pair * lit(WG[j / 2]);
        }
    }
    let k = kron * half;
    let g = gauss * half;
    (k, (k - g).abs())
}

/// `∫_lo^hi f` by globally adaptive bisection of the interval with the largest error.
pub fn integrate<T: Scalar>(f: impl Fn(T) -> T, lo: T, hi: T, opts: &QuadOptions<T>) -> Result<QuadResult<T>> {
    if lo == hi {
        return Ok(QuadResult {
            value: T::zero(),
            error: T::zero(),
            intervals: 0,
        });
    }
    let (v, e) = kronrod(&f, lo, hi);
    let mut pieces = vec![(lo, hi, v, e)];
    let mut total = v;
    let mut total_err = e;
    loop {
        if !total.is_finite() {
            return Err(Error::QuadratureFailure("non-finite integrand".into()));
        }
        if total_err <= opts.abs_tol.max(opts.rel_tol * total.abs()) {
            return Ok(QuadResult {
                value: total,
                error: total_err,
                intervals: pieces.len(),
            });
        }
        if pieces.len() >= opts.max_intervals {
            return Err(Error::QuadratureFailure(format!(
                "error estimate {total_err} above tolerance after {} intervals",
                pieces.len()
            )));
        }
        let (idx, _) = pieces
            .iter()
            .enumerate()
            .fold((0, -T::one()), |best, (i, p)| if p.3 > best.1 { (i, p.3) } else { best });
        let (a, b, v_old, e_old) = pieces.swap_remove(idx);
        let mid = (a + b) * lit(0.5);
        if mid == a || mid == b {
            return Err(Error::QuadratureFailure("interval collapsed to machine precision".into()));
        }
        let (v1, e1) = kronrod(&f, a, mid);
        let (v2, e2) = kronrod(&f, mid, b);
        total = total - v_old + v1 + v2;
        total_err = total_err - e_old + e1 + e2;
        pieces.push((a, mid, v1, e1));
        pieces.push((mid, b, v2, e2));
        // Re-sum occasionally so cancellation in the running totals cannot drift.
        if pieces.len() % 64 == 0 {
            total = pieces.iter().fold(T::zero(), |s, p| s + p.2);
            total_err = pieces.iter().fold(T::zero(), |s, p| s + p.3);
        }
    }
}

/// `∫_lo^hi f` for integrands that may behave like `1/√|x - endpoint|` at either end.
///
/// The interval is split at its midpoint and each half is mapped by `x = end ∓ u²`, which
/// turns an inverse-square-root endpoint singularity into a smooth integrand.
pub fn integrate_sqrt_endpoints<T: Scalar>(
    f: impl Fn(T) -> T,
    lo: T,
    hi: T,
    opts: &QuadOptions<T>,
) -> Result<QuadResult<T>> {
    if lo == hi {
        return Ok(QuadResult {
            value: T::zero(),
            error: T::zero(),
            intervals: 0,
        });
    }
    let sign = if hi > lo { T::one() } else { -T::one() };
    let (a, b) = if hi > lo { (lo, hi) } else { (hi, lo) };
    let mid = (a + b) * lit(0.5);
    let w = (mid - a).sqrt();
    let left = integrate(|u: T| f(a + u * u) * (u + u), T::zero(), w, opts)?;
    let right = integrate(|u: T| f(b - u * u) * (u + u), T::zero(), w, opts)?;
    Ok(QuadResult {
        value: sign * (left.value + right.value),
        error: left.error + right.error,
        intervals: left.intervals + right.intervals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let r = integrate(|x: f64| 3.0 * x * x - x + 2.0, -1.0, 2.0, &QuadOptions::default()).unwrap();
        assert!((r.value - 13.5).abs() < 1e-13);
    }

    #[test]
    fn oscillatory_integrand() {
        let r = integrate(|x: f64| (10.0 * x).sin(), 0.0, 3.0, &QuadOptions::default()).unwrap();
        let exact = (1.0 - (30.0f64).cos()) / 10.0;
        assert!((r.value - exact).abs() < 1e-10);
    }

    #[test]
    fn inverse_sqrt_at_both_ends() {
        // ∫_{-1}^{1} dx/√(1-x²) = π
        let r = integrate_sqrt_endpoints(|x: f64| 1.0 / (1.0 - x * x).max(0.0).sqrt(), -1.0, 1.0, &QuadOptions::default())
            .unwrap();
        assert!((r.value - std::f64::consts::PI).abs() < 1e-10, "{}", r.value);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let opts = QuadOptions::default();
        let f = |x: f64| 1.0 / (2.0 - x).sqrt();
        let a = integrate_sqrt_endpoints(f, 0.0, 2.0, &opts).unwrap().value;
        let b = integrate_sqrt_endpoints(f, 2.0, 0.0, &opts).unwrap().value;
        assert!((a - 2.0 * 2f64.sqrt()).abs() < 1e-10);
        assert_eq!(a, -b);
    }

    #[test]
    fn non_integrable_fails() {
        let opts = QuadOptions { max_intervals: 200, ..QuadOptions::default() };
        assert!(integrate(|x: f64| 1.0 / x, 0.0, 1.0, &opts).is_err());
    }
}
