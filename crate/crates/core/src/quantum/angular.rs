//! Angular eigenvalues of `(1-u²)w'' - 2uw' + [G - ℓ²/(1-u²) + γ²(1-u²)]w = 0`.
//!
//! In the orthonormal basis `P̄_L^ℓ`, `L ≥ ℓ`, the operator is
//! `M = diag(L(L+1)) - γ²(I - Z²)` where `Z` is multiplication by `u`:
//! `u P̄_L = a_{L+1} P̄_{L+1} + a_L P̄_{L-1}`, `a_L = √((L² - ℓ²)/((2L-1)(2L+1)))`.
//! `Z²` couples `L` to `L ± 2` only, so `M` splits into two tridiagonal blocks by parity.

use super::series::{series_regular_singular, Parity, SeriesEquation, SeriesPoint, SeriesSolution};
use super::SpheroidalForm;
use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

fn coupling<T: Scalar>(l: usize, ell: usize) -> T {
    if l <= ell {
        return T::zero();
    }
    let lt = T::from_usize_lossy(l);
    let mt = T::from_usize_lossy(ell);
    ((lt * lt - mt * mt) / ((lt + lt - T::one()) * (lt + lt + T::one()))).sqrt()
}

/// `(P̄_L^ℓ(u), dP̄/du, d²P̄/du²)` for `L = ℓ, …, ℓ + n - 1`, no Condon–Shortley phase.
pub fn legendre_table<T: Scalar>(ell: usize, n: usize, u: T) -> Vec<(T, T, T)> {
    let w = T::one() - u * u;
    let sw = w.max(T::zero()).sqrt();
    let mut pmm = lit::<T>(0.5).sqrt();
    for k in 1..=ell {
        let kt = T::from_usize_lossy(k);
        pmm = pmm * ((kt + kt + T::one()) / (kt + kt)).sqrt() * sw;
    }
    let mut vals = Vec::with_capacity(n);
    let (mut prev, mut cur) = (T::zero(), pmm);
    for i in 0..n {
        let l = ell + i;
        if i > 0 {
            let next = (u * cur - coupling::<T>(l - 1, ell) * prev) / coupling::<T>(l, ell);
            prev = cur;
            cur = next;
        }
        vals.push((l, cur, prev));
    }
    let mt = T::from_usize_lossy(ell);
    vals.into_iter()
        .map(|(l, p, p_lower)| {
            let lt = T::from_usize_lossy(l);
            // (1-u²)P' = -L u P + (2L+1) a_L P_{L-1}
            let dp = (-lt * u * p + (lt + lt + T::one()) * coupling::<T>(l, ell) * p_lower) / w;
            let d2p = ((u + u) * dp - (lt * (lt + T::one()) - mt * mt / w) * p) / w;
            (p, dp, d2p)
        })
        .collect()
}

/// Implicit QL on a symmetric tridiagonal matrix. `d` holds the diagonal, `e[i]` couples
/// `i` and `i + 1`. On return `d` holds eigenvalues and column `j` of `z` the eigenvector.
pub fn tridiagonal_ql<T: Scalar>(d: &mut [T], e: &mut [T], z: &mut [Vec<T>]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    let mut e_ext = e.to_vec();
    e_ext.resize(n, T::zero());
    let e = &mut e_ext[..];
    e[n - 1] = T::zero();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NoConvergence("tridiagonal QL iteration limit".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (e[l] + e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + if g >= T::zero() { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut i = m;
            let mut early = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + lit::<T>(2.0) * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in z.iter_mut() {
                    let f = row[i + 1];
                    row[i + 1] = s * row[i] + c * f;
                    row[i] = c * row[i] - s * f;
                }
            }
            if early {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    Ok(())
}

/// One angular eigenpair.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularMode<T> {
    pub g: T,
    pub ell: usize,
    pub parity: Parity,
    /// Coefficient of `P̄_{ℓ+i}^ℓ` at index `i`; unit Euclidean norm.
    pub coefficients: Vec<T>,
}

impl<T: Scalar> AngularMode<T> {
    /// `(ψ, ψ', ψ'')` at `u ∈ (-1, 1)`.
    pub fn eval(&self, u: T) -> (T, T, T) {
        let table = legendre_table(self.ell, self.coefficients.len(), u);
        table
            .iter()
            .zip(&self.coefficients)
            .fold((T::zero(), T::zero(), T::zero()), |(a, b, c), (&(p, dp, d2p), &k)| {
                (a + k * p, b + k * dp, c + k * d2p)
            })
    }

    /// `⟨ψ|(1-u²)|ψ⟩` from the coefficient expansion.
    pub fn weight_expectation(&self) -> T {
        let n = self.coefficients.len();
        let c = &self.coefficients;
        let mut z2 = T::zero();
        for i in 0..n {
            let l = self.ell + i;
            let d = coupling::<T>(l + 1, self.ell).powi(2) + coupling::<T>(l, self.ell).powi(2);
            z2 = z2 + d * c[i] * c[i];
            if i + 2 < n {
                let off = coupling::<T>(l + 1, self.ell) * coupling::<T>(l + 2, self.ell);
                z2 = z2 + lit::<T>(2.0) * off * c[i] * c[i + 2];
            }
        }
        c.iter().fold(T::zero(), |s, &v| s + v * v) - z2
    }
}

fn block_modes<T: Scalar>(ell: usize, gamma2: T, n: usize, parity: usize) -> Result<Vec<AngularMode<T>>> {
    let idx: Vec<usize> = (parity..n).step_by(2).collect();
    let k = idx.len();
    let mut d = Vec::with_capacity(k);
    let mut e = Vec::with_capacity(k);
    for &i in &idx {
        let l = ell + i;
        let lt = T::from_usize_lossy(l);
        let z2 = coupling::<T>(l + 1, ell).powi(2) + coupling::<T>(l, ell).powi(2);
        d.push(lt * (lt + T::one()) - gamma2 * (T::one() - z2));
        e.push(gamma2 * coupling::<T>(l + 1, ell) * coupling::<T>(l + 2, ell));
    }
    let mut z: Vec<Vec<T>> = (0..k).map(|r| (0..k).map(|c| if r == c { T::one() } else { T::zero() }).collect()).collect();
    tridiagonal_ql(&mut d, &mut e, &mut z)?;
    Ok((0..k)
        .map(|j| {
            let mut coefficients = vec![T::zero(); n];
            let mut big = T::zero();
            for (r, &i) in idx.iter().enumerate() {
                coefficients[i] = z[r][j];
                if z[r][j].abs() > big.abs() {
                    big = z[r][j];
                }
            }
            if big < T::zero() {
                coefficients.iter_mut().for_each(|c| *c = -*c);
            }
            AngularMode {
                g: d[j],
                ell,
                parity: if parity == 0 { Parity::Even } else { Parity::Odd },
                coefficients,
            }
        })
        .collect())
}

fn lowest_modes<T: Scalar>(ell: usize, gamma2: T, n: usize, count: usize) -> Result<Vec<AngularMode<T>>> {
    let mut modes = block_modes(ell, gamma2, n, 0)?;
    modes.extend(block_modes(ell, gamma2, n, 1)?);
    modes.sort_by(|a, b| a.g.partial_cmp(&b.g).unwrap_or(std::cmp::Ordering::Equal));
    modes.truncate(count);
    Ok(modes)
}

/// The lowest `count` eigenpairs, growing the basis until eigenvalues move less than
/// `1e-10·max(1, |G|)`.
pub fn angular_modes<T: Scalar>(ell: usize, gamma2: T, count: usize) -> Result<Vec<AngularMode<T>>> {
    if count == 0 {
        return Err(Error::InvalidInput("count must be at least 1".into()));
    }
    if !gamma2.is_finite() {
        return Err(Error::InvalidInput("γ² must be finite".into()));
    }
    let mut n = (2 * count + 16).max(24);
    let mut prev = lowest_modes(ell, gamma2, n, count)?;
    while n <= 8192 {
        n *= 2;
        let next = lowest_modes(ell, gamma2, n, count)?;
        let moved = prev
            .iter()
            .zip(&next)
            .all(|(a, b)| (a.g - b.g).abs() <= lit::<T>(1e-10) * a.g.abs().max(T::one()));
        if moved && next.len() == count {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::NoConvergence("angular eigenvalues did not settle".into()))
}

pub fn angular_eigenvalues<T: Scalar>(ell: usize, gamma2: T, count: usize) -> Result<Vec<T>> {
    Ok(angular_modes(ell, gamma2, count)?.into_iter().map(|m| m.g).collect())
}

/// Normalized Wronskian between a mode and the regular series at `u = ±1`, evaluated at
/// `u = ±1/2`. Zero when the mode carries no singular admixture at that pole.
pub fn regularity_defect<T: Scalar>(mode: &AngularMode<T>, gamma2: T, pole: i8) -> Result<T> {
    let form = SpheroidalForm {
        lambda_p: mode.g,
        mu: mode.ell as i64,
        gamma2,
    };
    let reg: SeriesSolution<T> = series_regular_singular(SeriesEquation::Spheroidal(form), SeriesPoint::SpheroidalPole(pole), 80)?;
    let u = lit::<T>(0.5) * if pole > 0 { T::one() } else { -T::one() };
    let (y1, d1, _) = mode.eval(u);
    let (y2, d2, _) = reg
        .eval(u)
        .ok_or_else(|| Error::InvalidInput("regular series undefined at the probe point".into()))?;
    Ok((y1 * d2 - d1 * y2).abs() / (y1.abs() * d2.abs() + d1.abs() * y2.abs()))
}
