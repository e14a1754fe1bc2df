//! Frobenius series `ψ = wʳ Σ cₙ wⁿ` for equations brought to the form
//! `w² p₂(w) ψ'' + w p₁(w) ψ' + p₀(w) ψ = 0` with polynomial `p₂, p₁, p₀`.
//!
//! Substitution gives `Σⱼ c_{n-j} [p₂ⱼ (n-j+r)(n-j+r-1) + p₁ⱼ (n-j+r) + p₀ⱼ] = 0`.
//! The indicial polynomial is kept in exact rational arithmetic so exponents and
//! vanishing leading factors are detected without rounding.

use num_complex::Complex;
use num_rational::Ratio;

use super::{QuantumParams, SpheroidalForm};
use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    None,
}

/// The equation a series solves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeriesEquation<T> {
    /// Radial equation in `z = t²`.
    RadialZ(QuantumParams<T>),
    Spheroidal(SpheroidalForm<T>),
}

impl<T: Scalar> SeriesEquation<T> {
    /// Plain left-hand side at a complex point.
    pub fn residual(&self, z: Complex<T>, psi: Complex<T>, dpsi: Complex<T>, d2psi: Complex<T>) -> Complex<T> {
        let one = Complex::new(T::one(), T::zero());
        match self {
            SeriesEquation::RadialZ(qp) => {
                let l = qp.ell_t();
                let four = lit::<T>(4.0);
                d2psi * z * (z + one) * four
                    + dpsi * (z * lit::<T>(6.0) + lit::<T>(2.0))
                    + psi * ((z + one).inv() * (l * l) + z * qp.cal_e - qp.cal_e_tilde)
            }
            SeriesEquation::Spheroidal(f) => {
                let mu = T::from_i64(f.mu).expect("μ representable");
                let s = one - z * z;
                let centrifugal = if f.mu == 0 { Complex::new(T::zero(), T::zero()) } else { s.inv() * (mu * mu) };
                d2psi * s - dpsi * (z + z) + psi * (-centrifugal + s * f.gamma2 + f.lambda_p)
            }
        }
    }
}

/// Local Frobenius problem around one point.
#[derive(Debug, Clone, PartialEq)]
pub struct Frobenius<T> {
    pub p2: Vec<T>,
    pub p1: Vec<T>,
    pub p0: Vec<T>,
    /// `(p₂₀, p₁₀, p₀₀)` exactly.
    pub indicial: [Rational; 3],
}

fn int_sqrt(v: i64) -> Option<i64> {
    if v < 0 {
        return None;
    }
    let r = (v as f64).sqrt().round() as i64;
    (r.saturating_sub(1)..=r + 1).find(|&k| k >= 0 && k.checked_mul(k) == Some(v))
}

fn rational_sqrt(v: Rational) -> Option<Rational> {
    Some(Rational::new(int_sqrt(*v.numer())?, int_sqrt(*v.denom())?))
}

fn to_scalar<T: Scalar>(r: Rational) -> T {
    T::from_i64(*r.numer()).expect("numerator") / T::from_i64(*r.denom()).expect("denominator")
}

impl<T: Scalar> Frobenius<T> {
    /// `I(r) = p₂₀ r(r-1) + p₁₀ r + p₀₀`
    pub fn indicial_value(&self, r: Rational) -> Rational {
        let [a, b, c] = self.indicial;
        a * r * (r - Rational::from_integer(1)) + b * r + c
    }

    /// Roots of the indicial polynomial, largest first.
    pub fn exponents(&self) -> Result<Vec<Rational>> {
        let [a, b, c] = self.indicial;
        let zero = Rational::from_integer(0);
        if a == zero {
            return Err(Error::InvalidInput("irregular point: vanishing leading coefficient".into()));
        }
        // a r² + (b - a) r + c
        let bb = b - a;
        let disc = bb * bb - Rational::from_integer(4) * a * c;
        let root = rational_sqrt(disc)
            .ok_or_else(|| Error::InvalidInput("indicial roots are not rational".into()))?;
        let two_a = a * Rational::from_integer(2);
        let mut r = vec![(-bb + root) / two_a, (-bb - root) / two_a];
        r.sort_by(|x, y| y.cmp(x));
        r.dedup();
        Ok(r)
    }

    /// `c₀ = 1, c₁, …, c_{n-1}` for exponent `r`. When the leading factor vanishes and the
    /// rest of the relation vanishes too, the free coefficient is set to zero.
    pub fn coefficients(&self, r: Rational, n: usize) -> Result<Vec<T>> {
        if self.indicial_value(r) != Rational::from_integer(0) {
            return Err(Error::InvalidInput("not an indicial exponent".into()));
        }
        let rt = to_scalar::<T>(r);
        let deg = self.p2.len().max(self.p1.len()).max(self.p0.len());
        let at = |v: &Vec<T>, j: usize| v.get(j).copied().unwrap_or(T::zero());
        let mut c = Vec::with_capacity(n);
        c.push(T::one());
        for k in 1..n {
            let mut sum = T::zero();
            let mut size = T::zero();
            for j in 1..deg.min(k + 1) {
                let s = T::from_usize_lossy(k - j) + rt;
                let term = c[k - j] * (at(&self.p2, j) * s * (s - T::one()) + at(&self.p1, j) * s + at(&self.p0, j));
                sum = sum + term;
                size = size + term.abs();
            }
            let lead = self.indicial_value(r + Rational::from_integer(k as i64));
            if lead == Rational::from_integer(0) {
                if sum.abs() <= lit::<T>(1e-12) * size {
                    c.push(T::zero());
                } else {
                    return Err(Error::RecurrenceBreakdown { index: k });
                }
            } else {
                c.push(-sum / to_scalar::<T>(lead));
            }
        }
        Ok(c)
    }
}

/// Where a series is centered and how its local variable is oriented.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SeriesPoint {
    /// `z = 0` of the radial equation in `z = t²`.
    RadialOrigin,
    /// `z = -1` of the radial equation, local variable `z + 1`.
    RadialMinusOne,
    /// `z = 0` of the spheroidal equation.
    SpheroidalOrigin,
    /// `z = ±1` of the spheroidal equation, local variable `1 ∓ z`.
    SpheroidalPole(i8),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSolution<T> {
    pub exponent: Rational,
    /// `c₀ = 1`.
    pub coefficients: Vec<T>,
    pub expansion_point: T,
    pub radius_bound: T,
    pub parity: Parity,
    pub point: SeriesPoint,
    pub equation: SeriesEquation<T>,
    /// `w = local_sign · (z - expansion_point)`.
    pub local_sign: T,
    pub local: Frobenius<T>,
}

fn horner3<T: Scalar, C>(c: &[T], w: C) -> (C, C, C)
where
    C: Copy + std::ops::Mul<Output = C> + std::ops::Add<Output = C> + std::ops::Mul<T, Output = C> + From<T>,
{
    let zero: C = C::from(T::zero());
    let (mut s, mut ds, mut d2s) = (zero, zero, zero);
    for &ck in c.iter().rev() {
        d2s = d2s * w + ds * lit::<T>(2.0);
        ds = ds * w + s;
        s = s * w + C::from(ck);
    }
    (s, ds, d2s)
}

impl<T: Scalar> SeriesSolution<T> {
    fn exponent_t(&self) -> T {
        to_scalar(self.exponent)
    }

    pub fn local_variable(&self, z: T) -> T {
        self.local_sign * (z - self.expansion_point)
    }

    /// `(ψ, dψ/dz, d²ψ/dz²)` at a real point; `None` where `wʳ` is not real.
    pub fn eval(&self, z: T) -> Option<(T, T, T)> {
        let w = self.local_variable(z);
        let r = self.exponent_t();
        let (s, ds, d2s) = horner3(&self.coefficients, w);
        if *self.exponent.denom() == 1 && *self.exponent.numer() >= 0 {
            let k = *self.exponent.numer() as i32;
            let pw = |e: i32| if e < 0 { T::zero() } else { w.powi(e) };
            let rk = T::from_i32(k).expect("exponent");
            let psi = pw(k) * s;
            let dpsi = rk * pw(k - 1) * s + pw(k) * ds;
            let d2psi = rk * (rk - T::one()) * pw(k - 2) * s + (rk + rk) * pw(k - 1) * ds + pw(k) * d2s;
            return Some((psi, self.local_sign * dpsi, d2psi));
        }
        if w < T::zero() {
            return None;
        }
        let wr = w.powf(r);
        let psi = wr * s;
        let dpsi = r * wr / w * s + wr * ds;
        let d2psi = r * (r - T::one()) * wr / (w * w) * s + (r + r) * wr / w * ds + wr * d2s;
        Some((psi, self.local_sign * dpsi, d2psi))
    }

    /// Complex evaluation using the principal branch of `wʳ`.
    pub fn eval_complex(&self, z: Complex<T>) -> (Complex<T>, Complex<T>, Complex<T>) {
        let w = (z - self.expansion_point) * self.local_sign;
        let (s, ds, d2s) = horner3(&self.coefficients, w);
        let r = self.exponent_t();
        let k_int = *self.exponent.denom() == 1 && *self.exponent.numer() >= 0;
        let pw = |e: T| -> Complex<T> {
            if k_int {
                let ei = e.to_i32().unwrap_or(0);
                if ei < 0 {
                    Complex::new(T::zero(), T::zero())
                } else {
                    w.powi(ei)
                }
            } else {
                w.powf(e)
            }
        };
        let (w0, w1, w2) = (pw(r), pw(r - T::one()), pw(r - lit(2.0)));
        let psi = w0 * s;
        let dpsi = w1 * s * r + w0 * ds;
        let d2psi = w2 * s * (r * (r - T::one())) + w1 * ds * (r + r) + w0 * d2s;
        (psi, dpsi * self.local_sign, d2psi)
    }

    /// Residual of the original equation at a complex point.
    pub fn residual_complex(&self, z: Complex<T>) -> T {
        let (p, dp, d2p) = self.eval_complex(z);
        self.equation.residual(z, p, dp, d2p).norm()
    }

    /// Residual of the local polynomial form divided by `wʳ`; analytic in `w`.
    pub fn reduced_residual(&self, z: Complex<T>) -> T {
        let w = (z - self.expansion_point) * self.local_sign;
        let r = self.exponent_t();
        let poly = |v: &Vec<T>| {
            v.iter()
                .rev()
                .fold(Complex::new(T::zero(), T::zero()), |acc, &c| acc * w + c)
        };
        let (p2, p1, p0) = (poly(&self.local.p2), poly(&self.local.p1), poly(&self.local.p0));
        let mut total = Complex::new(T::zero(), T::zero());
        let mut wn = Complex::new(T::one(), T::zero());
        for (n, &c) in self.coefficients.iter().enumerate() {
            let s = T::from_usize_lossy(n) + r;
            total = total + wn * (p2 * (s * (s - T::one())) + p1 * s + p0) * c;
            wn = wn * w;
        }
        total.norm()
    }

    /// Largest plain residual on the circle `|w| = radius` and on the real diameter,
    /// skipping points closer than `radius/20` to the expansion point.
    pub fn max_residual(&self, radius: T, samples: usize) -> T {
        let mut worst = T::zero();
        let center = Complex::new(self.expansion_point, T::zero());
        for k in 0..samples {
            let th = T::TAU() * T::from_usize_lossy(k) / T::from_usize_lossy(samples);
            worst = worst.max(self.residual_complex(center + Complex::from_polar(radius, th)));
        }
        for k in 0..=samples {
            let x = -radius + (radius + radius) * T::from_usize_lossy(k) / T::from_usize_lossy(samples);
            if x.abs() < radius / lit(20.0) {
                continue;
            }
            worst = worst.max(self.residual_complex(center + Complex::new(x, T::zero())));
        }
        worst
    }

    /// Largest reduced residual on `|w| = radius`, which bounds it on the whole disk.
    pub fn max_reduced_residual(&self, radius: T, samples: usize) -> T {
        let center = Complex::new(self.expansion_point, T::zero());
        (0..samples)
            .map(|k| {
                let th = T::TAU() * T::from_usize_lossy(k) / T::from_usize_lossy(samples);
                self.reduced_residual(center + Complex::from_polar(radius, th))
            })
            .fold(T::zero(), T::max)
    }
}

fn radial_origin_problem<T: Scalar>(qp: &QuantumParams<T>) -> Frobenius<T> {
    let l = qp.ell_t();
    Frobenius {
        p2: vec![lit(4.0), lit(8.0), lit(4.0)],
        p1: vec![lit(2.0), lit(8.0), lit(6.0)],
        p0: vec![T::zero(), l * l - qp.cal_e_tilde, qp.cal_e - qp.cal_e_tilde, qp.cal_e],
        indicial: [Rational::from_integer(4), Rational::from_integer(2), Rational::from_integer(0)],
    }
}

fn radial_minus_one_problem<T: Scalar>(qp: &QuantumParams<T>) -> Frobenius<T> {
    let l = qp.ell_t();
    Frobenius {
        p2: vec![lit(-4.0), lit(4.0)],
        p1: vec![lit(-4.0), lit(6.0)],
        p0: vec![l * l, -qp.cal_e - qp.cal_e_tilde, qp.cal_e],
        indicial: [
            Rational::from_integer(-4),
            Rational::from_integer(-4),
            Rational::from_integer(qp.ell * qp.ell),
        ],
    }
}

fn spheroidal_pole_problem<T: Scalar>(f: &SpheroidalForm<T>) -> Frobenius<T> {
    let mu = T::from_i64(f.mu).expect("μ representable");
    let (lam, g2) = (f.lambda_p, f.gamma2);
    Frobenius {
        p2: vec![lit(4.0), lit(-4.0), T::one()],
        p1: vec![lit(4.0), lit(-6.0), lit(2.0)],
        p0: vec![-mu * mu, lam + lam, -lam + lit::<T>(4.0) * g2, lit::<T>(-4.0) * g2, g2],
        indicial: [
            Rational::from_integer(4),
            Rational::from_integer(4),
            Rational::from_integer(-f.mu * f.mu),
        ],
    }
}

fn spheroidal_origin_problem<T: Scalar>(f: &SpheroidalForm<T>) -> Frobenius<T> {
    let mu = T::from_i64(f.mu).expect("μ representable");
    let (lam, g2) = (f.lambda_p, f.gamma2);
    let z = T::zero();
    Frobenius {
        p2: vec![T::one(), z, lit(-2.0), z, T::one()],
        p1: vec![z, z, lit(-2.0), z, lit(2.0)],
        p0: vec![z, z, lam - mu * mu + g2, z, -lam - g2 - g2, z, g2],
        indicial: [Rational::from_integer(1), Rational::from_integer(0), Rational::from_integer(0)],
    }
}

/// Local problem and orientation at a series point.
pub fn local_problem<T: Scalar>(eq: &SeriesEquation<T>, point: SeriesPoint) -> Result<(Frobenius<T>, T, T, T)> {
    match (eq, point) {
        (SeriesEquation::RadialZ(qp), SeriesPoint::RadialOrigin) => {
            Ok((radial_origin_problem(qp), T::zero(), T::one(), T::one()))
        }
        (SeriesEquation::RadialZ(qp), SeriesPoint::RadialMinusOne) => {
            Ok((radial_minus_one_problem(qp), -T::one(), T::one(), T::one()))
        }
        (SeriesEquation::Spheroidal(f), SeriesPoint::SpheroidalOrigin) => {
            Ok((spheroidal_origin_problem(f), T::zero(), T::one(), T::one()))
        }
        (SeriesEquation::Spheroidal(f), SeriesPoint::SpheroidalPole(s)) if s == 1 || s == -1 => {
            let sign = if s == 1 { -T::one() } else { T::one() };
            Ok((spheroidal_pole_problem(f), -sign, sign, lit(2.0)))
        }
        _ => Err(Error::InvalidInput("series point does not belong to this equation".into())),
    }
}

/// Exact indicial exponents at a series point, largest first.
pub fn indicial_exponents<T: Scalar>(eq: &SeriesEquation<T>, point: SeriesPoint) -> Result<Vec<Rational>> {
    local_problem(eq, point)?.0.exponents()
}

fn build<T: Scalar>(eq: SeriesEquation<T>, point: SeriesPoint, exponent: Rational, n: usize, parity: Parity) -> Result<SeriesSolution<T>> {
    let (local, center, sign, radius) = local_problem(&eq, point)?;
    let coefficients = local.coefficients(exponent, n)?;
    Ok(SeriesSolution {
        exponent,
        coefficients,
        expansion_point: center,
        radius_bound: radius,
        parity,
        point,
        equation: eq,
        local_sign: sign,
        local,
    })
}

/// Exponent choice at the origin of the radial `z` equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OriginExponent {
    Zero,
    Half,
}

/// Series of the radial `z` equation at `z = 0`; even (`0`) or odd (`1/2`) in `t`.
pub fn series_origin<T: Scalar>(qp: &QuantumParams<T>, exponent: OriginExponent, n: usize) -> Result<SeriesSolution<T>> {
    if n < 4 {
        return Err(Error::InvalidInput("series truncation must be at least 4".into()));
    }
    let (r, parity) = match exponent {
        OriginExponent::Zero => (Rational::from_integer(0), Parity::Even),
        OriginExponent::Half => (Rational::new(1, 2), Parity::Odd),
    };
    build(SeriesEquation::RadialZ(*qp), SeriesPoint::RadialOrigin, r, n, parity)
}

/// Analytic branch (exponent `+ℓ/2`) at a regular singular point.
pub fn series_regular_singular<T: Scalar>(eq: SeriesEquation<T>, point: SeriesPoint, n: usize) -> Result<SeriesSolution<T>> {
    if n < 4 {
        return Err(Error::InvalidInput("series truncation must be at least 4".into()));
    }
    if matches!(point, SeriesPoint::RadialOrigin | SeriesPoint::SpheroidalOrigin) {
        return Err(Error::InvalidInput("not a singular point with exponents ±ℓ/2".into()));
    }
    let r = indicial_exponents(&eq, point)?[0];
    build(eq, point, r, n, Parity::None)
}

/// Even (`Σ aₙ z²ⁿ`) or odd (`Σ aₙ z²ⁿ⁺¹`) solution of the spheroidal equation at `z = 0`.
pub fn spheroidal_origin_series<T: Scalar>(form: &SpheroidalForm<T>, parity: Parity, n: usize) -> Result<SeriesSolution<T>> {
    let r = match parity {
        Parity::Even => Rational::from_integer(0),
        Parity::Odd => Rational::from_integer(1),
        Parity::None => return Err(Error::InvalidInput("origin series is even or odd".into())),
    };
    build(SeriesEquation::Spheroidal(*form), SeriesPoint::SpheroidalOrigin, r, n, parity)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp() -> QuantumParams<f64> {
        QuantumParams::new(-0.8, 0.5, 3.1, 2)
    }

    #[test]
    fn origin_exponents_are_zero_and_half() {
        let e = indicial_exponents(&SeriesEquation::RadialZ(qp()), SeriesPoint::RadialOrigin).unwrap();
        assert_eq!(e, vec![Rational::new(1, 2), Rational::from_integer(0)]);
    }

    #[test]
    fn singular_exponents_are_half_ell() {
        for ell in 0..5i64 {
            let q = QuantumParams::new(0.3, 0.0, 1.0, ell);
            let e = indicial_exponents(&SeriesEquation::RadialZ(q), SeriesPoint::RadialMinusOne).unwrap();
            let f = SpheroidalForm { lambda_p: 2.0, mu: ell, gamma2: -0.4 };
            let s = indicial_exponents(&SeriesEquation::Spheroidal(f), SeriesPoint::SpheroidalPole(1)).unwrap();
            let expect: Vec<Rational> = if ell == 0 {
                vec![Rational::from_integer(0)]
            } else {
                vec![Rational::new(ell, 2), Rational::new(-ell, 2)]
            };
            assert_eq!(e, expect);
            assert_eq!(s, expect);
        }
    }

    #[test]
    fn constant_solution_recovered() {
        let q = QuantumParams::new(0.0, 0.0, 0.0, 0);
        let s = series_origin(&q, OriginExponent::Zero, 40).unwrap();
        assert_eq!(s.coefficients[0], 1.0);
        assert!(s.coefficients[1..].iter().all(|&c| c == 0.0));
    }

    #[test]
    fn origin_series_converges_at_unit_radius_rate() {
        for exp in [OriginExponent::Zero, OriginExponent::Half] {
            let s = series_origin(&qp(), exp, 60).unwrap();
            assert!(s.max_residual(0.5, 64) < 1e-12, "{exp:?} {}", s.max_residual(0.5, 64));
            assert!(s.max_reduced_residual(0.5, 64) < 1e-12);
            // The neighbouring singular point z = -1 fixes the rate: one more term halves the tail.
            let a = series_origin(&qp(), exp, 40).unwrap().max_reduced_residual(0.5, 64);
            let b = series_origin(&qp(), exp, 41).unwrap().max_reduced_residual(0.5, 64);
            assert!((a / b - 2.0).abs() < 0.2, "{}", a / b);
        }
    }

    #[test]
    fn truncation_residual_matches_high_precision_value() {
        // 40-digit evaluation of the same truncated series at |z| = 0.5 gives 7.950492e-9.
        let s = series_origin(&qp(), OriginExponent::Zero, 40).unwrap();
        let r = s.max_residual(0.5, 64);
        assert!((r / 7.950492209002147e-9 - 1.0).abs() < 1e-4, "{r}");
    }

    #[test]
    fn low_order_coefficients_match_hand_recurrence() {
        // k = 1: 2(1+r)(1+2r) c₁ = -(8r² + ℓ² - 𝓔̃) c₀ for the z = 0 series.
        let q = qp();
        let s0 = series_origin(&q, OriginExponent::Zero, 6).unwrap();
        assert!((s0.coefficients[1] - (q.cal_e_tilde - 4.0) / 2.0).abs() < 1e-15);
        let s1 = series_origin(&q, OriginExponent::Half, 6).unwrap();
        assert!((s1.coefficients[1] - (q.cal_e_tilde - 6.0) / 6.0).abs() < 1e-15);
    }

    #[test]
    fn pole_series_residual_small() {
        let f = SpheroidalForm { lambda_p: 7.3, mu: 2, gamma2: -1.5 };
        for pole in [1i8, -1] {
            let s = series_regular_singular(SeriesEquation::Spheroidal(f), SeriesPoint::SpheroidalPole(pole), 40).unwrap();
            assert!(s.max_residual(1.0, 64) < 1e-10, "{}", s.max_residual(1.0, 64));
        }
        let s = series_regular_singular(SeriesEquation::RadialZ(qp()), SeriesPoint::RadialMinusOne, 40).unwrap();
        assert!(s.max_residual(0.5, 64) < 1e-10, "{}", s.max_residual(0.5, 64));
    }

    #[test]
    fn negative_branch_breaks_down() {
        let q = QuantumParams::new(0.3, 0.0, 1.7, 2);
        let (local, ..) = local_problem(&SeriesEquation::RadialZ(q), SeriesPoint::RadialMinusOne).unwrap();
        assert!(matches!(local.coefficients(Rational::from_integer(-1), 10), Err(Error::RecurrenceBreakdown { index: 2 })));
    }

    #[test]
    fn spheroidal_origin_parity() {
        let f = SpheroidalForm { lambda_p: 3.0f64, mu: 1, gamma2: 0.8 };
        let even = spheroidal_origin_series(&f, Parity::Even, 40).unwrap();
        let odd = spheroidal_origin_series(&f, Parity::Odd, 40).unwrap();
        for x in [0.1, 0.3, 0.45] {
            let (a, _, _) = even.eval(x).unwrap();
            let (b, _, _) = even.eval(-x).unwrap();
            let (c, _, _) = odd.eval(x).unwrap();
            let (d, _, _) = odd.eval(-x).unwrap();
            assert!((a - b).abs() < 1e-14 && (c + d).abs() < 1e-14);
        }
    }

    #[test]
    fn real_and_complex_evaluation_agree() {
        let s = series_origin(&qp(), OriginExponent::Half, 30).unwrap();
        let (p, dp, d2p) = s.eval(0.3).unwrap();
        let (cp, cdp, cd2p) = s.eval_complex(Complex::new(0.3, 0.0));
        assert!((p - cp.re).abs() < 1e-14 && (dp - cdp.re).abs() < 1e-13 && (d2p - cd2p.re).abs() < 1e-12);
        assert!(s.eval(-0.3).is_none());
    }
}
