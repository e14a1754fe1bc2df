//! Direct integration of the radial equation in `t = sinh α` from `t = 0`.

use super::series::Parity;
use super::{ode_residual_plus, QuantumParams};
use crate::error::{Error, Result};
use crate::ode::{self, Control, Tolerances};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialSample<T> {
    pub t: T,
    pub psi: T,
    pub dpsi: T,
    pub d2psi: T,
    /// Residual of the radial equation divided by `max(|ψ|, |ψ'|, 1e-300)`.
    pub relative_residual: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialSolution<T> {
    pub parity: Parity,
    pub samples: Vec<RadialSample<T>>,
}

impl<T: Scalar> RadialSolution<T> {
    pub fn max_relative_residual(&self) -> T {
        self.samples.iter().fold(T::zero(), |m, s| m.max(s.relative_residual))
    }
}

fn second_derivative<T: Scalar>(t: T, psi: T, dpsi: T, qp: &QuantumParams<T>) -> T {
    let s = t * t + T::one();
    -ode_residual_plus(t, psi, dpsi, T::zero(), qp) / s
}

/// Integrates from `t = 0` with even (`ψ = 1, ψ' = 0`) or odd (`ψ = 0, ψ' = 1`) data and
/// samples `count` equally spaced points of `[0, t_max]`. `ψ''` at a sample comes from the
/// derivative of the dense output, so the residual measures interpolation quality too.
pub fn radial_solve<T: Scalar>(qp: &QuantumParams<T>, parity: Parity, t_max: T, count: usize, tol: T) -> Result<RadialSolution<T>> {
    let y0 = match parity {
        Parity::Even => [T::one(), T::zero()],
        Parity::Odd => [T::zero(), T::one()],
        Parity::None => return Err(Error::InvalidInput("radial data is even or odd".into())),
    };
    if !(t_max > T::zero()) || !(tol > T::zero()) || count < 2 {
        return Err(Error::InvalidInput("need t_max > 0, tol > 0 and at least two samples".into()));
    }
    if !(qp.cal_e.is_finite() && qp.cal_e_tilde.is_finite()) {
        return Err(Error::InvalidInput("parameters must be finite".into()));
    }
    let times: Vec<T> = (0..count)
        .map(|i| t_max * T::from_usize_lossy(i) / T::from_usize_lossy(count - 1))
        .collect();
    let rhs = |t: T, y: &[T; 2]| Ok([y[1], second_derivative(t, y[0], y[1], qp)]);
    let sample = |t: T, y: [T; 2], d2: T| {
        let scale = y[0].abs().max(y[1].abs()).max(T::min_positive_value());
        RadialSample {
            t,
            psi: y[0],
            dpsi: y[1],
            d2psi: d2,
            relative_residual: ode_residual_plus(t, y[0], y[1], d2, qp).abs() / scale,
        }
    };
    let mut samples = vec![sample(T::zero(), y0, second_derivative(T::zero(), y0[0], y0[1], qp))];
    let mut next = 1;
    ode::integrate(rhs, T::zero(), y0, t_max, &Tolerances::uniform(tol), |step| {
        while next < times.len() && times[next] <= step.t1 {
            let t = times[next];
            let y = step.eval(t);
            let dy = step.eval_derivative(t);
            samples.push(sample(t, y, dy[1]));
            next += 1;
        }
        Ok(Control::Continue)
    })?;
    if samples.len() != count {
        return Err(Error::StepFailure {
            t: t_max.to_f64().unwrap_or(f64::NAN),
            reason: "integration ended before the last sample".into(),
        });
    }
    Ok(RadialSolution { parity, samples })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_solution() {
        let qp = QuantumParams::new(0.0f64, 0.0, 0.0, 0);
        let sol = radial_solve(&qp, Parity::Even, 3.0, 31, 1e-12).unwrap();
        for s in &sol.samples {
            assert!((s.psi - 1.0).abs() < 1e-14 && s.dpsi.abs() < 1e-14);
        }
    }

    #[test]
    fn residual_is_small() {
        let qp = QuantumParams::new(-1.3, 0.0, 2.2, 1);
        for parity in [Parity::Even, Parity::Odd] {
            let sol = radial_solve(&qp, parity, 2.0, 41, 1e-12).unwrap();
            assert!(sol.max_relative_residual() < 1e-8, "{}", sol.max_relative_residual());
        }
    }

    #[test]
    fn parity_under_reflection() {
        // Integrating the even solution towards negative t gives the mirror image.
        let qp = QuantumParams::new(0.9, 0.0, 1.4, 2);
        let fwd = radial_solve(&qp, Parity::Even, 1.5, 16, 1e-12).unwrap();
        let rhs = |t: f64, y: &[f64; 2]| Ok([y[1], second_derivative(t, y[0], y[1], &qp)]);
        let mut back = Vec::new();
        ode::integrate(rhs, 0.0, [1.0, 0.0], -1.5, &Tolerances::uniform(1e-12), |step| {
            back.push((step.t1, step.y1[0]));
            Ok(Control::Continue)
        })
        .unwrap();
        let (t_end, psi_end) = *back.last().unwrap();
        assert_eq!(t_end, -1.5);
        assert!((psi_end - fwd.samples.last().unwrap().psi).abs() < 1e-9);
    }
}
