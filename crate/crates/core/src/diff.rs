//! Richardson-extrapolated central differences.

use crate::error::Result;
use crate::linalg::Vec3;
use crate::scalar::{lit, Scalar};

/// Derivative of `f` at `x` from central differences with steps `h` and `h/2`,
/// combined to cancel the `O(h²)` error term.
pub fn central<T: Scalar>(f: impl Fn(T) -> T, x: T, h: T) -> T {
    let half = h * lit(0.5);
    let coarse = (f(x + h) - f(x - h)) / (h + h);
    let fine = (f(x + half) - f(x - half)) / h;
    (fine * lit(4.0) - coarse) / lit(3.0)
}

/// Fallible variant of [`central`].
pub fn try_central<T: Scalar>(f: impl Fn(T) -> Result<T>, x: T, h: T) -> Result<T> {
    let half = h * lit(0.5);
    let coarse = (f(x + h)? - f(x - h)?) / (h + h);
    let fine = (f(x + half)? - f(x - half)?) / h;
    Ok((fine * lit(4.0) - coarse) / lit(3.0))
}

/// Cartesian gradient of a scalar field.
pub fn try_gradient<T: Scalar>(f: impl Fn(&Vec3<T>) -> Result<T>, x: &Vec3<T>, h: T) -> Result<Vec3<T>> {
    let mut g = Vec3::zero();
    for i in 0..3 {
        let e = Vec3::basis(i);
        g.0[i] = try_central(|t| f(&(*x + e * t)), T::zero(), h)?;
    }
    Ok(g)
}
