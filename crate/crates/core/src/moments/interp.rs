//! Polynomial interpolation over an exact (or floating) field.

use crate::scalar::Scalar;

/// Coefficients (ascending powers) of the unique polynomial of degree
/// `< xs.len()` through the points `(xs[i], ys[i])`.
///
/// Newton divided differences, then expansion of the Newton form.
///
/// # Panics
///
/// If the lengths differ or two abscissae coincide.
pub fn interpolate<T: Scalar>(xs: &[T], ys: &[T]) -> Vec<T> {
    assert_eq!(xs.len(), ys.len(), "one ordinate per abscissa");
    let n = xs.len();
    let mut dd: Vec<T> = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let den = xs[i].clone() - xs[i - level].clone();
            assert!(!den.is_zero(), "repeated abscissa");
            dd[i] = (dd[i].clone() - dd[i - 1].clone()) / den;
        }
    }
    // Horner on the Newton form: p = dd[n-1]; p = p (x - xs[i]) + dd[i]
    let mut coeffs: Vec<T> = vec![T::zero(); n.max(1)];
    if n == 0 {
        return coeffs;
    }
    coeffs[0] = dd[n - 1].clone();
    for (len, i) in (1..).zip((0..n - 1).rev()) {
        // multiply by (x - xs[i])
        coeffs[len] = T::zero();
        for j in (1..=len).rev() {
            coeffs[j] = coeffs[j - 1].clone() - xs[i].clone() * coeffs[j].clone();
        }
        coeffs[0] = T::zero() - xs[i].clone() * coeffs[0].clone();
        coeffs[0] = coeffs[0].clone() + dd[i].clone();
    }
    coeffs
}

/// Evaluates ascending coefficients at `x`.
pub fn evaluate<T: Scalar>(coeffs: &[T], x: &T) -> T {
    coeffs
        .iter()
        .rev()
        .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
}
