//! The limiting trivariate Gaussian.
//!
//! The candidate limit density is proportional to
//! `exp(-(x^2 + y^2 + z^2)/2 - c (xy + xz + yz))`, i.e. a centered Gaussian
//! whose precision matrix has unit diagonal and off-diagonal `c`. Its
//! correlation is `-c / (1 + c)`, which tends to `-1/2` as `c -> 1-`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Order;
use crate::error::{Error, Result};
use crate::scalar::{rational_to_f64, Scalar};
use crate::Rational;

/// Wick/Isserlis sum for a standardized Gaussian vector with every pairwise
/// correlation equal to `r`: the sum over perfect matchings of the label
/// multiset of the product of pair correlations.
///
/// Matchings are counted by label multiplicities, so the cost is polynomial in
/// the order rather than `(|order| - 1)!!`.
pub fn gaussian_moment<T: Scalar>(order: &[u32], r: &T) -> T {
    if order.iter().sum::<u32>() % 2 == 1 {
        return T::zero();
    }
    let mut memo = HashMap::new();
    matchings(order.to_vec(), r, &mut memo)
}

// Pairs one copy of the first remaining label with every possible partner.
fn matchings<T: Scalar>(mut counts: Vec<u32>, r: &T, memo: &mut HashMap<Vec<u32>, T>) -> T {
    let Some(first) = counts.iter().position(|&c| c > 0) else {
        return T::one();
    };
    if let Some(v) = memo.get(&counts) {
        return v.clone();
    }
    let key = counts.clone();
    counts[first] -= 1;
    let mut sum = T::zero();
    for t in first..counts.len() {
        let c = counts[t];
        if c == 0 {
            continue;
        }
        let w = if t == first { T::one() } else { r.clone() };
        counts[t] -= 1;
        let rest = matchings(counts.clone(), r, memo);
        counts[t] += 1;
        sum = sum + T::from_i64(c as i64) * w * rest;
    }
    memo.insert(key, sum.clone());
    sum
}

/// Independent route to the same moments: coefficient extraction from
/// `exp(t^T Σ t / 2)` with unit variances and correlation `r`, in three variables.
///
/// With `a, b, c` copies of the square terms and `d, e, f` of the cross terms
/// `t1 t2, t1 t3, t2 t3`, the moment is
/// `i1! i2! i3! Σ (1/2)^{a+b+c} r^{d+e+f} / (a! b! c! d! e! f!)`.
pub fn gaussian_moment_by_expansion(order: Order, r: &Rational) -> Rational {
    let [i1, i2, i3] = order;
    if (i1 + i2 + i3) % 2 == 1 {
        return Rational::zero();
    }
    let fact = |n: u32| -> BigInt { (1..=n).fold(BigInt::one(), |acc, j| acc * j) };
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let pow = |x: &Rational, e: u32| -> Rational {
        (0..e).fold(Rational::one(), |acc, _| acc * x)
    };
    let mut sum = Rational::zero();
    for d in 0..=i1.min(i2) {
        for e in 0..=(i1 - d).min(i3) {
            let f_max = (i2 - d).min(i3 - e);
            for f in 0..=f_max {
                let (ra, rb, rc) = (i1 - d - e, i2 - d - f, i3 - e - f);
                if ra % 2 + rb % 2 + rc % 2 != 0 {
                    continue;
                }
                let (a, b, c) = (ra / 2, rb / 2, rc / 2);
                let den = fact(a) * fact(b) * fact(c) * fact(d) * fact(e) * fact(f);
                sum += pow(&half, a + b + c) * pow(r, d + e + f) / BigRational::from_integer(den);
            }
        }
    }
    sum * BigRational::from_integer(fact(i1) * fact(i2) * fact(i3))
}

/// The correlation of the limit law, `-c / (1 + c)` at `c = 1`.
pub fn limit_correlation() -> Rational {
    let c = Rational::one();
    -&c / (Rational::one() + &c)
}

/// Limit of the scaled mixed moment: the Wick sum with correlation `-1/2`.
pub fn gaussian_scaled_limit(order: Order) -> Rational {
    gaussian_moment(&order, &limit_correlation())
}

/// `(3n)! (2n)! / (8^n (n!)^2)`, the limit of the scaled moment of order `(2n, 2n, 2n)`.
pub fn diagonal_closed_form(n: u32) -> Rational {
    let fact = |m: u32| -> BigInt { (1..=m).fold(BigInt::one(), |acc, j| acc * j) };
    let nf = fact(n);
    BigRational::new(
        fact(3 * n) * fact(2 * n),
        BigInt::from(8).pow(n) * &nf * &nf,
    )
}

fn check_domain(c: &Rational) -> Result<()> {
    let lo = BigRational::new(BigInt::from(-1), BigInt::from(2));
    if *c <= lo || *c >= Rational::one() {
        return Err(Error::Domain(format!(
            "c = {c} is outside the positive-definite range (-1/2, 1)"
        )));
    }
    Ok(())
}

fn invert3(m: &[[Rational; 3]; 3]) -> Option<[[Rational; 3]; 3]> {
    let minor = |r0: usize, r1: usize, c0: usize, c1: usize| -> Rational {
        &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0]
    };
    let cof = [
        [minor(1, 2, 1, 2), -minor(1, 2, 0, 2), minor(1, 2, 0, 1)],
        [-minor(0, 2, 1, 2), minor(0, 2, 0, 2), -minor(0, 2, 0, 1)],
        [minor(0, 1, 1, 2), -minor(0, 1, 0, 2), minor(0, 1, 0, 1)],
    ];
    let det = &m[0][0] * &cof[0][0] + &m[0][1] * &cof[0][1] + &m[0][2] * &cof[0][2];
    if det.is_zero() {
        return None;
    }
    // inverse = adjugate / det, adjugate = cofactor transposed
    Some(std::array::from_fn(|i| {
        std::array::from_fn(|j| &cof[j][i] / &det)
    }))
}

/// Covariance of the density with precision matrix `[[1, c, c], [c, 1, c], [c, c, 1]]`.
pub fn covariance_from_precision(c: &Rational) -> Result<[[Rational; 3]; 3]> {
    check_domain(c)?;
    let p: [[Rational; 3]; 3] = std::array::from_fn(|i| {
        std::array::from_fn(|j| if i == j { Rational::one() } else { c.clone() })
    });
    invert3(&p).ok_or_else(|| Error::Domain(format!("precision matrix singular at c = {c}")))
}

/// Pairwise correlation implied by the precision parameter `c`, by exact inversion.
pub fn correlation_from_precision(c: &Rational) -> Result<Rational> {
    let cov = covariance_from_precision(c)?;
    Ok(&cov[0][1] / &cov[0][0])
}

/// `N(c) = (2π)^{3/2} / ((1 - c) sqrt(1 + 2c))`, held as `scale * (2π)^{3/2} / sqrt(radicand)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationConstant {
    /// `1 / (1 - c)`.
    pub scale: Rational,
    /// `1 + 2c`.
    pub radicand: Rational,
}

impl NormalizationConstant {
    pub fn to_f64(&self) -> f64 {
        (2.0 * PI).powf(1.5) * rational_to_f64(&self.scale) / rational_to_f64(&self.radicand).sqrt()
    }
}

impl fmt::Display for NormalizationConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(2*pi)^(3/2)")?;
        if !self.scale.is_one() {
            write!(f, " * {}", self.scale)?;
        }
        if !self.radicand.is_one() {
            write!(f, " / sqrt({})", self.radicand)?;
        }
        Ok(())
    }
}

/// The factor making the density integrate to one; defined for `-1/2 < c < 1`.
pub fn normalization_constant(c: &Rational) -> Result<NormalizationConstant> {
    check_domain(c)?;
    let one = Rational::one();
    Ok(NormalizationConstant {
        scale: &one / (&one - c),
        radicand: &one + BigRational::from_i64(2) * c,
    })
}

/// Trapezoid rule for `∫ exp(-(x^2+y^2+z^2)/2 - c(xy+xz+yz))` over `[-L, L]^3`.
///
/// For a Gaussian integrand the trapezoid rule converges geometrically in the
/// step size, so a modest grid gives near machine precision.
pub fn gaussian_integral(c: f64, half_width: f64, step: f64) -> f64 {
    let n = (2.0 * half_width / step).round() as i64;
    let h = 2.0 * half_width / n as f64;
    let xs: Vec<f64> = (0..=n).map(|i| -half_width + i as f64 * h).collect();
    let mut sum = 0.0;
    for &x in &xs {
        for &y in &xs {
            let base = -(x * x + y * y) / 2.0 - c * x * y;
            let lin = c * (x + y);
            let mut row = 0.0;
            for &z in &xs {
                row += (base - z * z / 2.0 - lin * z).exp();
            }
            sum += row;
        }
    }
    // endpoints contribute nothing measurable at the widths used
    sum * h * h * h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn wick_examples() {
        assert_eq!(gaussian_scaled_limit([0, 1, 1]), q(-1, 2));
        assert_eq!(gaussian_scaled_limit([2, 2, 2]), q(3, 2));
        assert_eq!(gaussian_scaled_limit([1, 2, 3]), q(-3, 4));
        assert_eq!(gaussian_scaled_limit([4, 5, 5]), q(-945, 4));
        assert_eq!(gaussian_scaled_limit([0, 0, 4]), q(3, 1));
        assert_eq!(gaussian_scaled_limit([0, 0, 3]), q(0, 1));
    }

    #[test]
    fn wick_matches_expansion() {
        for r in [q(-1, 2), q(1, 3), q(0, 1)] {
            for i in 0..=4 {
                for j in 0..=4 {
                    for k in 0..=4 {
                        assert_eq!(
                            gaussian_moment(&[i, j, k], &r),
                            gaussian_moment_by_expansion([i, j, k], &r),
                            "{i} {j} {k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn wick_in_floating_point() {
        let v = gaussian_moment(&[2, 2, 2], &-0.5f64);
        assert!((v - 1.5).abs() < 1e-12);
    }

    #[test]
    fn diagonal_values() {
        assert_eq!(diagonal_closed_form(0), q(1, 1));
        assert_eq!(diagonal_closed_form(1), q(3, 2));
        assert_eq!(diagonal_closed_form(2), q(135, 2));
    }

    #[test]
    fn precision_inversion_gives_correlation() {
        for c in [q(0, 1), q(1, 4), q(1, 2), q(99, 100), q(-1, 3), q(999_999, 1_000_000)] {
            let expected = -&c / (Rational::one() + &c);
            assert_eq!(correlation_from_precision(&c).unwrap(), expected);
        }
        assert_eq!(limit_correlation(), q(-1, 2));
        assert!(correlation_from_precision(&q(1, 1)).is_err());
        assert!(correlation_from_precision(&q(-1, 2)).is_err());
    }

    #[test]
    fn normalization_examples() {
        let n0 = normalization_constant(&q(0, 1)).unwrap();
        assert!((n0.to_f64() - (2.0 * PI).powf(1.5)).abs() < 1e-12);
        assert_eq!(n0.to_string(), "(2*pi)^(3/2)");
        let half = normalization_constant(&q(1, 2)).unwrap();
        assert_eq!(half.scale, q(2, 1));
        assert_eq!(half.radicand, q(2, 1));
        assert!(normalization_constant(&q(1, 1)).is_err());
        assert!(normalization_constant(&q(-3, 4)).is_err());
        let mut last = 0.0;
        for i in 0..20 {
            let c = q(1000 - 1000 / (i + 2), 1000);
            let v = normalization_constant(&c).unwrap().to_f64();
            assert!(v > last);
            last = v;
        }
    }

    #[test]
    fn quadrature_matches_closed_form() {
        for c in [0.0f64, 0.25] {
            let exact = (2.0 * PI).powf(1.5) / ((1.0 - c) * (1.0 + 2.0 * c).sqrt());
            let num = gaussian_integral(c, 9.0, 0.3);
            assert!((num - exact).abs() < 1e-8, "{c}: {num} vs {exact}");
        }
    }
}
