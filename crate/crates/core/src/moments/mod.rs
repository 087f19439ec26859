//! Mixed moments of `(s_1, s_2, s_3)` over `W(n, n, n)` and their Gaussian limit.
//!
//! Exact moments come from running the counting recurrence on truncated
//! series in `p_t = q_t - 1` (see [`crate::laurent::TruncatedSeries`]). They are
//! polynomials in `n`, recovered by exact interpolation. After dividing each
//! factor by `σ(n) = sqrt(n^2 (2n + 1) / 3)` they converge to the moments of a
//! standardized trivariate Gaussian with all pairwise correlations `-1/2`,
//! which the Wick pairing sum evaluates exactly.

mod gaussian;
mod interp;

pub use gaussian::{
    correlation_from_precision, covariance_from_precision, diagonal_closed_form,
    gaussian_integral, gaussian_moment, gaussian_moment_by_expansion, gaussian_scaled_limit,
    limit_correlation, normalization_constant, NormalizationConstant,
};
pub use interp::{evaluate, interpolate};

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::engine::{compute_f, AppendRule, Caps, CyclicStats};
use crate::error::{Error, Result};
use crate::laurent::{TruncatedSeries, Truncation};
use crate::scalar::{rational_to_f64, Scalar};
use crate::words::multinomial;
use crate::{Rational, Series};

/// Exponents `(i_1, i_2, i_3)` of `E[s_1^{i_1} s_2^{i_2} s_3^{i_3}]`.
pub type Order = [u32; 3];

fn total(order: &Order) -> u32 {
    order.iter().sum()
}

/// Series of `F(n, n, n)(1 + p)` for `n = 0..=n_max`, one shared table.
pub fn diagonal_series(n_max: u32, trunc: Arc<Truncation>) -> Result<Vec<Series>> {
    if trunc.k() != 3 {
        return Err(Error::Dimension {
            expected: 3,
            got: trunc.k(),
        });
    }
    let side = n_max as usize + 1;
    let idx = |b: &[u32]| (b[0] as usize * side + b[1] as usize) * side + b[2] as usize;
    let mut out: Vec<Option<Series>> = vec![None; side];
    let mut prev: HashMap<usize, Series> = HashMap::new();
    for n in 0..=(3 * n_max) {
        let layer: Vec<[u32; 3]> = (0..=n_max.min(n))
            .flat_map(|a| (0..=n_max.min(n - a)).map(move |b| [a, b, n - a - b]))
            .filter(|b| b[2] <= n_max)
            .collect();
        let computed: Vec<Series> = layer
            .par_iter()
            .map(|b| -> Result<Series> {
                if n == 0 {
                    return Ok(TruncatedSeries::one(trunc.clone()));
                }
                let mut acc = TruncatedSeries::zero(trunc.clone());
                let mut below = *b;
                for j in 0..3 {
                    if b[j] == 0 {
                        continue;
                    }
                    let mut d = [0i32; 3];
                    CyclicStats.shift(b, j, &mut d);
                    below[j] -= 1;
                    let src = &prev[&idx(&below)];
                    below[j] += 1;
                    let delta: Vec<i64> = d.iter().map(|&x| x as i64).collect();
                    acc.add_assign(&src.mul_binomial(&delta)?)?;
                }
                Ok(acc)
            })
            .collect::<Result<Vec<_>>>()?;
        for (b, s) in layer.iter().zip(&computed) {
            if b[0] == b[1] && b[1] == b[2] {
                out[b[0] as usize] = Some(s.clone());
            }
        }
        prev = layer.iter().map(|b| idx(b)).zip(computed).collect();
    }
    Ok(out.into_iter().map(|s| s.expect("diagonal visited")).collect())
}

/// Smallest truncation that resolves every order in `orders`.
pub fn truncation_for(orders: &[Order]) -> Truncation {
    let degree = orders.iter().map(total).max().unwrap_or(0);
    let caps = (0..3)
        .map(|t| orders.iter().map(|o| o[t]).max().unwrap_or(0))
        .collect();
    Truncation::with_caps(degree, caps)
}

/// `table[n - 1][i] = E[s^{orders[i]}]` over `W(n, n, n)` for `n = 1..=n_max`.
pub fn exact_moments_diagonal(n_max: u32, orders: &[Order]) -> Result<Vec<Vec<Rational>>> {
    let trunc = Arc::new(truncation_for(orders));
    let series = diagonal_series(n_max, trunc)?;
    (1..=n_max)
        .map(|n| {
            let words = BigInt::from(multinomial(&[n, n, n]));
            orders
                .iter()
                .map(|o| {
                    let raw = series[n as usize].moment(o)?;
                    Ok(BigRational::new(raw, words.clone()))
                })
                .collect()
        })
        .collect()
}

/// `E[s_1^{i_1} s_2^{i_2} s_3^{i_3}]` over `W(n, n, n)`, exactly.
pub fn exact_moment(n: u32, order: Order) -> Result<Rational> {
    if n == 0 {
        return Err(Error::InvalidInput("n must be at least 1".into()));
    }
    Ok(exact_moments_diagonal(n, &[order])?
        .pop()
        .and_then(|mut row| row.pop())
        .expect("one row, one order"))
}

/// The same moment from the full weight enumerator; only sensible for small `n`.
pub fn exact_moment_via_poly(n: u32, order: Order, caps: &Caps) -> Result<Rational> {
    let f = compute_f(&[n, n, n], caps)?;
    let raw = f.moment(&order)?;
    Ok(BigRational::new(raw, BigInt::from(multinomial(&[n, n, n]))))
}

/// Closed form of a mixed moment as a polynomial in `n` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentPolynomial {
    pub order: Order,
    /// Ascending powers of `n`.
    pub coeffs: Vec<Rational>,
}

impl MomentPolynomial {
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn eval(&self, n: u32) -> Rational {
        evaluate(&self.coeffs, &BigRational::from_i64(n as i64))
    }

    /// Coefficients from the leading power down to the constant term.
    pub fn descending(&self) -> Vec<Rational> {
        let d = self.degree().map_or(0, |d| d + 1);
        self.coeffs[..d].iter().rev().cloned().collect()
    }

    /// Writes the polynomial as `content * n^shift * P(n)` with `P` a primitive
    /// integer polynomial with positive leading coefficient, returned in
    /// descending powers.
    pub fn factored_parts(&self) -> (Rational, u32, Vec<BigInt>) {
        let Some(deg) = self.degree() else {
            return (Rational::zero(), 0, vec![BigInt::zero()]);
        };
        let shift = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let core = &self.coeffs[shift..=deg];
        let den_lcm = core
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = core
            .iter()
            .map(|c| (c * BigRational::from_integer(den_lcm.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if ints.last().is_some_and(|l| l.is_negative()) {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().rev().map(|x| x / &g).collect();
        let content = BigRational::new(g, den_lcm);
        (content, shift as u32, prim)
    }

    /// Human-readable factored form, e.g. `1/3 * n^2 * (2*n + 1)`.
    pub fn factored(&self) -> String {
        let (content, shift, prim) = self.factored_parts();
        if content.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        if !content.is_one() {
            parts.push(content.to_string());
        }
        match shift {
            0 => {}
            1 => parts.push("n".into()),
            s => parts.push(format!("n^{s}")),
        }
        let d = prim.len() - 1;
        let body = poly_string(&prim, d);
        if d > 0 {
            parts.push(format!("({body})"));
        } else if body != "1" || parts.is_empty() {
            parts.push(body);
        }
        parts.join(" * ")
    }
}

fn poly_string(desc: &[BigInt], deg: usize) -> String {
    let mut s = String::new();
    for (i, c) in desc.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let p = deg - i;
        let neg = c.is_negative();
        let a = c.abs();
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        let mono = match p {
            0 => String::new(),
            1 => "n".into(),
            _ => format!("n^{p}"),
        };
        if mono.is_empty() {
            s.push_str(&a.to_string());
        } else if a.is_one() {
            s.push_str(&mono);
        } else {
            s.push_str(&format!("{a}*{mono}"));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for MomentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.factored())
    }
}

/// Degree bound used when none is given: `ceil(3 (i_1 + i_2 + i_3) / 2) + 2`.
pub fn default_degree_bound(order: Order) -> u32 {
    (3 * total(&order)).div_ceil(2) + 2
}

/// Number of held-out points checked after interpolation.
pub const VERIFICATION_POINTS: u32 = 3;

/// Interpolates the moment through `n = 1..=bound + 1` and checks it at
/// `VERIFICATION_POINTS` further values of `n`.
pub fn fit_moment_polynomial(order: Order, degree_bound: Option<u32>) -> Result<MomentPolynomial> {
    let bound = degree_bound.unwrap_or_else(|| default_degree_bound(order));
    let fit_points = bound + 1;
    let n_max = fit_points + VERIFICATION_POINTS;
    let values: Vec<Rational> = exact_moments_diagonal(n_max, &[order])?
        .into_iter()
        .map(|mut row| row.pop().expect("one order"))
        .collect();
    fit_from_values(order, bound, &values)
}

/// Fits against precomputed values `values[n - 1]`, `n = 1..`.
pub fn fit_from_values(order: Order, bound: u32, values: &[Rational]) -> Result<MomentPolynomial> {
    let fit_points = bound as usize + 1;
    if values.len() < fit_points + VERIFICATION_POINTS as usize {
        return Err(Error::InvalidInput(format!(
            "need {} values, got {}",
            fit_points + VERIFICATION_POINTS as usize,
            values.len()
        )));
    }
    let xs: Vec<Rational> = (1..=fit_points as i64).map(BigRational::from_i64).collect();
    let mut coeffs = interpolate(&xs, &values[..fit_points]);
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    let poly = MomentPolynomial { order, coeffs };
    for (i, v) in values.iter().enumerate().skip(fit_points) {
        let n = i as u32 + 1;
        if poly.eval(n) != *v {
            return Err(Error::DegreeBound { order, bound, n });
        }
    }
    Ok(poly)
}

/// `σ(n)^2 = n^2 (2n + 1) / 3`, the variance of each statistic.
pub fn variance_closed_form(n: u32) -> Rational {
    let n = BigInt::from(n);
    BigRational::new(&n * &n * (BigInt::from(2) * &n + 1), BigInt::from(3))
}

/// `-n^3 / 3`.
pub fn covariance_closed_form(n: u32) -> Rational {
    BigRational::new(-BigInt::from(n).pow(3), BigInt::from(3))
}

/// `3 (10 n^2 - n - 4) / (5 n (2n + 1))`.
pub fn kurtosis_closed_form(n: u32) -> Rational {
    let n = BigInt::from(n);
    BigRational::new(
        BigInt::from(3) * (BigInt::from(10) * &n * &n - &n - 4),
        BigInt::from(5) * &n * (BigInt::from(2) * &n + 1),
    )
}

/// `E[s^4] / E[s^2]^2` for a single statistic, from exact moments.
pub fn kurtosis(n: u32) -> Result<Rational> {
    let row = exact_moments_diagonal(n, &[[0, 0, 4], [0, 0, 2]])?
        .pop()
        .expect("n >= 1");
    Ok(&row[0] / (&row[1] * &row[1]))
}

/// Correlation of two distinct statistics, from exact moments.
pub fn correlation(n: u32) -> Result<Rational> {
    let row = exact_moments_diagonal(n, &[[0, 1, 1], [0, 0, 2]])?
        .pop()
        .expect("n >= 1");
    Ok(&row[0] / &row[1])
}

/// A moment divided by `σ(n)` per factor: `ratio * σ(n)^sigma_power`, exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledMoment {
    pub ratio: Rational,
    /// 0 for even total order, 1 for odd.
    pub sigma_power: u32,
    pub variance: Rational,
}

impl ScaledMoment {
    pub fn to_f64(&self) -> f64 {
        let r = rational_to_f64(&self.ratio);
        if self.sigma_power == 0 {
            r
        } else {
            r * rational_to_f64(&self.variance).sqrt()
        }
    }
}

pub fn scale_moment(n: u32, order: Order, moment: Rational) -> ScaledMoment {
    let var = variance_closed_form(n);
    let t = total(&order);
    let half = t.div_ceil(2);
    let mut den = BigRational::one();
    for _ in 0..half {
        den *= &var;
    }
    ScaledMoment {
        ratio: moment / den,
        sigma_power: t % 2,
        variance: var,
    }
}

/// `E[s^order] / σ(n)^{i_1 + i_2 + i_3}`.
pub fn scaled_moment(n: u32, order: Order) -> Result<ScaledMoment> {
    Ok(scale_moment(n, order, exact_moment(n, order)?))
}

/// Scaled moments for `n = 1..=n_max`, sharing one table.
pub fn scaled_moments_diagonal(n_max: u32, order: Order) -> Result<Vec<ScaledMoment>> {
    Ok(exact_moments_diagonal(n_max, &[order])?
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| scale_moment(i as u32 + 1, order, row.pop().expect("one order")))
        .collect())
}
