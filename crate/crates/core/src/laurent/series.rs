//! Truncated multivariate power series in the shift variables `p_t = q_t - 1`.
//!
//! Substituting `q_t = 1 + p_t` turns a monomial `q^s` into
//! `∏ (1 + p_t)^{s_t} = Σ_m ∏ C(s_t, m_t) p^m`, so the coefficient of `p^m` in
//! a weight enumerator is the sum over words of `∏ C(s_t, m_t)`: the mixed
//! factorial moment divided by `∏ m_t!`. Only low-degree coefficients are ever
//! needed, so everything above the truncation is discarded as it is produced.

use std::ops::Mul;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Coefficient;

/// Which monomials `p^m` a series retains: `Σ m_t <= degree` and `m_t <= caps[t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    degree: u32,
    caps: Vec<u32>,
    strides: Vec<usize>,
    size: usize,
    // (dense index, total degree, exponents) for every retained monomial
    slots: Vec<(usize, u32, Vec<u32>)>,
}

impl Truncation {
    /// Keeps every monomial of total degree at most `degree`.
    pub fn total(k: usize, degree: u32) -> Self {
        Self::with_caps(degree, vec![degree; k])
    }

    /// Total-degree truncation intersected with per-variable caps.
    pub fn with_caps(degree: u32, caps: Vec<u32>) -> Self {
        let caps: Vec<u32> = caps.into_iter().map(|c| c.min(degree)).collect();
        let mut strides = vec![0usize; caps.len()];
        let mut size = 1usize;
        for t in (0..caps.len()).rev() {
            strides[t] = size;
            size *= caps[t] as usize + 1;
        }
        let mut slots = Vec::new();
        for idx in 0..size {
            let mut rest = idx;
            let m: Vec<u32> = strides
                .iter()
                .zip(&caps)
                .map(|(&s, &c)| {
                    let v = rest / s;
                    rest %= s;
                    debug_assert!(v as u32 <= c);
                    v as u32
                })
                .collect();
            let tot: u32 = m.iter().sum();
            if tot <= degree {
                slots.push((idx, tot, m));
            }
        }
        Self {
            degree,
            caps,
            strides,
            size,
            slots,
        }
    }

    pub fn k(&self) -> usize {
        self.caps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn admits(&self, m: &[u32]) -> bool {
        m.len() == self.k()
            && m.iter().sum::<u32>() <= self.degree
            && m.iter().zip(&self.caps).all(|(a, c)| a <= c)
    }

    fn index(&self, m: &[u32]) -> usize {
        m.iter()
            .zip(&self.strides)
            .map(|(&x, &s)| x as usize * s)
            .sum()
    }

    /// Number of retained monomials.
    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }
}

/// A power series in `p_1..p_k` truncated to a fixed [`Truncation`].
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<C> {
    trunc: Arc<Truncation>,
    coeffs: Vec<C>,
}

impl<C> TruncatedSeries<C>
where
    C: Coefficient,
    for<'a> &'a C: Mul<&'a C, Output = C>,
{
    pub fn zero(trunc: Arc<Truncation>) -> Self {
        let coeffs = vec![C::zero(); trunc.size];
        Self { trunc, coeffs }
    }

    pub fn one(trunc: Arc<Truncation>) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = C::one();
        s
    }

    pub fn truncation(&self) -> &Arc<Truncation> {
        &self.trunc
    }

    /// Coefficient of `p^m`; zero outside the truncation.
    pub fn coeff(&self, m: &[u32]) -> C {
        if self.trunc.admits(m) {
            self.coeffs[self.trunc.index(m)].clone()
        } else {
            C::zero()
        }
    }

    pub fn set_coeff(&mut self, m: &[u32], c: C) -> Result<()> {
        if !self.trunc.admits(m) {
            return Err(Error::InvalidInput(format!(
                "monomial {m:?} lies outside the truncation"
            )));
        }
        let i = self.trunc.index(m);
        self.coeffs[i] = c;
        Ok(())
    }

    /// Nonzero terms as `(exponents, coefficient)`, in index order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &C)> + '_ {
        self.trunc
            .slots
            .iter()
            .filter(|(i, _, _)| !self.coeffs[*i].is_zero())
            .map(|(i, _, m)| (m.as_slice(), &self.coeffs[*i]))
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::InvalidInput("series truncations differ".into()));
        }
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !b.is_zero() {
                *a += b.clone();
            }
        }
        Ok(())
    }

    /// Multiplies by `∏ (1 + p_t)^{delta_t}`, discarding everything beyond the truncation.
    ///
    /// Negative `delta_t` use the generalized binomial series.
    pub fn mul_binomial(&self, delta: &[i64]) -> Result<Self> {
        if delta.len() != self.trunc.k() {
            return Err(Error::Dimension {
                expected: self.trunc.k(),
                got: delta.len(),
            });
        }
        let mut cur = self.clone();
        for (t, &d) in delta.iter().enumerate() {
            if d != 0 {
                cur = cur.mul_axis(t, d)?;
            }
        }
        Ok(cur)
    }

    fn mul_axis(&self, t: usize, d: i64) -> Result<Self> {
        let tr = &self.trunc;
        let cap = tr.caps[t];
        let binoms = (0..=cap)
            .map(|j| {
                C::from_bigint(&generalized_binomial(d, j)).ok_or_else(|| {
                    Error::InvalidInput(format!("C({d}, {j}) not representable in coefficient type"))
                })
            })
            .collect::<Result<Vec<C>>>()?;
        let stride = tr.strides[t];
        let mut out = vec![C::zero(); tr.size];
        for (idx, tot, m) in &tr.slots {
            let c = &self.coeffs[*idx];
            if c.is_zero() {
                continue;
            }
            let room = (cap - m[t]).min(tr.degree - tot);
            for (j, b) in binoms.iter().enumerate().take(room as usize + 1) {
                if !b.is_zero() {
                    out[idx + j * stride] += c * b;
                }
            }
        }
        Ok(Self {
            trunc: self.trunc.clone(),
            coeffs: out,
        })
    }

    /// Power moment `Σ_w ∏ s_t(w)^{order_t}` recovered from the factorial-moment
    /// coefficients through Stirling numbers of the second kind:
    /// `x^i = Σ_j S(i, j) j! C(x, j)`.
    pub fn moment(&self, order: &[u32]) -> Result<C> {
        let tr = &self.trunc;
        if order.len() != tr.k() {
            return Err(Error::Dimension {
                expected: tr.k(),
                got: order.len(),
            });
        }
        let need: u32 = order.iter().sum();
        if need > tr.degree {
            return Err(Error::Precision {
                need,
                have: tr.degree,
            });
        }
        if let Some((&o, &c)) = order.iter().zip(&tr.caps).find(|(o, c)| o > c) {
            return Err(Error::Precision { need: o, have: c });
        }
        let max = *order.iter().max().unwrap_or(&0);
        let s2 = stirling2_table(max);
        let fact: Vec<BigInt> = (0..=max)
            .scan(BigInt::one(), |f, j| {
                if j > 0 {
                    *f *= BigInt::from(j);
                }
                Some(f.clone())
            })
            .collect();

        let mut total = C::zero();
        let mut j = vec![0u32; order.len()];
        loop {
            let mut w = BigInt::one();
            for (t, &jt) in j.iter().enumerate() {
                w *= &s2[order[t] as usize][jt as usize] * &fact[jt as usize];
            }
            if !w.is_zero() {
                let c = self.coeff(&j);
                if !c.is_zero() {
                    let w = C::from_bigint(&w).ok_or_else(|| {
                        Error::InvalidInput("Stirling weight not representable".into())
                    })?;
                    total += &c * &w;
                }
            }
            // odometer over 0..=order[t]
            let mut t = 0;
            loop {
                if t == j.len() {
                    return Ok(total);
                }
                if j[t] < order[t] {
                    j[t] += 1;
                    break;
                }
                j[t] = 0;
                t += 1;
            }
        }
    }
}

/// `C(n, j) = n (n-1) .. (n-j+1) / j!` for any integer `n`.
pub fn generalized_binomial(n: i64, j: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j as i64 {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// `S(i, j)` for `0 <= j <= i <= max`.
pub fn stirling2_table(max: u32) -> Vec<Vec<BigInt>> {
    let n = max as usize;
    let mut s = vec![vec![BigInt::zero(); n + 1]; n + 1];
    s[0][0] = BigInt::one();
    for i in 1..=n {
        for j in 1..=i {
            s[i][j] = BigInt::from(j) * &s[i - 1][j] + &s[i - 1][j - 1];
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{RationalSeries, Series};
    use num_rational::BigRational;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn binomial_of_one_plus_p() {
        let tr = Arc::new(Truncation::total(3, 2));
        let s = Series::one(tr.clone()).mul_binomial(&[1, 0, 0]).unwrap();
        let terms: Vec<_> = s.terms().map(|(m, c)| (m.to_vec(), c.clone())).collect();
        assert_eq!(terms, vec![(vec![0, 0, 0], bi(1)), (vec![1, 0, 0], bi(1))]);
    }

    #[test]
    fn inverse_binomial_series() {
        let tr = Arc::new(Truncation::total(3, 2));
        let s = Series::one(tr).mul_binomial(&[-1, 0, 0]).unwrap();
        assert_eq!(s.coeff(&[0, 0, 0]), bi(1));
        assert_eq!(s.coeff(&[1, 0, 0]), bi(-1));
        assert_eq!(s.coeff(&[2, 0, 0]), bi(1));
        assert_eq!(s.terms().count(), 3);
    }

    #[test]
    fn zero_shift_is_identity() {
        let tr = Arc::new(Truncation::total(3, 3));
        let s = Series::one(tr).mul_binomial(&[2, -3, 1]).unwrap();
        assert_eq!(s.mul_binomial(&[0, 0, 0]).unwrap(), s);
    }

    #[test]
    fn truncation_drops_high_degree() {
        let tr = Arc::new(Truncation::total(2, 3));
        let s = Series::one(tr).mul_binomial(&[5, 5]).unwrap();
        for (m, _) in s.terms() {
            assert!(m.iter().sum::<u32>() <= 3);
        }
        // [p1^2 p2] (1+p1)^5 (1+p2)^5 = 10 * 5
        assert_eq!(s.coeff(&[2, 1]), bi(50));
    }

    #[test]
    fn caps_restrict_each_variable() {
        let tr = Arc::new(Truncation::with_caps(4, vec![1, 3]));
        let s = Series::one(tr).mul_binomial(&[3, 3]).unwrap();
        assert_eq!(s.coeff(&[2, 0]), bi(0));
        assert_eq!(s.coeff(&[1, 3]), bi(3));
        assert_eq!(s.coeff(&[0, 3]), bi(1));
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(generalized_binomial(5, 2), bi(10));
        assert_eq!(generalized_binomial(-1, 3), bi(-1));
        assert_eq!(generalized_binomial(-3, 2), bi(6));
        assert_eq!(generalized_binomial(2, 3), bi(0));
        assert_eq!(generalized_binomial(7, 0), bi(1));
    }

    #[test]
    fn stirling_numbers() {
        let s = stirling2_table(5);
        assert_eq!(s[4][2], bi(7));
        assert_eq!(s[5][3], bi(25));
        assert_eq!(s[3][0], bi(0));
    }

    #[test]
    fn moment_of_single_monomial() {
        // q1^3 q2^-2: power moment of order (2,3) is 9 * (-8)
        let tr = Arc::new(Truncation::total(2, 5));
        let s = Series::one(tr).mul_binomial(&[3, -2]).unwrap();
        assert_eq!(s.moment(&[2, 3]).unwrap(), bi(-72));
        assert_eq!(s.moment(&[0, 0]).unwrap(), bi(1));
    }

    #[test]
    fn moment_needs_enough_degree() {
        let tr = Arc::new(Truncation::total(2, 2));
        let s = Series::one(tr);
        assert_eq!(s.moment(&[2, 1]).unwrap_err(), Error::Precision { need: 3, have: 2 });
        let capped = Series::one(Arc::new(Truncation::with_caps(4, vec![1, 4])));
        assert!(matches!(capped.moment(&[2, 0]), Err(Error::Precision { .. })));
    }

    #[test]
    fn rational_coefficients_work_too() {
        let tr = Arc::new(Truncation::total(2, 4));
        let s = RationalSeries::one(tr).mul_binomial(&[-4, 2]).unwrap();
        assert_eq!(
            s.moment(&[2, 2]).unwrap(),
            BigRational::from_integer(bi(64))
        );
    }
}
