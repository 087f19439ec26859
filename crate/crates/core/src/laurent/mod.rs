//! Exact sparse multivariate Laurent polynomials and truncated power series.
//!
//! [`LaurentPoly`] stores its terms as a flat table sorted in graded
//! lexicographic order (total degree first, then lexicographic). Shifting every
//! exponent by the same vector preserves that order, so sums of shifted
//! polynomials, which is all the counting recurrence needs, are plain merges.

mod series;
mod text;

pub use series::{generalized_binomial, stirling2_table, TruncatedSeries, Truncation};

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Coefficient;

/// Exponents of one monomial `q_1^{e_1} .. q_k^{e_k}`; entries may be negative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(pub Vec<i32>);

impl ExponentVector {
    pub fn zeros(k: usize) -> Self {
        Self(vec![0; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> i64 {
        total(&self.0)
    }
}

impl From<Vec<i32>> for ExponentVector {
    fn from(v: Vec<i32>) -> Self {
        Self(v)
    }
}

impl AsRef<[i32]> for ExponentVector {
    fn as_ref(&self) -> &[i32] {
        &self.0
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        grlex(&self.0, &other.0)
    }
}

fn total(e: &[i32]) -> i64 {
    e.iter().map(|&x| x as i64).sum()
}

/// Graded lexicographic comparison.
pub fn grlex(a: &[i32], b: &[i32]) -> Ordering {
    total(a).cmp(&total(b)).then_with(|| a.cmp(b))
}

/// A Laurent polynomial in `k` variables with coefficients in `C`.
///
/// Invariants: no stored coefficient is zero, every exponent vector has length
/// `k`, and terms are strictly increasing in graded-lex order.
#[derive(Clone, PartialEq)]
pub struct LaurentPoly<C> {
    k: usize,
    exps: Vec<i32>,
    coeffs: Vec<C>,
}

impl<C: Coefficient> LaurentPoly<C> {
    pub fn zero(k: usize) -> Self {
        Self {
            k,
            exps: Vec::new(),
            coeffs: Vec::new(),
        }
    }

    /// The constant polynomial `1`.
    pub fn one(k: usize) -> Self {
        Self::monomial(k, &vec![0; k], C::one()).expect("length matches")
    }

    pub fn monomial(k: usize, exponents: &[i32], c: C) -> Result<Self> {
        check_dim(k, exponents.len())?;
        if c.is_zero() {
            return Ok(Self::zero(k));
        }
        Ok(Self {
            k,
            exps: exponents.to_vec(),
            coeffs: vec![c],
        })
    }

    /// Builds a polynomial from arbitrary terms, combining repeats and dropping zeros.
    pub fn from_terms<I>(k: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i32>, C)>,
    {
        let mut list: Vec<(Vec<i32>, C)> = Vec::new();
        for (e, c) in terms {
            check_dim(k, e.len())?;
            list.push((e, c));
        }
        list.sort_by(|a, b| grlex(&a.0, &b.0));
        let mut out = Self::zero(k);
        let mut iter = list.into_iter().peekable();
        while let Some((e, mut c)) = iter.next() {
            while let Some((e2, _)) = iter.peek() {
                if *e2 != e {
                    break;
                }
                c += iter.next().expect("peeked").1;
            }
            if !c.is_zero() {
                out.exps.extend_from_slice(&e);
                out.coeffs.push(c);
            }
        }
        Ok(out)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn exponent(&self, i: usize) -> &[i32] {
        &self.exps[i * self.k..(i + 1) * self.k]
    }

    pub fn coefficients(&self) -> &[C] {
        &self.coeffs
    }

    /// Terms in graded-lex order.
    pub fn iter(&self) -> impl Iterator<Item = (&[i32], &C)> + '_ {
        (0..self.len()).map(move |i| (self.exponent(i), &self.coeffs[i]))
    }

    /// Coefficient of `q^e`, zero if absent.
    pub fn coeff(&self, e: &[i32]) -> C {
        if e.len() != self.k {
            return C::zero();
        }
        let mut lo = 0;
        let mut hi = self.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            match grlex(self.exponent(mid), e) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return self.coeffs[mid].clone(),
            }
        }
        C::zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.k, other.k)?;
        let zero = vec![0; self.k];
        Ok(shifted_sum(self.k, &[(self, &zero), (other, &zero)]))
    }

    /// Multiplies by the monomial `c · q^delta`.
    pub fn mul_monomial(&self, delta: &[i32], c: &C) -> Result<Self>
    where
        C: std::ops::Mul<Output = C>,
    {
        check_dim(self.k, delta.len())?;
        if c.is_zero() {
            return Ok(Self::zero(self.k));
        }
        let mut exps = self.exps.clone();
        for chunk in exps.chunks_mut(self.k) {
            for (x, d) in chunk.iter_mut().zip(delta) {
                *x += d;
            }
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| x.clone() * c.clone())
            .collect::<Vec<_>>();
        // A zero divisor in C could leave zero products behind.
        let mut out = Self {
            k: self.k,
            exps,
            coeffs,
        };
        if out.coeffs.iter().any(Zero::is_zero) {
            out = out.filter(|_, c| !c.is_zero());
        }
        Ok(out)
    }

    /// Value at `q_1 = .. = q_k = 1`, i.e. the sum of all coefficients.
    pub fn eval_all_ones(&self) -> C {
        let mut s = C::zero();
        for c in &self.coeffs {
            s += c.clone();
        }
        s
    }

    /// Keeps the terms whose exponents are all strictly positive.
    pub fn pos(&self) -> Self {
        self.filter(|e, _| e.iter().all(|&x| x >= 1))
    }

    pub fn filter<F: Fn(&[i32], &C) -> bool>(&self, keep: F) -> Self {
        let mut out = Self::zero(self.k);
        for (e, c) in self.iter() {
            if keep(e, c) {
                out.exps.extend_from_slice(e);
                out.coeffs.push(c.clone());
            }
        }
        out
    }

    /// `Σ coeff · ∏ e_t^{order_t}` with `0^0 = 1`: the unnormalized mixed moment
    /// `∏ (q_t ∂/∂q_t)^{order_t}` evaluated at all ones.
    pub fn moment(&self, order: &[u32]) -> Result<BigInt> {
        check_dim(self.k, order.len())?;
        let mut sum = BigInt::zero();
        for (e, c) in self.iter() {
            let mut term = c
                .to_bigint()
                .ok_or_else(|| Error::InvalidInput(format!("non-integral coefficient {c}")))?;
            for (&x, &p) in e.iter().zip(order) {
                if p > 0 {
                    term *= BigInt::from(x).pow(p);
                }
            }
            sum += term;
        }
        Ok(sum)
    }

    /// Applies `q_t -> q_t^{-1}` to every variable.
    pub fn invert_variables(&self) -> Self {
        Self::from_terms(
            self.k,
            self.iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone())),
        )
        .expect("same dimension")
    }

    /// Renames variable `t` to `t + shift (mod k)`.
    pub fn rotate_variables(&self, shift: usize) -> Self {
        let k = self.k;
        Self::from_terms(
            k,
            self.iter().map(|(e, c)| {
                let mut r = vec![0; k];
                for (t, &x) in e.iter().enumerate() {
                    r[(t + shift) % k] = x;
                }
                (r, c.clone())
            }),
        )
        .expect("same dimension")
    }

    /// Converts the coefficients to another coefficient type, failing on overflow.
    pub fn convert<D: Coefficient>(&self) -> Option<LaurentPoly<D>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.to_bigint().and_then(|b| D::from_bigint(&b)))
            .collect::<Option<Vec<_>>>()?;
        Some(LaurentPoly {
            k: self.k,
            exps: self.exps.clone(),
            coeffs,
        })
    }

    /// Largest absolute exponent per variable.
    pub fn exponent_span(&self) -> Vec<u32> {
        let mut span = vec![0u32; self.k];
        for (e, _) in self.iter() {
            for (s, &x) in span.iter_mut().zip(e) {
                *s = (*s).max(x.unsigned_abs());
            }
        }
        span
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Dimension { expected, got })
    }
}

/// `Σ_j q^{delta_j} · P_j`: merges the shifted inputs in one pass.
///
/// Every input must have dimension `k`; shifts keep each input sorted, so this
/// is a multiway merge with coefficient addition on equal keys.
pub fn shifted_sum<C: Coefficient>(k: usize, parts: &[(&LaurentPoly<C>, &[i32])]) -> LaurentPoly<C> {
    struct Cursor<'a, C> {
        poly: &'a LaurentPoly<C>,
        delta: &'a [i32],
        pos: usize,
        key: Vec<i32>,
        deg: i64,
    }
    impl<C: Coefficient> Cursor<'_, C> {
        fn load(&mut self) -> bool {
            if self.pos >= self.poly.len() {
                return false;
            }
            let e = self.poly.exponent(self.pos);
            let mut deg = 0i64;
            for ((slot, &x), &d) in self.key.iter_mut().zip(e).zip(self.delta) {
                *slot = x + d;
                deg += *slot as i64;
            }
            self.deg = deg;
            true
        }
    }

    let mut cursors: Vec<Cursor<'_, C>> = Vec::with_capacity(parts.len());
    let mut capacity = 0;
    for &(poly, delta) in parts {
        debug_assert_eq!(poly.k, k);
        debug_assert_eq!(delta.len(), k);
        capacity += poly.len();
        let mut c = Cursor {
            poly,
            delta,
            pos: 0,
            key: vec![0; k],
            deg: 0,
        };
        if c.load() {
            cursors.push(c);
        }
    }

    let mut out = LaurentPoly {
        k,
        exps: Vec::with_capacity(capacity * k),
        coeffs: Vec::with_capacity(capacity),
    };
    while !cursors.is_empty() {
        let mut best = 0;
        for i in 1..cursors.len() {
            let ord = cursors[i]
                .deg
                .cmp(&cursors[best].deg)
                .then_with(|| cursors[i].key.cmp(&cursors[best].key));
            if ord == Ordering::Less {
                best = i;
            }
        }
        let key = cursors[best].key.clone();
        let deg = cursors[best].deg;
        let mut sum = C::zero();
        let mut i = 0;
        while i < cursors.len() {
            let cur = &mut cursors[i];
            if cur.deg == deg && cur.key == key {
                sum += cur.poly.coeffs[cur.pos].clone();
                cur.pos += 1;
                if !cur.load() {
                    cursors.swap_remove(i);
                    continue;
                }
            }
            i += 1;
        }
        if !sum.is_zero() {
            out.exps.extend_from_slice(&key);
            out.coeffs.push(sum);
        }
    }
    out
}

impl<C: Coefficient> fmt::Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly(k={}, {})", self.k, self)
    }
}

impl<C: Coefficient> fmt::Display for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut wrote = false;
            if *c != C::one() || e.iter().all(|&x| x == 0) {
                write!(f, "{c}")?;
                wrote = true;
            }
            for (t, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                if x == 1 {
                    write!(f, "q{}", t + 1)?;
                } else {
                    write!(f, "q{}^{}", t + 1, x)?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Poly;

    fn p(k: usize, terms: &[(&[i32], i64)]) -> Poly {
        Poly::from_terms(k, terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c)))).unwrap()
    }

    #[test]
    fn add_cancels_terms() {
        let a = p(3, &[(&[1, 0, 0], 1), (&[-1, 0, 0], 1)]);
        let b = p(3, &[(&[-1, 0, 0], -1)]);
        assert_eq!(a.add(&b).unwrap(), p(3, &[(&[1, 0, 0], 1)]));
    }

    #[test]
    fn add_zero_is_identity() {
        let a = p(3, &[(&[1, 2, -3], 4), (&[0, 0, 0], 1)]);
        assert_eq!(a.add(&Poly::zero(3)).unwrap(), a);
        assert_eq!(Poly::zero(3).add(&a).unwrap(), a);
    }

    #[test]
    fn add_rejects_mismatched_dimensions() {
        let err = Poly::one(3).add(&Poly::one(4)).unwrap_err();
        assert_eq!(err, Error::Dimension { expected: 3, got: 4 });
    }

    #[test]
    fn mul_monomial_examples() {
        let one = Poly::one(3);
        assert_eq!(
            one.mul_monomial(&[1, 0, -1], &BigInt::from(1)).unwrap(),
            p(3, &[(&[1, 0, -1], 1)])
        );
        let a = p(3, &[(&[1, 0, 0], 1), (&[-1, 0, 0], 1)]);
        assert_eq!(
            a.mul_monomial(&[-1, 0, 0], &BigInt::from(1)).unwrap(),
            p(3, &[(&[0, 0, 0], 1), (&[-2, 0, 0], 1)])
        );
        assert_eq!(a.mul_monomial(&[0, 0, 0], &BigInt::from(1)).unwrap(), a);
        assert!(a.mul_monomial(&[0, 0], &BigInt::from(1)).is_err());
        assert!(a.mul_monomial(&[1, 1, 1], &BigInt::zero()).unwrap().is_zero());
    }

    #[test]
    fn pos_worked_example() {
        let poly = p(
            3,
            &[
                (&[-1, 3, 5], 5),
                (&[2, -3, 5], 4),
                (&[1, 1, 2], 7),
                (&[2, 0, 3], 11),
                (&[1, 1, 1], 2),
            ],
        );
        assert_eq!(poly.pos(), p(3, &[(&[1, 1, 2], 7), (&[1, 1, 1], 2)]));
        let m = p(3, &[(&[1, 1, 1], 1)]);
        assert_eq!(m.pos(), m);
        assert!(p(3, &[(&[1, 1, 0], 1)]).pos().is_zero());
    }

    #[test]
    fn moment_examples() {
        let a = p(3, &[(&[1, 0, 0], 1), (&[-1, 0, 0], 1)]);
        assert_eq!(a.moment(&[2, 0, 0]).unwrap(), BigInt::from(2));
        assert_eq!(a.moment(&[1, 0, 0]).unwrap(), BigInt::from(0));
        // 0^0 = 1
        assert_eq!(a.moment(&[0, 3, 0]).unwrap(), BigInt::from(0));
        assert_eq!(a.moment(&[0, 0, 0]).unwrap(), BigInt::from(2));
    }

    #[test]
    fn eval_all_ones_of_empty_is_zero() {
        assert_eq!(Poly::zero(3).eval_all_ones(), BigInt::zero());
    }

    #[test]
    fn coefficient_lookup() {
        let a = p(3, &[(&[1, 2, 3], 4), (&[0, 0, 0], 9), (&[-5, 1, 1], 2)]);
        assert_eq!(a.coeff(&[1, 2, 3]), BigInt::from(4));
        assert_eq!(a.coeff(&[-5, 1, 1]), BigInt::from(2));
        assert_eq!(a.coeff(&[1, 1, 1]), BigInt::zero());
    }

    #[test]
    fn terms_are_graded_lex_sorted() {
        let a = p(2, &[(&[3, -3], 1), (&[0, 1], 1), (&[-2, 0], 1), (&[1, 0], 1)]);
        let keys: Vec<Vec<i32>> = a.iter().map(|(e, _)| e.to_vec()).collect();
        assert_eq!(keys, vec![vec![-2, 0], vec![3, -3], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn display_is_readable() {
        let a = p(3, &[(&[1, 0, -1], 1), (&[0, 0, 0], 3), (&[2, 0, 0], 5)]);
        assert_eq!(a.to_string(), "3 + q1*q3^-1 + 5*q1^2");
    }
}
