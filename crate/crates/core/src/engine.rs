//! Weight enumerators by dynamic programming, and counting or listing of
//! sucker's-bet deck sets.
//!
//! Every nonempty word ends in some letter `j`. Appending `j` to a word that
//! already has `b_{j+1}` copies of `j+1` and `b_{j-1}` copies of `j-1` raises
//! `s_j` by `b_{j+1}` and lowers `s_{j-1}` by `b_{j-1}`, so
//!
//! ```text
//! F(b) = Σ_j  q_j^{b_{j+1}} q_{j-1}^{-b_{j-1}} F(b - e_j),   F(0) = 1.
//! ```
//!
//! The table is filled one layer `N = Σ b` at a time and only the previous
//! layer is kept alive. Entries within a layer are independent and are
//! computed in parallel; the result does not depend on scheduling.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::laurent::{shifted_sum, LaurentPoly};
use crate::scalar::Coefficient;
use crate::words::{multinomial, word_to_decks, DeckSet, Word};
use crate::Poly;

/// Environment variable overriding [`Caps::max_terms`].
pub const CAP_TERMS_ENV: &str = "NONTRANS_CAP_TERMS";

/// Resource limits for the table and for listings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Terms held across the two live layers of the table.
    pub max_terms: u64,
    /// Sets a listing may return.
    pub max_listed: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            max_terms: 100_000_000,
            max_listed: 1_000_000,
        }
    }
}

impl Caps {
    /// Defaults, with `max_terms` taken from `NONTRANS_CAP_TERMS` when set.
    pub fn from_env() -> Self {
        let mut caps = Self::default();
        if let Some(v) = std::env::var(CAP_TERMS_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
        {
            if v > 0 {
                caps.max_terms = v;
            }
        }
        caps
    }
}

/// Exponent shift applied when a letter is appended.
pub trait AppendRule: Sync {
    /// `counts` are the letter counts after appending `letter` (0-based);
    /// `out` is zeroed and has length `k`.
    fn shift(&self, counts: &[u32], letter: usize, out: &mut [i32]);
}

/// The shift that tracks the cyclic statistics `s_1..s_k`.
#[derive(Debug, Clone, Copy, Default)]
pub struct CyclicStats;

impl AppendRule for CyclicStats {
    fn shift(&self, counts: &[u32], j: usize, out: &mut [i32]) {
        let k = counts.len();
        let next = (j + 1) % k;
        let prev = (j + k - 1) % k;
        out[j] += counts[next] as i32;
        out[prev] -= counts[prev] as i32;
    }
}

struct BoxIndex {
    bound: Vec<u32>,
    strides: Vec<usize>,
}

impl BoxIndex {
    fn new(bound: &[u32]) -> Self {
        let mut strides = vec![0; bound.len()];
        let mut s = 1usize;
        for t in (0..bound.len()).rev() {
            strides[t] = s;
            s *= bound[t] as usize + 1;
        }
        Self {
            bound: bound.to_vec(),
            strides,
        }
    }

    fn index(&self, b: &[u32]) -> usize {
        b.iter().zip(&self.strides).map(|(&x, &s)| x as usize * s).sum()
    }

    /// Box points grouped by coordinate sum.
    fn layers(&self) -> Vec<Vec<Vec<u32>>> {
        let total: u32 = self.bound.iter().sum();
        let mut layers = vec![Vec::new(); total as usize + 1];
        let mut b = vec![0u32; self.bound.len()];
        loop {
            layers[b.iter().sum::<u32>() as usize].push(b.clone());
            let mut t = b.len();
            loop {
                if t == 0 {
                    return layers;
                }
                t -= 1;
                if b[t] < self.bound[t] {
                    b[t] += 1;
                    break;
                }
                b[t] = 0;
            }
        }
    }
}

/// Runs the recurrence over the box `0 <= b <= bound`, calling `visit` on every entry.
///
/// `visit` sees entries layer by layer in lexicographic order within a layer.
pub fn run_table<C, R, V>(bound: &[u32], caps: &Caps, rule: &R, mut visit: V) -> Result<()>
where
    C: Coefficient,
    R: AppendRule + ?Sized,
    V: FnMut(&[u32], &LaurentPoly<C>),
{
    let k = bound.len();
    let index = BoxIndex::new(bound);
    let mut prev: HashMap<usize, LaurentPoly<C>> = HashMap::new();
    let mut prev_terms = 0u64;
    for (n, layer) in index.layers().into_iter().enumerate() {
        let computed: Vec<LaurentPoly<C>> = layer
            .par_iter()
            .map(|b| {
                if n == 0 {
                    return LaurentPoly::one(k);
                }
                let mut deltas: Vec<Vec<i32>> = Vec::with_capacity(k);
                let mut sources = Vec::with_capacity(k);
                let mut below = b.clone();
                for j in 0..k {
                    if b[j] == 0 {
                        continue;
                    }
                    let mut d = vec![0i32; k];
                    rule.shift(b, j, &mut d);
                    below[j] -= 1;
                    sources.push(&prev[&index.index(&below)]);
                    below[j] += 1;
                    deltas.push(d);
                }
                let parts: Vec<(&LaurentPoly<C>, &[i32])> = sources
                    .into_iter()
                    .zip(deltas.iter().map(Vec::as_slice))
                    .collect();
                shifted_sum(k, &parts)
            })
            .collect();
        let terms: u64 = computed.iter().map(|p| p.len() as u64).sum();
        if terms + prev_terms > caps.max_terms {
            return Err(Error::Size {
                what: "weight enumerator table terms".into(),
                limit: caps.max_terms,
                layer: Some(n),
            });
        }
        for (b, p) in layer.iter().zip(&computed) {
            visit(b, p);
        }
        prev = layer
            .iter()
            .map(|b| index.index(b))
            .zip(computed)
            .collect();
        prev_terms = terms;
    }
    Ok(())
}

/// Weight enumerator of `W(a)` in the coefficient type `C` under an arbitrary append rule.
pub fn compute_f_with<C, R>(a: &[u32], caps: &Caps, rule: &R) -> Result<LaurentPoly<C>>
where
    C: Coefficient,
    R: AppendRule + ?Sized,
{
    if a.is_empty() {
        return Err(Error::InvalidInput("need at least one deck".into()));
    }
    let mut out = None;
    run_table::<C, R, _>(a, caps, rule, |b, p| {
        if b == a {
            out = Some(p.clone());
        }
    })?;
    Ok(out.expect("target lies in its own box"))
}

fn fits_u64(a: &[u32]) -> bool {
    multinomial(a) <= BigUint::from(u64::MAX)
}

/// Exact weight enumerator `F(a)`.
///
/// Runs in `u64` when the multinomial of `a` fits (coefficients are positive and
/// sum to it, so nothing can overflow) and in big integers otherwise.
pub fn compute_f(a: &[u32], caps: &Caps) -> Result<Poly> {
    if fits_u64(a) {
        let p = compute_f_with::<u64, _>(a, caps, &CyclicStats)?;
        Ok(p.convert::<BigInt>().expect("u64 converts to BigInt"))
    } else {
        compute_f_with::<BigInt, _>(a, caps, &CyclicStats)
    }
}

fn positive_total<C: Coefficient>(p: &LaurentPoly<C>) -> BigUint {
    p.pos()
        .eval_all_ones()
        .to_bigint()
        .and_then(|b| b.to_biguint())
        .expect("counts are nonnegative integers")
}

/// Number of sucker's-bet words in `W(a)`: `POS(F(a))` at all ones.
pub fn count_suckers(a: &[u32], caps: &Caps) -> Result<BigUint> {
    if fits_u64(a) {
        Ok(positive_total(&compute_f_with::<u64, _>(a, caps, &CyclicStats)?))
    } else {
        Ok(positive_total(&compute_f_with::<BigInt, _>(a, caps, &CyclicStats)?))
    }
}

fn require_equal(a: &[u32]) -> Result<()> {
    if a.is_empty() || a.iter().any(|&x| x != a[0]) {
        Err(Error::UnsupportedSymmetry(a.to_vec()))
    } else {
        Ok(())
    }
}

/// Divides a full count by `k`, the size of every cyclic-relabeling orbit.
pub fn reduce_count(a: &[u32], count: &BigUint) -> Result<BigUint> {
    require_equal(a)?;
    let (q, r) = count.div_rem(&BigUint::from(a.len()));
    if !r.is_zero() {
        return Err(Error::Invariant(format!(
            "count {count} for {a:?} is not divisible by {}",
            a.len()
        )));
    }
    Ok(q)
}

/// Count up to cyclic relabeling of the decks; needs equal deck sizes.
pub fn count_suckers_reduced(a: &[u32], caps: &Caps) -> Result<BigUint> {
    require_equal(a)?;
    reduce_count(a, &count_suckers(a, caps)?)
}

/// Probability that a uniformly random assignment of `1..=N` to decks of sizes `a` is a sucker's bet.
pub fn probability(a: &[u32], caps: &Caps) -> Result<BigRational> {
    let count = count_suckers(a, caps)?;
    Ok(probability_from_count(a, &count))
}

pub fn probability_from_count(a: &[u32], count: &BigUint) -> BigRational {
    BigRational::new(
        BigInt::from(count.clone()),
        BigInt::from(multinomial(a)),
    )
}

/// `[count_suckers((n, n, n)) for n in 1..=n_max]`, from one shared table.
pub fn sequence_equal_decks(n_max: u32, caps: &Caps) -> Result<Vec<BigUint>> {
    sequence_equal_decks_k(3, n_max, caps)
}

/// As [`sequence_equal_decks`] for `k` decks of `n` cards each.
pub fn sequence_equal_decks_k(k: usize, n_max: u32, caps: &Caps) -> Result<Vec<BigUint>> {
    if n_max == 0 || k == 0 {
        return Err(Error::InvalidInput("need n_max >= 1 and k >= 1".into()));
    }
    let bound = vec![n_max; k];
    let mut out = vec![BigUint::zero(); n_max as usize];
    let diagonal = |b: &[u32]| b[0] > 0 && b.iter().all(|&x| x == b[0]);
    if fits_u64(&bound) {
        run_table::<u64, _, _>(&bound, caps, &CyclicStats, |b, p| {
            if diagonal(b) {
                out[b[0] as usize - 1] = positive_total(p);
            }
        })?;
    } else {
        run_table::<BigInt, _, _>(&bound, caps, &CyclicStats, |b, p| {
            if diagonal(b) {
                out[b[0] as usize - 1] = positive_total(p);
            }
        })?;
    }
    Ok(out)
}

/// Depth-first listing of the sucker's-bet words of `W(a)` in lexicographic order.
///
/// With `reduce`, only words starting with letter 1 are produced: for equal deck
/// sizes that is exactly the lexicographically smallest member of each
/// relabeling orbit. `prune` cuts branches where some statistic can no longer
/// reach 1; it never changes the output.
pub fn enumerate_words(a: &[u32], reduce: bool, prune: bool, cap: u64) -> Result<Vec<Word>> {
    let k = a.len();
    if k == 0 || k > u8::MAX as usize {
        return Err(Error::InvalidInput(format!("unsupported number of decks {k}")));
    }
    if reduce {
        require_equal(a)?;
    }
    let n: usize = a.iter().map(|&x| x as usize).sum();
    let mut search = WordSearch {
        a: a.iter().map(|&x| x as i64).collect(),
        counts: vec![0; k],
        stats: vec![0; k],
        letters: Vec::with_capacity(n),
        prune,
        cap,
        out: Vec::new(),
    };
    if n == 0 {
        return Ok(Vec::new());
    }
    if reduce {
        if a[0] > 0 {
            search.push(0);
            search.descend()?;
        }
    } else {
        search.descend()?;
    }
    Ok(search.out)
}

struct WordSearch {
    a: Vec<i64>,
    counts: Vec<i64>,
    stats: Vec<i64>,
    letters: Vec<u8>,
    prune: bool,
    cap: u64,
    out: Vec<Word>,
}

impl WordSearch {
    fn k(&self) -> usize {
        self.a.len()
    }

    fn push(&mut self, j: usize) {
        let k = self.k();
        let (next, prev) = ((j + 1) % k, (j + k - 1) % k);
        self.stats[j] += self.counts[next];
        self.stats[prev] -= self.counts[prev];
        self.counts[j] += 1;
        self.letters.push(j as u8 + 1);
    }

    fn pop(&mut self, j: usize) {
        let k = self.k();
        let (next, prev) = ((j + 1) % k, (j + k - 1) % k);
        self.letters.pop();
        self.counts[j] -= 1;
        self.stats[prev] += self.counts[prev];
        self.stats[j] -= self.counts[next];
    }

    /// Best final value of each `s_i`: remaining `i`s all after the remaining `i+1`s.
    fn feasible(&self) -> bool {
        let k = self.k();
        (0..k).all(|i| {
            let next = (i + 1) % k;
            let rem_i = self.a[i] - self.counts[i];
            let rem_next = self.a[next] - self.counts[next];
            self.stats[i] + rem_i * self.a[next] - rem_next * self.counts[i] >= 1
        })
    }

    fn descend(&mut self) -> Result<()> {
        if self.prune && !self.feasible() {
            return Ok(());
        }
        if self.counts == self.a {
            if self.stats.iter().all(|&s| s >= 1) {
                if self.out.len() as u64 >= self.cap {
                    return Err(Error::Size {
                        what: "listing (use count-only mode)".into(),
                        limit: self.cap,
                        layer: None,
                    });
                }
                self.out.push(Word::new(self.k(), self.letters.clone())?);
            }
            return Ok(());
        }
        for j in 0..self.k() {
            if self.counts[j] < self.a[j] {
                self.push(j);
                let r = self.descend();
                self.pop(j);
                r?;
            }
        }
        Ok(())
    }
}

/// All sucker's-bet deck sets with deck sizes `a`, as standard-form decks.
pub fn enumerate_suckers(a: &[u32], reduce: bool, caps: &Caps) -> Result<Vec<DeckSet>> {
    Ok(enumerate_words(a, reduce, true, caps.max_listed)?
        .iter()
        .map(word_to_decks)
        .collect())
}

/// Convenience for tests and reports: `count` as `u64` when it fits.
pub fn to_u64(v: &BigUint) -> Option<u64> {
    v.to_u64()
}
