//! Words over `{1..k}`, their cyclic pair statistics, and the word/deck bijection.
//!
//! For a word `w`, `s_i(w)` counts pairs with letter `i+1` before letter `i`
//! minus pairs with `i` before `i+1` (indices cyclic, so `s_k` pairs `k` with
//! `1`). Reading `w_p = j` as "card `p` goes into deck `j`", `s_i` is exactly
//! the number of card pairs deck `i` wins against deck `i+1` minus the number
//! it loses.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::error::{Error, Result};
use crate::Poly;

/// Default cap on the number of words the brute-force oracle will visit.
pub const DEFAULT_BRUTE_FORCE_CAP: u64 = 1_000_000;

/// A word over the alphabet `{1..k}`; letters are stored 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    k: usize,
    letters: Vec<u8>,
}

impl Word {
    pub fn new(k: usize, letters: Vec<u8>) -> Result<Self> {
        if k == 0 || k > u8::MAX as usize {
            return Err(Error::InvalidInput(format!("alphabet size {k} out of range")));
        }
        if let Some(&bad) = letters.iter().find(|&&l| l == 0 || l as usize > k) {
            return Err(Error::InvalidInput(format!("letter {bad} not in 1..={k}")));
        }
        Ok(Self { k, letters })
    }

    /// Parses a digit string such as `"132321213"`.
    pub fn parse(k: usize, s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|ch| {
                ch.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::InvalidInput(format!("not a digit: {ch:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(k, letters)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter multiplicities `(a_1, .., a_k)`.
    pub fn counts(&self) -> Vec<u32> {
        let mut c = vec![0u32; self.k];
        for &l in &self.letters {
            c[l as usize - 1] += 1;
        }
        c
    }

    pub fn reversed(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.reverse();
        Self { k: self.k, letters }
    }

    /// Applies the relabeling `l -> (l mod k) + 1` `times` times.
    pub fn relabeled(&self, times: usize) -> Self {
        let k = self.k;
        let letters = self
            .letters
            .iter()
            .map(|&l| ((l as usize - 1 + times) % k + 1) as u8)
            .collect();
        Self { k, letters }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k <= 9 {
            for l in &self.letters {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(u8::to_string).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// The cyclic statistics `(s_1, .., s_k)` of a word.
pub type StatVector = Vec<i64>;

/// Computes `(s_1, .., s_k)` in one left-to-right pass with running letter counts.
pub fn stats(w: &Word) -> StatVector {
    let k = w.k;
    let mut seen = vec![0i64; k];
    let mut s = vec![0i64; k];
    for &l in &w.letters {
        let j = l as usize - 1;
        // earlier (j+1)'s form pairs "j+1 before j"; earlier (j-1)'s form "j-1 before j"
        s[j] += seen[(j + 1) % k];
        s[(j + k - 1) % k] -= seen[(j + k - 1) % k];
        seen[j] += 1;
    }
    s
}

/// The sucker's-bet condition: every cyclic statistic is at least 1.
pub fn is_sbc(w: &Word) -> bool {
    stats(w).iter().all(|&x| x >= 1)
}

/// `k` decks of distinct card denominations, each sorted ascending.
///
/// In standard form the denominations across all decks are exactly `1..=N`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DeckSet {
    decks: Vec<Vec<u32>>,
}

impl DeckSet {
    /// Validates standard form.
    pub fn new(decks: Vec<Vec<u32>>) -> Result<Self> {
        let mut decks = decks;
        for d in &mut decks {
            d.sort_unstable();
        }
        let n: usize = decks.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for &card in decks.iter().flatten() {
            let c = card as usize;
            if c == 0 || c > n {
                return Err(Error::Normalization(format!(
                    "denomination {card} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[c], true) {
                return Err(Error::Normalization(format!("denomination {card} repeated")));
            }
        }
        Ok(Self { decks })
    }

    /// Replaces arbitrary distinct denominations by their ranks `1..=N`.
    pub fn rank_normalize(decks: &[Vec<u32>]) -> Result<Self> {
        let mut all: Vec<u32> = decks.iter().flatten().copied().collect();
        all.sort_unstable();
        if all.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::Normalization("denominations are not distinct".into()));
        }
        let rank = |c: u32| all.binary_search(&c).expect("present") as u32 + 1;
        Self::new(
            decks
                .iter()
                .map(|d| d.iter().map(|&c| rank(c)).collect())
                .collect(),
        )
    }

    pub fn decks(&self) -> &[Vec<u32>] {
        &self.decks
    }

    pub fn k(&self) -> usize {
        self.decks.len()
    }

    pub fn into_decks(self) -> Vec<Vec<u32>> {
        self.decks
    }
}

/// Deck `j` collects the positions holding letter `j`.
pub fn word_to_decks(w: &Word) -> DeckSet {
    let mut decks = vec![Vec::new(); w.k];
    for (i, &l) in w.letters.iter().enumerate() {
        decks[l as usize - 1].push(i as u32 + 1);
    }
    DeckSet { decks }
}

/// Inverse of [`word_to_decks`].
pub fn decks_to_word(d: &DeckSet) -> Word {
    let n: usize = d.decks.iter().map(Vec::len).sum();
    let mut letters = vec![0u8; n];
    for (j, deck) in d.decks.iter().enumerate() {
        for &c in deck {
            letters[c as usize - 1] = j as u8 + 1;
        }
    }
    Word {
        k: d.decks.len(),
        letters,
    }
}

/// Outcome of playing every card/face of one deck against every card/face of another.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BeatCount {
    pub wins: u64,
    pub losses: u64,
    pub ties: u64,
}

impl BeatCount {
    pub fn margin(&self) -> i64 {
        self.wins as i64 - self.losses as i64
    }

    pub fn total(&self) -> u64 {
        self.wins + self.losses + self.ties
    }
}

/// Counts the pairs `(a, b)` with `a > b`, `a < b` and `a = b`.
pub fn beats_count(a: &[u32], b: &[u32]) -> BeatCount {
    let mut sorted_b = b.to_vec();
    sorted_b.sort_unstable();
    let mut out = BeatCount {
        wins: 0,
        losses: 0,
        ties: 0,
    };
    for &x in a {
        let below = sorted_b.partition_point(|&y| y < x) as u64;
        let not_above = sorted_b.partition_point(|&y| y <= x) as u64;
        out.wins += below;
        out.ties += not_above - below;
        out.losses += sorted_b.len() as u64 - not_above;
    }
    out
}

/// True when deck `i` strictly beats deck `i+1` for every `i`, cyclically.
pub fn is_suckers_bet(decks: &[Vec<u32>]) -> bool {
    let k = decks.len();
    k >= 3
        && (0..k).all(|i| {
            let b = beats_count(&decks[i], &decks[(i + 1) % k]);
            b.wins > b.losses
        })
}

/// Lexicographically smallest word among the `k` cyclic relabelings.
pub fn canonical_cyclic(w: &Word) -> Word {
    (0..w.k)
        .map(|t| w.relabeled(t))
        .min()
        .expect("k >= 1")
}

/// `(Σ a)! / ∏ a_i!`.
pub fn multinomial(a: &[u32]) -> BigUint {
    let mut result = BigUint::one();
    let mut n = 0u64;
    for &ai in a {
        for j in 1..=ai as u64 {
            n += 1;
            result *= n;
            result /= j;
        }
    }
    result
}

/// Calls `visit` on every word with letter multiplicities `a`, in lexicographic order.
pub fn for_each_word<F: FnMut(&[u8])>(a: &[u32], mut visit: F) {
    let mut letters: Vec<u8> = a
        .iter()
        .enumerate()
        .flat_map(|(j, &c)| std::iter::repeat_n(j as u8 + 1, c as usize))
        .collect();
    loop {
        visit(&letters);
        // next permutation
        let n = letters.len();
        if n < 2 {
            return;
        }
        let mut i = n - 1;
        while i > 0 && letters[i - 1] >= letters[i] {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        let mut j = n - 1;
        while letters[j] <= letters[i - 1] {
            j -= 1;
        }
        letters.swap(i - 1, j);
        letters[i..].reverse();
    }
}

/// Weight enumerator by direct summation over every word of `W(a)`.
pub fn brute_force_f(a: &[u32], cap: u64) -> Result<Poly> {
    let k = a.len();
    let size = multinomial(a);
    if size > BigUint::from(cap) {
        return Err(Error::Size {
            what: format!("brute force over {size} words"),
            limit: cap,
            layer: None,
        });
    }
    let mut table: BTreeMap<Vec<i32>, u64> = BTreeMap::new();
    for_each_word(a, |letters| {
        let w = Word {
            k,
            letters: letters.to_vec(),
        };
        let e = stats(&w).into_iter().map(|x| x as i32).collect();
        *table.entry(e).or_insert(0) += 1;
    });
    Poly::from_terms(k, table.into_iter().map(|(e, c)| (e, BigInt::from(c))))
}

/// Number of words of `W(a)` satisfying the sucker's-bet condition, by direct scan.
pub fn brute_force_count(a: &[u32], cap: u64) -> Result<u64> {
    let size = multinomial(a);
    if size > BigUint::from(cap) {
        return Err(Error::Size {
            what: format!("brute force over {size} words"),
            limit: cap,
            layer: None,
        });
    }
    let k = a.len();
    let mut n = 0u64;
    for_each_word(a, |letters| {
        let w = Word {
            k,
            letters: letters.to_vec(),
        };
        if is_sbc(&w) {
            n += 1;
        }
    });
    Ok(n)
}
