//! Reproduction report: recomputes every published figure and compares.
//!
//! The reference values live in [`published`]; each check prints one row.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::dice::{enumerate_tieless, verify_dice_cycle};
use crate::engine::{
    enumerate_words, probability_from_count, reduce_count,
    sequence_equal_decks, Caps,
};
use crate::error::Result;
use crate::moments::{
    diagonal_closed_form, exact_moments_diagonal, fit_moment_polynomial, gaussian_integral,
    gaussian_scaled_limit, kurtosis_closed_form, normalization_constant,
    scaled_moments_diagonal, variance_closed_form, covariance_closed_form,
};
use crate::scalar::rational_to_f64;
use crate::verify::{self, VerifyConfig};
use crate::words::{is_suckers_bet, word_to_decks};
use crate::Rational;

/// Reference values.
pub mod published {
    /// Sucker's-bet counts for three decks of `n` cards, `n = 1..=12`.
    pub const COUNTS: [u64; 12] = [
        0,
        0,
        15,
        39,
        5196,
        32115,
        2093199,
        19618353,
        960165789,
        11272949151,
        479538890271,
        6504453085104,
    ];

    /// Counts up to cyclic relabeling.
    pub const REDUCED: [u64; 12] = [
        0,
        0,
        5,
        13,
        1732,
        10705,
        697733,
        6539451,
        320055263,
        3757649717,
        159846296757,
        2168151028368,
    ];

    /// Probabilities, as printed (10 significant digits).
    pub const PROBABILITIES: [f64; 12] = [
        0.0,
        0.0,
        0.008928571429,
        0.001125541126,
        0.006866149723,
        0.001872252397,
        0.005245153668,
        0.002072614083,
        0.004213592531,
        0.002030797274,
        0.003512410777,
        0.001921704153,
    ];

    /// Reduced tie-less four-dice sets with six faces each, for 6, 7, 8 denominations.
    pub const DICE_COUNTS: [(u32, usize); 3] = [(6, 1), (7, 38), (8, 755)];

    pub const UNIQUE_SIX: [[u32; 6]; 4] = [
        [1, 1, 5, 5, 5, 5],
        [4, 4, 4, 4, 4, 4],
        [3, 3, 3, 3, 3, 3],
        [2, 2, 2, 2, 6, 6],
    ];

    pub const EFRON: [[u32; 6]; 4] = [
        [1, 1, 5, 5, 5, 5],
        [4, 4, 4, 4, 4, 4],
        [3, 3, 3, 3, 7, 7],
        [2, 2, 2, 6, 6, 6],
    ];

    pub const MAGIC: [[u32; 3]; 3] = [[1, 6, 8], [3, 5, 7], [2, 4, 9]];

    /// The printed `(4,5,5)` moment: `n^3 / 2837835 * Σ c_i n^{18-i}`.
    pub const M455_DENOMINATOR: u64 = 2837835;
    pub const M455_SHIFT: u32 = 3;
    pub const M455_COEFFS: [i64; 19] = [
        39239200,
        66146080,
        -816055240,
        1114633520,
        3208398492,
        -13589761044,
        25028291837,
        -38043392560,
        62580129596,
        -103184180072,
        157753326632,
        -224678523360,
        293133737664,
        -336053442624,
        322828696448,
        -243844376832,
        132045454336,
        -44452356096,
        6864979968,
    ];

    /// Scaled limits `S(i1, i2, i3)` for `i1 <= i2 <= i3 <= 5`, as `(order, numerator, denominator)`.
    pub const SCALED_LIMITS: [([u32; 3], i64, i64); 28] = [
        ([0, 0, 0], 1, 1),
        ([0, 0, 2], 1, 1),
        ([0, 0, 4], 3, 1),
        ([0, 1, 1], -1, 2),
        ([0, 1, 3], -3, 2),
        ([0, 1, 5], -15, 2),
        ([0, 2, 2], 3, 2),
        ([0, 2, 4], 6, 1),
        ([0, 3, 3], -21, 4),
        ([0, 3, 5], -30, 1),
        ([0, 4, 4], 57, 2),
        ([0, 5, 5], -765, 4),
        ([1, 1, 2], 0, 1),
        ([1, 1, 4], 3, 2),
        ([1, 2, 3], -3, 4),
        ([1, 2, 5], -15, 2),
        ([1, 3, 4], 3, 2),
        ([1, 4, 5], -45, 4),
        ([2, 2, 2], 3, 2),
        ([2, 2, 4], 6, 1),
        ([2, 3, 3], -3, 1),
        ([2, 3, 5], -45, 2),
        ([2, 4, 4], 45, 2),
        ([2, 5, 5], -135, 1),
        ([3, 3, 4], 0, 1),
        ([3, 4, 5], -135, 4),
        ([4, 4, 4], 135, 2),
        ([4, 5, 5], -945, 4),
    ];
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReproRow {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

/// How much to run: the default tier stays within minutes; the extended tier adds `n = 8, 9`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Tier {
    #[default]
    Default,
    Extended,
}

fn row(id: u32, name: &str, start: Instant, passed: bool, detail: String) -> ReproRow {
    ReproRow {
        id,
        name: name.into(),
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn q(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The printed `(4,5,5)` polynomial as ascending rational coefficients.
pub fn printed_m455() -> Vec<Rational> {
    let deg = published::M455_SHIFT as usize + published::M455_COEFFS.len() - 1;
    let mut c = vec![q(0, 1); deg + 1];
    for (i, &x) in published::M455_COEFFS.iter().enumerate() {
        c[deg - i] = q(x, published::M455_DENOMINATOR as i64);
    }
    c
}

pub fn counting_sequence(tier: Tier) -> Result<ReproRow> {
    let t = Instant::now();
    let n_max = if tier == Tier::Extended { 9 } else { 7 };
    let seq = sequence_equal_decks(n_max, &Caps::from_env())?;
    let got: Vec<u64> = seq.iter().map(|x| x.to_u64().unwrap_or(u64::MAX)).collect();
    let want = &published::COUNTS[..n_max as usize];
    Ok(row(
        1,
        "counting sequence",
        t,
        got == want,
        format!("n = 1..={n_max}: {got:?}"),
    ))
}

pub fn reduced_and_probabilities() -> Result<ReproRow> {
    let t = Instant::now();
    let seq = sequence_equal_decks(7, &Caps::from_env())?;
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 3..=6u32 {
        let a = [n, n, n];
        let red = reduce_count(&a, &seq[n as usize - 1])?;
        ok &= red == BigUint::from(published::REDUCED[n as usize - 1]);
        notes.push(format!("{red}"));
    }
    let mut worst: f64 = 0.0;
    for n in 3..=7u32 {
        let p = probability_from_count(&[n, n, n], &seq[n as usize - 1]);
        let err = (rational_to_f64(&p) - published::PROBABILITIES[n as usize - 1]).abs();
        worst = worst.max(err);
    }
    ok &= worst < 1e-9;
    Ok(row(
        2,
        "reduced counts and probabilities",
        t,
        ok,
        format!("reduced n=3..6: {}; max |p - printed| = {worst:.2e}", notes.join(", ")),
    ))
}

pub fn listing() -> Result<ReproRow> {
    let t = Instant::now();
    let mut ok = true;
    let mut sizes = Vec::new();
    for (n, want) in [(3u32, 5usize), (4, 13), (5, 1732)] {
        let words = enumerate_words(&[n, n, n], true, true, u64::MAX)?;
        sizes.push(words.len());
        ok &= words.len() == want;
        ok &= words.iter().all(|w| is_suckers_bet(word_to_decks(w).decks()));
        if n == 3 {
            let magic: Vec<Vec<u32>> = published::MAGIC.iter().map(|d| d.to_vec()).collect();
            ok &= words.iter().any(|w| word_to_decks(w).decks() == magic.as_slice());
        }
    }
    Ok(row(3, "listing", t, ok, format!("reduced sets n=3,4,5: {sizes:?}")))
}

pub fn dice() -> Result<ReproRow> {
    let t = Instant::now();
    let mut ok = true;
    let mut sizes = Vec::new();
    for (m, want) in published::DICE_COUNTS {
        let sets = enumerate_tieless(4, &[6, 6, 6, 6], m, true, u64::MAX)?;
        sizes.push(sets.len());
        ok &= sets.len() == want;
        ok &= sets.iter().all(|s| {
            let r = verify_dice_cycle(s.dice());
            r.holds && r.pairs.iter().all(|p| p.ties == 0)
        });
        if m == 6 {
            let unique: Vec<Vec<u32>> = published::UNIQUE_SIX.iter().map(|d| d.to_vec()).collect();
            ok &= sets.first().map(|s| s.dice()) == Some(unique.as_slice());
        }
        if m == 7 {
            let efron: Vec<Vec<u32>> = published::EFRON.iter().map(|d| d.to_vec()).collect();
            ok &= sets.iter().any(|s| s.dice() == efron.as_slice());
        }
    }
    Ok(row(
        4,
        "tie-less dice (faces 6,6,6,6)",
        t,
        ok,
        format!("reduced sets for m = 6,7,8: {sizes:?}"),
    ))
}

pub fn oracle_equivalence() -> Result<ReproRow> {
    let t = Instant::now();
    let report = verify::run(&VerifyConfig {
        max_total: 10,
        max_total_k4: 8,
        max_letters: 9,
    })?;
    let failed: Vec<String> = report
        .checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{}: {}", c.name, c.counterexample.clone().unwrap_or_default()))
        .collect();
    let cases: u64 = report.checks.iter().map(|c| c.cases).sum();
    Ok(row(
        5,
        "oracle equivalence",
        t,
        failed.is_empty(),
        if failed.is_empty() {
            format!("{cases} cases")
        } else {
            failed.join("; ")
        },
    ))
}

pub fn symmetries() -> Result<ReproRow> {
    let t = Instant::now();
    let caps = Caps::from_env();
    let mut ok = true;
    for n in 1..=6u32 {
        let f = crate::engine::compute_f(&[n, n, n], &caps)?;
        ok &= f.invert_variables() == f;
        ok &= f.rotate_variables(1) == f;
    }
    let mut orders = Vec::new();
    for i in 0..=6u32 {
        for j in 0..=6 - i {
            for k in 0..=6 - i - j {
                if (i + j + k) % 2 == 1 {
                    orders.push([i, j, k]);
                }
            }
        }
    }
    let table = exact_moments_diagonal(6, &orders)?;
    ok &= table.iter().flatten().all(|m| *m == q(0, 1));
    Ok(row(
        6,
        "symmetries",
        t,
        ok,
        format!("reversal and rotation for n <= 6; {} odd orders vanish", orders.len()),
    ))
}

pub fn closed_forms() -> Result<ReproRow> {
    let t = Instant::now();
    let mut ok = true;
    let var = fit_moment_polynomial([0, 0, 2], None)?;
    let cov = fit_moment_polynomial([0, 1, 1], None)?;
    let m4 = fit_moment_polynomial([0, 0, 4], None)?;
    for n in 1..=30 {
        ok &= var.eval(n) == variance_closed_form(n);
        ok &= cov.eval(n) == covariance_closed_form(n);
        let v = var.eval(n);
        ok &= m4.eval(n) / (&v * &v) == kurtosis_closed_form(n);
    }
    let m455 = fit_moment_polynomial([4, 5, 5], None)?;
    let printed = printed_m455();
    let negated: Vec<Rational> = printed.iter().map(|c| -c).collect();
    let list_matches = m455.coeffs == negated;
    let (content, shift, prim) = m455.factored_parts();
    ok &= list_matches;
    ok &= shift == published::M455_SHIFT && content == q(-1, published::M455_DENOMINATOR as i64);
    ok &= prim.first() == Some(&BigInt::from(published::M455_COEFFS[0]));
    Ok(row(
        7,
        "closed forms",
        t,
        ok,
        format!(
            "variance {var}; covariance {cov}; (4,5,5) degree {}, content {content}, leading {}; \
             printed list reproduced with overall sign {}",
            m455.degree().map_or("-".to_string(), |d| d.to_string()),
            prim.first().map(ToString::to_string).unwrap_or_default(),
            if list_matches { "negated" } else { "MISMATCH" }
        ),
    ))
}

pub fn gaussian_limits() -> Result<ReproRow> {
    let t = Instant::now();
    let mut ok = true;
    let mut bad = Vec::new();
    for (order, num, den) in published::SCALED_LIMITS {
        if gaussian_scaled_limit(order) != q(num, den) {
            ok = false;
            bad.push(format!("{order:?}"));
        }
    }
    for n in 0..=5u32 {
        let o = [2 * n, 2 * n, 2 * n];
        ok &= gaussian_scaled_limit(o) == diagonal_closed_form(n);
    }
    let scaled = scaled_moments_diagonal(40, [2, 2, 2])?;
    let last = scaled.last().expect("40 values").to_f64();
    ok &= (last - 1.5).abs() < 0.1;
    Ok(row(
        8,
        "Gaussian limits",
        t,
        ok,
        format!(
            "28 S values {}; scaled (2,2,2) at n = 40: {last:.6}",
            if bad.is_empty() { "exact".to_string() } else { format!("differ at {bad:?}") }
        ),
    ))
}

pub fn normalization() -> Result<ReproRow> {
    let t = Instant::now();
    let mut ok = true;
    let mut worst: f64 = 0.0;
    for (n, d) in [(0, 1), (1, 4), (1, 2)] {
        let c = q(n, d);
        let exact = normalization_constant(&c)?.to_f64();
        let num = gaussian_integral(n as f64 / d as f64, 10.0, 0.25);
        let err = (num - exact).abs();
        worst = worst.max(err);
        ok &= err < 1e-8;
    }
    Ok(row(
        9,
        "normalization constant",
        t,
        ok,
        format!("max |quadrature - closed form| = {worst:.2e}"),
    ))
}

/// Runs every check in order.
pub fn run(tier: Tier) -> Result<Vec<ReproRow>> {
    Ok(vec![
        counting_sequence(tier)?,
        reduced_and_probabilities()?,
        listing()?,
        dice()?,
        oracle_equivalence()?,
        symmetries()?,
        closed_forms()?,
        gaussian_limits()?,
        normalization()?,
    ])
}

