//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! `NONTRANS_ACCEPTANCE_TIER=extended` adds `n = 8, 9` to the counting
//! sequence; `=full` also attempts `n = 10..=12`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use nontrans::dice::{enumerate_tieless, verify_dice_cycle};
use nontrans::engine::{
    compute_f, enumerate_words, probability_from_count, reduce_count, sequence_equal_decks, Caps,
};
use nontrans::moments::{
    diagonal_closed_form, exact_moments_diagonal, fit_moment_polynomial, gaussian_scaled_limit,
    normalization_constant, scaled_moment,
};
use nontrans::verify::{self, VerifyConfig};
use nontrans::words::{is_suckers_bet, word_to_decks};
use nontrans::Rational;

type Outcome = std::result::Result<String, String>;

fn q(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> std::result::Result<(), String> {
    let t = start.elapsed();
    ensure(t <= budget, || format!("took {t:.1?}, budget {budget:?}"))
}

// ---- independent oracles ---------------------------------------------------

/// All arrangements of `n` copies each of letters 0, 1, 2.
fn words3(n: usize) -> Vec<Vec<u8>> {
    fn rec(left: &mut [usize; 3], cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if left.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for j in 0..3 {
            if left[j] > 0 {
                left[j] -= 1;
                cur.push(j as u8);
                rec(left, cur, out);
                cur.pop();
                left[j] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut [n; 3], &mut Vec::new(), &mut out);
    out
}

/// Quadratic-time statistics straight from the pair definition.
fn naive_stats(w: &[u8]) -> [i64; 3] {
    let mut s = [0i64; 3];
    for p in 0..w.len() {
        for r in p + 1..w.len() {
            let (a, b) = (w[p] as usize, w[r] as usize);
            if b == a {
                continue;
            }
            if a == (b + 1) % 3 {
                s[b] += 1;
            } else if b == (a + 1) % 3 {
                s[a] -= 1;
            }
        }
    }
    s
}

/// Deck comparison from card values, independent of the statistics.
fn naive_sucker(w: &[u8]) -> bool {
    let mut decks: [Vec<usize>; 3] = Default::default();
    for (p, &j) in w.iter().enumerate() {
        decks[j as usize].push(p);
    }
    (0..3).all(|i| {
        let (a, b) = (&decks[i], &decks[(i + 1) % 3]);
        let wins = a.iter().flat_map(|x| b.iter().map(move |y| x > y)).filter(|&v| v).count();
        2 * wins > a.len() * b.len()
    })
}

fn naive_moment(n: usize, order: [u32; 3]) -> Rational {
    let words = words3(n);
    let total: BigInt = words
        .iter()
        .map(|w| {
            let s = naive_stats(w);
            (0..3).fold(BigInt::from(1), |acc, i| acc * BigInt::from(s[i]).pow(order[i]))
        })
        .sum();
    BigRational::new(total, BigInt::from(words.len()))
}

fn double_factorial_odd(m: u32) -> BigInt {
    // (m - 1)!! for even m
    (1..m).step_by(2).fold(BigInt::from(1), |a, x| a * x)
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::from(1), |a, i| a * (n - i) / (i + 1))
}

/// Gaussian moment with unit variances and all correlations -1/2, via
/// `x = u`, `y = -u/2 + w`, `z = -u/2 - w` with `u ~ N(0,1)`, `w ~ N(0,3/4)`.
fn gaussian_oracle(order: [u32; 3]) -> Rational {
    let [a, b, c] = order;
    let mut acc = Rational::zero();
    for i in 0..=b {
        for j in 0..=c {
            let pu = a + i + j;
            let pw = (b - i) + (c - j);
            if pu % 2 == 1 || pw % 2 == 1 {
                continue;
            }
            // y^b = Σ C(b,i) (-u/2)^i w^{b-i}; z^c = Σ C(c,j) (-u/2)^j (-w)^{c-j}
            let neg = (i + j + (c - j)) % 2 == 1;
            let coef = binomial(b, i) * binomial(c, j);
            let eu = double_factorial_odd(pu);
            let ew = double_factorial_odd(pw) * BigInt::from(3).pow(pw / 2);
            let den = BigInt::from(2).pow(i + j) * BigInt::from(4).pow(pw / 2);
            let mut term = BigRational::new(coef * eu * ew, den);
            if neg {
                term = -term;
            }
            acc += term;
        }
    }
    acc
}

fn trapezoid_3d(c: f64, half: f64, h: f64) -> f64 {
    let m = (half / h).round() as i64;
    let mut sum = 0.0;
    for i in -m..=m {
        let x = i as f64 * h;
        for j in -m..=m {
            let y = j as f64 * h;
            for k in -m..=m {
                let z = k as f64 * h;
                let quad = x * x + y * y + z * z + 2.0 * c * (x * y + y * z + z * x);
                sum += (-0.5 * quad).exp();
            }
        }
    }
    sum * h * h * h
}

// ---- criteria ---------------------------------------------------------------

const COUNTS: [u64; 12] = [
    0, 0, 15, 39, 5196, 32115, 2093199, 19618353, 960165789, 11272949151, 479538890271,
    6504453085104,
];
const PROBS: [f64; 7] = [0.0, 0.0, 0.008928571429, 0.001125541126, 0.006866149723, 0.001872252397, 0.005245153668];

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd)]
enum Tier {
    Default,
    Extended,
    Full,
}

fn tier() -> Tier {
    match std::env::var("NONTRANS_ACCEPTANCE_TIER").as_deref() {
        Ok("extended") => Tier::Extended,
        Ok("full") => Tier::Full,
        _ => Tier::Default,
    }
}

fn c1_counting(tier: Tier) -> Outcome {
    let t = Instant::now();
    let caps = Caps::default();
    let seq = sequence_equal_decks(7, &caps).map_err(|e| e.to_string())?;
    let got: Vec<u64> = seq.iter().map(|x| x.to_u64().unwrap()).collect();
    ensure(got == COUNTS[..7], || format!("got {got:?}"))?;
    for n in 1..=4 {
        let oracle = words3(n).iter().filter(|w| naive_sucker(w)).count() as u64;
        ensure(oracle == got[n - 1], || format!("brute force n={n}: {oracle}"))?;
    }
    within(t, Duration::from_secs(60))?;
    let mut detail = format!("n=1..7 {got:?} in {:.1?}", t.elapsed());
    if tier >= Tier::Extended {
        let t = Instant::now();
        let top = if tier == Tier::Full { 12 } else { 9 };
        for n in 8..=top {
            let c = nontrans::engine::count_suckers(&[n, n, n], &caps).map_err(|e| e.to_string())?;
            ensure(c == BigUint::from(COUNTS[n as usize - 1]), || format!("n={n}: {c}"))?;
        }
        if tier == Tier::Extended {
            within(t, Duration::from_secs(30 * 60))?;
        }
        detail += &format!("; n=8..{top} in {:.1?}", t.elapsed());
    }
    Ok(detail)
}

fn c2_reduced_and_probabilities() -> Outcome {
    let caps = Caps::default();
    let seq = sequence_equal_decks(7, &caps).map_err(|e| e.to_string())?;
    let reduced: Vec<BigUint> = (3..=6u32)
        .map(|n| reduce_count(&[n, n, n], &seq[n as usize - 1]).unwrap())
        .collect();
    let want: Vec<BigUint> = [5u32, 13, 1732, 10705].into_iter().map(BigUint::from).collect();
    ensure(reduced == want, || format!("reduced {reduced:?}"))?;
    let mut worst = 0f64;
    for n in 3..=7u32 {
        let p = probability_from_count(&[n, n, n], &seq[n as usize - 1]);
        let oracle = COUNTS[n as usize - 1] as f64
            / (1..=3 * n as u64).map(|x| x as f64).product::<f64>()
            * (1..=n as u64).map(|x| x as f64).product::<f64>().powi(3);
        let pf = p.to_f64().unwrap();
        ensure((pf - oracle).abs() < 1e-14, || format!("n={n}: {pf} vs oracle {oracle}"))?;
        worst = worst.max((pf - PROBS[n as usize - 1]).abs());
    }
    ensure(worst < 1e-9, || format!("probability error {worst:e}"))?;
    Ok(format!("reduced 5, 13, 1732, 10705; max |p - printed| {worst:.1e}"))
}

fn c3_listing() -> Outcome {
    let t = Instant::now();
    let magic = vec![vec![1, 6, 8], vec![3, 5, 7], vec![2, 4, 9]];
    let mut sizes = Vec::new();
    for (n, want) in [(3u32, 5usize), (4, 13), (5, 1732)] {
        let words = enumerate_words(&[n, n, n], true, true, u64::MAX).map_err(|e| e.to_string())?;
        ensure(words.len() == want, || format!("n={n}: {} sets", words.len()))?;
        ensure(
            words.iter().all(|w| is_suckers_bet(word_to_decks(w).decks())),
            || format!("n={n}: a listed set is not a sucker's bet"),
        )?;
        if n == 3 {
            ensure(
                words.iter().any(|w| word_to_decks(w).decks() == magic.as_slice()),
                || "magic-square set missing".into(),
            )?;
        }
        sizes.push(words.len());
    }
    within(t, Duration::from_secs(120))?;
    Ok(format!("{sizes:?} sets in {:.1?}", t.elapsed()))
}

fn c4_dice() -> Outcome {
    let t = Instant::now();
    let unique = vec![
        vec![1, 1, 5, 5, 5, 5],
        vec![4, 4, 4, 4, 4, 4],
        vec![3, 3, 3, 3, 3, 3],
        vec![2, 2, 2, 2, 6, 6],
    ];
    let efron = vec![
        vec![1, 1, 5, 5, 5, 5],
        vec![4, 4, 4, 4, 4, 4],
        vec![3, 3, 3, 3, 7, 7],
        vec![2, 2, 2, 6, 6, 6],
    ];
    let mut sizes = Vec::new();
    for (m, want) in [(6u32, 1usize), (7, 38), (8, 755)] {
        let sets = enumerate_tieless(4, &[6; 4], m, true, u64::MAX).map_err(|e| e.to_string())?;
        ensure(sets.len() == want, || {
            format!("m={m}: {} sets (faces profile assumed 6,6,6,6)", sets.len())
        })?;
        ensure(
            sets.iter().all(|s| {
                let r = verify_dice_cycle(s.dice());
                r.holds && r.pairs.iter().all(|p| p.ties == 0)
            }),
            || format!("m={m}: listed set fails the cycle"),
        )?;
        if m == 6 {
            ensure(sets[0].dice() == unique.as_slice(), || format!("m=6 set {}", sets[0]))?;
        }
        if m == 7 {
            ensure(sets.iter().any(|s| s.dice() == efron.as_slice()), || "Efron's set missing".into())?;
        }
        sizes.push(sets.len());
    }
    within(t, Duration::from_secs(300))?;
    Ok(format!("{sizes:?} sets in {:.1?}", t.elapsed()))
}

fn c5_oracles() -> Outcome {
    let t = Instant::now();
    let report = verify::run(&VerifyConfig {
        max_total: 10,
        max_total_k4: 8,
        max_letters: 9,
    })
    .map_err(|e| e.to_string())?;
    for c in &report.checks {
        ensure(c.passed(), || format!("{}: {}", c.name, c.counterexample.clone().unwrap()))?;
    }
    // The harness oracle itself, against the test-local one.
    for w in words3(3) {
        let word = nontrans::words::Word::new(3, w.iter().map(|x| x + 1).collect()).unwrap();
        ensure(
            nontrans::words::stats(&word) == naive_stats(&w).to_vec(),
            || format!("stats differ on {word}"),
        )?;
    }
    within(t, Duration::from_secs(180))?;
    let cases: u64 = report.checks.iter().map(|c| c.cases).sum();
    Ok(format!("{cases} cases in {:.1?}", t.elapsed()))
}

fn c6_symmetries() -> Outcome {
    let caps = Caps::default();
    for n in 1..=6u32 {
        let f = compute_f(&[n, n, n], &caps).map_err(|e| e.to_string())?;
        ensure(f.invert_variables() == f, || format!("reversal fails at n={n}"))?;
        ensure(f.rotate_variables(1) == f, || format!("rotation fails at n={n}"))?;
    }
    let mut odd = Vec::new();
    for i in 0..=6u32 {
        for j in 0..=6 - i {
            for k in 0..=6 - i - j {
                if (i + j + k) % 2 == 1 {
                    odd.push([i, j, k]);
                }
            }
        }
    }
    let table = exact_moments_diagonal(6, &odd).map_err(|e| e.to_string())?;
    ensure(table.iter().flatten().all(Zero::is_zero), || "an odd moment is non-zero".into())?;
    Ok(format!("n <= 6; {} odd orders vanish", odd.len()))
}

const M455: [i64; 19] = [
    39239200, 66146080, -816055240, 1114633520, 3208398492, -13589761044, 25028291837,
    -38043392560, 62580129596, -103184180072, 157753326632, -224678523360, 293133737664,
    -336053442624, 322828696448, -243844376832, 132045454336, -44452356096, 6864979968,
];

fn printed_455(n: i64) -> Rational {
    let p = M455.iter().fold(BigInt::zero(), |acc, &c| acc * n + c);
    BigRational::new(BigInt::from(n).pow(3) * p, BigInt::from(2837835))
}

fn c7_closed_forms() -> Outcome {
    let t = Instant::now();
    let var = fit_moment_polynomial([0, 0, 2], None).map_err(|e| e.to_string())?;
    let cov = fit_moment_polynomial([0, 1, 1], None).map_err(|e| e.to_string())?;
    let m4 = fit_moment_polynomial([0, 0, 4], None).map_err(|e| e.to_string())?;
    ensure(var.coeffs == [q(0, 1), q(0, 1), q(1, 3), q(2, 3)], || format!("variance {var}"))?;
    ensure(cov.coeffs == [q(0, 1), q(0, 1), q(0, 1), q(-1, 3)], || format!("covariance {cov}"))?;
    for n in 1..=25i64 {
        let v = var.eval(n as u32);
        let kurt = m4.eval(n as u32) / (&v * &v);
        let want = q(3 * (10 * n * n - n - 4), 5 * n * (2 * n + 1));
        ensure(kurt == want, || format!("kurtosis at n={n}"))?;
    }
    let fit = fit_moment_polynomial([4, 5, 5], None).map_err(|e| e.to_string())?;
    ensure(fit.degree() == Some(21), || format!("(4,5,5) degree {:?}", fit.degree()))?;
    for n in 1..=3usize {
        let oracle = naive_moment(n, [4, 5, 5]);
        ensure(fit.eval(n as u32) == oracle, || format!("(4,5,5) fit vs brute force at n={n}"))?;
    }
    // The printed list is reproduced with the overall sign flipped; brute force fixes the sign.
    for n in 1..=30i64 {
        ensure(fit.eval(n as u32) == -printed_455(n), || format!("(4,5,5) vs printed at n={n}"))?;
    }
    let (content, shift, prim) = fit.factored_parts();
    ensure(content == q(-1, 2837835) && shift == 3, || format!("content {content}, shift {shift}"))?;
    let want: Vec<BigInt> = M455.iter().map(|&c| BigInt::from(c)).collect();
    ensure(prim == want, || "coefficient list differs".into())?;
    within(t, Duration::from_secs(30 * 60))?;
    Ok(format!(
        "variance, covariance, kurtosis exact; (4,5,5) = -n^3/2837835 * (39239200 n^18 + ...), in {:.1?}",
        t.elapsed()
    ))
}

const S_TABLE: [([u32; 3], i64, i64); 28] = [
    ([0, 0, 0], 1, 1), ([0, 0, 2], 1, 1), ([0, 0, 4], 3, 1), ([0, 1, 1], -1, 2),
    ([0, 1, 3], -3, 2), ([0, 1, 5], -15, 2), ([0, 2, 2], 3, 2), ([0, 2, 4], 6, 1),
    ([0, 3, 3], -21, 4), ([0, 3, 5], -30, 1), ([0, 4, 4], 57, 2), ([0, 5, 5], -765, 4),
    ([1, 1, 2], 0, 1), ([1, 1, 4], 3, 2), ([1, 2, 3], -3, 4), ([1, 2, 5], -15, 2),
    ([1, 3, 4], 3, 2), ([1, 4, 5], -45, 4), ([2, 2, 2], 3, 2), ([2, 2, 4], 6, 1),
    ([2, 3, 3], -3, 1), ([2, 3, 5], -45, 2), ([2, 4, 4], 45, 2), ([2, 5, 5], -135, 1),
    ([3, 3, 4], 0, 1), ([3, 4, 5], -135, 4), ([4, 4, 4], 135, 2), ([4, 5, 5], -945, 4),
];

fn c8_gaussian() -> Outcome {
    for (order, num, den) in S_TABLE {
        let s = gaussian_scaled_limit(order);
        ensure(s == q(num, den), || format!("S{order:?} = {s}"))?;
        ensure(gaussian_oracle(order) == s, || format!("oracle disagrees at {order:?}"))?;
    }
    for n in 0..=5u32 {
        let o = [2 * n, 2 * n, 2 * n];
        ensure(diagonal_closed_form(n) == gaussian_scaled_limit(o), || format!("diagonal n={n}"))?;
    }
    let s40 = scaled_moment(40, [2, 2, 2]).map_err(|e| e.to_string())?.to_f64();
    ensure((s40 - 1.5).abs() < 0.1, || format!("scaled (2,2,2) at n=40 is {s40}"))?;
    Ok(format!("28 values exact; scaled (2,2,2) at n=40 = {s40:.6}"))
}

fn c9_normalization() -> Outcome {
    let mut worst = 0f64;
    for (num, den) in [(0i64, 1i64), (1, 4), (1, 2)] {
        let c = num as f64 / den as f64;
        let exact = normalization_constant(&q(num, den)).map_err(|e| e.to_string())?.to_f64();
        let formula = (2.0 * std::f64::consts::PI).powf(1.5) / ((1.0 - c) * (1.0 + 2.0 * c).sqrt());
        ensure((exact - formula).abs() < 1e-12, || format!("closed form at c={c}"))?;
        let numeric = trapezoid_3d(c, 10.0, 0.25);
        worst = worst.max((numeric - exact).abs());
    }
    ensure(worst < 1e-8, || format!("quadrature error {worst:e}"))?;
    Ok(format!("max |quadrature - closed form| {worst:.1e}"))
}

fn main() -> ExitCode {
    let tier = tier();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 counting sequence", Box::new(move || c1_counting(tier))),
        ("2 reduced counts and probabilities", Box::new(c2_reduced_and_probabilities)),
        ("3 listing", Box::new(c3_listing)),
        ("4 tie-less dice", Box::new(c4_dice)),
        ("5 oracle equivalence", Box::new(c5_oracles)),
        ("6 symmetries", Box::new(c6_symmetries)),
        ("7 closed forms", Box::new(c7_closed_forms)),
        ("8 Gaussian limits", Box::new(c8_gaussian)),
        ("9 normalization constant", Box::new(c9_normalization)),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
