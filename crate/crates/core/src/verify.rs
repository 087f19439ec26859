//! Oracle equivalence harness: recurrence against brute force, the
//! statistics-versus-decks cross-check, and the symmetries of `F`.

use num_bigint::BigInt;

use crate::engine::{compute_f_with, AppendRule, Caps, CyclicStats};
use crate::error::Result;
use crate::words::{
    brute_force_f, for_each_word, is_sbc, is_suckers_bet, multinomial, word_to_decks, Word,
    DEFAULT_BRUTE_FORCE_CAP,
};
use crate::Poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Largest total card count checked for three decks.
    pub max_total: u32,
    /// Largest total card count checked for four decks.
    pub max_total_k4: u32,
    /// Largest word length in the exhaustive statistics-versus-decks check.
    pub max_letters: u32,
}

impl VerifyConfig {
    /// `max_total` for three decks, capped at 8 for four decks and 9 letters for the word scan.
    pub fn with_max_total(max_total: u32) -> Self {
        Self {
            max_total,
            max_total_k4: max_total.min(8),
            max_letters: max_total.min(9),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: u64,
    /// First failing case in order of increasing size.
    pub counterexample: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }
}

/// Recurrence rule with one exponent deliberately off by one, for exercising the harness.
#[derive(Debug, Clone, Copy, Default)]
pub struct CorruptedStats;

impl AppendRule for CorruptedStats {
    fn shift(&self, counts: &[u32], j: usize, out: &mut [i32]) {
        CyclicStats.shift(counts, j, out);
        if j == 0 {
            out[0] += 1;
        }
    }
}

/// Count vectors of length `k` in order of increasing total, lexicographic within a total.
pub fn count_vectors(k: usize, max_total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for n in 0..=max_total {
        let mut cur = vec![0u32; k];
        compositions(n, 0, &mut cur, &mut out);
    }
    out
}

fn compositions(rem: u32, t: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if t + 1 == cur.len() {
        cur[t] = rem;
        out.push(cur.clone());
        return;
    }
    for x in (0..=rem).rev() {
        cur[t] = x;
        compositions(rem - x, t + 1, cur, out);
    }
}

fn dp_vs_brute<R: AppendRule + ?Sized>(
    name: &'static str,
    k: usize,
    max_total: u32,
    rule: &R,
) -> Result<CheckOutcome> {
    let caps = Caps::default();
    let mut cases = 0;
    for a in count_vectors(k, max_total) {
        cases += 1;
        let dp: Poly = compute_f_with::<BigInt, _>(&a, &caps, rule)?;
        let oracle = brute_force_f(&a, DEFAULT_BRUTE_FORCE_CAP)?;
        if dp != oracle {
            return Ok(CheckOutcome {
                name,
                cases,
                counterexample: Some(format!(
                    "a = {a:?}: recurrence gives {dp}, brute force gives {oracle}"
                )),
            });
        }
    }
    Ok(CheckOutcome {
        name,
        cases,
        counterexample: None,
    })
}

fn sbc_cross_check(max_letters: u32) -> CheckOutcome {
    let mut cases = 0;
    for a in count_vectors(3, max_letters) {
        let mut bad = None;
        for_each_word(&a, |l| {
            if bad.is_some() {
                return;
            }
            cases += 1;
            let w = Word::new(3, l.to_vec()).expect("letters in range");
            let d = word_to_decks(&w);
            if is_sbc(&w) != is_suckers_bet(d.decks()) {
                bad = Some(format!("word {w}"));
            }
        });
        if bad.is_some() {
            return CheckOutcome {
                name: "statistics agree with deck comparisons",
                cases,
                counterexample: bad,
            };
        }
    }
    CheckOutcome {
        name: "statistics agree with deck comparisons",
        cases,
        counterexample: None,
    }
}

fn symmetry_checks<R: AppendRule + ?Sized>(max_total: u32, rule: &R) -> Result<Vec<CheckOutcome>> {
    let caps = Caps::default();
    let mut total_ok = CheckOutcome {
        name: "coefficients sum to the multinomial",
        cases: 0,
        counterexample: None,
    };
    let mut reversal = CheckOutcome {
        name: "F(q) = F(1/q)",
        cases: 0,
        counterexample: None,
    };
    let mut cyclic = CheckOutcome {
        name: "F invariant under cyclic q-permutation (equal counts)",
        cases: 0,
        counterexample: None,
    };
    for a in count_vectors(3, max_total) {
        let f: Poly = compute_f_with::<BigInt, _>(&a, &caps, rule)?;
        total_ok.cases += 1;
        if total_ok.counterexample.is_none()
            && f.eval_all_ones() != BigInt::from(multinomial(&a))
        {
            total_ok.counterexample = Some(format!("a = {a:?}"));
        }
        reversal.cases += 1;
        if reversal.counterexample.is_none() && f.invert_variables() != f {
            reversal.counterexample = Some(format!("a = {a:?}"));
        }
        if a.iter().all(|&x| x == a[0]) {
            cyclic.cases += 1;
            if cyclic.counterexample.is_none() && f.rotate_variables(1) != f {
                cyclic.counterexample = Some(format!("a = {a:?}"));
            }
        }
    }
    Ok(vec![total_ok, reversal, cyclic])
}

/// Runs every check with the given recurrence rule.
pub fn run_with<R: AppendRule + ?Sized>(config: &VerifyConfig, rule: &R) -> Result<VerifyReport> {
    let mut checks = vec![
        dp_vs_brute("recurrence equals brute force (k = 3)", 3, config.max_total, rule)?,
        dp_vs_brute("recurrence equals brute force (k = 4)", 4, config.max_total_k4, rule)?,
        sbc_cross_check(config.max_letters),
    ];
    checks.extend(symmetry_checks(config.max_total, rule)?);
    Ok(VerifyReport { checks })
}

pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    run_with(config, &CyclicStats)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_vectors_are_graded() {
        let v = count_vectors(3, 1);
        assert_eq!(v, vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert_eq!(count_vectors(3, 4).len(), 35);
    }

    #[test]
    fn small_run_passes() {
        let r = run(&VerifyConfig::with_max_total(5)).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn vacuous_run_passes() {
        let r = run(&VerifyConfig::with_max_total(0)).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn corruption_is_caught_at_the_smallest_case() {
        let r = run_with(&VerifyConfig::with_max_total(4), &CorruptedStats).unwrap();
        assert!(!r.passed());
        let first = &r.checks[0];
        assert!(first.counterexample.as_deref().unwrap().starts_with("a = [1, 0, 0]"));
    }
}
