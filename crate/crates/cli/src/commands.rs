use std::fmt::Write as _;
use std::fs;

use num_bigint::BigUint;
use serde::Serialize;

use nontrans::dice::{enumerate_tieless, verify_dice_cycle};
use nontrans::engine::{
    compute_f, count_suckers, enumerate_words, reduce_count, sequence_equal_decks,
};
use nontrans::moments::{
    default_degree_bound, exact_moment, fit_moment_polynomial, gaussian_scaled_limit,
    scaled_moments_diagonal, Order,
};
use nontrans::repro::{self, Tier};
use nontrans::scalar::{rational_to_f64, to_decimal};
use nontrans::verify::{self, CorruptedStats, VerifyConfig};
use nontrans::words::{multinomial, stats, word_to_decks};
use nontrans::{Error, Rational};

use crate::output::{emit, join};
use crate::{
    Context, CountArgs, DeckSizes, DiceArgs, EnumerateArgs, Failure, MomentsArgs, ReproArgs,
    VerifyArgs,
};

/// Digits after the point in decimal renderings.
const PLACES: u32 = 12;

enum Sizes {
    Single(Vec<u32>),
    EqualRange(u32, u32),
}

fn parse_sizes(s: &DeckSizes) -> Result<Sizes, Failure> {
    if let Some(d) = &s.decks {
        if d.is_empty() {
            return Err(Failure::Usage("--decks needs at least one size".into()));
        }
        return Ok(Sizes::Single(d.clone()));
    }
    let raw = s.equal.as_deref().unwrap_or_default().trim();
    let parse = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| Failure::Usage(format!("bad deck size {t:?}")))
    };
    match raw.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
            if a == 0 || a > b {
                return Err(Failure::Usage(format!("bad range {raw:?}")));
            }
            Ok(Sizes::EqualRange(a, b))
        }
        None => Ok(Sizes::Single(vec![parse(raw)?; 3])),
    }
}

fn single(s: &DeckSizes) -> Result<Vec<u32>, Failure> {
    match parse_sizes(s)? {
        Sizes::Single(a) => Ok(a),
        Sizes::EqualRange(..) => Err(Failure::Usage("a range is not accepted here".into())),
    }
}

fn parse_order(v: &[u32]) -> Result<Order, Failure> {
    <[u32; 3]>::try_from(v)
        .map_err(|_| Failure::Usage(format!("an order has three entries, got {}", v.len())))
}

fn equal(a: &[u32]) -> bool {
    a.iter().all(|&x| x == a[0])
}

#[derive(Serialize)]
struct CountRecord {
    decks: Vec<u32>,
    count: String,
    /// Present for equal deck sizes.
    reduced: Option<String>,
    total: String,
    probability: String,
    decimal: String,
}

fn count_record(a: &[u32], count: &BigUint) -> Result<CountRecord, Failure> {
    let total = multinomial(a);
    let reduced = if a.len() > 1 && equal(a) {
        Some(reduce_count(a, count)?.to_string())
    } else {
        None
    };
    let p = Rational::new(count.clone().into(), total.clone().into());
    Ok(CountRecord {
        decks: a.to_vec(),
        count: count.to_string(),
        reduced,
        probability: format!("{count}/{total}"),
        total: total.to_string(),
        decimal: to_decimal(&p, PLACES),
    })
}

fn count_line(r: &CountRecord) -> String {
    let mut s = format!("decks={} count={}", join(&r.decks, ","), r.count);
    if let Some(red) = &r.reduced {
        let _ = write!(s, " reduced={red}");
    }
    let _ = writeln!(s, " probability={} decimal={}", r.probability, r.decimal);
    s
}

pub fn count(ctx: &Context, args: &CountArgs) -> Result<(), Failure> {
    let records = match parse_sizes(&args.sizes)? {
        Sizes::Single(a) => {
            let c = if let Some(path) = &args.dump_poly {
                let f = compute_f(&a, &ctx.caps)?;
                fs::write(path, f.to_text())?;
                f.pos().eval_all_ones().to_biguint().expect("nonnegative count")
            } else {
                count_suckers(&a, &ctx.caps)?
            };
            vec![count_record(&a, &c)?]
        }
        Sizes::EqualRange(lo, hi) => {
            if args.dump_poly.is_some() {
                return Err(Failure::Usage("--dump-poly needs a single deck-size vector".into()));
            }
            let seq = sequence_equal_decks(hi, &ctx.caps)?;
            (lo..=hi)
                .map(|n| count_record(&[n; 3], &seq[n as usize - 1]))
                .collect::<Result<_, _>>()?
        }
    };
    let text: String = records.iter().map(count_line).collect();
    if records.len() == 1 {
        emit(ctx, &text, &records[0])
    } else {
        emit(ctx, &text, &records)
    }
}

#[derive(Serialize)]
struct SetRecord {
    decks: Vec<Vec<u32>>,
    stats: Vec<i64>,
    word: String,
}

pub fn enumerate(ctx: &Context, args: &EnumerateArgs) -> Result<(), Failure> {
    let a = single(&args.sizes)?;
    let words = enumerate_words(&a, args.reduce, true, ctx.caps.max_listed)?;
    let records: Vec<SetRecord> = words
        .iter()
        .map(|w| SetRecord {
            decks: word_to_decks(w).into_decks(),
            stats: stats(w),
            word: w.to_string(),
        })
        .collect();
    let mut text = String::new();
    for r in &records {
        let decks: Vec<String> = r.decks.iter().map(|d| join(d, ",")).collect();
        let _ = writeln!(
            text,
            "word={} decks={} stats={}",
            r.word,
            decks.join("|"),
            join(&r.stats, ",")
        );
    }
    let _ = writeln!(text, "count={}", records.len());
    emit(ctx, &text, &records)
}

#[derive(Serialize)]
struct DiceRecord {
    dice: Vec<Vec<u32>>,
    /// Wins minus losses of die `i` against die `i+1`, cyclically.
    margins: Vec<i64>,
    /// Face pairs per comparison.
    pairs: Vec<u64>,
}

pub fn dice(ctx: &Context, args: &DiceArgs) -> Result<(), Failure> {
    let k = args.k.unwrap_or(args.faces.len());
    if k != args.faces.len() {
        return Err(Failure::Usage(format!(
            "--k {k} but {} face counts given",
            args.faces.len()
        )));
    }
    let sets = enumerate_tieless(k, &args.faces, args.denoms, args.reduce, ctx.caps.max_listed)?;
    let mut records = Vec::with_capacity(sets.len());
    for s in &sets {
        let report = verify_dice_cycle(s.dice());
        if !report.holds {
            return Err(Error::Invariant(format!("listed set {s} is not a cycle")).into());
        }
        records.push(DiceRecord {
            dice: s.dice().to_vec(),
            margins: report.pairs.iter().map(|p| p.margin()).collect(),
            pairs: report.pairs.iter().map(|p| p.total()).collect(),
        });
    }
    let mut text = String::new();
    for r in &records {
        let dice: Vec<String> = r.dice.iter().map(|d| join(d, ",")).collect();
        let _ = writeln!(text, "dice={} margins={}", dice.join("|"), join(&r.margins, ","));
    }
    let _ = writeln!(text, "count={}", records.len());
    emit(ctx, &text, &records)
}

#[derive(Serialize)]
struct MomentRecord {
    n: u32,
    order: Order,
    value: String,
    decimal: String,
}

#[derive(Serialize)]
struct FitRecord {
    order: Order,
    degree_bound: u32,
    degree: Option<usize>,
    /// Descending powers of `n`.
    coefficients: Vec<String>,
    factored: String,
}

#[derive(Serialize)]
struct LimitRecord {
    order: Order,
    value: String,
}

#[derive(Serialize)]
struct ConvergenceRow {
    n: u32,
    scaled: f64,
    limit: String,
    error: f64,
}

pub fn moments(ctx: &Context, args: &MomentsArgs) -> Result<(), Failure> {
    if args.n.is_some() != args.order.is_some() {
        return Err(Failure::Usage("--n and --order go together".into()));
    }
    if let (Some(n), Some(order)) = (args.n, &args.order) {
        let order = parse_order(order)?;
        let v = exact_moment(n, order)?;
        let rec = MomentRecord {
            n,
            order,
            decimal: to_decimal(&v, PLACES),
            value: v.to_string(),
        };
        let text = format!(
            "n={} order={} value={} decimal={}\n",
            n,
            join(&order, ","),
            rec.value,
            rec.decimal
        );
        return emit(ctx, &text, &rec);
    }
    if let Some(order) = &args.fit {
        let order = parse_order(order)?;
        let bound = args.degree_bound.unwrap_or_else(|| default_degree_bound(order));
        let poly = fit_moment_polynomial(order, Some(bound))?;
        let rec = FitRecord {
            order,
            degree_bound: bound,
            degree: poly.degree(),
            coefficients: poly.descending().iter().map(ToString::to_string).collect(),
            factored: poly.factored(),
        };
        let text = format!(
            "order={} degree={} factored={}\ncoefficients={}\n",
            join(&order, ","),
            rec.degree.map_or("-".into(), |d| d.to_string()),
            rec.factored,
            rec.coefficients.join(" ")
        );
        return emit(ctx, &text, &rec);
    }
    if args.limits {
        let m = args.max_order.expect("clap requires --max-order");
        let mut rows = Vec::new();
        for i in 0..=m {
            for j in i..=m {
                for k in j..=m {
                    if (i + j + k) % 2 == 0 {
                        let order = [i, j, k];
                        rows.push(LimitRecord {
                            order,
                            value: gaussian_scaled_limit(order).to_string(),
                        });
                    }
                }
            }
        }
        let text: String = rows
            .iter()
            .map(|r| format!("S({}) = {}\n", join(&r.order, ","), r.value))
            .collect();
        return emit(ctx, &text, &rows);
    }
    if let (Some(order), Some(n_max)) = (&args.converge, args.n_max) {
        let order = parse_order(order)?;
        if n_max == 0 {
            return Err(Failure::Usage("--n-max must be at least 1".into()));
        }
        let limit = gaussian_scaled_limit(order);
        let lf = rational_to_f64(&limit);
        let rows: Vec<ConvergenceRow> = scaled_moments_diagonal(n_max, order)?
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let v = s.to_f64();
                ConvergenceRow {
                    n: i as u32 + 1,
                    scaled: v,
                    limit: limit.to_string(),
                    error: (v - lf).abs(),
                }
            })
            .collect();
        let mut text = String::from("n\tscaled\tlimit\terror\n");
        for r in &rows {
            let _ = writeln!(text, "{}\t{:.12}\t{}\t{:.3e}", r.n, r.scaled, r.limit, r.error);
        }
        return emit(ctx, &text, &rows);
    }
    Err(Failure::Usage("choose one of --order, --fit, --limits, --converge".into()))
}

#[derive(Serialize)]
struct CheckRecord {
    name: &'static str,
    cases: u64,
    passed: bool,
    counterexample: Option<String>,
}

#[derive(Serialize)]
struct VerifyRecord {
    max_total: u32,
    passed: bool,
    checks: Vec<CheckRecord>,
}

pub fn verify(ctx: &Context, args: &VerifyArgs) -> Result<(), Failure> {
    let config = VerifyConfig::with_max_total(args.max_total);
    let report = if args.corrupt_recurrence {
        verify::run_with(&config, &CorruptedStats)?
    } else {
        verify::run(&config)?
    };
    let rec = VerifyRecord {
        max_total: args.max_total,
        passed: report.passed(),
        checks: report
            .checks
            .iter()
            .map(|c| CheckRecord {
                name: c.name,
                cases: c.cases,
                passed: c.passed(),
                counterexample: c.counterexample.clone(),
            })
            .collect(),
    };
    let mut text = String::new();
    for c in &rec.checks {
        let mark = if c.passed { "PASS" } else { "FAIL" };
        let _ = write!(text, "{mark}  {} ({} cases)", c.name, c.cases);
        if let Some(ce) = &c.counterexample {
            let _ = write!(text, ": {ce}");
        }
        text.push('\n');
    }
    emit(ctx, &text, &rec)?;
    if rec.passed {
        Ok(())
    } else {
        if let Some(c) = rec.checks.iter().find(|c| !c.passed) {
            eprintln!(
                "invariant violated: {}: {}",
                c.name,
                c.counterexample.as_deref().unwrap_or_default()
            );
        }
        Err(Failure::Checks)
    }
}

#[derive(Serialize)]
struct ReproRecord {
    id: u32,
    name: String,
    passed: bool,
    detail: String,
}

pub fn repro(ctx: &Context, args: &ReproArgs) -> Result<(), Failure> {
    let tier = if args.extended { Tier::Extended } else { Tier::Default };
    let rows = repro::run(tier)?;
    let mut text = String::new();
    for r in &rows {
        let mark = if r.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(text, "{mark}  {}. {}: {} [{:.1}s]", r.id, r.name, r.detail, r.seconds);
    }
    let records: Vec<ReproRecord> = rows
        .iter()
        .map(|r| ReproRecord {
            id: r.id,
            name: r.name.clone(),
            passed: r.passed,
            detail: r.detail.clone(),
        })
        .collect();
    emit(ctx, &text, &records)?;
    if rows.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(Failure::Checks)
    }
}

