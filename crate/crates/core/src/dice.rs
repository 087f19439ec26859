//! Dice with repeated faces as axis-parallel lattice paths.
//!
//! A tie-less set of `k` dice using the denominations `1..=m` is a path of `m`
//! steps from the origin: step `t` moves `L` units along axis `j` when die `j`
//! carries denomination `t` on `L` faces. Unit steps recover the word model.

use std::fmt;

use crate::error::{Error, Result};
use crate::words::{beats_count, BeatCount, StatVector, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    /// 0-based axis.
    pub axis: usize,
    pub length: u32,
}

/// A path of axis-parallel steps with positive lengths; step `t` owns denomination `t + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StepPath {
    k: usize,
    steps: Vec<Step>,
}

impl StepPath {
    pub fn new(k: usize, steps: Vec<Step>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput("need at least one axis".into()));
        }
        for s in &steps {
            if s.axis >= k || s.length == 0 {
                return Err(Error::InvalidInput(format!("bad step {s:?} for k = {k}")));
            }
        }
        Ok(Self { k, steps })
    }

    /// Builds a path from consecutive lattice points, starting at the origin.
    pub fn from_points(points: &[Vec<u32>]) -> Result<Self> {
        let k = points.first().map(Vec::len).unwrap_or(0);
        let mut steps = Vec::new();
        let mut cur = vec![0u32; k];
        for p in points {
            if p.len() != k {
                return Err(Error::Dimension { expected: k, got: p.len() });
            }
            if *p == cur {
                continue;
            }
            let moved: Vec<usize> = (0..k).filter(|&t| p[t] != cur[t]).collect();
            if moved.len() != 1 || p[moved[0]] < cur[moved[0]] {
                return Err(Error::InvalidInput(format!(
                    "{cur:?} -> {p:?} is not a positive axis-parallel step"
                )));
            }
            let axis = moved[0];
            steps.push(Step {
                axis,
                length: p[axis] - cur[axis],
            });
            cur.clone_from(p);
        }
        Self::new(k, steps)
    }

    /// The unit-step path of a word.
    pub fn from_word(w: &Word) -> Self {
        Self {
            k: w.k(),
            steps: w
                .letters()
                .iter()
                .map(|&l| Step {
                    axis: l as usize - 1,
                    length: 1,
                })
                .collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn endpoint(&self) -> Vec<u32> {
        let mut e = vec![0u32; self.k];
        for s in &self.steps {
            e[s.axis] += s.length;
        }
        e
    }

    /// True when no two consecutive steps share an axis.
    pub fn is_normal_form(&self) -> bool {
        self.steps.windows(2).all(|w| w[0].axis != w[1].axis)
    }

    /// Merges consecutive same-axis steps.
    pub fn merged(&self) -> Self {
        let mut steps: Vec<Step> = Vec::with_capacity(self.steps.len());
        for &s in &self.steps {
            match steps.last_mut() {
                Some(last) if last.axis == s.axis => last.length += s.length,
                _ => steps.push(s),
            }
        }
        Self { k: self.k, steps }
    }

    /// Relabels axis `j` as `j + shift (mod k)`.
    pub fn rotated(&self, shift: usize) -> Self {
        Self {
            k: self.k,
            steps: self
                .steps
                .iter()
                .map(|s| Step {
                    axis: (s.axis + shift) % self.k,
                    length: s.length,
                })
                .collect(),
        }
    }
}

/// `k` dice, each a sorted multiset of faces, jointly using the denominations `1..=m`
/// with each denomination on exactly one die.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiceSet {
    dice: Vec<Vec<u32>>,
    m: u32,
}

impl DiceSet {
    /// Validates the tie-less standard form.
    pub fn new(dice: Vec<Vec<u32>>) -> Result<Self> {
        let mut dice = dice;
        for d in &mut dice {
            d.sort_unstable();
        }
        let m = dice.iter().flatten().copied().max().unwrap_or(0);
        let mut owner = vec![None; m as usize + 1];
        for (j, d) in dice.iter().enumerate() {
            for &f in d {
                if f == 0 {
                    return Err(Error::Normalization("face value 0".into()));
                }
                match owner[f as usize] {
                    Some(o) if o != j => {
                        return Err(Error::Normalization(format!(
                            "denomination {f} appears on dice {} and {} (tie)",
                            o + 1,
                            j + 1
                        )))
                    }
                    _ => owner[f as usize] = Some(j),
                }
            }
        }
        if let Some(gap) = (1..=m).find(|&f| owner[f as usize].is_none()) {
            return Err(Error::Normalization(format!("denomination {gap} unused")));
        }
        Ok(Self { dice, m })
    }

    pub fn dice(&self) -> &[Vec<u32>] {
        &self.dice
    }

    pub fn k(&self) -> usize {
        self.dice.len()
    }

    /// Number of distinct denominations.
    pub fn denominations(&self) -> u32 {
        self.m
    }

    /// The path with one step per denomination.
    pub fn to_path(&self) -> StepPath {
        let mut steps = vec![
            Step {
                axis: 0,
                length: 0
            };
            self.m as usize
        ];
        for (j, d) in self.dice.iter().enumerate() {
            for &f in d {
                let s = &mut steps[f as usize - 1];
                s.axis = j;
                s.length += 1;
            }
        }
        StepPath { k: self.k(), steps }
    }
}

impl fmt::Display for DiceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dice.iter().map(|d| format!("{d:?}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Step `t` of length `L` on axis `j` puts `L` faces showing `t + 1` on die `j`.
pub fn path_to_dice(p: &StepPath) -> DiceSet {
    let mut dice = vec![Vec::new(); p.k];
    for (t, s) in p.steps.iter().enumerate() {
        dice[s.axis].extend(std::iter::repeat_n(t as u32 + 1, s.length as usize));
    }
    DiceSet {
        dice,
        m: p.steps.len() as u32,
    }
}

/// Win margins of die `i` over die `i+1` (cyclic), accumulated along the path.
///
/// A step of length `L` on axis `j` from point `c` beats everything already on
/// dice `j+1` and `j-1`: `s_j += L c_{j+1}` and `s_{j-1} -= L c_{j-1}`.
pub fn generalized_stats(p: &StepPath) -> StatVector {
    let k = p.k;
    let mut c = vec![0i64; k];
    let mut s = vec![0i64; k];
    for st in &p.steps {
        let j = st.axis;
        let l = st.length as i64;
        s[j] += l * c[(j + 1) % k];
        s[(j + k - 1) % k] -= l * c[(j + k - 1) % k];
        c[j] += l;
    }
    s
}

/// Every cyclic head-to-head result of a dice cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleReport {
    /// `pairs[i]` is die `i` against die `i+1` (cyclic).
    pub pairs: Vec<BeatCount>,
    /// Each die strictly beats the next.
    pub holds: bool,
}

pub fn verify_dice_cycle(dice: &[Vec<u32>]) -> CycleReport {
    let k = dice.len();
    let pairs: Vec<BeatCount> = (0..k)
        .map(|i| beats_count(&dice[i], &dice[(i + 1) % k]))
        .collect();
    let holds = k >= 2 && pairs.iter().all(|b| b.wins > b.losses);
    CycleReport { pairs, holds }
}

/// Tie-less sucker's-bet dice sets with the given face counts and exactly `m` denominations.
///
/// Enumerates paths of `m` steps ending at `faces` whose cyclic statistics are all
/// at least 1, depth first over (axis, length) in increasing order. Consecutive
/// steps may share an axis: a die showing `[1, 1, 2, 2, ..]` is a different set
/// from one showing `[1, 1, 1, 1, ..]`. With `reduce` (equal face counts only)
/// the first step is pinned to axis 0, which selects one member of every
/// axis-rotation orbit.
pub fn enumerate_tieless(
    k: usize,
    faces: &[u32],
    m: u32,
    reduce: bool,
    cap: u64,
) -> Result<Vec<DiceSet>> {
    enumerate_tieless_with(k, faces, m, reduce, true, cap)
}

/// As [`enumerate_tieless`], optionally without the feasibility pruning.
pub fn enumerate_tieless_with(
    k: usize,
    faces: &[u32],
    m: u32,
    reduce: bool,
    prune: bool,
    cap: u64,
) -> Result<Vec<DiceSet>> {
    if k < 3 {
        return Err(Error::InvalidInput(format!("need k >= 3 dice, got {k}")));
    }
    if faces.len() != k {
        return Err(Error::Dimension {
            expected: k,
            got: faces.len(),
        });
    }
    if faces.contains(&0) {
        return Err(Error::InvalidInput("every die needs at least one face".into()));
    }
    if reduce && faces.iter().any(|&f| f != faces[0]) {
        return Err(Error::UnsupportedSymmetry(faces.to_vec()));
    }
    let mut search = PathSearch {
        faces: faces.iter().map(|&f| f as i64).collect(),
        m: m as usize,
        counts: vec![0; k],
        stats: vec![0; k],
        steps: Vec::with_capacity(m as usize),
        prune,
        reduce,
        cap,
        out: Vec::new(),
    };
    if (m as usize) < k {
        return Ok(Vec::new());
    }
    search.descend()?;
    Ok(search.out)
}

struct PathSearch {
    faces: Vec<i64>,
    m: usize,
    counts: Vec<i64>,
    stats: Vec<i64>,
    steps: Vec<Step>,
    prune: bool,
    reduce: bool,
    cap: u64,
    out: Vec<DiceSet>,
}

impl PathSearch {
    fn k(&self) -> usize {
        self.faces.len()
    }

    fn apply(&mut self, axis: usize, len: i64, sign: i64) {
        let k = self.k();
        let (next, prev) = ((axis + 1) % k, (axis + k - 1) % k);
        if sign < 0 {
            self.counts[axis] -= len;
        }
        self.stats[axis] += sign * len * self.counts[next];
        self.stats[prev] -= sign * len * self.counts[prev];
        if sign > 0 {
            self.counts[axis] += len;
        }
    }

    fn feasible(&self) -> bool {
        let k = self.k();
        let rem_steps = (self.m - self.steps.len()) as i64;
        let rem_faces: i64 = (0..k).map(|j| self.faces[j] - self.counts[j]).sum();
        let open = (0..k).filter(|&j| self.counts[j] < self.faces[j]).count() as i64;
        if open > rem_steps || rem_faces < rem_steps {
            return false;
        }
        (0..k).all(|i| {
            let next = (i + 1) % k;
            let rem_i = self.faces[i] - self.counts[i];
            let rem_next = self.faces[next] - self.counts[next];
            self.stats[i] + rem_i * self.faces[next] - rem_next * self.counts[i] >= 1
        })
    }

    fn descend(&mut self) -> Result<()> {
        if self.prune && !self.feasible() {
            return Ok(());
        }
        if self.steps.len() == self.m {
            if self.counts == self.faces && self.stats.iter().all(|&s| s >= 1) {
                if self.out.len() as u64 >= self.cap {
                    return Err(Error::Size {
                        what: "dice listing".into(),
                        limit: self.cap,
                        layer: None,
                    });
                }
                let path = StepPath {
                    k: self.k(),
                    steps: self.steps.clone(),
                };
                self.out.push(path_to_dice(&path));
            }
            return Ok(());
        }
        let axes = if self.reduce && self.steps.is_empty() {
            0..1
        } else {
            0..self.k()
        };
        for axis in axes {
            let room = self.faces[axis] - self.counts[axis];
            for len in 1..=room {
                self.apply(axis, len, 1);
                self.steps.push(Step {
                    axis,
                    length: len as u32,
                });
                let r = self.descend();
                self.steps.pop();
                self.apply(axis, len, -1);
                r?;
            }
        }
        Ok(())
    }
}
