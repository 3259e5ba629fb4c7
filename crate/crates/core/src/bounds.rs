//! Minimum-distance bounds of a constraint graph.
//!
//! * `d_min`: the smallest `|N(M')| - |M'| + 1` over nonempty row subsets.
//!   No code valid for the graph with `q^s` codewords can beat it.
//! * `k_sys`/`d_sys`: the smallest `max-row-zeros + 1` of a matched
//!   adjacency matrix over all M-covering matchings, and `n - k_sys + 1`.
//!   No systematic linear code valid for the graph can beat `d_sys`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ConstraintGraph, Matching, DEFAULT_SUBSET_LIMIT};

/// Default limit on `s` for the exact matching search.
pub const DEFAULT_MATCHING_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest `s` for searches over all `2^s` row subsets.
    pub max_subset_s: usize,
    /// Largest `s` for the exact branch-and-bound search over matchings.
    pub max_matching_s: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_subset_s: DEFAULT_SUBSET_LIMIT,
            max_matching_s: DEFAULT_MATCHING_LIMIT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DminBound {
    pub d_min: usize,
    /// Lexicographically smallest minimizing row subset.
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KsysMode {
    Exact,
    Heuristic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KsysResult {
    pub k_sys: usize,
    pub matching: Matching,
    /// False when `k_sys` is only an upper bound from the heuristic.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub d_min: usize,
    pub k_min: usize,
    /// `None` when no M-covering matching exists.
    pub d_sys: Option<usize>,
    pub k_sys: Option<usize>,
    /// False only when `k_sys` comes from the heuristic search.
    pub exact: bool,
    pub witness_subset: Vec<usize>,
    pub witness_matching: Option<Vec<usize>>,
    pub a: usize,
    #[serde(rename = "r_M")]
    pub r_m: usize,
    pub thm2_feasible: bool,
}

pub fn d_min_bound(g: &ConstraintGraph, limits: &SearchLimits) -> Result<DminBound> {
    g.check_subset_limit(limits.max_subset_s)?;
    let mut best: Option<(i64, Vec<usize>)> = None;
    g.for_each_subset(|subset, cover| {
        // Negative when Hall's condition fails; clamped to zero below.
        let value = cover.len() as i64 - subset.len() as i64 + 1;
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, subset.to_vec()));
        }
        true
    });
    let (d_min, witness) = best.expect("at least one nonempty subset");
    Ok(DminBound {
        d_min: d_min.max(0) as usize,
        witness,
    })
}

/// `k` of a matching: one more than the largest number of zeros in a row of
/// its matched adjacency matrix.
pub fn k_of_matching(g: &ConstraintGraph, matching: &Matching) -> usize {
    row_zero_counts(g, matching.assignment())
        .into_iter()
        .max()
        .unwrap_or(0)
        + 1
}

fn row_zero_counts(g: &ConstraintGraph, assignment: &[usize]) -> Vec<usize> {
    (0..g.s())
        .map(|i| {
            let base = g.row_zeros(i).len();
            let stolen = assignment
                .iter()
                .enumerate()
                .filter(|&(r, &j)| r != i && g.has_edge(i, j))
                .count();
            base + stolen
        })
        .collect()
}

pub fn k_sys_search(
    g: &ConstraintGraph,
    mode: KsysMode,
    limits: &SearchLimits,
) -> Result<KsysResult> {
    match mode {
        KsysMode::Exact => exact_k_sys(g, limits),
        KsysMode::Heuristic => heuristic_k_sys(g),
    }
}

fn exact_k_sys(g: &ConstraintGraph, limits: &SearchLimits) -> Result<KsysResult> {
    if g.s() > limits.max_matching_s {
        return Err(Error::GuardExceeded {
            what: "s",
            size: g.s() as u64,
            limit: limits.max_matching_s as u64,
            flag: "--max-matching-s",
        });
    }
    // Surface a Hall witness up front rather than after a fruitless search.
    g.find_matching()?;
    let floor = if g.s() <= limits.max_subset_s {
        g.n() - d_min_bound(g, limits)?.d_min + 1
    } else {
        g.s()
    };

    let mut search = Search {
        g,
        zeros: (0..g.s()).map(|i| g.row_zeros(i).len()).collect(),
        used: vec![false; g.n()],
        assign: Vec::with_capacity(g.s()),
        best: g.n() + 1,
        best_assign: None,
        floor,
    };
    search.dfs();
    let assignment = search.best_assign.expect("a matching exists");
    Ok(KsysResult {
        k_sys: search.best,
        matching: Matching::from_assignment_unchecked(assignment),
        exact: true,
    })
}

struct Search<'a> {
    g: &'a ConstraintGraph,
    /// Zeros per row given the current partial assignment.
    zeros: Vec<usize>,
    used: Vec<bool>,
    assign: Vec<usize>,
    best: usize,
    best_assign: Option<Vec<usize>>,
    floor: usize,
}

impl Search<'_> {
    /// Depth-first over assignments in lexicographic order. Returns true
    /// once the floor is reached and the search can stop.
    fn dfs(&mut self) -> bool {
        let row = self.assign.len();
        let s = self.g.s();
        if row == s {
            let k = self.zeros.iter().copied().max().unwrap_or(0) + 1;
            if k < self.best {
                self.best = k;
                self.best_assign = Some(self.assign.clone());
            }
            return self.best <= self.floor;
        }
        for j in 0..self.g.n() {
            if self.used[j] || !self.g.has_edge(row, j) {
                continue;
            }
            self.place(row, j, true);
            let bound = self.zeros.iter().copied().max().unwrap_or(0) + 1;
            let done = bound < self.best && self.completable(row + 1) && self.dfs();
            self.place(row, j, false);
            if done {
                return true;
            }
        }
        false
    }

    fn place(&mut self, row: usize, j: usize, on: bool) {
        for r in (0..self.g.s()).filter(|&r| r != row && self.g.has_edge(r, j)) {
            if on {
                self.zeros[r] += 1;
            } else {
                self.zeros[r] -= 1;
            }
        }
        self.used[j] = on;
        if on {
            self.assign.push(j);
        } else {
            self.assign.pop();
        }
    }

    /// Whether rows `from..s` can still be matched into unused columns.
    fn completable(&self, from: usize) -> bool {
        let n = self.g.n();
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for i in from..self.g.s() {
            let mut seen = self.used.clone();
            if !self.augment(i, &mut owner, &mut seen) {
                return false;
            }
        }
        true
    }

    fn augment(&self, i: usize, owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
        for j in 0..self.g.n() {
            if seen[j] || !self.g.has_edge(i, j) {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|o| self.augment(o, owner, seen)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }
}

fn objective(g: &ConstraintGraph, assignment: &[usize]) -> (usize, usize) {
    let zeros = row_zero_counts(g, assignment);
    let max = zeros.iter().copied().max().unwrap_or(0);
    (max, zeros.iter().filter(|&&z| z == max).count())
}

/// Greedy matching improved by single-row moves and pairwise swaps until no
/// move lowers `(max zeros, rows attaining it)`.
fn heuristic_k_sys(g: &ConstraintGraph) -> Result<KsysResult> {
    let mut assign = g.find_matching()?.assignment().to_vec();
    let mut score = objective(g, &assign);
    'improve: loop {
        let mut owner: Vec<Option<usize>> = vec![None; g.n()];
        for (i, &j) in assign.iter().enumerate() {
            owner[j] = Some(i);
        }
        for i in 0..g.s() {
            for (j, &held_by) in owner.iter().enumerate() {
                if !g.has_edge(i, j) || j == assign[i] {
                    continue;
                }
                let mut cand = assign.clone();
                match held_by {
                    None => cand[i] = j,
                    Some(other) => {
                        if !g.has_edge(other, assign[i]) {
                            continue;
                        }
                        cand.swap(i, other);
                    }
                }
                let cand_score = objective(g, &cand);
                if cand_score < score {
                    assign = cand;
                    score = cand_score;
                    continue 'improve;
                }
            }
        }
        break;
    }
    Ok(KsysResult {
        k_sys: score.0 + 1,
        matching: Matching::from_assignment_unchecked(assign),
        exact: false,
    })
}

/// All bounds for a graph. The matching search is exact up to
/// `limits.max_matching_s` and heuristic beyond.
pub fn bounds_report(g: &ConstraintGraph, limits: &SearchLimits) -> Result<BoundsReport> {
    let dmin = d_min_bound(g, limits)?;
    let n = g.n();
    let k_min = n - dmin.d_min + 1;
    let mode = if g.s() <= limits.max_matching_s {
        KsysMode::Exact
    } else {
        KsysMode::Heuristic
    };
    let ksys = match k_sys_search(g, mode, limits) {
        Ok(r) => Some(r),
        Err(Error::NoMatching { .. }) => None,
        Err(e) => return Err(e),
    };
    let a = g.full_columns().len();
    let r_m = n - a;
    Ok(BoundsReport {
        d_min: dmin.d_min,
        k_min,
        d_sys: ksys.as_ref().map(|r| n - r.k_sys + 1),
        k_sys: ksys.as_ref().map(|r| r.k_sys),
        exact: ksys.as_ref().is_none_or(|r| r.exact),
        witness_subset: dmin.witness,
        witness_matching: ksys.map(|r| r.matching.assignment().to_vec()),
        a,
        r_m,
        thm2_feasible: dmin.d_min >= 1 && k_min >= r_m,
    })
}
