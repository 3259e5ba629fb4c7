//! Bipartite constraint graphs between message symbols (rows) and code
//! symbols (columns), matchings, and matched adjacency matrices.
//!
//! Indices are zero-based throughout. Subsets of rows are represented as
//! sorted index lists and compared lexicographically; every search that
//! reports a witness returns the lexicographically smallest one.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default limit on `s` for searches that enumerate all row subsets.
pub const DEFAULT_SUBSET_LIMIT: usize = 20;

/// Fixed-width column set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ColSet(Vec<u64>);

impl ColSet {
    pub(crate) fn empty(n: usize) -> ColSet {
        ColSet(vec![0; n.div_ceil(64)])
    }

    pub(crate) fn insert(&mut self, j: usize) {
        self.0[j / 64] |= 1 << (j % 64);
    }

    pub(crate) fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub(crate) fn union(&self, other: &ColSet) -> ColSet {
        ColSet(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }
}

/// On-disk graph description: `s` rows of `n` zero/one entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub s: usize,
    pub n: usize,
    pub adjacency: Vec<Vec<u8>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintGraph {
    s: usize,
    n: usize,
    adj: Vec<bool>,
    rows: Vec<ColSet>,
}

/// Result of an exhaustive Hall's-condition check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallCheck {
    pub satisfied: bool,
    /// Lexicographically smallest subset with `|M'| > |N(M')|`.
    pub violator: Option<Vec<usize>>,
}

/// An assignment of a distinct column to every row along existing edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matching {
    assignment: Vec<usize>,
}

/// Adjacency after deleting every unmatched edge into a matched column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchedAdjacency {
    s: usize,
    n: usize,
    adj: Vec<bool>,
    matching: Matching,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroStats {
    pub max_zeros: usize,
    pub per_row: Vec<usize>,
}

fn zero_stats(s: usize, n: usize, adj: &[bool]) -> ZeroStats {
    let per_row: Vec<usize> = (0..s)
        .map(|i| adj[i * n..(i + 1) * n].iter().filter(|&&b| !b).count())
        .collect();
    ZeroStats {
        max_zeros: per_row.iter().copied().max().unwrap_or(0),
        per_row,
    }
}

impl ConstraintGraph {
    /// Validate a row list of zero/one entries.
    pub fn new(rows: &[Vec<u8>]) -> Result<ConstraintGraph> {
        let s = rows.len();
        if s == 0 {
            return Err(Error::InvalidGraph("no message symbols".into()));
        }
        let n = rows[0].len();
        let mut adj = Vec::with_capacity(s * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGraph(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => adj.push(false),
                    1 => adj.push(true),
                    _ => {
                        return Err(Error::InvalidGraph(format!(
                            "entry ({i}, {j}) is {v}, expected 0 or 1"
                        )))
                    }
                }
            }
        }
        Self::from_bools(s, n, adj)
    }

    pub fn from_bools(s: usize, n: usize, adj: Vec<bool>) -> Result<ConstraintGraph> {
        if adj.len() != s * n {
            return Err(Error::DimensionMismatch {
                expected: s * n,
                found: adj.len(),
            });
        }
        if s == 0 || n == 0 {
            return Err(Error::InvalidGraph("graph must be non-empty".into()));
        }
        if s > n {
            return Err(Error::InvalidGraph(format!(
                "s = {s} message symbols exceed n = {n} code symbols"
            )));
        }
        if let Some(i) = (0..s).find(|&i| !adj[i * n..(i + 1) * n].contains(&true)) {
            return Err(Error::InvalidGraph(format!("row {i} has no edges")));
        }
        if let Some(j) = (0..n).find(|&j| !(0..s).any(|i| adj[i * n + j])) {
            return Err(Error::InvalidGraph(format!("column {j} has no edges")));
        }
        let rows = (0..s)
            .map(|i| {
                let mut set = ColSet::empty(n);
                for j in (0..n).filter(|&j| adj[i * n + j]) {
                    set.insert(j);
                }
                set
            })
            .collect();
        Ok(ConstraintGraph { s, n, adj, rows })
    }

    pub fn from_file(file: &GraphFile) -> Result<ConstraintGraph> {
        if file.adjacency.len() != file.s {
            return Err(Error::InvalidGraph(format!(
                "declared s = {} but adjacency has {} rows",
                file.s,
                file.adjacency.len()
            )));
        }
        if let Some(r) = file.adjacency.iter().position(|r| r.len() != file.n) {
            return Err(Error::InvalidGraph(format!(
                "declared n = {} but row {r} has {} entries",
                file.n,
                file.adjacency[r].len()
            )));
        }
        Self::new(&file.adjacency)
    }

    pub fn from_json(text: &str) -> Result<ConstraintGraph> {
        Self::from_file(&serde_json::from_str(text)?)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            s: self.s,
            n: self.n,
            adjacency: self.to_rows(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.s)
            .map(|i| (0..self.n).map(|j| self.has_edge(i, j) as u8).collect())
            .collect()
    }

    /// Number of message symbols.
    pub fn s(&self) -> usize {
        self.s
    }

    /// Code length.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    pub fn row_support(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.has_edge(i, j)).collect()
    }

    pub fn row_zeros(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| !self.has_edge(i, j)).collect()
    }

    /// Columns adjacent to every row.
    pub fn full_columns(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&j| (0..self.s).all(|i| self.has_edge(i, j)))
            .collect()
    }

    pub fn row_zero_stats(&self) -> ZeroStats {
        zero_stats(self.s, self.n, &self.adj)
    }

    fn check_rows(&self, subset: &[usize]) -> Result<()> {
        match subset.iter().find(|&&i| i >= self.s) {
            Some(&index) => Err(Error::IndexOutOfRange { index, len: self.s }),
            None => Ok(()),
        }
    }

    /// `|N(M')|` for a set of rows.
    pub fn neighborhood_size(&self, subset: &[usize]) -> Result<usize> {
        self.check_rows(subset)?;
        let set = subset
            .iter()
            .fold(ColSet::empty(self.n), |acc, &i| acc.union(&self.rows[i]));
        Ok(set.len())
    }

    pub(crate) fn check_subset_limit(&self, limit: usize) -> Result<()> {
        if self.s > limit {
            return Err(Error::GuardExceeded {
                what: "s",
                size: self.s as u64,
                limit: limit as u64,
                flag: "--max-exact-s",
            });
        }
        Ok(())
    }

    /// Visit every nonempty row subset in lexicographic order together with
    /// its neighborhood. The visitor returns `false` to stop early.
    pub(crate) fn for_each_subset(&self, mut visit: impl FnMut(&[usize], &ColSet) -> bool) {
        fn rec(
            g: &ConstraintGraph,
            start: usize,
            prefix: &mut Vec<usize>,
            cover: &ColSet,
            visit: &mut dyn FnMut(&[usize], &ColSet) -> bool,
        ) -> bool {
            for i in start..g.s {
                let next = cover.union(&g.rows[i]);
                prefix.push(i);
                let go_on = visit(prefix, &next) && rec(g, i + 1, prefix, &next, visit);
                prefix.pop();
                if !go_on {
                    return false;
                }
            }
            true
        }
        rec(self, 0, &mut Vec::new(), &ColSet::empty(self.n), &mut visit);
    }

    /// Exhaustive Hall's-condition check over all `2^s` row subsets.
    pub fn hall_check(&self, limit: usize) -> Result<HallCheck> {
        self.check_subset_limit(limit)?;
        let mut violator = None;
        self.for_each_subset(|subset, cover| {
            if subset.len() > cover.len() {
                violator = Some(subset.to_vec());
                false
            } else {
                true
            }
        });
        Ok(HallCheck {
            satisfied: violator.is_none(),
            violator,
        })
    }

    /// An M-covering matching: each row in order takes its smallest free
    /// admissible column, falling back to an augmenting path search.
    pub fn find_matching(&self) -> Result<Matching> {
        self.find_matching_within(&vec![true; self.n])
    }

    /// Like [`find_matching`](Self::find_matching) but restricted to the
    /// columns with `allowed[j]`.
    pub fn find_matching_within(&self, allowed: &[bool]) -> Result<Matching> {
        assert_eq!(allowed.len(), self.n);
        let mut owner: Vec<Option<usize>> = vec![None; self.n];
        let mut col_of = vec![usize::MAX; self.s];
        for i in 0..self.s {
            let free =
                (0..self.n).find(|&j| allowed[j] && self.has_edge(i, j) && owner[j].is_none());
            if let Some(j) = free {
                owner[j] = Some(i);
                col_of[i] = j;
                continue;
            }
            let mut seen = vec![false; self.n];
            let mut visited_rows = vec![i];
            if !self.augment(
                i,
                allowed,
                &mut owner,
                &mut col_of,
                &mut seen,
                &mut visited_rows,
            ) {
                visited_rows.sort_unstable();
                visited_rows.dedup();
                return Err(Error::NoMatching {
                    witness: visited_rows,
                });
            }
        }
        Ok(Matching { assignment: col_of })
    }

    fn augment(
        &self,
        i: usize,
        allowed: &[bool],
        owner: &mut [Option<usize>],
        col_of: &mut [usize],
        seen: &mut [bool],
        visited_rows: &mut Vec<usize>,
    ) -> bool {
        for j in 0..self.n {
            if !allowed[j] || !self.has_edge(i, j) || seen[j] {
                continue;
            }
            seen[j] = true;
            let can_take = match owner[j] {
                None => true,
                Some(other) => {
                    visited_rows.push(other);
                    self.augment(other, allowed, owner, col_of, seen, visited_rows)
                }
            };
            if can_take {
                owner[j] = Some(i);
                col_of[i] = j;
                return true;
            }
        }
        false
    }

    /// Matched adjacency matrix for a matching of this graph.
    pub fn matched_adjacency(&self, matching: &Matching) -> Result<MatchedAdjacency> {
        matching.validate(self)?;
        let mut adj = self.adj.clone();
        for (i, &ji) in matching.assignment.iter().enumerate() {
            for r in (0..self.s).filter(|&r| r != i) {
                adj[r * self.n + ji] = false;
            }
        }
        Ok(MatchedAdjacency {
            s: self.s,
            n: self.n,
            adj,
            matching: matching.clone(),
        })
    }
}

impl Matching {
    /// Validate an assignment against a graph.
    pub fn new(graph: &ConstraintGraph, assignment: Vec<usize>) -> Result<Matching> {
        let m = Matching { assignment };
        m.validate(graph)?;
        Ok(m)
    }

    pub(crate) fn from_assignment_unchecked(assignment: Vec<usize>) -> Matching {
        Matching { assignment }
    }

    pub fn validate(&self, graph: &ConstraintGraph) -> Result<()> {
        if self.assignment.len() != graph.s {
            return Err(Error::DimensionMismatch {
                expected: graph.s,
                found: self.assignment.len(),
            });
        }
        let mut used = vec![false; graph.n];
        for (i, &j) in self.assignment.iter().enumerate() {
            if j >= graph.n {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    len: graph.n,
                });
            }
            if !graph.has_edge(i, j) {
                return Err(Error::InvalidGraph(format!(
                    "matched edge ({i}, {j}) is not in the graph"
                )));
            }
            if std::mem::replace(&mut used[j], true) {
                return Err(Error::InvalidGraph(format!("column {j} matched twice")));
            }
        }
        Ok(())
    }

    /// Column matched to each row.
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn column_of(&self, row: usize) -> usize {
        self.assignment[row]
    }
}

impl MatchedAdjacency {
    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    pub fn row_zeros(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| !self.has_edge(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.s)
            .map(|i| (0..self.n).map(|j| self.has_edge(i, j) as u8).collect())
            .collect()
    }

    pub fn row_zero_stats(&self) -> ZeroStats {
        zero_stats(self.s, self.n, &self.adj)
    }

    /// `k` of this matching: max zeros in a row plus one.
    pub fn k_value(&self) -> usize {
        self.row_zero_stats().max_zeros + 1
    }
}
