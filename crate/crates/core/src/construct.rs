//! Generator matrices valid for a constraint graph, built as subcodes of a
//! Reed-Solomon (or any MDS) code.
//!
//! Every construction picks, for each message row `i`, a set of columns
//! where row `i` must vanish and takes the unique-up-to-scaling low-degree
//! polynomial `t_i` with exactly those roots among the defining set. Row `i`
//! of the generator is `t_i` evaluated on the defining set, so
//! `G = T * G_RS` with `T` holding the coefficients of the `t_i`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bounds::{d_min_bound, k_sys_search, KsysMode, SearchLimits};
use crate::error::{Error, Result};
use crate::field::{Felt, Field, FieldDescriptor};
use crate::graph::{ConstraintGraph, Matching};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::rs::RsCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Generic,
    SystematicDmin,
    SystematicDsys,
    MdsNullspace,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Generic => "generic",
            Mode::SystematicDmin => "systematic-dmin",
            Mode::SystematicDsys => "systematic-dsys",
            Mode::MdsNullspace => "mds-nullspace",
        }
    }
}

/// Code file layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub field: FieldDescriptor,
    pub defining_set: Vec<u32>,
    pub k: usize,
    #[serde(rename = "T")]
    pub transform: Vec<Vec<u32>>,
    #[serde(rename = "G")]
    pub generator: Vec<Vec<u32>>,
    pub mode: Mode,
    pub matching: Option<Vec<usize>>,
    pub claimed_distance: usize,
    pub distance_exact: bool,
}

/// Pivot columns of `T` and the inverse of `T` restricted to them, so that
/// `m = u[pivots] * inverse` solves `m T = u`.
#[derive(Debug, Clone)]
pub(crate) struct TransformSolver {
    pub(crate) pivots: Vec<usize>,
    pub(crate) inverse: Matrix,
}

/// A constructed code: the RS code it lives in, the transform `T`, and the
/// generator `G = T * G_RS`.
#[derive(Debug, Clone)]
pub struct CodeSpec {
    rs: RsCode,
    transform: Matrix,
    generator: Matrix,
    mode: Mode,
    matching: Option<Vec<usize>>,
    claimed_distance: usize,
    distance_exact: bool,
    solver: OnceLock<Result<TransformSolver, usize>>,
}

impl PartialEq for CodeSpec {
    fn eq(&self, other: &Self) -> bool {
        self.rs == other.rs
            && self.transform == other.transform
            && self.generator == other.generator
            && self.mode == other.mode
            && self.matching == other.matching
            && self.claimed_distance == other.claimed_distance
            && self.distance_exact == other.distance_exact
    }
}

impl CodeSpec {
    pub fn field(&self) -> &Field {
        self.rs.field()
    }

    pub fn rs(&self) -> &RsCode {
        &self.rs
    }

    pub fn transform(&self) -> &Matrix {
        &self.transform
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn matching(&self) -> Option<&[usize]> {
        self.matching.as_deref()
    }

    pub fn claimed_distance(&self) -> usize {
        self.claimed_distance
    }

    pub fn distance_exact(&self) -> bool {
        self.distance_exact
    }

    /// Number of message symbols.
    pub fn s(&self) -> usize {
        self.generator.rows()
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.rs.k()
    }

    /// True when the matched columns of `G` form the identity.
    pub fn is_systematic(&self) -> bool {
        let Some(cols) = &self.matching else {
            return false;
        };
        cols.iter().enumerate().all(|(i, &j)| {
            (0..self.s()).all(|r| {
                let want = if r == i { Felt::ONE } else { Felt::ZERO };
                self.generator[(r, j)] == want
            })
        })
    }

    pub(crate) fn solver(&self) -> Result<&TransformSolver> {
        let cached = self.solver.get_or_init(|| {
            let f = self.field();
            let s = self.s();
            let pivots = self.transform.echelon(f).pivots;
            if pivots.len() < s {
                return Err(pivots.len());
            }
            let inverse = self
                .transform
                .select_cols(&pivots)
                .inverse(f)
                .map_err(|_| pivots.len())?;
            Ok(TransformSolver { pivots, inverse })
        });
        cached.as_ref().map_err(|&rank| Error::RankDeficient {
            rank,
            expected: self.s(),
        })
    }

    pub fn to_file(&self) -> CodeFile {
        CodeFile {
            field: self.field().descriptor(),
            defining_set: self.rs.defining_set().iter().map(|x| x.value()).collect(),
            k: self.k(),
            transform: self.transform.to_values(),
            generator: self.generator.to_values(),
            mode: self.mode,
            matching: self.matching.clone(),
            claimed_distance: self.claimed_distance,
            distance_exact: self.distance_exact,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("code file serializes")
    }

    /// Rebuild from a code file. Shapes and ranges are checked; the
    /// relation `G = T * G_RS` is not, so tampered files still load.
    pub fn from_file(file: &CodeFile) -> Result<CodeSpec> {
        let field = Field::from_descriptor(&file.field)?;
        let nodes = file
            .defining_set
            .iter()
            .map(|&v| field.try_elem(v))
            .collect::<Result<Vec<_>>>()?;
        let rs = RsCode::new(field.clone(), nodes, file.k)?;
        let transform = Matrix::from_values(&field, &file.transform)?;
        let generator = Matrix::from_values(&field, &file.generator)?;
        let s = generator.rows();
        if s == 0 {
            return Err(Error::InvalidCode("generator has no rows".into()));
        }
        if generator.cols() != rs.n() {
            return Err(Error::DimensionMismatch {
                expected: rs.n(),
                found: generator.cols(),
            });
        }
        if transform.rows() != s {
            return Err(Error::DimensionMismatch {
                expected: s,
                found: transform.rows(),
            });
        }
        if transform.cols() != rs.k() {
            return Err(Error::DimensionMismatch {
                expected: rs.k(),
                found: transform.cols(),
            });
        }
        if let Some(m) = &file.matching {
            if m.len() != s {
                return Err(Error::DimensionMismatch {
                    expected: s,
                    found: m.len(),
                });
            }
            let mut used = vec![false; rs.n()];
            for &j in m {
                if j >= rs.n() {
                    return Err(Error::IndexOutOfRange {
                        index: j,
                        len: rs.n(),
                    });
                }
                if std::mem::replace(&mut used[j], true) {
                    return Err(Error::InvalidCode(format!("column {j} matched twice")));
                }
            }
        }
        Ok(CodeSpec {
            rs,
            transform,
            generator,
            mode: file.mode,
            matching: file.matching.clone(),
            claimed_distance: file.claimed_distance,
            distance_exact: file.distance_exact,
            solver: OnceLock::new(),
        })
    }

    pub fn from_json(text: &str) -> Result<CodeSpec> {
        Self::from_file(&serde_json::from_str(text)?)
    }
}

/// Smallest Hamming weight among the rows of `g`.
pub fn min_row_weight(g: &Matrix) -> usize {
    (0..g.rows())
        .map(|r| g.row(r).iter().filter(|x| !x.is_zero()).count())
        .min()
        .unwrap_or(0)
}

/// True iff every structural zero of the graph is zero in `g`.
pub fn validity_check(graph: &ConstraintGraph, g: &Matrix) -> Result<bool> {
    if g.rows() != graph.s() {
        return Err(Error::DimensionMismatch {
            expected: graph.s(),
            found: g.rows(),
        });
    }
    if g.cols() != graph.n() {
        return Err(Error::DimensionMismatch {
            expected: graph.n(),
            found: g.cols(),
        });
    }
    Ok((0..graph.s()).all(|i| (0..graph.n()).all(|j| graph.has_edge(i, j) || g[(i, j)].is_zero())))
}

fn check_nodes(graph: &ConstraintGraph, defining_set: &[Felt]) -> Result<()> {
    if defining_set.len() != graph.n() {
        return Err(Error::DimensionMismatch {
            expected: graph.n(),
            found: defining_set.len(),
        });
    }
    Ok(())
}

/// Assemble a spec from transform polynomials. The distance claim is the RS
/// lower bound `n - k + 1`; it is exact whenever some row attains it.
fn assemble(
    rs: RsCode,
    polys: &[Poly],
    mode: Mode,
    matching: Option<Vec<usize>>,
) -> Result<CodeSpec> {
    let k = rs.k();
    if let Some((i, p)) = polys.iter().enumerate().find(|(_, p)| p.coeffs().len() > k) {
        return Err(Error::InvalidCode(format!(
            "t_{i} has degree {} but k = {k}",
            p.degree().unwrap_or(0)
        )));
    }
    let transform = Matrix::from_rows(polys.iter().map(|p| p.to_padded(k)).collect())?;
    let generator = transform.mul(rs.field(), &rs.generator())?;
    let lower = rs.n() - k + 1;
    let exact = min_row_weight(&generator) == lower;
    Ok(CodeSpec {
        rs,
        transform,
        generator,
        mode,
        matching,
        claimed_distance: lower,
        distance_exact: exact,
        solver: OnceLock::new(),
    })
}

/// Monic `t_i` vanishing on the nodes of every zero in row `i`.
pub fn generic_subcode(
    graph: &ConstraintGraph,
    field: &Field,
    defining_set: &[Felt],
    k: usize,
) -> Result<CodeSpec> {
    check_nodes(graph, defining_set)?;
    let max_zeros = graph.row_zero_stats().max_zeros;
    if k <= max_zeros {
        return Err(Error::InvalidCode(format!(
            "k = {k} must exceed the largest number of zeros in a row ({max_zeros})"
        )));
    }
    let rs = RsCode::new(field.clone(), defining_set.to_vec(), k)?;
    let polys: Vec<Poly> = (0..graph.s())
        .map(|i| {
            let roots: Vec<Felt> = graph
                .row_zeros(i)
                .iter()
                .map(|&j| defining_set[j])
                .collect();
            Poly::from_roots(field, &roots)
        })
        .collect();
    assemble(rs, &polys, Mode::Generic, None)
}

/// Transform polynomials for the matched adjacency matrix of `matching`,
/// each normalized to one at its matched node.
fn systematic_polys(
    graph: &ConstraintGraph,
    field: &Field,
    defining_set: &[Felt],
    matching: &Matching,
) -> Result<Vec<Poly>> {
    let ma = graph.matched_adjacency(matching)?;
    (0..graph.s())
        .map(|i| {
            let roots: Vec<Felt> = ma.row_zeros(i).iter().map(|&j| defining_set[j]).collect();
            let t = Poly::from_roots(field, &roots);
            let at_pivot = t.eval(field, defining_set[matching.column_of(i)]);
            Ok(t.scale(field, field.inv(at_pivot)?))
        })
        .collect()
}

/// Systematic subcode of the `[n, k]` RS code for a given matching.
/// Requires `k` to exceed the row-zero count of the matched adjacency matrix.
pub fn systematic_from_matching(
    graph: &ConstraintGraph,
    field: &Field,
    defining_set: &[Felt],
    matching: &Matching,
    k: usize,
    mode: Mode,
) -> Result<CodeSpec> {
    check_nodes(graph, defining_set)?;
    let rs = RsCode::new(field.clone(), defining_set.to_vec(), k)?;
    let polys = systematic_polys(graph, field, defining_set, matching)?;
    assemble(rs, &polys, mode, Some(matching.assignment().to_vec()))
}

/// Systematic code attaining `d_min`, available when `k_min >= r_M`.
pub fn systematic_dmin(
    graph: &ConstraintGraph,
    field: &Field,
    defining_set: &[Felt],
    limits: &SearchLimits,
) -> Result<CodeSpec> {
    check_nodes(graph, defining_set)?;
    let n = graph.n();
    let d_min = d_min_bound(graph, limits)?.d_min;
    let full = graph.full_columns();
    let r_m = n - full.len();
    if d_min == 0 {
        return Err(Error::Infeasible(
            "no M-covering matching exists, so no code with q^s codewords is valid".into(),
        ));
    }
    let k_min = n - d_min + 1;
    if k_min < r_m {
        return Err(Error::Infeasible(format!(
            "condition k_min >= r_M fails: {k_min} < {r_m}; use --mode systematic-dsys"
        )));
    }
    // Keep the first a - (d_min - 1) fully connected columns; hide the rest
    // from the matching so their edges survive in the matched adjacency.
    let keep = full.len() - (d_min - 1);
    let mut allowed = vec![true; n];
    for &j in &full[keep..] {
        allowed[j] = false;
    }
    let matching = graph.find_matching_within(&allowed)?;
    let mut spec = systematic_from_matching(
        graph,
        field,
        defining_set,
        &matching,
        k_min,
        Mode::SystematicDmin,
    )?;
    spec.claimed_distance = d_min;
    spec.distance_exact = true;
    Ok(spec)
}

/// Systematic code attaining `d_sys`. Beyond the exact-search limit the
/// matching comes from the heuristic and the distance is only guaranteed to
/// be `n - k + 1` for that matching.
pub fn systematic_dsys(
    graph: &ConstraintGraph,
    field: &Field,
    defining_set: &[Felt],
    limits: &SearchLimits,
) -> Result<CodeSpec> {
    let mode = if graph.s() <= limits.max_matching_s {
        KsysMode::Exact
    } else {
        KsysMode::Heuristic
    };
    let found = k_sys_search(graph, mode, limits)?;
    systematic_from_matching(
        graph,
        field,
        defining_set,
        &found.matching,
        found.k_sys,
        Mode::SystematicDsys,
    )
}

/// Rows built from an arbitrary MDS generator by left-nullspace selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullspaceCode {
    /// Row `i` is the selected `h_i`.
    pub transform: Matrix,
    pub generator: Matrix,
}

/// For each row pick `h_i` in the left nullspace of the MDS generator's
/// columns at that row's zeros, and emit `h_i * G_mds`.
///
/// With a matching the zeros come from the matched adjacency matrix and each
/// `h_i` is chosen nonzero on the matched column, then scaled so the matched
/// entry is one. Without one the zeros come from the graph itself.
pub fn mds_nullspace_construct(
    graph: &ConstraintGraph,
    field: &Field,
    mds: &Matrix,
    target_distance: usize,
    matching: Option<&Matching>,
) -> Result<NullspaceCode> {
    let n = graph.n();
    if mds.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: mds.cols(),
        });
    }
    let k = mds.rows();
    if target_distance == 0 || target_distance > n || k != n - target_distance + 1 {
        return Err(Error::InvalidCode(format!(
            "target distance {target_distance} needs an [n, n - d + 1] generator; got {k} rows for n = {n}"
        )));
    }
    let zero_sets: Vec<Vec<usize>> = match matching {
        Some(m) => {
            let ma = graph.matched_adjacency(m)?;
            (0..graph.s()).map(|i| ma.row_zeros(i)).collect()
        }
        None => (0..graph.s()).map(|i| graph.row_zeros(i)).collect(),
    };

    let mut h_rows = Vec::with_capacity(graph.s());
    for (i, zeros) in zero_sets.iter().enumerate() {
        if zeros.len() > k - 1 {
            return Err(Error::Infeasible(format!(
                "row {i} has {} zeros but at most k - 1 = {} fit in an [n, {k}] MDS code",
                zeros.len(),
                k - 1
            )));
        }
        let basis = mds.select_cols(zeros).left_nullspace(field);
        if basis.len() != k - zeros.len() {
            return Err(Error::NotMds(format!(
                "columns {zeros:?} have a {}-dimensional left nullspace, expected {}",
                basis.len(),
                k - zeros.len()
            )));
        }
        let h = match matching {
            None => basis[0].clone(),
            Some(m) => {
                let pivot_col = mds.column(m.column_of(i));
                let hits = |h: &[Felt]| field.dot(h, &pivot_col);
                let h = if !hits(&basis[0]).is_zero() {
                    basis[0].clone()
                } else {
                    let other =
                        basis[1..]
                            .iter()
                            .find(|b| !hits(b).is_zero())
                            .ok_or_else(|| {
                                Error::NotMds(format!(
                                    "every nullspace vector for row {i} vanishes on column {}",
                                    m.column_of(i)
                                ))
                            })?;
                    basis[0]
                        .iter()
                        .zip(other)
                        .map(|(&a, &b)| field.add(a, b))
                        .collect()
                };
                let scale = field.inv(hits(&h))?;
                h.iter().map(|&x| field.mul(x, scale)).collect()
            }
        };
        h_rows.push(h);
    }
    let transform = Matrix::from_rows(h_rows)?;
    let generator = transform.mul(field, mds)?;
    Ok(NullspaceCode {
        transform,
        generator,
    })
}

/// Nullspace construction over the RS code of dimension `k_sys`, systematic
/// on the same matching `systematic_dsys` would use.
pub fn mds_nullspace_rs(
    graph: &ConstraintGraph,
    field: &Field,
    defining_set: &[Felt],
    limits: &SearchLimits,
) -> Result<CodeSpec> {
    check_nodes(graph, defining_set)?;
    let mode = if graph.s() <= limits.max_matching_s {
        KsysMode::Exact
    } else {
        KsysMode::Heuristic
    };
    let found = k_sys_search(graph, mode, limits)?;
    mds_nullspace_with_matching(graph, field, defining_set, &found.matching, found.k_sys)
}

/// Nullspace construction over the `[n, k]` RS code for a given matching.
pub fn mds_nullspace_with_matching(
    graph: &ConstraintGraph,
    field: &Field,
    defining_set: &[Felt],
    matching: &Matching,
    k: usize,
) -> Result<CodeSpec> {
    check_nodes(graph, defining_set)?;
    let rs = RsCode::new(field.clone(), defining_set.to_vec(), k)?;
    let target = rs.n() - k + 1;
    let built = mds_nullspace_construct(graph, field, &rs.generator(), target, Some(matching))?;
    let exact = min_row_weight(&built.generator) == target;
    Ok(CodeSpec {
        rs,
        transform: built.transform,
        generator: built.generator,
        mode: Mode::MdsNullspace,
        matching: Some(matching.assignment().to_vec()),
        claimed_distance: target,
        distance_exact: exact,
        solver: OnceLock::new(),
    })
}
