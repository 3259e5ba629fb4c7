//! Exhaustive distance oracle and the subcode decoder.

use serde::Serialize;

use crate::construct::{validity_check, CodeSpec};
use crate::error::{Error, Result};
use crate::field::{Felt, Field};
use crate::graph::ConstraintGraph;
use crate::matrix::Matrix;
use crate::rs::RsCode;

/// Default cap on the number of messages `min_distance_exhaustive` visits.
pub const DEFAULT_CODEWORD_LIMIT: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub distance: usize,
    /// Lexicographically smallest message attaining `distance`.
    pub witness_message: Vec<u32>,
    /// Entry `w` counts the messages whose codeword has weight `w`.
    pub weight_histogram: Vec<u64>,
    pub method: &'static str,
}

/// Minimum weight of `mG` over every message `m` with `mG != 0`.
pub fn min_distance_exhaustive(field: &Field, g: &Matrix, limit: u64) -> Result<DistanceReport> {
    let (s, n) = (g.rows(), g.cols());
    let q = field.order() as u64;
    let total = (0..s)
        .try_fold(1u64, |acc, _| acc.checked_mul(q))
        .unwrap_or(u64::MAX);
    if total > limit {
        return Err(Error::GuardExceeded {
            what: "messages to enumerate",
            size: total,
            limit,
            flag: "--max-codewords",
        });
    }
    let mut scan = Scan {
        field,
        g,
        message: vec![0; s],
        best: None,
        histogram: vec![0; n + 1],
    };
    let mut partial = vec![vec![Felt::ZERO; n]; s + 1];
    scan.visit(0, &mut partial);
    let (distance, witness) = scan
        .best
        .ok_or_else(|| Error::InvalidCode("code has no nonzero codewords".into()))?;
    Ok(DistanceReport {
        distance,
        witness_message: witness,
        weight_histogram: scan.histogram,
        method: "exhaustive",
    })
}

struct Scan<'a> {
    field: &'a Field,
    g: &'a Matrix,
    message: Vec<u32>,
    best: Option<(usize, Vec<u32>)>,
    histogram: Vec<u64>,
}

impl Scan<'_> {
    /// `partial[level]` holds the codeword of the message prefix; digits
    /// run in increasing integer order so the first minimizer found is the
    /// lexicographically smallest.
    fn visit(&mut self, level: usize, partial: &mut [Vec<Felt>]) {
        if level == self.g.rows() {
            let w = partial[level].iter().filter(|x| !x.is_zero()).count();
            self.histogram[w] += 1;
            if w > 0 && self.best.as_ref().is_none_or(|(d, _)| w < *d) {
                self.best = Some((w, self.message.clone()));
            }
            return;
        }
        for v in 0..self.field.order() {
            let c = self.field.elem(v);
            let (head, tail) = partial.split_at_mut(level + 1);
            for ((out, &b), &x) in tail[0].iter_mut().zip(&head[level]).zip(self.g.row(level)) {
                *out = self.field.add(b, self.field.mul(c, x));
            }
            self.message[level] = v;
            self.visit(level + 1, partial);
        }
    }
}

pub fn rank_over_field(m: &Matrix, field: &Field) -> usize {
    m.rank(field)
}

pub fn subcode_encode(spec: &CodeSpec, message: &[Felt]) -> Result<Vec<Felt>> {
    spec.generator().vec_mul(spec.field(), message)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubcodeDecoded {
    pub message: Vec<Felt>,
    /// Unerased positions where the received word was corrected.
    pub error_positions: Vec<usize>,
}

/// Decode through the underlying RS code, then map the RS message back to
/// the subcode message by solving `m T = u`.
///
/// Erased positions are punctured away and the remaining word is decoded
/// in the shorter RS code, so errors within its radius are still corrected.
pub fn subcode_decode(
    spec: &CodeSpec,
    received: &[Felt],
    erasures: &[usize],
) -> Result<SubcodeDecoded> {
    let n = spec.n();
    if received.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: received.len(),
        });
    }
    let mut erased = vec![false; n];
    for &j in erasures {
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, len: n });
        }
        erased[j] = true;
    }
    let solver = spec.solver()?;
    let rs = spec.rs();
    let kept: Vec<usize> = (0..n).filter(|&j| !erased[j]).collect();
    if kept.len() < rs.k() {
        return Err(Error::DecodingFailure(format!(
            "{} unerased symbols, need {}",
            kept.len(),
            rs.k()
        )));
    }
    let decoded = if kept.len() == n {
        rs.decode(received)?
    } else {
        let nodes = kept.iter().map(|&j| rs.defining_set()[j]).collect();
        let punctured = RsCode::new(rs.field().clone(), nodes, rs.k())?;
        let word: Vec<Felt> = kept.iter().map(|&j| received[j]).collect();
        let mut d = punctured.decode(&word)?;
        d.error_positions = d.error_positions.iter().map(|&p| kept[p]).collect();
        d
    };
    let f = spec.field();
    let u = decoded.message.to_padded(rs.k());
    let picked: Vec<Felt> = solver.pivots.iter().map(|&c| u[c]).collect();
    let message = solver.inverse.vec_mul(f, &picked)?;
    if spec.transform().vec_mul(f, &message)? != u {
        return Err(Error::NotInRowSpace);
    }
    Ok(SubcodeDecoded {
        message,
        error_positions: decoded.error_positions,
    })
}

/// Read the message off the systematic positions. The flag is true iff
/// re-encoding reproduces `received`; otherwise fall back to
/// `subcode_decode`.
pub fn systematic_fast_read(spec: &CodeSpec, received: &[Felt]) -> Result<(Vec<Felt>, bool)> {
    if !spec.is_systematic() {
        return Err(Error::NotSystematic);
    }
    if received.len() != spec.n() {
        return Err(Error::DimensionMismatch {
            expected: spec.n(),
            found: received.len(),
        });
    }
    let cols = spec.matching().expect("systematic specs carry a matching");
    let message: Vec<Felt> = cols.iter().map(|&j| received[j]).collect();
    let clean = subcode_encode(spec, &message)? == received;
    Ok((message, clean))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub distance: usize,
    pub witness_message: Vec<u32>,
    #[serde(rename = "rank_G")]
    pub rank_g: usize,
    #[serde(rename = "rank_T")]
    pub rank_t: usize,
    pub valid_pattern: bool,
    pub systematic: bool,
    pub claimed_distance: usize,
    pub distance_exact: bool,
    /// False when the measured distance contradicts the claim.
    pub consistent: bool,
}

pub fn verify_code(spec: &CodeSpec, graph: &ConstraintGraph, limit: u64) -> Result<VerifyReport> {
    let f = spec.field();
    let valid_pattern = validity_check(graph, spec.generator())?;
    let dist = min_distance_exhaustive(f, spec.generator(), limit)?;
    let consistent = if spec.distance_exact() {
        dist.distance == spec.claimed_distance()
    } else {
        dist.distance >= spec.claimed_distance()
    };
    Ok(VerifyReport {
        distance: dist.distance,
        witness_message: dist.witness_message,
        rank_g: rank_over_field(spec.generator(), f),
        rank_t: rank_over_field(spec.transform(), f),
        valid_pattern,
        systematic: spec.is_systematic(),
        claimed_distance: spec.claimed_distance(),
        distance_exact: spec.distance_exact(),
        consistent,
    })
}
