//! Reed-Solomon codes in the evaluation view: a message polynomial of
//! degree `< k` evaluated at `n` distinct nodes.

use crate::error::{Error, Result};
use crate::field::{Felt, Field};
use crate::matrix::Matrix;
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsCode {
    field: Field,
    nodes: Vec<Felt>,
    k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RsDecoded {
    pub message: Poly,
    /// Positions where the received word differs from the decoded codeword.
    pub error_positions: Vec<usize>,
}

/// `[0, 1, alpha, alpha^2, ...]` truncated to `n` nodes.
pub fn default_defining_set(field: &Field, n: usize) -> Result<Vec<Felt>> {
    if n as u64 > field.order() as u64 {
        return Err(Error::InvalidCode(format!(
            "code length {n} exceeds field order {}",
            field.order()
        )));
    }
    Ok(std::iter::once(Felt::ZERO)
        .chain((0..).map(|e| field.alpha_pow(e)))
        .take(n)
        .collect())
}

impl RsCode {
    pub fn new(field: Field, defining_set: Vec<Felt>, k: usize) -> Result<RsCode> {
        let n = defining_set.len();
        if n == 0 {
            return Err(Error::InvalidCode("empty defining set".into()));
        }
        if n as u64 > field.order() as u64 {
            return Err(Error::InvalidCode(format!(
                "code length {n} exceeds field order {}",
                field.order()
            )));
        }
        if k == 0 || k > n {
            return Err(Error::InvalidCode(format!("dimension {k} not in 1..={n}")));
        }
        let mut seen = vec![false; field.order() as usize];
        for &x in &defining_set {
            field.try_elem(x.value())?;
            if std::mem::replace(&mut seen[x.value() as usize], true) {
                return Err(Error::InvalidCode(format!("defining set repeats {x}")));
            }
        }
        Ok(RsCode {
            field,
            nodes: defining_set,
            k,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn defining_set(&self) -> &[Felt] {
        &self.nodes
    }

    pub fn n(&self) -> usize {
        self.nodes.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of symbol errors the decoder corrects.
    pub fn max_errors(&self) -> usize {
        (self.n() - self.k) / 2
    }

    /// `k x n` Vandermonde matrix with entry `(r, j) = node_j^r`.
    pub fn generator(&self) -> Matrix {
        let mut g = Matrix::zeros(self.k, self.n());
        for (j, &x) in self.nodes.iter().enumerate() {
            let mut acc = Felt::ONE;
            for r in 0..self.k {
                g[(r, j)] = acc;
                acc = self.field.mul(acc, x);
            }
        }
        g
    }

    pub fn encode(&self, message: &[Felt]) -> Result<Vec<Felt>> {
        if message.len() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: message.len(),
            });
        }
        Ok(self.evaluate(&Poly::from_coeffs(message.to_vec())))
    }

    pub fn evaluate(&self, p: &Poly) -> Vec<Felt> {
        self.nodes.iter().map(|&x| p.eval(&self.field, x)).collect()
    }

    /// Berlekamp-Welch decoding of up to `max_errors()` symbol errors.
    pub fn decode(&self, received: &[Felt]) -> Result<RsDecoded> {
        let n = self.n();
        if received.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: received.len(),
            });
        }
        let f = &self.field;
        let t = self.max_errors();
        let k = self.k;

        // Unknowns: Q_0..Q_{t+k-1}, then E_0..E_{t-1} with E monic of degree t.
        // Row j: sum Q_l x^l - y sum_{l<t} E_l x^l = y x^t.
        let unknowns = t + k + t;
        let mut sys = Matrix::zeros(n, unknowns);
        let mut rhs = Vec::with_capacity(n);
        for (j, (&x, &y)) in self.nodes.iter().zip(received).enumerate() {
            let mut pw = Felt::ONE;
            for l in 0..t + k {
                sys[(j, l)] = pw;
                if l < t {
                    sys[(j, t + k + l)] = f.neg(f.mul(y, pw));
                }
                pw = f.mul(pw, x);
            }
            rhs.push(f.mul(y, f.pow(x, t as u64)));
        }
        let sol = sys
            .solve(f, &rhs)?
            .ok_or_else(|| Error::DecodingFailure("key equation has no solution".into()))?;
        let q_poly = Poly::from_coeffs(sol[..t + k].to_vec());
        let mut e_coeffs = sol[t + k..].to_vec();
        e_coeffs.push(Felt::ONE);
        let e_poly = Poly::from_coeffs(e_coeffs);

        let (message, rem) = q_poly.div_rem(f, &e_poly)?;
        if !rem.is_zero() {
            return Err(Error::DecodingFailure(
                "error locator does not divide".into(),
            ));
        }
        if message.degree().is_some_and(|d| d >= k) {
            return Err(Error::DecodingFailure("decoded polynomial too long".into()));
        }
        let codeword = self.evaluate(&message);
        let error_positions: Vec<usize> = (0..n).filter(|&j| codeword[j] != received[j]).collect();
        if error_positions.len() > t {
            return Err(Error::DecodingFailure(format!(
                "{} disagreements exceed the correction radius {t}",
                error_positions.len()
            )));
        }
        Ok(RsDecoded {
            message,
            error_positions,
        })
    }

    /// Recover the message from a word with erasures (`None`) and no errors.
    pub fn erasure_decode(&self, received: &[Option<Felt>]) -> Result<Poly> {
        let n = self.n();
        if received.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: received.len(),
            });
        }
        let known: Vec<(Felt, Felt)> = self
            .nodes
            .iter()
            .zip(received)
            .filter_map(|(&x, y)| y.map(|y| (x, y)))
            .collect();
        if known.len() < self.k {
            return Err(Error::DecodingFailure(format!(
                "{} unerased symbols, need {}",
                known.len(),
                self.k
            )));
        }
        let message = interpolate(&self.field, &known[..self.k])?;
        if known[self.k..]
            .iter()
            .any(|&(x, y)| message.eval(&self.field, x) != y)
        {
            return Err(Error::DecodingFailure(
                "unerased symbols are inconsistent; errors present".into(),
            ));
        }
        Ok(message)
    }
}

/// Lagrange interpolation through points with distinct abscissas.
pub fn interpolate(field: &Field, points: &[(Felt, Felt)]) -> Result<Poly> {
    let mut acc = Poly::zero();
    for (i, &(xi, yi)) in points.iter().enumerate() {
        let others: Vec<Felt> = points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &(xj, _))| xj)
            .collect();
        let basis = Poly::from_roots(field, &others);
        let denom = basis.eval(field, xi);
        let scale = field.div(yi, denom)?;
        acc = acc.add(field, &basis.scale(field, scale));
    }
    Ok(acc)
}
