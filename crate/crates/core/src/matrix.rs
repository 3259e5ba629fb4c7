//! Dense matrices over a [`Field`] and Gaussian elimination.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::field::{Felt, Field};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Felt>,
}

impl Index<(usize, usize)> for Matrix {
    type Output = Felt;

    fn index(&self, (r, c): (usize, usize)) -> &Felt {
        assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Felt {
        assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Reduced row echelon form plus the pivot column of each nonzero row.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Felt::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Felt::ONE;
        }
        m
    }

    /// Build from rows; all rows must have the same length. An empty row
    /// list gives a `0 x 0` matrix.
    pub fn from_rows(rows: Vec<Vec<Felt>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Build from integer encodings, validating each against `field`.
    pub fn from_values(field: &Field, rows: &[Vec<u32>]) -> Result<Matrix> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| field.try_elem(v))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Felt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Felt] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Felt> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Felt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn to_values(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|x| x.value()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                out[(r, k)] = self[(r, c)];
            }
        }
        out
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let row = other.vec_mul(field, self.row(r))?;
            out.row_mut(r).copy_from_slice(&row);
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, field: &Field, v: &[Felt]) -> Result<Vec<Felt>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: v.len(),
            });
        }
        let mut out = vec![Felt::ZERO; self.cols];
        for (r, &coef) in v.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.row(r)) {
                *o = field.add(*o, field.mul(coef, x));
            }
        }
        Ok(out)
    }

    pub fn echelon(&self, field: &Field) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                continue;
            };
            if pr != lead {
                for k in 0..m.cols {
                    m.data.swap(pr * m.cols + k, lead * m.cols + k);
                }
            }
            let inv = field.inv(m[(lead, c)]).expect("pivot is nonzero");
            for k in 0..m.cols {
                m[(lead, k)] = field.mul(m[(lead, k)], inv);
            }
            for r in 0..m.rows {
                let factor = m[(r, c)];
                if r == lead || factor.is_zero() {
                    continue;
                }
                for k in 0..m.cols {
                    let sub = field.mul(factor, m[(lead, k)]);
                    m[(r, k)] = field.sub(m[(r, k)], sub);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.echelon(field).pivots.len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column in increasing
    /// column order, with that free coordinate set to one.
    pub fn nullspace(&self, field: &Field) -> Vec<Vec<Felt>> {
        let Echelon { reduced, pivots } = self.echelon(field);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Felt::ZERO; self.cols];
                v[free] = Felt::ONE;
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = field.neg(reduced[(r, free)]);
                }
                v
            })
            .collect()
    }

    /// Basis of `{h : h M = 0}`.
    pub fn left_nullspace(&self, field: &Field) -> Vec<Vec<Felt>> {
        self.transpose().nullspace(field)
    }

    /// One solution of `M x = b` (free variables zero), or `None` if inconsistent.
    pub fn solve(&self, field: &Field, b: &[Felt]) -> Result<Option<Vec<Felt>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            aug.row_mut(r)[..self.cols].copy_from_slice(self.row(r));
            aug[(r, self.cols)] = b[r];
        }
        let Echelon { reduced, pivots } = aug.echelon(field);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Felt::ZERO; self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = reduced[(r, self.cols)];
        }
        Ok(Some(x))
    }

    pub fn inverse(&self, field: &Field) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            aug.row_mut(r)[..n].copy_from_slice(self.row(r));
            aug[(r, n + r)] = Felt::ONE;
        }
        let Echelon { reduced, pivots } = aug.echelon(field);
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::RankDeficient {
                rank: pivots.iter().filter(|&&p| p < n).count(),
                expected: n,
            });
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Ok(reduced.select_cols(&cols))
    }
}
