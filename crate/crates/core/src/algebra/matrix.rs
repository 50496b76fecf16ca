//! Dense matrices over the rationals with exact elimination.

use std::fmt;

use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: QMatrix,
    pub pivot_columns: Vec<usize>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solve {
    /// One solution (free variables set to zero) and the dimension of the solution space.
    Solution { x: Vec<Rational>, kernel_dim: usize },
    /// `certificate`·A = 0 while `certificate`·b ≠ 0.
    Inconsistent { certificate: Vec<Rational> },
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(QMatrix {
            rows: nrows,
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        Ok(out)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(QMatrix {
            rows: self.rows,
            cols,
            data,
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(a * self.cols + k, b * self.cols + k);
        }
    }

    /// Gauss-Jordan over the first `limit` columns; the remaining columns ride along.
    fn eliminate(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).recip();
            for k in c..self.cols {
                let v = &self.data[r * self.cols + k] * &inv;
                self.data[r * self.cols + k] = v;
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for k in c..self.cols {
                    let v = &self.data[r * self.cols + k] * &f;
                    self.data[i * self.cols + k] -= v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        mat_rref(self).rank
    }

    /// Exact determinant of a square matrix.
    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) / &piv;
                for k in c..n {
                    let v = m.get(c, k) * &f;
                    m.data[i * n + k] -= v;
                }
            }
        }
        Ok(det)
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|q| q.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Unique reduced row-echelon form: pivots scaled to 1, zero rows last.
pub fn mat_rref(m: &QMatrix) -> Rref {
    let mut reduced = m.clone();
    let pivot_columns = reduced.eliminate(m.cols);
    let rank = pivot_columns.len();
    Rref {
        reduced,
        pivot_columns,
        rank,
    }
}

pub fn solve_exact(a: &QMatrix, b: &[Rational]) -> Result<Solve> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: b.len(),
        });
    }
    let rhs = QMatrix::from_columns(a.rows, &[b.to_vec()])?;
    let mut aug = a.hstack(&rhs)?.hstack(&QMatrix::identity(a.rows))?;
    let pivots = aug.eliminate(a.cols);
    let rank = pivots.len();
    for i in rank..a.rows {
        if !aug.get(i, a.cols).is_zero() {
            let certificate = (0..a.rows)
                .map(|k| aug.get(i, a.cols + 1 + k).clone())
                .collect();
            return Ok(Solve::Inconsistent { certificate });
        }
    }
    let mut x = vec![Rational::zero(); a.cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug.get(i, a.cols).clone();
    }
    Ok(Solve::Solution {
        x,
        kernel_dim: a.cols - rank,
    })
}

/// Right null space; one vector per free column, carrying a 1 in that column.
pub fn kernel_basis(a: &QMatrix) -> Vec<Vec<Rational>> {
    let Rref {
        reduced,
        pivot_columns,
        ..
    } = mat_rref(a);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivot_columns.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); a.cols];
            v[f] = Rational::one();
            for (i, &p) in pivot_columns.iter().enumerate() {
                v[p] = -reduced.get(i, f).clone();
            }
            v
        })
        .collect()
}
