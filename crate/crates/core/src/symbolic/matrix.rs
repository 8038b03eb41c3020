//! Dense square matrices over rational functions.

use super::{Expr, SymbolicError};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExprMatrix {
    n: usize,
    data: Vec<Expr>,
}

impl ExprMatrix {
    pub fn zeros(n: usize) -> Self {
        ExprMatrix {
            n,
            data: vec![Expr::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExprMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = Expr::one();
        }
        m
    }

    /// Builds from rows; every row must have length `rows.len()`.
    pub fn from_rows(rows: Vec<Vec<Expr>>) -> Result<Self, SymbolicError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(SymbolicError::NotSquare);
        }
        Ok(ExprMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(cols: &[Vec<Expr>]) -> Result<Self, SymbolicError> {
        let n = cols.len();
        if cols.iter().any(|c| c.len() != n) {
            return Err(SymbolicError::NotSquare);
        }
        let mut m = ExprMatrix::zeros(n);
        for (j, col) in cols.iter().enumerate() {
            for (i, e) in col.iter().enumerate() {
                m[(i, j)] = e.clone();
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[Expr] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vec<Expr> {
        (0..self.n).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> ExprMatrix {
        let mut t = ExprMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &ExprMatrix) -> ExprMatrix {
        let n = self.n;
        let mut out = ExprMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (0..n)
                    .filter(|&k| !self[(i, k)].is_zero() && !other[(k, j)].is_zero())
                    .map(|k| &self[(i, k)] * &other[(k, j)])
                    .sum();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Expr]) -> Vec<Expr> {
        (0..self.n).map(|i| super::dot(self.row(i), v)).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.asymmetric_entry().is_none()
    }

    /// First `(i, j)` with `m[i][j] != m[j][i]`.
    pub fn asymmetric_entry(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self[(i, j)] != self[(j, i)] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_identity(&self) -> bool {
        *self == ExprMatrix::identity(self.n)
    }

    /// Determinant by Gaussian elimination over the field of rational functions.
    pub fn determinant(&self) -> Expr {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = Expr::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Expr::zero();
            };
            if p != col {
                for k in 0..n {
                    a.swap(p * n + k, col * n + k);
                }
                det = -det;
            }
            let pivot = a[col * n + col].clone();
            det = &det * &pivot;
            let pinv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let f = &a[r * n + col] * &pinv;
                for k in col..n {
                    if a[col * n + k].is_zero() {
                        continue;
                    }
                    let v = &a[r * n + k] - &(&f * &a[col * n + k]);
                    a[r * n + k] = v;
                }
            }
        }
        det
    }

    /// Solves `self * X = rhs` for several right-hand sides (given as columns).
    pub fn solve_many(&self, rhs: &[Vec<Expr>]) -> Result<Vec<Vec<Expr>>, SymbolicError> {
        let n = self.n;
        let m = rhs.len();
        let mut a = self.data.clone();
        let mut b: Vec<Vec<Expr>> = (0..n).map(|i| rhs.iter().map(|c| c[i].clone()).collect()).collect();
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a[r * n + col].is_zero())
                .ok_or(SymbolicError::Singular)?;
            if p != col {
                for k in 0..n {
                    a.swap(p * n + k, col * n + k);
                }
                b.swap(p, col);
            }
            let pinv = a[col * n + col].inv().expect("nonzero pivot");
            for k in col..n {
                a[col * n + k] = &a[col * n + k] * &pinv;
            }
            for e in b[col].iter_mut() {
                *e = &*e * &pinv;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let f = a[r * n + col].clone();
                for k in col..n {
                    if a[col * n + k].is_zero() {
                        continue;
                    }
                    a[r * n + k] = &a[r * n + k] - &(&f * &a[col * n + k]);
                }
                for j in 0..m {
                    if b[col][j].is_zero() {
                        continue;
                    }
                    let v = &b[r][j] - &(&f * &b[col][j]);
                    b[r][j] = v;
                }
            }
        }
        Ok((0..m).map(|j| (0..n).map(|i| b[i][j].clone()).collect()).collect())
    }

    pub fn solve(&self, rhs: &[Expr]) -> Result<Vec<Expr>, SymbolicError> {
        Ok(self.solve_many(&[rhs.to_vec()])?.remove(0))
    }

    pub fn inverse(&self) -> Result<ExprMatrix, SymbolicError> {
        let id = ExprMatrix::identity(self.n);
        let cols: Vec<Vec<Expr>> = (0..self.n).map(|j| id.column(j)).collect();
        let sol = self.solve_many(&cols)?;
        ExprMatrix::from_columns(&sol)
    }
}

impl std::ops::Index<(usize, usize)> for ExprMatrix {
    type Output = Expr;
    fn index(&self, (i, j): (usize, usize)) -> &Expr {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ExprMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Expr {
        &mut self.data[i * self.n + j]
    }
}
