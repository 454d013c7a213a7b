//! Dense exact linear algebra over a [`Field`].

use crate::field::{Field, Scalar};

/// Row-major matrix of field elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub field: Field,
    pub ncols: usize,
    pub rows: Vec<Vec<Scalar>>,
}

/// Row echelon data: the reduced matrix and its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(field: Field, ncols: usize) -> Matrix {
        Matrix {
            field,
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(field: Field, ncols: usize, rows: Vec<Vec<Scalar>>) -> Matrix {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        Matrix { field, ncols, rows }
    }

    pub fn push_row(&mut self, row: Vec<Scalar>) {
        assert_eq!(row.len(), self.ncols);
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Reduced row echelon form.
    pub fn echelon(&self) -> Echelon {
        let mut rows: Vec<Vec<Scalar>> = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].inv();
            for x in rows[r].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        if !y.is_zero() {
                            *x = &*x - &(&f * y);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        Echelon { rows, pivots }
    }

    /// Basis of `{v : M v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let e = self.echelon();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !e.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.ncols];
                v[f] = self.field.one();
                for (row, &p) in e.rows.iter().zip(&e.pivots) {
                    v[p] = -&row[f];
                }
                v
            })
            .collect()
    }

    /// Solves `x M = b` for a row vector `x` (is `b` in the row span?).
    pub fn solve_left(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        // columns of the transpose system: M^T x^T = b^T
        let n = self.nrows();
        let mut aug = Matrix::new(self.field, n + 1);
        for c in 0..self.ncols {
            let mut row: Vec<Scalar> = self.rows.iter().map(|r| r[c].clone()).collect();
            row.push(b[c].clone());
            aug.push_row(row);
        }
        let e = aug.echelon();
        if e.pivots.contains(&n) {
            return None;
        }
        let mut x = vec![self.field.zero(); n];
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            x[p] = row[n].clone();
        }
        Some(x)
    }
}

impl Echelon {
    /// Reduces `v` against the echelon rows; zero exactly when `v` is in the row span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(f: Field, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let f = Field::Rationals;
        let m = Matrix::from_rows(f, 3, vec![row(f, &[1, 2, 3]), row(f, &[2, 4, 6]), row(f, &[0, 1, 1])]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for r in &m.rows {
            let dot = r.iter().zip(&ns[0]).fold(f.zero(), |acc, (a, b)| &acc + &(a * b));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn left_solve() {
        let f = Field::Prime(5);
        let m = Matrix::from_rows(f, 2, vec![row(f, &[1, 1]), row(f, &[0, 2])]);
        let x = m.solve_left(&row(f, &[3, 1])).unwrap();
        assert_eq!(x, row(f, &[3, 4]));
        let single = Matrix::from_rows(f, 2, vec![row(f, &[1, 1])]);
        assert!(single.solve_left(&row(f, &[1, 0])).is_none());
    }
}
