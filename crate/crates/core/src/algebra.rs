//! Finite-dimensional commutative local algebras given by structure constants.

use crate::field::{Field, Scalar};
use crate::linalg::{Echelon, Matrix};

pub type Coords = Vec<Scalar>;

/// A commutative local `k`-algebra of finite dimension. `table[i][j]` holds the
/// coordinates of `e_i * e_j`; `residue` is the linear form `A -> A/m = k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    pub field: Field,
    pub one: Coords,
    pub residue: Coords,
    pub table: Vec<Vec<Coords>>,
}

/// Linear map between finite algebras: `matrix[j]` is the image of the `j`-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub field: Field,
    pub target_dim: usize,
    pub columns: Vec<Coords>,
}

/// Subalgebra of an algebra, remembering how its basis sits in the ambient one.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    pub algebra: FiniteAlgebra,
    /// Basis vectors in ambient coordinates (reduced row echelon form).
    pub basis: Vec<Coords>,
    pivots: Vec<usize>,
}

pub(crate) fn add(a: &[Scalar], b: &[Scalar]) -> Coords {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn scale(c: &Scalar, a: &[Scalar]) -> Coords {
    a.iter().map(|x| c * x).collect()
}

fn dot(a: &[Scalar], b: &[Scalar], field: Field) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(field.zero(), |acc, (x, y)| &acc + &(x * y))
}

impl FiniteAlgebra {
    pub fn dim(&self) -> usize {
        self.one.len()
    }

    pub fn zero(&self) -> Coords {
        vec![self.field.zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Coords {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Coords {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let c = x * y;
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    if !t.is_zero() {
                        *o = &*o + &(&c * t);
                    }
                }
            }
        }
        out
    }

    pub fn residue_of(&self, a: &[Scalar]) -> Scalar {
        dot(&self.residue, a, self.field)
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (i + 1..d).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                (0..d).all(|k| {
                    let (ei, ej, ek) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
                    self.mul(&self.mul(&ei, &ej), &ek) == self.mul(&ei, &self.mul(&ej, &ek))
                })
            })
        })
    }

    pub fn has_unit(&self) -> bool {
        (0..self.dim()).all(|i| self.mul(&self.one, &self.basis_vector(i)) == self.basis_vector(i))
    }

    /// Basis of the maximal ideal `ker(residue)`.
    pub fn maximal_ideal(&self) -> Vec<Coords> {
        let m = Matrix::from_rows(self.field, self.dim(), vec![self.residue.clone()]);
        m.nullspace()
    }

    /// Echelon basis of the ideal spanned by all products of `k` elements of `ideal`.
    pub fn ideal_power(&self, ideal: &[Coords], k: u32) -> Echelon {
        let d = self.dim();
        if k == 0 {
            let unit = (0..d).map(|i| self.basis_vector(i)).collect();
            return Matrix::from_rows(self.field, d, unit).echelon();
        }
        let mut cur = Matrix::from_rows(self.field, d, ideal.to_vec()).echelon();
        for _ in 1..k {
            let mut next = Matrix::new(self.field, d);
            for a in &cur.rows {
                for b in ideal {
                    next.push_row(self.mul(a, b));
                }
            }
            cur = next.echelon();
        }
        cur
    }

    /// Direct product `A x B` with the basis of `A` followed by that of `B`. The residue
    /// form is the one of `A` (pairs agreeing at the closed point have equal residues).
    pub fn direct_product(a: &FiniteAlgebra, b: &FiniteAlgebra) -> FiniteAlgebra {
        let (da, db) = (a.dim(), b.dim());
        let field = a.field;
        let d = da + db;
        let mut table = vec![vec![vec![field.zero(); d]; d]; d];
        for i in 0..da {
            for j in 0..da {
                table[i][j][..da].clone_from_slice(&a.table[i][j]);
            }
        }
        for i in 0..db {
            for j in 0..db {
                table[da + i][da + j][da..].clone_from_slice(&b.table[i][j]);
            }
        }
        let mut one = a.one.clone();
        one.extend(b.one.iter().cloned());
        let mut residue = a.residue.clone();
        residue.extend(std::iter::repeat_n(field.zero(), db));
        FiniteAlgebra {
            field,
            one,
            residue,
            table,
        }
    }

    /// Subalgebra spanned by `span` (which must be closed under multiplication and contain
    /// the unit). Returns `None` when it is not.
    pub fn subalgebra(&self, span: &[Coords]) -> Option<Subalgebra> {
        let e = Matrix::from_rows(self.field, self.dim(), span.to_vec()).echelon();
        if !e.contains(&self.one) {
            return None;
        }
        let coords = |v: &[Scalar]| -> Option<Coords> {
            if !e.contains(v) {
                return None;
            }
            Some(e.pivots.iter().map(|&p| v[p].clone()).collect())
        };
        let n = e.rows.len();
        let mut table = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                table[i][j] = coords(&self.mul(&e.rows[i], &e.rows[j]))?;
            }
        }
        let one = coords(&self.one)?;
        let residue = e.rows.iter().map(|r| self.residue_of(r)).collect();
        Some(Subalgebra {
            algebra: FiniteAlgebra {
                field: self.field,
                one,
                residue,
                table,
            },
            basis: e.rows,
            pivots: e.pivots,
        })
    }

    /// Quotient `A / ideal` for an ideal given by an echelon basis. The quotient basis is
    /// the set of non-pivot coordinate vectors.
    pub fn quotient(&self, ideal: &Echelon) -> Quotient {
        let keep: Vec<usize> = (0..self.dim()).filter(|c| !ideal.pivots.contains(c)).collect();
        let project = |v: &[Scalar]| -> Coords {
            let r = ideal.reduce(v);
            keep.iter().map(|&c| r[c].clone()).collect()
        };
        let n = keep.len();
        let mut table = vec![vec![Vec::new(); n]; n];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                table[a][b] = project(&self.table[i][j]);
            }
        }
        let one = project(&self.one);
        let residue = keep.iter().map(|&c| self.residue[c].clone()).collect();
        Quotient {
            algebra: FiniteAlgebra {
                field: self.field,
                one,
                residue,
                table,
            },
            ideal: ideal.clone(),
            keep,
        }
    }

    /// Checks that `phi` is a bijective unital ring homomorphism `self -> target`.
    pub fn is_isomorphism(&self, phi: &LinearMap, target: &FiniteAlgebra) -> bool {
        if self.dim() != target.dim() || phi.columns.len() != self.dim() {
            return false;
        }
        let m = Matrix::from_rows(self.field, target.dim(), phi.columns.clone());
        if m.rank() != self.dim() {
            return false;
        }
        phi.apply(&self.one) == target.one && self.is_homomorphism(phi, target)
    }

    /// `phi(e_i e_j) = phi(e_i) phi(e_j)` for all basis pairs.
    pub fn is_homomorphism(&self, phi: &LinearMap, target: &FiniteAlgebra) -> bool {
        let d = self.dim();
        (0..d).all(|i| (i..d).all(|j| phi.apply(&self.table[i][j]) == target.mul(&phi.columns[i], &phi.columns[j])))
    }
}

/// Quotient algebra together with the projection from the parent.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: FiniteAlgebra,
    ideal: Echelon,
    keep: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, v: &[Scalar]) -> Coords {
        let r = self.ideal.reduce(v);
        self.keep.iter().map(|&c| r[c].clone()).collect()
    }
}

impl Subalgebra {
    /// Coordinates of an ambient vector lying in the subalgebra.
    pub fn coords(&self, v: &[Scalar]) -> Option<Coords> {
        let e = Echelon {
            rows: self.basis.clone(),
            pivots: self.pivots.clone(),
        };
        if !e.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Ambient vector of subalgebra coordinates.
    pub fn embed(&self, c: &[Scalar]) -> Coords {
        let d = self.basis.first().map_or(0, Vec::len);
        let field = self.algebra.field;
        let mut out = vec![field.zero(); d];
        for (x, row) in c.iter().zip(&self.basis) {
            if !x.is_zero() {
                out = add(&out, &scale(x, row));
            }
        }
        out
    }
}

impl LinearMap {
    pub fn apply(&self, v: &[Scalar]) -> Coords {
        let mut out = vec![self.field.zero(); self.target_dim];
        for (x, col) in v.iter().zip(&self.columns) {
            if !x.is_zero() {
                out = add(&out, &scale(x, col));
            }
        }
        out
    }

    pub fn compose(&self, first: &LinearMap) -> LinearMap {
        LinearMap {
            field: self.field,
            target_dim: self.target_dim,
            columns: first.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        Matrix::from_rows(self.field, self.target_dim, self.columns.clone()).rank()
    }
}
