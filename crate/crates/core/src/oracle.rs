//! Brute-force linear-algebra cross-checks, independent of standard bases: everything
//! here works with finite-dimensional spaces of polynomials of bounded degree.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Echelon, Matrix};
use crate::poly::{Monomial, Poly, Vector};

/// Index of the monomials of degree at most `bound`.
struct MonomialSpace {
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialSpace {
    fn up_to(nvars: usize, bound: u32) -> MonomialSpace {
        MonomialSpace::from(Monomial::all_up_to_degree(nvars, bound))
    }

    fn of_degree(nvars: usize, d: u32) -> MonomialSpace {
        MonomialSpace::from(Monomial::all_of_degree(nvars, d))
    }

    fn from(monos: Vec<Monomial>) -> MonomialSpace {
        let index = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialSpace { monos, index }
    }

    fn dim(&self) -> usize {
        self.monos.len()
    }

    /// Coefficient vector; terms outside the space are dropped.
    fn coords(&self, f: &Poly, field: Field) -> Vec<Scalar> {
        let mut v = vec![field.zero(); self.dim()];
        for (m, c) in f.terms() {
            if let Some(&i) = self.index.get(m) {
                v[i] = c.clone();
            }
        }
        v
    }
}

/// Products of `gens` with all monomials, truncated above degree `bound`.
fn truncated_span(space: &MonomialSpace, gens: &[Poly], bound: u32, field: Field) -> Matrix {
    let mut m = Matrix::new(field, space.dim());
    for g in gens {
        let Some(order) = g.order() else { continue };
        for mono in &space.monos {
            if mono.degree() + order > bound {
                continue;
            }
            let shifted = g.mul_term(mono, &field.one()).truncate_below(bound + 1);
            m.push_row(space.coords(&shifted, field));
        }
    }
    m
}

/// Membership in `I + m^(D+1)`, decided in the finite-dimensional space `k[x]/m^(D+1)`.
/// A member of `I` always passes; a non-member passes only if it lies in `I + m^(D+1)`.
pub struct MembershipOracle {
    field: Field,
    space: MonomialSpace,
    span: Echelon,
    pub bound: u32,
}

impl MembershipOracle {
    pub fn new(nvars: usize, field: Field, gens: &[Poly], bound: u32) -> MembershipOracle {
        let space = MonomialSpace::up_to(nvars, bound);
        let span = truncated_span(&space, gens, bound, field).echelon();
        MembershipOracle {
            field,
            space,
            span,
            bound,
        }
    }

    pub fn contains(&self, f: &Poly) -> bool {
        let v = self.space.coords(&f.truncate_below(self.bound + 1), self.field);
        self.span.contains(&v)
    }
}

/// Checks `K + m^(D+1) = (I cap J) + m^(D+1)`, with the right side computed as
/// `((I + m^N) cap (J + m^N)) + m^(D+1)`. Homogeneous ideals intersect degree by degree,
/// so `N = D+1` is exact for them; otherwise `N = 2(D+1)` leaves room for the
/// Artin-Rees shift.
pub fn intersection_matches(nvars: usize, field: Field, i: &[Poly], j: &[Poly], k: &[Poly], bound: u32) -> bool {
    let homogeneous = i.iter().chain(j).all(is_homogeneous);
    let big = if homogeneous { bound } else { 2 * (bound + 1) - 1 };
    let space = MonomialSpace::up_to(nvars, big);
    let ei = truncated_span(&space, i, big, field).echelon();
    let ej = truncated_span(&space, j, big, field).echelon();
    // (a, b) with sum a_r u_r - sum b_s w_s = 0 gives sum a_r u_r in both
    let mut rows: Vec<Vec<Scalar>> = vec![Vec::new(); space.dim()];
    for u in &ei.rows {
        for (r, x) in rows.iter_mut().zip(u) {
            r.push(x.clone());
        }
    }
    for w in &ej.rows {
        for (r, x) in rows.iter_mut().zip(w) {
            r.push(-x);
        }
    }
    let ncols = ei.rows.len() + ej.rows.len();
    let kernel = Matrix::from_rows(field, ncols, rows).nullspace();
    let small = MonomialSpace::up_to(nvars, bound);
    let project = |v: &[Scalar]| -> Vec<Scalar> {
        small
            .monos
            .iter()
            .map(|m| v[*space.index.get(m).expect("smaller space")].clone())
            .collect()
    };
    let mut cap = Matrix::new(field, small.dim());
    for a in &kernel {
        let mut v = vec![field.zero(); space.dim()];
        for (c, u) in a.iter().zip(&ei.rows) {
            if !c.is_zero() {
                for (x, y) in v.iter_mut().zip(u) {
                    *x = &*x + &(c * y);
                }
            }
        }
        cap.push_row(project(&v));
    }
    let lhs = truncated_span(&small, k, bound, field).echelon();
    let rhs = cap.echelon();
    lhs.rows.len() == rhs.rows.len() && lhs.rows.iter().all(|r| rhs.contains(r))
}

fn is_homogeneous(p: &Poly) -> bool {
    p.order() == p.degree()
}

/// Graded pieces `R_d` of `R = k[x]/I` for a homogeneous ideal `I`, computed from the
/// spans of monomial multiples of the generators.
struct GradedRing {
    nvars: usize,
    field: Field,
    pieces: Vec<(MonomialSpace, Echelon, Vec<usize>)>,
}

impl GradedRing {
    fn new(nvars: usize, field: Field, gens: &[Poly], bound: u32) -> GradedRing {
        let pieces = (0..=bound)
            .map(|d| {
                let space = MonomialSpace::of_degree(nvars, d);
                let mut m = Matrix::new(field, space.dim());
                for g in gens {
                    let e = g.degree().expect("nonzero");
                    if e > d {
                        continue;
                    }
                    for mono in Monomial::all_of_degree(nvars, d - e) {
                        m.push_row(space.coords(&g.mul_term(&mono, &field.one()), field));
                    }
                }
                let ech = m.echelon();
                let free = (0..space.dim()).filter(|c| !ech.pivots.contains(c)).collect();
                (space, ech, free)
            })
            .collect();
        GradedRing { nvars, field, pieces }
    }

    fn dim(&self, d: i64) -> usize {
        if d < 0 || d as usize >= self.pieces.len() {
            return 0;
        }
        self.pieces[d as usize].2.len()
    }

    /// Coordinates of a homogeneous element of degree `d` in `R_d`.
    fn coords(&self, f: &Poly, d: i64) -> Vec<Scalar> {
        if d < 0 || d as usize >= self.pieces.len() {
            return Vec::new();
        }
        let (space, ech, free) = &self.pieces[d as usize];
        let r = ech.reduce(&space.coords(f, self.field));
        free.iter().map(|&c| r[c].clone()).collect()
    }

    /// Standard monomial `i` of degree `d`.
    fn basis_monomial(&self, d: i64, i: usize) -> Monomial {
        let (space, _, free) = &self.pieces[d as usize];
        space.monos[free[i]].clone()
    }
}

/// Graded free module `sum R(-a_l)`, elements as component vectors.
struct GradedFree<'a> {
    ring: &'a GradedRing,
    degrees: Vec<i64>,
}

impl GradedFree<'_> {
    fn dim(&self, d: i64) -> usize {
        self.degrees.iter().map(|&a| self.ring.dim(d - a)).sum()
    }

    fn coords(&self, v: &[Poly], d: i64) -> Vec<Scalar> {
        self.degrees
            .iter()
            .zip(v)
            .flat_map(|(&a, p)| self.ring.coords(p, d - a))
            .collect()
    }

    fn element(&self, c: &[Scalar], d: i64) -> Vec<Poly> {
        let (n, field) = (self.ring.nvars, self.ring.field);
        let mut out = vec![Poly::zero(n, field); self.degrees.len()];
        let mut pos = 0;
        for (l, &a) in self.degrees.iter().enumerate() {
            for i in 0..self.ring.dim(d - a) {
                if !c[pos].is_zero() {
                    let m = self.ring.basis_monomial(d - a, i);
                    out[l] = &out[l] + &Poly::monomial(m, c[pos].clone(), field);
                }
                pos += 1;
            }
        }
        out
    }

    /// Basis of `F_d` as elements.
    fn basis(&self, d: i64) -> Vec<Vec<Poly>> {
        let dim = self.dim(d);
        let field = self.ring.field;
        (0..dim)
            .map(|i| {
                let mut c = vec![field.zero(); dim];
                c[i] = field.one();
                self.element(&c, d)
            })
            .collect()
    }
}

/// Minimal generators, degree by degree, of a graded submodule given by its pieces
/// `kernel(d)` (bases in `F_d` coordinates) for `d <= bound`.
fn minimal_generators(
    free: &GradedFree<'_>,
    bound: u32,
    mut kernel: impl FnMut(i64) -> Vec<Vec<Scalar>>,
) -> Vec<(Vec<Poly>, i64)> {
    let ring = free.ring;
    let field = ring.field;
    let mut gens = Vec::new();
    let mut prev: Vec<Vec<Poly>> = Vec::new();
    for d in 0..=bound as i64 {
        let k = kernel(d);
        let dim = free.dim(d);
        let mut span = Matrix::new(field, dim);
        for e in &prev {
            for v in 0..ring.nvars {
                let x = Poly::var(ring.nvars, field, v);
                let shifted: Vec<Poly> = e.iter().map(|p| p * &x).collect();
                span.push_row(free.coords(&shifted, d));
            }
        }
        let mut ech = span.echelon();
        for row in &k {
            if !ech.contains(row) {
                gens.push((free.element(row, d), d));
                span.push_row(row.clone());
                ech = span.echelon();
            }
        }
        prev = k.iter().map(|row| free.element(row, d)).collect();
    }
    gens
}

/// Betti numbers `beta_0 .. beta_max_i` of `R/J` over `R = k[x]/I` for homogeneous `I`
/// and `J`, from the graded minimal resolution computed by linear algebra in degrees up
/// to `bound`. Exact when all minimal generators live in degrees `<= bound`.
pub fn graded_betti(
    nvars: usize,
    field: Field,
    ring_gens: &[Poly],
    module_gens: &[Poly],
    max_i: usize,
    bound: u32,
) -> Result<Vec<usize>> {
    for g in ring_gens.iter().chain(module_gens) {
        if !is_homogeneous(g) {
            return Err(Error::UnsupportedKernel(format!(
                "graded oracle needs homogeneous input, got {}",
                g.format_with(&crate::poly::standard_basis::default_names(nvars))
            )));
        }
    }
    let ring = GradedRing::new(nvars, field, ring_gens, bound);
    let f0 = GradedFree {
        ring: &ring,
        degrees: vec![0],
    };
    // image of J in F_0 = R
    let mut gens = minimal_generators(&f0, bound, |d| {
        let mut m = Matrix::new(field, f0.dim(d));
        for g in module_gens.iter().filter(|g| !g.is_zero()) {
            let e = g.degree().expect("nonzero") as i64;
            if e > d {
                continue;
            }
            for mono in Monomial::all_of_degree(nvars, (d - e) as u32) {
                m.push_row(f0.coords(&[g.mul_term(&mono, &field.one())], d));
            }
        }
        m.echelon().rows
    });
    let mut betti = vec![1];
    for _ in 1..=max_i {
        betti.push(gens.len());
        if gens.is_empty() {
            continue;
        }
        let (images, degrees): (Vec<Vec<Poly>>, Vec<i64>) = gens.into_iter().unzip();
        let src = GradedFree {
            ring: &ring,
            degrees: degrees.clone(),
        };
        let tgt_rank = images[0].len();
        let tgt = GradedFree {
            ring: &ring,
            degrees: previous_degrees(&images, &degrees, tgt_rank),
        };
        gens = minimal_generators(&src, bound, |d| {
            let basis = src.basis(d);
            if basis.is_empty() {
                return Vec::new();
            }
            // column c is the image of basis element c
            let tdim = tgt.dim(d);
            let mut rows: Vec<Vec<Scalar>> = vec![Vec::new(); tdim];
            for b in &basis {
                let mut img = vec![Poly::zero(nvars, field); tgt_rank];
                for (bl, column) in b.iter().zip(&images) {
                    if bl.is_zero() {
                        continue;
                    }
                    for (acc, p) in img.iter_mut().zip(column) {
                        *acc = &*acc + &(bl * p);
                    }
                }
                for (r, x) in rows.iter_mut().zip(tgt.coords(&img, d)) {
                    r.push(x);
                }
            }
            Matrix::from_rows(field, basis.len(), rows).nullspace()
        });
    }
    Ok(betti)
}

/// Degrees of the target free module, read off from the images: component `l` of an
/// image of degree `d` has degree `d - a_l`.
fn previous_degrees(images: &[Vec<Poly>], degrees: &[i64], rank: usize) -> Vec<i64> {
    (0..rank)
        .map(|l| {
            images
                .iter()
                .zip(degrees)
                .find_map(|(img, &d)| img[l].degree().map(|e| d - e as i64))
                .unwrap_or(0)
        })
        .collect()
}

/// Dimensions `dim_k Syz_d` of the homogeneous syzygies of homogeneous `gens` in
/// degrees `0..=bound` (a syzygy `(a_l)` has degree `deg a_l + deg g_l`).
pub fn syzygy_dims(nvars: usize, field: Field, gens: &[Poly], bound: u32) -> Vec<usize> {
    let ring = GradedRing::new(nvars, field, &[], bound);
    let degrees: Vec<i64> = gens.iter().map(|g| g.degree().unwrap_or(0) as i64).collect();
    let src = GradedFree { ring: &ring, degrees };
    let tgt = GradedFree {
        ring: &ring,
        degrees: vec![0],
    };
    (0..=bound as i64)
        .map(|d| {
            let basis = src.basis(d);
            if basis.is_empty() {
                return 0;
            }
            let mut rows: Vec<Vec<Scalar>> = vec![Vec::new(); tgt.dim(d)];
            for b in &basis {
                let img = b
                    .iter()
                    .zip(gens)
                    .fold(Poly::zero(nvars, field), |acc, (a, g)| &acc + &(a * g));
                for (r, x) in rows.iter_mut().zip(tgt.coords(&[img], d)) {
                    r.push(x);
                }
            }
            Matrix::from_rows(field, basis.len(), rows).nullspace().len()
        })
        .collect()
}

/// Dimensions of the degree pieces of the module generated by homogeneous syzygies of
/// `gens`.
pub fn syzygy_span_dims(nvars: usize, field: Field, gens: &[Poly], syz: &[Vector], bound: u32) -> Vec<usize> {
    let ring = GradedRing::new(nvars, field, &[], bound);
    let degrees: Vec<i64> = gens.iter().map(|g| g.degree().unwrap_or(0) as i64).collect();
    let src = GradedFree {
        ring: &ring,
        degrees: degrees.clone(),
    };
    let syz_degree = |s: &Vector| -> i64 {
        s.comps()
            .iter()
            .zip(&degrees)
            .find_map(|(p, &a)| p.degree().map(|e| e as i64 + a))
            .unwrap_or(0)
    };
    (0..=bound as i64)
        .map(|d| {
            let mut m = Matrix::new(field, src.dim(d));
            for s in syz {
                let e = syz_degree(s);
                if e > d {
                    continue;
                }
                for mono in Monomial::all_of_degree(nvars, (d - e) as u32) {
                    let shifted: Vec<Poly> = s.comps().iter().map(|p| p.mul_term(&mono, &field.one())).collect();
                    m.push_row(src.coords(&shifted, d));
                }
            }
            m.rank()
        })
        .collect()
}
