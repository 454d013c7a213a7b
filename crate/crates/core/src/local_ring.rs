//! Presentations `k[[x_1..x_n]]/I` of Noetherian complete local `k`-algebras.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::algebra::{Coords, FiniteAlgebra, LinearMap};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::poly::reduce::reduce_plain;
use crate::poly::{mora_normal_form, parse_poly, std_basis, LocalOrder, Monomial, Poly, Vector};

/// `k[[vars]] / (gens)`. The standard basis is computed on first use and then shared.
#[derive(Clone)]
pub struct LocalRing {
    vars: Vec<String>,
    gens: Vec<Poly>,
    field: Field,
    order: LocalOrder,
    sb: Arc<OnceLock<Vec<Poly>>>,
}

impl PartialEq for LocalRing {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.gens == other.gens && self.field == other.field
    }
}

impl Eq for LocalRing {}

impl fmt::Debug for LocalRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LocalRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            return write!(f, "k");
        }
        write!(f, "k[[{}]]", self.vars.join(","))?;
        if !self.gens.is_empty() {
            let gens: Vec<String> = self.gens.iter().map(|g| self.format(g)).collect();
            write!(f, " / ({})", gens.join(", "))?;
        }
        Ok(())
    }
}

/// Local invariants at the closed point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantsReport {
    pub edim: usize,
    pub dim: usize,
    pub depth: usize,
    pub regular: bool,
}

/// One level `R / (I + m^n)` of the adic tower, with an explicit monomial basis.
#[derive(Clone, Debug)]
pub struct ArtinianTruncation {
    pub level: u32,
    pub basis: Vec<Monomial>,
    pub algebra: FiniteAlgebra,
    index: HashMap<Monomial, usize>,
    reducers: Vec<Vector>,
    order: LocalOrder,
    nvars: usize,
}

impl LocalRing {
    /// Validates a presentation. Zero generators are dropped.
    pub fn present(vars: Vec<String>, gens: Vec<Poly>, field: Field) -> Result<LocalRing> {
        let mut seen = HashSet::new();
        for v in &vars {
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        for g in &gens {
            if g.nvars() != vars.len() || g.field() != field {
                return Err(Error::AmbientMismatch {
                    left: format!("{} variables over {}", vars.len(), field),
                    right: format!("{} variables over {}", g.nvars(), g.field()),
                });
            }
            if g.is_unit() {
                return Err(Error::ConstantTermPresent {
                    generator: g.format_with(&vars),
                });
            }
        }
        Ok(LocalRing {
            vars,
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            field,
            order: LocalOrder::new(),
            sb: Arc::new(OnceLock::new()),
        })
    }

    /// Parses generator strings in the given variables.
    pub fn parse(vars: &[&str], gens: &[&str], field: Field) -> Result<LocalRing> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let polys = gens
            .iter()
            .map(|g| parse_poly(g, &vars, field))
            .collect::<Result<Vec<_>>>()?;
        LocalRing::present(vars, polys, field)
    }

    /// The power series ring itself.
    pub fn power_series(vars: &[&str], field: Field) -> LocalRing {
        LocalRing::parse(vars, &[], field).expect("distinct variables")
    }

    /// The residue field `k`, presented with no variables.
    pub fn residue_field(field: Field) -> LocalRing {
        LocalRing::present(Vec::new(), Vec::new(), field).expect("valid")
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> &LocalOrder {
        &self.order
    }

    /// The ambient power series ring `k[[vars]]`.
    pub fn ambient(&self) -> LocalRing {
        LocalRing {
            vars: self.vars.clone(),
            gens: Vec::new(),
            field: self.field,
            order: self.order.clone(),
            sb: Arc::new(OnceLock::new()),
        }
    }

    /// Same variables, different ideal.
    pub fn with_gens(&self, gens: Vec<Poly>) -> Result<LocalRing> {
        LocalRing::present(self.vars.clone(), gens, self.field)
    }

    pub fn format(&self, p: &Poly) -> String {
        p.format_with(&self.vars)
    }

    pub fn parse_element(&self, src: &str) -> Result<Poly> {
        parse_poly(src, &self.vars, self.field)
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), self.field, i)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.nvars(), self.field)
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.nvars(), self.field)
    }

    /// Standard basis of the defining ideal under the default local order.
    pub fn std_basis(&self) -> &[Poly] {
        self.sb
            .get_or_init(|| std_basis(&self.gens, &self.order).expect("validated generators"))
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        if self.std_basis().is_empty() {
            return f.clone();
        }
        mora_normal_form(f, self.std_basis(), &self.order)
    }

    /// Membership of `f` in the defining ideal.
    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// True when the ring is the residue field, i.e. `m = 0`.
    pub fn is_field(&self) -> bool {
        self.edim() == 0
    }

    /// `dim_k m/(m^2 + I)`: the variable count minus the rank of the linear parts.
    pub fn edim(&self) -> usize {
        let rows: Vec<_> = self.gens.iter().map(Poly::linear_part).collect();
        self.nvars() - Matrix::from_rows(self.field, self.nvars(), rows).rank()
    }

    fn leading_monomials(&self) -> Vec<Monomial> {
        self.std_basis()
            .iter()
            .map(|g| g.leading(&self.order).expect("nonzero").0.clone())
            .collect()
    }

    /// Largest set of variables containing the support of no leading monomial.
    pub fn krull_dim(&self) -> usize {
        let n = self.nvars();
        let supports: Vec<u64> = self
            .leading_monomials()
            .iter()
            .map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i)))
            .collect();
        assert!(n < 64, "too many variables for subset search");
        let mut best = 0;
        for subset in 0u64..(1u64 << n) {
            let size = subset.count_ones() as usize;
            if size > best && supports.iter().all(|s| s & !subset != 0) {
                best = size;
            }
        }
        best
    }

    /// Depth via Auslander-Buchsbaum: ambient dimension minus the projective dimension of
    /// `R` over the ambient power series ring.
    pub fn depth(&self) -> usize {
        self.nvars() - crate::resolution::ambient_projective_dimension(self)
    }

    pub fn is_regular(&self) -> bool {
        self.krull_dim() == self.edim()
    }

    pub fn invariants(&self) -> InvariantsReport {
        InvariantsReport {
            edim: self.edim(),
            dim: self.krull_dim(),
            depth: self.depth(),
            regular: self.is_regular(),
        }
    }

    /// Numerator `N(t)` of the Hilbert series `N(t)/(1-t)^n` of the tangent cone.
    pub fn hilbert_numerator(&self) -> Vec<i64> {
        hilbert_numerator(self.leading_monomials())
    }

    /// `R / (I + m^n)` with its monomial basis and multiplication table.
    pub fn truncate(&self, n: u32) -> ArtinianTruncation {
        assert!(n >= 1, "truncation level starts at 1");
        let lms = self.leading_monomials();
        let basis: Vec<Monomial> = Monomial::all_up_to_degree(self.nvars(), n - 1)
            .into_iter()
            .filter(|m| !lms.iter().any(|l| l.divides(m)))
            .collect();
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let reducers: Vec<Vector> = self.std_basis().iter().cloned().map(Vector::from_poly).collect();
        let mut t = ArtinianTruncation {
            level: n,
            basis,
            algebra: FiniteAlgebra {
                field: self.field,
                one: Vec::new(),
                residue: Vec::new(),
                table: Vec::new(),
            },
            index,
            reducers,
            order: self.order.clone(),
            nvars: self.nvars(),
        };
        let d = t.basis.len();
        let mut table = vec![vec![Vec::new(); d]; d];
        for i in 0..d {
            for j in i..d {
                let prod = t.basis[i].mul(&t.basis[j]);
                let c = t.coords(&Poly::monomial(prod, self.field.one(), self.field));
                table[j][i] = c.clone();
                table[i][j] = c;
            }
        }
        let mut unit = vec![self.field.zero(); d];
        unit[0] = self.field.one();
        t.algebra = FiniteAlgebra {
            field: self.field,
            one: unit.clone(),
            residue: unit,
            table,
        };
        t
    }
}

/// Hilbert series numerator of `k[x_1..x_n]/L` for the monomial ideal generated by `gens`,
/// by the recursion `N(M + (m)) = N(M) - t^deg(m) N(M : m)`.
pub fn hilbert_numerator(gens: Vec<Monomial>) -> Vec<i64> {
    let gens = minimal_monomials(gens);
    let Some((last, rest)) = gens.split_last() else {
        return vec![1];
    };
    let base = hilbert_numerator(rest.to_vec());
    let colon: Vec<Monomial> = rest.iter().map(|g| g.div(&g.gcd(last))).collect();
    let inner = hilbert_numerator(colon);
    let shift = last.degree() as usize;
    let mut out = base;
    if out.len() < inner.len() + shift {
        out.resize(inner.len() + shift, 0);
    }
    for (i, c) in inner.iter().enumerate() {
        out[i + shift] -= c;
    }
    while out.len() > 1 && *out.last().expect("nonempty") == 0 {
        out.pop();
    }
    out
}

fn minimal_monomials(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.degree(), m.clone()));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|o| o.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Multiplies two integer polynomials given by coefficient lists.
pub(crate) fn poly_mul_i64(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    while out.len() > 1 && *out.last().expect("nonempty") == 0 {
        out.pop();
    }
    out
}

/// `(1 - t)^k`.
pub(crate) fn one_minus_t_pow(k: usize) -> Vec<i64> {
    (0..k).fold(vec![1], |acc, _| poly_mul_i64(&acc, &[1, -1]))
}

impl ArtinianTruncation {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of the residue class of `f` (a polynomial in the ring's variables).
    pub fn coords(&self, f: &Poly) -> Coords {
        let field = f.field();
        let mut out = vec![field.zero(); self.dim()];
        let f = f.truncate_below(self.level);
        if f.is_zero() {
            return out;
        }
        let r = reduce_plain(
            &Vector::from_poly(f),
            &self.reducers,
            &self.order,
            self.level - 1,
            false,
        );
        for (m, c) in r.comp(0).terms() {
            if m.degree() < self.level {
                let i = *self.index.get(m).expect("standard monomial");
                out[i] = c.clone();
            }
        }
        out
    }

    /// Projection onto the lower level `n' <= n`: the basis there is a prefix of this one.
    pub fn tower_map(&self, lower: &ArtinianTruncation) -> LinearMap {
        assert!(lower.level <= self.level);
        LinearMap {
            field: self.algebra.field,
            target_dim: lower.dim(),
            columns: self
                .basis
                .iter()
                .map(|m| lower.coords(&Poly::monomial(m.clone(), self.algebra.field.one(), self.algebra.field)))
                .collect(),
        }
    }

    /// Linear map to another truncation induced by substituting `images` (polynomials in
    /// the target's variables) for this ring's variables.
    pub fn induced_map(&self, images: &[Poly], target: &ArtinianTruncation) -> LinearMap {
        let field = self.algebra.field;
        LinearMap {
            field,
            target_dim: target.dim(),
            columns: self
                .basis
                .iter()
                .map(|m| {
                    let p = Poly::monomial(m.clone(), field.one(), field);
                    target.coords(&p.compose(images, target.nvars, field))
                })
                .collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
}
