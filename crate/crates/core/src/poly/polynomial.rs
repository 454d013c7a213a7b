use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

use super::monomial::{LocalOrder, Monomial};

pub type Term = (Monomial, Scalar);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Sparse polynomial over an exact field.
///
/// Terms are kept sorted from largest to smallest in the default [`LocalOrder`]
/// with no zero coefficients, so derived equality is structural equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    field: Field,
    terms: Vec<Term>,
}

fn canonical_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    LocalOrder::new().cmp(a, b)
}

impl Poly {
    pub fn zero(nvars: usize, field: Field) -> Poly {
        Poly {
            nvars,
            field,
            terms: Vec::new(),
        }
    }

    pub fn constant(nvars: usize, field: Field, c: Scalar) -> Poly {
        Poly::monomial(Monomial::one(nvars), c, field)
    }

    pub fn one(nvars: usize, field: Field) -> Poly {
        Poly::constant(nvars, field, field.one())
    }

    pub fn var(nvars: usize, field: Field, i: usize) -> Poly {
        Poly::monomial(Monomial::var(nvars, i), field.one(), field)
    }

    pub fn monomial(m: Monomial, c: Scalar, field: Field) -> Poly {
        let nvars = m.nvars();
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Poly { nvars, field, terms }
    }

    /// Builds a polynomial from arbitrary terms, combining repeated monomials.
    pub fn from_terms(nvars: usize, field: Field, terms: impl IntoIterator<Item = Term>) -> Poly {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match acc.get_mut(&m) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| canonical_cmp(&b.0, &a.0));
        Poly { nvars, field, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading term under `ord`.
    pub fn leading(&self, ord: &LocalOrder) -> Option<&Term> {
        if ord.is_default() {
            self.terms.first()
        } else {
            self.terms.iter().max_by(|a, b| ord.cmp(&a.0, &b.0))
        }
    }

    /// Largest total degree of a term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Smallest total degree of a term (the m-adic order), `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.nvars))
    }

    /// A polynomial is a unit of the local ring exactly when its constant term is nonzero.
    pub fn is_unit(&self) -> bool {
        !self.constant_term().is_zero()
    }

    /// Coefficients of `x_0, ..., x_{n-1}`.
    pub fn linear_part(&self) -> Vec<Scalar> {
        (0..self.nvars)
            .map(|i| self.coefficient(&Monomial::var(self.nvars, i)))
            .collect()
    }

    fn check_ambient(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars || self.field != other.field {
            return Err(Error::AmbientMismatch {
                left: format!("{} variables over {}", self.nvars, self.field),
                right: format!("{} variables over {}", other.nvars, other.field),
            });
        }
        Ok(())
    }

    /// Exact ring arithmetic with an ambient check.
    pub fn arith(&self, other: &Poly, op: ArithOp) -> Result<Poly> {
        self.check_ambient(other)?;
        Ok(match op {
            ArithOp::Add => self.add_scaled(other, &self.field.one()),
            ArithOp::Sub => self.add_scaled(other, &self.field.one().neg_owned()),
            ArithOp::Mul => self.mul_poly(other),
        })
    }

    /// `self + c * other` by merging the sorted term lists.
    fn add_scaled(&self, other: &Poly, c: &Scalar) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match canonical_cmp(&a.0, &b.0) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b.0.clone(), c * &b.1));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a.1 + &(c * &b.1);
                    if !s.is_zero() {
                        out.push((a.0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, b)| (m.clone(), c * b)));
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: out,
        }
    }

    fn mul_poly(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nvars, self.field);
        }
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v = &*v + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| canonical_cmp(&b.0, &a.0));
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars, self.field);
        }
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c * m * self`. Multiplying by a monomial preserves the term order.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars, self.field);
        }
        let mut terms: Vec<Term> = self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect();
        // the default order is degree-compatible and revlex is multiplicative, so order is kept
        debug_assert!(terms
            .windows(2)
            .all(|w| canonical_cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        terms.shrink_to_fit();
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms,
        }
    }

    /// `self - c * m * g`.
    pub fn sub_term_multiple(&self, c: &Scalar, m: &Monomial, g: &Poly) -> Poly {
        self.add_scaled(&g.mul_term(m, &self.field.one()), &c.neg_owned())
    }

    /// Drops every term of total degree `>= n`.
    pub fn truncate_below(&self, n: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            field: self.field,
            terms: self.terms.iter().filter(|(m, _)| m.degree() < n).cloned().collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.nvars, self.field);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_poly(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_poly(&base);
            }
        }
        acc
    }

    /// Substitutes `images[i]` for variable `i`. All images share one ambient.
    pub fn compose(&self, images: &[Poly], target_nvars: usize, field: Field) -> Poly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let mut powers: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut out = Poly::zero(target_nvars, field);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target_nvars, field, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers.entry((i, e)).or_insert_with(|| images[i].pow(e));
                t = t.mul_poly(p);
            }
            out = out.add_scaled(&t, &field.one());
        }
        out
    }

    /// Re-embeds into a larger ambient: variable `i` becomes variable `map[i]`.
    pub fn embed(&self, map: &[usize], target_nvars: usize) -> Poly {
        Poly::from_terms(
            target_nvars,
            self.field,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0u32; target_nvars];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[map[i]] += x;
                }
                (Monomial::from_exponents(e), c.clone())
            }),
        )
    }

    /// Divides out the leading coefficient under `ord`.
    pub fn monic(&self, ord: &LocalOrder) -> Poly {
        match self.leading(ord) {
            Some((_, c)) => self.scale(&c.inv()),
            None => self.clone(),
        }
    }

    /// Renders with the given variable names using `*` and `^`.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, abs) = if c.is_negative() {
                (true, c.neg_owned())
            } else {
                (false, c.clone())
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            let _ = write!(s, "{}", factors.join("*"));
        }
        s
    }
}

impl Scalar {
    pub(crate) fn neg_owned(&self) -> Scalar {
        -self
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.arith(rhs, ArithOp::Add).expect("ambient mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.arith(rhs, ArithOp::Sub).expect("ambient mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.arith(rhs, ArithOp::Mul).expect("ambient mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&self.field.from_i64(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn x() -> Poly {
        Poly::var(2, q(), 0)
    }

    fn y() -> Poly {
        Poly::var(2, q(), 1)
    }

    fn c(n: i64) -> Poly {
        Poly::constant(2, q(), q().from_i64(n))
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x() + &y()) * &(&x() - &y());
        assert_eq!(p, &(&x() * &x()) - &(&y() * &y()));
    }

    #[test]
    fn additive_identity() {
        let f = &(&x() * &y()) + &c(3);
        assert_eq!(&f + &Poly::zero(2, q()), f);
    }

    #[test]
    fn telescoping_product() {
        let one = c(1);
        let x2 = x().pow(2);
        let x3 = x().pow(3);
        let lhs = &(&one + &x()) * &(&(&(&one - &x()) + &x2) - &x3);
        assert_eq!(lhs, &one - &x().pow(4));
    }

    #[test]
    fn mismatched_ambient_is_an_error() {
        let a = Poly::var(2, q(), 0);
        let b = Poly::var(3, q(), 0);
        assert!(matches!(a.arith(&b, ArithOp::Add), Err(Error::AmbientMismatch { .. })));
        let p = Poly::var(2, Field::Prime(5), 0);
        assert!(a.arith(&p, ArithOp::Mul).is_err());
    }

    #[test]
    fn leading_term_is_lowest_degree() {
        let f = &(&x() * &y()) + &x();
        let (m, _) = f.leading(&LocalOrder::new()).unwrap();
        assert_eq!(m.exponents(), &[1, 0]);
    }

    #[test]
    fn compose_and_format() {
        let names = vec!["x".to_string(), "y".to_string()];
        let f = &x() * &y();
        // x -> x + y^2, y -> y
        let g = f.compose(&[&x() + &y().pow(2), y()], 2, q());
        assert_eq!(g.format_with(&names), "x*y + y^3");
        assert_eq!((&c(0) - &x()).format_with(&names), "-x");
        assert_eq!(c(-2).format_with(&names), "-2");
    }
}
