use std::cmp::Ordering;

use crate::field::{Field, Scalar};

use super::monomial::{LocalOrder, Monomial};
use super::polynomial::Poly;

/// Element of a free module `A^r` over the ambient polynomial ring.
///
/// Module terms are ordered position-over-term: a term in component `i` is larger than
/// every term in a component `j > i`; within a component the monomial order decides.
/// Ideals are handled as rank-one modules.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    comps: Vec<Poly>,
}

/// Leading term of a module element: component, monomial, coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadTerm {
    pub comp: usize,
    pub mono: Monomial,
    pub coeff: Scalar,
}

impl LeadTerm {
    pub fn divides(&self, other: &LeadTerm) -> bool {
        self.comp == other.comp && self.mono.divides(&other.mono)
    }
}

/// Position-over-term comparison of two (component, monomial) pairs.
pub fn pot_cmp(ord: &LocalOrder, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    match b.0.cmp(&a.0) {
        Ordering::Equal => ord.cmp(a.1, b.1),
        o => o,
    }
}

impl Vector {
    pub fn new(comps: Vec<Poly>) -> Vector {
        assert!(!comps.is_empty(), "vectors have rank at least one");
        Vector { comps }
    }

    pub fn zero(rank: usize, nvars: usize, field: Field) -> Vector {
        Vector::new(vec![Poly::zero(nvars, field); rank])
    }

    pub fn from_poly(p: Poly) -> Vector {
        Vector { comps: vec![p] }
    }

    /// `p * e_i` in a module of rank `rank`.
    pub fn unit_vector(rank: usize, i: usize, p: Poly) -> Vector {
        let mut v = Vector::zero(rank, p.nvars(), p.field());
        v.comps[i] = p;
        v
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn nvars(&self) -> usize {
        self.comps[0].nvars()
    }

    pub fn field(&self) -> Field {
        self.comps[0].field()
    }

    pub fn comps(&self) -> &[Poly] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn into_comps(self) -> Vec<Poly> {
        self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn lead(&self, ord: &LocalOrder) -> Option<LeadTerm> {
        self.comps.iter().enumerate().find_map(|(i, p)| {
            p.leading(ord).map(|(m, c)| LeadTerm {
                comp: i,
                mono: m.clone(),
                coeff: c.clone(),
            })
        })
    }

    pub fn degree(&self) -> Option<u32> {
        self.comps.iter().filter_map(Poly::degree).max()
    }

    /// Mora's ecart: total degree minus the degree of the leading monomial.
    pub fn ecart(&self, ord: &LocalOrder) -> u32 {
        match (self.degree(), self.lead(ord)) {
            (Some(d), Some(lt)) => d - lt.mono.degree(),
            _ => 0,
        }
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector {
            comps: self.comps.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul_poly(&self, f: &Poly) -> Vector {
        Vector {
            comps: self.comps.iter().map(|p| p * f).collect(),
        }
    }

    /// `self - c * m * g`.
    pub fn sub_term_multiple(&self, c: &Scalar, m: &Monomial, g: &Vector) -> Vector {
        Vector {
            comps: self
                .comps
                .iter()
                .zip(&g.comps)
                .map(|(a, b)| {
                    if b.is_zero() {
                        a.clone()
                    } else {
                        a.sub_term_multiple(c, m, b)
                    }
                })
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Vector {
        Vector {
            comps: self.comps.iter().map(|p| p.mul_term(m, c)).collect(),
        }
    }

    /// Concatenates the components of `self` and `other`.
    pub fn concat(&self, other: &Vector) -> Vector {
        let mut comps = self.comps.clone();
        comps.extend(other.comps.iter().cloned());
        Vector { comps }
    }

    /// Components `range.start..range.end` as a new vector.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Vector {
        Vector::new(self.comps[range].to_vec())
    }

    pub fn map_comps(&self, f: impl FnMut(&Poly) -> Poly) -> Vector {
        Vector {
            comps: self.comps.iter().map(f).collect(),
        }
    }

    /// Drops component `i`.
    pub fn remove_comp(&self, i: usize) -> Vector {
        let mut comps = self.comps.clone();
        comps.remove(i);
        Vector::new(comps)
    }

    pub fn monic(&self, ord: &LocalOrder) -> Vector {
        match self.lead(ord) {
            Some(lt) => self.scale(&lt.coeff.inv()),
            None => self.clone(),
        }
    }

    /// True when some component has a nonzero constant term.
    pub fn has_unit_entry(&self) -> bool {
        self.comps.iter().any(Poly::is_unit)
    }

    pub fn format_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self.comps.iter().map(|p| p.format_with(names)).collect();
        format!("[{}]", parts.join(", "))
    }
}
