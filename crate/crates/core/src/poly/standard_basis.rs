//! Standard bases and syzygies over the localization of the polynomial ring at the origin.

use crate::error::{Error, Result};

use super::monomial::{LocalOrder, Monomial};
use super::polynomial::Poly;
use super::reduce::{reduce_plain, sort_vectors, weak_normal_form, weak_normal_form_tracked, TAIL_DEGREE_BOUND};
use super::vector::{LeadTerm, Vector};

/// If `g` is a monomial times a unit (single component, every term divisible by the
/// leading monomial), it generates the same submodule as that monomial.
fn strip_unit_cofactor(g: &Vector, ord: &LocalOrder) -> Vector {
    let Some(lt) = g.lead(ord) else {
        return g.clone();
    };
    let single = g.comps().iter().enumerate().all(|(i, p)| i == lt.comp || p.is_zero());
    if single && g.comp(lt.comp).terms().iter().all(|(m, _)| lt.mono.divides(m)) {
        return Vector::unit_vector(g.rank(), lt.comp, Poly::monomial(lt.mono, g.field().one(), g.field()));
    }
    g.clone()
}

fn spoly_parts(f: &Vector, g: &Vector, ord: &LocalOrder) -> Option<(Vector, Poly, Poly)> {
    let (lf, lg) = (f.lead(ord)?, g.lead(ord)?);
    if lf.comp != lg.comp {
        return None;
    }
    let lcm = lf.mono.lcm(&lg.mono);
    let field = f.field();
    let mf = Poly::monomial(lcm.div(&lf.mono), lf.coeff.inv(), field);
    let mg = Poly::monomial(lcm.div(&lg.mono), lg.coeff.inv(), field);
    let s = f.mul_poly(&mf).sub(&g.mul_poly(&mg));
    Some((s, mf, mg))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Gebauer-Moeller update after appending the element with leading term `leads[n]`.
/// Only the chain criterion is used: the coprime criterion fails for modules.
fn update_pairs(pairs: &mut Vec<Pair>, leads: &[LeadTerm], n: usize) {
    let h = &leads[n];
    let mut fresh: Vec<Pair> = (0..n)
        .filter(|&i| leads[i].comp == h.comp)
        .map(|i| Pair {
            i,
            j: n,
            lcm: leads[i].mono.lcm(&h.mono),
        })
        .collect();
    pairs.retain(|p| {
        if leads[p.i].comp != h.comp || !h.mono.divides(&p.lcm) {
            return true;
        }
        let li = leads[p.i].mono.lcm(&h.mono);
        let lj = leads[p.j].mono.lcm(&h.mono);
        li == p.lcm || lj == p.lcm
    });
    let snapshot: Vec<Monomial> = fresh.iter().map(|p| p.lcm.clone()).collect();
    fresh.retain(|p| !snapshot.iter().any(|l| l != &p.lcm && l.divides(&p.lcm)));
    let mut seen: Vec<Monomial> = Vec::new();
    fresh.retain(|p| {
        if seen.contains(&p.lcm) {
            false
        } else {
            seen.push(p.lcm.clone());
            true
        }
    });
    pairs.extend(fresh);
}

/// Mora's standard basis algorithm without post-processing.
pub fn raw_standard_basis(gens: &[Vector], ord: &LocalOrder) -> Vec<Vector> {
    let mut basis: Vec<Vector> = Vec::new();
    let mut leads: Vec<LeadTerm> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let g = strip_unit_cofactor(g, ord);
        if basis.contains(&g) {
            continue;
        }
        leads.push(g.lead(ord).expect("nonzero"));
        basis.push(g);
        update_pairs(&mut pairs, &leads, basis.len() - 1);
    }
    while let Some(pos) = next_pair(&pairs) {
        let p = pairs.swap_remove(pos);
        let Some((s, _, _)) = spoly_parts(&basis[p.i], &basis[p.j], ord) else {
            continue;
        };
        let h = weak_normal_form(&s, &basis, ord);
        if h.is_zero() {
            continue;
        }
        let h = strip_unit_cofactor(&h, ord);
        leads.push(h.lead(ord).expect("nonzero"));
        basis.push(h);
        update_pairs(&mut pairs, &leads, basis.len() - 1);
    }
    basis
}

/// Pair with the lowest-degree lcm, earliest pair first among equal degrees.
fn next_pair(pairs: &[Pair]) -> Option<usize> {
    pairs
        .iter()
        .enumerate()
        .min_by_key(|(_, p)| (p.lcm.degree(), p.j, p.i))
        .map(|(pos, _)| pos)
}

/// Canonical reduced standard basis of the submodule generated by `gens`.
///
/// Elements whose leading term is divisible by another leading term are dropped, tails
/// are reduced by the other elements through [`TAIL_DEGREE_BOUND`], elements are made
/// monic and sorted from the largest leading term down. For a fixed order the result does
/// not depend on the order of `gens` (tails are canonical through the degree bound).
pub fn standard_basis(gens: &[Vector], ord: &LocalOrder) -> Vec<Vector> {
    let raw = raw_standard_basis(gens, ord);
    minimize_and_reduce(raw, ord)
}

fn minimize_and_reduce(mut basis: Vec<Vector>, ord: &LocalOrder) -> Vec<Vector> {
    sort_vectors(&mut basis, ord);
    // prefer the shortest element among those with the same leading monomial
    let mut kept: Vec<Vector> = Vec::new();
    for g in basis {
        let lg = g.lead(ord).expect("nonzero");
        if let Some(pos) = kept.iter().position(|k| k.lead(ord).expect("nonzero").divides(&lg)) {
            let lk = kept[pos].lead(ord).expect("nonzero");
            if lk.mono == lg.mono && element_size(&g) < element_size(&kept[pos]) {
                kept[pos] = g;
            }
            continue;
        }
        kept.retain(|k| !lg.divides(&k.lead(ord).expect("nonzero")));
        kept.push(g);
    }
    let mut out: Vec<Vector> = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let others: Vec<Vector> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let reduced = reduce_plain(&kept[i], &others, ord, TAIL_DEGREE_BOUND, true);
        out.push(strip_unit_cofactor(&reduced, ord).monic(ord));
    }
    sort_vectors(&mut out, ord);
    out
}

fn element_size(v: &Vector) -> (usize, u32) {
    (v.comps().iter().map(Poly::len).sum(), v.degree().unwrap_or(0))
}

/// Ideal version of [`standard_basis`]. Fails if a generator has a nonzero constant term.
pub fn std_basis(gens: &[Poly], ord: &LocalOrder) -> Result<Vec<Poly>> {
    let names: Vec<String> = gens.first().map_or(Vec::new(), |g| default_names(g.nvars()));
    for g in gens {
        if g.is_unit() {
            return Err(Error::ConstantTermPresent {
                generator: g.format_with(&names),
            });
        }
    }
    let vs: Vec<Vector> = gens.iter().cloned().map(Vector::from_poly).collect();
    Ok(standard_basis(&vs, ord)
        .into_iter()
        .map(|v| v.into_comps().pop().expect("rank one"))
        .collect())
}

pub(crate) fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// Schreyer syzygies of a standard basis: one syzygy per pair of elements with leading
/// terms in the same component, read off from the standard representation of the
/// s-polynomial. These generate the syzygy module over the local ring.
pub fn syzygies(basis: &[Vector], ord: &LocalOrder) -> Result<Vec<Vector>> {
    let r = basis.len();
    if r == 0 {
        return Ok(Vec::new());
    }
    let nvars = basis[0].nvars();
    let field = basis[0].field();
    let mut out = Vec::new();
    for i in 0..r {
        for j in (i + 1)..r {
            let Some((s, mi, mj)) = spoly_parts(&basis[i], &basis[j], ord) else {
                continue;
            };
            let t = weak_normal_form_tracked(&s, basis, ord);
            if !t.remainder.is_zero() {
                return Err(Error::NotStandardBasis(i, j));
            }
            let mut comps = vec![Poly::zero(nvars, field); r];
            comps[i] = &t.unit * &mi;
            comps[j] = -&(&t.unit * &mj);
            for (k, a) in t.coeffs.iter().enumerate() {
                comps[k] = &comps[k] - a;
            }
            let syz = Vector::new(comps);
            if !syz.is_zero() {
                out.push(syz);
            }
        }
    }
    Ok(out)
}

/// Ideal version of [`syzygies`].
pub fn ideal_syzygies(basis: &[Poly], ord: &LocalOrder) -> Result<Vec<Vector>> {
    let vs: Vec<Vector> = basis.iter().cloned().map(Vector::from_poly).collect();
    syzygies(&vs, ord)
}

/// Generators of the module of relations `sum a_l gens[l] = 0` over `A/I`, where `I` is
/// given by `ideal` (any generating set; empty for the ambient ring itself).
///
/// Works by elimination: the standard basis of the module generated by `(gens[l], e_l)`
/// and `(g e_j, 0)` for `g` in `ideal`, under position-over-term, contains a standard basis
/// of the part with vanishing first block.
pub fn relations(gens: &[Vector], ideal: &[Poly], ord: &LocalOrder) -> Vec<Vector> {
    let s = gens.len();
    if s == 0 {
        return Vec::new();
    }
    let r = gens[0].rank();
    let nvars = gens[0].nvars();
    let field = gens[0].field();
    let mut ext: Vec<Vector> = Vec::with_capacity(s + r * ideal.len());
    for (l, g) in gens.iter().enumerate() {
        ext.push(g.concat(&Vector::unit_vector(s, l, Poly::one(nvars, field))));
    }
    for j in 0..r {
        for p in ideal {
            ext.push(Vector::unit_vector(r, j, p.clone()).concat(&Vector::zero(s, nvars, field)));
        }
    }
    let sb = standard_basis(&ext, ord);
    sb.into_iter()
        .filter(|v| v.lead(ord).is_some_and(|lt| lt.comp >= r))
        .map(|v| v.slice(r..r + s))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::reduce::mora_normal_form;

    fn q() -> Field {
        Field::Rationals
    }

    fn x() -> Poly {
        Poly::var(2, q(), 0)
    }

    fn y() -> Poly {
        Poly::var(2, q(), 1)
    }

    #[test]
    fn monomial_ideals_are_their_own_basis() {
        let ord = LocalOrder::new();
        assert_eq!(std_basis(&[&x() * &y()], &ord).unwrap(), vec![&x() * &y()]);
        let sb = std_basis(&[x().pow(2), &x() * &y()], &ord).unwrap();
        assert_eq!(sb, vec![x().pow(2), &x() * &y()]);
    }

    #[test]
    fn unit_multiple_reduces_to_variable() {
        let ord = LocalOrder::new();
        let sb = std_basis(&[&x() + &x().pow(2), y()], &ord).unwrap();
        assert_eq!(sb, vec![x(), y()]);
    }

    #[test]
    fn constant_term_rejected() {
        let ord = LocalOrder::new();
        let one = Poly::one(2, q());
        assert!(matches!(
            std_basis(&[&x() + &one], &ord),
            Err(Error::ConstantTermPresent { .. })
        ));
    }

    #[test]
    fn koszul_syzygy() {
        let ord = LocalOrder::new();
        let syz = ideal_syzygies(&[x(), y()], &ord).unwrap();
        assert_eq!(syz, vec![Vector::new(vec![y(), -&x()])]);
    }

    #[test]
    fn principal_ideal_has_no_syzygies() {
        let ord = LocalOrder::new();
        assert!(ideal_syzygies(&[&x() * &y()], &ord).unwrap().is_empty());
    }

    #[test]
    fn syzygy_of_x2_xy() {
        let ord = LocalOrder::new();
        let syz = ideal_syzygies(&[x().pow(2), &x() * &y()], &ord).unwrap();
        assert_eq!(syz, vec![Vector::new(vec![y(), -&x()])]);
    }

    #[test]
    fn non_standard_basis_is_detected() {
        let ord = LocalOrder::new();
        // leading terms x^2 and xy; the s-polynomial y^3 is not reducible
        let f = &x().pow(2) + &y().pow(2);
        let g = &x() * &y();
        assert!(matches!(
            ideal_syzygies(&[f, g], &ord),
            Err(Error::NotStandardBasis(0, 1))
        ));
    }

    #[test]
    fn inhomogeneous_standard_basis() {
        let ord = LocalOrder::new();
        let f = &x().pow(2) + &y().pow(3);
        let g = &x() * &y();
        let sb = std_basis(&[f.clone(), g.clone()], &ord).unwrap();
        for h in [&f, &g, &y().pow(4)] {
            assert!(mora_normal_form(h, &sb, &ord).is_zero(), "{h:?}");
        }
        assert!(!mora_normal_form(&y().pow(3), &sb, &ord).is_zero());
    }

    #[test]
    fn relations_over_quotient() {
        let ord = LocalOrder::new();
        // over k[[x,y]]/(xy): relations among x, y are generated by (y, 0) and (0, x)
        let gens = vec![Vector::from_poly(x()), Vector::from_poly(y())];
        let rels = relations(&gens, &[&x() * &y()], &ord);
        assert_eq!(rels.len(), 2);
        for r in &rels {
            let combo = &(&r.comp(0).clone() * &x()) + &(r.comp(1) * &y());
            assert!(mora_normal_form(&combo, &[&x() * &y()], &ord).is_zero());
        }
    }
}
