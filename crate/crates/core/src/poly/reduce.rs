//! Division with respect to a local order.
//!
//! Local orders are not well-orders, so plain division need not terminate. The
//! weak normal form follows Mora: always reduce with a reducer of minimal ecart and
//! add the current remainder to the reducer set whenever that reducer's ecart is
//! larger. The remainder then satisfies `u * f = sum a_k g_k + h` for a unit `u`.

use std::borrow::Cow;

use super::monomial::LocalOrder;
use super::polynomial::Poly;
use super::vector::{pot_cmp, LeadTerm, Vector};

/// Tails of normal forms and standard basis elements are reduced through this total degree.
pub const TAIL_DEGREE_BOUND: u32 = 16;

struct Reducer<'a> {
    elem: Cow<'a, Vector>,
    lead: LeadTerm,
    ecart: u32,
    // `unit * f = sum coeffs_k g_k + elem` for remainders added during the run
    track: Option<(Poly, Vec<Poly>)>,
}

/// Result of a tracked Mora reduction: `unit * f = sum coeffs[k] * basis[k] + remainder`.
#[derive(Clone, Debug)]
pub struct Tracked {
    pub remainder: Vector,
    pub unit: Poly,
    pub coeffs: Vec<Poly>,
}

fn mora(f: &Vector, basis: &[Vector], ord: &LocalOrder, track: bool) -> Tracked {
    let nvars = f.nvars();
    let field = f.field();
    let mut reducers: Vec<Reducer> = basis
        .iter()
        .filter_map(|g| {
            g.lead(ord).map(|lead| Reducer {
                ecart: g.ecart(ord),
                elem: Cow::Borrowed(g),
                lead,
                track: None,
            })
        })
        .collect();
    // indices into `basis` for the initial reducers
    let basis_index: Vec<usize> = basis
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(i, _)| i)
        .collect();

    let mut h = f.clone();
    let mut unit = Poly::one(nvars, field);
    let mut coeffs = if track {
        vec![Poly::zero(nvars, field); basis.len()]
    } else {
        Vec::new()
    };

    while let Some(lt) = h.lead(ord) {
        let Some(best) = reducers
            .iter()
            .enumerate()
            .filter(|(_, r)| r.lead.divides(&lt))
            .min_by_key(|(i, r)| (r.ecart, *i))
            .map(|(i, _)| i)
        else {
            break;
        };
        let h_ecart = h.ecart(ord);
        if reducers[best].ecart > h_ecart {
            let lead = lt.clone();
            reducers.push(Reducer {
                elem: Cow::Owned(h.clone()),
                lead,
                ecart: h_ecart,
                track: track.then(|| (unit.clone(), coeffs.clone())),
            });
        }
        let r = &reducers[best];
        let m = lt.mono.div(&r.lead.mono);
        let c = &lt.coeff * &r.lead.coeff.inv();
        h = h.sub_term_multiple(&c, &m, &r.elem);
        if track {
            match &r.track {
                None => {
                    let k = basis_index[best];
                    coeffs[k] = &coeffs[k] + &Poly::monomial(m, c, field);
                }
                Some((u, a)) => {
                    let q = Poly::monomial(m, c, field);
                    unit = &unit - &(&q * u);
                    for (ck, ak) in coeffs.iter_mut().zip(a) {
                        if !ak.is_zero() {
                            *ck = &*ck - &(&q * ak);
                        }
                    }
                }
            }
        }
    }
    Tracked {
        remainder: h,
        unit,
        coeffs,
    }
}

/// Mora's weak normal form. Zero exactly when `f` lies in the submodule generated by
/// `basis` over the local ring, provided `basis` is a standard basis.
pub fn weak_normal_form(f: &Vector, basis: &[Vector], ord: &LocalOrder) -> Vector {
    mora(f, basis, ord, false).remainder
}

/// Weak normal form with a standard representation of `f`.
pub fn weak_normal_form_tracked(f: &Vector, basis: &[Vector], ord: &LocalOrder) -> Tracked {
    mora(f, basis, ord, true)
}

/// Division without units: every term of degree `<= bound` (the leading term too, unless
/// `skip_leading`) that is divisible by a leading term of `basis` is cancelled by
/// subtracting a term multiple. Terms above `bound` are left alone, which keeps the process
/// finite. The result differs from `f` by an element of the submodule generated by `basis`.
pub fn reduce_plain(f: &Vector, basis: &[Vector], ord: &LocalOrder, bound: u32, skip_leading: bool) -> Vector {
    let leads: Vec<(LeadTerm, &Vector)> = basis.iter().filter_map(|g| g.lead(ord).map(|lt| (lt, g))).collect();
    let mut work = f.clone();
    let mut done = Vector::zero(f.rank(), f.nvars(), f.field());
    let mut first = true;
    while let Some(lt) = work.lead(ord) {
        let reducer = if (skip_leading && first) || lt.mono.degree() > bound {
            None
        } else {
            leads.iter().find(|(l, _)| l.divides(&lt))
        };
        first = false;
        match reducer {
            Some((l, g)) => {
                let m = lt.mono.div(&l.mono);
                let c = &lt.coeff * &l.coeff.inv();
                work = work.sub_term_multiple(&c, &m, g);
            }
            None => {
                let single = Vector::unit_vector(
                    f.rank(),
                    lt.comp,
                    Poly::monomial(lt.mono.clone(), lt.coeff.clone(), f.field()),
                );
                work = work.sub(&single);
                done = done.add(&single);
            }
        }
    }
    done
}

/// Reduced normal form: Mora's weak normal form followed by unit-free reduction of the
/// tail through [`TAIL_DEGREE_BOUND`]. Idempotent, and zero exactly when the weak normal
/// form is zero.
pub fn normal_form(f: &Vector, basis: &[Vector], ord: &LocalOrder) -> Vector {
    let h = weak_normal_form(f, basis, ord);
    if h.is_zero() {
        return h;
    }
    reduce_plain(&h, basis, ord, TAIL_DEGREE_BOUND, true)
}

/// Ideal version of [`normal_form`].
pub fn mora_normal_form(f: &Poly, basis: &[Poly], ord: &LocalOrder) -> Poly {
    let basis: Vec<Vector> = basis.iter().cloned().map(Vector::from_poly).collect();
    normal_form(&Vector::from_poly(f.clone()), &basis, ord)
        .into_comps()
        .pop()
        .expect("rank one")
}

/// Reduces every entry of a vector modulo an ideal (given by a standard basis) without
/// introducing units, through the degree of the entry.
pub fn reduce_entries(v: &Vector, ideal_basis: &[Poly], ord: &LocalOrder) -> Vector {
    if ideal_basis.is_empty() {
        return v.clone();
    }
    let basis: Vec<Vector> = ideal_basis.iter().cloned().map(Vector::from_poly).collect();
    v.map_comps(|p| match p.degree() {
        None => p.clone(),
        Some(d) => reduce_plain(&Vector::from_poly(p.clone()), &basis, ord, d, false)
            .into_comps()
            .pop()
            .expect("rank one"),
    })
}

/// Largest term first, position over term.
pub fn sort_vectors(vs: &mut [Vector], ord: &LocalOrder) {
    vs.sort_by(|a, b| match (a.lead(ord), b.lead(ord)) {
        (Some(x), Some(y)) => pot_cmp(ord, (y.comp, &y.mono), (x.comp, &x.mono)),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => std::cmp::Ordering::Equal,
    });
}
