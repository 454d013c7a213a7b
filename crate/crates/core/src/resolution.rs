//! Minimal free resolutions over presented local rings.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fiber::{projections, FiberProductResult, SurjectionSpec};
use crate::local_ring::LocalRing;
use crate::poly::reduce::{mora_normal_form, reduce_entries};
use crate::poly::{relations, Poly, Vector};

/// `R^rank / (relations)`, relations given as vectors of length `rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    pub over: LocalRing,
    pub rank: usize,
    pub relations: Vec<Vector>,
}

/// Minimal free resolution `... -> F_2 -> F_1 -> F_0 -> M`. `differentials[i]` lists the
/// columns of `d_{i+1} : F_{i+1} -> F_i` as vectors of length `rank F_i`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub over: LocalRing,
    pub ranks: Vec<usize>,
    pub differentials: Vec<Vec<Vector>>,
    /// True when the resolution was seen to stop within the requested length.
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub betti: Vec<usize>,
}

/// Coefficients of `t^0 .. t^N` of a Poincaré series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoincareTruncation {
    pub coefficients: Vec<usize>,
}

impl PoincareTruncation {
    pub fn new(coefficients: Vec<usize>) -> PoincareTruncation {
        assert!(!coefficients.is_empty());
        PoincareTruncation { coefficients }
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Product of two truncated series, truncated to the smaller order.
    pub fn mul(&self, other: &PoincareTruncation) -> PoincareTruncation {
        let n = self.order().min(other.order());
        let mut out = vec![0usize; n + 1];
        for (i, a) in self.coefficients.iter().enumerate().take(n + 1) {
            for (j, b) in other.coefficients.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        PoincareTruncation::new(out)
    }
}

impl ModulePresentation {
    /// The residue field `k = R/m`.
    pub fn residue_field(over: &LocalRing) -> ModulePresentation {
        let relations = (0..over.nvars()).map(|i| Vector::from_poly(over.var(i))).collect();
        ModulePresentation {
            over: over.clone(),
            rank: 1,
            relations,
        }
    }

    pub fn free(over: &LocalRing, rank: usize) -> ModulePresentation {
        ModulePresentation {
            over: over.clone(),
            rank,
            relations: Vec::new(),
        }
    }

    /// `R / (gens)`.
    pub fn cyclic(over: &LocalRing, gens: &[Poly]) -> ModulePresentation {
        ModulePresentation {
            over: over.clone(),
            rank: 1,
            relations: gens.iter().cloned().map(Vector::from_poly).collect(),
        }
    }

    /// `R` as a module over its ambient power series ring.
    pub fn over_ambient(ring: &LocalRing) -> ModulePresentation {
        ModulePresentation::cyclic(&ring.ambient(), ring.gens())
    }

    /// Minimal number of generators.
    pub fn mu(&self) -> usize {
        minimize_presentation(self).0
    }

    /// Presentation of the first syzygy `Omega_1` of a minimal presentation.
    pub fn first_syzygy(&self) -> ModulePresentation {
        let (_, rels) = minimize_presentation(self);
        let ideal = self.over.std_basis();
        let syz = if rels.is_empty() {
            Vec::new()
        } else {
            clean(relations(&rels, ideal, self.over.order()), &self.over)
        };
        ModulePresentation {
            over: self.over.clone(),
            rank: rels.len(),
            relations: syz,
        }
    }
}

/// Reduces entries modulo the ring's ideal and drops zero vectors.
fn clean(vs: Vec<Vector>, over: &LocalRing) -> Vec<Vector> {
    let ideal = over.std_basis();
    vs.into_iter()
        .map(|v| reduce_entries(&v, ideal, over.order()))
        .filter(|v| !v.is_zero())
        .collect()
}

/// Position of the first vector with a unit entry, and that entry's index.
fn find_unit_entry(vs: &[Vector]) -> Option<(usize, usize)> {
    vs.iter()
        .enumerate()
        .find_map(|(s, v)| v.comps().iter().position(Poly::is_unit).map(|j| (s, j)))
}

/// Given `sigma` with unit entry `j`, replaces every other vector `tau` by
/// `sigma_j tau - tau_j sigma` (which vanishes in component `j`), drops component `j`
/// everywhere and drops `sigma`.
fn eliminate(vs: Vec<Vector>, s: usize, j: usize) -> Vec<Vector> {
    let sigma = vs[s].clone();
    let u = sigma.comp(j).clone();
    vs.into_iter()
        .enumerate()
        .filter(|(t, _)| *t != s)
        .filter_map(|(_, tau)| {
            let c = tau.comp(j).clone();
            let upd = if c.is_zero() {
                tau.mul_poly(&u)
            } else {
                tau.mul_poly(&u).sub(&sigma.mul_poly(&c))
            };
            (upd.rank() > 1).then(|| upd.remove_comp(j))
        })
        .collect()
}

/// Removes generators of a presentation that appear with a unit coefficient in some
/// relation. Returns the minimal rank and the remaining relations.
fn minimize_presentation(m: &ModulePresentation) -> (usize, Vec<Vector>) {
    let mut rank = m.rank;
    let mut rels = clean(m.relations.clone(), &m.over);
    while let Some((s, j)) = find_unit_entry(&rels) {
        rank -= 1;
        if rank == 0 {
            return (0, Vec::new());
        }
        rels = clean(eliminate(rels, s, j), &m.over);
    }
    (rank, rels)
}

/// Resolution to `steps` homological degrees: `ranks` has `steps + 1` entries.
pub fn minimal_resolution(m: &ModulePresentation, steps: usize) -> FreeResolution {
    let over = &m.over;
    let ideal = over.std_basis();
    let (rank0, mut cur) = minimize_presentation(m);
    let mut ranks = vec![rank0];
    let mut differentials = Vec::new();
    let mut complete = false;
    if rank0 == 0 {
        complete = true;
    }
    for _ in 1..=steps {
        if complete || cur.is_empty() {
            complete = true;
            ranks.push(0);
            continue;
        }
        let mut syz = clean(relations(&cur, ideal, over.order()), over);
        // a syzygy with a unit entry makes that generator redundant
        while let Some((s, j)) = find_unit_entry(&syz) {
            cur.remove(j);
            syz = clean(eliminate(syz, s, j), over);
        }
        ranks.push(cur.len());
        differentials.push(std::mem::replace(&mut cur, syz));
    }
    if cur.is_empty() {
        complete = true;
    }
    FreeResolution {
        over: over.clone(),
        ranks,
        differentials,
        complete,
    }
}

impl FreeResolution {
    pub fn betti(&self) -> BettiTable {
        BettiTable {
            betti: self.ranks.clone(),
        }
    }

    pub fn poincare(&self) -> PoincareTruncation {
        PoincareTruncation::new(self.ranks.clone())
    }

    /// Length of a complete resolution.
    pub fn projective_dimension(&self) -> Option<usize> {
        if !self.complete {
            return None;
        }
        Some(self.ranks.iter().rposition(|&b| b > 0).unwrap_or(0))
    }

    /// `d_i o d_{i+1} = 0` modulo the ring's ideal.
    pub fn differentials_compose_to_zero(&self) -> bool {
        let ideal = self.over.std_basis();
        self.differentials.windows(2).all(|w| {
            let (d_i, d_next) = (&w[0], &w[1]);
            d_next.iter().all(|col| {
                let mut acc = Vector::zero(d_i[0].rank(), self.over.nvars(), self.over.field());
                for (c, v) in col.comps().iter().zip(d_i) {
                    acc = acc.add(&v.mul_poly(c));
                }
                acc.comps().iter().all(|p| {
                    p.is_zero() || (!ideal.is_empty() && mora_normal_form(p, ideal, self.over.order()).is_zero())
                })
            })
        })
    }

    /// Every differential entry lies in the maximal ideal.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().flatten().all(|v| !v.has_unit_entry())
    }
}

/// `beta_i^R(k)` for `i <= n`.
pub fn poincare_residue_field(ring: &LocalRing, n: usize) -> PoincareTruncation {
    minimal_resolution(&ModulePresentation::residue_field(ring), n).poincare()
}

/// Projective dimension of `R` over its ambient power series ring (finite by the
/// syzygy theorem, at most the number of variables).
pub fn ambient_projective_dimension(ring: &LocalRing) -> usize {
    let res = minimal_resolution(&ModulePresentation::over_ambient(ring), ring.nvars() + 1);
    res.projective_dimension()
        .expect("resolutions over a regular ring are finite")
}

/// Both sides of `P_M(t) = mu(M) + t P_{Omega_1}(t)`, each from its own resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygyRecursionReport {
    pub lhs: Vec<usize>,
    pub rhs: Vec<usize>,
    pub holds: bool,
}

pub fn check_syzygy_recursion(m: &ModulePresentation, n: usize) -> SyzygyRecursionReport {
    assert!(n >= 1);
    let lhs = minimal_resolution(m, n).ranks;
    let omega = m.first_syzygy();
    let mut rhs = vec![m.mu()];
    rhs.extend(minimal_resolution(&omega, n - 1).ranks);
    SyzygyRecursionReport {
        holds: lhs == rhs,
        lhs,
        rhs,
    }
}

/// Coefficient-wise `F >= G`.
pub fn check_domination(f: &PoincareTruncation, g: &PoincareTruncation) -> Result<bool> {
    if f.order() != g.order() {
        return Err(Error::TruncationMismatch {
            left: f.order(),
            right: g.order(),
        });
    }
    Ok(f.coefficients.iter().zip(&g.coefficients).all(|(a, b)| a >= b))
}

/// Change of rings along a surjection `R -> R'` for `M = k`. The spectral sequence
/// `Tor^{R'}(k, k) (x) Tor^R(R', k) => Tor^R(k, k)` bounds `P^R_k` from above by the
/// product `P^{R'}_k P^R_{R'}`; the reverse comparison fails already for `k[[x,y]] ->
/// k[[x,y]]/(xy)` and is recorded only for reference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChangeOfRingsReport {
    pub source_series: Vec<usize>,
    pub target_series: Vec<usize>,
    pub target_over_source: Vec<usize>,
    pub product: Vec<usize>,
    /// `P^R_k <= P^{R'}_k P^R_{R'}` coefficient-wise.
    pub holds: bool,
    /// `P^R_k >= P^{R'}_k P^R_{R'}` coefficient-wise.
    pub reverse_holds: bool,
}

pub fn check_change_of_rings(map: &SurjectionSpec, n: usize) -> Result<ChangeOfRingsReport> {
    map.check_well_defined()?;
    if !map.check_surjective()? {
        return Err(Error::NonSurjectiveMap {
            map: map.name.clone(),
            detail: "change of rings needs a surjection".into(),
        });
    }
    let source = poincare_residue_field(&map.source, n);
    let target = poincare_residue_field(&map.target, n);
    let quotient =
        minimal_resolution(&ModulePresentation::cyclic(&map.source, &map.kernel_generators()?), n).poincare();
    let product = target.mul(&quotient);
    Ok(ChangeOfRingsReport {
        holds: check_domination(&product, &source)?,
        reverse_holds: check_domination(&source, &product)?,
        source_series: source.coefficients,
        target_series: target.coefficients,
        target_over_source: quotient.coefficients,
        product: product.coefficients,
    })
}

impl ModulePresentation {
    /// The same module viewed over `map.source` through a quotient-type surjection
    /// `map : P -> R` (relations are lifted and the kernel is added in each component).
    pub fn restrict_scalars(&self, map: &SurjectionSpec) -> Result<ModulePresentation> {
        if map.target != self.over {
            return Err(Error::AmbientMismatch {
                left: map.target.to_string(),
                right: self.over.to_string(),
            });
        }
        let kernel = map.kernel_generators()?;
        let mut rels = Vec::new();
        for v in &self.relations {
            let comps = v.comps().iter().map(|p| map.lift(p)).collect::<Result<Vec<_>>>()?;
            rels.push(Vector::new(comps));
        }
        for j in 0..self.rank {
            for g in &kernel {
                rels.push(Vector::unit_vector(self.rank, j, g.clone()));
            }
        }
        Ok(ModulePresentation {
            over: map.source.clone(),
            rank: self.rank,
            relations: rels,
        })
    }
}

/// The Betti number inequality for a glued point `P = R x_T S` and an `R`-module `M`:
/// `beta_1^P(M) >= beta_0^R(M) beta_1^S(T) + beta_1^R(M)`, and for `M = k` its consequence
/// `edim P >= beta_1^S(T) + edim R`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiInequalityReport {
    pub beta1_fiber: usize,
    pub beta0_r: usize,
    pub beta1_s_of_t: usize,
    pub beta1_r: usize,
    pub holds: bool,
    pub equality: bool,
    pub edim_fiber: usize,
    pub edim_r: usize,
    pub edim_bound_holds: bool,
}

pub fn check_betti_inequality(fp: &FiberProductResult, m: &ModulePresentation) -> Result<BettiInequalityReport> {
    let (proj_r, _) = projections(fp)?;
    let p = proj_r.source.clone();
    let over_p = m.restrict_scalars(&proj_r)?;
    let beta1_fiber = minimal_resolution(&over_p, 1).ranks[1];
    let res_r = minimal_resolution(m, 1);
    let (beta0_r, beta1_r) = (res_r.ranks[0], res_r.ranks[1]);
    let s = &fp.pi_s.source;
    let t_over_s = ModulePresentation::cyclic(s, &fp.pi_s.kernel_generators()?);
    let beta1_s_of_t = minimal_resolution(&t_over_s, 1).ranks[1];
    let rhs = beta0_r * beta1_s_of_t + beta1_r;
    let edim_fiber = p.edim();
    let edim_r = fp.pi_r.source.edim();
    Ok(BettiInequalityReport {
        beta1_fiber,
        beta0_r,
        beta1_s_of_t,
        beta1_r,
        holds: beta1_fiber >= rhs,
        equality: beta1_fiber == rhs,
        edim_fiber,
        edim_r,
        edim_bound_holds: edim_fiber >= beta1_s_of_t + edim_r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn q() -> Field {
        Field::Rationals
    }

    fn node() -> LocalRing {
        LocalRing::parse(&["x", "y"], &["x*y"], q()).unwrap()
    }

    #[test]
    fn koszul_complex() {
        let a = LocalRing::power_series(&["x", "y"], q());
        let res = minimal_resolution(&ModulePresentation::residue_field(&a), 4);
        assert_eq!(res.ranks, vec![1, 2, 1, 0, 0]);
        assert!(res.complete);
        assert!(res.differentials_compose_to_zero() && res.is_minimal());
    }

    #[test]
    fn ambient_resolutions() {
        let r = minimal_resolution(&ModulePresentation::over_ambient(&node()), 3);
        assert_eq!(r.ranks, vec![1, 1, 0, 0]);
        let r2 = LocalRing::parse(&["x", "y"], &["x^2", "x*y"], q()).unwrap();
        let res = minimal_resolution(&ModulePresentation::over_ambient(&r2), 3);
        assert_eq!(res.ranks, vec![1, 2, 1, 0]);
        assert_eq!(res.projective_dimension(), Some(2));
    }

    #[test]
    fn depths() {
        assert_eq!(LocalRing::power_series(&["x", "y"], q()).depth(), 2);
        assert_eq!(node().depth(), 1);
        assert_eq!(LocalRing::parse(&["x", "y"], &["x^2", "x*y"], q()).unwrap().depth(), 0);
    }

    #[test]
    fn poincare_series() {
        let x = LocalRing::power_series(&["x"], q());
        assert_eq!(poincare_residue_field(&x, 3).coefficients, vec![1, 1, 0, 0]);
        assert_eq!(poincare_residue_field(&node(), 5).coefficients, vec![1, 2, 2, 2, 2, 2]);
        let xy = LocalRing::power_series(&["x", "y"], q());
        assert_eq!(poincare_residue_field(&xy, 4).coefficients, vec![1, 2, 1, 0, 0]);
    }

    #[test]
    fn change_of_rings_bound() {
        let a = LocalRing::power_series(&["x", "y"], q());
        let pi = SurjectionSpec::quotient_map("pi", &a, &node()).unwrap();
        let r = check_change_of_rings(&pi, 3).unwrap();
        assert_eq!(r.source_series, vec![1, 2, 1, 0]);
        assert_eq!(r.target_series, vec![1, 2, 2, 2]);
        assert_eq!(r.target_over_source, vec![1, 1, 0, 0]);
        assert_eq!(r.product, vec![1, 3, 4, 4]);
        assert!(r.holds);
        assert!(!r.reverse_holds);
        // onto k both sides are P^R_k
        let r = check_change_of_rings(&SurjectionSpec::residue_map("e", &node()), 3).unwrap();
        assert_eq!(r.product, vec![1, 2, 2, 2]);
        assert!(r.holds && r.reverse_holds);
    }

    #[test]
    fn redundant_variable_generator() {
        // x = -y^2 in k[[x,y]]/(x + y^2), so k needs one generator of m
        let r = LocalRing::parse(&["x", "y"], &["x + y^2"], q()).unwrap();
        assert_eq!(poincare_residue_field(&r, 3).coefficients, vec![1, 1, 0, 0]);
    }

    #[test]
    fn syzygy_recursion() {
        let rep = check_syzygy_recursion(&ModulePresentation::residue_field(&node()), 5);
        assert!(rep.holds, "{rep:?}");
        assert_eq!(rep.lhs, vec![1, 2, 2, 2, 2, 2]);
        let free = ModulePresentation::free(&node(), 3);
        let rep = check_syzygy_recursion(&free, 3);
        assert_eq!(rep.lhs, vec![3, 0, 0, 0]);
        assert!(rep.holds);
    }

    #[test]
    fn betti_inequality_for_the_node() {
        let x = LocalRing::power_series(&["x"], q());
        let y = LocalRing::power_series(&["y"], q());
        let fp = crate::fiber::fiber_over_k(&x, &y).unwrap();
        let rep = check_betti_inequality(&fp, &ModulePresentation::residue_field(&x)).unwrap();
        assert_eq!(
            (rep.beta1_fiber, rep.beta0_r, rep.beta1_s_of_t, rep.beta1_r),
            (2, 1, 1, 1)
        );
        assert!(rep.holds && rep.equality && rep.edim_bound_holds);
        assert_eq!((rep.edim_fiber, rep.edim_r), (2, 1));
        let free = check_betti_inequality(&fp, &ModulePresentation::free(&x, 3)).unwrap();
        assert_eq!(
            (free.beta1_fiber, free.beta0_r, free.beta1_s_of_t, free.beta1_r),
            (3, 3, 1, 0)
        );
        assert!(free.holds);
    }

    #[test]
    fn domination() {
        let p = |v: &[usize]| PoincareTruncation::new(v.to_vec());
        assert!(check_domination(&p(&[1, 2, 2]), &p(&[1, 1, 0])).unwrap());
        assert!(!check_domination(&p(&[1, 1]), &p(&[1, 2])).unwrap());
        assert!(matches!(
            check_domination(&p(&[1, 1]), &p(&[1, 2, 3])),
            Err(Error::TruncationMismatch { left: 1, right: 2 })
        ));
    }
}

#[cfg(test)]
mod three_axes {
    use super::*;
    use crate::field::Field;

    #[test]
    fn poincare_series_of_three_axes() {
        let r = LocalRing::parse(&["x", "y", "z"], &["x*y", "x*z", "y*z"], Field::Rationals).unwrap();
        let res = minimal_resolution(&ModulePresentation::residue_field(&r), 5);
        assert_eq!(res.ranks, vec![1, 3, 6, 12, 24, 48]);
        assert!(res.differentials_compose_to_zero() && res.is_minimal());
    }
}
