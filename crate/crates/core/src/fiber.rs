//! Ring surjections and fiber products `R x_T S` of presented local rings.

use serde::Serialize;

use crate::algebra::{Coords, FiniteAlgebra, LinearMap, Subalgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::local_ring::{one_minus_t_pow, poly_mul_i64, ArtinianTruncation, LocalRing};
use crate::poly::{relations, Poly, Vector};

/// Message attached to refused non-surjective maps.
pub const NON_NOETHERIAN_NOTE: &str = "a fiber product along a non-surjective map need not be Noetherian: \
gluing Spf k[[x,y]] and Spf k along Spf k[[x,y]]/(x) would need the ring k[[x, xy, xy^2, xy^3, ...]]";

/// A local homomorphism `source -> target` given by the images of the source variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectionSpec {
    pub name: String,
    pub source: LocalRing,
    pub target: LocalRing,
    pub images: Vec<Poly>,
}

impl SurjectionSpec {
    pub fn new(name: &str, source: &LocalRing, target: &LocalRing, images: Vec<Poly>) -> Result<SurjectionSpec> {
        if images.len() != source.nvars() {
            return Err(Error::ImageCountMismatch {
                map: name.to_string(),
                expected: source.nvars(),
                found: images.len(),
            });
        }
        for img in &images {
            if img.nvars() != target.nvars() || img.field() != target.field() {
                return Err(Error::AmbientMismatch {
                    left: format!("{} variables over {}", target.nvars(), target.field()),
                    right: format!("{} variables over {}", img.nvars(), img.field()),
                });
            }
            if img.is_unit() {
                return Err(Error::NonLocalMap {
                    map: name.to_string(),
                    image: target.format(img),
                });
            }
        }
        Ok(SurjectionSpec {
            name: name.to_string(),
            source: source.clone(),
            target: target.clone(),
            images,
        })
    }

    /// Parses images in the target's variables.
    pub fn parse(name: &str, source: &LocalRing, target: &LocalRing, images: &[&str]) -> Result<SurjectionSpec> {
        let polys = images
            .iter()
            .map(|s| target.parse_element(s))
            .collect::<Result<Vec<_>>>()?;
        SurjectionSpec::new(name, source, target, polys)
    }

    /// The map to the residue field.
    pub fn residue_map(name: &str, source: &LocalRing) -> SurjectionSpec {
        let k = LocalRing::residue_field(source.field());
        let images = vec![k.zero(); source.nvars()];
        SurjectionSpec::new(name, source, &k, images).expect("valid")
    }

    /// Identity on variables between two presentations in the same variables.
    pub fn quotient_map(name: &str, source: &LocalRing, target: &LocalRing) -> Result<SurjectionSpec> {
        if source.vars() != target.vars() {
            return Err(Error::AmbientMismatch {
                left: source.to_string(),
                right: target.to_string(),
            });
        }
        let images = (0..source.nvars()).map(|i| target.var(i)).collect();
        SurjectionSpec::new(name, source, target, images)
    }

    /// Image of a source element.
    pub fn apply(&self, f: &Poly) -> Poly {
        f.compose(&self.images, self.target.nvars(), self.target.field())
    }

    /// `self o first`.
    pub fn compose(&self, first: &SurjectionSpec) -> SurjectionSpec {
        SurjectionSpec {
            name: format!("{}.{}", self.name, first.name),
            source: first.source.clone(),
            target: self.target.clone(),
            images: first.images.iter().map(|p| self.apply(p)).collect(),
        }
    }

    /// Each source generator maps into the target ideal.
    pub fn check_well_defined(&self) -> Result<()> {
        for g in self.source.gens() {
            let img = self.apply(g);
            if !self.target.contains(&img) {
                return Err(Error::IllDefinedMap {
                    map: self.name.clone(),
                    generator: self.source.format(g),
                });
            }
        }
        Ok(())
    }

    /// A local map of complete local rings is onto exactly when it is onto on cotangent
    /// spaces: the linear parts of the images span `m_T / (m_T^2 + I_T)`.
    pub fn check_surjective(&self) -> Result<bool> {
        self.check_well_defined()?;
        let n = self.target.nvars();
        let mut rows: Vec<_> = self.images.iter().map(Poly::linear_part).collect();
        rows.extend(self.target.gens().iter().map(Poly::linear_part));
        Ok(Matrix::from_rows(self.target.field(), n, rows).rank() == n)
    }

    /// Surjective with equal Hilbert-Samuel functions on both sides.
    pub fn is_isomorphism(&self) -> Result<bool> {
        if !self.check_surjective()? {
            return Ok(false);
        }
        let (ns, nt) = (self.source.nvars(), self.target.nvars());
        let lhs = poly_mul_i64(&self.source.hilbert_numerator(), &one_minus_t_pow(nt));
        let rhs = poly_mul_i64(&self.target.hilbert_numerator(), &one_minus_t_pow(ns));
        Ok(lhs == rhs)
    }

    /// For each target variable, the source variable mapping onto it, when the map sends
    /// every variable to zero or to a distinct target variable and hits them all.
    fn variable_section(&self) -> Option<Vec<usize>> {
        let nt = self.target.nvars();
        let mut section = vec![None; nt];
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let t = (0..nt).find(|&t| *img == self.target.var(t))?;
            if section[t].is_some() {
                return None;
            }
            section[t] = Some(i);
        }
        section.into_iter().collect()
    }

    /// Generators of the kernel, for maps to the residue field and quotient-type maps
    /// (variables sent to zero or to distinct target variables).
    pub fn kernel_generators(&self) -> Result<Vec<Poly>> {
        if self.target.is_field() {
            return Ok((0..self.source.nvars()).map(|i| self.source.var(i)).collect());
        }
        let Some(section) = self.variable_section() else {
            return Err(Error::UnsupportedKernel(self.name.clone()));
        };
        let mut out: Vec<Poly> = (0..self.source.nvars())
            .filter(|&i| self.images[i].is_zero())
            .map(|i| self.source.var(i))
            .collect();
        for g in self.target.gens() {
            out.push(g.embed(&section, self.source.nvars()));
        }
        Ok(out)
    }

    /// Lifts a target element along a quotient-type map.
    pub fn lift(&self, f: &Poly) -> Result<Poly> {
        if self.target.nvars() == 0 {
            return Ok(Poly::constant(
                self.source.nvars(),
                self.source.field(),
                f.constant_term(),
            ));
        }
        let section = self
            .variable_section()
            .ok_or_else(|| Error::UnsupportedKernel(self.name.clone()))?;
        Ok(f.embed(&section, self.source.nvars()))
    }
}

/// How a fiber product was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    /// `T = k`: `k[[x,y]] / (I + J + (x_i y_j))`.
    OverResidueField,
    /// `R = A/I`, `S = A/J`, `T = A/(I+J)`: `A / (I cap J)`.
    SameAmbient,
    /// Only the truncation tower of pairs agreeing in `T`.
    PairSubalgebra,
}

impl Construction {
    pub fn as_str(&self) -> &'static str {
        match self {
            Construction::OverResidueField => "over-residue-field",
            Construction::SameAmbient => "same-ambient",
            Construction::PairSubalgebra => "pair-subalgebra",
        }
    }
}

/// Exact value or lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bound {
    Exact(usize),
    AtLeast(usize),
}

impl Bound {
    pub fn value(&self) -> usize {
        match self {
            Bound::Exact(v) | Bound::AtLeast(v) => *v,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Bound::Exact(v) => v.to_string(),
            Bound::AtLeast(v) => format!(">={v}"),
        }
    }
}

/// Invariants of `R x_T S` predicted from the factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FiberInvariants {
    pub dim: usize,
    pub depth: Bound,
}

/// A fiber product `R x_T S` of two surjections onto `T`.
#[derive(Clone, Debug)]
pub struct FiberProductResult {
    pub pi_r: SurjectionSpec,
    pub pi_s: SurjectionSpec,
    pub construction: Construction,
    pub presentation: Option<LocalRing>,
    /// Images of the presentation's variables in `R` and in `S`.
    pub proj_r: Vec<Poly>,
    pub proj_s: Vec<Poly>,
    pub invariants: FiberInvariants,
}

fn rename_clashes(left: &[String], right: &[String]) -> Vec<String> {
    let mut taken: Vec<String> = left.to_vec();
    right
        .iter()
        .map(|v| {
            let mut name = v.clone();
            while taken.contains(&name) {
                name.push_str("_2");
            }
            taken.push(name.clone());
            name
        })
        .collect()
}

/// Both maps must be surjective and share their target.
fn check_pair(pi_r: &SurjectionSpec, pi_s: &SurjectionSpec) -> Result<()> {
    if pi_r.target != pi_s.target {
        return Err(Error::AmbientMismatch {
            left: pi_r.target.to_string(),
            right: pi_s.target.to_string(),
        });
    }
    for m in [pi_r, pi_s] {
        if !m.check_surjective()? {
            return Err(Error::NonSurjectiveMap {
                map: m.name.clone(),
                detail: NON_NOETHERIAN_NOTE.to_string(),
            });
        }
    }
    Ok(())
}

/// `dim = max(dim R, dim S)`; `depth >= min(depth R, depth S, depth T + 1)`, with
/// `depth = min(depth R, depth S, 1)` exactly when `T = k`.
pub fn fiber_invariants(pi_r: &SurjectionSpec, pi_s: &SurjectionSpec) -> Result<FiberInvariants> {
    check_pair(pi_r, pi_s)?;
    Ok(invariants_unchecked(&pi_r.source, &pi_s.source, &pi_r.target))
}

fn invariants_unchecked(r: &LocalRing, s: &LocalRing, t: &LocalRing) -> FiberInvariants {
    let dim = r.krull_dim().max(s.krull_dim());
    let depth = if t.is_field() {
        Bound::Exact(r.depth().min(s.depth()).min(1))
    } else {
        Bound::AtLeast(r.depth().min(s.depth()).min(t.depth() + 1))
    };
    FiberInvariants { dim, depth }
}

/// `R x_k S = k[[x, y]] / (I + J + (x_i y_j))`. Clashing variable names of `S` get a `_2`
/// suffix.
pub fn fiber_over_k(r: &LocalRing, s: &LocalRing) -> Result<FiberProductResult> {
    for ring in [r, s] {
        if ring.is_field() {
            return Err(Error::TrivialFactor(ring.to_string()));
        }
    }
    if r.field() != s.field() {
        return Err(Error::AmbientMismatch {
            left: r.to_string(),
            right: s.to_string(),
        });
    }
    let field = r.field();
    let (n, m) = (r.nvars(), s.nvars());
    let mut vars = r.vars().to_vec();
    vars.extend(rename_clashes(r.vars(), s.vars()));
    let left: Vec<usize> = (0..n).collect();
    let right: Vec<usize> = (n..n + m).collect();
    let mut gens: Vec<Poly> = r.gens().iter().map(|g| g.embed(&left, n + m)).collect();
    gens.extend(s.gens().iter().map(|g| g.embed(&right, n + m)));
    for i in 0..n {
        for j in 0..m {
            gens.push(&Poly::var(n + m, field, i) * &Poly::var(n + m, field, n + j));
        }
    }
    let p = LocalRing::present(vars, gens, field)?;
    let proj_r = (0..n + m).map(|v| if v < n { r.var(v) } else { r.zero() }).collect();
    let proj_s = (0..n + m)
        .map(|v| if v < n { s.zero() } else { s.var(v - n) })
        .collect();
    let pi_r = SurjectionSpec::residue_map("r", r);
    let pi_s = SurjectionSpec::residue_map("s", s);
    let t = pi_r.target.clone();
    Ok(FiberProductResult {
        invariants: invariants_unchecked(r, s, &t),
        pi_r,
        pi_s,
        construction: Construction::OverResidueField,
        presentation: Some(p),
        proj_r,
        proj_s,
    })
}

/// Generators of `(I) cap (J)` in the ambient ring, from the relations among the
/// generators of both ideals.
pub fn intersect_ideals(ambient: &LocalRing, i: &[Poly], j: &[Poly]) -> Vec<Poly> {
    let mut gens: Vec<Vector> = i.iter().cloned().map(Vector::from_poly).collect();
    gens.extend(j.iter().cloned().map(Vector::from_poly));
    let rels = relations(&gens, &[], ambient.order());
    let mut out: Vec<Poly> = rels
        .iter()
        .map(|rel| {
            i.iter()
                .zip(rel.comps())
                .fold(ambient.zero(), |acc, (g, a)| &acc + &(g * a))
        })
        .filter(|p| !p.is_zero())
        .collect();
    if out.is_empty() {
        return out;
    }
    out = crate::poly::std_basis(&out, ambient.order()).expect("ideal inside m");
    out
}

/// `A/I x_{A/(I+J)} A/J = A/(I cap J)`, where `A` is `ambient` (possibly itself a
/// quotient, whose ideal is added to both).
pub fn fiber_same_ambient(ambient: &LocalRing, i: &[Poly], j: &[Poly]) -> Result<FiberProductResult> {
    for (ideal, label) in [(i, "I"), (j, "J")] {
        if ideal.iter().all(Poly::is_zero) {
            return Err(Error::ZeroIdeal(label.to_string()));
        }
    }
    let base = ambient.gens().to_vec();
    let with = |extra: &[Poly]| -> Vec<Poly> { base.iter().chain(extra).cloned().collect() };
    let r = ambient.with_gens(with(i))?;
    let s = ambient.with_gens(with(j))?;
    let both: Vec<Poly> = i.iter().chain(j).cloned().collect();
    let t = ambient.with_gens(with(&both))?;
    let cap = intersect_ideals(&ambient.ambient(), r.gens(), s.gens());
    let p = ambient.with_gens(cap)?;
    let pi_r = SurjectionSpec::quotient_map("r", &r, &t)?;
    let pi_s = SurjectionSpec::quotient_map("s", &s, &t)?;
    let proj_r = (0..p.nvars()).map(|v| r.var(v)).collect();
    let proj_s = (0..p.nvars()).map(|v| s.var(v)).collect();
    Ok(FiberProductResult {
        invariants: invariants_unchecked(&r, &s, &t),
        pi_r,
        pi_s,
        construction: Construction::SameAmbient,
        presentation: Some(p),
        proj_r,
        proj_s,
    })
}

fn is_identity_on_variables(m: &SurjectionSpec) -> bool {
    m.source.vars() == m.target.vars() && (0..m.source.nvars()).all(|i| m.images[i] == m.target.var(i))
}

fn same_ideal(a: &LocalRing, b: &LocalRing) -> bool {
    a.vars() == b.vars() && a.std_basis() == b.std_basis()
}

/// Fiber product of two surjections onto a common target. A presentation is produced
/// when both factors are quotients of one ambient with `T = A/(I+J)`, or when `T = k`;
/// otherwise only the truncation tower is available.
pub fn fiber_product(pi_r: &SurjectionSpec, pi_s: &SurjectionSpec) -> Result<FiberProductResult> {
    check_pair(pi_r, pi_s)?;
    let (r, s, t) = (&pi_r.source, &pi_s.source, &pi_r.target);
    if is_identity_on_variables(pi_r) && is_identity_on_variables(pi_s) && r.vars() == s.vars() {
        let sum: Vec<Poly> = r.gens().iter().chain(s.gens()).cloned().collect();
        let expected = t.with_gens(sum)?;
        if same_ideal(&expected, t) && !r.gens().is_empty() && !s.gens().is_empty() {
            let mut res = fiber_same_ambient(&r.ambient(), r.gens(), s.gens())?;
            res.pi_r = pi_r.clone();
            res.pi_s = pi_s.clone();
            return Ok(res);
        }
    }
    if t.is_field() {
        let mut res = fiber_over_k(r, s)?;
        res.pi_r = pi_r.clone();
        res.pi_s = pi_s.clone();
        return Ok(res);
    }
    Ok(FiberProductResult {
        invariants: invariants_unchecked(r, s, t),
        pi_r: pi_r.clone(),
        pi_s: pi_s.clone(),
        construction: Construction::PairSubalgebra,
        presentation: None,
        proj_r: Vec::new(),
        proj_s: Vec::new(),
    })
}

/// `A_N x_{C_N} B_N` for the truncations at level `N`, as a subalgebra of `A_N x B_N`.
pub struct TruncatedFiber {
    pub level: u32,
    pub a: ArtinianTruncation,
    pub b: ArtinianTruncation,
    pub c: ArtinianTruncation,
    pub map_a: LinearMap,
    pub map_b: LinearMap,
    pub product: FiniteAlgebra,
    pub pairs: Subalgebra,
}

impl TruncatedFiber {
    pub fn new(pi_r: &SurjectionSpec, pi_s: &SurjectionSpec, level: u32) -> TruncatedFiber {
        let a = pi_r.source.truncate(level);
        let b = pi_s.source.truncate(level);
        let c = pi_r.target.truncate(level);
        let map_a = a.induced_map(&pi_r.images, &c);
        let map_b = b.induced_map(&pi_s.images, &c);
        let product = FiniteAlgebra::direct_product(&a.algebra, &b.algebra);
        // (u, v) with map_a(u) - map_b(v) = 0
        let field = a.algebra.field;
        let mut rows: Vec<Coords> = vec![Vec::new(); c.dim()];
        for col in &map_a.columns {
            for (r, x) in rows.iter_mut().zip(col) {
                r.push(x.clone());
            }
        }
        for col in &map_b.columns {
            for (r, x) in rows.iter_mut().zip(col) {
                r.push(-x);
            }
        }
        let span = Matrix::from_rows(field, a.dim() + b.dim(), rows).nullspace();
        let pairs = product
            .subalgebra(&span)
            .expect("pairs agreeing in T form a subalgebra");
        TruncatedFiber {
            level,
            a,
            b,
            c,
            map_a,
            map_b,
            product,
            pairs,
        }
    }

    pub fn dim(&self) -> usize {
        self.pairs.algebra.dim()
    }

    /// Coordinates in the pair subalgebra of `(f, g)`, `f` in `R` and `g` in `S`.
    pub fn pair_coords(&self, f: &Poly, g: &Poly) -> Option<Coords> {
        let mut v = self.a.coords(f);
        v.extend(self.b.coords(g));
        self.pairs.coords(&v)
    }

    /// The two composites `Q -> A -> C` and `Q -> B -> C` agree on a basis of `Q`.
    pub fn square_commutes(&self) -> bool {
        let da = self.a.dim();
        self.pairs
            .basis
            .iter()
            .all(|v| self.map_a.apply(&v[..da]) == self.map_b.apply(&v[da..]))
    }

    /// `dim Q = dim A + dim B - dim C`: the sequence `0 -> Q -> A + B -> C -> 0` is exact.
    pub fn is_exact(&self) -> bool {
        self.dim() + self.c.dim() == self.a.dim() + self.b.dim()
    }

    /// With `a = m_A`, `b = m_B`, `c = m_C` and `a' = m_A^n` and so on, checks that
    /// `(a x_c b)^(2n)` lies in `a' x_c' b'`.
    pub fn definition_ideal_powers(&self, n: u32) -> bool {
        let q = &self.pairs.algebra;
        let m = q.maximal_ideal();
        let power = q.ideal_power(&m, 2 * n);
        let da = self.a.dim();
        power.rows.iter().all(|row| {
            let v = self.pairs.embed(row);
            let mut low_a = self.a.basis.iter().enumerate().filter(|(_, mo)| mo.degree() < n);
            let mut low_b = self.b.basis.iter().enumerate().filter(|(_, mo)| mo.degree() < n);
            low_a.all(|(i, _)| v[i].is_zero()) && low_b.all(|(i, _)| v[da + i].is_zero())
        })
    }
}

/// One level of the completion comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelCheck {
    pub n: u32,
    /// Truncation level of the factors used to build the fiber of truncations.
    pub factor_level: u32,
    pub truncation_dim: usize,
    pub fiber_of_truncations_dim: usize,
    pub isomorphic: bool,
    pub square_commutes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberCompleteReport {
    pub levels: Vec<LevelCheck>,
    pub holds: bool,
}

/// Extra factor levels tried when comparing a same-ambient fiber product level-wise.
const MAX_LEVEL_SLACK: u32 = 8;

/// Compares `P / m^n` with `Q_N / m_Q^n`, `Q_N` the fiber product of the level-`N`
/// truncations, through the map sending each variable of `P` to its pair of projections.
/// Over `k` the levels match with `N = n`; otherwise `N` grows from `n` until the
/// dimensions agree.
pub fn verify_fibercomplete(fp: &FiberProductResult, n_max: u32) -> Result<FiberCompleteReport> {
    check_pair(&fp.pi_r, &fp.pi_s)?;
    let p = fp
        .presentation
        .as_ref()
        .ok_or_else(|| Error::NoPresentation(format!("{} x {}", fp.pi_r.source, fp.pi_s.source)))?;
    let exact_levels = fp.pi_r.target.is_field();
    let mut levels = Vec::new();
    for n in 1..=n_max {
        let trunc = p.truncate(n);
        let max_level = if exact_levels { n } else { n + MAX_LEVEL_SLACK };
        let mut last = None;
        for big in n..=max_level {
            let check = compare_level(fp, p, &trunc, n, big);
            let done = check.truncation_dim == check.fiber_of_truncations_dim;
            last = Some(check);
            if done {
                break;
            }
        }
        levels.push(last.expect("at least one level"));
    }
    let holds = levels.iter().all(|l| l.isomorphic && l.square_commutes);
    Ok(FiberCompleteReport { levels, holds })
}

fn compare_level(fp: &FiberProductResult, p: &LocalRing, trunc: &ArtinianTruncation, n: u32, big: u32) -> LevelCheck {
    let tf = TruncatedFiber::new(&fp.pi_r, &fp.pi_s, big);
    let q = &tf.pairs.algebra;
    let quot = q.quotient(&q.ideal_power(&q.maximal_ideal(), n));
    let qa = &quot.algebra;
    let var_images: Option<Vec<Coords>> = (0..p.nvars())
        .map(|v| tf.pair_coords(&fp.proj_r[v], &fp.proj_s[v]).map(|c| quot.project(&c)))
        .collect();
    let mut check = LevelCheck {
        n,
        factor_level: big,
        truncation_dim: trunc.dim(),
        fiber_of_truncations_dim: qa.dim(),
        isomorphic: false,
        square_commutes: tf.square_commutes(),
    };
    let Some(var_images) = var_images else {
        return check;
    };
    if trunc.dim() != qa.dim() {
        return check;
    }
    let columns: Vec<Coords> = trunc
        .basis
        .iter()
        .map(|mono| {
            let mut acc = qa.one.clone();
            for (v, &e) in mono.exponents().iter().enumerate() {
                for _ in 0..e {
                    acc = qa.mul(&acc, &var_images[v]);
                }
            }
            acc
        })
        .collect();
    let phi = LinearMap {
        field: qa.field,
        target_dim: qa.dim(),
        columns,
    };
    check.isomorphic = trunc.algebra.is_isomorphism(&phi, qa);
    check
}

/// `pi_r o proj_r = pi_s o proj_s` on every variable of the presentation, modulo
/// `I_T + m^n`.
pub fn square_commutes(fp: &FiberProductResult, n: u32) -> Result<bool> {
    let p = fp
        .presentation
        .as_ref()
        .ok_or_else(|| Error::NoPresentation(format!("{} x {}", fp.pi_r.source, fp.pi_s.source)))?;
    let t = fp.pi_r.target.truncate(n);
    Ok((0..p.nvars()).all(|v| {
        let a = fp.pi_r.apply(&fp.proj_r[v]);
        let b = fp.pi_s.apply(&fp.proj_s[v]);
        t.coords(&a) == t.coords(&b)
    }))
}

/// Projections of a presented fiber product onto its factors.
pub fn projections(fp: &FiberProductResult) -> Result<(SurjectionSpec, SurjectionSpec)> {
    let p = fp
        .presentation
        .as_ref()
        .ok_or_else(|| Error::NoPresentation(format!("{} x {}", fp.pi_r.source, fp.pi_s.source)))?;
    Ok((
        SurjectionSpec::new("proj_r", p, &fp.pi_r.source, fp.proj_r.clone())?,
        SurjectionSpec::new("proj_s", p, &fp.pi_s.source, fp.proj_s.clone())?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn q() -> Field {
        Field::Rationals
    }

    fn ring(vars: &[&str], gens: &[&str]) -> LocalRing {
        LocalRing::parse(vars, gens, q()).unwrap()
    }

    fn sb_strings(r: &LocalRing) -> Vec<String> {
        r.std_basis().iter().map(|g| r.format(g)).collect()
    }

    #[test]
    fn surjectivity() {
        let a = ring(&["x", "y"], &[]);
        let ax = ring(&["x", "y"], &["x"]);
        assert!(SurjectionSpec::quotient_map("q", &a, &ax)
            .unwrap()
            .check_surjective()
            .unwrap());
        let k = LocalRing::residue_field(q());
        let inc = SurjectionSpec::new("i", &k, &ax, vec![]).unwrap();
        assert!(!inc.check_surjective().unwrap());
        let t3 = ring(&["t"], &["t^3"]);
        let f = SurjectionSpec::parse("f", &ring(&["x"], &[]), &t3, &["t + t^2"]).unwrap();
        assert!(f.check_surjective().unwrap());
    }

    #[test]
    fn ill_defined_map() {
        let src = ring(&["x"], &["x^2"]);
        let tgt = ring(&["t"], &["t^3"]);
        let f = SurjectionSpec::parse("f", &src, &tgt, &["t"]).unwrap();
        assert!(matches!(f.check_surjective(), Err(Error::IllDefinedMap { .. })));
    }

    #[test]
    fn isomorphism_detection() {
        let a = ring(&["x", "y"], &["x*y"]);
        let f = SurjectionSpec::quotient_map("f", &a, &a).unwrap();
        assert!(f.is_isomorphism().unwrap());
        let g = SurjectionSpec::quotient_map("g", &a, &ring(&["x", "y"], &["x*y", "x^2"])).unwrap();
        assert!(!g.is_isomorphism().unwrap());
        let line = SurjectionSpec::parse("l", &ring(&["x"], &[]), &ring(&["t"], &[]), &["t + t^2"]).unwrap();
        assert!(line.is_isomorphism().unwrap());
    }

    #[test]
    fn over_k_presentations() {
        let fp = fiber_over_k(&ring(&["x"], &[]), &ring(&["y"], &[])).unwrap();
        assert_eq!(sb_strings(fp.presentation.as_ref().unwrap()), vec!["x*y"]);
        let fp = fiber_over_k(&ring(&["x"], &["x^2"]), &ring(&["y"], &["y^2"])).unwrap();
        assert_eq!(sb_strings(fp.presentation.as_ref().unwrap()), vec!["x^2", "x*y", "y^2"]);
        let fp = fiber_over_k(&ring(&["x", "y"], &["x*y"]), &ring(&["z"], &[])).unwrap();
        assert_eq!(sb_strings(fp.presentation.as_ref().unwrap()), vec!["x*y", "x*z", "y*z"]);
        assert!(matches!(
            fiber_over_k(&LocalRing::residue_field(q()), &ring(&["y"], &[])),
            Err(Error::TrivialFactor(_))
        ));
    }

    #[test]
    fn clashing_names_are_renamed() {
        let fp = fiber_over_k(&ring(&["x"], &[]), &ring(&["x"], &[])).unwrap();
        assert_eq!(fp.presentation.unwrap().vars(), &["x".to_string(), "x_2".to_string()]);
    }

    #[test]
    fn same_ambient_intersections() {
        let a = ring(&["x", "y"], &[]);
        let p = |i: &str, j: &str| {
            let fp = fiber_same_ambient(&a, &[a.parse_element(i).unwrap()], &[a.parse_element(j).unwrap()]).unwrap();
            sb_strings(fp.presentation.as_ref().unwrap())
        };
        assert_eq!(p("x", "y"), vec!["x*y"]);
        assert_eq!(p("x^2", "x^3"), vec!["x^3"]);
        assert_eq!(p("x", "x + y^2"), vec!["x^2 + x*y^2"]);
        assert!(matches!(
            fiber_same_ambient(&a, &[], &[a.var(0)]),
            Err(Error::ZeroIdeal(_))
        ));
    }

    #[test]
    fn invariant_formulas() {
        let x = ring(&["x"], &[]);
        let yz = ring(&["y", "z"], &[]);
        let inv = fiber_invariants(
            &SurjectionSpec::residue_map("a", &x),
            &SurjectionSpec::residue_map("b", &yz),
        )
        .unwrap();
        assert_eq!(
            inv,
            FiberInvariants {
                dim: 2,
                depth: Bound::Exact(1)
            }
        );
        let t = ring(&["x"], &["x^2"]);
        let qm = SurjectionSpec::quotient_map("q", &x, &t).unwrap();
        let inv = fiber_invariants(&qm, &qm).unwrap();
        assert_eq!(
            inv,
            FiberInvariants {
                dim: 1,
                depth: Bound::AtLeast(1)
            }
        );
    }

    #[test]
    fn levelwise_completion() {
        let fp = fiber_over_k(&ring(&["x"], &[]), &ring(&["y"], &[])).unwrap();
        let rep = verify_fibercomplete(&fp, 4).unwrap();
        assert!(rep.holds, "{rep:?}");
        let dims: Vec<_> = rep
            .levels
            .iter()
            .map(|l| (l.truncation_dim, l.fiber_of_truncations_dim))
            .collect();
        assert_eq!(dims, vec![(1, 1), (3, 3), (5, 5), (7, 7)]);
    }

    #[test]
    fn levelwise_completion_same_ambient() {
        let a = ring(&["x", "y"], &[]);
        let fp = fiber_same_ambient(&a, &[a.var(0)], &[&a.var(0) + &a.var(1).pow(2)]).unwrap();
        let rep = verify_fibercomplete(&fp, 4).unwrap();
        assert!(rep.holds, "{rep:?}");
    }

    #[test]
    fn general_fiber_has_exact_tower() {
        let x = ring(&["x"], &[]);
        let t = ring(&["x"], &["x^2"]);
        let qm = SurjectionSpec::quotient_map("q", &x, &t).unwrap();
        let fp = fiber_product(&qm, &qm).unwrap();
        assert_eq!(fp.construction, Construction::PairSubalgebra);
        for n in 1..=4 {
            let tf = TruncatedFiber::new(&qm, &qm, n);
            assert!(tf.is_exact() && tf.square_commutes());
            assert!(tf.definition_ideal_powers(1));
        }
    }

    #[test]
    fn kernels() {
        let node = ring(&["x", "y"], &["x*y"]);
        let x = ring(&["x"], &[]);
        let proj = SurjectionSpec::parse("p", &node, &x, &["x", "0"]).unwrap();
        let k = proj.kernel_generators().unwrap();
        assert_eq!(k, vec![node.var(1)]);
        let odd = SurjectionSpec::parse("o", &x, &ring(&["t"], &["t^3"]), &["t + t^2"]).unwrap();
        assert!(matches!(odd.kernel_generators(), Err(Error::UnsupportedKernel(_))));
    }
}
