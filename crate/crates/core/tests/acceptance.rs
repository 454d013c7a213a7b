//! Acceptance criteria, one PASS/FAIL line each. Runs without the test harness so the
//! lines always show; exits nonzero when a criterion fails.

use std::path::PathBuf;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use formalglue::fiber::{
    fiber_over_k, intersect_ideals, verify_fibercomplete, FiberProductResult, SurjectionSpec, NON_NOETHERIAN_NOTE,
};
use formalglue::gluing::{
    glue, noetherian_report, singularity_report, Atlas, ChartImmersion, ClosedImmersionSpec, NoetherianVerdict,
};
use formalglue::local_ring::LocalRing;
use formalglue::oracle::{graded_betti, intersection_matches, MembershipOracle};
use formalglue::poly::{mora_normal_form, std_basis, Monomial, Poly};
use formalglue::resolution::{
    check_betti_inequality, check_syzygy_recursion, poincare_residue_field, ModulePresentation,
};
use formalglue::session::{parse_session, Env, SessionDocument, Statement};
use formalglue::{Error, Field};

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn q() -> Field {
    Field::Rationals
}

fn ring(vars: &[&str], gens: &[&str]) -> LocalRing {
    LocalRing::parse(vars, gens, q()).unwrap()
}

fn corpus() -> (SessionDocument, Env) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/gluings.fg");
    let text = std::fs::read_to_string(&path).unwrap();
    let doc = parse_session(&text).unwrap();
    let env = Env::build(&doc).unwrap();
    (doc, env)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Gluing requests of the corpus as `(name, x, y, z, alpha, beta)`.
fn corpus_glues(doc: &SessionDocument) -> Vec<[String; 6]> {
    doc.statements
        .iter()
        .filter_map(|s| match s {
            Statement::Glue {
                name,
                x,
                y,
                z,
                alpha,
                beta,
            } => Some([name, x, y, z, alpha, beta].map(|s| s.clone())),
            _ => None,
        })
        .collect()
}

fn over_k_pairs(doc: &SessionDocument, env: &Env) -> Vec<(String, LocalRing, LocalRing)> {
    doc.statements
        .iter()
        .filter_map(|s| match s {
            Statement::Fiber {
                name,
                left,
                right,
                base: None,
            } => Some((
                name.clone(),
                env.ring(left).unwrap().clone(),
                env.ring(right).unwrap().clone(),
            )),
            _ => None,
        })
        .collect()
}

fn residue_immersion(name: &str, z: &Atlas, x: &Atlas) -> ClosedImmersionSpec {
    let (zc, xc) = (&z.charts[0], &x.charts[0]);
    ClosedImmersionSpec {
        name: name.into(),
        pairing: vec![ChartImmersion {
            source_chart: zc.name.clone(),
            target_chart: xc.name.clone(),
            comorphism: SurjectionSpec::residue_map(name, &xc.ring),
        }],
    }
}

fn criterion_1() -> Outcome {
    let x = Atlas::affine("X", ring(&["x"], &[]));
    let y = Atlas::affine("Y", ring(&["y"], &[]));
    let z = Atlas::affine("Z", LocalRing::residue_field(q()));
    let (a, b) = (residue_immersion("a", &z, &x), residue_immersion("b", &z, &y));
    let g = glue(&x, &y, &z, &a, &b).map_err(|e| e.to_string())?;
    ensure(g.charts.len() == 1, || format!("{} glued charts", g.charts.len()))?;
    let p = g.charts[0].fiber.presentation.as_ref().ok_or("no presentation")?;
    let sb: Vec<String> = p.std_basis().iter().map(|f| p.format(f)).collect();
    ensure(sb == ["x*y"], || format!("standard basis {sb:?}"))?;
    let inv = (p.krull_dim(), p.edim(), p.depth(), p.is_regular());
    ensure(inv == (1, 2, 1, false), || format!("dim/edim/depth/regular {inv:?}"))?;
    Ok("standard basis {x*y}, dim 1, edim 2, depth 1, regular false".into())
}

fn criterion_2() -> Outcome {
    let (doc, env) = corpus();
    let pairs = over_k_pairs(&doc, &env);
    ensure(pairs.len() >= 5, || format!("only {} pairs", pairs.len()))?;
    for (name, r, s) in &pairs {
        let fp = fiber_over_k(r, s).map_err(|e| e.to_string())?;
        let p = fp.presentation.as_ref().ok_or("no presentation")?;
        let (dim, edim) = (p.krull_dim(), p.edim());
        ensure(dim == r.krull_dim().max(s.krull_dim()), || format!("{name}: dim {dim}"))?;
        ensure(edim == r.edim() + s.edim(), || format!("{name}: edim {edim}"))?;
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn criterion_3() -> Outcome {
    let a = ring(&["x", "y"], &[]);
    let cases = [
        ("x", "y", "x*y"),
        ("x^2", "x^3", "x^3"),
        ("x", "x + y^2", "x*(x + y^2)"),
    ];
    for (i, j, expected) in cases {
        let (i, j, e) = (
            vec![a.parse_element(i).unwrap()],
            vec![a.parse_element(j).unwrap()],
            vec![a.parse_element(expected).unwrap()],
        );
        let k = intersect_ideals(&a, &i, &j);
        ensure(intersection_matches(2, q(), &i, &j, &k, 8), || {
            format!("computed intersection {:?} disagrees with the oracle", k)
        })?;
        ensure(intersection_matches(2, q(), &i, &j, &e, 8), || {
            format!("expected {expected} rejected by the oracle")
        })?;
        let same = std_basis(&k, a.order()).unwrap() == std_basis(&e, a.order()).unwrap();
        ensure(same, || {
            format!("standard basis of the intersection differs from ({expected})")
        })?;
    }
    Ok("3 intersections agree with the degree-8 oracle".into())
}

fn criterion_4() -> Outcome {
    let (doc, env) = corpus();
    let pairs = over_k_pairs(&doc, &env);
    ensure(pairs.len() >= 5, || format!("only {} pairs", pairs.len()))?;
    let mut values = Vec::new();
    for (name, r, s) in &pairs {
        let fp = fiber_over_k(r, s).map_err(|e| e.to_string())?;
        let p = fp.presentation.as_ref().ok_or("no presentation")?;
        let depth = p.depth();
        let formula = r.depth().min(s.depth()).min(1);
        ensure(depth == formula, || format!("{name}: depth {depth}, formula {formula}"))?;
        values.push(format!("{name}={depth}"));
    }
    Ok(values.join(" "))
}

fn criterion_5() -> Outcome {
    let node = fiber_over_k(&ring(&["x"], &[]), &ring(&["y"], &[])).map_err(|e| e.to_string())?;
    let axes = fiber_over_k(&ring(&["x", "y"], &["x*y"]), &ring(&["z"], &[])).map_err(|e| e.to_string())?;
    let mut dims = Vec::new();
    for (label, fp) in [("node", &node), ("axes", &axes)] {
        let report = verify_fibercomplete(fp, 4).map_err(|e| e.to_string())?;
        for l in &report.levels {
            ensure(l.truncation_dim == l.fiber_of_truncations_dim, || {
                format!(
                    "{label} n={}: {} vs {}",
                    l.n, l.truncation_dim, l.fiber_of_truncations_dim
                )
            })?;
            ensure(l.isomorphic && l.square_commutes, || {
                format!("{label} n={}: not isomorphic", l.n)
            })?;
        }
        dims.push(report.levels.iter().map(|l| l.truncation_dim).collect::<Vec<_>>());
    }
    ensure(dims[0][1] == 3 && dims[0][2] == 5, || {
        format!("node dims {:?}", dims[0])
    })?;
    Ok(format!("node dims {:?}, axes dims {:?}", dims[0], dims[1]))
}

fn criterion_6() -> Outcome {
    let cases = [
        (ring(&["x"], &[]), vec![1, 1, 0, 0, 0, 0]),
        (ring(&["x", "y"], &[]), vec![1, 2, 1, 0, 0, 0]),
        (ring(&["x", "y"], &["x*y"]), vec![1, 2, 2, 2, 2, 2]),
    ];
    for (r, expected) in &cases {
        let rep = check_syzygy_recursion(&ModulePresentation::residue_field(r), 5);
        ensure(rep.holds, || format!("{r}: {:?} vs {:?}", rep.lhs, rep.rhs))?;
        ensure(&rep.lhs == expected, || format!("{r}: {:?}", rep.lhs))?;
    }
    Ok("k over k[[x]], k[[x,y]], k[[x,y]]/(xy) to t^5".into())
}

fn criterion_7() -> Outcome {
    let node = ring(&["x", "y"], &["x*y"]);
    let engine = poincare_residue_field(&node, 5).coefficients;
    let m = vec![node.var(0), node.var(1)];
    let oracle = graded_betti(2, q(), node.gens(), &m, 5, 8).map_err(|e| e.to_string())?;
    let expected = vec![1, 2, 2, 2, 2, 2];
    ensure(engine == expected, || format!("resolution {engine:?}"))?;
    ensure(oracle == expected, || format!("oracle {oracle:?}"))?;
    Ok("(1,2,2,2,2,2) by both".into())
}

fn betti_checks(fp: &FiberProductResult) -> Result<(usize, usize), String> {
    let m = ModulePresentation::residue_field(&fp.pi_r.source);
    let rep = check_betti_inequality(fp, &m).map_err(|e| e.to_string())?;
    ensure(rep.holds && rep.edim_bound_holds, || format!("{rep:?}"))?;
    Ok((rep.beta1_fiber, rep.beta0_r * rep.beta1_s_of_t + rep.beta1_r))
}

fn criterion_8() -> Outcome {
    let node = fiber_over_k(&ring(&["x"], &[]), &ring(&["y"], &[])).map_err(|e| e.to_string())?;
    let (lhs, rhs) = betti_checks(&node)?;
    ensure((lhs, rhs) == (2, 2), || format!("node: {lhs} >= {rhs}"))?;
    let (doc, env) = corpus();
    let mut checked = 0;
    for [name, x, y, z, alpha, beta] in corpus_glues(&doc) {
        let imm = |n: &str| env.immersion(n).unwrap().spec.clone();
        let atlas = |n: &str| env.atlas(n).unwrap().clone();
        let Ok(g) = glue(&atlas(&x), &atlas(&y), &atlas(&z), &imm(&alpha), &imm(&beta)) else {
            continue;
        };
        for c in g.charts.iter().filter(|c| c.fiber.presentation.is_some()) {
            betti_checks(&c.fiber).map_err(|e| format!("{name}/{}: {e}", c.name))?;
            checked += 1;
        }
    }
    Ok(format!(
        "node 2 >= 2 with equality; {checked} glued charts of the corpus"
    ))
}

fn criterion_9() -> Outcome {
    let (doc, env) = corpus();
    let mut checked = Vec::new();
    let mut two_regular = 0;
    for [name, x, y, z, alpha, beta] in corpus_glues(&doc) {
        let (xa, ya, za) = (env.atlas(&x).unwrap(), env.atlas(&y).unwrap(), env.atlas(&z).unwrap());
        let (ia, ib) = (
            &env.immersion(&alpha).unwrap().spec,
            &env.immersion(&beta).unwrap().spec,
        );
        let g = match glue(xa, ya, za, ia, ib) {
            Ok(g) => g,
            Err(Error::NonSurjectiveMap { .. }) => continue,
            Err(e) => return Err(format!("{name}: {e}")),
        };
        let rep = singularity_report(&g);
        if !rep.numerically_checked {
            continue;
        }
        let singular = g.charts.iter().any(|c| {
            let p = c.fiber.presentation.as_ref();
            p.is_some_and(|p| p.edim() > p.krull_dim())
        });
        ensure(singular && rep.has_singular_point, || {
            format!("{name}: no chart with edim > dim")
        })?;
        if xa.charts.iter().chain(&ya.charts).all(|c| c.ring.is_regular()) {
            two_regular += 1;
        }
        checked.push(name);
    }
    ensure(checked.len() >= 8, || format!("only {} gluings checked", checked.len()))?;
    ensure(two_regular >= 1, || "no gluing of regular charts".into())?;
    Ok(format!("{} gluings, {two_regular} of regular charts", checked.len()))
}

fn criterion_10() -> Outcome {
    let (doc, env) = corpus();
    let mut noetherian = 0;
    let mut refused = 0;
    for [name, x, y, z, alpha, beta] in corpus_glues(&doc) {
        let (xa, ya, za) = (env.atlas(&x).unwrap(), env.atlas(&y).unwrap(), env.atlas(&z).unwrap());
        let (ia, ib) = (
            &env.immersion(&alpha).unwrap().spec,
            &env.immersion(&beta).unwrap().spec,
        );
        let rep = noetherian_report(xa, ya, za, ia, ib);
        match glue(xa, ya, za, ia, ib) {
            Ok(_) => {
                ensure(rep.verdict == NoetherianVerdict::Noetherian && rep.finite_type, || {
                    format!("{name}: {}", rep.detail)
                })?;
                noetherian += 1;
            }
            Err(Error::NonSurjectiveMap { .. }) => {
                ensure(rep.verdict == NoetherianVerdict::NotNoetherianWarning, || {
                    format!("{name}: no warning")
                })?;
                ensure(rep.detail.contains(NON_NOETHERIAN_NOTE), || {
                    format!("{name}: {}", rep.detail)
                })?;
                refused += 1;
            }
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    // k -> k[[x, y]]/(x) directly
    let plane = Atlas::affine("X", ring(&["x", "y"], &[]));
    let point = Atlas::affine("Y", LocalRing::residue_field(q()));
    let line = Atlas::affine("Z", ring(&["x", "y"], &["x"]));
    let cut = ClosedImmersionSpec {
        name: "cut".into(),
        pairing: vec![ChartImmersion {
            source_chart: "Z".into(),
            target_chart: "X".into(),
            comorphism: SurjectionSpec::quotient_map("cut", &plane.charts[0].ring, &line.charts[0].ring).unwrap(),
        }],
    };
    let incl = ClosedImmersionSpec {
        name: "incl".into(),
        pairing: vec![ChartImmersion {
            source_chart: "Z".into(),
            target_chart: "Y".into(),
            comorphism: SurjectionSpec::new("incl", &point.charts[0].ring, &line.charts[0].ring, Vec::new()).unwrap(),
        }],
    };
    let direct = glue(&plane, &point, &line, &cut, &incl);
    ensure(matches!(direct, Err(Error::NonSurjectiveMap { .. })), || {
        "k -> k[[x,y]]/(x) not refused".into()
    })?;
    let rep = noetherian_report(&plane, &point, &line, &cut, &incl);
    ensure(
        rep.verdict == NoetherianVerdict::NotNoetherianWarning && rep.detail.contains(NON_NOETHERIAN_NOTE),
        || rep.detail.clone(),
    )?;
    ensure(noetherian >= 8 && refused >= 1, || {
        format!("{noetherian} noetherian, {refused} refused")
    })?;
    Ok(format!(
        "{noetherian} noetherian, {refused} refused in the corpus; direct refusal ok"
    ))
}

fn random_poly(rng: &mut StdRng, nvars: usize, min_deg: u32, max_deg: u32, terms: usize) -> Poly {
    let monos: Vec<Monomial> = Monomial::all_up_to_degree(nvars, max_deg)
        .into_iter()
        .filter(|m| m.degree() >= min_deg)
        .collect();
    let picked = (0..terms).map(|_| {
        let m = monos[rng.gen_range(0..monos.len())].clone();
        (m, q().from_i64(rng.gen_range(-3..=3)))
    });
    Poly::from_terms(nvars, q(), picked)
}

fn criterion_11() -> Outcome {
    let ideals = [
        ring(&["x", "y"], &["x*y"]),
        ring(&["x", "y"], &["x^2 - y^3"]),
        ring(&["x", "y"], &["x^2", "x*y"]),
        ring(&["x", "y"], &["x + y^2", "y^3"]),
        ring(&["x", "y"], &["x^2 + y^2", "x*y"]),
        ring(&["x", "y"], &["x - x^2*y", "y^4"]),
        ring(&["x", "y", "z"], &["x*y", "y*z", "x*z"]),
        ring(&["x", "y", "z"], &["x^2 - y*z", "z^2 + x*y^2"]),
    ];
    let mut rng = StdRng::seed_from_u64(0x5eed_2024);
    let (mut members, mut non_members) = (0, 0);
    for t in 0..200 {
        let r = &ideals[t % ideals.len()];
        let n = r.nvars();
        let sb = std_basis(r.gens(), r.order()).map_err(|e| e.to_string())?;
        let oracle = MembershipOracle::new(n, q(), r.gens(), 8);
        if t % 2 == 0 {
            let mut f = Poly::zero(n, q());
            for g in r.gens() {
                f = &f + &(&random_poly(&mut rng, n, 0, 3, 3) * g);
            }
            ensure(mora_normal_form(&f, &sb, r.order()).is_zero(), || {
                format!("test {t}: combination not reduced to 0")
            })?;
            ensure(oracle.contains(&f), || {
                format!("test {t}: oracle rejects a combination")
            })?;
            members += 1;
        } else {
            let f = random_poly(&mut rng, n, 1, 3, 3);
            let nf_zero = mora_normal_form(&f, &sb, r.order()).is_zero();
            ensure(nf_zero == oracle.contains(&f), || {
                format!("test {t}: {} normal form zero={nf_zero}", r.format(&f))
            })?;
            if !nf_zero {
                non_members += 1;
            }
        }
    }
    ensure(non_members >= 50, || format!("only {non_members} non-members drawn"))?;
    Ok(format!("{members} combinations, {non_members} non-members"))
}

fn main() {
    let criteria: [(&str, Criterion); 11] = [
        ("1 node gluing", criterion_1),
        ("2 fiber over k: dim and edim", criterion_2),
        ("3 intersections", criterion_3),
        ("4 depth over k", criterion_4),
        ("5 truncation levels", criterion_5),
        ("6 syzygy recursion", criterion_6),
        ("7 Poincare series of the node", criterion_7),
        ("8 Betti inequality", criterion_8),
        ("9 singular glued points", criterion_9),
        ("10 Noetherian verdicts", criterion_10),
        ("11 membership soundness", criterion_11),
    ];
    let mut failed = Vec::new();
    for (label, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS {label}: {detail}"),
            Err(detail) => {
                println!("FAIL {label}: {detail}");
                failed.push(label);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
