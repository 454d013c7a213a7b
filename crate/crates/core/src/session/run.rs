use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fiber::{
    fiber_over_k, fiber_product, verify_fibercomplete, Bound, Construction, FiberProductResult, TruncatedFiber,
    NON_NOETHERIAN_NOTE,
};
use crate::gluing::{glue, noetherian_report, singularity_report, GluedScheme, NoetherianVerdict, PointStatus};
use crate::local_ring::LocalRing;
use crate::oracle::{graded_betti, intersection_matches};
use crate::poly::Poly;
use crate::resolution::{
    check_betti_inequality, check_change_of_rings, check_syzygy_recursion, minimal_resolution, poincare_residue_field,
    FreeResolution, ModulePresentation,
};

use super::env::Env;
use super::report::{CheckResult, ReportDocument, RequestError, Section};
use super::{Options, SessionDocument, Statement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    /// Invariants of the named rings, or of every ring.
    Info(Vec<String>),
    /// `R S [over T]`, or every fiber request of the document.
    Fiber(Option<(String, String, Option<String>)>),
    /// `X Y along Z`, or every glue request of the document.
    Glue(Option<(String, String, String)>),
    Resolve {
        name: String,
        steps: Option<usize>,
    },
    Verify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Info(_) => "info",
            Command::Fiber(_) => "fiber",
            Command::Glue(_) => "glue",
            Command::Resolve { .. } => "resolve",
            Command::Verify => "verify",
        }
    }
}

/// What one request produced.
#[derive(Default)]
struct Output {
    sections: Vec<Section>,
    checks: Vec<CheckResult>,
    errors: Vec<RequestError>,
}

impl Output {
    fn check(&mut self, check: &str, subject: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult {
            check: check.to_string(),
            subject: subject.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    fn error(&mut self, index: usize, subject: &str, err: &Error) {
        self.errors.push(RequestError {
            index,
            subject: subject.to_string(),
            message: err.to_string(),
        });
    }
}

enum Job {
    Ring(String),
    Module(String),
    Map(String),
    Fiber {
        name: String,
        left: String,
        right: String,
        base: Option<(String, String, String)>,
    },
    Glue {
        name: String,
        x: String,
        y: String,
        z: String,
        alpha: String,
        beta: String,
    },
    Resolve {
        name: String,
        steps: usize,
    },
}

struct Ctx<'a> {
    doc: &'a SessionDocument,
    env: &'a Env,
    opts: Options,
    verify: bool,
}

/// Runs a command on a validated document. Independent requests run in parallel; the
/// report lists them in request order.
pub fn run(doc: &SessionDocument, command: &Command) -> ReportDocument {
    let mut report = ReportDocument::new(command.name(), doc.field, doc.options);
    let env = match Env::build(doc) {
        Ok(env) => env,
        Err(e) => {
            report.errors.push(RequestError {
                index: 0,
                subject: "document".into(),
                message: e.to_string(),
            });
            report.finish();
            return report;
        }
    };
    let jobs = match jobs(doc, &env, command) {
        Ok(jobs) => jobs,
        Err(e) => {
            report.errors.push(RequestError {
                index: 0,
                subject: command.name().into(),
                message: e.to_string(),
            });
            report.finish();
            return report;
        }
    };
    let ctx = Ctx {
        doc,
        env: &env,
        opts: doc.options,
        verify: *command == Command::Verify,
    };
    let outputs: Vec<Output> = jobs
        .par_iter()
        .enumerate()
        .map(|(i, job)| run_job(&ctx, i + 1, job))
        .collect();
    for out in outputs {
        report.sections.extend(out.sections);
        report.checks.extend(out.checks);
        report.errors.extend(out.errors);
    }
    report.finish();
    report
}

fn not_found(what: &str) -> Error {
    Error::Usage(format!("no {what} in the document"))
}

fn jobs(doc: &SessionDocument, env: &Env, command: &Command) -> Result<Vec<Job>> {
    let statements = &doc.statements;
    let ring = |n: &str| env.ring(n).map(|_| ()).map_err(|_| not_found(&format!("ring {n}")));
    let atlas = |n: &str| env.atlas(n).map(|_| ()).map_err(|_| not_found(&format!("atlas {n}")));
    let fiber_job = |s: &Statement| match s {
        Statement::Fiber {
            name,
            left,
            right,
            base,
        } => Some(Job::Fiber {
            name: name.clone(),
            left: left.clone(),
            right: right.clone(),
            base: base.clone(),
        }),
        _ => None,
    };
    let glue_job = |s: &Statement| match s {
        Statement::Glue {
            name,
            x,
            y,
            z,
            alpha,
            beta,
        } => Some(Job::Glue {
            name: name.clone(),
            x: x.clone(),
            y: y.clone(),
            z: z.clone(),
            alpha: alpha.clone(),
            beta: beta.clone(),
        }),
        _ => None,
    };
    Ok(match command {
        Command::Info(names) if names.is_empty() => statements
            .iter()
            .filter(|s| matches!(s, Statement::Ring { .. }))
            .map(|s| Job::Ring(s.name().to_string()))
            .collect(),
        Command::Info(names) => names
            .iter()
            .map(|n| ring(n).map(|_| Job::Ring(n.clone())))
            .collect::<Result<_>>()?,
        Command::Fiber(None) => statements.iter().filter_map(fiber_job).collect(),
        Command::Fiber(Some((left, right, over))) => {
            ring(left)?;
            ring(right)?;
            let declared = statements.iter().find(|s| match s {
                Statement::Fiber {
                    left: l,
                    right: r,
                    base,
                    ..
                } => l == left && r == right && base.as_ref().map(|b| &b.0) == over.as_ref(),
                _ => false,
            });
            match (declared, over) {
                (Some(s), _) => vec![fiber_job(s).expect("fiber statement")],
                (None, None) => vec![Job::Fiber {
                    name: format!("{left}x{right}"),
                    left: left.clone(),
                    right: right.clone(),
                    base: None,
                }],
                (None, Some(t)) => {
                    ring(t)?;
                    let a = unique_map(doc, left, t)?;
                    let b = unique_map(doc, right, t)?;
                    vec![Job::Fiber {
                        name: format!("{left}x{right}"),
                        left: left.clone(),
                        right: right.clone(),
                        base: Some((t.clone(), a, b)),
                    }]
                }
            }
        }
        Command::Glue(None) => statements.iter().filter_map(glue_job).collect(),
        Command::Glue(Some((x, y, z))) => {
            for a in [x, y, z] {
                atlas(a)?;
            }
            let declared = statements.iter().find(|s| match s {
                Statement::Glue { x: a, y: b, z: c, .. } => a == x && b == y && c == z,
                _ => false,
            });
            match declared {
                Some(s) => vec![glue_job(s).expect("glue statement")],
                None => vec![Job::Glue {
                    name: format!("{x}+{y}"),
                    x: x.clone(),
                    y: y.clone(),
                    z: z.clone(),
                    alpha: unique_immersion(doc, env, z, x)?,
                    beta: unique_immersion(doc, env, z, y)?,
                }],
            }
        }
        Command::Resolve { name, steps } => {
            if env.ring(name).is_err() && env.module(name).is_err() {
                return Err(not_found(&format!("ring or module {name}")));
            }
            vec![Job::Resolve {
                name: name.clone(),
                steps: steps.unwrap_or(doc.options.poincare_n),
            }]
        }
        Command::Verify => statements
            .iter()
            .filter_map(|s| match s {
                Statement::Ring { name, .. } => Some(Job::Ring(name.clone())),
                Statement::Module { name, .. } => Some(Job::Module(name.clone())),
                Statement::Map { name, .. } => Some(Job::Map(name.clone())),
                Statement::Fiber { .. } => fiber_job(s),
                Statement::Glue { .. } => glue_job(s),
                Statement::Atlas { .. } | Statement::Immersion { .. } => None,
            })
            .collect(),
    })
}

fn unique_map(doc: &SessionDocument, source: &str, target: &str) -> Result<String> {
    let found: Vec<&str> = doc
        .statements
        .iter()
        .filter_map(|s| match s {
            Statement::Map {
                name,
                source: a,
                target: b,
                ..
            } if a == source && b == target => Some(name.as_str()),
            _ => None,
        })
        .collect();
    match found.as_slice() {
        [one] => Ok(one.to_string()),
        [] => Err(not_found(&format!("map {source} -> {target}"))),
        _ => Err(Error::Usage(format!(
            "several maps {source} -> {target}; name the fiber request in the document"
        ))),
    }
}

fn unique_immersion(doc: &SessionDocument, env: &Env, source: &str, target: &str) -> Result<String> {
    let found: Vec<&str> = doc
        .statements
        .iter()
        .filter_map(|s| match s {
            Statement::Immersion { name, .. } => {
                let imm = env.immersion(name).ok()?;
                (imm.source == source && imm.target == target).then_some(name.as_str())
            }
            _ => None,
        })
        .collect();
    match found.as_slice() {
        [one] => Ok(one.to_string()),
        [] => Err(not_found(&format!("immersion {source} -> {target}"))),
        _ => Err(Error::Usage(format!(
            "several immersions {source} -> {target}; name the glue request in the document"
        ))),
    }
}

fn run_job(ctx: &Ctx<'_>, index: usize, job: &Job) -> Output {
    let mut out = Output::default();
    match job {
        Job::Ring(name) => ring_job(ctx, index, name, &mut out),
        Job::Module(name) => module_job(ctx, index, name, &mut out),
        Job::Map(name) => map_job(ctx, index, name, &mut out),
        Job::Fiber {
            name,
            left,
            right,
            base,
        } => fiber_job(ctx, index, name, left, right, base.as_ref(), &mut out),
        Job::Glue {
            name,
            x,
            y,
            z,
            alpha,
            beta,
        } => glue_job(ctx, index, name, [x, y, z], [alpha, beta], &mut out),
        Job::Resolve { name, steps } => resolve_job(ctx, index, name, *steps, &mut out),
    }
    out
}

fn series(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("({})", parts.join(", "))
}

fn poly_list(ring: &LocalRing, polys: &[Poly]) -> String {
    let parts: Vec<String> = polys.iter().map(|p| ring.format(p)).collect();
    format!("[{}]", parts.join(", "))
}

fn ring_entries(sec: &mut Section, ring: &LocalRing) {
    let inv = ring.invariants();
    sec.push("presentation", ring);
    sec.push("standard-basis", poly_list(ring, ring.std_basis()));
    sec.push("edim", inv.edim);
    sec.push("dim", inv.dim);
    sec.push("depth", inv.depth);
    sec.push("regular", inv.regular);
}

fn is_homogeneous(p: &Poly) -> bool {
    p.order() == p.degree()
}

fn resolution_entries(sec: &mut Section, res: &FreeResolution) {
    sec.push("betti", series(&res.ranks));
    sec.push("complete", res.complete);
    if let Some(pd) = res.projective_dimension() {
        sec.push("projective-dimension", pd);
    }
    for (i, d) in res.differentials.iter().enumerate() {
        let cols: Vec<String> = d.iter().map(|v| v.format_with(res.over.vars())).collect();
        sec.push(format!("d{}", i + 1), cols.join("; "));
    }
}

fn resolution_checks(out: &mut Output, subject: &str, m: &ModulePresentation, n: usize) -> FreeResolution {
    let res = minimal_resolution(m, n);
    out.check(
        "resolution",
        subject,
        res.differentials_compose_to_zero() && res.is_minimal(),
        "consecutive differentials compose to zero; all entries in the maximal ideal",
    );
    let rec = check_syzygy_recursion(m, n);
    out.check(
        "syzygy-recursion",
        subject,
        rec.holds,
        format!("P_M = {}, mu + t P_syz = {}", series(&rec.lhs), series(&rec.rhs)),
    );
    res
}

fn ring_job(ctx: &Ctx<'_>, index: usize, name: &str, out: &mut Output) {
    let ring = ctx.env.ring(name).expect("validated");
    let mut sec = Section::new(index, "ring", name);
    ring_entries(&mut sec, ring);
    let n = ctx.opts.poincare_n;
    if !ctx.verify {
        out.sections.push(sec);
        return;
    }
    let res = resolution_checks(out, name, &ModulePresentation::residue_field(ring), n);
    let p = res.ranks.clone();
    sec.push("poincare-k", series(&p));
    let edim = ring.edim();
    let beta1 = p.get(1).copied().unwrap_or(0);
    out.check(
        "edim-betti",
        name,
        beta1 == edim,
        format!("beta_1(k) = {beta1}, edim = {edim}"),
    );
    let (dim, depth) = (ring.krull_dim(), ring.depth());
    out.check(
        "invariant-order",
        name,
        depth <= dim && dim <= edim,
        format!("depth {depth} <= dim {dim} <= edim {edim}"),
    );
    if ring.gens().iter().all(is_homogeneous) {
        let vars: Vec<Poly> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
        match graded_betti(ring.nvars(), ring.field(), ring.gens(), &vars, n, ctx.opts.degree_bound) {
            Ok(oracle) => out.check(
                "poincare-oracle",
                name,
                oracle == p,
                format!("resolution {}, graded linear algebra {}", series(&p), series(&oracle)),
            ),
            Err(e) => out.error(index, name, &e),
        }
    }
    out.sections.push(sec);
}

fn module_job(ctx: &Ctx<'_>, index: usize, name: &str, out: &mut Output) {
    let m = ctx.env.module(name).expect("validated");
    let mut sec = Section::new(index, "module", name);
    sec.push("over", &m.over);
    sec.push("rank", m.rank);
    sec.push("mu", m.mu());
    let res = resolution_checks(out, name, m, ctx.opts.poincare_n);
    sec.push("betti", series(&res.ranks));
    out.sections.push(sec);
}

fn map_job(ctx: &Ctx<'_>, index: usize, name: &str, out: &mut Output) {
    let map = ctx.env.map(name).expect("validated");
    let mut sec = Section::new(index, "map", name);
    sec.push("source", &map.source);
    sec.push("target", &map.target);
    sec.push("images", poly_list(&map.target, &map.images));
    let surjective = match map.check_surjective() {
        Ok(s) => s,
        Err(e) => {
            out.error(index, name, &e);
            out.sections.push(sec);
            return;
        }
    };
    sec.push("well-defined", true);
    sec.push("surjective", surjective);
    if surjective {
        sec.push("isomorphism", map.is_isomorphism().unwrap_or(false));
        match check_change_of_rings(map, ctx.opts.poincare_n) {
            Ok(r) => {
                sec.push("poincare-source", series(&r.source_series));
                sec.push("poincare-target", series(&r.target_series));
                sec.push("target-over-source", series(&r.target_over_source));
                out.check(
                    "change-of-rings",
                    name,
                    r.holds,
                    format!(
                        "{} <= {} * {} = {}; reverse comparison {}",
                        series(&r.source_series),
                        series(&r.target_series),
                        series(&r.target_over_source),
                        series(&r.product),
                        if r.reverse_holds { "holds" } else { "fails" }
                    ),
                );
            }
            Err(Error::UnsupportedKernel(_)) => sec.push("change-of-rings", "skipped (kernel not computable)"),
            Err(e) => out.error(index, name, &e),
        }
    }
    out.sections.push(sec);
}

fn resolve_job(ctx: &Ctx<'_>, index: usize, name: &str, steps: usize, out: &mut Output) {
    let (m, kind) = match ctx.env.ring(name) {
        Ok(ring) => (ModulePresentation::residue_field(ring), "resolution of k over"),
        Err(_) => (ctx.env.module(name).expect("checked").clone(), "resolution of"),
    };
    let mut sec = Section::new(index, "resolve", name);
    sec.push("module", format!("{kind} {name}"));
    sec.push("steps", steps);
    resolution_entries(&mut sec, &minimal_resolution(&m, steps));
    out.sections.push(sec);
}

fn build_fiber(
    env: &Env,
    left: &str,
    right: &str,
    base: Option<&(String, String, String)>,
) -> Result<FiberProductResult> {
    match base {
        None => fiber_over_k(env.ring(left)?, env.ring(right)?),
        Some((_, a, b)) => fiber_product(env.map(a)?, env.map(b)?),
    }
}

fn fiber_job(
    ctx: &Ctx<'_>,
    index: usize,
    name: &str,
    left: &str,
    right: &str,
    base: Option<&(String, String, String)>,
    out: &mut Output,
) {
    let mut sec = Section::new(index, "fiber", name);
    sec.push("left", left);
    sec.push("right", right);
    sec.push("base", base.map_or("k", |b| b.0.as_str()));
    match build_fiber(ctx.env, left, right, base) {
        Ok(fp) => {
            fiber_entries(ctx, &mut sec, &fp);
            if ctx.verify {
                fiber_checks(ctx, index, name, &fp, out);
            }
            out.sections.push(sec);
        }
        Err(e @ Error::NonSurjectiveMap { .. }) if ctx.verify => {
            sec.push("refused", &e);
            out.check(
                "refusal",
                name,
                e.to_string().contains(NON_NOETHERIAN_NOTE),
                e.to_string(),
            );
            out.sections.push(sec);
        }
        Err(e) => {
            sec.push("error", &e);
            out.error(index, name, &e);
            out.sections.push(sec);
        }
    }
}

fn fiber_entries(ctx: &Ctx<'_>, sec: &mut Section, fp: &FiberProductResult) {
    sec.push("construction", fp.construction.as_str());
    sec.push("predicted-dim", fp.invariants.dim);
    sec.push("predicted-depth", fp.invariants.depth.render());
    match &fp.presentation {
        Some(p) => {
            ring_entries(sec, p);
            sec.push("projection-left", poly_list(&fp.pi_r.source, &fp.proj_r));
            sec.push("projection-right", poly_list(&fp.pi_s.source, &fp.proj_s));
        }
        None => {
            sec.push("presentation", "none");
            let dims: Vec<usize> = (1..=ctx.opts.truncation)
                .map(|n| TruncatedFiber::new(&fp.pi_r, &fp.pi_s, n).dim())
                .collect();
            sec.push("truncation-dims", series(&dims));
        }
    }
}

fn fiber_checks(ctx: &Ctx<'_>, index: usize, subject: &str, fp: &FiberProductResult, out: &mut Output) {
    let (r, s) = (&fp.pi_r.source, &fp.pi_s.source);
    let exact = (1..=ctx.opts.truncation).all(|n| {
        let tf = TruncatedFiber::new(&fp.pi_r, &fp.pi_s, n);
        tf.is_exact() && tf.square_commutes()
    });
    out.check(
        "exact-sequence",
        subject,
        exact,
        format!(
            "dim Q_n = dim R_n + dim S_n - dim T_n and the square commutes for n <= {}",
            ctx.opts.truncation
        ),
    );
    let Some(p) = &fp.presentation else {
        return;
    };
    let (dim, edim, depth) = (p.krull_dim(), p.edim(), p.depth());
    out.check(
        "dimension-formula",
        subject,
        dim == fp.invariants.dim,
        format!("dim {dim} = max(dim R, dim S) = {}", fp.invariants.dim),
    );
    match fp.invariants.depth {
        Bound::Exact(v) => out.check(
            "depth-formula",
            subject,
            depth == v,
            format!("depth {depth} = min(depth R, depth S, 1) = {v}"),
        ),
        Bound::AtLeast(v) => out.check(
            "depth-bound",
            subject,
            depth >= v,
            format!("depth {depth} >= min(depth R, depth S, depth T + 1) = {v}"),
        ),
    }
    match fp.construction {
        Construction::OverResidueField => {
            let sum = r.edim() + s.edim();
            out.check(
                "union-invariants",
                subject,
                edim == sum && dim == r.krull_dim().max(s.krull_dim()),
                format!("edim {edim} = edim R + edim S = {sum}"),
            );
        }
        Construction::SameAmbient => {
            let ok = intersection_matches(
                p.nvars(),
                p.field(),
                r.gens(),
                s.gens(),
                p.gens(),
                ctx.opts.degree_bound,
            );
            out.check(
                "intersection-oracle",
                subject,
                ok,
                format!(
                    "{} agrees with the linear-algebra intersection to degree {}",
                    poly_list(p, p.gens()),
                    ctx.opts.degree_bound
                ),
            );
        }
        Construction::PairSubalgebra => {}
    }
    // the singularity and Betti statements assume neither map is an isomorphism
    let trivial = [&fp.pi_r, &fp.pi_s]
        .into_iter()
        .find(|m| m.is_isomorphism().unwrap_or(false));
    if let Some(m) = trivial {
        out.check(
            "trivial-fiber",
            subject,
            true,
            format!(
                "{} is an isomorphism; singularity and Betti checks do not apply",
                m.name
            ),
        );
    } else {
        out.check("singular", subject, edim > dim, format!("edim {edim} > dim {dim}"));
    }
    match verify_fibercomplete(fp, ctx.opts.truncation) {
        Ok(rep) => {
            let levels: Vec<String> = rep
                .levels
                .iter()
                .map(|l| format!("n={}: {}/{}", l.n, l.truncation_dim, l.fiber_of_truncations_dim))
                .collect();
            out.check("fiber-truncations", subject, rep.holds, levels.join(", "));
        }
        Err(e) => out.error(index, subject, &e),
    }
    if trivial.is_some() {
        return;
    }
    let mut modules: Vec<(String, ModulePresentation)> = vec![("k".into(), ModulePresentation::residue_field(r))];
    for st in &ctx.doc.statements {
        if let Statement::Module { name, .. } = st {
            let m = ctx.env.module(name).expect("validated");
            if m.over == *r {
                modules.push((name.clone(), m.clone()));
            }
        }
    }
    for (mname, m) in &modules {
        match check_betti_inequality(fp, m) {
            Ok(b) => {
                let rhs = b.beta0_r * b.beta1_s_of_t + b.beta1_r;
                let mut detail = format!(
                    "M = {mname}: beta_1 = {} >= {} * {} + {} = {rhs}{}",
                    b.beta1_fiber,
                    b.beta0_r,
                    b.beta1_s_of_t,
                    b.beta1_r,
                    if b.equality { " (equality)" } else { "" }
                );
                let mut passed = b.holds;
                if mname == "k" {
                    detail.push_str(&format!("; edim {} >= {} + {}", b.edim_fiber, b.beta1_s_of_t, b.edim_r));
                    passed &= b.edim_bound_holds;
                }
                out.check("betti-inequality", subject, passed, detail);
            }
            Err(Error::UnsupportedKernel(_)) => {}
            Err(e) => out.error(index, subject, &e),
        }
    }
}

/// Invariants compared by the symmetry check, keyed by the chart of `Z`.
fn chart_signature(g: &GluedScheme, n: usize, truncation: u32) -> Vec<(String, String)> {
    let mut sig: Vec<(String, String)> = g
        .charts
        .iter()
        .map(|c| {
            let text = match &c.fiber.presentation {
                Some(p) => format!(
                    "dim {} edim {} depth {} betti {}",
                    p.krull_dim(),
                    p.edim(),
                    p.depth(),
                    series(&poincare_residue_field(p, n).coefficients)
                ),
                None => {
                    let dims: Vec<usize> = (1..=truncation)
                        .map(|l| TruncatedFiber::new(&c.fiber.pi_r, &c.fiber.pi_s, l).dim())
                        .collect();
                    format!("truncation-dims {}", series(&dims))
                }
            };
            (c.z_chart.clone(), text)
        })
        .collect();
    sig.sort();
    sig
}

fn glue_job(
    ctx: &Ctx<'_>,
    index: usize,
    name: &str,
    [x, y, z]: [&String; 3],
    [alpha, beta]: [&String; 2],
    out: &mut Output,
) {
    let env = ctx.env;
    let (xa, ya, za) = (
        env.atlas(x).expect("validated"),
        env.atlas(y).expect("validated"),
        env.atlas(z).expect("validated"),
    );
    let (ia, ib) = (
        &env.immersion(alpha).expect("validated").spec,
        &env.immersion(beta).expect("validated").spec,
    );
    let mut sec = Section::new(index, "glue", name);
    sec.push("glued", format!("{x} + {y} along {z}"));
    let noeth = noetherian_report(xa, ya, za, ia, ib);
    let verdict = match noeth.verdict {
        NoetherianVerdict::Noetherian => "noetherian",
        NoetherianVerdict::NotNoetherianWarning => "not-noetherian-warning",
    };
    match glue(xa, ya, za, ia, ib) {
        Ok(g) => {
            let sing = singularity_report(&g);
            let charts: Vec<&str> = g.charts.iter().map(|c| c.name.as_str()).collect();
            sec.push("charts", charts.join(", "));
            for p in &sing.points {
                let status = match p.status {
                    PointStatus::Singular { edim, dim } => format!("singular (edim {edim} > dim {dim})"),
                    PointStatus::Regular { edim, dim } => format!("regular (edim {edim} = dim {dim})"),
                    PointStatus::Unavailable => crate::gluing::UNAVAILABLE_NOTE.to_string(),
                };
                sec.push(format!("point {}", p.chart), status);
            }
            sec.push("singular-point", sing.has_singular_point);
            sec.push("noetherian", verdict);
            sec.push("finite-type", noeth.finite_type);
            let mut chart_secs = Vec::new();
            for c in &g.charts {
                let cname = format!("{name}/{}", c.name);
                let mut cs = Section::new(index, "glued-chart", &cname);
                cs.push("over", &c.z_chart);
                fiber_entries(ctx, &mut cs, &c.fiber);
                if ctx.verify {
                    fiber_checks(ctx, index, &cname, &c.fiber, out);
                }
                chart_secs.push(cs);
            }
            if ctx.verify {
                let detail = if sing.numerically_checked {
                    let singular: Vec<&str> = sing
                        .points
                        .iter()
                        .filter(|p| matches!(p.status, PointStatus::Singular { .. }))
                        .map(|p| p.chart.as_str())
                        .collect();
                    format!("singular glued points: {}", singular.join(", "))
                } else {
                    crate::gluing::UNAVAILABLE_NOTE.to_string()
                };
                out.check("singular-point", name, sing.has_singular_point, detail);
                out.check(
                    "noetherian",
                    name,
                    noeth.verdict == NoetherianVerdict::Noetherian && noeth.finite_type,
                    noeth.detail.clone(),
                );
                match glue(ya, xa, za, ib, ia) {
                    Ok(swapped) => {
                        let (n, t) = (ctx.opts.poincare_n, ctx.opts.truncation);
                        let (a, b) = (chart_signature(&g, n, t), chart_signature(&swapped, n, t));
                        let detail: Vec<String> = a.iter().map(|(w, s)| format!("{w}: {s}")).collect();
                        out.check("glue-symmetry", name, a == b, detail.join("; "));
                    }
                    Err(e) => out.error(index, name, &e),
                }
            }
            out.sections.push(sec);
            out.sections.extend(chart_secs);
        }
        Err(e) => {
            sec.push("refused", &e);
            sec.push("noetherian", verdict);
            sec.push("detail", &noeth.detail);
            let refusal = matches!(e, Error::NonSurjectiveMap { .. });
            if ctx.verify && refusal {
                out.check(
                    "noetherian",
                    name,
                    noeth.verdict == NoetherianVerdict::NotNoetherianWarning
                        && noeth.detail.contains(NON_NOETHERIAN_NOTE),
                    format!("refused: {e}"),
                );
            } else {
                out.error(index, name, &e);
            }
            out.sections.push(sec);
        }
    }
}
