use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fiber::SurjectionSpec;
use crate::field::Field;
use crate::gluing::{Atlas, Chart, ChartImmersion, ClosedImmersionSpec};
use crate::local_ring::LocalRing;
use crate::poly::{parse_poly, Vector};
use crate::resolution::ModulePresentation;

use super::{ModuleKind, SessionDocument, Statement};

/// A resolved immersion together with the atlases it connects.
#[derive(Clone, Debug)]
pub struct Immersion {
    pub spec: ClosedImmersionSpec,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug)]
pub enum Entity {
    Ring(LocalRing),
    Map(SurjectionSpec),
    Module(ModulePresentation),
    Atlas(Atlas),
    Immersion(Immersion),
    Fiber,
    Glue,
}

impl Entity {
    pub fn kind(&self) -> &'static str {
        match self {
            Entity::Ring(_) => "ring",
            Entity::Map(_) => "map",
            Entity::Module(_) => "module",
            Entity::Atlas(_) => "atlas",
            Entity::Immersion(_) => "immersion",
            Entity::Fiber => "fiber request",
            Entity::Glue => "glue request",
        }
    }
}

/// Everything a document defines, by name.
#[derive(Clone, Debug)]
pub struct Env {
    pub field: Field,
    entities: HashMap<String, Entity>,
}

fn undefined(name: &str) -> Error {
    Error::UndefinedName {
        name: name.to_string(),
        line: 0,
        column: 0,
    }
}

impl Env {
    pub fn new(field: Field) -> Env {
        Env {
            field,
            entities: HashMap::new(),
        }
    }

    /// Builds the environment of an already validated document.
    pub fn build(doc: &SessionDocument) -> Result<Env> {
        let mut env = Env::new(doc.field);
        for s in &doc.statements {
            env.apply(s)?;
        }
        Ok(env)
    }

    pub fn get(&self, name: &str) -> Option<&Entity> {
        self.entities.get(name)
    }

    pub fn ring(&self, name: &str) -> Result<&LocalRing> {
        match self.get(name) {
            Some(Entity::Ring(r)) => Ok(r),
            _ => Err(undefined(name)),
        }
    }

    pub fn map(&self, name: &str) -> Result<&SurjectionSpec> {
        match self.get(name) {
            Some(Entity::Map(m)) => Ok(m),
            _ => Err(undefined(name)),
        }
    }

    pub fn module(&self, name: &str) -> Result<&ModulePresentation> {
        match self.get(name) {
            Some(Entity::Module(m)) => Ok(m),
            _ => Err(undefined(name)),
        }
    }

    pub fn atlas(&self, name: &str) -> Result<&Atlas> {
        match self.get(name) {
            Some(Entity::Atlas(a)) => Ok(a),
            _ => Err(undefined(name)),
        }
    }

    pub fn immersion(&self, name: &str) -> Result<&Immersion> {
        match self.get(name) {
            Some(Entity::Immersion(i)) => Ok(i),
            _ => Err(undefined(name)),
        }
    }

    /// Adds a statement and returns it with its polynomials in canonical form.
    pub fn apply(&mut self, s: &Statement) -> Result<Statement> {
        let (canonical, entity) = match s {
            Statement::Ring { name, vars, gens } => {
                let polys = gens
                    .iter()
                    .map(|g| parse_poly(g, vars, self.field))
                    .collect::<Result<Vec<_>>>()?;
                let ring = LocalRing::present(vars.clone(), polys, self.field)?;
                let gens = ring.gens().iter().map(|g| ring.format(g)).collect();
                let canonical = Statement::Ring {
                    name: name.clone(),
                    vars: vars.clone(),
                    gens,
                };
                (canonical, Entity::Ring(ring))
            }
            Statement::Map {
                name,
                source,
                target,
                images,
            } => {
                let (src, tgt) = (self.ring(source)?, self.ring(target)?);
                let polys = images
                    .iter()
                    .map(|g| parse_poly(g, tgt.vars(), self.field))
                    .collect::<Result<Vec<_>>>()?;
                let map = SurjectionSpec::new(name, src, tgt, polys)?;
                let images = map.images.iter().map(|p| tgt.format(p)).collect();
                let canonical = Statement::Map {
                    name: name.clone(),
                    source: source.clone(),
                    target: target.clone(),
                    images,
                };
                (canonical, Entity::Map(map))
            }
            Statement::Module { name, over, kind } => {
                let ring = self.ring(over)?;
                let (module, kind) = match kind {
                    ModuleKind::ResidueField => (ModulePresentation::residue_field(ring), ModuleKind::ResidueField),
                    ModuleKind::Free { rank, relations } => {
                        let mut rels = Vec::new();
                        let mut text = Vec::new();
                        for r in relations {
                            if r.len() != *rank {
                                return Err(Error::Parse {
                                    line: 0,
                                    column: 0,
                                    message: format!("relation has {} entries, expected {rank}", r.len()),
                                });
                            }
                            let comps = r
                                .iter()
                                .map(|e| parse_poly(e, ring.vars(), self.field))
                                .collect::<Result<Vec<_>>>()?;
                            text.push(comps.iter().map(|p| ring.format(p)).collect());
                            rels.push(Vector::new(comps));
                        }
                        let module = ModulePresentation {
                            over: ring.clone(),
                            rank: *rank,
                            relations: rels,
                        };
                        (
                            module,
                            ModuleKind::Free {
                                rank: *rank,
                                relations: text,
                            },
                        )
                    }
                };
                let canonical = Statement::Module {
                    name: name.clone(),
                    over: over.clone(),
                    kind,
                };
                (canonical, Entity::Module(module))
            }
            Statement::Atlas { name, charts } => {
                let charts_built = charts
                    .iter()
                    .map(|(c, r)| {
                        Ok(Chart {
                            name: c.clone(),
                            ring: self.ring(r)?.clone(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let atlas = Atlas::new(name, charts_built)?;
                (s.clone(), Entity::Atlas(atlas))
            }
            Statement::Immersion {
                name,
                source,
                target,
                pairs,
            } => {
                let (z, x) = (self.atlas(source)?, self.atlas(target)?);
                let bad = |detail: String| Error::BadImmersion {
                    immersion: name.clone(),
                    detail,
                };
                let mut pairing = Vec::new();
                for (w, u, m) in pairs {
                    let wc = z
                        .chart(w)
                        .ok_or_else(|| bad(format!("{w} is not a chart of {source}")))?;
                    let uc = x
                        .chart(u)
                        .ok_or_else(|| bad(format!("{u} is not a chart of {target}")))?;
                    let map = self.map(m)?;
                    if map.source != uc.ring || map.target != wc.ring {
                        return Err(bad(format!("map {m} must go from the ring of {u} to the ring of {w}")));
                    }
                    pairing.push(ChartImmersion {
                        source_chart: w.clone(),
                        target_chart: u.clone(),
                        comorphism: map.clone(),
                    });
                }
                for c in &z.charts {
                    if !pairs.iter().any(|(w, _, _)| *w == c.name) {
                        return Err(bad(format!("no image given for chart {}", c.name)));
                    }
                }
                let imm = Immersion {
                    spec: ClosedImmersionSpec {
                        name: name.clone(),
                        pairing,
                    },
                    source: source.clone(),
                    target: target.clone(),
                };
                (s.clone(), Entity::Immersion(imm))
            }
            Statement::Fiber { left, right, base, .. } => {
                let (r, sr) = (self.ring(left)?, self.ring(right)?);
                if let Some((t, a, b)) = base {
                    let t = self.ring(t)?;
                    let (ma, mb) = (self.map(a)?, self.map(b)?);
                    if ma.source != *r || ma.target != *t {
                        return Err(Error::AmbientMismatch {
                            left: format!("map {a}"),
                            right: format!("{left} -> base"),
                        });
                    }
                    if mb.source != *sr || mb.target != *t {
                        return Err(Error::AmbientMismatch {
                            left: format!("map {b}"),
                            right: format!("{right} -> base"),
                        });
                    }
                }
                (s.clone(), Entity::Fiber)
            }
            Statement::Glue {
                x, y, z, alpha, beta, ..
            } => {
                for a in [x, y, z] {
                    self.atlas(a)?;
                }
                let (ia, ib) = (self.immersion(alpha)?, self.immersion(beta)?);
                for (imm, name, tgt) in [(ia, alpha, x), (ib, beta, y)] {
                    if imm.source != *z || imm.target != *tgt {
                        return Err(Error::BadImmersion {
                            immersion: name.clone(),
                            detail: format!("expected an immersion {z} -> {tgt}"),
                        });
                    }
                }
                (s.clone(), Entity::Glue)
            }
        };
        self.entities.insert(s.name().to_string(), entity);
        Ok(canonical)
    }
}
