//! Formal schemes as finite atlases of presented charts, and gluing along closed
//! immersions.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fiber::{fiber_product, FiberProductResult, SurjectionSpec, NON_NOETHERIAN_NOTE};
use crate::local_ring::LocalRing;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub name: String,
    pub ring: LocalRing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atlas {
    pub name: String,
    pub charts: Vec<Chart>,
}

impl Atlas {
    pub fn new(name: &str, charts: Vec<Chart>) -> Result<Atlas> {
        if charts.is_empty() {
            return Err(Error::EmptyAtlas(name.to_string()));
        }
        for (i, c) in charts.iter().enumerate() {
            if charts[..i].iter().any(|d| d.name == c.name) {
                return Err(Error::DuplicateChart {
                    atlas: name.to_string(),
                    chart: c.name.clone(),
                });
            }
        }
        Ok(Atlas {
            name: name.to_string(),
            charts,
        })
    }

    /// An affine scheme with a single chart named after the atlas.
    pub fn affine(name: &str, ring: LocalRing) -> Atlas {
        Atlas::new(
            name,
            vec![Chart {
                name: name.to_string(),
                ring,
            }],
        )
        .expect("one chart")
    }

    pub fn chart(&self, name: &str) -> Option<&Chart> {
        self.charts.iter().find(|c| c.name == name)
    }
}

/// One chart of `Z` with the chart of the ambient scheme it lands in and the comorphism
/// between the chart rings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartImmersion {
    pub source_chart: String,
    pub target_chart: String,
    pub comorphism: SurjectionSpec,
}

/// A closed immersion `Z -> X`, chart by chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedImmersionSpec {
    pub name: String,
    pub pairing: Vec<ChartImmersion>,
}

impl ClosedImmersionSpec {
    fn for_chart(&self, z_chart: &str) -> Option<&ChartImmersion> {
        self.pairing.iter().find(|p| p.source_chart == z_chart)
    }

    /// Chart pairing is total on `z`, lands in `x`, and each comorphism goes from the
    /// `x`-chart ring to the `z`-chart ring.
    fn validate(&self, z: &Atlas, x: &Atlas) -> Result<()> {
        let bad = |detail: String| Error::BadImmersion {
            immersion: self.name.clone(),
            detail,
        };
        for c in &z.charts {
            let Some(p) = self.for_chart(&c.name) else {
                return Err(bad(format!("no image given for chart {}", c.name)));
            };
            let Some(target) = x.chart(&p.target_chart) else {
                return Err(bad(format!("{} is not a chart of {}", p.target_chart, x.name)));
            };
            if p.comorphism.source != target.ring || p.comorphism.target != c.ring {
                return Err(bad(format!(
                    "comorphism for {} must map the ring of {} onto the ring of {}",
                    c.name, target.name, c.name
                )));
            }
        }
        for p in &self.pairing {
            if z.chart(&p.source_chart).is_none() {
                return Err(bad(format!("{} is not a chart of {}", p.source_chart, z.name)));
            }
        }
        Ok(())
    }
}

/// The glued chart over one chart `W` of `Z`: the fiber product of the chart rings of
/// `U = alpha(W)` and `V = beta(W)` over the ring of `W`.
#[derive(Clone, Debug)]
pub struct GluedChart {
    pub name: String,
    pub x_chart: String,
    pub y_chart: String,
    pub z_chart: String,
    pub fiber: FiberProductResult,
}

#[derive(Clone, Debug)]
pub struct GluedScheme {
    pub x: String,
    pub y: String,
    pub z: String,
    /// Sorted by chart name.
    pub charts: Vec<GluedChart>,
}

/// Glues `X` and `Y` along `Z`. Every comorphism must be surjective (closed immersion)
/// and none may be an isomorphism, which would make the fiber product trivial.
pub fn glue(
    x: &Atlas,
    y: &Atlas,
    z: &Atlas,
    alpha: &ClosedImmersionSpec,
    beta: &ClosedImmersionSpec,
) -> Result<GluedScheme> {
    alpha.validate(z, x)?;
    beta.validate(z, y)?;
    for imm in [alpha, beta] {
        for p in &imm.pairing {
            if !p.comorphism.check_surjective()? {
                return Err(Error::NonSurjectiveMap {
                    map: p.comorphism.name.clone(),
                    detail: NON_NOETHERIAN_NOTE.to_string(),
                });
            }
            if p.comorphism.is_isomorphism()? {
                return Err(Error::TrivialGluing {
                    chart: p.source_chart.clone(),
                    map: p.comorphism.name.clone(),
                });
            }
        }
    }
    let mut charts = z
        .charts
        .par_iter()
        .map(|w| {
            let a = alpha.for_chart(&w.name).expect("validated");
            let b = beta.for_chart(&w.name).expect("validated");
            let fiber = fiber_product(&a.comorphism, &b.comorphism)?;
            Ok(GluedChart {
                name: format!("{}+{}", a.target_chart, b.target_chart),
                x_chart: a.target_chart.clone(),
                y_chart: b.target_chart.clone(),
                z_chart: w.name.clone(),
                fiber,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    charts.sort_by(|a, b| (&a.name, &a.z_chart).cmp(&(&b.name, &b.z_chart)));
    Ok(GluedScheme {
        x: x.name.clone(),
        y: y.name.clone(),
        z: z.name.clone(),
        charts,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum PointStatus {
    Singular {
        edim: usize,
        dim: usize,
    },
    Regular {
        edim: usize,
        dim: usize,
    },
    /// No presentation: singular by the theorem, but not checked numerically.
    Unavailable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointReport {
    pub chart: String,
    #[serde(flatten)]
    pub status: PointStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityReport {
    pub points: Vec<PointReport>,
    /// Some closed point of a glued chart has `edim > dim`, or every chart lacks a
    /// presentation (nothing numeric to contradict).
    pub has_singular_point: bool,
    pub numerically_checked: bool,
}

pub const UNAVAILABLE_NOTE: &str = "singular by theorem; numeric check unavailable";

/// Flags each glued point with `edim > dim` as singular.
pub fn singularity_report(g: &GluedScheme) -> SingularityReport {
    let points: Vec<PointReport> = g
        .charts
        .par_iter()
        .map(|c| {
            let status = match &c.fiber.presentation {
                Some(p) => {
                    let (edim, dim) = (p.edim(), p.krull_dim());
                    if edim > dim {
                        PointStatus::Singular { edim, dim }
                    } else {
                        PointStatus::Regular { edim, dim }
                    }
                }
                None => PointStatus::Unavailable,
            };
            PointReport {
                chart: c.name.clone(),
                status,
            }
        })
        .collect();
    let checked: Vec<&PointReport> = points.iter().filter(|p| p.status != PointStatus::Unavailable).collect();
    let numerically_checked = !checked.is_empty();
    let has_singular_point =
        !numerically_checked || checked.iter().any(|p| matches!(p.status, PointStatus::Singular { .. }));
    SingularityReport {
        points,
        has_singular_point,
        numerically_checked,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoetherianVerdict {
    Noetherian,
    NotNoetherianWarning,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoetherianReport {
    pub verdict: NoetherianVerdict,
    /// All charts are quotients of power series rings over `k` in finitely many variables.
    pub finite_type: bool,
    pub detail: String,
}

/// Noetherian when every chart map is a verified surjection between finitely presented
/// charts; otherwise a warning naming the first failing map.
pub fn noetherian_report(
    x: &Atlas,
    y: &Atlas,
    z: &Atlas,
    alpha: &ClosedImmersionSpec,
    beta: &ClosedImmersionSpec,
) -> NoetherianReport {
    let validated = alpha.validate(z, x).and_then(|_| beta.validate(z, y));
    if let Err(e) = validated {
        return NoetherianReport {
            verdict: NoetherianVerdict::NotNoetherianWarning,
            finite_type: false,
            detail: e.to_string(),
        };
    }
    for imm in [alpha, beta] {
        for p in &imm.pairing {
            match p.comorphism.check_surjective() {
                Ok(true) => {}
                Ok(false) => {
                    return NoetherianReport {
                        verdict: NoetherianVerdict::NotNoetherianWarning,
                        finite_type: false,
                        detail: format!("{} is not surjective; {}", p.comorphism.name, NON_NOETHERIAN_NOTE),
                    }
                }
                Err(e) => {
                    return NoetherianReport {
                        verdict: NoetherianVerdict::NotNoetherianWarning,
                        finite_type: false,
                        detail: e.to_string(),
                    }
                }
            }
        }
    }
    NoetherianReport {
        verdict: NoetherianVerdict::Noetherian,
        finite_type: true,
        detail: "all chart maps are surjections of finitely presented complete local k-algebras".into(),
    }
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

    fn immersion(name: &str, z: &Atlas, x: &Atlas, images: &[&str]) -> ClosedImmersionSpec {
        let (zc, xc) = (&z.charts[0], &x.charts[0]);
        ClosedImmersionSpec {
            name: name.into(),
            pairing: vec![ChartImmersion {
                source_chart: zc.name.clone(),
                target_chart: xc.name.clone(),
                comorphism: SurjectionSpec::parse(name, &xc.ring, &zc.ring, images).unwrap(),
            }],
        }
    }

    #[test]
    fn node_gluing() {
        let x = Atlas::affine("X", ring(&["x"], &[]));
        let y = Atlas::affine("Y", ring(&["y"], &[]));
        let z = Atlas::affine("Z", LocalRing::residue_field(q()));
        let a = immersion("a", &z, &x, &["0"]);
        let b = immersion("b", &z, &y, &["0"]);
        let g = glue(&x, &y, &z, &a, &b).unwrap();
        let p = g.charts[0].fiber.presentation.clone().unwrap();
        assert_eq!(p.std_basis(), &[&p.var(0) * &p.var(1)]);
        let rep = singularity_report(&g);
        assert!(rep.has_singular_point && rep.numerically_checked);
        assert_eq!(rep.points[0].status, PointStatus::Singular { edim: 2, dim: 1 });
        assert_eq!(
            noetherian_report(&x, &y, &z, &a, &b).verdict,
            NoetherianVerdict::Noetherian
        );
    }

    #[test]
    fn non_surjective_immersion_is_refused() {
        let x = Atlas::affine("X", ring(&["x", "y"], &[]));
        let y = Atlas::affine("Y", LocalRing::residue_field(q()));
        let z = Atlas::affine("Z", ring(&["x", "y"], &["x"]));
        let a = immersion("a", &z, &x, &["x", "y"]);
        let b = immersion("b", &z, &y, &[]);
        let err = glue(&x, &y, &z, &a, &b).unwrap_err();
        assert!(
            matches!(err, Error::NonSurjectiveMap { ref map, .. } if map == "b"),
            "{err:?}"
        );
        let rep = noetherian_report(&x, &y, &z, &a, &b);
        assert_eq!(rep.verdict, NoetherianVerdict::NotNoetherianWarning);
        assert!(rep.detail.contains("xy^2"));
    }

    #[test]
    fn isomorphic_comorphism_is_trivial() {
        let x = Atlas::affine("X", ring(&["x"], &[]));
        let z = Atlas::affine("Z", ring(&["x"], &[]));
        let a = immersion("a", &z, &x, &["x"]);
        assert!(matches!(glue(&x, &x, &z, &a, &a), Err(Error::TrivialGluing { .. })));
    }

    #[test]
    fn atlas_validation() {
        assert!(matches!(Atlas::new("E", vec![]), Err(Error::EmptyAtlas(_))));
        let c = Chart {
            name: "U".into(),
            ring: ring(&["x"], &[]),
        };
        assert!(matches!(
            Atlas::new("D", vec![c.clone(), c]),
            Err(Error::DuplicateChart { .. })
        ));
    }
}
