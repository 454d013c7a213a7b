//! Session documents: named rings, maps, modules, atlases and requests, one statement
//! per line. See `docs/FORMATS.md` for the grammar.

mod env;
mod parse;
pub mod report;
mod run;

use std::fmt;

use crate::field::Field;

pub use env::Env;
pub use parse::{parse_session, parse_session_with};
pub use report::{CheckResult, Entry, ReportDocument, Section, Status, SCHEMA_VERSION};
pub use run::{run, Command};

pub const DEFAULT_DEGREE_BOUND: u32 = 8;
pub const DEFAULT_POINCARE_N: usize = 5;
pub const DEFAULT_TRUNCATION: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Degree bound of the linear-algebra oracles.
    pub degree_bound: u32,
    /// Truncation order of Poincaré series.
    pub poincare_n: usize,
    /// Highest truncation level `n` in level-wise fiber product checks.
    pub truncation: u32,
}

impl Default for Options {
    fn default() -> Options {
        Options {
            degree_bound: DEFAULT_DEGREE_BOUND,
            poincare_n: DEFAULT_POINCARE_N,
            truncation: DEFAULT_TRUNCATION,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    ResidueField,
    /// `R^rank / (relations)`, each relation a list of `rank` entries.
    Free {
        rank: usize,
        relations: Vec<Vec<String>>,
    },
}

/// One statement. Polynomial strings are kept in the canonical form printed by the
/// ring they live in, so printing and reparsing is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Ring {
        name: String,
        vars: Vec<String>,
        gens: Vec<String>,
    },
    Map {
        name: String,
        source: String,
        target: String,
        images: Vec<String>,
    },
    Module {
        name: String,
        over: String,
        kind: ModuleKind,
    },
    Atlas {
        name: String,
        /// `(chart, ring)`.
        charts: Vec<(String, String)>,
    },
    Immersion {
        name: String,
        source: String,
        target: String,
        /// `(source chart, target chart, map)`.
        pairs: Vec<(String, String, String)>,
    },
    Fiber {
        name: String,
        left: String,
        right: String,
        /// `(base ring, left map, right map)`; absent means over the residue field.
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
}

impl Statement {
    pub fn name(&self) -> &str {
        match self {
            Statement::Ring { name, .. }
            | Statement::Map { name, .. }
            | Statement::Module { name, .. }
            | Statement::Atlas { name, .. }
            | Statement::Immersion { name, .. }
            | Statement::Fiber { name, .. }
            | Statement::Glue { name, .. } => name,
        }
    }

    pub fn keyword(&self) -> &'static str {
        match self {
            Statement::Ring { .. } => "ring",
            Statement::Map { .. } => "map",
            Statement::Module { .. } => "module",
            Statement::Atlas { .. } => "atlas",
            Statement::Immersion { .. } => "immersion",
            Statement::Fiber { .. } => "fiber",
            Statement::Glue { .. } => "glue",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SessionDocument {
    pub field: Field,
    pub options: Options,
    pub statements: Vec<Statement>,
}

impl SessionDocument {
    pub fn statement(&self, name: &str) -> Option<&Statement> {
        self.statements.iter().find(|s| s.name() == name)
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Ring { name, vars, gens } => {
                write!(f, "ring {name} = k")?;
                if !vars.is_empty() {
                    write!(f, "[[{}]]", vars.join(", "))?;
                }
                if !gens.is_empty() {
                    write!(f, " / ({})", gens.join(", "))?;
                }
                Ok(())
            }
            Statement::Map {
                name,
                source,
                target,
                images,
            } => write!(f, "map {name} : {source} -> {target} = ({})", images.join(", ")),
            Statement::Module { name, over, kind } => {
                write!(f, "module {name} over {over} = ")?;
                match kind {
                    ModuleKind::ResidueField => write!(f, "k"),
                    ModuleKind::Free { rank, relations } => {
                        write!(f, "free({rank})")?;
                        if !relations.is_empty() {
                            let rels: Vec<String> = relations.iter().map(|r| format!("[{}]", r.join(", "))).collect();
                            write!(f, " / ({})", rels.join(", "))?;
                        }
                        Ok(())
                    }
                }
            }
            Statement::Atlas { name, charts } => {
                let charts: Vec<String> = charts.iter().map(|(c, r)| format!("{c}: {r}")).collect();
                write!(f, "atlas {name} = {{ {} }}", charts.join(", "))
            }
            Statement::Immersion {
                name,
                source,
                target,
                pairs,
            } => {
                let pairs: Vec<String> = pairs.iter().map(|(w, u, m)| format!("{w} -> {u} via {m}")).collect();
                write!(
                    f,
                    "immersion {name} : {source} -> {target} = {{ {} }}",
                    pairs.join(", ")
                )
            }
            Statement::Fiber {
                name,
                left,
                right,
                base,
            } => {
                write!(f, "fiber {name} = {left} x {right}")?;
                if let Some((t, a, b)) = base {
                    write!(f, " over {t} by {a}, {b}")?;
                }
                Ok(())
            }
            Statement::Glue {
                name,
                x,
                y,
                z,
                alpha,
                beta,
            } => write!(f, "glue {name} = {x} + {y} along {z} by {alpha}, {beta}"),
        }
    }
}

impl fmt::Display for SessionDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {}", self.field)?;
        writeln!(f, "option degree-bound {}", self.options.degree_bound)?;
        writeln!(f, "option poincare-n {}", self.options.poincare_n)?;
        writeln!(f, "option truncation {}", self.options.truncation)?;
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
