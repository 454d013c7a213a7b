use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::parse_poly;

use super::env::Env;
use super::{ModuleKind, Options, SessionDocument, Statement};

/// Parses and validates a session document.
pub fn parse_session(text: &str) -> Result<SessionDocument> {
    parse_session_with(text, None)
}

/// As [`parse_session`], with `field` replacing any `field` line of the document.
pub fn parse_session_with(text: &str, field: Option<Field>) -> Result<SessionDocument> {
    let mut doc = SessionDocument {
        field: field.unwrap_or_default(),
        options: Options::default(),
        statements: Vec::new(),
    };
    let mut env = Env::new(doc.field);
    let mut field_seen = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        let mut c = Cursor::new(line, body);
        c.skip_ws();
        if c.at_end() {
            continue;
        }
        let start = c.col();
        let (kw, _) = c.ident()?;
        match kw.as_str() {
            "field" => {
                let (v, col) = c.word()?;
                c.end()?;
                if field_seen {
                    return Err(c.error_at(start, "field is declared twice"));
                }
                if !doc.statements.is_empty() {
                    return Err(c.error_at(start, "field must precede all declarations"));
                }
                field_seen = true;
                let parsed: Field = v.parse().map_err(|e: Error| e.at(line, col))?;
                if field.is_none() {
                    doc.field = parsed;
                    env = Env::new(parsed);
                }
            }
            "option" => {
                let (name, col) = c.word()?;
                let (value, vcol) = c.uint()?;
                c.end()?;
                if value == 0 {
                    return Err(c.error_at(vcol, "option values must be positive"));
                }
                let too_big = || c.error_at(vcol, "option value is too large");
                match name.as_str() {
                    "degree-bound" => doc.options.degree_bound = u32::try_from(value).map_err(|_| too_big())?,
                    "poincare-n" => doc.options.poincare_n = usize::try_from(value).map_err(|_| too_big())?,
                    "truncation" => doc.options.truncation = u32::try_from(value).map_err(|_| too_big())?,
                    _ => return Err(c.error_at(col, &format!("unknown option `{name}`"))),
                }
            }
            "ring" | "map" | "module" | "atlas" | "immersion" | "fiber" | "glue" => {
                let parsed = statement(&mut c, &kw)?;
                let stmt = validate(&env, parsed, line, start)?;
                let canonical = env.apply(&stmt).map_err(|e| e.at(line, start))?;
                doc.statements.push(canonical);
            }
            _ => return Err(c.error_at(start, &format!("unknown statement `{kw}`"))),
        }
    }
    Ok(doc)
}

/// A name reference with the kind of entity it must denote.
struct NameRef {
    name: String,
    col: usize,
    kind: &'static str,
}

/// A polynomial string and where its variables come from.
struct PolyRef {
    text: String,
    col: usize,
    ring: Scope,
    /// Zero constant term required (ideal generators, map images).
    local: bool,
}

enum Scope {
    Named(String),
    Vars(Vec<String>),
}

struct Parsed {
    stmt: Statement,
    name_col: usize,
    refs: Vec<NameRef>,
    polys: Vec<PolyRef>,
}

fn statement(c: &mut Cursor<'_>, kw: &str) -> Result<Parsed> {
    let (name, name_col) = c.ident()?;
    let mut refs = Vec::new();
    let mut polys = Vec::new();
    let mut name_ref = |c: &mut Cursor<'_>, kind: &'static str| -> Result<String> {
        let (name, col) = c.ident()?;
        refs.push(NameRef {
            name: name.clone(),
            col,
            kind,
        });
        Ok(name)
    };
    let stmt = match kw {
        "ring" => {
            c.expect("=")?;
            c.expect_word("k")?;
            let mut vars = Vec::new();
            if c.eat("[[") {
                loop {
                    vars.push(c.ident()?.0);
                    if c.eat("]]") {
                        break;
                    }
                    c.expect(",")?;
                }
            }
            let mut gens = Vec::new();
            if c.eat("/") {
                for (text, col) in c.list('(', ')')? {
                    gens.push(text.clone());
                    polys.push(PolyRef {
                        text,
                        col,
                        ring: Scope::Vars(vars.clone()),
                        local: true,
                    });
                }
            }
            Statement::Ring { name, vars, gens }
        }
        "map" => {
            c.expect(":")?;
            let source = name_ref(c, "ring")?;
            c.expect("->")?;
            let target = name_ref(c, "ring")?;
            c.expect("=")?;
            let mut images = Vec::new();
            for (text, col) in c.list('(', ')')? {
                images.push(text.clone());
                polys.push(PolyRef {
                    text,
                    col,
                    ring: Scope::Named(target.clone()),
                    local: true,
                });
            }
            Statement::Map {
                name,
                source,
                target,
                images,
            }
        }
        "module" => {
            c.expect_word("over")?;
            let over = name_ref(c, "ring")?;
            c.expect("=")?;
            let kind = if c.eat_word("k") {
                ModuleKind::ResidueField
            } else {
                c.expect_word("free")?;
                c.expect("(")?;
                let (rank, rank_col) = c.uint()?;
                c.expect(")")?;
                let rank = usize::try_from(rank).map_err(|_| c.error_at(rank_col, "rank is too large"))?;
                let mut relations = Vec::new();
                if c.eat("/") {
                    c.expect("(")?;
                    loop {
                        let col = c.col();
                        let entries = c.list('[', ']')?;
                        if entries.len() != rank {
                            return Err(
                                c.error_at(col, &format!("relation has {} entries, expected {rank}", entries.len()))
                            );
                        }
                        let mut rel = Vec::new();
                        for (text, col) in entries {
                            rel.push(text.clone());
                            polys.push(PolyRef {
                                text,
                                col,
                                ring: Scope::Named(over.clone()),
                                local: false,
                            });
                        }
                        relations.push(rel);
                        if c.eat(")") {
                            break;
                        }
                        c.expect(",")?;
                    }
                }
                ModuleKind::Free { rank, relations }
            };
            Statement::Module { name, over, kind }
        }
        "atlas" => {
            c.expect("=")?;
            c.expect("{")?;
            let mut charts = Vec::new();
            loop {
                let (chart, _) = c.ident()?;
                c.expect(":")?;
                let ring = name_ref(c, "ring")?;
                charts.push((chart, ring));
                if c.eat("}") {
                    break;
                }
                c.expect(",")?;
            }
            Statement::Atlas { name, charts }
        }
        "immersion" => {
            c.expect(":")?;
            let source = name_ref(c, "atlas")?;
            c.expect("->")?;
            let target = name_ref(c, "atlas")?;
            c.expect("=")?;
            c.expect("{")?;
            let mut pairs = Vec::new();
            loop {
                let (w, _) = c.ident()?;
                c.expect("->")?;
                let (u, _) = c.ident()?;
                c.expect_word("via")?;
                let m = name_ref(c, "map")?;
                pairs.push((w, u, m));
                if c.eat("}") {
                    break;
                }
                c.expect(",")?;
            }
            Statement::Immersion {
                name,
                source,
                target,
                pairs,
            }
        }
        "fiber" => {
            c.expect("=")?;
            let left = name_ref(c, "ring")?;
            c.expect_word("x")?;
            let right = name_ref(c, "ring")?;
            let base = if c.eat_word("over") {
                let t = name_ref(c, "ring")?;
                c.expect_word("by")?;
                let a = name_ref(c, "map")?;
                c.expect(",")?;
                let b = name_ref(c, "map")?;
                Some((t, a, b))
            } else {
                None
            };
            Statement::Fiber {
                name,
                left,
                right,
                base,
            }
        }
        "glue" => {
            c.expect("=")?;
            let x = name_ref(c, "atlas")?;
            c.expect("+")?;
            let y = name_ref(c, "atlas")?;
            c.expect_word("along")?;
            let z = name_ref(c, "atlas")?;
            c.expect_word("by")?;
            let alpha = name_ref(c, "immersion")?;
            c.expect(",")?;
            let beta = name_ref(c, "immersion")?;
            Statement::Glue {
                name,
                x,
                y,
                z,
                alpha,
                beta,
            }
        }
        _ => unreachable!("dispatched on known keywords"),
    };
    c.end()?;
    Ok(Parsed {
        stmt,
        name_col,
        refs,
        polys,
    })
}

/// Resolves names and parses polynomials so that errors carry their own location.
fn validate(env: &Env, p: Parsed, line: usize, start: usize) -> Result<Statement> {
    let located = |col: usize, message: String| Error::Parse {
        line,
        column: col,
        message,
    };
    if env.get(p.stmt.name()).is_some() {
        return Err(located(p.name_col, format!("`{}` is already defined", p.stmt.name())));
    }
    for r in &p.refs {
        match env.get(&r.name) {
            None => {
                return Err(Error::UndefinedName {
                    name: r.name.clone(),
                    line,
                    column: r.col,
                })
            }
            Some(e) if e.kind() != r.kind => {
                return Err(located(
                    r.col,
                    format!("`{}` is a {}, expected a {}", r.name, e.kind(), r.kind),
                ));
            }
            Some(_) => {}
        }
    }
    for q in &p.polys {
        let vars = match &q.ring {
            Scope::Named(n) => env.ring(n).map_err(|e| e.at(line, start))?.vars().to_vec(),
            Scope::Vars(v) => v.clone(),
        };
        let poly = parse_poly(&q.text, &vars, env.field).map_err(|e| match e {
            Error::Parse { column, message, .. } => Error::Parse {
                line,
                column: q.col + column - 1,
                message,
            },
            other => other.at(line, q.col),
        })?;
        if q.local && !poly.constant_term().is_zero() {
            let err = match &p.stmt {
                Statement::Map { name, .. } => Error::NonLocalMap {
                    map: name.clone(),
                    image: q.text.clone(),
                },
                _ => Error::ConstantTermPresent {
                    generator: q.text.clone(),
                },
            };
            return Err(err.at(line, q.col));
        }
    }
    Ok(p.stmt)
}

struct Cursor<'a> {
    line: usize,
    src: &'a str,
    pos: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

impl<'a> Cursor<'a> {
    fn new(line: usize, src: &'a str) -> Cursor<'a> {
        Cursor { line, src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn col(&self) -> usize {
        self.src[..self.pos].chars().count() + 1
    }

    fn at_end(&self) -> bool {
        self.rest().is_empty()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn error_at(&self, column: usize, message: &str) -> Error {
        Error::Parse {
            line: self.line,
            column,
            message: message.to_string(),
        }
    }

    fn error(&self, message: &str) -> Error {
        self.error_at(self.col(), message)
    }

    fn found(&self) -> String {
        match self.rest().chars().next() {
            Some(ch) => format!("`{ch}`"),
            None => "end of line".into(),
        }
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{lit}`, found {}", self.found())))
        }
    }

    fn eat_word(&mut self, word: &str) -> bool {
        self.skip_ws();
        let rest = self.rest();
        let boundary = rest[word.len().min(rest.len())..]
            .chars()
            .next()
            .is_none_or(|ch| !is_ident_char(ch));
        if rest.starts_with(word) && boundary {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    fn expect_word(&mut self, word: &str) -> Result<()> {
        if self.eat_word(word) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{word}`, found {}", self.found())))
        }
    }

    fn ident(&mut self) -> Result<(String, usize)> {
        self.skip_ws();
        let col = self.col();
        let rest = self.rest();
        if !rest.chars().next().is_some_and(is_ident_start) {
            return Err(self.error(&format!("expected a name, found {}", self.found())));
        }
        let len = rest.find(|ch| !is_ident_char(ch)).unwrap_or(rest.len());
        self.pos += len;
        Ok((rest[..len].to_string(), col))
    }

    /// A run of non-space characters.
    fn word(&mut self) -> Result<(String, usize)> {
        self.skip_ws();
        let col = self.col();
        let rest = self.rest();
        let len = rest.find(char::is_whitespace).unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("unexpected end of line"));
        }
        self.pos += len;
        Ok((rest[..len].to_string(), col))
    }

    fn uint(&mut self) -> Result<(u64, usize)> {
        self.skip_ws();
        let col = self.col();
        let rest = self.rest();
        let len = rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error(&format!("expected a number, found {}", self.found())));
        }
        let v = rest[..len].parse().map_err(|_| self.error("number is too large"))?;
        self.pos += len;
        Ok((v, col))
    }

    /// `open item, item, ... close`, items being raw text with balanced brackets.
    /// Returns each trimmed item with its column.
    fn list(&mut self, open: char, close: char) -> Result<Vec<(String, usize)>> {
        self.expect(&open.to_string())?;
        let mut items = Vec::new();
        self.skip_ws();
        if self.eat(&close.to_string()) {
            return Ok(items);
        }
        loop {
            self.skip_ws();
            let col = self.col();
            let start = self.pos;
            let mut depth = 0usize;
            let mut end = None;
            for (off, ch) in self.rest().char_indices() {
                match ch {
                    '(' | '[' => depth += 1,
                    ')' | ']' if depth > 0 => depth -= 1,
                    _ if depth == 0 && (ch == ',' || ch == close) => {
                        end = Some((off, ch));
                        break;
                    }
                    _ => {}
                }
            }
            let Some((off, ch)) = end else {
                return Err(self.error(&format!("missing `{close}`")));
            };
            let text = self.src[start..start + off].trim_end();
            if text.is_empty() {
                return Err(self.error("empty list entry"));
            }
            items.push((text.to_string(), col));
            self.pos = start + off + ch.len_utf8();
            if ch == close {
                return Ok(items);
            }
        }
    }

    fn end(&mut self) -> Result<()> {
        self.skip_ws();
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(&format!("unexpected {}", self.found())))
        }
    }
}
