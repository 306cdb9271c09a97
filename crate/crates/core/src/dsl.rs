//! The `.tvl` instance format: a line-oriented script of declarations and
//! commands.
//!
//! ```text
//! lattice dim=3
//! vec f = 3 1/2 5
//! trunc t support=1,2 weights=2,1
//! family T = t
//! complete T
//! represent f in T
//! audit all
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::audit::REGISTRY;
use crate::exact::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    /// 1-based, counted in characters.
    pub column: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: expected {}, found {}", self.line, self.column, self.expected, self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemanticError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for SemanticError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for SemanticError {}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("semantic error: {0}")]
    Semantic(#[from] SemanticError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AuditTarget {
    All,
    One(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Complete(String),
    Classify(String),
    Spectrum(String),
    Represent { vector: String, family: String },
    Audit(AuditTarget),
    Fuzz { seed: u64, cases: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Lattice {
        dim: usize,
    },
    Vec {
        name: String,
        entries: Vec<Rat>,
    },
    /// Support indices are 1-based, as written.
    Trunc {
        name: String,
        support: Vec<usize>,
        weights: Vec<Rat>,
    },
    Family {
        name: String,
        members: Vec<String>,
    },
    Command(Command),
}

/// Statements in order, with the source line of each. Equality ignores line
/// numbers, so a script equals its re-parsed canonical form.
#[derive(Clone, Debug, Default)]
pub struct Script {
    pub statements: Vec<Statement>,
    pub lines: Vec<usize>,
}

impl PartialEq for Script {
    fn eq(&self, other: &Script) -> bool {
        self.statements == other.statements
    }
}

impl Eq for Script {}

impl Script {
    pub fn push(&mut self, line: usize, s: Statement) {
        self.statements.push(s);
        self.lines.push(line);
    }

    pub fn dim(&self) -> Option<usize> {
        self.statements.iter().find_map(|s| match s {
            Statement::Lattice { dim } => Some(*dim),
            _ => None,
        })
    }

    pub fn vectors(&self) -> impl Iterator<Item = (&str, &[Rat])> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Vec { name, entries } => Some((name.as_str(), entries.as_slice())),
            _ => None,
        })
    }

    pub fn truncations(&self) -> impl Iterator<Item = (&str, &[usize], &[Rat])> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Trunc { name, support, weights } => {
                Some((name.as_str(), support.as_slice(), weights.as_slice()))
            }
            _ => None,
        })
    }

    pub fn families(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Family { name, members } => Some((name.as_str(), members.as_slice())),
            _ => None,
        })
    }

    pub fn commands(&self) -> impl Iterator<Item = &Command> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Command(c) => Some(c),
            _ => None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Num(String),
    Eq,
    Comma,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    column: usize,
    text: String,
}

fn is_word_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_lexeme_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '/' | '.')
}

fn is_number(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    let mut parts = body.splitn(2, '/');
    let num = parts.next().unwrap_or("");
    let ok = |p: &str| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit());
    ok(num) && parts.next().is_none_or(ok)
}

fn is_word(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(is_word_start) && cs.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

fn lex(line_no: usize, line: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        if c == '=' || c == ',' {
            let tok = if c == '=' { Tok::Eq } else { Tok::Comma };
            out.push(Token { tok, column, text: c.to_string() });
            i += 1;
            continue;
        }
        if is_lexeme_char(c) {
            let start = i;
            while i < chars.len() && is_lexeme_char(chars[i]) {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let tok = if is_word(&text) {
                Tok::Word(text.clone())
            } else if is_number(&text) {
                Tok::Num(text.clone())
            } else {
                return Err(ParseError {
                    line: line_no,
                    column,
                    expected: "name or rational".into(),
                    found: quote(&text),
                });
            };
            out.push(Token { tok, column, text });
            continue;
        }
        return Err(ParseError { line: line_no, column, expected: "token".into(), found: quote(&c.to_string()) });
    }
    Ok(out)
}

fn quote(s: &str) -> String {
    format!("{s:?}")
}

struct Cursor<'a> {
    line: usize,
    end_column: usize,
    toks: &'a [Token],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    fn error(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(t) => {
                ParseError { line: self.line, column: t.column, expected: expected.into(), found: quote(&t.text) }
            }
            None => ParseError {
                line: self.line,
                column: self.end_column,
                expected: expected.into(),
                found: "end of line".into(),
            },
        }
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn name(&mut self) -> Result<String, ParseError> {
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Word(w)) => {
                self.pos += 1;
                Ok(w.clone())
            }
            _ => Err(self.error("name")),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Word(w)) if w == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(&quote(kw))),
        }
    }

    /// `key=`, as one unit for error reporting.
    fn key(&mut self, key: &str) -> Result<(), ParseError> {
        let expected = format!("\"{key}=\"");
        match (self.toks.get(self.pos).map(|t| &t.tok), self.toks.get(self.pos + 1).map(|t| &t.tok)) {
            (Some(Tok::Word(w)), Some(Tok::Eq)) if w == key => {
                self.pos += 2;
                Ok(())
            }
            _ => Err(self.error(&expected)),
        }
    }

    fn eq(&mut self) -> Result<(), ParseError> {
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Eq) => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error("\"=\"")),
        }
    }

    fn comma(&mut self) -> bool {
        if let Some(Token { tok: Tok::Comma, .. }) = self.peek() {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn rat(&mut self, expected: &str) -> Result<Rat, ParseError> {
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Num(s)) => match s.parse::<Rat>() {
                Ok(r) => {
                    self.pos += 1;
                    Ok(r)
                }
                Err(_) => Err(self.error("rational with positive denominator")),
            },
            _ => Err(self.error(expected)),
        }
    }

    fn uint<T: std::str::FromStr>(&mut self, expected: &str) -> Result<T, ParseError> {
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Num(s)) => match s.parse::<T>() {
                Ok(n) => {
                    self.pos += 1;
                    Ok(n)
                }
                Err(_) => Err(self.error(expected)),
            },
            _ => Err(self.error(expected)),
        }
    }

    fn end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error("end of line")),
        }
    }
}

const KEYWORDS: &str = "statement (lattice, vec, trunc, family, complete, classify, spectrum, represent, audit, fuzz)";

fn parse_line(line_no: usize, toks: &[Token], end_column: usize) -> Result<Statement, ParseError> {
    let mut c = Cursor { line: line_no, end_column, toks, pos: 0 };
    let head = match c.peek().map(|t| &t.tok) {
        Some(Tok::Word(w)) => w.clone(),
        _ => return Err(c.error(KEYWORDS)),
    };
    let stmt = match head.as_str() {
        "lattice" => {
            c.next();
            c.key("dim")?;
            Statement::Lattice { dim: c.uint("integer")? }
        }
        "vec" => {
            c.next();
            let name = c.name()?;
            c.eq()?;
            let mut entries = vec![c.rat("rational")?];
            while let Some(Token { tok: Tok::Num(_), .. }) = c.peek() {
                entries.push(c.rat("rational")?);
            }
            Statement::Vec { name, entries }
        }
        "trunc" => {
            c.next();
            let name = c.name()?;
            c.key("support")?;
            let mut support = vec![c.uint("intlist")?];
            while c.comma() {
                support.push(c.uint("integer")?);
            }
            c.key("weights")?;
            let mut weights = vec![c.rat("ratlist")?];
            while c.comma() {
                weights.push(c.rat("rational")?);
            }
            Statement::Trunc { name, support, weights }
        }
        "family" => {
            c.next();
            let name = c.name()?;
            c.eq()?;
            let mut members = vec![c.name()?];
            while c.comma() {
                members.push(c.name()?);
            }
            Statement::Family { name, members }
        }
        "complete" | "classify" | "spectrum" => {
            c.next();
            let name = c.name()?;
            Statement::Command(match head.as_str() {
                "complete" => Command::Complete(name),
                "classify" => Command::Classify(name),
                _ => Command::Spectrum(name),
            })
        }
        "represent" => {
            c.next();
            let vector = c.name()?;
            c.keyword("in")?;
            let family = c.name()?;
            Statement::Command(Command::Represent { vector, family })
        }
        "audit" => {
            c.next();
            let target = match c.peek().map(|t| &t.tok) {
                Some(Tok::Word(w)) if w == "all" => AuditTarget::All,
                Some(Tok::Word(w)) if REGISTRY.contains(&w.as_str()) => AuditTarget::One(w.clone()),
                _ => return Err(c.error("\"all\" or audit id")),
            };
            c.next();
            Statement::Command(Command::Audit(target))
        }
        "fuzz" => {
            c.next();
            c.key("seed")?;
            let seed = c.uint("integer")?;
            c.key("cases")?;
            let cases = c.uint("integer")?;
            Statement::Command(Command::Fuzz { seed, cases })
        }
        _ => return Err(c.error(KEYWORDS)),
    };
    c.end()?;
    Ok(stmt)
}

/// Syntax only; see [`validate`] for names and dimensions.
pub fn parse(text: &str) -> Result<Script, ParseError> {
    let mut script = Script::default();
    for (k, line) in text.lines().enumerate() {
        let line_no = k + 1;
        let toks = lex(line_no, line)?;
        if toks.is_empty() {
            continue;
        }
        let end_column = line.chars().count() + 1;
        script.push(line_no, parse_line(line_no, &toks, end_column)?);
    }
    Ok(script)
}

/// Parses and validates.
pub fn load(text: &str) -> Result<Script, DslError> {
    let script = parse(text)?;
    validate(&script)?;
    Ok(script)
}

fn join<T: fmt::Display>(xs: &[T], sep: &str) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Lattice { dim } => write!(f, "lattice dim={dim}"),
            Statement::Vec { name, entries } => write!(f, "vec {name} = {}", join(entries, " ")),
            Statement::Trunc { name, support, weights } => {
                write!(f, "trunc {name} support={} weights={}", join(support, ","), join(weights, ","))
            }
            Statement::Family { name, members } => write!(f, "family {name} = {}", members.join(", ")),
            Statement::Command(c) => match c {
                Command::Complete(n) => write!(f, "complete {n}"),
                Command::Classify(n) => write!(f, "classify {n}"),
                Command::Spectrum(n) => write!(f, "spectrum {n}"),
                Command::Represent { vector, family } => write!(f, "represent {vector} in {family}"),
                Command::Audit(AuditTarget::All) => write!(f, "audit all"),
                Command::Audit(AuditTarget::One(id)) => write!(f, "audit {id}"),
                Command::Fuzz { seed, cases } => write!(f, "fuzz seed={seed} cases={cases}"),
            },
        }
    }
}

/// Canonical text: one statement per line, single spaces, canonical
/// rationals, a trailing newline unless empty.
pub fn serialize(script: &Script) -> String {
    script.statements.iter().map(|s| format!("{s}\n")).collect()
}

/// Declared-before-use, unique names per kind, dimensions, support ranges,
/// positive weights, and disjoint family members.
pub fn validate(script: &Script) -> Result<(), SemanticError> {
    let mut dim: Option<usize> = None;
    let mut vecs = BTreeSet::new();
    let mut truncs: BTreeMap<&str, &[usize]> = BTreeMap::new();
    let mut families = BTreeSet::new();
    for (stmt, &line) in script.statements.iter().zip(&script.lines) {
        let err = |message: String| Err(SemanticError { line, message });
        let need_dim = || dim.ok_or_else(|| SemanticError { line, message: "dim undeclared".into() });
        let family_like = |name: &str| families.contains(name) || truncs.contains_key(name);
        match stmt {
            Statement::Lattice { dim: d } => {
                if dim.is_some() {
                    return err("dim already declared".into());
                }
                if *d == 0 {
                    return err("dim must be positive".into());
                }
                dim = Some(*d);
            }
            Statement::Vec { name, entries } => {
                let n = need_dim()?;
                if !vecs.insert(name.as_str()) {
                    return err(format!("vector {name} already declared"));
                }
                if entries.len() != n {
                    return err(format!("vector {name} has {} entries, dim is {n}", entries.len()));
                }
            }
            Statement::Trunc { name, support, weights } => {
                let n = need_dim()?;
                if truncs.contains_key(name.as_str()) {
                    return err(format!("truncation {name} already declared"));
                }
                if let Some(i) = support.iter().find(|&&i| i == 0 || i > n) {
                    return err(format!("support index {i} of {name} is outside 1..{n}"));
                }
                if support.windows(2).any(|w| w[0] >= w[1]) {
                    return err(format!("support of {name} is not strictly increasing"));
                }
                if support.len() != weights.len() {
                    return err(format!("{name} has {} support indices but {} weights", support.len(), weights.len()));
                }
                if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
                    return err(format!("nonpositive weight {w} in {name}"));
                }
                truncs.insert(name, support);
            }
            Statement::Family { name, members } => {
                need_dim()?;
                if families.contains(name.as_str()) {
                    return err(format!("family {name} already declared"));
                }
                let mut seen: BTreeMap<usize, &str> = BTreeMap::new();
                let mut names = BTreeSet::new();
                for m in members {
                    let Some(support) = truncs.get(m.as_str()) else {
                        return err(format!("unknown truncation {m}"));
                    };
                    if !names.insert(m.as_str()) {
                        return err(format!("truncation {m} listed twice in {name}"));
                    }
                    for &i in support.iter() {
                        if let Some(prev) = seen.insert(i, m) {
                            return err(format!("{prev} and {m} share support index {i}; ranges are not disjoint"));
                        }
                    }
                }
                families.insert(name.as_str());
            }
            Statement::Command(c) => match c {
                Command::Complete(n) | Command::Spectrum(n) => {
                    if !family_like(n) {
                        return err(format!("unknown family {n}"));
                    }
                }
                Command::Classify(n) => {
                    if !truncs.contains_key(n.as_str()) {
                        return err(format!("unknown truncation {n}"));
                    }
                }
                Command::Represent { vector, family } => {
                    if !vecs.contains(vector.as_str()) {
                        return err(format!("unknown vector {vector}"));
                    }
                    if !family_like(family) {
                        return err(format!("unknown family {family}"));
                    }
                }
                Command::Audit(_) => {
                    if truncs.is_empty() {
                        return err("audit needs a declared truncation".into());
                    }
                }
                Command::Fuzz { .. } => {}
            },
        }
    }
    Ok(())
}
