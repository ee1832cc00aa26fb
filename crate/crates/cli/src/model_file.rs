//! The `.model` text format.
//!
//! ```text
//! # comment
//! name s2
//! gen x 2
//! gen y 3
//! d y = x^2
//! max-degree 6
//! cap 8
//! expect r 1
//! ```
//!
//! Grammar, one statement per line, `#` starts a comment:
//!
//! ```text
//! stmt   := "name" word
//!         | "gen" ident uint
//!         | "d" ident "=" poly
//!         | "cap" uint
//!         | "max-degree" uint
//!         | "expect" key int
//! poly   := sign? term (sign term)*
//! term   := coef ("*"? factor)* | factor ("*"? factor)*
//! coef   := uint ("/" uint)?
//! factor := ident ("^" uint)?
//! ident  := [A-Za-z_][A-Za-z0-9_']*
//! key    := "e0" | "r" | "k" | "N"
//! ```
//!
//! Generators may be declared after the differentials that use them. Factors
//! are multiplied left to right in the graded-commutative algebra, so `y y`
//! is zero for odd `y`. Like terms are merged. Degrees and minimality are
//! checked by validation, not by the parser.

use std::collections::BTreeMap;
use std::fmt;

use sullivan_core::{FreeAlgebra, Generator, Monomial, Polynomial, Rational, SullivanModel};

/// A position in the source, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownStatement(String),
    Expected(&'static str),
    TrailingInput,
    DegreeTooSmall(u32),
    DuplicateGenerator(String),
    DuplicateDifferential(String),
    DuplicateOption(String),
    UnknownGenerator(String),
    UnknownKey(String),
    ZeroDenominator,
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: Position,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Position { line, column } = self.position;
        write!(f, "{line}:{column}: ")?;
        match &self.kind {
            ParseErrorKind::UnknownStatement(s) => write!(f, "unknown statement `{s}`"),
            ParseErrorKind::Expected(what) => write!(f, "expected {what}"),
            ParseErrorKind::TrailingInput => write!(f, "unexpected input after statement"),
            ParseErrorKind::DegreeTooSmall(d) => write!(f, "degree {d} not allowed: degree >= 2 required"),
            ParseErrorKind::DuplicateGenerator(g) => write!(f, "generator `{g}` declared twice"),
            ParseErrorKind::DuplicateDifferential(g) => write!(f, "d({g}) given twice"),
            ParseErrorKind::DuplicateOption(o) => write!(f, "option `{o}` given twice"),
            ParseErrorKind::UnknownGenerator(g) => write!(f, "unknown generator `{g}`"),
            ParseErrorKind::UnknownKey(k) => write!(f, "unknown expectation key `{k}` (use e0, r, k or N)"),
            ParseErrorKind::ZeroDenominator => write!(f, "zero denominator"),
            ParseErrorKind::Invalid(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for ParseError {}

/// Regression values a model file may pin.
pub const EXPECT_KEYS: [&str; 4] = ["N", "e0", "k", "r"];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub cap: Option<u32>,
    pub max_degree: Option<u32>,
    pub expect: BTreeMap<String, i64>,
}

/// A parsed model file. `differential` holds only the nonzero differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelFile {
    pub name: String,
    pub generators: Vec<Generator>,
    pub differential: BTreeMap<String, Polynomial>,
    pub options: Options,
}

impl ModelFile {
    /// The model, without the Sullivan-algebra checks.
    pub fn raw_model(&self) -> SullivanModel {
        let n = self.generators.len();
        let diffs = self
            .generators
            .iter()
            .map(|g| self.differential.get(&g.name).cloned().unwrap_or_else(Polynomial::zero))
            .collect::<Vec<_>>();
        debug_assert!(diffs.len() == n);
        SullivanModel::new(self.generators.clone(), diffs).expect("generators were checked by the parser")
    }

    pub fn model(&self) -> sullivan_core::Result<SullivanModel> {
        let m = self.raw_model();
        SullivanModel::validated(m.generators().to_vec(), m.differentials().to_vec())
    }

    /// Canonical text; [`parse_model`] reads it back to an equal value.
    pub fn serialize(&self) -> String {
        let mut out = format!("name {}\n", self.name);
        for g in &self.generators {
            out.push_str(&format!("gen {} {}\n", g.name, g.degree));
        }
        let alg = FreeAlgebra::new(self.generators.clone()).expect("generators were checked by the parser");
        for g in &self.generators {
            if let Some(p) = self.differential.get(&g.name) {
                out.push_str(&format!("d {} = {}\n", g.name, alg.display(p)));
            }
        }
        if let Some(c) = self.options.cap {
            out.push_str(&format!("cap {c}\n"));
        }
        if let Some(d) = self.options.max_degree {
            out.push_str(&format!("max-degree {d}\n"));
        }
        for (k, v) in &self.options.expect {
            out.push_str(&format!("expect {k} {v}\n"));
        }
        out
    }
}

struct Cursor<'a> {
    line: usize,
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        Cursor { line, text, pos: 0 }
    }

    fn position(&self) -> Position {
        Position { line: self.line, column: self.text[..self.pos].chars().count() + 1 }
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { position: self.position(), kind }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn word(&mut self) -> Option<(Position, &'a str)> {
        self.skip_ws();
        let start = self.position();
        let r = self.rest();
        let len = r.find(char::is_whitespace).unwrap_or(r.len());
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((start, &r[..len]))
    }

    fn ident(&mut self) -> Option<(Position, &'a str)> {
        self.skip_ws();
        let start = self.position();
        let r = self.rest();
        let mut chars = r.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let len = chars
            .find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_' || *c == '\''))
            .map_or(r.len(), |(i, _)| i);
        self.pos += len;
        Some((start, &r[..len]))
    }

    fn uint(&mut self) -> Option<u64> {
        self.skip_ws();
        let r = self.rest();
        let len = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
        let v = r[..len].parse().ok()?;
        self.pos += len;
        Some(v)
    }

    fn expect_uint(&mut self, what: &'static str) -> Result<u64, ParseError> {
        self.skip_ws();
        self.uint().ok_or_else(|| self.error(ParseErrorKind::Expected(what)))
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(ParseErrorKind::TrailingInput))
        }
    }
}

fn strip_comment(line: &str) -> &str {
    line.find('#').map_or(line, |i| &line[..i])
}

fn small(v: u64, c: &Cursor<'_>, what: &'static str) -> Result<u32, ParseError> {
    u32::try_from(v).map_err(|_| c.error(ParseErrorKind::Expected(what)))
}

pub fn parse_model(text: &str) -> Result<ModelFile, ParseError> {
    let mut name: Option<String> = None;
    let mut generators: Vec<Generator> = Vec::new();
    let mut pending: Vec<(usize, &str, Position, String)> = Vec::new();
    let mut options = Options::default();

    for (i, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        let mut c = Cursor::new(i + 1, line);
        let Some((at, keyword)) = c.word() else { continue };
        match keyword {
            "name" => {
                let (_, id) = c.word().ok_or_else(|| c.error(ParseErrorKind::Expected("a model name")))?;
                if name.is_some() {
                    return Err(ParseError { position: at, kind: ParseErrorKind::DuplicateOption("name".into()) });
                }
                name = Some(id.to_string());
                c.finish()?;
            }
            "gen" => {
                let (gat, id) = c.ident().ok_or_else(|| c.error(ParseErrorKind::Expected("a generator name")))?;
                c.skip_ws();
                let deg_at = c.position();
                let raw_deg = c.expect_uint("a degree")?;
                let deg = small(raw_deg, &c, "a degree")?;
                c.finish()?;
                if deg < 2 {
                    return Err(ParseError { position: deg_at, kind: ParseErrorKind::DegreeTooSmall(deg) });
                }
                if generators.iter().any(|g| g.name == id) {
                    return Err(ParseError { position: gat, kind: ParseErrorKind::DuplicateGenerator(id.into()) });
                }
                generators.push(Generator::new(id, deg));
            }
            "d" => {
                let (gat, id) = c.ident().ok_or_else(|| c.error(ParseErrorKind::Expected("a generator name")))?;
                if !c.eat('=') {
                    return Err(c.error(ParseErrorKind::Expected("`=`")));
                }
                if pending.iter().any(|(_, _, _, g)| g == id) {
                    return Err(ParseError { position: gat, kind: ParseErrorKind::DuplicateDifferential(id.into()) });
                }
                pending.push((i + 1, line, gat, id.to_string()));
            }
            "cap" | "max-degree" => {
                let v = c.expect_uint("a nonnegative integer")?;
                let v = small(v, &c, "a nonnegative integer")?;
                c.finish()?;
                let slot = if keyword == "cap" { &mut options.cap } else { &mut options.max_degree };
                if slot.is_some() {
                    return Err(ParseError { position: at, kind: ParseErrorKind::DuplicateOption(keyword.into()) });
                }
                *slot = Some(v);
            }
            "expect" => {
                let (kat, key) = c.word().ok_or_else(|| c.error(ParseErrorKind::Expected("an expectation key")))?;
                if !EXPECT_KEYS.contains(&key) {
                    return Err(ParseError { position: kat, kind: ParseErrorKind::UnknownKey(key.into()) });
                }
                let negative = c.eat('-');
                let v = c.expect_uint("an integer")?;
                let v = i64::try_from(v).map_err(|_| c.error(ParseErrorKind::Expected("an integer")))?;
                c.finish()?;
                if options.expect.insert(key.to_string(), if negative { -v } else { v }).is_some() {
                    return Err(ParseError { position: kat, kind: ParseErrorKind::DuplicateOption(format!("expect {key}")) });
                }
            }
            other => {
                return Err(ParseError { position: at, kind: ParseErrorKind::UnknownStatement(other.into()) });
            }
        }
    }

    let alg = FreeAlgebra::new(generators.clone())
        .map_err(|e| ParseError { position: Position { line: 1, column: 1 }, kind: ParseErrorKind::Invalid(e.to_string()) })?;
    let mut differential = BTreeMap::new();
    for (line_no, line, gat, g) in pending {
        if alg.index_of(&g).is_none() {
            return Err(ParseError { position: gat, kind: ParseErrorKind::UnknownGenerator(g) });
        }
        let mut c = Cursor::new(line_no, line);
        c.pos = line.find('=').expect("checked above") + 1;
        let p = parse_polynomial(&mut c, &alg)?;
        if !p.is_zero() {
            differential.insert(g, p);
        }
    }
    Ok(ModelFile { name: name.unwrap_or_else(|| "unnamed".into()), generators, differential, options })
}

fn parse_polynomial(c: &mut Cursor<'_>, alg: &FreeAlgebra) -> Result<Polynomial, ParseError> {
    let mut out = Polynomial::zero();
    let mut first = true;
    loop {
        let negative = if c.eat('-') {
            true
        } else if c.eat('+') || first {
            false
        } else if c.at_end() {
            break;
        } else {
            return Err(c.error(ParseErrorKind::Expected("`+` or `-`")));
        };
        first = false;
        let term = parse_term(c, alg)?;
        out = if negative { out.sub(&term) } else { out.add(&term) };
    }
    if first {
        return Err(c.error(ParseErrorKind::Expected("a polynomial")));
    }
    Ok(out)
}

fn parse_term(c: &mut Cursor<'_>, alg: &FreeAlgebra) -> Result<Polynomial, ParseError> {
    let mut coef = Rational::from_integer(1.into());
    let mut has_coef = false;
    if c.peek().is_some_and(|ch| ch.is_ascii_digit()) {
        let num = c.expect_uint("a coefficient")?;
        let den = if c.eat('/') { c.expect_uint("a denominator")? } else { 1 };
        if den == 0 {
            return Err(c.error(ParseErrorKind::ZeroDenominator));
        }
        coef = Rational::new(num.into(), den.into());
        has_coef = true;
    }
    let mut acc = Polynomial::monomial(Monomial::one(alg.num_generators()), coef);
    let mut factors = 0usize;
    loop {
        let star = c.eat('*');
        let Some((at, name)) = c.ident() else {
            if star {
                return Err(c.error(ParseErrorKind::Expected("a generator")));
            }
            break;
        };
        let idx = alg
            .index_of(name)
            .ok_or(ParseError { position: at, kind: ParseErrorKind::UnknownGenerator(name.into()) })?;
        let power = if c.eat('^') {
            let v = c.expect_uint("an exponent")?;
            small(v, c, "an exponent")?
        } else {
            1
        };
        let f = alg.power(&alg.generator(idx), power);
        acc = alg.multiply(&acc, &f).expect("same algebra");
        factors += 1;
    }
    if factors == 0 && !has_coef {
        return Err(c.error(ParseErrorKind::Expected("a term")));
    }
    Ok(acc)
}
