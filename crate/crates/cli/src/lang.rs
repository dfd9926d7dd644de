//! The `.qdx` fixture language.
//!
//! One `kind name = expr` declaration per line, plus multi-line
//! `fixture NAME { ... }` blocks. `#` starts a comment. Names must be
//! declared before use and may be bound only once.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_rational::BigRational;

use qdx_core::assemble::{AlgebraicSide, ClassSelector, Fixture, Restriction};
use qdx_core::cohmodel::{ActionSpec, CohError, CohModel};
use qdx_core::grpcat::{is_prime, GSet, GroupError, Perm, PermGroup, QuillenPair, Subgroup, DEFAULT_GROUP_BOUND};
use qdx_core::monalg::{AlgebraError, GradedModule, MonIdeal, MonPrime, MonRingMap, WeightedRing};
use qdx_core::series::SeriesExpr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("{line}:{col}: syntax error: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: duplicate name `{name}`")]
    DuplicateName { line: usize, col: usize, name: String },
    #[error("{line}:{col}: unknown reference `{name}`")]
    UnknownReference { line: usize, col: usize, name: String },
    #[error("{line}:{col}: bad permutation: {msg}")]
    BadPermutation { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: {msg}")]
    Invalid { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: capacity exceeded: {msg}")]
    Capacity { line: usize, col: usize, msg: String },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, col, .. }
            | ParseError::DuplicateName { line, col, .. }
            | ParseError::UnknownReference { line, col, .. }
            | ParseError::BadPermutation { line, col, .. }
            | ParseError::Invalid { line, col, .. }
            | ParseError::Capacity { line, col, .. } => (*line, *col),
        }
    }
}

// ---------------------------------------------------------------- syntax tree

pub type Cycles = Vec<Vec<u32>>;
pub type Monomial = Vec<(String, u32)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decl {
    pub name: String,
    pub body: Body,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Ring { vars: Vec<String>, weights: Vec<u32>, p: u32 },
    Ideal { gens: Vec<String>, ring: String },
    Module { summands: Vec<Summand> },
    Group { gens: Vec<Cycles>, degree: Option<usize> },
    GSet { parts: Vec<GSetPart> },
    Model(ModelExpr),
    Map { source: String, target: String, images: Vec<(String, Option<Monomial>)> },
    Fixture(Vec<Entry>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub ring: String,
    pub ideal: Option<String>,
    pub shift: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GSetPart {
    Point(String),
    Free(String, usize),
    Cosets(String, Vec<Cycles>),
    Table(String, usize, Vec<Cycles>),
    Empty(String),
}

impl GSetPart {
    fn group(&self) -> &str {
        match self {
            GSetPart::Point(g) | GSetPart::Free(g, _) | GSetPart::Cosets(g, _) | GSetPart::Table(g, _, _) | GSetPart::Empty(g) => g,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelExpr {
    ElemAb { rank: u32, p: u32 },
    Presented { ring: String, ideal: String },
    Series { num: Vec<i64>, den: Vec<u32>, dim: i64, note: String, p: Option<u32>, action: Option<Vec<Vec<Vec<i64>>>> },
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entry {
    Group(String),
    P(u32),
    /// `None` is the one-point space.
    Space(Option<String>),
    Global(String),
    Stabilizer(usize, String),
    CentralizerRank(u32, String),
    CentralizerPair(Vec<Cycles>, usize, String),
    Algebraic(String),
    Match(Vec<String>, Vec<Cycles>, usize),
    Restrict(Vec<String>, String, Vec<String>),
    ExpectLhs(BigRational),
    ExpectRhs(BigRational),
    Convention(String),
    Note(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Ring(WeightedRing),
    Ideal { ring: String, ideal: MonIdeal },
    Module { ring: String, module: GradedModule },
    Group(PermGroup),
    GSet { group: String, set: GSet },
    Model(CohModel),
    Map(MonRingMap),
    Fixture(Box<Fixture>),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Ring(_) => "ring",
            Value::Ideal { .. } => "ideal",
            Value::Module { .. } => "module",
            Value::Group(_) => "group",
            Value::GSet { .. } => "gset",
            Value::Model(_) => "model",
            Value::Map(_) => "map",
            Value::Fixture(_) => "fixture",
        }
    }
}

/// Declarations in file order together with their evaluated values.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Env {
    decls: Vec<Decl>,
    values: BTreeMap<String, Value>,
}

impl Env {
    pub fn decls(&self) -> &[Decl] {
        &self.decls
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.values.get(name)
    }

    pub fn names_of(&self, kind: &str) -> Vec<&str> {
        self.decls
            .iter()
            .filter(|d| self.values[&d.name].kind() == kind)
            .map(|d| d.name.as_str())
            .collect()
    }

    pub fn fixtures(&self) -> Vec<&Fixture> {
        self.decls
            .iter()
            .filter_map(|d| match &self.values[&d.name] {
                Value::Fixture(f) => Some(f.as_ref()),
                _ => None,
            })
            .collect()
    }

    /// A ring and module by name; ideals are read as cyclic quotients.
    pub fn module(&self, name: &str) -> Option<(&WeightedRing, GradedModule)> {
        match self.values.get(name)? {
            Value::Module { ring, module } => Some((self.ring(ring)?, module.clone())),
            Value::Ideal { ring, ideal } => Some((self.ring(ring)?, GradedModule::quotient(ideal.clone()))),
            _ => None,
        }
    }

    pub fn ring(&self, name: &str) -> Option<&WeightedRing> {
        match self.values.get(name)? {
            Value::Ring(r) => Some(r),
            _ => None,
        }
    }
}

// ------------------------------------------------------------------- lexing

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Str(String),
    Sym(char),
    Arrow,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    col: usize,
}

fn tokenize(text: &str, line: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c == '#' {
            break;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), col });
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let v = s.parse().map_err(|_| ParseError::Syntax { line, col, msg: "integer too large".into() })?;
            out.push(Token { tok: Tok::Int(v), col });
        } else if c == '"' {
            i += 1;
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None => return Err(ParseError::Syntax { line, col, msg: "unterminated string".into() }),
                    Some('"') => {
                        i += 1;
                        break;
                    }
                    Some('\\') => {
                        match chars.get(i + 1) {
                            Some(&e @ ('"' | '\\')) => s.push(e),
                            Some('n') => s.push('\n'),
                            _ => return Err(ParseError::Syntax { line, col: i + 1, msg: "bad escape".into() }),
                        }
                        i += 2;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        i += 1;
                    }
                }
            }
            out.push(Token { tok: Tok::Str(s), col });
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Token { tok: Tok::Arrow, col });
            i += 2;
        } else if c == '\u{2212}' {
            out.push(Token { tok: Tok::Sym('-'), col });
            i += 1;
        } else if "={}[]()<>,;/+*^@:-".contains(c) {
            out.push(Token { tok: Tok::Sym(c), col });
            i += 1;
        } else {
            return Err(ParseError::Syntax { line, col, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn new(toks: &'a [Token], line: usize, text: &str) -> Self {
        Cursor { toks, pos: 0, line, end_col: text.chars().count() + 1 }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn syntax(&self, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { line: self.line, col: self.col(), msg: msg.into() }
    }

    fn syntax_at(&self, col: usize, msg: impl Into<String>) -> ParseError {
        ParseError::Syntax { line: self.line, col, msg: msg.into() }
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn is_ident(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(s)) if s == kw)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.is_sym(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<usize, ParseError> {
        let col = self.col();
        if self.eat_sym(c) {
            Ok(col)
        } else {
            Err(self.syntax(format!("expected `{c}`")))
        }
    }

    fn expect_arrow(&mut self) -> Result<(), ParseError> {
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax("expected `->`"))
        }
    }

    fn ident(&mut self) -> Result<(String, usize), ParseError> {
        let col = self.col();
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok((s, col))
            }
            _ => Err(self.syntax("expected a name")),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.is_ident(kw) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("expected `{kw}`")))
        }
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.syntax("expected an integer")),
        }
    }

    fn small<T: TryFrom<u64>>(&mut self) -> Result<T, ParseError> {
        let col = self.col();
        let v = self.uint()?;
        T::try_from(v).map_err(|_| self.syntax_at(col, "integer out of range"))
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat_sym('-');
        let col = self.col();
        let v = self.uint()?;
        let v = i64::try_from(v).map_err(|_| self.syntax_at(col, "integer out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn string(&mut self) -> Result<(String, usize), ParseError> {
        let col = self.col();
        match self.peek() {
            Some(Tok::Str(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok((s, col))
            }
            _ => Err(self.syntax("expected a string")),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.syntax("unexpected trailing input"))
        }
    }

    /// `open item (, item)* close`, allowing an empty list.
    fn list<T>(
        &mut self,
        open: char,
        close: char,
        mut item: impl FnMut(&mut Self) -> Result<T, ParseError>,
    ) -> Result<Vec<T>, ParseError> {
        let open_col = self.expect_sym(open)?;
        let mut out = Vec::new();
        loop {
            if self.at_end() {
                return Err(self.syntax_at(open_col, format!("unclosed `{open}`")));
            }
            if self.eat_sym(close) {
                return Ok(out);
            }
            out.push(item(self)?);
            if self.at_end() {
                return Err(self.syntax_at(open_col, format!("unclosed `{open}`")));
            }
            if !self.eat_sym(',') && !self.is_sym(close) {
                return Err(self.syntax(format!("expected `,` or `{close}`")));
            }
        }
    }

    /// `(0 1 2)(3 4)`; `()` is the identity.
    fn perm(&mut self) -> Result<Cycles, ParseError> {
        if !self.is_sym('(') {
            return Err(self.syntax("expected a permutation in cycle notation"));
        }
        let mut cycles = Vec::new();
        while self.is_sym('(') {
            let open_col = self.expect_sym('(')?;
            let mut cycle = Vec::new();
            loop {
                match self.peek() {
                    None => return Err(self.syntax_at(open_col, "unclosed `(`")),
                    Some(Tok::Sym(')')) => {
                        self.pos += 1;
                        break;
                    }
                    Some(Tok::Int(_)) => cycle.push(self.small::<u32>()?),
                    Some(Tok::Sym(',')) => self.pos += 1,
                    _ => return Err(self.syntax("expected a point or `)`")),
                }
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
        }
        Ok(cycles)
    }

    fn gens(&mut self) -> Result<Vec<Cycles>, ParseError> {
        self.list('<', '>', |c| c.perm())
    }

    /// `(x, y)` or `(0)`.
    fn prime(&mut self) -> Result<Vec<String>, ParseError> {
        if self.is_sym('(') && self.toks.get(self.pos + 1).map(|t| &t.tok) == Some(&Tok::Int(0)) {
            self.pos += 1;
            self.uint()?;
            self.expect_sym(')')?;
            return Ok(Vec::new());
        }
        self.list('(', ')', |c| c.ident().map(|(s, _)| s))
    }

    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let n = self.int()?;
        let d = if self.eat_sym('/') {
            let col = self.col();
            let d = self.int()?;
            if d == 0 {
                return Err(self.syntax_at(col, "zero denominator"));
            }
            d
        } else {
            1
        };
        Ok(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// `a*b^2`, `1` for the empty product.
    fn monomial(&mut self) -> Result<Monomial, ParseError> {
        if self.peek() == Some(&Tok::Int(1)) {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        loop {
            let (v, _) = self.ident()?;
            let e = if self.eat_sym('^') { self.small::<u32>()? } else { 1 };
            out.push((v, e));
            if !self.eat_sym('*') {
                return Ok(out);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Nested {
    Int(i64),
    List(Vec<Nested>),
}

fn nested(c: &mut Cursor) -> Result<Nested, ParseError> {
    if c.is_sym('[') {
        Ok(Nested::List(c.list('[', ']', nested)?))
    } else {
        Ok(Nested::Int(c.int()?))
    }
}

fn nested_depth(n: &Nested) -> Option<usize> {
    match n {
        Nested::Int(_) => Some(0),
        Nested::List(v) => {
            let depths: Option<Vec<usize>> = v.iter().map(nested_depth).collect();
            let depths = depths?;
            match depths.first() {
                None => Some(1),
                Some(&d) if depths.iter().all(|&x| x == d) => Some(d + 1),
                _ => None,
            }
        }
    }
}

fn matrix(n: &Nested) -> Vec<Vec<i64>> {
    let Nested::List(rows) = n else { unreachable!() };
    rows.iter()
        .map(|r| {
            let Nested::List(xs) = r else { unreachable!() };
            xs.iter().map(|x| if let Nested::Int(v) = x { *v } else { unreachable!() }).collect()
        })
        .collect()
}

/// Parses `x^2*y` inside an ideal generator string.
fn parse_monomial_text(s: &str) -> Result<Monomial, String> {
    let s = s.trim();
    if s == "1" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for factor in s.split('*') {
        let factor = factor.trim();
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => (n.trim(), e.trim().parse::<u32>().map_err(|_| format!("bad exponent in `{factor}`"))?),
            None => (factor, 1),
        };
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
            return Err(format!("bad factor `{factor}`"));
        }
        out.push((name.to_string(), exp));
    }
    Ok(out)
}

// ------------------------------------------------------------------ parsing

pub struct Parser {
    env: Env,
    bound: usize,
    last_ring: Option<String>,
}

pub fn parse(text: &str) -> Result<Env, ParseError> {
    parse_with_bound(text, DEFAULT_GROUP_BOUND)
}

/// Groups larger than `bound` are rejected with `Capacity`.
pub fn parse_with_bound(text: &str, bound: usize) -> Result<Env, ParseError> {
    let mut p = Parser { env: Env::default(), bound, last_ring: None };
    let lines: Vec<&str> = text.lines().collect();
    let mut i = 0;
    while i < lines.len() {
        let line = i + 1;
        let toks = tokenize(lines[i], line)?;
        i += 1;
        if toks.is_empty() {
            continue;
        }
        let mut c = Cursor::new(&toks, line, lines[i - 1]);
        if c.is_ident("fixture") {
            c.pos += 1;
            let (name, name_col) = c.ident()?;
            let brace = c.expect_sym('{')?;
            c.finish()?;
            p.check_fresh(&name, line, name_col)?;
            let mut entries = Vec::new();
            let mut closed = false;
            while i < lines.len() {
                let eline = i + 1;
                let etoks = tokenize(lines[i], eline)?;
                i += 1;
                if etoks.is_empty() {
                    continue;
                }
                let mut ec = Cursor::new(&etoks, eline, lines[i - 1]);
                if ec.eat_sym('}') {
                    ec.finish()?;
                    closed = true;
                    break;
                }
                let col = ec.col();
                let entry = parse_entry(&mut ec)?;
                ec.finish()?;
                entries.push((entry, eline, col));
            }
            if !closed {
                return Err(ParseError::Syntax { line, col: brace, msg: "unclosed fixture block".into() });
            }
            let fixture = p.build_fixture(&name, &entries, line, name_col)?;
            p.bind(Decl { name: name.clone(), body: Body::Fixture(entries.into_iter().map(|e| e.0).collect()) }, Value::Fixture(Box::new(fixture)));
            continue;
        }
        p.declaration(&mut c)?;
    }
    Ok(p.env)
}

fn parse_entry(c: &mut Cursor) -> Result<Entry, ParseError> {
    let (key, key_col) = c.ident()?;
    let entry = match key.as_str() {
        "group" => {
            c.expect_sym('=')?;
            Entry::Group(c.ident()?.0)
        }
        "p" => {
            c.expect_sym('=')?;
            Entry::P(c.small()?)
        }
        "X" => {
            c.expect_sym('=')?;
            let (n, _) = c.ident()?;
            Entry::Space(if n == "pt" { None } else { Some(n) })
        }
        "global" => {
            c.expect_sym('=')?;
            Entry::Global(c.ident()?.0)
        }
        "stabilizer" => {
            c.expect_sym('@')?;
            let x = c.small()?;
            c.expect_sym('=')?;
            Entry::Stabilizer(x, c.ident()?.0)
        }
        "centralizer" => {
            if c.is_ident("rank") {
                c.pos += 1;
                let r = c.small()?;
                c.expect_sym('=')?;
                Entry::CentralizerRank(r, c.ident()?.0)
            } else {
                let gens = c.gens()?;
                c.expect_sym('@')?;
                let x = c.small()?;
                c.expect_sym('=')?;
                Entry::CentralizerPair(gens, x, c.ident()?.0)
            }
        }
        "algebraic" => {
            c.expect_sym('=')?;
            Entry::Algebraic(c.ident()?.0)
        }
        "match" => {
            let prime = c.prime()?;
            c.expect_sym('=')?;
            let gens = c.gens()?;
            c.expect_sym('@')?;
            Entry::Match(prime, gens, c.small()?)
        }
        "restrict" => {
            let prime = c.prime()?;
            c.expect_sym('=')?;
            let (map, _) = c.ident()?;
            let target = if c.is_ident("at") {
                c.pos += 1;
                c.prime()?
            } else {
                Vec::new()
            };
            Entry::Restrict(prime, map, target)
        }
        "expect" => {
            let (side, side_col) = c.ident()?;
            c.expect_sym('=')?;
            let v = c.rational()?;
            match side.as_str() {
                "lhs" => Entry::ExpectLhs(v),
                "rhs" => Entry::ExpectRhs(v),
                _ => return Err(c.syntax_at(side_col, "expected `lhs` or `rhs`")),
            }
        }
        "convention" => {
            c.expect_sym('=')?;
            Entry::Convention(c.string()?.0)
        }
        "note" => {
            c.expect_sym('=')?;
            Entry::Note(c.string()?.0)
        }
        _ => return Err(c.syntax_at(key_col, format!("unknown fixture entry `{key}`"))),
    };
    Ok(entry)
}

impl Parser {
    fn check_fresh(&self, name: &str, line: usize, col: usize) -> Result<(), ParseError> {
        if self.env.values.contains_key(name) {
            return Err(ParseError::DuplicateName { line, col, name: name.to_string() });
        }
        Ok(())
    }

    fn bind(&mut self, decl: Decl, value: Value) {
        self.env.values.insert(decl.name.clone(), value);
        self.env.decls.push(decl);
    }

    fn lookup(&self, name: &str, kind: &str, line: usize, col: usize) -> Result<&Value, ParseError> {
        match self.env.values.get(name) {
            Some(v) if v.kind() == kind => Ok(v),
            Some(v) => Err(ParseError::Invalid { line, col, msg: format!("`{name}` is a {}, expected a {kind}", v.kind()) }),
            None => Err(ParseError::UnknownReference { line, col, name: name.to_string() }),
        }
    }

    fn ring(&self, name: &str, line: usize, col: usize) -> Result<WeightedRing, ParseError> {
        match self.lookup(name, "ring", line, col)? {
            Value::Ring(r) => Ok(r.clone()),
            _ => unreachable!(),
        }
    }

    fn group(&self, name: &str, line: usize, col: usize) -> Result<PermGroup, ParseError> {
        match self.lookup(name, "group", line, col)? {
            Value::Group(g) => Ok(g.clone()),
            _ => unreachable!(),
        }
    }

    fn declaration(&mut self, c: &mut Cursor) -> Result<(), ParseError> {
        let line = c.line;
        let (kind, kind_col) = c.ident()?;
        let (name, name_col) = c.ident()?;
        c.expect_sym('=')?;
        self.check_fresh(&name, line, name_col)?;
        let (body, value) = match kind.as_str() {
            "ring" => self.ring_decl(c)?,
            "ideal" => self.ideal_decl(c)?,
            "module" => self.module_decl(c)?,
            "group" => self.group_decl(c)?,
            "gset" => self.gset_decl(c)?,
            "model" => self.model_decl(c)?,
            "map" => self.map_decl(c)?,
            _ => return Err(c.syntax_at(kind_col, format!("unknown declaration `{kind}`"))),
        };
        c.finish()?;
        if kind == "ring" {
            self.last_ring = Some(name.clone());
        }
        self.bind(Decl { name, body }, value);
        Ok(())
    }

    fn ring_decl(&mut self, c: &mut Cursor) -> Result<(Body, Value), ParseError> {
        let line = c.line;
        let start = c.col();
        c.keyword("ring")?;
        let open = c.expect_sym('{')?;
        let mut vars = None;
        let mut weights = None;
        let mut p = None;
        loop {
            if c.at_end() {
                return Err(c.syntax_at(open, "unclosed `{`"));
            }
            if c.eat_sym('}') {
                break;
            }
            let (key, key_col) = c.ident()?;
            c.expect_sym('=')?;
            match key.as_str() {
                "vars" => vars = Some(c.list('[', ']', |c| c.ident().map(|v| v.0))?),
                "weights" => weights = Some(c.list('[', ']', |c| c.small::<u32>())?),
                "p" => p = Some(c.small::<u32>()?),
                _ => return Err(c.syntax_at(key_col, format!("unknown ring field `{key}`"))),
            }
            if !c.eat_sym(';') && !c.is_sym('}') && !c.at_end() {
                return Err(c.syntax("expected `;` or `}`"));
            }
        }
        let invalid = |msg: &str| ParseError::Invalid { line, col: start, msg: msg.to_string() };
        let vars = vars.ok_or_else(|| invalid("ring needs `vars`"))?;
        let weights = weights.ok_or_else(|| invalid("ring needs `weights`"))?;
        let p = p.ok_or_else(|| invalid("ring needs `p`"))?;
        if vars.len() != weights.len() {
            return Err(invalid("`vars` and `weights` differ in length"));
        }
        let ring = WeightedRing::with_names(vars.clone(), weights.clone(), p).map_err(|e| alg_err(e, line, start))?;
        Ok((Body::Ring { vars, weights, p }, Value::Ring(ring)))
    }

    fn exponents(&self, ring: &WeightedRing, m: &Monomial, line: usize, col: usize) -> Result<Vec<u32>, ParseError> {
        let mut e = vec![0u32; ring.nvars()];
        for (v, k) in m {
            let i = ring
                .var_index(v)
                .ok_or_else(|| ParseError::UnknownReference { line, col, name: v.clone() })?;
            e[i] += k;
        }
        Ok(e)
    }

    fn ideal_decl(&mut self, c: &mut Cursor) -> Result<(Body, Value), ParseError> {
        let line = c.line;
        let gens = c.list('[', ']', |c| c.string())?;
        let ring_name = if c.is_ident("over") {
            c.pos += 1;
            c.ident()?
        } else {
            let col = c.col();
            let r = self
                .last_ring
                .clone()
                .ok_or_else(|| ParseError::Invalid { line, col, msg: "no ring declared before this ideal".into() })?;
            (r, col)
        };
        let ring = self.ring(&ring_name.0, line, ring_name.1)?;
        let mut exps = Vec::new();
        for (g, col) in &gens {
            let m = parse_monomial_text(g).map_err(|msg| ParseError::Syntax { line, col: *col, msg })?;
            exps.push(self.exponents(&ring, &m, line, *col)?);
        }
        let ideal = MonIdeal::new(ring.nvars(), exps).map_err(|e| alg_err(e, line, 1))?;
        Ok((
            Body::Ideal { gens: gens.into_iter().map(|g| g.0).collect(), ring: ring_name.0.clone() },
            Value::Ideal { ring: ring_name.0, ideal },
        ))
    }

    fn module_decl(&mut self, c: &mut Cursor) -> Result<(Body, Value), ParseError> {
        let line = c.line;
        let mut summands = Vec::new();
        let mut parts = Vec::new();
        let mut ring_name: Option<String> = None;
        loop {
            let (r, r_col) = c.ident()?;
            let ring = self.ring(&r, line, r_col)?;
            c.expect_sym('/')?;
            let (ideal_name, ideal) = if c.peek() == Some(&Tok::Int(0)) {
                c.pos += 1;
                (None, MonIdeal::zero(ring.nvars()))
            } else {
                let (i, i_col) = c.ident()?;
                match self.lookup(&i, "ideal", line, i_col)? {
                    Value::Ideal { ring: ir, ideal } => {
                        if *ir != r {
                            return Err(ParseError::Invalid { line, col: i_col, msg: format!("`{i}` is not an ideal of `{r}`") });
                        }
                        (Some(i.clone()), ideal.clone())
                    }
                    _ => unreachable!(),
                }
            };
            let shift = if c.is_sym('(') {
                c.expect_sym('(')?;
                c.expect_sym('-')?;
                let k = c.small::<u32>()?;
                c.expect_sym(')')?;
                k
            } else {
                0
            };
            if let Some(prev) = &ring_name {
                if *prev != r {
                    return Err(ParseError::Invalid { line, col: r_col, msg: "summands over different rings".into() });
                }
            }
            ring_name = Some(r.clone());
            summands.push(Summand { ring: r, ideal: ideal_name, shift });
            parts.push((shift, ideal));
            if !c.eat_sym('+') {
                break;
            }
        }
        let ring = ring_name.expect("at least one summand");
        Ok((Body::Module { summands }, Value::Module { ring, module: GradedModule::new(parts) }))
    }

    fn perm(&self, cycles: &Cycles, degree: usize, line: usize, col: usize) -> Result<Perm, ParseError> {
        Perm::from_cycles(degree, cycles).map_err(|e| ParseError::BadPermutation { line, col, msg: e.to_string() })
    }

    fn group_decl(&mut self, c: &mut Cursor) -> Result<(Body, Value), ParseError> {
        let line = c.line;
        let col = c.col();
        let gens = c.gens()?;
        let degree = if c.is_ident("on") {
            c.pos += 1;
            Some(c.small::<usize>()?)
        } else {
            None
        };
        let max_point = gens.iter().flatten().flatten().map(|&x| x as usize + 1).max().unwrap_or(1);
        let n = degree.unwrap_or(max_point);
        if n < max_point {
            return Err(ParseError::BadPermutation { line, col, msg: format!("point {} outside 0..{n}", max_point - 1) });
        }
        let perms: Vec<Perm> = gens.iter().map(|g| self.perm(g, n, line, col)).collect::<Result<_, _>>()?;
        let g = PermGroup::generate(n, perms, self.bound).map_err(|e| group_err(e, line, col))?;
        Ok((Body::Group { gens, degree }, Value::Group(g)))
    }

    fn subgroup(&self, g: &PermGroup, gens: &[Cycles], line: usize, col: usize) -> Result<Subgroup, ParseError> {
        let perms: Vec<Perm> = gens.iter().map(|c| self.perm(c, g.degree(), line, col)).collect::<Result<_, _>>()?;
        g.subgroup_generated(&perms).map_err(|e| group_err(e, line, col))
    }

    fn gset_decl(&mut self, c: &mut Cursor) -> Result<(Body, Value), ParseError> {
        let line = c.line;
        let mut parts = Vec::new();
        let mut set: Option<GSet> = None;
        loop {
            let (kind, kind_col) = c.ident()?;
            let open = c.expect_sym('(')?;
            let (gname, g_col) = c.ident()?;
            let g = self.group(&gname, line, g_col)?;
            let (part, piece) = match kind.as_str() {
                "pt" => (GSetPart::Point(gname.clone()), GSet::point(&g)),
                "empty" => (GSetPart::Empty(gname.clone()), GSet::empty(&g)),
                "free" => {
                    c.expect_sym(',')?;
                    let n = c.small::<usize>()?;
                    (GSetPart::Free(gname.clone(), n), GSet::free(&g, n))
                }
                "cosets" => {
                    c.expect_sym(',')?;
                    let col = c.col();
                    let gens = c.gens()?;
                    let h = self.subgroup(&g, &gens, line, col)?;
                    (GSetPart::Cosets(gname.clone(), gens), GSet::cosets(&g, &h))
                }
                "table" => {
                    c.expect_sym(',')?;
                    let n = c.small::<usize>()?;
                    c.expect_sym(',')?;
                    let col = c.col();
                    let images = c.list('[', ']', |c| c.perm())?;
                    let perms: Vec<Perm> = images.iter().map(|p| self.perm(p, n, line, col)).collect::<Result<_, _>>()?;
                    let set = GSet::from_generator_action(&g, n, &perms).map_err(|e| group_err(e, line, col))?;
                    (GSetPart::Table(gname.clone(), n, images), set)
                }
                _ => return Err(c.syntax_at(kind_col, format!("unknown G-set constructor `{kind}`"))),
            };
            if c.at_end() {
                return Err(c.syntax_at(open, "unclosed `(`"));
            }
            c.expect_sym(')')?;
            if let Some(first) = parts.first() {
                let first: &GSetPart = first;
                if first.group() != gname {
                    return Err(ParseError::Invalid { line, col: g_col, msg: "G-set parts over different groups".into() });
                }
            }
            set = Some(match set {
                None => piece,
                Some(s) => s.union(&piece),
            });
            parts.push(part);
            if !c.eat_sym('+') {
                break;
            }
        }
        let group = parts[0].group().to_string();
        Ok((Body::GSet { parts }, Value::GSet { group, set: set.expect("one part") }))
    }

    fn model_decl(&mut self, c: &mut Cursor) -> Result<(Body, Value), ParseError> {
        let line = c.line;
        let (kind, kind_col) = c.ident()?;
        let open = c.expect_sym('(')?;
        let unclosed = |c: &Cursor| c.syntax_at(open, "unclosed `(`");
        let (expr, model) = match kind.as_str() {
            "trivial" => {
                if c.at_end() {
                    return Err(unclosed(c));
                }
                c.expect_sym(')')?;
                (ModelExpr::Trivial, CohModel::trivial())
            }
            "presented" => {
                let (r, r_col) = c.ident()?;
                let ring = self.ring(&r, line, r_col)?;
                c.expect_sym(',')?;
                let (i, i_col) = c.ident()?;
                let ideal = match self.lookup(&i, "ideal", line, i_col)? {
                    Value::Ideal { ring: ir, ideal } if *ir == r => ideal.clone(),
                    _ => return Err(ParseError::Invalid { line, col: i_col, msg: format!("`{i}` is not an ideal of `{r}`") }),
                };
                if c.at_end() {
                    return Err(unclosed(c));
                }
                c.expect_sym(')')?;
                (ModelExpr::Presented { ring: r, ideal: i }, CohModel::Presented { ring, ideal })
            }
            "elemab" | "series" => {
                let mut fields: BTreeMap<String, (Nested, usize)> = BTreeMap::new();
                let mut note = None;
                loop {
                    if c.at_end() {
                        return Err(unclosed(c));
                    }
                    if c.eat_sym(')') {
                        break;
                    }
                    let (key, key_col) = c.ident()?;
                    c.expect_sym('=')?;
                    if key == "note" {
                        note = Some(c.string()?.0);
                    } else {
                        let col = c.col();
                        let v = nested(c)?;
                        if fields.insert(key.clone(), (v, col)).is_some() {
                            return Err(c.syntax_at(key_col, format!("`{key}` given twice")));
                        }
                    }
                    if !c.eat_sym(',') && !c.is_sym(')') && !c.at_end() {
                        return Err(c.syntax("expected `,` or `)`"));
                    }
                }
                self.keyed_model(&kind, fields, note, line, kind_col)?
            }
            _ => return Err(c.syntax_at(kind_col, format!("unknown model `{kind}`"))),
        };
        Ok((Body::Model(expr), Value::Model(model)))
    }

    fn keyed_model(
        &self,
        kind: &str,
        mut fields: BTreeMap<String, (Nested, usize)>,
        note: Option<String>,
        line: usize,
        col: usize,
    ) -> Result<(ModelExpr, CohModel), ParseError> {
        let invalid = |col: usize, msg: String| ParseError::Invalid { line, col, msg };
        let mut int = |key: &str| -> Result<Option<i64>, ParseError> {
            match fields.remove(key) {
                None => Ok(None),
                Some((Nested::Int(v), _)) => Ok(Some(v)),
                Some((_, col)) => Err(invalid(col, format!("`{key}` must be an integer"))),
            }
        };
        if kind == "elemab" {
            let rank = int("rank")?.ok_or_else(|| invalid(col, "elemab needs `rank`".into()))?;
            let p = int("p")?.ok_or_else(|| invalid(col, "elemab needs `p`".into()))?;
            if let Some(k) = fields.keys().next() {
                return Err(invalid(col, format!("unexpected field `{k}`")));
            }
            if note.is_some() {
                return Err(invalid(col, "unexpected field `note`".into()));
            }
            let (rank, p) = (u32::try_from(rank).map_err(|_| invalid(col, "bad rank".into()))?, u32::try_from(p).map_err(|_| invalid(col, "bad prime".into()))?);
            if !is_prime(p) {
                return Err(invalid(col, format!("{p} is not prime")));
            }
            return Ok((ModelExpr::ElemAb { rank, p }, CohModel::ElementaryAbelian { rank, p }));
        }
        let dim = int("dim")?.ok_or_else(|| invalid(col, "series needs `dim`".into()))?;
        let p = int("p")?.map(|v| u32::try_from(v).map_err(|_| invalid(col, "bad prime".into()))).transpose()?;
        let flat = |fields: &mut BTreeMap<String, (Nested, usize)>, key: &str| -> Result<Vec<i64>, ParseError> {
            match fields.remove(key) {
                Some((Nested::List(xs), col)) => xs
                    .into_iter()
                    .map(|x| match x {
                        Nested::Int(v) => Ok(v),
                        _ => Err(invalid(col, format!("`{key}` must be a list of integers"))),
                    })
                    .collect(),
                Some((_, col)) => Err(invalid(col, format!("`{key}` must be a list"))),
                None => Err(invalid(col, format!("series needs `{key}`"))),
            }
        };
        let num = flat(&mut fields, "num")?;
        let den_col = fields.get("den").map_or(col, |v| v.1);
        let den: Vec<u32> = flat(&mut fields, "den")?
            .into_iter()
            .map(|w| u32::try_from(w).ok().filter(|&w| w > 0).ok_or_else(|| invalid(den_col, "weights must be positive".into())))
            .collect::<Result<_, _>>()?;
        let action = match fields.remove("action") {
            None => None,
            Some((n, acol)) => match nested_depth(&n) {
                Some(2) => Some(vec![matrix(&n)]),
                Some(3) => {
                    let Nested::List(ms) = &n else { unreachable!() };
                    Some(ms.iter().map(matrix).collect())
                }
                _ => return Err(invalid(acol, "`action` must be a matrix or a list of matrices".into())),
            },
        };
        if let Some(k) = fields.keys().next() {
            return Err(invalid(col, format!("unexpected field `{k}`")));
        }
        let series = SeriesExpr::from_i64(&num, &den).map_err(|e| invalid(col, e.to_string()))?;
        let spec = action.clone().map(|gens| ActionSpec { gens, p });
        let note = note.unwrap_or_default();
        let model = CohModel::series_only(series, dim, note.clone(), spec).map_err(|e| coh_err(e, line, col))?;
        Ok((ModelExpr::Series { num, den, dim, note, p, action }, model))
    }

    fn map_decl(&mut self, c: &mut Cursor) -> Result<(Body, Value), ParseError> {
        let line = c.line;
        let (s, s_col) = c.ident()?;
        let source = self.ring(&s, line, s_col)?;
        c.expect_arrow()?;
        let (t, t_col) = c.ident()?;
        let target = self.ring(&t, line, t_col)?;
        let open = c.expect_sym('{')?;
        let mut images: Vec<(String, Option<Monomial>)> = Vec::new();
        let mut slots: Vec<Option<Option<Vec<u32>>>> = vec![None; source.nvars()];
        loop {
            if c.at_end() {
                return Err(c.syntax_at(open, "unclosed `{`"));
            }
            if c.eat_sym('}') {
                break;
            }
            let (v, v_col) = c.ident()?;
            let i = source.var_index(&v).ok_or_else(|| ParseError::UnknownReference { line, col: v_col, name: v.clone() })?;
            c.expect_arrow()?;
            let img_col = c.col();
            let img = if c.peek() == Some(&Tok::Int(0)) {
                c.pos += 1;
                None
            } else {
                Some(c.monomial()?)
            };
            if slots[i].is_some() {
                return Err(ParseError::Invalid { line, col: v_col, msg: format!("`{v}` mapped twice") });
            }
            slots[i] = Some(match &img {
                None => None,
                Some(m) => Some(self.exponents(&target, m, line, img_col)?),
            });
            images.push((v, img));
            if !c.eat_sym(',') && !c.is_sym('}') && !c.at_end() {
                return Err(c.syntax("expected `,` or `}`"));
            }
        }
        let mut resolved = Vec::with_capacity(slots.len());
        for (i, s) in slots.into_iter().enumerate() {
            match s {
                Some(img) => resolved.push(img),
                None => {
                    return Err(ParseError::Invalid { line, col: open, msg: format!("no image for `{}`", source.names()[i]) })
                }
            }
        }
        let map = MonRingMap::new(source, target, resolved).map_err(|e| alg_err(e, line, open))?;
        Ok((Body::Map { source: s, target: t, images }, Value::Map(map)))
    }

    fn build_fixture(
        &self,
        name: &str,
        entries: &[(Entry, usize, usize)],
        line: usize,
        col: usize,
    ) -> Result<Fixture, ParseError> {
        let find = |pred: &dyn Fn(&Entry) -> bool| entries.iter().filter(|(e, _, _)| pred(e)).collect::<Vec<_>>();
        let single = |what: &str, pred: &dyn Fn(&Entry) -> bool| -> Result<Option<&(Entry, usize, usize)>, ParseError> {
            let hits = find(pred);
            if hits.len() > 1 {
                let (_, l, c) = hits[1];
                return Err(ParseError::Invalid { line: *l, col: *c, msg: format!("`{what}` given twice") });
            }
            Ok(hits.first().copied())
        };
        let (gname, gl, gc) = match single("group", &|e| matches!(e, Entry::Group(_)))? {
            Some((Entry::Group(g), l, c)) => (g.clone(), *l, *c),
            _ => return Err(ParseError::Invalid { line, col, msg: "fixture needs `group`".into() }),
        };
        let group = self.group(&gname, gl, gc)?;
        let p = match single("p", &|e| matches!(e, Entry::P(_)))? {
            Some((Entry::P(p), l, c)) => {
                if !is_prime(*p) {
                    return Err(ParseError::Invalid { line: *l, col: *c, msg: format!("{p} is not prime") });
                }
                *p
            }
            _ => return Err(ParseError::Invalid { line, col, msg: "fixture needs `p`".into() }),
        };
        let space = match single("X", &|e| matches!(e, Entry::Space(_)))? {
            Some((Entry::Space(Some(x)), l, c)) => match self.lookup(x, "gset", *l, *c)? {
                Value::GSet { group: g, set } => {
                    if *g != gname {
                        return Err(ParseError::Invalid { line: *l, col: *c, msg: format!("`{x}` is a G-set for `{g}`") });
                    }
                    set.clone()
                }
                _ => unreachable!(),
            },
            _ => GSet::point(&group),
        };
        let mut f = Fixture::new(name, group, p, space);
        let model = |m: &str, l: usize, c: usize| -> Result<CohModel, ParseError> {
            match self.lookup(m, "model", l, c)? {
                Value::Model(m) => Ok(m.clone()),
                _ => unreachable!(),
            }
        };
        let pair = |f: &Fixture, gens: &[Cycles], x: usize, l: usize, c: usize| -> Result<QuillenPair, ParseError> {
            let a = self.subgroup(&f.group, gens, l, c)?;
            if x >= f.space.npoints() {
                return Err(ParseError::Invalid { line: l, col: c, msg: format!("no point {x}") });
            }
            let q = QuillenPair { a, point: x };
            if !q.a.is_elementary_abelian(&f.group, f.p) || f.space.fixed_points(&q.a).binary_search(&x).is_err() {
                return Err(ParseError::Invalid { line: l, col: c, msg: "not a Quillen pair".into() });
            }
            Ok(q)
        };
        let mut alg: Option<AlgebraicSide> = None;
        if let Some((Entry::Algebraic(m), l, c)) = single("algebraic", &|e| matches!(e, Entry::Algebraic(_)))? {
            let (ring, module) = match self.env.values.get(m) {
                Some(Value::Module { ring, module }) => (self.ring(ring, *l, *c)?, module.clone()),
                Some(Value::Ideal { ring, ideal }) => (self.ring(ring, *l, *c)?, GradedModule::quotient(ideal.clone())),
                Some(v) => return Err(ParseError::Invalid { line: *l, col: *c, msg: format!("`{m}` is a {}, expected a module", v.kind()) }),
                None => return Err(ParseError::UnknownReference { line: *l, col: *c, name: m.clone() }),
            };
            alg = Some(AlgebraicSide { ring, module, matching: Vec::new(), restrictions: Vec::new() });
        }
        let prime_in = |ring: &WeightedRing, vars: &[String], l: usize, c: usize| -> Result<MonPrime, ParseError> {
            let idx = vars
                .iter()
                .map(|v| ring.var_index(v).ok_or_else(|| ParseError::UnknownReference { line: l, col: c, name: v.clone() }))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(MonPrime::new(idx))
        };
        for (e, l, c) in entries {
            let (l, c) = (*l, *c);
            match e {
                Entry::Group(_) | Entry::P(_) | Entry::Space(_) | Entry::Algebraic(_) => {}
                Entry::Global(m) => {
                    if f.global_model.is_some() {
                        return Err(ParseError::Invalid { line: l, col: c, msg: "`global` given twice".into() });
                    }
                    f.global_model = Some(model(m, l, c)?);
                }
                Entry::Stabilizer(x, m) => {
                    if *x >= f.space.npoints() {
                        return Err(ParseError::Invalid { line: l, col: c, msg: format!("no point {x}") });
                    }
                    f.stabilizer_models.push((*x, model(m, l, c)?));
                }
                Entry::CentralizerRank(r, m) => f.centralizer_models.push((ClassSelector::Rank(*r), model(m, l, c)?)),
                Entry::CentralizerPair(gens, x, m) => {
                    let q = pair(&f, gens, *x, l, c)?;
                    f.centralizer_models.push((ClassSelector::Pair(q), model(m, l, c)?));
                }
                Entry::Match(vars, gens, x) => {
                    let q = pair(&f, gens, *x, l, c)?;
                    let side = alg
                        .as_mut()
                        .ok_or_else(|| ParseError::Invalid { line: l, col: c, msg: "`match` needs `algebraic`".into() })?;
                    let prime = prime_in(&side.ring, vars, l, c)?;
                    side.matching.push((prime, q));
                }
                Entry::Restrict(vars, m, target) => {
                    let map = match self.lookup(m, "map", l, c)? {
                        Value::Map(map) => map.clone(),
                        _ => unreachable!(),
                    };
                    let side = alg
                        .as_mut()
                        .ok_or_else(|| ParseError::Invalid { line: l, col: c, msg: "`restrict` needs `algebraic`".into() })?;
                    if *map.source() != side.ring {
                        return Err(ParseError::Invalid { line: l, col: c, msg: format!("`{m}` does not start at the algebraic ring") });
                    }
                    let prime = prime_in(&side.ring, vars, l, c)?;
                    let target = prime_in(map.target(), target, l, c)?;
                    side.restrictions.push(Restriction { prime, map, target });
                }
                Entry::ExpectLhs(v) => f.expected_lhs = Some(v.clone()),
                Entry::ExpectRhs(v) => f.expected_rhs = Some(v.clone()),
                Entry::Convention(s) => f.convention = s.clone(),
                Entry::Note(s) => f.note = s.clone(),
            }
        }
        f.algebraic = alg;
        Ok(f)
    }
}

fn alg_err(e: AlgebraError, line: usize, col: usize) -> ParseError {
    match e {
        AlgebraError::CapacityExceeded { .. } => ParseError::Capacity { line, col, msg: e.to_string() },
        _ => ParseError::Invalid { line, col, msg: e.to_string() },
    }
}

fn group_err(e: GroupError, line: usize, col: usize) -> ParseError {
    match e {
        GroupError::GroupTooLarge { .. } => ParseError::Capacity { line, col, msg: e.to_string() },
        GroupError::BadPermutation(_) => ParseError::BadPermutation { line, col, msg: e.to_string() },
        _ => ParseError::Invalid { line, col, msg: e.to_string() },
    }
}

fn coh_err(e: CohError, line: usize, col: usize) -> ParseError {
    match e {
        CohError::GroupTooLarge { .. } => ParseError::Capacity { line, col, msg: e.to_string() },
        _ => ParseError::Invalid { line, col, msg: e.to_string() },
    }
}

// ----------------------------------------------------------------- printing

fn join<T>(xs: &[T], f: impl Fn(&T) -> String) -> String {
    xs.iter().map(f).collect::<Vec<_>>().join(", ")
}

fn cycles_str(c: &Cycles) -> String {
    if c.is_empty() {
        return "()".into();
    }
    c.iter()
        .map(|cy| format!("({})", cy.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")))
        .collect()
}

fn gens_str(g: &[Cycles]) -> String {
    format!("<{}>", join(g, cycles_str))
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(ch),
        }
    }
    out.push('"');
    out
}

fn monomial_str(m: &Monomial) -> String {
    if m.is_empty() {
        return "1".into();
    }
    m.iter()
        .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

fn prime_str(vars: &[String]) -> String {
    if vars.is_empty() {
        "(0)".into()
    } else {
        format!("({})", vars.join(", "))
    }
}

fn matrix_str(m: &[Vec<i64>]) -> String {
    format!("[{}]", join(m, |row| format!("[{}]", join(row, |x| x.to_string()))))
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Group(g) => write!(f, "group = {g}"),
            Entry::P(p) => write!(f, "p = {p}"),
            Entry::Space(None) => write!(f, "X = pt"),
            Entry::Space(Some(x)) => write!(f, "X = {x}"),
            Entry::Global(m) => write!(f, "global = {m}"),
            Entry::Stabilizer(x, m) => write!(f, "stabilizer @ {x} = {m}"),
            Entry::CentralizerRank(r, m) => write!(f, "centralizer rank {r} = {m}"),
            Entry::CentralizerPair(g, x, m) => write!(f, "centralizer {} @ {x} = {m}", gens_str(g)),
            Entry::Algebraic(m) => write!(f, "algebraic = {m}"),
            Entry::Match(q, g, x) => write!(f, "match {} = {} @ {x}", prime_str(q), gens_str(g)),
            Entry::Restrict(q, m, t) if t.is_empty() => write!(f, "restrict {} = {m}", prime_str(q)),
            Entry::Restrict(q, m, t) => write!(f, "restrict {} = {m} at {}", prime_str(q), prime_str(t)),
            Entry::ExpectLhs(v) => write!(f, "expect lhs = {v}"),
            Entry::ExpectRhs(v) => write!(f, "expect rhs = {v}"),
            Entry::Convention(s) => write!(f, "convention = {}", quote(s)),
            Entry::Note(s) => write!(f, "note = {}", quote(s)),
        }
    }
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = &self.name;
        match &self.body {
            Body::Ring { vars, weights, p } => {
                write!(f, "ring {n} = ring {{ vars=[{}]; weights=[{}]; p={p} }}", vars.join(", "), join(weights, |w| w.to_string()))
            }
            Body::Ideal { gens, ring } => write!(f, "ideal {n} = [{}] over {ring}", join(gens, |g| quote(g))),
            Body::Module { summands } => {
                let parts: Vec<String> = summands
                    .iter()
                    .map(|s| {
                        let mut out = format!("{}/{}", s.ring, s.ideal.as_deref().unwrap_or("0"));
                        if s.shift > 0 {
                            let _ = write!(out, "(-{})", s.shift);
                        }
                        out
                    })
                    .collect();
                write!(f, "module {n} = {}", parts.join(" + "))
            }
            Body::Group { gens, degree } => {
                write!(f, "group {n} = {}", gens_str(gens))?;
                if let Some(d) = degree {
                    write!(f, " on {d}")?;
                }
                Ok(())
            }
            Body::GSet { parts } => {
                let parts: Vec<String> = parts
                    .iter()
                    .map(|p| match p {
                        GSetPart::Point(g) => format!("pt({g})"),
                        GSetPart::Empty(g) => format!("empty({g})"),
                        GSetPart::Free(g, k) => format!("free({g}, {k})"),
                        GSetPart::Cosets(g, h) => format!("cosets({g}, {})", gens_str(h)),
                        GSetPart::Table(g, k, imgs) => format!("table({g}, {k}, [{}])", join(imgs, cycles_str)),
                    })
                    .collect();
                write!(f, "gset {n} = {}", parts.join(" + "))
            }
            Body::Model(m) => match m {
                ModelExpr::Trivial => write!(f, "model {n} = trivial()"),
                ModelExpr::ElemAb { rank, p } => write!(f, "model {n} = elemab(rank={rank}, p={p})"),
                ModelExpr::Presented { ring, ideal } => write!(f, "model {n} = presented({ring}, {ideal})"),
                ModelExpr::Series { num, den, dim, note, p, action } => {
                    write!(f, "model {n} = series(num=[{}], den=[{}], dim={dim}", join(num, |x| x.to_string()), join(den, |x| x.to_string()))?;
                    if !note.is_empty() {
                        write!(f, ", note={}", quote(note))?;
                    }
                    if let Some(p) = p {
                        write!(f, ", p={p}")?;
                    }
                    match action.as_deref() {
                        None => {}
                        Some([m]) => write!(f, ", action={}", matrix_str(m))?,
                        Some(ms) => write!(f, ", action=[{}]", join(ms, |m| matrix_str(m)))?,
                    }
                    write!(f, ")")
                }
            },
            Body::Map { source, target, images } => {
                let imgs = join(images, |(v, m)| match m {
                    None => format!("{v} -> 0"),
                    Some(m) => format!("{v} -> {}", monomial_str(m)),
                });
                write!(f, "map {n} = {source} -> {target} {{ {imgs} }}")
            }
            Body::Fixture(entries) => {
                writeln!(f, "fixture {n} {{")?;
                for e in entries {
                    writeln!(f, "  {e}")?;
                }
                write!(f, "}}")
            }
        }
    }
}

impl fmt::Display for Env {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}
