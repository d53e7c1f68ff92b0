//! The session-file language: named maps, ideals, points, fiber tuples,
//! and arcs, in a small declarative grammar with exact rational literals.
//!
//! ```text
//! # a comment
//! map cusp : R^1 -> R^2 { y1 = x1^2; y2 = x1^3; }
//! ideal I = < y2^2 - y1^3 >
//! point origin = (0)
//! fiber F over cusp = [ (0) ]
//! arc g(w) for cusp = [ (w) ]
//! ```
//!
//! Maps use `x1..xm` on the right-hand sides and must define `y1..yn` in
//! order; ideal generators use `y1, y2, ...` with the dimension inferred
//! from the highest index; arcs use their declared parameter. Numeric
//! literals are integers or fractions `p/q` — decimals are errors, not
//! approximations. Every error carries the line and column it was noticed
//! at, and semantic failures (duplicate names, unresolved references,
//! dimension mismatches, incoherent fibers or arcs) are reported the same
//! way, positioned at the offending declaration.

use std::collections::BTreeMap;
use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::ideals::IdealPresentation;
use crate::jets::{FiberTuple, PolynomialMap};
use crate::multiindex::{Diagram, MultiIndex};
use crate::scalar::Q;
use crate::series::TruncatedSeries;
use crate::strata::Arc;

/// A syntax or session-level semantic error with its source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: u32,
    pub column: u32,
    pub message: String,
}

impl ParseError {
    fn new(line: u32, column: u32, message: impl Into<String>) -> Self {
        ParseError { line, column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

type PResult<T> = std::result::Result<T, ParseError>;

// ---------------------------------------------------------------- lexing

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Punct(&'static str),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(s) => format!("integer `{s}`"),
            Tok::Punct(p) => format!("`{p}`"),
        }
    }

    fn width(&self) -> u32 {
        match self {
            Tok::Ident(s) | Tok::Int(s) => s.len() as u32,
            Tok::Punct(p) => p.len() as u32,
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: u32,
    column: u32,
}

const PUNCTS: &[&str] = &[
    "->", ":", "^", "{", "}", "(", ")", "[", "]", "<", ">", "=", ";", ",", "/", "*", "+", "-",
];

fn tokenize(text: &str) -> PResult<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut line: u32 = 1;
    let mut column: u32 = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                column += 1;
            }
            continue;
        }
        let start_col = column;
        if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    digits.push(d);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            if chars.peek() == Some(&'.') {
                return Err(ParseError::new(
                    line,
                    start_col,
                    "decimal literals are not supported; write an exact fraction p/q",
                ));
            }
            tokens.push(Token { tok: Tok::Int(digits), line, column: start_col });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut ident = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    ident.push(d);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            tokens.push(Token { tok: Tok::Ident(ident), line, column: start_col });
            continue;
        }
        if c == '-' {
            chars.next();
            column += 1;
            if chars.peek() == Some(&'>') {
                chars.next();
                column += 1;
                tokens.push(Token { tok: Tok::Punct("->"), line, column: start_col });
            } else {
                tokens.push(Token { tok: Tok::Punct("-"), line, column: start_col });
            }
            continue;
        }
        if let Some(&p) = PUNCTS.iter().find(|p| p.len() == 1 && p.starts_with(c)) {
            chars.next();
            column += 1;
            tokens.push(Token { tok: Tok::Punct(p), line, column: start_col });
            continue;
        }
        return Err(ParseError::new(line, start_col, format!("unexpected character `{c}`")));
    }
    Ok(tokens)
}

// --------------------------------------------------------------- parsing

/// A parsed polynomial before its ambient dimension is known: terms keyed
/// by variable index (0-based) with their powers.
#[derive(Debug, Clone)]
struct PolyAst {
    terms: Vec<(Q, BTreeMap<usize, u32>)>,
}

impl PolyAst {
    fn constant(q: Q) -> Self {
        PolyAst { terms: vec![(q, BTreeMap::new())] }
    }

    fn var(index: usize) -> Self {
        PolyAst { terms: vec![(crate::scalar::q_one(), BTreeMap::from([(index, 1)]))] }
    }

    fn neg(mut self) -> Self {
        for (c, _) in &mut self.terms {
            *c = -c.clone();
        }
        self
    }

    fn add(mut self, other: PolyAst) -> Self {
        self.terms.extend(other.terms);
        self
    }

    fn mul(&self, other: &PolyAst) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (c1, e1) in &self.terms {
            for (c2, e2) in &other.terms {
                let mut e = e1.clone();
                for (&v, &p) in e2 {
                    *e.entry(v).or_insert(0) += p;
                }
                terms.push((c1 * c2, e));
            }
        }
        PolyAst { terms }
    }

    fn pow(&self, exponent: u32) -> Self {
        let mut out = PolyAst::constant(crate::scalar::q_one());
        for _ in 0..exponent {
            out = out.mul(self);
        }
        out
    }

    fn max_var(&self) -> Option<usize> {
        self.terms.iter().flat_map(|(_, e)| e.keys().copied()).max()
    }

    fn lower(&self, dim: usize) -> TruncatedSeries {
        let terms: Vec<(MultiIndex, Q)> = self
            .terms
            .iter()
            .map(|(c, e)| {
                let mut entries = vec![0u32; dim];
                for (&v, &p) in e {
                    entries[v] = p;
                }
                (MultiIndex::new(entries), c.clone())
            })
            .collect();
        TruncatedSeries::from_terms(dim, None, terms)
            .expect("lowered exponents share the dimension")
    }
}

/// Which variables an expression may mention.
enum VarContext {
    /// `x1..xm` for map components.
    Source(usize),
    /// `y1, y2, ...`, any index up to `limit` (`None` = unconstrained).
    Target { limit: Option<usize> },
    /// Exactly the arc parameter.
    Parameter(String),
}

impl VarContext {
    fn resolve(&self, name: &str) -> Result<usize, String> {
        match self {
            VarContext::Source(m) => match strip_indexed(name, 'x') {
                Some(i) if (1..=*m).contains(&i) => Ok(i - 1),
                Some(_) => Err(format!("variable `{name}` is out of range; the source has {m} variable(s)")),
                None => Err(format!("unknown variable `{name}`; map components use x1..x{m}")),
            },
            VarContext::Target { limit } => match strip_indexed(name, 'y') {
                Some(i) => match limit {
                    Some(n) if i > *n => Err(format!(
                        "variable `{name}` is out of range; expected y1..y{n}"
                    )),
                    _ => Ok(i - 1),
                },
                None => Err(format!("unknown variable `{name}`; use y1, y2, ...")),
            },
            VarContext::Parameter(p) => {
                if name == p {
                    Ok(0)
                } else {
                    Err(format!("unknown variable `{name}`; the arc parameter is `{p}`"))
                }
            }
        }
    }
}

/// `x7` -> `Some(7)` for prefix `x`; rejects `x0` and `x01`.
fn strip_indexed(name: &str, prefix: char) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || rest.starts_with('0') || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (u32, u32),
}

impl Parser {
    fn new(text: &str) -> PResult<Self> {
        let tokens = tokenize(text)?;
        let end = tokens
            .last()
            .map(|t| (t.line, t.column + t.tok.width()))
            .unwrap_or((1, 1));
        Ok(Parser { tokens, pos: 0, end })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> (u32, u32) {
        self.peek().map(|t| (t.line, t.column)).unwrap_or(self.end)
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let (line, column) = self.here();
        ParseError::new(line, column, message)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect_punct(&mut self, p: &'static str) -> PResult<()> {
        match self.peek() {
            Some(t) if t.tok == Tok::Punct(p) => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(ParseError::new(
                t.line,
                t.column,
                format!("expected `{p}`, found {}", t.tok.describe()),
            )),
            None => Err(self.error_here(format!("expected `{p}`, found end of input"))),
        }
    }

    fn eat_punct(&mut self, p: &'static str) -> bool {
        if let Some(t) = self.peek() {
            if t.tok == Tok::Punct(p) {
                self.pos += 1;
                return true;
            }
        }
        false
    }

    fn expect_ident(&mut self, what: &str) -> PResult<(String, u32, u32)> {
        match self.peek().cloned() {
            Some(Token { tok: Tok::Ident(s), line, column }) => {
                self.pos += 1;
                Ok((s, line, column))
            }
            Some(t) => Err(ParseError::new(
                t.line,
                t.column,
                format!("expected {what}, found {}", t.tok.describe()),
            )),
            None => Err(self.error_here(format!("expected {what}, found end of input"))),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<()> {
        let (word, line, column) = self.expect_ident(&format!("`{kw}`"))?;
        if word == kw {
            Ok(())
        } else {
            Err(ParseError::new(line, column, format!("expected `{kw}`, found `{word}`")))
        }
    }

    fn expect_uint(&mut self, what: &str) -> PResult<u32> {
        match self.peek().cloned() {
            Some(Token { tok: Tok::Int(digits), line, column }) => {
                self.pos += 1;
                digits.parse().map_err(|_| {
                    ParseError::new(line, column, format!("{what} `{digits}` is too large"))
                })
            }
            Some(t) => Err(ParseError::new(
                t.line,
                t.column,
                format!("expected {what}, found {}", t.tok.describe()),
            )),
            None => Err(self.error_here(format!("expected {what}, found end of input"))),
        }
    }

    /// `['-'] INT ['/' INT]` as an exact rational.
    fn rational(&mut self) -> PResult<Q> {
        let negative = self.eat_punct("-");
        let (digits, line, column) = match self.advance() {
            Some(Token { tok: Tok::Int(d), line, column }) => (d, line, column),
            Some(t) => {
                return Err(ParseError::new(
                    t.line,
                    t.column,
                    format!("expected a number, found {}", t.tok.describe()),
                ))
            }
            None => return Err(self.error_here("expected a number, found end of input")),
        };
        let numerator: BigInt = digits.parse().expect("lexer produced digits");
        let denominator: BigInt = if self.eat_punct("/") {
            let (d2, l2, c2) = match self.advance() {
                Some(Token { tok: Tok::Int(d), line, column }) => (d, line, column),
                Some(t) => {
                    return Err(ParseError::new(
                        t.line,
                        t.column,
                        format!("expected a denominator, found {}", t.tok.describe()),
                    ))
                }
                None => return Err(self.error_here("expected a denominator, found end of input")),
            };
            let den: BigInt = d2.parse().expect("lexer produced digits");
            if den.is_zero() {
                return Err(ParseError::new(l2, c2, "denominator must be nonzero"));
            }
            den
        } else {
            BigInt::one()
        };
        let _ = (line, column);
        let q = Q::new(numerator, denominator);
        Ok(if negative { -q } else { q })
    }

    // expression grammar: expr := term (('+'|'-') term)*
    //                     term := ['-'] factor ('*' factor)*
    //                     factor := atom ['^' INT]
    //                     atom := INT ['/' INT] | VAR | '(' expr ')'
    fn expr(&mut self, ctx: &VarContext) -> PResult<PolyAst> {
        let mut acc = self.term(ctx)?;
        loop {
            if self.eat_punct("+") {
                acc = acc.add(self.term(ctx)?);
            } else if self.eat_punct("-") {
                acc = acc.add(self.term(ctx)?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, ctx: &VarContext) -> PResult<PolyAst> {
        let negate = self.eat_punct("-");
        let mut acc = self.factor(ctx)?;
        while self.eat_punct("*") {
            acc = acc.mul(&self.factor(ctx)?);
        }
        Ok(if negate { acc.neg() } else { acc })
    }

    fn factor(&mut self, ctx: &VarContext) -> PResult<PolyAst> {
        let base = self.atom(ctx)?;
        if self.eat_punct("^") {
            let e = self.expect_uint("exponent")?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self, ctx: &VarContext) -> PResult<PolyAst> {
        match self.peek().cloned() {
            Some(Token { tok: Tok::Int(_), .. }) => {
                let q = self.rational()?;
                Ok(PolyAst::constant(q))
            }
            Some(Token { tok: Tok::Ident(name), line, column }) => {
                self.pos += 1;
                match ctx.resolve(&name) {
                    Ok(index) => Ok(PolyAst::var(index)),
                    Err(msg) => Err(ParseError::new(line, column, msg)),
                }
            }
            Some(Token { tok: Tok::Punct("("), .. }) => {
                self.pos += 1;
                let inner = self.expr(ctx)?;
                self.expect_punct(")")?;
                Ok(inner)
            }
            Some(t) => Err(ParseError::new(
                t.line,
                t.column,
                format!("expected a polynomial, found {}", t.tok.describe()),
            )),
            None => Err(self.error_here("expected a polynomial, found end of input")),
        }
    }
}

// --------------------------------------------------------------- session

/// All declarations of a session file, resolved and validated.
#[derive(Debug, Clone, Default)]
pub struct SessionFile {
    maps: Vec<(String, PolynomialMap)>,
    ideals: Vec<(String, IdealPresentation)>,
    points: Vec<(String, Vec<Q>)>,
    fibers: Vec<(String, FiberTuple)>,
    arcs: Vec<(String, Arc)>,
}

impl SessionFile {
    pub fn map(&self, name: &str) -> Option<&PolynomialMap> {
        self.maps.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn ideal(&self, name: &str) -> Option<&IdealPresentation> {
        self.ideals.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }

    pub fn point(&self, name: &str) -> Option<&[Q]> {
        self.points.iter().find(|(n, _)| n == name).map(|(_, p)| p.as_slice())
    }

    pub fn fiber(&self, name: &str) -> Option<&FiberTuple> {
        self.fibers.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }

    pub fn arc(&self, name: &str) -> Option<&Arc> {
        self.arcs.iter().find(|(n, _)| n == name).map(|(_, a)| a)
    }
}

/// Parses a full session file.
pub fn parse_session(text: &str) -> PResult<SessionFile> {
    let mut parser = Parser::new(text)?;
    let mut session = SessionFile::default();
    let mut names: HashSet<String> = HashSet::new();
    while parser.peek().is_some() {
        let (keyword, kw_line, kw_col) = parser.expect_ident("a declaration keyword")?;
        let (name, name_line, name_col) = parser.expect_ident("a name")?;
        if !names.insert(name.clone()) {
            return Err(ParseError::new(
                name_line,
                name_col,
                format!("the name `{name}` is already declared"),
            ));
        }
        match keyword.as_str() {
            "map" => {
                let map = parse_map_body(&mut parser)?;
                session.maps.push((name, map));
            }
            "ideal" => {
                let ideal = parse_ideal_body(&mut parser, &name)?;
                session.ideals.push((name, ideal));
            }
            "point" => {
                parser.expect_punct("=")?;
                let coords = parse_point_tuple(&mut parser, None)?;
                session.points.push((name, coords));
            }
            "fiber" => {
                let fiber = parse_fiber_body(&mut parser, &session, (name_line, name_col))?;
                session.fibers.push((name, fiber));
            }
            "arc" => {
                let arc = parse_arc_body(&mut parser, &session, (name_line, name_col))?;
                session.arcs.push((name, arc));
            }
            other => {
                return Err(ParseError::new(
                    kw_line,
                    kw_col,
                    format!(
                        "unknown declaration `{other}`; expected map, ideal, point, fiber, or arc"
                    ),
                ));
            }
        }
    }
    Ok(session)
}

fn parse_map_body(parser: &mut Parser) -> PResult<PolynomialMap> {
    parser.expect_punct(":")?;
    parser.expect_keyword("R")?;
    parser.expect_punct("^")?;
    let m = parser.expect_uint("source dimension")? as usize;
    parser.expect_punct("->")?;
    parser.expect_keyword("R")?;
    parser.expect_punct("^")?;
    let n = parser.expect_uint("target dimension")? as usize;
    if m == 0 || n == 0 {
        return Err(parser.error_here("dimensions must be at least 1"));
    }
    parser.expect_punct("{")?;
    let ctx = VarContext::Source(m);
    let mut components = Vec::with_capacity(n);
    for i in 1..=n {
        let (label, line, column) = parser.expect_ident("a component label")?;
        if strip_indexed(&label, 'y') != Some(i) {
            return Err(ParseError::new(
                line,
                column,
                format!("expected component `y{i}`, found `{label}` (components are declared in order)"),
            ));
        }
        parser.expect_punct("=")?;
        let ast = parser.expr(&ctx)?;
        parser.expect_punct(";")?;
        components.push(ast.lower(m));
    }
    parser.expect_punct("}")?;
    Ok(PolynomialMap::new(m, components).expect("components were built in dimension m"))
}

fn parse_ideal_body(parser: &mut Parser, name: &str) -> PResult<IdealPresentation> {
    parser.expect_punct("=")?;
    parser.expect_punct("<")?;
    let ctx = VarContext::Target { limit: None };
    let mut asts = vec![parser.expr(&ctx)?];
    while parser.eat_punct(",") {
        asts.push(parser.expr(&ctx)?);
    }
    parser.expect_punct(">")?;
    let dim = asts
        .iter()
        .filter_map(PolyAst::max_var)
        .max()
        .map_or(1, |v| v + 1);
    let generators = asts.iter().map(|a| a.lower(dim)).collect();
    Ok(IdealPresentation::new(dim, name, generators)
        .expect("at least one generator was parsed"))
}

/// `( q, q, ... )`, checked against an expected arity when given.
fn parse_point_tuple(parser: &mut Parser, arity: Option<usize>) -> PResult<Vec<Q>> {
    let start = parser.here();
    parser.expect_punct("(")?;
    let mut coords = vec![parser.rational()?];
    while parser.eat_punct(",") {
        coords.push(parser.rational()?);
    }
    parser.expect_punct(")")?;
    if let Some(expected) = arity {
        if coords.len() != expected {
            return Err(ParseError::new(
                start.0,
                start.1,
                format!("expected {expected} coordinate(s), found {}", coords.len()),
            ));
        }
    }
    Ok(coords)
}

fn parse_fiber_body(
    parser: &mut Parser,
    session: &SessionFile,
    decl_pos: (u32, u32),
) -> PResult<FiberTuple> {
    parser.expect_keyword("over")?;
    let (map_name, line, column) = parser.expect_ident("a map name")?;
    let map = session.map(&map_name).ok_or_else(|| {
        ParseError::new(line, column, format!("unknown map `{map_name}`"))
    })?;
    parser.expect_punct("=")?;
    parser.expect_punct("[")?;
    let mut points = vec![parse_point_tuple(parser, Some(map.source_dim()))?];
    while parser.eat_punct(",") {
        points.push(parse_point_tuple(parser, Some(map.source_dim()))?);
    }
    parser.expect_punct("]")?;
    FiberTuple::new(map.clone(), points).map_err(|e| {
        ParseError::new(decl_pos.0, decl_pos.1, format!("incoherent fiber: {e}"))
    })
}

fn parse_arc_body(
    parser: &mut Parser,
    session: &SessionFile,
    decl_pos: (u32, u32),
) -> PResult<Arc> {
    parser.expect_punct("(")?;
    let (param, _, _) = parser.expect_ident("the arc parameter")?;
    parser.expect_punct(")")?;
    parser.expect_keyword("for")?;
    let (map_name, line, column) = parser.expect_ident("a map name")?;
    let map = session.map(&map_name).ok_or_else(|| {
        ParseError::new(line, column, format!("unknown map `{map_name}`"))
    })?;
    parser.expect_punct("=")?;
    parser.expect_punct("[")?;
    let ctx = VarContext::Parameter(param);
    let mut curves = vec![parse_curve(parser, &ctx, map.source_dim())?];
    while parser.eat_punct(",") {
        curves.push(parse_curve(parser, &ctx, map.source_dim())?);
    }
    parser.expect_punct("]")?;
    Arc::new(map.clone(), curves).map_err(|e| {
        ParseError::new(decl_pos.0, decl_pos.1, format!("incoherent arc: {e}"))
    })
}

fn parse_curve(
    parser: &mut Parser,
    ctx: &VarContext,
    arity: usize,
) -> PResult<Vec<TruncatedSeries>> {
    let start = parser.here();
    parser.expect_punct("(")?;
    let mut comps = vec![parser.expr(ctx)?];
    while parser.eat_punct(",") {
        comps.push(parser.expr(ctx)?);
    }
    parser.expect_punct(")")?;
    if comps.len() != arity {
        return Err(ParseError::new(
            start.0,
            start.1,
            format!("expected {arity} coordinate(s), found {}", comps.len()),
        ));
    }
    Ok(comps.iter().map(|a| a.lower(1)).collect())
}

// ------------------------------------------------ standalone literal parsers

/// Parses a polynomial in `y1..y{dim}` (CLI inline literals, rendered
/// series). The whole input must be consumed.
pub fn parse_polynomial(text: &str, dim: usize) -> PResult<TruncatedSeries> {
    let mut parser = Parser::new(text)?;
    let ast = parser.expr(&VarContext::Target { limit: Some(dim) })?;
    if let Some(t) = parser.peek() {
        return Err(ParseError::new(
            t.line,
            t.column,
            format!("unexpected trailing {}", t.tok.describe()),
        ));
    }
    Ok(ast.lower(dim))
}

/// Parses a comma-separated list of rationals, e.g. `1,1/2,1/4,0`.
pub fn parse_rational_list(text: &str) -> PResult<Vec<Q>> {
    let mut parser = Parser::new(text)?;
    let mut out = vec![parser.rational()?];
    while parser.eat_punct(",") {
        out.push(parser.rational()?);
    }
    if let Some(t) = parser.peek() {
        return Err(ParseError::new(
            t.line,
            t.column,
            format!("unexpected trailing {}", t.tok.describe()),
        ));
    }
    Ok(out)
}

/// Parses a diagram literal `(a,b);(c,d)`; vertices are minimalized. The
/// empty string denotes the empty diagram of the given dimension.
pub fn parse_diagram_literal(text: &str, dim: usize) -> PResult<Diagram> {
    let mut parser = Parser::new(text)?;
    let mut vertices: Vec<MultiIndex> = Vec::new();
    if parser.peek().is_some() {
        loop {
            let start = parser.here();
            parser.expect_punct("(")?;
            let mut entries = vec![parser.expect_uint("a vertex entry")?];
            while parser.eat_punct(",") {
                entries.push(parser.expect_uint("a vertex entry")?);
            }
            parser.expect_punct(")")?;
            if entries.len() != dim {
                return Err(ParseError::new(
                    start.0,
                    start.1,
                    format!("expected {dim} entries, found {}", entries.len()),
                ));
            }
            vertices.push(MultiIndex::new(entries));
            if !parser.eat_punct(";") {
                break;
            }
        }
        if let Some(t) = parser.peek() {
            return Err(ParseError::new(
                t.line,
                t.column,
                format!("unexpected trailing {}", t.tok.describe()),
            ));
        }
    }
    Ok(Diagram::from_vertices(dim, vertices).expect("entries were built in the dimension"))
}
