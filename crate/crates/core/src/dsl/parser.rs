//! Recursive-descent parser for `.quiv` presentations.
//!
//! Grammar, in order:
//!
//! ```text
//! quiver NAME over FIELD {
//!   vertices: v1, v2, ...;
//!   base: v1, ...;                      (optional)
//!   arrows: a: v1 -> v2, ...;           (optional)
//!   relations: expr, ...;               (optional)
//!   superpotential: expr;               (optional)
//! }
//! ```
//!
//! Expressions use `*` for composition (left to right), `+`/`-`, `^k` on a
//! factor, integer and rational literals, `zetaN` in cyclotomic fields, and
//! `e(v)` for trivial paths.  A `superpotential` block is expanded through
//! cyclic derivatives into relations before validation.

use std::collections::{BTreeMap, BTreeSet};

use num::BigInt;

use super::lexer::{tokenize, Token, TokenKind};
use super::{ParseError, ParsedBundle, SourceFile};
use crate::field::{FieldSpec, Scalar};
use crate::poly::NCPoly;
use crate::presentation::Presentation;
use crate::quiver::{compose_paths, Path, Quiver, VertexId};
use crate::superpotential::Superpotential;

const MAX_TERMS: usize = 20_000;
const MAX_EXPONENT: u32 = 64;
const MAX_DEPTH: usize = 200;

pub fn parse_presentation(src: &SourceFile) -> Result<ParsedBundle, ParseError> {
    parse_presentation_with_field(src, None)
}

/// Parses with an optional field override, applied before any scalar is
/// evaluated.
pub fn parse_presentation_with_field(
    src: &SourceFile,
    field_override: Option<FieldSpec>,
) -> Result<ParsedBundle, ParseError> {
    let tokens = tokenize(&src.text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        depth: 0,
    };
    parser.parse_file(field_override)
}

/// A not-necessarily-uniform sum of paths, the value of a path expression.
#[derive(Debug, Clone)]
enum Value {
    Scalar(Scalar),
    Poly(BTreeMap<Path, Scalar>),
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos.min(self.tokens.len() - 1)]
    }

    fn next(&mut self) -> Token {
        let t = self.peek().clone();
        if self.pos < self.tokens.len() - 1 {
            self.pos += 1;
        }
        t
    }

    fn error_at<T>(&self, token: &Token, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: token.line,
            col: token.col,
            message: message.into(),
        })
    }

    fn expect_kind(&mut self, kind: &TokenKind, what: &str) -> Result<Token, ParseError> {
        let t = self.next();
        if &t.kind == kind {
            Ok(t)
        } else {
            self.error_at(&t, format!("expected {what}, found {}", t.kind.describe()))
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, Token), ParseError> {
        let t = self.next();
        match &t.kind {
            TokenKind::Ident(s) => Ok((s.clone(), t.clone())),
            other => self.error_at(&t, format!("expected {what}, found {}", other.describe())),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let (word, tok) = self.expect_ident(&format!("keyword `{kw}`"))?;
        if word == kw {
            Ok(())
        } else {
            self.error_at(&tok, format!("expected keyword `{kw}`, found `{word}`"))
        }
    }

    fn parse_file(&mut self, field_override: Option<FieldSpec>) -> Result<ParsedBundle, ParseError> {
        self.expect_keyword("quiver")?;
        let (name, _) = self.expect_ident("a quiver name")?;
        self.expect_keyword("over")?;
        let field = self.parse_field(field_override)?;
        self.expect_kind(&TokenKind::LBrace, "`{`")?;

        // vertices
        self.expect_keyword("vertices")?;
        self.expect_kind(&TokenKind::Colon, "`:`")?;
        let mut vertices: Vec<String> = Vec::new();
        let mut vertex_tokens: Vec<Token> = Vec::new();
        loop {
            let (v, tok) = self.expect_ident("a vertex name")?;
            if vertices.contains(&v) {
                return self.error_at(&tok, format!("duplicate vertex `{v}`"));
            }
            vertices.push(v);
            vertex_tokens.push(tok);
            match self.next() {
                t if t.kind == TokenKind::Comma => continue,
                t if t.kind == TokenKind::Semi => break,
                t => return self.error_at(&t, "expected `,` or `;` in the vertex list"),
            }
        }

        // base (optional)
        let mut base: BTreeSet<VertexId> = BTreeSet::new();
        if self.peek_keyword("base") {
            self.next();
            self.expect_kind(&TokenKind::Colon, "`:`")?;
            loop {
                let (v, tok) = self.expect_ident("a base vertex name")?;
                let Some(idx) = vertices.iter().position(|x| x == &v) else {
                    return self.error_at(&tok, format!("unknown vertex `{v}` in base list"));
                };
                base.insert(VertexId(idx));
                match self.next() {
                    t if t.kind == TokenKind::Comma => continue,
                    t if t.kind == TokenKind::Semi => break,
                    t => return self.error_at(&t, "expected `,` or `;` in the base list"),
                }
            }
        }

        // arrows (optional)
        let mut arrows: Vec<(String, VertexId, VertexId)> = Vec::new();
        if self.peek_keyword("arrows") {
            self.next();
            self.expect_kind(&TokenKind::Colon, "`:`")?;
            loop {
                let (a, atok) = self.expect_ident("an arrow name")?;
                if vertices.contains(&a) || arrows.iter().any(|(n, _, _)| n == &a) {
                    return self.error_at(&atok, format!("duplicate name `{a}`"));
                }
                self.expect_kind(&TokenKind::Colon, "`:`")?;
                let (s, stok) = self.expect_ident("a source vertex")?;
                let Some(si) = vertices.iter().position(|x| x == &s) else {
                    return self.error_at(&stok, format!("unknown vertex `{s}`"));
                };
                self.expect_kind(&TokenKind::Arrow, "`->`")?;
                let (t, ttok) = self.expect_ident("a target vertex")?;
                let Some(ti) = vertices.iter().position(|x| x == &t) else {
                    return self.error_at(&ttok, format!("unknown vertex `{t}`"));
                };
                arrows.push((a, VertexId(si), VertexId(ti)));
                match self.next() {
                    t if t.kind == TokenKind::Comma => continue,
                    t if t.kind == TokenKind::Semi => break,
                    t => return self.error_at(&t, "expected `,` or `;` in the arrow list"),
                }
            }
        }

        let quiver = match Quiver::new(vertices, arrows, base) {
            Ok(q) => q,
            Err(e) => {
                let t = self.peek().clone();
                return self.error_at(&t, e.to_string());
            }
        };

        // relations (optional)
        let mut relations: Vec<NCPoly> = Vec::new();
        if self.peek_keyword("relations") {
            self.next();
            self.expect_kind(&TokenKind::Colon, "`:`")?;
            loop {
                let start = self.peek().clone();
                let value = self.parse_expr(&quiver, &field)?;
                relations.push(self.value_to_relation(value, &start, &quiver)?);
                match self.next() {
                    t if t.kind == TokenKind::Comma => continue,
                    t if t.kind == TokenKind::Semi => break,
                    t => return self.error_at(&t, "expected `,` or `;` in the relation list"),
                }
            }
        }

        // superpotential (optional)
        let mut superpotential: Option<Superpotential> = None;
        if self.peek_keyword("superpotential") {
            self.next();
            self.expect_kind(&TokenKind::Colon, "`:`")?;
            let start = self.peek().clone();
            let value = self.parse_expr(&quiver, &field)?;
            self.expect_kind(&TokenKind::Semi, "`;`")?;
            let poly = match value {
                Value::Poly(p) => p,
                Value::Scalar(_) => {
                    return self.error_at(&start, "superpotential must be a path expression")
                }
            };
            let mut w = Superpotential::new(field, quiver.clone());
            for (path, coeff) in poly {
                if let Err(e) = w.add_term(&path, coeff) {
                    return self.error_at(&start, e.to_string());
                }
            }
            for (_, derivative) in w.all_derivatives() {
                relations.push(derivative);
            }
            superpotential = Some(w);
        }

        self.expect_kind(&TokenKind::RBrace, "`}`")?;
        self.expect_kind(&TokenKind::Eof, "end of input")?;

        let presentation = match Presentation::new(name, field, quiver, relations) {
            Ok(p) => p,
            Err(e) => {
                return Err(ParseError {
                    line: 1,
                    col: 1,
                    message: e.to_string(),
                })
            }
        };
        Ok(ParsedBundle {
            presentation,
            superpotential,
        })
    }

    fn peek_keyword(&self, kw: &str) -> bool {
        matches!(&self.peek().kind, TokenKind::Ident(s) if s == kw)
    }

    fn parse_field(&mut self, field_override: Option<FieldSpec>) -> Result<FieldSpec, ParseError> {
        let (head, tok) = self.expect_ident("a field name")?;
        let mut name = head;
        if self.peek().kind == TokenKind::LParen {
            self.next();
            let (inner, _) = self.expect_ident("a field parameter")?;
            self.expect_kind(&TokenKind::RParen, "`)`")?;
            name = format!("{name}({inner})");
        }
        let declared = match FieldSpec::parse_name(&name) {
            Some(f) => f,
            None => return self.error_at(&tok, format!("unknown field `{name}`")),
        };
        Ok(field_override.unwrap_or(declared))
    }

    fn value_to_relation(
        &self,
        value: Value,
        start: &Token,
        quiver: &Quiver,
    ) -> Result<NCPoly, ParseError> {
        let poly = match value {
            Value::Poly(p) => p,
            Value::Scalar(_) => {
                return self.error_at(start, "a relation must be a path expression, not a scalar")
            }
        };
        if poly.is_empty() {
            return self.error_at(start, "relation is identically zero");
        }
        let (first, _) = poly.iter().next().unwrap();
        let (source, target) = (first.source(), first.target());
        let mut rel = NCPoly::zero(source, target);
        for (path, coeff) in poly {
            if path.source() != source || path.target() != target {
                return self.error_at(
                    start,
                    format!(
                        "non-uniform relation: mixes paths {} -> {} and {} -> {}",
                        quiver.vertex_name(source),
                        quiver.vertex_name(target),
                        quiver.vertex_name(path.source()),
                        quiver.vertex_name(path.target())
                    ),
                );
            }
            if path.is_empty() {
                return self.error_at(start, "relation has order-0 component");
            }
            rel.add_term(path, coeff);
        }
        if rel.is_zero() {
            return self.error_at(start, "relation is identically zero");
        }
        Ok(rel)
    }

    fn parse_expr(&mut self, quiver: &Quiver, field: &FieldSpec) -> Result<Value, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            let t = self.peek().clone();
            self.depth -= 1;
            return self.error_at(&t, "expression nesting too deep");
        }
        let mut acc = self.parse_term(quiver, field)?;
        loop {
            let t = self.peek().clone();
            match t.kind {
                TokenKind::Plus => {
                    self.next();
                    let rhs = self.parse_term(quiver, field)?;
                    acc = self.value_add(acc, rhs, &t)?;
                }
                TokenKind::Minus => {
                    self.next();
                    let rhs = self.parse_term(quiver, field)?;
                    let rhs = self.value_neg(rhs);
                    acc = self.value_add(acc, rhs, &t)?;
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn parse_term(&mut self, quiver: &Quiver, field: &FieldSpec) -> Result<Value, ParseError> {
        let mut acc = self.parse_factor(quiver, field)?;
        while self.peek().kind == TokenKind::Star {
            let t = self.next();
            let rhs = self.parse_factor(quiver, field)?;
            acc = self.value_mul(acc, rhs, &t)?;
        }
        Ok(acc)
    }

    fn parse_factor(&mut self, quiver: &Quiver, field: &FieldSpec) -> Result<Value, ParseError> {
        let base = self.parse_atom(quiver, field)?;
        if self.peek().kind != TokenKind::Caret {
            return Ok(base);
        }
        let caret = self.next();
        let t = self.next();
        let TokenKind::Int(digits) = &t.kind else {
            return self.error_at(&t, "expected an integer exponent after `^`");
        };
        let k: u32 = match digits.parse() {
            Ok(k) if (1..=MAX_EXPONENT).contains(&k) => k,
            Ok(0) => return self.error_at(&t, "exponent must be positive"),
            _ => {
                return self.error_at(&t, format!("exponent out of range (max {MAX_EXPONENT})"))
            }
        };
        let mut acc = base.clone();
        for _ in 1..k {
            acc = self.value_mul(acc, base.clone(), &caret)?;
        }
        Ok(acc)
    }

    fn parse_atom(&mut self, quiver: &Quiver, field: &FieldSpec) -> Result<Value, ParseError> {
        let t = self.next();
        match &t.kind {
            TokenKind::Int(digits) => {
                let numer: BigInt = digits.parse().expect("digit string parses as BigInt");
                if self.peek().kind == TokenKind::Slash {
                    self.next();
                    let d = self.next();
                    let TokenKind::Int(den_digits) = &d.kind else {
                        return self.error_at(&d, "expected an integer denominator after `/`");
                    };
                    let denom: BigInt = den_digits.parse().expect("digit string parses as BigInt");
                    match field.from_ratio(&numer, &denom) {
                        Ok(s) => Ok(Value::Scalar(s)),
                        Err(e) => self.error_at(&d, e.to_string()),
                    }
                } else {
                    Ok(Value::Scalar(field.from_integer(&numer)))
                }
            }
            TokenKind::Minus => {
                let inner = self.parse_factor(quiver, field)?;
                Ok(self.value_neg(inner))
            }
            TokenKind::LParen => {
                let inner = self.parse_expr(quiver, field)?;
                self.expect_kind(&TokenKind::RParen, "`)`")?;
                Ok(inner)
            }
            TokenKind::Ident(name) if name == "e" && self.peek().kind == TokenKind::LParen => {
                self.next();
                let (v, vtok) = self.expect_ident("a vertex name inside e(...)")?;
                self.expect_kind(&TokenKind::RParen, "`)`")?;
                let Some(vid) = quiver.vertex_by_name(&v) else {
                    return self.error_at(&vtok, format!("unknown vertex `{v}`"));
                };
                let mut terms = BTreeMap::new();
                terms.insert(quiver.trivial_path(vid), field.one());
                Ok(Value::Poly(terms))
            }
            TokenKind::Ident(name) => {
                if let Some(rest) = name.strip_prefix("zeta") {
                    if rest.chars().all(|c| c.is_ascii_digit()) && !rest.is_empty() {
                        let expected = match field {
                            FieldSpec::Cyclotomic(n) => format!("zeta{n}"),
                            _ => {
                                return self.error_at(
                                    &t,
                                    format!("`{name}` is only available over a cyclotomic field"),
                                )
                            }
                        };
                        if *name != expected {
                            return self.error_at(
                                &t,
                                format!("`{name}` does not belong to {}", field.dsl_name()),
                            );
                        }
                        let z = field.zeta().expect("cyclotomic field has a generator");
                        return Ok(Value::Scalar(z));
                    }
                }
                let Some(aid) = quiver.arrow_by_name(name) else {
                    return self.error_at(&t, format!("unknown arrow `{name}`"));
                };
                let mut terms = BTreeMap::new();
                terms.insert(quiver.arrow_path(aid), field.one());
                Ok(Value::Poly(terms))
            }
            other => self.error_at(&t, format!("unexpected {}", other.describe())),
        }
    }

    fn value_neg(&self, v: Value) -> Value {
        match v {
            Value::Scalar(s) => Value::Scalar(s.neg()),
            Value::Poly(p) => {
                Value::Poly(p.into_iter().map(|(path, c)| (path, c.neg())).collect())
            }
        }
    }

    fn value_add(&self, a: Value, b: Value, at: &Token) -> Result<Value, ParseError> {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x.add(&y))),
            (Value::Poly(mut p), Value::Poly(q)) => {
                for (path, c) in q {
                    match p.remove(&path) {
                        None => {
                            if !c.is_zero() {
                                p.insert(path, c);
                            }
                        }
                        Some(existing) => {
                            let sum = existing.add(&c);
                            if !sum.is_zero() {
                                p.insert(path, sum);
                            }
                        }
                    }
                }
                if p.len() > MAX_TERMS {
                    return self.error_at(at, "expression too large");
                }
                Ok(Value::Poly(p))
            }
            _ => self.error_at(at, "cannot add a scalar to a path expression"),
        }
    }

    fn value_mul(&self, a: Value, b: Value, at: &Token) -> Result<Value, ParseError> {
        match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Ok(Value::Scalar(x.mul(&y))),
            (Value::Scalar(x), Value::Poly(p)) | (Value::Poly(p), Value::Scalar(x)) => {
                Ok(Value::Poly(
                    p.into_iter()
                        .filter_map(|(path, c)| {
                            let m = c.mul(&x);
                            if m.is_zero() {
                                None
                            } else {
                                Some((path, m))
                            }
                        })
                        .collect(),
                ))
            }
            (Value::Poly(p), Value::Poly(q)) => {
                let mut out: BTreeMap<Path, Scalar> = BTreeMap::new();
                for (pp, pc) in &p {
                    for (qp, qc) in &q {
                        let Some(path) = compose_paths(pp, qp) else {
                            continue;
                        };
                        let c = pc.mul(qc);
                        match out.remove(&path) {
                            None => {
                                if !c.is_zero() {
                                    out.insert(path, c);
                                }
                            }
                            Some(existing) => {
                                let sum = existing.add(&c);
                                if !sum.is_zero() {
                                    out.insert(path, sum);
                                }
                            }
                        }
                        if out.len() > MAX_TERMS {
                            return self.error_at(at, "expression too large");
                        }
                    }
                }
                Ok(Value::Poly(out))
            }
        }
    }
}
