//! Polynomials in named generators and structure candidates.
//!
//! ```text
//! POLY   := ['+'|'-'] PROD (('+'|'-') PROD)*
//! PROD   := POWER ('*' POWER)*
//! POWER  := ATOM ['^' INT]
//! ATOM   := INT | GENERATOR | '(' POLY ')'
//!
//! CANDIDATE := 'std' | 'trivial' '(' 'c_n' '=' ['-'] INT ')' | BUNDLE
//! BUNDLE    := LINE ('+' LINE)*
//! LINE      := [INT '*'] (NAME | 'conj' '(' NAME ')')
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use acsum_core::{BigInt, LineBundleAggregate, RingElement, RingPresentation, StableStructure};

use crate::lexer::{Cursor, ParseError, TokenKind};

pub fn parse_polynomial(
    text: &str,
    ring: &Arc<RingPresentation>,
) -> Result<RingElement, ParseError> {
    let mut cur = Cursor::new(text)?;
    let p = poly(&mut cur, ring)?;
    cur.expect_end()?;
    Ok(p)
}

fn poly(cur: &mut Cursor, ring: &Arc<RingPresentation>) -> Result<RingElement, ParseError> {
    let mut negate = false;
    if cur.eat(&TokenKind::Minus) {
        negate = true;
    } else {
        cur.eat(&TokenKind::Plus);
    }
    let first = product(cur, ring)?;
    let mut acc = if negate { first.neg() } else { first };
    loop {
        let subtract = if cur.eat(&TokenKind::Plus) {
            false
        } else if cur.eat(&TokenKind::Minus) {
            true
        } else {
            break;
        };
        let rhs = product(cur, ring)?;
        let rhs = if subtract { rhs.neg() } else { rhs };
        acc = acc.add(&rhs).expect("same ring");
    }
    Ok(acc)
}

fn product(cur: &mut Cursor, ring: &Arc<RingPresentation>) -> Result<RingElement, ParseError> {
    let mut acc = power(cur, ring)?;
    while cur.eat(&TokenKind::Star) {
        let rhs = power(cur, ring)?;
        acc = acc.mul(&rhs).expect("same ring");
    }
    Ok(acc)
}

fn power(cur: &mut Cursor, ring: &Arc<RingPresentation>) -> Result<RingElement, ParseError> {
    let base = atom(cur, ring)?;
    if cur.eat(&TokenKind::Caret) {
        let k = cur.expect_u32("exponent")?;
        return Ok(base.power(k));
    }
    Ok(base)
}

fn atom(cur: &mut Cursor, ring: &Arc<RingPresentation>) -> Result<RingElement, ParseError> {
    match cur.peek_kind().clone() {
        TokenKind::Int(s) => {
            cur.advance();
            let c: BigInt = s.parse().expect("digits");
            Ok(RingElement::constant(ring, c))
        }
        TokenKind::Ident(name) => {
            let Some(i) = ring.generator_index(&name) else {
                return Err(cur.error_here(format!("unknown generator {name}")));
            };
            cur.advance();
            Ok(RingElement::generator(ring, i).expect("index in range"))
        }
        TokenKind::LParen => {
            cur.advance();
            let inner = poly(cur, ring)?;
            cur.expect(&TokenKind::RParen, "')'")?;
            Ok(inner)
        }
        other => Err(cur.error_here(format!("expected a polynomial term, found {other}"))),
    }
}

/// Exponent vector of a monomial such as `x^2*y`.
pub fn parse_monomial(text: &str, ring: &RingPresentation) -> Result<Vec<u32>, ParseError> {
    let mut cur = Cursor::new(text)?;
    let mut exps = vec![0u32; ring.generators().len()];
    loop {
        let name = cur.expect_ident("generator")?;
        let Some(i) = ring.generator_index(&name) else {
            return Err(cur.error_here(format!("unknown generator {name}")));
        };
        let e = if cur.eat(&TokenKind::Caret) {
            cur.expect_u32("exponent")?
        } else {
            1
        };
        exps[i] += e;
        if !cur.eat(&TokenKind::Star) {
            break;
        }
    }
    cur.expect_end()?;
    Ok(exps)
}

/// One parsed `LINE` of a bundle expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineTerm {
    pub multiplicity: u32,
    pub bundle: String,
    pub conjugated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CandidateSyntax {
    Std,
    Trivial(BigInt),
    Bundle(Vec<LineTerm>),
}

impl CandidateSyntax {
    /// Canonical spelling, also used as the aggregate's label.
    pub fn label(&self) -> String {
        match self {
            CandidateSyntax::Std => "std".into(),
            CandidateSyntax::Trivial(c) => format!("trivial(c_n={c})"),
            CandidateSyntax::Bundle(lines) => lines
                .iter()
                .map(|l| {
                    let body = if l.conjugated {
                        format!("conj({})", l.bundle)
                    } else {
                        l.bundle.clone()
                    };
                    if l.multiplicity == 1 {
                        body
                    } else {
                        format!("{}*{body}", l.multiplicity)
                    }
                })
                .collect::<Vec<_>>()
                .join(" + "),
        }
    }
}

pub fn parse_candidate(text: &str) -> Result<CandidateSyntax, ParseError> {
    let mut cur = Cursor::new(text)?;
    let out = match (cur.peek_kind().clone(), cur.peek_nth_kind(1).clone()) {
        (TokenKind::Ident(w), TokenKind::Eof) if w == "std" => {
            cur.advance();
            CandidateSyntax::Std
        }
        (TokenKind::Ident(w), TokenKind::LParen) if w == "trivial" => {
            cur.advance();
            cur.advance();
            let key = cur.expect_ident("c_n")?;
            if key != "c_n" {
                return Err(cur.error_here("expected c_n"));
            }
            cur.expect(&TokenKind::Equals, "'='")?;
            let negative = cur.eat(&TokenKind::Minus);
            let TokenKind::Int(digits) = cur.peek_kind().clone() else {
                return Err(cur.error_here("expected an integer Chern number"));
            };
            cur.advance();
            cur.expect(&TokenKind::RParen, "')'")?;
            let mut c: BigInt = digits.parse().expect("digits");
            if negative {
                c = -c;
            }
            CandidateSyntax::Trivial(c)
        }
        _ => {
            let mut lines = vec![line_term(&mut cur)?];
            while cur.eat(&TokenKind::Plus) {
                lines.push(line_term(&mut cur)?);
            }
            CandidateSyntax::Bundle(lines)
        }
    };
    cur.expect_end()?;
    Ok(out)
}

fn line_term(cur: &mut Cursor) -> Result<LineTerm, ParseError> {
    let multiplicity = if matches!(cur.peek_kind(), TokenKind::Int(_)) {
        let at = cur.error_here("multiplicity must be at least 1");
        let m = cur.expect_u32("multiplicity")?;
        if m == 0 {
            return Err(at);
        }
        cur.expect(&TokenKind::Star, "'*'")?;
        m
    } else {
        1
    };
    let at = cur.error_here("");
    let name = cur.expect_ident("line bundle name")?;
    if is_reserved(&name) {
        return Err(ParseError {
            message: format!("{name} is not a line bundle name"),
            ..at
        });
    }
    if name == "conj" {
        cur.expect(&TokenKind::LParen, "'(' after conj")?;
        let bundle = cur.expect_ident("line bundle name")?;
        cur.expect(&TokenKind::RParen, "')'")?;
        return Ok(LineTerm {
            multiplicity,
            bundle,
            conjugated: true,
        });
    }
    Ok(LineTerm {
        multiplicity,
        bundle: name,
        conjugated: false,
    })
}

/// Words that cannot name a line bundle.
pub fn is_reserved(name: &str) -> bool {
    matches!(name, "std" | "trivial")
}

/// Turns parsed candidate syntax into a structure over `ring`, looking up
/// line bundles in `bundles`.
pub fn build_candidate(
    syntax: &CandidateSyntax,
    ring: &Arc<RingPresentation>,
    bundles: &BTreeMap<String, RingElement>,
) -> Result<StableStructure, String> {
    match syntax {
        CandidateSyntax::Std => Ok(StableStructure::HonestAcs),
        CandidateSyntax::Trivial(c) => Ok(StableStructure::trivial(c.clone())),
        CandidateSyntax::Bundle(lines) => {
            let mut agg = LineBundleAggregate::new(ring, syntax.label());
            for l in lines {
                let c1 = bundles
                    .get(&l.bundle)
                    .ok_or_else(|| format!("line bundle {} is not bound", l.bundle))?;
                agg.push(c1.clone(), l.multiplicity, l.conjugated)
                    .map_err(|e| e.to_string())?;
            }
            Ok(StableStructure::Aggregate(agg))
        }
    }
}

/// Parses a signed integer such as `-3` or `+4`.
pub fn parse_signed(text: &str) -> Option<BigInt> {
    let t = text.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    let v: BigInt = t.parse().ok()?;
    Some(v)
}
