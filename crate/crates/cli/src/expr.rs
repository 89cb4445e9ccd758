//! Connected-sum expressions.
//!
//! ```text
//! EXPR     := TERM ('#' TERM)*
//! TERM     := [INT '*'] MANIFOLD
//! MANIFOLD := IDENT ['(' PARAMS ')'] | 'conj' '(' MANIFOLD ')'
//! PARAMS   := INT (',' INT)*
//! ```
//!
//! Whitespace (including newlines) is insignificant.

use std::fmt;

use crate::lexer::{Cursor, ParseError, TokenKind};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ManifoldExpr {
    Named { name: String, params: Vec<u32> },
    Conj(Box<ManifoldExpr>),
}

impl ManifoldExpr {
    pub fn named(name: impl Into<String>, params: Vec<u32>) -> Self {
        ManifoldExpr::Named {
            name: name.into(),
            params,
        }
    }

    pub fn conj(inner: ManifoldExpr) -> Self {
        ManifoldExpr::Conj(Box::new(inner))
    }

    /// Base name, parameters and whether an odd number of `conj` wrap it.
    pub fn base(&self) -> (&str, &[u32], bool) {
        match self {
            ManifoldExpr::Named { name, params } => (name, params, false),
            ManifoldExpr::Conj(inner) => {
                let (name, params, conj) = inner.base();
                (name, params, !conj)
            }
        }
    }

    /// Double conjugations removed.
    pub fn normalized(&self) -> ManifoldExpr {
        let (name, params, conj) = self.base();
        let named = ManifoldExpr::named(name, params.to_vec());
        if conj {
            ManifoldExpr::conj(named)
        } else {
            named
        }
    }
}

impl fmt::Display for ManifoldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldExpr::Named { name, params } => {
                f.write_str(name)?;
                if !params.is_empty() {
                    let ps: Vec<String> = params.iter().map(u32::to_string).collect();
                    write!(f, "({})", ps.join(","))?;
                }
                Ok(())
            }
            ManifoldExpr::Conj(inner) => write!(f, "conj({inner})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub multiplicity: u32,
    pub manifold: ManifoldExpr,
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicity != 1 {
            write!(f, "{}*", self.multiplicity)?;
        }
        write!(f, "{}", self.manifold)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Expression {
    pub terms: Vec<Term>,
}

impl Expression {
    /// Total number of summands after expanding multiplicities.
    pub fn summand_count(&self) -> u64 {
        self.terms.iter().map(|t| u64::from(t.multiplicity)).sum()
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms.iter().map(Term::to_string).collect();
        f.write_str(&terms.join(" # "))
    }
}

pub fn parse(text: &str) -> Result<Expression, ParseError> {
    let mut cur = Cursor::new(text)?;
    let mut terms = vec![parse_term(&mut cur)?];
    while cur.eat(&TokenKind::Hash) {
        terms.push(parse_term(&mut cur)?);
    }
    cur.expect_end()?;
    Ok(Expression { terms })
}

/// A single `MANIFOLD` with nothing around it.
pub fn parse_manifold(text: &str) -> Result<ManifoldExpr, ParseError> {
    let mut cur = Cursor::new(text)?;
    let m = manifold(&mut cur)?;
    cur.expect_end()?;
    Ok(m)
}

fn parse_term(cur: &mut Cursor) -> Result<Term, ParseError> {
    let multiplicity = if matches!(cur.peek_kind(), TokenKind::Int(_)) {
        let at = cur.error_here("multiplicity must be at least 1");
        let m = cur.expect_u32("multiplicity")?;
        if m == 0 {
            return Err(at);
        }
        cur.expect(&TokenKind::Star, "'*' after multiplicity")?;
        m
    } else {
        1
    };
    Ok(Term {
        multiplicity,
        manifold: manifold(cur)?,
    })
}

pub(crate) fn manifold(cur: &mut Cursor) -> Result<ManifoldExpr, ParseError> {
    let name = cur.expect_ident("manifold name")?;
    if name == "conj" {
        cur.expect(&TokenKind::LParen, "'(' after conj")?;
        let inner = manifold(cur)?;
        cur.expect(&TokenKind::RParen, "')'")?;
        return Ok(ManifoldExpr::conj(inner));
    }
    let mut params = Vec::new();
    if cur.eat(&TokenKind::LParen) && !cur.eat(&TokenKind::RParen) {
        loop {
            params.push(cur.expect_u32("integer parameter")?);
            if cur.eat(&TokenKind::RParen) {
                break;
            }
            cur.expect(&TokenKind::Comma, "',' or ')'")?;
        }
    }
    Ok(ManifoldExpr::Named { name, params })
}
