//! Symbolic entropy expressions such as `H(A0|B0) + I(A0:B1|C0) - 2 H(A1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactgeom::LinearForm;
use crate::scalar::{int, Rational};

use super::space::{CoordinateSpace, VarSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    /// `H(of | given)`
    H { of: Vec<String>, given: Vec<String> },
    /// `I(left : right | given)`
    I {
        left: Vec<String>,
        right: Vec<String>,
        given: Vec<String>,
    },
}

fn owned(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

impl Term {
    fn expand(&self, space: &CoordinateSpace) -> Result<Vec<(VarSet, i64)>> {
        let set = |n: &[String]| space.set_from_names(n);
        Ok(match self {
            Term::H { of, given } => {
                let t = set(given)?;
                vec![(set(of)?.union(t), 1), (t, -1)]
            }
            Term::I { left, right, given } => {
                let (a, b, c) = (set(left)?, set(right)?, set(given)?);
                vec![
                    (a.union(c), 1),
                    (b.union(c), 1),
                    (a.union(b).union(c), -1),
                    (c, -1),
                ]
            }
        })
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::H { of, given } if given.is_empty() => write!(f, "H({})", of.join(",")),
            Term::H { of, given } => write!(f, "H({}|{})", of.join(","), given.join(",")),
            Term::I { left, right, given } if given.is_empty() => {
                write!(f, "I({}:{})", left.join(","), right.join(","))
            }
            Term::I { left, right, given } => write!(
                f,
                "I({}:{}|{})",
                left.join(","),
                right.join(","),
                given.join(",")
            ),
        }
    }
}

/// Rational linear combination of entropy terms.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Expr {
    pub terms: Vec<(Rational, Term)>,
}

impl Expr {
    pub fn zero() -> Self {
        Self::default()
    }

    fn single(t: Term) -> Self {
        Expr {
            terms: vec![(Rational::one(), t)],
        }
    }

    pub fn h(of: &[&str]) -> Self {
        Self::h_given(of, &[])
    }

    pub fn h_given(of: &[&str], given: &[&str]) -> Self {
        Self::single(Term::H {
            of: owned(of),
            given: owned(given),
        })
    }

    pub fn i(left: &[&str], right: &[&str]) -> Self {
        Self::i_given(left, right, &[])
    }

    pub fn i_given(left: &[&str], right: &[&str], given: &[&str]) -> Self {
        Self::single(Term::I {
            left: owned(left),
            right: owned(right),
            given: owned(given),
        })
    }

    pub fn scaled(mut self, c: &Rational) -> Self {
        for (k, _) in self.terms.iter_mut() {
            *k = &*k * c;
        }
        self
    }

    /// Expansion into subset coefficients; `H()` terms are dropped because
    /// the empty-set entropy is identically zero.
    pub fn subsets(&self, space: &CoordinateSpace) -> Result<BTreeMap<usize, Rational>> {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, t) in &self.terms {
            for (set, k) in t.expand(space)? {
                if set.is_empty() {
                    continue;
                }
                let idx = space
                    .index_of(set)
                    .ok_or_else(|| Error::UnknownSubset(format!("H({})", space.render_set(set))))?;
                let e = acc.entry(idx).or_insert_with(Rational::zero);
                *e = &*e + c * int(k);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(acc)
    }

    pub fn parse(s: &str) -> Result<Self> {
        Parser::new(s).expr()
    }
}

/// Coefficient vector of `expr` in `space`, as a `>= 0` form.
pub fn functional(expr: &Expr, space: &CoordinateSpace) -> Result<LinearForm<Rational>> {
    let mut v = vec![Rational::zero(); space.dim()];
    for (i, c) in expr.subsets(space)? {
        v[i] = c;
    }
    Ok(LinearForm::geq(v))
}

impl Add for Expr {
    type Output = Expr;
    fn add(mut self, rhs: Expr) -> Expr {
        self.terms.extend(rhs.terms);
        self
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        self.scaled(&int(-1))
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        self + (-rhs)
    }
}

impl Mul<Expr> for i64 {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        rhs.scaled(&int(self))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, t)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k > 0 {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{t}")?;
            } else {
                write!(f, "{mag} {t}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Expr {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Expr::parse(s)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in `{}`", self.pos, self.src))
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(ch) {
            self.pos += ch.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{ch}`")))
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if f(c) {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
        &self.src[start..self.pos]
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut out = Expr::zero();
        let mut first = true;
        loop {
            let negative = if self.eat('+') {
                false
            } else if self.eat('-') {
                true
            } else if first {
                false
            } else if self.peek().is_none() {
                break;
            } else {
                return Err(self.err("expected `+` or `-`"));
            };
            first = false;
            let mut c = self.coefficient()?;
            if negative {
                c = -c;
            }
            let t = self.term()?;
            out.terms.push((c, t));
            if self.peek().is_none() {
                break;
            }
        }
        if out.terms.is_empty() {
            return Err(self.err("empty expression"));
        }
        Ok(out)
    }

    fn coefficient(&mut self) -> Result<Rational> {
        let num = self.take_while(|c| c.is_ascii_digit() || c == '.' || c == '/');
        if num.is_empty() {
            return Ok(Rational::one());
        }
        let value = if let Some((int_part, frac)) = num.split_once('.') {
            let digits = format!("{int_part}{frac}");
            let n: i64 = digits.parse().map_err(|_| self.err("bad number"))?;
            Rational::new(n.into(), 10i64.pow(frac.len() as u32).into())
        } else {
            Rational::from_str(num).map_err(|_| self.err("bad number"))?
        };
        self.eat('*');
        Ok(value)
    }

    fn names(&mut self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        loop {
            let n = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
            if n.is_empty() {
                return Err(self.err("expected a variable name"));
            }
            out.push(n.to_string());
            if !self.eat(',') {
                return Ok(out);
            }
        }
    }

    fn term(&mut self) -> Result<Term> {
        let head = self.take_while(|c| c.is_ascii_alphabetic());
        match head {
            "H" => {
                self.expect('(')?;
                let of = self.names()?;
                let given = if self.eat('|') { self.names()? } else { Vec::new() };
                self.expect(')')?;
                Ok(Term::H { of, given })
            }
            "I" => {
                self.expect('(')?;
                let left = self.names()?;
                self.expect(':')?;
                let right = self.names()?;
                let given = if self.eat('|') { self.names()? } else { Vec::new() };
                self.expect(')')?;
                Ok(Term::I { left, right, given })
            }
            _ => Err(self.err("expected `H(` or `I(`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chsh_space() -> CoordinateSpace {
        let v: Vec<String> = ["A0", "A1", "B0", "B1"].iter().map(|s| s.to_string()).collect();
        let ctx: Vec<VarSet> = [(0, 2), (0, 3), (1, 2), (1, 3)]
            .iter()
            .map(|&(a, b)| VarSet::from_indices([a, b]))
            .collect();
        CoordinateSpace::from_contexts(v, &ctx)
    }

    #[test]
    fn conditional_entropy() {
        let sp = chsh_space();
        let f = functional(&Expr::h_given(&["A0"], &["B0"]), &sp).unwrap();
        assert_eq!(f.render(&sp), "-H(B0) +H(A0,B0) >= 0");
    }

    #[test]
    fn empty_conditioning_is_plain_mutual_information() {
        let sp = chsh_space();
        let a = functional(&Expr::i_given(&["A0"], &["B1"], &[]), &sp).unwrap();
        let b = functional(&Expr::parse("I(A0:B1)").unwrap(), &sp).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parse_and_display_round_trip() {
        let e = Expr::parse("H(A0|B0) - 2 I(A0:B1) + 1/2 H(A1,B1)").unwrap();
        assert_eq!(e.to_string(), "H(A0|B0) - 2 I(A0:B1) + 1/2 H(A1,B1)");
        assert_eq!(Expr::parse(&e.to_string()).unwrap(), e);
        assert!(Expr::parse("H(A0").is_err());
        assert!(Expr::parse("X(A0)").is_err());
        assert!(Expr::parse("0.25 H(A0)").is_ok());
    }

    #[test]
    fn subset_outside_space_is_reported() {
        let sp = chsh_space();
        match functional(&Expr::h(&["A0", "A1"]), &sp) {
            Err(Error::UnknownSubset(s)) => assert_eq!(s, "H(A0,A1)"),
            other => panic!("{other:?}"),
        }
    }
}
