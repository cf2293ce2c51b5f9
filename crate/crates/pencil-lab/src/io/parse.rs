//! Recursive-descent parser for polynomial expressions in two declared
//! variables:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | base ('^' nat)?
//! base   := nat | nat '/' nat | var | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant; juxtaposition is not multiplication.  A
//! unary minus binds looser than `^`, so `-X^2` is −(X²); `(-X)^2` is X².

use num::{BigInt, Zero};
use serde::Deserialize;

use crate::arith::field::q_int;
use crate::arith::{BPoly, Field, Q};
use crate::error::{Error, Result};

/// Largest accepted exponent.
pub const MAX_EXPONENT: u32 = 4096;

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Rational(BigInt, BigInt),
    /// Index into the declared variable names.
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Exact polynomial in the two variables (index 0 ↦ X, 1 ↦ Y).
    pub fn lower(&self) -> BPoly<Q> {
        match self {
            Expr::Int(n) => BPoly::constant(Q::from_integer(n.clone())),
            Expr::Rational(n, d) => BPoly::constant(Q::new(n.clone(), d.clone())),
            Expr::Var(0) => BPoly::x(&()),
            Expr::Var(_) => BPoly::y(&()),
            Expr::Neg(e) => -&e.lower(),
            Expr::Add(a, b) => &a.lower() + &b.lower(),
            Expr::Sub(a, b) => &a.lower() - &b.lower(),
            Expr::Mul(a, b) => &a.lower() * &b.lower(),
            Expr::Pow(e, k) => e.lower().pow(*k),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    vars: [&'a str; 2],
}

fn err(offset: usize, msg: impl Into<String>) -> Error {
    Error::Parse { offset, msg: msg.into() }
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..].bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(err(start, "expected a natural number"));
        }
        self.pos += len;
        Ok(self.src[start..start + len].parse().expect("digits"))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if self.eat('^') {
            let at = self.pos;
            let n = self.nat()?;
            let k = u32::try_from(&n).ok().filter(|&k| k <= MAX_EXPONENT);
            let k = k.ok_or_else(|| err(at, format!("exponent exceeds {MAX_EXPONENT}")))?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(err(self.pos, "expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.nat()?;
                if self.eat('/') {
                    let at = self.pos;
                    let d = self.nat()?;
                    if d.is_zero() {
                        return Err(err(at, "zero denominator"));
                    }
                    return Ok(Expr::Rational(n, d));
                }
                Ok(Expr::Int(n))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                let len: usize = self.src[start..]
                    .chars()
                    .take_while(|c| c.is_alphanumeric() || *c == '_')
                    .map(char::len_utf8)
                    .sum();
                self.pos += len;
                let name = &self.src[start..start + len];
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(Expr::Var(i)),
                    None => Err(err(start, format!("unknown variable '{name}'"))),
                }
            }
            Some(c) => Err(err(self.pos, format!("unexpected '{c}'"))),
            None => Err(err(self.pos, "unexpected end of input")),
        }
    }
}

/// Parse an expression in the variables `vars` into its syntax tree.
pub fn parse_expr(text: &str, vars: [&str; 2]) -> Result<Expr> {
    if vars[0] == vars[1] || vars.iter().any(|v| v.is_empty()) {
        return Err(err(0, "the two variable names must be distinct and nonempty"));
    }
    let mut p = Parser { src: text, pos: 0, vars };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(err(p.pos, "unexpected trailing input (implicit multiplication is not allowed)"));
    }
    Ok(e)
}

/// Parse an expression into an exact polynomial.
pub fn parse_polynomial(text: &str, vars: [&str; 2]) -> Result<BPoly<Q>> {
    Ok(parse_expr(text, vars)?.lower())
}

/// Canonical text of a polynomial in the parser's grammar, highest terms
/// first: `Y^2 - X^3`, `1/2*X^2 + Y`.
pub fn unparse(f: &BPoly<Q>, vars: [&str; 2]) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    let mut terms: Vec<_> = f.terms().into_iter().collect();
    // Total degree descending, then X-degree descending.
    terms.sort_by(|((i1, j1), _), ((i2, j2), _)| (i2 + j2, i2).cmp(&(i1 + j1, i1)));
    for (k, ((i, j), c)) in terms.into_iter().enumerate() {
        let neg = c < q_int(0);
        let a = if neg { -c } else { c };
        out.push_str(match (k, neg) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        });
        let mut mono = Vec::new();
        for (v, e) in [(vars[0], i), (vars[1], j)] {
            match e {
                0 => {}
                1 => mono.push(v.to_string()),
                _ => mono.push(format!("{v}^{e}")),
            }
        }
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono.join("*"));
        } else {
            out.push_str(&format!("{a}*{}", mono.join("*")));
        }
    }
    out
}

/// `{vars: [..], terms: [[[a, b], "num/den"], ...]}`.
#[derive(Debug, Deserialize, serde::Serialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<((usize, usize), String)>,
}

/// Exact term list of a polynomial in the JSON input schema.
pub fn to_json_terms(f: &BPoly<Q>) -> Vec<((usize, usize), String)> {
    f.terms().into_iter().map(|((i, j), c)| ((i, j), c.to_string())).collect()
}

/// Polynomial from the JSON input schema; exponent pairs follow the order
/// of `vars`.
pub fn from_json(text: &str) -> Result<(BPoly<Q>, Vec<String>)> {
    let pj: PolyJson = serde_json::from_str(text).map_err(|e| err(0, format!("invalid polynomial JSON: {e}")))?;
    if pj.vars.len() != 2 {
        return Err(err(0, "expected exactly two variables"));
    }
    let mut terms = Vec::new();
    for ((i, j), c) in &pj.terms {
        let q = parse_rational(c).ok_or_else(|| err(0, format!("invalid coefficient '{c}'")))?;
        terms.push((*i, *j, q));
    }
    // Repeated exponents add up.
    let f = terms.iter().fold(BPoly::zero(&()), |acc, (i, j, c)| &acc + &BPoly::monomial(c.clone(), *i, *j));
    Ok((f, pj.vars))
}

fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    (!d.is_zero()).then(|| Q::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::q_frac;

    const XY: [&str; 2] = ["X", "Y"];

    fn bq(terms: &[(usize, usize, Q)]) -> BPoly<Q> {
        BPoly::from_terms(terms, &())
    }

    #[test]
    fn parses_examples() {
        assert_eq!(parse_polynomial("Y^2 - X^3", XY).unwrap(), bq(&[(0, 2, q_int(1)), (3, 0, q_int(-1))]));
        assert_eq!(
            parse_polynomial("X*(X-1)*Y + X - 2", XY).unwrap(),
            bq(&[(2, 1, q_int(1)), (1, 1, q_int(-1)), (1, 0, q_int(1)), (0, 0, q_int(-2))])
        );
        assert_eq!(parse_polynomial("1/2*X^2 + Y", XY).unwrap(), bq(&[(2, 0, q_frac(1, 2)), (0, 1, q_int(1))]));
        assert_eq!(parse_polynomial(" -(u - v)^2 ", ["u", "v"]).unwrap().total_deg(), 2);
        assert_eq!(parse_polynomial("--X", XY).unwrap(), BPoly::x(&()));
        assert_eq!(parse_polynomial("-X^2", XY).unwrap(), bq(&[(2, 0, q_int(-1))]));
        assert_eq!(parse_polynomial("(-X)^2", XY).unwrap(), bq(&[(2, 0, q_int(1))]));
        assert_eq!(parse_polynomial("X*-Y", XY).unwrap(), bq(&[(1, 1, q_int(-1))]));
    }

    #[test]
    fn error_offsets() {
        let off = |t: &str| match parse_polynomial(t, XY) {
            Err(Error::Parse { offset, .. }) => offset,
            other => panic!("{other:?}"),
        };
        assert_eq!(off("X Y"), 2);
        assert_eq!(off("X + Z"), 4);
        assert_eq!(off("1/0*X"), 2);
        assert_eq!(off("(X + 1"), 6);
        assert_eq!(off("X^"), 2);
        assert_eq!(off("2X"), 1);
        assert_eq!(off(""), 0);
        assert_eq!(off("X^99999"), 2);
    }

    #[test]
    fn unparse_round_trip() {
        let f = bq(&[(0, 2, q_int(1)), (3, 0, q_int(-1)), (1, 1, q_frac(-3, 4)), (0, 0, q_int(7))]);
        let t = unparse(&f, XY);
        assert_eq!(t, "-X^3 - 3/4*X*Y + Y^2 + 7");
        let g = bq(&[(2, 0, q_int(-1)), (0, 0, q_int(1))]);
        assert_eq!(parse_polynomial(&unparse(&g, XY), XY).unwrap(), g);
        assert_eq!(parse_polynomial(&t, XY).unwrap(), f);
    }

    #[test]
    fn json_input() {
        let (f, vars) = from_json(r#"{"vars": ["s", "t"], "terms": [[[0, 2], "1"], [[3, 0], "-1/2"]]}"#).unwrap();
        assert_eq!(vars, vec!["s", "t"]);
        assert_eq!(f, bq(&[(0, 2, q_int(1)), (3, 0, q_frac(-1, 2))]));
        assert!(from_json(r#"{"vars": ["s"], "terms": []}"#).is_err());
        assert!(from_json(r#"{"vars": ["s", "t"], "terms": [[[0, 2], "1/0"]]}"#).is_err());
    }
}
