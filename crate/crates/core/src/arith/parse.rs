use num_bigint::BigInt;

use super::{MPoly, Rat, RatFunc};
use crate::error::{Error, Result};

/// Recursive-descent parser for the expression grammar:
///
/// ```text
/// expr     := term (('+'|'-') term)*
/// term     := signed ('*' signed | '/' signed)*
/// signed   := '-'? factor
/// factor   := base ('^' uint)?
/// base     := rational | ident | '(' expr ')'
/// rational := uint ('/' uint)?
/// ident    := [a-zA-Z][a-zA-Z0-9_]*
/// ```
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    allowed: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax { offset: self.pos, msg: msg.to_string() })
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.signed()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.signed()?;
            acc = if c == b'*' { acc.mul(&rhs) } else { acc.div(&rhs)? };
        }
        Ok(acc)
    }

    fn signed(&mut self) -> Result<RatFunc> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.factor()?.neg());
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<RatFunc> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let e = self.uint()?;
            let e: i32 = e.try_into().map_err(|_| Error::Syntax { offset: start, msg: "exponent too large".into() })?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected unsigned integer");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn base(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected `)`");
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        let d = self.uint()?;
                        if d == BigInt::from(0) {
                            return Err(Error::DivisionByZero);
                        }
                        return Ok(RatFunc::from_rat(Rat::new(n, d)));
                    }
                    self.pos = save;
                }
                Ok(RatFunc::from_rat(Rat::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident");
                if !self.allowed.contains(&name) {
                    return Err(Error::UnknownVariable { name: name.to_string(), offset: start });
                }
                Ok(RatFunc::var(name))
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses an expression over the given variables into a rational function.
pub fn parse_expr(text: &str, allowed_vars: &[&str]) -> Result<RatFunc> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, allowed: allowed_vars };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parses an expression that must be a polynomial.
pub fn parse_poly(text: &str, allowed_vars: &[&str]) -> Result<MPoly> {
    let e = parse_expr(text, allowed_vars)?;
    e.as_poly().cloned().ok_or_else(|| Error::NotPolynomial(text.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{ri, rq, UPoly};
    use proptest::prelude::*;

    #[test]
    fn parses_univariate() {
        let p = parse_poly("t^4 - 4", &["t"]).unwrap();
        assert_eq!(p.to_upoly("t").unwrap(), UPoly::new("t", vec![ri(-4), ri(0), ri(0), ri(0), ri(1)]));
    }

    #[test]
    fn rejects_implicit_multiplication() {
        match parse_expr("x(x^2", &["x"]) {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_variable_reports_offset() {
        assert_eq!(
            parse_expr("t + s", &["t"]),
            Err(Error::UnknownVariable { name: "s".into(), offset: 4 })
        );
    }

    #[test]
    fn multivariate_factor() {
        let p = parse_poly("t^3*(t-a)*(t-b)", &["t", "a", "b"]).unwrap();
        let q = parse_poly("t^5 - a*t^4 - b*t^4 + a*b*t^3", &["t", "a", "b"]).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn rational_literal_binds_before_power() {
        assert_eq!(parse_expr("2/3^2", &[]).unwrap(), RatFunc::from_rat(rq(4, 9)));
        assert_eq!(parse_expr("2/(3^2)", &[]).unwrap(), RatFunc::from_rat(rq(2, 9)));
        assert_eq!(parse_expr("-2^2", &[]).unwrap(), RatFunc::int(-4));
        assert_eq!(parse_expr("3/x", &["x"]).unwrap(), RatFunc::int(3).div(&RatFunc::var("x")).unwrap());
    }

    #[test]
    fn syntax_errors() {
        assert!(matches!(parse_expr("", &[]), Err(Error::Syntax { offset: 0, .. })));
        assert!(matches!(parse_expr("1 +", &[]), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_expr("(1", &[]), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_expr("x^-1", &["x"]), Err(Error::Syntax { .. })));
        assert_eq!(parse_expr("1/0", &[]), Err(Error::DivisionByZero));
    }

    fn expr_tree() -> impl Strategy<Value = String> {
        let leaf = prop_oneof![
            (0u32..7).prop_map(|n| n.to_string()),
            (1u32..5, 1u32..5).prop_map(|(a, b)| format!("{a}/{b}")),
            prop_oneof![Just("t"), Just("a"), Just("u")].prop_map(String::from),
        ];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(x, y)| format!("({x}) + ({y})")),
                (inner.clone(), inner.clone()).prop_map(|(x, y)| format!("({x}) - ({y})")),
                (inner.clone(), inner.clone()).prop_map(|(x, y)| format!("({x})*({y})")),
                (inner.clone(), 0u32..3).prop_map(|(x, k)| format!("({x})^{k}")),
                (inner.clone(), inner).prop_map(|(x, y)| format!("({x})/(({y})^2 + 1)")),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn print_parse_round_trip(s in expr_tree()) {
            let vars = ["t", "a", "u"];
            if let Ok(x) = parse_expr(&s, &vars) {
                let printed = x.to_string();
                prop_assert_eq!(parse_expr(&printed, &vars).unwrap(), x);
            }
        }
    }
}
