//! Text format for polynomials: `c_k*x^k + ... + c_0`, optionally with a
//! parameter `z` in the terms (`x^9 - z*x^7 + 1`). Coefficients are integers
//! and are reduced modulo p by the caller.

use std::collections::BTreeMap;

use super::poly::Poly;
use super::{FiniteField, PrimeField};
use crate::error::{Error, Result};

/// Integer coefficients keyed by `(x exponent, z exponent)`; zero terms are
/// dropped.
pub type BivariateTerms = BTreeMap<(u32, u32), i64>;

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("expected an integer"))
    }

    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {}", self.pos))
    }
}

/// Parses a polynomial in `x` and `z` with integer coefficients.
pub fn parse_bivariate(text: &str) -> Result<BivariateTerms> {
    let mut lx = Lexer { s: text.as_bytes(), pos: 0 };
    let mut terms = BivariateTerms::new();
    let mut first = true;
    loop {
        let sign: i64 = if lx.eat(b'-') {
            -1
        } else if lx.eat(b'+') || first {
            1
        } else if lx.peek().is_none() {
            break;
        } else {
            return Err(lx.error("expected '+' or '-'"));
        };
        first = false;
        let (mut coeff, mut xe, mut ze) = (sign, 0u32, 0u32);
        loop {
            match lx.peek() {
                Some(b'x') | Some(b'z') => {
                    let var = lx.s[lx.pos];
                    lx.pos += 1;
                    let e = if lx.eat(b'^') { lx.number()? } else { 1 };
                    let e = u32::try_from(e).map_err(|_| lx.error("exponent too large"))?;
                    if var == b'x' {
                        xe += e;
                    } else {
                        ze += e;
                    }
                }
                Some(c) if c.is_ascii_digit() => {
                    let n = lx.number()?;
                    let n = i64::try_from(n).map_err(|_| lx.error("coefficient too large"))?;
                    coeff = coeff.checked_mul(n).ok_or_else(|| lx.error("coefficient overflow"))?;
                }
                _ => return Err(lx.error("expected a coefficient or variable")),
            }
            if !lx.eat(b'*') {
                break;
            }
        }
        let slot = terms.entry((xe, ze)).or_insert(0);
        *slot = slot.checked_add(coeff).ok_or_else(|| lx.error("coefficient overflow"))?;
        if lx.peek().is_none() {
            break;
        }
    }
    terms.retain(|_, c| *c != 0);
    Ok(terms)
}

/// Parses a univariate polynomial in `x` and reduces it modulo p.
pub fn parse_poly(text: &str, field: &PrimeField) -> Result<Poly<u64>> {
    let terms = parse_bivariate(text)?;
    if terms.keys().any(|&(_, z)| z > 0) {
        return Err(Error::Parse("unexpected parameter z in a univariate polynomial".into()));
    }
    let deg = terms.keys().map(|&(x, _)| x as usize).max().unwrap_or(0);
    let mut coeffs = vec![0u64; deg + 1];
    for (&(x, _), &c) in &terms {
        coeffs[x as usize] = field.from_int(c);
    }
    Ok(Poly::new(field, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_parametric_family() {
        let t = parse_bivariate("x^9 - z*x^7 + 1").unwrap();
        assert_eq!(t, BTreeMap::from([((0, 0), 1), ((7, 1), -1), ((9, 0), 1)]));
    }

    #[test]
    fn coefficients_and_implicit_exponents() {
        let t = parse_bivariate("-3*x^2 + 2*x*z + x - 4").unwrap();
        assert_eq!(
            t,
            BTreeMap::from([((0, 0), -4), ((1, 0), 1), ((1, 1), 2), ((2, 0), -3)])
        );
    }

    #[test]
    fn univariate_reduction_mod_p() {
        let f = PrimeField::new(7).unwrap();
        let p = parse_poly("x^3 - x", &f).unwrap();
        assert_eq!(p.coeffs(), &[0, 6, 0, 1]);
        let q = parse_poly("8*x^2 + 7*x + 15", &f).unwrap();
        assert_eq!(q.coeffs(), &[1, 0, 1]);
    }

    #[test]
    fn malformed_inputs() {
        for bad in ["x^", "x +", "3 x", "x ** 2", "y^2", "x^9 -* 1"] {
            assert!(matches!(parse_bivariate(bad), Err(Error::Parse(_))), "{bad}");
        }
        let f = PrimeField::new(7).unwrap();
        assert!(parse_poly("x + z", &f).is_err());
    }
}
