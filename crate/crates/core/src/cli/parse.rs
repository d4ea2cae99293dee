//! Map expressions in `x`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary | implicit)*
//! unary := ('+' | '-') unary | power
//! power := atom ('^' integer)?
//! atom  := integer | 'x' | '(' expr ')'
//! ```
//!
//! Implicit multiplication applies before `x` and `(`, so `2x(x-1)` works.
//! Alternatively `num=[c_d,...,c_0];den=[...]` gives coefficient lists in
//! descending degree; entries may be integers or fractions `a/b`.
//!
//! Common factors are never cancelled: `x^2/x` is rejected by the map
//! constructor just as the forms `X^2, XY` would be.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::qpoly::QPoly;
use crate::arith::BigRat;
use crate::error::{Error, Result};
use crate::proj::map::RationalMap;
use crate::proj::point::ProjPointQ;

/// Exponents above this are refused to keep parsing cheap.
const MAX_EXPONENT: u32 = 4096;

/// A parsed quotient of rational-coefficient polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct MapExpr {
    pub source: String,
    pub num: QPoly,
    pub den: QPoly,
}

impl MapExpr {
    pub fn parse(text: &str) -> Result<Self> {
        let (num, den) = if text.trim_start().starts_with("num") {
            parse_coefficient_lists(text)?
        } else {
            let mut p = Parser { s: text.as_bytes(), pos: 0 };
            let v = p.expr()?;
            p.skip_ws();
            if p.pos < p.s.len() {
                return Err(p.error("unexpected character"));
            }
            (v.num, v.den)
        };
        Ok(MapExpr {
            source: text.to_string(),
            num,
            den,
        })
    }

    /// Clears denominators and builds the normalized map.
    pub fn to_map(&self) -> Result<RationalMap> {
        let k = self.num.denominator_lcm().lcm(&self.den.denominator_lcm());
        RationalMap::from_polys(&self.num.to_zpoly_scaled(&k), &self.den.to_zpoly_scaled(&k))
    }
}

pub fn parse_map(text: &str) -> Result<RationalMap> {
    MapExpr::parse(text)?.to_map()
}

/// `inf`, an integer, or `a/b`.
pub fn parse_point(text: &str) -> Result<ProjPointQ> {
    let t = text.trim();
    if matches!(t, "inf" | "infinity" | "∞") {
        return Ok(ProjPointQ::infinity());
    }
    parse_rational(t)
        .map(|r| ProjPointQ::from_rat(&r))
        .ok_or(Error::Parse {
            offset: 0,
            message: format!("expected 'inf', an integer or a fraction, got '{t}'"),
        })
}

/// An integer or `a/b`.
pub fn parse_rational_arg(text: &str) -> Result<BigRat> {
    parse_rational(text.trim()).ok_or(Error::Parse {
        offset: 0,
        message: format!("expected an integer or a fraction, got '{}'", text.trim()),
    })
}

#[derive(Clone, Debug)]
struct RatFn {
    num: QPoly,
    den: QPoly,
}

impl RatFn {
    fn poly(p: QPoly) -> Self {
        RatFn {
            num: p,
            den: QPoly::constant(BigRat::one()),
        }
    }

    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RatFn {
                num: self.num.add(&o.num),
                den: self.den.clone(),
            };
        }
        RatFn {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
    }

    fn neg(&self) -> Self {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn mul(&self, o: &Self) -> Self {
        RatFn {
            num: self.num.mul(&o.num),
            den: self.den.mul(&o.den),
        }
    }

    /// `None` when dividing by zero.
    fn div(&self, o: &Self) -> Option<Self> {
        if o.num.is_zero() {
            return None;
        }
        // Dividing by a constant only rescales the numerator.
        if let (Some(c), Some(e)) = (o.num.as_constant(), o.den.as_constant()) {
            return Some(RatFn {
                num: self.num.scale(&(e / c)),
                den: self.den.clone(),
            });
        }
        Some(RatFn {
            num: self.num.mul(&o.den),
            den: self.den.mul(&o.num),
        })
    }

    fn pow(&self, e: u32) -> Self {
        RatFn {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFn> {
        let mut v = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    v = v.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    v = v.add(&self.term()?.neg());
                }
                _ => return Ok(v),
            }
        }
    }

    fn term(&mut self) -> Result<RatFn> {
        let mut v = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    v = v.mul(&self.unary()?);
                }
                Some(b'/') => {
                    let at = self.pos;
                    self.pos += 1;
                    let d = self.unary()?;
                    v = v.div(&d).ok_or(Error::ZeroDenominator { offset: at })?;
                }
                Some(b'x') | Some(b'(') => v = v.mul(&self.power()?),
                _ => return Ok(v),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFn> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFn> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let n = self.integer()?;
        match u32::try_from(&n) {
            Ok(e) if e <= MAX_EXPONENT => Ok(base.pow(e)),
            _ => Err(Error::Parse {
                offset: start,
                message: format!("exponent must be an integer in 0..={MAX_EXPONENT}"),
            }),
        }
    }

    fn atom(&mut self) -> Result<RatFn> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(RatFn::poly(QPoly::x()))
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RatFn::poly(QPoly::constant(BigRat::from_integer(n))))
            }
            Some(_) => Err(self.error("expected a number, 'x' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("nonempty digit string"))
    }
}

fn parse_coefficient_lists(text: &str) -> Result<(QPoly, QPoly)> {
    let mut num = None;
    let mut den = None;
    let mut offset = 0;
    for part in text.split(';') {
        let trimmed = part.trim();
        let lead = offset + (part.len() - part.trim_start().len());
        offset += part.len() + 1;
        if trimmed.is_empty() {
            continue;
        }
        let (key, list) = trimmed.split_once('=').ok_or(Error::Parse {
            offset: lead,
            message: "expected 'num=[...]' or 'den=[...]'".into(),
        })?;
        let list_at = lead + key.len() + 1;
        let poly = parse_list(list, list_at)?;
        let slot = match key.trim() {
            "num" => &mut num,
            "den" => &mut den,
            _ => {
                return Err(Error::Parse {
                    offset: lead,
                    message: format!("unknown key '{}'", key.trim()),
                })
            }
        };
        if slot.replace(poly).is_some() {
            return Err(Error::Parse {
                offset: lead,
                message: format!("duplicate key '{}'", key.trim()),
            });
        }
    }
    let num = num.ok_or(Error::Parse {
        offset: 0,
        message: "missing 'num'".into(),
    })?;
    let den = den.unwrap_or_else(|| QPoly::constant(BigRat::one()));
    if den.is_zero() {
        return Err(Error::ZeroDenominator { offset: 0 });
    }
    Ok((num, den))
}

/// `[c_d, ..., c_0]` in descending degree.
fn parse_list(list: &str, at: usize) -> Result<QPoly> {
    let lead = list.len() - list.trim_start().len();
    let inner = list
        .trim()
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or(Error::Parse {
            offset: at + lead,
            message: "expected a bracketed list".into(),
        })?;
    let mut coeffs = Vec::new();
    let mut pos = at + lead + 1;
    for entry in inner.split(',') {
        let e = entry.trim();
        if !e.is_empty() {
            let c = parse_rational(e).ok_or(Error::Parse {
                offset: pos + (entry.len() - entry.trim_start().len()),
                message: format!("bad coefficient '{e}'"),
            })?;
            coeffs.push(c);
        } else if inner.trim().is_empty() {
            break;
        } else {
            return Err(Error::Parse {
                offset: pos,
                message: "empty coefficient".into(),
            });
        }
        pos += entry.len() + 1;
    }
    coeffs.reverse();
    Ok(QPoly::new(coeffs))
}

fn parse_rational(s: &str) -> Option<BigRat> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    (!d.is_zero()).then(|| BigRat::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let m = parse_map("-3*x^4+4*x^3").unwrap();
        assert_eq!(m.degree(), 4);
        assert_eq!(m.g().to_string(), "Y^4");
        let m = parse_map("(x^2+x)/(x+2)").unwrap();
        assert_eq!(m.degree(), 2);
        assert_eq!(m.to_string(), "(x^2+x)/(x+2)");
        assert_eq!(parse_map("x/0"), Err(Error::ZeroDenominator { offset: 1 }));
    }

    #[test]
    fn implicit_products_and_fractions() {
        assert_eq!(parse_map("x(x-1)").unwrap(), parse_map("x^2-x").unwrap());
        assert_eq!(parse_map("2x^2 + x/3").unwrap(), parse_map("(6*x^2+x)/3").unwrap());
        assert_eq!(parse_map("(x-1)^2").unwrap().to_string(), "x^2-2*x+1");
        assert_eq!(parse_map("x^2/(1/2)").unwrap().to_string(), "2*x^2");
        assert_eq!(
            parse_map("num=[1,0,2,0,1];den=[4,0,-4,0]").unwrap().to_string(),
            "(x^4+2*x^2+1)/(4*x^3-4*x)"
        );
        assert_eq!(
            parse_map("num=[1/2,0,0]").unwrap(),
            parse_map("x^2/2").unwrap()
        );
    }

    #[test]
    fn errors() {
        assert_eq!(parse_map("x^2/x"), Err(Error::CommonFactor));
        assert!(matches!(parse_map("x^2 +"), Err(Error::Parse { offset: 5, .. })));
        assert!(matches!(parse_map("x $ 2"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_map("(x"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse_map("y"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(
            parse_map("num=[1,zz]"),
            Err(Error::Parse { offset: 7, .. })
        ));
        assert_eq!(parse_map("x/(x-x)"), Err(Error::ZeroDenominator { offset: 1 }));
        assert!(parse_map("3").is_err());
    }

    #[test]
    fn points() {
        assert_eq!(parse_point("inf").unwrap(), ProjPointQ::infinity());
        assert_eq!(parse_point("-2/4").unwrap(), ProjPointQ::from_i64(-1, 2).unwrap());
        assert_eq!(parse_point(" 7 ").unwrap(), ProjPointQ::integer(7));
        assert!(parse_point("1/0").is_err());
        assert!(parse_point("x").is_err());
    }
}
