//! Text rendering of polynomials and maps in the same syntax the parser reads.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::form::{squarefree_decomposition, IntBinaryForm};
use crate::arith::poly::ZPoly;

/// `4*x^3-4*x`, `-x`, `x^2+1`, `0`.
pub fn format_poly(p: &ZPoly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        let mag = c.abs();
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    out
}

fn term_count(p: &ZPoly) -> usize {
    p.coeffs().iter().filter(|c| !c.is_zero()).count()
}

fn is_plain_number(p: &ZPoly) -> bool {
    p.degree().unwrap_or(0) == 0 && !p.coeff(0).is_negative()
}

/// `num` alone when `den = 1`, otherwise `num/(den)` with parentheses
/// around any multi-term numerator.
pub fn format_rational_function(num: &ZPoly, den: &ZPoly) -> String {
    if den.is_one() {
        return format_poly(num, "x");
    }
    let n = if term_count(num) > 1 {
        format!("({})", format_poly(num, "x"))
    } else {
        format_poly(num, "x")
    };
    let d = if is_plain_number(den) {
        format_poly(den, "x")
    } else {
        format!("({})", format_poly(den, "x"))
    };
    format!("{n}/{d}")
}

/// A chart polynomial as `c*(a)^i*(b)^j…` from its squarefree decomposition.
pub fn format_factored(p: &ZPoly) -> String {
    factored(p).0
}

/// The factored string and whether it is a bare sum at the top level.
fn factored(p: &ZPoly) -> (String, bool) {
    let Some(deg) = p.degree().filter(|&d| d > 0) else {
        return (format_poly(p, "x"), false);
    };
    let dec = squarefree_decomposition(&IntBinaryForm::from_chart(p, deg))
        .expect("nonzero polynomial");
    if let [(f, 1)] = dec.factors.as_slice() {
        if dec.unit.is_one() {
            return (format_poly(&f.chart(), "x"), term_count(p) > 1);
        }
    }
    let body = dec
        .factors
        .iter()
        .map(|(f, i)| {
            let c = f.chart();
            let s = format_poly(&c, "x");
            let base = if term_count(&c) > 1 { format!("({s})") } else { s };
            if *i > 1 {
                format!("{base}^{i}")
            } else {
                base
            }
        })
        .collect::<Vec<_>>()
        .join("*");
    let unit: &BigInt = &dec.unit;
    let s = if unit.is_one() {
        body
    } else if (-unit).is_one() {
        format!("-{body}")
    } else {
        format!("{unit}*{body}")
    };
    (s, false)
}

/// Like [`format_rational_function`] but with the numerator factored.
pub fn format_rational_function_factored(num: &ZPoly, den: &ZPoly) -> String {
    let (n, is_sum) = factored(num);
    if den.is_one() {
        return n;
    }
    let n = if is_sum { format!("({n})") } else { n };
    let d = format_poly(den, "x");
    let d = if is_plain_number(den) { d } else { format!("({d})") };
    format!("{n}/{d}")
}
