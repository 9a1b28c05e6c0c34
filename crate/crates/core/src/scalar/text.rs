//! Canonical text for scalars.
//!
//! Denominators are split as `q^k * D` with `D(0) != 0`. When `D` is an
//! integer the value prints as a Laurent polynomial with rational
//! coefficients (`3/2*q^-1+q`); otherwise as `N*(D)^-1` with `D` written so
//! that its constant term is positive, e.g. `(1-q)^-1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::ZPoly;
use super::rational::RationalFunction;

struct Split {
    /// Laurent numerator terms `(exponent, coefficient)`, ascending.
    terms: Vec<(i64, BigInt)>,
    /// Denominator with the `q`-power removed.
    den: ZPoly,
}

fn split(rf: &RationalFunction) -> Split {
    let den = rf.denominator();
    let k = den.valuation().unwrap_or(0);
    let den = den.unshift(k);
    let mut terms = Vec::new();
    for (i, c) in rf.numerator().coeffs().iter().enumerate() {
        if !c.is_zero() {
            terms.push((i as i64 - k as i64, c.clone()));
        }
    }
    Split { terms, den }
}

fn q_power(e: i64) -> String {
    match e {
        1 => "q".to_string(),
        _ => format!("q^{e}"),
    }
}

fn term_text(num: &BigInt, den: &BigInt, e: i64) -> String {
    let g = num.gcd(den);
    let (mut n, mut d) = (num / &g, den / &g);
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    let coeff = if d.is_one() { n.to_string() } else { format!("{n}/{d}") };
    if e == 0 {
        return coeff;
    }
    if d.is_one() && n.is_one() {
        q_power(e)
    } else if d.is_one() && (-&n).is_one() {
        format!("-{}", q_power(e))
    } else {
        format!("{coeff}*{}", q_power(e))
    }
}

fn join_terms(parts: Vec<String>) -> String {
    let mut out = String::new();
    for (i, p) in parts.into_iter().enumerate() {
        if i > 0 && !p.starts_with('-') {
            out.push('+');
        }
        out.push_str(&p);
    }
    out
}

fn zpoly_text(p: &ZPoly) -> String {
    let parts = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| term_text(c, &BigInt::one(), i as i64))
        .collect();
    join_terms(parts)
}

pub fn format_scalar(rf: &RationalFunction) -> String {
    if rf.is_zero() {
        return "0".to_string();
    }
    let Split { mut terms, mut den } = split(rf);
    if den.is_constant() {
        let d = den.coeffs()[0].clone();
        return join_terms(terms.iter().map(|(e, c)| term_text(c, &d, *e)).collect());
    }
    if den.coeffs()[0].is_negative() {
        den = den.neg();
        for (_, c) in terms.iter_mut() {
            *c = -c.clone();
        }
    }
    let num = join_terms(terms.iter().map(|(e, c)| term_text(c, &BigInt::one(), *e)).collect());
    let den_text = format!("({})^-1", zpoly_text(&den));
    match num.as_str() {
        "1" => den_text,
        "-1" => format!("-{den_text}"),
        _ if terms.len() == 1 => format!("{num}*{den_text}"),
        _ => format!("({num})*{den_text}"),
    }
}

/// A scalar is atomic when it prints as a single signed term, so it can sit
/// in front of a monomial without parentheses.
pub fn is_atomic(rf: &RationalFunction) -> bool {
    let s = split(rf);
    s.den.is_constant() && s.terms.len() <= 1
}
