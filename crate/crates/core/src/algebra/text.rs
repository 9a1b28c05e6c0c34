use crate::scalar::text::{format_scalar, is_atomic};
use crate::scalar::RationalFunction;

use super::monomial::Monomial;
use super::poly::QPolynomial;
use super::system::RewriteSystem;

/// Split a coefficient into a sign and a body that can stand as a product
/// factor.
fn coeff_parts(c: &RationalFunction) -> (bool, String, bool) {
    let text = format_scalar(c);
    if is_atomic(c) {
        return match text.strip_prefix('-') {
            Some(rest) => (true, rest.to_string(), true),
            None => (false, text, true),
        };
    }
    if !text.contains(")^-1") {
        return (false, format!("({text})"), false);
    }
    match text.strip_prefix('-') {
        Some(rest) => (true, rest.to_string(), false),
        None => (false, text, false),
    }
}

pub fn format_monomial(names: &[String], m: &Monomial) -> String {
    let parts: Vec<String> = m
        .word()
        .into_iter()
        .map(|(v, e)| if e == 1 { names[v].clone() } else { format!("{}^{}", names[v], e) })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Canonical text: graded-lex descending, ` + ` / ` - ` between terms.
pub fn format_polynomial(names: &[String], degrees: &[u32], p: &QPolynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    if let Some(c) = p.as_scalar() {
        return format_scalar(&c);
    }
    let mut out = String::new();
    for (k, (m, c)) in p.display_order(degrees).into_iter().enumerate() {
        let (neg, body, atomic) = coeff_parts(c);
        let term = if m.is_one() {
            body
        } else if atomic && body == "1" {
            format_monomial(names, m)
        } else if atomic {
            format!("{body}*{}", format_monomial(names, m))
        } else {
            format!("{body} * {}", format_monomial(names, m))
        };
        match (k, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&term);
    }
    out
}

impl RewriteSystem {
    pub fn format(&self, p: &QPolynomial) -> String {
        format_polynomial(self.names(), self.degrees(), p)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        format_monomial(self.names(), m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["y".into(), "x".into()]
    }

    #[test]
    fn weyl_style_output() {
        let mut p = QPolynomial::zero(2);
        p.add_term(Monomial::from_exponents(vec![1, 1]), RationalFunction::q());
        p.add_term(Monomial::one(2), RationalFunction::one());
        assert_eq!(format_polynomial(&names(), &[1, 1], &p), "q*y*x + 1");
    }

    #[test]
    fn compound_coefficients() {
        let c = RationalFunction::one().sub(&RationalFunction::q()).inv().unwrap();
        let p = QPolynomial::term(Monomial::from_exponents(vec![-1, 0]), c.clone());
        assert_eq!(format_polynomial(&names(), &[1, 1], &p), "(1-q)^-1 * y^-1");
        let p = QPolynomial::term(
            Monomial::from_exponents(vec![1, 0]),
            RationalFunction::q().add(&RationalFunction::one()),
        );
        assert_eq!(format_polynomial(&names(), &[1, 1], &p), "(1+q) * y");
        let mut p = QPolynomial::var(2, 1);
        p.add_term(Monomial::one(2), c.neg());
        assert_eq!(format_polynomial(&names(), &[1, 1], &p), "x - (1-q)^-1");
    }

    #[test]
    fn zero_and_one() {
        assert_eq!(format_polynomial(&names(), &[1, 1], &QPolynomial::zero(2)), "0");
        assert_eq!(format_polynomial(&names(), &[1, 1], &QPolynomial::one(2)), "1");
        let p = QPolynomial::var(2, 0).neg();
        assert_eq!(format_polynomial(&names(), &[1, 1], &p), "-y");
    }
}
