//! Adjoint action, semi-invariants and the graded shape of automorphisms
//! of color enveloping algebras.

use serde::Serialize;

use crate::algebra::{Monomial, QPolynomial, VarId};
use crate::error::{Error, Result};
use crate::frontend::{epsilon, AlgebraPresentation, ColorData};
use crate::linalg::solve;
use num_traits::One;

use crate::scalar::RationalFunction;

use super::automorphism::Automorphism;

pub(crate) fn epsilon_at(eps: &[Vec<i64>], g: &[i64], h: Option<&[i64]>) -> RationalFunction {
    match h {
        Some(h) => epsilon(eps, g, h),
        None => RationalFunction::one(),
    }
}

fn color(p: &AlgebraPresentation) -> Result<&ColorData> {
    p.color.as_ref().ok_or_else(|| Error::WrongKind { expected: "ColorEnveloping".into(), found: p.kind.to_string() })
}

/// The common grade of all support monomials, `None` if they differ.
/// Zero has every grade and reports `Some(0)`.
pub fn homogeneous_grade(r: &QPolynomial, p: &AlgebraPresentation) -> Result<Option<Vec<i64>>> {
    let k = color(p)?.epsilon.len();
    let mut grades = r.support().map(|m| p.monomial_grade(m).unwrap_or_else(|| vec![0; k]));
    let Some(first) = grades.next() else {
        return Ok(Some(vec![0; k]));
    };
    Ok(grades.all(|g| g == first).then_some(first))
}

/// `x r - epsilon(g_x, h) r x` for `r` homogeneous of grade `h`.
pub fn adjoint_apply(x: VarId, r: &QPolynomial, p: &AlgebraPresentation) -> Result<QPolynomial> {
    let eps = &color(p)?.epsilon;
    let h = homogeneous_grade(r, p)?.ok_or(Error::NotHomogeneous)?;
    let sys = &p.system;
    let n = sys.nvars();
    let gx = p.grade(x).map(<[i64]>::to_vec).unwrap_or_else(|| vec![0; eps.len()]);
    let xv = QPolynomial::var(n, x);
    let ext_needed = r.has_negative_exponent();
    let owned;
    let s = if ext_needed {
        let vars: Vec<VarId> =
            (0..n).filter(|&v| !sys.is_invertible(v) && r.support().any(|m| m.exponent(v) < 0)).collect();
        owned = sys.laurent_extend(&vars)?;
        &owned
    } else {
        sys
    };
    let left = s.mul(&xv, r)?;
    let right = s.mul(r, &xv)?.scale(&epsilon(eps, &gx, &h));
    Ok(left.sub(&right))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SemiInvariantReport {
    pub homogeneous: bool,
    pub grade: Option<Vec<i64>>,
    /// `(generator, alpha_x)` when `ad(x) v = alpha_x v` for every generator.
    pub weights: Option<Vec<(String, String)>>,
    #[serde(skip)]
    pub weight_values: Option<Vec<RationalFunction>>,
}

pub fn is_semi_invariant(v: &QPolynomial, p: &AlgebraPresentation) -> Result<SemiInvariantReport> {
    color(p)?;
    if v.is_zero() {
        return Err(Error::ZeroElement);
    }
    let Some(grade) = homogeneous_grade(v, p)? else {
        return Ok(SemiInvariantReport { homogeneous: false, grade: None, weights: None, weight_values: None });
    };
    let (lead, lc) = v.terms().next().unwrap();
    let mut values = Vec::new();
    for x in 0..p.nvars() {
        let ad = adjoint_apply(x, v, p)?;
        let alpha = ad.coeff(lead).div(lc)?;
        if ad != v.scale(&alpha) {
            return Ok(SemiInvariantReport {
                homogeneous: true,
                grade: Some(grade),
                weights: None,
                weight_values: None,
            });
        }
        values.push(alpha);
    }
    let weights = values.iter().enumerate().map(|(x, a)| (p.system.name(x).to_string(), a.to_string())).collect();
    Ok(SemiInvariantReport {
        homogeneous: true,
        grade: Some(grade),
        weights: Some(weights),
        weight_values: Some(values),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum Thm25Outcome {
    Shape {
        h: Vec<i64>,
        /// `(generator, alpha_x)` for identity-grade generators.
        translations: Vec<(String, String)>,
    },
    Failure {
        reason: String,
    },
}

/// Find `h` with `sigma(x) = epsilon(h, g_x) x` for non-identity grades and
/// `sigma(x) = x + alpha_x` for identity grade.
pub fn thm25_shape(a: &Automorphism, p: &AlgebraPresentation) -> Result<Thm25Outcome> {
    let eps = &color(p)?.epsilon;
    let k = eps.len();
    let sys = &p.system;
    let n = sys.nvars();
    let fail = |reason: String| Ok(Thm25Outcome::Failure { reason });
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut translations = Vec::new();
    for x in 0..n {
        let g = p.grade(x).map(<[i64]>::to_vec).unwrap_or_else(|| vec![0; k]);
        let img = a.image(x);
        let xm = Monomial::var(n, x);
        let name = sys.name(x);
        if g.iter().all(|&c| c == 0) {
            let one = Monomial::one(n);
            let ok = img.coeff(&xm).is_one() && img.support().all(|m| *m == xm || *m == one);
            if !ok {
                return fail(format!("{name} has identity grade but maps to {}", sys.format(img)));
            }
            translations.push((name.to_string(), img.coeff(&one).to_string()));
            continue;
        }
        let Some((c, _)) = img.as_term().filter(|(_, m)| **m == xm) else {
            return fail(format!("{name} maps to {}, not a scalar multiple of {name}", sys.format(img)));
        };
        let Some(e) = c.as_q_power() else {
            return fail(format!("{name} is scaled by {c}, which is not a power of q"));
        };
        // epsilon(h, g) = q^(h^T E g): one row (E g)^T per generator.
        let eg: Vec<i64> = (0..k).map(|r| (0..k).map(|s| eps[r][s] * g[s]).sum()).collect();
        rows.push(eg.into_iter().map(RationalFunction::from_int).collect::<Vec<_>>());
        rhs.push(RationalFunction::from_int(e));
    }
    let h = if rows.is_empty() {
        vec![0; k]
    } else {
        let Some(sol) = solve(&rows, &rhs) else {
            return fail("no h in the grading group matches the observed scalars".into());
        };
        let mut h = Vec::with_capacity(k);
        for c in &sol.particular {
            match c.as_scaled_q_power() {
                _ if c.is_zero() => h.push(0),
                Some((num, den, 0)) if den.is_one() => match i64::try_from(num) {
                    Ok(v) => h.push(v),
                    Err(_) => return fail("h component out of range".into()),
                },
                _ => return fail(format!("the matching h is not integral ({c})")),
            }
        }
        h
    };
    Ok(Thm25Outcome::Shape { h, translations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auto::conjugation_automorphism;

    const EX42: &str = "algebra E { gen x grade (0,0); gen y grade (1,0); gen z grade (0,1); \
        epsilon [[0,1],[-1,0]]; bracket [x,y] = y; }";

    #[test]
    fn adjoint_examples() {
        let p = AlgebraPresentation::parse(EX42).unwrap();
        let (x, y) = (p.var("x").unwrap(), p.var("y").unwrap());
        let fmt = |r: &QPolynomial| p.system.format(r);
        assert_eq!(fmt(&adjoint_apply(x, &p.eval_str("y").unwrap(), &p).unwrap()), "y");
        assert_eq!(fmt(&adjoint_apply(x, &p.eval_str("1").unwrap(), &p).unwrap()), "0");
        assert_eq!(fmt(&adjoint_apply(y, &p.eval_str("z").unwrap(), &p).unwrap()), "0");
        assert_eq!(adjoint_apply(x, &p.eval_str("y + z").unwrap(), &p), Err(Error::NotHomogeneous));
    }

    #[test]
    fn semi_invariants() {
        let p = AlgebraPresentation::parse(EX42).unwrap();
        let r = is_semi_invariant(&p.eval_str("y").unwrap(), &p).unwrap();
        let w = r.weights.unwrap();
        assert!(w.contains(&("x".into(), "1".into())) && w.contains(&("y".into(), "0".into())));
        assert!(is_semi_invariant(&p.eval_str("x").unwrap(), &p).unwrap().weights.is_none());
        assert!(is_semi_invariant(&p.eval_str("1").unwrap(), &p).unwrap().weights.is_some());
    }

    #[test]
    fn shape_of_conjugation() {
        let p = AlgebraPresentation::parse(EX42).unwrap();
        let y = p.eval_str("y").unwrap();
        let s = conjugation_automorphism(y.as_term().unwrap().1, &p).unwrap();
        assert_eq!(
            thm25_shape(&s, &p).unwrap(),
            Thm25Outcome::Shape { h: vec![-1, 0], translations: vec![("x".into(), "1".into())] }
        );
        let bad = Automorphism::parse(&p, "y = 2*y").unwrap();
        assert!(matches!(thm25_shape(&bad, &p).unwrap(), Thm25Outcome::Failure { .. }));
    }

    #[test]
    fn scalar_images_have_shape() {
        let p = AlgebraPresentation::parse(EX42).unwrap();
        let s = Automorphism::parse(&p, "y = q*y, z = q*z").unwrap();
        assert!(matches!(thm25_shape(&s, &p).unwrap(), Thm25Outcome::Shape { .. }));
    }
}
