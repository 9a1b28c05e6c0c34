//! Automorphisms given by generator images, conjugation by monomials and
//! skew derivations.

use serde::Serialize;

use crate::algebra::{Monomial, QPolynomial, RewriteSystem, VarId};
use crate::error::{Error, Result};
use crate::frontend::AlgebraPresentation;
use crate::scalar::RationalFunction;

/// An algebra endomorphism checked against the defining relations.
#[derive(Clone, Debug, PartialEq)]
pub struct Automorphism {
    images: Vec<QPolynomial>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "order", content = "n", rename_all = "lowercase")]
pub enum AutOrder {
    Finite(u64),
    Infinite,
}

/// Check that generator images respect every rewrite rule.
fn respects_relations(sys: &RewriteSystem, images: &[QPolynomial]) -> Result<()> {
    let n = sys.nvars();
    for v in 0..n {
        if images[v].nvars() != n {
            return Err(Error::InvalidAutomorphism(format!("image of {} has the wrong arity", sys.name(v))));
        }
        if images[v].is_zero() {
            return Err(Error::InvalidAutomorphism(format!("{} maps to 0", sys.name(v))));
        }
        if sys.is_invertible(v) && images[v].as_term().is_none() {
            return Err(Error::InvalidAutomorphism(format!(
                "image {} of invertible {} is not a unit",
                sys.format(&images[v]),
                sys.name(v)
            )));
        }
    }
    for j in 0..n {
        for i in 0..j {
            let rule = sys.rule(j, i);
            let lhs = sys.mul(&images[j], &images[i])?;
            let swapped = sys.mul(&images[i], &images[j])?.scale(&rule.scalar);
            let rhs = swapped.add(&sys.substitute(&rule.lower, images)?);
            if lhs != rhs {
                return Err(Error::InvalidAutomorphism(format!(
                    "relation {}*{} is not respected: {} versus {}",
                    sys.name(j),
                    sys.name(i),
                    sys.format(&lhs),
                    sys.format(&rhs)
                )));
            }
        }
    }
    Ok(())
}

impl Automorphism {
    pub fn new(sys: &RewriteSystem, images: Vec<QPolynomial>) -> Result<Self> {
        if images.len() != sys.nvars() {
            return Err(Error::InvalidAutomorphism(format!("expected {} images, got {}", sys.nvars(), images.len())));
        }
        respects_relations(sys, &images)?;
        Ok(Automorphism { images })
    }

    pub fn identity(sys: &RewriteSystem) -> Self {
        let n = sys.nvars();
        Automorphism { images: (0..n).map(|v| QPolynomial::var(n, v)).collect() }
    }

    /// Parse `x = E, y = E`; unlisted generators are fixed.
    pub fn parse(p: &AlgebraPresentation, text: &str) -> Result<Self> {
        let mut auto = Self::identity(&p.system);
        for (v, expr) in crate::frontend::parse_map(text, p.names())? {
            auto.images[v] = p.system.eval(&expr)?;
        }
        Self::new(&p.system, auto.images)
    }

    pub fn images(&self) -> &[QPolynomial] {
        &self.images
    }

    pub fn image(&self, v: VarId) -> &QPolynomial {
        &self.images[v]
    }

    pub fn is_identity(&self) -> bool {
        let n = self.images.len();
        self.images.iter().enumerate().all(|(v, p)| *p == QPolynomial::var(n, v))
    }

    pub fn apply(&self, sys: &RewriteSystem, r: &QPolynomial) -> Result<QPolynomial> {
        sys.substitute(r, &self.images)
    }

    /// `(a o b)(g) = a(b(g))`.
    pub fn compose(sys: &RewriteSystem, a: &Self, b: &Self) -> Result<Self> {
        let images = b.images.iter().map(|g| a.apply(sys, g)).collect::<Result<_>>()?;
        Ok(Automorphism { images })
    }

    /// `x -> alpha_x` when every image is `alpha_x x` plus terms of strictly
    /// lower degree in strictly lower-degree generators.
    pub fn leading_scalars(&self, sys: &RewriteSystem) -> std::result::Result<Vec<RationalFunction>, String> {
        let n = sys.nvars();
        let deg = sys.degrees();
        let mut out = Vec::with_capacity(n);
        for (v, img) in self.images.iter().enumerate() {
            let x = Monomial::var(n, v);
            let alpha = img.coeff(&x);
            if alpha.is_zero() {
                return Err(format!("image of {} has no {} term", sys.name(v), sys.name(v)));
            }
            for m in img.support().filter(|m| **m != x) {
                if m.has_negative() || m.support().any(|u| deg[u] >= deg[v]) {
                    return Err(format!(
                        "image of {} contains {}, which is not of lower degree",
                        sys.name(v),
                        sys.format_monomial(m)
                    ));
                }
            }
            out.push(alpha);
        }
        Ok(out)
    }

    /// Inverse by induction on the assigned degree:
    /// `sigma^-1(g) = alpha^-1 (g - sigma^-1(L_g))`.
    pub fn invert(&self, sys: &RewriteSystem) -> Result<Self> {
        let alphas = self.leading_scalars(sys).map_err(Error::NotInvertibleShape)?;
        let n = sys.nvars();
        let mut order: Vec<VarId> = (0..n).collect();
        order.sort_by_key(|&v| sys.degrees()[v]);
        let mut inv: Vec<Option<QPolynomial>> = vec![None; n];
        for &v in &order {
            let x = Monomial::var(n, v);
            let mut lower = self.images[v].clone();
            lower.add_term(x.clone(), self.images[v].coeff(&x).neg());
            let partial: Vec<QPolynomial> =
                (0..n).map(|u| inv[u].clone().unwrap_or_else(|| QPolynomial::var(n, u))).collect();
            let img = sys.substitute(&lower, &partial)?;
            inv[v] = Some(QPolynomial::var(n, v).sub(&img).scale(&alphas[v].inv()?));
        }
        let images: Vec<QPolynomial> = inv.into_iter().map(Option::unwrap).collect();
        let out = Automorphism { images };
        if !Self::compose(sys, self, &out)?.is_identity() || !Self::compose(sys, &out, self)?.is_identity() {
            return Err(Error::InternalDisagreement("triangular inverse failed to compose to the identity".into()));
        }
        Ok(out)
    }

    /// Finite only for identity or involutions; confirmed by composition.
    pub fn order(&self, sys: &RewriteSystem) -> Result<AutOrder> {
        let alphas = self.leading_scalars(sys).map_err(Error::NotTriangular)?;
        if self.is_identity() {
            return Ok(AutOrder::Finite(1));
        }
        let mut n = 1;
        for a in &alphas {
            match a.multiplicative_order() {
                None => return Ok(AutOrder::Infinite),
                Some(k) => n = n.max(k),
            }
        }
        // A unipotent non-identity map has infinite order in characteristic 0.
        if n == 1 {
            return Ok(AutOrder::Infinite);
        }
        let square = Self::compose(sys, self, self)?;
        Ok(if square.is_identity() { AutOrder::Finite(2) } else { AutOrder::Infinite })
    }

    /// `x = image` lines in generator order.
    pub fn render(&self, sys: &RewriteSystem) -> Vec<(String, String)> {
        self.images.iter().enumerate().map(|(v, p)| (sys.name(v).to_string(), sys.format(p))).collect()
    }
}

/// `sigma(r) = d^-1 r d`, computed in a Laurent extension and required to
/// land back in the algebra.
pub fn conjugation_automorphism(d: &Monomial, p: &AlgebraPresentation) -> Result<Automorphism> {
    let sys = &p.system;
    let n = sys.nvars();
    let vars: Vec<VarId> = d.support().filter(|&v| !sys.is_invertible(v)).collect();
    let ext = if vars.is_empty() { sys.clone() } else { sys.laurent_extend(&vars)? };
    let mut images = Vec::with_capacity(n);
    for v in 0..n {
        let img = ext.conjugate(d, &QPolynomial::var(n, v))?;
        let escapes = img.support().any(|m| m.support().any(|u| m.exponent(u) < 0 && !sys.is_invertible(u)));
        if escapes {
            return Err(Error::NotStabilizing { generator: sys.name(v).to_string(), image: sys.format(&img) });
        }
        images.push(img);
    }
    Automorphism::new(sys, images)
}

/// A `tau`-derivation: `delta(rs) = delta(r) s + tau(r) delta(s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewDerivation {
    pub twist: Automorphism,
    images: Vec<QPolynomial>,
}

impl SkewDerivation {
    pub fn new(sys: &RewriteSystem, twist: Automorphism, images: Vec<QPolynomial>) -> Result<Self> {
        let d = SkewDerivation { twist, images };
        let n = sys.nvars();
        for j in 0..n {
            for i in 0..j {
                let rule = sys.rule(j, i);
                let (xj, xi) = (QPolynomial::var(n, j), QPolynomial::var(n, i));
                let lhs = d.apply(sys, &sys.mul(&xj, &xi)?)?;
                let direct = d.on_word(sys, &[j, i])?;
                if lhs != direct {
                    return Err(Error::InvalidAutomorphism(format!(
                        "skew derivation does not respect {}*{} (scalar {})",
                        sys.name(j),
                        sys.name(i),
                        rule.scalar
                    )));
                }
            }
        }
        Ok(d)
    }

    /// The adjoint map `r -> x r - epsilon(g_x, h) r x` on homogeneous `r`.
    pub fn adjoint(p: &AlgebraPresentation, x: VarId) -> Result<Self> {
        let color = p
            .color
            .as_ref()
            .ok_or_else(|| Error::WrongKind { expected: "ColorEnveloping".into(), found: p.kind.to_string() })?;
        let sys = &p.system;
        let n = sys.nvars();
        let gx = p.grade(x).unwrap_or(&[]).to_vec();
        let twist = (0..n)
            .map(|v| QPolynomial::var(n, v).scale(&super::color::epsilon_at(&color.epsilon, &gx, p.grade(v))))
            .collect();
        let twist = Automorphism::new(sys, twist)?;
        let images =
            (0..n).map(|v| super::color::adjoint_apply(x, &QPolynomial::var(n, v), p)).collect::<Result<_>>()?;
        Self::new(sys, twist, images)
    }

    pub fn images(&self) -> &[QPolynomial] {
        &self.images
    }

    fn on_word(&self, sys: &RewriteSystem, word: &[VarId]) -> Result<QPolynomial> {
        let n = sys.nvars();
        let mut out = QPolynomial::zero(n);
        for k in 0..word.len() {
            let mut t = QPolynomial::one(n);
            for &u in &word[..k] {
                t = sys.mul(&t, self.twist.image(u))?;
            }
            t = sys.mul(&t, &self.images[word[k]])?;
            for &u in &word[k + 1..] {
                t = sys.mul(&t, &QPolynomial::var(n, u))?;
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Extend by the twisted Leibniz rule over normal-form monomials.
    pub fn apply(&self, sys: &RewriteSystem, r: &QPolynomial) -> Result<QPolynomial> {
        let mut out = QPolynomial::zero(sys.nvars());
        for (m, c) in r.terms() {
            if m.has_negative() {
                return Err(Error::Unsupported("skew derivations act on polynomial elements only".into()));
            }
            let word: Vec<VarId> = m.word().into_iter().flat_map(|(v, e)| std::iter::repeat_n(v, e as usize)).collect();
            out.add_scaled(&self.on_word(sys, &word)?, c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX42: &str = "algebra E { gen x grade (0,0); gen y grade (1,0); gen z grade (0,1); \
        epsilon [[0,1],[-1,0]]; bracket [x,y] = y; }";

    fn mono(p: &AlgebraPresentation, text: &str) -> Monomial {
        p.eval_str(text).unwrap().as_term().unwrap().1.clone()
    }

    #[test]
    fn example_42_table() {
        let p = AlgebraPresentation::parse(EX42).unwrap();
        let s = conjugation_automorphism(&mono(&p, "y^2*z^3"), &p).unwrap();
        let x = p.var("x").unwrap();
        let y = p.var("y").unwrap();
        let z = p.var("z").unwrap();
        assert_eq!(p.system.format(s.image(x)), "x + 2");
        assert_eq!(p.system.format(s.image(y)), "q^3*y");
        assert_eq!(p.system.format(s.image(z)), "q^-2*z");
    }

    #[test]
    fn weyl_conjugation_escapes() {
        let p = AlgebraPresentation::parse("algebra W { gen x; gen y; rel x*y - q*y*x = 1; }").unwrap();
        let err = conjugation_automorphism(&mono(&p, "y"), &p).unwrap_err();
        assert_eq!(err, Error::NotStabilizing { generator: "x".into(), image: "q*x + y^-1".into() });
    }

    #[test]
    fn compose_invert_order() {
        let p = AlgebraPresentation::parse(EX42).unwrap();
        let sys = &p.system;
        let a = conjugation_automorphism(&mono(&p, "y"), &p).unwrap();
        let b = conjugation_automorphism(&mono(&p, "z"), &p).unwrap();
        assert_eq!(Automorphism::compose(sys, &a, &b).unwrap(), Automorphism::compose(sys, &b, &a).unwrap());
        let ainv = a.invert(sys).unwrap();
        let yinv = Monomial::var_pow(3, p.var("y").unwrap(), -1);
        assert_eq!(ainv, conjugation_automorphism(&yinv, &p).unwrap());
        assert_eq!(a.order(sys).unwrap(), AutOrder::Infinite);
        assert_eq!(Automorphism::identity(sys).order(sys).unwrap(), AutOrder::Finite(1));
    }

    #[test]
    fn involution_has_order_two() {
        let p = AlgebraPresentation::parse("algebra P { gen x; gen y; rel x*y = q*y*x; }").unwrap();
        let s = Automorphism::parse(&p, "x = -x").unwrap();
        assert_eq!(s.order(&p.system).unwrap(), AutOrder::Finite(2));
        assert!(matches!(Automorphism::parse(&p, "x = x^2"), Err(Error::InvalidAutomorphism(_))));
    }

    #[test]
    fn adjoint_is_skew_derivation() {
        let p = AlgebraPresentation::parse(EX42).unwrap();
        let x = p.var("x").unwrap();
        let d = SkewDerivation::adjoint(&p, x).unwrap();
        let r = p.eval_str("y^2*z").unwrap();
        assert_eq!(d.apply(&p.system, &r).unwrap(), super::super::color::adjoint_apply(x, &r, &p).unwrap());
    }
}
