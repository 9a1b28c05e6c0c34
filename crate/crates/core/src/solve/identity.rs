//! Closed-form identities in Ore extensions.

use crate::algebra::{Monomial, QPolynomial, VarId};
use crate::error::{Error, Result};
use crate::frontend::AlgebraPresentation;
use crate::scalar::{geometric_sum, RationalFunction};

use super::ore::{OreView, QSkew};
use super::thm32::invariant_polynomial;

#[derive(Clone, Debug, PartialEq)]
pub struct PzIdentity {
    /// `(x - c) y` in normal form.
    pub value: QPolynomial,
    /// `lambda` with `(x - c) y = lambda (x y - y x)`.
    pub lambda: RationalFunction,
}

/// Compare `(x - c) y` with `x y - y x` for the Ore variable `x` and the
/// single base generator `y`; they must be proportional.
pub fn weyl_pz_identity(p: &AlgebraPresentation, c: &QPolynomial) -> Result<PzIdentity> {
    let view = OreView::new(p)?;
    let [y] = view.base[..] else {
        return Err(Error::WrongKind {
            expected: "Ore extension of a one-generator base".into(),
            found: p.name.clone(),
        });
    };
    let n = view.nvars();
    let (xv, yv) = (QPolynomial::var(n, view.t), QPolynomial::var(n, y));
    let value = view.ext.mul(&invariant_polynomial(&view, c), &yv)?;
    let comm = view.sys.mul(&xv, &yv)?.sub(&view.sys.mul(&yv, &xv)?);
    let Some((m, lc)) = comm.terms().next() else {
        return Err(Error::IdentityFails("x y - y x vanishes".into()));
    };
    let lambda = value.coeff(m).div(lc)?;
    if value != comm.scale(&lambda) {
        return Err(Error::IdentityFails(format!(
            "{} is not a scalar multiple of {}",
            view.sys.format(&value),
            view.sys.format(&comm)
        )));
    }
    Ok(PzIdentity { value, lambda })
}

/// Coefficient of `x^(n-1)` in `x^n s`, read off the normal form.
pub fn ore_coefficient(view: &OreView, s: VarId, n: i64) -> Result<QPolynomial> {
    let nv = view.nvars();
    if view.t != nv - 1 {
        return Err(Error::InvalidArgument("the Ore variable must be last in the monomial order".into()));
    }
    let xn = QPolynomial::monomial(Monomial::var_pow(nv, view.t, n));
    let prod = view.sys.mul(&xn, &QPolynomial::var(nv, s))?;
    let mut out = QPolynomial::zero(nv);
    for (m, c) in prod.terms() {
        if m.exponent(view.t) == n - 1 {
            let mut e = m.exponents().to_vec();
            e[view.t] = 0;
            out.add_term(Monomial::from_exponents(e), c.clone());
        }
    }
    Ok(out)
}

/// `(1 + lambda + ... + lambda^(n-1)) tau^(n-1)(delta(s))` for a
/// `lambda`-skew derivation.
pub fn ore_coefficient_formula(view: &OreView, s: VarId, n: i64) -> Result<QPolynomial> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("power must be at least 1, got {n}")));
    }
    let lambda = match view.q_skew()? {
        QSkew::Zero => return Ok(QPolynomial::zero(view.nvars())),
        QSkew::Constant(l) => l,
        QSkew::NotSkew(g) => {
            return Err(Error::InvalidArgument(format!("delta is not q-skew (at {g})")));
        }
    };
    let factor = geometric_sum(&lambda, n as u32);
    Ok(view.tau_pow(&view.delta[s], n - 1)?.scale(&factor))
}
