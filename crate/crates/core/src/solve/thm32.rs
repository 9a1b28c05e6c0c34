//! Stabilizing automorphisms of `B[x; tau, delta]` induced by `w` or by
//! `(x - c)^m w`, and the cross-multiplied inducing criterion.

use serde::Serialize;

use crate::algebra::{Monomial, QPolynomial, RewriteSystem};
use crate::auto::Automorphism;
use crate::error::{Error, Result};
use crate::frontend::AlgebraPresentation;

use super::derivation::witness_defect;
use super::ore::OreView;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Thm32Case {
    One,
    Two,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClosureCheck {
    pub name: &'static str,
    pub value: String,
    pub in_ring: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Thm32Report {
    pub case: Thm32Case,
    pub w: String,
    pub m: i64,
    pub checks: Vec<ClosureCheck>,
    pub accepted: bool,
    /// The first closure element outside the ring.
    pub rejection: Option<String>,
    /// `(generator, image)` of the induced automorphism.
    pub images: Option<Vec<(String, String)>>,
    /// The pair `(a, b)` certifying `a sigma(r) sigma(b) = b r a`.
    pub certificate: Option<(String, String)>,
    #[serde(skip)]
    pub automorphism: Option<Automorphism>,
}

impl Thm32Report {
    pub fn check(&self, name: &str) -> Option<bool> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.in_ring)
    }
}

/// True iff `a sigma(r) sigma(b) = b r a` for `r = 1` and every generator.
pub fn verify_inducing(a: &QPolynomial, b: &QPolynomial, s: &Automorphism, p: &AlgebraPresentation) -> Result<bool> {
    verify_in(&p.system, a, b, s)
}

fn verify_in(sys: &RewriteSystem, a: &QPolynomial, b: &QPolynomial, s: &Automorphism) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroElement);
    }
    let n = sys.nvars();
    let sb = s.apply(sys, b)?;
    let mut rs = vec![QPolynomial::one(n)];
    rs.extend((0..n).map(|v| QPolynomial::var(n, v)));
    for r in rs {
        let lhs = sys.mul_all(&[a, &s.apply(sys, &r)?, &sb])?;
        let rhs = sys.mul_all(&[b, &r, a])?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

fn base_monomial(view: &OreView, w: &Monomial) -> Result<()> {
    if w.exponent(view.t) != 0 {
        return Err(Error::InvalidArgument(format!(
            "{} involves {}",
            view.sys.format_monomial(w),
            view.sys.name(view.t)
        )));
    }
    Ok(())
}

/// Left factor that clears every negative exponent of `e`.
fn clearing_monomial(view: &OreView, e: &QPolynomial) -> Monomial {
    let n = view.nvars();
    let mut d = vec![0i64; n];
    for m in e.support() {
        for (v, x) in m.word() {
            if x < 0 && !view.sys.is_invertible(v) {
                d[v] = d[v].max(-x);
            }
        }
    }
    Monomial::from_exponents(d)
}

/// `(a, b)` with `a^-1 b = v^-1` for `v = P^m w`, without inverting `P`.
fn certificate(view: &OreView, p_poly: &QPolynomial, m: i64, w: &Monomial) -> Result<(QPolynomial, QPolynomial)> {
    let ext = &view.ext;
    let wp = QPolynomial::monomial(w.clone());
    let pm = ext.pow(p_poly, m.abs())?;
    let e = if m >= 0 { ext.mul(&pm, &wp)? } else { ext.mul(&ext.inverse_unit(&wp)?, &pm)? };
    let d = QPolynomial::monomial(clearing_monomial(view, &e));
    let de = ext.mul(&d, &e)?;
    if !view.in_ring(&de) {
        return Err(Error::InternalDisagreement(format!("could not clear denominators of {}", view.sys.format(&e))));
    }
    Ok(if m >= 0 { (de, d) } else { (d, de) })
}

struct Candidate {
    case: Thm32Case,
    w: Monomial,
    m: i64,
    checks: Vec<ClosureCheck>,
}

impl Candidate {
    fn push(&mut self, view: &OreView, name: &'static str, value: &QPolynomial) {
        self.checks.push(ClosureCheck { name, value: view.sys.format(value), in_ring: view.in_ring(value) });
    }

    fn finish(
        self,
        view: &OreView,
        images: impl FnOnce() -> Result<Vec<QPolynomial>>,
        p_poly: &QPolynomial,
    ) -> Result<Thm32Report> {
        let mut report = Thm32Report {
            case: self.case,
            w: view.sys.format_monomial(&self.w),
            m: self.m,
            checks: self.checks,
            accepted: false,
            rejection: None,
            images: None,
            certificate: None,
            automorphism: None,
        };
        if let Some(bad) = report.checks.iter().find(|c| !c.in_ring) {
            report.rejection = Some(format!("{} = {} is not in the ring", bad.name, bad.value));
            return Ok(report);
        }
        let images = images()?;
        if let Some((v, img)) = images.iter().enumerate().find(|(_, img)| !view.in_ring(img)) {
            report.rejection =
                Some(format!("image of {} is {}, not in the ring", view.sys.name(v), view.sys.format(img)));
            return Ok(report);
        }
        let sigma = Automorphism::new(&view.sys, images)?;
        let (a, b) = certificate(view, p_poly, self.m, &self.w)?;
        if !verify_in(&view.sys, &a, &b, &sigma)? {
            return Err(Error::InternalDisagreement(format!(
                "induced map is not certified by a = {}, b = {}",
                view.sys.format(&a),
                view.sys.format(&b)
            )));
        }
        report.accepted = true;
        report.images = Some(sigma.render(&view.sys));
        report.certificate = Some((view.sys.format(&a), view.sys.format(&b)));
        report.automorphism = Some(sigma);
        Ok(report)
    }
}

/// Case with no inner witness: `sigma(r) = w^-1 r w`,
/// `x -> w^-1 tau(w) x + w^-1 delta(w)`.
pub fn thm32_case1(w: &Monomial, p: &AlgebraPresentation) -> Result<Thm32Report> {
    let view = OreView::new(p)?;
    case1_in_view(&view, w)
}

pub fn case1_in_view(view: &OreView, w: &Monomial) -> Result<Thm32Report> {
    base_monomial(view, w)?;
    let ext = &view.ext;
    let n = view.nvars();
    let wp = QPolynomial::monomial(w.clone());
    let winv = ext.inverse_unit(&wp)?;
    let w_inv_tau_w = ext.mul(&winv, &view.tau(&wp)?)?;
    let tau_w_inv_w = ext.mul(&view.tau(&winv)?, &wp)?;
    let w_inv_delta_w = ext.mul(&winv, &view.delta(&wp)?)?;
    let mut cand = Candidate { case: Thm32Case::One, w: w.clone(), m: 0, checks: Vec::new() };
    cand.push(view, "w_inv_tau_w", &w_inv_tau_w);
    cand.push(view, "tau_w_inv_w", &tau_w_inv_w);
    cand.push(view, "w_inv_delta_w", &w_inv_delta_w);
    let images = || -> Result<Vec<QPolynomial>> {
        (0..n)
            .map(|v| {
                if v == view.t {
                    let x = QPolynomial::var(n, v);
                    Ok(ext.mul(&w_inv_tau_w, &x)?.add(&w_inv_delta_w))
                } else {
                    ext.conjugate(w, &QPolynomial::var(n, v))
                }
            })
            .collect()
    };
    cand.finish(view, images, &QPolynomial::zero(n))
}

/// Case with inner witness `c`: `sigma(r) = w^-1 tau^-m(r) w`,
/// `x -> w^-1 tau(w) x + w^-1 (tau^-m(c) - tau(w) c w^-1) w`.
pub fn thm32_case2(w: &Monomial, m: i64, c: &QPolynomial, p: &AlgebraPresentation) -> Result<Thm32Report> {
    let view = OreView::new(p)?;
    case2_in_view(&view, w, m, c)
}

pub fn case2_in_view(view: &OreView, w: &Monomial, m: i64, c: &QPolynomial) -> Result<Thm32Report> {
    base_monomial(view, w)?;
    if !view.in_base(c) || witness_defect(view, c)?.iter().any(|d| !d.is_zero()) {
        return Err(Error::UnverifiedWitness(view.sys.format(c)));
    }
    let ext = &view.ext;
    let n = view.nvars();
    let wp = QPolynomial::monomial(w.clone());
    let winv = ext.inverse_unit(&wp)?;
    let tw = view.tau(&wp)?;
    let w_inv_tau_w = ext.mul(&winv, &tw)?;
    let tau_w_inv_w = ext.mul(&view.tau(&winv)?, &wp)?;
    let closure = view.tau_pow(c, -m)?.sub(&ext.mul_all(&[&tw, c, &winv])?);
    let mut cand = Candidate { case: Thm32Case::Two, w: w.clone(), m, checks: Vec::new() };
    cand.push(view, "w_inv_tau_w", &w_inv_tau_w);
    cand.push(view, "tau_w_inv_w", &tau_w_inv_w);
    cand.push(view, "c_closure", &closure);
    let images = || -> Result<Vec<QPolynomial>> {
        (0..n)
            .map(|v| {
                if v == view.t {
                    let x = QPolynomial::var(n, v);
                    let shift = ext.conjugate(w, &closure)?;
                    Ok(ext.mul(&w_inv_tau_w, &x)?.add(&shift))
                } else {
                    ext.conjugate(w, &view.tau_pow(&QPolynomial::var(n, v), -m)?)
                }
            })
            .collect()
    };
    cand.finish(view, images, &invariant_polynomial(view, c))
}

/// `P(x) = x - c` for the Ore variable `x`.
pub fn invariant_polynomial(view: &OreView, c: &QPolynomial) -> QPolynomial {
    QPolynomial::var(view.nvars(), view.t).sub(c)
}
