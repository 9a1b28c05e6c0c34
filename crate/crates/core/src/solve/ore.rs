//! The Ore-extension reading `R = B[t; tau, delta]` of a presentation.

use crate::algebra::{Monomial, QPolynomial, RewriteSystem, VarId};
use crate::error::{Error, Result};
use crate::frontend::AlgebraPresentation;
use crate::scalar::RationalFunction;

/// `t * s = tau(s) * t + delta(s)` for base generators `s`, with `tau`
/// diagonal. The stored system has every base generator invertible.
#[derive(Clone, Debug)]
pub struct OreView {
    pub t: VarId,
    pub base: Vec<VarId>,
    /// `tau(s) = tau[s] * s`; the entry for `t` is 1.
    pub tau: Vec<RationalFunction>,
    /// `delta(s)` on base generators; zero for `t`.
    pub delta: Vec<QPolynomial>,
    /// The presentation's system, untouched.
    pub sys: RewriteSystem,
    /// Laurent extension of the base.
    pub ext: RewriteSystem,
}

/// Outcome of comparing `delta tau` with `tau delta`.
#[derive(Clone, Debug, PartialEq)]
pub enum QSkew {
    /// `delta` vanishes on the base.
    Zero,
    /// `delta tau = lambda tau delta` on every base generator.
    Constant(RationalFunction),
    /// No single scalar works; the witness generator is named.
    NotSkew(String),
}

impl OreView {
    pub fn new(p: &AlgebraPresentation) -> Result<Self> {
        Self::from_system(&p.system)
    }

    pub fn from_system(sys: &RewriteSystem) -> Result<Self> {
        let n = sys.nvars();
        if n == 0 {
            return Err(Error::WrongKind { expected: "Ore extension".into(), found: "scalar field".into() });
        }
        let pairs = sys.nonscalar_pairs();
        let t = match pairs.first() {
            Some(&(j, _)) => j,
            None => n - 1,
        };
        for &(j, i) in &pairs {
            if j != t {
                return Err(Error::WrongKind {
                    expected: "Ore extension".into(),
                    found: format!("rules with lower terms lead with both {} and {}", sys.name(t), sys.name(j)),
                });
            }
            if sys.rule(j, i).lower.support().any(|m| m.exponent(t) != 0) {
                return Err(Error::WrongKind {
                    expected: "Ore extension".into(),
                    found: format!("delta({}) involves {}", sys.name(i), sys.name(t)),
                });
            }
        }
        let base: Vec<VarId> = (0..n).filter(|&v| v != t).collect();
        let mut tau = vec![RationalFunction::one(); n];
        let mut delta = vec![QPolynomial::zero(n); n];
        for &s in &base {
            tau[s] = sys.commutation_scalar(t, s);
            if t > s {
                delta[s] = sys.rule(t, s).lower.clone();
            }
        }
        let ext = sys.laurent_extend(&base)?;
        Ok(OreView { t, base, tau, delta, sys: sys.clone(), ext })
    }

    pub fn nvars(&self) -> usize {
        self.sys.nvars()
    }

    /// True when no monomial of `p` involves the Ore variable.
    pub fn in_base(&self, p: &QPolynomial) -> bool {
        p.support().all(|m| m.exponent(self.t) == 0)
    }

    /// True when `p` has no negative exponents on generators that are not
    /// invertible in the original presentation.
    pub fn in_ring(&self, p: &QPolynomial) -> bool {
        p.support().all(|m| m.word().iter().all(|&(v, e)| e >= 0 || self.sys.is_invertible(v)))
    }

    /// Scalar with `tau^k(m) = scalar * m` for a base monomial.
    pub fn tau_scalar(&self, m: &Monomial, k: i64) -> Result<RationalFunction> {
        let mut s = RationalFunction::one();
        for (v, e) in m.word() {
            s = s.mul(&self.tau[v].pow(e * k)?);
        }
        Ok(s)
    }

    /// `tau^k(p)` for a base polynomial.
    pub fn tau_pow(&self, p: &QPolynomial, k: i64) -> Result<QPolynomial> {
        let mut out = QPolynomial::zero(self.nvars());
        for (m, c) in p.terms() {
            out.add_term(m.clone(), c.mul(&self.tau_scalar(m, k)?));
        }
        Ok(out)
    }

    pub fn tau(&self, p: &QPolynomial) -> Result<QPolynomial> {
        self.tau_pow(p, 1)
    }

    /// `delta` of `x_s^e`, negative `e` allowed.
    fn delta_power(&self, s: VarId, e: i64) -> Result<QPolynomial> {
        let n = self.nvars();
        let ds = &self.delta[s];
        if e == 0 || ds.is_zero() {
            return Ok(QPolynomial::zero(n));
        }
        let k = e.unsigned_abs() as i64;
        // delta(s^k) = sum_{a<k} tau(s)^a delta(s) s^(k-1-a)
        let mut d = QPolynomial::zero(n);
        for a in 0..k {
            let left = QPolynomial::term(Monomial::var_pow(n, s, a), self.tau[s].pow(a)?);
            let right = QPolynomial::monomial(Monomial::var_pow(n, s, k - 1 - a));
            d = d.add(&self.ext.mul_all(&[&left, ds, &right])?);
        }
        if e > 0 {
            return Ok(d);
        }
        // delta(u^-1) = -tau(u)^-1 delta(u) u^-1 with u = s^k
        let u_inv = QPolynomial::monomial(Monomial::var_pow(n, s, -k));
        let tau_u_inv = u_inv.scale(&self.tau[s].pow(-k)?);
        Ok(self.ext.mul_all(&[&tau_u_inv, &d, &u_inv])?.neg())
    }

    /// `delta` extended to the Laurent base by the twisted Leibniz rule.
    pub fn delta(&self, p: &QPolynomial) -> Result<QPolynomial> {
        let n = self.nvars();
        let mut out = QPolynomial::zero(n);
        for (m, c) in p.terms() {
            if m.exponent(self.t) != 0 {
                return Err(Error::InvalidArgument("delta is defined on the base only".into()));
            }
            // delta(a b) = delta(a) b + tau(a) delta(b), scanning syllables
            let mut prefix = QPolynomial::one(n);
            let word = m.word();
            for (k, &(v, e)) in word.iter().enumerate() {
                let dv = self.delta_power(v, e)?;
                if !dv.is_zero() {
                    let mut rest = Monomial::one(n);
                    for &(w, f) in &word[k + 1..] {
                        rest = rest.add_exponents(&Monomial::var_pow(n, w, f));
                    }
                    let tprefix = self.tau(&prefix)?;
                    let term = self.ext.mul_all(&[&tprefix, &dv, &QPolynomial::monomial(rest)])?;
                    out.add_scaled(&term, c);
                }
                prefix = self.ext.mul(&prefix, &QPolynomial::monomial(Monomial::var_pow(n, v, e)))?;
            }
        }
        Ok(out)
    }

    /// `delta(w)` read off from `t w = tau(w) t + delta(w)`.
    pub fn delta_direct(&self, p: &QPolynomial) -> Result<QPolynomial> {
        let n = self.nvars();
        let tx = QPolynomial::var(n, self.t);
        let lhs = self.ext.mul(&tx, p)?;
        let rhs = self.ext.mul(&self.tau(p)?, &tx)?;
        Ok(lhs.sub(&rhs))
    }

    /// Relations of the base that `tau`, `delta` fail to respect, as
    /// `(s_a, s_b)` name pairs.
    pub fn leibniz_failures(&self) -> Result<Vec<(String, String)>> {
        let n = self.nvars();
        let mut out = Vec::new();
        for (ai, &a) in self.base.iter().enumerate() {
            for &b in &self.base[..ai] {
                // x_a x_b = c x_b x_a
                let c = self.sys.commutation_scalar(a, b);
                let xa = QPolynomial::var(n, a);
                let xb = QPolynomial::var(n, b);
                let lhs = self.delta[a].clone();
                let lhs = self.ext.mul(&lhs, &xb)?.add(&self.ext.mul(&self.tau(&xa)?, &self.delta[b])?);
                let rhs = self.ext.mul(&self.delta[b], &xa)?.add(&self.ext.mul(&self.tau(&xb)?, &self.delta[a])?);
                if lhs != rhs.scale(&c) {
                    out.push((self.sys.name(a).to_string(), self.sys.name(b).to_string()));
                }
            }
        }
        Ok(out)
    }

    /// Compare `delta(tau(s))` with `tau(delta(s))` on base generators.
    pub fn q_skew(&self) -> Result<QSkew> {
        let mut lambda: Option<RationalFunction> = None;
        for &s in &self.base {
            let d = &self.delta[s];
            if d.is_zero() {
                continue;
            }
            let lhs = d.scale(&self.tau[s]);
            let rhs = self.tau(d)?;
            let (m, c) = rhs.terms().next().unwrap();
            let l = lhs.coeff(m).div(c)?;
            if lhs != rhs.scale(&l) || lambda.as_ref().is_some_and(|x| *x != l) {
                return Ok(QSkew::NotSkew(self.sys.name(s).to_string()));
            }
            lambda = Some(l);
        }
        Ok(match lambda {
            Some(l) => QSkew::Constant(l),
            None => QSkew::Zero,
        })
    }
}
