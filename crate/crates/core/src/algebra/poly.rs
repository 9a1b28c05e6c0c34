use std::collections::BTreeMap;

use crate::scalar::RationalFunction;

use super::monomial::{Monomial, VarId};

/// A finite combination of ordered monomials with coefficients in `Q(q)`.
/// No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QPolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, RationalFunction>,
}

impl QPolynomial {
    pub fn zero(nvars: usize) -> Self {
        QPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: RationalFunction) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, RationalFunction::one())
    }

    pub fn term(m: Monomial, c: RationalFunction) -> Self {
        let mut p = Self::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(m, RationalFunction::one())
    }

    pub fn var(nvars: usize, v: VarId) -> Self {
        Self::monomial(Monomial::var(nvars, v))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial) -> RationalFunction {
        self.terms.get(m).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.nvars(), self.nvars);
        match self.terms.get_mut(&m) {
            Some(e) => {
                let s = e.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *e = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &RationalFunction) {
        if c.is_zero() {
            return;
        }
        for (m, k) in &other.terms {
            self.add_term(m.clone(), k.mul(c));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &RationalFunction::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &RationalFunction::from_int(-1));
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&RationalFunction::from_int(-1))
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        QPolynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, k)| (m.clone(), k.mul(c))).collect() }
    }

    /// The scalar value if the polynomial lies in `Q(q)`.
    pub fn as_scalar(&self) -> Option<RationalFunction> {
        match self.terms.len() {
            0 => Some(RationalFunction::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// `(c, m)` when the polynomial is a single nonzero term `c * m`.
    pub fn as_term(&self) -> Option<(&RationalFunction, &Monomial)> {
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            Some((c, m))
        } else {
            None
        }
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.keys().any(Monomial::has_negative)
    }

    /// Maximum weighted degree over the support, `None` for zero.
    pub fn weighted_degree(&self, degrees: &[u32]) -> Option<i64> {
        self.terms.keys().map(|m| m.weighted_degree(degrees)).max()
    }

    /// The terms of maximal weighted degree.
    pub fn top_part(&self, degrees: &[u32]) -> Self {
        let Some(d) = self.weighted_degree(degrees) else {
            return self.clone();
        };
        QPolynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.weighted_degree(degrees) == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms ordered for display: weighted degree descending, then
    /// exponent vectors lexicographically descending.
    pub fn display_order(&self, degrees: &[u32]) -> Vec<(&Monomial, &RationalFunction)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            b.weighted_degree(degrees).cmp(&a.weighted_degree(degrees)).then_with(|| b.exponents().cmp(a.exponents()))
        });
        v
    }

    /// Apply a scalar map to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&RationalFunction) -> RationalFunction) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Re-embed into a system with more variables (new ones appended).
    pub fn widen(&self, nvars: usize) -> Self {
        let mut out = Self::zero(nvars);
        for (m, c) in &self.terms {
            let mut e = m.exponents().to_vec();
            e.resize(nvars, 0);
            out.add_term(Monomial::from_exponents(e), c.clone());
        }
        out
    }
}
