//! Normal forms by leftmost rewriting of adjacent inversions.

use crate::error::{Error, Result};
use crate::scalar::RationalFunction;

use super::monomial::{compact_word, Monomial, VarId, Word};
use super::poly::QPolynomial;
use super::system::RewriteSystem;

struct Steps {
    used: u64,
    budget: u64,
}

impl Steps {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.budget {
            Err(Error::StepBudgetExceeded(self.budget))
        } else {
            Ok(())
        }
    }
}

fn word_of(m: &Monomial) -> Word {
    m.word()
}

impl RewriteSystem {
    fn check_word(&self, w: &Word) -> Result<()> {
        for &(v, e) in w {
            if e < 0 && !self.is_invertible(v) {
                return Err(Error::NegativePowerOfNonInvertible(format!("{}^{}", self.name(v), e)));
            }
        }
        Ok(())
    }

    fn reduce_into(&self, word: Word, coeff: RationalFunction, acc: &mut QPolynomial, steps: &mut Steps) -> Result<()> {
        let mut stack = vec![(compact_word(word), coeff)];
        while let Some((w, c)) = stack.pop() {
            let pos = w.windows(2).position(|p| p[0].0 > p[1].0);
            let Some(k) = pos else {
                let mut e = vec![0; self.nvars()];
                for (v, x) in &w {
                    e[*v] += x;
                }
                acc.add_term(Monomial::from_exponents(e), c);
                continue;
            };
            steps.tick()?;
            let (j, a) = w[k];
            let (i, b) = w[k + 1];
            let swapped = self.swap(j, a, i, b, steps)?;
            for (m, s) in swapped.terms() {
                let mut nw: Word = w[..k].to_vec();
                nw.extend(word_of(m));
                nw.extend_from_slice(&w[k + 2..]);
                stack.push((compact_word(nw), c.mul(s)));
            }
        }
        Ok(())
    }

    /// Normal form of `x_j^a x_i^b` with `j > i`.
    fn swap(&self, j: VarId, a: i64, i: VarId, b: i64, steps: &mut Steps) -> Result<QPolynomial> {
        let key = (j, a, i, b);
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let n = self.nvars();
        let rule = self.rule(j, i);
        let mut out = QPolynomial::zero(n);
        if rule.is_scalar() {
            let mut e = vec![0; n];
            e[i] = b;
            e[j] = a;
            out.add_term(Monomial::from_exponents(e), rule.scalar.pow(a * b)?);
        } else if a < 0 {
            return Err(Error::NotInvertible {
                var: self.name(j).to_string(),
                reason: format!("negative power met the rule for {}*{}", self.name(j), self.name(i)),
            });
        } else if a > 1 {
            let inner = self.swap(j, 1, i, b, steps)?;
            for (m, c) in inner.terms() {
                let mut w = vec![(j, a - 1)];
                w.extend(word_of(m));
                self.reduce_into(w, c.clone(), &mut out, steps)?;
            }
        } else if b > 0 {
            // x_j x_i^b = (q x_i x_j + p) x_i^(b-1)
            self.reduce_into(vec![(i, 1), (j, 1), (i, b - 1)], rule.scalar.clone(), &mut out, steps)?;
            for (m, c) in rule.lower.terms() {
                let mut w = word_of(m);
                w.push((i, b - 1));
                self.reduce_into(w, c.clone(), &mut out, steps)?;
            }
        } else {
            // x_j x_i^-1 = q^-1 x_i^-1 x_j - q^-1 x_i^-1 p x_i^-1
            let qi = rule.scalar.inv()?;
            self.reduce_into(vec![(i, -1), (j, 1), (i, b + 1)], qi.clone(), &mut out, steps)?;
            for (m, c) in rule.lower.terms() {
                let mut w = vec![(i, -1)];
                w.extend(word_of(m));
                w.push((i, -1));
                w.push((i, b + 1));
                self.reduce_into(w, qi.mul(c).neg(), &mut out, steps)?;
            }
        }
        self.cache.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// Normal form of an arbitrary syllable word.
    pub fn normal_form_word(&self, word: &Word) -> Result<QPolynomial> {
        self.check_word(word)?;
        let mut acc = QPolynomial::zero(self.nvars());
        let mut steps = Steps { used: 0, budget: self.budget() };
        self.reduce_into(word.clone(), RationalFunction::one(), &mut acc, &mut steps)?;
        Ok(acc)
    }

    /// Product of two normal forms, normalized.
    pub fn mul(&self, a: &QPolynomial, b: &QPolynomial) -> Result<QPolynomial> {
        let mut acc = QPolynomial::zero(self.nvars());
        let mut steps = Steps { used: 0, budget: self.budget() };
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let mut w = word_of(ma);
                w.extend(word_of(mb));
                self.check_word(&w)?;
                self.reduce_into(w, ca.mul(cb), &mut acc, &mut steps)?;
            }
        }
        Ok(acc)
    }

    pub fn mul_all(&self, factors: &[&QPolynomial]) -> Result<QPolynomial> {
        let mut acc = QPolynomial::one(self.nvars());
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// Integer power; negative exponents need a unit.
    pub fn pow(&self, p: &QPolynomial, k: i64) -> Result<QPolynomial> {
        let base = if k < 0 { self.inverse_unit(p)? } else { p.clone() };
        let mut acc = QPolynomial::one(self.nvars());
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base)?;
        }
        Ok(acc)
    }

    /// Inverse of `c * m` with `m` a monomial in invertible generators.
    pub fn inverse_unit(&self, p: &QPolynomial) -> Result<QPolynomial> {
        let Some((c, m)) = p.as_term() else {
            return Err(Error::NegativePowerOfNonInvertible(self.format(p)));
        };
        let mut w = m.word();
        w.reverse();
        for s in w.iter_mut() {
            s.1 = -s.1;
        }
        if w.iter().any(|&(v, _)| !self.is_invertible(v)) {
            return Err(Error::NegativePowerOfNonInvertible(self.format(p)));
        }
        Ok(self.normal_form_word(&w)?.scale(&c.inv()?))
    }

    /// Product of monomials in a quantum space: `a * b = gamma * m`.
    pub fn mono_mul(&self, a: &Monomial, b: &Monomial) -> Result<(RationalFunction, Monomial)> {
        if !self.is_scalar_closed() {
            return Err(Error::NotScalarClosed);
        }
        let p = self.mul(&QPolynomial::monomial(a.clone()), &QPolynomial::monomial(b.clone()))?;
        let (c, m) = p.as_term().expect("scalar rules keep products monomial");
        Ok((c.clone(), m.clone()))
    }

    /// `v^-1 r v` for a monomial `v` in invertible generators.
    pub fn conjugate(&self, v: &Monomial, r: &QPolynomial) -> Result<QPolynomial> {
        let vp = QPolynomial::monomial(v.clone());
        let vi = self.inverse_unit(&vp)?;
        self.mul(&self.mul(&vi, r)?, &vp)
    }

    /// Apply an algebra map given by generator images to a normal form.
    /// Negative exponents use the inverse of the image, which must be a unit.
    pub fn substitute(&self, p: &QPolynomial, images: &[QPolynomial]) -> Result<QPolynomial> {
        let mut out = QPolynomial::zero(self.nvars());
        for (m, c) in p.terms() {
            let mut t = QPolynomial::constant(self.nvars(), c.clone());
            for (v, e) in m.word() {
                t = self.mul(&t, &self.pow(&images[v], e)?)?;
            }
            out = out.add(&t);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> RationalFunction {
        RationalFunction::q()
    }

    fn weyl() -> RewriteSystem {
        let mut s = RewriteSystem::new(vec!["y".into(), "x".into()], vec![1, 1]);
        s.set_rule(1, 0, q(), QPolynomial::one(2));
        s
    }

    fn mono(e: &[i64]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn weyl_xy() {
        let s = weyl();
        let p = s.normal_form_word(&vec![(1, 1), (0, 1)]).unwrap();
        assert_eq!(p.coeff(&mono(&[1, 1])), q());
        assert_eq!(p.coeff(&mono(&[0, 0])), RationalFunction::one());
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn weyl_x_y2() {
        let s = weyl();
        let p = s.normal_form_word(&vec![(1, 1), (0, 2)]).unwrap();
        assert_eq!(p.coeff(&mono(&[2, 1])), q().pow(2).unwrap());
        assert_eq!(p.coeff(&mono(&[1, 0])), q().add(&RationalFunction::one()));
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn weyl_x_yinv() {
        let s = weyl().laurent_extend(&[0]).unwrap();
        let p = s.normal_form_word(&vec![(1, 1), (0, -1)]).unwrap();
        let qi = RationalFunction::q_pow(-1);
        assert_eq!(p.coeff(&mono(&[-1, 1])), qi);
        assert_eq!(p.coeff(&mono(&[-2, 0])), qi.neg());
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn laurent_units_cancel() {
        let s = weyl().laurent_extend(&[0]).unwrap();
        let one = QPolynomial::one(2);
        for w in [vec![(0, 3), (0, -3)], vec![(0, -2), (0, 2)]] {
            assert_eq!(s.normal_form_word(&w).unwrap(), one);
        }
    }

    #[test]
    fn negative_power_rejected() {
        let s = weyl();
        assert!(matches!(s.normal_form_word(&vec![(0, -1)]), Err(Error::NegativePowerOfNonInvertible(_))));
    }

    #[test]
    fn quantum_plane_mono_mul() {
        let s = RewriteSystem::quantum_space(
            &["x1", "x2"],
            &[
                vec![RationalFunction::one(), RationalFunction::one()],
                vec![RationalFunction::q_pow(-1), RationalFunction::one()],
            ],
        );
        let (c, m) = s.mono_mul(&mono(&[0, 1]), &mono(&[1, 0])).unwrap();
        assert_eq!((c, m), (RationalFunction::q_pow(-1), mono(&[1, 1])));
        let (c, m) = s.mono_mul(&mono(&[0, 2]), &mono(&[1, 0])).unwrap();
        assert_eq!((c, m), (RationalFunction::q_pow(-2), mono(&[1, 2])));
        let (c, m) = s.mono_mul(&mono(&[3, 1]), &mono(&[0, 0])).unwrap();
        assert_eq!((c, m), (RationalFunction::one(), mono(&[3, 1])));
        assert_eq!(weyl().mono_mul(&mono(&[1, 0]), &mono(&[0, 1])), Err(Error::NotScalarClosed));
    }

    #[test]
    fn budget_is_enforced() {
        let s = weyl().with_budget(3);
        assert_eq!(s.normal_form_word(&vec![(1, 5), (0, 5)]), Err(Error::StepBudgetExceeded(3)));
    }

    #[test]
    fn conjugate_weyl_by_y() {
        let s = weyl().laurent_extend(&[0]).unwrap();
        let r = s.conjugate(&mono(&[1, 0]), &QPolynomial::var(2, 1)).unwrap();
        assert_eq!(r.coeff(&mono(&[0, 1])), q());
        assert_eq!(r.coeff(&mono(&[-1, 0])), RationalFunction::one());
        assert_eq!(r.len(), 2);
    }
}
