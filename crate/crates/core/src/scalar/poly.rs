//! Dense univariate polynomials in `q` with arbitrary-precision integer
//! coefficients. Coefficients are stored in ascending order and the vector
//! never carries trailing zeros, so the zero polynomial is the empty vector.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree in `q`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Lowest power of `q` with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn neg(&self) -> Self {
        ZPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        ZPoly { coeffs }
    }

    /// Divide by `q^k`; the caller guarantees `k <= valuation`.
    pub fn unshift(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        debug_assert!(self.valuation().unwrap() >= k);
        ZPoly { coeffs: self.coeffs[k..].to_vec() }
    }

    /// Divide every coefficient by `c`, which must divide each of them.
    pub fn div_exact_scalar(&self, c: &BigInt) -> Self {
        ZPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|a| {
                    debug_assert!((a % c).is_zero());
                    a / c
                })
                .collect(),
        }
    }

    /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        self.div_exact_scalar(&c)
    }

    pub fn eval_i64(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    fn pseudo_rem(&self, b: &Self) -> Self {
        let db = b.degree().expect("pseudo_rem by zero");
        let lb = b.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading().unwrap().clone();
            // r <- lb * r - lr * q^(dr-db) * b
            r = r.scale(&lb).sub(&b.shift(dr - db).scale(&lr));
        }
        r
    }

    /// Greatest common divisor in `Z[q]`, normalized to positive leading
    /// coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize_sign();
        }
        if other.is_zero() {
            return self.normalize_sign();
        }
        let cont = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&cont)
    }

    fn normalize_sign(&self) -> Self {
        match self.leading() {
            Some(l) if l.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    /// Exact division in `Z[q]`. Returns `None` when `b` does not divide
    /// `self` with integer quotient.
    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        let db = b.degree().expect("division by zero polynomial");
        let lb = b.leading().unwrap();
        let mut r = self.clone();
        let mut quot = vec![BigInt::zero(); self.coeffs.len().saturating_sub(db).max(1)];
        while let Some(dr) = r.degree() {
            if dr < db {
                return None;
            }
            let (c, rem) = r.leading().unwrap().div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            quot[dr - db] = c.clone();
            r = r.sub(&b.shift(dr - db).scale(&c));
        }
        Some(Self::from_coeffs(quot))
    }

    /// Reverse the coefficient list over `deg` (used for `q -> 1/q`).
    pub fn reverse(&self, deg: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[deg - i] = c.clone();
        }
        Self::from_coeffs(coeffs)
    }

    pub fn cmp_size(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| self.term_count().cmp(&other.term_count()))
    }
}

impl fmt::Debug for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ZPoly{:?}", self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> ZPoly {
        ZPoly::from_i64(c)
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (q-1)(q+1) and (q-1)(q^2+q+1)
        let a = p(&[-1, 0, 1]);
        let b = p(&[-1, 0, 0, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn gcd_keeps_integer_content() {
        let a = p(&[4, 4]);
        let b = p(&[6, 6]);
        assert_eq!(a.gcd(&b), p(&[2, 2]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[-1, 0, 0, 1]);
        assert_eq!(a.div_exact(&p(&[-1, 1])), Some(p(&[1, 1, 1])));
        assert_eq!(a.div_exact(&p(&[1, 1])), None);
        assert_eq!(p(&[3]).div_exact(&p(&[2])), None);
    }

    #[test]
    fn zero_is_trimmed() {
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[1, -1]).add(&p(&[-1, 1])), ZPoly::zero());
    }
}
