//! Exact elements of the field `Q(q)`.
//!
//! A value is stored as `num / den` with `num, den` in `Z[q]`. The canonical
//! form has `gcd(num, den) = 1` over `Q[q]`, coprime integer contents, and a
//! positive leading coefficient on `den`; two values are equal exactly when
//! their canonical representations are.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::ZPoly;
use super::ScalarError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: ZPoly,
    den: ZPoly,
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction { num: ZPoly::zero(), den: ZPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        RationalFunction { num: ZPoly::constant(n), den: ZPoly::one() }
    }

    /// The rational number `n / d`.
    pub fn from_ratio(n: i64, d: i64) -> Result<Self, ScalarError> {
        Self::from_polys(ZPoly::from_i64(&[n]), ZPoly::from_i64(&[d]))
    }

    /// The transcendental `q`.
    pub fn q() -> Self {
        Self::q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let m = ZPoly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            RationalFunction { num: m, den: ZPoly::one() }
        } else {
            RationalFunction { num: ZPoly::one(), den: m }
        }
    }

    pub fn from_poly(p: ZPoly) -> Self {
        RationalFunction { num: p, den: ZPoly::one() }
    }

    pub fn from_polys(num: ZPoly, den: ZPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: ZPoly, den: ZPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return RationalFunction { num, den };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        if den.leading().unwrap().is_negative() {
            num = num.neg();
            den = den.neg();
        }
        RationalFunction { num, den }
    }

    pub fn numerator(&self) -> &ZPoly {
        &self.num
    }

    pub fn denominator(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value lies in `Z[q]` (denominator 1).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// True for rational constants (no `q` dependence).
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::canonical(self.num.add(&other.num), self.den.clone());
        }
        Self::canonical(self.num.mul(&other.den).add(&other.num.mul(&self.den)), self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return RationalFunction { num: self.num.mul(&other.num), den: ZPoly::one() };
        }
        // cross-cancel first to keep intermediate sizes small
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let (a, d) = if g1.is_one() {
            (self.num.clone(), other.den.clone())
        } else {
            (self.num.div_exact(&g1).unwrap(), other.den.div_exact(&g1).unwrap())
        };
        let (c, b) = if g2.is_one() {
            (other.num.clone(), self.den.clone())
        } else {
            (other.num.div_exact(&g2).unwrap(), self.den.div_exact(&g2).unwrap())
        };
        Self::canonical(a.mul(&c), b.mul(&d))
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, k: i64) -> Result<Self, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// If the value is `c * q^k` for a rational `c`, return `(c_num, c_den, k)`.
    pub fn as_scaled_q_power(&self) -> Option<(BigInt, BigInt, i64)> {
        if self.num.term_count() != 1 || self.den.term_count() != 1 {
            return None;
        }
        let kn = self.num.valuation().unwrap() as i64;
        let kd = self.den.valuation().unwrap() as i64;
        Some((self.num.leading().unwrap().clone(), self.den.leading().unwrap().clone(), kn - kd))
    }

    /// If the value is exactly `q^k`, return `k`.
    pub fn as_q_power(&self) -> Option<i64> {
        match self.as_scaled_q_power() {
            Some((c, d, k)) if c.is_one() && d.is_one() => Some(k),
            _ => None,
        }
    }

    /// Multiplicative order in `Q(q)^*`: only `1` and `-1` have finite order.
    pub fn multiplicative_order(&self) -> Option<u64> {
        if self.is_one() {
            Some(1)
        } else if self.neg().is_one() {
            Some(2)
        } else {
            None
        }
    }

    /// Evaluation homomorphism `q -> x` over the rationals. Returns `None` at
    /// a pole.
    pub fn eval(&self, x: &BigInt) -> Option<(BigInt, BigInt)> {
        let n = self.num.eval_i64(x);
        let d = self.den.eval_i64(x);
        if d.is_zero() {
            return None;
        }
        let g = n.gcd(&d);
        let (mut n, mut d) = if g.is_zero() { (n, d) } else { (n / &g, d / &g) };
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Some((n, d))
    }

    /// The field automorphism `q -> q^-1`.
    pub fn invert_q(&self) -> Self {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let num = self.num.reverse(dn);
        let den = self.den.reverse(dd);
        // f(1/q) = q^-dn * num' / (q^-dd * den')
        let (num, den) = if dn >= dd { (num, den.shift(dn - dd)) } else { (num.shift(dd - dn), den) };
        Self::canonical(num, den)
    }

    /// Rough size measure used for pivot selection in elimination.
    pub fn size(&self) -> usize {
        self.num.coeffs().len() + self.den.coeffs().len()
    }

    pub fn cmp_size(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size())
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_scalar(self))
    }
}

impl From<i64> for RationalFunction {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        RationalFunction::zero()
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
}

impl std::ops::Add for RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: Self) -> Self {
        RationalFunction::add(&self, &rhs)
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        RationalFunction::one()
    }
}

impl std::ops::Mul for RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: Self) -> Self {
        RationalFunction::mul(&self, &rhs)
    }
}
