//! The scalar field `Q(q)` and `q`-integers.

mod poly;
mod rational;
pub mod text;

pub use poly::ZPoly;
pub use rational::RationalFunction;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QIntDirection {
    /// `1 + q + ... + q^(n-1)`
    Ascending,
    /// `1 + q^-1 + ... + q^-(n-1)`
    Descending,
}

/// The `q`-integer `[n]` in either direction. Nonzero for every `n >= 1`
/// because `q` is transcendental.
pub fn q_int(n: i64, direction: QIntDirection) -> Result<RationalFunction, ScalarError> {
    if n <= 0 {
        return Err(ScalarError::InvalidArgument(format!("q_int needs n >= 1, got {n}")));
    }
    let step = match direction {
        QIntDirection::Ascending => 1,
        QIntDirection::Descending => -1,
    };
    Ok((0..n).fold(RationalFunction::zero(), |acc, i| acc.add(&RationalFunction::q_pow(step * i))))
}

/// `1 + t + ... + t^(n-1)` for an arbitrary scalar `t`.
pub fn geometric_sum(t: &RationalFunction, n: u32) -> RationalFunction {
    let mut acc = RationalFunction::zero();
    let mut p = RationalFunction::one();
    for _ in 0..n {
        acc = acc.add(&p);
        p = p.mul(t);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_int_small_cases() {
        assert!(q_int(1, QIntDirection::Ascending).unwrap().is_one());
        let three = q_int(3, QIntDirection::Ascending).unwrap();
        let expected = ZPoly::from_i64(&[1, 1, 1]);
        assert_eq!(three, RationalFunction::from_poly(expected));
        assert!(q_int(0, QIntDirection::Ascending).is_err());
        assert!(q_int(-2, QIntDirection::Descending).is_err());
    }

    #[test]
    fn q_int_times_q_minus_one() {
        // expand (1 + q + ... + q^(n-1)) * (q - 1) coefficientwise
        for n in 1..=6usize {
            let qm1 = RationalFunction::q().sub(&RationalFunction::one());
            let lhs = q_int(n as i64, QIntDirection::Ascending).unwrap().mul(&qm1);
            let mut coeffs = vec![0i64; n + 1];
            for i in 0..n {
                coeffs[i + 1] += 1;
                coeffs[i] -= 1;
            }
            assert_eq!(lhs, RationalFunction::from_poly(ZPoly::from_i64(&coeffs)));
        }
    }

    #[test]
    fn descending_is_q_inverted_ascending() {
        for n in 1..=5 {
            let a = q_int(n, QIntDirection::Ascending).unwrap();
            let d = q_int(n, QIntDirection::Descending).unwrap();
            assert_eq!(a.invert_q(), d);
        }
    }
}
