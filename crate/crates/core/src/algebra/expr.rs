use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::RationalFunction;

use super::monomial::{Monomial, VarId};
use super::poly::QPolynomial;
use super::system::RewriteSystem;

/// Expression tree over generators and scalars.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Q,
    Var(VarId),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

impl Expr {
    pub fn int(n: i64) -> Self {
        Expr::Int(BigInt::from(n))
    }

    pub fn var(v: VarId) -> Self {
        Expr::Var(v)
    }

    pub fn mul(a: Expr, b: Expr) -> Self {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn add(a: Expr, b: Expr) -> Self {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Self {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Expr, k: i64) -> Self {
        Expr::Pow(Box::new(a), k)
    }

    /// Rename generator indices.
    pub fn map_vars(&self, f: &impl Fn(VarId) -> VarId) -> Expr {
        match self {
            Expr::Int(n) => Expr::Int(n.clone()),
            Expr::Q => Expr::Q,
            Expr::Var(v) => Expr::Var(f(*v)),
            Expr::Neg(a) => Expr::Neg(Box::new(a.map_vars(f))),
            Expr::Add(a, b) => Expr::Add(Box::new(a.map_vars(f)), Box::new(b.map_vars(f))),
            Expr::Sub(a, b) => Expr::Sub(Box::new(a.map_vars(f)), Box::new(b.map_vars(f))),
            Expr::Mul(a, b) => Expr::Mul(Box::new(a.map_vars(f)), Box::new(b.map_vars(f))),
            Expr::Div(a, b) => Expr::Div(Box::new(a.map_vars(f)), Box::new(b.map_vars(f))),
            Expr::Pow(a, k) => Expr::Pow(Box::new(a.map_vars(f)), *k),
        }
    }

    /// Exponent vector of a product of generator powers, `None` for anything
    /// else.
    pub fn as_monomial(&self, nvars: usize) -> Option<Monomial> {
        fn walk(e: &Expr, k: i64, acc: &mut [i64]) -> bool {
            match e {
                Expr::Int(n) => *n == BigInt::from(1),
                Expr::Var(v) if *v < acc.len() => {
                    acc[*v] += k;
                    true
                }
                Expr::Mul(a, b) => walk(a, k, acc) && walk(b, k, acc),
                Expr::Pow(a, j) => walk(a, k * j, acc),
                _ => false,
            }
        }
        let mut acc = vec![0; nvars];
        walk(self, 1, &mut acc).then(|| Monomial::from_exponents(acc))
    }

    /// Generators raised to a negative power somewhere in the tree.
    pub fn inverted_vars(&self) -> Vec<VarId> {
        fn walk(e: &Expr, neg: bool, out: &mut Vec<VarId>) {
            match e {
                Expr::Var(v) if neg && !out.contains(v) => out.push(*v),
                Expr::Neg(a) => walk(a, neg, out),
                Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                    walk(a, neg, out);
                    walk(b, neg, out);
                }
                Expr::Div(a, b) => {
                    walk(a, neg, out);
                    walk(b, !neg, out);
                }
                Expr::Pow(a, k) => walk(a, neg != (*k < 0), out),
                _ => {}
            }
        }
        let mut out = Vec::new();
        walk(self, false, &mut out);
        out.sort_unstable();
        out
    }

    /// Evaluate when the expression contains no generators.
    pub fn eval_scalar(&self) -> Result<Option<RationalFunction>> {
        Ok(Some(match self {
            Expr::Int(n) => RationalFunction::from_bigint(n.clone()),
            Expr::Q => RationalFunction::q(),
            Expr::Var(_) => return Ok(None),
            Expr::Neg(a) => match a.eval_scalar()? {
                Some(a) => a.neg(),
                None => return Ok(None),
            },
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                let (Some(x), Some(y)) = (a.eval_scalar()?, b.eval_scalar()?) else {
                    return Ok(None);
                };
                match self {
                    Expr::Add(..) => x.add(&y),
                    Expr::Sub(..) => x.sub(&y),
                    Expr::Mul(..) => x.mul(&y),
                    _ => x.div(&y)?,
                }
            }
            Expr::Pow(a, k) => match a.eval_scalar()? {
                Some(a) => a.pow(*k)?,
                None => return Ok(None),
            },
        }))
    }
}

impl RewriteSystem {
    /// Normal form of an expression.
    pub fn eval(&self, e: &Expr) -> Result<QPolynomial> {
        let n = self.nvars();
        Ok(match e {
            Expr::Int(k) => QPolynomial::constant(n, RationalFunction::from_bigint(k.clone())),
            Expr::Q => QPolynomial::constant(n, RationalFunction::q()),
            Expr::Var(v) => {
                if *v >= n {
                    return Err(Error::InvalidArgument(format!("generator index {v} out of range")));
                }
                QPolynomial::var(n, *v)
            }
            Expr::Neg(a) => self.eval(a)?.neg(),
            Expr::Add(a, b) => self.eval(a)?.add(&self.eval(b)?),
            Expr::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?),
            Expr::Mul(a, b) => self.mul(&self.eval(a)?, &self.eval(b)?)?,
            Expr::Div(a, b) => {
                let d = self.eval(b)?;
                if d.is_zero() {
                    return Err(crate::scalar::ScalarError::DivisionByZero.into());
                }
                self.mul(&self.eval(a)?, &self.inverse_unit(&d)?)?
            }
            Expr::Pow(a, k) => self.pow(&self.eval(a)?, *k)?,
        })
    }
}
