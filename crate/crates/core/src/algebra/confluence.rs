use serde::Serialize;

use crate::error::Result;

use super::monomial::{Monomial, VarId};
use super::poly::QPolynomial;
use super::system::RewriteSystem;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Overlap {
    pub triple: [String; 3],
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfluenceReport {
    pub checked: usize,
    pub failures: Vec<Overlap>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl RewriteSystem {
    /// One application of the rule for `x_j x_i`, `j > i`.
    fn rule_rhs(&self, j: VarId, i: VarId) -> QPolynomial {
        let n = self.nvars();
        let r = self.rule(j, i);
        let mut e = vec![0; n];
        e[i] = 1;
        e[j] = 1;
        let mut p = r.lower.clone();
        p.add_term(Monomial::from_exponents(e), r.scalar.clone());
        p
    }

    /// Resolve every overlap `x_k x_j x_i` (`k > j > i`) by rewriting the
    /// left pair first and the right pair first, then compare normal forms.
    pub fn confluence_check(&self) -> Result<ConfluenceReport> {
        let n = self.nvars();
        let mut failures = Vec::new();
        let mut checked = 0;
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    if self.rule(k, j).is_scalar() && self.rule(j, i).is_scalar() && self.rule(k, i).is_scalar() {
                        // scalar rules always resolve; still counted
                        checked += 1;
                        continue;
                    }
                    checked += 1;
                    let left = self.mul(&self.rule_rhs(k, j), &QPolynomial::var(n, i))?;
                    let right = self.mul(&QPolynomial::var(n, k), &self.rule_rhs(j, i))?;
                    if left != right {
                        failures.push(Overlap {
                            triple: [self.name(k).to_string(), self.name(j).to_string(), self.name(i).to_string()],
                            left: self.format(&left),
                            right: self.format(&right),
                        });
                    }
                }
            }
        }
        Ok(ConfluenceReport { checked, failures })
    }
}
