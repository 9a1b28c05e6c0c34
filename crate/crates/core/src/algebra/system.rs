use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::scalar::RationalFunction;

use super::monomial::VarId;
use super::poly::QPolynomial;

pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

/// Environment variable that overrides the default step budget.
pub const STEP_BUDGET_ENV: &str = "QALG_STEP_BUDGET";

/// `x_j x_i -> scalar * x_i x_j + lower` for `j > i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub scalar: RationalFunction,
    pub lower: QPolynomial,
}

impl Rule {
    pub fn is_scalar(&self) -> bool {
        self.lower.is_zero()
    }
}

pub(crate) type SwapKey = (VarId, i64, VarId, i64);

/// Ordered-pair rewrite rules over generators in PBW order.
///
/// The system is immutable once built; normal forms are pure functions of
/// it. Swap results are cached internally.
pub struct RewriteSystem {
    names: Vec<String>,
    degrees: Vec<u32>,
    invertible: Vec<bool>,
    // rules[j][i] for i < j
    rules: Vec<Vec<Rule>>,
    budget: u64,
    pub(crate) cache: Mutex<HashMap<SwapKey, QPolynomial>>,
}

impl Clone for RewriteSystem {
    fn clone(&self) -> Self {
        RewriteSystem {
            names: self.names.clone(),
            degrees: self.degrees.clone(),
            invertible: self.invertible.clone(),
            rules: self.rules.clone(),
            budget: self.budget,
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for RewriteSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RewriteSystem")
            .field("names", &self.names)
            .field("degrees", &self.degrees)
            .field("invertible", &self.invertible)
            .field("rules", &self.rules)
            .finish()
    }
}

impl PartialEq for RewriteSystem {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.degrees == other.degrees
            && self.invertible == other.invertible
            && self.rules == other.rules
    }
}

fn budget_from_env() -> u64 {
    std::env::var(STEP_BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&b| b > 0)
        .unwrap_or(DEFAULT_STEP_BUDGET)
}

impl RewriteSystem {
    /// A system in which all generators commute.
    pub fn new(names: Vec<String>, degrees: Vec<u32>) -> Self {
        let n = names.len();
        assert_eq!(degrees.len(), n);
        let rules = (0..n)
            .map(|j| (0..j).map(|_| Rule { scalar: RationalFunction::one(), lower: QPolynomial::zero(n) }).collect())
            .collect();
        RewriteSystem {
            names,
            degrees,
            invertible: vec![false; n],
            rules,
            budget: budget_from_env(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// Convenience constructor: generators of degree 1 with pairwise scalar
    /// rules `x_j x_i = q[j][i] x_i x_j`.
    pub fn quantum_space(names: &[&str], qmat: &[Vec<RationalFunction>]) -> Self {
        let n = names.len();
        let mut sys = Self::new(names.iter().map(|s| s.to_string()).collect(), vec![1; n]);
        for j in 0..n {
            for i in 0..j {
                sys.set_rule(j, i, qmat[j][i].clone(), QPolynomial::zero(n));
            }
        }
        sys
    }

    pub fn set_rule(&mut self, j: VarId, i: VarId, scalar: RationalFunction, lower: QPolynomial) {
        assert!(j > i, "rules are stored for j > i");
        self.rules[j][i] = Rule { scalar, lower };
        self.cache.lock().unwrap().clear();
    }

    pub fn set_invertible(&mut self, v: VarId, inv: bool) {
        self.invertible[v] = inv;
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget.max(1);
        self
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.names[v]
    }

    pub fn var_id(&self, name: &str) -> Option<VarId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn is_invertible(&self, v: VarId) -> bool {
        self.invertible[v]
    }

    pub fn invertible_flags(&self) -> &[bool] {
        &self.invertible
    }

    pub fn rule(&self, j: VarId, i: VarId) -> &Rule {
        &self.rules[j][i]
    }

    /// The scalar `s` with `x_a x_b = s x_b x_a` modulo lower terms.
    pub fn commutation_scalar(&self, a: VarId, b: VarId) -> RationalFunction {
        use std::cmp::Ordering::*;
        match a.cmp(&b) {
            Equal => RationalFunction::one(),
            Greater => self.rules[a][b].scalar.clone(),
            Less => self.rules[b][a].scalar.inv().expect("rule scalars are units"),
        }
    }

    /// True when `x_a` and `x_b` commute up to a scalar exactly.
    pub fn is_scalar_pair(&self, a: VarId, b: VarId) -> bool {
        use std::cmp::Ordering::*;
        match a.cmp(&b) {
            Equal => true,
            Greater => self.rules[a][b].is_scalar(),
            Less => self.rules[b][a].is_scalar(),
        }
    }

    /// True when every rule is scalar (quantum space or torus).
    pub fn is_scalar_closed(&self) -> bool {
        self.rules.iter().flatten().all(Rule::is_scalar)
    }

    /// Pairs `(j, i)` with `j > i` whose rule has lower-order terms.
    pub fn nonscalar_pairs(&self) -> Vec<(VarId, VarId)> {
        let mut out = Vec::new();
        for j in 0..self.nvars() {
            for i in 0..j {
                if !self.rules[j][i].is_scalar() {
                    out.push((j, i));
                }
            }
        }
        out
    }

    /// Rules whose lower-order part does not have strictly smaller weighted
    /// degree than the left side.
    pub fn termination_violations(&self) -> Vec<(VarId, VarId, i64)> {
        let mut out = Vec::new();
        for (j, i) in self.nonscalar_pairs() {
            let lhs = (self.degrees[j] + self.degrees[i]) as i64;
            let d = self.rules[j][i].lower.weighted_degree(&self.degrees).unwrap_or(i64::MIN);
            if d >= lhs {
                out.push((j, i, d));
            }
        }
        out
    }

    /// The same algebra with `vars` flagged invertible.
    ///
    /// A generator may be inverted when, in every rule with lower-order
    /// terms that mentions it, it is the smaller generator of the pair and
    /// the lower-order terms only involve generators that commute with it up
    /// to a scalar.
    pub fn laurent_extend(&self, vars: &[VarId]) -> Result<RewriteSystem> {
        let mut out = self.clone();
        for &v in vars {
            if v >= self.nvars() {
                return Err(Error::InvalidArgument(format!("no generator with index {v}")));
            }
            for (j, i) in self.nonscalar_pairs() {
                if j == v {
                    return Err(Error::NotInvertible {
                        var: self.names[v].clone(),
                        reason: format!(
                            "it is the leading generator of the rule for {}*{}",
                            self.names[j], self.names[i]
                        ),
                    });
                }
                if i != v {
                    continue;
                }
                for m in self.rules[j][i].lower.support() {
                    for u in m.support() {
                        if u == j || !self.is_scalar_pair(u, v) {
                            return Err(Error::NotInvertible {
                                var: self.names[v].clone(),
                                reason: format!(
                                    "the lower terms of {}*{} involve {}, which does not skew-commute with it",
                                    self.names[j], self.names[i], self.names[u]
                                ),
                            });
                        }
                    }
                }
            }
            out.invertible[v] = true;
        }
        Ok(out)
    }

    /// Generators that `laurent_extend` accepts.
    pub fn invertible_candidates(&self) -> Vec<VarId> {
        (0..self.nvars()).filter(|&v| self.laurent_extend(&[v]).is_ok()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Monomial;

    fn weyl() -> RewriteSystem {
        // y < x, x*y = q*y*x + 1
        let mut s = RewriteSystem::new(vec!["y".into(), "x".into()], vec![1, 1]);
        s.set_rule(1, 0, RationalFunction::q(), QPolynomial::one(2));
        s
    }

    #[test]
    fn commutation_scalars_are_reciprocal() {
        let s = weyl();
        assert_eq!(s.commutation_scalar(1, 0), RationalFunction::q());
        assert_eq!(s.commutation_scalar(0, 1), RationalFunction::q_pow(-1));
        assert_eq!(s.commutation_scalar(0, 0), RationalFunction::one());
    }

    #[test]
    fn laurent_extend_base_only() {
        let s = weyl();
        assert!(s.laurent_extend(&[0]).unwrap().is_invertible(0));
        assert!(matches!(s.laurent_extend(&[1]), Err(Error::NotInvertible { .. })));
        assert_eq!(s.laurent_extend(&[]).unwrap(), s);
    }

    #[test]
    fn termination_certificate() {
        let mut s = RewriteSystem::new(vec!["y".into(), "x".into()], vec![1, 1]);
        let mut lower = QPolynomial::zero(2);
        lower.add_term(Monomial::var_pow(2, 0, 2), RationalFunction::one());
        s.set_rule(1, 0, RationalFunction::q(), lower);
        assert_eq!(s.termination_violations(), vec![(1, 0, 2)]);
    }
}
