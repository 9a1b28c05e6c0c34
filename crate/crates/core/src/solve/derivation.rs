//! Search for `c` with `delta(r) = c r - tau(r) c` over a box of Laurent
//! monomials.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{Monomial, QPolynomial};
use crate::error::{Error, Result};
use crate::frontend::AlgebraPresentation;
use crate::linalg::{solve_sparse, SparseRow};
use crate::scalar::RationalFunction;

use super::ore::OreView;

/// Largest number of unknown coefficients a search may use.
pub const MAX_UNKNOWNS: usize = 4096;

/// Default half-width of the exponent box.
pub const DEFAULT_BOX: i64 = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct InnerWitness {
    /// Solution with every free coefficient set to zero.
    pub c: QPolynomial,
    /// Basis of the `tau`-commuting elements in the box: `k r = tau(r) k`.
    pub kernel: Vec<QPolynomial>,
    pub bound: i64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DerivationSolve {
    Witness(InnerWitness),
    NoneInBox { bound: i64, unknowns: usize },
}

#[derive(Serialize)]
struct WitnessJson<'a> {
    outcome: &'a str,
    bound: i64,
    unknowns: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    kernel: Vec<String>,
}

impl DerivationSolve {
    pub fn witness(&self) -> Option<&InnerWitness> {
        match self {
            DerivationSolve::Witness(w) => Some(w),
            DerivationSolve::NoneInBox { .. } => None,
        }
    }

    pub fn to_json(&self, view: &OreView) -> serde_json::Value {
        let boxed = |b: i64| (2 * b as usize + 1).pow(view.base.len() as u32);
        let j = match self {
            DerivationSolve::Witness(w) => WitnessJson {
                outcome: "witness",
                bound: w.bound,
                unknowns: boxed(w.bound),
                witness: Some(view.sys.format(&w.c)),
                kernel: w.kernel.iter().map(|k| view.sys.format(k)).collect(),
            },
            DerivationSolve::NoneInBox { bound, unknowns } => WitnessJson {
                outcome: "none_in_box",
                bound: *bound,
                unknowns: *unknowns,
                witness: None,
                kernel: Vec::new(),
            },
        };
        serde_json::to_value(j).expect("plain data")
    }
}

/// `c r - tau(r) c - delta(r)` for every base generator `r`, through the
/// engine.
pub fn witness_defect(view: &OreView, c: &QPolynomial) -> Result<Vec<QPolynomial>> {
    let n = view.nvars();
    view.base
        .iter()
        .map(|&s| {
            let r = QPolynomial::var(n, s);
            let lhs = view.ext.mul(c, &r)?.sub(&view.ext.mul(&view.tau(&r)?, c)?);
            Ok(lhs.sub(&view.delta[s]))
        })
        .collect()
}

fn box_monomials(n: usize, vars: &[usize], bound: i64) -> Vec<Monomial> {
    let mut out = vec![vec![0i64; n]];
    for &v in vars {
        out = out
            .into_iter()
            .flat_map(|e| {
                (-bound..=bound).map(move |k| {
                    let mut e = e.clone();
                    e[v] = k;
                    e
                })
            })
            .collect();
    }
    out.into_iter().map(Monomial::from_exponents).collect()
}

pub fn xinner_derivation_solve(p: &AlgebraPresentation, bound: i64) -> Result<DerivationSolve> {
    let view = OreView::new(p)?;
    solve_in_view(&view, bound)
}

pub fn solve_in_view(view: &OreView, bound: i64) -> Result<DerivationSolve> {
    if bound < 1 {
        return Err(Error::InvalidArgument(format!("box bound must be at least 1, got {bound}")));
    }
    let n = view.nvars();
    let nb = view.base.len();
    let unknowns = (2 * bound as u128 + 1).checked_pow(nb as u32).unwrap_or(u128::MAX);
    if unknowns > MAX_UNKNOWNS as u128 {
        return Err(Error::BoxTooLarge { unknowns: unknowns.min(usize::MAX as u128) as usize, cap: MAX_UNKNOWNS });
    }
    let monos = box_monomials(n, &view.base, bound);

    // one equation per (generator, monomial) pair
    let mut index: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut rows: Vec<SparseRow> = Vec::new();
    let mut row_of = |key: (usize, Monomial), rows: &mut Vec<SparseRow>| {
        *index.entry(key).or_insert_with(|| {
            rows.push(SparseRow::new());
            rows.len() - 1
        })
    };
    for (s_idx, &s) in view.base.iter().enumerate() {
        let r = QPolynomial::var(n, s);
        let tr = view.tau(&r)?;
        for (col, m) in monos.iter().enumerate() {
            let mp = QPolynomial::monomial(m.clone());
            let contrib = view.ext.mul(&mp, &r)?.sub(&view.ext.mul(&tr, &mp)?);
            for (mm, c) in contrib.terms() {
                let k = row_of((s_idx, mm.clone()), &mut rows);
                rows[k].insert(col, c.clone());
            }
        }
    }
    let mut rhs = vec![RationalFunction::zero(); rows.len()];
    for (s_idx, &s) in view.base.iter().enumerate() {
        for (m, c) in view.delta[s].terms() {
            let k = row_of((s_idx, m.clone()), &mut rows);
            if k >= rhs.len() {
                rhs.resize(k + 1, RationalFunction::zero());
            }
            rhs[k] = c.clone();
        }
    }
    rhs.resize(rows.len(), RationalFunction::zero());

    let Some(sol) = solve_sparse(rows, rhs, monos.len()) else {
        return Ok(DerivationSolve::NoneInBox { bound, unknowns: monos.len() });
    };
    let assemble = |coeffs: &[RationalFunction]| {
        let mut c = QPolynomial::zero(n);
        for (m, k) in monos.iter().zip(coeffs) {
            c.add_term(m.clone(), k.clone());
        }
        c
    };
    let c = assemble(&sol.particular);
    let kernel: Vec<QPolynomial> = sol.kernel.iter().map(|k| assemble(k)).collect();
    if witness_defect(view, &c)?.iter().any(|d| !d.is_zero()) {
        return Err(Error::InternalDisagreement(format!(
            "solver returned {} which fails the defining identity",
            view.sys.format(&c)
        )));
    }
    Ok(DerivationSolve::Witness(InnerWitness { c, kernel, bound }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(src: &str, b: i64) -> (AlgebraPresentation, DerivationSolve) {
        let p = AlgebraPresentation::parse(src).unwrap();
        let s = xinner_derivation_solve(&p, b).unwrap();
        (p, s)
    }

    #[test]
    fn weyl_witness() {
        let (p, s) = solve("algebra W { gen x; gen y; rel x*y - q*y*x = 1; }", 1);
        let w = s.witness().unwrap();
        assert_eq!(p.system.format(&w.c), "(1-q)^-1 * y^-1");
        assert!(w.kernel.is_empty());
    }

    #[test]
    fn heisenberg_without_witness() {
        let src = "algebra H { gen x; gen y; gen z; rel x*y - q*y*x = z; rel x*z = q*z*x; rel y*z = q^-1*z*y; }";
        let (_, s) = solve(src, 2);
        assert_eq!(s, DerivationSolve::NoneInBox { bound: 2, unknowns: 25 });
    }

    #[test]
    fn box_cap() {
        let p = AlgebraPresentation::parse("algebra W { gen x; gen y; rel x*y - q*y*x = 1; }").unwrap();
        assert!(matches!(xinner_derivation_solve(&p, 5000), Err(Error::BoxTooLarge { .. })));
        assert!(matches!(xinner_derivation_solve(&p, 0), Err(Error::InvalidArgument(_))));
    }
}
