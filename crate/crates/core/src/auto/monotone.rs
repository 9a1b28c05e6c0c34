//! pi-maps, monotone and normalizing elements of quantum spaces.

use serde::Serialize;

use crate::algebra::{Monomial, QPolynomial, RewriteSystem, VarId};
use crate::error::{Error, Result};
use crate::frontend::{AlgebraPresentation, Kind};
use crate::linalg::{solve_sparse, SparseRow};
use crate::scalar::RationalFunction;

/// `pi_D(x_k)` with `D x_k D^-1 = pi_D(x_k) x_k`, indexed by `VarId`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiMap(pub Vec<RationalFunction>);

impl PiMap {
    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(RationalFunction::is_one)
    }

    /// `{x: 1, y: q}` in generator order.
    pub fn render(&self, sys: &RewriteSystem) -> String {
        let parts: Vec<String> = self.0.iter().enumerate().map(|(v, s)| format!("{}: {}", sys.name(v), s)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

fn require_quantum(p: &AlgebraPresentation) -> Result<()> {
    if p.kind == Kind::QuantumSpace {
        Ok(())
    } else {
        Err(Error::WrongKind { expected: "QuantumSpace".into(), found: p.kind.to_string() })
    }
}

/// The quantum torus over a quantum space.
pub fn torus(sys: &RewriteSystem) -> Result<RewriteSystem> {
    let all: Vec<VarId> = (0..sys.nvars()).collect();
    sys.laurent_extend(&all)
}

fn pi_of(sys: &RewriteSystem, d: &Monomial) -> PiMap {
    let n = sys.nvars();
    PiMap(
        (0..n)
            .map(|k| {
                d.word().into_iter().fold(RationalFunction::one(), |acc, (i, j)| {
                    acc.mul(&sys.commutation_scalar(i, k).pow(j).expect("units"))
                })
            })
            .collect(),
    )
}

/// `pi_D(x_k) = prod_l q_{i_l k}^{j_l}` for `D = x_{i_1}^{j_1} ...`.
pub fn pi_map(d: &Monomial, p: &AlgebraPresentation) -> Result<PiMap> {
    require_quantum(p)?;
    Ok(pi_of(&p.system, d))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonotoneReport {
    pub is_monotone: bool,
    /// Shared pi-map, rendered, when monotone.
    pub pi: Option<String>,
    /// Two support monomials with different pi-maps.
    pub witness: Option<(String, String)>,
    #[serde(skip)]
    pub pi_map: Option<PiMap>,
}

pub fn is_monotone(w: &QPolynomial, p: &AlgebraPresentation) -> Result<MonotoneReport> {
    require_quantum(p)?;
    if w.is_zero() {
        return Err(Error::ZeroElement);
    }
    let sys = &p.system;
    let order = w.display_order(sys.degrees());
    let first = order[0].0;
    let pi0 = pi_of(sys, first);
    for (m, _) in &order[1..] {
        if pi_of(sys, m) != pi0 {
            return Ok(MonotoneReport {
                is_monotone: false,
                pi: None,
                witness: Some((sys.format_monomial(first), sys.format_monomial(m))),
                pi_map: None,
            });
        }
    }
    Ok(MonotoneReport { is_monotone: true, pi: Some(pi0.render(sys)), witness: None, pi_map: Some(pi0) })
}

fn leading(w: &QPolynomial, degrees: &[u32]) -> Monomial {
    w.display_order(degrees)[0].0.clone()
}

/// One reduction `v = pi_{D1}(x) x w - w x`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtractStep {
    pub generator: String,
    pub leading: String,
    pub support_before: usize,
    pub support_after: usize,
    pub result: String,
}

/// Reduce `w` to a nonzero monotone element of the ideal it generates,
/// recording each step.
pub fn extract_monotone_trace(w: &QPolynomial, p: &AlgebraPresentation) -> Result<(QPolynomial, Vec<ExtractStep>)> {
    require_quantum(p)?;
    if w.is_zero() {
        return Err(Error::ZeroElement);
    }
    let sys = &p.system;
    let n = sys.nvars();
    let mut cur = w.clone();
    let mut steps = Vec::new();
    loop {
        let pis: Vec<PiMap> = cur.support().map(|m| pi_of(sys, m)).collect();
        let Some(x) = (0..n).rev().find(|&k| pis.iter().any(|pi| pi.0[k] != pis[0].0[k])) else {
            return Ok((cur, steps));
        };
        let d1 = leading(&cur, sys.degrees());
        let scalar = pi_of(sys, &d1).0[x].clone();
        let xv = QPolynomial::var(n, x);
        let v = sys.mul(&xv, &cur)?.scale(&scalar).sub(&sys.mul(&cur, &xv)?);
        if v.is_zero() || v.len() >= cur.len() {
            return Err(Error::InternalDisagreement(format!(
                "reduction by {} did not shrink the support of {}",
                sys.name(x),
                sys.format(&cur)
            )));
        }
        steps.push(ExtractStep {
            generator: sys.name(x).to_string(),
            leading: sys.format_monomial(&d1),
            support_before: cur.len(),
            support_after: v.len(),
            result: sys.format(&v),
        });
        cur = v;
    }
}

pub fn extract_monotone(w: &QPolynomial, p: &AlgebraPresentation) -> Result<QPolynomial> {
    Ok(extract_monotone_trace(w, p)?.0)
}

/// `w = D * f` with `D` the smallest support monomial and `f` central in
/// the quantum torus.
pub fn central_factor(w: &QPolynomial, p: &AlgebraPresentation) -> Result<(Monomial, QPolynomial)> {
    let rep = is_monotone(w, p)?;
    if !rep.is_monotone {
        return Err(Error::NotMonotone);
    }
    let t = torus(&p.system)?;
    let d = w.support().next().unwrap().clone();
    let dinv = t.inverse_unit(&QPolynomial::monomial(d.clone()))?;
    let f = t.mul(&dinv, w)?;
    Ok((d, f))
}

/// Solve `(u_0 + sum u_i x_i) * b = b * x` (or the mirrored equation) for
/// the unknowns `u`.
fn linear_image_exists(sys: &RewriteSystem, b: &QPolynomial, x: VarId, left: bool) -> Result<bool> {
    let n = sys.nvars();
    let xv = QPolynomial::var(n, x);
    let target = if left { sys.mul(b, &xv)? } else { sys.mul(&xv, b)? };
    let mut cols: Vec<QPolynomial> = vec![QPolynomial::one(n)];
    cols.extend((0..n).map(|v| QPolynomial::var(n, v)));
    let products: Vec<QPolynomial> =
        cols.iter().map(|c| if left { sys.mul(c, b) } else { sys.mul(b, c) }).collect::<Result<_>>()?;
    let mut monos: Vec<Monomial> = target.support().cloned().collect();
    for pr in &products {
        monos.extend(pr.support().cloned());
    }
    monos.sort();
    monos.dedup();
    let rows: Vec<SparseRow> = monos
        .iter()
        .map(|m| {
            products
                .iter()
                .enumerate()
                .filter_map(|(c, pr)| {
                    let v = pr.coeff(m);
                    (!v.is_zero()).then_some((c, v))
                })
                .collect()
        })
        .collect();
    let rhs: Vec<RationalFunction> = monos.iter().map(|m| target.coeff(m)).collect();
    Ok(solve_sparse(rows, rhs, cols.len()).is_some())
}

/// Whether `bR = Rb`, via generator images of degree at most one.
pub fn normalizing_by_solve(b: &QPolynomial, p: &AlgebraPresentation) -> Result<bool> {
    if b.is_zero() {
        return Err(Error::ZeroElement);
    }
    let sys = &p.system;
    for x in 0..sys.nvars() {
        if !linear_image_exists(sys, b, x, true)? || !linear_image_exists(sys, b, x, false)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decide `bR = Rb`. In a quantum space the monotone test and the direct
/// solve must agree; other presentations use the solve alone.
pub fn is_normalizing(b: &QPolynomial, p: &AlgebraPresentation) -> Result<bool> {
    let solved = normalizing_by_solve(b, p)?;
    if p.kind != Kind::QuantumSpace {
        return Ok(solved);
    }
    let mono = is_monotone(b, p)?.is_monotone;
    if mono != solved {
        return Err(Error::InternalDisagreement(format!(
            "monotone test says {mono}, linear solve says {solved} for {}",
            p.system.format(b)
        )));
    }
    Ok(mono)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane() -> AlgebraPresentation {
        AlgebraPresentation::parse("algebra P { gen x1; gen x2; rel x1*x2 = q*x2*x1; }").unwrap()
    }

    fn mono(e: &[i64]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn pi_of_single_generator() {
        let p = plane();
        let pi = pi_map(&mono(&[1, 0]), &p).unwrap();
        assert_eq!(pi.0[1], RationalFunction::q());
        assert!(pi_map(&mono(&[0, 0]), &p).unwrap().is_trivial());
    }

    #[test]
    fn extract_in_quantum_plane() {
        let p = plane();
        let w = p.eval_str("x1 + x2").unwrap();
        let rep = is_monotone(&w, &p).unwrap();
        assert!(!rep.is_monotone);
        assert_eq!(rep.witness, Some(("x1".to_string(), "x2".to_string())));
        let (v, steps) = extract_monotone_trace(&w, &p).unwrap();
        assert_eq!(p.system.format(&v), "(-1+q) * x2^2");
        assert_eq!(steps.len(), 1);
        assert_eq!((steps[0].generator.as_str(), steps[0].leading.as_str()), ("x2", "x1"));
        assert!(!is_normalizing(&w, &p).unwrap());
        assert!(is_normalizing(&p.eval_str("x1*x2^2").unwrap(), &p).unwrap());
    }

    #[test]
    fn central_factor_splits() {
        let p = AlgebraPresentation::parse("algebra S { gen x1; gen x2; gen x3; rel x1*x2 = q*x2*x1; }").unwrap();
        let w = p.eval_str("x1*x3 + x1").unwrap();
        let (d, f) = central_factor(&w, &p).unwrap();
        assert_eq!(p.system.format_monomial(&d), "x1");
        assert_eq!(p.system.format(&f), "x3 + 1");
        assert_eq!(central_factor(&p.eval_str("x1 + x2").unwrap(), &p), Err(Error::NotMonotone));
    }

    #[test]
    fn wrong_kind_and_zero() {
        let w = AlgebraPresentation::parse("algebra W { gen x; gen y; rel x*y - q*y*x = 1; }").unwrap();
        assert!(matches!(pi_map(&mono(&[1, 0]), &w), Err(Error::WrongKind { .. })));
        assert_eq!(is_monotone(&QPolynomial::zero(2), &plane()), Err(Error::ZeroElement));
    }

    #[test]
    fn pi_in_three_space() {
        let p = AlgebraPresentation::parse(
            "algebra S { gen x1; gen x2; gen x3; rel x1*x2 = q*x2*x1; rel x1*x3 = q^2*x3*x1; rel x2*x3 = x3*x2; }",
        )
        .unwrap();
        let pi = pi_map(&mono(&[1, -1, 0]), &p).unwrap();
        let q = RationalFunction::q();
        assert_eq!(pi.0[2], q.mul(&q));
    }
}
