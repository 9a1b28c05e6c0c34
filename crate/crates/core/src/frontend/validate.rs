//! Structural checks run before any computation.

use serde::Serialize;

use crate::algebra::{Monomial, QPolynomial, VarId};
use crate::linalg::{int_matrix, lattice_index, rank};
use crate::solve::{OreView, QSkew};

use super::presentation::{AlgebraPresentation, Kind};

/// Budget for the confluence pass, so a non-terminating presentation fails
/// the check instead of running for long.
const CONFLUENCE_BUDGET: u64 = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Warn,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    /// No check failed (warnings allowed).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check == name)
    }

    pub fn status(&self, name: &str) -> Option<Status> {
        self.get(name).map(|c| c.status)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| c.status == Status::Fail).map(|c| c.check.as_str()).collect()
    }

    fn push(&mut self, check: &str, status: Status, detail: impl Into<String>) {
        self.checks.push(CheckResult { check: check.to_string(), status, detail: detail.into() });
    }
}

const COLOR_CHECKS: &[&str] = &[
    "color_epsilon_antisymmetric",
    "color_bracket_antisymmetry",
    "color_bracket_linear",
    "color_grade_compatibility",
    "color_jacobi",
    "color_faithful",
    "color_generated",
];

pub fn validate_presentation(p: &AlgebraPresentation) -> ValidationReport {
    let mut r = ValidationReport { checks: Vec::new() };
    let sys = &p.system;
    let n = p.nvars();

    // commutation matrix
    let mut bad = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let prod = sys.commutation_scalar(a, b).mul(&sys.commutation_scalar(b, a));
            if !prod.is_one() {
                bad.push(format!("{},{}", sys.name(a), sys.name(b)));
            }
        }
    }
    if bad.is_empty() {
        r.push("commutation_matrix", Status::Pass, format!("{n} generators, q_ii = 1 and q_ij*q_ji = 1"));
    } else {
        r.push("commutation_matrix", Status::Fail, format!("reciprocity fails for {}", bad.join("; ")));
    }

    // termination certificate
    let viol = sys.termination_violations();
    if viol.is_empty() {
        r.push("termination", Status::Pass, "every lower-order term has smaller weighted degree");
    } else {
        let d: Vec<String> = viol
            .iter()
            .map(|&(j, i, deg)| {
                let lhs = sys.degrees()[j] + sys.degrees()[i];
                format!("{}*{}: lower terms of degree {deg} >= {lhs}", sys.name(j), sys.name(i))
            })
            .collect();
        r.push("termination", Status::Fail, d.join("; "));
    }

    // confluence
    let budgeted = sys.clone().with_budget(sys.budget().min(CONFLUENCE_BUDGET));
    match budgeted.confluence_check() {
        Ok(c) if c.passed() => r.push("confluence", Status::Pass, format!("{} overlaps resolve", c.checked)),
        Ok(c) => {
            let d: Vec<String> = c
                .failures
                .iter()
                .map(|o| format!("({},{},{}): {} != {}", o.triple[0], o.triple[1], o.triple[2], o.left, o.right))
                .collect();
            r.push("confluence", Status::Fail, d.join("; "));
        }
        Err(e) => r.push("confluence", Status::Fail, e.to_string()),
    }

    // invertible generators
    let inv: Vec<VarId> = (0..n).filter(|&v| sys.is_invertible(v)).collect();
    if inv.is_empty() {
        r.push("invertible", Status::Skip, "no inverted generators");
    } else {
        let mut plain = sys.clone();
        for &v in &inv {
            plain.set_invertible(v, false);
        }
        match plain.laurent_extend(&inv) {
            Ok(_) => r.push("invertible", Status::Pass, format!("{} inverted", inv.len())),
            Err(e) => r.push("invertible", Status::Fail, e.to_string()),
        }
    }

    // Ore structure
    if p.kind == Kind::OreExtension {
        match OreView::new(p) {
            Err(e) => {
                r.push("ore_leibniz", Status::Fail, e.to_string());
                r.push("ore_q_skew", Status::Skip, "no Ore structure");
            }
            Ok(o) => {
                match o.leibniz_failures() {
                    Ok(f) if f.is_empty() => r.push(
                        "ore_leibniz",
                        Status::Pass,
                        format!("tau, delta respect the base relations (Ore variable {})", sys.name(o.t)),
                    ),
                    Ok(f) => {
                        let d: Vec<String> = f.iter().map(|(a, b)| format!("{a}*{b}")).collect();
                        r.push("ore_leibniz", Status::Fail, format!("incompatible with {}", d.join(", ")));
                    }
                    Err(e) => r.push("ore_leibniz", Status::Fail, e.to_string()),
                }
                match o.q_skew() {
                    Ok(QSkew::Constant(l)) => {
                        r.push("ore_q_skew", Status::Pass, format!("delta*tau = {l} * tau*delta"))
                    }
                    Ok(QSkew::Zero) => r.push("ore_q_skew", Status::Pass, "delta = 0"),
                    Ok(QSkew::NotSkew(s)) => r.push(
                        "ore_q_skew",
                        Status::Warn,
                        format!("delta*tau and tau*delta are not proportional on {s}"),
                    ),
                    Err(e) => r.push("ore_q_skew", Status::Fail, e.to_string()),
                }
            }
        }
    } else {
        r.push("ore_leibniz", Status::Skip, format!("{} presentation", p.kind));
        r.push("ore_q_skew", Status::Skip, format!("{} presentation", p.kind));
    }

    if p.kind == Kind::ColorEnveloping {
        color_checks(p, &mut r);
    } else {
        for c in COLOR_CHECKS {
            r.push(c, Status::Skip, format!("{} presentation", p.kind));
        }
    }
    r
}

/// `[x_a, x_b]` read from the rewrite rules.
pub fn bracket(p: &AlgebraPresentation, a: VarId, b: VarId) -> QPolynomial {
    let n = p.nvars();
    let sys = &p.system;
    if a == b {
        return QPolynomial::zero(n);
    }
    if a > b {
        sys.rule(a, b).lower.clone()
    } else {
        let e = p.epsilon(p.grade(a).unwrap(), p.grade(b).unwrap()).unwrap();
        sys.rule(b, a).lower.scale(&e).neg()
    }
}

/// Bilinear extension of `bracket` to linear combinations of generators;
/// constant terms are ignored.
fn bracket_linear(p: &AlgebraPresentation, u: &QPolynomial, v: &QPolynomial) -> QPolynomial {
    let mut out = QPolynomial::zero(p.nvars());
    for (mu, cu) in u.terms() {
        let Some(a) = single_var(mu) else { continue };
        for (mv, cv) in v.terms() {
            let Some(b) = single_var(mv) else { continue };
            out.add_scaled(&bracket(p, a, b), &cu.mul(cv));
        }
    }
    out
}

fn single_var(m: &Monomial) -> Option<VarId> {
    let w = m.word();
    (w.len() == 1 && w[0].1 == 1).then(|| w[0].0)
}

fn color_checks(p: &AlgebraPresentation, r: &mut ValidationReport) {
    let c = p.color.as_ref().unwrap();
    let sys = &p.system;
    let n = p.nvars();
    let eps = &c.epsilon;
    let k = eps.len();

    let anti = (0..k).all(|a| (0..k).all(|b| eps[a][b] == -eps[b][a]));
    if anti {
        r.push("color_epsilon_antisymmetric", Status::Pass, "E = -E^T, so epsilon(g,g) = 1");
    } else {
        r.push("color_epsilon_antisymmetric", Status::Fail, "epsilon matrix is not antisymmetric");
    }

    let mut bad = Vec::new();
    for (a, b, v) in &c.declared {
        if bracket(p, *a, *b) != *v {
            bad.push(format!("[{},{}]", sys.name(*a), sys.name(*b)));
        }
    }
    if bad.is_empty() {
        r.push("color_bracket_antisymmetry", Status::Pass, "declared brackets agree with [x,y] = -epsilon(g,h)[y,x]");
    } else {
        r.push("color_bracket_antisymmetry", Status::Fail, format!("inconsistent {}", bad.join(", ")));
    }

    let mut nonlinear = Vec::new();
    for j in 0..n {
        for i in 0..j {
            let l = &sys.rule(j, i).lower;
            if l.support().any(|m| single_var(m).is_none()) {
                nonlinear.push(format!("[{},{}] = {}", sys.name(j), sys.name(i), sys.format(l)));
            }
        }
    }
    if nonlinear.is_empty() {
        r.push("color_bracket_linear", Status::Pass, "brackets are linear in the generators");
    } else {
        r.push("color_bracket_linear", Status::Fail, nonlinear.join("; "));
    }

    let mut bad = Vec::new();
    for j in 0..n {
        for i in 0..j {
            let l = &sys.rule(j, i).lower;
            let target: Vec<i64> = p.grade(j).unwrap().iter().zip(p.grade(i).unwrap()).map(|(a, b)| a + b).collect();
            for m in l.support() {
                if p.monomial_grade(m).unwrap() != target {
                    bad.push(format!(
                        "[{},{}] contains {} outside grade ({})",
                        sys.name(j),
                        sys.name(i),
                        sys.format_monomial(m),
                        target.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
                    ));
                }
            }
        }
    }
    if bad.is_empty() {
        r.push("color_grade_compatibility", Status::Pass, "[L_g, L_h] lies in L_{g+h}");
    } else {
        r.push("color_grade_compatibility", Status::Fail, bad.join("; "));
    }

    let mut bad = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (vx, vy, vz) = (QPolynomial::var(n, x), QPolynomial::var(n, y), QPolynomial::var(n, z));
                let lhs = bracket_linear(p, &bracket(p, x, y), &vz);
                let e = p.epsilon(p.grade(x).unwrap(), p.grade(y).unwrap()).unwrap();
                let rhs =
                    bracket_linear(p, &vx, &bracket(p, y, z)).sub(&bracket_linear(p, &vy, &bracket(p, x, z)).scale(&e));
                if lhs != rhs {
                    bad.push(format!("({},{},{})", sys.name(x), sys.name(y), sys.name(z)));
                }
            }
        }
    }
    if bad.is_empty() {
        r.push("color_jacobi", Status::Pass, format!("{} triples", n * n * n));
    } else {
        r.push("color_jacobi", Status::Fail, format!("fails on {}", bad.join(", ")));
    }

    // proper grading
    let m: Vec<Vec<i64>> = (0..n).map(|v| p.grade(v).unwrap().to_vec()).collect();
    let mut b = vec![vec![0i64; n]; n];
    for (a, ga) in m.iter().enumerate() {
        for (c2, gc) in m.iter().enumerate() {
            b[a][c2] = (0..k).map(|s| (0..k).map(|t| ga[s] * eps[s][t] * gc[t]).sum::<i64>()).sum();
        }
    }
    let rm = if n == 0 { 0 } else { rank(&int_matrix(&m)) };
    let rb = if n == 0 { 0 } else { rank(&int_matrix(&b)) };
    if rm == rb {
        r.push("color_faithful", Status::Pass, "no nonzero grade in the span is epsilon-orthogonal to all generators");
    } else {
        r.push("color_faithful", Status::Fail, format!("epsilon radical of the grade span has rank {}", rm - rb));
    }
    let idx = lattice_index(&m, k);
    if idx == num_bigint::BigInt::from(1) {
        r.push("color_generated", Status::Pass, format!("generator grades span Z^{k}"));
    } else if idx == num_bigint::BigInt::from(0) {
        r.push("color_generated", Status::Fail, format!("generator grades have rank below {k}"));
    } else {
        r.push("color_generated", Status::Fail, format!("generator grades span a sublattice of index {idx}"));
    }
}
