//! Compilation of parsed sources into rewrite systems.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::algebra::{compact_word, Expr, Monomial, QPolynomial, RewriteSystem, VarId, Word};
use crate::error::{Error, Result};
use crate::scalar::RationalFunction;

use super::parser::{parse_source, Source};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    QuantumSpace,
    OreExtension,
    ColorEnveloping,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::QuantumSpace => "QuantumSpace",
            Kind::OreExtension => "OreExtension",
            Kind::ColorEnveloping => "ColorEnveloping",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub grade: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ColorData {
    /// `epsilon(e_a, e_b) = q^E[a][b]`.
    pub epsilon: Vec<Vec<i64>>,
    /// Brackets exactly as declared, `[left, right] = value`.
    pub declared: Vec<(VarId, VarId, QPolynomial)>,
}

/// A presented algebra with its generators in PBW order.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraPresentation {
    pub name: String,
    pub kind: Kind,
    pub generators: Vec<Generator>,
    pub color: Option<ColorData>,
    pub system: RewriteSystem,
}

/// Free-algebra element: words with coefficients, in order of first
/// appearance.
#[derive(Clone, Debug, Default)]
struct FreePoly(Vec<(Word, RationalFunction)>);

impl FreePoly {
    fn scalar(c: RationalFunction) -> Self {
        let mut p = FreePoly::default();
        p.push(Vec::new(), c);
        p
    }

    fn push(&mut self, w: Word, c: RationalFunction) {
        let w = compact_word(w);
        if let Some(e) = self.0.iter_mut().find(|(x, _)| *x == w) {
            e.1 = e.1.add(&c);
        } else {
            self.0.push((w, c));
        }
    }

    fn add_scaled(&mut self, other: &FreePoly, s: &RationalFunction) {
        for (w, c) in &other.0 {
            self.push(w.clone(), c.mul(s));
        }
    }

    fn mul(&self, other: &FreePoly) -> FreePoly {
        let mut out = FreePoly::default();
        for (a, ca) in &self.0 {
            for (b, cb) in &other.0 {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.push(w, ca.mul(cb));
            }
        }
        out
    }

    fn nonzero(&self) -> impl Iterator<Item = &(Word, RationalFunction)> {
        self.0.iter().filter(|(_, c)| !c.is_zero())
    }

    fn as_scalar(&self) -> Option<RationalFunction> {
        let mut it = self.nonzero();
        match (it.next(), it.next()) {
            (None, _) => Some(RationalFunction::zero()),
            (Some((w, c)), None) if w.is_empty() => Some(c.clone()),
            _ => None,
        }
    }

    fn coeff(&self, w: &Word) -> RationalFunction {
        self.0.iter().find(|(x, _)| x == w).map(|(_, c)| c.clone()).unwrap_or_default()
    }
}

fn free_eval(e: &Expr) -> Result<FreePoly> {
    Ok(match e {
        Expr::Int(n) => FreePoly::scalar(RationalFunction::from_bigint(n.clone())),
        Expr::Q => FreePoly::scalar(RationalFunction::q()),
        Expr::Var(v) => {
            let mut p = FreePoly::default();
            p.push(vec![(*v, 1)], RationalFunction::one());
            p
        }
        Expr::Neg(a) => {
            let mut p = FreePoly::default();
            p.add_scaled(&free_eval(a)?, &RationalFunction::from_int(-1));
            p
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let mut p = free_eval(a)?;
            let s = if matches!(e, Expr::Add(..)) { 1 } else { -1 };
            p.add_scaled(&free_eval(b)?, &RationalFunction::from_int(s));
            p
        }
        Expr::Mul(a, b) => free_eval(a)?.mul(&free_eval(b)?),
        Expr::Div(a, b) => {
            let d = free_eval(b)?
                .as_scalar()
                .ok_or_else(|| Error::Unsupported("division by a non-scalar in a relation".into()))?;
            let mut p = FreePoly::default();
            p.add_scaled(&free_eval(a)?, &d.inv()?);
            p
        }
        Expr::Pow(a, k) => {
            let base = free_eval(a)?;
            if *k < 0 {
                let s = base
                    .as_scalar()
                    .ok_or_else(|| Error::Unsupported("negative power of a generator in a relation".into()))?;
                FreePoly::scalar(s.pow(*k)?)
            } else {
                let mut p = FreePoly::scalar(RationalFunction::one());
                for _ in 0..*k {
                    p = p.mul(&base);
                }
                p
            }
        }
    })
}

struct RawRelation {
    poly: FreePoly,
    /// `(a, b)`: the first-written pair `a*b` whose reverse also occurs.
    pair: (VarId, VarId),
    nonscalar: bool,
    line: usize,
}

fn analyse(poly: FreePoly, line: usize) -> Result<RawRelation> {
    let words: Vec<&Word> = poly.nonzero().map(|(w, _)| w).collect();
    let pair = words
        .iter()
        .filter(|w| w.len() == 2 && w[0].1 == 1 && w[1].1 == 1 && w[0].0 != w[1].0)
        .map(|w| (w[0].0, w[1].0))
        .find(|&(a, b)| words.iter().any(|w| **w == vec![(b, 1), (a, 1)]))
        .ok_or_else(|| Error::Unsupported(format!("relation on line {line} has no pair x*y, y*x to orient")))?;
    let nonscalar = words.len() > 2;
    Ok(RawRelation { poly, pair, nonscalar, line })
}

fn epsilon_exponent(eps: &[Vec<i64>], g: &[i64], h: &[i64]) -> i64 {
    let mut s = 0;
    for (a, ga) in g.iter().enumerate() {
        for (b, hb) in h.iter().enumerate() {
            s += ga * eps[a][b] * hb;
        }
    }
    s
}

/// `epsilon(g, h)` as a power of `q`.
pub fn epsilon(eps: &[Vec<i64>], g: &[i64], h: &[i64]) -> RationalFunction {
    RationalFunction::q_pow(epsilon_exponent(eps, g, h))
}

/// Order generators so that every oriented pair `a > b` has `b` first;
/// ties go to generators that lead no rule, then to declaration order.
fn pbw_order(n: usize, edges: &BTreeSet<(VarId, VarId)>) -> Result<Vec<VarId>> {
    let higher: Vec<bool> = (0..n).map(|v| edges.iter().any(|&(a, _)| a == v)).collect();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v] && edges.iter().all(|&(a, b)| a != v || placed[b]))
            .min_by_key(|&v| (higher[v], v));
        match next {
            Some(v) => {
                placed[v] = true;
                order.push(v);
            }
            None => return Err(Error::Unsupported("relations orient the generators cyclically".into())),
        }
    }
    Ok(order)
}

impl AlgebraPresentation {
    pub fn parse(text: &str) -> Result<Self> {
        Self::compile(parse_source(text)?)
    }

    pub fn compile(src: Source) -> Result<Self> {
        let n = src.gens.len();
        let mut rels = Vec::new();
        let mut declared_brackets = Vec::new();

        if let Some(eps) = &src.epsilon {
            let k = eps.len();
            if eps.iter().any(|r| r.len() != k) {
                return Err(Error::Unsupported("epsilon must be a square matrix".into()));
            }
            for g in &src.gens {
                match &g.grade {
                    Some(gr) if gr.len() == k => {}
                    _ => {
                        return Err(Error::Syntax {
                            line: g.line,
                            col: g.col,
                            message: format!("generator `{}` needs a grade of length {k}", g.name),
                        })
                    }
                }
            }
            if let Some(r) = src.rels.first() {
                return Err(Error::Syntax {
                    line: r.line,
                    col: r.col,
                    message: "color algebras take brackets, not relations".into(),
                });
            }
            let grade = |v: VarId| src.gens[v].grade.clone().unwrap();
            let mut seen = BTreeSet::new();
            for b in &src.brackets {
                let value = free_eval(&b.value)?;
                declared_brackets.push((b.left, b.right, value.clone()));
                if b.left == b.right {
                    return Err(Error::Syntax {
                        line: b.line,
                        col: b.col,
                        message: "bracket of a generator with itself".into(),
                    });
                }
                let key = (b.left.min(b.right), b.left.max(b.right));
                if !seen.insert(key) {
                    // antisymmetry is checked by validation
                    continue;
                }
                let mut poly = FreePoly::default();
                poly.push(vec![(b.left, 1), (b.right, 1)], RationalFunction::one());
                poly.push(vec![(b.right, 1), (b.left, 1)], epsilon(eps, &grade(b.left), &grade(b.right)).neg());
                poly.add_scaled(&value, &RationalFunction::from_int(-1));
                rels.push(analyse(poly, b.line)?);
            }
            for a in 0..n {
                for b in a + 1..n {
                    if seen.contains(&(a, b)) {
                        continue;
                    }
                    let mut poly = FreePoly::default();
                    poly.push(vec![(a, 1), (b, 1)], RationalFunction::one());
                    poly.push(vec![(b, 1), (a, 1)], epsilon(eps, &grade(a), &grade(b)).neg());
                    rels.push(analyse(poly, 0)?);
                }
            }
        } else {
            if let Some(b) = src.brackets.first() {
                return Err(Error::Syntax {
                    line: b.line,
                    col: b.col,
                    message: "brackets need an epsilon matrix".into(),
                });
            }
            for r in &src.rels {
                let mut poly = free_eval(&r.lhs)?;
                poly.add_scaled(&free_eval(&r.rhs)?, &RationalFunction::from_int(-1));
                rels.push(analyse(poly, r.line)?);
            }
        }

        let edges: BTreeSet<(VarId, VarId)> = rels.iter().filter(|r| r.nonscalar).map(|r| r.pair).collect();
        let order = pbw_order(n, &edges)?;
        let mut pos = vec![0; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let remap = |w: &Word| -> Word { w.iter().map(|&(v, e)| (pos[v], e)).collect() };

        let generators: Vec<Generator> = order
            .iter()
            .map(|&v| Generator {
                name: src.gens[v].name.clone(),
                degree: src.gens[v].degree,
                grade: src.gens[v].grade.clone(),
            })
            .collect();
        let mut system = RewriteSystem::new(
            generators.iter().map(|g| g.name.clone()).collect(),
            generators.iter().map(|g| g.degree).collect(),
        );

        let mut pending = Vec::new();
        let mut done = BTreeSet::new();
        for r in &rels {
            let (a, b) = r.pair;
            let (j, i) = if pos[a] > pos[b] { (a, b) } else { (b, a) };
            let (pj, pi) = (pos[j], pos[i]);
            if !done.insert((pj, pi)) {
                return Err(Error::Unsupported(format!(
                    "two relations for the pair {}, {} (line {})",
                    src.gens[j].name, src.gens[i].name, r.line
                )));
            }
            let lead = vec![(j, 1), (i, 1)];
            let ordered = vec![(i, 1), (j, 1)];
            let ca = r.poly.coeff(&lead);
            let cb = r.poly.coeff(&ordered);
            if cb.is_zero() {
                return Err(Error::Unsupported(format!("relation on line {} has a zero commutation scalar", r.line)));
            }
            let inv = ca.inv()?;
            let scalar = cb.mul(&inv).neg();
            let mut rest: Vec<(Word, RationalFunction)> = Vec::new();
            for (w, c) in r.poly.nonzero() {
                if *w != lead && *w != ordered {
                    rest.push((remap(w), c.mul(&inv).neg()));
                }
            }
            system.set_rule(pj, pi, scalar, QPolynomial::zero(n));
            pending.push((pj, pi, rest));
        }
        let scalar_only = system.clone();
        for (j, i, rest) in pending {
            let mut lower = QPolynomial::zero(n);
            for (w, c) in rest {
                lower.add_scaled(&scalar_only.normal_form_word(&w)?, &c);
            }
            let s = system.rule(j, i).scalar.clone();
            system.set_rule(j, i, s, lower);
        }
        for &v in &src.invert {
            system.set_invertible(pos[v], true);
        }

        let kind = if src.epsilon.is_some() {
            Kind::ColorEnveloping
        } else if system.is_scalar_closed() {
            Kind::QuantumSpace
        } else {
            Kind::OreExtension
        };

        let color = match src.epsilon {
            Some(epsilon) => {
                let mut declared = Vec::new();
                for (l, r, value) in declared_brackets {
                    let mut p = QPolynomial::zero(n);
                    for (w, c) in value.nonzero() {
                        p.add_scaled(&scalar_only.normal_form_word(&remap(w))?, c);
                    }
                    declared.push((pos[l], pos[r], p));
                }
                Some(ColorData { epsilon, declared })
            }
            None => None,
        };

        Ok(AlgebraPresentation { name: src.name, kind, generators, color, system })
    }

    pub fn nvars(&self) -> usize {
        self.generators.len()
    }

    pub fn names(&self) -> &[String] {
        self.system.names()
    }

    pub fn var(&self, name: &str) -> Option<VarId> {
        self.system.var_id(name)
    }

    pub fn grade(&self, v: VarId) -> Option<&[i64]> {
        self.generators[v].grade.as_deref()
    }

    /// Grade of a monomial, for color algebras.
    pub fn monomial_grade(&self, m: &Monomial) -> Option<Vec<i64>> {
        let c = self.color.as_ref()?;
        let k = c.epsilon.len();
        let mut g = vec![0; k];
        for (v, e) in m.word() {
            for (a, x) in self.grade(v)?.iter().enumerate() {
                g[a] += e * x;
            }
        }
        Some(g)
    }

    /// `epsilon(g, h)` for this presentation's grading.
    pub fn epsilon(&self, g: &[i64], h: &[i64]) -> Option<RationalFunction> {
        self.color.as_ref().map(|c| epsilon(&c.epsilon, g, h))
    }

    /// Parse an expression over this presentation's generators and
    /// normalize it.
    pub fn eval_str(&self, text: &str) -> Result<QPolynomial> {
        self.system.eval(&self.parse_expr(text)?)
    }

    pub fn parse_expr(&self, text: &str) -> Result<Expr> {
        super::parser::parse_expr(text, self.names())
    }

    /// The same presentation with a different step budget.
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.system = self.system.with_budget(budget);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const WEYL: &str = "algebra W { gen x deg 1; gen y deg 1; rel x*y - q*y*x = 1; }";

    #[test]
    fn weyl_orders_y_first() {
        let p = AlgebraPresentation::parse(WEYL).unwrap();
        assert_eq!(p.kind, Kind::OreExtension);
        assert_eq!(p.names(), ["y", "x"]);
        assert_eq!(p.system.format(&p.eval_str("x*y").unwrap()), "q*y*x + 1");
    }

    #[test]
    fn scalar_relation_in_either_direction() {
        let a = AlgebraPresentation::parse("algebra A { gen a; gen b; rel b*a = q*a*b; }").unwrap();
        let b = AlgebraPresentation::parse("algebra A { gen a; gen b; rel a*b = q^-1*b*a; }").unwrap();
        assert_eq!(a.kind, Kind::QuantumSpace);
        assert_eq!(a.system, b.system);
    }

    #[test]
    fn color_presentation() {
        let p = AlgebraPresentation::parse(
            "algebra C { gen x grade (0,0); gen y grade (1,0); gen z grade (0,1);
             epsilon [[0,1],[-1,0]]; bracket [x,y] = y; }",
        )
        .unwrap();
        assert_eq!(p.kind, Kind::ColorEnveloping);
        assert_eq!(p.names(), ["y", "z", "x"]);
        assert_eq!(p.system.format(&p.eval_str("x*y").unwrap()), "y*x + y");
        assert_eq!(p.system.format(&p.eval_str("z*y").unwrap()), "q^-1*y*z");
    }

    #[test]
    fn scalar_field() {
        let p = AlgebraPresentation::parse("algebra K { }").unwrap();
        assert_eq!(p.nvars(), 0);
        assert_eq!(p.system.format(&p.eval_str("q^2 - 1").unwrap()), "-1+q^2");
    }

    #[test]
    fn cyclic_orientation_rejected() {
        let e = AlgebraPresentation::parse(
            "algebra A { gen a; gen b; gen c; rel a*b = b*a + c; rel b*c = c*b + a; rel c*a = a*c + b; }",
        );
        assert!(matches!(e, Err(Error::Unsupported(_))));
    }
}
