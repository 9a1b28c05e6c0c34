use std::fmt::Write;

use crate::algebra::{Monomial, QPolynomial};

use super::presentation::AlgebraPresentation;

fn int_list(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

impl AlgebraPresentation {
    /// Canonical source text. Parsing it back yields the same presentation.
    pub fn to_source(&self) -> String {
        let sys = &self.system;
        let n = self.nvars();
        let mut out = String::new();
        writeln!(out, "algebra {} {{", self.name).unwrap();
        for g in &self.generators {
            write!(out, "  gen {} deg {}", g.name, g.degree).unwrap();
            if let Some(gr) = &g.grade {
                write!(out, " grade ({})", int_list(gr)).unwrap();
            }
            out.push_str(";\n");
        }
        if let Some(c) = &self.color {
            let rows: Vec<String> = c.epsilon.iter().map(|r| format!("[{}]", int_list(r))).collect();
            writeln!(out, "  epsilon [{}];", rows.join(",")).unwrap();
            for j in 0..n {
                for i in 0..j {
                    let lower = &sys.rule(j, i).lower;
                    if !lower.is_zero() {
                        writeln!(out, "  bracket [{},{}] = {};", sys.name(j), sys.name(i), sys.format(lower)).unwrap();
                    }
                }
            }
        } else {
            for j in 0..n {
                for i in 0..j {
                    let r = sys.rule(j, i);
                    if r.scalar.is_one() && r.lower.is_zero() {
                        continue;
                    }
                    let mut e = vec![0; n];
                    e[i] = 1;
                    e[j] = 1;
                    let mut rhs: QPolynomial = r.lower.clone();
                    rhs.add_term(Monomial::from_exponents(e), r.scalar.clone());
                    writeln!(out, "  rel {}*{} = {};", sys.name(j), sys.name(i), sys.format(&rhs)).unwrap();
                }
            }
        }
        let inv: Vec<&str> = (0..n).filter(|&v| sys.is_invertible(v)).map(|v| sys.name(v)).collect();
        if !inv.is_empty() {
            writeln!(out, "  invert {};", inv.join(", ")).unwrap();
        }
        out.push_str("}\n");
        out
    }
}
