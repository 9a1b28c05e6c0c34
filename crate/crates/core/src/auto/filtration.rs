//! Degree filtration and the leading-term shape of automorphisms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{Monomial, QPolynomial};
use crate::error::{Error, Result};
use crate::frontend::AlgebraPresentation;

use super::automorphism::Automorphism;

/// Maximum assigned-degree weight over the support.
pub fn filtration_degree(r: &QPolynomial, p: &AlgebraPresentation) -> Result<i64> {
    r.weighted_degree(p.system.degrees()).ok_or(Error::ZeroElement)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GeneratorShape {
    pub generator: String,
    pub degree: i64,
    pub image_degree: i64,
    pub degree_preserved: bool,
    /// `alpha_x` when the top part of the image is `alpha_x x`.
    pub leading_scalar: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShapeReport {
    pub passed: bool,
    pub generators: Vec<GeneratorShape>,
    pub samples_checked: usize,
    /// Sampled products whose degree changed under the map.
    pub sample_failures: Vec<String>,
}

/// Default number of random products checked by [`thm23_check`].
pub const SHAPE_SAMPLES: usize = 24;

/// Check that `a` preserves degrees and sends each generator to a scalar
/// multiple of itself plus lower terms.
pub fn thm23_check(a: &Automorphism, p: &AlgebraPresentation, seed: u64) -> Result<ShapeReport> {
    let sys = &p.system;
    let n = sys.nvars();
    let mut generators = Vec::with_capacity(n);
    for v in 0..n {
        let x = QPolynomial::var(n, v);
        let img = a.image(v);
        let degree = filtration_degree(&x, p)?;
        let image_degree = filtration_degree(img, p)?;
        let top = img.top_part(sys.degrees());
        let leading_scalar = match top.as_term() {
            Some((c, m)) if *m == Monomial::var(n, v) => Some(c.to_string()),
            _ => None,
        };
        generators.push(GeneratorShape {
            generator: sys.name(v).to_string(),
            degree,
            image_degree,
            degree_preserved: degree == image_degree,
            leading_scalar,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample_failures = Vec::new();
    let samples = if n == 0 { 0 } else { SHAPE_SAMPLES };
    for _ in 0..samples {
        let len = rng.gen_range(1..=3);
        let mut r = QPolynomial::one(n);
        for _ in 0..len {
            r = sys.mul(&r, &QPolynomial::var(n, rng.gen_range(0..n)))?;
        }
        let before = filtration_degree(&r, p)?;
        let after = filtration_degree(&a.apply(sys, &r)?, p)?;
        if before != after {
            sample_failures.push(format!("{}: degree {before} became {after}", sys.format(&r)));
        }
    }
    let passed =
        sample_failures.is_empty() && generators.iter().all(|g| g.degree_preserved && g.leading_scalar.is_some());
    Ok(ShapeReport { passed, generators, samples_checked: samples, sample_failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::auto::conjugation_automorphism;

    const EX24: &str = "algebra R { gen x deg 2; gen y; gen z; rel x*y - q*y*x = y*z + y^2 + y; }";

    #[test]
    fn degrees() {
        let p = AlgebraPresentation::parse(EX24).unwrap();
        assert_eq!(filtration_degree(&p.eval_str("x*y").unwrap(), &p), Ok(3));
        assert_eq!(filtration_degree(&p.eval_str("1").unwrap(), &p), Ok(0));
        assert_eq!(filtration_degree(&QPolynomial::zero(3), &p), Err(Error::ZeroElement));
    }

    #[test]
    fn conjugation_by_y_has_shape() {
        let p = AlgebraPresentation::parse(EX24).unwrap();
        let y = p.eval_str("y").unwrap();
        let s = conjugation_automorphism(y.as_term().unwrap().1, &p).unwrap();
        assert_eq!(p.system.format(s.image(p.var("x").unwrap())), "q*x + y + z + 1");
        let rep = thm23_check(&s, &p, 7).unwrap();
        assert!(rep.passed);
        let gx = rep.generators.iter().find(|g| g.generator == "x").unwrap();
        assert_eq!(gx.leading_scalar.as_deref(), Some("q"));
    }
}
