use std::cmp::Ordering;

/// Index of a generator in the PBW order of a presentation.
pub type VarId = usize;

/// A syllable sequence `x_{v1}^{e1} x_{v2}^{e2} ...`, not necessarily ordered.
pub type Word = Vec<(VarId, i64)>;

/// An ordered (Laurent) monomial, stored as a dense exponent vector indexed
/// by `VarId`. The empty product has all exponents zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<i64>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, v: VarId) -> Self {
        Self::var_pow(nvars, v, 1)
    }

    pub fn var_pow(nvars: usize, v: VarId, e: i64) -> Self {
        let mut m = Self::one(nvars);
        m.0[v] = e;
        m
    }

    pub fn from_exponents(e: Vec<i64>) -> Self {
        Monomial(e)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn exponent(&self, v: VarId) -> i64 {
        self.0[v]
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, degrees: &[u32]) -> i64 {
        self.0.iter().zip(degrees).map(|(e, d)| e * *d as i64).sum()
    }

    /// Syllables in increasing variable order, zero exponents dropped.
    pub fn word(&self) -> Word {
        self.0.iter().enumerate().filter(|(_, e)| **e != 0).map(|(v, e)| (v, *e)).collect()
    }

    /// Exponent-wise sum; the product up to a scalar in a quantum space.
    pub fn add_exponents(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn negated(&self) -> Self {
        Monomial(self.0.iter().map(|e| -e).collect())
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&e| e < 0)
    }

    /// Variables carrying a nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = VarId> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e != 0).map(|(v, _)| v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Merge adjacent syllables on the same variable and drop zero exponents.
pub fn compact_word(word: Word) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for (v, e) in word {
        if e == 0 {
            continue;
        }
        match out.last_mut() {
            Some((lv, le)) if *lv == v => {
                *le += e;
                if *le == 0 {
                    out.pop();
                }
            }
            _ => out.push((v, e)),
        }
    }
    out
}
