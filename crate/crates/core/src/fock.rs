//! Finitely supported vectors in the full Fock space.
//!
//! The orthonormal basis is indexed by words, `L_k e_w = e_{kw}`. The same
//! coefficient table also describes an analytic polynomial `p(L) = Σ p_w L^w`
//! through `p(L) e_∅ = Σ p_w e_w`, which is how compressions and positivity
//! checks receive their polynomials.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::Result;
use crate::linalg::{C64, ONE, ZERO};
use crate::words::{enumerate_words, word_count, Letter, Word};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FockVector {
    terms: BTreeMap<Word, C64>,
}

/// An analytic NC polynomial, stored by its coefficient on each `L^w`.
pub type AnalyticPoly = FockVector;

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::basis(Word::empty())
    }

    pub fn basis(w: Word) -> Self {
        Self::from_terms([(w, ONE)])
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, C64)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (w, v) in terms {
            out.add_term(w, v);
        }
        out
    }

    /// `α I + β L_k`, the building block of compressions.
    pub fn affine(constant: C64, k: Letter, slope: C64) -> Self {
        Self::from_terms([(Word::empty(), constant), (Word::letter(k), slope)])
    }

    /// Complex Gaussian coefficients on every word of length `<= max_len`,
    /// deterministic in `seed`.
    pub fn random(d: usize, max_len: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::from_terms(enumerate_words(d, max_len).into_iter().map(|w| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            (w, C64::new(re, im))
        }))
    }

    pub fn add_term(&mut self, w: Word, v: C64) {
        *self.terms.entry(w).or_insert(ZERO) += v;
    }

    pub fn get(&self, w: &Word) -> C64 {
        self.terms.get(w).copied().unwrap_or(ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C64)> {
        self.terms.iter()
    }

    /// Longest word in the support (0 for the zero vector).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn check_alphabet(&self, d: usize) -> Result<()> {
        self.terms.keys().try_for_each(|w| w.check_alphabet(d))
    }

    /// `<self, other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &FockVector) -> C64 {
        self.terms
            .iter()
            .map(|(w, a)| a.conj() * other.get(w))
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.inner(self).re.max(0.0).sqrt()
    }

    /// `L^α f`.
    pub fn shift(&self, alpha: &Word) -> FockVector {
        Self::from_terms(self.terms.iter().map(|(w, v)| (alpha.concat(w), *v)))
    }

    /// `L^{α*} f`.
    pub fn shift_adjoint(&self, alpha: &Word) -> FockVector {
        Self::from_terms(
            self.terms
                .iter()
                .filter_map(|(w, v)| w.strip_prefix(alpha).map(|rest| (rest, *v))),
        )
    }

    pub fn scale(&self, s: C64) -> FockVector {
        Self::from_terms(self.terms.iter().map(|(w, v)| (w.clone(), v * s)))
    }

    pub fn add(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (w, v) in &other.terms {
            out.add_term(w.clone(), *v);
        }
        out
    }

    pub fn sub(&self, other: &FockVector) -> FockVector {
        self.add(&other.scale(-ONE))
    }
}

/// Matrix of `L_k` on the span of words of length `<= max_len`; basis
/// vectors whose image would leave the truncation are sent to zero.
pub fn truncated_creation(d: usize, max_len: usize, k: Letter) -> DMatrix<f64> {
    let n = word_count(d, max_len);
    let mut m = DMatrix::zeros(n, n);
    for (col, w) in enumerate_words(d, max_len).iter().enumerate() {
        if w.len() < max_len {
            m[(w.prepend(k).index(d), col)] = 1.0;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    #[test]
    fn shifts_and_adjoints() {
        let f = FockVector::from_terms([(Word::empty(), ONE), (Word::parse("2").unwrap(), c(0.0, 2.0))]);
        let g = f.shift(&Word::letter(1));
        assert_eq!(g.get(&Word::parse("1").unwrap()), ONE);
        assert_eq!(g.get(&Word::parse("12").unwrap()), c(0.0, 2.0));
        assert_eq!(g.shift_adjoint(&Word::letter(1)), f);
        assert_eq!(g.shift_adjoint(&Word::letter(2)), FockVector::zero().add(&FockVector::zero()));
        assert!((f.norm() - 5f64.sqrt()).abs() < 1e-15);
        assert_eq!(f.degree(), 1);
    }

    #[test]
    fn creation_matrix_is_partial_isometry() {
        let l1 = truncated_creation(2, 3, 1);
        let l2 = truncated_creation(2, 3, 2);
        // interior columns (length <= 2) are orthonormal, ranges orthogonal
        let interior = word_count(2, 2);
        let g = l1.transpose() * &l2;
        assert!(g.iter().all(|&x| x == 0.0));
        let g = l1.transpose() * &l1;
        for i in 0..interior {
            assert_eq!(g[(i, i)], 1.0);
        }
    }
}
