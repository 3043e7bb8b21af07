//! Wittstock decompositions `μ = (μ₁ − μ₂) + i(μ₃ − μ₄)` into positive parts,
//! back-shifted functionals and the analyticity test.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{AnalyticPoly, FockVector};
use crate::linalg::{real, C64, I, ONE, ZERO};
use crate::measures::{
    eval_product, is_positive, vector_functional, vector_state, ComplexNCMeasure, NcFunctional,
    PositiveNCMeasure, PSD_TOL,
};
use crate::transforms::compress;
use crate::words::{enumerate_words, Letter, Word};

/// Tolerance for reconstructing the target from the four parts.
pub const RECONSTRUCTION_TOL: f64 = 1e-10;

/// Default tolerance for [`is_analytic`].
pub const ANALYTIC_TOL: f64 = 1e-12;

/// Closed-form type of a quad component, when one is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartTag {
    AbsolutelyContinuous,
    Singular,
    Unknown,
}

impl PartTag {
    /// Multiples of NC Lebesgue measure are absolutely continuous; nothing
    /// else is recognised.
    pub fn infer(mu: &PositiveNCMeasure) -> Self {
        let unit = mu.unit();
        let lebesgue = mu.moments().all(|(w, v)| {
            let expected = if w.is_empty() { unit } else { ZERO };
            (v - expected).norm() <= 1e-12 * (1.0 + unit.norm())
        });
        if lebesgue {
            PartTag::AbsolutelyContinuous
        } else {
            PartTag::Unknown
        }
    }
}

const SIGNS: [C64; 4] = [ONE, C64::new(-1.0, 0.0), I, C64::new(0.0, -1.0)];

#[derive(Clone, Debug)]
pub struct WittstockQuad {
    parts: [PositiveNCMeasure; 4],
    target: ComplexNCMeasure,
    tags: [PartTag; 4],
}

impl WittstockQuad {
    /// Validates positivity of each part and the reconstruction of `target`
    /// on every stored moment.
    pub fn new(parts: [PositiveNCMeasure; 4], target: ComplexNCMeasure) -> Result<Self> {
        let d = target.dim();
        for p in &parts {
            if p.dim() != d {
                return Err(Error::AlphabetMismatch { expected: d, found: p.dim() });
            }
        }
        let tags = [0, 1, 2, 3].map(|j| PartTag::infer(&parts[j]));
        let quad = Self { parts, target, tags };
        for (j, p) in quad.parts.iter().enumerate() {
            let check = is_positive(p, p.max_len() / 2, PSD_TOL)?;
            if !check.positive {
                return Err(Error::NotPositive(format!(
                    "component {} has Gram eigenvalue {:e}",
                    j + 1,
                    check.min_eig
                )));
            }
        }
        let residual = quad.reconstruction_residual()?;
        if residual > RECONSTRUCTION_TOL {
            return Err(Error::InvalidArgument(format!("parts reconstruct the target only to {residual:e}")));
        }
        Ok(quad)
    }

    pub fn with_tags(mut self, tags: [PartTag; 4]) -> Self {
        self.tags = tags;
        self
    }

    pub fn parts(&self) -> &[PositiveNCMeasure; 4] {
        &self.parts
    }

    pub fn target(&self) -> &ComplexNCMeasure {
        &self.target
    }

    pub fn tags(&self) -> [PartTag; 4] {
        self.tags
    }

    /// `(μ₁ − μ₂) + i(μ₃ − μ₄)`.
    pub fn reconstruction(&self) -> Result<ComplexNCMeasure> {
        signed_sum(self.parts.iter().zip(SIGNS), self.target.dim(), self.target.max_len())
    }

    pub fn reconstruction_residual(&self) -> Result<f64> {
        self.reconstruction()?.max_diff(&self.target)
    }

    /// Smallest Gram eigenvalue of each part at its deepest admissible level.
    pub fn min_eigs(&self) -> Result<[f64; 4]> {
        let mut out = [0.0; 4];
        for (slot, p) in out.iter_mut().zip(&self.parts) {
            *slot = is_positive(p, p.max_len() / 2, PSD_TOL)?.min_eig;
        }
        Ok(out)
    }
}

fn signed_sum<'a>(
    terms: impl Iterator<Item = (&'a PositiveNCMeasure, C64)>,
    d: usize,
    max_len: usize,
) -> Result<ComplexNCMeasure> {
    let mut acc = ComplexNCMeasure::zero(d, max_len);
    for (p, s) in terms {
        acc = acc.combine(ONE, &p.to_complex(), s)?;
    }
    Ok(acc)
}

/// `|λ⃗| = λ₁ + λ₂ + λ₃ + λ₄`.
pub fn total_variation(q: &WittstockQuad) -> Result<PositiveNCMeasure> {
    let [a, b, c, d] = &q.parts;
    a.add(b)?.add(c)?.add(d)
}

/// True when every stored moment `μ(L^α)`, `α ≠ ∅`, vanishes to `tol`.
pub fn is_analytic<M: NcFunctional + ?Sized>(mu: &M, tol: f64) -> Result<bool> {
    for w in enumerate_words(mu.dim(), mu.max_len()).iter().skip(1) {
        if mu.forward(w)?.norm() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `λ^{(k)}(b) = λ(L_k^* b)`, stored one letter shorter than `λ`.
pub fn back_shift<M: NcFunctional + ?Sized>(lambda: &M, k: Letter) -> Result<ComplexNCMeasure> {
    let d = lambda.dim();
    Word::letter(k).check_alphabet(d)?;
    let Some(max_len) = lambda.max_len().checked_sub(1) else {
        return Err(Error::DepthExceeded { needed: 1, available: 0 });
    };
    let kw = Word::letter(k);
    ComplexNCMeasure::from_fns(
        d,
        max_len,
        |alpha| eval_product(lambda, &kw, alpha),
        |alpha| lambda.backward(&alpha.append(k)),
    )
}

/// Wittstock decomposition of `μ^{(k)}` by the compressions
/// `φ(b) = μ(a* b a)` with `a = (I ± L_k)/2` and `(I ± iL_k)/2`.
pub fn shift_wittstock(mu: &PositiveNCMeasure, k: Letter) -> Result<WittstockQuad> {
    let Some(max_len) = mu.max_len().checked_sub(2) else {
        return Err(Error::DepthExceeded { needed: 2, available: mu.max_len() });
    };
    let half = real(0.5);
    let polys = [
        AnalyticPoly::affine(half, k, half),
        AnalyticPoly::affine(half, k, -half),
        AnalyticPoly::affine(half, k, half * I),
        AnalyticPoly::affine(half, k, -half * I),
    ];
    let mut parts = Vec::with_capacity(4);
    for a in &polys {
        parts.push(compress(mu, a, max_len)?);
    }
    let parts: [PositiveNCMeasure; 4] = parts.try_into().expect("four compressions");
    let target = back_shift(mu, k)?.truncate(max_len);
    WittstockQuad::new(parts, target)
}

/// Decomposition of `b ↦ <f, b g>` with `λ = (m_f + m_g)/2` and parts
/// `(λ ± Re μ)/2`, `(λ ± Im μ)/2`.
pub fn wittstock_from_vectors(f: &FockVector, g: &FockVector, d: usize, max_len: usize) -> Result<WittstockQuad> {
    let mu = vector_functional(f, g, d, max_len)?;
    let lambda = vector_state(f, d, max_len)?.to_complex().add(&vector_state(g, d, max_len)?.to_complex())?.scale(real(0.5));
    let (re, im) = (mu.re(), mu.im());
    let half = real(0.5);
    let parts = [
        lambda.combine(half, &re, half)?,
        lambda.combine(half, &re, -half)?,
        lambda.combine(half, &im, half)?,
        lambda.combine(half, &im, -half)?,
    ];
    let mut out = Vec::with_capacity(4);
    for p in &parts {
        out.push(p.to_hermitian(1e-12)?);
    }
    let parts: [PositiveNCMeasure; 4] = out.try_into().expect("four parts");
    WittstockQuad::new(parts, mu)
}

/// Absolutely continuous and singular parts of a quad whose components all
/// carry a closed-form tag.
#[derive(Clone, Debug)]
pub struct LebesgueParts {
    pub ac: ComplexNCMeasure,
    pub singular: ComplexNCMeasure,
}

pub fn lebesgue_parts_on_example(q: &WittstockQuad) -> Result<LebesgueParts> {
    if let Some(j) = q.tags.iter().position(|t| *t == PartTag::Unknown) {
        return Err(Error::UnknownParts(j + 1));
    }
    let (d, max_len) = (q.target.dim(), q.target.max_len());
    let pick = |tag: PartTag| {
        signed_sum(
            q.parts.iter().zip(SIGNS).zip(q.tags).filter(|(_, t)| *t == tag).map(|(ps, _)| ps),
            d,
            max_len,
        )
    };
    Ok(LebesgueParts { ac: pick(PartTag::AbsolutelyContinuous)?, singular: pick(PartTag::Singular)? })
}
