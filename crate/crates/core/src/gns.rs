//! Truncated GNS spaces, co-embeddings and NC Radon–Nikodym derivatives.
//!
//! For a positive measure `μ` and a depth `N`, the classes `α + N_μ` of the
//! words of length `<= N` are represented by the columns of a coordinate
//! factor `coord` with `gram = coord* · coord`. Coordinates come from an
//! eigendecomposition of the Gram matrix with a relative cutoff, so singular
//! measures get an honest low-rank space.
//!
//! The left shifts `Π_k` are only defined on the interior, the span of
//! classes of words of length `<= N − 1`; they are stored as rectangular maps
//! from interior coordinates into full coordinates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::AnalyticPoly;
use crate::linalg::{self, CMatrix, CVector, C64, I, ONE};
use crate::measures::{check_depth, eval_product, gram, leq, NcFunctional, PositiveNCMeasure};
use crate::words::{enumerate_words, word_count, Letter, Word};

/// Default relative eigenvalue cutoff separating null directions.
pub const RANK_TOL: f64 = 1e-9;

/// Orthonormal frame for the span of classes of words up to some length.
#[derive(Clone, Debug)]
pub struct LevelFrame {
    /// Longest word in this level.
    pub len: usize,
    /// Number of words in this level.
    pub words: usize,
    /// `U Λ^{-1/2}` from the level Gram; maps frame coordinates to word
    /// coefficients (the pseudo-inverse of the level coordinates).
    pub whitening: CMatrix,
    /// Frame vectors expressed in full coordinates.
    pub frame: CMatrix,
}

impl LevelFrame {
    pub fn rank(&self) -> usize {
        self.frame.ncols()
    }
}

#[derive(Clone, Debug)]
pub struct GnsSpace {
    pub label: String,
    pub d: usize,
    pub depth: usize,
    pub words: Vec<Word>,
    pub gram: CMatrix,
    pub rank: usize,
    /// `rank × words` factor with `gram ≈ coord* coord`.
    pub coord: CMatrix,
    pub tol: f64,
    pub gram_min_eig: f64,
    levels: Vec<LevelFrame>,
}

#[derive(Clone, Debug)]
pub struct GnsOperators {
    /// `Π_k`, from interior coordinates to full coordinates.
    pub shifts: Vec<CMatrix>,
    /// Coordinates of `I + N_μ`.
    pub cyclic: CVector,
    /// Orthonormal frame of the interior in full coordinates.
    pub interior: CMatrix,
}

#[derive(Clone, Debug)]
pub struct Gns {
    pub space: GnsSpace,
    pub ops: GnsOperators,
}

/// Eigenvectors and eigenvalues of `g` above `cutoff`.
fn factor(g: &CMatrix, cutoff: f64) -> (CMatrix, Vec<f64>) {
    let (values, vectors) = linalg::hermitian_eigen(g);
    let keep: Vec<usize> = (0..values.len()).filter(|&i| values[i] > cutoff).collect();
    let mut u = CMatrix::zeros(g.nrows(), keep.len());
    for (dst, &src) in keep.iter().enumerate() {
        u.set_column(dst, &vectors.column(src));
    }
    (u, keep.iter().map(|&i| values[i]).collect())
}

fn scale_columns(u: &CMatrix, s: impl Fn(f64) -> f64, values: &[f64]) -> CMatrix {
    let mut out = u.clone();
    for (j, &v) in values.iter().enumerate() {
        out.column_mut(j).scale_mut(s(v));
    }
    out
}

pub fn build_gns(mu: &PositiveNCMeasure, depth: usize, tol: f64) -> Result<Gns> {
    if depth == 0 {
        return Err(Error::InvalidArgument("GNS depth must be at least 1".into()));
    }
    check_depth(mu.max_len(), depth)?;
    let d = mu.dim();
    let g = gram(mu, depth)?;
    let eig = linalg::eigenvalues(&g);
    let norm = eig.iter().map(|v| v.abs()).fold(0.0, f64::max);
    if norm == 0.0 {
        return Err(Error::DegenerateMeasure);
    }
    let cutoff = tol * norm.max(1.0);
    let (u, values) = factor(&g, cutoff);
    if values.is_empty() {
        return Err(Error::DegenerateMeasure);
    }
    let coord = scale_columns(&u, f64::sqrt, &values).adjoint();

    let levels = (0..=depth)
        .map(|len| {
            let n = word_count(d, len);
            let (ul, vl) = factor(&g.view((0, 0), (n, n)).into_owned(), cutoff);
            let whitening = scale_columns(&ul, |v| 1.0 / v.sqrt(), &vl);
            let frame = coord.columns(0, n) * &whitening;
            LevelFrame { len, words: n, whitening, frame }
        })
        .collect::<Vec<_>>();

    let interior_level = &levels[depth - 1];
    let interior_words = enumerate_words(d, depth - 1);
    let shifts = (1..=d)
        .map(|k| {
            let mut images = CMatrix::zeros(coord.nrows(), interior_words.len());
            for (j, w) in interior_words.iter().enumerate() {
                images.set_column(j, &coord.column(w.prepend(k as Letter).index(d)));
            }
            images * &interior_level.whitening
        })
        .collect();
    let ops = GnsOperators {
        shifts,
        cyclic: coord.column(0).into_owned(),
        interior: interior_level.frame.clone(),
    };
    let space = GnsSpace {
        label: String::new(),
        d,
        depth,
        words: enumerate_words(d, depth),
        rank: coord.nrows(),
        coord,
        gram: g,
        tol,
        gram_min_eig: eig.first().copied().unwrap_or(0.0),
        levels,
    };
    Ok(Gns { space, ops })
}

impl Gns {
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.space.label = label.into();
        self
    }

    pub fn rank(&self) -> usize {
        self.space.rank
    }

    pub fn depth(&self) -> usize {
        self.space.depth
    }

    pub fn level(&self, len: usize) -> &LevelFrame {
        &self.space.levels[len]
    }

    /// Coordinates of `w + N_μ`.
    pub fn class(&self, w: &Word) -> Result<CVector> {
        w.check_alphabet(self.space.d)?;
        if w.len() > self.space.depth {
            return Err(Error::DepthExceeded { needed: w.len(), available: self.space.depth });
        }
        Ok(self.space.coord.column(w.index(self.space.d)).into_owned())
    }

    pub fn shift(&self, k: Letter) -> &CMatrix {
        &self.ops.shifts[k as usize - 1]
    }

    /// `Π_k` precomposed with the orthogonal projection onto the interior,
    /// as a square operator on full coordinates.
    pub fn shift_on_full(&self, k: Letter) -> CMatrix {
        self.shift(k) * self.ops.interior.adjoint()
    }

    /// `Π_k x`; exact when `x` lies in the interior.
    pub fn apply_shift(&self, k: Letter, x: &CVector) -> CVector {
        self.shift(k) * (self.ops.interior.adjoint() * x)
    }

    /// `Π^α x`, applying the last letter first.
    pub fn apply_word(&self, alpha: &Word, x: &CVector) -> CVector {
        alpha
            .letters()
            .iter()
            .rev()
            .fold(x.clone(), |acc, &k| self.apply_shift(k, &acc))
    }

    /// `max_α |<cyclic, Π^α cyclic> − μ(L^α)|` over `|α| <= depth`.
    pub fn moment_reproduction_error<M: NcFunctional + ?Sized>(&self, mu: &M) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for w in &self.space.words {
            let v = self.ops.cyclic.dotc(&self.apply_word(w, &self.ops.cyclic));
            worst = worst.max((v - mu.forward(w)?).norm());
        }
        Ok(worst)
    }

    /// `max_{j,k} ‖Π_j* Π_k − δ_jk I‖` on the interior.
    pub fn isometry_defect(&self) -> f64 {
        let r = self.ops.interior.ncols();
        let mut worst: f64 = 0.0;
        for (j, pj) in self.ops.shifts.iter().enumerate() {
            for (k, pk) in self.ops.shifts.iter().enumerate() {
                let mut m = pj.adjoint() * pk;
                if j == k {
                    m -= CMatrix::identity(r, r);
                }
                worst = worst.max(linalg::spectral_norm(&m));
            }
        }
        worst
    }

    /// `Π_k` written in the word basis: interior word coefficients to full
    /// word coefficients (minimum-norm representatives).
    pub fn shift_in_word_basis(&self, k: Letter) -> CMatrix {
        let n_int = self.level(self.depth() - 1).words;
        let top = self.level(self.depth());
        let interior_coords = self.ops.interior.adjoint() * self.space.coord.columns(0, n_int);
        &top.whitening * self.shift(k) * interior_coords
    }

    /// Matrix of an analytic polynomial `p(Π)` from the frame of level
    /// `depth − deg p` into full coordinates.
    pub fn polynomial_on_level(&self, p: &AnalyticPoly) -> Result<CMatrix> {
        p.check_alphabet(self.space.d)?;
        let deg = p.degree();
        if deg > self.depth() {
            return Err(Error::DepthExceeded { needed: deg, available: self.depth() });
        }
        let level = self.level(self.depth() - deg);
        let words = enumerate_words(self.space.d, level.len);
        let mut images = CMatrix::zeros(self.rank(), words.len());
        for (j, w) in words.iter().enumerate() {
            let mut col = CVector::zeros(self.rank());
            for (sigma, coef) in p.terms() {
                col += self.space.coord.column(sigma.concat(w).index(self.space.d)) * *coef;
            }
            images.set_column(j, &col);
        }
        Ok(images * &level.whitening)
    }
}

/// The contraction `E_{μ,λ}: H(λ) → H(μ)` sending `p + N_λ` to `p + N_μ`.
#[derive(Clone, Debug)]
pub struct CoEmbedding {
    pub matrix: CMatrix,
}

impl CoEmbedding {
    /// Least-squares map taking the λ-coordinates of every word class to its
    /// μ-coordinates. No domination check is done here.
    pub fn between(target: &Gns, source: &Gns) -> Result<Self> {
        if target.space.d != source.space.d {
            return Err(Error::AlphabetMismatch { expected: source.space.d, found: target.space.d });
        }
        if target.depth() != source.depth() {
            return Err(Error::InvalidArgument("co-embedding needs equal truncation depths".into()));
        }
        let pinv = &source.level(source.depth()).whitening;
        Ok(Self { matrix: &target.space.coord * pinv })
    }

    pub fn norm(&self) -> f64 {
        linalg::spectral_norm(&self.matrix)
    }

    /// `D = E* E`.
    pub fn derivative(&self) -> CMatrix {
        self.matrix.adjoint() * &self.matrix
    }

    /// `self ∘ inner`, e.g. `E_{μ,ν} E_{ν,λ}`.
    pub fn compose(&self, inner: &CoEmbedding) -> CoEmbedding {
        CoEmbedding { matrix: &self.matrix * &inner.matrix }
    }
}

/// Builds both GNS spaces and the co-embedding, after checking `μ <= λ`.
pub fn co_embedding(
    mu: &PositiveNCMeasure,
    lambda: &PositiveNCMeasure,
    depth: usize,
    tol: f64,
) -> Result<(Gns, Gns, CoEmbedding)> {
    let order = leq(mu, lambda, depth, tol)?;
    if !order.positive {
        return Err(Error::NotDominated { min_eig: order.min_eig });
    }
    let target = build_gns(mu, depth, tol)?;
    let source = build_gns(lambda, depth, tol)?;
    let e = CoEmbedding::between(&target, &source)?;
    Ok((target, source, e))
}

/// `max_{j,k} ‖P(Π_j* D Π_k − δ_jk D)P‖` with `P` the projection onto classes
/// of words of length `<= N − 2`.
pub fn toeplitz_defect(derivative: &CMatrix, lambda: &Gns) -> f64 {
    if lambda.depth() < 2 {
        return 0.0;
    }
    let inner = &lambda.level(lambda.depth() - 2).frame;
    let to_interior = lambda.ops.interior.adjoint() * inner;
    let base = inner.adjoint() * derivative * inner;
    let mut worst: f64 = 0.0;
    for (j, pj) in lambda.ops.shifts.iter().enumerate() {
        for (k, pk) in lambda.ops.shifts.iter().enumerate() {
            let mut m = to_interior.adjoint() * pj.adjoint() * derivative * pk * &to_interior;
            if j == k {
                m -= &base;
            }
            worst = worst.max(linalg::spectral_norm(&m));
        }
    }
    worst
}

/// Smallest eigenvalue of `π_λ(p)* π_λ(p) − E* π_μ(p)* π_μ(p) E`, compressed
/// to classes of words of length `<= N − deg p`.
pub fn positivity_transfer_check(
    mu: &PositiveNCMeasure,
    lambda: &PositiveNCMeasure,
    p: &AnalyticPoly,
    depth: usize,
    tol: f64,
) -> Result<f64> {
    let (gmu, glambda, e) = co_embedding(mu, lambda, depth, tol)?;
    let len = depth
        .checked_sub(p.degree())
        .ok_or(Error::DepthExceeded { needed: p.degree(), available: depth })?;
    let p_lambda = glambda.polynomial_on_level(p)?;
    let p_mu = gmu.polynomial_on_level(p)?;
    let e_level = gmu.level(len).frame.adjoint() * &e.matrix * &glambda.level(len).frame;
    let pe = p_mu * e_level;
    let form = p_lambda.adjoint() * &p_lambda - pe.adjoint() * pe;
    Ok(linalg::min_eigenvalue(&form))
}

/// `⟨class α, T class β⟩` with `T = (D_1 − D_2) + i(D_3 − D_4)` on the GNS
/// space of the total variation.
#[derive(Clone, Debug)]
pub struct GnsFormula {
    pub total: Gns,
    pub derivatives: Vec<CMatrix>,
    pub t: CMatrix,
}

pub fn gns_formula(parts: [&PositiveNCMeasure; 4], depth: usize, tol: f64) -> Result<GnsFormula> {
    let total = parts[1..]
        .iter()
        .try_fold(parts[0].clone(), |acc, p| acc.add(p))?;
    let gtotal = build_gns(&total, depth, tol)?;
    let mut derivatives = Vec::with_capacity(4);
    for part in parts {
        let gpart = build_gns(part, depth, tol).or_else(|err| match err {
            // a vanishing component has D = 0
            Error::DegenerateMeasure => Ok(zero_space(&gtotal)),
            other => Err(other),
        })?;
        derivatives.push(CoEmbedding::between(&gpart, &gtotal)?.derivative());
    }
    let weights = [ONE, -ONE, I, -I];
    let r = gtotal.rank();
    let t = derivatives
        .iter()
        .zip(weights)
        .fold(CMatrix::zeros(r, r), |acc, (dk, w)| acc + dk * w);
    Ok(GnsFormula { total: gtotal, derivatives, t })
}

fn zero_space(like: &Gns) -> Gns {
    let n = like.space.words.len();
    let mut g = like.clone();
    g.space.coord = CMatrix::zeros(0, n);
    g.space.rank = 0;
    g.space.gram = CMatrix::zeros(n, n);
    g
}

impl GnsFormula {
    pub fn eval(&self, alpha: &Word, beta: &Word) -> Result<C64> {
        let a = self.total.class(alpha)?;
        let b = self.total.class(beta)?;
        Ok(a.dotc(&(&self.t * b)))
    }

    /// Largest deviation from `target(L^{α*} L^β)` over `|α| + |β| <= max_total`.
    pub fn max_error<M: NcFunctional + ?Sized>(&self, target: &M, max_total: usize) -> Result<f64> {
        let words = enumerate_words(self.total.space.d, max_total.min(self.total.depth()));
        let mut worst: f64 = 0.0;
        for a in &words {
            for b in words.iter().filter(|b| a.len() + b.len() <= max_total) {
                worst = worst.max((self.eval(a, b)? - eval_product(target, a, b)?).norm());
            }
        }
        Ok(worst)
    }
}

/// Summary numbers for one GNS space or order pair.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GnsReport {
    pub rank: usize,
    pub gram_min_eig: f64,
    pub toeplitz_defect: f64,
    pub embedding_norm: f64,
}

impl GnsReport {
    pub fn for_pair(source: &Gns, e: &CoEmbedding) -> Self {
        Self {
            rank: source.rank(),
            gram_min_eig: source.space.gram_min_eig,
            toeplitz_defect: toeplitz_defect(&e.derivative(), source),
            embedding_norm: e.norm(),
        }
    }
}
