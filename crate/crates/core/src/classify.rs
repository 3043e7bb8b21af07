//! Finite-truncation diagnostics for the GNS row isometry of a measure.
//!
//! Nothing here decides a type. Each function reports a number that can be
//! compared against what the absolutely continuous, singular or Cuntz cases
//! would produce at the same truncation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gns::{build_gns, Gns};
use crate::linalg::{self, CMatrix, CVector, ONE};
use crate::measures::{check_depth, eval_product, NcFunctional, PositiveNCMeasure};
use crate::words::{enumerate_words, reduce_adjoint_product, Reduction, Word};

/// `‖P_int (I − Σ Π_k Π_k*) P_int‖`: zero when every interior vector lies in
/// the joint range of the shifts.
pub fn cuntz_defect(g: &Gns) -> Result<f64> {
    if g.depth() < 2 {
        return Err(Error::InvalidArgument("Cuntz defect needs GNS depth at least 2".into()));
    }
    let r = g.rank();
    let mut range = CMatrix::zeros(r, r);
    for p in &g.ops.shifts {
        range += p * p.adjoint();
    }
    let q = &g.ops.interior;
    let defect = q.adjoint() * (CMatrix::identity(r, r) - range) * q;
    Ok(linalg::spectral_norm(&defect))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WanderingCheck {
    /// `max_{1 <= |α| <= depth} |<x, Π^α x>|`.
    pub raw: f64,
    /// `raw / ‖x‖²`.
    pub normalized: f64,
}

pub fn wandering_check(g: &Gns, x: &CVector, depth: usize) -> Result<WanderingCheck> {
    if depth + 1 > g.depth() {
        return Err(Error::DepthExceeded { needed: depth + 1, available: g.depth() });
    }
    let mut raw: f64 = 0.0;
    for alpha in enumerate_words(g.space.d, depth).iter().skip(1) {
        raw = raw.max(x.dotc(&g.apply_word(alpha, x)).norm());
    }
    let norm2 = x.norm_squared();
    let normalized = if norm2 > 0.0 { raw / norm2 } else { 0.0 };
    Ok(WanderingCheck { raw, normalized })
}

/// Outcome of fitting `μ(L^{α*}L^β) ≈ <f, L^{α*}L^β g>` over `|α|, |β| <= N`.
#[derive(Clone, Debug)]
pub struct AcFit {
    pub residual: f64,
    pub iterations: usize,
    pub f: CVector,
    pub g: CVector,
}

const AC_FIT_MAX_ITER: usize = 50;
const AC_FIT_TARGET: f64 = 1e-10;

/// Alternating least squares for a vector-functional representation with
/// `f, g` supported on words of length `<= depth`, started from the vacuum.
pub fn ac_fit(mu: &PositiveNCMeasure, depth: usize) -> Result<AcFit> {
    check_depth(mu.max_len(), depth)?;
    let d = mu.dim();
    let words = enumerate_words(d, depth);
    let n = words.len();
    let mut target = CVector::zeros(n * n);
    // (row, u, v) with αu = βv
    let mut triples = Vec::new();
    for (i, alpha) in words.iter().enumerate() {
        for (j, beta) in words.iter().enumerate() {
            let row = i * n + j;
            target[row] = eval_product(mu, alpha, beta)?;
            match reduce_adjoint_product(alpha, beta) {
                Reduction::Unit => triples.extend((0..n).map(|v| (row, v, v))),
                Reduction::Analytic(gamma) => {
                    for (v, vw) in words.iter().enumerate() {
                        let u = gamma.concat(vw);
                        if u.len() <= depth {
                            triples.push((row, u.index(d), v));
                        }
                    }
                }
                Reduction::CoAnalytic(delta) => {
                    for (u, uw) in words.iter().enumerate() {
                        let v = delta.concat(uw);
                        if v.len() <= depth {
                            triples.push((row, u, v.index(d)));
                        }
                    }
                }
                Reduction::Zero => {}
            }
        }
    }
    let scale = target.norm().max(f64::MIN_POSITIVE);
    let mut f = CVector::zeros(n);
    let mut g = CVector::zeros(n);
    f[0] = ONE;
    g[0] = ONE;
    let model = |f: &CVector, g: &CVector| {
        let mut out = CVector::zeros(n * n);
        for &(row, u, v) in &triples {
            out[row] += f[u].conj() * g[v];
        }
        out
    };
    let mut residual = (&target - model(&f, &g)).norm() / scale;
    let mut iterations = 0;
    while residual >= AC_FIT_TARGET && iterations < AC_FIT_MAX_ITER {
        let mut a = CMatrix::zeros(n * n, n);
        for &(row, u, v) in &triples {
            a[(row, v)] += f[u].conj();
        }
        g = linalg::least_squares(&a, &target);
        let mut a = CMatrix::zeros(n * n, n);
        for &(row, u, v) in &triples {
            a[(row, u)] += g[v].conj();
        }
        f = linalg::least_squares(&a, &target.map(|z| z.conj()));
        iterations += 1;
        residual = (&target - model(&f, &g)).norm() / scale;
    }
    Ok(AcFit { residual, iterations, f, g })
}

/// Support of the coefficients `h_α = μ(L^{β*} L^{α*} L^β)`, `|α| <= N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CauchyCheck {
    pub nonzero: usize,
    pub max_degree: Option<usize>,
    /// No nonzero coefficient at length `N`.
    pub finite_cutoff: bool,
}

pub fn polynomial_cauchy_check<M: NcFunctional + ?Sized>(mu: &M, beta: &Word, depth: usize) -> Result<CauchyCheck> {
    beta.check_alphabet(mu.dim())?;
    let mut nonzero = 0;
    let mut max_degree = None;
    for alpha in enumerate_words(mu.dim(), depth) {
        let h = eval_product(mu, &alpha.concat(beta), beta)?;
        if h.norm() > 1e-12 {
            nonzero += 1;
            max_degree = Some(alpha.len());
        }
    }
    Ok(CauchyCheck { nonzero, max_degree, finite_cutoff: max_degree.is_none_or(|m| m < depth) })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WanderingWitness {
    pub word: Word,
    pub correlation: f64,
}

/// Measured quantities only; see the notes field for the truncation used.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TypeReport {
    pub cuntz_defect: f64,
    pub wandering_witnesses: Vec<WanderingWitness>,
    pub ac_fit_residual: f64,
    pub notes: String,
}

/// Collects the diagnostics at GNS depth `depth`, testing the classes of
/// the empty word and single letters as wandering candidates.
pub fn type_report(mu: &PositiveNCMeasure, depth: usize, tol: f64) -> Result<TypeReport> {
    let g = build_gns(mu, depth, tol)?;
    let cuntz = cuntz_defect(&g)?;
    let mut witnesses = Vec::new();
    for w in enumerate_words(mu.dim(), 1) {
        let x = g.class(&w)?;
        if x.norm() <= tol {
            continue;
        }
        let check = wandering_check(&g, &x, depth - 1)?;
        witnesses.push(WanderingWitness { word: w, correlation: check.normalized });
    }
    let fit = ac_fit(mu, depth)?;
    let notes = format!(
        "GNS depth {depth}, rank {}; wandering correlations normalized by |x|^2 over words up to length {}; \
         vector-functional fit over words up to length {depth} after {} sweeps",
        g.rank(),
        depth - 1,
        fit.iterations
    );
    Ok(TypeReport { cuntz_defect: cuntz, wandering_witnesses: witnesses, ac_fit_residual: fit.residual, notes })
}
