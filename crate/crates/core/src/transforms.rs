//! Free power series: Herglotz series of positive measures, the Cayley
//! transform to and from the Schur class, Clark measures, compressions and
//! evaluation at matrix points of the row ball.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::fock::AnalyticPoly;
use crate::linalg::{self, real, CMatrix, C64, ONE, ZERO};
use crate::measures::{eval_product, is_positive, NcFunctional, PositiveNCMeasure, PSD_TOL};
use crate::words::{enumerate_words, word_count, Letter, Word};

/// Truncated free power series `Σ_{|α| <= cap} s_α z^α`.
///
/// Products truncate at the smaller of the two caps.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeSeries {
    d: usize,
    cap: usize,
    coeffs: Vec<C64>,
}

impl FreeSeries {
    pub fn zero(d: usize, cap: usize) -> Self {
        assert!(d >= 1, "alphabet must be non-empty");
        Self { d, cap, coeffs: vec![ZERO; word_count(d, cap)] }
    }

    pub fn constant(d: usize, cap: usize, value: C64) -> Self {
        let mut s = Self::zero(d, cap);
        s.coeffs[0] = value;
        s
    }

    pub fn one(d: usize, cap: usize) -> Self {
        Self::constant(d, cap, ONE)
    }

    /// The coordinate function `z_k`.
    pub fn variable(d: usize, cap: usize, k: Letter) -> Self {
        Self::from_terms(d, cap, [(Word::letter(k), ONE)]).expect("valid letter")
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, C64)>>(d: usize, cap: usize, terms: I) -> Result<Self> {
        let mut s = Self::zero(d, cap);
        for (w, v) in terms {
            w.check_alphabet(d)?;
            if w.len() > cap {
                return Err(Error::OutOfRange { len: w.len(), word: w, max_len: cap });
            }
            s.coeffs[w.index(d)] += v;
        }
        Ok(s)
    }

    pub fn from_fn(d: usize, cap: usize, mut f: impl FnMut(&Word) -> Result<C64>) -> Result<Self> {
        let coeffs = enumerate_words(d, cap).iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        Ok(Self { d, cap, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Coefficient of `z^w`; `w` must be within the cap.
    pub fn coeff(&self, w: &Word) -> C64 {
        assert!(w.len() <= self.cap, "word {w} exceeds the series cap {}", self.cap);
        self.coeffs[w.index(self.d)]
    }

    pub fn constant_term(&self) -> C64 {
        self.coeffs[0]
    }

    /// `(word, coefficient)` for coefficients with modulus above `tol`.
    pub fn nonzero_terms(&self, tol: f64) -> Vec<(Word, C64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, v)| v.norm() > tol)
            .map(|(i, &v)| (Word::from_index(self.d, i), v))
            .collect()
    }

    pub fn truncate(&self, cap: usize) -> Self {
        let cap = cap.min(self.cap);
        Self { d: self.d, cap, coeffs: self.coeffs[..word_count(self.d, cap)].to_vec() }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::AlphabetMismatch { expected: self.d, found: other.d });
        }
        Ok(())
    }

    fn combine(&self, a: C64, other: &Self, b: C64) -> Result<Self> {
        self.check_compatible(other)?;
        let cap = self.cap.min(other.cap);
        let n = word_count(self.d, cap);
        let coeffs = (0..n).map(|i| a * self.coeffs[i] + b * other.coeffs[i]).collect();
        Ok(Self { d: self.d, cap, coeffs })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(ONE, other, ONE)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(ONE, other, -ONE)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { d: self.d, cap: self.cap, coeffs: self.coeffs.iter().map(|v| v * s).collect() }
    }

    /// Cauchy product: `(ab)_w = Σ_{uv = w} a_u b_v`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let d = self.d;
        let cap = self.cap.min(other.cap);
        let offsets: Vec<usize> = (0..=cap + 1).map(|l| word_count(d, l) - d.pow(l as u32)).collect();
        let pow: Vec<usize> = (0..=cap).map(|l| d.pow(l as u32)).collect();
        let mut out = Self::zero(d, cap);
        for lu in 0..=cap {
            for iu in 0..pow[lu] {
                let a = self.coeffs[offsets[lu] + iu];
                if a == ZERO {
                    continue;
                }
                for lv in 0..=cap - lu {
                    for iv in 0..pow[lv] {
                        let b = other.coeffs[offsets[lv] + iv];
                        if b != ZERO {
                            out.coeffs[offsets[lu + lv] + iu * pow[lv] + iv] += a * b;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Two-sided inverse up to the cap, by the recursion
    /// `s_∅ t_w = −Σ_{w = uv, u ≠ ∅} s_u t_v`.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = self.constant_term();
        if a0.norm() <= 1e-12 {
            return Err(Error::NonInvertibleConstantTerm { value: a0.norm() });
        }
        let d = self.d;
        let words = enumerate_words(d, self.cap);
        let mut inv = Self::zero(d, self.cap);
        inv.coeffs[0] = ONE / a0;
        for (i, w) in words.iter().enumerate().skip(1) {
            let letters = w.letters();
            let mut acc = ZERO;
            for split in 1..=letters.len() {
                let u = Word::new(letters[..split].to_vec());
                let v = Word::new(letters[split..].to_vec());
                acc += self.coeffs[u.index(d)] * inv.coeffs[v.index(d)];
            }
            inv.coeffs[i] = -acc / a0;
        }
        Ok(inv)
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.coeffs.iter().map(|v| v.norm()).fold(0.0, f64::max))
    }

    /// Euclidean norm of the coefficients of each degree `0..=cap`.
    pub fn degree_norms(&self) -> Vec<f64> {
        (0..=self.cap)
            .map(|l| {
                let start = if l == 0 { 0 } else { word_count(self.d, l - 1) };
                let end = word_count(self.d, l);
                self.coeffs[start..end].iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
            })
            .collect()
    }
}

/// `H_μ`: constant term `μ(I)` and `2 conj μ(L^{α^t})` elsewhere, the
/// expansion of `(id ⊗ μ)((I + Z⊗L*)(I − Z⊗L*)^{-1})`.
pub fn herglotz_series(mu: &PositiveNCMeasure, cap: usize) -> Result<FreeSeries> {
    if cap > mu.max_len() {
        return Err(Error::DepthExceeded { needed: cap, available: mu.max_len() });
    }
    FreeSeries::from_fn(mu.dim(), cap, |w| {
        if w.is_empty() {
            Ok(mu.unit())
        } else {
            Ok(mu.moment(&w.reverse())?.conj() * 2.0)
        }
    })
}

/// `b = (H − 1)(H + 1)^{-1}`.
pub fn cayley(h: &FreeSeries) -> Result<FreeSeries> {
    let one = FreeSeries::one(h.dim(), h.cap());
    let denom = h.add(&one)?;
    if denom.constant_term().norm() <= 1e-12 {
        return Err(Error::NonInvertibleConstantTerm { value: denom.constant_term().norm() });
    }
    h.sub(&one)?.mul(&denom.inverse()?)
}

/// `H = (1 + b)(1 − b)^{-1}`, defined when `|b(0)| < 1`.
pub fn inverse_cayley(b: &FreeSeries) -> Result<FreeSeries> {
    let modulus = b.constant_term().norm();
    if modulus >= 1.0 {
        return Err(Error::SchurConstantTermTooLarge { modulus });
    }
    let one = FreeSeries::one(b.dim(), b.cap());
    one.add(b)?.mul(&one.sub(b)?.inverse()?)
}

/// Positive measure whose Herglotz series is the inverse Cayley transform of
/// `b`, with moments up to length `2·depth`. Fails with
/// [`Error::NotPositive`] when the recovered table is not PSD at `depth`.
pub fn clark_measure(b: &FreeSeries, depth: usize) -> Result<PositiveNCMeasure> {
    let h = inverse_cayley(b)?;
    if 2 * depth > h.cap() {
        return Err(Error::DepthExceeded { needed: 2 * depth, available: h.cap() });
    }
    let unit = h.constant_term();
    if unit.im.abs() > 1e-10 || unit.re <= 1e-10 {
        return Err(Error::NotPositive(format!("Herglotz constant term {unit} is not real and positive")));
    }
    let mu = PositiveNCMeasure::from_fn(b.dim(), 2 * depth, |w| {
        if w.is_empty() {
            Ok(real(unit.re))
        } else {
            Ok(h.coeff(&w.reverse()).conj() * 0.5)
        }
    })?;
    let check = is_positive(&mu, depth, PSD_TOL)?;
    if !check.positive {
        return Err(Error::NotPositive(format!(
            "Clark table has Gram eigenvalue {:e}; b is not in the Schur class",
            check.min_eig
        )));
    }
    Ok(mu)
}

/// `μ'(b) = μ(a_0* b a_0)` for an analytic polynomial `a_0`, with moments up
/// to `max_len`.
pub fn compress(mu: &PositiveNCMeasure, a0: &AnalyticPoly, max_len: usize) -> Result<PositiveNCMeasure> {
    a0.check_alphabet(mu.dim())?;
    let needed = max_len + 2 * a0.degree();
    if needed > mu.max_len() {
        return Err(Error::DepthExceeded { needed, available: mu.max_len() });
    }
    let terms: Vec<(&Word, &C64)> = a0.terms().collect();
    PositiveNCMeasure::from_fn(mu.dim(), max_len, |alpha| {
        let mut total = ZERO;
        for (sigma, a_s) in &terms {
            for (tau, a_t) in &terms {
                total += a_s.conj() * *a_t * eval_product(mu, sigma, &alpha.concat(tau))?;
            }
        }
        if alpha.is_empty() {
            total.im = 0.0;
        }
        Ok(total)
    })
}

/// A point `Z = (Z_1, …, Z_d)` of `n × n` matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPoint {
    pub n: usize,
    pub z: Vec<CMatrix>,
}

impl MatrixPoint {
    pub fn new(z: Vec<CMatrix>) -> Result<Self> {
        let n = z.first().map(|m| m.nrows()).unwrap_or(0);
        if z.is_empty() || z.iter().any(|m| m.nrows() != n || m.ncols() != n) {
            return Err(Error::InvalidArgument("point needs d >= 1 square matrices of equal size".into()));
        }
        Ok(Self { n, z })
    }

    pub fn scalar(values: &[C64]) -> Self {
        Self { n: 1, z: values.iter().map(|&v| CMatrix::from_element(1, 1, v)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.z.len()
    }

    pub fn row_norm(&self) -> f64 {
        linalg::row_norm(&self.z)
    }

    pub fn is_strict(&self) -> bool {
        self.row_norm() < 1.0
    }
}

/// Value of a truncated series at a strict point, with a geometric bound
/// on the omitted tail.
#[derive(Clone, Debug)]
pub struct SeriesValue {
    pub value: CMatrix,
    pub row_norm: f64,
    /// `C r^{M+1} / (1 − r)` with `C` the largest per-degree coefficient norm.
    pub tail_bound: f64,
    pub within_tolerance: bool,
}

pub fn series_eval(s: &FreeSeries, point: &MatrixPoint, tol: f64) -> Result<SeriesValue> {
    if point.dim() != s.dim() {
        return Err(Error::AlphabetMismatch { expected: s.dim(), found: point.dim() });
    }
    let r = point.row_norm();
    if r >= 1.0 {
        return Err(Error::NotStrict { norm: r });
    }
    let d = s.dim();
    let n = point.n;
    let words = enumerate_words(d, s.cap());
    let mut powers: Vec<CMatrix> = Vec::with_capacity(words.len());
    powers.push(CMatrix::identity(n, n));
    let mut value = CMatrix::identity(n, n) * s.constant_term();
    for (i, w) in words.iter().enumerate().skip(1) {
        let (&last, head) = w.letters().split_last().expect("non-empty");
        let parent = Word::new(head.to_vec()).index(d);
        let p = &powers[parent] * &point.z[last as usize - 1];
        value += &p * s.coeffs[i];
        powers.push(p);
    }
    let c = s.degree_norms().into_iter().fold(0.0, f64::max);
    let tail_bound = c * r.powi(s.cap() as i32 + 1) / (1.0 - r);
    Ok(SeriesValue { value, row_norm: r, tail_bound, within_tolerance: tail_bound <= tol })
}

/// Gaussian matrices rescaled to row norm `r`, deterministic in `seed`.
pub fn random_strict_point(d: usize, n: usize, r: f64, seed: u64) -> Result<MatrixPoint> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidArgument(format!("target row norm {r} must lie in (0, 1)")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z: Vec<CMatrix> = (0..d)
        .map(|_| {
            CMatrix::from_fn(n, n, |_, _| {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                C64::new(re, im)
            })
        })
        .collect();
    let norm = linalg::row_norm(&z);
    let scale = r / norm;
    MatrixPoint::new(z.into_iter().map(|m| m * real(scale)).collect())
}
