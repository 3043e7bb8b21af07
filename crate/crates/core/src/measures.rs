//! NC measures as moment tables over the free monoid.
//!
//! A bounded functional on the free disk system is determined by its values
//! on the monomials `L^α` and `L^{α*}`. Products `L^{α*} L^β` collapse to a
//! single monomial (see [`reduce_adjoint_product`]), so a pair of tables is
//! enough to evaluate any polynomial element. Positive measures are
//! hermitian, and store a single table.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fock::FockVector;
use crate::linalg::{self, real, CMatrix, C64, I, ONE, ZERO};
use crate::words::{enumerate_words, reduce_adjoint_product, word_count, Reduction, Word};

/// Default relative tolerance for Gram positivity.
pub const PSD_TOL: f64 = 1e-10;

/// Read access shared by positive and complex measures.
pub trait NcFunctional {
    /// Alphabet size `d`.
    fn dim(&self) -> usize;
    /// Longest word with a stored moment.
    fn max_len(&self) -> usize;
    /// Value on `L^w`.
    fn forward(&self, w: &Word) -> Result<C64>;
    /// Value on `L^{w*}`.
    fn backward(&self, w: &Word) -> Result<C64>;

    /// Value at the identity.
    fn unit(&self) -> C64 {
        self.forward(&Word::empty()).expect("the empty word is always stored")
    }
}

/// Dense table over all words of length `<= max_len`, in canonical order.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct MomentTable {
    d: usize,
    max_len: usize,
    values: Vec<C64>,
}

impl MomentTable {
    fn from_fn(d: usize, max_len: usize, mut f: impl FnMut(&Word) -> Result<C64>) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("alphabet size must be at least 1".into()));
        }
        let values = enumerate_words(d, max_len)
            .iter()
            .map(&mut f)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { d, max_len, values })
    }

    fn from_map(d: usize, max_len: usize, map: &BTreeMap<Word, C64>) -> Result<Self> {
        for w in map.keys() {
            w.check_alphabet(d)?;
            if w.len() > max_len {
                return Err(Error::OutOfRange { word: w.clone(), len: w.len(), max_len });
            }
        }
        Self::from_fn(d, max_len, |w| map.get(w).copied().ok_or_else(|| Error::MissingMoment(w.clone())))
    }

    fn get(&self, w: &Word) -> Result<C64> {
        w.check_alphabet(self.d)?;
        if w.len() > self.max_len {
            return Err(Error::OutOfRange { word: w.clone(), len: w.len(), max_len: self.max_len });
        }
        Ok(self.values[w.index(self.d)])
    }

    fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self { d: self.d, max_len: self.max_len, values: self.values.iter().map(|&v| f(v)).collect() }
    }

    /// `a·self + b·other` on the common range.
    fn combine(&self, a: C64, other: &Self, b: C64) -> Result<Self> {
        check_same_alphabet(self.d, other.d)?;
        let max_len = self.max_len.min(other.max_len);
        let n = word_count(self.d, max_len);
        let values = (0..n).map(|i| a * self.values[i] + b * other.values[i]).collect();
        Ok(Self { d: self.d, max_len, values })
    }

    fn truncate(&self, max_len: usize) -> Self {
        let max_len = max_len.min(self.max_len);
        let n = word_count(self.d, max_len);
        Self { d: self.d, max_len, values: self.values[..n].to_vec() }
    }

    fn entries(&self) -> impl Iterator<Item = (Word, C64)> + '_ {
        self.values.iter().enumerate().map(|(i, &v)| (Word::from_index(self.d, i), v))
    }
}

fn check_same_alphabet(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch { expected, found })
    }
}

/// Hermitian moment table `α ↦ μ(L^α)`, with `μ(L^{α*}) = conj μ(L^α)`.
///
/// Positivity of the functional is a property of its Gram matrices and is
/// checked with [`is_positive`], never assumed by the type.
#[derive(Clone, Debug, PartialEq)]
pub struct PositiveNCMeasure {
    table: MomentTable,
}

impl PositiveNCMeasure {
    pub fn from_fn(d: usize, max_len: usize, f: impl FnMut(&Word) -> Result<C64>) -> Result<Self> {
        Self::from_table(MomentTable::from_fn(d, max_len, f)?)
    }

    /// Every word of length `<= max_len` must appear in `moments`.
    pub fn from_moments(d: usize, max_len: usize, moments: &BTreeMap<Word, C64>) -> Result<Self> {
        Self::from_table(MomentTable::from_map(d, max_len, moments)?)
    }

    fn from_table(table: MomentTable) -> Result<Self> {
        let unit = table.values[0];
        if unit.im.abs() > 1e-12 || unit.re < -1e-12 {
            return Err(Error::NotPositive(format!("value at the identity is {unit}")));
        }
        Ok(Self { table })
    }

    /// NC Lebesgue measure, the vacuum state `b ↦ <1, b 1>`.
    pub fn lebesgue(d: usize, max_len: usize) -> Self {
        Self::from_fn(d, max_len, |w| Ok(if w.is_empty() { ONE } else { ZERO })).expect("d >= 1")
    }

    /// The point mass at the row co-isometry `Z = (1, 0)` on two letters:
    /// moment 1 on words avoiding the letter 2, and 0 otherwise.
    pub fn dirac_xi(max_len: usize) -> Self {
        Self::from_fn(2, max_len, |w| Ok(if w.contains(2) { ZERO } else { ONE })).expect("d = 2")
    }

    /// `α ↦ <v, Z^α v>` for a row contraction `Z` and a unit vector `v`.
    pub fn moments_from_point(z: &[CMatrix], v: &[C64], max_len: usize) -> Result<Self> {
        let d = z.len();
        if d == 0 {
            return Err(Error::InvalidArgument("a point needs at least one matrix".into()));
        }
        let n = v.len();
        if z.iter().any(|m| m.nrows() != n || m.ncols() != n) {
            return Err(Error::InvalidArgument(format!("point matrices must all be {n}x{n}")));
        }
        let vnorm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        if (vnorm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!("state vector has norm {vnorm}, expected 1")));
        }
        let norm = linalg::row_norm(z);
        if norm > 1.0 + 1e-12 {
            return Err(Error::RowNormExceeded { norm });
        }
        let words = enumerate_words(d, max_len);
        let v = linalg::CVector::from_column_slice(v);
        // powers[i] = Z^{words[i]}; the parent of `αk` is `α` at a smaller index
        let mut powers: Vec<CMatrix> = Vec::with_capacity(words.len());
        powers.push(CMatrix::identity(n, n));
        for w in &words[1..] {
            let (&last, head) = w.letters().split_last().expect("non-empty");
            let parent = Word::new(head.to_vec()).index(d);
            let next = &powers[parent] * &z[last as usize - 1];
            powers.push(next);
        }
        let values = powers.iter().map(|p| v.dotc(&(p * &v))).collect();
        Self::from_table(MomentTable { d, max_len, values })
    }

    pub fn moment(&self, w: &Word) -> Result<C64> {
        self.table.get(w)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::from_table(self.table.combine(ONE, &other.table, ONE)?)
    }

    /// Non-negative multiple.
    pub fn scale(&self, s: f64) -> Self {
        assert!(s >= 0.0, "positive measures scale by non-negative factors");
        Self { table: self.table.map(|v| v * s) }
    }

    pub fn truncate(&self, max_len: usize) -> Self {
        Self { table: self.table.truncate(max_len) }
    }

    pub fn to_complex(&self) -> ComplexNCMeasure {
        ComplexNCMeasure { fwd: self.table.clone(), bwd: self.table.map(|v| v.conj()) }
    }

    /// `(word, μ(L^word))` over the whole table.
    pub fn moments(&self) -> impl Iterator<Item = (Word, C64)> + '_ {
        self.table.entries()
    }
}

impl NcFunctional for PositiveNCMeasure {
    fn dim(&self) -> usize {
        self.table.d
    }
    fn max_len(&self) -> usize {
        self.table.max_len
    }
    fn forward(&self, w: &Word) -> Result<C64> {
        self.table.get(w)
    }
    fn backward(&self, w: &Word) -> Result<C64> {
        self.table.get(w).map(|v| v.conj())
    }
}

/// General bounded functional, with independent tables on `L^α` and `L^{α*}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexNCMeasure {
    fwd: MomentTable,
    bwd: MomentTable,
}

impl ComplexNCMeasure {
    pub fn from_fns(
        d: usize,
        max_len: usize,
        fwd: impl FnMut(&Word) -> Result<C64>,
        bwd: impl FnMut(&Word) -> Result<C64>,
    ) -> Result<Self> {
        Self::from_tables(MomentTable::from_fn(d, max_len, fwd)?, MomentTable::from_fn(d, max_len, bwd)?)
    }

    pub fn from_maps(
        d: usize,
        max_len: usize,
        fwd: &BTreeMap<Word, C64>,
        bwd: &BTreeMap<Word, C64>,
    ) -> Result<Self> {
        Self::from_tables(MomentTable::from_map(d, max_len, fwd)?, MomentTable::from_map(d, max_len, bwd)?)
    }

    fn from_tables(fwd: MomentTable, bwd: MomentTable) -> Result<Self> {
        check_same_alphabet(fwd.d, bwd.d)?;
        if fwd.max_len != bwd.max_len {
            return Err(Error::InvalidArgument("forward and backward tables differ in length".into()));
        }
        let (a, b) = (fwd.values[0], bwd.values[0]);
        if (a - b).norm() > 1e-12 * (1.0 + a.norm()) {
            return Err(Error::InvalidArgument(format!(
                "forward and backward values at the identity disagree: {a} vs {b}"
            )));
        }
        Ok(Self { fwd, bwd })
    }

    pub fn zero(d: usize, max_len: usize) -> Self {
        let table = MomentTable::from_fn(d, max_len, |_| Ok(ZERO)).expect("d >= 1");
        Self { fwd: table.clone(), bwd: table }
    }

    pub fn fwd(&self, w: &Word) -> Result<C64> {
        self.fwd.get(w)
    }

    pub fn bwd(&self, w: &Word) -> Result<C64> {
        self.bwd.get(w)
    }

    /// `μ*(b) = conj μ(b*)`: swaps the tables and conjugates.
    pub fn star(&self) -> Self {
        Self { fwd: self.bwd.map(|v| v.conj()), bwd: self.fwd.map(|v| v.conj()) }
    }

    /// `(μ + μ*) / 2`.
    pub fn re(&self) -> Self {
        let s = self.star();
        Self { fwd: self.fwd.combine(real(0.5), &s.fwd, real(0.5)).unwrap(), bwd: self.bwd.combine(real(0.5), &s.bwd, real(0.5)).unwrap() }
    }

    /// `(μ − μ*) / 2i`.
    pub fn im(&self) -> Self {
        let s = self.star();
        let a = ONE / (2.0 * I);
        Self { fwd: self.fwd.combine(a, &s.fwd, -a).unwrap(), bwd: self.bwd.combine(a, &s.bwd, -a).unwrap() }
    }

    /// `a·self + b·other` on the common range.
    pub fn combine(&self, a: C64, other: &Self, b: C64) -> Result<Self> {
        Ok(Self { fwd: self.fwd.combine(a, &other.fwd, b)?, bwd: self.bwd.combine(a, &other.bwd, b)? })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(ONE, other, ONE)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(ONE, other, -ONE)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { fwd: self.fwd.map(|v| v * s), bwd: self.bwd.map(|v| v * s) }
    }

    pub fn truncate(&self, max_len: usize) -> Self {
        Self { fwd: self.fwd.truncate(max_len), bwd: self.bwd.truncate(max_len) }
    }

    /// Largest deviation from `bwd = conj ∘ fwd`.
    pub fn hermitian_defect(&self) -> f64 {
        self.fwd
            .values
            .iter()
            .zip(&self.bwd.values)
            .map(|(f, b)| (f.conj() - b).norm())
            .fold(0.0, f64::max)
    }

    /// Converts a hermitian functional into the single-table form. Gram
    /// positivity is not checked here.
    pub fn to_hermitian(&self, tol: f64) -> Result<PositiveNCMeasure> {
        let defect = self.hermitian_defect();
        if defect > tol {
            return Err(Error::NotPositive(format!("functional is not hermitian (defect {defect:e})")));
        }
        let mut table = self.fwd.clone();
        table.values[0].im = 0.0;
        PositiveNCMeasure::from_table(table)
    }

    /// Largest entrywise difference over both tables on the common range.
    pub fn max_diff(&self, other: &Self) -> Result<f64> {
        let diff = self.sub(other)?;
        Ok(diff.fwd.values.iter().chain(&diff.bwd.values).map(|v| v.norm()).fold(0.0, f64::max))
    }

    pub fn forward_moments(&self) -> impl Iterator<Item = (Word, C64)> + '_ {
        self.fwd.entries()
    }

    pub fn backward_moments(&self) -> impl Iterator<Item = (Word, C64)> + '_ {
        self.bwd.entries()
    }
}

impl From<&PositiveNCMeasure> for ComplexNCMeasure {
    fn from(m: &PositiveNCMeasure) -> Self {
        m.to_complex()
    }
}

impl NcFunctional for ComplexNCMeasure {
    fn dim(&self) -> usize {
        self.fwd.d
    }
    fn max_len(&self) -> usize {
        self.fwd.max_len
    }
    fn forward(&self, w: &Word) -> Result<C64> {
        self.fwd.get(w)
    }
    fn backward(&self, w: &Word) -> Result<C64> {
        self.bwd.get(w)
    }
}

/// Value of a functional on a reduced monomial.
pub fn eval_reduction<M: NcFunctional + ?Sized>(mu: &M, r: &Reduction) -> Result<C64> {
    match r {
        Reduction::Unit => Ok(mu.unit()),
        Reduction::Analytic(g) => mu.forward(g),
        Reduction::CoAnalytic(d) => mu.backward(d),
        Reduction::Zero => Ok(ZERO),
    }
}

/// `μ(L^{α*} L^β)`.
pub fn eval_product<M: NcFunctional + ?Sized>(mu: &M, alpha: &Word, beta: &Word) -> Result<C64> {
    eval_reduction(mu, &reduce_adjoint_product(alpha, beta))
}

/// A polynomial element `Σ a_α L^α + Σ c_α L^{α*}` of the free disk system.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DiskSystemElement {
    analytic: BTreeMap<Word, C64>,
    coanalytic: BTreeMap<Word, C64>,
}

impl DiskSystemElement {
    pub fn identity() -> Self {
        Self::shift(Word::empty())
    }

    /// `L^w`.
    pub fn shift(w: Word) -> Self {
        let mut out = Self::default();
        out.analytic.insert(w, ONE);
        out
    }

    /// `L^{w*}`; the empty word lands on the identity coefficient.
    pub fn shift_adjoint(w: Word) -> Self {
        if w.is_empty() {
            return Self::identity();
        }
        let mut out = Self::default();
        out.coanalytic.insert(w, ONE);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, v) in &other.analytic {
            *out.analytic.entry(w.clone()).or_insert(ZERO) += v;
        }
        for (w, v) in &other.coanalytic {
            *out.coanalytic.entry(w.clone()).or_insert(ZERO) += v;
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            analytic: self.analytic.iter().map(|(w, v)| (w.clone(), v * s)).collect(),
            coanalytic: self.coanalytic.iter().map(|(w, v)| (w.clone(), v * s)).collect(),
        }
    }

    pub fn analytic(&self) -> &BTreeMap<Word, C64> {
        &self.analytic
    }

    pub fn coanalytic(&self) -> &BTreeMap<Word, C64> {
        &self.coanalytic
    }
}

/// Linear extension of the moment tables to a polynomial element.
pub fn eval<M: NcFunctional + ?Sized>(mu: &M, x: &DiskSystemElement) -> Result<C64> {
    let mut total = ZERO;
    for (w, a) in &x.analytic {
        total += a * mu.forward(w)?;
    }
    for (w, a) in &x.coanalytic {
        total += a * mu.backward(w)?;
    }
    Ok(total)
}

pub(crate) fn check_depth(max_len: usize, n: usize) -> Result<()> {
    if 2 * n > max_len {
        Err(Error::DepthExceeded { needed: 2 * n, available: max_len })
    } else {
        Ok(())
    }
}

/// `G[α, β] = μ(L^{α*} L^β)` over words of length `<= n`.
pub fn gram<M: NcFunctional + ?Sized>(mu: &M, n: usize) -> Result<CMatrix> {
    check_depth(mu.max_len(), n)?;
    let words = enumerate_words(mu.dim(), n);
    let size = words.len();
    let mut g = CMatrix::zeros(size, size);
    for (i, a) in words.iter().enumerate() {
        for (j, b) in words.iter().enumerate() {
            g[(i, j)] = eval_product(mu, a, b)?;
        }
    }
    Ok(g)
}

/// Result of a Gram positivity test.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Positivity {
    pub positive: bool,
    pub min_eig: f64,
    pub norm: f64,
}

/// `λ_min(G) >= −tol·max(1, ‖G‖)` for a hermitian Gram matrix.
pub fn psd_test(g: &CMatrix, tol: f64) -> Positivity {
    let eig = linalg::eigenvalues(g);
    let min_eig = eig.first().copied().unwrap_or(0.0);
    let norm = eig.iter().map(|v| v.abs()).fold(0.0, f64::max);
    Positivity { positive: min_eig >= -tol * norm.max(1.0), min_eig, norm }
}

pub fn is_positive<M: NcFunctional + ?Sized>(mu: &M, n: usize, tol: f64) -> Result<Positivity> {
    Ok(psd_test(&gram(mu, n)?, tol))
}

/// `μ <= λ` at truncation `n`, i.e. `λ − μ` has a PSD Gram matrix.
pub fn leq<A, B>(mu: &A, lambda: &B, n: usize, tol: f64) -> Result<Positivity>
where
    A: NcFunctional + ?Sized,
    B: NcFunctional + ?Sized,
{
    check_same_alphabet(mu.dim(), lambda.dim())?;
    Ok(psd_test(&(gram(lambda, n)? - gram(mu, n)?), tol))
}

/// The vector functional `b ↦ <f, b g>` on the Fock space.
pub fn vector_functional(f: &FockVector, g: &FockVector, d: usize, max_len: usize) -> Result<ComplexNCMeasure> {
    f.check_alphabet(d)?;
    g.check_alphabet(d)?;
    ComplexNCMeasure::from_fns(d, max_len, |w| Ok(f.inner(&g.shift(w))), |w| Ok(f.inner(&g.shift_adjoint(w))))
}

/// `m_h(b) = <h, b h>`, positive by construction.
pub fn vector_state(h: &FockVector, d: usize, max_len: usize) -> Result<PositiveNCMeasure> {
    vector_functional(h, h, d, max_len)?.to_hermitian(1e-12)
}
