//! Small dense linear-algebra helpers on complex matrices.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn real(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Eigen-decomposition of a hermitian matrix with eigenvalues sorted in
/// ascending order; the eigenvector columns follow the same order.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMatrix::zeros(0, 0));
    }
    let sym = hermitian_part(m);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

pub fn eigenvalues(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut values: Vec<f64> = hermitian_part(m).symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Smallest eigenvalue of a hermitian matrix (`+inf` for an empty matrix).
pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    eigenvalues(m).first().copied().unwrap_or(f64::INFINITY)
}

/// Largest singular value.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone().singular_values().max()
}

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Largest singular value of the row `[Z_1 ... Z_d]`, i.e. the square root of
/// the largest eigenvalue of `Σ Z_k Z_k^*`.
pub fn row_norm(mats: &[CMatrix]) -> f64 {
    let Some(first) = mats.first() else {
        return 0.0;
    };
    let n = first.nrows();
    let mut acc = CMatrix::zeros(n, n);
    for z in mats {
        acc += z * z.adjoint();
    }
    eigenvalues(&acc).last().copied().unwrap_or(0.0).max(0.0).sqrt()
}

/// Minimum-norm least-squares solution of `a x = b`.
pub fn least_squares(a: &CMatrix, b: &CVector) -> CVector {
    if a.ncols() == 0 {
        return CVector::zeros(0);
    }
    let svd = a.clone().svd(true, true);
    let cutoff = 1e-13 * svd.singular_values.max().max(1.0);
    svd.solve(b, cutoff).expect("both factors were computed")
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
