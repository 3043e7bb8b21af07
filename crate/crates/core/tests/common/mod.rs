//! Brute-force Fock space for test oracles. Nothing here goes through the
//! crate's word reduction or moment tables.

#![allow(dead_code)]

use std::collections::HashMap;

use num_complex::Complex64 as C64;

/// Words of length `<= max_len` over `1..=d`, shortest first.
pub fn all_words(d: u8, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for k in 1..=d {
                let mut v = w.clone();
                v.push(k);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// The creation operators `L_k e_w = e_{kw}` as 0/1 column maps on the span
/// of words of length `<= max_len`.
pub struct SparseFock {
    pub words: Vec<Vec<u8>>,
    pub index: HashMap<Vec<u8>, usize>,
    /// `shift[k-1][col] = Some(row)` when `L_k e_col = e_row`.
    shift: Vec<Vec<Option<usize>>>,
    /// Transposes of the above.
    adjoint: Vec<Vec<Option<usize>>>,
}

impl SparseFock {
    pub fn new(d: u8, max_len: usize) -> Self {
        let words = all_words(d, max_len);
        let index: HashMap<Vec<u8>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let n = words.len();
        let mut shift = vec![vec![None; n]; d as usize];
        let mut adjoint = vec![vec![None; n]; d as usize];
        for (col, w) in words.iter().enumerate() {
            for k in 1..=d {
                let mut kw = vec![k];
                kw.extend_from_slice(w);
                if let Some(&row) = index.get(&kw) {
                    shift[k as usize - 1][col] = Some(row);
                    adjoint[k as usize - 1][row] = Some(col);
                }
            }
        }
        Self { words, index, shift, adjoint }
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    fn apply(map: &[Option<usize>], x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; x.len()];
        for (col, &v) in x.iter().enumerate() {
            if v != 0.0 {
                if let Some(row) = map[col] {
                    out[row] += v;
                }
            }
        }
        out
    }

    /// `L^{α*} L^β x`, applying one letter at a time.
    pub fn adjoint_product(&self, alpha: &[u8], beta: &[u8], x: &[f64]) -> Vec<f64> {
        let mut y = x.to_vec();
        for &k in beta.iter().rev() {
            y = Self::apply(&self.shift[k as usize - 1], &y);
        }
        for &k in alpha {
            y = Self::apply(&self.adjoint[k as usize - 1], &y);
        }
        y
    }

    pub fn basis(&self, w: &[u8]) -> Vec<f64> {
        let mut e = vec![0.0; self.dim()];
        e[self.index[w]] = 1.0;
        e
    }
}

/// Finitely supported Fock vector as a word map.
pub type Vector = HashMap<Vec<u8>, C64>;

pub fn prepend(alpha: &[u8], f: &Vector) -> Vector {
    f.iter()
        .map(|(w, v)| {
            let mut aw = alpha.to_vec();
            aw.extend_from_slice(w);
            (aw, *v)
        })
        .collect()
}

pub fn inner(f: &Vector, g: &Vector) -> C64 {
    f.iter().map(|(w, a)| a.conj() * g.get(w).copied().unwrap_or_default()).sum()
}

/// `<f, L^{α*} L^β g> = <L^α f, L^β g>`.
pub fn vector_entry(f: &Vector, g: &Vector, alpha: &[u8], beta: &[u8]) -> C64 {
    inner(&prepend(alpha, f), &prepend(beta, g))
}

/// The measure `ξ` on `L^{α*}L^β`: 1 when the product collapses to a
/// power of `L_1` or its adjoint, 0 otherwise, by letter-by-letter
/// cancellation.
pub fn xi_entry(alpha: &[u8], beta: &[u8]) -> f64 {
    let common = alpha.iter().zip(beta).take_while(|(a, b)| a == b).count();
    let short = alpha.len().min(beta.len());
    if common < short {
        return 0.0;
    }
    let rest = if alpha.len() > beta.len() { &alpha[common..] } else { &beta[common..] };
    if rest.iter().all(|&k| k == 1) {
        1.0
    } else {
        0.0
    }
}

/// `ξ(L^α)`.
pub fn xi_moment(alpha: &[u8]) -> f64 {
    xi_entry(&[], alpha)
}

pub fn to_u8(w: &nclab::Word) -> Vec<u8> {
    w.letters().to_vec()
}
