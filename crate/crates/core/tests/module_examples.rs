mod common;

use std::collections::BTreeMap;

use nclab::classify::{ac_fit, cuntz_defect, polynomial_cauchy_check, wandering_check};
use nclab::decomposition::{
    back_shift, is_analytic, lebesgue_parts_on_example, shift_wittstock, total_variation, wittstock_from_vectors,
    PartTag, WittstockQuad,
};
use nclab::fock::FockVector;
use nclab::gns::{build_gns, co_embedding, gns_formula, toeplitz_defect, RANK_TOL};
use nclab::linalg::{self, c, real, CMatrix, ONE, ZERO};
use nclab::measures::{
    eval, eval_product, gram, is_positive, leq, vector_functional, DiskSystemElement, NcFunctional, PSD_TOL,
};
use nclab::transforms::{
    cayley, clark_measure, compress, herglotz_series, inverse_cayley, random_strict_point, series_eval, MatrixPoint,
};
use nclab::words::{enumerate_words, reduce_adjoint_product, Reduction};
use nclab::{ComplexNCMeasure, FreeSeries, PositiveNCMeasure, Word};

use common::{all_words, prepend, to_u8, vector_entry, xi_entry, xi_moment, Vector};

fn w(s: &str) -> Word {
    Word::parse(s).unwrap()
}

fn words(list: &[&str]) -> Vec<Word> {
    list.iter().map(|s| w(s)).collect()
}

#[test]
fn word_enumeration() {
    assert_eq!(enumerate_words(1, 2), words(&["", "1", "11"]));
    assert_eq!(enumerate_words(2, 1), words(&["", "1", "2"]));
    assert_eq!(enumerate_words(2, 2), words(&["", "1", "2", "11", "12", "21", "22"]));
    let oracle: Vec<Vec<u8>> = all_words(3, 3);
    let ours: Vec<Vec<u8>> = enumerate_words(3, 3).iter().map(to_u8).collect();
    assert_eq!(ours, oracle);
}

#[test]
fn adjoint_product_reduction() {
    assert_eq!(reduce_adjoint_product(&w(""), &w("12")), Reduction::Analytic(w("12")));
    assert_eq!(reduce_adjoint_product(&w("12"), &w("11")), Reduction::Zero);
    assert_eq!(reduce_adjoint_product(&w("112"), &w("1")), Reduction::CoAnalytic(w("12")));
}

#[test]
fn point_moments() {
    let max_len = 6;
    let scalar = |a: f64, b: f64| vec![CMatrix::from_element(1, 1, real(a)), CMatrix::from_element(1, 1, real(b))];
    let xi = PositiveNCMeasure::moments_from_point(&scalar(1.0, 0.0), &[ONE], max_len).unwrap();
    assert!(xi.to_complex().max_diff(&PositiveNCMeasure::dirac_xi(max_len).to_complex()).unwrap() <= 1e-15);
    let m = PositiveNCMeasure::moments_from_point(&scalar(0.0, 0.0), &[ONE], max_len).unwrap();
    assert!(m.to_complex().max_diff(&PositiveNCMeasure::lebesgue(2, max_len).to_complex()).unwrap() <= 1e-15);

    let swapped = PositiveNCMeasure::moments_from_point(&scalar(0.0, 1.0), &[ONE], max_len).unwrap();
    for a in all_words(2, max_len) {
        // monomial z^α evaluated at (0, 1)
        let expected = a.iter().map(|&k| if k == 1 { 0.0 } else { 1.0 }).product::<f64>();
        assert_eq!(swapped.moment(&Word::new(a.clone())).unwrap(), real(expected), "{a:?}");
    }
    let h = herglotz_series(&swapped, 5).unwrap();
    for k in 1..=5 {
        assert_eq!(h.coeff(&Word::power(2, k)), real(2.0));
        assert_eq!(h.coeff(&Word::power(1, k)), ZERO);
    }
}

#[test]
fn products_and_disk_elements() {
    let xi = PositiveNCMeasure::dirac_xi(6);
    for a in all_words(2, 3) {
        for b in all_words(2, 3) {
            let v = eval_product(&xi, &Word::new(a.clone()), &Word::new(b.clone())).unwrap();
            assert_eq!(v, real(xi_entry(&a, &b)), "{a:?} {b:?}");
        }
    }
    assert_eq!(eval_product(&xi, &w("1"), &w("12")).unwrap(), ZERO);
    assert_eq!(eval_product(&xi, &w("2"), &w("21")).unwrap(), ONE);
    let f = FockVector::random(2, 2, 3);
    let mu = vector_functional(&f, &FockVector::random(2, 2, 4), 2, 4).unwrap();
    for a in enumerate_words(2, 2) {
        assert!((eval_product(&mu, &a, &a).unwrap() - mu.fwd(&Word::empty()).unwrap()).norm() <= 1e-12);
    }

    let m = PositiveNCMeasure::lebesgue(2, 4);
    let x = DiskSystemElement::identity().add(&DiskSystemElement::shift(w("1"))).add(&DiskSystemElement::shift_adjoint(w("1")));
    assert_eq!(eval(&m, &x).unwrap(), ONE);
    let y = DiskSystemElement::shift(w("1")).add(&DiskSystemElement::shift(w("2")).scale(real(-1.0)));
    assert_eq!(eval(&xi, &y).unwrap(), ONE);

    let gamma = back_shift(&xi, 2).unwrap().star();
    for a in enumerate_words(2, 4).into_iter().skip(1) {
        let z = DiskSystemElement::shift(a.clone()).scale(c(0.3, -1.1));
        assert_eq!(eval(&gamma, &z).unwrap(), ZERO, "{a}");
    }
}

#[test]
fn gram_matrices_and_order() {
    let m = PositiveNCMeasure::lebesgue(2, 6);
    let n = gram(&m, 3).unwrap();
    assert_eq!(linalg::max_abs_diff(&n, &CMatrix::identity(15, 15)), 0.0);

    let xi = PositiveNCMeasure::dirac_xi(6);
    let g1 = gram(&xi, 1).unwrap();
    let expected = CMatrix::from_row_slice(3, 3, &[ONE, ONE, ZERO, ONE, ONE, ZERO, ZERO, ZERO, ONE]);
    assert_eq!(g1, expected);
    let g2 = gram(&xi, 2).unwrap();
    let rank = linalg::eigenvalues(&g2).iter().filter(|e| **e > RANK_TOL).count();
    assert_eq!(rank, 4);

    assert!(is_positive(&m, 3, PSD_TOL).unwrap().positive);
    for depth in 1..=3 {
        assert!(is_positive(&xi, depth, PSD_TOL).unwrap().positive);
    }
    let mut table: BTreeMap<Word, _> = enumerate_words(2, 2).into_iter().map(|a| (a, ZERO)).collect();
    table.insert(w(""), ONE);
    table.insert(w("1"), real(2.0));
    let bad = PositiveNCMeasure::from_moments(2, 2, &table).unwrap();
    let check = is_positive(&bad, 1, PSD_TOL).unwrap();
    assert!(!check.positive);
    assert!((check.min_eig + 1.0).abs() <= 1e-12);

    assert!(leq(&xi, &xi.add(&m).unwrap(), 3, PSD_TOL).unwrap().positive);
    let no = leq(&m, &xi, 1, PSD_TOL).unwrap();
    assert!(!no.positive);
    assert!((no.min_eig + 1.0).abs() <= 1e-12);
    assert!(leq(&xi, &xi, 3, PSD_TOL).unwrap().positive);
}

fn fock(terms: &[(&str, f64)]) -> (FockVector, Vector) {
    let ours = FockVector::from_terms(terms.iter().map(|(s, v)| (w(s), real(*v))));
    let oracle = terms.iter().map(|(s, v)| (to_u8(&w(s)), real(*v))).collect();
    (ours, oracle)
}

#[test]
fn vector_functionals() {
    let (vac, vac_o) = fock(&[("", 1.0)]);
    let (e1, e1_o) = fock(&[("1", 1.0)]);
    let mu = vector_functional(&vac, &vac, 2, 4).unwrap();
    assert!(mu.max_diff(&PositiveNCMeasure::lebesgue(2, 4).to_complex()).unwrap() == 0.0);

    let mu = vector_functional(&vac, &e1, 2, 4).unwrap();
    assert_eq!(mu.bwd(&w("1")).unwrap(), ONE);
    for a in enumerate_words(2, 4) {
        assert_eq!(mu.fwd(&a).unwrap(), vector_entry(&vac_o, &e1_o, &[], &to_u8(&a)));
        assert_eq!(mu.bwd(&a).unwrap(), vector_entry(&vac_o, &e1_o, &to_u8(&a), &[]));
    }

    let s = 1.0 / 2f64.sqrt();
    let (h, h_o) = fock(&[("", s), ("1", s)]);
    let mu = vector_functional(&h, &h, 2, 4).unwrap();
    assert!((mu.fwd(&w("1")).unwrap() - real(0.5)).norm() <= 1e-15);
    for a in enumerate_words(2, 4) {
        assert!((mu.fwd(&a).unwrap() - vector_entry(&h_o, &h_o, &[], &to_u8(&a))).norm() <= 1e-15);
    }
    assert_eq!(prepend(&[2], &h_o).len(), 2);
}

#[test]
fn gns_and_toeplitz() {
    let m = PositiveNCMeasure::lebesgue(2, 4);
    let gm = build_gns(&m, 2, RANK_TOL).unwrap();
    assert_eq!(gm.rank(), 7);
    let words = enumerate_words(2, 2);
    for k in 1..=2u8 {
        let s = gm.shift_in_word_basis(k);
        let creation = nclab::fock::truncated_creation(2, 2, k);
        for (i, _) in words.iter().enumerate() {
            for (j, _) in words.iter().enumerate() {
                if words[j].len() < 2 {
                    assert!((s[(i, j)] - real(creation[(i, j)])).norm() <= 1e-12);
                }
            }
        }
    }
    assert_eq!(build_gns(&PositiveNCMeasure::dirac_xi(4), 2, RANK_TOL).unwrap().rank(), 4);

    assert!(toeplitz_defect(&CMatrix::identity(gm.rank(), gm.rank()), &gm) <= 1e-12);
    let x = gm.class(&Word::empty()).unwrap();
    let proj = &x * x.adjoint() / real(x.norm_squared());
    assert!((toeplitz_defect(&proj, &gm) - 1.0).abs() <= 1e-12);

    let xi = PositiveNCMeasure::dirac_xi(6);
    let lambda = xi.add(&PositiveNCMeasure::lebesgue(2, 6)).unwrap();
    let (_, gl, e) = co_embedding(&xi, &lambda, 3, RANK_TOL).unwrap();
    assert!(toeplitz_defect(&e.derivative(), &gl) <= 1e-8);
}

#[test]
fn gns_formula_examples() {
    let m = PositiveNCMeasure::lebesgue(2, 6);
    let zero = m.scale(0.0);
    let f = gns_formula([&m, &zero, &zero, &zero], 3, RANK_TOL).unwrap();
    let n = f.t.nrows();
    assert!(linalg::max_abs_diff(&f.t, &CMatrix::identity(n, n)) <= 1e-12);
    assert!(f.max_error(&m, 3).unwrap() <= 1e-12);

    let f = gns_formula([&m.scale(2.0), &m, &zero, &zero], 3, RANK_TOL).unwrap();
    let id = CMatrix::identity(n, n);
    assert!(linalg::max_abs_diff(&f.derivatives[0], &(&id * real(2.0 / 3.0))) <= 1e-12);
    assert!(linalg::max_abs_diff(&f.derivatives[1], &(&id * real(1.0 / 3.0))) <= 1e-12);
    assert!(linalg::max_abs_diff(&f.t, &f.t.adjoint()) <= 1e-12);
    assert!(f.max_error(&m, 3).unwrap() <= 1e-12);
}

#[test]
fn herglotz_and_cayley() {
    let h = herglotz_series(&PositiveNCMeasure::lebesgue(2, 6), 6).unwrap();
    assert!(h.max_abs_diff(&FreeSeries::one(2, 6)).unwrap() == 0.0);
    assert!(cayley(&FreeSeries::one(2, 6)).unwrap().max_abs_diff(&FreeSeries::zero(2, 6)).unwrap() == 0.0);

    let s = 1.0 / 2f64.sqrt();
    let cap = 6;
    let b = FreeSeries::from_terms(2, cap, [(w("1"), real(s)), (w("2"), real(s))]).unwrap();
    let h = inverse_cayley(&b).unwrap();
    for a in enumerate_words(2, cap) {
        let expected = if a.is_empty() { 1.0 } else { 2.0 * s.powi(a.len() as i32) };
        assert!((h.coeff(&a) - real(expected)).norm() <= 1e-12, "{a}");
    }
    // 1 + 2 Σ t^k = (1 + t)/(1 - t) with t = (Z1 + Z2)/√2
    let z = random_strict_point(2, 2, 0.3, 11).unwrap();
    let t = (&z.z[0] + &z.z[1]) * real(s);
    let id = CMatrix::identity(2, 2);
    let exact = (&id + &t) * (&id - &t).try_inverse().unwrap();
    assert!(linalg::max_abs_diff(&series_eval(&h, &z, 1.0).unwrap().value, &exact) <= 1e-4);
}

#[test]
fn clark_measures() {
    let s = 1.0 / 2f64.sqrt();
    let b = FreeSeries::from_terms(2, 8, [(w("1"), real(s)), (w("2"), real(s))]).unwrap();
    let mu = clark_measure(&b, 4).unwrap();
    for a in enumerate_words(2, 8) {
        assert!((mu.moment(&a).unwrap() - real(s.powi(a.len() as i32))).norm() <= 1e-12, "{a}");
    }
    assert!(is_positive(&mu, 4, PSD_TOL).unwrap().positive);
    let g = build_gns(&mu, 4, RANK_TOL).unwrap();
    assert!(cuntz_defect(&g).unwrap() <= 1e-9);

    let xi = clark_measure(&FreeSeries::variable(2, 6, 1), 3).unwrap();
    for a in all_words(2, 6) {
        assert_eq!(xi.moment(&Word::new(a.clone())).unwrap(), real(xi_moment(&a)));
    }
}

#[test]
fn series_evaluation() {
    let h = herglotz_series(&PositiveNCMeasure::dirac_xi(16), 16).unwrap();
    let v = series_eval(&h, &MatrixPoint::scalar(&[real(0.5), ZERO]), 1e-4).unwrap();
    let err = (v.value[(0, 0)] - real(3.0)).norm();
    assert!(err <= v.tail_bound && v.within_tolerance, "error {err}, bound {}", v.tail_bound);

    let z = random_strict_point(2, 3, 0.7, 5).unwrap();
    let one = series_eval(&FreeSeries::one(2, 4), &z, 1e-12).unwrap();
    assert_eq!(one.value, CMatrix::identity(3, 3));

    let inv = FreeSeries::one(2, 4).sub(&FreeSeries::variable(2, 4, 1)).unwrap().inverse().unwrap();
    let mut z1 = CMatrix::zeros(2, 2);
    z1[(0, 1)] = real(0.5);
    let point = MatrixPoint::new(vec![z1.clone(), CMatrix::zeros(2, 2)]).unwrap();
    let value = series_eval(&inv, &point, 1.0).unwrap().value;
    assert_eq!(value, CMatrix::identity(2, 2) + z1);
}

#[test]
fn random_points() {
    let p = random_strict_point(2, 1, 0.5, 9).unwrap();
    let sq: f64 = p.z.iter().map(|m| m[(0, 0)].norm_sqr()).sum();
    assert!((sq - 0.25).abs() <= 1e-12);
    let q = random_strict_point(2, 3, 0.8, 7).unwrap();
    assert!((q.row_norm() - 0.8).abs() <= 1e-12);
    assert_eq!(q, random_strict_point(2, 3, 0.8, 7).unwrap());
}

#[test]
fn compressions() {
    let xi = PositiveNCMeasure::dirac_xi(8);
    let same = compress(&xi, &FockVector::vacuum(), 8).unwrap();
    assert_eq!(same.to_complex().max_diff(&xi.to_complex()).unwrap(), 0.0);
    let big_xi = compress(&xi, &FockVector::basis(w("2")), 6).unwrap();
    assert_eq!(big_xi.to_complex().max_diff(&PositiveNCMeasure::lebesgue(2, 6).to_complex()).unwrap(), 0.0);
    let by_one = compress(&xi, &FockVector::basis(w("1")), 6).unwrap();
    for a in all_words(2, 6) {
        let mut a1 = a.clone();
        a1.push(1);
        assert_eq!(by_one.moment(&Word::new(a.clone())).unwrap(), real(xi_entry(&[1], &a1)));
    }
}

#[test]
fn total_variations() {
    let m = PositiveNCMeasure::lebesgue(2, 4);
    let zero = m.scale(0.0);
    let q = WittstockQuad::new([m.clone(), zero.clone(), zero.clone(), zero.clone()], m.to_complex()).unwrap();
    assert_eq!(total_variation(&q).unwrap().to_complex().max_diff(&m.to_complex()).unwrap(), 0.0);

    let q = wittstock_from_vectors(&FockVector::vacuum(), &FockVector::vacuum(), 2, 4).unwrap();
    let expected = [m.clone(), zero, m.scale(0.5), m.scale(0.5)];
    for (p, e) in q.parts().iter().zip(&expected) {
        assert!(p.to_complex().max_diff(&e.to_complex()).unwrap() <= 1e-15);
    }
    assert!(total_variation(&q).unwrap().to_complex().max_diff(&m.scale(2.0).to_complex()).unwrap() <= 1e-15);

    // Σ_ω ¼ ξ((I + ωL_2)* x (I + ωL_2)) = ξ(x) + ξ(L_2* x L_2)
    let xi = PositiveNCMeasure::dirac_xi(8);
    let tv = total_variation(&shift_wittstock(&xi, 2).unwrap()).unwrap();
    for a in all_words(2, tv.max_len()) {
        let mut a2 = a.clone();
        a2.push(2);
        let expected = xi_entry(&[], &a) + xi_entry(&[2], &a2);
        assert!((tv.moment(&Word::new(a.clone())).unwrap() - real(expected)).norm() <= 1e-14, "{a:?}");
    }

    let f = FockVector::random(2, 2, 8);
    let q = wittstock_from_vectors(&f, &f, 2, 4).unwrap();
    assert!(q.target().im().max_diff(&ComplexNCMeasure::zero(2, 4)).unwrap() <= 1e-14);
    assert!(q.parts()[2].to_complex().max_diff(&q.parts()[3].to_complex()).unwrap() <= 1e-14);
}

#[test]
fn analyticity() {
    assert!(is_analytic(&PositiveNCMeasure::lebesgue(2, 6), 1e-12).unwrap());
    let xi = PositiveNCMeasure::dirac_xi(6);
    assert!(!is_analytic(&xi, 1e-12).unwrap());
    let gamma = back_shift(&xi, 2).unwrap().star();
    assert!(is_analytic(&gamma, 1e-12).unwrap());
    assert_eq!(gamma.unit(), ZERO);
    assert!(gamma.max_diff(&ComplexNCMeasure::zero(2, 5)).unwrap() >= 1.0);
}

#[test]
fn lebesgue_parts() {
    let m = PositiveNCMeasure::lebesgue(2, 6);
    let target = m.scale(3.0).to_complex();
    let q = WittstockQuad::new([m.scale(4.0), m.clone(), m.scale(0.5), m.scale(0.5)], target.clone()).unwrap();
    let parts = lebesgue_parts_on_example(&q).unwrap();
    assert!(parts.ac.max_diff(&target).unwrap() <= 1e-14);
    assert!(parts.singular.max_diff(&ComplexNCMeasure::zero(2, 6)).unwrap() == 0.0);

    let xi = PositiveNCMeasure::dirac_xi(10);
    let comps: Vec<PositiveNCMeasure> =
        ["2", "12", "21", "22"].iter().map(|s| compress(&xi, &FockVector::basis(w(s)), 6).unwrap()).collect();
    for comp in &comps {
        assert_eq!(PartTag::infer(comp), PartTag::AbsolutelyContinuous);
    }
    let target = comps[0].to_complex().sub(&comps[1].to_complex()).unwrap();
    let target = target.combine(ONE, &comps[2].to_complex().sub(&comps[3].to_complex()).unwrap(), c(0.0, 1.0)).unwrap();
    let q = WittstockQuad::new(comps.try_into().unwrap(), target.clone()).unwrap();
    assert!(lebesgue_parts_on_example(&q).unwrap().ac.max_diff(&target).unwrap() <= 1e-14);

    let xi6 = xi.truncate(6);
    assert_eq!(PartTag::infer(&xi6), PartTag::Unknown);
    let zero = m.scale(0.0);
    let mixed = m.to_complex().sub(&xi6.to_complex()).unwrap();
    let q = WittstockQuad::new([m.clone(), xi6.clone(), zero.clone(), zero], mixed).unwrap().with_tags([
        PartTag::AbsolutelyContinuous,
        PartTag::Singular,
        PartTag::AbsolutelyContinuous,
        PartTag::AbsolutelyContinuous,
    ]);
    let parts = lebesgue_parts_on_example(&q).unwrap();
    assert!(parts.ac.max_diff(&m.to_complex()).unwrap() == 0.0);
    assert!(parts.singular.max_diff(&xi6.to_complex().scale(real(-1.0))).unwrap() == 0.0);
}

#[test]
fn classification_examples() {
    let m = PositiveNCMeasure::lebesgue(2, 8);
    let gm = build_gns(&m, 4, RANK_TOL).unwrap();
    assert!((cuntz_defect(&gm).unwrap() - 1.0).abs() <= 1e-12);
    assert!(wandering_check(&gm, &gm.class(&Word::empty()).unwrap(), 3).unwrap().raw <= 1e-15);

    let xi = PositiveNCMeasure::dirac_xi(8);
    let gx = build_gns(&xi, 4, RANK_TOL).unwrap();
    assert!(cuntz_defect(&gx).unwrap() <= 1e-9);
    assert!(wandering_check(&gx, &gx.class(&w("2")).unwrap(), 3).unwrap().raw <= 1e-10);
    assert!(wandering_check(&gx, &gx.class(&Word::empty()).unwrap(), 3).unwrap().raw >= 1.0 - 1e-12);

    let fit = ac_fit(&m, 3).unwrap();
    assert!(fit.residual <= 1e-10);
    let big_xi = compress(&xi, &FockVector::basis(w("2")), 6).unwrap();
    assert!(ac_fit(&big_xi, 3).unwrap().residual <= 1e-10);
    let singular = ac_fit(&PositiveNCMeasure::dirac_xi(6), 3).unwrap();
    assert!(singular.residual > 1e-3, "ξ fit residual {}", singular.residual);

    let two = polynomial_cauchy_check(&xi, &w("2"), 4).unwrap();
    assert_eq!((two.nonzero, two.max_degree), (1, Some(0)));
    let twelve = polynomial_cauchy_check(&xi, &w("12"), 4).unwrap();
    assert!(twelve.max_degree.unwrap() <= 2 && twelve.finite_cutoff);
    let one = polynomial_cauchy_check(&xi, &w("1"), 4).unwrap();
    assert_eq!((one.nonzero, one.max_degree, one.finite_cutoff), (5, Some(4), false));
}
