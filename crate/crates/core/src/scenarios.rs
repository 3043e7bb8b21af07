//! Named end-to-end runs producing deterministic JSON reports.
//!
//! Every check records a nonnegative deviation and passes when it is at most
//! its tolerance, so the report is uniform to consume.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classify::{polynomial_cauchy_check, type_report, wandering_check, TypeReport};
use crate::decomposition::{
    back_shift, is_analytic, lebesgue_parts_on_example, shift_wittstock, total_variation, wittstock_from_vectors,
    WittstockQuad, ANALYTIC_TOL,
};
use crate::error::{Error, Result};
use crate::fock::{AnalyticPoly, FockVector};
use crate::gns::{build_gns, co_embedding, gns_formula, positivity_transfer_check, toeplitz_defect, GnsReport};
use crate::io::CoeffEntry;
use crate::linalg::{self, real, CMatrix, ONE, ZERO};
use crate::measures::{is_positive, leq, NcFunctional, PositiveNCMeasure, PSD_TOL};
use crate::transforms::{
    cayley, clark_measure, compress, herglotz_series, inverse_cayley, random_strict_point, series_eval, FreeSeries,
};
use crate::words::{enumerate_words, Letter, Word};

pub const SCENARIOS: [&str; 5] = ["xi-example", "clark-roundtrip", "fm-riesz-witness", "order-checks", "wittstock"];

/// Inputs shared by all scenarios. `depth` is the GNS truncation `N`;
/// moment tables are built to length `2N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioParams {
    pub dim: usize,
    pub depth: usize,
    pub cap: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for ScenarioParams {
    fn default() -> Self {
        Self { dim: 2, depth: 4, cap: 8, tol: 1e-9, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Self { name: name.into(), value, tolerance, pass: value.is_finite() && value <= tolerance }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioReport {
    pub scenario: String,
    pub inputs: ScenarioParams,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub data: BTreeMap<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<TypeReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_s: Option<f64>,
}

impl ScenarioReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Default)]
struct Builder {
    checks: Vec<Check>,
    data: BTreeMap<String, Value>,
    diagnostics: Option<TypeReport>,
}

impl Builder {
    fn check(&mut self, name: impl Into<String>, value: f64, tolerance: f64) {
        let c = Check::new(name, value, tolerance);
        log::debug!("{}: {:e} (tol {:e}) {}", c.name, c.value, c.tolerance, if c.pass { "ok" } else { "FAIL" });
        self.checks.push(c);
    }

    fn data(&mut self, key: &str, value: Value) {
        self.data.insert(key.to_string(), value);
    }

    fn finish(self, name: &str, params: &ScenarioParams) -> ScenarioReport {
        let pass = self.checks.iter().all(|c| c.pass);
        ScenarioReport {
            scenario: name.to_string(),
            inputs: params.clone(),
            checks: self.checks,
            pass,
            data: self.data,
            diagnostics: self.diagnostics,
            wall_time_s: None,
        }
    }
}

pub fn run_scenario(name: &str, params: &ScenarioParams) -> Result<ScenarioReport> {
    if params.depth < 2 {
        return Err(Error::InvalidArgument("scenarios need depth N >= 2".into()));
    }
    if params.dim == 0 {
        return Err(Error::InvalidArgument("alphabet size must be at least 1".into()));
    }
    let mut b = Builder::default();
    match name {
        "xi-example" => xi_example(&mut b, params)?,
        "clark-roundtrip" => clark_roundtrip(&mut b, params)?,
        "fm-riesz-witness" => {
            require_two_letters(params)?;
            fm_riesz_witness(&mut b, &PositiveNCMeasure::dirac_xi(2 * params.depth))?
        }
        "order-checks" => order_checks(&mut b, params)?,
        "wittstock" => wittstock(&mut b, params)?,
        other => return Err(Error::UnknownScenario(other.to_string())),
    }
    Ok(b.finish(name, params))
}

fn require_two_letters(params: &ScenarioParams) -> Result<()> {
    if params.dim != 2 {
        return Err(Error::InvalidArgument("the ξ scenarios are defined for d = 2".into()));
    }
    Ok(())
}

fn moment_gap(a: &PositiveNCMeasure, b: &PositiveNCMeasure) -> Result<f64> {
    a.to_complex().max_diff(&b.to_complex())
}

fn coeff_list(s: &FreeSeries) -> Value {
    let entries: Vec<CoeffEntry> =
        s.nonzero_terms(1e-12).into_iter().map(|(word, v)| CoeffEntry { word, re: v.re + 0.0, im: v.im + 0.0 }).collect();
    json!(entries)
}

fn xi_example(b: &mut Builder, p: &ScenarioParams) -> Result<()> {
    require_two_letters(p)?;
    let n = p.depth;
    let xi = PositiveNCMeasure::dirac_xi((2 * n).max(p.cap).max(5));

    let h = herglotz_series(&xi, p.cap)?;
    let mut worst: f64 = 0.0;
    for w in enumerate_words(2, p.cap) {
        let expected = if w.is_empty() {
            ONE
        } else if w.contains(2) {
            ZERO
        } else {
            real(2.0)
        };
        worst = worst.max((h.coeff(&w) - expected).norm());
    }
    b.check("herglotz_coefficients", worst, 0.0);

    let bx = cayley(&h)?;
    b.check("cayley_equals_z1", bx.max_abs_diff(&FreeSeries::variable(2, p.cap, 1))?, 1e-12);
    b.data("b_coefficients", coeff_list(&bx));

    let clark_depth = p.cap / 2;
    if clark_depth >= 1 {
        let clark = clark_measure(&bx, clark_depth)?;
        b.check("clark_reproduces_xi", moment_gap(&clark, &xi)?, 1e-10);
    }

    let g2 = build_gns(&xi, 2, PSD_TOL.max(p.tol))?;
    b.check("gns_rank_at_depth_2", (g2.rank() as f64 - 4.0).abs(), 0.0);
    let g = build_gns(&xi, n, p.tol)?;
    b.check("moment_reproduction", g.moment_reproduction_error(&xi)?, 1e-10);
    b.check("shift_isometry_defect", g.isometry_defect(), 1e-8);
    let wander = wandering_check(&g, &g.class(&Word::letter(2))?, n - 1)?;
    b.check("class_2_is_wandering", wander.normalized, 1e-10);
    let vac = wandering_check(&g, &g.class(&Word::empty())?, n - 1)?;
    b.check("vacuum_class_not_wandering", (1.0 - vac.normalized).max(0.0), 1e-12);

    let big = compress(&xi, &AnalyticPoly::basis(Word::letter(2)), xi.max_len() - 2)?;
    b.check("compression_by_l2_is_lebesgue", moment_gap(&big, &PositiveNCMeasure::lebesgue(2, big.max_len()))?, 0.0);

    fm_riesz_witness(b, &xi)?;

    let cauchy_n = 5.min(xi.max_len());
    let finite = polynomial_cauchy_check(&xi, &Word::parse("12")?, cauchy_n)?;
    b.check("cauchy_12_finite", if finite.finite_cutoff { 0.0 } else { 1.0 }, 0.0);
    let infinite = polynomial_cauchy_check(&xi, &Word::letter(1), cauchy_n)?;
    b.check("cauchy_1_not_finite", if infinite.finite_cutoff { 1.0 } else { 0.0 }, 0.0);
    b.data("cauchy_checks", json!({ "12": finite, "1": infinite }));

    let report = type_report(&xi, n, p.tol)?;
    b.check("cuntz_defect", report.cuntz_defect, 1e-9);
    b.diagnostics = Some(report);
    Ok(())
}

fn fm_riesz_witness(b: &mut Builder, xi: &PositiveNCMeasure) -> Result<()> {
    let gamma = back_shift(xi, 2)?.star();
    let nonunit = enumerate_words(2, gamma.max_len())
        .iter()
        .skip(1)
        .map(|w| gamma.fwd(w).map(|v| v.norm()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    b.check("gamma_analytic", nonunit, ANALYTIC_TOL);
    if !is_analytic(&gamma, ANALYTIC_TOL)? {
        b.check("gamma_is_analytic_flag", 1.0, 0.0);
    }
    b.check("gamma_unit_vanishes", gamma.unit().norm(), 0.0);
    let mut worst: f64 = 0.0;
    for k in 0..gamma.max_len() {
        let w = Word::letter(2).concat(&Word::power(1, k));
        worst = worst.max((gamma.bwd(&w)? - ONE).norm());
    }
    b.check("gamma_bwd_21k_is_one", worst, 0.0);
    b.data("gamma_bwd_21", json!(gamma.bwd(&Word::parse("21")?)?.re));
    Ok(())
}

fn schur_candidates(d: usize, cap: usize) -> Vec<(&'static str, FreeSeries)> {
    let mut sum = FreeSeries::zero(d, cap);
    for k in 1..=d {
        sum = sum.add(&FreeSeries::variable(d, cap, k as Letter)).expect("same alphabet");
    }
    vec![
        ("zero", FreeSeries::zero(d, cap)),
        ("z1", FreeSeries::variable(d, cap, 1)),
        ("row_sum", sum.scale(real(1.0 / (d as f64).sqrt()))),
    ]
}

fn herglotz_slack(h: &FreeSeries, seed: u64, b: &mut Builder, label: &str) -> Result<()> {
    let mut worst: f64 = 0.0;
    for n in 1..=3 {
        for i in 0..20 {
            let z = random_strict_point(h.dim(), n, 0.8, seed.wrapping_mul(1000).wrapping_add(100 * n as u64 + i))?;
            let v = series_eval(h, &z, f64::INFINITY)?;
            let re = linalg::hermitian_part(&v.value);
            let slack = linalg::min_eigenvalue(&re) + v.tail_bound;
            worst = worst.max(-slack);
        }
    }
    b.check(format!("{label}_herglotz_real_part_psd"), worst.max(0.0), 1e-8);
    Ok(())
}

fn clark_roundtrip(b: &mut Builder, p: &ScenarioParams) -> Result<()> {
    let depth = p.cap / 2;
    if depth == 0 {
        return Err(Error::InvalidArgument("clark-roundtrip needs cap >= 2".into()));
    }
    for (label, schur) in schur_candidates(p.dim, p.cap) {
        let mu = clark_measure(&schur, depth)?;
        let h = herglotz_series(&mu, p.cap)?;
        let back = cayley(&h)?;
        b.check(format!("{label}_cayley_recovers_b"), back.max_abs_diff(&schur)?, 1e-10);
        b.check(format!("{label}_inverse_cayley_roundtrip"), inverse_cayley(&back)?.max_abs_diff(&h)?, 1e-10);
        b.check(format!("{label}_clark_roundtrip"), moment_gap(&clark_measure(&back, depth)?, &mu)?, 1e-10);
        let check = is_positive(&mu, depth, PSD_TOL)?;
        b.check(format!("{label}_clark_gram_psd"), (-check.min_eig).max(0.0), PSD_TOL * check.norm.max(1.0));
        herglotz_slack(&h, p.seed, b, label)?;
        let mut contractive: f64 = 0.0;
        for i in 0..20 {
            let z = random_strict_point(p.dim, 2, 0.8, p.seed.wrapping_mul(1000).wrapping_add(900 + i))?;
            let v = series_eval(&schur, &z, f64::INFINITY)?;
            contractive = contractive.max(linalg::spectral_norm(&v.value) - 1.0 - v.tail_bound);
        }
        b.check(format!("{label}_schur_contractive"), contractive.max(0.0), 1e-12);
        if label == "zero" {
            b.check("zero_recovers_lebesgue", moment_gap(&mu, &PositiveNCMeasure::lebesgue(p.dim, 2 * depth))?, 0.0);
        }
        if label == "row_sum" {
            b.data("row_sum_clark_unit", json!(mu.unit().re));
            b.diagnostics = Some(type_report(&mu, depth.min(p.depth), p.tol)?);
        }
    }
    Ok(())
}

fn order_pair(
    b: &mut Builder,
    label: &str,
    mu: &PositiveNCMeasure,
    lambda: &PositiveNCMeasure,
    depth: usize,
    tol: f64,
) -> Result<Value> {
    let (_, gl, e) = co_embedding(mu, lambda, depth, tol)?;
    let d = e.derivative();
    let eig = linalg::eigenvalues(&d);
    let lo = eig.first().copied().unwrap_or(0.0);
    let hi = eig.last().copied().unwrap_or(0.0);
    b.check(format!("{label}_embedding_contractive"), (e.norm() - 1.0).max(0.0), 1e-9);
    b.check(format!("{label}_derivative_between_0_and_i"), (-lo).max(hi - 1.0).max(0.0), 1e-9);
    b.check(format!("{label}_toeplitz_defect"), toeplitz_defect(&d, &gl), 1e-8);
    let nu = mu.add(lambda)?.scale(0.5);
    let (_, _, e_mu_nu) = co_embedding(mu, &nu, depth, tol)?;
    let (_, _, e_nu_lambda) = co_embedding(&nu, lambda, depth, tol)?;
    let composed = e_mu_nu.compose(&e_nu_lambda);
    b.check(format!("{label}_composition"), linalg::max_abs_diff(&composed.matrix, &e.matrix), 1e-9);
    let polys = [
        ("1", AnalyticPoly::vacuum()),
        ("L1", AnalyticPoly::basis(Word::letter(1))),
        ("L1+L2", AnalyticPoly::from_terms([(Word::letter(1), ONE), (Word::letter(2), ONE)])),
        ("L1L2", AnalyticPoly::basis(Word::parse("12")?)),
    ];
    for (name, poly) in polys {
        let slack = positivity_transfer_check(mu, lambda, &poly, depth, tol)?;
        b.check(format!("{label}_positivity_transfer_{name}"), (-slack).max(0.0), 1e-8);
    }
    Ok(json!(GnsReport::for_pair(&gl, &e)))
}

fn order_checks(b: &mut Builder, p: &ScenarioParams) -> Result<()> {
    require_two_letters(p)?;
    let n = p.depth;
    let xi = PositiveNCMeasure::dirac_xi(2 * n + 2);
    let m = PositiveNCMeasure::lebesgue(2, 2 * n);
    let quad = shift_wittstock(&xi, 2)?;
    let tv = total_variation(&quad)?;
    let pairs = [
        ("xi_vs_xi_plus_m", xi.truncate(2 * n), xi.truncate(2 * n).add(&m)?),
        ("m_vs_2m", m.clone(), m.scale(2.0)),
        ("phi1_vs_total_variation", quad.parts()[0].clone(), tv),
    ];
    let mut reports = BTreeMap::new();
    for (label, mu, lambda) in pairs {
        reports.insert(label.to_string(), order_pair(b, label, &mu, &lambda, n, p.tol)?);
    }
    b.data("pairs", json!(reports));
    Ok(())
}

fn check_quad(b: &mut Builder, label: &str, q: &WittstockQuad, depth: usize) -> Result<f64> {
    b.check(format!("{label}_reconstruction"), q.reconstruction_residual()?, 1e-10);
    let mut worst: f64 = 0.0;
    for part in q.parts() {
        let check = is_positive(part, depth, PSD_TOL)?;
        worst = worst.max((-check.min_eig).max(0.0) / check.norm.max(1.0));
    }
    b.check(format!("{label}_components_psd"), worst, PSD_TOL);
    let parts = q.parts();
    let formula = gns_formula([&parts[0], &parts[1], &parts[2], &parts[3]], depth, PSD_TOL)?;
    let err = formula.max_error(q.target(), 2 * (depth - 1))?;
    b.check(format!("{label}_gns_formula"), err, 1e-9);
    Ok(err)
}

fn wittstock(b: &mut Builder, p: &ScenarioParams) -> Result<()> {
    let mut worst_vector: f64 = 0.0;
    let mut vector_checks = Builder::default();
    for s in 0..20u64 {
        let f = FockVector::random(p.dim, 1, p.seed.wrapping_mul(1000).wrapping_add(2 * s));
        let g = FockVector::random(p.dim, 1, p.seed.wrapping_mul(1000).wrapping_add(2 * s + 1));
        let q = wittstock_from_vectors(&f, &g, p.dim, 4)?;
        worst_vector = worst_vector.max(check_quad(&mut vector_checks, "vector", &q, 2)?);
    }
    for name in ["vector_reconstruction", "vector_components_psd", "vector_gns_formula"] {
        let (value, tolerance) = vector_checks
            .checks
            .iter()
            .filter(|c| c.name == name)
            .fold((0.0f64, 0.0f64), |(v, _), c| (v.max(c.value), c.tolerance));
        b.check(format!("{name}_20_seeds"), value, tolerance);
    }
    b.data("vector_gns_formula_max_error", json!(worst_vector));

    let vac = FockVector::vacuum();
    let q = wittstock_from_vectors(&vac, &vac, p.dim, 4)?;
    let parts = lebesgue_parts_on_example(&q)?;
    b.check("vacuum_quad_is_ac", parts.ac.max_diff(q.target())?, 0.0);

    let shift_len = 2 * p.depth;
    let mut sources = vec![("m_1", PositiveNCMeasure::lebesgue(p.dim, shift_len), 1 as Letter)];
    if p.dim == 2 {
        sources.push(("xi_2", PositiveNCMeasure::dirac_xi(shift_len), 2));
    }
    for (label, mu, k) in sources {
        let q = shift_wittstock(&mu, k)?;
        let depth = q.target().max_len() / 2;
        check_quad(b, label, &q, depth)?;
        let tv = total_variation(&q)?;
        let mut worst: f64 = 0.0;
        for part in q.parts() {
            let order = leq(part, &tv, depth, PSD_TOL)?;
            worst = worst.max((-order.min_eig).max(0.0) / order.norm.max(1.0));
        }
        b.check(format!("{label}_components_dominated"), worst, PSD_TOL);
    }
    Ok(())
}

/// Flattened row-major `[re, im]` pairs.
pub fn flatten_matrix(m: &CMatrix) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(m.len());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out.push([m[(i, j)].re, m[(i, j)].im]);
        }
    }
    out
}
