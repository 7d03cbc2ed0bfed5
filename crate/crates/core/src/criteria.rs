//! Spectral criteria over a complex: the shifted-gap condition per link, the
//! two-dimensional edge and triangle conditions, the general root criterion,
//! and the minimal-thickness scanner for rank-3 diagrams.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::complex::{Simplex, SimplicialComplex};
use crate::pkl::{self, PklError, RootReport};
use crate::polygon::{self, PolygonParams, ADMISSIBLE_GONALITIES};
use crate::spectral::{self, SpectralError};

/// Strict inequalities must clear this margin to count as satisfied.
pub const STRICT_MARGIN: f64 = 1e-9;

/// Cross-method sanity guard. Simple roots agree to ~1e−14, but the
/// determinant route degrades to sqrt(machine eps) at multiple roots, so the
/// guard sits well above that while still catching structural mistakes.
const METHOD_AGREEMENT_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum CriteriaError {
    #[error("criterion requires a {expected}-dimensional complex, got dimension {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("need 0 < k < l <= n, got k={k}, l={l} on a complex of dimension {n}")]
    BadDims { k: usize, l: usize, n: usize },
    #[error("label {0} is not an admissible gonality (2, 3, 4, 6, 8)")]
    BadLabel(u32),
    #[error(
        "root polynomial is identically zero for anchor {anchor} (l > k+1); \
         the determinant criterion does not apply - rerun with the constrained-eigenvalue extension"
    )]
    Degenerate { anchor: Simplex },
    #[error("root methods disagree on anchor {anchor}: {det:?} vs {constrained:?}")]
    MethodDisagreement {
        anchor: Simplex,
        det: Vec<f64>,
        constrained: Vec<f64>,
    },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Pkl(#[from] PklError),
}

/// λ(X_τ) together with its shift λ̄ = λ − k(n−k)/(k+1).
#[derive(Clone, Debug, Serialize)]
pub struct LambdaBar {
    pub tau: Simplex,
    pub lambda: f64,
    pub lambda_bar: f64,
}

/// S_σ = Σ λ̄_τ over the facets τ of the k-simplex σ.
#[derive(Clone, Debug, Serialize)]
pub struct SValue {
    pub sigma: Simplex,
    pub value: f64,
}

/// Outcome for one anchor simplex.
#[derive(Clone, Debug, Serialize, serde::Deserialize)]
pub struct AnchorResult {
    pub anchor: Simplex,
    pub margins: Vec<f64>,
    pub passed: bool,
}

/// Per-anchor outcomes of one named criterion over a whole complex.
#[derive(Clone, Debug, Serialize, serde::Deserialize)]
pub struct CriterionReport {
    pub criterion: String,
    pub passed: bool,
    pub per_simplex: Vec<AnchorResult>,
    /// Uniform margin achieved (minimum over anchors) when passed.
    pub epsilon: Option<f64>,
    pub flags: Vec<String>,
}

impl CriterionReport {
    fn assemble(criterion: &str, per_simplex: Vec<AnchorResult>, achieved: Vec<f64>) -> Self {
        let passed = per_simplex.iter().all(|r| r.passed);
        let epsilon = if passed {
            achieved
                .into_iter()
                .min_by(|a, b| a.partial_cmp(b).expect("finite margins"))
        } else {
            None
        };
        CriterionReport {
            criterion: criterion.to_string(),
            passed,
            per_simplex,
            epsilon,
            flags: Vec::new(),
        }
    }
}

/// The threshold k(n−k)/(k+1) subtracted from λ in the shifted gap.
pub fn gap_threshold(n: usize, k: usize) -> f64 {
    (k * (n - k)) as f64 / (k + 1) as f64
}

/// λ̄ for every (k−1)-simplex; requires 1 ≤ k ≤ n−1 so the links are graphs
/// or larger.
pub fn lambda_bar_all(
    complex: &SimplicialComplex,
    k: usize,
) -> Result<Vec<LambdaBar>, CriteriaError> {
    let n = complex.dim();
    if k < 1 || k + 1 > n {
        return Err(CriteriaError::BadDims { k, l: k, n });
    }
    let threshold = gap_threshold(n, k);
    let mut out = Vec::new();
    for tau in complex.faces(k - 1).map_err(SpectralError::Complex)? {
        let summary = spectral::link_lambda(complex, tau)?;
        out.push(LambdaBar {
            tau: tau.clone(),
            lambda: summary.lambda_paper,
            lambda_bar: summary.lambda_paper - threshold,
        });
    }
    Ok(out)
}

/// S over every k-simplex, from the λ̄ of its facets.
pub fn s_values_all(
    complex: &SimplicialComplex,
    k: usize,
) -> Result<Vec<SValue>, CriteriaError> {
    let bars: HashMap<Simplex, f64> = lambda_bar_all(complex, k)?
        .into_iter()
        .map(|b| (b.tau, b.lambda_bar))
        .collect();
    let mut out = Vec::new();
    for sigma in complex.faces(k).map_err(SpectralError::Complex)? {
        let facets = sigma.facets();
        debug_assert_eq!(facets.len(), sigma.dim() + 1);
        let value = facets.iter().map(|f| bars[f]).sum();
        out.push(SValue {
            sigma: sigma.clone(),
            value,
        });
    }
    Ok(out)
}

/// λ(X_η) ≥ k(n−k)/(k+1) + ε for every (k−1)-simplex η.
pub fn check_bs(
    complex: &SimplicialComplex,
    k: usize,
    epsilon: f64,
) -> Result<CriterionReport, CriteriaError> {
    let bars = lambda_bar_all(complex, k)?;
    let mut per_simplex = Vec::with_capacity(bars.len());
    let mut achieved = Vec::with_capacity(bars.len());
    for bar in bars {
        let margin = bar.lambda_bar - epsilon;
        per_simplex.push(AnchorResult {
            anchor: bar.tau,
            margins: vec![margin],
            passed: margin >= 0.0,
        });
        achieved.push(bar.lambda_bar);
    }
    Ok(CriterionReport::assemble("bs", per_simplex, achieved))
}

/// λ(X_u) + λ(X_v) > 1 for every edge (u, v) of a 2-complex.
pub fn check_zuk_2d(complex: &SimplicialComplex) -> Result<CriterionReport, CriteriaError> {
    let lambda = vertex_lambdas(complex)?;
    let mut per_simplex = Vec::new();
    let mut achieved = Vec::new();
    for edge in complex.faces(1).map_err(SpectralError::Complex)? {
        let vs = edge.vertices();
        let margin = lambda[&vs[0]] + lambda[&vs[1]] - 1.0;
        per_simplex.push(AnchorResult {
            anchor: edge.clone(),
            margins: vec![margin],
            passed: margin > STRICT_MARGIN,
        });
        achieved.push(margin);
    }
    Ok(CriterionReport::assemble("zuk", per_simplex, achieved))
}

/// Both triangle conditions of the two-dimensional averaging criterion:
/// λ(X_u)+λ(X_v)+λ(X_w) > 3/2 and the S-product sum positive.
pub fn check_theorem1_2d(complex: &SimplicialComplex) -> Result<CriterionReport, CriteriaError> {
    let lambda = vertex_lambdas(complex)?;
    let mut per_simplex = Vec::new();
    let mut achieved = Vec::new();
    for triangle in complex.faces(2).map_err(SpectralError::Complex)? {
        let vs = triangle.vertices();
        let bars = [
            lambda[&vs[0]] - 0.5,
            lambda[&vs[1]] - 0.5,
            lambda[&vs[2]] - 0.5,
        ];
        let (sum_margin, product_margin) = thm1_margins(bars);
        let passed = sum_margin > STRICT_MARGIN && product_margin > STRICT_MARGIN;
        per_simplex.push(AnchorResult {
            anchor: triangle.clone(),
            margins: vec![sum_margin, product_margin],
            passed,
        });
        achieved.push(sum_margin.min(product_margin));
    }
    Ok(CriterionReport::assemble("thm1", per_simplex, achieved))
}

/// Root criterion: all roots of the anchored system at least ε, for every
/// l-simplex. For l = k+1 both root methods run and must agree; for l > k+1
/// the determinant is identically zero and the constrained-eigenvalue
/// extension must be requested explicitly.
pub fn check_general(
    complex: &SimplicialComplex,
    k: usize,
    l: usize,
    epsilon: f64,
    use_constrained: bool,
) -> Result<CriterionReport, CriteriaError> {
    let n = complex.dim();
    if k < 1 || k >= l || l > n {
        return Err(CriteriaError::BadDims { k, l, n });
    }
    let s_map: HashMap<Simplex, f64> = s_values_all(complex, k)?
        .into_iter()
        .map(|s| (s.sigma, s.value))
        .collect();

    let mut per_simplex = Vec::new();
    let mut achieved = Vec::new();
    let mut extension_used = false;
    for gamma in complex.faces(l).map_err(SpectralError::Complex)? {
        let report = anchored_roots(gamma, k, l, &s_map, use_constrained)?;
        if report.1 {
            extension_used = true;
        }
        let min_root = report
            .0
            .min_root
            .expect("non-degenerate reports carry a minimum root");
        let margin = min_root - epsilon;
        per_simplex.push(AnchorResult {
            anchor: gamma.clone(),
            margins: vec![margin],
            passed: margin >= 0.0,
        });
        achieved.push(min_root);
    }
    let mut report = CriterionReport::assemble("general", per_simplex, achieved);
    if extension_used {
        report.flags.push(
            "constrained-eigenvalue extension: the determinant polynomial is identically zero \
             for l > k+1; roots are the stationary values on the constraint kernel"
                .to_string(),
        );
    }
    Ok(report)
}

/// Roots for one anchor; the bool records whether the constrained extension
/// stood in for a degenerate determinant.
fn anchored_roots(
    gamma: &Simplex,
    k: usize,
    l: usize,
    s_map: &HashMap<Simplex, f64>,
    use_constrained: bool,
) -> Result<(RootReport, bool), CriteriaError> {
    let gv = gamma.vertices();
    // S on the k-faces of gamma, re-indexed to the standard l-simplex.
    let mut s = HashMap::new();
    for positions in standard_faces(l, k) {
        let face_vertices: Vec<u32> = positions.iter().map(|&i| gv[i]).collect();
        let face = Simplex::new(face_vertices).expect("vertices of a stored simplex");
        s.insert(positions, s_map[&face]);
    }
    let system = pkl::build_system(k, l, &s)?;

    if l == k + 1 {
        let det = pkl::det_roots(&system)?;
        let constrained = pkl::constrained_roots(&system)?;
        let agree = det.roots.len() == constrained.roots.len()
            && det
                .roots
                .iter()
                .zip(&constrained.roots)
                .all(|(a, b)| (a - b).abs() <= METHOD_AGREEMENT_TOL);
        if !agree {
            return Err(CriteriaError::MethodDisagreement {
                anchor: gamma.clone(),
                det: det.roots,
                constrained: constrained.roots,
            });
        }
        Ok((constrained, false))
    } else {
        let det = pkl::det_roots(&system)?;
        if !det.degenerate {
            // cannot happen: the incidence rows are dependent for l > k+1
            return Err(CriteriaError::MethodDisagreement {
                anchor: gamma.clone(),
                det: det.roots,
                constrained: Vec::new(),
            });
        }
        if !use_constrained {
            return Err(CriteriaError::Degenerate {
                anchor: gamma.clone(),
            });
        }
        Ok((pkl::constrained_roots(&system)?, true))
    }
}

fn standard_faces(l: usize, k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..=l).combinations(k + 1).collect()
}

fn vertex_lambdas(complex: &SimplicialComplex) -> Result<HashMap<u32, f64>, CriteriaError> {
    if complex.dim() != 2 {
        return Err(CriteriaError::WrongDimension {
            expected: 2,
            got: complex.dim(),
        });
    }
    let mut lambda = HashMap::new();
    for v in complex.faces(0).map_err(SpectralError::Complex)? {
        let summary = spectral::link_lambda(complex, v)?;
        lambda.insert(v.vertices()[0], summary.lambda_paper);
    }
    Ok(lambda)
}

/// Sum margin (Σλ − 3/2 = Σλ̄) and S-product-sum margin for one triangle of
/// a 2-complex, from the vertex shifted gaps.
pub fn thm1_margins(lambda_bar: [f64; 3]) -> (f64, f64) {
    let s = edge_s_values(lambda_bar);
    let sum_margin = lambda_bar.iter().sum::<f64>();
    let product_margin = s[0] * s[1] + s[0] * s[2] + s[1] * s[2];
    (sum_margin, product_margin)
}

/// S values of the three edges of a triangle: pairwise sums of the vertex λ̄.
pub fn edge_s_values(lambda_bar: [f64; 3]) -> [f64; 3] {
    [
        lambda_bar[0] + lambda_bar[1],
        lambda_bar[0] + lambda_bar[2],
        lambda_bar[1] + lambda_bar[2],
    ]
}

/// Edge margins λ_i + λ_j − 1 of one triangle.
pub fn zuk_margins(lambda: [f64; 3]) -> [f64; 3] {
    [
        lambda[0] + lambda[1] - 1.0,
        lambda[0] + lambda[2] - 1.0,
        lambda[1] + lambda[2] - 1.0,
    ]
}

/// Both root reports for the edge system of a single triangle with the given
/// vertex λ̄; the two methods must agree within 1e−8.
pub fn triangle_root_reports(
    lambda_bar: [f64; 3],
) -> Result<(RootReport, RootReport), CriteriaError> {
    let s = edge_s_values(lambda_bar);
    let mut map = HashMap::new();
    map.insert(vec![0usize, 1], s[0]);
    map.insert(vec![0, 2], s[1]);
    map.insert(vec![1, 2], s[2]);
    let system = pkl::build_system(1, 2, &map)?;
    let det = pkl::det_roots(&system)?;
    let constrained = pkl::constrained_roots(&system)?;
    let agree = det
        .roots
        .iter()
        .zip(&constrained.roots)
        .all(|(a, b)| (a - b).abs() <= METHOD_AGREEMENT_TOL);
    if !agree || det.roots.len() != constrained.roots.len() {
        return Err(CriteriaError::MethodDisagreement {
            anchor: Simplex::new(vec![0, 1, 2]).expect("triangle"),
            det: det.roots,
            constrained: constrained.roots,
        });
    }
    Ok((det, constrained))
}

/// One thickness value of the scanner.
#[derive(Clone, Debug, Serialize, serde::Deserialize)]
pub struct ScanRow {
    pub q: u32,
    /// Link gaps for the three vertex types (vertex i gets the gon of the
    /// opposite edge label).
    pub lambdas: [f64; 3],
    pub zuk_margin: f64,
    pub zuk_pass: bool,
    pub thm1_sum_margin: f64,
    pub thm1_product_margin: f64,
    pub thm1_pass: bool,
}

/// Minimal thickness per criterion for one rank-3 diagram.
#[derive(Clone, Debug, Serialize, serde::Deserialize)]
pub struct ScanReport {
    pub labels: [u32; 3],
    pub q_max: u32,
    pub rows: Vec<ScanRow>,
    pub zuk_minimal_q: Option<u32>,
    pub thm1_minimal_q: Option<u32>,
    pub disclaimer: String,
}

/// Scans q = 2..q_max for the triangle whose vertex links are generalized
/// m-gons with parameters (q, q); vertex i gets the gon labelled by the
/// opposite edge m_jk.
pub fn diagram_scan(labels: [u32; 3], q_max: u32) -> Result<ScanReport, CriteriaError> {
    for &m in &labels {
        if !ADMISSIBLE_GONALITIES.contains(&m) {
            return Err(CriteriaError::BadLabel(m));
        }
    }
    let [m12, m13, m23] = labels;
    let mut rows = Vec::new();
    let mut zuk_minimal_q = None;
    let mut thm1_minimal_q = None;
    for q in 2..=q_max {
        let lambdas = [
            polygon::feit_higman_lambda(gon(m23, q)),
            polygon::feit_higman_lambda(gon(m13, q)),
            polygon::feit_higman_lambda(gon(m12, q)),
        ];
        let zuk = zuk_margins(lambdas);
        let zuk_margin = zuk
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        let zuk_pass = zuk_margin > STRICT_MARGIN;
        let bars = [lambdas[0] - 0.5, lambdas[1] - 0.5, lambdas[2] - 0.5];
        let (sum_margin, product_margin) = thm1_margins(bars);
        let thm1_pass = sum_margin > STRICT_MARGIN && product_margin > STRICT_MARGIN;
        if zuk_pass && zuk_minimal_q.is_none() {
            zuk_minimal_q = Some(q);
        }
        if thm1_pass && thm1_minimal_q.is_none() {
            thm1_minimal_q = Some(q);
        }
        rows.push(ScanRow {
            q,
            lambdas,
            zuk_margin,
            zuk_pass,
            thm1_sum_margin: sum_margin,
            thm1_product_margin: product_margin,
            thm1_pass,
        });
    }
    Ok(ScanReport {
        labels,
        q_max,
        rows,
        zuk_minimal_q,
        thm1_minimal_q,
        disclaimer: "threshold computation only; existence of a building with these parameters \
                     (q a prime power, realizability for m = 8) is not checked"
            .to_string(),
    })
}

fn gon(m: u32, q: u32) -> PolygonParams {
    PolygonParams::new(m, q, q).expect("labels validated against the admissible set")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::octahedron;
    use crate::complex::SimplicialComplex;

    const LYONS_BARS: [f64; 3] = [0.5, 0.5 - 0.37267799624996495, 0.5 - 0.6454972243679028];

    fn lyons_bars() -> [f64; 3] {
        [
            0.5,
            0.5 - 5f64.sqrt() / 6.0,
            0.5 - 15f64.sqrt() / 6.0,
        ]
    }

    #[test]
    fn frozen_lyons_bars_match_formulas() {
        for (a, b) in LYONS_BARS.iter().zip(lyons_bars()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn octahedron_lambda_bars() {
        let bars = lambda_bar_all(&octahedron(), 1).unwrap();
        assert_eq!(bars.len(), 6);
        for bar in bars {
            assert!((bar.lambda - 1.0).abs() < 1e-12);
            assert!((bar.lambda_bar - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn s_values_on_octahedron() {
        let values = s_values_all(&octahedron(), 1).unwrap();
        assert_eq!(values.len(), 12);
        for s in values {
            assert_eq!(s.sigma.dim(), 1);
            assert!((s.value - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn bs_on_octahedron() {
        let pass = check_bs(&octahedron(), 1, 0.4).unwrap();
        assert!(pass.passed);
        assert!((pass.epsilon.unwrap() - 0.5).abs() < 1e-12);
        let fail = check_bs(&octahedron(), 1, 0.6).unwrap();
        assert!(!fail.passed);
        assert_eq!(fail.epsilon, None);
    }

    #[test]
    fn zuk_on_octahedron() {
        let report = check_zuk_2d(&octahedron()).unwrap();
        assert!(report.passed);
        assert_eq!(report.per_simplex.len(), 12);
        for r in &report.per_simplex {
            assert!((r.margins[0] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn zuk_on_single_triangle() {
        let x = SimplicialComplex::build(&[vec![0, 1, 2]]).unwrap();
        let report = check_zuk_2d(&x).unwrap();
        assert!(report.passed);
        // each vertex link is a single edge with λ = 2
        for r in &report.per_simplex {
            assert!((r.margins[0] - 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn thm1_on_octahedron() {
        let report = check_theorem1_2d(&octahedron()).unwrap();
        assert!(report.passed);
        for r in &report.per_simplex {
            assert!((r.margins[0] - 1.5).abs() < 1e-12);
            assert!((r.margins[1] - 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn thm1_margins_lyons() {
        let (sum_margin, product_margin) = thm1_margins(lyons_bars());
        assert!((sum_margin - 0.4818247793821322).abs() < 1e-12);
        assert!((product_margin - 0.2045425095711168).abs() < 1e-12);
        let zuk = zuk_margins([1.0, 1.0 - 5f64.sqrt() / 6.0, 1.0 - 15f64.sqrt() / 6.0]);
        let min = zuk.iter().copied().fold(f64::INFINITY, f64::min);
        assert!((min - (-0.018175220617867693)).abs() < 1e-12);
        assert!(min < 0.0);
    }

    #[test]
    fn thm1_boundary_fails() {
        // all λ exactly 1/2: the sum condition is not strict
        let (sum_margin, product_margin) = thm1_margins([0.0, 0.0, 0.0]);
        assert_eq!(sum_margin, 0.0);
        assert_eq!(product_margin, 0.0);
        assert!(!(sum_margin > STRICT_MARGIN));
    }

    #[test]
    fn thm1_all_quarter_passes() {
        let (sum_margin, product_margin) = thm1_margins([0.25, 0.25, 0.25]);
        assert!((sum_margin - 0.75).abs() < 1e-12);
        assert!((product_margin - 0.75).abs() < 1e-12);
    }

    #[test]
    fn general_on_octahedron() {
        let report = check_general(&octahedron(), 1, 2, 0.5, false).unwrap();
        assert!(report.passed);
        assert_eq!(report.per_simplex.len(), 8);
        for r in &report.per_simplex {
            // double root at λ = S = 1, margin vs ε = 0.5
            assert!((r.margins[0] - 0.5).abs() < 1e-9);
        }
        assert!((report.epsilon.unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn general_rejects_bad_dims() {
        assert!(matches!(
            check_general(&octahedron(), 0, 2, 0.1, false).unwrap_err(),
            CriteriaError::BadDims { .. }
        ));
        assert!(matches!(
            check_general(&octahedron(), 1, 3, 0.1, false).unwrap_err(),
            CriteriaError::BadDims { .. }
        ));
    }

    #[test]
    fn general_negative_root_fails() {
        // λ̄ = (1/2, 1/2, −1) per the worked failure: S = (1, −1/2, −1/2),
        // roots ±1/2.
        let (det, _) = triangle_root_reports([0.5, 0.5, -1.0]).unwrap();
        assert!((det.roots[0] + 0.5).abs() < 1e-9);
        assert!((det.roots[1] - 0.5).abs() < 1e-9);
        assert!(det.min_root.unwrap() < 0.0);
    }

    #[test]
    fn corollary_equivalence_on_random_triples() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let bars = [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ];
            let (det, _) = triangle_root_reports(bars).unwrap();
            let general_pass = det.min_root.unwrap() >= STRICT_MARGIN;
            let (sum_margin, product_margin) = thm1_margins(bars);
            let thm1_pass = sum_margin > STRICT_MARGIN && product_margin > STRICT_MARGIN;
            assert_eq!(general_pass, thm1_pass, "bars {bars:?}");
        }
    }

    #[test]
    fn zuk_implies_thm1() {
        use rand::prelude::*;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        for _ in 0..500 {
            let bars = [
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ];
            let lambdas = [bars[0] + 0.5, bars[1] + 0.5, bars[2] + 0.5];
            let zuk_pass = zuk_margins(lambdas)
                .iter()
                .all(|&m| m > STRICT_MARGIN);
            if zuk_pass {
                let (sum_margin, product_margin) = thm1_margins(bars);
                assert!(sum_margin > STRICT_MARGIN && product_margin > STRICT_MARGIN);
            }
        }
    }

    #[test]
    fn scan_homogeneous_labels_coincide() {
        let report = diagram_scan([3, 3, 3], 10).unwrap();
        assert_eq!(report.zuk_minimal_q, Some(2));
        assert_eq!(report.thm1_minimal_q, Some(2));
    }

    #[test]
    fn scan_288() {
        let report = diagram_scan([2, 8, 8], 20).unwrap();
        assert_eq!(report.thm1_minimal_q, Some(8));
        assert_eq!(report.zuk_minimal_q, Some(12));
    }

    #[test]
    fn scan_236_q5_row_is_the_gab_computation() {
        let report = diagram_scan([2, 3, 6], 10).unwrap();
        let row = report.rows.iter().find(|r| r.q == 5).unwrap();
        assert!(row.thm1_pass);
        assert!(!row.zuk_pass);
        assert!((row.zuk_margin - (-0.018175220617867693)).abs() < 1e-9);
        assert!((row.thm1_sum_margin - 0.4818247793821322).abs() < 1e-9);
        assert!((row.thm1_product_margin - 0.2045425095711168).abs() < 1e-9);
    }

    #[test]
    fn scan_rejects_bad_label() {
        assert!(matches!(
            diagram_scan([2, 5, 6], 10).unwrap_err(),
            CriteriaError::BadLabel(5)
        ));
    }

    #[test]
    fn wrong_dimension_is_reported() {
        let segment = SimplicialComplex::build(&[vec![0, 1]]).unwrap();
        assert!(matches!(
            check_zuk_2d(&segment).unwrap_err(),
            CriteriaError::WrongDimension { expected: 2, got: 1 }
        ));
    }

    #[test]
    fn disconnected_link_propagates() {
        let x = SimplicialComplex::build(&[vec![0, 1, 2], vec![0, 3, 4]]).unwrap();
        assert!(matches!(
            check_zuk_2d(&x).unwrap_err(),
            CriteriaError::Spectral(SpectralError::DisconnectedLink(_))
        ));
    }
}
