//! The bordered incidence determinant on the faces of a standard simplex and
//! its root problem, solved by two independent routes.
//!
//! For 0 ≤ k < l the system collects the k-faces F and (k+1)-faces F' of the
//! standard l-simplex together with the signed incidence matrix C. The
//! polynomial `p(λ) = det [[diag(λ − S_σ), Cᵀ], [C, 0]]` vanishes exactly at
//! the stationary values of `Σ S_σ x_σ²` on the unit sphere of ker(C), which
//! gives the second route: eigenvalues of `Qᵀ diag(S) Q` for an orthonormal
//! kernel basis Q. The determinant route is only informative when l = k + 1;
//! for l > k + 1 the incidence rows are dependent and p ≡ 0.

use std::collections::HashMap;

use itertools::Itertools;
use nalgebra::DMatrix;
use serde::Serialize;
use thiserror::Error;

use crate::linalg;

/// Samples with |det| at most this are treated as identically zero.
const DEGENERACY_TOL: f64 = 1e-10;
/// Companion-matrix eigenvalues with |Im| at most this count as real roots.
const IMAG_TOL: f64 = 1e-8;
/// A conjugate pair a ± bi is a real double root up to a coefficient
/// perturbation of size b², so pairs with b² inside coefficient noise
/// (b ≤ 1e−6) collapse to a double root at a.
const PAIR_COLLAPSE_TOL: f64 = 1e-6;
/// Relative cutoff when trimming interpolated leading coefficients.
const COEFF_TRIM_REL_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum PklError {
    #[error("need 0 <= k < l, got k={0}, l={1}")]
    BadDims(usize, usize),
    #[error("S value missing for face {0:?}")]
    MissingS(Vec<usize>),
    #[error("determinant route needs l = k+1; for l > k+1 the polynomial vanishes identically")]
    NotSupported,
    #[error("kernel of the incidence matrix is trivial; the constraint set is empty")]
    EmptyKernel,
    #[error(transparent)]
    Eigen(#[from] linalg::LinalgError),
}

/// How a [`RootReport`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RootMethod {
    DeterminantInterpolation,
    ConstrainedEigenvalue,
}

/// Real roots of the system's root problem, sorted ascending.
#[derive(Clone, Debug, Serialize)]
pub struct RootReport {
    pub method: RootMethod,
    pub roots: Vec<f64>,
    /// True when the determinant vanished at every sample point (p ≡ 0).
    pub degenerate: bool,
    /// Smallest root; absent when degenerate or rootless.
    pub min_root: Option<f64>,
}

/// Incidence data of the k/(k+1)-faces of the standard l-simplex plus the
/// S values on the k-faces.
#[derive(Clone, Debug)]
pub struct PklSystem {
    pub k: usize,
    pub l: usize,
    /// k-faces as increasing vertex tuples, lexicographic.
    pub faces: Vec<Vec<usize>>,
    /// (k+1)-faces, lexicographic.
    pub cofaces: Vec<Vec<usize>>,
    /// |F'| x |F| signed incidence: C[ν][σ] = (−1)^i when σ = ν minus its
    /// i-th vertex, else 0.
    pub incidence: DMatrix<f64>,
    /// S_σ in face order.
    pub s_values: Vec<f64>,
}

fn faces_of_standard_simplex(l: usize, dim: usize) -> Vec<Vec<usize>> {
    (0..=l).combinations(dim + 1).collect()
}

/// Assembles the system; `s` must cover every k-face of the standard
/// l-simplex, keyed by the increasing vertex tuple.
pub fn build_system(
    k: usize,
    l: usize,
    s: &HashMap<Vec<usize>, f64>,
) -> Result<PklSystem, PklError> {
    if k >= l {
        return Err(PklError::BadDims(k, l));
    }
    let faces = faces_of_standard_simplex(l, k);
    let cofaces = faces_of_standard_simplex(l, k + 1);
    let face_index: HashMap<&[usize], usize> = faces
        .iter()
        .enumerate()
        .map(|(i, f)| (f.as_slice(), i))
        .collect();

    let mut incidence = DMatrix::zeros(cofaces.len(), faces.len());
    for (ci, coface) in cofaces.iter().enumerate() {
        for (omit, _) in coface.iter().enumerate() {
            let mut facet = coface.clone();
            facet.remove(omit);
            let fi = face_index[facet.as_slice()];
            incidence[(ci, fi)] = if omit % 2 == 0 { 1.0 } else { -1.0 };
        }
    }

    let s_values = faces
        .iter()
        .map(|f| s.get(f).copied().ok_or_else(|| PklError::MissingS(f.clone())))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(PklSystem {
        k,
        l,
        faces,
        cofaces,
        incidence,
        s_values,
    })
}

impl PklSystem {
    /// Size of the bordered matrix.
    fn bordered_size(&self) -> usize {
        self.faces.len() + self.cofaces.len()
    }
}

/// Determinant of the bordered matrix at the substitution x_σ = λ − S_σ.
pub fn eval_det(system: &PklSystem, lambda: f64) -> f64 {
    let nf = system.faces.len();
    let nc = system.cofaces.len();
    let mut m = DMatrix::zeros(system.bordered_size(), system.bordered_size());
    for i in 0..nf {
        m[(i, i)] = lambda - system.s_values[i];
    }
    for ci in 0..nc {
        for fi in 0..nf {
            let sign = system.incidence[(ci, fi)];
            m[(fi, nf + ci)] = sign;
            m[(nf + ci, fi)] = sign;
        }
    }
    m.determinant()
}

fn chebyshev_nodes(count: usize, lo: f64, hi: f64) -> Vec<f64> {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    (0..count)
        .map(|i| {
            let theta = (2 * i + 1) as f64 * std::f64::consts::PI / (2 * count) as f64;
            mid + half * theta.cos()
        })
        .collect()
}

/// Newton interpolation through (xs, ys), expanded to monomial coefficients
/// (ascending powers).
fn interpolate_monomial(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    let n = xs.len();
    // divided differences
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
        }
    }
    // expand Newton form by Horner on coefficient vectors
    let mut coeffs = vec![dd[n - 1]];
    for i in (0..n - 1).rev() {
        // coeffs := coeffs * (x - xs[i]) + dd[i]
        let mut next = vec![0.0; coeffs.len() + 1];
        for (p, &c) in coeffs.iter().enumerate() {
            next[p + 1] += c;
            next[p] -= c * xs[i];
        }
        next[0] += dd[i];
        coeffs = next;
    }
    coeffs
}

fn horner_with_derivative(
    coeffs: &[f64],
    z: nalgebra::Complex<f64>,
) -> (nalgebra::Complex<f64>, nalgebra::Complex<f64>) {
    let mut p = nalgebra::Complex::new(0.0, 0.0);
    let mut dp = nalgebra::Complex::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// A few Newton steps tighten companion eigenvalues; multiple real roots
/// otherwise surface as conjugate pairs with |Im| near sqrt(machine eps),
/// which straddles the acceptance tolerance.
fn polish_root(coeffs: &[f64], mut z: nalgebra::Complex<f64>) -> nalgebra::Complex<f64> {
    for _ in 0..60 {
        let (p, dp) = horner_with_derivative(coeffs, z);
        if dp.norm() < f64::MIN_POSITIVE {
            break;
        }
        let step = p / dp;
        z -= step;
        if step.norm() <= 1e-15 * z.norm().max(1.0) {
            break;
        }
    }
    z
}

/// Real roots of a monomial-coefficient polynomial via companion-matrix
/// eigenvalues; Newton-polished, then complex pairs with |Im| > IMAG_TOL are
/// dropped.
fn companion_real_roots(coeffs: &[f64]) -> Vec<f64> {
    let max_coeff = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if max_coeff == 0.0 {
        return Vec::new();
    }
    let mut degree = coeffs.len() - 1;
    while degree > 0 && coeffs[degree].abs() <= COEFF_TRIM_REL_TOL * max_coeff {
        degree -= 1;
    }
    if degree == 0 {
        return Vec::new();
    }
    let lead = coeffs[degree];
    let mut companion = DMatrix::zeros(degree, degree);
    for i in 1..degree {
        companion[(i, i - 1)] = 1.0;
    }
    for i in 0..degree {
        companion[(i, degree - 1)] = -coeffs[i] / lead;
    }
    let eigen = companion.complex_eigenvalues();
    let polished: Vec<nalgebra::Complex<f64>> = eigen
        .iter()
        .map(|&z| polish_root(&coeffs[..=degree], z))
        .collect();
    let mut roots = Vec::with_capacity(degree);
    for z in &polished {
        if z.im.abs() <= IMAG_TOL {
            roots.push(z.re);
        } else if z.im > IMAG_TOL && z.im <= PAIR_COLLAPSE_TOL {
            // near-real conjugate pair: double real root within noise
            roots.push(z.re);
            roots.push(z.re);
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    roots
}

/// Root problem via determinant sampling and Newton interpolation.
///
/// Samples at |F| + 1 Chebyshev points on [min S − 1, max S + 1]; when every
/// sample vanishes the report is flagged degenerate (always the case for
/// l > k + 1).
pub fn det_roots(system: &PklSystem) -> Result<RootReport, PklError> {
    let s_min = system
        .s_values
        .iter()
        .fold(f64::INFINITY, |m, &v| m.min(v));
    let s_max = system
        .s_values
        .iter()
        .fold(f64::NEG_INFINITY, |m, &v| m.max(v));
    let count = system.faces.len() + 1;
    let nodes = chebyshev_nodes(count, s_min - 1.0, s_max + 1.0);
    let samples: Vec<f64> = nodes.iter().map(|&x| eval_det(system, x)).collect();

    if samples.iter().all(|v| v.abs() <= DEGENERACY_TOL) {
        return Ok(RootReport {
            method: RootMethod::DeterminantInterpolation,
            roots: Vec::new(),
            degenerate: true,
            min_root: None,
        });
    }
    if system.l > system.k + 1 {
        // rank deficiency forces p ≡ 0 there; nonzero samples mean the
        // numerics are off rather than the theory
        return Err(PklError::NotSupported);
    }

    let coeffs = interpolate_monomial(&nodes, &samples);
    let roots = companion_real_roots(&coeffs);
    let min_root = roots.first().copied();
    Ok(RootReport {
        method: RootMethod::DeterminantInterpolation,
        roots,
        degenerate: false,
        min_root,
    })
}

/// Root problem via the constraint kernel: eigenvalues of `Qᵀ diag(S) Q`
/// where Q is an orthonormal basis of ker(C). Valid for every (k, l).
pub fn constrained_roots(system: &PklSystem) -> Result<RootReport, PklError> {
    let kernel = linalg::null_space_basis(&system.incidence, 1e-12);
    if kernel.ncols() == 0 {
        return Err(PklError::EmptyKernel);
    }
    let diag_s = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(system.s_values.clone()));
    let reduced = kernel.transpose() * diag_s * &kernel;
    let eig = linalg::jacobi_eigen(&reduced)?;
    let roots = eig.values;
    let min_root = roots.first().copied();
    Ok(RootReport {
        method: RootMethod::ConstrainedEigenvalue,
        roots,
        degenerate: false,
        min_root,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;

    fn triangle_system(s: [f64; 3]) -> PklSystem {
        let mut map = HashMap::new();
        map.insert(vec![0, 1], s[0]);
        map.insert(vec![0, 2], s[1]);
        map.insert(vec![1, 2], s[2]);
        build_system(1, 2, &map).unwrap()
    }

    fn random_system(k: usize, l: usize, rng: &mut impl Rng) -> PklSystem {
        let faces = faces_of_standard_simplex(l, k);
        let map: HashMap<Vec<usize>, f64> = faces
            .into_iter()
            .map(|f| (f, rng.gen_range(-2.0..2.0)))
            .collect();
        build_system(k, l, &map).unwrap()
    }

    /// Quadratic-formula roots of 3λ² − 2(ΣS)λ + Σ_{i<j} S_i S_j.
    fn quadratic_oracle(s: [f64; 3]) -> [f64; 2] {
        let sum: f64 = s.iter().sum();
        let pairs = s[0] * s[1] + s[0] * s[2] + s[1] * s[2];
        let disc = (sum * sum - 3.0 * pairs).sqrt();
        [(sum - disc) / 3.0, (sum + disc) / 3.0]
    }

    #[test]
    fn triangle_incidence_signs() {
        let sys = triangle_system([0.0; 3]);
        assert_eq!(sys.faces, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(sys.cofaces, vec![vec![0, 1, 2]]);
        let row: Vec<f64> = (0..3).map(|j| sys.incidence[(0, j)]).collect();
        assert_eq!(row, vec![1.0, -1.0, 1.0]);
    }

    #[test]
    fn edge_incidence() {
        // omitting vertex 1 of (0,1) leaves (0) with sign (−1)^1
        let mut map = HashMap::new();
        map.insert(vec![0], 0.0);
        map.insert(vec![1], 0.0);
        let sys = build_system(0, 1, &map).unwrap();
        assert_eq!(sys.incidence[(0, 0)], -1.0);
        assert_eq!(sys.incidence[(0, 1)], 1.0);
    }

    #[test]
    fn tetrahedron_edge_rank() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let sys = random_system(1, 3, &mut rng);
        assert_eq!(sys.faces.len(), 6);
        assert_eq!(sys.cofaces.len(), 4);
        assert_eq!(linalg::rank(&sys.incidence, 1e-12), 3);
    }

    #[test]
    fn build_errors() {
        let map = HashMap::new();
        assert_eq!(build_system(2, 2, &map).unwrap_err(), PklError::BadDims(2, 2));
        assert!(matches!(
            build_system(1, 2, &map).unwrap_err(),
            PklError::MissingS(_)
        ));
    }

    #[test]
    fn eval_det_matches_example_closed_form() {
        // det = c · [x1x2 + x1x3 + x2x3]; calibrate c at S = 0, λ = 1.
        let sys0 = triangle_system([0.0; 3]);
        let c = eval_det(&sys0, 1.0) / 3.0;
        assert!((c.abs() - 1.0).abs() < 1e-12);

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let s = [
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            ];
            let lambda: f64 = rng.gen_range(-3.0..3.0);
            let sys = triangle_system(s);
            let x = [lambda - s[0], lambda - s[1], lambda - s[2]];
            let expected = c * (x[0] * x[1] + x[0] * x[2] + x[1] * x[2]);
            assert!((eval_det(&sys, lambda) - expected).abs() < 1e-10);
        }
    }

    #[test]
    fn eval_det_single_constraint_is_linear() {
        let mut map = HashMap::new();
        map.insert(vec![0], 0.0);
        map.insert(vec![1], 0.0);
        let sys = build_system(0, 1, &map).unwrap();
        for t in [-2.0, -0.5, 0.0, 1.0, 3.0] {
            assert!((eval_det(&sys, t).abs() - 2.0 * t.abs()).abs() < 1e-12);
        }
    }

    #[test]
    fn eval_det_vanishes_identically_for_l3() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let sys = random_system(1, 3, &mut rng);
        for lambda in [-1.5, 0.0, 0.7, 2.3] {
            assert!(eval_det(&sys, lambda).abs() < 1e-10);
        }
    }

    #[test]
    fn det_roots_constant_s() {
        let report = det_roots(&triangle_system([1.0; 3])).unwrap();
        assert!(!report.degenerate);
        assert_eq!(report.roots.len(), 2);
        for r in &report.roots {
            assert!((r - 1.0).abs() < 1e-8);
        }
        assert!((report.min_root.unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn det_roots_mixed_sign() {
        let report = det_roots(&triangle_system([1.0, 1.0, -1.0])).unwrap();
        assert_eq!(report.roots.len(), 2);
        assert!((report.roots[0] + 1.0 / 3.0).abs() < 1e-8);
        assert!((report.roots[1] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn lyons_edge_roots() {
        // S from the worked GAB example: λ̄ = (1/2, 1/2−√5/6, 1/2−√15/6).
        let lb = [
            0.5,
            0.5 - 5f64.sqrt() / 6.0,
            0.5 - 15f64.sqrt() / 6.0,
        ];
        let s = [lb[0] + lb[1], lb[0] + lb[2], lb[1] + lb[2]];
        let report = det_roots(&triangle_system(s)).unwrap();
        let oracle = quadratic_oracle(s);
        assert!((report.roots[0] - oracle[0]).abs() < 1e-9);
        assert!((report.roots[1] - oracle[1]).abs() < 1e-9);
        // frozen oracle values
        assert!((oracle[0] - 0.13413574576945378).abs() < 1e-12);
        assert!((oracle[1] - 0.5082972934067226).abs() < 1e-12);

        let constrained = constrained_roots(&triangle_system(s)).unwrap();
        for (a, b) in report.roots.iter().zip(&constrained.roots) {
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn constrained_constant_s_is_double_root() {
        let report = constrained_roots(&triangle_system([1.0; 3])).unwrap();
        assert_eq!(report.roots.len(), 2);
        for r in &report.roots {
            assert!((r - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn constrained_l3_has_three_roots() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        let sys = random_system(1, 3, &mut rng);
        let det = det_roots(&sys).unwrap();
        assert!(det.degenerate);
        let report = constrained_roots(&sys).unwrap();
        assert_eq!(report.roots.len(), 3);
    }

    #[test]
    fn degenerate_cases_from_rank_analysis() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for (k, l) in [(0usize, 2usize), (0, 3), (1, 3)] {
            let sys = random_system(k, l, &mut rng);
            let report = det_roots(&sys).unwrap();
            assert!(report.degenerate, "(k,l)=({k},{l}) should be degenerate");
            assert!(report.min_root.is_none());
        }
    }

    #[test]
    fn adjacent_dims_never_degenerate() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        for k in 0..4usize {
            for _ in 0..20 {
                let sys = random_system(k, k + 1, &mut rng);
                let report = det_roots(&sys).unwrap();
                assert!(!report.degenerate);
                assert_eq!(report.roots.len(), k + 2 - 1);
            }
        }
    }

    #[test]
    fn oracle_equivalence_on_random_triples() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let s = [
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            ];
            let sys = triangle_system(s);
            let det = det_roots(&sys).unwrap();
            let con = constrained_roots(&sys).unwrap();
            let oracle = quadratic_oracle(s);
            assert_eq!(det.roots.len(), 2);
            assert_eq!(con.roots.len(), 2);
            for i in 0..2 {
                assert!((det.roots[i] - con.roots[i]).abs() < 1e-8);
                assert!((det.roots[i] - oracle[i]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn shift_in_s_shifts_roots() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let s = [
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            ];
            let t: f64 = rng.gen_range(-1.0..1.0);
            let base = constrained_roots(&triangle_system(s)).unwrap();
            let shifted =
                constrained_roots(&triangle_system([s[0] + t, s[1] + t, s[2] + t])).unwrap();
            for (a, b) in base.roots.iter().zip(&shifted.roots) {
                assert!((a + t - b).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn roots_invariant_under_vertex_relabeling() {
        // swapping vertices 0 and 2 of the triangle permutes the faces
        let s = [0.3, -0.7, 1.1];
        let base = constrained_roots(&triangle_system(s)).unwrap();
        // permutation (0 2): edge (0,1)->(1,2), (0,2)->(0,2), (1,2)->(0,1)
        let permuted = constrained_roots(&triangle_system([s[2], s[1], s[0]])).unwrap();
        for (a, b) in base.roots.iter().zip(&permuted.roots) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
