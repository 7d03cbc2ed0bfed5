//! Graph cosines: the supremum of the weighted edge-correlation ratio over
//! mean-zero functions, estimated by multi-start projected ascent and, for
//! tiny graphs, certified by exhaustive search; plus the unit-diagonal cosine
//! matrices and their positive-definiteness criterion.

use std::collections::HashMap;

use nalgebra::DMatrix;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::complex::{ComplexError, Simplex, SimplicialComplex};
use crate::criteria::{AnchorResult, CriterionReport, STRICT_MARGIN};
use crate::linalg::{self, LinalgError};
use crate::spectral::{self, SpectralError, WeightedGraph};

/// Iterates with a smaller denominator are rejected as infeasible.
const DENOMINATOR_GUARD: f64 = 1e-12;
/// Relative ratio improvement below this stops the ascent.
const ASCENT_TOL: f64 = 1e-10;
const MAX_ASCENT_ITERS: usize = 10_000;
/// Vertex cap for the exhaustive oracle.
const ORACLE_MAX_VERTICES: usize = 6;

#[derive(Debug, Error)]
pub enum CosineError {
    #[error("criterion requires a {expected}-dimensional complex, got dimension {got}")]
    WrongDimension { expected: usize, got: usize },
    #[error("graph is disconnected; the cosine is defined per component")]
    Disconnected,
    #[error("no feasible function with positive denominator was found")]
    DegenerateDenominator,
    #[error("oracle supports at most {ORACLE_MAX_VERTICES} vertices, got {0}")]
    TooLarge(usize),
    #[error("function dimension must be at least 1")]
    BadDim,
    #[error("need at least one restart")]
    BadRestarts,
    #[error("cosine value missing for face {0}")]
    MissingCos(Simplex),
    #[error("cosine value missing for vertex {0}")]
    MissingVertexCos(u32),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Best edge-correlation ratio found, with the witness that attains it.
#[derive(Clone, Debug, Serialize)]
pub struct CosineEstimate {
    pub value: f64,
    /// Vertex (in graph order) → vector in the configured dimension.
    pub witness: Vec<Vec<f64>>,
    /// True only when the exhaustive oracle produced the value.
    pub certified: bool,
    pub restarts_used: usize,
}

/// Σ w⟨φu,φv⟩ and Σ w|φu||φv| over the edges; `None` when the denominator
/// falls under the guard.
fn ratio_parts(graph: &WeightedGraph, phi: &[Vec<f64>]) -> Option<(f64, f64)> {
    let mut num = 0.0;
    let mut den = 0.0;
    let norms: Vec<f64> = phi
        .iter()
        .map(|v| v.iter().map(|x| x * x).sum::<f64>().sqrt())
        .collect();
    for &(u, v, w) in graph.edges() {
        let dot: f64 = phi[u].iter().zip(&phi[v]).map(|(a, b)| a * b).sum();
        num += w * dot;
        den += w * norms[u] * norms[v];
    }
    if den < DENOMINATOR_GUARD {
        None
    } else {
        Some((num, den))
    }
}

fn ratio(graph: &WeightedGraph, phi: &[Vec<f64>]) -> Option<f64> {
    ratio_parts(graph, phi).map(|(num, den)| num / den)
}

/// Removes the weighted-constant component per coordinate:
/// Σ_u deg_w(u) φ(u) = 0 afterwards.
fn project_mean_zero(graph: &WeightedGraph, phi: &mut [Vec<f64>]) {
    let n = graph.vertex_count();
    let total: f64 = (0..n).map(|i| graph.vertex_weight(i)).sum();
    let dim = phi[0].len();
    for d in 0..dim {
        let mean: f64 = (0..n)
            .map(|i| graph.vertex_weight(i) * phi[i][d])
            .sum::<f64>()
            / total;
        for row in phi.iter_mut() {
            row[d] -= mean;
        }
    }
}

fn normalize(phi: &mut [Vec<f64>]) -> f64 {
    let norm: f64 = phi
        .iter()
        .flat_map(|v| v.iter())
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt();
    if norm > 0.0 {
        for row in phi.iter_mut() {
            for x in row.iter_mut() {
                *x /= norm;
            }
        }
    }
    norm
}

/// Gradient of the ratio at φ; zero rows where |φ(u)| vanishes (the ratio is
/// not differentiable there, the optimizer treats those points as barriers).
fn ratio_gradient(graph: &WeightedGraph, phi: &[Vec<f64>], num: f64, den: f64) -> Vec<Vec<f64>> {
    let n = graph.vertex_count();
    let dim = phi[0].len();
    let norms: Vec<f64> = phi
        .iter()
        .map(|v| v.iter().map(|x| x * x).sum::<f64>().sqrt())
        .collect();
    let r = num / den;
    let mut grad = vec![vec![0.0; dim]; n];
    for &(u, v, w) in graph.edges() {
        for d in 0..dim {
            // d(num)/dφ(u) picks up φ(v), and vice versa
            grad[u][d] += w * phi[v][d];
            grad[v][d] += w * phi[u][d];
            // d(den)/dφ(u) = w |φ(v)| φ(u)/|φ(u)|
            if norms[u] > DENOMINATOR_GUARD {
                grad[u][d] -= r * w * norms[v] * phi[u][d] / norms[u];
            }
            if norms[v] > DENOMINATOR_GUARD {
                grad[v][d] -= r * w * norms[u] * phi[v][d] / norms[v];
            }
        }
    }
    for row in grad.iter_mut() {
        for x in row.iter_mut() {
            *x /= den;
        }
    }
    grad
}

/// Projected gradient ascent from one starting point; returns the final
/// iterate and its ratio.
fn ascend(graph: &WeightedGraph, mut phi: Vec<Vec<f64>>) -> Option<(Vec<Vec<f64>>, f64)> {
    project_mean_zero(graph, &mut phi);
    normalize(&mut phi);
    let mut current = ratio(graph, &phi)?;
    for _ in 0..MAX_ASCENT_ITERS {
        let (num, den) = ratio_parts(graph, &phi)?;
        let mut grad = ratio_gradient(graph, &phi, num, den);
        project_mean_zero(graph, &mut grad);
        let grad_norm: f64 = grad
            .iter()
            .flat_map(|v| v.iter())
            .map(|x| x * x)
            .sum::<f64>()
            .sqrt();
        if grad_norm < 1e-14 {
            break;
        }
        // backtracking line search
        let mut step = 1.0;
        let mut improved = false;
        while step > 1e-18 {
            let mut candidate: Vec<Vec<f64>> = phi
                .iter()
                .zip(&grad)
                .map(|(p, g)| p.iter().zip(g).map(|(a, b)| a + step * b).collect())
                .collect();
            project_mean_zero(graph, &mut candidate);
            normalize(&mut candidate);
            if let Some(value) = ratio(graph, &candidate) {
                if value > current {
                    let gain = value - current;
                    phi = candidate;
                    current = value;
                    improved = true;
                    if gain <= ASCENT_TOL * current.abs().max(1.0) {
                        return Some((phi, current));
                    }
                    break;
                }
            }
            step *= 0.5;
        }
        if !improved {
            break;
        }
    }
    Some((phi, current))
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    // Box-Muller
    loop {
        let u: f64 = rng.gen();
        if u > f64::MIN_POSITIVE {
            let v: f64 = rng.gen();
            return (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos();
        }
    }
}

/// Multi-start projected-ascent lower bound on the reduced cosine. The
/// restart streams are split deterministically from the seed, so the result
/// does not depend on evaluation order.
pub fn estimate_cos_r(
    graph: &WeightedGraph,
    dim: usize,
    restarts: usize,
    seed: u64,
) -> Result<CosineEstimate, CosineError> {
    if dim == 0 {
        return Err(CosineError::BadDim);
    }
    if restarts == 0 {
        return Err(CosineError::BadRestarts);
    }
    if !graph.is_connected() {
        return Err(CosineError::Disconnected);
    }
    let n = graph.vertex_count();
    let mut best: Option<(Vec<Vec<f64>>, f64)> = None;
    for restart in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(restart as u64);
        let phi: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..dim).map(|_| gaussian(&mut rng)).collect())
            .collect();
        if let Some((witness, value)) = ascend(graph, phi) {
            if best.as_ref().map_or(true, |(_, b)| value > *b) {
                best = Some((witness, value));
            }
        }
    }
    let (witness, _) = best.ok_or(CosineError::DegenerateDenominator)?;
    finish_estimate(graph, witness, false, restarts)
}

fn finish_estimate(
    graph: &WeightedGraph,
    witness: Vec<Vec<f64>>,
    certified: bool,
    restarts_used: usize,
) -> Result<CosineEstimate, CosineError> {
    let value = ratio(graph, &witness).ok_or(CosineError::DegenerateDenominator)?;
    assert!(
        value.abs() <= 1.0 + 1e-9,
        "cosine ratio {value} escaped [-1, 1]"
    );
    Ok(CosineEstimate {
        value,
        witness,
        certified,
        restarts_used,
    })
}

/// Orthonormal basis of the scalar constraint subspace
/// {x : Σ deg_w(u) x_u = 0}.
fn constraint_basis(graph: &WeightedGraph) -> DMatrix<f64> {
    let n = graph.vertex_count();
    let mut row = DMatrix::zeros(1, n);
    for i in 0..n {
        row[(0, i)] = graph.vertex_weight(i);
    }
    linalg::null_space_basis(&row, 1e-12)
}

fn scalar_ratio(graph: &WeightedGraph, basis: &DMatrix<f64>, coords: &[f64]) -> Option<f64> {
    let n = graph.vertex_count();
    let phi: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let x: f64 = (0..coords.len()).map(|j| basis[(i, j)] * coords[j]).sum();
            vec![x]
        })
        .collect();
    ratio(graph, &phi)
}

/// Exhaustive scalar search: a lattice sweep of the projective sphere inside
/// the constraint subspace, refined by compass search around the best point.
pub fn oracle_cos_r(graph: &WeightedGraph, grid: usize) -> Result<CosineEstimate, CosineError> {
    oracle_search(graph, grid, true)
}

fn oracle_search(
    graph: &WeightedGraph,
    grid: usize,
    constrained: bool,
) -> Result<CosineEstimate, CosineError> {
    let n = graph.vertex_count();
    if n > ORACLE_MAX_VERTICES {
        return Err(CosineError::TooLarge(n));
    }
    if !graph.is_connected() {
        return Err(CosineError::Disconnected);
    }
    let basis = if constrained {
        constraint_basis(graph)
    } else {
        DMatrix::identity(n, n)
    };
    let dims = basis.ncols();
    let g = grid as i64;

    let mut best_coords: Option<Vec<f64>> = None;
    let mut best_value = f64::NEG_INFINITY;
    let mut lattice = vec![-g; dims];
    loop {
        if lattice.iter().any(|&c| c != 0) {
            let coords: Vec<f64> = lattice.iter().map(|&c| c as f64).collect();
            if let Some(value) = scalar_ratio(graph, &basis, &coords) {
                if value > best_value {
                    best_value = value;
                    best_coords = Some(coords);
                }
            }
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == dims {
                break;
            }
            lattice[i] += 1;
            if lattice[i] <= g {
                break;
            }
            lattice[i] = -g;
            i += 1;
        }
        if i == dims {
            break;
        }
    }
    let mut coords = best_coords.ok_or(CosineError::DegenerateDenominator)?;
    let norm: f64 = coords.iter().map(|x| x * x).sum::<f64>().sqrt();
    for c in coords.iter_mut() {
        *c /= norm;
    }

    // compass-search refinement; the ratio is scale-invariant so steps need
    // no re-normalization
    let mut h = 1.0 / grid as f64;
    let mut directions: Vec<Vec<f64>> = Vec::new();
    for i in 0..dims {
        for sign in [1.0, -1.0] {
            let mut d = vec![0.0; dims];
            d[i] = sign;
            directions.push(d);
        }
        for j in i + 1..dims {
            for (si, sj) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                let mut d = vec![0.0; dims];
                d[i] = si;
                d[j] = sj;
                directions.push(d);
            }
        }
    }
    while h > 1e-9 {
        let mut moved = false;
        for d in &directions {
            let candidate: Vec<f64> = coords
                .iter()
                .zip(d)
                .map(|(c, step)| c + h * step)
                .collect();
            if let Some(value) = scalar_ratio(graph, &basis, &candidate) {
                if value > best_value {
                    best_value = value;
                    coords = candidate;
                    moved = true;
                }
            }
        }
        if !moved {
            h *= 0.5;
        }
    }

    let norm: f64 = coords.iter().map(|x| x * x).sum::<f64>().sqrt();
    let witness: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let x: f64 = (0..dims).map(|j| basis[(i, j)] * coords[j]).sum();
            vec![x / norm]
        })
        .collect();
    finish_estimate(graph, witness, true, 0)
}

/// Unit-diagonal cosine matrix of an anchor simplex.
#[derive(Clone, Debug)]
pub struct AMatrix {
    pub anchor: Simplex,
    /// Indexed by the k-faces of the anchor in lexicographic order.
    pub entries: DMatrix<f64>,
    pub min_eigenvalue: f64,
}

/// Assembles the matrix with 1 on the diagonal and −cos(α ∩ β) off it, for
/// the k-faces α, β of a (k+1)-simplex.
pub fn build_a(
    complex: &SimplicialComplex,
    gamma: &Simplex,
    cos_source: &HashMap<Simplex, f64>,
) -> Result<AMatrix, CosineError> {
    if !complex.contains_face(gamma) {
        return Err(CosineError::Complex(ComplexError::UnknownFace(
            gamma.clone(),
        )));
    }
    let mut faces = gamma.facets();
    faces.sort();
    let size = faces.len();
    let mut entries = DMatrix::identity(size, size);
    for i in 0..size {
        for j in i + 1..size {
            let shared: Vec<u32> = faces[i]
                .vertices()
                .iter()
                .copied()
                .filter(|v| faces[j].vertices().contains(v))
                .collect();
            let shared = Simplex::new(shared).expect("distinct facets share k vertices");
            let cos = cos_source
                .get(&shared)
                .copied()
                .ok_or(CosineError::MissingCos(shared))?;
            entries[(i, j)] = -cos;
            entries[(j, i)] = -cos;
        }
    }
    let eig = linalg::jacobi_eigen(&entries)?;
    Ok(AMatrix {
        anchor: gamma.clone(),
        min_eigenvalue: eig.values[0],
        entries,
    })
}

/// Where the cosine values for [`check_theorem2_2d`] come from.
#[derive(Clone, Debug)]
pub enum CosineSource {
    Estimate { dim: usize, restarts: usize, seed: u64 },
    Oracle { grid: usize },
    /// Externally supplied values per vertex id.
    Table(HashMap<u32, f64>),
}

/// Positive definiteness of the vertex-cosine matrix of every triangle of a
/// 2-complex.
pub fn check_theorem2_2d(
    complex: &SimplicialComplex,
    source: &CosineSource,
) -> Result<CriterionReport, CosineError> {
    if complex.dim() != 2 {
        return Err(CosineError::WrongDimension {
            expected: 2,
            got: complex.dim(),
        });
    }
    let mut cos_by_vertex: HashMap<Simplex, f64> = HashMap::new();
    for vertex in complex.faces(0)? {
        let id = vertex.vertices()[0];
        let value = match source {
            CosineSource::Table(table) => *table
                .get(&id)
                .ok_or(CosineError::MissingVertexCos(id))?,
            CosineSource::Estimate { dim, restarts, seed } => {
                let graph = link_graph(complex, vertex)?;
                estimate_cos_r(&graph, *dim, *restarts, *seed)?.value
            }
            CosineSource::Oracle { grid } => {
                let graph = link_graph(complex, vertex)?;
                oracle_cos_r(&graph, *grid)?.value
            }
        };
        cos_by_vertex.insert(vertex.clone(), value);
    }

    let mut per_simplex = Vec::new();
    let mut achieved = Vec::new();
    for triangle in complex.faces(2)? {
        let a = build_a(complex, triangle, &cos_by_vertex)?;
        per_simplex.push(AnchorResult {
            anchor: triangle.clone(),
            margins: vec![a.min_eigenvalue],
            passed: a.min_eigenvalue > STRICT_MARGIN,
        });
        achieved.push(a.min_eigenvalue);
    }
    let passed = per_simplex.iter().all(|r| r.passed);
    let epsilon = if passed {
        achieved
            .into_iter()
            .min_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"))
    } else {
        None
    };
    let mut flags = Vec::new();
    if matches!(source, CosineSource::Estimate { .. }) {
        flags.push(
            "heuristic: cosines are lower-bound estimates, so a false pass is possible \
             but a false fail is not"
                .to_string(),
        );
    }
    Ok(CriterionReport {
        criterion: "thm2".to_string(),
        passed,
        per_simplex,
        epsilon,
        flags,
    })
}

fn link_graph(
    complex: &SimplicialComplex,
    vertex: &Simplex,
) -> Result<WeightedGraph, CosineError> {
    let link = complex.link(vertex)?;
    let graph = spectral::skeleton(&link)?;
    if !graph.is_connected() {
        return Err(CosineError::Spectral(SpectralError::DisconnectedLink(
            vertex.clone(),
        )));
    }
    Ok(graph)
}
