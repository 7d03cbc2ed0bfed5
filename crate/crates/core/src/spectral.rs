//! Weighted graphs and the normalized Laplacian spectrum of link skeletons.
//!
//! The operator is `I − Dw^{−1/2} W Dw^{−1/2}` where `W` is the weighted
//! adjacency and `Dw` the diagonal of weighted degrees. On a link of
//! dimension `D` the paper-scale Laplacian on 0-cochains is `D` times this
//! operator, so `lambda_paper = D · lambda_norm`.

use std::collections::{HashMap, VecDeque};

use nalgebra::DMatrix;

use crate::complex::{ComplexError, Link, Simplex, SimplicialComplex, UnionFind};
use crate::linalg::{self, LinalgError};
use thiserror::Error;

/// Eigenvalues at most this size count as zero.
pub const ZERO_EIGENVALUE_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum SpectralError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("vertex {0} is isolated (weighted degree 0)")]
    IsolatedVertex(u32),
    #[error("self loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge ({0},{1})")]
    DuplicateEdge(u32, u32),
    #[error("edge ({0},{1}) has non-positive weight {2}")]
    BadWeight(u32, u32, f64),
    #[error("edge endpoint {0} is not a listed vertex")]
    UnknownVertex(u32),
    #[error("link of {0} has dimension 0; no 1-skeleton")]
    LinkTooSmall(Simplex),
    #[error("link of {0} is disconnected; smallest positive eigenvalue is not meaningful")]
    DisconnectedLink(Simplex),
    #[error("zero-eigenvalue multiplicity {zeros} disagrees with component count {components}")]
    ZeroMultiplicityMismatch { zeros: usize, components: usize },
    #[error(transparent)]
    Eigen(#[from] LinalgError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// An undirected graph with positive edge weights; vertex weights are the
/// weighted degrees.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    vertex_ids: Vec<u32>,
    /// (i, j, w) with i < j indexing into `vertex_ids`.
    edges: Vec<(usize, usize, f64)>,
    vertex_weight: Vec<f64>,
}

impl WeightedGraph {
    pub fn new(mut vertex_ids: Vec<u32>, edges: Vec<(u32, u32, f64)>) -> Result<Self, SpectralError> {
        if vertex_ids.is_empty() {
            return Err(SpectralError::EmptyGraph);
        }
        vertex_ids.sort_unstable();
        vertex_ids.dedup();
        let index: HashMap<u32, usize> = vertex_ids
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, i))
            .collect();
        let mut seen = HashMap::new();
        let mut idx_edges = Vec::with_capacity(edges.len());
        let mut vertex_weight = vec![0.0; vertex_ids.len()];
        for (a, b, w) in edges {
            if a == b {
                return Err(SpectralError::SelfLoop(a));
            }
            if w <= 0.0 {
                return Err(SpectralError::BadWeight(a, b, w));
            }
            let &ia = index.get(&a).ok_or(SpectralError::UnknownVertex(a))?;
            let &ib = index.get(&b).ok_or(SpectralError::UnknownVertex(b))?;
            let key = (ia.min(ib), ia.max(ib));
            if seen.insert(key, ()).is_some() {
                return Err(SpectralError::DuplicateEdge(a.min(b), a.max(b)));
            }
            idx_edges.push((key.0, key.1, w));
            vertex_weight[ia] += w;
            vertex_weight[ib] += w;
        }
        if let Some(i) = vertex_weight.iter().position(|&d| d <= 0.0) {
            return Err(SpectralError::IsolatedVertex(vertex_ids[i]));
        }
        idx_edges.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        Ok(WeightedGraph {
            vertex_ids,
            edges: idx_edges,
            vertex_weight,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> &[u32] {
        &self.vertex_ids
    }

    /// Edges as (index_u, index_v, weight) with u < v, sorted.
    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn edge_weight(&self, a: u32, b: u32) -> Option<f64> {
        let ia = self.vertex_ids.binary_search(&a).ok()?;
        let ib = self.vertex_ids.binary_search(&b).ok()?;
        let key = (ia.min(ib), ia.max(ib));
        self.edges
            .iter()
            .find(|&&(u, v, _)| (u, v) == key)
            .map(|&(_, _, w)| w)
    }

    /// Weighted degree of the vertex at internal index `i`.
    pub fn vertex_weight(&self, i: usize) -> f64 {
        self.vertex_weight[i]
    }

    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.vertex_ids.len());
        for &(u, v, _) in &self.edges {
            uf.union(u, v);
        }
        uf.count()
    }

    pub fn is_connected(&self) -> bool {
        self.components() == 1
    }

    fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(u, v, _) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    /// Maximum over vertices of the BFS eccentricity; `None` if disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let adj = self.adjacency_lists();
        let n = self.vertex_count();
        let mut diameter = 0;
        for start in 0..n {
            let mut dist = vec![usize::MAX; n];
            dist[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            let ecc = *dist.iter().max().expect("non-empty graph");
            if ecc == usize::MAX {
                return None;
            }
            diameter = diameter.max(ecc);
        }
        Some(diameter)
    }

    /// Length of a shortest cycle; `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let adj = self.adjacency_lists();
        let n = self.vertex_count();
        let mut best: Option<usize> = None;
        for start in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[start] = 0;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        // non-tree edge closes a cycle through start
                        let cycle = dist[u] + dist[v] + 1;
                        if best.map_or(true, |b| cycle < b) {
                            best = Some(cycle);
                        }
                    }
                }
            }
        }
        best
    }

    /// The symmetric normalized Laplacian `I − Dw^{−1/2} W Dw^{−1/2}`.
    pub fn normalized_laplacian(&self) -> DMatrix<f64> {
        let n = self.vertex_count();
        let mut l = DMatrix::identity(n, n);
        for &(u, v, w) in &self.edges {
            let x = w / (self.vertex_weight[u] * self.vertex_weight[v]).sqrt();
            l[(u, v)] = -x;
            l[(v, u)] = -x;
        }
        l
    }
}

/// Full normalized-Laplacian spectrum of a graph plus the paper-scale gap.
#[derive(Clone, Debug)]
pub struct SpectralSummary {
    /// All eigenvalues, ascending; length = vertex count.
    pub eigenvalues: Vec<f64>,
    /// Smallest eigenvalue above the zero tolerance.
    pub lambda_norm: f64,
    /// Connected components (union-find, cross-checked against the
    /// zero-eigenvalue multiplicity).
    pub components: usize,
    /// Link dimension D used to scale to the paper's Laplacian.
    pub link_dim_scale: usize,
    /// D · lambda_norm.
    pub lambda_paper: f64,
}

/// The 1-skeleton of a link with m_τ edge weights.
pub fn skeleton(link: &Link) -> Result<WeightedGraph, SpectralError> {
    if link.complex.dim() < 1 {
        return Err(SpectralError::LinkTooSmall(link.base.clone()));
    }
    let vertices: Vec<u32> = link
        .complex
        .faces(0)?
        .iter()
        .map(|v| v.vertices()[0])
        .collect();
    let edges: Vec<(u32, u32, f64)> = link
        .complex
        .faces(1)?
        .iter()
        .map(|e| {
            let vs = e.vertices();
            let w = link.complex.multiplicity(e).expect("edge of the link");
            (vs[0], vs[1], f64::from(w))
        })
        .collect();
    WeightedGraph::new(vertices, edges)
}

/// Normalized spectrum with the paper-scale gap `D · lambda_norm`.
pub fn spectrum(graph: &WeightedGraph, link_dim_scale: usize) -> Result<SpectralSummary, SpectralError> {
    let laplacian = graph.normalized_laplacian();
    let eig = linalg::jacobi_eigen(&laplacian)?;
    let eigenvalues = eig.values;
    let components = graph.components();
    let zeros = eigenvalues
        .iter()
        .take_while(|&&v| v <= ZERO_EIGENVALUE_TOL)
        .count();
    if zeros != components {
        return Err(SpectralError::ZeroMultiplicityMismatch { zeros, components });
    }
    let lambda_norm = eigenvalues[zeros];
    Ok(SpectralSummary {
        lambda_norm,
        components,
        link_dim_scale,
        lambda_paper: link_dim_scale as f64 * lambda_norm,
        eigenvalues,
    })
}

/// λ(X_τ): the paper-scale spectral gap of the link of τ.
pub fn link_lambda(complex: &SimplicialComplex, tau: &Simplex) -> Result<SpectralSummary, SpectralError> {
    let link = complex.link(tau)?;
    let graph = skeleton(&link)?;
    if !graph.is_connected() {
        return Err(SpectralError::DisconnectedLink(tau.clone()));
    }
    spectrum(&graph, link.complex.dim())
}
