//! Finite pure simplicial complexes with cofacet multiplicities.
//!
//! A complex is built from its maximal (top-dimensional) simplices; every
//! face is stored together with its multiplicity `m(σ)` = number of distinct
//! top simplices containing it. Links inherit weights from the ambient
//! complex: `m_τ(η) = m(τ ∪ η)`.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("maximal simplex list is empty")]
    Empty,
    #[error("maximal simplices have mixed cardinalities ({0} and {1}); complex must be pure")]
    NonPure(usize, usize),
    #[error("duplicate maximal simplex {0}")]
    DuplicateTop(Simplex),
    #[error("simplex has a repeated vertex: {0:?}")]
    RepeatedVertex(Vec<u32>),
    #[error("simplex must have at least one vertex")]
    EmptySimplex,
    #[error("dimension {k} out of range for a {n}-dimensional complex")]
    DimOutOfRange { k: usize, n: usize },
    #[error("simplex {0} is not a face of the complex")]
    UnknownFace(Simplex),
    #[error("simplex {0} is top-dimensional; its link is empty")]
    TopFace(Simplex),
}

/// A simplex stored canonically as a strictly increasing vertex list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Simplex(Vec<u32>);

impl TryFrom<Vec<u32>> for Simplex {
    type Error = ComplexError;

    fn try_from(vertices: Vec<u32>) -> Result<Self, ComplexError> {
        Simplex::new(vertices)
    }
}

impl From<Simplex> for Vec<u32> {
    fn from(simplex: Simplex) -> Vec<u32> {
        simplex.0
    }
}

impl Simplex {
    /// Canonicalizes (sorts) the vertex list; repeated vertices are rejected.
    pub fn new(mut vertices: Vec<u32>) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(ComplexError::RepeatedVertex(vertices));
        }
        Ok(Simplex(vertices))
    }

    pub fn vertex(v: u32) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, other: &Simplex) -> bool {
        // both sorted; merge walk
        let mut it = self.0.iter();
        other.0.iter().all(|v| it.any(|w| w == v))
    }

    /// The codimension-1 faces, in the order of the omitted-vertex position.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.dim() == 0 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|i| {
                let mut v = self.0.clone();
                v.remove(i);
                Simplex(v)
            })
            .collect()
    }

    /// All non-empty subsets (faces of every dimension, including self).
    pub fn subsets(&self) -> Vec<Simplex> {
        (1..=self.0.len())
            .flat_map(|len| {
                self.0
                    .iter()
                    .copied()
                    .combinations(len)
                    .map(Simplex)
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    /// Union with a disjoint simplex; `None` when the vertex sets intersect.
    pub fn union_disjoint(&self, other: &Simplex) -> Option<Simplex> {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            None
        } else {
            Some(Simplex(v))
        }
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.0.contains(v))
    }

    /// Set difference `self \ other` (assumes `other ⊆ self`).
    pub fn minus(&self, other: &Simplex) -> Simplex {
        Simplex(
            self.0
                .iter()
                .copied()
                .filter(|v| !other.0.contains(v))
                .collect(),
        )
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.iter().join(","))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite pure `n`-dimensional simplicial complex with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    dim: usize,
    /// `faces[k]` holds all k-simplices in lexicographic order.
    faces: Vec<Vec<Simplex>>,
    /// m(σ): number of distinct top simplices containing σ.
    weights: HashMap<Simplex, u32>,
}

/// The link of a simplex, carrying the inherited weight table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    pub base: Simplex,
    pub complex: SimplicialComplex,
}

/// Validation summary produced by [`SimplicialComplex::validate`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Diagnostics {
    pub dim: usize,
    pub face_counts: Vec<usize>,
    /// Faces with m(σ) < 1. Empty for any complex produced by the builder.
    pub purity_violations: Vec<Simplex>,
    pub complex_connected: bool,
    /// Bases τ (dim τ ≤ n−2) whose link 1-skeleton is disconnected.
    pub disconnected_links: Vec<Simplex>,
    /// Triples (k, l, σ) where C(n−k, l−k)·m(σ) ≠ Σ_{γ ⊇ σ, dim γ = l} m(γ).
    pub weight_identity_violations: Vec<(usize, usize, Simplex)>,
}

impl Diagnostics {
    /// The standing hypotheses of the spectral criteria: purity plus
    /// connectivity of every link that is at least a graph.
    pub fn links_ok(&self) -> bool {
        self.purity_violations.is_empty() && self.disconnected_links.is_empty()
    }

    pub fn all_ok(&self) -> bool {
        self.links_ok() && self.weight_identity_violations.is_empty()
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u64 / (i + 1) as u64;
    }
    acc
}

impl SimplicialComplex {
    /// Builds the downward closure of a set of equal-cardinality maximal
    /// simplices and tabulates every multiplicity.
    pub fn build(maximal_simplices: &[Vec<u32>]) -> Result<Self, ComplexError> {
        if maximal_simplices.is_empty() {
            return Err(ComplexError::Empty);
        }
        let tops: Vec<Simplex> = maximal_simplices
            .iter()
            .map(|v| Simplex::new(v.clone()))
            .collect::<Result<_, _>>()?;
        let card = tops[0].vertices().len();
        for t in &tops {
            if t.vertices().len() != card {
                return Err(ComplexError::NonPure(card, t.vertices().len()));
            }
        }
        let mut seen = HashMap::new();
        for t in &tops {
            if seen.insert(t.clone(), ()).is_some() {
                return Err(ComplexError::DuplicateTop(t.clone()));
            }
        }
        Ok(Self::from_tops_unchecked(tops))
    }

    /// Closure + multiplicity count for tops already known to be distinct and
    /// of equal cardinality.
    fn from_tops_unchecked(tops: Vec<Simplex>) -> Self {
        let dim = tops[0].dim();
        let mut weights: HashMap<Simplex, u32> = HashMap::new();
        for top in &tops {
            for face in top.subsets() {
                *weights.entry(face).or_insert(0) += 1;
            }
        }
        let mut faces: Vec<Vec<Simplex>> = vec![Vec::new(); dim + 1];
        for face in weights.keys() {
            faces[face.dim()].push(face.clone());
        }
        for level in &mut faces {
            level.sort_unstable();
        }
        SimplicialComplex { dim, faces, weights }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// All k-simplices in lexicographic order.
    pub fn faces(&self, k: usize) -> Result<&[Simplex], ComplexError> {
        self.faces
            .get(k)
            .map(|v| v.as_slice())
            .ok_or(ComplexError::DimOutOfRange { k, n: self.dim })
    }

    pub fn contains_face(&self, simplex: &Simplex) -> bool {
        self.weights.contains_key(simplex)
    }

    /// m(σ): the number of distinct top simplices containing σ.
    pub fn multiplicity(&self, simplex: &Simplex) -> Result<u32, ComplexError> {
        self.weights
            .get(simplex)
            .copied()
            .ok_or_else(|| ComplexError::UnknownFace(simplex.clone()))
    }

    /// The link of τ with weights m_τ(η) = m(τ ∪ η).
    pub fn link(&self, tau: &Simplex) -> Result<Link, ComplexError> {
        if !self.contains_face(tau) {
            return Err(ComplexError::UnknownFace(tau.clone()));
        }
        if tau.dim() == self.dim {
            return Err(ComplexError::TopFace(tau.clone()));
        }
        let link_dim = self.dim - tau.dim() - 1;
        // Link faces are γ \ τ for tops γ ⊇ τ, plus all their subsets.
        let mut weights: HashMap<Simplex, u32> = HashMap::new();
        let mut faces: Vec<Vec<Simplex>> = vec![Vec::new(); link_dim + 1];
        for top in &self.faces[self.dim] {
            if !top.contains(tau) {
                continue;
            }
            for face in top.minus(tau).subsets() {
                if !weights.contains_key(&face) {
                    let ambient = tau
                        .union_disjoint(&face)
                        .expect("link face is disjoint from its base");
                    let m = self.weights[&ambient];
                    weights.insert(face.clone(), m);
                    faces[face.dim()].push(face);
                }
            }
        }
        for level in &mut faces {
            level.sort_unstable();
        }
        Ok(Link {
            base: tau.clone(),
            complex: SimplicialComplex {
                dim: link_dim,
                faces,
                weights,
            },
        })
    }

    /// Connectivity of the 1-skeleton (a 0-dimensional complex is connected
    /// iff it has a single vertex).
    pub fn is_connected(&self) -> bool {
        let vertices = &self.faces[0];
        if vertices.len() <= 1 {
            return true;
        }
        if self.dim == 0 {
            return false;
        }
        let index: HashMap<&Simplex, usize> =
            vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let mut uf = UnionFind::new(vertices.len());
        for edge in &self.faces[1] {
            let vs = edge.vertices();
            let a = index[&Simplex::vertex(vs[0])];
            let b = index[&Simplex::vertex(vs[1])];
            uf.union(a, b);
        }
        uf.count() == 1
    }

    /// Runs every structural check and reports all violations found.
    pub fn validate(&self) -> Diagnostics {
        let purity_violations: Vec<Simplex> = self
            .faces
            .iter()
            .flatten()
            .filter(|f| self.weights.get(f).copied().unwrap_or(0) < 1)
            .cloned()
            .collect();

        let mut disconnected_links = Vec::new();
        if self.dim >= 2 {
            for k in 0..=self.dim - 2 {
                for tau in &self.faces[k] {
                    let link = self.link(tau).expect("face of positive codimension");
                    if !link.complex.is_connected() {
                        disconnected_links.push(tau.clone());
                    }
                }
            }
        }

        let mut weight_identity_violations = Vec::new();
        for k in 0..self.dim {
            for l in k + 1..=self.dim {
                let coeff = binomial(self.dim - k, l - k);
                for sigma in &self.faces[k] {
                    let lhs = coeff * u64::from(self.weights[sigma]);
                    let rhs: u64 = self.faces[l]
                        .iter()
                        .filter(|gamma| gamma.contains(sigma))
                        .map(|gamma| u64::from(self.weights[gamma]))
                        .sum();
                    if lhs != rhs {
                        weight_identity_violations.push((k, l, sigma.clone()));
                    }
                }
            }
        }

        Diagnostics {
            dim: self.dim,
            face_counts: self.faces.iter().map(|v| v.len()).collect(),
            purity_violations,
            complex_connected: self.is_connected(),
            disconnected_links,
            weight_identity_violations,
        }
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    pub fn count(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&i| self.find(i) == i)
            .count()
    }
}

/// The octahedron boundary: antipodal pairs (0,1), (2,3), (4,5).
pub fn octahedron() -> SimplicialComplex {
    let mut tops = Vec::new();
    for a in [0u32, 1] {
        for b in [2u32, 3] {
            for c in [4u32, 5] {
                tops.push(vec![a, b, c]);
            }
        }
    }
    SimplicialComplex::build(&tops).expect("octahedron is a valid complex")
}
