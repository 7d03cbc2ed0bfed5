//! Generalized polygons: closed-form spectral gaps and small incidence-graph
//! constructions used to cross-validate the eigensolver.

use thiserror::Error;

use crate::spectral::{SpectralError, WeightedGraph};

/// Gonalities for which thick generalized polygons exist.
pub const ADMISSIBLE_GONALITIES: [u32; 5] = [2, 3, 4, 6, 8];

#[derive(Debug, Error, PartialEq)]
pub enum PolygonError {
    #[error("no thick generalized {0}-gon exists; m must be one of 2, 3, 4, 6, 8")]
    BadGonality(u32),
    #[error("invalid parameters (s={s}, t={t}) for m={m}: {reason}")]
    BadParams { m: u32, s: u32, t: u32, reason: String },
    #[error("complete bipartite parts must both be at least 2 (got {0}, {1})")]
    TooSmall(u32, u32),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("q={0} exceeds the supported cap of 13")]
    TooLarge(u32),
    #[error(transparent)]
    Graph(#[from] SpectralError),
}

/// Parameters (s, t) of a generalized m-gon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolygonParams {
    pub m: u32,
    pub s: u32,
    pub t: u32,
}

impl PolygonParams {
    pub fn new(m: u32, s: u32, t: u32) -> Result<Self, PolygonError> {
        if !ADMISSIBLE_GONALITIES.contains(&m) {
            return Err(PolygonError::BadGonality(m));
        }
        if s < 1 || t < 1 {
            return Err(PolygonError::BadParams {
                m,
                s,
                t,
                reason: "parameters must be at least 1".into(),
            });
        }
        if m == 3 && s != t {
            return Err(PolygonError::BadParams {
                m,
                s,
                t,
                reason: "a projective plane has s = t".into(),
            });
        }
        Ok(PolygonParams { m, s, t })
    }

    pub fn is_thick(&self) -> bool {
        self.s >= 2 && self.t >= 2
    }
}

/// Smallest positive normalized-Laplacian eigenvalue of a generalized m-gon
/// with parameters (s, t).
pub fn feit_higman_lambda(p: PolygonParams) -> f64 {
    let s = f64::from(p.s);
    let t = f64::from(p.t);
    match p.m {
        2 => 1.0,
        3 => 1.0 - s.sqrt() / (s + 1.0),
        4 => 1.0 - ((s + t) / ((s + 1.0) * (t + 1.0))).sqrt(),
        6 => 1.0 - ((s + t + (s * t).sqrt()) / ((s + 1.0) * (t + 1.0))).sqrt(),
        8 => 1.0 - ((s + t + (2.0 * s * t).sqrt()) / ((s + 1.0) * (t + 1.0))).sqrt(),
        _ => unreachable!("constructor rejects other gonalities"),
    }
}

/// K_{a,b} with unit weights; vertex ids 0..a on one side, a..a+b on the other.
pub fn complete_bipartite(a: u32, b: u32) -> Result<WeightedGraph, PolygonError> {
    if a < 2 || b < 2 {
        return Err(PolygonError::TooSmall(a, b));
    }
    let vertices: Vec<u32> = (0..a + b).collect();
    let mut edges = Vec::with_capacity((a * b) as usize);
    for i in 0..a {
        for j in 0..b {
            edges.push((i, a + j, 1.0));
        }
    }
    Ok(WeightedGraph::new(vertices, edges)?)
}

fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    (2..q).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Point-line incidence graph of the projective plane PG(2, q), built from
/// the 1- and 2-dimensional subspaces of F_q^3. Points get ids 0..N, lines
/// N..2N with N = q^2 + q + 1; a line is identified with the functional whose
/// kernel it is, so incidence is `p · l = 0 (mod q)`.
pub fn projective_plane_incidence(q: u32) -> Result<WeightedGraph, PolygonError> {
    if !is_prime(q) {
        return Err(PolygonError::NotPrime(q));
    }
    if q > 13 {
        return Err(PolygonError::TooLarge(q));
    }
    // Canonical representatives of projective points: (1,a,b), (0,1,b), (0,0,1).
    let mut reps: Vec<[u32; 3]> = Vec::new();
    for a in 0..q {
        for b in 0..q {
            reps.push([1, a, b]);
        }
    }
    for b in 0..q {
        reps.push([0, 1, b]);
    }
    reps.push([0, 0, 1]);
    let n = reps.len() as u32;
    debug_assert_eq!(n, q * q + q + 1);

    let vertices: Vec<u32> = (0..2 * n).collect();
    let mut edges = Vec::new();
    for (pi, p) in reps.iter().enumerate() {
        for (li, l) in reps.iter().enumerate() {
            let dot = (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q;
            if dot == 0 {
                edges.push((pi as u32, n + li as u32, 1.0));
            }
        }
    }
    Ok(WeightedGraph::new(vertices, edges)?)
}
