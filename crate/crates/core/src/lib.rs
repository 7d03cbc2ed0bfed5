//! Spectral-gap and cosine criteria for finite simplicial complexes.
//!
//! The crate builds pure weighted complexes, computes normalized-Laplacian
//! spectra of their links, and evaluates the local criteria that certify
//! vanishing of L²-cohomology (and hence property (T) under the usual
//! hypotheses on the ambient action): the per-link gap bound, the edge and
//! triangle conditions on 2-complexes, the general root criterion on the
//! incidence kernel, and the cosine-matrix positive-definiteness test.

pub mod complex;
pub mod cosine;
pub mod criteria;
pub mod io;
pub mod linalg;
pub mod pkl;
pub mod polygon;
pub mod report;
pub mod spectral;
