//! Property tests for the structural invariants: weight identities and link
//! composition on random complexes, root-method agreement on random systems,
//! spectral bounds on random graphs, and relabeling invariance of criterion
//! margins.

use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;

use linkgap::complex::{Simplex, SimplicialComplex};
use linkgap::cosine;
use linkgap::criteria;
use linkgap::linalg;
use linkgap::pkl;
use linkgap::spectral::{self, WeightedGraph, ZERO_EIGENVALUE_TOL};

/// Distinct maximal simplices of cardinality `dim + 1` on a small vertex set.
fn maximal_simplices(dim: usize, max_vertex: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    let card = dim + 1;
    prop::collection::vec(
        prop::collection::btree_set(0..max_vertex, card),
        1..6,
    )
    .prop_map(move |sets| {
        let unique: BTreeSet<Vec<u32>> = sets
            .into_iter()
            .filter(|s| s.len() == card)
            .map(|s| s.into_iter().collect())
            .collect();
        unique.into_iter().collect::<Vec<_>>()
    })
    .prop_filter("need at least one top simplex", |tops: &Vec<Vec<u32>>| {
        !tops.is_empty()
    })
}

/// A connected weighted graph: a random spanning path plus extra edges.
fn random_graph() -> impl Strategy<Value = WeightedGraph> {
    (3usize..9, prop::collection::vec((0usize..9, 0usize..9, 0.1f64..3.0), 0..12)).prop_map(
        |(n, extra)| {
            let vertices: Vec<u32> = (0..n as u32).collect();
            let mut edges: HashMap<(u32, u32), f64> = HashMap::new();
            for i in 0..n as u32 - 1 {
                edges.insert((i, i + 1), 1.0);
            }
            for (a, b, w) in extra {
                let (a, b) = (a % n, b % n);
                if a != b {
                    let key = ((a.min(b)) as u32, (a.max(b)) as u32);
                    edges.entry(key).or_insert(w);
                }
            }
            let edge_list: Vec<(u32, u32, f64)> =
                edges.into_iter().map(|((a, b), w)| (a, b, w)).collect();
            WeightedGraph::new(vertices, edge_list).expect("valid by construction")
        },
    )
}

proptest! {
    #[test]
    fn multiplicities_match_brute_force(tops in maximal_simplices(2, 8)) {
        let complex = SimplicialComplex::build(&tops).unwrap();
        let top_faces = complex.faces(complex.dim()).unwrap().to_vec();
        for k in 0..=complex.dim() {
            for face in complex.faces(k).unwrap() {
                let brute = top_faces.iter().filter(|t| t.contains(face)).count() as u32;
                prop_assert_eq!(complex.multiplicity(face).unwrap(), brute);
            }
        }
    }

    #[test]
    fn weight_identity_holds(tops in maximal_simplices(2, 8)) {
        let complex = SimplicialComplex::build(&tops).unwrap();
        prop_assert!(complex.validate().weight_identity_violations.is_empty());
    }

    #[test]
    fn weight_identity_holds_in_3d(tops in maximal_simplices(3, 7)) {
        let complex = SimplicialComplex::build(&tops).unwrap();
        prop_assert!(complex.validate().weight_identity_violations.is_empty());
    }

    #[test]
    fn link_composition(tops in maximal_simplices(2, 8)) {
        let complex = SimplicialComplex::build(&tops).unwrap();
        for edge in complex.faces(1).unwrap() {
            let vs = edge.vertices();
            let inner = complex.link(&Simplex::vertex(vs[0])).unwrap();
            let composed = inner.complex.link(&Simplex::vertex(vs[1])).unwrap();
            let direct = complex.link(edge).unwrap();
            prop_assert_eq!(composed.complex, direct.complex);
        }
    }

    #[test]
    fn root_methods_agree_for_adjacent_dims(
        k in 0usize..3,
        seed_values in prop::collection::vec(-2.0f64..2.0, 10),
    ) {
        use itertools::Itertools;
        let l = k + 1;
        let faces: Vec<Vec<usize>> = (0..=l).combinations(k + 1).collect();
        let s: HashMap<Vec<usize>, f64> = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.clone(), seed_values[i % seed_values.len()] + 0.01 * i as f64))
            .collect();
        let system = pkl::build_system(k, l, &s).unwrap();
        let det = pkl::det_roots(&system).unwrap();
        let con = pkl::constrained_roots(&system).unwrap();
        prop_assert!(!det.degenerate);
        prop_assert_eq!(det.roots.len(), con.roots.len());
        for (a, b) in det.roots.iter().zip(&con.roots) {
            prop_assert!((a - b).abs() <= 1e-7, "{} vs {}", a, b);
        }
    }

    #[test]
    fn constrained_roots_shift_with_s(
        s in prop::collection::vec(-2.0f64..2.0, 3),
        t in -1.0f64..1.0,
    ) {
        let build = |values: [f64; 3]| {
            let mut map = HashMap::new();
            map.insert(vec![0usize, 1], values[0]);
            map.insert(vec![0, 2], values[1]);
            map.insert(vec![1, 2], values[2]);
            pkl::build_system(1, 2, &map).unwrap()
        };
        let base = pkl::constrained_roots(&build([s[0], s[1], s[2]])).unwrap();
        let shifted = pkl::constrained_roots(&build([s[0] + t, s[1] + t, s[2] + t])).unwrap();
        for (a, b) in base.roots.iter().zip(&shifted.roots) {
            prop_assert!((a + t - b).abs() <= 1e-10);
        }
    }

    #[test]
    fn spectra_are_bounded_and_count_components(graph in random_graph()) {
        let summary = spectral::spectrum(&graph, 1).unwrap();
        prop_assert_eq!(summary.eigenvalues.len(), graph.vertex_count());
        let trace: f64 = summary.eigenvalues.iter().sum();
        prop_assert!((trace - graph.vertex_count() as f64).abs() <= 1e-9);
        for &v in &summary.eigenvalues {
            prop_assert!((-1e-9..=2.0 + 1e-9).contains(&v));
        }
        let zeros = summary
            .eigenvalues
            .iter()
            .filter(|&&v| v <= ZERO_EIGENVALUE_TOL)
            .count();
        prop_assert_eq!(zeros, graph.components());
        prop_assert!(summary.lambda_paper <= 2.0 * summary.link_dim_scale as f64 + 1e-9);

        let laplacian = graph.normalized_laplacian();
        let eig = linalg::jacobi_eigen(&laplacian).unwrap();
        prop_assert!(linalg::reconstruction_residual(&laplacian, &eig) <= 1e-8);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cosine_estimates_stay_bounded(graph in random_graph(), seed in 0u64..1000) {
        if !graph.is_connected() {
            return Ok(());
        }
        let est = cosine::estimate_cos_r(&graph, 1, 5, seed).unwrap();
        prop_assert!(est.value.abs() <= 1.0 + 1e-9);
        // recompute the ratio from the witness
        let norms: Vec<f64> = est
            .witness
            .iter()
            .map(|v| v.iter().map(|x| x * x).sum::<f64>().sqrt())
            .collect();
        let mut num = 0.0;
        let mut den = 0.0;
        for &(u, v, w) in graph.edges() {
            let dot: f64 = est.witness[u].iter().zip(&est.witness[v]).map(|(a, b)| a * b).sum();
            num += w * dot;
            den += w * norms[u] * norms[v];
        }
        prop_assert!((est.value - num / den).abs() <= 1e-10);
    }

    #[test]
    fn criterion_margins_survive_relabeling(perm_seed in 0u64..10_000) {
        use rand::prelude::*;
        use rand::seq::SliceRandom;

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed);
        let mut relabel: Vec<u32> = (0..6).collect();
        relabel.shuffle(&mut rng);

        let base = linkgap::complex::octahedron();
        let tops: Vec<Vec<u32>> = base
            .faces(2)
            .unwrap()
            .iter()
            .map(|t| t.vertices().iter().map(|&v| relabel[v as usize]).collect())
            .collect();
        let relabeled = SimplicialComplex::build(&tops).unwrap();

        for check in [criteria::check_zuk_2d, criteria::check_theorem1_2d] {
            let a = check(&base).unwrap();
            let b = check(&relabeled).unwrap();
            let mut ma: Vec<f64> = a.per_simplex.iter().flat_map(|r| r.margins.clone()).collect();
            let mut mb: Vec<f64> = b.per_simplex.iter().flat_map(|r| r.margins.clone()).collect();
            ma.sort_by(|x, y| x.partial_cmp(y).unwrap());
            mb.sort_by(|x, y| x.partial_cmp(y).unwrap());
            prop_assert_eq!(ma.len(), mb.len());
            for (x, y) in ma.iter().zip(&mb) {
                prop_assert!((x - y).abs() <= 1e-12);
            }
        }
    }
}
