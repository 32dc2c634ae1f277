use proptest::prelude::*;

use sspkit::geometry::{always_facet_inequalities, build_skeleton_oracle, enumerate_facets, is_facet};
use sspkit::verify::facets_cut_out_vertices;
use sspkit::io::PolytopeFile;
use sspkit::linalg::{lp_certificate, rank, rat};
use sspkit::skeleton::{bp_path, build_skeleton_e, decompositions, is_edge_e, ssp_path};
use sspkit::{FacetCaps, GroundSet, QMatrix, QVector, SimpleGraph, Subset, ZeroOnePolytope};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = SimpleGraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            SimpleGraph::from_index_edges(GroundSet::range(n), edges).unwrap()
        })
    })
}

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..5usize, 1..6usize).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_transpose_invariant(rows in int_matrix()) {
        let m = QMatrix::from_int_rows(&rows).unwrap();
        let r = rank(&m);
        prop_assert_eq!(r, rank(&m.transpose()));
        prop_assert!(r <= rows.len().min(rows[0].len()));
    }

    #[test]
    fn lp_certificates_check_out(rows in int_matrix(), seed_x in proptest::collection::vec(0i64..3, 6), perturb in -2i64..=2) {
        let m = QMatrix::from_int_rows(&rows).unwrap();
        let x0 = QVector::from_ints(seed_x[..rows[0].len()].iter().copied());
        let b = m.mul_vec(&x0).unwrap();
        // b is reachable by construction
        let cert = lp_certificate(&m, &b).unwrap();
        prop_assert!(cert.is_some());
        let x = cert.unwrap();
        prop_assert!(x.entries().iter().all(|v| *v >= rat(0)));
        prop_assert_eq!(m.mul_vec(&x).unwrap(), b.clone());

        // an arbitrary right-hand side: any certificate must verify
        let mut shifted = b.entries().to_vec();
        shifted[0] += rat(perturb);
        let b2 = QVector::new(shifted);
        if let Some(x) = lp_certificate(&m, &b2).unwrap() {
            prop_assert!(x.entries().iter().all(|v| *v >= rat(0)));
            prop_assert_eq!(m.mul_vec(&x).unwrap(), b2);
        }
    }

    #[test]
    fn stable_sets_match_brute_force(g in graph_strategy(7)) {
        let n = g.vertex_count();
        let brute: Vec<Subset> = {
            let mut v: Vec<Subset> = (0u64..1 << n)
                .map(Subset::from_bits)
                .filter(|s| s.iter().all(|u| s.iter().all(|w| !g.has_edge(u, w))))
                .collect();
            v.sort();
            v
        };
        let stab = g.enumerate_stable_sets();
        prop_assert_eq!(&stab, &brute);
        for &s in &stab {
            for x in s.iter() {
                prop_assert!(stab.binary_search(&s.without(x)).is_ok());
            }
        }
    }

    #[test]
    fn maximal_cliques_are_cliques_and_maximal(g in graph_strategy(7)) {
        let n = g.vertex_count();
        let cliques = g.enumerate_max_cliques();
        for &c in &cliques {
            prop_assert!(g.is_clique(c));
            prop_assert!((0..n).filter(|&v| !c.contains(v)).all(|v| !g.is_clique(c.with(v))));
        }
        // every vertex lies in some maximal clique
        let covered = cliques.iter().fold(Subset::EMPTY, |acc, &c| acc.union(c));
        prop_assert_eq!(covered, Subset::full(n));
    }

    #[test]
    fn decompositions_are_sandwiched(g in graph_strategy(6)) {
        let p = ZeroOnePolytope::stable_set(&g);
        for a in 0..p.vertex_count() {
            for b in 0..p.vertex_count() {
                if a == b {
                    continue;
                }
                let (va, vb) = (p.vertex(a), p.vertex(b));
                let ds = decompositions(&p, a, b);
                prop_assert!(ds.contains(&(a.min(b), a.max(b))));
                for (c, d) in ds {
                    let (vc, vd) = (p.vertex(c), p.vertex(d));
                    prop_assert_eq!(vc.intersection(vd), va.intersection(vb));
                    prop_assert_eq!(vc.union(vd), va.union(vb));
                }
                prop_assert_eq!(is_edge_e(&p, a, b), is_edge_e(&p, b, a));
            }
        }
    }

    #[test]
    fn criterion_matches_oracle(g in graph_strategy(5)) {
        let p = ZeroOnePolytope::stable_set(&g);
        prop_assert!(build_skeleton_e(&p).same_edges(&build_skeleton_oracle(&p)));
    }

    #[test]
    fn constructive_paths_stay_within_r(g in graph_strategy(7), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let p = ZeroOnePolytope::stable_set(&g);
        let r = p.max_cardinality();
        let (a, b) = (p.vertex(i.index(p.vertex_count())), p.vertex(j.index(p.vertex_count())));
        let path = ssp_path(&p, a, b).unwrap();
        prop_assert_eq!(path[0], a);
        prop_assert_eq!(*path.last().unwrap(), b);
        prop_assert!(path.len() - 1 <= r);
        for w in path.windows(2) {
            prop_assert!(is_edge_e(&p, p.index_of(w[0]).unwrap(), p.index_of(w[1]).unwrap()));
        }

        let bp = sspkit::skeleton::birkhoff_restrict(&g);
        let (a, b) = (bp.vertex(i.index(bp.vertex_count())), bp.vertex(j.index(bp.vertex_count())));
        let path = bp_path(&bp, a, b).unwrap();
        prop_assert!(path.len() - 1 <= r);
        for w in path.windows(2) {
            prop_assert!(is_edge_e(&bp, bp.index_of(w[0]).unwrap(), bp.index_of(w[1]).unwrap()));
        }
    }

    #[test]
    fn polytope_files_round_trip(g in graph_strategy(6), birkhoff in any::<bool>()) {
        let p = if birkhoff { sspkit::skeleton::birkhoff_restrict(&g) } else { ZeroOnePolytope::stable_set(&g) };
        let text = serde_json::to_string(&PolytopeFile::from_polytope(&p)).unwrap();
        let back: PolytopeFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.to_polytope().unwrap(), p);
    }

    #[test]
    fn subset_order_is_cardinality_then_positions(a in 0u64..256, b in 0u64..256) {
        let (x, y) = (Subset::from_bits(a), Subset::from_bits(b));
        let key = |s: Subset| (s.len(), s.iter().collect::<Vec<_>>());
        prop_assert_eq!(x.cmp(&y), key(x).cmp(&key(y)));
    }

    #[test]
    fn facet_lists_are_complete(g in graph_strategy(6)) {
        let p = ZeroOnePolytope::stable_set(&g);
        let facets = enumerate_facets(&p, FacetCaps::default()).unwrap();
        prop_assert!(facets.iter().all(|f| is_facet(&p, f).unwrap()));
        prop_assert!(facets_cut_out_vertices(&p, &facets).unwrap());
        let key = |q: &sspkit::Inequality| q.to_ints().unwrap();
        let keys: Vec<_> = facets.iter().map(key).collect();
        for q in always_facet_inequalities(&g) {
            prop_assert!(keys.contains(&key(&q)));
        }
    }
}
