//! Verification suites: seeded random corpora and the cross-checks between
//! the combinatorial criterion, the LP oracle, facet claims, diameter bounds
//! and partition encodings.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::counterexample::{strict_inclusion_witness, verify_remark};
use crate::error::{Error, Result};
use crate::families::{
    all_set_partitions, arcs_to_partition, build_bell_graph, build_comparability_graph, build_empty_graph,
    build_noncrossing_graph, build_nonnesting_graph, root_poset, subset_arcs, Poset,
};
use crate::geometry::{always_facet_inequalities, build_skeleton_oracle, enumerate_facets, is_facet, is_valid, FacetCaps, Inequality};
use crate::graphs::{GroundSet, Label, SimpleGraph, Subset};
use crate::matroids::{
    basis_polytope, build_graphic, build_partition, build_uniform, check_matroid_axioms, ggms_adjacent,
    independence_polytope, Matroid,
};
use crate::skeleton::{
    birkhoff_restrict, bp_path, build_skeleton_e, is_edge_e, quasimatroid_exchange, ssp_path, ZeroOnePolytope,
};

pub const SUITES: [&str; 8] = [
    "oracle-vs-E",
    "diameter-bounds",
    "facets-always",
    "matroid-E",
    "prop62",
    "remark43",
    "partitions",
    "all",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub graphs: usize,
    pub max_n: usize,
    pub caps: FacetCaps,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 7,
            graphs: 200,
            max_n: 6,
            caps: FacetCaps::default(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub passed: bool,
    pub elapsed_ms: u128,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    fn finish(suite: &str, seed: u64, start: Instant, checks: Vec<Check>) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            seed,
            passed: checks.iter().all(|c| c.passed),
            elapsed_ms: start.elapsed().as_millis(),
            checks,
        }
    }
}

/// Erdős–Rényi graphs with edge probability 1/2 and `n` uniform in `2..=max_n`.
pub fn random_graph_corpus(seed: u64, count: usize, max_n: usize) -> Vec<SimpleGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=max_n.max(2));
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        edges.push((u, v));
                    }
                }
            }
            SimpleGraph::from_index_edges(GroundSet::range(n), edges).expect("positions in range")
        })
        .collect()
}

/// Random posets on `1..=n`: each `i < j` (as integers) is related with probability 1/2.
pub fn random_poset_corpus(seed: u64, count: usize, max_n: usize) -> Vec<Poset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n.max(1));
            let mut rel = Vec::new();
            for i in 1..=n as i64 {
                for j in i + 1..=n as i64 {
                    if rng.gen_bool(0.5) {
                        rel.push((Label::Int(i), Label::Int(j)));
                    }
                }
            }
            Poset::from_relations(GroundSet::range(n), rel).expect("forward relations are acyclic")
        })
        .collect()
}

/// Bell numbers via the Bell triangle.
pub fn bell_number(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().expect("nonempty")];
        for &x in &row {
            let last = *next.last().expect("nonempty");
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

/// `binomial(2n, n) / (n + 1)`.
pub fn catalan_number(n: usize) -> u64 {
    let mut c: u64 = 1;
    for k in 0..n as u64 {
        c = c * (2 * n as u64 - k) / (k + 1);
    }
    c / (n as u64 + 1)
}

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    Ok(match name {
        "oracle-vs-E" => vec![oracle_vs_e(cfg)],
        "diameter-bounds" => vec![diameter_bounds(cfg)],
        "facets-always" => vec![facets_always(cfg)],
        "matroid-E" => vec![matroid_e(cfg)],
        "prop62" => vec![stab_matroid_characterization(cfg)],
        "remark43" => vec![maximal_stable_counterexample(cfg)],
        "partitions" => vec![partitions(cfg)],
        "all" => vec![
            oracle_vs_e(cfg),
            diameter_bounds(cfg),
            facets_always(cfg),
            matroid_e(cfg),
            stab_matroid_characterization(cfg),
            maximal_stable_counterexample(cfg),
            partitions(cfg),
        ],
        other => return Err(Error::contract(format!("unknown suite {other:?}; expected one of {SUITES:?}"))),
    })
}

fn count_check(name: &str, ok: usize, total: usize, failures: &[String]) -> Check {
    let mut detail = format!("{ok}/{total}");
    if let Some(f) = failures.first() {
        detail.push_str(&format!("; first failure: {f}"));
    }
    Check::new(name, ok == total, detail)
}

fn describe(g: &SimpleGraph) -> String {
    format!("n={} edges={:?}", g.vertex_count(), g.edges())
}

pub fn oracle_vs_e(cfg: &VerifyConfig) -> SuiteReport {
    let start = Instant::now();
    let corpus = random_graph_corpus(cfg.seed, cfg.graphs, cfg.max_n);
    let results: Vec<(bool, bool)> = corpus
        .par_iter()
        .map(|g| {
            let ssp = ZeroOnePolytope::stable_set(g);
            let bp = birkhoff_restrict(g);
            (
                build_skeleton_e(&ssp).same_edges(&build_skeleton_oracle(&ssp)),
                build_skeleton_e(&bp).same_edges(&build_skeleton_oracle(&bp)),
            )
        })
        .collect();
    let failures = |pick: fn(&(bool, bool)) -> bool| -> Vec<String> {
        corpus.iter().zip(&results).filter(|(_, r)| !pick(r)).map(|(g, _)| describe(g)).collect()
    };
    let (ssp_fail, bp_fail) = (failures(|r| r.0), failures(|r| r.1));
    let n = corpus.len();
    let checks = vec![
        count_check("SSP skeleton: criterion = oracle", n - ssp_fail.len(), n, &ssp_fail),
        count_check("BP skeleton: criterion = oracle", n - bp_fail.len(), n, &bp_fail),
    ];
    SuiteReport::finish("oracle-vs-E", cfg.seed, start, checks)
}

fn path_is_valid(p: &ZeroOnePolytope, path: &[Subset], a: Subset, b: Subset, bound: usize) -> bool {
    path.first() == Some(&a)
        && path.last() == Some(&b)
        && path.len() - 1 <= bound
        && path.windows(2).all(|w| match (p.index_of(w[0]), p.index_of(w[1])) {
            (Some(i), Some(j)) => i != j && is_edge_e(p, i, j),
            _ => false,
        })
}

/// All-pairs constructive paths; returns the first failing pair, if any.
fn check_paths(
    p: &ZeroOnePolytope,
    bound: usize,
    walk: fn(&ZeroOnePolytope, Subset, Subset) -> Result<Vec<Subset>>,
) -> Option<String> {
    for &a in p.vertices() {
        for &b in p.vertices() {
            match walk(p, a, b) {
                Ok(path) if path_is_valid(p, &path, a, b, bound) => {}
                Ok(path) => {
                    return Some(format!(
                        "invalid path {} -> {} of length {}",
                        p.ground().format_subset(a),
                        p.ground().format_subset(b),
                        path.len() - 1
                    ))
                }
                Err(e) => return Some(e.to_string()),
            }
        }
    }
    None
}

pub fn diameter_bounds(cfg: &VerifyConfig) -> SuiteReport {
    let start = Instant::now();
    let corpus = random_graph_corpus(cfg.seed, cfg.graphs, cfg.max_n);
    let per_graph: Vec<[Option<String>; 4]> = corpus
        .par_iter()
        .map(|g| {
            let ssp = ZeroOnePolytope::stable_set(g);
            let bp = birkhoff_restrict(g);
            let r = ssp.max_cardinality();
            let diam = |p: &ZeroOnePolytope| build_skeleton_e(p).diameter();
            let bound = |d: Option<usize>, what: &str| match d {
                Some(d) if d <= r => None,
                d => Some(format!("{what} diameter {d:?} > r={r} for {}", describe(g))),
            };
            [
                bound(diam(&ssp), "SSP"),
                bound(diam(&bp), "BP"),
                check_paths(&ssp, r, ssp_path).map(|e| format!("{e} ({})", describe(g))),
                check_paths(&bp, r, bp_path).map(|e| format!("{e} ({})", describe(g))),
            ]
        })
        .collect();
    let n = corpus.len();
    let names = [
        "SSP diameter <= r",
        "BP diameter <= r",
        "ssp_path walks valid and within r",
        "bp_path walks valid and within r",
    ];
    let mut checks: Vec<Check> = names
        .iter()
        .enumerate()
        .map(|(k, name)| {
            let fails: Vec<String> = per_graph.iter().filter_map(|r| r[k].clone()).collect();
            count_check(name, n - fails.len(), n, &fails)
        })
        .collect();

    let cube = ZeroOnePolytope::stable_set(&build_empty_graph(3).expect("small"));
    let cube_d = build_skeleton_e(&cube).diameter();
    checks.push(Check::new(
        "3-cube diameter = 3 = r",
        cube_d == Some(3) && cube.max_cardinality() == 3,
        format!("diameter {cube_d:?}, r = {}", cube.max_cardinality()),
    ));
    let bell = ZeroOnePolytope::stable_set(&build_bell_graph(3).expect("small"));
    let bell_d = build_skeleton_e(&bell).diameter();
    checks.push(Check::new(
        "Bell_3 diameter = 2 = r",
        bell_d == Some(2) && bell.max_cardinality() == 2,
        format!("diameter {bell_d:?}, r = {}", bell.max_cardinality()),
    ));
    for (name, m) in matroid_catalog() {
        let p = independence_polytope(&m);
        let d = build_skeleton_e(&p).diameter();
        checks.push(Check::new(
            format!("{name} independence polytope diameter <= rank"),
            d.is_some_and(|d| d <= m.rank()),
            format!("diameter {d:?}, rank {}", m.rank()),
        ));
    }
    SuiteReport::finish("diameter-bounds", cfg.seed, start, checks)
}

/// Matroids checked against the oracle: `U_{1,3}`, `U_{2,4}`, `U_{2,5}`,
/// partition `(2,3)` and the graphic matroid of `K_4`.
pub fn matroid_catalog() -> Vec<(&'static str, Matroid)> {
    vec![
        ("U(1,3)", build_uniform(3, 1).expect("valid")),
        ("U(2,4)", build_uniform(4, 2).expect("valid")),
        ("U(2,5)", build_uniform(5, 2).expect("valid")),
        ("partition(2,3)", build_partition(&[2, 3]).expect("valid")),
        (
            "graphic(K4)",
            build_graphic(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).expect("valid"),
        ),
    ]
}

pub fn matroid_e(cfg: &VerifyConfig) -> SuiteReport {
    let start = Instant::now();
    let mut checks = Vec::new();
    for (name, m) in matroid_catalog() {
        for p in [independence_polytope(&m), basis_polytope(&m)] {
            let e = build_skeleton_e(&p);
            let o = build_skeleton_oracle(&p);
            checks.push(Check::new(
                format!("{name} {}: criterion = oracle", p.kind().tag()),
                e.same_edges(&o),
                format!("{} vertices, {} criterion edges, {} oracle edges", p.vertex_count(), e.edge_count(), o.edge_count()),
            ));
        }
        let bp = basis_polytope(&m);
        let mut mismatches = 0;
        let mut exchange_ok = true;
        for i in 0..bp.vertex_count() {
            for j in 0..bp.vertex_count() {
                if i == j {
                    continue;
                }
                let (a, b) = (bp.vertex(i), bp.vertex(j));
                if ggms_adjacent(a, b) != is_edge_e(&bp, i, j) {
                    mismatches += 1;
                }
                // On matroid bases the exchange step is a single swap.
                for x in a.difference(b).iter() {
                    match quasimatroid_exchange(&bp, a, b, x) {
                        Ok((e, f)) => {
                            let next = a.difference(e).union(f);
                            exchange_ok &= e.len() == 1 && f.len() == 1 && e.contains(x) && m.is_basis(next);
                        }
                        Err(_) => exchange_ok = false,
                    }
                }
            }
        }
        checks.push(Check::new(
            format!("{name} bases: criterion = |AΔB| = 2"),
            mismatches == 0,
            format!("{mismatches} mismatching ordered pairs"),
        ));
        checks.push(Check::new(
            format!("{name} bases: exchange step is a single swap"),
            exchange_ok,
            String::new(),
        ));
    }
    SuiteReport::finish("matroid-E", cfg.seed, start, checks)
}

pub fn stab_matroid_characterization(cfg: &VerifyConfig) -> SuiteReport {
    let start = Instant::now();
    let corpus = random_graph_corpus(cfg.seed, cfg.graphs, cfg.max_n);
    let mut equiv_fail = Vec::new();
    let mut family_fail = Vec::new();
    let mut matroidal = 0;
    for g in &corpus {
        let stab = g.enumerate_stable_sets();
        let axioms = check_matroid_axioms(&stab).is_ok();
        if axioms != g.is_union_of_complete_graphs() {
            equiv_fail.push(describe(g));
        }
        if axioms {
            matroidal += 1;
            let comps = g.components();
            let family: Vec<Subset> = g
                .ground()
                .full()
                .submasks()
                .filter(|s| comps.iter().all(|c| s.intersection(*c).len() <= 1))
                .collect();
            let same = Matroid::new(g.ground().clone(), family)
                .map(|m| independence_polytope(&m).vertices() == stab.as_slice())
                .unwrap_or(false);
            if !same {
                family_fail.push(describe(g));
            }
        }
    }
    let n = corpus.len();
    let checks = vec![
        count_check(
            "Stab(G) is a matroid <=> G is a union of complete graphs",
            n - equiv_fail.len(),
            n,
            &equiv_fail,
        ),
        count_check(
            "matroidal cases equal the component partition matroid",
            matroidal - family_fail.len(),
            matroidal,
            &family_fail,
        ),
    ];
    SuiteReport::finish("prop62", cfg.seed, start, checks)
}

pub fn maximal_stable_counterexample(cfg: &VerifyConfig) -> SuiteReport {
    let start = Instant::now();
    let mut checks = Vec::new();
    match verify_remark() {
        Ok(report) => {
            for c in report.clauses {
                checks.push(Check::new(c.clause, c.passed, c.detail));
            }
            let cert: Vec<String> = report.oracle_certificate.iter().map(|(s, g)| format!("{g}*{s}")).collect();
            checks.push(Check::new("oracle certificate", true, cert.join(" + ")));
        }
        Err(e) => checks.push(Check::new("counterexample", false, e.to_string())),
    }
    let w = strict_inclusion_witness();
    checks.push(Check::new(
        "truncated cube: criterion = oracle",
        w.truncated_cube_criterion_matches,
        String::new(),
    ));
    checks.push(Check::new(
        "truncated cube is not a stable set family",
        !w.truncated_cube_is_stable_set_family,
        String::new(),
    ));
    checks.push(Check::new(
        "maximal stable set polytope: criterion != oracle",
        !w.remark_criterion_matches,
        String::new(),
    ));
    SuiteReport::finish("remark43", cfg.seed, start, checks)
}

/// Partitions encoded by the stable sets of a pair graph.
pub fn encoded_partitions(g: &SimpleGraph, n: usize) -> Result<Vec<crate::families::SetPartition>> {
    g.enumerate_stable_sets()
        .into_iter()
        .map(|s| arcs_to_partition(n, &subset_arcs(g.ground(), s)?))
        .collect()
}

pub fn partitions(cfg: &VerifyConfig) -> SuiteReport {
    let start = Instant::now();
    let max_n = cfg.max_n.max(1);
    let mut checks = Vec::new();
    for n in 1..=max_n {
        let all = all_set_partitions(n);
        let result = (|| -> Result<Vec<Check>> {
            let mut out = Vec::new();
            let bell = build_bell_graph(n)?;
            let nn = build_nonnesting_graph(n)?;
            let nc = build_noncrossing_graph(n)?;
            let (b, c) = (bell_number(n), catalan_number(n));
            let counts = [
                bell.enumerate_stable_sets().len() as u64,
                nn.enumerate_stable_sets().len() as u64,
                nc.enumerate_stable_sets().len() as u64,
            ];
            out.push(Check::new(
                format!("n={n}: |Stab| = Bell, Catalan, Catalan"),
                counts == [b, c, c],
                format!("counts {counts:?}, expected [{b}, {c}, {c}]"),
            ));
            let mut images = Vec::new();
            for g in [&bell, &nn, &nc] {
                let mut img = encoded_partitions(g, n)?;
                let len = img.len();
                img.sort();
                img.dedup();
                images.push((img, len));
            }
            let mut everything = all.clone();
            everything.sort();
            let mut nonnesting: Vec<_> = all.iter().filter(|p| p.is_nonnesting()).cloned().collect();
            nonnesting.sort();
            let mut noncrossing: Vec<_> = all.iter().filter(|p| p.is_noncrossing()).cloned().collect();
            noncrossing.sort();
            for ((img, len), (what, target)) in images
                .iter()
                .zip([("all", &everything), ("nonnesting", &nonnesting), ("noncrossing", &noncrossing)])
            {
                out.push(Check::new(
                    format!("n={n}: encoding is a bijection onto {what} partitions"),
                    img.len() == *len && img == target,
                    format!("{} distinct images of {len} stable sets; {} targets", img.len(), target.len()),
                ));
            }
            if n <= 3 {
                out.push(Check::new(
                    format!("n={n}: Bell, NN and NC graphs coincide"),
                    bell == nn && nn == nc,
                    String::new(),
                ));
            }
            Ok(out)
        })();
        match result {
            Ok(c) => checks.extend(c),
            Err(e) => checks.push(Check::new(format!("n={n}"), false, e.to_string())),
        }
    }
    SuiteReport::finish("partitions", cfg.seed, start, checks)
}

/// Chain-polytope facet count against `|ground| + #maximal chains`; a poset
/// on no elements gives a point, which has no facets.
pub fn chain_polytope_facet_check(p: &Poset, caps: FacetCaps) -> Result<(usize, usize)> {
    let g = build_comparability_graph(p);
    let ssp = ZeroOnePolytope::stable_set(&g);
    let facets = enumerate_facets(&ssp, caps)?;
    let want = if g.vertex_count() == 0 { 0 } else { g.vertex_count() + p.maximal_chains().len() };
    Ok((facets.len(), want))
}

/// Row and column inequalities of the Bell polytope: for each `i`,
/// `sum_{j > i} x_(i,j) <= 1`, and for each `j`, `sum_{i < j} x_(i,j) <= 1`.
pub fn bell_row_column_inequalities(n: usize) -> Result<Vec<Inequality>> {
    let g = build_bell_graph(n)?;
    let ground = g.ground();
    let d = ground.len();
    let mut out = Vec::new();
    for i in 1..n as i64 {
        let row = ground.subset((i + 1..=n as i64).map(|j| Label::Pair(i, j)))?;
        out.push(Inequality::subset_sum(d, row, 1));
    }
    for j in 2..=n as i64 {
        let col = ground.subset((1..j).map(|i| Label::Pair(i, j)))?;
        out.push(Inequality::subset_sum(d, col, 1));
    }
    Ok(out)
}

pub fn facets_always(cfg: &VerifyConfig) -> SuiteReport {
    let start = Instant::now();
    let corpus = random_graph_corpus(cfg.seed, cfg.graphs, cfg.max_n);
    let fails: Vec<String> = corpus
        .par_iter()
        .filter_map(|g| {
            let p = ZeroOnePolytope::stable_set(g);
            always_facet_inequalities(g).into_iter().find_map(|q| {
                let ok = is_valid(&p, &q) && is_facet(&p, &q).unwrap_or(false);
                (!ok).then(|| format!("{q} fails for {}", describe(g)))
            })
        })
        .collect();
    let mut checks = vec![count_check(
        "nonnegativity and maximal-clique inequalities are facets",
        corpus.len() - fails.len(),
        corpus.len(),
        &fails,
    )];

    for n in 1..=4 {
        let check = match root_poset(n).and_then(|p| chain_polytope_facet_check(&p, cfg.caps)) {
            Ok((got, want)) => Check::new(format!("NN_{n}: facets = |ground| + #maximal chains"), got == want, format!("{got} facets, expected {want}")),
            Err(e) => Check::new(format!("NN_{n}"), false, e.to_string()),
        };
        checks.push(check);
    }
    let posets = random_poset_corpus(cfg.seed, cfg.graphs.min(50), 6);
    let poset_fails: Vec<String> = posets
        .par_iter()
        .filter_map(|p| match chain_polytope_facet_check(p, cfg.caps) {
            Ok((got, want)) if got == want => None,
            Ok((got, want)) => Some(format!("{got} != {want} for relations {:?}", p.relations())),
            Err(e) => Some(e.to_string()),
        })
        .collect();
    checks.push(count_check(
        "random posets: facets = |ground| + #maximal chains",
        posets.len() - poset_fails.len(),
        posets.len(),
        &poset_fails,
    ));
    checks.push(bell4_facet_check(cfg.caps));
    SuiteReport::finish("facets-always", cfg.seed, start, checks)
}

/// Facets of the Bell polytope for `n = 4` against nonnegativity plus the
/// row/column family. Single-term members of the family (`x_(3,4) <= 1`,
/// `x_(1,2) <= 1`) are dominated by longer ones and are not facets.
pub fn bell4_facet_check(caps: FacetCaps) -> Check {
    let run = || -> Result<Check> {
        let g = build_bell_graph(4)?;
        let p = ZeroOnePolytope::stable_set(&g);
        let mut facets = enumerate_facets(&p, caps)?;
        let d = g.vertex_count();
        let mut expected: Vec<Inequality> = (0..d).map(|v| Inequality::nonnegativity(d, v)).collect();
        let family = bell_row_column_inequalities(4)?;
        let (multi, single): (Vec<Inequality>, Vec<Inequality>) =
            family.into_iter().partition(|q| q.as_unit_sum().is_some_and(|s| s.len() >= 2));
        expected.extend(multi);
        let key = |q: &Inequality| q.to_ints();
        facets.sort_by_key(key);
        expected.sort_by_key(key);
        expected.dedup();
        let singles_not_facets = single.iter().all(|q| is_valid(&p, q) && !is_facet(&p, q).unwrap_or(true));
        Ok(Check::new(
            "Bell_4: facets = nonnegativity + row/column family",
            facets == expected && singles_not_facets,
            format!("{} facets, {} expected", facets.len(), expected.len()),
        ))
    };
    run().unwrap_or_else(|e| Check::new("Bell_4 facets", false, e.to_string()))
}

/// The extra hyperplane reported for the noncrossing polytope with `n = 6`:
/// ten unit coefficients, right-hand side 2.
pub const NC6_REPORTED_EXTRA: [(i64, i64); 10] = [
    (1, 3),
    (1, 5),
    (1, 6),
    (2, 3),
    (2, 4),
    (2, 5),
    (2, 6),
    (4, 5),
    (4, 6),
    (5, 6),
];

/// Every 0/1 point satisfying all of `facets` is a vertex of `p`.
pub fn facets_cut_out_vertices(p: &ZeroOnePolytope, facets: &[Inequality]) -> Result<bool> {
    let d = p.ground().len();
    if d > 24 {
        return Err(Error::SizeLimit(format!("exhaustive 0/1 check in dimension {d}")));
    }
    let ints: Vec<(Vec<i64>, i64)> = facets
        .iter()
        .map(|f| f.to_ints().ok_or_else(|| Error::contract("facet coefficient exceeds i64")))
        .collect::<Result<_>>()?;
    let ok = (0u64..1 << d).into_par_iter().all(|bits| {
        let s = Subset::from_bits(bits);
        let inside = ints.iter().all(|(c, m)| s.iter().map(|i| c[i]).sum::<i64>() <= *m);
        !inside || p.contains(s)
    });
    Ok(ok)
}

#[derive(Clone, Debug, Serialize)]
pub struct Nc6Report {
    pub facet_count: usize,
    pub nonnegativity: usize,
    pub clique: usize,
    pub extra: Vec<String>,
    pub checks: Vec<Check>,
}

/// Facet description of the noncrossing polytope for `n = 6`.
pub fn nc6_facets(caps: FacetCaps) -> Result<Nc6Report> {
    let g = build_noncrossing_graph(6)?;
    let p = ZeroOnePolytope::stable_set(&g);
    let d = g.vertex_count();
    let facets = enumerate_facets(&p, caps)?;
    let cliques = g.enumerate_max_cliques();
    let nonneg = facets.iter().filter(|f| f.as_nonnegativity().is_some()).count();
    let clique = facets
        .iter()
        .filter(|f| f.as_unit_sum().is_some_and(|s| cliques.contains(&s)))
        .count();
    let extras: Vec<&Inequality> = facets
        .iter()
        .filter(|f| f.as_nonnegativity().is_none() && !f.as_unit_sum().is_some_and(|s| cliques.contains(&s)))
        .collect();
    let describe_ineq = |q: &Inequality| -> String {
        let (c, m) = q.to_ints().expect("small coefficients");
        let terms: Vec<String> = (0..d)
            .filter(|&i| c[i] != 0)
            .map(|i| {
                if c[i] == 1 {
                    format!("x{}", g.ground().label(i))
                } else {
                    format!("{}*x{}", c[i], g.ground().label(i))
                }
            })
            .collect();
        format!("{} <= {m}", terms.join(" + "))
    };
    let reported = Inequality::subset_sum(
        d,
        g.ground().subset(NC6_REPORTED_EXTRA.iter().map(|&a| Label::from(a)))?,
        2,
    );
    let reported_valid = is_valid(&p, &reported);
    let worst = p.vertices().iter().map(|&v| reported.lhs_at(v)).max().expect("vertices");
    let mut checks = vec![
        Check::new("32 facets", facets.len() == 32, format!("{} facets", facets.len())),
        Check::new("15 nonnegativity facets", nonneg == 15, format!("{nonneg}")),
        Check::new(
            "16 maximal-clique facets",
            clique == 16 && cliques.len() == 16,
            format!("{clique} clique facets, {} maximal cliques", cliques.len()),
        ),
        Check::new("exactly one extra facet", extras.len() == 1, format!("{}", extras.len())),
        Check::new(
            "extra facet equals the reported hyperplane (rhs 2)",
            extras.len() == 1 && extras[0].to_ints() == reported.to_ints(),
            format!(
                "reported hyperplane {} on NC_6 (max lhs over vertices = {worst})",
                if reported_valid { "is valid" } else { "is NOT valid" }
            ),
        ),
    ];
    let every_facet = facets.iter().all(|f| is_facet(&p, f).unwrap_or(false));
    checks.push(Check::new("every listed inequality is facet-defining", every_facet, String::new()));
    checks.push(Check::new(
        "listed facets cut out exactly the vertices among 0/1 points",
        facets_cut_out_vertices(&p, &facets)?,
        "exhaustive over 2^15 points".to_string(),
    ));
    Ok(Nc6Report {
        facet_count: facets.len(),
        nonnegativity: nonneg,
        clique,
        extra: extras.iter().map(|q| describe_ineq(q)).collect(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_seeded() {
        let a = random_graph_corpus(7, 20, 6);
        let b = random_graph_corpus(7, 20, 6);
        assert_eq!(a, b);
        assert!(a.iter().all(|g| (2..=6).contains(&g.vertex_count())));
        assert_ne!(a, random_graph_corpus(8, 20, 6));
    }

    #[test]
    fn number_oracles() {
        let bells: Vec<u64> = (0..8).map(bell_number).collect();
        assert_eq!(bells, [1, 1, 2, 5, 15, 52, 203, 877]);
        let cats: Vec<u64> = (0..8).map(catalan_number).collect();
        assert_eq!(cats, [1, 1, 2, 5, 14, 42, 132, 429]);
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", &VerifyConfig::default()).is_err());
    }

    #[test]
    fn small_suites_pass() {
        let cfg = VerifyConfig {
            graphs: 10,
            max_n: 4,
            ..VerifyConfig::default()
        };
        for name in ["oracle-vs-E", "prop62", "partitions", "remark43"] {
            for r in run_suite(name, &cfg).unwrap() {
                assert!(r.passed, "{name}: {:?}", r.checks);
            }
        }
    }
}
