//! Acceptance suite: every top-level result the library promises, each run
//! at its stated time budget, one pass/fail line per criterion.

use std::time::{Duration, Instant};

use stabkit::corpus::{self, connected_non_bipartite_up_to_iso, run_invariant_suites};
use stabkit::ear::{min_critical_making, nu_star, phi_psi};
use stabkit::graph::{
    cycle_graph, triangle_square_graph, friendship_graph, triangle_hendecagon_graph, triangle_polygon_graph,
    Graph, VertexSet,
};
use stabkit::ideal::{Monomial, MonomialIdeal};
use stabkit::matching::is_factor_critical;
use stabkit::replication::{make_factor_critical, replication_matching_number, ReplicationVector};
use stabkit::stab::{analyze, ass_powers, astab_for_prime, check_irreducible_component, stab_bounds};
use stabkit::Limits;

fn limits() -> Limits {
    Limits::default()
}

struct Criterion {
    label: &'static str,
    budget: Duration,
    start: Instant,
}

impl Criterion {
    fn new(label: &'static str, budget: Duration) -> Self {
        Criterion {
            label,
            budget,
            start: Instant::now(),
        }
    }

    fn finish(self) {
        let elapsed = self.start.elapsed();
        assert!(
            elapsed <= self.budget,
            "FAIL {}: took {elapsed:?}, budget {:?}",
            self.label,
            self.budget
        );
        println!("PASS {} ({elapsed:?})", self.label);
    }
}

fn triangle() -> Graph {
    Graph::from_edge_labels([("x", "y"), ("y", "z"), ("x", "z")]).unwrap()
}

#[test]
fn criterion_1_triangle_square_ear_and_replication() {
    let c = Criterion::new(
        "criterion 1: triangle-square phi/psi, nu*, critical-making, factor-criticalization",
        Duration::from_secs(1),
    );
    let g = triangle_square_graph();
    assert_eq!(phi_psi(&g, &limits()).unwrap(), (1, 2));
    assert_eq!(nu_star(&g, g.vertex_set(), &limits()).unwrap(), 5);
    let (size, witness) = min_critical_making(&g, &limits()).unwrap();
    assert_eq!(size, 3);
    let contracted = stabkit::ear::contract(&g, &witness).unwrap();
    assert!(is_factor_critical(&contracted).unwrap());
    let fc = make_factor_critical(&g, &limits()).unwrap();
    assert_eq!(fc.a.total(), 3);
    assert!(is_factor_critical(&fc.replicated.graph).unwrap());
    assert_eq!(replication_matching_number(&fc), 5);
    c.finish();
}

#[test]
fn criterion_2_triangle_square_ass_chain() {
    let c = Criterion::new(
        "criterion 2: triangle-square astab = dstab = 4 with the exact Ass chain",
        Duration::from_secs(5),
    );
    let g = triangle_square_graph();
    let analysis = analyze(&g, &limits()).unwrap();
    assert_eq!((analysis.astab, analysis.dstab), (4, 4));

    let k: Vec<Vec<VertexSet>> = (1..=4)
        .map(|p| ass_powers(&g, p, &limits()).unwrap())
        .collect();
    let full = g.vertex_set();
    let expect_k2: Vec<VertexSet> = [["e", "g"], ["f", "h"], ["g", "h"]]
        .iter()
        .map(|z| full.minus(g.set_of(z.iter().copied()).unwrap()))
        .collect();
    let mut added2: Vec<VertexSet> = k[1].iter().copied().filter(|u| !k[0].contains(u)).collect();
    added2.sort_unstable();
    let mut expect2 = expect_k2;
    expect2.sort_unstable();
    assert_eq!(added2, expect2);
    assert_eq!(k[2], k[1]);
    let mut added4: Vec<VertexSet> = k[3].iter().copied().filter(|u| !k[2].contains(u)).collect();
    added4.sort_unstable();
    let mut expect4 = vec![full, full.minus(g.set_of(["h"]).unwrap())];
    expect4.sort_unstable();
    assert_eq!(added4, expect4);
    c.finish();
}

#[test]
fn criterion_3_odd_cycles() {
    for (n, expect) in [(3usize, 2usize), (5, 3), (7, 4)] {
        let c = Criterion::new(
            match n {
                3 => "criterion 3: C_3 astab = dstab = 2",
                5 => "criterion 3: C_5 astab = dstab = 3, bound tight",
                _ => "criterion 3: C_7 astab = dstab = 4",
            },
            Duration::from_secs(1),
        );
        let g = cycle_graph(n);
        let analysis = analyze(&g, &limits()).unwrap();
        assert_eq!((analysis.astab, analysis.dstab), (expect, expect));
        if n == 5 {
            let (_, astab_bound) = stab_bounds(&g, &limits()).unwrap();
            assert_eq!(astab_bound, 3);
        }
        c.finish();
    }
}

#[test]
fn criterion_4_friendship_graphs() {
    let c = Criterion::new(
        "criterion 4: n triangles sharing a vertex, n = 2, 3",
        Duration::from_secs(5),
    );
    for n in [2usize, 3] {
        let g = friendship_graph(n);
        let analysis = analyze(&g, &limits()).unwrap();
        assert_eq!((analysis.astab, analysis.dstab), (2, 2));
        let k1 = ass_powers(&g, 1, &limits()).unwrap();
        for i in 2..=4 {
            let ki = ass_powers(&g, i, &limits()).unwrap();
            let mut expect = k1.clone();
            expect.push(g.vertex_set());
            expect.sort_unstable();
            assert_eq!(ki, expect, "Ass(I^{i}) must be Ass(I) plus the maximal ideal");
        }
    }
    c.finish();
}

#[test]
fn criterion_5_triangle_hendecagon() {
    let c = Criterion::new(
        "criterion 5: 13-vertex triangle+hendecagon dstab = 6, astab = 8",
        Duration::from_secs(60),
    );
    let g = triangle_hendecagon_graph();
    let analysis = analyze(&g, &limits()).unwrap();
    assert_eq!((analysis.dstab, analysis.astab), (6, 8));
    let full = g.vertex_set();
    let u6 = full.minus(g.set_of(["a6"]).unwrap());
    let u3 = full.minus(g.set_of(["a3"]).unwrap());
    assert_eq!(astab_for_prime(&g, u6, &limits()).unwrap(), Some(7));
    assert_eq!(astab_for_prime(&g, u3, &limits()).unwrap(), Some(8));
    c.finish();
}

#[test]
fn criterion_6_triangle_polygon_family() {
    let c = Criterion::new(
        "criterion 6: 2l+3 family dstab = l+1, astab = 2l-2 for l = 3, 4",
        Duration::from_secs(60),
    );
    for l in [3usize, 4] {
        let g = triangle_polygon_graph(l);
        let analysis = analyze(&g, &limits()).unwrap();
        assert_eq!(
            (analysis.dstab, analysis.astab),
            (l + 1, 2 * l - 2),
            "l = {l}"
        );
    }
    c.finish();
}

#[test]
fn criterion_7_oracle_equivalence() {
    let c = Criterion::new(
        "criterion 7: formula = oracle on every connected non-bipartite graph <= 6 vertices, k = 1..3",
        Duration::from_secs(600),
    );
    let mut checked = 0usize;
    for n in 3..=6 {
        for g in connected_non_bipartite_up_to_iso(n) {
            let ideal = MonomialIdeal::edge_ideal(&g);
            let mut formula_prev: Vec<VertexSet> = Vec::new();
            let mut oracle_prev: Vec<VertexSet> = Vec::new();
            for k in 1..=3 {
                let formula = ass_powers(&g, k, &limits()).unwrap();
                let oracle = ideal
                    .power(k)
                    .unwrap()
                    .associated_primes(&limits())
                    .unwrap();
                assert_eq!(
                    formula,
                    oracle,
                    "n = {n}, k = {k}, edges {:?}",
                    g.edges()
                );
                assert!(formula_prev.iter().all(|u| formula.contains(u)));
                assert!(oracle_prev.iter().all(|u| oracle.contains(u)));
                formula_prev = formula;
                oracle_prev = oracle;
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 115);
    c.finish();
}

#[test]
fn criterion_8_property_suite() {
    let c = Criterion::new(
        "criterion 8: invariant families on the corpus <= 7 vertices",
        Duration::from_secs(900),
    );
    let results = run_invariant_suites(7, true, 0, 1, &limits());
    let required = [
        "ear-count-identity",
        "szigeti-equivalence",
        "replication-lower-bound",
        "phi-odd-equals-phi",
        "stab-bounds-dominate",
        "factor-critical-iff-phi-psi-zero",
    ];
    for name in required {
        let family = results
            .iter()
            .find(|r| r.name == name)
            .unwrap_or_else(|| panic!("family {name} missing"));
        assert!(family.checked > 0);
        assert!(
            family.passed(),
            "family {name} failed: {:?}",
            family.failures.iter().take(3).collect::<Vec<_>>()
        );
        println!("  family {name}: {} graphs", family.checked);
    }
    for family in &results {
        assert!(family.passed(), "family {} failed", family.name);
    }
    c.finish();
}

#[test]
fn criterion_9_component_checks() {
    let c = Criterion::new(
        "criterion 9: irreducible-component membership vs oracle decomposition",
        Duration::from_secs(60),
    );
    let t = triangle();
    let ones = ReplicationVector::ones_on(3, t.vertex_set());
    assert!(check_irreducible_component(&t, &ones, t.vertex_set(), 2).unwrap());
    let comps = MonomialIdeal::edge_ideal(&t)
        .power(2)
        .unwrap()
        .irreducible_decomposition(&limits())
        .unwrap();
    assert!(comps.contains(&Monomial(vec![2, 2, 2])));

    let c5 = cycle_graph(5);
    let ones = ReplicationVector::ones_on(5, c5.vertex_set());
    assert!(check_irreducible_component(&c5, &ones, c5.vertex_set(), 3).unwrap());
    let comps = MonomialIdeal::edge_ideal(&c5)
        .power(3)
        .unwrap()
        .irreducible_decomposition(&limits())
        .unwrap();
    assert!(comps.contains(&Monomial(vec![2; 5])));
    c.finish();
}

/// The decomposition witness behind criterion 1, pinned: the deterministic
/// construction reproduces the worked example's vector exactly.
#[test]
fn constructive_vector_is_pinned() {
    let g = triangle_square_graph();
    let fc = make_factor_critical(&g, &limits()).unwrap();
    assert_eq!(fc.a.0, vec![0, 0, 1, 1, 1, 0, 0, 0]);
    assert_eq!(fc.replicated.graph.len(), 11);
    assert!(fc.witness.ears.iter().all(|e| e.is_odd()));
    fc.witness.validate().unwrap();
}

/// Oracle sanity beyond the per-criterion checks: components of I^2 of the
/// triangle-square graph intersect back to the ideal and their radicals agree with
/// the formula at k = 2.
#[test]
fn triangle_square_oracle_cross_checks() {
    let g = triangle_square_graph();
    let ideal = MonomialIdeal::edge_ideal(&g);
    let sq = ideal.power(2).unwrap();
    let comps = sq.irreducible_decomposition(&limits()).unwrap();
    let mut intersection: Option<MonomialIdeal> = None;
    for comp in &comps {
        let c = MonomialIdeal::from_component(comp);
        intersection = Some(match intersection {
            None => c,
            Some(acc) => acc.intersect(&c),
        });
    }
    assert_eq!(intersection.unwrap(), sq);
    let mut oracle: Vec<VertexSet> = comps.iter().map(|c| c.support()).collect();
    oracle.sort_unstable();
    oracle.dedup();
    assert_eq!(oracle, ass_powers(&g, 2, &limits()).unwrap());

    // Random-monomial membership agreement between the ideal and its
    // components.
    let mut rng = corpus::SplitMix64::new(42);
    for _ in 0..200 {
        let m = Monomial((0..g.len()).map(|_| (rng.next_u64() % 5) as u32).collect());
        let direct = sq.contains(&m);
        let via_components = comps
            .iter()
            .all(|c| MonomialIdeal::from_component(c).contains(&m));
        assert_eq!(direct, via_components);
    }
}
