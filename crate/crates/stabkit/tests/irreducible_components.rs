//! Dual-route validation of the component-level operations: every
//! irreducible component reported by the oracle must survive the
//! reduction/verification pipeline, and the verification predicate must
//! agree with oracle membership over an exhaustive candidate sweep.

use std::collections::HashSet;

use stabkit::graph::{cycle_graph, triangle_square_graph, Graph, VertexSet};
use stabkit::ideal::MonomialIdeal;
use stabkit::replication::ReplicationVector;
use stabkit::stab::{check_irreducible_component, reduce_component};
use stabkit::Limits;

fn limits() -> Limits {
    Limits::default()
}

fn test_graphs() -> Vec<Graph> {
    vec![
        Graph::from_edge_labels([("x", "y"), ("y", "z"), ("x", "z")]).unwrap(),
        // paw: triangle with a pendant edge
        Graph::from_edge_labels([("x", "y"), ("y", "z"), ("x", "z"), ("z", "w")]).unwrap(),
        cycle_graph(5),
        triangle_square_graph(),
    ]
}

fn oracle_components(g: &Graph, k: usize) -> HashSet<Vec<u32>> {
    MonomialIdeal::edge_ideal(g)
        .power(k)
        .unwrap()
        .irreducible_decomposition(&limits())
        .unwrap()
        .into_iter()
        .map(|m| m.0)
        .collect()
}

fn indicator(g: &Graph, u: VertexSet) -> Vec<u32> {
    (0..g.len()).map(|i| u32::from(u.contains(i))).collect()
}

/// Forward route: each embedded oracle component, after splitting off its
/// part supported on N(Z), passes the verification predicate at the reduced
/// power, and its reduced exponent vector is again an oracle component.
#[test]
fn oracle_components_survive_reduction_and_check() {
    let _limits = limits();
    let mut embedded_seen = 0usize;
    for g in test_graphs() {
        let ks = if g.len() <= 5 { 2..=3 } else { 2..=2 };
        for k in ks {
            let comps = oracle_components(&g, k);
            for c in &comps {
                let u: VertexSet = c
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, _)| i)
                    .collect();
                let ones = indicator(&g, u);
                let a = ReplicationVector(
                    c.iter().zip(&ones).map(|(&ci, &oi)| ci - oi).collect(),
                );
                if a.is_zero() {
                    continue; // squarefree component: a minimal prime
                }
                let z = g.vertex_set().minus(u);
                let nz = g.neighbors(z).unwrap();
                if u == nz {
                    continue; // minimal prime with multiplicity: reduces to zero
                }
                embedded_seen += 1;
                let (b, k_reduced) =
                    reduce_component(&g, &a, u, k).expect("reduction of a genuine component");
                if b.is_zero() {
                    continue;
                }
                assert!(
                    check_irreducible_component(&g, &b, u, k_reduced).unwrap(),
                    "reduced component rejected: g={g:?} c={c:?} k={k}"
                );
                let reduced_vector: Vec<u32> = b
                    .0
                    .iter()
                    .zip(&ones)
                    .map(|(&bi, &oi)| bi + oi)
                    .collect();
                assert!(
                    oracle_components(&g, k_reduced).contains(&reduced_vector),
                    "reduced vector missing from the oracle at power {k_reduced}"
                );
            }
        }
    }
    assert!(embedded_seen > 0, "the sweep must exercise embedded components");
}

/// Reverse route: over every admissible candidate (U with independent
/// complement, a supported away from N(Z), |a| <= 2), the verification
/// predicate agrees exactly with oracle membership of `a + 1_U`.
#[test]
fn check_agrees_with_oracle_membership() {
    let _limits_ = limits();
    let mut positives = 0usize;
    for g in test_graphs().into_iter().filter(|g| g.len() <= 5) {
        for k in 2..=3 {
            let comps = oracle_components(&g, k);
            let full = g.vertex_set();
            for z_bits in 0..(1u64 << g.len()) {
                let z = VertexSet(z_bits);
                if !g.is_independent(z).unwrap() {
                    continue;
                }
                let u = full.minus(z);
                let region = u.minus(g.neighbors(z).unwrap());
                let region_bits: Vec<usize> = region.iter().collect();
                // All nonzero a supported in the region with entries up to 2.
                let mut candidates: Vec<Vec<u32>> = Vec::new();
                let mut grid = 1u64;
                let cells = region_bits.len() as u32;
                while grid < 3u64.pow(cells) {
                    let mut v = vec![0u32; g.len()];
                    let mut code = grid;
                    for &i in &region_bits {
                        v[i] = (code % 3) as u32;
                        code /= 3;
                    }
                    candidates.push(v);
                    grid += 1;
                }
                for v in candidates {
                    let a = ReplicationVector(v);
                    let vector: Vec<u32> = a
                        .0
                        .iter()
                        .zip(indicator(&g, u))
                        .map(|(&ai, oi)| ai + oi)
                        .collect();
                    let expect = comps.contains(&vector);
                    let got = check_irreducible_component(&g, &a, u, k)
                        .unwrap_or_else(|e| panic!("precondition unexpectedly failed: {e}"));
                    assert_eq!(
                        got, expect,
                        "disagreement: g={g:?} U={u:?} a={:?} k={k}",
                        a.0
                    );
                    if expect {
                        positives += 1;
                    }
                }
            }
        }
    }
    assert!(positives > 0, "the sweep must hit genuine components");
}
