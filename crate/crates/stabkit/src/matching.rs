//! Maximum matching (Edmonds' blossom algorithm), factor-criticality tests,
//! and the Gallai-Edmonds partition.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::{par, Error, Result};

const NONE: usize = usize::MAX;

/// The Gallai-Edmonds triple of an analyzed (sub)graph. `d` is the set of
/// vertices missed by at least one maximum matching, `a` its external
/// neighborhood, `c` the rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GEPartition {
    pub d: VertexSet,
    pub a: VertexSet,
    pub c: VertexSet,
}

/// Size of a maximum matching of the subgraph induced on `mask`, by
/// augmenting paths with blossom contraction.
pub fn matching_size_within(g: &Graph, mask: VertexSet) -> usize {
    let n = g.len();
    let mut mate = vec![NONE; n];
    // Greedy seed in canonical order.
    for v in mask.iter() {
        if mate[v] == NONE {
            if let Some(u) = g
                .adjacency(v)
                .intersect(mask)
                .iter()
                .find(|&u| mate[u] == NONE)
            {
                mate[v] = u;
                mate[u] = v;
            }
        }
    }
    for start in mask.iter() {
        if mate[start] != NONE {
            continue;
        }
        augment(g, mask, start, &mut mate);
    }
    mask.iter().filter(|&v| mate[v] != NONE).count() / 2
}

/// One BFS phase of the blossom algorithm from the exposed vertex `start`;
/// augments `mate` in place when an augmenting path is found.
fn augment(g: &Graph, mask: VertexSet, start: usize, mate: &mut [usize]) {
    let n = g.len();
    let mut parent = vec![NONE; n];
    let mut base: Vec<usize> = (0..n).collect();
    let mut in_queue = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(start);
    in_queue[start] = true;
    let mut finish = NONE;

    'bfs: while let Some(v) = queue.pop_front() {
        for u in g.adjacency(v).intersect(mask).iter() {
            if base[v] == base[u] || mate[v] == u {
                continue;
            }
            if u == start || (mate[u] != NONE && parent[mate[u]] != NONE) {
                // Odd cycle detected: contract the blossom.
                let cur_base = lca(v, u, &base, &parent, mate);
                let mut blossom = vec![false; n];
                mark_path(v, cur_base, u, &mut blossom, &base, &mut parent, mate);
                mark_path(u, cur_base, v, &mut blossom, &base, &mut parent, mate);
                for i in mask.iter() {
                    if blossom[base[i]] {
                        base[i] = cur_base;
                        if !in_queue[i] {
                            in_queue[i] = true;
                            queue.push_back(i);
                        }
                    }
                }
            } else if parent[u] == NONE {
                parent[u] = v;
                if mate[u] == NONE {
                    finish = u;
                    break 'bfs;
                }
                if !in_queue[mate[u]] {
                    in_queue[mate[u]] = true;
                    queue.push_back(mate[u]);
                }
            }
        }
    }

    if finish != NONE {
        let mut u = finish;
        while u != NONE {
            let pv = parent[u];
            let next = mate[pv];
            mate[u] = pv;
            mate[pv] = u;
            u = next;
        }
    }
}

fn lca(mut a: usize, mut b: usize, base: &[usize], parent: &[usize], mate: &[usize]) -> usize {
    let mut used = vec![false; base.len()];
    loop {
        a = base[a];
        used[a] = true;
        if mate[a] == NONE {
            break;
        }
        a = parent[mate[a]];
    }
    loop {
        b = base[b];
        if used[b] {
            return b;
        }
        b = parent[mate[b]];
    }
}

fn mark_path(
    mut v: usize,
    b: usize,
    mut child: usize,
    blossom: &mut [bool],
    base: &[usize],
    parent: &mut [usize],
    mate: &[usize],
) {
    while base[v] != b {
        blossom[base[v]] = true;
        blossom[base[mate[v]]] = true;
        parent[v] = child;
        child = mate[v];
        v = parent[mate[v]];
    }
}

/// Matching number of the whole graph.
pub fn matching_size(g: &Graph) -> usize {
    matching_size_within(g, g.vertex_set())
}

/// Matching number together with the lexicographically smallest maximum
/// matching (by canonical edge order) as a witness.
pub fn matching_number(g: &Graph) -> (usize, Vec<(usize, usize)>) {
    let full = g.vertex_set();
    let nu = matching_size_within(g, full);
    let mut witness: Vec<(usize, usize)> = Vec::with_capacity(nu);
    let mut removed = VertexSet::EMPTY;
    let mut need = nu;
    for &(u, v) in g.edges() {
        if need == 0 {
            break;
        }
        if removed.contains(u) || removed.contains(v) {
            continue;
        }
        let rest = full.minus(removed).without(u).without(v);
        if matching_size_within(g, rest) == need - 1 {
            witness.push((u, v));
            removed.insert(u);
            removed.insert(v);
            need -= 1;
        }
    }
    debug_assert_eq!(witness.len(), nu);
    (nu, witness)
}

/// True iff the subgraph induced on `mask` is factor-critical: connected,
/// odd order, and deleting any single vertex leaves a perfect matching.
/// The single vertex `K_1` counts as factor-critical.
pub fn is_factor_critical_within(g: &Graph, mask: VertexSet) -> bool {
    let n = mask.len();
    if n == 0 || n.is_multiple_of(2) {
        return false;
    }
    if g.connected_components(mask).map_or(true, |c| c.len() != 1) {
        return false;
    }
    let target = (n - 1) / 2;
    let verts: Vec<usize> = mask.iter().collect();
    par::all(&verts, |&v| {
        matching_size_within(g, mask.without(v)) == target
    })
}

/// Factor-criticality of a whole connected graph.
pub fn is_factor_critical(g: &Graph) -> Result<bool> {
    if g.is_empty() || !g.is_connected() {
        return Err(Error::Input("is_factor_critical: graph must be connected".into()));
    }
    Ok(is_factor_critical_within(g, g.vertex_set()))
}

/// True iff every connected component of the subgraph induced on `s` is
/// factor-critical (a matching-critical set). Vacuously true for empty `s`.
pub fn is_matching_critical(g: &Graph, s: VertexSet) -> Result<bool> {
    let comps = g.connected_components(s)?;
    Ok(comps.iter().all(|&c| is_factor_critical_within(g, c)))
}

/// Gallai-Edmonds partition of the subgraph induced on `mask`:
/// `D = { v : nu(G - v) = nu(G) }`, `A = N(D) \ D`, `C` the rest.
pub fn gallai_edmonds_within(g: &Graph, mask: VertexSet) -> GEPartition {
    let nu = matching_size_within(g, mask);
    let verts: Vec<usize> = mask.iter().collect();
    let missed = par::map_collect(verts, |v| {
        (v, matching_size_within(g, mask.without(v)) == nu)
    });
    let mut d = VertexSet::EMPTY;
    for (v, m) in missed {
        if m {
            d.insert(v);
        }
    }
    let a = g.neighbors(d).expect("subset of graph").intersect(mask).minus(d);
    let c = mask.minus(d).minus(a);
    let part = GEPartition { d, a, c };
    debug_assert!(gallai_edmonds_structure_ok(g, part));
    part
}

pub fn gallai_edmonds(g: &Graph) -> GEPartition {
    gallai_edmonds_within(g, g.vertex_set())
}

/// Structure theorem sanity: every component of the induced graph on `D`
/// must be factor-critical.
pub fn gallai_edmonds_structure_ok(g: &Graph, part: GEPartition) -> bool {
    g.connected_components(part.d)
        .map(|comps| comps.iter().all(|&c| is_factor_critical_within(g, c)))
        .unwrap_or(false)
}
