//! The replication operator `p_a(G)` and the constructive procedure that
//! makes a connected non-bipartite graph factor-critical with the minimum
//! number of vertex duplications (`phi + psi` of them).

use crate::ear::{optimal_odd_start_generalized, phi_psi, Ear, EarDecomposition, EarKind};
use crate::graph::{Graph, VertexSet};
use crate::matching::{is_matching_critical, matching_size};
use crate::{par, Error, Limits, Result};

/// A vertex -> multiplicity map, dense over the canonical order of its
/// ambient graph. Encodes duplication counts and indicator vectors alike.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplicationVector(pub Vec<u32>);

impl ReplicationVector {
    pub fn zeros(n: usize) -> Self {
        ReplicationVector(vec![0; n])
    }

    /// The indicator vector of a set.
    pub fn ones_on(n: usize, s: VertexSet) -> Self {
        ReplicationVector((0..n).map(|i| u32::from(s.contains(i))).collect())
    }

    pub fn support(&self) -> VertexSet {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Total weight `|a|`.
    pub fn total(&self) -> usize {
        self.0.iter().map(|&m| m as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    pub fn plus(&self, other: &ReplicationVector) -> ReplicationVector {
        ReplicationVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }
}

/// The result of replicating a graph: the blown-up graph plus the maps
/// between original and copy vertices.
#[derive(Debug, Clone)]
pub struct Replicated {
    pub graph: Graph,
    /// `classes[i]` lists the new indices of the copies of original vertex
    /// `i`, in copy order (`(i,1)` first); empty when `a_i = 0`.
    pub classes: Vec<Vec<usize>>,
    /// Original index of each new vertex.
    pub origin: Vec<usize>,
}

impl Replicated {
    /// Original vertices whose first copy lies in `s` (the projection
    /// `V(S) ∩ V` used for neighborhoods of replicated subsets).
    pub fn project(&self, s: VertexSet) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for v in s.iter() {
            out.insert(self.origin[v]);
        }
        out
    }
}

/// `p_a(G)`: vertex `i` becomes `a_i` pairwise non-adjacent copies, copies
/// adjacent iff the originals are. Copy labels are `v.k` with `k = 1` for
/// the original.
pub fn replicate(g: &Graph, a: &ReplicationVector) -> Result<Replicated> {
    if a.0.len() != g.len() {
        return Err(Error::Input("replication vector has wrong length".into()));
    }
    if a.is_zero() {
        return Err(Error::Input("replication by the zero vector".into()));
    }
    let mut out = Graph::new();
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); g.len()];
    let mut origin = Vec::new();
    for (i, class) in classes.iter_mut().enumerate() {
        for k in 1..=a.0[i] {
            let idx = out.add_vertex(&format!("{}.{k}", g.label(i)))?;
            class.push(idx);
            origin.push(i);
        }
    }
    for &(u, v) in g.edges() {
        for &cu in &classes[u] {
            for &cv in &classes[v] {
                let (lu, lv) = (out.label(cu).to_string(), out.label(cv).to_string());
                out.add_edge(&lu, &lv)?;
            }
        }
    }
    Ok(Replicated {
        graph: out,
        classes,
        origin,
    })
}

/// Output of [`make_factor_critical`]: the duplication vector `a` with
/// `|a| = phi + psi`, and an all-odd ear decomposition of
/// `p_{a+1}(G)` witnessing factor-criticality.
#[derive(Debug, Clone)]
pub struct FactorCriticalization {
    pub a: ReplicationVector,
    pub replicated: Replicated,
    pub witness: EarDecomposition,
}

/// Make `g` factor-critical by duplicating `phi + psi` vertices: walk an
/// optimal odd-start generalized ear decomposition; each even ear or bridge
/// duplicates its first vertex and is rerouted through the copy via a
/// prefix neighbor `Q`.
pub fn make_factor_critical(g: &Graph, limits: &Limits) -> Result<FactorCriticalization> {
    let (phi, psi) = phi_psi(g, limits)?;
    let decomposition = optimal_odd_start_generalized(g, limits)?;
    debug_assert_eq!(decomposition.even_ear_count(), phi);
    debug_assert_eq!(decomposition.bridge_count(), psi);

    // Pass 1: decide duplications. Each even ear or bridge duplicates its
    // first vertex; `Q` is the smallest-index neighbor of that vertex among
    // the previously built vertices.
    let mut counts = vec![0u32; g.len()];
    let mut plans: Vec<Option<(usize, u32, usize)>> = Vec::new(); // (vertex, copy number, q)
    let mut built = VertexSet::EMPTY;
    for ear in &decomposition.ears {
        let first = ear.path[0];
        let duplicated = match ear.kind {
            EarKind::Bridge => true,
            EarKind::InitialCycle => false,
            _ => !ear.is_odd(),
        };
        if duplicated {
            let q = g
                .adjacency(first)
                .intersect(built)
                .min();
            counts[first] += 1;
            plans.push(Some((first, counts[first] + 1, q)));
        } else {
            plans.push(None);
        }
        for &v in &ear.path {
            built.insert(v);
        }
    }
    let a = ReplicationVector(counts);
    debug_assert_eq!(a.total(), phi + psi);

    let multiplicities = a.plus(&ReplicationVector::ones_on(g.len(), g.vertex_set()));
    let replicated = replicate(g, &multiplicities)?;
    let copy = |v: usize, k: u32| replicated.classes[v][(k - 1) as usize];

    // Pass 2: rebuild the ears over the replicated graph.
    let rg = replicated.graph.clone();
    let mut used = vec![false; rg.edge_count()];
    let mark = |path: &[usize], used: &mut Vec<bool>| {
        for w in path.windows(2) {
            let e = (w[0].min(w[1]), w[0].max(w[1]));
            let i = rg.edges().binary_search(&e).expect("replicated edge");
            assert!(!used[i], "witness ear reuses an edge");
            used[i] = true;
        }
    };
    let mut ears = Vec::new();
    for (ear, plan) in decomposition.ears.iter().zip(&plans) {
        match plan {
            None => {
                let path: Vec<usize> = ear.path.iter().map(|&v| copy(v, 1)).collect();
                mark(&path, &mut used);
                ears.push(Ear {
                    path,
                    kind: ear.kind,
                });
            }
            Some((v, k, q)) => {
                let dup = copy(*v, *k);
                let path = if ear.kind == EarKind::Bridge {
                    // Q, v', w, v  (the original bridge edge closes it)
                    let w = copy(ear.path[1], 1);
                    vec![copy(*q, 1), dup, w, copy(*v, 1)]
                } else {
                    // Q, v', p2, ..., pj  (drops the original first edge)
                    let mut p = vec![copy(*q, 1), dup];
                    p.extend(ear.path[1..].iter().map(|&x| copy(x, 1)));
                    p
                };
                mark(&path, &mut used);
                let kind = if path.first() == path.last() {
                    EarKind::ClosedEar
                } else {
                    EarKind::OpenEar
                };
                ears.push(Ear { path, kind });
            }
        }
    }
    // Remaining replicated edges are chords between present vertices: each
    // is a one-edge odd ear.
    for (i, &(u, v)) in rg.edges().iter().enumerate() {
        if !used[i] {
            ears.push(Ear {
                path: vec![u, v],
                kind: EarKind::OpenEar,
            });
        }
    }
    let witness = EarDecomposition {
        ears,
        ambient: rg,
    };
    witness.validate()?;
    assert!(
        witness.ears.iter().all(|e| e.is_odd()),
        "witness decomposition must contain only odd ears"
    );
    Ok(FactorCriticalization {
        a,
        replicated,
        witness,
    })
}

/// Result of the exhaustive replication search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinReplication {
    /// Smallest `|a|` such that `p_{a+1}(G_s)` is matching-critical.
    pub size: usize,
    /// A witness vector over the ambient graph's coordinates.
    pub witness: ReplicationVector,
    /// The smallest matching number over all matching-critical replications.
    pub min_nu: usize,
}

/// Exhaustive minimum over vectors `a` supported in `s` of `|a|` such that
/// `p_{a+1_s}(G_s)` is matching-critical; the result equals `phi + psi` and
/// the minimum achievable matching number equals `nu_star` (both asserted).
pub fn min_replication_to_matching_critical(
    g: &Graph,
    s: VertexSet,
    limits: &Limits,
) -> Result<MinReplication> {
    if s.is_empty() {
        return Err(Error::Input("min_replication: empty support".into()));
    }
    let comps = g.connected_components(s)?;
    for &c in &comps {
        if !g.induced_non_bipartite(c) {
            return Err(Error::Input(
                "min_replication: an induced component is bipartite".into(),
            ));
        }
    }
    let (sub, orig) = g.induced(s);
    let d = sub.len();
    for m in 0..=limits.max_subset_size {
        let vectors = compositions(m as u32, d);
        let ones = ReplicationVector::ones_on(d, sub.vertex_set());
        let hit = par::find_first(&vectors, |v| {
            let a = ReplicationVector(v.clone());
            let r = replicate(&sub, &a.plus(&ones)).expect("nonzero");
            is_matching_critical(&r.graph, r.graph.vertex_set()).unwrap_or(false)
        });
        if let Some(i) = hit {
            let mut witness = vec![0u32; g.len()];
            for (j, &mult) in vectors[i].iter().enumerate() {
                witness[orig[j]] = mult;
            }
            let min_nu = (s.len() + m - comps.len()) / 2;
            let expect = crate::ear::nu_star(g, s, limits)?;
            assert_eq!(min_nu, expect, "minimum replication nu must equal nu_star");
            let mut phi = 0;
            let mut psi = 0;
            for &c in &comps {
                let (cg, _) = g.induced(c);
                let (p, q) = crate::ear::phi_psi_any(&cg, limits)?;
                phi += p;
                psi += q;
            }
            assert_eq!(m, phi + psi, "minimum replication size must equal phi + psi");
            return Ok(MinReplication {
                size: m,
                witness: ReplicationVector(witness),
                min_nu,
            });
        }
    }
    Err(Error::Resource(format!(
        "no matching-critical replication with |a| <= {} (limit)",
        limits.max_subset_size
    )))
}

/// All vectors of non-negative integers of length `parts` summing to
/// `total`, in lexicographic order.
pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; parts];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
    }
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

/// `nu` of the replication `p_{a+1}(G)` built by [`make_factor_critical`].
pub fn replication_matching_number(fc: &FactorCriticalization) -> usize {
    matching_size(&fc.replicated.graph)
}
