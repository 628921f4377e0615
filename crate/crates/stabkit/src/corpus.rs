//! Exhaustive small-graph corpora (up to isomorphism), a seeded random
//! generator, independent brute-force oracles, and the invariant suite
//! runner shared by the CLI `corpus` command and the acceptance tests.
//!
//! The oracles in [`oracle`] deliberately avoid every optimization the main
//! implementations use, so each check is a genuine dual route.

use crate::ear::{
    contract, generalized_ear_decomposition, optimal_decomposition_search, phi_psi, subdivide,
};
use crate::graph::{Graph, VertexSet};
use crate::matching::{
    gallai_edmonds, gallai_edmonds_structure_ok, is_factor_critical, is_matching_critical,
    matching_size,
};
use crate::replication::{compositions, replicate, ReplicationVector};
use crate::stab::{astab, dstab, stab_bounds};
use crate::{par, Limits, Result};

/// Deterministic splitmix64 generator; the fixed default seed keeps the
/// random corpus reproducible across runs and platforms.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.next_u64() % den < num
    }
}

/// Adjacency stored as a bitmask over the upper-triangle pairs of an
/// `n`-vertex graph, used only during enumeration.
fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (a, b) = (u.min(v), u.max(v));
    // index of (a,b) among pairs in lexicographic order
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

fn mask_to_graph(n: usize, mask: u64) -> Graph {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(&format!("v{}", i + 1)).unwrap();
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if mask >> pair_index(n, u, v) & 1 == 1 {
                g.add_edge(&format!("v{}", u + 1), &format!("v{}", v + 1)).unwrap();
            }
        }
    }
    g
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

fn canonical_mask(n: usize, mask: u64, perms: &[Vec<usize>]) -> u64 {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let mut best = u64::MAX;
    for p in perms {
        let mut m = 0u64;
        for &(u, v) in &pairs {
            if mask >> pair_index(n, u, v) & 1 == 1 {
                m |= 1 << pair_index(n, p[u], p[v]);
            }
        }
        best = best.min(m);
    }
    best
}

/// All connected graphs on exactly `n` labeled-canonically vertices, one
/// representative per isomorphism class. Built by extending the `(n-1)`
/// corpus with a new vertex over every nonempty neighbor subset.
pub fn connected_graphs_up_to_iso(n: usize) -> Vec<Graph> {
    assert!((1..=8).contains(&n), "corpus generator is desk-scale only");
    let mut level: Vec<u64> = vec![0]; // K_1 mask on 1 vertex
    for size in 2..=n {
        let perms = permutations(size);
        let mut next: std::collections::BTreeSet<u64> = Default::default();
        for &mask in &level {
            for nbrs in 1u64..(1 << (size - 1)) {
                // Lift the (size-1)-mask and wire the new vertex `size-1`.
                let mut lifted = 0u64;
                for u in 0..(size - 1) {
                    for v in (u + 1)..(size - 1) {
                        if mask >> pair_index(size - 1, u, v) & 1 == 1 {
                            lifted |= 1 << pair_index(size, u, v);
                        }
                    }
                }
                for u in 0..(size - 1) {
                    if nbrs >> u & 1 == 1 {
                        lifted |= 1 << pair_index(size, u, size - 1);
                    }
                }
                next.insert(canonical_mask(size, lifted, &perms));
            }
        }
        level = next.into_iter().collect();
    }
    level.into_iter().map(|m| mask_to_graph(n, m)).collect()
}

/// Connected non-bipartite graphs on exactly `n` vertices, up to
/// isomorphism.
pub fn connected_non_bipartite_up_to_iso(n: usize) -> Vec<Graph> {
    connected_graphs_up_to_iso(n)
        .into_iter()
        .filter(|g| g.induced_non_bipartite(g.vertex_set()))
        .collect()
}

/// A random connected non-bipartite graph on `n` vertices (edge probability
/// one half, rejection sampled).
pub fn random_connected_non_bipartite(n: usize, rng: &mut SplitMix64) -> Graph {
    assert!(n >= 3);
    loop {
        let mut g = Graph::new();
        for i in 0..n {
            g.add_vertex(&format!("v{}", i + 1)).unwrap();
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.chance(1, 2) {
                    g.add_edge(&format!("v{}", u + 1), &format!("v{}", v + 1)).unwrap();
                }
            }
        }
        if g.is_connected() && g.induced_non_bipartite(g.vertex_set()) {
            return g;
        }
    }
}

/// Independent brute-force oracles.
pub mod oracle {
    use super::*;

    /// Maximum matching size by exhaustive branch over the edge list.
    pub fn max_matching_brute(g: &Graph, mask: VertexSet) -> usize {
        fn rec(edges: &[(usize, usize)], i: usize, used: VertexSet, mask: VertexSet) -> usize {
            if i == edges.len() {
                return 0;
            }
            let (u, v) = edges[i];
            let mut best = rec(edges, i + 1, used, mask);
            if mask.contains(u) && mask.contains(v) && !used.contains(u) && !used.contains(v) {
                best = best.max(1 + rec(edges, i + 1, used.with(u).with(v), mask));
            }
            best
        }
        rec(g.edges(), 0, VertexSet::EMPTY, mask)
    }

    /// Lexicographically smallest maximum matching by exhaustive
    /// enumeration of all matchings.
    pub fn lex_min_max_matching_brute(g: &Graph) -> Vec<(usize, usize)> {
        fn rec(
            edges: &[(usize, usize)],
            i: usize,
            used: VertexSet,
            current: &mut Vec<(usize, usize)>,
            best: &mut Option<Vec<(usize, usize)>>,
        ) {
            if i == edges.len() {
                let better = match best {
                    None => true,
                    Some(b) => {
                        current.len() > b.len() || (current.len() == b.len() && &*current < b)
                    }
                };
                if better {
                    *best = Some(current.clone());
                }
                return;
            }
            let (u, v) = edges[i];
            if !used.contains(u) && !used.contains(v) {
                current.push((u, v));
                rec(edges, i + 1, used.with(u).with(v), current, best);
                current.pop();
            }
            rec(edges, i + 1, used, current, best);
        }
        let mut best = None;
        rec(g.edges(), 0, VertexSet::EMPTY, &mut Vec::new(), &mut best);
        best.unwrap_or_default()
    }

    /// Bridges by the defining property: removing the edge increases the
    /// component count.
    pub fn bridges_brute(g: &Graph) -> Vec<(usize, usize)> {
        let base = g.connected_components(g.vertex_set()).unwrap().len();
        let mut out = Vec::new();
        for &(u, v) in g.edges() {
            let mut h = Graph::new();
            for i in 0..g.len() {
                h.add_vertex(g.label(i)).unwrap();
            }
            for &(x, y) in g.edges() {
                if (x, y) != (u, v) {
                    h.add_edge(g.label(x), g.label(y)).unwrap();
                }
            }
            if h.connected_components(h.vertex_set()).unwrap().len() > base {
                out.push((u, v));
            }
        }
        out
    }

    /// Smallest critical-making set by plain exhaustive search over all
    /// edge subsets in ascending cardinality (no bridge seeding).
    pub fn min_contraction_naive(g: &Graph) -> usize {
        let edges = g.edges().to_vec();
        for k in 0..=edges.len() {
            if any_subset_works(&edges, k, |f| {
                let c = contract(g, f).unwrap();
                c.is_connected()
                    && crate::matching::is_factor_critical_within(&c, c.vertex_set())
            }) {
                return k;
            }
        }
        unreachable!("contracting a spanning tree always works");
    }

    /// Smallest subdividing set making the graph factor-critical, same
    /// plain search.
    pub fn min_subdivision_naive(g: &Graph) -> Option<usize> {
        let edges = g.edges().to_vec();
        (0..=edges.len()).find(|&k| {
            any_subset_works(&edges, k, |f| {
                let s = subdivide(g, f).unwrap();
                s.is_connected()
                    && crate::matching::is_factor_critical_within(&s, s.vertex_set())
            })
        })
    }

    fn any_subset_works(
        edges: &[(usize, usize)],
        k: usize,
        test: impl Fn(&[(usize, usize)]) -> bool,
    ) -> bool {
        fn rec(
            edges: &[(usize, usize)],
            start: usize,
            k: usize,
            cur: &mut Vec<(usize, usize)>,
            test: &impl Fn(&[(usize, usize)]) -> bool,
        ) -> bool {
            if cur.len() == k {
                return test(cur);
            }
            for i in start..edges.len() {
                if edges.len() - i < k - cur.len() {
                    break;
                }
                cur.push(edges[i]);
                if rec(edges, i + 1, k, cur, test) {
                    return true;
                }
                cur.pop();
            }
            false
        }
        rec(edges, 0, k, &mut Vec::new(), &test)
    }
}

/// Result of one invariant family over a corpus.
#[derive(Debug, Clone)]
pub struct FamilyResult {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl FamilyResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn describe(g: &Graph) -> String {
    g.edges()
        .iter()
        .map(|&(u, v)| format!("{}{}", g.label(u), g.label(v)))
        .collect::<Vec<_>>()
        .join(",")
}

fn run_family<F>(name: &'static str, graphs: &[Graph], check: F) -> FamilyResult
where
    F: Fn(&Graph) -> Result<()> + Sync + Send,
{
    let failures: Vec<Option<String>> = par::map_collect(graphs.iter().collect(), |g| {
        check(g).err().map(|e| format!("[{}]: {e}", describe(g)))
    });
    FamilyResult {
        name,
        checked: graphs.len(),
        failures: failures.into_iter().flatten().collect(),
    }
}

fn fail(msg: String) -> crate::Error {
    crate::Error::Input(msg)
}

/// Run the full invariant suite over every connected graph with `n <=
/// max_vertices` (up to isomorphism when `exhaustive`, else `samples`
/// random graphs per size from `seed`).
pub fn run_invariant_suites(
    max_vertices: usize,
    exhaustive: bool,
    samples: usize,
    seed: u64,
    limits: &Limits,
) -> Vec<FamilyResult> {
    let mut connected: Vec<Graph> = Vec::new();
    if exhaustive {
        for n in 1..=max_vertices {
            connected.extend(connected_graphs_up_to_iso(n));
        }
    } else {
        let mut rng = SplitMix64::new(seed);
        for n in 3..=max_vertices {
            for _ in 0..samples {
                connected.push(random_connected_non_bipartite(n, &mut rng));
            }
        }
    }
    let non_bipartite: Vec<Graph> = connected
        .iter()
        .filter(|g| g.induced_non_bipartite(g.vertex_set()))
        .cloned()
        .collect();
    let two_edge_connected: Vec<Graph> = non_bipartite
        .iter()
        .filter(|g| g.bridges_within(g.vertex_set()).is_empty() && g.len() >= 3)
        .cloned()
        .collect();
    let small_for_matching: Vec<Graph> = connected
        .iter()
        .filter(|g| g.edge_count() <= 12)
        .cloned()
        .collect();

    let mut out = Vec::new();

    out.push(run_family("matching-vs-enumeration", &small_for_matching, |g| {
        let nu = matching_size(g);
        let brute = oracle::max_matching_brute(g, g.vertex_set());
        if nu != brute {
            return Err(fail(format!("blossom {nu} != brute {brute}")));
        }
        Ok(())
    }));

    out.push(run_family("bridges-vs-removal", &connected, |g| {
        let fast = g.bridges()?;
        let brute = oracle::bridges_brute(g);
        if fast != brute {
            return Err(fail(format!("{fast:?} != {brute:?}")));
        }
        Ok(())
    }));

    out.push(run_family("gallai-edmonds-structure", &connected, |g| {
        let p = gallai_edmonds(g);
        if !gallai_edmonds_structure_ok(g, p) {
            return Err(fail("component of D not factor-critical".into()));
        }
        let nu = matching_size(g);
        for v in 0..g.len() {
            let nv = crate::matching::matching_size_within(g, g.vertex_set().without(v));
            if nv != nu && nv + 1 != nu {
                return Err(fail(format!("nu drops by more than one at {v}")));
            }
        }
        Ok(())
    }));

    out.push(run_family("ear-count-identity", &connected, |g| {
        if g.edge_count() == 0 {
            return Ok(());
        }
        let d = generalized_ear_decomposition(g, false)?;
        d.validate()?;
        let psi = g.bridges()?.len();
        let expect = g.edge_count() + psi + 1 - g.len();
        if d.ears.len() != expect {
            return Err(fail(format!("{} ears, expected {expect}", d.ears.len())));
        }
        if g.induced_non_bipartite(g.vertex_set()) {
            let d = generalized_ear_decomposition(g, true)?;
            d.validate()?;
            if d.ears.len() != expect {
                return Err(fail("odd-start ear count differs".into()));
            }
        }
        Ok(())
    }));

    out.push(run_family("szigeti-equivalence", &non_bipartite, |g| {
        let (phi, psi) = phi_psi(g, limits)?;
        let contraction = oracle::min_contraction_naive(g);
        let subdivision = oracle::min_subdivision_naive(g)
            .ok_or_else(|| fail("no subdividing set found".into()))?;
        if contraction != phi + psi || subdivision != phi + psi {
            return Err(fail(format!(
                "contract {contraction}, subdivide {subdivision}, phi+psi {}",
                phi + psi
            )));
        }
        // The minimal contraction witness also works as a subdividing set.
        let (_, witness) = crate::ear::min_critical_making(g, limits)?;
        let s = subdivide(g, &witness)?;
        if !crate::matching::is_factor_critical_within(&s, s.vertex_set()) {
            return Err(fail("contraction witness fails as a subdividing set".into()));
        }
        Ok(())
    }));

    out.push(run_family("replication-lower-bound", &non_bipartite, |g| {
        let (phi, psi) = phi_psi(g, limits)?;
        let k = phi + psi;
        let ones = ReplicationVector::ones_on(g.len(), g.vertex_set());
        for m in 0..k as u32 {
            for v in compositions(m, g.len()) {
                let a = ReplicationVector(v);
                let r = replicate(g, &a.plus(&ones))?;
                if is_matching_critical(&r.graph, r.graph.vertex_set())? {
                    return Err(fail(format!(
                        "|a| = {m} < {k} yields a matching-critical replication"
                    )));
                }
            }
        }
        // And the constructive vector achieves the bound.
        let fc = crate::replication::make_factor_critical(g, limits)?;
        if fc.a.total() != k {
            return Err(fail(format!("constructive |a| = {} != {k}", fc.a.total())));
        }
        let nu = matching_size(&fc.replicated.graph);
        if 2 * nu != g.len() + k - 1 {
            return Err(fail(format!("nu {nu} != (card + phi + psi - 1)/2")));
        }
        Ok(())
    }));

    out.push(run_family("phi-odd-equals-phi", &two_edge_connected, |g| {
        let (phi, _) = phi_psi(g, limits)?;
        let odd = optimal_decomposition_search(g, true, limits)?;
        let plain = optimal_decomposition_search(g, false, limits)?;
        if odd.even_ear_count() != phi || plain.even_ear_count() != phi {
            return Err(fail(format!(
                "odd-start {} / free {} vs phi {phi}",
                odd.even_ear_count(),
                plain.even_ear_count()
            )));
        }
        if !odd.ears[0].is_odd() {
            return Err(fail("first ear of odd-start decomposition is even".into()));
        }
        Ok(())
    }));

    out.push(run_family("stab-bounds-dominate", &non_bipartite, |g| {
        let a = astab(g, limits)?;
        let d = dstab(g, limits)?;
        let (db, ab) = stab_bounds(g, limits)?;
        if d > db || a > ab {
            return Err(fail(format!("astab {a} > {ab} or dstab {d} > {db}")));
        }
        if d > a {
            return Err(fail(format!("dstab {d} > astab {a}")));
        }
        // The chain stabilizes exactly at astab.
        let at = crate::stab::ass_powers(g, a, limits)?;
        let after = crate::stab::ass_powers(g, a + 1, limits)?;
        if at != after {
            return Err(fail("chain not stable at astab".into()));
        }
        if a >= 2 {
            let before = crate::stab::ass_powers(g, a - 1, limits)?;
            if before == at {
                return Err(fail("chain already stable before astab".into()));
            }
        }
        Ok(())
    }));

    out.push(run_family("embedded-primes-two-routes", &non_bipartite, |g| {
        // The direct characterization must agree with the entry-power route,
        // and for each embedded U the region U \ N(Z) must itself be a
        // dominant* member.
        let embedded = crate::stab::stable_embedded_primes(g)?;
        let full = g.vertex_set();
        for &u in &embedded {
            let fam = crate::stab::dominant_star_sets(g, u, limits)?;
            let z = full.minus(u);
            let region = u.minus(g.neighbors(z)?);
            if !fam.members.iter().any(|&(w, _)| w == region) {
                return Err(fail(format!("region of {u:?} missing from D*(U)")));
            }
            let entry = crate::stab::astab_for_prime(g, u, limits)?;
            if entry.is_none_or(|k| k < 2) {
                return Err(fail(format!("embedded {u:?} has entry {entry:?}")));
            }
        }
        Ok(())
    }));

    out.push(run_family("factor-critical-iff-phi-psi-zero", &non_bipartite, |g| {
        let fc = is_factor_critical(g)?;
        let (phi, psi) = phi_psi(g, limits)?;
        if fc != (phi == 0 && psi == 0) {
            return Err(fail(format!("fc {fc} but (phi, psi) = ({phi}, {psi})")));
        }
        Ok(())
    }));

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_counts_match_oeis() {
        // Connected graphs up to isomorphism: 1, 1, 2, 6, 21, 112 (A001349).
        assert_eq!(connected_graphs_up_to_iso(1).len(), 1);
        assert_eq!(connected_graphs_up_to_iso(2).len(), 1);
        assert_eq!(connected_graphs_up_to_iso(3).len(), 2);
        assert_eq!(connected_graphs_up_to_iso(4).len(), 6);
        assert_eq!(connected_graphs_up_to_iso(5).len(), 21);
        assert_eq!(connected_graphs_up_to_iso(6).len(), 112);
    }

    #[test]
    fn non_bipartite_filter() {
        // On 3 vertices: path (bipartite) and triangle.
        assert_eq!(connected_non_bipartite_up_to_iso(3).len(), 1);
        // On 4 vertices: paw, diamond, K4.
        assert_eq!(connected_non_bipartite_up_to_iso(4).len(), 3);
    }

    #[test]
    fn random_generator_is_deterministic() {
        let mut a = SplitMix64::new(7);
        let mut b = SplitMix64::new(7);
        let ga = random_connected_non_bipartite(6, &mut a);
        let gb = random_connected_non_bipartite(6, &mut b);
        assert_eq!(ga.edges(), gb.edges());
    }

    #[test]
    fn small_suite_passes() {
        let results = run_invariant_suites(4, true, 0, 1, &Limits::default());
        for r in &results {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures);
        }
    }

    #[test]
    fn bridges_oracle_on_larger_random_graphs() {
        let mut rng = SplitMix64::new(2024);
        for n in [9usize, 10, 11, 12] {
            for _ in 0..5 {
                let g = random_connected_non_bipartite(n, &mut rng);
                assert_eq!(g.bridges().unwrap(), oracle::bridges_brute(&g));
            }
        }
    }
}
