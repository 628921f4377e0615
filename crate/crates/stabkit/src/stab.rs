//! Dominant* sets, the `astab`/`dstab` formulas, per-power associated
//! primes, stable embedded primes, component reduction and verification,
//! and the upper bounds.
//!
//! The driving formula: for `U` with independent complement `Z`, the first
//! power where the prime on `U` appears is `min { 1 + nu_star(G_W) }` over
//! the `U`-dominant* sets `W`. The maximal ideal's entry power is `dstab`,
//! the overall stabilization power `astab`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::ear::nu_star;
use crate::graph::{Graph, VertexSet};
use crate::matching::{gallai_edmonds_within, matching_size_within};
use crate::replication::{replicate, ReplicationVector};
use crate::{par, Error, Limits, Result};

/// The family `D*(U)` of `U`-dominant* sets, each paired with its
/// `nu_star`. Empty when `Z = V \ U` is not independent; contains the empty
/// set exactly when `Z` is a dominating (maximal) independent set.
#[derive(Debug, Clone)]
pub struct DominantStarFamily {
    pub base: VertexSet,
    pub zee: VertexSet,
    pub members: Vec<(VertexSet, usize)>,
}

struct NuStarMemo<'g> {
    g: &'g Graph,
    limits: Limits,
    table: Mutex<HashMap<u64, Option<usize>>>,
}

impl<'g> NuStarMemo<'g> {
    fn new(g: &'g Graph, limits: &Limits) -> Self {
        NuStarMemo {
            g,
            limits: *limits,
            table: Mutex::new(HashMap::new()),
        }
    }

    /// `nu_star(G_W)` when every component of `G_W` has an odd cycle,
    /// `None` otherwise. Memoized by the bit pattern of `w`.
    fn get(&self, w: VertexSet) -> Result<Option<usize>> {
        if let Some(&v) = self.table.lock().unwrap().get(&w.0) {
            return Ok(v);
        }
        let comps = self.g.connected_components(w)?;
        let value = if comps.iter().all(|&c| self.g.induced_non_bipartite(c)) {
            Some(nu_star(self.g, w, &self.limits)?)
        } else {
            None
        };
        self.table.lock().unwrap().insert(w.0, value);
        Ok(value)
    }
}

fn check_analysis_input(g: &Graph) -> Result<()> {
    if g.is_empty() || !g.is_connected() {
        return Err(Error::Input("graph must be connected".into()));
    }
    if !g.induced_non_bipartite(g.vertex_set()) {
        return Err(Error::Input("graph is bipartite".into()));
    }
    Ok(())
}

/// Full enumeration of `D*(U)` with `nu_star` per member.
pub fn dominant_star_sets(g: &Graph, u: VertexSet, limits: &Limits) -> Result<DominantStarFamily> {
    check_analysis_input(g)?;
    if g.len() > limits.max_vertices {
        return Err(Error::Resource(format!(
            "enumeration limited to {} vertices",
            limits.max_vertices
        )));
    }
    let memo = NuStarMemo::new(g, limits);
    let members = dominant_star_members(g, u, &memo, true)?;
    Ok(DominantStarFamily {
        base: u,
        zee: g.vertex_set().minus(u),
        members,
    })
}

/// Members of `D*(U)` in ascending bit order. With `collect_all = false`
/// only the minimum `nu_star` matters and dominated candidates are skipped
/// early; the full list is produced for the public family type.
fn dominant_star_members(
    g: &Graph,
    u: VertexSet,
    memo: &NuStarMemo,
    collect_all: bool,
) -> Result<Vec<(VertexSet, usize)>> {
    let full = g.vertex_set();
    let z = full.minus(u);
    if !g.is_independent(z)? {
        return Ok(Vec::new());
    }
    let nz = g.neighbors(z)?;
    let covered = z.union(nz);
    let mut members = Vec::new();
    if covered == full {
        // W = {} is U-dominant*: Z is a maximal independent set.
        members.push((VertexSet::EMPTY, 0));
    }
    let region = full.minus(covered);
    // Subsets of the admissible region, ascending bit order.
    let region_bits: Vec<usize> = region.iter().collect();
    let count = 1u64 << region_bits.len();
    let mut sub = 1u64;
    while sub < count {
        let w: VertexSet = region_bits
            .iter()
            .enumerate()
            .filter(|(i, _)| sub >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect();
        sub += 1;
        if g.neighbors(w)?.union(covered) != full {
            continue;
        }
        if let Some(v) = memo.get(w)? {
            members.push((w, v));
            // Nonempty dominant* sets have nu_star >= 1, so 1 is optimal.
            if !collect_all && v == 1 {
                break;
            }
        }
    }
    Ok(members)
}

/// `astab(I_G, U)`: the first power whose associated primes include the
/// prime on `U`, or `None` ("never") when `D*(U)` is empty.
pub fn astab_for_prime(g: &Graph, u: VertexSet, limits: &Limits) -> Result<Option<usize>> {
    check_analysis_input(g)?;
    let memo = NuStarMemo::new(g, limits);
    astab_for_prime_with(g, u, &memo)
}

fn astab_for_prime_with(g: &Graph, u: VertexSet, memo: &NuStarMemo) -> Result<Option<usize>> {
    let members = dominant_star_members(g, u, memo, false)?;
    Ok(members.iter().map(|&(_, v)| 1 + v).min())
}

/// The per-prime table underlying every formula-side answer: all `U` with
/// non-empty `D*(U)` and their entry powers.
#[derive(Debug, Clone)]
pub struct StabAnalysis {
    pub per_prime: Vec<(VertexSet, usize)>,
    pub astab: usize,
    pub dstab: usize,
}

/// Enumerate independent sets `Z` (including the empty set) by
/// branch-and-bound over the canonical vertex order.
fn independent_sets(g: &Graph) -> Vec<VertexSet> {
    let mut out = Vec::new();
    fn rec(g: &Graph, v: usize, current: VertexSet, out: &mut Vec<VertexSet>) {
        if v == g.len() {
            out.push(current);
            return;
        }
        rec(g, v + 1, current, out);
        if g.adjacency(v).intersect(current).is_empty() {
            rec(g, v + 1, current.with(v), out);
        }
    }
    rec(g, 0, VertexSet::EMPTY, &mut out);
    out.sort_unstable();
    out
}

/// Analyze the whole lattice of candidate primes.
pub fn analyze(g: &Graph, limits: &Limits) -> Result<StabAnalysis> {
    check_analysis_input(g)?;
    if g.len() > limits.max_vertices {
        return Err(Error::Resource(format!(
            "analysis limited to {} vertices (got {})",
            limits.max_vertices,
            g.len()
        )));
    }
    let memo = NuStarMemo::new(g, limits);
    let zs = independent_sets(g);
    let full = g.vertex_set();
    let evaluated: Vec<Result<Option<(VertexSet, usize)>>> =
        par::map_collect(zs, |z| {
            let u = full.minus(z);
            Ok(astab_for_prime_with(g, u, &memo)?.map(|k| (u, k)))
        });
    let mut per_prime = Vec::new();
    for item in evaluated {
        if let Some(entry) = item? {
            per_prime.push(entry);
        }
    }
    per_prime.sort_unstable();
    let astab = per_prime.iter().map(|&(_, k)| k).max().expect("U = V is always present");
    let dstab = per_prime
        .iter()
        .find(|&&(u, _)| u == full)
        .map(|&(_, k)| k)
        .expect("U = V is always present");
    debug_assert!(dstab <= astab);
    debug_assert!({
        let embedded: Vec<VertexSet> = per_prime
            .iter()
            .filter(|&&(_, k)| k >= 2)
            .map(|&(u, _)| u)
            .collect();
        let mut characterized = stable_embedded_primes(g)?;
        characterized.sort_unstable();
        embedded == characterized
    });
    Ok(StabAnalysis {
        per_prime,
        astab,
        dstab,
    })
}

/// `Ass(I^k)` by the formula: all `U` whose entry power is at most `k`.
pub fn ass_powers(g: &Graph, k: usize, limits: &Limits) -> Result<Vec<VertexSet>> {
    if k < 1 {
        return Err(Error::Input("power k must be at least 1".into()));
    }
    let analysis = analyze(g, limits)?;
    Ok(analysis
        .per_prime
        .iter()
        .filter(|&&(_, entry)| entry <= k)
        .map(|&(u, _)| u)
        .collect())
}

/// The embedded stable primes by the independent characterization: `Z`
/// independent, `U != N(Z)`, and every component of the induced graph on
/// `U \ N(Z)` contains an odd cycle.
pub fn stable_embedded_primes(g: &Graph) -> Result<Vec<VertexSet>> {
    check_analysis_input(g)?;
    let full = g.vertex_set();
    let mut out = Vec::new();
    for z in independent_sets(g) {
        let u = full.minus(z);
        let nz = g.neighbors(z)?;
        let region = u.minus(nz);
        if region.is_empty() {
            continue; // U = N(Z): minimal prime territory
        }
        let comps = g.connected_components(region)?;
        if comps.iter().all(|&c| g.induced_non_bipartite(c)) {
            out.push(u);
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// `astab(I_G)`: the stabilization power of the associated-prime chain.
pub fn astab(g: &Graph, limits: &Limits) -> Result<usize> {
    Ok(analyze(g, limits)?.astab)
}

/// `dstab(I_G)`: the first power whose associated primes contain the
/// maximal ideal.
pub fn dstab(g: &Graph, limits: &Limits) -> Result<usize> {
    check_analysis_input(g)?;
    let memo = NuStarMemo::new(g, limits);
    astab_for_prime_with(g, g.vertex_set(), &memo)?
        .ok_or_else(|| Error::Input("D*(V) is empty (cannot happen for connected non-bipartite)".into()))
}

/// Upper bounds: `dstab <= (|E| + psi - 1)/2 + 1` and
/// `astab <= |E| - k + 1` with `2k - 1` the odd girth.
pub fn stab_bounds(g: &Graph, _limits: &Limits) -> Result<(usize, usize)> {
    check_analysis_input(g)?;
    let psi = g.bridges()?.len();
    let e = g.edge_count();
    // (|E| + psi - 1)/2 + 1 on integers is ceil((|E| + psi)/2).
    let dstab_bound = (e + psi).div_ceil(2);
    let odd_girth = g.odd_girth().expect("non-bipartite");
    let k = odd_girth.div_ceil(2);
    let astab_bound = e - k + 1;
    Ok((dstab_bound, astab_bound))
}

/// The looser introduction-form bound `(|E| + psi)/2 + 1`, reported
/// alongside the sharp one.
pub fn dstab_bound_loose(g: &Graph) -> Result<usize> {
    check_analysis_input(g)?;
    let psi = g.bridges()?.len();
    Ok((g.edge_count() + psi) / 2 + 1)
}

/// Split `a = b + c` with `supp(c) = supp(a) ∩ N(Z)` and reduce the power
/// by `|c|`: the component on `b` then lives in `I^{k - |c|}`.
pub fn reduce_component(
    g: &Graph,
    a: &ReplicationVector,
    u: VertexSet,
    k: usize,
) -> Result<(ReplicationVector, usize)> {
    if !a.support().is_subset_of(u) {
        return Err(Error::Input("reduce_component: supp(a) must lie in U".into()));
    }
    let z = g.vertex_set().minus(u);
    let nz = g.neighbors(z)?;
    let mut b = a.clone();
    let mut delta = 0usize;
    for i in nz.iter() {
        delta += b.0[i] as usize;
        b.0[i] = 0;
    }
    if k <= delta {
        return Err(Error::Input(format!(
            "reduce_component: k - delta = {k} - {delta} < 1"
        )));
    }
    Ok((b, k - delta))
}

/// Is `m^{a + 1_U}` an embedded irreducible component of `I^k`? The four
/// conditions: `Z` independent, `nu(p_a(G)) = k - 1`,
/// `V = N(D(p_a(G))) ∪ Z ∪ N(Z)`, and `C(p_a(G)) = {}`.
pub fn check_irreducible_component(
    g: &Graph,
    a: &ReplicationVector,
    u: VertexSet,
    k: usize,
) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::Input("check_irreducible_component: a is zero".into()));
    }
    if !a.support().is_subset_of(u) {
        return Err(Error::Input("check_irreducible_component: supp(a) must lie in U".into()));
    }
    let full = g.vertex_set();
    let z = full.minus(u);
    let nz = g.neighbors(z)?;
    if !a.support().intersect(nz).is_empty() {
        return Err(Error::Input(
            "check_irreducible_component: supp(a) meets N(Z); reduce first".into(),
        ));
    }
    if !g.is_independent(z)? {
        return Ok(false);
    }
    let r = replicate(g, a)?;
    let nu = matching_size_within(&r.graph, r.graph.vertex_set());
    if nu + 1 != k {
        return Ok(false);
    }
    let part = gallai_edmonds_within(&r.graph, r.graph.vertex_set());
    if !part.c.is_empty() {
        return Ok(false);
    }
    let d_orig = r.project(part.d);
    let covered = g.neighbors(d_orig)?.union(z).union(nz);
    Ok(covered == full)
}

/// One prime with its entry power, label-facing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeEntry {
    #[serde(rename = "U")]
    pub u: Vec<String>,
    pub astab: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub astab: usize,
    pub dstab: usize,
    #[serde(rename = "dstabLoose")]
    pub dstab_loose: usize,
}

/// The serializable analysis report. Keys are emitted in lexicographic
/// order and vertex lists sorted canonically, so emit -> parse -> emit is
/// byte-identical through any order-normalizing JSON consumer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabReport {
    #[serde(rename = "assByPower")]
    pub ass_by_power: BTreeMap<String, Vec<Vec<String>>>,
    pub astab: usize,
    pub bounds: BoundsReport,
    pub dstab: usize,
    #[serde(rename = "perPrime")]
    pub per_prime: Vec<PrimeEntry>,
    #[serde(rename = "stableAss")]
    pub stable_ass: Vec<Vec<String>>,
}

/// Compute the full report for a connected non-bipartite graph.
pub fn stab_report(g: &Graph, limits: &Limits) -> Result<StabReport> {
    let analysis = analyze(g, limits)?;
    let (dstab_bound, astab_bound) = stab_bounds(g, limits)?;
    let labels = |s: VertexSet| g.labels_of(s);
    let mut per_prime: Vec<&(VertexSet, usize)> = analysis.per_prime.iter().collect();
    per_prime.sort_by_key(|&&(u, k)| (k, u));
    let mut ass_by_power = BTreeMap::new();
    for k in 1..=analysis.astab {
        let sets: Vec<Vec<String>> = analysis
            .per_prime
            .iter()
            .filter(|&&(_, entry)| entry <= k)
            .map(|&(u, _)| labels(u))
            .collect();
        ass_by_power.insert(k.to_string(), sets);
    }
    Ok(StabReport {
        ass_by_power,
        astab: analysis.astab,
        bounds: BoundsReport {
            astab: astab_bound,
            dstab: dstab_bound,
            dstab_loose: dstab_bound_loose(g)?,
        },
        dstab: analysis.dstab,
        per_prime: per_prime
            .into_iter()
            .map(|&(u, k)| PrimeEntry {
                u: labels(u),
                astab: k,
            })
            .collect(),
        stable_ass: analysis.per_prime.iter().map(|&(u, _)| labels(u)).collect(),
    })
}
