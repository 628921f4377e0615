//! Generalized ear decompositions, the invariants `phi` (minimum even ears)
//! and `psi` (bridge count), contraction and subdivision operators, and
//! `nu_star`. `phi` is computed through the contraction characterization
//! (smallest edge set whose contraction is factor-critical); the
//! decomposition search serves as cross-check and witness producer.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::matching::is_factor_critical_within;
use crate::{par, Error, Limits, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EarKind {
    InitialCycle,
    OpenEar,
    ClosedEar,
    Bridge,
}

/// One ear of a decomposition: a vertex path. Cycles (initial or closed
/// ears) repeat their first vertex at the end, so `path.len() - 1` is always
/// the edge count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ear {
    pub path: Vec<usize>,
    pub kind: EarKind,
}

impl Ear {
    pub fn edge_count(&self) -> usize {
        self.path.len() - 1
    }

    /// Odd/even by edge count; bridges are odd.
    pub fn is_odd(&self) -> bool {
        self.edge_count() % 2 == 1
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.path
            .windows(2)
            .map(|w| (w[0].min(w[1]), w[0].max(w[1])))
    }

    fn is_cycle(&self) -> bool {
        self.path.first() == self.path.last() && self.path.len() > 1
    }
}

/// An ordered generalized ear decomposition of its ambient graph.
#[derive(Debug, Clone)]
pub struct EarDecomposition {
    pub ears: Vec<Ear>,
    pub ambient: Graph,
}

impl EarDecomposition {
    pub fn even_ear_count(&self) -> usize {
        self.ears
            .iter()
            .filter(|e| e.kind != EarKind::Bridge && !e.is_odd())
            .count()
    }

    pub fn bridge_count(&self) -> usize {
        self.ears.iter().filter(|e| e.kind == EarKind::Bridge).count()
    }

    /// Full structural validation against the ambient graph: ears partition
    /// the edge set, kinds match the attachment discipline, internal
    /// vertices are fresh.
    pub fn validate(&self) -> Result<()> {
        let g = &self.ambient;
        let mut used = vec![false; g.edge_count()];
        let mut built = VertexSet::EMPTY;
        for (i, ear) in self.ears.iter().enumerate() {
            if ear.path.len() < 2 {
                return Err(Error::Input(format!("ear {i} has no edges")));
            }
            for (u, v) in ear.edges() {
                let idx = g
                    .edges()
                    .binary_search(&(u, v))
                    .map_err(|_| Error::Input(format!("ear {i} uses non-edge {u}-{v}")))?;
                if used[idx] {
                    return Err(Error::Input(format!("ear {i} reuses edge {u}-{v}")));
                }
                used[idx] = true;
            }
            let first = ear.path[0];
            let last = *ear.path.last().unwrap();
            let interior = &ear.path[1..ear.path.len() - 1];
            match ear.kind {
                EarKind::InitialCycle => {
                    if i != 0 || first != last || ear.path.len() < 4 {
                        return Err(Error::Input(format!("ear {i}: bad initial cycle")));
                    }
                }
                EarKind::Bridge => {
                    if ear.path.len() != 2 {
                        return Err(Error::Input(format!("ear {i}: bridge must be one edge")));
                    }
                    if i > 0 && !(built.contains(first) ^ built.contains(last)) {
                        return Err(Error::Input(format!(
                            "ear {i}: bridge must attach exactly one new vertex"
                        )));
                    }
                }
                EarKind::OpenEar => {
                    if i == 0 || first == last || !built.contains(first) || !built.contains(last) {
                        return Err(Error::Input(format!("ear {i}: bad open ear")));
                    }
                }
                EarKind::ClosedEar => {
                    if i == 0 || first != last || !built.contains(first) {
                        return Err(Error::Input(format!("ear {i}: bad closed ear")));
                    }
                }
            }
            let mut seen = VertexSet::EMPTY;
            for &v in interior {
                if ear.kind != EarKind::Bridge && i > 0 && built.contains(v) {
                    return Err(Error::Input(format!(
                        "ear {i}: interior vertex {v} already present"
                    )));
                }
                if seen.contains(v) || v == first || (v == last && !ear.is_cycle()) {
                    return Err(Error::Input(format!("ear {i}: repeated vertex {v}")));
                }
                seen.insert(v);
            }
            for &v in &ear.path {
                built.insert(v);
            }
        }
        if used.iter().any(|&u| !u) {
            return Err(Error::Input("decomposition does not cover all edges".into()));
        }
        if built != incident_vertices(g) {
            return Err(Error::Input("decomposition does not cover all vertices".into()));
        }
        Ok(())
    }

    /// The decomposition-independent ear count: `|E| - |V| + psi + 1`, asserted equal to the
    /// length of the ears list.
    pub fn ear_count(&self) -> usize {
        let g = &self.ambient;
        let psi = g.bridges_within(g.vertex_set()).len();
        let expect = g.edge_count() + psi + 1 - g.len();
        assert_eq!(
            expect,
            self.ears.len(),
            "ear-count identity violated: expected {expect}, got {}",
            self.ears.len()
        );
        expect
    }

    /// DOT export with the figure conventions: initial cycle red, odd ears
    /// black, even ears blue, bridges dashed.
    pub fn to_dot(&self) -> String {
        let g = &self.ambient;
        let mut out = String::from("graph ears {\n");
        for i in 0..g.len() {
            let _ = writeln!(out, "  \"{}\";", g.label(i));
        }
        for (i, ear) in self.ears.iter().enumerate() {
            let attrs = match ear.kind {
                EarKind::InitialCycle => "color=red".to_string(),
                EarKind::Bridge => "style=dashed".to_string(),
                _ if ear.is_odd() => "color=black".to_string(),
                _ => "color=blue".to_string(),
            };
            for (u, v) in ear.edges() {
                let _ = writeln!(
                    out,
                    "  \"{}\" -- \"{}\" [{attrs} label=\"F{i}\"];",
                    g.label(u),
                    g.label(v)
                );
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize, Deserialize)]
struct EarJson {
    kind: EarKind,
    parity: String,
    path: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct DecompositionJson {
    ears: Vec<EarJson>,
}

impl Serialize for EarDecomposition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let ears = self
            .ears
            .iter()
            .map(|e| EarJson {
                kind: e.kind,
                parity: if e.is_odd() { "odd".into() } else { "even".into() },
                path: e.path.iter().map(|&v| self.ambient.label(v).to_string()).collect(),
            })
            .collect();
        DecompositionJson { ears }.serialize(serializer)
    }
}

fn incident_vertices(g: &Graph) -> VertexSet {
    let mut s = VertexSet::EMPTY;
    for &(u, v) in g.edges() {
        s.insert(u);
        s.insert(v);
    }
    if g.edge_count() == 0 {
        // Single-vertex graphs decompose into zero ears covering the vertex.
        return VertexSet::EMPTY;
    }
    s
}

/// 2-edge-connected components (vertex sets of the bridge-free clusters,
/// each spanning at least one cycle) plus the bridge edges.
fn blocks_and_bridges(g: &Graph, mask: VertexSet) -> (Vec<VertexSet>, Vec<(usize, usize)>) {
    let bridges = g.bridges_within(mask);
    let mut parent: Vec<usize> = (0..g.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v) in g.edges() {
        if mask.contains(u) && mask.contains(v) && !bridges.contains(&(u, v)) {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru.max(rv)] = ru.min(rv);
            }
        }
    }
    let mut clusters: std::collections::BTreeMap<usize, VertexSet> = Default::default();
    for v in mask.iter() {
        clusters.entry(find(&mut parent, v)).or_default().insert(v);
    }
    let blocks = clusters.into_values().filter(|c| c.len() >= 3).collect();
    (blocks, bridges)
}

/// Normalize a cycle (given without the closing vertex): smallest vertex
/// first, direction chosen by the smaller successor, closing vertex
/// appended.
fn normalize_cycle(cycle: &[usize]) -> Vec<usize> {
    let k = cycle.len();
    let r = (0..k).min_by_key(|&i| cycle[i]).unwrap();
    let fwd = cycle[(r + 1) % k];
    let bwd = cycle[(r + k - 1) % k];
    let mut out = Vec::with_capacity(k + 1);
    if fwd <= bwd {
        for i in 0..k {
            out.push(cycle[(r + i) % k]);
        }
    } else {
        for i in 0..k {
            out.push(cycle[(r + k - i) % k]);
        }
    }
    out.push(out[0]);
    out
}

fn canonical_open_path(mut path: Vec<usize>) -> Vec<usize> {
    if path.first() > path.last() {
        path.reverse();
    }
    path
}

fn canonical_closed_path(mut path: Vec<usize>) -> Vec<usize> {
    if path.len() >= 3 && path[1] > path[path.len() - 2] {
        path.reverse();
    }
    path
}

struct Builder<'g> {
    g: &'g Graph,
    built: VertexSet,
    used: Vec<bool>,
    used_count: usize,
    ears: Vec<Ear>,
}

impl<'g> Builder<'g> {
    fn new(g: &'g Graph) -> Self {
        Builder {
            g,
            built: VertexSet::EMPTY,
            used: vec![false; g.edge_count()],
            used_count: 0,
            ears: Vec::new(),
        }
    }

    fn edge_index(&self, u: usize, v: usize) -> usize {
        self.g
            .edges()
            .binary_search(&(u.min(v), u.max(v)))
            .expect("edge exists")
    }

    fn push_ear(&mut self, ear: Ear) {
        for (u, v) in ear.edges() {
            let i = self.edge_index(u, v);
            debug_assert!(!self.used[i]);
            self.used[i] = true;
            self.used_count += 1;
        }
        for &v in &ear.path {
            self.built.insert(v);
        }
        self.ears.push(ear);
    }

    /// Consume every edge of `block`, starting from `first`.
    fn complete_block(&mut self, block: VertexSet, first: Option<Ear>) {
        if let Some(ear) = first {
            self.push_ear(ear);
        }
        loop {
            // Smallest unused block edge with a built endpoint.
            let mut chosen: Option<(usize, usize, usize)> = None; // (edge idx, u in built, other)
            for (i, &(u, v)) in self.g.edges().iter().enumerate() {
                if self.used[i] || !block.contains(u) || !block.contains(v) {
                    continue;
                }
                if self.built.contains(u) {
                    chosen = Some((i, u, v));
                    break;
                }
                if self.built.contains(v) {
                    chosen = Some((i, v, u));
                    break;
                }
            }
            let Some((idx, u, w)) = chosen else { break };
            if self.built.contains(w) {
                self.push_ear(Ear {
                    path: vec![u.min(w), u.max(w)],
                    kind: EarKind::OpenEar,
                });
                continue;
            }
            // Temporarily consume the seed edge so the BFS cannot walk
            // straight back to `u` across it.
            self.used[idx] = true;
            // BFS over unused block edges from w, interior outside `built`,
            // until any built vertex is reached.
            let n = self.g.len();
            let mut parent = vec![usize::MAX; n];
            let mut seen = VertexSet::singleton(w);
            let mut queue = std::collections::VecDeque::from([w]);
            let mut hit = usize::MAX;
            'bfs: while let Some(x) = queue.pop_front() {
                for y in self.g.adjacency(x).intersect(block).iter() {
                    let e = self.edge_index(x, y);
                    if self.used[e] {
                        continue;
                    }
                    if self.built.contains(y) {
                        parent[y] = x;
                        hit = y;
                        break 'bfs;
                    }
                    if !seen.contains(y) {
                        seen.insert(y);
                        parent[y] = x;
                        queue.push_back(y);
                    }
                }
            }
            assert_ne!(hit, usize::MAX, "block ear search must reach the built set");
            self.used[idx] = false;
            let mut tail = vec![hit];
            let mut x = parent[hit];
            while x != usize::MAX {
                tail.push(x);
                x = if x == w { usize::MAX } else { parent[x] };
            }
            tail.push(u);
            tail.reverse(); // u, w, ..., hit
            let kind = if u == hit { EarKind::ClosedEar } else { EarKind::OpenEar };
            let path = match kind {
                EarKind::ClosedEar => canonical_closed_path(tail),
                _ => canonical_open_path(tail),
            };
            self.push_ear(Ear { path, kind });
        }
    }
}

/// Stitch a full generalized decomposition over blocks and bridges.
/// `root_cycle` seeds the first block; `block_ears` produces the ear list
/// for every non-root block given its attach vertex.
fn stitch(
    g: &Graph,
    blocks: &[VertexSet],
    bridges: &[(usize, usize)],
    root_block: Option<usize>,
    mut emit_block: impl FnMut(&mut Builder, VertexSet, Option<usize>),
) -> Result<EarDecomposition> {
    let mut builder = Builder::new(g);
    let mut block_done = vec![false; blocks.len()];
    let mut bridge_done = vec![false; bridges.len()];

    if let Some(r) = root_block {
        emit_block(&mut builder, blocks[r], None);
        block_done[r] = true;
    } else {
        // Tree: start from the lexicographically smallest edge as a bridge.
        let &(u, v) = g
            .edges()
            .first()
            .ok_or_else(|| Error::Input("cannot decompose an edgeless graph".into()))?;
        builder.push_ear(Ear {
            path: vec![u, v],
            kind: EarKind::Bridge,
        });
        if let Some(pos) = bridges.iter().position(|&e| e == (u, v)) {
            bridge_done[pos] = true;
        }
    }

    loop {
        let next_block = (0..blocks.len())
            .filter(|&i| !block_done[i] && !blocks[i].intersect(builder.built).is_empty())
            .min_by_key(|&i| blocks[i].min());
        if let Some(i) = next_block {
            let attach_set = blocks[i].intersect(builder.built);
            debug_assert_eq!(attach_set.len(), 1);
            emit_block(&mut builder, blocks[i], Some(attach_set.min()));
            block_done[i] = true;
            continue;
        }
        let next_bridge = (0..bridges.len())
            .filter(|&i| {
                !bridge_done[i]
                    && (builder.built.contains(bridges[i].0) ^ builder.built.contains(bridges[i].1))
            })
            .min_by_key(|&i| bridges[i]);
        if let Some(i) = next_bridge {
            let (u, v) = bridges[i];
            let (attach, fresh) = if builder.built.contains(u) { (u, v) } else { (v, u) };
            builder.push_ear(Ear {
                path: vec![attach, fresh],
                kind: EarKind::Bridge,
            });
            bridge_done[i] = true;
            continue;
        }
        break;
    }

    if builder.used_count != g.edge_count() {
        return Err(Error::Input("graph is disconnected".into()));
    }
    let d = EarDecomposition {
        ears: builder.ears,
        ambient: g.clone(),
    };
    debug_assert!(d.validate().is_ok(), "{:?}", d.validate());
    Ok(d)
}

/// A generalized ear decomposition of a connected graph: a sequence of ears
/// and bridges whose first element is a cycle (odd when requested) or, for
/// trees, a bridge. Not necessarily optimal in even-ear count.
pub fn generalized_ear_decomposition(g: &Graph, require_odd_start: bool) -> Result<EarDecomposition> {
    if g.is_empty() || !g.is_connected() {
        return Err(Error::Input("ear decomposition requires a connected graph".into()));
    }
    if g.edge_count() == 0 {
        return Ok(EarDecomposition {
            ears: Vec::new(),
            ambient: g.clone(),
        });
    }
    let (blocks, bridges) = blocks_and_bridges(g, g.vertex_set());
    let root_cycle: Option<Vec<usize>>;
    let root_block: Option<usize>;
    if require_odd_start {
        let cycle = g
            .find_odd_cycle(g.vertex_set())
            .ok_or_else(|| Error::Input("graph is bipartite: no odd cycle to start from".into()))?;
        let cycle = normalize_cycle(&cycle);
        root_block = Some(
            blocks
                .iter()
                .position(|b| b.contains(cycle[0]) && cycle.iter().all(|&v| b.contains(v)))
                .expect("a cycle lies within one 2-edge-connected component"),
        );
        root_cycle = Some(cycle);
    } else if blocks.is_empty() {
        root_block = None;
        root_cycle = None;
    } else {
        let r = (0..blocks.len()).min_by_key(|&i| blocks[i].min()).unwrap();
        root_block = Some(r);
        root_cycle = Some(find_cycle_in(g, blocks[r]));
    }

    stitch(g, &blocks, &bridges, root_block, |builder, block, attach| {
        match attach {
            None => builder.complete_block(
                block,
                root_cycle.clone().map(|path| Ear {
                    path,
                    kind: EarKind::InitialCycle,
                }),
            ),
            Some(v) => {
                let path = find_cycle_through(g, block, v);
                builder.complete_block(
                    block,
                    Some(Ear {
                        path,
                        kind: EarKind::ClosedEar,
                    }),
                );
            }
        }
    })
}

/// Rotate a closed cycle path (with closure vertex) so it starts and ends
/// at `v`, then normalize the direction.
pub(crate) fn rotate_cycle_to(path: &[usize], v: usize) -> Vec<usize> {
    let core = &path[..path.len() - 1];
    let r = core.iter().position(|&x| x == v).expect("vertex on cycle");
    let mut out: Vec<usize> = (0..core.len()).map(|i| core[(r + i) % core.len()]).collect();
    out.push(v);
    canonical_closed_path(out)
}

/// Any simple cycle inside `block`, deterministic.
fn find_cycle_in(g: &Graph, block: VertexSet) -> Vec<usize> {
    find_cycle_through(g, block, block.min())
}

/// A simple cycle through `v` inside `block` (exists: blocks are
/// 2-edge-connected), found by BFS back to `v` avoiding the first edge.
fn find_cycle_through(g: &Graph, block: VertexSet, v: usize) -> Vec<usize> {
    let w = g
        .adjacency(v)
        .intersect(block)
        .iter()
        .next()
        .expect("block vertex has a block neighbor");
    // BFS from w back to v without the edge v-w.
    let n = g.len();
    let mut parent = vec![usize::MAX; n];
    let mut seen = VertexSet::singleton(w);
    let mut queue = std::collections::VecDeque::from([w]);
    while let Some(x) = queue.pop_front() {
        for y in g.adjacency(x).intersect(block).iter() {
            if x == w && y == v {
                continue;
            }
            if y == v {
                let mut back = vec![x];
                let mut t = parent[x];
                while t != usize::MAX {
                    back.push(t);
                    t = parent[t];
                }
                back.reverse(); // w .. x
                let mut cycle = vec![v];
                cycle.extend(back);
                cycle.push(v);
                return canonical_closed_path(cycle);
            }
            if !seen.contains(y) {
                seen.insert(y);
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    unreachable!("2-edge-connected block has a cycle through every vertex");
}

/// Quotient simple graph `G/f`: contracted classes keep the label of their
/// smallest member; loops and parallel edges are discarded.
pub fn contract(g: &Graph, f: &[(usize, usize)]) -> Result<Graph> {
    let mut parent: Vec<usize> = (0..g.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v) in f {
        let e = (u.min(v), u.max(v));
        if g.edges().binary_search(&e).is_err() {
            return Err(Error::Input(format!(
                "contract: {}-{} is not an edge",
                g.label(u),
                g.label(v)
            )));
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            parent[ru.max(rv)] = ru.min(rv);
        }
    }
    let mut out = Graph::new();
    for v in 0..g.len() {
        if find(&mut parent, v) == v {
            out.add_vertex(g.label(v))?;
        }
    }
    for &(u, v) in g.edges() {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            continue;
        }
        let (lu, lv) = (g.label(ru).to_string(), g.label(rv).to_string());
        if !out.has_edge(out.vertex_index(&lu)?, out.vertex_index(&lv)?) {
            out.add_edge(&lu, &lv)?;
        }
    }
    Ok(out)
}

/// `G > f`: subdivide each edge of `f`. A cycle edge `uv` is replaced by
/// `uw, wv`; a bridge `uv` keeps `uv` and gains `uw, wv` (triangle rule).
pub fn subdivide(g: &Graph, f: &[(usize, usize)]) -> Result<Graph> {
    let mut norm: Vec<(usize, usize)> = f.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    norm.sort_unstable();
    norm.dedup();
    for &(u, v) in &norm {
        if g.edges().binary_search(&(u, v)).is_err() {
            return Err(Error::Input(format!(
                "subdivide: {}-{} is not an edge",
                g.label(u),
                g.label(v)
            )));
        }
    }
    let bridges = g.bridges_within(g.vertex_set());
    let mut out = Graph::new();
    for v in 0..g.len() {
        out.add_vertex(g.label(v))?;
    }
    let mut taken: std::collections::HashSet<String> =
        g.labels().map(|s| s.to_string()).collect();
    for &(u, v) in g.edges() {
        let (lu, lv) = (g.label(u).to_string(), g.label(v).to_string());
        if norm.binary_search(&(u, v)).is_ok() {
            let mut w = format!("{lu}|{lv}");
            while taken.contains(&w) {
                w.push('\'');
            }
            taken.insert(w.clone());
            out.add_edge(&lu, &w)?;
            out.add_edge(&w, &lv)?;
            if bridges.contains(&(u, v)) {
                out.add_edge(&lu, &lv)?;
            }
        } else {
            out.add_edge(&lu, &lv)?;
        }
    }
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Smallest edge set whose contraction is factor-critical, without the
/// non-bipartite precondition (internal use on blocks and components).
/// Every critical-making set contains every bridge, so the search seeds the
/// bridges and ascends over subsets of the remaining edges.
pub(crate) fn min_critical_making_any(
    g: &Graph,
    limits: &Limits,
) -> Result<(usize, Vec<(usize, usize)>)> {
    let bridges = g.bridges_within(g.vertex_set());
    let non_bridge: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|e| !bridges.contains(e))
        .collect();
    for extra in 0..=non_bridge.len().min(limits.max_subset_size) {
        let combos = combinations(non_bridge.len(), extra);
        let hit = par::find_first(&combos, |combo| {
            let mut f = bridges.clone();
            f.extend(combo.iter().map(|&i| non_bridge[i]));
            let contracted = contract(g, &f).expect("edges of g");
            contracted.is_connected()
                && is_factor_critical_within(&contracted, contracted.vertex_set())
        });
        if let Some(i) = hit {
            let mut f = bridges.clone();
            f.extend(combos[i].iter().map(|&j| non_bridge[j]));
            f.sort_unstable();
            return Ok((f.len(), f));
        }
    }
    Err(Error::Resource(format!(
        "no critical-making set of at most {} extra edges (limit)",
        limits.max_subset_size
    )))
}

fn require_connected_non_bipartite(g: &Graph, what: &str) -> Result<()> {
    if g.is_empty() || !g.is_connected() {
        return Err(Error::Input(format!("{what}: graph must be connected")));
    }
    if !g.induced_non_bipartite(g.vertex_set()) {
        return Err(Error::Input(format!("{what}: graph is bipartite")));
    }
    Ok(())
}

/// Smallest critical-making set of a connected non-bipartite graph, by
/// cardinality-ascending exhaustive search. Its size is `phi + psi`.
pub fn min_critical_making(g: &Graph, limits: &Limits) -> Result<(usize, Vec<(usize, usize)>)> {
    require_connected_non_bipartite(g, "min_critical_making")?;
    min_critical_making_any(g, limits)
}

/// `(phi, psi)` of a connected non-bipartite graph: `psi` is the bridge
/// count, `phi` the minimum number of even ears, obtained from the
/// contraction characterization.
pub fn phi_psi(g: &Graph, limits: &Limits) -> Result<(usize, usize)> {
    require_connected_non_bipartite(g, "phi_psi")?;
    phi_psi_any(g, limits)
}

pub(crate) fn phi_psi_any(g: &Graph, limits: &Limits) -> Result<(usize, usize)> {
    let psi = g.bridges_within(g.vertex_set()).len();
    let (k, _) = min_critical_making_any(g, limits)?;
    Ok((k - psi, psi))
}

/// `nu_star` of the subgraph induced on `w`:
/// `(|w| + phi + psi - t) / 2` with `t` the component count. Every
/// component must be non-bipartite; `w = {}` yields 0 by convention.
pub fn nu_star(g: &Graph, w: VertexSet, limits: &Limits) -> Result<usize> {
    if w.is_empty() {
        return Ok(0);
    }
    let comps = g.connected_components(w)?;
    let mut phi = 0usize;
    let mut psi = 0usize;
    for &c in &comps {
        if !g.induced_non_bipartite(c) {
            return Err(Error::Input(
                "nu_star: an induced component is bipartite".into(),
            ));
        }
        let (sub, _) = g.induced(c);
        let (p, q) = phi_psi_any(&sub, limits)?;
        phi += p;
        psi += q;
    }
    let total = w.len() + phi + psi - comps.len();
    debug_assert_eq!(total % 2, 0, "nu_star must be an integer");
    Ok(total / 2)
}

/// Start constraint for the decomposition search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum StartConstraint {
    OddCycle,
    AnyCycle,
    CycleThrough(usize),
}

struct SearchCtx {
    budget: u64,
}

/// Backtracking search for an ear decomposition of a 2-edge-connected graph
/// with at most `max_even` even ears. Candidate ears are tried odd-first,
/// so a feasible target is usually reached without backtracking.
pub(crate) fn search_decomposition(
    g: &Graph,
    start: StartConstraint,
    max_even: usize,
    limits: &Limits,
) -> Result<Option<Vec<Ear>>> {
    let mut ctx = SearchCtx {
        budget: limits.max_search_nodes,
    };
    let cycles = enumerate_cycles(g, g.vertex_set());
    let mut starts: Vec<Vec<usize>> = cycles
        .into_iter()
        .filter(|c| match start {
            StartConstraint::OddCycle => (c.len() - 1) % 2 == 1,
            StartConstraint::AnyCycle => true,
            StartConstraint::CycleThrough(v) => c.contains(&v),
        })
        .collect();
    starts.sort_by_key(|c| ((c.len() - 1) % 2 == 0, c.len(), c.clone()));
    for cycle in starts {
        let even_cost = usize::from((cycle.len() - 1) % 2 == 0);
        if even_cost > max_even {
            continue;
        }
        let first = Ear {
            path: cycle,
            kind: EarKind::InitialCycle,
        };
        let mut used = vec![false; g.edge_count()];
        let mut built = VertexSet::EMPTY;
        let mut count = 0usize;
        for (u, v) in first.edges() {
            used[g.edges().binary_search(&(u, v)).unwrap()] = true;
            count += 1;
        }
        for &v in &first.path {
            built.insert(v);
        }
        let mut ears = vec![first];
        if dfs_ears(g, &mut built, &mut used, count, max_even - even_cost, &mut ears, &mut ctx)? {
            return Ok(Some(ears));
        }
    }
    Ok(None)
}

fn dfs_ears(
    g: &Graph,
    built: &mut VertexSet,
    used: &mut Vec<bool>,
    used_count: usize,
    evens_left: usize,
    ears: &mut Vec<Ear>,
    ctx: &mut SearchCtx,
) -> Result<bool> {
    if used_count == g.edge_count() {
        return Ok(true);
    }
    if ctx.budget == 0 {
        return Err(Error::Resource(
            "ear decomposition search exceeded its node budget".into(),
        ));
    }
    ctx.budget -= 1;
    let mut candidates = enumerate_ears(g, *built, used);
    candidates.sort_by_key(|e| (!e.is_odd(), e.path.len(), e.path.clone()));
    for ear in candidates {
        let cost = usize::from(!ear.is_odd());
        if cost > evens_left {
            continue;
        }
        let saved_built = *built;
        let mut count = used_count;
        for (u, v) in ear.edges() {
            let i = g.edges().binary_search(&(u, v)).unwrap();
            used[i] = true;
            count += 1;
        }
        for &v in &ear.path {
            built.insert(v);
        }
        ears.push(ear);
        if dfs_ears(g, built, used, count, evens_left - cost, ears, ctx)? {
            return Ok(true);
        }
        let ear = ears.pop().unwrap();
        for (u, v) in ear.edges() {
            let i = g.edges().binary_search(&(u, v)).unwrap();
            used[i] = false;
        }
        *built = saved_built;
    }
    Ok(false)
}

/// All candidate ears for the current state: unused paths between built
/// vertices whose interior is fresh (chords included), deduplicated by
/// orientation.
fn enumerate_ears(g: &Graph, built: VertexSet, used: &[bool]) -> Vec<Ear> {
    let mut out: Vec<Ear> = Vec::new();
    let mut seen: std::collections::HashSet<Vec<usize>> = Default::default();
    for u in built.iter() {
        let mut path = vec![u];
        let mut on_path = VertexSet::singleton(u);
        extend_ear(g, built, used, &mut path, &mut on_path, &mut out, &mut seen);
    }
    out
}

fn extend_ear(
    g: &Graph,
    built: VertexSet,
    used: &[bool],
    path: &mut Vec<usize>,
    on_path: &mut VertexSet,
    out: &mut Vec<Ear>,
    seen: &mut std::collections::HashSet<Vec<usize>>,
) {
    let tip = *path.last().unwrap();
    for next in g.adjacency(tip).iter() {
        let e = g.edges().binary_search(&(tip.min(next), tip.max(next))).unwrap();
        if used[e] {
            continue;
        }
        if path.len() >= 2 && path[path.len() - 2] == next {
            continue;
        }
        if built.contains(next) {
            // Ear ends here; interior vertices must all be fresh (they are
            // by construction) and the closing vertex may equal the start.
            if next == path[0] && path.len() < 3 {
                continue;
            }
            let mut full = path.clone();
            full.push(next);
            let canon = if next == path[0] {
                canonical_closed_path(full.clone())
            } else {
                canonical_open_path(full.clone())
            };
            if seen.insert(canon.clone()) {
                let kind = if next == path[0] { EarKind::ClosedEar } else { EarKind::OpenEar };
                out.push(Ear { path: canon, kind });
            }
            continue;
        }
        if on_path.contains(next) {
            continue;
        }
        path.push(next);
        on_path.insert(next);
        extend_ear(g, built, used, path, on_path, out, seen);
        path.pop();
        on_path.remove(next);
    }
}

/// All simple cycles of the subgraph induced on `mask`, normalized, each
/// reported once.
fn enumerate_cycles(g: &Graph, mask: VertexSet) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut seen: std::collections::HashSet<Vec<usize>> = Default::default();
    for start in mask.iter() {
        let mut path = vec![start];
        let mut on_path = VertexSet::singleton(start);
        cycle_dfs(g, mask, start, &mut path, &mut on_path, &mut out, &mut seen);
    }
    out
}

fn cycle_dfs(
    g: &Graph,
    mask: VertexSet,
    start: usize,
    path: &mut Vec<usize>,
    on_path: &mut VertexSet,
    out: &mut Vec<Vec<usize>>,
    seen: &mut std::collections::HashSet<Vec<usize>>,
) {
    let tip = *path.last().unwrap();
    for next in g.adjacency(tip).intersect(mask).iter() {
        // Only enumerate cycles whose minimum vertex is `start`.
        if next < start {
            continue;
        }
        if next == start && path.len() >= 3 {
            let canon = normalize_cycle(path);
            if seen.insert(canon.clone()) {
                out.push(canon);
            }
            continue;
        }
        if on_path.contains(next) {
            continue;
        }
        path.push(next);
        on_path.insert(next);
        cycle_dfs(g, mask, start, path, on_path, out, seen);
        path.pop();
        on_path.remove(next);
    }
}

/// A generalized ear decomposition of a connected non-bipartite graph that
/// starts with an odd cycle and has exactly `phi` even ears: per-block
/// optimal decompositions stitched across the bridges. The plain builder is
/// kept when it already achieves the optimum.
pub(crate) fn optimal_odd_start_generalized(g: &Graph, limits: &Limits) -> Result<EarDecomposition> {
    let plain = generalized_ear_decomposition(g, true)?;
    let (phi, _) = phi_psi(g, limits)?;
    if plain.even_ear_count() == phi {
        return Ok(plain);
    }

    let (blocks, bridges) = blocks_and_bridges(g, g.vertex_set());
    let root = blocks
        .iter()
        .position(|&b| g.induced_non_bipartite(b))
        .ok_or_else(|| Error::Input("no non-bipartite block".into()))?;
    let mut built = VertexSet::EMPTY;
    let mut ears: Vec<Ear> = Vec::new();
    let mut block_done = vec![false; blocks.len()];
    let mut bridge_done = vec![false; bridges.len()];
    // Search each block on its induced standalone graph and map back.
    let emit_block = |mask: VertexSet,
                      attach: Option<usize>,
                      ears: &mut Vec<Ear>,
                      built: &mut VertexSet|
     -> Result<()> {
        let (sub, orig) = g.induced(mask);
        let (block_phi, _) = phi_psi_any(&sub, limits)?;
        let start = match attach {
            None => StartConstraint::OddCycle,
            Some(v) => StartConstraint::CycleThrough(orig.iter().position(|&x| x == v).unwrap()),
        };
        let found = search_decomposition(&sub, start, block_phi, limits)?
            .ok_or_else(|| Error::Input("block search failed (theorem violation)".into()))?;
        for (i, ear) in found.into_iter().enumerate() {
            let mut path: Vec<usize> = ear.path.iter().map(|&x| orig[x]).collect();
            let mut kind = ear.kind;
            if i == 0 {
                if let Some(v) = attach {
                    path = rotate_cycle_to(&path, v);
                    kind = EarKind::ClosedEar;
                }
            }
            for &v in &path {
                built.insert(v);
            }
            ears.push(Ear { path, kind });
        }
        Ok(())
    };

    emit_block(blocks[root], None, &mut ears, &mut built)?;
    block_done[root] = true;
    loop {
        let next_block = (0..blocks.len())
            .filter(|&i| !block_done[i] && !blocks[i].intersect(built).is_empty())
            .min_by_key(|&i| blocks[i].min());
        if let Some(i) = next_block {
            let attach = blocks[i].intersect(built).min();
            emit_block(blocks[i], Some(attach), &mut ears, &mut built)?;
            block_done[i] = true;
            continue;
        }
        let next_bridge = (0..bridges.len())
            .filter(|&i| {
                !bridge_done[i] && (built.contains(bridges[i].0) ^ built.contains(bridges[i].1))
            })
            .min_by_key(|&i| bridges[i]);
        if let Some(i) = next_bridge {
            let (u, v) = bridges[i];
            let (attach, fresh) = if built.contains(u) { (u, v) } else { (v, u) };
            built.insert(fresh);
            ears.push(Ear {
                path: vec![attach, fresh],
                kind: EarKind::Bridge,
            });
            bridge_done[i] = true;
            continue;
        }
        break;
    }
    let d = EarDecomposition {
        ears,
        ambient: g.clone(),
    };
    d.validate()?;
    assert_eq!(d.even_ear_count(), phi, "stitched decomposition must be optimal");
    Ok(d)
}

/// An ear decomposition of a 2-edge-connected non-bipartite graph whose
/// even-ear count equals `phi`, starting with an odd cycle when requested.
pub fn optimal_decomposition_search(
    g: &Graph,
    odd_start: bool,
    limits: &Limits,
) -> Result<EarDecomposition> {
    require_connected_non_bipartite(g, "optimal_decomposition_search")?;
    if !g.bridges_within(g.vertex_set()).is_empty() {
        return Err(Error::Input(
            "optimal_decomposition_search: graph has bridges (not 2-edge-connected)".into(),
        ));
    }
    if g.len() > limits.max_vertices {
        return Err(Error::Resource(format!(
            "optimal_decomposition_search: graph exceeds {} vertices",
            limits.max_vertices
        )));
    }
    let (phi, _) = phi_psi_any(g, limits)?;
    let start = if odd_start { StartConstraint::OddCycle } else { StartConstraint::AnyCycle };
    let ears = search_decomposition(g, start, phi, limits)?.ok_or_else(|| {
        Error::Input("no ear decomposition within the even-ear target (theorem violation)".into())
    })?;
    let d = EarDecomposition {
        ears,
        ambient: g.clone(),
    };
    assert_eq!(d.even_ear_count(), phi, "search must achieve exactly phi even ears");
    d.validate()?;
    Ok(d)
}
