//! Labeled simple undirected graphs over a canonical vertex order, with
//! bit-set vertex subsets. Every other module computes on these.

use std::collections::HashMap;
use std::fmt;

use crate::{Error, Result};

/// Largest vertex count representable by [`VertexSet`].
pub const MAX_VERTICES: usize = 64;

/// A subset of the vertices of an ambient graph, as a bit set over the
/// canonical vertex order. Bit `i` set means vertex with index `i` is a
/// member.
#[derive(
    Clone,
    Copy,
    PartialEq,
    Eq,
    Hash,
    PartialOrd,
    Ord,
    Default,
    serde::Serialize,
    serde::Deserialize,
)]
#[serde(transparent)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(i: usize) -> VertexSet {
        VertexSet(1u64 << i)
    }

    pub fn full(n: usize) -> VertexSet {
        if n == 0 {
            VertexSet(0)
        } else if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u64 << i);
    }

    pub fn with(self, i: usize) -> VertexSet {
        VertexSet(self.0 | 1u64 << i)
    }

    pub fn without(self, i: usize) -> VertexSet {
        VertexSet(self.0 & !(1u64 << i))
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersect(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn minus(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Index of the smallest member; panics on the empty set.
    pub fn min(self) -> usize {
        debug_assert!(!self.is_empty());
        self.0.trailing_zeros() as usize
    }

    /// Members in increasing index order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = VertexSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A labeled simple undirected graph. Vertices are opaque string labels
/// mapped to dense indices `0..d` in first-appearance order; that order is
/// canonical and defines the coordinates of every exponent vector built on
/// top of the graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<VertexSet>,
    /// Edges as `(u, v)` with `u < v`, sorted lexicographically. This is the
    /// canonical edge order used for deterministic tie-breaking everywhere.
    edges: Vec<(usize, usize)>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({} vertices: ", self.len())?;
        for (u, v) in &self.edges {
            write!(f, "{}-{} ", self.labels[*u], self.labels[*v])?;
        }
        write!(f, ")")
    }
}

impl Graph {
    pub fn new() -> Graph {
        Graph {
            labels: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
            edges: Vec::new(),
        }
    }

    /// Declare a vertex, returning its canonical index. Re-declaring an
    /// existing label is a no-op.
    pub fn add_vertex(&mut self, label: &str) -> Result<usize> {
        if let Some(&i) = self.index.get(label) {
            return Ok(i);
        }
        if self.labels.len() >= MAX_VERTICES {
            return Err(Error::Resource(format!(
                "graphs with more than {MAX_VERTICES} vertices are not supported"
            )));
        }
        let i = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), i);
        self.adj.push(VertexSet::EMPTY);
        Ok(i)
    }

    pub fn add_edge(&mut self, u: &str, v: &str) -> Result<()> {
        if u == v {
            return Err(Error::Parse(format!("self-loop at vertex `{u}`")));
        }
        let ui = self.add_vertex(u)?;
        let vi = self.add_vertex(v)?;
        if self.adj[ui].contains(vi) {
            return Err(Error::Parse(format!("duplicate edge `{u} {v}`")));
        }
        self.adj[ui].insert(vi);
        self.adj[vi].insert(ui);
        let e = (ui.min(vi), ui.max(vi));
        let pos = self.edges.partition_point(|&x| x < e);
        self.edges.insert(pos, e);
        Ok(())
    }

    /// Build from `(u, v)` label pairs; vertex order is first appearance.
    pub fn from_edge_labels<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<Graph> {
        let mut g = Graph::new();
        for (u, v) in pairs {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Parse the edge-list text format: one edge per line `u v`, `#`
    /// comments, blank lines ignored, `vertex u` lines declare isolated
    /// vertices. Canonical order is first-appearance order.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut g = Graph::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                ["vertex", label] => {
                    g.add_vertex(label)?;
                }
                [u, v] => {
                    g.add_edge(u, v).map_err(|e| match e {
                        Error::Parse(msg) => Error::Parse(format!("line {}: {msg}", lineno + 1)),
                        other => other,
                    })?;
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected `u v` or `vertex u`, got `{line}`",
                        lineno + 1
                    )));
                }
            }
        }
        Ok(g)
    }

    /// Serialize back to the edge-list text format. Every vertex is
    /// declared up front in canonical order so parsing reproduces the
    /// original index assignment exactly.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for label in &self.labels {
            out.push_str(&format!("vertex {label}\n"));
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", self.labels[u], self.labels[v]));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical (lexicographic) order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn adjacency(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(|s| s.as_str())
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::Input(format!("unknown vertex label `{label}`")))
    }

    /// All vertices as a set.
    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    /// Resolve labels to a vertex set.
    pub fn set_of<'a>(&self, labels: impl IntoIterator<Item = &'a str>) -> Result<VertexSet> {
        let mut s = VertexSet::EMPTY;
        for l in labels {
            s.insert(self.vertex_index(l)?);
        }
        Ok(s)
    }

    /// Labels of a set in canonical order.
    pub fn labels_of(&self, s: VertexSet) -> Vec<String> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }

    fn check_subset(&self, s: VertexSet) -> Result<()> {
        if !s.is_subset_of(self.vertex_set()) {
            return Err(Error::Input(
                "vertex set contains indices outside the graph".into(),
            ));
        }
        Ok(())
    }

    /// Open neighborhood of `s`: every vertex adjacent to a member of `s`.
    /// May intersect `s` itself.
    pub fn neighbors(&self, s: VertexSet) -> Result<VertexSet> {
        self.check_subset(s)?;
        let mut out = VertexSet::EMPTY;
        for v in s.iter() {
            out = out.union(self.adj[v]);
        }
        Ok(out)
    }

    /// True iff no edge of the graph has both endpoints in `z` (coclique).
    pub fn is_independent(&self, z: VertexSet) -> Result<bool> {
        self.check_subset(z)?;
        Ok(z.iter().all(|v| self.adj[v].intersect(z).is_empty()))
    }

    /// Connected components of the subgraph induced on `s`, ordered by their
    /// smallest canonical index.
    pub fn connected_components(&self, s: VertexSet) -> Result<Vec<VertexSet>> {
        self.check_subset(s)?;
        let mut remaining = s;
        let mut out = Vec::new();
        while !remaining.is_empty() {
            let start = remaining.min();
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier.iter() {
                    next = next.union(self.adj[v].intersect(s));
                }
                frontier = next.minus(comp);
                comp = comp.union(frontier);
            }
            out.push(comp);
            remaining = remaining.minus(comp);
        }
        Ok(out)
    }

    /// True iff the whole graph is connected (vacuously true when empty).
    pub fn is_connected(&self) -> bool {
        self.is_empty()
            || self
                .connected_components(self.vertex_set())
                .map(|c| c.len() == 1)
                .unwrap_or(false)
    }

    /// Proper 2-coloring of the subgraph induced on `s`, or `None` when it
    /// contains an odd cycle. The witness maps each vertex of `s` to a side.
    pub fn two_coloring(&self, s: VertexSet) -> Option<(VertexSet, VertexSet)> {
        let mut side = vec![-1i8; self.len()];
        for root in s.iter() {
            if side[root] != -1 {
                continue;
            }
            side[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for u in self.adj[v].intersect(s).iter() {
                    if side[u] == -1 {
                        side[u] = 1 - side[v];
                        queue.push_back(u);
                    } else if side[u] == side[v] {
                        return None;
                    }
                }
            }
        }
        let mut c0 = VertexSet::EMPTY;
        let mut c1 = VertexSet::EMPTY;
        for v in s.iter() {
            if side[v] == 0 {
                c0.insert(v);
            } else {
                c1.insert(v);
            }
        }
        Some((c0, c1))
    }

    /// True iff the subgraph induced on `s` contains an odd cycle.
    /// Requires `s` nonempty and connected in the graph.
    pub fn has_odd_cycle(&self, s: VertexSet) -> Result<bool> {
        self.check_subset(s)?;
        if s.is_empty() {
            return Err(Error::Input("has_odd_cycle: empty vertex set".into()));
        }
        if self.connected_components(s)?.len() != 1 {
            return Err(Error::Input(
                "has_odd_cycle: induced subgraph is disconnected".into(),
            ));
        }
        Ok(self.two_coloring(s).is_none())
    }

    /// Non-bipartiteness of an induced subgraph without the connectivity
    /// precondition; used by the enumeration loops per component.
    pub(crate) fn induced_non_bipartite(&self, s: VertexSet) -> bool {
        !s.is_empty() && self.two_coloring(s).is_none()
    }

    /// Cut edges of the whole graph, in canonical edge order. The graph must
    /// be connected; per-component needs are served by [`Graph::bridges_within`].
    pub fn bridges(&self) -> Result<Vec<(usize, usize)>> {
        if !self.is_connected() {
            return Err(Error::Input("bridges: graph is disconnected".into()));
        }
        Ok(self.bridges_within(self.vertex_set()))
    }

    /// Cut edges of the subgraph induced on `s` (any number of components).
    pub fn bridges_within(&self, s: VertexSet) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut visited = vec![false; n];
        let mut tin = vec![0usize; n];
        let mut low = vec![0usize; n];
        let mut timer = 0usize;
        let mut out = Vec::new();
        // Iterative DFS; (vertex, parent, neighbor cursor).
        let mut stack: Vec<(usize, usize, Vec<usize>, usize)> = Vec::new();
        for root in s.iter() {
            if visited[root] {
                continue;
            }
            visited[root] = true;
            tin[root] = timer;
            low[root] = timer;
            timer += 1;
            let nbrs: Vec<usize> = self.adj[root].intersect(s).iter().collect();
            stack.push((root, usize::MAX, nbrs, 0));
            while let Some(top) = stack.last_mut() {
                let (v, parent, nbrs, cursor) = (top.0, top.1, &top.2, top.3);
                if cursor < nbrs.len() {
                    let to = nbrs[cursor];
                    top.3 += 1;
                    if to == parent {
                        continue;
                    }
                    if visited[to] {
                        low[v] = low[v].min(tin[to]);
                    } else {
                        visited[to] = true;
                        tin[to] = timer;
                        low[to] = timer;
                        timer += 1;
                        let to_nbrs: Vec<usize> = self.adj[to].intersect(s).iter().collect();
                        stack.push((to, v, to_nbrs, 0));
                    }
                } else {
                    let (v, parent) = (v, parent);
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > tin[parent] {
                            out.push((parent.min(v), parent.max(v)));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Build the standalone graph induced on `s`, keeping labels and the
    /// relative canonical order. Also returns the original index of each new
    /// vertex.
    pub fn induced(&self, s: VertexSet) -> (Graph, Vec<usize>) {
        let orig: Vec<usize> = s.iter().collect();
        let mut g = Graph::new();
        for &i in &orig {
            g.add_vertex(&self.labels[i]).expect("within limits");
        }
        for &(u, v) in &self.edges {
            if s.contains(u) && s.contains(v) {
                g.add_edge(&self.labels[u].clone(), &self.labels[v].clone())
                    .expect("simple by construction");
            }
        }
        (g, orig)
    }

    /// Length `2k-1` of a shortest odd cycle, or `None` for bipartite graphs.
    /// BFS from every vertex; exact.
    pub fn odd_girth(&self) -> Option<usize> {
        let n = self.len();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::new();
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for u in self.adj[v].iter() {
                    if dist[u] == usize::MAX {
                        dist[u] = dist[v] + 1;
                        queue.push_back(u);
                    }
                }
            }
            for &(u, v) in &self.edges {
                if dist[u] != usize::MAX && dist[v] != usize::MAX {
                    let len = dist[u] + dist[v] + 1;
                    if len % 2 == 1 {
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Some simple odd cycle of the graph, as a vertex sequence
    /// (first != last, edges wrap around). `None` for bipartite graphs.
    pub fn find_odd_cycle(&self, s: VertexSet) -> Option<Vec<usize>> {
        // DFS 2-coloring; a same-color tree conflict closes an odd cycle.
        let n = self.len();
        let mut color = vec![-1i8; n];
        let mut parent = vec![usize::MAX; n];
        for root in s.iter() {
            if color[root] != -1 {
                continue;
            }
            color[root] = 0;
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for u in self.adj[v].intersect(s).iter() {
                    if color[u] == -1 {
                        color[u] = 1 - color[v];
                        parent[u] = v;
                        stack.push(u);
                    } else if color[u] == color[v] && parent[v] != u {
                        // Walk both up to their common ancestor.
                        let mut path_v = vec![v];
                        let mut path_u = vec![u];
                        let mut seen: HashMap<usize, usize> = HashMap::new();
                        let mut x = v;
                        while x != usize::MAX {
                            seen.insert(x, path_v.len() - 1);
                            if x == root {
                                break;
                            }
                            x = parent[x];
                            if x != usize::MAX {
                                path_v.push(x);
                            }
                        }
                        let mut y = u;
                        loop {
                            if let Some(&i) = seen.get(&y) {
                                // cycle: v .. lca (path_v[..=i]) then back down to u
                                let mut cycle: Vec<usize> = path_v[..=i].to_vec();
                                path_u.pop();
                                cycle.extend(path_u.iter().rev());
                                if cycle.len() >= 3 && cycle.len() % 2 == 1 {
                                    return Some(cycle);
                                }
                                break;
                            }
                            y = parent[y];
                            path_u.push(y);
                        }
                    }
                }
            }
        }
        None
    }
}

impl Default for Graph {
    fn default() -> Self {
        Graph::new()
    }
}

/// The running example graph used throughout the test suite: vertices
/// `a..h`, edges `ab bc ca cd de ef fg gd eh`.
pub fn triangle_square_graph() -> Graph {
    Graph::from_edge_labels([
        ("a", "b"),
        ("b", "c"),
        ("c", "a"),
        ("c", "d"),
        ("d", "e"),
        ("e", "f"),
        ("f", "g"),
        ("g", "d"),
        ("e", "h"),
    ])
    .unwrap()
}

/// Cycle graph on `n` vertices labeled `v1..vn`.
pub fn cycle_graph(n: usize) -> Graph {
    let labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut g = Graph::new();
    for i in 0..n {
        let j = (i + 1) % n;
        g.add_edge(&labels[i], &labels[j]).unwrap();
    }
    g
}

/// `n` triangles sharing the single vertex `a1`.
pub fn friendship_graph(n: usize) -> Graph {
    let mut g = Graph::new();
    for i in 1..=n {
        let b = format!("b{i}");
        let c = format!("c{i}");
        g.add_edge("a1", &b).unwrap();
        g.add_edge(&b, &c).unwrap();
        g.add_edge(&c, "a1").unwrap();
    }
    g
}

/// The 13-vertex triangle-plus-hendecagon graph: path `a1..a11` closed by
/// `a1 a11`, plus the triangle `a1 a12 a13`.
pub fn triangle_hendecagon_graph() -> Graph {
    let mut g = Graph::new();
    for i in 1..=10 {
        g.add_edge(&format!("a{i}"), &format!("a{}", i + 1)).unwrap();
    }
    g.add_edge("a1", "a11").unwrap();
    g.add_edge("a1", "a12").unwrap();
    g.add_edge("a1", "a13").unwrap();
    g.add_edge("a12", "a13").unwrap();
    g
}

/// The `2l+3`-vertex family: the `(2l+1)`-gon `a1..a_{2l+1}` closed by
/// `a1 a_{2l+1}`, plus the triangle `a1 a_{2l+2} a_{2l+3}` sharing only the
/// vertex `a1` with the polygon.
pub fn triangle_polygon_graph(l: usize) -> Graph {
    let mut g = Graph::new();
    for i in 1..=2 * l {
        g.add_edge(&format!("a{i}"), &format!("a{}", i + 1)).unwrap();
    }
    g.add_edge("a1", &format!("a{}", 2 * l + 1)).unwrap();
    g.add_edge("a1", &format!("a{}", 2 * l + 2)).unwrap();
    g.add_edge("a1", &format!("a{}", 2 * l + 3)).unwrap();
    g.add_edge(&format!("a{}", 2 * l + 2), &format!("a{}", 2 * l + 3))
        .unwrap();
    g
}
