//! Immutable simple-graph representation and the traversal primitives the
//! rest of the crate is built on: neighborhoods, components, girth, shortest
//! attachment paths and the pendant-terminal reduction.
//!
//! Vertices are dense 0-based ids. Adjacency lists are kept sorted and all
//! traversals visit neighbors in ascending id order, so every operation is
//! deterministic. Graphs are never mutated after construction; "deleting"
//! vertices is always expressed through a removed-set mask.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(u32, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(u32, u32),
    #[error("terminals are not pairwise distinct")]
    DuplicateTerminals,
    #[error("seed vertex {0} is in the removed set")]
    SeedRemoved(u32),
    #[error("no vertex reachable from the source has a neighbor in the target set")]
    NoAttachment,
}

/// Set of vertex ids of one graph, backed by a bitmask.
///
/// Iteration is always in ascending id order.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct VertexSet {
    words: Vec<u64>,
    len: usize,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        VertexSet {
            words: vec![0; n.div_ceil(64)],
            len: 0,
        }
    }

    pub fn insert(&mut self, v: u32) -> bool {
        let (w, b) = (v as usize / 64, v as usize % 64);
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        if fresh {
            self.words[w] |= 1 << b;
            self.len += 1;
        }
        fresh
    }

    pub fn remove(&mut self, v: u32) -> bool {
        let (w, b) = (v as usize / 64, v as usize % 64);
        if w >= self.words.len() || self.words[w] & (1 << b) == 0 {
            return false;
        }
        self.words[w] &= !(1 << b);
        self.len -= 1;
        true
    }

    pub fn contains(&self, v: u32) -> bool {
        let (w, b) = (v as usize / 64, v as usize % 64);
        w < self.words.len() && self.words[w] & (1 << b) != 0
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            (0..64)
                .filter(move |b| word & (1 << b) != 0)
                .map(move |b| (wi * 64 + b) as u32)
        })
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for v in other.iter() {
            self.insert(v);
        }
    }

    pub fn remove_all(&mut self, other: &VertexSet) {
        for v in other.iter() {
            self.remove(v);
        }
    }
}

impl FromIterator<u32> for VertexSet {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ordered list of distinct vertices with consecutive entries adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    vertices: Vec<u32>,
}

impl Path {
    /// Wraps a vertex list without validation; callers that construct paths
    /// by hand should check with [`Path::is_path_in`].
    pub fn from_vertices(vertices: Vec<u32>) -> Self {
        Path { vertices }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn first(&self) -> u32 {
        self.vertices[0]
    }

    pub fn last(&self) -> u32 {
        *self.vertices.last().expect("empty path")
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Consecutive entries adjacent, all entries distinct.
    pub fn is_path_in(&self, g: &Graph) -> bool {
        let mut seen = VertexSet::with_capacity(g.n());
        for (i, &v) in self.vertices.iter().enumerate() {
            if (v as usize) >= g.n() || !seen.insert(v) {
                return false;
            }
            if i > 0 && !g.has_edge(self.vertices[i - 1], v) {
                return false;
            }
        }
        !self.vertices.is_empty()
    }

    /// A path is induced when no edge joins two non-consecutive entries.
    pub fn is_induced_in(&self, g: &Graph) -> bool {
        if !self.is_path_in(g) {
            return false;
        }
        for i in 0..self.vertices.len() {
            for j in i + 2..self.vertices.len() {
                if g.has_edge(self.vertices[i], self.vertices[j]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Length of a shortest cycle; `Infinite` for forests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn at_least(self, k: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= k,
            Girth::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }
}

/// Simple undirected graph. Symmetric, loop-free, no parallel edges;
/// adjacency lists sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    m: usize,
}

impl Graph {
    pub fn new(n: usize, edges: &[(u32, u32)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u as usize >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v as usize >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                let v = list.windows(2).find(|w| w[0] == w[1]).unwrap()[0];
                return Err(GraphError::DuplicateEdge(v, v));
            }
        }
        Ok(Graph {
            adj,
            m: edges.len(),
        })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    /// Neighbors of `v` in ascending id order.
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.n()).map(|v| v as u32)
    }

    /// Edge list with u < v, sorted; the canonical serialization order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.m);
        for u in self.vertices() {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Validation pass: symmetry, sortedness, no loops or parallel edges.
    pub fn validate(&self) -> bool {
        for u in self.vertices() {
            let list = self.neighbors(u);
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &v in list {
                if v == u || v as usize >= self.n() || !self.has_edge(v, u) {
                    return false;
                }
            }
        }
        true
    }

    /// Degree of `v` counted within the induced subgraph on `within`.
    pub fn degree_within(&self, v: u32, within: &VertexSet) -> usize {
        self.neighbors(v).iter().filter(|&&u| within.contains(u)).count()
    }
}

/// Minimum cycle length, found by a shortest-cycle-through-vertex BFS from
/// every vertex. Each candidate `dist[u] + dist[x] + 1` for a non-tree edge
/// `ux` closes a walk using `ux` exactly once, so it never undercuts the
/// girth; rooting the search at a vertex of a shortest cycle attains it.
pub fn girth(g: &Graph) -> Girth {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![u32::MAX; n];
    let mut queue = Vec::with_capacity(n);
    for root in g.vertices() {
        dist.fill(usize::MAX);
        queue.clear();
        dist[root as usize] = 0;
        parent[root as usize] = u32::MAX;
        queue.push(root);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            if 2 * dist[u as usize] + 1 >= best {
                break;
            }
            for &x in g.neighbors(u) {
                if dist[x as usize] == usize::MAX {
                    dist[x as usize] = dist[u as usize] + 1;
                    parent[x as usize] = u;
                    queue.push(x);
                } else if parent[u as usize] != x && parent[x as usize] != u {
                    best = best.min(dist[u as usize] + dist[x as usize] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

/// Vertex set of `seed`'s connected component in `g` with `removed` deleted.
pub fn connected_component(
    g: &Graph,
    removed: &VertexSet,
    seed: u32,
) -> Result<VertexSet, GraphError> {
    if seed as usize >= g.n() {
        return Err(GraphError::VertexOutOfRange(seed, g.n()));
    }
    if removed.contains(seed) {
        return Err(GraphError::SeedRemoved(seed));
    }
    let mut comp = VertexSet::with_capacity(g.n());
    comp.insert(seed);
    let mut queue = vec![seed];
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for &v in g.neighbors(u) {
            if !removed.contains(v) && comp.insert(v) {
                queue.push(v);
            }
        }
    }
    Ok(comp)
}

/// BFS from `source` inside `g[allowed]`, returning parents and the visit
/// order. Neighbors are explored ascending, so the traversal is unique.
fn bfs_within(g: &Graph, allowed: &VertexSet, source: u32) -> (Vec<u32>, Vec<u32>) {
    let mut parent = vec![u32::MAX; g.n()];
    let mut order = vec![source];
    let mut visited = VertexSet::with_capacity(g.n());
    visited.insert(source);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &v in g.neighbors(u) {
            if allowed.contains(v) && visited.insert(v) {
                parent[v as usize] = u;
                order.push(v);
            }
        }
    }
    (parent, order)
}

fn walk_back(parent: &[u32], mut v: u32) -> Vec<u32> {
    let mut path = vec![v];
    while parent[v as usize] != u32::MAX {
        v = parent[v as usize];
        path.push(v);
    }
    path.reverse();
    path
}

/// Shortest path from `source` inside `g[allowed]` to the first vertex `w`
/// that has a neighbor in `target`. No earlier vertex of the returned path
/// has a neighbor in `target`, and the path is induced. Vertices of `target`
/// itself are never entered.
pub fn shortest_path_to_attachment(
    g: &Graph,
    allowed: &VertexSet,
    source: u32,
    target: &VertexSet,
) -> Result<Path, GraphError> {
    if source as usize >= g.n() {
        return Err(GraphError::VertexOutOfRange(source, g.n()));
    }
    let mut effective = allowed.clone();
    effective.remove_all(target);
    let attaches = |v: u32| g.neighbors(v).iter().any(|&u| target.contains(u));
    if attaches(source) {
        return Ok(Path::from_vertices(vec![source]));
    }
    let (parent, order) = bfs_within(g, &effective, source);
    // BFS order is by layer then by discovery, so the first attaching vertex
    // found is at minimum distance.
    for &v in order.iter().skip(1) {
        if attaches(v) {
            return Ok(Path::from_vertices(walk_back(&parent, v)));
        }
    }
    Err(GraphError::NoAttachment)
}

/// Shortest path between two vertices inside `g[allowed]`, or None when they
/// are in different components. Shortest paths in an unweighted graph are
/// always induced.
pub fn shortest_path(g: &Graph, allowed: &VertexSet, from: u32, to: u32) -> Option<Path> {
    if from == to {
        return Some(Path::from_vertices(vec![from]));
    }
    let (parent, order) = bfs_within(g, allowed, from);
    if order.contains(&to) {
        Some(Path::from_vertices(walk_back(&parent, to)))
    } else {
        None
    }
}

/// The unique path between `from` and `to` in the tree `g[within]`.
pub(crate) fn tree_path(g: &Graph, within: &VertexSet, from: u32, to: u32) -> Option<Vec<u32>> {
    if !within.contains(from) || !within.contains(to) {
        return None;
    }
    if from == to {
        return Some(vec![from]);
    }
    let (parent, order) = bfs_within(g, within, from);
    if order.contains(&to) {
        let mut p = walk_back(&parent, to);
        debug_assert_eq!(p[0], from);
        p.shrink_to_fit();
        Some(p)
    } else {
        None
    }
}

/// Adds a fresh pendant neighbor to each of the `k` given vertices, turning
/// the vertices-in-a-tree question into the equivalent terminals-in-a-tree
/// question. Girth is unchanged since the new vertices have degree 1.
pub fn reduce_to_terminals(
    g: &Graph,
    vertices: &[u32],
) -> Result<(Graph, Vec<u32>), GraphError> {
    let mut seen = VertexSet::with_capacity(g.n());
    for &x in vertices {
        if x as usize >= g.n() {
            return Err(GraphError::VertexOutOfRange(x, g.n()));
        }
        if !seen.insert(x) {
            return Err(GraphError::DuplicateTerminals);
        }
    }
    let mut edges = g.edges();
    let mut pendants = Vec::with_capacity(vertices.len());
    for (i, &x) in vertices.iter().enumerate() {
        let y = (g.n() + i) as u32;
        edges.push((x, y));
        pendants.push(y);
    }
    let g2 = Graph::new(g.n() + vertices.len(), &edges)?;
    Ok((g2, pendants))
}

/// Undoes the pendant reduction on a tree of the reduced graph: dropping the
/// added degree-1 vertices leaves an induced tree of the original graph that
/// covers the original vertices.
pub fn map_tree_back(tree_in_reduced: &VertexSet, added_pendants: &VertexSet) -> VertexSet {
    let mut out = tree_in_reduced.clone();
    out.remove_all(added_pendants);
    out
}
