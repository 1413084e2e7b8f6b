//! Reference implementations used to cross-check the solver: a brute-force
//! decider for small graphs and deterministic instance generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::certificates::{K4Structure, KStructure, K4_PAIRS};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, oracle cap is {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("infeasible instance spec: {0}")]
    InfeasibleSpec(String),
}

/// Decides whether some induced tree of `g` contains every terminal, by
/// enumerating vertex subsets. Only intended for graphs of at most ~22
/// vertices; anything above `cap` is rejected.
pub fn brute_force_k_in_a_tree(
    g: &Graph,
    terminals: &[u32],
    cap: usize,
) -> Result<bool, OracleError> {
    brute_force_tree_witness(g, terminals, cap).map(|w| w.is_some())
}

/// Like [`brute_force_k_in_a_tree`] but returns the first witness found
/// (smallest bitmask over the non-terminal vertices), or None.
pub fn brute_force_tree_witness(
    g: &Graph,
    terminals: &[u32],
    cap: usize,
) -> Result<Option<VertexSet>, OracleError> {
    if g.n() > cap {
        return Err(OracleError::TooLarge { n: g.n(), cap });
    }
    let required: VertexSet = terminals.iter().copied().collect();
    let free: Vec<u32> = g
        .vertices()
        .filter(|v| !required.contains(*v))
        .collect();
    for mask in 0u64..(1u64 << free.len()) {
        let mut vertices = required.clone();
        for (bit, &v) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                vertices.insert(v);
            }
        }
        if is_induced_tree(g, &vertices) {
            return Ok(Some(vertices));
        }
    }
    Ok(None)
}

fn is_induced_tree(g: &Graph, vertices: &VertexSet) -> bool {
    let total = vertices.len();
    if total == 0 {
        return false;
    }
    let mut edges = 0usize;
    for u in vertices.iter() {
        for &v in g.neighbors(u) {
            if u < v && vertices.contains(v) {
                edges += 1;
            }
        }
    }
    if edges != total - 1 {
        return false;
    }
    // connected + |E| = |V| - 1  =>  tree
    let seed = vertices.iter().next().unwrap();
    let mut seen = VertexSet::new();
    seen.insert(seed);
    let mut queue = std::collections::VecDeque::from([seed]);
    let mut count = 1usize;
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if vertices.contains(v) && !seen.contains(v) {
                seen.insert(v);
                count += 1;
                queue.push_back(v);
            }
        }
    }
    count == total
}

/// Families of test instances. Every generator is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceSpec {
    /// A chordless k-cycle with one pendant path of `path_len` edges on each
    /// cycle vertex; the k path tips are the terminals. Unsolvable.
    MinimalKStructure { k: usize, path_len: usize },
    /// K4 with every edge subdivided once, plus a pendant path of `path_len`
    /// edges on each subdivision vertex; the 6 tips are the terminals.
    /// Unsolvable for k = 6, girth exactly 6.
    SubdividedK4 { path_len: usize },
    /// A star of `k` legs of `leg_len` edges; the leg tips are the
    /// terminals. Trivially solvable (the graph is a tree).
    Spider { k: usize, leg_len: usize },
    /// A connected random graph on `n` core vertices with girth >= k, plus
    /// `k` pendant terminals attached to distinct core vertices.
    RandomGirth { k: usize, n: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub terminals: Vec<u32>,
}

pub fn generate(spec: &InstanceSpec) -> Result<Instance, OracleError> {
    match *spec {
        InstanceSpec::MinimalKStructure { k, path_len } => {
            if k < 3 || path_len == 0 {
                return Err(OracleError::InfeasibleSpec(format!(
                    "need k >= 3 and path_len >= 1, got k={k}, path_len={path_len}"
                )));
            }
            let cert = canonical_k_structure(k, path_len);
            let mut edges: Vec<(u32, u32)> = (0..k as u32)
                .map(|i| (i, (i + 1) % k as u32))
                .collect();
            for p in cert.paths() {
                for w in p.windows(2) {
                    edges.push((w[0], w[1]));
                }
            }
            let graph = Graph::new(k + k * path_len, &edges).unwrap();
            Ok(Instance {
                graph,
                terminals: cert.terminals(),
            })
        }
        InstanceSpec::SubdividedK4 { path_len } => {
            if path_len == 0 {
                return Err(OracleError::InfeasibleSpec(
                    "need path_len >= 1".into(),
                ));
            }
            let cert = canonical_k4_structure(path_len);
            let mut edges = subdivided_k4_core().edges();
            for p in &cert.paths {
                for w in p.windows(2) {
                    edges.push((w[0], w[1]));
                }
            }
            let graph = Graph::new(10 + 6 * path_len, &edges).unwrap();
            Ok(Instance {
                graph,
                terminals: cert.terminals(),
            })
        }
        InstanceSpec::Spider { k, leg_len } => {
            if k == 0 || leg_len == 0 {
                return Err(OracleError::InfeasibleSpec(
                    "need k >= 1 and leg_len >= 1".into(),
                ));
            }
            let mut edges = Vec::new();
            let mut terminals = Vec::new();
            for i in 0..k {
                let base = (1 + i * leg_len) as u32;
                edges.push((0, base));
                for j in 1..leg_len as u32 {
                    edges.push((base + j - 1, base + j));
                }
                terminals.push(base + leg_len as u32 - 1);
            }
            let graph = Graph::new(1 + k * leg_len, &edges).unwrap();
            Ok(Instance { graph, terminals })
        }
        InstanceSpec::RandomGirth { k, n, seed } => random_girth(k, n, seed),
    }
}

/// The canonical labelling of the graph `MinimalKStructure` generates:
/// cycle vertices 0..k, path i occupying k + i*path_len .. k + (i+1)*path_len
/// with the terminal having the largest id.
pub fn canonical_k_structure(k: usize, path_len: usize) -> KStructure {
    let paths = (0..k)
        .map(|i| {
            let base = (k + i * path_len) as u32;
            let mut p: Vec<u32> = (0..path_len as u32).map(|j| base + j).collect();
            p.reverse(); // terminal first
            p.push(i as u32);
            p
        })
        .collect();
    KStructure::new(paths)
}

/// K4 with every edge subdivided once: branch vertices 0..4 and one
/// subdivision vertex per branch pair, 4..10, in pair order.
pub fn subdivided_k4_core() -> Graph {
    let mut edges = Vec::new();
    for (t, &(i, j)) in K4_PAIRS.iter().enumerate() {
        let mid = (4 + t) as u32;
        edges.push((i as u32, mid));
        edges.push((mid, j as u32));
    }
    Graph::new(10, &edges).unwrap()
}

/// The canonical labelling of the graph `SubdividedK4` generates: the core
/// as in [`subdivided_k4_core`], path for pair t occupying
/// 10 + t*path_len .. 10 + (t+1)*path_len with the terminal last-assigned.
pub fn canonical_k4_structure(path_len: usize) -> K4Structure {
    let paths: Vec<Vec<u32>> = (0..6)
        .map(|t| {
            let base = (10 + t * path_len) as u32;
            let mut p: Vec<u32> = (0..path_len as u32).map(|j| base + j).collect();
            p.reverse();
            p.push((4 + t) as u32);
            p
        })
        .collect();
    K4Structure {
        branch: [0, 1, 2, 3],
        paths: paths.try_into().unwrap(),
    }
}

/// Builds a connected core with girth >= k by starting from a random
/// spanning tree and only adding an extra edge (u, v) when the current
/// distance between u and v is at least k - 1, so every new cycle has
/// length >= k. Terminals are fresh pendant vertices on distinct cores.
fn random_girth(k: usize, n: usize, seed: u64) -> Result<Instance, OracleError> {
    if k < 3 || n < k {
        return Err(OracleError::InfeasibleSpec(format!(
            "need k >= 3 and n >= k, got k={k}, n={n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let add = |adj: &mut Vec<Vec<u32>>, edges: &mut Vec<(u32, u32)>, u: u32, v: u32| {
        adj[u as usize].push(v);
        adj[v as usize].push(u);
        edges.push((u, v));
    };
    for v in 1..n as u32 {
        let u = rng.random_range(0..v);
        add(&mut adj, &mut edges, u, v);
    }
    for _ in 0..4 * n {
        let u = rng.random_range(0..n as u32);
        let v = rng.random_range(0..n as u32);
        if u == v {
            continue;
        }
        if bfs_distance(&adj, u, v) >= k - 1 {
            add(&mut adj, &mut edges, u, v);
        }
    }
    let picks = rand::seq::index::sample(&mut rng, n, k);
    let mut terminals = Vec::with_capacity(k);
    for (i, attach) in picks.into_iter().enumerate() {
        let t = (n + i) as u32;
        edges.push((attach as u32, t));
        terminals.push(t);
    }
    let graph = Graph::new(n + k, &edges).unwrap();
    Ok(Instance { graph, terminals })
}

fn bfs_distance(adj: &[Vec<u32>], from: u32, to: u32) -> usize {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[from as usize] = 0;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            return dist[u as usize];
        }
        for &v in &adj[u as usize] {
            if dist[v as usize] == usize::MAX {
                dist[v as usize] = dist[u as usize] + 1;
                queue.push_back(v);
            }
        }
    }
    usize::MAX
}
