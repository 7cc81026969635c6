use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Display;
use std::hash::{Hash, Hasher};

use rayon::prelude::*;
use serde::Serialize;

use super::{LpError, LpSeed};

/// A deduplicated graph of seeds or states under mutation.
#[derive(Debug, Clone)]
pub struct ExchangeGraph<N> {
    pub nodes: Vec<N>,
    /// Stable 64-bit hash of each node's canonical key.
    pub hashes: Vec<u64>,
    /// BFS tree: parent node and the direction that reached this node.
    pub parent: Vec<Option<(usize, usize)>>,
    pub depth: Vec<usize>,
    /// `(u, v) -> (w, d)` with `u < v`: mutating endpoint `w` in direction
    /// `d` reaches the other endpoint.
    pub edges: BTreeMap<(usize, usize), (usize, usize)>,
    /// `neighbors[u][d]`: the node reached from `u` in direction `d`, when
    /// that node was kept.
    pub neighbors: Vec<BTreeMap<usize, usize>>,
    /// No unexplored neighbours remain.
    pub closed: bool,
    pub errors: Vec<ExploreError>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExploreError {
    pub path: Vec<usize>,
    pub direction: usize,
    pub message: String,
}

impl<N> ExchangeGraph<N> {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Directions from the root to `node` along the BFS tree.
    pub fn path_to(&self, mut node: usize) -> Vec<usize> {
        let mut path = Vec::new();
        while let Some((p, d)) = self.parent[node] {
            path.push(d);
            node = p;
        }
        path.reverse();
        path
    }

    pub fn degree(&self, node: usize) -> usize {
        self.edges.keys().filter(|(u, v)| *u == node || *v == node).count()
    }

    pub fn to_dot(&self, label: impl Fn(usize) -> String) -> String {
        let mut out = String::from("graph exchange {\n");
        for (k, h) in self.hashes.iter().enumerate() {
            out.push_str(&format!("  n{h:016x} [label=\"{}\"];\n", label(k).replace('"', "'")));
        }
        for (&(u, v), (_, d)) in &self.edges {
            out.push_str(&format!(
                "  n{:016x} -- n{:016x} [label=\"{d}\"];\n",
                self.hashes[u], self.hashes[v]
            ));
        }
        out.push_str("}\n");
        out
    }

    /// One line per node: index, depth, hash and label.
    pub fn to_table(&self, label: impl Fn(usize) -> String) -> String {
        let mut out = String::new();
        for (k, h) in self.hashes.iter().enumerate() {
            let degree = self.neighbors[k].len();
            out.push_str(&format!("{k}\tdepth {}\tdegree {degree}\t{h:016x}\t{}\n", self.depth[k], label(k)));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "nodes": self.hashes.iter().map(|h| format!("{h:016x}")).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|(&(u, v), &(w, d))| serde_json::json!({"u": u, "v": v, "from": w, "direction": d})).collect::<Vec<_>>(),
            "closed": self.closed,
            "errors": self.errors,
        })
    }
}

fn hash64<K: Hash>(k: &K) -> u64 {
    let mut h = DefaultHasher::new();
    k.hash(&mut h);
    h.finish()
}

/// Level-synchronous BFS. Each level is expanded in parallel; results are
/// merged in (parent, direction) order so numbering is deterministic.
pub fn explore<N, K, E>(
    root: N,
    directions: impl Fn(&N) -> Vec<usize> + Sync,
    step: impl Fn(&N, usize) -> Result<N, E> + Sync,
    key: impl Fn(&N) -> K + Sync,
    max_nodes: usize,
    max_depth: usize,
) -> ExchangeGraph<N>
where
    N: Send + Sync,
    K: Hash + Eq + Send,
    E: Display + Send,
{
    let root_key = key(&root);
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut g = ExchangeGraph {
        hashes: vec![hash64(&root_key)],
        nodes: vec![root],
        parent: vec![None],
        depth: vec![0],
        edges: BTreeMap::new(),
        neighbors: vec![BTreeMap::new()],
        closed: true,
        errors: Vec::new(),
    };
    index.insert(root_key, 0);
    let mut frontier = vec![0usize];
    let mut level = 0;
    while !frontier.is_empty() {
        let expanded: Vec<Vec<(usize, Result<(N, K), String>)>> = frontier
            .par_iter()
            .map(|&u| {
                directions(&g.nodes[u])
                    .into_iter()
                    .map(|d| {
                        let r = step(&g.nodes[u], d)
                            .map(|n| {
                                let k = key(&n);
                                (n, k)
                            })
                            .map_err(|e| e.to_string());
                        (d, r)
                    })
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for (&u, children) in frontier.iter().zip(expanded) {
            for (d, r) in children {
                let (child, k) = match r {
                    Ok(x) => x,
                    Err(message) => {
                        g.errors.push(ExploreError { path: g.path_to(u), direction: d, message });
                        continue;
                    }
                };
                let v = match index.get(&k) {
                    Some(&v) => v,
                    None => {
                        if level >= max_depth || g.nodes.len() >= max_nodes {
                            g.closed = false;
                            continue;
                        }
                        let v = g.nodes.len();
                        g.hashes.push(hash64(&k));
                        index.insert(k, v);
                        g.nodes.push(child);
                        g.parent.push(Some((u, d)));
                        g.depth.push(level + 1);
                        g.neighbors.push(BTreeMap::new());
                        next.push(v);
                        v
                    }
                };
                g.neighbors[u].insert(d, v);
                if u != v {
                    g.edges.entry((u.min(v), u.max(v))).or_insert((u, d));
                }
            }
        }
        frontier = next;
        level += 1;
    }
    g
}

/// Exchange graph of an LP seed under mutation in every direction.
pub fn exchange_graph(seed: LpSeed, max_nodes: usize, max_depth: usize) -> ExchangeGraph<LpSeed> {
    explore(
        seed,
        |s: &LpSeed| (0..s.rank()).collect(),
        |s: &LpSeed, i| s.mutate(i),
        |s: &LpSeed| s.key(),
        max_nodes,
        max_depth,
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct LaurentReport {
    pub nodes: usize,
    pub expressions: usize,
    pub relations: usize,
    pub violations: Vec<String>,
}

impl LaurentReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check that every cluster variable is a Laurent polynomial in the
/// initial variables and that every edge satisfies its exchange relation
/// `x_i * x_i' * prod x_k^{a_k} = F_i` exactly.
pub fn laurent_check(graph: &ExchangeGraph<LpSeed>) -> LaurentReport {
    let mut violations: Vec<String> = graph
        .errors
        .iter()
        .map(|e| format!("path {:?} then {}: {}", e.path, e.direction, e.message))
        .collect();
    let mut expressions = 0;
    for (k, s) in graph.nodes.iter().enumerate() {
        for e in s.exprs() {
            expressions += 1;
            if e.is_zero() {
                violations.push(format!("path {:?}: zero cluster variable", graph.path_to(k)));
            }
        }
    }
    let results: Vec<Option<String>> = graph
        .edges
        .par_iter()
        .map(|(&(u, v), &(w, i))| {
            let (a, b) = if w == u { (&graph.nodes[u], &graph.nodes[v]) } else { (&graph.nodes[v], &graph.nodes[u]) };
            let check = || -> Result<bool, LpError> {
                let norm = a.normalize()?;
                let lhs = a.evaluate(&a.exchange()[i])?;
                let Some(new) = b.exprs().iter().find(|e| !a.exprs().contains(e)) else {
                    return Ok(false);
                };
                let mut rhs = a.exprs()[i].mul(new);
                for (k, &e) in norm.denominators[i].iter().enumerate() {
                    if e > 0 {
                        rhs = rhs.mul(&a.exprs()[k].pow(e as u32));
                    }
                }
                Ok(lhs == rhs)
            };
            match check() {
                Ok(true) => None,
                Ok(false) => Some(format!("path {:?} then {}: exchange relation fails", graph.path_to(w), i)),
                Err(e) => Some(format!("path {:?} then {}: {}", graph.path_to(w), i, e)),
            }
        })
        .collect();
    violations.extend(results.into_iter().flatten());
    LaurentReport { nodes: graph.nodes.len(), expressions, relations: graph.edges.len(), violations }
}
