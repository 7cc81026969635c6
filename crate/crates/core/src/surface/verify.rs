use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{QuasiTriState, SurfaceError};
use crate::laurent::LaurentPoly;
use crate::lp::{exchange_equal, exchange_graph, explore, ExchangeGraph, LpSeed};
use crate::quiver::rank;

/// First pair of equal polynomials (up to sign).
pub fn distinct_exchange(polys: &[LaurentPoly]) -> Option<(usize, usize)> {
    let normal: Vec<LaurentPoly> = polys.iter().map(|f| f.sign_normalized()).collect();
    for a in 0..normal.len() {
        for b in a + 1..normal.len() {
            if normal[a] == normal[b] {
                return Some((a, b));
            }
        }
    }
    None
}

/// The flip graph of quasi-triangulations reachable from `state`.
pub fn quasi_flip_graph(
    state: QuasiTriState,
    max_nodes: usize,
    max_depth: usize,
) -> ExchangeGraph<QuasiTriState> {
    explore(
        state,
        |s: &QuasiTriState| (0..s.rank()).collect(),
        |s: &QuasiTriState, v| s.flip(v),
        |s: &QuasiTriState| s.key(),
        max_nodes,
        max_depth,
    )
}

fn same_seed(a: &LpSeed, b: &LpSeed) -> bool {
    a.table().entries() == b.table().entries() && exchange_equal(a, b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlipCheck {
    pub path: Vec<usize>,
    pub direction: usize,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlipLpReport {
    pub nodes: usize,
    pub closed: bool,
    pub checks: Vec<FlipCheck>,
}

impl FlipLpReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FlipCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn flip_vs_mutation(s: &QuasiTriState, v: usize) -> Result<(), String> {
    let lp = s.lp_seed().map_err(|e| format!("seed: {e}"))?;
    let lhs = lp.mutate(v).map_err(|e| format!("LP mutation: {e}"))?;
    let flipped = s.flip(v).map_err(|e| format!("flip: {e}"))?;
    let rhs = flipped.lp_seed().map_err(|e| format!("flipped seed: {e}"))?;
    if same_seed(&lhs, &rhs) {
        Ok(())
    } else {
        Err(format!("LP mutation:\n{lhs}flip:\n{rhs}"))
    }
}

/// At every state within `depth` flips of `state`, compare LP mutation of
/// its seed with the seed of the flipped state, in every direction.
pub fn verify_flip_lp(state: QuasiTriState, depth: usize, max_nodes: usize) -> FlipLpReport {
    let g = quasi_flip_graph(state, max_nodes, depth);
    let jobs: Vec<(usize, usize)> = (0..g.node_count())
        .filter(|&u| g.depth[u] < depth)
        .flat_map(|u| (0..g.nodes[u].rank()).map(move |v| (u, v)))
        .collect();
    let checks = jobs
        .par_iter()
        .map(|&(u, v)| {
            let r = flip_vs_mutation(&g.nodes[u], v);
            FlipCheck {
                path: g.path_to(u),
                direction: v,
                passed: r.is_ok(),
                detail: r.err().unwrap_or_default(),
            }
        })
        .collect();
    FlipLpReport { nodes: g.node_count(), closed: g.closed, checks }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub flip_nodes: usize,
    pub flip_edges: usize,
    pub flip_closed: bool,
    pub lp_nodes: usize,
    pub lp_edges: usize,
    pub lp_closed: bool,
    /// The direction-preserving map from the flip graph to the LP graph is
    /// a bijection on nodes and edges.
    pub isomorphic: bool,
    /// Matched nodes carry the same seed.
    pub labels_match: bool,
    /// Every state has pairwise distinct exchange polynomials.
    pub distinct: bool,
    pub problems: Vec<String>,
}

impl CorrespondenceReport {
    pub fn passed(&self) -> bool {
        self.flip_closed && self.lp_closed && self.isomorphic && self.labels_match && self.distinct
    }
}

/// Build the flip graph of `state` and the LP exchange graph of its seed
/// independently, then match them by walking both from the root along
/// equal directions.
pub fn correspondence(
    state: QuasiTriState,
    max_nodes: usize,
) -> Result<CorrespondenceReport, SurfaceError> {
    let seed = state.lp_seed()?;
    let fg = quasi_flip_graph(state, max_nodes, usize::MAX);
    let lg = exchange_graph(seed, max_nodes, usize::MAX);
    let mut problems: Vec<String> = Vec::new();
    problems.extend(fg.errors.iter().map(|e| format!("flip error at {:?}/{}: {}", e.path, e.direction, e.message)));
    problems.extend(lg.errors.iter().map(|e| format!("LP error at {:?}/{}: {}", e.path, e.direction, e.message)));

    let mut map: Vec<Option<usize>> = vec![None; fg.node_count()];
    let mut inverse: BTreeMap<usize, usize> = BTreeMap::new();
    let mut isomorphic = fg.node_count() == lg.node_count() && fg.edge_count() == lg.edge_count();
    if !isomorphic {
        problems.push(format!(
            "flip graph {}/{} vs LP graph {}/{} nodes/edges",
            fg.node_count(),
            fg.edge_count(),
            lg.node_count(),
            lg.edge_count()
        ));
    }
    map[0] = Some(0);
    inverse.insert(0, 0);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let lu = map[u].expect("queued nodes are mapped");
        for (&d, &fv) in &fg.neighbors[u] {
            let Some(&lv) = lg.neighbors[lu].get(&d) else {
                isomorphic = false;
                problems.push(format!("direction {d} from flip node {u} has no LP counterpart"));
                continue;
            };
            match (map[fv], inverse.get(&lv)) {
                (None, None) => {
                    map[fv] = Some(lv);
                    inverse.insert(lv, fv);
                    queue.push_back(fv);
                }
                (Some(x), Some(&y)) if x == lv && y == fv => {}
                _ => {
                    isomorphic = false;
                    problems.push(format!("flip node {fv} and LP node {lv} are matched inconsistently"));
                }
            }
        }
        if fg.neighbors[u].len() != lg.neighbors[lu].len() {
            isomorphic = false;
            problems.push(format!("degree mismatch at flip node {u}"));
        }
    }
    if map.iter().any(|m| m.is_none()) {
        isomorphic = false;
        problems.push("flip graph is not connected to its root".into());
    }

    let labels: Vec<Result<(), String>> = (0..fg.node_count())
        .into_par_iter()
        .map(|u| {
            let s = &fg.nodes[u];
            let seed = s.lp_seed_raw().map_err(|e| format!("node {u}: {e}"))?;
            if let Some(lu) = map[u] {
                if !same_seed(&seed, &lg.nodes[lu]) {
                    return Err(format!("node {u}: seeds differ\n{seed}vs\n{}", lg.nodes[lu]));
                }
            }
            Ok(())
        })
        .collect();
    let labels_match = labels.iter().all(|r| r.is_ok());
    problems.extend(labels.into_iter().filter_map(|r| r.err()));

    let dups: Vec<String> = (0..fg.node_count())
        .into_par_iter()
        .filter_map(|u| match fg.nodes[u].coincidence() {
            Ok(None) => None,
            Ok(Some((a, b))) => Some(format!("node {u}: slots {a} and {b} coincide")),
            Err(e) => Some(format!("node {u}: {e}")),
        })
        .collect();
    let distinct = dups.is_empty();
    problems.extend(dups);

    Ok(CorrespondenceReport {
        flip_nodes: fg.node_count(),
        flip_edges: fg.edge_count(),
        flip_closed: fg.closed,
        lp_nodes: lg.node_count(),
        lp_edges: lg.edge_count(),
        lp_closed: lg.closed,
        isomorphic,
        labels_match,
        distinct,
        problems,
    })
}

/// States visited by `steps` uniformly random flips.
pub fn random_walk<R: Rng>(state: &QuasiTriState, steps: usize, rng: &mut R) -> Result<Vec<QuasiTriState>, SurfaceError> {
    let mut out = vec![state.clone()];
    let mut s = state.clone();
    for _ in 0..steps {
        let v = rng.gen_range(0..s.rank());
        s = s.flip(v)?;
        out.push(s.clone());
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankSample {
    pub rank: usize,
    pub sampled: usize,
    pub failures: Vec<String>,
}

impl RankSample {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `rank(B̄) = n` at the initial state and at `samples` triangulation states
/// reached by seeded random walks of up to `max_steps` flips.
pub fn full_rank_sample(state: &QuasiTriState, samples: usize, max_steps: usize, seed: u64) -> RankSample {
    let n = state.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut sampled = 0;
    let check = |s: &QuasiTriState, failures: &mut Vec<String>, tag: String| {
        let r = rank(&s.quiver().shortened().data);
        if r != n {
            failures.push(format!("{tag}: rank {r}, expected {n}"));
        }
    };
    check(state, &mut failures, "initial".into());
    let mut attempts = 0;
    while sampled < samples && attempts < 20 * samples {
        attempts += 1;
        let steps = rng.gen_range(1..=max_steps.max(1));
        let walk = match random_walk(state, steps, &mut rng) {
            Ok(w) => w,
            Err(e) => {
                failures.push(format!("walk {attempts}: {e}"));
                continue;
            }
        };
        let last = walk.last().expect("walk is nonempty");
        if last.is_triangulation() {
            sampled += 1;
            check(last, &mut failures, format!("walk {attempts} ({steps} steps)"));
        }
    }
    RankSample { rank: n, sampled, failures }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop48Sweep {
    pub states: usize,
    pub compared: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl Prop48Sweep {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compare LP mutation of `Σ_Q` with the seed of the double-mutated quiver
/// at every triangulation state of the flip graph and every direction
/// meeting the hypotheses.
pub fn prop48_sweep(state: QuasiTriState, max_nodes: usize) -> Prop48Sweep {
    let g = quasi_flip_graph(state, max_nodes, usize::MAX);
    let tri: Vec<usize> = (0..g.node_count()).filter(|&u| g.nodes[u].is_triangulation()).collect();
    let results: Vec<(usize, usize, Vec<String>)> = tri
        .par_iter()
        .map(|&u| {
            let q = g.nodes[u].quiver();
            let (mut compared, mut skipped, mut failures) = (0, 0, Vec::new());
            for i in 0..q.mutable() {
                match q.check_prop48(i) {
                    Ok(r) if r.conditions_hold() => {
                        compared += 1;
                        if !r.holds() {
                            failures.push(format!("node {u} direction {i}: {}", r.detail));
                        }
                    }
                    Ok(_) => skipped += 1,
                    Err(e) => failures.push(format!("node {u} direction {i}: {e}")),
                }
            }
            (compared, skipped, failures)
        })
        .collect();
    let mut out = Prop48Sweep { states: tri.len(), compared: 0, skipped: 0, failures: Vec::new() };
    for (c, s, f) in results {
        out.compared += c;
        out.skipped += s;
        out.failures.extend(f);
    }
    out
}
