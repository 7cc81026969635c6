use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::laurent::parse;
use crate::lp::{exchange_graph, laurent_check, seeds_equal, specialization_commutes, LpSeed};
use crate::quiver::{
    random_quiver, rank, repair_bad_paths, shortened_mutation_formula, RandomQuiverParams,
};
use crate::surface::{
    build_surface, correspondence, m1_tropical_table, principal_state, random_walk, verify_flip_lp,
    QuasiTriState, SurfaceSpec,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub rand_seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: &str, rand_seed: u64, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        SuiteReport { suite: suite.into(), rand_seed, passed, checks }
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }
}

/// Surfaces used when a suite is run without an explicit start.
pub fn default_surfaces() -> Vec<String> {
    ["polygon(6)", "mobius(1)", "mobius(2)", "annulus(1,1)"].iter().map(|s| s.to_string()).collect()
}

/// Catalogue surfaces sampled by the randomized suites.
pub fn sample_surfaces() -> Vec<String> {
    [
        "polygon(4)",
        "polygon(5)",
        "polygon(6)",
        "polygon(7)",
        "mobius(1)",
        "mobius(2)",
        "mobius(3)",
        "once-punctured-disk(2)",
        "once-punctured-disk(3)",
        "once-punctured-disk(4)",
        "annulus(1,1)",
        "annulus(1,2)",
        "annulus(2,2)",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect()
}

pub fn surface(name: &str) -> Result<SurfaceSpec, String> {
    let (n, p) = crate::surface::parse_surface_name(name).map_err(|e| e.to_string())?;
    build_surface(&n, &p).map_err(|e| e.to_string())
}

fn laminated(name: &str, sign: i8) -> Result<QuasiTriState, String> {
    principal_state(&surface(name)?, sign).map_err(|e| e.to_string())
}

fn stream(seed: u64, k: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k as u64);
    rng
}

/// Laurent phenomenon on the closed (or budget-truncated) exchange graph
/// of each seed. A truncated graph fails.
pub fn laurent(seeds: &[(String, LpSeed)], max_nodes: usize, max_depth: usize) -> Vec<Check> {
    seeds
        .iter()
        .map(|(name, seed)| {
            let g = exchange_graph(seed.clone(), max_nodes, max_depth);
            let r = laurent_check(&g);
            let mut detail = format!(
                "{} nodes, {} edges, {} expressions, closed {}",
                g.node_count(),
                g.edge_count(),
                r.expressions,
                g.closed
            );
            for v in r.violations.iter().take(5) {
                detail.push_str(&format!("; {v}"));
            }
            Check::new(format!("laurent {name}"), r.passed() && g.closed, detail)
        })
        .collect()
}

/// `μ_i μ_i = id` up to units on seeds reached by random flips from
/// laminated catalogue surfaces.
pub fn involution(samples: usize, rand_seed: u64, sign: i8) -> Vec<Check> {
    let names = sample_surfaces();
    let starts: Vec<Result<QuasiTriState, String>> = names.iter().map(|n| laminated(n, sign)).collect();
    (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream(rand_seed, k);
            let which = rng.gen_range(0..names.len());
            let tag = format!("involution #{k} {}", names[which]);
            let mut run = || -> Result<(usize, usize), String> {
                let start = starts[which].clone()?;
                let steps = rng.gen_range(0..=6);
                let walk = random_walk(&start, steps, &mut rng).map_err(|e| e.to_string())?;
                let seed = walk.last().expect("walk is nonempty").lp_seed().map_err(|e| e.to_string())?;
                let i = rng.gen_range(0..seed.rank());
                let back = seed.mutate(i).and_then(|s| s.mutate(i)).map_err(|e| e.to_string())?;
                if seeds_equal(&back, &seed) {
                    Ok((steps, i))
                } else {
                    Err(format!("direction {i} after {steps} flips is not an involution"))
                }
            };
            match run() {
                Ok((steps, i)) => Check::new(tag, true, format!("{steps} flips, direction {i}")),
                Err(e) => Check::new(tag, false, e),
            }
        })
        .collect()
}

/// Random anti-symmetric quivers with no bad path at the mutated pair:
/// `rank(B̄)` is preserved by double mutation and the shortened formula
/// agrees with the double-mutated quiver.
pub fn rank_suite(samples: usize, rand_seed: u64) -> Vec<Check> {
    let params = RandomQuiverParams { max_mutable: 6, max_laminations: 2, max_boundary: 2, max_weight: 3 };
    (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream(rand_seed, k);
            let (q, i) = loop {
                let q = random_quiver(&mut rng, params);
                let i = rng.gen_range(0..q.mutable());
                if let Some(q) = repair_bad_paths(&q, i) {
                    break (q, i);
                }
            };
            let tag = format!("rank #{k}");
            let (d, ok) = match q.double_mutate(i) {
                Ok(x) => x,
                Err(e) => return Check::new(tag, false, e.to_string()),
            };
            let (before, after) = (rank(&q.shortened().data), rank(&d.shortened().data));
            let formula = shortened_mutation_formula(&q.shortened(), i);
            let same = formula.as_ref().map(|f| *f == d.shortened()).unwrap_or(false);
            let detail = format!("{} pairs, direction {i}, rank {before} -> {after}", q.pairs());
            let detail = match &formula {
                Err(e) => format!("{detail}; formula: {e}"),
                Ok(_) if !same => format!("{detail}; formula disagrees"),
                Ok(_) => detail,
            };
            Check::new(tag, ok && before == after && same, detail)
        })
        .collect()
}

/// LP mutation of each state's seed against the seed of the flipped state.
pub fn flip_lp(starts: &[(String, QuasiTriState)], depth: usize, max_nodes: usize) -> Vec<Check> {
    starts
        .iter()
        .map(|(name, s)| {
            let r = verify_flip_lp(s.clone(), depth, max_nodes);
            let mut detail = format!("{} states, {} checks", r.nodes, r.checks.len());
            for f in r.failures().take(3) {
                detail.push_str(&format!("; path {:?} slot {}: {}", f.path, f.direction, f.detail));
            }
            Check::new(format!("flip-lp {name}"), r.passed(), detail)
        })
        .collect()
}

/// Pairwise distinct exchange polynomials at every state within the node
/// budget, plus the graph correspondence when both graphs close.
pub fn distinctness(starts: &[(String, QuasiTriState)], max_nodes: usize) -> Vec<Check> {
    starts
        .iter()
        .map(|(name, s)| match correspondence(s.clone(), max_nodes) {
            Ok(r) => {
                let mut detail = format!(
                    "flip graph {}/{} closed {}, LP graph {}/{} closed {}, isomorphic {}, labels {}",
                    r.flip_nodes,
                    r.flip_edges,
                    r.flip_closed,
                    r.lp_nodes,
                    r.lp_edges,
                    r.lp_closed,
                    r.isomorphic,
                    r.labels_match
                );
                for p in r.problems.iter().take(3) {
                    detail.push_str(&format!("; {p}"));
                }
                let closed = r.flip_closed && r.lp_closed;
                Check::new(format!("distinctness {name}"), r.distinct && (!closed || r.passed()), detail)
            }
            Err(e) => Check::new(format!("distinctness {name}"), false, e.to_string()),
        })
        .collect()
}

fn eq_check(name: &str, got: &crate::laurent::LaurentPoly, want: &str, seed: &LpSeed) -> Check {
    let t = seed.table();
    match parse(want, t) {
        Ok(w) => {
            let ok = got.sign_normalized() == w.sign_normalized();
            Check::new(name, ok, format!("{}", got.display(t)))
        }
        Err(e) => Check::new(name, false, e.to_string()),
    }
}

/// The worked examples of LP seeds, normalization, mutation and
/// specialization, and the tropical table of the Möbius strip with one
/// marked point.
pub fn paper_examples() -> Vec<Check> {
    let mut out = Vec::new();
    let ex22 = LpSeed::from_strs(&["a", "b", "c"], &[], &["1+b*c", "1+a", "(1+a)^2+a*b^2"]);
    match ex22 {
        Ok(s) => {
            match s.normalize() {
                Ok(n) => {
                    out.push(eq_check("normalize F^_a", &n.hat[0], "1+b*c", &s));
                    out.push(eq_check("normalize F^_b", &n.hat[1], "1+a", &s));
                    out.push(eq_check("normalize F^_c", &n.hat[2], "((1+a)^2+a*b^2)*b^(-2)", &s));
                }
                Err(e) => out.push(Check::new("normalize", false, e.to_string())),
            }
            match s.mutate(1) {
                Ok(m) => {
                    let t = m.initial_table();
                    let want = ["a", "(1+a)*b^(-1)", "c"];
                    let ok = want
                        .iter()
                        .zip(m.exprs())
                        .all(|(w, e)| parse(w, t).map(|w| &w == e).unwrap_or(false));
                    out.push(Check::new("mutate at b: cluster", ok, ""));
                    let d = m.table().name(1).to_string();
                    let wants = [format!("{d}+c"), "1+a".into(), format!("{d}^2+a")];
                    for (k, w) in wants.iter().enumerate() {
                        out.push(eq_check(&format!("mutate at b: F_{}", m.table().name(k)), &m.exchange()[k], w, &m));
                    }
                }
                Err(e) => out.push(Check::new("mutate at b", false, e.to_string())),
            }
        }
        Err(e) => out.push(Check::new("normalization seed", false, e.to_string())),
    }
    match LpSeed::from_strs(&["a", "b", "c"], &["X"], &["1+X*b", "a+c", "1+b"]) {
        Ok(s) => {
            let x = s.frozen_by_name(&["X"]).unwrap_or_default();
            let commutes = specialization_commutes(&s, 0, &x);
            out.push(Check::new(
                "specialize X=1 does not commute with mutation at a",
                commutes == Ok(false),
                format!("{commutes:?}"),
            ));
            match (s.mutate(0).and_then(|m| m.specialize(&x)), s.specialize(&x).and_then(|m| m.mutate(0))) {
                (Ok(l), Ok(r)) => {
                    let a = l.table().name(0).to_string();
                    out.push(eq_check("mutate then specialize: F_b", &l.exchange()[1], &format!("1+{a}*c"), &l));
                    out.push(eq_check(
                        "specialize then mutate: F_b",
                        &r.exchange()[1],
                        &format!("1+{a}*c^2"),
                        &r,
                    ));
                }
                (l, r) => out.push(Check::new("specialization seeds", false, format!("{l:?} {r:?}"))),
            }
        }
        Err(e) => out.push(Check::new("specialization seed", false, e.to_string())),
    }
    let show = |h: Option<crate::surface::HalfPower>| h.map_or("-".to_string(), |h| h.to_string());
    for row in m1_tropical_table() {
        let holds = row.multiplicative();
        out.push(Check::new(
            format!("tropical {}", row.lamination),
            holds != row.excluded,
            format!(
                "c(alpha)={} c(beta)={} product={} c(alpha*)={}",
                show(row.alpha),
                show(row.beta),
                row.product,
                row.alphastar
            ),
        ));
    }
    out
}
