//! Flip graphs against brute-force enumerations of compatible arc sets.

use lpsurf::surface::{
    annulus, mobius, once_punctured_disk, polygon, principal_state, quasi_flip_graph, QuasiTriState,
};
use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;

/// Every maximal pairwise-compatible subset, and the pairs of subsets that
/// differ in exactly one element.
fn clique_graph(count: usize, compatible: impl Fn(usize, usize) -> bool) -> (Vec<Vec<usize>>, Vec<(usize, usize)>) {
    fn grow(
        set: &mut Vec<usize>,
        from: usize,
        count: usize,
        ok: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        let extendable = (0..count).any(|x| !set.contains(&x) && set.iter().all(|&y| ok(x, y)));
        if !extendable {
            out.push(set.clone());
            return;
        }
        for x in from..count {
            if set.iter().all(|&y| ok(x, y)) {
                set.push(x);
                grow(set, x + 1, count, ok, out);
                set.pop();
            }
        }
    }
    let mut sets = Vec::new();
    grow(&mut Vec::new(), 0, count, &compatible, &mut sets);
    // Sets that are maximal only among later elements are not maximal.
    sets.retain(|s| (0..count).all(|x| s.contains(&x) || s.iter().any(|&y| !compatible(x, y))));
    let mut edges = Vec::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let shared = sets[i].iter().filter(|x| sets[j].contains(x)).count();
            if shared + 1 == sets[i].len() && sets[i].len() == sets[j].len() {
                edges.push((i, j));
            }
        }
    }
    (sets, edges)
}

fn as_graph(nodes: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> UnGraph<(), ()> {
    let mut g = UnGraph::new_undirected();
    let ids: Vec<_> = (0..nodes).map(|_| g.add_node(())).collect();
    for (u, v) in edges {
        g.add_edge(ids[u], ids[v], ());
    }
    g
}

fn flip_graph(s: QuasiTriState) -> (usize, usize, UnGraph<(), ()>) {
    let g = quasi_flip_graph(s, 100_000, usize::MAX);
    assert!(g.closed && g.errors.is_empty(), "{:?}", g.errors);
    let pg = as_graph(g.node_count(), g.edges.keys().copied());
    (g.node_count(), g.edge_count(), pg)
}

fn polygon_oracle(k: usize) -> (Vec<Vec<usize>>, Vec<(usize, usize)>) {
    let diagonals: Vec<(usize, usize)> =
        (0..k).flat_map(|i| (i + 2..k).map(move |j| (i, j))).filter(|&(i, j)| !(i == 0 && j == k - 1)).collect();
    let crosses = |(a, b): (usize, usize), (c, d): (usize, usize)| a < c && c < b && b < d || c < a && a < d && d < b;
    clique_graph(diagonals.len(), |x, y| x != y && !crosses(diagonals[x], diagonals[y]))
}

#[test]
fn polygon_flip_graphs_match_triangulation_enumeration() {
    for k in 4..=8 {
        let (sets, edges) = polygon_oracle(k);
        assert!(sets.iter().all(|s| s.len() == k - 3));
        let (n, e, g) = flip_graph(principal_state(&polygon(k).unwrap(), 1).unwrap());
        assert_eq!((n, e), (sets.len(), edges.len()), "polygon({k})");
        assert!(is_isomorphic(&g, &as_graph(sets.len(), edges)), "polygon({k})");
    }
    assert_eq!(polygon_oracle(6).0.len(), 14);
    assert_eq!(polygon_oracle(6).1.len(), 21);
}

/// A lifted arc in the strip `R x [0, 1]`, coordinates doubled so that the
/// glide `(x, y) -> (x + c/2, 1 - y)` stays integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Lift {
    Bottom(i64, i64),
    Top(i64, i64),
    Across(i64, i64),
}

impl Lift {
    fn glide(self, c: i64) -> Lift {
        match self {
            Lift::Bottom(p, q) => Lift::Top(p + c, q + c),
            Lift::Top(p, q) => Lift::Bottom(p + c, q + c),
            Lift::Across(x, t) => Lift::Across(t + c, x + c),
        }
    }

    fn shift(self, s: i64) -> Lift {
        match self {
            Lift::Bottom(p, q) => Lift::Bottom(p + s, q + s),
            Lift::Top(p, q) => Lift::Top(p + s, q + s),
            Lift::Across(x, t) => Lift::Across(x + s, t + s),
        }
    }
}

fn interleave(a: i64, b: i64, c: i64, d: i64) -> bool {
    a < c && c < b && b < d || c < a && a < d && d < b
}

fn cross(u: Lift, v: Lift) -> bool {
    use Lift::*;
    match (u, v) {
        (Bottom(a, b), Bottom(c, d)) | (Top(a, b), Top(c, d)) => interleave(a, b, c, d),
        (Bottom(..), Top(..)) | (Top(..), Bottom(..)) => false,
        (Across(x, t), Across(y, s)) => (x - y) * (t - s) < 0,
        (Bottom(p, q), Across(x, _)) | (Across(x, _), Bottom(p, q)) => p < x && x < q,
        (Top(p, q), Across(_, t)) | (Across(_, t), Top(p, q)) => p < t && t < q,
    }
}

/// Quasi-arcs of the Möbius strip with `c` marked points: peripheral arcs,
/// bridging arcs (including the one-sided loops) and the core curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MobiusArc {
    Peripheral(Lift),
    Bridging { lift: Lift, one_sided: bool },
    Core,
}

fn mobius_arcs(c: i64) -> Vec<MobiusArc> {
    let mut out = Vec::new();
    for a in 0..c {
        // Length c bounds the Möbius strip with one marked point.
        for len in 2..c {
            out.push(MobiusArc::Peripheral(Lift::Bottom(2 * a, 2 * (a + len))));
        }
    }
    // (a, d) and (a + d mod c, -c - d) are the same arc.
    let mut seen = Vec::new();
    for a in 0..c {
        for d in -c..=0 {
            let twin = ((a + d).rem_euclid(c), -c - d);
            if seen.contains(&twin) {
                continue;
            }
            seen.push((a, d));
            let lift = Lift::Across(2 * a, 2 * a + c + 2 * d);
            out.push(MobiusArc::Bridging { lift, one_sided: d == 0 || d == -c });
        }
    }
    out.push(MobiusArc::Core);
    out
}

fn mobius_compatible(c: i64, x: MobiusArc, y: MobiusArc) -> bool {
    use MobiusArc::*;
    let lift = |a: MobiusArc| match a {
        Peripheral(l) | Bridging { lift: l, .. } => Some(l),
        Core => None,
    };
    match (x, y) {
        (Core, Core) => false,
        (Core, Bridging { one_sided, .. }) | (Bridging { one_sided, .. }, Core) => one_sided,
        (Core, Peripheral(_)) | (Peripheral(_), Core) => true,
        _ => {
            let (u, v) = (lift(x).unwrap(), lift(y).unwrap());
            if u == v {
                return false;
            }
            let mut w = v;
            let mut translates = Vec::new();
            for _ in 0..2 {
                for s in -4..=4 {
                    translates.push(w.shift(2 * c * s));
                }
                w = w.glide(c);
            }
            !translates.iter().any(|&t| cross(u, t))
        }
    }
}

#[test]
fn mobius_arcs_are_simple_and_counted() {
    for c in 2..=5 {
        let arcs = mobius_arcs(c);
        let (c_us, bridging) = (c as usize, arcs.iter().filter(|a| matches!(a, MobiusArc::Bridging { .. })).count());
        assert_eq!(bridging, c_us * (c_us + 1) / 2);
        assert_eq!(arcs.len(), c_us * (c_us - 2) + bridging + 1);
        for a in arcs {
            if let MobiusArc::Peripheral(l) | MobiusArc::Bridging { lift: l, .. } = a {
                let mut w = l.glide(c);
                for _ in 0..3 {
                    assert!((-3..=3).all(|s| !cross(l, w.shift(2 * c * s))), "{a:?}");
                    w = w.glide(c);
                }
            }
        }
    }
}

#[test]
fn mobius_flip_graphs_match_quasi_arc_enumeration() {
    for k in 1..=3usize {
        let c = k as i64 + 1;
        let arcs = mobius_arcs(c);
        let (sets, edges) = clique_graph(arcs.len(), |x, y| x != y && mobius_compatible(c, arcs[x], arcs[y]));
        assert!(sets.iter().all(|s| s.len() == k + 1), "mobius({k}): maximal sets of unequal size");
        let (n, e, g) = flip_graph(principal_state(&mobius(k).unwrap(), 1).unwrap());
        assert_eq!((n, e), (sets.len(), edges.len()), "mobius({k})");
        assert!(is_isomorphic(&g, &as_graph(sets.len(), edges)), "mobius({k})");
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

#[test]
fn punctured_disk_flip_graphs_have_type_d_counts() {
    for k in 2..=5u64 {
        // Type D_k: (3k - 2)/k * binom(2k - 2, k - 1) clusters.
        let clusters = (3 * k - 2) * binomial(2 * k - 2, k - 1) / k;
        let (n, e, _) = flip_graph(principal_state(&once_punctured_disk(k as usize).unwrap(), 1).unwrap());
        assert_eq!(n as u64, clusters, "once-punctured-disk({k})");
        assert_eq!(e as u64, clusters * k / 2);
    }
}

#[test]
fn annulus_flip_graph_does_not_close() {
    let s = principal_state(&annulus(1, 1).unwrap(), 1).unwrap();
    let g = quasi_flip_graph(s, 40, usize::MAX);
    assert!(!g.closed);
    assert_eq!(g.node_count(), 40);
    assert!(g.errors.is_empty());
}
