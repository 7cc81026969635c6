//! Lamination coefficients around a one-sided curve under the flips of `α`
//! and of `β`.

use lpsurf::quiver::{AntiSymQuiver, PairRole, ShortenedMatrix};
use lpsurf::surface::{mobius, principal_state, quasi_flip_graph, QuasiTriState};

fn laminations(q: &AntiSymQuiver) -> Vec<usize> {
    (0..q.pairs()).filter(|&i| q.roles()[i] == PairRole::Lamination).collect()
}

/// Mutable pairs other than `a` and `b` with an arrow to or from vertex `a`.
fn neighbours(q: &AntiSymQuiver, a: usize, b: usize) -> Vec<usize> {
    (0..q.mutable())
        .filter(|&x| x != a && x != b && [x, q.tilde(x)].iter().any(|&w| q.b(w, a) != 0))
        .collect()
}

/// The identity holds for some choice of lift labels of `x` and `α*`.
fn up_to_labels(f: impl Fn(i64, i64) -> bool) -> bool {
    [1, -1].iter().any(|&ex| [1, -1].iter().any(|&ea| f(ex, ea)))
}

fn record_states(k: usize) -> Vec<QuasiTriState> {
    let g = quasi_flip_graph(principal_state(&mobius(k).unwrap(), 1).unwrap(), 10_000, usize::MAX);
    assert!(g.closed);
    g.nodes.into_iter().filter(|s| !s.is_triangulation()).collect()
}

#[test]
fn flipping_the_curve_back() {
    let mut checked = 0;
    for k in 1..=3 {
        for s in record_states(k) {
            for r in s.records() {
                let (a, b) = (r.alpha, r.beta);
                let q = s.quiver();
                let (old, new): (ShortenedMatrix, ShortenedMatrix) =
                    (q.shortened(), s.flip(a).unwrap().quiver().shortened());
                let ls = laminations(q);
                assert!(ls.iter().all(|&l| new.get(l, a) == -old.get(l, a)));
                // b̄'_{Lβ} = b̄_{Lβ} - |b̄_{Lα*}|, up to the labelling of β.
                assert!([1, -1].iter().any(|&e| ls
                    .iter()
                    .all(|&l| e * new.get(l, b) == e * old.get(l, b) - old.get(l, a).abs())));
                for x in neighbours(q, a, b) {
                    assert!(
                        up_to_labels(|ex, ea| ls.iter().all(|&l| ex * new.get(l, x)
                            == ex * old.get(l, x) + 0.max(ea * old.get(l, a)))),
                        "mobius({k}) slot {x}"
                    );
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn flipping_the_companion_arc() {
    let mut checked = 0;
    for k in 1..=3 {
        for s in record_states(k) {
            for r in s.records() {
                let (a, b) = (r.alpha, r.beta);
                let q = s.quiver();
                let old = q.shortened();
                let f = s.flip(b).unwrap();
                assert_eq!(f.records(), s.records());
                let new = f.quiver().shortened();
                let ls = laminations(q);
                assert!(ls.iter().all(|&l| new.get(l, a) == old.get(l, a)));
                assert!(ls.iter().all(|&l| new.get(l, b) == -old.get(l, b)));
                for x in neighbours(q, a, b) {
                    assert!(
                        up_to_labels(|ex, ea| ls.iter().all(|&l| {
                            let (p, t) = (ea * old.get(l, a), old.get(l, b));
                            ex * new.get(l, x) == ex * old.get(l, x) + 0.max(p + t) + 0.max(p - t)
                        })),
                        "mobius({k}) slot {x}"
                    );
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 0);
}
