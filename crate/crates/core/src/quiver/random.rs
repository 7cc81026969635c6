use rand::Rng;

use super::{AntiSymQuiver, PairRole};

#[derive(Debug, Clone, Copy)]
pub struct RandomQuiverParams {
    pub max_mutable: usize,
    pub max_laminations: usize,
    pub max_boundary: usize,
    pub max_weight: i64,
}

impl Default for RandomQuiverParams {
    fn default() -> Self {
        RandomQuiverParams { max_mutable: 6, max_laminations: 2, max_boundary: 2, max_weight: 2 }
    }
}

/// A random valid anti-symmetric quiver. Lamination rows are drawn
/// sign-coherent; frozen-frozen entries are zero.
pub fn random_quiver<R: Rng>(rng: &mut R, p: RandomQuiverParams) -> AntiSymQuiver {
    let n = rng.gen_range(1..=p.max_mutable);
    let nl = rng.gen_range(0..=p.max_laminations);
    let nb = rng.gen_range(0..=p.max_boundary);
    let mut roles = vec![PairRole::Arc; n];
    roles.extend(std::iter::repeat_n(PairRole::Boundary, nb));
    roles.extend(std::iter::repeat_n(PairRole::Lamination, nl));
    let mut q = AntiSymQuiver::zero(roles);
    let m = q.pairs();
    let w = p.max_weight;
    // One representative per orbit {(u,v), (ṽ,ũ)} among mutable vertices.
    for u in 0..2 * n {
        let u = if u < n { u } else { u - n + m };
        for v in 0..2 * m {
            if v == u || v == q.tilde(u) || q.is_frozen(v) {
                continue;
            }
            let (tu, tv) = (q.tilde(u), q.tilde(v));
            let rep = (u.min(v), u.max(v)).min((tu.min(tv), tu.max(tv)));
            if rep != (u.min(v), u.max(v)) || u > v {
                continue;
            }
            q.set_orbit(u, v, rng.gen_range(-w..=w));
        }
    }
    for f in n..m {
        for j in 0..n {
            // b_{f j} and b_{f j̃}; for laminations b_{f̃ j} = -b_{f j̃}
            // must share the sign of b_{f j}.
            let a = rng.gen_range(-w..=w);
            let c = if q.roles()[f] == PairRole::Lamination {
                match a.signum() {
                    1 => -rng.gen_range(0..=w),
                    -1 => rng.gen_range(0..=w),
                    _ => rng.gen_range(-w..=w) * i64::from(rng.gen_bool(0.5)),
                }
            } else {
                rng.gen_range(-w..=w)
            };
            q.set_orbit(f, j, a);
            q.set_orbit(f, j + m, c);
        }
        let tf = q.tilde(f);
        if q.roles()[f] == PairRole::Lamination {
            for j in 0..n {
                if q.b(f, j) * q.b(tf, j) < 0 {
                    q.set_orbit(f, j + m, 0);
                }
            }
        }
    }
    debug_assert!(q.is_valid(), "{:?}", q.check());
    q
}

/// Remove every path `k → i → k̃` by reversing the arrow `k → ĩ`. Returns
/// `None` if the quiver still has a bad path at `i` after a bounded number
/// of repairs.
pub fn repair_bad_paths(q: &AntiSymQuiver, i: usize) -> Option<AntiSymQuiver> {
    let mut q = q.clone();
    for _ in 0..4 * q.pairs() + 4 {
        let Some(k) = q.has_bad_path(i) else {
            return q.is_valid().then_some(q);
        };
        let ti = q.tilde(i);
        let x = q.b(k, ti);
        q.set_orbit(k, ti, -x);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_quivers_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let q = random_quiver(&mut rng, RandomQuiverParams::default());
            assert!(q.is_valid(), "{:?}", q.check());
            for i in 0..q.mutable() {
                if let Some(r) = repair_bad_paths(&q, i) {
                    assert!(r.has_bad_path(i).is_none());
                }
            }
        }
    }
}
