use lpsurf::quiver::AntiSymQuiver;
use lpsurf::surface::{build_surface, parse_surface_name};
use serde::Deserialize;

#[derive(Deserialize)]
struct Fixture {
    surface: String,
    arrows: Vec<String>,
}

fn expected(q: &AntiSymQuiver, arrows: &[String]) -> Vec<Vec<i64>> {
    let m = q.pairs();
    let vertex = |s: &str| {
        let (name, lift) = match s.strip_prefix('~') {
            Some(n) => (n, m),
            None => (s, 0),
        };
        let p = q.names().iter().position(|n| n == name).unwrap_or_else(|| panic!("no pair `{name}`"));
        p + lift
    };
    let mut b = vec![vec![0i64; 2 * m]; 2 * m];
    for a in arrows {
        let (s, t) = a.split_once("->").expect("arrow");
        let (i, j) = (vertex(s.trim()), vertex(t.trim()));
        b[i][j] += 1;
        b[j][i] -= 1;
    }
    b
}

/// Some relabelling of lifts turns `q` into `want`.
fn equal_up_to_lifts(q: &AntiSymQuiver, want: &[Vec<i64>]) -> bool {
    let m = q.pairs();
    (0u32..1 << m).any(|mask| {
        let mut r = q.clone();
        for p in 0..m {
            if mask >> p & 1 == 1 {
                r = r.swap_lifts(p);
            }
        }
        r.matrix() == want
    })
}

#[test]
fn catalogue_quivers_match_hand_derived_fixtures() {
    let text = include_str!("fixtures/quivers.json");
    let fixtures: Vec<Fixture> = serde_json::from_str(text).unwrap();
    for f in fixtures {
        let (name, params) = parse_surface_name(&f.surface).unwrap();
        let q = build_surface(&name, &params).unwrap().quiver().unwrap();
        let want = expected(&q, &f.arrows);
        assert!(equal_up_to_lifts(&q, &want), "{}:\n{q}", f.surface);
    }
}
