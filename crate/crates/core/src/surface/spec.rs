use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::SurfaceError;
use crate::quiver::{AntiSymQuiver, PairRole};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Arc,
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub name: String,
    pub kind: EdgeKind,
    /// Marked points at the start and end of the edge.
    pub ends: (usize, usize),
    /// `-1` if the edge crosses an odd number of cross-caps.
    pub parity: i8,
}

/// A side of a triangle: an edge, traversed forwards or backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Side {
    pub edge: usize,
    pub forward: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Topology {
    pub orientable: bool,
    /// Genus if orientable, number of cross-caps otherwise.
    pub handles: usize,
    pub boundaries: usize,
}

/// A triangulated bordered surface given combinatorially. Each triangle
/// lists its sides in the orientation seen from the `+` lift of its first
/// corner.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub name: String,
    pub marked: usize,
    pub punctures: Vec<usize>,
    pub edges: Vec<EdgeSpec>,
    pub triangles: Vec<[Side; 3]>,
    pub topology: Topology,
}

/// A side of a lifted triangle on the double cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct LiftedSide {
    edge: usize,
    /// Sheet at the edge's start point.
    sheet: i8,
    /// Traversed from start to end in the cover orientation.
    forward: bool,
}

impl SurfaceSpec {
    pub fn arcs(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].kind == EdgeKind::Arc).collect()
    }

    pub fn boundary_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].kind == EdgeKind::Boundary).collect()
    }

    pub fn rank(&self) -> usize {
        self.arcs().len()
    }

    fn side_ends(&self, s: Side) -> (usize, usize) {
        let (a, b) = self.edges[s.edge].ends;
        if s.forward {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Expected rank from the topology: `6g + 3b + 3p + c - 6` for
    /// orientable surfaces, `3k + 3b + 3p + c - 6` otherwise.
    pub fn expected_rank(&self) -> i64 {
        let t = self.topology;
        let c = (self.marked - self.punctures.len()) as i64;
        let p = self.punctures.len() as i64;
        let h = if t.orientable { 6 * t.handles as i64 } else { 3 * t.handles as i64 };
        h + 3 * t.boundaries as i64 + 3 * p + c - 6
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.marked as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    fn lifted_triangle(&self, t: usize, sheet: i8) -> [LiftedSide; 3] {
        let tri = self.triangles[t];
        let mut corner = 1i8;
        let mut out = [LiftedSide { edge: 0, sheet: 1, forward: true }; 3];
        for k in 0..3 {
            let s = tri[k];
            let p = self.edges[s.edge].parity;
            let at_start = if s.forward { corner } else { corner * p };
            out[k] = LiftedSide { edge: s.edge, sheet: at_start * sheet, forward: s.forward == (sheet > 0) };
            corner *= p;
        }
        if sheet < 0 {
            out.reverse();
        }
        out
    }

    /// Check the parity rule on every triangle, that sides close up around
    /// each triangle, and that the double cover is a closed-up orientable
    /// surface with the expected Euler characteristic.
    pub fn validate(&self) -> Result<(), SurfaceError> {
        let bad = |msg: String| Err(SurfaceError::InvalidSpec(format!("{}: {msg}", self.name)));
        for (e, edge) in self.edges.iter().enumerate() {
            if edge.parity != 1 && edge.parity != -1 {
                return bad(format!("edge {e} has parity {}", edge.parity));
            }
            if edge.ends.0 >= self.marked || edge.ends.1 >= self.marked {
                return bad(format!("edge {e} ends outside the marked points"));
            }
            if edge.kind == EdgeKind::Boundary && edge.parity != 1 {
                return bad(format!("boundary edge {e} must have parity +1"));
            }
        }
        let mut uses = vec![0usize; self.edges.len()];
        for (t, tri) in self.triangles.iter().enumerate() {
            let product: i8 = tri.iter().map(|s| self.edges[s.edge].parity).product();
            if product != 1 {
                return bad(format!("triangle {t} violates the parity rule"));
            }
            for k in 0..3 {
                if self.side_ends(tri[k]).1 != self.side_ends(tri[(k + 1) % 3]).0 {
                    return bad(format!("triangle {t} does not close at corner {}", k + 1));
                }
                uses[tri[k].edge] += 1;
            }
        }
        for (e, edge) in self.edges.iter().enumerate() {
            let want = if edge.kind == EdgeKind::Arc { 2 } else { 1 };
            if uses[e] != want {
                return bad(format!("edge {e} appears in {} triangle sides", uses[e]));
            }
        }
        // Lifted edges must be traversed once in each direction (arcs) or
        // once (boundary).
        let mut seen: HashMap<(usize, i8), Vec<bool>> = HashMap::new();
        for t in 0..self.triangles.len() {
            for sheet in [1, -1] {
                let lt = self.lifted_triangle(t, sheet);
                for s in lt {
                    seen.entry((s.edge, s.sheet)).or_default().push(s.forward);
                }
                if lt[0].edge == lt[1].edge && lt[0].sheet == lt[1].sheet
                    || lt[1].edge == lt[2].edge && lt[1].sheet == lt[2].sheet
                    || lt[0].edge == lt[2].edge && lt[0].sheet == lt[2].sheet
                {
                    return bad(format!("triangle {t} lifts to a self-folded triangle"));
                }
            }
        }
        for ((e, sheet), dirs) in &seen {
            let ok = match self.edges[*e].kind {
                EdgeKind::Arc => dirs.len() == 2 && dirs[0] != dirs[1],
                EdgeKind::Boundary => dirs.len() == 1,
            };
            if !ok {
                return bad(format!("lift ({e}, {sheet}) is not glued consistently"));
            }
        }
        let chi = self.euler_characteristic();
        let t = self.topology;
        let expected =
            2 - if t.orientable { 2 * t.handles as i64 } else { t.handles as i64 } - t.boundaries as i64;
        if chi != expected {
            return bad(format!("Euler characteristic {chi}, topology says {expected}"));
        }
        if self.expected_rank() != self.rank() as i64 {
            return bad(format!("{} arcs, topology says {}", self.rank(), self.expected_rank()));
        }
        let non_orientable = self.edges.iter().any(|e| e.parity < 0);
        if non_orientable == t.orientable {
            return bad("edge parities disagree with the orientability".into());
        }
        Ok(())
    }

    /// Lamination signs for a principal lamination: `default` on every arc
    /// except one-sided loops, whose lamination runs from one side of the
    /// endpoint to the other and so crosses the loop in a fixed direction.
    pub fn principal_signs(&self, default: i8) -> Vec<i8> {
        self.arcs()
            .into_iter()
            .map(|e| {
                let edge = &self.edges[e];
                if edge.ends.0 == edge.ends.1 && edge.parity < 0 {
                    self.one_sided_sign(e).unwrap_or(default)
                } else {
                    default
                }
            })
            .collect()
    }

    /// Walk the fan of corners at the `+` lift of the endpoint of loop `e`,
    /// from a boundary lift to the first lift of `e`. The lamination enters
    /// the quadrilateral of that lift through the previous side, so it
    /// crosses the pair of opposite sides containing it.
    fn one_sided_sign(&self, e: usize) -> Option<i8> {
        let m = self.edges[e].ends.0;
        // An edge end: (edge, sheet at start, is the end point).
        type End = (usize, i8, bool);
        let mut corners: Vec<(End, End)> = Vec::new();
        for t in 0..self.triangles.len() {
            for sheet in [1, -1] {
                let lt = self.lifted_triangle(t, sheet);
                for k in 0..3 {
                    let (a, b) = (lt[k], lt[(k + 1) % 3]);
                    let p = self.edges[a.edge].parity;
                    let (point, psheet) = if a.forward {
                        (self.edges[a.edge].ends.1, a.sheet * p)
                    } else {
                        (self.edges[a.edge].ends.0, a.sheet)
                    };
                    if point == m && psheet == 1 {
                        corners.push(((a.edge, a.sheet, a.forward), (b.edge, b.sheet, !b.forward)));
                    }
                }
            }
        }
        let count = |x: &End| corners.iter().filter(|(i, o)| i == x || o == x).count();
        let start = corners
            .iter()
            .flat_map(|(i, o)| [*i, *o])
            .find(|x| self.edges[x.0].kind == EdgeKind::Boundary && count(x) == 1)?;
        let mut prev = start;
        let mut used = vec![false; corners.len()];
        loop {
            let c = (0..corners.len()).find(|&c| !used[c] && (corners[c].0 == prev || corners[c].1 == prev))?;
            used[c] = true;
            let (i, o) = corners[c];
            let (next, into) = if i == prev { (o, true) } else { (i, false) };
            if next.0 == e {
                // `into`: the arrow runs from the previous side to the lift.
                let t: i8 = if into { -1 } else { 1 };
                return Some(if next.1 > 0 { t } else { -t });
            }
            prev = next;
        }
    }

    /// The anti-symmetric quiver of the lifted triangulation. Arc pairs come
    /// first (in edge order), then boundary pairs. Within a lifted triangle
    /// each side points to the next side in the cover orientation.
    pub fn quiver(&self) -> Result<AntiSymQuiver, SurfaceError> {
        self.validate()?;
        let arcs = self.arcs();
        let bdry = self.boundary_edges();
        let mut pair_of = vec![0usize; self.edges.len()];
        for (k, &e) in arcs.iter().chain(&bdry).enumerate() {
            pair_of[e] = k;
        }
        let mut roles = vec![PairRole::Arc; arcs.len()];
        roles.extend(std::iter::repeat_n(PairRole::Boundary, bdry.len()));
        let names = arcs.iter().chain(&bdry).map(|&e| self.edges[e].name.clone()).collect();
        let m = roles.len();
        let mut b = vec![vec![0i64; 2 * m]; 2 * m];
        let vertex = |s: &LiftedSide| if s.sheet > 0 { pair_of[s.edge] } else { pair_of[s.edge] + m };
        for t in 0..self.triangles.len() {
            for sheet in [1, -1] {
                let lt = self.lifted_triangle(t, sheet);
                for k in 0..3 {
                    let (i, j) = (vertex(&lt[k]), vertex(&lt[(k + 1) % 3]));
                    b[i][j] += 1;
                    b[j][i] -= 1;
                }
            }
        }
        let n = arcs.len();
        for i in 0..2 * m {
            for j in 0..2 * m {
                if i % m >= n && j % m >= n {
                    b[i][j] = 0;
                }
            }
        }
        Ok(AntiSymQuiver::new(roles, Some(names), b)?)
    }
}
