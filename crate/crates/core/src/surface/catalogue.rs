use std::collections::BTreeMap;

use super::spec::{EdgeKind, EdgeSpec, Side, SurfaceSpec, Topology};
use super::{QuasiTriState, SurfaceError};

/// A polygon whose sides are boundary segments or glued in pairs, cut into
/// triangles by diagonals. Vertices are listed counterclockwise.
struct PolygonModel {
    /// Marked point of each polygon vertex.
    labels: Vec<usize>,
    /// Side `i` runs from vertex `i` to vertex `i + 1`.
    sides: Vec<PolySide>,
    /// Triangles as vertex triples.
    triangles: Vec<[usize; 3]>,
    marked: usize,
}

#[derive(Clone)]
enum PolySide {
    Boundary(String),
    /// Glued side: edge name, and whether the side runs along the edge.
    Glued(String, bool),
}

/// Union-find with parity on (vertex, copy) pairs.
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.parent[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.parent[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[ra] = rb;
    }
}

impl PolygonModel {
    fn build(
        self,
        name: &str,
        topology: Topology,
        mut arc_name: impl FnMut(usize) -> String,
    ) -> Result<SurfaceSpec, SurfaceError> {
        let nv = self.labels.len();
        // Lifts of polygon vertex i in copy s are node 2i + (s < 0).
        let node = |i: usize, s: i8| 2 * (i % nv) + usize::from(s < 0);
        let mut dsu = Dsu::new(2 * nv);
        let mut glued: BTreeMap<String, Vec<(usize, bool)>> = BTreeMap::new();
        for (i, side) in self.sides.iter().enumerate() {
            if let PolySide::Glued(e, fwd) = side {
                glued.entry(e.clone()).or_default().push((i, *fwd));
            }
        }
        for (e, occ) in &glued {
            if occ.len() != 2 {
                return Err(SurfaceError::InvalidSpec(format!("{name}: side {e} used {} times", occ.len())));
            }
            let ((i, fi), (j, fj)) = (occ[0], occ[1]);
            for s in [1i8, -1] {
                if fi == fj {
                    dsu.union(node(i, s), node(j, -s));
                    dsu.union(node(i + 1, s), node(j + 1, -s));
                } else {
                    dsu.union(node(i, s), node(j + 1, s));
                    dsu.union(node(i + 1, s), node(j, s));
                }
            }
        }
        // eta[i] = +1 when vertex i in copy + is the + lift of its marked point.
        let mut plus_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut eta = vec![1i8; nv];
        for i in 0..nv {
            let r = dsu.find(node(i, 1));
            let lab = self.labels[i];
            match plus_root.get(&lab) {
                None => {
                    plus_root.insert(lab, r);
                }
                Some(&pr) => {
                    if pr != r {
                        let other = dsu.find(node(i, -1));
                        if other != pr {
                            return Err(SurfaceError::InvalidSpec(format!(
                                "{name}: marked point {lab} has more than two lifts"
                            )));
                        }
                        eta[i] = -1;
                    }
                }
            }
        }

        let mut edges = Vec::new();
        let mut edge_of: BTreeMap<(usize, usize), (usize, bool)> = BTreeMap::new();
        let mut glued_edge: BTreeMap<String, usize> = BTreeMap::new();
        let mut bcount = 0;
        for (i, side) in self.sides.iter().enumerate() {
            let (a, b) = (i, (i + 1) % nv);
            let (id, fwd) = match side {
                PolySide::Boundary(s) => {
                    bcount += 1;
                    edges.push(EdgeSpec {
                        name: s.clone(),
                        kind: EdgeKind::Boundary,
                        ends: (self.labels[a], self.labels[b]),
                        parity: eta[a] * eta[b],
                    });
                    (edges.len() - 1, true)
                }
                PolySide::Glued(s, fwd) => {
                    let id = match glued_edge.get(s) {
                        Some(&id) => id,
                        None => {
                            let (st, en) = if *fwd { (a, b) } else { (b, a) };
                            edges.push(EdgeSpec {
                                name: s.clone(),
                                kind: EdgeKind::Arc,
                                ends: (self.labels[st], self.labels[en]),
                                parity: eta[st] * eta[en],
                            });
                            glued_edge.insert(s.clone(), edges.len() - 1);
                            edges.len() - 1
                        }
                    };
                    (id, *fwd)
                }
            };
            edge_of.insert((a, b), (id, fwd));
            edge_of.insert((b, a), (id, !fwd));
        }
        let _ = bcount;
        let mut diag = 0;
        let mut triangles = Vec::new();
        for t in &self.triangles {
            let mut v = *t;
            v.sort_unstable();
            let mut sides = [Side { edge: 0, forward: true }; 3];
            for k in 0..3 {
                let (a, b) = (v[k], v[(k + 1) % 3]);
                let (id, fwd) = match edge_of.get(&(a, b)) {
                    Some(&x) => x,
                    None => {
                        diag += 1;
                        edges.push(EdgeSpec {
                            name: arc_name(diag),
                            kind: EdgeKind::Arc,
                            ends: (self.labels[a], self.labels[b]),
                            parity: eta[a] * eta[b],
                        });
                        let id = edges.len() - 1;
                        edge_of.insert((a, b), (id, true));
                        edge_of.insert((b, a), (id, false));
                        (id, true)
                    }
                };
                sides[k] = Side { edge: id, forward: fwd };
            }
            // The listing must be counterclockwise as seen from the + lift
            // of the first corner.
            if eta[v[0]] < 0 {
                sides.reverse();
                for s in &mut sides {
                    s.forward = !s.forward;
                }
            }
            triangles.push(sides);
        }
        let spec = SurfaceSpec {
            name: name.to_string(),
            marked: self.marked,
            punctures: Vec::new(),
            edges,
            triangles,
            topology,
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn boundary(k: usize) -> PolySide {
    PolySide::Boundary(format!("b{k}"))
}

/// Disk with `k` marked points, fan triangulation from vertex 0.
pub fn polygon(k: usize) -> Result<SurfaceSpec, SurfaceError> {
    if k < 4 {
        return Err(SurfaceError::Excluded(format!("polygon needs at least 4 marked points, got {k}")));
    }
    let model = PolygonModel {
        labels: (0..k).collect(),
        sides: (1..=k).map(boundary).collect(),
        triangles: (1..k - 1).map(|j| [0, j, j + 1]).collect(),
        marked: k,
    };
    model.build(
        &format!("polygon({k})"),
        Topology { orientable: true, handles: 0, boundaries: 1 },
        |d| format!("x{d}"),
    )
}

/// Annulus with `a` marked points on the outer and `b` on the inner
/// boundary, triangulated by bridging arcs.
pub fn annulus(a: usize, b: usize) -> Result<SurfaceSpec, SurfaceError> {
    if a == 0 || b == 0 {
        return Err(SurfaceError::Excluded("annulus needs a marked point on each boundary".into()));
    }
    // Cut along x1 from outer point 0 to inner point 0.
    let nv = a + b + 2;
    let mut labels: Vec<usize> = (0..a).collect();
    labels.push(0);
    labels.push(a);
    labels.extend((1..b).rev().map(|j| a + j));
    labels.push(a);
    let mut sides: Vec<PolySide> = (1..=a).map(boundary).collect();
    sides.push(PolySide::Glued("x1".into(), true));
    sides.extend((a + 1..=a + b).map(boundary));
    sides.push(PolySide::Glued("x1".into(), false));
    let mut triangles = Vec::new();
    let (mut o, mut i) = (0, nv - 1);
    while o < a {
        triangles.push([o, o + 1, i]);
        o += 1;
    }
    while i > a + 1 {
        triangles.push([o, i - 1, i]);
        i -= 1;
    }
    let model = PolygonModel { labels, sides, triangles, marked: a + b };
    model.build(
        &format!("annulus({a},{b})"),
        Topology { orientable: true, handles: 0, boundaries: 2 },
        |d| format!("x{}", d + 1),
    )
}

/// Möbius strip with `k + 1` marked points on its boundary, as a polygon
/// with one pair of sides glued with a twist.
pub fn mobius(k: usize) -> Result<SurfaceSpec, SurfaceError> {
    if k == 0 {
        return Err(SurfaceError::Excluded("mobius needs k >= 1".into()));
    }
    let c = k + 1;
    let mut labels: Vec<usize> = (0..c).collect();
    labels.push(0);
    labels.push(0);
    let mut sides: Vec<PolySide> = (1..=c).map(boundary).collect();
    sides.push(PolySide::Glued("x1".into(), true));
    sides.push(PolySide::Glued("x1".into(), true));
    let apex = c + 1;
    let triangles = (0..c).map(|j| [j, j + 1, apex]).collect();
    let model = PolygonModel { labels, sides, triangles, marked: c };
    model.build(
        &format!("mobius({k})"),
        Topology { orientable: false, handles: 1, boundaries: 1 },
        |d| format!("x{}", d + 1),
    )
}

/// Disk with `k` boundary marked points and one puncture, star
/// triangulation.
pub fn once_punctured_disk(k: usize) -> Result<SurfaceSpec, SurfaceError> {
    if k < 2 {
        return Err(SurfaceError::Excluded(
            "the once-punctured monogon is excluded; need k >= 2".into(),
        ));
    }
    let p = k;
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push(EdgeSpec {
            name: format!("x{}", i + 1),
            kind: EdgeKind::Arc,
            ends: (i, p),
            parity: 1,
        });
    }
    for i in 0..k {
        edges.push(EdgeSpec {
            name: format!("b{}", i + 1),
            kind: EdgeKind::Boundary,
            ends: (i, (i + 1) % k),
            parity: 1,
        });
    }
    let triangles = (0..k)
        .map(|i| {
            [
                Side { edge: k + i, forward: true },
                Side { edge: (i + 1) % k, forward: true },
                Side { edge: i, forward: false },
            ]
        })
        .collect();
    let spec = SurfaceSpec {
        name: format!("once-punctured-disk({k})"),
        marked: k + 1,
        punctures: vec![p],
        edges,
        triangles,
        topology: Topology { orientable: true, handles: 0, boundaries: 1 },
    };
    spec.validate()?;
    Ok(spec)
}

/// Look up a catalogue surface by name and `K=V` parameters.
pub fn build_surface(name: &str, params: &BTreeMap<String, usize>) -> Result<SurfaceSpec, SurfaceError> {
    let get = |key: &str| {
        params
            .get(key)
            .copied()
            .ok_or_else(|| SurfaceError::InvalidSpec(format!("{name} needs parameter {key}")))
    };
    match name {
        "polygon" => polygon(get("k")?),
        "annulus" => annulus(get("a")?, get("b")?),
        "mobius" => mobius(get("k")?),
        "once-punctured-disk" => once_punctured_disk(get("k")?),
        other => Err(SurfaceError::InvalidSpec(format!("unknown surface `{other}`"))),
    }
}

/// The initial triangulation state of a catalogue surface.
pub fn build_catalogue(name: &str, params: &BTreeMap<String, usize>) -> Result<QuasiTriState, SurfaceError> {
    QuasiTriState::from_spec(&build_surface(name, params)?)
}

/// The initial state with a principal lamination, `sign` on every arc
/// whose sign is not forced.
pub fn principal_state(spec: &SurfaceSpec, sign: i8) -> Result<QuasiTriState, SurfaceError> {
    QuasiTriState::from_spec(spec)?.attach_principal_lamination(&spec.principal_signs(sign))
}

/// Parse `polygon(6)`, `annulus(1,1)` or a bare name with separate params.
pub fn parse_surface_name(text: &str) -> Result<(String, BTreeMap<String, usize>), SurfaceError> {
    let text = text.trim();
    let Some(open) = text.find('(') else {
        return Ok((text.to_string(), BTreeMap::new()));
    };
    let name = text[..open].trim().to_string();
    let inner = text[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| SurfaceError::InvalidSpec(format!("malformed surface `{text}`")))?;
    let values: Vec<usize> = inner
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| SurfaceError::InvalidSpec(format!("malformed surface `{text}`")))?;
    let keys: &[&str] = match name.as_str() {
        "annulus" => &["a", "b"],
        _ => &["k"],
    };
    if values.len() != keys.len() {
        return Err(SurfaceError::InvalidSpec(format!("{name} takes {} parameters", keys.len())));
    }
    Ok((name, keys.iter().map(|k| k.to_string()).zip(values).collect()))
}
