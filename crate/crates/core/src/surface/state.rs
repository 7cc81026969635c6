use serde::{Deserialize, Serialize};

use super::{SurfaceError, SurfaceSpec};
use crate::laurent::{LaurentPoly, VariableTable};
use crate::lp::{flipped_name, LpSeed};
use crate::quiver::{AntiSymQuiver, PairRole, QuiverFile, Violation};

/// A one-sided closed curve `α` together with the arc `β` it meets. Slot
/// `alpha` holds the enclosing arc `α*` in the quiver and the variable of
/// `α` in the seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Record {
    pub alpha: usize,
    pub beta: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SlotKind {
    Arc,
    Alpha(usize),
    Beta(usize),
}

/// A quasi-triangulation: the quiver of the lifted traditional
/// triangulation plus its one-sided curve records.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuasiTriState {
    q: AntiSymQuiver,
    records: Vec<Record>,
}

/// Per-record outcome of the structural checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecordCheck {
    pub record: Record,
    /// The arc before the flip to `α` has a bad path through `β`.
    pub bad_path: bool,
    /// Some labelling of the lifts satisfies the lamination restriction
    /// for every lamination.
    pub restriction: bool,
}

/// Canonical key of a state, independent of slot order, variable names and
/// the choice of lift labels. It identifies quasi-arcs by their frozen
/// rows, which is faithful once a principal lamination is attached.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateKey(Vec<(u8, Vec<Vec<i64>>)>);

impl QuasiTriState {
    /// A triangulation state. The quiver must satisfy every invariant.
    pub fn from_triangulation(q: AntiSymQuiver) -> Result<Self, SurfaceError> {
        if let Some(v) = q.check().first() {
            return Err(SurfaceError::InvalidSpec(format!("{v:?}")));
        }
        Ok(QuasiTriState { q, records: Vec::new() })
    }

    pub fn from_spec(spec: &SurfaceSpec) -> Result<Self, SurfaceError> {
        Self::from_triangulation(spec.quiver()?)
    }

    /// A state with records; fails if [`check`](Self::check) reports anything.
    pub fn with_records(q: AntiSymQuiver, mut records: Vec<Record>) -> Result<Self, SurfaceError> {
        records.sort();
        let s = QuasiTriState { q, records };
        if let Some(v) = s.check().first() {
            return Err(SurfaceError::InvalidSpec(v.clone()));
        }
        Ok(s)
    }

    pub fn quiver(&self) -> &AntiSymQuiver {
        &self.q
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn rank(&self) -> usize {
        self.q.mutable()
    }

    pub fn names(&self) -> &[String] {
        self.q.names()
    }

    pub fn is_triangulation(&self) -> bool {
        self.records.is_empty()
    }

    pub fn lamination_count(&self) -> usize {
        self.q.roles().iter().filter(|&&r| r == PairRole::Lamination).count()
    }

    pub fn slot_kind(&self, v: usize) -> SlotKind {
        for (r, rec) in self.records.iter().enumerate() {
            if rec.alpha == v {
                return SlotKind::Alpha(r);
            }
            if rec.beta == v {
                return SlotKind::Beta(r);
            }
        }
        SlotKind::Arc
    }

    pub fn table(&self) -> VariableTable {
        self.q.table()
    }

    /// Invariant violations, as messages. Pair arrows are allowed at `β`
    /// vertices, where the traditional triangulation has a self-glued
    /// triangle.
    pub fn check(&self) -> Vec<String> {
        let m = self.q.pairs();
        let betas: Vec<usize> = self.records.iter().map(|r| r.beta).collect();
        let mut out: Vec<String> = self
            .q
            .check()
            .into_iter()
            .filter(|v| !matches!(v, Violation::PairArrow(i) if betas.contains(&(i % m))))
            .map(|v| format!("{v:?}"))
            .collect();
        let mut used = Vec::new();
        for r in &self.records {
            for v in [r.alpha, r.beta] {
                if v >= self.q.mutable() {
                    out.push(format!("record {r:?} uses a frozen slot"));
                }
                if used.contains(&v) {
                    out.push(format!("records overlap at slot {v}"));
                }
                used.push(v);
            }
        }
        if !out.is_empty() {
            return out;
        }
        for c in self.record_checks() {
            if !c.bad_path {
                out.push(format!("record {:?} is not an M1 configuration", c.record));
            }
            if !c.restriction {
                out.push(format!("record {:?} violates the lamination restriction", c.record));
            }
        }
        out
    }

    pub fn record_checks(&self) -> Vec<RecordCheck> {
        self.records
            .iter()
            .map(|&r| {
                let bad_path = self
                    .q
                    .double_mutate(r.alpha)
                    .ok()
                    .and_then(|(pre, _)| pre.has_bad_path(r.alpha))
                    .map(|k| self.q.pair(k) == r.beta)
                    .unwrap_or(false);
                RecordCheck { record: r, bad_path, restriction: self.lamination_restriction(r) }
            })
            .collect()
    }

    /// `b̄_{Lβ} ≥ 0` and either `b_{Lα*} ≥ b_{L̃β}, b_{L̃α*} ≥ b_{Lβ}` or
    /// both reversed, for some labelling of the lifts of `α*` and `β`.
    fn lamination_restriction(&self, r: Record) -> bool {
        let q = &self.q;
        let lams: Vec<usize> =
            (0..q.pairs()).filter(|&p| q.roles()[p] == PairRole::Lamination).collect();
        [(false, false), (false, true), (true, false), (true, true)].iter().any(|&(sa, sb)| {
            let a = if sa { q.tilde(r.alpha) } else { r.alpha };
            let b = if sb { q.tilde(r.beta) } else { r.beta };
            lams.iter().all(|&l| {
                let lt = q.tilde(l);
                let bar = q.b(l, b) + q.b(lt, b);
                let ge = q.b(l, a) >= q.b(lt, b) && q.b(lt, a) >= q.b(l, b);
                let le = q.b(l, a) <= q.b(lt, b) && q.b(lt, a) <= q.b(l, b);
                bar >= 0 && (ge || le)
            })
        })
    }

    /// The lamination sign forced on arc `p`, if any. A one-sided arc has a
    /// path `p → j → p̃` or `p̃ → j → p`; its lamination crosses it in one
    /// direction only, and the other sign makes the rows incoherent after
    /// flipping `p`.
    pub fn forced_sign(&self, p: usize) -> Option<i8> {
        let q = &self.q;
        let tp = q.tilde(p);
        let through = |a: usize, b: usize| (0..2 * q.pairs()).any(|j| q.b(a, j) > 0 && q.b(j, b) > 0);
        match (through(p, tp), through(tp, p)) {
            (true, false) => Some(-1),
            (false, true) => Some(1),
            _ => None,
        }
    }

    /// `default` on every arc, except where the sign is forced.
    pub fn principal_signs(&self, default: i8) -> Vec<i8> {
        (0..self.q.mutable()).map(|p| self.forced_sign(p).unwrap_or(default)).collect()
    }

    /// Append one lamination pair per arc whose shortened row is `±1` on
    /// that arc and zero elsewhere.
    pub fn attach_principal_lamination(&self, signs: &[i8]) -> Result<Self, SurfaceError> {
        if !self.is_triangulation() {
            return Err(SurfaceError::NotTriangulation);
        }
        let n = self.q.mutable();
        if signs.len() != n || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(SurfaceError::InvalidSpec(format!("need {n} signs in {{1, -1}}")));
        }
        if let Some(p) = (0..n).find(|&p| self.forced_sign(p).is_some_and(|s| s != signs[p])) {
            return Err(SurfaceError::InvalidSpec(format!(
                "the lamination of one-sided arc `{}` must have sign {}",
                self.q.names()[p],
                self.forced_sign(p).unwrap()
            )));
        }
        let m = self.q.pairs();
        let m2 = m + n;
        let lift = |v: usize| if v < m { v } else { v - m + m2 };
        let mut b = vec![vec![0i64; 2 * m2]; 2 * m2];
        for i in 0..2 * m {
            for j in 0..2 * m {
                b[lift(i)][lift(j)] = self.q.b(i, j);
            }
        }
        let mut roles = self.q.roles().to_vec();
        roles.extend(std::iter::repeat_n(PairRole::Lamination, n));
        let mut names = self.q.names().to_vec();
        let mut table = self.q.table();
        for i in 0..n {
            let (t, k) = table.with_fresh(&format!("L{}", i + 1), crate::laurent::Role::LaminationFrozen);
            names.push(t.name(k).to_string());
            table = t;
        }
        let mut q = AntiSymQuiver::from_parts(roles, Some(names), b)?;
        for (i, &s) in signs.iter().enumerate() {
            q.set_orbit(m + i, i, i64::from(s));
        }
        Self::from_triangulation(q)
    }

    /// The flip at slot `v`.
    pub fn flip(&self, v: usize) -> Result<Self, SurfaceError> {
        if v >= self.q.mutable() {
            return Err(SurfaceError::NotFlippable(v));
        }
        let name = flipped_name(&self.q.table(), v);
        let mut records = self.records.clone();
        let mut q = match self.slot_kind(v) {
            SlotKind::Arc => {
                let witness = self.q.has_bad_path(v);
                let (q, _) = self.q.double_mutate(v)?;
                if let Some(k) = witness {
                    let beta = self.q.pair(k);
                    if self.q.is_frozen(k) || self.slot_kind(beta) != SlotKind::Arc {
                        return Err(SurfaceError::BadFlip {
                            slot: v,
                            msg: format!("bad path through `{}`", self.q.names()[beta]),
                        });
                    }
                    records.push(Record { alpha: v, beta });
                    records.sort();
                }
                q
            }
            SlotKind::Alpha(r) => {
                records.remove(r);
                self.q.double_mutate(v)?.0
            }
            SlotKind::Beta(r) => {
                let a = self.records[r].alpha;
                let q = self.q.double_mutate(a)?.0;
                let q = q.double_mutate(v)?.0;
                q.double_mutate(a)?.0
            }
        };
        q.rename(v, &name);
        Ok(QuasiTriState { q, records })
    }

    /// Exchange polynomials of the quasi-arcs, in the layout of
    /// [`table`](Self::table), sign-normalized.
    pub fn exchange_polys(&self) -> Result<Vec<LaurentPoly>, SurfaceError> {
        let m = self.q.pairs();
        let n = self.q.mutable();
        let var = |k: usize| LaurentPoly::var(m, k);
        let merge = |mut f: LaurentPoly, skip: Option<usize>| -> Result<LaurentPoly, SurfaceError> {
            for (r, rec) in self.records.iter().enumerate() {
                if Some(r) != skip {
                    f = f.substitute(rec.alpha, &var(rec.alpha).mul(&var(rec.beta)))?;
                }
            }
            Ok(f)
        };
        let column = |q: &AntiSymQuiver, j: usize| -> Result<LaurentPoly, SurfaceError> {
            let c = q.exchange_poly_short(j)?;
            if c.degenerate {
                return Err(SurfaceError::Degenerate(self.q.names()[j].clone()));
            }
            Ok(c.poly)
        };
        let cluster: Vec<bool> = (0..m).map(|k| k < n).collect();
        (0..n)
            .map(|j| match self.slot_kind(j) {
                SlotKind::Arc => merge(column(&self.q, j)?, None),
                SlotKind::Alpha(r) => merge(column(&self.q, j)?, Some(r)),
                SlotKind::Beta(r) => {
                    let a = self.records[r].alpha;
                    let f_alpha = column(&self.q, a)?;
                    let pre = self.q.double_mutate(a)?.0;
                    let mut inv = vec![0; m];
                    inv[a] = -1;
                    let g = column(&pre, j)?.substitute(a, &f_alpha.shift(&inv))?;
                    let g = merge(g, Some(r))?;
                    Ok(g.strip_monomial_on(&cluster)?.core)
                }
            })
            .map(|f| f.map(|f| f.sign_normalized()))
            .collect()
    }

    /// First pair of slots with equal exchange polynomials.
    pub fn coincidence(&self) -> Result<Option<(usize, usize)>, SurfaceError> {
        let polys = self.exchange_polys()?;
        Ok(super::distinct_exchange(&polys))
    }

    /// The LP seed of the state without the distinctness check.
    pub fn lp_seed_raw(&self) -> Result<LpSeed, SurfaceError> {
        Ok(LpSeed::unchecked(self.table(), self.exchange_polys()?)?)
    }

    /// The LP seed of the state. Coinciding exchange polynomials are an
    /// error.
    pub fn lp_seed(&self) -> Result<LpSeed, SurfaceError> {
        if let Some((a, b)) = self.coincidence()? {
            return Err(SurfaceError::Distinctness {
                a: self.names()[a].clone(),
                b: self.names()[b].clone(),
            });
        }
        self.lp_seed_raw()
    }

    fn colpair(&self, p: usize) -> Vec<Vec<i64>> {
        let q = &self.q;
        let col = |c: usize| -> Vec<i64> {
            (0..2 * q.pairs()).filter(|&v| q.is_frozen(v)).map(|v| q.b(v, c)).collect()
        };
        let mut pair = vec![col(p), col(q.tilde(p))];
        pair.sort();
        pair
    }

    pub fn key(&self) -> StateKey {
        let mut slots: Vec<(u8, Vec<Vec<i64>>)> = (0..self.q.mutable())
            .map(|p| match self.slot_kind(p) {
                SlotKind::Arc => (0, self.colpair(p)),
                SlotKind::Alpha(_) => (1, self.colpair(p)),
                SlotKind::Beta(r) => {
                    let mut c = self.colpair(p);
                    c.extend(self.colpair(self.records[r].alpha));
                    (2, c)
                }
            })
            .collect();
        slots.sort();
        StateKey(slots)
    }
}

/// A one-sided record in a state file, by variable name. `alphastar` is the
/// quiver vertex that carries the enclosing arc.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneSidedFile {
    pub alpha: String,
    pub beta: String,
    pub alphastar: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateFile {
    #[serde(flatten)]
    pub quiver: QuiverFile,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub onesided: Vec<OneSidedFile>,
}

impl StateFile {
    pub fn of(s: &QuasiTriState) -> Self {
        let names = s.names();
        StateFile {
            quiver: QuiverFile::of(&s.q),
            onesided: s
                .records
                .iter()
                .map(|r| OneSidedFile {
                    alpha: names[r.alpha].clone(),
                    beta: names[r.beta].clone(),
                    alphastar: r.alpha,
                })
                .collect(),
        }
    }

    pub fn into_state(self) -> Result<QuasiTriState, SurfaceError> {
        let f = self.quiver;
        if f.roles.len() != f.pairs {
            return Err(SurfaceError::InvalidSpec("one role per pair".into()));
        }
        let q = AntiSymQuiver::from_parts(f.roles, f.names, f.matrix)?;
        let slot = |name: &str| {
            q.names()
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| SurfaceError::InvalidSpec(format!("unknown slot `{name}`")))
        };
        let mut records = Vec::new();
        for r in &self.onesided {
            let alpha = slot(&r.alpha)?;
            if r.alphastar != alpha {
                return Err(SurfaceError::InvalidSpec(format!(
                    "`alphastar` of `{}` must be vertex {alpha}",
                    r.alpha
                )));
            }
            records.push(Record { alpha, beta: slot(&r.beta)? });
        }
        QuasiTriState::with_records(q, records)
    }
}

pub fn state_from_json(text: &str) -> Result<QuasiTriState, SurfaceError> {
    let f: StateFile =
        serde_json::from_str(text).map_err(|e| SurfaceError::InvalidSpec(e.to_string()))?;
    f.into_state()
}

pub fn state_to_json(s: &QuasiTriState) -> String {
    serde_json::to_string_pretty(&StateFile::of(s)).expect("serializable")
}
