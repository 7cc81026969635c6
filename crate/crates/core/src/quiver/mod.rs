//! Anti-symmetric quivers on paired vertices.
//!
//! Vertex `v` in `0..2m` has partner `(v + m) mod 2m`. Pairs `0..n` are
//! mutable arcs; the remaining pairs are boundary segments or laminations.

mod io;
mod random;
mod rank;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::{LaurentPoly, Role, VariableTable};
use crate::lp::{exchange_equal, LpError, LpSeed};

pub use io::{quiver_from_json, quiver_to_json, QuiverFile};
pub use random::{random_quiver, repair_bad_paths, RandomQuiverParams};
pub use rank::rank;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("vertex {0} is frozen")]
    Frozen(usize),
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("invalid quiver: {0}")]
    Invalid(String),
    #[error("shortened-formula hypothesis fails at column {0}")]
    Hypothesis(usize),
    #[error(transparent)]
    Lp(#[from] LpError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairRole {
    Arc,
    Boundary,
    Lamination,
}

impl PairRole {
    pub fn var_role(self) -> Role {
        match self {
            PairRole::Arc => Role::Cluster,
            PairRole::Boundary => Role::BoundaryFrozen,
            PairRole::Lamination => Role::LaminationFrozen,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    NotSkew(usize, usize),
    NotAntiSymmetric(usize, usize),
    PairArrow(usize),
    LaminationIncoherent { lamination: usize, arc: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AntiSymQuiver {
    m: usize,
    n: usize,
    roles: Vec<PairRole>,
    names: Vec<String>,
    b: Vec<Vec<i64>>,
}

/// `b̄_{ij} = b_{ij} + b_{ĩj}`, rows over all pairs, columns over mutable pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShortenedMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<i64>>,
}

impl ShortenedMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ShortenedMatrix { rows, cols, data: vec![vec![0; cols]; rows] }
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i][j]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.data.iter().map(|r| r[j]).collect()
    }

    pub fn negate_column(&mut self, j: usize) {
        for r in &mut self.data {
            r[j] = -r[j];
        }
    }

    pub fn column_gcd(&self, j: usize) -> i64 {
        self.column(j).iter().fold(0i64, |g, &x| num_integer::gcd(g, x))
    }
}

/// A two-term exchange polynomial read from a quiver column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnPoly {
    pub poly: LaurentPoly,
    /// Both monomials are empty, so the polynomial is the constant 2.
    pub degenerate: bool,
}

fn default_name(role: PairRole, k: usize) -> String {
    match role {
        PairRole::Arc => format!("x{k}"),
        PairRole::Boundary => format!("b{k}"),
        PairRole::Lamination => format!("L{k}"),
    }
}

/// Default names `x1.., b1.., L1..` numbered within each role.
pub fn default_names(roles: &[PairRole]) -> Vec<String> {
    let mut counts = [0usize; 3];
    roles
        .iter()
        .map(|&r| {
            let c = &mut counts[r as usize];
            *c += 1;
            default_name(r, *c)
        })
        .collect()
}

impl AntiSymQuiver {
    /// Build without checking the anti-symmetry invariants (the shape and
    /// role order are checked).
    pub fn from_parts(
        roles: Vec<PairRole>,
        names: Option<Vec<String>>,
        b: Vec<Vec<i64>>,
    ) -> Result<Self, QuiverError> {
        let m = roles.len();
        let n = roles.iter().take_while(|&&r| r == PairRole::Arc).count();
        if roles[n..].contains(&PairRole::Arc) {
            return Err(QuiverError::Invalid("arc pairs must come first".into()));
        }
        if b.len() != 2 * m || b.iter().any(|r| r.len() != 2 * m) {
            return Err(QuiverError::Invalid(format!("matrix must be {0}x{0}", 2 * m)));
        }
        let names = names.unwrap_or_else(|| default_names(&roles));
        if names.len() != m {
            return Err(QuiverError::Invalid("one name per pair".into()));
        }
        VariableTable::new(names.iter().map(|s| (s.clone(), Role::Cluster)))
            .map_err(|e| QuiverError::Invalid(e.to_string()))?;
        Ok(AntiSymQuiver { m, n, roles, names, b })
    }

    /// Build and require every invariant.
    pub fn new(
        roles: Vec<PairRole>,
        names: Option<Vec<String>>,
        b: Vec<Vec<i64>>,
    ) -> Result<Self, QuiverError> {
        let q = Self::from_parts(roles, names, b)?;
        if let Some(v) = q.check().first() {
            return Err(QuiverError::Invalid(format!("{v:?}")));
        }
        Ok(q)
    }

    pub fn zero(roles: Vec<PairRole>) -> Self {
        let m = roles.len();
        Self::from_parts(roles, None, vec![vec![0; 2 * m]; 2 * m]).expect("valid shape")
    }

    pub fn pairs(&self) -> usize {
        self.m
    }

    pub fn mutable(&self) -> usize {
        self.n
    }

    pub fn roles(&self) -> &[PairRole] {
        &self.roles
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn b(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    pub fn tilde(&self, v: usize) -> usize {
        (v + self.m) % (2 * self.m)
    }

    pub fn pair(&self, v: usize) -> usize {
        v % self.m
    }

    pub fn is_frozen(&self, v: usize) -> bool {
        self.pair(v) >= self.n
    }

    /// Set `b_{ij}` and `b_{ji}` consistently with skew-symmetry, and the
    /// partner entries `b_{j̃ĩ}`, `b_{ĩj̃}` with anti-symmetry.
    pub fn set_orbit(&mut self, i: usize, j: usize, x: i64) {
        let (ti, tj) = (self.tilde(i), self.tilde(j));
        self.b[i][j] = x;
        self.b[j][i] = -x;
        self.b[tj][ti] = x;
        self.b[ti][tj] = -x;
    }

    pub fn set_raw(&mut self, i: usize, j: usize, x: i64) {
        self.b[i][j] = x;
        self.b[j][i] = -x;
    }

    pub fn rename(&mut self, pair: usize, name: &str) {
        self.names[pair] = name.to_string();
    }

    /// Swap the two lifts of a pair. This is a relabelling, not a mutation.
    pub fn swap_lifts(&self, p: usize) -> Self {
        let mut perm: Vec<usize> = (0..2 * self.m).collect();
        perm.swap(p, p + self.m);
        self.permute_vertices(&perm)
    }

    /// New quiver whose vertex `perm[v]` is old vertex `v`.
    pub fn permute_vertices(&self, perm: &[usize]) -> Self {
        let mut b = vec![vec![0; 2 * self.m]; 2 * self.m];
        for i in 0..2 * self.m {
            for j in 0..2 * self.m {
                b[perm[i]][perm[j]] = self.b[i][j];
            }
        }
        AntiSymQuiver { b, ..self.clone() }
    }

    /// Skew-symmetry, anti-symmetry, no arrows within a pair, and lamination
    /// sign coherence.
    pub fn check(&self) -> Vec<Violation> {
        let mut out = self.check_structure();
        out.extend(self.check_coherence());
        out
    }

    pub fn check_structure(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let size = 2 * self.m;
        for i in 0..size {
            if self.b[i][self.tilde(i)] != 0 {
                out.push(Violation::PairArrow(i));
            }
            for j in 0..size {
                if self.b[i][j] != -self.b[j][i] && i < j {
                    out.push(Violation::NotSkew(i, j));
                }
                if self.b[i][j] != self.b[self.tilde(j)][self.tilde(i)] && i <= j {
                    out.push(Violation::NotAntiSymmetric(i, j));
                }
            }
        }
        out
    }

    pub fn check_coherence(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let size = 2 * self.m;
        for l in (self.n..self.m).filter(|&p| self.roles[p] == PairRole::Lamination) {
            for j in (0..size).filter(|&v| !self.is_frozen(v)) {
                if self.b[l][j] * self.b[self.tilde(l)][j] < 0 {
                    out.push(Violation::LaminationIncoherent { lamination: l, arc: j });
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_empty()
    }

    /// Matrix mutation at a single vertex. Entries between two frozen
    /// vertices are left untouched.
    pub fn mutate_vertex(&self, k: usize) -> Result<Self, QuiverError> {
        if k >= 2 * self.m {
            return Err(QuiverError::OutOfRange(k));
        }
        if self.is_frozen(k) {
            return Err(QuiverError::Frozen(k));
        }
        let size = 2 * self.m;
        let mut b = self.b.clone();
        for i in 0..size {
            for j in 0..size {
                if i == k || j == k {
                    b[i][j] = -self.b[i][j];
                } else if !(self.is_frozen(i) && self.is_frozen(j)) {
                    let (bik, bkj) = (self.b[i][k], self.b[k][j]);
                    b[i][j] = self.b[i][j] + bik.signum() * (bik * bkj).max(0);
                }
            }
        }
        Ok(AntiSymQuiver { b, ..self.clone() })
    }

    /// `μ_i ∘ μ_ĩ`: mutate at `ĩ`, then at `i`. The flag reports whether the
    /// result is still skew-symmetric and anti-symmetric. Lamination
    /// coherence is not part of the flag; it is a property of surface
    /// laminations and is not preserved by arbitrary double mutations.
    pub fn double_mutate(&self, i: usize) -> Result<(Self, bool), QuiverError> {
        if i >= 2 * self.m {
            return Err(QuiverError::OutOfRange(i));
        }
        let q = self.mutate_vertex(self.tilde(i))?.mutate_vertex(i)?;
        let ok = q.check_structure().is_empty();
        Ok((q, ok))
    }

    pub fn shortened(&self) -> ShortenedMatrix {
        let mut s = ShortenedMatrix::zero(self.m, self.n);
        for i in 0..self.m {
            for j in 0..self.n {
                s.data[i][j] = self.b[i][j] + self.b[self.tilde(i)][j];
            }
        }
        s
    }

    /// Polynomial layout: one variable per pair, arcs first.
    pub fn table(&self) -> VariableTable {
        VariableTable::new(
            self.names
                .iter()
                .zip(&self.roles)
                .map(|(s, r)| (s.clone(), r.var_role())),
        )
        .expect("names validated")
    }

    fn column_poly(&self, pos: Vec<i32>, neg: Vec<i32>) -> ColumnPoly {
        let degenerate = pos.iter().all(|&e| e == 0) && neg.iter().all(|&e| e == 0);
        let poly = LaurentPoly::monomial(pos).add(&LaurentPoly::monomial(neg));
        ColumnPoly { poly, degenerate }
    }

    /// `F_j` summed over all `2m` vertices with `x_ĩ = x_i`.
    pub fn exchange_poly_full(&self, j: usize) -> Result<ColumnPoly, QuiverError> {
        if j >= 2 * self.m {
            return Err(QuiverError::OutOfRange(j));
        }
        if self.is_frozen(j) {
            return Err(QuiverError::Frozen(j));
        }
        let mut pos = vec![0i32; self.m];
        let mut neg = vec![0i32; self.m];
        for i in 0..2 * self.m {
            let x = self.b[i][j];
            if x > 0 {
                pos[self.pair(i)] += x as i32;
            } else if x < 0 {
                neg[self.pair(i)] -= x as i32;
            }
        }
        Ok(self.column_poly(pos, neg))
    }

    /// `F̄_j` read from column `j` of the shortened matrix.
    pub fn exchange_poly_short(&self, j: usize) -> Result<ColumnPoly, QuiverError> {
        if j >= 2 * self.m {
            return Err(QuiverError::OutOfRange(j));
        }
        if self.is_frozen(j) {
            return Err(QuiverError::Frozen(j));
        }
        let mut pos = vec![0i32; self.m];
        let mut neg = vec![0i32; self.m];
        for i in 0..self.m {
            let x = self.b[i][j] + self.b[self.tilde(i)][j];
            if x > 0 {
                pos[i] = x as i32;
            } else if x < 0 {
                neg[i] = -x as i32;
            }
        }
        Ok(self.column_poly(pos, neg))
    }

    /// A vertex `k` with a path `k → i → k̃`, if any.
    pub fn has_bad_path(&self, i: usize) -> Option<usize> {
        (0..2 * self.m).find(|&k| self.b[k][i] > 0 && self.b[i][self.tilde(k)] > 0)
    }

    /// The LP seed `Σ_Q` read from the shortened matrix; frozen pairs become
    /// coefficient variables.
    pub fn lp_seed(&self) -> Result<LpSeed, QuiverError> {
        let exchange = (0..self.n)
            .map(|j| self.exchange_poly_short(j).map(|c| c.poly))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LpSeed::unchecked(self.table(), exchange)?)
    }

    /// The conditions of the LP/double-mutation equivalence at `i`, and the
    /// comparison itself when they hold.
    pub fn check_prop48(&self, i: usize) -> Result<Prop48Report, QuiverError> {
        if i >= self.n {
            return Err(QuiverError::Frozen(i));
        }
        let seed = self.lp_seed()?;
        let valid_seed = seed.is_valid();
        let normalized_trivial = valid_seed
            && seed.normalize().map(|nz| nz.hat[i] == seed.exchange()[i]).unwrap_or(false);
        let bad_path = self.has_bad_path(i);
        let mut report = Prop48Report {
            direction: i,
            valid_seed,
            normalized_trivial,
            bad_path,
            equivalent: None,
            detail: String::new(),
        };
        if !(valid_seed && normalized_trivial && bad_path.is_none()) {
            return Ok(report);
        }
        let (q2, _) = self.double_mutate(i)?;
        let expected = q2.lp_seed()?;
        match seed.mutate(i) {
            Ok(mutated) => {
                let eq = exchange_equal(&mutated, &expected);
                let new_var = mutated.exprs()[i]
                    == seed.exchange()[i].shift(&unit_vec(self.m, i, -1));
                report.equivalent = Some(eq && new_var);
                if !report.equivalent.unwrap() {
                    report.detail = format!("lp:\n{mutated}quiver:\n{expected}");
                }
            }
            Err(e) => {
                report.equivalent = Some(false);
                report.detail = e.to_string();
            }
        }
        Ok(report)
    }
}

fn unit_vec(n: usize, i: usize, e: i32) -> Vec<i32> {
    let mut v = vec![0; n];
    v[i] = e;
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Prop48Report {
    pub direction: usize,
    pub valid_seed: bool,
    pub normalized_trivial: bool,
    pub bad_path: Option<usize>,
    /// `None` when a condition fails and nothing was compared.
    pub equivalent: Option<bool>,
    pub detail: String,
}

impl Prop48Report {
    pub fn conditions_hold(&self) -> bool {
        self.valid_seed && self.normalized_trivial && self.bad_path.is_none()
    }

    pub fn holds(&self) -> bool {
        self.conditions_hold() && self.equivalent == Some(true)
    }
}

/// Shortened matrix after `μ_i ∘ μ_ĩ`, computed from `B̄` alone.
///
/// Columns violating the sign hypothesis are negated first (relabelling
/// `j ↔ j̃`) and restored afterwards.
pub fn shortened_mutation_formula(
    bbar: &ShortenedMatrix,
    i: usize,
) -> Result<ShortenedMatrix, QuiverError> {
    if i >= bbar.cols {
        return Err(QuiverError::Frozen(i));
    }
    let mut b = bbar.clone();
    let flipped: Vec<usize> = (0..b.cols)
        .filter(|&j| j != i && b.get(i, j) * b.get(j, i) > 0)
        .collect();
    for &j in &flipped {
        b.negate_column(j);
    }
    for j in 0..b.cols {
        let (bij, bji) = (b.get(i, j), b.get(j, i));
        if !(bij >= 0 && bji <= 0 || bij <= 0 && bji >= 0) {
            return Err(QuiverError::Hypothesis(j));
        }
    }
    let mut out = b.clone();
    for j in 0..b.rows {
        for k in 0..b.cols {
            if j == i || k == i {
                out.data[j][k] = -b.get(j, k);
            } else {
                let (bji, bik) = (b.get(j, i), b.get(i, k));
                out.data[j][k] = b.get(j, k) + (-bji).max(0) * bik + bik.max(0) * bji;
            }
        }
    }
    for &j in &flipped {
        out.negate_column(j);
    }
    Ok(out)
}

impl fmt::Display for AntiSymQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = |v: usize| {
            let p = self.pair(v);
            if v < self.m {
                self.names[p].clone()
            } else {
                format!("~{}", self.names[p])
            }
        };
        for i in 0..2 * self.m {
            for j in 0..2 * self.m {
                if self.b[i][j] > 0 {
                    writeln!(f, "{} -> {} x{}", label(i), label(j), self.b[i][j])?;
                }
            }
        }
        Ok(())
    }
}
