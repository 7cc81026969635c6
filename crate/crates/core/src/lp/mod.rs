//! Laurent phenomenon seeds and their mutation.

mod graph;
mod io;

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::laurent::{
    gcd, is_irreducible, Irreducibility, LaurentError, LaurentPoly, Role, VariableTable,
};

pub use graph::{
    explore, exchange_graph, laurent_check, ExchangeGraph, ExploreError, LaurentReport,
};
pub use io::{seed_from_json, seed_to_file, seed_to_json, SeedFile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    #[error("direction {0} out of range")]
    BadDirection(usize),
    #[error("new cluster variable at slot {0} is not a Laurent polynomial in the initial variables")]
    LaurentViolation(usize),
    #[error("normalized exchange polynomial of slot {i} has slot {j} in its denominator")]
    NormalizationUnsafe { i: usize, j: usize },
    #[error("slot {0}: cannot clear to a polynomial in the frozen variables")]
    Step3(usize),
    #[error("slot {slot}: mutated exchange polynomial is reducible (factor {factor})")]
    Reducible { slot: usize, factor: String },
    #[error("slot {0}: mutated exchange polynomial is a monomial or constant")]
    Degenerate(usize),
}

/// Per-slot verdict on an exchange polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SlotStatus {
    Irreducible,
    /// Irreducibility search inconclusive; accepted.
    Unknown,
    Reducible,
    /// Constant or monomial.
    Degenerate,
    /// Involves its own variable, has negative exponents, or similar.
    Malformed,
}

impl SlotStatus {
    pub fn accepted(self) -> bool {
        matches!(self, SlotStatus::Irreducible | SlotStatus::Unknown)
    }
}

fn slot_status(f: &LaurentPoly, i: usize) -> SlotStatus {
    if f.involves(i) || !f.is_polynomial() {
        return SlotStatus::Malformed;
    }
    if f.is_monomial() || f.is_zero() {
        return SlotStatus::Degenerate;
    }
    match is_irreducible(f) {
        Ok(Irreducibility::Irreducible) => SlotStatus::Irreducible,
        Ok(Irreducibility::Unknown) => SlotStatus::Unknown,
        Ok(Irreducibility::Reducible(_)) => SlotStatus::Reducible,
        Err(_) => SlotStatus::Degenerate,
    }
}

/// An LP seed. Slots `0..n` are cluster variables, the rest are frozen.
///
/// `exprs[k]` is the current cluster variable of slot `k` written in the
/// initial variables (layout of `init`); `exchange[k]` is written in the
/// current variables (layout of `table`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSeed {
    table: VariableTable,
    init: VariableTable,
    n: usize,
    exprs: Vec<LaurentPoly>,
    exchange: Vec<LaurentPoly>,
    status: Vec<SlotStatus>,
}

/// Normalized exchange polynomials: `hat[j] * x^denominators[j] = F_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedExchange {
    pub hat: Vec<LaurentPoly>,
    /// Exponent vector over the full table layout; zero outside cluster slots.
    pub denominators: Vec<Vec<i32>>,
}

/// Canonical form of a seed up to slot order and signs of exchange
/// polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeedKey(Vec<(LaurentPoly, LaurentPoly)>);

impl SeedKey {
    pub fn hash64(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.hash(&mut h);
        h.finish()
    }
}

impl LpSeed {
    /// Validate and build. The table must list the cluster variables first.
    pub fn new(table: VariableTable, exchange: Vec<LaurentPoly>) -> Result<Self, LpError> {
        let seed = Self::unchecked(table, exchange)?;
        if let Some(k) = (0..seed.n).find(|&k| !seed.status[k].accepted()) {
            return Err(LpError::InvalidSeed(format!(
                "exchange polynomial of `{}` is {:?}",
                seed.table.name(k),
                seed.status[k]
            )));
        }
        Ok(seed)
    }

    /// Build without rejecting invalid slots; the verdicts are kept as flags.
    pub fn unchecked(table: VariableTable, exchange: Vec<LaurentPoly>) -> Result<Self, LpError> {
        let n = table.entries().iter().take_while(|(_, r)| *r == Role::Cluster).count();
        if n == 0 {
            return Err(LpError::InvalidSeed("no cluster variables".into()));
        }
        if table.entries()[n..].iter().any(|(_, r)| *r == Role::Cluster) {
            return Err(LpError::InvalidSeed("cluster variables must precede frozen ones".into()));
        }
        if exchange.len() != n {
            return Err(LpError::InvalidSeed(format!(
                "{} exchange polynomials for {} cluster variables",
                exchange.len(),
                n
            )));
        }
        if exchange.iter().any(|f| f.nvars() != table.len()) {
            return Err(LpError::InvalidSeed("exchange polynomial layout mismatch".into()));
        }
        let exprs = (0..n).map(|k| LaurentPoly::var(table.len(), k)).collect();
        let status = exchange.iter().enumerate().map(|(k, f)| slot_status(f, k)).collect();
        Ok(LpSeed { init: table.clone(), table, n, exprs, exchange, status })
    }

    /// Parse from names and polynomial strings.
    pub fn from_strs(cluster: &[&str], frozen: &[&str], exchange: &[&str]) -> Result<Self, LpError> {
        let table = VariableTable::new(
            cluster
                .iter()
                .map(|s| (s.to_string(), Role::Cluster))
                .chain(frozen.iter().map(|s| (s.to_string(), Role::BoundaryFrozen))),
        )?;
        let ex = exchange
            .iter()
            .map(|s| crate::laurent::parse(s, &table))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(table, ex)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &VariableTable {
        &self.table
    }

    pub fn initial_table(&self) -> &VariableTable {
        &self.init
    }

    pub fn exprs(&self) -> &[LaurentPoly] {
        &self.exprs
    }

    pub fn exchange(&self) -> &[LaurentPoly] {
        &self.exchange
    }

    pub fn status(&self) -> &[SlotStatus] {
        &self.status
    }

    pub fn is_valid(&self) -> bool {
        self.status.iter().all(|s| s.accepted())
    }

    pub fn frozen_indices(&self) -> Vec<usize> {
        (self.n..self.table.len()).collect()
    }

    /// Expression for each variable of the table in the initial variables;
    /// frozen variables map to themselves.
    fn images(&self) -> Vec<LaurentPoly> {
        let nv = self.table.len();
        (0..nv)
            .map(|k| if k < self.n { self.exprs[k].clone() } else { LaurentPoly::var(nv, k) })
            .collect()
    }

    /// Evaluate a polynomial in the current variables at the cluster
    /// expressions. Negative exponents are allowed only where the image is
    /// a monomial.
    pub fn evaluate(&self, f: &LaurentPoly) -> Result<LaurentPoly, LpError> {
        Ok(f.compose(&self.images(), self.table.len())?)
    }

    pub fn normalize(&self) -> Result<NormalizedExchange, LpError> {
        let nv = self.table.len();
        let (_, z) = self.table.with_fresh("x", Role::Cluster);
        let mut hat = Vec::with_capacity(self.n);
        let mut denominators = Vec::with_capacity(self.n);
        for j in 0..self.n {
            let fj = self.exchange[j].embed(nv + 1);
            let mut den = vec![0i32; nv];
            for k in 0..self.n {
                if k == j {
                    continue;
                }
                let fk = self.exchange[k].embed(nv + 1);
                let mut zinv = vec![0; nv + 1];
                zinv[z] = -1;
                let sub = fj.substitute(k, &fk.shift(&zinv))?;
                den[k] = sub.max_power_dividing(&fk)? as i32;
            }
            let neg: Vec<i32> = den.iter().map(|e| -e).collect();
            hat.push(self.exchange[j].shift(&neg));
            denominators.push(den);
        }
        Ok(NormalizedExchange { hat, denominators })
    }

    /// LP mutation in direction `i`.
    pub fn mutate(&self, i: usize) -> Result<LpSeed, LpError> {
        if i >= self.n {
            return Err(LpError::BadDirection(i));
        }
        let nv = self.table.len();
        let norm = self.normalize()?;
        let fi = &self.exchange[i];
        let hat_i = &norm.hat[i];

        let num = self.evaluate(fi)?;
        let mut den = self.exprs[i].clone();
        for (k, &a) in norm.denominators[i].iter().enumerate() {
            if a > 0 {
                den = den.mul(&self.exprs[k].pow(a as u32));
            }
        }
        let new_expr = num.divide_exact(&den)?.ok_or(LpError::LaurentViolation(i))?;

        let cluster_mask: Vec<bool> = (0..nv).map(|k| k < self.n).collect();
        let mut exchange = self.exchange.clone();
        let mut status = self.status.clone();
        for j in 0..self.n {
            if j == i || !self.exchange[j].involves(i) {
                continue;
            }
            if norm.denominators[i][j] != 0 {
                return Err(LpError::NormalizationUnsafe { i, j });
            }
            let p = hat_i.at_zero(j)?;
            if p.is_zero() {
                return Err(LpError::NormalizationUnsafe { i, j });
            }
            let mut xinv = vec![0; nv];
            xinv[i] = -1;
            let mut h = self.exchange[j].substitute(i, &p.shift(&xinv))?;
            // Frozen variables are primes of the coefficient ring, not units,
            // so shared powers of them are common factors too.
            loop {
                let g = gcd(&h, &p);
                let mut changed = !g.is_one();
                if changed {
                    h = h.divide_exact(&g)?.expect("gcd divides");
                }
                for f in self.n..nv {
                    let k = h.min_degree_in(f).min(p.min_degree_in(f));
                    if k > 0 {
                        let mut e = vec![0; nv];
                        e[f] = -k;
                        h = h.shift(&e);
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
            let stripped = h.strip_monomial_on(&cluster_mask)?;
            let fj = stripped.core;
            if !fj.is_polynomial() {
                return Err(LpError::Step3(j));
            }
            if fj.is_monomial() {
                return Err(LpError::Degenerate(j));
            }
            if let Irreducibility::Reducible(g) = is_irreducible(&fj)? {
                return Err(LpError::Reducible { slot: j, factor: g.display(&self.table).to_string() });
            }
            status[j] = slot_status(&fj, j);
            exchange[j] = fj;
        }

        let renamed = flipped_name(&self.table, i);
        let mut exprs = self.exprs.clone();
        exprs[i] = new_expr;
        Ok(LpSeed {
            table: self.table.renamed(i, &renamed)?,
            init: self.init.clone(),
            n: self.n,
            exprs,
            exchange,
            status,
        })
    }

    /// Apply a sequence of mutations.
    pub fn mutate_seq(&self, dirs: &[usize]) -> Result<LpSeed, LpError> {
        let mut s = self.clone();
        for &d in dirs {
            s = s.mutate(d)?;
        }
        Ok(s)
    }

    pub fn key(&self) -> SeedKey {
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&a, &b| self.exprs[a].cmp(&self.exprs[b]));
        // perm[old slot] = new slot
        let nv = self.table.len();
        let mut perm: Vec<usize> = (0..nv).collect();
        for (new, &old) in order.iter().enumerate() {
            perm[old] = new;
        }
        SeedKey(
            order
                .iter()
                .map(|&k| (self.exprs[k].clone(), self.exchange[k].permute(&perm).sign_normalized()))
                .collect(),
        )
    }

    /// Set the listed frozen variables to one.
    pub fn specialize(&self, ones: &[usize]) -> Result<LpSeed, LpError> {
        if let Some(&v) = ones.iter().find(|&&v| v < self.n || v >= self.table.len()) {
            return Err(LpError::InvalidSeed(format!("slot {v} is not frozen")));
        }
        let exprs: Vec<LaurentPoly> = self.exprs.iter().map(|e| e.at_one(ones)).collect();
        let exchange: Vec<LaurentPoly> = self.exchange.iter().map(|f| f.at_one(ones)).collect();
        let status = exchange.iter().enumerate().map(|(k, f)| slot_status(f, k)).collect();
        Ok(LpSeed {
            table: self.table.clone(),
            init: self.init.clone(),
            n: self.n,
            exprs,
            exchange,
            status,
        })
    }

    /// Frozen slots named in `names`.
    pub fn frozen_by_name(&self, names: &[&str]) -> Result<Vec<usize>, LpError> {
        names
            .iter()
            .map(|s| {
                self.table
                    .index_of(s)
                    .filter(|&k| k >= self.n)
                    .ok_or_else(|| LpError::InvalidSeed(format!("`{s}` is not a frozen variable")))
            })
            .collect()
    }

    /// Slot index of a current cluster variable name.
    pub fn direction(&self, name: &str) -> Option<usize> {
        self.table.index_of(name).filter(|&k| k < self.n)
    }
}

/// Name for the variable replacing slot `i`: toggle a trailing prime,
/// falling back to a fresh name on collision.
pub fn flipped_name(table: &VariableTable, i: usize) -> String {
    let name = table.name(i);
    let renamed = match name.strip_suffix('\'') {
        Some(base) => base.to_string(),
        None => format!("{name}'"),
    };
    if table.index_of(&renamed).is_some() {
        table.fresh_name(&renamed)
    } else {
        renamed
    }
}

pub fn seeds_equal(a: &LpSeed, b: &LpSeed) -> bool {
    a.key() == b.key()
}

/// Slotwise comparison of exchange polynomials up to sign, ignoring
/// cluster expressions.
pub fn exchange_equal(a: &LpSeed, b: &LpSeed) -> bool {
    a.n == b.n
        && a.exchange
            .iter()
            .zip(&b.exchange)
            .all(|(f, g)| f.sign_normalized() == g.sign_normalized())
}

/// Whether specializing commutes with mutation at `i`.
pub fn specialization_commutes(seed: &LpSeed, i: usize, ones: &[usize]) -> Result<bool, LpError> {
    let lhs = seed.mutate(i)?.specialize(ones)?;
    let rhs = seed.specialize(ones)?.mutate(i)?;
    Ok(seeds_equal(&lhs, &rhs))
}

impl fmt::Display for LpSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.n {
            writeln!(
                f,
                "{} = {}    F = {}",
                self.table.name(k),
                self.exprs[k].display(&self.init),
                self.exchange[k].display(&self.table)
            )?;
        }
        Ok(())
    }
}
