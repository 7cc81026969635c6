//! Exact multivariate Laurent polynomials over the integers.
//!
//! A polynomial is a map from exponent vectors to nonzero `BigInt`
//! coefficients. The layout of an exponent vector is fixed by a
//! [`VariableTable`]; the polynomial itself only records the number of
//! variables, so values from different tables of the same length can be
//! compared slotwise.

mod gcd;
mod irreducible;
mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use gcd::gcd;
pub use irreducible::{is_irreducible, search_factor, Irreducibility, SearchOutcome, DEFAULT_BUDGET};
pub use parse::parse;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("negative power of a non-monomial")]
    NegativePower,
    #[error("substitution of zero into a negative power")]
    ZeroIntoNegativePower,
    #[error("negative exponent of a substituted variable requires a monomial image")]
    NonMonomialIntoNegativePower,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("divisor is a unit")]
    UnitDivisor,
    #[error("zero polynomial")]
    Zero,
    #[error("expected a polynomial without negative exponents")]
    NotPolynomial,
    #[error("monomial or constant input")]
    Monomial,
    #[error("variable count mismatch: {0} vs {1}")]
    Arity(usize, usize),
    #[error("invalid variable table: {0}")]
    Table(String),
}

/// Role of a variable in a seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Role {
    Cluster,
    BoundaryFrozen,
    LaminationFrozen,
}

impl Role {
    pub fn is_frozen(self) -> bool {
        self != Role::Cluster
    }
}

/// Ordered, named variables. The order fixes the exponent layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableTable {
    vars: Vec<(String, Role)>,
    index: HashMap<String, usize>,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl VariableTable {
    pub fn new<S: Into<String>>(
        vars: impl IntoIterator<Item = (S, Role)>,
    ) -> Result<Self, LaurentError> {
        let vars: Vec<(String, Role)> = vars.into_iter().map(|(s, r)| (s.into(), r)).collect();
        let mut index = HashMap::new();
        for (i, (name, _)) in vars.iter().enumerate() {
            if !valid_name(name) {
                return Err(LaurentError::Table(format!("bad name `{name}`")));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(LaurentError::Table(format!("duplicate name `{name}`")));
            }
        }
        Ok(VariableTable { vars, index })
    }

    /// All variables with the cluster role.
    pub fn cluster<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
    ) -> Result<Self, LaurentError> {
        Self::new(names.into_iter().map(|s| (s, Role::Cluster)))
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].0
    }

    pub fn role(&self, i: usize) -> Role {
        self.vars[i].1
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.vars.iter().map(|(s, _)| s.as_str())
    }

    pub fn entries(&self) -> &[(String, Role)] {
        &self.vars
    }

    /// Same layout with variable `i` renamed.
    pub fn renamed(&self, i: usize, name: &str) -> Result<Self, LaurentError> {
        let mut vars = self.vars.clone();
        vars[i].0 = name.to_string();
        Self::new(vars)
    }

    /// A name that does not occur in the table.
    pub fn fresh_name(&self, stem: &str) -> String {
        if self.index_of(stem).is_none() {
            return stem.to_string();
        }
        (0..)
            .map(|k| format!("{stem}_{k}"))
            .find(|s| self.index_of(s).is_none())
            .unwrap()
    }

    /// The table extended by one fresh variable; returns its index.
    pub fn with_fresh(&self, stem: &str, role: Role) -> (Self, usize) {
        let name = self.fresh_name(stem);
        let mut vars = self.vars.clone();
        vars.push((name, role));
        let n = vars.len() - 1;
        (Self::new(vars).expect("fresh name is unique"), n)
    }
}

/// Exponent vector ordered by total degree, then lexicographically with
/// the first variable largest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<i32>);

impl Mono {
    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Derived `Ord` compares term lists; it is only used for canonical sorting.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Mono, BigInt>,
}

/// Result of [`LaurentPoly::strip_monomial`]: `F = sign * monomial * core`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stripped {
    pub monomial: LaurentPoly,
    pub core: LaurentPoly,
    pub sign: i8,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::term(nvars, vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(nvars, e, 1)
    }

    pub fn term(nvars: usize, exps: Vec<i32>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), nvars);
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono(exps), c);
        }
        LaurentPoly { nvars, terms }
    }

    /// Coefficient-one monomial with the given exponents.
    pub fn monomial(exps: Vec<i32>) -> Self {
        let n = exps.len();
        Self::term(n, exps, 1)
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<i32>, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(Mono(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[i32], &BigInt)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[i32]) -> BigInt {
        self.terms
            .get(&Mono(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
    }

    /// Leading term under graded lex order.
    pub fn leading(&self) -> Option<(&[i32], &BigInt)> {
        self.terms.iter().next_back().map(|(m, c)| (m.0.as_slice(), c))
    }

    /// Smallest term under graded lex order.
    pub fn trailing(&self) -> Option<(&[i32], &BigInt)> {
        self.terms.iter().next().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigInt::zero)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Units of the Laurent ring over the integers: `±1` times a monomial.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().abs().is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.terms.len() == 1 && self.terms.values().next().unwrap().is_one()
    }

    /// No negative exponents.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e >= 0))
    }

    pub fn involves(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.0[v] != 0)
    }

    pub fn involved(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.involves(v)).collect()
    }

    pub fn degree_in(&self, v: usize) -> i32 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, v: usize) -> i32 {
        self.terms.keys().map(|m| m.0[v]).min().unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn min_exponents(&self) -> Vec<i32> {
        (0..self.nvars).map(|v| self.min_degree_in(v)).collect()
    }

    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_arity(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_arity(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_arity(other);
        let mut out = Self::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e: Vec<i32> = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(Mono(e), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Multiply by a monomial given by its exponent vector.
    pub fn shift(&self, exps: &[i32]) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (Mono(m.0.iter().zip(exps).map(|(a, b)| a + b).collect()), c.clone())
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Integer power; negative exponents are allowed for monomials only.
    pub fn powi(&self, k: i64) -> Result<Self, LaurentError> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        if !self.is_unit() {
            return Err(LaurentError::NegativePower);
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let c = if (-k) % 2 == 1 { c.clone() } else { BigInt::one() };
        Ok(Self::term(self.nvars, e.0.iter().map(|&x| (x as i64 * k) as i32).collect(), c))
    }

    /// Replace variable `k` by `g`.
    pub fn substitute(&self, k: usize, g: &LaurentPoly) -> Result<Self, LaurentError> {
        self.check_arity(g);
        if !self.involves(k) {
            return Ok(self.clone());
        }
        let mut by_power: BTreeMap<i32, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let p = e[k];
            e[k] = 0;
            by_power
                .entry(p)
                .or_insert_with(|| Self::zero(self.nvars))
                .add_term(Mono(e), c.clone());
        }
        let mut out = Self::zero(self.nvars);
        for (p, coeff) in by_power {
            let gp = if p >= 0 {
                g.pow(p as u32)
            } else if g.is_zero() {
                return Err(LaurentError::ZeroIntoNegativePower);
            } else if !g.is_monomial() {
                return Err(LaurentError::NonMonomialIntoNegativePower);
            } else if g.is_unit() {
                g.powi(p as i64)?
            } else {
                // c*m with |c| > 1 is not invertible over the integers.
                return Err(LaurentError::NonMonomialIntoNegativePower);
            };
            out = out.add(&coeff.mul(&gp));
        }
        Ok(out)
    }

    /// Set variable `k` to zero; fails if `k` occurs with a negative exponent.
    pub fn at_zero(&self, k: usize) -> Result<Self, LaurentError> {
        if self.terms.keys().any(|m| m.0[k] < 0) {
            return Err(LaurentError::ZeroIntoNegativePower);
        }
        Ok(LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[k] == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    /// Set every variable in `vars` to one.
    pub fn at_one(&self, vars: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            for &v in vars {
                e[v] = 0;
            }
            out.add_term(Mono(e), c.clone());
        }
        out
    }

    /// Simultaneous substitution of every variable. `images[v]` lives in a
    /// ring with `nvars_out` variables.
    pub fn compose(&self, images: &[LaurentPoly], nvars_out: usize) -> Result<Self, LaurentError> {
        if images.len() != self.nvars {
            return Err(LaurentError::Arity(images.len(), self.nvars));
        }
        let mut cache: HashMap<(usize, i32), LaurentPoly> = HashMap::new();
        let mut out = Self::zero(nvars_out);
        for (m, c) in &self.terms {
            let mut t = Self::constant(nvars_out, c.clone());
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if images[v].nvars != nvars_out {
                    return Err(LaurentError::Arity(images[v].nvars, nvars_out));
                }
                let p = match cache.get(&(v, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = if e > 0 {
                            images[v].pow(e as u32)
                        } else if images[v].is_zero() {
                            return Err(LaurentError::ZeroIntoNegativePower);
                        } else if images[v].is_unit() {
                            images[v].powi(e as i64)?
                        } else {
                            return Err(LaurentError::NonMonomialIntoNegativePower);
                        };
                        cache.insert((v, e), p.clone());
                        p
                    }
                };
                t = t.mul(&p);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Reinterpret in a ring with more variables (appended at the end).
    pub fn embed(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        LaurentPoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(nvars, 0);
                    (Mono(e), c.clone())
                })
                .collect(),
        }
    }

    /// Drop trailing variables, which must not occur.
    pub fn truncate(&self, nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    debug_assert!(m.0[nvars..].iter().all(|&e| e == 0));
                    (Mono(m.0[..nvars].to_vec()), c.clone())
                })
                .collect(),
        }
    }

    /// Rename variables: old variable `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.nvars);
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0; self.nvars];
                    for (v, &x) in m.0.iter().enumerate() {
                        e[perm[v]] = x;
                    }
                    (Mono(e), c.clone())
                })
                .collect(),
        }
    }

    /// Representative with positive leading coefficient.
    pub fn sign_normalized(&self) -> Self {
        if self.leading_coeff().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// `F = sign * monomial * core` where the core has minimum exponent zero
    /// in every variable and a positive leading coefficient.
    pub fn strip_monomial(&self) -> Result<Stripped, LaurentError> {
        let mask = vec![true; self.nvars];
        self.strip_monomial_on(&mask)
    }

    /// As [`strip_monomial`](Self::strip_monomial) but only in the variables
    /// selected by `mask`.
    pub fn strip_monomial_on(&self, mask: &[bool]) -> Result<Stripped, LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::Zero);
        }
        let mins: Vec<i32> = self
            .min_exponents()
            .into_iter()
            .zip(mask)
            .map(|(e, &on)| if on { e } else { 0 })
            .collect();
        let neg: Vec<i32> = mins.iter().map(|e| -e).collect();
        let core = self.shift(&neg);
        let sign = if core.leading_coeff().is_negative() { -1 } else { 1 };
        Ok(Stripped {
            monomial: Self::monomial(mins),
            core: if sign < 0 { core.neg() } else { core },
            sign,
        })
    }

    /// Exact quotient `F / G` in the Laurent ring, `None` if `G` does not
    /// divide `F`.
    pub fn divide_exact(&self, g: &LaurentPoly) -> Result<Option<Self>, LaurentError> {
        self.check_arity(g);
        if g.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Some(Self::zero(self.nvars)));
        }
        let fm = self.min_exponents();
        let gm = g.min_exponents();
        let f = self.shift(&fm.iter().map(|e| -e).collect::<Vec<_>>());
        let gg = g.shift(&gm.iter().map(|e| -e).collect::<Vec<_>>());
        Ok(poly_divide(&f, &gg).map(|q| {
            let d: Vec<i32> = fm.iter().zip(&gm).map(|(a, b)| a - b).collect();
            q.shift(&d)
        }))
    }

    /// Largest `a` such that `G^a` divides `F`.
    pub fn max_power_dividing(&self, g: &LaurentPoly) -> Result<u32, LaurentError> {
        if g.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if g.is_unit() {
            return Err(LaurentError::UnitDivisor);
        }
        if self.is_zero() {
            return Err(LaurentError::Zero);
        }
        let mut f = self.clone();
        let mut a = 0;
        while let Some(q) = f.divide_exact(g)? {
            f = q;
            a += 1;
        }
        Ok(a)
    }

    /// Coefficients as a polynomial in variable `v`: entry `d` holds the
    /// coefficient of `x_v^d`. Requires nonnegative exponents in `v`.
    pub fn to_univariate(&self, v: usize) -> Vec<LaurentPoly> {
        let deg = self.degree_in(v).max(0) as usize;
        let mut out = vec![Self::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            debug_assert!(m.0[v] >= 0);
            let mut e = m.0.clone();
            let d = e[v] as usize;
            e[v] = 0;
            out[d].add_term(Mono(e), c.clone());
        }
        while out.len() > 1 && out.last().unwrap().is_zero() {
            out.pop();
        }
        out
    }

    pub fn from_univariate(coeffs: &[LaurentPoly], v: usize, nvars: usize) -> Self {
        let mut out = Self::zero(nvars);
        for (d, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; nvars];
            e[v] = d as i32;
            out = out.add(&c.shift(&e));
        }
        out
    }

    /// Canonical text using the names of `table`.
    pub fn display<'a>(&'a self, table: &'a VariableTable) -> Display<'a> {
        Display { poly: self, table }
    }

    /// Text with generic names `x0, x1, ...`.
    pub fn to_generic_string(&self) -> String {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        format_poly(self, &names)
    }
}

/// Exact division of polynomials with nonnegative exponents.
fn poly_divide(f: &LaurentPoly, g: &LaurentPoly) -> Option<LaurentPoly> {
    for v in 0..f.nvars {
        if g.degree_in(v) > f.degree_in(v) {
            return None;
        }
    }
    if g.total_degree() > f.total_degree() {
        return None;
    }
    let (glm, glc) = g.leading().map(|(m, c)| (m.to_vec(), c.clone()))?;
    let mut r = f.clone();
    let mut q = LaurentPoly::zero(f.nvars);
    while let Some((rlm, rlc)) = r.leading().map(|(m, c)| (m.to_vec(), c.clone())) {
        let e: Vec<i32> = rlm.iter().zip(&glm).map(|(a, b)| a - b).collect();
        if e.iter().any(|&x| x < 0) {
            return None;
        }
        let (c, rem) = rlc.div_rem(&glc);
        if !rem.is_zero() {
            return None;
        }
        let t = LaurentPoly::term(f.nvars, e, c);
        r = r.sub(&t.mul(g));
        q = q.add(&t);
    }
    Some(q)
}

pub struct Display<'a> {
    poly: &'a LaurentPoly,
    table: &'a VariableTable,
}

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.table.names().map(str::to_string).collect();
        f.write_str(&format_poly(self.poly, &names))
    }
}

fn format_poly(p: &LaurentPoly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms.iter().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        let is_const = m.0.iter().all(|&e| e == 0);
        if !a.is_one() || is_const {
            factors.push(a.to_string());
        }
        for (v, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(names[v].clone()),
                e if e > 0 => factors.push(format!("{}^{}", names[v], e)),
                e => factors.push(format!("{}^({})", names[v], e)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_generic_string())
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::mul(self, rhs)
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(self)
    }
}
