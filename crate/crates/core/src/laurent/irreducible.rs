use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::gcd::{content_in, poly_sqrt, primitive_part};
use super::{LaurentError, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// A nontrivial factor.
    Reducible(LaurentPoly),
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(LaurentPoly),
    /// Every candidate in the search space was tried. The coefficient bound
    /// is heuristic, so this is not a proof of irreducibility.
    Exhausted,
    BudgetExceeded,
}

/// Default number of trial divisions for [`search_factor`].
pub const DEFAULT_BUDGET: u64 = 200_000;

fn check_input(f: &LaurentPoly) -> Result<(), LaurentError> {
    if f.is_zero() {
        return Err(LaurentError::Zero);
    }
    if !f.is_polynomial() {
        return Err(LaurentError::NotPolynomial);
    }
    if f.is_monomial() {
        return Err(LaurentError::Monomial);
    }
    Ok(())
}

/// Decide irreducibility in the polynomial ring over the integers.
///
/// Resolved exactly by content, monomial factors, the binomial criterion,
/// primitivity in a variable of degree one, and the discriminant of a
/// variable of degree two. Anything else goes to a bounded factor search,
/// which can only produce a factor or `Unknown`.
pub fn is_irreducible(f: &LaurentPoly) -> Result<Irreducibility, LaurentError> {
    check_input(f)?;
    let n = f.nvars();
    let c = f.content();
    if !c.is_one() {
        return Ok(Irreducibility::Reducible(LaurentPoly::constant(n, c)));
    }
    if let Some(v) = f.min_exponents().iter().position(|&e| e > 0) {
        return Ok(Irreducibility::Reducible(LaurentPoly::var(n, v)));
    }
    if f.len() == 2 {
        let mut terms = f.terms();
        let (m1, _) = terms.next().unwrap();
        let (m2, _) = terms.next().unwrap();
        let g = m1
            .iter()
            .zip(m2)
            .fold(0i64, |g, (a, b)| g.gcd(&((a - b) as i64)));
        if g == 1 {
            return Ok(Irreducibility::Irreducible);
        }
    }
    let involved = f.involved();
    for &v in &involved {
        let cv = content_in(f, v);
        if !cv.is_one() {
            return Ok(Irreducibility::Reducible(cv));
        }
    }
    if involved.iter().any(|&v| f.degree_in(v) == 1) {
        return Ok(Irreducibility::Irreducible);
    }
    if let Some(&v) = involved.iter().find(|&&v| f.degree_in(v) == 2) {
        let u = f.to_univariate(v);
        let (c0, b, a) = (&u[0], &u[1], &u[2]);
        let disc = b.mul(b).sub(&a.mul(c0).scale(&BigInt::from(4)));
        return Ok(match poly_sqrt(&disc) {
            None => Irreducibility::Irreducible,
            Some(s) => {
                let mut e = vec![0; n];
                e[v] = 1;
                let lin = a.scale(&BigInt::from(2)).shift(&e).add(b).sub(&s);
                Irreducibility::Reducible(primitive_part(&lin, v))
            }
        });
    }
    Ok(match search_factor(f, DEFAULT_BUDGET)? {
        SearchOutcome::Found(g) => Irreducibility::Reducible(g),
        _ => Irreducibility::Unknown,
    })
}

/// Brute-force search for a nontrivial factor.
///
/// Candidates have total degree at most half of `f`, degree in each
/// variable at most that of `f`, and coefficients bounded by the largest
/// coefficient of `f`. Each trial division costs one unit of `budget`.
pub fn search_factor(f: &LaurentPoly, budget: u64) -> Result<SearchOutcome, LaurentError> {
    check_input(f)?;
    let n = f.nvars();
    let c = f.content();
    if !c.is_one() {
        return Ok(SearchOutcome::Found(LaurentPoly::constant(n, c)));
    }
    if let Some(v) = f.min_exponents().iter().position(|&e| e > 0) {
        return Ok(SearchOutcome::Found(LaurentPoly::var(n, v)));
    }
    let half = f.total_degree() / 2;
    let maxdeg: Vec<i32> = (0..n).map(|v| f.degree_in(v)).collect();
    let mut monos: Vec<Vec<i32>> = Vec::new();
    let mut cur = vec![0i32; n];
    loop {
        let d: i64 = cur.iter().map(|&e| e as i64).sum();
        if d <= half {
            monos.push(cur.clone());
        }
        let mut k = 0;
        while k < n {
            cur[k] += 1;
            if cur[k] <= maxdeg[k] {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    monos.sort_by_key(|a| super::Mono(a.clone()));
    let bound: i64 = f
        .terms()
        .map(|(_, c)| c.abs())
        .max()
        .and_then(|c| i64::try_from(c).ok())
        .unwrap_or(i64::MAX)
        .min(1 << 20);
    let coeffs: Vec<i64> = (1..=bound).flat_map(|c| [c, -c]).collect();
    let mut spent = 0u64;
    // A factor has no monomial factor, so it contains the constant term.
    for size in 2..=monos.len() {
        let mut idx: Vec<usize> = (0..size).collect();
        if idx[size - 1] >= monos.len() {
            break;
        }
        loop {
            if idx[0] == 0 {
                let mut ci = vec![0usize; size];
                loop {
                    // Leading coefficient positive.
                    if coeffs[ci[size - 1]] > 0 {
                        let cand = LaurentPoly::from_terms(
                            n,
                            idx.iter()
                                .zip(&ci)
                                .map(|(&m, &k)| (monos[m].clone(), BigInt::from(coeffs[k]))),
                        );
                        if !cand.is_unit() {
                            spent += 1;
                            if spent > budget {
                                return Ok(SearchOutcome::BudgetExceeded);
                            }
                            if let Some(q) = f.divide_exact(&cand)? {
                                if !q.is_unit() {
                                    return Ok(SearchOutcome::Found(cand));
                                }
                            }
                        }
                    }
                    let mut k = 0;
                    while k < size {
                        ci[k] += 1;
                        if ci[k] < coeffs.len() {
                            break;
                        }
                        ci[k] = 0;
                        k += 1;
                    }
                    if k == size {
                        break;
                    }
                }
            } else {
                break;
            }
            if !next_combination(&mut idx, monos.len()) {
                break;
            }
        }
    }
    Ok(SearchOutcome::Exhausted)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
