use num_integer::Integer;
use num_traits::Zero;

use super::{poly_divide, LaurentPoly, Mono};

/// Greatest common divisor in the Laurent ring, normalized: no monomial
/// factor and a positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(f: &LaurentPoly, g: &LaurentPoly) -> LaurentPoly {
    assert_eq!(f.nvars(), g.nvars(), "variable count mismatch");
    match (f.is_zero(), g.is_zero()) {
        (true, true) => LaurentPoly::zero(f.nvars()),
        (true, false) => g.strip_monomial().unwrap().core,
        (false, true) => f.strip_monomial().unwrap().core,
        (false, false) => {
            let a = f.strip_monomial().unwrap().core;
            let b = g.strip_monomial().unwrap().core;
            poly_gcd(&a, &b)
        }
    }
}

/// Gcd of polynomials with nonnegative exponents, sign-normalized.
pub(crate) fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return b.sign_normalized();
    }
    if b.is_zero() {
        return a.sign_normalized();
    }
    let n = a.nvars();
    let Some(v) = (0..n).find(|&v| a.involves(v) || b.involves(v)) else {
        return LaurentPoly::constant(n, a.content().gcd(&b.content()));
    };
    if !a.involves(v) {
        return poly_gcd(a, &content_in(b, v));
    }
    if !b.involves(v) {
        return poly_gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = poly_gcd(&ca, &cb);
    let pa = poly_divide(a, &ca).expect("content divides");
    let pb = poly_divide(b, &cb).expect("content divides");
    let g = primitive_part(&subresultant_last(&pa, &pb, v), v);
    c.mul(&g).sign_normalized()
}

/// Gcd of the coefficients of `a` viewed as a polynomial in `v`.
pub(crate) fn content_in(a: &LaurentPoly, v: usize) -> LaurentPoly {
    let mut acc = LaurentPoly::zero(a.nvars());
    for c in a.to_univariate(v) {
        if c.is_zero() {
            continue;
        }
        acc = poly_gcd(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

pub(crate) fn primitive_part(a: &LaurentPoly, v: usize) -> LaurentPoly {
    if a.is_zero() {
        return a.clone();
    }
    let c = content_in(a, v);
    poly_divide(a, &c).expect("content divides").sign_normalized()
}

fn leading_in(a: &LaurentPoly, v: usize) -> LaurentPoly {
    a.to_univariate(v).pop().unwrap()
}

fn x_pow(n: usize, v: usize, d: i32) -> Vec<i32> {
    let mut e = vec![0; n];
    e[v] = d;
    e
}

/// Pseudo-remainder of `a` by `b` in `v`.
pub(crate) fn prem(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let n = a.nvars();
    let db = b.degree_in(v);
    let lcb = leading_in(b, v);
    let da = a.degree_in(v);
    let mut r = a.clone();
    let mut e = (da - db + 1).max(0);
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lcr = leading_in(&r, v);
        r = lcb.mul(&r).sub(&lcr.mul(b).shift(&x_pow(n, v, dr - db)));
        e -= 1;
    }
    r.mul(&lcb.pow(e.max(0) as u32))
}

/// Last nonzero element of the subresultant remainder sequence of two
/// primitive polynomials; its primitive part is their gcd.
fn subresultant_last(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> LaurentPoly {
    let n = a.nvars();
    let (mut a, mut b) = if a.degree_in(v) >= b.degree_in(v) {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    let mut g = LaurentPoly::one(n);
    let mut h = LaurentPoly::one(n);
    loop {
        let d = (a.degree_in(v) - b.degree_in(v)) as u32;
        let r = prem(&a, &b, v);
        if r.is_zero() {
            return b;
        }
        if r.degree_in(v) == 0 {
            return LaurentPoly::one(n);
        }
        let divisor = g.mul(&h.pow(d));
        a = b;
        b = poly_divide(&r, &divisor).expect("subresultant division is exact");
        g = leading_in(&a, v);
        if d > 0 {
            h = poly_divide(&g.pow(d), &h.pow(d - 1)).expect("subresultant division is exact");
        }
    }
}

/// Integer square root of a nonnegative integer, if exact.
pub(crate) fn int_sqrt(c: &num_bigint::BigInt) -> Option<num_bigint::BigInt> {
    use num_traits::Signed;
    if c.is_negative() {
        return None;
    }
    let s = c.sqrt();
    (&s * &s == *c).then_some(s)
}

/// Square root of a polynomial with nonnegative exponents, if it is a
/// perfect square. The root is returned with positive leading coefficient.
pub(crate) fn poly_sqrt(p: &LaurentPoly) -> Option<LaurentPoly> {
    let n = p.nvars();
    if p.is_zero() {
        return Some(p.clone());
    }
    let (lm, lc) = p.leading()?;
    if lm.iter().any(|e| e % 2 != 0) {
        return None;
    }
    let lead_mono: Vec<i32> = lm.iter().map(|e| e / 2).collect();
    let lead = LaurentPoly::term(n, lead_mono.clone(), int_sqrt(lc)?);
    let two_lc = lead.leading_coeff() * 2;
    let mut s = lead.clone();
    let mut r = p.sub(&s.mul(&s));
    while let Some((rm, rc)) = r.leading().map(|(m, c)| (m.to_vec(), c.clone())) {
        let e: Vec<i32> = rm.iter().zip(&lead_mono).map(|(a, b)| a - b).collect();
        if e.iter().any(|&x| x < 0) || Mono(e.clone()) >= Mono(lead_mono.clone()) {
            return None;
        }
        let (q, rem) = rc.div_rem(&two_lc);
        if !rem.is_zero() {
            return None;
        }
        s = s.add(&LaurentPoly::term(n, e, q));
        r = p.sub(&s.mul(&s));
    }
    Some(s.sign_normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{parse, VariableTable};

    fn t() -> VariableTable {
        VariableTable::cluster(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn gcd_examples() {
        let t = t();
        let p = |s: &str| parse(s, &t).unwrap();
        assert_eq!(gcd(&p("1 + 2*a + a^2"), &p("1 + a")), p("1 + a"));
        assert_eq!(gcd(&p("a^2 - b^2"), &p("a^2 + 2*a*b + b^2")), p("a + b"));
        assert_eq!(gcd(&p("a^(-1)*(1+b)"), &p("a^3*(1+b)*(1+c)")), p("1 + b"));
        assert_eq!(gcd(&p("6*a"), &p("4")), p("2"));
        assert_eq!(gcd(&p("1 + a"), &p("1 + b")), p("1"));
        assert!(gcd(&p("0"), &p("0")).is_zero());
    }

    #[test]
    fn gcd_multivariate_common_factor() {
        let t = t();
        let p = |s: &str| parse(s, &t).unwrap();
        let common = p("1 + a*b + c^2");
        let f = common.mul(&p("a - c"));
        let g = common.mul(&p("b^2 + a + 3"));
        assert_eq!(gcd(&f, &g), common);
    }

    #[test]
    fn sqrt_examples() {
        let t = t();
        let p = |s: &str| parse(s, &t).unwrap();
        assert_eq!(poly_sqrt(&p("4*a^2*(1+b)^2")), Some(p("2*a + 2*a*b")));
        assert_eq!(poly_sqrt(&p("a^2 + b^2")), None);
        assert_eq!(poly_sqrt(&p("(1 - a + c)^2")), Some(p("1 - a + c").sign_normalized()));
        assert_eq!(poly_sqrt(&p("-4*a")), None);
    }
}
