//! GCD over `Z[t^{±1}, q^{±1}]`.
//!
//! Monomial factors are units, so both inputs are first shifted into
//! `Z[t, q]` with no factor of `t` or `q`. The GCD is found by the heuristic
//! evaluation method (substitute a large integer for `q`, then for `t`, take
//! an integer GCD and lift it back by balanced radix expansion), and every
//! candidate is accepted only after exact division of both inputs. When the
//! heuristic gives up, a primitive pseudo-remainder sequence over `Z[q][t]`
//! computes the answer; contents in `Z[q]` are handled by the same method one
//! level down with integer contents.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Exponent, LaurentPoly};

/// Dense univariate polynomial over `Z`, index = degree, no trailing zeros.
type UPoly = Vec<BigInt>;
/// Polynomial in `t` with coefficients in `Z[q]`, index = degree in `t`.
type BPoly = Vec<UPoly>;

pub(super) fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return b.normalize();
    }
    if b.is_zero() {
        return a.normalize();
    }
    let (a, b) = (a.normalize(), b.normalize());
    if a.is_one() || b.is_one() {
        return LaurentPoly::one();
    }
    if a == b {
        return a;
    }
    match heuristic_gcd(&a, &b) {
        Some(g) => g.normalize(),
        None => prs_gcd(&a, &b),
    }
}

/// GCD of two normalized nonzero polynomials by pseudo-remainder sequences only.
pub(super) fn prs_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let g = bpoly_gcd(to_bpoly(&a.normalize()), to_bpoly(&b.normalize()));
    from_bpoly(&g).normalize()
}

const HEURISTIC_ATTEMPTS: usize = 6;

fn next_point(xi: &BigInt) -> BigInt {
    xi * 73794 / 27011
}

fn initial_point(norm_a: &BigInt, norm_b: &BigInt) -> BigInt {
    norm_a.min(norm_b) * 2 + 29
}

fn int_content(p: &LaurentPoly) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in p.terms() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn max_norm(p: &LaurentPoly) -> BigInt {
    p.terms().map(|(_, c)| c.abs()).max().unwrap_or_default()
}

fn u_max_norm(p: &UPoly) -> BigInt {
    p.iter().map(|c| c.abs()).max().unwrap_or_default()
}

/// Balanced base-`xi` digits of `h`, lowest first.
fn balanced_digits(h: &BigInt, xi: &BigInt) -> Vec<BigInt> {
    let half = xi / 2;
    let mut h = h.clone();
    let mut out = Vec::new();
    while !h.is_zero() {
        let mut d = h.mod_floor(xi);
        if d > half {
            d -= xi;
        }
        h = (&h - &d) / xi;
        out.push(d);
    }
    out
}

fn u_eval(p: &UPoly, x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// `a / b` in `Z[x]` when exact.
fn u_checked_div(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    if b.is_empty() || a.len() < b.len() {
        return if a.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut rem = a.clone();
    let db = b.len() - 1;
    let lc = b.last().unwrap();
    let mut quo = vec![BigInt::zero(); a.len() - db];
    for k in (0..quo.len()).rev() {
        let (c, r) = rem[k + db].div_rem(lc);
        if !r.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                rem[k + j] -= &c * y;
            }
        }
        quo[k] = c;
    }
    if rem.iter().any(|x| !x.is_zero()) {
        return None;
    }
    trim(&mut quo);
    Some(quo)
}

fn u_heuristic_gcd(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    let content = u_content(a).gcd(&u_content(b));
    if a.len() == 1 || b.len() == 1 {
        return Some(vec![content]);
    }
    let (pa, pb) = (u_primitive(a), u_primitive(b));
    let mut xi = initial_point(&u_max_norm(&pa), &u_max_norm(&pb));
    for _ in 0..HEURISTIC_ATTEMPTS {
        let h = u_eval(&pa, &xi).gcd(&u_eval(&pb, &xi));
        let g = u_primitive(&balanced_digits(&h, &xi));
        if !g.is_empty() && u_checked_div(&pa, &g).is_some() && u_checked_div(&pb, &g).is_some() {
            return Some(g.iter().map(|c| c * &content).collect());
        }
        xi = next_point(&xi);
    }
    None
}

/// Substitutes `q = xi`, leaving a polynomial in `t` (exponents are nonnegative).
fn eval_q(p: &LaurentPoly, xi: &BigInt) -> UPoly {
    let (_, t_hi) = p.t_range().unwrap();
    let (_, q_hi) = p.q_range().unwrap();
    let mut powers = Vec::with_capacity(q_hi as usize + 1);
    let mut x = BigInt::one();
    for _ in 0..=q_hi {
        powers.push(x.clone());
        x *= xi;
    }
    let mut out = vec![BigInt::zero(); t_hi as usize + 1];
    for (e, c) in p.terms() {
        out[e.t as usize] += c * &powers[e.q as usize];
    }
    trim(&mut out);
    out
}

fn heuristic_gcd(a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
    let (ca, cb) = (int_content(a), int_content(b));
    let content = ca.gcd(&cb);
    let pa = a.exact_div(&LaurentPoly::monomial(ca, 0, 0)).ok()?;
    let pb = b.exact_div(&LaurentPoly::monomial(cb, 0, 0)).ok()?;
    let mut xi = initial_point(&max_norm(&pa), &max_norm(&pb));
    for _ in 0..HEURISTIC_ATTEMPTS {
        if let Some(h) = u_heuristic_gcd(&eval_q(&pa, &xi), &eval_q(&pb, &xi)) {
            let mut terms = Vec::new();
            for (et, c) in h.iter().enumerate() {
                for (eq, d) in balanced_digits(c, &xi).into_iter().enumerate() {
                    terms.push((Exponent::new(et as i32, eq as i32), d));
                }
            }
            let g = LaurentPoly::from_terms(terms);
            if !g.is_zero() {
                let g = g.exact_div(&LaurentPoly::monomial(int_content(&g), 0, 0)).ok()?;
                if pa.divisible_by(&g) && pb.divisible_by(&g) {
                    return Some(g.scale(&content));
                }
            }
        }
        xi = next_point(&xi);
    }
    None
}

/// Normalized GCD of a sequence, stopping early once it reaches a unit.
pub fn gcd_all<'a, I: IntoIterator<Item = &'a LaurentPoly>>(items: I) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for p in items {
        acc = gcd(&acc, p);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn to_bpoly(p: &LaurentPoly) -> BPoly {
    // p is normalized: exponents are nonnegative
    let (_, t_hi) = p.t_range().unwrap();
    let mut out: BPoly = vec![Vec::new(); t_hi as usize + 1];
    for (e, c) in p.terms() {
        let row = &mut out[e.t as usize];
        if row.len() <= e.q as usize {
            row.resize(e.q as usize + 1, BigInt::zero());
        }
        row[e.q as usize] = c.clone();
    }
    out
}

fn from_bpoly(p: &BPoly) -> LaurentPoly {
    let mut terms = Vec::new();
    for (et, row) in p.iter().enumerate() {
        for (eq, c) in row.iter().enumerate() {
            if !c.is_zero() {
                terms.push((Exponent::new(et as i32, eq as i32), c.clone()));
            }
        }
    }
    LaurentPoly::from_terms(terms)
}

fn trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn u_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn u_sub(a: &UPoly, b: &UPoly) -> UPoly {
    let mut out = a.clone();
    if out.len() < b.len() {
        out.resize(b.len(), BigInt::zero());
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn u_content(a: &UPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn u_div_scalar(a: &UPoly, c: &BigInt) -> UPoly {
    a.iter().map(|x| x / c).collect()
}

fn u_primitive(a: &UPoly) -> UPoly {
    let c = u_content(a);
    let mut p = if c.is_one() || c.is_zero() { a.clone() } else { u_div_scalar(a, &c) };
    if p.last().is_some_and(|x| x.is_negative()) {
        p.iter_mut().for_each(|x| *x = -std::mem::take(x));
    }
    p
}

/// Exact division in `Z[q]`; the caller guarantees divisibility.
fn u_exact_div(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut rem = a.clone();
    let db = b.len() - 1;
    let lc = b.last().unwrap();
    let mut quo = vec![BigInt::zero(); a.len() - db];
    for k in (0..quo.len()).rev() {
        let c = &rem[k + db] / lc;
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                rem[k + j] -= &c * y;
            }
        }
        quo[k] = c;
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    trim(&mut quo);
    quo
}

/// Pseudo-remainder of `a` by `b` in `Z[q]`.
fn u_prem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lc = b.last().unwrap();
    while !r.is_empty() && r.len() > db {
        let shift = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        for x in r.iter_mut() {
            *x *= lc;
        }
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &lr * y;
        }
        trim(&mut r);
    }
    r
}

fn u_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() {
        return u_primitive_signed(b);
    }
    if b.is_empty() {
        return u_primitive_signed(a);
    }
    let content = u_content(a).gcd(&u_content(b));
    let (mut x, mut y) = (u_primitive(a), u_primitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            x = vec![BigInt::one()];
            break;
        }
        let r = u_prem(&x, &y);
        x = y;
        y = u_primitive(&r);
    }
    x.iter().map(|c| c * &content).collect()
}

fn u_primitive_signed(a: &UPoly) -> UPoly {
    let mut p = a.clone();
    if p.last().is_some_and(|x| x.is_negative()) {
        p.iter_mut().for_each(|x| *x = -std::mem::take(x));
    }
    p
}

fn b_trim(p: &mut BPoly) {
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
}

fn b_content(a: &BPoly) -> UPoly {
    let mut g: UPoly = Vec::new();
    for c in a {
        g = u_gcd(&g, c);
        if g.len() == 1 && g[0].is_one() {
            break;
        }
    }
    g
}

fn b_primitive(a: &BPoly) -> BPoly {
    let c = b_content(a);
    if c.len() == 1 && c[0].is_one() {
        return a.clone();
    }
    a.iter().map(|x| u_exact_div(x, &c)).collect()
}

fn b_prem(a: &BPoly, b: &BPoly) -> BPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lc = b.last().unwrap();
    while !r.is_empty() && r.len() > db {
        let shift = r.len() - 1 - db;
        let lr = r.last().unwrap().clone();
        for x in r.iter_mut() {
            *x = u_mul(x, lc);
        }
        for (j, y) in b.iter().enumerate() {
            let prod = u_mul(&lr, y);
            r[shift + j] = u_sub(&r[shift + j], &prod);
        }
        b_trim(&mut r);
    }
    r
}

fn bpoly_gcd(a: BPoly, b: BPoly) -> BPoly {
    let content = u_gcd(&b_content(&a), &b_content(&b));
    let (mut x, mut y) = (b_primitive(&a), b_primitive(&b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        if y.len() == 1 {
            // nonzero primitive element of degree zero in t: the gcd lies in Z[q] and is 1
            x = vec![vec![BigInt::one()]];
            break;
        }
        let r = b_prem(&x, &y);
        x = y;
        y = b_primitive(&r);
    }
    x.iter().map(|c| u_mul(c, &content)).collect()
}
