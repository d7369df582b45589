//! Sparse Laurent polynomials in two variables `t` and `q` with
//! arbitrary-precision integer coefficients.
//!
//! Every value is kept in canonical form: terms are sorted by descending
//! lexicographic exponent `(e_t, e_q)` and no stored coefficient is zero.

mod gcd;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use gcd::gcd_all;

/// Exponent pair of a monomial `t^t * q^q`. Ordered lexicographically, `t` first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent {
    pub t: i32,
    pub q: i32,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent { t: 0, q: 0 };

    pub fn new(t: i32, q: i32) -> Self {
        Exponent { t, q }
    }
}

impl Add for Exponent {
    type Output = Exponent;
    fn add(self, rhs: Exponent) -> Exponent {
        Exponent::new(self.t + rhs.t, self.q + rhs.q)
    }
}

impl Sub for Exponent {
    type Output = Exponent;
    fn sub(self, rhs: Exponent) -> Exponent {
        Exponent::new(self.t - rhs.t, self.q - rhs.q)
    }
}

/// An element of `Z[t^{±1}, q^{±1}]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    // strictly descending by exponent, no zero coefficients
    terms: Vec<(Exponent, BigInt)>,
}

/// Dense scratch buffers above this many cells fall back to sparse maps.
const DENSE_LIMIT: usize = 1 << 22;

/// Bounding box of the exponents of a nonzero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct ExpBox {
    t_lo: i32,
    t_hi: i32,
    q_lo: i32,
    q_hi: i32,
}

impl ExpBox {
    fn q_span(&self) -> usize {
        (self.q_hi - self.q_lo + 1) as usize
    }

    fn area(&self) -> usize {
        (self.t_hi - self.t_lo + 1) as usize * self.q_span()
    }

    fn index(&self, e: Exponent) -> usize {
        (e.t - self.t_lo) as usize * self.q_span() + (e.q - self.q_lo) as usize
    }

    fn exponent(&self, idx: usize) -> Exponent {
        let span = self.q_span();
        Exponent::new(self.t_lo + (idx / span) as i32, self.q_lo + (idx % span) as i32)
    }

    fn contains(&self, e: Exponent) -> bool {
        (self.t_lo..=self.t_hi).contains(&e.t) && (self.q_lo..=self.q_hi).contains(&e.q)
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1, 0)
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `c * t^et * q^eq`.
    pub fn monomial(c: impl Into<BigInt>, et: i32, eq: i32) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: vec![(Exponent::new(et, eq), c)] }
    }

    /// Builds a polynomial from arbitrary terms, merging repeated exponents
    /// and dropping zero coefficients.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, C)>,
        C: Into<BigInt>,
    {
        let mut map: BTreeMap<Exponent, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e).or_default() += c.into();
        }
        Self::from_sorted_map(map)
    }

    fn from_sorted_map(map: BTreeMap<Exponent, BigInt>) -> Self {
        let terms = map.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Exponent::ZERO && self.terms[0].1.is_one()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending lexicographic exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Exponent, &BigInt)> + ExactSizeIterator {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, et: i32, eq: i32) -> BigInt {
        let key = Exponent::new(et, eq);
        self.terms
            .binary_search_by(|(e, _)| key.cmp(e))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(Exponent, &BigInt)> {
        self.terms.first().map(|(e, c)| (*e, c))
    }

    /// `(min e_t, max e_t)`, `None` for zero.
    pub fn t_range(&self) -> Option<(i32, i32)> {
        self.exp_box().map(|b| (b.t_lo, b.t_hi))
    }

    /// `(min e_q, max e_q)`, `None` for zero.
    pub fn q_range(&self) -> Option<(i32, i32)> {
        self.exp_box().map(|b| (b.q_lo, b.q_hi))
    }

    fn exp_box(&self) -> Option<ExpBox> {
        let first = self.terms.first()?.0;
        let last = self.terms.last()?.0;
        let (mut q_lo, mut q_hi) = (i32::MAX, i32::MIN);
        for (e, _) in &self.terms {
            q_lo = q_lo.min(e.q);
            q_hi = q_hi.max(e.q);
        }
        Some(ExpBox { t_lo: last.t, t_hi: first.t, q_lo, q_hi })
    }

    /// Multiplies by the monomial `t^dt * q^dq`.
    pub fn shift(&self, dt: i32, dq: i32) -> Self {
        let d = Exponent::new(dt, dq);
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e + d, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    /// Units of the ring are exactly the monomials `±t^a q^b`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.magnitude().is_one()
    }

    /// Inverse of a unit.
    pub fn unit_inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = &self.terms[0];
        Some(LaurentPoly { terms: vec![(Exponent::new(-e.t, -e.q), c.clone())] })
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if k < 0 {
            let inv = self.unit_inverse().ok_or(Error::NegativePowerOfNonUnit)?;
            return Ok(inv.pow_u(k.unsigned_abs()));
        }
        Ok(self.pow_u(k as u64))
    }

    fn pow_u(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Canonical associate: exponents shifted so the minimum of each is zero,
    /// and the lexicographically largest term made positive.
    pub fn normalize(&self) -> Self {
        let Some(b) = self.exp_box() else {
            return Self::zero();
        };
        let mut out = self.shift(-b.t_lo, -b.q_lo);
        if out.terms[0].1.is_negative() {
            out = -out;
        }
        out
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalize()
    }

    /// Greatest common divisor in `Z[t^{±1}, q^{±1}]`, normalized.
    pub fn gcd(&self, other: &Self) -> Self {
        gcd::gcd(self, other)
    }

    /// Exact quotient `self / divisor`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::NotDivisible);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if divisor.terms.len() == 1 {
            let (de, dc) = &divisor.terms[0];
            let mut terms = Vec::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                let (quo, rem) = c.div_rem(dc);
                if !rem.is_zero() {
                    return Err(Error::NotDivisible);
                }
                terms.push((*e - *de, quo));
            }
            return Ok(LaurentPoly { terms });
        }
        let a_box = self.exp_box().unwrap();
        let b_box = divisor.exp_box().unwrap();
        let quo_box = ExpBox {
            t_lo: a_box.t_lo - b_box.t_lo,
            t_hi: a_box.t_hi - b_box.t_hi,
            q_lo: a_box.q_lo - b_box.q_lo,
            q_hi: a_box.q_hi - b_box.q_hi,
        };
        if quo_box.t_lo > quo_box.t_hi || quo_box.q_lo > quo_box.q_hi {
            return Err(Error::NotDivisible);
        }
        if a_box.area() <= DENSE_LIMIT {
            exact_div_dense(self, divisor, a_box, quo_box)
        } else {
            exact_div_sparse(self, divisor, quo_box)
        }
    }

    /// True when `divisor` divides `self` exactly.
    pub fn divisible_by(&self, divisor: &Self) -> bool {
        self.exact_div(divisor).is_ok()
    }

    /// Largest absolute coefficient bit length.
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits()).max().unwrap_or(0)
    }

    /// Sum of the absolute values of the coefficients.
    pub fn l1_norm(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.abs()).sum()
    }

    /// Evaluates at integer `t`, `q` modulo `p`. Negative exponents use modular inverses,
    /// so `t` and `q` must be nonzero modulo `p` when they occur.
    pub fn eval_mod(&self, t: u64, q: u64, p: u64) -> u64 {
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let cm = c.mod_floor(&BigInt::from(p)).to_u64().unwrap();
            let v = mul_mod(cm, mul_mod(pow_mod_signed(t, e.t, p), pow_mod_signed(q, e.q, p), p), p);
            acc = (acc + v) % p;
        }
        acc
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn pow_mod_signed(base: u64, e: i32, p: u64) -> u64 {
    if e >= 0 {
        pow_mod(base, e as u64, p)
    } else {
        // p is prime
        pow_mod(pow_mod(base, p - 2, p), e.unsigned_abs() as u64, p)
    }
}

fn exact_div_dense(a: &LaurentPoly, b: &LaurentPoly, a_box: ExpBox, quo_box: ExpBox) -> Result<LaurentPoly> {
    let mut rem: Vec<BigInt> = vec![BigInt::zero(); a_box.area()];
    for (e, c) in &a.terms {
        rem[a_box.index(*e)] = c.clone();
    }
    let (b_lead, b_lc) = (&b.terms[0].0, &b.terms[0].1);
    // offsets of b's terms relative to its leading term, in dense index units
    let offsets: Vec<(isize, &BigInt)> = b
        .terms
        .iter()
        .map(|(e, c)| {
            let d = *e - *b_lead;
            (d.t as isize * a_box.q_span() as isize + d.q as isize, c)
        })
        .collect();
    let mut quotient = Vec::new();
    let mut cursor = rem.len();
    loop {
        while cursor > 0 && rem[cursor - 1].is_zero() {
            cursor -= 1;
        }
        if cursor == 0 {
            break;
        }
        let idx = cursor - 1;
        let e = a_box.exponent(idx) - *b_lead;
        if !quo_box.contains(e) {
            return Err(Error::NotDivisible);
        }
        let (c, r) = rem[idx].div_rem(b_lc);
        if !r.is_zero() {
            return Err(Error::NotDivisible);
        }
        for (off, bc) in &offsets[1..] {
            let j = (idx as isize + off) as usize;
            rem[j] -= &c * *bc;
        }
        rem[idx] = BigInt::zero();
        quotient.push((e, c));
    }
    Ok(LaurentPoly { terms: quotient })
}

fn exact_div_sparse(a: &LaurentPoly, b: &LaurentPoly, quo_box: ExpBox) -> Result<LaurentPoly> {
    let mut rem: BTreeMap<Exponent, BigInt> = a.terms.iter().cloned().collect();
    let (b_lead, b_lc) = (b.terms[0].0, &b.terms[0].1);
    let mut quotient = Vec::new();
    while let Some((lead, lc)) = rem.pop_last() {
        let e = lead - b_lead;
        if !quo_box.contains(e) {
            return Err(Error::NotDivisible);
        }
        let (c, r) = lc.div_rem(b_lc);
        if !r.is_zero() {
            return Err(Error::NotDivisible);
        }
        for (be, bc) in &b.terms[1..] {
            let key = *be + e;
            let slot = rem.entry(key).or_default();
            *slot -= &c * bc;
            if slot.is_zero() {
                rem.remove(&key);
            }
        }
        quotient.push((e, c));
    }
    Ok(LaurentPoly { terms: quotient })
}

fn add_terms(a: &[(Exponent, BigInt)], b: &[(Exponent, BigInt)], negate_b: bool) -> Vec<(Exponent, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let sign = |c: &BigInt| if negate_b { -c } else { c.clone() };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((b[j].0, sign(&b[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(e, c)| (*e, sign(c))));
    out
}

fn small_coeffs(terms: &[(Exponent, BigInt)]) -> Option<Vec<i64>> {
    terms.iter().map(|(_, c)| c.to_i64()).collect()
}

fn mul_terms(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() || b.is_zero() {
        return LaurentPoly::zero();
    }
    if b.terms.len() == 1 {
        let (e, c) = &b.terms[0];
        return LaurentPoly { terms: a.terms.iter().map(|(x, y)| (*x + *e, y * c)).collect() };
    }
    if a.terms.len() == 1 {
        return mul_terms(b, a);
    }
    let ab = a.exp_box().unwrap();
    let bb = b.exp_box().unwrap();
    let pbox = ExpBox {
        t_lo: ab.t_lo + bb.t_lo,
        t_hi: ab.t_hi + bb.t_hi,
        q_lo: ab.q_lo + bb.q_lo,
        q_hi: ab.q_hi + bb.q_hi,
    };
    let pairs = a.terms.len() * b.terms.len();
    let dense = pbox.area() <= DENSE_LIMIT && pbox.area() <= 8 * pairs + 4096;
    let min_len = a.terms.len().min(b.terms.len()) as u64;
    let fits_i128 = a.max_coeff_bits() + b.max_coeff_bits() + (64 - min_len.leading_zeros() as u64) < 126;
    let small = if fits_i128 { small_coeffs(&a.terms).zip(small_coeffs(&b.terms)) } else { None };

    match (dense, small) {
        (true, Some((ac, bc))) => {
            let mut acc = vec![0i128; pbox.area()];
            let b_idx: Vec<usize> = b.terms.iter().map(|(e, _)| pbox.index(*e + Exponent::new(ab.t_lo, ab.q_lo))).collect();
            for ((ea, _), ca) in a.terms.iter().zip(&ac) {
                let base = (ea.t - ab.t_lo) as usize * pbox.q_span() + (ea.q - ab.q_lo) as usize;
                for (bi, cb) in b_idx.iter().zip(&bc) {
                    acc[base + bi] += *ca as i128 * *cb as i128;
                }
            }
            let terms = acc
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| **c != 0)
                .map(|(i, c)| (pbox.exponent(i), BigInt::from(*c)))
                .collect();
            LaurentPoly { terms }
        }
        (true, None) => {
            let mut acc = vec![BigInt::zero(); pbox.area()];
            for (ea, ca) in &a.terms {
                for (eb, cb) in &b.terms {
                    acc[pbox.index(*ea + *eb)] += ca * cb;
                }
            }
            let terms = acc
                .into_iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (pbox.exponent(i), c))
                .collect();
            LaurentPoly { terms }
        }
        (false, _) => {
            let mut map: BTreeMap<Exponent, BigInt> = BTreeMap::new();
            for (ea, ca) in &a.terms {
                for (eb, cb) in &b.terms {
                    *map.entry(*ea + *eb).or_default() += ca * cb;
                }
            }
            LaurentPoly::from_sorted_map(map)
        }
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly { terms: add_terms(&self.terms, &rhs.terms, false) }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.terms = add_terms(&self.terms, &rhs.terms, false);
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly { terms: add_terms(&self.terms, &rhs.terms, true) }
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.terms = add_terms(&self.terms, &rhs.terms, true);
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        mul_terms(self, rhs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        mul_terms(&self, &rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for (_, c) in &mut self.terms {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let triples: Vec<(i32, i32, String)> = self.terms.iter().map(|(e, c)| (e.t, e.q, c.to_string())).collect();
        triples.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let triples: Vec<(i32, i32, String)> = Vec::deserialize(d)?;
        let mut terms = Vec::with_capacity(triples.len());
        for (et, eq, c) in triples {
            let c: BigInt = c.parse().map_err(|_| D::Error::custom(format!("bad coefficient {c:?}")))?;
            terms.push((Exponent::new(et, eq), c));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}
