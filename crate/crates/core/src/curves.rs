//! Completely reducible n-gonal curves `(y - y_1(x)) ⋯ (y - y_n(x))`, their
//! singular fibers, and the monodromy words of full-twist collisions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::libgober::{krammer_polynomial, InvariantResult, MonodromyList};
use crate::representations::krammer_word;

/// Univariate polynomial over Q, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoly(Vec<BigRational>);

impl RationalPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn sub(&self, other: &RationalPoly) -> RationalPoly {
        let len = self.0.len().max(other.0.len());
        let zero = BigRational::zero();
        Self::new(
            (0..len)
                .map(|i| self.0.get(i).unwrap_or(&zero) - other.0.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    /// `f(x + a)`.
    pub fn taylor_shift(&self, a: &BigRational) -> RationalPoly {
        let mut c = self.0.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let next = c[j + 1].clone();
                c[j] += &next * a;
            }
        }
        Self::new(c)
    }

    /// Quotient by `x - r` when `r` is a root.
    fn deflate(&self, r: &BigRational) -> RationalPoly {
        let n = self.0.len();
        let mut out = vec![BigRational::zero(); n - 1];
        let mut carry = BigRational::zero();
        for i in (1..n).rev() {
            carry = &self.0[i] + carry * r;
            out[i - 1] = carry.clone();
        }
        Self::new(out)
    }

    /// Distinct rational roots with multiplicities, ascending, and the degree of the
    /// factor left over once they are divided out.
    pub fn rational_roots(&self) -> (Vec<(BigRational, u32)>, usize) {
        if self.is_zero() {
            return (Vec::new(), 0);
        }
        let mut f = self.clone();
        let mut roots: BTreeMap<BigRational, u32> = BTreeMap::new();
        let zero = BigRational::zero();
        while f.degree().unwrap_or(0) > 0 && f.0[0].is_zero() {
            *roots.entry(zero.clone()).or_default() += 1;
            f = f.deflate(&zero);
        }
        if f.degree().unwrap_or(0) > 0 {
            let ints = f.integer_coefficients();
            let lead = ints.last().expect("nonzero").abs();
            let constant = ints[0].abs();
            for p in divisors(&constant) {
                for q in divisors(&lead) {
                    for s in [1, -1] {
                        let r = BigRational::new(&p * s, q.clone());
                        while f.degree().unwrap_or(0) > 0 && f.eval(&r).is_zero() {
                            *roots.entry(r.clone()).or_default() += 1;
                            f = f.deflate(&r);
                        }
                    }
                }
            }
        }
        (roots.into_iter().collect(), f.degree().unwrap_or(0))
    }

    /// Primitive integer multiple.
    fn integer_coefficients(&self) -> Vec<BigInt> {
        let lcm = self.0.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * &lcm).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
        ints.into_iter().map(|c| c / &g).collect()
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let root = n.sqrt();
    let mut d = BigInt::one();
    while d <= root {
        if (n % &d).is_zero() {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawCoeff {
    Text(String),
    Int(i64),
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn rational_str<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

impl Serialize for RationalPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|c| c.to_string()))
    }
}

impl<'de> Deserialize<'de> for RationalPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<RawCoeff>::deserialize(d)?;
        let coeffs = raw
            .into_iter()
            .map(|c| match c {
                RawCoeff::Text(s) => parse_rational(&s),
                RawCoeff::Int(i) => Ok(BigRational::from_integer(i.into())),
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(RationalPoly::new(coeffs))
    }
}

/// A curve whose defining polynomial splits into `n` graphs `y = y_i(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct CompletelyReducibleCurve {
    components: Vec<RationalPoly>,
}

impl CompletelyReducibleCurve {
    pub fn new(components: Vec<RationalPoly>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::Invalid(format!("a curve needs at least 2 components, got {}", components.len())));
        }
        for i in 0..components.len() {
            for j in i + 1..components.len() {
                if components[i] == components[j] {
                    return Err(Error::Invalid(format!("components {} and {} coincide", i + 1, j + 1)));
                }
            }
        }
        Ok(CompletelyReducibleCurve { components })
    }

    /// Parses a JSON list of ascending coefficient lists, coefficients as `"p/q"` strings or integers.
    pub fn from_json(text: &str) -> Result<Self> {
        let comps: Vec<RationalPoly> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(comps)
    }

    pub fn components(&self) -> &[RationalPoly] {
        &self.components
    }

    pub fn degree(&self) -> usize {
        self.components.len()
    }
}

impl<'de> Deserialize<'de> for CompletelyReducibleCurve {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        CompletelyReducibleCurve::new(Vec::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularFiberInfo {
    #[serde(serialize_with = "rational_str")]
    pub x_value: BigRational,
    /// Components (1-based) sharing a `y`-value, parts of size at least 2.
    pub colliding: Vec<Vec<usize>>,
    /// Common vanishing order of all pairwise differences when every component meets here.
    pub local_degree: Option<u32>,
}

struct FiberScan {
    fibers: Vec<SingularFiberInfo>,
    unresolved: Vec<(usize, usize)>,
    orders: BTreeMap<(BigRational, usize, usize), u32>,
}

fn scan(c: &CompletelyReducibleCurve) -> FiberScan {
    let comps = &c.components;
    let n = comps.len();
    let mut orders = BTreeMap::new();
    let mut unresolved = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (roots, rest) = comps[i].sub(&comps[j]).rational_roots();
            if rest > 0 {
                unresolved.push((i + 1, j + 1));
            }
            for (r, mult) in roots {
                orders.insert((r, i, j), mult);
            }
        }
    }
    let mut xs: Vec<BigRational> = orders.keys().map(|(x, _, _)| x.clone()).collect();
    xs.dedup();
    let fibers = xs
        .into_iter()
        .map(|x| {
            let mut parts: BTreeMap<BigRational, Vec<usize>> = BTreeMap::new();
            for (k, comp) in comps.iter().enumerate() {
                parts.entry(comp.eval(&x)).or_default().push(k + 1);
            }
            let mut colliding: Vec<Vec<usize>> = parts.into_values().filter(|p| p.len() >= 2).collect();
            colliding.sort();
            let local_degree = if colliding.len() == 1 && colliding[0].len() == n {
                let mut all = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| orders[&(x.clone(), i, j)]);
                let d = all.next().expect("at least one pair");
                all.all(|e| e == d).then_some(d)
            } else {
                None
            };
            SingularFiberInfo { x_value: x, colliding, local_degree }
        })
        .collect();
    FiberScan { fibers, unresolved, orders }
}

/// Rational singular fibers in ascending `x`; fails if some pair of components meets at a non-rational `x`.
pub fn singular_fibers(c: &CompletelyReducibleCurve) -> Result<Vec<SingularFiberInfo>> {
    let s = scan(c);
    if let Some(&(i, j)) = s.unresolved.first() {
        return Err(Error::IrrationalCollisionUnresolved(i, j));
    }
    Ok(s.fibers)
}

/// `(Δ²)^d = ((σ_1 ⋯ σ_{n-1})^n)^d`.
pub fn one_fiber_monodromy(n: usize, d: usize) -> Result<BraidWord> {
    if d == 0 {
        return Err(Error::Invalid("the number of full twists must be positive".into()));
    }
    let cycle: Vec<i32> = (1..n as i32).collect();
    Ok(BraidWord::new(n, cycle)?.pow(n * d))
}

/// `d` full twists of the strands `start..=end` only, in the generators `σ_start, …, σ_{end-1}`.
pub fn partial_fiber_monodromy(n: usize, start: usize, end: usize, d: usize) -> Result<BraidWord> {
    if start == 0 || end > n || start > end {
        let index = if start == 0 || start > end { start } else { end };
        return Err(Error::IndexOutOfRange { index: index as i64, strands: n });
    }
    let m = end - start + 1;
    if m < 2 || m >= n {
        return Err(Error::PartTooSmall { start, end, strands: n });
    }
    if d == 0 {
        return Err(Error::Invalid("the number of full twists must be positive".into()));
    }
    let cycle: Vec<i32> = (start as i32..end as i32).collect();
    Ok(BraidWord::new(n, cycle)?.pow(m * d))
}

/// Components `y_i = -a_i (x - p_1)^d - p_2` with pairwise distinct `a_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FullTwistFamily {
    pub n: usize,
    pub d: usize,
    #[serde(serialize_with = "rational_str")]
    pub p1: BigRational,
    #[serde(serialize_with = "rational_str")]
    pub p2: BigRational,
    /// Scalar by which `K(Δ²)` acts.
    pub full_twist_scalar: LaurentPoly,
    /// `(t^{2d} q^{6d} - 1)^{C(n,2)}`, normalized.
    pub closed_form: LaurentPoly,
    pub closed_form_matches: bool,
}

fn detect_family(c: &CompletelyReducibleCurve, fibers: &[SingularFiberInfo]) -> Option<(BigRational, BigRational, usize)> {
    let [fiber] = fibers else { return None };
    let d = fiber.local_degree? as usize;
    let shifted: Vec<RationalPoly> = c.components.iter().map(|y| y.taylor_shift(&fiber.x_value)).collect();
    let zero = BigRational::zero();
    let constant = shifted[0].coeffs().first().cloned().unwrap_or_else(BigRational::zero);
    let mut leading = Vec::new();
    for y in &shifted {
        let cs = y.coeffs();
        if cs.first().unwrap_or(&zero) != &constant || cs.len() > d + 1 {
            return None;
        }
        if cs.iter().take(d).skip(1).any(|x| !x.is_zero()) {
            return None;
        }
        leading.push(cs.get(d).cloned().unwrap_or_else(BigRational::zero));
    }
    leading.sort();
    leading.dedup();
    (leading.len() == c.components.len()).then(|| (fiber.x_value.clone(), -constant, d))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    #[serde(flatten)]
    pub fiber: SingularFiberInfo,
    /// Local Krammer polynomial when the local monodromy is a product of full twists.
    pub local_polynomial: Option<LaurentPoly>,
    /// The full-twist word the local polynomial was computed from.
    pub local_word: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveReport {
    pub components: usize,
    pub fibers: Vec<FiberReport>,
    /// Component pairs that also meet at non-rational `x`.
    pub unresolved_pairs: Vec<(usize, usize)>,
    pub family: Option<FullTwistFamily>,
    /// Invariant of the supplied monodromy, or of the single fiber's local monodromy.
    pub invariant: Option<InvariantResult>,
}

/// Local full-twist model: every part collides with one contact order, parts laid out as
/// consecutive strand ranges.
fn local_word(n: usize, fiber: &SingularFiberInfo, orders: &BTreeMap<(BigRational, usize, usize), u32>) -> Option<BraidWord> {
    let mut letters = Vec::new();
    let mut next = 1usize;
    for part in &fiber.colliding {
        let mut pair_orders = part
            .iter()
            .enumerate()
            .flat_map(|(a, &i)| part[a + 1..].iter().map(move |&j| (i - 1, j - 1)))
            .map(|(i, j)| orders[&(fiber.x_value.clone(), i, j)]);
        let d = pair_orders.next()?;
        if !pair_orders.all(|e| e == d) {
            return None;
        }
        let (start, end) = (next, next + part.len() - 1);
        let cycle: Vec<i32> = (start as i32..end as i32).collect();
        letters.extend(cycle.repeat(part.len() * d as usize));
        next = end + 1;
    }
    BraidWord::new(n, letters).ok()
}

/// Fibers, full-twist family detection and invariants; `monodromy` overrides the global computation.
pub fn analyze(c: &CompletelyReducibleCurve, monodromy: Option<&MonodromyList>) -> Result<CurveReport> {
    let n = c.degree();
    if let Some(m) = monodromy {
        if m.strands() != n {
            return Err(Error::DimensionMismatch(format!(
                "monodromy on {} strands for a curve with {n} components",
                m.strands()
            )));
        }
    }
    let s = scan(c);
    let fibers: Vec<FiberReport> = s
        .fibers
        .iter()
        .map(|f| {
            let word = local_word(n, f, &s.orders);
            FiberReport {
                fiber: f.clone(),
                local_polynomial: word.as_ref().map(|w| krammer_polynomial(&MonodromyList::single(w.clone())).polynomial),
                local_word: word.map(|w| w.to_string()),
            }
        })
        .collect();
    let family = if s.unresolved.is_empty() {
        detect_family(c, &s.fibers).map(|(p1, p2, d)| {
            let twist = krammer_word(&one_fiber_monodromy(n, 1).expect("n >= 2"));
            let scalar = twist.as_scalar().expect("the full twist is central").clone();
            let m = (n * (n - 1) / 2) as i64;
            let base = LaurentPoly::monomial(1, 2 * d as i32, 6 * d as i32) - LaurentPoly::one();
            let closed_form = base.pow(m).expect("nonnegative power").normalize();
            let computed = fibers[0].local_polynomial.clone().expect("family fibers are full twists");
            FullTwistFamily {
                n,
                d,
                p1,
                p2,
                full_twist_scalar: scalar,
                closed_form_matches: closed_form == computed,
                closed_form,
            }
        })
    } else {
        None
    };
    let invariant = match monodromy {
        Some(m) => Some(krammer_polynomial(m)),
        None if s.unresolved.is_empty() && s.fibers.len() == 1 => {
            local_word(n, &s.fibers[0], &s.orders).map(|w| krammer_polynomial(&MonodromyList::single(w)))
        }
        None => None,
    };
    Ok(CurveReport { components: n, fibers, unresolved_pairs: s.unresolved, family, invariant })
}
