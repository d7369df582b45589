//! The Krammer representation of `B_n` on the free module with basis
//! `e_{i,j}` (`1 <= i < j <= n`), the fixed vector of braids avoiding one
//! interior generator, and the reduced Burau representation.
//!
//! Matrices act on row vectors: the row of basis pair `(i, j)` holds the
//! coordinates of the image of `e_{i,j}`, and a word maps to the product of its
//! letters' matrices in reading order.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::polymatrix::PolyMatrix;

/// Lexicographically ordered pairs `(i, j)`, `1 <= i < j <= n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KrammerBasis {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl KrammerBasis {
    pub fn new(n: usize) -> Result<Self> {
        check_strands(n)?;
        let pairs = (1..n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        Ok(KrammerBasis { n, pairs })
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    /// `m = n(n-1)/2`.
    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Zero-based position of `(i, j)`.
    pub fn index(&self, i: usize, j: usize) -> Option<usize> {
        (1 <= i && i < j && j <= self.n).then(|| pair_index(self.n, i, j))
    }

    /// Positions of the block of pairs with first index `k`; it has `n - k` entries.
    pub fn block(&self, k: usize) -> std::ops::Range<usize> {
        let start = pair_index(self.n, k, k + 1);
        start..start + (self.n - k)
    }
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    (1..i).map(|a| n - a).sum::<usize>() + (j - i - 1)
}

fn check_strands(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Invalid(format!("a braid group needs at least 2 strands, got {n}")));
    }
    Ok(())
}

fn check_generator(n: usize, k: usize) -> Result<()> {
    check_strands(n)?;
    if k == 0 || k >= n {
        return Err(Error::IndexOutOfRange { index: k as i64, strands: n });
    }
    Ok(())
}

fn tq(et: i32, eq: i32) -> LaurentPoly {
    LaurentPoly::monomial(1, et, eq)
}

fn q_minus_one() -> LaurentPoly {
    LaurentPoly::q() - LaurentPoly::one()
}

fn one_minus_q() -> LaurentPoly {
    LaurentPoly::one() - LaurentPoly::q()
}

/// Images of `e_{i,j}` under `σ_k` as `(column, coefficient)` pairs.
fn krammer_row(n: usize, k: usize, i: usize, j: usize) -> Vec<(usize, LaurentPoly)> {
    let idx = |a, b| pair_index(n, a, b);
    let kk = idx(k, k + 1);
    if (i, j) == (k, k + 1) {
        vec![(kk, tq(1, 2))]
    } else if j == k && i < k {
        vec![(idx(i, k), one_minus_q()), (idx(i, k + 1), LaurentPoly::q())]
    } else if j == k + 1 && i < k {
        vec![(idx(i, k), LaurentPoly::one()), (kk, &tq(1, (k - i + 1) as i32) * &q_minus_one())]
    } else if i == k && j > k + 1 {
        vec![(kk, &tq(1, 1) * &q_minus_one()), (idx(k + 1, j), LaurentPoly::q())]
    } else if i == k + 1 && j > k + 1 {
        vec![(idx(k, j), LaurentPoly::one()), (idx(k + 1, j), one_minus_q())]
    } else if i < k && j > k + 1 {
        let c = &tq(1, (k - i) as i32) * &q_minus_one().pow(2).expect("nonnegative power");
        vec![(idx(i, j), LaurentPoly::one()), (kk, c)]
    } else {
        vec![(idx(i, j), LaurentPoly::one())]
    }
}

fn build_krammer(n: usize, k: usize) -> PolyMatrix {
    let basis = KrammerBasis::new(n).expect("validated strands");
    let m = basis.dim();
    let mut out = PolyMatrix::zeros(m, m);
    for (r, &(i, j)) in basis.pairs().iter().enumerate() {
        for (c, v) in krammer_row(n, k, i, j) {
            out.set(r, c, v);
        }
    }
    out
}

fn build_burau(n: usize, k: usize) -> PolyMatrix {
    let mut out = PolyMatrix::identity(n - 1);
    let t = LaurentPoly::t();
    let minus_t = -&t;
    if n == 2 {
        out.set(0, 0, minus_t);
        return out;
    }
    let c = k - 1;
    out.set(c, c, minus_t);
    if k > 1 {
        out.set(c - 1, c, t);
    }
    if k < n - 1 {
        out.set(c + 1, c, LaurentPoly::one());
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Family {
    Krammer,
    Burau,
}

/// `σ_k` and `σ_k^{-1}` for every `k`; index `k - 1`.
struct GeneratorSet {
    positive: Vec<PolyMatrix>,
    negative: Vec<PolyMatrix>,
}

impl GeneratorSet {
    fn build(family: Family, n: usize) -> Self {
        let positive: Vec<PolyMatrix> = (1..n)
            .map(|k| match family {
                Family::Krammer => build_krammer(n, k),
                Family::Burau => build_burau(n, k),
            })
            .collect();
        let negative = positive
            .iter()
            .map(|m| m.inverse().expect("generator determinants are units"))
            .collect();
        GeneratorSet { positive, negative }
    }

    fn get(&self, letter: i32) -> &PolyMatrix {
        let k = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            &self.positive[k]
        } else {
            &self.negative[k]
        }
    }
}

type Cache = RwLock<HashMap<(Family, usize), Arc<GeneratorSet>>>;

fn generators(family: Family, n: usize) -> Arc<GeneratorSet> {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(set) = cache.read().expect("cache lock").get(&(family, n)) {
        return Arc::clone(set);
    }
    let built = Arc::new(GeneratorSet::build(family, n));
    let mut guard = cache.write().expect("cache lock");
    Arc::clone(guard.entry((family, n)).or_insert(built))
}

fn signed(n: usize, k: usize, sign: i32) -> Result<i32> {
    check_generator(n, k)?;
    match sign {
        1 => Ok(k as i32),
        -1 => Ok(-(k as i32)),
        _ => Err(Error::Invalid(format!("sign must be +1 or -1, got {sign}"))),
    }
}

/// `K(σ_k)` for `sign = 1`, `K(σ_k)^{-1}` for `sign = -1`.
pub fn krammer_generator(n: usize, k: usize, sign: i32) -> Result<PolyMatrix> {
    let letter = signed(n, k, sign)?;
    Ok(generators(Family::Krammer, n).get(letter).clone())
}

fn word_product(family: Family, w: &BraidWord, dim: usize) -> PolyMatrix {
    let set = generators(family, w.strands());
    let mut letters = w.letters().iter();
    let Some(&first) = letters.next() else {
        return PolyMatrix::identity(dim);
    };
    letters.fold(set.get(first).clone(), |acc, &g| acc.matmul(set.get(g)).expect("square factors"))
}

/// Product of the Krammer matrices of the letters of `w`.
pub fn krammer_word(w: &BraidWord) -> PolyMatrix {
    let n = w.strands();
    word_product(Family::Krammer, w, n * (n - 1) / 2)
}

/// Column of `K(σ_k)` at the position of `e_{k,k+1}`.
pub fn nontrivial_column(n: usize, k: usize) -> Result<Vec<LaurentPoly>> {
    check_generator(n, k)?;
    let col = pair_index(n, k, k + 1);
    Ok(generators(Family::Krammer, n).positive[k - 1].column(col))
}

/// Reduced Burau matrix of `σ_k^{sign}` in `t`, size `(n-1) x (n-1)`.
pub fn burau_reduced_generator(n: usize, k: usize, sign: i32) -> Result<PolyMatrix> {
    let letter = signed(n, k, sign)?;
    Ok(generators(Family::Burau, n).get(letter).clone())
}

pub fn burau_word(w: &BraidWord) -> PolyMatrix {
    word_product(Family::Burau, w, w.strands() - 1)
}

/// One slot of the fixed vector before clearing denominators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "q_power", rename_all = "lowercase")]
pub enum EigenSlot {
    /// `x·q^p`
    X(u32),
    /// `q^p`
    Q(u32),
    /// `y·q^p`
    Y(u32),
}

impl fmt::Display for EigenSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (head, p) = match *self {
            EigenSlot::X(p) => ("x", p),
            EigenSlot::Y(p) => ("y", p),
            EigenSlot::Q(p) => ("", p),
        };
        match (head, p) {
            ("", 0) => f.write_str("1"),
            ("", 1) => f.write_str("q"),
            ("", p) => write!(f, "q^{p}"),
            (h, 0) => f.write_str(h),
            (h, 1) => write!(f, "{h}q"),
            (h, p) => write!(f, "{h}q^{p}"),
        }
    }
}

/// Left fixed vector `v'` of `K(σ_k)` for all `k != missing`, with entries in the ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EssentialEigenvector {
    pub n: usize,
    pub missing: usize,
    /// Entries before clearing denominators, in basis order.
    pub pattern: Vec<EigenSlot>,
    /// `x = t q (1 - q^{n-i}) / (t q^i - 1)` as `(numerator, denominator)`.
    pub x: (LaurentPoly, LaurentPoly),
    /// `y = t q^{n-i+1} (1 - q^i) / (t q^{n-i} - 1)` as `(numerator, denominator)`.
    pub y: (LaurentPoly, LaurentPoly),
    /// Least common multiple of the two denominators; `v' = scale · v`.
    pub scale: LaurentPoly,
    pub entries: Vec<LaurentPoly>,
}

/// Builds `v' = scale · v` where `v` is fixed by every generator except `σ_i`
/// and has `1` in the first slot of the block of `i`.
pub fn essential_eigenvector(n: usize, missing: usize) -> Result<EssentialEigenvector> {
    check_generator(n, missing)?;
    let i = missing;
    if i == 1 || i == n - 1 {
        return Err(Error::IndexOutOfRange { index: i as i64, strands: n });
    }
    let mut pattern = Vec::with_capacity(n * (n - 1) / 2);
    for k in 1..n {
        if k < i {
            pattern.extend((k - 1..=i - 2).map(|p| EigenSlot::X(p as u32)));
            pattern.extend((0..n - i).map(|p| EigenSlot::Q(p as u32)));
        } else if k == i {
            pattern.extend((0..n - i).map(|p| EigenSlot::Q(p as u32)));
        } else {
            pattern.extend((k - i - 1..=n - i - 2).map(|p| EigenSlot::Y(p as u32)));
        }
    }
    let (ni, ii) = ((n - i) as i32, i as i32);
    let one = LaurentPoly::one();
    let x = (&tq(1, 1) * &(&one - &tq(0, ni)), tq(1, ii) - one.clone());
    let y = (&tq(1, ni + 1) * &(&one - &tq(0, ii)), tq(1, ni) - one.clone());
    let scale = if x.1 == y.1 { x.1.clone() } else { &x.1 * &y.1 };
    let x_scaled = (&x.0 * &scale).exact_div(&x.1)?;
    let y_scaled = (&y.0 * &scale).exact_div(&y.1)?;
    let entries = pattern
        .iter()
        .map(|slot| match *slot {
            EigenSlot::X(p) => x_scaled.shift(0, p as i32),
            EigenSlot::Q(p) => scale.shift(0, p as i32),
            EigenSlot::Y(p) => y_scaled.shift(0, p as i32),
        })
        .collect();
    Ok(EssentialEigenvector { n, missing, pattern, x, y, scale, entries })
}

#[cfg(test)]
mod tests;
