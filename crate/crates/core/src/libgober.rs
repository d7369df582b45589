//! Libgober matrices of braid monodromies and the Krammer polynomial.

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::polymatrix::PolyMatrix;
use crate::representations::{burau_word, krammer_word};

/// Local monodromies, one per singular fiber, all in the same `B_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyList {
    strands: usize,
    words: Vec<BraidWord>,
}

impl MonodromyList {
    pub fn new(words: Vec<BraidWord>) -> Result<Self> {
        let first = words.first().ok_or_else(|| Error::Invalid("a monodromy list needs at least one word".into()))?;
        let strands = first.strands();
        if let Some(w) = words.iter().find(|w| w.strands() != strands) {
            return Err(Error::DimensionMismatch(format!(
                "word on {} strands in a list over {strands}",
                w.strands()
            )));
        }
        Ok(MonodromyList { strands, words })
    }

    pub fn single(word: BraidWord) -> Self {
        MonodromyList { strands: word.strands(), words: vec![word] }
    }

    /// Parses each word in the `s<k>^<p>` grammar.
    pub fn parse<S: AsRef<str>>(strands: usize, words: &[S]) -> Result<Self> {
        Self::new(words.iter().map(|w| BraidWord::parse(w.as_ref(), strands)).collect::<Result<_>>()?)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn words(&self) -> &[BraidWord] {
        &self.words
    }

    pub fn push(&mut self, word: BraidWord) -> Result<()> {
        if word.strands() != self.strands {
            return Err(Error::DimensionMismatch(format!(
                "word on {} strands in a list over {}",
                word.strands(),
                self.strands
            )));
        }
        self.words.push(word);
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct RawList {
    n: usize,
    words: Vec<String>,
}

impl Serialize for MonodromyList {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawList { n: self.strands, words: self.words.iter().map(|w| w.to_string()).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonodromyList {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawList::deserialize(d)?;
        MonodromyList::parse(raw.n, &raw.words).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantResult {
    #[serde(skip)]
    pub libgober_matrix: PolyMatrix,
    /// Normalized GCD of the maximal minors; a multiple of the true value when `exact` is false.
    pub polynomial: LaurentPoly,
    /// Normalized determinant of each fiber's own block.
    pub per_fiber: Vec<LaurentPoly>,
    pub exact: bool,
    pub minors_enumerated: u64,
}

fn stacked_blocks(m: &MonodromyList, rep: fn(&BraidWord) -> PolyMatrix) -> Vec<PolyMatrix> {
    m.words.iter().map(|w| rep(w).sub_identity().expect("square representation")).collect()
}

/// Blocks `K(w_j) - I` stacked in list order.
pub fn libgober_matrix(m: &MonodromyList) -> PolyMatrix {
    PolyMatrix::vstack(&stacked_blocks(m, krammer_word)).expect("blocks share a width")
}

fn invariant(m: &MonodromyList, rep: fn(&BraidWord) -> PolyMatrix, cap: Option<u64>) -> InvariantResult {
    let blocks = stacked_blocks(m, rep);
    let per_fiber: Vec<LaurentPoly> =
        blocks.iter().map(|b| b.det().expect("square block").normalize()).collect();
    let matrix = PolyMatrix::vstack(&blocks).expect("blocks share a width");
    if blocks.len() == 1 {
        return InvariantResult {
            libgober_matrix: matrix,
            polynomial: per_fiber[0].clone(),
            per_fiber,
            exact: true,
            minors_enumerated: 1,
        };
    }
    let d = matrix.cols();
    let minors = matrix.minors_gcd_capped(d, cap).expect("N >= d by construction");
    InvariantResult {
        libgober_matrix: matrix,
        polynomial: minors.polynomial,
        per_fiber,
        exact: minors.exact,
        minors_enumerated: minors.minors_enumerated,
    }
}

/// Krammer polynomial with full minor enumeration.
pub fn krammer_polynomial(m: &MonodromyList) -> InvariantResult {
    invariant(m, krammer_word, None)
}

/// Krammer polynomial stopping after `cap` maximal minors; see [`InvariantResult::exact`].
pub fn krammer_polynomial_capped(m: &MonodromyList, cap: Option<u64>) -> InvariantResult {
    invariant(m, krammer_word, cap)
}

/// The same invariant taken with the reduced Burau representation, a polynomial in `t`.
pub fn alexander_polynomial(m: &MonodromyList) -> LaurentPoly {
    invariant(m, burau_word, None).polynomial
}
