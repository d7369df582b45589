//! Braid words in Artin generators, essentiality, and the Artin action of
//! the braid group on the free group `F_n = <α_1, …, α_n>`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word in `B_n`. Letter `g > 0` is `σ_g`, `g < 0` is `σ_{|g|}^{-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands < 2 {
            return Err(Error::Invalid(format!("a braid needs at least 2 strands, got {strands}")));
        }
        if let Some(&bad) = letters.iter().find(|&&g| g == 0 || g.unsigned_abs() as usize >= strands) {
            return Err(Error::IndexOutOfRange { index: bad as i64, strands });
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    /// Parses `s1 s2^-1 s3^4` or bare signed indices `1 -2 3`.
    pub fn parse(text: &str, strands: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for token in text.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()) {
            let (gen, power) = parse_token(token)?;
            let letter = if power < 0 { -gen } else { gen };
            letters.extend(std::iter::repeat_n(letter, power.unsigned_abs() as usize));
        }
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::DimensionMismatch(format!(
                "braids on {} and {} strands",
                self.strands, other.strands
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn pow(&self, k: usize) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.repeat(k) }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|g| -g).collect() }
    }

    /// Cancels adjacent `σ_i σ_i^{-1}` pairs; no braid relations are applied.
    pub fn free_reduce(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: free_reduce(&self.letters) }
    }

    /// `{ |g| : g in letters }`.
    pub fn generator_support(&self) -> BTreeSet<usize> {
        self.letters.iter().map(|g| g.unsigned_abs() as usize).collect()
    }

    /// Generator indices in `1..n` that do not occur in the word.
    pub fn missing_generators(&self) -> Vec<usize> {
        let support = self.generator_support();
        (1..self.strands).filter(|k| !support.contains(k)).collect()
    }

    /// A word is essential when some generator is absent from it, read literally.
    pub fn is_essential(&self) -> bool {
        self.generator_support().len() < self.strands - 1
    }

    /// Images of `α_1, …, α_n` under the automorphism of the word, letters applied left to right.
    pub fn act_on_free_group(&self) -> Vec<FreeGroupWord> {
        let mut images: Vec<FreeGroupWord> = (1..=self.strands as i32).map(FreeGroupWord::generator).collect();
        for &g in &self.letters {
            let i = g.unsigned_abs() as usize;
            let letter_image = |j: usize| -> Vec<i32> {
                let (a, b) = (i as i32, i as i32 + 1);
                match (g > 0, j) {
                    (true, j) if j == i => vec![a, b, -a],
                    (true, j) if j == i + 1 => vec![a],
                    (false, j) if j == i => vec![b],
                    (false, j) if j == i + 1 => vec![-b, a, b],
                    _ => vec![j as i32],
                }
            };
            images = images
                .iter()
                .map(|w| {
                    let mut out = Vec::new();
                    for &x in &w.0 {
                        let img = letter_image(x.unsigned_abs() as usize);
                        if x > 0 {
                            out.extend(img);
                        } else {
                            out.extend(img.iter().rev().map(|y| -y));
                        }
                    }
                    FreeGroupWord::new(out)
                })
                .collect();
        }
        images
    }
}

fn parse_token(token: &str) -> Result<(i32, i64)> {
    let bad = || Error::Parse(format!("bad braid letter {token:?}"));
    let body = token.strip_prefix('s').or_else(|| token.strip_prefix('σ'));
    match body {
        Some(body) => {
            let (gen, power) = match body.split_once('^') {
                Some((g, p)) => (g, p.trim_matches(|c| c == '{' || c == '}')),
                None => (body, "1"),
            };
            let gen: i32 = gen.parse().map_err(|_| bad())?;
            let power: i64 = power.replace('\u{2212}', "-").parse().map_err(|_| bad())?;
            if gen <= 0 {
                return Err(bad());
            }
            Ok((gen, power))
        }
        None => {
            let g: i32 = token.replace('\u{2212}', "-").parse().map_err(|_| bad())?;
            if g == 0 {
                return Err(bad());
            }
            Ok((g.abs(), if g < 0 { -1 } else { 1 }))
        }
    }
}

fn free_reduce(letters: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::with_capacity(letters.len());
    for &g in letters {
        if out.last() == Some(&-g) {
            out.pop();
        } else {
            out.push(g);
        }
    }
    out
}

impl fmt::Display for BraidWord {
    /// Runs of equal letters print as powers: `s1 s2^4 s1^-1`. The identity prints as an empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let g = self.letters[i];
            let run = self.letters[i..].iter().take_while(|&&x| x == g).count();
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let power = if g < 0 { -(run as i64) } else { run as i64 };
            if power == 1 {
                write!(f, "s{}", g.abs())?;
            } else {
                write!(f, "s{}^{}", g.abs(), power)?;
            }
            i += run;
        }
        Ok(())
    }
}

impl Serialize for BraidWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            strands: usize,
            word: String,
            letters: &'a [i32],
        }
        Repr { strands: self.strands, word: self.to_string(), letters: &self.letters }.serialize(s)
    }
}

/// A freely reduced word over `α_1, …, α_n`; `j > 0` is `α_j`, `j < 0` is `α_{|j|}^{-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FreeGroupWord(Vec<i32>);

impl FreeGroupWord {
    pub fn new(letters: Vec<i32>) -> Self {
        FreeGroupWord(free_reduce(&letters))
    }

    pub fn generator(j: i32) -> Self {
        FreeGroupWord(vec![j])
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn mul(&self, other: &FreeGroupWord) -> FreeGroupWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        FreeGroupWord::new(v)
    }

    /// When the word is `u α_j u^{-1}`, returns `j`.
    pub fn conjugated_generator(&self) -> Option<i32> {
        let w = &self.0;
        if w.len() % 2 == 0 {
            return None;
        }
        let mid = w.len() / 2;
        let palindromic = (0..mid).all(|k| w[k] == -w[w.len() - 1 - k]);
        (palindromic && w[mid] > 0).then_some(w[mid])
    }
}

impl fmt::Display for FreeGroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> =
            self.0.iter().map(|&j| if j > 0 { format!("a{j}") } else { format!("a{}^-1", -j) }).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for FreeGroupWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let bad = || Error::Parse(format!("bad free group letter {tok:?}"));
            let body = tok.strip_prefix('a').ok_or_else(bad)?;
            let (j, inv) = match body.strip_suffix("^-1") {
                Some(j) => (j, true),
                None => (body, false),
            };
            let j: i32 = j.parse().map_err(|_| bad())?;
            if j <= 0 {
                return Err(bad());
            }
            out.push(if inv { -j } else { j });
        }
        Ok(FreeGroupWord::new(out))
    }
}
