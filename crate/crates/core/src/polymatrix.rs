//! Dense matrices over `Z[t^{±1}, q^{±1}]`: products, fraction-free
//! determinants and adjugates, and the GCD of maximal minors.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

#[derive(Deserialize)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl<'de> Deserialize<'de> for PolyMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawMatrix::deserialize(d)?;
        PolyMatrix::new(raw.rows, raw.cols, raw.entries).map_err(serde::de::Error::custom)
    }
}

/// Outcome of a (possibly capped) maximal-minor GCD.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct MinorsGcd {
    pub polynomial: LaurentPoly,
    /// False when the enumeration cap stopped the search before the GCD became a unit;
    /// the polynomial is then a multiple of the true GCD.
    pub exact: bool,
    pub minors_enumerated: u64,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<LaurentPoly>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!("empty {rows}x{cols} matrix")));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(PolyMatrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        PolyMatrix { rows, cols, entries: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, LaurentPoly::one())
    }

    pub fn scalar(n: usize, c: LaurentPoly) -> Self {
        Self::diagonal(vec![c; n])
    }

    pub fn diagonal(diag: Vec<LaurentPoly>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: LaurentPoly) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<LaurentPoly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }

    /// The common diagonal value when the matrix is a scalar multiple of the identity.
    pub fn as_scalar(&self) -> Option<&LaurentPoly> {
        if !self.is_square() {
            return None;
        }
        let d = self.get(0, 0);
        let ok = (0..self.rows)
            .all(|i| (0..self.cols).all(|j| if i == j { self.get(i, j) == d } else { self.get(i, j).is_zero() }));
        ok.then_some(d)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn matmul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.entries[idx] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix: `v · self`.
    pub fn left_mul_vector(&self, v: &[LaurentPoly]) -> Result<Vec<LaurentPoly>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch(format!("vector of length {} against {} rows", v.len(), self.rows)));
        }
        Ok((0..self.cols)
            .map(|j| {
                let mut acc = LaurentPoly::zero();
                for (i, x) in v.iter().enumerate() {
                    let m = self.get(i, j);
                    if !x.is_zero() && !m.is_zero() {
                        acc += &(x * m);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        PolyMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|e| e * c).collect() }
    }

    /// `self - I`.
    pub fn sub_identity(&self) -> Result<PolyMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            let idx = i * self.cols + i;
            out.entries[idx] -= &LaurentPoly::one();
        }
        Ok(out)
    }

    pub fn select_rows(&self, rows: &[usize]) -> PolyMatrix {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            entries.extend_from_slice(self.row(r));
        }
        PolyMatrix { rows: rows.len(), cols: self.cols, entries }
    }

    /// Stacks blocks with equal column counts on top of each other.
    pub fn vstack(blocks: &[PolyMatrix]) -> Result<PolyMatrix> {
        let first = blocks.first().ok_or_else(|| Error::DimensionMismatch("no blocks to stack".into()))?;
        if blocks.iter().any(|b| b.cols != first.cols) {
            return Err(Error::DimensionMismatch("blocks have different column counts".into()));
        }
        let entries = blocks.iter().flat_map(|b| b.entries.iter().cloned()).collect();
        Ok(PolyMatrix { rows: blocks.iter().map(|b| b.rows).sum(), cols: first.cols, entries })
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<LaurentPoly> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        match n {
            1 => return Ok(self.entries[0].clone()),
            2 => return Ok(&(self.get(0, 0) * self.get(1, 1)) - &(self.get(0, 1) * self.get(1, 0))),
            _ => {}
        }
        let mut a: Vec<Vec<LaurentPoly>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = LaurentPoly::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return Ok(LaurentPoly::zero());
                };
                a.swap(k, p);
                negate = !negate;
            }
            let (top, bottom) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            let pivot = &pivot_row[k];
            for row in bottom.iter_mut() {
                let factor = std::mem::take(&mut row[k]);
                for j in k + 1..n {
                    let mut v = pivot * &row[j];
                    if !factor.is_zero() && !pivot_row[j].is_zero() {
                        v -= &(&factor * &pivot_row[j]);
                    }
                    row[j] = if prev.is_one() { v } else { v.exact_div(&prev).expect("Bareiss division is exact") };
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Fraction-free Gauss-Jordan on `[self | I]`. Returns `(d, R)` with
    /// `R · self = d · I`, where `d = ±det(self)`; `None` when singular.
    fn gauss_jordan(&self) -> Option<(LaurentPoly, PolyMatrix)> {
        let n = self.rows;
        let w = 2 * n;
        let mut a: Vec<Vec<LaurentPoly>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() }));
                row
            })
            .collect();
        let mut prev = LaurentPoly::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let p = (k + 1..n).find(|&i| !a[i][k].is_zero())?;
                a.swap(k, p);
            }
            let pivot_row = a[k].clone();
            let pivot = &pivot_row[k];
            for (i, row) in a.iter_mut().enumerate() {
                if i == k {
                    continue;
                }
                let factor = std::mem::take(&mut row[k]);
                for j in 0..w {
                    if j == k {
                        continue;
                    }
                    let mut v = pivot * &row[j];
                    if !factor.is_zero() && !pivot_row[j].is_zero() {
                        v -= &(&factor * &pivot_row[j]);
                    }
                    row[j] = if prev.is_one() { v } else { v.exact_div(&prev).expect("Gauss-Jordan division is exact") };
                }
            }
            prev = pivot.clone();
        }
        let d = prev;
        let entries = a.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
        Some((d, PolyMatrix { rows: n, cols: n, entries }))
    }

    /// Classical adjugate, `adj(M) · M = det(M) · I`.
    pub fn adjugate(&self) -> Result<PolyMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 1 {
            return Ok(Self::identity(1));
        }
        if let Some((d, r)) = self.gauss_jordan() {
            let det = self.det()?;
            // R = d · M^{-1}, so adj(M) = (det / d) · R with det / d = ±1
            return Ok(if det == d { r } else { r.scale(&LaurentPoly::constant(-1)) });
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let keep_rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let keep_cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.submatrix(&keep_rows, &keep_cols).det()?;
                out.set(i, j, if (i + j) % 2 == 0 { minor } else { -minor });
            }
        }
        Ok(out)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let entries = rows.iter().flat_map(|&r| cols.iter().map(move |&c| self.get(r, c).clone())).collect();
        PolyMatrix { rows: rows.len(), cols: cols.len(), entries }
    }

    /// Inverse over the ring; exists exactly when the determinant is a unit.
    pub fn inverse(&self) -> Result<PolyMatrix> {
        let det = self.det()?;
        let inv_det = det
            .unit_inverse()
            .ok_or_else(|| Error::Invalid(format!("determinant {det} is not a unit")))?;
        Ok(self.adjugate()?.scale(&inv_det))
    }

    /// Normalized GCD of all `d x d` minors of an `N x d` matrix.
    pub fn minors_gcd(&self, d: usize) -> Result<LaurentPoly> {
        Ok(self.minors_gcd_capped(d, None)?.polynomial)
    }

    /// Maximal-minor GCD over row subsets in lexicographic order, stopping as soon
    /// as the running GCD is a unit or `cap` minors have been evaluated.
    pub fn minors_gcd_capped(&self, d: usize, cap: Option<u64>) -> Result<MinorsGcd> {
        if d == 0 || self.cols != d || self.rows < d {
            return Err(Error::DimensionMismatch(format!(
                "order-{d} minors of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let zero_row: Vec<bool> = (0..self.rows).map(|i| self.row(i).iter().all(LaurentPoly::is_zero)).collect();
        let mut acc = LaurentPoly::zero();
        let mut enumerated = 0u64;
        let mut subset: Vec<usize> = (0..d).collect();
        loop {
            if cap.is_some_and(|c| enumerated >= c) {
                return Ok(MinorsGcd { polynomial: acc, exact: false, minors_enumerated: enumerated });
            }
            enumerated += 1;
            // minors through an all-zero row vanish and leave the GCD unchanged
            if !subset.iter().any(|&r| zero_row[r]) {
                let minor = self.select_rows(&subset).det()?;
                acc = acc.gcd(&minor);
                if acc.is_one() {
                    break;
                }
            }
            if !next_combination(&mut subset, self.rows) {
                break;
            }
        }
        Ok(MinorsGcd { polynomial: acc.normalize(), exact: true, minors_enumerated: enumerated })
    }
}

/// Advances `c` to the next `k`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl fmt::Display for PolyMatrix {
    /// Bracketed rows with aligned columns.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| cells[i * self.cols + j].chars().count()).max().unwrap_or(0))
            .collect();
        for i in 0..self.rows {
            f.write_str("[ ")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" | ")?;
                }
                write!(f, "{:<w$}", cells[i * self.cols + j], w = widths[j])?;
            }
            f.write_str(" ]")?;
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}
