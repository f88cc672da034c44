//! Partitions, conjugates, complements, semistandard Young tableaux and torus
//! characters — the combinatorial index layer.
//!
//! Conventions: a partition λ = (λ₁ ≥ λ₂ ≥ … ≥ λ_t ≥ 1) lists row lengths of
//! the Ferrer diagram drawn in the first quadrant, box (1,1) south-west. The
//! conjugate λ* lists column heights, so column ℓ of the diagram has λ*_ℓ
//! boxes. Width s = λ₁, height t = number of parts, weight m = Σλᵢ. Tableaux
//! are stored column-major and ordered by their column reading word (bottom to
//! top, left to right), which fixes the Schur basis order once and for all.

use std::fmt;

use num::{BigInt, One, Zero};
use serde::{Serialize, Serializer};

use crate::rat::{pow_rat, Rat};
use crate::{Error, Result};

/// A nonempty partition with weakly decreasing positive parts (row lengths).
/// Ambient dimensions are passed explicitly to the operations that need them.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Serialize for Partition {
    // JSON form is the bare array of parts, e.g. [2,1]
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("empty partition".into()));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition("zero part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    /// Parses the comma-separated text form, e.g. `"3,1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Result<Vec<u32>> = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {p:?} in {s:?}")))
            })
            .collect();
        Partition::new(parts?)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Weight m = Σ λᵢ.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Width s = λ₁ (number of columns).
    pub fn width(&self) -> usize {
        self.parts[0] as usize
    }

    /// Height t (number of parts).
    pub fn height(&self) -> usize {
        self.parts.len()
    }

    /// Row length λᵢ, 0 beyond the last part (1-based).
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// The transpose partition λ*: λ*_j = #{i : λᵢ ≥ j}.
    pub fn conjugate(&self) -> Partition {
        let s = self.width();
        let parts = (1..=s as u32)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Column heights λ*_ℓ for ℓ = 1..s, convenience over `conjugate`.
    pub fn column_heights(&self) -> Vec<usize> {
        self.conjugate().parts.iter().map(|&p| p as usize).collect()
    }

    /// The complementary partition λ̄ with respect to n, defined by
    /// λ*_ℓ + λ̄*_{s+1−ℓ} = n for 1 ≤ ℓ ≤ s. Involutive and width-preserving
    /// for partitions with fewer than n parts; a column of full height n
    /// vanishes from the complement (it carries the determinant character).
    pub fn complement(&self, n: usize) -> Result<Partition> {
        if self.height() > n {
            return Err(Error::InvalidPartition(format!(
                "partition {self} has more than n = {n} parts"
            )));
        }
        let conj = self.conjugate();
        let s = self.width();
        let mut bar_conj: Vec<u32> = (0..s).map(|i| n as u32 - conj.parts[s - 1 - i]).collect();
        // trailing zero columns vanish from the diagram
        while bar_conj.last() == Some(&0) {
            bar_conj.pop();
        }
        if bar_conj.is_empty() {
            return Err(Error::InvalidPartition(format!(
                "complement of {self} with respect to n = {n} is empty"
            )));
        }
        Ok(Partition { parts: bar_conj }.conjugate())
    }

    /// Torus character χ_λ(x) = ∏ xᵢ^{λᵢ} (missing parts count as exponent 0).
    pub fn character(&self, x: &[Rat]) -> Result<Rat> {
        if x.len() < self.height() {
            return Err(Error::ShapeMismatch(format!(
                "character of {self} needs at least {} coordinates",
                self.height()
            )));
        }
        if x.iter().any(Zero::is_zero) {
            return Err(Error::Invalid("character requires nonzero entries".into()));
        }
        let mut acc = Rat::one();
        for (i, p) in self.parts.iter().enumerate() {
            acc *= pow_rat(&x[i], *p as i64);
        }
        Ok(acc)
    }
}

/// A semistandard Young tableau: entries in 1..n, strictly increasing up each
/// column, weakly non-decreasing along rows. Stored column-major, bottom-up.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SemistandardTableau {
    shape: Partition,
    cols: Vec<Vec<u32>>,
}

impl fmt::Debug for SemistandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tableau[{}]", self.word_string())
    }
}

impl fmt::Display for SemistandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.word_string())
    }
}

impl SemistandardTableau {
    pub fn new(shape: Partition, cols: Vec<Vec<u32>>, n: usize) -> Result<Self> {
        let heights = shape.column_heights();
        if cols.len() != heights.len() || cols.iter().zip(&heights).any(|(c, &h)| c.len() != h) {
            return Err(Error::ShapeMismatch(format!("tableau does not match shape {shape}")));
        }
        for col in &cols {
            if col.iter().any(|&e| e == 0 || e as usize > n) {
                return Err(Error::Invalid(format!("tableau entry outside 1..{n}")));
            }
            if col.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Invalid("column not strictly increasing".into()));
            }
        }
        for l in 1..cols.len() {
            let h = cols[l].len();
            if (0..h).any(|r| cols[l - 1][r] > cols[l][r]) {
                return Err(Error::Invalid("row not weakly increasing".into()));
            }
        }
        Ok(SemistandardTableau { shape, cols })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn columns(&self) -> &[Vec<u32>] {
        &self.cols
    }

    /// Entry at (column ℓ, row j), both 1-based from the south-west corner.
    pub fn entry(&self, col: usize, row: usize) -> u32 {
        self.cols[col - 1][row - 1]
    }

    /// Column reading word: bottom-to-top within each column, left to right.
    pub fn reading_word(&self) -> Vec<u32> {
        self.cols.iter().flatten().copied().collect()
    }

    fn word_string(&self) -> String {
        let w: Vec<String> = self.reading_word().iter().map(u32::to_string).collect();
        w.join(",")
    }
}

impl PartialOrd for SemistandardTableau {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SemistandardTableau {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.reading_word().cmp(&other.reading_word())
    }
}

/// All SSYT of the given shape with entries in 1..n, sorted by reading word.
/// The count matches the hook-content formula (see [`schur_dimension`]).
pub fn enumerate_ssyt(shape: &Partition, n: usize) -> Result<Vec<SemistandardTableau>> {
    if shape.height() > n {
        return Err(Error::InvalidPartition(format!(
            "shape {shape} has more than n = {n} parts"
        )));
    }
    let heights = shape.column_heights();
    let mut out = Vec::new();
    let mut cols: Vec<Vec<u32>> = Vec::new();
    fill_columns(&heights, n, &mut cols, &mut out, shape);
    out.sort();
    Ok(out)
}

fn fill_columns(
    heights: &[usize],
    n: usize,
    cols: &mut Vec<Vec<u32>>,
    out: &mut Vec<SemistandardTableau>,
    shape: &Partition,
) {
    let l = cols.len();
    if l == heights.len() {
        out.push(SemistandardTableau { shape: shape.clone(), cols: cols.clone() });
        return;
    }
    let h = heights[l];
    let mut col = vec![0u32; h];
    fill_column(heights, n, cols, &mut col, 0, out, shape);
}

fn fill_column(
    heights: &[usize],
    n: usize,
    cols: &mut Vec<Vec<u32>>,
    col: &mut Vec<u32>,
    row: usize,
    out: &mut Vec<SemistandardTableau>,
    shape: &Partition,
) {
    if row == col.len() {
        cols.push(col.clone());
        fill_columns(heights, n, cols, out, shape);
        cols.pop();
        return;
    }
    let l = cols.len();
    let lower = if row == 0 { 1 } else { col[row - 1] + 1 };
    // weak row condition against the previous (taller or equal) column
    let lower = lower.max(if l > 0 { cols[l - 1][row] } else { 1 });
    for e in lower..=n as u32 {
        col[row] = e;
        fill_column(heights, n, cols, col, row + 1, out, shape);
    }
}

/// dim 𝕊^λ(ℚⁿ) by the hook-content formula ∏ (n + content) / hook.
pub fn schur_dimension(shape: &Partition, n: usize) -> Result<BigInt> {
    if shape.height() > n {
        return Err(Error::InvalidPartition(format!(
            "shape {shape} has more than n = {n} parts"
        )));
    }
    let conj = shape.conjugate();
    let mut num = Rat::one();
    for (li, &rowlen) in shape.parts().iter().enumerate() {
        let r = li as i64 + 1; // row index, 1-based
        for l in 1..=rowlen as i64 {
            let content = l - r;
            let arm = rowlen as i64 - l;
            let leg = conj.part(l as usize) as i64 - r;
            let hook = arm + leg + 1;
            num *= Rat::new(BigInt::from(n as i64 + content), BigInt::from(hook));
        }
    }
    debug_assert!(num.denom().is_one());
    Ok(num.numer().clone())
}

/// The canonical highest weight tableau U(λ): column ℓ filled 1,…,λ*_ℓ
/// bottom-up. Fixed by unipotent upper triangular matrices.
pub fn highest_weight_tableau(shape: &Partition) -> SemistandardTableau {
    let cols = shape
        .column_heights()
        .iter()
        .map(|&h| (1..=h as u32).collect())
        .collect();
    SemistandardTableau { shape: shape.clone(), cols }
}
