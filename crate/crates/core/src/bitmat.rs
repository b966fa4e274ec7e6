//! Bit-packed Boolean matrices and the Boolean semiring algebra used by
//! the factorization code.
//!
//! Rows are stored as runs of `u64` words; bits past `cols` in the last
//! word of a row are always zero, so word-level popcounts are exact.
//!
//! The dense text format is:
//!
//! ```text
//! # optional comment lines
//! 3 4
//! 1010
//! 0110
//! 0001
//! ```

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(cols: usize) -> usize {
    cols.div_ceil(WORD)
}

/// A dense `rows × cols` Boolean matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BoolMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BoolMatrix {
    /// All-zero matrix. Panics if either dimension is zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let stride = words_for(cols);
        BoolMatrix {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn ones(rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have the same
    /// non-zero length.
    pub fn from_rows<R: AsRef<[bool]>>(rows: &[R]) -> Result<Self> {
        if rows.is_empty() || rows[0].as_ref().is_empty() {
            return Err(Error::InvalidArgument("matrix must be non-empty".into()));
        }
        let cols = rows[0].as_ref().len();
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::dim("from_rows", cols, r.len()));
            }
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// Parses rows written as `0`/`1` strings, e.g. `&["10", "01"]`.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let parsed: Vec<Vec<bool>> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(Error::parse(i + 1, format!("unexpected character {other:?}"))),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        Self::from_rows(&parsed)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        (self.words[i * self.stride + j / WORD] >> (j % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let w = &mut self.words[i * self.stride + j / WORD];
        let bit = 1u64 << (j % WORD);
        if v {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize, j: usize) {
        self.words[i * self.stride + j / WORD] ^= 1u64 << (j % WORD);
    }

    /// Packed words of row `i`.
    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.words[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_ones(&self, i: usize) -> usize {
        self.row_words(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn col_ones(&self, j: usize) -> usize {
        (0..self.rows).filter(|&i| self.get(i, j)).count()
    }

    /// Column indices set in row `i`, ascending.
    pub fn row_indices(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.row_ones(i));
        for (wi, &w) in self.row_words(i).iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * WORD + b);
                w &= w - 1;
            }
        }
        out
    }

    /// Row indices set in column `j`, ascending.
    pub fn col_indices(&self, j: usize) -> Vec<usize> {
        (0..self.rows).filter(|&i| self.get(i, j)).collect()
    }

    /// Positions of all 1-entries in row-major order.
    pub fn ones_positions(&self) -> Vec<(usize, usize)> {
        (0..self.rows)
            .flat_map(|i| self.row_indices(i).into_iter().map(move |j| (i, j)))
            .collect()
    }

    /// `|X|₁`, the number of set entries.
    pub fn ones_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn zeros_count(&self) -> usize {
        self.rows * self.cols - self.ones_count()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn density(&self) -> f64 {
        self.ones_count() as f64 / (self.rows * self.cols) as f64
    }

    fn check_same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::dim(
                op,
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", other.rows, other.cols),
            ));
        }
        Ok(())
    }

    /// Elementwise OR.
    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "union")?;
        let mut out = self.clone();
        out.union_in_place(other);
        Ok(out)
    }

    pub(crate) fn union_in_place(&mut self, other: &Self) {
        debug_assert_eq!(self.shape(), other.shape());
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    /// Elementwise `self ∧ ¬other`.
    pub fn and_not(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "and_not")?;
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= !*b;
        }
        Ok(out)
    }

    /// Elementwise XOR.
    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "xor")?;
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
        Ok(out)
    }

    /// Elementwise complement.
    pub fn not(&self) -> Self {
        let mut out = self.clone();
        for i in 0..out.rows {
            let cols = out.cols;
            let row = out.row_words_mut(i);
            for (wi, w) in row.iter_mut().enumerate() {
                *w = !*w;
                let hi = cols - wi * WORD;
                if hi < WORD {
                    *w &= (1u64 << hi) - 1;
                }
            }
        }
        out
    }

    /// `|X ⊕ Y|₁`: number of positions where the matrices differ.
    pub fn hamming_error(&self, other: &Self) -> Result<usize> {
        self.check_same_shape(other, "hamming_error")?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }

    /// `self ≤ other`: no entry is 1 here where `other` is 0.
    pub fn is_undercover_of(&self, other: &Self) -> Result<bool> {
        self.check_same_shape(other, "is_undercover_of")?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row_indices(i) {
                out.set(j, i, true);
            }
        }
        out
    }

    /// Horizontal concatenation `(self | other)`.
    pub fn concat_cols(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::dim("concat_cols", self.rows, other.rows));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in self.row_indices(i) {
                out.set(i, j, true);
            }
            for j in other.row_indices(i) {
                out.set(i, self.cols + j, true);
            }
        }
        Ok(out)
    }

    /// Vertical concatenation `(selfᵀ | otherᵀ)ᵀ`.
    pub fn concat_rows(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::dim("concat_rows", self.cols, other.cols));
        }
        let mut out = Self::zeros(self.rows + other.rows, self.cols);
        out.words[..self.words.len()].copy_from_slice(&self.words);
        out.words[self.words.len()..].copy_from_slice(&other.words);
        Ok(out)
    }

    /// Columns `[from, to)` as a new matrix.
    pub fn slice_cols(&self, from: usize, to: usize) -> Result<Self> {
        if from >= to || to > self.cols {
            return Err(Error::InvalidArgument(format!(
                "column range {from}..{to} invalid for {} columns",
                self.cols
            )));
        }
        Ok(Self::from_fn(self.rows, to - from, |i, j| self.get(i, from + j)))
    }

    /// Rows `[from, to)` as a new matrix.
    pub fn slice_rows(&self, from: usize, to: usize) -> Result<Self> {
        if from >= to || to > self.rows {
            return Err(Error::InvalidArgument(format!(
                "row range {from}..{to} invalid for {} rows",
                self.rows
            )));
        }
        Ok(Self::from_fn(to - from, self.cols, |i, j| self.get(from + i, j)))
    }

    /// The submatrix `X[rows, cols]`, in the given index order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    /// Boolean product `self ∘ rhs`.
    pub fn bool_product(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::dim(
                "boolean_product",
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", rhs.rows, rhs.cols),
            ));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in self.row_indices(i) {
                let src = rhs.row_words(l);
                for (d, s) in out.row_words_mut(i).iter_mut().zip(src) {
                    *d |= *s;
                }
            }
        }
        Ok(out)
    }

    /// Parses the dense text format.
    pub fn parse_dense(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().peekable();
        while let Some((_, l)) = lines.peek() {
            if l.starts_with('#') {
                lines.next();
            } else {
                break;
            }
        }
        let (hline, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let mut parts = header.split(' ');
        let dims: Vec<usize> = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => [a, b]
                .iter()
                .map(|s| s.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::parse(hline + 1, format!("malformed header {header:?}")))?,
            _ => return Err(Error::parse(hline + 1, format!("malformed header {header:?}"))),
        };
        let (rows, cols) = (dims[0], dims[1]);
        if rows == 0 || cols == 0 {
            return Err(Error::parse(hline + 1, "dimensions must be positive"));
        }
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse(hline + 2 + i, format!("expected {rows} rows, found {i}")))?;
            let bytes = line.as_bytes();
            if bytes.len() != cols {
                return Err(Error::parse(
                    ln + 1,
                    format!("ragged row: expected {cols} entries, found {}", bytes.len()),
                ));
            }
            for (j, &b) in bytes.iter().enumerate() {
                match b {
                    b'0' => {}
                    b'1' => m.set(i, j, true),
                    other => {
                        return Err(Error::parse(
                            ln + 1,
                            format!("unexpected character {:?}", other as char),
                        ))
                    }
                }
            }
        }
        if let Some((ln, extra)) = lines.next() {
            return Err(Error::parse(ln + 1, format!("trailing content {extra:?}")));
        }
        Ok(m)
    }

    /// Renders the dense text format (with trailing newline).
    pub fn to_dense_string(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols + 1) + 16);
        s.push_str(&format!("{} {}\n", self.rows, self.cols));
        for i in 0..self.rows {
            for j in 0..self.cols {
                s.push(if self.get(i, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BoolMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{}", if self.get(i, j) { '1' } else { '0' })?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for BoolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dense_string())
    }
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<BoolMatrix> {
    let text = fs::read_to_string(path)?;
    BoolMatrix::parse_dense(&text)
}

pub fn write_matrix(m: &BoolMatrix, path: impl AsRef<Path>) -> Result<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(m.to_dense_string().as_bytes())?;
    Ok(())
}

/// A pair of factors `A` (m×k) and `B` (k×n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorPair {
    a: BoolMatrix,
    b: BoolMatrix,
}

impl FactorPair {
    pub fn new(a: BoolMatrix, b: BoolMatrix) -> Result<Self> {
        if a.cols() != b.rows() {
            return Err(Error::dim("FactorPair", a.cols(), b.rows()));
        }
        Ok(FactorPair { a, b })
    }

    /// Rank-k pair of zero factors.
    pub fn zeros(m: usize, k: usize, n: usize) -> Self {
        FactorPair {
            a: BoolMatrix::zeros(m, k),
            b: BoolMatrix::zeros(k, n),
        }
    }

    pub fn a(&self) -> &BoolMatrix {
        &self.a
    }

    pub fn b(&self) -> &BoolMatrix {
        &self.b
    }

    pub fn into_parts(self) -> (BoolMatrix, BoolMatrix) {
        (self.a, self.b)
    }

    pub fn rank(&self) -> usize {
        self.a.cols()
    }

    /// Shape `(m, n)` of the product.
    pub fn product_shape(&self) -> (usize, usize) {
        (self.a.rows(), self.b.cols())
    }

    pub fn product(&self) -> BoolMatrix {
        self.a
            .bool_product(&self.b)
            .expect("FactorPair invariant guarantees compatible shapes")
    }

    /// The rank-1 term `A[:,l] ∘ B[l,:]`.
    pub fn term(&self, l: usize) -> BoolMatrix {
        let (m, n) = self.product_shape();
        BoolMatrix::from_fn(m, n, |i, j| self.a.get(i, l) && self.b.get(l, j))
    }

    /// `(A | A') , (Bᵀ | B'ᵀ)ᵀ`: the pair whose product is the union of
    /// both products.
    pub fn concat(&self, other: &FactorPair) -> Result<FactorPair> {
        Ok(FactorPair {
            a: self.a.concat_cols(&other.a)?,
            b: self.b.concat_rows(&other.b)?,
        })
    }

    pub fn error(&self, x: &BoolMatrix) -> Result<usize> {
        x.hamming_error(&self.product())
    }
}

pub fn boolean_product(f: &FactorPair) -> BoolMatrix {
    f.product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_product(a: &BoolMatrix, b: &BoolMatrix) -> BoolMatrix {
        BoolMatrix::from_fn(a.rows(), b.cols(), |i, j| {
            (0..a.cols()).any(|l| a.get(i, l) && b.get(l, j))
        })
    }

    #[test]
    fn identity_left_factor() {
        let b = BoolMatrix::from_strs(&["11", "01"]).unwrap();
        let p = BoolMatrix::identity(2).bool_product(&b).unwrap();
        assert_eq!(p, b);
    }

    #[test]
    fn rank_one_outer_product() {
        let a = BoolMatrix::from_strs(&["1", "1"]).unwrap();
        let b = BoolMatrix::from_strs(&["11"]).unwrap();
        assert_eq!(a.bool_product(&b).unwrap(), BoolMatrix::ones(2, 2));
    }

    #[test]
    fn product_shape_mismatch() {
        let a = BoolMatrix::zeros(2, 3);
        assert!(matches!(a.bool_product(&a), Err(Error::Dimension { .. })));
        assert!(FactorPair::new(a.clone(), a).is_err());
    }

    #[test]
    fn product_matches_naive_on_wide_rows() {
        // crosses a word boundary
        let a = BoolMatrix::from_fn(5, 3, |i, l| (i + l) % 2 == 0);
        let b = BoolMatrix::from_fn(3, 130, |l, j| (l * 7 + j) % 5 == 0);
        assert_eq!(a.bool_product(&b).unwrap(), naive_product(&a, &b));
    }

    #[test]
    fn union_examples() {
        let x = BoolMatrix::from_strs(&["101", "011"]).unwrap();
        assert_eq!(x.union(&BoolMatrix::zeros(2, 3)).unwrap(), x);
        assert_eq!(x.union(&x).unwrap(), x);
        let l = BoolMatrix::from_strs(&["10"]).unwrap();
        let r = BoolMatrix::from_strs(&["01"]).unwrap();
        assert_eq!(l.union(&r).unwrap(), BoolMatrix::from_strs(&["11"]).unwrap());
        assert!(x.union(&l).is_err());
    }

    #[test]
    fn concat_and_slice_back() {
        let l = BoolMatrix::from_strs(&["1", "0"]).unwrap();
        let r = BoolMatrix::from_strs(&["01", "10"]).unwrap();
        let c = l.concat_cols(&r).unwrap();
        assert_eq!(c, BoolMatrix::from_strs(&["101", "010"]).unwrap());
        assert_eq!(c.slice_cols(0, 1).unwrap(), l);
        assert_eq!(c.slice_cols(1, 3).unwrap(), r);
        assert!(l.concat_cols(&BoolMatrix::zeros(3, 1)).is_err());
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(BoolMatrix::identity(3).transpose(), BoolMatrix::identity(3));
        let x = BoolMatrix::from_strs(&["111", "110"]).unwrap();
        let t = x.transpose();
        assert!(!t.get(2, 1));
        assert_eq!(t.ones_count(), 5);
        assert_eq!(t.transpose(), x);
    }

    #[test]
    fn counting() {
        assert_eq!(BoolMatrix::zeros(4, 5).ones_count(), 0);
        assert_eq!(BoolMatrix::identity(3).ones_count(), 3);
        let x = BoolMatrix::from_fn(3, 70, |i, j| (i + j) % 3 == 0);
        assert_eq!(x.hamming_error(&x).unwrap(), 0);
        assert_eq!(x.hamming_error(&x.not()).unwrap(), 3 * 70);
        assert_eq!(x.not().ones_count(), 3 * 70 - x.ones_count());
    }

    #[test]
    fn dense_format_parse() {
        let m = BoolMatrix::parse_dense("2 2\n10\n01\n").unwrap();
        assert_eq!(m, BoolMatrix::identity(2));
        let m = BoolMatrix::parse_dense("# comment\n# another\n2 2\n10\n01").unwrap();
        assert_eq!(m, BoolMatrix::identity(2));
        assert_eq!(m.to_dense_string(), "2 2\n10\n01\n");
    }

    #[test]
    fn dense_format_errors() {
        for bad in [
            "",
            "2\n10\n01\n",
            "2 x\n10\n01\n",
            "2 2\n10\n0\n",
            "2 2\n10\n02\n",
            "2 2\n10\n",
            "2 2\n10\n01\n11\n",
            "0 2\n",
        ] {
            assert!(
                matches!(BoolMatrix::parse_dense(bad), Err(Error::Parse { .. })),
                "accepted {bad:?}"
            );
        }
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.bm");
        let x = BoolMatrix::from_fn(7, 9, |i, j| (i * j) % 4 == 1);
        write_matrix(&x, &p).unwrap();
        let bytes = fs::read(&p).unwrap();
        let back = read_matrix(&p).unwrap();
        assert_eq!(back, x);
        write_matrix(&back, &p).unwrap();
        assert_eq!(fs::read(&p).unwrap(), bytes);
    }

    #[test]
    fn undercover_relation() {
        let x = BoolMatrix::from_strs(&["110", "011"]).unwrap();
        let d = BoolMatrix::from_strs(&["100", "001"]).unwrap();
        assert!(d.is_undercover_of(&x).unwrap());
        assert!(!x.is_undercover_of(&d).unwrap());
    }
}
