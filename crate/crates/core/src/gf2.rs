//! Arithmetic over the two-element field.
//!
//! Scalars are single bits, vectors and matrix rows are packed into `u64`
//! words. Matrices carry an explicit shape so that the `0 × 0` matrix is a
//! legitimate value (its determinant is 1).
//!
//! Text format for square matrices: `n` lines of `n` characters from
//! `{0,1}`, each line terminated by `\n`, no separators.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Default bound on `n²` for exhaustive matrix enumeration.
pub const DEFAULT_ENUMERATION_CAP_BITS: usize = 25;

/// An element of GF(2).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gf2(bool);

impl Gf2 {
    pub const ZERO: Gf2 = Gf2(false);
    pub const ONE: Gf2 = Gf2(true);

    #[inline]
    pub const fn new(bit: bool) -> Self {
        Gf2(bit)
    }

    #[inline]
    pub const fn is_one(self) -> bool {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        !self.0
    }

    #[inline]
    pub const fn as_u8(self) -> u8 {
        self.0 as u8
    }

    /// `self^e`; every element is idempotent, so this is `self` for `e ≥ 1`.
    #[inline]
    pub const fn pow(self, e: u32) -> Self {
        if e == 0 {
            Gf2::ONE
        } else {
            self
        }
    }
}

impl From<bool> for Gf2 {
    fn from(b: bool) -> Self {
        Gf2(b)
    }
}

impl Add for Gf2 {
    type Output = Gf2;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
    fn add(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl AddAssign for Gf2 {
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Gf2) {
        self.0 ^= rhs.0;
    }
}

impl Mul for Gf2 {
    type Output = Gf2;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
    fn mul(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 & rhs.0)
    }
}

impl MulAssign for Gf2 {
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]
    fn mul_assign(&mut self, rhs: Gf2) {
        self.0 &= rhs.0;
    }
}

impl std::iter::Sum for Gf2 {
    fn sum<I: Iterator<Item = Gf2>>(iter: I) -> Gf2 {
        iter.fold(Gf2::ZERO, |a, b| a + b)
    }
}

impl std::iter::Product for Gf2 {
    fn product<I: Iterator<Item = Gf2>>(iter: I) -> Gf2 {
        iter.fold(Gf2::ONE, |a, b| a * b)
    }
}

impl fmt::Display for Gf2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_u8())
    }
}

impl Serialize for Gf2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.as_u8())
    }
}

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// A packed vector over GF(2) of fixed length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gf2Vector {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vector {
    pub fn zeros(len: usize) -> Self {
        Gf2Vector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, Gf2::ONE);
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> Gf2 {
        debug_assert!(i < self.len);
        Gf2((self.words[i / 64] >> (i % 64)) & 1 == 1)
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: Gf2) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value.is_one() {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `self += other` (XOR).
    pub fn add_assign_vec(&mut self, other: &Gf2Vector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Indices of the nonzero coordinates, increasing.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn dot(&self, other: &Gf2Vector) -> Gf2 {
        debug_assert_eq!(self.len, other.len);
        let parity = self
            .words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
        Gf2(parity & 1 == 1)
    }
}

/// A dense GF(2) matrix with packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    n_rows: usize,
    n_cols: usize,
    row_words: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        let row_words = words_for(n_cols);
        Gf2Matrix {
            n_rows,
            n_cols,
            row_words,
            data: vec![0; n_rows * row_words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Gf2::ONE);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 values.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(n_rows, n_cols);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n_cols {
                return Err(Error::Dimension(format!(
                    "row {} has {} entries, expected {}",
                    r,
                    row.len(),
                    n_cols
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => m.set(r, c, Gf2::ONE),
                    _ => {
                        return Err(Error::Domain(format!(
                            "entry ({r}, {c}) is {v}, not a bit"
                        )))
                    }
                }
            }
        }
        Ok(m)
    }

    /// The `n × n` matrix whose row-major bits, read with entry `(0,0)` as the
    /// most significant, spell `index`. This is the lexicographic enumeration
    /// order used everywhere in the crate.
    pub fn from_index(n: usize, index: u64) -> Self {
        let bits = n * n;
        debug_assert!(bits <= 64);
        let mut m = Self::zeros(n, n);
        for pos in 0..bits {
            if (index >> (bits - 1 - pos)) & 1 == 1 {
                m.set(pos / n, pos % n, Gf2::ONE);
            }
        }
        m
    }

    /// Inverse of [`Gf2Matrix::from_index`].
    pub fn to_index(&self) -> Option<u64> {
        let bits = self.n_rows * self.n_cols;
        if !self.is_square() || bits > 64 {
            return None;
        }
        let mut idx = 0u64;
        for r in 0..self.n_rows {
            for c in 0..self.n_cols {
                idx = (idx << 1) | self.get(r, c).as_u8() as u64;
            }
        }
        Some(idx)
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Gf2 {
        debug_assert!(r < self.n_rows && c < self.n_cols);
        Gf2((self.data[r * self.row_words + c / 64] >> (c % 64)) & 1 == 1)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Gf2) {
        debug_assert!(r < self.n_rows && c < self.n_cols);
        let w = &mut self.data[r * self.row_words + c / 64];
        let mask = 1u64 << (c % 64);
        if v.is_one() {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    fn row_slice(&self, r: usize) -> &[u64] {
        &self.data[r * self.row_words..(r + 1) * self.row_words]
    }

    pub fn row(&self, r: usize) -> Gf2Vector {
        Gf2Vector {
            len: self.n_cols,
            words: self.row_slice(r).to_vec(),
        }
    }

    pub fn set_row(&mut self, r: usize, v: &Gf2Vector) {
        assert_eq!(v.len(), self.n_cols);
        let rw = self.row_words;
        self.data[r * rw..(r + 1) * rw].copy_from_slice(&v.words);
    }

    pub fn trace(&self) -> Gf2 {
        (0..self.n_rows.min(self.n_cols))
            .map(|i| self.get(i, i))
            .sum()
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.n_cols, self.n_rows);
        for r in 0..self.n_rows {
            for c in 0..self.n_cols {
                if self.get(r, c).is_one() {
                    t.set(c, r, Gf2::ONE);
                }
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Gf2Matrix) -> Result<Gf2Matrix> {
        if self.n_cols != rhs.n_rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.n_rows, self.n_cols, rhs.n_rows, rhs.n_cols
            )));
        }
        let mut out = Gf2Matrix::zeros(self.n_rows, rhs.n_cols);
        let rw = out.row_words;
        for r in 0..self.n_rows {
            for k in 0..self.n_cols {
                if self.get(r, k).is_one() {
                    let src = rhs.row_slice(k);
                    for (dst, s) in out.data[r * rw..(r + 1) * rw].iter_mut().zip(src) {
                        *dst ^= s;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Determinant over GF(2) by Gaussian elimination. `det` of the `0 × 0`
    /// matrix is 1.
    pub fn det(&self) -> Result<Gf2> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "determinant of non-square {}x{} matrix",
                self.n_rows, self.n_cols
            )));
        }
        let n = self.n_rows;
        let rw = self.row_words;
        let mut rows: Vec<&[u64]> = Vec::with_capacity(n);
        for r in 0..n {
            rows.push(&self.data[r * rw..(r + 1) * rw]);
        }
        let mut work: Vec<Vec<u64>> = rows.into_iter().map(<[u64]>::to_vec).collect();
        for col in 0..n {
            let (w, bit) = (col / 64, 1u64 << (col % 64));
            let Some(pivot) = (col..n).find(|&r| work[r][w] & bit != 0) else {
                return Ok(Gf2::ZERO);
            };
            work.swap(col, pivot);
            let (head, tail) = work.split_at_mut(col + 1);
            let pivot_row = &head[col];
            for row in tail.iter_mut() {
                if row[w] & bit != 0 {
                    for (a, b) in row.iter_mut().zip(pivot_row) {
                        *a ^= b;
                    }
                }
            }
        }
        Ok(Gf2::ONE)
    }

    /// Restriction to the rows and columns in `idx` (0-based), taken in
    /// increasing order. Duplicates are ignored.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Result<Gf2Matrix> {
        if !self.is_square() {
            return Err(Error::Dimension(format!(
                "principal submatrix of non-square {}x{} matrix",
                self.n_rows, self.n_cols
            )));
        }
        let mut sorted = idx.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&i| i >= self.n_rows) {
            return Err(Error::Bounds {
                index: bad,
                size: self.n_rows,
            });
        }
        let k = sorted.len();
        let mut out = Gf2Matrix::zeros(k, k);
        for (r, &i) in sorted.iter().enumerate() {
            for (c, &j) in sorted.iter().enumerate() {
                out.set(r, c, self.get(i, j));
            }
        }
        Ok(out)
    }

    /// Rows as strings of `0`/`1` characters.
    pub fn row_strings(&self) -> Vec<String> {
        (0..self.n_rows)
            .map(|r| {
                (0..self.n_cols)
                    .map(|c| if self.get(r, c).is_one() { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }

    /// Serializes in the matrix text format.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.n_rows * (self.n_cols + 1));
        for row in self.row_strings() {
            s.push_str(&row);
            s.push('\n');
        }
        s
    }

    /// Parses the matrix text format. Line and column numbers in errors are
    /// 1-based.
    pub fn parse_text(text: &str) -> Result<Gf2Matrix> {
        if text.is_empty() {
            return Err(Error::parse(1, 1, "empty matrix file"));
        }
        let body = match text.strip_suffix('\n') {
            Some(b) => b,
            None => {
                let line = text.split('\n').count();
                let col = text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
                return Err(Error::parse(line, col, "missing trailing newline"));
            }
        };
        let lines: Vec<&str> = body.split('\n').collect();
        let n = lines.len();
        let mut m = Gf2Matrix::zeros(n, n);
        for (r, line) in lines.iter().enumerate() {
            let mut count = 0;
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => {
                        if c < n {
                            m.set(r, c, Gf2::ONE);
                        }
                    }
                    other => {
                        return Err(Error::parse(
                            r + 1,
                            c + 1,
                            format!("unexpected character {other:?}, expected '0' or '1'"),
                        ))
                    }
                }
                count += 1;
                if count > n {
                    return Err(Error::parse(
                        r + 1,
                        c + 1,
                        format!("row longer than {n} entries (matrix must be square)"),
                    ));
                }
            }
            if count < n {
                return Err(Error::parse(
                    r + 1,
                    count + 1,
                    format!("row has {count} entries, expected {n} (matrix must be square)"),
                ));
            }
        }
        Ok(m)
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Matrix{:?}", self.row_strings())
    }
}

impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Gf2Matrix {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Gf2Matrix::parse_text(s)
    }
}

impl Serialize for Gf2Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.row_strings().serialize(s)
    }
}

/// Deterministic stream over every `n × n` GF(2) matrix in lexicographic bit
/// order.
#[derive(Clone, Debug)]
pub struct MatrixEnumerator {
    n: usize,
    next: u64,
    end: u64,
}

impl MatrixEnumerator {
    pub fn total(&self) -> u64 {
        self.end
    }
}

impl Iterator for MatrixEnumerator {
    type Item = Gf2Matrix;

    fn next(&mut self) -> Option<Gf2Matrix> {
        if self.next >= self.end {
            return None;
        }
        let m = Gf2Matrix::from_index(self.n, self.next);
        self.next += 1;
        Some(m)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = (self.end - self.next) as usize;
        (rest, Some(rest))
    }
}

impl ExactSizeIterator for MatrixEnumerator {}

/// Number of `n × n` matrices, after checking `n² ≤ cap_bits`.
pub fn matrix_space_size(n: usize, cap_bits: usize) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("matrix size must be at least 1".into()));
    }
    let bits = n.saturating_mul(n);
    if bits > cap_bits || bits > 63 {
        return Err(Error::Capacity {
            what: "matrix bit count n^2",
            requested: bits,
            cap: cap_bits.min(63),
        });
    }
    Ok(1u64 << bits)
}

/// Every `n × n` matrix exactly once, using the default cap of 25 bits.
pub fn enumerate_matrices(n: usize) -> Result<MatrixEnumerator> {
    enumerate_matrices_with_cap(n, DEFAULT_ENUMERATION_CAP_BITS)
}

pub fn enumerate_matrices_with_cap(n: usize, cap_bits: usize) -> Result<MatrixEnumerator> {
    let end = matrix_space_size(n, cap_bits)?;
    Ok(MatrixEnumerator { n, next: 0, end })
}
