//! Dense square matrices over GF(2).
//!
//! Rows are word-packed bitsets, so a row operation is a handful of XORs and
//! elimination runs in O(n^2 * n / 64).

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A square bit-matrix. Bit `(i, j)` is the entry in row `i`, column `j`.
///
/// Symmetry is not an invariant of this type; operations that need it check.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Matrix {
    n: usize,
    rows: Vec<FixedBitSet>,
}

/// Row-swap-free elimination hit a zero on the diagonal at this index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroPivot(pub usize);

impl Gf2Matrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            rows: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.rows[i].insert(i);
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if f(i, j) {
                    m.rows[i].insert(j);
                }
            }
        }
        m
    }

    /// Builds a matrix from rows of 0/1 entries (any nonzero counts as 1).
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.rows[i].insert(j);
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix from row bitsets; each must have length `n = rows.len()`.
    pub fn from_bitsets(rows: Vec<FixedBitSet>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                left: n,
                right: bad.len(),
            });
        }
        Ok(Self { n, rows })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    pub fn row(&self, i: usize) -> &FixedBitSet {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[FixedBitSet] {
        &self.rows
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) as u8).collect())
            .collect()
    }

    /// Number of ones in column `j`.
    pub fn column_weight(&self, j: usize) -> usize {
        self.rows.iter().filter(|r| r.contains(j)).count()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for (i, row) in self.rows.iter().enumerate() {
            for j in row.ones() {
                t.rows[j].insert(i);
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, row)| row.ones().all(|j| j >= i))
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.n)?;
        let mut out = Self::zeros(self.n);
        for (i, row) in self.rows.iter().enumerate() {
            for k in row.ones() {
                out.rows[i].symmetric_difference_with(&other.rows[k]);
            }
        }
        Ok(out)
    }

    /// Returns `P^T A P` where `P` encodes `p`: entry `(i, j)` of the result is
    /// entry `(p[i], p[j])` of `self`.
    pub fn conjugate_by_permutation(&self, p: &Permutation) -> Result<Self> {
        self.check_dim(p.len())?;
        let map = p.as_slice();
        Ok(Self::from_fn(self.n, |i, j| self.get(map[i], map[j])))
    }

    /// GF(2) rank, by elimination with pivot search.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.n {
            let Some(pivot) = (rank..self.n).find(|&r| rows[r].contains(col)) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for r in rank + 1..self.n {
                if rows[r].contains(col) {
                    rows[r].symmetric_difference_with(&pivot_row);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.n
    }

    /// Gaussian elimination with no row swaps. On success returns the
    /// upper-triangular echelon form; otherwise the first diagonal position
    /// that was zero when reached.
    pub fn eliminate_without_swaps(&self) -> std::result::Result<Self, ZeroPivot> {
        let mut m = self.clone();
        for k in 0..self.n {
            if !m.rows[k].contains(k) {
                return Err(ZeroPivot(k));
            }
            let pivot_row = m.rows[k].clone();
            for r in k + 1..self.n {
                if m.rows[r].contains(k) {
                    m.rows[r].symmetric_difference_with(&pivot_row);
                }
            }
        }
        Ok(m)
    }

    /// True iff every leading principal submatrix is invertible.
    pub fn is_lpn(&self) -> bool {
        self.eliminate_without_swaps().is_ok()
    }

    /// The upper-triangular, unit-diagonal `U` with `U^T U = self`, if one
    /// exists. Such a root exists exactly when `self` is LPN, and is then
    /// unique.
    pub fn cholesky_root(&self) -> Result<Option<Self>> {
        Ok(self.cholesky_or_pivot()?.ok())
    }

    /// Like [`cholesky_root`](Self::cholesky_root) but reports which pivot failed.
    pub fn cholesky_or_pivot(&self) -> Result<std::result::Result<Self, ZeroPivot>> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let mut work = self.rows.clone();
        let mut root = Self::zeros(self.n);
        for k in 0..self.n {
            if !work[k].contains(k) {
                return Ok(Err(ZeroPivot(k)));
            }
            // Subtract the outer product u_k u_k^T from the residual.
            let u = work[k].clone();
            for j in u.ones() {
                work[j].symmetric_difference_with(&u);
            }
            root.rows[k] = u;
        }
        debug_assert!(work.iter().all(|r| r.is_clear()));
        Ok(Ok(root))
    }

    fn check_dim(&self, other: usize) -> Result<()> {
        if self.n == other {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                left: self.n,
                right: other,
            })
        }
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Matrix[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, " ")?;
            }
            for j in 0..self.n {
                write!(f, "{}", self.get(i, j) as u8)?;
            }
        }
        write!(f, "]")
    }
}

/// Text form: `n` on the first line, then `n` lines of `n` characters from `{0,1}`.
impl fmt::Display for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for i in 0..self.n {
            for j in 0..self.n {
                write!(f, "{}", self.get(i, j) as u8)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for Gf2Matrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = crate::text::content_lines(s);
        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing dimension line"))?;
        let n: usize = header
            .parse()
            .map_err(|_| Error::parse(line_no, format!("expected dimension, got `{header}`")))?;
        parse_matrix_rows(n, &mut lines)
    }
}

pub(crate) fn parse_matrix_rows<'a>(
    n: usize,
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
) -> Result<Gf2Matrix> {
    let mut m = Gf2Matrix::zeros(n);
    for i in 0..n {
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| Error::parse(i + 2, format!("expected {n} matrix rows, got {i}")))?;
        let bits: Vec<char> = line.chars().filter(|c| !c.is_whitespace()).collect();
        if bits.len() != n {
            return Err(Error::parse(
                line_no,
                format!("row has {} entries, expected {n}", bits.len()),
            ));
        }
        for (j, c) in bits.into_iter().enumerate() {
            match c {
                '0' => {}
                '1' => m.rows[i].insert(j),
                other => {
                    return Err(Error::parse(line_no, format!("unexpected character `{other}`")))
                }
            }
        }
    }
    if let Some((line_no, extra)) = lines.next() {
        return Err(Error::parse(line_no, format!("trailing content `{extra}`")));
    }
    Ok(m)
}

/// A bijection on `0..n`, stored as the image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = FixedBitSet::with_capacity(n);
        for &x in &map {
            if x >= n || seen.put(x) {
                return Err(Error::InvalidPermutation(n));
            }
        }
        Ok(Self { map })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n).collect(),
        }
    }

    pub fn reversal(n: usize) -> Self {
        Self {
            map: (0..n).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &x) in self.map.iter().enumerate() {
            inv[x] = i;
        }
        Self { map: inv }
    }
}
