use super::ring::Ring;
use super::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;

/// Sparse exact matrix over a fixed ring. Entries are keyed by (row, col)
/// and zero entries are never stored, so structural equality is canonical.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub ring: Ring,
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn zero(ring: Ring, rows: usize, cols: usize) -> Self {
        SparseMatrix {
            ring,
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Self {
        let mut m = SparseMatrix::zero(ring, n, n);
        for i in 0..n {
            let one = m.ring.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_entries<I>(ring: Ring, rows: usize, cols: usize, it: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut m = SparseMatrix::zero(ring, rows, cols);
        for (i, j, s) in it {
            m.add_to(i, j, &s);
        }
        m
    }

    /// Dense construction from row-major i64 data; handy in tests.
    pub fn from_i64_rows(ring: Ring, data: &[&[i64]]) -> Self {
        let rows = data.len();
        let cols = data.first().map(|r| r.len()).unwrap_or(0);
        let mut m = SparseMatrix::zero(ring, rows, cols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                let s = m.ring.from_i64(v);
                m.set(i, j, s);
            }
        }
        m
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if s.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), s);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        let cur = self.get(i, j);
        let next = self.ring.add(&cur, s);
        self.set(i, j, next);
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of range");
        self.entries
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of diagonal entries (square matrices).
    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "trace needs a square matrix");
        let mut t = self.ring.zero();
        for i in 0..self.rows {
            if let Some(s) = self.entries.get(&(i, i)) {
                t = self.ring.add(&t, s);
            }
        }
        t
    }

    /// Entries of column j as (row, value) pairs in row order.
    pub fn col_entries(&self, j: usize) -> Vec<(usize, Scalar)> {
        self.entries
            .iter()
            .filter(|((_, jj), _)| *jj == j)
            .map(|((i, _), s)| (*i, s.clone()))
            .collect()
    }

    /// Column-major adjacency of all entries; used by multiplication.
    pub fn columns(&self) -> Vec<Vec<(usize, Scalar)>> {
        let mut cols = vec![Vec::new(); self.cols];
        for ((i, j), s) in &self.entries {
            cols[*j].push((*i, s.clone()));
        }
        cols
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::zero(self.ring.clone(), self.cols, self.rows);
        for ((i, j), s) in &self.entries {
            t.set(*j, *i, s.clone());
        }
        t
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ring, other.ring);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for ((i, j), s) in &other.entries {
            out.add_to(*i, *j, s);
        }
        out
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.ring.clone(), self.rows, self.cols);
        for ((i, j), s) in &self.entries {
            out.set(*i, *j, self.ring.neg(s));
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.ring.clone(), self.rows, self.cols);
        for ((i, j), s) in &self.entries {
            out.set(*i, *j, self.ring.mul(c, s));
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ring, other.ring, "ring mismatch in mul");
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let my_cols = self.columns();
        let mut out = SparseMatrix::zero(self.ring.clone(), self.rows, other.cols);
        for ((k, j), b) in &other.entries {
            for (i, a) in &my_cols[*k] {
                let prod = self.ring.mul(a, b);
                out.add_to(*i, *j, &prod);
            }
        }
        out
    }

    /// Apply the matrix to a dense column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![self.ring.zero(); self.rows];
        for ((i, j), s) in &self.entries {
            if v[*j].is_zero() {
                continue;
            }
            let prod = self.ring.mul(s, &v[*j]);
            out[*i] = self.ring.add(&out[*i], &prod);
        }
        out
    }

    /// Kronecker product with row index i*other.rows + k, col j*other.cols + l.
    pub fn kronecker(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ring, other.ring);
        let mut out = SparseMatrix::zero(
            self.ring.clone(),
            self.rows * other.rows,
            self.cols * other.cols,
        );
        for ((i, j), a) in &self.entries {
            for ((k, l), b) in &other.entries {
                out.set(
                    i * other.rows + k,
                    j * other.cols + l,
                    self.ring.mul(a, b),
                );
            }
        }
        out
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ring, other.ring);
        let mut out = SparseMatrix::zero(
            self.ring.clone(),
            self.rows + other.rows,
            self.cols + other.cols,
        );
        for ((i, j), s) in &self.entries {
            out.set(*i, *j, s.clone());
        }
        for ((i, j), s) in &other.entries {
            out.set(self.rows + i, self.cols + j, s.clone());
        }
        out
    }

    /// Stack columns of `other` to the right of `self`.
    pub fn hstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ring, other.ring);
        assert_eq!(self.rows, other.rows);
        let mut out = SparseMatrix::zero(self.ring.clone(), self.rows, self.cols + other.cols);
        for ((i, j), s) in &self.entries {
            out.set(*i, *j, s.clone());
        }
        for ((i, j), s) in &other.entries {
            out.set(*i, self.cols + j, s.clone());
        }
        out
    }

    /// Stack vertically: self on top of other.
    pub fn vstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ring, other.ring);
        assert_eq!(self.cols, other.cols);
        let mut out = SparseMatrix::zero(self.ring.clone(), self.rows + other.rows, self.cols);
        for ((i, j), s) in &self.entries {
            out.set(*i, *j, s.clone());
        }
        for ((i, j), s) in &other.entries {
            out.set(self.rows + i, *j, s.clone());
        }
        out
    }

    pub fn from_columns(ring: Ring, rows: usize, cols: &[Vec<Scalar>]) -> SparseMatrix {
        let mut out = SparseMatrix::zero(ring, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, s) in col.iter().enumerate() {
                if !s.is_zero() {
                    out.set(i, j, s.clone());
                }
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        let mut v = vec![self.ring.zero(); self.rows];
        for (i, s) in self.col_entries(j) {
            v[i] = s;
        }
        v
    }

    /// Map every entry into another ring through `f`, keeping the shape.
    pub fn map_ring<F>(&self, ring: Ring, mut f: F) -> SparseMatrix
    where
        F: FnMut(&Scalar) -> Scalar,
    {
        let mut out = SparseMatrix::zero(ring, self.rows, self.cols);
        for ((i, j), s) in &self.entries {
            out.set(*i, *j, f(s));
        }
        out
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} over {}", self.rows, self.cols, self.ring)?;
        for i in 0..self.rows.min(12) {
            let row: Vec<String> = (0..self.cols.min(12))
                .map(|j| self.ring.fmt_scalar(&self.get(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_and_identity() {
        let a = SparseMatrix::from_i64_rows(Ring::Int, &[&[1, 2], &[3, 4]]);
        let id = SparseMatrix::identity(Ring::Int, 2);
        assert_eq!(a.mul(&id), a);
        let b = SparseMatrix::from_i64_rows(Ring::Int, &[&[0, 1], &[1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(ab, SparseMatrix::from_i64_rows(Ring::Int, &[&[2, 1], &[4, 3]]));
    }

    #[test]
    fn kronecker_shape_and_values() {
        let a = SparseMatrix::from_i64_rows(Ring::Int, &[&[1, 2]]);
        let b = SparseMatrix::from_i64_rows(Ring::Int, &[&[3], &[4]]);
        let k = a.kronecker(&b);
        assert_eq!((k.rows, k.cols), (2, 2));
        assert_eq!(k, SparseMatrix::from_i64_rows(Ring::Int, &[&[3, 6], &[4, 8]]));
    }

    #[test]
    fn zero_entries_are_not_stored() {
        let mut a = SparseMatrix::zero(Ring::Int, 2, 2);
        a.set(0, 0, Scalar::Int(5.into()));
        a.add_to(0, 0, &Scalar::Int((-5).into()));
        assert_eq!(a.nnz(), 0);
        assert!(a.is_zero_matrix());
    }
}
