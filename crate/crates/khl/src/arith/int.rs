use super::matrix::SparseMatrix;
use super::ring::Ring;
use num::{BigInt, Integer, Signed, Zero};
use std::fmt;

/// Dense integer matrix used for normal forms. Kept separate from
/// `SparseMatrix` because row/column operations on dense storage are the
/// hot path of every structural computation in the crate.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::from(1));
        }
        m
    }

    pub fn from_i64_rows(data: &[&[i64]]) -> Self {
        let rows = data.len();
        let cols = data.first().map(|r| r.len()).unwrap_or(0);
        let mut m = IntMat::zero(rows, cols);
        for (i, row) in data.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        m
    }

    /// Interpret a sparse matrix with integer-valued entries as an `IntMat`.
    /// Panics if an entry has no integer value (use only on Int/Rat data
    /// that is known to be integral).
    pub fn from_sparse(m: &SparseMatrix) -> Self {
        let mut out = IntMat::zero(m.rows, m.cols);
        for ((i, j), s) in m.entries() {
            let v = s
                .as_bigint()
                .unwrap_or_else(|| panic!("non-integer entry at ({i},{j})"));
            out.set(*i, *j, v);
        }
        out
    }

    /// Push the integer entries into an arbitrary coefficient ring.
    pub fn to_sparse(&self, ring: &Ring) -> SparseMatrix {
        let mut out = SparseMatrix::zero(ring.clone(), self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    out.set(i, j, ring.from_bigint(v));
                }
            }
        }
        out
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = IntMat::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = IntMat::zero(self.rows, other.cols);
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
                    let cur = out.get(i, j) + a * b;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += c * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(dst, j) + c * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += c * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, dst) + c * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    pub fn rank(&self) -> usize {
        col_hermite(self).rank()
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMat {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Smith normal form `a = u * d * v` with unimodular `u`, `v` and tracked
/// inverses, so `u_inv * a * v_inv = d`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub d: IntMat,
    pub u: IntMat,
    pub u_inv: IntMat,
    pub v: IntMat,
    pub v_inv: IntMat,
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Basis of the kernel lattice of `a` (columns).
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let r = self.rank();
        (r..self.d.cols).map(|j| self.v_inv.column(j)).collect()
    }

    /// Saturated column-space basis: columns of `u` spanning im(a) ⊗ Q ∩ Z^m.
    /// The honest lattice image is spanned by `factors[i] * column(i)`.
    pub fn image_saturation(&self) -> Vec<Vec<BigInt>> {
        (0..self.rank()).map(|j| self.u.column(j)).collect()
    }
}

/// Deterministic Smith normal form. Pivot choice is pinned: the entry of
/// smallest absolute value in the remaining block, ties broken by (row, col).
pub fn smith_normal_form(a: &IntMat) -> SnfResult {
    let (m, n) = (a.rows, a.cols);
    let mut w = a.clone();
    // left * a * right = w is maintained throughout; u/v are their inverses.
    let mut left = IntMat::identity(m); // u_inv
    let mut u = IntMat::identity(m);
    let mut right = IntMat::identity(n); // v_inv
    let mut v = IntMat::identity(n);

    let find_pivot = |w: &IntMat, t: usize| -> Option<(usize, usize)> {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for i in t..w.rows {
            for j in t..w.cols {
                let val = w.get(i, j);
                if val.is_zero() {
                    continue;
                }
                let a = val.abs();
                match &best {
                    Some((ba, _, _)) if a >= *ba => {}
                    _ => best = Some((a, i, j)),
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    };

    let mut t = 0;
    while t < m.min(n) {
        if find_pivot(&w, t).is_none() {
            break;
        }
        loop {
            let (pi, pj) = find_pivot(&w, t).expect("pivot vanished");
            if pi != t {
                w.swap_rows(t, pi);
                left.swap_rows(t, pi);
                u.swap_cols(t, pi);
            }
            if pj != t {
                w.swap_cols(t, pj);
                right.swap_cols(t, pj);
                v.swap_rows(t, pj);
            }
            let p = w.get(t, t).clone();
            let mut dirty = false;
            // clear column t with euclidean steps (remainder => re-select pivot)
            for i in t + 1..m {
                if w.get(i, t).is_zero() {
                    continue;
                }
                let (q, r) = w.get(i, t).div_rem(&p);
                let c = -q.clone();
                w.row_axpy(i, t, &c);
                left.row_axpy(i, t, &c);
                u.col_axpy(t, i, &q);
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // clear row t
            for j in t + 1..n {
                if w.get(t, j).is_zero() {
                    continue;
                }
                let (q, r) = w.get(t, j).div_rem(&p);
                let c = -q.clone();
                w.col_axpy(j, t, &c);
                right.col_axpy(j, t, &c);
                v.row_axpy(t, j, &q);
                if !r.is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility sweep: every remaining entry must be divisible by p
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !w.get(i, j).mod_floor(&p).is_zero());
            match offender {
                Some((i, _)) => {
                    let one = BigInt::from(1);
                    let neg_one = BigInt::from(-1);
                    w.row_axpy(t, i, &one);
                    left.row_axpy(t, i, &one);
                    u.col_axpy(i, t, &neg_one);
                }
                None => break,
            }
        }
        if w.get(t, t).is_negative() {
            w.negate_row(t);
            left.negate_row(t);
            u.negate_col(t);
        }
        t += 1;
    }

    let factors: Vec<BigInt> = (0..m.min(n))
        .map(|i| w.get(i, i).clone())
        .take_while(|f| !f.is_zero())
        .collect();
    debug_assert!(factors
        .windows(2)
        .all(|p| p[1].mod_floor(&p[0]).is_zero()));

    SnfResult {
        d: w,
        u,
        u_inv: left,
        v,
        v_inv: right,
        factors,
    }
}

/// Column Hermite normal form `a * t = h`: `t` unimodular, `h` a lower
/// staircase with positive pivots, zeros to the right of each pivot, and
/// earlier columns reduced into `[0, pivot)` at every pivot row.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: IntMat,
    pub t: IntMat,
    /// For each pivot column c (0-based), the row holding its pivot.
    pub pivot_rows: Vec<usize>,
}

impl Hermite {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    /// Kernel lattice basis: the trailing columns of `t`.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        (self.rank()..self.t.cols)
            .map(|j| self.t.column(j))
            .collect()
    }

    /// Canonical basis of the column-space lattice: the pivot columns of `h`.
    pub fn image_basis(&self) -> Vec<Vec<BigInt>> {
        (0..self.rank()).map(|j| self.h.column(j)).collect()
    }

    /// Solve `a * x = b` over the integers; `None` when `b` is outside the
    /// column-space lattice.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.h.rows);
        let mut residue = b.to_vec();
        let mut coeffs = vec![BigInt::zero(); self.t.cols];
        for c in 0..self.rank() {
            let r = self.pivot_rows[c];
            let p = self.h.get(r, c);
            let (q, rem) = residue[r].div_rem(p);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for i in 0..self.h.rows {
                    let v = &residue[i] - &q * self.h.get(i, c);
                    residue[i] = v;
                }
            }
            coeffs[c] = q;
        }
        if residue.iter().any(|v| !v.is_zero()) {
            return None;
        }
        Some(self.t.apply(&coeffs))
    }

    pub fn contains(&self, b: &[BigInt]) -> bool {
        self.solve(b).is_some()
    }
}

pub fn col_hermite(a: &IntMat) -> Hermite {
    let (m, n) = (a.rows, a.cols);
    let mut h = a.clone();
    let mut t = IntMat::identity(n);
    let mut pivot_rows = Vec::new();
    let mut pc = 0usize; // next pivot column
    for i in 0..m {
        if pc == n {
            break;
        }
        // gcd-collapse the active part of row i into column pc
        loop {
            let jmin = (pc..n)
                .filter(|&j| !h.get(i, j).is_zero())
                .min_by(|&a0, &b0| h.get(i, a0).abs().cmp(&h.get(i, b0).abs()));
            let Some(jmin) = jmin else { break };
            h.swap_cols(pc, jmin);
            t.swap_cols(pc, jmin);
            let p = h.get(i, pc).clone();
            let mut any = false;
            for j in pc + 1..n {
                if h.get(i, j).is_zero() {
                    continue;
                }
                let (q, r) = h.get(i, j).div_rem(&p);
                let c = -q.clone();
                h.col_axpy(j, pc, &c);
                t.col_axpy(j, pc, &c);
                if !r.is_zero() {
                    any = true;
                }
            }
            if !any {
                break;
            }
        }
        if h.get(i, pc).is_zero() {
            continue;
        }
        if h.get(i, pc).is_negative() {
            h.negate_col(pc);
            t.negate_col(pc);
        }
        let p = h.get(i, pc).clone();
        // canonical reduction of earlier columns at this pivot row
        for j in 0..pc {
            let q = h.get(i, j).div_floor(&p);
            if !q.is_zero() {
                let c = -q.clone();
                h.col_axpy(j, pc, &c);
                t.col_axpy(j, pc, &c);
            }
        }
        pivot_rows.push(i);
        pc += 1;
    }
    Hermite { h, t, pivot_rows }
}

/// True when the square matrix has an integer inverse.
pub fn is_unimodular(a: &IntMat) -> bool {
    a.rows == a.cols && col_hermite(a).h == IntMat::identity(a.rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn snf_two_by_two() {
        // gcd of entries 2; |det| = 8 forces the factors (2, 4)
        let a = IntMat::from_i64_rows(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.factors, vec![big(2), big(4)]);
        assert_eq!(s.u.mul(&s.d).mul(&s.v), a);
        assert_eq!(s.u.mul(&s.u_inv), IntMat::identity(2));
        assert_eq!(s.v.mul(&s.v_inv), IntMat::identity(2));
        assert_eq!(s.u_inv.mul(&a).mul(&s.v_inv), s.d);
    }

    #[test]
    fn snf_rectangular_and_zero() {
        let a = IntMat::from_i64_rows(&[&[0, 0, 0], &[0, 5, 0]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.factors, vec![big(5)]);
        let z = IntMat::zero(3, 2);
        assert!(smith_normal_form(&z).factors.is_empty());
    }

    #[test]
    fn hermite_kernel_oracle() {
        let a = IntMat::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6]]);
        let h = col_hermite(&a);
        assert_eq!(a.mul(&h.t), h.h);
        assert!(is_unimodular(&h.t));
        assert_eq!(h.rank(), 2);
        let k = h.kernel();
        assert_eq!(k.len(), 1);
        // kernel is spanned by (1, -2, 1) up to sign
        let g = &k[0];
        let target = [big(1), big(-2), big(1)];
        let matches = g.iter().zip(&target).all(|(x, y)| x == y)
            || g.iter().zip(&target).all(|(x, y)| *x == -y);
        assert!(matches, "kernel basis was {:?}", g);
    }

    #[test]
    fn hermite_solve_and_membership() {
        let a = IntMat::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let h = col_hermite(&a);
        let x = h.solve(&[big(4), big(9)]).expect("solvable");
        assert_eq!(a.apply(&x), vec![big(4), big(9)]);
        assert!(h.solve(&[big(1), big(0)]).is_none());
        assert!(h.contains(&[big(-2), big(6)]));
    }

    #[test]
    fn unimodularity() {
        assert!(is_unimodular(&IntMat::from_i64_rows(&[&[1, 1], &[0, 1]])));
        assert!(!is_unimodular(&IntMat::from_i64_rows(&[&[2, 0], &[0, 1]])));
        assert!(!is_unimodular(&IntMat::from_i64_rows(&[&[1, 0]])));
    }

    #[test]
    fn snf_kernel_and_image() {
        let a = IntMat::from_i64_rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.rank(), 2);
        assert_eq!(s.factors, vec![big(1), big(3)]);
        for k in s.kernel() {
            assert!(a.apply(&k).iter().all(|v| v.is_zero()));
        }
    }

    proptest::proptest! {
        #[test]
        fn snf_properties(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-9i64..=9, 16)) {
            let mut a = IntMat::zero(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    a.set(i, j, big(seed[i * cols + j]));
                }
            }
            let s = smith_normal_form(&a);
            proptest::prop_assert_eq!(s.u.mul(&s.d).mul(&s.v), a.clone());
            proptest::prop_assert_eq!(s.u.mul(&s.u_inv), IntMat::identity(rows));
            proptest::prop_assert_eq!(s.v.mul(&s.v_inv), IntMat::identity(cols));
            proptest::prop_assert!(s.factors.windows(2).all(|p| p[1].mod_floor(&p[0]).is_zero()));
            let h = col_hermite(&a);
            proptest::prop_assert_eq!(a.mul(&h.t), h.h.clone());
            proptest::prop_assert!(is_unimodular(&h.t));
            proptest::prop_assert_eq!(h.rank(), s.rank());
            proptest::prop_assert_eq!(a.transpose().rank(), s.rank());
            for k in h.kernel() {
                proptest::prop_assert!(a.apply(&k).iter().all(|v| v.is_zero()));
            }
        }
    }
}
