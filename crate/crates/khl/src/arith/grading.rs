use super::error::ArithError;
use super::matrix::SparseMatrix;
use super::ring::Ring;
use super::scalar::{Monomial, Scalar};
use std::collections::BTreeMap;

/// Number of monomials of total degree `t` in `s` variables: C(s+t-1, t).
pub fn monomial_count(s: usize, t: u32) -> usize {
    if s == 0 {
        return if t == 0 { 1 } else { 0 };
    }
    let mut acc: u128 = 1;
    for k in 1..=(t as u128) {
        acc = acc * (s as u128 - 1 + k) / k;
    }
    acc as usize
}

/// All monomials of total degree `t`, lexicographically descending
/// (x^t first, then x^{t-1}y, ..., y^t last in two variables).
pub fn monomials_of_degree(num_vars: usize, t: u32) -> Vec<Monomial> {
    fn rec(vars_left: usize, t: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if vars_left == 1 {
            prefix.push(t);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in (0..=t).rev() {
            prefix.push(a);
            rec(vars_left - 1, t - a, prefix, out);
            prefix.pop();
        }
    }
    if num_vars == 0 {
        return if t == 0 {
            vec![Monomial(Vec::new())]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    rec(num_vars, t, &mut Vec::new(), &mut out);
    out
}

/// Flat basis of the degree-`t` slice of a graded free module: pairs
/// (generator, monomial) grouped by generator, monomials lex-descending.
#[derive(Clone, Debug)]
pub struct SliceIndex {
    pub degree: i64,
    pub gen_degrees: Vec<i64>,
    pub entries: Vec<(usize, Monomial)>,
    lookup: BTreeMap<(usize, Monomial), usize>,
}

impl SliceIndex {
    pub fn build(num_vars: usize, gen_degrees: &[i64], t: i64) -> SliceIndex {
        let mut entries = Vec::new();
        for (g, &d) in gen_degrees.iter().enumerate() {
            let rem = t - d;
            if rem < 0 {
                continue;
            }
            for m in monomials_of_degree(num_vars, rem as u32) {
                entries.push((g, m));
            }
        }
        let lookup = entries
            .iter()
            .enumerate()
            .map(|(k, e)| (e.clone(), k))
            .collect();
        SliceIndex {
            degree: t,
            gen_degrees: gen_degrees.to_vec(),
            entries,
            lookup,
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn position(&self, gen: usize, m: &Monomial) -> Option<usize> {
        self.lookup.get(&(gen, m.clone())).copied()
    }

    /// Flatten a module element (one polynomial per generator) into slice
    /// coordinates over the base field. Errors when a monomial falls
    /// outside this degree slice.
    pub fn slice_vector(&self, ring: &Ring, v: &[Scalar]) -> Result<Vec<Scalar>, ArithError> {
        assert_eq!(v.len(), self.gen_degrees.len());
        if !ring.is_graded() {
            return Err(ArithError::NotGraded(ring.to_string()));
        }
        let base = ring.base_ring();
        let mut out = vec![base.zero(); self.dim()];
        for (g, s) in v.iter().enumerate() {
            match s {
                Scalar::Poly(p) => {
                    for (m, c) in p.terms.iter() {
                        let pos = self.position(g, m).ok_or_else(|| {
                            ArithError::NotGraded(format!(
                                "component {g} has a term outside degree {}",
                                self.degree
                            ))
                        })?;
                        out[pos] = c.clone();
                    }
                }
                other if other.is_zero() => {}
                _ => return Err(ArithError::NotGraded("non-polynomial component".into())),
            }
        }
        Ok(out)
    }

    /// Inverse of `slice_vector`.
    pub fn unslice_vector(&self, ring: &Ring, coords: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coords.len(), self.dim());
        let mut out = vec![ring.zero(); self.gen_degrees.len()];
        for (k, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (g, m) = &self.entries[k];
            let term = ring.monomial(m.clone(), c.clone());
            out[*g] = ring.add(&out[*g], &term);
        }
        out
    }
}

/// Degree-`t` slice of a graded map between graded free modules over a
/// polynomial ring. Every entry must be homogeneous of degree
/// `col_degree - row_degree`; the slice is a matrix over the base field.
pub fn graded_slice(
    m: &SparseMatrix,
    row_degrees: &[i64],
    col_degrees: &[i64],
    t: i64,
) -> Result<(SparseMatrix, SliceIndex, SliceIndex), ArithError> {
    assert_eq!(m.rows, row_degrees.len(), "row degree count");
    assert_eq!(m.cols, col_degrees.len(), "col degree count");
    if !m.ring.is_graded() {
        return Err(ArithError::NotGraded(m.ring.to_string()));
    }
    let base = m.ring.base_ring();
    let nv = m.ring.num_vars();
    let rows_idx = SliceIndex::build(nv, row_degrees, t);
    let cols_idx = SliceIndex::build(nv, col_degrees, t);
    let mut out = SparseMatrix::zero(base, rows_idx.dim(), cols_idx.dim());
    for ((i, j), entry) in m.entries() {
        let want = col_degrees[*j] - row_degrees[*i];
        if want < 0 || !m.ring.is_homogeneous_of(entry, want) {
            return Err(ArithError::NonHomogeneousEntry { row: *i, col: *j });
        }
        let Scalar::Poly(p) = entry else {
            // constant scalars in a poly matrix would have been built as
            // constant polynomials; anything else is malformed
            return Err(ArithError::NonHomogeneousEntry { row: *i, col: *j });
        };
        for (cpos, (g, nu)) in cols_idx.entries.iter().enumerate() {
            if g != j {
                continue;
            }
            for (kappa, coeff) in p.terms.iter() {
                let mu = nu.mul(kappa);
                let rpos = rows_idx
                    .position(*i, &mu)
                    .expect("homogeneous entry lands in the target slice");
                out.add_to(rpos, cpos, coeff);
            }
        }
    }
    Ok((out, rows_idx, cols_idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field_rank;
    use crate::arith::ring::{BaseField, PolyRing};

    fn qxy() -> Ring {
        Ring::Poly(PolyRing {
            base: BaseField::Rat,
            vars: vec!["x".into(), "y".into()],
        })
    }

    #[test]
    fn monomial_counts_and_order() {
        assert_eq!(monomial_count(3, 4), 15);
        assert_eq!(monomial_count(2, 0), 1);
        assert_eq!(monomial_count(0, 3), 0);
        let ms = monomials_of_degree(2, 2);
        assert_eq!(
            ms,
            vec![
                Monomial(vec![2, 0]),
                Monomial(vec![1, 1]),
                Monomial(vec![0, 2])
            ]
        );
        assert_eq!(monomials_of_degree(3, 2).len(), monomial_count(3, 2));
    }

    #[test]
    fn slice_of_the_regular_presentation() {
        // (x y): R(-1)^2 -> R in degree 2 is 3x4 of rank 3
        let r = qxy();
        let x = r.var(0);
        let y = r.var(1);
        let mut m = SparseMatrix::zero(r.clone(), 1, 2);
        m.set(0, 0, x);
        m.set(0, 1, y);
        let (s, ri, ci) = graded_slice(&m, &[0], &[1, 1], 2).unwrap();
        assert_eq!((s.rows, s.cols), (3, 4));
        assert_eq!(ri.dim(), 3);
        assert_eq!(ci.dim(), 4);
        assert_eq!(field_rank(&s).unwrap(), 3);
    }

    #[test]
    fn inhomogeneous_entries_are_rejected() {
        let r = qxy();
        let x = r.var(0);
        let bad = r.add(&x, &r.one()); // x + 1
        let mut m = SparseMatrix::zero(r.clone(), 1, 1);
        m.set(0, 0, bad);
        assert!(graded_slice(&m, &[0], &[1], 1).is_err());
    }

    #[test]
    fn slice_vector_round_trip() {
        let r = qxy();
        let x = r.var(0);
        let y = r.var(1);
        let idx = SliceIndex::build(2, &[0, 1], 2);
        // (x² + 3xy, 2y) in degrees (2, 2) over generators of degree (0, 1)
        let x2 = r.mul(&x, &x);
        let xy3 = r.mul(&r.from_i64(3), &r.mul(&x, &y));
        let v = vec![r.add(&x2, &xy3), r.mul(&r.from_i64(2), &y)];
        let coords = idx.slice_vector(&r, &v).unwrap();
        assert_eq!(coords.len(), idx.dim());
        let back = idx.unslice_vector(&r, &coords);
        assert_eq!(back, v);
    }
}
