use super::label::Label;
use crate::arith::{graded_slice, ArithError, Ring, Scalar, SliceIndex, SparseMatrix};
use std::collections::HashMap;

/// A free module with an ordered, labelled basis. For graded rings every
/// generator carries a degree; ungraded rings keep all degrees at zero.
#[derive(Clone, Debug)]
pub struct BasedFreeModule {
    pub ring: Ring,
    pub labels: Vec<Label>,
    pub degrees: Vec<i64>,
    index: HashMap<Label, usize>,
}

impl PartialEq for BasedFreeModule {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.labels == other.labels && self.degrees == other.degrees
    }
}
impl Eq for BasedFreeModule {}

impl BasedFreeModule {
    pub fn new(ring: Ring, labels: Vec<Label>, degrees: Vec<i64>) -> Self {
        assert_eq!(labels.len(), degrees.len());
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        BasedFreeModule {
            ring,
            labels,
            degrees,
            index,
        }
    }

    /// Standard free module of the given rank with generators `e0..e{r-1}`.
    pub fn standard(ring: Ring, rank: usize) -> Self {
        Self::with_degrees(ring, &vec![0; rank])
    }

    /// Free module with one generator per listed degree.
    pub fn with_degrees(ring: Ring, degrees: &[i64]) -> Self {
        let labels = (0..degrees.len()).map(Label::E).collect();
        Self::new(ring, labels, degrees.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn position(&self, l: &Label) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.ring.zero(); self.dim()];
        v[i] = self.ring.one();
        v
    }

    pub fn is_graded(&self) -> bool {
        self.ring.is_graded()
    }
}

/// A map of based free modules, stored as a (target-dim × source-dim)
/// matrix: column j is the image of source generator j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: BasedFreeModule,
    pub target: BasedFreeModule,
    pub matrix: SparseMatrix,
}

impl ModuleMap {
    pub fn new(source: BasedFreeModule, target: BasedFreeModule, matrix: SparseMatrix) -> Self {
        assert_eq!(source.ring, target.ring, "ring mismatch");
        assert_eq!(matrix.ring, source.ring, "matrix ring mismatch");
        assert_eq!(matrix.rows, target.dim(), "target dimension mismatch");
        assert_eq!(matrix.cols, source.dim(), "source dimension mismatch");
        ModuleMap {
            source,
            target,
            matrix,
        }
    }

    /// Build column-by-column: `col(j)` lists the image of generator j as
    /// (target position, coefficient) pairs.
    pub fn from_fn<F>(source: BasedFreeModule, target: BasedFreeModule, mut col: F) -> Self
    where
        F: FnMut(usize) -> Vec<(usize, Scalar)>,
    {
        let mut m = SparseMatrix::zero(source.ring.clone(), target.dim(), source.dim());
        for j in 0..source.dim() {
            for (i, c) in col(j) {
                m.add_to(i, j, &c);
            }
        }
        ModuleMap::new(source, target, m)
    }

    pub fn identity(m: &BasedFreeModule) -> Self {
        let mat = SparseMatrix::identity(m.ring.clone(), m.dim());
        ModuleMap::new(m.clone(), m.clone(), mat)
    }

    pub fn zero(source: &BasedFreeModule, target: &BasedFreeModule) -> Self {
        let mat = SparseMatrix::zero(source.ring.clone(), target.dim(), source.dim());
        ModuleMap::new(source.clone(), target.clone(), mat)
    }

    /// Scalar multiple of the identity.
    pub fn scalar(m: &BasedFreeModule, c: &Scalar) -> Self {
        let mat = SparseMatrix::identity(m.ring.clone(), m.dim()).scale(c);
        ModuleMap::new(m.clone(), m.clone(), mat)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero_matrix()
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        assert_eq!(
            other.target, self.source,
            "composition endpoint mismatch"
        );
        ModuleMap::new(
            other.source.clone(),
            self.target.clone(),
            self.matrix.mul(&other.matrix),
        )
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        ModuleMap::new(
            self.source.clone(),
            self.target.clone(),
            self.matrix.add(&other.matrix),
        )
    }

    pub fn sub(&self, other: &ModuleMap) -> ModuleMap {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ModuleMap {
        ModuleMap::new(self.source.clone(), self.target.clone(), self.matrix.neg())
    }

    pub fn scale(&self, c: &Scalar) -> ModuleMap {
        ModuleMap::new(
            self.source.clone(),
            self.target.clone(),
            self.matrix.scale(c),
        )
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.apply(v)
    }

    /// Check every entry is homogeneous of degree
    /// `source.degrees[j] - target.degrees[i]` (graded rings only).
    pub fn validate_graded(&self) -> Result<(), ArithError> {
        if !self.source.ring.is_graded() {
            return Ok(());
        }
        for ((i, j), s) in self.matrix.entries() {
            let want = self.source.degrees[*j] - self.target.degrees[*i];
            if want < 0 || !self.source.ring.is_homogeneous_of(s, want) {
                return Err(ArithError::NonHomogeneousEntry { row: *i, col: *j });
            }
        }
        Ok(())
    }

    /// Degree-`t` slice of a graded map, as a matrix over the base field.
    pub fn slice(&self, t: i64) -> Result<(SparseMatrix, SliceIndex, SliceIndex), ArithError> {
        graded_slice(&self.matrix, &self.target.degrees, &self.source.degrees, t)
    }
}

/// Direct sum with `Part(i, _)` labels and an index offset per summand.
pub fn direct_sum(parts: &[&BasedFreeModule]) -> BasedFreeModule {
    assert!(!parts.is_empty());
    let ring = parts[0].ring.clone();
    let mut labels = Vec::new();
    let mut degrees = Vec::new();
    for (k, p) in parts.iter().enumerate() {
        assert_eq!(p.ring, ring, "ring mismatch in direct sum");
        for (l, d) in p.labels.iter().zip(&p.degrees) {
            labels.push(Label::Part(k, Box::new(l.clone())));
            degrees.push(*d);
        }
    }
    BasedFreeModule::new(ring, labels, degrees)
}

/// Starting position of summand `k` inside `direct_sum(parts)`.
pub fn sum_offset(parts: &[&BasedFreeModule], k: usize) -> usize {
    parts[..k].iter().map(|p| p.dim()).sum()
}

pub fn inclusion(parts: &[&BasedFreeModule], k: usize) -> ModuleMap {
    let sum = direct_sum(parts);
    let off = sum_offset(parts, k);
    ModuleMap::from_fn(parts[k].clone(), sum, |j| {
        vec![(off + j, parts[k].ring.one())]
    })
}

pub fn projection(parts: &[&BasedFreeModule], k: usize) -> ModuleMap {
    let sum = direct_sum(parts);
    let off = sum_offset(parts, k);
    let dim_k = parts[k].dim();
    ModuleMap::from_fn(sum, parts[k].clone(), |j| {
        if j >= off && j < off + dim_k {
            vec![(j - off, parts[k].ring.one())]
        } else {
            vec![]
        }
    })
}

/// Block-diagonal sum of maps between the direct sums of their endpoints.
pub fn direct_sum_maps(fs: &[&ModuleMap]) -> ModuleMap {
    assert!(!fs.is_empty());
    let sources: Vec<&BasedFreeModule> = fs.iter().map(|f| &f.source).collect();
    let targets: Vec<&BasedFreeModule> = fs.iter().map(|f| &f.target).collect();
    let mut matrix = fs[0].matrix.clone();
    for f in &fs[1..] {
        matrix = matrix.direct_sum(&f.matrix);
    }
    ModuleMap::new(direct_sum(&sources), direct_sum(&targets), matrix)
}

/// Tensor product module: labels `Tens(a, b)`, degrees add, order matches
/// the Kronecker convention (a-major).
pub fn tensor_module(a: &BasedFreeModule, b: &BasedFreeModule) -> BasedFreeModule {
    assert_eq!(a.ring, b.ring);
    let mut labels = Vec::with_capacity(a.dim() * b.dim());
    let mut degrees = Vec::with_capacity(a.dim() * b.dim());
    for (la, da) in a.labels.iter().zip(&a.degrees) {
        for (lb, db) in b.labels.iter().zip(&b.degrees) {
            labels.push(Label::Tens(Box::new(la.clone()), Box::new(lb.clone())));
            degrees.push(da + db);
        }
    }
    BasedFreeModule::new(a.ring.clone(), labels, degrees)
}

pub fn tensor_map(f: &ModuleMap, g: &ModuleMap) -> ModuleMap {
    let source = tensor_module(&f.source, &g.source);
    let target = tensor_module(&f.target, &g.target);
    ModuleMap::new(source, target, f.matrix.kronecker(&g.matrix))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_and_projections() {
        let a = BasedFreeModule::standard(Ring::Int, 2);
        let b = BasedFreeModule::standard(Ring::Int, 3);
        let parts = [&a, &b];
        let s = direct_sum(&parts);
        assert_eq!(s.dim(), 5);
        let incl = inclusion(&parts, 1);
        let proj = projection(&parts, 1);
        let round = proj.compose(&incl);
        assert_eq!(round, ModuleMap::identity(&b));
        let other = projection(&parts, 0).compose(&incl);
        assert!(other.is_zero());
    }

    #[test]
    fn tensor_matches_kronecker_order() {
        let a = BasedFreeModule::standard(Ring::Int, 2);
        let f = ModuleMap::new(
            a.clone(),
            a.clone(),
            SparseMatrix::from_i64_rows(Ring::Int, &[&[1, 2], &[3, 4]]),
        );
        let g = ModuleMap::identity(&a);
        let t = tensor_map(&f, &g);
        assert_eq!(t.matrix.get(0, 0), Ring::Int.from_i64(1));
        assert_eq!(t.matrix.get(2, 0), Ring::Int.from_i64(3));
        assert_eq!(t.source.labels[1].to_string(), "e0*e1");
    }

    #[test]
    fn graded_validation() {
        use crate::arith::{BaseField, PolyRing};
        let r = Ring::Poly(PolyRing {
            base: BaseField::Rat,
            vars: vec!["x".into()],
        });
        let src = BasedFreeModule::with_degrees(r.clone(), &[1]);
        let tgt = BasedFreeModule::with_degrees(r.clone(), &[0]);
        let mut m = SparseMatrix::zero(r.clone(), 1, 1);
        m.set(0, 0, r.var(0));
        let f = ModuleMap::new(src.clone(), tgt.clone(), m);
        assert!(f.validate_graded().is_ok());
        let mut bad = SparseMatrix::zero(r.clone(), 1, 1);
        bad.set(0, 0, r.one());
        let g = ModuleMap::new(src, tgt, bad);
        assert!(g.validate_graded().is_err());
    }
}
