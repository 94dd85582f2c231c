use super::free::{BasedFreeModule, ModuleMap};
use super::label::Label;
use crate::arith::{Ring, Scalar};
use itertools::Itertools;
use std::collections::{BTreeMap, BTreeSet};

/// The four polynomial power functors on free modules. `Sym` is the
/// symmetric power, `Ext` the exterior power, `Div` the divided power
/// (symmetric-group invariants of the tensor power), `Tensor` the plain
/// tensor power.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Power {
    Sym(usize),
    Ext(usize),
    Div(usize),
    Tensor(usize),
}

impl Power {
    pub fn degree(&self) -> usize {
        match self {
            Power::Sym(n) | Power::Ext(n) | Power::Div(n) | Power::Tensor(n) => *n,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Power::Sym(_) => "sym",
            Power::Ext(_) => "ext",
            Power::Div(_) => "div",
            Power::Tensor(_) => "tensor",
        }
    }

    pub fn parse(name: &str, n: usize) -> Option<Power> {
        match name {
            "sym" => Some(Power::Sym(n)),
            "ext" => Some(Power::Ext(n)),
            "div" => Some(Power::Div(n)),
            "tensor" => Some(Power::Tensor(n)),
            _ => None,
        }
    }

    /// Basis labels of the power of a `dim`-dimensional module, in the
    /// canonical enumeration order (lexicographic tuples).
    pub fn labels_for(&self, dim: usize) -> Vec<Label> {
        let n = self.degree();
        if n == 0 {
            return vec![self.wrap(Vec::new())];
        }
        match self {
            Power::Sym(_) | Power::Div(_) => (0..dim)
                .combinations_with_replacement(n)
                .map(|v| self.wrap(v))
                .collect(),
            Power::Ext(_) => (0..dim).combinations(n).map(|v| self.wrap(v)).collect(),
            Power::Tensor(_) => std::iter::repeat(0..dim)
                .take(n)
                .multi_cartesian_product()
                .map(|v| self.wrap(v))
                .collect(),
        }
    }

    fn wrap(&self, v: Vec<usize>) -> Label {
        match self {
            Power::Sym(_) | Power::Div(_) => Label::Multi(v),
            Power::Ext(_) => Label::Wedge(v),
            Power::Tensor(_) => Label::Word(v),
        }
    }

    /// Input positions of a label produced by this power.
    pub fn positions<'a>(&self, l: &'a Label) -> &'a [usize] {
        match l {
            Label::Multi(v) | Label::Wedge(v) | Label::Word(v) => v,
            _ => panic!("not a power label: {l}"),
        }
    }

    pub fn module(&self, m: &BasedFreeModule) -> BasedFreeModule {
        let labels = self.labels_for(m.dim());
        let degrees = labels
            .iter()
            .map(|l| self.positions(l).iter().map(|&p| m.degrees[p]).sum())
            .collect();
        BasedFreeModule::new(m.ring.clone(), labels, degrees)
    }

    /// Image of one source basis label under the power of a map whose
    /// column `j` is produced by `col`. Returns (target label, coefficient)
    /// pairs; the caller resolves labels to positions.
    pub fn label_image<F>(&self, ring: &Ring, col: &mut F, positions: &[usize]) -> Vec<(Label, Scalar)>
    where
        F: FnMut(usize) -> Vec<(usize, Scalar)>,
    {
        match self {
            Power::Tensor(_) => {
                let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
                for (word, c) in word_expansion(ring, col, positions) {
                    merge(ring, &mut acc, word, c);
                }
                acc.into_iter().map(|(w, c)| (Label::Word(w), c)).collect()
            }
            Power::Sym(_) => {
                let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
                for (mut word, c) in word_expansion(ring, col, positions) {
                    word.sort_unstable();
                    merge(ring, &mut acc, word, c);
                }
                acc.into_iter().map(|(w, c)| (Label::Multi(w), c)).collect()
            }
            Power::Ext(_) => {
                let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
                for (word, c) in word_expansion(ring, col, positions) {
                    let Some((sorted, sign)) = sort_with_sign(&word) else {
                        continue; // repeated factor dies in the exterior power
                    };
                    let signed = if sign < 0 { ring.neg(&c) } else { c };
                    merge(ring, &mut acc, sorted, signed);
                }
                acc.into_iter().map(|(w, c)| (Label::Wedge(w), c)).collect()
            }
            Power::Div(_) => {
                // the divided basis vector is the orbit sum over distinct
                // permutations; push each summand through the tensor power
                // and read off the coefficients at sorted representatives
                let perms: BTreeSet<Vec<usize>> = positions
                    .iter()
                    .copied()
                    .permutations(positions.len())
                    .collect::<BTreeSet<_>>();
                let perms = if positions.is_empty() {
                    BTreeSet::from([Vec::new()])
                } else {
                    perms
                };
                let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
                for tau in perms {
                    for (word, c) in word_expansion(ring, col, &tau) {
                        if word.windows(2).all(|p| p[0] <= p[1]) {
                            merge(ring, &mut acc, word, c);
                        }
                    }
                }
                acc.into_iter().map(|(w, c)| (Label::Multi(w), c)).collect()
            }
        }
    }

    pub fn map(&self, f: &ModuleMap) -> ModuleMap {
        let source = self.module(&f.source);
        let target = self.module(&f.target);
        let cols = f.matrix.columns();
        let ring = f.source.ring.clone();
        let src_positions: Vec<Vec<usize>> = source
            .labels
            .iter()
            .map(|l| self.positions(l).to_vec())
            .collect();
        let tgt = target.clone();
        ModuleMap::from_fn(source, target, |j| {
            self.label_image(&ring, &mut |k| cols[k].clone(), &src_positions[j])
                .into_iter()
                .map(|(l, c)| {
                    let p = tgt.position(&l).expect("image label in target basis");
                    (p, c)
                })
                .collect()
        })
    }
}

fn merge(ring: &Ring, acc: &mut BTreeMap<Vec<usize>, Scalar>, key: Vec<usize>, c: Scalar) {
    let cur = acc.entry(key).or_insert_with(|| ring.zero());
    *cur = ring.add(cur, &c);
}

/// Expand ⊗_t col(positions[t]) into (word, coefficient) summands.
fn word_expansion<F>(ring: &Ring, col: &mut F, positions: &[usize]) -> Vec<(Vec<usize>, Scalar)>
where
    F: FnMut(usize) -> Vec<(usize, Scalar)>,
{
    let mut acc: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), ring.one())];
    for &j in positions {
        let column = col(j);
        let mut next = Vec::with_capacity(acc.len() * column.len());
        for (word, coeff) in &acc {
            for (i, s) in &column {
                let mut w = word.clone();
                w.push(*i);
                next.push((w, ring.mul(coeff, s)));
            }
        }
        acc = next;
        if acc.is_empty() {
            break;
        }
    }
    acc
}

/// Sort a word with all-distinct entries, returning the permutation sign;
/// `None` when an entry repeats.
fn sort_with_sign(word: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = word.to_vec();
    let mut sign = 1;
    // insertion sort, counting swaps
    for i in 1..v.len() {
        let mut k = i;
        while k > 0 && v[k - 1] > v[k] {
            v.swap(k - 1, k);
            sign = -sign;
            k -= 1;
        }
    }
    if v.windows(2).any(|p| p[0] == p[1]) {
        return None;
    }
    Some((v, sign))
}

/// Λ²(V) → T²(V): e_i∧e_j ↦ e_i⊗e_j − e_j⊗e_i.
pub fn ext2_to_tensor2(m: &BasedFreeModule) -> ModuleMap {
    let source = Power::Ext(2).module(m);
    let target = Power::Tensor(2).module(m);
    let tgt = target.clone();
    let one = m.ring.one();
    let neg = m.ring.neg(&one);
    let src = source.clone();
    ModuleMap::from_fn(source, target, move |j| {
        let Label::Wedge(v) = &src.labels[j] else {
            unreachable!()
        };
        let (i, k) = (v[0], v[1]);
        vec![
            (tgt.position(&Label::Word(vec![i, k])).unwrap(), one.clone()),
            (tgt.position(&Label::Word(vec![k, i])).unwrap(), neg.clone()),
        ]
    })
}

/// T²(V) → Sym²(V): e_i⊗e_j ↦ e_i·e_j.
pub fn tensor2_to_sym2(m: &BasedFreeModule) -> ModuleMap {
    let source = Power::Tensor(2).module(m);
    let target = Power::Sym(2).module(m);
    let tgt = target.clone();
    let one = m.ring.one();
    let src = source.clone();
    ModuleMap::from_fn(source, target, move |j| {
        let Label::Word(v) = &src.labels[j] else {
            unreachable!()
        };
        let mut key = v.clone();
        key.sort_unstable();
        vec![(tgt.position(&Label::Multi(key)).unwrap(), one.clone())]
    })
}

/// D²(V) → T²(V): the orbit-sum inclusion.
pub fn div2_to_tensor2(m: &BasedFreeModule) -> ModuleMap {
    let source = Power::Div(2).module(m);
    let target = Power::Tensor(2).module(m);
    let tgt = target.clone();
    let one = m.ring.one();
    let src = source.clone();
    ModuleMap::from_fn(source, target, move |j| {
        let Label::Multi(v) = &src.labels[j] else {
            unreachable!()
        };
        let (i, k) = (v[0], v[1]);
        if i == k {
            vec![(tgt.position(&Label::Word(vec![i, i])).unwrap(), one.clone())]
        } else {
            vec![
                (tgt.position(&Label::Word(vec![i, k])).unwrap(), one.clone()),
                (tgt.position(&Label::Word(vec![k, i])).unwrap(), one.clone()),
            ]
        }
    })
}

/// T²(V) → Λ²(V): e_i⊗e_j ↦ e_i∧e_j.
pub fn tensor2_to_ext2(m: &BasedFreeModule) -> ModuleMap {
    let source = Power::Tensor(2).module(m);
    let target = Power::Ext(2).module(m);
    let tgt = target.clone();
    let one = m.ring.one();
    let neg = m.ring.neg(&one);
    let src = source.clone();
    ModuleMap::from_fn(source, target, move |j| {
        let Label::Word(v) = &src.labels[j] else {
            unreachable!()
        };
        let (i, k) = (v[0], v[1]);
        match i.cmp(&k) {
            std::cmp::Ordering::Less => {
                vec![(tgt.position(&Label::Wedge(vec![i, k])).unwrap(), one.clone())]
            }
            std::cmp::Ordering::Equal => vec![],
            std::cmp::Ordering::Greater => {
                vec![(tgt.position(&Label::Wedge(vec![k, i])).unwrap(), neg.clone())]
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::SparseMatrix;

    fn sample(rows: &[&[i64]]) -> ModuleMap {
        let m = SparseMatrix::from_i64_rows(Ring::Int, rows);
        ModuleMap::new(
            BasedFreeModule::standard(Ring::Int, m.cols),
            BasedFreeModule::standard(Ring::Int, m.rows),
            m,
        )
    }

    #[test]
    fn dimensions() {
        let v = BasedFreeModule::standard(Ring::Int, 2);
        assert_eq!(Power::Sym(3).module(&v).dim(), 4);
        assert_eq!(Power::Div(2).module(&v).dim(), 3);
        assert_eq!(Power::Tensor(3).module(&v).dim(), 8);
        let w = BasedFreeModule::standard(Ring::Int, 4);
        assert_eq!(Power::Ext(2).module(&w).dim(), 6);
        assert_eq!(Power::Ext(5).module(&w).dim(), 0);
        assert_eq!(Power::Sym(0).module(&w).dim(), 1);
    }

    #[test]
    fn identity_and_composition() {
        let id = sample(&[&[1, 0], &[0, 1]]);
        let f = sample(&[&[1, 2], &[3, 4], &[5, 6]]);
        let g = sample(&[&[1, 1, 0], &[0, 1, 1]]);
        for p in [Power::Sym(2), Power::Ext(2), Power::Div(2), Power::Tensor(2)] {
            assert_eq!(p.map(&id), ModuleMap::identity(&p.module(&id.source)));
            let lhs = p.map(&g.compose(&f));
            let rhs = p.map(&g).compose(&p.map(&f));
            assert_eq!(lhs, rhs, "functoriality for {:?}", p);
        }
    }

    #[test]
    fn symmetric_vs_divided_on_diagonal_and_sum() {
        // diagonal Z -> Z^2 and sum Z^2 -> Z show where the factor 2 lives
        let diag = sample(&[&[1], &[1]]);
        let plus = sample(&[&[1, 1]]);
        let two = Ring::Int.from_i64(2);
        let one = Ring::Int.one();

        let s = Power::Sym(2).map(&diag);
        // x^2 -> x0^2 + 2 x0x1 + x1^2
        assert_eq!(s.matrix.get(0, 0), one);
        assert_eq!(s.matrix.get(1, 0), two);
        assert_eq!(s.matrix.get(2, 0), one);

        let d = Power::Div(2).map(&diag);
        // u^(2) -> u0^(2) + u0u1 + u1^(2): all coefficients 1
        for i in 0..3 {
            assert_eq!(d.matrix.get(i, 0), one, "row {i}");
        }

        let sp = Power::Sym(2).map(&plus);
        // x0x1 -> x^2 with coefficient 1
        assert_eq!(sp.matrix.get(0, 1), one);
        let dp = Power::Div(2).map(&plus);
        // u0u1 (the orbit sum) -> 2 u^(2)
        assert_eq!(dp.matrix.get(0, 1), two);
    }

    #[test]
    fn exterior_power_is_minors() {
        let f = sample(&[&[1, 2, 0], &[3, 4, 0], &[0, 0, 5]]);
        let e = Power::Ext(2).map(&f);
        // wedge of cols 0,1 has det [[1,2],[3,4]] = -2 on e0^e1
        assert_eq!(e.matrix.get(0, 0), Ring::Int.from_i64(-2));
        // wedge of cols 0,2: minor rows{0,2} = 5, rows{1,2} = 15
        assert_eq!(e.matrix.get(1, 1), Ring::Int.from_i64(5));
        assert_eq!(e.matrix.get(2, 1), Ring::Int.from_i64(15));
    }

    #[test]
    fn short_sequences_are_exact_over_z() {
        use crate::arith::{col_hermite, IntMat};
        let v = BasedFreeModule::standard(Ring::Int, 3);
        for (f, g) in [
            (ext2_to_tensor2(&v), tensor2_to_sym2(&v)),
            (div2_to_tensor2(&v), tensor2_to_ext2(&v)),
        ] {
            assert!(g.compose(&f).is_zero());
            let fi = IntMat::from_sparse(&f.matrix);
            let gi = IntMat::from_sparse(&g.matrix);
            // injective head, surjective tail
            assert_eq!(col_hermite(&fi).kernel().len(), 0);
            let hg = col_hermite(&gi);
            for i in 0..g.target.dim() {
                let mut e = vec![num::BigInt::from(0); g.target.dim()];
                e[i] = num::BigInt::from(1);
                assert!(hg.contains(&e), "target generator {i} not hit");
            }
            // middle exactness as lattices: ker g = im f
            let hker = col_hermite(&IntMat::from_columns(9, &hg.kernel()));
            let hf = col_hermite(&fi);
            for c in hf.image_basis() {
                assert!(hker.contains(&c));
            }
            for c in hker.image_basis() {
                assert!(hf.contains(&c));
            }
        }
    }
}
