//! Cross effects of the power functors: the image-of-operator definition
//! with a verified splitting, the direct-sum decomposition over nonempty
//! index sets, diagonal and plus maps, symmetric-group actions, and the
//! functor-characterization probes (plus/diagonal stacks, vanishing).

use crate::arith::{
    field_rank, is_unimodular, smith_normal_form, ArithError, IntMat, Ring, SparseMatrix,
};
use crate::module::{direct_sum, BasedFreeModule, Label, ModuleMap, Power};
use crate::perm::Perm;
use itertools::Itertools;
use num::{BigInt, One, Signed};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CrossEffectError {
    #[error("the defining operator image of {functor}^{degree} is not a split summand")]
    NotSplitImage { functor: &'static str, degree: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// One cross effect cr_k(F)(V_1, …, V_k), realized as a split image inside
/// F(V_1 ⊕ … ⊕ V_k).
pub struct CrossEffect {
    pub functor: Power,
    pub summands: Vec<BasedFreeModule>,
    /// V_1 ⊕ … ⊕ V_k.
    pub total: BasedFreeModule,
    /// F(total), the ambient module.
    pub ambient: BasedFreeModule,
    /// The cross-effect module itself.
    pub module: BasedFreeModule,
    /// module → ambient; a basis of the operator image.
    pub include: ModuleMap,
    /// ambient → module; left inverse of include with include∘project = operator.
    pub project: ModuleMap,
    /// The defining alternating sum of F(partial projections).
    pub operator: ModuleMap,
}

fn block_bounds(parts: &[&BasedFreeModule]) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(parts.len());
    let mut off = 0;
    for p in parts {
        out.push((off, off + p.dim()));
        off += p.dim();
    }
    out
}

/// The projection of ⊕V_i onto the coordinates whose block lies in `keep`.
fn partial_projection(total: &BasedFreeModule, bounds: &[(usize, usize)], keep: &[usize]) -> ModuleMap {
    let ring = total.ring.clone();
    let keep = keep.to_vec();
    let bounds = bounds.to_vec();
    ModuleMap::from_fn(total.clone(), total.clone(), move |j| {
        let block = bounds.iter().position(|&(a, b)| j >= a && j < b).unwrap();
        if keep.contains(&block) {
            vec![(j, ring.one())]
        } else {
            vec![]
        }
    })
}

/// Σ_{j=1}^{k} (−1)^{k−j} Σ_{|T|=j} F(p_T) on F(V_1 ⊕ … ⊕ V_k).
fn defining_operator(functor: &Power, parts: &[&BasedFreeModule]) -> ModuleMap {
    let total = direct_sum(parts);
    let ambient = functor.module(&total);
    let bounds = block_bounds(parts);
    let k = parts.len();
    let mut op = ModuleMap::zero(&ambient, &ambient);
    for j in 1..=k {
        for t in (0..k).combinations(j) {
            let f_pt = functor.map(&partial_projection(&total, &bounds, &t));
            op = if (k - j) % 2 == 0 {
                op.add(&f_pt)
            } else {
                op.sub(&f_pt)
            };
        }
    }
    op
}

/// Compute cr_k(F)(V_1, …, V_k) with a splitting certified over the
/// universal integers and re-verified in the coefficient ring.
pub fn cross_effect(
    functor: &Power,
    parts: &[&BasedFreeModule],
) -> Result<CrossEffect, CrossEffectError> {
    assert!(!parts.is_empty(), "cross effects need k >= 1 arguments");
    let ring = parts[0].ring.clone();
    let total = direct_sum(parts);
    let ambient = functor.module(&total);
    let operator = defining_operator(functor, parts);

    // universal-integer shadow with the same dimensions
    let shadow: Vec<BasedFreeModule> = parts
        .iter()
        .map(|p| BasedFreeModule::standard(Ring::Int, p.dim()))
        .collect();
    let shadow_refs: Vec<&BasedFreeModule> = shadow.iter().collect();
    let op_int = IntMat::from_sparse(&defining_operator(functor, &shadow_refs).matrix);
    let s = smith_normal_form(&op_int);
    let r = s.rank();
    if s.factors.iter().any(|f| !f.is_one()) {
        return Err(CrossEffectError::NotSplitImage {
            functor: functor.name(),
            degree: functor.degree(),
        });
    }

    // image basis = first r columns of u; left inverse = first r rows of u_inv
    let mut b_cols: Vec<Vec<BigInt>> = (0..r).map(|i| s.u.column(i)).collect();
    let mut l_rows: Vec<Vec<BigInt>> = (0..r)
        .map(|i| (0..op_int.rows).map(|j| s.u_inv.get(i, j).clone()).collect())
        .collect();
    // prefer +1-unit columns so the module inherits ambient labels
    let mut labels = Vec::with_capacity(r);
    let mut degrees = Vec::with_capacity(r);
    for c in 0..r {
        let support: Vec<usize> = (0..op_int.rows)
            .filter(|&i| !num::Zero::is_zero(&b_cols[c][i]))
            .collect();
        if support.len() == 1 && b_cols[c][support[0]].abs().is_one() {
            if b_cols[c][support[0]].is_negative() {
                for v in b_cols[c].iter_mut() {
                    *v = -v.clone();
                }
                for v in l_rows[c].iter_mut() {
                    *v = -v.clone();
                }
            }
            labels.push(ambient.labels[support[0]].clone());
            degrees.push(ambient.degrees[support[0]]);
        } else {
            labels.push(Label::E(c));
            let d = ambient.degrees[support[0]];
            assert!(
                support.iter().all(|&i| ambient.degrees[i] == d),
                "operator image basis mixes degrees"
            );
            degrees.push(d);
        }
    }
    let module = BasedFreeModule::new(ring.clone(), labels, degrees);

    let mut b = SparseMatrix::zero(ring.clone(), ambient.dim(), r);
    for (c, col) in b_cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            if !num::Zero::is_zero(v) {
                b.set(i, c, ring.from_bigint(v));
            }
        }
    }
    let mut l = SparseMatrix::zero(ring.clone(), r, ambient.dim());
    for (c, row) in l_rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !num::Zero::is_zero(v) {
                l.set(c, j, ring.from_bigint(v));
            }
        }
    }
    let include = ModuleMap::new(module.clone(), ambient.clone(), b);
    let project = ModuleMap::new(
        ambient.clone(),
        module.clone(),
        l.mul(&operator.matrix),
    );

    // certify the splitting in the coefficient ring itself
    let pi = project.compose(&include);
    if pi.matrix != SparseMatrix::identity(ring.clone(), r) {
        return Err(CrossEffectError::NotSplitImage {
            functor: functor.name(),
            degree: functor.degree(),
        });
    }
    let ip = include.compose(&project);
    if ip.matrix != operator.matrix {
        return Err(CrossEffectError::NotSplitImage {
            functor: functor.name(),
            degree: functor.degree(),
        });
    }

    Ok(CrossEffect {
        functor: functor.clone(),
        summands: parts.iter().map(|p| (*p).clone()).collect(),
        total,
        ambient,
        module,
        include,
        project,
        operator,
    })
}

impl CrossEffect {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// cr_k(F)(f_1, …, f_k), transported through the splittings.
    pub fn map_to(&self, target: &CrossEffect, fs: &[&ModuleMap]) -> ModuleMap {
        assert_eq!(fs.len(), self.summands.len());
        let sum = crate::module::direct_sum_maps(fs);
        assert_eq!(sum.source, self.total, "source summands");
        assert_eq!(sum.target, target.total, "target summands");
        target
            .project
            .compose(&self.functor.map(&sum).compose(&self.include))
    }

    /// Action of σ permuting equal summands: component j is routed to
    /// component σ(j).
    pub fn action(&self, sigma: &Perm) -> ModuleMap {
        let k = self.summands.len();
        assert_eq!(sigma.n(), k, "permutation size");
        for s in &self.summands[1..] {
            assert_eq!(*s, self.summands[0], "action needs equal summands");
        }
        let refs: Vec<&BasedFreeModule> = self.summands.iter().collect();
        let bounds = block_bounds(&refs);
        let ring = self.total.ring.clone();
        let total = self.total.clone();
        let sig = sigma.clone();
        let bounds_c = bounds.clone();
        let shuffle = ModuleMap::from_fn(total.clone(), total.clone(), move |j| {
            let block = bounds_c
                .iter()
                .position(|&(a, b)| j >= a && j < b)
                .unwrap();
            let inner = j - bounds_c[block].0;
            vec![(bounds_c[sig.apply(block)].0 + inner, ring.one())]
        });
        self.project
            .compose(&self.functor.map(&shuffle).compose(&self.include))
    }
}

/// One summand of the Prop-style decomposition of F(V_1 ⊕ … ⊕ V_l).
pub struct Summand {
    /// The participating argument indices, ascending.
    pub index_set: Vec<usize>,
    pub effect: CrossEffect,
    /// effect.module → F(⊕ all V_i).
    pub injection: ModuleMap,
    /// F(⊕ all V_i) → effect.module.
    pub projection: ModuleMap,
}

pub struct Decomposition {
    pub functor: Power,
    pub ambient: BasedFreeModule,
    pub summands: Vec<Summand>,
}

/// Decompose F(V_1 ⊕ … ⊕ V_l) into cross effects over nonempty index sets,
/// ordered by size then lexicographically.
pub fn decompose(
    functor: &Power,
    parts: &[&BasedFreeModule],
) -> Result<Decomposition, CrossEffectError> {
    let ring = parts[0].ring.clone();
    let total = direct_sum(parts);
    let ambient = functor.module(&total);
    let bounds = block_bounds(parts);
    let l = parts.len();
    let mut summands = Vec::new();
    for j in 1..=l {
        for t in (0..l).combinations(j) {
            let sub: Vec<&BasedFreeModule> = t.iter().map(|&i| parts[i]).collect();
            let effect = cross_effect(functor, &sub)?;
            // ⊕_T V → ⊕_all V and back
            let ring_i = ring.clone();
            let tv = t.clone();
            let bounds_i = bounds.clone();
            let sub_bounds = block_bounds(&sub);
            let iota = ModuleMap::from_fn(effect.total.clone(), total.clone(), move |x| {
                let sb = sub_bounds
                    .iter()
                    .position(|&(a, b)| x >= a && x < b)
                    .unwrap();
                let inner = x - sub_bounds[sb].0;
                vec![(bounds_i[tv[sb]].0 + inner, ring_i.one())]
            });
            let ring_p = ring.clone();
            let tp = t.clone();
            let bounds_p = bounds.clone();
            let sub_bounds_p = block_bounds(&sub);
            let pi = ModuleMap::from_fn(total.clone(), effect.total.clone(), move |x| {
                let block = bounds_p
                    .iter()
                    .position(|&(a, b)| x >= a && x < b)
                    .unwrap();
                match tp.iter().position(|&i| i == block) {
                    Some(sb) => {
                        let inner = x - bounds_p[block].0;
                        vec![(sub_bounds_p[sb].0 + inner, ring_p.one())]
                    }
                    None => vec![],
                }
            });
            let injection = functor.map(&iota).compose(&effect.include);
            let projection = effect.project.compose(&functor.map(&pi));
            summands.push(Summand {
                index_set: t,
                effect,
                injection,
                projection,
            });
        }
    }
    Ok(Decomposition {
        functor: functor.clone(),
        ambient,
        summands,
    })
}

impl Decomposition {
    /// Resolution of identity and pairwise orthogonality.
    pub fn verify(&self) -> bool {
        let ring = self.ambient.ring.clone();
        let n = self.ambient.dim();
        let mut acc = SparseMatrix::zero(ring.clone(), n, n);
        for s in &self.summands {
            acc = acc.add(&s.injection.matrix.mul(&s.projection.matrix));
        }
        if acc != SparseMatrix::identity(ring, n) {
            return false;
        }
        for (a, sa) in self.summands.iter().enumerate() {
            for (b, sb) in self.summands.iter().enumerate() {
                let comp = sa.projection.compose(&sb.injection);
                let expect_id = a == b;
                if expect_id {
                    let id = ModuleMap::identity(&sa.effect.module);
                    if comp.matrix != id.matrix {
                        return false;
                    }
                } else if !comp.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn total_dim(&self) -> usize {
        self.summands.iter().map(|s| s.effect.dim()).sum()
    }
}

fn replicate<'a>(eps: &[usize], parts: &[&'a BasedFreeModule]) -> Vec<&'a BasedFreeModule> {
    eps.iter()
        .zip(parts)
        .flat_map(|(&e, &p)| std::iter::repeat(p).take(e))
        .collect()
}

/// Δ_ε : cr_k(F)(V_1, …, V_k) → cr_{|ε|}(F)(V_1, …, V_1, …, V_k, …, V_k),
/// the composite of cr_k(F)(Δ, …, Δ) with the canonical projection.
pub fn diagonal_map(
    functor: &Power,
    eps: &[usize],
    parts: &[&BasedFreeModule],
) -> Result<ModuleMap, CrossEffectError> {
    assert_eq!(eps.len(), parts.len());
    assert!(eps.iter().all(|&e| e >= 1), "epsilon entries are positive");
    let crk = cross_effect(functor, parts)?;
    let rep = replicate(eps, parts);
    let crl = cross_effect(functor, &rep)?;
    let bounds_k = block_bounds(parts);
    let bounds_l = block_bounds(&rep);
    // copy c of block i sits at flat position Σ_{i'<i} ε_{i'} + c
    let flat_start: Vec<usize> = eps
        .iter()
        .scan(0, |acc, &e| {
            let s = *acc;
            *acc += e;
            Some(s)
        })
        .collect();
    let ring = crk.total.ring.clone();
    let epsv = eps.to_vec();
    let delta = ModuleMap::from_fn(crk.total.clone(), crl.total.clone(), move |j| {
        let block = bounds_k
            .iter()
            .position(|&(a, b)| j >= a && j < b)
            .unwrap();
        let inner = j - bounds_k[block].0;
        (0..epsv[block])
            .map(|c| (bounds_l[flat_start[block] + c].0 + inner, ring.one()))
            .collect()
    });
    Ok(crl
        .project
        .compose(&functor.map(&delta).compose(&crk.include)))
}

/// +_ε : cr_{|ε|}(F)(V_1, …, V_1, …, V_k, …, V_k) → cr_k(F)(V_1, …, V_k),
/// the composite of the canonical inclusion with cr_k(F)(+, …, +).
pub fn plus_map(
    functor: &Power,
    eps: &[usize],
    parts: &[&BasedFreeModule],
) -> Result<ModuleMap, CrossEffectError> {
    assert_eq!(eps.len(), parts.len());
    assert!(eps.iter().all(|&e| e >= 1), "epsilon entries are positive");
    let crk = cross_effect(functor, parts)?;
    let rep = replicate(eps, parts);
    let crl = cross_effect(functor, &rep)?;
    let bounds_k = block_bounds(parts);
    let bounds_l = block_bounds(&rep);
    // flat block index → original block
    let mut owner = Vec::new();
    for (i, &e) in eps.iter().enumerate() {
        for _ in 0..e {
            owner.push(i);
        }
    }
    let ring = crl.total.ring.clone();
    let fold = ModuleMap::from_fn(crl.total.clone(), crk.total.clone(), move |j| {
        let fb = bounds_l
            .iter()
            .position(|&(a, b)| j >= a && j < b)
            .unwrap();
        let inner = j - bounds_l[fb].0;
        vec![(bounds_k[owner[fb]].0 + inner, ring.one())]
    });
    Ok(crk
        .project
        .compose(&functor.map(&fold).compose(&crl.include)))
}

/// Does cr_{k+1}(F) vanish on free probes of the given rank?
pub fn functor_degree_probe(
    functor: &Power,
    k: usize,
    probe_rank: usize,
    ring: &Ring,
) -> Result<bool, CrossEffectError> {
    let probe = BasedFreeModule::standard(ring.clone(), probe_rank);
    let parts = vec![&probe; k + 1];
    Ok(cross_effect(functor, &parts)?.dim() == 0)
}

/// Positive compositions of `total` into `i` parts, lexicographically.
pub fn epsilon_indices(i: usize, total: usize) -> Vec<Vec<usize>> {
    fn rec(i: usize, total: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for v in 1..=total.saturating_sub(i - 1) {
            prefix.push(v);
            rec(i - 1, total - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(i, total, &mut Vec::new(), &mut out);
    out
}

/// The stacked plus map ⊕_{ε} cr_d(F)(A,…,A) → cr_i(F)(A,…,A)
/// over all ε ∈ {1..d}^i with |ε| = d, on rank-one arguments.
pub fn plus_stack(
    functor: &Power,
    i: usize,
    ring: &Ring,
) -> Result<ModuleMap, CrossEffectError> {
    let d = functor.degree();
    let a = BasedFreeModule::standard(ring.clone(), 1);
    let parts = vec![&a; i];
    let cri = cross_effect(functor, &parts)?;
    let mut cols: Option<SparseMatrix> = None;
    let mut sources = Vec::new();
    for eps in epsilon_indices(i, d) {
        let p = plus_map(functor, &eps, &parts)?;
        sources.push(p.source.clone());
        cols = Some(match cols {
            None => p.matrix.clone(),
            Some(m) => m.hstack(&p.matrix),
        });
    }
    let srcs: Vec<&BasedFreeModule> = sources.iter().collect();
    let source = direct_sum(&srcs);
    Ok(ModuleMap::new(source, cri.module.clone(), cols.unwrap()))
}

/// The stacked diagonal map cr_i(F)(A,…,A) → ⊕_{ε} cr_d(F)(A,…,A).
pub fn diag_stack(
    functor: &Power,
    i: usize,
    ring: &Ring,
) -> Result<ModuleMap, CrossEffectError> {
    let d = functor.degree();
    let a = BasedFreeModule::standard(ring.clone(), 1);
    let parts = vec![&a; i];
    let cri = cross_effect(functor, &parts)?;
    let mut rows: Option<SparseMatrix> = None;
    let mut targets = Vec::new();
    for eps in epsilon_indices(i, d) {
        let dm = diagonal_map(functor, &eps, &parts)?;
        targets.push(dm.target.clone());
        rows = Some(match rows {
            None => dm.matrix.clone(),
            Some(m) => m.vstack(&dm.matrix),
        });
    }
    let tgts: Vec<&BasedFreeModule> = targets.iter().collect();
    let target = direct_sum(&tgts);
    Ok(ModuleMap::new(cri.module.clone(), target, rows.unwrap()))
}

/// Exact bijectivity of a map over ℤ or a field.
pub fn is_bijective(m: &ModuleMap) -> Result<bool, CrossEffectError> {
    if m.source.dim() != m.target.dim() {
        return Ok(false);
    }
    match &m.source.ring {
        Ring::Int => Ok(is_unimodular(&IntMat::from_sparse(&m.matrix))),
        r if r.is_field() => Ok(field_rank(&m.matrix)? == m.matrix.rows),
        _ => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank(r: usize) -> BasedFreeModule {
        BasedFreeModule::standard(Ring::Int, r)
    }

    #[test]
    fn first_cross_effect_is_the_functor() {
        let v = rank(2);
        let c = cross_effect(&Power::Sym(2), &[&v]).unwrap();
        assert_eq!(c.dim(), 3);
        assert_eq!(c.include.matrix, SparseMatrix::identity(Ring::Int, 3));
        assert_eq!(c.project.matrix, SparseMatrix::identity(Ring::Int, 3));
    }

    #[test]
    fn sym_cross_effect_dimensions() {
        let q = BasedFreeModule::standard(Ring::Rat, 1);
        let c2 = cross_effect(&Power::Sym(2), &[&q, &q]).unwrap();
        assert_eq!(c2.dim(), 1);
        let c3 = cross_effect(&Power::Sym(2), &[&q, &q, &q]).unwrap();
        assert_eq!(c3.dim(), 0);
        // Σ over positive compositions: Sym¹⊗Sym² ⊕ Sym²⊗Sym¹ on rank 2
        let v = rank(2);
        let c = cross_effect(&Power::Sym(3), &[&v, &v]).unwrap();
        assert_eq!(c.dim(), 12);
        // vanishing when one argument is zero
        let z = rank(0);
        let cz = cross_effect(&Power::Sym(3), &[&v, &z]).unwrap();
        assert_eq!(cz.dim(), 0);
    }

    #[test]
    fn operator_is_idempotent() {
        let v = rank(2);
        for f in [Power::Sym(2), Power::Ext(2), Power::Div(2), Power::Tensor(2)] {
            let c = cross_effect(&f, &[&v, &v]).unwrap();
            let o = &c.operator;
            assert_eq!(o.compose(o).matrix, o.matrix, "{f:?}");
        }
    }

    #[test]
    fn decomposition_resolves_identity() {
        let v = rank(2);
        let w = rank(1);
        for f in [Power::Sym(2), Power::Ext(2), Power::Div(2), Power::Tensor(2)] {
            let d = decompose(&f, &[&v, &w]).unwrap();
            assert!(d.verify(), "{f:?}");
            assert_eq!(d.total_dim(), d.ambient.dim(), "{f:?}");
        }
        // Ext² of V⊕W → Λ²V ⊕ Λ²W ⊕ (V⊗W)
        let d = decompose(&Power::Ext(2), &[&v, &w]).unwrap();
        let dims: Vec<usize> = d.summands.iter().map(|s| s.effect.dim()).collect();
        assert_eq!(dims, vec![1, 0, 2]);
        // Sym² of 1⊕1 → 1+1+1
        let d = decompose(&Power::Sym(2), &[&w, &w]).unwrap();
        let dims: Vec<usize> = d.summands.iter().map(|s| s.effect.dim()).collect();
        assert_eq!(dims, vec![1, 1, 1]);
    }

    #[test]
    fn diagonal_and_plus_on_second_symmetric_power() {
        // Δ₂(v₁v₂) = v₁⊗v₂ + v₂⊗v₁ and +₂(v₁⊗v₂) = v₁v₂ on rank 2
        let v = rank(2);
        let d2 = diagonal_map(&Power::Sym(2), &[2], &[&v]).unwrap();
        // e0e1 ↦ e0⊗e1 + e1⊗e0; e0² ↦ 2(e0⊗e0)
        let src = &d2.source; // Sym²(V): e0e0, e0e1, e1e1
        let tgt = &d2.target; // cr₂: monomials x_i y_j
        assert_eq!(src.dim(), 3);
        assert_eq!(tgt.dim(), 4);
        let img = d2.apply(&src.basis_vector(1));
        let ones: Vec<i64> = img
            .iter()
            .map(|s| s.as_bigint().unwrap().try_into().unwrap())
            .collect();
        assert_eq!(ones.iter().sum::<i64>(), 2);
        assert!(ones.iter().all(|&x| x == 0 || x == 1));
        let img0 = d2.apply(&src.basis_vector(0));
        assert_eq!(
            img0.iter().map(|s| s.as_bigint().unwrap()).sum::<BigInt>(),
            BigInt::from(2)
        );
        let p2 = plus_map(&Power::Sym(2), &[2], &[&v]).unwrap();
        // +₂ sends each basis monomial x_i y_j to e_i e_j with coefficient 1
        for j in 0..4 {
            let img = p2.apply(&p2.source.basis_vector(j));
            let nz: Vec<&Scalar> = img.iter().filter(|s| !s.is_zero()).collect();
            assert_eq!(nz.len(), 1);
            assert_eq!(*nz[0], Ring::Int.one());
        }
        // +₂ ∘ Δ₂ = F(2·id) − 2·id (here: multiplication by 4 − 2 = 2)
        let comp = p2.compose(&d2);
        assert_eq!(
            comp.matrix,
            SparseMatrix::identity(Ring::Int, 3).scale(&Ring::Int.from_i64(2))
        );
    }

    #[test]
    fn second_composite_identity_for_all_functors() {
        // +₂ ∘ Δ₂ = F(2·id) − 2·id on a rank-2 argument
        let v = rank(2);
        for f in [Power::Sym(3), Power::Ext(2), Power::Div(3), Power::Tensor(2)] {
            let d2 = diagonal_map(&f, &[2], &[&v]).unwrap();
            let p2 = plus_map(&f, &[2], &[&v]).unwrap();
            let comp = p2.compose(&d2);
            let doubling = ModuleMap::scalar(&v, &Ring::Int.from_i64(2));
            let f2 = f.map(&doubling);
            let expected = f2.sub(&ModuleMap::identity(&f2.source).scale(&Ring::Int.from_i64(2)));
            assert_eq!(comp.matrix, expected.matrix, "{f:?}");
        }
    }

    #[test]
    fn third_symmetric_power_diagonals_match_explicit_formulas() {
        // Δ₍₂,₁₎ on Sym³: (v₁v₂ ⊗ w) ↦ v₁⊗v₂⊗w + v₂⊗v₁⊗w
        let v = rank(1);
        let w = rank(1);
        let d21 = diagonal_map(&Power::Sym(3), &[2, 1], &[&v, &w]).unwrap();
        // source cr₂(Sym³)(V,W) has dim 2: x²w and ... for rank-1 V, W:
        // compositions (2,1) and (1,2): x²·w, x·w²
        assert_eq!(d21.source.dim(), 2);
        assert_eq!(d21.target.dim(), 1);
        // x²w ↦ 2·(x⊗x⊗w), xw² ↦ 0
        let img = d21.apply(&d21.source.basis_vector(0));
        assert_eq!(img[0], Ring::Int.from_i64(2));
        let img = d21.apply(&d21.source.basis_vector(1));
        assert!(img[0].is_zero());
        // +₍₂,₁₎: x⊗x'⊗w ↦ (xx'⊗w, 0)
        let p21 = plus_map(&Power::Sym(3), &[2, 1], &[&v, &w]).unwrap();
        let img = p21.apply(&p21.source.basis_vector(0));
        assert_eq!(img[0], Ring::Int.one());
        assert!(img[1].is_zero());
        // and +₍₁,₂₎ lands in the second block
        let p12 = plus_map(&Power::Sym(3), &[1, 2], &[&v, &w]).unwrap();
        let img = p12.apply(&p12.source.basis_vector(0));
        assert!(img[0].is_zero());
        assert_eq!(img[1], Ring::Int.one());
    }

    #[test]
    fn symmetric_action_signs() {
        let v = rank(2);
        let tau = Perm::adjacent(2, 0);
        let cs = cross_effect(&Power::Sym(2), &[&v, &v]).unwrap();
        let a = cs.action(&tau);
        // involution on the mixed monomials x_i y_j ↦ x_j y_i
        assert_eq!(
            a.compose(&a).matrix,
            SparseMatrix::identity(Ring::Int, cs.dim())
        );
        // on rank-1 arguments the swap fixes the single generator
        let w1 = rank(1);
        let cs1 = cross_effect(&Power::Sym(2), &[&w1, &w1]).unwrap();
        assert_eq!(
            cs1.action(&tau).matrix,
            SparseMatrix::identity(Ring::Int, 1)
        );
        let ce = cross_effect(&Power::Ext(2), &[&v, &v]).unwrap();
        let a = ce.action(&tau);
        assert_eq!(
            a.compose(&a).matrix,
            SparseMatrix::identity(Ring::Int, ce.dim())
        );
        // on rank-1 arguments the swap acts by −1 for the exterior square
        let w = rank(1);
        let ce1 = cross_effect(&Power::Ext(2), &[&w, &w]).unwrap();
        assert_eq!(
            ce1.action(&tau).matrix,
            SparseMatrix::from_i64_rows(Ring::Int, &[&[-1]])
        );
    }

    #[test]
    fn functoriality_of_cross_effects() {
        let v = rank(2);
        let f = ModuleMap::new(
            v.clone(),
            v.clone(),
            SparseMatrix::from_i64_rows(Ring::Int, &[&[1, 2], &[0, 1]]),
        );
        let g = ModuleMap::new(
            v.clone(),
            v.clone(),
            SparseMatrix::from_i64_rows(Ring::Int, &[&[1, 0], &[3, 1]]),
        );
        let c = cross_effect(&Power::Sym(3), &[&v, &v]).unwrap();
        let fg = c.map_to(&c, &[&f.compose(&g), &f.compose(&g)]);
        let step = c.map_to(&c, &[&g, &g]);
        let then = c.map_to(&c, &[&f, &f]);
        assert_eq!(fg.matrix, then.compose(&step).matrix);
        let id = c.map_to(&c, &[&ModuleMap::identity(&v), &ModuleMap::identity(&v)]);
        assert_eq!(id.matrix, SparseMatrix::identity(Ring::Int, c.dim()));
    }

    #[test]
    fn characterization_probes() {
        // Sym³: plus_i bijective for i = 1, 2 (Prop-style hypothesis)
        for i in 1..3 {
            let p = plus_stack(&Power::Sym(3), i, &Ring::Int).unwrap();
            assert!(is_bijective(&p).unwrap(), "plus_{i}");
        }
        // Div³: diag_i bijective
        for i in 1..3 {
            let d = diag_stack(&Power::Div(3), i, &Ring::Int).unwrap();
            assert!(is_bijective(&d).unwrap(), "diag_{i}");
        }
        // Ext³ vanishes on rank 2
        assert_eq!(Power::Ext(3).module(&rank(2)).dim(), 0);
        // degree probes: each functor of degree n has cr_{n+1} = 0, cr_n ≠ 0
        for f in [Power::Sym(2), Power::Ext(2), Power::Div(2), Power::Tensor(2)] {
            assert!(functor_degree_probe(&f, 2, 2, &Ring::Int).unwrap(), "{f:?}");
            let probe = rank(2);
            let parts = vec![&probe; 2];
            assert!(cross_effect(&f, &parts).unwrap().dim() > 0, "{f:?}");
        }
    }
}
