//! Dold-Kan machinery: the functor Γ from bounded complexes to truncated
//! simplicial modules, levelwise functor application, normalization back to
//! chain complexes, a direct cross-effect model of the normalized complex of
//! a two-term complex, and the antisymmetrization comparison map from the
//! Koszul complex into the normalized symmetric power.

use crate::arith::{
    is_unimodular, smith_normal_form, ArithError, BaseField, IntMat, Ring, Scalar, SparseMatrix,
};
use crate::complex::{homology, induced_map, ChainComplex, ChainMap, ComplexError};
use crate::cross_effect::{cross_effect, plus_map, CrossEffect, CrossEffectError};
use crate::koszul::koszul_complex;
use crate::module::{direct_sum, BasedFreeModule, Label, ModuleMap, Power};
use itertools::Itertools;
use num::{BigInt, One, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimplicialError {
    #[error("simplicial identity violated at level {level}: {name}")]
    IdentityViolated { name: String, level: usize },
    #[error("comparison fails to be an isomorphism in degree {degree}")]
    NotIsomorphism { degree: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    CrossEffect(#[from] CrossEffectError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// An order-preserving surjection [n] → [k], encoded by the set of
/// positions i ∈ {1..n} where the value steps up.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SurjectionIndex {
    pub n: usize,
    pub k: usize,
    pub step_set: Vec<usize>,
}

/// What composing a surjection with the coface δ_i yields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaceCase {
    /// Still surjective: the same inner degree, new step set.
    Relabel(SurjectionIndex),
    /// Misses the value 0, so it factors as δ₀ ∘ σ̂: apply the differential.
    Boundary(SurjectionIndex),
    /// Misses a positive value: the face is zero.
    Zero,
}

impl SurjectionIndex {
    pub fn new(n: usize, step_set: Vec<usize>) -> Self {
        assert!(step_set.windows(2).all(|w| w[0] < w[1]), "steps increase");
        assert!(
            step_set.iter().all(|&s| (1..=n).contains(&s)),
            "steps lie in 1..=n"
        );
        SurjectionIndex {
            n,
            k: step_set.len(),
            step_set,
        }
    }

    /// All surjections [n] → [k] in lexicographic step-set order.
    pub fn all(n: usize, k: usize) -> Vec<SurjectionIndex> {
        (1..=n)
            .combinations(k)
            .map(|s| SurjectionIndex::new(n, s))
            .collect()
    }

    /// The value σ(i).
    pub fn value(&self, i: usize) -> usize {
        self.step_set.iter().filter(|&&s| s <= i).count()
    }

    /// Classify σ ∘ δ_i for 0 ≤ i ≤ n.
    pub fn face(&self, i: usize) -> FaceCase {
        assert!(i <= self.n);
        let s = &self.step_set;
        let lower = i == 0 || s.contains(&i);
        let upper = i == self.n || s.contains(&(i + 1));
        if lower && upper {
            // the value σ(i) is hit only at position i
            if self.value(i) == 0 {
                let hat = s.iter().filter(|&&x| x >= 2).map(|&x| x - 1).collect();
                FaceCase::Boundary(SurjectionIndex::new(self.n - 1, hat))
            } else {
                FaceCase::Zero
            }
        } else {
            let mut out: Vec<usize> = s.iter().filter(|&&x| x <= i).copied().collect();
            out.extend(s.iter().filter(|&&x| x >= i + 1).map(|&x| x - 1));
            out.sort_unstable();
            FaceCase::Relabel(SurjectionIndex::new(self.n - 1, out))
        }
    }

    /// The step set of σ ∘ ς_i for 0 ≤ i ≤ n.
    pub fn degeneracy(&self, i: usize) -> SurjectionIndex {
        assert!(i <= self.n);
        let s = &self.step_set;
        let mut out: Vec<usize> = s.iter().filter(|&&x| x <= i).copied().collect();
        out.extend(s.iter().filter(|&&x| x >= i + 1).map(|&x| x + 1));
        out.sort_unstable();
        SurjectionIndex::new(self.n + 1, out)
    }
}

/// A simplicial module recorded up to a level bound: modules X_0..X_L with
/// all faces and degeneracies between recorded levels.
#[derive(Clone, Debug)]
pub struct TruncatedSimplicialModule {
    pub level_bound: usize,
    pub modules: Vec<BasedFreeModule>,
    /// faces[n] = [d_0, …, d_n] : X_n → X_{n−1} for n ≥ 1; faces[0] is empty.
    pub faces: Vec<Vec<ModuleMap>>,
    /// degeneracies[n] = [s_0, …, s_n] : X_n → X_{n+1} for n < L.
    pub degeneracies: Vec<Vec<ModuleMap>>,
}

impl TruncatedSimplicialModule {
    pub fn face(&self, n: usize, i: usize) -> &ModuleMap {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, i: usize) -> &ModuleMap {
        &self.degeneracies[n][i]
    }
}

fn gamma_blocks(c: &ChainComplex, n: usize) -> Vec<SurjectionIndex> {
    (0..=n.min(c.top()))
        .flat_map(|k| SurjectionIndex::all(n, k))
        .collect()
}

struct LevelIndex {
    module: BasedFreeModule,
    blocks: Vec<SurjectionIndex>,
    offsets: Vec<usize>,
    position: BTreeMap<Vec<usize>, usize>,
}

fn gamma_level(c: &ChainComplex, n: usize) -> LevelIndex {
    let blocks = gamma_blocks(c, n);
    let parts: Vec<&BasedFreeModule> = blocks.iter().map(|b| &c.modules[b.k]).collect();
    let module = if parts.is_empty() {
        BasedFreeModule::new(c.ring().clone(), Vec::new(), Vec::new())
    } else {
        direct_sum(&parts)
    };
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut acc = 0usize;
    let mut position = BTreeMap::new();
    for (b, s) in blocks.iter().enumerate() {
        offsets.push(acc);
        acc += c.modules[s.k].dim();
        position.insert(s.step_set.clone(), b);
    }
    LevelIndex {
        module,
        blocks,
        offsets,
        position,
    }
}

/// The simplicial module Γ(C) up to level `level_bound`: level n is the sum
/// of one copy of C_k per order-preserving surjection [n] → [k]; faces
/// either re-index, apply the differential, or vanish, and degeneracies
/// re-index.
pub fn gamma(c: &ChainComplex, level_bound: usize) -> TruncatedSimplicialModule {
    let ring = c.ring().clone();
    let levels: Vec<LevelIndex> = (0..=level_bound).map(|n| gamma_level(c, n)).collect();
    let mut faces = vec![Vec::new()];
    for n in 1..=level_bound {
        let (src, tgt) = (&levels[n], &levels[n - 1]);
        let mut maps = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut mat = SparseMatrix::zero(ring.clone(), tgt.module.dim(), src.module.dim());
            for (b, sigma) in src.blocks.iter().enumerate() {
                let o_src = src.offsets[b];
                match sigma.face(i) {
                    FaceCase::Relabel(tau) => {
                        let tb = tgt.position[&tau.step_set];
                        let o_tgt = tgt.offsets[tb];
                        for col in 0..c.modules[sigma.k].dim() {
                            mat.add_to(o_tgt + col, o_src + col, &ring.one());
                        }
                    }
                    FaceCase::Boundary(tau) => {
                        let tb = tgt.position[&tau.step_set];
                        let o_tgt = tgt.offsets[tb];
                        let d = c.d(sigma.k).expect("boundary block has a differential");
                        for ((r, col), v) in d.matrix.entries() {
                            mat.add_to(o_tgt + r, o_src + col, v);
                        }
                    }
                    FaceCase::Zero => {}
                }
            }
            maps.push(ModuleMap::new(src.module.clone(), tgt.module.clone(), mat));
        }
        faces.push(maps);
    }
    let mut degeneracies = Vec::new();
    for n in 0..level_bound {
        let (src, tgt) = (&levels[n], &levels[n + 1]);
        let mut maps = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut mat = SparseMatrix::zero(ring.clone(), tgt.module.dim(), src.module.dim());
            for (b, sigma) in src.blocks.iter().enumerate() {
                let tau = sigma.degeneracy(i);
                let tb = tgt.position[&tau.step_set];
                let (o_src, o_tgt) = (src.offsets[b], tgt.offsets[tb]);
                for col in 0..c.modules[sigma.k].dim() {
                    mat.add_to(o_tgt + col, o_src + col, &ring.one());
                }
            }
            maps.push(ModuleMap::new(src.module.clone(), tgt.module.clone(), mat));
        }
        degeneracies.push(maps);
    }
    TruncatedSimplicialModule {
        level_bound,
        modules: levels.into_iter().map(|l| l.module).collect(),
        faces,
        degeneracies,
    }
}

/// Apply a power functor to every level and structure map.
pub fn apply_functor_levelwise(
    functor: &Power,
    x: &TruncatedSimplicialModule,
) -> TruncatedSimplicialModule {
    TruncatedSimplicialModule {
        level_bound: x.level_bound,
        modules: x.modules.iter().map(|m| functor.module(m)).collect(),
        faces: x
            .faces
            .iter()
            .map(|fs| fs.iter().map(|f| functor.map(f)).collect())
            .collect(),
        degeneracies: x
            .degeneracies
            .iter()
            .map(|ss| ss.iter().map(|s| functor.map(s)).collect())
            .collect(),
    }
}

/// Verify every simplicial identity available within the truncation; the
/// first failure is reported by name.
pub fn simplicial_identities_check(x: &TruncatedSimplicialModule) -> Result<(), SimplicialError> {
    let l = x.level_bound;
    for n in 2..=l {
        for j in 1..=n {
            for i in 0..j {
                let lhs = x.face(n - 1, i).compose(x.face(n, j));
                let rhs = x.face(n - 1, j - 1).compose(x.face(n, i));
                if lhs != rhs {
                    return Err(SimplicialError::IdentityViolated {
                        name: format!("d_{i} d_{j} = d_{} d_{i}", j - 1),
                        level: n,
                    });
                }
            }
        }
    }
    for n in 0..l.saturating_sub(1) {
        for j in 0..=n {
            for i in 0..=j {
                let lhs = x.degeneracy(n + 1, i).compose(x.degeneracy(n, j));
                let rhs = x.degeneracy(n + 1, j + 1).compose(x.degeneracy(n, i));
                if lhs != rhs {
                    return Err(SimplicialError::IdentityViolated {
                        name: format!("s_{i} s_{j} = s_{} s_{i}", j + 1),
                        level: n,
                    });
                }
            }
        }
    }
    for n in 0..l {
        for j in 0..=n {
            for i in 0..=(n + 1) {
                let lhs = x.face(n + 1, i).compose(x.degeneracy(n, j));
                if i == j || i == j + 1 {
                    if lhs != ModuleMap::identity(&x.modules[n]) {
                        return Err(SimplicialError::IdentityViolated {
                            name: format!("d_{i} s_{j} = id"),
                            level: n,
                        });
                    }
                } else if i < j {
                    let rhs = x.degeneracy(n - 1, j - 1).compose(x.face(n, i));
                    if lhs != rhs {
                        return Err(SimplicialError::IdentityViolated {
                            name: format!("d_{i} s_{j} = s_{} d_{i}", j - 1),
                            level: n,
                        });
                    }
                } else {
                    let rhs = x.degeneracy(n - 1, j).compose(x.face(n, i - 1));
                    if lhs != rhs {
                        return Err(SimplicialError::IdentityViolated {
                            name: format!("d_{i} s_{j} = s_{j} d_{}", i - 1),
                            level: n,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// The normalized complex together with the split quotient data: for each
/// level, a projection onto the quotient by the degeneracy span and a
/// section of it.
pub struct NormalizedComplex {
    pub complex: ChainComplex,
    pub projections: Vec<ModuleMap>,
    pub sections: Vec<ModuleMap>,
}

/// Split a level by the span of the given degeneracy images. Fast path:
/// when every degeneracy column is a basis vector with coefficient one, the
/// quotient is free on the complementary labels. Otherwise the span is
/// split over the integers via Smith normal form; all invariant factors
/// must be one.
fn split_degenerate_level(
    level: usize,
    module: &BasedFreeModule,
    degeneracies: &[&SparseMatrix],
) -> Result<(BasedFreeModule, ModuleMap, ModuleMap), ComplexError> {
    let ring = module.ring.clone();
    let dim = module.dim();
    let mut hit = BTreeSet::new();
    let mut embedding = true;
    'outer: for s in degeneracies {
        for j in 0..s.cols {
            let col = s.col_entries(j);
            if col.len() == 1 && col[0].1 == ring.one() {
                hit.insert(col[0].0);
            } else {
                embedding = false;
                break 'outer;
            }
        }
    }
    if embedding {
        let keep: Vec<usize> = (0..dim).filter(|i| !hit.contains(i)).collect();
        let quotient = BasedFreeModule::new(
            ring.clone(),
            keep.iter().map(|&i| module.labels[i].clone()).collect(),
            keep.iter().map(|&i| module.degrees[i]).collect(),
        );
        let mut proj = SparseMatrix::zero(ring.clone(), keep.len(), dim);
        let mut sect = SparseMatrix::zero(ring.clone(), dim, keep.len());
        for (slot, &i) in keep.iter().enumerate() {
            proj.set(slot, i, ring.one());
            sect.set(i, slot, ring.one());
        }
        return Ok((
            quotient.clone(),
            ModuleMap::new(module.clone(), quotient.clone(), proj),
            ModuleMap::new(quotient, module.clone(), sect),
        ));
    }
    if ring != Ring::Int {
        return Err(ComplexError::UnsupportedRing(format!(
            "degeneracy span splitting over {ring} needs basis-embedding degeneracies"
        )));
    }
    let total: usize = degeneracies.iter().map(|s| s.cols).sum();
    let mut stacked = SparseMatrix::zero(ring.clone(), dim, total);
    let mut off = 0usize;
    for s in degeneracies {
        for ((i, j), v) in s.entries() {
            stacked.add_to(*i, off + *j, v);
        }
        off += s.cols;
    }
    let snf = smith_normal_form(&IntMat::from_sparse(&stacked));
    if snf.factors.iter().any(|f| !f.is_one()) {
        return Err(ComplexError::DegeneracySpanNotSplit { level });
    }
    let r = snf.factors.len();
    let keep = dim - r;
    let mut sect = SparseMatrix::zero(ring.clone(), dim, keep);
    let mut proj = SparseMatrix::zero(ring.clone(), keep, dim);
    let mut degrees = Vec::with_capacity(keep);
    for c in 0..keep {
        let col = snf.u.column(r + c);
        let support: Vec<usize> = (0..dim).filter(|&i| !col[i].is_zero()).collect();
        let deg = module.degrees[support[0]];
        assert!(
            support.iter().all(|&i| module.degrees[i] == deg),
            "quotient basis column mixes degrees"
        );
        degrees.push(deg);
        for &i in &support {
            sect.set(i, c, Scalar::Int(col[i].clone()));
        }
    }
    for c in 0..keep {
        for i in 0..dim {
            let v = snf.u_inv.get(r + c, i);
            if !v.is_zero() {
                proj.set(c, i, Scalar::Int(v.clone()));
            }
        }
    }
    let quotient = BasedFreeModule::new(ring, (0..keep).map(Label::E).collect(), degrees);
    Ok((
        quotient.clone(),
        ModuleMap::new(module.clone(), quotient.clone(), proj),
        ModuleMap::new(quotient, module.clone(), sect),
    ))
}

/// Normalization: level n of the result is X_n modulo the span of the
/// degeneracy images, with the alternating face sum as differential.
pub fn normalize(x: &TruncatedSimplicialModule) -> Result<NormalizedComplex, SimplicialError> {
    let l = x.level_bound;
    let mut modules = Vec::with_capacity(l + 1);
    let mut projections = Vec::with_capacity(l + 1);
    let mut sections = Vec::with_capacity(l + 1);
    modules.push(x.modules[0].clone());
    projections.push(ModuleMap::identity(&x.modules[0]));
    sections.push(ModuleMap::identity(&x.modules[0]));
    for n in 1..=l {
        let mats: Vec<&SparseMatrix> = x.degeneracies[n - 1].iter().map(|s| &s.matrix).collect();
        let (q, proj, sect) = split_degenerate_level(n, &x.modules[n], &mats)?;
        modules.push(q);
        projections.push(proj);
        sections.push(sect);
    }
    let mut diffs = Vec::with_capacity(l);
    for n in 1..=l {
        let mut alt = x.faces[n][0].clone();
        for (i, d) in x.faces[n].iter().enumerate().skip(1) {
            alt = if i % 2 == 1 { alt.sub(d) } else { alt.add(d) };
        }
        diffs.push(projections[n - 1].compose(&alt).compose(&sections[n]));
    }
    let complex = ChainComplex::new(modules, diffs)?;
    Ok(NormalizedComplex {
        complex,
        projections,
        sections,
    })
}

/// The full pipeline behind `nfg`, keeping the intermediate stages for
/// callers that need level bases or the quotient maps.
pub struct NfgData {
    pub gamma: TruncatedSimplicialModule,
    pub applied: TruncatedSimplicialModule,
    pub normalized: NormalizedComplex,
    /// The normalized complex trimmed to its guaranteed support.
    pub complex: ChainComplex,
}

pub fn nfg_data(c: &ChainComplex, functor: &Power) -> Result<NfgData, SimplicialError> {
    let top = functor.degree() * c.top();
    let bound = top + 1;
    let g = gamma(c, bound);
    let applied = apply_functor_levelwise(functor, &g);
    let normalized = normalize(&applied)?;
    for level in (top + 1)..=bound {
        let dim = normalized.complex.modules[level].dim();
        if dim != 0 {
            return Err(SimplicialError::Complex(ComplexError::TruncationUnsound {
                level,
                dim,
            }));
        }
    }
    let complex = ChainComplex::new(
        normalized.complex.modules[..=top].to_vec(),
        normalized.complex.diffs[..top].to_vec(),
    )?;
    Ok(NfgData {
        gamma: g,
        applied,
        normalized,
        complex,
    })
}

/// The normalized complex of the functor applied to Γ(C), trimmed to
/// degrees 0..=deg(F)·len(C) after verifying the next level vanishes.
pub fn nfg(c: &ChainComplex, functor: &Power) -> Result<ChainComplex, SimplicialError> {
    nfg_data(c, functor).map(|d| d.complex)
}

fn eps_at(i: usize, parts: usize) -> Vec<usize> {
    (1..=parts).map(|t| if t == i { 2 } else { 1 }).collect()
}

fn block2x2(
    source: &BasedFreeModule,
    target: &BasedFreeModule,
    row_split: usize,
    col_split: usize,
    u: Option<&ModuleMap>,
    d: Option<&ModuleMap>,
    l: Option<&ModuleMap>,
) -> ModuleMap {
    let ring = source.ring.clone();
    let mut mat = SparseMatrix::zero(ring, target.dim(), source.dim());
    if let Some(u) = u {
        for ((i, j), v) in u.matrix.entries() {
            mat.add_to(*i, *j, v);
        }
    }
    if let Some(d) = d {
        for ((i, j), v) in d.matrix.entries() {
            mat.add_to(row_split + i, *j, v);
        }
    }
    if let Some(l) = l {
        for ((i, j), v) in l.matrix.entries() {
            mat.add_to(row_split + i, col_split + j, v);
        }
    }
    ModuleMap::new(source.clone(), target.clone(), mat)
}

/// The normalized complex of F∘Γ(P→Q) modelled directly on cross effects:
/// degree n is cr_n(F)(P,…,P) ⊕ cr_{n+1}(F)(Q,P,…,P), and the differential
/// combines fold maps with the map induced by f into the first slot.
pub fn lemma22_complex(f: &ModuleMap, functor: &Power) -> Result<ChainComplex, SimplicialError> {
    let deg = functor.degree();
    assert!(deg >= 1, "the direct model needs a functor of degree >= 1");
    let p = &f.source;
    let q = &f.target;
    let ring = p.ring.clone();
    let zero_mod = BasedFreeModule::new(ring.clone(), Vec::new(), Vec::new());
    let idp = ModuleMap::identity(p);
    let idq = ModuleMap::identity(q);
    // a[n] = cr_n(F)(P,…,P) for n ≥ 1, b[n] = cr_{n+1}(F)(Q,P,…,P) for n < deg
    let mut a: Vec<Option<CrossEffect>> = vec![None];
    for n in 1..=deg {
        a.push(Some(cross_effect(functor, &vec![p; n])?));
    }
    let mut b: Vec<Option<CrossEffect>> = Vec::new();
    for n in 0..deg {
        let mut parts = vec![q];
        parts.extend(std::iter::repeat(p).take(n));
        b.push(Some(cross_effect(functor, &parts)?));
    }
    b.push(None);
    let a_mod = |n: usize| a[n].as_ref().map_or(&zero_mod, |c| &c.module);
    let b_mod = |n: usize| b[n].as_ref().map_or(&zero_mod, |c| &c.module);
    let modules: Vec<BasedFreeModule> = (0..=deg)
        .map(|n| direct_sum(&[a_mod(n), b_mod(n)]))
        .collect();
    let mut diffs = Vec::with_capacity(deg);
    for n in 1..=deg {
        // upper-left: alternating fold maps on the pure-P cross effect
        let u = if n >= 2 {
            let mut acc: Option<ModuleMap> = None;
            for i in 1..=(n - 1) {
                let m = plus_map(functor, &eps_at(i, n - 1), &vec![p; n - 1])?;
                acc = Some(match acc {
                    None => m.scale(&ring.from_i64(-1)),
                    Some(t) => {
                        if i % 2 == 1 {
                            t.sub(&m)
                        } else {
                            t.add(&m)
                        }
                    }
                });
            }
            acc
        } else {
            None
        };
        // lower-left: push the first P through f into the Q slot
        let d = Some(a[n].as_ref().unwrap().map_to(b[n - 1].as_ref().unwrap(), &{
            let mut fs: Vec<&ModuleMap> = vec![f];
            fs.extend(std::iter::repeat(&idp).take(n - 1));
            fs
        }));
        // lower-right: fold f(p_1) into q, plus alternating folds of the p's
        let l = if b[n].is_some() {
            let bn = b[n].as_ref().unwrap();
            let mut qq_parts = vec![q, q];
            qq_parts.extend(std::iter::repeat(p).take(n - 1));
            let mid = cross_effect(functor, &qq_parts)?;
            let mut fs: Vec<&ModuleMap> = vec![&idq, f];
            fs.extend(std::iter::repeat(&idp).take(n - 1));
            let mut fold_parts = vec![q];
            fold_parts.extend(std::iter::repeat(p).take(n - 1));
            let mut eps = vec![2usize];
            eps.extend(std::iter::repeat(1).take(n - 1));
            let mut acc = plus_map(functor, &eps, &fold_parts)?.compose(&bn.map_to(&mid, &fs));
            for i in 1..=(n - 1) {
                let mut eps_i = vec![1usize];
                eps_i.extend(eps_at(i, n - 1));
                let m = plus_map(functor, &eps_i, &fold_parts)?;
                acc = if i % 2 == 1 { acc.sub(&m) } else { acc.add(&m) };
            }
            Some(acc)
        } else {
            None
        };
        diffs.push(block2x2(
            &modules[n],
            &modules[n - 1],
            a_mod(n - 1).dim(),
            a_mod(n).dim(),
            u.as_ref(),
            d.as_ref(),
            l.as_ref(),
        ));
    }
    Ok(ChainComplex::new(modules, diffs)?)
}

/// Is the map invertible over its coefficient ring? The maps checked here
/// are images of universal integer matrices, so the integer shadow
/// decides: unimodular over ℤ, full rank over a field, invariant factors
/// coprime to the modulus over ℤ/m, and for graded polynomial rings the
/// entries must be integer constants whose invariant factors are units in
/// the base field.
fn bijective_over(m: &ModuleMap) -> Result<bool, SimplicialError> {
    if m.source.dim() != m.target.dim() {
        return Ok(false);
    }
    match &m.source.ring {
        Ring::IntMod(modulus) => {
            let shadow = IntMat::from_sparse(&m.matrix.map_ring(Ring::Int, |s| match s {
                Scalar::Mod(v) => Scalar::Int(BigInt::from(*v)),
                _ => unreachable!("modular matrix entry"),
            }));
            let snf = smith_normal_form(&shadow);
            Ok(snf.factors.len() == m.source.dim()
                && snf
                    .factors
                    .iter()
                    .all(|f| num::Integer::gcd(f, &BigInt::from(*modulus)).is_one()))
        }
        Ring::Int => Ok(is_unimodular(&IntMat::from_sparse(&m.matrix))),
        Ring::Poly(pr) => {
            let mut constant = true;
            let shadow = m.matrix.map_ring(Ring::Int, |s| match s {
                Scalar::Poly(p) if p.is_zero() => Scalar::Int(BigInt::zero()),
                Scalar::Poly(p) if p.terms.len() == 1 => {
                    let (mono, c) = p.terms.iter().next().expect("single term");
                    match (mono.total_degree(), c.as_bigint()) {
                        (0, Some(b)) => Scalar::Int(b),
                        _ => {
                            constant = false;
                            Scalar::Int(BigInt::zero())
                        }
                    }
                }
                _ => {
                    constant = false;
                    Scalar::Int(BigInt::zero())
                }
            });
            if !constant {
                return Ok(false);
            }
            let snf = smith_normal_form(&IntMat::from_sparse(&shadow));
            if snf.factors.len() != m.source.dim() {
                return Ok(false);
            }
            Ok(match &pr.base {
                BaseField::Rat => true,
                BaseField::Fp(p) => snf
                    .factors
                    .iter()
                    .all(|f| num::Integer::gcd(f, &BigInt::from(*p)).is_one()),
            })
        }
        _ => Ok(crate::cross_effect::is_bijective(m)?),
    }
}

/// The canonical degreewise isomorphism from the cross-effect model onto
/// the normalized pipeline complex, verified to be bijective and to
/// commute with the differentials.
pub fn lemma22_to_nfg_iso(f: &ModuleMap, functor: &Power) -> Result<ChainMap, SimplicialError> {
    let lhs = lemma22_complex(f, functor)?;
    let data = nfg_data(&ChainComplex::two_term(f), functor)?;
    let deg = functor.degree();
    let p = &f.source;
    let q = &f.target;
    let mut maps = Vec::with_capacity(deg + 1);
    for n in 0..=deg {
        let target = &data.complex.modules[n];
        let proj = &data.normalized.projections[n];
        let gamma_n = &data.gamma.modules[n];
        let source = &lhs.modules[n];
        let mut mat = SparseMatrix::zero(p.ring.clone(), target.dim(), source.dim());
        let mut col = 0usize;
        if n >= 1 {
            let an = cross_effect(functor, &vec![p; n])?;
            // embed the pure-P ambient into Γ_n (blocks shift past Q)
            let pn = direct_sum(&vec![p; n]);
            let embed = ModuleMap::from_fn(pn.clone(), gamma_n.clone(), |j| {
                let (blk, inner) = match &pn.labels[j] {
                    Label::Part(b, l) => (*b, l.as_ref().clone()),
                    _ => unreachable!("direct sum label"),
                };
                let pos = gamma_n
                    .position(&Label::Part(blk + 1, Box::new(inner)))
                    .expect("gamma block");
                vec![(pos, p.ring.one())]
            });
            let ka = proj.compose(&functor.map(&embed)).compose(&an.include);
            for ((i, j), v) in ka.matrix.entries() {
                mat.add_to(*i, col + *j, v);
            }
            col += an.module.dim();
        }
        if n < deg {
            let mut parts = vec![q];
            parts.extend(std::iter::repeat(p).take(n));
            let bn = cross_effect(functor, &parts)?;
            let kb = proj.compose(&bn.include);
            for ((i, j), v) in kb.matrix.entries() {
                mat.add_to(*i, col + *j, v);
            }
        }
        let component = ModuleMap::new(source.clone(), target.clone(), mat);
        if !bijective_over(&component)? {
            return Err(SimplicialError::NotIsomorphism { degree: n });
        }
        maps.push(component);
    }
    Ok(ChainMap::new(lhs, data.complex, maps)?)
}

fn perm_sign(ring: &Ring, perm: &[usize]) -> Scalar {
    let mut inv = 0usize;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 1 {
        ring.from_i64(-1)
    } else {
        ring.one()
    }
}

/// The antisymmetrization comparison map Kos^n(f) → N Sym^n Γ(P→Q): a
/// wedge of P-vectors with a symmetric tail of Q-vectors maps to the signed
/// sum over permutations placing the wedge factors into the distinct
/// P-copies of Γ_k (in reversed block order), times the Q-monomial.
/// Returns the verified chain map.
pub fn comparison_u(f: &ModuleMap, n: usize) -> Result<ChainMap, SimplicialError> {
    let kos = koszul_complex(f, n);
    let data = nfg_data(&ChainComplex::two_term(f), &Power::Sym(n))?;
    let p = &f.source;
    let q = &f.target;
    let ring = p.ring.clone();
    let mut maps = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let source = kos.modules[k].clone();
        let gamma_k = &data.gamma.modules[k];
        let ambient = &data.applied.modules[k];
        let proj = &data.normalized.projections[k];
        let src_labels = source.labels.clone();
        let mut q_flat = Vec::with_capacity(q.dim());
        for lbl in &q.labels {
            q_flat.push(
                gamma_k
                    .position(&Label::Part(0, Box::new(lbl.clone())))
                    .expect("q block"),
            );
        }
        let mut p_flat = vec![Vec::new(); k + 1];
        for blk in 1..=k {
            p_flat[blk] = p
                .labels
                .iter()
                .map(|lbl| {
                    gamma_k
                        .position(&Label::Part(blk, Box::new(lbl.clone())))
                        .expect("p block")
                })
                .collect();
        }
        let ring_c = ring.clone();
        let ambient_c = ambient.clone();
        let raw = ModuleMap::from_fn(source.clone(), ambient.clone(), move |j| {
            let (s, m) = match &src_labels[j] {
                Label::Tens(a, b) => match (a.as_ref(), b.as_ref()) {
                    (Label::Wedge(s), Label::Multi(m)) => (s.clone(), m.clone()),
                    _ => unreachable!("koszul label"),
                },
                _ => unreachable!("koszul label"),
            };
            let mut out = Vec::new();
            for perm in (0..k).permutations(k) {
                let sign = perm_sign(&ring_c, &perm);
                let mut flats: Vec<usize> = (0..k)
                    // factor t goes to P-copy k−t, counted from the far block
                    .map(|t| p_flat[k - t][s[perm[t]]])
                    .collect();
                flats.extend(m.iter().map(|&qi| q_flat[qi]));
                flats.sort_unstable();
                let pos = ambient_c
                    .position(&Label::Multi(flats))
                    .expect("monomial basis");
                out.push((pos, sign));
            }
            out
        });
        maps.push(proj.compose(&raw));
    }
    Ok(ChainMap::new(kos, data.complex, maps)?)
}

/// Quasi-isomorphism verdict for a chain map: equal homology descriptors
/// and an invertible induced map in every degree of the source.
pub fn verify_quasi_iso(
    u: &ChainMap,
    window: Option<RangeInclusive<i64>>,
) -> Result<bool, SimplicialError> {
    let (st, tt) = (u.source.top(), u.target.top());
    for k in 0..=st.max(tt) {
        // degrees beyond one side must be trivial on the other
        if k > st || k > tt {
            if k <= tt && !homology(&u.target, k, window.clone())?.descriptor.is_trivial() {
                return Ok(false);
            }
            if k <= st && !homology(&u.source, k, window.clone())?.descriptor.is_trivial() {
                return Ok(false);
            }
            continue;
        }
        let hs = homology(&u.source, k, window.clone())?;
        let ht = homology(&u.target, k, window.clone())?;
        if hs.descriptor != ht.descriptor {
            return Ok(false);
        }
        let ind = induced_map(&u.maps[k], &hs, &ht)?;
        if !ind.is_iso(&ht)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::HomologyDescriptor;
    use crate::module::tensor_map;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn zfree(r: usize) -> BasedFreeModule {
        BasedFreeModule::standard(Ring::Int, r)
    }

    #[test]
    fn surjection_combinatorics() {
        for n in 0..=6usize {
            for k in 0..=n {
                let all = SurjectionIndex::all(n, k);
                let expect = (0..k).fold(1usize, |acc, i| acc * (n - i)) / (1..=k.max(1)).product::<usize>().max(1);
                assert_eq!(all.len(), expect, "count Sur({n},{k})");
            }
        }
        // faces of the identity surjection [2]→[2]
        let id2 = SurjectionIndex::new(2, vec![1, 2]);
        assert!(matches!(id2.face(0), FaceCase::Boundary(ref t) if t.step_set == vec![1]));
        assert!(matches!(id2.face(1), FaceCase::Zero));
        assert!(matches!(id2.face(2), FaceCase::Zero));
        // the unique surjection [1]→[0]
        let pt = SurjectionIndex::new(1, vec![]);
        assert!(matches!(pt.face(0), FaceCase::Relabel(ref t) if t.step_set.is_empty()));
        assert!(matches!(pt.face(1), FaceCase::Relabel(ref t) if t.step_set.is_empty()));
        // degeneracies of [1]→[1]
        let s = SurjectionIndex::new(1, vec![1]);
        assert_eq!(s.degeneracy(0).step_set, vec![2]);
        assert_eq!(s.degeneracy(1).step_set, vec![1]);
    }

    #[test]
    fn gamma_shapes() {
        let p = zfree(2);
        // constant complex: every level is P with identity structure maps
        let g0 = gamma(&ChainComplex::concentrated(&p, 0), 4);
        for n in 0..=4 {
            assert_eq!(g0.modules[n].dim(), 2);
            for i in 0..=n {
                if n >= 1 {
                    assert!(g0.face(n, i).matrix == ModuleMap::identity(&g0.modules[n]).matrix);
                }
                if n < 4 {
                    assert!(g0.degeneracy(n, i).matrix
                        == ModuleMap::identity(&g0.modules[n]).matrix);
                }
            }
        }
        simplicial_identities_check(&g0).unwrap();
        // two-term complex: level n has one Q and n copies of P
        let f = ModuleMap::scalar(&zfree(1), &Ring::Int.from_i64(2));
        let g1 = gamma(&ChainComplex::two_term(&f), 4);
        for n in 0..=4 {
            assert_eq!(g1.modules[n].dim(), 1 + n);
        }
        simplicial_identities_check(&g1).unwrap();
        // shifted module: level n is n copies of P
        let g2 = gamma(&ChainComplex::concentrated(&p, 1), 4);
        for n in 0..=4 {
            assert_eq!(g2.modules[n].dim(), 2 * n);
        }
        simplicial_identities_check(&g2).unwrap();
    }

    #[test]
    fn identities_check_names_corrupted_face() {
        let f = ModuleMap::scalar(&zfree(1), &Ring::Int.from_i64(2));
        let mut g = gamma(&ChainComplex::two_term(&f), 3);
        let m = &mut g.faces[2][1];
        let bumped = m.matrix.get(0, 0);
        let mut corrupted = m.matrix.clone();
        corrupted.set(0, 0, Ring::Int.add(&bumped, &Ring::Int.one()));
        *m = ModuleMap::new(m.source.clone(), m.target.clone(), corrupted);
        let err = simplicial_identities_check(&g).unwrap_err();
        match err {
            SimplicialError::IdentityViolated { name, .. } => {
                assert!(name.starts_with("d_"), "face identity named: {name}")
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn normalize_recovers_two_term_complex() {
        let f = ModuleMap::scalar(&zfree(1), &Ring::Int.from_i64(2));
        let g = gamma(&ChainComplex::two_term(&f), 3);
        let norm = normalize(&g).unwrap();
        assert_eq!(norm.complex.modules[0].dim(), 1);
        assert_eq!(norm.complex.modules[1].dim(), 1);
        // the degeneracy span at level 2 is the full module, so nothing is left
        assert_eq!(norm.complex.modules[2].dim(), 0);
        assert_eq!(norm.complex.modules[3].dim(), 0);
        assert_eq!(norm.complex.diffs[0].matrix.get(0, 0), Ring::Int.from_i64(2));
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> SparseMatrix {
        let mut m = SparseMatrix::zero(Ring::Int, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let v: i64 = rng.gen_range(-2..=2);
                if v != 0 {
                    m.set(i, j, Ring::Int.from_i64(v));
                }
            }
        }
        m
    }

    fn random_complex(rng: &mut ChaCha8Rng) -> ChainComplex {
        let len = rng.gen_range(1..=3usize);
        let ranks: Vec<usize> = (0..=len).map(|_| rng.gen_range(1..=3usize)).collect();
        let modules: Vec<BasedFreeModule> = ranks.iter().map(|&r| zfree(r)).collect();
        let mut diffs = Vec::new();
        let mut prev: Option<SparseMatrix> = None;
        for k in 1..=len {
            let mat = match &prev {
                None => random_matrix(rng, ranks[0], ranks[1]),
                Some(d) => {
                    // a random integer combination of a kernel lattice basis
                    let kernel = crate::arith::col_hermite(&IntMat::from_sparse(d)).kernel();
                    let mut m = SparseMatrix::zero(Ring::Int, ranks[k - 1], ranks[k]);
                    for j in 0..ranks[k] {
                        for b in &kernel {
                            let c: i64 = rng.gen_range(-1..=1);
                            if c == 0 {
                                continue;
                            }
                            for (i, v) in b.iter().enumerate() {
                                let add = Ring::Int.mul(
                                    &Scalar::Int(v.clone()),
                                    &Ring::Int.from_i64(c),
                                );
                                m.add_to(i, j, &add);
                            }
                        }
                    }
                    m
                }
            };
            prev = Some(mat.clone());
            diffs.push(ModuleMap::new(
                modules[k].clone(),
                modules[k - 1].clone(),
                mat,
            ));
        }
        ChainComplex::new(modules, diffs).expect("random complex")
    }

    #[test]
    fn dold_kan_round_trip_on_random_complexes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..12 {
            let c = random_complex(&mut rng);
            let bound = c.top() + 2;
            let g = gamma(&c, bound);
            simplicial_identities_check(&g).unwrap();
            let norm = normalize(&g).unwrap();
            for k in 0..=bound {
                let expect = if k <= c.top() { c.dim(k) } else { 0 };
                assert_eq!(norm.complex.modules[k].dim(), expect, "rank at {k}");
            }
            for k in 1..=c.top() {
                assert_eq!(
                    norm.complex.diffs[k - 1].matrix,
                    c.diffs[k - 1].matrix,
                    "differential at {k}"
                );
            }
        }
    }

    #[test]
    fn split_fallback_handles_non_embedding_spans() {
        // span of (1,1) inside ℤ²: split, quotient of rank 1
        let m = zfree(2);
        let mut s = SparseMatrix::zero(Ring::Int, 2, 1);
        s.set(0, 0, Ring::Int.one());
        s.set(1, 0, Ring::Int.one());
        let (q, proj, sect) = split_degenerate_level(1, &m, &[&s]).unwrap();
        assert_eq!(q.dim(), 1);
        let id = proj.compose(&sect);
        assert_eq!(id.matrix, ModuleMap::identity(&q).matrix);
        // span of (2,0): not split
        let mut bad = SparseMatrix::zero(Ring::Int, 2, 1);
        bad.set(0, 0, Ring::Int.from_i64(2));
        let err = split_degenerate_level(3, &m, &[&bad]).unwrap_err();
        assert!(matches!(
            err,
            ComplexError::DegeneracySpanNotSplit { level: 3 }
        ));
    }

    #[test]
    fn nfg_constant_and_shifted_modules() {
        let p = zfree(2);
        // constant: N Sym^n Γ(P[0]) is Sym^n(P) in degree zero
        for n in 1..=3usize {
            let c = nfg(&ChainComplex::concentrated(&p, 0), &Power::Sym(n)).unwrap();
            assert_eq!(c.top(), 0);
            assert_eq!(c.dim(0), Power::Sym(n).module(&p).dim());
        }
        // shifted: N Sym² Γ(P[−1]) is P⊗P → Sym²(P) in degrees 2, 1
        let c = nfg(&ChainComplex::concentrated(&p, 1), &Power::Sym(2)).unwrap();
        assert_eq!(c.top(), 2);
        assert_eq!(c.dim(0), 0);
        assert_eq!(c.dim(1), 3);
        assert_eq!(c.dim(2), 4);
        let h2 = homology(&c, 2, None).unwrap();
        assert_eq!(
            h2.descriptor,
            HomologyDescriptor::Abelian {
                rank: 1,
                torsion: vec![]
            }
        );
        assert!(homology(&c, 1, None).unwrap().descriptor.is_trivial());
    }

    #[test]
    fn lemma22_model_matches_pipeline() {
        // Sym² of multiplication by two: ranks 1, 2, 1
        let f2 = ModuleMap::scalar(&zfree(1), &Ring::Int.from_i64(2));
        let lhs = lemma22_complex(&f2, &Power::Sym(2)).unwrap();
        assert_eq!(
            lhs.modules.iter().map(|m| m.dim()).collect::<Vec<_>>(),
            vec![1, 2, 1]
        );
        lemma22_to_nfg_iso(&f2, &Power::Sym(2)).unwrap();
        // Sym(1) recovers the map itself
        let p = zfree(2);
        let q = zfree(2);
        let mut mat = SparseMatrix::zero(Ring::Int, 2, 2);
        mat.set(0, 0, Ring::Int.from_i64(1));
        mat.set(0, 1, Ring::Int.from_i64(2));
        mat.set(1, 1, Ring::Int.from_i64(3));
        let f = ModuleMap::new(p, q, mat);
        let one = lemma22_complex(&f, &Power::Sym(1)).unwrap();
        assert_eq!(one.diffs[0].matrix, f.matrix);
        lemma22_to_nfg_iso(&f, &Power::Sym(1)).unwrap();
        // higher functors against the pipeline
        lemma22_to_nfg_iso(&f, &Power::Ext(2)).unwrap();
        lemma22_to_nfg_iso(&f2, &Power::Sym(3)).unwrap();
        let fq = ModuleMap::scalar(
            &BasedFreeModule::standard(Ring::Rat, 2),
            &Ring::Rat.from_i64(3),
        );
        lemma22_to_nfg_iso(&fq, &Power::Sym(2)).unwrap();
    }

    #[test]
    fn comparison_map_is_quasi_isomorphism() {
        // multiplication by two, n = 1 and 2
        let f2 = ModuleMap::scalar(&zfree(1), &Ring::Int.from_i64(2));
        let u1 = comparison_u(&f2, 1).unwrap();
        assert!(verify_quasi_iso(&u1, None).unwrap());
        let u2 = comparison_u(&f2, 2).unwrap();
        let h0 = homology(&u2.source, 0, None).unwrap();
        assert_eq!(
            h0.descriptor,
            HomologyDescriptor::Abelian {
                rank: 0,
                torsion: vec![BigInt::from(2)]
            }
        );
        assert!(verify_quasi_iso(&u2, None).unwrap());
        // a rank-two map with mixed entries
        let mut mat = SparseMatrix::zero(Ring::Int, 2, 2);
        mat.set(0, 0, Ring::Int.from_i64(2));
        mat.set(0, 1, Ring::Int.from_i64(1));
        mat.set(1, 1, Ring::Int.from_i64(4));
        let f = ModuleMap::new(zfree(2), zfree(2), mat);
        for n in 1..=3usize {
            let u = comparison_u(&f, n).unwrap();
            assert!(verify_quasi_iso(&u, None).unwrap(), "n = {n}");
        }
        // the zero-target case: Λ^n(P) concentrated in degree n
        let p = zfree(2);
        let zero_target = BasedFreeModule::new(Ring::Int, Vec::new(), Vec::new());
        let f0 = ModuleMap::zero(&p, &zero_target);
        let u0 = comparison_u(&f0, 2).unwrap();
        assert_eq!(u0.source.dim(2), 1);
        assert!(verify_quasi_iso(&u0, None).unwrap());
    }

    #[test]
    fn comparison_map_over_graded_ring() {
        let ring = Ring::Poly(crate::arith::PolyRing {
            base: crate::arith::BaseField::Rat,
            vars: vec!["x".into()],
        });
        let p = BasedFreeModule::new(ring.clone(), vec![Label::E(0)], vec![1]);
        let q = BasedFreeModule::standard(ring.clone(), 1);
        let mut mat = SparseMatrix::zero(ring.clone(), 1, 1);
        mat.set(0, 0, ring.var(0));
        let f = ModuleMap::new(p, q, mat);
        let u = comparison_u(&f, 2).unwrap();
        assert!(verify_quasi_iso(&u, Some(0..=4)).unwrap());
    }

    /// The degreewise map Λ^k(α_P) ⊗ Sym^{n−k}(α_Q) between Koszul complexes.
    fn koszul_chain_map(
        f: &ModuleMap,
        g: &ModuleMap,
        alpha_p: &ModuleMap,
        alpha_q: &ModuleMap,
        n: usize,
    ) -> Result<ChainMap, ComplexError> {
        let src = koszul_complex(f, n);
        let tgt = koszul_complex(g, n);
        let maps = (0..=n)
            .map(|k| tensor_map(&Power::Ext(k).map(alpha_p), &Power::Sym(n - k).map(alpha_q)))
            .collect();
        ChainMap::new(src, tgt, maps)
    }

    /// The induced map on the normalized symmetric-power pipeline.
    fn nfg_chain_map(
        f: &ModuleMap,
        g: &ModuleMap,
        alpha_p: &ModuleMap,
        alpha_q: &ModuleMap,
        n: usize,
    ) -> Result<ChainMap, SimplicialError> {
        let src = nfg_data(&ChainComplex::two_term(f), &Power::Sym(n))?;
        let tgt = nfg_data(&ChainComplex::two_term(g), &Power::Sym(n))?;
        let mut maps = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let gs = &src.gamma.modules[k];
            let gt = &tgt.gamma.modules[k];
            // blockwise: Q-block through α_Q, each P-copy through α_P
            let mut mat = SparseMatrix::zero(gs.ring.clone(), gt.dim(), gs.dim());
            for (j, lbl) in gs.labels.iter().enumerate() {
                let (blk, inner) = match lbl {
                    Label::Part(b, l) => (*b, l.as_ref()),
                    _ => unreachable!("gamma label"),
                };
                let (alpha, inner_mod) = if blk == 0 {
                    (alpha_q, &alpha_q.source)
                } else {
                    (alpha_p, &alpha_p.source)
                };
                let c = inner_mod.position(inner).expect("inner label");
                for (r, v) in alpha.matrix.col_entries(c) {
                    let tpos = gt
                        .position(&Label::Part(blk, Box::new(alpha.target.labels[r].clone())))
                        .expect("target gamma label");
                    mat.add_to(tpos, j, &v);
                }
            }
            let level_map = Power::Sym(n).map(&ModuleMap::new(gs.clone(), gt.clone(), mat));
            maps.push(
                tgt.normalized.projections[k]
                    .compose(&level_map)
                    .compose(&src.normalized.sections[k]),
            );
        }
        Ok(ChainMap::new(src.complex, tgt.complex, maps)?)
    }

    #[test]
    fn homotopic_maps_agree_on_koszul_homology() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..6 {
            let rp = rng.gen_range(1..=2usize);
            let rq = rng.gen_range(1..=2usize);
            let p = zfree(rp);
            let q = zfree(rq);
            let f = ModuleMap::new(p.clone(), q.clone(), random_matrix(&mut rng, rq, rp));
            // α¹ = identity, α² = identity + boundary of a random homotopy
            let h = ModuleMap::new(q.clone(), p.clone(), random_matrix(&mut rng, rp, rq));
            let a1p = ModuleMap::identity(&p);
            let a1q = ModuleMap::identity(&q);
            let a2p = a1p.add(&h.compose(&f));
            let a2q = a1q.add(&f.compose(&h));
            for n in 1..=2usize {
                let k1 = koszul_chain_map(&f, &f, &a1p, &a1q, n).unwrap();
                let k2 = koszul_chain_map(&f, &f, &a2p, &a2q, n).unwrap();
                for k in 0..=n {
                    let hs = homology(&k1.source, k, None).unwrap();
                    let ht = homology(&k1.target, k, None).unwrap();
                    let diff = k1.maps[k].sub(&k2.maps[k]);
                    let ind = induced_map(&diff, &hs, &ht).unwrap();
                    assert!(ind.is_zero(), "koszul degree {k}, n = {n}");
                }
                let m1 = nfg_chain_map(&f, &f, &a1p, &a1q, n).unwrap();
                let m2 = nfg_chain_map(&f, &f, &a2p, &a2q, n).unwrap();
                for k in 0..=n {
                    let hs = homology(&m1.source, k, None).unwrap();
                    let ht = homology(&m1.target, k, None).unwrap();
                    let diff = m1.maps[k].sub(&m2.maps[k]);
                    let ind = induced_map(&diff, &hs, &ht).unwrap();
                    assert!(ind.is_zero(), "normalized degree {k}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn functor_levels_are_functor_images() {
        let p = zfree(2);
        let g = gamma(&ChainComplex::concentrated(&p, 0), 2);
        let s2 = apply_functor_levelwise(&Power::Sym(2), &g);
        for n in 0..=2 {
            assert_eq!(s2.modules[n].dim(), 3);
        }
        simplicial_identities_check(&s2).unwrap();
    }
}
