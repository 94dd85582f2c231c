use super::chain::{ChainComplex, ChainMap, ComplexError};
use super::homology::{homology, induced_map, Homology};
use crate::arith::{Ring, Scalar, SparseMatrix};
use crate::module::{BasedFreeModule, Label, ModuleMap};
use crate::perm::Perm;
use num::{BigInt, BigRational, One, Zero};
use std::ops::RangeInclusive;

/// The total complex of the n-fold tensor power of a complex, carrying the
/// symmetric-group action by signed factor swaps.
pub struct EquivariantComplex {
    pub complex: ChainComplex,
    pub n: usize,
    /// Chain-level action of each adjacent transposition (i, i+1).
    pub adjacent: Vec<ChainMap>,
    /// Per total degree: the factor-degree compositions, lexicographically
    /// ascending; block c of degree m holds C_{p_1} ⊗ … ⊗ C_{p_n} for
    /// p = comps[m][c].
    comps: Vec<Vec<Vec<usize>>>,
}

fn compositions(n: usize, total: usize, cap: usize) -> Vec<Vec<usize>> {
    // all p ∈ {0..cap}^n with Σ p_i = total, lexicographically ascending
    fn rec(n: usize, total: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for v in 0..=cap.min(total) {
            if total - v > cap * (n - 1) {
                continue;
            }
            prefix.push(v);
            rec(n - 1, total - v, cap, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, total, cap, &mut Vec::new(), &mut out);
    out
}

/// Cartesian basis words for the factors of one composition.
fn words_for(c: &ChainComplex, p: &[usize]) -> Vec<Vec<usize>> {
    let mut words = vec![Vec::new()];
    for &pi in p {
        let d = c.dim(pi);
        let mut next = Vec::with_capacity(words.len() * d);
        for w in words {
            for i in 0..d {
                let mut w2 = w.clone();
                w2.push(i);
                next.push(w2);
            }
        }
        words = next;
    }
    words
}

fn power_module(c: &ChainComplex, comps: &[Vec<usize>]) -> BasedFreeModule {
    let ring = c.ring().clone();
    let mut labels = Vec::new();
    let mut degrees = Vec::new();
    for (ci, p) in comps.iter().enumerate() {
        for w in words_for(c, p) {
            let deg = w
                .iter()
                .zip(p)
                .map(|(&i, &pi)| c.modules[pi].degrees[i])
                .sum();
            labels.push(Label::Part(ci, Box::new(Label::Word(w))));
            degrees.push(deg);
        }
    }
    BasedFreeModule::new(ring, labels, degrees)
}

fn split_label(l: &Label) -> (usize, &[usize]) {
    match l {
        Label::Part(ci, inner) => match inner.as_ref() {
            Label::Word(w) => (*ci, w),
            _ => panic!("tensor-power label shape"),
        },
        _ => panic!("tensor-power label shape"),
    }
}

/// n-fold total tensor power with the canonical signed symmetric-group
/// action: the transposition (i, i+1) swaps factors with sign (−1)^{p_i p_{i+1}}.
pub fn tensor_power_equivariant(
    c: &ChainComplex,
    n: usize,
) -> Result<EquivariantComplex, ComplexError> {
    assert!(n >= 1, "tensor power needs n >= 1");
    let ring = c.ring().clone();
    let top = c.top();
    let total_top = top * n;
    let comps: Vec<Vec<Vec<usize>>> = (0..=total_top)
        .map(|m| compositions(n, m, top))
        .collect();
    let modules: Vec<BasedFreeModule> = comps.iter().map(|cs| power_module(c, cs)).collect();

    let mut diffs = Vec::new();
    for m in 1..=total_top {
        let src = modules[m].clone();
        let tgt = modules[m - 1].clone();
        let src_comps = &comps[m];
        let tgt_mod = tgt.clone();
        let tgt_comps = comps[m - 1].clone();
        let cfix = c.clone();
        let ringc = ring.clone();
        let map = ModuleMap::from_fn(src.clone(), tgt, move |j| {
            let (ci, w) = split_label(&src.labels[j]);
            let p = &src_comps[ci];
            let mut out = Vec::new();
            let mut sign_exp = 0usize;
            for (slot, &pi) in p.iter().enumerate() {
                if pi > 0 {
                    let mut q = p.clone();
                    q[slot] -= 1;
                    let qi = tgt_comps
                        .iter()
                        .position(|t| *t == q)
                        .expect("decremented composition");
                    let d = cfix.d(pi).expect("inner differential");
                    for (r, coeff) in d.matrix.col_entries(w[slot]) {
                        let mut w2 = w.to_vec();
                        w2[slot] = r;
                        let label = Label::Part(qi, Box::new(Label::Word(w2)));
                        let row = tgt_mod.position(&label).expect("target label");
                        let val = if sign_exp % 2 == 0 {
                            coeff.clone()
                        } else {
                            ringc.neg(&coeff)
                        };
                        out.push((row, val));
                    }
                }
                sign_exp += pi;
            }
            out
        });
        diffs.push(map);
    }
    let complex = ChainComplex::new(modules.clone(), diffs)?;

    let mut adjacent = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut maps = Vec::new();
        for m in 0..=total_top {
            let src = modules[m].clone();
            let src2 = src.clone();
            let comps_m = comps[m].clone();
            let ringc = ring.clone();
            let map = ModuleMap::from_fn(src.clone(), src.clone(), move |j| {
                let (ci, w) = split_label(&src2.labels[j]);
                let p = &comps_m[ci];
                let mut q = p.clone();
                q.swap(i, i + 1);
                let qi = comps_m.iter().position(|t| *t == q).expect("swapped composition");
                let mut w2 = w.to_vec();
                w2.swap(i, i + 1);
                let label = Label::Part(qi, Box::new(Label::Word(w2)));
                let row = src2.position(&label).expect("swap label");
                let val = if (p[i] * p[i + 1]) % 2 == 0 {
                    ringc.one()
                } else {
                    ringc.neg(&ringc.one())
                };
                vec![(row, val)]
            });
            maps.push(map);
        }
        adjacent.push(ChainMap::new(complex.clone(), complex.clone(), maps)?);
    }

    Ok(EquivariantComplex {
        complex,
        n,
        adjacent,
        comps,
    })
}

impl EquivariantComplex {
    /// Chain-level action of an arbitrary permutation, composed from
    /// adjacent transpositions.
    pub fn action(&self, sigma: &Perm) -> ChainMap {
        assert_eq!(sigma.n(), self.n, "permutation size");
        let mut acc = ChainMap::identity(&self.complex);
        for &i in sigma.adjacent_word().iter().rev() {
            acc = self.adjacent[i].compose(&acc);
        }
        acc
    }

    /// Factor-degree compositions indexing the blocks of total degree m.
    pub fn blocks(&self, m: usize) -> &[Vec<usize>] {
        &self.comps[m]
    }

    /// Involution, braid, and distant-commutation relations of the
    /// generating transpositions, checked degreewise on matrices.
    pub fn verify_relations(&self) -> bool {
        let id = ChainMap::identity(&self.complex);
        let gens = &self.adjacent;
        for (i, s) in gens.iter().enumerate() {
            if s.compose(s) != id {
                return false;
            }
            if i + 1 < gens.len() {
                let t = &gens[i + 1];
                let sts = s.compose(&t.compose(s));
                let tst = t.compose(&s.compose(t));
                if sts != tst {
                    return false;
                }
            }
            for t in gens.iter().skip(i + 2) {
                if s.compose(t) != t.compose(s) {
                    return false;
                }
            }
        }
        true
    }
}

/// The rank-(n−1) kernel of the coordinate-sum map on the rank-n
/// permutation module, with basis b_i = e_i − e_{n−1}.
pub struct KnModule {
    pub n: usize,
    pub module: BasedFreeModule,
    /// Embedding into the permutation module R^n.
    pub inclusion: ModuleMap,
}

pub fn kn_module(ring: &Ring, n: usize) -> KnModule {
    assert!(n >= 1);
    let module = BasedFreeModule::standard(ring.clone(), n - 1);
    let ambient = BasedFreeModule::standard(ring.clone(), n);
    let ringc = ring.clone();
    let inclusion = ModuleMap::from_fn(module.clone(), ambient, move |i| {
        vec![
            (i, ringc.one()),
            (n - 1, ringc.neg(&ringc.one())),
        ]
    });
    KnModule {
        n,
        module,
        inclusion,
    }
}

impl KnModule {
    /// Matrix of σ in the basis b_i = e_i − e_{n−1}: σ(b_i) = b_{σ(i)} − b_{σ(n−1)}
    /// with b_{n−1} read as zero.
    pub fn action(&self, sigma: &Perm) -> ModuleMap {
        assert_eq!(sigma.n(), self.n, "permutation size");
        let ring = self.module.ring.clone();
        let n = self.n;
        let sig = sigma.clone();
        ModuleMap::from_fn(self.module.clone(), self.module.clone(), move |i| {
            let mut out = Vec::new();
            let a = sig.apply(i);
            if a != n - 1 {
                out.push((a, ring.one()));
            }
            let b = sig.apply(n - 1);
            if b != n - 1 {
                out.push((b, ring.neg(&ring.one())));
            }
            out
        })
    }

    /// The coordinate-sum map on the ambient permutation module.
    pub fn sum_map(&self) -> ModuleMap {
        let ring = self.module.ring.clone();
        let ambient = self.inclusion.target.clone();
        let scalar_ring = ring.clone();
        ModuleMap::from_fn(
            ambient,
            BasedFreeModule::standard(ring, 1),
            move |_| vec![(0, scalar_ring.one())],
        )
    }

    /// Permutation action on the ambient module R^n.
    pub fn ambient_action(&self, sigma: &Perm) -> ModuleMap {
        let ring = self.module.ring.clone();
        let ambient = self.inclusion.target.clone();
        let sig = sigma.clone();
        ModuleMap::from_fn(ambient.clone(), ambient.clone(), move |i| {
            vec![(sig.apply(i), ring.one())]
        })
    }
}

/// Trace of the map induced by σ on H_k; graded coefficients sum the
/// per-degree traces across the window.
pub fn character_on_homology(
    e: &EquivariantComplex,
    sigma: &Perm,
    k: usize,
    window: Option<RangeInclusive<i64>>,
) -> Result<Scalar, ComplexError> {
    let h = homology(&e.complex, k, window)?;
    let f_k = e.action(sigma).maps[k].clone();
    let ind = induced_map(&f_k, &h, &h)?;
    if let Some(m) = ind.field_matrix() {
        return Ok(m.trace());
    }
    if let Some(per) = ind.graded_matrices() {
        let base = e.complex.ring().base_ring();
        let mut t = base.zero();
        for m in per.values() {
            t = base.add(&t, &m.trace());
        }
        return Ok(t);
    }
    Err(ComplexError::UnsupportedRing(
        "character needs field or graded coefficients".into(),
    ))
}

/// Induced matrix of σ on H_k over a field — the raw map behind the
/// character, for involution-invariant comparisons.
pub fn action_matrix_on_homology(
    e: &EquivariantComplex,
    sigma: &Perm,
    k: usize,
    h: &Homology,
) -> Result<SparseMatrix, ComplexError> {
    let f_k = e.action(sigma).maps[k].clone();
    let ind = induced_map(&f_k, h, h)?;
    ind.field_matrix()
        .cloned()
        .ok_or_else(|| ComplexError::UnsupportedRing("field matrix".into()))
}

/// Character predicted for H_k of an n-fold tensor power of a length-d
/// resolution of a rank-r module: r^{#cycles(σ)} · tr Λ^k(σ) on a direct
/// sum of d copies of the standard representation, via the Newton
/// recursion from power-sum traces tr(σ^j) = d·(fix(σ^j) − 1).
pub fn predicted_character(
    v_rank: i64,
    conormal_rank: usize,
    n: usize,
    k: usize,
    sigma: &Perm,
) -> BigRational {
    assert_eq!(sigma.n(), n, "permutation size");
    let d = BigRational::from(BigInt::from(conormal_rank as i64));
    // power sums of σ on (I/I²) ⊗ K_n
    let mut p = Vec::with_capacity(k + 1);
    for j in 1..=k {
        let fix = sigma.pow(j).fixed_points() as i64;
        p.push(&d * BigRational::from(BigInt::from(fix - 1)));
    }
    // Newton: e_m = (1/m) Σ_{j=1}^{m} (−1)^{j−1} p_j e_{m−j}
    let mut e = vec![BigRational::one()];
    for m in 1..=k {
        let mut acc = BigRational::zero();
        for j in 1..=m {
            let term = &p[j - 1] * &e[m - j];
            if j % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / BigRational::from(BigInt::from(m as i64)));
    }
    let r = BigInt::from(v_rank);
    let front = BigRational::from(r.pow(sigma.cycle_count() as u32));
    front * e[k].clone()
}

/// A standard permutation with the given cycle lengths (consecutive blocks).
pub fn perm_of_cycle_type(n: usize, lengths: &[usize]) -> Perm {
    assert_eq!(lengths.iter().sum::<usize>(), n, "cycle type of n");
    let mut cycles = Vec::new();
    let mut next = 0;
    for &l in lengths {
        cycles.push((next..next + l).collect());
        next += l;
    }
    Perm::from_cycles(n, &cycles)
}
