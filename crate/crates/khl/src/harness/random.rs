//! Seeded deterministic instance generation for the property suites:
//! integer and rational chain complexes, chain-homotopic map pairs, and
//! graded complexes assembled from shifted elementary blocks.

use crate::arith::{col_hermite, IntMat, Ring, SparseMatrix};
use crate::complex::ChainComplex;
use crate::module::{BasedFreeModule, Label, ModuleMap};
use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_matrix(rng: &mut ChaCha8Rng, ring: &Ring, rows: usize, cols: usize) -> SparseMatrix {
    let mut m = SparseMatrix::zero(ring.clone(), rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let v: i64 = rng.gen_range(-9..=9);
            if v != 0 {
                m.set(i, j, ring.from_i64(v));
            }
        }
    }
    m
}

/// A random complex of the given shape over ℤ or ℚ: the first differential
/// is arbitrary, higher ones are random combinations of an integer kernel
/// basis of the one below, so d² = 0 holds exactly over both rings.
pub fn random_complex(rng: &mut ChaCha8Rng, ring: &Ring, max_len: usize, max_rank: usize) -> ChainComplex {
    assert!(matches!(ring, Ring::Int | Ring::Rat), "integer-patterned rings");
    let len = rng.gen_range(1..=max_len);
    let dims: Vec<usize> = (0..=len).map(|_| rng.gen_range(1..=max_rank)).collect();
    let modules: Vec<BasedFreeModule> = dims
        .iter()
        .map(|&d| BasedFreeModule::standard(ring.clone(), d))
        .collect();
    let mut diffs: Vec<ModuleMap> = Vec::new();
    let mut prev_int: Option<IntMat> = None;
    for k in 1..=len {
        let mat = match &prev_int {
            None => random_matrix(rng, ring, dims[k - 1], dims[k]),
            Some(p) => {
                // columns = random small combinations of ker(previous d)
                let kb = col_hermite(p).kernel();
                let mut m = SparseMatrix::zero(ring.clone(), dims[k - 1], dims[k]);
                for j in 0..dims[k] {
                    for b in &kb {
                        let c: i64 = rng.gen_range(-2..=2);
                        if c == 0 {
                            continue;
                        }
                        for (i, v) in b.iter().enumerate() {
                            if v != &BigInt::from(0) {
                                let add = ring.from_bigint(&(v * BigInt::from(c)));
                                m.add_to(i, j, &add);
                            }
                        }
                    }
                }
                m
            }
        };
        // keep the integer shadow for the next kernel computation
        let mut shadow = IntMat::zero(dims[k - 1], dims[k]);
        for ((i, j), s) in mat.entries() {
            shadow.set(*i, *j, s.as_bigint().expect("integer-patterned entry"));
        }
        prev_int = Some(shadow);
        diffs.push(ModuleMap::new(
            modules[k].clone(),
            modules[k - 1].clone(),
            mat,
        ));
    }
    ChainComplex::new(modules, diffs).expect("kernel construction gives d^2 = 0")
}

/// A pair of chain-homotopic endomorphisms of a random complex:
/// α¹ is either the identity or itself a homotopy perturbation of it, and
/// α² = α¹ + d∘h + h∘d for a fresh random h.
pub struct HomotopyPair {
    pub complex: ChainComplex,
    pub alpha1: Vec<ModuleMap>,
    pub alpha2: Vec<ModuleMap>,
}

fn random_homotopy(rng: &mut ChaCha8Rng, c: &ChainComplex) -> Vec<ModuleMap> {
    // h_k : C_k -> C_{k+1}, zero above the top
    (0..=c.top())
        .map(|k| {
            if k + 1 <= c.top() {
                let m = random_matrix(rng, c.ring(), c.dim(k + 1), c.dim(k));
                ModuleMap::new(
                    c.modules[k].clone(),
                    c.modules[k + 1].clone(),
                    m,
                )
            } else {
                let zero = BasedFreeModule::new(c.ring().clone(), vec![], vec![]);
                ModuleMap::zero(&c.modules[k], &zero)
            }
        })
        .collect()
}

fn perturb(c: &ChainComplex, alpha: &[ModuleMap], h: &[ModuleMap]) -> Vec<ModuleMap> {
    (0..=c.top())
        .map(|k| {
            let mut m = alpha[k].clone();
            if k + 1 <= c.top() {
                // d_{k+1} ∘ h_k
                m = m.add(&c.diffs[k].compose(&h[k]));
            }
            if k >= 1 {
                // h_{k-1} ∘ d_k
                m = m.add(&h[k - 1].compose(&c.diffs[k - 1]));
            }
            m
        })
        .collect()
}

pub fn random_homotopy_pair(rng: &mut ChaCha8Rng, ring: &Ring, max_len: usize, max_rank: usize) -> HomotopyPair {
    let c = random_complex(rng, ring, max_len, max_rank);
    let id: Vec<ModuleMap> = (0..=c.top()).map(|k| ModuleMap::identity(&c.modules[k])).collect();
    let alpha1 = match rng.gen_range(0..3u8) {
        0 => id,
        1 => {
            let h0 = random_homotopy(rng, &c);
            perturb(&c, &id, &h0)
        }
        _ => {
            let h0 = random_homotopy(rng, &c);
            let zero: Vec<ModuleMap> = (0..=c.top())
                .map(|k| ModuleMap::zero(&c.modules[k], &c.modules[k]))
                .collect();
            perturb(&c, &zero, &h0)
        }
    };
    let h = random_homotopy(rng, &c);
    let alpha2 = perturb(&c, &alpha1, &h);
    HomotopyPair {
        complex: c,
        alpha1,
        alpha2,
    }
}

/// A random graded complex over a one-variable graded ring: a direct sum of
/// shifted elementary blocks — either a module concentrated in one level or
/// a two-term multiplication by a power of the variable — so the
/// differential is homogeneous and squares to zero blockwise.
pub fn random_graded_complex(rng: &mut ChaCha8Rng, ring: &Ring, max_len: usize, blocks: usize) -> ChainComplex {
    assert!(ring.is_graded(), "graded ring required");
    let mut acc: Option<ChainComplex> = None;
    for _ in 0..blocks {
        let a: i64 = rng.gen_range(0..=2);
        let level = rng.gen_range(0..=max_len.saturating_sub(1));
        let block = if rng.gen_bool(0.5) {
            // concentrated: one generator of internal degree a at `level`
            let m = BasedFreeModule::new(ring.clone(), vec![Label::E(0)], vec![a]);
            ChainComplex::concentrated(&m, level)
        } else {
            // two-term: R(−a−e) −x^e→ R(−a), placed at levels level+1, level
            let e: u32 = rng.gen_range(1..=2);
            let src = BasedFreeModule::new(ring.clone(), vec![Label::E(0)], vec![a + e as i64]);
            let tgt = BasedFreeModule::new(ring.clone(), vec![Label::E(0)], vec![a]);
            let mut mat = SparseMatrix::zero(ring.clone(), 1, 1);
            let mut x = ring.var(0);
            for _ in 1..e {
                x = ring.mul(&x, &ring.var(0));
            }
            mat.set(0, 0, x);
            let two = ChainComplex::two_term(&ModuleMap::new(src, tgt, mat));
            two.shift(level)
        };
        acc = Some(match acc {
            None => block,
            Some(c) => c.direct_sum(&block),
        });
    }
    acc.expect("at least one block")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{BaseField, PolyRing};

    #[test]
    fn same_seed_reproduces_instances() {
        let a = random_complex(&mut rng_for(5), &Ring::Int, 3, 3);
        let b = random_complex(&mut rng_for(5), &Ring::Int, 3, 3);
        assert_eq!(a.modules.len(), b.modules.len());
        for (x, y) in a.diffs.iter().zip(&b.diffs) {
            assert_eq!(x.matrix, y.matrix);
        }
    }

    #[test]
    fn homotopy_pairs_differ_by_a_boundary_homotopy() {
        for seed in 0..6 {
            let p = random_homotopy_pair(&mut rng_for(seed), &Ring::Int, 3, 3);
            // both sides are chain maps: d ∘ α = α ∘ d
            for k in 1..=p.complex.top() {
                for alpha in [&p.alpha1, &p.alpha2] {
                    let left = alpha[k - 1].compose(&p.complex.diffs[k - 1]);
                    let right = p.complex.diffs[k - 1].compose(&alpha[k]);
                    assert_eq!(left.matrix, right.matrix, "seed {seed} degree {k}");
                }
            }
        }
    }

    #[test]
    fn graded_blocks_make_valid_complexes() {
        let ring = Ring::Poly(PolyRing {
            base: BaseField::Rat,
            vars: vec!["x".into()],
        });
        for seed in 0..8 {
            let c = random_graded_complex(&mut rng_for(seed), &ring, 2, 3);
            c.validate().unwrap();
            assert!(c.top() <= 2);
        }
    }

    #[test]
    fn rational_complexes_are_valid() {
        for seed in 0..6 {
            let c = random_complex(&mut rng_for(seed), &Ring::Rat, 3, 3);
            c.validate().unwrap();
        }
    }
}
