//! Koszul complexes of a module map, divided-power dual complexes, hook
//! Schur and coSchur modules with explicit split image bases, conormal and
//! resolution data over quotient rings, and explicit cycle witnesses for
//! homology generators.

use crate::arith::{col_hermite, ArithError, IntMat, Ring, Scalar, SparseMatrix};
use crate::complex::{homology, ChainComplex, ComplexError};
use crate::module::{tensor_module, BasedFreeModule, Label, ModuleMap, Power};
use num::{BigInt, One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum KoszulError {
    #[error("unsupported ideal: {0}")]
    UnsupportedIdeal(String),
    #[error("witness element is not a cycle in degree {degree}")]
    NotACycle { degree: usize },
    #[error("no recorded lift for generator index {index}")]
    LiftFailure { index: usize },
    #[error("scalar {0} does not lie in the ideal")]
    NotInIdeal(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

fn wedge_multi(label: &Label) -> (&[usize], &[usize]) {
    match label {
        Label::Tens(a, b) => match (a.as_ref(), b.as_ref()) {
            (Label::Wedge(s), Label::Multi(m)) => (s, m),
            _ => panic!("expected wedge-tensor-sym label"),
        },
        _ => panic!("expected tensor label"),
    }
}

fn insert_sorted(word: &[usize], x: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(word.len() + 1);
    let at = word.partition_point(|&w| w <= x);
    out.extend_from_slice(&word[..at]);
    out.push(x);
    out.extend_from_slice(&word[at..]);
    out
}

/// The degree-k piece Λ^k(P) ⊗ Sym^{n−k}(Q) with its alternating-contraction
/// differential; degree n is Λ^n(P), degree 0 is Sym^n(Q).
pub fn koszul_complex(f: &ModuleMap, n: usize) -> ChainComplex {
    let p = &f.source;
    let q = &f.target;
    let modules: Vec<BasedFreeModule> = (0..=n)
        .map(|k| tensor_module(&Power::Ext(k).module(p), &Power::Sym(n - k).module(q)))
        .collect();
    let mut diffs = Vec::with_capacity(n);
    for k in 1..=n {
        let src = modules[k].clone();
        let tgt = modules[k - 1].clone();
        let ring = src.ring.clone();
        let fmat = f.matrix.clone();
        let src_labels = src.labels.clone();
        let tgt_c = tgt.clone();
        diffs.push(ModuleMap::from_fn(src, tgt, move |j| {
            let (s, m) = wedge_multi(&src_labels[j]);
            let mut out = Vec::new();
            for (i, &si) in s.iter().enumerate() {
                // the factor at 1-based position i+1 carries sign (−1)^{k−(i+1)}
                let neg = (k - (i + 1)) % 2 == 1;
                let mut rest = s.to_vec();
                rest.remove(i);
                for (t, c) in fmat.col_entries(si) {
                    let label = Label::Tens(
                        Box::new(Label::Wedge(rest.clone())),
                        Box::new(Label::Multi(insert_sorted(m, t))),
                    );
                    let pos = tgt_c.position(&label).expect("koszul target label");
                    out.push((pos, if neg { ring.neg(&c) } else { c }));
                }
            }
            out
        }));
    }
    ChainComplex::new(modules, diffs).expect("koszul differentials square to zero")
}

fn multi_wedge(label: &Label) -> (&[usize], &[usize]) {
    match label {
        Label::Tens(a, b) => match (a.as_ref(), b.as_ref()) {
            (Label::Multi(m), Label::Wedge(s)) => (m, s),
            _ => panic!("expected div-tensor-wedge label"),
        },
        _ => panic!("expected tensor label"),
    }
}

/// The divided-power dual: degree k is D^k(P) ⊗ Λ^{n−k}(Q), with the
/// contraction that peels one divided factor and wedges its image in.
pub fn dual_koszul_complex(f: &ModuleMap, n: usize) -> ChainComplex {
    let p = &f.source;
    let q = &f.target;
    let modules: Vec<BasedFreeModule> = (0..=n)
        .map(|k| tensor_module(&Power::Div(k).module(p), &Power::Ext(n - k).module(q)))
        .collect();
    let mut diffs = Vec::with_capacity(n);
    for k in 1..=n {
        let src = modules[k].clone();
        let tgt = modules[k - 1].clone();
        let ring = src.ring.clone();
        let fmat = f.matrix.clone();
        let src_labels = src.labels.clone();
        let tgt_c = tgt.clone();
        diffs.push(ModuleMap::from_fn(src, tgt, move |j| {
            let (m, s) = multi_wedge(&src_labels[j]);
            let mut out = Vec::new();
            let mut seen = None;
            for (i, &mi) in m.iter().enumerate() {
                if seen == Some(mi) {
                    continue; // one term per distinct divided factor
                }
                seen = Some(mi);
                let mut rest = m.to_vec();
                rest.remove(i);
                for (t, c) in fmat.col_entries(mi) {
                    if s.contains(&t) {
                        continue;
                    }
                    let before = s.iter().filter(|&&w| w < t).count();
                    let coeff = if before % 2 == 1 { ring.neg(&c) } else { c };
                    let label = Label::Tens(
                        Box::new(Label::Multi(rest.clone())),
                        Box::new(Label::Wedge(insert_sorted(s, t))),
                    );
                    let pos = tgt_c.position(&label).expect("dual koszul target label");
                    out.push((pos, coeff));
                }
            }
            out
        }));
    }
    ChainComplex::new(modules, diffs).expect("dual koszul differentials square to zero")
}

/// A split image inside an ambient module, with an explicit column basis.
pub struct ImageModule {
    pub ambient: BasedFreeModule,
    /// Abstract copy of the image; degree i matches basis column i.
    pub module: BasedFreeModule,
    /// ambient.dim() × rank; columns form a basis of the image.
    pub basis: SparseMatrix,
}

impl ImageModule {
    pub fn rank(&self) -> usize {
        self.module.dim()
    }
}

/// Basis of the image of a differential whose image is a split summand:
/// computed once over the integers (column Hermite form) and transported
/// into the coefficient ring.
fn split_image(ambient: &BasedFreeModule, d_int: &IntMat) -> ImageModule {
    let ring = ambient.ring.clone();
    let cols = col_hermite(d_int).image_basis();
    let mut basis = SparseMatrix::zero(ring.clone(), ambient.dim(), cols.len());
    let mut degrees = Vec::with_capacity(cols.len());
    for (c, col) in cols.iter().enumerate() {
        let support: Vec<usize> = (0..col.len()).filter(|&i| !col[i].is_zero()).collect();
        let deg = ambient.degrees[support[0]];
        assert!(
            support.iter().all(|&i| ambient.degrees[i] == deg),
            "image basis column mixes degrees"
        );
        degrees.push(deg);
        for &i in &support {
            basis.set(i, c, ring.from_bigint(&col[i]));
        }
    }
    let labels = (0..cols.len()).map(Label::E).collect();
    ImageModule {
        ambient: ambient.clone(),
        module: BasedFreeModule::new(ring, labels, degrees),
        basis,
    }
}

fn integer_shadow(m: &SparseMatrix) -> IntMat {
    IntMat::from_sparse(&m.map_ring(Ring::Int, |s| match s {
        Scalar::Int(n) => Scalar::Int(n.clone()),
        Scalar::Mod(n) => Scalar::Int(BigInt::from(*n)),
        Scalar::Rat(q) => {
            assert!(q.denom().is_one(), "non-integral entry in universal matrix");
            Scalar::Int(q.numer().clone())
        }
        Scalar::Poly(_) => panic!("polynomial entry in universal matrix"),
    }))
}

/// Hook Schur module: the image of the incoming differential of
/// Kos^n(id_V) in degree k, with an explicit basis.
pub fn schur_module(v: &BasedFreeModule, n: usize, k: usize) -> ImageModule {
    assert!(k <= n, "hook row bound");
    let kos = koszul_complex(&ModuleMap::identity(v), n);
    let ambient = kos.modules[k].clone();
    let d = kos.d_or_zero(k + 1);
    // the identity differential has universal integer entries
    split_image(&ambient, &integer_shadow(&d.matrix))
}

/// Hook coSchur module: the analogous image inside the dual complex.
pub fn coschur_module(v: &BasedFreeModule, n: usize, k: usize) -> ImageModule {
    assert!(k <= n, "hook row bound");
    let kos = dual_koszul_complex(&ModuleMap::identity(v), n);
    let ambient = kos.modules[k].clone();
    let d = kos.d_or_zero(k + 1);
    split_image(&ambient, &integer_shadow(&d.matrix))
}

/// How the ideal of a conormal setup is presented.
#[derive(Clone, Debug)]
pub enum IdealSpec {
    /// A principal ideal generated by a non-zero-divisor.
    PrincipalNzd(Scalar),
    /// A graded complete intersection: the full variable list, degree one each.
    GradedCi(Vec<Scalar>),
}

impl IdealSpec {
    pub fn generators(&self) -> Vec<Scalar> {
        match self {
            IdealSpec::PrincipalNzd(g) => vec![g.clone()],
            IdealSpec::GradedCi(gs) => gs.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.generators().len()
    }
}

/// The ambient ring R, the quotient R/I, and the conormal module I/I²
/// as a free quotient-ring module.
#[derive(Clone, Debug)]
pub struct ConormalData {
    pub ambient: Ring,
    pub quotient: Ring,
    pub spec: IdealSpec,
    pub conormal: BasedFreeModule,
}

/// Classify and validate an ideal given by generators.
pub fn conormal_data(ambient: &Ring, gens: &[Scalar]) -> Result<ConormalData, KoszulError> {
    match ambient {
        Ring::Int => {
            if gens.len() != 1 {
                return Err(KoszulError::UnsupportedIdeal(
                    "integer ideals must be principal".into(),
                ));
            }
            let m = match &gens[0] {
                Scalar::Int(m) => m.abs(),
                _ => unreachable!("integer ring scalar"),
            };
            let m_u64: u64 = (&m)
                .try_into()
                .map_err(|_| KoszulError::UnsupportedIdeal("modulus too large".into()))?;
            if m_u64 < 2 {
                return Err(KoszulError::UnsupportedIdeal(
                    "the generator of a proper nonzero ideal has |m| >= 2".into(),
                ));
            }
            let quotient = Ring::IntMod(m_u64);
            Ok(ConormalData {
                ambient: ambient.clone(),
                quotient: quotient.clone(),
                spec: IdealSpec::PrincipalNzd(Scalar::Int(m)),
                conormal: BasedFreeModule::standard(quotient, 1),
            })
        }
        Ring::Poly(p) => {
            let mut var_of = Vec::with_capacity(gens.len());
            for g in gens {
                let idx = (0..p.vars.len()).find(|&i| *g == ambient.var(i));
                match idx {
                    Some(i) => var_of.push(i),
                    None => {
                        return Err(KoszulError::UnsupportedIdeal(
                            "graded ideal generators must be ring variables".into(),
                        ))
                    }
                }
            }
            var_of.sort_unstable();
            var_of.dedup();
            if var_of.len() != gens.len() || var_of != (0..p.vars.len()).collect::<Vec<_>>() {
                return Err(KoszulError::UnsupportedIdeal(
                    "graded ideals must be generated by the full variable list".into(),
                ));
            }
            let quotient = ambient.base_ring();
            let d = gens.len();
            let conormal = BasedFreeModule::new(
                quotient.clone(),
                (0..d).map(Label::E).collect(),
                vec![1; d],
            );
            let spec = if d == 1 {
                IdealSpec::PrincipalNzd(gens[0].clone())
            } else {
                IdealSpec::GradedCi(gens.to_vec())
            };
            let data = ConormalData {
                ambient: ambient.clone(),
                quotient,
                spec,
                conormal,
            };
            // the generators must form a regular sequence: their Koszul
            // complex resolves the quotient
            let res = generator_koszul(&data);
            let window = 0..=(d as i64 + 1);
            for i in 1..=res.top() {
                let h = homology(&res, i, Some(window.clone()))?;
                if !(&h.descriptor).is_trivial() {
                    return Err(KoszulError::UnsupportedIdeal(
                        "generators are not a regular sequence".into(),
                    ));
                }
            }
            Ok(data)
        }
        _ => Err(KoszulError::UnsupportedIdeal(
            "conormal setups need the integers or a graded polynomial ring".into(),
        )),
    }
}

/// The Koszul complex on the ideal generators: Λ^•(R(−1)^d) → R.
fn generator_koszul(c: &ConormalData) -> ChainComplex {
    let gens = c.spec.generators();
    let d = gens.len();
    let p = BasedFreeModule::new(
        c.ambient.clone(),
        (0..d).map(Label::E).collect(),
        gens.iter()
            .map(|g| c.ambient.homogeneous_degree(g).unwrap_or(0))
            .collect(),
    );
    let q = BasedFreeModule::standard(c.ambient.clone(), 1);
    let mut mat = SparseMatrix::zero(c.ambient.clone(), 1, d);
    for (j, g) in gens.iter().enumerate() {
        mat.set(0, j, g.clone());
    }
    koszul_complex(&ModuleMap::new(p, q, mat), d)
}

/// A free quotient-ring module together with its ambient-ring resolution.
/// The augmentation is coordinatewise reduction: basis i of the degree-0
/// module lifts basis i of `v`.
pub struct ResolutionData {
    pub v: BasedFreeModule,
    pub complex: ChainComplex,
    pub conormal: ConormalData,
}

/// Resolve (R/I)^rank over R: a two-term complex for a principal ideal,
/// the generator Koszul complex (summed rank times) for a complete
/// intersection. The homology is verified to be V concentrated in degree 0.
pub fn resolution_for(v_rank: usize, c: &ConormalData) -> Result<ResolutionData, KoszulError> {
    let complex = match &c.spec {
        IdealSpec::PrincipalNzd(g) => {
            let gdeg = c.ambient.homogeneous_degree(g).unwrap_or(0);
            let q = BasedFreeModule::standard(c.ambient.clone(), v_rank);
            let p = BasedFreeModule::new(
                c.ambient.clone(),
                (0..v_rank).map(Label::E).collect(),
                vec![gdeg; v_rank],
            );
            let mut mat = SparseMatrix::zero(c.ambient.clone(), v_rank, v_rank);
            for i in 0..v_rank {
                mat.set(i, i, g.clone());
            }
            ChainComplex::two_term(&ModuleMap::new(p, q, mat))
        }
        IdealSpec::GradedCi(_) => {
            let one = generator_koszul(c);
            let mut acc = one.clone();
            for _ in 1..v_rank {
                acc = acc.direct_sum(&one);
            }
            acc
        }
    };
    let v = BasedFreeModule::standard(c.quotient.clone(), v_rank);
    let data = ResolutionData {
        v,
        complex,
        conormal: c.clone(),
    };
    data.validate()?;
    Ok(data)
}

impl ResolutionData {
    /// Homology must be V in degree 0 and nothing elsewhere.
    pub fn validate(&self) -> Result<(), KoszulError> {
        let window = self.window();
        let win = |_k: usize| match self.complex.ring() {
            Ring::Poly(_) => Some(window.clone()),
            _ => None,
        };
        for k in 1..=self.complex.top() {
            let h = homology(&self.complex, k, win(k))?;
            if !(&h.descriptor).is_trivial() {
                return Err(KoszulError::UnsupportedIdeal(format!(
                    "resolution has homology in degree {k}"
                )));
            }
        }
        let h0 = homology(&self.complex, 0, win(0))?;
        // descriptor shape follows the ring homology is computed over
        let expected = match (self.complex.ring(), &self.conormal.quotient) {
            (Ring::Int, Ring::IntMod(m)) => crate::complex::HomologyDescriptor::Abelian {
                rank: 0,
                torsion: vec![BigInt::from(*m); self.v.dim()],
            },
            _ => crate::complex::HomologyDescriptor::Hilbert(
                [(0i64, self.v.dim())].into_iter().filter(|&(_, n)| n > 0).collect(),
            ),
        };
        if (&h0.descriptor) != &expected {
            return Err(KoszulError::UnsupportedIdeal(format!(
                "resolution degree-0 homology is not V: {:?} vs expected {:?}",
                h0.descriptor, expected
            )));
        }
        Ok(())
    }

    /// A window wide enough for every graded computation over this setup.
    pub fn window(&self) -> std::ops::RangeInclusive<i64> {
        let top: i64 = self
            .complex
            .modules
            .iter()
            .flat_map(|m| m.degrees.iter().copied())
            .max()
            .unwrap_or(0);
        0..=(top + 1)
    }

    /// The recorded lift of basis vector `index` of V into the degree-0
    /// module of the resolution.
    pub fn lift(&self, index: usize) -> Result<Vec<Scalar>, KoszulError> {
        if index >= self.v.dim() {
            return Err(KoszulError::LiftFailure { index });
        }
        Ok(self.complex.modules[0].basis_vector(index))
    }
}

/// Divide a scalar exactly by a principal ideal generator.
fn div_in_ideal(ring: &Ring, a: &Scalar, g: &Scalar) -> Result<Scalar, KoszulError> {
    match ring {
        Ring::Int => ring
            .div_exact(a, g)
            .map_err(|_| KoszulError::NotInIdeal(ring.fmt_scalar(a))),
        Ring::Poly(_) => {
            let (ta, tg) = match (a, g) {
                (Scalar::Poly(ta), Scalar::Poly(tg)) => (ta, tg),
                _ => panic!("scalar/ring variant mismatch"),
            };
            assert_eq!(tg.terms.len(), 1, "principal generator is a monomial");
            let (gm, gc) = tg.terms.iter().next().unwrap();
            let base = ring.base_ring();
            let mut out = crate::arith::MPoly {
                terms: std::collections::BTreeMap::new(),
            };
            for (m, c) in &ta.terms {
                let q = m
                    .div(gm)
                    .ok_or_else(|| KoszulError::NotInIdeal(ring.fmt_scalar(a)))?;
                out.terms.insert(q, base.div_exact(c, gc)?);
            }
            Ok(Scalar::Poly(out))
        }
        _ => Err(KoszulError::UnsupportedIdeal(
            "principal division needs the integers or a polynomial ring".into(),
        )),
    }
}

/// The explicit cycle representing the homology class attached to the hook
/// generator (wedge of chosen basis vectors, symmetric tail) and the ideal
/// scalars r_1, …, r_k. Principal-ideal setups only.
///
/// The element is Σ_{i=1}^{k+1} (−1)^{k+1−i}
/// (r_1 q_{t_1}) ∧ … ∧ (r_k q_{t_k}) ⊗ q_{w_i} · (symmetric tail), where
/// w = `wedge_idx`, t runs over w with the i-th entry removed, and each
/// r·q is read backwards through the resolution differential.
pub fn thm32_witness(
    res: &ResolutionData,
    n: usize,
    k: usize,
    wedge_idx: &[usize],
    sym_idx: &[usize],
    rs: &[Scalar],
) -> Result<Vec<Scalar>, KoszulError> {
    let g = match &res.conormal.spec {
        IdealSpec::PrincipalNzd(g) => g.clone(),
        IdealSpec::GradedCi(_) => {
            return Err(KoszulError::UnsupportedIdeal(
                "explicit witnesses are defined for principal ideals".into(),
            ))
        }
    };
    assert_eq!(wedge_idx.len(), k + 1, "hook column has k+1 entries");
    assert_eq!(sym_idx.len(), n - k - 1, "symmetric tail has n-k-1 entries");
    assert!(
        wedge_idx.windows(2).all(|w| w[0] < w[1]),
        "wedge indices strictly increase"
    );
    assert_eq!(rs.len(), k, "one ideal scalar per conormal factor");
    let ring = res.complex.ring().clone();
    for &i in wedge_idx.iter().chain(sym_idx) {
        let _ = res.lift(i)?;
    }
    let scaled: Vec<Scalar> = rs
        .iter()
        .map(|r| div_in_ideal(&ring, r, &g))
        .collect::<Result<_, _>>()?;
    let kos = koszul_complex(&res.complex.diffs[0], n);
    let target = &kos.modules[k];
    let mut out = vec![ring.zero(); target.dim()];
    for i in 1..=(k + 1) {
        let mut coeff = if (k + 1 - i) % 2 == 1 {
            ring.from_i64(-1)
        } else {
            ring.one()
        };
        let mut wedge: Vec<usize> = Vec::with_capacity(k);
        for (j, &w) in wedge_idx.iter().enumerate() {
            if j + 1 == i {
                continue;
            }
            let r_index = if j + 1 < i { j } else { j - 1 };
            coeff = ring.mul(&coeff, &scaled[r_index]);
            wedge.push(w);
        }
        let mut sym: Vec<usize> = sym_idx.to_vec();
        sym.push(wedge_idx[i - 1]);
        sym.sort_unstable();
        let label = Label::Tens(Box::new(Label::Wedge(wedge)), Box::new(Label::Multi(sym)));
        let pos = target.position(&label).expect("witness label");
        out[pos] = ring.add(&out[pos], &coeff);
    }
    if let Some(d) = kos.d(k) {
        if d.apply(&out).iter().any(|s| !s.is_zero()) {
            return Err(KoszulError::NotACycle { degree: k });
        }
    }
    Ok(out)
}

/// Witnesses for every hook generator with every conormal scalar equal to
/// the ideal generator: together they represent a generating set of H_k.
pub fn thm32_witness_family(
    res: &ResolutionData,
    n: usize,
    k: usize,
) -> Result<Vec<Vec<Scalar>>, KoszulError> {
    use itertools::Itertools;
    let g = match &res.conormal.spec {
        IdealSpec::PrincipalNzd(g) => g.clone(),
        IdealSpec::GradedCi(_) => {
            return Err(KoszulError::UnsupportedIdeal(
                "explicit witnesses are defined for principal ideals".into(),
            ))
        }
    };
    let r = res.v.dim();
    let rs = vec![g; k];
    let mut out = Vec::new();
    for wedge in (0..r).combinations(k + 1) {
        for sym in (0..r).combinations_with_replacement(n - k - 1) {
            out.push(thm32_witness(res, n, k, &wedge, &sym, &rs)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::HomologyDescriptor;

    fn zmod(r: usize) -> BasedFreeModule {
        BasedFreeModule::standard(Ring::Int, r)
    }

    #[test]
    fn identity_koszul_complexes_are_exact() {
        for ring in [Ring::Int, Ring::Rat] {
            for rank in 1..=3usize {
                for n in 1..=3usize {
                    let v = BasedFreeModule::standard(ring.clone(), rank);
                    let kos = koszul_complex(&ModuleMap::identity(&v), n);
                    for k in 0..=n {
                        let h = homology(&kos, k, None).unwrap();
                        assert!(
                            (&h.descriptor).is_trivial(),
                            "H_{k} of rank {rank}, n {n}, {ring:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn multiplication_koszul_small_cases() {
        // Kos²(2·id_ℤ): H₀ = ℤ/2, H₁ = 0, top module vanishes
        let f = ModuleMap::scalar(&zmod(1), &Ring::Int.from_i64(2));
        let kos = koszul_complex(&f, 2);
        assert_eq!(
            kos.modules.iter().map(|m| m.dim()).collect::<Vec<_>>(),
            vec![1, 1, 0]
        );
        let h0 = homology(&kos, 0, None).unwrap();
        assert_eq!(
            (&h0.descriptor),
            &HomologyDescriptor::Abelian {
                rank: 0,
                torsion: vec![BigInt::from(2)]
            }
        );
        assert!(homology(&kos, 1, None).unwrap().descriptor.is_trivial());
        // Kos^m of a rank-1 map is the map itself: d₁ = (g)
        for m in 1..=4usize {
            let g = ModuleMap::scalar(&zmod(1), &Ring::Int.from_i64(3));
            let kos = koszul_complex(&g, m);
            assert_eq!(kos.dim(0), 1);
            assert_eq!(kos.dim(1), 1);
            assert_eq!(
                kos.diffs[0].matrix.get(0, 0),
                Ring::Int.from_i64(3),
                "m = {m}"
            );
        }
    }

    #[test]
    fn koszul_is_multiplicative_over_direct_sums() {
        let f = ModuleMap::scalar(&zmod(1), &Ring::Int.from_i64(2));
        let fp = ModuleMap::scalar(&zmod(1), &Ring::Int.from_i64(3));
        let sum = crate::module::direct_sum_maps(&[&f, &fp]);
        for n in 2..=3usize {
            let lhs = koszul_complex(&sum, n);
            let mut rhs: Option<ChainComplex> = None;
            for n1 in 0..=n {
                let piece = koszul_complex(&f, n1).tensor(&koszul_complex(&fp, n - n1));
                rhs = Some(match rhs {
                    None => piece,
                    Some(acc) => acc.direct_sum(&piece),
                });
            }
            let rhs = rhs.unwrap();
            for k in 0..=n {
                assert_eq!(lhs.dim(k), rhs.dim(k), "dims at {k}, n = {n}");
                let hl = homology(&lhs, k, None).unwrap();
                let hr = homology(&rhs, k, None).unwrap();
                assert_eq!((&hl.descriptor), (&hr.descriptor), "homology at {k}, n = {n}");
            }
        }
    }

    #[test]
    fn schur_module_ranks() {
        let v2 = BasedFreeModule::standard(Ring::Rat, 2);
        // bottom case: the full symmetric power
        assert_eq!(schur_module(&v2, 3, 0).rank(), 4);
        // the derived middle case
        assert_eq!(schur_module(&v2, 3, 1).rank(), 2);
        // Λ³ of rank 2 vanishes, as does the top case
        assert_eq!(schur_module(&v2, 3, 2).rank(), 0);
        assert_eq!(schur_module(&v2, 3, 3).rank(), 0);
        // exactness accounting: dim C_k = ρ_k + ρ_{k−1}
        let v3 = zmod(3);
        let kos = koszul_complex(&ModuleMap::identity(&v3), 3);
        let rho: Vec<usize> = (0..=3).map(|k| schur_module(&v3, 3, k).rank()).collect();
        for k in 1..=3 {
            assert_eq!(kos.dim(k), rho[k] + rho[k - 1], "degree {k}");
        }
        // Λ^n(V) in the next-to-top slot
        assert_eq!(schur_module(&v3, 3, 2).rank(), 1);
    }

    #[test]
    fn coschur_module_ranks() {
        let v2 = zmod(2);
        let dual = dual_koszul_complex(&ModuleMap::identity(&v2), 2);
        assert_eq!(
            dual.modules.iter().map(|m| m.dim()).collect::<Vec<_>>(),
            vec![1, 4, 3]
        );
        for k in 0..=2 {
            assert!(
                homology(&dual, k, None).unwrap().descriptor.is_trivial(),
                "H_{k}"
            );
        }
        assert_eq!(coschur_module(&v2, 2, 0).rank(), 1);
        assert_eq!(coschur_module(&v2, 2, 1).rank(), 3);
        assert_eq!(coschur_module(&v2, 2, 2).rank(), 0);
    }

    #[test]
    fn conormal_and_resolution_setups() {
        // integers mod 2, rank 2
        let c = conormal_data(&Ring::Int, &[Ring::Int.from_i64(2)]).unwrap();
        assert_eq!(c.quotient, Ring::IntMod(2));
        assert_eq!(c.conormal.dim(), 1);
        let res = resolution_for(2, &c).unwrap();
        assert_eq!(res.complex.dim(0), 2);
        assert_eq!(res.complex.dim(1), 2);
        // two variables over the rationals
        let ring = Ring::Poly(crate::arith::PolyRing {
            base: crate::arith::BaseField::Rat,
            vars: vec!["x".into(), "y".into()],
        });
        let gens = vec![ring.var(0), ring.var(1)];
        let c = conormal_data(&ring, &gens).unwrap();
        assert_eq!(c.quotient, Ring::Rat);
        assert_eq!(c.conormal.dim(), 2);
        assert_eq!(c.conormal.degrees, vec![1, 1]);
        let res = resolution_for(1, &c).unwrap();
        assert_eq!(
            res.complex.modules.iter().map(|m| m.dim()).collect::<Vec<_>>(),
            vec![1, 2, 1]
        );
        // a non-regular presentation is rejected
        let bad = conormal_data(&ring, &[ring.var(0), ring.var(0)]);
        assert!(bad.is_err());
        // single variable: principal
        let ring1 = Ring::Poly(crate::arith::PolyRing {
            base: crate::arith::BaseField::Rat,
            vars: vec!["x".into()],
        });
        let c1 = conormal_data(&ring1, &[ring1.var(0)]).unwrap();
        assert!(matches!(c1.spec, IdealSpec::PrincipalNzd(_)));
        assert!(resolution_for(2, &c1).is_ok());
    }

    #[test]
    fn witnesses_generate_koszul_homology() {
        // ℤ, m = 2, V of rank 2, n = 2, k = 1
        let c = conormal_data(&Ring::Int, &[Ring::Int.from_i64(2)]).unwrap();
        let res = resolution_for(2, &c).unwrap();
        let kos = koszul_complex(&res.complex.diffs[0], 2);
        let h1 = homology(&kos, 1, None).unwrap();
        assert_eq!(
            (&h1.descriptor),
            &HomologyDescriptor::Abelian {
                rank: 0,
                torsion: vec![BigInt::from(2)]
            }
        );
        let w = thm32_witness(&res, 2, 1, &[0, 1], &[], &[Ring::Int.from_i64(2)]).unwrap();
        assert!(h1.is_cycle(&w));
        assert!(!h1.is_boundary(&w).unwrap());
        assert!(h1.spanned_by(std::slice::from_ref(&w)).unwrap());
        // doubling one conormal scalar lands in the boundaries
        let w4 = thm32_witness(&res, 2, 1, &[0, 1], &[], &[Ring::Int.from_i64(4)]).unwrap();
        assert!(h1.is_boundary(&w4).unwrap());
        // the degree-0 family generates H₀ = Sym²(V)
        let h0 = homology(&kos, 0, None).unwrap();
        let fam = thm32_witness_family(&res, 2, 0).unwrap();
        assert!(h0.spanned_by(&fam).unwrap());
        // full families generate in every degree
        for k in 0..=2usize {
            let h = homology(&kos, k, None).unwrap();
            let fam = thm32_witness_family(&res, 2, k).unwrap();
            assert!(h.spanned_by(&fam).unwrap(), "degree {k}");
        }
    }

    #[test]
    fn graded_witness_over_one_variable() {
        let ring = Ring::Poly(crate::arith::PolyRing {
            base: crate::arith::BaseField::Rat,
            vars: vec!["x".into()],
        });
        let c = conormal_data(&ring, &[ring.var(0)]).unwrap();
        let res = resolution_for(2, &c).unwrap();
        let kos = koszul_complex(&res.complex.diffs[0], 2);
        let h1 = homology(&kos, 1, Some(0..=4)).unwrap();
        assert_eq!(
            (&h1.descriptor),
            &HomologyDescriptor::Hilbert([(1i64, 1usize)].into_iter().collect())
        );
        let w = thm32_witness(&res, 2, 1, &[0, 1], &[], &[ring.var(0)]).unwrap();
        assert!(!h1.is_boundary(&w).unwrap());
        assert!(h1.spanned_by(std::slice::from_ref(&w)).unwrap());
        // scaling the conormal factor by x pushes the class into I·H₁ = 0
        let x2 = ring.mul(&ring.var(0), &ring.var(0));
        let wx = thm32_witness(&res, 2, 1, &[0, 1], &[], &[x2]).unwrap();
        assert!(h1.is_boundary(&wx).unwrap());
    }
}
