//! Suite implementations: each function turns a validated scenario into the
//! independent checks it stands for. Check names are stable identifiers
//! (`suite.topic`), so reports merge deterministically.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::ops::RangeInclusive;
use std::sync::Arc;

use num::{BigInt, BigRational};

use crate::arith::{field_rank, BaseField, PolyRing, Ring, Scalar, SparseMatrix};
use crate::complex::{
    character_on_homology, euler_class, homology, induced_map, predicted_character,
    sigma_of_class, solve_map, tensor_power_equivariant, ChainComplex, ChainMap, Homology,
    HomologyDescriptor,
};
use crate::cross_effect::{
    cross_effect, decompose, diagonal_map, functor_degree_probe, is_bijective, plus_map,
};
use crate::koszul::{
    conormal_data, coschur_module, koszul_complex, resolution_for, schur_module,
    thm32_witness_family, IdealSpec, ResolutionData,
};
use crate::lambda::verify_identity;
use crate::lambda::identity_names;
use crate::module::{
    div2_to_tensor2, ext2_to_tensor2, tensor2_to_ext2, tensor2_to_sym2, BasedFreeModule, Label,
    ModuleMap, Power,
};
use crate::perm::Perm;
use crate::simplicial::{
    apply_functor_levelwise, comparison_u, gamma, lemma22_to_nfg_iso, nfg, normalize,
    verify_quasi_iso, NormalizedComplex,
};

use super::config::{RingSpec, ScenarioConfig, Suite};
use super::random::{random_complex, random_graded_complex, rng_for};
use super::{CheckJob, HarnessError};

type JobResult = Result<(String, String, bool), String>;

pub(super) fn jobs_for(cfg: &ScenarioConfig) -> Result<Vec<CheckJob>, HarnessError> {
    match cfg.suite {
        Suite::Thm32 => thm32(cfg),
        Suite::Rem36 => rem36(cfg),
        Suite::Thm51 => thm51(cfg),
        Suite::Ex52 => ex52(cfg),
        Suite::Thm64 => thm64(cfg),
        Suite::Cor63 => cor63(cfg),
        Suite::Lemma61 => lemma61(cfg),
        Suite::Lemma22 => lemma22(cfg),
        Suite::Prop24 => prop24(cfg),
        Suite::DoldKan => doldkan(cfg),
        Suite::CrossEffects => crosseffects(cfg),
        Suite::Lambda => lambda(cfg),
        Suite::Rem65 => rem65(cfg),
        Suite::Ex66Conjecture => ex66(cfg),
        Suite::All => unreachable!("`all` is expanded by run_suite"),
    }
}

// ---------- shared helpers ----------

fn validation(e: impl Display) -> HarnessError {
    HarnessError::Validation {
        message: e.to_string(),
    }
}

fn eq_strings(expected: String, computed: String) -> JobResult {
    let pass = expected == computed;
    Ok((expected, computed, pass))
}

fn yn(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut out = 1usize;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

fn window_for(ring: &Ring, w: i64) -> Option<RangeInclusive<i64>> {
    if ring.is_graded() {
        Some(0..=w)
    } else {
        None
    }
}

fn ring_label(spec: &RingSpec) -> String {
    match spec {
        RingSpec::Int => "Z".into(),
        RingSpec::Rat => "Q".into(),
        RingSpec::GradedPoly { base, vars } => format!("{base}[{}]", vars.join(",")),
    }
}

fn instance_label(cfg: &ScenarioConfig) -> String {
    format!(
        "{}, I=({}), rank={}, n={}, window={}, seed={}",
        ring_label(&cfg.ring),
        cfg.ideal.join(","),
        cfg.rank,
        cfg.n,
        cfg.window,
        cfg.seed
    )
}

fn descriptor_string(d: &HomologyDescriptor) -> String {
    match d {
        HomologyDescriptor::Abelian { rank, torsion } => {
            let mut parts: Vec<String> = Vec::new();
            match *rank {
                0 => {}
                1 => parts.push("Z".into()),
                r => parts.push(format!("Z^{r}")),
            }
            for t in torsion {
                parts.push(format!("Z/{t}"));
            }
            if parts.is_empty() {
                "0".into()
            } else {
                parts.join(" + ")
            }
        }
        HomologyDescriptor::Dim(d) => {
            if *d == 0 {
                "0".into()
            } else {
                format!("k^{d}")
            }
        }
        HomologyDescriptor::Hilbert(h) => {
            let nz: Vec<String> = h
                .iter()
                .filter(|&(_, &c)| c > 0)
                .map(|(q, c)| format!("{c} in degree {q}"))
                .collect();
            if nz.is_empty() {
                "0".into()
            } else {
                nz.join(", ")
            }
        }
    }
}

fn histogram(m: &BasedFreeModule) -> BTreeMap<i64, usize> {
    let mut h = BTreeMap::new();
    for &d in &m.degrees {
        *h.entry(d).or_insert(0) += 1;
    }
    h
}

fn convolve(a: &BTreeMap<i64, usize>, b: &BTreeMap<i64, usize>) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for (&x, &cx) in a {
        for (&y, &cy) in b {
            *out.entry(x + y).or_insert(0) += cx * cy;
        }
    }
    out
}

fn hilbert_descriptor(h: BTreeMap<i64, usize>) -> HomologyDescriptor {
    HomologyDescriptor::Hilbert(h.into_iter().filter(|&(_, c)| c > 0).collect())
}

fn is_cycle_vec(c: &ChainComplex, k: usize, v: &[Scalar]) -> bool {
    c.d_or_zero(k).apply(v).iter().all(Scalar::is_zero)
}

/// Generator degrees of a graded homology module, aligned with
/// `generators()` order (slots ascend by degree).
fn generator_degrees(h: &Homology) -> Option<Vec<i64>> {
    h.hilbert().map(|hil| {
        hil.iter()
            .flat_map(|(&t, &c)| std::iter::repeat(t).take(c))
            .collect()
    })
}

/// Every ideal generator kills every homology class. Over a graded ring the
/// products are only tested while they stay inside the window (the
/// generators all have degree one).
fn annihilation_check(
    h: &Homology,
    ring: &Ring,
    gens: &[Scalar],
    w: i64,
) -> Result<bool, String> {
    let degs = generator_degrees(h);
    for (i, z) in h.generators().iter().enumerate() {
        for g in gens {
            if let Some(d) = &degs {
                if d[i] + 1 > w {
                    continue;
                }
            }
            let gz: Vec<Scalar> = z.iter().map(|s| ring.mul(g, s)).collect();
            if !h.is_boundary(&gz).map_err(|e| e.to_string())? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Positive compositions of `total` into `parts` parts, lexicographically.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            if rest >= 1 {
                cur.push(rest);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for x in 1..=rest.saturating_sub(slots - 1) {
            cur.push(x);
            go(rest - x, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts >= 1 {
        go(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// Partitions of `n` with parts in descending order.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        let mut p = n.min(max);
        while p >= 1 {
            cur.push(p);
            go(n - p, p, cur, out);
            cur.pop();
            p -= 1;
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn scalar_to_rational(s: &Scalar) -> Option<BigRational> {
    match s {
        Scalar::Int(i) => Some(BigRational::from(i.clone())),
        Scalar::Rat(r) => Some(r.clone()),
        _ => None,
    }
}

/// Resolution for suites restricted to principal (one-generator) setups.
fn principal_resolution(cfg: &ScenarioConfig) -> Result<Arc<ResolutionData>, HarnessError> {
    let cd = cfg.conormal()?;
    if !matches!(cd.spec, IdealSpec::PrincipalNzd(_)) {
        return Err(validation(format!(
            "suite {} needs a principal ideal (one generator); got {}",
            cfg.suite,
            cd.spec.rank()
        )));
    }
    let res = resolution_for(cfg.rank, &cd).map_err(validation)?;
    Ok(Arc::new(res))
}

// ---------- koszul homology of a resolved module ----------

fn thm32(cfg: &ScenarioConfig) -> Result<Vec<CheckJob>, HarnessError> {
    let res = principal_resolution(cfg)?;
    let n = cfg.n;
    let kos = Arc::new(koszul_complex(&res.complex.diffs[0], n));
    let label = instance_label(cfg);
    let w = cfg.window;
    let mut jobs = Vec::new();
    for k in 0..=n {
        let res = Arc::clone(&res);
        let kos = Arc::clone(&kos);
        let params = format!("{label}, homological degree {k}");
        jobs.push(CheckJob::new(format!("thm32.H{k:02}"), params, move || {
            let rho = schur_module(&res.v, n, k).rank();
            let expected_desc = match (kos.ring(), &res.conormal.quotient) {
                (Ring::Int, Ring::IntMod(m)) => HomologyDescriptor::Abelian {
                    rank: 0,
                    torsion: vec![BigInt::from(*m); rho],
                },
                _ => {
                    // ρ copies of the k-fold conormal degree histogram
                    let mut conv = BTreeMap::from([(0i64, 1usize)]);
                    let ch = histogram(&res.conormal.conormal);
                    for _ in 0..k {
                        conv = convolve(&conv, &ch);
                    }
                    hilbert_descriptor(conv.into_iter().map(|(d, c)| (d, c * rho)).collect())
                }
            };
            let ring = kos.ring().clone();
            let h = homology(&kos, k, window_for(&ring, w)).map_err(|e| e.to_string())?;
            let gens = res.conormal.spec.generators();
            let ann = annihilation_check(&h, &ring, &gens, w)?;
            let expected = format!(
                "H_{k} = {}; killed by the ideal: yes",
                descriptor_string(&expected_desc)
            );
            let computed = format!(
                "H_{k} = {}; killed by the ideal: {}",
                descriptor_string(&h.descriptor),
                yn(ann)
            );
            eq_strings(expected, computed)
        }));
    }
    Ok(jobs)
}

// ---------- explicit witness families generate the homology ----------

fn rem36(cfg: &ScenarioConfig) -> Result<Vec<CheckJob>, HarnessError> {
    let res = principal_resolution(cfg)?;
    let n = cfg.n;
    let kos = Arc::new(koszul_complex(&res.complex.diffs[0], n));
    let label = instance_label(cfg);
    let w = cfg.window;
    let mut jobs = Vec::new();
    for k in 0..n {
        let res = Arc::clone(&res);
        let kos = Arc::clone(&kos);
        let params = format!("{label}, homological degree {k}");
        jobs.push(CheckJob::new(format!("rem36.H{k:02}"), params, move || {
            let fam = thm32_witness_family(&res, n, k).map_err(|e| e.to_string())?;
            let cycles = fam.iter().all(|z| is_cycle_vec(&kos, k, z));
            let ring = kos.ring().clone();
            let h = homology(&kos, k, window_for(&ring, w)).map_err(|e| e.to_string())?;
            let span = h.spanned_by(&fam).map_err(|e| e.to_string())?;
            let expected = format!(
                "{} hook witnesses: cycles yes, generate H_{k} yes",
                fam.len()
            );
            let computed = format!(
                "{} hook witnesses: cycles {}, generate H_{k} {}",
                fam.len(),
                yn(cycles),
                yn(span)
            );
            eq_strings(expected, computed)
        }));
    }
    Ok(jobs)
}

// ---------- symmetric group action on tensor powers ----------

fn thm51(cfg: &ScenarioConfig) -> Result<Vec<CheckJob>, HarnessError> {
    let cd = cfg.conormal()?;
    let res = Arc::new(resolution_for(cfg.rank, &cd).map_err(validation)?);
    let n = cfg.n;
    let e = Arc::new(tensor_power_equivariant(&res.complex, n).map_err(validation)?);
    let d = cd.conormal.dim();
    let kmax = d * (n - 1);
    let r = cfg.rank;
    let label = instance_label(cfg);
    let w = cfg.window;
    let quotient = cd.quotient.clone();
    let top = e.complex.top();
    let mut jobs = Vec::new();

    for k in 0..=top.min(kmax + 1) {
        let e = Arc::clone(&e);
        let q = quotient.clone();
        let params = format!("{label}, homological degree {k}");
        jobs.push(CheckJob::new(format!("thm51.H{k:02}"), params, move || {
            let count = r.pow(n as u32) * binom(kmax, k);
            let expected_desc = match (e.complex.ring(), &q) {
                (Ring::Int, Ring::IntMod(m)) => HomologyDescriptor::Abelian {
                    rank: 0,
                    torsion: vec![BigInt::from(*m); count],
                },
                _ => hilbert_descriptor(BTreeMap::from([(k as i64, count)])),
            };
            let ring = e.complex.ring().clone();
            let h = homology(&e.complex, k, window_for(&ring, w)).map_err(|e| e.to_string())?;
            eq_strings(
                descriptor_string(&expected_desc),
                descriptor_string(&h.descriptor),
            )
        }));
    }

    {
        let e = Arc::clone(&e);
        jobs.push(CheckJob::new("thm51.relations", label.clone(), move || {
            let ok = e.verify_relations();
            Ok((
                "transposition relations hold degreewise".into(),
                if ok {
                    "transposition relations hold degreewise".into()
                } else {
                    "a relation fails".into()
                },
                ok,
            ))
        }));
    }

    if n == 2 && matches!(cd.ambient, Ring::Int) {
        let dim0 = res.complex.dim(0);
        let dim1 = res.complex.dim(1);
        {
            let e = Arc::clone(&e);
            let params = format!("{label}, swap on H_0 generators");
            jobs.push(CheckJob::new("thm51.swap.h0", params, move || {
                let ring = e.complex.ring().clone();
                let m0 = &e.complex.modules[0];
                let comps0 = e.blocks(0).to_vec();
                let tau = e.action(&Perm::adjacent(2, 0));
                let h = homology(&e.complex, 0, None).map_err(|e| e.to_string())?;
                let pos = |i: usize, j: usize| -> Result<usize, String> {
                    let ci = comps0
                        .iter()
                        .position(|c| c == &vec![0, 0])
                        .ok_or("missing block")?;
                    m0.position(&Label::Part(ci, Box::new(Label::Word(vec![i, j]))))
                        .ok_or_else(|| format!("missing tensor label ({i},{j})"))
                };
                let mut fam = Vec::new();
                let mut formula = true;
                for i in 0..dim0 {
                    for j in 0..dim0 {
                        let mut u = vec![ring.zero(); m0.dim()];
                        u[pos(i, j)?] = ring.one();
                        let t = tau.maps[0].apply(&u);
                        // predicted: τ[e_i ⊗ e_j] = [e_j ⊗ e_i]
                        let mut diff = t;
                        diff[pos(j, i)?] = ring.add(&diff[pos(j, i)?], &ring.from_i64(-1));
                        formula &= h.is_boundary(&diff).map_err(|e| e.to_string())?;
                        fam.push(u);
                    }
                }
                let span = h.spanned_by(&fam).map_err(|e| e.to_string())?;
                let expected = format!(
                    "{} products of basis classes: generate H_0 yes, swap formula yes",
                    dim0 * dim0
                );
                let computed = format!(
                    "{} products of basis classes: generate H_0 {}, swap formula {}",
                    dim0 * dim0,
                    yn(span),
                    yn(formula)
                );
                eq_strings(expected, computed)
            }));
        }
        {
            let e = Arc::clone(&e);
            let params = format!("{label}, swap on H_1 witnesses");
            jobs.push(CheckJob::new("thm51.swap.h1", params, move || {
                let ring = e.complex.ring().clone();
                let m1 = &e.complex.modules[1];
                let comps1 = e.blocks(1).to_vec();
                let tau = e.action(&Perm::adjacent(2, 0));
                let h = homology(&e.complex, 1, None).map_err(|e| e.to_string())?;
                let pos = |block: [usize; 2], word: [usize; 2]| -> Result<usize, String> {
                    let ci = comps1
                        .iter()
                        .position(|c| c == &block.to_vec())
                        .ok_or("missing block")?;
                    m1.position(&Label::Part(ci, Box::new(Label::Word(word.to_vec()))))
                        .ok_or_else(|| format!("missing tensor label {word:?}"))
                };
                // z_ij = e_i' ⊗ e_j − e_i ⊗ e_j' is a cycle; τ z_ij = −z_ji
                let mk = |i: usize, j: usize| -> Result<Vec<Scalar>, String> {
                    let mut z = vec![ring.zero(); m1.dim()];
                    z[pos([1, 0], [i, j])?] = ring.one();
                    z[pos([0, 1], [i, j])?] = ring.from_i64(-1);
                    Ok(z)
                };
                let mut fam = Vec::new();
                let mut cycles = true;
                let mut formula = true;
                for i in 0..dim1 {
                    for j in 0..dim1 {
                        let z = mk(i, j)?;
                        cycles &= is_cycle_vec(&e.complex, 1, &z);
                        let t = tau.maps[1].apply(&z);
                        let zji = mk(j, i)?;
                        let sum: Vec<Scalar> = t
                            .iter()
                            .zip(&zji)
                            .map(|(a, b)| ring.add(a, b))
                            .collect();
                        formula &= h.is_boundary(&sum).map_err(|e| e.to_string())?;
                        fam.push(z);
                    }
                }
                let span = h.spanned_by(&fam).map_err(|e| e.to_string())?;
                let expected = format!(
                    "{} mixed-degree witnesses: cycles yes, generate H_1 yes, sign rule yes",
                    dim1 * dim1
                );
                let computed = format!(
                    "{} mixed-degree witnesses: cycles {}, generate H_1 {}, sign rule {}",
                    dim1 * dim1,
                    yn(cycles),
                    yn(span),
                    yn(formula)
                );
                eq_strings(expected, computed)
            }));
        }
    }

    if quotient.is_graded() || matches!(cd.ambient, Ring::Poly(_)) {
        for k in 0..=top.min(kmax + 1) {
            for pt in partitions(n) {
                let e = Arc::clone(&e);
                let pt_label = pt
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join("+");
                let params = format!("{label}, degree {k}, cycle type ({pt_label})");
                jobs.push(CheckJob::new(
                    format!("thm51.H{k:02}.char.{pt_label}"),
                    params,
                    move || {
                        let sigma = crate::complex::perm_of_cycle_type(n, &pt);
                        let pred = predicted_character(r as i64, d, n, k, &sigma);
                        let ring = e.complex.ring().clone();
                        let got = character_on_homology(&e, &sigma, k, window_for(&ring, w))
                            .map_err(|e| e.to_string())?;
                        let got_str = match scalar_to_rational(&got) {
                            Some(x) => x.to_string(),
                            None => format!("{got:?}"),
                        };
                        eq_strings(pred.to_string(), got_str)
                    },
                ));
            }
        }
    }

    Ok(jobs)
}

// ---------- the rank-one tensor square worked example ----------

fn ex52(cfg: &ScenarioConfig) -> Result<Vec<CheckJob>, HarnessError> {
    let cd = cfg.conormal()?;
    if cd.conormal.dim() != 1 || !matches!(cd.ambient, Ring::Poly(_)) {
        return Err(validation(
            "suite ex52 needs a principal graded ideal (one variable)",
        ));
    }
    if cfg.n != 2 {
        return Err(validation("suite ex52 is the tensor-square example; set n = 2"));
    }
    let res = resolution_for(cfg.rank, &cd).map_err(validation)?;
    let e = Arc::new(tensor_power_equivariant(&res.complex, 2).map_err(validation)?);
    let r = cfg.rank;
    let label = instance_label(cfg);
    let w = cfg.window;
    let mut jobs = Vec::new();

    {
        let e = Arc::clone(&e);
        jobs.push(CheckJob::new(
            "ex52.h1_descriptor",
            format!("{label}, homological degree 1"),
            move || {
                let expected = hilbert_descriptor(BTreeMap::from([(1i64, r * r)]));
                let ring = e.complex.ring().clone();
                let h =
                    homology(&e.complex, 1, window_for(&ring, w)).map_err(|e| e.to_string())?;
                eq_strings(
                    descriptor_string(&expected),
                    descriptor_string(&h.descriptor),
                )
            },
        ));
    }
    for (name, sigma, pred) in [
        ("ex52.identity_trace", Perm::identity(2), (r * r) as i64),
        ("ex52.swap_trace", Perm::adjacent(2, 0), -(r as i64)),
    ] {
        let e = Arc::clone(&e);
        jobs.push(CheckJob::new(
            name,
            format!("{label}, trace on H_1"),
            move || {
                let ring = e.complex.ring().clone();
                let got = character_on_homology(&e, &sigma, 1, window_for(&ring, w))
                    .map_err(|e| e.to_string())?;
                let got_str = match scalar_to_rational(&got) {
                    Some(x) => x.to_string(),
                    None => format!("{got:?}"),
                };
                eq_strings(pred.to_string(), got_str)
            },
        ));
    }
    Ok(jobs)
}

// ---------- symmetric square of a codimension-two quotient ----------

fn thm64(cfg: &ScenarioConfig) -> Result<Vec<CheckJob>, HarnessError> {
    let cd = cfg.conormal()?;
    let res = resolution_for(cfg.rank, &cd).map_err(validation)?;
    let nn = Arc::new(nfg(&res.complex, &Power::Sym(2)).map_err(validation)?);
    let v = res.v.clone();
    let cm = cd.conormal.clone();
    let label = instance_label(cfg);
    let w = cfg.window;
    let mut jobs = Vec::new();
    for k in 0..=5usize {
        let expected_desc = match k {
            0 => hilbert_descriptor(histogram(&Power::Sym(2).module(&v))),
            1 => hilbert_descriptor(convolve(
                &histogram(&Power::Ext(2).module(&v)),
                &histogram(&cm),
            )),
            2 => hilbert_descriptor(convolve(
                &histogram(&Power::Div(2).module(&v)),
                &histogram(&Power::Ext(2).module(&cm)),
            )),
            _ => HomologyDescriptor::Hilbert(BTreeMap::new()),
        };
        let nn = Arc::clone(&nn);
        let params = format!("{label}, homological degree {k}");
        jobs.push(CheckJob::new(format!("thm64.H{k:02}"), params, move || {
            let computed = if k <= nn.top() {
                let ring = nn.ring().clone();
                let h = homology(&nn, k, window_for(&ring, w)).map_err(|e| e.to_string())?;
                h.descriptor
            } else {
                HomologyDescriptor::Hilbert(BTreeMap::new())
            };
            eq_strings(
                descriptor_string(&expected_desc),
                descriptor_string(&computed),
            )
        }));
    }
    Ok(jobs)
}

// ---------- parity-split symmetric square over a base with 1/2 ----------

fn cor63(cfg: &ScenarioConfig) -> Result<Vec<CheckJob>, HarnessError> {
    let cd = cfg.conormal()?;
    let d = cd.conormal.dim();
    let res = resolution_for(cfg.rank, &cd).map_err(validation)?;
    let nn = Arc::new(nfg(&res.complex, &Power::Sym(2)).map_err(validation)?);
    let v = res.v.clone();
    let cm = cd.conormal.clone();
    let label = instance_label(cfg);
    let w = cfg.window;
    let mut jobs = Vec::new();
    for k in 0..=(2 * d + 1) {
        let base = if k % 2 == 0 {
            Power::Sym(2).module(&v)
        } else {
            Power::Ext(2).module(&v)
        };
        let hist = if k == 0 {
            histogram(&base)
        } else {
            convolve(&histogram(&base), &histogram(&Power::Ext(k).module(&cm)))
        };
        let expected_desc = hilbert_descriptor(hist);
        let nn = Arc::clone(&nn);
        let params = format!("{label}, homological degree {k}");
        jobs.push(CheckJob::new(format!("cor63.H{k:02}"), params, move || {
            let computed = if k <= nn.top() {
                let ring = nn.ring().clone();
                let h = homology(&nn, k, window_for(&ring, w)).map_err(|e| e.to_string())?;
                h.descriptor
            } else {
                HomologyDescriptor::Hilbert(BTreeMap::new())
            };
            eq_strings(
                descriptor_string(&expected_desc),
                descriptor_string(&computed),
            )
        }));
    }
    Ok(jobs)
}

// ---------- euler classes commute with the power operations ----------

fn lemma61(cfg: &ScenarioConfig) -> Result<Vec<CheckJob>, HarnessError> {
    let ring = cfg.build_ring()?;
    if !ring.is_graded() {
        return Err(validation("suite lemma61 needs a graded_poly ring"));
    }
    let label = instance_label(cfg);
    let mut jobs = Vec::new();
    for i in 0..20u64 {
        let mut rng = rng_for(cfg.seed.wrapping_add(i));
        let blocks = 2 + (i as usize % 2);
        let c = Arc::new(random_graded_complex(&mut rng, &ring, 2, blocks));
        let nmax = if c.top() <= 1 { 3 } else { 2 };
        for n in 1..=nmax {
            let c = Arc::clone(&c);
            let params = format!("{label}, instance {i} (len {}, {blocks} blocks)", c.top());
            jobs.push(CheckJob::new(
                format!("lemma61.s{i:02}.n{n}"),
                params,
                move || {
                    let nn = nfg(&c, &Power::Sym(n)).map_err(|e| e.to_string())?;
                    let lhs = euler_class(&nn);
                    let rhs = sigma_of_class(n, &euler_class(&c));
                    eq_strings(rhs.to_string(), lhs.to_string())
                },
            ));
        }
    }
    // corner: a length-two complex under the cubic power
    {
        let mk_two = |a: i64| {
            let src = BasedFreeModule::new(ring.clone(), vec![Label::E(0)], vec![a + 1]);
            let tgt = BasedFreeModule::new(ring.clone(), vec![Label::E(0)], vec![a]);
            let mut mat = SparseMatrix::zero(ring.clone(), 1, 1);
            mat.set(0, 0, ring.var(0));
            ChainComplex::two_term(&ModuleMap::new(src, tgt, mat))
        };
        let c = Arc::new(mk_two(0).direct_sum(&mk_two(1).shift(1)));
        let params = format!("{label}, fixed corner instance (len 2, dims 1,2,1)");
        jobs.push(CheckJob::new("lemma61.corner.n3", params, move || {
            let nn = nfg(&c, &Power::Sym(3)).map_err(|e| e.to_string())?;
            let lhs = euler_class(&nn);
            let rhs = sigma_of_class(3, &euler_class(&c));
            eq_strings(rhs.to_string(), lhs.to_string())
        }));
    }
    Ok(jobs)
}

// ---------- the two small models of a power of a two-term complex ----------

fn lemma22(cfg: &ScenarioConfig) -> Result<Vec<CheckJob>, HarnessError> {
    let cd = cfg.conormal()?;
    let res = resolution_for(cfg.rank, &cd).map_err(validation)?;
    let f = Arc::new(res.complex.diffs[0].clone());
    let label = instance_label(cfg);
    let mut jobs = Vec::new();
    for np in 1..=cfg.n.min(3) {
        for (tag, mk) in [
            ("sym", Power::Sym as fn(usize) -> Power),
            ("ext", Power::Ext as fn(usize) -> Power),
        ] {
            let f = Arc::clone(&f);
            let params = format!("{label}, functor {tag}^{np}");
            jobs.push(CheckJob::new(
                format!("lemma22.{tag}{np}"),
                params,
                move || {
                    let iso = lemma22_to_nfg_iso(&f, &mk(np)).map_err(|e| e.to_string())?;
                    let mut bij = true;
                    for m in &iso.maps {
                        bij &= is_bijective(m).map_err(|e| e.to_string())?;
                    }
                    let expected = format!(
                        "chain isomorphism between the models in degrees 0..={np}"
                    );
                    let computed = if bij && iso.source.top() == np {
                        expected.clone()
                    } else {
                        format!(
                            "map built in degrees 0..={}, bijective: {}",
                            iso.source.top(),
                            yn(bij)
                        )
                    };
                    eq_strings(expected, computed)
                },
            ));
        }
    }
    Ok(jobs)
}

// ---------- koszul complexes against normalized power complexes ----------

fn prop24(cfg: &ScenarioConfig) -> Result<Vec<CheckJob>, HarnessError> {
    let cd = cfg.conormal()?;
    let res = resolution_for(cfg.rank, &cd).map_err(validation)?;
    let f = Arc::new(res.complex.diffs[0].clone());
    let label = instance_label(cfg);
    let w = cfg.window;
    let mut jobs = Vec::new();
    for np in 1..=cfg.n.min(3) {
        let f = Arc::clone(&f);
        let params = format!("{label}, power {np}");
        jobs.push(CheckJob::new(format!("prop24.n{np}"), params, move || {
            let u = comparison_u(&f, np).map_err(|e| e.to_string())?;
            let ring = f.source.ring.clone();
            let ok =
                verify_quasi_iso(&u, window_for(&ring, w)).map_err(|e| e.to_string())?;
            let expected = "comparison map is a quasi-isomorphism".to_string();
            let computed = if ok {
                expected.clone()
            } else {
                "comparison map fails on homology".to_string()
            };
            eq_strings(expected, computed)
        }));
    }
    {
        let r = cfg.rank;
        let n = cfg.n;
        let params = format!("Z, zero target, rank={r}, n={n}");
        jobs.push(CheckJob::new("prop24.zero_target", params, move || {
            let p = BasedFreeModule::standard(Ring::Int, r);
            let zero = BasedFreeModule::new(Ring::Int, Vec::new(), Vec::new());
            let f0 = ModuleMap::zero(&p, &zero);
            let kos = koszul_complex(&f0, n);
            let mut lower = true;
            for k in 0..n {
                lower &= homology(&kos, k, None)
                    .map_err(|e| e.to_string())?
                    .descriptor
                    .is_trivial();
            }
            let h = homology(&kos, n, None).map_err(|e| e.to_string())?;
            let top_desc = HomologyDescriptor::Abelian {
                rank: binom(r, n),
                torsion: Vec::new(),
            };
            let u = comparison_u(&f0, n).map_err(|e| e.to_string())?;
            let quasi = verify_quasi_iso(&u, None).map_err(|e| e.to_string())?;
            let expected = format!(
                "H_k<n = 0 yes; H_{n} = {}; comparison quasi-isomorphism yes",
                descriptor_string(&top_desc)
            );
            let computed = format!(
                "H_k<n = 0 {}; H_{n} = {}; comparison quasi-isomorphism {}",
                yn(lower),
                descriptor_string(&h.descriptor),
                yn(quasi)
            );
            eq_strings(expected, computed)
        }));
    }
    Ok(jobs)
}

// ---------- normalization recovers the original complex ----------

fn doldkan(cfg: &ScenarioConfig) -> Result<Vec<CheckJob>, HarnessError> {
    let mut jobs = Vec::new();
    for i in 0..50u64 {
        let (ring, tag) = if i < 25 {
            (Ring::Int, "z")
        } else {
            (Ring::Rat, "q")
        };
        let seed = cfg.seed.wrapping_add(i);
        let params = format!(
            "{}, instance seed {seed}, len<=3, rank<=3",
            if i < 25 { "Z" } else { "Q" }
        );
        jobs.push(CheckJob::new(
            format!("doldkan.{tag}.s{i:02}"),
            params,
            move || {
                let c = random_complex(&mut rng_for(seed), &ring, 3, 3);
                let g = gamma(&c, c.top() + 2);
                let nz = normalize(&g).map_err(|e| e.to_string())?;
                let dims = (0..=c.top()).all(|k| nz.complex.modules[k].dim() == c.dim(k));
                let diffs =
                    (1..=c.top()).all(|k| nz.complex.diffs[k - 1].matrix == c.diffs[k - 1].matrix);
                let tail =
                    (c.top() + 1..=c.top() + 2).all(|k| nz.complex.modules[k].dim() == 0);
                let expected =
                    "round trip: dimensions yes, differentials yes, tail zero yes".to_string();
                let computed = format!(
                    "round trip: dimensions {}, differentials {}, tail zero {}",
                    yn(dims),
                    yn(diffs),
                    yn(tail)
                );
                eq_strings(expected, computed)
            },
        ));
    }
    Ok(jobs)
}

// ---------- cross-effect calculus of the power functors ----------

fn crosseffects(_cfg: &ScenarioConfig) -> Result<Vec<CheckJob>, HarnessError> {
    let params = "Z, probe modules of rank <= 2".to_string();
    let mut jobs = Vec::new();

    jobs.push(CheckJob::new(
        "crosseffects.sym_dimensions",
        params.clone(),
        move || {
            let v = BasedFreeModule::standard(Ring::Int, 2);
            let mut bad = Vec::new();
            for n in 1..=3usize {
                for k in 1..=n {
                    let parts = vec![&v; k];
                    let got = cross_effect(&Power::Sym(n), &parts)
                        .map_err(|e| e.to_string())?
                        .dim();
                    let want: usize = compositions(n, k)
                        .iter()
                        .map(|c| c.iter().map(|&ni| binom(2 + ni - 1, ni)).product::<usize>())
                        .sum();
                    if got != want {
                        bad.push(format!("cr_{k} Sym^{n}: {got} != {want}"));
                    }
                }
            }
            let expected = "all Sym cross-effect dimensions match the composition formula"
                .to_string();
            let computed = if bad.is_empty() {
                expected.clone()
            } else {
                bad.join("; ")
            };
            eq_strings(expected, computed)
        },
    ));

    jobs.push(CheckJob::new(
        "crosseffects.second_composites",
        params.clone(),
        move || {
            let v = BasedFreeModule::standard(Ring::Int, 2);
            let mut bad = Vec::new();
            for f in [Power::Sym(3), Power::Ext(2), Power::Div(3), Power::Tensor(2)] {
                let d2 = diagonal_map(&f, &[2], &[&v]).map_err(|e| e.to_string())?;
                let p2 = plus_map(&f, &[2], &[&v]).map_err(|e| e.to_string())?;
                let comp = p2.compose(&d2);
                let doubling = ModuleMap::scalar(&v, &Ring::Int.from_i64(2));
                let f2 = f.map(&doubling);
                let expected =
                    f2.sub(&ModuleMap::identity(&f2.source).scale(&Ring::Int.from_i64(2)));
                if comp.matrix != expected.matrix {
                    bad.push(format!("{f:?}"));
                }
            }
            let expected =
                "plus of diagonal equals F(2·id) − 2·id for Sym, Ext, Div, Tensor".to_string();
            let computed = if bad.is_empty() {
                expected.clone()
            } else {
                format!("identity fails for {}", bad.join(", "))
            };
            eq_strings(expected, computed)
        },
    ));

    jobs.push(CheckJob::new(
        "crosseffects.degree_probe",
        params.clone(),
        move || {
            let mut bad = Vec::new();
            for (f, deg) in [
                (Power::Sym(2), 2usize),
                (Power::Sym(3), 3),
                (Power::Ext(2), 2),
                (Power::Div(2), 2),
                (Power::Tensor(3), 3),
            ] {
                let vanish =
                    functor_degree_probe(&f, deg, 2, &Ring::Int).map_err(|e| e.to_string())?;
                let nonvanish =
                    functor_degree_probe(&f, deg - 1, 2, &Ring::Int).map_err(|e| e.to_string())?;
                if !vanish || nonvanish {
                    bad.push(format!("{f:?}"));
                }
            }
            let expected = "cross effects vanish above the power and not at it".to_string();
            let computed = if bad.is_empty() {
                expected.clone()
            } else {
                format!("degree probe fails for {}", bad.join(", "))
            };
            eq_strings(expected, computed)
        },
    ));

    jobs.push(CheckJob::new(
        "crosseffects.decomposition",
        params.clone(),
        move || {
            let v = BasedFreeModule::standard(Ring::Int, 2);
            let w = BasedFreeModule::standard(Ring::Int, 1);
            let mut bad = Vec::new();
            for f in [Power::Sym(2), Power::Ext(2), Power::Div(2), Power::Tensor(2)] {
                let d = decompose(&f, &[&v, &w]).map_err(|e| e.to_string())?;
                if !d.verify() || d.total_dim() != d.ambient.dim() {
                    bad.push(format!("{f:?}"));
                }
            }
            let d = decompose(&Power::Ext(2), &[&v, &w]).map_err(|e| e.to_string())?;
            let dims: Vec<usize> = d.summands.iter().map(|s| s.effect.dim()).collect();
            if dims != vec![1, 0, 2] {
                bad.push(format!("Ext^2 summand dims {dims:?}"));
            }
            let d = decompose(&Power::Sym(2), &[&w, &w]).map_err(|e| e.to_string())?;
            let dims: Vec<usize> = d.summands.iter().map(|s| s.effect.dim()).collect();
            if dims != vec![1, 1, 1] {
                bad.push(format!("Sym^2 summand dims {dims:?}"));
            }
            let expected =
                "every second power of a sum resolves into its cross effects".to_string();
            let computed = if bad.is_empty() {
                expected.clone()
            } else {
                format!("decomposition fails: {}", bad.join("; "))
            };
            eq_strings(expected, computed)
        },
    ));

    jobs.push(CheckJob::new(
        "crosseffects.functoriality",
        params.clone(),
        move || {
            let v = BasedFreeModule::standard(Ring::Int, 2);
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
            let c = cross_effect(&Power::Sym(3), &[&v, &v]).map_err(|e| e.to_string())?;
            let fg = c.map_to(&c, &[&f.compose(&g), &f.compose(&g)]);
            let step = c.map_to(&c, &[&g, &g]);
            let then = c.map_to(&c, &[&f, &f]);
            let composes = fg.matrix == then.compose(&step).matrix;
            let id = c.map_to(&c, &[&ModuleMap::identity(&v), &ModuleMap::identity(&v)]);
            let identity = id.matrix == SparseMatrix::identity(Ring::Int, c.dim());
            let expected = "cross effects compose and preserve identities".to_string();
            let computed = if composes && identity {
                expected.clone()
            } else {
                format!("composes: {}, identity: {}", yn(composes), yn(identity))
            };
            eq_strings(expected, computed)
        },
    ));

    jobs.push(CheckJob::new(
        "crosseffects.first_effect_is_functor",
        params,
        move || {
            let v = BasedFreeModule::standard(Ring::Int, 2);
            let mut bad = Vec::new();
            for f in [Power::Sym(2), Power::Ext(2), Power::Div(3), Power::Tensor(2)] {
                let c = cross_effect(&f, &[&v]).map_err(|e| e.to_string())?;
                if c.dim() != f.module(&v).dim() {
                    bad.push(format!("{f:?}"));
                }
            }
            let expected = "the first cross effect is the functor itself".to_string();
            let computed = if bad.is_empty() {
                expected.clone()
            } else {
                format!("first cross effect differs for {}", bad.join(", "))
            };
            eq_strings(expected, computed)
        },
    ));

    Ok(jobs)
}

// ---------- operation identities in the line-bundle model ----------

fn lambda(_cfg: &ScenarioConfig) -> Result<Vec<CheckJob>, HarnessError> {
    Ok(identity_names()
        .iter()
        .map(|&name| {
            CheckJob::new(
                format!("lambda.{name}"),
                "split and virtual sums of lines over small grids",
                move || {
                    let checks = verify_identity(name).map_err(|e| e.to_string())?;
                    let total = checks.len();
                    let fails: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
                    let expected = format!("{total}/{total} instances verified");
                    let computed = if fails.is_empty() {
                        expected.clone()
                    } else {
                        format!(
                            "{}/{total} instances verified; first failure [{}]: {}",
                            total - fails.len(),
                            fails[0].params,
                            fails[0].detail
                        )
                    };
                    eq_strings(expected, computed)
                },
            )
        })
        .collect())
}

// ---------- long exact sequences of normalized power complexes ----------

#[derive(Clone, Copy)]
enum SesKind {
    /// 0 → Γ² → ⊗² → Λ² → 0 (divided, tensor, exterior squares).
    DividedTensorExterior,
    /// 0 → Λ² → ⊗² → Sym² → 0.
    ExteriorTensorSym,
}

impl SesKind {
    fn functors(self) -> (Power, Power, Power) {
        match self {
            SesKind::DividedTensorExterior => {
                (Power::Div(2), Power::Tensor(2), Power::Ext(2))
            }
            SesKind::ExteriorTensorSym => (Power::Ext(2), Power::Tensor(2), Power::Sym(2)),
        }
    }

    fn head_map(self, m: &BasedFreeModule) -> ModuleMap {
        match self {
            SesKind::DividedTensorExterior => div2_to_tensor2(m),
            SesKind::ExteriorTensorSym => ext2_to_tensor2(m),
        }
    }

    fn tail_map(self, m: &BasedFreeModule) -> ModuleMap {
        match self {
            SesKind::DividedTensorExterior => tensor2_to_ext2(m),
            SesKind::ExteriorTensorSym => tensor2_to_sym2(m),
        }
    }

    fn label(self) -> &'static str {
        match self {
            SesKind::DividedTensorExterior => "0 -> Div^2 -> T^2 -> Ext^2 -> 0",
            SesKind::ExteriorTensorSym => "0 -> Ext^2 -> T^2 -> Sym^2 -> 0",
        }
    }
}

struct LesData {
    a: ChainComplex,
    b: ChainComplex,
    c: ChainComplex,
    phi: ChainMap,
    psi: ChainMap,
}

fn build_les(res: &ChainComplex, kind: SesKind) -> Result<LesData, String> {
    let topn = 2 * res.top();
    let bound = topn + 1;
    let g = gamma(res, bound);
    let (fa, fb, fc) = kind.functors();
    let mk = |f: &Power| -> Result<(NormalizedComplex, ChainComplex), String> {
        let applied = apply_functor_levelwise(f, &g);
        let nz = normalize(&applied).map_err(|e| e.to_string())?;
        for level in topn + 1..=bound {
            if nz.complex.modules[level].dim() != 0 {
                return Err(format!("normalized level {level} unexpectedly nonzero"));
            }
        }
        let trimmed = ChainComplex::new(
            nz.complex.modules[..=topn].to_vec(),
            nz.complex.diffs[..topn].to_vec(),
        )
        .map_err(|e| e.to_string())?;
        Ok((nz, trimmed))
    };
    let (na, ta) = mk(&fa)?;
    let (nb, tb) = mk(&fb)?;
    let (nc, tc) = mk(&fc)?;
    let phi_maps: Vec<ModuleMap> = (0..=topn)
        .map(|k| {
            nb.projections[k]
                .compose(&kind.head_map(&g.modules[k]))
                .compose(&na.sections[k])
        })
        .collect();
    let psi_maps: Vec<ModuleMap> = (0..=topn)
        .map(|k| {
            nc.projections[k]
                .compose(&kind.tail_map(&g.modules[k]))
                .compose(&nb.sections[k])
        })
        .collect();
    let phi = ChainMap::new(ta.clone(), tb.clone(), phi_maps).map_err(|e| e.to_string())?;
    let psi = ChainMap::new(tb.clone(), tc, psi_maps).map_err(|e| e.to_string())?;
    Ok(LesData {
        a: ta,
        b: tb,
        c: psi.target.clone(),
        phi,
        psi,
    })
}

fn hdim(h: &Homology, q: i64) -> usize {
    h.hilbert()
        .and_then(|m| m.get(&q).copied())
        .unwrap_or(0)
}

fn exact_at(
    dim: usize,
    inm: Option<&SparseMatrix>,
    outm: Option<&SparseMatrix>,
) -> Result<bool, String> {
    let ri = match inm {
        Some(m) => field_rank(m).map_err(|e| e.to_string())?,
        None => 0,
    };
    let ro = match outm {
        Some(m) => field_rank(m).map_err(|e| e.to_string())?,
        None => 0,
    };
    if ri + ro != dim {
        return Ok(false);
    }
    if let (Some(i), Some(o)) = (inm, outm) {
        if !o.mul(i).is_zero_matrix() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Connecting map H_k(C) → H_{k−1}(A) as one matrix per internal degree:
/// lift a generator through ψ, push through the differential of B, pull
/// back through φ, and read coordinates in the target homology.
fn connecting(
    data: &LesData,
    k: usize,
    hck: &Homology,
    hak1: &Homology,
) -> Result<BTreeMap<i64, SparseMatrix>, String> {
    let base = data.b.ring().base_ring();
    let hil = hck.hilbert().ok_or("graded homology expected")?.clone();
    let ha_hil = hak1.hilbert().ok_or("graded homology expected")?.clone();
    let degs: Vec<i64> = hil
        .iter()
        .flat_map(|(&t, &c)| std::iter::repeat(t).take(c))
        .collect();
    let mut out: BTreeMap<i64, SparseMatrix> = BTreeMap::new();
    for (&t, &c) in &hil {
        let rows = ha_hil.get(&t).copied().unwrap_or(0);
        out.insert(t, SparseMatrix::zero(base.clone(), rows, c));
    }
    let mut col_of: BTreeMap<i64, usize> = BTreeMap::new();
    for (gi, z) in hck.generators().iter().enumerate() {
        let t = degs[gi];
        let e = col_of.entry(t).or_insert(0);
        let col = *e;
        *e += 1;
        let y = solve_map(&data.psi.maps[k], z)
            .ok_or_else(|| format!("no lift through the quotient map at level {k}"))?;
        let v = data.b.diffs[k - 1].apply(&y);
        if v.iter().all(Scalar::is_zero) {
            continue;
        }
        let wv = solve_map(&data.phi.maps[k - 1], &v).ok_or_else(|| {
            format!("boundary of the lift misses the subcomplex at level {}", k - 1)
        })?;
        if wv.iter().all(Scalar::is_zero) {
            continue;
        }
        if ha_hil.get(&t).copied().unwrap_or(0) == 0 {
            if !hak1.is_boundary(&wv).map_err(|e| e.to_string())? {
                return Err(format!(
                    "connecting image lands in an empty degree-{t} slot without bounding"
                ));
            }
            continue;
        }
        let coords = hak1
            .coords(&wv)
            .ok_or("connecting image is not a homogeneous cycle")?;
        let m = out.get_mut(&t).expect("slot allocated");
        for (i, s) in coords.iter().enumerate() {
            if !s.is_zero() {
                m.set(i, col, s.clone());
            }
        }
    }
    Ok(out)
}

fn ses_job(prefix: &str, params: String, data: Arc<LesData>, w: i64) -> CheckJob {
    CheckJob::new(format!("{prefix}.ses_levelwise"), params, move || {
        let mut slices = 0usize;
        let mut bad: Option<String> = None;
        'levels: for k in 0..=data.a.top() {
            let comp = data.psi.maps[k].compose(&data.phi.maps[k]);
            if !comp.matrix.is_zero_matrix() {
                bad = Some(format!("composite nonzero at level {k}"));
                break;
            }
            for q in 0..=w {
                let (mphi, _, cphi) = data.phi.maps[k].slice(q).map_err(|e| e.to_string())?;
                let (mpsi, rpsi, cpsi) = data.psi.maps[k].slice(q).map_err(|e| e.to_string())?;
                let da = cphi.dim();
                let db = cpsi.dim();
                let dc = rpsi.dim();
                let rank_in = field_rank(&mphi).map_err(|e| e.to_string())?;
                let rank_out = field_rank(&mpsi).map_err(|e| e.to_string())?;
                slices += 1;
                if rank_in != da || rank_out != dc || da + dc != db {
                    bad = Some(format!(
                        "level {k}, degree {q}: dims (A,B,C) = ({da},{db},{dc}), \
                         rank in = {rank_in}, rank out = {rank_out}"
                    ));
                    break 'levels;
                }
            }
        }
        let expected = format!("short exact in every level and degree ({slices} slices)");
        let computed = match bad {
            None => expected.clone(),
            Some(b) => b,
        };
        eq_strings(expected, computed)
    })
}

fn les_job(prefix: &str, params: String, data: Arc<LesData>, w: i64) -> CheckJob {
    CheckJob::new(format!("{prefix}.les_exact"), params, move || {
        let top = data.a.top();
        let win = Some(0..=w);
        let compute = |c: &ChainComplex| -> Result<Vec<Homology>, String> {
            (0..=top)
                .map(|k| homology(c, k, win.clone()).map_err(|e| e.to_string()))
                .collect()
        };
        let ha = compute(&data.a)?;
        let hb = compute(&data.b)?;
        let hc = compute(&data.c)?;
        let per_degree = |f: &ModuleMap, hs: &Homology, ht: &Homology| {
            induced_map(f, hs, ht)
                .map(|m| m.graded_matrices().cloned().unwrap_or_default())
                .map_err(|e| e.to_string())
        };
        let mut iphi = Vec::new();
        let mut ipsi = Vec::new();
        for k in 0..=top {
            iphi.push(per_degree(&data.phi.maps[k], &ha[k], &hb[k])?);
            ipsi.push(per_degree(&data.psi.maps[k], &hb[k], &hc[k])?);
        }
        let mut delta: Vec<BTreeMap<i64, SparseMatrix>> = vec![BTreeMap::new()];
        for k in 1..=top {
            delta.push(connecting(&data, k, &hc[k], &ha[k - 1])?);
        }
        let mut nodes = 0usize;
        let mut bad: Option<String> = None;
        'degrees: for q in 0..=w {
            for k in (0..=top).rev() {
                let steps: [(&str, usize, Option<&SparseMatrix>, Option<&SparseMatrix>); 3] = [
                    (
                        "A",
                        hdim(&ha[k], q),
                        if k < top { delta[k + 1].get(&q) } else { None },
                        iphi[k].get(&q),
                    ),
                    ("B", hdim(&hb[k], q), iphi[k].get(&q), ipsi[k].get(&q)),
                    (
                        "C",
                        hdim(&hc[k], q),
                        ipsi[k].get(&q),
                        if k >= 1 { delta[k].get(&q) } else { None },
                    ),
                ];
                for (tag, dim, inm, outm) in steps {
                    nodes += 1;
                    if !exact_at(dim, inm, outm)? {
                        bad = Some(format!("not exact at H_{k}({tag}) in degree {q}"));
                        break 'degrees;
                    }
                }
            }
        }
        let expected = format!("long sequence exact at every node ({nodes} nodes)");
        let computed = match bad {
            None => expected.clone(),
            Some(b) => b,
        };
        eq_strings(expected, computed)
    })
}

fn les_suite(
    prefix: &str,
    params: String,
    res: &ChainComplex,
    kind: SesKind,
    w: i64,
) -> Vec<CheckJob> {
    match build_les(res, kind) {
        Ok(data) => {
            let data = Arc::new(data);
            vec![
                ses_job(prefix, format!("{params}, {}", kind.label()), Arc::clone(&data), w),
                les_job(prefix, format!("{params}, {}", kind.label()), data, w),
            ]
        }
        Err(msg) => vec![CheckJob::new(
            format!("{prefix}.construction"),
            params,
            move || Err(msg),
        )],
    }
}

fn rem65(cfg: &ScenarioConfig) -> Result<Vec<CheckJob>, HarnessError> {
    let cd = cfg.conormal()?;
    let d = cd.conormal.dim();
    let w = cfg.window;
    let mut jobs = Vec::new();
    match d {
        1 => {
            let res = resolution_for(cfg.rank, &cd).map_err(validation)?;
            jobs.extend(les_suite(
                "rem65.d1",
                instance_label(cfg),
                &res.complex,
                SesKind::DividedTensorExterior,
                w,
            ));
            // characteristic-two variant of the same sequence
            let f2 = Ring::Poly(PolyRing {
                base: BaseField::Fp(2),
                vars: vec!["x".into()],
            });
            let cdf = conormal_data(&f2, &[f2.var(0)]).map_err(validation)?;
            let resf = resolution_for(1, &cdf).map_err(validation)?;
            let params2 = format!("F2[x], I=(x), rank=1, n=2, window={w}");
            jobs.extend(les_suite(
                "rem65.d1f2",
                params2.clone(),
                &resf.complex,
                SesKind::DividedTensorExterior,
                w,
            ));
            jobs.push(CheckJob::new(
                "rem65.d1f2.h0_divided_square",
                params2,
                move || {
                    let nn = nfg(&resf.complex, &Power::Div(2)).map_err(|e| e.to_string())?;
                    let h = homology(&nn, 0, Some(0..=w)).map_err(|e| e.to_string())?;
                    let expected = hilbert_descriptor(BTreeMap::from([(0i64, 1), (1i64, 1)]));
                    eq_strings(
                        descriptor_string(&expected),
                        descriptor_string(&h.descriptor),
                    )
                },
            ));
        }
        2 => {
            for r in 1..=cfg.rank.min(2) {
                let res = resolution_for(r, &cd).map_err(validation)?;
                let params = format!(
                    "{}, I=({}), rank={r}, n=2, window={w}",
                    ring_label(&cfg.ring),
                    cfg.ideal.join(",")
                );
                jobs.extend(les_suite(
                    &format!("rem65.d2.r{r}"),
                    params,
                    &res.complex,
                    SesKind::ExteriorTensorSym,
                    w,
                ));
            }
        }
        other => {
            return Err(validation(format!(
                "suite rem65 handles ideals of one or two generators, got {other}"
            )))
        }
    }
    Ok(jobs)
}

// ---------- conjectured homology of the cubic power in codimension two ----------

fn ex66(cfg: &ScenarioConfig) -> Result<Vec<CheckJob>, HarnessError> {
    let cd = cfg.conormal()?;
    let res = resolution_for(cfg.rank, &cd).map_err(validation)?;
    let r = cfg.rank;
    let topn = 3 * res.complex.top();
    let g = gamma(&res.complex, topn);
    let app = apply_functor_levelwise(&Power::Sym(3), &g);
    let nz = normalize(&app).map_err(validation)?;
    let nn = Arc::new(nz.complex);
    let label = instance_label(cfg);
    let w = cfg.window;
    let mut jobs = Vec::new();
    for k in 0..=topn {
        let count = match k {
            0 => binom(r + 2, 3),
            1 => schur_module(&res.v, 3, 1).rank() * 2,
            2 => binom(r + 1, 2) * r + binom(r, 3) * 3,
            3 => coschur_module(&res.v, 3, 1).rank() * 2,
            4 => binom(r + 2, 3),
            _ => 0,
        };
        let expected_desc = hilbert_descriptor(BTreeMap::from([(k as i64, count)]));
        let nn = Arc::clone(&nn);
        let params = format!("{label}, homological degree {k} (support bound trusted)");
        jobs.push(CheckJob::conjecture(
            format!("ex66.H{k:02}"),
            params,
            move || {
                let h = homology(&nn, k, Some(0..=w)).map_err(|e| e.to_string())?;
                eq_strings(
                    descriptor_string(&expected_desc),
                    descriptor_string(&h.descriptor),
                )
            },
        ));
    }
    Ok(jobs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::run_suite;

    fn assert_passes(suite: Suite) {
        let cfg = ScenarioConfig::canonical(suite, 0);
        let report = run_suite(&cfg, 2).unwrap();
        for c in &report.checks {
            assert!(
                !c.status.is_failure(),
                "{}: expected {} / computed {}",
                c.name,
                c.expected,
                c.computed
            );
        }
    }

    #[test]
    fn thm32_canonical_passes() {
        assert_passes(Suite::Thm32);
    }

    #[test]
    fn rem36_canonical_passes() {
        assert_passes(Suite::Rem36);
    }

    #[test]
    fn thm51_canonical_passes() {
        assert_passes(Suite::Thm51);
    }

    #[test]
    fn ex52_canonical_passes() {
        assert_passes(Suite::Ex52);
    }

    #[test]
    fn prop24_canonical_passes() {
        assert_passes(Suite::Prop24);
    }

    #[test]
    fn lemma22_canonical_passes() {
        assert_passes(Suite::Lemma22);
    }

    #[test]
    fn crosseffects_canonical_passes() {
        assert_passes(Suite::CrossEffects);
    }

    #[test]
    fn composition_and_partition_helpers() {
        assert_eq!(compositions(3, 2), vec![vec![1, 2], vec![2, 1]]);
        assert_eq!(compositions(2, 1), vec![vec![2]]);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(binom(4, 2), 6);
        assert_eq!(binom(2, 3), 0);
    }
}
