use super::chain::{ChainComplex, ComplexError};
use crate::arith::{
    col_hermite, field_kernel, field_rank, smith_normal_form, FieldElim, Hermite, IntMat, Offer,
    Ring, Scalar, SliceIndex, SparseMatrix,
};
use crate::module::ModuleMap;
use num::{BigInt, Integer, One, Zero};
use std::collections::BTreeMap;
use std::ops::RangeInclusive;

/// Ring-appropriate isomorphism-class description of one homology module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomologyDescriptor {
    /// Finitely generated abelian group: free rank plus invariant factors
    /// (each > 1, each dividing the next).
    Abelian { rank: usize, torsion: Vec<BigInt> },
    /// Dimension over a field.
    Dim(usize),
    /// Graded module recorded by its Hilbert function on the computed
    /// window; degrees with dimension zero are omitted.
    Hilbert(BTreeMap<i64, usize>),
}

impl HomologyDescriptor {
    pub fn is_trivial(&self) -> bool {
        match self {
            HomologyDescriptor::Abelian { rank, torsion } => *rank == 0 && torsion.is_empty(),
            HomologyDescriptor::Dim(d) => *d == 0,
            HomologyDescriptor::Hilbert(h) => h.values().all(|&d| d == 0),
        }
    }

    /// Total order when the group is finite (integer case only).
    pub fn finite_order(&self) -> Option<BigInt> {
        match self {
            HomologyDescriptor::Abelian { rank: 0, torsion } => {
                Some(torsion.iter().product())
            }
            _ => None,
        }
    }
}

struct IntegerDetail {
    d_out: ModuleMap,
    kernel_h: Hermite,
    boundary_h: Hermite,
    u_inv: IntMat,
    /// Order of each kernel-quotient generator: 0 = infinite, 1 = trivial.
    orders: Vec<BigInt>,
    /// Indices (into `orders`) of the nontrivial generators, torsion first.
    gen_idx: Vec<usize>,
    gen_reps: Vec<Vec<BigInt>>,
}

struct FieldDetail {
    d_out: ModuleMap,
    elim: FieldElim,
    hom_tags: Vec<usize>,
    reps: Vec<Vec<Scalar>>,
}

struct GradedSlot {
    cidx: SliceIndex,
    elim: FieldElim,
    hom_tags: Vec<usize>,
    /// Representatives in slice coordinates.
    reps: Vec<Vec<Scalar>>,
}

struct GradedDetail {
    ring: Ring,
    gen_degrees: Vec<i64>,
    slots: BTreeMap<i64, GradedSlot>,
}

enum Detail {
    Integer(IntegerDetail),
    Field(FieldDetail),
    Graded(GradedDetail),
}

/// One homology module of a complex, with enough retained structure to
/// test membership, compute coordinates, and transport maps.
pub struct Homology {
    pub degree: usize,
    pub descriptor: HomologyDescriptor,
    detail: Detail,
}

fn to_int_vec(v: &[Scalar]) -> Option<Vec<BigInt>> {
    v.iter().map(|s| s.as_bigint()).collect()
}

fn from_int_vec(ring: &Ring, v: &[BigInt]) -> Vec<Scalar> {
    v.iter().map(|x| ring.from_bigint(x)).collect()
}

/// Homology of `c` in degree `k`. Graded rings additionally need the
/// degree `window` on which slices are computed.
pub fn homology(
    c: &ChainComplex,
    k: usize,
    window: Option<RangeInclusive<i64>>,
) -> Result<Homology, ComplexError> {
    if k > c.top() {
        return Err(ComplexError::DegreeOutOfRange(k));
    }
    let d_out = c.d_or_zero(k);
    let d_in = c.d_or_zero(k + 1);
    let ring = c.ring().clone();
    let (descriptor, detail) = match &ring {
        Ring::Int => {
            let (d, det) = integer_homology(&d_out, &d_in);
            (d, Detail::Integer(det))
        }
        r if r.is_field() => {
            let (d, det) = field_homology(&d_out, &d_in)?;
            (d, Detail::Field(det))
        }
        Ring::Poly(_) => {
            let w = window.ok_or(ComplexError::MissingWindow)?;
            let (d, det) = graded_homology(&d_out, &d_in, w)?;
            (d, Detail::Graded(det))
        }
        other => return Err(ComplexError::UnsupportedRing(other.to_string())),
    };
    Ok(Homology {
        degree: k,
        descriptor,
        detail,
    })
}

fn integer_homology(d_out: &ModuleMap, d_in: &ModuleMap) -> (HomologyDescriptor, IntegerDetail) {
    let a = IntMat::from_sparse(&d_out.matrix);
    let b = IntMat::from_sparse(&d_in.matrix);
    let ha = col_hermite(&a);
    let kernel_cols = ha.kernel();
    let z = kernel_cols.len();
    let kernel_mat = IntMat::from_columns(a.cols, &kernel_cols);
    let kernel_h = col_hermite(&kernel_mat);
    let boundary_h = col_hermite(&b);
    // boundaries in kernel coordinates
    let mut xcols = Vec::with_capacity(b.cols);
    for j in 0..b.cols {
        let y = kernel_h
            .solve(&b.column(j))
            .expect("boundary columns are cycles");
        xcols.push(y);
    }
    let x = IntMat::from_columns(z, &xcols);
    let s = smith_normal_form(&x);
    let r = s.rank();
    let mut orders = Vec::with_capacity(z);
    for i in 0..z {
        orders.push(if i < r {
            s.factors[i].clone()
        } else {
            BigInt::zero()
        });
    }
    let mut gen_idx = Vec::new();
    let mut gen_reps = Vec::new();
    let mut torsion = Vec::new();
    let mut rank = 0usize;
    for i in 0..z {
        if orders[i].is_one() {
            continue;
        }
        gen_idx.push(i);
        gen_reps.push(kernel_mat.apply(&s.u.column(i)));
        if orders[i].is_zero() {
            rank += 1;
        } else {
            torsion.push(orders[i].clone());
        }
    }
    (
        HomologyDescriptor::Abelian { rank, torsion },
        IntegerDetail {
            d_out: d_out.clone(),
            kernel_h,
            boundary_h,
            u_inv: s.u_inv,
            orders,
            gen_idx,
            gen_reps,
        },
    )
}

fn field_homology(
    d_out: &ModuleMap,
    d_in: &ModuleMap,
) -> Result<(HomologyDescriptor, FieldDetail), ComplexError> {
    let ring = &d_out.source.ring;
    let mut elim = FieldElim::new(ring, d_out.source.dim())?;
    for j in 0..d_in.matrix.cols {
        elim.offer(&d_in.matrix.column(j));
    }
    let mut hom_tags = Vec::new();
    let mut reps = Vec::new();
    for kv in field_kernel(&d_out.matrix)? {
        if let Offer::Independent { basis_index } = elim.offer(&kv) {
            hom_tags.push(basis_index);
            // store the eliminator's normalized vector (also a cycle) so
            // coords() is exactly the coordinates in generators()
            reps.push(elim.basis_vector(basis_index).to_vec());
        }
    }
    Ok((
        HomologyDescriptor::Dim(hom_tags.len()),
        FieldDetail {
            d_out: d_out.clone(),
            elim,
            hom_tags,
            reps,
        },
    ))
}

fn graded_homology(
    d_out: &ModuleMap,
    d_in: &ModuleMap,
    window: RangeInclusive<i64>,
) -> Result<(HomologyDescriptor, GradedDetail), ComplexError> {
    let ring = d_out.source.ring.clone();
    let base = ring.base_ring();
    let mut slots = BTreeMap::new();
    let mut hilbert = BTreeMap::new();
    for t in window.clone() {
        let (a_slice, _a_rows, a_cols) = d_out.slice(t)?;
        let (b_slice, _b_rows, _b_cols) = d_in.slice(t)?;
        let mut elim = FieldElim::new(&base, a_cols.dim())?;
        for j in 0..b_slice.cols {
            elim.offer(&b_slice.column(j));
        }
        let mut hom_tags = Vec::new();
        let mut reps = Vec::new();
        for kv in field_kernel(&a_slice)? {
            if let Offer::Independent { basis_index } = elim.offer(&kv) {
                hom_tags.push(basis_index);
                // normalized vector, so coords() matches generators()
                reps.push(elim.basis_vector(basis_index).to_vec());
            }
        }
        if !hom_tags.is_empty() {
            hilbert.insert(t, hom_tags.len());
        }
        slots.insert(
            t,
            GradedSlot {
                cidx: a_cols,
                elim,
                hom_tags,
                reps,
            },
        );
    }
    Ok((
        HomologyDescriptor::Hilbert(hilbert),
        GradedDetail {
            ring,
            gen_degrees: d_out.source.degrees.clone(),
            slots,
        },
    ))
}

impl GradedDetail {
    /// Total degree of a homogeneous module element; None for zero or
    /// inhomogeneous elements.
    fn element_degree(&self, x: &[Scalar]) -> Option<i64> {
        let mut deg = None;
        for (i, s) in x.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let Scalar::Poly(p) = s else { return None };
            let d = p.homogeneous_degree()? + self.gen_degrees[i];
            match deg {
                None => deg = Some(d),
                Some(e) if e == d => {}
                _ => return None,
            }
        }
        deg
    }

    /// Split into (degree, homogeneous part) pairs.
    fn homogeneous_parts(&self, x: &[Scalar]) -> BTreeMap<i64, Vec<Scalar>> {
        let mut parts: BTreeMap<i64, Vec<Scalar>> = BTreeMap::new();
        for (i, s) in x.iter().enumerate() {
            let Scalar::Poly(p) = s else { continue };
            for (m, c) in p.terms.iter() {
                let t = m.total_degree() + self.gen_degrees[i];
                let part = parts
                    .entry(t)
                    .or_insert_with(|| vec![self.ring.zero(); x.len()]);
                let term = self.ring.monomial(m.clone(), c.clone());
                part[i] = self.ring.add(&part[i], &term);
            }
        }
        parts
    }

    fn slot(&self, t: i64) -> Result<&GradedSlot, ComplexError> {
        self.slots
            .get(&t)
            .ok_or(ComplexError::OutsideWindow { degree: t })
    }
}

impl Homology {
    pub fn dim_over_field(&self) -> Option<usize> {
        match &self.descriptor {
            HomologyDescriptor::Dim(d) => Some(*d),
            _ => None,
        }
    }

    /// Representatives of the chosen generators, as elements of C_k.
    pub fn generators(&self) -> Vec<Vec<Scalar>> {
        match &self.detail {
            Detail::Integer(d) => d
                .gen_reps
                .iter()
                .map(|r| from_int_vec(&Ring::Int, r))
                .collect(),
            Detail::Field(d) => d.reps.clone(),
            Detail::Graded(d) => {
                let mut out = Vec::new();
                for slot in d.slots.values() {
                    for rep in &slot.reps {
                        out.push(slot.cidx.unslice_vector(&d.ring, rep));
                    }
                }
                out
            }
        }
    }

    pub fn is_cycle(&self, x: &[Scalar]) -> bool {
        match &self.detail {
            Detail::Integer(d) => d.d_out.apply(x).iter().all(|s| s.is_zero()),
            Detail::Field(d) => d.d_out.apply(x).iter().all(|s| s.is_zero()),
            Detail::Graded(_) => panic!("use graded membership via is_boundary/coords"),
        }
    }

    /// Is `x` a boundary? Graded elements must stay inside the window.
    pub fn is_boundary(&self, x: &[Scalar]) -> Result<bool, ComplexError> {
        match &self.detail {
            Detail::Integer(d) => {
                let xi = to_int_vec(x).expect("integer chain");
                Ok(d.boundary_h.contains(&xi))
            }
            Detail::Field(d) => {
                let red = d.elim.reduce(x);
                if !red.is_dependent() {
                    return Ok(false);
                }
                Ok(d
                    .hom_tags
                    .iter()
                    .all(|t| !red.basis_coeffs.iter().any(|(i, c)| i == t && !c.is_zero())))
            }
            Detail::Graded(g) => {
                for (t, part) in g.homogeneous_parts(x) {
                    let slot = g.slot(t)?;
                    let sliced = slot.cidx.slice_vector(&g.ring, &part)?;
                    let red = slot.elim.reduce(&sliced);
                    if !red.is_dependent() {
                        return Ok(false);
                    }
                    let clean = slot
                        .hom_tags
                        .iter()
                        .all(|tag| !red.basis_coeffs.iter().any(|(i, c)| i == tag && !c.is_zero()));
                    if !clean {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Coordinates of a cycle in the chosen generators. Integer answers are
    /// reduced modulo each generator's order. None when `x` is not a cycle
    /// (or, graded, not homogeneous of an in-window degree).
    pub fn coords(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        match &self.detail {
            Detail::Integer(d) => {
                if !self.is_cycle(x) {
                    return None;
                }
                let xi = to_int_vec(x)?;
                let y = d.kernel_h.solve(&xi)?;
                let q = d.u_inv.apply(&y);
                Some(
                    d.gen_idx
                        .iter()
                        .map(|&i| {
                            let v = if d.orders[i].is_zero() {
                                q[i].clone()
                            } else {
                                q[i].mod_floor(&d.orders[i])
                            };
                            Ring::Int.from_bigint(&v)
                        })
                        .collect(),
                )
            }
            Detail::Field(d) => {
                let red = d.elim.reduce(x);
                if !red.is_dependent() {
                    return None;
                }
                let ring = &d.d_out.source.ring;
                Some(
                    d.hom_tags
                        .iter()
                        .map(|t| {
                            red.basis_coeffs
                                .iter()
                                .find(|(i, _)| i == t)
                                .map(|(_, c)| c.clone())
                                .unwrap_or_else(|| ring.zero())
                        })
                        .collect(),
                )
            }
            Detail::Graded(g) => {
                let t = g.element_degree(x)?;
                let slot = g.slots.get(&t)?;
                let sliced = slot.cidx.slice_vector(&g.ring, x).ok()?;
                let red = slot.elim.reduce(&sliced);
                if !red.is_dependent() {
                    return None;
                }
                let base = g.ring.base_ring();
                Some(
                    slot.hom_tags
                        .iter()
                        .map(|tag| {
                            red.basis_coeffs
                                .iter()
                                .find(|(i, _)| i == tag)
                                .map(|(_, c)| c.clone())
                                .unwrap_or_else(|| base.zero())
                        })
                        .collect(),
                )
            }
        }
    }

    /// Do the given chains generate all of homology (over the ring)?
    pub fn spanned_by(&self, xs: &[Vec<Scalar>]) -> Result<bool, ComplexError> {
        match &self.detail {
            Detail::Integer(d) => {
                let g = d.gen_idx.len();
                let mut cols: Vec<Vec<BigInt>> = Vec::new();
                for x in xs {
                    let c = self.coords(x).ok_or(ComplexError::NotComplex {
                        degree: self.degree,
                    })?;
                    cols.push(c.iter().map(|s| s.as_bigint().unwrap()).collect());
                }
                for (slot, &i) in d.gen_idx.iter().enumerate() {
                    if d.orders[i].is_zero() {
                        continue;
                    }
                    let mut rel = vec![BigInt::zero(); g];
                    rel[slot] = d.orders[i].clone();
                    cols.push(rel);
                }
                let m = IntMat::from_columns(g, &cols);
                let s = smith_normal_form(&m);
                Ok(s.rank() == g && s.factors.iter().all(|f| f.is_one()))
            }
            Detail::Field(d) => {
                let ring = &d.d_out.source.ring;
                let dim = d.hom_tags.len();
                let mut elim = FieldElim::new(ring, dim)?;
                for x in xs {
                    if let Some(c) = self.coords(x) {
                        elim.offer(&c);
                    }
                }
                Ok(elim.rank() == dim)
            }
            Detail::Graded(g) => {
                // R-module span: in each window degree t the slice of the
                // generated submodule is spanned by monomial multiples.
                let base = g.ring.base_ring();
                let degs: Vec<Option<i64>> = xs.iter().map(|x| g.element_degree(x)).collect();
                for (&t, slot) in &g.slots {
                    if slot.hom_tags.is_empty() {
                        continue;
                    }
                    let mut elim = FieldElim::new(&base, slot.hom_tags.len())?;
                    for (x, dx) in xs.iter().zip(&degs) {
                        let Some(dx) = dx else { continue };
                        let rem = t - dx;
                        if rem < 0 {
                            continue;
                        }
                        for m in
                            crate::arith::monomials_of_degree(g.ring.num_vars(), rem as u32)
                        {
                            let mono = g.ring.monomial(m, base.one());
                            let mx: Vec<Scalar> =
                                x.iter().map(|s| g.ring.mul(&mono, s)).collect();
                            if let Some(c) = self.coords(&mx) {
                                elim.offer(&c);
                            }
                        }
                    }
                    if elim.rank() != slot.hom_tags.len() {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Is homology killed by the scalar `c` (i.e. c·H = 0)?
    pub fn annihilated_by(&self, c: &Scalar) -> Result<bool, ComplexError> {
        let ring = match &self.detail {
            Detail::Integer(_) => Ring::Int,
            Detail::Field(d) => d.d_out.source.ring.clone(),
            Detail::Graded(g) => g.ring.clone(),
        };
        for gen in self.generators() {
            let scaled: Vec<Scalar> = gen.iter().map(|s| ring.mul(c, s)).collect();
            if !self.is_boundary(&scaled)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Order of the subgroup generated by the given coordinate vectors
    /// (integer detail, finite homology only).
    pub fn subgroup_order(&self, coord_cols: &[Vec<BigInt>]) -> Option<BigInt> {
        let Detail::Integer(d) = &self.detail else {
            return None;
        };
        let g = d.gen_idx.len();
        if d.gen_idx.iter().any(|&i| d.orders[i].is_zero()) {
            return None;
        }
        let total: BigInt = d.gen_idx.iter().map(|&i| d.orders[i].clone()).product();
        let mut cols: Vec<Vec<BigInt>> = coord_cols.to_vec();
        for (slot, &i) in d.gen_idx.iter().enumerate() {
            let mut rel = vec![BigInt::zero(); g];
            rel[slot] = d.orders[i].clone();
            cols.push(rel);
        }
        let m = IntMat::from_columns(g, &cols);
        let s = smith_normal_form(&m);
        if s.rank() != g {
            return None;
        }
        let covol: BigInt = s.factors.iter().product();
        Some(total.div_floor(&covol))
    }

    /// Per-degree homology dimensions (graded detail).
    pub fn hilbert(&self) -> Option<&BTreeMap<i64, usize>> {
        match &self.descriptor {
            HomologyDescriptor::Hilbert(h) => Some(h),
            _ => None,
        }
    }
}

/// The map induced on homology by one chain-map component.
pub struct InducedMap {
    pub source_desc: HomologyDescriptor,
    pub target_desc: HomologyDescriptor,
    detail: InducedDetail,
}

enum InducedDetail {
    /// Coordinates of f(source generator) in target generators.
    Integer { cols: Vec<Vec<BigInt>> },
    Field { matrix: SparseMatrix },
    Graded { per_degree: BTreeMap<i64, SparseMatrix> },
}

/// Transport `f_k : C_k → D_k` to homology. `hs`/`ht` must be the degree-k
/// homology of the source and target complexes.
pub fn induced_map(
    f_k: &ModuleMap,
    hs: &Homology,
    ht: &Homology,
) -> Result<InducedMap, ComplexError> {
    let detail = match (&hs.detail, &ht.detail) {
        (Detail::Integer(_), Detail::Integer(_)) => {
            let mut cols = Vec::new();
            for rep in hs.generators() {
                let img = f_k.apply(&rep);
                let c = ht.coords(&img).ok_or(ComplexError::NotChainMap {
                    degree: hs.degree,
                })?;
                cols.push(c.iter().map(|s| s.as_bigint().unwrap()).collect());
            }
            InducedDetail::Integer { cols }
        }
        (Detail::Field(fs), Detail::Field(ft)) => {
            let ring = &fs.d_out.source.ring;
            let rows = ft.hom_tags.len();
            let mut m = SparseMatrix::zero(ring.clone(), rows, fs.hom_tags.len());
            for (j, rep) in hs.generators().iter().enumerate() {
                let img = f_k.apply(rep);
                let c = ht.coords(&img).ok_or(ComplexError::NotChainMap {
                    degree: hs.degree,
                })?;
                for (i, v) in c.into_iter().enumerate() {
                    m.set(i, j, v);
                }
            }
            InducedDetail::Field { matrix: m }
        }
        (Detail::Graded(gs), Detail::Graded(gt)) => {
            let base = gs.ring.base_ring();
            let mut per_degree = BTreeMap::new();
            for (&t, slot) in &gs.slots {
                let tgt_dim = gt.slots.get(&t).map(|s| s.hom_tags.len()).unwrap_or(0);
                let mut m = SparseMatrix::zero(base.clone(), tgt_dim, slot.hom_tags.len());
                for (j, rep) in slot.reps.iter().enumerate() {
                    let x = slot.cidx.unslice_vector(&gs.ring, rep);
                    let img = f_k.apply(&x);
                    // a killed generator has no degree of its own: zero column
                    if img.iter().all(|s| s.is_zero()) {
                        continue;
                    }
                    let c = ht.coords(&img).ok_or(ComplexError::NotChainMap {
                        degree: hs.degree,
                    })?;
                    for (i, v) in c.into_iter().enumerate() {
                        m.set(i, j, v);
                    }
                }
                if m.rows > 0 || m.cols > 0 {
                    per_degree.insert(t, m);
                }
            }
            InducedDetail::Graded { per_degree }
        }
        _ => {
            return Err(ComplexError::UnsupportedRing(
                "mixed homology details".into(),
            ))
        }
    };
    Ok(InducedMap {
        source_desc: hs.descriptor.clone(),
        target_desc: ht.descriptor.clone(),
        detail,
    })
}

impl InducedMap {
    pub fn is_zero(&self) -> bool {
        match &self.detail {
            InducedDetail::Integer { cols } => {
                cols.iter().all(|c| c.iter().all(|v| v.is_zero()))
            }
            InducedDetail::Field { matrix } => matrix.is_zero_matrix(),
            InducedDetail::Graded { per_degree } => {
                per_degree.values().all(|m| m.is_zero_matrix())
            }
        }
    }

    /// Isomorphism test: equal descriptors plus surjectivity (surjections
    /// between isomorphic finitely generated modules are bijective).
    pub fn is_iso(&self, ht: &Homology) -> Result<bool, ComplexError> {
        if self.source_desc != self.target_desc {
            return Ok(false);
        }
        match (&self.detail, &ht.detail) {
            (InducedDetail::Integer { cols }, Detail::Integer(d)) => {
                let g = d.gen_idx.len();
                let mut all = cols.clone();
                for (slot, &i) in d.gen_idx.iter().enumerate() {
                    if d.orders[i].is_zero() {
                        continue;
                    }
                    let mut rel = vec![BigInt::zero(); g];
                    rel[slot] = d.orders[i].clone();
                    all.push(rel);
                }
                let m = IntMat::from_columns(g, &all);
                let s = smith_normal_form(&m);
                Ok(s.rank() == g && s.factors.iter().all(|f| f.is_one()))
            }
            (InducedDetail::Field { matrix }, _) => {
                if matrix.rows != matrix.cols {
                    return Ok(false);
                }
                Ok(field_rank(matrix)? == matrix.rows)
            }
            (InducedDetail::Graded { per_degree }, Detail::Graded(gt)) => {
                for (t, m) in per_degree {
                    let want = gt.slots.get(t).map(|s| s.hom_tags.len()).unwrap_or(0);
                    if m.rows != want || m.cols != want {
                        return Ok(false);
                    }
                    if m.rows > 0 && field_rank(m)? != m.rows {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            _ => Err(ComplexError::UnsupportedRing("mixed induced map".into())),
        }
    }

    /// Matrix over the (field) coefficient ring, when applicable.
    pub fn field_matrix(&self) -> Option<&SparseMatrix> {
        match &self.detail {
            InducedDetail::Field { matrix } => Some(matrix),
            _ => None,
        }
    }

    pub fn integer_cols(&self) -> Option<&[Vec<BigInt>]> {
        match &self.detail {
            InducedDetail::Integer { cols } => Some(cols),
            _ => None,
        }
    }

    pub fn graded_matrices(&self) -> Option<&BTreeMap<i64, SparseMatrix>> {
        match &self.detail {
            InducedDetail::Graded { per_degree } => Some(per_degree),
            _ => None,
        }
    }

    /// |image| inside a finite integer homology group.
    pub fn image_order(&self, ht: &Homology) -> Option<BigInt> {
        match &self.detail {
            InducedDetail::Integer { cols } => ht.subgroup_order(cols),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::BasedFreeModule;

    fn two_term(rows: &[&[i64]]) -> ChainComplex {
        let m = SparseMatrix::from_i64_rows(Ring::Int, rows);
        let f = ModuleMap::new(
            BasedFreeModule::standard(Ring::Int, m.cols),
            BasedFreeModule::standard(Ring::Int, m.rows),
            m,
        );
        ChainComplex::two_term(&f)
    }

    #[test]
    fn multiplication_by_m_on_z() {
        let c = two_term(&[&[6]]);
        let h0 = homology(&c, 0, None).unwrap();
        assert_eq!(
            h0.descriptor,
            HomologyDescriptor::Abelian {
                rank: 0,
                torsion: vec![BigInt::from(6)]
            }
        );
        assert_eq!(h0.descriptor.finite_order(), Some(BigInt::from(6)));
        let h1 = homology(&c, 1, None).unwrap();
        assert!(h1.descriptor.is_trivial());
        // 6·generator is a boundary, 3·generator is not
        let gen = &h0.generators()[0];
        let six: Vec<Scalar> = gen.iter().map(|s| Ring::Int.mul(&Ring::Int.from_i64(6), s)).collect();
        assert!(h0.is_boundary(&six).unwrap());
        assert!(h0.annihilated_by(&Ring::Int.from_i64(6)).unwrap());
        assert!(!h0.annihilated_by(&Ring::Int.from_i64(3)).unwrap());
    }

    #[test]
    fn rank_and_torsion_mix() {
        // d1 = [[2, 0]]: H_0 = Z/2, H_1 = ker = Z (second generator)
        let c = two_term(&[&[2, 0]]);
        let h0 = homology(&c, 0, None).unwrap();
        assert_eq!(
            h0.descriptor,
            HomologyDescriptor::Abelian {
                rank: 0,
                torsion: vec![BigInt::from(2)]
            }
        );
        let h1 = homology(&c, 1, None).unwrap();
        assert_eq!(
            h1.descriptor,
            HomologyDescriptor::Abelian {
                rank: 1,
                torsion: vec![]
            }
        );
        assert_eq!(h1.descriptor.finite_order(), None);
        // the kernel generator spans H_1
        let gens = h1.generators();
        assert!(h1.spanned_by(&gens).unwrap());
        assert!(!h1.spanned_by(&[]).unwrap());
    }

    #[test]
    fn field_homology_and_coords() {
        let r = Ring::IntMod(5);
        let m = SparseMatrix::from_i64_rows(r.clone(), &[&[0, 0]]);
        let f = ModuleMap::new(
            BasedFreeModule::standard(r.clone(), 2),
            BasedFreeModule::standard(r.clone(), 1),
            m,
        );
        let c = ChainComplex::two_term(&f);
        let h1 = homology(&c, 1, None).unwrap();
        assert_eq!(h1.descriptor, HomologyDescriptor::Dim(2));
        let x = vec![r.from_i64(2), r.from_i64(3)];
        let coords = h1.coords(&x).unwrap();
        assert_eq!(coords.len(), 2);
        assert!(h1.spanned_by(&[x]).unwrap() == false);
    }

    #[test]
    fn graded_koszul_of_one_variable() {
        use crate::arith::{BaseField, PolyRing};
        // R = Q[x], complex R(-1) -x-> R: H_0 = R/(x) (dim 1 in degree 0)
        let r = Ring::Poly(PolyRing {
            base: BaseField::Rat,
            vars: vec!["x".into()],
        });
        let src = BasedFreeModule::with_degrees(r.clone(), &[1]);
        let tgt = BasedFreeModule::with_degrees(r.clone(), &[0]);
        let mut m = SparseMatrix::zero(r.clone(), 1, 1);
        m.set(0, 0, r.var(0));
        let c = ChainComplex::two_term(&ModuleMap::new(src, tgt, m));
        let h0 = homology(&c, 0, Some(0..=4)).unwrap();
        let HomologyDescriptor::Hilbert(h) = &h0.descriptor else {
            panic!()
        };
        assert_eq!(h.get(&0), Some(&1));
        assert_eq!(h.get(&1), None);
        let h1 = homology(&c, 1, Some(0..=4)).unwrap();
        assert!(h1.descriptor.is_trivial());
        // x·1 is a boundary, 1 itself is not
        let one = vec![r.one()];
        let x1 = vec![r.var(0)];
        assert!(!h0.is_boundary(&one).unwrap());
        assert!(h0.is_boundary(&x1).unwrap());
        assert!(h0.annihilated_by(&r.var(0)).unwrap());
        assert!(h0.spanned_by(&[one]).unwrap());
    }

    #[test]
    fn induced_identity_is_iso() {
        let c = two_term(&[&[4]]);
        let h0 = homology(&c, 0, None).unwrap();
        let id = ModuleMap::identity(&c.modules[0]);
        let ind = induced_map(&id, &h0, &h0).unwrap();
        assert!(ind.is_iso(&h0).unwrap());
        assert_eq!(ind.image_order(&h0), Some(BigInt::from(4)));
        // multiplication by 2 is not an isomorphism on Z/4
        let double = ModuleMap::scalar(&c.modules[0], &Ring::Int.from_i64(2));
        let ind2 = induced_map(&double, &h0, &h0).unwrap();
        assert!(!ind2.is_iso(&h0).unwrap());
        assert_eq!(ind2.image_order(&h0), Some(BigInt::from(2)));
    }
}
