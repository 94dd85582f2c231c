use super::chain::ChainComplex;
use num::{BigInt, Integer, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Alternating-sum class of a complex: a bare rank, or a Laurent
/// polynomial in one variable T recording generator degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VirtualGradedClass {
    Rank(BigInt),
    Poly(BTreeMap<i64, BigInt>),
}

impl VirtualGradedClass {
    pub fn rank(v: i64) -> Self {
        VirtualGradedClass::Rank(BigInt::from(v))
    }

    pub fn poly<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut m = BTreeMap::new();
        for (t, c) in terms {
            let e = m.entry(t).or_insert_with(BigInt::zero);
            *e += BigInt::from(c);
        }
        m.retain(|_, c: &mut BigInt| !c.is_zero());
        VirtualGradedClass::Poly(m)
    }

    fn as_terms(&self) -> BTreeMap<i64, BigInt> {
        match self {
            VirtualGradedClass::Rank(r) => {
                let mut m = BTreeMap::new();
                if !r.is_zero() {
                    m.insert(0, r.clone());
                }
                m
            }
            VirtualGradedClass::Poly(m) => m.clone(),
        }
    }

    fn rebuild(&self, terms: BTreeMap<i64, BigInt>) -> Self {
        match self {
            VirtualGradedClass::Rank(_) => {
                let r = terms.get(&0).cloned().unwrap_or_else(BigInt::zero);
                VirtualGradedClass::Rank(r)
            }
            VirtualGradedClass::Poly(_) => {
                let mut t = terms;
                t.retain(|_, c| !c.is_zero());
                VirtualGradedClass::Poly(t)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            VirtualGradedClass::Rank(r) => r.is_zero(),
            VirtualGradedClass::Poly(m) => m.values().all(|c| c.is_zero()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut t = self.as_terms();
        for (d, c) in other.as_terms() {
            let e = t.entry(d).or_insert_with(BigInt::zero);
            *e += c;
        }
        self.rebuild(t)
    }

    pub fn neg(&self) -> Self {
        let t = self.as_terms().into_iter().map(|(d, c)| (d, -c)).collect();
        self.rebuild(t)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut t: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (d1, c1) in self.as_terms() {
            for (d2, c2) in other.as_terms() {
                let e = t.entry(d1 + d2).or_insert_with(BigInt::zero);
                *e += &c1 * &c2;
            }
        }
        self.rebuild(t)
    }

    /// Adams operation ψ_k: T^a ↦ T^{ka}.
    pub fn psi(&self, k: i64) -> Self {
        let t = self
            .as_terms()
            .into_iter()
            .map(|(d, c)| (d * k, c))
            .collect();
        self.rebuild(t)
    }

    /// Sum of coefficients (the underlying virtual rank).
    pub fn rank_at_one(&self) -> BigInt {
        self.as_terms().values().sum()
    }
}

impl fmt::Display for VirtualGradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.as_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in &terms {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one();
            match (*d, unit_coeff) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "T")?,
                (1, false) => write!(f, "{mag}*T")?,
                (_, true) => write!(f, "T^{d}")?,
                (_, false) => write!(f, "{mag}*T^{d}")?,
            }
        }
        Ok(())
    }
}

/// Alternating sum Σ (−1)^k [C_k]; graded rings record each generator as
/// T^degree, other rings just count ranks.
pub fn euler_class(c: &ChainComplex) -> VirtualGradedClass {
    if c.ring().is_graded() {
        let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (k, m) in c.modules.iter().enumerate() {
            for &d in &m.degrees {
                let e = terms.entry(d).or_insert_with(BigInt::zero);
                if k % 2 == 0 {
                    *e += 1;
                } else {
                    *e -= 1;
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        VirtualGradedClass::Poly(terms)
    } else {
        let mut r = BigInt::zero();
        for (k, m) in c.modules.iter().enumerate() {
            if k % 2 == 0 {
                r += m.dim() as i64;
            } else {
                r -= m.dim() as i64;
            }
        }
        VirtualGradedClass::Rank(r)
    }
}

/// σ_n of a virtual class, through the Newton recursion
/// n·σ_n = Σ_{j=1}^{n} ψ_j(x)·σ_{n−j}(x) over Laurent polynomials.
pub fn sigma_of_class(n: usize, x: &VirtualGradedClass) -> VirtualGradedClass {
    let one = match x {
        VirtualGradedClass::Rank(_) => VirtualGradedClass::Rank(BigInt::one()),
        VirtualGradedClass::Poly(_) => {
            VirtualGradedClass::Poly([(0, BigInt::one())].into_iter().collect())
        }
    };
    let mut sigmas = vec![one];
    for m in 1..=n {
        let mut acc = x.rebuild(BTreeMap::new());
        for j in 1..=m {
            acc = acc.add(&x.psi(j as i64).mul(&sigmas[m - j]));
        }
        let divisor = BigInt::from(m as i64);
        let t = acc
            .as_terms()
            .into_iter()
            .map(|(d, c)| {
                let (q, r) = c.div_rem(&divisor);
                assert!(r.is_zero(), "Newton recursion stays integral");
                (d, q)
            })
            .collect();
        sigmas.push(x.rebuild(t));
    }
    sigmas.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{BaseField, PolyRing, Ring};
    use crate::module::BasedFreeModule;

    fn graded_ring() -> Ring {
        Ring::Poly(PolyRing {
            base: BaseField::Rat,
            vars: vec!["x".into(), "y".into()],
        })
    }

    #[test]
    fn sigma_oracles() {
        let c = VirtualGradedClass::poly([(0, 1), (1, -1)]);
        assert_eq!(sigma_of_class(2, &c), VirtualGradedClass::poly([(0, 1), (1, -1)]));
        let p = VirtualGradedClass::poly([(0, 1), (1, 1)]);
        assert_eq!(
            sigma_of_class(2, &p),
            VirtualGradedClass::poly([(0, 1), (1, 1), (2, 1)])
        );
        let line = VirtualGradedClass::poly([(2, 1)]);
        assert_eq!(sigma_of_class(3, &line), VirtualGradedClass::poly([(6, 1)]));
        // rank classes: σ_2(r) = C(r+1, 2)
        assert_eq!(
            sigma_of_class(2, &VirtualGradedClass::rank(3)),
            VirtualGradedClass::rank(6)
        );
        assert_eq!(
            sigma_of_class(2, &VirtualGradedClass::rank(-1)),
            VirtualGradedClass::rank(0)
        );
    }

    #[test]
    fn euler_of_koszul_shape() {
        // generator degrees 0 | 1,1 | 2 with zero differentials
        let r = graded_ring();
        let c = crate::complex::ChainComplex::new(
            vec![
                BasedFreeModule::with_degrees(r.clone(), &[0]),
                BasedFreeModule::with_degrees(r.clone(), &[1, 1]),
                BasedFreeModule::with_degrees(r.clone(), &[2]),
            ],
            vec![
                crate::module::ModuleMap::zero(
                    &BasedFreeModule::with_degrees(r.clone(), &[1, 1]),
                    &BasedFreeModule::with_degrees(r.clone(), &[0]),
                ),
                crate::module::ModuleMap::zero(
                    &BasedFreeModule::with_degrees(r.clone(), &[2]),
                    &BasedFreeModule::with_degrees(r.clone(), &[1, 1]),
                ),
            ],
        )
        .unwrap();
        let e = euler_class(&c);
        assert_eq!(e, VirtualGradedClass::poly([(0, 1), (1, -2), (2, 1)]));
        assert_eq!(e.to_string(), "1 - 2*T + T^2");
        assert_eq!(euler_class(&c.shift(1)), e.neg());
        assert_eq!(e.rank_at_one(), BigInt::zero());
    }

    #[test]
    fn euler_rank_case() {
        let m = crate::arith::SparseMatrix::from_i64_rows(Ring::Int, &[&[2]]);
        let f = crate::module::ModuleMap::new(
            BasedFreeModule::standard(Ring::Int, 1),
            BasedFreeModule::standard(Ring::Int, 1),
            m,
        );
        let c = crate::complex::ChainComplex::two_term(&f);
        assert_eq!(euler_class(&c), VirtualGradedClass::rank(0));
        assert_eq!(euler_class(&c).to_string(), "0");
    }
}
