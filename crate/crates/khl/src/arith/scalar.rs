use num::{BigInt, BigRational, Zero};
use std::collections::BTreeMap;

/// Exponent vector of a monomial; ordering is lexicographic on exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise quotient, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            e.push(a - b);
        }
        Some(Monomial(e))
    }
}

/// Multivariate polynomial with base-field coefficients (rational or prime
/// field scalars); the map never stores zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MPoly {
    pub terms: BTreeMap<Monomial, Scalar>,
}

impl MPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree if the polynomial is homogeneous; `None` otherwise.
    /// The zero polynomial is homogeneous of every degree.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.total_degree();
            match deg {
                None => deg = Some(d),
                Some(existing) if existing != d => return None,
                _ => {}
            }
        }
        deg.or(Some(0))
    }

    pub fn is_homogeneous_of(&self, d: i64) -> bool {
        self.terms.keys().all(|m| m.total_degree() == d)
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }
}

/// An exact scalar in one of the supported rings. The variant must match the
/// ring the value is used with; `Mod` stores a reduced residue, `Poly` stores
/// base-field coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Int(BigInt),
    Mod(u64),
    Rat(BigRational),
    Poly(MPoly),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(n) => n.is_zero(),
            Scalar::Mod(n) => *n == 0,
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Poly(p) => p.is_zero(),
        }
    }

    /// The underlying integer for `Int` scalars and integral rationals.
    pub fn as_bigint(&self) -> Option<BigInt> {
        match self {
            Scalar::Int(n) => Some(n.clone()),
            Scalar::Rat(q) if q.is_integer() => Some(q.to_integer()),
            Scalar::Mod(n) => Some(BigInt::from(*n)),
            _ => None,
        }
    }
}
