use super::error::ArithError;
use super::scalar::{MPoly, Monomial, Scalar};
use num::{BigInt, BigRational, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Base field of a graded polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rat,
    Fp(u64),
}

impl BaseField {
    pub fn as_ring(&self) -> Ring {
        match self {
            BaseField::Rat => Ring::Rat,
            BaseField::Fp(p) => Ring::IntMod(*p),
        }
    }
}

/// A polynomial ring over a base field in which every variable has internal
/// degree 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    pub base: BaseField,
    pub vars: Vec<String>,
}

/// The supported coefficient rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    /// The ring of integers.
    Int,
    /// Integers modulo m, m >= 2 (a field exactly when m is prime).
    IntMod(u64),
    /// The rationals.
    Rat,
    /// Graded polynomial ring over a base field.
    Poly(PolyRing),
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inv(a: u64, m: u64) -> Option<u64> {
    // extended euclidean algorithm on i128
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

impl Ring {
    pub fn is_field(&self) -> bool {
        match self {
            Ring::Rat => true,
            Ring::IntMod(m) => is_prime(*m),
            _ => false,
        }
    }

    pub fn is_graded(&self) -> bool {
        matches!(self, Ring::Poly(_))
    }

    pub fn num_vars(&self) -> usize {
        match self {
            Ring::Poly(p) => p.vars.len(),
            _ => 0,
        }
    }

    /// The base field of a polynomial ring, or the ring itself.
    pub fn base_ring(&self) -> Ring {
        match self {
            Ring::Poly(p) => p.base.as_ring(),
            other => other.clone(),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Ring::Int => Scalar::Int(BigInt::zero()),
            Ring::IntMod(_) => Scalar::Mod(0),
            Ring::Rat => Scalar::Rat(BigRational::zero()),
            Ring::Poly(_) => Scalar::Poly(MPoly::default()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Ring::Int => Scalar::Int(n.clone()),
            Ring::IntMod(m) => {
                let r = n.mod_floor_u64(*m);
                Scalar::Mod(r)
            }
            Ring::Rat => Scalar::Rat(BigRational::from(n.clone())),
            Ring::Poly(p) => {
                let c = p.base.as_ring().from_bigint(n);
                if c.is_zero() {
                    Scalar::Poly(MPoly::default())
                } else {
                    let mut terms = BTreeMap::new();
                    terms.insert(Monomial::one(p.vars.len()), c);
                    Scalar::Poly(MPoly { terms })
                }
            }
        }
    }

    /// The i-th variable of a polynomial ring as a scalar.
    pub fn var(&self, i: usize) -> Scalar {
        match self {
            Ring::Poly(p) => {
                assert!(i < p.vars.len(), "variable index out of range");
                let mut terms = BTreeMap::new();
                terms.insert(Monomial::var(p.vars.len(), i), p.base.as_ring().one());
                Scalar::Poly(MPoly { terms })
            }
            _ => panic!("var() requires a polynomial ring"),
        }
    }

    /// A single monomial with the given base-field coefficient.
    pub fn monomial(&self, m: Monomial, coeff: Scalar) -> Scalar {
        match self {
            Ring::Poly(p) => {
                assert_eq!(m.0.len(), p.vars.len());
                if coeff.is_zero() {
                    return Scalar::Poly(MPoly::default());
                }
                let mut terms = BTreeMap::new();
                terms.insert(m, coeff);
                Scalar::Poly(MPoly { terms })
            }
            _ => panic!("monomial() requires a polynomial ring"),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Ring::Int, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x + y),
            (Ring::IntMod(m), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 + *y as u128) % *m as u128) as u64)
            }
            (Ring::Rat, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Ring::Poly(p), Scalar::Poly(x), Scalar::Poly(y)) => {
                let base = p.base.as_ring();
                let mut terms = x.terms.clone();
                for (m, c) in &y.terms {
                    let entry = terms.entry(m.clone()).or_insert_with(|| base.zero());
                    *entry = base.add(entry, c);
                    if entry.is_zero() {
                        terms.remove(m);
                    }
                }
                Scalar::Poly(MPoly { terms })
            }
            _ => panic!("scalar/ring variant mismatch in add"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Ring::Int, Scalar::Int(x)) => Scalar::Int(-x),
            (Ring::IntMod(m), Scalar::Mod(x)) => Scalar::Mod(if *x == 0 { 0 } else { m - x }),
            (Ring::Rat, Scalar::Rat(x)) => Scalar::Rat(-x),
            (Ring::Poly(p), Scalar::Poly(x)) => {
                let base = p.base.as_ring();
                let terms = x
                    .terms
                    .iter()
                    .map(|(m, c)| (m.clone(), base.neg(c)))
                    .collect();
                Scalar::Poly(MPoly { terms })
            }
            _ => panic!("scalar/ring variant mismatch in neg"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Ring::Int, Scalar::Int(x), Scalar::Int(y)) => Scalar::Int(x * y),
            (Ring::IntMod(m), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 * *y as u128) % *m as u128) as u64)
            }
            (Ring::Rat, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Ring::Poly(p), Scalar::Poly(x), Scalar::Poly(y)) => {
                let base = p.base.as_ring();
                let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
                for (ma, ca) in &x.terms {
                    for (mb, cb) in &y.terms {
                        let m = ma.mul(mb);
                        let c = base.mul(ca, cb);
                        let entry = terms.entry(m.clone()).or_insert_with(|| base.zero());
                        *entry = base.add(entry, &c);
                        if entry.is_zero() {
                            terms.remove(&m);
                        }
                    }
                }
                Scalar::Poly(MPoly { terms })
            }
            _ => panic!("scalar/ring variant mismatch in mul"),
        }
    }

    pub fn pow(&self, a: &Scalar, k: u32) -> Scalar {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Multiplicative inverse; requires a field.
    pub fn inv(&self, a: &Scalar) -> Result<Scalar, ArithError> {
        if a.is_zero() {
            return Err(ArithError::NotInvertible(self.fmt_scalar(a)));
        }
        match (self, a) {
            (Ring::Rat, Scalar::Rat(x)) => Ok(Scalar::Rat(x.recip())),
            (Ring::IntMod(m), Scalar::Mod(x)) if is_prime(*m) => mod_inv(*x, *m)
                .map(Scalar::Mod)
                .ok_or_else(|| ArithError::NotInvertible(self.fmt_scalar(a))),
            _ => Err(ArithError::NonFieldRing(self.to_string())),
        }
    }

    /// Exact division; for fields this is ordinary division, over the
    /// integers it errors unless the quotient is integral.
    pub fn div_exact(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, ArithError> {
        match self {
            Ring::Int => {
                let (x, y) = match (a, b) {
                    (Scalar::Int(x), Scalar::Int(y)) => (x, y),
                    _ => panic!("scalar/ring variant mismatch in div_exact"),
                };
                if y.is_zero() || !(x % y).is_zero() {
                    return Err(ArithError::NotInvertible(self.fmt_scalar(b)));
                }
                Ok(Scalar::Int(x / y))
            }
            _ => Ok(self.mul(a, &self.inv(b)?)),
        }
    }

    /// Parse an element from a generator string: an integer literal or a
    /// variable name of a polynomial ring.
    pub fn parse_element(&self, text: &str) -> Result<Scalar, ArithError> {
        let t = text.trim();
        if let Ok(n) = t.parse::<i64>() {
            return Ok(self.from_i64(n));
        }
        if let Ring::Poly(p) = self {
            if let Some(i) = p.vars.iter().position(|v| v == t) {
                return Ok(self.var(i));
            }
        }
        Err(ArithError::Parse {
            text: text.to_string(),
            ring: self.to_string(),
        })
    }

    pub fn fmt_scalar(&self, a: &Scalar) -> String {
        match (self, a) {
            (_, Scalar::Int(n)) => n.to_string(),
            (_, Scalar::Mod(n)) => n.to_string(),
            (_, Scalar::Rat(q)) => {
                if q.is_integer() {
                    q.to_integer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            (Ring::Poly(p), Scalar::Poly(mp)) => {
                if mp.terms.is_empty() {
                    return "0".to_string();
                }
                let base = p.base.as_ring();
                let mut out = String::new();
                // highest monomial first reads naturally
                for (i, (m, c)) in mp.terms.iter().rev().enumerate() {
                    let cs = base.fmt_scalar(c);
                    let mono: Vec<String> = m
                        .0
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(v, &e)| {
                            if e == 1 {
                                p.vars[v].clone()
                            } else {
                                format!("{}^{}", p.vars[v], e)
                            }
                        })
                        .collect();
                    let term = if mono.is_empty() {
                        cs.clone()
                    } else if cs == "1" {
                        mono.join("*")
                    } else if cs == "-1" {
                        format!("-{}", mono.join("*"))
                    } else {
                        format!("{}*{}", cs, mono.join("*"))
                    };
                    if i == 0 {
                        out.push_str(&term);
                    } else if let Some(rest) = term.strip_prefix('-') {
                        out.push_str(" - ");
                        out.push_str(rest);
                    } else {
                        out.push_str(" + ");
                        out.push_str(&term);
                    }
                }
                out
            }
            _ => panic!("scalar/ring variant mismatch in fmt_scalar"),
        }
    }

    /// Homogeneous degree of a scalar entry, if defined. Non-polynomial
    /// scalars are constants of degree 0; zero is homogeneous of any degree.
    pub fn homogeneous_degree(&self, a: &Scalar) -> Option<i64> {
        match a {
            Scalar::Poly(p) => p.homogeneous_degree(),
            _ => Some(0),
        }
    }

    pub fn is_homogeneous_of(&self, a: &Scalar, d: i64) -> bool {
        match a {
            Scalar::Poly(p) => p.is_homogeneous_of(d),
            _ => a.is_zero() || d == 0,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Int => write!(f, "Z"),
            Ring::IntMod(m) => write!(f, "Z/{}", m),
            Ring::Rat => write!(f, "Q"),
            Ring::Poly(p) => {
                let base = match &p.base {
                    BaseField::Rat => "Q".to_string(),
                    BaseField::Fp(q) => format!("F{}", q),
                };
                write!(f, "{}[{}]", base, p.vars.join(","))
            }
        }
    }
}

trait ModFloor {
    fn mod_floor_u64(&self, m: u64) -> u64;
}

impl ModFloor for BigInt {
    fn mod_floor_u64(&self, m: u64) -> u64 {
        use num::Integer;
        let r = self.mod_floor(&BigInt::from(m));
        // r is in [0, m)
        let (_, digits) = r.to_u64_digits();
        if digits.is_empty() {
            0
        } else {
            digits[0]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qxy() -> Ring {
        Ring::Poly(PolyRing {
            base: BaseField::Rat,
            vars: vec!["x".into(), "y".into()],
        })
    }

    #[test]
    fn modular_arithmetic_wraps() {
        let r = Ring::IntMod(6);
        let a = r.from_i64(4);
        let b = r.from_i64(5);
        assert_eq!(r.add(&a, &b), Scalar::Mod(3));
        assert_eq!(r.mul(&a, &b), Scalar::Mod(2));
        assert_eq!(r.neg(&a), Scalar::Mod(2));
        assert_eq!(r.from_i64(-1), Scalar::Mod(5));
    }

    #[test]
    fn prime_field_inverse() {
        let r = Ring::IntMod(7);
        let a = r.from_i64(3);
        let inv = r.inv(&a).unwrap();
        assert_eq!(r.mul(&a, &inv), Scalar::Mod(1));
        assert!(Ring::IntMod(6).inv(&Scalar::Mod(5)).is_err());
    }

    #[test]
    fn polynomial_products_collect_terms() {
        let r = qxy();
        let x = r.var(0);
        let y = r.var(1);
        // (x + y)^2 = x^2 + 2xy + y^2
        let s = r.add(&x, &y);
        let sq = r.mul(&s, &s);
        let xy = r.mul(&x, &y);
        let expect = r.add(
            &r.add(&r.mul(&x, &x), &r.mul(&r.from_i64(2), &xy)),
            &r.mul(&y, &y),
        );
        assert_eq!(sq, expect);
        assert!(r.is_homogeneous_of(&sq, 2));
        assert_eq!(r.homogeneous_degree(&r.add(&sq, &x)), None);
        assert_eq!(r.fmt_scalar(&sq), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn parse_generators() {
        assert_eq!(Ring::Int.parse_element("6").unwrap(), Scalar::Int(6.into()));
        let r = qxy();
        assert_eq!(r.parse_element("y").unwrap(), r.var(1));
        assert!(r.parse_element("z").is_err());
    }

    #[test]
    fn field_detection() {
        assert!(Ring::Rat.is_field());
        assert!(Ring::IntMod(5).is_field());
        assert!(!Ring::IntMod(6).is_field());
        assert!(!Ring::Int.is_field());
        assert!(!qxy().is_field());
    }
}
