//! Exact λ-ring engine on split line classes: polynomial classes in line
//! variables u₁..u_d (a class of finite λ-degree) and t₁..t_N (an arbitrary
//! class), the operations λ_k / σ_k / ψ_n / s_k^n / θ^n built from truncated
//! generating series, relative operations μ(C,x) defined by exact division
//! by λ₋₁(C), and a catalogue of verified operational identities.

use num::{BigInt, One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LambdaError {
    #[error("element is not in split form: {0}")]
    NotSplitForm(String),
    #[error("exact division failed: {0}")]
    NotDivisible(String),
    #[error("unknown identity: {0}")]
    UnknownIdentity(String),
}

/// Ambient variable context: `num_u` line variables for the finite-degree
/// class and `num_t` line variables for the arbitrary class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LineRing {
    pub num_u: usize,
    pub num_t: usize,
}

/// An integer polynomial in the line variables; exponents are stored as one
/// vector per monomial, u-variables first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaElement {
    pub ring: LineRing,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl LineRing {
    pub fn new(num_u: usize, num_t: usize) -> Self {
        LineRing { num_u, num_t }
    }

    fn vars(&self) -> usize {
        self.num_u + self.num_t
    }

    pub fn zero(&self) -> LambdaElement {
        LambdaElement {
            ring: *self,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: i64) -> LambdaElement {
        let mut e = self.zero();
        e.add_term(&vec![0; self.vars()], &BigInt::from(c));
        e
    }

    pub fn one(&self) -> LambdaElement {
        self.constant(1)
    }

    pub fn u(&self, i: usize) -> LambdaElement {
        assert!(i < self.num_u, "u index in range");
        let mut expo = vec![0; self.vars()];
        expo[i] = 1;
        let mut e = self.zero();
        e.add_term(&expo, &BigInt::one());
        e
    }

    pub fn t(&self, j: usize) -> LambdaElement {
        assert!(j < self.num_t, "t index in range");
        let mut expo = vec![0; self.vars()];
        expo[self.num_u + j] = 1;
        let mut e = self.zero();
        e.add_term(&expo, &BigInt::one());
        e
    }

    /// The generic finite-degree class u₁ + … + u_d.
    pub fn u_sum(&self) -> LambdaElement {
        (0..self.num_u).fold(self.zero(), |acc, i| acc.add(&self.u(i)))
    }

    /// A split class summing a range of t-lines.
    pub fn t_sum(&self, r: Range<usize>) -> LambdaElement {
        r.fold(self.zero(), |acc, j| acc.add(&self.t(j)))
    }
}

impl LambdaElement {
    fn add_term(&mut self, expo: &[u32], c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(expo.to_vec()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(expo);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &LambdaElement) -> LambdaElement {
        assert_eq!(self.ring, other.ring, "line ring mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn neg(&self) -> LambdaElement {
        LambdaElement {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &LambdaElement) -> LambdaElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: i64) -> LambdaElement {
        let big = BigInt::from(c);
        let mut out = self.ring.zero();
        for (m, v) in &self.terms {
            out.add_term(m, &(v * &big));
        }
        out
    }

    pub fn mul(&self, other: &LambdaElement) -> LambdaElement {
        assert_eq!(self.ring, other.ring, "line ring mismatch");
        let mut out = self.ring.zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let expo: Vec<u32> = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(&expo, &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> LambdaElement {
        let mut out = self.ring.one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Substitute 1 for the given variable.
    pub fn substitute_one(&self, var: usize) -> LambdaElement {
        let mut out = self.ring.zero();
        for (m, c) in &self.terms {
            let mut expo = m.clone();
            expo[var] = 0;
            out.add_term(&expo, c);
        }
        out
    }

    /// Swap two variables.
    pub fn swap_vars(&self, a: usize, b: usize) -> LambdaElement {
        let mut out = self.ring.zero();
        for (m, c) in &self.terms {
            let mut expo = m.clone();
            expo.swap(a, b);
            out.add_term(&expo, c);
        }
        out
    }

    /// Evaluate at the given integer values, one per variable.
    pub fn eval_integers(&self, values: &[BigInt]) -> BigInt {
        assert_eq!(values.len(), self.ring.vars());
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, &e) in values.iter().zip(m) {
                for _ in 0..e {
                    term *= v;
                }
            }
            acc += term;
        }
        acc
    }

    /// Symmetric separately under permutations of the u's and of the t's?
    pub fn is_symmetric(&self) -> bool {
        let u = self.ring.num_u;
        let swaps = (1..u)
            .map(|i| (i - 1, i))
            .chain((1..self.ring.num_t).map(|j| (u + j - 1, u + j)));
        for (a, b) in swaps {
            if self.swap_vars(a, b) != *self {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for LambdaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    let name = if v < self.ring.num_u {
                        format!("u{}", v + 1)
                    } else {
                        format!("t{}", v - self.ring.num_u + 1)
                    };
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let body = if mono.is_empty() {
                c.magnitude().to_string()
            } else if c.magnitude().is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", c.magnitude(), mono.join("*"))
            };
            if first {
                if c.is_negative() {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

/// Generalized binomial coefficient C(c, k) for any integer c.
fn gbinom(c: &BigInt, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= c - BigInt::from(i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// The lines of a split element: monomials with positive multiplicities.
fn split_lines(e: &LambdaElement) -> Result<Vec<(Vec<u32>, usize)>, LambdaError> {
    let mut out = Vec::with_capacity(e.terms.len());
    for (m, c) in &e.terms {
        if c.is_negative() {
            return Err(LambdaError::NotSplitForm(format!(
                "negative line multiplicity {c} in {e}"
            )));
        }
        let mult = c
            .to_usize()
            .ok_or_else(|| LambdaError::NotSplitForm(format!("oversized multiplicity {c}")))?;
        out.push((m.clone(), mult));
    }
    Ok(out)
}

/// Total multiplicity of a split element — its λ-degree.
fn split_degree(e: &LambdaElement) -> Result<usize, LambdaError> {
    Ok(split_lines(e)?.iter().map(|(_, c)| c).sum())
}

fn mul_series(a: &[LambdaElement], b: &[LambdaElement], ring: &LineRing) -> Vec<LambdaElement> {
    let max = a.len() - 1;
    let mut out = vec![ring.zero(); max + 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(max + 1 - i) {
            if bj.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&ai.mul(bj));
        }
    }
    out
}

/// λ_0..λ_max of an arbitrary integer combination of lines, via the
/// series Π (1 + m·s)^{c_m} truncated at s^max. Negative multiplicities
/// expand through the generalized binomial series.
fn lambda_list(e: &LambdaElement, max: usize) -> Vec<LambdaElement> {
    let ring = e.ring;
    let mut series = vec![ring.zero(); max + 1];
    series[0] = ring.one();
    for (m, c) in &e.terms {
        let mut factor = Vec::with_capacity(max + 1);
        let mut power = ring.one();
        for k in 0..=max {
            let coeff = gbinom(c, k);
            let mut term = ring.zero();
            for (expo, v) in &power.terms {
                term.add_term(expo, &(v * &coeff));
            }
            factor.push(term);
            if k < max {
                let mut line = ring.zero();
                line.add_term(m, &BigInt::one());
                power = power.mul(&line);
            }
        }
        series = mul_series(&series, &factor, &ring);
    }
    series
}

/// σ_0..σ_max by the alternating recursion against λ_1..λ_max.
fn sigma_list(e: &LambdaElement, max: usize) -> Vec<LambdaElement> {
    let ring = e.ring;
    let lambdas = lambda_list(e, max);
    let mut sigmas = vec![ring.one()];
    for n in 1..=max {
        let mut acc = ring.zero();
        for i in 1..=n {
            let prod = lambdas[i].mul(&sigmas[n - i]);
            acc = if i % 2 == 1 {
                acc.add(&prod)
            } else {
                acc.sub(&prod)
            };
        }
        sigmas.push(acc);
    }
    sigmas
}

/// ψ_1..ψ_max by the Newton recursion against λ_1..λ_max.
fn adams_list(e: &LambdaElement, max: usize) -> Vec<LambdaElement> {
    let ring = e.ring;
    let lambdas = lambda_list(e, max);
    let mut psis: Vec<LambdaElement> = vec![ring.zero()];
    for n in 1..=max {
        let mut acc = ring.zero();
        for i in 1..n {
            let prod = lambdas[i].mul(&psis[n - i]);
            acc = if i % 2 == 1 {
                acc.add(&prod)
            } else {
                acc.sub(&prod)
            };
        }
        let last = lambdas[n].scale(n as i64);
        acc = if n % 2 == 1 {
            acc.add(&last)
        } else {
            acc.sub(&last)
        };
        psis.push(acc);
    }
    psis
}

/// k-th elementary symmetric function of the constituent lines. The input
/// must be in split form (nonnegative multiplicities).
pub fn lambda_k(k: usize, e: &LambdaElement) -> Result<LambdaElement, LambdaError> {
    split_lines(e)?;
    Ok(lambda_list(e, k).swap_remove(k))
}

/// k-th complete symmetric operation, defined for arbitrary (virtual)
/// integer combinations of lines.
pub fn sigma_k(k: usize, e: &LambdaElement) -> LambdaElement {
    sigma_list(e, k).swap_remove(k)
}

/// n-th power-sum operation (n ≥ 1), defined for arbitrary combinations.
pub fn adams_n(n: usize, e: &LambdaElement) -> LambdaElement {
    assert!(n >= 1, "power-sum index starts at 1");
    adams_list(e, n).swap_remove(n)
}

/// Hook-shape operation Σ_{i=k+1}^{n} (−1)^{i−k−1} λ_i σ_{n−i}.
pub fn schur_op(n: usize, k: usize, e: &LambdaElement) -> LambdaElement {
    assert!(k < n, "hook shape needs k < n");
    let lambdas = lambda_list(e, n);
    let sigmas = sigma_list(e, n);
    let mut acc = e.ring.zero();
    for i in (k + 1)..=n {
        let prod = lambdas[i].mul(&sigmas[n - i]);
        acc = if (i - k - 1) % 2 == 0 {
            acc.add(&prod)
        } else {
            acc.sub(&prod)
        };
    }
    acc
}

/// Alternating sum λ₀ − λ₁ + λ₂ − … of a split element, which factors as
/// Π (1 − line) over its lines.
pub fn lambda_minus_one(c: &LambdaElement) -> Result<LambdaElement, LambdaError> {
    let deg = split_degree(c)?;
    let lambdas = lambda_list(c, deg);
    let mut acc = c.ring.zero();
    for (i, l) in lambdas.iter().enumerate() {
        acc = if i % 2 == 0 { acc.add(l) } else { acc.sub(l) };
    }
    Ok(acc)
}

/// n-th geometric element: the product over the lines m of C (with
/// multiplicity) of 1 + m + … + m^{n−1}.
pub fn bott(n: usize, c: &LambdaElement) -> Result<LambdaElement, LambdaError> {
    assert!(n >= 1);
    let ring = c.ring;
    let mut out = ring.one();
    for (m, mult) in split_lines(c)? {
        let mut geo = ring.zero();
        let mut line = ring.zero();
        line.add_term(&m, &BigInt::one());
        let mut power = ring.one();
        for _ in 0..n {
            geo = geo.add(&power);
            power = power.mul(&line);
        }
        for _ in 0..mult {
            out = out.mul(&geo);
        }
    }
    Ok(out)
}

/// A formal polynomial in the operation symbols λ₁, λ₂, …: a sum of
/// integer multiples of products of symbols. Public constructors never
/// produce a constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperationExpr {
    /// (coefficient, multiset of λ-indices), merged and sorted.
    terms: Vec<(BigInt, Vec<usize>)>,
}

impl OperationExpr {
    fn normalize(mut terms: Vec<(BigInt, Vec<usize>)>) -> Self {
        let mut merged: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
        for (c, mut idx) in terms.drain(..) {
            idx.sort_unstable();
            let e = merged.entry(idx).or_insert_with(BigInt::zero);
            *e += c;
        }
        OperationExpr {
            terms: merged
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(idx, c)| (c, idx))
                .collect(),
        }
    }

    fn constant_one() -> Self {
        OperationExpr {
            terms: vec![(BigInt::one(), Vec::new())],
        }
    }

    /// The single symbol λ_i (i ≥ 1).
    pub fn lambda(i: usize) -> Self {
        assert!(i >= 1, "operation symbols start at λ₁");
        OperationExpr {
            terms: vec![(BigInt::one(), vec![i])],
        }
    }

    /// σ_n (n ≥ 1) expanded as a polynomial in the λ symbols via the
    /// alternating recursion.
    pub fn sigma(n: usize) -> Self {
        assert!(n >= 1);
        let mut sigmas = vec![Self::constant_one()];
        for m in 1..=n {
            let mut acc = OperationExpr { terms: Vec::new() };
            for i in 1..=m {
                let prod = Self::lambda(i).mul(&sigmas[m - i]);
                acc = if i % 2 == 1 {
                    acc.add(&prod)
                } else {
                    acc.sub(&prod)
                };
            }
            sigmas.push(acc);
        }
        sigmas.swap_remove(n)
    }

    /// ψ_n (n ≥ 1) expanded as the n-th Newton polynomial in the λ symbols.
    pub fn adams(n: usize) -> Self {
        assert!(n >= 1);
        let mut psis: Vec<OperationExpr> = vec![OperationExpr { terms: Vec::new() }];
        for m in 1..=n {
            let mut acc = OperationExpr { terms: Vec::new() };
            for i in 1..m {
                let prod = Self::lambda(i).mul(&psis[m - i]);
                acc = if i % 2 == 1 {
                    acc.add(&prod)
                } else {
                    acc.sub(&prod)
                };
            }
            let last = OperationExpr {
                terms: vec![(BigInt::from(m), vec![m])],
            };
            acc = if m % 2 == 1 {
                acc.add(&last)
            } else {
                acc.sub(&last)
            };
            psis.push(acc);
        }
        psis.swap_remove(n)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::normalize(terms)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|(c, i)| (-c, i.clone())));
        Self::normalize(terms)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = Vec::new();
        for (c1, i1) in &self.terms {
            for (c2, i2) in &other.terms {
                let mut idx = i1.clone();
                idx.extend(i2.iter().copied());
                terms.push((c1 * c2, idx));
            }
        }
        Self::normalize(terms)
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.iter().any(|(_, idx)| idx.is_empty())
    }

    /// Evaluate the expression on an element, using the series λ-structure
    /// (valid for virtual combinations of lines).
    pub fn eval(&self, e: &LambdaElement) -> LambdaElement {
        let max = self
            .terms
            .iter()
            .flat_map(|(_, idx)| idx.iter().copied())
            .max()
            .unwrap_or(0);
        let lambdas = lambda_list(e, max);
        let mut acc = e.ring.zero();
        for (c, idx) in &self.terms {
            let mut term = e.ring.one();
            for &i in idx {
                term = term.mul(&lambdas[i]);
            }
            let mut scaled = e.ring.zero();
            for (m, v) in &term.terms {
                scaled.add_term(m, &(v * c));
            }
            acc = acc.add(&scaled);
        }
        acc
    }
}

/// Exact division by (1 − m) for a line monomial m of positive degree:
/// repeatedly peels the minimal remaining term; the quotient's terms are
/// bounded by the dividend's degree, so exceeding it proves
/// non-divisibility.
fn divide_by_one_minus(p: &LambdaElement, m: &[u32], ring: &LineRing) -> Result<LambdaElement, LambdaError> {
    if m.iter().all(|&e| e == 0) {
        return Err(LambdaError::NotDivisible(
            "division by 1 − 1 = 0 is undefined".into(),
        ));
    }
    let bound = p.total_degree();
    let mut q = ring.zero();
    let mut r = p.clone();
    while !r.is_zero() {
        let (t, c) = r
            .terms
            .iter()
            .min_by_key(|(expo, _)| (expo.iter().sum::<u32>(), (*expo).clone()))
            .map(|(expo, c)| (expo.clone(), c.clone()))
            .expect("nonzero remainder has terms");
        if t.iter().sum::<u32>() > bound {
            return Err(LambdaError::NotDivisible(format!(
                "{p} is not divisible by the chosen line factor"
            )));
        }
        q.add_term(&t, &c);
        r.add_term(&t, &(-&c));
        let shifted: Vec<u32> = t.iter().zip(m).map(|(a, b)| a + b).collect();
        r.add_term(&shifted, &c);
    }
    Ok(q)
}

/// The relative operation μ(C, x): the unique element with
/// μ(x·λ₋₁(C)) = μ(C,x)·λ₋₁(C), computed by exact division line by line.
pub fn relative_op(
    mu: &OperationExpr,
    c: &LambdaElement,
    x: &LambdaElement,
) -> Result<LambdaElement, LambdaError> {
    assert!(
        !mu.has_constant_term(),
        "relative operations need expressions without constant term"
    );
    let ring = c.ring;
    let lminus = lambda_minus_one(c)?;
    let y = x.mul(&lminus);
    let mut out = mu.eval(&y);
    for (m, mult) in split_lines(c)? {
        for _ in 0..mult {
            out = divide_by_one_minus(&out, &m, &ring)?;
        }
    }
    Ok(out)
}

/// One verified instance of a catalogue identity.
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: String,
    pub params: String,
    pub pass: bool,
    /// On failure: the difference polynomial and a witness substitution.
    pub detail: String,
}

fn check(name: &str, params: String, lhs: &LambdaElement, rhs: &LambdaElement) -> IdentityCheck {
    let pass = lhs == rhs;
    let detail = if pass {
        String::new()
    } else {
        let diff = lhs.sub(rhs);
        let values: Vec<BigInt> = (0..diff.ring.vars())
            .map(|v| BigInt::from(v as i64 + 2))
            .collect();
        format!(
            "difference {diff}; at u_i,t_j = 2,3,… lhs−rhs evaluates to {}",
            diff.eval_integers(&values)
        )
    };
    IdentityCheck {
        name: name.to_string(),
        params,
        pass,
        detail,
    }
}

/// μ₁μ₂ relative to C factors as μ₁(C,x)·μ₂(C,x)·λ₋₁(C).
fn product_rule() -> Result<Vec<IdentityCheck>, LambdaError> {
    let mut out = Vec::new();
    let pairs: [(usize, usize); 3] = [(1, 1), (1, 2), (2, 2)];
    for d in 1..=3usize {
        let ring = LineRing::new(d, 3);
        let c = ring.u_sum();
        let x = ring.t_sum(0..3);
        let lminus = lambda_minus_one(&c)?;
        for (a, b) in pairs {
            let mu1 = OperationExpr::lambda(a);
            let mu2 = OperationExpr::lambda(b);
            let lhs = relative_op(&mu1.mul(&mu2), &c, &x)?;
            let rhs = relative_op(&mu1, &c, &x)?
                .mul(&relative_op(&mu2, &c, &x)?)
                .mul(&lminus);
            out.push(check(
                "product_rule",
                format!("d={d}, mu=l{a}*l{b}"),
                &lhs,
                &rhs,
            ));
        }
    }
    Ok(out)
}

/// σ_n(C, x+y) expands through relative σ's of x and y with one λ₋₁(C)
/// correction per mixed term.
fn sum_rule() -> Result<Vec<IdentityCheck>, LambdaError> {
    let mut out = Vec::new();
    for d in 1..=3usize {
        let ring = LineRing::new(d, 4);
        let c = ring.u_sum();
        let x = ring.t_sum(0..2);
        let y = ring.t_sum(2..4);
        let xy = x.add(&y);
        let lminus = lambda_minus_one(&c)?;
        for n in 1..=4usize {
            let lhs = relative_op(&OperationExpr::sigma(n), &c, &xy)?;
            let mut rhs = relative_op(&OperationExpr::sigma(n), &c, &x)?
                .add(&relative_op(&OperationExpr::sigma(n), &c, &y)?);
            for i in 1..n {
                let left = relative_op(&OperationExpr::sigma(i), &c, &x)?;
                let right = relative_op(&OperationExpr::sigma(n - i), &c, &y)?;
                rhs = rhs.add(&left.mul(&right).mul(&lminus));
            }
            out.push(check("sum_rule", format!("d={d}, n={n}"), &lhs, &rhs));
        }
    }
    Ok(out)
}

/// ψ_n(C,x) = θ^n(C)·ψ_n(x).
fn adams_factorization() -> Result<Vec<IdentityCheck>, LambdaError> {
    let mut out = Vec::new();
    for d in 1..=3usize {
        let ring = LineRing::new(d, 3);
        let c = ring.u_sum();
        let x = ring.t_sum(0..3);
        for n in 1..=4usize {
            let lhs = relative_op(&OperationExpr::adams(n), &c, &x)?;
            let rhs = bott(n, &c)?.mul(&adams_n(n, &x));
            out.push(check(
                "adams_factorization",
                format!("d={d}, n={n}"),
                &lhs,
                &rhs,
            ));
        }
    }
    Ok(out)
}

/// For a single line C: σ_n(C,x) = Σ_k (−1)^k s_k^n(x)·C^k, and the
/// trivial-line substitution gives ψ_n(x).
fn degree_one_expansion() -> Result<Vec<IdentityCheck>, LambdaError> {
    let mut out = Vec::new();
    let ring = LineRing::new(1, 4);
    let c = ring.u(0);
    let x = ring.t_sum(0..4);
    for n in 1..=4usize {
        let lhs = relative_op(&OperationExpr::sigma(n), &c, &x)?;
        let mut rhs = ring.zero();
        for k in 0..n {
            let term = schur_op(n, k, &x).mul(&c.pow(k));
            rhs = if k % 2 == 0 {
                rhs.add(&term)
            } else {
                rhs.sub(&term)
            };
        }
        out.push(check("degree_one_expansion", format!("n={n}"), &lhs, &rhs));
        let trivial = lhs.substitute_one(0);
        out.push(check(
            "degree_one_expansion",
            format!("n={n}, trivial line"),
            &trivial,
            &adams_n(n, &x),
        ));
    }
    Ok(out)
}

/// σ₂(C,x) = σ₂(x)λ₀(C) − λ₂(x)λ₁(C) + σ₂(x)λ₂(C) − λ₂(x)λ₃(C) + …
fn sigma2_alternating() -> Result<Vec<IdentityCheck>, LambdaError> {
    let mut out = Vec::new();
    for d in 1..=3usize {
        let ring = LineRing::new(d, 3);
        let c = ring.u_sum();
        let x = ring.t_sum(0..3);
        let lhs = relative_op(&OperationExpr::sigma(2), &c, &x)?;
        let s2 = sigma_k(2, &x);
        let l2 = lambda_k(2, &x)?;
        let lambdas_c = lambda_list(&c, d);
        let mut rhs = ring.zero();
        for (j, lc) in lambdas_c.iter().enumerate() {
            let factor = if j % 2 == 0 { &s2 } else { &l2 };
            let term = factor.mul(lc);
            rhs = if j % 2 == 0 {
                rhs.add(&term)
            } else {
                rhs.sub(&term)
            };
        }
        out.push(check("sigma2_alternating", format!("d={d}"), &lhs, &rhs));
    }
    Ok(out)
}

/// For C of λ-degree 2: σ₃(C,x) = σ₃(x) − s₁³(x)C + (σ₂(x)·x·λ₂(C) +
/// λ₃(x)σ₂(C)) − s₁³(x)Cλ₂(C) + σ₃(x)λ₂(C)².
fn two_line_cubic() -> Result<Vec<IdentityCheck>, LambdaError> {
    let ring = LineRing::new(2, 3);
    let c = ring.u_sum();
    let x = ring.t_sum(0..3);
    let lhs = relative_op(&OperationExpr::sigma(3), &c, &x)?;
    let s13 = schur_op(3, 1, &x);
    let l2c = lambda_k(2, &c)?;
    let rhs = sigma_k(3, &x)
        .sub(&s13.mul(&c))
        .add(&sigma_k(2, &x).mul(&x).mul(&l2c))
        .add(&lambda_k(3, &x)?.mul(&sigma_k(2, &c)))
        .sub(&s13.mul(&c).mul(&l2c))
        .add(&sigma_k(3, &x).mul(&l2c.pow(2)));
    Ok(vec![check("two_line_cubic", "d=2, n=3".to_string(), &lhs, &rhs)])
}

pub fn identity_names() -> &'static [&'static str] {
    &[
        "product_rule",
        "sum_rule",
        "adams_factorization",
        "degree_one_expansion",
        "sigma2_alternating",
        "two_line_cubic",
    ]
}

/// Run one named identity over its parameter grid.
pub fn verify_identity(name: &str) -> Result<Vec<IdentityCheck>, LambdaError> {
    match name {
        "product_rule" => product_rule(),
        "sum_rule" => sum_rule(),
        "adams_factorization" => adams_factorization(),
        "degree_one_expansion" => degree_one_expansion(),
        "sigma2_alternating" => sigma2_alternating(),
        "two_line_cubic" => two_line_cubic(),
        other => Err(LambdaError::UnknownIdentity(other.to_string())),
    }
}

/// Run the full identity catalogue in order.
pub fn verify_catalogue() -> Result<Vec<IdentityCheck>, LambdaError> {
    let mut out = Vec::new();
    for name in identity_names() {
        out.extend(verify_identity(name)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_symmetric_basics() {
        let ring = LineRing::new(3, 2);
        let x = ring.t_sum(0..2);
        assert_eq!(lambda_k(1, &x).unwrap(), x);
        assert_eq!(lambda_k(2, &x).unwrap(), ring.t(0).mul(&ring.t(1)));
        let c = ring.u_sum();
        let e2 = ring
            .u(0)
            .mul(&ring.u(1))
            .add(&ring.u(0).mul(&ring.u(2)))
            .add(&ring.u(1).mul(&ring.u(2)));
        assert_eq!(lambda_k(2, &c).unwrap(), e2);
        // multiplicity two: λ₂(2·t₁) = t₁²
        let double = ring.t(0).scale(2);
        assert_eq!(lambda_k(2, &double).unwrap(), ring.t(0).pow(2));
        // split-form guard
        let virt = ring.t(0).sub(&ring.t(1));
        assert!(matches!(
            lambda_k(1, &virt),
            Err(LambdaError::NotSplitForm(_))
        ));
    }

    #[test]
    fn complete_symmetric_and_power_sums() {
        let ring = LineRing::new(1, 2);
        let x = ring.t_sum(0..2);
        assert_eq!(sigma_k(1, &x), x);
        let h2 = ring
            .t(0)
            .pow(2)
            .add(&ring.t(0).mul(&ring.t(1)))
            .add(&ring.t(1).pow(2));
        assert_eq!(sigma_k(2, &x), h2);
        assert_eq!(adams_n(1, &x), x);
        let p3 = ring.t(0).pow(3).add(&ring.t(1).pow(3));
        assert_eq!(adams_n(3, &x), p3);
        // ψ₂ = σ₂ − λ₂
        assert_eq!(
            adams_n(2, &x),
            sigma_k(2, &x).sub(&lambda_k(2, &x).unwrap())
        );
        // power sums are additive on any combination, including virtual ones
        let virt = ring.t(0).sub(&ring.t(1));
        assert_eq!(
            adams_n(3, &virt),
            ring.t(0).pow(3).sub(&ring.t(1).pow(3))
        );
    }

    #[test]
    fn newton_matches_direct_power_sum() {
        let ring = LineRing::new(0, 4);
        let x = ring.t_sum(0..4);
        for n in 1..=4 {
            let direct = (0..4).fold(ring.zero(), |acc, j| acc.add(&ring.t(j).pow(n)));
            assert_eq!(adams_n(n, &x), direct, "n = {n}");
        }
    }

    #[test]
    fn generating_series_inverse() {
        // Σ_{i+j=k} (−1)^j σ_i λ_j = 0 for k ≥ 1, also on virtual input
        let ring = LineRing::new(2, 2);
        let split = ring.t_sum(0..2);
        let virt = ring.u_sum().sub(&ring.t(1)).add(&ring.u(0).mul(&ring.t(0)));
        for e in [&split, &virt] {
            let max = 5;
            let lambdas = lambda_list(e, max);
            let sigmas = sigma_list(e, max);
            for k in 1..=max {
                let mut acc = ring.zero();
                for j in 0..=k {
                    let term = sigmas[k - j].mul(&lambdas[j]);
                    acc = if j % 2 == 0 {
                        acc.add(&term)
                    } else {
                        acc.sub(&term)
                    };
                }
                assert!(acc.is_zero(), "k = {k}");
            }
        }
    }

    #[test]
    fn adams_is_a_ring_homomorphism() {
        let ring = LineRing::new(0, 4);
        let x = ring.t_sum(0..2);
        let y = ring.t_sum(2..4);
        for n in 1..=3 {
            assert_eq!(
                adams_n(n, &x.add(&y)),
                adams_n(n, &x).add(&adams_n(n, &y))
            );
            assert_eq!(
                adams_n(n, &x.mul(&y)),
                adams_n(n, &x).mul(&adams_n(n, &y))
            );
        }
    }

    #[test]
    fn sigma_of_negative_is_signed_lambda() {
        let ring = LineRing::new(0, 3);
        let x = ring.t_sum(0..3);
        for i in 1..=3 {
            let lhs = sigma_k(i, &x.neg());
            let rhs = lambda_k(i, &x).unwrap();
            let rhs = if i % 2 == 1 { rhs.neg() } else { rhs };
            assert_eq!(lhs, rhs, "i = {i}");
        }
    }

    #[test]
    fn hook_operations() {
        let ring = LineRing::new(0, 4);
        let x = ring.t_sum(0..4);
        for n in 2..=4 {
            // single-term tail
            assert_eq!(schur_op(n, n - 1, &x), lambda_k(n, &x).unwrap());
            // alternating sum over hooks collapses to the power sum
            let mut acc = ring.zero();
            for k in 0..n {
                let term = schur_op(n, k, &x);
                acc = if k % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            assert_eq!(acc, adams_n(n, &x), "n = {n}");
        }
        // dimension specialization: the hook (2,1) on two lines counts 2
        let two = LineRing::new(0, 2);
        let s13 = schur_op(3, 1, &two.t_sum(0..2));
        let ones = vec![BigInt::one(); 2];
        assert_eq!(s13.eval_integers(&ones), BigInt::from(2));
    }

    #[test]
    fn geometric_elements() {
        let ring = LineRing::new(2, 0);
        let line = ring.u(0);
        // 1 + u + u² for n = 3
        let expect = ring.one().add(&line).add(&line.pow(2));
        assert_eq!(bott(3, &line).unwrap(), expect);
        // degree one: θ²(C) = 1 + C
        assert_eq!(bott(2, &line).unwrap(), ring.one().add(&line));
        // multiplicative over sums of lines
        let c = ring.u_sum();
        let product = bott(3, &ring.u(0)).unwrap().mul(&bott(3, &ring.u(1)).unwrap());
        assert_eq!(bott(3, &c).unwrap(), product);
        assert!(matches!(
            bott(2, &ring.u(0).neg()),
            Err(LambdaError::NotSplitForm(_))
        ));
    }

    #[test]
    fn exact_division_by_line_factors() {
        let ring = LineRing::new(2, 1);
        let p = ring.one().add(&ring.t(0)).mul(&ring.u(1).neg().add(&ring.one()));
        let q = divide_by_one_minus(&p, &{
            let mut m = vec![0; 3];
            m[1] = 1;
            m
        }, &ring)
        .unwrap();
        assert_eq!(q, ring.one().add(&ring.t(0)));
        // u₁ alone is not divisible by 1 − u₁
        let err = divide_by_one_minus(&ring.u(0), &{
            let mut m = vec![0; 3];
            m[0] = 1;
            m
        }, &ring);
        assert!(matches!(err, Err(LambdaError::NotDivisible(_))));
        // the trivial line is rejected
        let err = divide_by_one_minus(&ring.one(), &vec![0; 3], &ring);
        assert!(matches!(err, Err(LambdaError::NotDivisible(_))));
    }

    #[test]
    fn relative_operations_are_symmetric() {
        let ring = LineRing::new(2, 3);
        let c = ring.u_sum();
        let x = ring.t_sum(0..3);
        let s3 = relative_op(&OperationExpr::sigma(3), &c, &x).unwrap();
        assert!(s3.is_symmetric());
        assert!(!s3.is_zero());
    }

    #[test]
    fn operation_expressions() {
        // σ₂ = λ₁² − λ₂... as symbols: σ₂ = λ₁σ₁ − λ₂σ₀ = λ₁λ₁ − λ₂
        let s2 = OperationExpr::sigma(2);
        let expect = OperationExpr::lambda(1)
            .mul(&OperationExpr::lambda(1))
            .sub(&OperationExpr::lambda(2));
        assert_eq!(s2, expect);
        // ψ₂ = λ₁² − 2λ₂
        let p2 = OperationExpr::adams(2);
        let expect = OperationExpr::lambda(1)
            .mul(&OperationExpr::lambda(1))
            .sub(&OperationExpr::lambda(2))
            .sub(&OperationExpr::lambda(2));
        assert_eq!(p2, expect);
        assert!(!p2.has_constant_term());
        // evaluation agrees with the direct operations
        let ring = LineRing::new(0, 3);
        let x = ring.t_sum(0..3);
        assert_eq!(OperationExpr::sigma(3).eval(&x), sigma_k(3, &x));
        assert_eq!(OperationExpr::adams(3).eval(&x), adams_n(3, &x));
    }

    #[test]
    fn catalogue_passes() {
        let checks = verify_catalogue().unwrap();
        assert!(checks.len() >= 20);
        for c in &checks {
            assert!(c.pass, "{} [{}]: {}", c.name, c.params, c.detail);
        }
        assert!(matches!(
            verify_identity("no_such_identity"),
            Err(LambdaError::UnknownIdentity(_))
        ));
    }

    #[test]
    fn failing_identity_reports_a_witness() {
        let ring = LineRing::new(1, 1);
        let lhs = ring.u(0);
        let rhs = ring.t(0);
        let c = check("probe", "d=1".into(), &lhs, &rhs);
        assert!(!c.pass);
        assert!(c.detail.contains("difference"));
    }

    #[test]
    fn display_is_readable() {
        let ring = LineRing::new(1, 1);
        let e = ring.u(0).pow(2).scale(3).sub(&ring.t(0)).add(&ring.one());
        let s = format!("{e}");
        assert!(s.contains("3*u1^2"), "{s}");
        assert!(s.contains("t1"), "{s}");
        assert_eq!(format!("{}", ring.zero()), "0");
    }
}
