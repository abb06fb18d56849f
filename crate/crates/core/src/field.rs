//! Exact scalar arithmetic over Q, prime fields GF(p), and small extension
//! fields GF(p^k) with 2 <= k <= 4.
//!
//! `FieldSpec` is the arithmetic context; `FieldElement` is plain data.  All
//! operations go through the spec, which keeps rationals in lowest terms and
//! finite-field values fully reduced.  Elements of different fields never mix:
//! the checked entry point [`field_arith`] reports `FieldMismatch`, while the
//! unchecked methods panic, which internal callers treat as a bug.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Primes must stay below 2^31 so products fit comfortably in u64/u128.
pub const MAX_PRIME: u64 = 1 << 31;

/// Coefficient bound for random rational sampling (random linear forms over Q
/// use integer coefficients in [-B, B]).
pub const RATIONAL_SAMPLE_BOUND: i64 = 1000;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldSpec {
    /// The rational numbers with arbitrary-precision reduced fractions.
    Rationals,
    /// GF(p), residues stored in [0, p).
    Prime(u64),
    /// GF(p^k) = GF(p)[t]/(modulus); `modulus` is monic of degree k,
    /// coefficient i is the coefficient of t^i (so `modulus[k] == 1`).
    Ext { p: u64, k: usize, modulus: Vec<u64> },
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FieldElement {
    Rational(BigRational),
    Prime(u64),
    /// Coefficient vector of length k, entries in [0, p).
    Ext(Vec<u64>),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// GF(p); primality is verified by trial division.
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// GF(p^k) with an explicit monic modulus (coefficients low to high,
    /// length k+1).  Irreducibility is verified at construction.
    pub fn ext(p: u64, k: usize, modulus: Vec<u64>) -> Result<Self> {
        if p >= MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if !(2..=4).contains(&k) {
            return Err(Error::BadExtensionDegree(k));
        }
        if modulus.len() != k + 1 || modulus[k] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::ReducibleModulus { p });
        }
        if !is_irreducible_mod_p(p, &modulus) {
            return Err(Error::ReducibleModulus { p });
        }
        Ok(FieldSpec::Ext { p, k, modulus })
    }

    /// GF(p^k) with the deterministic modulus from [`find_irreducible`].
    pub fn ext_auto(p: u64, k: usize) -> Result<Self> {
        let modulus = find_irreducible(p, k)?;
        FieldSpec::ext(p, k, modulus)
    }

    /// 0 for Q, p otherwise.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
            FieldSpec::Ext { p, .. } => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, FieldSpec::Rationals)
    }

    /// Number of elements for finite fields.
    pub fn order(&self) -> Option<u128> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p as u128),
            FieldSpec::Ext { p, k, .. } => Some((*p as u128).pow(*k as u32)),
        }
    }

    pub fn zero(&self) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::zero()),
            FieldSpec::Prime(_) => FieldElement::Prime(0),
            FieldSpec::Ext { k, .. } => FieldElement::Ext(vec![0; *k]),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::from(BigInt::from(n))),
            FieldSpec::Prime(p) => FieldElement::Prime(reduce_i64(n, *p)),
            FieldSpec::Ext { p, k, .. } => {
                let mut v = vec![0; *k];
                v[0] = reduce_i64(n, *p);
                FieldElement::Ext(v)
            }
        }
    }

    /// Whether `a` is a well-formed element of this field.
    pub fn contains(&self, a: &FieldElement) -> bool {
        match (self, a) {
            (FieldSpec::Rationals, FieldElement::Rational(_)) => true,
            (FieldSpec::Prime(p), FieldElement::Prime(v)) => v < p,
            (FieldSpec::Ext { p, k, .. }, FieldElement::Ext(v)) => {
                v.len() == *k && v.iter().all(|c| c < p)
            }
            _ => false,
        }
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Prime(v) => *v == 0,
            FieldElement::Ext(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (self, a, b) {
            (FieldSpec::Rationals, FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x + y)
            }
            (FieldSpec::Prime(p), FieldElement::Prime(x), FieldElement::Prime(y)) => {
                FieldElement::Prime((x + y) % p)
            }
            (FieldSpec::Ext { p, .. }, FieldElement::Ext(x), FieldElement::Ext(y)) => {
                FieldElement::Ext(x.iter().zip(y).map(|(u, v)| (u + v) % p).collect())
            }
            _ => panic!("field element does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        match (self, a) {
            (FieldSpec::Rationals, FieldElement::Rational(x)) => FieldElement::Rational(-x),
            (FieldSpec::Prime(p), FieldElement::Prime(x)) => {
                FieldElement::Prime(if *x == 0 { 0 } else { p - x })
            }
            (FieldSpec::Ext { p, .. }, FieldElement::Ext(x)) => {
                FieldElement::Ext(x.iter().map(|&c| if c == 0 { 0 } else { p - c }).collect())
            }
            _ => panic!("field element does not belong to {self}"),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (self, a, b) {
            (FieldSpec::Rationals, FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x * y)
            }
            (FieldSpec::Prime(p), FieldElement::Prime(x), FieldElement::Prime(y)) => {
                FieldElement::Prime(pmul(*p, *x, *y))
            }
            (FieldSpec::Ext { p, k, modulus }, FieldElement::Ext(x), FieldElement::Ext(y)) => {
                FieldElement::Ext(ext_mul(*p, *k, modulus, x, y))
            }
            _ => panic!("field element does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, a) {
            (FieldSpec::Rationals, FieldElement::Rational(x)) => {
                FieldElement::Rational(x.recip())
            }
            (FieldSpec::Prime(p), FieldElement::Prime(x)) => {
                FieldElement::Prime(ppow(*p, *x, *p - 2))
            }
            (FieldSpec::Ext { p, k, modulus }, FieldElement::Ext(x)) => {
                FieldElement::Ext(ext_inv(*p, *k, modulus, x))
            }
            _ => panic!("field element does not belong to {self}"),
        })
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Uniform element of a finite field; over Q an integer in
    /// [-RATIONAL_SAMPLE_BOUND, RATIONAL_SAMPLE_BOUND].
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        match self {
            FieldSpec::Rationals => {
                self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND))
            }
            FieldSpec::Prime(p) => FieldElement::Prime(rng.gen_range(0..*p)),
            FieldSpec::Ext { p, k, .. } => {
                FieldElement::Ext((0..*k).map(|_| rng.gen_range(0..*p)).collect())
            }
        }
    }

    /// The idx-th element in the canonical enumeration of a finite field.
    pub fn element_from_index(&self, idx: u128) -> FieldElement {
        match self {
            FieldSpec::Rationals => panic!("infinite field has no canonical enumeration"),
            FieldSpec::Prime(p) => {
                debug_assert!(idx < *p as u128);
                FieldElement::Prime(idx as u64)
            }
            FieldSpec::Ext { p, k, .. } => {
                let mut v = Vec::with_capacity(*k);
                let mut rest = idx;
                for _ in 0..*k {
                    v.push((rest % *p as u128) as u64);
                    rest /= *p as u128;
                }
                FieldElement::Ext(v)
            }
        }
    }

    /// Canonical index of an element, inverse of [`element_from_index`].
    pub fn element_index(&self, a: &FieldElement) -> u128 {
        match a {
            FieldElement::Prime(v) => *v as u128,
            FieldElement::Ext(v) => {
                let p = self.characteristic() as u128;
                v.iter().rev().fold(0u128, |acc, &c| acc * p + c as u128)
            }
            FieldElement::Rational(_) => panic!("rationals are not enumerable"),
        }
    }

    /// All elements of a finite field in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let order = self.order().expect("elements() requires a finite field");
        (0..order).map(move |i| self.element_from_index(i))
    }

    /// Lift a GF(p) value into this field (identity on GF(p), constant
    /// embedding into GF(p^k)).
    pub fn embed_prime(&self, a: &FieldElement) -> Result<FieldElement> {
        let FieldElement::Prime(v) = a else {
            return Err(Error::FieldMismatch("embed_prime expects a GF(p) value".into()));
        };
        match self {
            FieldSpec::Prime(p) if v < p => Ok(a.clone()),
            FieldSpec::Ext { p, k, .. } if v < p => {
                let mut c = vec![0; *k];
                c[0] = *v;
                Ok(FieldElement::Ext(c))
            }
            _ => Err(Error::FieldMismatch(format!("cannot embed {v} into {self}"))),
        }
    }

    /// Parse a scalar: `a` or `a/b` over Q, an integer over GF(p), an integer
    /// or polynomial in `t` (like `2*t+1`) over GF(p^k).
    pub fn parse_scalar(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::ScalarParse("empty scalar".into()));
        }
        match self {
            FieldSpec::Rationals => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), Some(d.trim())),
                    None => (s, None),
                };
                let n: BigInt = num
                    .parse()
                    .map_err(|_| Error::ScalarParse(format!("bad integer `{num}`")))?;
                let d: BigInt = match den {
                    Some(d) => d
                        .parse()
                        .map_err(|_| Error::ScalarParse(format!("bad integer `{d}`")))?,
                    None => BigInt::one(),
                };
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(FieldElement::Rational(BigRational::new(n, d)))
            }
            FieldSpec::Prime(p) => Ok(FieldElement::Prime(parse_residue(s, *p)?)),
            FieldSpec::Ext { p, k, .. } => parse_t_poly(s, *p, *k),
        }
    }

    pub fn format_element(&self, a: &FieldElement) -> String {
        match a {
            FieldElement::Rational(r) => r.to_string(),
            FieldElement::Prime(v) => v.to_string(),
            FieldElement::Ext(v) => format_t_poly(v),
        }
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Ext { p, k, .. } => write!(f, "GF({p}^{k})"),
        }
    }
}

/// Parse a field name: `Q`, `GF(p)`, or `GF(p^k)` (deterministic modulus).
pub fn parse_field_spec(s: &str) -> Result<FieldSpec> {
    let s = s.trim();
    if s == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    let inner = s
        .strip_prefix("GF(")
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::ScalarParse(format!("bad field `{s}` (expected Q, GF(p), GF(p^k))")))?;
    match inner.split_once('^') {
        None => {
            let p: u64 = inner
                .trim()
                .parse()
                .map_err(|_| Error::ScalarParse(format!("bad prime `{inner}`")))?;
            FieldSpec::prime(p)
        }
        Some((ps, ks)) => {
            let p: u64 = ps
                .trim()
                .parse()
                .map_err(|_| Error::ScalarParse(format!("bad prime `{ps}`")))?;
            let k: usize = ks
                .trim()
                .parse()
                .map_err(|_| Error::ScalarParse(format!("bad extension degree `{ks}`")))?;
            if k == 1 {
                FieldSpec::prime(p)
            } else {
                FieldSpec::ext_auto(p, k)
            }
        }
    }
}

/// Checked arithmetic: both operands must be members of `spec`.
pub fn field_arith(
    spec: &FieldSpec,
    a: &FieldElement,
    b: &FieldElement,
    op: ArithOp,
) -> Result<FieldElement> {
    if !spec.contains(a) || !spec.contains(b) {
        return Err(Error::FieldMismatch(format!(
            "operands are not both elements of {spec}"
        )));
    }
    match op {
        ArithOp::Add => Ok(spec.add(a, b)),
        ArithOp::Sub => Ok(spec.sub(a, b)),
        ArithOp::Mul => Ok(spec.mul(a, b)),
        ArithOp::Div => spec.div(a, b),
    }
}

/// Deterministic (lexicographically smallest coefficient vector) monic
/// irreducible of degree k over GF(p).
pub fn find_irreducible(p: u64, k: usize) -> Result<Vec<u64>> {
    if p >= MAX_PRIME {
        return Err(Error::PrimeTooLarge(p));
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if !(2..=4).contains(&k) {
        return Err(Error::BadExtensionDegree(k));
    }
    let total = (p as u128).pow(k as u32);
    for v in 0..total {
        let mut f = Vec::with_capacity(k + 1);
        let mut rest = v;
        for _ in 0..k {
            f.push((rest % p as u128) as u64);
            rest /= p as u128;
        }
        f.push(1);
        if is_irreducible_mod_p(p, &f) {
            return Ok(f);
        }
    }
    unreachable!("an irreducible of degree {k} over GF({p}) always exists")
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn reduce_i64(n: i64, p: u64) -> u64 {
    let r = n.rem_euclid(p as i64);
    r as u64
}

fn parse_residue(s: &str, p: u64) -> Result<u64> {
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::ScalarParse(format!("bad integer `{s}`")))?;
    let m = n % BigInt::from(p);
    let m = if m.is_negative() { m + BigInt::from(p) } else { m };
    Ok(u64::try_from(m).expect("reduced residue fits u64"))
}

// ---------------------------------------------------------------------------
// GF(p) scalar helpers (p < 2^31)
// ---------------------------------------------------------------------------

#[inline]
fn pmul(p: u64, a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn ppow(p: u64, mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = pmul(p, acc, a);
        }
        a = pmul(p, a, a);
        e >>= 1;
    }
    acc
}

// ---------------------------------------------------------------------------
// GF(p)[t] helpers on raw u64 coefficient vectors (low to high)
// ---------------------------------------------------------------------------

fn ext_mul(p: u64, k: usize, modulus: &[u64], x: &[u64], y: &[u64]) -> Vec<u64> {
    let mut prod = vec![0u64; 2 * k - 1];
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            if yj == 0 {
                continue;
            }
            prod[i + j] = (prod[i + j] + pmul(p, xi, yj)) % p;
        }
    }
    // reduce by the monic modulus: t^k = -(modulus[0..k])
    for i in (k..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..k {
            let sub = pmul(p, c, modulus[j]);
            prod[i - k + j] = (prod[i - k + j] + p - sub % p) % p;
        }
    }
    prod.truncate(k);
    prod
}

fn upoly_deg(v: &[u64]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

fn upoly_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Remainder of `num` modulo `den` over GF(p); `den` nonzero.
fn upoly_rem(p: u64, num: &[u64], den: &[u64]) -> Vec<u64> {
    let dd = upoly_deg(den).expect("nonzero divisor");
    let lead_inv = ppow(p, den[dd], p - 2);
    let mut r = num.to_vec();
    while let Some(dr) = upoly_deg(&r) {
        if dr < dd {
            break;
        }
        let c = pmul(p, r[dr], lead_inv);
        for j in 0..=dd {
            let sub = pmul(p, c, den[j]);
            r[dr - dd + j] = (r[dr - dd + j] + p - sub) % p;
        }
    }
    upoly_trim(r)
}

fn upoly_gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = upoly_trim(a.to_vec());
    let mut b = upoly_trim(b.to_vec());
    while !b.is_empty() {
        let r = upoly_rem(p, &a, &b);
        a = b;
        b = r;
    }
    a
}

fn upoly_mulmod(p: u64, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &xi) in a.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + pmul(p, xi, yj)) % p;
        }
    }
    upoly_rem(p, &prod, m)
}

/// t^e mod m over GF(p).
fn upoly_pow_t_mod(p: u64, mut e: u128, m: &[u64]) -> Vec<u64> {
    let mut base = upoly_rem(p, &[0, 1], m);
    let mut acc = vec![1u64];
    while e > 0 {
        if e & 1 == 1 {
            acc = upoly_mulmod(p, &acc, &base, m);
        }
        base = upoly_mulmod(p, &base, &base, m);
        e >>= 1;
    }
    acc
}

/// Irreducibility of a monic degree-k polynomial over GF(p): no roots
/// (equivalently no linear factors) and, for k = 4, no quadratic factors —
/// tested through gcds with t^(p^j) - t — plus t^(p^k) = t mod f.
pub(crate) fn is_irreducible_mod_p(p: u64, f: &[u64]) -> bool {
    let k = match upoly_deg(f) {
        Some(k) if k >= 2 => k,
        _ => return false,
    };
    // t^(p^k) must reduce to t mod f
    let tq = upoly_pow_t_mod(p, (p as u128).pow(k as u32), f);
    if upoly_trim(tq) != vec![0, 1] {
        return false;
    }
    // no factor of degree <= k/2: gcd(t^(p^j) - t, f) = 1 for j = 1..k/2
    for j in 1..=(k / 2) {
        let tpj = upoly_pow_t_mod(p, (p as u128).pow(j as u32), f);
        // tpj - t
        let mut diff = tpj;
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        let g = upoly_gcd(p, &diff, f);
        if upoly_deg(&g) != Some(0) && !g.is_empty() {
            return false;
        }
    }
    true
}

fn ext_inv(p: u64, k: usize, modulus: &[u64], x: &[u64]) -> Vec<u64> {
    // extended euclid: u*x + v*modulus = gcd (a unit)
    let mut r0 = modulus.to_vec();
    let mut r1 = upoly_trim(x.to_vec());
    let mut s0: Vec<u64> = vec![];
    let mut s1: Vec<u64> = vec![1];
    while let Some(d1) = upoly_deg(&r1) {
        if d1 == 0 {
            break;
        }
        let (q, r) = upoly_divrem(p, &r0, &r1);
        let qs1 = upoly_mul(p, &q, &s1);
        let new_s = upoly_sub(p, &s0, &qs1);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = new_s;
    }
    let d = upoly_deg(&r1).expect("inverse of zero");
    debug_assert_eq!(d, 0);
    let c_inv = ppow(p, r1[0], p - 2);
    let mut out = vec![0u64; k];
    for (i, &c) in s1.iter().enumerate() {
        if i < k {
            out[i] = pmul(p, c, c_inv);
        }
    }
    out
}

fn upoly_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &xi) in a.iter().enumerate() {
        for (j, &yj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + pmul(p, xi, yj)) % p;
        }
    }
    upoly_trim(prod)
}

fn upoly_sub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    upoly_trim(out)
}

fn upoly_divrem(p: u64, num: &[u64], den: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let dd = upoly_deg(den).expect("nonzero divisor");
    let lead_inv = ppow(p, den[dd], p - 2);
    let mut r = num.to_vec();
    let dn = match upoly_deg(&r) {
        Some(d) => d,
        None => return (Vec::new(), Vec::new()),
    };
    if dn < dd {
        return (Vec::new(), upoly_trim(r));
    }
    let mut q = vec![0u64; dn - dd + 1];
    while let Some(dr) = upoly_deg(&r) {
        if dr < dd {
            break;
        }
        let c = pmul(p, r[dr], lead_inv);
        q[dr - dd] = c;
        for j in 0..=dd {
            let sub = pmul(p, c, den[j]);
            r[dr - dd + j] = (r[dr - dd + j] + p - sub) % p;
        }
    }
    (upoly_trim(q), upoly_trim(r))
}

// ---------------------------------------------------------------------------
// Text formats for GF(p^k) scalars
// ---------------------------------------------------------------------------

fn format_t_poly(v: &[u64]) -> String {
    let mut out = String::new();
    for (i, &c) in v.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !out.is_empty() {
            out.push('+');
        }
        match (c, i) {
            (_, 0) => {
                let _ = write!(out, "{c}");
            }
            (1, 1) => out.push('t'),
            (1, _) => {
                let _ = write!(out, "t^{i}");
            }
            (_, 1) => {
                let _ = write!(out, "{c}*t");
            }
            (_, _) => {
                let _ = write!(out, "{c}*t^{i}");
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn parse_t_poly(s: &str, p: u64, k: usize) -> Result<FieldElement> {
    let mut coeffs = vec![0u64; k];
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::ScalarParse("empty scalar".into()));
    }
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut chars = compact.chars().peekable();
    if chars.peek() == Some(&'-') {
        neg = true;
        chars.next();
    } else if chars.peek() == Some(&'+') {
        chars.next();
    }
    for ch in chars {
        if ch == '+' || ch == '-' {
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    terms.push((neg, cur));
    for (negative, term) in terms {
        if term.is_empty() {
            return Err(Error::ScalarParse(format!("bad scalar `{s}`")));
        }
        let (coef_str, pow) = match term.split_once('t') {
            None => (term.as_str(), None),
            Some((c, rest)) => {
                let c = c.strip_suffix('*').unwrap_or(c);
                let e = if rest.is_empty() {
                    1usize
                } else {
                    let e = rest
                        .strip_prefix('^')
                        .ok_or_else(|| Error::ScalarParse(format!("bad term `{term}`")))?;
                    e.parse()
                        .map_err(|_| Error::ScalarParse(format!("bad exponent in `{term}`")))?
                };
                (c, Some(e))
            }
        };
        let c = if coef_str.is_empty() {
            1
        } else {
            parse_residue(coef_str, p)?
        };
        let c = if negative { (p - c % p) % p } else { c % p };
        match pow {
            None => coeffs[0] = (coeffs[0] + c) % p,
            Some(e) if e < k => coeffs[e] = (coeffs[e] + c) % p,
            Some(e) => {
                return Err(Error::ScalarParse(format!(
                    "exponent {e} too large for GF({p}^{k}) scalar"
                )))
            }
        }
    }
    Ok(FieldElement::Ext(coeffs))
}
