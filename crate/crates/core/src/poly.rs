//! Sparse multivariate polynomials with exact coefficients, graded-piece
//! monomial bases, the contraction action on the divided-power dual, and the
//! text grammar shared by the `.ideal` file format.
//!
//! Monomials of a fixed degree are ordered by graded reverse lexicographic
//! order with x > y > z; every coordinate matrix in the crate uses that order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::Signed;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Exponents are bounded so products cannot overflow silently.
pub const MAX_EXPONENT: u32 = 1 << 16;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u16>,
}

impl Monomial {
    pub fn new(exps: Vec<u16>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, idx: usize, e: u16) -> Self {
        let mut exps = vec![0; nvars];
        exps[idx] = e;
        Monomial { exps }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| {
                let s = a as u32 + b as u32;
                assert!(s < MAX_EXPONENT, "monomial exponent overflow");
                s as u16
            })
            .collect();
        Monomial { exps }
    }

    /// Componentwise quotient, `None` on exponent shortfall.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (&a, &b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }
}

impl Ord for Monomial {
    /// Total order: degree first, then grevlex (within a degree, the
    /// grevlex-largest monomial — e.g. x^2 before xy — compares greatest).
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.degree().cmp(&other.degree()).then_with(|| {
            for i in (0..self.exps.len()).rev() {
                if self.exps[i] != other.exps[i] {
                    return if self.exps[i] < other.exps[i] {
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    };
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of the given degree in grevlex order (largest first), so for
/// (3, 2) the list reads x^2, xy, y^2, xz, yz, z^2.
pub fn monomials_of_degree(nvars: usize, d: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    gen_exponents(nvars, d, 0, &mut cur, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn gen_exponents(nvars: usize, left: usize, pos: usize, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
    if pos == nvars - 1 {
        cur[pos] = left as u16;
        out.push(Monomial::new(cur.clone()));
        return;
    }
    for e in 0..=left {
        cur[pos] = e as u16;
        gen_exponents(nvars, left - e, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

/// dim of the space of degree-d forms in `nvars` variables.
pub fn dim_forms(nvars: usize, d: usize) -> usize {
    // C(d + nvars - 1, nvars - 1)
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..nvars - 1 {
        num *= (d + nvars - 1 - i) as u128;
        den *= (i + 1) as u128;
    }
    (num / den) as usize
}

/// A degree's monomial list plus an index map, the coordinate system used by
/// the linear algebra layer.
pub struct MonomialBasis {
    pub nvars: usize,
    pub degree: usize,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: usize) -> Self {
        let monomials = monomials_of_degree(nvars, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        MonomialBasis { nvars, degree, monomials, index }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    field: FieldSpec,
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl Polynomial {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        Polynomial { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: FieldSpec, nvars: usize, c: FieldElement) -> Self {
        let mut p = Polynomial::zero(field, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn variable(field: FieldSpec, nvars: usize, idx: usize) -> Self {
        let mut p = Polynomial::zero(field.clone(), nvars);
        p.add_term(Monomial::var(nvars, idx, 1), field.one());
        p
    }

    pub fn from_terms(
        field: FieldSpec,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Self {
        let mut p = Polynomial::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Add `c * m` into the polynomial, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: FieldElement) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), &c);
                if self.field.is_zero(&s) {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// `Some(d)` iff the polynomial is nonzero and all terms share degree d.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        if it.all(|m| m.degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    fn assert_compatible(&self, other: &Polynomial) {
        assert!(
            self.field == other.field && self.nvars == other.nvars,
            "polynomials from different rings"
        );
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        if self.field.is_zero(c) {
            return Polynomial::zero(self.field.clone(), self.nvars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = self.field.mul(v, c);
        }
        out
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.assert_compatible(other);
        let mut out = Polynomial::zero(self.field.clone(), self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), self.field.mul(c1, c2));
            }
        }
        out
    }

    /// Checked product for untrusted operands.
    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(Error::FieldMismatch(
                "polynomial product across different rings".into(),
            ));
        }
        Ok(self.mul(other))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &FieldElement) -> Polynomial {
        let mut out = Polynomial::zero(self.field.clone(), self.nvars);
        for (m1, c1) in &self.terms {
            out.add_term(m1.mul(m), self.field.mul(c1, c));
        }
        out
    }

    pub fn pow(&self, e: usize) -> Polynomial {
        let mut acc = Polynomial::constant(self.field.clone(), self.nvars, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[FieldElement]) -> FieldElement {
        debug_assert_eq!(point.len(), self.nvars);
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    term = self.field.mul(&term, &self.field.pow(&point[i], e as u64));
                }
            }
            acc = self.field.add(&acc, &term);
        }
        acc
    }

    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.field.clone(), self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps()[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[var] = e - 1;
            let coef = self.field.mul(c, &self.field.from_i64(e as i64));
            out.add_term(Monomial::new(exps), coef);
        }
        out
    }

    /// Coefficient vector of a homogeneous polynomial in a degree basis.
    pub fn coefficient_vector(&self, basis: &MonomialBasis) -> Vec<FieldElement> {
        let mut v = vec![self.field.zero(); basis.len()];
        for (m, c) in &self.terms {
            let idx = basis
                .index_of(m)
                .expect("term degree does not match the coordinate basis");
            v[idx] = c.clone();
        }
        v
    }

    pub fn from_coefficient_vector(
        field: FieldSpec,
        basis: &MonomialBasis,
        v: &[FieldElement],
    ) -> Polynomial {
        let mut p = Polynomial::zero(field, basis.nvars);
        for (i, c) in v.iter().enumerate() {
            p.add_term(basis.monomials[i].clone(), c.clone());
        }
        p
    }

    /// Dense random form of the given degree (zero coefficients allowed but
    /// the result is guaranteed nonzero).
    pub fn random_form<R: Rng + ?Sized>(
        field: &FieldSpec,
        nvars: usize,
        degree: usize,
        rng: &mut R,
    ) -> Polynomial {
        let basis = MonomialBasis::new(nvars, degree);
        loop {
            let mut p = Polynomial::zero(field.clone(), nvars);
            for m in &basis.monomials {
                p.add_term(m.clone(), field.random_element(rng));
            }
            if !p.is_zero() {
                return p;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Divided-power dual
// ---------------------------------------------------------------------------

/// Element of the graded dual E, concentrated in a single degree.  The ring
/// acts by contraction: x^a . X^A = X^(A-a) when A >= a componentwise and 0
/// otherwise, with coefficient 1 — the characteristic-free convention, so no
/// factorials appear in small characteristic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DualForm {
    field: FieldSpec,
    nvars: usize,
    degree: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl DualForm {
    pub fn zero(field: FieldSpec, nvars: usize, degree: usize) -> Self {
        DualForm { field, nvars, degree, terms: BTreeMap::new() }
    }

    pub fn from_terms(
        field: FieldSpec,
        nvars: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Result<Self> {
        let mut f = DualForm::zero(field, nvars, degree);
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(Error::Inhomogeneous);
            }
            f.add_term(m, c);
        }
        Ok(f)
    }

    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        let degree = p.homogeneous_degree().ok_or(Error::Inhomogeneous)?;
        DualForm::from_terms(
            p.field().clone(),
            p.nvars(),
            degree,
            p.terms().map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_terms(
            self.field.clone(),
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: FieldElement) {
        debug_assert_eq!(m.degree(), self.degree);
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), &c);
                if self.field.is_zero(&s) {
                    e.remove();
                } else {
                    e.insert(s);
                }
            }
        }
    }

    pub fn add(&self, other: &DualForm) -> DualForm {
        assert!(
            self.field == other.field && self.nvars == other.nvars && self.degree == other.degree,
            "dual forms from different duals"
        );
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &FieldElement) -> DualForm {
        let mut out = DualForm::zero(self.field.clone(), self.nvars, self.degree);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), self.field.mul(v, c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn coefficient_vector(&self, basis: &MonomialBasis) -> Vec<FieldElement> {
        let mut v = vec![self.field.zero(); basis.len()];
        for (m, c) in &self.terms {
            let idx = basis.index_of(m).expect("dual term outside basis degree");
            v[idx] = c.clone();
        }
        v
    }

    pub fn from_coefficient_vector(
        field: FieldSpec,
        basis: &MonomialBasis,
        v: &[FieldElement],
    ) -> DualForm {
        let mut f = DualForm::zero(field, basis.nvars, basis.degree);
        for (i, c) in v.iter().enumerate() {
            f.add_term(basis.monomials[i].clone(), c.clone());
        }
        f
    }

    /// The divided power of a linear dual form: the coefficient of X^a is
    /// lambda^a with no multinomial factor, so contraction by x^b extracts
    /// lambda^b times the lower divided power in every characteristic and
    /// all catalecticants have rank one.
    pub fn divided_power_of_linear(
        field: &FieldSpec,
        lambda: &[FieldElement],
        degree: usize,
    ) -> DualForm {
        let nvars = lambda.len();
        let mut out = DualForm::zero(field.clone(), nvars, degree);
        for m in monomials_of_degree(nvars, degree) {
            let mut c = field.one();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    c = field.mul(&c, &field.pow(&lambda[i], e as u64));
                }
            }
            out.add_term(m, c);
        }
        out
    }

    pub fn random_dense<R: Rng + ?Sized>(
        field: &FieldSpec,
        nvars: usize,
        degree: usize,
        rng: &mut R,
    ) -> DualForm {
        let basis = MonomialBasis::new(nvars, degree);
        loop {
            let mut f = DualForm::zero(field.clone(), nvars, degree);
            for m in &basis.monomials {
                f.add_term(m.clone(), field.random_element(rng));
            }
            if !f.is_zero() {
                return f;
            }
        }
    }
}

/// Contraction g . F of a homogeneous g of degree d on a dual form of degree
/// e >= d; bilinear, with x^a . X^A = X^(A-a) or 0.
pub fn contract(g: &Polynomial, f: &DualForm) -> Result<DualForm> {
    if g.field() != f.field() || g.nvars() != f.nvars() {
        return Err(Error::FieldMismatch("contraction across different rings".into()));
    }
    let d = g.homogeneous_degree().ok_or(Error::Inhomogeneous)?;
    if d > f.degree() {
        return Err(Error::DegreeTooLarge { d, e: f.degree() });
    }
    let spec = f.field().clone();
    let mut out = DualForm::zero(spec.clone(), f.nvars(), f.degree() - d);
    for (a, ca) in g.terms() {
        for (big_a, cb) in f.terms() {
            if let Some(m) = big_a.div(a) {
                out.add_term(m, spec.mul(ca, cb));
            }
        }
    }
    Ok(out)
}

/// Determinant of the matrix of second partials.
pub fn hessian_det(f: &Polynomial) -> Result<Polynomial> {
    let d = f.homogeneous_degree().ok_or(Error::Inhomogeneous)?;
    if d < 2 {
        return Err(Error::Invalid("hessian requires degree >= 2".into()));
    }
    let n = f.nvars();
    let mut h = Vec::with_capacity(n);
    for i in 0..n {
        let fi = f.partial_derivative(i);
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(fi.partial_derivative(j));
        }
        h.push(row);
    }
    Ok(poly_matrix_det(&h, f.field(), f.nvars()))
}

fn poly_matrix_det(m: &[Vec<Polynomial>], field: &FieldSpec, nvars: usize) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::constant(field.clone(), nvars, field.one());
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = Polynomial::zero(field.clone(), nvars);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let cof = m[0][j].mul(&poly_matrix_det(&minor, field, nvars));
        det = if j % 2 == 0 { det.add(&cof) } else { det.sub(&cof) };
    }
    det
}

// ---------------------------------------------------------------------------
// Text grammar
// ---------------------------------------------------------------------------

/// Parse a polynomial: terms joined by `+`/`-`, each term a `*`-product of
/// scalar factors and `var[^exp]` powers.  Scalars follow the field's syntax;
/// GF(p^k) scalars must be parenthesized, e.g. `(2*t+1)*x^2`.
pub fn parse_polynomial(input: &str, field: &FieldSpec, vars: &[&str]) -> Result<Polynomial> {
    Parser { field, vars, src: input.as_bytes(), pos: 0 }.parse()
}

struct Parser<'a> {
    field: &'a FieldSpec,
    vars: &'a [&'a str],
    src: &'a [u8],
    pos: usize,
}

enum VarOrScalar {
    Var(usize, u32),
    Scalar(FieldElement),
}

impl<'a> Parser<'a> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::PolyParse { line: 1, col: self.pos + 1, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.get(self.pos).map(|&b| b as char)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn parse(&mut self) -> Result<Polynomial> {
        let nvars = self.vars.len();
        let mut poly = Polynomial::zero(self.field.clone(), nvars);
        let mut first = true;
        loop {
            self.skip_ws();
            if self.pos >= self.src.len() {
                if first {
                    return Err(self.error("empty polynomial"));
                }
                break;
            }
            let mut negative = false;
            match self.peek() {
                Some('+') => {
                    self.bump();
                }
                Some('-') => {
                    self.bump();
                    negative = true;
                }
                Some(_) if first => {}
                Some(c) => return Err(self.error(format!("expected `+` or `-`, found `{c}`"))),
                None => break,
            }
            let (m, c) = self.parse_term()?;
            let c = if negative { self.field.neg(&c) } else { c };
            poly.add_term(m, c);
            first = false;
        }
        Ok(poly)
    }

    fn parse_term(&mut self) -> Result<(Monomial, FieldElement)> {
        let nvars = self.vars.len();
        let mut coef = self.field.one();
        let mut exps = vec![0u32; nvars];
        let mut first_factor = true;
        loop {
            self.skip_ws();
            if !first_factor {
                match self.peek() {
                    Some('*') => {
                        self.bump();
                    }
                    _ => break,
                }
            }
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let scalar = self.parse_number_scalar()?;
                    coef = self.field.mul(&coef, &scalar);
                }
                Some('(') => {
                    let scalar = self.parse_paren_scalar()?;
                    coef = self.field.mul(&coef, &scalar);
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    match self.parse_var_power()? {
                        VarOrScalar::Var(idx, e) => {
                            exps[idx] += e;
                            if exps[idx] >= MAX_EXPONENT {
                                return Err(self.error("exponent too large"));
                            }
                        }
                        VarOrScalar::Scalar(s) => coef = self.field.mul(&coef, &s),
                    }
                }
                Some(c) => return Err(self.error(format!("unexpected `{c}` in term"))),
                None => return Err(self.error("unexpected end of input in term")),
            }
            first_factor = false;
        }
        let m = Monomial::new(exps.into_iter().map(|e| e as u16).collect());
        Ok((m, coef))
    }

    fn parse_number_scalar(&mut self) -> Result<FieldElement> {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let mut text =
            std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits").to_string();
        // fraction only over Q
        if self.src.get(self.pos) == Some(&b'/') && *self.field == FieldSpec::Rationals {
            self.pos += 1;
            let dstart = self.pos;
            while self.pos < self.src.len() && (self.src[self.pos] as char).is_ascii_digit() {
                self.pos += 1;
            }
            if dstart == self.pos {
                return Err(self.error("expected a denominator"));
            }
            text.push('/');
            text.push_str(std::str::from_utf8(&self.src[dstart..self.pos]).expect("ascii digits"));
        }
        self.field.parse_scalar(&text).map_err(|e| self.error(e.to_string()))
    }

    fn parse_paren_scalar(&mut self) -> Result<FieldElement> {
        self.bump(); // '('
        let start = self.pos;
        let mut depth = 1;
        while self.pos < self.src.len() {
            match self.src[self.pos] as char {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        let inner = std::str::from_utf8(&self.src[start..self.pos])
                            .map_err(|_| self.error("non-ascii scalar"))?;
                        self.pos += 1;
                        return self
                            .field
                            .parse_scalar(inner)
                            .map_err(|e| self.error(e.to_string()));
                    }
                }
                _ => {}
            }
            self.pos += 1;
        }
        Err(self.error("unterminated `(`"))
    }

    fn parse_var_power(&mut self) -> Result<VarOrScalar> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos] as char;
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        let name = std::str::from_utf8(&self.src[start..self.pos])
            .map_err(|_| self.error("non-ascii identifier"))?
            .to_string();
        let idx = self.vars.iter().position(|v| *v == name);
        if idx.is_none() && !(name == "t" && matches!(self.field, FieldSpec::Ext { .. })) {
            return Err(self.error(format!("unknown variable `{name}`")));
        }
        let mut e = 1u32;
        if self.peek() == Some('^') {
            self.bump();
            self.skip_ws();
            let estart = self.pos;
            while self.pos < self.src.len() && (self.src[self.pos] as char).is_ascii_digit() {
                self.pos += 1;
            }
            if estart == self.pos {
                return Err(self.error("expected an exponent after `^`"));
            }
            e = std::str::from_utf8(&self.src[estart..self.pos])
                .expect("ascii digits")
                .parse()
                .map_err(|_| self.error("exponent out of range"))?;
            if e >= MAX_EXPONENT {
                return Err(self.error("exponent too large"));
            }
        }
        match idx {
            Some(i) => Ok(VarOrScalar::Var(i, e)),
            None => {
                // bare `t` generator of GF(p^k), possibly with a power
                let t = self
                    .field
                    .parse_scalar("t")
                    .map_err(|err| self.error(err.to_string()))?;
                Ok(VarOrScalar::Scalar(self.field.pow(&t, e as u64)))
            }
        }
    }
}

/// Canonical variable names used by display when none are supplied: x, y, z
/// for three variables, x0.. otherwise.
pub fn default_var_names(nvars: usize) -> Vec<String> {
    match nvars {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        n => (0..n).map(|i| format!("x{i}")).collect(),
    }
}

fn format_monomial(m: &Monomial, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    parts.join("*")
}

fn coefficient_needs_parens(s: &str) -> bool {
    s.chars().any(|c| c.is_ascii_alphabetic() || c == '+' || c == '-' || c == '*')
}

/// Render with explicit variable names; `Display` uses the defaults.
pub fn format_polynomial(p: &Polynomial, vars: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let field = p.field();
    let mut out = String::new();
    for (m, c) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        let (sign_negative, abs) = match c {
            FieldElement::Rational(r) if r.is_negative() => {
                (true, field.format_element(&field.neg(c)))
            }
            _ => (false, field.format_element(c)),
        };
        if out.is_empty() {
            if sign_negative {
                out.push('-');
            }
        } else if sign_negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mono = format_monomial(m, vars);
        let coef_is_one = abs == "1";
        if mono.is_empty() {
            out.push_str(&abs);
        } else if coef_is_one {
            out.push_str(&mono);
        } else if coefficient_needs_parens(&abs) {
            out.push('(');
            out.push_str(&abs);
            out.push_str(")*");
            out.push_str(&mono);
        } else {
            out.push_str(&abs);
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_polynomial(self, &default_var_names(self.nvars)))
    }
}

impl fmt::Display for DualForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn pp(field: &FieldSpec, s: &str) -> Polynomial {
        parse_polynomial(s, field, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn degree_two_monomials_in_grevlex_order() {
        let basis = monomials_of_degree(3, 2);
        let names: Vec<String> = basis
            .iter()
            .map(|m| format_monomial(m, &default_var_names(3)))
            .collect();
        assert_eq!(names, ["x^2", "x*y", "y^2", "x*z", "y*z", "z^2"]);
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(3, 5).len(), 21);
        assert_eq!(monomials_of_degree(3, 0).len(), 1);
        assert_eq!(dim_forms(3, 8), 45);
    }

    #[test]
    fn product_difference_of_squares() {
        let f = pp(&q(), "x + y");
        let g = pp(&q(), "x - y");
        assert_eq!(f.mul(&g), pp(&q(), "x^2 - y^2"));
    }

    #[test]
    fn freshmans_dream_char_3() {
        let f3 = FieldSpec::prime(3).unwrap();
        let f = pp(&f3, "x + y");
        assert_eq!(f.pow(3), pp(&f3, "x^3 + y^3"));
    }

    #[test]
    fn line_times_conic() {
        let l = pp(&q(), "x");
        let qq = pp(&q(), "y^2 + z^2");
        assert_eq!(l.mul(&qq), pp(&q(), "x*y^2 + x*z^2"));
    }

    #[test]
    fn contraction_on_monomials() {
        let f = DualForm::from_polynomial(&pp(&q(), "x^2*y^3")).unwrap();
        let g = pp(&q(), "x^2");
        let out = contract(&g, &f).unwrap();
        assert_eq!(out.to_polynomial(), pp(&q(), "y^3"));

        let shortfall = contract(&pp(&q(), "y"), &DualForm::from_polynomial(&pp(&q(), "x^5")).unwrap())
            .unwrap();
        assert!(shortfall.is_zero());
    }

    #[test]
    fn contraction_bilinear_example() {
        // term-by-term with the factorial-free rule:
        // x.(X^2) = X, x.(XY) = Y, y.(X^2) = 0, y.(XY) = X, so
        // (x+y) . (X^2 + XY) = 2X + Y in any characteristic
        let g_q = pp(&q(), "x + y");
        let f_q = DualForm::from_polynomial(&pp(&q(), "x^2 + x*y")).unwrap();
        let expected = contraction_oracle(&g_q, &f_q);
        let got = contract(&g_q, &f_q).unwrap();
        assert_eq!(got, expected);
        assert_eq!(got.to_polynomial(), pp(&q(), "2*x + y"));

        let f3 = FieldSpec::prime(3).unwrap();
        let g_3 = pp(&f3, "x + y");
        let f_3 = DualForm::from_polynomial(&pp(&f3, "x^2 + x*y")).unwrap();
        assert_eq!(contract(&g_3, &f_3).unwrap(), contraction_oracle(&g_3, &f_3));
    }

    /// Brute-force contraction table over all monomial pairs, independent of
    /// the production implementation.
    fn contraction_oracle(g: &Polynomial, f: &DualForm) -> DualForm {
        let spec = f.field().clone();
        let d = g.homogeneous_degree().unwrap();
        let mut out = DualForm::zero(spec.clone(), f.nvars(), f.degree() - d);
        for a in monomials_of_degree(g.nvars(), d) {
            let ca = g.coefficient(&a);
            if spec.is_zero(&ca) {
                continue;
            }
            for big in monomials_of_degree(f.nvars(), f.degree()) {
                let cb = f.coefficient(&big);
                if spec.is_zero(&cb) {
                    continue;
                }
                let ok = a.exps().iter().zip(big.exps()).all(|(&s, &t)| s <= t);
                if ok {
                    let diff: Vec<u16> =
                        big.exps().iter().zip(a.exps()).map(|(&t, &s)| t - s).collect();
                    out.add_term(Monomial::new(diff), spec.mul(&ca, &cb));
                }
            }
        }
        out
    }

    #[test]
    fn contraction_degree_error() {
        let f = DualForm::from_polynomial(&pp(&q(), "x^2")).unwrap();
        let g = pp(&q(), "x^3");
        assert!(matches!(contract(&g, &f), Err(Error::DegreeTooLarge { .. })));
    }

    #[test]
    fn hessian_fermat_cubic() {
        let f = pp(&q(), "x^3 + y^3 + z^3");
        assert_eq!(hessian_det(&f).unwrap(), pp(&q(), "216*x*y*z"));
    }

    #[test]
    fn hessian_degenerate_binary_case() {
        let f = pp(&q(), "x^5");
        assert!(hessian_det(&f).unwrap().is_zero());
    }

    #[test]
    fn hessian_xyz() {
        let f = pp(&q(), "x*y*z");
        assert_eq!(hessian_det(&f).unwrap(), pp(&q(), "2*x*y*z"));
    }

    #[test]
    fn parse_rejects_unknown_variable() {
        assert!(matches!(
            parse_polynomial("x + w", &q(), &["x", "y", "z"]),
            Err(Error::PolyParse { .. })
        ));
    }

    #[test]
    fn parse_rejects_dangling_exponent() {
        assert!(matches!(
            parse_polynomial("x^", &q(), &["x", "y", "z"]),
            Err(Error::PolyParse { .. })
        ));
    }

    #[test]
    fn display_round_trips() {
        let cases = ["x^2*y - 2*z^3", "1/2*x - 3/4*y*z", "x^2 - x*y + y^2"];
        for s in cases {
            let p = pp(&q(), s);
            let back = pp(&q(), &p.to_string());
            assert_eq!(p, back, "case `{s}`");
        }
        let f9 = FieldSpec::ext_auto(3, 2).unwrap();
        let p = parse_polynomial("(2*t+1)*x^2 + t*y*z", &f9, &["x", "y", "z"]).unwrap();
        let back = parse_polynomial(&p.to_string(), &f9, &["x", "y", "z"]).unwrap();
        assert_eq!(p, back);
    }

    #[test]
    fn eval_matches_terms() {
        let f7 = FieldSpec::prime(7).unwrap();
        let p = pp(&f7, "x^3 + y^3 + z^3");
        let pt = [f7.from_i64(1), f7.from_i64(2), f7.from_i64(3)];
        // 1 + 8 + 27 = 36 = 1 mod 7
        assert_eq!(p.eval(&pt), f7.from_i64(1));
    }
}
