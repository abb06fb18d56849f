//! Dense univariate polynomial helpers over a [`FieldSpec`], used for root
//! finding on restricted curves (chart-by-chart base locus computation).
//!
//! Coefficient vectors are low-to-high and always trimmed of trailing zeros.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

pub type UniPoly = Vec<FieldElement>;

pub fn trim(spec: &FieldSpec, mut v: UniPoly) -> UniPoly {
    while v.last().is_some_and(|c| spec.is_zero(c)) {
        v.pop();
    }
    v
}

pub fn degree(spec: &FieldSpec, v: &[FieldElement]) -> Option<usize> {
    v.iter().rposition(|c| !spec.is_zero(c))
}

pub fn eval(spec: &FieldSpec, f: &[FieldElement], x: &FieldElement) -> FieldElement {
    let mut acc = spec.zero();
    for c in f.iter().rev() {
        acc = spec.add(&spec.mul(&acc, x), c);
    }
    acc
}

pub fn mul(spec: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> UniPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![spec.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if spec.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = spec.add(&out[i + j], &spec.mul(x, y));
        }
    }
    trim(spec, out)
}

pub fn sub(spec: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> UniPoly {
    let n = a.len().max(b.len());
    let zero = spec.zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        out.push(spec.sub(x, y));
    }
    trim(spec, out)
}

/// Remainder of `num` mod `den`; `den` must be nonzero.
pub fn rem(spec: &FieldSpec, num: &[FieldElement], den: &[FieldElement]) -> Result<UniPoly> {
    let dd = degree(spec, den).ok_or(Error::DivisionByZero)?;
    let lead_inv = spec.inv(&den[dd])?;
    let mut r: UniPoly = num.to_vec();
    while let Some(dr) = degree(spec, &r) {
        if dr < dd {
            break;
        }
        let c = spec.mul(&r[dr], &lead_inv);
        for j in 0..=dd {
            let s = spec.mul(&c, &den[j]);
            r[dr - dd + j] = spec.sub(&r[dr - dd + j], &s);
        }
    }
    Ok(trim(spec, r))
}

/// Monic gcd (the zero polynomial if both inputs are zero).
pub fn gcd_monic(spec: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Result<UniPoly> {
    let mut a = trim(spec, a.to_vec());
    let mut b = trim(spec, b.to_vec());
    while !b.is_empty() {
        let r = rem(spec, &a, &b)?;
        a = b;
        b = r;
    }
    if let Some(d) = degree(spec, &a) {
        let inv = spec.inv(&a[d])?;
        for c in a.iter_mut() {
            *c = spec.mul(c, &inv);
        }
    }
    Ok(a)
}

fn mulmod(
    spec: &FieldSpec,
    a: &[FieldElement],
    b: &[FieldElement],
    m: &[FieldElement],
) -> Result<UniPoly> {
    rem(spec, &mul(spec, a, b), m)
}

/// (base + shift)^e mod m, where base is the variable y.
fn pow_linear_mod(
    spec: &FieldSpec,
    shift: &FieldElement,
    mut e: u128,
    m: &[FieldElement],
) -> Result<UniPoly> {
    let mut base = rem(spec, &[shift.clone(), spec.one()], m)?;
    let mut acc = vec![spec.one()];
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(spec, &acc, &base, m)?;
        }
        base = mulmod(spec, &base, &base, m)?;
        e >>= 1;
    }
    Ok(acc)
}

/// Distinct roots of `f` in a finite field, in canonical element order.
///
/// Small fields are scanned directly; larger odd-characteristic fields go
/// through gcd with y^q - y followed by equal-degree splitting.
pub fn roots_in_field(spec: &FieldSpec, f: &[FieldElement]) -> Result<Vec<FieldElement>> {
    let order = spec
        .order()
        .ok_or_else(|| Error::Invalid("root finding requires a finite field".into()))?;
    let f = trim(spec, f.to_vec());
    if degree(spec, &f).is_none() {
        return Err(Error::Invalid("cannot enumerate roots of the zero polynomial".into()));
    }
    if order <= 4096 {
        let mut roots = Vec::new();
        for x in spec.elements() {
            if spec.is_zero(&eval(spec, &f, &x)) {
                roots.push(x);
            }
        }
        return Ok(roots);
    }
    // split off the product of distinct linear factors: gcd(f, y^q - y)
    let yq = pow_linear_mod(spec, &spec.zero(), order, &f)?;
    let mut yq_minus_y = yq;
    if yq_minus_y.len() < 2 {
        yq_minus_y.resize(2, spec.zero());
    }
    yq_minus_y[1] = spec.sub(&yq_minus_y[1], &spec.one());
    let lin = gcd_monic(spec, &yq_minus_y, &f)?;
    let mut roots = Vec::new();
    collect_roots(spec, lin, order, &mut roots, 0)?;
    roots.sort_by_key(|r| spec.element_index(r));
    roots.dedup();
    Ok(roots)
}

/// Equal-degree splitting of a product of distinct linear factors
/// (odd characteristic; small fields never reach this path).
fn collect_roots(
    spec: &FieldSpec,
    g: UniPoly,
    order: u128,
    out: &mut Vec<FieldElement>,
    depth: usize,
) -> Result<()> {
    match degree(spec, &g) {
        None | Some(0) => return Ok(()),
        Some(1) => {
            // monic y + c -> root -c
            out.push(spec.neg(&g[0]));
            return Ok(());
        }
        Some(_) => {}
    }
    if spec.characteristic() == 2 {
        return Err(Error::Invalid(
            "equal-degree splitting unsupported in characteristic 2 at this field size".into(),
        ));
    }
    if depth > 96 {
        return Err(Error::Invalid("root splitting did not converge".into()));
    }
    // deterministic splitting attempts
    let mut rng = ChaCha8Rng::seed_from_u64(0x524F4F54 ^ depth as u64);
    let e = (order - 1) / 2;
    for _ in 0..64 {
        let shift_idx = rng.gen_range(0..u64::MAX) as u128 % order;
        let shift = spec.element_from_index(shift_idx);
        let mut h = pow_linear_mod(spec, &shift, e, &g)?;
        if h.is_empty() {
            h = vec![spec.zero()];
        }
        h[0] = spec.sub(&h[0], &spec.one());
        let d = gcd_monic(spec, &h, &g)?;
        let dd = degree(spec, &d);
        if let Some(k) = dd {
            if k > 0 && k < degree(spec, &g).unwrap() {
                let (q, _) = divrem(spec, &g, &d)?;
                collect_roots(spec, d, order, out, depth + 1)?;
                collect_roots(spec, q, order, out, depth + 1)?;
                return Ok(());
            }
        }
    }
    Err(Error::Invalid("root splitting did not converge".into()))
}

pub fn divrem(
    spec: &FieldSpec,
    num: &[FieldElement],
    den: &[FieldElement],
) -> Result<(UniPoly, UniPoly)> {
    let dd = degree(spec, den).ok_or(Error::DivisionByZero)?;
    let lead_inv = spec.inv(&den[dd])?;
    let mut r: UniPoly = num.to_vec();
    let dn = match degree(spec, &r) {
        Some(d) => d,
        None => return Ok((Vec::new(), Vec::new())),
    };
    if dn < dd {
        return Ok((Vec::new(), trim(spec, r)));
    }
    let mut q = vec![spec.zero(); dn - dd + 1];
    while let Some(dr) = degree(spec, &r) {
        if dr < dd {
            break;
        }
        let c = spec.mul(&r[dr], &lead_inv);
        q[dr - dd] = c.clone();
        for j in 0..=dd {
            let s = spec.mul(&c, &den[j]);
            r[dr - dd + j] = spec.sub(&r[dr - dd + j], &s);
        }
    }
    Ok((trim(spec, q), trim(spec, r)))
}
