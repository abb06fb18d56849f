//! Degree-truncated ideal computations, all by exact linear algebra on graded
//! pieces: coordinate bases of [I]_d, Hilbert functions, colon ideals,
//! intersections, bounded saturation, socle, syzygies, and h-vector
//! predicates.  The degrees the library cares about are tiny (socle degree
//! <= 6, schemes of length <= 9), so degreewise elimination beats any general
//! Groebner machinery on exactness and determinism.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{keep_nonzero_rows, reduce_against_rref, row_space_intersection, ExactMatrix, Rref};
use crate::poly::{MonomialBasis, Monomial, Polynomial};

/// Default degree cutoff for stabilization searches on zero-dimensional
/// schemes; all degrees at play in this crate are <= 9.
pub const DEFAULT_DEGREE_CUTOFF: usize = 12;

/// RREF coordinate basis of one graded piece [I]_d.
#[derive(Clone, Debug)]
pub struct DegreeComponent {
    pub degree: usize,
    pub ambient_dim: usize,
    /// RREF rows spanning [I]_d in the grevlex coordinate system.
    pub basis: ExactMatrix,
    pub pivot_cols: Vec<usize>,
}

impl DegreeComponent {
    pub fn from_rows(field: &FieldSpec, degree: usize, ambient_dim: usize, rows: Vec<Vec<FieldElement>>) -> Self {
        let raw = ExactMatrix::from_rows(field.clone(), ambient_dim, rows);
        let rref = raw.rref();
        DegreeComponent {
            degree,
            ambient_dim,
            basis: keep_nonzero_rows(&rref),
            pivot_cols: rref.pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn quotient_dim(&self) -> usize {
        self.ambient_dim - self.rank()
    }

    /// Columns of the standard (non-pivot) monomials — the canonical
    /// coordinates of the quotient in this degree.
    pub fn standard_cols(&self) -> Vec<usize> {
        let mut pivots = self.pivot_cols.iter().copied().peekable();
        let mut out = Vec::with_capacity(self.quotient_dim());
        for c in 0..self.ambient_dim {
            if pivots.peek() == Some(&c) {
                pivots.next();
            } else {
                out.push(c);
            }
        }
        out
    }

    fn as_rref(&self) -> Rref {
        Rref { matrix: self.basis.clone(), rank: self.basis.rows(), pivot_cols: self.pivot_cols.clone() }
    }

    /// Reduce a degree-d coefficient vector mod [I]_d in place.
    pub fn reduce(&self, v: &mut [FieldElement]) {
        let rref = self.as_rref();
        reduce_against_rref(&rref, v);
    }
}

/// A homogeneous ideal handled degree by degree.  The per-degree bases are
/// cached; fills are compute-then-publish, so concurrent readers are safe and
/// duplicated work is merely discarded.
#[derive(Debug)]
pub struct GradedIdeal {
    field: FieldSpec,
    nvars: usize,
    generators: Vec<Polynomial>,
    cache: Mutex<HashMap<usize, Arc<DegreeComponent>>>,
    inverse_system: Option<crate::poly::DualForm>,
}

impl Clone for GradedIdeal {
    fn clone(&self) -> Self {
        let cache = self.cache.lock().expect("cache lock").clone();
        GradedIdeal {
            field: self.field.clone(),
            nvars: self.nvars,
            generators: self.generators.clone(),
            cache: Mutex::new(cache),
            inverse_system: self.inverse_system.clone(),
        }
    }
}

impl GradedIdeal {
    pub fn new(field: FieldSpec, nvars: usize, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if g.field() != &field || g.nvars() != nvars {
                return Err(Error::FieldMismatch("generator from a different ring".into()));
            }
            match g.homogeneous_degree() {
                Some(d) if d >= 1 => {}
                _ => return Err(Error::Inhomogeneous),
            }
        }
        Ok(GradedIdeal {
            field,
            nvars,
            generators,
            cache: Mutex::new(HashMap::new()),
            inverse_system: None,
        })
    }

    /// Ideal built from explicit degree components (annihilators, level
    /// intersections).  Minimal generators are extracted from the components,
    /// which must extend at least one degree past the last generator degree —
    /// for artinian ideals, through socle degree + 1.
    pub fn from_components(
        field: FieldSpec,
        nvars: usize,
        comps: Vec<DegreeComponent>,
        inverse_system: Option<crate::poly::DualForm>,
    ) -> Result<Self> {
        let generators = minimal_generators_from_components(&field, nvars, &comps);
        let mut ideal = GradedIdeal::new(field, nvars, generators)?;
        ideal.inverse_system = inverse_system;
        let mut cache = HashMap::new();
        for c in comps {
            cache.insert(c.degree, Arc::new(c));
        }
        ideal.cache = Mutex::new(cache);
        Ok(ideal)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn inverse_system(&self) -> Option<&crate::poly::DualForm> {
        self.inverse_system.as_ref()
    }

    /// Same generators plus `extra`; the cache starts fresh.
    pub fn adjoin(&self, extra: Vec<Polynomial>) -> Result<GradedIdeal> {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        GradedIdeal::new(self.field.clone(), self.nvars, gens)
    }

    /// Canonical RREF basis of [I]_d, cached.
    pub fn degree_component(&self, d: usize) -> Arc<DegreeComponent> {
        if let Some(c) = self.cache.lock().expect("cache lock").get(&d) {
            return Arc::clone(c);
        }
        let computed = Arc::new(self.compute_component(d));
        let mut cache = self.cache.lock().expect("cache lock");
        Arc::clone(cache.entry(d).or_insert(computed))
    }

    fn compute_component(&self, d: usize) -> DegreeComponent {
        let basis = MonomialBasis::new(self.nvars, d);
        let mut rows = Vec::new();
        for g in &self.generators {
            let dg = g.homogeneous_degree().expect("generators are forms");
            if dg > d {
                continue;
            }
            for m in &crate::poly::monomials_of_degree(self.nvars, d - dg) {
                let prod = g.mul_monomial(m, &self.field.one());
                rows.push(prod.coefficient_vector(&basis));
            }
        }
        DegreeComponent::from_rows(&self.field, d, basis.len(), rows)
    }

    pub fn dim_ideal(&self, d: usize) -> usize {
        self.degree_component(d).rank()
    }

    /// H(d) = dim S_d - dim [I]_d for d = 0..=max_d.
    pub fn hilbert_function(&self, max_d: usize) -> Vec<usize> {
        (0..=max_d).map(|d| self.degree_component(d).quotient_dim()).collect()
    }

    /// First degree with H(d) = 0, or `ArtinianInconclusive` past the bound.
    pub fn is_artinian(&self, probe_bound: usize) -> Result<usize> {
        for d in 0..=probe_bound {
            if self.degree_component(d).quotient_dim() == 0 {
                return Ok(d);
            }
        }
        Err(Error::ArtinianInconclusive {
            probe_bound,
            h_at_bound: self.degree_component(probe_bound).quotient_dim(),
        })
    }

    /// h-vector of an artinian quotient (error if not artinian up to the
    /// probe bound).
    pub fn hvector(&self, probe_bound: usize) -> Result<HVector> {
        let zero_at = self.is_artinian(probe_bound)?;
        let values = self.hilbert_function(zero_at.saturating_sub(1));
        HVector::new(values)
    }

    /// Standard monomials of degree d — canonical coset representatives of
    /// the quotient.
    pub fn quotient_monomials(&self, d: usize) -> Vec<Monomial> {
        let comp = self.degree_component(d);
        let basis = MonomialBasis::new(self.nvars, d);
        comp.standard_cols().iter().map(|&c| basis.monomials[c].clone()).collect()
    }

    /// Coordinates of `p` (homogeneous of degree d) on the standard monomials
    /// of degree d, after reduction mod [I]_d.
    pub fn quotient_coords(&self, p: &Polynomial, d: usize) -> Vec<FieldElement> {
        let comp = self.degree_component(d);
        let basis = MonomialBasis::new(self.nvars, d);
        let mut v = p.coefficient_vector(&basis);
        comp.reduce(&mut v);
        comp.standard_cols().iter().map(|&c| v[c].clone()).collect()
    }

    /// Basis of [I : f]_d = { g in S_d : g*f in [I]_{d + deg f} }.
    pub fn colon_by_form(&self, f: &Polynomial, d: usize) -> Result<ExactMatrix> {
        if f.is_zero() {
            return Err(Error::Invalid("colon by the zero form".into()));
        }
        let df = f.homogeneous_degree().ok_or(Error::Inhomogeneous)?;
        let domain = MonomialBasis::new(self.nvars, d);
        let codomain = MonomialBasis::new(self.nvars, d + df);
        let target = self.degree_component(d + df);
        let mut cols = Vec::with_capacity(domain.len());
        for m in &domain.monomials {
            let prod = f.mul_monomial(m, &self.field.one());
            let mut v = prod.coefficient_vector(&codomain);
            target.reduce(&mut v);
            cols.push(v);
        }
        // matrix of the map S_d -> S_{d+df}/[I], columns indexed by domain
        let mut mat = ExactMatrix::zeros(self.field.clone(), codomain.len(), domain.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, val) in col.iter().enumerate() {
                mat.set(i, j, val.clone());
            }
        }
        let kernel = mat.kernel_basis();
        let raw = ExactMatrix::from_rows(self.field.clone(), domain.len(), kernel);
        Ok(keep_nonzero_rows(&raw.rref()))
    }

    /// Basis of { g in S_d : g * S_N subset [I]_{d+N} } for the smallest
    /// stabilized N <= power_bound; errors with `NotStabilized` if the chain
    /// is still growing at the bound.
    pub fn saturation_degree_basis(&self, d: usize, power_bound: usize) -> Result<ExactMatrix> {
        if power_bound < 1 {
            return Err(Error::Invalid("power_bound must be >= 1".into()));
        }
        let mut prev = self.degree_component(d).basis.clone();
        for n in 1..=power_bound {
            let cur = self.colon_by_power_of_max_ideal(d, n)?;
            if cur == prev {
                return Ok(cur);
            }
            prev = cur;
        }
        Err(Error::NotStabilized(power_bound))
    }

    fn colon_by_power_of_max_ideal(&self, d: usize, n: usize) -> Result<ExactMatrix> {
        let domain = MonomialBasis::new(self.nvars, d);
        let powers = crate::poly::monomials_of_degree(self.nvars, n);
        let codomain = MonomialBasis::new(self.nvars, d + n);
        let target = self.degree_component(d + n);
        let mut mat =
            ExactMatrix::zeros(self.field.clone(), codomain.len() * powers.len(), domain.len());
        for (j, m) in domain.monomials.iter().enumerate() {
            for (b, mu) in powers.iter().enumerate() {
                let prod = Polynomial::from_terms(
                    self.field.clone(),
                    self.nvars,
                    [(m.mul(mu), self.field.one())],
                );
                let mut v = prod.coefficient_vector(&codomain);
                target.reduce(&mut v);
                for (i, val) in v.into_iter().enumerate() {
                    mat.set(b * codomain.len() + i, j, val);
                }
            }
        }
        let kernel = mat.kernel_basis();
        let raw = ExactMatrix::from_rows(self.field.clone(), domain.len(), kernel);
        Ok(keep_nonzero_rows(&raw.rref()))
    }

    /// Basis of Soc(S/I)_d as canonical coset representatives.
    pub fn socle_basis(&self, d: usize) -> Vec<Polynomial> {
        let std_d = self.quotient_monomials(d);
        if std_d.is_empty() {
            return Vec::new();
        }
        let comp_up = self.degree_component(d + 1);
        let std_up = comp_up.standard_cols();
        let basis_up = MonomialBasis::new(self.nvars, d + 1);
        let mut mat =
            ExactMatrix::zeros(self.field.clone(), std_up.len() * self.nvars, std_d.len());
        for (j, m) in std_d.iter().enumerate() {
            for var in 0..self.nvars {
                let shifted = m.mul(&Monomial::var(self.nvars, var, 1));
                let prod =
                    Polynomial::from_terms(self.field.clone(), self.nvars, [(shifted, self.field.one())]);
                let mut v = prod.coefficient_vector(&basis_up);
                comp_up.reduce(&mut v);
                for (r, &c) in std_up.iter().enumerate() {
                    mat.set(var * std_up.len() + r, j, v[c].clone());
                }
            }
        }
        let kernel = mat.kernel_basis();
        let canonical = keep_nonzero_rows(
            &ExactMatrix::from_rows(self.field.clone(), std_d.len(), kernel).rref(),
        );
        (0..canonical.rows())
            .map(|r| {
                let mut p = Polynomial::zero(self.field.clone(), self.nvars);
                for (idx, m) in std_d.iter().enumerate() {
                    p.add_term(m.clone(), canonical.get(r, idx).clone());
                }
                p
            })
            .collect()
    }

    /// Socle dimension per degree 0..=max_d.
    pub fn socle_dims(&self, max_d: usize) -> Vec<usize> {
        (0..=max_d).map(|d| self.socle_basis(d).len()).collect()
    }

    /// Hilbert function values until they stabilize (three consecutive equal
    /// values), used for zero-dimensional scheme degrees.
    pub fn stabilized_hilbert(&self, cutoff: usize) -> Result<(Vec<usize>, usize)> {
        let h = self.hilbert_function(cutoff);
        for d in 2..=cutoff {
            if h[d] == h[d - 1] && h[d - 1] == h[d - 2] {
                return Ok((h[..=d].to_vec(), h[d]));
            }
        }
        Err(Error::NotStabilized(cutoff))
    }
}

/// Degreewise intersection of ideals: RREF basis of the intersection of the
/// degree-d pieces.
pub fn intersect_ideals(ideals: &[&GradedIdeal], d: usize) -> Result<ExactMatrix> {
    let first = ideals.first().ok_or_else(|| Error::Invalid("empty intersection".into()))?;
    for i in ideals.iter().skip(1) {
        if i.field() != first.field() || i.nvars() != first.nvars() {
            return Err(Error::FieldMismatch("intersection across different rings".into()));
        }
    }
    let mut acc = first.degree_component(d).basis.clone();
    for i in ideals.iter().skip(1) {
        acc = row_space_intersection(&acc, &i.degree_component(d).basis)?;
    }
    Ok(acc)
}

/// Basis of the degree-d relations among `gens`: vectors (a_1..a_m) of forms
/// with sum a_i g_i = 0 and deg a_i = d - deg g_i.
pub fn syzygies_in_degree(gens: &[Polynomial], d: usize) -> Result<Vec<Vec<Polynomial>>> {
    let first = gens.first().ok_or_else(|| Error::Invalid("no generators".into()))?;
    let field = first.field().clone();
    let nvars = first.nvars();
    let target = MonomialBasis::new(nvars, d);
    // column blocks, one per generator of degree <= d
    let mut block_bases = Vec::new();
    let mut total_cols = 0;
    for g in gens {
        let dg = g.homogeneous_degree().ok_or(Error::Inhomogeneous)?;
        let block = if dg <= d { Some(MonomialBasis::new(nvars, d - dg)) } else { None };
        total_cols += block.as_ref().map_or(0, |b| b.len());
        block_bases.push(block);
    }
    if total_cols == 0 {
        return Ok(Vec::new());
    }
    let mut mat = ExactMatrix::zeros(field.clone(), target.len(), total_cols);
    let mut col = 0;
    for (g, block) in gens.iter().zip(&block_bases) {
        let Some(block) = block else { continue };
        for m in &block.monomials {
            let prod = g.mul_monomial(m, &field.one());
            let v = prod.coefficient_vector(&target);
            for (i, val) in v.into_iter().enumerate() {
                mat.set(i, col, val);
            }
            col += 1;
        }
    }
    let kernel = mat.kernel_basis();
    let canonical =
        keep_nonzero_rows(&ExactMatrix::from_rows(field.clone(), total_cols, kernel).rref());
    let mut out = Vec::new();
    for r in 0..canonical.rows() {
        let mut relation = Vec::with_capacity(gens.len());
        let mut offset = 0;
        for block in &block_bases {
            match block {
                None => relation.push(Polynomial::zero(field.clone(), nvars)),
                Some(b) => {
                    let coords: Vec<FieldElement> =
                        (0..b.len()).map(|j| canonical.get(r, offset + j).clone()).collect();
                    relation.push(Polynomial::from_coefficient_vector(field.clone(), b, &coords));
                    offset += b.len();
                }
            }
        }
        out.push(relation);
    }
    Ok(out)
}

/// New minimal generators in each degree: basis completions of S_1 * [I]_{d-1}
/// inside [I]_d, reported in degree order.
pub fn minimal_generators_from_components(
    field: &FieldSpec,
    nvars: usize,
    comps: &[DegreeComponent],
) -> Vec<Polynomial> {
    let mut by_degree: HashMap<usize, &DegreeComponent> = HashMap::new();
    for c in comps {
        by_degree.insert(c.degree, c);
    }
    let mut degrees: Vec<usize> = by_degree.keys().copied().collect();
    degrees.sort_unstable();
    let mut gens = Vec::new();
    for &d in &degrees {
        let comp = by_degree[&d];
        if comp.rank() == 0 {
            continue;
        }
        let basis = MonomialBasis::new(nvars, d);
        let mut span_rows: Vec<Vec<FieldElement>> = Vec::new();
        if d >= 1 {
            if let Some(prev) = by_degree.get(&(d - 1)) {
                let prev_basis = MonomialBasis::new(nvars, d - 1);
                for r in 0..prev.basis.rows() {
                    let p = Polynomial::from_coefficient_vector(
                        field.clone(),
                        &prev_basis,
                        prev.basis.row(r),
                    );
                    for var in 0..nvars {
                        let shifted = p.mul_monomial(&Monomial::var(nvars, var, 1), &field.one());
                        span_rows.push(shifted.coefficient_vector(&basis));
                    }
                }
            }
        }
        let mut acc = ExactMatrix::from_rows(field.clone(), basis.len(), span_rows).rref();
        for r in 0..comp.basis.rows() {
            let mut v = comp.basis.row(r).to_vec();
            reduce_against_rref(&acc, &mut v);
            if v.iter().all(|c| field.is_zero(c)) {
                continue;
            }
            gens.push(Polynomial::from_coefficient_vector(field.clone(), &basis, comp.basis.row(r)));
            let stacked = keep_nonzero_rows(&acc)
                .stack_vertical(&ExactMatrix::from_rows(field.clone(), basis.len(), vec![v]));
            acc = stacked.rref();
        }
    }
    gens
}

// ---------------------------------------------------------------------------
// h-vectors
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HVector {
    values: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct HVectorPredicates {
    pub symmetric: bool,
    pub unimodal: bool,
    pub differentiable_first_half: bool,
    pub flawless: bool,
}

impl HVector {
    /// Trailing zeros are trimmed; every remaining entry must be positive and
    /// h_0 must be 1.
    pub fn new(mut values: Vec<usize>) -> Result<Self> {
        while values.last() == Some(&0) {
            values.pop();
        }
        if values.is_empty() || values[0] != 1 || values.iter().any(|&v| v == 0) {
            return Err(Error::Invalid(format!("not an h-vector: {values:?}")));
        }
        Ok(HVector { values })
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn socle_degree(&self) -> usize {
        self.values.len() - 1
    }

    pub fn total(&self) -> usize {
        self.values.iter().sum()
    }

    pub fn get(&self, i: usize) -> usize {
        self.values.get(i).copied().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        let e = self.socle_degree();
        (0..=e).all(|i| self.values[i] == self.values[e - i])
    }

    pub fn predicates(&self) -> HVectorPredicates {
        let e = self.socle_degree();
        let symmetric = self.is_symmetric();
        let mut unimodal = true;
        let mut decreased = false;
        for i in 1..=e {
            if self.values[i] > self.values[i - 1] && decreased {
                unimodal = false;
                break;
            }
            if self.values[i] < self.values[i - 1] {
                decreased = true;
            }
        }
        let flawless = (0..=e / 2).all(|i| self.values[i] <= self.values[e - i]);
        let half: Vec<usize> = self.values[..=e / 2].to_vec();
        let mut diff = Vec::with_capacity(half.len());
        let mut prev = 0usize;
        let mut nonneg = true;
        for &v in &half {
            if v < prev {
                nonneg = false;
                break;
            }
            diff.push(v - prev);
            prev = v;
        }
        let differentiable_first_half = nonneg && is_o_sequence(&diff);
        HVectorPredicates { symmetric, unimodal, differentiable_first_half, flawless }
    }
}

/// Macaulay growth: is this a valid Hilbert function of a standard graded
/// algebra (c_0 = 1 and c_{d+1} <= c_d^<d>)?
pub fn is_o_sequence(c: &[usize]) -> bool {
    if c.is_empty() || c[0] != 1 {
        return false;
    }
    for d in 1..c.len() - 1 {
        if c[d] == 0 {
            if c[d + 1] != 0 {
                return false;
            }
            continue;
        }
        if c[d + 1] > macaulay_bound(c[d], d) {
            return false;
        }
    }
    true
}

/// c^<d>: the Macaulay upper bound for the next value of an O-sequence with
/// value c in degree d >= 1.
pub fn macaulay_bound(c: usize, d: usize) -> usize {
    // d-th Macaulay representation c = sum C(a_i, i), a_d > a_{d-1} > ...
    let mut rest = c as u128;
    let mut i = d as u128;
    let mut bound: u128 = 0;
    while rest > 0 && i >= 1 {
        // largest a with C(a, i) <= rest
        let mut a = i;
        while binom(a + 1, i) <= rest {
            a += 1;
        }
        rest -= binom(a, i);
        bound += binom(a + 1, i + 1);
        i -= 1;
    }
    bound as usize
}

fn binom(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}

/// Convenience: the h-vector of the quotient by a complete intersection of
/// the given generator degrees, from the generating-series expansion
/// prod (1 + t + .. + t^(d_i - 1)).
pub fn complete_intersection_hvector(degrees: &[usize]) -> Vec<usize> {
    let mut series = vec![1usize];
    for &d in degrees {
        let factor: Vec<usize> = vec![1; d];
        let mut next = vec![0usize; series.len() + factor.len() - 1];
        for (i, &a) in series.iter().enumerate() {
            for (j, &b) in factor.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        series = next;
    }
    series
}
