//! Gorenstein and level constructions: annihilators of dual forms through
//! catalecticant kernels, compressed instances by random sampling, pfaffian
//! ideals of odd skew-symmetric matrices of forms, Gorenstein certification,
//! truncation, and level decompositions.
//!
//! The pfaffian sign convention is fixed so that Pf([[0,a],[-a,0]]) = a with
//! expansion along the first row, and the i-th principal pfaffian carries the
//! sign (-1)^(i+1) (1-based); that choice reproduces the quartic generator
//! x^4 + y^2 z^2 of the exceptional ideal with plus signs.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::ideal::{DegreeComponent, GradedIdeal, HVector};
use crate::lefschetz::{mult_map_rank, LinearForm};
use crate::linalg::ExactMatrix;
use crate::poly::{contract, dim_forms, monomials_of_degree, DualForm, MonomialBasis, Polynomial};

/// Odd-size skew-symmetric matrix of homogeneous forms (zero diagonal).
#[derive(Clone, PartialEq, Debug)]
pub struct SkewPolyMatrix {
    field: FieldSpec,
    nvars: usize,
    size: usize,
    entries: Vec<Polynomial>,
}

impl SkewPolyMatrix {
    /// Build from strict upper-triangle entries (0-based index pairs i < j);
    /// missing entries are zero.  Every entry must be homogeneous or zero.
    pub fn from_upper(
        field: FieldSpec,
        nvars: usize,
        size: usize,
        upper: Vec<((usize, usize), Polynomial)>,
    ) -> Result<Self> {
        let zero = Polynomial::zero(field.clone(), nvars);
        let mut entries = vec![zero; size * size];
        for ((i, j), p) in upper {
            if i >= j || j >= size {
                return Err(Error::Invalid(format!(
                    "upper-triangle index ({i},{j}) out of range for size {size}"
                )));
            }
            if p.field() != &field || p.nvars() != nvars {
                return Err(Error::FieldMismatch("matrix entry from a different ring".into()));
            }
            if !p.is_zero() && p.homogeneous_degree().is_none() {
                return Err(Error::Inhomogeneous);
            }
            entries[i * size + j] = p.clone();
            entries[j * size + i] = p.neg();
        }
        Ok(SkewPolyMatrix { field, nvars, size, entries })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.size + j]
    }

    fn set_entry(&mut self, i: usize, j: usize, p: Polynomial) {
        self.entries[i * self.size + j] = p;
    }

    /// row_i += f * row_j together with col_i += f * col_j, preserving skew
    /// symmetry.
    pub fn symmetric_op(&mut self, i: usize, j: usize, f: &Polynomial) {
        assert_ne!(i, j);
        for t in 0..self.size {
            let add = f.mul(self.entry(j, t));
            let v = self.entry(i, t).add(&add);
            self.set_entry(i, t, v);
        }
        for t in 0..self.size {
            let add = f.mul(self.entry(t, j));
            let v = self.entry(t, i).add(&add);
            self.set_entry(t, i, v);
        }
        // the diagonal picks up f*(m_ij + m_ji) = 0; keep it exactly zero
        self.set_entry(i, i, Polynomial::zero(self.field.clone(), self.nvars));
    }

    /// Simultaneous permutation of rows and columns.
    pub fn permute(&self, perm: &[usize]) -> SkewPolyMatrix {
        assert_eq!(perm.len(), self.size);
        let mut out = self.clone();
        for i in 0..self.size {
            for j in 0..self.size {
                out.set_entry(i, j, self.entry(perm[i], perm[j]).clone());
            }
        }
        out
    }

    /// Pfaffian of the principal submatrix on the given (even-count) indices,
    /// by expansion along its first row.
    pub fn pfaffian_of(&self, indices: &[usize]) -> Polynomial {
        assert!(indices.len() % 2 == 0);
        if indices.is_empty() {
            return Polynomial::constant(self.field.clone(), self.nvars, self.field.one());
        }
        let mut acc = Polynomial::zero(self.field.clone(), self.nvars);
        let v0 = indices[0];
        for s in 1..indices.len() {
            let vs = indices[s];
            let m = self.entry(v0, vs);
            if m.is_zero() {
                continue;
            }
            let rest: Vec<usize> =
                indices[1..].iter().copied().filter(|&t| t != vs).collect();
            let sub = self.pfaffian_of(&rest);
            let term = m.mul(&sub);
            acc = if s % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    /// Pfaffian of the whole (even-size) matrix; Pf(M)^2 = det(M).
    pub fn pfaffian(&self) -> Result<Polynomial> {
        if self.size % 2 != 0 {
            return Err(Error::Invalid("pfaffian needs an even-size matrix".into()));
        }
        let all: Vec<usize> = (0..self.size).collect();
        Ok(self.pfaffian_of(&all))
    }
}

/// The signed principal pfaffians f_i = (-1)^(i+1) Pf(M with row/col i
/// deleted), 1-based i, for an odd-size matrix.  Every nonzero pfaffian must
/// come out homogeneous, else the degree pattern is inconsistent.
pub fn principal_pfaffians(m: &SkewPolyMatrix) -> Result<Vec<Polynomial>> {
    if m.size() % 2 == 0 {
        return Err(Error::Invalid("principal pfaffians need an odd-size matrix".into()));
    }
    let mut out = Vec::with_capacity(m.size());
    for omit in 0..m.size() {
        let indices: Vec<usize> = (0..m.size()).filter(|&t| t != omit).collect();
        let pf = m.pfaffian_of(&indices);
        let signed = if omit % 2 == 0 { pf } else { pf.neg() };
        if !signed.is_zero() && signed.homogeneous_degree().is_none() {
            return Err(Error::InhomogeneousPfaffian { index: omit + 1 });
        }
        out.push(signed);
    }
    Ok(out)
}

/// Ideal generated by the principal pfaffians, zero generators dropped,
/// index order preserved.
pub fn pfaffian_ideal(m: &SkewPolyMatrix) -> Result<GradedIdeal> {
    let pfaffians = principal_pfaffians(m)?;
    let gens: Vec<Polynomial> = pfaffians.into_iter().filter(|p| !p.is_zero()).collect();
    GradedIdeal::new(m.field().clone(), m.nvars(), gens)
}

/// Random matrix in the codimension-3 structure pattern: quadrics in the
/// upper 4x4 block, linear forms in the last column (5x5).
pub fn random_be_matrix<R: Rng + ?Sized>(
    field: &FieldSpec,
    nvars: usize,
    rng: &mut R,
) -> SkewPolyMatrix {
    let mut upper = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            upper.push(((i, j), Polynomial::random_form(field, nvars, 2, rng)));
        }
    }
    for i in 0..4 {
        upper.push(((i, 4), Polynomial::random_form(field, nvars, 1, rng)));
    }
    SkewPolyMatrix::from_upper(field.clone(), nvars, 5, upper).expect("pattern is well-formed")
}

// ---------------------------------------------------------------------------
// Inverse systems
// ---------------------------------------------------------------------------

/// Catalecticant matrix of F in degree d: the map S_d -> E_{e-d}, g -> g . F,
/// rows indexed by the dual monomial basis in degree e-d.
pub fn catalecticant_matrix(f: &DualForm, d: usize) -> ExactMatrix {
    let field = f.field().clone();
    let e = f.degree();
    assert!(d <= e);
    let domain = MonomialBasis::new(f.nvars(), d);
    let codomain = MonomialBasis::new(f.nvars(), e - d);
    let mut mat = ExactMatrix::zeros(field.clone(), codomain.len(), domain.len());
    for (col, a) in domain.monomials.iter().enumerate() {
        for (row, b) in codomain.monomials.iter().enumerate() {
            // coefficient of X^B in x^a . F is the coefficient of X^(A) with A = B + a
            let target = b.mul(a);
            mat.set(row, col, f.coefficient(&target));
        }
    }
    mat
}

/// ann(F) as a graded ideal with degree bases cached up to
/// max(max_d, e + 1); the inverse-system representation is kept on the ideal.
pub fn annihilator(f: &DualForm, max_d: usize) -> Result<GradedIdeal> {
    if f.is_zero() {
        return Err(Error::Invalid("annihilator of the zero form".into()));
    }
    let field = f.field().clone();
    let nvars = f.nvars();
    let e = f.degree();
    let top = max_d.max(e + 1);
    let mut comps = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let ambient = dim_forms(nvars, d);
        let rows = if d > e {
            // everything of degree > e annihilates
            ExactMatrix::identity(field.clone(), ambient).row_vecs()
        } else {
            catalecticant_matrix(f, d).kernel_basis()
        };
        comps.push(DegreeComponent::from_rows(&field, d, ambient, rows));
    }
    GradedIdeal::from_components(field, nvars, comps, Some(f.clone()))
}

/// The compressed Hilbert function min(dim S_i, t * dim S_{e-i}).
pub fn compressed_hvector(nvars: usize, e: usize, t: usize) -> Vec<usize> {
    (0..=e).map(|i| dim_forms(nvars, i).min(t * dim_forms(nvars, e - i))).collect()
}

/// Sample dual forms of degree e until the annihilator attains the compressed
/// Hilbert function.
pub fn compressed_random(
    e: usize,
    field: &FieldSpec,
    nvars: usize,
    seed: u64,
    max_tries: usize,
) -> Result<(DualForm, GradedIdeal)> {
    let target = compressed_hvector(nvars, e, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = Vec::new();
    for _ in 0..max_tries {
        let f = DualForm::random_dense(field, nvars, e, &mut rng);
        let ideal = annihilator(&f, e + 1)?;
        let h = ideal.hilbert_function(e);
        if h == target {
            return Ok((f, ideal));
        }
        last = h;
    }
    Err(Error::NotCompressedAfterRetries { tries: max_tries, last })
}

/// Outcome of [`compress_toward`]: the perturbed form, its annihilator, and
/// the middle-map rank bookkeeping rank(new) <= rank(old) + s.
#[derive(Debug)]
pub struct Compression {
    pub form: DualForm,
    pub ideal: GradedIdeal,
    pub added_forms: usize,
    pub rank_before: usize,
    pub rank_after: usize,
}

/// Perturb F by s = dim S_d - h_d(ann F) divided powers of random linear
/// dual forms so the annihilator becomes compressed.  Each perturber has
/// rank-one catalecticants, which is what makes the middle-map rank grow by
/// at most s; the bound is verified on a sampled linear form.
pub fn compress_toward(f: &DualForm, seed: u64, max_tries: usize) -> Result<Compression> {
    let field = f.field().clone();
    let nvars = f.nvars();
    let e = f.degree();
    let d = e / 2;
    let ideal_before = annihilator(f, e + 1)?;
    let h_before = ideal_before.hilbert_function(e);
    let s = dim_forms(nvars, d) - h_before[d];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample_l = LinearForm::random(&field, nvars, &mut rng);
    let rank_before = mult_map_rank(&ideal_before, &sample_l, d, 1).rank;
    if s == 0 {
        return Ok(Compression {
            form: f.clone(),
            ideal: ideal_before,
            added_forms: 0,
            rank_before,
            rank_after: rank_before,
        });
    }
    let target = compressed_hvector(nvars, e, 1);
    let mut last = Vec::new();
    for _ in 0..max_tries {
        let mut g = f.clone();
        for _ in 0..s {
            let lambda: Vec<_> = (0..nvars).map(|_| field.random_element(&mut rng)).collect();
            if lambda.iter().all(|c| field.is_zero(c)) {
                continue;
            }
            let power = DualForm::divided_power_of_linear(&field, &lambda, e);
            let mut scalar = field.random_element(&mut rng);
            if field.is_zero(&scalar) {
                scalar = field.one();
            }
            g = g.add(&power.scale(&scalar));
        }
        let ideal = annihilator(&g, e + 1)?;
        let h = ideal.hilbert_function(e);
        if h == target {
            let rank_after = mult_map_rank(&ideal, &sample_l, d, 1).rank;
            if rank_after > rank_before + s {
                return Err(Error::Invalid(format!(
                    "rank bound violated: {rank_after} > {rank_before} + {s}"
                )));
            }
            return Ok(Compression { form: g, ideal, added_forms: s, rank_before, rank_after });
        }
        last = h;
    }
    Err(Error::NotCompressedAfterRetries { tries: max_tries, last })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GorensteinCertificate {
    pub hvector: HVector,
    pub socle_degree: usize,
    pub symmetric: bool,
    pub socle_dim_one: bool,
    /// h_1, the embedding dimension of the quotient.
    pub codim: usize,
    /// Socle dimension per degree 0..=socle degree.
    pub socle_dims: Vec<usize>,
}

impl GorensteinCertificate {
    pub fn certified(&self) -> bool {
        self.symmetric && self.socle_dim_one
    }
}

/// Artinian check, h-vector, symmetry, and socle dimensions; Gorenstein iff
/// the socle is 1-dimensional and concentrated in the socle degree.
pub fn certify_gorenstein(ideal: &GradedIdeal, probe_bound: usize) -> Result<GorensteinCertificate> {
    let hvector = ideal.hvector(probe_bound).map_err(|e| match e {
        Error::ArtinianInconclusive { .. } => Error::NotArtinian,
        other => other,
    })?;
    let e = hvector.socle_degree();
    let socle_dims = ideal.socle_dims(e);
    let socle_dim_one =
        socle_dims[e] == 1 && socle_dims[..e].iter().all(|&d| d == 0);
    Ok(GorensteinCertificate {
        symmetric: hvector.is_symmetric(),
        socle_degree: e,
        socle_dim_one,
        codim: hvector.get(1),
        socle_dims,
        hvector,
    })
}

/// I plus all monomials of degree e_new + 1: the quotient truncated at
/// degree e_new.
pub fn truncate_algebra(ideal: &GradedIdeal, e_new: usize) -> Result<GradedIdeal> {
    let field = ideal.field().clone();
    let nvars = ideal.nvars();
    let extra: Vec<Polynomial> = monomials_of_degree(nvars, e_new + 1)
        .into_iter()
        .map(|m| Polynomial::from_terms(field.clone(), nvars, [(m, field.one())]))
        .collect();
    ideal.adjoin(extra)
}

#[derive(Debug)]
pub struct LevelDecomposition {
    pub level: GradedIdeal,
    pub factors: Vec<GradedIdeal>,
    /// dim of the socle of the level algebra in the common degree e
    /// (generically the type t; reported, not enforced).
    pub socle_dim_top: usize,
    pub expected_type: usize,
}

/// Level algebra from dual forms: the degreewise intersection of the t
/// annihilators, with the factors returned alongside.
pub fn level_decompose(forms: &[DualForm], max_d: usize) -> Result<LevelDecomposition> {
    let first = forms.first().ok_or_else(|| Error::Invalid("no dual forms".into()))?;
    let field = first.field().clone();
    let nvars = first.nvars();
    let e = first.degree();
    for f in forms {
        if f.field() != &field || f.nvars() != nvars {
            return Err(Error::FieldMismatch("dual forms from different duals".into()));
        }
        if f.degree() != e {
            return Err(Error::Invalid("dual forms must share one degree".into()));
        }
    }
    // linear independence of the forms in E_e
    let basis = MonomialBasis::new(nvars, e);
    let rows: Vec<Vec<FieldElement>> = forms.iter().map(|f| f.coefficient_vector(&basis)).collect();
    let rank = ExactMatrix::from_rows(field.clone(), basis.len(), rows).rank();
    if rank != forms.len() {
        return Err(Error::DependentDualForms);
    }
    let factors: Vec<GradedIdeal> =
        forms.iter().map(|f| annihilator(f, e + 1)).collect::<Result<_>>()?;
    let refs: Vec<&GradedIdeal> = factors.iter().collect();
    let top = max_d.max(e + 1);
    let mut comps = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let inter = crate::ideal::intersect_ideals(&refs, d)?;
        comps.push(DegreeComponent::from_rows(
            &field,
            d,
            dim_forms(nvars, d),
            inter.row_vecs(),
        ));
    }
    let level = GradedIdeal::from_components(field, nvars, comps, None)?;
    let socle_dim_top = level.socle_basis(e).len();
    Ok(LevelDecomposition { level, factors, socle_dim_top, expected_type: forms.len() })
}

/// The degree-e component of the inverse system of an ideal: the dual forms
/// killed by every generator.  For a Gorenstein quotient of socle degree e
/// this space is one-dimensional and recovers the dual generator.
pub fn inverse_system_component(ideal: &GradedIdeal, e: usize) -> Result<Vec<DualForm>> {
    let field = ideal.field().clone();
    let nvars = ideal.nvars();
    let dual_basis = MonomialBasis::new(nvars, e);
    let mut rows = Vec::new();
    for g in ideal.generators() {
        let dg = g.homogeneous_degree().ok_or(Error::Inhomogeneous)?;
        if dg > e {
            continue;
        }
        let out_basis = MonomialBasis::new(nvars, e - dg);
        for b in &out_basis.monomials {
            // constraint row: coefficient of X^b in g . F = sum_a g_a F_{a+b}
            let mut row = vec![field.zero(); dual_basis.len()];
            for (a, c) in g.terms() {
                let target = a.mul(b);
                let idx = dual_basis.index_of(&target).expect("degree bookkeeping");
                row[idx] = field.add(&row[idx], c);
            }
            rows.push(row);
        }
    }
    let mat = ExactMatrix::from_rows(field.clone(), dual_basis.len(), rows);
    let kernel = mat.kernel_basis();
    Ok(kernel
        .into_iter()
        .map(|v| DualForm::from_coefficient_vector(field.clone(), &dual_basis, &v))
        .collect())
}

/// Recover the dual form of a Gorenstein ideal (unique up to scalar) so
/// pfaffian-built ideals can feed the inverse-system constructions.
pub fn recover_dual_form(ideal: &GradedIdeal, e: usize) -> Result<DualForm> {
    let comp = inverse_system_component(ideal, e)?;
    if comp.len() != 1 {
        return Err(Error::RequiresInverseSystem);
    }
    Ok(comp.into_iter().next().unwrap())
}

/// A Gorenstein quotient of socle degree e-1 sampled from the inverse system:
/// ann(l . F) for a random linear l.  The input must carry its dual form.
pub fn socle_quotient_sample(ideal: &GradedIdeal, seed: u64) -> Result<GradedIdeal> {
    let f = ideal.inverse_system().ok_or(Error::RequiresInverseSystem)?.clone();
    let field = ideal.field().clone();
    let nvars = ideal.nvars();
    let e = f.degree();
    if e == 0 {
        return Err(Error::Invalid("socle degree is already zero".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..64 {
        let l = LinearForm::random(&field, nvars, &mut rng);
        let g = contract(&l.to_polynomial(), &f)?;
        if !g.is_zero() {
            return annihilator(&g, e);
        }
    }
    Err(Error::Invalid("every sampled contraction vanished".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lefschetz::linear_form_from_ints;
    use crate::poly::parse_polynomial;

    fn pp(field: &FieldSpec, s: &str) -> Polynomial {
        parse_polynomial(s, field, &["x", "y", "z"]).unwrap()
    }

    fn dual(field: &FieldSpec, s: &str) -> DualForm {
        DualForm::from_polynomial(&pp(field, s)).unwrap()
    }

    /// The structure matrix of the exceptional ideal: q1 = x^2, q3 = y^2,
    /// q4 = z^2, q2 = q5 = 0, q6 = x^2, last column (y, z, 0, 0).
    fn exceptional_matrix(field: &FieldSpec) -> SkewPolyMatrix {
        SkewPolyMatrix::from_upper(
            field.clone(),
            3,
            5,
            vec![
                ((0, 1), pp(field, "x^2")),
                ((0, 3), pp(field, "z^2")),
                ((1, 2), pp(field, "y^2")),
                ((2, 3), pp(field, "x^2")),
                ((0, 4), pp(field, "y")),
                ((1, 4), pp(field, "z")),
            ],
        )
        .unwrap()
    }

    #[test]
    fn small_pfaffians() {
        let q = FieldSpec::rationals();
        let m = SkewPolyMatrix::from_upper(q.clone(), 3, 2, vec![((0, 1), pp(&q, "x"))]).unwrap();
        assert_eq!(m.pfaffian().unwrap(), pp(&q, "x"));

        // 4x4 classical formula af - be + cd on scalar-style entries
        let m = SkewPolyMatrix::from_upper(
            q.clone(),
            3,
            4,
            vec![
                ((0, 1), pp(&q, "x")),
                ((0, 2), pp(&q, "y")),
                ((0, 3), pp(&q, "z")),
                ((1, 2), pp(&q, "x + y")),
                ((1, 3), pp(&q, "y + z")),
                ((2, 3), pp(&q, "x + z")),
            ],
        )
        .unwrap();
        let expect = pp(&q, "x").mul(&pp(&q, "x + z"))
            .sub(&pp(&q, "y").mul(&pp(&q, "y + z")))
            .add(&pp(&q, "z").mul(&pp(&q, "x + y")));
        assert_eq!(m.pfaffian().unwrap(), expect);
    }

    #[test]
    fn pfaffian_squares_to_determinant() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for spec in [FieldSpec::rationals(), FieldSpec::prime(7).unwrap(), FieldSpec::ext_auto(3, 2).unwrap()] {
            for _ in 0..25 {
                let n = if rng.gen_bool(0.5) { 2 } else { 4 };
                let mut upper = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        let c = spec.random_element(&mut rng);
                        upper.push((
                            (i, j),
                            Polynomial::constant(spec.clone(), 3, c),
                        ));
                    }
                }
                let m = SkewPolyMatrix::from_upper(spec.clone(), 3, n, upper).unwrap();
                let pf = m.pfaffian().unwrap();
                // determinant via the scalar matrix
                let mut sm = ExactMatrix::zeros(spec.clone(), n, n);
                for i in 0..n {
                    for j in 0..n {
                        let e = m.entry(i, j);
                        let c = if e.is_zero() {
                            spec.zero()
                        } else {
                            e.terms().next().unwrap().1.clone()
                        };
                        sm.set(i, j, c);
                    }
                }
                let det = sm.determinant().unwrap();
                let pf_c = if pf.is_zero() {
                    spec.zero()
                } else {
                    pf.terms().next().unwrap().1.clone()
                };
                assert_eq!(spec.mul(&pf_c, &pf_c), det);
            }
        }
    }

    #[test]
    fn exceptional_matrix_reproduces_the_ideal() {
        let f3 = FieldSpec::prime(3).unwrap();
        let m = exceptional_matrix(&f3);
        let pfs = principal_pfaffians(&m).unwrap();
        // the quartic comes out with plus signs exactly
        assert_eq!(pfs[4], pp(&f3, "x^4 + y^2*z^2"));
        let ideal = pfaffian_ideal(&m).unwrap();
        let reference = GradedIdeal::new(
            f3.clone(),
            3,
            vec![
                pp(&f3, "x^2*y"),
                pp(&f3, "x^2*z"),
                pp(&f3, "y^3"),
                pp(&f3, "z^3"),
                pp(&f3, "x^4 + y^2*z^2"),
            ],
        )
        .unwrap();
        for d in 0..=6 {
            assert_eq!(
                ideal.degree_component(d).basis,
                reference.degree_component(d).basis,
                "degree {d}"
            );
        }
    }

    #[test]
    fn curvilinear_example_matrix() {
        let q = FieldSpec::rationals();
        let m = SkewPolyMatrix::from_upper(
            q.clone(),
            3,
            5,
            vec![
                ((0, 3), pp(&q, "x^2")),
                ((0, 4), pp(&q, "y")),
                ((1, 2), pp(&q, "x^2")),
                ((1, 3), pp(&q, "y^2")),
                ((1, 4), pp(&q, "z")),
                ((2, 3), pp(&q, "z^2")),
            ],
        )
        .unwrap();
        let pfs = principal_pfaffians(&m).unwrap();
        let up_to_sign = |target: &Polynomial| {
            pfs.iter().any(|p| p == target || *p == target.neg())
        };
        // three cubics of the length-7 scheme appear among the pfaffians
        assert!(up_to_sign(&pp(&q, "z^3")));
        assert!(up_to_sign(&pp(&q, "y*z^2")));
        assert!(up_to_sign(&pp(&q, "x^2*z - y^3")));
        // plus the cubic and quartic completions
        assert!(up_to_sign(&pp(&q, "x^2*y")));
        assert!(up_to_sign(&pp(&q, "x^4")));
    }

    #[test]
    fn degenerate_matrix_few_generators() {
        let q = FieldSpec::rationals();
        // a zero row/column pair wipes out most pfaffians
        let m = SkewPolyMatrix::from_upper(
            q.clone(),
            3,
            5,
            vec![((0, 1), pp(&q, "x^2")), ((2, 3), pp(&q, "y^2")), ((0, 4), pp(&q, "z"))],
        )
        .unwrap();
        let ideal = pfaffian_ideal(&m).unwrap();
        assert!(ideal.generators().len() <= 2);
    }

    #[test]
    fn inhomogeneous_pattern_rejected() {
        let q = FieldSpec::rationals();
        // mixing a linear and a cubic in positions that share a pfaffian
        let m = SkewPolyMatrix::from_upper(
            q.clone(),
            3,
            5,
            vec![
                ((0, 1), pp(&q, "x")),
                ((2, 3), pp(&q, "y^3")),
                ((0, 2), pp(&q, "x^2")),
                ((1, 3), pp(&q, "z^2")),
                ((0, 4), pp(&q, "z")),
                ((1, 4), pp(&q, "y")),
                ((2, 4), pp(&q, "x")),
            ],
        )
        .unwrap();
        assert!(matches!(
            principal_pfaffians(&m),
            Err(Error::InhomogeneousPfaffian { .. })
        ));
    }

    #[test]
    fn annihilator_of_pure_power() {
        let f101 = FieldSpec::prime(101).unwrap();
        let f = dual(&f101, "x^5");
        let ideal = annihilator(&f, 6).unwrap();
        assert_eq!(ideal.hilbert_function(6), vec![1, 1, 1, 1, 1, 1, 0]);
        // generators: y, z, and the power x^6
        let degs: Vec<usize> =
            ideal.generators().iter().map(|g| g.homogeneous_degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 1, 6]);
    }

    #[test]
    fn annihilator_of_monomial_quintic() {
        // catalecticant ranks of X^2 Y^2 Z give (1,3,5,5,3,1)
        let f101 = FieldSpec::prime(101).unwrap();
        let f = dual(&f101, "x^2*y^2*z");
        let ideal = annihilator(&f, 6).unwrap();
        assert_eq!(ideal.hilbert_function(5), vec![1, 3, 5, 5, 3, 1]);
    }

    #[test]
    fn random_quintic_annihilator_is_compressed() {
        let f = FieldSpec::prime(31991).unwrap();
        let (_, ideal) = compressed_random(5, &f, 3, 0xC0FFEE, 20).unwrap();
        assert_eq!(ideal.hilbert_function(5), vec![1, 3, 6, 6, 3, 1]);
        let cert = certify_gorenstein(&ideal, 10).unwrap();
        assert!(cert.certified());
        assert_eq!(cert.codim, 3);
    }

    #[test]
    fn compressed_targets() {
        assert_eq!(compressed_hvector(3, 5, 1), vec![1, 3, 6, 6, 3, 1]);
        assert_eq!(compressed_hvector(3, 3, 1), vec![1, 3, 3, 1]);
        assert_eq!(compressed_hvector(3, 1, 1), vec![1, 1]);
        // type 2 at socle degree 5
        assert_eq!(compressed_hvector(3, 5, 2), vec![1, 3, 6, 10, 6, 2]);
    }

    #[test]
    fn apolarity_cross_check() {
        // dim (S/ann F)_d equals the catalecticant rank in degree d
        let f101 = FieldSpec::prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let f = DualForm::random_dense(&f101, 3, 5, &mut rng);
            let ideal = annihilator(&f, 6).unwrap();
            let h = ideal.hilbert_function(5);
            for d in 0..=5 {
                assert_eq!(h[d], catalecticant_matrix(&f, d).rank(), "degree {d}");
            }
            // symmetry of the h-vector comes with the pairing
            let hv = HVector::new(h).unwrap();
            assert!(hv.is_symmetric());
        }
    }

    #[test]
    fn compress_toward_pure_power() {
        let f101 = FieldSpec::prime(101).unwrap();
        let f = dual(&f101, "x^5");
        let c = compress_toward(&f, 9, 20).unwrap();
        assert_eq!(c.added_forms, 5); // s = dim S_2 - 1
        assert_eq!(c.ideal.hilbert_function(5), vec![1, 3, 6, 6, 3, 1]);
        assert!(c.rank_after <= c.rank_before + c.added_forms);
    }

    #[test]
    fn compress_toward_is_identity_on_compressed() {
        let f101 = FieldSpec::prime(101).unwrap();
        let (f, _) = compressed_random(5, &f101, 3, 7, 20).unwrap();
        let c = compress_toward(&f, 11, 5).unwrap();
        assert_eq!(c.added_forms, 0);
        assert_eq!(c.form, f);
    }

    #[test]
    fn compress_toward_cubic() {
        let f101 = FieldSpec::prime(101).unwrap();
        let f = dual(&f101, "x^3");
        let c = compress_toward(&f, 23, 20).unwrap();
        assert_eq!(c.added_forms, 2); // s = 3 - 1
        assert_eq!(c.ideal.hilbert_function(3), vec![1, 3, 3, 1]);
    }

    #[test]
    fn certify_rejects_level_type_two() {
        let q = FieldSpec::rationals();
        let i = GradedIdeal::new(
            q.clone(),
            3,
            vec![pp(&q, "x^2"), pp(&q, "x*y"), pp(&q, "y^2"), pp(&q, "z")],
        )
        .unwrap();
        let cert = certify_gorenstein(&i, 6).unwrap();
        assert!(!cert.certified());
        assert_eq!(cert.socle_dims, vec![0, 2]);
    }

    #[test]
    fn certify_233() {
        let f7 = FieldSpec::prime(7).unwrap();
        let i =
            GradedIdeal::new(f7.clone(), 3, vec![pp(&f7, "x^2"), pp(&f7, "y^3"), pp(&f7, "z^3")])
                .unwrap();
        let cert = certify_gorenstein(&i, 10).unwrap();
        assert!(cert.certified());
        assert_eq!(cert.hvector.values(), &[1, 3, 5, 5, 3, 1]);
    }

    #[test]
    fn truncation_hvectors() {
        let f101 = FieldSpec::prime(101).unwrap();
        let (_, ideal) = compressed_random(5, &f101, 3, 1, 20).unwrap();
        let t4 = truncate_algebra(&ideal, 4).unwrap();
        assert_eq!(t4.hilbert_function(5), vec![1, 3, 6, 6, 3, 0]);
        // type = dim of the new top degree
        assert_eq!(t4.socle_basis(4).len(), 3);
        let t5 = truncate_algebra(&ideal, 5).unwrap();
        assert_eq!(t5.hilbert_function(5), ideal.hilbert_function(5));
        let t0 = truncate_algebra(&ideal, 0).unwrap();
        assert_eq!(t0.hilbert_function(1), vec![1, 0]);
    }

    #[test]
    fn level_decompose_cubes() {
        let f101 = FieldSpec::prime(101).unwrap();
        let forms = vec![dual(&f101, "x^3"), dual(&f101, "y^3"), dual(&f101, "z^3")];
        let dec = level_decompose(&forms, 4).unwrap();
        assert_eq!(dec.factors.len(), 3);
        // degree-2 component of the intersection is spanned by xy, xz, yz
        let comp = dec.level.degree_component(2);
        assert_eq!(comp.quotient_dim(), 3);
        let monos = dec.level.quotient_monomials(2);
        let names: Vec<String> = monos.iter().map(|m| {
            crate::poly::format_polynomial(
                &Polynomial::from_terms(f101.clone(), 3, [(m.clone(), f101.one())]),
                &crate::poly::default_var_names(3),
            )
        }).collect();
        assert_eq!(names, vec!["x^2", "y^2", "z^2"]);
        // i.e. the ideal's degree-2 piece is the span of the mixed monomials
        let basis = MonomialBasis::new(3, 2);
        let in_ideal: Vec<bool> = basis
            .monomials
            .iter()
            .map(|m| {
                let p = Polynomial::from_terms(f101.clone(), 3, [(m.clone(), f101.one())]);
                dec.level.quotient_coords(&p, 2).iter().all(|c| f101.is_zero(c))
            })
            .collect();
        // grevlex order: x^2, xy, y^2, xz, yz, z^2
        assert_eq!(in_ideal, vec![false, true, false, true, true, false]);
    }

    #[test]
    fn level_decompose_random_type_two() {
        let f101 = FieldSpec::prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let forms =
            vec![DualForm::random_dense(&f101, 3, 5, &mut rng), DualForm::random_dense(&f101, 3, 5, &mut rng)];
        let dec = level_decompose(&forms, 6).unwrap();
        // the compressed type-2 profile min(dim S_i, 2 dim S_{5-i})
        assert_eq!(dec.level.hilbert_function(5), vec![1, 3, 6, 10, 6, 2]);
        assert_eq!(dec.socle_dim_top, 2);
        // single form: level = factor
        let one = level_decompose(&forms[..1], 6).unwrap();
        for d in 0..=6 {
            assert_eq!(
                one.level.degree_component(d).basis,
                one.factors[0].degree_component(d).basis
            );
        }
    }

    #[test]
    fn dependent_forms_rejected() {
        let f101 = FieldSpec::prime(101).unwrap();
        let f = dual(&f101, "x^3");
        let g = dual(&f101, "2*x^3");
        assert!(matches!(level_decompose(&[f, g], 4), Err(Error::DependentDualForms)));
    }

    #[test]
    fn recover_dual_form_closes_the_loop() {
        let f3 = FieldSpec::prime(3).unwrap();
        let ideal = pfaffian_ideal(&exceptional_matrix(&f3)).unwrap();
        let f = recover_dual_form(&ideal, 5).unwrap();
        let back = annihilator(&f, 6).unwrap();
        for d in 0..=6 {
            assert_eq!(back.degree_component(d).basis, ideal.degree_component(d).basis);
        }
    }

    #[test]
    fn socle_quotient_sampling() {
        let f101 = FieldSpec::prime(101).unwrap();
        // ann(X^5) with dual form attached: contracting by a linear form
        // drops the socle degree by one
        let f = dual(&f101, "x^5");
        let ideal = annihilator(&f, 6).unwrap();
        let q = socle_quotient_sample(&ideal, 3).unwrap();
        let h = q.hilbert_function(5);
        assert_eq!(h[0], 1);
        assert_eq!(h[4] > 0, true);
        assert_eq!(h[5], 0);
        let cert = certify_gorenstein(&q, 8).unwrap();
        assert!(cert.certified());

        // a compressed quintic's quotient: h-vector recorded by the engine
        let (g, gideal) = compressed_random(5, &f101, 3, 21, 20).unwrap();
        let _ = g;
        let qg = socle_quotient_sample(&gideal, 5).unwrap();
        let cert = certify_gorenstein(&qg, 8).unwrap();
        assert!(cert.certified());
        assert_eq!(cert.socle_degree, 4);

        // ideals without an inverse system are refused
        let plain = GradedIdeal::new(
            f101.clone(),
            3,
            vec![pp(&f101, "x^2"), pp(&f101, "y^2"), pp(&f101, "z^2")],
        )
        .unwrap();
        assert!(matches!(socle_quotient_sample(&plain, 0), Err(Error::RequiresInverseSystem)));
    }

    #[test]
    fn truncate_then_decompose_factors() {
        // truncation of a compressed quintic at 4 is level of type 3; dual
        // forms of its degree-4 inverse system give Gorenstein factors of
        // socle degree 4 and codimension at most 3
        let f101 = FieldSpec::prime(101).unwrap();
        let (_, ideal) = compressed_random(5, &f101, 3, 31, 20).unwrap();
        let trunc = truncate_algebra(&ideal, 4).unwrap();
        assert_eq!(trunc.socle_basis(4).len(), 3);
        let comp = inverse_system_component(&trunc, 4).unwrap();
        assert_eq!(comp.len(), 3);
        for f in &comp {
            let factor = annihilator(f, 5).unwrap();
            let cert = certify_gorenstein(&factor, 8).unwrap();
            assert!(cert.certified());
            assert_eq!(cert.socle_degree, 4);
            assert!(cert.codim <= 3);
        }
    }

    #[test]
    fn pfaffian_gorenstein_filter_yield() {
        // random structure-pattern matrices whose h-vector comes out
        // (1,3,6,6,3,1) certify Gorenstein
        let f101 = FieldSpec::prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let mut hits = 0;
        let mut tried = 0;
        while hits < 10 && tried < 200 {
            tried += 1;
            let m = random_be_matrix(&f101, 3, &mut rng);
            let Ok(ideal) = pfaffian_ideal(&m) else { continue };
            let Ok(h) = ideal.hvector(8) else { continue };
            if h.values() == [1, 3, 6, 6, 3, 1] {
                hits += 1;
                let cert = certify_gorenstein(&ideal, 8).unwrap();
                assert!(cert.certified());
            }
        }
        assert!(hits >= 10, "only {hits} Gorenstein instances in {tried} tries");
    }
}
