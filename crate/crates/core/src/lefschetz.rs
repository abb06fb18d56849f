//! Weak and Strong Lefschetz deciders: exact ranks of multiplication maps
//! x L^m between canonical quotient bases, WLP/SLP verdicts with witnesses or
//! exhaustive failure certificates, Jordan partitions of the nilpotent
//! operator x L, and restriction dimensions behind the Green-type rank bound.
//!
//! Over a finite field the exhaustive strategy scans all q^2+q+1 normalized
//! forms and can certify failure.  Over Q failure can never be certified by
//! sampling, so an unsuccessful random search reports `Undetermined`.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::ideal::{DegreeComponent, GradedIdeal, HVector};
use crate::linalg::ExactMatrix;
use crate::poly::{Monomial, MonomialBasis, Polynomial};

/// Probe bound used when certifying an input artinian before rank scans.
pub const DEFAULT_ARTINIAN_PROBE: usize = 24;

/// A nonzero linear form, normalized so the first nonzero coefficient is 1
/// (the canonical representative of its projective class).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearForm {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl LinearForm {
    pub fn new(field: FieldSpec, coeffs: Vec<FieldElement>) -> Result<Self> {
        let first = coeffs.iter().position(|c| !field.is_zero(c));
        let Some(first) = first else {
            return Err(Error::Invalid("zero linear form".into()));
        };
        let inv = field.inv(&coeffs[first])?;
        let coeffs = coeffs.iter().map(|c| field.mul(c, &inv)).collect();
        Ok(LinearForm { field, coeffs })
    }

    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        if p.homogeneous_degree() != Some(1) {
            return Err(Error::Inhomogeneous);
        }
        let basis = MonomialBasis::new(p.nvars(), 1);
        LinearForm::new(p.field().clone(), p.coefficient_vector(&basis))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Coefficients in the degree-1 grevlex basis order (x, y, z).
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let nvars = self.coeffs.len();
        let basis = MonomialBasis::new(nvars, 1);
        Polynomial::from_coefficient_vector(self.field.clone(), &basis, &self.coeffs)
    }

    pub fn random<R: Rng + ?Sized>(field: &FieldSpec, nvars: usize, rng: &mut R) -> Self {
        loop {
            let coeffs: Vec<FieldElement> =
                (0..nvars).map(|_| field.random_element(rng)).collect();
            if let Ok(l) = LinearForm::new(field.clone(), coeffs) {
                return l;
            }
        }
    }

    /// All normalized linear forms over a finite field: q^2 + q + 1 of them
    /// for three variables.
    pub fn enumerate_normalized(field: &FieldSpec, nvars: usize) -> Result<Vec<LinearForm>> {
        if !field.is_finite() {
            return Err(Error::Invalid("cannot enumerate forms over an infinite field".into()));
        }
        let order = field.order().unwrap();
        let mut out = Vec::new();
        for lead in 0..nvars {
            let tail = nvars - lead - 1;
            let count = order.pow(tail as u32);
            for idx in 0..count {
                let mut coeffs = vec![field.zero(); nvars];
                coeffs[lead] = field.one();
                let mut rest = idx;
                for t in 0..tail {
                    coeffs[lead + 1 + t] = field.element_from_index(rest % order);
                    rest /= order;
                }
                out.push(LinearForm { field: field.clone(), coeffs });
            }
        }
        Ok(out)
    }
}

impl std::fmt::Display for LinearForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MultMapRank {
    pub rank: usize,
    pub domain_dim: usize,
    pub codomain_dim: usize,
}

impl MultMapRank {
    pub fn is_maximal(&self) -> bool {
        self.rank == self.domain_dim.min(self.codomain_dim)
    }
}

/// Matrix of multiplication by `multiplier` from the quotient in one degree
/// to the quotient in another, in the canonical standard-monomial coordinates.
pub fn mult_map_matrix(
    field: &FieldSpec,
    nvars: usize,
    comp_i: &DegreeComponent,
    comp_j: &DegreeComponent,
    multiplier: &Polynomial,
) -> ExactMatrix {
    let basis_i = MonomialBasis::new(nvars, comp_i.degree);
    let basis_j = MonomialBasis::new(nvars, comp_j.degree);
    let std_i = comp_i.standard_cols();
    let std_j = comp_j.standard_cols();
    let mut mat = ExactMatrix::zeros(field.clone(), std_j.len(), std_i.len());
    for (col, &ci) in std_i.iter().enumerate() {
        let m = &basis_i.monomials[ci];
        let prod = multiplier.mul_monomial(m, &field.one());
        let mut v = prod.coefficient_vector(&basis_j);
        comp_j.reduce(&mut v);
        for (row, &cj) in std_j.iter().enumerate() {
            mat.set(row, col, v[cj].clone());
        }
    }
    mat
}

/// Exact rank of x L^m : [A]_i -> [A]_{i+m}.
pub fn mult_map_rank(ideal: &GradedIdeal, l: &LinearForm, i: usize, m: usize) -> MultMapRank {
    let comp_i = ideal.degree_component(i);
    let comp_j = ideal.degree_component(i + m);
    let multiplier = l.to_polynomial().pow(m);
    let mat = mult_map_matrix(ideal.field(), ideal.nvars(), &comp_i, &comp_j, &multiplier);
    MultMapRank {
        rank: mat.rank(),
        domain_dim: comp_i.quotient_dim(),
        codomain_dim: comp_j.quotient_dim(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    Random { trials: usize, seed: u64 },
    Exhaustive,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Holds,
    Fails,
    Undetermined,
}

/// One checked multiplication map x L^(j-i) : [A]_i -> [A]_j.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RankEntry {
    pub from_degree: usize,
    pub to_degree: usize,
    pub rank: usize,
    /// dim [A]_j
    pub rows: usize,
    /// dim [A]_i
    pub cols: usize,
}

impl RankEntry {
    pub fn is_maximal(&self) -> bool {
        self.rank == self.rows.min(self.cols)
    }
}

/// Rank profile of one linear form that misses maximal rank somewhere.
#[derive(Clone, Debug)]
pub struct FailedForm {
    pub form: LinearForm,
    pub ranks: Vec<RankEntry>,
}

#[derive(Clone, Debug)]
pub struct WlpReport {
    pub verdict: Verdict,
    pub witness: Option<LinearForm>,
    /// Per-map ranks for the witness (verdict Holds) or for the best
    /// candidate seen otherwise.
    pub per_degree_ranks: Vec<RankEntry>,
    pub trials: usize,
    pub exhaustive: bool,
    /// On an exhaustive failure: the rank profile of every normalized form.
    pub failure_table: Vec<FailedForm>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct WlpOptions {
    /// For Gorenstein inputs with symmetric h-vector, check only the middle
    /// multiplication map(s); the full per-degree scan is the default.
    pub gorenstein_middle_only: bool,
    pub probe_bound: Option<usize>,
}

fn candidate_forms(
    field: &FieldSpec,
    nvars: usize,
    strategy: Strategy,
) -> Result<(Vec<LinearForm>, bool)> {
    match strategy {
        Strategy::Exhaustive => Ok((LinearForm::enumerate_normalized(field, nvars)?, true)),
        Strategy::Random { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let forms = (0..trials).map(|_| LinearForm::random(field, nvars, &mut rng)).collect();
            Ok((forms, false))
        }
    }
}

fn wlp_pairs(h: &HVector, middle_only: bool) -> Vec<(usize, usize)> {
    let e = h.socle_degree();
    if middle_only && h.is_symmetric() && e >= 1 {
        if e % 2 == 1 {
            let d = e / 2;
            return vec![(d, d + 1)];
        }
        let d = e / 2;
        return vec![(d - 1, d), (d, d + 1)];
    }
    (0..e).map(|i| (i, i + 1)).collect()
}

fn rank_profile(ideal: &GradedIdeal, l: &LinearForm, pairs: &[(usize, usize)]) -> Vec<RankEntry> {
    pairs
        .iter()
        .map(|&(i, j)| {
            let r = mult_map_rank(ideal, l, i, j - i);
            RankEntry {
                from_degree: i,
                to_degree: j,
                rank: r.rank,
                rows: r.codomain_dim,
                cols: r.domain_dim,
            }
        })
        .collect()
}

fn maximal_rank_scan(
    ideal: &GradedIdeal,
    pairs: &[(usize, usize)],
    strategy: Strategy,
) -> Result<WlpReport> {
    let (forms, exhaustive) = candidate_forms(ideal.field(), ideal.nvars(), strategy)?;
    let trials = forms.len();
    let mut best: Option<Vec<RankEntry>> = None;
    let mut failures = Vec::new();
    for form in forms {
        let profile = rank_profile(ideal, &form, pairs);
        if profile.iter().all(RankEntry::is_maximal) {
            return Ok(WlpReport {
                verdict: Verdict::Holds,
                witness: Some(form),
                per_degree_ranks: profile,
                trials,
                exhaustive,
                failure_table: Vec::new(),
            });
        }
        let total: usize = profile.iter().map(|r| r.rank).sum();
        let best_total = best.as_ref().map(|p| p.iter().map(|r| r.rank).sum::<usize>());
        if best_total.map_or(true, |b| total > b) {
            best = Some(profile.clone());
        }
        if exhaustive {
            failures.push(FailedForm { form, ranks: profile });
        }
    }
    // no witness on failure: per_degree_ranks keeps the best profile seen
    Ok(WlpReport {
        verdict: if exhaustive { Verdict::Fails } else { Verdict::Undetermined },
        witness: None,
        per_degree_ranks: best.unwrap_or_default(),
        trials,
        exhaustive,
        failure_table: failures,
    })
}

/// WLP verdict for an artinian quotient.  `Holds` comes with a witness;
/// `Fails` only from the exhaustive strategy over a finite field;
/// `Undetermined` when random sampling found no witness (the only honest
/// answer over Q).
pub fn wlp_check(
    ideal: &GradedIdeal,
    strategy: Strategy,
    options: WlpOptions,
) -> Result<WlpReport> {
    let probe = options.probe_bound.unwrap_or(DEFAULT_ARTINIAN_PROBE);
    let h = ideal.hvector(probe)?;
    let pairs = wlp_pairs(&h, options.gorenstein_middle_only);
    maximal_rank_scan(ideal, &pairs, strategy)
}

/// SLP verdict: maximal rank of x L^(j-i) for every pair i < j <= socle
/// degree, including the top pairs like L^3: A_1 -> A_4 and L^5: A_0 -> A_5
/// at socle degree five.
pub fn slp_check(ideal: &GradedIdeal, strategy: Strategy) -> Result<WlpReport> {
    let h = ideal.hvector(DEFAULT_ARTINIAN_PROBE)?;
    let e = h.socle_degree();
    let mut pairs = Vec::new();
    for i in 0..e {
        for j in i + 1..=e {
            pairs.push((i, j));
        }
    }
    maximal_rank_scan(ideal, &pairs, strategy)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JordanPartition {
    parts: Vec<usize>,
}

impl JordanPartition {
    pub fn from_parts(parts: Vec<usize>) -> Self {
        let mut parts = parts;
        parts.sort_unstable_by(|a, b| b.cmp(a));
        JordanPartition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl std::fmt::Display for JordanPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Jordan partition of the nilpotent operator x L on A, from the rank
/// sequence r_m = rank(L^m): the number of blocks of size >= m is
/// r_{m-1} - r_m.
pub fn jordan_partition(ideal: &GradedIdeal, l: &LinearForm) -> Result<JordanPartition> {
    let h = ideal.hvector(DEFAULT_ARTINIAN_PROBE)?;
    let e = h.socle_degree();
    let total: usize = h.total();
    let mut ranks = vec![total];
    for m in 1..=e + 1 {
        let mut r = 0;
        if m <= e {
            for i in 0..=e - m {
                r += mult_map_rank(ideal, l, i, m).rank;
            }
        }
        ranks.push(r);
        if r == 0 {
            break;
        }
    }
    let blocks_ge: Vec<usize> = (1..ranks.len()).map(|m| ranks[m - 1] - ranks[m]).collect();
    let mut parts = Vec::new();
    for (idx, &count) in blocks_ge.iter().enumerate() {
        let size = idx + 1;
        let next = blocks_ge.get(idx + 1).copied().unwrap_or(0);
        for _ in 0..count.saturating_sub(next) {
            parts.push(size);
        }
    }
    let partition = JordanPartition::from_parts(parts);
    debug_assert_eq!(partition.total(), total, "Jordan parts must sum to dim A");
    Ok(partition)
}

/// Jordan partition of a "general" linear form realized by sampling: one
/// random form per seed, majority vote, full seed table reported.
pub fn jordan_general(
    ideal: &GradedIdeal,
    seeds: &[u64],
) -> Result<(JordanPartition, Vec<(u64, JordanPartition)>)> {
    if seeds.is_empty() {
        return Err(Error::Invalid("need at least one seed".into()));
    }
    let mut table = Vec::with_capacity(seeds.len());
    for &s in seeds {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let l = LinearForm::random(ideal.field(), ideal.nvars(), &mut rng);
        table.push((s, jordan_partition(ideal, &l)?));
    }
    let mut counts: Vec<(JordanPartition, usize)> = Vec::new();
    for (_, p) in &table {
        match counts.iter_mut().find(|(q, _)| q == p) {
            Some((_, c)) => *c += 1,
            None => counts.push((p.clone(), 1)),
        }
    }
    counts.sort_by(|(pa, ca), (pb, cb)| cb.cmp(ca).then_with(|| pb.parts.cmp(&pa.parts)));
    Ok((counts[0].0.clone(), table))
}

/// Jordan partition attained by the most normalized linear forms — the
/// deterministic realization of "general form" over a small finite field,
/// where uniform sampling is too noisy to vote reliably.
pub fn jordan_general_exhaustive(ideal: &GradedIdeal) -> Result<JordanPartition> {
    let forms = LinearForm::enumerate_normalized(ideal.field(), ideal.nvars())?;
    let mut counts: Vec<(JordanPartition, usize)> = Vec::new();
    for l in &forms {
        let p = jordan_partition(ideal, l)?;
        match counts.iter_mut().find(|(q, _)| *q == p) {
            Some((_, c)) => *c += 1,
            None => counts.push((p, 1)),
        }
    }
    counts.sort_by(|(pa, ca), (pb, cb)| cb.cmp(ca).then_with(|| pb.parts.cmp(&pa.parts)));
    Ok(counts[0].0.clone())
}

/// dim of the degree-d component of S/(I + (L)) — the restriction to the
/// line L = 0, which bounds the corank of x L : [A]_{d-1} -> [A]_d.
pub fn green_restriction_dim(ideal: &GradedIdeal, l: &LinearForm, d: usize) -> Result<usize> {
    let restricted = ideal.adjoin(vec![l.to_polynomial()])?;
    Ok(restricted.hilbert_function(d)[d])
}

/// Validates that injectivity of x L from degree i to i+1 on every factor
/// S/I_j is inherited by S/(I_1 ∩ ... ∩ I_t) in the same degrees.  Errors
/// with `PreconditionFailed` when some factor map is not injective; returns
/// the verified boolean (which must come out true) otherwise.
pub fn injectivity_inheritance_check(
    ideals: &[&GradedIdeal],
    l: &LinearForm,
    i: usize,
) -> Result<bool> {
    let first = ideals.first().ok_or_else(|| Error::Invalid("no ideals".into()))?;
    let field = first.field().clone();
    let nvars = first.nvars();
    for (idx, ideal) in ideals.iter().enumerate() {
        let r = mult_map_rank(ideal, l, i, 1);
        if r.rank != r.domain_dim {
            return Err(Error::PreconditionFailed(format!(
                "x L is not injective on factor {idx} from degree {i}"
            )));
        }
    }
    let inter_i = crate::ideal::intersect_ideals(ideals, i)?;
    let inter_j = crate::ideal::intersect_ideals(ideals, i + 1)?;
    let dim_i = MonomialBasis::new(nvars, i).len();
    let dim_j = MonomialBasis::new(nvars, i + 1).len();
    let comp_i = DegreeComponent::from_rows(&field, i, dim_i, inter_i.row_vecs());
    let comp_j = DegreeComponent::from_rows(&field, i + 1, dim_j, inter_j.row_vecs());
    let mat = mult_map_matrix(&field, nvars, &comp_i, &comp_j, &l.to_polynomial());
    Ok(mat.rank() == comp_i.quotient_dim())
}

/// Linear form from integer coefficients, convenient in tests and the CLI.
pub fn linear_form_from_ints(field: &FieldSpec, coeffs: &[i64]) -> Result<LinearForm> {
    LinearForm::new(field.clone(), coeffs.iter().map(|&c| field.from_i64(c)).collect())
}

/// Single-monomial polynomial helper.
pub fn monomial_poly(field: &FieldSpec, nvars: usize, exps: &[u16]) -> Polynomial {
    Polynomial::from_terms(field.clone(), nvars, [(Monomial::new(exps.to_vec()), field.one())])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn ideal(field: &FieldSpec, gens: &[&str]) -> GradedIdeal {
        let polys = gens
            .iter()
            .map(|s| parse_polynomial(s, field, &["x", "y", "z"]).unwrap())
            .collect();
        GradedIdeal::new(field.clone(), 3, polys).unwrap()
    }

    fn exceptional(field: &FieldSpec) -> GradedIdeal {
        ideal(field, &["x^2*y", "x^2*z", "y^3", "z^3", "x^4 + y^2*z^2"])
    }

    #[test]
    fn normalized_form_count_gf3() {
        let f3 = FieldSpec::prime(3).unwrap();
        let forms = LinearForm::enumerate_normalized(&f3, 3).unwrap();
        assert_eq!(forms.len(), 13);
    }

    #[test]
    fn middle_rank_of_exceptional_algebra() {
        let f3 = FieldSpec::prime(3).unwrap();
        let a = exceptional(&f3);
        let generic = linear_form_from_ints(&f3, &[1, 1, 2]).unwrap();
        let r = mult_map_rank(&a, &generic, 2, 1);
        assert_eq!((r.rank, r.domain_dim, r.codomain_dim), (5, 6, 6));
        // multiplication by x alone drops to rank 4, matching its Jordan
        // partition (6,2,2,2,2,2,2,2): 8 blocks force total rank 12
        let x = linear_form_from_ints(&f3, &[1, 0, 0]).unwrap();
        assert_eq!(mult_map_rank(&a, &x, 2, 1).rank, 4);
        // beyond the socle the map is zero
        assert_eq!(mult_map_rank(&a, &x, 6, 1).rank, 0);
    }

    #[test]
    fn wlp_exceptional_fails_only_in_char_3() {
        let f3 = FieldSpec::prime(3).unwrap();
        let report =
            wlp_check(&exceptional(&f3), Strategy::Exhaustive, WlpOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        assert_eq!(report.failure_table.len(), 13);
        // every form misses bijectivity in the middle; the best ones reach
        // rank 5 (the Green bound), the special forms x and ay+bz drop to 4
        let mut middles = Vec::new();
        for failed in &report.failure_table {
            let middle =
                failed.ranks.iter().find(|r| r.from_degree == 2).expect("middle map present");
            assert!(middle.rank < 6, "form {}", failed.form);
            middles.push(middle.rank);
        }
        assert_eq!(middles.iter().max(), Some(&5));
        assert_eq!(middles.iter().filter(|&&r| r == 5).count(), 8);
        assert_eq!(middles.iter().filter(|&&r| r == 4).count(), 5);

        let f5 = FieldSpec::prime(5).unwrap();
        let report =
            wlp_check(&exceptional(&f5), Strategy::Exhaustive, WlpOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
    }

    #[test]
    fn wlp_233_lemma() {
        for p in [2u64, 3, 5, 7] {
            let f = FieldSpec::prime(p).unwrap();
            let i = ideal(&f, &["x^2", "y^3", "z^3"]);
            assert_eq!(i.hilbert_function(6), vec![1, 3, 5, 5, 3, 1, 0]);
            let report = wlp_check(&i, Strategy::Exhaustive, WlpOptions::default()).unwrap();
            if p == 3 {
                assert_eq!(report.verdict, Verdict::Fails, "char {p}");
            } else {
                assert_eq!(report.verdict, Verdict::Holds, "char {p}");
            }
        }
        let f5 = FieldSpec::prime(5).unwrap();
        let i = ideal(&f5, &["x^2", "y^3", "z^3"]);
        let report =
            wlp_check(&i, Strategy::Random { trials: 20, seed: 7 }, WlpOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
    }

    #[test]
    fn wlp_random_cannot_certify_failure() {
        let f3 = FieldSpec::prime(3).unwrap();
        let report = wlp_check(
            &exceptional(&f3),
            Strategy::Random { trials: 8, seed: 1 },
            WlpOptions::default(),
        )
        .unwrap();
        assert_eq!(report.verdict, Verdict::Undetermined);
    }

    #[test]
    fn gorenstein_middle_shortcut_agrees() {
        let f5 = FieldSpec::prime(5).unwrap();
        let i = ideal(&f5, &["x^2", "y^3", "z^3"]);
        let full = wlp_check(&i, Strategy::Exhaustive, WlpOptions::default()).unwrap();
        let middle = wlp_check(
            &i,
            Strategy::Exhaustive,
            WlpOptions { gorenstein_middle_only: true, probe_bound: None },
        )
        .unwrap();
        assert_eq!(full.verdict, middle.verdict);
        assert_eq!(middle.per_degree_ranks.len(), 1);
    }

    #[test]
    fn jordan_partitions_of_exceptional_algebra() {
        let f3 = FieldSpec::prime(3).unwrap();
        let a = exceptional(&f3);
        let x = linear_form_from_ints(&f3, &[1, 0, 0]).unwrap();
        assert_eq!(jordan_partition(&a, &x).unwrap().parts(), &[6, 2, 2, 2, 2, 2, 2, 2]);
        let yz = linear_form_from_ints(&f3, &[0, 1, 2]).unwrap();
        assert_eq!(jordan_partition(&a, &yz).unwrap().parts(), &[3, 3, 3, 3, 3, 3, 1, 1]);
        let general = linear_form_from_ints(&f3, &[1, 1, 2]).unwrap();
        let p = jordan_partition(&a, &general).unwrap();
        assert_eq!(p.parts(), &[6, 3, 3, 3, 3, 1, 1]);
        assert_eq!(p.total(), 20);
    }

    #[test]
    fn jordan_general_majority() {
        let f3 = FieldSpec::prime(3).unwrap();
        let a = exceptional(&f3);
        // 8 of the 13 normalized forms attain the general partition
        let majority = jordan_general_exhaustive(&a).unwrap();
        assert_eq!(majority.parts(), &[6, 3, 3, 3, 3, 1, 1]);
        // the sampled table realizes only partitions from the exhaustive set
        let seeds: Vec<u64> = (0..10).collect();
        let (_, table) = jordan_general(&a, &seeds).unwrap();
        assert_eq!(table.len(), 10);
        for (_, p) in &table {
            assert!(
                [
                    vec![6, 3, 3, 3, 3, 1, 1],
                    vec![6, 2, 2, 2, 2, 2, 2, 2],
                    vec![3, 3, 3, 3, 3, 3, 1, 1]
                ]
                .contains(&p.parts().to_vec())
            );
        }
    }

    #[test]
    fn char_zero_general_partition() {
        let q = FieldSpec::rationals();
        let a = exceptional(&q);
        let l = linear_form_from_ints(&q, &[1, 2, 5]).unwrap();
        assert_eq!(jordan_partition(&a, &l).unwrap().parts(), &[6, 4, 4, 2, 2, 2]);
    }

    #[test]
    fn green_restriction_examples() {
        let q = FieldSpec::rationals();
        let empty = GradedIdeal::new(q.clone(), 3, vec![]).unwrap();
        let l = linear_form_from_ints(&q, &[1, 1, 1]).unwrap();
        assert_eq!(green_restriction_dim(&empty, &l, 3).unwrap(), 4);

        let f3 = FieldSpec::prime(3).unwrap();
        let a = exceptional(&f3);
        let general = linear_form_from_ints(&f3, &[1, 1, 2]).unwrap();
        assert_eq!(green_restriction_dim(&a, &general, 3).unwrap(), 1);
    }

    #[test]
    fn rank_symmetry_for_gorenstein() {
        // perfect pairing: rank(A_i -> A_{i+1}) = rank(A_{e-i-1} -> A_{e-i})
        let f101 = FieldSpec::prime(101).unwrap();
        let a = exceptional(&f101);
        let l = linear_form_from_ints(&f101, &[1, 7, 13]).unwrap();
        let e = 5;
        for i in 0..e {
            let r1 = mult_map_rank(&a, &l, i, 1).rank;
            let r2 = mult_map_rank(&a, &l, e - i - 1, 1).rank;
            assert_eq!(r1, r2, "i={i}");
        }
    }

    #[test]
    fn rank_monotone_in_power() {
        let f7 = FieldSpec::prime(7).unwrap();
        let a = ideal(&f7, &["x^3", "y^3", "z^3"]);
        let l = linear_form_from_ints(&f7, &[1, 2, 3]).unwrap();
        let mut prev = usize::MAX;
        for m in 1..=4 {
            let r = mult_map_rank(&a, &l, 1, m).rank;
            assert!(r <= prev);
            prev = r;
        }
    }

    #[test]
    fn slp_socle_degree_zero_is_vacuous() {
        let q = FieldSpec::rationals();
        let i = ideal(&q, &["x", "y", "z"]);
        let report = slp_check(&i, Strategy::Random { trials: 3, seed: 0 }).unwrap();
        assert_eq!(report.verdict, Verdict::Holds);
    }

    #[test]
    fn slp_exceptional_fails_in_char_3() {
        let f3 = FieldSpec::prime(3).unwrap();
        let report = slp_check(&exceptional(&f3), Strategy::Exhaustive).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
    }

    #[test]
    fn inheritance_single_ideal_reduces_to_factor() {
        let f101 = FieldSpec::prime(101).unwrap();
        let i = ideal(&f101, &["x^3", "y^3", "z^3"]);
        let l = linear_form_from_ints(&f101, &[1, 5, 9]).unwrap();
        assert!(injectivity_inheritance_check(&[&i], &l, 1).unwrap());
    }

    #[test]
    fn inheritance_monomial_complete_intersections() {
        let f = FieldSpec::prime(31991).unwrap();
        let i1 = ideal(&f, &["x^2", "y^3", "z^4"]);
        let i2 = ideal(&f, &["x^3", "y^2", "z^3"]);
        let i3 = ideal(&f, &["x^4", "y^4", "z^2"]);
        let l = linear_form_from_ints(&f, &[1, 17, 23]).unwrap();
        assert!(injectivity_inheritance_check(&[&i1, &i2, &i3], &l, 1).unwrap());
    }

    #[test]
    fn inheritance_rejects_non_injective_factor() {
        let f3 = FieldSpec::prime(3).unwrap();
        let a = exceptional(&f3);
        let x = linear_form_from_ints(&f3, &[1, 0, 0]).unwrap();
        assert!(matches!(
            injectivity_inheritance_check(&[&a], &x, 2),
            Err(Error::PreconditionFailed(_))
        ));
    }
}
