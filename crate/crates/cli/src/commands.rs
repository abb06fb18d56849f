//! Command execution: each subcommand turns a parsed input plus options into
//! a [`Report`].

use std::path::PathBuf;
use std::time::Instant;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use artin_core::geometry::{
    base_locus, fiber_decomposition, hb_analysis, hesse_pencil_normal_form, is_hesse_configuration,
    linkage_check, morphism_fibers, CubicSystem, TfaeVerdict,
};
use artin_core::gorenstein::{
    annihilator, certify_gorenstein, compressed_random, level_decompose, pfaffian_ideal,
    principal_pfaffians, truncate_algebra,
};
use artin_core::lefschetz::{
    green_restriction_dim, jordan_general, jordan_general_exhaustive, jordan_partition, slp_check,
    wlp_check, LinearForm, Strategy, Verdict, WlpOptions,
};
use artin_core::poly::{default_var_names, format_polynomial, parse_polynomial, DualForm};
use artin_core::{Error, FieldSpec, Polynomial, Result};

use crate::ideal_file::ParsedFile;
use crate::report::{
    verdict_str, AnnihilatorSection, CertificateSection, CompressedSection, DecomposeSection,
    DecompositionSection, FibersSection, GreenSection, HbSection, HesseLineRow, HesseSection,
    JordanSection, LinkageSection, PfaffianSection, Report, SeedPartition, TruncateSection,
    WlpSection,
};
use crate::search::{run_search, SearchConfig};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub trials: usize,
    pub exhaustive: bool,
    pub max_degree: Option<usize>,
    pub workers: usize,
    pub linear_form: Option<String>,
    pub out: Option<PathBuf>,
    pub gorenstein_middle_only: bool,
    pub split_bound: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: DEFAULT_SEED,
            trials: 20,
            exhaustive: false,
            max_degree: None,
            workers: 1,
            linear_form: None,
            out: None,
            gorenstein_middle_only: false,
            split_bound: 4,
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn strategy(opts: &RunOptions) -> Strategy {
    if opts.exhaustive {
        Strategy::Exhaustive
    } else {
        Strategy::Random { trials: opts.trials, seed: opts.seed }
    }
}

fn fmt_poly(p: &Polynomial) -> String {
    format_polynomial(p, &default_var_names(p.nvars()))
}

fn parse_linear(opts: &RunOptions, field: &FieldSpec, vars: &[String]) -> Result<Option<LinearForm>> {
    let Some(text) = &opts.linear_form else { return Ok(None) };
    let var_refs: Vec<&str> = vars.iter().map(String::as_str).collect();
    let p = parse_polynomial(text, field, &var_refs)?;
    Ok(Some(LinearForm::from_polynomial(&p)?))
}

fn base_report(command: &str, field: &FieldSpec, input_sha256: String) -> Report {
    Report {
        schema_version: 1,
        command: command.to_string(),
        field: field.to_string(),
        input_sha256,
        ..Default::default()
    }
}

fn need_gens(parsed: &ParsedFile, n: usize, what: &str) -> Result<()> {
    if parsed.gens.len() != n {
        return Err(Error::Invalid(format!(
            "{what} needs exactly {n} generator(s), found {}",
            parsed.gens.len()
        )));
    }
    Ok(())
}

pub fn cmd_hilbert(parsed: &ParsedFile, opts: &RunOptions, sha: String) -> Result<Report> {
    let start = Instant::now();
    let ideal = parsed.ideal()?;
    let max_d = opts.max_degree.unwrap_or(12);
    let h = ideal.hilbert_function(max_d);
    let mut report = base_report("hilbert", &parsed.field, sha);
    if let Ok(hv) = ideal.hvector(max_d) {
        report.hvector = Some(hv.values().to_vec());
    }
    report.hilbert = Some(h);
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn cmd_wlp(parsed: &ParsedFile, opts: &RunOptions, sha: String) -> Result<Report> {
    let start = Instant::now();
    let ideal = parsed.ideal()?;
    let wlp = wlp_check(
        &ideal,
        strategy(opts),
        WlpOptions { gorenstein_middle_only: opts.gorenstein_middle_only, probe_bound: None },
    )?;
    let mut report = base_report("wlp", &parsed.field, sha);
    report.hvector = ideal.hvector(24).ok().map(|h| h.values().to_vec());
    report.wlp = Some(WlpSection::from_report(&wlp));
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn cmd_slp(parsed: &ParsedFile, opts: &RunOptions, sha: String) -> Result<Report> {
    let start = Instant::now();
    let ideal = parsed.ideal()?;
    let slp = slp_check(&ideal, strategy(opts))?;
    let mut report = base_report("slp", &parsed.field, sha);
    report.hvector = ideal.hvector(24).ok().map(|h| h.values().to_vec());
    report.slp = Some(WlpSection::from_report(&slp));
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn cmd_jordan(parsed: &ParsedFile, opts: &RunOptions, sha: String) -> Result<Report> {
    let start = Instant::now();
    let ideal = parsed.ideal()?;
    let mut report = base_report("jordan", &parsed.field, sha);
    report.hvector = ideal.hvector(24).ok().map(|h| h.values().to_vec());
    let section = match parse_linear(opts, &parsed.field, &parsed.vars)? {
        Some(l) => {
            let p = jordan_partition(&ideal, &l)?;
            JordanSection { form: l.to_string(), parts: p.parts().to_vec(), seed_table: None }
        }
        None => {
            // "general form": exhaustive majority over small finite fields,
            // seeded sampling otherwise; the seed table is always reported
            let seeds: Vec<u64> = (0..opts.trials as u64).map(|i| opts.seed ^ i).collect();
            let (sampled, table) = jordan_general(&ideal, &seeds)?;
            let exhaustible = parsed
                .field
                .order()
                .map(|q| q * q + q + 1 <= 20_000)
                .unwrap_or(false);
            let majority =
                if exhaustible { jordan_general_exhaustive(&ideal)? } else { sampled };
            JordanSection {
                form: "general".into(),
                parts: majority.parts().to_vec(),
                seed_table: Some(
                    table
                        .into_iter()
                        .map(|(seed, p)| SeedPartition { seed, parts: p.parts().to_vec() })
                        .collect(),
                ),
            }
        }
    };
    report.jordan = Some(section);
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn cmd_green(parsed: &ParsedFile, opts: &RunOptions, sha: String) -> Result<Report> {
    let start = Instant::now();
    let ideal = parsed.ideal()?;
    let d = opts.max_degree.unwrap_or(3);
    let l = match parse_linear(opts, &parsed.field, &parsed.vars)? {
        Some(l) => l,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            LinearForm::random(&parsed.field, parsed.vars.len(), &mut rng)
        }
    };
    let value = green_restriction_dim(&ideal, &l, d)?;
    let mut report = base_report("green", &parsed.field, sha);
    report.green = Some(GreenSection { form: l.to_string(), degree: d, value });
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn cmd_certify(parsed: &ParsedFile, opts: &RunOptions, sha: String) -> Result<Report> {
    let start = Instant::now();
    let ideal = parsed.ideal()?;
    let cert = certify_gorenstein(&ideal, opts.max_degree.unwrap_or(12))?;
    let mut report = base_report("certify", &parsed.field, sha);
    report.hvector = Some(cert.hvector.values().to_vec());
    report.certificate = Some(CertificateSection {
        hvector: cert.hvector.values().to_vec(),
        socle_degree: cert.socle_degree,
        symmetric: cert.symmetric,
        socle_dim_one: cert.socle_dim_one,
        socle_dims: cert.socle_dims.clone(),
        codim: cert.codim,
        certified: cert.certified(),
    });
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn cmd_annihilator(parsed: &ParsedFile, opts: &RunOptions, sha: String) -> Result<Report> {
    let start = Instant::now();
    need_gens(parsed, 1, "annihilator (the gen line is read as a dual form)")?;
    let f = DualForm::from_polynomial(&parsed.gens[0])?;
    let max_d = opts.max_degree.unwrap_or(f.degree() + 1);
    let ideal = annihilator(&f, max_d)?;
    let mut report = base_report("annihilator", &parsed.field, sha);
    report.hvector = ideal.hvector(f.degree() + 1).ok().map(|h| h.values().to_vec());
    report.annihilator = Some(AnnihilatorSection {
        dual_form: fmt_poly(&f.to_polynomial()),
        socle_degree: f.degree(),
        generators: ideal.generators().iter().map(fmt_poly).collect(),
    });
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn cmd_compressed(field: &FieldSpec, opts: &RunOptions) -> Result<Report> {
    let start = Instant::now();
    let e = opts.max_degree.unwrap_or(5);
    let params = format!("compressed e={e} field={field} seed={}", opts.seed);
    let (form, ideal) = compressed_random(e, field, 3, opts.seed, opts.trials.max(20))?;
    let mut report = base_report("compressed", field, sha256_hex(params.as_bytes()));
    report.hvector = ideal.hvector(e + 1).ok().map(|h| h.values().to_vec());
    report.compressed = Some(CompressedSection {
        socle_degree: e,
        dual_form: fmt_poly(&form.to_polynomial()),
        generators: ideal.generators().iter().map(fmt_poly).collect(),
    });
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn cmd_pfaffian(parsed: &ParsedFile, _opts: &RunOptions, sha: String) -> Result<Report> {
    let start = Instant::now();
    let m = parsed
        .skew
        .as_ref()
        .ok_or_else(|| Error::Invalid("pfaffian needs a skew matrix file".into()))?;
    let pfs = principal_pfaffians(m)?;
    let ideal = pfaffian_ideal(m)?;
    let mut report = base_report("pfaffian", &parsed.field, sha);
    report.hvector = ideal.hvector(12).ok().map(|h| h.values().to_vec());
    report.pfaffian = Some(PfaffianSection {
        size: m.size(),
        pfaffians: pfs.iter().map(fmt_poly).collect(),
        generators: ideal.generators().iter().map(fmt_poly).collect(),
    });
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn cmd_truncate(parsed: &ParsedFile, opts: &RunOptions, sha: String) -> Result<Report> {
    let start = Instant::now();
    let ideal = parsed.ideal()?;
    let e_new = match opts.max_degree {
        Some(d) => d,
        None => {
            let h = ideal.hvector(12)?;
            h.socle_degree().saturating_sub(1)
        }
    };
    let truncated = truncate_algebra(&ideal, e_new)?;
    let mut report = base_report("truncate", &parsed.field, sha);
    report.hvector = truncated.hvector(e_new + 1).ok().map(|h| h.values().to_vec());
    report.truncate = Some(TruncateSection {
        at: e_new,
        generators: truncated.generators().iter().map(fmt_poly).collect(),
    });
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn cmd_decompose(parsed: &ParsedFile, opts: &RunOptions, sha: String) -> Result<Report> {
    let start = Instant::now();
    if parsed.gens.is_empty() {
        return Err(Error::Invalid("decompose reads gen lines as dual forms".into()));
    }
    let forms: Vec<DualForm> =
        parsed.gens.iter().map(DualForm::from_polynomial).collect::<Result<_>>()?;
    let e = forms[0].degree();
    let dec = level_decompose(&forms, opts.max_degree.unwrap_or(e + 1))?;
    let mut report = base_report("decompose", &parsed.field, sha);
    report.hvector = dec.level.hvector(e + 1).ok().map(|h| h.values().to_vec());
    report.decompose = Some(DecomposeSection {
        expected_type: dec.expected_type,
        socle_dim_top: dec.socle_dim_top,
        factor_hvectors: dec
            .factors
            .iter()
            .map(|f| f.hvector(e + 1).map(|h| h.values().to_vec()))
            .collect::<Result<_>>()?,
    });
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn cmd_hesse(parsed: &ParsedFile, opts: &RunOptions, sha: String) -> Result<Report> {
    let start = Instant::now();
    need_gens(parsed, 2, "hesse")?;
    let g1 = &parsed.gens[0];
    let g2 = &parsed.gens[1];
    let locus = base_locus(g1, g2, opts.split_bound)?;
    let analysis = if locus.reduced { Some(is_hesse_configuration(&locus)?) } else { None };
    let normal_form = hesse_pencil_normal_form(g1, g2).ok().map(|coeffs| {
        coeffs.iter().map(|c| locus.field.format_element(c)).collect::<Vec<String>>()
    });
    let mut report = base_report("hesse", &parsed.field, sha);
    report.hesse = Some(HesseSection {
        splitting_field: locus.field.to_string(),
        splitting_degree: locus.splitting_degree,
        reduced: locus.reduced,
        total_length: locus.total_length,
        points: locus.points.iter().map(|(p, _)| p.display(&locus.field)).collect(),
        multiplicities: locus.points.iter().map(|(_, m)| *m).collect(),
        is_hesse: analysis.as_ref().map(|a| a.is_hesse).unwrap_or(false),
        lines: analysis
            .map(|a| {
                a.lines
                    .iter()
                    .map(|l| HesseLineRow {
                        line: format!(
                            "[{}:{}:{}]",
                            locus.field.format_element(&l.coeffs[0]),
                            locus.field.format_element(&l.coeffs[1]),
                            locus.field.format_element(&l.coeffs[2])
                        ),
                        points: l.point_indices.clone(),
                    })
                    .collect()
            })
            .unwrap_or_default(),
        normal_form,
    });
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn cmd_fibers(parsed: &ParsedFile, opts: &RunOptions, sha: String) -> Result<Report> {
    let start = Instant::now();
    need_gens(parsed, 4, "fibers")?;
    let w = CubicSystem::new(
        parsed.field.clone(),
        [
            parsed.gens[0].clone(),
            parsed.gens[1].clone(),
            parsed.gens[2].clone(),
            parsed.gens[3].clone(),
        ],
    )?;
    let fibers = morphism_fibers(&w, opts.trials.max(1), opts.seed, opts.split_bound)?;
    let decomposition = if fibers.generic_fiber_size == 3 {
        match fiber_decomposition(&w, opts.seed, 40) {
            Ok(d) => Some(DecompositionSection {
                sigmas: d
                    .sigmas
                    .iter()
                    .map(|s| s.iter().map(|p| p.display(&parsed.field)).collect())
                    .collect(),
                collinearity: d.collinearity,
                condition_ranks: d.condition_ranks.to_vec(),
                attempts: d.attempts,
            }),
            Err(Error::LineNotSplit(_)) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let mut report = base_report("fibers", &parsed.field, sha);
    report.fibers = Some(FibersSection {
        generic_fiber_size: fibers.generic_fiber_size,
        image_degree: fibers.image_degree,
        base_point_free: fibers.base_point_free,
        samples: fibers.samples,
        fiber_sizes: fibers.fiber_table.iter().map(|(_, s)| *s).collect(),
        decomposition,
    });
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn cmd_hb(parsed: &ParsedFile, opts: &RunOptions, sha: String) -> Result<Report> {
    let start = Instant::now();
    let ideal = parsed.ideal()?;
    let analysis = hb_analysis(&ideal, opts.seed)?;
    let mut report = base_report("hb", &parsed.field, sha);
    report.hb = Some(HbSection {
        linear_part_rank: analysis.linear_part_rank,
        verdict: match analysis.verdict {
            TfaeVerdict::Independent => "independent".into(),
            TfaeVerdict::Dependent => "dependent".into(),
        },
        linear_column: analysis.linear_column.iter().map(fmt_poly).collect(),
        completion_hvector: analysis
            .completion
            .as_ref()
            .map(|(_, _, k)| k.hvector(10).map(|h| h.values().to_vec()))
            .transpose()?,
        completion_cubic: analysis.completion.as_ref().map(|(f, _, _)| fmt_poly(f)),
        completion_quartic: analysis.completion.as_ref().map(|(_, g, _)| fmt_poly(g)),
        six_on_conic: analysis.six_on_conic,
    });
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn cmd_linkage(parsed: &ParsedFile, _opts: &RunOptions, sha: String) -> Result<Report> {
    let start = Instant::now();
    let m = parsed
        .skew
        .as_ref()
        .ok_or_else(|| Error::Invalid("linkage needs a skew matrix file".into()))?;
    let link = linkage_check(m)?;
    let mut report = base_report("linkage", &parsed.field, sha);
    report.linkage = Some(LinkageSection {
        deg_x: link.deg_x,
        deg_y: link.deg_y,
        ci_type: vec![link.ci_type.0, link.ci_type.1],
        total: link.total,
        ci_degree: link.ci_degree,
        containment: link.containment,
    });
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

pub fn cmd_search(field: &FieldSpec, opts: &RunOptions, trials: u64) -> Result<Report> {
    let start = Instant::now();
    let out = opts
        .out
        .clone()
        .unwrap_or_else(|| crate::search::default_out_path(std::path::Path::new(".")));
    let cfg = SearchConfig {
        field: field.clone(),
        trials,
        seed: opts.seed,
        workers: opts.workers,
        out,
    };
    let params = format!("search field={field} trials={trials} seed={}", opts.seed);
    let outcome = run_search(&cfg)?;
    let mut report = base_report("search", field, sha256_hex(params.as_bytes()));
    report.search = Some(outcome.summary);
    report.timing_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Exit code policy: 0 for a computed verdict (including "fails"), 2 for
/// input problems, 3 for undetermined/unstabilized outcomes.
pub fn exit_code_for_error(e: &Error) -> i32 {
    match e {
        Error::ArtinianInconclusive { .. }
        | Error::NotStabilized(_)
        | Error::NotSplit(_)
        | Error::LineNotSplit(_)
        | Error::NotCompressedAfterRetries { .. } => 3,
        _ => 2,
    }
}

/// Undetermined verdicts exit with 3 even though the run itself succeeded.
pub fn exit_code_for_report(report: &Report) -> i32 {
    let undetermined = |s: &Option<WlpSection>| {
        s.as_ref().map(|w| w.verdict == verdict_str(Verdict::Undetermined)).unwrap_or(false)
    };
    if undetermined(&report.wlp) || undetermined(&report.slp) {
        3
    } else {
        0
    }
}
