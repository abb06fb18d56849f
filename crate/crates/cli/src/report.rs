//! Report structures.  JSON is the contract (stable keys, schema_version 1);
//! the text rendering mirrors the same content.

use serde::{Deserialize, Serialize};

use artin_core::lefschetz::{RankEntry, Verdict, WlpReport};

#[derive(Serialize, Deserialize, PartialEq, Debug, Default)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub field: String,
    pub input_sha256: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hvector: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wlp: Option<WlpSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slp: Option<WlpSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jordan: Option<JordanSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub green: Option<GreenSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annihilator: Option<AnnihilatorSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compressed: Option<CompressedSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pfaffian: Option<PfaffianSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncate: Option<TruncateSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decompose: Option<DecomposeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hesse: Option<HesseSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fibers: Option<FibersSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hb: Option<HbSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linkage: Option<LinkageSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchSection>,
    pub timing_ms: u128,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct RankRow {
    pub i: usize,
    pub j: usize,
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
}

impl From<&RankEntry> for RankRow {
    fn from(r: &RankEntry) -> Self {
        RankRow { i: r.from_degree, j: r.to_degree, rank: r.rank, rows: r.rows, cols: r.cols }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct FailedFormRow {
    pub form: String,
    pub ranks: Vec<RankRow>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct WlpSection {
    pub verdict: String,
    pub witness: Option<String>,
    pub ranks: Vec<RankRow>,
    pub trials: usize,
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failures: Option<Vec<FailedFormRow>>,
}

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::Undetermined => "undetermined",
    }
}

impl WlpSection {
    pub fn from_report(r: &WlpReport) -> Self {
        WlpSection {
            verdict: verdict_str(r.verdict).to_string(),
            witness: r.witness.as_ref().map(|w| w.to_string()),
            ranks: r.per_degree_ranks.iter().map(RankRow::from).collect(),
            trials: r.trials,
            exhaustive: r.exhaustive,
            failures: if r.failure_table.is_empty() {
                None
            } else {
                Some(
                    r.failure_table
                        .iter()
                        .map(|f| FailedFormRow {
                            form: f.form.to_string(),
                            ranks: f.ranks.iter().map(RankRow::from).collect(),
                        })
                        .collect(),
                )
            },
        }
    }
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct JordanSection {
    pub form: String,
    pub parts: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed_table: Option<Vec<SeedPartition>>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct SeedPartition {
    pub seed: u64,
    pub parts: Vec<usize>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct GreenSection {
    pub form: String,
    pub degree: usize,
    pub value: usize,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct CertificateSection {
    pub hvector: Vec<usize>,
    pub socle_degree: usize,
    pub symmetric: bool,
    pub socle_dim_one: bool,
    pub socle_dims: Vec<usize>,
    pub codim: usize,
    pub certified: bool,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct AnnihilatorSection {
    pub dual_form: String,
    pub socle_degree: usize,
    pub generators: Vec<String>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct CompressedSection {
    pub socle_degree: usize,
    pub dual_form: String,
    pub generators: Vec<String>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct PfaffianSection {
    pub size: usize,
    pub pfaffians: Vec<String>,
    pub generators: Vec<String>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct TruncateSection {
    pub at: usize,
    pub generators: Vec<String>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct DecomposeSection {
    pub expected_type: usize,
    pub socle_dim_top: usize,
    pub factor_hvectors: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct HesseLineRow {
    pub line: String,
    pub points: Vec<usize>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct HesseSection {
    pub splitting_field: String,
    pub splitting_degree: usize,
    pub reduced: bool,
    pub total_length: usize,
    pub points: Vec<String>,
    pub multiplicities: Vec<usize>,
    pub is_hesse: bool,
    pub lines: Vec<HesseLineRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct DecompositionSection {
    pub sigmas: Vec<Vec<String>>,
    pub collinearity: bool,
    pub condition_ranks: Vec<usize>,
    pub attempts: usize,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct FibersSection {
    pub generic_fiber_size: usize,
    pub image_degree: usize,
    pub base_point_free: bool,
    pub samples: usize,
    pub fiber_sizes: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<DecompositionSection>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct HbSection {
    pub linear_part_rank: usize,
    pub verdict: String,
    pub linear_column: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub completion_hvector: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub completion_cubic: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub completion_quartic: Option<String>,
    pub six_on_conic: Option<bool>,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct LinkageSection {
    pub deg_x: usize,
    pub deg_y: usize,
    pub ci_type: Vec<usize>,
    pub total: usize,
    pub ci_degree: usize,
    pub containment: bool,
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
pub struct SearchSection {
    pub trials: u64,
    pub candidates: u64,
    pub failures: u64,
    pub out_path: String,
}

/// One JSONL line of the search log.  Replayable: the record is a pure
/// function of (seed, trial_index), and `timestamp` is the logical position
/// in the output stream, so reruns are byte-identical.
#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct SearchRecord {
    pub trial_index: u64,
    pub seed: u64,
    pub field: String,
    pub matrix: Vec<String>,
    pub hvector: Vec<usize>,
    pub wlp_verdict: String,
    pub witness_or_certificate: String,
    pub jordan_general: Vec<usize>,
    pub timestamp: u64,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        push(&mut out, format!("command: {}", self.command));
        push(&mut out, format!("field: {}", self.field));
        if let Some(h) = &self.hilbert {
            push(&mut out, format!("hilbert function: {h:?}"));
        }
        if let Some(h) = &self.hvector {
            push(&mut out, format!("h-vector: {h:?}"));
        }
        for (name, section) in [("wlp", &self.wlp), ("slp", &self.slp)] {
            if let Some(w) = section {
                push(&mut out, format!("{name}: {}", w.verdict));
                if let Some(wit) = &w.witness {
                    push(&mut out, format!("  witness: {wit}"));
                }
                for r in &w.ranks {
                    push(
                        &mut out,
                        format!("  map {} -> {}: rank {} ({}x{})", r.i, r.j, r.rank, r.rows, r.cols),
                    );
                }
                push(
                    &mut out,
                    format!("  trials: {} exhaustive: {}", w.trials, w.exhaustive),
                );
                if let Some(f) = &w.failures {
                    push(&mut out, format!("  forms examined: {}", f.len()));
                }
            }
        }
        if let Some(j) = &self.jordan {
            push(&mut out, format!("jordan partition of {}: {:?}", j.form, j.parts));
            if let Some(t) = &j.seed_table {
                for row in t {
                    push(&mut out, format!("  seed {} -> {:?}", row.seed, row.parts));
                }
            }
        }
        if let Some(g) = &self.green {
            push(
                &mut out,
                format!("restriction by {} in degree {}: {}", g.form, g.degree, g.value),
            );
        }
        if let Some(c) = &self.certificate {
            push(
                &mut out,
                format!(
                    "gorenstein: {} (h-vector {:?}, socle degree {}, socle dims {:?}, codim {})",
                    c.certified, c.hvector, c.socle_degree, c.socle_dims, c.codim
                ),
            );
        }
        if let Some(a) = &self.annihilator {
            push(&mut out, format!("annihilator of {} (degree {}):", a.dual_form, a.socle_degree));
            for g in &a.generators {
                push(&mut out, format!("  gen {g}"));
            }
        }
        if let Some(c) = &self.compressed {
            push(&mut out, format!("compressed dual form: {}", c.dual_form));
            for g in &c.generators {
                push(&mut out, format!("  gen {g}"));
            }
        }
        if let Some(p) = &self.pfaffian {
            push(&mut out, format!("pfaffians of the {}x{} matrix:", p.size, p.size));
            for f in &p.pfaffians {
                push(&mut out, format!("  {f}"));
            }
        }
        if let Some(t) = &self.truncate {
            push(&mut out, format!("truncated at degree {}:", t.at));
            for g in &t.generators {
                push(&mut out, format!("  gen {g}"));
            }
        }
        if let Some(d) = &self.decompose {
            push(
                &mut out,
                format!(
                    "level type {} (socle dim {}), factors:",
                    d.expected_type, d.socle_dim_top
                ),
            );
            for h in &d.factor_hvectors {
                push(&mut out, format!("  factor h-vector {h:?}"));
            }
        }
        if let Some(h) = &self.hesse {
            push(
                &mut out,
                format!(
                    "base locus over {} (k={}): length {}, reduced {}",
                    h.splitting_field, h.splitting_degree, h.total_length, h.reduced
                ),
            );
            for (p, m) in h.points.iter().zip(&h.multiplicities) {
                push(&mut out, format!("  {p} x{m}"));
            }
            push(&mut out, format!("hesse configuration: {}", h.is_hesse));
            for l in &h.lines {
                push(&mut out, format!("  line {} through points {:?}", l.line, l.points));
            }
            if let Some(nf) = &h.normal_form {
                push(&mut out, format!("normal form coefficients: {nf:?}"));
            }
        }
        if let Some(f) = &self.fibers {
            push(
                &mut out,
                format!(
                    "generic fiber {} / image degree {} (samples {})",
                    f.generic_fiber_size, f.image_degree, f.samples
                ),
            );
            if let Some(d) = &f.decomposition {
                push(
                    &mut out,
                    format!(
                        "decomposition: collinearity {}, condition ranks {:?}, attempts {}",
                        d.collinearity, d.condition_ranks, d.attempts
                    ),
                );
            }
        }
        if let Some(h) = &self.hb {
            push(
                &mut out,
                format!("linear part rank {} ({})", h.linear_part_rank, h.verdict),
            );
            push(&mut out, format!("  linear column: {:?}", h.linear_column));
            if let Some(hv) = &h.completion_hvector {
                push(&mut out, format!("  gorenstein completion h-vector {hv:?}"));
            }
            match h.six_on_conic {
                Some(b) => push(&mut out, format!("  six points on a conic: {b}")),
                None => push(&mut out, "  six points on a conic: not determined".to_string()),
            }
        }
        if let Some(l) = &self.linkage {
            push(
                &mut out,
                format!(
                    "linked degrees {} + {} = {} via CI of type {:?} (degree {}), containment {}",
                    l.deg_x, l.deg_y, l.total, l.ci_type, l.ci_degree, l.containment
                ),
            );
        }
        if let Some(s) = &self.search {
            push(
                &mut out,
                format!(
                    "search: {} trials, {} candidates, {} failures -> {}",
                    s.trials, s.candidates, s.failures, s.out_path
                ),
            );
        }
        push(&mut out, format!("timing: {} ms", self.timing_ms));
        out
    }
}
