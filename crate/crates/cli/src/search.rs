//! Seeded parallel counterexample search over structure-pattern matrices.
//!
//! Each trial is a pure function of (base seed, trial index): generate a
//! random 5x5 matrix in the quadric/linear pattern from the derived seed
//! seed XOR trial, keep it when the pfaffian ideal certifies Gorenstein with
//! h-vector (1,3,6,6,3,1), run the exhaustive WLP scan, and append every
//! failure to the JSONL log.  Workers split the trial range; a single writer
//! serializes records in trial order, so the output bytes are identical for
//! any worker count.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::mpsc;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use artin_core::gorenstein::{certify_gorenstein, pfaffian_ideal, random_be_matrix, SkewPolyMatrix};
use artin_core::lefschetz::{jordan_general_exhaustive, wlp_check, Strategy, Verdict, WlpOptions};
use artin_core::poly::{default_var_names, format_polynomial};
use artin_core::{Error, FieldSpec, Result};

use crate::report::{SearchRecord, SearchSection};

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub field: FieldSpec,
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
    pub out: PathBuf,
}

const TARGET_HVECTOR: [usize; 6] = [1, 3, 6, 6, 3, 1];

fn matrix_text(m: &SkewPolyMatrix) -> Vec<String> {
    let vars = default_var_names(m.nvars());
    let mut out = Vec::new();
    for i in 0..m.size() {
        for j in i + 1..m.size() {
            let e = m.entry(i, j);
            if !e.is_zero() {
                out.push(format!("{} {} {}", i + 1, j + 1, format_polynomial(e, &vars)));
            }
        }
    }
    out
}

/// Outcome of one trial; `record` is filled only for WLP failures.
fn run_trial(cfg: &SearchConfig, trial: u64) -> (bool, Option<SearchRecord>) {
    let derived = cfg.seed ^ trial;
    let mut rng = ChaCha8Rng::seed_from_u64(derived);
    let m = random_be_matrix(&cfg.field, 3, &mut rng);
    let Ok(ideal) = pfaffian_ideal(&m) else {
        return (false, None);
    };
    let Ok(h) = ideal.hvector(8) else {
        return (false, None);
    };
    if h.values() != TARGET_HVECTOR {
        return (false, None);
    }
    let Ok(cert) = certify_gorenstein(&ideal, 8) else {
        return (false, None);
    };
    if !cert.certified() {
        return (false, None);
    }
    let report = match wlp_check(&ideal, Strategy::Exhaustive, WlpOptions::default()) {
        Ok(r) => r,
        Err(_) => return (true, None),
    };
    if report.verdict != Verdict::Fails {
        return (true, None);
    }
    let jordan = match jordan_general_exhaustive(&ideal) {
        Ok(p) => p.parts().to_vec(),
        Err(_) => Vec::new(),
    };
    let record = SearchRecord {
        trial_index: trial,
        seed: derived,
        field: cfg.field.to_string(),
        matrix: matrix_text(&m),
        hvector: h.values().to_vec(),
        wlp_verdict: "fails".into(),
        witness_or_certificate: format!(
            "exhaustive: all {} normalized forms miss maximal rank",
            report.trials
        ),
        jordan_general: jordan,
        timestamp: 0, // assigned by the writer in stream order
    };
    (true, Some(record))
}

pub struct SearchOutcome {
    pub summary: SearchSection,
    pub records: Vec<SearchRecord>,
}

pub fn run_search(cfg: &SearchConfig) -> Result<SearchOutcome> {
    if !cfg.field.is_finite() {
        return Err(Error::Invalid("the search needs a finite field".into()));
    }
    let workers = cfg.workers.max(1);
    let (tx, rx) = mpsc::channel::<(u64, bool, Option<SearchRecord>)>();
    std::thread::scope(|scope| {
        for w in 0..workers {
            let tx = tx.clone();
            let cfg = cfg.clone();
            scope.spawn(move || {
                let mut t = w as u64;
                while t < cfg.trials {
                    let (candidate, record) = run_trial(&cfg, t);
                    if tx.send((t, candidate, record)).is_err() {
                        return;
                    }
                    t += workers as u64;
                }
            });
        }
        drop(tx);

        // single writer: reorder by trial index so the log is append-only,
        // crash-tolerant, and byte-identical for any worker count
        let mut file = std::fs::File::create(&cfg.out)
            .map_err(|e| Error::Invalid(format!("cannot create {}: {e}", cfg.out.display())))?;
        let mut pending: BTreeMap<u64, (bool, Option<SearchRecord>)> = BTreeMap::new();
        let mut next = 0u64;
        let mut candidates = 0u64;
        let mut failures = 0u64;
        let mut records = Vec::new();
        let flush = |pending: &mut BTreeMap<u64, (bool, Option<SearchRecord>)>,
                         next: &mut u64,
                         candidates: &mut u64,
                         failures: &mut u64,
                         records: &mut Vec<SearchRecord>,
                         file: &mut std::fs::File|
         -> Result<()> {
            while let Some(entry) = pending.remove(next) {
                let (candidate, record) = entry;
                if candidate {
                    *candidates += 1;
                }
                if let Some(mut rec) = record {
                    rec.timestamp = *failures;
                    *failures += 1;
                    let line = serde_json::to_string(&rec)
                        .map_err(|e| Error::Invalid(format!("serialize record: {e}")))?;
                    writeln!(file, "{line}")
                        .map_err(|e| Error::Invalid(format!("write {}: {e}", cfg.out.display())))?;
                    records.push(rec);
                }
                *next += 1;
            }
            Ok(())
        };
        for (t, candidate, record) in rx {
            pending.insert(t, (candidate, record));
            flush(&mut pending, &mut next, &mut candidates, &mut failures, &mut records, &mut file)?;
        }
        flush(&mut pending, &mut next, &mut candidates, &mut failures, &mut records, &mut file)?;
        file.flush().map_err(|e| Error::Invalid(format!("flush: {e}")))?;
        Ok(SearchOutcome {
            summary: SearchSection {
                trials: cfg.trials,
                candidates,
                failures,
                out_path: cfg.out.display().to_string(),
            },
            records,
        })
    })
}

/// Convenience for tests: run and return the raw log bytes.
pub fn run_search_to_bytes(cfg: &SearchConfig) -> Result<(SearchOutcome, Vec<u8>)> {
    let outcome = run_search(cfg)?;
    let bytes = std::fs::read(&cfg.out)
        .map_err(|e| Error::Invalid(format!("read {}: {e}", cfg.out.display())))?;
    Ok((outcome, bytes))
}

pub fn default_out_path(dir: &Path) -> PathBuf {
    dir.join("search.jsonl")
}

#[cfg(test)]
mod tests {
    use super::*;
    use artin_core::poly::parse_polynomial;

    /// Feeding the known exceptional matrix through the trial pipeline must
    /// produce a failure record with the general Jordan signature.
    #[test]
    fn pipeline_recognizes_the_exceptional_matrix() {
        let f3 = FieldSpec::prime(3).unwrap();
        let pp = |s: &str| parse_polynomial(s, &f3, &["x", "y", "z"]).unwrap();
        let m = SkewPolyMatrix::from_upper(
            f3.clone(),
            3,
            5,
            vec![
                ((0, 1), pp("x^2")),
                ((0, 3), pp("z^2")),
                ((1, 2), pp("y^2")),
                ((2, 3), pp("x^2")),
                ((0, 4), pp("y")),
                ((1, 4), pp("z")),
            ],
        )
        .unwrap();
        let ideal = pfaffian_ideal(&m).unwrap();
        let h = ideal.hvector(8).unwrap();
        assert_eq!(h.values(), TARGET_HVECTOR);
        let report = wlp_check(&ideal, Strategy::Exhaustive, WlpOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Fails);
        let jordan = jordan_general_exhaustive(&ideal).unwrap();
        assert_eq!(jordan.parts(), &[6, 3, 3, 3, 3, 1, 1]);
    }

    #[test]
    fn small_search_is_deterministic_and_worker_independent() {
        let dir = tempfile::tempdir().unwrap();
        let f3 = FieldSpec::prime(3).unwrap();
        let mk = |name: &str, workers: usize| SearchConfig {
            field: f3.clone(),
            trials: 200,
            seed: 0xC0FFEE,
            workers,
            out: dir.path().join(name),
        };
        let (o1, b1) = run_search_to_bytes(&mk("a.jsonl", 1)).unwrap();
        let (o2, b2) = run_search_to_bytes(&mk("b.jsonl", 1)).unwrap();
        let (o4, b4) = run_search_to_bytes(&mk("c.jsonl", 4)).unwrap();
        assert_eq!(b1, b2, "reruns must be byte-identical");
        assert_eq!(b1, b4, "worker count must not change the log");
        assert_eq!(o1.summary.candidates, o2.summary.candidates);
        assert_eq!(o1.summary.candidates, o4.summary.candidates);
        assert_eq!(o1.summary.failures, o4.summary.failures);
    }

    #[test]
    fn zero_trials_gives_an_empty_log() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = SearchConfig {
            field: FieldSpec::prime(3).unwrap(),
            trials: 0,
            seed: 1,
            workers: 2,
            out: dir.path().join("empty.jsonl"),
        };
        let (outcome, bytes) = run_search_to_bytes(&cfg).unwrap();
        assert_eq!(outcome.summary.trials, 0);
        assert_eq!(outcome.summary.candidates, 0);
        assert_eq!(outcome.summary.failures, 0);
        assert!(bytes.is_empty());
    }
}
