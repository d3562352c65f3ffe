//! Exhaustive comparison of the pattern test with the expansion test.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::find_bad_pair;
use crate::error::{Error, Result};
use crate::forest::{forest_polynomial, IndexedForest};
use crate::permutation::Permutation;
use crate::pipedream::schubert;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Largest `n` accepted.
    pub max_n: usize,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Also compare bad-pair existence with polynomial inequality on
    /// permutations avoiding 1432.
    pub check_bad_pairs: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_n: 7,
            jobs: None,
            check_bad_pairs: true,
        }
    }
}

/// A permutation on which the two tests give different answers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub perm: String,
    pub by_pattern: bool,
    pub by_expansion: bool,
    /// First forbidden pattern found, if any.
    pub pattern: Option<String>,
    /// 1-based positions of that occurrence.
    pub indices: Vec<usize>,
}

/// A 1432-avoiding permutation where bad-pair existence and polynomial
/// inequality do not match.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadPairMismatch {
    pub perm: String,
    pub has_bad_pair: bool,
    pub polynomials_differ: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub n: usize,
    pub total: usize,
    pub pattern_positive: usize,
    pub expansion_positive: usize,
    pub agreements: usize,
    pub disagreements: Vec<Disagreement>,
    /// Number of 1432-avoiding permutations whose bad pairs were checked.
    pub bad_pair_checked: usize,
    pub bad_pair_mismatches: Vec<BadPairMismatch>,
    pub elapsed_ms: u64,
}

impl TheoremReport {
    pub fn is_clean(&self) -> bool {
        self.disagreements.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serialization is infallible")
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        let rows = [
            ("n", self.n.to_string()),
            ("permutations", self.total.to_string()),
            ("forest by pattern", self.pattern_positive.to_string()),
            ("forest by expansion", self.expansion_positive.to_string()),
            ("agreements", self.agreements.to_string()),
            ("disagreements", self.disagreements.len().to_string()),
            ("bad-pair checks", self.bad_pair_checked.to_string()),
            ("bad-pair mismatches", self.bad_pair_mismatches.len().to_string()),
            ("elapsed (ms)", self.elapsed_ms.to_string()),
        ];
        for (label, value) in rows {
            let _ = writeln!(out, "{label:<22}{value:>10}");
        }
        for d in &self.disagreements {
            let pattern = match &d.pattern {
                Some(p) => format!("contains {p} at {:?}", d.indices),
                None => "avoids every pattern".to_string(),
            };
            let _ = writeln!(
                out,
                "disagreement: {} pattern={} expansion={} ({pattern})",
                d.perm, d.by_pattern, d.by_expansion
            );
        }
        for f in &self.bad_pair_mismatches {
            let _ = writeln!(
                out,
                "bad-pair mismatch: {} bad_pair={} polynomials_differ={}",
                f.perm, f.has_bad_pair, f.polynomials_differ
            );
        }
        out
    }
}

struct Verdict {
    perm: Permutation,
    pattern: Option<(Permutation, Vec<usize>)>,
    expansion: bool,
    bad_pair: Option<bool>,
}

fn judge(w: Permutation, check_bad_pairs: bool) -> Verdict {
    let pattern = w.first_forbidden();
    let expansion = schubert(&w) == forest_polynomial(&IndexedForest::from_code(&w.lehmer_code()));
    let avoids_1432 = w.find_pattern(&[1, 4, 3, 2]).is_none();
    let bad_pair = (check_bad_pairs && avoids_1432).then(|| find_bad_pair(&w).is_some());
    Verdict {
        perm: w,
        pattern,
        expansion,
        bad_pair,
    }
}

/// Runs both tests on every permutation of `1..=n`.
pub fn verify_theorem(n: usize, config: &VerifyConfig) -> Result<TheoremReport> {
    verify_theorem_with_progress(n, config, |_, _| {})
}

/// Like [`verify_theorem`], calling `progress(done, total)` after every 1000
/// permutations and once at the end.
pub fn verify_theorem_with_progress(
    n: usize,
    config: &VerifyConfig,
    progress: impl Fn(usize, usize) + Sync,
) -> Result<TheoremReport> {
    if n == 0 || n > config.max_n {
        return Err(Error::SizeOutOfRange { n, max: config.max_n });
    }
    let start = Instant::now();
    let perms: Vec<Permutation> = Permutation::all(n).collect();
    let total = perms.len();
    let done = AtomicUsize::new(0);
    let run = || -> Vec<Verdict> {
        perms
            .into_par_iter()
            .map(|w| {
                let v = judge(w, config.check_bad_pairs);
                let k = done.fetch_add(1, Ordering::Relaxed) + 1;
                if k.is_multiple_of(1000) || k == total {
                    progress(k, total);
                }
                v
            })
            .collect()
    };
    let verdicts = match config.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .expect("thread pool starts")
            .install(run),
        None => run(),
    };

    let mut report = TheoremReport {
        n,
        total,
        pattern_positive: 0,
        expansion_positive: 0,
        agreements: 0,
        disagreements: Vec::new(),
        bad_pair_checked: 0,
        bad_pair_mismatches: Vec::new(),
        elapsed_ms: 0,
    };
    // verdicts arrive in lexicographic order whatever the thread count
    for v in verdicts {
        let by_pattern = v.pattern.is_none();
        report.pattern_positive += by_pattern as usize;
        report.expansion_positive += v.expansion as usize;
        if by_pattern == v.expansion {
            report.agreements += 1;
        } else {
            report.disagreements.push(Disagreement {
                perm: v.perm.to_string(),
                by_pattern,
                by_expansion: v.expansion,
                pattern: v.pattern.as_ref().map(|(p, _)| p.to_string()),
                indices: v.pattern.map(|(_, at)| at).unwrap_or_default(),
            });
        }
        if let Some(has_bad_pair) = v.bad_pair {
            report.bad_pair_checked += 1;
            if has_bad_pair == v.expansion {
                report.bad_pair_mismatches.push(BadPairMismatch {
                    perm: v.perm.to_string(),
                    has_bad_pair,
                    polynomials_differ: !v.expansion,
                });
            }
        }
    }
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
