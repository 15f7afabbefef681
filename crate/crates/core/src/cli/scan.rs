//! One report row per prime.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cache::{Cache, CacheEntry, FieldKey};
use crate::arith;
use crate::eisenstein::is_cube_mod_p;
use crate::error::Result;
use crate::pipelines::{
    classify, verify_a_m, verify_main, verify_norm_equation_criterion, CaseLabel, Certificate, NormEqOutcome,
    PipelineConfig, Verdict,
};

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub min: u64,
    pub max: u64,
    pub cases: Vec<CaseLabel>,
    pub pipeline: PipelineConfig,
    pub jobs: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassData {
    pub invariants: Vec<u64>,
    pub three_part: Vec<u64>,
    pub certified: bool,
}

impl ClassData {
    fn from_entry(e: &CacheEntry) -> Self {
        let three_part = e
            .invariants
            .iter()
            .filter_map(|&d| {
                let mut t = 1;
                let mut d = d;
                while d % 3 == 0 {
                    d /= 3;
                    t *= 3;
                }
                (t > 1).then_some(t)
            })
            .collect();
        ClassData { invariants: e.invariants.clone(), three_part, certified: e.certified }
    }

    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub p: u64,
    pub p_mod_9: u64,
    pub cube3: bool,
    pub case: CaseLabel,
    pub h_f: Option<u64>,
    #[serde(rename = "A_F")]
    pub a_f: Option<ClassData>,
    #[serde(rename = "A_K")]
    pub a_k: Option<ClassData>,
    #[serde(rename = "A_M_cert")]
    pub a_m_cert: Option<u64>,
    pub thm2_cert: Option<String>,
    /// witness, refuted, inconclusive or skipped.
    pub norm_eq: String,
    pub verdict: Verdict,
    pub assumptions: Vec<String>,
    pub errors: Vec<String>,
    pub certificates: Vec<Certificate>,
    pub timings_ms: BTreeMap<String, u64>,
}

fn timed<T>(timings: &mut BTreeMap<String, u64>, name: &str, f: impl FnOnce() -> T) -> T {
    let t = Instant::now();
    let r = f();
    timings.insert(name.into(), t.elapsed().as_millis() as u64);
    r
}

/// Known shape of the 3-part of each class group by case.
fn expected_shape(case: CaseLabel, a_f: &[u64], a_k: Option<&[u64]>) -> Verdict {
    let ok_f = match case {
        CaseLabel::Case1 => a_f.is_empty(),
        CaseLabel::Case4 | CaseLabel::CaseMain => a_f == [3],
        CaseLabel::Case3 => a_f.len() == 1,
    };
    let ok_k = match (case, a_k) {
        (_, None) => true,
        (CaseLabel::Case1, Some(k)) => k.is_empty(),
        (CaseLabel::Case4, Some(k)) => k == [3],
        (CaseLabel::CaseMain, Some(k)) => k == [3, 3],
        // rank 2 exactly when 9 divides |A_F|
        (CaseLabel::Case3, Some(k)) => {
            let nine = a_f.first().is_some_and(|&d| d % 9 == 0);
            !k.is_empty() && k.len() <= 2 && (k.len() == 2) == nine
        }
    };
    Verdict::from_checks(ok_f && ok_k)
}

pub fn scan_row(p: u64, cfg: &ScanConfig, cache: &Cache) -> Result<ReportRow> {
    let case = classify(p)?;
    let mut row = ReportRow {
        p,
        p_mod_9: p % 9,
        cube3: is_cube_mod_p(3, p)?,
        case,
        h_f: None,
        a_f: None,
        a_k: None,
        a_m_cert: None,
        thm2_cert: None,
        norm_eq: "skipped".into(),
        verdict: Verdict::Pass,
        assumptions: Vec::new(),
        errors: Vec::new(),
        certificates: Vec::new(),
        timings_ms: BTreeMap::new(),
    };
    let pc = &cfg.pipeline;
    let mut verdict = Verdict::Pass;
    let mut record = |row: &mut ReportRow, c: Certificate| {
        verdict = verdict.and(c.verdict);
        for f in &c.assumed_facts {
            if !row.assumptions.contains(f) {
                row.assumptions.push(f.clone());
            }
        }
        row.certificates.push(c);
    };
    let fail = |row: &mut ReportRow, e: crate::Error| row.errors.push(e.to_string());

    if case != CaseLabel::Case1 {
        match timed(&mut row.timings_ms, "A_M", || verify_a_m(p)) {
            Ok(r) => {
                row.a_m_cert = Some(r.chevalley.result);
                record(&mut row, r.certificate);
            }
            Err(e) => fail(&mut row, e),
        }
    }
    if case == CaseLabel::CaseMain {
        // the class groups are cross-checked below through the cache
        let main_cfg = PipelineConfig { with_class_groups: false, ..pc.clone() };
        match timed(&mut row.timings_ms, "main", || verify_main(p, &main_cfg)) {
            Ok(r) => {
                let t = &r.theorem2;
                row.thm2_cert = Some(format!("A_L^G={};index_S={}", t.a_l_invariants(), t.s_unit_index()));
                record(&mut row, t.certificate.clone());
                record(&mut row, r.certificate);
            }
            Err(e) => fail(&mut row, e),
        }
    }
    if pc.with_class_groups {
        let f = timed(&mut row.timings_ms, "A_F", || cache.class_group(FieldKey::Pure(p), &pc.effort));
        match f {
            Ok(e) => {
                row.h_f = Some(e.invariants.iter().product());
                row.a_f = Some(ClassData::from_entry(&e));
            }
            Err(e) => fail(&mut row, e),
        }
        if pc.with_ak {
            match timed(&mut row.timings_ms, "A_K", || cache.class_group(FieldKey::Closure(p), &pc.effort)) {
                Ok(e) => row.a_k = Some(ClassData::from_entry(&e)),
                Err(e) => fail(&mut row, e),
            }
        }
        if matches!(case, CaseLabel::Case4 | CaseLabel::CaseMain) {
            match timed(&mut row.timings_ms, "norm_eq", || verify_norm_equation_criterion(p, &pc.effort)) {
                Ok(r) => {
                    row.norm_eq = match r.outcome {
                        NormEqOutcome::Witness { .. } => "witness",
                        NormEqOutcome::Refuted { .. } => "refuted",
                        NormEqOutcome::Inconclusive { .. } => "inconclusive",
                    }
                    .into();
                    record(&mut row, r.certificate);
                }
                Err(e) => fail(&mut row, e),
            }
        }
    }
    if let Some(f) = &row.a_f {
        let k = row.a_k.as_ref().map(|k| k.three_part.as_slice());
        let shape = expected_shape(case, &f.three_part, k);
        let certified = f.certified && row.a_k.as_ref().is_none_or(|k| k.certified);
        verdict = verdict.and(match (shape, certified) {
            (Verdict::Pass, true) => Verdict::Pass,
            (Verdict::Fail, true) => Verdict::Fail,
            _ => Verdict::Inconclusive,
        });
    }
    if !row.errors.is_empty() {
        verdict = verdict.and(Verdict::Inconclusive);
    }
    row.verdict = verdict;
    Ok(row)
}

/// Rows in ascending order of `p`; a failing row records its error instead
/// of aborting the scan.
pub fn scan(cfg: &ScanConfig, cache: &Cache, progress: Option<&(dyn Fn(&ReportRow) + Sync)>) -> Result<Vec<ReportRow>> {
    let primes: Vec<u64> = (cfg.min.max(5)..=cfg.max)
        .filter(|&p| arith::is_prime(p))
        .filter(|&p| cfg.cases.is_empty() || classify(p).is_ok_and(|c| cfg.cases.contains(&c)))
        .collect();
    let run = || {
        primes
            .par_iter()
            .map(|&p| {
                let row = scan_row(p, cfg, cache).unwrap_or_else(|e| error_row(p, e));
                if let Some(f) = progress {
                    f(&row);
                }
                row
            })
            .collect::<Vec<_>>()
    };
    let mut rows = match cfg.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| crate::Error::Precondition(e.to_string()))?
            .install(run),
        None => run(),
    };
    rows.sort_by_key(|r| r.p);
    Ok(rows)
}

fn error_row(p: u64, e: crate::Error) -> ReportRow {
    ReportRow {
        p,
        p_mod_9: p % 9,
        cube3: is_cube_mod_p(3, p).unwrap_or(false),
        case: classify(p).unwrap_or(CaseLabel::Case1),
        h_f: None,
        a_f: None,
        a_k: None,
        a_m_cert: None,
        thm2_cert: None,
        norm_eq: "skipped".into(),
        verdict: Verdict::Inconclusive,
        assumptions: Vec::new(),
        errors: vec![e.to_string()],
        certificates: Vec::new(),
        timings_ms: BTreeMap::new(),
    }
}
