//! One-dimensional insertion errors on a spread-backed LCP.
//!
//! A codeword `C` from `𝒞` is sent and the receiver sees `R = C + E` with
//! `dim E = 1`. Because `𝒞 ∪ 𝒟` is a `k`-spread of `F_q^{2k}`, any
//! `(k+1)`-dimensional `R` meets every `D` in `𝒟` nontrivially, so the
//! insertion is always detected; `C` is then the unique member of `𝒞`
//! contained in `R`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::SubspaceCode;
use crate::construct::verify_spread;
use crate::error::{Error, Result};
use crate::lcp::{check_lcp, Criterion};
use crate::subspace::{projective_points, Subspace, DEFAULT_ENUM_CAP};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChannelInstance {
    c: SubspaceCode,
    d: SubspaceCode,
    k: usize,
    validated: bool,
}

impl ChannelInstance {
    /// Requires `𝒞 ∪ 𝒟` to be a `k`-spread of `F_q^{2k}` forming an LCP.
    pub fn new(c: SubspaceCode, d: SubspaceCode, cap: u64) -> Result<ChannelInstance> {
        let mut inst = ChannelInstance::new_unchecked(c, d)?;
        if inst.c.ambient() != 2 * inst.k {
            return Err(Error::BadInstance(format!(
                "ambient {} is not twice the member dimension {}",
                inst.c.ambient(),
                inst.k
            )));
        }
        let verdict = verify_spread(&inst.c.union(&inst.d)?, cap)?;
        if let Some(f) = verdict.failure {
            return Err(Error::BadInstance(format!("union is not a spread: {f:?}")));
        }
        if !check_lcp(&inst.c, &inst.d, Criterion::Pairwise)?.verdict {
            return Err(Error::NotLcp);
        }
        inst.validated = true;
        Ok(inst)
    }

    /// Skips the spread and LCP checks. Detection and decoding may then fail;
    /// failures are reported, not hidden.
    pub fn new_unchecked(c: SubspaceCode, d: SubspaceCode) -> Result<ChannelInstance> {
        if c.field() != d.field() {
            return Err(Error::ContextMismatch);
        }
        if c.ambient() != d.ambient() {
            return Err(Error::AmbientMismatch(c.ambient(), d.ambient()));
        }
        let k = c.constant_dimension().ok_or(Error::NotConstantDimension)?;
        Ok(ChannelInstance { c, d, k, validated: false })
    }

    pub fn codewords(&self) -> &SubspaceCode {
        &self.c
    }

    pub fn complements(&self) -> &SubspaceCode {
        &self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }
}

/// `R = C + E` for a one-dimensional `E`.
pub fn insert_error(c: &Subspace, e: &Subspace) -> Result<Subspace> {
    if e.dim() != 1 {
        return Err(Error::BadErrorDimension(e.dim()));
    }
    c.sum(e)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Detection {
    pub detected: bool,
    /// First member of the family meeting `R`, with the intersection.
    pub witness: Option<(usize, Subspace)>,
}

/// Scans `family` in order and stops at the first member meeting `r`.
pub fn detect(r: &Subspace, family: &SubspaceCode) -> Result<Detection> {
    if r.ambient() != family.ambient() {
        return Err(Error::AmbientMismatch(r.ambient(), family.ambient()));
    }
    for (j, d) in family.members().iter().enumerate() {
        let common = r.intersect(d)?;
        if !common.is_zero() {
            return Ok(Detection { detected: true, witness: Some((j, common)) });
        }
    }
    Ok(Detection { detected: false, witness: None })
}

/// Every member meeting `r`, with its intersection.
pub fn detect_all(r: &Subspace, family: &SubspaceCode) -> Result<Vec<(usize, Subspace)>> {
    if r.ambient() != family.ambient() {
        return Err(Error::AmbientMismatch(r.ambient(), family.ambient()));
    }
    let mut out = Vec::new();
    for (j, d) in family.members().iter().enumerate() {
        let common = r.intersect(d)?;
        if !common.is_zero() {
            out.push((j, common));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CaseTag {
    #[serde(rename = "no_error")]
    NoError,
    #[serde(rename = "error_in_D")]
    ErrorInD,
    #[serde(rename = "error_generic")]
    ErrorGeneric,
}

impl CaseTag {
    pub const ALL: [CaseTag; 3] = [CaseTag::NoError, CaseTag::ErrorInD, CaseTag::ErrorGeneric];

    pub fn name(self) -> &'static str {
        match self {
            CaseTag::NoError => "no_error",
            CaseTag::ErrorInD => "error_in_D",
            CaseTag::ErrorGeneric => "error_generic",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeResult {
    pub detected: bool,
    pub recovered: Option<Subspace>,
    /// Index of `recovered` in `𝒞`.
    pub recovered_index: Option<usize>,
    /// A complement of `recovered` in `R`.
    pub error_estimate: Option<Subspace>,
    pub case_tag: CaseTag,
}

fn contained_members(r: &Subspace, c: &SubspaceCode) -> Result<Vec<usize>> {
    let mut hits = Vec::new();
    for (i, m) in c.members().iter().enumerate() {
        if r.contains(m)? {
            hits.push(i);
        }
    }
    Ok(hits)
}

/// Lexicographically smallest vector of `r` outside `recovered`, as a line.
fn generic_complement(r: &Subspace, recovered: &Subspace) -> Result<Subspace> {
    let mut words = r.enumerate_vectors(DEFAULT_ENUM_CAP)?;
    words.sort();
    for w in words {
        if !recovered.contains_vector(&w)? {
            return Subspace::span(r.field(), r.ambient(), &[w]);
        }
    }
    Err(Error::Internal("received space equals the codeword".into()))
}

/// Recovers the transmitted codeword from `r`.
///
/// `dim R = k` must be a member of `𝒞` (no error). For `dim R = k + 1` the
/// unique member of `𝒞` inside `R` is returned; the error estimate is `R ∩ D`
/// for the first `D` in `𝒟` whose one-dimensional intersection completes the
/// codeword to `R`, and otherwise the line through the lexicographically
/// first vector of `R` outside the codeword.
pub fn correct(r: &Subspace, inst: &ChannelInstance) -> Result<DecodeResult> {
    let c = &inst.c;
    if r.ambient() != c.ambient() {
        return Err(Error::AmbientMismatch(r.ambient(), c.ambient()));
    }
    let k = inst.k;
    let detected = detect(r, &inst.d)?.detected;
    if r.dim() == k {
        let idx = c.members().iter().position(|m| m == r).ok_or(Error::NoCodewordContained)?;
        return Ok(DecodeResult {
            detected,
            recovered: Some(r.clone()),
            recovered_index: Some(idx),
            error_estimate: None,
            case_tag: CaseTag::NoError,
        });
    }
    if r.dim() != k + 1 {
        return Err(Error::BadInstance(format!("received dimension {} is neither {} nor {}", r.dim(), k, k + 1)));
    }
    let hits = contained_members(r, c)?;
    let idx = match hits.as_slice() {
        [] => return Err(Error::NoCodewordContained),
        [i] => *i,
        [i, j, ..] => return Err(Error::MultipleCodewords(*i, *j)),
    };
    let recovered = c.get(idx).clone();
    for d in inst.d.members() {
        let common = r.intersect(d)?;
        if common.dim() == 1 && recovered.sum(&common)? == *r {
            return Ok(DecodeResult {
                detected,
                recovered: Some(recovered),
                recovered_index: Some(idx),
                error_estimate: Some(common),
                case_tag: CaseTag::ErrorInD,
            });
        }
    }
    let estimate = generic_complement(r, &recovered)?;
    Ok(DecodeResult {
        detected,
        recovered: Some(recovered),
        recovered_index: Some(idx),
        error_estimate: Some(estimate),
        case_tag: CaseTag::ErrorGeneric,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimulationMode {
    Exhaustive,
    Random,
}

impl SimulationMode {
    pub fn name(self) -> &'static str {
        match self {
            SimulationMode::Exhaustive => "exhaustive",
            SimulationMode::Random => "random",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimulationConfig {
    pub mode: SimulationMode,
    /// Number of random trials; exhaustive mode runs every admissible pair.
    pub trials: u64,
    pub seed: u64,
    pub cap: u64,
    pub parallel: bool,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        SimulationConfig {
            mode: SimulationMode::Exhaustive,
            trials: 0,
            seed: 0,
            cap: DEFAULT_ENUM_CAP,
            parallel: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct TrialOutcome {
    detected: bool,
    recovered: bool,
    case: Option<CaseTag>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulationReport {
    pub mode: SimulationMode,
    pub seed: u64,
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub codewords: usize,
    pub complements: usize,
    pub trials: u64,
    pub detections: u64,
    pub correct_recoveries: u64,
    pub decode_failures: u64,
    pub case_histogram: BTreeMap<CaseTag, u64>,
    /// `None` when no trials ran.
    pub detection_rate: Option<f64>,
    pub recovery_rate: Option<f64>,
    pub rate_undefined: bool,
}

impl SimulationReport {
    pub fn to_text(&self) -> String {
        let rate = |r: Option<f64>| r.map_or("undefined".to_string(), |x| format!("{x:.6}"));
        let mut s = String::new();
        let _ = writeln!(s, "mode: {}", self.mode.name());
        let _ = writeln!(s, "seed: {}", self.seed);
        let _ = writeln!(s, "q: {}", self.q);
        let _ = writeln!(s, "n: {}", self.n);
        let _ = writeln!(s, "k: {}", self.k);
        let _ = writeln!(s, "codewords: {}", self.codewords);
        let _ = writeln!(s, "complements: {}", self.complements);
        let _ = writeln!(s, "trials: {}", self.trials);
        let _ = writeln!(s, "detections: {}", self.detections);
        let _ = writeln!(s, "correct_recoveries: {}", self.correct_recoveries);
        let _ = writeln!(s, "decode_failures: {}", self.decode_failures);
        for (tag, count) in &self.case_histogram {
            let _ = writeln!(s, "case.{}: {}", tag.name(), count);
        }
        let _ = writeln!(s, "detection_rate: {}", rate(self.detection_rate));
        let _ = writeln!(s, "recovery_rate: {}", rate(self.recovery_rate));
        let _ = writeln!(s, "rate_undefined: {}", self.rate_undefined);
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn run_trial(inst: &ChannelInstance, ci: usize, e: &Subspace) -> Result<TrialOutcome> {
    let sent = inst.c.get(ci);
    let r = insert_error(sent, e)?;
    let detected = detect(&r, &inst.d)?.detected;
    Ok(match correct(&r, inst) {
        Ok(res) => TrialOutcome { detected, recovered: res.recovered.as_ref() == Some(sent), case: Some(res.case_tag) },
        Err(_) => TrialOutcome { detected, recovered: false, case: None },
    })
}

fn random_trial(inst: &ChannelInstance, seed: u64, t: u64) -> Result<TrialOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t);
    let field = inst.c.field();
    let n = inst.c.ambient();
    let ci = rng.gen_range(0..inst.c.len());
    let sent = inst.c.get(ci);
    if sent.dim() == n {
        return Err(Error::BadInstance("codeword fills the ambient space".into()));
    }
    loop {
        let v: Vec<u32> = (0..n).map(|_| rng.gen_range(0..field.q())).collect();
        if v.iter().any(|&x| x != 0) && !sent.contains_vector(&v)? {
            let e = Subspace::span(field, n, &[v])?;
            return run_trial(inst, ci, &e);
        }
    }
}

/// Runs insert, detect and correct over many transmissions.
///
/// Exhaustive mode tries every codeword with every line `E ⊄ C`. Random mode
/// draws each trial from its own ChaCha8 stream keyed by `(seed, trial)`, so
/// serial and parallel runs agree.
pub fn simulate(inst: &ChannelInstance, cfg: &SimulationConfig) -> Result<SimulationReport> {
    let outcomes: Vec<TrialOutcome> = match cfg.mode {
        SimulationMode::Exhaustive => {
            let field = inst.c.field();
            let n = inst.c.ambient();
            let mut jobs = Vec::new();
            for p in projective_points(field, n, cfg.cap)? {
                let e = Subspace::span(field, n, &[p])?;
                for (ci, c) in inst.c.members().iter().enumerate() {
                    if !c.contains(&e)? {
                        jobs.push((ci, e.clone()));
                    }
                }
            }
            jobs.sort_by_key(|(ci, _)| *ci);
            if cfg.parallel {
                jobs.par_iter().map(|(ci, e)| run_trial(inst, *ci, e)).collect::<Result<_>>()?
            } else {
                jobs.iter().map(|(ci, e)| run_trial(inst, *ci, e)).collect::<Result<_>>()?
            }
        }
        SimulationMode::Random => {
            if cfg.parallel {
                (0..cfg.trials).into_par_iter().map(|t| random_trial(inst, cfg.seed, t)).collect::<Result<_>>()?
            } else {
                (0..cfg.trials).map(|t| random_trial(inst, cfg.seed, t)).collect::<Result<_>>()?
            }
        }
    };
    let trials = outcomes.len() as u64;
    let mut case_histogram: BTreeMap<CaseTag, u64> = CaseTag::ALL.iter().map(|&t| (t, 0)).collect();
    let (mut detections, mut recoveries, mut failures) = (0, 0, 0);
    for o in &outcomes {
        detections += o.detected as u64;
        recoveries += o.recovered as u64;
        match o.case {
            Some(tag) => *case_histogram.entry(tag).or_default() += 1,
            None => failures += 1,
        }
    }
    let rate = |x: u64| (trials > 0).then(|| x as f64 / trials as f64);
    Ok(SimulationReport {
        mode: cfg.mode,
        seed: cfg.seed,
        q: inst.c.field().q(),
        n: inst.c.ambient(),
        k: inst.k,
        codewords: inst.c.len(),
        complements: inst.d.len(),
        trials,
        detections,
        correct_recoveries: recoveries,
        decode_failures: failures,
        case_histogram,
        detection_rate: rate(detections),
        recovery_rate: rate(recoveries),
        rate_undefined: trials == 0,
    })
}
