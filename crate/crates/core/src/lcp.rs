//! Linear complementary pairs of subspace codes.
//!
//! `{C, D}` is an LCP when every `C_i` meets every `D_j` only in zero. Four
//! equivalent tests are offered:
//!
//! - `Pairwise`: `C_i ∩ D_j = 0` directly.
//! - `Distance`: `d_s(C_i, D_j) = dim C_i + dim D_j`.
//! - `RightInv`: `G_{C_i} H_{D_j}^T` has full row rank.
//! - `Stacked`: the square matrix `[G_{C_i}; G_{D_j}]` is invertible; only
//!   defined when `dim C_i + dim D_j = n` for every pair.
//!
//! Pairs are scanned row-major (`i`, then `j`). Witness vectors are re-checked
//! against both subspaces before a report is returned.

use serde::Serialize;

use crate::code::{dimension_profiles_compatible, SubspaceCode};
use crate::error::{Error, Result};
use crate::subspace::Subspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    Pairwise,
    Distance,
    RightInv,
    Stacked,
}

impl Criterion {
    pub const ALL: [Criterion; 4] = [Criterion::Pairwise, Criterion::Distance, Criterion::RightInv, Criterion::Stacked];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Pairwise => "pairwise",
            Criterion::Distance => "distance",
            Criterion::RightInv => "right-inv",
            Criterion::Stacked => "stacked",
        }
    }

    pub fn parse(s: &str) -> Option<Criterion> {
        Criterion::ALL.into_iter().find(|c| c.name() == s || c.name().replace('-', "_") == s)
    }
}

/// A pair `(C_i, D_j)` that intersects nontrivially, with a nonzero common vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub c_index: usize,
    pub d_index: usize,
    pub witness: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LcpReport {
    pub verdict: bool,
    pub criterion: Criterion,
    /// First violating pair in row-major order.
    pub violating_pair: Option<Violation>,
    /// Every violating pair; only filled in full-scan mode.
    pub all_violations: Vec<Violation>,
    /// Whether the dimension profiles are complementary.
    pub profile_ok: bool,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CheckOptions {
    /// Keep scanning after the first violation.
    pub full_scan: bool,
}

fn compatible(c: &SubspaceCode, d: &SubspaceCode) -> Result<()> {
    if c.field() != d.field() {
        return Err(Error::ContextMismatch);
    }
    if c.ambient() != d.ambient() {
        return Err(Error::AmbientMismatch(c.ambient(), d.ambient()));
    }
    Ok(())
}

/// `G_C H_D^T` has full row rank.
pub fn right_inv_pair(c: &Subspace, d: &Subspace) -> Result<bool> {
    let h = d.orthogonal();
    Ok(c.basis().mul_transpose(h.basis())?.right_invertible())
}

/// Whether `(c, d)` intersects trivially according to `criterion`.
pub fn pair_is_complementary(c: &Subspace, d: &Subspace, criterion: Criterion) -> Result<bool> {
    match criterion {
        Criterion::Pairwise => Ok(c.intersect(d)?.is_zero()),
        Criterion::Distance => Ok(c.distance(d)? == c.dim() + d.dim()),
        Criterion::RightInv => right_inv_pair(c, d),
        Criterion::Stacked => c.basis().vstack(d.basis())?.square_invertible(),
    }
}

fn witness(c: &Subspace, d: &Subspace) -> Result<Vec<u32>> {
    let common = c.intersect(d)?;
    if common.is_zero() {
        return Err(Error::Internal("criterion reported a violation on a trivial intersection".into()));
    }
    let w = common.basis().row(0).to_vec();
    if w.iter().all(|&x| x == 0) || !c.contains_vector(&w)? || !d.contains_vector(&w)? {
        return Err(Error::Internal("witness failed verification".into()));
    }
    Ok(w)
}

pub fn check_lcp(c: &SubspaceCode, d: &SubspaceCode, criterion: Criterion) -> Result<LcpReport> {
    check_lcp_with(c, d, criterion, CheckOptions::default())
}

pub fn check_lcp_with(
    c: &SubspaceCode,
    d: &SubspaceCode,
    criterion: Criterion,
    opts: CheckOptions,
) -> Result<LcpReport> {
    compatible(c, d)?;
    let n = c.ambient();
    if criterion == Criterion::Stacked {
        for (i, ci) in c.members().iter().enumerate() {
            for (j, dj) in d.members().iter().enumerate() {
                if ci.dim() + dj.dim() != n {
                    return Err(Error::StackedNotSquare { c: i, d: j });
                }
            }
        }
    }
    let mut warnings = Vec::new();
    if c.len() < 2 || d.len() < 2 {
        warnings.push("a family has fewer than two members".to_string());
    }
    let mut all = Vec::new();
    'scan: for (i, ci) in c.members().iter().enumerate() {
        for (j, dj) in d.members().iter().enumerate() {
            if !pair_is_complementary(ci, dj, criterion)? {
                all.push(Violation { c_index: i, d_index: j, witness: witness(ci, dj)? });
                if !opts.full_scan {
                    break 'scan;
                }
            }
        }
    }
    Ok(LcpReport {
        verdict: all.is_empty(),
        criterion,
        violating_pair: all.first().cloned(),
        all_violations: if opts.full_scan { all } else { Vec::new() },
        profile_ok: dimension_profiles_compatible(c, d)?,
        warnings,
    })
}

/// Shorthand for the pairwise verdict.
pub fn is_lcp(c: &SubspaceCode, d: &SubspaceCode) -> Result<bool> {
    Ok(check_lcp(c, d, Criterion::Pairwise)?.verdict)
}

/// `C` is LCD when each member meets its own orthogonal complement trivially.
pub fn is_lcd(c: &SubspaceCode) -> bool {
    c.members().iter().all(|m| m.intersect(&m.orthogonal()).is_ok_and(|x| x.is_zero()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualEquivalence {
    /// Every pair has `dim C_i + dim D_j = n`.
    pub applicable: bool,
    /// Whether `LCP(C, D)` and `LCP(C^⊥, D^⊥)` agree; `None` when not applicable.
    pub equivalent: Option<bool>,
}

pub fn dual_equivalence_check(c: &SubspaceCode, d: &SubspaceCode) -> Result<DualEquivalence> {
    compatible(c, d)?;
    let n = c.ambient();
    let applicable = c.members().iter().all(|ci| d.members().iter().all(|dj| ci.dim() + dj.dim() == n));
    if !applicable {
        return Ok(DualEquivalence { applicable, equivalent: None });
    }
    let primal = is_lcp(c, d)?;
    let dual = is_lcp(&c.dual(), &d.dual())?;
    Ok(DualEquivalence { applicable, equivalent: Some(primal == dual) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    DirectSum,
    Bijection,
    Involution,
    Isometry,
}

/// An index map `f` on the members of a subspace code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementFunction {
    domain: SubspaceCode,
    mapping: Vec<usize>,
}

impl ComplementFunction {
    pub fn new(domain: SubspaceCode, mapping: Vec<usize>) -> Result<ComplementFunction> {
        if mapping.len() != domain.len() {
            return Err(Error::BadComplementFunction(format!(
                "mapping has {} entries for {} members",
                mapping.len(),
                domain.len()
            )));
        }
        if let Some(&bad) = mapping.iter().find(|&&t| t >= domain.len()) {
            return Err(Error::BadComplementFunction(format!("image index {bad} out of range")));
        }
        Ok(ComplementFunction { domain, mapping })
    }

    pub fn domain(&self) -> &SubspaceCode {
        &self.domain
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn apply(&self, i: usize) -> &Subspace {
        self.domain.get(self.mapping[i])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ComplementVerdict {
    pub valid: bool,
    pub failed_axiom: Option<Axiom>,
}

/// Checks the complement-function axioms in order and reports the first failure.
pub fn verify_complement_function(f: &ComplementFunction) -> Result<ComplementVerdict> {
    let dom = f.domain();
    let n = dom.ambient();
    let fail = |a| Ok(ComplementVerdict { valid: false, failed_axiom: Some(a) });

    for (i, x) in dom.members().iter().enumerate() {
        let fx = f.apply(i);
        if x.dim() + fx.dim() != n || !x.intersect(fx)?.is_zero() {
            return fail(Axiom::DirectSum);
        }
    }

    let profile = dom.dimension_profile();
    for (&k, &count) in &profile.counts {
        if profile.counts.get(&(n - k)).copied().unwrap_or(0) != count {
            return fail(Axiom::Bijection);
        }
    }
    let mut seen = vec![false; dom.len()];
    for (i, x) in dom.members().iter().enumerate() {
        let t = f.mapping[i];
        if dom.get(t).dim() != n - x.dim() || seen[t] {
            return fail(Axiom::Bijection);
        }
        seen[t] = true;
    }

    if (0..dom.len()).any(|i| f.mapping[f.mapping[i]] != i) {
        return fail(Axiom::Involution);
    }

    for i in 0..dom.len() {
        for j in i + 1..dom.len() {
            if f.apply(i).distance(f.apply(j))? != dom.get(i).distance(dom.get(j))? {
                return fail(Axiom::Isometry);
            }
        }
    }
    Ok(ComplementVerdict { valid: true, failed_axiom: None })
}

/// Index pairing `C_i <-> D_i` on `C ∪ D` (C members first).
pub fn complement_from_lcp(c: &SubspaceCode, d: &SubspaceCode) -> Result<ComplementFunction> {
    compatible(c, d)?;
    if c.len() != d.len() {
        return Err(Error::SizeMismatch(c.len(), d.len()));
    }
    let n = c.ambient();
    let (Some(k), Some(kd)) = (c.constant_dimension(), d.constant_dimension()) else {
        return Err(Error::NotConstantDimension);
    };
    if k + kd != n {
        return Err(Error::NotConstantDimension);
    }
    if !is_lcp(c, d)? {
        return Err(Error::NotLcp);
    }
    let s = c.len();
    let mapping = (0..2 * s).map(|i| if i < s { i + s } else { i - s }).collect();
    ComplementFunction::new(c.union(d)?, mapping)
}
