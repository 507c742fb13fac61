//! The `[u+v | λu-λv]` combination and its three LCP statements.

use serde::Serialize;

use super::plotkin::BlockMatrices;
use crate::code::{LinearCode, SubspaceCode};
use crate::error::{Error, Result};
use crate::lcp::{check_lcp, is_lcp, Criterion};
use crate::subspace::Subspace;

/// `G = [[G1, λG1], [G2, -λG2]]`, `H = [[H1, λ⁻¹H1], [H2, -λ⁻¹H2]]`.
pub fn s_lambda_matrices(c1: &LinearCode, c2: &LinearCode, lambda: u32) -> Result<BlockMatrices> {
    let f = c1.field();
    if f != c2.field() {
        return Err(Error::ContextMismatch);
    }
    f.check(lambda as u64)?;
    if lambda == 0 {
        return Err(Error::ZeroLambda);
    }
    if c1.length() != c2.length() {
        return Err(Error::LengthMismatch { expected: c1.length(), found: c2.length() });
    }
    let inv = f.inv(lambda)?;
    let (g1, g2) = (c1.generator(), c2.generator());
    let (h1, h2) = (c1.parity_check(), c2.parity_check());
    Ok(BlockMatrices {
        generator: g1.hstack(&g1.scale(lambda))?.vstack(&g2.hstack(&g2.scale(f.neg(lambda)))?)?,
        parity_check: h1.hstack(&h1.scale(inv))?.vstack(&h2.hstack(&h2.scale(f.neg(inv)))?)?,
    })
}

/// `S_λ(C1, C2) = {(u+v, λu-λv) : u in C1, v in C2}`.
pub fn s_lambda(c1: &LinearCode, c2: &LinearCode, lambda: u32) -> Result<LinearCode> {
    Ok(LinearCode::span_of(&s_lambda_matrices(c1, c2, lambda)?.generator))
}

fn s_of(a: &Subspace, b: &Subspace, lambda: u32) -> Result<Subspace> {
    Ok(s_lambda(&LinearCode::from_subspace(a), &LinearCode::from_subspace(b), lambda)?.subspace())
}

/// Families produced by one of the theorem hooks.
///
/// `memberwise` is true when the `i`-th member of `first` meets the `i`-th
/// member of `second` trivially for every `i`; `family` is the full pairwise
/// LCP verdict over all index pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HookOutcome {
    #[serde(skip)]
    pub first: SubspaceCode,
    #[serde(skip)]
    pub second: SubspaceCode,
    pub memberwise: bool,
    pub family: bool,
}

impl HookOutcome {
    fn evaluate(first: SubspaceCode, second: SubspaceCode) -> Result<HookOutcome> {
        let mut memberwise = true;
        for (a, b) in first.members().iter().zip(second.members()) {
            if !a.intersect(b)?.is_zero() {
                memberwise = false;
                break;
            }
        }
        let family = check_lcp(&first, &second, Criterion::Pairwise)?.verdict;
        Ok(HookOutcome { first, second, memberwise, family })
    }
}

fn require_odd(field: &crate::algebra::Field) -> Result<()> {
    if field.p() == 2 {
        Err(Error::EvenCharacteristic)
    } else {
        Ok(())
    }
}

/// Families `{S_λ(C1, C2)}` over `C1 in 𝒞1, C2 in 𝒞2` and `{S_λ(D1, D2)}` over
/// `D1 in 𝒟1, D2 in 𝒟2`. The claim is that these form an LCP whenever both
/// inputs do and `q` is odd.
pub fn s_lambda_lcp(
    c1: &SubspaceCode,
    d1: &SubspaceCode,
    c2: &SubspaceCode,
    d2: &SubspaceCode,
    lambda: u32,
) -> Result<HookOutcome> {
    require_odd(c1.field())?;
    if !is_lcp(c1, d1)? {
        return Err(Error::NotLcpInput(1));
    }
    if !is_lcp(c2, d2)? {
        return Err(Error::NotLcpInput(2));
    }
    let product = |a: &SubspaceCode, b: &SubspaceCode| -> Result<SubspaceCode> {
        let mut out = Vec::new();
        for x in a.members() {
            for y in b.members() {
                out.push(s_of(x, y, lambda)?);
            }
        }
        SubspaceCode::new(out)
    };
    HookOutcome::evaluate(product(c1, c2)?, product(d1, d2)?)
}

/// For an LCP `{𝒞, 𝒟}` with `dim C + dim D = n` on every pair and `λ² = -1`:
/// `S = S_λ(C, D^⊥)` over `C in 𝒞`, `D in 𝒟`, paired index-wise with `S^⊥`.
/// Each `S` is LCD.
///
/// The dimension condition is what makes `G_C H_{D^⊥}^T` square; without it
/// `S ∩ S^⊥` can be nonzero, so it is enforced.
pub fn s_lambda_dual_lcp(c: &SubspaceCode, d: &SubspaceCode, lambda: u32) -> Result<HookOutcome> {
    let f = c.field();
    require_odd(f)?;
    if f.mul(lambda, lambda) != f.neg(1) {
        return Err(Error::LambdaCondition("λ² = -1"));
    }
    if !is_lcp(c, d)? {
        return Err(Error::NotLcpInput(1));
    }
    for (i, x) in c.members().iter().enumerate() {
        for (j, y) in d.members().iter().enumerate() {
            if x.dim() + y.dim() != c.ambient() {
                return Err(Error::DimensionsNotComplementary { c: i, d: j });
            }
        }
    }
    let mut first = Vec::new();
    for x in c.members() {
        for y in d.members() {
            first.push(s_of(x, &y.orthogonal(), lambda)?);
        }
    }
    let first = SubspaceCode::new(first)?;
    let second = first.dual();
    HookOutcome::evaluate(first, second)
}

/// For an LCD code `𝒞` and `λ² = 1`: `S = S_λ(C1, C2)` over ordered pairs of
/// members, paired index-wise with `S^⊥`. Each `S` is LCD.
pub fn s_lambda_lcd(c: &SubspaceCode, lambda: u32) -> Result<HookOutcome> {
    let f = c.field();
    require_odd(f)?;
    if f.mul(lambda, lambda) != 1 {
        return Err(Error::LambdaCondition("λ² = 1"));
    }
    if !crate::lcp::is_lcd(c) {
        return Err(Error::NotLcpInput(1));
    }
    let mut first = Vec::new();
    for x in c.members() {
        for y in c.members() {
            first.push(s_of(x, y, lambda)?);
        }
    }
    let first = SubspaceCode::new(first)?;
    let second = first.dual();
    HookOutcome::evaluate(first, second)
}
