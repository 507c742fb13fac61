//! `k`-spreads of `F_q^n`: families of `k`-dimensional subspaces partitioning
//! the nonzero vectors.

use serde::Serialize;

use crate::algebra::{default_irreducible, Field, Matrix, Polynomial};
use crate::code::SubspaceCode;
use crate::error::{Error, Result};
use crate::subspace::{odometer_next, Subspace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spread {
    code: SubspaceCode,
    k: usize,
}

impl Spread {
    /// Validates `code` with [`verify_spread`].
    pub fn from_code(code: SubspaceCode, cap: u64) -> Result<Spread> {
        let verdict = verify_spread(&code, cap)?;
        match verdict.failure {
            None => {
                let k = code.constant_dimension().expect("verified constant dimension");
                Ok(Spread { code, k })
            }
            Some(f) => Err(Error::BadInstance(format!("not a spread: {f:?}"))),
        }
    }

    pub fn code(&self) -> &SubspaceCode {
        &self.code
    }

    pub fn into_code(self) -> SubspaceCode {
        self.code
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ambient(&self) -> usize {
        self.code.ambient()
    }

    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.code.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpreadFailure {
    NotConstantDim,
    KNotDivisor,
    BadCount,
    Overlap,
    CoverageGap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpreadVerdict {
    pub valid: bool,
    pub failure: Option<SpreadFailure>,
}

/// `(q^n - 1) / (q^k - 1)`.
pub fn spread_size(q: u32, n: usize, k: usize) -> u128 {
    ((q as u128).pow(n as u32) - 1) / ((q as u128).pow(k as u32) - 1)
}

/// Checks in order: constant dimension, `k | n`, member count, pairwise
/// trivial intersection, and exhaustive coverage of every nonzero vector
/// exactly once.
pub fn verify_spread(sc: &SubspaceCode, cap: u64) -> Result<SpreadVerdict> {
    let fail = |f| Ok(SpreadVerdict { valid: false, failure: Some(f) });
    let field = sc.field();
    let q = field.q();
    let n = sc.ambient();
    let space = (q as u128).pow(n as u32);
    if space > cap as u128 {
        return Err(Error::EnumerationTooLarge { size: space, cap });
    }
    let Some(k) = sc.constant_dimension() else {
        return fail(SpreadFailure::NotConstantDim);
    };
    if k == 0 || !n.is_multiple_of(k) {
        return fail(SpreadFailure::KNotDivisor);
    }
    if sc.len() as u128 != spread_size(q, n, k) {
        return fail(SpreadFailure::BadCount);
    }
    let members = sc.members();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if members[i].sum(&members[j])?.dim() != 2 * k {
                return fail(SpreadFailure::Overlap);
            }
        }
    }
    let mut hits = vec![0u8; space as usize];
    for m in members {
        for v in m.enumerate_vectors(cap)? {
            let idx = v.iter().fold(0usize, |acc, &x| acc * q as usize + x as usize);
            hits[idx] = hits[idx].saturating_add(1);
        }
    }
    if hits.iter().skip(1).any(|&h| h != 1) {
        return fail(SpreadFailure::CoverageGap);
    }
    Ok(SpreadVerdict { valid: true, failure: None })
}

/// Monic irreducible of degree `k` over `field`; for prime fields this is the
/// default modulus of `F_{p^k}`.
pub fn irreducible_over(field: &Field, k: usize) -> Result<Polynomial> {
    if field.is_prime_field() {
        return Polynomial::new(field, default_irreducible(field.p(), k as u32)?);
    }
    let q = field.q();
    let mut lower = vec![0u32; k];
    loop {
        let mut coeffs: Vec<u32> = lower.iter().rev().copied().collect();
        coeffs.push(1);
        let cand = Polynomial::new(field, coeffs)?;
        if (k == 1 || cand.coeff(0) != 0) && is_irreducible(&cand)? {
            return Ok(cand);
        }
        if !odometer_next(&mut lower, q) {
            return Err(Error::Internal(format!("no irreducible of degree {k}")));
        }
    }
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(f: &Polynomial) -> Result<bool> {
    let Some(deg) = f.degree() else { return Ok(false) };
    if deg == 0 {
        return Ok(false);
    }
    let field = f.field();
    for d in 1..=deg / 2 {
        let mut lower = vec![0u32; d];
        loop {
            let mut coeffs = lower.clone();
            coeffs.push(1);
            let g = Polynomial::new(field, coeffs)?;
            if f.rem(&g)?.is_zero() {
                return Ok(false);
            }
            if !odometer_next(&mut lower, field.q()) {
                break;
            }
        }
    }
    Ok(true)
}

/// Matrices of `x ↦ a·x` on `F_q[t]/(f)` in the basis `1, t, ..., t^{k-1}`
/// (row `i` holds the coordinates of `a·t^i`), for every `a` in
/// lexicographic order of its coordinate tuple `(a_0, ..., a_{k-1})`.
pub fn multiplication_matrices(field: &Field, k: usize) -> Result<Vec<Matrix>> {
    let modulus = irreducible_over(field, k)?;
    let q = field.q();
    let mut out = Vec::new();
    let mut a_coeffs = vec![0u32; k];
    loop {
        let a = Polynomial::new(field, a_coeffs.clone())?;
        let mut m = Matrix::zeros(field, k, k);
        for i in 0..k {
            let prod = Polynomial::monomial(field, 1, i).mul(&a)?.rem(&modulus)?;
            for j in 0..k {
                m.set(i, j, prod.coeff(j));
            }
        }
        out.push(m);
        if !odometer_next(&mut a_coeffs, q) {
            break;
        }
    }
    Ok(out)
}

fn graph(m: &Matrix) -> Result<Subspace> {
    let k = m.rows();
    Ok(Subspace::from_matrix(&Matrix::identity(m.field(), k).hstack(m)?))
}

fn infinity(field: &Field, k: usize) -> Result<Subspace> {
    Ok(Subspace::from_matrix(&Matrix::zeros(field, k, k).hstack(&Matrix::identity(field, k))?))
}

/// The spread `{U_a : a in F_{q^k}} ∪ {U_∞}` of `F_q^{2k}`, where
/// `U_a = {(x, a·x)}` and `U_∞ = {(0, x)}`. Members follow the element order
/// of [`multiplication_matrices`], with `U_∞` last.
pub fn spread_field(field: &Field, k: usize) -> Result<Spread> {
    if k == 0 {
        return Err(Error::ShapeMismatch("spread needs k >= 1".into()));
    }
    let mut members = Vec::new();
    for m in multiplication_matrices(field, k)? {
        members.push(graph(&m)?);
    }
    members.push(infinity(field, k)?);
    Ok(Spread { code: SubspaceCode::new(members)?, k })
}

/// The spread of graphs `{(x, x·M_i)}` plus `{(0, y)}` for a family of `n×n`
/// matrices with pairwise invertible differences.
pub fn spread_matrix(mats: &[Matrix]) -> Result<Spread> {
    let first = mats.first().ok_or(Error::WrongCount { expected: 0, found: 0 })?;
    let field = first.field().clone();
    let n = first.rows();
    for m in mats {
        if m.field() != &field {
            return Err(Error::ContextMismatch);
        }
        if m.rows() != n || m.cols() != n {
            return Err(Error::ShapeMismatch("spread matrices must all be n x n".into()));
        }
    }
    let expected = (field.q() as u128).pow(n as u32);
    if mats.len() as u128 != expected {
        return Err(Error::WrongCount { expected, found: mats.len() });
    }
    for i in 0..mats.len() {
        for j in i + 1..mats.len() {
            if !mats[i].sub(&mats[j])?.square_invertible()? {
                return Err(Error::DifferenceSingular(i, j));
            }
        }
    }
    let mut members = Vec::with_capacity(mats.len() + 1);
    for m in mats {
        members.push(graph(m)?);
    }
    members.push(infinity(&field, n)?);
    Ok(Spread { code: SubspaceCode::new(members)?, k: n })
}

/// Companion matrix of a monic polynomial `x^d + c_{d-1}x^{d-1} + ... + c_0`,
/// acting on row vectors: `e_i ↦ e_{i+1}`, `e_{d-1} ↦ -(c_0, ..., c_{d-1})`.
pub fn companion_matrix(f: &Polynomial) -> Result<Matrix> {
    let field = f.field();
    let d = f.degree().filter(|&d| d > 0).ok_or(Error::NotADivisor)?;
    if f.coeff(d) != 1 {
        return Err(Error::BadField("companion matrix needs a monic polynomial".into()));
    }
    let mut m = Matrix::zeros(field, d, d);
    for i in 0..d - 1 {
        m.set(i, i + 1, 1);
    }
    for j in 0..d {
        m.set(d - 1, j, field.neg(f.coeff(j)));
    }
    Ok(m)
}

/// `({U_1..U_s}, {U_{s+1}..U_t})` for `2 <= s <= t-2`.
pub fn spread_partition(s: &Spread, split: usize) -> Result<(SubspaceCode, SubspaceCode)> {
    let t = s.len();
    if split < 2 || split + 2 > t {
        return Err(Error::SplitOutOfRange { s: split, max: t.saturating_sub(2) });
    }
    s.code().split_at(split)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::DEFAULT_ENUM_CAP;

    #[test]
    fn small_field_spreads() {
        let f2 = Field::prime(2).unwrap();
        let s = spread_field(&f2, 1).unwrap();
        assert_eq!(s.len(), 3);
        assert!(verify_spread(s.code(), DEFAULT_ENUM_CAP).unwrap().valid);
        let s = spread_field(&f2, 2).unwrap();
        assert_eq!(s.len(), 5);
        assert!(verify_spread(s.code(), DEFAULT_ENUM_CAP).unwrap().valid);
    }

    #[test]
    fn extension_base_field_spread() {
        let f4 = Field::new(2, 2).unwrap();
        let s = spread_field(&f4, 2).unwrap();
        assert_eq!(s.len(), 17);
        assert!(verify_spread(s.code(), DEFAULT_ENUM_CAP).unwrap().valid);
    }

    #[test]
    fn matrix_spreads() {
        let f2 = Field::prime(2).unwrap();
        let mats = vec![Matrix::zeros(&f2, 1, 1), Matrix::identity(&f2, 1)];
        assert_eq!(spread_matrix(&mats).unwrap().len(), 3);

        let a = companion_matrix(&Polynomial::from_ints(&f2, &[1, 1, 1])).unwrap();
        let a2 = a.mul(&a).unwrap();
        let mats = vec![Matrix::zeros(&f2, 2, 2), Matrix::identity(&f2, 2), a, a2];
        let s = spread_matrix(&mats).unwrap();
        assert_eq!(s.len(), 5);
        assert!(verify_spread(s.code(), DEFAULT_ENUM_CAP).unwrap().valid);

        let bad = vec![
            Matrix::zeros(&f2, 2, 2),
            Matrix::identity(&f2, 2),
            Matrix::from_ints(&f2, &[&[1, 0], &[0, 0]]).unwrap(),
            Matrix::from_ints(&f2, &[&[1, 1], &[1, 0]]).unwrap(),
        ];
        assert_eq!(spread_matrix(&bad), Err(Error::DifferenceSingular(0, 2)));
        assert!(matches!(spread_matrix(&bad[..3]), Err(Error::WrongCount { expected: 4, found: 3 })));
    }

    #[test]
    fn partition_range() {
        let s = spread_field(&Field::prime(2).unwrap(), 2).unwrap();
        assert_eq!(spread_partition(&s, 1), Err(Error::SplitOutOfRange { s: 1, max: 3 }));
        assert_eq!(spread_partition(&s, 4), Err(Error::SplitOutOfRange { s: 4, max: 3 }));
        let (c, d) = spread_partition(&s, 3).unwrap();
        assert_eq!((c.len(), d.len()), (3, 2));
    }

    #[test]
    fn failures_are_ordered() {
        let s = spread_field(&Field::prime(2).unwrap(), 2).unwrap();
        let mut m = s.code().members().to_vec();
        m.pop();
        let short = SubspaceCode::new(m.clone()).unwrap();
        assert_eq!(verify_spread(&short, 1 << 10).unwrap().failure, Some(SpreadFailure::BadCount));
        let f2 = Field::prime(2).unwrap();
        // swap the last member for one overlapping the first
        m.push(Subspace::span_ints(&f2, 4, &[&[1, 0, 0, 0], &[0, 0, 1, 0]]).unwrap());
        let overlap = SubspaceCode::new(m).unwrap();
        assert_eq!(verify_spread(&overlap, 1 << 10).unwrap().failure, Some(SpreadFailure::Overlap));
        let mixed = SubspaceCode::new(vec![
            Subspace::span_ints(&f2, 4, &[&[1, 0, 0, 0]]).unwrap(),
            Subspace::span_ints(&f2, 4, &[&[0, 1, 0, 0], &[0, 0, 1, 0]]).unwrap(),
        ])
        .unwrap();
        assert_eq!(verify_spread(&mixed, 1 << 10).unwrap().failure, Some(SpreadFailure::NotConstantDim));
        let planes = SubspaceCode::new(vec![Subspace::span_ints(&f2, 3, &[&[1, 0, 0], &[0, 1, 0]]).unwrap()]).unwrap();
        assert_eq!(verify_spread(&planes, 1 << 10).unwrap().failure, Some(SpreadFailure::KNotDivisor));
        assert!(matches!(verify_spread(s.code(), 8), Err(Error::EnumerationTooLarge { .. })));
    }
}
