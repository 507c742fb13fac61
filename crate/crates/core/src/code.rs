//! Linear codes and subspace codes.

use std::collections::BTreeMap;

use crate::algebra::{Field, Matrix, Polynomial};
use crate::error::{Error, Result};
use crate::subspace::Subspace;

/// A linear `[n, k]` code carrying an RREF generator matrix and the parity-check
/// matrix derived from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    generator: Matrix,
    parity_check: Matrix,
}

impl LinearCode {
    /// Code spanned by the rows of `g`.
    pub fn from_generator(g: &Matrix) -> Result<LinearCode> {
        let r = g.rref();
        if r.rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(LinearCode::from_rref(r.reduced.top_rows(r.rank)))
    }

    /// Code spanned by the rows of `g`, allowing the zero code.
    pub fn span_of(g: &Matrix) -> LinearCode {
        let r = g.rref();
        LinearCode::from_rref(r.reduced.top_rows(r.rank))
    }

    fn from_rref(generator: Matrix) -> LinearCode {
        let parity_check = generator.kernel();
        LinearCode { generator, parity_check }
    }

    /// The `[n, 0]` code.
    pub fn zero(field: &Field, n: usize) -> LinearCode {
        LinearCode::from_rref(Matrix::zeros(field, 0, n))
    }

    pub fn from_subspace(u: &Subspace) -> LinearCode {
        LinearCode::from_rref(u.basis().clone())
    }

    /// Constacyclic code `<g>` in `F_q[x]/(x^n - a)`.
    pub fn constacyclic(g: &Polynomial, n: usize, shift: u32) -> Result<LinearCode> {
        let f = g.field();
        f.check(shift as u64)?;
        if shift == 0 {
            return Err(Error::ZeroShift);
        }
        let deg = g.degree().ok_or(Error::NotADivisor)?;
        if deg > n {
            return Err(Error::NotADivisor);
        }
        let modulus = Polynomial::monomial(f, 1, n).sub(&Polynomial::constant(f, shift))?;
        if !modulus.rem(g)?.is_zero() {
            return Err(Error::NotADivisor);
        }
        let k = n - deg;
        if k == 0 {
            return Ok(LinearCode::zero(f, n));
        }
        let mut rows = Vec::with_capacity(k);
        for i in 0..k {
            let shifted = Polynomial::monomial(f, 1, i).mul(g)?.rem(&modulus)?;
            rows.push((0..n).map(|j| shifted.coeff(j)).collect::<Vec<u32>>());
        }
        LinearCode::from_generator(&Matrix::from_rows(f, n, &rows)?)
    }

    pub fn field(&self) -> &Field {
        self.generator.field()
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    pub fn dimension(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &Matrix {
        &self.parity_check
    }

    pub fn subspace(&self) -> Subspace {
        Subspace::from_matrix(&self.generator)
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode::from_rref(self.parity_check.clone())
    }

    pub fn encode(&self, message: &[u32]) -> Result<Vec<u32>> {
        self.generator.vec_mul(message)
    }
}

/// Constacyclic code from a generator polynomial dividing `x^n - shift`.
pub fn constacyclic_from_genpoly(g: &Polynomial, n: usize, shift: u32) -> Result<LinearCode> {
    LinearCode::constacyclic(g, n, shift)
}

/// Ordered collection of distinct subspaces sharing one ambient space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceCode {
    n: usize,
    members: Vec<Subspace>,
}

impl SubspaceCode {
    pub fn new(members: Vec<Subspace>) -> Result<SubspaceCode> {
        let first = members.first().ok_or(Error::TooFewMembers { needed: 1, found: 0 })?;
        let n = first.ambient();
        for m in &members {
            if m.field() != first.field() {
                return Err(Error::ContextMismatch);
            }
            if m.ambient() != n {
                return Err(Error::AmbientMismatch(n, m.ambient()));
            }
        }
        for i in 0..members.len() {
            for j in i + 1..members.len() {
                if members[i] == members[j] {
                    return Err(Error::DuplicateMember(i, j));
                }
            }
        }
        Ok(SubspaceCode { n, members })
    }

    pub fn field(&self) -> &Field {
        self.members[0].field()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[Subspace] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn get(&self, i: usize) -> &Subspace {
        &self.members[i]
    }

    /// Member dimension -> multiplicity.
    pub fn dimension_profile(&self) -> DimensionProfile {
        let mut counts = BTreeMap::new();
        for m in &self.members {
            *counts.entry(m.dim()).or_insert(0) += 1;
        }
        DimensionProfile { counts }
    }

    /// `Some(k)` when every member has dimension `k`.
    pub fn constant_dimension(&self) -> Option<usize> {
        let k = self.members[0].dim();
        self.members.iter().all(|m| m.dim() == k).then_some(k)
    }

    pub fn min_distance(&self) -> Result<usize> {
        if self.members.len() < 2 {
            return Err(Error::TooFewMembers { needed: 2, found: self.members.len() });
        }
        let mut best = usize::MAX;
        for i in 0..self.members.len() {
            for j in i + 1..self.members.len() {
                best = best.min(self.members[i].distance(&self.members[j])?);
            }
        }
        Ok(best)
    }

    /// Member-wise orthogonal complements, same order.
    pub fn dual(&self) -> SubspaceCode {
        SubspaceCode { n: self.n, members: self.members.iter().map(Subspace::orthogonal).collect() }
    }

    /// Concatenation of two families (duplicates rejected).
    pub fn union(&self, other: &SubspaceCode) -> Result<SubspaceCode> {
        let mut members = self.members.clone();
        members.extend(other.members.iter().cloned());
        SubspaceCode::new(members)
    }

    /// First `s` members and the rest.
    pub fn split_at(&self, s: usize) -> Result<(SubspaceCode, SubspaceCode)> {
        let (a, b) = self.members.split_at(s.min(self.members.len()));
        Ok((SubspaceCode::new(a.to_vec())?, SubspaceCode::new(b.to_vec())?))
    }
}

/// Multiset of member dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionProfile {
    pub counts: BTreeMap<usize, usize>,
}

impl DimensionProfile {
    pub fn dimensions(&self) -> impl Iterator<Item = usize> + '_ {
        self.counts.keys().copied()
    }
}

/// Checks the compatibility condition tying `D` to `C`: every dimension `k`
/// occurring in `C` has `n - k` occurring in `D`, and conversely.
///
/// The defining condition only constrains dimensions, so this reads it as a
/// condition on dimension profiles; `D` is always supplied by the caller.
pub fn dimension_profiles_compatible(c: &SubspaceCode, d: &SubspaceCode) -> Result<bool> {
    if c.ambient() != d.ambient() {
        return Err(Error::AmbientMismatch(c.ambient(), d.ambient()));
    }
    let n = c.ambient();
    let pc = c.dimension_profile();
    let pd = d.dimension_profile();
    let forward = pc.dimensions().all(|k| pd.counts.contains_key(&(n - k)));
    let backward = pd.dimensions().all(|k| pc.counts.contains_key(&(n - k)));
    Ok(forward && backward)
}
