//! Subspaces of `F_q^n` in canonical form.
//!
//! A [`Subspace`] stores its basis in reduced row echelon form with no zero
//! rows, so two subspaces are equal exactly when their bases are equal.
//! Intersection is computed through duality: `U ∩ V = (U^⊥ + V^⊥)^⊥`.

use std::fmt;

use crate::algebra::{Field, Matrix};
use crate::error::{Error, Result};

/// Default cap on the number of vectors [`Subspace::enumerate_vectors`] may produce.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 20;

#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    n: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

/// `<b1, b2, ...>` over the canonical basis.
impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for r in 0..self.basis.rows() {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_vector(self.field(), self.basis.row(r)))?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in F_{}^{}", self.field().q(), self.n)
    }
}

/// Compact rendering: digits for prime fields with `p <= 10`, spaced otherwise.
pub fn format_vector(field: &Field, v: &[u32]) -> String {
    if field.is_prime_field() && field.p() <= 10 {
        v.iter().map(|x| x.to_string()).collect()
    } else {
        v.iter().map(|&x| field.format(x)).collect::<Vec<_>>().join(" ")
    }
}

/// Sum of vectors `coeffs[i] * rows[i]`.
pub(crate) fn combine(field: &Field, rows: &Matrix, coeffs: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; rows.cols()];
    for (r, &a) in coeffs.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(rows.row(r)) {
            *o = field.add(*o, field.mul(a, x));
        }
    }
    out
}

/// Advances a base-`q` odometer (last position fastest). Returns false on wrap.
pub(crate) fn odometer_next(digits: &mut [u32], q: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

/// Every vector of `F_q^n` in lexicographic order.
pub fn all_vectors(field: &Field, n: usize, cap: u64) -> Result<Vec<Vec<u32>>> {
    let size = (field.q() as u128).pow(n as u32);
    if size > cap as u128 {
        return Err(Error::EnumerationTooLarge { size, cap });
    }
    let mut out = Vec::with_capacity(size as usize);
    let mut cur = vec![0u32; n];
    loop {
        out.push(cur.clone());
        if !odometer_next(&mut cur, field.q()) {
            break;
        }
    }
    Ok(out)
}

/// Normalized representatives (first nonzero entry 1) of the one-dimensional
/// subspaces of `F_q^n`, in lexicographic order.
pub fn projective_points(field: &Field, n: usize, cap: u64) -> Result<Vec<Vec<u32>>> {
    Ok(all_vectors(field, n, cap)?.into_iter().filter(|v| v.iter().find(|&&x| x != 0) == Some(&1)).collect())
}

impl Subspace {
    /// Canonical subspace spanned by the rows of `m`.
    pub fn from_matrix(m: &Matrix) -> Subspace {
        let r = m.rref();
        Subspace { n: m.cols(), basis: r.reduced.top_rows(r.rank), pivots: r.pivots }
    }

    /// Span of the given vectors; an empty list gives the zero subspace.
    pub fn span(field: &Field, n: usize, vectors: &[Vec<u32>]) -> Result<Subspace> {
        for v in vectors {
            if v.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: v.len() });
            }
        }
        Ok(Subspace::from_matrix(&Matrix::from_rows(field, n, vectors)?))
    }

    /// Span of integer vectors reduced into the prime subfield.
    pub fn span_ints(field: &Field, n: usize, vectors: &[&[i64]]) -> Result<Subspace> {
        let vs: Vec<Vec<u32>> = vectors.iter().map(|v| v.iter().map(|&x| field.from_int(x)).collect()).collect();
        Subspace::span(field, n, &vs)
    }

    pub fn zero(field: &Field, n: usize) -> Subspace {
        Subspace { n, basis: Matrix::zeros(field, 0, n), pivots: Vec::new() }
    }

    pub fn full(field: &Field, n: usize) -> Subspace {
        Subspace { n, basis: Matrix::identity(field, n), pivots: (0..n).collect() }
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// The canonical (RREF) basis; doubles as a generator matrix.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::ContextMismatch);
        }
        if self.n != other.n {
            return Err(Error::AmbientMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        Ok(Subspace::from_matrix(&self.basis.vstack(&other.basis)?))
    }

    /// `U^⊥` under the standard dot product.
    pub fn orthogonal(&self) -> Subspace {
        Subspace::from_matrix(&self.basis.kernel())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        Ok(self.orthogonal().sum(&other.orthogonal())?.orthogonal())
    }

    /// `d_s(U, V) = dim(U + V) - dim(U ∩ V)`.
    pub fn distance(&self, other: &Subspace) -> Result<usize> {
        Ok(self.sum(other)?.dim() - self.intersect(other)?.dim())
    }

    /// Remainder of `v` after elimination against the RREF basis.
    pub fn reduce(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: v.len() });
        }
        let f = self.field();
        let mut r = v.to_vec();
        for (row, &pc) in self.pivots.iter().enumerate() {
            let c = r[pc];
            if c == 0 {
                continue;
            }
            for (x, &b) in r.iter_mut().zip(self.basis.row(row)) {
                *x = f.sub(*x, f.mul(c, b));
            }
        }
        Ok(r)
    }

    pub fn contains_vector(&self, v: &[u32]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|&x| x == 0))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.compatible(other)?;
        for r in 0..other.dim() {
            if !self.contains_vector(other.basis.row(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All `q^dim` vectors, ordered lexicographically by coefficient tuple
    /// over the canonical basis.
    pub fn enumerate_vectors(&self, cap: u64) -> Result<Vec<Vec<u32>>> {
        let q = self.field().q();
        let size = (q as u128).pow(self.dim() as u32);
        if size > cap as u128 {
            return Err(Error::EnumerationTooLarge { size, cap });
        }
        let mut out = Vec::with_capacity(size as usize);
        let mut coeffs = vec![0u32; self.dim()];
        loop {
            out.push(combine(self.field(), &self.basis, &coeffs));
            if !odometer_next(&mut coeffs, q) {
                break;
            }
        }
        Ok(out)
    }

    /// Number of vectors, `q^dim`.
    pub fn size(&self) -> u128 {
        (self.field().q() as u128).pow(self.dim() as u32)
    }
}
