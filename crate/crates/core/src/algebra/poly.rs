use std::fmt;

use super::field::Field;
use crate::error::{Error, Result};

/// Polynomial over a [`Field`], coefficients lowest degree first with no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<u32>,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let c = self.field.format(c);
            terms.push(match i {
                0 => c,
                1 => format!("{c}x"),
                _ => format!("{c}x^{i}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl Polynomial {
    pub fn new(field: &Field, coeffs: Vec<u32>) -> Result<Polynomial> {
        for &c in &coeffs {
            field.check(c as u64)?;
        }
        let mut p = Polynomial { field: field.clone(), coeffs };
        p.normalize();
        Ok(p)
    }

    /// Builds from signed integers reduced into the prime subfield.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Polynomial {
        let mut p = Polynomial { field: field.clone(), coeffs: coeffs.iter().map(|&c| field.from_int(c)).collect() };
        p.normalize();
        p
    }

    pub fn zero(field: &Field) -> Polynomial {
        Polynomial { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(field: &Field, c: u32) -> Polynomial {
        let mut p = Polynomial { field: field.clone(), coeffs: vec![c] };
        p.normalize();
        p
    }

    /// `c * x^k`.
    pub fn monomial(field: &Field, c: u32, k: usize) -> Polynomial {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        let mut p = Polynomial { field: field.clone(), coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn same(&self, other: &Polynomial) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same(other)?;
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        let mut p = Polynomial { field: f.clone(), coeffs };
        p.normalize();
        Ok(p)
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { field: self.field.clone(), coeffs: self.coeffs.iter().map(|&c| self.field.neg(c)).collect() }
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let mut p = Polynomial {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect(),
        };
        p.normalize();
        p
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same(other)?;
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(f));
        }
        let mut coeffs = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        let mut p = Polynomial { field: f.clone(), coeffs };
        p.normalize();
        Ok(p)
    }

    /// Euclidean division: `(quotient, remainder)` with `deg r < deg g`.
    pub fn divmod(&self, g: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.same(g)?;
        let f = &self.field;
        let dg = g.degree().ok_or(Error::DivisionByZeroPolynomial)?;
        let lead_inv = f.inv(g.coeffs[dg])?;
        let mut rem = self.coeffs.clone();
        let qlen = rem.len().saturating_sub(dg);
        let mut quot = vec![0u32; qlen];
        for shift in (0..qlen).rev() {
            let c = f.mul(rem[shift + dg], lead_inv);
            quot[shift] = c;
            if c == 0 {
                continue;
            }
            for (k, &gk) in g.coeffs.iter().enumerate() {
                rem[shift + k] = f.sub(rem[shift + k], f.mul(c, gk));
            }
        }
        rem.truncate(dg);
        let mut q = Polynomial { field: f.clone(), coeffs: quot };
        let mut r = Polynomial { field: f.clone(), coeffs: rem };
        q.normalize();
        r.normalize();
        Ok((q, r))
    }

    pub fn rem(&self, g: &Polynomial) -> Result<Polynomial> {
        Ok(self.divmod(g)?.1)
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, x: u32) -> u32 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }
}

/// Operation selector mirroring [`Polynomial`]'s arithmetic methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    DivMod,
}

/// Result of [`poly_arith`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyResult {
    Single(Polynomial),
    Pair(Polynomial, Polynomial),
}

pub fn poly_arith(op: PolyOp, f: &Polynomial, g: &Polynomial) -> Result<PolyResult> {
    Ok(match op {
        PolyOp::Add => PolyResult::Single(f.add(g)?),
        PolyOp::Mul => PolyResult::Single(f.mul(g)?),
        PolyOp::DivMod => {
            let (q, r) = f.divmod(g)?;
            PolyResult::Pair(q, r)
        }
    })
}
