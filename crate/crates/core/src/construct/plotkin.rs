//! `[u | u+v]` and `[u+v | v]` combinations of two codes of equal length.

use crate::algebra::Matrix;
use crate::code::{LinearCode, SubspaceCode};
use crate::error::{Error, Result};
use crate::lcp::is_lcp;
use crate::subspace::Subspace;

/// Generator and parity-check block matrices of a combined code, exactly as
/// assembled from the component matrices (not reduced).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMatrices {
    pub generator: Matrix,
    pub parity_check: Matrix,
}

fn same_length(c1: &LinearCode, c2: &LinearCode) -> Result<()> {
    if c1.field() != c2.field() {
        return Err(Error::ContextMismatch);
    }
    if c1.length() != c2.length() {
        return Err(Error::LengthMismatch { expected: c1.length(), found: c2.length() });
    }
    Ok(())
}

/// `G = [[G1, G1], [0, G2]]`, `H = [[H1, 0], [-H2, H2]]`.
pub fn plotkin_matrices(c1: &LinearCode, c2: &LinearCode) -> Result<BlockMatrices> {
    same_length(c1, c2)?;
    let f = c1.field();
    let n = c1.length();
    let (g1, g2) = (c1.generator(), c2.generator());
    let (h1, h2) = (c1.parity_check(), c2.parity_check());
    Ok(BlockMatrices {
        generator: Matrix::block(g1, g1, &Matrix::zeros(f, g2.rows(), n), g2)?,
        parity_check: Matrix::block(h1, &Matrix::zeros(f, h1.rows(), n), &h2.neg(), h2)?,
    })
}

/// `P(C1, C2) = {(u, u+v) : u in C1, v in C2}`.
pub fn plotkin(c1: &LinearCode, c2: &LinearCode) -> Result<LinearCode> {
    Ok(LinearCode::span_of(&plotkin_matrices(c1, c2)?.generator))
}

/// `G = [[G1, 0], [G2, G2]]`, `H = [[H1, -H1], [0, H2]]`.
pub fn plotkin_tilde_matrices(c1: &LinearCode, c2: &LinearCode) -> Result<BlockMatrices> {
    same_length(c1, c2)?;
    let f = c1.field();
    let n = c1.length();
    let (g1, g2) = (c1.generator(), c2.generator());
    let (h1, h2) = (c1.parity_check(), c2.parity_check());
    Ok(BlockMatrices {
        generator: Matrix::block(g1, &Matrix::zeros(f, g1.rows(), n), g2, g2)?,
        parity_check: Matrix::block(h1, &h1.neg(), &Matrix::zeros(f, h2.rows(), n), h2)?,
    })
}

/// `P~(C1, C2) = {(u+v, v) : u in C1, v in C2}`.
pub fn plotkin_tilde(c1: &LinearCode, c2: &LinearCode) -> Result<LinearCode> {
    Ok(LinearCode::span_of(&plotkin_tilde_matrices(c1, c2)?.generator))
}

fn as_code(u: &Subspace) -> LinearCode {
    LinearCode::from_subspace(u)
}

/// Product families `{P(C1, C2)}` and `{P(D1, D2)}` for two input LCPs
/// `{C1, D1}` and `{C2, D2}`. Member order: first index outer.
pub fn plotkin_lcp_pair(
    c1: &SubspaceCode,
    d1: &SubspaceCode,
    c2: &SubspaceCode,
    d2: &SubspaceCode,
) -> Result<(SubspaceCode, SubspaceCode)> {
    if !is_lcp(c1, d1)? {
        return Err(Error::NotLcpInput(1));
    }
    if !is_lcp(c2, d2)? {
        return Err(Error::NotLcpInput(2));
    }
    let product = |a: &SubspaceCode, b: &SubspaceCode| -> Result<SubspaceCode> {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in a.members() {
            for y in b.members() {
                out.push(plotkin(&as_code(x), &as_code(y))?.subspace());
            }
        }
        SubspaceCode::new(out)
    };
    Ok((product(c1, c2)?, product(d1, d2)?))
}

/// Families `{P(C, D)}` and `{P~(C, D)}` over `C in 𝒞`, `D in 𝒟` for an input
/// LCP `{𝒞, 𝒟}`.
pub fn plotkin_tilde_pair(c: &SubspaceCode, d: &SubspaceCode) -> Result<(SubspaceCode, SubspaceCode)> {
    if !is_lcp(c, d)? {
        return Err(Error::NotLcpInput(1));
    }
    let mut plain = Vec::new();
    let mut tilde = Vec::new();
    for x in c.members() {
        for y in d.members() {
            plain.push(plotkin(&as_code(x), &as_code(y))?.subspace());
            tilde.push(plotkin_tilde(&as_code(x), &as_code(y))?.subspace());
        }
    }
    Ok((SubspaceCode::new(plain)?, SubspaceCode::new(tilde)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;

    fn code(f: &Field, rows: &[&[i64]]) -> LinearCode {
        LinearCode::from_generator(&Matrix::from_ints(f, rows).unwrap()).unwrap()
    }

    #[test]
    fn full_code_over_f2() {
        let f = Field::prime(2).unwrap();
        let full = code(&f, &[&[1]]);
        let p = plotkin(&full, &full).unwrap();
        assert_eq!(p.subspace(), Subspace::full(&f, 2));
    }

    #[test]
    fn small_plotkin_codewords() {
        let f = Field::prime(2).unwrap();
        let c1 = code(&f, &[&[1, 1]]);
        let c2 = code(&f, &[&[1, 0]]);
        let p = plotkin(&c1, &c2).unwrap();
        let mut words = p.subspace().enumerate_vectors(16).unwrap();
        words.sort();
        // (u, u+v) for u in {00, 11}, v in {00, 10}
        let mut expect = vec![vec![0, 0, 0, 0], vec![0, 0, 1, 0], vec![1, 1, 1, 1], vec![1, 1, 0, 1]];
        expect.sort();
        assert_eq!(words, expect);
        let m = plotkin_matrices(&c1, &c2).unwrap();
        assert!(m.generator.mul_transpose(&m.parity_check).unwrap().is_zero());
    }

    #[test]
    fn tilde_with_zero_first_code_is_diagonal() {
        let f = Field::prime(3).unwrap();
        let zero = LinearCode::zero(&f, 2);
        let c2 = code(&f, &[&[1, 2]]);
        let t = plotkin_tilde(&zero, &c2).unwrap();
        assert_eq!(t.subspace(), Subspace::span_ints(&f, 4, &[&[1, 2, 1, 2]]).unwrap());
    }

    #[test]
    fn length_mismatch() {
        let f = Field::prime(2).unwrap();
        let a = code(&f, &[&[1, 1]]);
        let b = code(&f, &[&[1, 1, 1]]);
        assert!(matches!(plotkin(&a, &b), Err(Error::LengthMismatch { .. })));
        assert!(matches!(plotkin_tilde(&a, &b), Err(Error::LengthMismatch { .. })));
    }
}
