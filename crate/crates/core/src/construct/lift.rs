//! Matrix codes induced by a subspace.
//!
//! `F_q^{n×m}(U)` is the set of `n×m` matrices whose columns all lie in `U`.
//! Matrices are flattened column-major: column `j` occupies coordinates
//! `j*n .. (j+1)*n` of `F_q^{n·m}`.

use crate::algebra::Matrix;
use crate::code::SubspaceCode;
use crate::error::{Error, Result};
use crate::subspace::Subspace;

pub fn lift_matrix_code(u: &Subspace, m: usize) -> Result<Subspace> {
    if m == 0 {
        return Err(Error::ShapeMismatch("lift needs m >= 1".into()));
    }
    let f = u.field();
    let n = u.ambient();
    let k = u.dim();
    let mut g = Matrix::zeros(f, m * k, m * n);
    for j in 0..m {
        for r in 0..k {
            for (c, &x) in u.basis().row(r).iter().enumerate() {
                g.set(j * k + r, j * n + c, x);
            }
        }
    }
    Ok(Subspace::from_matrix(&g))
}

/// Member-wise lift of a family.
pub fn lift_family(c: &SubspaceCode, m: usize) -> Result<SubspaceCode> {
    SubspaceCode::new(c.members().iter().map(|u| lift_matrix_code(u, m)).collect::<Result<_>>()?)
}

/// Column-major flattening of an `n×m` matrix.
pub fn flatten_column_major(a: &Matrix) -> Vec<u32> {
    let mut v = Vec::with_capacity(a.rows() * a.cols());
    for c in 0..a.cols() {
        for r in 0..a.rows() {
            v.push(a.get(r, c));
        }
    }
    v
}
