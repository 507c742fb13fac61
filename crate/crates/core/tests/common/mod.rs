#![allow(dead_code)]

use std::collections::HashSet;

use lcp_subspace::algebra::{Field, Matrix};
use lcp_subspace::code::SubspaceCode;
use lcp_subspace::lcp::is_lcp;
use lcp_subspace::subspace::Subspace;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fp(p: u32) -> Field {
    Field::prime(p).unwrap()
}

/// A subspace together with the raw (unreduced) rows it was spanned from.
#[derive(Debug, Clone)]
pub struct Sample {
    pub rows: Vec<Vec<u32>>,
    pub space: Subspace,
}

pub fn random_rows(rng: &mut ChaCha8Rng, q: u32, count: usize, n: usize) -> Vec<Vec<u32>> {
    (0..count).map(|_| (0..n).map(|_| rng.gen_range(0..q)).collect()).collect()
}

/// Span of `count` random vectors (dimension at most `count`).
pub fn random_sample(rng: &mut ChaCha8Rng, field: &Field, n: usize, count: usize) -> Sample {
    let rows = random_rows(rng, field.q(), count, n);
    let space = Subspace::span(field, n, &rows).unwrap();
    Sample { rows, space }
}

/// Subspace of exactly dimension `k`, by rejection.
pub fn random_subspace_of_dim(rng: &mut ChaCha8Rng, field: &Field, n: usize, k: usize) -> Sample {
    loop {
        let s = random_sample(rng, field, n, k);
        if s.space.dim() == k {
            return s;
        }
    }
}

/// Family of distinct random subspaces with dimensions drawn from `dims`.
pub fn random_family(
    rng: &mut ChaCha8Rng,
    field: &Field,
    n: usize,
    size: usize,
    dims: &[usize],
) -> (Vec<Sample>, SubspaceCode) {
    let mut out: Vec<Sample> = Vec::new();
    let mut guard = 0;
    while out.len() < size && guard < 1000 {
        guard += 1;
        let k = dims[rng.gen_range(0..dims.len())];
        let s = random_subspace_of_dim(rng, field, n, k);
        if out.iter().all(|o| o.space != s.space) {
            out.push(s);
        }
    }
    let code = SubspaceCode::new(out.iter().map(|s| s.space.clone()).collect()).unwrap();
    (out, code)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, field: &Field, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols).map(|_| rng.gen_range(0..field.q())).collect();
    Matrix::from_vec(field, rows, cols, data).unwrap()
}

// ---- brute-force oracles over prime fields, independent of the library ----

/// Every `F_p`-combination of `rows`, using plain modular arithmetic.
pub fn span_set(p: u32, n: usize, rows: &[Vec<u32>]) -> HashSet<Vec<u32>> {
    let mut set = HashSet::new();
    set.insert(vec![0u32; n]);
    for r in rows {
        let mut next = HashSet::new();
        for v in &set {
            for c in 0..p {
                next.insert(v.iter().zip(r).map(|(&a, &b)| (a + c * b) % p).collect::<Vec<u32>>());
            }
        }
        set = next;
    }
    set
}

pub fn all_vectors(p: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (0..p).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// Vectors orthogonal (standard dot product mod `p`) to every row.
pub fn orth_set(p: u32, n: usize, rows: &[Vec<u32>]) -> HashSet<Vec<u32>> {
    all_vectors(p, n)
        .into_iter()
        .filter(|v| rows.iter().all(|r| r.iter().zip(v).map(|(a, b)| a * b).sum::<u32>() % p == 0))
        .collect()
}

/// `log_p` of a set size that is known to be a power of `p`.
pub fn log_size(p: u32, size: usize) -> usize {
    let mut k = 0;
    let mut s = 1usize;
    while s < size {
        s *= p as usize;
        k += 1;
    }
    assert_eq!(s, size, "set size is not a power of p");
    k
}

/// Pairwise-trivial-intersection verdict from explicit vector sets.
pub fn oracle_lcp(c: &[HashSet<Vec<u32>>], d: &[HashSet<Vec<u32>>]) -> bool {
    c.iter().all(|x| d.iter().all(|y| x.intersection(y).count() == 1))
}

/// Explicit vector set of a library subspace, from its basis rows.
pub fn subspace_set(u: &Subspace) -> HashSet<Vec<u32>> {
    span_set(u.field().p(), u.ambient(), &u.basis().row_vecs())
}

/// [`random_family`] with a size drawn from `1..=max_size`.
pub fn random_family_upto(
    rng: &mut ChaCha8Rng,
    field: &Field,
    n: usize,
    max_size: usize,
    dims: &[usize],
) -> (Vec<Sample>, SubspaceCode) {
    let size = rng.gen_range(1..=max_size);
    random_family(rng, field, n, size, dims)
}

/// Span of between 0 and `n` random vectors.
pub fn random_span(rng: &mut ChaCha8Rng, field: &Field, n: usize) -> Subspace {
    let count = rng.gen_range(0..=n);
    random_sample(rng, field, n, count).space
}

pub fn fixture_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.lcp"))
}

pub fn fixture(name: &str) -> lcp_subspace::cli::CodeFile {
    lcp_subspace::cli::CodeFile::load(&fixture_path(name)).unwrap()
}

pub fn v(bits: &str) -> Vec<u32> {
    bits.chars().map(|c| c.to_digit(10).unwrap()).collect()
}

/// Random LCP `{C, D}` by rejection, with up to `size` members per family;
/// shrinks the families when large ones are rare (or impossible, as for
/// lines of `F_2^2`).
pub fn random_lcp(rng: &mut ChaCha8Rng, f: &Field, n: usize, size: usize) -> (SubspaceCode, SubspaceCode) {
    let dims: Vec<usize> = (1..n).collect();
    for attempt in 0.. {
        let s = if attempt < 200 { size } else { 1 };
        let (_, c) = random_family(rng, f, n, s, &dims);
        let (_, d) = random_family(rng, f, n, s, &dims);
        if is_lcp(&c, &d).unwrap() {
            return (c, d);
        }
    }
    unreachable!()
}
