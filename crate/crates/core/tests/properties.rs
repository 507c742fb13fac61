mod common;

use std::collections::HashSet;

use common::*;
use lcp_subspace::algebra::{Field, Matrix};
use lcp_subspace::channel::{correct, detect, insert_error, ChannelInstance};
use lcp_subspace::cli::CodeFile;
use lcp_subspace::code::{LinearCode, SubspaceCode};
use lcp_subspace::construct::{
    lift_family, lift_matrix_code, plotkin, plotkin_lcp_pair, plotkin_matrices, plotkin_tilde_pair, s_lambda_dual_lcp,
    s_lambda_lcd, s_lambda_lcp, s_lambda_matrices, spread_field, spread_size, verify_spread,
};
use lcp_subspace::lcp::{
    check_lcp, check_lcp_with, complement_from_lcp, is_lcd, is_lcp, pair_is_complementary, right_inv_pair,
    verify_complement_function, CheckOptions, Criterion,
};
use lcp_subspace::subspace::{projective_points, Subspace, DEFAULT_ENUM_CAP};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5])
}

fn matrix_strategy(max: usize) -> impl Strategy<Value = Matrix> {
    (small_prime(), 1..=max, 1..=max).prop_flat_map(|(p, r, c)| {
        prop::collection::vec(0..p, r * c).prop_map(move |data| Matrix::from_vec(&fp(p), r, c, data).unwrap())
    })
}

/// `(p, n, rows)` with `count` rows of length `n`.
fn rows_strategy(max_n: usize, max_rows: usize) -> impl Strategy<Value = (u32, usize, Vec<Vec<u32>>)> {
    (small_prime(), 1..=max_n).prop_flat_map(move |(p, n)| {
        (Just(p), Just(n), prop::collection::vec(prop::collection::vec(0..p, n), 0..=max_rows))
    })
}

fn pair_strategy(max_n: usize) -> impl Strategy<Value = (Subspace, Subspace)> {
    (small_prime(), 1..=max_n).prop_flat_map(move |(p, n)| {
        let rows = prop::collection::vec(prop::collection::vec(0..p, n), 0..=n);
        (rows.clone(), rows).prop_map(move |(a, b)| {
            let f = fp(p);
            (Subspace::span(&f, n, &a).unwrap(), Subspace::span(&f, n, &b).unwrap())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn inverses_in_extension_fields(pm in prop::sample::select(vec![(2u32, 3u32), (2, 4), (3, 2), (5, 2), (2, 8), (7, 2)]), a in 1u32..65536) {
        let f = Field::new(pm.0, pm.1).unwrap();
        let a = a % (f.q() - 1) + 1;
        prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
    }

    #[test]
    fn rref_is_idempotent(m in matrix_strategy(8)) {
        let r = m.rref().reduced;
        prop_assert_eq!(r.rref().reduced, r);
    }

    #[test]
    fn rank_nullity(m in matrix_strategy(8)) {
        prop_assert_eq!(m.rank() + m.kernel().rows(), m.cols());
    }

    #[test]
    fn kernel_is_annihilated(m in matrix_strategy(8)) {
        prop_assert!(m.mul(&m.kernel().transpose()).unwrap().is_zero());
    }

    #[test]
    fn right_invertible_iff_trivial_left_kernel(m in matrix_strategy(8)) {
        prop_assert_eq!(m.right_invertible(), m.transpose().kernel().rows() == 0);
    }

    #[test]
    fn canonical_form_ignores_row_mixing((p, n, rows) in rows_strategy(6, 6), seed in any::<u64>()) {
        let f = fp(p);
        let u = Subspace::span(&f, n, &rows).unwrap();
        let k = u.dim();
        prop_assume!(k > 0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mix = loop {
            let m = random_matrix(&mut rng, &f, k, k);
            if m.square_invertible().unwrap() {
                break m;
            }
        };
        let mut mixed = mix.mul(u.basis()).unwrap().row_vecs();
        mixed.reverse();
        prop_assert_eq!(Subspace::span(&f, n, &mixed).unwrap(), u);
    }

    #[test]
    fn dimension_formula((u, v) in pair_strategy(7)) {
        prop_assert_eq!(u.sum(&v).unwrap().dim() + u.intersect(&v).unwrap().dim(), u.dim() + v.dim());
    }

    #[test]
    fn de_morgan((u, v) in pair_strategy(7)) {
        prop_assert_eq!(u.sum(&v).unwrap().orthogonal(), u.orthogonal().intersect(&v.orthogonal()).unwrap());
        prop_assert_eq!(u.intersect(&v).unwrap().orthogonal(), u.orthogonal().sum(&v.orthogonal()).unwrap());
        prop_assert_eq!(u.orthogonal().orthogonal(), u);
    }

    #[test]
    fn intersection_matches_enumeration((u, v) in pair_strategy(6)) {
        let p = u.field().p();
        prop_assume!((p as u64).pow(u.ambient() as u32) <= 1 << 12);
        let expected: HashSet<Vec<u32>> = subspace_set(&u).intersection(&subspace_set(&v)).cloned().collect();
        let got: HashSet<Vec<u32>> = u.intersect(&v).unwrap().enumerate_vectors(1 << 12).unwrap().into_iter().collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn subspace_distance_is_a_metric(p in small_prime(), n in 1usize..=6, seed in any::<u64>()) {
        let f = fp(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pick = || random_span(&mut rng, &f, n);
        let (a, b, c) = (pick(), pick(), pick());
        let d = |x: &Subspace, y: &Subspace| x.distance(y).unwrap();
        prop_assert_eq!(d(&a, &a), 0);
        prop_assert_eq!(d(&a, &b) == 0, a == b);
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
        // dimension identity used by the distance criterion
        prop_assert_eq!(d(&a, &b), a.dim() + b.dim() - 2 * a.intersect(&b).unwrap().dim());
    }

    #[test]
    fn codes_carry_orthogonal_parity_checks((p, n, rows) in rows_strategy(7, 5)) {
        let g = Matrix::from_rows(&fp(p), n, &rows).unwrap();
        let c = LinearCode::span_of(&g);
        prop_assert!(c.generator().mul_transpose(c.parity_check()).unwrap().is_zero());
        prop_assert_eq!(c.dimension() + c.parity_check().rows(), n);
    }

    #[test]
    fn dual_family_is_an_involution_preserving_distance(p in small_prime(), n in 2usize..=5, seed in any::<u64>()) {
        let f = fp(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims: Vec<usize> = (0..=n).collect();
        let (_, c) = random_family(&mut rng, &f, n, 3, &dims);
        prop_assume!(c.len() >= 2);
        prop_assert_eq!(c.dual().dual(), c.clone());
        prop_assert_eq!(c.dual().min_distance().unwrap(), c.min_distance().unwrap());
    }

    #[test]
    fn criteria_agree_and_witnesses_are_sound(p in small_prime(), n in 1usize..=6, seed in any::<u64>()) {
        let f = fp(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims: Vec<usize> = (0..=n).collect();
        let (_, c) = random_family_upto(&mut rng, &f, n, 3, &dims);
        let (_, d) = random_family_upto(&mut rng, &f, n, 3, &dims);
        let base = check_lcp_with(&c, &d, Criterion::Pairwise, CheckOptions { full_scan: true }).unwrap();
        for crit in [Criterion::Distance, Criterion::RightInv] {
            prop_assert_eq!(check_lcp(&c, &d, crit).unwrap().verdict, base.verdict);
        }
        for v in &base.all_violations {
            prop_assert!(v.witness.iter().any(|&x| x != 0));
            prop_assert!(c.get(v.c_index).contains_vector(&v.witness).unwrap());
            prop_assert!(d.get(v.d_index).contains_vector(&v.witness).unwrap());
        }
        prop_assert_eq!(base.verdict, base.violating_pair.is_none());
        for x in c.members() {
            for y in d.members() {
                // right-invertibility is symmetric in the roles of the two codes
                prop_assert_eq!(right_inv_pair(x, y).unwrap(), right_inv_pair(y, x).unwrap());
                if x.dim() + y.dim() == n {
                    prop_assert_eq!(
                        pair_is_complementary(x, y, Criterion::Stacked).unwrap(),
                        x.intersect(y).unwrap().is_zero()
                    );
                }
            }
        }
    }

    #[test]
    fn duality_preserves_lcp_when_dimensions_are_complementary(p in small_prime(), n in 2usize..=6, seed in any::<u64>()) {
        let f = fp(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = rng.gen_range(1..n);
        let (_, c) = random_family_upto(&mut rng, &f, n, 3, &[k]);
        let (_, d) = random_family_upto(&mut rng, &f, n, 3, &[n - k]);
        prop_assert_eq!(is_lcp(&c, &d).unwrap(), is_lcp(&c.dual(), &d.dual()).unwrap());
    }

    #[test]
    fn lift_intersection_identity(p in prop::sample::select(vec![2u32, 3]), n in 1usize..=4, m in 1usize..=3, seed in any::<u64>()) {
        prop_assume!(n * m <= 12);
        let f = fp(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_span(&mut rng, &f, n);
        let v = random_span(&mut rng, &f, n);
        let lu = lift_matrix_code(&u, m).unwrap();
        let lv = lift_matrix_code(&v, m).unwrap();
        prop_assert_eq!(lu.intersect(&lv).unwrap(), lift_matrix_code(&u.intersect(&v).unwrap(), m).unwrap());
        prop_assert_eq!(lu.dim(), m * u.dim());
    }

    #[test]
    fn lift_transfers_lcp(p in prop::sample::select(vec![2u32, 3]), n in 1usize..=4, m in 1usize..=3, seed in any::<u64>()) {
        let f = fp(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims: Vec<usize> = (1..=n).collect();
        let (_, c) = random_family(&mut rng, &f, n, 2, &dims);
        let (_, d) = random_family(&mut rng, &f, n, 2, &dims);
        let lifted = is_lcp(&lift_family(&c, m).unwrap(), &lift_family(&d, m).unwrap()).unwrap();
        prop_assert_eq!(lifted, is_lcp(&c, &d).unwrap());
    }

    #[test]
    fn plotkin_block_matrices_are_orthogonal((p, n, rows) in rows_strategy(4, 3), seed in any::<u64>()) {
        let f = fp(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c1 = LinearCode::span_of(&Matrix::from_rows(&f, n, &rows).unwrap());
        let c2 = LinearCode::span_of(&random_matrix(&mut rng, &f, 2, n));
        let m = plotkin_matrices(&c1, &c2).unwrap();
        prop_assert!(m.generator.mul_transpose(&m.parity_check).unwrap().is_zero());
        prop_assert_eq!(plotkin(&c1, &c2).unwrap().dimension(), c1.dimension() + c2.dimension());
        if p != 2 {
            for lambda in 1..p {
                let s = s_lambda_matrices(&c1, &c2, lambda).unwrap();
                prop_assert!(s.generator.mul_transpose(&s.parity_check).unwrap().is_zero());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn plotkin_products_stay_lcp(p in small_prime(), n in 2usize..=4, seed in any::<u64>()) {
        let f = fp(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c1, d1) = random_lcp(&mut rng, &f, n, 2);
        let (c2, d2) = random_lcp(&mut rng, &f, n, 2);
        let (pc, pd) = plotkin_lcp_pair(&c1, &d1, &c2, &d2).unwrap();
        prop_assert!(check_lcp(&pc, &pd, Criterion::RightInv).unwrap().verdict);
        let (plain, tilde) = plotkin_tilde_pair(&c1, &d1).unwrap();
        prop_assert!(check_lcp(&plain, &tilde, Criterion::Pairwise).unwrap().verdict);
    }

    #[test]
    fn s_lambda_products_stay_lcp(p in prop::sample::select(vec![3u32, 5, 7]), n in 2usize..=3, seed in any::<u64>()) {
        let f = fp(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lambda = rng.gen_range(1..p);
        let (c1, d1) = random_lcp(&mut rng, &f, n, 2);
        let (c2, d2) = random_lcp(&mut rng, &f, n, 2);
        let out = s_lambda_lcp(&c1, &d1, &c2, &d2, lambda).unwrap();
        prop_assert!(out.family);
        prop_assert!(out.memberwise);
    }

    #[test]
    fn s_lambda_square_minus_one_gives_lcd_members(p in prop::sample::select(vec![5u32, 13]), n in 2usize..=3, seed in any::<u64>()) {
        let f = fp(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lambda = (1..p).find(|&l| f.mul(l, l) == f.neg(1)).unwrap();
        let k = rng.gen_range(1..n);
        let (c, d) = loop {
            let (_, c) = random_family_upto(&mut rng, &f, n, 2, &[k]);
            let (_, d) = random_family_upto(&mut rng, &f, n, 2, &[n - k]);
            if is_lcp(&c, &d).unwrap() {
                break (c, d);
            }
        };
        let out = s_lambda_dual_lcp(&c, &d, lambda).unwrap();
        prop_assert!(out.memberwise);
        for s in out.first.members() {
            prop_assert!(s.intersect(&s.orthogonal()).unwrap().is_zero());
        }
    }

    #[test]
    fn s_lambda_square_one_gives_lcd_members(p in prop::sample::select(vec![3u32, 5, 7]), n in 2usize..=4, seed in any::<u64>()) {
        let f = fp(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dims: Vec<usize> = (1..n).collect();
        let (_, c) = random_family(&mut rng, &f, n, 2, &dims);
        prop_assume!(is_lcd(&c));
        for lambda in [1, p - 1] {
            let out = s_lambda_lcd(&c, lambda).unwrap();
            prop_assert!(out.memberwise);
        }
    }

    #[test]
    fn complement_functions_from_spreads(pk in prop::sample::select(vec![(2u32, 1usize), (3, 1), (5, 1), (2, 2), (3, 2)]), seed in any::<u64>()) {
        let (p, k) = pk;
        let f = fp(p);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spread = spread_field(&f, k).unwrap();
        let t = spread.len();
        let s = rng.gen_range(1..=t / 2);
        let mut idx: Vec<usize> = (0..t).collect();
        for i in (1..t).rev() {
            idx.swap(i, rng.gen_range(0..=i));
        }
        let pick = |r: &[usize]| SubspaceCode::new(r.iter().map(|&i| spread.code().get(i).clone()).collect()).unwrap();
        let c = pick(&idx[..s]);
        let d = pick(&idx[s..2 * s]);
        let fun = complement_from_lcp(&c, &d).unwrap();
        prop_assert!(verify_complement_function(&fun).unwrap().valid);
        // the hypothesis X + f(Y) = F^n on the k-class gives an LCP of the k and n-k classes
        let domain = fun.domain();
        let n = 2 * k;
        for (i, x) in domain.members().iter().enumerate() {
            for (j, y) in domain.members().iter().enumerate() {
                if x.dim() == k && y.dim() == k && i < s && j < s {
                    prop_assert_eq!(x.sum(fun.apply(j)).unwrap().dim(), n);
                }
            }
        }
        prop_assert!(is_lcp(&c, &d).unwrap());
    }
}

#[test]
fn constacyclic_codes_are_closed_under_the_shift() {
    let mut total = 0;
    for p in [2u32, 3] {
        let f = fp(p);
        for n in 2..=6usize {
            for a in 1..p {
                let mut checked = 0;
                for deg in 1..n {
                    for lower in all_vectors(p, deg) {
                        let mut coeffs = lower.clone();
                        coeffs.push(1);
                        let g = lcp_subspace::Polynomial::new(&f, coeffs).unwrap();
                        let Ok(code) = LinearCode::constacyclic(&g, n, a) else { continue };
                        let u = code.subspace();
                        if u.size() > 1 << 12 {
                            continue;
                        }
                        for c in u.enumerate_vectors(1 << 12).unwrap() {
                            let mut shifted = vec![f.mul(c[n - 1], a)];
                            shifted.extend_from_slice(&c[..n - 1]);
                            assert!(u.contains_vector(&shifted).unwrap(), "shift of {c:?} left the code");
                        }
                        checked += 1;
                    }
                }
                total += checked;
            }
        }
    }
    assert!(total > 20);
}

#[test]
fn generated_spreads_verify() {
    for (p, m, k) in [(2u32, 1u32, 1usize), (2, 1, 2), (2, 1, 3), (3, 1, 2), (5, 1, 1), (2, 2, 2), (3, 1, 3)] {
        let f = Field::new(p, m).unwrap();
        let s = spread_field(&f, k).unwrap();
        assert_eq!(s.len() as u128, spread_size(f.q(), 2 * k, k));
        assert!(verify_spread(s.code(), DEFAULT_ENUM_CAP).unwrap().valid, "q={} k={k}", f.q());
    }
}

#[test]
fn channel_detects_and_decodes_every_single_insertion() {
    for (p, k, split) in [(2u32, 2usize, 3usize), (3, 2, 4), (2, 3, 5)] {
        let f = fp(p);
        let spread = spread_field(&f, k).unwrap();
        let (c, d) = spread.code().split_at(split).unwrap();
        let inst = ChannelInstance::new(c.clone(), d.clone(), DEFAULT_ENUM_CAP).unwrap();
        let lines = projective_points(&f, 2 * k, DEFAULT_ENUM_CAP).unwrap();
        for sent in c.members() {
            for pt in &lines {
                let e = Subspace::span(&f, 2 * k, std::slice::from_ref(pt)).unwrap();
                if sent.contains(&e).unwrap() {
                    continue;
                }
                let r = insert_error(sent, &e).unwrap();
                assert!(detect(&r, &d).unwrap().detected);
                // at most one spread member fits inside R
                let inside = spread.code().members().iter().filter(|m| r.contains(m).unwrap()).count();
                assert_eq!(inside, 1);
                let res = correct(&r, &inst).unwrap();
                let rec = res.recovered.unwrap();
                let est = res.error_estimate.unwrap();
                assert_eq!(&rec, sent);
                assert_eq!(rec.sum(&est).unwrap(), r);
                assert!(rec.intersect(&est).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn code_files_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, m) in [(2u32, 1u32), (3, 1), (11, 1), (2, 2), (3, 2)] {
        let f = Field::new(p, m).unwrap();
        for n in 1..=4 {
            let mut cf = CodeFile::new(&f, n);
            let dims: Vec<usize> = (0..=n).collect();
            let (_, fam) = random_family(&mut rng, &f, n, 3, &dims);
            cf.push_code("F", "X", &fam);
            let reparsed = CodeFile::parse(&cf.render()).unwrap();
            assert_eq!(reparsed, cf);
            assert_eq!(reparsed.family("F").unwrap(), fam);
        }
    }
}
