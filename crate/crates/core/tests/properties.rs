use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use linsofic_core::exactfield::{finite_field, Field};
use linsofic_core::jordanlen::{f_map, f_schedule, iota_report, len_hamming, len_jordan, len_rank};
use linsofic_core::matspace::{matrix_from_json, matrix_to_json, perm_matrix, restrict_scalars, Matrix, Permutation};
use linsofic_core::rational::{q, q_from_json, q_to_json, Q};
use linsofic_core::seed::rng_for;

fn field(i: usize) -> Field {
    match i {
        0 => Field::prime(2).unwrap(),
        1 => Field::prime(3).unwrap(),
        2 => Field::prime(5).unwrap(),
        3 => finite_field(2, 2).unwrap(),
        4 => finite_field(3, 2).unwrap(),
        5 => Field::rationals(),
        _ => Field::rational_functions(2).unwrap(),
    }
}

/// Fields where eigenvalue search is exhaustive or rational.
fn small_field(i: usize) -> Field {
    field(i % 6)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms(f in 0usize..7, seed: u64) {
        let k = field(f);
        let mut r = rng(seed);
        let (a, b, c) = (k.random(&mut r), k.random(&mut r), k.random(&mut r));
        prop_assert_eq!(k.mul(&k.add(&a, &b), &c), k.add(&k.mul(&a, &c), &k.mul(&b, &c)));
        prop_assert_eq!(k.add(&a, &k.neg(&a)), k.zero());
        prop_assert_eq!(k.mul(&a, &b), k.mul(&b, &a));
        if !k.is_zero(&a) {
            prop_assert!(k.is_one(&k.mul(&a, &k.inv(&a).unwrap())));
        }
        if let Some(order) = k.order() {
            prop_assert_eq!(k.elem_from_index(k.elem_index(&a)), a.clone());
            prop_assert_eq!(k.pow(&a, &BigUint::from(order)), a);
        }
    }

    #[test]
    fn rank_of_sums_and_products(f in 0usize..7, n in 1usize..5, m in 1usize..5, seed: u64) {
        let k = field(f);
        let mut r = rng(seed);
        let a = Matrix::random(&k, n, n, &mut r);
        let b = Matrix::random(&k, m, m, &mut r);
        prop_assert_eq!(a.direct_sum(&b).unwrap().rank(), a.rank() + b.rank());
        prop_assert_eq!(a.kron(&b).unwrap().rank(), a.rank() * b.rank());
        prop_assert_eq!(a.transpose().rank(), a.rank());
        prop_assert_eq!(a.rank() + a.kernel_dim(), n);
    }

    #[test]
    fn rank_under_invertible_factors(f in 0usize..7, n in 1usize..6, seed: u64) {
        let k = field(f);
        let mut r = rng(seed);
        let a = Matrix::random(&k, n, n, &mut r);
        let p = Matrix::random_invertible(&k, n, &mut r);
        let u = Matrix::random_invertible(&k, n, &mut r);
        prop_assert_eq!(p.mul(&a).unwrap().mul(&u).unwrap().rank(), a.rank());
        prop_assert!(p.mul(&p.inverse().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn length_chains(f in 0usize..6, n in 1usize..6, seed: u64) {
        let k = small_field(f);
        let a = Matrix::random_invertible(&k, n, &mut rng(seed));
        let report = iota_report(&a, &[]).unwrap();
        prop_assert!(report.violations().is_empty(), "{:?}", report.violations());
    }

    #[test]
    fn lengths_are_conjugation_invariant(f in 0usize..6, n in 1usize..6, seed: u64) {
        let k = small_field(f);
        let mut r = rng(seed);
        let a = Matrix::random_invertible(&k, n, &mut r);
        let p = Matrix::random_invertible(&k, n, &mut r);
        let b = p.mul(&a).unwrap().mul(&p.inverse().unwrap()).unwrap();
        prop_assert_eq!(len_rank(&b).unwrap(), len_rank(&a).unwrap());
        prop_assert_eq!(len_jordan(&b, &[]).unwrap().0, len_jordan(&a, &[]).unwrap().0);
    }

    #[test]
    fn restriction_scales_fixed_spaces(f in 3usize..5, n in 1usize..5, seed: u64) {
        let k = field(f);
        let a = Matrix::random(&k, n, n, &mut rng(seed));
        let b = restrict_scalars(&a).unwrap();
        prop_assert_eq!(b.rows(), 2 * n);
        prop_assert_eq!(b.one_minus().unwrap().kernel_dim(), 2 * a.one_minus().unwrap().kernel_dim());
        prop_assert_eq!(b.rank(), 2 * a.rank());
    }

    #[test]
    fn matrices_round_trip_through_json(f in 0usize..7, n in 1usize..4, m in 1usize..4, seed: u64) {
        let a = Matrix::random(&field(f), n, m, &mut rng(seed));
        prop_assert_eq!(matrix_from_json(&matrix_to_json(&a)).unwrap(), a);
    }

    #[test]
    fn permutation_matrices_multiply(n in 1usize..8, seed: u64) {
        let mut r = rng(seed);
        let (s, t) = (Permutation::random(n, &mut r), Permutation::random(n, &mut r));
        let k = Field::prime(3).unwrap();
        let st = perm_matrix(&k, &s).mul(&perm_matrix(&k, &t)).unwrap();
        let composed = [perm_matrix(&k, &s.compose(&t)), perm_matrix(&k, &t.compose(&s))];
        prop_assert!(composed.contains(&st));
        prop_assert!(s.compose(&s.inverse()).is_identity());
        prop_assert_eq!(len_hamming(&s), q(s.moved_points() as i64, n as i64));
        prop_assert_eq!(s.fixed_points() + s.moved_points(), n);
    }

    #[test]
    fn schedule_is_the_first_stage_reaching_the_target(dn in 1i64..64, en in 1i64..64) {
        let (delta, eps) = (q(dn, 64), q(en, 1024));
        let m = f_schedule(&delta, &eps).unwrap();
        let target = q(1, 2) + &eps * q(2, 1);
        let mut x = q(1, 1) - &delta;
        let mut stages = 0;
        while x > target {
            x = f_map(&x);
            stages += 1;
        }
        prop_assert_eq!(m, stages);
    }

    #[test]
    fn rationals_round_trip_through_json(n: i64, d in 1i64..i64::MAX) {
        let x: Q = q(n, d);
        prop_assert_eq!(q_from_json(&q_to_json(&x)).unwrap(), x);
    }

    #[test]
    fn derived_streams_depend_only_on_the_path(seed: u64, a: u64, b: u64) {
        use rand::RngCore;
        prop_assert_eq!(rng_for(seed, &[a, b]).next_u64(), rng_for(seed, &[a, b]).next_u64());
        if a != b {
            prop_assert_ne!(rng_for(seed, &[a, b]).next_u64(), rng_for(seed, &[b, a]).next_u64());
        }
    }
}
