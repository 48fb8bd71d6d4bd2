//! Seeded instance generators shared by the suites.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::almosthom::{hom_from_exact_rep, window_from_finite_group, AlmostHom, FiniteGroup, GroupOracle, LengthMode};
use crate::error::Result;
use crate::exactfield::field::RatFun;
use crate::exactfield::{Elem, Field, FieldKind};
use crate::matspace::{perm_matrix, Matrix, Permutation};

/// Scalars used as eigenvalues of structured matrices.
pub fn scalar_pool(field: &Field) -> Vec<Elem> {
    match field.kind() {
        FieldKind::Rationals => vec![field.one(), field.from_int(-1), field.from_int(2)],
        _ if field.order().is_some_and(|q| q <= 64) => field.units().unwrap_or_else(|_| vec![field.one()]),
        _ => vec![field.one(), field.from_int(2)].into_iter().filter(|a| !field.is_zero(a)).collect(),
    }
}

/// Invertible matrix for conjugation. Over `Q` it is integral with an
/// integral inverse, which keeps coefficient growth in check.
pub fn conjugator(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    if matches!(field.kind(), FieldKind::Rationals) {
        let mut u = Matrix::identity(field, n);
        for i in 0..n {
            for j in i + 1..n {
                u.set(i, j, field.from_int(rng.gen_range(-1..=1)));
            }
        }
        let p = perm_matrix(field, &Permutation::random(n, rng));
        return p.mul(&u).expect("square");
    }
    Matrix::random_invertible(field, n, rng)
}

/// Direct sum of random Jordan blocks with eigenvalues from [`scalar_pool`],
/// conjugated at random.
pub fn structured(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let pool = scalar_pool(field);
    let mut blocks = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = rng.gen_range(1..=left.min(3));
        let a = pool.choose(rng).unwrap();
        blocks.push(Matrix::jordan_block(field, a, s));
        left -= s;
    }
    let j = Matrix::block_diag(field, &blocks).expect("same field");
    let p = conjugator(field, n, rng);
    p.mul(&j).and_then(|x| x.mul(&p.inverse()?)).expect("invertible conjugator")
}

/// Random invertible matrix, structured or uniform with equal odds.
pub fn invertible(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    if rng.gen_bool(0.5) {
        structured(field, n, rng)
    } else {
        Matrix::random_invertible(field, n, rng)
    }
}

/// Random `n x m` matrix of rank at most `r`.
pub fn low_rank_rect(field: &Field, n: usize, m: usize, r: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let a = Matrix::random(field, n, r, rng);
    let b = Matrix::random(field, r, m, rng);
    a.mul(&b).expect("shapes agree")
}

/// `1 + u v^T` with `v^T u = 0` and `u, v` nonzero: a unipotent matrix of
/// rank distance one from the identity.
pub fn rank_one_unipotent(field: &Field, n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    assert!(n >= 2);
    let i = rng.gen_range(0..n);
    let mut j = rng.gen_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    let mut e = Matrix::identity(field, n);
    e.set(i, j, field.random_nonzero(rng));
    let p = conjugator(field, n, rng);
    p.mul(&e).and_then(|x| x.mul(&p.inverse()?)).expect("invertible conjugator")
}

/// Regular representation of `g` by permutation matrices plus an identity
/// block of size `pad`.
pub fn regular_rep(g: &FiniteGroup, field: &Field, pad: usize, mode: LengthMode) -> Result<AlmostHom> {
    let w = window_from_finite_group(g);
    let n = g.order();
    let gens: Vec<(usize, Matrix)> = (0..n)
        .map(|a| {
            let images = (0..n).map(|x| g.mul(&a, &x)).collect();
            (a, perm_matrix(field, &Permutation::new(images).expect("regular action")))
        })
        .collect();
    Ok(hom_from_exact_rep(&w, &gens, mode)?.direct_sum_identity(pad))
}

/// `1 + c e_i e_j^T` with `i != j` among the last `pad` coordinates. On a
/// padded representation it commutes with every image, so multiplying one
/// image by it moves every defect triple by rank at most one.
pub fn pad_unipotent(field: &Field, dim: usize, pad: usize, rng: &mut ChaCha8Rng) -> Matrix {
    assert!(pad >= 2 && pad <= dim);
    let base = dim - pad;
    let i = rng.gen_range(0..pad);
    let mut j = rng.gen_range(0..pad - 1);
    if j >= i {
        j += 1;
    }
    let mut e = Matrix::identity(field, dim);
    e.set(base + i, base + j, field.random_nonzero(rng));
    e
}

pub fn conjugate_random(hom: &AlmostHom, rng: &mut ChaCha8Rng) -> Result<AlmostHom> {
    hom.conjugate(&conjugator(&hom.field, hom.dim, rng))
}

/// Element of `F_p(t)` with numerator degree at most 2 and a monic
/// denominator of degree at most `den_degree`.
pub fn rational_function(field: &Field, den_degree: usize, rng: &mut ChaCha8Rng) -> Elem {
    let p = field.characteristic();
    let dn = rng.gen_range(0..=2);
    let dd = rng.gen_range(0..=den_degree);
    let num: Vec<u64> = (0..=dn).map(|_| rng.gen_range(0..p)).collect();
    let mut den: Vec<u64> = (0..dd).map(|_| rng.gen_range(0..p)).collect();
    den.push(1);
    Elem::Fun(Box::new(RatFun::normalized(num, den, p).expect("monic denominator")))
}

/// Invertible matrix over `F_p(t)` whose entries have denominators of degree
/// at most `den_degree`.
pub fn rational_function_invertible(field: &Field, n: usize, den_degree: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let data = (0..n * n).map(|_| rational_function(field, den_degree, rng)).collect();
        let m = Matrix::new(field, n, n, data).expect("shape");
        if m.is_invertible() {
            return m;
        }
    }
}
