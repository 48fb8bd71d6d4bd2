//! Characteristic polynomial `det(x*1 - A)`.
//!
//! Over `Q` the matrix is scaled to an integer matrix and handled by the
//! division-free Berkowitz recurrence, which keeps every intermediate an
//! integer. Other fields use a similarity reduction to upper Hessenberg form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::exactfield::{Elem, FieldKind, Poly};

pub fn charpoly(a: &Matrix) -> Result<Poly> {
    if !a.is_square() {
        return Err(Error::Shape("characteristic polynomial of a non-square matrix".into()));
    }
    match a.field().kind() {
        FieldKind::Rationals => Ok(charpoly_rational(a)),
        _ => charpoly_hessenberg(a),
    }
}

/// Hessenberg reduction followed by the standard recurrence for the
/// characteristic polynomial of a Hessenberg matrix.
pub fn charpoly_hessenberg(a: &Matrix) -> Result<Poly> {
    let f = a.field().clone();
    let n = a.rows();
    let mut h: Vec<Elem> = a.data().to_vec();
    let at = |i: usize, j: usize| i * n + j;
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| !f.is_zero(&h[at(i, m - 1)])) else { continue };
        if i != m {
            for k in 0..n {
                h.swap(at(i, k), at(m, k));
            }
            for k in 0..n {
                h.swap(at(k, i), at(k, m));
            }
        }
        let inv = f.inv(&h[at(m, m - 1)])?;
        for i in m + 1..n {
            let u = f.mul(&h[at(i, m - 1)], &inv);
            if f.is_zero(&u) {
                continue;
            }
            for k in 0..n {
                let v = f.sub(&h[at(i, k)], &f.mul(&u, &h[at(m, k)]));
                h[at(i, k)] = v;
            }
            for k in 0..n {
                let v = f.add(&h[at(k, m)], &f.mul(&u, &h[at(k, i)]));
                h[at(k, m)] = v;
            }
        }
    }
    // p[k] is the characteristic polynomial of the leading k x k block.
    let x = Poly::x(&f);
    let mut p: Vec<Poly> = vec![Poly::one(&f)];
    for k in 1..=n {
        let mut pk = x.sub(&Poly::constant(&f, h[at(k - 1, k - 1)].clone())).mul(&p[k - 1]);
        let mut t = f.one();
        for i in (1..k).rev() {
            t = f.mul(&t, &h[at(i, i - 1)]);
            let c = f.mul(&h[at(i - 1, k - 1)], &t);
            if !f.is_zero(&c) {
                pk = pk.sub(&p[i - 1].scale(&c));
            }
        }
        p.push(pk);
    }
    Ok(p.pop().unwrap())
}

/// Berkowitz recurrence on an integer matrix. Coefficients highest degree first.
pub fn berkowitz(m: &[BigInt], n: usize) -> Vec<BigInt> {
    let at = |i: usize, j: usize| i * n + j;
    let mut p = vec![BigInt::one()];
    for r in 0..n {
        let mut t = vec![BigInt::zero(); r + 2];
        t[0] = BigInt::one();
        t[1] = -m[at(r, r)].clone();
        // v = M_r^k C for the leading r x r block M_r and column C = m[0..r][r].
        let mut v: Vec<BigInt> = (0..r).map(|i| m[at(i, r)].clone()).collect();
        for k in 0..r {
            let rv: BigInt = (0..r).map(|j| &m[at(r, j)] * &v[j]).sum();
            t[k + 2] = -rv;
            if k + 1 < r {
                v = (0..r).map(|i| (0..r).map(|j| &m[at(i, j)] * &v[j]).sum()).collect();
            }
        }
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate() {
                if j <= i {
                    *slot += &t[i - j] * pj;
                }
            }
        }
        p = next;
    }
    p
}

fn charpoly_rational(a: &Matrix) -> Poly {
    let f = a.field().clone();
    let n = a.rows();
    let rs: Vec<&BigRational> = a.data().iter().map(|e| f.as_rational(e).unwrap()).collect();
    let d = crate::rational::denominator_lcm(rs.iter().copied());
    let dq = BigRational::from_integer(d.clone());
    let ints: Vec<BigInt> = rs.iter().map(|r| (*r * &dq).to_integer()).collect();
    let hi_first = berkowitz(&ints, n);
    // chi_A(x) = d^{-n} chi_{dA}(d x): coefficient of x^k is c_k / d^{n-k}.
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let c = &hi_first[n - k];
        let den = num_traits::pow(d.clone(), n - k);
        coeffs.push(Elem::Rat(Box::new(BigRational::new(c.clone(), den))));
    }
    Poly::new(&f, coeffs)
}
