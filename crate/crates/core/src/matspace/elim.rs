//! Elimination kernels. Three paths produce the same answers:
//! `u64` arithmetic for prime fields, fraction-free (Bareiss) integer
//! elimination for `Q`, and plain Gaussian elimination through the field API
//! for everything else. Pivots are always the first nonzero entry in the
//! current column.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactfield::fpoly::{invmod, mulmod};
use crate::exactfield::{Elem, Field};

/// Outcome of reducing a matrix to row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    pub rank: usize,
    /// Column index of each pivot, increasing.
    pub pivot_cols: Vec<usize>,
}

// ---------------------------------------------------------------------------
// Prime fields.

const SMALL: u64 = 1 << 32;

pub fn to_u64(data: &[Elem]) -> Vec<u64> {
    data.iter().map(|e| e.as_int().expect("prime field element")).collect()
}

pub fn from_u64(data: Vec<u64>) -> Vec<Elem> {
    data.into_iter().map(Elem::Int).collect()
}

#[inline]
fn axpy_row(dst: &mut [u64], src: &[u64], f: u64, p: u64) {
    // dst += f * src
    if p < SMALL {
        for (d, s) in dst.iter_mut().zip(src) {
            *d = (*d + f * *s) % p;
        }
    } else {
        for (d, s) in dst.iter_mut().zip(src) {
            *d = ((*d as u128 + f as u128 * *s as u128) % p as u128) as u64;
        }
    }
}

#[inline]
fn scale_row(row: &mut [u64], f: u64, p: u64) {
    for x in row.iter_mut() {
        *x = mulmod(*x, f, p);
    }
}

/// In-place echelon form over `F_p`. Returns the echelon data and the
/// determinant factor (product of pivots times the swap sign) for square input.
pub fn prime_echelon(a: &mut [u64], rows: usize, cols: usize, p: u64) -> (Echelon, u64) {
    let mut r = 0;
    let mut pivots = Vec::new();
    let mut det = 1u64 % p;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(i) = (r..rows).find(|&i| a[i * cols + c] != 0) else { continue };
        if i != r {
            for k in 0..cols {
                a.swap(i * cols + k, r * cols + k);
            }
            det = (p - det) % p;
        }
        let pivot = a[r * cols + c];
        det = mulmod(det, pivot, p);
        let inv = invmod(pivot, p).unwrap();
        scale_row(&mut a[r * cols + c..(r + 1) * cols], inv, p);
        let (top, bottom) = a.split_at_mut((r + 1) * cols);
        let src = &top[r * cols + c..(r + 1) * cols];
        for i in 0..rows - r - 1 {
            let row = &mut bottom[i * cols..(i + 1) * cols];
            let f = row[c];
            if f != 0 {
                axpy_row(&mut row[c..], src, p - f, p);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (Echelon { rank: r, pivot_cols: pivots }, det)
}

pub fn prime_det(a: &[u64], n: usize, p: u64) -> u64 {
    let mut m = a.to_vec();
    let (e, det) = prime_echelon(&mut m, n, n, p);
    if e.rank < n {
        0
    } else {
        det
    }
}

/// Inverse over `F_p`, `None` when singular.
pub fn prime_inverse(a: &[u64], n: usize, p: u64) -> Option<Vec<u64>> {
    let w = 2 * n;
    let mut m = vec![0u64; n * w];
    for i in 0..n {
        m[i * w..i * w + n].copy_from_slice(&a[i * n..(i + 1) * n]);
        m[i * w + n + i] = 1 % p;
    }
    for c in 0..n {
        let i = (c..n).find(|&i| m[i * w + c] != 0)?;
        if i != c {
            for k in 0..w {
                m.swap(i * w + k, c * w + k);
            }
        }
        let inv = invmod(m[c * w + c], p).unwrap();
        scale_row(&mut m[c * w..(c + 1) * w], inv, p);
        let pivot_row: Vec<u64> = m[c * w..(c + 1) * w].to_vec();
        for r in 0..n {
            if r == c {
                continue;
            }
            let f = m[r * w + c];
            if f != 0 {
                axpy_row(&mut m[r * w + c..(r + 1) * w], &pivot_row[c..], p - f, p);
            }
        }
    }
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        out[i * n..(i + 1) * n].copy_from_slice(&m[i * w + n..(i + 1) * w]);
    }
    Some(out)
}

pub fn prime_mul(a: &[u64], b: &[u64], n: usize, k: usize, m: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * m];
    let mut acc = vec![0u128; m];
    for i in 0..n {
        acc.iter_mut().for_each(|x| *x = 0);
        for t in 0..k {
            let x = a[i * k + t];
            if x == 0 {
                continue;
            }
            let row = &b[t * m..(t + 1) * m];
            if p < SMALL {
                for (s, &y) in acc.iter_mut().zip(row) {
                    *s += (x * y) as u128;
                }
            } else {
                for (s, &y) in acc.iter_mut().zip(row) {
                    *s += (x as u128 * y as u128) % p as u128;
                }
            }
        }
        for (o, s) in out[i * m..(i + 1) * m].iter_mut().zip(&acc) {
            *o = (*s % p as u128) as u64;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Rationals: scale rows to integers and run fraction-free elimination.

fn integer_rows(field: &Field, data: &[Elem], rows: usize, cols: usize) -> (Vec<BigInt>, BigInt) {
    let mut out = Vec::with_capacity(rows * cols);
    let mut scale = BigInt::one();
    for i in 0..rows {
        let row: Vec<&BigRational> =
            data[i * cols..(i + 1) * cols].iter().map(|e| field.as_rational(e).expect("rational entry")).collect();
        let l = crate::rational::denominator_lcm(row.iter().copied());
        for x in row {
            out.push((x * BigRational::from_integer(l.clone())).to_integer());
        }
        scale *= l;
    }
    (out, scale)
}

/// Fraction-free echelon form of an integer matrix. Returns the echelon data
/// and, for square full-rank input, the determinant.
pub fn bareiss(m: &mut [BigInt], rows: usize, cols: usize) -> (Echelon, BigInt) {
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    let mut sign = BigInt::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(i) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else { continue };
        if i != r {
            for k in 0..cols {
                m.swap(i * cols + k, r * cols + k);
            }
            sign = -sign;
        }
        let piv = m[r * cols + c].clone();
        for i in r + 1..rows {
            let f = m[i * cols + c].clone();
            for k in c + 1..cols {
                let v = &piv * &m[i * cols + k] - &f * &m[r * cols + k];
                m[i * cols + k] = v / &prev;
            }
            m[i * cols + c] = BigInt::zero();
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    let det = if r == rows && rows == cols { sign * prev } else { BigInt::zero() };
    (Echelon { rank: r, pivot_cols: pivots }, det)
}

pub fn rational_echelon(field: &Field, data: &[Elem], rows: usize, cols: usize) -> Echelon {
    let (mut m, _) = integer_rows(field, data, rows, cols);
    bareiss(&mut m, rows, cols).0
}

pub fn rational_det(field: &Field, data: &[Elem], n: usize) -> BigRational {
    let (mut m, scale) = integer_rows(field, data, n, n);
    let (_, det) = bareiss(&mut m, n, n);
    BigRational::new(det, scale)
}

// ---------------------------------------------------------------------------
// Any field.

pub fn generic_echelon(field: &Field, a: &mut [Elem], rows: usize, cols: usize) -> (Echelon, Elem) {
    let mut r = 0;
    let mut pivots = Vec::new();
    let mut det = field.one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(i) = (r..rows).find(|&i| !field.is_zero(&a[i * cols + c])) else { continue };
        if i != r {
            for k in 0..cols {
                a.swap(i * cols + k, r * cols + k);
            }
            det = field.neg(&det);
        }
        let pivot = a[r * cols + c].clone();
        det = field.mul(&det, &pivot);
        let inv = field.inv(&pivot).unwrap();
        for k in c..cols {
            a[r * cols + k] = field.mul(&a[r * cols + k], &inv);
        }
        for i in r + 1..rows {
            let f = a[i * cols + c].clone();
            if field.is_zero(&f) {
                continue;
            }
            for k in c..cols {
                let v = field.sub(&a[i * cols + k], &field.mul(&f, &a[r * cols + k]));
                a[i * cols + k] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (Echelon { rank: r, pivot_cols: pivots }, det)
}

pub fn generic_inverse(field: &Field, a: &[Elem], n: usize) -> Option<Vec<Elem>> {
    let w = 2 * n;
    let mut m = vec![field.zero(); n * w];
    for i in 0..n {
        for j in 0..n {
            m[i * w + j] = a[i * n + j].clone();
        }
        m[i * w + n + i] = field.one();
    }
    for c in 0..n {
        let i = (c..n).find(|&i| !field.is_zero(&m[i * w + c]))?;
        if i != c {
            for k in 0..w {
                m.swap(i * w + k, c * w + k);
            }
        }
        let inv = field.inv(&m[c * w + c]).unwrap();
        for k in c..w {
            m[c * w + k] = field.mul(&m[c * w + k], &inv);
        }
        for r in 0..n {
            if r == c {
                continue;
            }
            let f = m[r * w + c].clone();
            if field.is_zero(&f) {
                continue;
            }
            for k in c..w {
                let v = field.sub(&m[r * w + k], &field.mul(&f, &m[c * w + k]));
                m[r * w + k] = v;
            }
        }
    }
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        out.extend_from_slice(&m[i * w + n..(i + 1) * w]);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_det_small() {
        let mut m: Vec<BigInt> = [2, 1, 0, 1, 3, 1, 0, 1, 4].iter().map(|&x| BigInt::from(x)).collect();
        let (e, det) = bareiss(&mut m, 3, 3);
        assert_eq!(e.rank, 3);
        // 2(12-1) - 1(4-0) = 18
        assert_eq!(det, BigInt::from(18));
    }

    #[test]
    fn bareiss_rank_deficient_with_skipped_column() {
        // second column is twice the first; third independent.
        let vals = [1, 2, 0, 2, 4, 1, 3, 6, 1, 5, 10, 7];
        let mut m: Vec<BigInt> = vals.iter().map(|&x| BigInt::from(x)).collect();
        let (e, _) = bareiss(&mut m, 4, 3);
        assert_eq!(e.rank, 2);
        assert_eq!(e.pivot_cols, vec![0, 2]);
    }

    #[test]
    fn prime_inverse_round_trip() {
        let p = 7;
        let a = vec![1, 2, 3, 0, 1, 4, 5, 6, 0];
        let inv = prime_inverse(&a, 3, p).unwrap();
        let prod = prime_mul(&a, &inv, 3, 3, 3, p);
        assert_eq!(prod, vec![1, 0, 0, 0, 1, 0, 0, 0, 1]);
        assert_eq!(prime_det(&a, 3, p), (-24i64 - 2 * (0 - 20) + 3 * (0 - 5)).rem_euclid(7) as u64);
    }
}
