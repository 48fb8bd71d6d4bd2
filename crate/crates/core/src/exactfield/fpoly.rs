//! Dense polynomials over a prime field `F_p` with `u64` coefficients, lowest
//! degree first and no trailing zeros. Used for the numerators and
//! denominators of `F_p(t)` elements.

pub type FPoly = Vec<u64>;

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

#[inline]
pub fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue; `None` for zero.
pub fn invmod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    debug_assert_eq!(r0, 1);
    Some(t0.rem_euclid(p as i128) as u64)
}

pub fn trim(v: &mut FPoly) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub fn deg(a: &[u64]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn constant(c: u64, p: u64) -> FPoly {
    let mut v = vec![c % p];
    trim(&mut v);
    v
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> FPoly {
    let n = a.len().max(b.len());
    let mut out: FPoly = (0..n).map(|i| addmod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p)).collect();
    trim(&mut out);
    out
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> FPoly {
    let n = a.len().max(b.len());
    let mut out: FPoly = (0..n).map(|i| submod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p)).collect();
    trim(&mut out);
    out
}

pub fn neg(a: &[u64], p: u64) -> FPoly {
    a.iter().map(|&c| submod(0, c, p)).collect()
}

pub fn scale(a: &[u64], c: u64, p: u64) -> FPoly {
    let mut out: FPoly = a.iter().map(|&x| mulmod(x, c, p)).collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> FPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addmod(out[i + j], mulmod(x, y, p), p);
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (FPoly, FPoly) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r: FPoly = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let inv_lead = invmod(b[db], p).expect("nonzero leading coefficient");
    let mut quo = vec![0u64; r.len() - db];
    for k in (0..quo.len()).rev() {
        let c = mulmod(r[k + db], inv_lead, p);
        quo[k] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = submod(r[k + j], mulmod(c, bj, p), p);
            }
        }
    }
    trim(&mut r);
    trim(&mut quo);
    (quo, r)
}

pub fn monic(a: &[u64], p: u64) -> FPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, invmod(l, p).expect("nonzero"), p),
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> FPoly {
    let mut x: FPoly = a.to_vec();
    let mut y: FPoly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| addmod(mulmod(acc, x, p), c, p))
}
