//! Polynomial factorization and root finding.
//!
//! Over finite fields: squarefree decomposition, distinct-degree splitting and
//! randomized equal-degree splitting (Cantor-Zassenhaus). Over `Q`: rational
//! roots through a `p`-adic lift and rational reconstruction; other factors
//! must be supplied as hints. Over `F_p(t)`: hints, plus full factoring of
//! polynomials whose coefficients are constants.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{is_prime, Elem, Field, FieldKind, RatFun};
use super::fpoly;
use super::poly::Poly;
use crate::error::{Error, Result};

/// `unit * prod(factor^multiplicity)` with monic irreducible factors in a
/// deterministic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Elem,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn product(&self, field: &Field) -> Poly {
        self.factors.iter().fold(Poly::constant(field, self.unit.clone()), |acc, (f, e)| acc.mul(&f.pow(*e)))
    }

    fn sort(&mut self) {
        self.factors.sort_by_key(|a| a.0.sort_key());
    }
}

/// Fixed seed for the internal randomized steps of root finding, so results
/// are reproducible without threading an RNG through every caller.
const ROOT_SEED: u64 = 0x0005_eed0_f00d;

pub fn random_poly<R: Rng + ?Sized>(field: &Field, below_degree: usize, rng: &mut R) -> Poly {
    Poly::new(field, (0..below_degree).map(|_| field.random(rng)).collect())
}

/// Squarefree decomposition `f = unit * prod(g_i^i)` over a perfect field
/// (finite fields and `Q`). Returns the pairs `(g, i)` with `g` monic and
/// squarefree, pairwise coprime.
pub fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let field = f.field().clone();
    let f = f.monic()?;
    let p = field.characteristic();
    if p != 0 && !field.is_finite() {
        return Err(Error::Input(format!("squarefree decomposition needs a perfect field, not {}", field)));
    }
    let mut out: Vec<(Poly, usize)> = Vec::new();
    if f.degree() == Some(0) {
        return Ok(out);
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c)?.expect("gcd divides");
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y)?.expect("gcd divides");
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac, i));
        }
        w = y.clone();
        c = c.div_exact(&y)?.expect("gcd divides");
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        // Remaining part is a polynomial in x^p; take its p-th root.
        let g = c.contract(p as usize).expect("derivative vanishes");
        let root = g.map(&field, |a| field.pth_root(a))?;
        for (h, j) in squarefree_decomposition(&root)? {
            out.push((h, j * p as usize));
        }
    }
    // Merge parts that ended up with equal multiplicities.
    out.sort_by_key(|(_, m)| *m);
    let mut merged: Vec<(Poly, usize)> = Vec::new();
    for (g, m) in out {
        match merged.last_mut() {
            Some((h, k)) if *k == m => *h = h.mul(&g),
            _ => merged.push((g, m)),
        }
    }
    Ok(merged)
}

/// Distinct-degree splitting of a monic squarefree polynomial over `F_q`:
/// pairs `(product of all irreducible factors of degree d, d)`.
pub fn distinct_degree(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let field = f.field();
    let q = field.order_big().ok_or(Error::NotFinite)?;
    let x = Poly::x(field);
    let mut g = f.monic()?;
    let mut h = x.rem(&g)?;
    let mut out = Vec::new();
    let mut d = 1;
    while g.degree().unwrap_or(0) >= 2 * d {
        h = h.powmod(&q, &g)?;
        let fac = g.gcd(&h.sub(&x));
        if fac.degree().unwrap_or(0) > 0 {
            g = g.div_exact(&fac)?.expect("gcd divides");
            h = h.rem(&g)?;
            out.push((fac, d));
        }
        d += 1;
    }
    if let Some(dg) = g.degree() {
        if dg > 0 {
            out.push((g, dg));
        }
    }
    Ok(out)
}

/// Splits a monic squarefree polynomial all of whose irreducible factors have
/// degree `d` into those factors.
pub fn equal_degree<R: Rng + ?Sized>(f: &Poly, d: usize, rng: &mut R) -> Result<Vec<Poly>> {
    let field = f.field();
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let q = field.order_big().ok_or(Error::NotFinite)?;
    let p = field.characteristic();
    loop {
        let r = random_poly(field, n, rng);
        if r.degree().unwrap_or(0) == 0 {
            continue;
        }
        let s = if p == 2 {
            // Absolute trace of F_{q^d} over F_2 applied to r.
            let k = q.bits() as usize - 1;
            let mut t = r.rem(f)?;
            let mut s = t.clone();
            for _ in 1..k * d {
                t = t.mulmod(&t, f)?;
                s = s.add(&t);
            }
            s
        } else {
            let e = (num_traits::pow(q.clone(), d) - BigUint::one()) / BigUint::from(2u32);
            r.powmod(&e, f)?.sub(&Poly::one(field))
        };
        let g = f.gcd(&s);
        if let Some(dg) = g.degree() {
            if dg > 0 && dg < n {
                let other = f.div_exact(&g)?.expect("gcd divides");
                let mut out = equal_degree(&g, d, rng)?;
                out.extend(equal_degree(&other, d, rng)?);
                return Ok(out);
            }
        }
    }
}

/// Complete factorization over a finite field. Deterministic for a given RNG
/// state.
pub fn poly_factor<R: Rng + ?Sized>(f: &Poly, rng: &mut R) -> Result<Factorization> {
    let field = f.field();
    if !field.is_finite() {
        return Err(Error::NotFinite);
    }
    let unit = f.lead().ok_or(Error::ZeroPolynomial)?.clone();
    let mut out = Factorization { unit, factors: Vec::new() };
    for (part, mult) in squarefree_decomposition(f)? {
        for (bundle, d) in distinct_degree(&part)? {
            for g in equal_degree(&bundle, d, rng)? {
                out.factors.push((g, mult));
            }
        }
    }
    out.sort();
    Ok(out)
}

fn finite_roots(f: &Poly) -> Result<Vec<(Elem, usize)>> {
    let field = f.field();
    let q = field.order_big().ok_or(Error::NotFinite)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ROOT_SEED);
    let x = Poly::x(field);
    let mut out = Vec::new();
    for (part, mult) in squarefree_decomposition(f)? {
        let h = x.powmod(&q, &part)?;
        let lin = part.gcd(&h.sub(&x));
        if lin.degree().unwrap_or(0) == 0 {
            continue;
        }
        for g in equal_degree(&lin, 1, &mut rng)? {
            out.push((field.neg(&g.coeff(0)), mult));
        }
    }
    Ok(out)
}

fn sort_roots(field: &Field, roots: &mut [(Elem, usize)]) {
    roots.sort_by_key(|a| field.sort_key(&a.0));
}

/// Roots of `f` in its coefficient field with multiplicities, sorted.
///
/// Finite fields use factorization, `Q` uses exact rational root extraction,
/// other fields rely on `hints` (see [`factor_with_hints`]).
pub fn roots_in_field(f: &Poly, hints: &[Poly]) -> Result<Vec<(Elem, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let field = f.field();
    let mut roots = if field.is_finite() {
        finite_roots(f)?
    } else if matches!(field.kind(), FieldKind::Rationals) {
        rational_roots(f)?
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(ROOT_SEED);
        factor_with_hints(f, hints, &mut rng)?
            .factors
            .into_iter()
            .filter(|(g, _)| g.degree() == Some(1))
            .map(|(g, m)| (field.neg(&g.coeff(0)), m))
            .collect()
    };
    sort_roots(field, &mut roots);
    Ok(roots)
}

// ---------------------------------------------------------------------------
// Rational roots.

fn integer_primitive(f: &Poly) -> Vec<BigInt> {
    let field = f.field();
    let rs: Vec<BigRational> = f.coeffs().iter().map(|c| field.as_rational(c).unwrap().clone()).collect();
    let l = crate::rational::denominator_lcm(rs.iter());
    let mut ints: Vec<BigInt> = rs.iter().map(|r| (r * BigRational::from_integer(l.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if !content.is_zero() {
        for c in ints.iter_mut() {
            *c = &*c / &content;
        }
    }
    ints
}

fn eval_int_mod(g: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    g.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn modinv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Smallest `(a, b)` with `a = b * r mod m`, `|a| <= bound_a`, `0 < b <= bound_b`.
fn rational_reconstruct(r: &BigInt, m: &BigInt, bound_a: &BigInt, bound_b: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound_a {
        let qt = &r0 / &r1;
        let r2 = &r0 - &qt * &r1;
        let t2 = &t0 - &qt * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > *bound_b {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Rational roots of a polynomial over `Q`, with multiplicities.
pub fn rational_roots(f: &Poly) -> Result<Vec<(Elem, usize)>> {
    let qf = f.field().clone();
    if !matches!(qf.kind(), FieldKind::Rationals) {
        return Err(Error::FieldMismatch("rational_roots needs a polynomial over Q".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sq = f.div_exact(&f.gcd(&f.derivative()))?.expect("gcd divides");
    let mut g = integer_primitive(&sq);
    let mut candidates: Vec<BigRational> = Vec::new();
    if g.first().is_some_and(Zero::is_zero) {
        candidates.push(BigRational::zero());
        g.remove(0);
    }
    if g.len() >= 2 {
        candidates.extend(nonzero_rational_roots(&g)?);
    }
    let mut out = Vec::new();
    for r in candidates {
        let root = Elem::Rat(Box::new(r));
        let lin = Poly::linear(&qf, &root);
        let mut h = f.clone();
        let mut m = 0;
        while let Some(next) = h.div_exact(&lin)? {
            h = next;
            m += 1;
        }
        if m > 0 {
            out.push((root, m));
        }
    }
    Ok(out)
}

/// Nonzero rational roots of a squarefree primitive integer polynomial with
/// nonzero constant term.
fn nonzero_rational_roots(g: &[BigInt]) -> Result<Vec<BigRational>> {
    let lead = g.last().unwrap().abs();
    let c0 = g[0].abs();
    let bound = BigInt::from(2) * &c0 * &lead;
    let dg: Vec<BigInt> = g.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let mut p: u64 = 3;
    let mut tries = 0;
    let prime = loop {
        tries += 1;
        if tries > 20_000 {
            return Err(Error::SearchExhausted("no good prime for rational root lifting".into()));
        }
        p += 2;
        if !is_prime(p) || (&lead % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = Field::prime(p)?;
        let gp = Poly::new(&fp, g.iter().map(|c| fp.from_bigint(c)).collect());
        if gp.gcd(&gp.derivative()).degree() == Some(0) {
            break p;
        }
    };
    let fp = Field::prime(prime)?;
    let gp = Poly::new(&fp, g.iter().map(|c| fp.from_bigint(c)).collect());
    let mut out = Vec::new();
    for (r0, _) in finite_roots(&gp)? {
        let mut m = BigInt::from(prime);
        let mut r = BigInt::from(r0.as_int().unwrap());
        while m <= bound {
            let m2 = &m * &m;
            let num = eval_int_mod(g, &r, &m2);
            let den = eval_int_mod(&dg, &r, &m2);
            let inv = modinv(&den, &m2).expect("simple root");
            r = (&r - num * inv).mod_floor(&m2);
            m = m2;
        }
        if let Some(cand) = rational_reconstruct(&r, &m, &c0, &lead) {
            // Exact check.
            let val =
                g.iter().rev().fold(BigRational::zero(), |acc, c| acc * &cand + BigRational::from_integer(c.clone()));
            if val.is_zero() {
                out.push(cand);
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Irreducibility.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    /// No decision procedure applies; the caller decides whether to trust it.
    Unknown,
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test over a finite field.
pub fn is_irreducible_finite(f: &Poly) -> Result<bool> {
    let field = f.field();
    let q = field.order_big().ok_or(Error::NotFinite)?;
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    let f = f.monic()?;
    let x = Poly::x(field);
    let mut powers = vec![x.rem(&f)?];
    for i in 0..n {
        let next = powers[i].powmod(&q, &f)?;
        powers.push(next);
    }
    if powers[n] != x.rem(&f)? {
        return Ok(false);
    }
    for r in prime_divisors(n) {
        if f.gcd(&powers[n / r].sub(&x)).degree() != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Converts a polynomial over `F_p(t)` whose coefficients are constants into
/// one over `F_p`.
fn constant_coeffs(f: &Poly, fp: &Field) -> Option<Poly> {
    let mut coeffs = Vec::new();
    for c in f.coeffs() {
        match c {
            Elem::Fun(r) if r.is_polynomial() && r.num.len() <= 1 => {
                coeffs.push(Elem::Int(r.num.first().copied().unwrap_or(0)));
            }
            _ => return None,
        }
    }
    Some(Poly::new(fp, coeffs))
}

fn lift_constant(g: &Poly, field: &Field) -> Poly {
    let p = field.characteristic();
    Poly::new(
        field,
        g.coeffs()
            .iter()
            .map(|c| Elem::Fun(Box::new(RatFun { num: fpoly::constant(c.as_int().unwrap(), p), den: vec![1] })))
            .collect(),
    )
}

/// Eisenstein's criterion at the irreducible factors of the constant term, for
/// monic polynomials over `F_p(t)` with coefficients in `F_p[t]`.
fn eisenstein_fp_t(f: &Poly) -> Result<bool> {
    let field = f.field();
    let p = field.characteristic();
    let f = f.monic()?;
    let n = f.degree().unwrap();
    let mut polys = Vec::new();
    for c in f.coeffs() {
        match c {
            Elem::Fun(r) if r.is_polynomial() => polys.push(r.num.clone()),
            _ => return Ok(false),
        }
    }
    if polys[0].is_empty() {
        return Ok(false);
    }
    let fp = Field::prime(p)?;
    let c0 = Poly::new(&fp, polys[0].iter().map(|&c| Elem::Int(c)).collect());
    let mut rng = ChaCha8Rng::seed_from_u64(ROOT_SEED);
    for (pi, mult) in poly_factor(&c0, &mut rng)?.factors {
        if mult != 1 || pi.degree() == Some(0) {
            continue;
        }
        let pi_f: Vec<u64> = pi.coeffs().iter().map(|c| c.as_int().unwrap()).collect();
        if (1..n).all(|i| fpoly::divrem(&polys[i], &pi_f, p).1.is_empty()) {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn irreducibility(f: &Poly) -> Result<Irreducibility> {
    let field = f.field();
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Ok(Irreducibility::Reducible);
    }
    if n == 1 {
        return Ok(Irreducibility::Irreducible);
    }
    if field.is_finite() {
        return Ok(if is_irreducible_finite(f)? { Irreducibility::Irreducible } else { Irreducibility::Reducible });
    }
    match field.kind() {
        FieldKind::Rationals => {
            if !rational_roots(f)?.is_empty() {
                Ok(Irreducibility::Reducible)
            } else if n <= 3 {
                Ok(Irreducibility::Irreducible)
            } else {
                Ok(Irreducibility::Unknown)
            }
        }
        FieldKind::RationalFunctions(p) => {
            let fp = Field::prime(*p)?;
            if let Some(g) = constant_coeffs(&f.monic()?, &fp) {
                // F_p is algebraically closed in F_p(t).
                return irreducibility(&g);
            }
            if eisenstein_fp_t(f)? {
                return Ok(Irreducibility::Irreducible);
            }
            Ok(Irreducibility::Unknown)
        }
        _ => Ok(Irreducibility::Unknown),
    }
}

/// Lexicographically first monic irreducible polynomial of degree `m` over a
/// finite field, enumerating lower coefficients by field index.
pub fn first_irreducible(field: &Field, m: usize) -> Result<Poly> {
    let q = field.order().ok_or(Error::NotFinite)?;
    let count = q.checked_pow(m as u32).ok_or_else(|| Error::Input("degree too large".into()))?;
    for idx in 0..count {
        let mut coeffs = Vec::with_capacity(m + 1);
        let mut k = idx;
        for _ in 0..m {
            coeffs.push(field.elem_from_index(k % q));
            k /= q;
        }
        coeffs.push(field.one());
        let f = Poly::new(field, coeffs);
        if is_irreducible_finite(&f)? {
            return Ok(f);
        }
    }
    Err(Error::SearchExhausted(format!("no irreducible polynomial of degree {m} over {field}")))
}

// ---------------------------------------------------------------------------
// Hint-driven factorization.

fn strip_factor(r: &mut Poly, h: &Poly) -> Result<usize> {
    let mut count = 0;
    while r.degree().unwrap_or(0) >= h.degree().unwrap_or(0) {
        match r.div_exact(h)? {
            Some(next) => {
                *r = next;
                count += 1;
            }
            None => break,
        }
    }
    Ok(count)
}

/// Complete factorization using whatever the field supports plus caller
/// supplied irreducible factors.
///
/// Finite fields ignore the hints. Over `Q`, linear factors are found
/// automatically and squarefree parts of degree at most 3 without rational
/// roots are recognised as irreducible. Over `F_p(t)`, factors with constant
/// coefficients are found automatically. Whatever remains must be covered by
/// hints or have degree at most one.
pub fn factor_with_hints<R: Rng + ?Sized>(f: &Poly, hints: &[Poly], rng: &mut R) -> Result<Factorization> {
    let field = f.field().clone();
    if field.is_finite() {
        return poly_factor(f, rng);
    }
    let unit = f.lead().ok_or(Error::ZeroPolynomial)?.clone();
    let mut r = f.monic()?;
    let mut out = Factorization { unit, factors: Vec::new() };

    if matches!(field.kind(), FieldKind::Rationals) {
        for (root, m) in rational_roots(&r)? {
            let lin = Poly::linear(&field, &root);
            for _ in 0..m {
                r = r.div_exact(&lin)?.expect("root divides");
            }
            out.factors.push((lin, m));
        }
    }
    for h in hints {
        if h.field() != &field {
            return Err(Error::FieldMismatch(format!("hint {h} is not over {field}")));
        }
        let h = h.monic()?;
        if h.degree() == Some(0) {
            continue;
        }
        if irreducibility(&h)? == Irreducibility::Reducible {
            return Err(Error::Reducible(format!("hint {h}")));
        }
        let m = strip_factor(&mut r, &h)?;
        if m > 0 {
            out.factors.push((h, m));
        }
    }
    if r.degree().unwrap_or(0) > 0 {
        match field.kind() {
            FieldKind::Rationals => {
                for (part, m) in squarefree_decomposition(&r)? {
                    if part.degree().unwrap() <= 3 {
                        out.factors.push((part, m));
                    } else {
                        return Err(Error::Unfactorable(r.to_string()));
                    }
                }
            }
            FieldKind::RationalFunctions(p) => {
                let fp = Field::prime(*p)?;
                if let Some(g) = constant_coeffs(&r, &fp) {
                    for (h, m) in poly_factor(&g, rng)?.factors {
                        out.factors.push((lift_constant(&h, &field), m));
                    }
                } else if r.degree() == Some(1) {
                    out.factors.push((r.clone(), 1));
                } else {
                    return Err(Error::Unfactorable(r.to_string()));
                }
            }
            _ => {
                if r.degree() == Some(1) {
                    out.factors.push((r.clone(), 1));
                } else {
                    return Err(Error::Unfactorable(r.to_string()));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(11)
    }

    #[test]
    fn x_cubed_minus_x_over_f3_splits() {
        let f3 = Field::prime(3).unwrap();
        let f = Poly::from_ints(&f3, &[0, -1, 0, 1]);
        let fac = poly_factor(&f, &mut rng()).unwrap();
        assert_eq!(fac.factors.len(), 3);
        assert!(fac.factors.iter().all(|(g, m)| g.degree() == Some(1) && *m == 1));
        assert_eq!(fac.product(&f3), f);
    }

    #[test]
    fn inseparable_power_over_f2() {
        // x^4 + 1 = (x + 1)^4 over F_2
        let f2 = Field::prime(2).unwrap();
        let f = Poly::from_ints(&f2, &[1, 0, 0, 0, 1]);
        let fac = poly_factor(&f, &mut rng()).unwrap();
        assert_eq!(fac.factors, vec![(Poly::from_ints(&f2, &[1, 1]), 4)]);
    }

    #[test]
    fn mixed_degrees_over_f5() {
        let f5 = Field::prime(5).unwrap();
        let a = Poly::from_ints(&f5, &[2, 0, 1]); // x^2 + 2, irreducible mod 5
        let b = Poly::from_ints(&f5, &[1, 1]);
        let c = Poly::from_ints(&f5, &[1, 1, 0, 1]); // x^3 + x + 1
        assert!(is_irreducible_finite(&a).unwrap());
        assert!(is_irreducible_finite(&c).unwrap());
        let f = a.pow(2).mul(&b).mul(&c).scale(&f5.from_int(3));
        let fac = poly_factor(&f, &mut rng()).unwrap();
        assert_eq!(fac.unit, f5.from_int(3));
        assert_eq!(fac.product(&f5), f);
        assert_eq!(fac.factors.len(), 3);
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        let qf = Field::rationals();
        // (x - 2/3)^2 (x + 5) (x^2 + 1)
        let r = qf.rational(&q(2, 3)).unwrap();
        let f = Poly::linear(&qf, &r).pow(2).mul(&Poly::from_ints(&qf, &[5, 1])).mul(&Poly::from_ints(&qf, &[1, 0, 1]));
        let roots = rational_roots(&f).unwrap();
        assert_eq!(roots, vec![(qf.from_int(-5), 1), (r, 2)]);
        assert!(rational_roots(&Poly::from_ints(&qf, &[-2, 0, 1])).unwrap().is_empty());
        let z = rational_roots(&Poly::from_ints(&qf, &[0, 0, 1])).unwrap();
        assert_eq!(z, vec![(qf.zero(), 2)]);
    }

    #[test]
    fn q_factoring_needs_hints_beyond_degree_three() {
        let qf = Field::rationals();
        let a = Poly::from_ints(&qf, &[1, 0, 1]);
        let b = Poly::from_ints(&qf, &[2, 0, 0, 0, 1]); // x^4 + 2, irreducible
        let f = a.mul(&b).mul(&Poly::from_ints(&qf, &[-1, 1]));
        assert!(matches!(factor_with_hints(&f, &[], &mut rng()), Err(Error::Unfactorable(_))));
        let fac = factor_with_hints(&f, std::slice::from_ref(&b), &mut rng()).unwrap();
        assert_eq!(fac.factors.len(), 3);
        assert_eq!(fac.product(&qf), f);
    }

    #[test]
    fn fp_t_eisenstein() {
        let ft = Field::rational_functions(2).unwrap();
        let t = ft.t().unwrap();
        let f = Poly::new(&ft, vec![ft.neg(&t), ft.zero(), ft.one()]); // x^2 - t
        assert_eq!(irreducibility(&f).unwrap(), Irreducibility::Irreducible);
        let g = Poly::new(&ft, vec![ft.one(), ft.zero(), ft.one()]); // x^2 + 1 = (x+1)^2
        assert_eq!(irreducibility(&g).unwrap(), Irreducibility::Reducible);
        let fac = factor_with_hints(&g, &[], &mut rng()).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].1, 2);
    }

    #[test]
    fn first_irreducible_is_lexicographic() {
        let f2 = Field::prime(2).unwrap();
        assert_eq!(first_irreducible(&f2, 2).unwrap(), Poly::from_ints(&f2, &[1, 1, 1]));
        assert_eq!(first_irreducible(&f2, 3).unwrap(), Poly::from_ints(&f2, &[1, 1, 0, 1]));
        let f3 = Field::prime(3).unwrap();
        assert_eq!(first_irreducible(&f3, 2).unwrap(), Poly::from_ints(&f3, &[1, 0, 1]));
    }
}
