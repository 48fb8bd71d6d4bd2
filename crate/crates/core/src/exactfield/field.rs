use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use super::fpoly::{self, FPoly};
use super::poly::Poly;
use crate::error::{Error, Result};

/// An exact field, cheap to clone. Elements are plain [`Elem`] values that are
/// only meaningful together with the field they were produced by.
#[derive(Clone)]
pub struct Field(Arc<FieldKind>);

#[derive(Debug)]
pub enum FieldKind {
    /// `F_p`.
    Prime(u64),
    /// `base[x]/(modulus)` with a monic irreducible modulus.
    Ext(ExtData),
    /// `Q`.
    Rationals,
    /// `F_p(t)`.
    RationalFunctions(u64),
}

#[derive(Debug)]
pub struct ExtData {
    pub base: Field,
    pub modulus: Poly,
    pub degree: usize,
}

/// Field element. Which variant appears is fixed by the field:
/// `Int` for `F_p`, `Coeffs` (length = degree) for extensions, `Rat` for `Q`
/// and `Fun` for `F_p(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Int(u64),
    Coeffs(Box<Vec<Elem>>),
    Rat(Box<BigRational>),
    Fun(Box<RatFun>),
}

/// Reduced quotient `num/den` of polynomials over `F_p`, `den` monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    pub num: FPoly,
    pub den: FPoly,
}

impl RatFun {
    pub fn normalized(num: FPoly, den: FPoly, p: u64) -> Result<RatFun> {
        let mut num = num;
        let mut den = den;
        fpoly::trim(&mut num);
        fpoly::trim(&mut den);
        if den.is_empty() {
            return Err(Error::DivisionByZero);
        }
        if num.is_empty() {
            return Ok(RatFun { num, den: vec![1] });
        }
        let g = fpoly::gcd(&num, &den, p);
        if g.len() > 1 {
            num = fpoly::divrem(&num, &g, p).0;
            den = fpoly::divrem(&den, &g, p).0;
        }
        let lead_inv = fpoly::invmod(*den.last().unwrap(), p).unwrap();
        Ok(RatFun { num: fpoly::scale(&num, lead_inv, p), den: fpoly::scale(&den, lead_inv, p) })
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.len() == 1
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (FieldKind::Prime(a), FieldKind::Prime(b)) => a == b,
            (FieldKind::Rationals, FieldKind::Rationals) => true,
            (FieldKind::RationalFunctions(a), FieldKind::RationalFunctions(b)) => a == b,
            (FieldKind::Ext(a), FieldKind::Ext(b)) => a.degree == b.degree && a.modulus == b.modulus,
            _ => false,
        }
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.characteristic().hash(state);
        self.degree().hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = fpoly::powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = fpoly::mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field(Arc::new(FieldKind::Prime(p))))
    }

    pub fn rationals() -> Field {
        Field(Arc::new(FieldKind::Rationals))
    }

    pub fn rational_functions(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field(Arc::new(FieldKind::RationalFunctions(p))))
    }

    /// `base[x]/(modulus)` without any irreducibility check. Use
    /// [`super::ext::ext_make`] for the checked constructor.
    pub(crate) fn ext_unchecked(base: &Field, modulus: Poly) -> Result<Field> {
        let modulus = modulus.monic()?;
        let degree = modulus.degree().ok_or(Error::ZeroPolynomial)?;
        if degree == 0 {
            return Err(Error::Input("extension modulus must have positive degree".into()));
        }
        Ok(Field(Arc::new(FieldKind::Ext(ExtData { base: base.clone(), modulus, degree }))))
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    pub fn name(&self) -> String {
        match self.kind() {
            FieldKind::Prime(p) => format!("F_{p}"),
            FieldKind::Rationals => "Q".into(),
            FieldKind::RationalFunctions(p) => format!("F_{p}(t)"),
            FieldKind::Ext(e) => match self.order() {
                Some(q) if matches!(e.base.kind(), FieldKind::Prime(_)) => format!("F_{q}"),
                _ => format!("{}[x]/({})", e.base.name(), e.modulus),
            },
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self.kind() {
            FieldKind::Prime(p) | FieldKind::RationalFunctions(p) => *p,
            FieldKind::Rationals => 0,
            FieldKind::Ext(e) => e.base.characteristic(),
        }
    }

    /// Degree over the immediate base (1 for non-extensions).
    pub fn degree(&self) -> usize {
        match self.kind() {
            FieldKind::Ext(e) => e.degree,
            _ => 1,
        }
    }

    pub fn base(&self) -> Option<&Field> {
        match self.kind() {
            FieldKind::Ext(e) => Some(&e.base),
            _ => None,
        }
    }

    pub fn modulus(&self) -> Option<&Poly> {
        match self.kind() {
            FieldKind::Ext(e) => Some(&e.modulus),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        match self.kind() {
            FieldKind::Prime(_) => true,
            FieldKind::Ext(e) => e.base.is_finite(),
            _ => false,
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self.kind(), FieldKind::Prime(_))
    }

    /// Number of elements for finite fields, if it fits in 128 bits.
    pub fn order(&self) -> Option<u128> {
        match self.kind() {
            FieldKind::Prime(p) => Some(*p as u128),
            FieldKind::Ext(e) => e.base.order()?.checked_pow(e.degree as u32),
            _ => None,
        }
    }

    pub fn order_big(&self) -> Option<BigUint> {
        match self.kind() {
            FieldKind::Prime(p) => Some(BigUint::from(*p)),
            FieldKind::Ext(e) => Some(num_traits::pow(e.base.order_big()?, e.degree)),
            _ => None,
        }
    }

    pub fn zero(&self) -> Elem {
        match self.kind() {
            FieldKind::Prime(_) => Elem::Int(0),
            FieldKind::Ext(e) => Elem::Coeffs(Box::new(vec![e.base.zero(); e.degree])),
            FieldKind::Rationals => Elem::Rat(Box::new(BigRational::zero())),
            FieldKind::RationalFunctions(_) => Elem::Fun(Box::new(RatFun { num: vec![], den: vec![1] })),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    /// Image of an integer.
    pub fn from_int(&self, n: i64) -> Elem {
        match self.kind() {
            FieldKind::Prime(p) => Elem::Int((n as i128).rem_euclid(*p as i128) as u64),
            FieldKind::Ext(e) => {
                let mut v = vec![e.base.zero(); e.degree];
                v[0] = e.base.from_int(n);
                Elem::Coeffs(Box::new(v))
            }
            FieldKind::Rationals => Elem::Rat(Box::new(BigRational::from_integer(BigInt::from(n)))),
            FieldKind::RationalFunctions(p) => {
                let c = (n as i128).rem_euclid(*p as i128) as u64;
                Elem::Fun(Box::new(RatFun { num: fpoly::constant(c, *p), den: vec![1] }))
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match self.kind() {
            FieldKind::Rationals => Elem::Rat(Box::new(BigRational::from_integer(n.clone()))),
            _ => {
                let c = self.characteristic();
                let r = (n % BigInt::from(c) + BigInt::from(c)) % BigInt::from(c);
                self.from_int(r.to_i64().unwrap())
            }
        }
    }

    pub fn rational(&self, x: &BigRational) -> Result<Elem> {
        match self.kind() {
            FieldKind::Rationals => Ok(Elem::Rat(Box::new(x.clone()))),
            _ => {
                let n = self.from_bigint(x.numer());
                let d = self.from_bigint(x.denom());
                self.div(&n, &d)
            }
        }
    }

    /// The variable `t` of `F_p(t)`.
    pub fn t(&self) -> Result<Elem> {
        match self.kind() {
            FieldKind::RationalFunctions(_) => Ok(Elem::Fun(Box::new(RatFun { num: vec![0, 1], den: vec![1] }))),
            _ => Err(Error::Input(format!("{} has no variable t", self.name()))),
        }
    }

    /// The class of `x` in an extension `base[x]/(f)`.
    pub fn generator(&self) -> Result<Elem> {
        match self.kind() {
            FieldKind::Ext(e) => {
                if e.degree == 1 {
                    // x = -f_0 in a degree-one extension.
                    return Ok(Elem::Coeffs(Box::new(vec![e.base.neg(&e.modulus.coeff(0))])));
                }
                let mut v = vec![e.base.zero(); e.degree];
                v[1] = e.base.one();
                Ok(Elem::Coeffs(Box::new(v)))
            }
            _ => Err(Error::Input(format!("{} is not an extension field", self.name()))),
        }
    }

    /// Embedding of a base-field element into an extension.
    pub fn embed_base(&self, a: &Elem) -> Result<Elem> {
        match self.kind() {
            FieldKind::Ext(e) => {
                let mut v = vec![e.base.zero(); e.degree];
                v[0] = a.clone();
                Ok(Elem::Coeffs(Box::new(v)))
            }
            _ => Err(Error::Input(format!("{} is not an extension field", self.name()))),
        }
    }

    /// Coefficients of an extension element over the base field.
    pub fn coeffs<'a>(&self, a: &'a Elem) -> &'a [Elem] {
        match a {
            Elem::Coeffs(v) => v,
            _ => panic!("element of {} is not a coefficient vector", self.name()),
        }
    }

    pub fn from_coeffs(&self, coeffs: Vec<Elem>) -> Result<Elem> {
        match self.kind() {
            FieldKind::Ext(e) => {
                let p = Poly::new(&e.base, coeffs);
                let r = p.rem(&e.modulus)?;
                let mut v = r.into_coeffs();
                v.resize(e.degree, e.base.zero());
                Ok(Elem::Coeffs(Box::new(v)))
            }
            _ => Err(Error::Input(format!("{} is not an extension field", self.name()))),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(x) => *x == 0,
            Elem::Coeffs(v) => {
                let base = self.base().expect("extension element");
                v.iter().all(|c| base.is_zero(c))
            }
            Elem::Rat(r) => r.is_zero(),
            Elem::Fun(f) => f.num.is_empty(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self.kind(), a, b) {
            (FieldKind::Prime(p), Elem::Int(x), Elem::Int(y)) => Elem::Int(fpoly::addmod(*x, *y, *p)),
            (FieldKind::Ext(e), Elem::Coeffs(x), Elem::Coeffs(y)) => {
                Elem::Coeffs(Box::new(x.iter().zip(y.iter()).map(|(u, v)| e.base.add(u, v)).collect()))
            }
            (FieldKind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(Box::new(&**x + &**y)),
            (FieldKind::RationalFunctions(p), Elem::Fun(x), Elem::Fun(y)) => {
                if x.num.is_empty() {
                    return b.clone();
                }
                if y.num.is_empty() {
                    return a.clone();
                }
                let (num, den) = if x.den == y.den {
                    (fpoly::add(&x.num, &y.num, *p), x.den.clone())
                } else {
                    let n1 = fpoly::mul(&x.num, &y.den, *p);
                    let n2 = fpoly::mul(&y.num, &x.den, *p);
                    (fpoly::add(&n1, &n2, *p), fpoly::mul(&x.den, &y.den, *p))
                };
                Elem::Fun(Box::new(RatFun::normalized(num, den, *p).unwrap()))
            }
            _ => panic!("element kind does not match field {}", self.name()),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self.kind(), a) {
            (FieldKind::Prime(p), Elem::Int(x)) => Elem::Int(fpoly::submod(0, *x, *p)),
            (FieldKind::Ext(e), Elem::Coeffs(x)) => Elem::Coeffs(Box::new(x.iter().map(|u| e.base.neg(u)).collect())),
            (FieldKind::Rationals, Elem::Rat(x)) => Elem::Rat(Box::new(-&**x)),
            (FieldKind::RationalFunctions(p), Elem::Fun(x)) => {
                Elem::Fun(Box::new(RatFun { num: fpoly::neg(&x.num, *p), den: x.den.clone() }))
            }
            _ => panic!("element kind does not match field {}", self.name()),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (self.kind(), a, b) {
            (FieldKind::Prime(p), Elem::Int(x), Elem::Int(y)) => Elem::Int(fpoly::submod(*x, *y, *p)),
            (FieldKind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(Box::new(&**x - &**y)),
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self.kind(), a, b) {
            (FieldKind::Prime(p), Elem::Int(x), Elem::Int(y)) => Elem::Int(fpoly::mulmod(*x, *y, *p)),
            (FieldKind::Ext(e), Elem::Coeffs(x), Elem::Coeffs(y)) => Elem::Coeffs(Box::new(ext_mul(e, x, y))),
            (FieldKind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(Box::new(&**x * &**y)),
            (FieldKind::RationalFunctions(p), Elem::Fun(x), Elem::Fun(y)) => {
                if x.num.is_empty() || y.num.is_empty() {
                    return self.zero();
                }
                let num = fpoly::mul(&x.num, &y.num, *p);
                let den = fpoly::mul(&x.den, &y.den, *p);
                Elem::Fun(Box::new(RatFun::normalized(num, den, *p).unwrap()))
            }
            _ => panic!("element kind does not match field {}", self.name()),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self.kind(), a) {
            (FieldKind::Prime(p), Elem::Int(x)) => Elem::Int(fpoly::invmod(*x, *p).unwrap()),
            (FieldKind::Ext(e), Elem::Coeffs(x)) => {
                let ap = Poly::new(&e.base, x.to_vec());
                let (g, s, _) = ap.ext_gcd(&e.modulus)?;
                if g.degree() != Some(0) {
                    return Err(Error::Reducible(format!("{} shares a factor with the modulus", ap)));
                }
                // g is monic, so g = 1 and s * a = 1 mod f.
                let mut v = s.rem(&e.modulus)?.into_coeffs();
                v.resize(e.degree, e.base.zero());
                Elem::Coeffs(Box::new(v))
            }
            (FieldKind::Rationals, Elem::Rat(x)) => Elem::Rat(Box::new(x.recip())),
            (FieldKind::RationalFunctions(p), Elem::Fun(x)) => {
                Elem::Fun(Box::new(RatFun::normalized(x.den.clone(), x.num.clone(), *p)?))
            }
            _ => panic!("element kind does not match field {}", self.name()),
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, e: &BigUint) -> Elem {
        let mut result = self.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = self.mul(&result, &result);
            if e.bit(i) {
                result = self.mul(&result, a);
            }
        }
        result
    }

    pub fn pow_u64(&self, a: &Elem, e: u64) -> Elem {
        self.pow(a, &BigUint::from(e))
    }

    /// Integer power, negative exponents allowed for nonzero `a`.
    pub fn pow_i64(&self, a: &Elem, e: i64) -> Result<Elem> {
        if e >= 0 {
            Ok(self.pow_u64(a, e as u64))
        } else {
            Ok(self.pow_u64(&self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// Position of an element in the fixed enumeration order of a finite field.
    pub fn elem_index(&self, a: &Elem) -> u128 {
        match (self.kind(), a) {
            (FieldKind::Prime(_), Elem::Int(x)) => *x as u128,
            (FieldKind::Ext(e), Elem::Coeffs(v)) => {
                let q = e.base.order().expect("finite base");
                v.iter().rev().fold(0u128, |acc, c| acc * q + e.base.elem_index(c))
            }
            _ => panic!("elem_index needs a finite field, got {}", self.name()),
        }
    }

    pub fn elem_from_index(&self, mut idx: u128) -> Elem {
        match self.kind() {
            FieldKind::Prime(p) => Elem::Int((idx % *p as u128) as u64),
            FieldKind::Ext(e) => {
                let q = e.base.order().expect("finite base");
                let mut v = Vec::with_capacity(e.degree);
                for _ in 0..e.degree {
                    v.push(e.base.elem_from_index(idx % q));
                    idx /= q;
                }
                Elem::Coeffs(Box::new(v))
            }
            _ => panic!("elem_from_index needs a finite field, got {}", self.name()),
        }
    }

    /// All elements of a finite field in enumeration order (zero first).
    pub fn elements(&self) -> Result<Vec<Elem>> {
        let q = self.order().ok_or(Error::NotFinite)?;
        if q > 1 << 24 {
            return Err(Error::Input(format!("refusing to enumerate {} elements", q)));
        }
        Ok((0..q).map(|i| self.elem_from_index(i)).collect())
    }

    /// Nonzero elements of a finite field in enumeration order.
    pub fn units(&self) -> Result<Vec<Elem>> {
        Ok(self.elements()?.into_iter().skip(1).collect())
    }

    /// Seeded random element. For infinite fields a small-height element.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match self.kind() {
            FieldKind::Prime(p) => Elem::Int(rng.gen_range(0..*p)),
            FieldKind::Ext(e) => Elem::Coeffs(Box::new((0..e.degree).map(|_| e.base.random(rng)).collect())),
            FieldKind::Rationals => {
                let n: i64 = rng.gen_range(-6..=6);
                let d: i64 = rng.gen_range(1..=3);
                Elem::Rat(Box::new(BigRational::new(n.into(), d.into())))
            }
            FieldKind::RationalFunctions(p) => {
                let dn = rng.gen_range(0..=2);
                let dd = rng.gen_range(0..=1);
                let num: FPoly = (0..=dn).map(|_| rng.gen_range(0..*p)).collect();
                let mut den: FPoly = (0..dd).map(|_| rng.gen_range(0..*p)).collect();
                den.push(1);
                Elem::Fun(Box::new(RatFun::normalized(num, den, *p).unwrap()))
            }
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        loop {
            let a = self.random(rng);
            if !self.is_zero(&a) {
                return a;
            }
        }
    }

    /// The `p`-th root in a finite field of characteristic `p`.
    pub fn pth_root(&self, a: &Elem) -> Result<Elem> {
        let q = self.order_big().ok_or(Error::NotFinite)?;
        Ok(self.pow(a, &(q / BigUint::from(self.characteristic()))))
    }

    /// Rational value of an element of `Q`.
    pub fn as_rational<'a>(&self, a: &'a Elem) -> Option<&'a BigRational> {
        match a {
            Elem::Rat(r) => Some(r),
            _ => None,
        }
    }

    /// Compact human-readable rendering.
    pub fn fmt_elem(&self, a: &Elem) -> String {
        match a {
            Elem::Int(x) => x.to_string(),
            Elem::Rat(r) => crate::rational::fmt_q(r),
            Elem::Fun(f) => {
                let p = fmt_fpoly(&f.num, "t");
                if f.is_polynomial() {
                    p
                } else {
                    format!("({})/({})", p, fmt_fpoly(&f.den, "t"))
                }
            }
            Elem::Coeffs(v) => {
                let base = self.base().unwrap();
                let terms: Vec<String> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !base.is_zero(c))
                    .map(|(i, c)| match i {
                        0 => base.fmt_elem(c),
                        1 => format!("{}*a", paren(&base.fmt_elem(c))),
                        _ => format!("{}*a^{}", paren(&base.fmt_elem(c)), i),
                    })
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            }
        }
    }

    /// Checks that `a` is a canonical element of this field.
    pub fn validate(&self, a: &Elem) -> bool {
        match (self.kind(), a) {
            (FieldKind::Prime(p), Elem::Int(x)) => x < p,
            (FieldKind::Ext(e), Elem::Coeffs(v)) => v.len() == e.degree && v.iter().all(|c| e.base.validate(c)),
            (FieldKind::Rationals, Elem::Rat(_)) => true,
            (FieldKind::RationalFunctions(p), Elem::Fun(f)) => {
                f.den.last() == Some(&1)
                    && f.num.last() != Some(&0)
                    && f.num.iter().chain(f.den.iter()).all(|c| c < p)
                    && fpoly::gcd(&f.num, &f.den, *p).len() <= 1
            }
            _ => false,
        }
    }

    /// Sort key that gives a deterministic total order on elements.
    pub fn sort_key(&self, a: &Elem) -> SortKey {
        match a {
            Elem::Int(x) => SortKey::Int(*x as u128),
            Elem::Coeffs(_) if self.is_finite() => SortKey::Int(self.elem_index(a)),
            Elem::Coeffs(v) => {
                let base = self.base().unwrap();
                SortKey::List(v.iter().rev().map(|c| base.sort_key(c)).collect())
            }
            Elem::Rat(r) => SortKey::Rat((**r).clone()),
            Elem::Fun(f) => SortKey::Fun(f.den.len(), f.den.clone(), f.num.len(), f.num.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SortKey {
    Int(u128),
    Rat(BigRational),
    Fun(usize, FPoly, usize, FPoly),
    List(Vec<SortKey>),
}

fn paren(s: &str) -> String {
    if s.contains('+') || s.contains('/') || s.starts_with('-') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

pub(crate) fn fmt_fpoly(a: &[u64], var: &str) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let terms: Vec<String> = a
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, _) => c.to_string(),
            (1, 1) => var.to_string(),
            (1, _) => format!("{c}{var}"),
            (_, 1) => format!("{var}^{i}"),
            _ => format!("{c}{var}^{i}"),
        })
        .collect();
    terms.join("+")
}

fn ext_mul(e: &ExtData, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
    let d = e.degree;
    let base = &e.base;
    let mut prod = vec![base.zero(); 2 * d - 1];
    for (i, a) in x.iter().enumerate() {
        if base.is_zero(a) {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if base.is_zero(b) {
                continue;
            }
            prod[i + j] = base.add(&prod[i + j], &base.mul(a, b));
        }
    }
    let m = e.modulus.coeffs();
    for k in (d..2 * d - 1).rev() {
        let c = prod[k].clone();
        if base.is_zero(&c) {
            continue;
        }
        for j in 0..d {
            prod[k - d + j] = base.sub(&prod[k - d + j], &base.mul(&c, &m[j]));
        }
    }
    prod.truncate(d);
    prod
}

/// Sign-aware helper used by parsers: reduces a signed integer into `F_p`.
pub(crate) fn reduce_signed(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((n % &m) + &m) % &m;
    if r.is_negative() {
        unreachable!()
    }
    r.to_u64().unwrap()
}

impl Elem {
    pub fn as_int(&self) -> Option<u64> {
        match self {
            Elem::Int(x) => Some(*x),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn f4() -> Field {
        let f2 = Field::prime(2).unwrap();
        Field::ext_unchecked(&f2, Poly::from_ints(&f2, &[1, 1, 1])).unwrap()
    }

    #[test]
    fn prime_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_int(3);
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), f.one());
        assert_eq!(f.from_int(-1), Elem::Int(6));
        assert!(Field::prime(9).is_err());
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    #[test]
    fn f4_is_a_field() {
        let f = f4();
        assert_eq!(f.order(), Some(4));
        let els = f.elements().unwrap();
        for a in &els[1..] {
            let ai = f.inv(a).unwrap();
            assert_eq!(f.mul(a, &ai), f.one());
            // a^3 = 1 in F_4^x
            assert_eq!(f.pow_u64(a, 3), f.one());
        }
        for (i, a) in els.iter().enumerate() {
            assert_eq!(f.elem_index(a), i as u128);
        }
    }

    #[test]
    fn rational_functions() {
        let f = Field::rational_functions(3).unwrap();
        let t = f.t().unwrap();
        let one = f.one();
        let a = f.div(&one, &f.add(&t, &one)).unwrap(); // 1/(t+1)
        let b = f.mul(&a, &f.add(&t, &one));
        assert_eq!(b, one);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = f.random(&mut rng);
            let y = f.random_nonzero(&mut rng);
            assert!(f.validate(&x));
            let z = f.div(&x, &y).unwrap();
            assert_eq!(f.mul(&z, &y), x);
        }
    }

    #[test]
    fn nested_extension() {
        // F_16 = F_4[y]/(y^2 + y + a) where a generates F_4.
        let f4 = f4();
        let a = f4.generator().unwrap();
        let m = Poly::new(&f4, vec![a, f4.one(), f4.one()]);
        let f16 = Field::ext_unchecked(&f4, m).unwrap();
        assert_eq!(f16.order(), Some(16));
        let g = f16.generator().unwrap();
        let mut x = f16.one();
        let mut seen = std::collections::HashSet::new();
        for _ in 0..15 {
            x = f16.mul(&x, &g);
            seen.insert(f16.elem_index(&x));
        }
        // every element satisfies x^16 = x
        for e in f16.elements().unwrap() {
            assert_eq!(f16.pow_u64(&e, 16), e);
        }
        assert!(seen.len() >= 5);
    }
}
