use std::fmt;

use num_bigint::BigUint;
use serde_json::Value;

use super::field::{Elem, Field};
use crate::error::{Error, Result};

/// Polynomial over a [`Field`], coefficients lowest degree first, with no
/// trailing zeros (the zero polynomial has no coefficients).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero(c) {
                continue;
            }
            let cs = self.field.fmt_elem(c);
            let cs = if cs.contains('+') || cs.contains('/') { format!("({cs})") } else { cs };
            terms.push(match (i, self.field.is_one(c)) {
                (0, _) => cs,
                (1, true) => "x".to_string(),
                (1, false) => format!("{cs}*x"),
                (_, true) => format!("x^{i}"),
                (_, false) => format!("{cs}*x^{i}"),
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl Poly {
    pub fn new(field: &Field, coeffs: Vec<Elem>) -> Poly {
        let mut p = Poly { field: field.clone(), coeffs };
        p.trim();
        p
    }

    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &Field, c: Elem, k: usize) -> Poly {
        let mut v = vec![field.zero(); k];
        v.push(c);
        Poly::new(field, v)
    }

    /// `x - a`.
    pub fn linear(field: &Field, a: &Elem) -> Poly {
        Poly::new(field, vec![field.neg(a), field.one()])
    }

    fn trim(&mut self) {
        while let Some(c) = self.coeffs.last() {
            if self.field.is_zero(c) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(|c| self.field.is_one(c))
    }

    pub fn lead(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => f.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|c| self.field.neg(c)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Elem) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|a| self.field.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn pow(&self, k: usize) -> Poly {
        let mut r = Poly::one(&self.field);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let f = &self.field;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv_lead = f.inv(d.lead().unwrap())?;
        let mut quo = vec![f.zero(); r.len() - dd];
        for k in (0..quo.len()).rev() {
            let c = f.mul(&r[k + dd], &inv_lead);
            if !f.is_zero(&c) {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] = f.sub(&r[k + j], &f.mul(&c, dj));
                }
            }
            quo[k] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(f, quo), Poly::new(f, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    /// Quotient when `d` divides `self`, `None` otherwise.
    pub fn div_exact(&self, d: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.divrem(d)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    pub fn monic(&self) -> Result<Poly> {
        let lead = self.lead().ok_or(Error::ZeroPolynomial)?;
        Ok(self.scale(&self.field.inv(lead)?))
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic().unwrap()
        }
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` the monic gcd.
    pub fn ext_gcd(&self, other: &Poly) -> Result<(Poly, Poly, Poly)> {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        let lead = r0.lead().ok_or(Error::ZeroPolynomial)?.clone();
        let li = f.inv(&lead)?;
        Ok((r0.scale(&li), s0.scale(&li), t0.scale(&li)))
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(i, c)| f.mul(c, &f.from_int(i as i64))).collect();
        Poly::new(f, coeffs)
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn mulmod(&self, other: &Poly, m: &Poly) -> Result<Poly> {
        self.mul(other).rem(m)
    }

    pub fn powmod(&self, e: &BigUint, m: &Poly) -> Result<Poly> {
        let mut result = Poly::one(&self.field).rem(m)?;
        let base = self.rem(m)?;
        for i in (0..e.bits()).rev() {
            result = result.mulmod(&result, m)?;
            if e.bit(i) {
                result = result.mulmod(&base, m)?;
            }
        }
        Ok(result)
    }

    /// If every exponent is a multiple of `p`, the polynomial `g` with
    /// `self = g(x^p)`.
    pub fn contract(&self, p: usize) -> Option<Poly> {
        if p < 2 {
            return None;
        }
        let f = &self.field;
        if self.coeffs.iter().enumerate().any(|(i, c)| i % p != 0 && !f.is_zero(c)) {
            return None;
        }
        Some(Poly::new(f, self.coeffs.iter().step_by(p).cloned().collect()))
    }

    /// `g(x^k)` for `g = self`.
    pub fn inflate(&self, k: usize) -> Poly {
        let f = &self.field;
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![f.zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        Poly::new(f, v)
    }

    /// Maps coefficients into another field.
    pub fn map(&self, target: &Field, mut g: impl FnMut(&Elem) -> Result<Elem>) -> Result<Poly> {
        let coeffs = self.coeffs.iter().map(&mut g).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(target, coeffs))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(|c| super::json::elem_to_json(&self.field, c)).collect())
    }

    pub fn from_json(field: &Field, v: &Value) -> Result<Poly> {
        let arr = v.as_array().ok_or_else(|| Error::Input("polynomial must be a coefficient array".into()))?;
        let coeffs = arr.iter().map(|c| super::json::elem_from_json(field, c)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(field, coeffs))
    }

    /// Deterministic ordering: by degree, then by coefficients from the top.
    pub fn sort_key(&self) -> (usize, Vec<super::field::SortKey>) {
        (self.coeffs.len(), self.coeffs.iter().rev().map(|c| self.field.sort_key(c)).collect())
    }
}
