use serde::Serialize;

use super::factor::{first_irreducible, irreducibility, Irreducibility};
use super::field::{Elem, Field};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Separability data of an irreducible polynomial `f`. In characteristic `p`,
/// `f = g(x^{p^k})` with `g` separable; `insep_degree = p^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Separability {
    /// `gcd(f, f') = 1`.
    pub separable: bool,
    pub insep_degree: u64,
    /// Number of distinct roots in an algebraic closure, `deg f / p^k`.
    pub distinct_roots: usize,
}

/// `L = K[x]/(f)` with its embedding of `K` and the designated root `x`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub base: Field,
    pub field: Field,
    pub root: Elem,
    pub degree: usize,
    pub separability: Separability,
}

impl Extension {
    /// Embedding `K -> L`.
    pub fn embed(&self, a: &Elem) -> Result<Elem> {
        if self.degree == 1 {
            Ok(a.clone())
        } else {
            self.field.embed_base(a)
        }
    }
}

pub fn separability(f: &Poly) -> Result<Separability> {
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    let p = f.field().characteristic();
    let separable = f.gcd(&f.derivative()).degree() == Some(0);
    let mut g = f.clone();
    let mut insep: u64 = 1;
    if p != 0 {
        while g.degree().unwrap_or(0) > 0 && g.derivative().is_zero() {
            g = g.contract(p as usize).expect("vanishing derivative means a polynomial in x^p");
            insep *= p;
        }
    }
    Ok(Separability { separable, insep_degree: insep, distinct_roots: n / insep as usize })
}

/// Builds `K[x]/(f)` for a monic irreducible `f`.
///
/// Irreducibility is checked where a decision procedure exists (finite fields,
/// degree at most 3 over `Q`, constant-coefficient and Eisenstein polynomials
/// over `F_p(t)`) and trusted otherwise. A degree-one `f` returns `K` itself
/// with root `-f(0)`.
pub fn ext_make(base: &Field, f: &Poly) -> Result<Extension> {
    if f.field() != base {
        return Err(Error::FieldMismatch(format!("modulus is over {}, not {}", f.field(), base)));
    }
    let f = f.monic()?;
    let degree = f.degree().unwrap();
    if degree == 0 {
        return Err(Error::Input("extension modulus must have positive degree".into()));
    }
    if irreducibility(&f)? == Irreducibility::Reducible {
        return Err(Error::Reducible(f.to_string()));
    }
    let separability = separability(&f)?;
    if degree == 1 {
        return Ok(Extension {
            base: base.clone(),
            field: base.clone(),
            root: base.neg(&f.coeff(0)),
            degree,
            separability,
        });
    }
    let field = Field::ext_unchecked(base, f)?;
    let root = field.generator()?;
    Ok(Extension { base: base.clone(), field, root, degree, separability })
}

/// `F_{p^m}` built from the lexicographically first irreducible polynomial of
/// degree `m` over `F_p`. For `m = 1` this is `F_p` itself.
pub fn finite_field(p: u64, m: usize) -> Result<Field> {
    let fp = Field::prime(p)?;
    if m <= 1 {
        return Ok(fp);
    }
    let f = first_irreducible(&fp, m)?;
    Field::ext_unchecked(&fp, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one_over_q() {
        let qf = Field::rationals();
        let e = ext_make(&qf, &Poly::from_ints(&qf, &[-5, 1])).unwrap();
        assert_eq!(e.field, qf);
        assert_eq!(e.root, qf.from_int(5));
        assert!(e.separability.separable);
    }

    #[test]
    fn inseparable_over_f2_t() {
        let ft = Field::rational_functions(2).unwrap();
        let t = ft.t().unwrap();
        let f = Poly::new(&ft, vec![ft.neg(&t), ft.zero(), ft.one()]);
        let e = ext_make(&ft, &f).unwrap();
        assert!(!e.separability.separable);
        assert_eq!(e.separability.insep_degree, 2);
        assert_eq!(e.separability.distinct_roots, 1);
        let r = &e.root;
        // root^2 = t
        assert_eq!(e.field.mul(r, r), e.embed(&t).unwrap());
    }

    #[test]
    fn f9_from_x2_plus_1() {
        let f3 = Field::prime(3).unwrap();
        let e = ext_make(&f3, &Poly::from_ints(&f3, &[1, 0, 1])).unwrap();
        assert_eq!(e.field.order(), Some(9));
        let r2 = e.field.mul(&e.root, &e.root);
        assert_eq!(r2, e.field.from_int(-1));
        assert!(matches!(
            ext_make(&Field::prime(5).unwrap(), &Poly::from_ints(&Field::prime(5).unwrap(), &[1, 0, 1])),
            Err(Error::Reducible(_))
        ));
    }

    #[test]
    fn finite_field_orders() {
        assert_eq!(finite_field(2, 3).unwrap().order(), Some(8));
        assert_eq!(finite_field(3, 1).unwrap().order(), Some(3));
    }
}
