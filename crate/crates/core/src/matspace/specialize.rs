use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::exactfield::field::RatFun;
use crate::exactfield::fpoly::FPoly;
use crate::exactfield::{finite_field, Elem, Field, FieldKind, Poly};

/// Largest extension degree tried before giving up.
const MAX_DEGREE: usize = 64;

/// Result of substituting `t -> c` into a matrix over `F_p(t)`.
#[derive(Clone, Debug)]
pub struct Specialization {
    pub matrix: Matrix,
    pub target: Field,
    pub point: Elem,
}

fn fun_parts<'a>(field: &Field, e: &'a Elem) -> Result<&'a RatFun> {
    match e {
        Elem::Fun(r) => Ok(r),
        _ => Err(Error::FieldMismatch(format!("expected an element of {field}"))),
    }
}

fn eval_fpoly(target: &Field, a: &[u64], c: &Elem) -> Elem {
    let mut acc = target.zero();
    for &k in a.iter().rev() {
        acc = target.add(&target.mul(&acc, c), &target.from_int(k as i64));
    }
    acc
}

fn as_fpoly(poly: &Poly) -> Result<FPoly> {
    poly.coeffs()
        .iter()
        .map(|e| e.as_int().ok_or_else(|| Error::FieldMismatch("avoid-list polynomials must be over F_p".into())))
        .collect()
}

/// Image of a rational function under `t -> c`. Fails if `c` is a pole.
pub fn specialize_elem(field: &Field, e: &Elem, target: &Field, c: &Elem) -> Result<Elem> {
    let r = fun_parts(field, e)?;
    let den = eval_fpoly(target, &r.den, c);
    target.div(&eval_fpoly(target, &r.num, c), &den)
}

/// Denominators of all entries, as polynomials over `F_p`.
pub fn denominators(a: &Matrix) -> Result<Vec<Poly>> {
    let fp = Field::prime(a.field().characteristic())?;
    let mut out: Vec<Poly> = Vec::new();
    for e in a.data() {
        let r = fun_parts(a.field(), e)?;
        if !r.is_polynomial() {
            let d = Poly::new(&fp, r.den.iter().map(|&x| Elem::Int(x)).collect());
            if !out.contains(&d) {
                out.push(d);
            }
        }
    }
    Ok(out)
}

/// First point of `F_{p^m}`, in index order, at which no polynomial in
/// `avoid` vanishes. Escalates `m` when every point is a root.
pub fn choose_point(p: u64, avoid: &[Poly], m: usize) -> Result<(Field, Elem)> {
    let polys: Vec<FPoly> = avoid.iter().map(as_fpoly).collect::<Result<_>>()?;
    if polys.iter().any(|f| f.is_empty()) {
        return Err(Error::ZeroPolynomial);
    }
    let mut m = m.max(1);
    while m <= MAX_DEGREE {
        let target = finite_field(p, m)?;
        let q = target.order().unwrap();
        // The total degree bounds the number of bad points; skip hopeless fields.
        let bad: usize = polys.iter().map(|f| f.len() - 1).sum();
        if (bad as u128) < q || q <= 1 << 16 {
            for idx in 0..q {
                let c = target.elem_from_index(idx);
                if polys.iter().all(|f| !target.is_zero(&eval_fpoly(&target, f, &c))) {
                    return Ok((target, c));
                }
            }
        }
        m += 1;
    }
    Err(Error::SearchExhausted(format!("no admissible point in F_{p}^m for m <= {MAX_DEGREE}")))
}

/// Substitutes `t -> c` for the first admissible `c in F_{p^m}`. The
/// denominators of `a` are always added to `avoid`.
pub fn specialize_matrix(a: &Matrix, avoid: &[Poly], m: usize) -> Result<Specialization> {
    let p = match a.field().kind() {
        FieldKind::RationalFunctions(p) => *p,
        _ => return Err(Error::FieldMismatch(format!("cannot specialize a matrix over {}", a.field()))),
    };
    let mut all = avoid.to_vec();
    all.extend(denominators(a)?);
    let (target, point) = choose_point(p, &all, m)?;
    let matrix = specialize_with(a, &target, &point)?;
    Ok(Specialization { matrix, target, point })
}

/// Substitutes a given point.
pub fn specialize_with(a: &Matrix, target: &Field, c: &Elem) -> Result<Matrix> {
    let src = a.field().clone();
    a.map(target, |e| specialize_elem(&src, e, target, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::field::RatFun;

    fn fun(p: u64, num: &[u64], den: &[u64]) -> Elem {
        Elem::Fun(Box::new(RatFun::normalized(num.to_vec(), den.to_vec(), p).unwrap()))
    }

    #[test]
    fn diag_t_one_avoiding_zero_and_one() {
        let f = Field::rational_functions(2).unwrap();
        let a = Matrix::diag(&f, &[f.t().unwrap(), f.one()]);
        let fp = Field::prime(2).unwrap();
        let avoid = vec![Poly::from_ints(&fp, &[0, 1]), Poly::from_ints(&fp, &[1, 1])];
        let s = specialize_matrix(&a, &avoid, 1).unwrap();
        assert_eq!(s.target.order(), Some(4));
        assert!(!s.target.is_zero(&s.point) && !s.target.is_one(&s.point));
        assert_eq!(s.matrix.one_minus().unwrap().rank(), 1);
    }

    #[test]
    fn constant_matrix_takes_zero() {
        let f = Field::rational_functions(3).unwrap();
        let a = Matrix::from_ints(&f, &[&[1, 2], &[0, 1]]);
        let s = specialize_matrix(&a, &[], 1).unwrap();
        assert!(s.target.is_zero(&s.point));
        assert_eq!(s.matrix, Matrix::from_ints(&s.target, &[&[1, 2], &[0, 1]]));
    }

    #[test]
    fn poles_are_avoided() {
        let f = Field::rational_functions(2).unwrap();
        // 1/(t^2 + t) has poles at 0 and 1.
        let a = Matrix::new(&f, 1, 1, vec![fun(2, &[1], &[0, 1, 1])]).unwrap();
        let s = specialize_matrix(&a, &[], 1).unwrap();
        assert_eq!(s.target.order(), Some(4));
        assert!(s.matrix.is_invertible());
    }

    #[test]
    fn zero_in_avoid_list_is_rejected() {
        let fp = Field::prime(2).unwrap();
        assert!(matches!(choose_point(2, &[Poly::zero(&fp)], 1), Err(Error::ZeroPolynomial)));
    }
}
