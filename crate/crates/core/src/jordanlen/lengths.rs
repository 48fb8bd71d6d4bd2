use crate::error::{Error, Result};
use crate::exactfield::{roots_in_field, Elem, Poly};
use crate::matspace::{charpoly, Matrix, Permutation};
use crate::rational::{q_ratio, Q};

/// Finite fields up to this order find eigenvalues by testing every unit.
const ENUMERATE_BELOW: u128 = 64;

fn check_group_element(a: &Matrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::Shape(format!("{}x{} matrix is not square", a.rows(), a.cols())));
    }
    if !a.is_invertible() {
        return Err(Error::Singular);
    }
    Ok(())
}

/// `rank(1 - A) / n`.
pub fn len_rank(a: &Matrix) -> Result<Q> {
    check_group_element(a)?;
    Ok(q_ratio(a.one_minus()?.rank(), a.rows()))
}

/// Nonzero eigenvalues of `A` lying in its field, sorted by the field's
/// element order. Multiplicities are not reported.
pub fn eigenvalues(a: &Matrix, hints: &[Poly]) -> Result<Vec<Elem>> {
    let f = a.field();
    if f.order().is_some_and(|q| q <= ENUMERATE_BELOW) {
        let n = a.rows();
        let mut out = Vec::new();
        for alpha in f.units()? {
            if a.scalar_minus(&alpha)?.rank() < n {
                out.push(alpha);
            }
        }
        return Ok(out);
    }
    let chi = charpoly(a)?;
    Ok(roots_in_field(&chi, hints)?.into_iter().map(|(r, _)| r).filter(|r| !f.is_zero(r)).collect())
}

/// `min over alpha in K^x of rank(alpha - A) / n`, with the first minimizing
/// eigenvalue, or `(1, None)` when `A` has no eigenvalue in `K`.
pub fn len_jordan(a: &Matrix, hints: &[Poly]) -> Result<(Q, Option<Elem>)> {
    check_group_element(a)?;
    let eig = eigenvalues(a, hints)?;
    len_jordan_over(a, &eig)
}

/// As [`len_jordan`] with a known eigenvalue list.
pub(crate) fn len_jordan_over(a: &Matrix, eig: &[Elem]) -> Result<(Q, Option<Elem>)> {
    let n = a.rows();
    let mut best: Option<(usize, Elem)> = None;
    for alpha in eig {
        let r = a.scalar_minus(alpha)?.rank();
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, alpha.clone()));
        }
    }
    Ok(match best {
        Some((r, alpha)) => (q_ratio(r, n), Some(alpha)),
        None => (q_ratio(1, 1), None),
    })
}

/// Fraction of moved points.
pub fn len_hamming(pi: &Permutation) -> Q {
    if pi.is_empty() {
        return q_ratio(0, 1);
    }
    q_ratio(pi.moved_points(), pi.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Field;
    use crate::matspace::perm_matrix;
    use crate::rational::q;
    use rand::SeedableRng;

    #[test]
    fn rank_length_examples() {
        let qf = Field::rationals();
        let one = qf.one();
        let a = Matrix::jordan_block(&qf, &one, 2).direct_sum(&Matrix::identity(&qf, 2)).unwrap();
        assert_eq!(len_rank(&a).unwrap(), q(1, 4));
        let f5 = Field::prime(5).unwrap();
        assert_eq!(len_rank(&Matrix::scalar(&f5, 3, &f5.from_int(2))).unwrap(), q(1, 1));
        assert_eq!(len_rank(&Matrix::identity(&f5, 3)).unwrap(), q(0, 1));
        assert!(matches!(len_rank(&Matrix::zeros(&f5, 2, 2)), Err(Error::Singular)));
    }

    #[test]
    fn jordan_length_examples() {
        let f3 = Field::prime(3).unwrap();
        let a = Matrix::diag(&f3, &[f3.from_int(1), f3.from_int(2)]);
        let (l, alpha) = len_jordan(&a, &[]).unwrap();
        assert_eq!(l, q(1, 2));
        assert_eq!(alpha, Some(f3.one()));
        let f2 = Field::prime(2).unwrap();
        let c = Matrix::companion(&Poly::from_ints(&f2, &[1, 1, 1])).unwrap();
        assert_eq!(len_jordan(&c, &[]).unwrap(), (q(1, 1), None));
        assert_eq!(len_rank(&c).unwrap(), q(1, 1));
    }

    #[test]
    fn enumeration_and_roots_agree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let f7 = Field::prime(7).unwrap();
        for _ in 0..50 {
            let a = Matrix::random_invertible(&f7, 4, &mut rng);
            let chi = charpoly(&a).unwrap();
            let by_roots: Vec<Elem> = roots_in_field(&chi, &[]).unwrap().into_iter().map(|(r, _)| r).collect();
            assert_eq!(eigenvalues(&a, &[]).unwrap(), by_roots);
        }
    }

    #[test]
    fn hamming_examples() {
        let f = Field::rationals();
        let t = Permutation::new(vec![1, 0, 2, 3, 4]).unwrap();
        assert_eq!(len_hamming(&t), q(2, 5));
        let c = Permutation::new(vec![1, 2, 3, 4, 0]).unwrap();
        assert_eq!(len_hamming(&c), q(1, 1));
        assert_eq!(len_rank(&perm_matrix(&f, &c)).unwrap(), q(4, 5));
        assert_eq!(len_hamming(&Permutation::identity(4)), q(0, 1));
    }
}
