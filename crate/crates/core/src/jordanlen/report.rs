use serde_json::{json, Value};

use super::jordan::factor_charpoly;
use super::lengths::{eigenvalues, len_jordan_over, len_rank};
use crate::error::Result;
use crate::exactfield::ext::separability;
use crate::exactfield::factor::squarefree_decomposition;
use crate::exactfield::{elem_to_json, Elem, FieldKind, Poly};
use crate::matspace::{charpoly, Matrix};
use crate::rational::{q_ratio, q_to_json, Q};

/// Lengths and Jordan invariants of one invertible matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct LengthReport {
    pub n: usize,
    pub len_rank: Q,
    pub len_jordan: Q,
    pub iota1: Q,
    pub iota: Q,
    pub kappa: Q,
    pub alpha_star: Option<Elem>,
}

/// `(2 dim ker(A - a) - dim ker(A - a)^2) / n`: the fraction of size-one
/// Jordan blocks at `a`.
pub fn iota_alpha(a: &Matrix, alpha: &Elem) -> Result<Q> {
    let b = a.scalar_minus(alpha)?;
    let d1 = b.kernel_dim();
    if d1 == 0 {
        return Ok(q_ratio(0, 1));
    }
    let d2 = b.mul(&b)?.kernel_dim();
    Ok(q_ratio(2 * d1 - d2, a.rows()))
}

/// Max of `iota_alpha` over the given eigenvalues, zero for an empty list.
pub fn iota_over(a: &Matrix, eig: &[Elem]) -> Result<Q> {
    let mut best = q_ratio(0, 1);
    for alpha in eig {
        let v = iota_alpha(a, alpha)?;
        if v > best {
            best = v;
        }
    }
    Ok(best)
}

pub fn iota(a: &Matrix, hints: &[Poly]) -> Result<Q> {
    iota_over(a, &eigenvalues(a, hints)?)
}

/// Product of the distinct separable irreducible factors of the
/// characteristic polynomial.
pub fn separable_radical(a: &Matrix, hints: &[Poly]) -> Result<Poly> {
    let f = a.field();
    let chi = charpoly(a)?;
    if f.is_finite() {
        let parts = squarefree_decomposition(&chi)?;
        return Ok(parts.iter().fold(Poly::one(f), |acc, (g, _)| acc.mul(g)));
    }
    if matches!(f.kind(), FieldKind::Rationals) {
        return chi.div_exact(&chi.gcd(&chi.derivative()))?.expect("gcd divides").monic();
    }
    let mut g = Poly::one(f);
    for (h, _) in factor_charpoly(a, hints)?.factors {
        if separability(&h)?.separable {
            g = g.mul(&h);
        }
    }
    Ok(g)
}

/// `g(A)` by Horner's rule.
pub fn eval_at_matrix(g: &Poly, a: &Matrix) -> Result<Matrix> {
    let n = a.rows();
    let f = a.field();
    let mut acc = Matrix::zeros(f, n, n);
    for c in g.coeffs().iter().rev() {
        acc = acc.mul(a)?.add(&Matrix::scalar(f, n, c))?;
    }
    Ok(acc)
}

/// Sum of `iota_alpha` over all eigenvalues in a separable closure. With `g`
/// the separable radical, `dim ker g(A)` and `dim ker g(A)^2` add up the
/// per-root kernel dimensions.
pub fn kappa(a: &Matrix, hints: &[Poly]) -> Result<Q> {
    let g = separable_radical(a, hints)?;
    let ga = eval_at_matrix(&g, a)?;
    let d1 = ga.kernel_dim();
    let d2 = ga.mul(&ga)?.kernel_dim();
    Ok(q_ratio(2 * d1 - d2, a.rows()))
}

pub fn iota_report(a: &Matrix, hints: &[Poly]) -> Result<LengthReport> {
    let len_rank = len_rank(a)?;
    let eig = eigenvalues(a, hints)?;
    let (len_jordan, alpha_star) = len_jordan_over(a, &eig)?;
    Ok(LengthReport {
        n: a.rows(),
        len_rank,
        len_jordan,
        iota1: iota_alpha(a, &a.field().one())?,
        iota: iota_over(a, &eig)?,
        kappa: kappa(a, hints)?,
        alpha_star,
    })
}

impl LengthReport {
    /// Checks the two-sided bounds relating lengths to `iota`, and the
    /// orderings between the invariants. Returns the violated relations.
    pub fn violations(&self) -> Vec<&'static str> {
        let half = q_ratio(1, 2);
        let one = q_ratio(1, 1);
        let zero = q_ratio(0, 1);
        let mut out = Vec::new();
        let lower1 = &half * (&one - &self.iota1);
        let lower = &half * (&one - &self.iota);
        if self.len_rank < lower1 || self.len_rank > &one - &self.iota1 {
            out.push("rank length vs iota_1");
        }
        if self.len_jordan < lower || self.len_jordan > &one - &self.iota {
            out.push("Jordan length vs iota");
        }
        if !(zero <= self.len_jordan && self.len_jordan <= self.len_rank && self.len_rank <= one) {
            out.push("0 <= l_J <= l_r <= 1");
        }
        if !(self.iota1 <= self.iota && self.iota <= self.kappa && self.kappa <= one) {
            out.push("iota_1 <= iota <= kappa <= 1");
        }
        out
    }

    pub fn to_json(&self, field: &crate::exactfield::Field) -> Value {
        json!({
            "n": self.n,
            "len_rank": q_to_json(&self.len_rank),
            "len_jordan": q_to_json(&self.len_jordan),
            "iota1": q_to_json(&self.iota1),
            "iota": q_to_json(&self.iota),
            "kappa": q_to_json(&self.kappa),
            "alpha_star": self.alpha_star.as_ref().map(|a| elem_to_json(field, a)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{finite_field, Field};
    use crate::jordanlen::jordan::jordan_type;
    use crate::rational::q;
    use rand::{Rng, SeedableRng};

    #[test]
    fn identity_report() {
        let f = Field::prime(5).unwrap();
        let r = iota_report(&Matrix::identity(&f, 4), &[]).unwrap();
        assert_eq!((r.iota1.clone(), r.iota.clone(), r.kappa.clone()), (q(1, 1), q(1, 1), q(1, 1)));
        assert_eq!((r.len_rank.clone(), r.len_jordan.clone()), (q(0, 1), q(0, 1)));
        assert_eq!(r.alpha_star, Some(f.one()));
    }

    #[test]
    fn diag_one_two_over_f3() {
        let f = Field::prime(3).unwrap();
        let a = Matrix::diag(&f, &[f.from_int(1), f.from_int(2)]);
        let r = iota_report(&a, &[]).unwrap();
        assert_eq!(r.iota1, q(1, 2));
        assert_eq!(r.iota, q(1, 2));
        assert_eq!(r.len_jordan, q(1, 2));
        assert_eq!(r.kappa, q(1, 1));
        let sq = a.kron(&a).unwrap();
        assert!(iota(&sq, &[]).unwrap() <= q(1, 2));
    }

    #[test]
    fn kappa_counts_roots_outside_the_field() {
        // x^2 + x + 1 over F_2 has both roots in F_4, each with one size-one block.
        let f2 = Field::prime(2).unwrap();
        let c = Matrix::companion(&Poly::from_ints(&f2, &[1, 1, 1])).unwrap();
        let r = iota_report(&c, &[]).unwrap();
        assert_eq!(r.iota, q(0, 1));
        assert_eq!(r.kappa, q(1, 1));
        // Over Q, x^2 + 1 behaves the same way.
        let qf = Field::rationals();
        let c = Matrix::companion(&Poly::from_ints(&qf, &[1, 0, 1])).unwrap();
        assert_eq!(kappa(&c, &[]).unwrap(), q(1, 1));
    }

    #[test]
    fn inseparable_roots_do_not_count() {
        let f = Field::rational_functions(2).unwrap();
        let t = f.t().unwrap();
        let x2_t = Poly::new(&f, vec![f.neg(&t), f.zero(), f.one()]);
        let a = Matrix::companion(&x2_t).unwrap();
        let r = iota_report(&a, &[x2_t]).unwrap();
        assert_eq!(r.kappa, q(0, 1));
        assert_eq!(r.len_jordan, q(1, 1));
    }

    /// `iota_alpha` and `kappa` agree with block counts from the Jordan type.
    #[test]
    fn closed_forms_match_jordan_type() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let fields = [Field::prime(2).unwrap(), Field::prime(3).unwrap(), finite_field(2, 2).unwrap()];
        for f in &fields {
            for _ in 0..40 {
                let n = rng.gen_range(1..=5);
                // Mix in Jordan blocks so that nontrivial block structure appears.
                let s = rng.gen_range(1..=n);
                let j = Matrix::jordan_block(f, &f.random_nonzero(&mut rng), s);
                let rest = Matrix::random_invertible(f, n - s + 1, &mut rng);
                let a = j.direct_sum(&rest).unwrap();
                let p = Matrix::random_invertible(f, a.rows(), &mut rng);
                let a = p.mul(&a).unwrap().mul(&p.inverse().unwrap()).unwrap();
                let jt = jordan_type(&a, &[]).unwrap();
                let unit_blocks: usize = jt
                    .components
                    .iter()
                    .filter(|c| c.separability.separable)
                    .map(|c| c.separability.distinct_roots * c.unit_blocks())
                    .sum();
                assert_eq!(kappa(&a, &[]).unwrap(), q_ratio(unit_blocks, a.rows()));
                for c in jt.components.iter().filter(|c| c.factor.degree() == Some(1)) {
                    let alpha = f.neg(&c.factor.coeff(0));
                    assert_eq!(iota_alpha(&a, &alpha).unwrap(), q_ratio(c.unit_blocks(), a.rows()));
                }
                assert!(iota_report(&a, &[]).unwrap().violations().is_empty());
            }
        }
    }
}
