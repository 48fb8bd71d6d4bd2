use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactfield::ext::separability;
use crate::exactfield::{ext_make, factor_with_hints, Factorization, Poly, Separability};
use crate::matspace::{charpoly, Matrix};

const FACTOR_SEED: u64 = 0x6a6f_7264;

/// Jordan data attached to one irreducible factor of the characteristic
/// polynomial. `blocks` are the block sizes at one root, largest first; every
/// root of the factor carries the same multiset.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanComponent {
    pub factor: Poly,
    pub multiplicity: usize,
    pub separability: Separability,
    pub blocks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JordanType {
    pub n: usize,
    pub components: Vec<JordanComponent>,
}

impl JordanComponent {
    /// Number of size-one blocks at each root.
    pub fn unit_blocks(&self) -> usize {
        self.blocks.iter().filter(|&&s| s == 1).count()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "factor": self.factor.to_json(),
            "multiplicity": self.multiplicity,
            "separability": self.separability,
            "blocks": self.blocks,
        })
    }
}

impl JordanType {
    /// Total block count over all roots in an algebraic closure.
    pub fn block_count(&self) -> usize {
        self.components.iter().map(|c| c.separability.distinct_roots * c.blocks.len()).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({"n": self.n, "components": self.components.iter().map(JordanComponent::to_json).collect::<Vec<_>>()})
    }
}

/// Factorization of the characteristic polynomial, using `hints` where the
/// field has no complete factoring algorithm.
pub fn factor_charpoly(a: &Matrix, hints: &[Poly]) -> Result<Factorization> {
    let chi = charpoly(a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(FACTOR_SEED);
    factor_with_hints(&chi, hints, &mut rng)
}

/// Block sizes from kernel dimensions `d[j] = dim ker B^j`, `d[0] = 0`.
pub fn blocks_from_kernel_dims(d: &[usize]) -> Vec<usize> {
    let ge: Vec<usize> = d.windows(2).map(|w| w[1] - w[0]).collect();
    let mut blocks = Vec::new();
    for (j, &g) in ge.iter().enumerate().rev() {
        let next = ge.get(j + 1).copied().unwrap_or(0);
        blocks.extend(std::iter::repeat_n(j + 1, g - next));
    }
    blocks
}

pub fn jordan_type(a: &Matrix, hints: &[Poly]) -> Result<JordanType> {
    if !a.is_square() {
        return Err(Error::Shape("Jordan type of a non-square matrix".into()));
    }
    let n = a.rows();
    let fact = factor_charpoly(a, hints)?;
    let mut components = Vec::with_capacity(fact.factors.len());
    for (f, e) in fact.factors {
        let ext = ext_make(a.field(), &f)?;
        let sep = separability(&f)?;
        let al = a.map(&ext.field, |x| ext.embed(x))?;
        let b = al.scalar_minus(&ext.root)?;
        let target = e * sep.insep_degree as usize;
        let mut d = vec![0usize];
        let mut power = b.clone();
        loop {
            let k = power.kernel_dim();
            if k == *d.last().unwrap() {
                return Err(Error::Inconsistent(format!("kernel dimensions stalled below {target} for {f}")));
            }
            d.push(k);
            if k >= target {
                break;
            }
            power = power.mul(&b)?;
        }
        if *d.last().unwrap() != target {
            return Err(Error::Inconsistent(format!("generalized eigenspace of {f} has the wrong dimension")));
        }
        components.push(JordanComponent {
            factor: f,
            multiplicity: e,
            separability: sep,
            blocks: blocks_from_kernel_dims(&d),
        });
    }
    Ok(JordanType { n, components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Field;

    #[test]
    fn identity_over_q() {
        let qf = Field::rationals();
        let jt = jordan_type(&Matrix::identity(&qf, 3), &[]).unwrap();
        assert_eq!(jt.components.len(), 1);
        assert_eq!(jt.components[0].factor, Poly::from_ints(&qf, &[-1, 1]));
        assert_eq!(jt.components[0].blocks, vec![1, 1, 1]);
    }

    #[test]
    fn tensor_of_two_size_two_blocks() {
        let qf = Field::rationals();
        let j = Matrix::jordan_block(&qf, &qf.one(), 2);
        let jt = jordan_type(&j.kron(&j).unwrap(), &[]).unwrap();
        assert_eq!(jt.components[0].blocks, vec![3, 1]);
    }

    #[test]
    fn inseparable_companion() {
        let f = Field::rational_functions(2).unwrap();
        let t = f.t().unwrap();
        let x2_t = Poly::new(&f, vec![f.neg(&t), f.zero(), f.one()]);
        let a = Matrix::companion(&x2_t).unwrap();
        let jt = jordan_type(&a, std::slice::from_ref(&x2_t)).unwrap();
        assert_eq!(jt.components.len(), 1);
        let c = &jt.components[0];
        assert!(!c.separability.separable);
        assert_eq!(c.separability.insep_degree, 2);
        assert_eq!(c.blocks, vec![2]);
    }

    #[test]
    fn irreducible_quadratic_over_f2() {
        let f2 = Field::prime(2).unwrap();
        let a = Matrix::companion(&Poly::from_ints(&f2, &[1, 1, 1])).unwrap();
        let jt = jordan_type(&a.direct_sum(&a).unwrap(), &[]).unwrap();
        assert_eq!(jt.components[0].separability.distinct_roots, 2);
        assert_eq!(jt.components[0].blocks, vec![1, 1]);
        assert_eq!(jt.block_count(), 4);
    }

    #[test]
    fn kernel_dims_to_blocks() {
        assert_eq!(blocks_from_kernel_dims(&[0, 2, 3, 4]), vec![3, 1]);
        assert_eq!(blocks_from_kernel_dims(&[0, 3]), vec![1, 1, 1]);
    }
}
