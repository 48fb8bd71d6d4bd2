use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::Value;

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::exactfield::Field;

/// Permutation of `{0, ..., n-1}`; `images[i] = pi(i)`. The JSON form is
/// one-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::Input(format!("{images:?} is not a permutation")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation { images: (0..n).collect() }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(rng);
        Permutation { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// Conjugate `tau * self * tau^{-1}`.
    pub fn conjugate_by(&self, tau: &Permutation) -> Permutation {
        tau.compose(self).compose(&tau.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &x)| *i == x).count()
    }

    pub fn moved_points(&self) -> usize {
        self.len() - self.fixed_points()
    }

    /// Cycles including fixed points, each starting at its smallest element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.images[x];
            }
            out.push(cyc);
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.images.iter().map(|&x| Value::from(x + 1)).collect())
    }

    pub fn from_json(v: &Value) -> Result<Permutation> {
        let arr = v.as_array().ok_or_else(|| Error::Input("permutation must be an array".into()))?;
        let images = arr
            .iter()
            .map(|x| {
                x.as_u64()
                    .filter(|&k| k >= 1)
                    .map(|k| k as usize - 1)
                    .ok_or_else(|| Error::Input(format!("bad permutation entry {x}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(images)
    }
}

/// Permutation matrix with `(P)_{pi(i), i} = 1`, so `P e_i = e_{pi(i)}`.
pub fn perm_matrix(field: &Field, pi: &Permutation) -> Matrix {
    let n = pi.len();
    let mut m = Matrix::zeros(field, n, n);
    for i in 0..n {
        m.set(pi.apply(i), i, field.one());
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_is_a_homomorphism() {
        let f = Field::prime(5).unwrap();
        let a = Permutation::new(vec![1, 2, 0, 3]).unwrap();
        let b = Permutation::new(vec![3, 1, 2, 0]).unwrap();
        let lhs = perm_matrix(&f, &a.compose(&b));
        let rhs = perm_matrix(&f, &a).mul(&perm_matrix(&f, &b)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn five_cycle() {
        let f = Field::prime(2).unwrap();
        let c = Permutation::new(vec![1, 2, 3, 4, 0]).unwrap();
        assert_eq!(c.moved_points(), 5);
        assert_eq!(perm_matrix(&f, &c).one_minus().unwrap().rank(), 4);
        assert_eq!(c.cycles(), vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(Permutation::from_json(&c.to_json()).unwrap(), c);
    }
}
