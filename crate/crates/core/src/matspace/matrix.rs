use std::fmt;

use rand::Rng;

use super::elim::{self, Echelon};
use crate::error::{Error, Result};
use crate::exactfield::{Elem, Field, FieldKind};

/// Dense matrix over an exact field, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| self.field.fmt_elem(e)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        let data: Vec<Vec<Elem>> = rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect();
        Matrix::from_rows(field, data).expect("rectangular")
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        Matrix::scalar(field, n, &field.one())
    }

    pub fn scalar(field: &Field, n: usize, a: &Elem) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = a.clone();
        }
        m
    }

    pub fn diag(field: &Field, entries: &[Elem]) -> Matrix {
        let n = entries.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    /// Companion matrix of a monic polynomial `x^n + c_{n-1} x^{n-1} + ... + c_0`.
    pub fn companion(poly: &crate::exactfield::Poly) -> Result<Matrix> {
        let field = poly.field();
        let p = poly.monic()?;
        let n = p.degree().unwrap();
        let mut m = Matrix::zeros(field, n, n);
        for i in 1..n {
            m.data[i * n + i - 1] = field.one();
        }
        for i in 0..n {
            m.data[i * n + n - 1] = field.neg(&p.coeff(i));
        }
        Ok(m)
    }

    /// Jordan block `J(a, s)`: `a` on the diagonal, ones on the superdiagonal.
    pub fn jordan_block(field: &Field, a: &Elem, s: usize) -> Matrix {
        let mut m = Matrix::scalar(field, s, a);
        for i in 0..s.saturating_sub(1) {
            m.data[i * s + i + 1] = field.one();
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }

    fn square(&self) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::Shape(format!("expected a square matrix, got {}x{}", self.rows, self.cols)));
        }
        Ok(self.rows)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("addition of different shapes".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.add(a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("subtraction of different shapes".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.sub(a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|a| self.field.neg(a)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        let data = self.data.iter().map(|a| self.field.mul(a, c)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// `a * 1 - self`.
    pub fn scalar_minus(&self, a: &Elem) -> Result<Matrix> {
        let n = self.square()?;
        let mut m = self.neg();
        for i in 0..n {
            m.data[i * n + i] = self.field.add(&m.data[i * n + i], a);
        }
        Ok(m)
    }

    /// `1 - self`.
    pub fn one_minus(&self) -> Result<Matrix> {
        self.scalar_minus(&self.field.one())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (n, k, m) = (self.rows, self.cols, other.cols);
        if let FieldKind::Prime(p) = self.field.kind() {
            let out = elim::prime_mul(&elim::to_u64(&self.data), &elim::to_u64(&other.data), n, k, m, *p);
            return Ok(Matrix { field: self.field.clone(), rows: n, cols: m, data: elim::from_u64(out) });
        }
        let f = &self.field;
        let mut data = vec![f.zero(); n * m];
        for i in 0..n {
            for t in 0..k {
                let a = &self.data[i * k + t];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..m {
                    let b = &other.data[t * m + j];
                    if !f.is_zero(b) {
                        data[i * m + j] = f.add(&data[i * m + j], &f.mul(a, b));
                    }
                }
            }
        }
        Ok(Matrix { field: f.clone(), rows: n, cols: m, data })
    }

    pub fn pow(&self, k: usize) -> Result<Matrix> {
        let n = self.square()?;
        let mut result = Matrix::identity(&self.field, n);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.data[i * self.cols + j].clone());
            }
        }
        Matrix { field: self.field.clone(), rows: self.cols, cols: self.rows, data }
    }

    /// Kronecker product, `(A (x) B)[(i,k),(j,l)] = A[i,j] B[k,l]`.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        let f = &self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut data = vec![f.zero(); r * c];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self.data[i * self.cols + j];
                if f.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other.data[k * other.cols + l];
                        if !f.is_zero(b) {
                            data[(i * other.rows + k) * c + j * other.cols + l] = f.mul(a, b);
                        }
                    }
                }
            }
        }
        Ok(Matrix { field: f.clone(), rows: r, cols: c, data })
    }

    /// Block diagonal `diag(self, other)`.
    pub fn direct_sum(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        let f = &self.field;
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        let mut m = Matrix::zeros(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[i * c + j] = self.data[i * self.cols + j].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.data[(self.rows + i) * c + self.cols + j] = other.data[i * other.cols + j].clone();
            }
        }
        Ok(m)
    }

    pub fn block_diag(field: &Field, blocks: &[Matrix]) -> Result<Matrix> {
        blocks.iter().try_fold(Matrix::zeros(field, 0, 0), |acc, b| acc.direct_sum(b))
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.data[i * self.cols + j].clone());
            }
        }
        Matrix { field: self.field.clone(), rows: rows.len(), cols: cols.len(), data }
    }

    /// Maps every entry into another field.
    pub fn map(&self, target: &Field, mut f: impl FnMut(&Elem) -> Result<Elem>) -> Result<Matrix> {
        let data = self.data.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { field: target.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn echelon(&self) -> Echelon {
        match self.field.kind() {
            FieldKind::Prime(p) => {
                let mut a = elim::to_u64(&self.data);
                elim::prime_echelon(&mut a, self.rows, self.cols, *p).0
            }
            FieldKind::Rationals => elim::rational_echelon(&self.field, &self.data, self.rows, self.cols),
            _ => {
                let mut a = self.data.clone();
                elim::generic_echelon(&self.field, &mut a, self.rows, self.cols).0
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank
    }

    /// Dimension of the right kernel.
    pub fn kernel_dim(&self) -> usize {
        self.cols - self.rank()
    }

    /// Row and column indices of a maximal nonsingular square submatrix.
    pub fn rank_profile(&self) -> (Vec<usize>, Vec<usize>) {
        let cols = self.echelon().pivot_cols;
        let all_rows: Vec<usize> = (0..self.rows).collect();
        let rows = self.submatrix(&all_rows, &cols).transpose().echelon().pivot_cols;
        (rows, cols)
    }

    pub fn det(&self) -> Result<Elem> {
        let n = self.square()?;
        Ok(match self.field.kind() {
            FieldKind::Prime(p) => Elem::Int(elim::prime_det(&elim::to_u64(&self.data), n, *p)),
            FieldKind::Rationals => Elem::Rat(Box::new(elim::rational_det(&self.field, &self.data, n))),
            _ => {
                let mut a = self.data.clone();
                let (e, det) = elim::generic_echelon(&self.field, &mut a, n, n);
                if e.rank < n {
                    self.field.zero()
                } else {
                    det
                }
            }
        })
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.square()?;
        let data = match self.field.kind() {
            FieldKind::Prime(p) => elim::prime_inverse(&elim::to_u64(&self.data), n, *p).map(elim::from_u64),
            _ => elim::generic_inverse(&self.field, &self.data, n),
        }
        .ok_or(Error::Singular)?;
        Ok(Matrix { field: self.field.clone(), rows: n, cols: n, data })
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = &self.data[i * self.cols + j];
                    if i == j {
                        self.field.is_one(e)
                    } else {
                        self.field.is_zero(e)
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn trace(&self) -> Result<Elem> {
        let n = self.square()?;
        Ok((0..n).fold(self.field.zero(), |acc, i| self.field.add(&acc, &self.data[i * n + i])))
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
        let data = (0..rows * cols).map(|_| field.random(rng)).collect();
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Uniform-ish random invertible matrix by rejection.
    pub fn random_invertible<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Matrix {
        loop {
            let m = Matrix::random(field, n, n, rng);
            if m.is_invertible() {
                return m;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn det_example_mod_3() {
        let f3 = Field::prime(3).unwrap();
        let a = Matrix::from_ints(&f3, &[&[1, 1], &[0, 1]]);
        assert_eq!(a.det().unwrap(), f3.one());
        assert_eq!(a.one_minus().unwrap().rank(), 1);
    }

    #[test]
    fn inverse_over_q_and_extension() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let qf = Field::rationals();
        let a = Matrix::random_invertible(&qf, 4, &mut rng);
        assert!(a.mul(&a.inverse().unwrap()).unwrap().is_identity());
        let f9 = crate::exactfield::finite_field(3, 2).unwrap();
        let b = Matrix::random_invertible(&f9, 4, &mut rng);
        assert!(b.inverse().unwrap().mul(&b).unwrap().is_identity());
    }

    #[test]
    fn kron_and_direct_sum_shapes() {
        let f5 = Field::prime(5).unwrap();
        let a = Matrix::from_ints(&f5, &[&[1, 2], &[3, 4]]);
        let b = Matrix::identity(&f5, 3);
        let k = a.kron(&b).unwrap();
        assert_eq!((k.rows(), k.cols()), (6, 6));
        assert_eq!(k.get(3, 0), &f5.from_int(3));
        assert!(f5.is_zero(k.get(3, 1)));
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(s.rank(), 5);
        assert_eq!(s.get(4, 4), &f5.one());
    }

    #[test]
    fn rank_profile_gives_nonsingular_minor() {
        let qf = Field::rationals();
        let a = Matrix::from_ints(&qf, &[&[0, 0, 0], &[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let (r, c) = a.rank_profile();
        assert_eq!(r.len(), 2);
        assert!(a.submatrix(&r, &c).is_invertible());
    }

    #[test]
    fn companion_and_jordan() {
        let f7 = Field::prime(7).unwrap();
        let p = crate::exactfield::Poly::from_ints(&f7, &[3, 0, 1]);
        let c = Matrix::companion(&p).unwrap();
        // C^2 = -3 I
        assert_eq!(c.mul(&c).unwrap(), Matrix::scalar(&f7, 2, &f7.from_int(-3)));
        let j = Matrix::jordan_block(&f7, &f7.from_int(2), 3);
        assert_eq!(j.scalar_minus(&f7.from_int(2)).unwrap().rank(), 2);
    }
}
