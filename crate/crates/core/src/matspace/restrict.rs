use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::exactfield::Elem;

/// Views an `n x n` matrix over `L = K[x]/(f)` as an `nd x nd` matrix over
/// `K`, using the basis `1, a, ..., a^{d-1}` of `L` over `K`. Coordinates of
/// `v in L^n` are laid out as `(coeffs(v_0), coeffs(v_1), ...)`.
pub fn restrict_scalars(a: &Matrix) -> Result<Matrix> {
    let l = a.field().clone();
    let k = l.base().ok_or_else(|| Error::Input(format!("{l} is not an extension field")))?.clone();
    let d = l.degree();
    let alpha = l.generator()?;
    let mut powers: Vec<Elem> = vec![l.one()];
    for i in 1..d {
        powers.push(l.mul(&powers[i - 1], &alpha));
    }
    let (r, c) = (a.rows(), a.cols());
    let mut out = Matrix::zeros(&k, r * d, c * d);
    for i in 0..r {
        for j in 0..c {
            let e = a.get(i, j);
            if l.is_zero(e) {
                continue;
            }
            for (col, pw) in powers.iter().enumerate() {
                let prod = l.mul(e, pw);
                for (row, coef) in l.coeffs(&prod).iter().enumerate() {
                    out.set(i * d + row, j * d + col, coef.clone());
                }
            }
        }
    }
    Ok(out)
}
