use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::group::{FiniteGroup, GroupWindow};
use crate::error::{Error, Result};
use crate::exactfield::Field;
use crate::jordanlen::len_jordan;
use crate::matspace::Matrix;
use crate::par::{self, Exec};
use crate::rational::{q_ratio, q_to_json, Q};

/// Length function used to measure defects and separations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthMode {
    Rank,
    Jordan,
}

impl LengthMode {
    pub fn name(self) -> &'static str {
        match self {
            LengthMode::Rank => "rank",
            LengthMode::Jordan => "jordan",
        }
    }

    pub fn parse(s: &str) -> Result<LengthMode> {
        match s {
            "rank" => Ok(LengthMode::Rank),
            "jordan" => Ok(LengthMode::Jordan),
            _ => Err(Error::Input(format!("unknown length mode `{s}`"))),
        }
    }
}

/// Finite fields up to this order search eigenvalues of `X Y^{-1}` through
/// `rank(aY - X)`, which avoids forming the quotient.
const ENUMERATE_BELOW: u128 = 64;

/// Length of `X Y^{-1}` for invertible `X`, `Y`.
/// Defect, a pair attaining it, and the counts of evaluated and skipped pairs.
pub type DefectScan = (Q, Option<(usize, usize)>, usize, usize);

pub fn quotient_length(x: &Matrix, y: &Matrix, mode: LengthMode) -> Result<Q> {
    let n = x.rows();
    match mode {
        LengthMode::Rank => Ok(q_ratio(y.sub(x)?.rank(), n)),
        LengthMode::Jordan => {
            let f = x.field();
            if f.order().is_some_and(|q| q <= ENUMERATE_BELOW) {
                let mut best = n;
                for a in f.units()? {
                    best = best.min(y.scale(&a).sub(x)?.rank());
                }
                Ok(q_ratio(best, n))
            } else {
                Ok(len_jordan(&x.mul(&y.inverse()?)?, &[])?.0)
            }
        }
    }
}

/// Length of a single invertible matrix.
pub fn length(a: &Matrix, mode: LengthMode) -> Result<Q> {
    quotient_length(a, &Matrix::identity(a.field(), a.rows()), mode)
}

/// Defect and separation data of an almost homomorphism.
#[derive(Clone, Debug, PartialEq)]
pub struct QualityReport {
    pub mode: LengthMode,
    pub defect: Q,
    /// A pair attaining the defect.
    pub worst_pair: Option<(usize, usize)>,
    pub evaluated: usize,
    pub skipped: usize,
    /// `l(phi_g)` for every non-identity `g`, in window order.
    pub separation: Vec<(usize, Q)>,
    pub min_separation: Option<Q>,
}

impl QualityReport {
    pub fn to_json(&self, window: &GroupWindow) -> Value {
        json!({
            "mode": self.mode.name(),
            "defect": q_to_json(&self.defect),
            "worst_pair": self.worst_pair.map(|(g, h)| json!([window.label(g), window.label(h)])),
            "pairs_evaluated": self.evaluated,
            "pairs_skipped": self.skipped,
            "separation": self.separation.iter().map(|(g, s)| json!({"element": window.label(*g), "length": q_to_json(s)})).collect::<Vec<_>>(),
            "min_separation": self.min_separation.as_ref().map(q_to_json),
        })
    }
}

/// A map from a group window into `GL_n(K)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlmostHom {
    pub window: GroupWindow,
    pub field: Field,
    pub dim: usize,
    /// Images indexed like the window elements.
    pub images: Vec<Matrix>,
    pub mode: LengthMode,
}

impl AlmostHom {
    pub fn new(window: GroupWindow, images: Vec<Matrix>, mode: LengthMode) -> Result<AlmostHom> {
        if images.len() != window.len() {
            return Err(Error::Input(format!("{} images for a window of {} elements", images.len(), window.len())));
        }
        let first = images.first().ok_or_else(|| Error::Input("empty window".into()))?;
        let (field, dim) = (first.field().clone(), first.rows());
        for (g, m) in images.iter().enumerate() {
            if m.field() != &field {
                return Err(Error::FieldMismatch(format!("image of {} is over {}", window.label(g), m.field())));
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Shape(format!("image of {} is not {dim}x{dim}", window.label(g))));
            }
            if !m.is_invertible() {
                return Err(Error::Singular);
            }
        }
        Ok(AlmostHom { window, field, dim, images, mode })
    }

    pub fn image(&self, g: usize) -> &Matrix {
        &self.images[g]
    }

    pub fn with_mode(mut self, mode: LengthMode) -> AlmostHom {
        self.mode = mode;
        self
    }

    /// Length of `phi(g) phi(h) phi(gh)^{-1}`.
    pub fn triple_length(&self, g: usize, h: usize) -> Result<Option<Q>> {
        let Some(k) = self.window.mul(g, h) else { return Ok(None) };
        let x = self.images[g].mul(&self.images[h])?;
        quotient_length(&x, &self.images[k], self.mode).map(Some)
    }

    /// Max triple length over pairs with product in the window, a pair
    /// attaining it, and the counts of evaluated and skipped pairs.
    pub fn defect_with(&self, exec: Exec) -> Result<DefectScan> {
        let (pairs, skipped) = self.window.defined_pairs();
        let lens = par::map(exec, &pairs, |&(g, h, k)| {
            let x = self.images[g].mul(&self.images[h])?;
            quotient_length(&x, &self.images[k], self.mode)
        });
        let mut best = q_ratio(0, 1);
        let mut worst = None;
        for (&(g, h, _), l) in pairs.iter().zip(lens) {
            let l = l?;
            if l > best {
                best = l;
                worst = Some((g, h));
            }
        }
        Ok((best, worst, pairs.len(), skipped))
    }

    pub fn defect(&self) -> Result<Q> {
        Ok(self.defect_with(Exec::default())?.0)
    }

    pub fn separation_with(&self, exec: Exec) -> Result<Vec<(usize, Q)>> {
        let id = self.window.identity();
        let elems: Vec<usize> = (0..self.window.len()).filter(|&g| g != id).collect();
        let lens = par::map(exec, &elems, |&g| length(&self.images[g], self.mode));
        elems.into_iter().zip(lens).map(|(g, l)| Ok((g, l?))).collect()
    }

    pub fn quality_with(&self, exec: Exec) -> Result<QualityReport> {
        let (defect, worst_pair, evaluated, skipped) = self.defect_with(exec)?;
        let separation = self.separation_with(exec)?;
        let min_separation = separation.iter().map(|(_, s)| s.clone()).min();
        Ok(QualityReport { mode: self.mode, defect, worst_pair, evaluated, skipped, separation, min_separation })
    }

    pub fn quality(&self) -> Result<QualityReport> {
        self.quality_with(Exec::default())
    }

    pub fn is_normalized(&self) -> bool {
        self.images[self.window.identity()].is_identity()
    }

    /// `g -> phi(g) (+) 1_k`.
    pub fn direct_sum_identity(&self, k: usize) -> AlmostHom {
        let id = Matrix::identity(&self.field, k);
        let images = self.images.iter().map(|m| m.direct_sum(&id).expect("same field")).collect();
        AlmostHom { images, dim: self.dim + k, ..self.clone() }
    }

    /// Conjugates every image by `p`.
    pub fn conjugate(&self, p: &Matrix) -> Result<AlmostHom> {
        let pinv = p.inverse()?;
        let images = self.images.iter().map(|m| p.mul(m)?.mul(&pinv)).collect::<Result<_>>()?;
        Ok(AlmostHom { images, ..self.clone() })
    }
}

/// The whole group as a window.
pub fn window_from_finite_group(g: &FiniteGroup) -> GroupWindow {
    GroupWindow::from_group(g)
}

/// Extends generator images to a homomorphism on a closed window, checking
/// that the images satisfy every relation of the table.
pub fn hom_from_exact_rep(window: &GroupWindow, generators: &[(usize, Matrix)], mode: LengthMode) -> Result<AlmostHom> {
    if !window.is_closed() {
        return Err(Error::Input("exact representations need a closed window".into()));
    }
    let first_img = &generators.first().ok_or_else(|| Error::Input("no generators given".into()))?.1;
    let field = first_img.field().clone();
    let n = first_img.rows();
    let mut images: Vec<Option<Matrix>> = vec![None; window.len()];
    images[window.identity()] = Some(Matrix::identity(&field, n));
    let mut queue = vec![window.identity()];
    while let Some(g) = queue.pop() {
        for (s, ms) in generators {
            let k = window.mul(g, *s).unwrap();
            let img = images[g].as_ref().unwrap().mul(ms)?;
            match &images[k] {
                Some(existing) if *existing != img => {
                    return Err(Error::Inconsistent(format!("two different images reach {}", window.label(k))))
                }
                Some(_) => {}
                None => {
                    images[k] = Some(img);
                    queue.push(k);
                }
            }
        }
    }
    let images: Vec<Matrix> = images
        .into_iter()
        .enumerate()
        .map(|(g, m)| m.ok_or_else(|| Error::Input(format!("generators do not reach {}", window.label(g)))))
        .collect::<Result<_>>()?;
    let hom = AlmostHom::new(window.clone(), images, mode)?;
    for g in 0..window.len() {
        for h in 0..window.len() {
            let k = window.mul(g, h).unwrap();
            if hom.images[g].mul(&hom.images[h])? != hom.images[k] {
                return Err(Error::Inconsistent(format!(
                    "images break the relation {}*{} = {}",
                    window.label(g),
                    window.label(h),
                    window.label(k)
                )));
            }
        }
    }
    Ok(hom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matspace::{perm_matrix, Permutation};
    use crate::rational::q;

    pub(crate) fn regular_rep(g: &FiniteGroup, field: &Field) -> AlmostHom {
        let w = GroupWindow::from_group(g);
        let n = g.order();
        let images = (0..n)
            .map(|a| perm_matrix(field, &Permutation::new((0..n).map(|b| w.mul(a, b).unwrap()).collect()).unwrap()))
            .collect();
        AlmostHom::new(w, images, LengthMode::Rank).unwrap()
    }

    #[test]
    fn regular_c3_separation() {
        let qf = Field::rationals();
        let hom = regular_rep(&FiniteGroup::cyclic(3), &qf);
        let rep = hom.quality().unwrap();
        assert_eq!(rep.defect, q(0, 1));
        assert!(rep.separation.iter().all(|(_, s)| *s == q(2, 3)));
        assert_eq!(rep.min_separation, Some(q(2, 3)));
    }

    #[test]
    fn single_point_window() {
        let qf = Field::rationals();
        let hom = regular_rep(&FiniteGroup::cyclic(1), &qf);
        assert_eq!(hom.defect().unwrap(), q(0, 1));
        assert_eq!(hom.quality().unwrap().min_separation, None);
    }

    #[test]
    fn sign_rep_of_c2() {
        let qf = Field::rationals();
        let w = GroupWindow::from_group(&FiniteGroup::cyclic(2));
        let s = Matrix::diag(&qf, &[qf.from_int(-1), qf.one()]);
        let hom = hom_from_exact_rep(&w, &[(1, s)], LengthMode::Rank).unwrap();
        assert_eq!(hom.quality().unwrap().min_separation, Some(q(1, 2)));
        assert_eq!(hom.defect().unwrap(), q(0, 1));
    }

    #[test]
    fn perturbing_one_image_gives_defect_one_over_n() {
        // The perturbation commutes with phi(z), so every affected triple is a
        // rank-one change.
        let f5 = Field::prime(5).unwrap();
        let w = GroupWindow::from_group(&FiniteGroup::cyclic(2));
        let s = Matrix::diag(&f5, &[f5.from_int(-1), f5.one(), f5.one()]);
        let mut hom = hom_from_exact_rep(&w, &[(1, s)], LengthMode::Rank).unwrap();
        let d = Matrix::diag(&f5, &[f5.from_int(2), f5.one(), f5.one()]);
        hom.images[1] = hom.images[1].mul(&d).unwrap();
        assert_eq!(hom.defect().unwrap(), q(1, 3));
    }

    #[test]
    fn noncommuting_perturbation_doubles_in_the_square_triple() {
        let f5 = Field::prime(5).unwrap();
        let mut hom = regular_rep(&FiniteGroup::symmetric(3), &f5);
        let z = 3;
        let d = Matrix::diag(&f5, &[f5.from_int(2), f5.one(), f5.one(), f5.one(), f5.one(), f5.one()]);
        hom.images[z] = hom.images[z].mul(&d).unwrap();
        let (defect, worst, evaluated, skipped) = hom.defect_with(Exec::Sequential).unwrap();
        assert_eq!(defect, q(2, 6));
        assert_eq!(worst, Some((z, z)));
        assert_eq!((evaluated, skipped), (36, 0));
        assert_eq!(hom.defect_with(Exec::Parallel).unwrap().0, defect);
        for g in 0..6 {
            for h in 0..6 {
                let k = hom.window.mul(g, h).unwrap();
                let touched = [g, h, k].iter().filter(|&&x| x == z).count();
                let l = hom.triple_length(g, h).unwrap().unwrap();
                assert!(l <= q(touched as i64, 6));
            }
        }
    }

    #[test]
    fn s3_by_permutation_matrices_over_f2() {
        let f2 = Field::prime(2).unwrap();
        let s3 = FiniteGroup::symmetric(3);
        let w = GroupWindow::from_group(&s3);
        let gens: Vec<(usize, Matrix)> = ["213", "231"]
            .iter()
            .map(|l| {
                let g = s3.index_of(l).unwrap();
                let p: Vec<usize> = l.chars().map(|c| c.to_digit(10).unwrap() as usize - 1).collect();
                (g, perm_matrix(&f2, &Permutation::new(p).unwrap()))
            })
            .collect();
        let hom = hom_from_exact_rep(&w, &gens, LengthMode::Rank).unwrap();
        assert_eq!(hom.defect().unwrap(), q(0, 1));
        assert_eq!(hom.with_mode(LengthMode::Jordan).defect().unwrap(), q(0, 1));
    }

    #[test]
    fn c3_with_an_involution_is_rejected() {
        let qf = Field::rationals();
        let w = GroupWindow::from_group(&FiniteGroup::cyclic(3));
        let s = Matrix::diag(&qf, &[qf.from_int(-1)]);
        assert!(matches!(hom_from_exact_rep(&w, &[(1, s)], LengthMode::Rank), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn defect_is_conjugation_invariant() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let f3 = Field::prime(3).unwrap();
        let mut hom = regular_rep(&FiniteGroup::cyclic(4), &f3);
        hom.images[2] = Matrix::random_invertible(&f3, 4, &mut rng);
        for mode in [LengthMode::Rank, LengthMode::Jordan] {
            let h = hom.clone().with_mode(mode);
            let p = Matrix::random_invertible(&f3, 4, &mut rng);
            assert_eq!(h.defect().unwrap(), h.conjugate(&p).unwrap().defect().unwrap());
        }
    }
}
