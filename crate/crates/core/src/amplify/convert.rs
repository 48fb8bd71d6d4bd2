use super::trace::{AmplifyTrace, BoundCheck, StageRecord};
use crate::almosthom::{quotient_length, AlmostHom, LengthMode};
use crate::error::{Error, Result};
use crate::matspace::Matrix;
use crate::par::{self, Exec};
use crate::rational::{q_int, q_ratio, Q};

fn map_images(hom: &AlmostHom, exec: Exec, f: impl Fn(&Matrix) -> Result<Matrix> + Sync + Send) -> Result<Vec<Matrix>> {
    par::map(exec, &hom.images, f).into_iter().collect()
}

/// `g -> phi(g)^{-T}`.
pub fn inverse_transpose(hom: &AlmostHom, exec: Exec) -> Result<AlmostHom> {
    let images = map_images(hom, exec, |a| Ok(a.inverse()?.transpose()))?;
    Ok(AlmostHom { images, ..hom.clone() })
}

/// `g -> phi(g) (+) 1_n`, measured with the Jordan length.
pub fn to_projective(hom: &AlmostHom, eps: &Q, exec: Exec) -> Result<(AlmostHom, AmplifyTrace)> {
    if hom.mode != LengthMode::Rank {
        return Err(Error::Precondition("to_projective expects a rank-mode hom".into()));
    }
    if *eps >= q_ratio(1, 2) {
        return Err(Error::Precondition(format!("eps = {eps} must be below 1/2")));
    }
    let q_in = hom.quality_with(exec)?;
    if q_in.defect > *eps {
        return Err(Error::Precondition(format!("defect {} exceeds eps = {eps}", q_in.defect)));
    }
    let out = hom.direct_sum_identity(hom.dim).with_mode(LengthMode::Jordan);
    let mut trace = AmplifyTrace::new("to_projective");
    trace.stages.push(StageRecord::measure(0, hom, exec)?);
    let idx: Vec<usize> = (0..out.window.len()).collect();
    let pairs = par::map(exec, &idx, |&g| -> Result<(Q, Q)> {
        let a = &out.images[g];
        let id = Matrix::identity(a.field(), a.rows());
        Ok((quotient_length(a, &id, LengthMode::Rank)?, quotient_length(a, &id, LengthMode::Jordan)?))
    });
    for (g, p) in pairs.into_iter().enumerate() {
        let (lr, lj) = p?;
        let label = out.window.label(g).to_string();
        trace.assert(BoundCheck::at_most(format!("rank length of psi({label}) vs 1/2"), lr.clone(), q_ratio(1, 2)))?;
        trace.assert(BoundCheck::at_least(format!("Jordan vs rank length at {label}"), lj.clone(), lr.clone()))?;
        trace.assert(BoundCheck::at_most(format!("Jordan vs rank length at {label}"), lj, lr))?;
    }
    let rec = StageRecord::measure(1, &out, exec)?;
    if let (Some(s_in), Some(s_out)) = (&q_in.min_separation, &rec.min_separation) {
        trace.assert(BoundCheck::at_least(
            "Jordan separation vs half the rank separation",
            s_out.clone(),
            s_in / q_int(2),
        ))?;
    }
    trace.assert(BoundCheck::at_most("Jordan defect vs eps/2", rec.defect.clone(), eps / q_int(2)))?;
    trace.stages.push(rec);
    Ok((out, trace))
}

/// `g -> phi(g) (x) phi(g)^{-T}`, measured with the rank length.
///
/// Every defect triple becomes `T (x) T^{-T}`, whose eigenvalue 1 dominates
/// when `eps < 1/4`; this is checked as `l_r = l_J` on each triple.
pub fn to_rank(hom: &AlmostHom, eps: &Q, exec: Exec) -> Result<(AlmostHom, AmplifyTrace)> {
    if hom.mode != LengthMode::Jordan {
        return Err(Error::Precondition("to_rank expects a Jordan-mode hom".into()));
    }
    if *eps >= q_ratio(1, 4) {
        return Err(Error::Precondition(format!("eps = {eps} must be below 1/4")));
    }
    let q_in = hom.quality_with(exec)?;
    if q_in.defect > eps / q_int(2) {
        return Err(Error::Precondition(format!("Jordan defect {} exceeds eps/2", q_in.defect)));
    }
    let images = map_images(hom, exec, |a| a.kron(&a.inverse()?.transpose()))?;
    let out = AlmostHom { images, dim: hom.dim * hom.dim, mode: LengthMode::Rank, ..hom.clone() };
    let mut trace = AmplifyTrace::new("to_rank");
    trace.stages.push(StageRecord::measure(0, hom, exec)?);

    let (pairs, _) = out.window.defined_pairs();
    let lens = par::map(exec, &pairs, |&(g, h, k)| -> Result<(Q, Q)> {
        let x = out.images[g].mul(&out.images[h])?;
        let y = &out.images[k];
        Ok((quotient_length(&x, y, LengthMode::Rank)?, quotient_length(&x, y, LengthMode::Jordan)?))
    });
    for (&(g, h, _), l) in pairs.iter().zip(lens) {
        let (lr, lj) = l?;
        let name = format!("rank vs Jordan length of triple ({}, {})", out.window.label(g), out.window.label(h));
        trace.assert(BoundCheck::at_most(name.clone(), lr.clone(), lj.clone()))?;
        trace.assert(BoundCheck::at_least(name, lr, lj))?;
    }
    let rec = StageRecord::measure(1, &out, exec)?;
    trace.assert(BoundCheck::at_most("rank defect vs eps", rec.defect.clone(), eps.clone()))?;
    if let (Some(d), Some(s_out)) = (&q_in.min_separation, &rec.min_separation) {
        // iota(X (x) X^{-T}) <= f(1 - delta), so l_J >= (1 - f(1 - delta)) / 2.
        let bound = d * (q_int(1) - d);
        trace.assert(BoundCheck::at_least("rank separation vs delta(1 - delta)", s_out.clone(), bound))?;
    }
    trace.stages.push(rec);
    Ok((out, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::almosthom::{hom_from_exact_rep, length, FiniteGroup, GroupWindow};
    use crate::exactfield::{finite_field, Field};
    use crate::rational::q;
    use rand::SeedableRng;

    #[test]
    fn sign_rep_to_projective() {
        let qf = Field::rationals();
        let w = GroupWindow::from_group(&FiniteGroup::cyclic(2));
        let s = Matrix::diag(&qf, &[qf.from_int(-1), qf.one()]);
        let hom = hom_from_exact_rep(&w, &[(1, s)], LengthMode::Rank).unwrap();
        let (out, trace) = to_projective(&hom, &q(1, 10), Exec::Sequential).unwrap();
        assert_eq!(out.images[1], Matrix::diag(&qf, &[qf.from_int(-1), qf.one(), qf.one(), qf.one()]));
        assert_eq!(length(&out.images[1], LengthMode::Jordan).unwrap(), q(1, 4));
        assert!(trace.all_hold());
    }

    #[test]
    fn identity_window() {
        let f3 = Field::prime(3).unwrap();
        let w = GroupWindow::from_group(&FiniteGroup::cyclic(1));
        let hom = AlmostHom::new(w, vec![Matrix::identity(&f3, 2)], LengthMode::Rank).unwrap();
        let (out, _) = to_projective(&hom, &q(0, 1), Exec::Sequential).unwrap();
        assert!(out.images[0].is_identity());
        assert_eq!(out.dim, 4);
    }

    #[test]
    fn diagonal_over_f4() {
        let f4 = finite_field(2, 2).unwrap();
        let w = f4.generator().unwrap();
        let a = Matrix::diag(&f4, &[w.clone(), f4.mul(&w, &w)]);
        let psi = a.kron(&a.inverse().unwrap().transpose()).unwrap();
        assert_eq!(length(&psi, LengthMode::Rank).unwrap(), q(1, 2));
        let win = GroupWindow::from_group(&FiniteGroup::cyclic(3));
        let hom = hom_from_exact_rep(&win, &[(1, a)], LengthMode::Jordan).unwrap();
        let (out, trace) = to_rank(&hom, &q(1, 8), Exec::Sequential).unwrap();
        assert_eq!(out.images[1], psi);
        assert_eq!(out.defect().unwrap(), q(0, 1));
        assert!(trace.all_hold());
    }

    #[test]
    fn inverse_transpose_keeps_defect() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let f5 = Field::prime(5).unwrap();
        let w = GroupWindow::from_group(&FiniteGroup::cyclic(3));
        let mut hom = AlmostHom::new(
            w,
            (0..3).map(|_| Matrix::random_invertible(&f5, 3, &mut rng)).collect(),
            LengthMode::Jordan,
        )
        .unwrap();
        hom.images[0] = Matrix::identity(&f5, 3);
        for mode in [LengthMode::Rank, LengthMode::Jordan] {
            let h = hom.clone().with_mode(mode);
            assert_eq!(inverse_transpose(&h, Exec::Sequential).unwrap().defect().unwrap(), h.defect().unwrap());
        }
    }
}
