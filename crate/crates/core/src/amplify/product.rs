use super::trace::{AmplifyTrace, BoundCheck, StageRecord};
use crate::almosthom::{length, AlmostHom, LengthMode};
use crate::error::{Error, Result};
use crate::jordanlen::iota;
use crate::par::{self, Exec};
use crate::rational::{q_int, q_ratio, Q};

/// `(g, h) -> phi(g) (x) psi(h)` on the product window.
///
/// Separation is asserted through the case split on `iota`: when
/// `iota(phi_g) > 1/2` the result is at least `l_J(psi_h)/4` (and
/// symmetrically), and when both are at most `1/2` it is at least `1/4`.
pub fn direct_product_hom(phi: &AlmostHom, psi: &AlmostHom, exec: Exec) -> Result<(AlmostHom, AmplifyTrace)> {
    if phi.field != psi.field {
        return Err(Error::FieldMismatch(format!("{} vs {}", phi.field, psi.field)));
    }
    if phi.mode != LengthMode::Jordan || psi.mode != LengthMode::Jordan {
        return Err(Error::Precondition("direct products combine Jordan-mode homs".into()));
    }
    let window = phi.window.product(&psi.window);
    let m = psi.window.len();
    let idx: Vec<usize> = (0..window.len()).collect();
    let images = par::map(exec, &idx, |&i| phi.images[i / m].kron(&psi.images[i % m]))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let out = AlmostHom::new(window, images, LengthMode::Jordan)?;

    let mut trace = AmplifyTrace::new("direct_product_hom");
    let rec_phi = StageRecord::measure(0, phi, exec)?;
    let rec_psi = StageRecord::measure(0, psi, exec)?;
    let rec = StageRecord::measure(1, &out, exec)?;
    trace.assert(BoundCheck::at_most(
        "defect vs sum of input defects",
        rec.defect.clone(),
        &rec_phi.defect + &rec_psi.defect,
    ))?;

    let stats = |h: &AlmostHom| -> Result<Vec<(Q, Q)>> {
        par::map(exec, &h.images, |a| Ok((length(a, LengthMode::Jordan)?, iota(a, &[])?))).into_iter().collect()
    };
    let (sa, sb) = (stats(phi)?, stats(psi)?);
    let zl = par::map(exec, &out.images, |a| length(a, LengthMode::Jordan)).into_iter().collect::<Result<Vec<_>>>()?;
    let half = q_ratio(1, 2);
    let quarter = q_ratio(1, 4);
    for (i, l) in zl.into_iter().enumerate() {
        if i == out.window.identity() {
            continue;
        }
        let ((lg, ig), (lh, ih)) = (&sa[i / m], &sb[i % m]);
        let label = out.window.label(i).to_string();
        if *ig > half {
            trace.assert(BoundCheck::at_least(
                format!("separation at {label} vs l_J(psi_h)/4"),
                l.clone(),
                lh / q_int(4),
            ))?;
        }
        if *ih > half {
            trace.assert(BoundCheck::at_least(
                format!("separation at {label} vs l_J(phi_g)/4"),
                l.clone(),
                lg / q_int(4),
            ))?;
        }
        if *ig <= half && *ih <= half {
            trace.assert(BoundCheck::at_least(format!("separation at {label} vs 1/4"), l, quarter.clone()))?;
        }
    }
    trace.stages.extend([rec_phi, rec_psi, rec]);
    Ok((out, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::almosthom::{hom_from_exact_rep, FiniteGroup, GroupWindow};
    use crate::exactfield::Field;
    use crate::matspace::Matrix;
    use crate::rational::q;

    #[test]
    fn trivial_second_factor() {
        let qf = Field::rationals();
        let w = GroupWindow::from_group(&FiniteGroup::cyclic(2));
        let phi = hom_from_exact_rep(&w, &[(1, Matrix::diag(&qf, &[qf.from_int(-1), qf.one()]))], LengthMode::Jordan)
            .unwrap();
        let one = AlmostHom::new(
            GroupWindow::from_group(&FiniteGroup::cyclic(1)),
            vec![Matrix::identity(&qf, 1)],
            LengthMode::Jordan,
        )
        .unwrap();
        let (z, _) = direct_product_hom(&phi, &one, Exec::Sequential).unwrap();
        assert_eq!(z.images, phi.images);
    }

    #[test]
    fn c2_times_c3_over_q() {
        let qf = Field::rationals();
        let a = hom_from_exact_rep(
            &GroupWindow::from_group(&FiniteGroup::cyclic(2)),
            &[(1, Matrix::diag(&qf, &[qf.from_int(-1), qf.one()]))],
            LengthMode::Jordan,
        )
        .unwrap();
        let r = Matrix::from_ints(&qf, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let b = hom_from_exact_rep(&GroupWindow::from_group(&FiniteGroup::cyclic(3)), &[(1, r)], LengthMode::Jordan)
            .unwrap();
        let (z, trace) = direct_product_hom(&a, &b, Exec::Sequential).unwrap();
        assert_eq!(z.dim, 6);
        assert_eq!(z.defect().unwrap(), q(0, 1));
        assert!(trace.all_hold());
    }

    #[test]
    fn half_iota_branch() {
        let f3 = Field::prime(3).unwrap();
        let w = GroupWindow::from_group(&FiniteGroup::cyclic(2));
        let d = Matrix::diag(&f3, &[f3.from_int(1), f3.from_int(2)]);
        let a = hom_from_exact_rep(&w, &[(1, d)], LengthMode::Jordan).unwrap();
        let (z, trace) = direct_product_hom(&a, &a, Exec::Sequential).unwrap();
        assert!(trace.all_hold());
        assert!(iota(&z.images[3], &[]).unwrap() <= q(1, 2));
    }
}
