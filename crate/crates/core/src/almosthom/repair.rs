use super::hom::{length, AlmostHom};
use crate::error::{Error, Result};
use crate::matspace::Matrix;
use crate::rational::{q_ratio, Q};

fn require_defect_at_most(hom: &AlmostHom, bound: &Q) -> Result<Q> {
    let d = hom.defect()?;
    if d > *bound {
        return Err(Error::Precondition(format!("defect {d} exceeds {bound}")));
    }
    Ok(d)
}

fn check_output(hom: &AlmostHom, eps: &Q) -> Result<()> {
    let d = hom.defect()?;
    if d > *eps {
        return Err(Error::BoundViolated(format!("repaired defect {d} exceeds {eps}")));
    }
    Ok(())
}

/// Replaces `phi(1)` by the identity. Needs defect at most `eps/2`; the
/// result has defect at most `eps`.
pub fn normalize_identity(hom: &AlmostHom, eps: &Q) -> Result<AlmostHom> {
    let half = eps * q_ratio(1, 2);
    require_defect_at_most(hom, &half)?;
    let id = hom.window.identity();
    let l1 = length(&hom.images[id], hom.mode)?;
    if l1 > *eps {
        return Err(Error::BoundViolated(format!("length of phi(1) is {l1}, above {eps}")));
    }
    let mut out = hom.clone();
    out.images[id] = Matrix::identity(&hom.field, hom.dim);
    check_output(&out, eps)?;
    Ok(out)
}

/// Which part of the window an element falls in when inverses are adapted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InversePart {
    /// Identity and involutions.
    Fixed,
    /// Keeps its image.
    Kept,
    /// Image replaced by the inverse of its inverse's image.
    Rewritten,
}

/// Of each pair `{g, g^{-1}}` with `g != g^{-1}`, the element with the
/// smaller index is kept.
pub fn inverse_partition(hom: &AlmostHom) -> Vec<InversePart> {
    let w = &hom.window;
    (0..w.len())
        .map(|g| {
            let gi = w.inv(g);
            if gi == g {
                InversePart::Fixed
            } else if g < gi {
                InversePart::Kept
            } else {
                InversePart::Rewritten
            }
        })
        .collect()
}

/// Makes `phi(g^{-1}) = phi(g)^{-1}` for every non-involution `g`. Needs
/// `phi(1) = 1` and defect at most `eps/2`; the result has defect at most
/// `eps`, checked by recomputation.
pub fn adapt_inverses(hom: &AlmostHom, eps: &Q) -> Result<AlmostHom> {
    if !hom.is_normalized() {
        return Err(Error::Precondition("phi(1) must be the identity".into()));
    }
    require_defect_at_most(hom, &(eps * q_ratio(1, 2)))?;
    let parts = inverse_partition(hom);
    let mut out = hom.clone();
    for (g, part) in parts.iter().enumerate() {
        if *part == InversePart::Rewritten {
            out.images[g] = hom.images[hom.window.inv(g)].inverse()?;
        }
    }
    for (g, part) in parts.iter().enumerate() {
        if *part != InversePart::Fixed
            && out.images[g].mul(&out.images[hom.window.inv(g)])? != Matrix::identity(&hom.field, hom.dim)
        {
            return Err(Error::BoundViolated(format!("inverse identity fails at {}", hom.window.label(g))));
        }
    }
    check_output(&out, eps)?;
    Ok(out)
}
