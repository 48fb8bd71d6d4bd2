use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::trace::{AmplifyTrace, BoundCheck};
use crate::almosthom::{quotient_length, AlmostHom, LengthMode};
use crate::error::{Error, Result};
use crate::exactfield::field::RatFun;
use crate::exactfield::{poly_factor, Elem, Field, FieldKind, Poly};
use crate::matspace::specialize::{choose_point, denominators, specialize_with};
use crate::matspace::{restrict_scalars, Matrix};
use crate::par::{self, Exec};
use crate::rational::Q;

/// Rank lengths of every image and every defect triple, in a fixed order.
fn rank_profile_of(hom: &AlmostHom, exec: Exec) -> Result<Vec<Q>> {
    let id = Matrix::identity(&hom.field, hom.dim);
    let mut out: Vec<Q> = par::map(exec, &hom.images, |a| quotient_length(a, &id, LengthMode::Rank))
        .into_iter()
        .collect::<Result<_>>()?;
    let (pairs, _) = hom.window.defined_pairs();
    let triples = par::map(exec, &pairs, |&(g, h, k)| {
        quotient_length(&hom.images[g].mul(&hom.images[h])?, &hom.images[k], LengthMode::Rank)
    });
    for t in triples {
        out.push(t?);
    }
    Ok(out)
}

fn assert_same_lengths(trace: &mut AmplifyTrace, hom: &AlmostHom, before: &[Q], after: &[Q]) -> Result<()> {
    let n = hom.window.len();
    let (pairs, _) = hom.window.defined_pairs();
    for (i, (b, a)) in before.iter().zip(after).enumerate() {
        let name = if i < n {
            format!("rank length of image {}", hom.window.label(i))
        } else {
            let (g, h, _) = pairs[i - n];
            format!("rank length of triple ({}, {})", hom.window.label(g), hom.window.label(h))
        };
        trace.assert(BoundCheck::at_most(name.clone(), a.clone(), b.clone()))?;
        trace.assert(BoundCheck::at_least(name, a.clone(), b.clone()))?;
    }
    Ok(())
}

/// Views a hom over `L = K[x]/(f)` as one over `K` of dimension `n [L:K]`.
/// Rank lengths of images and defect triples are unchanged (asserted).
pub fn restrict_hom(hom: &AlmostHom, exec: Exec) -> Result<(AlmostHom, AmplifyTrace)> {
    if hom.field.base().is_none() {
        return Err(Error::Input(format!("{} is not an extension field", hom.field)));
    }
    let images = par::map(exec, &hom.images, restrict_scalars).into_iter().collect::<Result<Vec<_>>>()?;
    let out = AlmostHom::new(hom.window.clone(), images, LengthMode::Rank)?;
    let mut trace = AmplifyTrace::new("restrict_hom");
    let rank_hom = hom.clone().with_mode(LengthMode::Rank);
    assert_same_lengths(&mut trace, &rank_hom, &rank_profile_of(&rank_hom, exec)?, &rank_profile_of(&out, exec)?)?;
    Ok((out, trace))
}

/// Outcome of [`specialize_hom`].
#[derive(Clone, Debug)]
pub struct SpecializedHom {
    pub hom: AlmostHom,
    pub point: Elem,
    /// Monic irreducible polynomials over `F_p` kept nonzero at the point.
    pub avoid: Vec<Poly>,
    pub trace: AmplifyTrace,
}

fn numerator(field: &Field, e: &Elem, fp: &Field) -> Result<Option<Poly>> {
    if field.is_zero(e) {
        return Ok(None);
    }
    match e {
        Elem::Fun(r) => {
            let RatFun { num, .. } = &**r;
            Ok(Some(Poly::new(fp, num.iter().map(|&x| Elem::Int(x)).collect())))
        }
        _ => Err(Error::FieldMismatch(format!("expected an element of {field}"))),
    }
}

/// Numerator of the determinant of a maximal nonsingular minor of `a`.
fn minor_numerator(a: &Matrix, fp: &Field) -> Result<Option<Poly>> {
    let (r, c) = a.rank_profile();
    if r.is_empty() {
        return Ok(None);
    }
    numerator(a.field(), &a.submatrix(&r, &c).det()?, fp)
}

/// Substitutes `t -> c` in a hom over `F_p(t)`, with `c` in the smallest
/// `F_{p^m}` (`m >= min_degree`) that keeps every denominator, every
/// determinant, and a maximal nonsingular minor of `1 - phi_g` and of each
/// defect triple nonzero. Rank lengths of images and triples are preserved.
pub fn specialize_hom(hom: &AlmostHom, min_degree: usize, exec: Exec) -> Result<SpecializedHom> {
    let p = match hom.field.kind() {
        FieldKind::RationalFunctions(p) => *p,
        _ => return Err(Error::FieldMismatch(format!("cannot specialize a hom over {}", hom.field))),
    };
    let fp = Field::prime(p)?;
    let rank_hom = hom.clone().with_mode(LengthMode::Rank);
    let mut raw: Vec<Poly> = Vec::new();
    for a in &hom.images {
        raw.extend(denominators(a)?);
        raw.extend(numerator(&hom.field, &a.det()?, &fp)?);
        raw.extend(minor_numerator(&a.one_minus()?, &fp)?);
    }
    let (pairs, _) = hom.window.defined_pairs();
    let minors = par::map(exec, &pairs, |&(g, h, k)| {
        let x = hom.images[g].mul(&hom.images[h])?;
        minor_numerator(&hom.images[k].sub(&x)?, &fp)
    });
    for m in minors {
        raw.extend(m?);
    }
    let mut avoid: Vec<Poly> = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5bec);
    for f in raw {
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        for (g, _) in poly_factor(&f, &mut rng)?.factors {
            if !avoid.contains(&g) {
                avoid.push(g);
            }
        }
    }
    avoid.sort_by_key(|a| a.sort_key());
    let (target, point) = choose_point(p, &avoid, min_degree)?;
    let images =
        par::map(exec, &hom.images, |a| specialize_with(a, &target, &point)).into_iter().collect::<Result<Vec<_>>>()?;
    let out = AlmostHom::new(hom.window.clone(), images, LengthMode::Rank)?;
    let mut trace = AmplifyTrace::new("specialize_hom");
    assert_same_lengths(&mut trace, &rank_hom, &rank_profile_of(&rank_hom, exec)?, &rank_profile_of(&out, exec)?)?;
    Ok(SpecializedHom { hom: out, point, avoid, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::almosthom::{hom_from_exact_rep, FiniteGroup, GroupWindow};
    use crate::exactfield::finite_field;
    use crate::rational::q;

    #[test]
    fn c3_in_f4_restricts_to_f2() {
        let f4 = finite_field(2, 2).unwrap();
        let w = GroupWindow::from_group(&FiniteGroup::cyclic(3));
        let omega = Matrix::diag(&f4, &[f4.generator().unwrap()]);
        let hom = hom_from_exact_rep(&w, &[(1, omega)], LengthMode::Rank).unwrap();
        let (out, trace) = restrict_hom(&hom, Exec::Sequential).unwrap();
        assert_eq!(out.dim, 2);
        assert_eq!(out.field, Field::prime(2).unwrap());
        assert!(trace.all_hold());
        assert_eq!(out.quality().unwrap().min_separation, Some(q(1, 1)));
    }

    #[test]
    fn diag_t_keeps_one_third() {
        let f = Field::rational_functions(2).unwrap();
        let w = GroupWindow::from_group(&FiniteGroup::cyclic(1));
        let mut hom = AlmostHom::new(w, vec![Matrix::identity(&f, 3)], LengthMode::Rank).unwrap();
        // A one-element window with a non-identity image is enough to exercise
        // the minor bookkeeping.
        hom.images[0] = Matrix::diag(&f, &[f.t().unwrap(), f.one(), f.one()]);
        let s = specialize_hom(&hom, 1, Exec::Sequential).unwrap();
        let c = &s.point;
        let target = s.hom.field.clone();
        assert!(!target.is_zero(c) && !target.is_one(c));
        assert_eq!(crate::jordanlen::len_rank(&s.hom.images[0]).unwrap(), q(1, 3));
    }

    #[test]
    fn shared_denominator_listed_once() {
        let f = Field::rational_functions(3).unwrap();
        let t = f.t().unwrap();
        let inv_t = f.inv(&t).unwrap();
        let w = GroupWindow::from_group(&FiniteGroup::cyclic(2));
        // phi(g) = [[1, 1/t], [0, -1]] is an involution.
        let g = Matrix::new(&f, 2, 2, vec![f.one(), inv_t.clone(), f.zero(), f.from_int(-1)]).unwrap();
        let hom = hom_from_exact_rep(&w, &[(1, g)], LengthMode::Rank).unwrap();
        let s = specialize_hom(&hom, 1, Exec::Sequential).unwrap();
        let fp = Field::prime(3).unwrap();
        let tpoly = Poly::from_ints(&fp, &[0, 1]);
        assert_eq!(s.avoid.iter().filter(|a| **a == tpoly).count(), 1);
        assert!(!s.hom.field.is_zero(&s.point));
        assert_eq!(s.hom.defect().unwrap(), q(0, 1));
    }

    #[test]
    fn constant_input_is_unchanged() {
        let f = Field::rational_functions(5).unwrap();
        let w = GroupWindow::from_group(&FiniteGroup::cyclic(2));
        let g = Matrix::diag(&f, &[f.from_int(-1), f.one()]);
        let hom = hom_from_exact_rep(&w, &[(1, g)], LengthMode::Rank).unwrap();
        let s = specialize_hom(&hom, 1, Exec::Sequential).unwrap();
        let f5 = Field::prime(5).unwrap();
        assert_eq!(s.hom.images[1], Matrix::diag(&f5, &[f5.from_int(-1), f5.one()]));
    }
}
