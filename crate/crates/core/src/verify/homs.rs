//! Suites on almost homomorphisms: repairs, conversions, amplification and
//! change of scalars.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{gen, need, Finding, SuiteCtx};
use crate::almosthom::{
    adapt_inverses, hom_to_json, normalize_identity, quotient_length, AlmostHom, FiniteGroup, GroupWindow, LengthMode,
};
use crate::amplify::{amplify_jordan, amplify_rank, specialize_hom, to_projective, to_rank};
use crate::error::Result;
use crate::exactfield::{elem_to_json, Elem, Field};
use crate::jordanlen::{f_schedule, len_jordan, len_rank};
use crate::matspace::{perm_matrix, Matrix, Permutation};
use crate::rational::{q, q_int, q_to_json, Q};

fn hom_json(hom: &AlmostHom) -> Value {
    hom_to_json(hom)
}

/// `2 * defect`, or `1/100` for an exact input.
fn doubled(defect: &Q) -> Q {
    if *defect == q(0, 1) {
        q(1, 100)
    } else {
        defect * q_int(2)
    }
}

fn non_identity(hom: &AlmostHom) -> impl Iterator<Item = usize> + '_ {
    let id = hom.window.identity();
    (0..hom.window.len()).filter(move |&g| g != id)
}

/// Padded regular representation with the image of one random non-identity
/// element moved inside the padding, conjugated at random.
fn bent_regular(
    g: &FiniteGroup,
    field: &Field,
    pad: usize,
    mode: LengthMode,
    rng: &mut ChaCha8Rng,
) -> Result<AlmostHom> {
    let mut hom = gen::regular_rep(g, field, pad, mode)?;
    let movers: Vec<usize> = non_identity(&hom).collect();
    let e = *movers.choose(rng).unwrap();
    hom.images[e] = hom.images[e].mul(&gen::pad_unipotent(field, hom.dim, pad, rng))?;
    gen::conjugate_random(&hom, rng)
}

pub(super) fn defect_conjugation(
    _: &SuiteCtx,
    f: Option<&Field>,
    _: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Finding>> {
    let field = need(f);
    let g = [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::symmetric(3)].choose(rng).unwrap().clone();
    let mode = if rng.gen_bool(0.5) { LengthMode::Rank } else { LengthMode::Jordan };
    let hom = bent_regular(&g, field, rng.gen_range(2..=3), mode, rng)?;
    let p = gen::conjugator(field, hom.dim, rng);
    let conj = hom.conjugate(&p)?;
    let (d0, d1) = (hom.defect()?, conj.defect()?);
    if d0 == d1 {
        return Ok(vec![]);
    }
    Ok(vec![Finding::new(
        format!("defect {d0} becomes {d1} after conjugation"),
        json!({"hom": hom_json(&hom), "conjugator": crate::matspace::matrix_to_json(&p)}),
    )])
}

pub(super) fn repair(_: &SuiteCtx, f: Option<&Field>, i: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Finding>> {
    let field = need(f);
    let g = [FiniteGroup::cyclic(3), FiniteGroup::cyclic(4), FiniteGroup::symmetric(3)].choose(rng).unwrap().clone();
    let mode = if i.is_multiple_of(2) { LengthMode::Rank } else { LengthMode::Jordan };
    let pad = rng.gen_range(2..=3);
    let exact = gen::conjugate_random(&gen::regular_rep(&g, field, pad, mode)?, rng)?;
    let mut out = Vec::new();

    // Exact representations pass through unchanged.
    let eps0 = q(1, 100);
    if normalize_identity(&exact, &eps0)? != exact || adapt_inverses(&exact, &eps0)? != exact {
        out.push(Finding::new("repair changed an exact representation", json!({"hom": hom_json(&exact)})));
    }

    let mut hom = gen::regular_rep(&g, field, pad, mode)?;
    let id = hom.window.identity();
    hom.images[id] = gen::rank_one_unipotent(field, hom.dim, rng);
    let movers: Vec<usize> = (0..hom.window.len()).filter(|&x| hom.window.inv(x) != x).collect();
    let x = *movers.choose(rng).unwrap();
    let xi = hom.window.inv(x);
    hom.images[xi] = hom.images[xi].mul(&gen::pad_unipotent(field, hom.dim, pad, rng))?;
    let hom = gen::conjugate_random(&hom, rng)?;
    let data = || json!({"hom": hom_json(&hom)});

    let eps = doubled(&hom.defect()?);
    let normalized = normalize_identity(&hom, &eps)?;
    if !normalized.is_normalized() || normalized.dim != hom.dim || normalized.window != hom.window {
        out.push(Finding::new("normalize_identity did not produce a normalized map of the same shape", data()));
    }
    let dn = normalized.defect()?;
    if dn > eps {
        out.push(Finding::new(format!("normalized defect {dn} exceeds {eps}"), data()));
    }

    let eps2 = doubled(&dn);
    let adapted = adapt_inverses(&normalized, &eps2)?;
    if adapted.dim != hom.dim || adapted.window != hom.window {
        out.push(Finding::new("adapt_inverses changed the shape", data()));
    }
    let one = Matrix::identity(field, hom.dim);
    for x in 0..adapted.window.len() {
        let xi = adapted.window.inv(x);
        if xi != x && adapted.images[x].mul(&adapted.images[xi])? != one {
            out.push(Finding::new(format!("phi({0}) phi({0}^-1) != 1", adapted.window.label(x)), data()));
        }
    }
    let da = adapted.defect()?;
    if da > eps2 {
        out.push(Finding::new(format!("adapted defect {da} exceeds {eps2}"), data()));
    }
    Ok(out)
}

/// `(Jordan mode, n, k, delta, eps, perturbed, stages, output dim)` for the
/// sign representation `diag(-1 x k, 1 x (n - k))` of `C2`.
type AmplificationCase = (bool, usize, usize, (i64, i64), (i64, i64), bool, u32, usize);

pub(super) const AMPLIFICATION_CASES: [AmplificationCase; 6] = [
    (true, 4, 1, (1, 4), (1, 64), false, 2, 256),
    (true, 8, 1, (1, 8), (9, 64), false, 1, 64),
    (true, 2, 1, (1, 2), (1, 64), false, 0, 2),
    (true, 32, 8, (1, 4), (1, 16), true, 1, 1024),
    (false, 4, 1, (1, 4), (1, 64), false, 2, 512),
    (false, 8, 1, (1, 8), (5, 64), false, 1, 128),
];

pub(super) fn amplification(ctx: &SuiteCtx, f: Option<&Field>, i: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Finding>> {
    let field = need(f);
    let (jordan, n, k, (dn, dd), (en, ed), perturbed, stages, out_dim) = AMPLIFICATION_CASES[i];
    let (delta, eps) = (q(dn, dd), q(en, ed));
    let mode = if jordan { LengthMode::Jordan } else { LengthMode::Rank };
    let mut diag: Vec<Elem> = vec![field.from_int(-1); k];
    diag.extend(vec![field.one(); n - k]);
    let mut s = Matrix::diag(field, &diag);
    if perturbed {
        // A nilpotent entry inside the +1 eigenspace: s^2 = 1 + 2N.
        s.set(k, k + 1, field.one());
    }
    let p = gen::conjugator(field, n, rng);
    let s = p.mul(&s)?.mul(&p.inverse()?)?;
    let window = GroupWindow::from_group(&FiniteGroup::cyclic(2));
    let hom = AlmostHom::new(window, vec![Matrix::identity(field, n), s], mode)?;
    let data = || json!({"hom": hom_json(&hom), "delta": q_to_json(&delta), "eps": q_to_json(&eps)});
    let mut out = Vec::new();

    let m = if jordan { f_schedule(&delta, &eps)? } else { f_schedule(&delta, &(&eps * q_int(2)))? };
    if m != stages {
        out.push(Finding::new(format!("schedule gives {m} stages, expected {stages}"), data()));
    }
    let input = hom.quality_with(ctx.exec)?;
    let scaled = &eps / q_int(1i64 << m);
    if input.min_separation.as_ref().is_some_and(|s| *s < delta) || input.defect > scaled {
        out.push(Finding::new("input does not meet the separation and defect premises", data()));
        return Ok(out);
    }
    let (res, trace) = if jordan {
        amplify_jordan(&hom, &delta, &eps, ctx.dim_cap, ctx.exec)?
    } else {
        amplify_rank(&hom, &delta, &eps, ctx.dim_cap, ctx.exec)?
    };
    let data =
        || json!({"hom": hom_json(&hom), "delta": q_to_json(&delta), "eps": q_to_json(&eps), "trace": trace.to_json()});
    if res.dim != out_dim {
        out.push(Finding::new(format!("output dimension {} instead of {out_dim}", res.dim), data()));
    }
    let floor = if jordan { q(1, 4) } else { q(1, 8) } - &eps;
    let got = res.quality_with(ctx.exec)?;
    if got.min_separation.as_ref().is_some_and(|s| *s < floor) {
        out.push(Finding::new(format!("separation below {floor}"), data()));
    }
    if got.defect > eps {
        out.push(Finding::new(format!("defect {} exceeds {eps}", got.defect), data()));
    }
    if !trace.all_hold() {
        out.push(Finding::new("trace records a failed bound", data()));
    }
    Ok(out)
}

fn min_sep(hom: &AlmostHom, ctx: &SuiteCtx) -> Result<Q> {
    Ok(hom.quality_with(ctx.exec)?.min_separation.unwrap_or_else(|| q(1, 1)))
}

/// `to_projective` plus independent checks; returns the output for chaining.
fn projective_step(hom: &AlmostHom, ctx: &SuiteCtx, out: &mut Vec<Finding>) -> Result<AlmostHom> {
    let eps = doubled(&hom.defect()?);
    let delta = min_sep(hom, ctx)?;
    let (psi, _) = to_projective(hom, &eps, ctx.exec)?;
    let data = || json!({"hom": hom_json(hom), "eps": q_to_json(&eps)});
    for g in 0..psi.window.len() {
        let a = &psi.images[g];
        if len_rank(a)? != len_jordan(a, &[])?.0 {
            out.push(Finding::new(format!("rank and Jordan lengths differ at {}", psi.window.label(g)), data()));
        }
    }
    let q_out = psi.quality_with(ctx.exec)?;
    if q_out.min_separation.as_ref().is_some_and(|s| *s < &delta / q_int(2)) {
        out.push(Finding::new(format!("Jordan separation below {}", &delta / q_int(2)), data()));
    }
    if q_out.defect > &eps / q_int(2) {
        out.push(Finding::new(format!("Jordan defect {} exceeds eps/2", q_out.defect), data()));
    }
    Ok(psi)
}

fn rank_step(hom: &AlmostHom, ctx: &SuiteCtx, out: &mut Vec<Finding>) -> Result<AlmostHom> {
    let eps = doubled(&hom.defect()?);
    let delta = min_sep(hom, ctx)?;
    let (chi, _) = to_rank(hom, &eps, ctx.exec)?;
    let data = || json!({"hom": hom_json(hom), "eps": q_to_json(&eps)});
    let (pairs, _) = chi.window.defined_pairs();
    for (g, h, k) in pairs {
        let x = chi.images[g].mul(&chi.images[h])?;
        let y = &chi.images[k];
        if quotient_length(&x, y, LengthMode::Rank)? != quotient_length(&x, y, LengthMode::Jordan)? {
            out.push(Finding::new(
                format!(
                    "rank and Jordan lengths differ on the triple ({}, {})",
                    chi.window.label(g),
                    chi.window.label(h)
                ),
                data(),
            ));
        }
    }
    let q_out = chi.quality_with(ctx.exec)?;
    if q_out.defect > eps {
        out.push(Finding::new(format!("rank defect {} exceeds {eps}", q_out.defect), data()));
    }
    let floor = &delta * (q_int(1) - &delta);
    if q_out.min_separation.as_ref().is_some_and(|s| *s < floor) {
        out.push(Finding::new(format!("rank separation below {floor}"), data()));
    }
    Ok(chi)
}

pub(super) fn conversions(ctx: &SuiteCtx, f: Option<&Field>, i: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Finding>> {
    let field = need(f);
    let mut out = Vec::new();
    if i.is_multiple_of(2) {
        // Rank first: n = 5 or 6 keeps the Jordan defect of the projective
        // image below 1/8.
        let groups =
            [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4), FiniteGroup::symmetric(3)];
        let g = groups.choose(rng).unwrap();
        let pad = 5usize.saturating_sub(g.order()).max(2);
        let hom = bent_regular(g, field, pad, LengthMode::Rank, rng)?;
        let psi = projective_step(&hom, ctx, &mut out)?;
        if g.order() <= 4 {
            rank_step(&psi, ctx, &mut out)?;
        }
    } else {
        // Jordan first: n = 9 keeps 2 * defect below 1/4.
        let g = [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)].choose(rng).unwrap().clone();
        let hom = bent_regular(&g, field, 9 - g.order(), LengthMode::Jordan, rng)?;
        let chi = rank_step(&hom, ctx, &mut out)?;
        projective_step(&chi, ctx, &mut out)?;
    }
    Ok(out)
}

pub(super) fn specialize(ctx: &SuiteCtx, f: Option<&Field>, _: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Finding>> {
    let field = need(f);
    let g = [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)].choose(rng).unwrap().clone();
    let pad = 3;
    let mut hom = gen::regular_rep(&g, field, pad, LengthMode::Rank)?;
    let base = hom.dim - pad;
    let movers: Vec<usize> = non_identity(&hom).collect();
    for x in movers {
        let r = loop {
            let r = gen::rational_function(field, 3, rng);
            if !field.is_zero(&r) {
                break r;
            }
        };
        let i = rng.gen_range(0..pad);
        let j = (i + rng.gen_range(1..pad)) % pad;
        let mut u = Matrix::identity(field, hom.dim);
        u.set(base + i, base + j, r);
        hom.images[x] = hom.images[x].mul(&u)?;
    }
    let p = perm_matrix(field, &Permutation::random(hom.dim, rng));
    let hom = hom.conjugate(&p)?;
    let sh = specialize_hom(&hom, 1, ctx.exec)?;
    let data = || json!({"hom": hom_json(&hom), "point": elem_to_json(&sh.hom.field, &sh.point)});
    let mut out = Vec::new();
    for x in 0..hom.window.len() {
        if len_rank(&hom.images[x])? != len_rank(&sh.hom.images[x])? {
            out.push(Finding::new(format!("rank length of {} changes", hom.window.label(x)), data()));
        }
    }
    let (d0, d1) = (hom.defect()?, sh.hom.defect()?);
    if d1 > d0 {
        out.push(Finding::new(format!("defect rises from {d0} to {d1}"), data()));
    }
    if !sh.trace.all_hold() {
        out.push(Finding::new("trace records a failed bound", data()));
    }
    Ok(out)
}
