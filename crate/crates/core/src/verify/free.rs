//! Suites on free products.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{need, Finding, SuiteCtx};
use crate::almosthom::{hom_from_exact_rep, window_from_finite_group, AlmostHom, FiniteGroup, LengthMode};
use crate::error::Result;
use crate::exactfield::Field;
use crate::freeprod::{
    build_separating_quotient, zeta_build, FreeProduct, ReducedWord, SearchLimits, Syllable, ZetaOptions,
};
use crate::matspace::Matrix;
use crate::rational::{q, q_int};

fn random_word(fp: &FreeProduct, max_letters: usize, rng: &mut ChaCha8Rng) -> Result<ReducedWord> {
    let n = rng.gen_range(0..=max_letters);
    let letters: Vec<Syllable> = (0..n)
        .map(|_| {
            let factor = rng.gen_range(0..2);
            Syllable { factor, elem: rng.gen_range(0..fp.factor(factor).order()) }
        })
        .collect();
    fp.reduce(letters)
}

pub(super) fn word_laws(_: &SuiteCtx, _: Option<&Field>, _: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Finding>> {
    let groups = [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4), FiniteGroup::symmetric(3)];
    let fp = FreeProduct::new(groups.choose(rng).unwrap().clone(), groups.choose(rng).unwrap().clone())?;
    let u = random_word(&fp, 8, rng)?;
    let v = random_word(&fp, 8, rng)?;
    let w = random_word(&fp, 8, rng)?;
    let data = || json!({"u": fp.format(&u), "v": fp.format(&v), "w": fp.format(&w)});
    let mut out = Vec::new();
    if fp.mul(&fp.mul(&u, &v), &w) != fp.mul(&u, &fp.mul(&v, &w)) {
        out.push(Finding::new("multiplication is not associative", data()));
    }
    if !fp.mul(&u, &fp.inv(&u)).is_identity() || !fp.mul(&fp.inv(&u), &u).is_identity() {
        out.push(Finding::new("u u^-1 is not the identity", data()));
    }
    let uv = fp.mul(&u, &v);
    if uv.len() > u.len() + v.len() {
        out.push(Finding::new("length is not subadditive", data()));
    }
    for i in 0..2 {
        let g = fp.factor(i);
        if fp.projection(&uv, i) != crate::almosthom::GroupOracle::mul(g, &fp.projection(&u, i), &fp.projection(&v, i))
        {
            out.push(Finding::new(format!("projection to factor {} is not multiplicative", i + 1), data()));
        }
    }
    if fp.parse(&fp.format(&u))? != u {
        out.push(Finding::new("labels do not round-trip", data()));
    }
    Ok(out)
}

/// Pairs of factors for the end-to-end suite: `(C2, C2)` and `(C2, C3)`.
pub(super) const FREE_PRODUCT_CASES: [(usize, usize); 2] = [(2, 2), (2, 3)];

/// Faithful exact representation of `C2` (sign, or the swap in
/// characteristic 2) or `C3` (companion of `x^2 + x + 1`).
fn cyclic_rep(field: &Field, order: usize) -> Result<AlmostHom> {
    let g = FiniteGroup::cyclic(order);
    let m = match order {
        2 if field.characteristic() != 2 => Matrix::from_ints(field, &[&[-1]]),
        2 => Matrix::from_ints(field, &[&[0, 1], &[1, 0]]),
        3 => Matrix::from_ints(field, &[&[0, -1], &[1, -1]]),
        _ => unreachable!("only C2 and C3 are used"),
    };
    hom_from_exact_rep(&window_from_finite_group(&g), &[(1, m)], LengthMode::Jordan)
}

pub(super) fn free_product(ctx: &SuiteCtx, f: Option<&Field>, i: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Finding>> {
    let field = need(f);
    let (a, b) = FREE_PRODUCT_CASES[i];
    let (r, theta) = (2, q(1, 8));
    let max_len = 4 * r;
    let (g1, g2) = (FiniteGroup::cyclic(a), FiniteGroup::cyclic(b));
    let quotient = build_separating_quotient(&g1, &g2, max_len, &theta, rng.gen(), &SearchLimits::default(), ctx.exec)?;
    quotient.verify(ctx.exec)?;
    let data = || json!({"certificate": quotient.to_json()});
    let mut out = Vec::new();
    let nontrivial = quotient.product.words_up_to(max_len).len() - 1;
    if quotient.checks.len() != nontrivial || quotient.checks.iter().any(|c| !c.nontrivial) {
        out.push(Finding::new(format!("certificate covers {} of {nontrivial} words", quotient.checks.len()), data()));
    }
    if quotient.theta_achieved > theta {
        out.push(Finding::new(format!("fixed fraction {} exceeds {theta}", quotient.theta_achieved), data()));
    }
    let zeta =
        zeta_build(&cyclic_rep(field, a)?, &cyclic_rep(field, b)?, &quotient, r, ZetaOptions::default(), ctx.exec)?;
    if zeta.report.defect != q(0, 1) {
        out.push(Finding::new(format!("defect {} on exact inputs", zeta.report.defect), data()));
    }
    let floor = (q_int(1) - &theta) / q_int(2);
    let sep = zeta.report.min_separation.clone().unwrap_or_else(|| q(1, 1));
    if sep < floor || sep < q(7, 16) {
        out.push(Finding::new(format!("minimum Jordan separation {sep} below {floor}"), data()));
    }
    if !zeta.trace.all_hold() {
        out.push(Finding::new("trace records a failed bound", data()));
    }
    Ok(out)
}
