//! Suites on single matrices and their sums and products.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{gen, is_q, need, Finding, SuiteCtx};
use crate::almosthom::{hom_from_exact_rep, window_from_finite_group, FiniteGroup, LengthMode};
use crate::amplify::restrict_hom;
use crate::error::{Error, Result};
use crate::exactfield::{elem_to_json, Elem, Field, FieldKind, Poly};
use crate::freeprod::{translation_rank_bound, BlockMonomial};
use crate::jordanlen::{eigenvalues, iota, iota_report, jordan_type, len_jordan, len_rank};
use crate::matspace::{matrix_to_json, perm_matrix, restrict_scalars, Matrix, Permutation};
use crate::rational::{q, q_int, q_ratio, q_to_json, Q};

fn mat(a: &Matrix) -> Value {
    matrix_to_json(a)
}

fn dim(ctx: &SuiteCtx, rng: &mut ChaCha8Rng, default: usize) -> usize {
    rng.gen_range(1..=ctx.max_dim_or(default))
}

pub(super) fn iota_bounds(ctx: &SuiteCtx, f: Option<&Field>, _: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Finding>> {
    let field = need(f);
    let n = dim(ctx, rng, 6);
    let a = gen::invertible(field, n, rng);
    let r = iota_report(&a, &[])?;
    Ok(r.violations()
        .into_iter()
        .map(|v| Finding::new(v, json!({"matrix": mat(&a), "report": r.to_json(field)})))
        .collect())
}

/// `(alpha, beta, s, t)` for all scalar pairs and `1 <= s <= t <= 5`.
pub(super) fn tensor_block_cases(field: &Field) -> Vec<(Elem, Elem, usize, usize)> {
    let pool = match field.kind() {
        FieldKind::Rationals => vec![field.one(), field.from_int(-1), field.from_int(2)],
        _ => field.units().expect("finite field"),
    };
    let mut out = Vec::new();
    for a in &pool {
        for b in &pool {
            for t in 1..=5 {
                for s in 1..=t {
                    out.push((a.clone(), b.clone(), s, t));
                }
            }
        }
    }
    out
}

pub(super) fn tensor_blocks(_: &SuiteCtx, f: Option<&Field>, i: usize, _: &mut ChaCha8Rng) -> Result<Vec<Finding>> {
    let field = need(f);
    let (a, b, s, t) = tensor_block_cases(field).swap_remove(i);
    let k = Matrix::jordan_block(field, &a, s).kron(&Matrix::jordan_block(field, &b, t))?;
    let jt = jordan_type(&k, &[])?;
    if jt.block_count() == s {
        return Ok(vec![]);
    }
    Ok(vec![Finding::new(
        format!("{} Jordan blocks instead of {s}", jt.block_count()),
        json!({"alpha": elem_to_json(field, &a), "beta": elem_to_json(field, &b), "s": s, "t": t, "jordan_type": jt.to_json()}),
    )])
}

pub(super) fn inseparable(_: &SuiteCtx, f: Option<&Field>, i: usize, _: &mut ChaCha8Rng) -> Result<Vec<Finding>> {
    let field = need(f);
    let p = field.characteristic() as usize;
    let deg = p.pow(i as u32 + 1);
    let poly = Poly::monomial(field, field.one(), deg).sub(&Poly::constant(field, field.t()?));
    let a = Matrix::companion(&poly)?;
    let jt = jordan_type(&a, std::slice::from_ref(&poly))?;
    let single = jt.components.len() == 1 && jt.components[0].blocks == vec![deg] && jt.block_count() == 1;
    if single {
        return Ok(vec![]);
    }
    Ok(vec![Finding::new(
        format!("companion of x^{deg} - t is not a single block of size {deg}"),
        json!({"matrix": mat(&a), "jordan_type": jt.to_json()}),
    )])
}

pub(super) fn iota_tensor(ctx: &SuiteCtx, f: Option<&Field>, _: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Finding>> {
    let field = need(f);
    let (n, m) = (dim(ctx, rng, 3), dim(ctx, rng, 3));
    let a = gen::invertible(field, n, rng);
    let b = gen::invertible(field, m, rng);
    let (ia, ib) = (iota(&a, &[])?, iota(&b, &[])?);
    let iab = iota(&a.kron(&b)?, &[])?;
    let one = q_int(1);
    let half = q(1, 2);
    let bound = &ia * &ib + (&one - &ia) * (&one - &ib);
    let data = || json!({"a": mat(&a), "b": mat(&b), "iota_a": q_to_json(&ia), "iota_b": q_to_json(&ib), "iota_ab": q_to_json(&iab)});
    let mut out = Vec::new();
    if iab > bound {
        out.push(Finding::new(format!("iota(A (x) B) = {iab} exceeds {bound}"), data()));
    }
    if ia <= half && ib <= half && iab > half {
        out.push(Finding::new(format!("iota(A (x) B) = {iab} exceeds 1/2"), data()));
    }
    Ok(out)
}

fn random_nonneg(rng: &mut ChaCha8Rng) -> Q {
    q(rng.gen_range(0..=40), rng.gen_range(1..=12))
}

pub(super) fn scalar_inequality(
    _: &SuiteCtx,
    _: Option<&Field>,
    _: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Finding>> {
    let x = random_nonneg(rng);
    let y = random_nonneg(rng);
    let x1 = &x + random_nonneg(rng);
    let y1 = &y + random_nonneg(rng);
    let lhs = &x1 * &y + &y1 * &x;
    let rhs = &x1 * &y1 + &x * &y;
    if lhs <= rhs {
        return Ok(vec![]);
    }
    let data = json!({"x": q_to_json(&x), "x1": q_to_json(&x1), "y": q_to_json(&y), "y1": q_to_json(&y1)});
    Ok(vec![Finding::new(format!("{lhs} > {rhs}"), data)])
}

fn rank_minus(a: &Matrix, g: &Elem) -> Result<usize> {
    Ok(a.scalar_minus(g)?.rank())
}

/// Scalars at which `rank(g - A)` can drop below `n`, plus 1.
fn candidates(field: &Field, mats: &[&Matrix]) -> Result<Vec<Elem>> {
    if field.order().is_some_and(|q| q <= 64) {
        return field.units();
    }
    let mut out = vec![field.one()];
    for a in mats {
        for e in eigenvalues(a, &[])? {
            if !out.contains(&e) {
                out.push(e);
            }
        }
    }
    Ok(out)
}

pub(super) fn sum_tensor_lengths(
    ctx: &SuiteCtx,
    f: Option<&Field>,
    _: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Finding>> {
    let field = need(f);
    let (n, m) = (dim(ctx, rng, 3), dim(ctx, rng, 3));
    let a = gen::invertible(field, n, rng);
    let b = gen::invertible(field, m, rng);
    let alpha = gen::scalar_pool(field).choose(rng).unwrap().clone();
    let (nq, mq, tot) = (q_ratio(n, 1), q_ratio(m, 1), q_ratio(n + m, 1));
    let (ra, rb) = (len_rank(&a)?, len_rank(&b)?);
    let (ja, jb) = (len_jordan(&a, &[])?.0, len_jordan(&b, &[])?.0);
    let data = || json!({"a": mat(&a), "b": mat(&b), "alpha": elem_to_json(field, &alpha)});
    let mut out = Vec::new();

    let rsum = len_rank(&a.direct_sum(&b)?)?;
    if &rsum * &tot != &nq * &ra + &mq * &rb {
        out.push(Finding::new(format!("rank length of A (+) B is {rsum}"), data()));
    }
    let ab = a.kron(&b)?;
    let rprod = len_rank(&ab)?;
    if rprod > &ra + &rb {
        out.push(Finding::new(format!("rank length of A (x) B is {rprod} > {} + {}", ra, rb), data()));
    }
    let jprod = len_jordan(&ab.scale(&alpha), &[])?.0;
    if jprod > &ja + &jb {
        out.push(Finding::new(format!("Jordan length of a(A (x) B) is {jprod} > {ja} + {jb}"), data()));
    }

    let aa = a.scale(&alpha);
    let jsum = len_jordan(&aa.direct_sum(&b)?, &[])?.0;
    let weighted = (&nq * &ja + &mq * &jb) / &tot;
    let cap1 = (&nq + &mq * &jb) / &tot;
    let cap2 = (&nq * &ja + &mq) / &tot;
    if jsum > cap1 || jsum > cap2 {
        out.push(Finding::new(format!("Jordan length of aA (+) B is {jsum}, above min({cap1}, {cap2})"), data()));
    }
    if jsum < weighted {
        out.push(Finding::new(format!("Jordan length of aA (+) B is {jsum}, below {weighted}"), data()));
    }
    // A scalar minimizing both ranks at once forces equality.
    let cands = candidates(field, &[&aa, &b])?;
    let ranks: Vec<(usize, usize)> =
        cands.iter().map(|g| Ok((rank_minus(&aa, g)?, rank_minus(&b, g)?))).collect::<Result<_>>()?;
    let min_a = ranks.iter().map(|r| r.0).min().unwrap();
    let min_b = ranks.iter().map(|r| r.1).min().unwrap();
    if q_ratio(min_a, n) != ja || q_ratio(min_b, m) != jb {
        out.push(Finding::new("Jordan length disagrees with a scan over candidate scalars", data()));
    }
    if ranks.contains(&(min_a, min_b)) && jsum != weighted {
        out.push(Finding::new(format!("common witness but Jordan length of aA (+) B is {jsum} != {weighted}"), data()));
    }
    Ok(out)
}

pub(super) fn length_invariance(
    ctx: &SuiteCtx,
    f: Option<&Field>,
    _: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Finding>> {
    let field = need(f);
    let n = dim(ctx, rng, 5);
    let a = gen::invertible(field, n, rng);
    let p = gen::conjugator(field, n, rng);
    let c = field.random_nonzero(rng);
    let conj = p.mul(&a)?.mul(&p.inverse()?)?;
    let data = || json!({"a": mat(&a), "p": mat(&p), "c": elem_to_json(field, &c)});
    let mut out = Vec::new();
    if len_rank(&conj)? != len_rank(&a)? {
        out.push(Finding::new("rank length changes under conjugation", data()));
    }
    let j = len_jordan(&a, &[])?.0;
    if len_jordan(&conj, &[])?.0 != j {
        out.push(Finding::new("Jordan length changes under conjugation", data()));
    }
    if len_jordan(&a.scale(&c), &[])?.0 != j {
        out.push(Finding::new("Jordan length changes under scaling", data()));
    }
    Ok(out)
}

pub(super) fn rank_invariance(
    ctx: &SuiteCtx,
    f: Option<&Field>,
    _: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Finding>> {
    let field = need(f);
    let (n, m) = (dim(ctx, rng, 6), dim(ctx, rng, 6));
    let r = rng.gen_range(0..=n.min(m));
    let a = if r == 0 { Matrix::zeros(field, n, m) } else { gen::low_rank_rect(field, n, m, r, rng) };
    let rank = a.rank();
    let pr = perm_matrix(field, &Permutation::random(n, rng));
    let pc = perm_matrix(field, &Permutation::random(m, rng));
    let g = Matrix::random_invertible(field, n, rng);
    let h = Matrix::random_invertible(field, m, rng);
    let mut out = Vec::new();
    for (what, b) in [("permutations", pr.mul(&a)?.mul(&pc)?), ("invertible factors", g.mul(&a)?.mul(&h)?)] {
        if b.rank() != rank {
            out.push(Finding::new(format!("rank changes under {what}"), json!({"a": mat(&a), "b": mat(&b)})));
        }
    }
    Ok(out)
}

pub(super) fn kron_rank(ctx: &SuiteCtx, f: Option<&Field>, _: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Finding>> {
    let field = need(f);
    let (n, m) = (dim(ctx, rng, 4), dim(ctx, rng, 4));
    let a = gen::low_rank_rect(field, n, m, rng.gen_range(1..=n.min(m)), rng);
    let b = gen::low_rank_rect(field, m, n, rng.gen_range(1..=n.min(m)), rng);
    let mut out = Vec::new();
    if a.kron(&b)?.rank() != a.rank() * b.rank() {
        out.push(Finding::new("rank(A (x) B) != rank(A) rank(B)", json!({"a": mat(&a), "b": mat(&b)})));
    }
    let c = gen::invertible(field, n, rng);
    let d = gen::invertible(field, m, rng);
    let lhs = c.kron(&d)?.one_minus()?.kernel_dim();
    let rhs = c.one_minus()?.kernel_dim() * d.one_minus()?.kernel_dim();
    if lhs < rhs {
        out.push(Finding::new(format!("dim ker(1 - A (x) B) = {lhs} < {rhs}"), json!({"a": mat(&c), "b": mat(&d)})));
    }
    Ok(out)
}

/// A unit of multiplicative order exactly `k`.
fn unit_of_order(field: &Field, k: usize) -> Option<Elem> {
    let units = field.units().ok()?;
    units.into_iter().find(|u| {
        (1..k).all(|e| !field.is_one(&field.pow_u64(u, e as u64))) && field.is_one(&field.pow_u64(u, k as u64))
    })
}

fn restricted_hom_check(field: &Field, rng: &mut ChaCha8Rng, exec: crate::par::Exec) -> Result<Vec<Finding>> {
    let order = field.order().ok_or(Error::NotFinite)? as usize;
    let k = (3..order).find(|d| (order - 1).is_multiple_of(*d)).unwrap_or(order - 1);
    let omega = unit_of_order(field, k).ok_or_else(|| Error::Input(format!("no unit of order {k}")))?;
    let n = rng.gen_range(1..=3);
    let diag: Vec<Elem> = (0..n).map(|_| field.pow_u64(&omega, rng.gen_range(0..k as u64))).collect();
    let g = FiniteGroup::cyclic(k);
    let rep = hom_from_exact_rep(&window_from_finite_group(&g), &[(1, Matrix::diag(field, &diag))], LengthMode::Rank)?
        .direct_sum_identity(2);
    let mut bent = rep.clone();
    let e = rng.gen_range(1..k);
    bent.images[e] = bent.images[e].mul(&gen::pad_unipotent(field, rep.dim, 2, rng))?;
    let hom = gen::conjugate_random(&bent, rng)?;
    let (res, _) = restrict_hom(&hom, exec)?;
    let mut out = Vec::new();
    for g in 0..hom.window.len() {
        if len_rank(&hom.images[g])? != len_rank(&res.images[g])? {
            out.push(Finding::new(
                format!("rank length of {} changes under restriction", hom.window.label(g)),
                json!({"hom": crate::almosthom::hom_to_json(&hom)}),
            ));
        }
    }
    if hom.defect()? != res.defect()? {
        out.push(Finding::new(
            "rank defect changes under restriction",
            json!({"hom": crate::almosthom::hom_to_json(&hom)}),
        ));
    }
    Ok(out)
}

pub(super) fn restrict_scalars_suite(
    ctx: &SuiteCtx,
    f: Option<&Field>,
    i: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Finding>> {
    let field = need(f);
    let n = dim(ctx, rng, 4);
    let a = gen::invertible(field, n, rng);
    let r = restrict_scalars(&a)?;
    let d = field.degree();
    let mut out = Vec::new();
    let (lhs, rhs) = (r.one_minus()?.kernel_dim(), d * a.one_minus()?.kernel_dim());
    if r.rows() != d * n || lhs != rhs {
        out.push(Finding::new(
            format!("restricted fixed space has dimension {lhs}, expected {rhs}"),
            json!({"a": mat(&a)}),
        ));
    }
    if i.is_multiple_of(10) {
        out.extend(restricted_hom_check(field, rng, ctx.exec)?);
    }
    Ok(out)
}

/// A permutation of `n` points with exactly `f` fixed points (`f != n - 1`).
fn permutation_with_fixed(n: usize, f: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut pts: Vec<usize> = (0..n).collect();
    pts.shuffle(rng);
    let moved = &pts[f..];
    loop {
        let sigma = Permutation::random(moved.len(), rng);
        if sigma.fixed_points() > 0 {
            continue;
        }
        let mut images: Vec<usize> = (0..n).collect();
        for (j, &x) in moved.iter().enumerate() {
            images[x] = moved[sigma.apply(j)];
        }
        return Permutation::new(images).expect("bijection");
    }
}

pub(super) fn perm_rank(_: &SuiteCtx, f: Option<&Field>, i: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Finding>> {
    let field = need(f);
    let n = rng.gen_range(2..=8);
    let m = rng.gen_range(1..=(64 / n).min(8));
    let fixed = if i.is_multiple_of(2) {
        0
    } else {
        let mut k = rng.gen_range(1..=n);
        if k == n - 1 {
            k = n;
        }
        k
    };
    let pi = permutation_with_fixed(n, fixed, rng);
    let blocks: Vec<Matrix> = (0..n).map(|_| Matrix::random_invertible(field, m, rng)).collect();
    let data = || json!({"perm": pi.to_json(), "blocks": blocks.iter().map(mat).collect::<Vec<_>>()});
    let mut out = Vec::new();
    let rank = match translation_rank_bound(&pi, &blocks) {
        Ok((rank, _)) => rank,
        Err(Error::BoundViolated(msg)) => return Ok(vec![Finding::new(msg, data())]),
        Err(e) => return Err(e),
    };
    let mono = BlockMonomial::new(pi.clone(), blocks.clone())?;
    let dense = mono.to_dense();
    if dense.one_minus()?.rank() != rank {
        out.push(Finding::new("cycle rank formula disagrees with dense elimination", data()));
    }
    let bound = q_ratio(pi.moved_points(), 2 * n);
    let (lj, _) = mono.len_jordan(&[])?;
    if lj < bound {
        out.push(Finding::new(format!("Jordan length {lj} below {bound}"), data()));
    }
    if field.is_finite() && !is_q(f) && len_jordan(&dense, &[])?.0 != lj {
        out.push(Finding::new("cycle Jordan length disagrees with dense elimination", data()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn tensor_case_counts() {
        let counts: Vec<usize> = ["F_2", "F_3", "F_5", "Q"]
            .iter()
            .map(|f| tensor_block_cases(&super::super::parse_field(f).unwrap()).len())
            .collect();
        assert_eq!(counts, vec![15, 60, 240, 135]);
    }

    #[test]
    fn permutations_with_fixed_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 2..8 {
            for f in (0..=n).filter(|&f| f + 1 != n) {
                assert_eq!(permutation_with_fixed(n, f, &mut rng).fixed_points(), f);
            }
        }
    }

    #[test]
    fn orders_of_units() {
        let f9 = super::super::parse_field("F_9").unwrap();
        let w = unit_of_order(&f9, 4).unwrap();
        assert!(f9.is_one(&f9.pow_u64(&w, 4)));
        assert!(!f9.is_one(&f9.pow_u64(&w, 2)));
        assert!(unit_of_order(&f9, 5).is_none());
    }
}
