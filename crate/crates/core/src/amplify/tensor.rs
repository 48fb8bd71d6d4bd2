use super::trace::{AmplifyTrace, BoundCheck, StageRecord};
use crate::almosthom::{AlmostHom, LengthMode};
use crate::error::{Error, Result};
use crate::jordanlen::f_schedule;
use crate::matspace::Matrix;
use crate::par::{self, Exec};
use crate::rational::{q_int, q_ratio, Q};

pub const DEFAULT_DIM_CAP: usize = 4096;

/// `n^(2^m)`, failing when it exceeds `cap`.
pub fn tower_dim(n: usize, m: u32, cap: usize) -> Result<usize> {
    let mut d: u128 = n as u128;
    for _ in 0..m {
        d = d.saturating_mul(d);
        if d > cap as u128 {
            return Err(Error::DimensionCap { dim: d, cap });
        }
    }
    if d > cap as u128 {
        return Err(Error::DimensionCap { dim: d, cap });
    }
    Ok(d as usize)
}

fn require_normalized(hom: &AlmostHom) -> Result<()> {
    if hom.is_normalized() {
        Ok(())
    } else {
        Err(Error::Precondition("phi(1) must be the identity".into()))
    }
}

fn pow2(m: u32) -> Q {
    q_int(1i64 << m)
}

/// Applies `g -> phi(g) (x) phi(g)` `m` times.
pub fn tensor_square_iterate(hom: &AlmostHom, m: u32, cap: usize, exec: Exec) -> Result<(AlmostHom, AmplifyTrace)> {
    require_normalized(hom)?;
    if hom.mode != LengthMode::Jordan {
        return Err(Error::Precondition("tensor squaring works on Jordan-mode homs".into()));
    }
    tower_dim(hom.dim, m, cap)?;
    let mut trace = AmplifyTrace::new("tensor_square_iterate");
    let mut cur = hom.clone();
    trace.stages.push(StageRecord::measure(0, &cur, exec)?);
    let d0 = trace.stages[0].defect.clone();
    for k in 1..=m {
        let images = par::map(exec, &cur.images, |a| a.kron(a)).into_iter().collect::<Result<Vec<_>>>()?;
        cur = AlmostHom { images, dim: cur.dim * cur.dim, ..cur };
        let rec = StageRecord::measure(k, &cur, exec)?;
        let prev = trace.stages.last().unwrap().defect.clone();
        trace.assert(BoundCheck::at_most(
            format!("defect at stage {k} vs twice stage {}", k - 1),
            rec.defect.clone(),
            prev * q_int(2),
        ))?;
        trace.assert(BoundCheck::at_most(
            format!("defect at stage {k} vs 2^{k} times stage 0"),
            rec.defect.clone(),
            &d0 * pow2(k),
        ))?;
        trace.stages.push(rec);
    }
    Ok((cur, trace))
}

/// `g -> phi_m(g) (+) (phi(g) (x) 1)` with both summands of dimension
/// `n^(2^m)`. For `m = 0` this is `phi (+) phi`.
pub fn rank_amplify(hom: &AlmostHom, m: u32, cap: usize, exec: Exec) -> Result<(AlmostHom, AmplifyTrace)> {
    require_normalized(hom)?;
    if hom.mode != LengthMode::Rank {
        return Err(Error::Precondition("rank amplification works on rank-mode homs".into()));
    }
    let big = tower_dim(hom.dim, m, cap)?;
    if 2 * big > cap {
        return Err(Error::DimensionCap { dim: 2 * big as u128, cap });
    }
    let (tower, _) = tensor_square_iterate(&hom.clone().with_mode(LengthMode::Jordan), m, cap, exec)?;
    let pad = Matrix::identity(&hom.field, big / hom.dim);
    let idx: Vec<usize> = (0..hom.window.len()).collect();
    let images = par::map(exec, &idx, |&g| hom.images[g].kron(&pad).and_then(|chi| tower.images[g].direct_sum(&chi)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let out = AlmostHom { images, dim: 2 * big, mode: LengthMode::Rank, ..hom.clone() };
    let mut trace = AmplifyTrace::new("rank_amplify");
    trace.stages.push(StageRecord::measure(0, hom, exec)?);
    let rec = StageRecord::measure(m, &out, exec)?;
    let d0 = trace.stages[0].defect.clone();
    trace.assert(BoundCheck::at_most("rank defect vs 2^m times input", rec.defect.clone(), d0 * pow2(m)))?;
    trace.stages.push(rec);
    Ok((out, trace))
}

fn require_separation(hom: &AlmostHom, delta: &Q, exec: Exec) -> Result<()> {
    let q = hom.quality_with(exec)?;
    if let Some(s) = q.min_separation {
        if s < *delta {
            return Err(Error::Precondition(format!("min separation {s} is below delta = {delta}")));
        }
    }
    Ok(())
}

/// Tensor squaring with `m = f_schedule(delta, eps)` stages, asserting
/// `min separation >= 1/4 - eps` (Jordan) and `defect <= eps` whenever the
/// input defect is at most `eps / 2^m`.
pub fn amplify_jordan(
    hom: &AlmostHom,
    delta: &Q,
    eps: &Q,
    cap: usize,
    exec: Exec,
) -> Result<(AlmostHom, AmplifyTrace)> {
    require_separation(hom, delta, exec)?;
    let m = f_schedule(delta, eps)?;
    let (out, mut trace) = tensor_square_iterate(hom, m, cap, exec)?;
    let last = trace.stages.last().unwrap().clone();
    if let Some(s) = last.min_separation {
        trace.assert(BoundCheck::at_least("Jordan separation vs 1/4 - eps", s, q_ratio(1, 4) - eps))?;
    }
    if trace.stages[0].defect <= eps / pow2(m) {
        trace.assert(BoundCheck::at_most("defect vs eps", last.defect, eps.clone()))?;
    }
    Ok((out, trace))
}

/// Rank amplification with the smallest `m` such that
/// `f^m(1 - delta) <= 1/2 + 4 eps`, asserting `min separation >= 1/8 - eps`
/// (rank) and `defect <= eps` whenever the input defect is at most
/// `eps / 2^m`.
pub fn amplify_rank(hom: &AlmostHom, delta: &Q, eps: &Q, cap: usize, exec: Exec) -> Result<(AlmostHom, AmplifyTrace)> {
    require_separation(hom, delta, exec)?;
    let m = f_schedule(delta, &(eps * q_int(2)))?;
    let (out, mut trace) = rank_amplify(hom, m, cap, exec)?;
    let last = trace.stages.last().unwrap().clone();
    if let Some(s) = last.min_separation {
        trace.assert(BoundCheck::at_least("rank separation vs 1/8 - eps", s, q_ratio(1, 8) - eps))?;
    }
    if trace.stages[0].defect <= eps / pow2(m) {
        trace.assert(BoundCheck::at_most("defect vs eps", last.defect, eps.clone()))?;
    }
    Ok((out, trace))
}
