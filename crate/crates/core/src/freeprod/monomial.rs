use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exactfield::{roots_in_field, Elem, Field, FieldKind, Poly};
use crate::jordanlen::eigenvalues;
use crate::matspace::{Matrix, Permutation};
use crate::rational::{exact_root, q_ratio, Q};

/// Finite fields up to this order test every unit as a candidate scalar.
const ENUMERATE_BELOW: u128 = 64;

#[derive(Clone, Debug, PartialEq)]
enum Blocks {
    Constant(Matrix),
    PerPoint(Vec<Matrix>),
}

/// The map `e_x (x) v -> e_{pi(x)} (x) A_x v` on `K^N (x) K^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockMonomial {
    perm: Permutation,
    blocks: Blocks,
    m: usize,
    field: Field,
}

/// Cycles of the permutation grouped by their product of blocks.
struct CycleClass {
    len: usize,
    product: Matrix,
    count: usize,
}

fn check_block(b: &Matrix, field: &Field, m: usize) -> Result<()> {
    if b.field() != field {
        return Err(Error::FieldMismatch(format!("block over {} among blocks over {field}", b.field())));
    }
    if b.rows() != m || b.cols() != m {
        return Err(Error::Shape(format!("{}x{} block among {m}x{m} blocks", b.rows(), b.cols())));
    }
    Ok(())
}

impl BlockMonomial {
    /// `P_pi (x) B`.
    pub fn constant(perm: Permutation, block: Matrix) -> Result<BlockMonomial> {
        if !block.is_square() {
            return Err(Error::Shape("block must be square".into()));
        }
        let (m, field) = (block.rows(), block.field().clone());
        Ok(BlockMonomial { perm, blocks: Blocks::Constant(block), m, field })
    }

    /// One block per point of the permutation domain.
    pub fn new(perm: Permutation, blocks: Vec<Matrix>) -> Result<BlockMonomial> {
        if blocks.len() != perm.len() {
            return Err(Error::Shape(format!("{} blocks for a permutation of {} points", blocks.len(), perm.len())));
        }
        let first = blocks.first().ok_or_else(|| Error::Shape("no blocks".into()))?;
        let (m, field) = (first.rows(), first.field().clone());
        for b in &blocks {
            check_block(b, &field, m)?;
        }
        Ok(BlockMonomial { perm, blocks: Blocks::PerPoint(blocks), m, field })
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn block_dim(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.perm.len() * self.m
    }

    fn block(&self, x: usize) -> &Matrix {
        match &self.blocks {
            Blocks::Constant(b) => b,
            Blocks::PerPoint(bs) => &bs[x],
        }
    }

    fn cycle_classes(&self) -> Result<Vec<CycleClass>> {
        let cycles = self.perm.cycles();
        match &self.blocks {
            Blocks::Constant(b) => {
                let mut by_len: BTreeMap<usize, usize> = BTreeMap::new();
                for c in &cycles {
                    *by_len.entry(c.len()).or_default() += 1;
                }
                by_len.into_iter().map(|(len, count)| Ok(CycleClass { len, product: b.pow(len)?, count })).collect()
            }
            Blocks::PerPoint(bs) => cycles
                .iter()
                .map(|c| {
                    // Walking x_1 -> x_2 = pi(x_1) -> ... accumulates A_{x_l} ... A_{x_1}.
                    let mut product = Matrix::identity(&self.field, self.m);
                    for &x in c {
                        product = bs[x].mul(&product)?;
                    }
                    Ok(CycleClass { len: c.len(), product, count: 1 })
                })
                .collect(),
        }
    }

    fn rank_with(&self, classes: &[CycleClass], alpha: &Elem) -> Result<usize> {
        let mut rank = 0;
        for c in classes {
            let a = self.field.pow_u64(alpha, c.len as u64);
            rank += c.count * (c.len * self.m - c.product.scalar_minus(&a)?.kernel_dim());
        }
        Ok(rank)
    }

    /// `rank(alpha - M)` for nonzero `alpha`, one cycle at a time: a cycle of
    /// length `l` with block product `C` contributes `l m - dim ker(alpha^l - C)`.
    pub fn rank_scalar_minus(&self, alpha: &Elem) -> Result<usize> {
        if self.field.is_zero(alpha) {
            return Err(Error::Precondition("the cycle formula needs a nonzero scalar".into()));
        }
        self.rank_with(&self.cycle_classes()?, alpha)
    }

    pub fn rank_one_minus(&self) -> Result<usize> {
        self.rank_scalar_minus(&self.field.one())
    }

    pub fn len_rank(&self) -> Result<Q> {
        Ok(q_ratio(self.rank_one_minus()?, self.dim()))
    }

    /// Jordan length with a minimizing scalar. Only scalars whose power
    /// `alpha^l` is an eigenvalue of some cycle product can lower the rank.
    pub fn len_jordan(&self, hints: &[Poly]) -> Result<(Q, Option<Elem>)> {
        let classes = self.cycle_classes()?;
        let f = &self.field;
        let mut candidates: BTreeMap<_, Elem> = BTreeMap::new();
        if f.order().is_some_and(|q| q <= ENUMERATE_BELOW) {
            for a in f.units()? {
                candidates.insert(f.sort_key(&a), a);
            }
        } else {
            for c in &classes {
                for lambda in eigenvalues(&c.product, hints)? {
                    for a in nth_roots(f, &lambda, c.len, hints)? {
                        candidates.insert(f.sort_key(&a), a);
                    }
                }
            }
        }
        let mut best: Option<(usize, Elem)> = None;
        for a in candidates.into_values() {
            let r = self.rank_with(&classes, &a)?;
            if best.as_ref().is_none_or(|(b, _)| r < *b) {
                best = Some((r, a));
            }
        }
        let dim = self.dim();
        Ok(match best {
            Some((r, a)) if r < dim => (q_ratio(r, dim), Some(a)),
            _ => (q_ratio(1, 1), None),
        })
    }

    /// The matrix on `K^N (x) K^m`, basis `e_x (x) e_j` at index `x m + j`.
    pub fn to_dense(&self) -> Matrix {
        let m = self.m;
        let mut out = Matrix::zeros(&self.field, self.dim(), self.dim());
        for x in 0..self.perm.len() {
            let y = self.perm.apply(x);
            let b = self.block(x);
            for i in 0..m {
                for j in 0..m {
                    let e = b.get(i, j);
                    if !self.field.is_zero(e) {
                        out.set(y * m + i, x * m + j, e.clone());
                    }
                }
            }
        }
        out
    }
}

/// Solutions of `a^k = lambda` in the field of `lambda`.
pub fn nth_roots(field: &Field, lambda: &Elem, k: usize, hints: &[Poly]) -> Result<Vec<Elem>> {
    if k == 1 {
        return Ok(vec![lambda.clone()]);
    }
    if let FieldKind::Rationals = field.kind() {
        let r = field.as_rational(lambda).unwrap();
        let e = u32::try_from(k).map_err(|_| Error::Input(format!("root of order {k}")))?;
        let odd = k % 2 == 1;
        if r.is_negative() && !odd {
            return Ok(vec![]);
        }
        let (Some(num), Some(den)) = (exact_root(&r.numer().abs(), e), exact_root(r.denom(), e)) else {
            return Ok(vec![]);
        };
        let root = BigRational::new(if r.is_negative() { -num } else { num }, den);
        let mut out = vec![field.rational(&root)?];
        if !odd {
            out.push(field.rational(&-root)?);
        }
        return Ok(out);
    }
    let poly = Poly::monomial(field, field.one(), k).sub(&Poly::constant(field, lambda.clone()));
    Ok(roots_in_field(&poly, hints)?.into_iter().map(|(a, _)| a).collect())
}

/// Exact `rank(1 - (P_pi (x) 1_m) A)` for `A = diag(A_1, ..., A_n)`, and the
/// lower bound `(n - f) m / 2` where `f` counts the fixed points of `pi`.
/// Fails with `BoundViolated` if the rank falls below the bound.
pub fn translation_rank_bound(pi: &Permutation, blocks: &[Matrix]) -> Result<(usize, Q)> {
    let mono = BlockMonomial::new(pi.clone(), blocks.to_vec())?;
    let rank = mono.rank_one_minus()?;
    let bound = q_ratio(pi.moved_points() * mono.block_dim(), 2);
    if q_ratio(rank, 1) < bound {
        return Err(Error::BoundViolated(format!("rank {rank} below {bound} for {pi:?}")));
    }
    Ok((rank, bound))
}
