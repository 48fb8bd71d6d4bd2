use super::monomial::BlockMonomial;
use super::quotient::SeparatingQuotient;
use super::word::ReducedWord;
use crate::almosthom::{quotient_length, AlmostHom, GroupWindow, LengthMode, QualityReport};
use crate::amplify::{AmplifyTrace, BoundCheck};
use crate::error::{Error, Result};
use crate::exactfield::Field;
use crate::matspace::{perm_matrix, Matrix};
use crate::par::{self, Exec};
use crate::rational::{q_int, q_ratio, Q};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ZetaOptions {
    /// Replace both factor maps by their involution doublings first.
    pub double_involutions: bool,
}

/// The almost homomorphism of `G_1 * G_2` on `K^N (x) (K^n (+) K^m)` given by
/// `zeta_w = P_{sigma(w)} (x) (phi_a (+) psi_b)`, where `sigma` is the
/// permutation quotient and `a`, `b` are the projections of `w` to the
/// factors. Images are kept in this factored form; [`Zeta::to_hom`]
/// materializes them.
#[derive(Clone, Debug)]
pub struct Zeta {
    pub quotient: SeparatingQuotient,
    pub radius: usize,
    pub window: GroupWindow,
    pub words: Vec<ReducedWord>,
    pub phi: AlmostHom,
    pub psi: AlmostHom,
    pub field: Field,
    /// `n + m`.
    pub block_dim: usize,
    /// `N (n + m)`.
    pub dim: usize,
    /// Jordan-mode defect over all pairs of window words, and the Jordan
    /// length of every nontrivial window word.
    pub report: QualityReport,
    pub trace: AmplifyTrace,
    elem_index: [Vec<usize>; 2],
}

fn place(out: &mut Matrix, block: &Matrix, r0: usize, c0: usize) {
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            out.set(r0 + i, c0 + j, block.get(i, j).clone());
        }
    }
}

/// `g -> phi_g (+) phi_g` for `g^2 != 1` and `g -> [[0, phi_g^{-1}], [phi_g, 0]]`
/// for involutions. The result is inverse-compatible but need not be an
/// almost homomorphism: in `C_4` the square of a generator is an involution.
pub fn double_involutions(hom: &AlmostHom) -> Result<AlmostHom> {
    let n = hom.dim;
    let mut images = Vec::with_capacity(hom.images.len());
    for (g, a) in hom.images.iter().enumerate() {
        if hom.window.is_order2(g) {
            let mut out = Matrix::zeros(&hom.field, 2 * n, 2 * n);
            place(&mut out, &a.inverse()?, 0, n);
            place(&mut out, a, n, 0);
            images.push(out);
        } else {
            images.push(a.direct_sum(a)?);
        }
    }
    AlmostHom::new(hom.window.clone(), images, hom.mode)
}

fn element_index(hom: &AlmostHom, labels: &[String], which: &str) -> Result<Vec<usize>> {
    labels
        .iter()
        .map(|l| {
            hom.window
                .index_of(l)
                .ok_or_else(|| Error::Precondition(format!("the {which} factor map has no image for `{l}`")))
        })
        .collect()
}

struct PairData {
    jordan: Q,
    rank: Q,
    factor_rank: [Q; 2],
}

impl Zeta {
    fn factor_image(&self, i: usize, elem: usize) -> &Matrix {
        let hom = if i == 0 { &self.phi } else { &self.psi };
        hom.image(self.elem_index[i][elem])
    }

    /// `phi_a (+) psi_b`.
    pub fn block(&self, w: &ReducedWord) -> Result<Matrix> {
        let p = &self.quotient.product;
        self.factor_image(0, p.projection(w, 0)).direct_sum(self.factor_image(1, p.projection(w, 1)))
    }

    pub fn monomial(&self, w: &ReducedWord) -> Result<BlockMonomial> {
        BlockMonomial::constant(self.quotient.image(w), self.block(w)?)
    }

    fn pair(&self, g: &ReducedWord, h: &ReducedWord) -> Result<PairData> {
        let p = &self.quotient.product;
        let gh = p.mul(g, h);
        if self.quotient.image(g).compose(&self.quotient.image(h)) != self.quotient.image(&gh) {
            return Err(Error::Inconsistent(format!(
                "sigma is not multiplicative on `{}`, `{}`",
                p.format(g),
                p.format(h)
            )));
        }
        // zeta_g zeta_h zeta_gh^{-1} = 1_N (x) Z, and both lengths of 1_N (x) Z equal those of Z.
        let mut xs = Vec::with_capacity(2);
        let mut ys = Vec::with_capacity(2);
        let mut factor_rank = [q_int(0), q_int(0)];
        for (i, rank) in factor_rank.iter_mut().enumerate() {
            let (a, c, ac) = (p.projection(g, i), p.projection(h, i), p.projection(&gh, i));
            let x = self.factor_image(i, a).mul(self.factor_image(i, c))?;
            let y = self.factor_image(i, ac).clone();
            *rank = quotient_length(&x, &y, LengthMode::Rank)?;
            xs.push(x);
            ys.push(y);
        }
        let x = xs[0].direct_sum(&xs[1])?;
        let y = ys[0].direct_sum(&ys[1])?;
        Ok(PairData {
            jordan: quotient_length(&x, &y, LengthMode::Jordan)?,
            rank: quotient_length(&x, &y, LengthMode::Rank)?,
            factor_rank,
        })
    }

    /// Dense almost homomorphism on the window, in Jordan mode.
    pub fn to_hom(&self, dim_cap: usize) -> Result<AlmostHom> {
        if self.dim > dim_cap {
            return Err(Error::DimensionCap { dim: self.dim as u128, cap: dim_cap });
        }
        let images = self
            .words
            .iter()
            .map(|w| perm_matrix(&self.field, &self.quotient.image(w)).kron(&self.block(w)?))
            .collect::<Result<Vec<_>>>()?;
        AlmostHom::new(self.window.clone(), images, LengthMode::Jordan)
    }
}

/// Builds `zeta` on the window of reduced words of syllable length at most
/// `r`, then measures it and asserts:
/// - the quotient map is multiplicative on all window pairs,
/// - every pair's Jordan defect is at most its rank defect
///   `(n l_r(phi triple) + m l_r(psi triple)) / (n + m)`,
/// - every nontrivial window word has Jordan length at least `(1 - theta) / 2`.
///
/// `phi` and `psi` must be normalized and cover every element of their factor.
pub fn zeta_build(
    phi: &AlmostHom,
    psi: &AlmostHom,
    quotient: &SeparatingQuotient,
    r: usize,
    opts: ZetaOptions,
    exec: Exec,
) -> Result<Zeta> {
    if r == 0 {
        return Err(Error::Precondition("radius must be at least 1".into()));
    }
    if quotient.max_len < 2 * r {
        return Err(Error::Precondition(format!(
            "quotient verified to length {} but radius {r} needs {}",
            quotient.max_len,
            2 * r
        )));
    }
    if phi.field != psi.field {
        return Err(Error::FieldMismatch(format!("factor maps over {} and {}", phi.field, psi.field)));
    }
    if !phi.is_normalized() || !psi.is_normalized() {
        return Err(Error::Precondition("factor maps must send 1 to the identity".into()));
    }
    let (phi, psi) = if opts.double_involutions {
        (double_involutions(phi)?, double_involutions(psi)?)
    } else {
        (phi.clone(), psi.clone())
    };
    let product = &quotient.product;
    let elem_index = [
        element_index(&phi, product.factor(0).labels(), "first")?,
        element_index(&psi, product.factor(1).labels(), "second")?,
    ];
    let (window, words) = product.ball(r);
    let block_dim = phi.dim + psi.dim;
    let mut zeta = Zeta {
        quotient: quotient.clone(),
        radius: r,
        window,
        words,
        field: phi.field.clone(),
        dim: quotient.degree * block_dim,
        block_dim,
        phi,
        psi,
        report: QualityReport {
            mode: LengthMode::Jordan,
            defect: q_int(0),
            worst_pair: None,
            evaluated: 0,
            skipped: 0,
            separation: Vec::new(),
            min_separation: None,
        },
        trace: AmplifyTrace::new("zeta"),
        elem_index,
    };

    let id = zeta.window.identity();
    if !zeta.block(&zeta.words[id])?.is_identity() || !zeta.quotient.image(&zeta.words[id]).is_identity() {
        return Err(Error::Inconsistent("zeta does not send 1 to the identity".into()));
    }

    let w = zeta.window.len();
    let pairs: Vec<(usize, usize)> = (0..w).flat_map(|g| (0..w).map(move |h| (g, h))).collect();
    let data = par::map(exec, &pairs, |&(g, h)| zeta.pair(&zeta.words[g], &zeta.words[h]));
    let mut defect = q_int(0);
    let mut worst = None;
    let mut factor_defect = [q_int(0), q_int(0)];
    for (&(g, h), d) in pairs.iter().zip(data) {
        let d = d?;
        if d.jordan > d.rank {
            return Err(Error::BoundViolated(format!(
                "Jordan defect {} above rank defect {} at ({}, {})",
                d.jordan,
                d.rank,
                zeta.window.label(g),
                zeta.window.label(h)
            )));
        }
        if d.jordan > defect {
            defect = d.jordan;
            worst = Some((g, h));
        }
        for (worst, r) in factor_defect.iter_mut().zip(&d.factor_rank) {
            if r > worst {
                *worst = r.clone();
            }
        }
    }
    let (n, m) = (zeta.phi.dim, zeta.psi.dim);
    let weighted = (&factor_defect[0] * q_ratio(n, 1) + &factor_defect[1] * q_ratio(m, 1)) / q_ratio(n + m, 1);
    zeta.trace.assert(BoundCheck::at_most(
        "defect <= weighted rank defect of the factor maps",
        defect.clone(),
        weighted,
    ))?;

    let nontrivial: Vec<usize> = (0..w).filter(|&g| g != id).collect();
    let lens = par::map(exec, &nontrivial, |&g| zeta.monomial(&zeta.words[g])?.len_jordan(&[]));
    let mut separation = Vec::with_capacity(nontrivial.len());
    for (&g, l) in nontrivial.iter().zip(lens) {
        separation.push((g, l?.0));
    }
    let min_separation = separation.iter().map(|(_, s)| s.clone()).min();
    if let Some(min) = &min_separation {
        let half = q_ratio(1, 2);
        let achieved = (q_int(1) - &zeta.quotient.theta_achieved) * &half;
        let promised = (q_int(1) - &zeta.quotient.theta) * &half;
        zeta.trace.assert(BoundCheck::at_least("min separation >= (1 - theta_achieved)/2", min.clone(), achieved))?;
        zeta.trace.assert(BoundCheck::at_least("min separation >= (1 - theta)/2", min.clone(), promised))?;
    }
    zeta.report = QualityReport {
        mode: LengthMode::Jordan,
        defect,
        worst_pair: worst,
        evaluated: pairs.len(),
        skipped: 0,
        separation,
        min_separation,
    };
    Ok(zeta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::almosthom::{hom_from_exact_rep, window_from_finite_group, FiniteGroup};
    use crate::freeprod::quotient::{build_separating_quotient, SearchLimits};
    use crate::jordanlen::len_jordan;
    use crate::rational::q;

    fn sign_rep(field: &Field) -> AlmostHom {
        let w = window_from_finite_group(&FiniteGroup::cyclic(2));
        let g = w.index_of("g1").unwrap();
        hom_from_exact_rep(&w, &[(g, Matrix::scalar(field, 1, &field.from_int(-1)))], LengthMode::Jordan).unwrap()
    }

    fn rotation_rep(field: &Field) -> AlmostHom {
        // Order-3 rotation x -> -x - 1 on the plane, as the companion of x^2 + x + 1.
        let w = window_from_finite_group(&FiniteGroup::cyclic(3));
        let g = w.index_of("g1").unwrap();
        let c = Matrix::from_ints(field, &[&[0, -1], &[1, -1]]);
        hom_from_exact_rep(&w, &[(g, c)], LengthMode::Jordan).unwrap()
    }

    fn quotient(l: usize, seed: u64) -> SeparatingQuotient {
        build_separating_quotient(
            &FiniteGroup::cyclic(2),
            &FiniteGroup::cyclic(3),
            l,
            &q(1, 8),
            seed,
            &SearchLimits::default(),
            Exec::default(),
        )
        .unwrap()
    }

    #[test]
    fn exact_inputs_give_an_exact_map() {
        for field in [Field::rationals(), Field::prime(5).unwrap()] {
            let sq = quotient(4, 1);
            let z =
                zeta_build(&sign_rep(&field), &rotation_rep(&field), &sq, 2, ZetaOptions::default(), Exec::default())
                    .unwrap();
            assert_eq!(z.report.defect, q(0, 1));
            assert!(z.report.min_separation.clone().unwrap() >= q(7, 16));
            assert!(z.trace.all_hold());
        }
    }

    #[test]
    fn factored_lengths_match_dense_matrices() {
        let field = Field::prime(5).unwrap();
        let sq = quotient(2, 4);
        let z = zeta_build(&sign_rep(&field), &rotation_rep(&field), &sq, 1, ZetaOptions::default(), Exec::default())
            .unwrap();
        let hom = z.to_hom(100_000).unwrap();
        for (g, sep) in &z.report.separation {
            assert_eq!(len_jordan(&hom.images[*g], &[]).unwrap().0, *sep);
        }
        assert_eq!(hom.defect().unwrap(), q(0, 1));
        // sigma commutes with the block part.
        let id_n = Matrix::identity(&field, sq.degree);
        for w in &z.words {
            let s = perm_matrix(&field, &sq.image(w)).kron(&Matrix::identity(&field, z.block_dim)).unwrap();
            let b = id_n.kron(&z.block(w).unwrap()).unwrap();
            assert_eq!(s.mul(&b).unwrap(), b.mul(&s).unwrap());
        }
    }

    #[test]
    fn inverse_words_multiply_to_the_identity() {
        let field = Field::rationals();
        let sq = quotient(2, 2);
        let z = zeta_build(&sign_rep(&field), &rotation_rep(&field), &sq, 1, ZetaOptions::default(), Exec::default())
            .unwrap();
        let hom = z.to_hom(100_000).unwrap();
        for g in 0..z.window.len() {
            let gi = z.window.inv(g);
            assert!(hom.images[g].mul(&hom.images[gi]).unwrap().is_identity());
        }
        assert!(hom.images[z.window.identity()].is_identity());
    }

    #[test]
    fn doubling_keeps_c2_c3_exact() {
        let field = Field::prime(5).unwrap();
        let sq = quotient(4, 1);
        let opts = ZetaOptions { double_involutions: true };
        let z = zeta_build(&sign_rep(&field), &rotation_rep(&field), &sq, 2, opts, Exec::default()).unwrap();
        assert_eq!(z.block_dim, 6);
        assert_eq!(z.report.defect, q(0, 1));
        assert!(z.report.min_separation.unwrap() >= q(7, 16));
    }

    #[test]
    fn doubling_breaks_a_c4_representation() {
        let field = Field::rationals();
        let w = window_from_finite_group(&FiniteGroup::cyclic(4));
        let g = w.index_of("g1").unwrap();
        let rot = Matrix::from_ints(&field, &[&[0, -1], &[1, 0]]);
        let hom = hom_from_exact_rep(&w, &[(g, rot)], LengthMode::Rank).unwrap();
        assert_eq!(hom.defect().unwrap(), q(0, 1));
        assert!(double_involutions(&hom).unwrap().defect().unwrap() > q(0, 1));
    }

    #[test]
    fn shallow_quotient_is_rejected() {
        let field = Field::prime(5).unwrap();
        let sq = quotient(3, 1);
        let err = zeta_build(&sign_rep(&field), &rotation_rep(&field), &sq, 2, ZetaOptions::default(), Exec::default());
        assert!(matches!(err, Err(Error::Precondition(_))));
    }

    #[test]
    fn perturbed_factor_defect_is_bounded_by_its_weighted_share() {
        let field = Field::prime(5).unwrap();
        let mut phi = sign_rep(&field).direct_sum_identity(2);
        let g = phi.window.index_of("g1").unwrap();
        phi.images[g] = Matrix::from_ints(&field, &[&[-1, 0, 0], &[0, 1, 1], &[0, 0, 1]]);
        let psi = rotation_rep(&field);
        let sq = quotient(4, 1);
        let z = zeta_build(&phi, &psi, &sq, 2, ZetaOptions::default(), Exec::default()).unwrap();
        assert!(z.report.defect > q(0, 1));
        // Only the first factor is perturbed: rank defect 1/3 weighted by 3/5.
        assert!(z.report.defect <= q(1, 5));
        let gi = sq.product.inv(&z.words[1]);
        assert_eq!(z.window.index_of(&sq.product.format(&gi)), Some(z.window.inv(1)));
    }
}
