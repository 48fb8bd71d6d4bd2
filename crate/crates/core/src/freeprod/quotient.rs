use serde_json::{json, Value};

use super::word::{FreeProduct, ReducedWord};
use crate::almosthom::{FiniteGroup, GroupOracle};
use crate::error::{Error, Result};
use crate::matspace::Permutation;
use crate::par::{self, Exec};
use crate::rational::{fmt_q, q_ratio, q_to_json, Q};
use crate::seed::rng_for;

/// Search limits for [`build_separating_quotient`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Largest permutation degree tried.
    pub max_degree: usize,
    /// Random trials per degree.
    pub trials: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_degree: 4096, trials: 8 }
    }
}

/// Outcome of checking one nontrivial word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordCheck {
    pub word: ReducedWord,
    pub fixed: usize,
    pub nontrivial: bool,
}

/// Homomorphisms of both factors into `Sym(N)` under which every nontrivial
/// reduced word of syllable length at most `max_len` acts nontrivially and
/// fixes at most a `theta` fraction of the points.
#[derive(Clone, Debug, PartialEq)]
pub struct SeparatingQuotient {
    pub product: FreeProduct,
    pub degree: usize,
    /// `images[i][g]` is the permutation of element `g` of factor `i`.
    pub images: [Vec<Permutation>; 2],
    pub max_len: usize,
    pub theta: Q,
    /// Largest fixed-point fraction among the checked words.
    pub theta_achieved: Q,
    pub checks: Vec<WordCheck>,
    pub seed: u64,
    pub trial: usize,
}

/// Fixed points of `rho(s_1) ... rho(s_k)` without forming the product.
fn fixed_points(images: &[Vec<Permutation>; 2], degree: usize, w: &ReducedWord) -> usize {
    (0..degree).filter(|&x| w.syllables().iter().rev().fold(x, |y, s| images[s.factor][s.elem].apply(y)) == x).count()
}

/// `N / |G|` copies of the left regular action, conjugated by a random
/// permutation of all `N` points.
fn random_regular(g: &FiniteGroup, degree: usize, rng: &mut rand_chacha::ChaCha8Rng) -> Vec<Permutation> {
    let n = g.order();
    let tau = Permutation::random(degree, rng);
    (0..n)
        .map(|a| {
            let images = (0..degree).map(|x| (x / n) * n + g.mul(&a, &(x % n))).collect();
            Permutation::new(images).expect("regular action").conjugate_by(&tau)
        })
        .collect()
}

fn check_homomorphism(g: &FiniteGroup, images: &[Permutation]) -> Result<()> {
    for a in 0..g.order() {
        for b in 0..g.order() {
            if images[a].compose(&images[b]) != images[g.mul(&a, &b)] {
                return Err(Error::Inconsistent(format!(
                    "permutation images break {}*{}",
                    g.labels()[a],
                    g.labels()[b]
                )));
            }
        }
    }
    Ok(())
}

enum Trial {
    Found([Vec<Permutation>; 2], Vec<WordCheck>),
    Failed(ReducedWord, usize),
}

fn run_trial(product: &FreeProduct, words: &[ReducedWord], degree: usize, theta: &Q, seed: u64, trial: usize) -> Trial {
    let mut rng = rng_for(seed, &[degree as u64, trial as u64]);
    let images =
        [random_regular(product.factor(0), degree, &mut rng), random_regular(product.factor(1), degree, &mut rng)];
    let mut checks = Vec::with_capacity(words.len());
    for w in words {
        let fixed = fixed_points(&images, degree, w);
        if fixed == degree || q_ratio(fixed, degree) > *theta {
            return Trial::Failed(w.clone(), fixed);
        }
        checks.push(WordCheck { word: w.clone(), fixed, nontrivial: true });
    }
    Trial::Found(images, checks)
}

/// Las Vegas search for a [`SeparatingQuotient`]. The degree starts at
/// `|G_1| |G_2|` and doubles after `limits.trials` failed trials; among the
/// trials of one degree the lowest successful index is kept, so the result
/// depends only on the inputs and `seed`.
pub fn build_separating_quotient(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    max_len: usize,
    theta: &Q,
    seed: u64,
    limits: &SearchLimits,
    exec: Exec,
) -> Result<SeparatingQuotient> {
    if max_len == 0 {
        return Err(Error::Precondition("word length bound must be at least 1".into()));
    }
    if *theta < q_ratio(0, 1) || *theta >= q_ratio(1, 1) {
        return Err(Error::Precondition(format!("threshold {} must lie in [0, 1)", fmt_q(theta))));
    }
    if limits.trials == 0 {
        return Err(Error::Precondition("at least one trial per degree is needed".into()));
    }
    let product = FreeProduct::new(g1.clone(), g2.clone())?;
    let words: Vec<ReducedWord> = product.words_up_to(max_len).into_iter().filter(|w| !w.is_identity()).collect();
    let mut degree = g1.order() * g2.order();
    let mut last_failure: Option<(ReducedWord, usize, usize)> = None;
    while degree <= limits.max_degree {
        let outcomes = par::map_range(exec, limits.trials, |t| run_trial(&product, &words, degree, theta, seed, t));
        for (trial, outcome) in outcomes.into_iter().enumerate() {
            match outcome {
                Trial::Found(images, checks) => {
                    check_homomorphism(g1, &images[0])?;
                    check_homomorphism(g2, &images[1])?;
                    let worst = checks.iter().map(|c| c.fixed).max().unwrap_or(0);
                    return Ok(SeparatingQuotient {
                        product,
                        degree,
                        images,
                        max_len,
                        theta: theta.clone(),
                        theta_achieved: q_ratio(worst, degree),
                        checks,
                        seed,
                        trial,
                    });
                }
                Trial::Failed(w, fixed) => {
                    if last_failure.is_none() || trial == 0 {
                        last_failure = Some((w, fixed, degree));
                    }
                }
            }
        }
        degree *= 2;
    }
    let detail = match last_failure {
        Some((w, fixed, n)) => format!(
            "no quotient up to degree {}; at degree {n} the word `{}` fixed {fixed} points",
            limits.max_degree,
            product.format(&w)
        ),
        None => format!("starting degree {} exceeds the limit {}", g1.order() * g2.order(), limits.max_degree),
    };
    Err(Error::SearchExhausted(detail))
}

impl SeparatingQuotient {
    /// Permutation of a word, `rho(s_1) ... rho(s_k)`.
    pub fn image(&self, w: &ReducedWord) -> Permutation {
        w.syllables()
            .iter()
            .fold(Permutation::identity(self.degree), |acc, s| acc.compose(&self.images[s.factor][s.elem]))
    }

    pub fn fixed_fraction(&self, w: &ReducedWord) -> Q {
        q_ratio(fixed_points(&self.images, self.degree, w), self.degree)
    }

    /// Re-checks the certificate from scratch: both maps are homomorphisms and
    /// every nontrivial word up to `max_len` meets the threshold.
    pub fn verify(&self, exec: Exec) -> Result<()> {
        check_homomorphism(self.product.factor(0), &self.images[0])?;
        check_homomorphism(self.product.factor(1), &self.images[1])?;
        let words: Vec<ReducedWord> =
            self.product.words_up_to(self.max_len).into_iter().filter(|w| !w.is_identity()).collect();
        let fixed = par::map(exec, &words, |w| fixed_points(&self.images, self.degree, w));
        for (w, f) in words.iter().zip(fixed) {
            if f == self.degree || q_ratio(f, self.degree) > self.theta {
                return Err(Error::BoundViolated(format!(
                    "`{}` fixes {f} of {} points",
                    self.product.format(w),
                    self.degree
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let images: Vec<Value> = (0..2)
            .map(|i| {
                let g = self.product.factor(i);
                let map: serde_json::Map<String, Value> =
                    (0..g.order()).map(|a| (g.labels()[a].clone(), self.images[i][a].to_json())).collect();
                Value::Object(map)
            })
            .collect();
        let words: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "word": self.product.format(&c.word),
                    "fixed": c.fixed,
                    "fixed_fraction": q_to_json(&q_ratio(c.fixed, self.degree)),
                    "nontrivial": c.nontrivial,
                })
            })
            .collect();
        json!({
            "degree": self.degree,
            "max_len": self.max_len,
            "theta": q_to_json(&self.theta),
            "theta_achieved": q_to_json(&self.theta_achieved),
            "seed": self.seed,
            "trial": self.trial,
            "factors": [self.product.factor(0).to_json(), self.product.factor(1).to_json()],
            "images": images,
            "words": words,
        })
    }
}
