use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{q_ratio, Q};

/// `f(x) = x^2 + (1 - x)^2`.
pub fn f_map(x: &Q) -> Q {
    let y = Q::one() - x;
    x * x + &y * &y
}

/// Smallest `m >= 0` with `f^m(1 - delta) <= 1/2 + 2 eps`.
///
/// Writing `f(x) - 1/2 = 2 (x - 1/2)^2` gives
/// `f^m(1 - delta) - 1/2 = (1 - 2 delta)^(2^m) / 2`, which is iterated by
/// repeated squaring instead of applying `f` directly.
pub fn f_schedule(delta: &Q, eps: &Q) -> Result<u32> {
    if *delta <= Q::zero() || *delta > Q::one() {
        return Err(Error::Precondition(format!("delta must lie in (0, 1], got {delta}")));
    }
    if *eps <= Q::zero() {
        return Err(Error::Precondition(format!("eps must be positive, got {eps}")));
    }
    let half = q_ratio(1, 2);
    let x0 = Q::one() - delta;
    if x0 <= &half + eps * Q::from_integer(2.into()) {
        return Ok(0);
    }
    let bound = eps * Q::from_integer(4.into());
    let mut z = Q::one() - delta * Q::from_integer(2.into());
    let mut m = 0;
    while z > bound {
        z = &z * &z;
        m += 1;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    /// Direct exact iteration of `f`.
    fn schedule_by_iteration(delta: &Q, eps: &Q) -> u32 {
        let target = q(1, 2) + eps * q(2, 1);
        let mut x = Q::one() - delta;
        let mut m = 0;
        while x > target {
            x = f_map(&x);
            m += 1;
        }
        m
    }

    #[test]
    fn examples() {
        assert_eq!(f_map(&q(3, 4)), q(5, 8));
        assert_eq!(f_schedule(&q(1, 2), &q(1, 1000)).unwrap(), 0);
        // 3/4 -> 5/8 -> 17/32 -> 257/512; only the last is below 0.52.
        assert_eq!(f_schedule(&q(1, 4), &q(1, 100)).unwrap(), 3);
        assert!(f_schedule(&q(0, 1), &q(1, 2)).is_err());
        assert!(f_schedule(&q(1, 2), &q(0, 1)).is_err());
    }

    #[test]
    fn matches_iteration_and_float_oracle() {
        for dn in 1..=12 {
            for en in [1, 3, 10, 64, 200, 1000] {
                let (d, e) = (q(1, dn), q(1, en));
                let m = f_schedule(&d, &e).unwrap();
                assert_eq!(m, schedule_by_iteration(&d, &e), "delta 1/{dn}, eps 1/{en}");
                let mut x = 1.0 - 1.0 / dn as f64;
                let mut mf = 0;
                while x > 0.5 + 2.0 / en as f64 + 1e-12 {
                    x = x * x + (1.0 - x) * (1.0 - x);
                    mf += 1;
                }
                assert_eq!(m, mf);
            }
        }
    }

    #[test]
    fn monotone_on_upper_half() {
        let xs: Vec<Q> = (0..=64).map(|k| q(64 + k, 128)).collect();
        for w in xs.windows(2) {
            assert!(f_map(&w[0]) <= f_map(&w[1]));
            assert!(f_map(&w[0]) >= q(1, 2));
        }
    }
}
