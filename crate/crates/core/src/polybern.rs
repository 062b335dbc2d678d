//! Poly-Bernoulli numbers and polynomials,
//! `sum_n B_n^(p)(x) t^n/n! = Li_p(1 - e^{-t})/(1 - e^{-t}) e^{xt}`,
//! computed as exponential coefficients of a truncated series.
//!
//! `p = 2` gives the di-Bernoulli numbers. For `p = 1` the generating
//! function collapses to `t e^{(x+1)t}/(e^t - 1)`, so `B_n^(1)(x) = B_n(x+1)`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::fps::{poly_bernoulli_egf, Egf};
use crate::seqcore::choose;
use crate::seqcore::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolyBernoulliValue {
    pub n: usize,
    pub p: u32,
    #[serde(serialize_with = "crate::seqcore::rat::serialize")]
    pub x: Rat,
    #[serde(serialize_with = "crate::seqcore::rat::serialize")]
    pub value: Rat,
}

type SeriesCache = RwLock<HashMap<u32, Egf>>;

fn cache() -> &'static SeriesCache {
    static CACHE: OnceLock<SeriesCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

const MIN_ORDER: usize = 16;

/// `B_0^(p), ..., B_n^(p)` at `x = 0`. One series is kept per `p` and regrown
/// by at least half its order when a larger index is requested.
fn values_at_zero(n: usize, p: u32) -> Vec<Rat> {
    if let Some(s) = cache().read().unwrap().get(&p) {
        if s.order() >= n {
            return (0..=n).map(|k| s.egf(k)).collect();
        }
    }
    let mut map = cache().write().unwrap();
    let current = map.get(&p).map_or(0, Egf::order);
    if current < n || !map.contains_key(&p) {
        let order = n.max(current + current / 2).max(MIN_ORDER);
        map.insert(p, poly_bernoulli_egf(p, &Rat::zero(), order));
    }
    (0..=n).map(|k| map[&p].egf(k)).collect()
}

/// `B_n^(p)(x)`, from the `x = 0` values via
/// `B_n^(p)(x) = sum_k C(n,k) B_k^(p) x^(n-k)`. Panics if `p == 0`.
pub fn poly_bernoulli(n: usize, p: u32, x: &Rat) -> Rat {
    assert!(p >= 1, "polylog order must be positive");
    let base = values_at_zero(n, p);
    if x.is_zero() {
        return base[n].clone();
    }
    // Horner in x over the binomially weighted coefficients
    (0..=n).fold(Rat::zero(), |acc, k| acc * x + Rat::from_integer(choose(n, k)) * &base[k])
}

pub fn poly_bernoulli_value(n: usize, p: u32, x: &Rat) -> PolyBernoulliValue {
    PolyBernoulliValue {
        n,
        p,
        x: x.clone(),
        value: poly_bernoulli(n, p, x),
    }
}

/// Di-Bernoulli number `B_n^(2) = B_n^(2)(0)`.
pub fn dibernoulli(n: usize) -> Rat {
    poly_bernoulli(n, 2, &Rat::zero())
}

/// `B_n^(2)(1)`.
pub fn dibernoulli_at_one(n: usize) -> Rat {
    poly_bernoulli(n, 2, &Rat::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{bernoulli, bernoulli_poly_at};
    use crate::seqcore::rat::{self, int, rat};
    use crate::seqcore::{factorial, harmonic, stirling2};
    use num_bigint::BigInt;

    /// Closed Stirling-sum form `sum_m (-1)^{m+n} m! {n;m} / (m+1)^p`.
    fn stirling_sum_oracle(n: usize, p: u32) -> Rat {
        (0..=n).fold(Rat::zero(), |acc, m| {
            acc + rat::sign_pow(m + n)
                * Rat::new(stirling2(n, m) * factorial(m), BigInt::from(m + 1).pow(p))
        })
    }

    #[test]
    fn oracle_matches_series_route() {
        for p in 1..=3 {
            for n in 0..=12 {
                assert_eq!(poly_bernoulli(n, p, &int(0)), stirling_sum_oracle(n, p), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn order_one_collapses_to_shifted_bernoulli() {
        assert_eq!(poly_bernoulli(2, 1, &int(0)), rat(1, 6));
        for x in [int(0), int(1), int(-1), rat(1, 2)] {
            for n in 0..=30 {
                let shifted = &x + int(1);
                assert_eq!(poly_bernoulli(n, 1, &x), bernoulli_poly_at(n, &shifted));
            }
        }
    }

    #[test]
    fn constant_terms() {
        for p in 1..=4 {
            assert_eq!(poly_bernoulli(0, p, &int(0)), int(1));
        }
        assert_eq!(dibernoulli(0), int(1));
    }

    #[test]
    fn cache_regrowth_is_consistent() {
        let x = rat(3, 7);
        let late = poly_bernoulli(40, 3, &x);
        let early = poly_bernoulli(5, 3, &x);
        let fresh = poly_bernoulli_egf(3, &x, 40);
        assert_eq!(late, fresh.egf(40));
        assert_eq!(early, fresh.egf(5));
    }

    #[test]
    fn cumulative_sum_small() {
        let lhs: Rat = (0..=2).map(bernoulli).sum();
        assert_eq!(lhs, rat(2, 3));
        let rhs = dibernoulli_at_one(2) + bernoulli(2) - dibernoulli(2) - int(1);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn squared_harmonic_bridge() {
        for n in 1..=30usize {
            let lhs = (1..=n).fold(Rat::zero(), |acc, k| {
                let h = harmonic(k);
                acc + rat::sign_pow(n - k) * Rat::from_integer(stirling2(n, k) * factorial(k)) * &h * &h
            });
            let nn = int(n as i64);
            let rhs = dibernoulli_at_one(n) - dibernoulli(n) + &nn * (&nn - int(1));
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }
}
