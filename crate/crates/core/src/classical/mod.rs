//! Bernoulli numbers and polynomials, Euler numbers and polynomials, Cauchy
//! numbers of the first kind, and the harmonic-weighted Stirling transform
//! `hw(n, x) = sum_k {n;k} C(x,k) k! H_k`.
//!
//! The Bernoulli convention is fixed at `B_1 = -1/2` throughout.

mod poly;

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::seqcore::rat::{self, Rat};
use crate::seqcore::{binom, choose, factorial, harmonic, stirling1, stirling2};

pub use poly::Poly;

/// Memoized `B_n`, grown with `sum_{j=0}^{n} C(n+1,j) B_j = 0`.
#[derive(Debug)]
pub struct BernoulliCache {
    b: RwLock<Vec<Rat>>,
}

impl Default for BernoulliCache {
    fn default() -> Self {
        Self {
            b: RwLock::new(vec![Rat::one()]),
        }
    }
}

impl BernoulliCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, n: usize) -> Rat {
        if let Some(v) = self.b.read().unwrap().get(n) {
            return v.clone();
        }
        let mut b = self.b.write().unwrap();
        while b.len() <= n {
            let m = b.len();
            let value = if m > 1 && m % 2 == 1 {
                Rat::zero()
            } else {
                let s = (0..m).fold(Rat::zero(), |acc, j| {
                    acc + Rat::from_integer(choose(m + 1, j)) * &b[j]
                });
                -s / Rat::from_integer(BigInt::from(m + 1))
            };
            b.push(value);
        }
        b[n].clone()
    }
}

fn bernoulli_cache() -> &'static BernoulliCache {
    static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
    CACHE.get_or_init(BernoulliCache::new)
}

/// `B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Rat {
    bernoulli_cache().get(n)
}

/// Worpitzky's form `sum_{k=1}^{n} (-1)^k {n;k} k!/(k+1)`. Equals `B_n` for
/// `n >= 1`; computed from Stirling numbers alone.
pub fn worpitzky_bernoulli(n: usize) -> Rat {
    assert!(n >= 1, "worpitzky_bernoulli needs n >= 1");
    (1..=n).fold(Rat::zero(), |acc, k| {
        acc + rat::sign_pow(k)
            * Rat::new(stirling2(n, k) * factorial(k), BigInt::from(k + 1))
    })
}

/// `B_n(x) = sum_j C(n,j) B_j x^{n-j}`.
pub fn bernoulli_poly(n: usize) -> Poly {
    Poly::new(
        (0..=n)
            .map(|i| Rat::from_integer(choose(n, i)) * bernoulli(n - i))
            .collect(),
    )
}

pub fn bernoulli_poly_at(n: usize, x: &Rat) -> Rat {
    bernoulli_poly(n).eval(x)
}

fn euler_cache() -> &'static RwLock<Vec<Poly>> {
    static CACHE: OnceLock<RwLock<Vec<Poly>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![Poly::constant(Rat::one())]))
}

/// Euler polynomial `E_n(x)` with generating function `2e^{xt}/(e^t+1)`,
/// grown by `2E_n(x) + sum_{j<n} C(n,j) E_j(x) = 2x^n`.
pub fn euler_poly(n: usize) -> Poly {
    if let Some(p) = euler_cache().read().unwrap().get(n) {
        return p.clone();
    }
    let mut e = euler_cache().write().unwrap();
    let half = rat::rat(1, 2);
    while e.len() <= n {
        let m = e.len();
        let mut acc = Poly::monomial(Rat::one(), m);
        for (j, ej) in e.iter().enumerate() {
            acc = &acc - &ej.scale(&(Rat::from_integer(choose(m, j)) * &half));
        }
        e.push(acc);
    }
    e[n].clone()
}

/// `E_n = E_n(0)`.
pub fn euler_number(n: usize) -> Rat {
    euler_poly(n).coeff(0)
}

/// `E_n(1)`.
pub fn euler_at_one(n: usize) -> Rat {
    euler_poly(n).eval(&Rat::one())
}

/// Cauchy number of the first kind from the Stirling sum
/// `c_k = sum_{j=1}^{k} [k;j] (-1)^{k-j}/(j+1)`, with `c_0 = 1`.
pub fn cauchy1(k: usize) -> Rat {
    if k == 0 {
        return Rat::one();
    }
    (1..=k).fold(Rat::zero(), |acc, j| {
        acc + rat::sign_pow(k - j) * Rat::new(stirling1(k, j), BigInt::from(j + 1))
    })
}

/// `c_k = k! * integral_0^1 C(x,k) dx`, by integrating the falling factorial.
pub fn cauchy1_integral(k: usize) -> Rat {
    Poly::falling(k).integrate(&Rat::zero(), &Rat::one())
}

/// `hw(n, x) = sum_{k=1}^{n} {n;k} C(x,k) k! H_k`, summed directly.
pub fn hw(n: usize, x: &Rat) -> Rat {
    (1..=n).fold(Rat::zero(), |acc, k| {
        acc + Rat::from_integer(stirling2(n, k) * factorial(k)) * binom(x, k) * harmonic(k)
    })
}

/// `hw(n, x)` as a polynomial in `x`, memoized per `n`.
pub fn hw_poly(n: usize) -> Poly {
    static CACHE: OnceLock<RwLock<HashMap<usize, Poly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().unwrap().get(&n) {
        return p.clone();
    }
    let mut falling = Poly::constant(Rat::one());
    let mut acc = Poly::zero();
    for k in 1..=n {
        falling = &falling * &Poly::new(vec![-Rat::from_integer(BigInt::from(k - 1)), Rat::one()]);
        let c = Rat::from_integer(stirling2(n, k)) * harmonic(k);
        acc = &acc + &falling.scale(&c);
    }
    cache.write().unwrap().entry(n).or_insert(acc).clone()
}

/// Closed form of `hw(n, m)` at a positive integer `m`:
/// `H_m m^n - sum_{j=1}^{m} (m-j)^n / j`.
pub fn hw_closed_integer(n: usize, m: usize) -> Rat {
    let mm = Rat::from_integer(BigInt::from(m));
    let tail = (1..=m).fold(Rat::zero(), |acc, j| {
        acc + Rat::new(BigInt::from(m - j).pow(n as u32), BigInt::from(j))
    });
    harmonic(m) * rat::pow(&mm, n) - tail
}
