use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rat::Rat;

/// Memoized `H_n` and `H_n^(m)`.
#[derive(Debug)]
pub struct HarmonicCache {
    h: RwLock<Vec<Rat>>,
    hm: RwLock<HashMap<(usize, u32), Rat>>,
}

impl Default for HarmonicCache {
    fn default() -> Self {
        Self {
            h: RwLock::new(vec![Rat::zero()]),
            hm: RwLock::new(HashMap::new()),
        }
    }
}

impl HarmonicCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn harmonic(&self, n: usize) -> Rat {
        if let Some(v) = self.h.read().unwrap().get(n) {
            return v.clone();
        }
        let mut h = self.h.write().unwrap();
        while h.len() <= n {
            let i = h.len();
            let next = &h[i - 1] + Rat::new(BigInt::one(), BigInt::from(i));
            h.push(next);
        }
        h[n].clone()
    }

    pub fn harmonic_gen(&self, n: usize, m: u32) -> Rat {
        assert!(m >= 1, "harmonic order must be positive");
        if m == 1 {
            return self.harmonic(n);
        }
        if let Some(v) = self.hm.read().unwrap().get(&(n, m)) {
            return v.clone();
        }
        let value = (1..=n).fold(Rat::zero(), |acc, i| {
            acc + Rat::new(BigInt::one(), BigInt::from(i).pow(m))
        });
        self.hm.write().unwrap().entry((n, m)).or_insert(value).clone()
    }
}

fn shared() -> &'static HarmonicCache {
    static CACHE: OnceLock<HarmonicCache> = OnceLock::new();
    CACHE.get_or_init(HarmonicCache::new)
}

/// `H_n = 1 + 1/2 + ... + 1/n`, with `H_0 = 0`.
pub fn harmonic(n: usize) -> Rat {
    shared().harmonic(n)
}

/// `H_n^(m) = sum 1/i^m` for `i = 1..=n`. Panics if `m == 0`.
pub fn harmonic_gen(n: usize, m: u32) -> Rat {
    shared().harmonic_gen(n, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::rat::{int, rat};

    #[test]
    fn small_values() {
        assert_eq!(harmonic(0), Rat::zero());
        assert_eq!(harmonic(1), int(1));
        assert_eq!(harmonic(2), rat(3, 2));
        assert_eq!(harmonic(3), rat(11, 6));
        assert_eq!(harmonic_gen(3, 1), rat(11, 6));
        assert_eq!(harmonic_gen(2, 2), rat(5, 4));
        assert_eq!(harmonic_gen(0, 4), Rat::zero());
    }

    #[test]
    fn differences_are_reciprocals() {
        for n in 1..=60 {
            assert_eq!(harmonic(n) - harmonic(n - 1), rat(1, n as i64));
            assert_eq!(harmonic_gen(n, 1), harmonic(n));
        }
    }

    #[test]
    #[should_panic]
    fn zero_order_rejected() {
        harmonic_gen(3, 0);
    }
}
