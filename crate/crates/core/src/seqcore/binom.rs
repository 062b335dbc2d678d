use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rat::Rat;

fn factorial_table() -> &'static RwLock<Vec<BigInt>> {
    static TABLE: OnceLock<RwLock<Vec<BigInt>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![BigInt::one()]))
}

/// `n!`, cached.
pub fn factorial(n: usize) -> BigInt {
    if let Some(v) = factorial_table().read().unwrap().get(n) {
        return v.clone();
    }
    let mut t = factorial_table().write().unwrap();
    while t.len() <= n {
        let i = t.len();
        let next = &t[i - 1] * BigInt::from(i);
        t.push(next);
    }
    t[n].clone()
}

/// Generalized binomial `x(x-1)...(x-k+1)/k!` for rational `x`.
pub fn binom(x: &Rat, k: usize) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc *= x - Rat::from_integer(BigInt::from(i));
    }
    acc / Rat::from_integer(factorial(k))
}

/// Binomial coefficient with an integer (possibly negative) top argument.
pub fn binom_int(n: i64, k: usize) -> BigInt {
    if n >= 0 && (k as i64) > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n) - BigInt::from(i);
    }
    num / factorial(k)
}

/// `C(n, k)` for `0 <= n`, zero when `k > n`.
pub fn choose(n: usize, k: usize) -> BigInt {
    binom_int(n as i64, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::rat::{int, rat};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(binom(&rat(-1, 2), 2), rat(3, 8));
        assert_eq!(binom(&rat(7, 3), 0), int(1));
        assert_eq!(binom(&int(5), 2), int(10));
        assert_eq!(binom_int(5, 2), BigInt::from(10));
        assert_eq!(binom_int(-1, 3), BigInt::from(-1));
        assert_eq!(choose(3, 5), BigInt::zero());
        assert_eq!(factorial(10), BigInt::from(3_628_800));
    }

    #[test]
    fn minus_half_is_scaled_central_binomial() {
        for k in 0..=20usize {
            let expected = Rat::new(
                BigInt::from(if k % 2 == 0 { 1 } else { -1 }) * choose(2 * k, k),
                BigInt::from(4).pow(k as u32),
            );
            assert_eq!(binom(&rat(-1, 2), k), expected);
        }
    }

    proptest! {
        #[test]
        fn integer_route_agrees(n in -30i64..30, k in 0usize..12) {
            prop_assert_eq!(binom(&int(n), k), Rat::from_integer(binom_int(n, k)));
        }
    }
}
