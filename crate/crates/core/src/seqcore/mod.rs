//! Exact base sequences: rationals, Stirling numbers of both kinds, harmonic
//! numbers, binomial coefficients and factorials.
//!
//! Every table here is process-wide, filled on demand and write-once, so the
//! free functions can be called from any thread.

pub mod binom;
pub mod harmonic;
pub mod rat;
pub mod stirling;

pub use binom::{binom, binom_int, choose, factorial};
pub use harmonic::{harmonic, harmonic_gen, HarmonicCache};
pub use rat::{parse_rat, rat, to_fraction, Rat};
pub use stirling::{stirling1, stirling1_row, stirling2, stirling2_row, StirlingTables};

/// Rising factorial `x(x+1)...(x+n-1)`.
pub fn rising(x: &Rat, n: usize) -> Rat {
    (0..n).fold(rat(1, 1), |acc, i| acc * (x + rat(i as i64, 1)))
}

/// Falling factorial `x(x-1)...(x-n+1)`.
pub fn falling(x: &Rat, n: usize) -> Rat {
    (0..n).fold(rat(1, 1), |acc, i| acc * (x - rat(i as i64, 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-40i64..40, 1i64..15).prop_map(|(a, b)| rat(a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]

        #[test]
        fn rising_factorial_expands_in_first_kind(x in small_rat()) {
            for n in 1..=20usize {
                let expanded = (0..=n).fold(Rat::zero(), |acc, k| {
                    acc + Rat::from_integer(stirling1(n, k)) * rat::pow(&x, k)
                });
                prop_assert_eq!(rising(&x, n), expanded);
            }
        }

        #[test]
        fn powers_invert_through_second_kind(x in small_rat()) {
            for n in 1..=15usize {
                let expanded = (0..=n).fold(Rat::zero(), |acc, k| {
                    acc + rat::sign_pow(n - k) * Rat::from_integer(stirling2(n, k)) * rising(&x, k)
                });
                prop_assert_eq!(rat::pow(&x, n), expanded);
            }
        }
    }

    #[test]
    fn first_kind_low_columns() {
        for k in 1..=40usize {
            let f = Rat::from_integer(factorial(k - 1));
            assert_eq!(stirling1(k, 1), factorial(k - 1));
            assert_eq!(Rat::from_integer(stirling1(k, 2)), &f * harmonic(k - 1));
            if k >= 3 {
                let h = harmonic(k - 1);
                let rhs = rat(1, 2) * &f * (&h * &h - harmonic_gen(k - 1, 2));
                assert_eq!(Rat::from_integer(stirling1(k, 3)), rhs, "k = {k}");
            }
        }
    }

    #[test]
    fn first_kind_row_sums() {
        for n in 0..=40usize {
            let s: BigInt = stirling1_row(n).iter().sum();
            assert_eq!(s, factorial(n));
        }
    }

    #[test]
    fn hockey_stick() {
        for n in 1..=40usize {
            for j in 1..=n {
                let s: BigInt = (0..j).map(|k| choose(n - k, j - k)).sum();
                assert_eq!(s, choose(n + 1, j) - 1);
            }
        }
    }
}
