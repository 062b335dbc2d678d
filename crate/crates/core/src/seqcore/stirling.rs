use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Memoized triangles for Stirling numbers of the second kind `{n;k}` and
/// unsigned Stirling numbers of the first kind `[n;k]`.
///
/// Rows are appended on demand under a write lock and never modified
/// afterwards, so concurrent readers always see the same values.
#[derive(Debug, Default)]
pub struct StirlingTables {
    s2: RwLock<Vec<Vec<BigInt>>>,
    s1: RwLock<Vec<Vec<BigInt>>>,
}

#[derive(Clone, Copy)]
enum Kind {
    First,
    Second,
}

impl StirlingTables {
    pub fn new() -> Self {
        Self::default()
    }

    /// `{n;k}`; zero when `k > n`.
    pub fn second(&self, n: usize, k: usize) -> BigInt {
        self.lookup(Kind::Second, n, k)
    }

    /// Unsigned `[n;k]`; zero when `k > n`.
    pub fn first(&self, n: usize, k: usize) -> BigInt {
        self.lookup(Kind::First, n, k)
    }

    /// Row `n` of the chosen triangle, `k = 0..=n`.
    pub fn second_row(&self, n: usize) -> Vec<BigInt> {
        self.ensure(Kind::Second, n);
        self.table(Kind::Second).read().unwrap()[n].clone()
    }

    pub fn first_row(&self, n: usize) -> Vec<BigInt> {
        self.ensure(Kind::First, n);
        self.table(Kind::First).read().unwrap()[n].clone()
    }

    fn table(&self, kind: Kind) -> &RwLock<Vec<Vec<BigInt>>> {
        match kind {
            Kind::First => &self.s1,
            Kind::Second => &self.s2,
        }
    }

    fn lookup(&self, kind: Kind, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        self.ensure(kind, n);
        self.table(kind).read().unwrap()[n][k].clone()
    }

    fn ensure(&self, kind: Kind, n: usize) {
        if self.table(kind).read().unwrap().len() > n {
            return;
        }
        let mut rows = self.table(kind).write().unwrap();
        if rows.is_empty() {
            rows.push(vec![BigInt::one()]);
        }
        while rows.len() <= n {
            // row m+1 from row m
            let m = rows.len() - 1;
            let prev = &rows[m];
            let mut next = vec![BigInt::zero(); m + 2];
            for k in 1..=m + 1 {
                let stay = if k <= m {
                    let w = match kind {
                        // {m+1;k} = k{m;k} + {m;k-1}
                        Kind::Second => k,
                        // [m+1;k] = m[m;k] + [m;k-1]
                        Kind::First => m,
                    };
                    &prev[k] * BigInt::from(w)
                } else {
                    BigInt::zero()
                };
                next[k] = stay + &prev[k - 1];
            }
            rows.push(next);
        }
    }
}

fn shared() -> &'static StirlingTables {
    static TABLES: OnceLock<StirlingTables> = OnceLock::new();
    TABLES.get_or_init(StirlingTables::new)
}

/// Stirling number of the second kind `{n;k}` from the process-wide table.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    shared().second(n, k)
}

/// Unsigned Stirling number of the first kind `[n;k]`.
pub fn stirling1(n: usize, k: usize) -> BigInt {
    shared().first(n, k)
}

pub fn stirling2_row(n: usize) -> Vec<BigInt> {
    shared().second_row(n)
}

pub fn stirling1_row(n: usize) -> Vec<BigInt> {
    shared().first_row(n)
}
