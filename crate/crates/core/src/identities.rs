//! Catalog of exact identities between the sequences in this crate, and a
//! sweep harness that checks each one over a parameter box.
//!
//! Every entry evaluates its two sides through separate code paths: the
//! summation side is built from [`crate::seqcore`] primitives term by term,
//! the closed side goes through the cached values in [`crate::classical`]
//! and [`crate::polybern`]. A sweep never stops at the first mismatch; all
//! counterexamples land in the [`IdentityReport`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::{Serialize, Serializer};
use thiserror::Error;

use crate::classical::{
    bernoulli, bernoulli_poly, bernoulli_poly_at, cauchy1, euler_number, hw, hw_poly,
};
use crate::polybern::{dibernoulli, dibernoulli_at_one};
use crate::seqcore::rat::{self, int, Rat};
use crate::seqcore::{choose, factorial, harmonic, harmonic_gen, stirling1, stirling2};

macro_rules! catalog {
    ($($variant:ident => $name:literal, $statement:literal;)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum IdentityId {
            $($variant,)*
        }

        impl IdentityId {
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $name,)*
                }
            }

            /// Human-readable statement of the identity.
            pub fn statement(self) -> &'static str {
                match self {
                    $(IdentityId::$variant => $statement,)*
                }
            }
        }

        impl FromStr for IdentityId {
            type Err = IdentityError;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($name => Ok(IdentityId::$variant),)*
                    _ => Err(IdentityError::UnknownIdentity(s.to_owned())),
                }
            }
        }
    };
}

catalog! {
    Main => "MAIN",
        "sum_{k=j}^{n} (-1)^{k-j} {n;k}[k;j] H_k = (C(n,j)-1) B_{n-j}/(n-j)";
    Worpitzky => "WORPITZKY",
        "sum_{k=1}^{n} (-1)^k {n;k} k!/(k+1) = B_n";
    GenWorpitzky => "GEN_WORPITZKY",
        "sum_{k=j}^{n} (-1)^{k-j}/k {n;k}[k;j] = C(n-1,j) B_{n-j}/(n-j)";
    H1 => "H1",
        "sum_{k=1}^{n} (-1)^{k-1} {n;k} (k-1)! H_k = B_{n-1}";
    H2 => "H2",
        "sum_{k=2}^{n} (-1)^k {n;k} (k-1)! H_{k-1} H_k = (n+1)/2 B_{n-2}";
    K3Special => "K3SPECIAL",
        "sum_{k=3}^{n} (-1)^{k-1} {n;k} (k-1)! ((H_{k-1})^2 - H_{k-1}^(2)) H_k = (n^2+2)/3 B_{n-3}";
    PolyX => "POLYX",
        "sum_{j=1}^{n} (C(n,j)-1) B_j/j x^{n-j} = hw(n,x) - H_n x^n";
    Agoh => "AGOH",
        "sum_{j=1}^{n} (C(n,j)-1) B_j/j m^{n-j} = m^n (H_m - H_n) - sum_{j=1}^{m} (m-j)^n/j";
    AgohAlt => "AGOH_ALT",
        "sum_{j=1}^{n} (-1)^j (C(n,j)-1) B_j/j m^{n-j} = m^n (H_m - H_n + (n-1)/m) - sum_{j=1}^{m} (m-j)^n/j";
    AgohM1 => "AGOH_M1",
        "sum_{j=1}^{n} (-1)^j (C(n,j)-1) B_j/j = n - H_n";
    AgohCombine => "AGOH_COMBINE",
        "sum_{j=1}^{n} (C(n,j)-1) B_j/j (1 - 2^{-j}) = (1 - 2^{n-1})/2^n";
    Rec16 => "REC16",
        "sum_{j=1}^{n} (C(n,j)+1) B_j/j (1 - 2^j) = 1";
    Rec16Euler => "REC16_EULER",
        "sum_{j=1}^{n} (C(n,j)+1) E_{j-1}/2 = 1";
    AgohEq11 => "AGOH_EQ11",
        "sum_{k=1}^{m} C(m,k) H_k (z-1)^k = H_m z^m - sum_{k=0}^{m-1} z^k/(m-k)";
    CumSum => "CUMSUM",
        "sum_{j=0}^{n} B_j = B_n^(2)(1) + B_n - B_n^(2) - 1";
    Eq14 => "EQ14",
        "sum_{j=0}^{n} B_j = sum_{k=1}^{n} (-1)^{n-k} {n;k} k! H_k^2 + B_n(1) + n - n^2 - 1";
    HsqBridge => "HSQ_BRIDGE",
        "sum_{k=1}^{n} (-1)^{n-k} {n;k} k! H_k^2 = B_n^(2)(1) - B_n^(2) + n(n-1)";
    Hockey => "HOCKEY",
        "sum_{k=0}^{j-1} C(n-k, j-k) = C(n+1, j) - 1";
    Reduction => "REDUCTION",
        "S(n+1,j) = S(n,j-1) + C(n,j) B_{n+1-j}/(n+1-j), S(n,j) = sum_k (-1)^{k-j} {n;k}[k;j] H_k";
    Stirl20 => "STIRL20",
        "[k;1] = (k-1)!  and  [k;2] = (k-1)! H_{k-1}";
    Bpint => "BPINT",
        "sum_{j=0}^{n} C(n,j) B_j/(n-j+1) = integral_0^1 B_n(x) dx = 0";
    HwCauchy => "HW_CAUCHY",
        "sum_{j=0}^{n} B_j/(n-j+1) = 1 - (n+1) sum_{k=1}^{n} {n;k} c_k H_k";
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for IdentityId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("{id}: parameters {params} are outside the domain")]
    OutOfDomain { id: IdentityId, params: Params },
    #[error("{id}: missing parameter `{name}`")]
    MissingParameter { id: IdentityId, name: &'static str },
    #[error("{id}: right-hand side is indeterminate at {params} ({reason})")]
    IndeterminateRhs {
        id: IdentityId,
        params: Params,
        reason: &'static str,
    },
}

/// A named parameter value: integer indices, or rational evaluation points.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParamValue {
    Int(i64),
    Rat(Rat),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(v) => write!(f, "{v}"),
            ParamValue::Rat(r) => write!(f, "{}", rat::Fraction(r)),
        }
    }
}

impl Serialize for ParamValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ParamValue::Int(v) => s.serialize_i64(*v),
            ParamValue::Rat(r) => s.collect_str(&rat::Fraction(r)),
        }
    }
}

/// Ordered parameter map; ordering of cases and failures follows it.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
#[serde(transparent)]
pub struct Params(BTreeMap<&'static str, ParamValue>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_int(mut self, name: &'static str, v: i64) -> Self {
        self.0.insert(name, ParamValue::Int(v));
        self
    }

    pub fn with_rat(mut self, name: &'static str, v: Rat) -> Self {
        self.0.insert(name, ParamValue::Rat(v));
        self
    }

    pub fn get(&self, name: &str) -> Option<&ParamValue> {
        self.0.get(name)
    }

    pub fn int(&self, name: &str) -> Option<i64> {
        match self.0.get(name)? {
            ParamValue::Int(v) => Some(*v),
            ParamValue::Rat(_) => None,
        }
    }

    pub fn rat(&self, name: &str) -> Option<Rat> {
        match self.0.get(name)? {
            ParamValue::Int(v) => Some(int(*v)),
            ParamValue::Rat(r) => Some(r.clone()),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &ParamValue)> {
        self.0.iter().map(|(k, v)| (*k, v))
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCase {
    pub id: IdentityId,
    pub params: Params,
}

impl IdentityCase {
    pub fn new(id: IdentityId, params: Params) -> Self {
        Self { id, params }
    }
}

/// Parameter box for a sweep. Integer ranges start at 0 and the domain
/// predicate of each identity decides which grid points are real cases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sweep {
    pub n_max: usize,
    pub j_min: Option<usize>,
    pub j_max: Option<usize>,
    pub m_max: usize,
    /// Random rational points per integer parameter tuple (POLYX, AGOH_EQ11).
    pub random_points: usize,
    pub seed: u64,
    /// Adds the indeterminate `j = n` diagonal to MAIN.
    pub include_j_equals_n: bool,
    /// Off-by-one mutation: the chosen identity's right side is shifted by 1.
    pub fault: Option<IdentityId>,
}

impl Default for Sweep {
    fn default() -> Self {
        Self {
            n_max: 40,
            j_min: None,
            j_max: None,
            m_max: 20,
            random_points: 10,
            seed: 0x005e_edb3_2024,
            include_j_equals_n: false,
            fault: None,
        }
    }
}

impl Sweep {
    pub fn with_n_max(n_max: usize) -> Self {
        Self {
            n_max,
            ..Self::default()
        }
    }

    fn j_range(&self) -> std::ops::RangeInclusive<usize> {
        self.j_min.unwrap_or(0)..=self.j_max.unwrap_or(self.n_max)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Failure {
    pub id: IdentityId,
    pub params: Params,
    #[serde(serialize_with = "rat::serialize_opt")]
    pub lhs: Option<Rat>,
    #[serde(serialize_with = "rat::serialize_opt")]
    pub rhs: Option<Rat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub domain: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn r(v: usize) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

fn z(v: BigInt) -> Rat {
    Rat::from_integer(v)
}

/// `sum_{k=j}^{n} (-1)^{k-j} {n;k}[k;j] H_k`, the left side of MAIN.
pub fn main_sum(n: usize, j: usize) -> Rat {
    (j..=n).fold(Rat::zero(), |acc, k| {
        acc + rat::sign_pow(k - j) * z(stirling2(n, k) * stirling1(k, j)) * harmonic(k)
    })
}

fn gen_worpitzky_sum(n: usize, j: usize) -> Rat {
    (j.max(1)..=n).fold(Rat::zero(), |acc, k| {
        acc + rat::sign_pow(k - j) * Rat::new(stirling2(n, k) * stirling1(k, j), BigInt::from(k))
    })
}

/// `sum_{j=1}^{n} (C(n,j) + shift) B_j/j w(j)` with a caller-supplied weight.
fn weighted_bernoulli_sum(n: usize, shift: i64, mut w: impl FnMut(usize) -> Rat) -> Rat {
    (1..=n).fold(Rat::zero(), |acc, j| {
        acc + z(choose(n, j) + shift) * bernoulli(j) / r(j) * w(j)
    })
}

/// `sum_{j=1}^{m} (m-j)^n / j`.
fn power_tail(n: usize, m: usize) -> Rat {
    (1..=m).fold(Rat::zero(), |acc, j| {
        acc + Rat::new(BigInt::from(m - j).pow(n as u32), BigInt::from(j))
    })
}

fn squared_harmonic_stirling_sum(n: usize) -> Rat {
    (1..=n).fold(Rat::zero(), |acc, k| {
        let h = harmonic(k);
        acc + rat::sign_pow(n - k) * z(stirling2(n, k) * factorial(k)) * &h * &h
    })
}

fn cumulative_bernoulli(n: usize) -> Rat {
    (0..=n).map(bernoulli).sum()
}

fn need_int(id: IdentityId, p: &Params, name: &'static str) -> Result<i64, IdentityError> {
    p.int(name).ok_or(IdentityError::MissingParameter { id, name })
}

fn need_usize(id: IdentityId, p: &Params, name: &'static str) -> Result<usize, IdentityError> {
    let v = need_int(id, p, name)?;
    usize::try_from(v).map_err(|_| IdentityError::OutOfDomain {
        id,
        params: p.clone(),
    })
}

fn need_rat(id: IdentityId, p: &Params, name: &'static str) -> Result<Rat, IdentityError> {
    p.rat(name).ok_or(IdentityError::MissingParameter { id, name })
}

impl IdentityId {
    /// Domain predicate. `include_j_equals_n` widens MAIN to the diagonal.
    pub fn in_domain(self, p: &Params, include_j_equals_n: bool) -> bool {
        let n = p.int("n");
        let j = p.int("j");
        let m = p.int("m");
        match self {
            IdentityId::Main => match (n, j) {
                (Some(n), Some(j)) => n >= 1 && j >= 0 && (j < n || (include_j_equals_n && j == n)),
                _ => false,
            },
            IdentityId::GenWorpitzky => matches!((n, j), (Some(n), Some(j)) if j >= 1 && n - j >= 2),
            IdentityId::Worpitzky
            | IdentityId::AgohM1
            | IdentityId::AgohCombine
            | IdentityId::Rec16
            | IdentityId::Rec16Euler
            | IdentityId::Eq14
            | IdentityId::HsqBridge
            | IdentityId::HwCauchy => matches!(n, Some(n) if n >= 1),
            IdentityId::H1 | IdentityId::H2 | IdentityId::CumSum | IdentityId::Bpint => {
                matches!(n, Some(n) if n >= 2)
            }
            IdentityId::K3Special => matches!(n, Some(n) if n >= 4),
            IdentityId::PolyX => {
                let Some(n) = n.filter(|&n| n >= 1) else {
                    return false;
                };
                match (p.rat("x"), p.int("deg")) {
                    (Some(x), None) => !x.is_zero(),
                    (None, Some(d)) => (0..=n).contains(&d),
                    _ => false,
                }
            }
            IdentityId::Agoh | IdentityId::AgohAlt => {
                matches!((n, m), (Some(n), Some(m)) if n >= 1 && m >= 1)
            }
            IdentityId::AgohEq11 => matches!(m, Some(m) if m >= 1) && p.rat("z").is_some(),
            IdentityId::Hockey | IdentityId::Reduction => {
                matches!((n, j), (Some(n), Some(j)) if j >= 1 && j <= n)
            }
            IdentityId::Stirl20 => {
                matches!((p.int("k"), p.int("r")), (Some(k), Some(r)) if k >= 1 && (r == 1 || r == 2))
            }
        }
    }

    /// Description of the swept domain for reports.
    pub fn domain_description(self, sweep: &Sweep) -> String {
        let n = sweep.n_max;
        let (jl, jh) = (sweep.j_range().start().to_owned(), sweep.j_range().end().to_owned());
        let m = sweep.m_max;
        let pts = sweep.random_points;
        match self {
            IdentityId::Main if sweep.include_j_equals_n => {
                format!("1 <= n <= {n}, {jl} <= j <= {jh}, 0 <= j <= n")
            }
            IdentityId::Main => format!("1 <= n <= {n}, {jl} <= j <= {jh}, 0 <= j <= n-1"),
            IdentityId::GenWorpitzky => format!("n <= {n}, {jl} <= j <= {jh}, j >= 1, n-j >= 2"),
            IdentityId::Hockey | IdentityId::Reduction => {
                format!("1 <= j <= n <= {n}, {jl} <= j <= {jh}")
            }
            IdentityId::H1 | IdentityId::H2 | IdentityId::CumSum | IdentityId::Bpint => {
                format!("2 <= n <= {n}")
            }
            IdentityId::K3Special => format!("4 <= n <= {n}"),
            IdentityId::PolyX => format!(
                "1 <= n <= {n}; {pts} random nonzero rational x per n, and every coefficient x^d, 0 <= d <= n"
            ),
            IdentityId::Agoh | IdentityId::AgohAlt => format!("1 <= n <= {n}, 1 <= m <= {m}"),
            IdentityId::AgohEq11 => format!("1 <= m <= {m}, {pts} random rational z per m"),
            IdentityId::Stirl20 => format!("1 <= k <= {n}, r in {{1, 2}}"),
            _ => format!("1 <= n <= {n}"),
        }
    }

    fn rng(self, sweep: &Sweep, outer: usize) -> ChaCha8Rng {
        let tag = self.as_str().bytes().fold(0u64, |h, b| h.wrapping_mul(131).wrapping_add(u64::from(b)));
        ChaCha8Rng::seed_from_u64(sweep.seed ^ tag.rotate_left(17) ^ (outer as u64).wrapping_mul(0x9e37_79b9))
    }

    fn random_rat(rng: &mut ChaCha8Rng, allow_zero: bool) -> Rat {
        loop {
            let num: i64 = rng.gen_range(-25..=25);
            let den: i64 = rng.gen_range(1..=12);
            if allow_zero || num != 0 {
                return rat::rat(num, den);
            }
        }
    }

    /// Grid points for this identity, filtered by the domain predicate.
    pub fn cases(self, sweep: &Sweep) -> Vec<IdentityCase> {
        let mut grid: Vec<Params> = Vec::new();
        let ns = 0..=sweep.n_max;
        match self {
            IdentityId::Main
            | IdentityId::GenWorpitzky
            | IdentityId::Hockey
            | IdentityId::Reduction => {
                for n in ns {
                    for j in sweep.j_range() {
                        grid.push(Params::new().with_int("n", n as i64).with_int("j", j as i64));
                    }
                }
            }
            IdentityId::Agoh | IdentityId::AgohAlt => {
                for n in ns {
                    for m in 0..=sweep.m_max {
                        grid.push(Params::new().with_int("n", n as i64).with_int("m", m as i64));
                    }
                }
            }
            IdentityId::AgohEq11 => {
                for m in 0..=sweep.m_max {
                    let mut rng = self.rng(sweep, m);
                    for _ in 0..sweep.random_points {
                        let zv = Self::random_rat(&mut rng, true);
                        grid.push(Params::new().with_int("m", m as i64).with_rat("z", zv));
                    }
                }
            }
            IdentityId::PolyX => {
                for n in ns {
                    let mut rng = self.rng(sweep, n);
                    for _ in 0..sweep.random_points {
                        let x = Self::random_rat(&mut rng, false);
                        grid.push(Params::new().with_int("n", n as i64).with_rat("x", x));
                    }
                    for d in 0..=n {
                        grid.push(Params::new().with_int("n", n as i64).with_int("deg", d as i64));
                    }
                }
            }
            IdentityId::Stirl20 => {
                for k in ns {
                    for which in 1..=2 {
                        grid.push(Params::new().with_int("k", k as i64).with_int("r", which));
                    }
                }
            }
            _ => {
                for n in ns {
                    grid.push(Params::new().with_int("n", n as i64));
                }
            }
        }
        grid.into_iter()
            .filter(|p| self.in_domain(p, sweep.include_j_equals_n))
            .map(|p| IdentityCase::new(self, p))
            .collect()
    }
}

/// Evaluates both sides of a catalog identity exactly.
pub fn eval_identity(case: &IdentityCase) -> Result<(Rat, Rat), IdentityError> {
    eval_with(case, true)
}

fn eval_with(case: &IdentityCase, include_j_equals_n: bool) -> Result<(Rat, Rat), IdentityError> {
    let id = case.id;
    let p = &case.params;
    if !id.in_domain(p, include_j_equals_n) {
        return Err(IdentityError::OutOfDomain {
            id,
            params: p.clone(),
        });
    }
    let pair = match id {
        IdentityId::Main => {
            let n = need_usize(id, p, "n")?;
            let j = need_usize(id, p, "j")?;
            if j == n {
                return Err(IdentityError::IndeterminateRhs {
                    id,
                    params: p.clone(),
                    reason: "(C(n,n)-1) B_0/0 has the form 0/0; the left side equals H_n",
                });
            }
            let rhs = z(choose(n, j) - 1) * bernoulli(n - j) / r(n - j);
            (main_sum(n, j), rhs)
        }
        IdentityId::Worpitzky => {
            let n = need_usize(id, p, "n")?;
            let lhs = (1..=n).fold(Rat::zero(), |acc, k| {
                acc + rat::sign_pow(k) * Rat::new(stirling2(n, k) * factorial(k), BigInt::from(k + 1))
            });
            (lhs, bernoulli(n))
        }
        IdentityId::GenWorpitzky => {
            let n = need_usize(id, p, "n")?;
            let j = need_usize(id, p, "j")?;
            let rhs = z(choose(n - 1, j)) * bernoulli(n - j) / r(n - j);
            (gen_worpitzky_sum(n, j), rhs)
        }
        IdentityId::H1 => {
            let n = need_usize(id, p, "n")?;
            let lhs = (1..=n).fold(Rat::zero(), |acc, k| {
                acc + rat::sign_pow(k - 1) * z(stirling2(n, k) * factorial(k - 1)) * harmonic(k)
            });
            (lhs, bernoulli(n - 1))
        }
        IdentityId::H2 => {
            let n = need_usize(id, p, "n")?;
            let lhs = (2..=n).fold(Rat::zero(), |acc, k| {
                acc + rat::sign_pow(k)
                    * z(stirling2(n, k) * factorial(k - 1))
                    * harmonic(k - 1)
                    * harmonic(k)
            });
            (lhs, rat::rat(n as i64 + 1, 2) * bernoulli(n - 2))
        }
        IdentityId::K3Special => {
            let n = need_usize(id, p, "n")?;
            let lhs = (3..=n).fold(Rat::zero(), |acc, k| {
                let h = harmonic(k - 1);
                let inner = &h * &h - harmonic_gen(k - 1, 2);
                acc + rat::sign_pow(k - 1) * z(stirling2(n, k) * factorial(k - 1)) * inner * harmonic(k)
            });
            let nn = n as i64;
            (lhs, rat::rat(nn * nn + 2, 3) * bernoulli(n - 3))
        }
        IdentityId::PolyX => {
            let n = need_usize(id, p, "n")?;
            if let Some(x) = p.rat("x") {
                let lhs = weighted_bernoulli_sum(n, -1, |j| rat::pow(&x, n - j));
                (lhs, hw(n, &x) - harmonic(n) * rat::pow(&x, n))
            } else {
                let d = need_usize(id, p, "deg")?;
                // x^d comes from j = n - d
                let lhs = if d < n {
                    let j = n - d;
                    z(choose(n, j) - 1) * bernoulli(j) / r(j)
                } else {
                    Rat::zero()
                };
                let mut rhs = hw_poly(n).coeff(d);
                if d == n {
                    rhs -= harmonic(n);
                }
                (lhs, rhs)
            }
        }
        IdentityId::Agoh | IdentityId::AgohAlt => {
            let n = need_usize(id, p, "n")?;
            let m = need_usize(id, p, "m")?;
            let mm = r(m);
            let alternating = id == IdentityId::AgohAlt;
            let lhs = weighted_bernoulli_sum(n, -1, |j| {
                let s = if alternating { rat::sign_pow(j) } else { Rat::one() };
                s * rat::pow(&mm, n - j)
            });
            let mut bracket = harmonic(m) - harmonic(n);
            if alternating {
                bracket += rat::rat(n as i64 - 1, m as i64);
            }
            (lhs, rat::pow(&mm, n) * bracket - power_tail(n, m))
        }
        IdentityId::AgohM1 => {
            let n = need_usize(id, p, "n")?;
            let lhs = weighted_bernoulli_sum(n, -1, rat::sign_pow);
            (lhs, r(n) - harmonic(n))
        }
        IdentityId::AgohCombine => {
            let n = need_usize(id, p, "n")?;
            let two = int(2);
            let lhs = weighted_bernoulli_sum(n, -1, |j| Rat::one() - rat::pow(&two, j).recip());
            let rhs = (Rat::one() - rat::pow(&two, n - 1)) / rat::pow(&two, n);
            (lhs, rhs)
        }
        IdentityId::Rec16 => {
            let n = need_usize(id, p, "n")?;
            let two = int(2);
            let lhs = weighted_bernoulli_sum(n, 1, |j| Rat::one() - rat::pow(&two, j));
            (lhs, Rat::one())
        }
        IdentityId::Rec16Euler => {
            let n = need_usize(id, p, "n")?;
            let lhs = (1..=n).fold(Rat::zero(), |acc, j| {
                acc + z(choose(n, j) + 1) * euler_number(j - 1) / int(2)
            });
            (lhs, Rat::one())
        }
        IdentityId::AgohEq11 => {
            let m = need_usize(id, p, "m")?;
            let zv = need_rat(id, p, "z")?;
            let zm1 = &zv - Rat::one();
            let lhs = (1..=m).fold(Rat::zero(), |acc, k| {
                acc + z(choose(m, k)) * harmonic(k) * rat::pow(&zm1, k)
            });
            let tail = (0..m).fold(Rat::zero(), |acc, k| acc + rat::pow(&zv, k) / r(m - k));
            (lhs, harmonic(m) * rat::pow(&zv, m) - tail)
        }
        IdentityId::CumSum => {
            let n = need_usize(id, p, "n")?;
            let rhs = dibernoulli_at_one(n) + bernoulli(n) - dibernoulli(n) - Rat::one();
            (cumulative_bernoulli(n), rhs)
        }
        IdentityId::Eq14 => {
            let n = need_usize(id, p, "n")?;
            let nn = r(n);
            let rhs = squared_harmonic_stirling_sum(n) + bernoulli_poly_at(n, &Rat::one()) + &nn
                - &nn * &nn
                - Rat::one();
            (cumulative_bernoulli(n), rhs)
        }
        IdentityId::HsqBridge => {
            let n = need_usize(id, p, "n")?;
            let nn = r(n);
            let rhs = dibernoulli_at_one(n) - dibernoulli(n) + &nn * (&nn - Rat::one());
            (squared_harmonic_stirling_sum(n), rhs)
        }
        IdentityId::Hockey => {
            let n = need_usize(id, p, "n")?;
            let j = need_usize(id, p, "j")?;
            let lhs: BigInt = (0..j).map(|k| choose(n - k, j - k)).sum();
            (z(lhs), z(choose(n + 1, j) - 1))
        }
        IdentityId::Reduction => {
            let n = need_usize(id, p, "n")?;
            let j = need_usize(id, p, "j")?;
            let rhs = main_sum(n, j - 1) + z(choose(n, j)) * bernoulli(n + 1 - j) / r(n + 1 - j);
            (main_sum(n + 1, j), rhs)
        }
        IdentityId::Stirl20 => {
            let k = need_usize(id, p, "k")?;
            let which = need_usize(id, p, "r")?;
            let f = z(factorial(k - 1));
            let rhs = if which == 1 { f } else { f * harmonic(k - 1) };
            (z(stirling1(k, which)), rhs)
        }
        IdentityId::Bpint => {
            let n = need_usize(id, p, "n")?;
            let lhs = (0..=n).fold(Rat::zero(), |acc, j| {
                acc + z(choose(n, j)) * bernoulli(j) / r(n - j + 1)
            });
            (lhs, bernoulli_poly(n).integrate(&Rat::zero(), &Rat::one()))
        }
        IdentityId::HwCauchy => {
            let n = need_usize(id, p, "n")?;
            let lhs = (0..=n).fold(Rat::zero(), |acc, j| acc + bernoulli(j) / r(n - j + 1));
            let s = (1..=n).fold(Rat::zero(), |acc, k| {
                acc + z(stirling2(n, k)) * cauchy1(k) * harmonic(k)
            });
            (lhs, Rat::one() - r(n + 1) * s)
        }
    };
    Ok(pair)
}

/// The `n - j = 1` slice of the generalized Worpitzky identity, checked
/// against both signs of `B_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConventionProbe {
    pub cases: usize,
    pub closes_with_minus_half: usize,
    pub closes_with_plus_half: usize,
    /// `(n, lhs)` for every probed case.
    pub evidence: Vec<(usize, Rat)>,
}

/// Brute-force evaluation of GEN_WORPITZKY at `j = n - 1` for `2 <= n <= n_max`.
pub fn gen_worpitzky_convention_probe(n_max: usize) -> ConventionProbe {
    let mut probe = ConventionProbe {
        cases: 0,
        closes_with_minus_half: 0,
        closes_with_plus_half: 0,
        evidence: Vec::new(),
    };
    for n in 2..=n_max {
        let j = n - 1;
        let lhs = gen_worpitzky_sum(n, j);
        let c = z(choose(n - 1, j));
        if lhs == &c * rat::rat(-1, 2) {
            probe.closes_with_minus_half += 1;
        }
        if lhs == &c * rat::rat(1, 2) {
            probe.closes_with_plus_half += 1;
        }
        probe.cases += 1;
        probe.evidence.push((n, lhs));
    }
    probe
}

impl ConventionProbe {
    pub fn summary(&self, n_max: usize) -> String {
        let lhs_values: Vec<String> = {
            let mut v: Vec<String> = self.evidence.iter().map(|(_, l)| rat::to_fraction(l)).collect();
            v.dedup();
            v
        };
        let verdict = match (
            self.closes_with_minus_half == self.cases,
            self.closes_with_plus_half == self.cases,
        ) {
            (_, true) if self.cases > 0 => "the identity closes only under B_1 = +1/2",
            (true, _) if self.cases > 0 => "the identity closes under B_1 = -1/2",
            _ => "neither convention closes every case",
        };
        format!(
            "n-j = 1 subdomain, 2 <= n <= {n_max}, {} cases by direct summation: left side takes values [{}]; \
             right side C(n-1,n-1) B_1 matches with B_1 = -1/2 in {}/{} cases and with B_1 = +1/2 in {}/{} cases; {}",
            self.cases,
            lhs_values.join(", "),
            self.closes_with_minus_half,
            self.cases,
            self.closes_with_plus_half,
            self.cases,
            verdict
        )
    }
}

/// Runs every case of `id` inside `sweep` and collects all mismatches.
pub fn verify_identity(id: IdentityId, sweep: &Sweep) -> IdentityReport {
    let cases = id.cases(sweep);
    let fault = sweep.fault == Some(id);
    let mut failures: Vec<Failure> = cases
        .par_iter()
        .filter_map(|case| match eval_with(case, sweep.include_j_equals_n) {
            Ok((lhs, mut rhs)) => {
                if fault {
                    rhs += Rat::one();
                }
                (lhs != rhs).then(|| Failure {
                    id,
                    params: case.params.clone(),
                    lhs: Some(lhs),
                    rhs: Some(rhs),
                    error: None,
                })
            }
            Err(err) => {
                let lhs = match (&err, case.params.int("n")) {
                    (IdentityError::IndeterminateRhs { .. }, Some(n)) => Some(main_sum(n as usize, n as usize)),
                    _ => None,
                };
                Some(Failure {
                    id,
                    params: case.params.clone(),
                    lhs,
                    rhs: None,
                    error: Some(err.to_string()),
                })
            }
        })
        .collect();
    failures.sort_by(|a, b| a.params.cmp(&b.params));

    let mut notes = vec![format!("convention: B_1 = -1/2")];
    match id {
        IdentityId::Main if sweep.include_j_equals_n => notes.push(
            "j = n included on request: the right side (C(n,n)-1) B_0/0 is indeterminate there, \
             so those cases are reported as failures"
                .to_owned(),
        ),
        IdentityId::Main => notes.push(
            "j = n excluded: the right side (C(n,n)-1) B_0/0 is indeterminate while the left side equals H_n"
                .to_owned(),
        ),
        IdentityId::GenWorpitzky => {
            let probe_max = sweep.n_max.min(30);
            notes.push(gen_worpitzky_convention_probe(probe_max).summary(probe_max));
        }
        _ => {}
    }
    if fault {
        notes.push("off-by-one fault injected: right side shifted by +1".to_owned());
    }

    IdentityReport {
        id,
        domain: id.domain_description(sweep),
        cases: cases.len(),
        failures,
        notes,
    }
}

/// Sweeps the whole catalog in catalog order.
pub fn verify_all(sweep: &Sweep) -> Vec<IdentityReport> {
    IdentityId::ALL.iter().map(|&id| verify_identity(id, sweep)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::rat::rat;

    fn case(id: IdentityId, params: Params) -> IdentityCase {
        IdentityCase::new(id, params)
    }

    fn nj(n: i64, j: i64) -> Params {
        Params::new().with_int("n", n).with_int("j", j)
    }

    #[test]
    fn main_spot_values() {
        assert_eq!(
            eval_identity(&case(IdentityId::Main, nj(2, 1))).unwrap(),
            (rat(-1, 2), rat(-1, 2))
        );
        assert_eq!(
            eval_identity(&case(IdentityId::Main, nj(3, 2))).unwrap(),
            (int(-1), int(-1))
        );
        for n in 1..=10 {
            assert_eq!(
                eval_identity(&case(IdentityId::Main, nj(n, 0))).unwrap(),
                (int(0), int(0))
            );
        }
    }

    #[test]
    fn main_diagonal_is_indeterminate() {
        let err = eval_identity(&case(IdentityId::Main, nj(4, 4))).unwrap_err();
        assert!(matches!(err, IdentityError::IndeterminateRhs { .. }));
        assert_eq!(main_sum(4, 4), harmonic(4));
    }

    #[test]
    fn out_of_domain_rejected() {
        let err = eval_identity(&case(IdentityId::K3Special, Params::new().with_int("n", 3))).unwrap_err();
        assert!(matches!(err, IdentityError::OutOfDomain { .. }));
        let err = eval_identity(&case(IdentityId::PolyX, Params::new().with_int("n", 3).with_rat("x", int(0))))
            .unwrap_err();
        assert!(matches!(err, IdentityError::OutOfDomain { .. }));
        assert!(matches!(
            "NOPE".parse::<IdentityId>(),
            Err(IdentityError::UnknownIdentity(_))
        ));
    }

    #[test]
    fn rec16_first_value() {
        let (l, rr) = eval_identity(&case(IdentityId::Rec16, Params::new().with_int("n", 1))).unwrap();
        assert_eq!(l, int(1));
        assert_eq!(rr, int(1));
    }

    #[test]
    fn names_round_trip() {
        for &id in IdentityId::ALL {
            assert_eq!(id.as_str().parse::<IdentityId>().unwrap(), id);
        }
        assert_eq!(IdentityId::ALL.len(), 22);
    }

    #[test]
    fn small_sweeps_pass() {
        let sweep = Sweep {
            n_max: 12,
            m_max: 6,
            random_points: 3,
            ..Sweep::default()
        };
        for report in verify_all(&sweep) {
            assert!(report.passed(), "{:?}", report);
            assert!(report.cases > 0, "{}", report.id);
        }
    }

    #[test]
    fn generalized_worpitzky_unit_gap_needs_positive_half() {
        let probe = gen_worpitzky_convention_probe(30);
        assert_eq!(probe.cases, 29);
        assert_eq!(probe.closes_with_plus_half, 29);
        assert_eq!(probe.closes_with_minus_half, 0);
        assert!(probe.evidence.iter().all(|(_, l)| *l == rat(1, 2)));
    }

    #[test]
    fn fault_produces_failures() {
        let sweep = Sweep {
            n_max: 6,
            fault: Some(IdentityId::Hockey),
            ..Sweep::default()
        };
        let report = verify_identity(IdentityId::Hockey, &sweep);
        assert_eq!(report.failures.len(), report.cases);
        assert!(verify_identity(IdentityId::H1, &sweep).passed());
    }

    #[test]
    fn diagonal_request_surfaces_failures() {
        let sweep = Sweep {
            n_max: 5,
            include_j_equals_n: true,
            ..Sweep::default()
        };
        let report = verify_identity(IdentityId::Main, &sweep);
        assert_eq!(report.failures.len(), 5);
        assert!(report.failures.iter().all(|f| f.rhs.is_none() && f.error.is_some()));
        assert_eq!(report.failures[0].lhs, Some(harmonic(1)));
    }

    #[test]
    fn reports_are_deterministic() {
        let sweep = Sweep::with_n_max(8);
        let a = verify_identity(IdentityId::PolyX, &sweep);
        let b = verify_identity(IdentityId::PolyX, &sweep);
        assert_eq!(a, b);
        assert_eq!(IdentityId::PolyX.cases(&sweep), IdentityId::PolyX.cases(&sweep));
    }
}
