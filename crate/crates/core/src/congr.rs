//! Congruences modulo an odd prime `p` and its square.
//!
//! A rational `a/b` with `p ∤ b` reduces to `a * b^{-1}` modulo `p` or `p^2`.
//! Every checked expression is summed exactly first and reduced once at the
//! end; several sums contain single terms with `p` in the denominator that
//! only cancel in aggregate.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::classical::{bernoulli, cauchy1, euler_number};
use crate::identities::Params;
use crate::seqcore::rat::{self, Rat};
use crate::seqcore::{factorial, harmonic, stirling2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongrError {
    #[error("{expr} = {value} has a denominator divisible by p = {p}")]
    DenominatorDivisibleByP { expr: String, value: String, p: u64 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("modulus {modulus} is neither p nor p^2 for p = {p}")]
    InvalidModulus { modulus: u64, p: u64 },
    #[error("{id} requires p >= {min}, got p = {p}")]
    BelowMinimumPrime { id: CongruenceId, min: u64, p: u64 },
    #[error("unknown congruence `{0}`")]
    UnknownCongruence(String),
}

/// A residue class `value mod modulus`, `0 <= value < modulus`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Residue {
    pub value: u64,
    pub modulus: u64,
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

pub fn is_odd_prime(p: u64) -> bool {
    p > 2 && p % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Odd primes up to `limit`, by the sieve of Eratosthenes.
pub fn odd_primes_up_to(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    if n < 3 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        if i > 2 {
            out.push(i as u64);
        }
        for m in (i * i..=n).step_by(i) {
            composite[m] = true;
        }
    }
    out
}

fn reduce(r: &Rat, modulus: u64, p: u64, expr: &str) -> Result<Residue, CongrError> {
    if !is_odd_prime(p) {
        return Err(CongrError::NotOddPrime(p));
    }
    if modulus != p && modulus != p * p {
        return Err(CongrError::InvalidModulus { modulus, p });
    }
    let m = BigInt::from(modulus);
    if (r.denom() % BigInt::from(p)).is_zero() {
        return Err(CongrError::DenominatorDivisibleByP {
            expr: expr.to_owned(),
            value: rat::to_fraction(r),
            p,
        });
    }
    let num = r.numer().mod_floor(&m).to_i64().expect("reduced below modulus");
    let den = r.denom().mod_floor(&m).to_i64().expect("reduced below modulus");
    let egcd = den.extended_gcd(&(modulus as i64));
    debug_assert!(egcd.gcd.is_one());
    let inv = egcd.x.mod_floor(&(modulus as i64));
    let value = (i128::from(num) * i128::from(inv)).rem_euclid(i128::from(modulus)) as u64;
    Ok(Residue { value, modulus })
}

/// `num * den^{-1} mod modulus`, where `modulus` is `p` or `p^2`.
pub fn rational_mod(r: &Rat, modulus: u64, p: u64) -> Result<Residue, CongrError> {
    reduce(r, modulus, p, "value")
}

macro_rules! congruences {
    ($($variant:ident => $name:literal, $min:literal, $statement:literal;)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum CongruenceId {
            $($variant,)*
        }

        impl CongruenceId {
            pub const ALL: &'static [CongruenceId] = &[$(CongruenceId::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(CongruenceId::$variant => $name,)*
                }
            }

            /// Smallest prime the statement is claimed for.
            pub fn min_prime(self) -> u64 {
                match self {
                    $(CongruenceId::$variant => $min,)*
                }
            }

            pub fn statement(self) -> &'static str {
                match self {
                    $(CongruenceId::$variant => $statement,)*
                }
            }
        }

        impl FromStr for CongruenceId {
            type Err = CongrError;
            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($name => Ok(CongruenceId::$variant),)*
                    _ => Err(CongrError::UnknownCongruence(s.to_owned())),
                }
            }
        }
    };
}

congruences! {
    C1 => "C1", 3, "sum_{j=0}^{p} p B_j = -1 (mod p)";
    C4 => "C4", 5, "sum_{j=0}^{p-3} B_j = -1 (mod p)";
    C2 => "C2", 3, "sum_{j=0}^{p} E_j = 3/2 (mod p)";
    C3 => "C3", 3, "p sum_{j=0}^{p} B_j/(p-j+1) = -1 (mod p)";
    C3Sq => "C3SQ", 3, "p sum_{j=0}^{p} B_j/(p-j+1) = -p/2 - c_p (mod p^2)";
    Glaisher => "GLAISHER", 3, "(p-1)! = -p + p B_{p-1} (mod p^2)";
    Babbage => "BABBAGE", 3, "H_{p-1} = 0 (mod p)";
    Vsc => "VSC", 3, "p B_{2j} = -1 (mod p) if (p-1) | 2j, else 0 (mod p)";
    Cp1 => "CP1", 3, "c_p = 1 (mod p) and p c_{p-1} = 1 (mod p)";
    StirP => "STIRP", 3, "{p;k} = 0 (mod p) for 2 <= k <= p-1";
    C1Sq => "C1SQ", 3, "sum_{j=0}^{p} p B_j = (p-1)! (mod p^2)";
}

impl fmt::Display for CongruenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CongruenceId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// One residue comparison. `lhs_value`/`rhs_value` are the exact rationals
/// before reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceCheck {
    pub id: CongruenceId,
    pub params: Params,
    #[serde(serialize_with = "rat::serialize")]
    pub lhs_value: Rat,
    #[serde(serialize_with = "rat::serialize")]
    pub rhs_value: Rat,
    pub lhs: Residue,
    pub rhs: Residue,
    pub pass: bool,
}

struct Builder {
    id: CongruenceId,
    p: u64,
    out: Vec<CongruenceCheck>,
}

impl Builder {
    fn push(
        &mut self,
        params: Params,
        modulus: u64,
        (lhs_expr, lhs_value): (&str, Rat),
        (rhs_expr, rhs_value): (&str, Rat),
    ) -> Result<(), CongrError> {
        let lhs = reduce(&lhs_value, modulus, self.p, lhs_expr)?;
        let rhs = reduce(&rhs_value, modulus, self.p, rhs_expr)?;
        self.out.push(CongruenceCheck {
            id: self.id,
            params,
            lhs_value,
            rhs_value,
            lhs,
            rhs,
            pass: lhs == rhs,
        });
        Ok(())
    }
}

fn r(v: u64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

fn c3_sum(p: u64) -> Rat {
    let pu = p as usize;
    r(p) * (0..=pu).fold(Rat::zero(), |acc, j| acc + bernoulli(j) / r(p - j as u64 + 1))
}

fn c1_sum(p: u64) -> Rat {
    r(p) * (0..=p as usize).map(bernoulli).sum::<Rat>()
}

/// Evaluates one catalog congruence at `p`. Most entries yield one check;
/// VSC, CP1 and STIRP yield one per sub-index and C1SQ adds its reduction
/// modulo `p` (which must agree with C1).
pub fn check_congruence(id: CongruenceId, p: u64) -> Result<Vec<CongruenceCheck>, CongrError> {
    if !is_odd_prime(p) {
        return Err(CongrError::NotOddPrime(p));
    }
    if p < id.min_prime() {
        return Err(CongrError::BelowMinimumPrime {
            id,
            min: id.min_prime(),
            p,
        });
    }
    let pp = p * p;
    let pu = p as usize;
    let base = Params::new().with_int("p", p as i64);
    let minus_one = -Rat::one();
    let mut b = Builder { id, p, out: Vec::new() };
    match id {
        CongruenceId::C1 => {
            b.push(base, p, ("p sum B_j", c1_sum(p)), ("-1", minus_one))?;
        }
        CongruenceId::C4 => {
            let s: Rat = (0..=pu - 3).map(bernoulli).sum();
            b.push(base, p, ("sum_{j<=p-3} B_j", s), ("-1", minus_one))?;
        }
        CongruenceId::C2 => {
            let s: Rat = (0..=pu).map(euler_number).sum();
            b.push(base, p, ("sum E_j", s), ("3/2", rat::rat(3, 2)))?;
        }
        CongruenceId::C3 => {
            b.push(base, p, ("p sum B_j/(p-j+1)", c3_sum(p)), ("-1", minus_one))?;
        }
        CongruenceId::C3Sq => {
            let rhs = -r(p) / r(2) - cauchy1(pu);
            b.push(base, pp, ("p sum B_j/(p-j+1)", c3_sum(p)), ("-p/2 - c_p", rhs))?;
        }
        CongruenceId::Glaisher => {
            let lhs = Rat::from_integer(factorial(pu - 1));
            let rhs = -r(p) + r(p) * bernoulli(pu - 1);
            b.push(base, pp, ("(p-1)!", lhs), ("-p + p B_{p-1}", rhs))?;
        }
        CongruenceId::Babbage => {
            b.push(base, p, ("H_{p-1}", harmonic(pu - 1)), ("0", Rat::zero()))?;
        }
        CongruenceId::Vsc => {
            for j in 1..pu {
                let lhs = r(p) * bernoulli(2 * j);
                let rhs = if (2 * j) % (pu - 1) == 0 { minus_one.clone() } else { Rat::zero() };
                b.push(base.clone().with_int("j", j as i64), p, ("p B_{2j}", lhs), ("0 or -1", rhs))?;
            }
        }
        CongruenceId::Cp1 => {
            b.push(base.clone().with_int("part", 1), p, ("c_p", cauchy1(pu)), ("1", Rat::one()))?;
            let lhs = r(p) * cauchy1(pu - 1);
            b.push(base.with_int("part", 2), p, ("p c_{p-1}", lhs), ("1", Rat::one()))?;
        }
        CongruenceId::StirP => {
            for k in 2..pu {
                let lhs = Rat::from_integer(stirling2(pu, k));
                b.push(base.clone().with_int("k", k as i64), p, ("{p;k}", lhs), ("0", Rat::zero()))?;
            }
        }
        CongruenceId::C1Sq => {
            let lhs = c1_sum(p);
            let rhs = Rat::from_integer(factorial(pu - 1));
            b.push(base.clone().with_int("power", 2), pp, ("p sum B_j", lhs.clone()), ("(p-1)!", rhs))?;
            b.push(base.with_int("power", 1), p, ("p sum B_j", lhs), ("-1", minus_one))?;
        }
    }
    Ok(b.out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkippedCheck {
    pub id: CongruenceId,
    pub p: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErroredCheck {
    pub id: CongruenceId,
    pub p: u64,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeSweepReport {
    pub p_max: u64,
    pub primes: Vec<u64>,
    pub checks: Vec<CongruenceCheck>,
    pub skipped: Vec<SkippedCheck>,
    pub errors: Vec<ErroredCheck>,
    pub notes: Vec<String>,
}

impl PrimeSweepReport {
    pub fn failures(&self) -> impl Iterator<Item = &CongruenceCheck> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.checks.iter().all(|c| c.pass)
    }
}

/// Runs the chosen congruences at every odd prime `p <= p_max`, ordered by
/// catalog entry and then by prime.
pub fn prime_sweep(ids: &[CongruenceId], p_max: u64) -> PrimeSweepReport {
    let primes = odd_primes_up_to(p_max);
    let mut report = PrimeSweepReport {
        p_max,
        primes: primes.clone(),
        checks: Vec::new(),
        skipped: Vec::new(),
        errors: Vec::new(),
        notes: Vec::new(),
    };
    for &id in ids {
        for &p in &primes {
            match check_congruence(id, p) {
                Ok(checks) => report.checks.extend(checks),
                Err(CongrError::BelowMinimumPrime { min, .. }) => report.skipped.push(SkippedCheck {
                    id,
                    p,
                    reason: format!("requires p >= {min}"),
                }),
                Err(e) => report.errors.push(ErroredCheck {
                    id,
                    p,
                    error: e.to_string(),
                }),
            }
        }
    }
    if ids.contains(&CongruenceId::C2) && primes.contains(&3) {
        report.notes.push(
            "C2 at p = 3: E_0+E_1+E_2+E_3 = 3/4 and 3/4 = 0 = 3/2 (mod 3), checked directly".to_owned(),
        );
    }
    if ids.contains(&CongruenceId::C1Sq) {
        report.notes.push(
            "C1SQ power=1 rows reduce the mod p^2 left side modulo p and compare with C1".to_owned(),
        );
    }
    report
}
