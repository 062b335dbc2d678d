//! Truncated power series over exact rationals.
//!
//! An [`Egf`] of order `N` stores the ordinary coefficients `c_0..=c_N` of
//! `sum c_n t^n`. [`Egf::egf`] reads the same data as an exponential
//! generating function, `a_n = c_n * n!`. Binary operations truncate to the
//! smaller of the two orders, so no operation reads beyond a known term.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::seqcore::rat::{self, Rat};
use crate::seqcore::{binom, factorial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FpsError {
    #[error("inner series must have zero constant term, found {0}")]
    NonzeroConstant(Rat),
    #[error("series with zero constant term has no multiplicative inverse")]
    NotInvertible,
    #[error("unknown series `{0}`")]
    UnknownSeries(String),
    #[error("missing parameter `{param}` for series `{series}`")]
    MissingParameter { series: String, param: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Egf {
    coeffs: Vec<Rat>,
}

impl Egf {
    /// Builds a series of order `coeffs.len() - 1`. Panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least one coefficient");
        Self { coeffs }
    }

    /// Series whose ordinary coefficients are `f(0..=order)`.
    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rat) -> Self {
        Self::from_coeffs((0..=order).map(f).collect())
    }

    /// Series with exponential coefficients `a(n)`, i.e. `c_n = a(n)/n!`.
    pub fn from_egf_fn(order: usize, mut a: impl FnMut(usize) -> Rat) -> Self {
        Self::from_fn(order, |n| a(n) / Rat::from_integer(factorial(n)))
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| Rat::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, Rat::one())
    }

    pub fn constant(order: usize, c: Rat) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `t`.
    pub fn t(order: usize) -> Self {
        Self::from_fn(order, |n| if n == 1 { Rat::one() } else { Rat::zero() })
    }

    /// `e^{a t}`.
    pub fn exp_linear(order: usize, a: &Rat) -> Self {
        Self::from_egf_fn(order, |n| rat::pow(a, n))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Ordinary coefficient of `t^n`. Panics past the order.
    pub fn coeff(&self, n: usize) -> &Rat {
        &self.coeffs[n]
    }

    /// Exponential coefficient `n! [t^n]`.
    pub fn egf(&self, n: usize) -> Rat {
        &self.coeffs[n] * Rat::from_integer(factorial(n))
    }

    pub fn egf_coeffs(&self) -> Vec<Rat> {
        (0..=self.order()).map(|n| self.egf(n)).collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs[..=order.min(self.order())].to_vec())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `f(0) = 0` check shared by every composition-like operation.
    fn require_zero_constant(&self) -> Result<(), FpsError> {
        if self.coeffs[0].is_zero() {
            Ok(())
        } else {
            Err(FpsError::NonzeroConstant(self.coeffs[0].clone()))
        }
    }

    /// `f(t)/t`, one order lower. Requires `f(0) = 0`.
    pub fn div_t(&self) -> Result<Self, FpsError> {
        self.require_zero_constant()?;
        if self.order() == 0 {
            return Ok(Self::zero(0));
        }
        Ok(Self::from_coeffs(self.coeffs[1..].to_vec()))
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::from_fn(self.order() - 1, |n| {
            &self.coeffs[n + 1] * Rat::from_integer(BigInt::from(n + 1))
        })
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self, FpsError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(FpsError::NotInvertible);
        }
        let inv0 = c0.recip();
        let mut out: Vec<Rat> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..=self.order() {
            let s = (1..=n).fold(Rat::zero(), |acc, k| acc + &self.coeffs[k] * &out[n - k]);
            out.push(-s * &inv0);
        }
        Ok(Self::from_coeffs(out))
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate at a rational point using only the stored terms.
    pub fn eval_truncated(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }
}

impl Add for &Egf {
    type Output = Egf;
    fn add(self, rhs: &Egf) -> Egf {
        let n = self.order().min(rhs.order());
        Egf::from_fn(n, |i| &self.coeffs[i] + &rhs.coeffs[i])
    }
}

impl Sub for &Egf {
    type Output = Egf;
    fn sub(self, rhs: &Egf) -> Egf {
        let n = self.order().min(rhs.order());
        Egf::from_fn(n, |i| &self.coeffs[i] - &rhs.coeffs[i])
    }
}

impl Mul for &Egf {
    type Output = Egf;
    fn mul(self, rhs: &Egf) -> Egf {
        let n = self.order().min(rhs.order());
        let mut out = vec![Rat::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Egf::from_coeffs(out)
    }
}

impl Neg for &Egf {
    type Output = Egf;
    fn neg(self) -> Egf {
        Egf::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Egf {
            type Output = Egf;
            fn $f(self, rhs: Egf) -> Egf {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

pub fn add(a: &Egf, b: &Egf) -> Egf {
    a + b
}

pub fn sub(a: &Egf, b: &Egf) -> Egf {
    a - b
}

pub fn mul(a: &Egf, b: &Egf) -> Egf {
    a * b
}

pub fn scale(a: &Egf, c: &Rat) -> Egf {
    a.scale(c)
}

/// `exp(f)` for `f(0) = 0`, from `g' = f' g`.
pub fn exp_series(f: &Egf) -> Result<Egf, FpsError> {
    f.require_zero_constant()?;
    let n = f.order();
    let mut g: Vec<Rat> = vec![Rat::one()];
    for m in 1..=n {
        let s = (1..=m).fold(Rat::zero(), |acc, k| {
            acc + Rat::from_integer(BigInt::from(k)) * &f.coeffs[k] * &g[m - k]
        });
        g.push(s / Rat::from_integer(BigInt::from(m)));
    }
    Ok(Egf::from_coeffs(g))
}

/// `ln(1 + f)` for `f(0) = 0`, as the integral of `f'/(1+f)`.
pub fn log1p_series(f: &Egf) -> Result<Egf, FpsError> {
    f.require_zero_constant()?;
    let n = f.order();
    if n == 0 {
        return Ok(Egf::zero(0));
    }
    let one_plus = &Egf::one(n) + f;
    let q = &f.derivative() * &one_plus.truncate(n - 1).inverse()?;
    let mut out = vec![Rat::zero()];
    out.extend(
        q.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c / Rat::from_integer(BigInt::from(i + 1))),
    );
    Ok(Egf::from_coeffs(out))
}

/// `g(f(t))` for `f(0) = 0`, by Horner's rule in `f`.
pub fn compose(g: &Egf, f: &Egf) -> Result<Egf, FpsError> {
    f.require_zero_constant()?;
    let n = g.order().min(f.order());
    let f = f.truncate(n);
    let mut acc = Egf::constant(n, g.coeffs[n].clone());
    for i in (0..n).rev() {
        acc = &acc * &f;
        acc.coeffs[0] += &g.coeffs[i];
    }
    Ok(acc)
}

/// `Li_p(f) = sum_{k>=1} f^k / k^p` for `f(0) = 0`.
pub fn polylog_series(p: u32, f: &Egf) -> Result<Egf, FpsError> {
    f.require_zero_constant()?;
    let n = f.order();
    let mut acc = Egf::zero(n);
    let mut power = Egf::one(n);
    for k in 1..=n {
        power = &power * f;
        let w = Rat::new(BigInt::one(), BigInt::from(k).pow(p));
        acc = &acc + &power.scale(&w);
    }
    Ok(acc)
}

/// `(1 + u)^a = sum_k C(a, k) u^k` as a series in `u`.
pub fn binomial_series(a: &Rat, order: usize) -> Egf {
    Egf::from_fn(order, |k| binom(a, k))
}

/// `(e^t - 1)^k / k!`, the exponential generating function of `{n;k}`.
pub fn stirling2_egf(k: usize, order: usize) -> Egf {
    let em1 = &Egf::exp_linear(order, &Rat::one()) - &Egf::one(order);
    em1.pow(k).scale(&Rat::new(BigInt::one(), factorial(k)))
}

/// `-ln(1-x)/(1-x) = sum H_k x^k`.
pub fn harmonic_ogf(order: usize) -> Egf {
    let minus_x = -&Egf::t(order);
    let log = log1p_series(&minus_x).expect("zero constant term");
    let inv = (&Egf::one(order) + &minus_x).inverse().expect("invertible");
    &(-&log) * &inv
}

/// `(Li_2(x) + ln^2(1-x))/(1-x) = sum H_k^2 x^k`.
pub fn harmonic_sq_ogf(order: usize) -> Egf {
    let x = Egf::t(order);
    let li2 = polylog_series(2, &x).expect("zero constant term");
    let log = log1p_series(&-&x).expect("zero constant term");
    let inv = (&Egf::one(order) - &x).inverse().expect("invertible");
    &(&li2 + &(&log * &log)) * &inv
}

/// `2/sqrt(1-4t) * ln((1 + sqrt(1-4t)) / (2 sqrt(1-4t))) = sum C(2k,k) H_k t^k`.
pub fn central_binomial_harmonic_ogf(order: usize) -> Egf {
    let minus_4t = Egf::t(order).scale(&rat::int(-4));
    let root = compose(&binomial_series(&rat::rat(1, 2), order), &minus_4t)
        .expect("zero constant term");
    let inv_root = root.inverse().expect("sqrt(1-4t) starts at 1");
    let ratio = (&(&Egf::one(order) + &root) * &inv_root).scale(&rat::rat(1, 2));
    let log = log1p_series(&(&ratio - &Egf::one(order))).expect("ratio starts at 1");
    (&inv_root * &log).scale(&rat::int(2))
}

/// `2 e^{xt} / (e^t + 1)`, the generating function of the Euler polynomials
/// at a fixed point `x`.
pub fn euler_egf(x: &Rat, order: usize) -> Egf {
    let denom = &Egf::exp_linear(order, &Rat::one()) + &Egf::one(order);
    (&Egf::exp_linear(order, x) * &denom.inverse().expect("constant term 2")).scale(&rat::int(2))
}

/// `Li_p(1 - e^{-t}) / (1 - e^{-t}) * e^{xt}`.
pub fn poly_bernoulli_egf(p: u32, x: &Rat, order: usize) -> Egf {
    // both numerator and denominator vanish at t = 0; divide each by t first
    let inner = &Egf::one(order + 1) - &Egf::exp_linear(order + 1, &-Rat::one());
    let li = polylog_series(p, &inner).expect("zero constant term");
    let quotient = &li.div_t().unwrap() * &inner.div_t().unwrap().inverse().expect("starts at 1");
    &quotient * &Egf::exp_linear(order, x)
}

/// Parameters consulted by [`named_series`].
#[derive(Debug, Clone, Default)]
pub struct SeriesParams {
    pub k: Option<usize>,
    pub p: Option<u32>,
    pub x: Option<Rat>,
}

/// Catalog names accepted by [`named_series`].
pub const SERIES_NAMES: &[&str] = &[
    "stirling2-egf",
    "harmonic-ogf",
    "harmonic-sq-ogf",
    "central-binomial-harmonic-ogf",
    "euler-egf",
    "polybern",
];

/// Builds a catalog series by name. `euler-egf` and `polybern` default to
/// `x = 0`; `stirling2-egf` needs `k` and `polybern` needs `p`.
pub fn named_series(name: &str, params: &SeriesParams, order: usize) -> Result<Egf, FpsError> {
    let missing = |param| FpsError::MissingParameter {
        series: name.to_owned(),
        param,
    };
    let x = params.x.clone().unwrap_or_else(Rat::zero);
    match name {
        "stirling2-egf" => Ok(stirling2_egf(params.k.ok_or_else(|| missing("k"))?, order)),
        "harmonic-ogf" => Ok(harmonic_ogf(order)),
        "harmonic-sq-ogf" => Ok(harmonic_sq_ogf(order)),
        "central-binomial-harmonic-ogf" => Ok(central_binomial_harmonic_ogf(order)),
        "euler-egf" => Ok(euler_egf(&x, order)),
        "polybern" => Ok(poly_bernoulli_egf(
            params.p.ok_or_else(|| missing("p"))?,
            &x,
            order,
        )),
        _ => Err(FpsError::UnknownSeries(name.to_owned())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::rat::{int, rat};
    use crate::seqcore::{choose, harmonic, stirling2};

    const ORDER: usize = 32;

    #[test]
    fn products() {
        let a = Egf::from_coeffs(vec![int(1), int(1), int(0)]);
        let b = Egf::from_coeffs(vec![int(1), int(-1), int(0)]);
        assert_eq!(mul(&a, &b).coeffs(), &[int(1), int(0), int(-1)]);

        let e = Egf::exp_linear(ORDER, &int(1));
        let e2 = mul(&e, &e);
        for n in 0..=ORDER {
            assert_eq!(e2.egf(n), rat::pow(&int(2), n));
        }
        assert_eq!(scale(&e, &int(0)), Egf::zero(ORDER));
        assert_eq!(sub(&add(&e, &e), &e), e);
    }

    #[test]
    fn truncation_to_smaller_order() {
        let a = Egf::one(3);
        let b = Egf::one(5);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!((&a * &b).order(), 3);
    }

    #[test]
    fn exp_log_and_compose() {
        let t = Egf::t(ORDER);
        assert_eq!(exp_series(&t).unwrap(), Egf::exp_linear(ORDER, &int(1)));

        let em1 = &Egf::exp_linear(ORDER, &int(1)) - &Egf::one(ORDER);
        assert_eq!(log1p_series(&em1).unwrap(), t);

        let geometric = Egf::from_fn(ORDER, |_| int(1));
        assert_eq!(compose(&geometric, &t).unwrap(), geometric);
    }

    #[test]
    fn nonzero_constant_rejected() {
        let f = Egf::one(4);
        assert!(matches!(exp_series(&f), Err(FpsError::NonzeroConstant(_))));
        assert!(matches!(log1p_series(&f), Err(FpsError::NonzeroConstant(_))));
        assert!(matches!(compose(&f, &f), Err(FpsError::NonzeroConstant(_))));
        assert!(matches!(polylog_series(2, &f), Err(FpsError::NonzeroConstant(_))));
        assert_eq!(Egf::zero(4).inverse(), Err(FpsError::NotInvertible));
    }

    #[test]
    fn polylog_examples() {
        let inner = &Egf::one(ORDER) - &Egf::exp_linear(ORDER, &int(-1));
        assert_eq!(polylog_series(1, &inner).unwrap(), Egf::t(ORDER));

        let li2 = polylog_series(2, &Egf::t(ORDER)).unwrap();
        for k in 1..=ORDER {
            assert_eq!(*li2.coeff(k), rat(1, (k * k) as i64));
        }
        assert_eq!(polylog_series(3, &Egf::zero(ORDER)).unwrap(), Egf::zero(ORDER));

        // p = 1 against -ln(1 - f)
        let f = Egf::from_fn(12, |n| if n == 0 { int(0) } else { rat(n as i64, 3) });
        let minus = log1p_series(&-&f).unwrap();
        assert_eq!(polylog_series(1, &f).unwrap(), -&minus);
    }

    #[test]
    fn catalog_series() {
        let s = stirling2_egf(1, 8);
        for n in 0..=8 {
            assert_eq!(s.egf(n), if n == 0 { int(0) } else { int(1) });
        }
        let s = stirling2_egf(4, 24);
        for n in 0..=24 {
            assert_eq!(s.egf(n), Rat::from_integer(stirling2(n, 4)));
        }

        let h = harmonic_ogf(ORDER);
        let h2 = harmonic_sq_ogf(ORDER);
        for k in 0..=ORDER {
            assert_eq!(*h.coeff(k), harmonic(k));
            assert_eq!(*h2.coeff(k), harmonic(k) * harmonic(k));
        }

        let cb = central_binomial_harmonic_ogf(16);
        for k in 0..=16 {
            assert_eq!(*cb.coeff(k), Rat::from_integer(choose(2 * k, k)) * harmonic(k));
        }
    }

    #[test]
    fn named_lookup() {
        let params = SeriesParams { k: Some(2), ..Default::default() };
        let s = named_series("stirling2-egf", &params, 5).unwrap();
        let egf: Vec<Rat> = s.egf_coeffs();
        assert_eq!(egf, vec![int(0), int(0), int(1), int(3), int(7), int(15)]);
        assert!(matches!(
            named_series("nope", &params, 5),
            Err(FpsError::UnknownSeries(_))
        ));
        assert!(matches!(
            named_series("polybern", &SeriesParams::default(), 5),
            Err(FpsError::MissingParameter { .. })
        ));
    }
}
