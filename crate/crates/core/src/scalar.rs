//! Numeric backends for vertex weights and densities.
//!
//! Two backends exist: exact rationals ([`Rational`]) and `f64`. A weighted
//! graph fixes its backend through its type parameter, so a single
//! computation can never mix the two.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::bigint::BigInt;
use num::{BigRational, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Tolerance on the total mass of an `f64` weight vector.
pub const APPROX_SUM_TOLERANCE: f64 = 1e-12;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + crate::density::Accum
    + 'static
{
    const EXACT: bool;

    fn from_rational(r: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    /// `p/q` for rationals, 17 significant digits for reals.
    fn render(&self) -> String;
    fn parse_literal(s: &str) -> Result<Self>;
    fn is_unit_mass(total: &Self) -> bool;

    fn powi(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }

    /// Sum over extensions with integer-scaled weights when that is cheaper.
    #[doc(hidden)]
    fn weighted_extension_sum(
        ext: &crate::density::Extension<'_>,
        weights: &[Self],
    ) -> Self {
        ext.sum_generic(weights)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn render(&self) -> String {
        format_real(*self)
    }

    fn parse_literal(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some((a, b)) = t.split_once('/') {
            let r = parse_rational(&format!("{a}/{b}"))?;
            return Ok(ToPrimitive::to_f64(&r).unwrap_or(f64::NAN));
        }
        t.parse::<f64>()
            .map_err(|e| Error::Parse { pos: 0, msg: format!("bad number {t:?}: {e}") })
    }

    fn is_unit_mass(total: &Self) -> bool {
        (total - 1.0).abs() <= APPROX_SUM_TOLERANCE
    }

    fn powi(&self, k: u32) -> Self {
        f64::powi(*self, k as i32)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn render(&self) -> String {
        format_rational(self)
    }

    fn parse_literal(s: &str) -> Result<Self> {
        parse_rational(s)
    }

    fn is_unit_mass(total: &Self) -> bool {
        total.is_one()
    }

    fn weighted_extension_sum(ext: &crate::density::Extension<'_>, weights: &[Self]) -> Self {
        // Scale to a common denominator and accumulate in integers.
        let denom = weights
            .iter()
            .fold(BigInt::one(), |acc, w| num::integer::lcm(acc, w.denom().clone()));
        let scaled: Vec<BigInt> = weights
            .iter()
            .map(|w| w.numer() * (&denom / w.denom()))
            .collect();
        let total = ext.sum_generic(&scaled);
        let free = ext.free_count() as u32;
        Rational::new(total, num::pow(denom, free as usize))
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    format!("{x:.16e}")
}

/// Parses `p`, `p/q` or a terminating decimal such as `0.25` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = |m: &str| Error::Parse { pos: 0, msg: format!("bad rational {t:?}: {m}") };
    if let Some((a, b)) = t.split_once('/') {
        let n: BigInt = a.trim().parse().map_err(|_| bad("numerator"))?;
        let d: BigInt = b.trim().parse().map_err(|_| bad("denominator"))?;
        if d.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad("integer part"))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("fraction part"));
        }
        let frac_num: BigInt = frac.parse().map_err(|_| bad("fraction part"))?;
        let scale = num::pow(BigInt::from(10), frac.len());
        let mut r = Rational::new(frac_num, scale);
        if neg {
            r = -r;
        }
        return Ok(Rational::from_integer(int_part) + r);
    }
    let n: BigInt = t.parse().map_err(|_| bad("integer"))?;
    Ok(Rational::from_integer(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn is_positive<S: Scalar>(x: &S) -> bool {
    *x > S::zero()
}
