//! Arbitrary-precision rational scalars.
//!
//! Every quantity in this crate (coordinates, volumes, coefficients) is an
//! exact rational; no floating point enters any computation. Rationals
//! serialize as `"p/q"` (or `"p"` when the denominator is 1) in canonical
//! form with positive denominator.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always stored reduced with positive denominator.
pub type Rat = num_rational::BigRational;

/// Rational from an integer numerator and denominator. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `r^k` by repeated multiplication.
pub fn rat_pow(r: &Rat, k: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..k {
        acc *= r;
    }
    acc
}

/// Parse `"p/q"` or `"p"` into a reduced rational with positive denominator.
///
/// Decimal notation is rejected: a decimal on a command line silently loses
/// exactness, so only integer and fraction forms are accepted.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty rational".into(),
        });
    }
    let (num_str, den_str) = match s.find('/') {
        Some(i) => (&s[..i], &s[i + 1..]),
        None => (s, "1"),
    };
    let numer: BigInt = num_str.parse().map_err(|_| Error::Parse {
        pos: 0,
        msg: format!("invalid integer '{num_str}'"),
    })?;
    let denom: BigInt = den_str.parse().map_err(|_| Error::Parse {
        pos: num_str.len() + 1,
        msg: format!("invalid integer '{den_str}'"),
    })?;
    if denom.is_zero() {
        return Err(Error::Parse {
            pos: num_str.len() + 1,
            msg: "zero denominator".into(),
        });
    }
    Ok(Rat::new(numer, denom))
}

/// True if `r` is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// The integer value of `r`, if it is one.
pub fn to_integer(r: &Rat) -> Option<BigInt> {
    is_integer(r).then(|| r.numer().clone())
}

/// Exact conversion to `f64` quality is irrelevant here: this is only used by
/// the OFF/SVG viewers, never by any computation.
pub fn to_f64(r: &Rat) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Good enough for coordinates in viewing exports.
    let nf = n.to_string().parse::<f64>().unwrap_or(if n.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    });
    let df = d.to_string().parse::<f64>().unwrap_or(f64::INFINITY);
    nf / df
}
