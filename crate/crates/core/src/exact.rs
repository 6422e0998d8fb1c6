//! Exact rational arithmetic and decimal I/O.
//!
//! [`Rational`] is the universal number type of the crate: every certified
//! computation happens in it, with no rounding outside the explicit
//! round-half-even entry points below. Values are kept in canonical reduced
//! form (gcd 1, positive denominator) by construction.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub use num_bigint::BigInt;

/// Exact signed fraction with arbitrary-size parts, always reduced.
pub type Rational = num_rational::BigRational;

/// Convenience constructor from machine integers. Panics on `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `10^exp` as an exact rational; negative exponents give `1/10^|exp|`.
pub fn pow10(exp: i64) -> Rational {
    let p = BigInt::from(10).pow(exp.unsigned_abs() as u32);
    if exp >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::from(1), p)
    }
}

pub fn ten_pow(exp: u32) -> BigInt {
    BigInt::from(10).pow(exp)
}

/// A signed decimal numeral. It denotes its value exactly: a decimal string
/// IS the rational `digits / 10^(fraction length)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecimalString {
    negative: bool,
    int_digits: String,
    frac_digits: String,
}

impl DecimalString {
    /// The exact rational this numeral denotes.
    pub fn value(&self) -> Rational {
        let mut digits = String::with_capacity(self.int_digits.len() + self.frac_digits.len());
        digits.push_str(&self.int_digits);
        digits.push_str(&self.frac_digits);
        let mut n: BigInt = digits.parse().expect("digit strings are valid integers");
        if self.negative {
            n = -n;
        }
        Rational::new(n, ten_pow(self.frac_digits.len() as u32))
    }

    /// Number of fractional digits as written (trailing zeros count).
    pub fn frac_digit_count(&self) -> usize {
        self.frac_digits.len()
    }
}

impl fmt::Display for DecimalString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        write!(f, "{}", self.int_digits)?;
        if !self.frac_digits.is_empty() {
            write!(f, ".{}", self.frac_digits)?;
        }
        Ok(())
    }
}

impl FromStr for DecimalString {
    type Err = Error;

    /// Grammar: `[-]digits[.digits]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed decimal numeral {s:?}"));
        let (negative, rest) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac_part) = match rest.split_once('.') {
            Some((i, f)) => (i, f),
            None => (rest, ""),
        };
        if int_part.is_empty() || !int_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        if rest.contains('.') && (frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit())) {
            return Err(bad());
        }
        Ok(DecimalString {
            negative,
            int_digits: int_part.to_string(),
            frac_digits: frac_part.to_string(),
        })
    }
}

/// Parse a decimal numeral into the exact rational it denotes.
pub fn rational_from_decimal(s: &str) -> Result<Rational> {
    Ok(s.parse::<DecimalString>()?.value())
}

/// Parse either grammar accepted on the command line: `[-]digits[.digits]`
/// or `[-]int/int` with a positive denominator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    match s.split_once('/') {
        None => rational_from_decimal(s),
        Some((num, den)) => {
            let bad = || Error::Parse(format!("malformed fraction {s:?}"));
            let is_int = |t: &str, signed: bool| {
                let t = if signed { t.strip_prefix('-').unwrap_or(t) } else { t };
                !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
            };
            if !is_int(num, true) || !is_int(den, false) {
                return Err(bad());
            }
            let n: BigInt = num.parse().map_err(|_| bad())?;
            let d: BigInt = den.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Largest integer `<= y/d`. Exact floor, also for negative `y`.
pub fn floor_div(y: &Rational, d: &Rational) -> Result<BigInt> {
    if !d.is_positive() {
        return Err(Error::Domain("floor_div divisor must be positive".into()));
    }
    Ok((y / d).floor().to_integer())
}

/// Round to `frac_digits` fractional digits, half to even. Exact in, exact out.
pub fn round_half_even(x: &Rational, frac_digits: u32) -> Rational {
    let scale = ten_pow(frac_digits);
    let scaled = x * Rational::from_integer(scale.clone());
    let floor = scaled.floor().to_integer();
    let rem = &scaled - Rational::from_integer(floor.clone());
    let half = rat(1, 2);
    let q = match rem.cmp(&half) {
        std::cmp::Ordering::Less => floor,
        std::cmp::Ordering::Greater => floor + 1,
        std::cmp::Ordering::Equal => {
            if num_integer::Integer::is_even(&floor) {
                floor
            } else {
                floor + 1
            }
        }
    };
    Rational::new(q, scale)
}

/// Render `x` with exactly `frac_digits` fractional digits, round-half-even.
/// The printed numeral differs from `x` by at most `0.5 * 10^-frac_digits`.
pub fn format_fixed(x: &Rational, frac_digits: u32) -> DecimalString {
    let scale = ten_pow(frac_digits);
    let q = (round_half_even(x, frac_digits) * Rational::from_integer(scale)).to_integer();
    let negative = q.is_negative();
    let digits = q.magnitude().to_string();
    let digits = if digits.len() <= frac_digits as usize {
        format!("{}{}", "0".repeat(frac_digits as usize + 1 - digits.len()), digits)
    } else {
        digits
    };
    let split = digits.len() - frac_digits as usize;
    DecimalString {
        negative,
        int_digits: digits[..split].to_string(),
        frac_digits: digits[split..].to_string(),
    }
}
