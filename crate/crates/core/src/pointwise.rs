//! Certified pointwise evaluation of sin and cos at rational arguments.
//!
//! The reduction chooses a digit parameter m, takes the (m+2)-digit
//! approximation p' of π/2, and tests exact margin conditions on the
//! fractional part t of y/p'. When a test passes, the nearest-multiple index
//! k is provably the one the true π/2 would produce, and `|y − k·p'| <= p'/2`.
//! The margin tests and every comparison here are exact rational arithmetic;
//! there is no epsilon anywhere.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{floor_div, int, pow10, rat, BigInt, Rational};
use crate::pi::half_pi;
use crate::taylor::{cos_taylor, min_degree, remainder_bound, sin_taylor};

/// Extra digits the margin-test refinement may add before reporting an
/// internal error; termination is mathematically guaranteed for rational y,
/// the cap is a safety net.
const REFINE_EXTRA_DIGITS: u32 = 200;

/// Result of the argument reduction for a given (y, r).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    /// The chosen approximation p' of π/2; carries `m + 2` significant digits.
    pub half_pi: Rational,
    /// Final digit parameter m; `|π/2 − half_pi| < 10^−m`.
    pub m: u32,
    /// Reduction integer: the multiple of π/2 nearest y (ties toward floor).
    pub k: BigInt,
    /// Taylor degree meeting the target accuracy at the reduced argument.
    pub n: u32,
    /// Final fractional part of `y / half_pi`.
    pub t: Rational,
}

/// Smallest m >= r+1 with `10^−m <= 1/((|y|/1.5 + 1)·10^(r+1))`.
pub fn initial_m(y: &Rational, r: u32) -> Result<u32> {
    if y.is_zero() {
        return Err(Error::Domain("initial_m requires y != 0".into()));
    }
    check_r(r)?;
    let bound = (y.abs() * rat(2, 3) + int(1)).recip() * pow10(-(r as i64 + 1));
    let mut m = r + 1;
    while bound < pow10(-(m as i64)) {
        m += 1;
    }
    Ok(m)
}

/// Distance of a fractional part t from the nearest of {0, 1/2, 1}:
/// `min{t, 1/2−t}` on (0, 1/2) and `min{1−t, t−1/2}` on (1/2, 1).
pub fn stability_margin(t: &Rational) -> Result<Rational> {
    let half = rat(1, 2);
    if t.is_zero() || t.is_negative() || *t >= int(1) || *t == half {
        return Err(Error::Domain(format!("stability margin undefined at t = {t}")));
    }
    Ok(if *t < half {
        t.clone().min(&half - t)
    } else {
        (int(1) - t).min(t - half)
    })
}

/// Shared refinement loop: starting at digit parameter `m_start`, find the
/// (p', m, k, t) certifying the reduction integer. Used both by [`reduce`]
/// and by the piecewise generating-point machinery.
pub(crate) fn certify_multiple(
    y: &Rational,
    m_start: u32,
) -> Result<(Rational, u32, BigInt, Rational)> {
    if y.is_zero() {
        return Err(Error::Domain("argument reduction requires y != 0".into()));
    }
    let half = rat(1, 2);
    let y_abs = y.abs();
    let mut m = m_start;
    let mut p = half_pi(m + 2)?.value;
    let fl = floor_div(y, &p)?;
    let t = y / &p - Rational::from_integer(fl.clone());
    if t == half {
        return Ok((p, m, fl, t));
    }
    loop {
        let fl = floor_div(y, &p)?;
        let t = y / &p - Rational::from_integer(fl.clone());
        let lhs = rat(12, 5) * pow10(m as i64);
        if &lhs * t.clone().min(&half - &t) >= y_abs {
            return Ok((p, m, fl, t));
        }
        if lhs * (int(1) - &t).min(&t - &half) >= y_abs {
            return Ok((p, m, fl + 1, t));
        }
        m += 1;
        if m > m_start + REFINE_EXTRA_DIGITS {
            return Err(Error::Internal(format!(
                "margin tests still failing after {REFINE_EXTRA_DIGITS} extra digits at y = {y}"
            )));
        }
        p = half_pi(m + 2)?.value;
    }
}

/// Full reduction for the target accuracy `1/10^r`: p', k and the Taylor
/// degree n with `|y − k·p'|^(n+1)/(n+1)! < 10^−(r+1)`.
pub fn reduce(y: &Rational, r: u32) -> Result<Reduction> {
    let (half_pi, m, k, t) = certify_multiple(y, initial_m(y, r)?)?;
    let u_abs = (y - Rational::from_integer(k.clone()) * &half_pi).abs();
    let n = min_degree(
        |n| remainder_bound(&u_abs, n).expect("u_abs >= 0"),
        &pow10(-(r as i64 + 1)),
    )?;
    Ok(Reduction { half_pi, m, k, n, t })
}

fn check_r(r: u32) -> Result<()> {
    if r == 0 {
        return Err(Error::Domain("accuracy parameter r must be >= 1".into()));
    }
    Ok(())
}

/// (−1)^e as a rational sign for an exact integer exponent.
fn neg_one_pow(e: &BigInt) -> Rational {
    if e.is_odd() {
        int(-1)
    } else {
        int(1)
    }
}

/// Sign and polynomial family selected by the parity of k for sin:
/// even k uses the sin series at the reduced argument, odd k the cos series.
pub(crate) fn sin_branch_sign(k: &BigInt) -> (Rational, bool) {
    if k.is_even() {
        (neg_one_pow(&(k / 2)), true)
    } else {
        (neg_one_pow(&((k - 1) / 2)), false)
    }
}

/// Branch selection for cos: even k keeps the cos series, odd k switches to
/// the sin series with the shifted sign.
pub(crate) fn cos_branch_sign(k: &BigInt) -> (Rational, bool) {
    if k.is_even() {
        (neg_one_pow(&(k / 2)), false)
    } else {
        (neg_one_pow(&((k + 1) / 2)), true)
    }
}

/// sin y as an exact rational with `|result − sin y| < 10^−r`.
pub fn sin_point(y: &Rational, r: u32) -> Result<Rational> {
    check_r(r)?;
    let red = reduce(y, r)?;
    let u = y - Rational::from_integer(red.k.clone()) * &red.half_pi;
    let (sign, use_sin) = sin_branch_sign(&red.k);
    let poly = if use_sin { sin_taylor(red.n) } else { cos_taylor(red.n) };
    Ok(sign * poly.eval(&u))
}

/// cos y as an exact rational with `|result − cos y| < 10^−r`.
pub fn cos_point(y: &Rational, r: u32) -> Result<Rational> {
    check_r(r)?;
    let red = reduce(y, r)?;
    let u = y - Rational::from_integer(red.k.clone()) * &red.half_pi;
    let (sign, use_sin) = cos_branch_sign(&red.k);
    let poly = if use_sin { sin_taylor(red.n) } else { cos_taylor(red.n) };
    Ok(sign * poly.eval(&u))
}

/// Evaluate sin at a rational proxy standing in for an irrational point:
/// the caller certifies `|y_true − y_proxy| < 10^−(r+1)`, and evaluation at
/// one digit tighter keeps the total below `10^−r`.
pub fn sin_point_proxy(y_proxy: &Rational, r: u32) -> Result<Rational> {
    check_r(r)?;
    sin_point(y_proxy, r + 1)
}

/// sin(π/k) within `10^−r`, via the built-in rational proxy
/// `(2/k)·half_pi(r+3)` whose distance from π/k is below `10^−(r+1)`.
pub fn sin_pi_over_k(k: u32, r: u32) -> Result<Rational> {
    if k < 2 {
        return Err(Error::Domain(format!("sin_pi_over_k requires k >= 2, got {k}")));
    }
    check_r(r)?;
    let proxy = rat(2, k as i64) * half_pi(r + 3)?.value;
    sin_point_proxy(&proxy, r)
}
