//! Certified n-significant-digit rational approximations of π and π/2.
//!
//! π is computed from the Machin identity `π = 16·arctan(1/5) − 4·arctan(1/239)`
//! in scaled integer arithmetic. Both arctangent series alternate with strictly
//! decreasing terms, so the truncation tail is bounded by the first omitted
//! term; together with a unit bound per floored division this gives an explicit
//! integer error bound alongside the scaled sum. Rounding to n significant
//! digits is certified by rounding both ends of the error interval: if they
//! agree, the result is the correct round-half-even value of the true constant.

use std::sync::Mutex;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, round_half_even, ten_pow, BigInt, Rational};

/// An n-significant-digit rational approximation of π/2 with a certified
/// bound on `|π/2 − value|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiApprox {
    pub digits: u32,
    pub value: Rational,
    pub err_bound: Rational,
}

/// `value/10^frac_digits` approximates π with `|π·10^frac_digits − value| <= err`.
#[derive(Debug, Clone)]
struct ScaledPi {
    frac_digits: u32,
    value: BigInt,
    err: BigInt,
}

static CACHE: Mutex<Option<ScaledPi>> = Mutex::new(None);

/// Scaled arctan(1/x) by alternating series. Returns the scaled sum and an
/// integer bound on its distance from `scale·arctan(1/x)`: each term loses
/// less than 2.05 units to floored divisions (x >= 5 keeps the power-chain
/// error below 25/24) and the alternating tail is below 1.05 units.
fn atan_inv_scaled(scale: &BigInt, x: u32) -> (BigInt, BigInt) {
    let xx = BigInt::from(x) * BigInt::from(x);
    let mut power = scale / BigInt::from(x);
    let mut sum = power.clone();
    let mut terms: u64 = 1;
    let mut j: u64 = 0;
    loop {
        power /= &xx;
        if power.is_zero() {
            break;
        }
        j += 1;
        let term = &power / BigInt::from(2 * j + 1);
        if j % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        terms += 1;
    }
    (sum, BigInt::from(3 * terms + 2))
}

fn machin_scaled(frac_digits: u32) -> ScaledPi {
    let scale = ten_pow(frac_digits);
    let (s5, e5) = atan_inv_scaled(&scale, 5);
    let (s239, e239) = atan_inv_scaled(&scale, 239);
    ScaledPi {
        frac_digits,
        value: 16 * s5 - 4 * s239,
        err: 16 * e5 + 4 * e239,
    }
}

/// Fetch a cached scaled π with at least `frac_digits` scale, growing the
/// cache append-only. Results are independent of cache history: every public
/// value is the certified correct rounding of π itself.
fn scaled_at_least(frac_digits: u32) -> ScaledPi {
    let mut guard = CACHE.lock().expect("pi cache poisoned");
    match guard.as_ref() {
        Some(sp) if sp.frac_digits >= frac_digits => sp.clone(),
        _ => {
            let sp = machin_scaled(frac_digits);
            *guard = Some(sp.clone());
            sp
        }
    }
}

/// Interval `[lo, hi]` certified to contain π, with at least `frac_digits`
/// of scale behind it.
fn pi_interval(frac_digits: u32) -> (Rational, Rational) {
    let sp = scaled_at_least(frac_digits);
    let scale = ten_pow(sp.frac_digits);
    let lo = Rational::new(&sp.value - &sp.err, scale.clone());
    let hi = Rational::new(&sp.value + &sp.err, scale);
    (lo, hi)
}

fn round_sig_in_unit_decade(x: &Rational, sig_digits: u32) -> Rational {
    // Both π and π/2 lie in (1, 10): n significant digits = n-1 fractional.
    debug_assert!(*x > int(1) && *x < int(10));
    round_half_even(x, sig_digits - 1)
}

/// π rounded to `n` significant decimal digits; `|π − result| <= 0.5·10^(1−n)`.
pub fn pi_digits(n: u32) -> Result<Rational> {
    if n < 2 {
        return Err(Error::Domain(format!("pi_digits requires n >= 2, got {n}")));
    }
    for attempt in 0..8 {
        let (lo, hi) = pi_interval(n + 12 + 32 * attempt);
        let rlo = round_sig_in_unit_decade(&lo, n);
        let rhi = round_sig_in_unit_decade(&hi, n);
        if rlo == rhi {
            return Ok(rlo);
        }
    }
    Err(Error::IterationLimit(format!(
        "could not certify the rounding of pi to {n} digits"
    )))
}

/// π/2 rounded to `n` significant decimal digits, with the certified error
/// bound `0.5·10^(1−n)`. `half_pi(m+2)` has error below `10^−m`.
pub fn half_pi(n: u32) -> Result<PiApprox> {
    if n < 2 {
        return Err(Error::Domain(format!("half_pi requires n >= 2, got {n}")));
    }
    let two = int(2);
    for attempt in 0..8 {
        let (lo, hi) = pi_interval(n + 12 + 32 * attempt);
        let rlo = round_sig_in_unit_decade(&(lo / &two), n);
        let rhi = round_sig_in_unit_decade(&(hi / &two), n);
        if rlo == rhi {
            return Ok(PiApprox {
                digits: n,
                value: rlo,
                err_bound: Rational::new(BigInt::from(1), 2 * ten_pow(n - 1)),
            });
        }
    }
    Err(Error::IterationLimit(format!(
        "could not certify the rounding of pi/2 to {n} digits"
    )))
}

/// Seed the digit cache from an externally stored value of π rounded to
/// `sig_digits` significant digits. The first 20 digits are validated against
/// an internal computation; the seeded error bound of one scaled unit also
/// covers files holding truncated rather than rounded digits.
pub fn seed_cache(sig_digits: u32, value: &Rational) -> Result<()> {
    if sig_digits < 25 {
        return Err(Error::Domain(
            "pi cache seed needs at least 25 significant digits".into(),
        ));
    }
    let scaled = value * Rational::from_integer(ten_pow(sig_digits - 1));
    if !scaled.is_integer() {
        return Err(Error::Parse(
            "pi cache value has more fractional digits than its declared count".into(),
        ));
    }
    // A valid seed is within 0.5·10^(1−sig) of π and the reference within
    // 0.5·10^−19, so the two differ by less than 10^−19.
    let reference = pi_digits(20)?;
    if (value - &reference).abs() >= Rational::new(BigInt::from(1), ten_pow(19)) {
        return Err(Error::Parse("pi cache value disagrees with internal digits".into()));
    }
    let seeded = ScaledPi {
        frac_digits: sig_digits - 1,
        value: scaled.to_integer(),
        err: BigInt::from(1),
    };
    let mut guard = CACHE.lock().expect("pi cache poisoned");
    let replace = match guard.as_ref() {
        Some(sp) => sp.frac_digits < seeded.frac_digits,
        None => true,
    };
    if replace {
        *guard = Some(seeded);
    }
    Ok(())
}

/// Number of significant digits the current cache can certifiably round to
/// (0 when the cache is empty). Used by the CLI cache file write-back.
pub fn certified_cache_digits() -> u32 {
    let guard = CACHE.lock().expect("pi cache poisoned");
    match guard.as_ref() {
        Some(sp) => sp.frac_digits.saturating_sub(10).saturating_add(1),
        None => 0,
    }
}
