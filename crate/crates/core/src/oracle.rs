//! Independent high-precision sin/cos reference and error-scan harness.
//!
//! The oracle deliberately shares nothing with the certified reduction's
//! digit-parameter machinery: it reduces with a brute-force oversized
//! approximation of π/2 (nearest multiple, no margin tests) and sums the
//! alternating Taylor series until the next term is negligible, charging the
//! reduction error, the alternating tail, and its own output rounding against
//! an explicit budget. If the budget check fails the guard precision doubles.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{floor_div, int, pow10, rat, round_half_even, BigInt, Rational};
use crate::pi::half_pi;
use crate::piecewise::{PiecewiseApprox, TrigFn};

/// Oracle precision policy: `target_digits` is the certified output accuracy,
/// `guard_digits` the extra working precision (doubled on demand).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    pub target_digits: u32,
    pub guard_digits: u32,
}

impl OracleConfig {
    pub fn new(target_digits: u32) -> Self {
        OracleConfig { target_digits, guard_digits: 30 }
    }

    pub fn sin(&self, y: &Rational) -> Rational {
        self.eval(y, false)
    }

    pub fn cos(&self, y: &Rational) -> Rational {
        self.eval(y, true)
    }

    fn eval(&self, y: &Rational, want_cos: bool) -> Rational {
        let mut guard = self.guard_digits.max(8);
        loop {
            if let Some(v) = try_eval(y, self.target_digits, guard, want_cos) {
                return v;
            }
            guard *= 2;
            assert!(guard < 1 << 24, "oracle guard runaway at y = {y}");
        }
    }
}

/// One evaluation attempt at a fixed guard; `None` when the error budget
/// fails to certify the target.
fn try_eval(y: &Rational, digits: u32, guard: u32, want_cos: bool) -> Option<Rational> {
    let target = pow10(-(digits as i64));
    let out_digits = digits + 5;
    let series_eps = pow10(-(out_digits as i64 + 2));

    let (u, k, reduction_err) = if y.is_zero() {
        (Rational::zero(), BigInt::from(0), Rational::zero())
    } else {
        let p = half_pi(digits + guard).ok()?;
        let k = floor_div(&(y / &p.value + rat(1, 2)), &int(1)).ok()?;
        let u = y - Rational::from_integer(k.clone()) * &p.value;
        let err = Rational::from_integer(k.abs()) * &p.err_bound;
        (u, k, err)
    };

    // sin(u + k·π/2) and cos(u + k·π/2) by quadrant.
    let q = k.mod_floor(&BigInt::from(4));
    let (use_sin, negate) = if want_cos {
        match u32::try_from(&q).unwrap() {
            0 => (false, false),
            1 => (true, true),
            2 => (false, true),
            _ => (true, false),
        }
    } else {
        match u32::try_from(&q).unwrap() {
            0 => (true, false),
            1 => (false, false),
            2 => (true, true),
            _ => (false, true),
        }
    };

    let (sum, tail) = alternating_series(&u, use_sin, &series_eps);
    let rounding = rat(1, 2) * pow10(-(out_digits as i64));
    if reduction_err + tail + &rounding >= target {
        return None;
    }
    let signed = if negate { -sum } else { sum };
    Some(round_half_even(&signed, out_digits))
}

/// Partial sum of the sin (odd) or cos (even) Taylor series at u, stopping
/// once the next term drops below `eps`. For `|u| <= 1` the terms alternate
/// with strictly decreasing magnitude, so the tail is bounded by the first
/// omitted term.
fn alternating_series(u: &Rational, use_sin: bool, eps: &Rational) -> (Rational, Rational) {
    debug_assert!(u.abs() <= int(1));
    let u2 = u * u;
    let mut term = if use_sin { u.clone() } else { int(1) };
    let mut order: u64 = if use_sin { 1 } else { 0 };
    let mut sum = Rational::zero();
    loop {
        if term.abs() < *eps {
            return (sum, term.abs());
        }
        sum += &term;
        term = -(term * &u2)
            / Rational::from_integer(BigInt::from((order + 1) * (order + 2)));
        order += 2;
    }
}

/// `|result − sin y| < 10^−digits`, by a path disjoint from the certified one.
pub fn oracle_sin(y: &Rational, digits: u32) -> Rational {
    OracleConfig::new(digits).sin(y)
}

/// `|result − cos y| < 10^−digits`.
pub fn oracle_cos(y: &Rational, digits: u32) -> Rational {
    OracleConfig::new(digits).cos(y)
}

/// Max absolute deviation of a piecewise approximant from the oracle over
/// `samples` equispaced points of its domain (both endpoints included).
pub fn max_error_scan(f: &PiecewiseApprox, samples: u32) -> Result<Rational> {
    if samples < 2 {
        return Err(Error::Domain("max_error_scan needs samples >= 2".into()));
    }
    let digits = f.r + 5;
    let step = (&f.b - &f.a) / Rational::from_integer(BigInt::from(samples - 1));
    let mut max = Rational::zero();
    for i in 0..samples {
        let x = if i == samples - 1 {
            f.b.clone()
        } else {
            &f.a + &step * Rational::from_integer(BigInt::from(i))
        };
        let reference = match f.func {
            TrigFn::Sin => oracle_sin(&x, digits),
            TrigFn::Cos => oracle_cos(&x, digits),
        };
        let err = (f.eval(&x)? - reference).abs();
        if err > max {
            max = err;
        }
    }
    Ok(max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational_from_decimal;

    /// Reference arrangement nobody else uses: the raw series at y itself,
    /// without any range reduction. Valid for |y| <= 4: term magnitudes
    /// decrease strictly once the order passes |y|, so the tail after that
    /// point is bounded by the next term.
    fn direct_series_sin(y: &Rational, digits: u32) -> Rational {
        let eps = pow10(-(digits as i64 + 4));
        let y2 = y * y;
        let mut term = y.clone();
        let mut order: u64 = 1;
        let mut sum = Rational::zero();
        loop {
            if order > 4 && term.abs() < eps {
                return sum;
            }
            sum += &term;
            term = -(term * &y2)
                / Rational::from_integer(BigInt::from((order + 1) * (order + 2)));
            order += 2;
        }
    }

    #[test]
    fn oracle_sin_trivials_and_frozen_value() {
        assert_eq!(oracle_sin(&int(0), 10), int(0));
        // frozen from two independent arrangements (reduced series here,
        // direct series below) plus an external 120-digit computation
        let v = oracle_sin(&rat(5, 2), 20);
        let frozen = rational_from_decimal("0.59847214410395649405").unwrap();
        assert!((&v - frozen).abs() < pow10(-19));
        let near_one = oracle_sin(&half_pi(60).unwrap().value, 40);
        assert!((near_one - int(1)).abs() < pow10(-39));
    }

    #[test]
    fn oracle_agrees_with_direct_series_arrangement() {
        for y in [rat(5, 2), rat(-7, 3), rat(1, 7), int(3)] {
            let a = oracle_sin(&y, 30);
            let b = direct_series_sin(&y, 30);
            assert!((a - b).abs() < rat(2, 1) * pow10(-30), "y = {y}");
        }
    }

    #[test]
    fn oracle_cos_values() {
        assert_eq!(oracle_cos(&int(0), 10), int(1));
        let v = oracle_cos(&int(1), 15);
        let frozen = rational_from_decimal("0.540302305868140").unwrap();
        assert!((&v - frozen).abs() < pow10(-14));
        assert_eq!(oracle_cos(&rat(-5, 2), 15), oracle_cos(&rat(5, 2), 15));
    }

    #[test]
    fn pythagorean_identity() {
        for y in [rat(5, 2), int(17), rat(-123, 11), rat(3, 1000)] {
            let s = oracle_sin(&y, 25);
            let c = oracle_cos(&y, 25);
            let lhs = &s * &s + &c * &c;
            assert!((lhs - int(1)).abs() < rat(4, 1) * pow10(-25), "y = {y}");
        }
    }
}
