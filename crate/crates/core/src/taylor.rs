//! Taylor polynomials of sin and cos about 0, exact evaluation, and the
//! remainder-bound degree search.

use std::sync::Mutex;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{BigInt, Rational};

/// Degree cap for [`min_degree`]; past this the bound is treated as never
/// reaching the threshold.
const DEGREE_SEARCH_CAP: u32 = 10_000;

static FACTORIALS: Mutex<Vec<BigInt>> = Mutex::new(Vec::new());

/// `n!` as an exact integer, memoized append-only.
pub fn factorial(n: u32) -> BigInt {
    let mut cache = FACTORIALS.lock().expect("factorial cache poisoned");
    if cache.is_empty() {
        cache.push(BigInt::from(1));
    }
    while cache.len() <= n as usize {
        let next = cache.last().unwrap() * BigInt::from(cache.len() as u64);
        cache.push(next);
    }
    cache[n as usize].clone()
}

/// Dense polynomial with exact rational coefficients, ascending degree.
/// The trailing coefficient is nonzero unless the polynomial is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the last nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Coefficients of `p(x − center)` in the variable x (display helper;
    /// pieces themselves stay in shifted form).
    pub fn shift_argument(&self, center: &Rational) -> Polynomial {
        let mut out: Vec<Rational> = Vec::new();
        for c in self.coeffs.iter().rev() {
            let mut next = vec![Rational::zero(); out.len() + 1];
            for (i, o) in out.iter().enumerate() {
                next[i + 1] += o;
                next[i] -= center * o;
            }
            next[0] += c;
            out = next;
        }
        Polynomial::new(out)
    }

    pub fn scale(&self, factor: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * factor).collect())
    }
}

/// Taylor polynomial of sin about 0 truncated at order `n`:
/// the sum of `(−1)^m y^(2m+1)/(2m+1)!` for `2m+1 <= n`; zero for `n = 0`.
pub fn sin_taylor(n: u32) -> Polynomial {
    let mut coeffs = vec![Rational::zero(); n as usize + 1];
    let mut m = 0u32;
    while 2 * m + 1 <= n {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        coeffs[(2 * m + 1) as usize] = Rational::new(BigInt::from(sign), factorial(2 * m + 1));
        m += 1;
    }
    Polynomial::new(coeffs)
}

/// Taylor polynomial of cos about 0 truncated at order `n`:
/// the sum of `(−1)^m y^(2m)/(2m)!` for `2m <= n`.
pub fn cos_taylor(n: u32) -> Polynomial {
    let mut coeffs = vec![Rational::zero(); n as usize + 1];
    let mut m = 0u32;
    while 2 * m <= n {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        coeffs[(2 * m) as usize] = Rational::new(BigInt::from(sign), factorial(2 * m));
        m += 1;
    }
    Polynomial::new(coeffs)
}

/// Lagrange remainder bound `y_abs^(n+1)/(n+1)!` for the order-n truncation
/// of sin or cos, exact.
pub fn remainder_bound(y_abs: &Rational, n: u32) -> Result<Rational> {
    if y_abs.is_negative() {
        return Err(Error::Domain("remainder_bound needs y_abs >= 0".into()));
    }
    Ok(y_abs.pow((n + 1) as i32) / Rational::from_integer(factorial(n + 1)))
}

/// Smallest `n >= 0` with `bound(n) < threshold`. The caller guarantees the
/// bound eventually drops below the threshold; a cap guards against misuse.
pub fn min_degree(bound: impl Fn(u32) -> Rational, threshold: &Rational) -> Result<u32> {
    for n in 0..=DEGREE_SEARCH_CAP {
        if bound(n) < *threshold {
            return Ok(n);
        }
    }
    Err(Error::IterationLimit(format!(
        "no degree below {DEGREE_SEARCH_CAP} pushed the bound under the threshold"
    )))
}
