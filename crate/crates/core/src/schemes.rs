//! Triple-angle approximation schemes for sin and cos, their exact error
//! functionals, the degree-comparison table, and the alternative pointwise
//! evaluator built on them.
//!
//! The compositions evaluate low-degree series at y/3 (and 2y/3), trading a
//! few extra multiplications for roughly one third of the direct degree. The
//! error functionals are implemented exactly as printed in their closed
//! forms, including the `2n+3` exponent in the middle term of the sin
//! triple-angle bound (its cos analogue carries `2n+2`); the soundness tests
//! validate the bounds empirically either way.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::{int, pow10, rat, Rational};
use crate::pointwise::{reduce, sin_branch_sign};
use crate::taylor::{cos_taylor, factorial, min_degree, sin_taylor};

/// Bound on the error of the sin triple-angle composition `3P − 4P³` with
/// P the order-n sin series at y/3:
/// `4(y^(3n+3)/c³ + y^(2n+3)/c²) + ((4/3)y² + 3)·y^(n+1)/c`, c = 3^(n+1)(n+1)!.
pub fn sin_triple_angle_bound(y_abs: &Rational, n: u32) -> Result<Rational> {
    check_nonneg(y_abs)?;
    let c = Rational::from_integer(int(3).pow((n + 1) as i32).to_integer() * factorial(n + 1));
    let c2 = &c * &c;
    let c3 = &c2 * &c;
    Ok(
        rat(4, 1) * (y_abs.pow((3 * n + 3) as i32) / c3 + y_abs.pow((2 * n + 3) as i32) / c2)
            + (rat(4, 3) * y_abs * y_abs + int(3)) * y_abs.pow((n + 1) as i32) / c,
    )
}

/// Bound on the error of the product form `P(y/3)(1 + 2Q(2y/3))`:
/// `(1/3^n)(2/3)^(n+2)·y^(2n+2)/((n+1)!)² + y^(n+1)/(3^n(n+1)!)
///  + (2/3)^(n+2)·y^(n+2)/(n+1)!`.
pub fn sin_product_form_bound(y_abs: &Rational, n: u32) -> Result<Rational> {
    check_nonneg(y_abs)?;
    let fact = Rational::from_integer(factorial(n + 1));
    let three_n = int(3).pow(n as i32);
    let two_thirds = rat(2, 3).pow((n + 2) as i32);
    Ok(
        &two_thirds / &three_n * y_abs.pow((2 * n + 2) as i32) / (&fact * &fact)
            + y_abs.pow((n + 1) as i32) / (&three_n * &fact)
            + two_thirds * y_abs.pow((n + 2) as i32) / fact,
    )
}

/// Bound on the error of the cos triple-angle composition `4Q³ − 3Q`:
/// `4(y^(3n+3)/c³ + 3y^(2n+2)/c²) + 5y^(n+1)/(3^n(n+1)!)`, c = 3^(n+1)(n+1)!.
pub fn cos_triple_angle_bound(y_abs: &Rational, n: u32) -> Result<Rational> {
    check_nonneg(y_abs)?;
    let fact = Rational::from_integer(factorial(n + 1));
    let c = int(3).pow((n + 1) as i32) * &fact;
    let c2 = &c * &c;
    let c3 = &c2 * &c;
    Ok(
        rat(4, 1) * (y_abs.pow((3 * n + 3) as i32) / c3
            + rat(3, 1) * y_abs.pow((2 * n + 2) as i32) / c2)
            + rat(5, 1) * y_abs.pow((n + 1) as i32) / (int(3).pow(n as i32) * fact),
    )
}

fn check_nonneg(y_abs: &Rational) -> Result<()> {
    if y_abs.is_negative() {
        return Err(Error::Domain("error bounds take |y| >= 0".into()));
    }
    Ok(())
}

fn check_small(y: &Rational) -> Result<()> {
    if y.abs() >= int(1) {
        return Err(Error::Domain(format!(
            "triple-angle compositions require |y| < 1, got {y}"
        )));
    }
    Ok(())
}

/// `3P(y/3) − 4P(y/3)³` with P the order-n sin series; within
/// [`sin_triple_angle_bound`] of sin y for |y| < 1.
pub fn sin_triple_angle(y: &Rational, n: u32) -> Result<Rational> {
    check_small(y)?;
    let a = sin_taylor(n).eval(&(y / int(3)));
    Ok(rat(3, 1) * &a - rat(4, 1) * &a * &a * &a)
}

/// `P(y/3)·(1 + 2Q(2y/3))` with order-n sin/cos series; within
/// [`sin_product_form_bound`] of sin y for |y| < 1.
pub fn sin_product_form(y: &Rational, n: u32) -> Result<Rational> {
    check_small(y)?;
    let p = sin_taylor(n).eval(&(y / int(3)));
    let q = cos_taylor(n).eval(&(y * rat(2, 3)));
    Ok(p * (int(1) + rat(2, 1) * q))
}

/// `4Q(y/3)³ − 3Q(y/3)` with Q the order-n cos series; within
/// [`cos_triple_angle_bound`] of cos y for |y| < 1.
pub fn cos_triple_angle(y: &Rational, n: u32) -> Result<Rational> {
    check_small(y)?;
    let b = cos_taylor(n).eval(&(y / int(3)));
    Ok(rat(4, 1) * &b * &b * &b - rat(3, 1) * &b)
}

/// Alternative certified pointwise sin: the usual reduction, but the degree
/// comes from the triple-angle bounds and the reduced value from the
/// composed forms. Still `|result − sin y| < 10^−r`.
pub fn sin_point_triple(y: &Rational, r: u32) -> Result<Rational> {
    if r == 0 {
        return Err(Error::Domain("accuracy parameter r must be >= 1".into()));
    }
    let red = reduce(y, r)?;
    let u = y - Rational::from_integer(red.k.clone()) * &red.half_pi;
    let u_abs = u.abs();
    let threshold = pow10(-(r as i64 + 1));
    let (sign, use_sin) = sin_branch_sign(&red.k);
    if use_sin {
        let n = min_degree(
            |n| sin_triple_angle_bound(&u_abs, n).expect("u_abs >= 0"),
            &threshold,
        )?;
        let a = sin_taylor(n).eval(&(&u / int(3)));
        Ok(sign * (rat(3, 1) * &a - rat(4, 1) * &a * &a * &a))
    } else {
        let n = min_degree(
            |n| cos_triple_angle_bound(&u_abs, n).expect("u_abs >= 0"),
            &threshold,
        )?;
        let b = cos_taylor(n).eval(&(&u / int(3)));
        Ok(sign * (rat(4, 1) * &b * &b * &b - rat(3, 1) * &b))
    }
}

/// One row of the scheme-vs-direct degree comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeRow {
    pub r: u32,
    /// Minimal series order for the sin triple-angle scheme at |y| = 4/5,
    /// and the composed polynomial degree 3n it implies.
    pub n_triple: u32,
    pub deg_triple: u32,
    /// Minimal order for the product form, composed degree 2n.
    pub n_product: u32,
    pub deg_product: u32,
    /// Minimal order for the direct series.
    pub n_direct: u32,
}

/// Degree table at |y| = 4/5 for thresholds `10^−(r+1)`.
pub fn degree_table(rs: &[u32]) -> Result<Vec<DegreeRow>> {
    let y = rat(4, 5);
    rs.iter()
        .map(|&r| {
            if r == 0 {
                return Err(Error::Domain("accuracy parameter r must be >= 1".into()));
            }
            let thr = pow10(-(r as i64 + 1));
            let n_triple = min_degree(|n| sin_triple_angle_bound(&y, n).unwrap(), &thr)?;
            let n_product = min_degree(|n| sin_product_form_bound(&y, n).unwrap(), &thr)?;
            let n_direct = min_degree(
                |n| crate::taylor::remainder_bound(&y, n).unwrap(),
                &thr,
            )?;
            Ok(DegreeRow {
                r,
                n_triple,
                deg_triple: 3 * n_triple,
                n_product,
                deg_product: 2 * n_product,
                n_direct,
            })
        })
        .collect()
}
