//! Piecewise polynomial approximants of sin and cos on an interval, built
//! from approximate intervals around consecutive multiples of π/2.
//!
//! Every generating point y contributes a piece: the shifted Taylor
//! polynomial centered at `k·p'` valid within 0.8 of that center. A shared
//! digit parameter m (chosen once from the right endpoint) seeds every
//! generating point; if a point's margin tests fail at that m, its digit
//! count is refined locally, which only shrinks the approximation error.
//! Pieces tile the interval exactly: interior pieces are half-open on the
//! right, the final piece is closed.

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{int, parse_rational, pow10, rat, BigInt, Rational};
use crate::pointwise::{certify_multiple, cos_branch_sign, sin_branch_sign};
use crate::taylor::{cos_taylor, min_degree, remainder_bound, sin_taylor, Polynomial};

/// Which function a piecewise approximant targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigFn {
    Sin,
    Cos,
}

impl TrigFn {
    pub fn name(self) -> &'static str {
        match self {
            TrigFn::Sin => "sin",
            TrigFn::Cos => "cos",
        }
    }
}

/// Polynomial family of a piece: the odd sin-type series (P) or the even
/// cos-type series (Q), both in the shifted variable `u = x − center`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    P,
    Q,
}

/// One tile of a piecewise approximant: on `[lo, hi]` the value is
/// `sign · poly(x − center)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub lo: Rational,
    pub hi: Rational,
    pub center: Rational,
    pub poly: Polynomial,
    pub sign: i8,
    pub kind: Kind,
}

impl Piece {
    pub fn eval(&self, x: &Rational) -> Rational {
        let v = self.poly.eval(&(x - &self.center));
        if self.sign < 0 {
            -v
        } else {
            v
        }
    }
}

/// Ordered pieces tiling `[a, b]` with certified accuracy `1/10^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseApprox {
    pub func: TrigFn,
    pub r: u32,
    pub a: Rational,
    pub b: Rational,
    /// Digit parameter shared by all generating points.
    pub m_global: u32,
    pub pieces: Vec<Piece>,
}

/// Output of the per-point interval map: the chosen p', its digit parameter,
/// the reduction integer, and the piece template centered at `k·p'` whose
/// `lo`/`hi` are the generated interval `[(k−1/2)p', (k+1/2)p']` (callers
/// tiling a larger interval override them).
#[derive(Debug, Clone)]
pub struct IntervalApprox {
    pub half_pi: Rational,
    pub m: u32,
    pub k: BigInt,
    pub piece: Piece,
}

/// Smallest `m >= r+1` with `10^−m <= 1/((2b+4)·10^(r+1))`; every generating
/// point of a build on `[.., b]` shares it.
pub fn global_m(b: &Rational, r: u32) -> Result<u32> {
    if !b.is_positive() {
        return Err(Error::Domain("global_m requires b > 0".into()));
    }
    if r == 0 {
        return Err(Error::Domain("accuracy parameter r must be >= 1".into()));
    }
    let bound = (rat(2, 1) * b + int(4)).recip() * pow10(-(r as i64 + 1));
    let mut m = r + 1;
    while bound < pow10(-(m as i64)) {
        m += 1;
    }
    Ok(m)
}

/// Shared piece degree for accuracy r: smallest n with
/// `(4/5)^(n+1)/(n+1)! < 10^−(r+1)`, so one polynomial serves every point of
/// every piece (any point sits within 4/5 of its center).
pub fn piece_degree(r: u32) -> Result<u32> {
    min_degree(
        |n| remainder_bound(&rat(4, 5), n).expect("constant is positive"),
        &pow10(-(r as i64 + 1)),
    )
}

/// The map from a generating point to its approximate-interval piece.
pub fn interval_approx(y: &Rational, m: u32, r: u32) -> Result<IntervalApprox> {
    let n = piece_degree(r)?;
    let polys = BranchPolys::new(n);
    interval_approx_with(y, m, TrigFn::Sin, &polys)
}

/// Shared sin/cos series polynomials of the piece degree.
struct BranchPolys {
    sin: Polynomial,
    cos: Polynomial,
}

impl BranchPolys {
    fn new(n: u32) -> Self {
        BranchPolys { sin: sin_taylor(n), cos: cos_taylor(n) }
    }

    /// Piece template for reduction integer k and approximation p'.
    fn shape(&self, func: TrigFn, k: &BigInt, half_pi: &Rational) -> Piece {
        let (sign, use_sin) = match func {
            TrigFn::Sin => sin_branch_sign(k),
            TrigFn::Cos => cos_branch_sign(k),
        };
        let center = Rational::from_integer(k.clone()) * half_pi;
        let half = rat(1, 2);
        Piece {
            lo: &center - half_pi * &half,
            hi: &center + half_pi * &half,
            center,
            poly: if use_sin { self.sin.clone() } else { self.cos.clone() },
            sign: if sign.is_negative() { -1 } else { 1 },
            kind: if use_sin { Kind::P } else { Kind::Q },
        }
    }

    /// The unshifted center piece used on `[−0.8, 0.8] ∩ [a, b]`.
    fn center_piece(&self, func: TrigFn, lo: Rational, hi: Rational) -> Piece {
        let (poly, kind) = match func {
            TrigFn::Sin => (self.sin.clone(), Kind::P),
            TrigFn::Cos => (self.cos.clone(), Kind::Q),
        };
        Piece { lo, hi, center: int(0), poly, sign: 1, kind }
    }
}

fn interval_approx_with(
    y: &Rational,
    m: u32,
    func: TrigFn,
    polys: &BranchPolys,
) -> Result<IntervalApprox> {
    let (half_pi, m_final, k, _t) = certify_multiple(y, m)?;
    let piece = polys.shape(func, &k, &half_pi);
    Ok(IntervalApprox { half_pi, m: m_final, k, piece })
}

/// Tile `[a, b]` with `4/5 <= a < b` by walking generating points from a
/// toward b until the reduction integer reaches b's.
fn tile(a: &Rational, b: &Rational, m: u32, func: TrigFn, polys: &BranchPolys) -> Result<Vec<Piece>> {
    let ia_b = interval_approx_with(b, m, func, polys)?;
    let ia_a = interval_approx_with(a, m, func, polys)?;
    let n0 = ia_b.k.clone();
    let b_bound = b + rat(3, 2);

    if n0 <= ia_a.k {
        // b's multiple does not exceed a's: a's piece covers the whole
        // interval (the gap between the two indices is at most one).
        if &ia_a.k - &n0 > BigInt::from(1) {
            return Err(Error::Internal(format!(
                "generating indices inverted by more than one at [{a}, {b}]"
            )));
        }
        let mut piece = ia_a.piece;
        piece.lo = a.clone();
        piece.hi = b.clone();
        return Ok(vec![piece]);
    }

    let mut steps = vec![ia_a];
    while steps.last().unwrap().k < n0 {
        let last = steps.last().unwrap();
        let next_point =
            Rational::from_integer(&last.k + 1) * &last.half_pi;
        let ia = interval_approx_with(&next_point, m, func, polys)?;
        if ia.k != &last.k + 1 {
            return Err(Error::Internal(format!(
                "generating point did not advance its multiple by one at {next_point}"
            )));
        }
        if Rational::from_integer(ia.k.clone()) >= b_bound {
            return Err(Error::Internal(format!(
                "reduction integer {} escaped the bound b + 3/2 at [{a}, {b}]",
                ia.k
            )));
        }
        steps.push(ia);
    }

    // steps[0..=n] hold A_0..A_n with k_i = k_0 + i and k_n = n0.
    let n = steps.len() - 1;
    let half = rat(1, 2);
    // Right breakpoint generated by step j: (k_j + 1/2)·p_j.
    let brk = |j: usize| -> Rational {
        (Rational::from_integer(steps[j].k.clone()) + &half) * &steps[j].half_pi
    };
    let last_mid = brk(n - 1);
    let last_full = Rational::from_integer(&steps[n - 1].k + 1) * &steps[n - 1].half_pi;

    let mut cuts: Vec<Rational> = vec![a.clone()];
    let mut shapes: Vec<Piece> = Vec::new();
    if *b <= last_mid {
        // A_0..A_{n−1}, the last one stretched to b.
        for j in 0..n {
            shapes.push(steps[j].piece.clone());
            cuts.push(if j + 1 == n { b.clone() } else { brk(j) });
        }
    } else if *b <= last_full {
        // A_0..A_n with A_n on [(k_{n−1}+1/2)p_{n−1}, b].
        for j in 0..=n {
            shapes.push(steps[j].piece.clone());
            cuts.push(if j == n { b.clone() } else { brk(j) });
        }
    } else {
        // A_0..A_n then b's own piece on [(k_{n−1}+1)p_{n−1}, b].
        for j in 0..=n {
            shapes.push(steps[j].piece.clone());
            cuts.push(if j == n { last_full.clone() } else { brk(j) });
        }
        shapes.push(ia_b.piece.clone());
        cuts.push(b.clone());
    }

    let mut pieces = Vec::with_capacity(shapes.len());
    for (j, mut piece) in shapes.into_iter().enumerate() {
        piece.lo = cuts[j].clone();
        piece.hi = cuts[j + 1].clone();
        pieces.push(piece);
    }
    Ok(pieces)
}

/// Pieces for `0 <= a < b`: the center piece up to 4/5, then the tiling walk.
fn build_pos(
    a: &Rational,
    b: &Rational,
    m: u32,
    func: TrigFn,
    polys: &BranchPolys,
) -> Result<Vec<Piece>> {
    let cut = rat(4, 5);
    if *b <= cut {
        return Ok(vec![polys.center_piece(func, a.clone(), b.clone())]);
    }
    if *a < cut {
        let mut pieces = vec![polys.center_piece(func, a.clone(), cut.clone())];
        pieces.extend(tile(&cut, b, m, func, polys)?);
        Ok(pieces)
    } else {
        tile(a, b, m, func, polys)
    }
}

/// Mirror a piece across 0. For the odd reflection (`sin(−x) = −sin x`) the
/// P family keeps its sign and the Q family flips; the even reflection
/// (`cos(−x) = cos x`) flips P and keeps Q.
fn reflect_piece(p: &Piece, odd: bool) -> Piece {
    let flip = match (odd, p.kind) {
        (true, Kind::Q) | (false, Kind::P) => true,
        _ => false,
    };
    Piece {
        lo: -&p.hi,
        hi: -&p.lo,
        center: -&p.center,
        poly: p.poly.clone(),
        sign: if flip { -p.sign } else { p.sign },
        kind: p.kind,
    }
}

fn reflect_all(pieces: Vec<Piece>, odd: bool) -> Vec<Piece> {
    pieces.iter().rev().map(|p| reflect_piece(p, odd)).collect()
}

fn check_interval(a: &Rational, b: &Rational, r: u32) -> Result<()> {
    if a >= b {
        return Err(Error::Domain(format!("need a < b, got [{a}, {b}]")));
    }
    if r == 0 {
        return Err(Error::Domain("accuracy parameter r must be >= 1".into()));
    }
    Ok(())
}

fn build(a: &Rational, b: &Rational, r: u32, func: TrigFn) -> Result<PiecewiseApprox> {
    check_interval(a, b, r)?;
    let reach = a.abs().max(b.abs());
    let m = global_m(&reach, r)?;
    let polys = BranchPolys::new(piece_degree(r)?);
    let odd = func == TrigFn::Sin;

    let pieces = if !a.is_negative() {
        build_pos(a, b, m, func, &polys)?
    } else if !b.is_positive() {
        reflect_all(build_pos(&-b, &-a, m, func, &polys)?, odd)
    } else {
        let mut left = reflect_all(build_pos(&int(0), &-a, m, func, &polys)?, odd);
        left.extend(build_pos(&int(0), b, m, func, &polys)?);
        left
    };
    Ok(PiecewiseApprox { func, r, a: a.clone(), b: b.clone(), m_global: m, pieces })
}

/// Piecewise approximant of sin on `[a, b]` with `0 <= a < b`.
pub fn piecewise_sin_pos(a: &Rational, b: &Rational, r: u32) -> Result<PiecewiseApprox> {
    if a.is_negative() {
        return Err(Error::Domain("piecewise_sin_pos requires 0 <= a".into()));
    }
    build(a, b, r, TrigFn::Sin)
}

/// Piecewise approximant of sin on any rational interval `[a, b]`.
pub fn piecewise_sin(a: &Rational, b: &Rational, r: u32) -> Result<PiecewiseApprox> {
    build(a, b, r, TrigFn::Sin)
}

/// Piecewise approximant of cos on any rational interval `[a, b]`.
pub fn piecewise_cos(a: &Rational, b: &Rational, r: u32) -> Result<PiecewiseApprox> {
    build(a, b, r, TrigFn::Cos)
}

impl PiecewiseApprox {
    /// All breakpoints, `a` through `b`, strictly increasing.
    pub fn breakpoints(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self.pieces.iter().map(|p| p.lo.clone()).collect();
        out.push(self.b.clone());
        out
    }

    /// Evaluate at `x ∈ [a, b]`. Interior pieces own `[lo, hi)`, the final
    /// piece also owns `b`.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        if *x < self.a || *x > self.b {
            return Err(Error::Domain(format!(
                "{x} outside the approximated interval [{}, {}]",
                self.a, self.b
            )));
        }
        let idx = self.pieces.partition_point(|p| p.lo <= *x);
        let piece = &self.pieces[idx - 1];
        Ok(piece.eval(x))
    }

    pub fn to_json(&self) -> String {
        let dto = PiecewiseDto {
            func: self.func.name().to_string(),
            r: self.r,
            a: self.a.to_string(),
            b: self.b.to_string(),
            pieces: self
                .pieces
                .iter()
                .map(|p| PieceDto {
                    lo: p.lo.to_string(),
                    hi: p.hi.to_string(),
                    center: p.center.to_string(),
                    sign: p.sign,
                    kind: match p.kind {
                        Kind::P => "P".to_string(),
                        Kind::Q => "Q".to_string(),
                    },
                    coeffs: p.poly.coeffs().iter().map(|c| c.to_string()).collect(),
                })
                .collect(),
        };
        serde_json::to_string(&dto).expect("piecewise serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dto: PiecewiseDto =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("bad piecewise JSON: {e}")))?;
        let func = match dto.func.as_str() {
            "sin" => TrigFn::Sin,
            "cos" => TrigFn::Cos,
            other => return Err(Error::Parse(format!("unknown func {other:?}"))),
        };
        let a = parse_rational(&dto.a)?;
        let b = parse_rational(&dto.b)?;
        check_interval(&a, &b, dto.r)?;
        let mut pieces = Vec::with_capacity(dto.pieces.len());
        for p in &dto.pieces {
            let kind = match p.kind.as_str() {
                "P" => Kind::P,
                "Q" => Kind::Q,
                other => return Err(Error::Parse(format!("unknown piece kind {other:?}"))),
            };
            if p.sign != 1 && p.sign != -1 {
                return Err(Error::Parse(format!("piece sign must be ±1, got {}", p.sign)));
            }
            let coeffs = p
                .coeffs
                .iter()
                .map(|c| parse_rational(c))
                .collect::<Result<Vec<_>>>()?;
            pieces.push(Piece {
                lo: parse_rational(&p.lo)?,
                hi: parse_rational(&p.hi)?,
                center: parse_rational(&p.center)?,
                poly: Polynomial::new(coeffs),
                sign: p.sign,
                kind,
            });
        }
        if pieces.is_empty() {
            return Err(Error::Parse("piecewise JSON holds no pieces".into()));
        }
        if pieces[0].lo != a || pieces.last().unwrap().hi != b {
            return Err(Error::Parse("pieces do not span [a, b]".into()));
        }
        for w in pieces.windows(2) {
            if w[0].hi != w[1].lo {
                return Err(Error::Parse("pieces do not tile the interval".into()));
            }
        }
        let m_global = global_m(&a.abs().max(b.abs()), dto.r)?;
        Ok(PiecewiseApprox { func, r: dto.r, a, b, m_global, pieces })
    }
}

#[derive(Serialize, Deserialize)]
struct PiecewiseDto {
    func: String,
    r: u32,
    a: String,
    b: String,
    pieces: Vec<PieceDto>,
}

#[derive(Serialize, Deserialize)]
struct PieceDto {
    lo: String,
    hi: String,
    center: String,
    sign: i8,
    kind: String,
    coeffs: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational_from_decimal;
    use crate::oracle::{max_error_scan, oracle_cos, oracle_sin};
    use crate::pi::half_pi;

    fn dec(s: &str) -> Rational {
        rational_from_decimal(s).unwrap()
    }

    #[test]
    fn global_m_examples() {
        assert_eq!(global_m(&dec("3.1416"), 12).unwrap(), 15);
        assert_eq!(global_m(&int(50), 50).unwrap(), 54);
        assert_eq!(global_m(&int(1), 1).unwrap(), 3);
        assert!(global_m(&int(0), 5).is_err());
        assert!(global_m(&int(-2), 5).is_err());
    }

    #[test]
    fn interval_approx_examples() {
        let ia = interval_approx(&rat(4, 5), 13, 12).unwrap();
        assert_eq!(ia.k, BigInt::from(1));
        assert_eq!(ia.piece.kind, Kind::Q);
        assert_eq!(ia.piece.sign, 1);

        let ia = interval_approx(&rat(5, 2), 13, 12).unwrap();
        assert_eq!(ia.k, BigInt::from(2));
        assert_eq!(ia.piece.kind, Kind::P);
        assert_eq!(ia.piece.sign, -1);

        let ia = interval_approx(&dec("3.1416"), 13, 12).unwrap();
        assert_eq!(ia.k, BigInt::from(2));
        assert!(interval_approx(&int(0), 13, 12).is_err());
    }

    #[test]
    fn single_center_piece_interval() {
        let f = piecewise_sin_pos(&int(0), &rat(4, 5), 12).unwrap();
        assert_eq!(f.pieces.len(), 1);
        assert_eq!(f.pieces[0].center, int(0));
        assert_eq!(f.pieces[0].kind, Kind::P);
        assert!(piecewise_sin_pos(&rat(-1, 2), &rat(4, 5), 12).is_err());
        assert!(piecewise_sin(&int(1), &int(1), 12).is_err());
    }

    #[test]
    fn positive_half_of_worked_example() {
        let f = piecewise_sin_pos(&int(0), &dec("3.1416"), 12).unwrap();
        assert_eq!(f.pieces.len(), 4);
        let brks = f.breakpoints();
        assert_eq!(brks[1], rat(4, 5));
        assert!((&brks[2] - dec("2.356194490")).abs() < pow10(-9));
        assert!((&brks[3] - dec("3.141592654")).abs() < pow10(-9));
    }

    #[test]
    fn eight_piece_worked_example_and_values() {
        let f = piecewise_sin(&dec("-3.1416"), &dec("3.1416"), 12).unwrap();
        assert_eq!(f.pieces.len(), 8);

        let at = f.eval(&rat(5, 2)).unwrap();
        assert!((&at - oracle_sin(&rat(5, 2), 17)).abs() < pow10(-12));
        assert!((&at - dec("0.598472144105")).abs() < rat(2, 1) * pow10(-12));

        let at31 = f.eval(&dec("3.1")).unwrap();
        assert!((&at31 - dec("0.0415806624335")).abs() < rat(2, 1) * pow10(-12));

        // boundary ownership: a evaluates on the first piece
        let first = &f.pieces[0];
        assert_eq!(f.eval(&f.a).unwrap(), first.eval(&f.a));
        assert!(f.eval(&dec("3.15")).is_err());
        assert!(f.eval(&dec("-3.15")).is_err());
    }

    #[test]
    fn positive_fifty_half_count() {
        let f = piecewise_sin_pos(&int(0), &int(50), 50).unwrap();
        assert_eq!(f.pieces.len(), 33);
    }

    #[test]
    fn narrow_interval_uses_single_piece_with_offset_index() {
        // b hits the fractional part 1/2 exactly at the shared m (tie ⇒ its
        // index stays at the floor) while a certifies one higher.
        let r = 9;
        let b = rat(3, 2) * half_pi(13).unwrap().value;
        let a = dec("2.35619449019242");
        let m = global_m(&b, r).unwrap();
        assert_eq!(m, 11);
        let ia_b = interval_approx(&b, m, r).unwrap();
        let ia_a = interval_approx(&a, m, r).unwrap();
        assert_eq!(&ia_a.k - &ia_b.k, BigInt::from(1));

        let f = piecewise_sin(&a, &b, r).unwrap();
        assert_eq!(f.pieces.len(), 1);
        assert_eq!(f.pieces[0].center, Rational::from_integer(ia_a.k) * &ia_a.half_pi);
        let mid = (&a + &b) / int(2);
        assert!((f.eval(&mid).unwrap() - oracle_sin(&mid, r + 5)).abs() < pow10(-(r as i64)));
    }

    #[test]
    fn cos_single_piece_and_value() {
        let g = piecewise_cos(&int(0), &rat(4, 5), 12).unwrap();
        assert_eq!(g.pieces.len(), 1);
        assert_eq!(g.pieces[0].kind, Kind::Q);
        assert_eq!(g.pieces[0].center, int(0));

        let g2 = piecewise_cos(&int(0), &int(2), 10).unwrap();
        let at1 = g2.eval(&int(1)).unwrap();
        assert!((&at1 - dec("0.5403023059")).abs() < rat(2, 1) * pow10(-10));
        assert!((at1 - oracle_cos(&int(1), 15)).abs() < pow10(-10));
    }

    #[test]
    fn cos_even_reflection() {
        let g = piecewise_cos(&int(-2), &int(2), 10).unwrap();
        let half = piecewise_cos(&int(0), &int(2), 10).unwrap();
        assert_eq!(g.pieces.len(), 2 * half.pieces.len());
        for x in [rat(17, 16), rat(3, 2), rat(1, 5)] {
            assert_eq!(g.eval(&-&x).unwrap(), g.eval(&x).unwrap());
        }
        let max = max_error_scan(&g, 200).unwrap();
        assert!(max < pow10(-10));
    }

    #[test]
    fn odd_reflection_is_exact() {
        let pos = piecewise_sin(&rat(1, 2), &int(4), 10).unwrap();
        let neg = piecewise_sin(&int(-4), &rat(-1, 2), 10).unwrap();
        for x in [rat(1, 2), int(1), rat(29, 8), int(4)] {
            assert_eq!(neg.eval(&-&x).unwrap(), -pos.eval(&x).unwrap());
        }
    }

    #[test]
    fn tiling_is_exact() {
        let f = piecewise_sin(&dec("-7.25"), &dec("11.5"), 15).unwrap();
        assert_eq!(f.pieces[0].lo, f.a);
        assert_eq!(f.pieces.last().unwrap().hi, f.b);
        for w in f.pieces.windows(2) {
            assert_eq!(w[0].hi, w[1].lo);
            assert!(w[0].lo < w[0].hi);
        }
    }

    #[test]
    fn json_roundtrip_evaluates_identically() {
        let f = piecewise_sin(&dec("-3.1416"), &dec("3.1416"), 12).unwrap();
        let loaded = PiecewiseApprox::from_json(&f.to_json()).unwrap();
        assert_eq!(loaded.m_global, f.m_global);
        for x in [dec("-3.1416"), dec("-1.5"), int(0), rat(5, 2), dec("3.1416")] {
            assert_eq!(loaded.eval(&x).unwrap(), f.eval(&x).unwrap());
        }
        assert!(PiecewiseApprox::from_json("{}").is_err());
        assert!(PiecewiseApprox::from_json("not json").is_err());
    }
}
