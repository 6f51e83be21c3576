//! Exact representation of discriminant eigenvalues.
//!
//! Every eigenvalue the classification theory touches is a rational, one of a
//! short list of quadratic surds, or a cosine of a rational multiple of π.
//! Recognizing a float as one of those forms is what turns the numeric
//! eigendecomposition into exact periodicity and transfer decisions; anything
//! unrecognized stays a `Float` and downstream verdicts are marked inexact.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;

/// Tolerance for recognizing a float as an exact value.
pub const SNAP_TOL: f64 = 1e-9;
/// Largest denominator tried by the continued-fraction rational search.
pub const SNAP_MAX_DENOM: i64 = 64;
/// Largest angle denominator tried when recognizing cos(pπ/q).
pub const SNAP_MAX_ANGLE_DENOM: i64 = 512;

/// An exact (or float-fallback) real value with a float shadow.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgebraicValue {
    /// p/q in lowest terms.
    Rational(BigRational),
    /// a + b√m with a, b rational and m squarefree > 1, b ≠ 0.
    Quadratic {
        a: BigRational,
        b: BigRational,
        m: i64,
    },
    /// cos(rπ) for a rational r in (0,1) that reduces to no closed form here.
    CosPi(Rational64),
    /// Unrecognized.
    Float(f64),
}

pub use AlgebraicValue::{CosPi, Float, Quadratic, Rational};

fn big(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

impl AlgebraicValue {
    pub fn integer(n: i64) -> Self {
        Rational(big(n, 1))
    }

    pub fn rational(n: i64, d: i64) -> Self {
        Rational(big(n, d))
    }

    pub fn quadratic(a: BigRational, b: BigRational, m: i64) -> Self {
        if b.is_zero() {
            Rational(a)
        } else {
            Quadratic { a, b, m }
        }
    }

    /// Float shadow of the value.
    pub fn float_value(&self) -> f64 {
        match self {
            Rational(r) => to_f64(r),
            Quadratic { a, b, m } => to_f64(a) + to_f64(b) * (*m as f64).sqrt(),
            CosPi(r) => (to_f64_r64(r) * PI).cos(),
            Float(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Float(_))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rational(r) if r.is_one())
    }

    pub fn is_neg_one(&self) -> bool {
        matches!(self, Rational(r) if *r == big(-1, 1))
    }

    /// arccos(value)/π as an exact rational, when the value is one of the
    /// closed forms with a rational angle. `None` for every other exact
    /// rational (by Niven's theorem the angle is irrational) and for floats
    /// (unknown).
    pub fn angle_over_pi(&self) -> Option<Rational64> {
        match self {
            Rational(r) => {
                let table = [
                    (big(1, 1), Rational64::new(0, 1)),
                    (big(1, 2), Rational64::new(1, 3)),
                    (big(0, 1), Rational64::new(1, 2)),
                    (big(-1, 2), Rational64::new(2, 3)),
                    (big(-1, 1), Rational64::new(1, 1)),
                ];
                table.iter().find(|(v, _)| v == r).map(|(_, t)| *t)
            }
            Quadratic { .. } => quadratic_angle_table()
                .into_iter()
                .find(|(v, _)| v == self)
                .map(|(_, t)| t),
            CosPi(r) => Some(*r),
            Float(_) => None,
        }
    }

    /// True iff the value is provably the real part of a root of unity.
    pub fn is_root_of_unity_cosine(&self) -> bool {
        self.angle_over_pi().is_some()
    }
}

fn to_f64_r64(r: &Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// The admissible quadratic eigenvalues of periodic regular graphs, with
/// their angles over π: ±√3/2, ±√2/2 (= ±1/√2), (±1±√5)/4.
pub fn quadratic_angle_table() -> Vec<(AlgebraicValue, Rational64)> {
    vec![
        (AlgebraicValue::quadratic(big(0, 1), big(1, 2), 3), Rational64::new(1, 6)),
        (AlgebraicValue::quadratic(big(0, 1), big(-1, 2), 3), Rational64::new(5, 6)),
        (AlgebraicValue::quadratic(big(0, 1), big(1, 2), 2), Rational64::new(1, 4)),
        (AlgebraicValue::quadratic(big(0, 1), big(-1, 2), 2), Rational64::new(3, 4)),
        (AlgebraicValue::quadratic(big(1, 4), big(1, 4), 5), Rational64::new(1, 5)),
        (AlgebraicValue::quadratic(big(-1, 4), big(1, 4), 5), Rational64::new(2, 5)),
        (AlgebraicValue::quadratic(big(1, 4), big(-1, 4), 5), Rational64::new(3, 5)),
        (AlgebraicValue::quadratic(big(-1, 4), big(-1, 4), 5), Rational64::new(4, 5)),
    ]
}

/// The admissible rational eigenvalues of periodic regular graphs.
pub fn rational_periodic_table() -> Vec<BigRational> {
    vec![big(1, 1), big(1, 2), big(0, 1), big(-1, 2), big(-1, 1)]
}

/// cos(tπ) for rational t, as the canonical exact value. Reduces t modulo 2π
/// and the cosine symmetry, then applies the closed forms for angle
/// denominators 1, 2, 3, 4, 5, 6.
pub fn cos_pi_rational(t: Rational64) -> AlgebraicValue {
    let two = Rational64::from_integer(2);
    let mut t = t - (t / two).floor() * two; // into [0, 2)
    if t > Rational64::one() {
        t = two - t; // cos(2π - x) = cos(x), into [0, 1]
    }
    let (p, q) = (*t.numer(), *t.denom());
    match (p, q) {
        (0, _) => AlgebraicValue::integer(1),
        (1, 1) => AlgebraicValue::integer(-1),
        (1, 2) => AlgebraicValue::integer(0),
        (1, 3) => AlgebraicValue::rational(1, 2),
        (2, 3) => AlgebraicValue::rational(-1, 2),
        (1, 4) => AlgebraicValue::quadratic(big(0, 1), big(1, 2), 2),
        (3, 4) => AlgebraicValue::quadratic(big(0, 1), big(-1, 2), 2),
        (1, 6) => AlgebraicValue::quadratic(big(0, 1), big(1, 2), 3),
        (5, 6) => AlgebraicValue::quadratic(big(0, 1), big(-1, 2), 3),
        (1, 5) => AlgebraicValue::quadratic(big(1, 4), big(1, 4), 5),
        (2, 5) => AlgebraicValue::quadratic(big(-1, 4), big(1, 4), 5),
        (3, 5) => AlgebraicValue::quadratic(big(1, 4), big(-1, 4), 5),
        (4, 5) => AlgebraicValue::quadratic(big(-1, 4), big(-1, 4), 5),
        _ => CosPi(t),
    }
}

/// T_m evaluated exactly on exact kinds; float fallback otherwise.
///
/// Rational and quadratic inputs with a known angle go through
/// T_m(cos θ) = cos(mθ); other rationals use the recurrence over big
/// rationals; other quadratics use the recurrence in ℚ(√m); floats use the
/// closed form on [-1,1] and the recurrence outside.
pub fn chebyshev_eval(m: usize, x: &AlgebraicValue) -> AlgebraicValue {
    if m == 0 {
        return AlgebraicValue::integer(1);
    }
    if m == 1 {
        return x.clone();
    }
    if let Some(t) = x.angle_over_pi() {
        return cos_pi_rational(t * Rational64::from_integer(m as i64));
    }
    match x {
        Rational(r) => {
            let two = big(2, 1);
            let mut prev = BigRational::one();
            let mut cur = r.clone();
            for _ in 2..=m {
                let next = &two * r * &cur - prev;
                prev = cur;
                cur = next;
            }
            Rational(cur)
        }
        Quadratic { a, b, m: surd } => {
            // arithmetic in Q(√surd)
            let mul = |x: &(BigRational, BigRational), y: &(BigRational, BigRational)| {
                (
                    &x.0 * &y.0 + &x.1 * &y.1 * big(*surd, 1),
                    &x.0 * &y.1 + &x.1 * &y.0,
                )
            };
            let xq = (a.clone(), b.clone());
            let mut prev = (BigRational::one(), BigRational::zero());
            let mut cur = xq.clone();
            for _ in 2..=m {
                let prod = mul(&xq, &cur);
                let next = (
                    big(2, 1) * prod.0 - prev.0,
                    big(2, 1) * prod.1 - prev.1,
                );
                prev = cur;
                cur = next;
            }
            AlgebraicValue::quadratic(cur.0, cur.1, *surd)
        }
        CosPi(_) => unreachable!("CosPi always has a rational angle"),
        Float(f) => {
            if f.abs() <= 1.0 {
                Float((m as f64 * f.acos()).cos())
            } else {
                let mut prev = 1.0;
                let mut cur = *f;
                for _ in 2..=m {
                    let next = 2.0 * f * cur - prev;
                    prev = cur;
                    cur = next;
                }
                Float(cur)
            }
        }
    }
}

/// Best rational approximation p/q of `x` with `q <= max_denom`, by walking
/// the continued-fraction convergents. Returns it only when
/// `|x - p/q| <= tol`.
pub fn snap_rational(x: f64, max_denom: i64, tol: f64) -> Option<Rational64> {
    if !x.is_finite() {
        return None;
    }
    // convergents of the continued fraction of x
    let (mut h0, mut k0, mut h1, mut k1) = (1i64, 0i64, x.floor() as i64, 1i64);
    let mut frac = x - x.floor();
    let mut best: Option<Rational64> = None;
    for _ in 0..64 {
        let cand = Rational64::new(h1, k1);
        if (x - to_f64_r64(&cand)).abs()
            < best.map_or(f64::INFINITY, |b| (x - to_f64_r64(&b)).abs())
        {
            best = Some(cand);
        }
        if frac.abs() < 1e-15 {
            break;
        }
        let a = (1.0 / frac).floor();
        frac = 1.0 / frac - a;
        let a = a as i64;
        let (h2, k2) = (a.checked_mul(h1)?.checked_add(h0)?, a.checked_mul(k1)?.checked_add(k0)?);
        if k2 > max_denom {
            break;
        }
        (h0, k0, h1, k1) = (h1, k1, h2, k2);
    }
    best.filter(|b| (x - to_f64_r64(b)).abs() <= tol)
}

/// Snap a float eigenvalue to its exact form.
///
/// Order: rational with denominator ≤ 64 (continued fractions); rational with
/// denominator equal to the valency of a regular graph, when given (adjacency
/// eigenvalues of integral graphs divided by k); the finite quadratic table;
/// cos(pπ/q) with q ≤ 512; float fallback.
pub fn snap(x: f64, regular_valency: Option<usize>) -> AlgebraicValue {
    if let Some(r) = snap_rational(x, SNAP_MAX_DENOM, SNAP_TOL) {
        return Rational(big(*r.numer(), *r.denom()));
    }
    if let Some(k) = regular_valency {
        let scaled = x * k as f64;
        if (scaled - scaled.round()).abs() <= SNAP_TOL * k as f64 && scaled.round().abs() <= k as f64 {
            return Rational(big(scaled.round() as i64, k as i64));
        }
    }
    for (v, _) in quadratic_angle_table() {
        if (x - v.float_value()).abs() <= SNAP_TOL {
            return v;
        }
    }
    if x.abs() <= 1.0 + SNAP_TOL {
        let t = (x.clamp(-1.0, 1.0)).acos() / PI;
        if let Some(r) = snap_rational(t, SNAP_MAX_ANGLE_DENOM, SNAP_TOL) {
            return cos_pi_rational(r);
        }
    }
    Float(x)
}

impl fmt::Display for AlgebraicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Quadratic { a, b, m } => {
                // common-denominator form (na ± nb√m)/D
                let d = a.denom().clone() * b.denom().clone()
                    / num_integer::Integer::gcd(a.denom(), b.denom());
                let na = (a * BigRational::from_integer(d.clone())).numer().clone();
                let nb = (b * BigRational::from_integer(d.clone())).numer().clone();
                let surd = if nb.abs().is_one() {
                    format!("√{m}")
                } else {
                    format!("{}√{m}", nb.abs())
                };
                let sign = if nb.is_negative() { "-" } else { "+" };
                let body = if na.is_zero() {
                    format!("{}{}", if nb.is_negative() { "-" } else { "" }, surd)
                } else {
                    format!("({na}{sign}{surd})")
                };
                if d.is_one() {
                    write!(f, "{body}")
                } else {
                    write!(f, "{body}/{d}")
                }
            }
            CosPi(r) => {
                let (p, q) = (*r.numer(), *r.denom());
                if p == 1 {
                    write!(f, "cos(π/{q})")
                } else {
                    write!(f, "cos({p}π/{q})")
                }
            }
            Float(x) => write!(f, "{x:.12}"),
        }
    }
}

impl Serialize for AlgebraicValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Float(_) => s.serialize_none(),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_paper_values() {
        // T_6(1/2) = 1, T_2(0) = -1, T_2(1) = 1, T_2(-1) = 1, T_1(x) = x
        assert!(chebyshev_eval(6, &AlgebraicValue::rational(1, 2)).is_one());
        assert!(chebyshev_eval(2, &AlgebraicValue::integer(0)).is_neg_one());
        assert!(chebyshev_eval(2, &AlgebraicValue::integer(1)).is_one());
        assert!(chebyshev_eval(2, &AlgebraicValue::integer(-1)).is_one());
        let x = AlgebraicValue::rational(7, 13);
        assert_eq!(chebyshev_eval(1, &x), x);
        // T_6(0) = -1 and T_6(-1/2) = 1 (the 12-periodic sign pattern)
        assert!(chebyshev_eval(6, &AlgebraicValue::integer(0)).is_neg_one());
        assert!(chebyshev_eval(6, &AlgebraicValue::rational(-1, 2)).is_one());
    }

    #[test]
    fn chebyshev_rational_recurrence_is_exact() {
        // T_3(p/q) = 4(p/q)^3 - 3(p/q) exactly
        let x = AlgebraicValue::rational(7, 13);
        let expect = big(4 * 343, 13 * 13 * 13) - big(3 * 7, 13);
        assert_eq!(chebyshev_eval(3, &x), Rational(expect));
        // deep recurrence does not drift: |T_m(x)| <= 1 for |x| <= 1
        let v = chebyshev_eval(150, &AlgebraicValue::rational(1, 3));
        match &v {
            Rational(r) => assert!(r.abs() <= BigRational::one()),
            _ => panic!("expected rational"),
        }
        assert!((v.float_value()).abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn chebyshev_quadratic_and_cospi() {
        // angle π/4: T_2(√2/2) = 0, T_4(√2/2) = -1, T_8(√2/2) = 1
        let r22 = AlgebraicValue::quadratic(big(0, 1), big(1, 2), 2);
        assert_eq!(chebyshev_eval(2, &r22), AlgebraicValue::integer(0));
        assert!(chebyshev_eval(4, &r22).is_neg_one());
        assert!(chebyshev_eval(8, &r22).is_one());
        // golden-ratio angles: T_5(cos(π/5)) = cos(π) = -1
        let c15 = AlgebraicValue::quadratic(big(1, 4), big(1, 4), 5);
        assert!(chebyshev_eval(5, &c15).is_neg_one());
        // cos(2π/7): T_7 gives cos(2π) = 1
        let c = cos_pi_rational(Rational64::new(2, 7));
        assert!(matches!(c, CosPi(_)));
        assert!(chebyshev_eval(7, &c).is_one());
    }

    #[test]
    fn chebyshev_pm_one_iff_cos_s_pi_over_m() {
        // exhaustive over m <= 24 and all reduced p/q with q <= 24:
        // T_m(cos(pπ/q)) = ±1 exactly when m·p/q is an integer, with the sign
        // by parity
        for m in 1..=24usize {
            for q in 1..=24i64 {
                for p in 1..=q {
                    if num_integer::Integer::gcd(&p, &q) != 1 {
                        continue;
                    }
                    let x = cos_pi_rational(Rational64::new(p, q));
                    let v = chebyshev_eval(m, &x);
                    let mp = Rational64::new(m as i64 * p, q);
                    if mp.is_integer() {
                        let s = mp.to_integer();
                        if s % 2 == 0 {
                            assert!(v.is_one(), "T_{m}(cos({p}π/{q}))");
                        } else {
                            assert!(v.is_neg_one(), "T_{m}(cos({p}π/{q}))");
                        }
                    } else {
                        assert!(!v.is_one() && !v.is_neg_one(), "T_{m}(cos({p}π/{q}))");
                    }
                }
            }
        }
    }

    #[test]
    fn exact_and_float_paths_agree() {
        for m in 0..=40usize {
            for (n, d) in [(1i64, 2i64), (-1, 2), (1, 3), (2, 5), (-3, 7)] {
                let exact = chebyshev_eval(m, &AlgebraicValue::rational(n, d));
                let float = chebyshev_eval(m, &Float(n as f64 / d as f64));
                assert!(
                    (exact.float_value() - float.float_value()).abs() < 1e-10,
                    "m={m} x={n}/{d}"
                );
            }
        }
    }

    #[test]
    fn bounded_on_the_interval() {
        for m in 0..=200usize {
            for i in -10i64..=10 {
                let x = AlgebraicValue::rational(i, 10);
                assert!(chebyshev_eval(m, &x).float_value().abs() <= 1.0 + 1e-9);
            }
        }
    }

    #[test]
    fn snapping_policy() {
        assert_eq!(snap(0.5, None), AlgebraicValue::rational(1, 2));
        assert_eq!(snap(1.0 / 3.0 + 4e-10, None), AlgebraicValue::rational(1, 3));
        assert_eq!(snap(-1.0, None), AlgebraicValue::integer(-1));
        // √3/2 is not rational with small denominator; lands in the table
        assert_eq!(
            snap(0.8660254037844386, None),
            AlgebraicValue::quadratic(big(0, 1), big(1, 2), 3)
        );
        // (1+√5)/4
        assert_eq!(
            snap(0.8090169943749475, None),
            AlgebraicValue::quadratic(big(1, 4), big(1, 4), 5)
        );
        // cos(2π/7) is neither rational nor in the quadratic table
        let x = (2.0 * PI / 7.0).cos();
        assert_eq!(snap(x, None), CosPi(Rational64::new(2, 7)));
        // valency route: eigenvalue 33/100 with k=100 (denominator over 64)
        assert_eq!(snap(0.33, Some(100)), AlgebraicValue::rational(33, 100));
        // a garden-variety irrational stays float
        let weird = 0.123456789101112;
        assert!(matches!(snap(weird, None), Float(_)));
    }

    #[test]
    fn angle_recognition() {
        assert_eq!(
            AlgebraicValue::rational(1, 2).angle_over_pi(),
            Some(Rational64::new(1, 3))
        );
        assert_eq!(AlgebraicValue::rational(1, 3).angle_over_pi(), None);
        assert_eq!(
            AlgebraicValue::quadratic(big(0, 1), big(1, 2), 2).angle_over_pi(),
            Some(Rational64::new(1, 4))
        );
        assert_eq!(Float(0.25).angle_over_pi(), None);
    }

    #[test]
    fn display_forms() {
        assert_eq!(AlgebraicValue::rational(-1, 2).to_string(), "-1/2");
        assert_eq!(AlgebraicValue::integer(1).to_string(), "1");
        assert_eq!(
            AlgebraicValue::quadratic(big(0, 1), big(1, 2), 3).to_string(),
            "√3/2"
        );
        assert_eq!(
            AlgebraicValue::quadratic(big(1, 4), big(1, 4), 5).to_string(),
            "(1+√5)/4"
        );
        assert_eq!(
            AlgebraicValue::quadratic(big(-1, 4), big(-1, 4), 5).to_string(),
            "(-1-√5)/4"
        );
        assert_eq!(CosPi(Rational64::new(2, 5)).to_string(), "cos(2π/5)");
        assert_eq!(CosPi(Rational64::new(1, 7)).to_string(), "cos(π/7)");
    }
}
