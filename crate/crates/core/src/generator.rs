//! Families of exact arctangent identities for pi.
//!
//! Every generator computes its right-hand side by folding the left side
//! exactly, never by trusting a closed-form guess for the winding number.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{int, ratio, Rational, Value};
use crate::error::{Error, Result};
use crate::numeric::{atan_approx, pi_approx};
use crate::odot::{fold_term, NormalAngle};
use crate::sequences::{fibonacci, lucas, phi_power, uv_pair};

/// `coeff * arctan(arg)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArctanTerm {
    pub coeff: i64,
    pub arg: Value,
}

impl ArctanTerm {
    pub fn new(coeff: i64, arg: Value) -> Self {
        ArctanTerm { coeff, arg }
    }
}

/// `sum c_i arctan(t_i) = rhs * pi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Identity {
    pub terms: Vec<ArctanTerm>,
    pub rhs: Rational,
}

impl Identity {
    pub fn new(terms: Vec<ArctanTerm>, rhs: Rational) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::DegenerateIdentity("no terms".into()));
        }
        if terms.iter().any(|t| t.coeff == 0) {
            return Err(Error::DegenerateIdentity("zero coefficient".into()));
        }
        Ok(Identity { terms, rhs })
    }

    /// Builds the identity whose right-hand side is the exact fold of `terms`.
    pub fn from_fold(terms: Vec<ArctanTerm>) -> Result<Self> {
        let mut id = Identity::new(terms, Rational::zero())?;
        let angle = id.fold()?;
        id.rhs = angle.pi_multiple().ok_or_else(|| {
            Error::InconsistentInput(format!(
                "left side folds to {angle}, not a rational multiple of pi"
            ))
        })?;
        Ok(id)
    }

    /// The left-hand side as an exact [`NormalAngle`].
    pub fn fold(&self) -> Result<NormalAngle> {
        self.terms
            .iter()
            .try_fold(NormalAngle::zero(), |s, t| fold_term(&s, t.coeff, &t.arg))
    }

    /// Negates every coefficient and the right-hand side.
    pub fn negated(&self) -> Identity {
        Identity {
            terms: self
                .terms
                .iter()
                .map(|t| ArctanTerm::new(-t.coeff, t.arg.clone()))
                .collect(),
            rhs: -&self.rhs,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|t| t.arg.as_rational().is_some())
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::text::print_identity(self))
    }
}

fn not_unit(x: &Value) -> Result<()> {
    if x.is_one() || x.neg().is_one() {
        return Err(Error::Degenerate(format!("x = {x} must not be +-1")));
    }
    if x.is_zero() {
        return Err(Error::Degenerate("x = 0 has no reciprocal".into()));
    }
    Ok(())
}

/// `n A(1/x) + A((u_n - v_n)/(u_n + v_n)) = (1/4 + k) pi`.
pub fn machin_pair(n: usize, x: &Value) -> Result<Identity> {
    if n == 0 {
        return Err(Error::Degenerate("n must be positive".into()));
    }
    not_unit(x)?;
    let p = uv_pair(n, x)?;
    let den = p.u.add(&p.v)?;
    if den.is_zero() {
        return Err(Error::RightAngle(format!("u_{n}({x}) + v_{n}({x}) = 0")));
    }
    let second = p.u.sub(&p.v)?.div(&den)?;
    let coeff = i64::try_from(n).map_err(|_| Error::Degenerate("n too large".into()))?;
    Identity::from_fold(vec![
        ArctanTerm::new(coeff, x.recip()?),
        ArctanTerm::new(1, second),
    ])
}

/// The integer `k` with `n A(1/x) + A((u_n - v_n)/(u_n + v_n)) = pi/4 + k pi`,
/// read off the exact fold.
pub fn winding_correction(n: usize, x: &Value) -> Result<i64> {
    let id = machin_pair(n, x)?;
    let k = &id.rhs - ratio(1, 4);
    if !k.is_integer() {
        return Err(Error::InconsistentInput(format!(
            "fold gave {}*pi, not pi/4 + k pi",
            id.rhs
        )));
    }
    k.to_integer()
        .to_i64()
        .ok_or_else(|| Error::WindingUnresolved("k out of range".into()))
}

/// Diagnostics of the literal winding formula: `T = |pi/4 - n A(1/x)| / pi`
/// enclosed in `[t_lower, t_upper]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindingInput {
    pub n: usize,
    pub x: Value,
    pub t_lower: Rational,
    pub t_upper: Rational,
    pub digits: u32,
    pub k: i64,
}

const WINDING_MAX_DIGITS: u32 = 4000;

/// `k = sign(n A(1/x) - pi/4) (floor(T) + chi_(1/2,1)(frac(T)))`, evaluated with
/// interval arithmetic and refined until every branch is decided.
pub fn winding_correction_literal(n: usize, x: &Value) -> Result<WindingInput> {
    not_unit(x)?;
    let inv = x.recip()?;
    let n_big = BigInt::from(n);
    let half = ratio(1, 2);
    let mut digits = 30u32;
    while digits <= WINDING_MAX_DIGITS {
        let lhs = atan_approx(&inv, digits).mul_int(&n_big);
        let pi = pi_approx(digits);
        let diff = lhs.sub(&pi.mul_rational(&ratio(1, 4)));
        let (lo, hi) = diff.interval();
        let (pi_lo, pi_hi) = pi.interval();
        let resolved = (|| {
            let (sign, abs_lo, abs_hi) = if lo.is_positive() {
                (1, lo.clone(), hi.clone())
            } else if hi.is_negative() {
                (-1, -hi.clone(), -lo.clone())
            } else {
                return None;
            };
            let t_lo = Rational::new(abs_lo, pi_hi.clone());
            let t_hi = Rational::new(abs_hi, pi_lo.clone());
            let floor = t_lo.floor();
            if t_hi.floor() != floor {
                return None;
            }
            let chi = if &t_lo - &floor > half {
                1
            } else if &t_hi - &floor < half {
                0
            } else {
                return None;
            };
            let k = sign * (floor.to_integer().to_i64()? + chi);
            Some((k, t_lo, t_hi))
        })();
        if let Some((k, t_lower, t_upper)) = resolved {
            return Ok(WindingInput {
                n,
                x: x.clone(),
                t_lower,
                t_upper,
                digits,
                k,
            });
        }
        digits *= 2;
    }
    Err(Error::WindingUnresolved(format!(
        "n = {n}, x = {x}: T sits on a branch boundary at {WINDING_MAX_DIGITS} digits"
    )))
}

/// Linear remainder `c1 t + c0` of a polynomial modulo `t^2 - h t + kq`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRemainder {
    pub c1: BigInt,
    pub c0: BigInt,
}

impl LinearRemainder {
    pub fn eval(&self, t: &Value) -> Result<Value> {
        Ok(t.scale(&Rational::from_integer(self.c1.clone()))
            .add_rational(&Rational::from_integer(self.c0.clone())))
    }
}

/// Reduces `t^2 + 2t - 1` and `t^2 - 2t - 1` modulo `t^2 - h t + kq`.
pub fn reduce_mod_quadratic(h: &BigInt, kq: &BigInt) -> (LinearRemainder, LinearRemainder) {
    // t^2 = h t - kq
    let c0 = -kq - BigInt::one();
    (
        LinearRemainder {
            c1: h + 2,
            c0: c0.clone(),
        },
        LinearRemainder { c1: h - 2, c0 },
    )
}

/// `2 A(1/alpha) + A(1/y) = (1/4 + k) pi` with `y = (a^2 + 2a - 1)/(a^2 - 2a - 1)`
/// reduced modulo the quadratic `t^2 - h t + kq` that `alpha` satisfies.
pub fn quad_reduce(h: &BigInt, kq: &BigInt, alpha: &Value) -> Result<Identity> {
    if alpha.field().is_none() {
        return Err(Error::Degenerate(format!(
            "alpha = {alpha} must be irrational"
        )));
    }
    let h_r = Rational::from_integer(h.clone());
    let kq_r = Rational::from_integer(kq.clone());
    let residual = alpha
        .mul(alpha)?
        .sub(&alpha.scale(&h_r))?
        .add_rational(&kq_r);
    if !residual.is_zero() {
        return Err(Error::InconsistentInput(format!(
            "{alpha} is not a root of t^2 - ({h}) t + ({kq})"
        )));
    }
    let (num, den) = reduce_mod_quadratic(h, kq);
    let n_val = num.eval(alpha)?;
    if n_val.is_zero() {
        return Err(Error::RightAngle(format!(
            "y is infinite at alpha = {alpha}"
        )));
    }
    let inv_y = den.eval(alpha)?.div(&n_val)?;
    Identity::from_fold(vec![
        ArctanTerm::new(2, alpha.recip()?),
        ArctanTerm::new(1, inv_y),
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GoldenKind {
    /// `2 A(1/phi^m) + A((L_m - 2)/(L_m + 2))`, `m = 2k+1`.
    Odd,
    /// The even-`m` counterpart, `m = 2k`.
    Even,
    /// `A(L_m/2) - 2 A(phi^m)`, `m = 2k+1`.
    LucasMinus,
    /// `A(L_m/2) + 2 A(1/phi^m)`, `m = 2k+1`.
    LucasPlus,
    /// `A(L_m/2) - A((L_m - 2)/(L_m + 2))`, `m = 2k+1`.
    OnlyLucas,
}

impl std::str::FromStr for GoldenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.replace('_', "-").as_str() {
            "odd" => GoldenKind::Odd,
            "even" => GoldenKind::Even,
            "lucas-minus" => GoldenKind::LucasMinus,
            "lucas-plus" => GoldenKind::LucasPlus,
            "only-lucas" => GoldenKind::OnlyLucas,
            other => {
                return Err(Error::Degenerate(format!(
                    "unknown golden family {other:?}"
                )))
            }
        })
    }
}

impl fmt::Display for GoldenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GoldenKind::Odd => "odd",
            GoldenKind::Even => "even",
            GoldenKind::LucasMinus => "lucas-minus",
            GoldenKind::LucasPlus => "lucas-plus",
            GoldenKind::OnlyLucas => "only-lucas",
        })
    }
}

fn lucas_ratio(l: &BigInt) -> Value {
    Value::Rational(Rational::new(l - 2, l + 2))
}

pub fn golden_family(kind: GoldenKind, k: usize) -> Result<Identity> {
    let m = match kind {
        GoldenKind::Even if k == 0 => {
            return Err(Error::Degenerate("the even family needs k >= 1".into()))
        }
        GoldenKind::Even => 2 * k,
        _ => 2 * k + 1,
    };
    let l = lucas(m);
    let phi_m = phi_power(m);
    let half_l = Value::Rational(Rational::new(l.clone(), BigInt::from(2)));
    match kind {
        GoldenKind::Odd => quad_reduce(&l, &BigInt::from(-1), &phi_m),
        GoldenKind::Even => quad_reduce(&l, &BigInt::from(1), &phi_m),
        GoldenKind::LucasMinus => {
            Identity::from_fold(vec![ArctanTerm::new(1, half_l), ArctanTerm::new(-2, phi_m)])
        }
        GoldenKind::LucasPlus => Identity::from_fold(vec![
            ArctanTerm::new(1, half_l),
            ArctanTerm::new(2, phi_m.recip()?),
        ]),
        GoldenKind::OnlyLucas => Identity::from_fold(vec![
            ArctanTerm::new(1, half_l),
            ArctanTerm::new(-1, lucas_ratio(&l)),
        ]),
    }
}

/// `2 A(-x + sqrt(1+x^2)) + A(x) = pi/2` and `2 A(-x - sqrt(1+x^2)) + A(x) = -pi/2`.
pub fn half_turn(x: &Value) -> Result<(Identity, Identity)> {
    let disc = x.mul(x)?.add_rational(&int(1));
    let r = disc
        .sqrt()?
        .ok_or_else(|| Error::UnsupportedRadical(disc.to_string()))?;
    let minus_x = x.neg();
    let plus = Identity::from_fold(vec![
        ArctanTerm::new(2, minus_x.add(&r)?),
        ArctanTerm::new(1, x.clone()),
    ])?;
    let minus = Identity::from_fold(vec![
        ArctanTerm::new(2, minus_x.sub(&r)?),
        ArctanTerm::new(1, x.clone()),
    ])?;
    Ok((plus, minus))
}

/// `A(f) - A((f - 1)/(f + 1)) = rhs pi`, with `rhs = 1/4` for `f > -1` and `-3/4` for `f < -1`.
pub fn diff_identity(f: &Value) -> Result<Identity> {
    let f_plus = f.add_rational(&int(1));
    if f_plus.is_zero() {
        return Err(Error::UndefinedDifference);
    }
    let g = f.add_rational(&int(-1)).div(&f_plus)?;
    Identity::from_fold(vec![ArctanTerm::new(1, f.clone()), ArctanTerm::new(-1, g)])
}

/// `F_m / 2`, the argument of the Fibonacci difference identities.
pub fn half_fibonacci(m: usize) -> Value {
    Value::Rational(Rational::new(fibonacci(m), BigInt::from(2)))
}

/// Euler's `5 A(1/7) + 2 A(3/79) = pi/4`.
pub fn euler_identity() -> Identity {
    Identity {
        terms: vec![
            ArctanTerm::new(5, Value::ratio(1, 7)),
            ArctanTerm::new(2, Value::ratio(3, 79)),
        ],
        rhs: ratio(1, 4),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::surd_normalize;

    fn terms(id: &Identity) -> Vec<(i64, Value)> {
        id.terms.iter().map(|t| (t.coeff, t.arg.clone())).collect()
    }

    fn surd(a: Rational, b: Rational, d: i64) -> Value {
        surd_normalize(a, b, d).unwrap()
    }

    fn phi() -> Value {
        surd(ratio(1, 2), ratio(1, 2), 5)
    }

    #[test]
    fn machin_examples() {
        let id = machin_pair(7, &Value::int(3)).unwrap();
        assert_eq!(
            terms(&id),
            vec![(7, Value::ratio(1, 3)), (1, Value::ratio(-278, 29))]
        );
        assert_eq!(id.rhs, ratio(1, 4));

        let id = machin_pair(8, &Value::int(3)).unwrap();
        assert_eq!(
            terms(&id),
            vec![(8, Value::ratio(1, 3)), (1, Value::ratio(863, 191))]
        );
        assert_eq!(id.rhs, ratio(5, 4));

        let id = machin_pair(2, &Value::int(7)).unwrap();
        assert_eq!(
            terms(&id),
            vec![(2, Value::ratio(1, 7)), (1, Value::ratio(17, 31))]
        );
        assert_eq!(id.rhs, ratio(1, 4));

        assert!(matches!(
            machin_pair(3, &Value::one()),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            machin_pair(3, &Value::int(-1)),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn machin_right_angle() {
        // x = 0 has no reciprocal; u_1 + v_1 = x + 1 vanishes only at x = -1
        assert!(machin_pair(1, &Value::zero()).is_err());
        // u_2 + v_2 = x^2 + 2x - 1 = 0 at x = -1 + sqrt 2
        let x = surd(int(-1), int(1), 2);
        assert!(matches!(machin_pair(2, &x), Err(Error::RightAngle(_))));
    }

    #[test]
    fn winding_examples() {
        assert_eq!(winding_correction(8, &Value::int(3)).unwrap(), 1);
        assert_eq!(winding_correction(5, &Value::int(2)).unwrap(), 0);
        // 20 A(1/2) - pi/4 = 2.7017 pi, fractional part above 1/2
        assert_eq!(winding_correction(20, &Value::int(2)).unwrap(), 3);
        for (n, x) in [(8, 3), (5, 2), (20, 2), (1, 2), (13, -5)] {
            let lit = winding_correction_literal(n, &Value::int(x)).unwrap();
            assert_eq!(
                lit.k,
                winding_correction(n, &Value::int(x)).unwrap(),
                "n={n} x={x}"
            );
            assert!(lit.t_lower <= lit.t_upper);
        }
    }

    #[test]
    fn winding_literal_matches_float() {
        let lit = winding_correction_literal(20, &Value::int(2)).unwrap();
        let t = ((std::f64::consts::FRAC_PI_4 - 20.0 * 0.5f64.atan()) / std::f64::consts::PI).abs();
        assert!((lit.t_lower.to_f64().unwrap() - t).abs() < 1e-12);
    }

    #[test]
    fn quad_reduce_sqrt2() {
        let r2 = surd(int(0), int(1), 2);
        let id = quad_reduce(&BigInt::from(0), &BigInt::from(-2), &r2).unwrap();
        let expected_arg = surd(int(1), int(-2), 2)
            .div(&surd(int(1), int(2), 2))
            .unwrap();
        assert_eq!(
            terms(&id),
            vec![(2, r2.recip().unwrap()), (1, expected_arg)]
        );
        assert_eq!(id.rhs, ratio(1, 4));
    }

    #[test]
    fn quad_reduce_sqrt29() {
        let alpha = surd(ratio(5, 2), ratio(1, 2), 29);
        let a3 = alpha.pow(3).unwrap();
        let id = quad_reduce(&BigInt::from(140), &BigInt::from(-1), &a3).unwrap();
        // 8/(5 + sqrt 29)^3 = 1/alpha^3
        let eight_over = Value::int(8)
            .div(&surd(int(5), int(1), 29).pow(3).unwrap())
            .unwrap();
        assert_eq!(terms(&id), vec![(2, eight_over), (1, Value::ratio(69, 71))]);
        assert_eq!(id.rhs, ratio(1, 4));
        let (n, d) = reduce_mod_quadratic(&BigInt::from(140), &BigInt::from(-1));
        assert_eq!(
            (n.c1, n.c0, d.c1, d.c0),
            (142.into(), 0.into(), 138.into(), 0.into())
        );
    }

    #[test]
    fn quad_reduce_golden() {
        let id = quad_reduce(&BigInt::from(1), &BigInt::from(-1), &phi()).unwrap();
        assert_eq!(
            terms(&id),
            vec![(2, phi().recip().unwrap()), (1, Value::ratio(-1, 3))]
        );
        assert_eq!(id.rhs, ratio(1, 4));
        let err = quad_reduce(&BigInt::from(3), &BigInt::from(-1), &phi()).unwrap_err();
        assert!(matches!(err, Error::InconsistentInput(_)));
        assert!(quad_reduce(&BigInt::from(2), &BigInt::from(1), &Value::one()).is_err());
    }

    #[test]
    fn golden_examples() {
        let id = golden_family(GoldenKind::Odd, 1).unwrap();
        assert_eq!(
            terms(&id),
            vec![(2, phi_power(3).recip().unwrap()), (1, Value::ratio(1, 3))]
        );
        assert_eq!(id.rhs, ratio(1, 4));

        let id = golden_family(GoldenKind::LucasMinus, 0).unwrap();
        assert_eq!(terms(&id), vec![(1, Value::ratio(1, 2)), (-2, phi())]);
        assert_eq!(id.rhs, ratio(-1, 2));

        let id = golden_family(GoldenKind::Even, 1).unwrap();
        assert_eq!(
            terms(&id),
            vec![
                (2, phi_power(2).recip().unwrap()),
                (1, surd(int(9), int(-4), 5))
            ]
        );
        assert_eq!(id.rhs, ratio(1, 4));

        assert!(golden_family(GoldenKind::Even, 0).is_err());
        assert_eq!(
            golden_family(GoldenKind::LucasPlus, 3).unwrap().rhs,
            ratio(1, 2)
        );
        assert_eq!(
            golden_family(GoldenKind::OnlyLucas, 4).unwrap().rhs,
            ratio(1, 4)
        );
    }

    #[test]
    fn odd_reduction_is_lucas_ratio() {
        for m in [1usize, 3, 5, 7, 9] {
            let (l, s) = crate::sequences::min_poly_phi_power(m);
            let id = quad_reduce(&l, &BigInt::from(s), &phi_power(m)).unwrap();
            assert_eq!(id.terms[1].arg, lucas_ratio(&l), "m = {m}");
        }
    }

    #[test]
    fn half_turn_examples() {
        let (p, m) = half_turn(&Value::ratio(1, 2)).unwrap();
        assert_eq!(
            terms(&p),
            vec![
                (2, surd(ratio(-1, 2), ratio(1, 2), 5)),
                (1, Value::ratio(1, 2))
            ]
        );
        assert_eq!(p.rhs, ratio(1, 2));
        assert_eq!(terms(&m), vec![(2, phi().neg()), (1, Value::ratio(1, 2))]);
        assert_eq!(m.rhs, ratio(-1, 2));

        let (p, m) = half_turn(&Value::zero()).unwrap();
        assert_eq!(terms(&p)[0], (2, Value::one()));
        assert_eq!(terms(&m)[0], (2, Value::int(-1)));
        assert_eq!((p.rhs, m.rhs), (ratio(1, 2), ratio(-1, 2)));

        let (p, _) = half_turn(&Value::ratio(3, 4)).unwrap();
        assert_eq!(terms(&p)[0], (2, Value::ratio(1, 2)));
        assert_eq!(p.rhs, ratio(1, 2));

        // sqrt(1 + phi^2) is not in Q(sqrt 5)
        assert!(matches!(
            half_turn(&phi()),
            Err(Error::UnsupportedRadical(_))
        ));
    }

    #[test]
    fn diff_examples() {
        let id = diff_identity(&Value::ratio(1, 2)).unwrap();
        assert_eq!(
            terms(&id),
            vec![(1, Value::ratio(1, 2)), (-1, Value::ratio(-1, 3))]
        );
        assert_eq!(id.rhs, ratio(1, 4));

        let f = surd(int(0), ratio(1, 2), 2);
        let id = diff_identity(&f).unwrap();
        let g = surd(int(-2), int(1), 2)
            .div(&surd(int(2), int(1), 2))
            .unwrap();
        assert_eq!(terms(&id), vec![(1, f), (-1, g)]);
        assert_eq!(id.rhs, ratio(1, 4));

        let id = diff_identity(&Value::ratio(-3, 2)).unwrap();
        assert_eq!(
            terms(&id),
            vec![(1, Value::ratio(-3, 2)), (-1, Value::int(5))]
        );
        assert_eq!(id.rhs, ratio(-3, 4));

        assert_eq!(
            diff_identity(&Value::int(-1)),
            Err(Error::UndefinedDifference)
        );
    }

    #[test]
    fn identity_validation() {
        assert!(Identity::new(vec![], int(0)).is_err());
        assert!(Identity::new(vec![ArctanTerm::new(0, Value::one())], int(0)).is_err());
        let e = euler_identity();
        assert_eq!(e.negated().negated(), e);
        assert!(e.is_rational());
    }
}
