//! The odot product `x (.) y = (x + y) / (1 - x y)`, its powers and roots, and
//! exact folding of arctangent sums into [`NormalAngle`]s.

use std::fmt;

use num_traits::{ToPrimitive, Zero};

use crate::arith::{int, ratio, surd_normalize, Rational, Value};
use crate::error::{Error, Result};
use crate::sequences::{uv_coefficients, uv_pair};

/// The exact angle `arctan(t) + h * pi/2`.
///
/// Canonical: either `h` is even, or `t == 0` and `h` is odd (a right angle).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalAngle {
    pub t: Value,
    pub h: i64,
}

impl NormalAngle {
    pub fn zero() -> Self {
        NormalAngle {
            t: Value::zero(),
            h: 0,
        }
    }

    pub fn new(t: Value, h: i64) -> Result<Self> {
        NormalAngle { t, h }.canonical()
    }

    /// `arctan(t) + pi/2 = arctan(-1/t) + pi` for `t > 0`, and
    /// `arctan(t) + pi/2 = arctan(-1/t)` for `t < 0`.
    fn canonical(self) -> Result<Self> {
        if self.h % 2 == 0 || self.t.is_zero() {
            return Ok(self);
        }
        let s = self.t.sign() as i64;
        Ok(NormalAngle {
            t: self.t.recip()?.neg(),
            h: self.h + s,
        })
    }

    pub fn is_right_angle(&self) -> bool {
        self.t.is_zero() && self.h % 2 != 0
    }

    pub fn negate(&self) -> NormalAngle {
        NormalAngle {
            t: self.t.neg(),
            h: -self.h,
        }
    }

    /// The angle `r * pi`, provided `tan` of its reduced part is a supported exact value.
    pub fn from_pi_multiple(r: &Rational) -> Result<Self> {
        let half = ratio(1, 2);
        let j = (r + &half).floor();
        let f = r - &j;
        let j = j
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::UnsupportedRhs(r.to_string()))?;
        if f == -half {
            return Ok(NormalAngle {
                t: Value::zero(),
                h: 2 * j - 1,
            });
        }
        let t = tan_of_pi_fraction(&f).ok_or_else(|| Error::UnsupportedRhs(r.to_string()))?;
        Ok(NormalAngle { t, h: 2 * j })
    }

    /// The rational `r` with `self = r * pi`, if the tangent is one of the supported values.
    pub fn pi_multiple(&self) -> Option<Rational> {
        let base = ratio(self.h, 2);
        if self.t.is_zero() {
            return Some(base);
        }
        tan_table()
            .into_iter()
            .find(|(_, t)| *t == self.t)
            .map(|(f, _)| base + f)
    }

    /// Approximate value in radians, for display.
    pub fn to_f64(&self) -> f64 {
        self.t.to_f64().atan() + self.h as f64 * std::f64::consts::FRAC_PI_2
    }
}

impl fmt::Display for NormalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "atan({}) + {}*pi/2", self.t, self.h)
    }
}

/// `(f, tan(f pi))` for the fractions `f` in `(-1/2, 1/2)` whose tangent is
/// rational or lies in a single quadratic field.
fn tan_table() -> Vec<(Rational, Value)> {
    let s = |a: i64, b: Rational, d: i64| surd_normalize(int(a), b, d).expect("valid radicand");
    let positive = [
        (ratio(1, 12), s(2, int(-1), 3)),
        (ratio(1, 8), s(-1, int(1), 2)),
        (ratio(1, 6), s(0, ratio(1, 3), 3)),
        (ratio(1, 4), Value::one()),
        (ratio(1, 3), s(0, int(1), 3)),
        (ratio(3, 8), s(1, int(1), 2)),
        (ratio(5, 12), s(2, int(1), 3)),
    ];
    let mut table = vec![(Rational::zero(), Value::zero())];
    for (f, t) in positive {
        table.push((-f.clone(), t.neg()));
        table.push((f, t));
    }
    table
}

fn tan_of_pi_fraction(f: &Rational) -> Option<Value> {
    tan_table()
        .into_iter()
        .find(|(g, _)| g == f)
        .map(|(_, t)| t)
}

pub fn odot(x: &Value, y: &Value) -> Result<Value> {
    let den = Value::one().sub(&x.mul(y)?)?;
    if den.is_zero() {
        return Err(Error::RightAngle(format!("{x} (.) {y} with x*y = 1")));
    }
    x.add(y)?.div(&den)
}

fn check_not_unit(x: &Value) -> Result<()> {
    if x.is_one() || x.neg().is_one() {
        return Err(Error::Degenerate(format!("x = {x} must not be +-1")));
    }
    Ok(())
}

/// `(1/x)^{(.)n} = v_n(x) / u_n(x)`.
pub fn odot_pow_reciprocal(x: &Value, n: usize) -> Result<Value> {
    check_not_unit(x)?;
    let p = uv_pair(n, x)?;
    if p.u.is_zero() {
        return Err(Error::RightAngle(format!("u_{n}({x}) = 0")));
    }
    p.v.div(&p.u)
}

/// `x^{(.)n}`: `u_n / v_n` for odd `n`, `-v_n / u_n` for even `n`.
pub fn odot_pow(x: &Value, n: usize) -> Result<Value> {
    check_not_unit(x)?;
    let p = uv_pair(n, x)?;
    let (num, den) = if n % 2 == 1 {
        (p.u, p.v)
    } else {
        (p.v.neg(), p.u)
    };
    if den.is_zero() {
        return Err(Error::RightAngle(format!("{x}^(.){n} is a right angle")));
    }
    num.div(&den)
}

/// Adds one copy of `arctan(y)` to `state`.
fn fold_one(state: &NormalAngle, y: &Value) -> Result<NormalAngle> {
    let s = &state.t;
    let prod = s.mul(y)?;
    let sign = s.sign() as i64;
    match prod.compare(&Value::one())? {
        std::cmp::Ordering::Less => NormalAngle::new(odot(s, y)?, state.h),
        std::cmp::Ordering::Greater => NormalAngle::new(odot(s, y)?, state.h + 2 * sign),
        std::cmp::Ordering::Equal => NormalAngle::new(Value::zero(), state.h + sign),
    }
}

/// Folds `coeff * arctan(arg)` into `state`, one copy at a time.
pub fn fold_term(state: &NormalAngle, coeff: i64, arg: &Value) -> Result<NormalAngle> {
    let y = if coeff < 0 { arg.neg() } else { arg.clone() };
    let mut acc = state.clone();
    for _ in 0..coeff.unsigned_abs() {
        acc = fold_one(&acc, &y)?;
    }
    Ok(acc)
}

/// Polynomial in `z`; `coefficients[i]` multiplies `z^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OdotPolynomial {
    pub coefficients: Vec<Value>,
}

impl OdotPolynomial {
    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    pub fn eval(&self, z: &Value) -> Result<Value> {
        let mut acc = Value::zero();
        for c in self.coefficients.iter().rev() {
            acc = acc.mul(z)?.add(c)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for OdotPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Polynomial whose real roots `z` are exactly the solutions of `z^{(.)n} = x`.
///
/// Even `n`: `x u_n(z) + v_n(z)`. Odd `n`: `x v_n(z) - u_n(z)`.
pub fn root_poly(n: usize, x: &Value) -> Result<OdotPolynomial> {
    if n == 0 {
        return Err(Error::Degenerate("root order must be positive".into()));
    }
    check_not_unit(x)?;
    let (u, v) = uv_coefficients(n);
    let lift =
        |c: &num_bigint::BigInt| Value::Rational(crate::arith::Rational::from_integer(c.clone()));
    let mut coefficients = vec![Value::zero(); n + 1];
    for (i, slot) in coefficients.iter_mut().enumerate() {
        let ui = lift(&u[i]);
        let vi = v.get(i).map(lift).unwrap_or_else(Value::zero);
        *slot = if n.is_multiple_of(2) {
            x.mul(&ui)?.add(&vi)?
        } else {
            x.mul(&vi)?.sub(&ui)?
        };
    }
    Ok(OdotPolynomial { coefficients })
}

/// Both odot square roots of `x`, the roots of `x z^2 + 2 z - x`:
/// `z = (-1 +- sqrt(1 + x^2)) / x`.
pub fn odot_sqrt(x: &Value) -> Result<[Value; 2]> {
    if x.is_zero() {
        // 0 = z^(.)2 only at z = 0; the other root has gone to infinity
        return Err(Error::RightAngle(
            "the second odot root of 0 is at infinity".into(),
        ));
    }
    let disc = x.mul(x)?.add_rational(&int(1));
    let r = disc
        .sqrt()?
        .ok_or_else(|| Error::UnsupportedRadical(disc.to_string()))?;
    let minus_one = Value::int(-1);
    Ok([minus_one.add(&r)?.div(x)?, minus_one.sub(&r)?.div(x)?])
}
