//! Decimal fixed-point approximations with rigorous error bounds.
//!
//! An [`Approx`] at scale `digits` stores an integer `value` and a bound `err`
//! such that `|x - value * 10^-digits| <= err * 10^-digits`. Every operation
//! returns a bound that accounts for both propagated input error and its own
//! rounding.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Rational, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Approx {
    pub value: BigInt,
    pub err: BigInt,
    pub digits: u32,
}

pub fn pow10(n: u32) -> BigInt {
    BigInt::from(10).pow(n)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_ceil(b)
}

impl Approx {
    pub fn exact_int(n: i64, digits: u32) -> Approx {
        Approx {
            value: BigInt::from(n) * pow10(digits),
            err: BigInt::zero(),
            digits,
        }
    }

    pub fn from_rational(r: &Rational, digits: u32) -> Approx {
        let value = (r.numer() * pow10(digits)).div_floor(r.denom());
        Approx {
            value,
            err: BigInt::one(),
            digits,
        }
    }

    /// `a + b sqrt(d)`: the irrational part comes from an integer square root
    /// of the scaled radicand `b^2 d 10^(2 digits)`.
    pub fn from_value(v: &Value, digits: u32) -> Approx {
        match v {
            Value::Rational(r) => Approx::from_rational(r, digits),
            Value::Surd(s) => {
                let a = Approx::from_rational(s.a(), digits);
                let b = s.b();
                let scaled = b.numer() * b.numer() * BigInt::from(s.d()) * pow10(2 * digits);
                let mag = scaled.div_floor(&(b.denom() * b.denom())).sqrt();
                let irr = if b.is_negative() { -mag } else { mag };
                Approx {
                    value: a.value + irr,
                    err: BigInt::from(3),
                    digits,
                }
            }
        }
    }

    fn scale(&self) -> BigInt {
        pow10(self.digits)
    }

    pub fn add(&self, o: &Approx) -> Approx {
        debug_assert_eq!(self.digits, o.digits);
        Approx {
            value: &self.value + &o.value,
            err: &self.err + &o.err,
            digits: self.digits,
        }
    }

    pub fn sub(&self, o: &Approx) -> Approx {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Approx {
        Approx {
            value: -&self.value,
            err: self.err.clone(),
            digits: self.digits,
        }
    }

    pub fn mul_int(&self, k: &BigInt) -> Approx {
        Approx {
            value: &self.value * k,
            err: &self.err * k.abs(),
            digits: self.digits,
        }
    }

    /// Multiplies by an exact rational.
    pub fn mul_rational(&self, r: &Rational) -> Approx {
        let num = &self.value * r.numer();
        Approx {
            value: num.div_floor(r.denom()),
            err: ceil_div(&(&self.err * r.numer().abs()), r.denom()) + 1,
            digits: self.digits,
        }
    }

    pub fn mul(&self, o: &Approx) -> Approx {
        let s = self.scale();
        let value = (&self.value * &o.value).div_floor(&s);
        let prop = self.value.abs() * &o.err + o.value.abs() * &self.err + &self.err * &o.err;
        Approx {
            value,
            err: ceil_div(&prop, &s) + 1,
            digits: self.digits,
        }
    }

    /// Requires `|o.value| > o.err`.
    pub fn div(&self, o: &Approx) -> Approx {
        let s = self.scale();
        let den = o.value.abs();
        assert!(den > o.err, "division by an approximation that may be zero");
        let value = (&self.value * &s).div_floor(&o.value);
        let prop = &s * (&self.err * &den + self.value.abs() * &o.err);
        Approx {
            value,
            err: ceil_div(&prop, &(&den * (&den - &o.err))) + 1,
            digits: self.digits,
        }
    }

    /// Square root of a quantity known to be at least 1.
    pub fn sqrt_ge_one(&self) -> Approx {
        let s = self.scale();
        Approx {
            value: (&self.value * &s).sqrt(),
            err: &self.err + 1,
            digits: self.digits,
        }
    }

    /// Upper bound on `|x|`, in ulps.
    pub fn abs_upper(&self) -> BigInt {
        self.value.abs() + &self.err
    }

    /// Closed interval `[lo, hi]` in ulps that contains the true value.
    pub fn interval(&self) -> (BigInt, BigInt) {
        (&self.value - &self.err, &self.value + &self.err)
    }
}

/// Taylor series for `arctan` on a fixed-point input with `|x| <= 1/2`.
///
/// Returns the sum and the number of terms used.
fn atan_series(x: &BigInt, s: &BigInt) -> (BigInt, usize) {
    let x2 = (x * x).div_floor(s);
    let mut pow = x.clone();
    let mut sum = BigInt::zero();
    let mut k = 0usize;
    while !pow.is_zero() {
        let term = &pow / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        pow = (&pow * &x2) / s;
        k += 1;
    }
    (sum, k)
}

/// `arctan(t)` with halving reductions `t -> t / (1 + sqrt(1 + t^2))` until `|t| <= 1/2`.
pub fn atan_approx(t: &Value, digits: u32) -> Approx {
    let mut x = Approx::from_value(t, digits);
    let s = x.scale();
    let half = &s / 2;
    let one = Approx::exact_int(1, digits);
    let mut doublings = 0u32;
    while x.abs_upper() > half {
        let w = one.add(&x.mul(&x));
        let den = one.add(&w.sqrt_ge_one());
        x = x.div(&den);
        doublings += 1;
    }
    let (sum, terms) = atan_series(&x.value, &s);
    // per-term rounding (< 4 ulps each), tail (< 3 ulps), input error (arctan is 1-Lipschitz)
    let err = BigInt::from(4 * terms as u64 + 3) + &x.err;
    let k = BigInt::one() << doublings;
    Approx {
        value: sum * &k,
        err: err * k,
        digits,
    }
}

/// `pi = 20 atan(1/7) + 8 atan(3/79)`, from Euler's quarter-pi formula.
pub fn pi_approx(digits: u32) -> Approx {
    static CHECKED: OnceLock<bool> = OnceLock::new();
    let ok = CHECKED.get_or_init(|| {
        crate::verifier::verify_exact(&crate::generator::euler_identity())
            .map(|v| v.holds)
            .unwrap_or(false)
    });
    assert!(*ok, "bootstrap identity for pi failed exact verification");
    let a = atan_approx(&Value::ratio(1, 7), digits);
    let b = atan_approx(&Value::ratio(3, 79), digits);
    a.mul_int(&BigInt::from(20))
        .add(&b.mul_int(&BigInt::from(8)))
}

/// Formats a scaled integer as a short scientific-notation string.
pub fn scientific(value: &BigInt, digits: u32) -> String {
    if value.is_zero() {
        return "0".into();
    }
    let sign = if value.is_negative() { "-" } else { "" };
    let s = value.abs().to_string();
    let exp = s.len() as i64 - 1 - digits as i64;
    let mantissa = if s.len() > 1 {
        format!("{}.{}", &s[..1], &s[1..s.len().min(4)])
    } else {
        s.clone()
    };
    format!("{sign}{mantissa}e{exp}")
}
