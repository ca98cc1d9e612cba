//! Exact arithmetic: big rationals and elements of real quadratic fields Q(sqrt d).
//!
//! Every [`Value`] is kept canonical. Radicands are squarefree, and a surd
//! with a vanishing irrational part is demoted to a rational, so structural
//! equality coincides with numeric equality.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Shorthand for the rational `p/q`. Panics if `q == 0`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `a + b*sqrt(d)` with `b != 0` and `d >= 2` squarefree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    a: Rational,
    b: Rational,
    d: u64,
}

impl Surd {
    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn conj(&self) -> Surd {
        Surd {
            a: self.a.clone(),
            b: -&self.b,
            d: self.d,
        }
    }

    /// `a^2 - b^2 d`, the field norm.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * int_u(self.d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Rational(Rational),
    Surd(Surd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn int_u(n: u64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Splits `n = s^2 * c` with `c` squarefree. Returns `(s, c)`.
///
/// Trial division runs up to the cube root of `n`; whatever survives has at
/// most two prime factors, so it is either a perfect square or squarefree.
pub fn squarefree_split(n: u64) -> (u64, u64) {
    if n == 0 {
        return (0, 0);
    }
    let mut m = n;
    let mut s = 1u64;
    let mut core = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p).saturating_mul(p) <= n {
        let p2 = p * p;
        while m.is_multiple_of(p2) {
            m /= p2;
            s *= p;
        }
        if m.is_multiple_of(p) {
            m /= p;
            core *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = m.sqrt();
    if r > 1 && r * r == m {
        s *= r;
    } else {
        core *= m;
    }
    (s, core)
}

/// Builds the canonical value `a + b*sqrt(d)`.
pub fn surd_normalize(a: Rational, b: Rational, d: impl Into<BigInt>) -> Result<Value> {
    let d: BigInt = d.into();
    if d.sign() != Sign::Plus {
        return Err(Error::InvalidRadicand(d.to_string()));
    }
    let d = d
        .to_u64()
        .ok_or_else(|| Error::RadicandTooLarge(d.to_string()))?;
    let (s, core) = squarefree_split(d);
    let b = b * int_u(s);
    Ok(Value::from_parts(a, b, core))
}

impl Value {
    pub fn zero() -> Value {
        Value::Rational(Rational::zero())
    }

    pub fn one() -> Value {
        Value::Rational(Rational::one())
    }

    pub fn int(n: i64) -> Value {
        Value::Rational(int(n))
    }

    pub fn ratio(p: i64, q: i64) -> Value {
        Value::Rational(ratio(p, q))
    }

    /// Assumes `d` is already squarefree (or 1).
    fn from_parts(a: Rational, b: Rational, d: u64) -> Value {
        if b.is_zero() || d == 1 {
            Value::Rational(if d == 1 { a + b } else { a })
        } else {
            Value::Surd(Surd { a, b, d })
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Value::Rational(r) => Some(r),
            Value::Surd(_) => None,
        }
    }

    /// The radicand of the field this value lives in, `None` for rationals.
    pub fn field(&self) -> Option<u64> {
        match self {
            Value::Rational(_) => None,
            Value::Surd(s) => Some(s.d),
        }
    }

    /// `(a, b)` with `self = a + b*sqrt(d)`.
    fn parts(&self) -> (Rational, Rational) {
        match self {
            Value::Rational(r) => (r.clone(), Rational::zero()),
            Value::Surd(s) => (s.a.clone(), s.b.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Value::Rational(r) if r.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Value::Rational(r) if r.is_one())
    }

    pub fn conj(&self) -> Value {
        match self {
            Value::Rational(r) => Value::Rational(r.clone()),
            Value::Surd(s) => Value::Surd(s.conj()),
        }
    }

    pub fn neg(&self) -> Value {
        match self {
            Value::Rational(r) => Value::Rational(-r),
            Value::Surd(s) => Value::Surd(Surd {
                a: -&s.a,
                b: -&s.b,
                d: s.d,
            }),
        }
    }

    fn common_field(&self, other: &Value) -> Result<u64> {
        match (self.field(), other.field()) {
            (None, None) => Ok(1),
            (Some(d), None) | (None, Some(d)) => Ok(d),
            (Some(d), Some(e)) if d == e => Ok(d),
            (Some(d), Some(e)) => Err(Error::IncompatibleField(d, e)),
        }
    }

    pub fn add(&self, other: &Value) -> Result<Value> {
        let d = self.common_field(other)?;
        let (a, b) = self.parts();
        let (c, e) = other.parts();
        Ok(Value::from_parts(a + c, b + e, d))
    }

    pub fn sub(&self, other: &Value) -> Result<Value> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Value) -> Result<Value> {
        if let (Value::Rational(x), Value::Rational(y)) = (self, other) {
            return Ok(Value::Rational(x * y));
        }
        let d = self.common_field(other)?;
        let (a, b) = self.parts();
        let (c, e) = other.parts();
        let re = &a * &c + &b * &e * int_u(d);
        let im = a * e + b * c;
        Ok(Value::from_parts(re, im, d))
    }

    /// `1/(a + b sqrt d) = (a - b sqrt d) / (a^2 - b^2 d)`.
    pub fn recip(&self) -> Result<Value> {
        match self {
            Value::Rational(r) if r.is_zero() => Err(Error::DivisionByZero),
            Value::Rational(r) => Ok(Value::Rational(r.recip())),
            Value::Surd(s) => {
                // nonzero for b != 0 since d is not a square
                let n = s.norm();
                Ok(Value::from_parts(&s.a / &n, -&s.b / &n, s.d))
            }
        }
    }

    pub fn div(&self, other: &Value) -> Result<Value> {
        if let (Value::Rational(x), Value::Rational(y)) = (self, other) {
            if y.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(Value::Rational(x / y));
        }
        self.common_field(other)?;
        self.mul(&other.recip()?)
    }

    pub fn scale(&self, k: &Rational) -> Value {
        match self {
            Value::Rational(r) => Value::Rational(r * k),
            Value::Surd(s) => Value::from_parts(&s.a * k, &s.b * k, s.d),
        }
    }

    pub fn add_rational(&self, k: &Rational) -> Value {
        match self {
            Value::Rational(r) => Value::Rational(r + k),
            Value::Surd(s) => Value::Surd(Surd {
                a: &s.a + k,
                b: s.b.clone(),
                d: s.d,
            }),
        }
    }

    pub fn pow(&self, n: u32) -> Result<Value> {
        let mut acc = Value::one();
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Exact sign, decided by comparing `a^2` against `b^2 d`.
    pub fn sign(&self) -> i32 {
        match self {
            Value::Rational(r) => rational_sign(r),
            Value::Surd(s) => {
                let sa = rational_sign(&s.a);
                let sb = rational_sign(&s.b);
                if sa == sb || sa == 0 {
                    return sb;
                }
                // opposite signs: the larger magnitude wins
                let a2 = &s.a * &s.a;
                let b2d = &s.b * &s.b * int_u(s.d);
                match a2.cmp(&b2d) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => unreachable!("d is not a perfect square"),
                }
            }
        }
    }

    pub fn abs(&self) -> Value {
        if self.sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact comparison of two values in a common field.
    pub fn compare(&self, other: &Value) -> Result<Ordering> {
        Ok(self.sub(other)?.sign().cmp(&0))
    }

    /// Square root inside the same field (or a fresh one if `self` is rational).
    ///
    /// Returns `Ok(None)` when the root is not an element of a single quadratic field.
    pub fn sqrt(&self) -> Result<Option<Value>> {
        match self.sign() {
            -1 => return Ok(None),
            0 => return Ok(Some(Value::zero())),
            _ => {}
        }
        match self {
            Value::Rational(r) => rational_sqrt(r).map(Some),
            Value::Surd(s) => surd_sqrt(s),
        }
    }

    /// Approximate value, for display only.
    pub fn to_f64(&self) -> f64 {
        let r2f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        match self {
            Value::Rational(r) => r2f(r),
            Value::Surd(s) => r2f(&s.a) + r2f(&s.b) * (s.d as f64).sqrt(),
        }
    }
}

pub fn value_arith(x: &Value, y: &Value, op: ArithOp) -> Result<Value> {
    match op {
        ArithOp::Add => x.add(y),
        ArithOp::Sub => x.sub(y),
        ArithOp::Mul => x.mul(y),
        ArithOp::Div => x.div(y),
    }
}

pub fn value_sign(x: &Value) -> i32 {
    x.sign()
}

fn rational_sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn big_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// sqrt(p/q) = sqrt(p q) / q, with `p q` split into square and squarefree parts.
fn rational_sqrt(r: &Rational) -> Result<Value> {
    let pq = r.numer() * r.denom();
    if let Some(s) = big_sqrt_exact(&pq) {
        return Ok(Value::Rational(Rational::new(s, r.denom().clone())));
    }
    let b = Rational::new(BigInt::one(), r.denom().clone());
    surd_normalize(Rational::zero(), b, pq)
}

/// Solves `(c + e sqrt d)^2 = A + B sqrt d` over the rationals.
fn surd_sqrt(s: &Surd) -> Result<Option<Value>> {
    let n2 = s.norm();
    // c^2 = (A + N)/2 with N = sqrt(A^2 - B^2 d); needs both to be rational squares.
    let n = match rational_sqrt_opt(&n2) {
        Some(n) => n,
        None => return Ok(None),
    };
    for n in [n.clone(), -n] {
        let c2 = (&s.a + &n) / int(2);
        if c2.is_positive() {
            if let Some(c) = rational_sqrt_opt(&c2) {
                let e = &s.b / (int(2) * &c);
                let root = Value::from_parts(c, e, s.d);
                // pick the positive root
                let root = root.abs();
                debug_assert_eq!(root.mul(&root).unwrap(), Value::Surd(s.clone()));
                return Ok(Some(root));
            }
        }
    }
    Ok(None)
}

fn rational_sqrt_opt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = big_sqrt_exact(r.numer())?;
    let d = big_sqrt_exact(r.denom())?;
    Some(Rational::new(n, d))
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "surd({},{},{})", self.a, self.b, self.d)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Rational(r) => write!(f, "{r}"),
            Value::Surd(s) => write!(f, "{s}"),
        }
    }
}

impl From<Rational> for Value {
    fn from(r: Rational) -> Self {
        Value::Rational(r)
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Value::int(n)
    }
}
