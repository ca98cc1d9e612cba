//! Second-order linear recurrences `W(alpha, beta, p, q)` and the
//! `u_n(x)`, `v_n(x)` pair behind the odot powers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{int, Rational, Value};
use crate::error::Result;

/// `a_0 = alpha`, `a_1 = beta`, `a_n = p a_{n-1} - q a_{n-2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSpec {
    pub alpha: Value,
    pub beta: Value,
    pub p: Value,
    pub q: Value,
}

impl RecurrenceSpec {
    pub fn new(alpha: Value, beta: Value, p: Value, q: Value) -> Self {
        RecurrenceSpec { alpha, beta, p, q }
    }

    /// `W(2, 1, 1, -1)`.
    pub fn lucas() -> Self {
        Self::new(Value::int(2), Value::int(1), Value::int(1), Value::int(-1))
    }

    /// `W(0, 1, 1, -1)`.
    pub fn fibonacci() -> Self {
        Self::new(Value::int(0), Value::int(1), Value::int(1), Value::int(-1))
    }

    /// `u_n(x) = W(1, x, 2x, 1 + x^2)`.
    pub fn u_of(x: &Value) -> Result<Self> {
        Ok(Self::new(
            Value::one(),
            x.clone(),
            two_x(x),
            one_plus_sq(x)?,
        ))
    }

    /// `v_n(x) = W(0, 1, 2x, 1 + x^2)`.
    pub fn v_of(x: &Value) -> Result<Self> {
        Ok(Self::new(
            Value::zero(),
            Value::one(),
            two_x(x),
            one_plus_sq(x)?,
        ))
    }

    /// Iterator over `a_0, a_1, a_2, ...`.
    pub fn terms(&self) -> Terms<'_> {
        Terms {
            spec: self,
            prev: None,
            cur: None,
        }
    }
}

fn two_x(x: &Value) -> Value {
    x.scale(&int(2))
}

fn one_plus_sq(x: &Value) -> Result<Value> {
    Ok(x.mul(x)?.add_rational(&Rational::one()))
}

pub struct Terms<'a> {
    spec: &'a RecurrenceSpec,
    prev: Option<Value>,
    cur: Option<Value>,
}

impl Iterator for Terms<'_> {
    type Item = Result<Value>;

    fn next(&mut self) -> Option<Self::Item> {
        let next = match (&self.prev, &self.cur) {
            (_, None) => Ok(self.spec.alpha.clone()),
            (None, Some(_)) => Ok(self.spec.beta.clone()),
            (Some(a), Some(b)) => step(&self.spec.p, &self.spec.q, a, b),
        };
        match next {
            Ok(v) => {
                self.prev = self.cur.take();
                self.cur = Some(v.clone());
                Some(Ok(v))
            }
            Err(e) => Some(Err(e)),
        }
    }
}

fn step(p: &Value, q: &Value, a2: &Value, a1: &Value) -> Result<Value> {
    p.mul(a1)?.sub(&q.mul(a2)?)
}

pub fn w_eval(spec: &RecurrenceSpec, n: usize) -> Result<Value> {
    spec.terms().nth(n).expect("infinite sequence")
}

/// `(u_n(x), v_n(x))`, the first row of `M^n` with `M = [[x, 1], [-1, x]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UvPair {
    pub u: Value,
    pub v: Value,
    pub n: usize,
    pub x: Value,
}

impl UvPair {
    /// `u^2 + v^2`, which equals `(1 + x^2)^n`.
    pub fn determinant(&self) -> Result<Value> {
        self.u.mul(&self.u)?.add(&self.v.mul(&self.v)?)
    }

    /// `M^n * M^m`: `u_{n+m} = u_n u_m - v_n v_m`, `v_{n+m} = u_n v_m + v_n u_m`.
    pub fn compose(&self, other: &UvPair) -> Result<UvPair> {
        let u = self.u.mul(&other.u)?.sub(&self.v.mul(&other.v)?)?;
        let v = self.u.mul(&other.v)?.add(&self.v.mul(&other.u)?)?;
        Ok(UvPair {
            u,
            v,
            n: self.n + other.n,
            x: self.x.clone(),
        })
    }
}

/// Coupled recurrence `u_n = x u_{n-1} - v_{n-1}`, `v_n = u_{n-1} + x v_{n-1}`.
pub fn uv_pair(n: usize, x: &Value) -> Result<UvPair> {
    let mut u = Value::one();
    let mut v = Value::zero();
    for _ in 0..n {
        let nu = x.mul(&u)?.sub(&v)?;
        let nv = u.add(&x.mul(&v)?)?;
        u = nu;
        v = nv;
    }
    Ok(UvPair {
        u,
        v,
        n,
        x: x.clone(),
    })
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * (n - i) / (i + 1);
    }
    c
}

/// Coefficients of `u_n(z)` and `v_n(z)` as polynomials in `z`, index `i` is
/// the coefficient of `z^i`.
pub fn uv_coefficients(n: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut u = vec![BigInt::zero(); n + 1];
    let mut v = vec![BigInt::zero(); n.max(1)];
    for k in 0..=n / 2 {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        u[n - 2 * k] = binomial(n, 2 * k) * sign;
        if 2 * k < n {
            v[n - 2 * k - 1] = binomial(n, 2 * k + 1) * sign;
        }
    }
    (u, v)
}

/// Evaluates `sum c_i x^i` by Horner's rule.
pub(crate) fn eval_int_poly(coeffs: &[BigInt], x: &Value) -> Result<Value> {
    let mut acc = Value::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(x)?.add_rational(&Rational::from_integer(c.clone()));
    }
    Ok(acc)
}

/// Closed (Redei) form of `u_n`, `v_n` via binomial sums.
pub fn uv_closed(n: usize, x: &Value) -> Result<UvPair> {
    let (uc, vc) = uv_coefficients(n);
    Ok(UvPair {
        u: eval_int_poly(&uc, x)?,
        v: eval_int_poly(&vc, x)?,
        n,
        x: x.clone(),
    })
}

fn integer_term(spec: &RecurrenceSpec, m: usize) -> BigInt {
    match w_eval(spec, m).expect("integer recurrence") {
        Value::Rational(r) => r.to_integer(),
        Value::Surd(_) => unreachable!("integer recurrence"),
    }
}

pub fn lucas(m: usize) -> BigInt {
    integer_term(&RecurrenceSpec::lucas(), m)
}

pub fn fibonacci(m: usize) -> BigInt {
    integer_term(&RecurrenceSpec::fibonacci(), m)
}

/// `phi^m = (L_m + F_m sqrt 5) / 2`.
pub fn phi_power(m: usize) -> Value {
    let half = |n: BigInt| Rational::new(n, BigInt::from(2));
    crate::arith::surd_normalize(half(lucas(m)), half(fibonacci(m)), 5).expect("5 is squarefree")
}

/// `(L_m, (-1)^m)`, encoding the minimal polynomial `t^2 - L_m t + (-1)^m` of `phi^m`.
pub fn min_poly_phi_power(m: usize) -> (BigInt, i32) {
    (lucas(m), if m.is_multiple_of(2) { 1 } else { -1 })
}
