//! Pi digits from rational Machin-like identities via binary splitting.

use std::time::Duration;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{ratio, Rational, Value};
use crate::error::{Error, Result};
use crate::generator::Identity;
use crate::numeric::pow10;

/// Guard digits carried beyond the requested precision.
pub const ENGINE_GUARD: u32 = 10;

/// Ranges shorter than this are split sequentially.
const PARALLEL_THRESHOLD: u64 = 64;

/// Binary-splitting state for the series range `[a, b)`:
/// the sum over the range equals `t / (b * q)` relative to the prefix product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitNode {
    pub p: BigInt,
    pub q: BigInt,
    pub b: BigInt,
    pub t: BigInt,
}

impl SplitNode {
    /// Term `k` of `sum (-1)^k x^(2k) / (2k+1)` with `x = num/den`.
    fn leaf(k: u64, num_sq_neg: &BigInt, den_sq: &BigInt) -> SplitNode {
        let (p, q) = if k == 0 {
            (BigInt::one(), BigInt::one())
        } else {
            (num_sq_neg.clone(), den_sq.clone())
        };
        SplitNode {
            t: p.clone(),
            p,
            q,
            b: BigInt::from(2 * k + 1),
        }
    }

    pub fn combine(self, right: SplitNode) -> SplitNode {
        SplitNode {
            t: &right.b * &right.q * self.t + &self.b * &self.p * right.t,
            p: self.p * right.p,
            q: self.q * right.q,
            b: self.b * right.b,
        }
    }
}

fn split(a: u64, b: u64, num_sq_neg: &BigInt, den_sq: &BigInt) -> SplitNode {
    if b - a == 1 {
        return SplitNode::leaf(a, num_sq_neg, den_sq);
    }
    let m = a + (b - a) / 2;
    if b - a >= PARALLEL_THRESHOLD {
        let (l, r) = rayon::join(
            || split(a, m, num_sq_neg, den_sq),
            || split(m, b, num_sq_neg, den_sq),
        );
        l.combine(r)
    } else {
        split(a, m, num_sq_neg, den_sq).combine(split(m, b, num_sq_neg, den_sq))
    }
}

/// Smallest `n` with `(|p|/q)^(2n+1) / (2n+1) < 10^-precision`.
fn series_terms(p: &BigInt, q: &BigInt, precision: u32) -> u64 {
    let ratio_log = log10_big(q) - log10_big(&p.abs());
    let estimate = ((precision as f64 / ratio_log - 1.0) / 2.0)
        .floor()
        .max(0.0) as u64;
    let mut n = estimate.saturating_sub(2);
    let scale = pow10(precision);
    loop {
        let e = (2 * n + 1) as u32;
        if p.abs().pow(e) * &scale < q.pow(e) * BigInt::from(2 * n + 1) {
            return n;
        }
        n += 1;
    }
}

fn log10_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).log10();
    }
    let shift = bits - 900;
    (n >> shift).to_f64().unwrap().log10() + shift as f64 * std::f64::consts::LOG10_2
}

/// `arctan(p/q)` scaled by `10^(digits + ENGINE_GUARD)`, accurate to two ulps.
pub fn atan_series_split(p: &BigInt, q: &BigInt, digits: u32) -> Result<BigInt> {
    if !q.is_positive() || p.abs() >= *q {
        return Err(Error::ReductionRequired(format!("{p}/{q}")));
    }
    let precision = digits + ENGINE_GUARD;
    if p.is_zero() {
        return Ok(BigInt::zero());
    }
    let n = series_terms(p, q, precision);
    let node = split(0, n + 1, &-(p * p), &(q * q));
    let num = p * node.t * pow10(precision);
    let den = q * node.b * node.q;
    Ok(num.div_floor(&den))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitResult {
    /// `"3."` followed by `count` truncated decimals.
    pub digits: String,
    pub count: u32,
    pub source: Identity,
    pub elapsed: Duration,
    /// Set when the guard region could not rule out a carry into the last digit.
    pub unrounded: bool,
}

/// `(c, p, q)` for `c atan(p/q)`.
type Term = (i64, BigInt, BigInt);

/// Rewrites `c atan(t)` with `|t| >= 1` so that every remaining argument has
/// `|t| < 1`, moving the pi/2 and pi/4 parts into the right-hand side.
fn reduce_terms(id: &Identity) -> Result<(Vec<Term>, Rational)> {
    let mut rhs = id.rhs.clone();
    let mut out = Vec::new();
    for term in &id.terms {
        let t = match &term.arg {
            Value::Rational(r) => r.clone(),
            other => return Err(Error::RationalOnly(other.to_string())),
        };
        let c = term.coeff;
        let sign = if t.is_negative() { -1 } else { 1 };
        let mag = t.abs();
        if t.is_zero() {
            continue;
        } else if mag.is_one() {
            rhs -= ratio(c * sign, 4);
        } else if mag > Rational::one() {
            // atan(t) = sign(t) pi/2 - atan(1/t)
            rhs -= ratio(c * sign, 2);
            let inv = t.recip();
            out.push((-c, inv.numer().clone(), inv.denom().clone()));
        } else {
            out.push((c, t.numer().clone(), t.denom().clone()));
        }
    }
    Ok((out, rhs))
}

fn pi_fixed(terms: &[Term], rhs: &Rational, digits: u32) -> Result<BigInt> {
    use rayon::prelude::*;
    let parts = terms
        .par_iter()
        .map(|(c, p, q)| atan_series_split(p, q, digits).map(|v| v * BigInt::from(*c)))
        .collect::<Result<Vec<_>>>()?;
    let sum: BigInt = parts.into_iter().sum();
    Ok((sum * rhs.denom()).div_floor(rhs.numer()))
}

/// Ulps of error in [`pi_fixed`]: two per series (floor and tail), scaled by
/// the coefficients and the division by the right-hand side, plus the final floor.
fn error_bound(terms: &[Term], rhs: &Rational) -> BigInt {
    let coeff_sum: BigInt = terms.iter().map(|(c, _, _)| BigInt::from(c.abs())).sum();
    let scaled: BigInt = coeff_sum * 2 * rhs.denom();
    Integer::div_ceil(&scaled, &rhs.numer().abs()) + 1
}

#[cfg(not(target_family = "wasm"))]
fn stopwatch() -> impl Fn() -> Duration {
    let start = std::time::Instant::now();
    move || start.elapsed()
}

/// No clock on bare wasm; callers time the call themselves.
#[cfg(target_family = "wasm")]
fn stopwatch() -> impl Fn() -> Duration {
    || Duration::ZERO
}

pub fn pi_digits(id: &Identity, digits: u32) -> Result<DigitResult> {
    let elapsed = stopwatch();
    let (terms, rhs) = reduce_terms(id)?;
    if rhs.is_zero() || terms.is_empty() {
        return Err(Error::DegenerateIdentity(
            "right-hand side vanishes after reduction".into(),
        ));
    }
    let verdict = crate::verifier::verify_exact(id)?;
    if !verdict.holds {
        return Err(Error::InconsistentInput(format!(
            "identity does not hold: left side is {}",
            verdict.actual.map(|a| a.to_string()).unwrap_or_default()
        )));
    }
    let mut extra = 0u32;
    loop {
        let work = digits + extra;
        let fixed = pi_fixed(&terms, &rhs, work)?;
        let guard_len = (ENGINE_GUARD + extra) as usize;
        let scale = pow10(work + ENGINE_GUARD);
        let (int_part, frac) = fixed.div_mod_floor(&scale);
        let frac = format!(
            "{:0>width$}",
            frac.to_string(),
            width = (work + ENGINE_GUARD) as usize
        );
        let (kept, guard) = frac.split_at(digits as usize);
        let guard_val: BigInt = guard.parse().expect("decimal digits");
        let bound = error_bound(&terms, &rhs);
        let unrounded = guard.bytes().all(|c| c == b'9')
            || guard.bytes().all(|c| c == b'0')
            || guard_val < bound
            || guard_val + &bound >= pow10(guard_len as u32);
        if !unrounded || extra >= 4 * ENGINE_GUARD {
            return Ok(DigitResult {
                digits: format!("{int_part}.{kept}"),
                count: digits,
                source: id.clone(),
                elapsed: elapsed(),
                unrounded,
            });
        }
        extra += ENGINE_GUARD;
    }
}

/// `sum 1 / log10(1/|t|)` over the arguments after mapping `|t| > 1` to `1/t`.
/// Infinite when some argument has `|t| = 1`.
pub fn lehmer_measure(id: &Identity) -> Result<f64> {
    let mut total = 0.0;
    for term in &id.terms {
        let t = term
            .arg
            .as_rational()
            .ok_or_else(|| Error::RationalOnly(term.arg.to_string()))?;
        if t.is_zero() {
            return Err(Error::Degenerate(
                "zero argument has no Lehmer weight".into(),
            ));
        }
        let mag = t.abs();
        let (small, large) = if mag > Rational::one() {
            (mag.denom().clone(), mag.numer().clone())
        } else {
            (mag.numer().clone(), mag.denom().clone())
        };
        if small == large {
            return Ok(f64::INFINITY);
        }
        total += 1.0 / (log10_big(&large) - log10_big(&small));
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{euler_identity, machin_pair, ArctanTerm};

    fn naive_atan(p: i64, q: i64, digits: u32) -> BigInt {
        let scale = pow10(digits + ENGINE_GUARD + 5);
        let p = BigInt::from(p);
        let q = BigInt::from(q);
        let mut sum = BigInt::zero();
        let mut k = 0u32;
        loop {
            let e = 2 * k + 1;
            let term = &scale * p.pow(e) / (q.pow(e) * BigInt::from(e));
            if term.is_zero() {
                break;
            }
            if k.is_multiple_of(2) {
                sum += term;
            } else {
                sum -= term;
            }
            k += 1;
        }
        sum / pow10(5)
    }

    #[test]
    fn atan_examples() {
        let v = atan_series_split(&BigInt::from(1), &BigInt::from(2), 30).unwrap();
        assert!(v.to_string().starts_with("4636476090008061162142562314612"));
        assert!(atan_series_split(&BigInt::zero(), &BigInt::one(), 20)
            .unwrap()
            .is_zero());
        let v = atan_series_split(&BigInt::from(3), &BigInt::from(79), 30).unwrap();
        assert!(v.to_string().starts_with("379564451883143477757013801535"));
        assert!(matches!(
            atan_series_split(&BigInt::from(3), &BigInt::from(2), 10),
            Err(Error::ReductionRequired(_))
        ));
    }

    #[test]
    fn split_matches_naive_sum() {
        for (p, q) in [(1, 3), (-2, 9), (5, 11), (1, 239), (7, 15)] {
            let fast = atan_series_split(&BigInt::from(p), &BigInt::from(q), 50).unwrap();
            let slow = naive_atan(p, q, 50);
            assert!((fast - slow).abs() <= BigInt::from(3), "{p}/{q}");
        }
    }

    #[test]
    fn combine_is_associative() {
        let n = BigInt::from(-4);
        let d = BigInt::from(81);
        let leaves: Vec<_> = (0..3).map(|k| SplitNode::leaf(k, &n, &d)).collect();
        let left = leaves[0]
            .clone()
            .combine(leaves[1].clone())
            .combine(leaves[2].clone());
        let right = leaves[0]
            .clone()
            .combine(leaves[1].clone().combine(leaves[2].clone()));
        assert_eq!(left, right);
    }

    #[test]
    fn pi_from_small_identities() {
        let r = pi_digits(&euler_identity(), 1).unwrap();
        assert_eq!(r.digits, "3.1");
        let a = pi_digits(&machin_pair(5, &Value::int(2)).unwrap(), 100).unwrap();
        let b = pi_digits(&euler_identity(), 100).unwrap();
        assert_eq!(a.digits, b.digits);
        assert!(!a.unrounded);
        assert_eq!(a.digits.len(), 102);
    }

    #[test]
    fn engine_rejects_bad_input() {
        let phi = crate::arith::surd_normalize(ratio(1, 2), ratio(1, 2), 5).unwrap();
        let id = Identity::new(vec![ArctanTerm::new(1, phi)], ratio(1, 4)).unwrap();
        assert!(matches!(pi_digits(&id, 10), Err(Error::RationalOnly(_))));
        let id = Identity::new(vec![ArctanTerm::new(1, Value::one())], ratio(1, 4)).unwrap();
        assert!(matches!(
            pi_digits(&id, 10),
            Err(Error::DegenerateIdentity(_))
        ));
        let wrong = Identity::new(
            vec![
                ArctanTerm::new(2, Value::ratio(1, 2)),
                ArctanTerm::new(1, Value::ratio(1, 3)),
            ],
            ratio(1, 4),
        )
        .unwrap();
        assert!(matches!(
            pi_digits(&wrong, 10),
            Err(Error::InconsistentInput(_))
        ));
    }

    #[test]
    fn lehmer_examples() {
        let e = lehmer_measure(&euler_identity()).unwrap();
        assert!((e - 1.887269242674956).abs() < 1e-9);
        let single =
            Identity::new(vec![ArctanTerm::new(4, Value::ratio(1, 10))], ratio(1, 4)).unwrap();
        assert_eq!(lehmer_measure(&single).unwrap(), 1.0);
        let m = lehmer_measure(&machin_pair(2, &Value::int(7)).unwrap()).unwrap();
        assert!((m - 5.015993194561654).abs() < 1e-9);
        let unit = Identity::new(vec![ArctanTerm::new(1, Value::int(-1))], ratio(-1, 4)).unwrap();
        assert!(lehmer_measure(&unit).unwrap().is_infinite());
    }
}
