//! Deciding whether an [`Identity`] holds, exactly and numerically.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::Rational;
use crate::error::Result;
use crate::generator::Identity;
use crate::numeric::{atan_approx, pi_approx, pow10, scientific, Approx};
use crate::odot::NormalAngle;

pub const DEFAULT_GUARD: u32 = 5;

/// Extra working digits on top of the requested precision, so that the
/// accumulated error bound stays far below the acceptance threshold.
const WORKING_EXTRA: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NumericStatus {
    Holds,
    Fails,
    /// The residual lies between the two thresholds; retry with more digits.
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericCheck {
    pub status: NumericStatus,
    pub digits: u32,
    pub guard: u32,
    /// `|LHS - rhs*pi|` followed by its rigorous error bound.
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// The exactly folded left side; `None` for purely numeric checks.
    pub actual: Option<NormalAngle>,
    pub claimed_rhs: Rational,
    pub numeric: Option<NumericCheck>,
}

impl Verdict {
    pub fn numeric_residual(&self) -> Option<&str> {
        self.numeric.as_ref().map(|n| n.residual.as_str())
    }
}

pub fn verify_exact(id: &Identity) -> Result<Verdict> {
    let actual = id.fold()?;
    let target = NormalAngle::from_pi_multiple(&id.rhs)?;
    Ok(Verdict {
        holds: actual == target,
        actual: Some(actual),
        claimed_rhs: id.rhs.clone(),
        numeric: None,
    })
}

pub fn verify_numeric(id: &Identity, digits: u32) -> Verdict {
    verify_numeric_with_guard(id, digits, DEFAULT_GUARD)
}

/// Holds iff `|LHS - rhs pi| < 10^(guard - digits)`, fails iff it is at
/// least `10^-guard`; anything in between is indeterminate.
pub fn verify_numeric_with_guard(id: &Identity, digits: u32, guard: u32) -> Verdict {
    let digits = digits.max(10);
    let work = digits + WORKING_EXTRA;
    let lhs = id
        .terms
        .par_iter()
        .map(|t| atan_approx(&t.arg, work).mul_int(&BigInt::from(t.coeff)))
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Approx::exact_int(0, work), |acc, a| acc.add(&a));
    let rhs = pi_approx(work).mul_rational(&id.rhs);
    let residual = lhs.sub(&rhs);
    let mag = residual.value.abs();
    let err = &residual.err;

    let holds_below = pow10(work - digits + guard);
    let fails_above = pow10(work.saturating_sub(guard));
    let status = if &mag + err < holds_below {
        NumericStatus::Holds
    } else if &mag >= err && &mag - err >= fails_above {
        NumericStatus::Fails
    } else {
        NumericStatus::Indeterminate
    };
    let residual_text = if mag.is_zero() {
        format!("0 (+-{})", scientific(err, work))
    } else {
        format!("{} (+-{})", scientific(&mag, work), scientific(err, work))
    };
    Verdict {
        holds: status == NumericStatus::Holds,
        actual: None,
        claimed_rhs: id.rhs.clone(),
        numeric: Some(NumericCheck {
            status,
            digits,
            guard,
            residual: residual_text,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{ratio, Value};
    use crate::generator::{golden_family, machin_pair, ArctanTerm, GoldenKind};

    fn id(terms: &[(i64, Value)], rhs: Rational) -> Identity {
        Identity::new(
            terms
                .iter()
                .map(|(c, v)| ArctanTerm::new(*c, v.clone()))
                .collect(),
            rhs,
        )
        .unwrap()
    }

    #[test]
    fn historical_displays() {
        let newton = id(
            &[
                (2, Value::ratio(1, 2)),
                (1, Value::ratio(4, 7)),
                (1, Value::ratio(1, 8)),
            ],
            ratio(1, 2),
        );
        assert!(verify_exact(&newton).unwrap().holds);
        let euler = id(
            &[(5, Value::ratio(1, 7)), (2, Value::ratio(3, 79))],
            ratio(1, 4),
        );
        assert!(verify_exact(&euler).unwrap().holds);
    }

    #[test]
    fn wrong_identity_reports_actual() {
        let wrong = id(
            &[(2, Value::ratio(1, 2)), (1, Value::ratio(1, 3))],
            ratio(1, 4),
        );
        let v = verify_exact(&wrong).unwrap();
        assert!(!v.holds);
        assert_eq!(
            v.actual,
            Some(NormalAngle {
                t: Value::int(3),
                h: 0
            })
        );
        let n = verify_numeric(&wrong, 50);
        assert!(!n.holds);
        assert_eq!(n.numeric.unwrap().status, NumericStatus::Fails);
    }

    #[test]
    fn numeric_examples() {
        let m = machin_pair(7, &Value::int(3)).unwrap();
        let v = verify_numeric(&m, 50);
        assert!(v.holds, "{v:?}");
        let zero = id(&[(1, Value::zero())], ratio(0, 1));
        assert!(verify_numeric(&zero, 10).holds);
        assert!(verify_exact(&zero).unwrap().holds);
        let g = golden_family(GoldenKind::Even, 1).unwrap();
        assert!(verify_numeric(&g, 100).holds);
    }

    #[test]
    fn numeric_handles_non_quarter_rhs() {
        // 2 atan(2 - sqrt 3) = pi/6
        let t =
            crate::arith::surd_normalize(crate::arith::int(2), crate::arith::int(-1), 3).unwrap();
        let sixth = id(&[(2, t)], ratio(1, 6));
        assert!(verify_numeric(&sixth, 30).holds);
        assert!(verify_exact(&sixth).unwrap().holds);
    }

    #[test]
    fn unsupported_rhs_is_an_error() {
        let fifth = id(&[(1, Value::ratio(1, 2))], ratio(1, 5));
        assert!(verify_exact(&fifth).is_err());
        assert!(!verify_numeric(&fifth, 20).holds);
    }

    #[test]
    fn negation_and_splitting() {
        let m = machin_pair(8, &Value::int(3)).unwrap();
        assert!(verify_exact(&m.negated()).unwrap().holds);
        let mut split = m.clone();
        split.terms = std::iter::repeat_n(ArctanTerm::new(1, Value::ratio(1, 3)), 8)
            .chain(std::iter::once(m.terms[1].clone()))
            .collect();
        assert!(verify_exact(&split).unwrap().holds);
        split.terms.reverse();
        assert!(verify_exact(&split).unwrap().holds);
    }
}
