//! Classical and golden-mean identities written out term by term, independent
//! of the generators. Used as verification fixtures.

use num_bigint::BigInt;

use crate::arith::{int, ratio, surd_normalize, Rational, Value};
use crate::generator::{ArctanTerm, Identity};
use crate::sequences::{fibonacci, lucas, phi_power};

fn id(terms: Vec<(i64, Value)>, rhs: Rational) -> Identity {
    Identity::new(
        terms
            .into_iter()
            .map(|(c, v)| ArctanTerm::new(c, v))
            .collect(),
        rhs,
    )
    .expect("gallery identities are well formed")
}

fn q(p: i64, d: i64) -> Value {
    Value::ratio(p, d)
}

fn div(a: &Value, b: &Value) -> Value {
    a.div(b).expect("nonzero, same field")
}

fn inv_phi(m: usize) -> Value {
    phi_power(m).recip().expect("nonzero")
}

fn half_of(n: BigInt) -> Value {
    Value::Rational(Rational::new(n, BigInt::from(2)))
}

fn lucas_ratio(m: usize) -> Value {
    let l = lucas(m);
    Value::Rational(Rational::new(&l - 2, &l + 2))
}

pub fn newton() -> Identity {
    id(vec![(2, q(1, 2)), (1, q(4, 7)), (1, q(1, 8))], ratio(1, 2))
}

pub fn quarter_pi() -> Identity {
    id(vec![(1, q(1, 2)), (1, q(1, 3))], ratio(1, 4))
}

pub fn euler() -> Identity {
    id(vec![(5, q(1, 7)), (2, q(3, 79))], ratio(1, 4))
}

/// The four worked examples of the `(n, x)` family, in the printed signs.
pub fn machin_examples() -> Vec<Identity> {
    vec![
        id(vec![(7, q(1, 3)), (-1, q(278, 29))], ratio(1, 4)),
        id(vec![(8, q(1, 3)), (1, q(863, 191))], ratio(5, 4)),
        id(vec![(5, q(1, 2)), (-1, q(79, 3))], ratio(1, 4)),
        id(vec![(2, q(1, 7)), (1, q(17, 31))], ratio(1, 4)),
    ]
}

pub fn phi_powers() -> Vec<Identity> {
    vec![
        id(vec![(1, inv_phi(1)), (1, inv_phi(3))], ratio(1, 4)),
        id(vec![(2, inv_phi(2)), (1, inv_phi(6))], ratio(1, 4)),
        id(vec![(3, inv_phi(3)), (1, inv_phi(5))], ratio(1, 4)),
        id(vec![(12, inv_phi(3)), (4, inv_phi(5))], int(1)),
    ]
}

/// `2 A(1/phi^(2k+1)) + A((L - 2)/(L + 2)) = pi/4`.
pub fn phi_odd(k: usize) -> Identity {
    let m = 2 * k + 1;
    id(vec![(2, inv_phi(m)), (1, lucas_ratio(m))], ratio(1, 4))
}

/// `2 A(1/phi^(2k)) + A((-2 + (L - 2) phi^2k) / (-2 + (L + 2) phi^2k)) = pi/4`.
pub fn phi_even(k: usize) -> Identity {
    let m = 2 * k;
    let l = Rational::from_integer(lucas(m));
    let p = phi_power(m);
    let num = p.scale(&(&l - int(2))).add_rational(&int(-2));
    let den = p.scale(&(&l + int(2))).add_rational(&int(-2));
    id(vec![(2, inv_phi(m)), (1, div(&num, &den))], ratio(1, 4))
}

fn root2() -> Value {
    surd_normalize(int(0), int(1), 2).expect("2 is squarefree")
}

pub fn sqrt2() -> Identity {
    let r = root2();
    let num = r.scale(&int(-2)).add_rational(&int(1));
    let den = r.scale(&int(2)).add_rational(&int(1));
    id(
        vec![(2, r.recip().unwrap()), (1, div(&num, &den))],
        ratio(1, 4),
    )
}

/// `2 A(1/sqrt(2^k)) + A((2^k - 1 - 2 sqrt(2^k)) / (2^k - 1 + 2 sqrt(2^k))) = pi/4`, odd `k`.
pub fn power_of_two(k: u32) -> Identity {
    let two_k = 2i64.pow(k);
    let s = surd_normalize(int(0), int(1), two_k).expect("positive radicand");
    let base = int(two_k - 1);
    let num = s.scale(&int(-2)).add_rational(&base);
    let den = s.scale(&int(2)).add_rational(&base);
    id(
        vec![(2, s.recip().unwrap()), (1, div(&num, &den))],
        ratio(1, 4),
    )
}

/// `2 A(8/(5 + sqrt 29)^3) + A(69/71) = pi/4`.
pub fn sqrt29() -> Identity {
    let c = surd_normalize(int(5), int(1), 29).unwrap().pow(3).unwrap();
    id(
        vec![(2, div(&Value::int(8), &c)), (1, q(69, 71))],
        ratio(1, 4),
    )
}

/// `A(L/2) - 2 A(phi^m) = -pi/2`, `m = 2k+1`.
pub fn lucas_minus(k: usize) -> Identity {
    let m = 2 * k + 1;
    id(
        vec![(1, half_of(lucas(m))), (-2, phi_power(m))],
        ratio(-1, 2),
    )
}

/// `A(L/2) + 2 A(1/phi^m) = pi/2`, `m = 2k+1`.
pub fn lucas_plus(k: usize) -> Identity {
    let m = 2 * k + 1;
    id(vec![(1, half_of(lucas(m))), (2, inv_phi(m))], ratio(1, 2))
}

/// `A(L/2) - A((L - 2)/(L + 2)) = pi/4`, `m = 2k+1`.
pub fn only_lucas(k: usize) -> Identity {
    let m = 2 * k + 1;
    id(
        vec![(1, half_of(lucas(m))), (-1, lucas_ratio(m))],
        ratio(1, 4),
    )
}

/// `A(x/2) - A((x - 2)/(x + 2)) = pi/4`.
fn halves(x: &Value) -> Identity {
    let num = x.add_rational(&int(-2));
    let den = x.add_rational(&int(2));
    id(
        vec![(1, x.scale(&ratio(1, 2))), (-1, div(&num, &den))],
        ratio(1, 4),
    )
}

pub fn closing_phi() -> Identity {
    halves(&phi_power(1))
}

pub fn closing_fibonacci(m: usize) -> Identity {
    halves(&Value::Rational(Rational::from_integer(fibonacci(m))))
}

pub fn closing_sqrt2() -> Identity {
    halves(&root2())
}

/// Every display, labelled.
pub fn displays() -> Vec<(String, Identity)> {
    let mut out = vec![
        ("newton".to_string(), newton()),
        ("quarter".to_string(), quarter_pi()),
        ("euler".to_string(), euler()),
    ];
    for (i, e) in machin_examples().into_iter().enumerate() {
        out.push((format!("machin-example-{}", i + 1), e));
    }
    for (i, e) in phi_powers().into_iter().enumerate() {
        out.push((format!("phi-power-{}", i + 1), e));
    }
    out.extend((0..=10).map(|k| (format!("phi-odd-k{k}"), phi_odd(k))));
    out.extend((1..=10).map(|k| (format!("phi-even-k{k}"), phi_even(k))));
    out.push(("sqrt2".into(), sqrt2()));
    out.extend([1, 3, 5, 7].map(|k| (format!("two-power-k{k}"), power_of_two(k))));
    out.push(("sqrt29".into(), sqrt29()));
    out.extend((0..=10).map(|k| (format!("lucas-minus-k{k}"), lucas_minus(k))));
    out.extend((0..=10).map(|k| (format!("lucas-plus-k{k}"), lucas_plus(k))));
    out.extend((0..=10).map(|k| (format!("only-lucas-k{k}"), only_lucas(k))));
    out.push(("closing-phi".into(), closing_phi()));
    out.extend((1..=10).map(|m| (format!("closing-fibonacci-m{m}"), closing_fibonacci(m))));
    out.push(("closing-sqrt2".into(), closing_sqrt2()));
    out
}
