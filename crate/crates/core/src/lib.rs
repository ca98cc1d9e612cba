//! Machin-like arctangent identities for pi: exact generation and
//! verification over quadratic fields, and binary-splitting digit computation.

pub mod arith;
pub mod cli;
pub mod engine;
pub mod error;
pub mod gallery;
pub mod generator;
pub mod numeric;
pub mod odot;
pub mod sequences;
pub mod text;
pub mod verifier;

pub use arith::{ratio, surd_normalize, value_arith, value_sign, ArithOp, Rational, Surd, Value};
pub use engine::{atan_series_split, lehmer_measure, pi_digits, DigitResult};
pub use error::{Error, Result};
pub use generator::{
    diff_identity, golden_family, half_turn, machin_pair, quad_reduce, winding_correction,
    winding_correction_literal, ArctanTerm, GoldenKind, Identity,
};
pub use odot::{fold_term, odot, odot_pow, odot_pow_reciprocal, root_poly, NormalAngle};
pub use sequences::{fibonacci, lucas, phi_power, uv_closed, uv_pair, w_eval};
pub use verifier::{verify_exact, verify_numeric, Verdict};
