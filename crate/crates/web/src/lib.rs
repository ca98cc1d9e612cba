//! Browser bindings. Every export returns a JSON string.

use arctan_forge::text::{parse_identity, parse_value, print_identity};
use arctan_forge::{
    golden_family, lehmer_measure, machin_pair, pi_digits, ratio, verify_exact, verify_numeric,
    GoldenKind,
};
use serde_json::json;
use wasm_bindgen::prelude::*;

type Res = std::result::Result<String, String>;

fn into_js(r: Res) -> std::result::Result<String, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Table of `n A(1/x) + A(...) = (1/4 + k) pi` over `1..=max_n` and `2..=max_x`.
pub fn machin_table_json(max_n: usize, max_x: i64) -> Res {
    let mut rows = Vec::new();
    for n in 1..=max_n {
        for x in 2..=max_x {
            let id = machin_pair(n, &x.into()).map_err(err)?;
            let k = &id.rhs - ratio(1, 4);
            rows.push(json!({
                "n": n,
                "x": x,
                "k": k.to_string(),
                "identity": print_identity(&id),
                "lehmer": lehmer_measure(&id).map_err(err)?,
            }));
        }
    }
    Ok(json!(rows).to_string())
}

pub fn golden_json(family: &str, k: usize) -> Res {
    let kind: GoldenKind = family.parse().map_err(err)?;
    let id = golden_family(kind, k).map_err(err)?;
    let verdict = verify_exact(&id).map_err(err)?;
    Ok(json!({
        "identity": print_identity(&id),
        "holds": verdict.holds,
        "numeric": verify_numeric(&id, 40).numeric_residual(),
    })
    .to_string())
}

pub fn verify_json(line: &str) -> Res {
    let id = parse_identity(line).map_err(err)?;
    let exact = verify_exact(&id).map_err(err)?;
    Ok(json!({
        "identity": print_identity(&id),
        "holds": exact.holds,
        "actual": exact.actual.map(|a| a.to_string()),
    })
    .to_string())
}

pub fn pi_digits_json(n: usize, x: &str, digits: u32) -> Res {
    let x = parse_value(x).map_err(err)?;
    let id = machin_pair(n, &x).map_err(err)?;
    let r = pi_digits(&id, digits).map_err(err)?;
    Ok(json!({
        "identity": print_identity(&id),
        "digits": r.digits,
        "count": r.count,
    })
    .to_string())
}

#[wasm_bindgen(js_name = machinTable)]
pub fn machin_table(max_n: usize, max_x: i32) -> std::result::Result<String, JsValue> {
    into_js(machin_table_json(max_n, max_x as i64))
}

#[wasm_bindgen]
pub fn golden(family: &str, k: usize) -> std::result::Result<String, JsValue> {
    into_js(golden_json(family, k))
}

#[wasm_bindgen]
pub fn verify(line: &str) -> std::result::Result<String, JsValue> {
    into_js(verify_json(line))
}

#[wasm_bindgen(js_name = piDigits)]
pub fn pi_digits_js(n: usize, x: &str, digits: u32) -> std::result::Result<String, JsValue> {
    into_js(pi_digits_json(n, x, digits))
}
