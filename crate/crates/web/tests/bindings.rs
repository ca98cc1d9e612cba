use arctan_forge_web::{golden_json, machin_table_json, pi_digits_json, verify_json};

#[test]
fn machin_table_has_every_cell() {
    let v: serde_json::Value = serde_json::from_str(&machin_table_json(3, 5).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 12);
    assert_eq!(v[0]["k"], "0");
}

#[test]
fn golden_and_verify() {
    let v: serde_json::Value = serde_json::from_str(&golden_json("odd", 2).unwrap()).unwrap();
    assert_eq!(v["holds"], true);
    let v: serde_json::Value =
        serde_json::from_str(&verify_json("2*atan(1/2) + atan(1/3) = 1/4*pi").unwrap()).unwrap();
    assert_eq!(v["holds"], false);
    assert!(verify_json("atan(").is_err());
    assert!(golden_json("silver", 1).is_err());
}

#[test]
fn digits() {
    let v: serde_json::Value = serde_json::from_str(&pi_digits_json(2, "7", 30).unwrap()).unwrap();
    assert!(v["digits"]
        .as_str()
        .unwrap()
        .starts_with("3.14159265358979323846"));
}
