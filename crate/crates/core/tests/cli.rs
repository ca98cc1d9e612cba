use std::io::Write;
use std::process::Command;

use arctan_forge::cli::run;
use arctan_forge::gallery::displays;
use arctan_forge::text::{parse_identity, print_identity, IdentityDocument};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("arctan-forge").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn temp_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn gen_prints_the_worked_example() {
    let (code, out, _) = call(&["gen", "--n", "7", "--x", "3"]);
    assert_eq!(code, 0);
    assert!(
        out.starts_with("7*atan(1/3) - atan(278/29) = 1/4*pi"),
        "{out}"
    );
    assert!(out.contains("family=machin"));
}

#[test]
fn gen_range_skips_units() {
    let (code, out, _) = call(&["gen", "--n-range", "1..3", "--x-range", "-2..4"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3 * 4);
}

#[test]
fn gallery_verifies_both_ways() {
    let (_, doc, _) = call(&["gallery"]);
    let file = temp_file(&doc);
    let path = file.path().to_str().unwrap();
    let (code, out, _) = call(&["verify", "--exact", "--file", path]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().all(|l| l.starts_with("OK")));
    let (code, _, _) = call(&["verify", "--numeric", "--digits", "40", "--file", path]);
    assert_eq!(code, 0);
}

#[test]
fn wrong_identity_fails_verification() {
    let file = temp_file("atan(1/2) + atan(1/3) = 1/4*pi\n2*atan(1/2) + atan(1/3) = 1/4*pi\n");
    let path = file.path().to_str().unwrap();
    let (code, out, _) = call(&["verify", "--file", path]);
    assert_eq!(code, 1);
    assert!(out.lines().nth(1).unwrap().starts_with("FAIL"));
    assert!(out.contains("atan(3)"));
    let (code, out, _) = call(&["verify", "--numeric", "--file", path, "--json"]);
    assert_eq!(code, 1);
    let rows: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(rows[0]["status"], "holds");
    assert_eq!(rows[1]["status"], "fails");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&["gen", "--n", "7", "--x", "3", "--bogus"]).0, 2);
    assert_eq!(call(&["gen", "--n", "7", "--x", "1"]).0, 2);
    assert_eq!(call(&["verify", "--file", "/nonexistent/ids.txt"]).0, 2);
    assert_eq!(call(&["golden", "--family", "silver", "--k", "1"]).0, 2);
    let bad = temp_file("atan(1/2) + = 1/4*pi\n");
    let (code, _, err) = call(&["verify", "--file", bad.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 1"), "{err}");
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn digits_command() {
    let (code, out, _) = call(&["digits", "--n", "2", "--x", "7", "--digits", "100"]);
    assert_eq!(code, 0);
    let digits = out.lines().nth(1).unwrap();
    assert_eq!(digits.len(), 102);
    assert!(digits.starts_with("3.14159265358979323846264338327950288419716939937510"));
}

#[test]
fn other_families() {
    let (code, out, _) = call(&["quad", "--h", "4", "--k", "-1", "--alpha", "2,1,5"]);
    assert_eq!(code, 0);
    assert!(
        out.starts_with("2*atan(surd(-2,1,5)) + atan(1/3) = 1/4*pi"),
        "{out}"
    );
    let (_, out, _) = call(&["golden", "--family", "lucas-plus", "--k", "1"]);
    assert!(
        out.starts_with("atan(2) + 2*atan(surd(-2,1,5)) = 1/2*pi"),
        "{out}"
    );
    let (_, out, _) = call(&["half", "--x", "1/2"]);
    assert_eq!(out.lines().count(), 2);
    assert!(
        out.starts_with("2*atan(surd(-1/2,1/2,5)) + atan(1/2) = 1/2*pi"),
        "{out}"
    );
    let (_, out, _) = call(&["diff", "--f", "-3"]);
    assert!(out.starts_with("-atan(3) - 1*atan(2) = -3/4*pi"), "{out}");
    let (_, out, _) = call(&["rootpoly", "--n", "2", "--x", "2"]);
    assert!(out.contains("root: surd(-1/2,1/2,5)"), "{out}");
}

#[test]
fn measure_reports_every_line() {
    let file = temp_file("5*atan(1/7) + 2*atan(3/79) = 1/4*pi\natan(1) = 1/4*pi\n");
    let (code, out, _) = call(&["measure", "--file", file.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("1.887269"), "{out}");
    assert!(out.lines().nth(1).unwrap().starts_with("inf"));
    let surd = temp_file("2*atan(surd(-2,1,5)) + atan(1/3) = 1/4*pi\n");
    assert_eq!(
        call(&["measure", "--file", surd.path().to_str().unwrap()]).0,
        2
    );
}

#[test]
fn json_and_text_encode_the_same_identities() {
    for args in [
        &["gen", "--n-range", "1..4", "--x-range", "2..6"][..],
        &["gallery"][..],
        &["half", "--x", "3/4"][..],
        &["golden", "--family", "even", "--k", "3"][..],
    ] {
        let (_, text, _) = call(args);
        let mut with_json = args.to_vec();
        with_json.push("--json");
        let (_, json, _) = call(&with_json);
        let from_text = IdentityDocument::parse(&text).unwrap();
        let from_json = IdentityDocument::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(from_text, from_json, "{args:?}");
    }
}

/// Alternative spellings of a canonical line that must print back to it.
fn respell(canonical: &str) -> Vec<String> {
    let spaced = canonical
        .replace('(', " ( ")
        .replace(')', " ) ")
        .replace('*', " * ");
    let squeezed = canonical.replace(' ', "");
    let mut out = vec![spaced, squeezed];
    if let Some(rest) = canonical.strip_prefix("-atan(") {
        if !rest.starts_with("surd") {
            out.push(format!("atan(-{rest}"));
        }
    }
    if !canonical.contains(" - atan(surd") {
        out.push(canonical.replace(" - atan(", " + atan(-"));
    }
    out.push(canonical.replace(" + atan(", " + 1*atan("));
    out
}

#[test]
fn canonical_print_is_idempotent_on_corpus() {
    let corpus: Vec<String> = displays()
        .into_iter()
        .map(|(_, id)| print_identity(&id))
        .take(50)
        .collect();
    assert_eq!(corpus.len(), 50);
    for line in &corpus {
        let id = parse_identity(line).unwrap();
        assert_eq!(&print_identity(&id), line);
        for variant in respell(line) {
            let again = parse_identity(&variant).unwrap_or_else(|e| panic!("{variant}: {e}"));
            assert_eq!(&print_identity(&again), line, "{variant}");
        }
    }
}

#[test]
fn binary_honours_guard_variable() {
    let file = temp_file("5*atan(1/7) + 2*atan(3/79) = 1/4*pi\n");
    let run = |guard: &str| {
        Command::new(env!("CARGO_BIN_EXE_arctan-forge"))
            .args(["verify", "--numeric", "--digits", "30", "--json", "--file"])
            .arg(file.path())
            .env("ARCTAN_FORGE_GUARD", guard)
            .output()
            .unwrap()
    };
    let ok = run("5");
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(run("banana").status.code(), Some(2));
}
