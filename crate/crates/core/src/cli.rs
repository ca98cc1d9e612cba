//! Command-line front end. [`run`] is the whole program minus process exit.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::json;

use crate::arith::{surd_normalize, Value};
use crate::engine::{lehmer_measure, pi_digits};
use crate::error::{Error, Result};
use crate::gallery::displays;
use crate::generator::{
    diff_identity, golden_family, half_turn, machin_pair, quad_reduce, GoldenKind, Identity,
};
use crate::odot::{odot_sqrt, root_poly};
use crate::text::{parse_value, print_identity, DocumentEntry, IdentityDocument};
use crate::verifier::{verify_exact, verify_numeric_with_guard, NumericStatus, DEFAULT_GUARD};

pub const GUARD_ENV: &str = "ARCTAN_FORGE_GUARD";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "arctan-forge",
    version,
    about = "Machin-like arctangent identities for pi"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// n A(1/x) + A((u_n - v_n)/(u_n + v_n)) = (1/4 + k) pi
    Gen {
        #[arg(long, required_unless_present = "n_range")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "x_range", allow_hyphen_values = true)]
        x: Option<String>,
        /// Inclusive range `A..B`.
        #[arg(long, conflicts_with = "n", allow_hyphen_values = true)]
        n_range: Option<String>,
        /// Inclusive integer range `A..B`; x = 0, 1, -1 are skipped.
        #[arg(long, conflicts_with = "x", allow_hyphen_values = true)]
        x_range: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Reduction through a root alpha of t^2 - h t + k.
    Quad {
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, allow_hyphen_values = true)]
        k: String,
        /// `a,b,d` meaning a + b sqrt(d).
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[command(flatten)]
        out: Output,
    },
    /// Golden-mean and Lucas families.
    Golden {
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// 2 A(-x +- sqrt(1 + x^2)) + A(x) = +-pi/2
    Half {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        out: Output,
    },
    /// A(f) - A((f - 1)/(f + 1))
    Diff {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        out: Output,
    },
    /// Polynomial whose roots are the odot n-th roots of x.
    Rootpoly {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[command(flatten)]
        out: Output,
    },
    /// Check every identity in a file.
    Verify {
        #[arg(long, conflicts_with = "numeric")]
        exact: bool,
        #[arg(long)]
        numeric: bool,
        #[arg(long, default_value_t = 50)]
        digits: u32,
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Digits of pi from rational identities.
    Digits {
        #[arg(long, conflicts_with_all = ["n", "x"])]
        file: Option<PathBuf>,
        #[arg(long, requires = "x")]
        n: Option<usize>,
        #[arg(long, requires = "n", allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, default_value_t = 100)]
        digits: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Lehmer measure of every identity in a file.
    Measure {
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Print the built-in gallery of classical and golden-mean identities.
    Gallery {
        #[command(flatten)]
        out: Output,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn guard_from_env() -> Result<u32> {
    match std::env::var(GUARD_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Degenerate(format!("{GUARD_ENV}={s:?} is not a digit count"))),
        Err(_) => Ok(DEFAULT_GUARD),
    }
}

fn parse_range(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Degenerate(format!("range {s:?} is not of the form A..B"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    Ok((a, b))
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| Error::Degenerate(format!("{s:?} is not an integer")))
}

fn parse_alpha(s: &str) -> Result<Value> {
    let parts: Vec<_> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Degenerate(format!("alpha {s:?} must be a,b,d")));
    }
    let a = parse_value(parts[0])?;
    let b = parse_value(parts[1])?;
    let (a, b) = match (a.as_rational(), b.as_rational()) {
        (Some(a), Some(b)) => (a.clone(), b.clone()),
        _ => return Err(Error::Degenerate("alpha parts must be rational".into())),
    };
    surd_normalize(a, b, parse_int(parts[2])?)
}

fn read_document(path: &PathBuf) -> Result<IdentityDocument> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Degenerate(format!("{}: {e}", path.display())))?;
    IdentityDocument::parse(&text)
}

fn emit_document(doc: &IdentityDocument, json: bool, out: &mut dyn Write) -> Result<i32> {
    if json {
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&doc.to_json()).unwrap()
        );
    } else {
        let _ = write!(out, "{}", doc.print());
    }
    Ok(EXIT_OK)
}

fn machin_entry(n: usize, x: &Value) -> Result<DocumentEntry> {
    let id = machin_pair(n, x)?;
    let k = &id.rhs - crate::arith::ratio(1, 4);
    Ok(DocumentEntry::new(id)
        .with("family", "machin")
        .with("n", n)
        .with("x", x)
        .with("k", k))
}

fn label(e: &DocumentEntry, i: usize) -> String {
    e.annotations
        .get("name")
        .cloned()
        .unwrap_or_else(|| format!("#{}", i + 1))
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Gen {
            n,
            x,
            n_range,
            x_range,
            out: o,
        } => {
            let ns: Vec<i64> = match (n, n_range) {
                (Some(n), _) => vec![n as i64],
                (None, Some(r)) => {
                    let (a, b) = parse_range(&r)?;
                    (a.max(1)..=b).collect()
                }
                (None, None) => unreachable!("clap enforces n or n-range"),
            };
            let xs: Vec<Value> = match (x, x_range) {
                (Some(x), _) => vec![parse_value(&x)?],
                (None, Some(r)) => {
                    let (a, b) = parse_range(&r)?;
                    (a..=b)
                        .filter(|x| !matches!(x, -1..=1))
                        .map(Value::int)
                        .collect()
                }
                (None, None) => unreachable!("clap enforces x or x-range"),
            };
            let mut doc = IdentityDocument::default();
            for n in &ns {
                for x in &xs {
                    doc.entries.push(machin_entry(*n as usize, x)?);
                }
            }
            emit_document(&doc, o.json, out)
        }
        Command::Quad {
            h,
            k,
            alpha,
            out: o,
        } => {
            let (h, k) = (parse_int(&h)?, parse_int(&k)?);
            let alpha = parse_alpha(&alpha)?;
            let id = quad_reduce(&h, &k, &alpha)?;
            let entry = DocumentEntry::new(id)
                .with("family", "quad")
                .with("h", &h)
                .with("kq", &k)
                .with("alpha", &alpha);
            emit_document(
                &IdentityDocument {
                    entries: vec![entry],
                },
                o.json,
                out,
            )
        }
        Command::Golden { family, k, out: o } => {
            let kind: GoldenKind = family.parse()?;
            let id = golden_family(kind, k)?;
            let m = if kind == GoldenKind::Even {
                2 * k
            } else {
                2 * k + 1
            };
            let entry = DocumentEntry::new(id)
                .with("family", kind)
                .with("k", k)
                .with("m", m);
            emit_document(
                &IdentityDocument {
                    entries: vec![entry],
                },
                o.json,
                out,
            )
        }
        Command::Half { x, out: o } => {
            let x = parse_value(&x)?;
            let (plus, minus) = half_turn(&x)?;
            let entries = [(plus, "+"), (minus, "-")]
                .into_iter()
                .map(|(id, s)| {
                    DocumentEntry::new(id)
                        .with("family", "half-turn")
                        .with("x", &x)
                        .with("branch", s)
                })
                .collect();
            emit_document(&IdentityDocument { entries }, o.json, out)
        }
        Command::Diff { f, out: o } => {
            let f = parse_value(&f)?;
            let id = diff_identity(&f)?;
            let entry = DocumentEntry::new(id).with("family", "diff").with("f", &f);
            emit_document(
                &IdentityDocument {
                    entries: vec![entry],
                },
                o.json,
                out,
            )
        }
        Command::Rootpoly { n, x, out: o } => {
            let x = parse_value(&x)?;
            let poly = root_poly(n, &x)?;
            let roots: Vec<String> = if n == 2 {
                match odot_sqrt(&x) {
                    Ok(r) => r.iter().map(|v| v.to_string()).collect(),
                    Err(_) => vec![],
                }
            } else {
                vec![]
            };
            if o.json {
                let coeffs: Vec<String> = poly.coefficients.iter().map(|c| c.to_string()).collect();
                let v =
                    json!({ "n": n, "x": x.to_string(), "coefficients": coeffs, "roots": roots });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                let _ = writeln!(out, "P(z) = {poly}");
                for r in roots {
                    let _ = writeln!(out, "root: {r}");
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            exact: _,
            numeric,
            digits,
            file,
            out: o,
        } => {
            let doc = read_document(&file)?;
            let guard = guard_from_env()?;
            let mut all = true;
            let mut rows = Vec::new();
            for (i, e) in doc.entries.iter().enumerate() {
                let text = print_identity(&e.identity);
                let (status, detail) = if numeric {
                    let v = verify_numeric_with_guard(&e.identity, digits, guard);
                    let check = v.numeric.expect("numeric verdict");
                    (check.status, check.residual)
                } else {
                    let v = verify_exact(&e.identity)?;
                    let actual = v.actual.expect("exact verdict");
                    let status = if v.holds {
                        NumericStatus::Holds
                    } else {
                        NumericStatus::Fails
                    };
                    (status, actual.to_string())
                };
                all &= status == NumericStatus::Holds;
                if o.json {
                    rows.push(json!({
                        "label": label(e, i),
                        "identity": text,
                        "status": status,
                        "holds": status == NumericStatus::Holds,
                        if numeric { "residual" } else { "actual" }: detail,
                    }));
                } else {
                    let tag = match status {
                        NumericStatus::Holds => "OK",
                        NumericStatus::Fails => "FAIL",
                        NumericStatus::Indeterminate => "INDETERMINATE",
                    };
                    let _ = writeln!(out, "{tag:<13} {text}    [{detail}]");
                }
            }
            if o.json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&rows).unwrap());
            }
            Ok(if all { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Digits {
            file,
            n,
            x,
            digits,
            out: o,
        } => {
            let ids: Vec<Identity> = match (file, n, x) {
                (Some(f), _, _) => read_document(&f)?
                    .entries
                    .into_iter()
                    .map(|e| e.identity)
                    .collect(),
                (None, Some(n), Some(x)) => vec![machin_pair(n, &parse_value(&x)?)?],
                _ => {
                    return Err(Error::Degenerate(
                        "digits needs --file or both --n and --x".into(),
                    ))
                }
            };
            let mut rows = Vec::new();
            for id in &ids {
                let r = pi_digits(id, digits)?;
                if o.json {
                    rows.push(json!({
                        "identity": print_identity(id),
                        "count": r.count,
                        "digits": r.digits,
                        "elapsed_ms": r.elapsed.as_secs_f64() * 1e3,
                        "unrounded": r.unrounded,
                    }));
                } else {
                    let _ = writeln!(out, "# {}", print_identity(id));
                    let _ = writeln!(out, "{}", r.digits);
                }
            }
            if o.json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&rows).unwrap());
            }
            Ok(EXIT_OK)
        }
        Command::Measure { file, out: o } => {
            let doc = read_document(&file)?;
            let mut rows = Vec::new();
            let mut code = EXIT_OK;
            for e in &doc.entries {
                let text = print_identity(&e.identity);
                let (value, shown) = match lehmer_measure(&e.identity) {
                    Ok(m) if m.is_finite() => (json!(m), format!("{m:.6}")),
                    Ok(_) => (json!("inf"), "inf".to_string()),
                    Err(err) => {
                        code = EXIT_USAGE;
                        (json!(null), format!("n/a ({err})"))
                    }
                };
                if o.json {
                    rows.push(json!({ "identity": text, "lehmer": value }));
                } else {
                    let _ = writeln!(out, "{shown}  {text}");
                }
            }
            if o.json {
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&rows).unwrap());
            }
            Ok(code)
        }
        Command::Gallery { out: o } => {
            let entries = displays()
                .into_iter()
                .map(|(name, id)| DocumentEntry::new(id).with("name", name))
                .collect();
            emit_document(&IdentityDocument { entries }, o.json, out)
        }
    }
}
