//! The line-oriented identity format and its JSON mirror.
//!
//! ```text
//! identity := term (ws sign ws term)* ws '=' ws rational '*' 'pi'
//! term     := [uint '*'] 'atan' '(' value ')'
//! value    := rational | 'surd' '(' rational ',' rational ',' uint ')'
//! rational := ['-'] uint ['/' uint]
//! ```
//!
//! A minus sign before a term without an explicit coefficient negates the
//! argument (`- atan(3)` is `atan(-3)`); with a coefficient it negates the
//! coefficient (`- 1*atan(3)`). The first term may carry a leading sign.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{surd_normalize, Rational, Value};
use crate::error::{Error, Result};
use crate::generator::{ArctanTerm, Identity};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(self.column(), msg))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn at_digit(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_digit())
    }

    fn rational(&mut self) -> Result<Rational> {
        let neg = self.eat(b'-');
        let num = self.uint()?;
        let den = if self.eat(b'/') {
            let col = self.column();
            let d = self.uint()?;
            if d.is_zero() {
                return Err(Error::parse(col, "zero denominator"));
            }
            d
        } else {
            BigInt::from(1)
        };
        let r = Rational::new(num, den);
        Ok(if neg { -r } else { r })
    }

    fn value(&mut self) -> Result<Value> {
        if self.keyword("surd") {
            self.expect(b'(')?;
            let a = self.rational()?;
            self.expect(b',')?;
            let b = self.rational()?;
            self.expect(b',')?;
            let col = self.column();
            let d = self.uint()?;
            self.expect(b')')?;
            surd_normalize(a, b, d).map_err(|e| Error::parse(col, e.to_string()))
        } else {
            Ok(Value::Rational(self.rational()?))
        }
    }

    fn term(&mut self, negative: bool) -> Result<ArctanTerm> {
        let col = self.column();
        let coeff = if self.at_digit() {
            let c = self.uint()?;
            self.expect(b'*')?;
            let c: i64 = c
                .try_into()
                .map_err(|_| Error::parse(col, "coefficient out of range"))?;
            if c == 0 {
                return Err(Error::parse(col, "zero coefficient"));
            }
            Some(c)
        } else {
            None
        };
        if !self.keyword("atan") {
            return self.err("expected 'atan'");
        }
        self.expect(b'(')?;
        let arg = self.value()?;
        self.expect(b')')?;
        Ok(match (coeff, negative) {
            (None, false) => ArctanTerm::new(1, arg),
            (None, true) => ArctanTerm::new(1, arg.neg()),
            (Some(c), false) => ArctanTerm::new(c, arg),
            (Some(c), true) => ArctanTerm::new(-c, arg),
        })
    }

    fn identity(&mut self) -> Result<Identity> {
        let mut terms = Vec::new();
        let mut negative = self.eat(b'-');
        if !negative {
            self.eat(b'+');
        }
        loop {
            terms.push(self.term(negative)?);
            match self.peek() {
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(b'=') => break,
                _ => return self.err("expected '+', '-' or '='"),
            }
            self.pos += 1;
        }
        self.expect(b'=')?;
        let rhs = self.rational()?;
        self.expect(b'*')?;
        if !self.keyword("pi") {
            return self.err("expected 'pi'");
        }
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Identity::new(terms, rhs).map_err(|e| Error::parse(1, e.to_string()))
    }
}

pub fn parse_identity(line: &str) -> Result<Identity> {
    Cursor::new(line).identity()
}

pub fn parse_value(s: &str) -> Result<Value> {
    let mut c = Cursor::new(s);
    let v = c.value()?;
    if c.peek().is_some() {
        return c.err("trailing input");
    }
    Ok(v)
}

impl FromStr for Value {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_value(s)
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_identity(s)
    }
}

/// Canonical one-line form; `parse_identity` inverts it exactly.
pub fn print_identity(id: &Identity) -> String {
    let mut out = String::new();
    for (i, t) in id.terms.iter().enumerate() {
        let (negative, coeff, arg) = match t.coeff {
            1 if t.arg.sign() < 0 => (true, None, t.arg.neg()),
            1 => (false, None, t.arg.clone()),
            c if c < 0 => (true, Some(-c), t.arg.clone()),
            c => (false, Some(c), t.arg.clone()),
        };
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if let Some(c) = coeff {
            let _ = write!(out, "{c}*");
        }
        let _ = write!(out, "atan({arg})");
    }
    let _ = write!(out, " = {}*pi", id.rhs);
    out
}

/// An identity plus free-form `key=value` annotations (family, n, x, m, k, ...).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentEntry {
    pub identity: Identity,
    pub annotations: BTreeMap<String, String>,
}

impl DocumentEntry {
    pub fn new(identity: Identity) -> Self {
        DocumentEntry {
            identity,
            annotations: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.annotations.insert(key.to_string(), value.to_string());
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdentityDocument {
    pub entries: Vec<DocumentEntry>,
}

impl IdentityDocument {
    /// One identity per line; `#` starts a comment. A comment made only of
    /// `key=value` tokens after an identity becomes its annotations.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let (body, comment) = match line.find('#') {
                Some(i) => (&line[..i], Some(&line[i + 1..])),
                None => (line, None),
            };
            if body.trim().is_empty() {
                continue;
            }
            let identity = parse_identity(body).map_err(|e| match e {
                Error::Parse { column, message } => Error::Parse {
                    column,
                    message: format!("line {}: {message}", lineno + 1),
                },
                other => other,
            })?;
            let mut entry = DocumentEntry::new(identity);
            if let Some(c) = comment {
                let pairs: Option<Vec<_>> = c
                    .split_whitespace()
                    .map(|tok| tok.split_once('='))
                    .collect();
                if let Some(pairs) = pairs {
                    for (k, v) in pairs {
                        entry.annotations.insert(k.to_string(), v.to_string());
                    }
                }
            }
            entries.push(entry);
        }
        Ok(IdentityDocument { entries })
    }

    pub fn print(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&print_identity(&e.identity));
            if !e.annotations.is_empty() {
                out.push_str("  #");
                for (k, v) in &e.annotations {
                    let _ = write!(out, " {k}={v}");
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<JsonIdentity> = self.entries.iter().map(JsonIdentity::from).collect();
        serde_json::json!({ "identities": entries })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let entries: Vec<JsonIdentity> = serde_json::from_value(v["identities"].clone())
            .map_err(|e| Error::parse(1, e.to_string()))?;
        let entries = entries
            .into_iter()
            .map(|j| j.into_entry())
            .collect::<Result<_>>()?;
        Ok(IdentityDocument { entries })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JsonTerm {
    pub coeff: i64,
    pub arg: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JsonIdentity {
    pub text: String,
    pub terms: Vec<JsonTerm>,
    pub rhs: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub annotations: BTreeMap<String, String>,
}

impl From<&DocumentEntry> for JsonIdentity {
    fn from(e: &DocumentEntry) -> Self {
        JsonIdentity {
            text: print_identity(&e.identity),
            terms: e
                .identity
                .terms
                .iter()
                .map(|t| JsonTerm {
                    coeff: t.coeff,
                    arg: t.arg.to_string(),
                })
                .collect(),
            rhs: e.identity.rhs.to_string(),
            annotations: e.annotations.clone(),
        }
    }
}

impl From<&Identity> for JsonIdentity {
    fn from(id: &Identity) -> Self {
        JsonIdentity::from(&DocumentEntry::new(id.clone()))
    }
}

impl JsonIdentity {
    pub fn into_entry(self) -> Result<DocumentEntry> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok(ArctanTerm::new(t.coeff, parse_value(&t.arg)?)))
            .collect::<Result<Vec<_>>>()?;
        let rhs = parse_value(&self.rhs)?
            .as_rational()
            .cloned()
            .ok_or_else(|| Error::parse(1, "rhs must be rational"))?;
        Ok(DocumentEntry {
            identity: Identity::new(terms, rhs)?,
            annotations: self.annotations,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};

    #[test]
    fn parse_machin_example() {
        let id = parse_identity("7*atan(1/3) + atan(-278/29) = 1/4*pi").unwrap();
        assert_eq!(
            id.terms,
            vec![
                ArctanTerm::new(7, Value::ratio(1, 3)),
                ArctanTerm::new(1, Value::ratio(-278, 29))
            ]
        );
        assert_eq!(id.rhs, ratio(1, 4));
        // the leading-minus spelling parses to the same identity
        let alt = parse_identity("7*atan(1/3) - atan(278/29) = 1/4*pi").unwrap();
        assert_eq!(alt, id);
        assert_eq!(print_identity(&id), "7*atan(1/3) - atan(278/29) = 1/4*pi");
    }

    #[test]
    fn parse_surds() {
        let id = parse_identity("atan(surd(0,1,2)) = 1/4*pi").unwrap();
        assert_eq!(id.terms[0].arg, surd_normalize(int(0), int(1), 2).unwrap());
        let id = parse_identity("2*atan(surd(-1/2,1/2,5)) + atan(1/2) = 1/2*pi").unwrap();
        assert_eq!(
            id.terms[0],
            ArctanTerm::new(2, surd_normalize(ratio(-1, 2), ratio(1, 2), 5).unwrap())
        );
        // non-squarefree radicands are normalized
        let id = parse_identity("atan(surd(0,1,8)) = 1/4*pi").unwrap();
        assert_eq!(id.terms[0].arg.to_string(), "surd(0,2,2)");
        let id = parse_identity("atan(surd(3,0,5))=0*pi").unwrap();
        assert_eq!(id.terms[0].arg, Value::int(3));
    }

    #[test]
    fn parse_errors_carry_columns() {
        let e = parse_identity("0*atan(1) = 1/4*pi").unwrap_err();
        assert_eq!(e, Error::parse(1, "zero coefficient"));
        let e = parse_identity("atan(1/3) + atn(1/2) = 1/4*pi").unwrap_err();
        assert!(matches!(e, Error::Parse { column: 13, .. }), "{e:?}");
        let e = parse_identity("atan(1/0) = 1*pi").unwrap_err();
        assert!(matches!(e, Error::Parse { column: 8, .. }), "{e:?}");
        assert!(parse_identity("atan(1) = 1/4").is_err());
        assert!(parse_identity("atan(surd(1,1,0)) = 1*pi").is_err());
        assert!(parse_identity("atan(1) = 1/4*pi extra").is_err());
    }

    #[test]
    fn negative_coefficients_print_explicitly() {
        let id = Identity::new(
            vec![
                ArctanTerm::new(1, Value::ratio(-3, 2)),
                ArctanTerm::new(-1, Value::int(5)),
                ArctanTerm::new(-2, Value::ratio(-1, 7)),
            ],
            ratio(-3, 4),
        )
        .unwrap();
        let s = print_identity(&id);
        assert_eq!(s, "-atan(3/2) - 1*atan(5) - 2*atan(-1/7) = -3/4*pi");
        assert_eq!(parse_identity(&s).unwrap(), id);
    }

    #[test]
    fn document_annotations() {
        let text = "# header\n\n7*atan(1/3) - atan(278/29) = 1/4*pi  # family=machin n=7 x=3\natan(1/2) + atan(1/3) = 1/4*pi # just a note\n";
        let doc = IdentityDocument::parse(text).unwrap();
        assert_eq!(doc.entries.len(), 2);
        assert_eq!(doc.entries[0].annotations["n"], "7");
        assert!(doc.entries[1].annotations.is_empty());
        let again = IdentityDocument::parse(&doc.print()).unwrap();
        assert_eq!(again, doc);
        let json = doc.to_json();
        assert_eq!(IdentityDocument::from_json(&json).unwrap(), doc);
    }

    #[test]
    fn document_errors_report_line() {
        let e = IdentityDocument::parse("atan(1) = 1/4*pi\natan(1 = 1/4*pi\n").unwrap_err();
        match e {
            Error::Parse { message, .. } => assert!(message.starts_with("line 2")),
            other => panic!("{other:?}"),
        }
    }
}
