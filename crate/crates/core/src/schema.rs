//! JSON descriptions of companions and patterns.
//!
//! Integers may be JSON numbers or decimal strings. Companions:
//!
//! ```text
//! {"name": "K", "genus": 1, "is_lspace": true, "is_neg_lspace": false,
//!  "is_fibered": true, "is_unknot": false}
//! {"torus_knot": [2, 3]}
//! {"cable": {"companion": <companion>, "p": 2, "q": 3}}
//! "trefoil" | "T(2,5)"
//! ```
//!
//! Patterns:
//!
//! ```text
//! {"torus_pattern": [2, 3]}
//! {"one_bridge_braid": {"w": 5, "b": 2, "t": 3, "overrides": {"-1": <companion>}, "neg_threshold": 4}}
//! {"braid": {"strands": 3, "word": [1, -2], "overrides": {...}, "neg_threshold": 2}}
//! {"table": {"winding": 2, "genus_s3": 1, "has_disk": true,
//!            "twists": {"0": <companion>}, "neg_threshold": 2, "pos_from": -1}}
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::knot_models::{cable_facts, torus_knot, KnotError, KnotFacts};
use crate::patterns::{
    braid_pattern, one_bridge_braid, table_pattern, torus_pattern, BraidWord, PatternError,
    PatternFacts, TableFamily,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("expected {expected} at {path}")]
    Shape { path: String, expected: String },
    #[error("unknown companion shortcut {0:?}")]
    UnknownShortcut(String),
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

fn shape(path: &str, expected: &str) -> SchemaError {
    SchemaError::Shape {
        path: path.to_string(),
        expected: expected.to_string(),
    }
}

fn int(v: &Value, path: &str) -> Result<BigInt, SchemaError> {
    match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string().parse().expect("integer")),
        Value::String(s) => s.trim().parse().map_err(|_| shape(path, "an integer")),
        _ => Err(shape(path, "an integer")),
    }
}

fn small(v: &Value, path: &str) -> Result<i64, SchemaError> {
    int(v, path)?
        .to_i64()
        .ok_or_else(|| shape(path, "a machine-sized integer"))
}

fn boolean(v: &Value, path: &str) -> Result<bool, SchemaError> {
    v.as_bool().ok_or_else(|| shape(path, "a boolean"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, SchemaError> {
    obj.get(key)
        .ok_or_else(|| shape(&format!("{path}.{key}"), "a value"))
}

fn opt_int(obj: &Map<String, Value>, key: &str, path: &str) -> Result<Option<BigInt>, SchemaError> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(v) => int(v, &format!("{path}.{key}")).map(Some),
    }
}

fn pair(v: &Value, path: &str) -> Result<(BigInt, BigInt), SchemaError> {
    match v.as_array().map(Vec::as_slice) {
        Some([a, b]) => Ok((
            int(a, &format!("{path}[0]"))?,
            int(b, &format!("{path}[1]"))?,
        )),
        _ => Err(shape(path, "a two-element array")),
    }
}

fn single_key<'a>(v: &'a Value, path: &str) -> Result<(&'a str, &'a Value), SchemaError> {
    match v.as_object() {
        Some(obj) if obj.len() == 1 => {
            let (k, v) = obj.iter().next().expect("one entry");
            Ok((k.as_str(), v))
        }
        _ => Err(shape(path, "an object with a single key")),
    }
}

/// Parses a JSON string or a bare shortcut such as `trefoil`.
pub fn parse_companion_str(text: &str) -> Result<KnotFacts, SchemaError> {
    match serde_json::from_str::<Value>(text) {
        Ok(v) => parse_companion(&v),
        Err(_) => shortcut(text.trim()),
    }
}

pub fn parse_pattern_str(text: &str) -> Result<PatternFacts, SchemaError> {
    let v: Value = serde_json::from_str(text).map_err(|e| SchemaError::Json(e.to_string()))?;
    parse_pattern(&v)
}

/// Only `trefoil`, `unknot` and `T(p,q)` are recognized.
fn shortcut(name: &str) -> Result<KnotFacts, SchemaError> {
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "trefoil" => return Ok(torus_knot(2, 3)?.renamed("trefoil")),
        "unknot" => return Ok(torus_knot(2, 1)?.renamed("unknot")),
        _ => {}
    }
    let inner = lower
        .strip_prefix("t(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| SchemaError::UnknownShortcut(name.to_string()))?;
    let (p, m) = inner
        .split_once(',')
        .ok_or_else(|| SchemaError::UnknownShortcut(name.to_string()))?;
    let parse = |s: &str| -> Result<BigInt, SchemaError> {
        s.trim()
            .parse()
            .map_err(|_| SchemaError::UnknownShortcut(name.to_string()))
    };
    Ok(torus_knot(parse(p)?, parse(m)?)?)
}

pub fn parse_companion(v: &Value) -> Result<KnotFacts, SchemaError> {
    parse_companion_at(v, "companion")
}

fn parse_companion_at(v: &Value, path: &str) -> Result<KnotFacts, SchemaError> {
    if let Value::String(s) = v {
        return shortcut(s);
    }
    let obj = v
        .as_object()
        .ok_or_else(|| shape(path, "a companion object"))?;
    if let Some(tk) = obj.get("torus_knot") {
        let (p, m) = pair(tk, &format!("{path}.torus_knot"))?;
        return Ok(torus_knot(p, m)?);
    }
    if let Some(c) = obj.get("cable") {
        let cpath = format!("{path}.cable");
        let c = c.as_object().ok_or_else(|| shape(&cpath, "an object"))?;
        let inner = parse_companion_at(
            field(c, "companion", &cpath)?,
            &format!("{cpath}.companion"),
        )?;
        let p = int(field(c, "p", &cpath)?, &format!("{cpath}.p"))?;
        let q = int(field(c, "q", &cpath)?, &format!("{cpath}.q"))?;
        return Ok(cable_facts(&inner, &p, &q)?);
    }
    let name = field(obj, "name", path)?
        .as_str()
        .ok_or_else(|| shape(&format!("{path}.name"), "a string"))?;
    let flag = |k: &str| boolean(field(obj, k, path)?, &format!("{path}.{k}"));
    Ok(KnotFacts::asserted(
        name,
        int(field(obj, "genus", path)?, &format!("{path}.genus"))?,
        flag("is_lspace")?,
        flag("is_neg_lspace")?,
        flag("is_fibered")?,
        flag("is_unknot")?,
    )?)
}

fn parse_twist_map(
    v: Option<&Value>,
    path: &str,
) -> Result<BTreeMap<BigInt, KnotFacts>, SchemaError> {
    let Some(v) = v else {
        return Ok(BTreeMap::new());
    };
    let obj = v
        .as_object()
        .ok_or_else(|| shape(path, "an object keyed by twist"))?;
    obj.iter()
        .map(|(k, f)| {
            let n: BigInt = k.trim().parse().map_err(|_| shape(path, "integer keys"))?;
            Ok((n, parse_companion_at(f, &format!("{path}.{k}"))?))
        })
        .collect()
}

pub fn parse_pattern(v: &Value) -> Result<PatternFacts, SchemaError> {
    let (kind, body) = single_key(v, "pattern")?;
    let path = format!("pattern.{kind}");
    match kind {
        "torus_pattern" => {
            let (p, q) = pair(body, &path)?;
            Ok(torus_pattern(p, q)?)
        }
        "one_bridge_braid" => {
            let obj = body.as_object().ok_or_else(|| shape(&path, "an object"))?;
            let w = small(field(obj, "w", &path)?, &format!("{path}.w"))?;
            let w = usize::try_from(w)
                .map_err(|_| shape(&format!("{path}.w"), "a positive integer"))?;
            Ok(one_bridge_braid(
                w,
                small(field(obj, "b", &path)?, &format!("{path}.b"))?,
                small(field(obj, "t", &path)?, &format!("{path}.t"))?,
                parse_twist_map(obj.get("overrides"), &format!("{path}.overrides"))?,
                opt_int(obj, "neg_threshold", &path)?,
            )?)
        }
        "braid" => {
            let obj = body.as_object().ok_or_else(|| shape(&path, "an object"))?;
            let strands = small(field(obj, "strands", &path)?, &format!("{path}.strands"))?;
            let strands = usize::try_from(strands)
                .map_err(|_| shape(&format!("{path}.strands"), "a positive integer"))?;
            let wpath = format!("{path}.word");
            let letters = field(obj, "word", &path)?
                .as_array()
                .ok_or_else(|| shape(&wpath, "an array of signed generator indices"))?
                .iter()
                .map(|l| small(l, &wpath))
                .collect::<Result<Vec<_>, _>>()?;
            let name = obj
                .get("name")
                .and_then(Value::as_str)
                .unwrap_or("braid")
                .to_string();
            Ok(braid_pattern(
                name,
                BraidWord::from_signed(strands, &letters)?,
                parse_twist_map(obj.get("overrides"), &format!("{path}.overrides"))?,
                opt_int(obj, "neg_threshold", &path)?,
            )?)
        }
        "table" => {
            let obj = body.as_object().ok_or_else(|| shape(&path, "an object"))?;
            let table = TableFamily::new(
                parse_twist_map(obj.get("twists"), &format!("{path}.twists"))?,
                opt_int(obj, "neg_threshold", &path)?,
                opt_int(obj, "pos_from", &path)?,
            )?;
            let name = obj
                .get("name")
                .and_then(Value::as_str)
                .unwrap_or("table")
                .to_string();
            Ok(table_pattern(
                name,
                int(field(obj, "winding", &path)?, &format!("{path}.winding"))?,
                int(field(obj, "genus_s3", &path)?, &format!("{path}.genus_s3"))?,
                boolean(field(obj, "has_disk", &path)?, &format!("{path}.has_disk"))?,
                table,
            )?)
        }
        other => Err(shape(
            "pattern",
            &format!("a known pattern kind, not {other:?}"),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::pattern_twisted_facts;

    #[test]
    fn companions() {
        let t = parse_companion_str(r#"{"torus_knot":[2,3]}"#).unwrap();
        assert_eq!(t.genus(), &BigInt::from(1));
        assert_eq!(parse_companion_str("trefoil").unwrap().genus(), t.genus());
        assert_eq!(
            parse_companion_str("T(3,5)").unwrap().genus(),
            &BigInt::from(4)
        );
        assert_eq!(
            parse_companion_str(r#""T(2,5)""#).unwrap().genus(),
            &BigInt::from(2)
        );
        let c = parse_companion_str(r#"{"cable":{"companion":"trefoil","p":2,"q":"7"}}"#).unwrap();
        assert_eq!(c.genus(), &BigInt::from(5));
        assert!(c.is_lspace());
        let a = parse_companion_str(
            r#"{"name":"K","genus":"2","is_lspace":true,"is_neg_lspace":false,"is_fibered":true,"is_unknot":false}"#,
        )
        .unwrap();
        assert_eq!(a.name(), "K");
        assert!(matches!(
            parse_companion_str("figure8"),
            Err(SchemaError::UnknownShortcut(_))
        ));
        assert!(matches!(
            parse_companion_str(r#"{"name":"K","genus":1}"#),
            Err(SchemaError::Shape { .. })
        ));
    }

    #[test]
    fn patterns() {
        let p = parse_pattern_str(r#"{"torus_pattern":[2,3]}"#).unwrap();
        assert_eq!(p.winding(), &BigInt::from(2));
        let p = parse_pattern_str(r#"{"one_bridge_braid":{"w":5,"b":2,"t":3}}"#).unwrap();
        assert_eq!(p.genus_s3(), &BigInt::from(5));
        let p = parse_pattern_str(
            r#"{"table":{"winding":2,"genus_s3":1,"has_disk":true,
                "twists":{"0":"trefoil"},"neg_threshold":"2","pos_from":-1}}"#,
        )
        .unwrap();
        assert!(pattern_twisted_facts(&p, &BigInt::from(5))
            .unwrap()
            .is_lspace());
        let p = parse_pattern_str(r#"{"braid":{"strands":2,"word":[1,1,1]}}"#).unwrap();
        assert_eq!(p.genus_s3(), &BigInt::from(1));
        assert!(parse_pattern_str(r#"{"torus_pattern":[2]}"#).is_err());
        assert!(parse_pattern_str(r#"{"mystery":1}"#).is_err());
        assert!(parse_pattern_str("not json").is_err());
    }
}
