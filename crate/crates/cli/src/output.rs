use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Newick,
    Dot,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Newick => "newick",
            Format::Dot => "dot",
        }
    }
}

/// Rounds to `digits` significant digits. At 17 this is the identity on
/// doubles, so printing stays shortest-round-trip.
pub fn round(x: f64, digits: usize) -> f64 {
    if digits >= 17 || x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.max(1) - 1, x).parse().expect("formatted float")
}

pub fn number(x: f64, digits: usize) -> String {
    serde_json::to_string(&round(x, digits)).expect("finite float")
}

fn round_value(v: &mut Value, digits: usize) {
    match v {
        Value::Number(num) if num.is_f64() => {
            let x = round(num.as_f64().expect("f64"), digits);
            *v = serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null);
        }
        Value::Array(items) => items.iter_mut().for_each(|x| round_value(x, digits)),
        Value::Object(map) => map.values_mut().for_each(|x| round_value(x, digits)),
        _ => {}
    }
}

/// A JSON document with `schema_version` and `command` first.
pub fn json(command: &str, body: Value, digits: usize) -> String {
    let mut map = Map::new();
    map.insert("schema_version".into(), SCHEMA_VERSION.into());
    map.insert("command".into(), command.into());
    if let Value::Object(fields) = body {
        map.extend(fields);
    } else {
        map.insert("result".into(), body);
    }
    let mut v = Value::Object(map);
    round_value(&mut v, digits);
    let mut s = serde_json::to_string_pretty(&v).expect("serialisable");
    s.push('\n');
    s
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        let _ = writeln!(s, "{}", r.join(","));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(number(1.6449340668482264, 17), "1.6449340668482264");
        assert_eq!(number(1.6449340668482264, 6), "1.64493");
        assert_eq!(number(-1.0, 3), "-1.0");
        assert_eq!(number(1e-12, 17), "1e-12");
    }
}
