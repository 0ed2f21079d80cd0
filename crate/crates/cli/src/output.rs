//! JSON-lines and TSV rendering of result records.

use std::collections::BTreeSet;
use std::io::{self, Write};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};
use takiff_core::linalg::Rational;

use crate::args::Format;

/// One result object. Keys are kept sorted, so output is byte-stable.
pub type Record = Map<String, Value>;

/// Integers that fit in 64 bits are numbers, larger ones decimal strings.
pub fn big(x: &BigInt) -> Value {
    if let Some(v) = x.to_i64() {
        Value::from(v)
    } else if let Some(v) = x.to_u64() {
        Value::from(v)
    } else {
        Value::from(x.to_string())
    }
}

pub fn rational(x: &Rational) -> Value {
    Value::from(x.to_string())
}

pub fn write_records(format: Format, records: &[Record], out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Json => {
            for r in records {
                serde_json::to_writer(&mut *out, r)?;
                out.write_all(b"\n")?;
            }
        }
        Format::Tsv => {
            if records.is_empty() {
                return Ok(());
            }
            let keys: BTreeSet<&String> = records.iter().flat_map(|r| r.keys()).collect();
            let header: Vec<&str> = keys.iter().map(|k| k.as_str()).collect();
            writeln!(out, "{}", header.join("\t"))?;
            for r in records {
                let cells: Vec<String> = keys.iter().map(|k| cell(r.get(*k))).collect();
                writeln!(out, "{}", cells.join("\t"))?;
            }
        }
    }
    Ok(())
}

fn cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn rec(v: Value) -> Record {
        v.as_object().unwrap().clone()
    }

    #[test]
    fn formats() {
        let rs = vec![rec(json!({"b": 1, "a": "x"})), rec(json!({"a": "y", "c": [1, 2]}))];
        let mut buf = Vec::new();
        write_records(Format::Json, &rs, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "{\"a\":\"x\",\"b\":1}\n{\"a\":\"y\",\"c\":[1,2]}\n");
        let mut buf = Vec::new();
        write_records(Format::Tsv, &rs, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "a\tb\tc\nx\t1\t\ny\t\t[1,2]\n");
    }

    #[test]
    fn big_integers() {
        assert_eq!(big(&BigInt::from(-3)), json!(-3));
        let huge = BigInt::from(u64::MAX) * 10;
        assert_eq!(big(&huge), json!("184467440737095516150"));
    }
}
