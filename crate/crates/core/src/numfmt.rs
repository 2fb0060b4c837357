//! Fixed number formatting for machine-readable outputs.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;

/// 17 significant digits in scientific notation; round-trips every `f64`.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Five decimals, the print precision of the reference tables.
pub fn dec5(x: f64) -> String {
    format!("{x:.5}")
}

/// Compact JSON formatter writing floats with 17 significant digits.
#[derive(Debug, Default, Clone, Copy)]
pub struct Sig17Formatter;

impl Formatter for Sig17Formatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            writer.write_all(sig17(value).as_bytes())
        } else {
            writer.write_all(b"null")
        }
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17Formatter);
    value
        .serialize(&mut ser)
        .expect("serializing plain data to memory cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for x in [0.1, 1.0 / 3.0, 1e-300, 123456.789, -2.5e10] {
            assert_eq!(sig17(x).parse::<f64>().unwrap(), x);
        }
        let json = to_json(&serde_json::json!({"a": [0.5, 1.0 / 3.0]}));
        assert_eq!(json, r#"{"a":[5.0000000000000000e-1,3.3333333333333331e-1]}"#);
        let back: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(back["a"][1].as_f64().unwrap(), 1.0 / 3.0);
    }
}
