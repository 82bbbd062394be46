//! Deterministic float rendering for the on-disk formats.
//!
//! All floating-point values in emitted CSV and JSON are formatted with 9
//! significant digits in scientific notation. Shortest-round-trip printing
//! is deliberately not used: a fixed digit count keeps golden files
//! byte-identical across platforms and toolchains.

use std::io;

use serde::Serialize;

use crate::error::Error;

/// Render a float with 9 significant digits, e.g. `3.67879441e-1`.
pub fn sig9(v: f64) -> String {
    format!("{v:.8e}")
}

/// JSON formatter that renders every float through [`sig9`].
///
/// Integers and strings use the `serde_json` defaults; output is compact.
pub struct Sig9Formatter;

impl serde_json::ser::Formatter for Sig9Formatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        debug_assert!(value.is_finite(), "non-finite float in JSON output");
        writer.write_all(sig9(value).as_bytes())
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        self.write_f64(writer, f64::from(value))
    }
}

/// Serialize a value to a JSON string with pinned float formatting.
pub fn to_json_string<T: Serialize>(value: &T) -> crate::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig9Formatter);
    value.serialize(&mut ser).map_err(|e| Error::MalformedFile {
        what: "json",
        path: "<memory>".to_string(),
        reason: e.to_string(),
    })?;
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}
