//! Coefficient files and tables.
//!
//! Structured output is indented JSON in which every float is written with
//! 17 significant digits, so values survive a write/read cycle bit for bit.
//! Tables are comma-separated with a header row.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

/// Pretty JSON with `{:.16e}` floats.
struct ExactFloats<'a>(PrettyFormatter<'a>);

impl Formatter for ExactFloats<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, ExactFloats(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> serde_json::Result<T> {
    serde_json::from_str(text)
}

#[derive(Debug)]
pub enum IoError {
    Io { path: String, source: io::Error },
    Parse { path: String, source: serde_json::Error },
    Csv(csv::Error),
}

impl std::fmt::Display for IoError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IoError::Io { path, source } => write!(f, "{path}: {source}"),
            IoError::Parse { path, source } => write!(f, "{path}: {source}"),
            IoError::Csv(e) => write!(f, "table output: {e}"),
        }
    }
}

impl std::error::Error for IoError {}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, IoError> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| IoError::Io {
        path: name.clone(),
        source,
    })?;
    from_json(&text).map_err(|source| IoError::Parse { path: name, source })
}

/// Writes `text` to `path`, or to stdout when `path` is `None`.
pub fn write_text(path: Option<&Path>, text: &str) -> Result<(), IoError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| IoError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| IoError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

/// Comma-separated table with a header row; floats use 17 significant digits.
pub fn to_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String, IoError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(IoError::Csv)?;
    for row in rows {
        w.write_record(row).map_err(IoError::Csv)?;
    }
    let bytes = w.into_inner().map_err(|e| IoError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv fields are UTF-8"))
}

pub fn fmt_f64(value: f64) -> String {
    format!("{value:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{RealRecurrence, VerblunskySeq};

    #[test]
    fn floats_roundtrip_exactly() {
        let values = vec![0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0];
        let text = to_json(&values).unwrap();
        let back: Vec<f64> = from_json(&text).unwrap();
        assert_eq!(back, values);
        assert!(text.contains("3.3333333333333331e-1"));
    }

    #[test]
    fn coefficient_files() {
        let rc = RealRecurrence::chebyshev_t(3);
        let text = to_json(&rc).unwrap();
        assert_eq!(from_json::<RealRecurrence>(&text).unwrap(), rc);
        let vs: VerblunskySeq = from_json(r#"{"alpha": [0.5, [0.1, -0.2]]}"#).unwrap();
        assert_eq!(vs.alpha(1).im, -0.2);
        assert!(from_json::<VerblunskySeq>(r#"{"alpha": [1.5]}"#).is_err());
        assert!(from_json::<RealRecurrence>(r#"{"b": [0], "d": [0]}"#).is_err());
    }

    #[test]
    fn csv_header() {
        let t = to_csv(&["a", "b"], &[vec!["1".into(), fmt_f64(0.5)]]).unwrap();
        assert_eq!(t, "a,b\n1,5.0000000000000000e-1\n");
    }
}
