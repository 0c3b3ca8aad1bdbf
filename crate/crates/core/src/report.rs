//! Line-oriented structured records.
//!
//! `kv` lines look like `record:count\tparams:1,1,1\tk:4\tn:5\tcount:6`.
//! `tsv` lines carry values only, preceded by a `#kind\tkey…` header the
//! first time each kind appears. Integers are exact; reals print as
//! `mid±radius`.

use std::collections::HashSet;
use std::fmt::{self, Display};
use std::io::{self, Write};
use std::str::FromStr;

use crate::ball::Ball;
use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Kv,
    Tsv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "kv" => Ok(Format::Kv),
            "tsv" => Ok(Format::Tsv),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?} (expected kv or tsv)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub kind: String,
    pub fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(kind: impl Into<String>) -> Self {
        Record {
            kind: kind.into(),
            fields: Vec::new(),
        }
    }

    pub fn field(mut self, key: &str, value: impl Display) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn real(self, key: &str, value: Ball) -> Self {
        self.field(key, format_ball(value))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Kv => {
                let mut out = format!("record:{}", self.kind);
                for (k, v) in &self.fields {
                    out.push('\t');
                    out.push_str(k);
                    out.push(':');
                    out.push_str(v);
                }
                out
            }
            Format::Tsv => {
                let mut out = self.kind.clone();
                for (_, v) in &self.fields {
                    out.push('\t');
                    out.push_str(v);
                }
                out
            }
        }
    }

    fn header(&self) -> String {
        let mut out = format!("#{}", self.kind);
        for (k, _) in &self.fields {
            out.push('\t');
            out.push_str(k);
        }
        out
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Format::Kv))
    }
}

pub fn format_ball(b: Ball) -> String {
    format!("{}±{:.3e}", b.mid(), b.rad())
}

/// Writes records in order, emitting `tsv` headers once per kind.
pub struct RecordWriter<W: Write> {
    out: W,
    format: Format,
    seen: HashSet<String>,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(out: W, format: Format) -> Self {
        RecordWriter {
            out,
            format,
            seen: HashSet::new(),
        }
    }

    pub fn write(&mut self, record: &Record) -> io::Result<()> {
        if self.format == Format::Tsv && self.seen.insert(record.kind.clone()) {
            writeln!(self.out, "{}", record.header())?;
        }
        writeln!(self.out, "{}", record.render(self.format))
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}
