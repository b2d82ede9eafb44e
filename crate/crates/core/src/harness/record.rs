use std::io::{BufRead, Read, Write};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::TheoremId;
use crate::error::{Error, Result};

/// Whether a grid point satisfies the hypotheses of the theorem it tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    InRegime,
    OutOfRegime,
}

impl Regime {
    pub fn from_flag(inside: bool) -> Self {
        if inside {
            Regime::InRegime
        } else {
            Regime::OutOfRegime
        }
    }
}

/// One output row of a sweep.
///
/// `measured` is a decimal string: exact for counts, shortest round-trip
/// form for floating magnitudes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub theorem: TheoremId,
    pub p: u64,
    #[serde(rename = "N")]
    pub len: u64,
    pub k: Option<u32>,
    pub n: Option<u32>,
    pub param_extra: String,
    pub measured: String,
    pub predicted_exponent: String,
    pub measured_exponent: Option<f64>,
    pub regime: Regime,
    pub seconds: f64,
}

pub const CSV_HEADER: &str =
    "theorem,p,N,k,n,param_extra,measured,predicted_exponent,measured_exponent,regime,seconds";

/// Output encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::config(format!("unknown format '{other}'"))),
        }
    }
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::resource(format!("output failed: {e}"))
}

fn timestamp() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

/// Streams records as they arrive. The first line carries the timestamp.
pub struct RecordWriter<W: Write> {
    format: Format,
    out: W,
    rows: usize,
    csv_header_done: bool,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(format: Format, mut out: W) -> Result<Self> {
        let ts = timestamp();
        match format {
            Format::Csv => writeln!(out, "# generated unix={ts}").map_err(io_err)?,
            Format::Json => write!(out, "{{\"generated\": {ts},\n\"records\": [").map_err(io_err)?,
        }
        Ok(RecordWriter { format, out, rows: 0, csv_header_done: false })
    }

    pub fn write(&mut self, record: &ResultRecord) -> Result<()> {
        match self.format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new()
                    .has_headers(!self.csv_header_done)
                    .from_writer(&mut self.out);
                w.serialize(record).map_err(io_err)?;
                w.flush().map_err(io_err)?;
                self.csv_header_done = true;
            }
            Format::Json => {
                let sep = if self.rows == 0 { "\n" } else { ",\n" };
                let line = serde_json::to_string(record).map_err(io_err)?;
                write!(self.out, "{sep}{line}").map_err(io_err)?;
            }
        }
        self.rows += 1;
        Ok(())
    }

    pub fn finish(mut self) -> Result<W> {
        match self.format {
            Format::Csv if !self.csv_header_done => writeln!(self.out, "{CSV_HEADER}").map_err(io_err)?,
            Format::Csv => {}
            Format::Json => writeln!(self.out, "\n]}}").map_err(io_err)?,
        }
        self.out.flush().map_err(io_err)?;
        Ok(self.out)
    }
}

pub fn write_records<W: Write>(records: &[ResultRecord], format: Format, out: W) -> Result<W> {
    let mut w = RecordWriter::new(format, out)?;
    for r in records {
        w.write(r)?;
    }
    w.finish()
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ResultRecord>> {
    let body: String = std::io::BufReader::new(input)
        .lines()
        .collect::<std::io::Result<Vec<_>>>()
        .map_err(io_err)?
        .into_iter()
        .filter(|l| !l.starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n");
    csv::Reader::from_reader(body.as_bytes())
        .deserialize()
        .collect::<std::result::Result<Vec<ResultRecord>, _>>()
        .map_err(|e| Error::config(format!("malformed CSV: {e}")))
}

pub fn read_json<R: Read>(input: R) -> Result<Vec<ResultRecord>> {
    #[derive(Deserialize)]
    struct Doc {
        records: Vec<ResultRecord>,
    }
    let doc: Doc =
        serde_json::from_reader(input).map_err(|e| Error::config(format!("malformed JSON: {e}")))?;
    Ok(doc.records)
}
