use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

pub type Csv = csv::Writer<Box<dyn Write>>;

/// CSV writer on `path`, or standard output.
pub fn csv_writer(path: Option<&Path>, header: &[&str]) -> Result<Csv, String> {
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| format!("cannot create {}: {e}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(header).map_err(|e| e.to_string())?;
    Ok(w)
}

/// Shortest decimal that parses back to the same binary64.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn row(w: &mut Csv, fields: &[String]) -> Result<(), String> {
    w.write_record(fields).map_err(|e| e.to_string())
}

pub fn finish(mut w: Csv) -> Result<(), String> {
    w.flush().map_err(|e| e.to_string())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), String> {
    let file = File::create(path).map_err(|e| format!("cannot create {}: {e}", path.display()))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| e.to_string())?;
    writeln!(w).and_then(|_| w.flush()).map_err(|e| e.to_string())
}
