use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use trispec::Verdict;

use crate::args::Format;

/// JSON document written by every command.
#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    pub result: &'a T,
}

pub fn json<T: Serialize>(command: &str, verdict: Option<Verdict>, result: &T) -> io::Result<String> {
    let env = Envelope {
        command,
        verdict,
        result,
    };
    let mut s = serde_json::to_string_pretty(&env).map_err(io::Error::other)?;
    s.push('\n');
    Ok(s)
}

pub fn csv<R: Serialize>(rows: &[R]) -> io::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(io::Error::other)?;
    }
    let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
    String::from_utf8(bytes).map_err(io::Error::other)
}

/// Renders `result` as JSON, or `rows` as CSV, according to `format`.
pub fn render<T: Serialize, R: Serialize>(
    format: Format,
    command: &str,
    verdict: Option<Verdict>,
    result: &T,
    rows: &[R],
) -> io::Result<String> {
    match format {
        Format::Json => json(command, verdict, result),
        Format::Csv => csv(rows),
    }
}

pub fn write(out: Option<&Path>, text: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}
