//! Line-delimited JSON records.

use std::io::{BufRead, Write};

use serde::de::DeserializeOwned;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum RecordError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

pub fn write_jsonl<W: Write, T: Serialize>(mut w: W, records: &[T]) -> Result<(), RecordError> {
    for r in records {
        let line = serde_json::to_string(r).map_err(|e| RecordError::Malformed {
            line: 0,
            message: e.to_string(),
        })?;
        w.write_all(line.as_bytes())?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

/// Reads one record per non-blank line.
pub fn read_jsonl<R: BufRead, T: DeserializeOwned>(r: R) -> Result<Vec<T>, RecordError> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line).map_err(|e| RecordError::Malformed {
            line: i + 1,
            message: e.to_string(),
        })?);
    }
    Ok(out)
}
