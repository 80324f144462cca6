//! Chunked density scan with a JSON-lines checkpoint file.
//!
//! Each completed row block is appended to `<summary>.chunks.jsonl` as
//! `{"params": …, "chunk": …}` and flushed. On restart, lines recorded with
//! the same parameters are reused; a torn final line is discarded.

use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::json;

use sr1kit::scan::{scan_chunk, ChunkRecord, ScanParams, ScanSummary};
use sr1kit::Error;

use crate::{CliError, CliResult, Reply};

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    params: ScanParams,
    chunk: ChunkRecord,
}

pub fn checkpoint_path(summary: &Path) -> PathBuf {
    let mut name = summary.as_os_str().to_owned();
    name.push(".chunks.jsonl");
    PathBuf::from(name)
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::Lib(Error::InvalidArgument(format!("{}: {e}", path.display())))
}

/// Valid checkpoints for `params`, in file order, without duplicates.
fn load(path: &Path, params: &ScanParams) -> Result<Vec<ChunkRecord>, CliError> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
        Err(e) => return Err(io_error(path, e)),
    };
    let mut chunks: Vec<ChunkRecord> = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line.map_err(|e| io_error(path, e))?;
        let Ok(cp) = serde_json::from_str::<Checkpoint>(&line) else {
            continue;
        };
        if cp.params == *params && !chunks.iter().any(|c| c.a11 == cp.chunk.a11) {
            chunks.push(cp.chunk);
        }
    }
    Ok(chunks)
}

fn checkpoint_line(params: &ScanParams, chunk: &ChunkRecord) -> String {
    serde_json::to_string(&Checkpoint {
        params: *params,
        chunk: chunk.clone(),
    })
    .expect("checkpoint serializes")
}

pub fn run(params: ScanParams, summary_path: Option<&Path>, pretty: bool) -> CliResult {
    let start = Instant::now();
    let mut chunks = Vec::new();
    let mut writer = None;
    let mut resumed = 0usize;
    if let Some(summary_path) = summary_path {
        let cp_path = checkpoint_path(summary_path);
        chunks = load(&cp_path, &params)?;
        resumed = chunks.len();
        // Rewrite so that only clean, matching lines precede new appends.
        let body: String = chunks
            .iter()
            .map(|c| checkpoint_line(&params, c) + "\n")
            .collect();
        fs::write(&cp_path, body).map_err(|e| io_error(&cp_path, e))?;
        let file = OpenOptions::new()
            .append(true)
            .open(&cp_path)
            .map_err(|e| io_error(&cp_path, e))?;
        writer = Some((cp_path, file));
    }

    for a11 in -params.entry_bound..=params.entry_bound {
        if chunks.iter().any(|c| c.a11 == a11) {
            continue;
        }
        let chunk = scan_chunk(&params, a11);
        if let Some((path, file)) = writer.as_mut() {
            writeln!(file, "{}", checkpoint_line(&params, &chunk))
                .and_then(|_| file.flush())
                .map_err(|e| io_error(path, e))?;
        }
        chunks.push(chunk);
    }

    let summary = ScanSummary::from_chunks(&params, &chunks, start.elapsed());
    let value = serde_json::to_value(&summary).expect("summary serializes");
    if let Some(path) = summary_path {
        let text = serde_json::to_string_pretty(&value).expect("json") + "\n";
        fs::write(path, text).map_err(|e| io_error(path, e))?;
    }
    if pretty {
        eprintln!(
            "scanned {} blocks ({resumed} resumed) in {:.2?}",
            chunks.len(),
            summary.elapsed
        );
        let mut brief = value.clone();
        for key in ["not_clean", "exchange_not_found", "clean_not_exchange"] {
            let n = brief[key].as_array().map_or(0, Vec::len);
            brief[key] = json!(format!("{n} matrices (full list in JSON output)"));
        }
        brief["elapsed"] = json!(format!("{:.2?}", summary.elapsed));
        return Ok(Reply {
            value: brief,
            code: 0,
        });
    }
    Ok(Reply { value, code: 0 })
}
