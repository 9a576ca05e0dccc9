use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::Context;
use serde::de::DeserializeOwned;
use serde::Serialize;
use testcomp_core::elements::{read_jsonl, write_jsonl};

/// Provenance written next to every output file, keeping the output
/// itself free of timestamps.
#[derive(Debug, Serialize, serde::Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config_hash: String,
    pub seed: u64,
    pub created_unix: u64,
    pub inputs: Vec<PathBuf>,
}

pub struct Run {
    pub command: &'static str,
    pub config_hash: String,
    pub seed: u64,
    pub inputs: Vec<PathBuf>,
}

pub fn meta_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".meta.json");
    path.with_file_name(name)
}

impl Run {
    fn sidecar(&self, path: &Path) -> anyhow::Result<()> {
        let meta = Meta {
            tool: "testcomp".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: self.command.into(),
            config_hash: self.config_hash.clone(),
            seed: self.seed,
            created_unix: SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()),
            inputs: self.inputs.clone(),
        };
        write_json(&meta_path(path), &meta)
    }

    pub fn write_with(
        &self,
        path: &Path,
        f: impl FnOnce(&mut BufWriter<File>) -> anyhow::Result<()>,
    ) -> anyhow::Result<()> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        let mut w = BufWriter::new(file);
        f(&mut w)?;
        w.flush()?;
        self.sidecar(path)
    }

    pub fn write_json<T: Serialize>(&self, path: &Path, value: &T) -> anyhow::Result<()> {
        self.write_with(path, |w| {
            serde_json::to_writer_pretty(&mut *w, value)?;
            w.write_all(b"\n")?;
            Ok(())
        })
    }

    pub fn write_jsonl<T: Serialize>(&self, path: &Path, records: &[T]) -> anyhow::Result<()> {
        self.write_with(path, |w| Ok(write_jsonl(w, records)?))
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    Ok(w.flush()?)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    serde_json::from_reader(BufReader::new(file)).with_context(|| format!("parsing {}", path.display()))
}

pub fn read_records<T: DeserializeOwned>(path: &Path) -> anyhow::Result<Vec<T>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_jsonl(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))
}
