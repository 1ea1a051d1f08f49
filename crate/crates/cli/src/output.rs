//! Timestamps and append-only report files.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use chrono::{DateTime, Utc};

/// `SOURCE_DATE_EPOCH` when set, so identical runs give identical bytes;
/// otherwise the wall clock.
pub fn run_time() -> Result<DateTime<Utc>> {
    match std::env::var("SOURCE_DATE_EPOCH") {
        Ok(raw) => {
            let secs: i64 = raw
                .trim()
                .parse()
                .with_context(|| format!("SOURCE_DATE_EPOCH={raw:?} is not an integer"))?;
            DateTime::from_timestamp(secs, 0).context("SOURCE_DATE_EPOCH out of range")
        }
        Err(_) => Ok(Utc::now()),
    }
}

pub fn stamp(t: &DateTime<Utc>) -> String {
    t.format("%Y-%m-%dT%H:%M:%SZ").to_string()
}

/// Writes `contents` to `dir/{command}-{time}.{ext}`. Existing files are
/// never touched; a numeric suffix is added instead.
pub fn write_new(dir: &Path, command: &str, time: &DateTime<Utc>, ext: &str, contents: &str) -> Result<PathBuf> {
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let base = format!("{command}-{}", time.format("%Y%m%dT%H%M%SZ"));
    for k in 0.. {
        let name = if k == 0 {
            format!("{base}.{ext}")
        } else {
            format!("{base}-{k}.{ext}")
        };
        let path = dir.join(name);
        match OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(mut f) => {
                f.write_all(contents.as_bytes())
                    .with_context(|| format!("writing {}", path.display()))?;
                return Ok(path);
            }
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => continue,
            Err(e) => return Err(e).with_context(|| format!("creating {}", path.display())),
        }
    }
    unreachable!("suffixes are unbounded")
}
