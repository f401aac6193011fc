use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use serde::Serialize;

use crate::config::RunConfig;
use crate::error::CliError;

/// Writes `bytes` to a sibling temp file, then renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let name = path
        .file_name()
        .ok_or_else(|| CliError::Usage(format!("output path {} has no file name", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp-{}", name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(CliError::io(path, e));
    }
    Ok(())
}

pub fn sidecar_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

#[derive(Debug, Serialize)]
pub struct Versions {
    pub isospec: &'static str,
    pub isospec_cli: &'static str,
}

#[derive(Debug, Serialize)]
pub struct RunMetadata<'a> {
    pub command: &'static str,
    pub inputs: &'a RunConfig,
    pub artifact: String,
    pub versions: Versions,
    pub threads: usize,
    pub wall_time_s: f64,
    pub timestamp_unix_s: u64,
    pub exit_code: i32,
}

impl<'a> RunMetadata<'a> {
    pub fn new(cfg: &'a RunConfig, artifact: &Path, wall: Duration, exit_code: i32) -> Self {
        Self {
            command: cfg.command.name(),
            inputs: cfg,
            artifact: artifact.display().to_string(),
            versions: Versions {
                isospec: isospec::VERSION,
                isospec_cli: env!("CARGO_PKG_VERSION"),
            },
            threads: rayon::current_num_threads(),
            wall_time_s: wall.as_secs_f64(),
            timestamp_unix_s: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            exit_code,
        }
    }
}

pub fn write_sidecar(output: &Path, meta: &RunMetadata<'_>) -> Result<PathBuf, CliError> {
    let path = sidecar_path(output);
    let mut bytes = serde_json::to_vec_pretty(meta).map_err(|e| CliError::Usage(e.to_string()))?;
    bytes.push(b'\n');
    write_atomic(&path, &bytes)?;
    Ok(path)
}
