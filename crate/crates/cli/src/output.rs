//! CSV and manifest writers.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

/// Shortest representation that parses back to the same `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

/// Column-oriented CSV table built in memory and written in one go.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    header: Vec<String>,
    body: String,
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        Self {
            header,
            body: String::new(),
        }
    }

    pub fn push_row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut first = true;
        for cell in cells {
            if !first {
                self.body.push(',');
            }
            first = false;
            self.body.push_str(cell.as_ref());
        }
        self.body.push('\n');
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.header.join(","));
        out.push_str(&self.body);
        out
    }

    pub fn write(&self, dir: &Path, name: &str) -> CliResult<PathBuf> {
        let path = dir.join(name);
        std::fs::write(&path, self.to_csv()).map_err(|e| CliError::io(format!("writing {}", path.display()), e))?;
        Ok(path)
    }
}

pub fn ensure_dir(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(format!("creating {}", dir.display()), e))
}

pub fn write_json<T: Serialize>(dir: &Path, name: &str, value: &T) -> CliResult<PathBuf> {
    let path = dir.join(name);
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(&path, text).map_err(|e| CliError::io(format!("writing {}", path.display()), e))?;
    Ok(path)
}
