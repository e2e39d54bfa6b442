//! `key=value` settings files whose entries command-line flags override.

use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

/// Environment variable consulted when no thread count is given.
pub const THREADS_ENV: &str = "PTASEP_THREADS";

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Settings {
    entries: BTreeMap<String, String>,
}

impl Settings {
    /// Parses lines `key = value`; blank lines and `#` comments are skipped.
    /// Keys are normalized so `quad_nodes` and `quad-nodes` are the same.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("config line {}: expected key=value", i + 1))
            })?;
            let key = k.trim().replace('_', "-");
            if key.is_empty() {
                return Err(Error::InvalidArgument(format!(
                    "config line {}: empty key",
                    i + 1
                )));
            }
            entries.insert(key, v.trim().to_string());
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// `flag`, else the file entry for `key`, else `None`.
    pub fn get<T>(&self, key: &str, flag: Option<T>) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        self.raw(key)
            .map(|s| {
                s.parse()
                    .map_err(|e| Error::InvalidArgument(format!("config {key} = {s:?}: {e}")))
            })
            .transpose()
    }

    /// Like [`Settings::get`] with a fallback default.
    pub fn get_or<T>(&self, key: &str, flag: Option<T>, default: T) -> Result<T>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        Ok(self.get(key, flag)?.unwrap_or(default))
    }
}

/// Thread count from the flag, else [`THREADS_ENV`], else `None`.
pub fn thread_count(flag: Option<usize>) -> Result<Option<usize>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|e| Error::InvalidArgument(format!("{THREADS_ENV}={v:?}: {e}"))),
        Err(_) => Ok(None),
    }
}

/// `start, start+step, ...` up to `stop` (inclusive within half a step).
pub fn grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !(stop >= start) || !start.is_finite() || !stop.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "bad grid {start}..{stop} step {step}"
        )));
    }
    let count = ((stop - start) / step + 0.5).floor() as usize;
    Ok((0..=count).map(|i| start + i as f64 * step).collect())
}
