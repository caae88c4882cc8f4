//! Run configuration: defaults, a `key = value` file form, and overrides.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format {s:?} (json, text or csv)")),
        }
    }
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Text => "text",
            Format::Csv => "csv",
        }
    }
}

pub const ENV_CACHE_DIR: &str = "KDVRES_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Config {
    /// Degree cutoff for the resolution suites.
    pub dmax: u32,
    /// Order of the character identity.
    pub qorder: u32,
    /// Total-degree truncation of tau series.
    pub torder: u32,
    /// Order in `z⁻¹` of tau series.
    pub zorder: u32,
    pub taus: Vec<String>,
    #[serde(skip)]
    pub cache_dir: PathBuf,
    pub format: Format,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            dmax: 12,
            qorder: 60,
            torder: 8,
            zorder: 10,
            taus: ["constant", "linear", "soliton:p=1", "soliton:p=1/2"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            cache_dir: PathBuf::from(".kdvres-cache"),
            format: Format::Text,
        }
    }
}

fn positive(key: &str, value: &str) -> Result<u32, String> {
    match value.parse::<u32>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("{key} must be a positive integer, got {value:?}")),
    }
}

impl Config {
    /// Applies `key = value` lines on top of `self`; `#` starts a comment.
    pub fn apply_file(mut self, text: &str) -> Result<Config, String> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "dmax" => self.dmax = positive(key, value)?,
                "qorder" => self.qorder = positive(key, value)?,
                "torder" => self.torder = positive(key, value)?,
                "zorder" => self.zorder = positive(key, value)?,
                "tau" => {
                    self.taus = value
                        .split(';')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(String::from)
                        .collect()
                }
                "cache_dir" => self.cache_dir = PathBuf::from(value),
                "format" => self.format = value.parse()?,
                _ => return Err(format!("line {}: unknown key {key:?}", lineno + 1)),
            }
        }
        Ok(self)
    }

    /// The file form; `Config::default().apply_file(&c.to_file())` gives back `c`.
    pub fn to_file(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "dmax = {}", self.dmax);
        let _ = writeln!(s, "qorder = {}", self.qorder);
        let _ = writeln!(s, "torder = {}", self.torder);
        let _ = writeln!(s, "zorder = {}", self.zorder);
        let _ = writeln!(s, "tau = {}", self.taus.join("; "));
        let _ = writeln!(s, "cache_dir = {}", self.cache_dir.display());
        let _ = writeln!(s, "format = {}", self.format.name());
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let c = Config {
            dmax: 9,
            taus: vec!["soliton:p=1,dispersion=naive".into(), "constant".into()],
            format: Format::Csv,
            ..Config::default()
        };
        assert_eq!(Config::default().apply_file(&c.to_file()).unwrap(), c);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(Config::default().apply_file("dmax = 0").is_err());
        assert!(Config::default().apply_file("speed = 3").is_err());
        assert!(Config::default().apply_file("dmax 3").is_err());
        let c = Config::default()
            .apply_file("# comment\n\nqorder = 20 # trailing\n")
            .unwrap();
        assert_eq!(c.qorder, 20);
    }
}
