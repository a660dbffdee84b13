use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

/// Output format for reports and tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Fully resolved run configuration: defaults, then config file, then
/// flags, each layer overriding the previous. Round-trips through JSON
/// unchanged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub ring_spec: String,
    pub d: usize,
    pub t_label: String,
    pub tol: f64,
    pub seed: u64,
    pub workers: usize,
    pub output: Option<String>,
    pub format: Format,
    pub trials: u64,
    pub family: Option<String>,
    pub cache_dir: Option<String>,
    pub use_cache: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: String::new(),
            ring_spec: String::new(),
            d: 2,
            t_label: "1".to_string(),
            tol: 1e-10,
            seed: 42,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
            output: None,
            format: Format::Json,
            trials: 200,
            family: None,
            cache_dir: None,
            use_cache: true,
        }
    }
}

/// `key=value` lines, `#` comments. Same keys as the flags.
pub fn parse_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            bail!(
                "{}:{}: expected key=value, got {line:?}",
                path.display(),
                lineno + 1
            );
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

impl RunConfig {
    /// Apply config-file values for any field the flags did not set.
    pub fn apply_file(&mut self, file: &BTreeMap<String, String>) -> Result<()> {
        for (key, value) in file {
            match key.as_str() {
                "ring" => self.ring_spec = value.clone(),
                "d" => self.d = value.parse().with_context(|| format!("bad d: {value}"))?,
                "t" => self.t_label = value.clone(),
                "tol" => self.tol = value.parse().with_context(|| format!("bad tol: {value}"))?,
                "seed" => {
                    self.seed = value
                        .parse()
                        .with_context(|| format!("bad seed: {value}"))?
                }
                "workers" => {
                    self.workers = value
                        .parse()
                        .with_context(|| format!("bad workers: {value}"))?
                }
                "output" => self.output = Some(value.clone()),
                "format" => {
                    self.format = match value.as_str() {
                        "json" => Format::Json,
                        "csv" => Format::Csv,
                        "text" => Format::Text,
                        other => bail!("unknown format {other:?}"),
                    }
                }
                "trials" => {
                    self.trials = value
                        .parse()
                        .with_context(|| format!("bad trials: {value}"))?
                }
                "family" => self.family = Some(value.clone()),
                "cache_dir" => self.cache_dir = Some(value.clone()),
                "use_cache" => {
                    self.use_cache = value
                        .parse()
                        .with_context(|| format!("bad use_cache: {value}"))?
                }
                other => bail!("unknown config key {other:?}"),
            }
        }
        Ok(())
    }
}
