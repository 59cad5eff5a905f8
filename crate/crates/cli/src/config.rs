//! Config-file merging and the provenance header written into every output.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::{invalid, Cli, CliError, Result};

/// Appends `--key=value` for every config-file entry whose flag is absent
/// from `argv`. `key = true` adds a bare flag, `key = false` nothing.
pub fn merge_config_file(argv: &[String]) -> Result<Vec<String>> {
    let mut path = None;
    for (i, a) in argv.iter().enumerate() {
        if a == "--config" {
            path = argv.get(i + 1).cloned();
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        }
    }
    let Some(path) = path else {
        return Ok(argv.to_vec());
    };
    let text = fs::read_to_string(&path).map_err(|e| CliError::Invalid(format!("{path}: {e}")))?;
    let mut out = argv.to_vec();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return invalid(format!("{path}:{}: expected `key = value`", i + 1));
        };
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        if key.is_empty() || key == "config" {
            return invalid(format!("{path}:{}: invalid key {key:?}", i + 1));
        }
        let flag = format!("--{key}");
        let given = argv.iter().any(|a| *a == flag || a.starts_with(&format!("{flag}=")));
        if given {
            continue;
        }
        match value {
            "true" => out.push(flag),
            "false" => {}
            v => out.push(format!("{flag}={v}")),
        }
    }
    Ok(out)
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// Tool version, resolved configuration and its hash, and input checksums.
#[derive(Clone, Debug)]
pub struct Provenance {
    pub config: String,
    pub config_hash: String,
    pub inputs: Vec<(PathBuf, String)>,
}

impl Provenance {
    pub fn new(cli: &Cli) -> Result<Self> {
        // The worker count is excluded: outputs do not depend on it.
        let config = format!("{:?}", cli.command);
        let config_hash = hex::encode(Sha256::digest(config.as_bytes()));
        let mut inputs = Vec::new();
        if let Some(p) = &cli.config {
            inputs.push((p.clone(), sha256_file(p)?));
        }
        Ok(Self {
            config,
            config_hash,
            inputs,
        })
    }

    pub fn add_input(&mut self, path: &Path) -> Result<()> {
        let sum = sha256_file(path)?;
        self.inputs.push((path.to_path_buf(), sum));
        Ok(())
    }

    /// Header lines without comment markers.
    pub fn lines(&self) -> Vec<String> {
        let mut v = vec![
            format!("tool zeta-moments {}", env!("CARGO_PKG_VERSION")),
            format!("config-sha256 {}", self.config_hash),
            format!("config {}", self.config),
        ];
        for (p, s) in &self.inputs {
            v.push(format!("input {} sha256={s}", p.display()));
        }
        v
    }

    pub fn comment_block(&self) -> String {
        self.lines().iter().map(|l| format!("# {l}\n")).collect()
    }
}
