//! JSON job files. Keys mirror the long command-line flags (kebab-case);
//! a flag given on the command line wins over the same key in the file.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::{Error, Result};

/// Layer modulus: a number, or `p` for the prime of a `(p, n, ω)` triple
/// (the smallest prime factor of the modulus otherwise).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayerArg {
    Modulus(u64),
    Prime,
}

impl FromStr for LayerArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "p" => Ok(LayerArg::Prime),
            _ => s
                .parse::<u64>()
                .ok()
                .filter(|&b| b > 0)
                .map(LayerArg::Modulus)
                .ok_or_else(|| format!("layers must be a positive integer or `p`, got {s:?}")),
        }
    }
}

impl fmt::Display for LayerArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LayerArg::Modulus(b) => write!(f, "{b}"),
            LayerArg::Prime => f.write_str("p"),
        }
    }
}

impl<'de> Deserialize<'de> for LayerArg {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(b) => format!("{b}").parse(),
            Raw::Text(s) => s.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct JobConfig {
    /// `image`, `verify` or `boundary`; must match the subcommand if set.
    pub command: Option<String>,
    /// Identity id for `verify`.
    pub id: Option<String>,
    /// Boundary kind for `boundary`.
    pub kind: Option<String>,

    pub n: Option<u64>,
    pub m: Option<u64>,
    pub p: Option<u64>,
    pub omega: Option<u64>,
    pub layers: Option<LayerArg>,
    pub out: Option<PathBuf>,
    pub width: Option<usize>,
    pub height: Option<usize>,
    pub radius: Option<usize>,
    pub overlay: Option<bool>,
    pub svg: Option<bool>,

    pub max_mn: Option<u64>,
    pub max_p: Option<u64>,
    pub max_n: Option<u64>,
    pub k: Option<u64>,
    pub l: Option<u64>,
    pub b: Option<u64>,
    pub samples: Option<usize>,
    pub bins: Option<usize>,
    pub cases: Option<usize>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub coprime_k: Option<bool>,
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Fails when the file names a different subcommand.
    pub fn expect_command(&self, name: &str) -> Result<()> {
        match &self.command {
            Some(c) if c != name => Err(Error::Config(format!("config is for `{c}`, not `{name}`"))),
            _ => Ok(()),
        }
    }
}

/// `flag` if given, else the config value.
pub fn pick<T>(flag: Option<T>, file: Option<T>) -> Option<T> {
    flag.or(file)
}
