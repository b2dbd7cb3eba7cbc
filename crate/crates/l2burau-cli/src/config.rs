//! Group and map configuration files.
//!
//! A config is a TOML table naming an oracle kind with its parameters,
//! optional generator weights, and optional generator images for a map out
//! of the braid's free group:
//!
//! ```toml
//! kind = "torus-knot"
//! p = 2
//! q = 3
//! gamma = ["x2^-1 x1", "x1^-1 x2 x2"]
//! ```

use std::path::Path;

use anyhow::{anyhow, bail, Context};
use l2burau::{GammaMap, GroupOracle, Word};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupConfig {
    /// One of `free`, `free-abelian`, `braid`, `torus-knot`.
    pub kind: String,
    pub rank: Option<u32>,
    pub strands: Option<u32>,
    pub p: Option<u32>,
    pub q: Option<u32>,
    /// Generator weights; defaults depend on the kind.
    pub weights: Option<Vec<i64>>,
    /// Images of `x1 .. xn` in the oracle's alphabet, in word syntax
    /// (`"x2^-1 x1"` or `"-2 1"`).
    pub gamma: Option<Vec<String>>,
}

impl GroupConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    pub fn oracle(&self) -> anyhow::Result<GroupOracle> {
        let need = |field: &str, v: Option<u32>| {
            v.ok_or_else(|| anyhow!("kind `{}` needs the `{field}` field", self.kind))
        };
        let oracle = match self.kind.as_str() {
            "free" => GroupOracle::free(need("rank", self.rank)?)?,
            "free-abelian" => GroupOracle::free_abelian(need("rank", self.rank)?)?,
            "braid" => GroupOracle::braid(need("strands", self.strands)?)?,
            "torus-knot" => {
                GroupOracle::torus_knot(need("p", self.p)?, need("q", self.q)?)?
            }
            other => bail!(
                "unknown group kind `{other}` (expected free, free-abelian, braid, or torus-knot)"
            ),
        };
        match &self.weights {
            Some(w) => Ok(oracle.with_weights(w.clone())?),
            None => Ok(oracle),
        }
    }

    /// Builds the configured map out of the rank-`source_rank` free group.
    pub fn gamma(&self, source_rank: u32) -> anyhow::Result<GammaMap> {
        let images = self
            .gamma
            .as_ref()
            .ok_or_else(|| anyhow!("config has no `gamma` images"))?
            .iter()
            .map(|s| Word::parse(s, 'x'))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GammaMap::new(source_rank, self.oracle()?, images)?)
    }
}

/// Resolves the `--gamma` / `--group` flags: `id` and `abelianization` are
/// built in, anything else is a config file path; `--group` supplies the
/// file when `--gamma` is not one itself.
pub fn resolve_gamma(
    gamma: Option<&str>,
    group: Option<&Path>,
    strands: u32,
) -> anyhow::Result<GammaMap> {
    match gamma {
        Some("id") => Ok(GammaMap::identity(strands)?),
        Some("abelianization") => Ok(GammaMap::abelianization(strands)?),
        Some(path) => GroupConfig::load(Path::new(path))?.gamma(strands),
        None => match group {
            Some(path) => GroupConfig::load(path)?.gamma(strands),
            None => Ok(GammaMap::identity(strands)?),
        },
    }
}
