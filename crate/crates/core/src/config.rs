//! TOML run configuration.
//!
//! ```toml
//! experiment = "sparse-plus-interval"
//! seed = 0
//!
//! [group]
//! kind = "cyclic"
//! n = 1009
//!
//! [set]            # optional; experiments build their own sets
//! kind = "random_symmetric"
//! size = 6
//!
//! [params]
//! c1 = 2.0
//! interval_factor = 8.0
//!
//! [output]
//! path = "out.csv"
//! format = "csv"
//! ```

use std::path::{Path, PathBuf};
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::experiments;
use crate::group::{FiniteGroup, GroupDescriptor};
use crate::report::Format;
use crate::subset::GroupSubset;

/// How the generating set is built.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetSpec {
    Explicit { elements: Vec<usize> },
    Random { size: usize },
    RandomSymmetric { size: usize },
    /// `interval` (needs `size`), `greedy_basis`, `greedy_bk` (uses `params.k`),
    /// `maximal_cube_free`.
    Named { name: String, size: Option<usize> },
}

/// Numeric parameters; each runner reads the ones it needs.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamBlock {
    pub d: Option<usize>,
    pub g: Option<u64>,
    pub delta: Option<f64>,
    pub eps: Option<f64>,
    pub k: Option<usize>,
    /// `|Λ| = round(c1·√N)`.
    pub c1: Option<f64>,
    /// `|P| = round(interval_factor·√N)`.
    pub interval_factor: Option<f64>,
    /// `|A| ≥ size_constant·N^{1/k}` for `B_k` sets.
    pub size_constant: Option<f64>,
    /// `|A| ≤ density_cap·√N` for additive bases.
    pub density_cap: Option<f64>,
    /// Explicit elements of `{1..N}` for experiments that otherwise build greedily.
    pub elements: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputBlock {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Option<String>,
    #[serde(default)]
    pub seed: u64,
    pub group: GroupDescriptor,
    pub set: Option<SetSpec>,
    #[serde(default)]
    pub params: ParamBlock,
    #[serde(default)]
    pub output: OutputBlock,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn build_group(&self) -> Result<Arc<FiniteGroup>> {
        FiniteGroup::new(self.group.clone())
    }

    /// The configured set, built with a generator seeded from `seed`.
    pub fn build_set(&self, group: &Arc<FiniteGroup>) -> Result<GroupSubset> {
        let spec = self.set.as_ref().ok_or_else(|| Error::Config("missing [set] block".into()))?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let n = group.order();
        let checked = |size: usize| {
            if size == 0 || size > n {
                Err(Error::Config(format!("set size {size} outside 1..={n}")))
            } else {
                Ok(size)
            }
        };
        match spec {
            SetSpec::Explicit { elements } => GroupSubset::from_elements(group, elements),
            SetSpec::Random { size } => Ok(GroupSubset::random(group, checked(*size)?, &mut rng)),
            SetSpec::RandomSymmetric { size } => Ok(GroupSubset::random_symmetric(group, checked(*size)?, &mut rng)),
            SetSpec::Named { name, size } => {
                let modulus = || match group.descriptor() {
                    GroupDescriptor::Cyclic { n } => Ok(*n),
                    _ => Err(Error::Config(format!("named set {name:?} needs a cyclic group"))),
                };
                let residues = |xs: Vec<usize>| GroupSubset::from_predicate(group, |x| xs.iter().any(|&a| a % n == x));
                match name.as_str() {
                    "interval" => {
                        let size = checked(size.ok_or_else(|| Error::Config("interval needs size".into()))?)?;
                        Ok(GroupSubset::from_predicate(group, |x| x < size))
                    }
                    "greedy_basis" => Ok(residues(experiments::greedy_basis(modulus()?, &mut rng))),
                    "greedy_bk" => {
                        let k = self.params.k.unwrap_or(2);
                        Ok(residues(experiments::greedy_bk(modulus()?, k, &mut rng)))
                    }
                    "maximal_cube_free" => Ok(experiments::maximal_cube_free(group, &mut rng)),
                    other => Err(Error::Config(format!("unknown named set {other:?}"))),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_config() {
        let cfg = ExperimentConfig::from_toml(
            r#"
            experiment = "bk-sets"
            seed = 7
            [group]
            kind = "cyclic"
            n = 101
            [set]
            kind = "explicit"
            elements = [1, 2, 5]
            [params]
            k = 2
            size_constant = 0.5
            [output]
            format = "json"
            "#,
        )
        .unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.group, GroupDescriptor::Cyclic { n: 101 });
        assert_eq!(cfg.output.format, Some(Format::Json));
        let g = cfg.build_group().unwrap();
        assert_eq!(cfg.build_set(&g).unwrap().elements(), vec![1, 2, 5]);
    }

    #[test]
    fn rejects_unknown_fields_and_bad_sizes() {
        assert!(matches!(ExperimentConfig::from_toml("bogus = 1\n[group]\nkind = \"cyclic\"\nn = 5"), Err(Error::Config(_))));
        let cfg = ExperimentConfig::from_toml("[group]\nkind = \"cyclic\"\nn = 5\n[set]\nkind = \"random\"\nsize = 9").unwrap();
        assert!(cfg.build_set(&cfg.build_group().unwrap()).is_err());
    }

    #[test]
    fn seeded_sets_repeat() {
        let text = "seed = 3\n[group]\nkind = \"dihedral\"\nn = 6\n[set]\nkind = \"random_symmetric\"\nsize = 4";
        let cfg = ExperimentConfig::from_toml(text).unwrap();
        let g = cfg.build_group().unwrap();
        assert_eq!(cfg.build_set(&g).unwrap(), cfg.build_set(&g).unwrap());
        assert!(cfg.build_set(&g).unwrap().is_symmetric());
    }
}
