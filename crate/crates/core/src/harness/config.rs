use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::homalg::DEFAULT_CUTOFF;
use crate::linalg::{Field, FieldSpec};
use crate::quiver::{build_beilinson, build_exterior, build_semisimple, Algebra, AlgebraFile, Presentation};

/// Environment variable overriding the default seed.
pub const SEED_ENV: &str = "REPDIMLAB_SEED";

/// Number of random generators drawn when none is requested.
pub const DEFAULT_SAMPLES: usize = 25;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Beilinson,
    Exterior,
    Semisimple,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "beilinson" => Ok(Family::Beilinson),
            "exterior" => Ok(Family::Exterior),
            "semisimple" => Ok(Family::Semisimple),
            _ => Err(Error::parse("--family", format!("expected beilinson, exterior or semisimple, got {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Beilinson => "beilinson",
            Family::Exterior => "exterior",
            Family::Semisimple => "semisimple",
        })
    }
}

impl Family {
    pub fn presentation<K: Field>(self, n: usize, field: K) -> Result<Presentation<K>> {
        match self {
            Family::Beilinson => build_beilinson(n, field),
            Family::Exterior => build_exterior(n, field),
            Family::Semisimple if n == 0 => Err(Error::InvalidInput("a semisimple algebra needs n ≥ 1 vertices".into())),
            Family::Semisimple => build_semisimple(n, field),
        }
    }
}

/// Recognizes a built-in family by comparing against the builders.
pub fn identify_family<K: Field>(alg: &Algebra<K>) -> Option<(Family, usize)> {
    let file = AlgebraFile::from_presentation(alg.presentation());
    let f = alg.field().clone();
    let candidates = [
        (Family::Beilinson, alg.vertex_count().saturating_sub(1)),
        (Family::Exterior, alg.arrow_count()),
        (Family::Semisimple, alg.vertex_count()),
    ];
    candidates.into_iter().find(|&(fam, n)| {
        n > 0
            && fam
                .presentation(n, f.clone())
                .map(|p| AlgebraFile::from_presentation(&p) == file)
                .unwrap_or(false)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Battery {
    Basic,
    Random,
}

impl FromStr for Battery {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "basic" => Ok(Battery::Basic),
            "random" => Ok(Battery::Random),
            _ => Err(Error::parse("--battery", format!("expected basic or random, got {s:?}"))),
        }
    }
}

/// Everything that determines the output of an experiment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub family: Option<Family>,
    pub n: Option<usize>,
    pub field: FieldSpec,
    pub cutoff: usize,
    pub seed: u64,
    pub battery: Battery,
    pub samples: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            family: None,
            n: None,
            field: FieldSpec::default_prime(),
            cutoff: DEFAULT_CUTOFF,
            seed: 0,
            battery: Battery::Basic,
            samples: DEFAULT_SAMPLES,
        }
    }
}

impl ExperimentConfig {
    pub fn beilinson(n: usize, field: FieldSpec) -> Self {
        ExperimentConfig {
            family: Some(Family::Beilinson),
            n: Some(n),
            field,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.field.validate()?;
        if self.cutoff == 0 {
            return Err(Error::InvalidInput("cutoff must be at least 1".into()));
        }
        if let (Some(Family::Beilinson), Some(n)) = (self.family, self.n) {
            if self.cutoff < n + 2 {
                return Err(Error::InvalidInput(format!(
                    "cutoff {} is too small for beilinson({n}); use at least {}",
                    self.cutoff,
                    n + 2
                )));
            }
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("serializable");
        hex::encode(Sha256::digest(json.as_bytes()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rationals;

    #[test]
    fn families_are_recognized() {
        for (fam, n) in [(Family::Beilinson, 2), (Family::Exterior, 3), (Family::Semisimple, 2)] {
            let alg = Algebra::new(fam.presentation(n, Rationals).unwrap()).unwrap();
            assert_eq!(identify_family(&alg), Some((fam, n)));
        }
    }

    #[test]
    fn cutoff_guard() {
        let mut c = ExperimentConfig::beilinson(3, FieldSpec::default_prime());
        assert!(c.validate().is_ok());
        c.cutoff = 4;
        assert!(c.validate().is_err());
        assert_eq!(c.hash().len(), 64);
    }
}
