use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::module::Rep;
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix};
use crate::quiver::{Algebra, AlgebraFile};

/// Which algebra a module file refers to: a hash or the full presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Hash(String),
    Inline(AlgebraFile),
}

/// On-disk form of a module; arrow matrices are keyed by label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub algebra: AlgebraRef,
    pub dims: Vec<usize>,
    pub arrows: BTreeMap<String, Vec<Vec<String>>>,
}

impl ModuleFile {
    pub fn from_rep<K: Field>(x: &Rep<K>, inline: bool) -> Self {
        let alg = x.algebra();
        let f = x.field();
        let algebra = if inline {
            AlgebraRef::Inline(AlgebraFile::from_presentation(alg.presentation()))
        } else {
            AlgebraRef::Hash(alg.hash().to_string())
        };
        let arrows = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let m = x.arrow_map(i);
                let rows = (0..m.rows())
                    .map(|r| m.row(r).iter().map(|c| f.format(c)).collect())
                    .collect();
                (a.label.clone(), rows)
            })
            .collect();
        ModuleFile {
            algebra,
            dims: x.dims().to_vec(),
            arrows,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// Rebuilds the module over `alg`, checking the algebra reference.
    pub fn to_rep<K: Field>(&self, alg: &Algebra<K>) -> Result<Rep<K>> {
        match &self.algebra {
            AlgebraRef::Hash(h) if h != alg.hash() => {
                return Err(Error::InvalidInput(format!("module refers to algebra {h}, not {}", alg.hash())))
            }
            AlgebraRef::Inline(file) if *file != AlgebraFile::from_presentation(alg.presentation()) => {
                return Err(Error::InvalidInput("module refers to a different algebra".into()))
            }
            _ => {}
        }
        let f = alg.field();
        if self.dims.len() != alg.vertex_count() {
            return Err(Error::parse("dims", format!("expected {} entries", alg.vertex_count())));
        }
        let mut maps = Vec::with_capacity(alg.arrow_count());
        for a in alg.quiver().arrows() {
            let rows = self
                .arrows
                .get(&a.label)
                .ok_or_else(|| Error::parse(format!("arrows.{}", a.label), "missing matrix"))?;
            let (r, c) = (self.dims[a.target], self.dims[a.source]);
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(Error::parse(format!("arrows.{}", a.label), format!("expected a {r}×{c} matrix")));
            }
            let mut data = Vec::with_capacity(r * c);
            for (i, row) in rows.iter().enumerate() {
                for (j, s) in row.iter().enumerate() {
                    data.push(
                        f.parse(s)
                            .map_err(|e| Error::parse(format!("arrows.{}[{i}][{j}]", a.label), e.to_string()))?,
                    );
                }
            }
            maps.push(Matrix::new(f.clone(), r, c, data)?);
        }
        if self.arrows.len() != alg.arrow_count() {
            return Err(Error::parse("arrows", "unknown arrow label"));
        }
        Rep::new(alg, self.dims.clone(), maps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rationals;
    use crate::rep::injective;

    #[test]
    fn module_round_trip() {
        let a = Algebra::beilinson(2, Rationals).unwrap();
        let x = injective(&a, 2);
        for inline in [false, true] {
            let text = ModuleFile::from_rep(&x, inline).to_json();
            let back = ModuleFile::parse(&text).unwrap().to_rep(&a).unwrap();
            assert_eq!(back, x);
        }
        let other = Algebra::beilinson(1, Rationals).unwrap();
        let text = ModuleFile::from_rep(&x, false).to_json();
        assert!(ModuleFile::parse(&text).unwrap().to_rep(&other).is_err());
    }
}
