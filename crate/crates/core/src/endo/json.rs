use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Field, FieldSpec};
use crate::quiver::FdAlgebra;

/// On-disk form of a structure-constant algebra: `sc[i][j]` is the dense
/// coordinate vector of `b_i · b_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FdAlgebraFile {
    pub dim: usize,
    pub field: FieldSpec,
    pub sc: Vec<Vec<Vec<String>>>,
    pub unit: Vec<String>,
    pub idempotents: Vec<Vec<String>>,
}

impl FdAlgebraFile {
    pub fn from_algebra<K: Field>(a: &FdAlgebra<K>) -> Self {
        let f = a.field();
        let fmt = |v: &[K::Elem]| v.iter().map(|c| f.format(c)).collect::<Vec<_>>();
        let d = a.dim();
        FdAlgebraFile {
            dim: d,
            field: f.spec(),
            sc: (0..d)
                .map(|i| (0..d).map(|j| fmt(&a.dense_product(i, j))).collect())
                .collect(),
            unit: fmt(a.unit()),
            idempotents: a.idempotents().iter().map(|e| fmt(e)).collect(),
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

    pub fn to_algebra<K: Field>(&self, field: K) -> Result<FdAlgebra<K>> {
        if field.spec() != self.field {
            return Err(Error::InvalidInput(format!("file is over {}, not {}", self.field, field.spec())));
        }
        let parse = |loc: String, v: &[String]| -> Result<Vec<K::Elem>> {
            v.iter()
                .map(|s| field.parse(s).map_err(|e| Error::parse(loc.clone(), e.to_string())))
                .collect()
        };
        let mut sc = Vec::with_capacity(self.dim);
        for (i, row) in self.sc.iter().enumerate() {
            let mut r = Vec::with_capacity(row.len());
            for (j, v) in row.iter().enumerate() {
                r.push(parse(format!("sc[{i}][{j}]"), v)?);
            }
            sc.push(r);
        }
        let unit = parse("unit".into(), &self.unit)?;
        let idempotents = self
            .idempotents
            .iter()
            .enumerate()
            .map(|(k, e)| parse(format!("idempotents[{k}]"), e))
            .collect::<Result<Vec<_>>>()?;
        let labels = (0..self.dim).map(|i| format!("b{i}")).collect();
        FdAlgebra::from_dense(field, labels, &sc, unit, idempotents)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rationals;
    use crate::quiver::Algebra;

    #[test]
    fn round_trip() {
        let a = Algebra::beilinson(1, Rationals).unwrap();
        let file = FdAlgebraFile::from_algebra(a.structure_constants());
        let text = file.to_json();
        let back = FdAlgebraFile::parse(&text).unwrap().to_algebra(Rationals).unwrap();
        assert_eq!(FdAlgebraFile::from_algebra(&back).to_json(), text);
        assert_eq!(back.dim(), 4);
    }
}
