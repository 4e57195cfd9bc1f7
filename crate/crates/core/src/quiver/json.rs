use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::presentation::{Arrow, Path, Presentation, Quiver, Relation};
use crate::error::{Error, Result};
use crate::linalg::{Field, FieldSpec};

/// On-disk form of a presentation. Coefficients are strings (`"3/4"`, `"-1"`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub vertices: usize,
    pub arrows: Vec<(usize, usize, String)>,
    pub relations: Vec<Vec<(String, Vec<usize>)>>,
    pub nilpotency_bound: Option<usize>,
}

impl AlgebraFile {
    pub fn from_presentation<K: Field>(pres: &Presentation<K>) -> Self {
        let f = pres.field();
        AlgebraFile {
            field: f.spec(),
            vertices: pres.vertex_count(),
            arrows: pres
                .quiver()
                .arrows()
                .iter()
                .map(|a| (a.source, a.target, a.label.clone()))
                .collect(),
            relations: pres
                .relations()
                .iter()
                .map(|r| {
                    r.terms
                        .iter()
                        .map(|(c, p)| (f.format(c), p.arrows.clone()))
                        .collect()
                })
                .collect(),
            nilpotency_bound: pres.nilpotency_bound(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let file: AlgebraFile = serde_json::from_str(text)?;
        file.field.validate()?;
        Ok(file)
    }

    /// Pretty JSON with a trailing newline; stable across runs.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// Rebuilds the presentation over `field`, which must match the recorded spec.
    pub fn to_presentation<K: Field>(&self, field: K) -> Result<Presentation<K>> {
        if field.spec() != self.field {
            return Err(Error::InvalidInput(format!(
                "file is over {} but {} was requested",
                self.field,
                field.spec()
            )));
        }
        let arrows = self
            .arrows
            .iter()
            .map(|(s, t, l)| Arrow {
                source: *s,
                target: *t,
                label: l.clone(),
            })
            .collect();
        let quiver = Quiver::new(self.vertices, arrows)?;
        let mut relations = Vec::with_capacity(self.relations.len());
        for (k, terms) in self.relations.iter().enumerate() {
            let mut parsed = Vec::with_capacity(terms.len());
            for (t, (c, arrows)) in terms.iter().enumerate() {
                let coeff = field
                    .parse(c)
                    .map_err(|e| Error::parse(format!("relations[{k}][{t}]"), e.to_string()))?;
                let path = Path::from_arrows(&quiver, arrows.clone())
                    .map_err(|e| Error::parse(format!("relations[{k}][{t}]"), e.to_string()))?;
                parsed.push((coeff, path));
            }
            let (source, target) = parsed
                .first()
                .map(|(_, p)| (p.source, p.target))
                .ok_or_else(|| Error::parse(format!("relations[{k}]"), "empty relation"))?;
            relations.push(Relation {
                source,
                target,
                terms: parsed,
            });
        }
        let pres = Presentation::new(field, quiver, relations, self.nilpotency_bound);
        pres.validate()?;
        Ok(pres)
    }
}

/// SHA-256 of the canonical JSON form, hex encoded.
pub fn canonical_hash<K: Field>(pres: &Presentation<K>) -> String {
    hex::encode(Sha256::digest(AlgebraFile::from_presentation(pres).to_json().as_bytes()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};
    use crate::quiver::{build_beilinson, build_exterior};

    #[test]
    fn round_trip_is_byte_stable() {
        let p = build_beilinson(2, Rationals).unwrap();
        let text = AlgebraFile::from_presentation(&p).to_json();
        let back = AlgebraFile::parse(&text).unwrap().to_presentation(Rationals).unwrap();
        assert_eq!(AlgebraFile::from_presentation(&back).to_json(), text);
        assert!(text.contains("\"kind\": \"rationals\""));
        assert!(text.contains("\"nilpotency_bound\": null"));

        let f = PrimeField::new(1_000_003).unwrap();
        let e = build_exterior(2, f).unwrap();
        let file = AlgebraFile::from_presentation(&e);
        assert_eq!(file.nilpotency_bound, Some(3));
        assert_eq!(file.relations.len(), 3);
        assert!(file.to_presentation(Rationals).is_err());
        assert!(file.to_presentation(f).is_ok());
    }

    #[test]
    fn parse_errors_carry_locations() {
        let err = AlgebraFile::parse("{\"field\": 3}").unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        let mut file = AlgebraFile::from_presentation(&build_beilinson(2, Rationals).unwrap());
        file.relations[1][0].0 = "x/0".into();
        let err = file.to_presentation(Rationals).unwrap_err();
        assert!(err.to_string().contains("relations[1][0]"), "{err}");
    }
}
