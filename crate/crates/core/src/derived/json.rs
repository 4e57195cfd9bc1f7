use serde::{Deserialize, Serialize};

use super::complex::RepComplex;
use super::ghost::{GhostCertificate, ShortExact};
use super::tower::{TowerStep, LevelCertificate};
use super::verify::{verify_ghost, verify_level};
use crate::error::{Error, Result};
use crate::linalg::{Field, FieldKind, Matrix, PrimeField, Rationals};
use crate::quiver::{Algebra, AlgebraFile};
use crate::rep::{ModuleFile, Rep, RepMap};

/// Per-vertex matrices, rows of formatted field elements.
pub type MapData = Vec<Vec<Vec<String>>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub low: i64,
    pub terms: Vec<ModuleFile>,
    pub differentials: Vec<MapData>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepFile {
    pub input: ComplexFile,
    pub p: ComplexFile,
    pub epi: Vec<MapData>,
    pub kernel_inclusions: Vec<MapData>,
    pub syzygy: ComplexFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelCertificateFile {
    pub algebra: AlgebraFile,
    pub level: usize,
    pub target: ComplexFile,
    pub tower: Vec<StepFile>,
    pub last: ComplexFile,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionFile {
    pub left: ModuleFile,
    pub middle: ModuleFile,
    pub right: ModuleFile,
    pub inclusion: MapData,
    pub projection: MapData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GhostCertificateFile {
    pub algebra: AlgebraFile,
    pub n: usize,
    pub module: ModuleFile,
    pub witness: ModuleFile,
    pub splice: Vec<ExtensionFile>,
    pub representatives: Vec<MapData>,
    pub ext_dim: usize,
    pub class_coords: Vec<String>,
    pub verified: bool,
}

/// A serialized certificate of either kind.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateFile {
    Level(LevelCertificateFile),
    Ghost(GhostCertificateFile),
}

fn map_data<K: Field>(m: &RepMap<K>) -> MapData {
    let f = m.source().field();
    m.components()
        .iter()
        .map(|c| (0..c.rows()).map(|r| c.row(r).iter().map(|x| f.format(x)).collect()).collect())
        .collect()
}

fn complex_file<K: Field>(c: &RepComplex<K>) -> ComplexFile {
    ComplexFile {
        low: c.low(),
        terms: c.terms().iter().map(|t| ModuleFile::from_rep(t, false)).collect(),
        differentials: c.differentials().iter().map(map_data).collect(),
    }
}

impl CertificateFile {
    pub fn from_level<K: Field>(cert: &LevelCertificate<K>) -> Self {
        CertificateFile::Level(LevelCertificateFile {
            algebra: AlgebraFile::from_presentation(cert.target.algebra().presentation()),
            level: cert.level,
            target: complex_file(&cert.target),
            tower: cert
                .tower
                .iter()
                .map(|s| StepFile {
                    input: complex_file(&s.input),
                    p: complex_file(&s.p),
                    epi: s.epi.iter().map(map_data).collect(),
                    kernel_inclusions: s.kernel_inclusions.iter().map(map_data).collect(),
                    syzygy: complex_file(&s.syzygy),
                })
                .collect(),
            last: complex_file(&cert.last),
            verified: cert.verified,
        })
    }

    pub fn from_ghost<K: Field>(cert: &GhostCertificate<K>) -> Self {
        let f = cert.module.field();
        CertificateFile::Ghost(GhostCertificateFile {
            algebra: AlgebraFile::from_presentation(cert.module.algebra().presentation()),
            n: cert.n,
            module: ModuleFile::from_rep(&cert.module, false),
            witness: ModuleFile::from_rep(&cert.witness, false),
            splice: cert
                .splice
                .iter()
                .map(|s| ExtensionFile {
                    left: ModuleFile::from_rep(&s.left, false),
                    middle: ModuleFile::from_rep(&s.middle, false),
                    right: ModuleFile::from_rep(&s.right, false),
                    inclusion: map_data(&s.inclusion),
                    projection: map_data(&s.projection),
                })
                .collect(),
            representatives: cert.representatives.iter().map(map_data).collect(),
            ext_dim: cert.ext_dim,
            class_coords: cert.class_coords.iter().map(|c| f.format(c)).collect(),
            verified: cert.verified,
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn algebra(&self) -> &AlgebraFile {
        match self {
            CertificateFile::Level(c) => &c.algebra,
            CertificateFile::Ghost(c) => &c.algebra,
        }
    }
}

fn load_map<K: Field>(data: &MapData, source: &Rep<K>, target: &Rep<K>, loc: &str) -> Result<RepMap<K>> {
    let f = source.field();
    let nv = source.dims().len();
    if data.len() != nv {
        return Err(Error::parse(loc, format!("expected {nv} components")));
    }
    let mut comps = Vec::with_capacity(nv);
    for (v, rows) in data.iter().enumerate() {
        let (r, c) = (target.dim_at(v), source.dim_at(v));
        if rows.len() != r || rows.iter().any(|row| row.len() != c) {
            return Err(Error::parse(format!("{loc}[{v}]"), format!("expected a {r}×{c} matrix")));
        }
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            for s in row {
                entries.push(f.parse(s).map_err(|e| Error::parse(format!("{loc}[{v}]"), e.to_string()))?);
            }
        }
        comps.push(Matrix::new(f.clone(), r, c, entries)?);
    }
    RepMap::new(source, target, comps)
}

fn load_complex<K: Field>(alg: &Algebra<K>, file: &ComplexFile, loc: &str) -> Result<RepComplex<K>> {
    let terms = file
        .terms
        .iter()
        .map(|t| t.to_rep(alg))
        .collect::<Result<Vec<_>>>()?;
    let diffs = file
        .differentials
        .iter()
        .enumerate()
        .map(|(k, d)| {
            let (s, t) = terms
                .get(k + 1)
                .zip(terms.get(k))
                .ok_or_else(|| Error::parse(format!("{loc}.differentials"), "more differentials than terms allow"))?;
            load_map(d, s, t, &format!("{loc}.differentials[{k}]"))
        })
        .collect::<Result<Vec<_>>>()?;
    RepComplex::new(alg, file.low, terms, diffs)
}

fn load_level<K: Field>(alg: &Algebra<K>, file: &LevelCertificateFile) -> Result<LevelCertificate<K>> {
    let target = load_complex(alg, &file.target, "target")?;
    let mut tower = Vec::with_capacity(file.tower.len());
    for (j, s) in file.tower.iter().enumerate() {
        let loc = format!("tower[{j}]");
        let input = load_complex(alg, &s.input, &format!("{loc}.input"))?;
        let p = load_complex(alg, &s.p, &format!("{loc}.p"))?;
        let syzygy = load_complex(alg, &s.syzygy, &format!("{loc}.syzygy"))?;
        let degrees: Vec<i64> = input.degrees().collect();
        if s.epi.len() != degrees.len() || s.kernel_inclusions.len() != degrees.len() {
            return Err(Error::parse(loc, "one map per degree expected"));
        }
        let mut epi = Vec::new();
        let mut incs = Vec::new();
        for (k, &i) in degrees.iter().enumerate() {
            epi.push(load_map(&s.epi[k], &p.term(i), &input.term(i), &format!("{loc}.epi[{k}]"))?);
            incs.push(load_map(
                &s.kernel_inclusions[k],
                &syzygy.term(i + 1),
                &p.term(i),
                &format!("{loc}.kernel_inclusions[{k}]"),
            )?);
        }
        tower.push(TowerStep {
            input,
            p,
            epi,
            kernel_inclusions: incs,
            syzygy,
        });
    }
    Ok(LevelCertificate {
        target,
        level: file.level,
        tower,
        last: load_complex(alg, &file.last, "last")?,
        verified: false,
    })
}

fn load_ghost<K: Field>(alg: &Algebra<K>, file: &GhostCertificateFile) -> Result<GhostCertificate<K>> {
    let f = alg.field();
    let module = file.module.to_rep(alg)?;
    let witness = file.witness.to_rep(alg)?;
    let mut splice = Vec::with_capacity(file.splice.len());
    for (k, s) in file.splice.iter().enumerate() {
        let loc = format!("splice[{k}]");
        let left = s.left.to_rep(alg)?;
        let middle = s.middle.to_rep(alg)?;
        let right = s.right.to_rep(alg)?;
        splice.push(ShortExact {
            inclusion: load_map(&s.inclusion, &left, &middle, &format!("{loc}.inclusion"))?,
            projection: load_map(&s.projection, &middle, &right, &format!("{loc}.projection"))?,
            left,
            middle,
            right,
        });
    }
    let class_coords = file
        .class_coords
        .iter()
        .map(|c| f.parse(c))
        .collect::<Result<Vec<_>>>()?;
    Ok(GhostCertificate {
        module,
        n: file.n,
        witness,
        splice,
        representatives: Vec::new(),
        ext_dim: file.ext_dim,
        class_coords,
        verified: false,
    })
}

/// What a successfully replayed certificate establishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifiedClaim {
    pub kind: String,
    /// The level bound for a level certificate, `n` for a ghost certificate.
    pub value: usize,
    pub field: String,
    pub algebra_hash: String,
}

fn verify_over<K: Field>(field: K, file: &CertificateFile) -> Result<VerifiedClaim> {
    let alg = Algebra::new(file.algebra().to_presentation(field.clone())?)?;
    let (kind, value) = match file {
        CertificateFile::Level(c) => {
            verify_level(&load_level(&alg, c)?)?;
            ("level", c.level)
        }
        CertificateFile::Ghost(c) => {
            verify_ghost(&load_ghost(&alg, c)?)?;
            ("ghost", c.n)
        }
    };
    Ok(VerifiedClaim {
        kind: kind.into(),
        value,
        field: field.spec().to_string(),
        algebra_hash: alg.hash().to_string(),
    })
}

/// Replays every check of a serialized certificate from the file alone.
pub fn verify_certificate(text: &str) -> Result<VerifiedClaim> {
    let file = CertificateFile::parse(text)?;
    let spec = file.algebra().field;
    spec.validate()?;
    match spec.kind {
        FieldKind::Rationals => verify_over(Rationals, &file),
        FieldKind::PrimeField => verify_over(PrimeField::new(spec.characteristic)?, &file),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derived::{ghost_certificate, level_upper_certificate};
    use crate::rep::simple;

    #[test]
    fn certificates_round_trip_and_replay() {
        let a = Algebra::beilinson(2, PrimeField::new(1_000_003).unwrap()).unwrap();
        let s0 = simple(&a, 0);
        let level = level_upper_certificate(&RepComplex::concentrated(&s0, 0), 8).unwrap();
        let text = CertificateFile::from_level(&level).to_json();
        let claim = verify_certificate(&text).unwrap();
        assert_eq!((claim.kind.as_str(), claim.value), ("level", 3));

        let ghost = ghost_certificate(&s0, 2).unwrap();
        let text = CertificateFile::from_ghost(&ghost).to_json();
        assert_eq!(verify_certificate(&text).unwrap().value, 2);

        let tampered = text.replacen("\"n\": 2", "\"n\": 1", 1);
        assert!(verify_certificate(&tampered).is_err());
    }
}
