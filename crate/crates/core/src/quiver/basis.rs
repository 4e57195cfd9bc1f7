use std::collections::HashMap;

use rayon::prelude::*;

use super::presentation::{Path, Presentation};
use crate::error::Result;
use crate::linalg::{Field, Matrix};

/// The degreewise quotient of the paths `source → target` of one length.
#[derive(Clone, Debug)]
pub struct Component<K: Field> {
    pub source: usize,
    pub target: usize,
    pub length: usize,
    paths: Vec<Vec<usize>>,
    position: HashMap<Vec<usize>, usize>,
    normal: Vec<usize>,
    // normal-form coordinates (over `normal`) of every path
    forms: Vec<Vec<(usize, K::Elem)>>,
    offset: usize,
}

impl<K: Field> Component<K> {
    /// All paths of this shape, lexicographically ordered.
    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// Monomial representatives of the basis, lexicographically ordered.
    pub fn normal_paths(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.normal.iter().map(|&i| &self.paths[i])
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    /// Normal form of a path, as (slot, coefficient) pairs.
    pub fn normal_form(&self, path: &[usize]) -> Option<&[(usize, K::Elem)]> {
        self.position.get(path).map(|&i| self.forms[i].as_slice())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub source: usize,
    pub target: usize,
    pub length: usize,
    /// Monomial representative (empty for a vertex idempotent).
    pub path: Vec<usize>,
}

/// A basis of `kQ/I` by normal monomials, ordered by length, source, target
/// and then lexicographically.
#[derive(Clone, Debug)]
pub struct PathBasis<K: Field> {
    components: Vec<Component<K>>,
    index: HashMap<(usize, usize, usize), usize>,
    elements: Vec<BasisElement>,
    max_length: usize,
}

/// Computes the normal-form basis of an admissible presentation.
pub fn algebra_basis<K: Field>(pres: &Presentation<K>) -> Result<PathBasis<K>> {
    pres.validate()?;
    let field = pres.field();
    let quiver = pres.quiver();
    let vc = pres.vertex_count();
    let max_length = pres.max_length();

    let mut keys = Vec::new();
    for length in 0..=max_length {
        for s in 0..vc {
            for t in 0..vc {
                keys.push((s, t, length));
            }
        }
    }

    let built: Vec<Option<Component<K>>> = keys
        .par_iter()
        .map(|&(s, t, length)| {
            let paths = if length == 0 {
                if s == t {
                    vec![Vec::new()]
                } else {
                    Vec::new()
                }
            } else {
                quiver.paths(s, t, length)
            };
            if paths.is_empty() {
                return None;
            }
            let position: HashMap<Vec<usize>, usize> =
                paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
            let np = paths.len();
            // columns in descending lex order so that pivots fall on the largest monomials
            let col = |i: usize| np - 1 - i;
            let mut rows: Vec<Vec<K::Elem>> = Vec::new();
            for rel in pres.relations() {
                let rl = match rel.length() {
                    Some(l) if l <= length => l,
                    _ => continue,
                };
                for a in 0..=length - rl {
                    let prefixes = if a == 0 {
                        if rel.source == s { vec![Vec::new()] } else { Vec::new() }
                    } else {
                        quiver.paths(s, rel.source, a)
                    };
                    let b = length - rl - a;
                    let suffixes = if b == 0 {
                        if rel.target == t { vec![Vec::new()] } else { Vec::new() }
                    } else {
                        quiver.paths(rel.target, t, b)
                    };
                    for p in &prefixes {
                        for q in &suffixes {
                            let mut row = vec![field.zero(); np];
                            for (c, term) in &rel.terms {
                                let mut w = p.clone();
                                w.extend_from_slice(&term.arrows);
                                w.extend_from_slice(q);
                                let j = col(position[&w]);
                                row[j] = field.add(&row[j], c);
                            }
                            rows.push(row);
                        }
                    }
                }
            }
            let reduced = if rows.is_empty() {
                None
            } else {
                Some(Matrix::from_rows(field, rows).expect("rectangular").rref())
            };
            let pivots: Vec<usize> = reduced.as_ref().map(|r| r.pivots.clone()).unwrap_or_default();
            let mut pivot_row = vec![None; np];
            for (r, &c) in pivots.iter().enumerate() {
                pivot_row[c] = Some(r);
            }
            let normal: Vec<usize> = (0..np).filter(|&i| pivot_row[col(i)].is_none()).collect();
            let mut slot = vec![usize::MAX; np];
            for (k, &i) in normal.iter().enumerate() {
                slot[i] = k;
            }
            let forms = (0..np)
                .map(|i| match pivot_row[col(i)] {
                    None => vec![(slot[i], field.one())],
                    Some(r) => {
                        let red = &reduced.as_ref().unwrap().reduced;
                        normal
                            .iter()
                            .enumerate()
                            .filter_map(|(k, &m)| {
                                let v = red.get(r, col(m));
                                (!field.is_zero(v)).then(|| (k, field.neg(v)))
                            })
                            .collect()
                    }
                })
                .collect();
            Some(Component {
                source: s,
                target: t,
                length,
                paths,
                position,
                normal,
                forms,
                offset: 0,
            })
        })
        .collect();

    let mut components = Vec::new();
    let mut index = HashMap::new();
    let mut elements = Vec::new();
    for mut c in built.into_iter().flatten() {
        c.offset = elements.len();
        for p in c.normal_paths() {
            elements.push(BasisElement {
                source: c.source,
                target: c.target,
                length: c.length,
                path: p.clone(),
            });
        }
        index.insert((c.source, c.target, c.length), components.len());
        components.push(c);
    }
    Ok(PathBasis {
        components,
        index,
        elements,
        max_length,
    })
}

impl<K: Field> PathBasis<K> {
    pub fn total_dim(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[BasisElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &BasisElement {
        &self.elements[i]
    }

    pub fn components(&self) -> &[Component<K>] {
        &self.components
    }

    pub fn component(&self, source: usize, target: usize, length: usize) -> Option<&Component<K>> {
        self.index.get(&(source, target, length)).map(|&i| &self.components[i])
    }

    /// Longest length at which paths can survive.
    pub fn max_length(&self) -> usize {
        self.max_length
    }

    /// Dimension of `e_s Λ e_t`, the span of normal paths from `s` to `t`.
    pub fn corner_dim(&self, source: usize, target: usize) -> usize {
        (0..=self.max_length)
            .filter_map(|l| self.component(source, target, l))
            .map(|c| c.dim())
            .sum()
    }

    /// Global indices of the basis elements starting at `v`.
    pub fn starting_at(&self, v: usize) -> Vec<usize> {
        (0..self.elements.len()).filter(|&i| self.elements[i].source == v).collect()
    }

    /// Global indices of the basis elements ending at `v`.
    pub fn ending_at(&self, v: usize) -> Vec<usize> {
        (0..self.elements.len()).filter(|&i| self.elements[i].target == v).collect()
    }

    /// Normal form of a path in global coordinates (sparse).
    pub fn reduce(&self, path: &Path) -> Vec<(usize, K::Elem)> {
        if path.len() > self.max_length {
            return Vec::new();
        }
        match self.component(path.source, path.target, path.len()) {
            None => Vec::new(),
            Some(c) => c
                .normal_form(&path.arrows)
                .map(|f| f.iter().map(|(k, v)| (c.offset + k, v.clone())).collect())
                .unwrap_or_default(),
        }
    }

    /// Global index of a normal monomial, if the path is one.
    pub fn index_of(&self, path: &Path) -> Option<usize> {
        let c = self.component(path.source, path.target, path.len())?;
        let i = *c.position.get(&path.arrows)?;
        c.normal.iter().position(|&m| m == i).map(|k| c.offset + k)
    }

    /// Loewy length: one more than the longest surviving path.
    pub fn loewy_length(&self) -> usize {
        self.elements.iter().map(|e| e.length).max().map_or(0, |l| l + 1)
    }
}
