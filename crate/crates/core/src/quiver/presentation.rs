use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::linalg::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertex_count: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: Vec<Arrow>) -> Result<Self> {
        let mut labels = HashSet::new();
        for (i, a) in arrows.iter().enumerate() {
            if a.source >= vertex_count || a.target >= vertex_count {
                return Err(Error::InvalidPresentation(format!(
                    "arrow {i} ({}) has an endpoint outside 0..{vertex_count}",
                    a.label
                )));
            }
            if !labels.insert(a.label.as_str()) {
                return Err(Error::InvalidPresentation(format!(
                    "duplicate arrow label {:?}",
                    a.label
                )));
            }
        }
        Ok(Quiver {
            vertex_count,
            arrows,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&i| self.arrows[i].source == v)
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm
        let mut indeg = vec![0usize; self.vertex_count];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..self.vertex_count).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        seen == self.vertex_count
    }

    /// All paths from `source` to `target` with exactly `length` arrows, in
    /// lexicographic order of their arrow-index sequences.
    pub fn paths(&self, source: usize, target: usize, length: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(length);
        self.extend_paths(source, target, length, &mut cur, &mut out);
        out
    }

    fn extend_paths(
        &self,
        at: usize,
        target: usize,
        remaining: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            if at == target {
                out.push(cur.clone());
            }
            return;
        }
        for (i, a) in self.arrows.iter().enumerate() {
            if a.source == at {
                cur.push(i);
                self.extend_paths(a.target, target, remaining - 1, cur, out);
                cur.pop();
            }
        }
    }

    /// Whether some path of this length exists at all.
    pub fn has_paths_of_length(&self, length: usize) -> bool {
        // reachable-by-exactly-k frontier per start vertex
        let mut frontier: Vec<bool> = vec![true; self.vertex_count];
        for _ in 0..length {
            let mut next = vec![false; self.vertex_count];
            for a in &self.arrows {
                if frontier[a.source] {
                    next[a.target] = true;
                }
            }
            frontier = next;
        }
        frontier.iter().any(|&b| b)
    }
}

/// A path with explicit endpoints; `arrows` may be empty (the idempotent at `source`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    /// Validates composability; the path reads left to right.
    pub fn new(quiver: &Quiver, source: usize, arrows: Vec<usize>) -> Result<Self> {
        let mut at = source;
        for &i in &arrows {
            let a = quiver
                .arrows
                .get(i)
                .ok_or_else(|| Error::InvalidPresentation(format!("unknown arrow index {i}")))?;
            if a.source != at {
                return Err(Error::InvalidPresentation(format!(
                    "arrow {} does not start at vertex {at}",
                    a.label
                )));
            }
            at = a.target;
        }
        Ok(Path {
            source,
            target: at,
            arrows,
        })
    }

    pub fn from_arrows(quiver: &Quiver, arrows: Vec<usize>) -> Result<Self> {
        let first = *arrows
            .first()
            .ok_or_else(|| Error::InvalidPresentation("empty path without a vertex".into()))?;
        let source = quiver
            .arrows
            .get(first)
            .ok_or_else(|| Error::InvalidPresentation(format!("unknown arrow index {first}")))?
            .source;
        Self::new(quiver, source, arrows)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn label(&self, quiver: &Quiver) -> String {
        if self.arrows.is_empty() {
            format!("e{}", self.source)
        } else {
            self.arrows
                .iter()
                .map(|&i| quiver.arrow(i).label.as_str())
                .collect::<Vec<_>>()
                .join("*")
        }
    }
}

/// A linear combination of parallel paths of equal length at least two.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation<K: Field> {
    pub source: usize,
    pub target: usize,
    pub terms: Vec<(K::Elem, Path)>,
}

impl<K: Field> Relation<K> {
    pub fn length(&self) -> Option<usize> {
        self.terms.first().map(|(_, p)| p.len())
    }
}

/// A quiver with relations over a field, plus an optional bound `N` such
/// that all paths of length at least `N` vanish.
#[derive(Clone, Debug)]
pub struct Presentation<K: Field> {
    field: K,
    quiver: Quiver,
    relations: Vec<Relation<K>>,
    nilpotency_bound: Option<usize>,
}

impl<K: Field> Presentation<K> {
    /// Builds a presentation; relation shapes are checked by [`Presentation::validate`].
    pub fn new(
        field: K,
        quiver: Quiver,
        relations: Vec<Relation<K>>,
        nilpotency_bound: Option<usize>,
    ) -> Self {
        Presentation {
            field,
            quiver,
            relations,
            nilpotency_bound,
        }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation<K>] {
        &self.relations
    }

    pub fn nilpotency_bound(&self) -> Option<usize> {
        self.nilpotency_bound
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count
    }

    /// Checks admissibility: homogeneous relations of length at least two
    /// between parallel paths, and a length bound for cyclic quivers.
    pub fn validate(&self) -> Result<()> {
        for (k, r) in self.relations.iter().enumerate() {
            let len = r.length().ok_or_else(|| {
                Error::InvalidPresentation(format!("relation {k} has no terms"))
            })?;
            for (c, p) in &r.terms {
                Path::new(&self.quiver, p.source, p.arrows.clone())?;
                if p.source != r.source || p.target != r.target {
                    return Err(Error::InvalidPresentation(format!(
                        "relation {k} mixes paths {}→{} and {}→{}",
                        r.source, r.target, p.source, p.target
                    )));
                }
                if p.len() != len {
                    return Err(Error::InvalidPresentation(format!(
                        "relation {k} is not homogeneous (lengths {len} and {})",
                        p.len()
                    )));
                }
                if self.field.is_zero(c) {
                    return Err(Error::InvalidPresentation(format!(
                        "relation {k} has a zero coefficient"
                    )));
                }
            }
            if len < 2 {
                return Err(Error::InvalidPresentation(format!(
                    "relation {k} has length {len}; admissible relations have length at least 2"
                )));
            }
        }
        if !self.quiver.is_acyclic() && self.nilpotency_bound.is_none() {
            return Err(Error::InvalidPresentation(
                "the quiver has oriented cycles but no nilpotency bound".into(),
            ));
        }
        if self.nilpotency_bound == Some(0) || self.nilpotency_bound == Some(1) {
            return Err(Error::InvalidPresentation(
                "a nilpotency bound below 2 would kill arrows".into(),
            ));
        }
        Ok(())
    }

    /// Longest path length that can survive in the quotient.
    pub fn max_length(&self) -> usize {
        let by_quiver = if self.quiver.is_acyclic() {
            let mut l = 0;
            while self.quiver.has_paths_of_length(l + 1) {
                l += 1;
            }
            Some(l)
        } else {
            None
        };
        match (by_quiver, self.nilpotency_bound) {
            (Some(a), Some(b)) => a.min(b - 1),
            (Some(a), None) => a,
            (None, Some(b)) => b - 1,
            (None, None) => unreachable!("validated presentations have a bound"),
        }
    }
}

/// Global index of the arrow `x_i` at gap `v → v+1` in the Beilinson quiver of `Λ_n`.
pub fn beilinson_arrow(n: usize, gap: usize, i: usize) -> usize {
    gap * (n + 1) + i
}

/// The Beilinson algebra `Λ_n`: vertices `0..=n`, arrows `x_0..x_n` at every
/// gap and the commutativity relations `x_i x_j - x_j x_i`.
pub fn build_beilinson<K: Field>(n: usize, field: K) -> Result<Presentation<K>> {
    if n == 0 {
        return Err(Error::InvalidInput("the Beilinson algebra needs n >= 1".into()));
    }
    let mut arrows = Vec::with_capacity(n * (n + 1));
    for gap in 0..n {
        for i in 0..=n {
            arrows.push(Arrow {
                source: gap,
                target: gap + 1,
                label: format!("x{i}_{gap}"),
            });
        }
    }
    let quiver = Quiver::new(n + 1, arrows)?;
    let mut relations = Vec::new();
    for v in 0..n.saturating_sub(1) {
        for i in 0..=n {
            for j in i + 1..=n {
                let ij = vec![beilinson_arrow(n, v, i), beilinson_arrow(n, v + 1, j)];
                let ji = vec![beilinson_arrow(n, v, j), beilinson_arrow(n, v + 1, i)];
                relations.push(Relation {
                    source: v,
                    target: v + 2,
                    terms: vec![
                        (field.one(), Path::new(&quiver, v, ij)?),
                        (field.from_i64(-1), Path::new(&quiver, v, ji)?),
                    ],
                });
            }
        }
    }
    Ok(Presentation::new(field, quiver, relations, None))
}

/// The exterior algebra on `n` generators: one vertex, loops `x_1..x_n`,
/// relations `x_i^2` and `x_i x_j + x_j x_i`, nilpotency bound `n + 1`.
pub fn build_exterior<K: Field>(n: usize, field: K) -> Result<Presentation<K>> {
    if n == 0 {
        return Err(Error::InvalidInput("the exterior algebra needs n >= 1".into()));
    }
    let arrows = (1..=n)
        .map(|i| Arrow {
            source: 0,
            target: 0,
            label: format!("x{i}"),
        })
        .collect();
    let quiver = Quiver::new(1, arrows)?;
    let mut relations = Vec::new();
    for i in 0..n {
        relations.push(Relation {
            source: 0,
            target: 0,
            terms: vec![(field.one(), Path::new(&quiver, 0, vec![i, i])?)],
        });
        for j in i + 1..n {
            relations.push(Relation {
                source: 0,
                target: 0,
                terms: vec![
                    (field.one(), Path::new(&quiver, 0, vec![i, j])?),
                    (field.one(), Path::new(&quiver, 0, vec![j, i])?),
                ],
            });
        }
    }
    Ok(Presentation::new(field, quiver, relations, Some(n + 1)))
}

/// A quiver with no arrows and no relations: the semisimple algebra `k^v`.
pub fn build_semisimple<K: Field>(vertices: usize, field: K) -> Result<Presentation<K>> {
    Ok(Presentation::new(field, Quiver::new(vertices, Vec::new())?, Vec::new(), None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rationals;

    #[test]
    fn beilinson_shapes() {
        let p = build_beilinson(1, Rationals).unwrap();
        assert_eq!((p.vertex_count(), p.quiver().arrows().len(), p.relations().len()), (2, 2, 0));
        let p = build_beilinson(2, Rationals).unwrap();
        assert_eq!((p.vertex_count(), p.quiver().arrows().len(), p.relations().len()), (3, 6, 3));
        let p = build_beilinson(3, Rationals).unwrap();
        assert_eq!((p.vertex_count(), p.quiver().arrows().len(), p.relations().len()), (4, 12, 12));
        assert!(p.validate().is_ok());
        assert_eq!(p.max_length(), 3);
        assert!(build_beilinson(0, Rationals).is_err());
    }

    #[test]
    fn exterior_shapes() {
        let p = build_exterior(1, Rationals).unwrap();
        assert_eq!((p.quiver().arrows().len(), p.relations().len()), (1, 1));
        let p = build_exterior(2, Rationals).unwrap();
        assert_eq!((p.quiver().arrows().len(), p.relations().len()), (2, 3));
        assert_eq!(p.nilpotency_bound(), Some(3));
        assert!(!p.quiver().is_acyclic());
        assert!(p.validate().is_ok());
        assert!(build_exterior(0, Rationals).is_err());
    }

    #[test]
    fn rejects_bad_relations() {
        let q = Quiver::new(
            3,
            vec![
                Arrow { source: 0, target: 1, label: "a".into() },
                Arrow { source: 1, target: 2, label: "b".into() },
                Arrow { source: 0, target: 2, label: "c".into() },
            ],
        )
        .unwrap();
        let ab = Path::new(&q, 0, vec![0, 1]).unwrap();
        let c = Path::new(&q, 0, vec![2]).unwrap();
        let r = Relation::<Rationals> {
            source: 0,
            target: 2,
            terms: vec![(Rationals.one(), ab), (Rationals.from_i64(-1), c)],
        };
        let p = Presentation::new(Rationals, q.clone(), vec![r], None);
        assert!(matches!(p.validate(), Err(Error::InvalidPresentation(m)) if m.contains("homogeneous")));

        let loops = Quiver::new(1, vec![Arrow { source: 0, target: 0, label: "x".into() }]).unwrap();
        let p = Presentation::<Rationals>::new(Rationals, loops, vec![], None);
        assert!(p.validate().is_err());

        assert!(Quiver::new(2, vec![Arrow { source: 0, target: 5, label: "a".into() }]).is_err());
        assert!(Path::new(&q, 0, vec![1]).is_err());
    }
}
