use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::linalg::Field;
use crate::quiver::Algebra;
use crate::rep::{
    cokernel, injective, map_from_projective, projective, projective_sum, radical_and_top,
    radical_power_quotient, simple, Rep,
};

/// A candidate generator, kept as a list of parts so decomposition can
/// split each part separately.
#[derive(Clone, Debug)]
pub struct GeneratorSpec<K: Field> {
    pub name: String,
    pub parts: Vec<Rep<K>>,
    /// Upper bound on the endomorphism global dimension that must hold, if any.
    pub upper_bound: Option<usize>,
}

fn projectives<K: Field>(alg: &Algebra<K>) -> Vec<Rep<K>> {
    (0..alg.vertex_count()).map(|v| projective(alg, v)).collect()
}

/// The five fixed generators: the regular module alone and with the dual,
/// the radical quotients, the simples, or the radicals of the projectives.
pub fn basic_battery<K: Field>(alg: &Algebra<K>, gl_dim: Option<usize>) -> Result<Vec<GeneratorSpec<K>>> {
    let nv = alg.vertex_count();
    let with = |extra: Vec<Rep<K>>| {
        let mut parts = projectives(alg);
        parts.extend(extra.into_iter().filter(|x| !x.is_zero()));
        parts
    };
    let mut quotients = Vec::new();
    for i in 1..=alg.loewy_length() {
        quotients.push(radical_power_quotient(alg, i)?);
    }
    Ok(vec![
        GeneratorSpec {
            name: "regular".into(),
            parts: projectives(alg),
            upper_bound: None,
        },
        GeneratorSpec {
            name: "regular+dual".into(),
            parts: with((0..nv).map(|v| injective(alg, v)).collect()),
            upper_bound: gl_dim.map(|d| 2 * d + 1),
        },
        GeneratorSpec {
            name: "regular+radical-quotients".into(),
            parts: with(quotients),
            upper_bound: None,
        },
        GeneratorSpec {
            name: "regular+simples".into(),
            parts: with((0..nv).map(|v| simple(alg, v)).collect()),
            upper_bound: None,
        },
        GeneratorSpec {
            name: "regular+radicals".into(),
            parts: with((0..nv).map(|v| radical_and_top(&projective(alg, v)).radical).collect()),
            upper_bound: None,
        },
    ])
}

/// `P / ⟨u⟩` for a sum `P` of one or two random projectives and a random
/// element `u` at a random vertex.
///
/// Coefficients of `u` are small integers, so the same seed describes the
/// same integral module over every field.
pub fn random_quotient<K: Field>(alg: &Algebra<K>, rng: &mut ChaCha8Rng) -> Rep<K> {
    let nv = alg.vertex_count();
    let f = alg.field();
    let count = rng.gen_range(1..=2);
    let vertices: Vec<usize> = (0..count).map(|_| rng.gen_range(0..nv)).collect();
    let p = projective_sum(alg, &vertices);
    let support: Vec<usize> = (0..nv).filter(|&v| p.dim_at(v) > 0).collect();
    let w = support[rng.gen_range(0..support.len())];
    let u: Vec<K::Elem> = (0..p.dim_at(w)).map(|_| f.from_i64(rng.gen_range(-3..=3))).collect();
    let g = map_from_projective(&projective(alg, w), w, &p, &u);
    cokernel(&g).0
}

/// `samples` generators of the form `Λ ⊕ Q` with `Q` a random quotient.
pub fn random_battery<K: Field>(alg: &Algebra<K>, seed: u64, samples: usize) -> Vec<GeneratorSpec<K>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|k| {
            let q = random_quotient(alg, &mut rng);
            let mut parts = projectives(alg);
            if !q.is_zero() {
                parts.push(q.clone());
            }
            GeneratorSpec {
                name: format!("random-{k}:{:?}", q.dims()),
                parts,
                upper_bound: None,
            }
        })
        .collect()
}
