mod support;

use proptest::prelude::*;

use repdimlab::derived::{complex_parts, RepComplex};
use repdimlab::homalg::{ext_dim_from, m_resolution, min_proj_resolution, projective_dimension, PdValue};
use repdimlab::linalg::{Field, Matrix, PrimeField, Quotient, Subspace};
use repdimlab::quiver::{Algebra, AlgebraFile};
use repdimlab::rep::{decompose, hom_basis, regular, ModuleFile, Rep, RepMap};
use support::{fp, random_module, small_algebra};

const CASES: u32 = 128;

/// Rank of a list of parallel maps as vectors.
fn span_rank<K: Field>(f: &K, maps: &[RepMap<K>]) -> usize {
    let cols: Vec<Vec<K::Elem>> = maps.iter().map(|m| m.flatten()).collect();
    match cols.first() {
        Some(c) => Matrix::from_columns(f, c.len(), &cols).rank(),
        None => 0,
    }
}

/// `dim Ext^i(X, Y)` straight from the cochain complex `Hom(P_•, Y)`.
fn ext_by_cochains<K: Field>(x: &Rep<K>, y: &Rep<K>, i: usize) -> usize {
    let f = x.field();
    let res = min_proj_resolution(x, i + 2).unwrap();
    let term = |k: usize| res.terms.get(k).cloned();
    // rank of Hom(P_k, Y) → Hom(P_{k+1}, Y), g ↦ g ∘ d_{k+1}
    let coboundary_rank = |k: usize| match (term(k), res.differentials.get(k)) {
        (Some(p), Some(d)) => {
            let images: Vec<RepMap<K>> = hom_basis(&p, y).iter().map(|g| d.then(g)).collect();
            span_rank(f, &images)
        }
        _ => 0,
    };
    let cochains = term(i).map_or(0, |p| hom_basis(&p, y).len());
    let incoming = if i == 0 { 0 } else { coboundary_rank(i - 1) };
    cochains - coboundary_rank(i) - incoming
}

proptest! {
    #![proptest_config(ProptestConfig { cases: CASES, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn prime_field_axioms(a in 0u64..1_000_003, b in 0u64..1_000_003, c in 0u64..1_000_003) {
        let f = fp();
        prop_assert_eq!(f.sub(&f.add(&a, &b), &b), a);
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        if a != 0 {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        }
        prop_assert_eq!(f.parse(&f.format(&a)).unwrap(), a);
    }

    #[test]
    fn solve_finds_consistent_systems(
        (r, c, entries) in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-4i64..=4, r * c))),
        y in prop::collection::vec(-4i64..=4, 6),
    ) {
        let f = fp();
        let a = Matrix::new(f, r, c, entries.iter().map(|&e| f.from_i64(e)).collect()).unwrap();
        let y = Matrix::column_vector(&f, y[..c].iter().map(|&e| f.from_i64(e)).collect());
        let b = a.mul(&y);
        let x = a.solve(&b).unwrap().expect("b is in the column space");
        prop_assert_eq!(a.mul(&x), b);
    }

    #[test]
    fn subspace_and_quotient_dimensions(
        (n, k, entries) in (1usize..6, 1usize..5).prop_flat_map(|(n, k)| (Just(n), Just(k), prop::collection::vec(-2i64..=2, n * k))),
    ) {
        let f = fp();
        let gens = Matrix::new(f, n, k, entries.iter().map(|&e| f.from_i64(e)).collect()).unwrap();
        let sub = Subspace::span(&gens);
        prop_assert_eq!(sub.dim(), gens.rank());
        prop_assert_eq!(Quotient::new(&sub).dim(), n - sub.dim());
        for j in 0..k {
            prop_assert!(sub.contains(&gens.block(0, j, n, 1)));
        }
    }

    #[test]
    fn random_modules_round_trip_through_json(which in 0usize..3, seed in any::<u64>()) {
        let alg = small_algebra(which);
        let x = random_module(&alg, seed);
        let back = ModuleFile::parse(&ModuleFile::from_rep(&x, false).to_json()).unwrap().to_rep(&alg).unwrap();
        prop_assert_eq!(back.dims(), x.dims());
        for a in 0..alg.arrow_count() {
            prop_assert_eq!(back.arrow_map(a), x.arrow_map(a));
        }
        let file = AlgebraFile::from_presentation(alg.presentation());
        let rebuilt = Algebra::new(AlgebraFile::parse(&file.to_json()).unwrap().to_presentation(fp()).unwrap()).unwrap();
        prop_assert_eq!(rebuilt.hash(), alg.hash());
    }

    #[test]
    fn decompositions_account_for_every_dimension(which in 0usize..2, seed in any::<u64>()) {
        let alg = small_algebra(which);
        let x = random_module(&alg, seed);
        let report = decompose(&x, seed).unwrap();
        let mut total = vec![0; alg.vertex_count()];
        for (dims, mult) in report.inventory() {
            for (t, d) in total.iter_mut().zip(dims) {
                *t += d * mult;
            }
        }
        prop_assert_eq!(&total[..], x.dims());
        prop_assert!(report.to_sum.then(&report.from_sum).is_identity());
    }

    #[test]
    fn ext_agrees_with_the_cochain_complex(which in 0usize..2, s1 in any::<u64>(), s2 in any::<u64>(), i in 0usize..3) {
        let alg = small_algebra(which);
        let x = random_module(&alg, s1);
        let y = random_module(&alg, s2);
        let res = min_proj_resolution(&x, i + 2).unwrap();
        prop_assert_eq!(ext_dim_from(&res, &y, i).unwrap(), ext_by_cochains(&x, &y, i));
    }

    #[test]
    fn regular_generator_resolves_like_projectives(which in 0usize..2, seed in any::<u64>()) {
        let alg = small_algebra(which);
        let x = random_module(&alg, seed);
        let pd = projective_dimension(&x, 8).unwrap();
        let mres = m_resolution(&regular(&alg), &x, 8).unwrap();
        mres.verify().unwrap();
        prop_assert_eq!(mres.length(), Some(pd.value));
    }

    #[test]
    fn homology_of_a_module_is_the_module(which in 0usize..2, seed in any::<u64>(), degree in -2i64..3) {
        let alg = small_algebra(which);
        let x = random_module(&alg, seed);
        let c = RepComplex::concentrated(&x, degree);
        let parts = complex_parts(&c);
        for d in degree - 1..=degree + 1 {
            let h = parts.at(d).map_or(0, |p| p.homology.total_dim());
            prop_assert_eq!(h, if d == degree { x.total_dim() } else { 0 });
        }
    }
}

/// Guards against a degenerate generator: the suites must see modules of
/// every projective dimension the small algebras allow.
#[test]
fn random_modules_are_varied() {
    let mut pds = std::collections::BTreeSet::new();
    let mut sizes = std::collections::BTreeSet::new();
    for seed in 0..200u64 {
        let alg = small_algebra(1);
        let x = random_module(&alg, seed);
        sizes.insert(x.total_dim());
        pds.insert(projective_dimension(&x, 8).unwrap().to_string());
    }
    for d in 0..=2 {
        assert!(pds.contains(&d.to_string()), "no module of pd {d} among {pds:?}");
    }
    assert!(sizes.len() >= 8, "only sizes {sizes:?}");
}

#[test]
fn exterior_simple_has_unbounded_resolution() {
    let alg: Algebra<PrimeField> = small_algebra(2);
    let s: Rep<PrimeField> = repdimlab::rep::simple(&alg, 0);
    assert_eq!(projective_dimension(&s, 5).unwrap(), PdValue::at_least(5));
}
