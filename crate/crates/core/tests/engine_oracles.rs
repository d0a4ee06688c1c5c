//! Fat-point systems against polynomial arithmetic done independently here.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wald_core::arith::PrimeSet;
use wald_core::cache::DimCache;
use wald_core::catalog;
use wald_core::engine::{
    conditions_matrix, monomial_basis, Certainty, DimWitness, Engine, Mode, ModePolicy,
};
use wald_core::geometry::Config;
use wald_core::WaldError;

/// Sparse ternary form: exponent -> coefficient.
type Poly = BTreeMap<[u32; 3], BigInt>;

fn linear(a: i64, b: i64, c: i64) -> Poly {
    [([1, 0, 0], a), ([0, 1, 0], b), ([0, 0, 1], c)]
        .into_iter()
        .filter(|(_, v)| *v != 0)
        .map(|(e, v)| (e, BigInt::from(v)))
        .collect()
}

fn mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (e, a) in p {
        for (f, b) in q {
            let k = [e[0] + f[0], e[1] + f[1], e[2] + f[2]];
            *out.entry(k).or_insert_with(BigInt::zero) += a * b;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn differentiate(p: &Poly, var: usize) -> Poly {
    let mut out = Poly::new();
    for (e, c) in p {
        if e[var] > 0 {
            let mut f = *e;
            f[var] -= 1;
            out.insert(f, c * BigInt::from(e[var]));
        }
    }
    out
}

fn evaluate(p: &Poly, pt: [&BigInt; 3]) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, (e, c)| {
        acc + c * pt[0].pow(e[0]) * pt[1].pow(e[1]) * pt[2].pow(e[2])
    })
}

fn to_vector(p: &Poly, d: u32) -> Vec<BigInt> {
    monomial_basis(d)
        .iter()
        .map(|e| p.get(e).cloned().unwrap_or_default())
        .collect()
}

fn from_vector(v: &[BigInt], d: u32) -> Poly {
    monomial_basis(d)
        .into_iter()
        .zip(v.iter().cloned())
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Every order-(m-1) partial of `p` evaluated at every point, in the
/// engine's row order (points outer, derivative multi-indices inner).
fn derivative_values(p: &Poly, z: &Config, m: u32) -> Vec<BigInt> {
    let mut out = Vec::new();
    for pt in z.points() {
        for der in monomial_basis(m - 1) {
            let mut q = p.clone();
            for (var, &times) in der.iter().enumerate() {
                for _ in 0..times {
                    q = differentiate(&q, var);
                }
            }
            out.push(evaluate(&q, pt.coords()));
        }
    }
    out
}

#[test]
fn conditions_matrix_matches_differentiation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let z = Config::from_triples("t", &[[1, 2, 3], [-2, 1, 5], [0, 1, 1], [4, -3, 2]]).unwrap();
    for (m, d) in [(1, 1), (2, 3), (3, 4), (4, 6)] {
        let matrix = conditions_matrix(&z, m, d).unwrap();
        for _ in 0..5 {
            let coeffs: Vec<BigInt> = (0..monomial_basis(d).len())
                .map(|_| BigInt::from(rng.gen_range(-5..=5)))
                .collect();
            let form = from_vector(&coeffs, d);
            assert_eq!(
                matrix.mul_vec(&coeffs),
                derivative_values(&form, &z, m),
                "m={m} d={d}"
            );
        }
    }
}

#[test]
fn point_conditions_at_origin() {
    let z = Config::from_triples("o", &[[0, 0, 1]]).unwrap();
    let m = conditions_matrix(&z, 2, 2).unwrap();
    assert_eq!((m.rows(), m.cols()), (3, 6));
    // x², xy, y² are singular at (0:0:1)
    for e in [[2, 0, 0], [1, 1, 0], [0, 2, 0]] {
        let mut p = Poly::new();
        p.insert(e, BigInt::one());
        assert!(m.annihilates(&to_vector(&p, 2)));
    }
}

#[test]
fn quadrilateral_double_points_quartic_is_the_four_lines() {
    let z = catalog::build("H6_10").unwrap();
    let product = [
        linear(1, 0, 0),
        linear(0, 1, 0),
        linear(1, 1, -1),
        linear(1, 2, -3),
    ]
    .iter()
    .fold(Poly::from([([0, 0, 0], BigInt::one())]), |acc, l| {
        mul(&acc, l)
    });
    let v = to_vector(&product, 4);
    let matrix = conditions_matrix(&z, 2, 4).unwrap();
    assert_eq!((matrix.rows(), matrix.cols()), (18, 15));
    assert!(matrix.annihilates(&v));

    let e = Engine::default();
    let r = e.system_dimension(&z, 2, 4, Mode::Certified).unwrap();
    assert_eq!((r.dim, r.certainty), (1, Certainty::Certified));
    let DimWitness::KernelBasis { vectors } = r.witness else {
        panic!("expected a kernel witness")
    };
    // proportional to the product: all 2×2 minors vanish
    let w = &vectors[0];
    for i in 0..15 {
        assert_eq!(&w[i] * &v[0], &v[i] * &w[0], "coefficient {i}");
    }
    assert_eq!(
        e.system_dimension(&z, 2, 3, Mode::Certified).unwrap().dim,
        0
    );
}

#[test]
fn dimension_examples() {
    let e = Engine::default();
    let line = catalog::build("LINE(3)").unwrap();
    assert_eq!(
        e.system_dimension(&line, 1, 1, Mode::Certified)
            .unwrap()
            .dim,
        1
    );
    let five = Config::from_triples(
        "5",
        &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 2, 3]],
    )
    .unwrap();
    assert_eq!(
        e.system_dimension(&five, 1, 2, Mode::Certified)
            .unwrap()
            .dim,
        1
    );
}

#[test]
fn initial_degree_examples() {
    let e = Engine::default();
    let c = Mode::Certified;
    assert_eq!(
        e.initial_degree(&catalog::build("LINE(4)").unwrap(), 3, c)
            .unwrap()
            .alpha,
        3
    );
    assert_eq!(
        e.initial_degree(&catalog::build("H6_10").unwrap(), 3, c)
            .unwrap()
            .alpha,
        7
    );
    assert_eq!(
        e.initial_degree(&catalog::build("GENERAL6").unwrap(), 5, c)
            .unwrap()
            .alpha,
        12
    );
}

#[test]
fn initial_sequence_examples() {
    let e = Engine::default();
    let p = ModePolicy::Fixed(Mode::Certified);
    let seq = |name: &str, m| {
        e.initial_sequence(&catalog::build(name).unwrap(), m, p)
            .unwrap()
            .values()
    };
    assert_eq!(seq("LINE(3)", 5), vec![1, 2, 3, 4, 5]);
    assert_eq!(seq("H6_9", 4), vec![3, 5, 7, 9]);
    assert_eq!(seq("H7_17", 7), vec![3, 5, 7, 10, 12, 14, 16]);
}

#[test]
fn standalone_search_agrees_with_bracketed_sequence() {
    let e = Engine::default();
    let z = catalog::build("H8_118").unwrap();
    let seq = e.initial_sequence(&z, 5, ModePolicy::default()).unwrap();
    for m in 1..=5 {
        assert_eq!(
            e.initial_degree(&z, m, Mode::Certified).unwrap().alpha,
            seq.alpha(m),
            "m={m}"
        );
    }
    assert!(seq.invariant_violations().is_empty());
}

#[test]
fn exhausted_budget_is_inconclusive() {
    // the line x = 1000y needs a coefficient far above sqrt(101/2)
    let z = Config::from_triples("steep", &[[0, 0, 1], [1000, 1, 0], [2000, 2, 1]]).unwrap();
    let e = Engine::new(PrimeSet::new(vec![101]).unwrap());
    assert!(matches!(
        e.system_dimension(&z, 1, 1, Mode::Certified),
        Err(WaldError::Inconclusive(_))
    ));
    // the default budget handles it
    assert_eq!(
        Engine::default()
            .system_dimension(&z, 1, 1, Mode::Certified)
            .unwrap()
            .dim,
        1
    );
}

#[test]
fn cache_round_trip_reverifies_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dims.jsonl");
    let z = catalog::build("H6_10").unwrap();
    let first = Engine::default().with_cache(DimCache::open(&path).unwrap());
    let a = first
        .initial_sequence(&z, 4, ModePolicy::Fixed(Mode::Certified))
        .unwrap();
    let stored = first.cache().unwrap().len();
    assert!(stored > 0);

    let second = Engine::default().with_cache(DimCache::open(&path).unwrap());
    assert_eq!(second.cache().unwrap().len(), stored);
    let b = second
        .initial_sequence(&z, 4, ModePolicy::Fixed(Mode::Certified))
        .unwrap();
    assert_eq!(a, b);

    // a tampered kernel is ignored and recomputed
    let text = std::fs::read_to_string(&path).unwrap();
    let tampered: String = text
        .lines()
        .map(|l| {
            let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
            if let Some(vecs) = v.pointer_mut("/witness/kernel_basis/vectors/0/0") {
                *vecs = serde_json::Value::String("12345".into());
            }
            format!("{v}\n")
        })
        .collect();
    std::fs::write(&path, tampered).unwrap();
    let third = Engine::default().with_cache(DimCache::open(&path).unwrap());
    assert_eq!(
        third
            .initial_sequence(&z, 4, ModePolicy::Fixed(Mode::Certified))
            .unwrap()
            .values(),
        a.values()
    );
}

fn random_config(seed: u64, s: usize) -> Config {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::new();
    while pts.len() < s {
        let p = wald_core::geometry::Pt::new(
            rng.gen_range(-6..=6),
            rng.gen_range(-6..=6),
            rng.gen_range(1..=3),
        )
        .unwrap();
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    Config::new(format!("random-{seed}"), pts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn modes_agree_and_dimension_grows_with_degree(seed in any::<u64>(), s in 3usize..=8, m in 1u32..=3) {
        let z = random_config(seed, s);
        let e = Engine::default();
        let mut prev = 0;
        for d in m..m + 5 {
            let c = e.system_dimension(&z, m, d, Mode::Certified).unwrap();
            let h = e.system_dimension(&z, m, d, Mode::Heuristic).unwrap();
            prop_assert_eq!(c.dim, h.dim);
            prop_assert!(c.dim >= prev);
            prev = c.dim;
        }
    }

    #[test]
    fn sequences_respect_growth_and_subadditivity(seed in any::<u64>(), s in 3usize..=8) {
        let z = random_config(seed, s);
        let seq = Engine::default().initial_sequence(&z, 5, ModePolicy::default()).unwrap();
        prop_assert!(seq.invariant_violations().is_empty(), "{:?}", seq.values());
    }
}

#[test]
fn tall_kernels_extend_the_prime_budget() {
    // RREF kernel entries here run to thousands of bits, far beyond the
    // 32 standard primes
    let z = random_config(12581672263734387822, 8);
    let seq = Engine::default()
        .initial_sequence(&z, 5, ModePolicy::Fixed(Mode::Certified))
        .unwrap();
    assert!(seq.invariant_violations().is_empty());
    assert_eq!(seq.certainty(), Certainty::Certified);
}
