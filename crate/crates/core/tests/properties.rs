//! Randomized properties. The seed comes from `COBINV_SEED` (default fixed).

use std::sync::OnceLock;

use cobinv_core::algebra::{GradedPoly, Monomial};
use cobinv_core::equivariant::{
    catalog, decompose, evaluate, express_in_x, split_expression, CatalogKind, Fixture,
};
use cobinv_core::partitions;
use cobinv_core::verdicts::curve_check;
use cobinv_core::Context;
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

const DEFAULT_SEED: u64 = 0x5eed_c0b1;

fn runner(cases: u32) -> TestRunner {
    let seed = std::env::var("COBINV_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    TestRunner::new_with_rng(Config { cases, ..Config::default() }, TestRng::from_seed(RngAlgorithm::ChaCha, &bytes))
}

fn ctx() -> &'static Context {
    static C: OnceLock<Context> = OnceLock::new();
    C.get_or_init(|| Context::with_degree(6).unwrap())
}

fn kinds() -> Vec<CatalogKind> {
    let mut v: Vec<CatalogKind> = (1..=5).map(|n| CatalogKind::Xn { n }).collect();
    v.push(CatalogKind::P1xP1Swap);
    v.push(CatalogKind::Pab { a: 2, b: 1 });
    v.push(CatalogKind::Hij { i: 1, j: 2 });
    v
}

/// Small polynomials in b1..b3, a1, v.
fn poly() -> impl Strategy<Value = Vec<([u8; 5], i8)>> {
    prop::collection::vec(([0u8..3, 0..2, 0..2, 0..2, 0..3], -5i8..6), 0..5)
}

fn build(terms: &[([u8; 5], i8)]) -> GradedPoly {
    let sy = ctx().symbols();
    let vars = [sy.b(1), sy.b(2), sy.b(3), sy.a(1), sy.v()];
    let mut p = sy.zero();
    for (e, c) in terms {
        let pairs: Vec<(usize, i32)> = vars.iter().zip(e).map(|(&i, &k)| (i, k as i32)).collect();
        p.add_term(Monomial::from_pairs(pairs), BigInt::from(*c));
    }
    p
}

#[test]
fn ring_axioms() {
    runner(64)
        .run(&(poly(), poly(), poly()), |(a, b, c)| {
            let (a, b, c) = (build(&a), build(&b), build(&c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            Ok(())
        })
        .unwrap();
}

#[test]
fn poly_json_round_trip() {
    runner(64)
        .run(&poly(), |t| {
            let p = build(&t);
            let q = GradedPoly::from_json(&p.to_json(), &ctx().symbols().alpha).unwrap();
            prop_assert_eq!(p, q);
            Ok(())
        })
        .unwrap();
}

#[test]
fn partition_round_trip() {
    runner(64)
        .run(&prop::collection::vec(1u32..9, 0..6), |mut p| {
            p.sort_unstable_by(|a, b| b.cmp(a));
            prop_assert_eq!(partitions::parse(&partitions::render(&p)), Some(p));
            Ok(())
        })
        .unwrap();
}

#[test]
fn nu_is_multiplicative() {
    let ks = kinds();
    runner(12)
        .run(&(0..ks.len(), 0..ks.len()), |(i, j)| {
            let c = ctx();
            let (a, b) = (ks[i].clone(), ks[j].clone());
            let prod = Fixture::product_of(&[(a.clone(), 1), (b.clone(), 1)]).unwrap();
            let nu = evaluate(c, &prod).unwrap().nu.clone();
            let na = evaluate(c, &catalog(&a).unwrap()).unwrap().nu.clone();
            let nb = evaluate(c, &catalog(&b).unwrap()).unwrap().nu.clone();
            prop_assert_eq!(nu.clone(), &na * &nb);
            // The x-expression of a product re-expands to its ν.
            let d = decompose(c, &prod).unwrap();
            prop_assert_eq!(d.to_m(c).unwrap(), nu.clone());
            let direct = split_expression(c, prod.n, &express_in_x(c, &nu).unwrap()).unwrap();
            prop_assert_eq!(direct, d);
            Ok(())
        })
        .unwrap();
}

#[test]
fn curve_verdicts_agree() {
    runner(48)
        .run(&(2u32..5, -40i64..41, -40i64..41, -40i64..41), |(n, a, b, cc)| {
            let v = curve_check(ctx(), n, &BigInt::from(a), &BigInt::from(b), &BigInt::from(cc)).unwrap();
            prop_assert!(v.agree(), "{:?}", v);
            Ok(())
        })
        .unwrap();
}
