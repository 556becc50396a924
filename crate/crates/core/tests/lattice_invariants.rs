//! Full-chain census identities and the YBLM inequality.

mod common;

use diamondlab_core::lattice::{
    factorial, lubell, middle_layers, psi_census, Family,
};
use diamondlab_core::rational::{frac, int};
use num_bigint::BigInt;
use proptest::prelude::*;

fn census_identity_holds(family: &Family) {
    let census = psi_census(family).unwrap();
    let n_fact = census.total();
    assert_eq!(BigInt::from(n_fact), factorial(family.n()));
    // No chain ever meets the family more than three times.
    for i in 4..census.counts().len() {
        assert_eq!(census.count(i), 0, "family {:?}", family.members());
    }
    assert_eq!(census.count(0), 0);
    let expected = int(2)
        + frac(
            census.count(3) as i64 - census.count(1) as i64,
            n_fact as i64,
        );
    assert_eq!(lubell(family), expected, "family {:?}", family.members());
}

#[test]
fn census_identity_exhaustive_small() {
    // Λ = 2 + (|Ψ₃|−|Ψ₁|)/n! for every diamond-free family containing ∅.
    for n in 1..=4 {
        for family in common::all_diamond_free_with_empty(n) {
            census_identity_holds(&family);
        }
    }
}

#[test]
fn census_identity_randomized() {
    // The identity needs only ∅ ∈ F and no four-chain; check it on
    // three-size families (not necessarily diamond-free) and on random
    // diamond-free families, across dimensions.
    for n in 6..=10u32 {
        let count = match n {
            9 => 4,
            10 => 2,
            _ => 20,
        };
        for family in common::random_no_4chain(n, count, 0x1000 + n as u64) {
            census_identity_holds(&family);
        }
    }
    for n in 6..=8u32 {
        for family in common::random_diamond_free(n, 10, 0x2000 + n as u64) {
            census_identity_holds(&family);
        }
    }
}

#[test]
fn yblm_for_all_antichains() {
    // Every antichain has Lubell value at most 1; exhaustive over n ≤ 4.
    for n in 1..=4u32 {
        let subsets = 1u32 << n;
        'family: for pick in 0u64..1 << subsets {
            let masks: Vec<u32> = (0..subsets).filter(|&m| pick >> m & 1 == 1).collect();
            for (i, &a) in masks.iter().enumerate() {
                for &b in masks.iter().skip(i + 1) {
                    if a & b == a || a & b == b {
                        continue 'family; // comparable pair
                    }
                }
            }
            let family = Family::from_masks(n, masks).unwrap();
            assert!(lubell(&family) <= int(1), "antichain {:?}", family.members());
        }
    }
}

#[test]
fn complete_layers_are_tight_for_yblm() {
    for n in 1..=8u32 {
        let layer = middle_layers(n, 1).unwrap();
        assert_eq!(lubell(&layer), int(1));
    }
}

#[test]
fn census_lubell_agreement_at_larger_n() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(88);
    for n in 7..=8u32 {
        for _ in 0..5 {
            let masks = (0..1u32 << n).filter(|_| rng.gen_range(0..100) < 25);
            let family = Family::from_masks(n, masks).unwrap();
            let census = psi_census(&family).unwrap();
            assert_eq!(census.lubell(), lubell(&family));
        }
    }
}

proptest! {
    // Census totals and the Lubell value recovered from the census agree
    // with the definition on arbitrary families.
    #[test]
    fn census_total_and_lubell(n in 1u32..=6, pick in any::<u64>()) {
        let subsets = 1u64 << n;
        let masks = (0..subsets).filter(|&m| pick >> (m % 64) & 1 == 1).map(|m| m as u32);
        let family = Family::from_masks(n, masks).unwrap();
        let census = psi_census(&family).unwrap();
        prop_assert_eq!(BigInt::from(census.total()), factorial(n));
        prop_assert_eq!(census.lubell(), lubell(&family));
    }
}
