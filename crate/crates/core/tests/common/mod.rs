//! Shared generators for the integration suites. Deliberately independent
//! of the operational corpus in the CLI crate: these are the test-side
//! oracles.
#![allow(dead_code)] // each test target uses a subset of the helpers

use diamondlab_core::lattice::{ElementSet, Family};
use diamondlab_core::patterns::is_diamond_free;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every diamond-free family containing the empty set, `n ≤ 4`.
pub fn all_diamond_free_with_empty(n: u32) -> Vec<Family> {
    assert!(n <= 4);
    let nonempty = (1u32 << n) - 1;
    let mut out = Vec::new();
    for pick in 0u32..1 << nonempty {
        let members = std::iter::once(0u32)
            .chain((1..=nonempty).filter(|&m| pick >> (m - 1) & 1 == 1));
        let family = Family::from_masks(n, members).unwrap();
        if is_diamond_free(&family) {
            out.push(family);
        }
    }
    out
}

// Does adding `s` keep a diamond-free family diamond-free? New diamonds
// must involve `s` as top, bottom or middle.
fn keeps_diamond_free(members: &[ElementSet], s: ElementSet) -> bool {
    let below: Vec<ElementSet> = members
        .iter()
        .copied()
        .filter(|m| m.is_strict_subset_of(s))
        .collect();
    let above: Vec<ElementSet> = members
        .iter()
        .copied()
        .filter(|m| s.is_strict_subset_of(*m))
        .collect();
    for &a in &below {
        if below
            .iter()
            .filter(|m| a.is_strict_subset_of(**m))
            .count()
            >= 2
        {
            return false;
        }
    }
    for &d in &above {
        if above
            .iter()
            .filter(|m| m.is_strict_subset_of(d))
            .count()
            >= 2
        {
            return false;
        }
    }
    for &a in &below {
        for &d in &above {
            if members
                .iter()
                .any(|m| a.is_strict_subset_of(*m) && m.is_strict_subset_of(d))
            {
                return false;
            }
        }
    }
    true
}

/// Random diamond-free families containing the empty set, by randomized
/// greedy insertion. Works for any `n ≤ 8`.
pub fn random_diamond_free(n: u32, count: usize, seed: u64) -> Vec<Family> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let all: Vec<u32> = (1..1u32 << n).collect();
    for _ in 0..count {
        let mut order = all.clone();
        order.shuffle(&mut rng);
        let keep: u32 = rng.gen_range(35..=100);
        let mut members = vec![ElementSet::EMPTY];
        for &m in &order {
            if rng.gen_range(0..100u32) >= keep {
                continue;
            }
            let s = ElementSet::from_bits(m);
            if keeps_diamond_free(&members, s) {
                members.push(s);
            }
        }
        let family = Family::new(n, members).unwrap();
        debug_assert!(is_diamond_free(&family));
        out.push(family);
    }
    out
}

/// Random families containing the empty set whose members span at most
/// three distinct sizes — hence no four-chain, without being diamond-free
/// in general.
pub fn random_no_4chain(n: u32, count: usize, seed: u64) -> Vec<Family> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let s2 = rng.gen_range(1..=n);
        let s3 = rng.gen_range(1..=n);
        let mut members = vec![ElementSet::EMPTY];
        for mask in 1..1u32 << n {
            let size = mask.count_ones();
            if (size == s2 || size == s3) && rng.gen_range(0..100u32) < 40 {
                members.push(ElementSet::from_bits(mask));
            }
        }
        out.push(Family::new(n, members).unwrap());
    }
    out
}
