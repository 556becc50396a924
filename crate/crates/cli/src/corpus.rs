//! Seeded random corpora. A corpus is fully determined by its parameters
//! and seed; the generators draw only integers from a ChaCha stream, so the
//! output is stable across platforms and runs.

use diamondlab_core::graphs::{Bipartition, Graph, StructureW};
use diamondlab_core::lattice::Family;
use diamondlab_core::patterns::is_diamond_free;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every diamond-free family containing the empty set, for `n ≤ 4`
/// (exhaustive over all `2^(2^n - 1)` candidate families).
pub fn exhaustive_diamond_free_with_empty(n: u32) -> Vec<Family> {
    assert!(n <= 4, "exhaustive corpus is only viable for n <= 4");
    let nonempty = (1u32 << n) - 1; // number of nonempty subsets
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

/// `count` random diamond-free families containing the empty set in
/// dimension `n ≤ 7`, built by a randomized greedy over a shuffled subset
/// order with a per-family density knob.
pub fn random_diamond_free_families(n: u32, count: usize, seed: u64) -> Vec<Family> {
    assert!((2..=7).contains(&n), "random family corpus needs 2 <= n <= 7");
    let size = 1usize << n;
    // Bitmaps over the 2^n subsets: subs[m] marks the subsets of m,
    // supers[m] the supersets.
    let mut subs = vec![0u128; size];
    let mut supers = vec![0u128; size];
    for m in 0..size {
        for s in 0..size {
            if s & m == s {
                subs[m] |= 1 << s;
            }
            if s | m == s {
                supers[m] |= 1 << s;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base: Vec<u32> = (1..size as u32).collect();
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mut order = base.clone();
        order.shuffle(&mut rng);
        let keep_percent: u32 = rng.gen_range(35..=100);
        let mut members: u128 = 1; // the empty set
        for &m in &order {
            if rng.gen_range(0..100u32) >= keep_percent {
                continue;
            }
            if insertion_keeps_diamond_free(&subs, &supers, members, m as usize) {
                members |= 1 << m;
            }
        }
        let family = Family::from_masks(
            n,
            (0..size as u32).filter(|&m| members >> m & 1 == 1),
        )
        .unwrap();
        debug_assert!(is_diamond_free(&family));
        out.push(family);
    }
    out
}

// The family (as a membership bitmap) is diamond-free; adding `s` keeps it
// so iff `s` closes no diamond as top, bottom or middle element.
fn insertion_keeps_diamond_free(subs: &[u128], supers: &[u128], members: u128, s: usize) -> bool {
    let sbit = 1u128 << s;
    let below = members & subs[s] & !sbit;
    let above = members & supers[s] & !sbit;

    // s on top: A ⊊ s with two members strictly between.
    let mut rest = below;
    while rest != 0 {
        let a = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if (below & supers[a] & !(1u128 << a)).count_ones() >= 2 {
            return false;
        }
    }
    // s at the bottom: D ⊋ s with two members strictly between.
    let mut rest = above;
    while rest != 0 {
        let d = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if (above & subs[d] & !(1u128 << d)).count_ones() >= 2 {
            return false;
        }
    }
    // s in the middle: A ⊊ s ⊊ D with any other member strictly between.
    let mut a_rest = below;
    while a_rest != 0 {
        let a = a_rest.trailing_zeros() as usize;
        a_rest &= a_rest - 1;
        let mut d_rest = above;
        while d_rest != 0 {
            let d = d_rest.trailing_zeros() as usize;
            d_rest &= d_rest - 1;
            if members & supers[a] & subs[d] & !(1u128 << a) & !(1u128 << d) != 0 {
                return false;
            }
        }
    }
    true
}

/// A random graph on `v` vertices with each edge present with probability
/// one half.
pub fn random_graph(v: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::new(v).unwrap();
    for a in 0..v {
        for b in a + 1..v {
            if rng.gen_range(0..2u32) == 1 {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

/// `count` random graphs with `v` drawn uniformly from `v_min..=v_max`.
pub fn random_graphs(count: usize, v_min: usize, v_max: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let v = rng.gen_range(v_min..=v_max);
            random_graph(v, &mut rng)
        })
        .collect()
}

/// `count` random structures `(n, (G, W))` with `4 ≤ v ≤ 8`,
/// `v ≤ n ≤ 3v`, a random graph, and `n − v` random bipartitions.
pub fn random_structures(count: usize, seed: u64) -> Vec<(u32, StructureW)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let v = rng.gen_range(4..=8usize);
            let n = rng.gen_range(v..=3 * v) as u32;
            let graph = random_graph(v, &mut rng);
            let parts = (0..n as usize - v)
                .map(|_| Bipartition::from_x(v, rng.gen_range(0..1u32 << v)))
                .collect();
            (n, StructureW::new(graph, parts))
        })
        .collect()
}
