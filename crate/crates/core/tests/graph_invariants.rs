//! The structure bound end to end, the per-4-subgraph rewrite identity,
//! handshake counting, and the bracket decomposition.

mod common;

use diamondlab_core::graphs::{
    bracket_numerator, extract_structure, f_value, max_bracket, per_h_sum, psi_bounds_check,
    subgraph_census, Bipartition, Graph, StructureW,
};
use diamondlab_core::lattice::{lubell, middle_layers, ElementSet, Family};
use diamondlab_core::rational::{frac, int};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(v: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::new(v).unwrap();
    for a in 0..v {
        for b in a + 1..v {
            if rng.gen_range(0..2) == 1 {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

#[test]
fn rewrite_identity_on_random_structures() {
    // per_h_sum is an exact algebraic rewrite of f_value.
    let mut rng = ChaCha8Rng::seed_from_u64(0xf4);
    for _ in 0..500 {
        let v = rng.gen_range(4..=8usize);
        let n = rng.gen_range(v..=3 * v) as u32;
        let graph = random_graph(v, &mut rng);
        let parts: Vec<Bipartition> = (0..n as usize - v)
            .map(|_| Bipartition::from_x(v, rng.gen_range(0..1u32 << v)))
            .collect();
        let s = StructureW::new(graph, parts);
        assert_eq!(per_h_sum(n, &s).unwrap(), f_value(n, &s).unwrap());
    }
}

#[test]
fn lemma2_bound_exhaustive_small() {
    // Λ ≤ 2 + f for every diamond-free family containing ∅ at n ≤ 4, and
    // the census inequalities hold whenever defined (n ≥ 3).
    for n in 1..=4u32 {
        for family in common::all_diamond_free_with_empty(n) {
            let s = extract_structure(&family).unwrap();
            let bound = int(2) + f_value(n, &s).unwrap();
            assert!(
                lubell(&family) <= bound,
                "family {:?}: lubell {} > bound {}",
                family.members(),
                lubell(&family),
                bound
            );
            if n >= 3 {
                assert!(psi_bounds_check(&family).unwrap().holds());
            }
        }
    }
}

#[test]
fn lemma2_bound_randomized() {
    for n in 6..=8u32 {
        for family in common::random_diamond_free(n, 15, 0xb0 + n as u64) {
            let s = extract_structure(&family).unwrap();
            let bound = int(2) + f_value(n, &s).unwrap();
            assert!(lubell(&family) <= bound);
        }
    }
    // The census inequalities on a larger n=7 batch.
    for family in common::random_diamond_free(7, 100, 0xbb) {
        assert!(psi_bounds_check(&family).unwrap().holds());
    }
}

#[test]
fn psi_bounds_on_reference_families() {
    // {∅} plus two full middle layers is NOT diamond-free (∅ ⊂ {1},{2} ⊂
    // {1,2}), and indeed every full chain then meets the family three
    // times, breaking the Ψ₃−Ψ₁ inequality — the precondition is real.
    let mut members: Vec<ElementSet> = middle_layers(4, 2).unwrap().iter().collect();
    members.push(ElementSet::EMPTY);
    let family = Family::new(4, members).unwrap();
    assert_eq!(
        psi_bounds_check(&family),
        Err(diamondlab_core::Error::NotDiamondFree)
    );

    // A diamond-free family attaining the n=4 Lubell maximum: ∅, two
    // disjoint pairs, and all four triples.
    let family = Family::from_masks(
        4,
        [0b0000, 0b0011, 0b1100, 0b0111, 0b1011, 0b1101, 0b1110],
    )
    .unwrap();
    let report = psi_bounds_check(&family).unwrap();
    assert!(report.holds(), "{report:?}");
    assert_eq!(lubell(&family), frac(7, 3));

    // And one with singletons on both sides of the bipartitions.
    let family = Family::from_masks(3, [0b000, 0b001, 0b010, 0b101, 0b110]).unwrap();
    let report = psi_bounds_check(&family).unwrap();
    assert!(report.holds(), "{report:?}");
}

#[test]
fn handshake_identity() {
    // Σ_{y∈Y} deg(y) + Σ_{x∈X} nondeg(x) = |X||Y| + 2e(Y) + 2ē(X),
    // for every labeled graph on up to 5 vertices and every bipartition.
    for v in 0..=5usize {
        let pairs = v * v.saturating_sub(1) / 2;
        for mask in 0u64..1 << pairs {
            let g = Graph::from_edge_mask(v, mask).unwrap();
            let full = g.full_mask();
            for x in 0..=full {
                let y = full & !x;
                let mut lhs = 0u32;
                for u in 0..v {
                    if y >> u & 1 == 1 {
                        lhs += g.degree(u);
                    } else {
                        lhs += (v as u32 - 1) - g.degree(u);
                    }
                }
                let rhs = x.count_ones() * y.count_ones()
                    + 2 * g.edges_inside(y)
                    + 2 * g.nonedges_inside(x);
                assert_eq!(lhs, rhs, "v={v} mask={mask} x={x:#b}");
            }
        }
    }
}

#[test]
fn worst_w_is_per_slot_maximum() {
    // f is affine in each bipartition slot, so the supremum over W splits:
    // max over all |W|-tuples of bipartitions = |W| times the best single
    // bracket. Checked by full enumeration of tuples.
    let mut rng = ChaCha8Rng::seed_from_u64(0xaffe);
    for v in 2..=5usize {
        for w_count in 1..=3usize {
            let g = random_graph(v, &mut rng);
            let n = (v + w_count) as u32;
            let slots = 1u32 << v;
            // Integer bracket numerators over the common denominator (n)₃.
            let nums: Vec<i64> = (0..slots).map(|x| bracket_numerator(n, &g, x)).collect();
            let best_single = *nums.iter().max().unwrap();
            let mut best_tuple = i64::MIN;
            let mut tuple = vec![0u32; w_count];
            loop {
                let total: i64 = tuple.iter().map(|&x| nums[x as usize]).sum();
                best_tuple = best_tuple.max(total);
                // odometer over tuples
                let mut carry = true;
                for slot in tuple.iter_mut() {
                    if carry {
                        *slot += 1;
                        if *slot == slots {
                            *slot = 0;
                        } else {
                            carry = false;
                        }
                    }
                }
                if carry {
                    break;
                }
            }
            assert_eq!(best_tuple, best_single * w_count as i64);

            // And the rational route agrees with the integer route.
            let (value, part) = max_bracket(n, &g).unwrap();
            assert_eq!(
                value,
                frac(best_single, {
                    let ni = n as i64;
                    ni * (ni - 1) * (ni - 2)
                })
            );
            let worst = StructureW::new(g.clone(), vec![part; w_count]);
            let census = subgraph_census(&g);
            let ni = n as i64;
            let structure_terms = frac(
                2 * (census.alpha[1] as i64 - census.alpha[2] as i64),
                ni * (ni - 1) * (ni - 2),
            ) + if census.beta[0] > 0 {
                frac(6 * census.beta[0] as i64, ni * (ni - 1) * (ni - 2) * (ni - 3))
            } else {
                int(0)
            };
            assert_eq!(
                f_value(n, &worst).unwrap(),
                structure_terms + int(w_count as i64) * value
            );
        }
    }
}

#[test]
fn empty_graph_with_no_w_is_tight_at_one_quarter() {
    // v = n with no bipartitions: f = 6·C(n,4)/(n)₄ = 1/4 exactly.
    for n in [8u32, 12, 17] {
        let s = StructureW::new(Graph::new(n as usize).unwrap(), vec![]);
        assert_eq!(f_value(n, &s).unwrap(), frac(1, 4));
    }
}
