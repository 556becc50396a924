//! Brute-force and branch-and-bound oracles for extremal questions at
//! small `n`: the largest pattern-free family, and the largest Lubell value
//! of a diamond-free family containing the empty set.
//!
//! The search is an ordered DFS over all subsets of `[n]` sorted by
//! `(size, bitmask)`, include-branch first, pruning a node as soon as it
//! cannot strictly beat the incumbent. Freeness is maintained
//! incrementally; because sets are added in size order, a new set can only
//! close a forbidden configuration from the top, which keeps the checks
//! one-sided and cheap. Results are deterministic: the first optimum in
//! DFS order is the witness reported.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Error;
use crate::lattice::{binomial, ElementSet, Family};
use crate::patterns::{contains_pattern, PatternPoset};
use crate::rational::{big_frac, Rational};

/// DFS over `2^(2^n)` candidate families is only viable for tiny `n`.
pub const MAX_SEARCH_UNIVERSE: u32 = 6;

#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub node_limit: u64,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            node_limit: u64::MAX,
        }
    }
}

/// Outcome of a search. `exhaustive` is true when the DFS ran to
/// completion within budget, in which case `objective` is exact; otherwise
/// it is the best value found before the node budget ran out.
#[derive(Clone, Debug)]
pub struct SearchResult<T> {
    pub objective: T,
    pub witness: Family,
    pub nodes_explored: u64,
    pub exhaustive: bool,
}

// Recognized pattern shapes with specialized incremental oracles.
enum Shape {
    Chain(usize),
    Fork(usize),
    KDiamond(usize),
    Generic,
}

fn classify_shape(p: &PatternPoset) -> Shape {
    let s = p.size();
    let comparable =
        |i: usize, j: usize| p.less(i, j) || p.less(j, i);
    if (0..s).all(|i| (0..s).all(|j| i == j || comparable(i, j))) {
        return Shape::Chain(s);
    }
    let minimal: Vec<usize> = (0..s).filter(|&i| p.ancestors(i) == 0).collect();
    let maximal: Vec<usize> = (0..s)
        .filter(|&i| (0..s).all(|j| !p.less(i, j)))
        .collect();
    if s >= 3 && minimal.len() == 1 && maximal.len() == s - 1 {
        let root = minimal[0];
        let leaves_free = (0..s).filter(|&i| i != root).all(|i| {
            p.less(root, i) && (0..s).all(|j| j == i || j == root || !comparable(i, j))
        });
        if leaves_free {
            return Shape::Fork(s - 1);
        }
    }
    if s >= 3 && minimal.len() == 1 && maximal.len() == 1 {
        let (root, top) = (minimal[0], maximal[0]);
        let middles_ok = (0..s).filter(|&i| i != root && i != top).all(|i| {
            p.less(root, i)
                && p.less(i, top)
                && (0..s)
                    .filter(|&j| j != root && j != top && j != i)
                    .all(|j| !comparable(i, j))
        });
        if middles_ok && p.less(root, top) {
            return Shape::KDiamond(s - 2);
        }
    }
    Shape::Generic
}

enum Oracle<'p> {
    // depth of the longest chain ending at each chosen set
    Chain { k: usize, depths: Vec<usize> },
    KDiamond { k: usize },
    // strict-superset count of each chosen set
    Fork { r: usize, counts: Vec<usize> },
    Generic { n: u32, pattern: &'p PatternPoset },
}

impl Oracle<'_> {
    // Sets arrive in (size, mask) order, so the candidate can only sit on
    // top of existing configurations.
    fn allows(&self, chosen: &[ElementSet], s: ElementSet) -> bool {
        match self {
            Oracle::Chain { k, depths } => {
                let mut depth = 1;
                for (i, &m) in chosen.iter().enumerate() {
                    if m.is_strict_subset_of(s) {
                        depth = depth.max(depths[i] + 1);
                    }
                }
                depth < *k
            }
            Oracle::KDiamond { k } => {
                for &a in chosen.iter() {
                    if !a.is_strict_subset_of(s) {
                        continue;
                    }
                    let mut middles = 0;
                    for &m in chosen.iter() {
                        if a.is_strict_subset_of(m) && m.is_strict_subset_of(s) {
                            middles += 1;
                            if middles >= *k {
                                return false;
                            }
                        }
                    }
                }
                true
            }
            Oracle::Fork { r, counts } => {
                for (i, &m) in chosen.iter().enumerate() {
                    if m.is_strict_subset_of(s) && counts[i] + 1 >= *r {
                        return false;
                    }
                }
                true
            }
            Oracle::Generic { n, pattern } => {
                let family = Family::new(
                    *n,
                    chosen.iter().copied().chain(core::iter::once(s)),
                )
                .expect("search candidates are valid subsets");
                contains_pattern(&family, pattern).is_none()
            }
        }
    }

    fn push(&mut self, chosen: &[ElementSet], s: ElementSet) {
        match self {
            Oracle::Chain { depths, .. } => {
                let mut depth = 1;
                for (i, &m) in chosen.iter().enumerate() {
                    if m.is_strict_subset_of(s) {
                        depth = depth.max(depths[i] + 1);
                    }
                }
                depths.push(depth);
            }
            Oracle::Fork { counts, .. } => {
                for (i, &m) in chosen.iter().enumerate() {
                    if m.is_strict_subset_of(s) {
                        counts[i] += 1;
                    }
                }
                counts.push(0);
            }
            Oracle::KDiamond { .. } | Oracle::Generic { .. } => {}
        }
    }

    fn pop(&mut self, chosen: &[ElementSet], s: ElementSet) {
        match self {
            Oracle::Chain { depths, .. } => {
                depths.pop();
            }
            Oracle::Fork { counts, .. } => {
                counts.pop();
                for (i, &m) in chosen.iter().enumerate() {
                    if m.is_strict_subset_of(s) {
                        counts[i] -= 1;
                    }
                }
            }
            Oracle::KDiamond { .. } | Oracle::Generic { .. } => {}
        }
    }
}

/// All subsets of `[n]` in `(size, bitmask)` order — the canonical search
/// order for reproducible witnesses.
fn search_items(n: u32, skip_empty: bool) -> Vec<ElementSet> {
    let mut items: Vec<ElementSet> = (0..1u32 << n).map(ElementSet::from_bits).collect();
    items.sort_unstable_by_key(|s| (s.len(), s.bits()));
    if skip_empty {
        items.remove(0);
    }
    items
}

struct SizeSearch<'a> {
    items: &'a [ElementSet],
    node_limit: u64,
    nodes: u64,
    out_of_budget: bool,
    chosen: Vec<ElementSet>,
    oracle: Oracle<'a>,
    best_len: usize,
    best: Vec<ElementSet>,
}

impl SizeSearch<'_> {
    fn run(&mut self, idx: usize) {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            self.out_of_budget = true;
            return;
        }
        if idx == self.items.len() {
            if self.chosen.len() > self.best_len {
                self.best_len = self.chosen.len();
                self.best = self.chosen.clone();
            }
            return;
        }
        if self.chosen.len() + (self.items.len() - idx) <= self.best_len {
            return;
        }
        let s = self.items[idx];
        if self.oracle.allows(&self.chosen, s) {
            self.oracle.push(&self.chosen, s);
            self.chosen.push(s);
            self.run(idx + 1);
            self.chosen.pop();
            self.oracle.pop(&self.chosen, s);
            if self.out_of_budget {
                return;
            }
        }
        self.run(idx + 1);
    }
}

/// The size of the largest pattern-free family in the Boolean lattice of
/// dimension `n`, with a maximum witness.
pub fn la(n: u32, pattern: &PatternPoset, budget: Budget) -> Result<SearchResult<u64>, Error> {
    if n > MAX_SEARCH_UNIVERSE {
        return Err(Error::UniverseTooLarge {
            n,
            limit: MAX_SEARCH_UNIVERSE,
        });
    }
    let items = search_items(n, false);
    let oracle = match classify_shape(pattern) {
        Shape::Chain(k) => Oracle::Chain {
            k,
            depths: Vec::new(),
        },
        Shape::Fork(r) => Oracle::Fork {
            r,
            counts: Vec::new(),
        },
        Shape::KDiamond(k) => Oracle::KDiamond { k },
        Shape::Generic => Oracle::Generic { n, pattern },
    };
    let mut search = SizeSearch {
        items: &items,
        node_limit: budget.node_limit,
        nodes: 0,
        out_of_budget: false,
        chosen: Vec::new(),
        oracle,
        best_len: 0,
        best: Vec::new(),
    };
    search.run(0);
    Ok(SearchResult {
        objective: search.best_len as u64,
        witness: Family::new(n, search.best.iter().copied())?,
        nodes_explored: search.nodes,
        exhaustive: !search.out_of_budget,
    })
}

struct LubellSearch<'a> {
    items: &'a [ElementSet],
    // Lubell mass of each item, and total mass of the suffix from each index.
    masses: &'a [Rational],
    suffix: &'a [Rational],
    node_limit: u64,
    nodes: u64,
    out_of_budget: bool,
    chosen: Vec<ElementSet>,
    current: Rational,
    best_value: Rational,
    best: Vec<ElementSet>,
}

impl LubellSearch<'_> {
    fn run(&mut self, idx: usize) {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            self.out_of_budget = true;
            return;
        }
        if idx == self.items.len() {
            if self.current > self.best_value {
                self.best_value = self.current.clone();
                self.best = self.chosen.clone();
            }
            return;
        }
        if self.current.clone() + self.suffix[idx].clone() <= self.best_value {
            return;
        }
        let s = self.items[idx];
        let oracle = Oracle::KDiamond { k: 2 };
        if oracle.allows(&self.chosen, s) {
            self.chosen.push(s);
            self.current += self.masses[idx].clone();
            self.run(idx + 1);
            self.current -= self.masses[idx].clone();
            self.chosen.pop();
            if self.out_of_budget {
                return;
            }
        }
        self.run(idx + 1);
    }
}

/// The maximum Lubell value over diamond-free families containing the
/// empty set, with a maximizing witness.
pub fn lubell_star(n: u32, budget: Budget) -> Result<SearchResult<Rational>, Error> {
    if n > MAX_SEARCH_UNIVERSE {
        return Err(Error::UniverseTooLarge {
            n,
            limit: MAX_SEARCH_UNIVERSE,
        });
    }
    let items = search_items(n, true);
    let masses: Vec<Rational> = items
        .iter()
        .map(|s| big_frac(BigInt::one(), binomial(n as u64, s.len() as i64)))
        .collect();
    let mut suffix: Vec<Rational> = Vec::with_capacity(items.len() + 1);
    suffix.push(Rational::from_integer(BigInt::from(0)));
    for m in masses.iter().rev() {
        let last = suffix.last().unwrap().clone();
        suffix.push(last + m.clone());
    }
    suffix.reverse();

    let mut search = LubellSearch {
        items: &items,
        masses: &masses,
        suffix: &suffix,
        node_limit: budget.node_limit,
        nodes: 0,
        out_of_budget: false,
        chosen: alloc::vec![ElementSet::EMPTY],
        current: Rational::one(),
        best_value: Rational::one(),
        best: alloc::vec![ElementSet::EMPTY],
    };
    search.run(0);
    Ok(SearchResult {
        objective: search.best_value.clone(),
        witness: Family::new(n, search.best.iter().copied())?,
        nodes_explored: search.nodes,
        exhaustive: !search.out_of_budget,
    })
}
