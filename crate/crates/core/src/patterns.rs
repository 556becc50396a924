//! Abstract poset patterns and weak-subposet containment.
//!
//! Containment is the weak notion: an injective map that preserves strict
//! order. Relations may appear between images of incomparable pattern
//! elements; in particular the two middle sets of a diamond may or may not
//! be comparable, and a 4-chain therefore contains a diamond.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::lattice::{middle_layers, ElementSet, Family};

pub const MAX_PATTERN_SIZE: usize = 8;

/// A small strict poset given by its order relation matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternPoset {
    size: usize,
    // above[i] has bit j set iff i < j in the pattern.
    above: [u8; MAX_PATTERN_SIZE],
}

/// The pattern families used throughout: the diamond, chains `P_k`,
/// `r`-forks and `k`-diamonds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternKind {
    Diamond,
    Chain(u32),
    Fork(u32),
    KDiamond(u32),
}

pub fn make_pattern(kind: PatternKind) -> Result<PatternPoset, Error> {
    match kind {
        PatternKind::Diamond => make_pattern(PatternKind::KDiamond(2)),
        PatternKind::Chain(k) => {
            if k < 1 || k as usize > MAX_PATTERN_SIZE {
                return Err(Error::BadParameter("chain length must be 1..=8"));
            }
            let k = k as usize;
            let mut rel = Vec::new();
            for i in 0..k {
                for j in i + 1..k {
                    rel.push((i, j));
                }
            }
            PatternPoset::new(k, &rel)
        }
        PatternKind::Fork(r) => {
            if r < 2 || (r + 1) as usize > MAX_PATTERN_SIZE {
                return Err(Error::BadParameter("fork arity must be 2..=7"));
            }
            let rel: Vec<(usize, usize)> = (1..=r as usize).map(|j| (0, j)).collect();
            PatternPoset::new(r as usize + 1, &rel)
        }
        PatternKind::KDiamond(k) => {
            if k < 1 || (k + 2) as usize > MAX_PATTERN_SIZE {
                return Err(Error::BadParameter("k-diamond width must be 1..=6"));
            }
            let k = k as usize;
            let top = k + 1;
            let mut rel: Vec<(usize, usize)> = Vec::new();
            for m in 1..=k {
                rel.push((0, m));
                rel.push((m, top));
            }
            rel.push((0, top));
            PatternPoset::new(k + 2, &rel)
        }
    }
}

impl PatternPoset {
    /// Builds a pattern from strict relations, closing transitively and
    /// rejecting cycles.
    pub fn new(size: usize, relations: &[(usize, usize)]) -> Result<PatternPoset, Error> {
        if size == 0 || size > MAX_PATTERN_SIZE {
            return Err(Error::BadParameter("pattern size must be 1..=8"));
        }
        let mut above = [0u8; MAX_PATTERN_SIZE];
        for &(a, b) in relations {
            if a >= size || b >= size || a == b {
                return Err(Error::BadParameter("relation index out of range"));
            }
            above[a] |= 1 << b;
        }
        // Warshall closure.
        for k in 0..size {
            for i in 0..size {
                if above[i] >> k & 1 == 1 {
                    above[i] |= above[k];
                }
            }
        }
        for i in 0..size {
            if above[i] >> i & 1 == 1 {
                return Err(Error::BadParameter("pattern relation has a cycle"));
            }
        }
        Ok(PatternPoset { size, above })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Whether `i < j` in the pattern.
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.above[i] >> j & 1 == 1
    }

    /// Bitmask of the strict ancestors of `j`.
    pub fn ancestors(&self, j: usize) -> u8 {
        let mut mask = 0u8;
        for i in 0..self.size {
            if self.less(i, j) {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// A linear extension: element indices ordered so every ancestor comes
    /// before its descendants. Deterministic (smallest index first).
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.size);
        let mut placed = 0u8;
        while order.len() < self.size {
            for i in 0..self.size {
                if placed >> i & 1 == 0 && self.ancestors(i) & !placed == 0 {
                    order.push(i);
                    placed |= 1 << i;
                    break;
                }
            }
        }
        order
    }
}

/// An order-preserving injection of a pattern into a family, found by
/// [`contains_pattern`]; `mapping[i]` is the image of pattern element `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub mapping: Vec<ElementSet>,
}

/// Weak-subposet containment test, by backtracking over the family.
/// Returns a witness mapping when the pattern embeds.
///
/// Pattern elements are assigned most-related first, and a candidate is
/// filtered against every already-placed comparable element (must strictly
/// contain placed ancestors, be strictly contained in placed descendants),
/// which keeps wide patterns like `k`-diamonds cheap on layered families.
pub fn contains_pattern(family: &Family, pattern: &PatternPoset) -> Option<Witness> {
    let p = pattern.size();
    if family.len() < p {
        return None;
    }
    if (0..p).all(|i| (0..p).all(|j| i == j || pattern.less(i, j) || pattern.less(j, i))) {
        // Total orders embed iff the family has a chain of that length.
        return chain_witness(family, p).map(|chain| {
            let mut mapping = vec![ElementSet::EMPTY; p];
            for (rank, &elt) in pattern.linear_extension().iter().enumerate() {
                mapping[elt] = chain[rank];
            }
            Witness { mapping }
        });
    }
    let mut order: Vec<usize> = (0..p).collect();
    let degree = |i: usize| {
        (0..p)
            .filter(|&j| pattern.less(i, j) || pattern.less(j, i))
            .count()
    };
    order.sort_by_key(|&i| (usize::MAX - degree(i), i));
    let members = family.members();
    let mut image: Vec<usize> = vec![usize::MAX; p];

    fn assign(
        depth: usize,
        order: &[usize],
        pattern: &PatternPoset,
        members: &[ElementSet],
        image: &mut [usize],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let elt = order[depth];
        // Union of placed ancestor images and intersection of placed
        // descendant images bracket the candidates.
        let mut required = 0u32;
        let mut allowed = u32::MAX;
        for &placed in order[..depth].iter() {
            if pattern.less(placed, elt) {
                required |= members[image[placed]].bits();
            } else if pattern.less(elt, placed) {
                allowed &= members[image[placed]].bits();
            }
        }
        'cand: for (idx, m) in members.iter().enumerate() {
            let bits = m.bits();
            if bits & required != required || bits & !allowed != 0 {
                continue;
            }
            for placed in order[..depth].iter() {
                if image[*placed] == idx {
                    continue 'cand;
                }
            }
            // Injectivity plus the subset constraints give strictness.
            image[elt] = idx;
            if assign(depth + 1, order, pattern, members, image) {
                return true;
            }
            image[elt] = usize::MAX;
        }
        false
    }

    if assign(0, &order, pattern, members, &mut image) {
        Some(Witness {
            mapping: image.iter().map(|&i| members[i]).collect(),
        })
    } else {
        None
    }
}

/// Specialized diamond test: the family has a diamond iff some pair
/// `A ⊊ D` has at least two members strictly between. Agrees with
/// `contains_pattern(·, diamond)` on every input.
pub fn is_diamond_free(family: &Family) -> bool {
    find_diamond(family).is_none()
}

/// Fast diamond search; returns `[A, B, C, D]` with `A ⊂ B, C ⊂ D` when a
/// diamond exists.
pub fn find_diamond(family: &Family) -> Option<[ElementSet; 4]> {
    let members = family.members();
    for (di, &d) in members.iter().enumerate() {
        for (ai, &a) in members.iter().enumerate() {
            if ai == di || !a.is_strict_subset_of(d) || d.len() - a.len() < 2 {
                continue;
            }
            let mut first: Option<ElementSet> = None;
            for &m in members.iter() {
                if a.is_strict_subset_of(m) && m.is_strict_subset_of(d) {
                    match first {
                        None => first = Some(m),
                        Some(b) => return Some([a, b, m, d]),
                    }
                }
            }
        }
    }
    None
}

/// Number of elements in the longest chain of the family (members pairwise
/// related by strict containment).
pub fn longest_chain(family: &Family) -> usize {
    let mut idx: Vec<usize> = (0..family.len()).collect();
    let members = family.members();
    idx.sort_unstable_by_key(|&i| (members[i].len(), members[i].bits()));
    let mut depth = vec![0usize; members.len()];
    let mut best = 0;
    for (pos, &i) in idx.iter().enumerate() {
        let mut d = 1;
        for &j in idx[..pos].iter() {
            if members[j].is_strict_subset_of(members[i]) {
                d = d.max(depth[j] + 1);
            }
        }
        depth[i] = d;
        best = best.max(d);
    }
    best
}

// A chain of exactly `k` members in ascending order, if one exists.
fn chain_witness(family: &Family, k: usize) -> Option<Vec<ElementSet>> {
    let members = family.members();
    let mut idx: Vec<usize> = (0..members.len()).collect();
    idx.sort_unstable_by_key(|&i| (members[i].len(), members[i].bits()));
    let mut depth = vec![0usize; members.len()];
    let mut parent = vec![usize::MAX; members.len()];
    for (pos, &i) in idx.iter().enumerate() {
        let mut d = 1;
        for &j in idx[..pos].iter() {
            if members[j].is_strict_subset_of(members[i]) && depth[j] + 1 > d {
                d = depth[j] + 1;
                parent[i] = j;
            }
        }
        depth[i] = d;
        if d >= k {
            let mut chain = Vec::with_capacity(k);
            let mut cur = i;
            for _ in 0..k {
                chain.push(members[cur]);
                cur = parent[cur];
            }
            chain.reverse();
            return Some(chain);
        }
    }
    None
}

/// Largest `m` such that the union of the `m` middle layers of the
/// `n`-dimensional Boolean lattice does not contain the pattern; `n + 1`
/// when even the whole lattice is pattern-free.
pub fn e_value(pattern: &PatternPoset, n: u32) -> Result<u32, Error> {
    if n > 12 {
        return Err(Error::BadParameter("e_value needs n <= 12"));
    }
    for m in 1..=n + 1 {
        let layers = middle_layers(n, m)?;
        if contains_pattern(&layers, pattern).is_some() {
            return Ok(m - 1);
        }
    }
    Ok(n + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: u32, masks: &[u32]) -> Family {
        Family::from_masks(n, masks.iter().copied()).unwrap()
    }

    fn diamond() -> PatternPoset {
        make_pattern(PatternKind::Diamond).unwrap()
    }

    #[test]
    fn pattern_shapes() {
        let d = diamond();
        assert_eq!(d.size(), 4);
        // 0 < 1, 2 < 3; 1 and 2 incomparable.
        assert!(d.less(0, 1) && d.less(0, 2) && d.less(0, 3));
        assert!(d.less(1, 3) && d.less(2, 3));
        assert!(!d.less(1, 2) && !d.less(2, 1));

        let c2 = make_pattern(PatternKind::Chain(2)).unwrap();
        assert!(c2.less(0, 1) && !c2.less(1, 0));

        let f3 = make_pattern(PatternKind::Fork(3)).unwrap();
        assert_eq!(f3.size(), 4);
        for j in 1..4 {
            assert!(f3.less(0, j));
            for j2 in 1..4 {
                assert!(j == j2 || !f3.less(j, j2));
            }
        }

        assert!(make_pattern(PatternKind::Fork(1)).is_err());
        assert!(make_pattern(PatternKind::Chain(0)).is_err());
        assert!(make_pattern(PatternKind::KDiamond(7)).is_err());
    }

    #[test]
    fn diamond_containment() {
        // The whole lattice 2^[2] is the diamond itself.
        assert!(contains_pattern(&fam(2, &[0, 1, 2, 3]), &diamond()).is_some());
        // Two adjacent middle layers never contain a diamond.
        for n in 2..=8 {
            let f = middle_layers(n, 2).unwrap();
            assert!(contains_pattern(&f, &diamond()).is_none(), "n={n}");
        }
        // A 4-chain contains a weak diamond.
        let four_chain = fam(3, &[0b000, 0b001, 0b011, 0b111]);
        let w = contains_pattern(&four_chain, &diamond()).unwrap();
        assert!(w.mapping[0].is_strict_subset_of(w.mapping[1]));
        assert!(w.mapping[0].is_strict_subset_of(w.mapping[2]));
        assert!(w.mapping[1].is_strict_subset_of(w.mapping[3]));
        assert!(w.mapping[2].is_strict_subset_of(w.mapping[3]));
    }

    #[test]
    fn fast_diamond_check() {
        assert!(!is_diamond_free(&fam(2, &[0, 1, 2, 3])));
        // Any family of at most three sets is diamond-free.
        assert!(is_diamond_free(&fam(3, &[0b001, 0b011, 0b111])));
        // {∅,{1},{2},{1,3},{2,3}}: every pair A ⊊ D has at most one member
        // strictly between, so no diamond.
        let f = fam(3, &[0b000, 0b001, 0b010, 0b101, 0b110]);
        assert!(is_diamond_free(&f));
        assert!(contains_pattern(&f, &diamond()).is_none());
    }

    #[test]
    fn e_values() {
        let d = diamond();
        assert_eq!(e_value(&d, 6).unwrap(), 2);
        for n in 2..=7 {
            assert_eq!(e_value(&d, n).unwrap(), 2, "n={n}");
        }
        let c2 = make_pattern(PatternKind::Chain(2)).unwrap();
        for n in 1..=7 {
            assert_eq!(e_value(&c2, n).unwrap(), 1);
        }
        let c4 = make_pattern(PatternKind::Chain(4)).unwrap();
        assert_eq!(e_value(&c4, 8).unwrap(), 3);
        let c1 = make_pattern(PatternKind::Chain(1)).unwrap();
        assert_eq!(e_value(&c1, 3).unwrap(), 0);
    }

    #[test]
    fn longest_chain_matches_pattern_test() {
        let f = fam(4, &[0b0000, 0b0001, 0b0011, 0b0111, 0b1010]);
        assert_eq!(longest_chain(&f), 4);
        for k in 1..=6u32 {
            let p = make_pattern(PatternKind::Chain(k)).unwrap();
            assert_eq!(
                contains_pattern(&f, &p).is_some(),
                longest_chain(&f) >= k as usize
            );
        }
    }
}
