//! Subsets of `[n]`, families, exact binomials, Lubell values, middle
//! layers, and exhaustive full-chain censuses of the Boolean lattice.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::rational::{big_frac, Rational};

/// Largest universe for family work (bitmask fits comfortably in a word).
pub const MAX_FAMILY_UNIVERSE: u32 = 24;
/// Largest universe for exhaustive chain enumeration (`n!` permutations).
pub const MAX_CENSUS_UNIVERSE: u32 = 10;

/// A subset of `[n] = {1, …, n}`; bit `i` set means element `i + 1` is in.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ElementSet(u32);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn from_bits(bits: u32) -> ElementSet {
        ElementSet(bits)
    }

    /// Builds a set from 1-based elements.
    pub fn from_elements(elements: &[u32]) -> ElementSet {
        let mut bits = 0u32;
        for &e in elements {
            debug_assert!((1..=MAX_FAMILY_UNIVERSE).contains(&e));
            bits |= 1 << (e - 1);
        }
        ElementSet(bits)
    }

    /// The full set `[n]`.
    pub fn full(n: u32) -> ElementSet {
        debug_assert!(n <= MAX_FAMILY_UNIVERSE);
        ElementSet(if n == 0 { 0 } else { (1u32 << n) - 1 })
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    /// Cardinality.
    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Membership of the 1-based element `e`.
    pub fn contains(self, e: u32) -> bool {
        e >= 1 && (self.0 >> (e - 1)) & 1 == 1
    }

    pub fn with(self, e: u32) -> ElementSet {
        debug_assert!(e >= 1);
        ElementSet(self.0 | (1 << (e - 1)))
    }

    pub fn is_subset_of(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_strict_subset_of(self, other: ElementSet) -> bool {
        self.0 != other.0 && self.is_subset_of(other)
    }

    /// 1-based elements in ascending order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let tz = bits.trailing_zeros();
                bits &= bits - 1;
                Some(tz + 1)
            }
        })
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for e in self.elements() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// A deduplicated set family in the Boolean lattice of dimension `n`.
///
/// Members are kept strictly sorted by bitmask value, so membership is a
/// binary search and equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    n: u32,
    members: Vec<ElementSet>,
}

impl Family {
    pub fn new(n: u32, members: impl IntoIterator<Item = ElementSet>) -> Result<Family, Error> {
        if n > MAX_FAMILY_UNIVERSE {
            return Err(Error::UniverseTooLarge {
                n,
                limit: MAX_FAMILY_UNIVERSE,
            });
        }
        let full = ElementSet::full(n);
        let mut members: Vec<ElementSet> = members.into_iter().collect();
        for m in &members {
            if !m.is_subset_of(full) {
                return Err(Error::BadDimensions("family member not a subset of [n]"));
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(Family { n, members })
    }

    pub fn from_masks(n: u32, masks: impl IntoIterator<Item = u32>) -> Result<Family, Error> {
        Family::new(n, masks.into_iter().map(ElementSet::from_bits))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn contains(&self, s: ElementSet) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn contains_empty_set(&self) -> bool {
        self.contains(ElementSet::EMPTY)
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.members.iter().copied()
    }
}

/// Binomial coefficient `C(n, k)`; zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let mut k = k as u64;
    if k > n - k {
        k = n - k;
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Falling factorial `(n)_k = n(n−1)⋯(n−k+1)`, with `(n)_0 = 1`.
pub fn falling(n: i64, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        acc *= BigInt::from(n - i);
    }
    acc
}

/// Falling factorial of a rational argument.
pub fn falling_rat(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k as i64 {
        acc *= x - Rational::from_integer(BigInt::from(i));
    }
    acc
}

/// `n!`.
pub fn factorial(n: u32) -> BigInt {
    falling(n as i64, n)
}

/// Sum of the `k` largest binomial coefficients `C(n, l)`; equals `2^n`
/// once `k` reaches `n + 1`.
pub fn sum_largest_binomials(n: u64, k: u64) -> BigInt {
    let k = k.min(n + 1);
    if k == 0 {
        return BigInt::zero();
    }
    // The k largest coefficients are the k middle ones.
    let lo = (n + 1 - k) / 2;
    let mut acc = BigInt::zero();
    for l in lo..lo + k {
        acc += binomial(n, l as i64);
    }
    acc
}

/// The Lubell value `Σ_{F∈𝓕} C(n, |F|)^{-1}` of a family, exactly.
pub fn lubell(family: &Family) -> Rational {
    let n = family.n() as u64;
    let mut acc = Rational::zero();
    for m in family.iter() {
        acc += big_frac(BigInt::one(), binomial(n, m.len() as i64));
    }
    acc
}

/// Iterates the `k`-element subsets of `[n]` in ascending mask order
/// (Gosper's hack).
pub fn subsets_of_size(n: u32, k: u32) -> impl Iterator<Item = ElementSet> {
    let limit = 1u64 << n;
    let mut cur = if k > n {
        limit // exhausted immediately
    } else if k == 0 {
        0
    } else {
        (1u64 << k) - 1
    };
    let mut done = false;
    core::iter::from_fn(move || {
        if done || cur >= limit {
            return None;
        }
        let out = ElementSet::from_bits(cur as u32);
        if cur == 0 {
            done = true;
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            cur = (((r ^ cur) >> 2) / c) | r;
        }
        Some(out)
    })
}

/// The union of the `k` middle layers of the Boolean lattice of dimension
/// `n`: sizes `⌊(n−k+1)/2⌋ … ⌊(n+k−1)/2⌋`.
///
/// When the two parities give different unions the floor variant is the one
/// produced here, always.
pub fn middle_layers(n: u32, k: u32) -> Result<Family, Error> {
    if k < 1 || k > n + 1 {
        return Err(Error::BadParameter("middle_layers needs 1 <= k <= n+1"));
    }
    if n > MAX_FAMILY_UNIVERSE {
        return Err(Error::UniverseTooLarge {
            n,
            limit: MAX_FAMILY_UNIVERSE,
        });
    }
    let lo = (n + 1 - k) / 2;
    let hi = lo + k - 1;
    let mut members = Vec::new();
    for size in lo..=hi {
        members.extend(subsets_of_size(n, size));
    }
    Family::new(n, members)
}

/// Census of full chains by how many members of a family they contain.
///
/// `counts[i]` is the number of full chains (equivalently, permutations of
/// `[n]`) meeting the family exactly `i` times; indices run `0 ..= n+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiCensus {
    n: u32,
    counts: Vec<u64>,
}

impl PsiCensus {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, i: usize) -> u64 {
        self.counts.get(i).copied().unwrap_or(0)
    }

    /// Total number of full chains, `n!`.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `Σ i·counts[i] / n!` — the Lubell value recovered from the census.
    pub fn lubell(&self) -> Rational {
        let mut hits = BigInt::zero();
        for (i, &c) in self.counts.iter().enumerate() {
            hits += BigInt::from(i as u64) * BigInt::from(c);
        }
        big_frac(hits, factorial(self.n))
    }
}

/// Exhaustive full-chain census: walks all `n!` maximal chains (as
/// permutation prefixes) and tallies how many members of `family` each one
/// contains.
pub fn psi_census(family: &Family) -> Result<PsiCensus, Error> {
    let n = family.n();
    if n > MAX_CENSUS_UNIVERSE {
        return Err(Error::UniverseTooLarge {
            n,
            limit: MAX_CENSUS_UNIVERSE,
        });
    }
    let words = 1usize.max((1usize << n) / 64);
    let mut membership = vec![0u64; words];
    for m in family.iter() {
        let b = m.bits() as usize;
        membership[b / 64] |= 1 << (b % 64);
    }
    let is_member = |mask: u32| -> usize {
        let b = mask as usize;
        ((membership[b / 64] >> (b % 64)) & 1) as usize
    };

    let mut counts = vec![0u64; (n + 2) as usize];
    let full = ElementSet::full(n).bits();

    fn walk(
        is_member: &dyn Fn(u32) -> usize,
        remaining: u32,
        prefix: u32,
        hits: usize,
        counts: &mut [u64],
    ) {
        if remaining == 0 {
            counts[hits] += 1;
            return;
        }
        let mut rem = remaining;
        while rem != 0 {
            let bit = rem & rem.wrapping_neg();
            rem &= rem - 1;
            let next = prefix | bit;
            walk(is_member, remaining & !bit, next, hits + is_member(next), counts);
        }
    }

    let initial_hits = is_member(0);
    walk(&is_member, full, 0, initial_hits, &mut counts);
    Ok(PsiCensus { n, counts })
}
