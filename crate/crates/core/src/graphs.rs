//! The graph structure extracted from a set family and the chain-count
//! bound it certifies.
//!
//! From a family containing the empty set we read off the singleton set
//! `W`, the graph `G` on the remaining elements whose edges are the
//! two-element members, and one ordered bipartition `(X_w, Y_w)` of `V(G)`
//! per `w ∈ W`. The value `f(n, G, W)` computed from induced-subgraph
//! counts and the bipartitions upper-bounds the Lubell value minus 2.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::lattice::{factorial, falling, psi_census, ElementSet, Family};
use crate::patterns::is_diamond_free;
use crate::rational::{big_frac, Rational};

pub const MAX_GRAPH_VERTICES: usize = 32;
/// Bipartition enumeration walks `2^v` masks.
pub const MAX_BRACKET_VERTICES: usize = 22;

/// A simple graph on at most 32 vertices, as per-vertex neighbor bitmasks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    v: usize,
    adj: Vec<u32>,
}

/// Index of the vertex pair `{i, j}` in the triangular edge-mask encoding:
/// pairs ordered `{0,1},{0,2},{1,2},{0,3},…`.
pub fn pair_index(i: usize, j: usize) -> usize {
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    hi * (hi - 1) / 2 + lo
}

impl Graph {
    pub fn new(v: usize) -> Result<Graph, Error> {
        if v > MAX_GRAPH_VERTICES {
            return Err(Error::TooManyVertices {
                v,
                limit: MAX_GRAPH_VERTICES,
            });
        }
        Ok(Graph { v, adj: vec![0; v] })
    }

    pub fn from_edges(v: usize, edges: &[(usize, usize)]) -> Result<Graph, Error> {
        let mut g = Graph::new(v)?;
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Decodes a triangular edge mask (bit `pair_index(i,j)` set means edge).
    pub fn from_edge_mask(v: usize, mask: u64) -> Result<Graph, Error> {
        let mut g = Graph::new(v)?;
        for j in 1..v {
            for i in 0..j {
                if mask >> pair_index(i, j) & 1 == 1 {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<(), Error> {
        if a >= self.v || b >= self.v || a == b {
            return Err(Error::BadDimensions("edge endpoints out of range"));
        }
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
        Ok(())
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.v && b < self.v && self.adj[a] >> b & 1 == 1
    }

    pub fn adjacency(&self, u: usize) -> u32 {
        self.adj[u]
    }

    pub fn degree(&self, u: usize) -> u32 {
        self.adj[u].count_ones()
    }

    pub fn edge_count(&self) -> u32 {
        self.adj.iter().map(|m| m.count_ones()).sum::<u32>() / 2
    }

    pub fn full_mask(&self) -> u32 {
        if self.v == 0 {
            0
        } else {
            ((1u64 << self.v) - 1) as u32
        }
    }

    pub fn complement(&self) -> Graph {
        let full = self.full_mask();
        let adj = (0..self.v)
            .map(|u| full & !self.adj[u] & !(1 << u))
            .collect();
        Graph { v: self.v, adj }
    }

    /// Edges of the subgraph induced by `mask`.
    pub fn edges_inside(&self, mask: u32) -> u32 {
        let mut count = 0;
        let mut rest = mask;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            count += (self.adj[u] & rest).count_ones();
        }
        count
    }

    /// Nonedges of the subgraph induced by `mask` (the `ē` of the bound).
    pub fn nonedges_inside(&self, mask: u32) -> u32 {
        let k = mask.count_ones();
        k * k.saturating_sub(1) / 2 - self.edges_inside(mask)
    }

    /// Triangular edge mask of this graph.
    pub fn edge_mask(&self) -> u64 {
        let mut mask = 0u64;
        for j in 1..self.v {
            for i in 0..j {
                if self.has_edge(i, j) {
                    mask |= 1 << pair_index(i, j);
                }
            }
        }
        mask
    }

    /// The subgraph induced by `mask`, with vertices relabeled in ascending
    /// order of their original index.
    pub fn induced(&self, mask: u32) -> Graph {
        let verts: Vec<usize> = (0..self.v).filter(|&u| mask >> u & 1 == 1).collect();
        let mut g = Graph {
            v: verts.len(),
            adj: vec![0; verts.len()],
        };
        for (a, &ua) in verts.iter().enumerate() {
            for (b, &ub) in verts.iter().enumerate().skip(a + 1) {
                if self.has_edge(ua, ub) {
                    g.adj[a] |= 1 << b;
                    g.adj[b] |= 1 << a;
                }
            }
        }
        g
    }
}

/// Counts of induced three-vertex subgraphs by edge count (`alpha[i]`) and
/// four-vertex subgraphs by edge count (`beta[j]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphCensus {
    pub alpha: [u64; 4],
    pub beta: [u64; 7],
}

pub fn subgraph_census(g: &Graph) -> SubgraphCensus {
    let v = g.v();
    let mut alpha = [0u64; 4];
    let mut beta = [0u64; 7];
    for a in 0..v {
        for b in a + 1..v {
            let e_ab = g.has_edge(a, b) as u32;
            for c in b + 1..v {
                let e3 = e_ab + g.has_edge(a, c) as u32 + g.has_edge(b, c) as u32;
                alpha[e3 as usize] += 1;
                for d in c + 1..v {
                    let e4 = e3
                        + g.has_edge(a, d) as u32
                        + g.has_edge(b, d) as u32
                        + g.has_edge(c, d) as u32;
                    beta[e4 as usize] += 1;
                }
            }
        }
    }
    SubgraphCensus { alpha, beta }
}

/// An ordered bipartition `(X, Y)` of the vertex set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bipartition {
    x: u32,
    y: u32,
}

impl Bipartition {
    /// Splits the `v`-vertex set into `X = x_mask` and `Y` its complement.
    pub fn from_x(v: usize, x_mask: u32) -> Bipartition {
        let full = if v == 0 { 0 } else { ((1u64 << v) - 1) as u32 };
        Bipartition {
            x: x_mask & full,
            y: full & !x_mask,
        }
    }

    pub fn x(&self) -> u32 {
        self.x
    }

    pub fn y(&self) -> u32 {
        self.y
    }
}

/// The structure `(G, W)` of the chain-count bound: a graph plus one
/// ordered bipartition of its vertex set per element of `W`.
///
/// `vertex_labels[i]` is the ground-set element (1-based) behind vertex `i`;
/// `w_labels[k]` the element behind the `k`-th bipartition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureW {
    pub graph: Graph,
    pub parts: Vec<Bipartition>,
    pub vertex_labels: Vec<u32>,
    pub w_labels: Vec<u32>,
}

impl StructureW {
    /// Structure with default labels `1..=v` and `v+1..=v+|parts|`.
    pub fn new(graph: Graph, parts: Vec<Bipartition>) -> StructureW {
        let v = graph.v() as u32;
        let vertex_labels = (1..=v).collect();
        let w_labels = (v + 1..=v + parts.len() as u32).collect();
        StructureW {
            graph,
            parts,
            vertex_labels,
            w_labels,
        }
    }
}

/// Reads the structure off a family containing the empty set: `W` is the
/// set of singletons, `G` lives on the remaining elements with the
/// two-element members as edges, and `X_w` collects the vertices `x` with
/// `{x, w}` in the family.
pub fn extract_structure(family: &Family) -> Result<StructureW, Error> {
    if !family.contains_empty_set() {
        return Err(Error::EmptySetMissing);
    }
    let n = family.n();
    let mut w_elements: Vec<u32> = Vec::new();
    for m in family.iter() {
        if m.len() == 1 {
            w_elements.push(m.elements().next().unwrap());
        }
    }
    let vertex_labels: Vec<u32> = (1..=n)
        .filter(|e| !w_elements.contains(e))
        .collect();
    let v = vertex_labels.len();
    // vertex index of a ground element
    let index_of = |e: u32| vertex_labels.iter().position(|&x| x == e);

    let mut graph = Graph::new(v)?;
    for m in family.iter() {
        if m.len() == 2 {
            let mut it = m.elements();
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            if let (Some(ia), Some(ib)) = (index_of(a), index_of(b)) {
                graph.add_edge(ia, ib)?;
            }
        }
    }

    let mut parts = Vec::with_capacity(w_elements.len());
    for &w in &w_elements {
        let mut x_mask = 0u32;
        for (i, &x) in vertex_labels.iter().enumerate() {
            if family.contains(ElementSet::from_elements(&[x, w])) {
                x_mask |= 1 << i;
            }
        }
        parts.push(Bipartition::from_x(v, x_mask));
    }

    Ok(StructureW {
        graph,
        parts,
        vertex_labels,
        w_labels: w_elements,
    })
}

// Adds num/den to acc; a zero count contributes nothing, so degenerate
// denominators are only an error when they would actually divide something.
fn add_term(acc: &mut Rational, num: i64, den: BigInt) -> Result<(), Error> {
    if num == 0 {
        return Ok(());
    }
    if den.is_zero() {
        return Err(Error::BadDimensions("nonzero term over a zero falling factorial"));
    }
    *acc += big_frac(BigInt::from(num), den);
    Ok(())
}

/// The bound value
/// `f(n,G,W) = (2α₁−2α₂)/(n)₃ + 6β₀/(n)₄ + Σ_w [(|X_w|−|Y_w|)/(n)₂ + (4ē(Y_w)−2ē(X_w))/(n)₃]`.
pub fn f_value(n: u32, s: &StructureW) -> Result<Rational, Error> {
    let v = s.graph.v();
    if v as u32 > n {
        return Err(Error::BadDimensions("graph has more vertices than ground elements"));
    }
    let n = n as i64;
    let census = subgraph_census(&s.graph);
    let mut acc = Rational::zero();
    let alpha_diff = census.alpha[1] as i64 - census.alpha[2] as i64;
    add_term(&mut acc, 2 * alpha_diff, falling(n, 3))?;
    add_term(&mut acc, 6 * census.beta[0] as i64, falling(n, 4))?;
    for part in &s.parts {
        let xs = part.x().count_ones() as i64;
        let ys = part.y().count_ones() as i64;
        let ebar_x = s.graph.nonedges_inside(part.x()) as i64;
        let ebar_y = s.graph.nonedges_inside(part.y()) as i64;
        add_term(&mut acc, xs - ys, falling(n, 2))?;
        add_term(&mut acc, 4 * ebar_y - 2 * ebar_x, falling(n, 3))?;
    }
    Ok(acc)
}

// The epsilon correction as a single fraction over 12(n)₃, given |Y ∩ H|
// and the combined nonedge numerator 2ē(H) + 4ē(Y∩H) − 2ē(X∩H).
pub(crate) fn epsilon_value(n: i64, v: i64, y_card: i64, combined: i64) -> Rational {
    let num = -6 * y_card * v * (n - 2) + v * (v - 1) * combined;
    if num == 0 {
        return Rational::zero();
    }
    big_frac(BigInt::from(num), BigInt::from(12) * falling(n, 3))
}

// epsilon(n, w, G, H) from the subgraph counts it depends on.
pub(crate) fn epsilon_from_counts(
    n: i64,
    v: i64,
    y_card: i64,
    ebar_h: i64,
    ebar_y: i64,
    ebar_x: i64,
) -> Rational {
    epsilon_value(n, v, y_card, 2 * ebar_h + 4 * ebar_y - 2 * ebar_x)
}

/// The per-4-subgraph rewrite of [`f_value`]: averages a density over all
/// four-vertex subsets of `V(G)`. An exact algebraic identity — this always
/// equals `f_value(n, s)` when `v ≥ 4`.
pub fn per_h_sum(n: u32, s: &StructureW) -> Result<Rational, Error> {
    let v = s.graph.v();
    if v < 4 {
        return Err(Error::TooFewVertices { v, needed: 4 });
    }
    if v as u32 > n {
        return Err(Error::BadDimensions("graph has more vertices than ground elements"));
    }
    let g = &s.graph;
    let n = n as i64;
    let vi = v as i64;
    let w_count = s.parts.len() as i64;

    let n3 = falling(n, 3);
    let n4 = falling(n, 4);
    let v3 = falling(vi, 3);
    let v4 = falling(vi, 4);

    let mut total = Rational::zero();
    for h in crate::lattice::subsets_of_size(v as u32, 4) {
        let hmask = h.bits();
        // Induced alpha counts inside the quadruple.
        let mut alpha_diff = 0i64;
        let verts: Vec<usize> = (0..v).filter(|&u| hmask >> u & 1 == 1).collect();
        for a in 0..4 {
            for b in a + 1..4 {
                for c in b + 1..4 {
                    let e3 = g.has_edge(verts[a], verts[b]) as i64
                        + g.has_edge(verts[a], verts[c]) as i64
                        + g.has_edge(verts[b], verts[c]) as i64;
                    if e3 == 1 {
                        alpha_diff += 1;
                    } else if e3 == 2 {
                        alpha_diff -= 1;
                    }
                }
            }
        }
        let e_h = g.edges_inside(hmask) as i64;
        let ebar_h = 6 - e_h;
        let beta0 = (e_h == 0) as i64;

        let mut d = Rational::zero();
        if alpha_diff != 0 {
            d += big_frac(BigInt::from(alpha_diff) * &v3, BigInt::from(12) * &n3);
        }
        if beta0 != 0 {
            d += big_frac(v4.clone(), BigInt::from(4) * &n4);
        }
        if w_count != 0 {
            d += big_frac(BigInt::from(w_count * vi), falling(n, 2));
            if ebar_h != 0 {
                d -= big_frac(
                    BigInt::from(w_count) * falling(vi, 2) * BigInt::from(ebar_h),
                    BigInt::from(6) * &n3,
                );
            }
        }
        for part in &s.parts {
            let ymask = part.y() & hmask;
            let xmask = part.x() & hmask;
            d += epsilon_from_counts(
                n,
                vi,
                ymask.count_ones() as i64,
                ebar_h,
                g.nonedges_inside(ymask) as i64,
                g.nonedges_inside(xmask) as i64,
            );
        }
        total += d;
    }
    Ok(total / big_frac(crate::lattice::binomial(v as u64, 4), BigInt::from(1)))
}

/// Integer numerator of the per-`w` bracket over the common denominator
/// `(n)₃`: `(|X|−|Y|)(n−2) + 4ē(Y) − 2ē(X)`.
pub fn bracket_numerator(n: u32, g: &Graph, x_mask: u32) -> i64 {
    let part = Bipartition::from_x(g.v(), x_mask);
    let xs = part.x().count_ones() as i64;
    let ys = part.y().count_ones() as i64;
    let ebar_x = g.nonedges_inside(part.x()) as i64;
    let ebar_y = g.nonedges_inside(part.y()) as i64;
    (xs - ys) * (n as i64 - 2) + 4 * ebar_y - 2 * ebar_x
}

/// The exact bracket value `(|X|−|Y|)/(n)₂ + (4ē(Y)−2ē(X))/(n)₃` of one
/// bipartition.
pub fn bracket_value(n: u32, g: &Graph, part: &Bipartition) -> Result<Rational, Error> {
    let num = bracket_numerator(n, g, part.x());
    if num == 0 {
        return Ok(Rational::zero());
    }
    let den = falling(n as i64, 3);
    if den.is_zero() {
        return Err(Error::BadDimensions("bracket needs n >= 3"));
    }
    Ok(big_frac(BigInt::from(num), den))
}

/// Maximum of the bracket over all `2^v` ordered bipartitions, with an
/// achieving bipartition (the smallest `X` mask on ties).
///
/// `f` is affine in each bipartition slot, so the supremum of `f` over all
/// choices of `W` is the structure terms plus `|W|` times this maximum.
pub fn max_bracket(n: u32, g: &Graph) -> Result<(Rational, Bipartition), Error> {
    let v = g.v();
    if v > MAX_BRACKET_VERTICES {
        return Err(Error::TooManyVertices {
            v,
            limit: MAX_BRACKET_VERTICES,
        });
    }
    let mut best_num = i64::MIN;
    let mut best_mask = 0u32;
    for x_mask in 0..(1u64 << v) {
        let num = bracket_numerator(n, g, x_mask as u32);
        if num > best_num {
            best_num = num;
            best_mask = x_mask as u32;
        }
    }
    let part = Bipartition::from_x(v, best_mask);
    Ok((bracket_value(n, g, &part)?, part))
}

/// Both sides of the two full-chain count inequalities, evaluated exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiBoundsReport {
    pub n: u32,
    pub psi1: u64,
    pub psi2: u64,
    pub psi3: u64,
    /// Lower bound for `|Ψ₁|`: `(n−3)!·(2α₂ + Σ_w [|X||Y| + 2e(Y) + 2ē(X) + (|W|−1)|Y|])`.
    pub psi1_lower: BigInt,
    /// Upper bound for `|Ψ₃|−|Ψ₁|`:
    /// `(n−3)!·(2(α₁−α₂) + 6β₀/(n−3) + Σ_w [(|X|−|Y|)(n−2) + 4ē(Y) − 2ē(X)])`.
    pub diff_upper: Rational,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

impl PsiBoundsReport {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds
    }
}

/// Checks the two chain-count inequalities behind the Lubell bound on a
/// diamond-free family containing the empty set.
pub fn psi_bounds_check(family: &Family) -> Result<PsiBoundsReport, Error> {
    let n = family.n();
    if !family.contains_empty_set() {
        return Err(Error::EmptySetMissing);
    }
    if !is_diamond_free(family) {
        return Err(Error::NotDiamondFree);
    }
    if n > 9 {
        return Err(Error::UniverseTooLarge { n, limit: 9 });
    }
    if n < 3 {
        return Err(Error::BadDimensions("psi bounds need n >= 3"));
    }

    let census = psi_census(family)?;
    let s = extract_structure(family)?;
    let counts = subgraph_census(&s.graph);
    let ni = n as i64;

    let mut rhs1 = 2 * counts.alpha[2] as i64;
    let mut base2 = 2 * (counts.alpha[1] as i64 - counts.alpha[2] as i64);
    let w_count = s.parts.len() as i64;
    for part in &s.parts {
        let xs = part.x().count_ones() as i64;
        let ys = part.y().count_ones() as i64;
        let e_y = s.graph.edges_inside(part.y()) as i64;
        let ebar_x = s.graph.nonedges_inside(part.x()) as i64;
        let ebar_y = s.graph.nonedges_inside(part.y()) as i64;
        rhs1 += xs * ys + 2 * e_y + 2 * ebar_x + (w_count - 1) * ys;
        base2 += (xs - ys) * (ni - 2) + 4 * ebar_y - 2 * ebar_x;
    }

    let fact = factorial(n - 3);
    let psi1_lower = &fact * BigInt::from(rhs1);
    let mut diff_upper = big_frac(&fact * BigInt::from(base2), BigInt::from(1));
    let beta0 = counts.beta[0] as i64;
    if beta0 != 0 {
        // beta0 > 0 forces v >= 4, so n - 3 > 0 here.
        diff_upper += big_frac(&fact * BigInt::from(6 * beta0), BigInt::from(ni - 3));
    }

    let psi1 = census.count(1);
    let psi3 = census.count(3);
    let diff = big_frac(
        BigInt::from(psi3 as i64 - psi1 as i64),
        BigInt::from(1),
    );

    Ok(PsiBoundsReport {
        n,
        psi1,
        psi2: census.count(2),
        psi3,
        lower_holds: BigInt::from(psi1) >= psi1_lower,
        upper_holds: diff <= diff_upper,
        psi1_lower,
        diff_upper,
    })
}
