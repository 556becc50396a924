//! Exact-arithmetic combinatorics of diamond-free families in the Boolean
//! lattice.
//!
//! Everything here is computed over exact rationals (arbitrary-precision
//! integers underneath); no floating point is used anywhere. The crate is
//! `no_std` + `alloc`: IO, file formats and the CLI live in the companion
//! `diamondlab` crate.
//!
//! The main pieces:
//!
//! * [`lattice`] — subsets of `[n]` as bitmasks, families, Lubell values,
//!   binomials/falling factorials, middle layers, and exhaustive full-chain
//!   censuses.
//! * [`patterns`] — small abstract posets (chains, forks, diamonds) and weak
//!   subposet containment tests against families.
//! * [`search`] — exhaustive / branch-and-bound oracles for the largest
//!   pattern-free family and the largest Lubell value of a diamond-free
//!   family containing the empty set.
//! * [`graphs`] — the graph structure `(G, W, (X_w, Y_w))` extracted from a
//!   family, induced-subgraph censuses, the bound `f(n, G, W)` and its
//!   per-4-subgraph rewrite, and full-chain count inequalities.
//! * [`hclass`] — the eleven isomorphism classes of graphs on four vertices.
//! * [`certificate`] — the closed-form certificate tables (epsilon rows,
//!   `d*`, squared flag forms, `g_H` polynomials) and the exhaustive
//!   small-graph scans that verify the `1/4` bound.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod certificate;
pub mod error;
pub mod graphs;
pub mod hclass;
pub mod lattice;
pub mod patterns;
pub mod rational;
pub mod search;

pub use error::Error;
pub use rational::Rational;
