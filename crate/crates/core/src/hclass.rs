//! The eleven isomorphism classes of graphs on exactly four vertices.
//!
//! `H0, H1, H5, H6` have 0, 1, 5, 6 edges; `Hwedge`/`Hpar` are the two
//! two-edge graphs (incident vs. nonincident edges), with complements `Hq`
//! and `Cyc`; the three-edge graphs are the claw, the path and the triangle
//! (plus an isolated vertex).

use crate::error::Error;
use crate::graphs::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HClass {
    H0,
    H1,
    Hwedge,
    Hpar,
    Claw,
    Path,
    Tri,
    Cyc,
    Hq,
    H5,
    H6,
}

/// All classes in table order.
pub const ALL_CLASSES: [HClass; 11] = [
    HClass::H0,
    HClass::H1,
    HClass::Hwedge,
    HClass::Hpar,
    HClass::Claw,
    HClass::Path,
    HClass::Tri,
    HClass::Cyc,
    HClass::Hq,
    HClass::H5,
    HClass::H6,
];

impl HClass {
    pub fn label(self) -> &'static str {
        match self {
            HClass::H0 => "H0",
            HClass::H1 => "H1",
            HClass::Hwedge => "Hwedge",
            HClass::Hpar => "Hpar",
            HClass::Claw => "claw",
            HClass::Path => "path",
            HClass::Tri => "triangle",
            HClass::Cyc => "cycle",
            HClass::Hq => "Hq",
            HClass::H5 => "H5",
            HClass::H6 => "H6",
        }
    }

    pub fn edge_count(self) -> u32 {
        match self {
            HClass::H0 => 0,
            HClass::H1 => 1,
            HClass::Hwedge | HClass::Hpar => 2,
            HClass::Claw | HClass::Path | HClass::Tri => 3,
            HClass::Cyc | HClass::Hq => 4,
            HClass::H5 => 5,
            HClass::H6 => 6,
        }
    }

    pub fn nonedge_count(self) -> u32 {
        6 - self.edge_count()
    }

    /// The weight `c(H)` of the squared flag forms (the coefficient of
    /// gamma assigned to each four-vertex subgraph of the class).
    pub fn c_weight(self) -> i64 {
        let (a, b) = self.c_weight_contributions();
        a + b
    }

    /// The per-class contributions of the nonedge-pair sum and the
    /// edge-pair sum whose total is [`c_weight`].
    pub fn c_weight_contributions(self) -> (i64, i64) {
        match self {
            HClass::H0 => (0, 0),
            HClass::H1 => (0, 4),
            HClass::Hwedge => (4, 0),
            HClass::Hpar => (-16, 8),
            HClass::Claw => (0, 0),
            HClass::Path => (-4, 0),
            HClass::Tri => (12, -12),
            HClass::Cyc => (0, 0),
            HClass::Hq => (0, -4),
            HClass::H5 => (0, 4),
            HClass::H6 => (0, 24),
        }
    }

    /// Canonical representative on vertices `{0,1,2,3}`.
    pub fn representative(self) -> Graph {
        let edges: &[(usize, usize)] = match self {
            HClass::H0 => &[],
            HClass::H1 => &[(0, 1)],
            HClass::Hwedge => &[(0, 1), (0, 2)],
            HClass::Hpar => &[(0, 1), (2, 3)],
            HClass::Claw => &[(0, 1), (0, 2), (0, 3)],
            HClass::Path => &[(0, 1), (1, 2), (2, 3)],
            HClass::Tri => &[(0, 1), (0, 2), (1, 2)],
            HClass::Cyc => &[(0, 1), (1, 2), (2, 3), (0, 3)],
            HClass::Hq => &[(0, 3), (1, 2), (1, 3), (2, 3)],
            HClass::H5 => &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
            HClass::H6 => &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
        };
        Graph::from_edges(4, edges).unwrap()
    }

    /// Classifies a four-vertex graph by edge count and degree multiset;
    /// this separates all eleven classes.
    pub fn classify(g: &Graph) -> Result<HClass, Error> {
        if g.v() != 4 {
            return Err(Error::BadDimensions("classification needs exactly 4 vertices"));
        }
        let mut degs = [0u32; 4];
        for (u, d) in degs.iter_mut().enumerate() {
            *d = g.degree(u);
        }
        degs.sort_unstable();
        let edges = g.edge_count();
        Ok(match edges {
            0 => HClass::H0,
            1 => HClass::H1,
            2 => {
                if degs[3] == 2 {
                    HClass::Hwedge
                } else {
                    HClass::Hpar
                }
            }
            3 => match degs {
                [1, 1, 1, 3] => HClass::Claw,
                [1, 1, 2, 2] => HClass::Path,
                _ => HClass::Tri,
            },
            4 => {
                if degs == [2, 2, 2, 2] {
                    HClass::Cyc
                } else {
                    HClass::Hq
                }
            }
            5 => HClass::H5,
            _ => HClass::H6,
        })
    }

    /// Classifies the subgraph induced by four vertices of a larger graph.
    pub fn classify_quad(g: &Graph, quad: [usize; 4]) -> HClass {
        let mut degs = [0u32; 4];
        let mut edges = 0u32;
        for a in 0..4 {
            for b in a + 1..4 {
                if g.has_edge(quad[a], quad[b]) {
                    edges += 1;
                    degs[a] += 1;
                    degs[b] += 1;
                }
            }
        }
        degs.sort_unstable();
        match edges {
            0 => HClass::H0,
            1 => HClass::H1,
            2 => {
                if degs[3] == 2 {
                    HClass::Hwedge
                } else {
                    HClass::Hpar
                }
            }
            3 => match degs {
                [1, 1, 1, 3] => HClass::Claw,
                [1, 1, 2, 2] => HClass::Path,
                _ => HClass::Tri,
            },
            4 => {
                if degs == [2, 2, 2, 2] {
                    HClass::Cyc
                } else {
                    HClass::Hq
                }
            }
            5 => HClass::H5,
            _ => HClass::H6,
        }
    }
}
