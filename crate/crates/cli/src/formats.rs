//! Text formats for families, graphs/structures, patterns and exact
//! rationals.
//!
//! Family files: first line `n=<int>`, then one set per line as
//! comma-separated elements in ascending order, `{}` for the empty set.
//!
//! Graph files: first line `v=<int>`, then one edge `i j` per line,
//! 1-indexed. Structure files extend graph files with optional lines
//! `w: 1,3` (or `w: -` for an empty `X`) adding one bipartition each.

use anyhow::{anyhow, bail, ensure, Context, Result};
use diamondlab_core::graphs::{Bipartition, Graph, StructureW};
use diamondlab_core::lattice::{ElementSet, Family};
use diamondlab_core::patterns::PatternKind;
use diamondlab_core::Rational;
use std::fmt::Write as _;

/// Renders an exact rational as `p/q`, always with an explicit denominator.
pub fn rational_str(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_family(text: &str) -> Result<Family> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().context("family file is empty")?;
    let n: u32 = header
        .strip_prefix("n=")
        .context("family file must start with `n=<int>`")?
        .trim()
        .parse()
        .context("bad universe size")?;
    let mut members = Vec::new();
    for line in lines {
        members.push(parse_set(line, n)?);
    }
    Family::new(n, members).map_err(|e| anyhow!("invalid family: {e}"))
}

fn parse_set(line: &str, n: u32) -> Result<ElementSet> {
    let inner = line
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .unwrap_or(line);
    if inner.is_empty() {
        return Ok(ElementSet::EMPTY);
    }
    let mut elems = Vec::new();
    for part in inner.split(',') {
        let e: u32 = part.trim().parse().with_context(|| format!("bad element in `{line}`"))?;
        ensure!(e >= 1 && e <= n, "element {e} outside 1..={n}");
        if let Some(&prev) = elems.last() {
            ensure!(e > prev, "elements must be strictly ascending in `{line}`");
        }
        elems.push(e);
    }
    Ok(ElementSet::from_elements(&elems))
}

pub fn write_family(family: &Family) -> String {
    let mut out = format!("n={}\n", family.n());
    for m in family.iter() {
        if m.is_empty() {
            out.push_str("{}\n");
        } else {
            let elems: Vec<String> = m.elements().map(|e| e.to_string()).collect();
            let _ = writeln!(out, "{}", elems.join(","));
        }
    }
    out
}

/// Parses a graph file, returning the graph and any `w:` bipartition lines
/// as `X` masks.
pub fn parse_graph(text: &str) -> Result<(Graph, Vec<u32>)> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().context("graph file is empty")?;
    let v: usize = header
        .strip_prefix("v=")
        .context("graph file must start with `v=<int>`")?
        .trim()
        .parse()
        .context("bad vertex count")?;
    let mut graph = Graph::new(v).map_err(|e| anyhow!("{e}"))?;
    let mut x_masks = Vec::new();
    for line in lines {
        if let Some(rest) = line.strip_prefix("w:") {
            let rest = rest.trim();
            let mut mask = 0u32;
            if rest != "-" {
                for part in rest.split(',') {
                    let i: usize = part.trim().parse().with_context(|| format!("bad vertex in `{line}`"))?;
                    ensure!(i >= 1 && i <= v, "vertex {i} outside 1..={v}");
                    mask |= 1 << (i - 1);
                }
            }
            x_masks.push(mask);
            continue;
        }
        let mut it = line.split_whitespace();
        let a: usize = it.next().context("edge line needs two endpoints")?.parse()?;
        let b: usize = it
            .next()
            .with_context(|| format!("edge line `{line}` needs two endpoints"))?
            .parse()?;
        ensure!(it.next().is_none(), "trailing tokens in edge line `{line}`");
        ensure!(a >= 1 && a <= v && b >= 1 && b <= v, "edge endpoints outside 1..={v}");
        graph
            .add_edge(a - 1, b - 1)
            .map_err(|e| anyhow!("bad edge `{line}`: {e}"))?;
    }
    Ok((graph, x_masks))
}

/// Builds a structure from a parsed graph file: one bipartition per `w:`
/// line.
pub fn structure_from_graph(graph: Graph, x_masks: &[u32]) -> StructureW {
    let v = graph.v();
    let parts = x_masks
        .iter()
        .map(|&m| Bipartition::from_x(v, m))
        .collect();
    StructureW::new(graph, parts)
}

/// Pattern literals: `diamond`, `P<k>` (chain), `V<r>` (fork),
/// `D<k>` (k-diamond).
pub fn parse_pattern(s: &str) -> Result<PatternKind> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("diamond") {
        return Ok(PatternKind::Diamond);
    }
    let (head, num) = t.split_at(1);
    let k: u32 = num
        .parse()
        .with_context(|| format!("bad pattern literal `{s}`"))?;
    match head {
        "P" | "p" => Ok(PatternKind::Chain(k)),
        "V" | "v" => Ok(PatternKind::Fork(k)),
        "D" | "d" => Ok(PatternKind::KDiamond(k)),
        _ => bail!("unknown pattern literal `{s}` (expected diamond, P<k>, V<r> or D<k>)"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_round_trip() {
        let text = "n=3\n{}\n1\n1,2\n";
        let fam = parse_family(text).unwrap();
        assert_eq!(fam.len(), 3);
        assert_eq!(write_family(&fam), text);
    }

    #[test]
    fn family_rejects_garbage() {
        assert!(parse_family("").is_err());
        assert!(parse_family("n=2\n3\n").is_err()); // out of range
        assert!(parse_family("n=2\n2,1\n").is_err()); // not ascending
        assert!(parse_family("m=2\n").is_err());
    }

    #[test]
    fn graph_with_parts() {
        let (g, xs) = parse_graph("v=3\n1 2\n2 3\nw: 1,3\nw: -\n").unwrap();
        assert_eq!(g.v(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(xs, vec![0b101, 0]);
    }

    #[test]
    fn pattern_literals() {
        assert_eq!(parse_pattern("diamond").unwrap(), PatternKind::Diamond);
        assert_eq!(parse_pattern("P4").unwrap(), PatternKind::Chain(4));
        assert_eq!(parse_pattern("V3").unwrap(), PatternKind::Fork(3));
        assert_eq!(parse_pattern("D5").unwrap(), PatternKind::KDiamond(5));
        assert!(parse_pattern("Q2").is_err());
    }
}
