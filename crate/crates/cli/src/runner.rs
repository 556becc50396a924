//! Verification runners: each builds a [`Report`] from a core check, with
//! fixed work chunking so results are byte-identical for any thread count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use anyhow::{anyhow, bail, Result};
use diamondlab_core::certificate::{
    self, epsilon_row_nonpositive, epsilon_row_numerator, g_reference_maxima, gamma, EpsilonCheck,
    Lemma3Chunk,
};
use diamondlab_core::graphs::{extract_structure, f_value, per_h_sum, psi_bounds_check};
use diamondlab_core::hclass::ALL_CLASSES;
use diamondlab_core::lattice::{lubell, psi_census, Family};
use diamondlab_core::rational::{frac, int};
use diamondlab_core::Rational;

use crate::corpus;
use crate::formats::rational_str;
use crate::report::Report;

/// How a verification corpus is produced.
#[derive(Clone, Debug)]
pub enum CorpusMode {
    /// Every diamond-free family containing ∅ (only viable for `n ≤ 4`).
    Exhaustive,
    Random { count: usize, seed: u64 },
}

fn corpus_families(n: u32, mode: &CorpusMode) -> Result<(Vec<Family>, String)> {
    match mode {
        CorpusMode::Exhaustive => {
            if n > 4 {
                bail!("exhaustive corpus needs n <= 4 (got n={n})");
            }
            let families = corpus::exhaustive_diamond_free_with_empty(n);
            let desc = format!("exhaustive corpus, n={n}, {} families", families.len());
            Ok((families, desc))
        }
        CorpusMode::Random { count, seed } => {
            if !(2..=7).contains(&n) {
                bail!("random corpus needs 2 <= n <= 7 (got n={n})");
            }
            let families = corpus::random_diamond_free_families(n, *count, *seed);
            let desc = format!("random corpus, n={n}, {count} families, seed={seed}");
            Ok((families, desc))
        }
    }
}

/// Distributes `inputs` over worker threads; `outputs[i]` is always the
/// result for `inputs[i]`, so downstream merging is schedule-independent.
pub fn run_indexed<C: Send, R: Send>(
    inputs: Vec<C>,
    threads: usize,
    f: impl Fn(C) -> R + Sync,
) -> Vec<R> {
    let threads = threads.max(1);
    if threads == 1 || inputs.len() <= 1 {
        return inputs.into_iter().map(f).collect();
    }
    let slots: Vec<Mutex<Option<C>>> = inputs.into_iter().map(|c| Mutex::new(Some(c))).collect();
    let results: Vec<Mutex<Option<R>>> = (0..slots.len()).map(|_| Mutex::new(None)).collect();
    let cursor = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = cursor.fetch_add(1, Ordering::Relaxed);
                if i >= slots.len() {
                    break;
                }
                let input = slots[i].lock().unwrap().take().unwrap();
                let output = f(input);
                *results[i].lock().unwrap() = Some(output);
            });
        }
    });
    results
        .into_iter()
        .map(|m| m.into_inner().unwrap().unwrap())
        .collect()
}

/// The chain-census identity and the structure bound on a family corpus:
/// `Λ = 2 + (|Ψ₃|−|Ψ₁|)/n!` and `Λ ≤ 2 + f(n, G, W)`.
pub fn lemma2_report(n: u32, mode: &CorpusMode) -> Result<Report> {
    let (families, desc) = corpus_families(n, mode)?;
    let mut report = Report::new("lemma2");
    report.notes.push(desc);
    let mut min_slack: Option<Rational> = None;
    let mut tight = 0u64;
    for family in &families {
        let lam = lubell(family);
        let census = psi_census(family).map_err(|e| anyhow!("{e}"))?;
        let expected = int(2)
            + frac(
                census.count(3) as i64 - census.count(1) as i64,
                census.total() as i64,
            );
        report.cases_checked += 1;
        if lam != expected {
            report.violations.push(format!(
                "census identity: n={n} family={:?} lubell={} identity={}",
                family.members(),
                rational_str(&lam),
                rational_str(&expected)
            ));
        }
        let structure = extract_structure(family).map_err(|e| anyhow!("{e}"))?;
        let bound = int(2) + f_value(n, &structure).map_err(|e| anyhow!("{e}"))?;
        report.cases_checked += 1;
        let slack = bound.clone() - lam.clone();
        if lam > bound {
            report.violations.push(format!(
                "structure bound: n={n} family={:?} lubell={} bound={}",
                family.members(),
                rational_str(&lam),
                rational_str(&bound)
            ));
        } else if slack == int(0) {
            tight += 1;
        }
        if min_slack.as_ref().is_none_or(|m| slack < *m) {
            min_slack = Some(slack);
        }
    }
    report.columns = vec!["metric".into(), "value".into()];
    report
        .rows
        .push(vec!["families".into(), families.len().to_string()]);
    if let Some(m) = min_slack {
        report
            .rows
            .push(vec!["min bound slack".into(), rational_str(&m)]);
    }
    report.rows.push(vec!["tight families".into(), tight.to_string()]);
    Ok(report)
}

/// The two chain-count inequalities on a family corpus.
pub fn psi_bounds_report(n: u32, mode: &CorpusMode) -> Result<Report> {
    if n < 3 {
        bail!("psi bounds need n >= 3");
    }
    let (families, desc) = corpus_families(n, mode)?;
    let mut report = Report::new("psi-bounds");
    report.notes.push(desc);
    for family in &families {
        let r = psi_bounds_check(family).map_err(|e| anyhow!("{e}"))?;
        report.cases_checked += 2;
        if !r.lower_holds {
            report.violations.push(format!(
                "psi1 lower bound: family={:?} psi1={} bound={}",
                family.members(),
                r.psi1,
                r.psi1_lower
            ));
        }
        if !r.upper_holds {
            report.violations.push(format!(
                "psi3-psi1 upper bound: family={:?} diff={} bound={}",
                family.members(),
                r.psi3 as i64 - r.psi1 as i64,
                rational_str(&r.diff_upper)
            ));
        }
    }
    report.columns = vec!["metric".into(), "value".into()];
    report
        .rows
        .push(vec!["families".into(), families.len().to_string()]);
    Ok(report)
}

/// The per-4-subgraph rewrite is an exact identity: `per_h_sum == f_value`
/// on a random structure corpus.
pub fn fh_report(count: usize, seed: u64) -> Result<Report> {
    let mut report = Report::new("fh-identity");
    report
        .notes
        .push(format!("random structures, count={count}, seed={seed}"));
    for (n, s) in corpus::random_structures(count, seed) {
        let direct = f_value(n, &s).map_err(|e| anyhow!("{e}"))?;
        let rewritten = per_h_sum(n, &s).map_err(|e| anyhow!("{e}"))?;
        report.cases_checked += 1;
        if direct != rewritten {
            report.violations.push(format!(
                "n={n} v={} |W|={}: f={} per-H={}",
                s.graph.v(),
                s.parts.len(),
                rational_str(&direct),
                rational_str(&rewritten)
            ));
        }
    }
    Ok(report)
}

fn epsilon_violation_str(v: &certificate::EpsilonViolation) -> String {
    let what = match v.check {
        EpsilonCheck::RowBound { y_card } => format!("row bound, |Y∩H|={y_card}"),
        EpsilonCheck::RowSign { y_card } => format!("row sign, |Y∩H|={y_card}"),
        EpsilonCheck::ClassBound => "class bound".into(),
    };
    format!(
        "epsilon {what}: n={} v={} class={} lhs={} rhs={}",
        v.n,
        v.v,
        v.class.label(),
        rational_str(&v.lhs),
        rational_str(&v.rhs)
    )
}

/// Raw epsilon against the closed-form rows and per-class bounds on a grid.
pub fn epsilon_report(n_lo: u32, n_hi: u32) -> Result<Report> {
    let out = certificate::epsilon_table_check(n_lo, n_hi).map_err(|e| anyhow!("{e}"))?;
    let mut report = Report::new("epsilon-tables");
    report.notes.push(format!("grid n in [{n_lo},{n_hi}], v in [4,n]"));
    report.cases_checked = out.cases;
    report.violations = out.violations.iter().map(epsilon_violation_str).collect();
    Ok(report)
}

/// The squared flag forms match their per-subgraph expansion:
/// `sq_forms(G) = Σ_H c(H) + 6α₁ + 6α₃`, on all labeled five-vertex graphs
/// plus a random corpus.
pub fn sq_report(count: usize, v_max: usize, seed: u64) -> Result<Report> {
    let mut report = Report::new("sq-identity");
    report.notes.push(format!(
        "all 1024 labeled graphs on 5 vertices + {count} random graphs with v<= {v_max}, seed={seed}"
    ));
    let mut check = |g: &diamondlab_core::graphs::Graph, label: &str| {
        let lhs = certificate::sq_forms(g);
        let rhs = certificate::sq_identity_rhs(g);
        report.cases_checked += 1;
        if lhs != rhs || lhs < 0 {
            report
                .violations
                .push(format!("{label}: sq={lhs} expansion={rhs}"));
        }
    };
    for mask in 0u64..1 << 10 {
        let g = diamondlab_core::graphs::Graph::from_edge_mask(5, mask)
            .map_err(|e| anyhow!("{e}"))?;
        check(&g, &format!("v=5 mask={mask}"));
    }
    for (i, g) in corpus::random_graphs(count, 2, v_max, seed).iter().enumerate() {
        check(g, &format!("random #{i} v={}", g.v()));
    }
    Ok(report)
}

/// Few-vertices regime: every `d*` row at most the edge-product bound.
pub fn case1_report(n_lo: u32, n_hi: u32) -> Result<Report> {
    let out = certificate::case1_check(n_lo, n_hi).map_err(|e| anyhow!("{e}"))?;
    let mut report = Report::new("case1");
    report
        .notes
        .push(format!("grid n in [{n_lo},{n_hi}], 4 <= v <= (2n-1)/3"));
    report.cases_checked = out.cases;
    report.violations = out
        .violations
        .iter()
        .map(|v| {
            let class = v.class.map_or("edge-product vs quarter".to_string(), |h| {
                format!("class {}", h.label())
            });
            format!(
                "case1 {class}: n={} v={} lhs={} rhs={}",
                v.n,
                v.v,
                rational_str(&v.lhs),
                rational_str(&v.rhs)
            )
        })
        .collect();
    Ok(report)
}

/// Chunked scan of the worst case of `f` over all small graphs against
/// `1/4 + 1/(4(n−3))`. Chunk boundaries are fixed, so the merged report is
/// identical for every thread count.
pub fn lemma3_report(v_max: u32, n_lo: u32, n_hi: u32, threads: usize) -> Result<Report> {
    const CHUNK: usize = 2048;
    let mut report = Report::new("lemma3");
    report.notes.push(format!(
        "all labeled graphs v<=min({v_max},6), canonical classes at v=7; n in [{n_lo},{n_hi}]"
    ));
    report.columns = vec!["v".into(), "graphs".into(), "enumeration".into()];

    let mut inputs: Vec<(u32, Vec<u64>)> = Vec::new();
    for v in 0..=v_max {
        let (masks, canonical) = certificate::lemma3_masks(v).map_err(|e| anyhow!("{e}"))?;
        report.rows.push(vec![
            v.to_string(),
            masks.len().to_string(),
            if canonical { "canonical".into() } else { "labeled".into() },
        ]);
        for chunk in masks.chunks(CHUNK) {
            inputs.push((v, chunk.to_vec()));
        }
    }

    let chunks: Vec<Result<Lemma3Chunk, diamondlab_core::Error>> =
        run_indexed(inputs, threads, |(v, masks)| {
            certificate::lemma3_check_masks(v, &masks, n_lo, n_hi)
        });
    let mut acc = Lemma3Chunk::default();
    for chunk in chunks {
        certificate::lemma3_merge(&mut acc, chunk.map_err(|e| anyhow!("{e}"))?);
    }

    report.cases_checked = acc.cases;
    for v in &acc.violations {
        report.violations.push(format!(
            "lemma3: v={} edge_mask={} n={} f={} bound={}",
            v.v,
            v.edge_mask,
            v.n,
            rational_str(&v.f),
            rational_str(&v.bound)
        ));
    }
    if let Some(w) = acc.worst {
        report.notes.push(format!(
            "worst f = {} at v={} edge_mask={} n={} (bound {})",
            rational_str(&w.f()),
            w.v,
            w.edge_mask,
            w.n,
            rational_str(&frac(w.n as i64 - 2, 4 * (w.n as i64 - 3)))
        ));
    }
    Ok(report)
}

/// The `g` envelope maxima: endpoint values match the reference table and
/// the rational grid never exceeds them.
pub fn gmax_report() -> Result<Report> {
    let out = certificate::g_max_check(3000).map_err(|e| anyhow!("{e}"))?;
    let mut report = Report::new("g-maxima");
    report.cases_checked = out.cases;
    report.columns = vec!["class".into(), "max".into(), "argmax".into()];
    for (h, max, argmax) in g_reference_maxima() {
        report.rows.push(vec![
            h.label().into(),
            rational_str(&max),
            rational_str(&argmax),
        ]);
    }
    report.notes.push(
        "h5 row constant is -5/24; the alternative -7/24 fails cross-checks against \
         the simplified rows and the stated maximum -127/648"
            .into(),
    );
    report.notes.push("grid step 1/3000 over [2/3, 1]".into());
    report.violations = out
        .violations
        .iter()
        .map(|v| {
            format!(
                "g-max: class={} x={} value={} max={}",
                v.class.label(),
                rational_str(&v.x),
                rational_str(&v.value),
                rational_str(&v.maximum)
            )
        })
        .collect();
    Ok(report)
}

/// The `c(H)` weight table with its two squared-form contributions, checked
/// against the expansion identity on every labeled graph with 4 or 5
/// vertices.
pub fn gamma_c_report() -> Result<Report> {
    let mut report = Report::new("gamma-c");
    report.columns = vec![
        "class".into(),
        "nonedge form".into(),
        "edge form".into(),
        "c weight".into(),
    ];
    for h in ALL_CLASSES {
        let (a, b) = h.c_weight_contributions();
        report.rows.push(vec![
            h.label().into(),
            a.to_string(),
            b.to_string(),
            h.c_weight().to_string(),
        ]);
        report.cases_checked += 1;
        if a + b != h.c_weight() {
            report
                .violations
                .push(format!("contributions of {} do not sum", h.label()));
        }
    }
    for v in [4usize, 5] {
        let pairs = v * (v - 1) / 2;
        for mask in 0u64..1 << pairs {
            let g = diamondlab_core::graphs::Graph::from_edge_mask(v, mask)
                .map_err(|e| anyhow!("{e}"))?;
            report.cases_checked += 1;
            if certificate::sq_forms(&g) != certificate::sq_identity_rhs(&g) {
                report
                    .violations
                    .push(format!("expansion mismatch at v={v} mask={mask}"));
            }
        }
    }
    Ok(report)
}

/// The simplified rows against `d* + γc − 1/4` on the grid `n ≤ 60`,
/// `v ≥ 2n/3`, including the sign and equality-set checks.
pub fn simplified_report() -> Result<Report> {
    let out = certificate::certificate_consistency_check(7, 60).map_err(|e| anyhow!("{e}"))?;
    let mut report = Report::new("simplified-rows");
    report.cases_checked = out.cases;
    report.notes.push(
        "zero attained by H6 everywhere (gamma pins it to exactly 1/4), by Hpar and \
         triangle at v=n, and by H0 at v=n-1 and v=n"
            .into(),
    );
    report.columns = vec!["class".into(), "value at n=60,v=60".into(), "value at n=60,v=41".into()];
    for h in ALL_CLASSES {
        let at_n = certificate::simplified_row(h, 60, 60).map_err(|e| anyhow!("{e}"))?;
        let at_lo = certificate::simplified_row(h, 60, 41).map_err(|e| anyhow!("{e}"))?;
        report.rows.push(vec![
            h.label().into(),
            rational_str(&at_n),
            rational_str(&at_lo),
        ]);
    }
    report.violations = out
        .violations
        .iter()
        .map(|v| {
            format!(
                "consistency {:?}: n={} v={} class={}",
                v.kind,
                v.n,
                v.v,
                v.class.label()
            )
        })
        .collect();
    Ok(report)
}

/// The epsilon closed-form rows as a table (assumed numerators and
/// tightness), plus the grid check.
pub fn epsilon_rows_report() -> Result<Report> {
    let mut report = epsilon_report(5, 30)?;
    report.name = "epsilon-rows".into();
    report.columns = vec![
        "class".into(),
        "|Y∩H|".into(),
        "assumed numerator".into(),
        "attained".into(),
        "claimed nonpositive".into(),
    ];
    for h in ALL_CLASSES {
        let rep = h.representative();
        let ebar_h = rep.nonedges_inside(0b1111) as i64;
        for card in 1..=4u32 {
            let mut best = i64::MIN;
            for y in 1u32..16 {
                if y.count_ones() != card {
                    continue;
                }
                let x = 0b1111 & !y;
                best = best.max(
                    2 * ebar_h + 4 * rep.nonedges_inside(y) as i64
                        - 2 * rep.nonedges_inside(x) as i64,
                );
            }
            let assumed = epsilon_row_numerator(h, card);
            report.rows.push(vec![
                h.label().into(),
                card.to_string(),
                assumed.to_string(),
                if best == assumed { "tight".into() } else { format!("max {best}") },
                epsilon_row_nonpositive(h, card).to_string(),
            ]);
        }
    }
    Ok(report)
}

/// The `d*` rows evaluated on a small reference grid (plus the gamma
/// values), emitted as a table; validity is covered by the case1 and
/// simplified checks.
pub fn dstar_report() -> Result<Report> {
    let mut report = Report::new("dstar-rows");
    let points = [(20u32, 8u32), (20, 14), (20, 20), (60, 40), (60, 60)];
    report.columns = std::iter::once("class".to_string())
        .chain(points.iter().map(|(n, v)| format!("n={n},v={v}")))
        .collect();
    for h in ALL_CLASSES {
        let mut row = vec![h.label().to_string()];
        for (n, v) in points {
            let d = certificate::dstar(h, n, v).map_err(|e| anyhow!("{e}"))?;
            row.push(rational_str(&d));
            report.cases_checked += 1;
        }
        report.rows.push(row);
    }
    let mut gamma_row = vec!["gamma".to_string()];
    for (n, v) in points {
        gamma_row.push(rational_str(&gamma(n, v)));
    }
    report.rows.push(gamma_row);
    Ok(report)
}

/// A named bundle of certificate-table reports.
pub fn tables_reports(which: &str) -> Result<Vec<Report>> {
    let all = ["gmax", "gamma-c", "simplified", "epsilon-rows", "dstar"];
    let selected: Vec<&str> = if which == "all" {
        all.to_vec()
    } else {
        let w = which.trim();
        if !all.contains(&w) {
            bail!("unknown table `{which}` (expected one of gmax, gamma-c, simplified, epsilon-rows, dstar, all)");
        }
        vec![w]
    };
    let mut reports = Vec::new();
    for name in selected {
        reports.push(match name {
            "gmax" => gmax_report()?,
            "gamma-c" => gamma_c_report()?,
            "simplified" => simplified_report()?,
            "epsilon-rows" => epsilon_rows_report()?,
            "dstar" => dstar_report()?,
            _ => unreachable!(),
        });
    }
    Ok(reports)
}
