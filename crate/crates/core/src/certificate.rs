//! The certificate tables and scans behind the `1/4` bound on `f(n, G, W)`.
//!
//! Four ingredients, all exact:
//!
//! * per-class closed-form upper bounds for the epsilon correction, by the
//!   cardinality of `Y_w ∩ H` (with an overall per-class bound);
//! * the per-class density bounds `d*(H)` and their simplified forms
//!   `d*(H) + γc(H) − 1/4` in the many-vertices regime, where
//!   `γ = 1/96 − (n−v)v/(24(n)₂)`;
//! * the squared flag forms whose expansion produces the `c(H)` weights —
//!   a sum of squares, hence nonnegative;
//! * the asymptotic envelopes `g_H(x)` with their maxima over `[2/3, 1]`.
//!
//! On top of the tables sit exhaustive scans: `case1_check` for the
//! few-vertices regime, `lemma3_scan` driving the worst case of `f` over
//! every small graph, and consistency checks tying the tables together.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::graphs::{epsilon_value, pair_index, subgraph_census, Graph};
use crate::hclass::{HClass, ALL_CLASSES};
use crate::lattice::falling;
use crate::rational::{big_frac, frac, int, Rational};

fn ratio(num: BigInt, den: BigInt) -> Rational {
    if num.is_zero() {
        Rational::zero()
    } else {
        big_frac(num, den)
    }
}

/// `γ(n, v) = 1/96 − (n−v)v/(24(n)₂)`; nonnegative on the regime
/// `v ≥ 2n/3, n ≥ 7`, and exactly `1/96` at `v = n`.
pub fn gamma(n: u32, v: u32) -> Rational {
    let (n, v) = (n as i64, v as i64);
    frac(1, 96) - ratio(BigInt::from((n - v) * v), BigInt::from(24) * falling(n, 2))
}

/// The raw epsilon correction for a four-vertex subgraph `h` and a choice
/// of `Y ∩ H` (as a mask over the four vertices of `h`):
/// `−(v/(n)₂)(2|Y∩H|/4) + ((v)₂/(2(n)₃))((2ē(H)+4ē(Y∩H)−2ē(X∩H))/6)`.
///
/// Zero whenever `Y ∩ H` is empty.
pub fn epsilon(n: u32, v: u32, h: &Graph, y_mask: u32) -> Result<Rational, Error> {
    if h.v() != 4 {
        return Err(Error::BadDimensions("epsilon needs a 4-vertex subgraph"));
    }
    if v < 4 || v > n {
        return Err(Error::BadDimensions("epsilon needs 4 <= v <= n"));
    }
    let y = y_mask & 0b1111;
    let x = 0b1111 & !y;
    let ebar_h = h.nonedges_inside(0b1111) as i64;
    let ebar_y = h.nonedges_inside(y) as i64;
    let ebar_x = h.nonedges_inside(x) as i64;
    Ok(epsilon_value(
        n as i64,
        v as i64,
        y.count_ones() as i64,
        2 * ebar_h + 4 * ebar_y - 2 * ebar_x,
    ))
}

/// The combined numerator `2ē(H) + 4ē(Y∩H) − 2ē(X∩H)` assumed by the
/// closed-form epsilon row for a class and a cardinality of `Y ∩ H`.
///
/// For `H0`, `H1`, `Hwedge` and `Hpar` the rows are tight for most
/// cardinalities; for the classes with at most three nonedges they are the
/// generic envelope `2ē`, `2ē+4`, `6ē`, `6ē` and may overshoot.
pub fn epsilon_row_numerator(h: HClass, y_card: u32) -> i64 {
    debug_assert!((1..=4).contains(&y_card));
    match h {
        HClass::H0 => [6, 14, 24, 36][(y_card - 1) as usize],
        HClass::H1 => [6, 14, 22, 30][(y_card - 1) as usize],
        HClass::Hwedge => [6, 12, 20, 24][(y_card - 1) as usize],
        HClass::Hpar => [4, 10, 20, 24][(y_card - 1) as usize],
        _ => {
            let e = h.nonedge_count() as i64;
            match y_card {
                1 => 2 * e,
                2 => 2 * e + 4,
                _ => 6 * e,
            }
        }
    }
}

/// Closed-form row bound: the epsilon value at the assumed numerator.
pub fn epsilon_row_bound(h: HClass, y_card: u32, n: u32, v: u32) -> Result<Rational, Error> {
    if !(1..=4).contains(&y_card) {
        return Err(Error::BadParameter("row cardinality must be 1..=4"));
    }
    if v < 4 || v > n {
        return Err(Error::BadDimensions("epsilon rows need 4 <= v <= n"));
    }
    Ok(epsilon_value(
        n as i64,
        v as i64,
        y_card as i64,
        epsilon_row_numerator(h, y_card),
    ))
}

/// Whether the closed-form row asserts a nonpositive value (for `v < n`).
pub fn epsilon_row_nonpositive(h: HClass, y_card: u32) -> bool {
    match h {
        HClass::H0 | HClass::H1 => y_card == 1,
        HClass::Hwedge => y_card != 3,
        HClass::Hpar => true,
        _ => true,
    }
}

/// The overall per-class epsilon bound (for `v < n`): zero except for
/// `H0`, `H1` and `Hwedge`, whose bounds carry a `max{0, ·}` term.
pub fn epsilon_class_bound(h: HClass, n: u32, v: u32) -> Result<Rational, Error> {
    if v < 4 || v > n {
        return Err(Error::BadDimensions("epsilon bound needs 4 <= v <= n"));
    }
    let (ni, vi) = (n as i64, v as i64);
    let (coeff_num, coeff_den, threshold) = match h {
        HClass::H0 => (3, 1, frac(2, 3)),
        HClass::H1 => (5, 2, frac(4, 5)),
        HClass::Hwedge => (5, 3, frac(9, 10)),
        _ => return Ok(Rational::zero()),
    };
    let r = frac(vi - 1, ni - 2);
    let gap = r - threshold;
    if gap <= Rational::zero() {
        return Ok(Rational::zero());
    }
    Ok(ratio(
        BigInt::from(coeff_num * vi),
        BigInt::from(coeff_den) * falling(ni, 2),
    ) * gap)
}

/// What an epsilon-table violation would look like.
#[derive(Clone, Debug)]
pub struct EpsilonViolation {
    pub n: u32,
    pub v: u32,
    pub class: HClass,
    pub check: EpsilonCheck,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EpsilonCheck {
    /// max over `Y` masks of one cardinality exceeds the closed-form row.
    RowBound { y_card: u32 },
    /// a row marked nonpositive went positive (checked for `v < n`).
    RowSign { y_card: u32 },
    /// max over all `Y` masks exceeds the per-class bound (for `v < n`).
    ClassBound,
}

#[derive(Clone, Debug, Default)]
pub struct EpsilonReport {
    pub cases: u64,
    pub violations: Vec<EpsilonViolation>,
}

/// Grid check of the epsilon rows: for every class, every `Y` mask and all
/// `4 ≤ v ≤ n` in the given range, the raw epsilon stays at or below the
/// applicable closed-form row, rows marked nonpositive stay nonpositive for
/// `v < n`, and the per-class bound holds for `v < n` (its hypothesis).
pub fn epsilon_table_check(n_lo: u32, n_hi: u32) -> Result<EpsilonReport, Error> {
    if n_lo < 4 {
        return Err(Error::BadParameter("epsilon grid needs n >= 4"));
    }
    let mut report = EpsilonReport::default();
    let reps: Vec<(HClass, Graph)> = ALL_CLASSES
        .iter()
        .map(|&h| (h, h.representative()))
        .collect();
    for n in n_lo..=n_hi {
        for v in 4..=n {
            for (h, rep) in &reps {
                let mut card_max: [Option<Rational>; 5] = Default::default();
                let mut overall = Rational::zero(); // y_mask = 0 gives 0
                for y_mask in 1u32..16 {
                    let e = epsilon(n, v, rep, y_mask)?;
                    let card = y_mask.count_ones() as usize;
                    let slot = &mut card_max[card];
                    if slot.as_ref().is_none_or(|cur| e > *cur) {
                        *slot = Some(e.clone());
                    }
                    if e > overall {
                        overall = e;
                    }
                }
                for y_card in 1..=4u32 {
                    let lhs = card_max[y_card as usize].clone().unwrap();
                    let rhs = epsilon_row_bound(*h, y_card, n, v)?;
                    report.cases += 1;
                    if lhs > rhs {
                        report.violations.push(EpsilonViolation {
                            n,
                            v,
                            class: *h,
                            check: EpsilonCheck::RowBound { y_card },
                            lhs: lhs.clone(),
                            rhs,
                        });
                    }
                    if v < n && epsilon_row_nonpositive(*h, y_card) {
                        report.cases += 1;
                        if lhs > Rational::zero() {
                            report.violations.push(EpsilonViolation {
                                n,
                                v,
                                class: *h,
                                check: EpsilonCheck::RowSign { y_card },
                                lhs,
                                rhs: Rational::zero(),
                            });
                        }
                    }
                }
                if v < n {
                    let rhs = epsilon_class_bound(*h, n, v)?;
                    report.cases += 1;
                    if overall > rhs {
                        report.violations.push(EpsilonViolation {
                            n,
                            v,
                            class: *h,
                            check: EpsilonCheck::ClassBound,
                            lhs: overall,
                            rhs,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Coefficient of `(v)₃/(n)₃` in the `d*` row of a class, as a reduced
/// fraction.
pub fn dstar_alpha_coefficient(h: HClass) -> (i64, i64) {
    match h {
        HClass::H0 | HClass::Path | HClass::H6 => (0, 1),
        HClass::H1 => (1, 6),
        HClass::Hwedge => (1, 12),
        HClass::Hpar => (1, 3),
        HClass::Claw => (-3, 4),
        HClass::Tri => (1, 4),
        HClass::Cyc => (-1, 1),
        HClass::Hq => (-1, 4),
        HClass::H5 => (-1, 2),
    }
}

/// The per-class density bound `d*(H)`:
/// alpha term + (for `H0`) `(v)₄/(4(n)₄)` + `(n−v)v/(n)₂`
/// − `(ē(H)/6)(n−v)(v)₂/(n)₃` + `(n−v)` times the per-class epsilon bound.
pub fn dstar(h: HClass, n: u32, v: u32) -> Result<Rational, Error> {
    if v < 4 || v > n {
        return Err(Error::BadDimensions("dstar needs 4 <= v <= n"));
    }
    let (ni, vi) = (n as i64, v as i64);
    let mut acc = Rational::zero();
    let (cn, cd) = dstar_alpha_coefficient(h);
    if cn != 0 {
        acc += ratio(BigInt::from(cn) * falling(vi, 3), BigInt::from(cd) * falling(ni, 3));
    }
    if h == HClass::H0 {
        acc += ratio(falling(vi, 4), BigInt::from(4) * falling(ni, 4));
    }
    acc += ratio(BigInt::from((ni - vi) * vi), falling(ni, 2));
    let ebar = h.nonedge_count() as i64;
    if ebar != 0 {
        acc -= ratio(
            BigInt::from(ebar * (ni - vi)) * falling(vi, 2),
            BigInt::from(6) * falling(ni, 3),
        );
    }
    let class_bound = epsilon_class_bound(h, n, v)?;
    if !class_bound.is_zero() {
        acc += int(ni - vi) * class_bound;
    }
    Ok(acc)
}

/// The simplified value of `d*(H) + γc(H) − 1/4`, valid on the regime
/// `v ≥ 2n/3` (where the `H0` max-branch is active).
pub fn simplified_row(h: HClass, n: u32, v: u32) -> Result<Rational, Error> {
    if v < 4 || v > n {
        return Err(Error::BadDimensions("simplified rows need 4 <= v <= n"));
    }
    let (ni, vi) = (n as i64, v as i64);
    let n3 = falling(ni, 3);
    let wv = (ni - vi) * vi;
    let v3_over = |num: i64, den: i64| -> Rational {
        ratio(BigInt::from(num) * falling(vi, 3), BigInt::from(den) * n3.clone())
    };
    let tail = |num: i64, den: i64| -> Rational {
        ratio(BigInt::from(wv) * BigInt::from(num), BigInt::from(den) * n3.clone())
    };
    Ok(match h {
        HClass::H0 => {
            frac(-1, 4)
                + ratio(falling(vi, 4), BigInt::from(4) * falling(ni, 4))
                + tail(2 * vi - ni, 1)
        }
        HClass::H1 => {
            frac(-5, 24)
                + v3_over(1, 6)
                + tail((5 * ni - 5 * vi - 5).max(10 * vi - 7 * ni + 4), 6)
        }
        HClass::Hwedge => {
            frac(-5, 24)
                + v3_over(1, 12)
                + tail((5 * ni - 4 * vi - 6).max(6 * vi - 4 * ni + 2), 6)
        }
        HClass::Hpar => frac(-1, 3) + v3_over(1, 3) + tail(4 * ni - 2 * vi - 6, 3),
        HClass::Claw => frac(-1, 4) + v3_over(-3, 4) + tail(2 * ni - vi - 3, 2),
        HClass::Path => frac(-7, 24) + tail(7 * ni - 3 * vi - 11, 6),
        HClass::Tri => frac(-1, 4) + v3_over(1, 4) + tail(2 * ni - vi - 3, 2),
        HClass::Cyc => frac(-1, 4) + v3_over(-1, 1) + tail(3 * ni - vi - 5, 3),
        HClass::Hq => frac(-7, 24) + v3_over(-1, 4) + tail(7 * ni - 2 * vi - 12, 6),
        HClass::H5 => frac(-5, 24) + v3_over(-1, 2) + tail(5 * ni - vi - 9, 6),
        HClass::H6 => Rational::zero(),
    })
}

#[derive(Clone, Debug)]
pub struct ConsistencyViolation {
    pub n: u32,
    pub v: u32,
    pub class: HClass,
    pub kind: ConsistencyKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConsistencyKind {
    /// `d* + γc − 1/4` differs from the simplified row.
    Mismatch,
    /// `d* + γc − 1/4` went positive.
    Positive,
    /// zero attained outside the known equality set.
    UnexpectedEquality,
    /// gamma went negative on the regime.
    NegativeGamma,
}

#[derive(Clone, Debug, Default)]
pub struct ConsistencyReport {
    pub cases: u64,
    pub violations: Vec<ConsistencyViolation>,
}

/// Grid check over `n ≥ 7`, `v ≥ 2n/3`: gamma is nonnegative, the
/// simplified rows agree with `d* + γc − 1/4` symbolically, every class
/// stays at or below zero, and zero is attained only by `H6` (any `v`, by
/// the choice of gamma), by `Hpar` and `Tri` at `v = n`, and by `H0` at
/// `v ∈ {n−1, n}` (its row reduces to `−1/4 + (n−4)/(4n) + 1/n = 0` at
/// `v = n−1`).
pub fn certificate_consistency_check(n_lo: u32, n_hi: u32) -> Result<ConsistencyReport, Error> {
    if n_lo < 7 {
        return Err(Error::BadParameter("consistency grid needs n >= 7"));
    }
    let mut report = ConsistencyReport::default();
    for n in n_lo..=n_hi {
        let v_lo = (2 * n).div_ceil(3);
        for v in v_lo.max(4)..=n {
            let g = gamma(n, v);
            report.cases += 1;
            if g.is_negative() {
                report.violations.push(ConsistencyViolation {
                    n,
                    v,
                    class: HClass::H6,
                    kind: ConsistencyKind::NegativeGamma,
                });
            }
            for h in ALL_CLASSES {
                let lhs = dstar(h, n, v)? + g.clone() * int(h.c_weight()) - frac(1, 4);
                let rhs = simplified_row(h, n, v)?;
                report.cases += 2;
                if lhs != rhs {
                    report.violations.push(ConsistencyViolation {
                        n,
                        v,
                        class: h,
                        kind: ConsistencyKind::Mismatch,
                    });
                }
                if lhs.is_positive() {
                    report.violations.push(ConsistencyViolation {
                        n,
                        v,
                        class: h,
                        kind: ConsistencyKind::Positive,
                    });
                } else if lhs.is_zero() {
                    let allowed = h == HClass::H6
                        || (v == n && matches!(h, HClass::Hpar | HClass::Tri))
                        || (h == HClass::H0 && v + 1 >= n);
                    if !allowed {
                        report.violations.push(ConsistencyViolation {
                            n,
                            v,
                            class: h,
                            kind: ConsistencyKind::UnexpectedEquality,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The squared flag forms, with the gamma factor removed: the sum over
/// ordered nonedge pairs of `(|N(z₁)∩coN[z₂]| − |coN[z₁]∩N(z₂)|)²` plus the
/// sum over ordered edge pairs of `(|N(z₁)∩N(z₂)| − |coN[z₁]∩coN[z₂]|)²`.
/// A sum of squares, hence nonnegative.
pub fn sq_forms(g: &Graph) -> i64 {
    let v = g.v();
    let full = g.full_mask();
    let mut acc = 0i64;
    for z1 in 0..v {
        let n1 = g.adjacency(z1);
        let co1 = full & !n1 & !(1 << z1);
        for z2 in 0..v {
            if z1 == z2 {
                continue;
            }
            let n2 = g.adjacency(z2);
            let co2 = full & !n2 & !(1 << z2);
            let t = if g.has_edge(z1, z2) {
                (n1 & n2).count_ones() as i64 - (co1 & co2).count_ones() as i64
            } else {
                (n1 & co2).count_ones() as i64 - (co1 & n2).count_ones() as i64
            };
            acc += t * t;
        }
    }
    acc
}

/// The per-subgraph expansion of [`sq_forms`]:
/// `Σ_{H ∈ C(V,4)} c(class(H)) + 6α₁(G) + 6α₃(G)`. Equal to `sq_forms`
/// for every graph.
pub fn sq_identity_rhs(g: &Graph) -> i64 {
    let v = g.v();
    let census = subgraph_census(g);
    let mut acc = 6 * (census.alpha[1] as i64 + census.alpha[3] as i64);
    for a in 0..v {
        for b in a + 1..v {
            for c in b + 1..v {
                for d in c + 1..v {
                    acc += HClass::classify_quad(g, [a, b, c, d]).c_weight();
                }
            }
        }
    }
    acc
}

/// Data of one `g_H` row: constant, cube coefficient, and the tail
/// `(1−x)·x·max(linear branches)/den`.
struct GRow {
    c0: (i64, i64),
    c3: (i64, i64),
    tail_den: i64,
    branches: &'static [(i64, i64)], // b0 + b1·x
}

fn g_row(h: HClass) -> Option<GRow> {
    Some(match h {
        HClass::H1 => GRow {
            c0: (-5, 24),
            c3: (1, 6),
            tail_den: 6,
            branches: &[(5, -5), (-7, 10)],
        },
        HClass::Hwedge => GRow {
            c0: (-5, 24),
            c3: (1, 12),
            tail_den: 6,
            branches: &[(5, -4), (-4, 6)],
        },
        HClass::Hpar => GRow {
            c0: (-1, 3),
            c3: (1, 3),
            tail_den: 3,
            branches: &[(4, -2)],
        },
        HClass::Claw => GRow {
            c0: (-1, 4),
            c3: (-3, 4),
            tail_den: 2,
            branches: &[(2, -1)],
        },
        HClass::Path => GRow {
            c0: (-7, 24),
            c3: (0, 1),
            tail_den: 6,
            branches: &[(7, -3)],
        },
        HClass::Tri => GRow {
            c0: (-1, 4),
            c3: (1, 4),
            tail_den: 2,
            branches: &[(2, -1)],
        },
        HClass::Cyc => GRow {
            c0: (-1, 4),
            c3: (-1, 1),
            tail_den: 3,
            branches: &[(3, -1)],
        },
        HClass::Hq => GRow {
            c0: (-7, 24),
            c3: (-1, 4),
            tail_den: 6,
            branches: &[(7, -2)],
        },
        HClass::H5 => GRow {
            c0: (-5, 24),
            c3: (-1, 2),
            tail_den: 6,
            branches: &[(5, -1)],
        },
        HClass::H0 | HClass::H6 => return None,
    })
}

/// The constant `−7/24` that the `H5` row is sometimes stated with; it is
/// inconsistent with both the simplified-values row (`−5/24`) and the
/// stated maximum `−127/648`, and is kept only for audit. [`g_eval`] uses
/// `−5/24`.
pub fn g_h5_rejected_constant() -> Rational {
    frac(-7, 24)
}

/// Evaluates the asymptotic envelope `g_H(x)` exactly. Defined for the
/// nine classes with a `g` row (`H0` is handled directly and `H6` is
/// identically zero in the simplified table).
pub fn g_eval(h: HClass, x: &Rational) -> Result<Rational, Error> {
    let row = g_row(h).ok_or(Error::BadParameter("no g row for this class"))?;
    let mut acc = frac(row.c0.0, row.c0.1);
    if row.c3.0 != 0 {
        acc += frac(row.c3.0, row.c3.1) * x * x * x;
    }
    let mut branch_max: Option<Rational> = None;
    for &(b0, b1) in row.branches {
        let val = int(b0) + int(b1) * x;
        if branch_max.as_ref().is_none_or(|cur| val > *cur) {
            branch_max = Some(val);
        }
    }
    let tail = (int(1) - x) * x * branch_max.unwrap() / int(row.tail_den);
    Ok(acc + tail)
}

/// Reference maxima of the nine `g_H` rows over `2/3 ≤ x ≤ 1`, with the
/// argument attaining each.
pub fn g_reference_maxima() -> [(HClass, Rational, Rational); 9] {
    [
        (HClass::H1, frac(-1, 24), int(1)),
        (HClass::Hwedge, frac(-7, 72), frac(2, 3)),
        (HClass::Hpar, int(0), int(1)),
        (HClass::Claw, frac(-35, 108), frac(2, 3)),
        (HClass::Path, frac(-23, 216), frac(2, 3)),
        (HClass::Tri, int(0), int(1)),
        (HClass::Cyc, frac(-121, 324), frac(2, 3)),
        (HClass::Hq, frac(-101, 648), frac(2, 3)),
        (HClass::H5, frac(-127, 648), frac(2, 3)),
    ]
}

#[derive(Clone, Debug)]
pub struct GMaxViolation {
    pub class: HClass,
    pub x: Rational,
    pub value: Rational,
    pub maximum: Rational,
}

#[derive(Clone, Debug, Default)]
pub struct GMaxReport {
    pub cases: u64,
    pub violations: Vec<GMaxViolation>,
}

/// Verifies each `g_H` row against its reference maximum: the maximum is
/// attained exactly at the stated endpoint, and no point of the rational
/// grid `x = k/step_den` over `[2/3, 1]` exceeds it.
pub fn g_max_check(step_den: u64) -> Result<GMaxReport, Error> {
    if step_den < 3 || !step_den.is_multiple_of(3) {
        return Err(Error::BadParameter("grid denominator must be a positive multiple of 3"));
    }
    let mut report = GMaxReport::default();
    for (h, maximum, argmax) in g_reference_maxima() {
        let at_arg = g_eval(h, &argmax)?;
        report.cases += 1;
        if at_arg != maximum {
            report.violations.push(GMaxViolation {
                class: h,
                x: argmax.clone(),
                value: at_arg,
                maximum: maximum.clone(),
            });
        }
        for k in 2 * step_den / 3..=step_den {
            let x = frac(k as i64, step_den as i64);
            let val = g_eval(h, &x)?;
            report.cases += 1;
            if val > maximum {
                report.violations.push(GMaxViolation {
                    class: h,
                    x,
                    value: val,
                    maximum: maximum.clone(),
                });
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct Case1Violation {
    pub n: u32,
    pub v: u32,
    pub class: Option<HClass>,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, Default)]
pub struct Case1Report {
    pub cases: u64,
    pub violations: Vec<Case1Violation>,
}

/// Few-vertices regime check: for `4 ≤ v ≤ (2n−1)/3`, every class has
/// `d*(H) ≤ (n−v)v/(n)₂`, and that product is at most `⌊n²/4⌋/(n)₂`.
pub fn case1_check(n_lo: u32, n_hi: u32) -> Result<Case1Report, Error> {
    let mut report = Case1Report::default();
    for n in n_lo..=n_hi {
        let ni = n as i64;
        let v_hi = (2 * ni - 1) / 3;
        for v in 4..=v_hi.max(0) as u32 {
            let vi = v as i64;
            let edge_product = ratio(BigInt::from((ni - vi) * vi), falling(ni, 2));
            let quarter = ratio(BigInt::from(ni * ni / 4), falling(ni, 2));
            report.cases += 1;
            if edge_product > quarter {
                report.violations.push(Case1Violation {
                    n,
                    v,
                    class: None,
                    lhs: edge_product.clone(),
                    rhs: quarter,
                });
            }
            for h in ALL_CLASSES {
                let d = dstar(h, n, v)?;
                report.cases += 1;
                if d > edge_product {
                    report.violations.push(Case1Violation {
                        n,
                        v,
                        class: Some(h),
                        lhs: d,
                        rhs: edge_product.clone(),
                    });
                }
            }
        }
    }
    Ok(report)
}

/// The crude envelope for graphs on at most three vertices:
/// `2/(n)₃ + n(3/(n)₂ + 12/(n)₃)`. Exceeds `1/4` until `n = 17`; the scan
/// handles small `v` directly instead.
pub fn small_v_bound(n: u32) -> Rational {
    let ni = n as i64;
    ratio(BigInt::from(2), falling(ni, 3))
        + int(ni)
            * (ratio(BigInt::from(3), falling(ni, 2))
                + ratio(BigInt::from(12), falling(ni, 3)))
}

/// All permutations of `0..v` (Heap's algorithm), deterministically ordered.
fn permutations(v: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..v as u8).collect();
    fn heap(k: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k.is_multiple_of(2) {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    if v == 0 {
        out.push(Vec::new());
    } else {
        heap(v, &mut cur, &mut out);
    }
    out
}

/// Canonical representatives (smallest edge mask per isomorphism class) of
/// all graphs on `v ≤ 7` vertices, ascending. Found by orbit marking under
/// the full symmetric group.
pub fn canonical_graph_masks(v: usize) -> Result<Vec<u64>, Error> {
    if v > 7 {
        return Err(Error::TooManyVertices { v, limit: 7 });
    }
    let pairs = v * v.saturating_sub(1) / 2;
    let total = 1u64 << pairs;
    // Edge-index permutation tables.
    let tables: Vec<Vec<usize>> = permutations(v)
        .into_iter()
        .map(|p| {
            let mut t = vec![0usize; pairs];
            for j in 1..v {
                for i in 0..j {
                    t[pair_index(i, j)] = pair_index(p[i] as usize, p[j] as usize);
                }
            }
            t
        })
        .collect();
    let mut seen = vec![0u64; total.div_ceil(64) as usize];
    let mut reps = Vec::new();
    for mask in 0..total {
        if seen[(mask / 64) as usize] >> (mask % 64) & 1 == 1 {
            continue;
        }
        reps.push(mask);
        for t in &tables {
            let mut img = 0u64;
            let mut rest = mask;
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                img |= 1 << t[b];
            }
            seen[(img / 64) as usize] |= 1 << (img % 64);
        }
    }
    Ok(reps)
}

#[derive(Clone, Debug)]
pub struct Lemma3Violation {
    pub v: u32,
    pub edge_mask: u64,
    pub n: u32,
    pub f: Rational,
    pub bound: Rational,
}

/// Worst case seen by the scan; `f = f_num/(n)₄`.
#[derive(Clone, Copy, Debug)]
pub struct Lemma3Worst {
    pub v: u32,
    pub edge_mask: u64,
    pub n: u32,
    pub f_num: i64,
}

impl Lemma3Worst {
    pub fn f(&self) -> Rational {
        ratio(BigInt::from(self.f_num), falling(self.n as i64, 4))
    }

    // cross-multiplied comparison; denominators (n)₄ are positive here.
    fn beats(&self, other: &Lemma3Worst) -> bool {
        let lhs = self.f_num as i128 * falling_i128(other.n, 4);
        let rhs = other.f_num as i128 * falling_i128(self.n, 4);
        lhs > rhs
    }
}

fn falling_i128(n: u32, k: u32) -> i128 {
    let mut acc = 1i128;
    for i in 0..k as i128 {
        acc *= n as i128 - i;
    }
    acc
}

#[derive(Clone, Debug, Default)]
pub struct Lemma3Chunk {
    pub graphs: u64,
    pub cases: u64,
    pub violations: Vec<Lemma3Violation>,
    pub worst: Option<Lemma3Worst>,
}

/// Merges a later chunk into an accumulator; chunk order decides ties, so
/// the merged result is independent of how chunks were scheduled.
pub fn lemma3_merge(acc: &mut Lemma3Chunk, chunk: Lemma3Chunk) {
    acc.graphs += chunk.graphs;
    acc.cases += chunk.cases;
    acc.violations.extend(chunk.violations);
    acc.worst = match (acc.worst, chunk.worst) {
        (None, w) => w,
        (w, None) => w,
        (Some(a), Some(b)) => Some(if b.beats(&a) { b } else { a }),
    };
}

/// Scans a batch of labeled graphs (as edge masks on `v` vertices) against
/// the bound: the worst case of `f` over all `W` — structure terms plus
/// `(n−v)` times the best bracket — must stay at or below
/// `1/4 + 1/(4(n−3))` for every `n` in range.
///
/// Runs entirely in machine integers: the comparison is
/// `4·lhs ≤ n(n−1)(n−2)²` with `f = lhs/(n)₄`, exact by cross-multiplication.
pub fn lemma3_check_masks(v: u32, masks: &[u64], n_lo: u32, n_hi: u32) -> Result<Lemma3Chunk, Error> {
    if n_lo < 4 {
        return Err(Error::BadParameter("lemma3 scan needs n >= 4"));
    }
    let mut chunk = Lemma3Chunk::default();
    let vu = v as usize;
    let n_lo = n_lo.max(v);
    for &mask in masks {
        let g = Graph::from_edge_mask(vu, mask)?;
        let census = subgraph_census(&g);
        let alpha_term = 2 * (census.alpha[1] as i64 - census.alpha[2] as i64);
        let beta_term = 6 * census.beta[0] as i64;
        // Per-bipartition data independent of n.
        let m = 1u64 << vu;
        let mut parts: Vec<(i64, i64)> = Vec::with_capacity(m as usize);
        for x_mask in 0..m {
            let x = x_mask as u32;
            let xs = x.count_ones() as i64;
            let ebar_x = g.nonedges_inside(x) as i64;
            let ebar_y = g.nonedges_inside(g.full_mask() & !x) as i64;
            parts.push((2 * xs - v as i64, 4 * ebar_y - 2 * ebar_x));
        }
        chunk.graphs += 1;
        for n in n_lo..=n_hi {
            let ni = n as i64;
            let mut best = i64::MIN;
            for &(diff, tail) in &parts {
                let num = diff * (ni - 2) + tail;
                if num > best {
                    best = num;
                }
            }
            let lhs = (alpha_term + (ni - v as i64) * best) * (ni - 3) + beta_term;
            chunk.cases += 1;
            if 4 * lhs > ni * (ni - 1) * (ni - 2) * (ni - 2) {
                chunk.violations.push(Lemma3Violation {
                    v,
                    edge_mask: mask,
                    n,
                    f: ratio(BigInt::from(lhs), falling(ni, 4)),
                    bound: frac(ni - 2, 4 * (ni - 3)),
                });
            }
            let cand = Lemma3Worst {
                v,
                edge_mask: mask,
                n,
                f_num: lhs,
            };
            chunk.worst = match chunk.worst {
                None => Some(cand),
                Some(cur) => Some(if cand.beats(&cur) { cand } else { cur }),
            };
        }
    }
    Ok(chunk)
}

#[derive(Clone, Debug)]
pub struct Lemma3PerV {
    pub v: u32,
    pub graphs: u64,
    pub canonical_only: bool,
}

#[derive(Clone, Debug, Default)]
pub struct Lemma3Report {
    pub per_v: Vec<Lemma3PerV>,
    pub cases: u64,
    pub violations: Vec<Lemma3Violation>,
    pub worst: Option<Lemma3Worst>,
}

/// All edge masks the scan visits at a given vertex count: every labeled
/// graph for `v ≤ 6`, canonical representatives only at `v = 7`.
pub fn lemma3_masks(v: u32) -> Result<(Vec<u64>, bool), Error> {
    if v > 7 {
        return Err(Error::TooManyVertices {
            v: v as usize,
            limit: 7,
        });
    }
    if v <= 6 {
        let pairs = v * v.saturating_sub(1) / 2;
        Ok(((0..1u64 << pairs).collect(), false))
    } else {
        Ok((canonical_graph_masks(7)?, true))
    }
}

/// Full single-threaded scan over all graphs with up to `v_max ≤ 7`
/// vertices.
pub fn lemma3_scan(v_max: u32, n_lo: u32, n_hi: u32) -> Result<Lemma3Report, Error> {
    if v_max > 7 {
        return Err(Error::TooManyVertices {
            v: v_max as usize,
            limit: 7,
        });
    }
    let mut report = Lemma3Report::default();
    let mut acc = Lemma3Chunk::default();
    for v in 0..=v_max {
        let (masks, canonical_only) = lemma3_masks(v)?;
        let chunk = lemma3_check_masks(v, &masks, n_lo, n_hi)?;
        report.per_v.push(Lemma3PerV {
            v,
            graphs: chunk.graphs,
            canonical_only,
        });
        lemma3_merge(&mut acc, chunk);
    }
    report.cases = acc.cases;
    report.violations = acc.violations;
    report.worst = acc.worst;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(9, 9), frac(1, 96));
        assert_eq!(gamma(9, 6), frac(1, 96) - frac(18, 24 * 72));
        // Exactly zero at n=9, v=6.
        assert!(gamma(9, 6).is_zero());
    }

    #[test]
    fn epsilon_zero_on_empty_y() {
        for h in ALL_CLASSES {
            let rep = h.representative();
            assert!(epsilon(9, 5, &rep, 0).unwrap().is_zero());
        }
    }

    #[test]
    fn epsilon_closed_forms_spot_checks() {
        // Hpar with Y ∩ H = H: (v/(n)₂)(−2 + 2(v−1)/(n−2)).
        let (n, v) = (11u32, 7u32);
        let rep = HClass::Hpar.representative();
        let raw = epsilon(n, v, &rep, 0b1111).unwrap();
        let expect = frac(v as i64, (n * (n - 1)) as i64)
            * (int(-2) + frac(2 * (v as i64 - 1), n as i64 - 2));
        assert_eq!(raw, expect);

        // H0 with Y ∩ H = H: (3v/(n)₂)((v−1)/(n−2) − 2/3).
        let rep = HClass::H0.representative();
        let raw = epsilon(12, 8, &rep, 0b1111).unwrap();
        let expect = frac(3 * 8, 12 * 11) * (frac(7, 10) - frac(2, 3));
        assert_eq!(raw, expect);
        assert_eq!(
            epsilon_row_bound(HClass::H0, 4, 12, 8).unwrap(),
            expect
        );
    }

    #[test]
    fn epsilon_row_tightness() {
        // Which closed-form rows are attained exactly (independent of n, v):
        // the assumed combined numerator versus the true maximum over masks.
        let tight: [(HClass, [bool; 4]); 11] = [
            (HClass::H0, [true, true, true, true]),
            (HClass::H1, [true, true, true, true]),
            (HClass::Hwedge, [true, true, true, true]),
            (HClass::Hpar, [true, true, false, true]),
            (HClass::Claw, [false, true, true, true]),
            (HClass::Path, [false, true, false, true]),
            (HClass::Tri, [true, true, false, true]),
            (HClass::Cyc, [false, false, false, true]),
            (HClass::Hq, [true, true, true, true]),
            (HClass::H5, [true, true, true, true]),
            (HClass::H6, [true, false, true, true]),
        ];
        for (h, expected) in tight {
            let rep = h.representative();
            let ebar_h = rep.nonedges_inside(0b1111) as i64;
            for card in 1..=4u32 {
                let mut best = i64::MIN;
                for y in 1u32..16 {
                    if y.count_ones() != card {
                        continue;
                    }
                    let x = 0b1111 & !y;
                    let combined = 2 * ebar_h + 4 * rep.nonedges_inside(y) as i64
                        - 2 * rep.nonedges_inside(x) as i64;
                    best = best.max(combined);
                }
                let assumed = epsilon_row_numerator(h, card);
                assert!(best <= assumed, "{} card {card}", h.label());
                assert_eq!(
                    best == assumed,
                    expected[(card - 1) as usize],
                    "{} card {card}: true {best}, assumed {assumed}",
                    h.label()
                );
            }
        }
    }

    #[test]
    fn dstar_examples() {
        // H6 row is exactly (n−v)v/(n)₂.
        assert_eq!(dstar(HClass::H6, 10, 6).unwrap(), frac(24, 90));
        // Path at v = n: both tail terms vanish.
        assert!(dstar(HClass::Path, 9, 9).unwrap().is_zero());
        // H0 at v = n: only the beta term survives, giving exactly 1/4.
        assert_eq!(dstar(HClass::H0, 9, 9).unwrap(), frac(1, 4));
        assert!(dstar(HClass::H1, 5, 3).is_err());
    }

    #[test]
    fn simplified_rows_match_dstar_at_a_point() {
        let (n, v) = (12u32, 9u32); // v = 3n/4 ≥ 2n/3
        let g = gamma(n, v);
        for h in ALL_CLASSES {
            let lhs = dstar(h, n, v).unwrap() + g.clone() * int(h.c_weight()) - frac(1, 4);
            assert_eq!(lhs, simplified_row(h, n, v).unwrap(), "{}", h.label());
        }
    }

    #[test]
    fn simplified_equality_set() {
        for n in [9u32, 20, 33] {
            assert!(simplified_row(HClass::H6, n, n - 2).unwrap().is_zero());
            assert!(simplified_row(HClass::H6, n, n).unwrap().is_zero());
            assert!(simplified_row(HClass::Hpar, n, n).unwrap().is_zero());
            assert!(simplified_row(HClass::Tri, n, n).unwrap().is_zero());
            assert!(simplified_row(HClass::Hpar, n, n - 1).unwrap().is_negative());
            assert!(simplified_row(HClass::Tri, n, n - 1).unwrap().is_negative());
            // The H0 row vanishes one step earlier as well.
            assert!(simplified_row(HClass::H0, n, n).unwrap().is_zero());
            assert!(simplified_row(HClass::H0, n, n - 1).unwrap().is_zero());
            assert!(simplified_row(HClass::H0, n, n - 2).unwrap().is_negative());
        }
    }

    #[test]
    fn sq_forms_k4() {
        let k4 = HClass::H6.representative();
        assert_eq!(sq_forms(&k4), 48);
        assert_eq!(sq_identity_rhs(&k4), 48);
        let empty = Graph::new(5).unwrap();
        assert_eq!(sq_forms(&empty), 0);
        assert_eq!(sq_identity_rhs(&empty), 0);
    }

    #[test]
    fn g_endpoint_values() {
        assert_eq!(g_eval(HClass::Hpar, &int(1)).unwrap(), int(0));
        assert_eq!(g_eval(HClass::Hwedge, &frac(2, 3)).unwrap(), frac(-7, 72));
        assert_eq!(g_eval(HClass::H5, &frac(2, 3)).unwrap(), frac(-127, 648));
        // The rejected H5 constant does not reproduce the stated maximum.
        let shifted = g_eval(HClass::H5, &frac(2, 3)).unwrap() + g_h5_rejected_constant()
            - frac(-5, 24);
        assert_ne!(shifted, frac(-127, 648));
        assert!(g_eval(HClass::H0, &int(1)).is_err());
    }

    #[test]
    fn canonical_counts() {
        let expected = [1u64, 1, 2, 4, 11, 34, 156, 1044];
        for v in 0..=7usize {
            let reps = canonical_graph_masks(v).unwrap();
            assert_eq!(reps.len() as u64, expected[v], "v={v}");
        }
    }

    #[test]
    fn small_v_bound_threshold() {
        // The crude three-vertex envelope first drops to 1/4 at n = 17.
        assert!(small_v_bound(16) > frac(1, 4));
        assert!(small_v_bound(17) <= frac(1, 4));
        for n in 17..=60 {
            assert!(small_v_bound(n) <= frac(1, 4), "n={n}");
        }
    }

    #[test]
    fn lemma3_tiny() {
        // v ≤ 2 at n ∈ [11, 14]: trivially within the bound.
        let report = lemma3_scan(2, 11, 14).unwrap();
        assert!(report.violations.is_empty());
        assert_eq!(report.per_v.len(), 3);
        let worst = report.worst.unwrap();
        assert!(worst.f() <= frac(1, 4) + frac(1, 4 * (worst.n as i64 - 3)));
    }
}
