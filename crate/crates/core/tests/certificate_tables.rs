//! Certificate tables: grid checks and the asymptotic envelopes.

use diamondlab_core::certificate::{
    case1_check, certificate_consistency_check, dstar, epsilon, epsilon_class_bound,
    epsilon_table_check, g_eval, g_max_check, gamma, simplified_row, sq_forms, sq_identity_rhs,
};
use diamondlab_core::graphs::Graph;
use diamondlab_core::hclass::{HClass, ALL_CLASSES};
use diamondlab_core::rational::{frac, int, Rational};
use num_traits::{Signed, Zero};

#[test]
fn epsilon_grid_clean_on_small_range() {
    let report = epsilon_table_check(5, 14).unwrap();
    assert!(report.violations.is_empty(), "{:?}", report.violations);
    assert!(report.cases > 0);
}

#[test]
fn epsilon_positivity_needs_v_equal_n() {
    // For v < n the triangle class never goes positive; at v = n it does
    // (single off-triangle vertex in Y), which is why the class bound is
    // stated for v < n only.
    let tri = HClass::Tri.representative();
    let mut worst_below = Rational::from_integer(0.into()) - int(1);
    for v in 4..9u32 {
        for y in 1u32..16 {
            let e = epsilon(9, v, &tri, y).unwrap();
            if e > worst_below {
                worst_below = e.clone();
            }
        }
    }
    assert!(worst_below <= int(0));
    let at_n: Rational = (1u32..16)
        .map(|y| epsilon(9, 9, &tri, y).unwrap())
        .max()
        .unwrap();
    assert!(at_n.is_positive());
}

#[test]
fn class_bounds_at_the_boundary() {
    // The H0/H1/Hwedge bounds activate exactly past their thresholds.
    assert!(epsilon_class_bound(HClass::H0, 14, 8).unwrap().is_zero()); // r = 7/12 < 2/3
    assert!(epsilon_class_bound(HClass::H0, 14, 10).unwrap().is_positive()); // r = 3/4
    assert!(epsilon_class_bound(HClass::Hwedge, 12, 9).unwrap().is_zero()); // r = 4/5 < 9/10
    assert!(epsilon_class_bound(HClass::Tri, 12, 11).unwrap().is_zero());
}

#[test]
fn case1_clean_full_grid() {
    let report = case1_check(6, 60).unwrap();
    assert!(report.violations.is_empty(), "{:?}", report.violations.len());
    // Equality of the H6 row with the edge product at any admissible v.
    for n in [13u32, 20, 41] {
        let v = 4;
        let ni = n as i64;
        assert_eq!(
            dstar(HClass::H6, n, v).unwrap(),
            frac((ni - 4) * 4, ni * (ni - 1))
        );
    }
}

#[test]
fn consistency_clean_full_grid() {
    let report = certificate_consistency_check(7, 60).unwrap();
    assert!(report.violations.is_empty(), "{:?}", report.violations);
}

#[test]
fn gamma_on_the_regime() {
    for n in 7..=60u32 {
        for v in (2 * n).div_ceil(3)..=n {
            assert!(!gamma(n, v).is_negative(), "n={n} v={v}");
        }
        assert_eq!(gamma(n, n), frac(1, 96));
    }
}

#[test]
fn g_grid_never_exceeds_reference_maxima() {
    let report = g_max_check(3000).unwrap();
    assert!(report.violations.is_empty(), "{:?}", report.violations);
}

#[test]
fn g_rows_are_the_limits_of_simplified_rows() {
    // Substituting v = xn into a simplified row and letting n grow
    // converges to g at rate 1/n: |row − g| ≤ C/n with C = 2 on the
    // sample sequence.
    let g_classes = [
        HClass::H1,
        HClass::Hwedge,
        HClass::Hpar,
        HClass::Claw,
        HClass::Path,
        HClass::Tri,
        HClass::Cyc,
        HClass::Hq,
        HClass::H5,
    ];
    for n in [30u32, 60, 120] {
        for (num, den) in [(2u32, 3u32), (5, 6), (1, 1)] {
            let v = n * num / den;
            let x = frac(num as i64, den as i64);
            for h in g_classes {
                let row = simplified_row(h, n, v).unwrap();
                let limit = g_eval(h, &x).unwrap();
                let diff = (row - limit).abs();
                assert!(
                    diff <= frac(2, n as i64),
                    "{} at n={n}, x={num}/{den}: diff {diff}",
                    h.label()
                );
            }
        }
    }
}

#[test]
fn sq_identity_exhaustive_v4() {
    for mask in 0u64..64 {
        let g = Graph::from_edge_mask(4, mask).unwrap();
        let lhs = sq_forms(&g);
        assert!(lhs >= 0);
        assert_eq!(lhs, sq_identity_rhs(&g), "mask={mask}");
    }
}

#[test]
fn dstar_rows_dominate_nothing_unexpected() {
    // On the many-vertices regime every class stays below the H6 row plus
    // nothing: max over classes of d* + γc equals exactly 1/4 and is
    // attained by H6.
    for n in [9u32, 15, 33] {
        for v in (2 * n).div_ceil(3)..=n {
            let g = gamma(n, v);
            let mut best: Option<Rational> = None;
            for h in ALL_CLASSES {
                let val = dstar(h, n, v).unwrap() + g.clone() * int(h.c_weight());
                if best.as_ref().is_none_or(|b| val > *b) {
                    best = Some(val);
                }
            }
            assert_eq!(best.unwrap(), frac(1, 4), "n={n} v={v}");
        }
    }
}
