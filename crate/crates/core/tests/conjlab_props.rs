use grovlab_core::conjlab::{
    classify_singular, conjecture_report, family_state, scan_family, FamilyKind, FamilySpec, ScanOptions,
    SingularClassTag,
};
use grovlab_core::groverian::GwBranch;
use proptest::prelude::*;
use std::f64::consts::FRAC_1_SQRT_2;

proptest! {
    #[test]
    fn singular_class_follows_branch(x in 0.0f64..1.0, y in 0.0f64..1.0, z in 0.0f64..1.0) {
        let n = (x * x + y * y + z * z).sqrt();
        prop_assume!(n > 1e-3);
        let c = classify_singular(x / n, y / n, z / n).unwrap();
        match c.class {
            SingularClassTag::Outside => prop_assert_eq!(c.branch, GwBranch::Vertex),
            SingularClassTag::Inside => {
                prop_assert_eq!(c.branch, GwBranch::Circumradius);
                prop_assert!(c.p_max < 0.5);
            }
            SingularClassTag::OnCircle => prop_assert!((c.p_max - 0.5).abs() < 1e-9),
        }
        if c.branch == GwBranch::Vertex {
            prop_assert!(c.p_max >= 0.5 - 1e-9);
        }
    }
}

#[test]
fn family_limits() {
    let w1 = family_state(&FamilySpec::W1).unwrap();
    let ft = family_state(&FamilySpec::FourTerm { a: FRAC_1_SQRT_2, b: 0.5 }).unwrap();
    let ghz = family_state(&FamilySpec::Ghz).unwrap();
    let gl = family_state(&FamilySpec::GhzLike { a: FRAC_1_SQRT_2, b: 0.0 }).unwrap();
    for (x, y) in [(&w1, &ft), (&ghz, &gl)] {
        for (p, q) in x.amplitudes().iter().zip(y.amplitudes()) {
            assert!((p - q).norm() < 1e-15);
        }
    }
}

#[test]
fn four_term_and_ghz_like_grids_hold_one_half_with_feasible_assignment() {
    let opts = ScanOptions::default();
    for kind in [FamilyKind::FourTerm, FamilyKind::GhzLike] {
        let recs = scan_family(kind, 21, &opts).unwrap();
        assert_eq!(recs.len(), 441);
        for r in &recs {
            assert!((r.pmax_numeric - 0.5).abs() < 1e-7, "{kind} {:?}: {}", r.params, r.pmax_numeric);
            assert!(r.any_feasible(), "{kind} {:?}", r.params);
        }
    }
}

#[test]
fn generalized_w_scan_has_no_necessary_violations() {
    let recs = scan_family(FamilyKind::Gw, 11, &ScanOptions::default()).unwrap();
    let rep = conjecture_report(&recs);
    assert!(rep.necessary_violations.is_empty(), "{rep}");
    for r in &recs {
        if let Some(a) = r.pmax_analytic {
            assert!((a - r.pmax_numeric).abs() < 1e-7);
        }
        if (r.pmax_numeric - 0.5).abs() > 1e-6 {
            assert!(!r.any_feasible());
        }
    }
}

#[test]
fn scans_are_deterministic_across_exec_modes() {
    let seq = ScanOptions { exec: grovlab_core::Exec::Sequential, ..ScanOptions::default() };
    let par = ScanOptions { exec: grovlab_core::Exec::Parallel, ..ScanOptions::default() };
    let a = scan_family(FamilyKind::Phi, 3, &seq).unwrap();
    let b = scan_family(FamilyKind::Phi, 3, &par).unwrap();
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.pmax_numeric.to_bits(), y.pmax_numeric.to_bits());
        assert_eq!(x.teleport_bob, y.teleport_bob);
    }
}
