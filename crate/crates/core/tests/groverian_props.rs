mod common;

use common::{state, unitary};
use grovlab_core::conjlab::{family_state, FamilySpec};
use grovlab_core::groverian::{
    bloch_data, pmax_alternating, pmax_bloch, pmax_bloch_traced, pmax_generalized_w, pmax_reduced, SolverOptions,
};
use proptest::prelude::*;

fn opts() -> SolverOptions {
    SolverOptions::with_seed(11)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn methods_agree(s in state(3)) {
        let a = pmax_alternating(&s, &opts()).unwrap();
        let r = pmax_reduced(&s, &opts()).unwrap();
        let (b, _) = pmax_bloch(&s, &opts()).unwrap();
        prop_assert!((a.p_max - r.p_max).abs() < 1e-8, "{} vs {}", a.p_max, r.p_max);
        prop_assert!((a.p_max - b.p_max).abs() < 1e-8, "{} vs {}", a.p_max, b.p_max);
    }

    #[test]
    fn reduced_matches_on_four_qubits(s in state(4)) {
        let a = pmax_alternating(&s, &opts()).unwrap().p_max;
        let r = pmax_reduced(&s, &opts()).unwrap().p_max;
        prop_assert!((a - r).abs() < 1e-8, "{a} vs {r}");
    }

    #[test]
    fn invariant_under_local_unitaries(s in state(3), u0 in unitary(), u1 in unitary(), u2 in unitary()) {
        let t = s.apply_1q(&u0, 0).unwrap().apply_1q(&u1, 1).unwrap().apply_1q(&u2, 2).unwrap();
        let a = pmax_alternating(&s, &opts()).unwrap().p_max;
        let b = pmax_alternating(&t, &opts()).unwrap().p_max;
        prop_assert!((a - b).abs() < 1e-8, "{a} vs {b}");
    }

    #[test]
    fn g_measure_matches_p_max(s in state(3)) {
        let r = pmax_alternating(&s, &opts()).unwrap();
        prop_assert!((r.g_measure * r.g_measure + r.p_max - 1.0).abs() < 1e-12);
        prop_assert!(r.p_max <= 1.0 + 1e-12 && r.p_max >= 0.125 - 1e-12);
    }

    #[test]
    fn bloch_maximizer_is_stationary(s in state(3), traced in 0usize..3) {
        let (res, pt) = pmax_bloch_traced(&s, traced, &opts()).unwrap();
        let data = bloch_data(&s, traced).unwrap();
        prop_assert!(pt.residual(&data) < 1e-8);
        prop_assert!(pt.lambda1 > 0.0 && pt.lambda2 > 0.0);
        prop_assert!((pt.value - res.p_max).abs() < 1e-12);
    }

    #[test]
    fn generalized_w_closed_form(x in 0.0f64..1.0, y in 0.0f64..1.0, z in 0.0f64..1.0) {
        let n = (x * x + y * y + z * z).sqrt();
        prop_assume!(n > 1e-3);
        let (a, b, c) = (x / n, y / n, z / n);
        let (p, _) = pmax_generalized_w(a, b, c).unwrap();
        let num = pmax_alternating(&family_state(&FamilySpec::Gw { a, b, c }).unwrap(), &opts()).unwrap().p_max;
        prop_assert!((p - num).abs() < 1e-8, "({a},{b},{c}): {p} vs {num}");
    }
}

#[test]
fn seeded_runs_are_reproducible() {
    let s = family_state(&FamilySpec::Gw { a: 0.8, b: 0.48, c: 0.36 }).unwrap();
    let a = pmax_alternating(&s, &opts()).unwrap();
    let b = pmax_alternating(&s, &opts()).unwrap();
    assert_eq!(a.p_max.to_bits(), b.p_max.to_bits());
    assert_eq!(a.maximizer, b.maximizer);
}

#[test]
fn sequential_and_parallel_agree() {
    let s = family_state(&FamilySpec::W).unwrap();
    let seq = SolverOptions { exec: grovlab_core::Exec::Sequential, ..opts() };
    let par = SolverOptions { exec: grovlab_core::Exec::Parallel, ..opts() };
    let a = pmax_alternating(&s, &seq).unwrap();
    let b = pmax_alternating(&s, &par).unwrap();
    assert_eq!(a.p_max.to_bits(), b.p_max.to_bits());
    assert_eq!(a.maximizer, b.maximizer);
}
