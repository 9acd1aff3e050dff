mod common;

use common::{max_diff, qubit, state, unitary};
use grovlab_core::qcore::{overlap_product, tensor, ProductState, PureState};
use proptest::prelude::*;

proptest! {
    #[test]
    fn local_unitaries_preserve_norm(s in state(3), u in unitary(), target in 0usize..3) {
        prop_assert!(u.is_unitary(1e-12));
        let out = s.apply_1q(&u, target).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partial_traces_have_unit_trace(s in state(3)) {
        for keep in [&[0][..], &[1], &[2], &[0, 1], &[0, 2], &[1, 2]] {
            let rho = s.reduced(keep).unwrap();
            prop_assert!((rho.trace().re - 1.0).abs() < 1e-12);
            prop_assert!(rho.trace().im.abs() < 1e-12);
        }
    }

    #[test]
    fn partial_trace_follows_relabeling(s in state(3)) {
        // New qubit j is old qubit order[j]: old {0, 2} become new {1, 2}.
        let p = s.permuted(&[1, 0, 2]).unwrap();
        let a = s.reduced(&[0, 2]).unwrap();
        let b = p.reduced(&[1, 2]).unwrap();
        prop_assert!(a.matrix().max_abs_diff(b.matrix()) < 1e-12);
    }

    #[test]
    fn tensor_is_associative(a in state(1), b in state(1), c in state(2)) {
        let left = tensor(&tensor(&a, &b).unwrap(), &c).unwrap();
        let right = tensor(&a, &tensor(&b, &c).unwrap()).unwrap();
        prop_assert!(max_diff(left.amplitudes(), right.amplitudes()) < 1e-15);
    }

    #[test]
    fn projector_expectation_is_overlap_squared(s in state(3), q0 in qubit(), q1 in qubit(), q2 in qubit()) {
        let p = ProductState::new(vec![q0, q1, q2]).unwrap();
        let direct = overlap_product(&s, &p).unwrap().norm_sqr();
        let via_rho = s.density().expectation(&p.projector()).unwrap();
        prop_assert!((via_rho.re - direct).abs() < 1e-12);
        prop_assert!(via_rho.im.abs() < 1e-12);
    }

    #[test]
    fn product_state_round_trip(q0 in qubit(), q1 in qubit(), q2 in qubit()) {
        let p = ProductState::new(vec![q0, q1, q2]).unwrap();
        let s = PureState::from_product(&p).unwrap();
        prop_assert!((overlap_product(&s, &p).unwrap().norm_sqr() - 1.0).abs() < 1e-12);
    }
}
