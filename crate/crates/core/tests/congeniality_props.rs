use std::f64::consts::PI;

use proptest::prelude::*;
use tribcensus::congeniality::{
    affable_grid, is_affable, kamelion_determinant, null_vector_fit, sylvester_discriminant, window_a, window_b,
};
use tribcensus::spectral::cubic_roots;
use tribcensus::RecurrenceParams;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn discriminant_routes_agree(a in 0u32..40, b in 0u32..40, c in 1u32..40) {
        let Ok(p) = RecurrenceParams::new(a, b, c) else { return Ok(()) };
        prop_assert_eq!(sylvester_discriminant(p), p.discriminant());
    }

    #[test]
    fn affable_means_one_real_root_above_one(a in 0u32..10, b in 0u32..10) {
        let Ok(p) = RecurrenceParams::new(a, b, 1) else { return Ok(()) };
        let v = is_affable(p);
        if v.is_affable {
            prop_assert!(v.discriminant < 0.into());
            prop_assert!(v.eta1.unwrap().gt(1.0));
        }
    }
}

#[test]
fn affable_grid_has_obtuse_rotation_and_windows() {
    for p in affable_grid() {
        let spec = cubic_roots(p).unwrap();
        assert!(spec.delta.gt(PI / 2.0) && spec.delta.lt(PI), "{p:?}: delta {:?}", spec.delta);
        assert!(!kamelion_determinant(&spec).contains_zero(), "{p:?}");
        let wa = window_a(spec.delta).expect("window a");
        let wb = window_b(spec.delta).expect("window b");
        assert!(wa.epsilon > 0.0 && wb.epsilon > 0.0, "{p:?}");
        let (t, d) = (wa.t, spec.delta.mid());
        assert!(t.cos() > 0.0 && (t + d).cos() < 0.0 && (t + 2.0 * d).cos() < 0.0, "{p:?} t={t}");
    }
}

#[test]
fn affable_grid_admits_null_vectors() {
    for p in affable_grid().into_iter().take(6) {
        let fit = null_vector_fit(p, 7, 16, 40, 0).unwrap();
        assert!(fit.missing.is_empty(), "{p:?}: {:?}", fit.missing);
        assert!(fit.c_a.is_finite() && fit.c_b.is_finite());
    }
}
