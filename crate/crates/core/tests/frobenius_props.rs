use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use tribcensus::exact;
use tribcensus::frobenius::{
    apery_frobenius, apery_set, find_relation, killingbergtro_bound, naive_frobenius, null_vector_search,
    positive_frobenius, positively_representable, yates_null_vector, Isolated, SignPattern, Variant,
};
use tribcensus::recurrence::basis_triple;
use tribcensus::RecurrenceParams;

const T: RecurrenceParams = RecurrenceParams::TRIBONACCI;

fn coprime_triple(max: u64) -> impl Strategy<Value = (u64, u64, u64)> {
    (2..=max, 2..=max, 2..=max).prop_filter("coprime", |&(p, q, r)| p.gcd(&q).gcd(&r) == 1)
}

fn nonneg_representable(g: [u64; 3], m: i128) -> bool {
    if m < 0 {
        return false;
    }
    let m = m as usize;
    let mut ok = vec![false; m + 1];
    ok[0] = true;
    for i in 1..=m {
        ok[i] = g.iter().any(|&x| i >= x as usize && ok[i - x as usize]);
    }
    ok[m]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn positive_shift_reduces_to_nonnegative((p, q, r) in coprime_triple(40), n in 0i128..600) {
        let apery = apery_set(p, q, r).unwrap();
        let shifted = n - (p + q + r) as i128;
        prop_assert_eq!(positively_representable(&apery, p, q, r, n), nonneg_representable([p, q, r], shifted));
    }

    #[test]
    fn frobenius_routes_agree((p, q, r) in coprime_triple(60)) {
        let f = apery_frobenius(p, q, r).unwrap();
        prop_assert_eq!(f, naive_frobenius(p, q, r).unwrap());
        prop_assert_eq!(positive_frobenius(p, q, r).unwrap(), f + (p + q + r) as i128);
    }

    #[test]
    fn relation_bound_is_sound((p, q, r) in coprime_triple(60)) {
        let rel_p = find_relation(p, q, r, Isolated::P).unwrap();
        let rel_q = find_relation(p, q, r, Isolated::Q).unwrap();
        rel_p.validate(p, q, r).unwrap();
        rel_q.validate(p, q, r).unwrap();
        let bound = killingbergtro_bound(p, q, r, &rel_p, &rel_q).unwrap() as i128;
        let apery = apery_set(p, q, r).unwrap();
        for n in bound..=bound + (p * q) as i128 {
            prop_assert!(positively_representable(&apery, p, q, r, n), "n={}", n);
        }
    }

    #[test]
    fn searched_null_vectors_are_exact(n in 4usize..=20, pat in prop_oneof![Just(SignPattern::A), Just(SignPattern::B)]) {
        if let Some(seq) = null_vector_search(T, n, pat, 30).unwrap() {
            let seed = seq.seed();
            prop_assert!(basis_triple(T, n).dot(&seed).is_zero());
            prop_assert!(seq.sequence.last().is_zero());
            prop_assert!(pat.admits(&seed));
        }
    }
}

#[test]
fn constructed_null_vectors_meet_magnitude_bounds() {
    let enc = exact::tribonacci();
    for n in 4..=200usize {
        for (variant, coord, num) in [(Variant::A, 0, 81), (Variant::B, 1, 64)] {
            let s = yates_null_vector(n, variant).unwrap();
            let seed: [BigInt; 3] = s.seed();
            assert!(basis_triple(T, n).dot(&seed).is_zero(), "n={n}");
            assert!(variant.pattern().admits(&seed), "n={n} {variant:?}");
            let mag = seed[coord].abs();
            assert!(enc.below_scaled_half_power(&mag, num, 100, n as u32).unwrap(), "n={n} {variant:?}");
        }
    }
}
