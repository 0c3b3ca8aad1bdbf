use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;
use tribcensus::recurrence::{basis_triple, extend_backward, extend_forward, terminus};
use tribcensus::RecurrenceParams;

const T: RecurrenceParams = RecurrenceParams::TRIBONACCI;

fn params() -> impl Strategy<Value = RecurrenceParams> {
    (0u32..5, 0u32..5, 1u32..4)
        .prop_filter_map("a+b+c >= 2", |(a, b, c)| RecurrenceParams::new(a, b, c).ok())
}

fn seed(lo: i64, hi: i64) -> impl Strategy<Value = [BigInt; 3]> {
    [lo..hi, lo..hi, lo..hi].prop_map(|s| s.map(BigInt::from))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn backward_undoes_forward(p in params(), s in seed(-10_000, 10_000), len in 3usize..60) {
        let fwd = extend_forward(p, &s, len).unwrap();
        // c > 1 still divides exactly: every earlier term was an input.
        let back = extend_backward(p, &fwd.tail(), len - 3).unwrap();
        prop_assert_eq!(back.terms(), fwd.terms());
    }

    #[test]
    fn forward_undoes_backward(a in 0u32..5, b in 0u32..5, s in seed(-500, 500), steps in 0usize..50) {
        let p = match RecurrenceParams::new(a, b, 1) {
            Ok(p) => p,
            Err(_) => return Ok(()),
        };
        let back = extend_backward(p, &s, steps).unwrap();
        let fwd = extend_forward(p, &back.seed(), back.len()).unwrap();
        prop_assert_eq!(fwd.terms(), back.terms());
    }

    #[test]
    fn terminus_matches_forward(p in params(), s in seed(-1000, 1000), k in 4usize..=40) {
        let fwd = extend_forward(p, &s, k).unwrap();
        prop_assert_eq!(&terminus(p, &s, k), fwd.last());
        prop_assert_eq!(basis_triple(p, k).dot(&s), fwd.last().clone());
    }

    #[test]
    fn positive_seeds_stay_positive(p in params(), s in seed(1, 1000), len in 3usize..80) {
        let fwd = extend_forward(p, &s, len).unwrap();
        prop_assert!(fwd.terms().iter().all(|t| t.is_positive()));
    }

    #[test]
    fn tribonacci_growth_floor(s in seed(1, 50), k in 3usize..60) {
        let fwd = extend_forward(T, &s, k).unwrap();
        for i in 3..=k {
            prop_assert!(*fwd.term(i) >= BigInt::from(2 * i as i64 - 5), "i={}", i);
        }
    }
}

#[test]
fn tribonacci_basis_is_primitive() {
    for k in 1..=60 {
        assert!(basis_triple(T, k).gcd().is_one(), "k={k}");
    }
}
