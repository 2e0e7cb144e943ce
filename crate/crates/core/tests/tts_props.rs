use embedreuse::anneal::{k_p, proc_time, TimingModel};
use embedreuse::TtsError;
use proptest::prelude::*;

proptest! {
    #[test]
    fn k_p_falls_with_success_rate(s1 in 1e-6f64..0.999, s2 in 1e-6f64..0.999, p in 0.5f64..0.9999) {
        let (lo, hi) = if s1 < s2 { (s1, s2) } else { (s2, s1) };
        prop_assert!(k_p(lo, p).unwrap() >= k_p(hi, p).unwrap());
        prop_assert!(k_p(hi, p).unwrap() >= 1.0);
    }

    #[test]
    fn k_p_rises_with_confidence(s in 1e-6f64..0.999, p1 in 0.01f64..0.9999, p2 in 0.01f64..0.9999) {
        let (lo, hi) = if p1 < p2 { (p1, p2) } else { (p2, p1) };
        prop_assert!(k_p(s, lo).unwrap() <= k_p(s, hi).unwrap());
    }

    #[test]
    fn processing_time_is_monotone(k1 in 1.0f64..1e5, k2 in 1.0f64..1e5) {
        let tm = TimingModel::dwave2x();
        let (lo, hi) = if k1 < k2 { (k1, k2) } else { (k2, k1) };
        prop_assert!(proc_time(lo, &tm) <= proc_time(hi, &tm));
    }
}

#[test]
fn zero_success_is_unsolved() {
    assert_eq!(k_p(0.0, 0.99), Err(TtsError::Unsolved));
}
