use proptest::prelude::*;
use softerr::audit::{audit_cdf, AuditConfig};
use softerr::cdf::Rect;
use softerr::rv::{sample_many, PairKind, RvPairSpec};
use softerr::{BitStream, SamplePairs};

fn gaussian(n: usize, seed: u64) -> SamplePairs {
    sample_many(&RvPairSpec::new(PairKind::Gaussian { mu: 0.0, sigma: 1.0 }), n, seed).unwrap()
}

fn pairs_strategy() -> impl Strategy<Value = SamplePairs> {
    prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64), 1..200).prop_map(|p| SamplePairs::new(p).unwrap())
}

fn ordered() -> impl Strategy<Value = (f64, f64)> {
    (-6.0..6.0f64, 1e-6..6.0f64).prop_map(|(a, w)| (a, a + w))
}

proptest! {
    #[test]
    fn cdf_within_unit_interval(s in pairs_strategy(), x1 in -7.0..7.0f64, x2 in -7.0..7.0f64) {
        let f = s.joint_cdf(x1, x2);
        prop_assert!((0.0..=1.0).contains(&f));
        prop_assert!((0.0..=1.0).contains(&s.marginal_cdf_x1(x1)));
        prop_assert!((0.0..=1.0).contains(&s.marginal_cdf_x2(x2)));
    }

    #[test]
    fn monotone_in_each_coordinate(s in pairs_strategy(), (a, b) in ordered(), (c, d) in ordered()) {
        prop_assert!(s.joint_cdf(a, c) <= s.joint_cdf(b, c));
        prop_assert!(s.joint_cdf(b, c) <= s.joint_cdf(b, d));
    }

    #[test]
    fn joint_event_contained_in_marginals(s in pairs_strategy(), x1 in -7.0..7.0f64, x2 in -7.0..7.0f64) {
        let f = s.joint_count(x1, x2);
        prop_assert!(f <= s.marginal_count_x1(x1));
        prop_assert!(f <= s.marginal_count_x2(x2));
    }

    #[test]
    fn interval_identity_is_exact(s in pairs_strategy(), (a, b) in ordered(), (c, d) in ordered()) {
        prop_assert_eq!(s.interval_prob(a, b, c, d).unwrap(), s.interval_via_cdf(a, b, c, d).unwrap());
        prop_assert!(s.interval_prob(a, b, c, d).unwrap() >= 0.0);
    }

    #[test]
    fn limits_attained_at_extremes(s in pairs_strategy()) {
        let (min, max) = (s.min(), s.max());
        prop_assert_eq!(s.joint_cdf(max.0, max.1), 1.0);
        prop_assert_eq!(s.joint_cdf(min.0.next_down(), max.1), 0.0);
        prop_assert_eq!(s.joint_cdf(max.0, min.1.next_down()), 0.0);
        prop_assert_eq!(s.marginal_cdf_x1(max.0), 1.0);
        prop_assert_eq!(s.marginal_cdf_x2(min.1.next_down()), 0.0);
    }

    #[test]
    fn marginal_is_joint_at_the_far_edge(s in pairs_strategy(), x1 in -7.0..7.0f64) {
        prop_assert_eq!(s.joint_cdf(x1, s.max().1), s.marginal_cdf_x1(x1));
    }
}

#[test]
fn thousand_rectangles_on_gaussian_samples() {
    let s = gaussian(10_000, 11);
    let mut mismatches = 0;
    for k in 0..1000u64 {
        let (bits, _) = BitStream::derive(99, k).take(4 * 16);
        let coord = |j: usize| {
            let v = bits[16 * j..16 * (j + 1)]
                .iter()
                .fold(0u32, |acc, &b| (acc << 1) | u32::from(b));
            -4.0 + 8.0 * f64::from(v) / 65536.0
        };
        let (a, b) = (coord(0).min(coord(1)), coord(0).max(coord(1)));
        let (c, d) = (coord(2).min(coord(3)), coord(2).max(coord(3)));
        let Ok(rect) = Rect::new(a, b, c, d) else { continue };
        if s.interval_count(rect) != s.interval_count_via_cdf(rect) {
            mismatches += 1;
        }
    }
    assert_eq!(mismatches, 0);
}

#[test]
fn rectangle_counts_partition_the_plane() {
    let s = gaussian(5_000, 3);
    let cuts = [-1.0, 0.0, 0.5, 2.0];
    let edges: Vec<f64> = std::iter::once(-1e9).chain(cuts).chain(std::iter::once(1e9)).collect();
    let mut total = 0;
    for w1 in edges.windows(2) {
        for w2 in edges.windows(2) {
            total += s.interval_count(Rect::new(w1[0], w1[1], w2[0], w2[1]).unwrap());
        }
    }
    assert_eq!(total, s.len());
}

#[test]
fn audit_passes_on_both_distributions() {
    for kind in [PairKind::StandardUniform, PairKind::Gaussian { mu: 1.0, sigma: 2.0 }] {
        let s = sample_many(&RvPairSpec::new(kind), 100_000, 42).unwrap();
        let report = audit_cdf(&s, &AuditConfig::new(42)).unwrap();
        assert!(report.passed(), "{kind:?}\n{report}");
    }
}

#[test]
fn degenerate_rectangles_rejected() {
    assert!(Rect::new(1.0, 1.0, 0.0, 1.0).is_err());
    assert!(Rect::new(0.0, 1.0, 2.0, 1.0).is_err());
    assert!(Rect::new(f64::NAN, 1.0, 0.0, 1.0).is_err());
}

#[test]
fn csv_round_trip_preserves_counts() {
    let s = gaussian(1_000, 8);
    let mut buf = Vec::new();
    s.write_csv(&mut buf).unwrap();
    assert!(buf.starts_with(b"x1,x2\n"));
    let back = SamplePairs::read_csv(buf.as_slice()).unwrap();
    assert_eq!(back.pairs(), s.pairs());
}
