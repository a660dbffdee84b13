//! Property tests: parser robustness, codec round trips, and exact
//! character algebra on randomly chosen rings.

use num_complex::Complex64;
use proptest::prelude::*;
use ringsalem::harmonic::{Character, GridFunction, Pairing};
use ringsalem::incidence::mean_zero_project;
use ringsalem::ring::{parse_ring_spec, RingSpec};
use std::sync::Arc;

fn small_spec() -> impl Strategy<Value = RingSpec> {
    prop_oneof![
        (2u64..=32).prop_map(|n| parse_ring_spec(&format!("zmod({n})")).unwrap()),
        prop_oneof![
            Just(2u64),
            Just(3),
            Just(4),
            Just(5),
            Just(7),
            Just(8),
            Just(9)
        ]
        .prop_map(|q| parse_ring_spec(&format!("gf({q})")).unwrap()),
        (prop_oneof![Just(2u64), Just(3)], 2u32..=3)
            .prop_map(|(q, k)| parse_ring_spec(&format!("trunc(gf({q}),{k})")).unwrap()),
        (2u64..=5, 2u64..=5)
            .prop_map(|(a, b)| { parse_ring_spec(&format!("prod(zmod({a}),zmod({b}))")).unwrap() }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The parser never panics on arbitrary input.
    #[test]
    fn parser_total(text in "\\PC{0,40}") {
        let _ = parse_ring_spec(&text);
    }

    /// Canonical strings parse back to the same spec.
    #[test]
    fn canonical_round_trip(spec in small_spec()) {
        let canonical = spec.canonical();
        let reparsed = parse_ring_spec(&canonical).unwrap();
        prop_assert_eq!(&reparsed, &spec);
        prop_assert_eq!(reparsed.canonical(), canonical);
    }

    /// Ring axioms hold on random triples of random rings (construction
    /// validates exhaustively at small size; this re-checks through the
    /// public surface).
    #[test]
    fn ring_arithmetic_consistent(spec in small_spec(), seed in any::<u64>()) {
        let ring = spec.build().unwrap();
        let m = ring.size() as u64;
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % m) as u16
        };
        for _ in 0..16 {
            let (a, b, c) = (next(), next(), next());
            prop_assert_eq!(ring.add(a, b), ring.add(b, a));
            prop_assert_eq!(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c)));
            prop_assert_eq!(
                ring.mul(a, ring.add(b, c)),
                ring.add(ring.mul(a, b), ring.mul(a, c))
            );
            prop_assert_eq!(ring.add(a, ring.neg(a)), ring.zero());
        }
    }

    /// Characters are exact homomorphisms: phases add mod the denominator.
    #[test]
    fn character_phases_additive(spec in small_spec(), dual_seed in any::<u64>()) {
        let ring = Arc::new(spec.build().unwrap());
        let m = ring.size() as u64;
        let pairing = Arc::new(Pairing::new(ring.clone()).unwrap());
        let dual = vec![(dual_seed % m) as u16, ((dual_seed >> 16) % m) as u16];
        let chi = Character::new(pairing.clone(), dual).unwrap();
        for x0 in 0..ring.size() as u16 {
            let y0 = ring.add(x0, 1 % ring.size() as u16);
            let lhs = chi.phase_at(&[ring.add(x0, x0), y0]);
            let rhs = (chi.phase_at(&[x0, y0]) + chi.phase_at(&[x0, ring.zero()])) % pairing.denom();
            prop_assert_eq!(lhs, rhs);
        }
    }

    /// The mean-zero projector is idempotent and never increases the norm.
    #[test]
    fn projector_idempotent(values in prop::collection::vec(-100.0f64..100.0, 16)) {
        let ring = Arc::new(parse_ring_spec("zmod(4)").unwrap().build().unwrap());
        let f = GridFunction::from_values(
            ring,
            2,
            values.iter().map(|&v| Complex64::new(v, -v / 3.0)).collect(),
        )
        .unwrap();
        let p1 = mean_zero_project(&f);
        let p2 = mean_zero_project(&p1);
        prop_assert!(p1.is_mean_zero());
        prop_assert!(p1.l2_norm() <= f.l2_norm() + 1e-9);
        let drift: f64 = p1
            .values()
            .iter()
            .zip(p2.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        prop_assert!(drift <= 1e-12);
    }

    /// Incidence rows are sorted and transpose-consistent for random
    /// small instances.
    #[test]
    fn incidence_rows_sorted(spec in small_spec()) {
        let ring = Arc::new(spec.build().unwrap());
        if ring.size() > 12 {
            return Ok(());
        }
        let op = ringsalem::incidence::IncidenceOperator::build(ring.clone(), 2, ring.one(), 1)
            .unwrap();
        for (x, row) in op.rows().iter().enumerate() {
            prop_assert!(row.windows(2).all(|w| w[0] < w[1]), "row {x} unsorted");
            for &y in row {
                prop_assert!(op.transpose_rows()[y as usize].contains(&(x as u32)));
            }
        }
    }
}
