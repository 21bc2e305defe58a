//! Property tests over randomly generated braid-closure diagrams.

use proptest::prelude::*;

use kstate::alexander::{fox_alexander, state_sum_euler};
use kstate::alternation::{alternating_assignments, brute_force_dalt, dalt_diagram};
use kstate::construct::braid_diagram;
use kstate::gradings::{check_decomposition, check_good_domain_uniformity, delta_spread};
use kstate::states::{eligible_marked_edges, enumerate_states, state_count_oracle};
use kstate::{parse_gauss, Diagram, DEFAULT_STATE_CAP};

fn braid_words() -> impl Strategy<Value = Vec<i32>> {
    let letter = prop_oneof![Just(1i32), Just(-1), Just(2), Just(-2), Just(3), Just(-3)];
    proptest::collection::vec(letter, 1..=8)
}

/// Many random words close to links; keep the knots.
fn arb_diagram() -> impl Strategy<Value = Diagram> {
    braid_words().prop_filter_map("braid closure must be a knot", |w| braid_diagram(&w).ok())
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 48,
        .. ProptestConfig::default()
    })]

    #[test]
    fn euler_formula_and_corner_totals(d in arb_diagram()) {
        prop_assert_eq!(d.faces().len(), d.n() + 2);
        let corners: usize = d.faces().iter().map(|f| f.corners.len()).sum();
        prop_assert_eq!(corners, 4 * d.n());
    }

    #[test]
    fn mirror_properties(d in arb_diagram()) {
        let m = d.mirror();
        prop_assert_eq!(m.writhe(), -d.writhe());
        prop_assert_eq!(m.is_alternating(), d.is_alternating());
        prop_assert_eq!(m.bad_domain_count(), d.bad_domain_count());
        prop_assert_eq!(m.mirror().to_pd(), d.to_pd());
        prop_assert_eq!(dalt_diagram(&m).unwrap(), dalt_diagram(&d).unwrap());
        prop_assert_eq!(fox_alexander(&m).unwrap(), fox_alexander(&d).unwrap());
    }

    #[test]
    fn gauss_round_trip(d in arb_diagram()) {
        let back = parse_gauss(&d.to_gauss()).unwrap();
        prop_assert_eq!(back.to_pd(), d.to_pd());
    }

    #[test]
    fn bad_edges_characterize_alternation(d in arb_diagram()) {
        prop_assert_eq!(d.bad_edges().is_empty(), d.is_alternating());
        prop_assert_eq!(d.bad_domain_count() == 0, d.is_alternating());
    }

    #[test]
    fn masks_complementary_and_minimal(d in arb_diagram()) {
        let [a, b] = alternating_assignments(&d).unwrap();
        prop_assert_eq!(a.len() + b.len(), d.n());
        let dalt = dalt_diagram(&d).unwrap();
        prop_assert_eq!(dalt, a.len().min(b.len()));
        if d.n() <= 7 {
            prop_assert_eq!(dalt, brute_force_dalt(&d).unwrap());
        }
    }

    #[test]
    fn state_counts_and_theorem(d in arb_diagram()) {
        let oracle = state_count_oracle(&d).unwrap();
        let dalt = dalt_diagram(&d).unwrap() as u64;
        let edges = eligible_marked_edges(&d).unwrap();
        prop_assert_eq!(edges.len(), 2 * d.n());
        for e in edges.iter().take(4) {
            let states = enumerate_states(&d, e, DEFAULT_STATE_CAP).unwrap();
            prop_assert_eq!(num_bigint::BigUint::from(states.len()), oracle.clone());
            for x in &states {
                x.validate(&d, e).unwrap();
                check_decomposition(&d, x).unwrap();
            }
            let spread = delta_spread(&d, e, DEFAULT_STATE_CAP).unwrap().unwrap();
            prop_assert!(spread <= dalt);
        }
        check_good_domain_uniformity(&d).unwrap();
    }

    #[test]
    fn euler_matches_fox(d in arb_diagram()) {
        let fox = fox_alexander(&d).unwrap();
        for e in eligible_marked_edges(&d).unwrap().iter().take(3) {
            prop_assert_eq!(&state_sum_euler(&d, e, DEFAULT_STATE_CAP).unwrap(), &fox);
        }
    }
}
