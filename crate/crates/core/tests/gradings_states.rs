//! Grading values and state enumeration across the census.

mod common;

use std::collections::BTreeMap;

use kstate::gradings::{check_good_domain_uniformity, delta_spread, grade_state, Quarter};
use kstate::states::{eligible_marked_edges, enumerate_states, state_count_oracle};
use kstate::{parse_pd, DEFAULT_STATE_CAP};

const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

fn gradings_multiset(
    d: &kstate::Diagram,
    e: &kstate::MarkedEdge,
) -> Vec<(Quarter, Quarter, Quarter)> {
    let mut out: Vec<_> = enumerate_states(d, e, DEFAULT_STATE_CAP)
        .unwrap()
        .iter()
        .map(|x| {
            let g = grade_state(d, x);
            (g.maslov, g.alexander, g.delta)
        })
        .collect();
    out.sort();
    out
}

#[test]
fn all_negative_trefoil_gradings() {
    // Rolfsen 3_1 is the all-negative diagram: delta = +1 per state,
    // (M, A) running down a staircase.
    let d = parse_pd(TREFOIL).unwrap();
    assert_eq!(d.writhe(), -3);
    for e in eligible_marked_edges(&d).unwrap() {
        let g = gradings_multiset(&d, &e);
        assert_eq!(
            g,
            vec![
                (
                    Quarter::from_int(0),
                    Quarter::from_int(-1),
                    Quarter::from_int(1)
                ),
                (
                    Quarter::from_int(1),
                    Quarter::from_int(0),
                    Quarter::from_int(1)
                ),
                (
                    Quarter::from_int(2),
                    Quarter::from_int(1),
                    Quarter::from_int(1)
                ),
            ],
            "marked edge {}",
            e.edge
        );
    }
}

#[test]
fn all_positive_trefoil_gradings() {
    // The mirror is the all-positive diagram: writhe +3, delta = -1,
    // Alexander values {-1, 0, +1}.
    let d = parse_pd(TREFOIL).unwrap().mirror();
    assert_eq!(d.writhe(), 3);
    for e in eligible_marked_edges(&d).unwrap() {
        let g = gradings_multiset(&d, &e);
        assert_eq!(
            g,
            vec![
                (
                    Quarter::from_int(-2),
                    Quarter::from_int(-1),
                    Quarter::from_int(-1)
                ),
                (
                    Quarter::from_int(-1),
                    Quarter::from_int(0),
                    Quarter::from_int(-1)
                ),
                (
                    Quarter::from_int(0),
                    Quarter::from_int(1),
                    Quarter::from_int(-1)
                ),
            ],
            "marked edge {}",
            e.edge
        );
    }
}

#[test]
fn figure_eight_gradings() {
    let d = common::census()
        .into_iter()
        .find(|r| r.name == "4_1")
        .unwrap()
        .diagram();
    let e = eligible_marked_edges(&d).unwrap()[0];
    let g = gradings_multiset(&d, &e);
    assert_eq!(g.len(), 5);
    // Thin knot: delta = 0 throughout; Alexander multiset {-1, 0, 0, 0, 1}.
    let alex: Vec<i64> = g.iter().map(|t| t.1.as_integer().unwrap()).collect();
    assert_eq!(alex, vec![-1, 0, 0, 0, 1]);
    assert!(g.iter().all(|t| t.2 == Quarter::ZERO));
    assert!(g.iter().all(|t| t.0 == t.1));
}

#[test]
fn torus_3_4_presentations_spread() {
    let census = common::census();
    let braid = census.iter().find(|r| r.name == "8_19").unwrap().diagram();
    let pretzel = census.iter().find(|r| r.name == "8_19p").unwrap().diagram();
    for e in eligible_marked_edges(&braid).unwrap() {
        assert_eq!(
            delta_spread(&braid, &e, DEFAULT_STATE_CAP).unwrap(),
            Some(3)
        );
    }
    for e in eligible_marked_edges(&pretzel).unwrap() {
        assert_eq!(
            delta_spread(&pretzel, &e, DEFAULT_STATE_CAP).unwrap(),
            Some(1)
        );
    }
}

#[test]
fn census_state_counts_match_oracle_on_every_edge() {
    for r in common::census() {
        let d = r.diagram();
        let oracle = state_count_oracle(&d).unwrap();
        for e in eligible_marked_edges(&d).unwrap() {
            let states = enumerate_states(&d, &e, DEFAULT_STATE_CAP).unwrap();
            assert_eq!(
                num_bigint::BigUint::from(states.len()),
                oracle,
                "{} edge {}",
                r.name,
                e.edge
            );
            for x in &states {
                x.validate(&d, &e).unwrap();
            }
        }
    }
}

#[test]
fn census_good_domains_uniform() {
    for r in common::census() {
        let d = r.diagram();
        check_good_domain_uniformity(&d).unwrap_or_else(|e| panic!("{}: {e}", r.name));
        check_good_domain_uniformity(&d.mirror()).unwrap();
    }
}

#[test]
fn mirror_negates_delta_multiset() {
    for r in common::census() {
        let d = r.diagram();
        let m = d.mirror();
        for e in eligible_marked_edges(&d).unwrap() {
            let mut ours: Vec<Quarter> = enumerate_states(&d, &e, DEFAULT_STATE_CAP)
                .unwrap()
                .iter()
                .map(|x| grade_state(&d, x).delta)
                .collect();
            // Marked edge labels are preserved by mirroring.
            let em = eligible_marked_edges(&m)
                .unwrap()
                .into_iter()
                .find(|me| me.edge == e.edge)
                .unwrap();
            let mut theirs: Vec<Quarter> = enumerate_states(&m, &em, DEFAULT_STATE_CAP)
                .unwrap()
                .iter()
                .map(|x| -grade_state(&m, x).delta)
                .collect();
            ours.sort();
            theirs.sort();
            assert_eq!(ours, theirs, "{} edge {}", r.name, e.edge);
        }
    }
}

#[test]
fn delta_histogram_integrality() {
    // Every state's delta is an integer; histogram keys stay integral.
    for r in common::census() {
        let d = r.diagram();
        let e = eligible_marked_edges(&d).unwrap()[0];
        let mut hist: BTreeMap<i64, usize> = BTreeMap::new();
        for x in enumerate_states(&d, &e, DEFAULT_STATE_CAP).unwrap() {
            let dv = grade_state(&d, &x).delta;
            *hist
                .entry(dv.as_integer().expect("integral delta"))
                .or_default() += 1;
        }
        let total: usize = hist.values().sum();
        assert_eq!(
            num_bigint::BigUint::from(total),
            state_count_oracle(&d).unwrap()
        );
    }
}

#[test]
fn mirror_preserves_quadrant_classes() {
    // Flipping a crossing rotates its slot tuple (the old incoming
    // over-strand becomes slot 0), carrying each quadrant to a quadrant of
    // the same orientation class.
    use kstate::gradings::quadrant_class;
    use kstate::Sign;
    for r in common::census() {
        let d = r.diagram();
        let m = d.mirror();
        for (c, cr) in d.crossings().iter().enumerate() {
            let shift: i16 = match cr.sign {
                Sign::Positive => 1,
                Sign::Negative => -1,
            };
            for q in 0..4u8 {
                let mq = ((q as i16 + shift).rem_euclid(4)) as u8;
                assert_eq!(
                    quadrant_class(&d, c, q),
                    quadrant_class(&m, c, mq),
                    "{} crossing {c} quadrant {q}",
                    r.name
                );
            }
        }
    }
}
