use cosilt_core::annulus::{
    canonicalize, crossing_number, rotate, Arc, Boundary, MarkedAnnulus, Spiral,
};
use proptest::prelude::*;

const SIZES: &[(i64, i64)] = &[(1, 1), (2, 1), (1, 3), (2, 2), (4, 3), (5, 2)];

fn annulus() -> impl Strategy<Value = MarkedAnnulus> {
    prop::sample::select(SIZES).prop_map(|(p, q)| MarkedAnnulus::new(p, q).unwrap())
}

fn boundary() -> impl Strategy<Value = Boundary> {
    prop_oneof![Just(Boundary::Outer), Just(Boundary::Inner)]
}

fn spiral() -> impl Strategy<Value = Spiral> {
    prop_oneof![Just(Spiral::Cw), Just(Spiral::Ccw)]
}

/// Raw coordinates, not yet reduced to the fundamental domain.
fn raw_arc(ann: MarkedAnnulus) -> impl Strategy<Value = Arc> {
    let bridging = (-40i64..40, -40i64..40, -5i64..=5).prop_map(|(i, j, w)| Arc::bridging(i, j, w));
    let asymptotic =
        (boundary(), -40i64..40, spiral()).prop_map(|(b, i, s)| Arc::asymptotic(b, i, s));
    let sides: Vec<Boundary> = [Boundary::Outer, Boundary::Inner]
        .into_iter()
        .filter(|&b| ann.count(b) >= 2)
        .collect();
    if sides.is_empty() {
        prop_oneof![bridging, asymptotic].boxed()
    } else {
        let peripheral = (
            prop::sample::select(sides),
            -40i64..40,
            any::<prop::sample::Index>(),
        )
            .prop_map(move |(b, i, k)| {
                Arc::peripheral(b, i, 2 + k.index((ann.count(b) - 1) as usize) as i64)
            });
        prop_oneof![bridging, peripheral, asymptotic].boxed()
    }
}

fn arc_on(ann: MarkedAnnulus) -> impl Strategy<Value = Arc> {
    raw_arc(ann).prop_map(move |a| canonicalize(a, ann).unwrap())
}

fn two_arcs() -> impl Strategy<Value = (MarkedAnnulus, Arc, Arc)> {
    annulus().prop_flat_map(|ann| (Just(ann), arc_on(ann), arc_on(ann)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn crossing_is_symmetric((ann, a, b) in two_arcs()) {
        prop_assert_eq!(crossing_number(a, b, ann), crossing_number(b, a, ann));
    }

    #[test]
    fn crossing_is_deck_invariant((ann, a, b) in two_arcs(), s in -20i64..20, t in -20i64..20) {
        let moved = crossing_number(rotate(a, s, t, ann), rotate(b, s, t, ann), ann);
        prop_assert_eq!(moved, crossing_number(a, b, ann));
    }

    #[test]
    fn canonicalize_is_idempotent(a in annulus().prop_flat_map(|ann| (Just(ann), raw_arc(ann)))) {
        let (ann, a) = a;
        let once = canonicalize(a, ann).unwrap();
        prop_assert_eq!(canonicalize(once, ann).unwrap(), once);
    }

    #[test]
    fn asymptotic_crosses_every_bridging((ann, a, b) in two_arcs()) {
        if a.is_asymptotic() && b.is_bridging() {
            prop_assert!(!crossing_number(a, b, ann).is_zero());
        }
    }

    #[test]
    fn peripherals_on_distinct_boundaries_never_cross((ann, a, b) in two_arcs()) {
        if let (Arc::Peripheral { boundary: x, .. }, Arc::Peripheral { boundary: y, .. }) = (a, b) {
            if x != y {
                prop_assert!(crossing_number(a, b, ann).is_zero());
            }
        }
    }
}

#[test]
fn asymptotic_pairs_cross_iff_same_boundary_and_spirals_differ() {
    for &(p, q) in SIZES {
        let ann = MarkedAnnulus::new(p, q).unwrap();
        let mut all = Vec::new();
        for b in [Boundary::Outer, Boundary::Inner] {
            for i in 0..ann.count(b) {
                for s in [Spiral::Cw, Spiral::Ccw] {
                    all.push(Arc::asymptotic(b, i, s));
                }
            }
        }
        assert_eq!(all.len() as i64, 2 * (p + q));
        for &a in &all {
            for &b in &all {
                let (
                    Arc::Asymptotic {
                        boundary: x,
                        spiral: s,
                        ..
                    },
                    Arc::Asymptotic {
                        boundary: y,
                        spiral: t,
                        ..
                    },
                ) = (a, b)
                else {
                    unreachable!()
                };
                assert_eq!(
                    !crossing_number(a, b, ann).is_zero(),
                    x == y && s != t,
                    "{a} vs {b} on ({p},{q})"
                );
            }
        }
    }
}
