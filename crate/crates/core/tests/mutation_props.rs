use std::collections::BTreeSet;
use std::sync::OnceLock;

use cosilt_core::annulus::{Arc, MarkedAnnulus};
use cosilt_core::cosilting::{
    exchange_graph, mutable_points, mutate, tuple_to_pair, CosiltingTuple, ParameterField,
    RestSide, RigidPoint, Star,
};
use cosilt_core::triangulation::{
    completions, enumerate_maximal, flip, SearchBound, Triangulation,
};
use proptest::prelude::*;
use proptest::sample::Index;

const SIZES: &[(i64, i64)] = &[(1, 1), (2, 1), (2, 2), (3, 2)];

fn bound() -> SearchBound {
    SearchBound::new(2)
}

struct Pool {
    ann: MarkedAnnulus,
    tris: Vec<Triangulation>,
    gamma: Vec<Arc>,
}

fn pools() -> &'static [Pool] {
    static POOLS: OnceLock<Vec<Pool>> = OnceLock::new();
    POOLS.get_or_init(|| {
        SIZES
            .iter()
            .map(|&(p, q)| {
                let ann = MarkedAnnulus::new(p, q).unwrap();
                let tris = enumerate_maximal(ann, bound());
                let gamma = tris
                    .iter()
                    .find(|t| t.finite_only())
                    .unwrap()
                    .arcs()
                    .iter()
                    .copied()
                    .collect();
                Pool { ann, tris, gamma }
            })
            .collect()
    })
}

fn pick<T>(items: &[T], k: Index) -> &T {
    &items[k.index(items.len())]
}

fn arc_of(t: &Triangulation, k: Index) -> Arc {
    *pick(&t.arcs().iter().copied().collect::<Vec<_>>(), k)
}

/// A valid tuple in either case; asymptotic tuples get `n` labels split by `mask`.
fn tuple(pool: &Pool, t: &Triangulation, n: usize, mask: u8, side: bool) -> CosiltingTuple {
    let labels: Vec<String> = (1..=n).map(|k| format!("λ{k}")).collect();
    let field = ParameterField::new(
        labels.clone(),
        if side {
            RestSide::Prufer
        } else {
            RestSide::Adic
        },
    );
    let mut out = CosiltingTuple::base(pool.ann, pool.gamma.clone(), field).unwrap();
    out.c = t.arcs().clone();
    if !t.finite_only() {
        for (k, l) in labels.into_iter().enumerate() {
            if mask >> k & 1 == 1 {
                out.p.insert(l);
            } else {
                out.a.insert(l);
            }
        }
        out.star = Star::G;
    } else {
        out.field = ParameterField::new(Vec::<String>::new(), out.field.rest_side);
    }
    out
}

fn any_tuple() -> impl Strategy<Value = CosiltingTuple> {
    (
        any::<Index>(),
        any::<Index>(),
        0usize..=3,
        any::<u8>(),
        any::<bool>(),
    )
        .prop_map(|(s, t, n, mask, side)| {
            let pool = pick(pools(), s);
            tuple(pool, pick(&pool.tris, t), n, mask, side)
        })
}

fn asymptotic_tuple() -> impl Strategy<Value = CosiltingTuple> {
    (
        any::<Index>(),
        any::<Index>(),
        1usize..=3,
        any::<u8>(),
        any::<bool>(),
    )
        .prop_map(|(s, t, n, mask, side)| {
            let pool = pick(pools(), s);
            let tris: Vec<&Triangulation> = pool.tris.iter().filter(|t| !t.finite_only()).collect();
            tuple(pool, *pick(&tris, t), n, mask, side)
        })
}

fn arc_points(t: &CosiltingTuple) -> Vec<RigidPoint> {
    mutable_points(t)
        .unwrap()
        .into_iter()
        .filter(|x| matches!(x, RigidPoint::String(_) | RigidPoint::ShiftedInjective(_)))
        .collect()
}

fn label_points(t: &CosiltingTuple) -> Vec<RigidPoint> {
    mutable_points(t)
        .unwrap()
        .into_iter()
        .filter(|x| matches!(x, RigidPoint::Prufer(_) | RigidPoint::Adic(_)))
        .collect()
}

/// The point naming the same label after a swap.
fn swapped(x: &RigidPoint) -> RigidPoint {
    match x {
        RigidPoint::Prufer(l) => RigidPoint::Adic(l.clone()),
        RigidPoint::Adic(l) => RigidPoint::Prufer(l.clone()),
        other => other.clone(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn flip_twice_is_identity(s in any::<Index>(), t in any::<Index>(), a in any::<Index>()) {
        let tri = pick(&pick(pools(), s).tris, t);
        let a = arc_of(tri, a);
        let (b, other) = flip(tri, a, bound()).unwrap();
        prop_assert!(!other.contains(&a) && other.contains(&b));
        let (back, again) = flip(&other, b, bound()).unwrap();
        prop_assert_eq!(back, a);
        prop_assert_eq!(&again, tri);
    }

    #[test]
    fn prufer_adic_swap_twice_is_identity(t in asymptotic_tuple(), k in any::<Index>()) {
        let labels = label_points(&t);
        let x = pick(&labels, k);
        let once = mutate(&t, x, bound()).unwrap().0;
        prop_assert_ne!(&once, &t);
        prop_assert_eq!(mutate(&once, &swapped(x), bound()).unwrap().0, t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn completions_are_monotone(s in any::<Index>(), t in any::<Index>(), a in any::<Index>(), b in any::<Index>()) {
        let tri = pick(&pick(pools(), s).tris, t);
        let (a, b) = (arc_of(tri, a), arc_of(tri, b));
        let big = tri.collection().without(&a);
        let small = big.without(&b);
        let wide = bound().covering(tri.arcs());
        // Removing two arcs may leave infinitely many completions.
        let found = completions(&small, wide);
        prop_assume!(!matches!(found, Err(cosilt_core::Error::BoundTooTight { .. })));
        let from_small: BTreeSet<_> = found.unwrap().into_iter().collect();
        for c in completions(&big, wide).unwrap() {
            prop_assert!(from_small.contains(&c));
        }
    }

    #[test]
    fn arc_mutation_keeps_case_and_swaps_the_two_completions(t in any_tuple(), k in any::<Index>()) {
        let points = arc_points(&t);
        let x = pick(&points, k);
        let (u, _) = mutate(&t, x, bound()).unwrap();
        prop_assert_eq!(u.is_finite_case(), t.is_finite_case());
        let common = t.collection().arcs().intersection(u.collection().arcs()).count();
        prop_assert_eq!(common, t.c.len() - 1);
        let rest: BTreeSet<Arc> = t.c.intersection(&u.c).copied().collect();
        let rest = cosilt_core::triangulation::ArcCollection::new(t.annulus, rest).unwrap();
        let found: BTreeSet<BTreeSet<Arc>> =
            completions(&rest, bound().covering(t.c.iter().chain(&u.c))).unwrap().into_iter().map(|c| c.arcs().clone()).collect();
        prop_assert_eq!(found, [t.c.clone(), u.c.clone()].into());
    }

    #[test]
    fn strings_and_injectives_number_p_plus_q(t in any_tuple()) {
        let pair = tuple_to_pair(&t).unwrap();
        let strings = pair.z.iter().filter(|x| matches!(x, RigidPoint::String(_))).count();
        prop_assert_eq!(strings + pair.i.len(), t.annulus.marked_points());
    }

    #[test]
    fn label_swap_commutes_with_arc_mutation(t in asymptotic_tuple(), k in any::<Index>(), j in any::<Index>()) {
        let labels = label_points(&t);
        let l = pick(&labels, k);
        let x = pick(&arc_points(&t), j).clone();
        let first = mutate(&mutate(&t, l, bound()).unwrap().0, &x, bound()).unwrap().0;
        let second = mutate(&t, &x, bound()).unwrap().0;
        let second = mutate(&second, l, bound()).unwrap().0;
        prop_assert_eq!(first, second);
    }
}

#[test]
fn degree_formula_on_small_graphs() {
    for pool in pools() {
        let finite = pool.tris.iter().find(|t| t.finite_only()).unwrap();
        let asymptotic = pool.tris.iter().find(|t| !t.finite_only()).unwrap();
        for t in [
            tuple(pool, finite, 0, 0, true),
            tuple(pool, asymptotic, 2, 0b01, true),
        ] {
            let g = exchange_graph(&t, 2, bound()).unwrap();
            let expected = t.annulus.marked_points() + t.field.labels.len();
            assert!(g.degree_violations().is_empty());
            for n in g.nodes.iter().filter(|n| n.expanded) {
                assert_eq!(g.degree(n.id), expected);
            }
        }
    }
}
