use std::sync::OnceLock;

use cosilt_core::algebra::{quiver_from_triangulation, GammaAlgebra};
use cosilt_core::annulus::{crossing_number, enumerate_arcs, Arc, MarkedAnnulus};
use cosilt_core::homext::{ext1_dim, hom_dim, hom_dim_mod_p};
use cosilt_core::linalg::rational;
use cosilt_core::triangulation::{enumerate_maximal, flip, SearchBound, Triangulation};
use proptest::prelude::*;
use proptest::sample::Index;

const SIZES: &[(i64, i64)] = &[(2, 1), (2, 2), (3, 2)];

struct Pool {
    ann: MarkedAnnulus,
    tris: Vec<Triangulation>,
    arcs: Vec<Arc>,
}

fn pools() -> &'static [Pool] {
    static POOLS: OnceLock<Vec<Pool>> = OnceLock::new();
    POOLS.get_or_init(|| {
        SIZES
            .iter()
            .map(|&(p, q)| {
                let ann = MarkedAnnulus::new(p, q).unwrap();
                let tris = enumerate_maximal(ann, SearchBound::new(2))
                    .into_iter()
                    .filter(|t| t.finite_only())
                    .collect();
                let arcs = enumerate_arcs(ann, 2)
                    .into_iter()
                    .filter(|a| a.is_finite())
                    .collect();
                Pool { ann, tris, arcs }
            })
            .collect()
    })
}

fn pick<T>(items: &[T], k: Index) -> &T {
    &items[k.index(items.len())]
}

fn gamma_algebra(pool: &Pool, t: Index) -> GammaAlgebra {
    GammaAlgebra::new(
        pool.ann,
        pick(&pool.tris, t).arcs().iter().copied().collect(),
    )
    .unwrap()
}

/// `n` arcs of the pool outside Γ.
fn outside(pool: &Pool, g: &GammaAlgebra, picks: &[Index]) -> Vec<Arc> {
    let free: Vec<Arc> = pool
        .arcs
        .iter()
        .filter(|a| g.vertex_of(a).is_none())
        .copied()
        .collect();
    picks.iter().map(|&k| *pick(&free, k)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn string_module_dims_are_crossings(s in any::<Index>(), t in any::<Index>(), a in any::<Index>()) {
        let pool = pick(pools(), s);
        let g = gamma_algebra(pool, t);
        let a = outside(pool, &g, &[a])[0];
        let m = g.string_module(a).unwrap();
        let expect: Vec<usize> = g.gamma().iter().map(|x| crossing_number(a, *x, pool.ann).finite().unwrap() as usize).collect();
        prop_assert_eq!(m.dims(), expect.as_slice());
        prop_assert!(m.satisfies(g.quiver()));
    }

    #[test]
    fn support_is_detected_by_injectives(s in any::<Index>(), t in any::<Index>(), a in any::<Index>()) {
        let pool = pick(pools(), s);
        let g = gamma_algebra(pool, t);
        let a = outside(pool, &g, &[a])[0];
        let m = g.string_module(a).unwrap();
        for (i, x) in g.gamma().iter().enumerate() {
            let crosses = !crossing_number(a, *x, pool.ann).is_zero();
            prop_assert_eq!(hom_dim(&m, &g.injective(i)).unwrap() > 0, crosses);
        }
    }

    #[test]
    fn ext_vanishes_iff_arcs_do_not_cross(s in any::<Index>(), t in any::<Index>(), a in any::<Index>(), b in any::<Index>()) {
        let pool = pick(pools(), s);
        let g = gamma_algebra(pool, t);
        let ab = outside(pool, &g, &[a, b]);
        prop_assume!(ab[0] != ab[1]);
        let (m, n) = (g.string_module(ab[0]).unwrap(), g.string_module(ab[1]).unwrap());
        let vanish = ext1_dim(g.algebra(), &m, &n).unwrap() == 0 && ext1_dim(g.algebra(), &n, &m).unwrap() == 0;
        prop_assert_eq!(crossing_number(ab[0], ab[1], pool.ann).is_zero(), vanish);
    }

    #[test]
    fn hom_dimension_survives_reduction_mod_p(s in any::<Index>(), t in any::<Index>(), a in any::<Index>(), b in any::<Index>()) {
        let pool = pick(pools(), s);
        let g = gamma_algebra(pool, t);
        let ab = outside(pool, &g, &[a, b]);
        let (m, n) = (g.string_module(ab[0]).unwrap(), g.string_module(ab[1]).unwrap());
        prop_assert_eq!(hom_dim(&m, &n).unwrap(), hom_dim_mod_p(&m, &n).unwrap());
    }

    #[test]
    fn band_modules_satisfy_relations(s in any::<Index>(), t in any::<Index>(), l in 1i64..7, n in 1usize..4) {
        let g = gamma_algebra(pick(pools(), s), t);
        let m = g.band_module(&rational(l), n).unwrap();
        prop_assert!(m.satisfies(g.quiver()));
        // The core curve meets each bridging arc once and no peripheral arc.
        let expect: Vec<usize> = g.gamma().iter().map(|x| if x.is_bridging() { n } else { 0 }).collect();
        prop_assert_eq!(m.dims(), expect.as_slice());
    }

    #[test]
    fn flips_keep_the_vertex_count(s in any::<Index>(), t in any::<Index>(), a in any::<Index>()) {
        let pool = pick(pools(), s);
        let tri = pick(&pool.tris, t);
        let a = *pick(&tri.arcs().iter().copied().collect::<Vec<_>>(), a);
        let (_, other) = flip(tri, a, SearchBound::new(2)).unwrap();
        let n = pool.ann.marked_points();
        prop_assert_eq!(quiver_from_triangulation(tri).unwrap().vertex_count(), n);
        if other.finite_only() {
            prop_assert_eq!(quiver_from_triangulation(&other).unwrap().vertex_count(), n);
        }
    }
}

#[test]
fn every_finite_triangulation_has_a_finite_dimensional_algebra() {
    for pool in pools() {
        for t in &pool.tris {
            let g = GammaAlgebra::new(pool.ann, t.arcs().iter().copied().collect()).unwrap();
            assert!(g.algebra().dimension() >= pool.ann.marked_points());
        }
    }
}
