//! Brute-force checks run by `cosilt oracle <suite>` and the acceptance test.
//!
//! Each suite returns a [`SuiteReport`]; a suite passes when it checked at
//! least one case and found no failure.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{injective, GammaAlgebra};
use crate::annulus::{
    canonicalize, crossing_number, enumerate_arcs, Arc, Boundary, MarkedAnnulus, Spiral,
};
use crate::cosilting::{
    mutate, tuple_to_pair, CosiltingTuple, ParameterField, RestSide, RigidPoint, Star,
};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::homext::{ext1_dim, hom_dim};
use crate::triangulation::{completions, enumerate_maximal, flip, SearchBound, Triangulation};

pub const SUITES: &[&str] = &[
    "cardinality",
    "dichotomy",
    "two-completions",
    "mutation-fixtures",
    "exchange",
    "ext-crossing",
    "injective",
    "involutions",
];

/// Failure messages kept per report; the count is always exact.
const KEPT_FAILURES: usize = 20;

#[derive(Clone, Debug)]
pub struct OracleConfig {
    pub sizes: Vec<(i64, i64)>,
    pub bound: SearchBound,
    pub seed: u64,
    /// Random pairs per triangulation in `ext-crossing`.
    pub pairs: usize,
    /// Random cases per property in `involutions`.
    pub cases: usize,
    /// BFS depth in `exchange`.
    pub depth: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            sizes: vec![(1, 1), (2, 1), (2, 2), (4, 3)],
            bound: SearchBound::new(3),
            seed: 0,
            pairs: 200,
            cases: 1000,
            depth: 4,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checked: usize,
    pub failed: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
    pub seconds: f64,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        Self {
            suite: suite.into(),
            checked: 0,
            failed: 0,
            failures: Vec::new(),
            notes: Vec::new(),
            seconds: 0.0,
        }
    }

    pub fn passed(&self) -> bool {
        self.checked > 0 && self.failed == 0
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(msg());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failed += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(msg);
        }
    }

    fn absorb(&mut self, outcomes: Vec<std::result::Result<(), String>>) {
        for o in outcomes {
            self.check(o.is_ok(), || o.err().unwrap_or_default());
        }
    }

    pub fn summary(&self) -> String {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        format!(
            "{verdict} {}: {} checked, {} failed ({:.2}s)",
            self.suite, self.checked, self.failed, self.seconds
        )
    }
}

pub fn run_suite(name: &str, cfg: &OracleConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut report = match name {
        "cardinality" => cardinality(cfg)?,
        "dichotomy" => dichotomy(cfg)?,
        "two-completions" => two_completions(cfg)?,
        "mutation-fixtures" => mutation_fixtures(cfg)?,
        "exchange" => exchange(cfg)?,
        "ext-crossing" => ext_crossing(cfg)?,
        "injective" => injective_criterion(cfg)?,
        "involutions" => involutions(cfg)?,
        _ => {
            return Err(Error::Parse(format!(
                "unknown suite {name:?}; expected one of {}",
                SUITES.join(", ")
            )))
        }
    };
    report.seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

fn annulus(p: i64, q: i64) -> Result<MarkedAnnulus> {
    MarkedAnnulus::new(p, q)
}

fn maximal(cfg: &OracleConfig) -> Result<Vec<(MarkedAnnulus, Vec<Triangulation>)>> {
    cfg.sizes
        .iter()
        .map(|&(p, q)| Ok((annulus(p, q)?, enumerate_maximal(annulus(p, q)?, cfg.bound))))
        .collect()
}

fn cardinality(cfg: &OracleConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("cardinality");
    for (ann, tris) in maximal(cfg)? {
        let n = ann.marked_points();
        r.check(!tris.is_empty(), || {
            format!("{ann:?}: no maximal collection found")
        });
        for t in &tris {
            r.check(t.len() == n, || {
                format!("{ann:?}: {} arcs, expected {n}", t.len())
            });
        }
        r.notes.push(format!(
            "({}, {}): {} maximal collections",
            ann.outer(),
            ann.inner(),
            tris.len()
        ));
    }
    Ok(r)
}

fn dichotomy(cfg: &OracleConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("dichotomy");
    for (ann, tris) in maximal(cfg)? {
        let (mut finite, mut asymptotic) = (0, 0);
        for t in &tris {
            let b = t.arcs().iter().filter(|a| a.is_bridging()).count();
            let s = t.arcs().iter().filter(|a| a.is_asymptotic()).count();
            let ok = match (b > 0, s > 0) {
                (true, false) => b >= 2,
                (false, true) => s >= 2,
                _ => false,
            };
            if b > 0 {
                finite += 1;
            } else {
                asymptotic += 1;
            }
            r.check(ok, || {
                format!(
                    "{ann:?}: {b} bridging and {s} asymptotic arcs in {}",
                    join(t.arcs())
                )
            });
        }
        r.notes.push(format!(
            "({}, {}): {finite} finite, {asymptotic} asymptotic",
            ann.outer(),
            ann.inner()
        ));
    }
    Ok(r)
}

fn two_completions(cfg: &OracleConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("two-completions");
    for (_, tris) in maximal(cfg)? {
        let outcomes: Vec<std::result::Result<(), String>> = tris
            .par_iter()
            .flat_map_iter(|t| {
                t.arcs()
                    .iter()
                    .map(move |&a| check_two_completions(t, a, cfg.bound))
            })
            .collect();
        r.absorb(outcomes);
    }
    Ok(r)
}

fn check_two_completions(
    t: &Triangulation,
    a: Arc,
    bound: SearchBound,
) -> std::result::Result<(), String> {
    let rest = t.collection().without(&a);
    let found = completions(&rest, bound).map_err(|e| format!("{a} in {}: {e}", join(t.arcs())))?;
    if found.len() != 2 || !found.contains(t) {
        return Err(format!(
            "{a} in {}: {} completions",
            join(t.arcs()),
            found.len()
        ));
    }
    let other = found
        .iter()
        .find(|x| *x != t)
        .expect("two distinct completions");
    let (beta, flipped) = flip(t, a, bound).map_err(|e| e.to_string())?;
    if &flipped != other {
        return Err(format!("flip of {a} does not give the other completion"));
    }
    let (back, restored) = flip(&flipped, beta, bound).map_err(|e| e.to_string())?;
    if back != a || &restored != t {
        return Err(format!("flip of {a} then {beta} does not return"));
    }
    Ok(())
}

fn mutation_fixtures(cfg: &OracleConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("mutation-fixtures");

    let f = fixtures::finite_example();
    let before = tuple_to_pair(&f)?;
    let (g, _) = mutate(&f, &RigidPoint::ShiftedInjective(7), cfg.bound)?;
    let after = tuple_to_pair(&g)?;
    r.check(before.i == [3, 7].into(), || {
        format!("finite example has I = {:?}", before.i)
    });
    r.check(after.i == [3].into(), || {
        format!("mutation at I(7) gives I' = {:?}", after.i)
    });
    let new: Vec<&RigidPoint> = after.z.iter().filter(|x| !before.z.contains(x)).collect();
    r.check(
        new.len() == 1 && before.z.iter().all(|x| after.z.contains(x)),
        || format!("mutation at I(7) adds {} string arcs", new.len()),
    );
    r.check(
        new.first().map(|x| x.to_string()) == Some("M:B(1,2,-1)".into()),
        || format!("new string arc is {new:?}"),
    );

    let s = fixtures::asymptotic_example();
    let before = tuple_to_pair(&s)?;
    let (h, _) = mutate(
        &s,
        &RigidPoint::String(fixtures::asymptotic_alpha5()),
        cfg.bound,
    )?;
    let after = tuple_to_pair(&h)?;
    r.check(before.i == [2].into() && after.i == before.i, || {
        format!("I changes from {:?} to {:?}", before.i, after.i)
    });
    r.check(h.p == s.p && h.a == s.a, || {
        "Prüfer/adic sets change".into()
    });
    r.check(h.star == Star::G && s.star == Star::G, || {
        "G is lost".into()
    });
    r.check(
        h.c.len() == s.c.len() && h.c.difference(&s.c).count() == 1,
        || "more than one arc replaced".into(),
    );
    r.check(
        h.c.contains(&Arc::peripheral(Boundary::Outer, 2, 2)),
        || "α5 is not replaced by PO(2,2)".into(),
    );
    Ok(r)
}

fn exchange(cfg: &OracleConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("exchange");
    for (name, t) in [
        ("finite", fixtures::finite_example()),
        ("asymptotic", fixtures::asymptotic_example()),
    ] {
        let g = crate::cosilting::exchange_graph(&t, cfg.depth, cfg.bound)?;
        let expected = t.annulus.marked_points()
            + if t.is_finite_case() {
                0
            } else {
                t.field.labels.len()
            };
        for e in &g.edges {
            let (a, b) = (&g.nodes[e.from].tuple, &g.nodes[e.to].tuple);
            r.check(a.is_finite_case() == b.is_finite_case(), || {
                format!(
                    "{name}: edge {} -- {} changes case",
                    g.nodes[e.from].hash, g.nodes[e.to].hash
                )
            });
        }
        for n in g.nodes.iter().filter(|n| n.expanded) {
            let d = g.degree(n.id);
            r.check(d == expected, || {
                format!(
                    "{name}: node {} has degree {d}, expected {expected}",
                    n.hash
                )
            });
        }
        r.notes.push(format!(
            "{name}: {} nodes, {} edges, degree {expected}",
            g.nodes.len(),
            g.edges.len()
        ));
    }
    Ok(r)
}

/// The (4,3) triangulation shared by the fixtures.
fn fixture_gammas() -> Vec<(MarkedAnnulus, Vec<Arc>)> {
    [fixtures::t0(), fixtures::finite_example()]
        .into_iter()
        .map(|t| (t.annulus, t.gamma))
        .collect()
}

fn ext_crossing(cfg: &OracleConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("ext-crossing");
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    for (ann, gamma) in fixture_gammas() {
        let g = GammaAlgebra::new(ann, gamma.clone())?;
        let pool: Vec<Arc> = enumerate_arcs(ann, cfg.bound.winding_bound)
            .into_iter()
            .filter(|a| a.is_finite() && !gamma.contains(a))
            .collect();
        let pairs: Vec<(Arc, Arc)> = (0..cfg.pairs)
            .map(|_| {
                let mut two = pool.choose_multiple(&mut rng, 2);
                (*two.next().unwrap(), *two.next().unwrap())
            })
            .collect();
        let modules: BTreeMap<Arc, _> = pairs
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .map(|a| Ok((a, g.string_module(a)?)))
            .collect::<Result<_>>()?;
        for (a, m) in &modules {
            let expect: Vec<usize> = gamma
                .iter()
                .map(|x| crossing_number(*a, *x, ann).finite().unwrap_or(0) as usize)
                .collect();
            r.check(m.dims() == expect.as_slice(), || {
                format!("dim M({a}) = {:?}, crossings {expect:?}", m.dims())
            });
        }
        let outcomes: Vec<std::result::Result<(), String>> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let alg = g.algebra();
                let ab = ext1_dim(alg, &modules[&a], &modules[&b]).map_err(|e| e.to_string())?;
                let ba = ext1_dim(alg, &modules[&b], &modules[&a]).map_err(|e| e.to_string())?;
                let crossing = crossing_number(a, b, ann);
                if crossing.is_zero() == (ab == 0 && ba == 0) {
                    Ok(())
                } else {
                    Err(format!("{a}, {b}: crossing {crossing}, ext {ab} / {ba}"))
                }
            })
            .collect();
        r.absorb(outcomes);
        r.notes.push(format!(
            "({}, {}): {} pairs from {} arcs",
            ann.outer(),
            ann.inner(),
            pairs.len(),
            pool.len()
        ));
    }
    Ok(r)
}

fn injective_criterion(cfg: &OracleConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("injective");
    for (ann, gamma) in fixture_gammas() {
        let g = GammaAlgebra::new(ann, gamma.clone())?;
        let injectives: Vec<_> = (0..gamma.len())
            .map(|v| injective(g.algebra(), v))
            .collect();
        let field = ParameterField::new(Vec::<String>::new(), RestSide::Prufer);
        let tris: Vec<Triangulation> = enumerate_maximal(ann, cfg.bound)
            .into_iter()
            .filter(|t| t.arcs().iter().any(|a| a.is_bridging()))
            .collect();
        let outcomes: Vec<std::result::Result<(), String>> = tris
            .par_iter()
            .map(|t| {
                let tuple = CosiltingTuple {
                    c: t.arcs().clone(),
                    ..CosiltingTuple::base(ann, gamma.clone(), field.clone())
                        .map_err(|e| e.to_string())?
                };
                let pair = tuple_to_pair(&tuple).map_err(|e| e.to_string())?;
                let expect: BTreeSet<usize> = (1..=gamma.len())
                    .filter(|&i| t.contains(&gamma[i - 1]))
                    .collect();
                if pair.i != expect {
                    return Err(format!(
                        "{}: I = {:?}, expected {expect:?}",
                        join(t.arcs()),
                        pair.i
                    ));
                }
                for x in &pair.z {
                    let RigidPoint::String(a) = x else {
                        return Err(format!("non-string point {x} in finite case"));
                    };
                    let m = g.string_module(*a).map_err(|e| e.to_string())?;
                    for &i in &pair.i {
                        let hom = hom_dim(&m, &injectives[i - 1]).map_err(|e| e.to_string())?;
                        if m.dims()[i - 1] > 0 || hom > 0 {
                            return Err(format!(
                                "M({a}) is supported at {i} (dim {}, hom {hom})",
                                m.dims()[i - 1]
                            ));
                        }
                    }
                }
                Ok(())
            })
            .collect();
        r.notes.push(format!(
            "({}, {}): {} finite tuples",
            ann.outer(),
            ann.inner(),
            tris.len()
        ));
        r.absorb(outcomes);
    }
    Ok(r)
}

fn involutions(cfg: &OracleConfig) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("involutions");
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let pools = maximal(cfg)?;

    for _ in 0..cfg.cases {
        let (_, tris) = pools.choose(&mut rng).expect("sizes");
        let t = tris.choose(&mut rng).expect("non-empty enumeration");
        let a = *t
            .arcs()
            .iter()
            .collect::<Vec<_>>()
            .choose(&mut rng)
            .unwrap();
        let ok = flip(t, *a, cfg.bound)
            .and_then(|(b, u)| flip(&u, b, cfg.bound))
            .map(|(c, v)| c == *a && &v == t);
        r.check(ok == Ok(true), || {
            format!("flip twice at {a} in {}: {ok:?}", join(t.arcs()))
        });
    }

    for _ in 0..cfg.cases {
        let (t, x) = random_label_point(&pools, &mut rng)?;
        let once = mutate(&t, &x, cfg.bound)?.0;
        let twice = mutate(&once, &swapped(&x), cfg.bound)?.0;
        r.check(twice == t && once != t, || {
            format!("swap twice at {x} on {}", t.key())
        });
    }

    for _ in 0..cfg.cases {
        let &(p, q) = cfg.sizes.choose(&mut rng).expect("sizes");
        let ann = annulus(p, q)?;
        let a = random_raw_arc(ann, &mut rng);
        let once = canonicalize(a, ann)?;
        let twice = canonicalize(once, ann)?;
        r.check(once == twice, || {
            format!("canonicalize({a}) = {once}, again {twice}")
        });
    }
    Ok(r)
}

fn swapped(x: &RigidPoint) -> RigidPoint {
    match x {
        RigidPoint::Prufer(l) => RigidPoint::Adic(l.clone()),
        RigidPoint::Adic(l) => RigidPoint::Prufer(l.clone()),
        other => other.clone(),
    }
}

/// A random valid asymptotic-case tuple and one of its labels.
fn random_label_point(
    pools: &[(MarkedAnnulus, Vec<Triangulation>)],
    rng: &mut StdRng,
) -> Result<(CosiltingTuple, RigidPoint)> {
    let (ann, tris) = pools.choose(rng).expect("sizes");
    let gamma: Vec<Arc> = tris
        .iter()
        .find(|t| t.arcs().iter().any(|a| a.is_bridging()))
        .expect("finite triangulation")
        .arcs()
        .iter()
        .copied()
        .collect();
    let asymptotic: Vec<&Triangulation> = tris
        .iter()
        .filter(|t| t.arcs().iter().any(|a| a.is_asymptotic()))
        .collect();
    let c = asymptotic
        .choose(rng)
        .expect("asymptotic triangulation")
        .arcs()
        .clone();
    let n = rng.gen_range(1..=3);
    let labels: Vec<String> = (1..=n).map(|k| format!("λ{k}")).collect();
    let (mut p, mut a) = (BTreeSet::new(), BTreeSet::new());
    for l in &labels {
        if rng.gen_bool(0.5) {
            p.insert(l.clone())
        } else {
            a.insert(l.clone())
        };
    }
    let side = if rng.gen_bool(0.5) {
        RestSide::Prufer
    } else {
        RestSide::Adic
    };
    let t = CosiltingTuple {
        annulus: *ann,
        c,
        p,
        a,
        star: Star::G,
        field: ParameterField::new(labels.clone(), side),
        gamma,
    };
    let l = labels.choose(rng).unwrap().clone();
    let x = if t.p.contains(&l) {
        RigidPoint::Prufer(l)
    } else {
        RigidPoint::Adic(l)
    };
    Ok((t, x))
}

/// Arc coordinates outside the fundamental domain, to exercise canonicalization.
fn random_raw_arc(ann: MarkedAnnulus, rng: &mut StdRng) -> Arc {
    let side = if rng.gen_bool(0.5) {
        Boundary::Outer
    } else {
        Boundary::Inner
    };
    let kind = if ann.count(side) < 2 {
        [0, 2][rng.gen_range(0..2)]
    } else {
        rng.gen_range(0..3)
    };
    match kind {
        0 => Arc::bridging(
            rng.gen_range(-50..50),
            rng.gen_range(-50..50),
            rng.gen_range(-6..=6),
        ),
        1 => Arc::peripheral(
            side,
            rng.gen_range(-50..50),
            rng.gen_range(2..=ann.count(side)),
        ),
        _ => {
            let spiral = if rng.gen_bool(0.5) {
                Spiral::Cw
            } else {
                Spiral::Ccw
            };
            Arc::asymptotic(side, rng.gen_range(-50..50), spiral)
        }
    }
}

fn join<'a>(arcs: impl IntoIterator<Item = &'a Arc>) -> String {
    arcs.into_iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
