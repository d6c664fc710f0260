//! Lifted geometry of a finite triangulation in the universal cover.
//!
//! Boundary vertices of the strip are ordered counterclockwise: bottom
//! positions left to right, then top positions right to left. Placing the
//! vertices in that order on a parabola puts them in convex position, so
//! every lifted arc becomes a straight chord and two chords cross exactly when
//! their endpoints interleave.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap, HashSet};

use num_integer::Integer;

use crate::annulus::{Arc, Boundary, MarkedAnnulus};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lift {
    Bottom(i64),
    Top(i64),
}

impl Lift {
    /// Position in the counterclockwise order of the strip's boundary.
    pub(crate) fn key(self) -> (u8, i64) {
        match self {
            Lift::Bottom(y) => (0, y),
            Lift::Top(x) => (1, -x),
        }
    }

    pub(crate) fn shift(self, k: i64, ann: MarkedAnnulus) -> Lift {
        match self {
            Lift::Bottom(y) => Lift::Bottom(y + ann.inner() * k),
            Lift::Top(x) => Lift::Top(x + ann.outer() * k),
        }
    }

    fn deck_index(self, ann: MarkedAnnulus) -> i64 {
        match self {
            Lift::Bottom(y) => Integer::div_floor(&y, &ann.inner()),
            Lift::Top(x) => Integer::div_floor(&x, &ann.outer()),
        }
    }
}

fn key_cmp(a: Lift, b: Lift) -> Ordering {
    a.key().cmp(&b.key())
}

/// What a triangle side is: an arc of the triangulation (by index) or a
/// boundary segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Arc(usize),
    Boundary,
}

/// A lift of an arc of the triangulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) struct LiftedArc {
    pub ends: (Lift, Lift),
    pub arc: usize,
}

impl LiftedArc {
    pub fn other_end(&self, v: Lift) -> Lift {
        if self.ends.0 == v {
            self.ends.1
        } else {
            self.ends.0
        }
    }

    pub fn shared_end(&self, other: &LiftedArc) -> Option<Lift> {
        [self.ends.0, self.ends.1]
            .into_iter()
            .find(|v| *v == other.ends.0 || *v == other.ends.1)
    }
}

/// A triangle of the lifted triangulation, vertices in counterclockwise
/// order, translated to a canonical fundamental domain. Side `k` joins
/// vertex `k` to vertex `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangle {
    pub vertices: [Lift; 3],
    pub sides: [Side; 3],
}

impl Triangle {
    pub fn is_internal(&self) -> bool {
        self.sides.iter().all(|s| matches!(s, Side::Arc(_)))
    }
}

/// Endpoints of the lift of a finite arc, translated by `k` deck steps.
pub(crate) fn arc_lift(arc: Arc, k: i64, ann: MarkedAnnulus) -> (Lift, Lift) {
    let (p, q) = (ann.outer(), ann.inner());
    match arc {
        Arc::Bridging {
            outer,
            inner,
            winding,
        } => (
            Lift::Top(outer + p * k),
            Lift::Bottom(inner + q * winding + q * k),
        ),
        Arc::Peripheral {
            boundary: Boundary::Outer,
            start,
            span,
        } => (Lift::Top(start + p * k), Lift::Top(start + span + p * k)),
        Arc::Peripheral {
            boundary: Boundary::Inner,
            start,
            span,
        } => (
            Lift::Bottom(start + q * k),
            Lift::Bottom(start + span + q * k),
        ),
        Arc::Asymptotic { .. } => unreachable!("asymptotic arcs have no finite lift"),
    }
}

/// Translates a vertex set so that it sits in the canonical fundamental
/// domain; returns the deck shift applied.
fn normalizing_shift(vertices: &[Lift], ann: MarkedAnnulus) -> i64 {
    let bottom = vertices.iter().filter_map(|v| match v {
        Lift::Bottom(y) => Some(*y),
        Lift::Top(_) => None,
    });
    match bottom.min() {
        Some(y) => -Integer::div_floor(&y, &ann.inner()),
        None => {
            let x = vertices
                .iter()
                .map(|v| match v {
                    Lift::Top(x) => *x,
                    Lift::Bottom(_) => unreachable!(),
                })
                .min()
                .expect("non-empty");
            -Integer::div_floor(&x, &ann.outer())
        }
    }
}

/// The triangulation `gamma` (finite arcs only) lifted to the strip.
#[derive(Clone, Debug)]
pub struct Strip {
    ann: MarkedAnnulus,
    gamma: Vec<Arc>,
    max_winding: i64,
    triangles: Vec<Triangle>,
    index: HashMap<[Lift; 3], usize>,
}

impl Strip {
    pub fn new(ann: MarkedAnnulus, gamma: &[Arc]) -> Result<Self> {
        if gamma.iter().any(Arc::is_asymptotic) || gamma.len() != ann.marked_points() {
            return Err(Error::NotFiniteTriangulation);
        }
        let max_winding = gamma.iter().map(|a| a.winding().abs()).max().unwrap_or(0);
        let reach = max_winding + 4;
        let mut edges: HashMap<(Lift, Lift), Side> = HashMap::new();
        let mut neighbours: BTreeMap<Lift, Vec<Lift>> = BTreeMap::new();
        let mut add = |a: Lift, b: Lift, side: Side| {
            let (a, b) = if key_cmp(a, b) == Ordering::Less {
                (a, b)
            } else {
                (b, a)
            };
            if edges.insert((a, b), side).is_none() {
                neighbours.entry(a).or_default().push(b);
                neighbours.entry(b).or_default().push(a);
            }
        };
        for (idx, &arc) in gamma.iter().enumerate() {
            for k in -reach..=reach {
                let (a, b) = arc_lift(arc, k, ann);
                add(a, b, Side::Arc(idx));
            }
        }
        for x in -reach * ann.outer()..=reach * ann.outer() {
            add(Lift::Top(x), Lift::Top(x + 1), Side::Boundary);
        }
        for y in -(reach + max_winding) * ann.inner()..=(reach + max_winding) * ann.inner() {
            add(Lift::Bottom(y), Lift::Bottom(y + 1), Side::Boundary);
        }

        let side = |a: Lift, b: Lift| {
            let key = if key_cmp(a, b) == Ordering::Less {
                (a, b)
            } else {
                (b, a)
            };
            edges.get(&key).copied()
        };
        let mut found: BTreeMap<[Lift; 3], [Side; 3]> = BTreeMap::new();
        for (&u, ns) in &neighbours {
            for (i, &v) in ns.iter().enumerate() {
                for &w in &ns[i + 1..] {
                    if side(v, w).is_none() {
                        continue;
                    }
                    let mut verts = [u, v, w];
                    verts.sort_by(|a, b| key_cmp(*a, *b));
                    let k = normalizing_shift(&verts, ann);
                    let canon = verts.map(|x| x.shift(k, ann));
                    let sides = [
                        side(verts[0], verts[1]).expect("edge"),
                        side(verts[1], verts[2]).expect("edge"),
                        side(verts[2], verts[0]).expect("edge"),
                    ];
                    found.insert(canon, sides);
                }
            }
        }
        let triangles: Vec<Triangle> = found
            .into_iter()
            .map(|(vertices, sides)| Triangle { vertices, sides })
            .collect();
        if triangles.len() != ann.marked_points() {
            return Err(Error::NotFiniteTriangulation);
        }
        let index = triangles
            .iter()
            .enumerate()
            .map(|(i, t)| (t.vertices, i))
            .collect();
        Ok(Self {
            ann,
            gamma: gamma.to_vec(),
            max_winding,
            triangles,
            index,
        })
    }

    pub fn annulus(&self) -> MarkedAnnulus {
        self.ann
    }

    pub fn gamma(&self) -> &[Arc] {
        &self.gamma
    }

    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    /// The triangle containing the corner at `v` between two lifted arcs
    /// sharing `v`, together with the corner translated into the triangle's
    /// canonical frame.
    pub(crate) fn corner(&self, a: &LiftedArc, b: &LiftedArc) -> Option<(usize, Lift)> {
        let v = a.shared_end(b)?;
        let mut verts = [v, a.other_end(v), b.other_end(v)];
        verts.sort_by(|x, y| key_cmp(*x, *y));
        let k = normalizing_shift(&verts, self.ann);
        let canon = verts.map(|x| x.shift(k, self.ann));
        let t = *self.index.get(&canon)?;
        Some((t, v.shift(k, self.ann)))
    }

    /// Lifts of arcs of the triangulation having an endpoint within the deck
    /// range `[lo, hi]`, widened by the triangulation's winding.
    fn lifts_near(&self, lo: i64, hi: i64) -> Vec<LiftedArc> {
        let w = self.max_winding + 2;
        let mut out = Vec::new();
        for (idx, &arc) in self.gamma.iter().enumerate() {
            for k in lo - w..=hi + w {
                out.push(LiftedArc {
                    ends: arc_lift(arc, k, self.ann),
                    arc: idx,
                });
            }
        }
        out
    }

    /// Lifted arcs of the triangulation crossed by the chord from `u` to `v`,
    /// in the order the chord meets them.
    pub(crate) fn crossings(&self, u: Lift, v: Lift) -> Vec<LiftedArc> {
        let (du, dv) = (u.deck_index(self.ann), v.deck_index(self.ann));
        let (lo, hi) = (du.min(dv), du.max(dv));
        let (ku, kv) = (u.key(), v.key());
        let (a, b) = if ku < kv { (ku, kv) } else { (kv, ku) };
        let inside = |x: Lift| a < x.key() && x.key() < b;
        let mut seen = HashSet::new();
        let crossing: Vec<LiftedArc> = self
            .lifts_near(lo, hi)
            .into_iter()
            .filter(|e| {
                let (x, y) = e.ends;
                let touches = [x, y].iter().any(|z| *z == u || *z == v);
                !touches && inside(x) != inside(y)
            })
            .filter(|e| seen.insert(*e))
            .collect();

        // Parabola model: rank the vertices, place rank r at (r, r^2).
        let mut verts: Vec<Lift> = crossing.iter().flat_map(|e| [e.ends.0, e.ends.1]).collect();
        verts.extend([u, v]);
        verts.sort_by(|x, y| key_cmp(*x, *y));
        verts.dedup();
        let rank: HashMap<Lift, i128> = verts
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, i as i128))
            .collect();
        let pt = |x: Lift| {
            let r = rank[&x];
            (r, r * r)
        };
        let (pu, pv) = (pt(u), pt(v));
        let cross = |a: (i128, i128), b: (i128, i128)| a.0 * b.1 - a.1 * b.0;
        let sub = |a: (i128, i128), b: (i128, i128)| (a.0 - b.0, a.1 - b.1);
        // Parameter along u->v of the intersection with chord c-d, as n/d with d > 0.
        let param = |e: &LiftedArc| {
            let (c, d) = (pt(e.ends.0), pt(e.ends.1));
            let dir = sub(d, c);
            let mut num = cross(sub(c, pu), dir);
            let mut den = cross(sub(pv, pu), dir);
            if den < 0 {
                num = -num;
                den = -den;
            }
            (num, den)
        };
        let mut keyed: Vec<((i128, i128), LiftedArc)> =
            crossing.into_iter().map(|e| (param(&e), e)).collect();
        keyed.sort_by(|(x, _), (y, _)| (x.0 * y.1).cmp(&(y.0 * x.1)));
        keyed.into_iter().map(|(_, e)| e).collect()
    }

    /// Bridging lifts of the triangulation, sorted left to right, for deck
    /// translates `k` in `range`.
    pub(crate) fn bridging_lifts(&self, range: std::ops::RangeInclusive<i64>) -> Vec<LiftedArc> {
        let mut out: Vec<LiftedArc> = range
            .flat_map(|k| {
                self.gamma
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.is_bridging())
                    .map(move |(idx, &arc)| LiftedArc {
                        ends: arc_lift(arc, k, self.ann),
                        arc: idx,
                    })
            })
            .collect();
        out.sort_by_key(|e| match e.ends {
            (Lift::Top(x), Lift::Bottom(y)) => (x, y),
            _ => unreachable!(),
        });
        out
    }
}
