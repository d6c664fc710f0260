//! The marked annulus, its arcs and their crossing numbers.
//!
//! Everything is computed in the universal cover, the strip `R x [0, 1]`.
//! The top line carries the lifts of the outer marked points at integer
//! positions `i + p*Z`, the bottom line carries the lifts of the inner marked
//! points at `j + q*Z`. The deck transformation shifts the top by `p` and the
//! bottom by `q` simultaneously. A bridging arc `(i, j, w)` has the canonical
//! lift from top position `i` to bottom position `j + q*w`.
//!
//! Asymptotic arcs spiral onto the core curve from the side of the boundary
//! they start on. [`Spiral::Ccw`] lifts run towards `+inf`, [`Spiral::Cw`]
//! lifts towards `-inf`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An annulus with `outer` marked points on the outer boundary and `inner`
/// marked points on the inner boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MarkedAnnulus {
    outer: i64,
    inner: i64,
}

impl MarkedAnnulus {
    pub fn new(outer: i64, inner: i64) -> Result<Self> {
        if outer < 1 || inner < 1 {
            return Err(Error::InvalidIndex { outer, inner });
        }
        Ok(Self { outer, inner })
    }

    /// `p`, the number of outer marked points.
    pub fn outer(&self) -> i64 {
        self.outer
    }

    /// `q`, the number of inner marked points.
    pub fn inner(&self) -> i64 {
        self.inner
    }

    pub fn count(&self, boundary: Boundary) -> i64 {
        match boundary {
            Boundary::Outer => self.outer,
            Boundary::Inner => self.inner,
        }
    }

    /// Total number of marked points, which is also the size of every
    /// maximal collection of non-crossing arcs.
    pub fn marked_points(&self) -> usize {
        (self.outer + self.inner) as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Outer,
    Inner,
}

impl Boundary {
    pub fn other(self) -> Self {
        match self {
            Boundary::Outer => Boundary::Inner,
            Boundary::Inner => Boundary::Outer,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MarkedPoint {
    pub boundary: Boundary,
    pub index: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spiral {
    Cw,
    Ccw,
}

impl Spiral {
    pub fn reversed(self) -> Self {
        match self {
            Spiral::Cw => Spiral::Ccw,
            Spiral::Ccw => Spiral::Cw,
        }
    }
}

/// The unique essential closed curve of the annulus.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct CoreCurve;

/// A homotopy class of arcs on the marked annulus.
///
/// Values produced by [`canonicalize`] satisfy the canonical-form invariants;
/// most operations assume canonical input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Arc {
    /// Joins outer point `outer` to inner point `inner`, lift `(outer, inner + q*winding)`.
    Bridging {
        outer: i64,
        inner: i64,
        winding: i64,
    },
    /// Joins `start` to `start + span` on one boundary, cutting off `span - 1`
    /// marked points.
    Peripheral {
        boundary: Boundary,
        start: i64,
        span: i64,
    },
    /// Starts at `index` and spirals onto the core curve.
    Asymptotic {
        boundary: Boundary,
        index: i64,
        spiral: Spiral,
    },
}

impl Arc {
    pub fn bridging(outer: i64, inner: i64, winding: i64) -> Self {
        Arc::Bridging {
            outer,
            inner,
            winding,
        }
    }

    pub fn peripheral(boundary: Boundary, start: i64, span: i64) -> Self {
        Arc::Peripheral {
            boundary,
            start,
            span,
        }
    }

    pub fn asymptotic(boundary: Boundary, index: i64, spiral: Spiral) -> Self {
        Arc::Asymptotic {
            boundary,
            index,
            spiral,
        }
    }

    pub fn is_bridging(&self) -> bool {
        matches!(self, Arc::Bridging { .. })
    }

    pub fn is_peripheral(&self) -> bool {
        matches!(self, Arc::Peripheral { .. })
    }

    pub fn is_asymptotic(&self) -> bool {
        matches!(self, Arc::Asymptotic { .. })
    }

    pub fn is_finite(&self) -> bool {
        !self.is_asymptotic()
    }

    /// Winding of a bridging arc, zero for the other kinds.
    pub fn winding(&self) -> i64 {
        match self {
            Arc::Bridging { winding, .. } => *winding,
            _ => 0,
        }
    }

    /// True iff the arc meets the core curve essentially.
    pub fn crosses_core(&self) -> bool {
        self.is_bridging()
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Arc::Bridging {
                outer,
                inner,
                winding,
            } => write!(f, "B({outer},{inner},{winding})"),
            Arc::Peripheral {
                boundary,
                start,
                span,
            } => {
                write!(f, "P{}({start},{span})", boundary_letter(boundary))
            }
            Arc::Asymptotic {
                boundary,
                index,
                spiral,
            } => {
                let s = match spiral {
                    Spiral::Cw => "cw",
                    Spiral::Ccw => "ccw",
                };
                write!(f, "A{}({index},{s})", boundary_letter(boundary))
            }
        }
    }
}

fn boundary_letter(b: Boundary) -> char {
    match b {
        Boundary::Outer => 'O',
        Boundary::Inner => 'I',
    }
}

/// Parses the compact syntax written by `Display`: `B(i,j,w)`, `PO(i,d)`,
/// `PI(j,d)`, `AO(i,cw)`, `AI(j,ccw)`.
impl FromStr for Arc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot parse arc {s:?}"));
        let open = s.find('(').ok_or_else(bad)?;
        if !s.ends_with(')') {
            return Err(bad());
        }
        let head = &s[..open];
        let args: Vec<&str> = s[open + 1..s.len() - 1].split(',').map(str::trim).collect();
        let int = |x: &str| x.parse::<i64>().map_err(|_| bad());
        let boundary = |c: char| match c {
            'O' | 'o' => Ok(Boundary::Outer),
            'I' | 'i' => Ok(Boundary::Inner),
            _ => Err(bad()),
        };
        let mut chars = head.chars();
        match (chars.next(), chars.next(), chars.next(), args.as_slice()) {
            (Some('B'), None, None, [i, j, w]) => Ok(Arc::bridging(int(i)?, int(j)?, int(w)?)),
            (Some('P'), Some(b), None, [i, d]) => {
                Ok(Arc::peripheral(boundary(b)?, int(i)?, int(d)?))
            }
            (Some('A'), Some(b), None, [i, sp]) => {
                let spiral = match sp.to_ascii_lowercase().as_str() {
                    "cw" => Spiral::Cw,
                    "ccw" => Spiral::Ccw,
                    _ => return Err(bad()),
                };
                Ok(Arc::asymptotic(boundary(b)?, int(i)?, spiral))
            }
            _ => Err(bad()),
        }
    }
}

/// Number of essential intersections between two arcs.
///
/// Spirals meet bridging arcs, and oppositely oriented spirals on the same
/// side of the core, infinitely often.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Crossing {
    Finite(u64),
    Infinite,
}

impl Crossing {
    pub fn is_zero(&self) -> bool {
        *self == Crossing::Finite(0)
    }

    pub fn finite(&self) -> Option<u64> {
        match self {
            Crossing::Finite(n) => Some(*n),
            Crossing::Infinite => None,
        }
    }
}

impl PartialOrd for Crossing {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Crossing {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Crossing::Finite(a), Crossing::Finite(b)) => a.cmp(b),
            (Crossing::Finite(_), Crossing::Infinite) => Ordering::Less,
            (Crossing::Infinite, Crossing::Finite(_)) => Ordering::Greater,
            (Crossing::Infinite, Crossing::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Crossing::Finite(n) => write!(f, "{n}"),
            Crossing::Infinite => f.write_str("inf"),
        }
    }
}

/// Returns the canonical representative of `arc`'s homotopy class.
pub fn canonicalize(arc: Arc, ann: MarkedAnnulus) -> Result<Arc> {
    let (p, q) = (ann.outer, ann.inner);
    Ok(match arc {
        Arc::Bridging {
            outer,
            inner,
            winding,
        } => {
            // Deck-shift the lift pair so the outer end lands in [0, p).
            let (k, i) = outer.div_mod_floor(&p);
            let bottom = inner + q * winding - q * k;
            let (w, j) = bottom.div_mod_floor(&q);
            Arc::Bridging {
                outer: i,
                inner: j,
                winding: w,
            }
        }
        Arc::Peripheral {
            boundary,
            start,
            span,
        } => {
            let n = ann.count(boundary);
            if span < 2 || span > n {
                return Err(Error::InvalidSpan { span, count: n });
            }
            Arc::Peripheral {
                boundary,
                start: start.mod_floor(&n),
                span,
            }
        }
        Arc::Asymptotic {
            boundary,
            index,
            spiral,
        } => Arc::Asymptotic {
            boundary,
            index: index.mod_floor(&ann.count(boundary)),
            spiral,
        },
    })
}

/// Rotates the outer boundary by `outer_shift` and the inner boundary by
/// `inner_shift` marked points. This is induced by a homeomorphism of the
/// annulus, so it preserves crossing numbers.
pub fn rotate(arc: Arc, outer_shift: i64, inner_shift: i64, ann: MarkedAnnulus) -> Arc {
    let shift = |b: Boundary| match b {
        Boundary::Outer => outer_shift,
        Boundary::Inner => inner_shift,
    };
    let moved = match arc {
        Arc::Bridging {
            outer,
            inner,
            winding,
        } => Arc::Bridging {
            outer: outer + outer_shift,
            inner: inner + inner_shift,
            winding,
        },
        Arc::Peripheral {
            boundary,
            start,
            span,
        } => Arc::Peripheral {
            boundary,
            start: start + shift(boundary),
            span,
        },
        Arc::Asymptotic {
            boundary,
            index,
            spiral,
        } => Arc::Asymptotic {
            boundary,
            index: index + shift(boundary),
            spiral,
        },
    };
    canonicalize(moved, ann).expect("rotation preserves spans")
}

/// Minimal geometric intersection number of two canonical arcs.
pub fn crossing_number(a: Arc, b: Arc, ann: MarkedAnnulus) -> Crossing {
    use Arc::*;
    let (p, q) = (ann.outer, ann.inner);
    match (a, b) {
        (Bridging { .. }, Bridging { .. }) => {
            let (a1, b1) = bridging_lift(a, q);
            let (a2, b2) = bridging_lift(b, q);
            Crossing::Finite(bridging_crossings(a1 - a2, b1 - b2, p, q))
        }
        (Bridging { .. }, Peripheral { .. }) => bridging_peripheral(a, b, ann),
        (Peripheral { .. }, Bridging { .. }) => bridging_peripheral(b, a, ann),
        (
            Peripheral {
                boundary: ba,
                start: sa,
                span: da,
            },
            Peripheral {
                boundary: bb,
                start: sb,
                span: db,
            },
        ) => {
            if ba != bb {
                return Crossing::Finite(0);
            }
            Crossing::Finite(interval_interleavings(sa, da, sb, db, ann.count(ba)))
        }
        (Asymptotic { .. }, Bridging { .. }) | (Bridging { .. }, Asymptotic { .. }) => {
            Crossing::Infinite
        }
        (
            Asymptotic {
                boundary: ba,
                spiral: sa,
                ..
            },
            Asymptotic {
                boundary: bb,
                spiral: sb,
                ..
            },
        ) => {
            if ba == bb && sa != sb {
                Crossing::Infinite
            } else {
                Crossing::Finite(0)
            }
        }
        (Asymptotic { .. }, Peripheral { .. }) => asymptotic_peripheral(a, b, ann),
        (Peripheral { .. }, Asymptotic { .. }) => asymptotic_peripheral(b, a, ann),
    }
}

/// True iff `a` crosses the core curve.
pub fn crosses_core(a: Arc) -> bool {
    a.crosses_core()
}

/// Endpoints of one lift of an arc in the universal-cover strip, outer
/// boundary on the top line. Asymptotic arcs have no second endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StripGeometry {
    pub start: MarkedPoint,
    pub end: Option<MarkedPoint>,
    pub spiral: Option<Spiral>,
}

pub fn strip_geometry(arc: Arc, ann: MarkedAnnulus) -> StripGeometry {
    let point = |boundary, index| MarkedPoint { boundary, index };
    match arc {
        Arc::Bridging {
            outer,
            inner,
            winding,
        } => StripGeometry {
            start: point(Boundary::Outer, outer),
            end: Some(point(Boundary::Inner, inner + ann.inner() * winding)),
            spiral: None,
        },
        Arc::Peripheral {
            boundary,
            start,
            span,
        } => StripGeometry {
            start: point(boundary, start),
            end: Some(point(boundary, start + span)),
            spiral: None,
        },
        Arc::Asymptotic {
            boundary,
            index,
            spiral,
        } => StripGeometry {
            start: point(boundary, index),
            end: None,
            spiral: Some(spiral),
        },
    }
}

pub(crate) fn bridging_lift(a: Arc, q: i64) -> (i64, i64) {
    match a {
        Arc::Bridging {
            outer,
            inner,
            winding,
        } => (outer, inner + q * winding),
        _ => unreachable!("not a bridging arc"),
    }
}

/// Counts `k` with `(da - p*k) * (db - q*k) < 0`.
fn bridging_crossings(da: i64, db: i64, p: i64, q: i64) -> u64 {
    // Sign changes of the two factors sit at da/p and db/q; only k between
    // them can make the product negative.
    let lo = Integer::div_floor(&da, &p).min(Integer::div_floor(&db, &q)) - 1;
    let hi = Integer::div_ceil(&da, &p).max(Integer::div_ceil(&db, &q)) + 1;
    (lo..=hi)
        .filter(|k| ((da - p * k) as i128) * ((db - q * k) as i128) < 0)
        .count() as u64
}

fn bridging_peripheral(bridge: Arc, peri: Arc, ann: MarkedAnnulus) -> Crossing {
    let (top, bottom) = bridging_lift(bridge, ann.inner);
    let Arc::Peripheral {
        boundary,
        start,
        span,
    } = peri
    else {
        unreachable!()
    };
    let (n, x) = match boundary {
        Boundary::Outer => (ann.outer, top),
        Boundary::Inner => (ann.inner, bottom),
    };
    Crossing::Finite(lifts_strictly_inside(x, n, start, span))
}

fn asymptotic_peripheral(asym: Arc, peri: Arc, ann: MarkedAnnulus) -> Crossing {
    let Arc::Asymptotic {
        boundary: ba,
        index,
        ..
    } = asym
    else {
        unreachable!()
    };
    let Arc::Peripheral {
        boundary: bp,
        start,
        span,
    } = peri
    else {
        unreachable!()
    };
    if ba != bp {
        return Crossing::Finite(0);
    }
    Crossing::Finite(lifts_strictly_inside(index, ann.count(ba), start, span))
}

/// Number of integers `y = x (mod n)` with `start < y < start + span`.
fn lifts_strictly_inside(x: i64, n: i64, start: i64, span: i64) -> u64 {
    let first = start + 1 + (x - start - 1).mod_floor(&n);
    if first >= start + span {
        0
    } else {
        ((start + span - 1 - first) / n + 1) as u64
    }
}

/// Number of translates `(sb + n*k, sb + n*k + db)` whose endpoints strictly
/// interleave with `(sa, sa + da)`.
fn interval_interleavings(sa: i64, da: i64, sb: i64, db: i64, n: i64) -> u64 {
    let lo = Integer::div_floor(&(sa - db - sb), &n) - 1;
    let hi = Integer::div_ceil(&(sa + da - sb), &n) + 1;
    (lo..=hi)
        .filter(|k| {
            let y = sb + n * k;
            let (a0, a1, b0, b1) = (sa, sa + da, y, y + db);
            (a0 < b0 && b0 < a1 && a1 < b1) || (b0 < a0 && a0 < b1 && b1 < a1)
        })
        .count() as u64
}

/// All canonical arcs: bridging arcs with `|w| <= winding_bound`, every
/// peripheral arc and every asymptotic arc, in canonical order.
pub fn enumerate_arcs(ann: MarkedAnnulus, winding_bound: i64) -> Vec<Arc> {
    let w = winding_bound.max(0);
    let mut arcs = Vec::new();
    for i in 0..ann.outer {
        for j in 0..ann.inner {
            for winding in -w..=w {
                arcs.push(Arc::bridging(i, j, winding));
            }
        }
    }
    for boundary in [Boundary::Outer, Boundary::Inner] {
        let n = ann.count(boundary);
        for start in 0..n {
            for span in 2..=n {
                arcs.push(Arc::peripheral(boundary, start, span));
            }
        }
    }
    for boundary in [Boundary::Outer, Boundary::Inner] {
        for index in 0..ann.count(boundary) {
            for spiral in [Spiral::Cw, Spiral::Ccw] {
                arcs.push(Arc::asymptotic(boundary, index, spiral));
            }
        }
    }
    arcs.sort();
    arcs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ann(p: i64, q: i64) -> MarkedAnnulus {
        MarkedAnnulus::new(p, q).unwrap()
    }

    /// Brute force over lift translates in a fixed window, independent of the
    /// interval arithmetic in `bridging_crossings`.
    fn brute_bridging(a: Arc, b: Arc, an: MarkedAnnulus) -> u64 {
        let (a1, b1) = bridging_lift(a, an.inner());
        let (a2, b2) = bridging_lift(b, an.inner());
        (-10..=10)
            .filter(|k| {
                let t = a2 + an.outer() * k;
                let s = b2 + an.inner() * k;
                (a1 - t).signum() * (b1 - s).signum() < 0
            })
            .count() as u64
    }

    #[test]
    fn annulus_rejects_empty_boundary() {
        assert!(MarkedAnnulus::new(0, 3).is_err());
        assert!(MarkedAnnulus::new(2, -1).is_err());
    }

    #[test]
    fn canonicalize_bridging_preserves_lift_pair() {
        let c = canonicalize(Arc::bridging(2, 0, 0), ann(2, 1)).unwrap();
        assert_eq!(c, Arc::bridging(0, 0, -1));
    }

    #[test]
    fn canonicalize_peripheral_reduces_start() {
        let a = Arc::peripheral(Boundary::Outer, 5, 2);
        assert_eq!(
            canonicalize(a, ann(4, 1)).unwrap(),
            Arc::peripheral(Boundary::Outer, 1, 2)
        );
    }

    #[test]
    fn canonicalize_rejects_bad_span() {
        for span in [0, 1, 5] {
            let a = Arc::peripheral(Boundary::Outer, 0, span);
            assert!(matches!(
                canonicalize(a, ann(4, 1)),
                Err(Error::InvalidSpan { .. })
            ));
        }
    }

    #[test]
    fn self_crossing_is_zero() {
        let an = ann(4, 3);
        for a in enumerate_arcs(an, 2) {
            assert!(crossing_number(a, a, an).is_zero(), "{a}");
        }
    }

    #[test]
    fn shared_inner_point_does_not_cross() {
        let an = ann(2, 1);
        let c = crossing_number(Arc::bridging(0, 0, 0), Arc::bridging(1, 0, 0), an);
        assert_eq!(c, Crossing::Finite(0));
    }

    #[test]
    fn bridging_pair_crosses_once() {
        let an = ann(2, 1);
        let (a, b) = (Arc::bridging(1, 0, 0), Arc::bridging(0, 0, 1));
        assert_eq!(brute_bridging(a, b, an), 1);
        assert_eq!(crossing_number(a, b, an), Crossing::Finite(1));
    }

    #[test]
    fn bridging_matches_brute_force() {
        for (p, q) in [(1, 1), (2, 1), (3, 2), (4, 3)] {
            let an = ann(p, q);
            let arcs: Vec<_> = enumerate_arcs(an, 2)
                .into_iter()
                .filter(Arc::is_bridging)
                .collect();
            for &a in &arcs {
                for &b in &arcs {
                    assert_eq!(
                        crossing_number(a, b, an).finite().unwrap(),
                        brute_bridging(a, b, an),
                        "{a} {b} on ({p},{q})"
                    );
                }
            }
        }
    }

    #[test]
    fn asymptotic_meets_every_bridging_arc() {
        let an = ann(2, 1);
        let a = Arc::asymptotic(Boundary::Outer, 0, Spiral::Cw);
        for b in enumerate_arcs(an, 3).into_iter().filter(Arc::is_bridging) {
            assert!(crossing_number(a, b, an) >= Crossing::Finite(1));
        }
    }

    #[test]
    fn core_crossing() {
        assert!(crosses_core(Arc::bridging(0, 0, 0)));
        assert!(!crosses_core(Arc::peripheral(Boundary::Outer, 0, 2)));
        assert!(!crosses_core(Arc::asymptotic(
            Boundary::Inner,
            0,
            Spiral::Ccw
        )));
    }

    #[test]
    fn peripheral_on_different_boundaries_never_cross() {
        let an = ann(4, 3);
        let arcs = enumerate_arcs(an, 0);
        for a in arcs.iter().filter(|a| a.is_peripheral()) {
            for b in arcs.iter().filter(|b| b.is_peripheral()) {
                if let (Arc::Peripheral { boundary: x, .. }, Arc::Peripheral { boundary: y, .. }) =
                    (a, b)
                {
                    if x != y {
                        assert!(crossing_number(*a, *b, an).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn asymptotic_pairs() {
        let an = ann(3, 2);
        let arcs: Vec<_> = enumerate_arcs(an, 0)
            .into_iter()
            .filter(Arc::is_asymptotic)
            .collect();
        assert_eq!(arcs.len(), 10);
        for &a in &arcs {
            for &b in &arcs {
                let (
                    Arc::Asymptotic {
                        boundary: ba,
                        spiral: sa,
                        ..
                    },
                    Arc::Asymptotic {
                        boundary: bb,
                        spiral: sb,
                        ..
                    },
                ) = (a, b)
                else {
                    unreachable!()
                };
                let crosses = !crossing_number(a, b, an).is_zero();
                assert_eq!(crosses, ba == bb && sa != sb, "{a} {b}");
            }
        }
    }

    #[test]
    fn loops_at_distinct_points_cross_twice() {
        // The second loop starts inside the first one's disk side, so it has
        // to leave and re-enter it.
        let an = ann(2, 1);
        let a = Arc::peripheral(Boundary::Outer, 0, 2);
        let b = Arc::peripheral(Boundary::Outer, 1, 2);
        assert_eq!(crossing_number(a, b, an), Crossing::Finite(2));
    }

    #[test]
    fn enumeration_counts() {
        let arcs = enumerate_arcs(ann(2, 1), 0);
        assert_eq!(arcs.iter().filter(|a| a.is_bridging()).count(), 2);
        assert_eq!(arcs.iter().filter(|a| a.is_peripheral()).count(), 2);
        assert_eq!(arcs.iter().filter(|a| a.is_asymptotic()).count(), 6);
        assert_eq!(arcs.len(), 10);

        let arcs = enumerate_arcs(ann(1, 1), 1);
        assert_eq!(arcs.iter().filter(|a| a.is_bridging()).count(), 3);
        assert_eq!(arcs.iter().filter(|a| a.is_peripheral()).count(), 0);
        assert_eq!(arcs.iter().filter(|a| a.is_asymptotic()).count(), 4);

        for (p, q, w) in [(3, 2, 2), (4, 3, 1)] {
            let an = ann(p, q);
            let arcs = enumerate_arcs(an, w);
            let expected = p * q * (2 * w + 1) + p * (p - 1) + q * (q - 1) + 2 * (p + q);
            assert_eq!(arcs.len() as i64, expected);
            let mut canon: Vec<_> = arcs.iter().map(|a| canonicalize(*a, an).unwrap()).collect();
            canon.dedup();
            assert_eq!(canon, arcs);
        }
    }

    #[test]
    fn compact_syntax_round_trips() {
        for a in enumerate_arcs(ann(3, 2), 1) {
            assert_eq!(a.to_string().parse::<Arc>().unwrap(), a);
        }
        assert!("B(1,2)".parse::<Arc>().is_err());
        assert!("PX(1,2)".parse::<Arc>().is_err());
    }

    #[test]
    fn json_encoding() {
        let a = Arc::bridging(1, 0, -2);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            r#"{"kind":"bridging","outer":1,"inner":0,"winding":-2}"#
        );
        let b = Arc::peripheral(Boundary::Inner, 2, 3);
        assert_eq!(
            serde_json::to_string(&b).unwrap(),
            r#"{"kind":"peripheral","boundary":"inner","start":2,"span":3}"#
        );
        let c = Arc::asymptotic(Boundary::Outer, 0, Spiral::Ccw);
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"kind":"asymptotic","boundary":"outer","index":0,"spiral":"ccw"}"#
        );
    }
}
