//! Maximal non-crossing arc collections, completion search and flips.
//!
//! Maximality is only ever certified inside a winding window `W + slack`: a
//! collection counts as maximal when no bridging arc with `|w| <= W + slack`
//! (and no peripheral or asymptotic arc) can be added. Results that reach the
//! edge of the window are reported as [`Error::BoundTooTight`].

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::annulus::{canonicalize, crossing_number, enumerate_arcs, Arc, MarkedAnnulus};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchBound {
    pub winding_bound: i64,
    pub slack: i64,
}

impl Default for SearchBound {
    fn default() -> Self {
        Self {
            winding_bound: 3,
            slack: 2,
        }
    }
}

impl SearchBound {
    pub fn new(winding_bound: i64) -> Self {
        Self {
            winding_bound,
            ..Self::default()
        }
    }

    pub fn with_slack(winding_bound: i64, slack: i64) -> Self {
        Self {
            winding_bound,
            slack,
        }
    }

    /// Largest winding considered when searching for candidate arcs.
    pub fn window(&self) -> i64 {
        self.winding_bound + self.slack
    }

    /// The same bound with `W` raised so that it covers every arc given.
    pub fn covering<'a>(&self, arcs: impl IntoIterator<Item = &'a Arc>) -> Self {
        let w = arcs
            .into_iter()
            .map(|a| a.winding().abs())
            .max()
            .unwrap_or(0);
        Self {
            winding_bound: self.winding_bound.max(w),
            slack: self.slack,
        }
    }
}

/// A set of canonical arcs on a fixed annulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArcCollection {
    annulus: MarkedAnnulus,
    arcs: BTreeSet<Arc>,
}

impl ArcCollection {
    /// Canonicalizes every arc; does not check that they are non-crossing.
    pub fn new(annulus: MarkedAnnulus, arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        let arcs = arcs
            .into_iter()
            .map(|a| canonicalize(a, annulus))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(Self { annulus, arcs })
    }

    pub fn empty(annulus: MarkedAnnulus) -> Self {
        Self {
            annulus,
            arcs: BTreeSet::new(),
        }
    }

    pub fn annulus(&self) -> MarkedAnnulus {
        self.annulus
    }

    pub fn arcs(&self) -> &BTreeSet<Arc> {
        &self.arcs
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc> + '_ {
        self.arcs.iter()
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains(&self, arc: &Arc) -> bool {
        self.arcs.contains(arc)
    }

    pub fn without(&self, arc: &Arc) -> Self {
        let mut arcs = self.arcs.clone();
        arcs.remove(arc);
        Self {
            annulus: self.annulus,
            arcs,
        }
    }

    pub fn with(&self, arc: Arc) -> Self {
        let mut arcs = self.arcs.clone();
        arcs.insert(arc);
        Self {
            annulus: self.annulus,
            arcs,
        }
    }

    pub fn is_subset(&self, other: &ArcCollection) -> bool {
        self.arcs.is_subset(&other.arcs)
    }

    /// True iff `arc` crosses none of the arcs in the collection.
    pub fn admits(&self, arc: Arc) -> bool {
        self.arcs
            .iter()
            .all(|&c| crossing_number(arc, c, self.annulus).is_zero())
    }

    pub fn has_bridging(&self) -> bool {
        self.arcs.iter().any(Arc::is_bridging)
    }

    pub fn has_asymptotic(&self) -> bool {
        self.arcs.iter().any(Arc::is_asymptotic)
    }
}

/// A maximal non-crossing collection.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    collection: ArcCollection,
    finite_only: bool,
}

impl Triangulation {
    /// Checks that `collection` is non-crossing and maximal within `bound`.
    pub fn new(collection: ArcCollection, bound: SearchBound) -> Result<Self> {
        let arcs: Vec<Arc> = collection.iter().copied().collect();
        for (k, &a) in arcs.iter().enumerate() {
            for &b in &arcs[k + 1..] {
                if !crossing_number(a, b, collection.annulus).is_zero() {
                    return Err(Error::Crossing(a, b));
                }
            }
        }
        let bound = bound.covering(&arcs);
        if let Some(&extra) = compatible_arcs(&collection, bound).first() {
            return Err(Error::NotMaximal(extra));
        }
        Ok(Self::trusted(collection))
    }

    fn trusted(collection: ArcCollection) -> Self {
        let finite_only = !collection.has_asymptotic();
        Self {
            collection,
            finite_only,
        }
    }

    pub fn collection(&self) -> &ArcCollection {
        &self.collection
    }

    pub fn annulus(&self) -> MarkedAnnulus {
        self.collection.annulus
    }

    pub fn arcs(&self) -> &BTreeSet<Arc> {
        &self.collection.arcs
    }

    pub fn len(&self) -> usize {
        self.collection.len()
    }

    pub fn is_empty(&self) -> bool {
        self.collection.is_empty()
    }

    pub fn contains(&self, arc: &Arc) -> bool {
        self.collection.contains(arc)
    }

    /// True iff every arc is finite; equivalently some arc crosses the core.
    pub fn finite_only(&self) -> bool {
        self.finite_only
    }

    pub fn into_collection(self) -> ArcCollection {
        self.collection
    }
}

impl Serialize for Triangulation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.collection.serialize(s)
    }
}

/// True iff no two arcs of the collection cross.
pub fn is_noncrossing(coll: &ArcCollection) -> bool {
    let arcs: Vec<Arc> = coll.iter().copied().collect();
    arcs.iter().enumerate().all(|(k, &a)| {
        arcs[k + 1..]
            .iter()
            .all(|&b| crossing_number(a, b, coll.annulus).is_zero())
    })
}

/// Every arc outside `coll`, with winding inside the search window, that
/// crosses no arc of `coll`.
pub fn compatible_arcs(coll: &ArcCollection, bound: SearchBound) -> Vec<Arc> {
    enumerate_arcs(coll.annulus, bound.window())
        .into_iter()
        .filter(|a| !coll.contains(a) && coll.admits(*a))
        .collect()
}

/// All maximal non-crossing collections containing `coll`.
pub fn completions(coll: &ArcCollection, bound: SearchBound) -> Result<Vec<Triangulation>> {
    let window = bound.window();
    let candidates = compatible_arcs(coll, bound);
    let size = coll.annulus.marked_points();
    let mut out = Vec::new();
    for set in maximal_compatible_sets(&candidates, coll.annulus) {
        let full = ArcCollection {
            annulus: coll.annulus,
            arcs: coll
                .arcs
                .iter()
                .copied()
                .chain(set.iter().map(|&k| candidates[k]))
                .collect(),
        };
        let touches = full.iter().any(|a| a.winding().abs() >= window);
        if touches || full.len() != size {
            return Err(Error::BoundTooTight { frontier: window });
        }
        out.push(Triangulation::trusted(full));
    }
    out.sort();
    Ok(out)
}

/// Replaces `arc` by the unique other arc completing `tri \ {arc}`.
pub fn flip(tri: &Triangulation, arc: Arc, bound: SearchBound) -> Result<(Arc, Triangulation)> {
    if !tri.contains(&arc) {
        return Err(Error::NotInCollection(arc));
    }
    let bound = bound.covering(tri.arcs());
    let rest = tri.collection.without(&arc);
    let found = completions(&rest, bound)?;
    if found.len() != 2 {
        return Err(Error::FlipNotUnique {
            arc,
            completions: found.len(),
        });
    }
    let other = found
        .into_iter()
        .find(|t| !t.contains(&arc))
        .ok_or(Error::FlipNotUnique {
            arc,
            completions: 2,
        })?;
    let beta = *other
        .arcs()
        .difference(&rest.arcs)
        .next()
        .expect("completion adds one arc");
    Ok((beta, other))
}

/// Every maximal non-crossing collection whose bridging arcs have
/// `|w| <= W`, maximal against all arcs with `|w| <= W + slack`.
pub fn enumerate_maximal(ann: MarkedAnnulus, bound: SearchBound) -> Vec<Triangulation> {
    let inner = enumerate_arcs(ann, bound.winding_bound);
    let outer: Vec<Arc> = enumerate_arcs(ann, bound.window())
        .into_iter()
        .filter(|a| a.winding().abs() > bound.winding_bound)
        .collect();
    let sets = maximal_compatible_sets(&inner, ann);
    let mut out: Vec<Triangulation> = sets
        .into_par_iter()
        .filter_map(|set| {
            let coll = ArcCollection {
                annulus: ann,
                arcs: set.iter().map(|&k| inner[k]).collect(),
            };
            outer
                .iter()
                .all(|&a| !coll.admits(a))
                .then(|| Triangulation::trusted(coll))
        })
        .collect();
    out.sort();
    out
}

/// Bron-Kerbosch with pivoting on the compatibility graph of `arcs`.
/// Returns index sets of the maximal pairwise non-crossing subsets.
pub(crate) fn maximal_compatible_sets(arcs: &[Arc], ann: MarkedAnnulus) -> Vec<Vec<usize>> {
    let n = arcs.len();
    let mut adj = vec![FixedBitSet::with_capacity(n); n];
    for i in 0..n {
        for j in i + 1..n {
            if crossing_number(arcs[i], arcs[j], ann).is_zero() {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    let mut out = Vec::new();
    bron_kerbosch(
        &mut Vec::new(),
        all,
        FixedBitSet::with_capacity(n),
        &adj,
        &mut out,
    );
    out
}

fn bron_kerbosch(
    current: &mut Vec<usize>,
    mut candidates: FixedBitSet,
    mut excluded: FixedBitSet,
    adj: &[FixedBitSet],
    out: &mut Vec<Vec<usize>>,
) {
    if candidates.is_clear() {
        if excluded.is_clear() {
            out.push(current.clone());
        }
        return;
    }
    let pivot = candidates
        .ones()
        .chain(excluded.ones())
        .max_by_key(|&u| candidates.intersection(&adj[u]).count())
        .expect("non-empty");
    let mut branch = candidates.clone();
    branch.difference_with(&adj[pivot]);
    for v in branch.ones() {
        current.push(v);
        let mut c = candidates.clone();
        c.intersect_with(&adj[v]);
        let mut x = excluded.clone();
        x.intersect_with(&adj[v]);
        bron_kerbosch(current, c, x, adj, out);
        current.pop();
        candidates.set(v, false);
        excluded.insert(v);
    }
}
