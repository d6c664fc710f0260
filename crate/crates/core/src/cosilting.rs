//! Tuples `(C, P, A, *)`, the cosilting pairs and maximal rigid sets they
//! index, and their irreducible mutations.
//!
//! The parameter field is modelled by a finite set of labels plus a rest
//! bucket standing for every other parameter. The rest bucket sits on a fixed
//! side (Prüfer or adic) for the whole session and is never mutated.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hasher;
use std::str::FromStr;

use fnv::FnvHasher;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::annulus::{canonicalize, crossing_number, Arc, MarkedAnnulus};
use crate::error::{Error, Result};
use crate::triangulation::{compatible_arcs, flip, ArcCollection, SearchBound, Triangulation};

/// Attached to every emitted state and graph.
pub const PARAMETER_MODEL_NOTE: &str = "the nonzero field elements are modelled by the finite labels plus one rest bucket fixed on rest_side; only labelled parameters are mutable";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RestSide {
    Prufer,
    Adic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Star {
    #[serde(rename = "G")]
    G,
    #[serde(rename = "noG")]
    NoG,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParameterField {
    pub labels: BTreeSet<String>,
    pub rest_side: RestSide,
}

impl ParameterField {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>, rest_side: RestSide) -> Self {
        Self {
            labels: labels.into_iter().map(Into::into).collect(),
            rest_side,
        }
    }
}

/// The datum `(C, P, A, *)` relative to a fixed triangulation `gamma`, whose
/// order numbers the vertices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosiltingTuple {
    pub annulus: MarkedAnnulus,
    pub c: BTreeSet<Arc>,
    pub p: BTreeSet<String>,
    pub a: BTreeSet<String>,
    pub star: Star,
    pub field: ParameterField,
    pub gamma: Vec<Arc>,
}

#[derive(Serialize, Deserialize)]
struct TupleJson {
    annulus: AnnulusJson,
    #[serde(rename = "C")]
    c: Vec<Arc>,
    #[serde(rename = "P")]
    p: Vec<String>,
    #[serde(rename = "A")]
    a: Vec<String>,
    star: Star,
    rest_side: RestSide,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    gamma: Vec<Arc>,
}

#[derive(Serialize, Deserialize)]
struct AnnulusJson {
    outer: i64,
    inner: i64,
}

impl Serialize for CosiltingTuple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let covered: BTreeSet<String> = self.p.union(&self.a).cloned().collect();
        TupleJson {
            annulus: AnnulusJson {
                outer: self.annulus.outer(),
                inner: self.annulus.inner(),
            },
            c: self.c.iter().copied().collect(),
            p: self.p.iter().cloned().collect(),
            a: self.a.iter().cloned().collect(),
            star: self.star,
            rest_side: self.field.rest_side,
            labels: (covered != self.field.labels)
                .then(|| self.field.labels.iter().cloned().collect()),
            gamma: self.gamma.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CosiltingTuple {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TupleJson::deserialize(d)?;
        CosiltingTuple::from_json(raw).map_err(serde::de::Error::custom)
    }
}

impl CosiltingTuple {
    fn from_json(raw: TupleJson) -> Result<Self> {
        let annulus = MarkedAnnulus::new(raw.annulus.outer, raw.annulus.inner)?;
        let canon = |arcs: Vec<Arc>| {
            arcs.into_iter()
                .map(|x| canonicalize(x, annulus))
                .collect::<Result<Vec<_>>>()
        };
        let p: BTreeSet<String> = raw.p.into_iter().collect();
        let a: BTreeSet<String> = raw.a.into_iter().collect();
        let labels = match raw.labels {
            Some(l) => l.into_iter().collect(),
            None => p.union(&a).cloned().collect(),
        };
        Ok(Self {
            annulus,
            c: canon(raw.c)?.into_iter().collect(),
            p,
            a,
            star: raw.star,
            field: ParameterField {
                labels,
                rest_side: raw.rest_side,
            },
            gamma: canon(raw.gamma)?,
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("tuples serialize")
    }

    /// The tuple `(Γ, ∅, ∅, no G)`.
    pub fn base(annulus: MarkedAnnulus, gamma: Vec<Arc>, field: ParameterField) -> Result<Self> {
        let gamma = gamma
            .into_iter()
            .map(|x| canonicalize(x, annulus))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            annulus,
            c: gamma.iter().copied().collect(),
            p: BTreeSet::new(),
            a: BTreeSet::new(),
            star: Star::NoG,
            field,
            gamma,
        })
    }

    /// True if `C` contains an arc crossing the core curve.
    pub fn is_finite_case(&self) -> bool {
        self.c.iter().any(Arc::crosses_core)
    }

    /// 1-based index of `arc` in `Γ`.
    pub fn gamma_index(&self, arc: &Arc) -> Option<usize> {
        self.gamma.iter().position(|g| g == arc).map(|i| i + 1)
    }

    pub fn collection(&self) -> ArcCollection {
        ArcCollection::new(self.annulus, self.c.iter().copied()).expect("arcs are canonical")
    }

    /// Stable identity used for graph nodes.
    pub fn key(&self) -> String {
        self.to_json_string()
    }

    pub fn hash_label(&self) -> String {
        let mut h = FnvHasher::default();
        h.write(self.key().as_bytes());
        format!("{:016x}", h.finish())
    }
}

/// A point of a maximal rigid set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RigidPoint {
    /// `μ_{M(α)}` for an arc `α` of `C` outside `Γ`.
    String(Arc),
    Prufer(String),
    Adic(String),
    /// The unlabelled parameters, all on the session's rest side.
    Rest(RestSide),
    Generic,
    /// `I(i)[-1]`, 1-based.
    ShiftedInjective(usize),
}

impl RigidPoint {
    pub fn is_mutable(&self) -> bool {
        !matches!(self, RigidPoint::Generic | RigidPoint::Rest(_))
    }

    fn parse_with(s: &str, annulus: Option<MarkedAnnulus>) -> Result<Self> {
        let s = s.trim();
        let err = || Error::Parse(format!("rigid point {s:?}"));
        if s == "G" {
            return Ok(RigidPoint::Generic);
        }
        if let Some(l) = s.strip_prefix("prufer:") {
            return if l.is_empty() {
                Err(err())
            } else {
                Ok(RigidPoint::Prufer(l.to_string()))
            };
        }
        if let Some(l) = s.strip_prefix("adic:") {
            return if l.is_empty() {
                Err(err())
            } else {
                Ok(RigidPoint::Adic(l.to_string()))
            };
        }
        if let Some(side) = s.strip_prefix("rest:") {
            return match side {
                "prufer" => Ok(RigidPoint::Rest(RestSide::Prufer)),
                "adic" => Ok(RigidPoint::Rest(RestSide::Adic)),
                _ => Err(err()),
            };
        }
        if let Some(i) = s.strip_prefix('I') {
            if let Ok(i) = i.parse::<usize>() {
                return if i == 0 {
                    Err(err())
                } else {
                    Ok(RigidPoint::ShiftedInjective(i))
                };
            }
        }
        let arc_text = s.strip_prefix("M:").unwrap_or(s);
        let arc: Arc = arc_text.parse().map_err(|_| err())?;
        let arc = match annulus {
            Some(ann) => canonicalize(arc, ann)?,
            None => arc,
        };
        Ok(RigidPoint::String(arc))
    }

    /// Parses a point, canonicalizing arcs on `annulus`.
    pub fn parse_on(s: &str, annulus: MarkedAnnulus) -> Result<Self> {
        Self::parse_with(s, Some(annulus))
    }
}

impl fmt::Display for RigidPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RigidPoint::String(a) => write!(f, "M:{a}"),
            RigidPoint::Prufer(l) => write!(f, "prufer:{l}"),
            RigidPoint::Adic(l) => write!(f, "adic:{l}"),
            RigidPoint::Rest(RestSide::Prufer) => write!(f, "rest:prufer"),
            RigidPoint::Rest(RestSide::Adic) => write!(f, "rest:adic"),
            RigidPoint::Generic => write!(f, "G"),
            RigidPoint::ShiftedInjective(i) => write!(f, "I{i}"),
        }
    }
}

impl FromStr for RigidPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with(s, None)
    }
}

impl Serialize for RigidPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RigidPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosiltingPair {
    /// String points, Prüfer and adic labels, the rest bucket and `G`.
    #[serde(rename = "Z")]
    pub z: Vec<RigidPoint>,
    /// 1-based vertices `i` with `I(i)` in the pair.
    #[serde(rename = "I")]
    pub i: BTreeSet<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EdgeKind {
    ArcFlip,
    ArcToInjective,
    InjectiveToArc,
    InjectiveToInjective,
    PruferAdicSwap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MutationEdge {
    pub from: CosiltingTuple,
    pub to: CosiltingTuple,
    pub removed: RigidPoint,
    pub added: RigidPoint,
    pub kind: EdgeKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Rule {
    C1,
    C2,
    C3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: Rule,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, rule: Rule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }

    fn push(&mut self, rule: Rule, message: String) {
        self.violations.push(Violation { rule, message });
    }
}

fn check_gamma(t: &CosiltingTuple) -> Result<()> {
    let n = t.annulus.marked_points();
    let distinct: BTreeSet<&Arc> = t.gamma.iter().collect();
    if t.gamma.len() != n || distinct.len() != n || t.gamma.iter().any(|g| !g.is_finite()) {
        return Err(Error::InvalidTuple(format!(
            "gamma must list {n} distinct finite arcs"
        )));
    }
    Ok(())
}

/// Rules (C2) and (C3), which only look at labels and the star.
fn parameter_rules(t: &CosiltingTuple, report: &mut ValidationReport) {
    if t.is_finite_case() {
        if !t.p.is_empty() || !t.a.is_empty() {
            report.push(
                Rule::C2,
                "C crosses the core but P or A is non-empty".into(),
            );
        }
        if t.star != Star::NoG {
            report.push(Rule::C2, "C crosses the core but * = G".into());
        }
    } else {
        if let Some(l) = t.p.intersection(&t.a).next() {
            report.push(Rule::C3, format!("label {l} lies in both P and A"));
        }
        let covered: BTreeSet<String> = t.p.union(&t.a).cloned().collect();
        if covered != t.field.labels {
            report.push(
                Rule::C3,
                "P and A do not partition the parameter labels".into(),
            );
        }
        if t.star != Star::G {
            report.push(Rule::C3, "C avoids the core but * is not G".into());
        }
    }
}

/// Lists every violated rule. Maximality is certified inside the winding
/// window of `bound`, widened to cover the tuple's arcs.
pub fn validate_tuple(t: &CosiltingTuple, bound: SearchBound) -> Result<ValidationReport> {
    check_gamma(t)?;
    let mut report = ValidationReport::default();
    let arcs: Vec<Arc> = t.c.iter().copied().collect();
    for (k, &x) in arcs.iter().enumerate() {
        for &y in &arcs[k + 1..] {
            if !crossing_number(x, y, t.annulus).is_zero() {
                report.push(Rule::C1, format!("{x} and {y} cross"));
            }
        }
    }
    if !report.violates(Rule::C1) {
        let bound = bound.covering(arcs.iter().chain(&t.gamma));
        if let Some(extra) = compatible_arcs(&t.collection(), bound).first() {
            report.push(Rule::C1, format!("C is not maximal: {extra} can be added"));
        }
    }
    parameter_rules(t, &mut report);
    Ok(report)
}

/// Cheap structural checks used by the conversions: (C2)/(C3) and the size
/// of `C`. Full maximality is left to [`validate_tuple`].
fn structural_check(t: &CosiltingTuple) -> Result<()> {
    check_gamma(t)?;
    if t.c.len() != t.annulus.marked_points() {
        return Err(Error::InvalidTuple(format!(
            "C has {} arcs, expected {}",
            t.c.len(),
            t.annulus.marked_points()
        )));
    }
    let mut report = ValidationReport::default();
    parameter_rules(t, &mut report);
    match report.violations.first() {
        Some(v) => Err(Error::InvalidTuple(format!("{:?}: {}", v.rule, v.message))),
        None => Ok(()),
    }
}

pub fn tuple_to_pair(t: &CosiltingTuple) -> Result<CosiltingPair> {
    structural_check(t)?;
    let mut z: Vec<RigidPoint> =
        t.c.iter()
            .filter(|x| t.gamma_index(x).is_none())
            .map(|x| RigidPoint::String(*x))
            .collect();
    z.extend(t.p.iter().cloned().map(RigidPoint::Prufer));
    z.extend(t.a.iter().cloned().map(RigidPoint::Adic));
    if t.star == Star::G {
        z.push(RigidPoint::Rest(t.field.rest_side));
        z.push(RigidPoint::Generic);
    }
    let i = t.c.iter().filter_map(|x| t.gamma_index(x)).collect();
    Ok(CosiltingPair { z, i })
}

pub fn tuple_to_rigid(t: &CosiltingTuple) -> Result<BTreeSet<RigidPoint>> {
    let pair = tuple_to_pair(t)?;
    Ok(pair
        .z
        .into_iter()
        .chain(pair.i.into_iter().map(RigidPoint::ShiftedInjective))
        .collect())
}

/// Rebuilds the tuple indexing a maximal rigid set.
pub fn rigid_to_tuple(
    points: &BTreeSet<RigidPoint>,
    annulus: MarkedAnnulus,
    gamma: &[Arc],
    field: &ParameterField,
) -> Result<CosiltingTuple> {
    let mut t = CosiltingTuple {
        annulus,
        c: BTreeSet::new(),
        p: BTreeSet::new(),
        a: BTreeSet::new(),
        star: Star::NoG,
        field: field.clone(),
        gamma: gamma.to_vec(),
    };
    for x in points {
        match x {
            RigidPoint::String(arc) => {
                t.c.insert(*arc);
            }
            RigidPoint::Prufer(l) => {
                t.p.insert(l.clone());
            }
            RigidPoint::Adic(l) => {
                t.a.insert(l.clone());
            }
            RigidPoint::Generic => t.star = Star::G,
            RigidPoint::Rest(side) if *side == field.rest_side => {}
            RigidPoint::Rest(_) => {
                return Err(Error::InvalidTuple("rest bucket on the wrong side".into()))
            }
            RigidPoint::ShiftedInjective(i) => {
                let g = gamma
                    .get(i.wrapping_sub(1))
                    .ok_or_else(|| Error::UnknownPoint(x.to_string()))?;
                t.c.insert(*g);
            }
        }
    }
    structural_check(&t)?;
    Ok(t)
}

pub fn mutable_points(t: &CosiltingTuple) -> Result<Vec<RigidPoint>> {
    Ok(tuple_to_rigid(t)?
        .into_iter()
        .filter(RigidPoint::is_mutable)
        .collect())
}

fn flip_in(t: &CosiltingTuple, arc: Arc, bound: SearchBound) -> Result<Arc> {
    let bound = bound.covering(t.c.iter().chain(&t.gamma));
    let tri = Triangulation::new(t.collection(), bound)?;
    Ok(flip(&tri, arc, bound)?.0)
}

/// Irreducible mutation at `x`.
pub fn mutate(
    t: &CosiltingTuple,
    x: &RigidPoint,
    bound: SearchBound,
) -> Result<(CosiltingTuple, MutationEdge)> {
    let points = tuple_to_rigid(t)?;
    if !points.contains(x) {
        return Err(Error::UnknownPoint(x.to_string()));
    }
    if !x.is_mutable() {
        return Err(Error::ImmutablePoint(x.to_string()));
    }
    let mut to = t.clone();
    let (added, kind) = match x {
        RigidPoint::Prufer(l) => {
            to.p.remove(l);
            to.a.insert(l.clone());
            (RigidPoint::Adic(l.clone()), EdgeKind::PruferAdicSwap)
        }
        RigidPoint::Adic(l) => {
            to.a.remove(l);
            to.p.insert(l.clone());
            (RigidPoint::Prufer(l.clone()), EdgeKind::PruferAdicSwap)
        }
        RigidPoint::String(_) | RigidPoint::ShiftedInjective(_) => {
            let (arc, from_gamma) = match x {
                RigidPoint::String(a) => (*a, false),
                RigidPoint::ShiftedInjective(i) => (t.gamma[i - 1], true),
                _ => unreachable!(),
            };
            let beta = flip_in(t, arc, bound)?;
            to.c.remove(&arc);
            to.c.insert(beta);
            match (from_gamma, t.gamma_index(&beta)) {
                (false, None) => (RigidPoint::String(beta), EdgeKind::ArcFlip),
                (false, Some(j)) => (RigidPoint::ShiftedInjective(j), EdgeKind::ArcToInjective),
                (true, None) => (RigidPoint::String(beta), EdgeKind::InjectiveToArc),
                (true, Some(j)) => (
                    RigidPoint::ShiftedInjective(j),
                    EdgeKind::InjectiveToInjective,
                ),
            }
        }
        RigidPoint::Generic | RigidPoint::Rest(_) => unreachable!("checked above"),
    };
    let edge = MutationEdge {
        from: t.clone(),
        to: to.clone(),
        removed: x.clone(),
        added,
        kind,
    };
    Ok((to, edge))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub removed: RigidPoint,
    pub added: RigidPoint,
    pub kind: EdgeKind,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphNode {
    pub id: usize,
    pub hash: String,
    pub depth: usize,
    /// Whether all mutations of this node were explored.
    pub expanded: bool,
    pub mutable: usize,
    pub tuple: CosiltingTuple,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExchangeGraph {
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

impl ExchangeGraph {
    pub fn degree(&self, node: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.from == node || e.to == node)
            .count()
    }

    /// Expanded nodes whose degree differs from their number of mutable points.
    pub fn degree_violations(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for e in &self.edges {
            deg[e.from] += 1;
            deg[e.to] += 1;
        }
        self.nodes
            .iter()
            .filter(|n| n.expanded && deg[n.id] != n.mutable)
            .map(|n| n.id)
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph exchange {\n");
        for n in &self.nodes {
            out.push_str(&format!("  n{} [label=\"{}\"];\n", n.id, n.hash));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  n{} -- n{} [label=\"{:?}\"];\n",
                e.from, e.to, e.kind
            ));
        }
        out.push_str("}\n");
        out
    }
}

/// Breadth-first closure under mutation, `depth` steps out from `start`.
pub fn exchange_graph(
    start: &CosiltingTuple,
    depth: usize,
    bound: SearchBound,
) -> Result<ExchangeGraph> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut nodes = vec![GraphNode {
        id: 0,
        hash: start.hash_label(),
        depth: 0,
        expanded: false,
        mutable: mutable_points(start)?.len(),
        tuple: start.clone(),
    }];
    ids.insert(start.key(), 0);
    let mut edges = Vec::new();
    let mut seen_edges = BTreeSet::new();
    let mut frontier = vec![0];
    for level in 0..depth {
        let expansions: Vec<Result<Vec<(CosiltingTuple, MutationEdge)>>> = frontier
            .par_iter()
            .map(|&id| {
                let t = &nodes[id].tuple;
                mutable_points(t)?
                    .iter()
                    .map(|x| mutate(t, x, bound))
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for (&id, found) in frontier.iter().zip(expansions) {
            nodes[id].expanded = true;
            for (to, edge) in found? {
                let key = to.key();
                let target = match ids.get(&key) {
                    Some(&j) => j,
                    None => {
                        let j = nodes.len();
                        nodes.push(GraphNode {
                            id: j,
                            hash: to.hash_label(),
                            depth: level + 1,
                            expanded: false,
                            mutable: mutable_points(&to)?.len(),
                            tuple: to,
                        });
                        ids.insert(key, j);
                        next.push(j);
                        j
                    }
                };
                if seen_edges.insert((id.min(target), id.max(target))) {
                    edges.push(GraphEdge {
                        from: id,
                        to: target,
                        removed: edge.removed,
                        added: edge.added,
                        kind: edge.kind,
                    });
                }
            }
        }
        frontier = next;
    }
    Ok(ExchangeGraph { nodes, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annulus::{Boundary, Spiral};

    fn ann() -> MarkedAnnulus {
        MarkedAnnulus::new(2, 1).unwrap()
    }

    fn gamma() -> Vec<Arc> {
        vec![
            Arc::bridging(0, 0, 0),
            Arc::bridging(1, 0, 0),
            Arc::bridging(1, 0, 1),
        ]
    }

    fn asymptotic(labels: &[&str]) -> CosiltingTuple {
        let c = [
            Arc::asymptotic(Boundary::Outer, 0, Spiral::Cw),
            Arc::asymptotic(Boundary::Outer, 1, Spiral::Cw),
            Arc::asymptotic(Boundary::Inner, 0, Spiral::Cw),
        ];
        CosiltingTuple {
            annulus: ann(),
            c: c.into_iter().collect(),
            p: labels.iter().map(|s| s.to_string()).collect(),
            a: BTreeSet::new(),
            star: Star::G,
            field: ParameterField::new(labels.iter().copied(), RestSide::Prufer),
            gamma: gamma(),
        }
    }

    #[test]
    fn base_tuple_is_valid_with_all_injectives() {
        let t = CosiltingTuple::base(
            ann(),
            gamma(),
            ParameterField::new(["l1"], RestSide::Prufer),
        )
        .unwrap();
        assert!(validate_tuple(&t, SearchBound::default())
            .unwrap()
            .is_valid());
        let pair = tuple_to_pair(&t).unwrap();
        assert!(pair.z.is_empty());
        assert_eq!(pair.i, (1..=3).collect());
    }

    #[test]
    fn parameter_rules_are_reported() {
        let mut t = CosiltingTuple::base(
            ann(),
            gamma(),
            ParameterField::new(["l1"], RestSide::Prufer),
        )
        .unwrap();
        t.p.insert("l1".into());
        assert!(validate_tuple(&t, SearchBound::default())
            .unwrap()
            .violates(Rule::C2));

        let mut s = asymptotic(&["l1", "l2"]);
        assert!(validate_tuple(&s, SearchBound::default())
            .unwrap()
            .is_valid());
        s.p.remove("l2");
        assert!(validate_tuple(&s, SearchBound::default())
            .unwrap()
            .violates(Rule::C3));
    }

    #[test]
    fn generic_is_immutable() {
        let t = asymptotic(&["l1"]);
        let err = mutate(&t, &RigidPoint::Generic, SearchBound::default()).unwrap_err();
        assert_eq!(err, Error::ImmutablePoint("G".into()));
        assert_eq!(mutable_points(&t).unwrap().len(), 3 + 1);
    }

    #[test]
    fn prufer_swap_is_an_involution() {
        let t = asymptotic(&["l1"]);
        let (u, e) = mutate(&t, &RigidPoint::Prufer("l1".into()), SearchBound::default()).unwrap();
        assert_eq!(e.kind, EdgeKind::PruferAdicSwap);
        let (back, _) = mutate(&u, &e.added, SearchBound::default()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn rigid_round_trip() {
        let t = asymptotic(&["l1", "l2"]);
        let pts = tuple_to_rigid(&t).unwrap();
        assert!(pts.contains(&RigidPoint::Rest(RestSide::Prufer)));
        let back = rigid_to_tuple(&pts, t.annulus, &t.gamma, &t.field).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn point_syntax_round_trips() {
        for s in [
            "G",
            "I7",
            "prufer:l1",
            "adic:x",
            "rest:adic",
            "M:B(0,0,1)",
            "M:AO(1,cw)",
        ] {
            let p: RigidPoint = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert_eq!(
            "B(2,0,0)".parse::<RigidPoint>().unwrap(),
            RigidPoint::String(Arc::bridging(2, 0, 0))
        );
        assert_eq!(
            RigidPoint::parse_on("B(2,0,0)", ann()).unwrap(),
            RigidPoint::String(Arc::bridging(0, 0, -1))
        );
        assert!("I0".parse::<RigidPoint>().is_err());
    }

    #[test]
    fn tuple_json_round_trip() {
        let t = asymptotic(&["l1"]);
        let s = t.to_json_string();
        assert!(!s.contains("labels"));
        assert_eq!(CosiltingTuple::from_json_str(&s).unwrap(), t);
    }

    #[test]
    fn depth_zero_graph() {
        let t = asymptotic(&["l1"]);
        let g = exchange_graph(&t, 0, SearchBound::default()).unwrap();
        assert_eq!(g.nodes.len(), 1);
        assert!(g.edges.is_empty());
    }

    #[test]
    fn degrees_match_mutable_points() {
        let t = CosiltingTuple::base(
            ann(),
            gamma(),
            ParameterField::new(Vec::<String>::new(), RestSide::Prufer),
        )
        .unwrap();
        let g = exchange_graph(&t, 3, SearchBound::default()).unwrap();
        assert!(g.degree_violations().is_empty());
        assert!(g.nodes.iter().all(|n| n.tuple.is_finite_case()));
        assert_eq!(g.degree(0), 3);
    }
}
