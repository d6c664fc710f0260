//! The quiver with relations of a triangulation and the path basis of its
//! bound path algebra.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::strip::{Side, Strip};
use crate::annulus::Arc;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub id: usize,
    pub source: usize,
    pub target: usize,
}

/// Vertices are the arcs of the triangulation in the given order; a relation
/// `(a, b)` is the path "a then b".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverWithRelations {
    pub vertices: Vec<Arc>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<(usize, usize)>,
}

impl QuiverWithRelations {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_relation(&self, first: usize, second: usize) -> bool {
        self.relations.contains(&(first, second))
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = &Arrow> + '_ {
        self.arrows.iter().filter(move |a| a.source == v)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph quiver {\n");
        for (i, arc) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{} [label=\"{}: {}\"];", i + 1, i + 1, arc);
        }
        for a in &self.arrows {
            let _ = writeln!(
                out,
                "  v{} -> v{} [label=\"a{}\"];",
                a.source + 1,
                a.target + 1,
                a.id + 1
            );
        }
        for (x, y) in &self.relations {
            let _ = writeln!(out, "  // relation a{} a{}", x + 1, y + 1);
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the quiver from the lifted triangles: inside each triangle, at the
/// corner between two arc sides, one arrow runs from the earlier side to the
/// later side in counterclockwise order. Internal triangles add the three
/// length-two paths around their cycle as relations.
///
/// Returns the quiver together with the arrow sitting at each triangle corner.
pub(crate) fn build(strip: &Strip) -> (QuiverWithRelations, Vec<[Option<usize>; 3]>) {
    let mut arrows = Vec::new();
    let mut relations = Vec::new();
    let mut corners = Vec::new();
    for tri in strip.triangles() {
        let mut at = [None; 3];
        for k in 0..3 {
            // Corner at vertex k joins side k-1 (ending there) and side k.
            let (Side::Arc(from), Side::Arc(to)) = (tri.sides[(k + 2) % 3], tri.sides[k]) else {
                continue;
            };
            let id = arrows.len();
            arrows.push(Arrow {
                id,
                source: from,
                target: to,
            });
            at[k] = Some(id);
        }
        if tri.is_internal() {
            let [a0, a1, a2] = at.map(|a| a.expect("internal corner"));
            // a1: s0 -> s1, a2: s1 -> s2, a0: s2 -> s0.
            relations.extend([(a1, a2), (a2, a0), (a0, a1)]);
        }
        corners.push(at);
    }
    let quiver = QuiverWithRelations {
        vertices: strip.gamma().to_vec(),
        arrows,
        relations,
    };
    (quiver, corners)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundQuiverAlgebra {
    pub quiver: QuiverWithRelations,
    pub paths: Vec<Path>,
    #[serde(skip)]
    index: HashMap<(usize, Vec<usize>), usize>,
}

impl BoundQuiverAlgebra {
    pub fn dimension(&self) -> usize {
        self.paths.len()
    }

    pub fn path_index(&self, source: usize, arrows: &[usize]) -> Option<usize> {
        self.index.get(&(source, arrows.to_vec())).copied()
    }

    /// The basis path `p` followed by arrow `a`, if non-zero.
    pub fn extend(&self, p: usize, a: usize) -> Option<usize> {
        let path = &self.paths[p];
        let arrow = self.quiver.arrows[a];
        if arrow.source != path.target {
            return None;
        }
        let mut arrows = path.arrows.clone();
        arrows.push(a);
        self.path_index(path.source, &arrows)
    }

    pub fn paths_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.paths.len()).filter(move |&i| self.paths[i].source == v)
    }

    pub fn paths_between(&self, v: usize, w: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.paths.len())
            .filter(move |&i| self.paths[i].source == v && self.paths[i].target == w)
    }
}

/// Breadth-first enumeration of the non-zero paths of a monomial algebra.
pub fn path_basis(quiver: &QuiverWithRelations, cap: usize) -> Result<BoundQuiverAlgebra> {
    let mut paths = Vec::new();
    let mut queue: VecDeque<Path> = (0..quiver.vertex_count())
        .map(|v| Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        })
        .collect();
    while let Some(path) = queue.pop_front() {
        for a in quiver.arrows_from(path.target) {
            if let Some(&last) = path.arrows.last() {
                if quiver.is_relation(last, a.id) {
                    continue;
                }
            }
            let mut arrows = path.arrows.clone();
            arrows.push(a.id);
            queue.push_back(Path {
                source: path.source,
                target: a.target,
                arrows,
            });
        }
        paths.push(path);
        if paths.len() > cap {
            return Err(Error::NotFiniteDimensional { cap });
        }
    }
    let index = paths
        .iter()
        .enumerate()
        .map(|(i, p)| ((p.source, p.arrows.clone()), i))
        .collect();
    Ok(BoundQuiverAlgebra {
        quiver: quiver.clone(),
        paths,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(relations: Vec<(usize, usize)>) -> QuiverWithRelations {
        QuiverWithRelations {
            vertices: vec![Arc::bridging(0, 0, 0); 3],
            arrows: (0..3)
                .map(|i| Arrow {
                    id: i,
                    source: i,
                    target: (i + 1) % 3,
                })
                .collect(),
            relations,
        }
    }

    #[test]
    fn bound_three_cycle() {
        let alg = path_basis(&cyclic(vec![(0, 1), (1, 2), (2, 0)]), 100).unwrap();
        assert_eq!(alg.dimension(), 6);
        assert!(alg.paths.iter().all(|p| p.len() <= 1));
    }

    #[test]
    fn unbound_cycle_exceeds_cap() {
        assert_eq!(
            path_basis(&cyclic(vec![]), 50).unwrap_err(),
            Error::NotFiniteDimensional { cap: 50 }
        );
    }

    #[test]
    fn partially_bound_cycle() {
        // One relation: the longest surviving path is a0 a1 a2.
        let alg = path_basis(&cyclic(vec![(2, 0)]), 100).unwrap();
        for p in &alg.paths {
            assert!(!p.arrows.windows(2).any(|w| w == [2, 0]));
        }
        assert_eq!(alg.dimension(), 3 + 3 + 2 + 1);
    }
}
