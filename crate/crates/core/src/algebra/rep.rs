//! Finite-dimensional representations with exact rational matrices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::quiver::{Arrow, BoundQuiverAlgebra, QuiverWithRelations};
use super::word::{BandWord, StringWord};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, Field, Matrix, Rational};

/// A representation: `maps[a]` is a `dims[target] x dims[source]` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    shape: Vec<(usize, usize)>,
    dims: Vec<usize>,
    maps: Vec<Matrix<Rational>>,
}

fn shape_of(arrows: &[Arrow]) -> Vec<(usize, usize)> {
    arrows.iter().map(|a| (a.source, a.target)).collect()
}

impl Representation {
    pub fn new(
        quiver: &QuiverWithRelations,
        dims: Vec<usize>,
        maps: Vec<Matrix<Rational>>,
    ) -> Result<Self> {
        let shape = shape_of(&quiver.arrows);
        if dims.len() != quiver.vertex_count() || maps.len() != shape.len() {
            return Err(Error::AlgebraMismatch);
        }
        for (m, &(s, t)) in maps.iter().zip(&shape) {
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(Error::AlgebraMismatch);
            }
        }
        Ok(Self { shape, dims, maps })
    }

    /// A representation over the same quiver as `like`.
    pub(crate) fn from_parts(
        like: &Representation,
        dims: Vec<usize>,
        maps: Vec<Matrix<Rational>>,
    ) -> Self {
        Self {
            shape: like.shape.clone(),
            dims,
            maps,
        }
    }

    pub fn zero(quiver: &QuiverWithRelations, dims: Vec<usize>) -> Self {
        let shape = shape_of(&quiver.arrows);
        let maps = shape
            .iter()
            .map(|&(s, t)| Matrix::zeros(dims[t], dims[s]))
            .collect();
        Self { shape, dims, maps }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn map(&self, arrow: usize) -> &Matrix<Rational> {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[Matrix<Rational>] {
        &self.maps
    }

    pub fn arrow_ends(&self, arrow: usize) -> (usize, usize) {
        self.shape[arrow]
    }

    pub fn arrow_count(&self) -> usize {
        self.shape.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.dims.len()
    }

    pub fn same_quiver(&self, other: &Representation) -> bool {
        self.shape == other.shape && self.dims.len() == other.dims.len()
    }

    fn add_entry(&mut self, arrow: usize, row: usize, col: usize, v: Rational) {
        let m = &mut self.maps[arrow];
        let x = m.get(row, col).add(&v);
        m.set(row, col, x);
    }

    /// The composite along a path, as a matrix from the path's source space.
    pub fn path_map(&self, source: usize, arrows: &[usize]) -> Matrix<Rational> {
        let mut acc = Matrix::identity(self.dims[source]);
        for &a in arrows {
            acc = self.maps[a].mul(&acc);
        }
        acc
    }

    /// True if every relation acts as zero.
    pub fn satisfies(&self, quiver: &QuiverWithRelations) -> bool {
        quiver
            .relations
            .iter()
            .all(|&(a, b)| self.maps[b].mul(&self.maps[a]).is_zero())
    }

    pub fn direct_sum(&self, other: &Representation) -> Result<Representation> {
        if !self.same_quiver(other) {
            return Err(Error::AlgebraMismatch);
        }
        let dims: Vec<usize> = self
            .dims
            .iter()
            .zip(&other.dims)
            .map(|(a, b)| a + b)
            .collect();
        let maps = self
            .shape
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = Matrix::zeros(dims[t], dims[s]);
                let (x, y) = (&self.maps[a], &other.maps[a]);
                for i in 0..x.rows() {
                    for j in 0..x.cols() {
                        m.set(i, j, x.get(i, j).clone());
                    }
                }
                for i in 0..y.rows() {
                    for j in 0..y.cols() {
                        m.set(x.rows() + i, x.cols() + j, y.get(i, j).clone());
                    }
                }
                m
            })
            .collect();
        Ok(Representation {
            shape: self.shape.clone(),
            dims,
            maps,
        })
    }

    pub fn to_json(&self) -> RepresentationJson {
        let dims = self
            .dims
            .iter()
            .enumerate()
            .map(|(v, &d)| ((v + 1).to_string(), d))
            .collect();
        let arrows = self
            .maps
            .iter()
            .enumerate()
            .map(|(a, m)| {
                let rows = (0..m.rows())
                    .map(|i| m.row(i).iter().map(format_rational).collect())
                    .collect();
                (format!("a{}", a + 1), rows)
            })
            .collect();
        RepresentationJson { dims, arrows }
    }

    pub fn from_json(quiver: &QuiverWithRelations, json: &RepresentationJson) -> Result<Self> {
        let mut dims = vec![0; quiver.vertex_count()];
        for (k, &d) in &json.dims {
            let v: usize = k.parse().map_err(|_| Error::Parse(format!("vertex {k}")))?;
            if v == 0 || v > dims.len() {
                return Err(Error::Parse(format!("vertex {k}")));
            }
            dims[v - 1] = d;
        }
        let mut rep = Representation::zero(quiver, dims);
        for (k, rows) in &json.arrows {
            let a: usize = k
                .strip_prefix('a')
                .and_then(|n| n.parse().ok())
                .filter(|&n: &usize| n >= 1 && n <= rep.arrow_count())
                .ok_or_else(|| Error::Parse(format!("arrow {k}")))?;
            let parsed: Option<Vec<Vec<Rational>>> = rows
                .iter()
                .map(|r| r.iter().map(|x| parse_rational(x)).collect())
                .collect();
            let parsed = parsed.ok_or_else(|| Error::Parse(format!("entries of {k}")))?;
            let m = if parsed.is_empty() {
                Matrix::zeros(0, rep.maps[a - 1].cols())
            } else {
                if parsed.iter().any(|r| r.len() != parsed[0].len()) {
                    return Err(Error::Parse(format!("ragged matrix {k}")));
                }
                Matrix::from_rows(parsed)
            };
            let (s, t) = rep.shape[a - 1];
            if m.rows() != rep.dims[t] || m.cols() != rep.dims[s] {
                return Err(Error::Parse(format!("matrix {k} has the wrong shape")));
            }
            rep.maps[a - 1] = m;
        }
        Ok(rep)
    }
}

/// Wire format: vertices and arrows keyed by their 1-based labels, matrix
/// entries as exact rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub dims: BTreeMap<String, usize>,
    pub arrows: BTreeMap<String, Vec<Vec<String>>>,
}

/// Position-by-position layout of a word: the basis index of each position
/// inside its vertex space.
fn layout(vertices: &[usize], blocks: usize, n_vertices: usize) -> (Vec<usize>, Vec<usize>) {
    let mut dims = vec![0; n_vertices];
    let offsets = vertices
        .iter()
        .map(|&v| {
            let o = dims[v];
            dims[v] += blocks;
            o
        })
        .collect();
    (dims, offsets)
}

pub fn string_module(word: &StringWord, alg: &BoundQuiverAlgebra) -> Result<Representation> {
    if !word.is_finite() {
        return Err(Error::IllegalWord("infinite string word".into()));
    }
    let q = &alg.quiver;
    word.validate(q)?;
    let verts = word.vertices(q)?;
    let (dims, offsets) = layout(&verts, 1, q.vertex_count());
    let mut rep = Representation::zero(q, dims);
    for (k, l) in word.letters.iter().enumerate() {
        let (from, to) = if l.inverse { (k + 1, k) } else { (k, k + 1) };
        rep.add_entry(l.arrow, offsets[to], offsets[from], Field::one());
    }
    Ok(rep)
}

/// Band module with parameter `lambda` and `n x n` blocks; the Jordan block
/// sits on the first letter.
pub fn band_module(
    word: &BandWord,
    lambda: &Rational,
    n: usize,
    alg: &BoundQuiverAlgebra,
) -> Result<Representation> {
    if Field::is_zero(lambda) {
        return Err(Error::ZeroParameter);
    }
    if n == 0 {
        return Err(Error::IllegalWord(
            "band block size must be positive".into(),
        ));
    }
    let q = &alg.quiver;
    word.validate(q)?;
    let verts = word.vertices(q)?;
    let m = verts.len();
    let (dims, offsets) = layout(&verts, n, q.vertex_count());
    let mut rep = Representation::zero(q, dims);
    for (k, l) in word.letters.iter().enumerate() {
        let next = (k + 1) % m;
        let (from, to) = if l.inverse { (next, k) } else { (k, next) };
        for i in 0..n {
            let diag = if k == 0 { lambda.clone() } else { Field::one() };
            rep.add_entry(l.arrow, offsets[to] + i, offsets[from] + i, diag);
            if k == 0 && i + 1 < n {
                rep.add_entry(
                    l.arrow,
                    offsets[to] + i,
                    offsets[from] + i + 1,
                    Field::one(),
                );
            }
        }
    }
    Ok(rep)
}

pub fn simple(alg: &BoundQuiverAlgebra, v: usize) -> Representation {
    let mut dims = vec![0; alg.quiver.vertex_count()];
    dims[v] = 1;
    Representation::zero(&alg.quiver, dims)
}

/// `P(v)`: at `w`, the paths from `v` to `w`; arrows append.
pub fn projective(alg: &BoundQuiverAlgebra, v: usize) -> Representation {
    let q = &alg.quiver;
    let mut dims = vec![0; q.vertex_count()];
    let mut pos = vec![0; alg.paths.len()];
    for p in alg.paths_from(v) {
        let w = alg.paths[p].target;
        pos[p] = dims[w];
        dims[w] += 1;
    }
    let mut rep = Representation::zero(q, dims);
    for p in alg.paths_from(v) {
        for a in q.arrows_from(alg.paths[p].target) {
            if let Some(r) = alg.extend(p, a.id) {
                rep.add_entry(a.id, pos[r], pos[p], Field::one());
            }
        }
    }
    rep
}

/// `I(i)`: at `w`, the dual of the paths from `w` to `i`.
pub fn injective(alg: &BoundQuiverAlgebra, i: usize) -> Representation {
    let q = &alg.quiver;
    let mut dims = vec![0; q.vertex_count()];
    let mut pos = vec![0; alg.paths.len()];
    let into: Vec<usize> = (0..alg.paths.len())
        .filter(|&p| alg.paths[p].target == i)
        .collect();
    for &p in &into {
        let w = alg.paths[p].source;
        pos[p] = dims[w];
        dims[w] += 1;
    }
    let mut rep = Representation::zero(q, dims);
    // Arrow a: w -> u sends the dual of p = a.r to the dual of r.
    for &p in &into {
        let path = &alg.paths[p];
        if let Some((&a, rest)) = path.arrows.split_first() {
            let u = q.arrows[a].target;
            let r = alg
                .path_index(u, rest)
                .expect("subpaths of basis paths are basis paths");
            rep.add_entry(a, pos[r], pos[p], Field::one());
        }
    }
    rep
}
