//! Hom spaces, projective presentations and Ext¹ between finite-dimensional
//! representations.

use serde::Serialize;

use crate::algebra::{projective, BoundQuiverAlgebra, GammaAlgebra, Representation};
use crate::annulus::Arc;
use crate::cosilting::{tuple_to_pair, CosiltingTuple, RigidPoint};
use crate::error::{Error, Result};
use crate::linalg::{Field, Fp, Matrix, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct HomSpace {
    pub dimension: usize,
    /// Each basis element is a family of matrices, one per vertex.
    pub basis: Vec<Vec<Matrix<Rational>>>,
}

/// Offsets of the unknowns `phi_v` (a `dim N_v x dim M_v` block per vertex).
fn unknowns(m: &Representation, n: &Representation) -> (Vec<usize>, usize) {
    let mut offsets = Vec::with_capacity(m.vertex_count());
    let mut total = 0;
    for v in 0..m.vertex_count() {
        offsets.push(total);
        total += m.dims()[v] * n.dims()[v];
    }
    (offsets, total)
}

/// The linear system `N_a phi_s = phi_t M_a` over all arrows.
fn intertwiner_system(
    m: &Representation,
    n: &Representation,
) -> Result<(Matrix<Rational>, Vec<usize>)> {
    if !m.same_quiver(n) {
        return Err(Error::AlgebraMismatch);
    }
    let (offsets, total) = unknowns(m, n);
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * m.dims()[v] + c;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for a in 0..m.arrow_count() {
        let (s, t) = m.arrow_ends(a);
        let (ma, na) = (m.map(a), n.map(a));
        for i in 0..n.dims()[t] {
            for j in 0..m.dims()[s] {
                let mut row = vec![<Rational as Field>::zero(); total];
                for k in 0..n.dims()[s] {
                    let x = na.get(i, k);
                    if !Field::is_zero(x) {
                        let idx = var(s, k, j);
                        row[idx] = Field::add(&row[idx], x);
                    }
                }
                for l in 0..m.dims()[t] {
                    let y = ma.get(l, j);
                    if !Field::is_zero(y) {
                        let idx = var(t, i, l);
                        row[idx] = Field::sub(&row[idx], y);
                    }
                }
                if row.iter().any(|x| !Field::is_zero(x)) {
                    rows.push(row);
                }
            }
        }
    }
    let system = if rows.is_empty() {
        Matrix::zeros(0, total)
    } else {
        Matrix::from_rows(rows)
    };
    Ok((system, offsets))
}

pub fn hom_space(m: &Representation, n: &Representation) -> Result<HomSpace> {
    let (system, offsets) = intertwiner_system(m, n)?;
    let basis = system
        .kernel()
        .into_iter()
        .map(|x| {
            (0..m.vertex_count())
                .map(|v| {
                    let (r, c) = (n.dims()[v], m.dims()[v]);
                    let mut phi = Matrix::zeros(r, c);
                    for i in 0..r {
                        for j in 0..c {
                            phi.set(i, j, x[offsets[v] + i * c + j].clone());
                        }
                    }
                    phi
                })
                .collect()
        })
        .collect::<Vec<_>>();
    Ok(HomSpace {
        dimension: basis.len(),
        basis,
    })
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize> {
    let (system, _) = intertwiner_system(m, n)?;
    Ok(system.cols() - system.rank())
}

/// `dim Hom(M, N)` computed after reducing modulo the prime `2^61 - 1`.
pub fn hom_dim_mod_p(m: &Representation, n: &Representation) -> Result<usize> {
    let (system, _) = intertwiner_system(m, n)?;
    let reduced = system.map(|x| Fp::from_rational(x).expect("denominator invertible mod p"));
    Ok(reduced.cols() - reduced.rank())
}

/// A projective cover `P0 -> M`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    /// Vertex of each indecomposable summand `P(v)` of `P0`.
    pub tops: Vec<usize>,
    /// The generator of each summand: a standard basis vector of `M_v`.
    generators: Vec<usize>,
    pub p0: Representation,
    /// At each vertex `w`, the map `P0_w -> M_w`.
    pub map: Vec<Matrix<Rational>>,
}

fn identity_column(n: usize, j: usize) -> Vec<Rational> {
    let mut v = vec![<Rational as Field>::zero(); n];
    v[j] = Field::one();
    v
}

pub fn projective_cover(alg: &BoundQuiverAlgebra, m: &Representation) -> ProjectiveCover {
    let q = &alg.quiver;
    // Generators: at each vertex, a complement to the radical (sum of images
    // of incoming arrows), chosen among standard basis vectors.
    let mut gens: Vec<(usize, usize)> = Vec::new();
    for v in 0..q.vertex_count() {
        let d = m.dims()[v];
        let mut cols: Vec<Vec<Rational>> = Vec::new();
        for a in q.arrows.iter().filter(|a| a.target == v) {
            let ma = m.map(a.id);
            cols.extend((0..ma.cols()).map(|j| ma.column(j)));
        }
        let radical = cols.len();
        cols.extend((0..d).map(|j| identity_column(d, j)));
        let pivots = Matrix::from_columns(d, &cols).column_basis();
        gens.extend(
            pivots
                .into_iter()
                .filter(|&c| c >= radical)
                .map(|c| (v, c - radical)),
        );
    }

    let mut p0 = Representation::zero(q, vec![0; q.vertex_count()]);
    for &(v, _) in &gens {
        p0 = p0.direct_sum(&projective(alg, v)).expect("same quiver");
    }
    let map = (0..q.vertex_count())
        .map(|w| {
            let mut cols = Vec::new();
            for &(v, j) in &gens {
                for p in alg.paths_from(v).filter(|&p| alg.paths[p].target == w) {
                    cols.push(m.path_map(v, &alg.paths[p].arrows).column(j));
                }
            }
            Matrix::from_columns(m.dims()[w], &cols)
        })
        .collect();
    ProjectiveCover {
        tops: gens.iter().map(|g| g.0).collect(),
        generators: gens.iter().map(|g| g.1).collect(),
        p0,
        map,
    }
}

/// The kernel of a projective cover, as a representation, with the basis
/// vectors of its vertex spaces in `P0` coordinates.
fn syzygy(cover: &ProjectiveCover) -> (Representation, Vec<Vec<Vec<Rational>>>) {
    let p0 = &cover.p0;
    let kernels: Vec<Vec<Vec<Rational>>> = cover.map.iter().map(Matrix::kernel).collect();
    let dims: Vec<usize> = kernels.iter().map(Vec::len).collect();
    let bases: Vec<Matrix<Rational>> = kernels
        .iter()
        .enumerate()
        .map(|(w, k)| Matrix::from_columns(p0.dims()[w], k))
        .collect();
    let maps = (0..p0.arrow_count())
        .map(|a| {
            let (s, t) = p0.arrow_ends(a);
            let cols: Vec<Vec<Rational>> = kernels[s]
                .iter()
                .map(|x| {
                    let y = p0.map(a).mul_vec(x);
                    bases[t].solve(&y).expect("kernel is a subrepresentation")
                })
                .collect();
            Matrix::from_columns(dims[t], &cols)
        })
        .collect();
    (Representation::from_parts(p0, dims, maps), kernels)
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectivePresentation {
    /// Multiplicity of `P(v)` in `P0`, per vertex.
    pub p0: Vec<usize>,
    /// Multiplicity of `P(v)` in `P1`, per vertex.
    pub p1: Vec<usize>,
    pub syzygy_dims: Vec<usize>,
    pub exact: bool,
}

fn multiplicities(tops: &[usize], n: usize) -> Vec<usize> {
    let mut out = vec![0; n];
    for &v in tops {
        out[v] += 1;
    }
    out
}

pub fn projective_presentation(
    alg: &BoundQuiverAlgebra,
    m: &Representation,
) -> ProjectivePresentation {
    let n = alg.quiver.vertex_count();
    let cover = projective_cover(alg, m);
    let (omega, _) = syzygy(&cover);
    let cover1 = projective_cover(alg, &omega);
    let surjective = (0..n).all(|w| cover.map[w].rank() == m.dims()[w]);
    let equivariant = (0..m.arrow_count()).all(|a| {
        let (s, t) = m.arrow_ends(a);
        cover.map[t].mul(cover.p0.map(a)) == m.map(a).mul(&cover.map[s])
    });
    let counted = (0..n).all(|w| omega.dims()[w] + m.dims()[w] == cover.p0.dims()[w]);
    let onto_kernel = (0..n).all(|w| cover1.map[w].rank() == omega.dims()[w]);
    ProjectivePresentation {
        p0: multiplicities(&cover.tops, n),
        p1: multiplicities(&cover1.tops, n),
        syzygy_dims: omega.dims().to_vec(),
        exact: surjective && equivariant && counted && onto_kernel,
    }
}

/// `dim coker(Hom(P0, N) -> Hom(P1, N))` for the minimal projective
/// presentation `P1 -> P0 -> M -> 0`. This is `dim Hom(N, τM)`; it bounds
/// `dim Ext¹(M, N)` from above and vanishes in both directions exactly when
/// `M ⊕ N` is τ-rigid.
pub fn ext1_dim(alg: &BoundQuiverAlgebra, m: &Representation, n: &Representation) -> Result<usize> {
    if !m.same_quiver(n) || m.vertex_count() != alg.quiver.vertex_count() {
        return Err(Error::AlgebraMismatch);
    }
    let cover = projective_cover(alg, m);
    let (omega, kernels) = syzygy(&cover);
    let cover1 = projective_cover(alg, &omega);

    // Column blocks: a vector of N_v per summand of P0; row blocks: a vector
    // of N_u per summand of P1.
    let col_offsets: Vec<usize> = cover
        .tops
        .iter()
        .scan(0, |acc, &v| {
            let o = *acc;
            *acc += n.dims()[v];
            Some(o)
        })
        .collect();
    let cols: usize = cover.tops.iter().map(|&v| n.dims()[v]).sum();
    let rows: usize = cover1.tops.iter().map(|&u| n.dims()[u]).sum();
    let mut f: Matrix<Rational> = Matrix::zeros(rows, cols);
    let mut row0 = 0;
    for (&u, &j) in cover1.tops.iter().zip(&cover1.generators) {
        // The image of this P1 generator in P0_u, coordinates over (summand, path).
        let image = &kernels[u][j];
        let mut pos = 0;
        for (g, &v) in cover.tops.iter().enumerate() {
            for p in alg.paths_from(v).filter(|&p| alg.paths[p].target == u) {
                let c = &image[pos];
                pos += 1;
                if Field::is_zero(c) {
                    continue;
                }
                let np = n.path_map(v, &alg.paths[p].arrows);
                for r in 0..np.rows() {
                    for k in 0..np.cols() {
                        let x = f
                            .get(row0 + r, col_offsets[g] + k)
                            .add(&c.mul(np.get(r, k)));
                        f.set(row0 + r, col_offsets[g] + k, x);
                    }
                }
            }
        }
        row0 += n.dims()[u];
    }
    Ok(rows - f.rank())
}

/// `dim Ext¹(M, N)` from `0 -> Hom(M,N) -> Hom(P0,N) -> Hom(ΩM,N) -> Ext¹(M,N) -> 0`.
pub fn yoneda_ext1_dim(
    alg: &BoundQuiverAlgebra,
    m: &Representation,
    n: &Representation,
) -> Result<usize> {
    if !m.same_quiver(n) || m.vertex_count() != alg.quiver.vertex_count() {
        return Err(Error::AlgebraMismatch);
    }
    let cover = projective_cover(alg, m);
    let (omega, _) = syzygy(&cover);
    let hom_p0: usize = cover.tops.iter().map(|&v| n.dims()[v]).sum();
    Ok(hom_dim(&omega, n)? + hom_dim(m, n)? - hom_p0)
}

pub const RIGIDITY_NOTE: &str =
    "only Ext1 vanishing between finite-dimensional members is checked; the submodule condition for rigidity is not decided";

#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub first: Arc,
    pub second: Arc,
    pub ext_first_second: usize,
    pub ext_second_first: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportCheck {
    pub arc: Arc,
    /// 1-based vertex `i` with `I(i)` in the pair.
    pub vertex: usize,
    pub dim_at_vertex: usize,
    pub hom_into_injective: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct RigidityReport {
    pub note: &'static str,
    pub pairs: Vec<PairCheck>,
    pub support: Vec<SupportCheck>,
}

impl RigidityReport {
    pub fn failing_pairs(&self) -> impl Iterator<Item = &PairCheck> + '_ {
        self.pairs
            .iter()
            .filter(|p| p.ext_first_second + p.ext_second_first > 0)
    }

    pub fn support_violations(&self) -> impl Iterator<Item = &SupportCheck> + '_ {
        self.support
            .iter()
            .filter(|s| s.dim_at_vertex > 0 || s.hom_into_injective > 0)
    }

    pub fn ok(&self) -> bool {
        self.failing_pairs().next().is_none() && self.support_violations().next().is_none()
    }
}

/// Ext¹ vanishing between the finite-dimensional string modules of the pair,
/// and vanishing of `Hom(M(α), I(i))` for every `I(i)` in the pair.
pub fn rigidity_report(t: &CosiltingTuple) -> Result<RigidityReport> {
    let pair = tuple_to_pair(t)?;
    let g = GammaAlgebra::new(t.annulus, t.gamma.clone())?;
    let alg = g.algebra();
    let arcs: Vec<Arc> = pair
        .z
        .iter()
        .filter_map(|x| match x {
            RigidPoint::String(a) if a.is_finite() => Some(*a),
            _ => None,
        })
        .collect();
    let modules = arcs
        .iter()
        .map(|a| g.string_module(*a))
        .collect::<Result<Vec<_>>>()?;
    let mut pairs = Vec::new();
    for i in 0..arcs.len() {
        for j in i + 1..arcs.len() {
            pairs.push(PairCheck {
                first: arcs[i],
                second: arcs[j],
                ext_first_second: ext1_dim(alg, &modules[i], &modules[j])?,
                ext_second_first: ext1_dim(alg, &modules[j], &modules[i])?,
            });
        }
    }
    let mut support = Vec::new();
    for &v in &pair.i {
        let inj = g.injective(v - 1);
        for (arc, m) in arcs.iter().zip(&modules) {
            support.push(SupportCheck {
                arc: *arc,
                vertex: v,
                dim_at_vertex: m.dims()[v - 1],
                hom_into_injective: hom_dim(m, &inj)?,
            });
        }
    }
    Ok(RigidityReport {
        note: RIGIDITY_NOTE,
        pairs,
        support,
    })
}
