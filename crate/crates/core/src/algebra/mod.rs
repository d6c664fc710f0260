//! The bound quiver algebra of a finite triangulation, its string and band
//! words, and finite-dimensional representations.

mod quiver;
mod rep;
mod strip;
mod word;

pub use quiver::{path_basis, Arrow, BoundQuiverAlgebra, Path, QuiverWithRelations};
pub use rep::{
    band_module, injective, projective, simple, string_module, Representation, RepresentationJson,
};
pub use strip::{Lift, Side, Strip, Triangle};
pub use word::{BandWord, Letter, StringWord};

use crate::annulus::{canonicalize, Arc, Boundary, MarkedAnnulus, Spiral};
use crate::error::{Error, Result};
use crate::triangulation::Triangulation;
use strip::LiftedArc;

/// Generous bound on the path basis; the algebras here are finite-dimensional.
pub const DEFAULT_PATH_CAP: usize = 100_000;

/// Turns of a spiral unrolled when reading off an asymptotic word.
const SPIRAL_TURNS: i64 = 3;

/// Quiver of a finite triangulation, vertices in the set's sorted order.
pub fn quiver_from_triangulation(tri: &Triangulation) -> Result<QuiverWithRelations> {
    let gamma: Vec<Arc> = tri.arcs().iter().copied().collect();
    Ok(GammaAlgebra::new(tri.annulus(), gamma)?.quiver().clone())
}

/// A finite triangulation with a fixed ordering `γ_1, ..., γ_n` of its arcs,
/// together with its lifted geometry and bound quiver algebra.
#[derive(Clone, Debug)]
pub struct GammaAlgebra {
    strip: Strip,
    corners: Vec<[Option<usize>; 3]>,
    algebra: BoundQuiverAlgebra,
}

impl GammaAlgebra {
    pub fn new(ann: MarkedAnnulus, gamma: Vec<Arc>) -> Result<Self> {
        let gamma = gamma
            .into_iter()
            .map(|a| canonicalize(a, ann))
            .collect::<Result<Vec<_>>>()?;
        let strip = Strip::new(ann, &gamma)?;
        let (quiver, corners) = quiver::build(&strip);
        let algebra = path_basis(&quiver, DEFAULT_PATH_CAP)?;
        Ok(Self {
            strip,
            corners,
            algebra,
        })
    }

    pub fn annulus(&self) -> MarkedAnnulus {
        self.strip.annulus()
    }

    pub fn gamma(&self) -> &[Arc] {
        self.strip.gamma()
    }

    /// 0-based vertex of an arc of the triangulation.
    pub fn vertex_of(&self, arc: &Arc) -> Option<usize> {
        self.gamma().iter().position(|g| g == arc)
    }

    pub fn quiver(&self) -> &QuiverWithRelations {
        &self.algebra.quiver
    }

    pub fn algebra(&self) -> &BoundQuiverAlgebra {
        &self.algebra
    }

    pub fn triangles(&self) -> &[Triangle] {
        self.strip.triangles()
    }

    /// The letter taking the walk from `a` to `b` across their common corner.
    fn letter(&self, a: &LiftedArc, b: &LiftedArc) -> Result<Letter> {
        let bad = || {
            Error::IllegalWord(format!(
                "no corner between lifts of arcs {} and {}",
                a.arc + 1,
                b.arc + 1
            ))
        };
        let (t, corner) = self.strip.corner(a, b).ok_or_else(bad)?;
        let tri = &self.strip.triangles()[t];
        let k = tri
            .vertices
            .iter()
            .position(|v| *v == corner)
            .ok_or_else(bad)?;
        let arrow = self.corners[t][k].ok_or_else(bad)?;
        // The arrow at corner k runs from side k-1 to side k; side k-1 ends
        // at the corner coming from vertex k-1.
        let shift = corner_shift(a, b, corner, self.annulus());
        let a_far = a
            .other_end(a.shared_end(b).expect("corner"))
            .shift(shift, self.annulus());
        let inverse = a_far != tri.vertices[(k + 2) % 3];
        Ok(Letter { arrow, inverse })
    }

    fn word_from(&self, seq: &[LiftedArc]) -> Result<Vec<Letter>> {
        seq.windows(2).map(|w| self.letter(&w[0], &w[1])).collect()
    }

    /// The word of an arc outside the triangulation, read off its crossings.
    pub fn string_word(&self, arc: Arc) -> Result<StringWord> {
        let ann = self.annulus();
        let arc = canonicalize(arc, ann)?;
        if self.gamma().contains(&arc) {
            return Err(Error::ArcInTriangulation(arc));
        }
        match arc {
            Arc::Asymptotic {
                boundary,
                index,
                spiral,
            } => self.asymptotic_word(boundary, index, spiral),
            _ => {
                let (u, v) = strip::arc_lift(arc, 0, ann);
                let seq = self.strip.crossings(u, v);
                let first = seq
                    .first()
                    .ok_or_else(|| Error::IllegalWord(format!("{arc} crosses nothing")))?;
                Ok(StringWord {
                    start: first.arc,
                    letters: self.word_from(&seq)?,
                    period: Vec::new(),
                })
            }
        }
    }

    /// Crossing sequence of an asymptotic arc, cut off after `turns` turns
    /// and trimmed after its last crossing with a bridging arc.
    fn spiral_sequence(
        &self,
        boundary: Boundary,
        index: i64,
        spiral: Spiral,
        turns: i64,
    ) -> Vec<LiftedArc> {
        let ann = self.annulus();
        let step = ann.count(boundary) * if spiral == Spiral::Ccw { turns } else { -turns };
        let (u, v) = match boundary {
            Boundary::Outer => (Lift::Top(index), Lift::Top(index + step)),
            Boundary::Inner => (Lift::Bottom(index), Lift::Bottom(index + step)),
        };
        let mut seq = self.strip.crossings(u, v);
        let last = seq
            .iter()
            .rposition(|e| self.gamma()[e.arc].is_bridging())
            .map_or(0, |i| i + 1);
        seq.truncate(last);
        seq
    }

    fn asymptotic_word(
        &self,
        boundary: Boundary,
        index: i64,
        spiral: Spiral,
    ) -> Result<StringWord> {
        let seq = self.spiral_sequence(boundary, index, spiral, SPIRAL_TURNS);
        let m = self.gamma().iter().filter(|a| a.is_bridging()).count();
        let first = seq
            .iter()
            .position(|e| self.gamma()[e.arc].is_bridging())
            .ok_or_else(|| Error::IllegalWord("spiral meets no bridging arc".into()))?;
        if seq.len() < first + m + 1 {
            return Err(Error::IllegalWord(
                "spiral too short to read a period".into(),
            ));
        }
        let letters = self.word_from(&seq[..=first + m])?;
        let (prefix, period) = letters.split_at(first);
        Ok(StringWord {
            start: seq[0].arc,
            letters: prefix.to_vec(),
            period: period.to_vec(),
        })
    }

    /// The asymptotic word unrolled directly from a longer chord; used to
    /// check the period extrapolation.
    pub fn truncated_spiral_word(&self, arc: Arc, turns: i64) -> Result<StringWord> {
        let Arc::Asymptotic {
            boundary,
            index,
            spiral,
        } = canonicalize(arc, self.annulus())?
        else {
            return Err(Error::IllegalWord(format!("{arc} is not asymptotic")));
        };
        let seq = self.spiral_sequence(boundary, index, spiral, turns);
        let first = seq
            .first()
            .ok_or_else(|| Error::IllegalWord("empty spiral".into()))?;
        Ok(StringWord {
            start: first.arc,
            letters: self.word_from(&seq)?,
            period: Vec::new(),
        })
    }

    /// The band of the core curve, read from left to right along the strip.
    pub fn band_word(&self) -> Result<BandWord> {
        let m = self.gamma().iter().filter(|a| a.is_bridging()).count();
        let lifts = self.strip.bridging_lifts(-1..=2);
        let start = lifts
            .iter()
            .position(|e| matches!(e.ends.0, Lift::Top(x) if x >= 0))
            .expect("bridging lifts in range");
        let seq = &lifts[start..=start + m];
        let word = BandWord {
            start: seq[0].arc,
            letters: self.word_from(seq)?,
        };
        word.canonical(self.quiver())
    }

    pub fn string_module(&self, arc: Arc) -> Result<Representation> {
        string_module(&self.string_word(arc)?, &self.algebra)
    }

    pub fn band_module(
        &self,
        lambda: &crate::linalg::Rational,
        n: usize,
    ) -> Result<Representation> {
        band_module(&self.band_word()?, lambda, n, &self.algebra)
    }

    pub fn projective(&self, v: usize) -> Representation {
        projective(&self.algebra, v)
    }

    pub fn injective(&self, v: usize) -> Representation {
        injective(&self.algebra, v)
    }
}

/// Deck shift taking the corner shared by `a` and `b` into its canonical
/// triangle frame.
fn corner_shift(a: &LiftedArc, b: &LiftedArc, corner: Lift, ann: MarkedAnnulus) -> i64 {
    let v = a.shared_end(b).expect("corner");
    match (v, corner) {
        (Lift::Top(x), Lift::Top(y)) => (y - x) / ann.outer(),
        (Lift::Bottom(x), Lift::Bottom(y)) => (y - x) / ann.inner(),
        _ => unreachable!("shift preserves the boundary"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annulus::crossing_number;

    fn t0() -> GammaAlgebra {
        let ann = MarkedAnnulus::new(2, 1).unwrap();
        GammaAlgebra::new(
            ann,
            vec![
                Arc::bridging(0, 0, 0),
                Arc::bridging(1, 0, 0),
                Arc::bridging(1, 0, 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn t0_quiver_is_acyclic_three_arrows() {
        let g = t0();
        let q = g.quiver();
        assert_eq!(q.vertex_count(), 3);
        assert_eq!(q.arrows.len(), 3);
        assert!(q.relations.is_empty());
        // Acyclic: some vertex is a sink and some a source.
        assert!((0..3).any(|v| q.arrows.iter().all(|a| a.source != v)));
        assert!((0..3).any(|v| q.arrows.iter().all(|a| a.target != v)));
    }

    #[test]
    fn simple_word_for_single_crossing() {
        let g = t0();
        let w = g.string_word(Arc::bridging(0, 0, 1)).unwrap();
        assert!(w.letters.is_empty());
        assert_eq!(g.gamma()[w.start], Arc::bridging(1, 0, 0));
    }

    #[test]
    fn string_dims_are_crossing_counts() {
        let g = t0();
        let ann = g.annulus();
        for w in -3..=3 {
            for i in 0..2 {
                let arc = canonicalize(Arc::bridging(i, 0, w), ann).unwrap();
                if g.gamma().contains(&arc) {
                    continue;
                }
                let m = g.string_module(arc).unwrap();
                let expect: Vec<usize> = g
                    .gamma()
                    .iter()
                    .map(|c| crossing_number(arc, *c, ann).finite().unwrap() as usize)
                    .collect();
                assert_eq!(m.dims(), expect.as_slice(), "{arc}");
                assert!(m.satisfies(g.quiver()));
            }
        }
    }

    #[test]
    fn band_of_t0_has_length_three() {
        let g = t0();
        let b = g.band_word().unwrap();
        assert_eq!(b.len(), 3);
        let m = g.band_module(&crate::linalg::rational(2), 1).unwrap();
        assert_eq!(m.dims(), &[1, 1, 1]);
    }

    #[test]
    fn asymptotic_word_extrapolates() {
        let g = t0();
        for arc in crate::annulus::enumerate_arcs(g.annulus(), 0)
            .into_iter()
            .filter(Arc::is_asymptotic)
        {
            let w = g.string_word(arc).unwrap();
            assert_eq!(w.period.len(), 3, "{arc}");
            w.validate(g.quiver()).unwrap();
            let long = g.truncated_spiral_word(arc, 6).unwrap();
            let unrolled = w.truncate(3);
            assert_eq!(
                long.letters[..unrolled.letters.len()],
                unrolled.letters[..],
                "{arc}"
            );
        }
    }

    #[test]
    fn projective_and_injective_dimensions() {
        let g = t0();
        let alg = g.algebra();
        for v in 0..3 {
            let p = g.projective(v);
            assert_eq!(p.dim(), alg.paths_from(v).count());
            let i = g.injective(v);
            assert_eq!(i.dim(), alg.paths.iter().filter(|x| x.target == v).count());
            assert!(p.satisfies(g.quiver()) && i.satisfies(g.quiver()));
        }
    }
}
