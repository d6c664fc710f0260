//! String and band words read off crossing sequences.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::quiver::QuiverWithRelations;
use crate::error::{Error, Result};

/// A letter of a walk: an arrow traversed forwards or backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

impl Letter {
    /// Vertex the walk reaches after this letter, starting from `from`.
    fn step(self, from: usize, quiver: &QuiverWithRelations) -> Option<usize> {
        let a = quiver.arrows.get(self.arrow)?;
        match self.inverse {
            false if a.source == from => Some(a.target),
            true if a.target == from => Some(a.source),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "a{}^-1", self.arrow + 1)
        } else {
            write!(f, "a{}", self.arrow + 1)
        }
    }
}

fn check_pair(x: Letter, y: Letter, quiver: &QuiverWithRelations) -> Result<()> {
    if x.arrow == y.arrow && x.inverse != y.inverse {
        return Err(Error::IllegalWord(format!("{x} {y} backtracks")));
    }
    let zero = match (x.inverse, y.inverse) {
        (false, false) => quiver.is_relation(x.arrow, y.arrow),
        (true, true) => quiver.is_relation(y.arrow, x.arrow),
        _ => false,
    };
    if zero {
        return Err(Error::IllegalWord(format!("{x} {y} contains a relation")));
    }
    Ok(())
}

/// Walks `letters` from `start`, returning the visited vertices.
fn walk(start: usize, letters: &[Letter], quiver: &QuiverWithRelations) -> Result<Vec<usize>> {
    if start >= quiver.vertex_count() {
        return Err(Error::IllegalWord(format!("no vertex {}", start + 1)));
    }
    let mut out = vec![start];
    for (k, &l) in letters.iter().enumerate() {
        let here = out[k];
        let next = l
            .step(here, quiver)
            .ok_or_else(|| Error::IllegalWord(format!("{l} does not leave vertex {}", here + 1)))?;
        out.push(next);
    }
    Ok(out)
}

/// A string word. Finite words have an empty period; words of asymptotic
/// arcs continue with `period` repeated forever after `letters`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StringWord {
    pub start: usize,
    pub letters: Vec<Letter>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub period: Vec<Letter>,
}

impl StringWord {
    pub fn simple(v: usize) -> Self {
        Self {
            start: v,
            letters: Vec::new(),
            period: Vec::new(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// The finite word obtained by unrolling the period `turns` times.
    pub fn truncate(&self, turns: usize) -> StringWord {
        let mut letters = self.letters.clone();
        for _ in 0..turns {
            letters.extend_from_slice(&self.period);
        }
        StringWord {
            start: self.start,
            letters,
            period: Vec::new(),
        }
    }

    /// Vertices of the finite part of the walk.
    pub fn vertices(&self, quiver: &QuiverWithRelations) -> Result<Vec<usize>> {
        walk(self.start, &self.letters, quiver)
    }

    /// Checks the walk is well formed, reduced and avoids relations.
    pub fn validate(&self, quiver: &QuiverWithRelations) -> Result<()> {
        let unrolled = self.truncate(if self.is_finite() { 0 } else { 2 });
        let verts = unrolled.vertices(quiver)?;
        if !self.is_finite() {
            let turn_start = verts[self.letters.len()];
            let turn_end = verts[self.letters.len() + self.period.len()];
            if turn_start != turn_end {
                return Err(Error::IllegalWord("period is not a closed walk".into()));
            }
        }
        for w in unrolled.letters.windows(2) {
            check_pair(w[0], w[1], quiver)?;
        }
        Ok(())
    }
}

impl fmt::Display for StringWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.start + 1)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        if !self.is_finite() {
            write!(f, " (")?;
            for (i, l) in self.period.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{l}")?;
            }
            write!(f, ")^inf")?;
        }
        Ok(())
    }
}

/// A cyclic word: letter `k` leads from vertex `k` to vertex `k + 1`, the
/// last letter closing the cycle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BandWord {
    pub start: usize,
    pub letters: Vec<Letter>,
}

impl BandWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Rotates to the lexicographically least letter sequence.
    pub fn canonical(&self, quiver: &QuiverWithRelations) -> Result<BandWord> {
        let verts = walk(self.start, &self.letters, quiver)?;
        let n = self.letters.len();
        let best = (0..n)
            .min_by_key(|&r| {
                let mut rot = self.letters[r..].to_vec();
                rot.extend_from_slice(&self.letters[..r]);
                rot
            })
            .unwrap_or(0);
        let mut letters = self.letters[best..].to_vec();
        letters.extend_from_slice(&self.letters[..best]);
        Ok(BandWord {
            start: verts[best],
            letters,
        })
    }

    pub fn vertices(&self, quiver: &QuiverWithRelations) -> Result<Vec<usize>> {
        let mut v = walk(self.start, &self.letters, quiver)?;
        v.pop();
        Ok(v)
    }

    pub fn validate(&self, quiver: &QuiverWithRelations) -> Result<()> {
        let verts = walk(self.start, &self.letters, quiver)?;
        if verts.last() != Some(&self.start) {
            return Err(Error::IllegalWord("band is not a closed walk".into()));
        }
        let n = self.letters.len();
        if n == 0 {
            return Err(Error::IllegalWord("empty band".into()));
        }
        if self.letters.iter().all(|l| l.inverse) || self.letters.iter().all(|l| !l.inverse) {
            return Err(Error::IllegalWord(
                "band needs both direct and inverse letters".into(),
            ));
        }
        for k in 0..n {
            check_pair(self.letters[k], self.letters[(k + 1) % n], quiver)?;
        }
        let primitive = (1..n)
            .filter(|d| n % d == 0)
            .all(|d| (0..n).any(|k| self.letters[k] != self.letters[(k + d) % n]));
        if !primitive {
            return Err(Error::IllegalWord("band is a proper power".into()));
        }
        Ok(())
    }
}

impl fmt::Display for BandWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}
