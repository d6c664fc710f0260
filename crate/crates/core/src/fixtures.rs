//! Frozen example tuples.
//!
//! Both (4,3) examples share the triangulation
//! `γ1..γ7 = B(3,0,1), PO(0,2), B(2,0,0), B(2,1,0), B(2,2,0), B(2,0,1), B(0,0,0)`,
//! whose quiver has a single internal triangle `{γ2, γ3, γ7}`.

use crate::annulus::{Arc, Boundary};
use crate::cosilting::CosiltingTuple;

pub const FINITE_EXAMPLE: &str = include_str!("../fixtures/finite_example.json");
pub const ASYMPTOTIC_EXAMPLE: &str = include_str!("../fixtures/asymptotic_example.json");
pub const T0: &str = include_str!("../fixtures/t0.json");

fn load(s: &str) -> CosiltingTuple {
    CosiltingTuple::from_json_str(s).expect("fixture parses")
}

/// Finite case on (4,3): `C ∩ Γ = {γ3, γ7}` and five further arcs.
pub fn finite_example() -> CosiltingTuple {
    load(FINITE_EXAMPLE)
}

/// Asymptotic case on (4,3): `C ∩ Γ = {γ2}`, six further arcs, labels
/// `λ1, λ2` both Prüfer.
pub fn asymptotic_example() -> CosiltingTuple {
    load(ASYMPTOTIC_EXAMPLE)
}

/// `(Γ, ∅, ∅, no G)` for `Γ = {B(0,0,0), B(1,0,0), B(1,0,1)}` on (2,1).
pub fn t0() -> CosiltingTuple {
    load(T0)
}

/// The arcs `α1..α6` of [`asymptotic_example`] outside `Γ`, in sorted order.
pub fn asymptotic_alphas() -> Vec<Arc> {
    let t = asymptotic_example();
    t.c.iter()
        .filter(|a| t.gamma_index(a).is_none())
        .copied()
        .collect()
}

/// `α5` of the asymptotic example: the arc mutated in the worked example.
pub fn asymptotic_alpha5() -> Arc {
    Arc::peripheral(Boundary::Outer, 0, 3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_match_their_descriptions() {
        let f = finite_example();
        let in_gamma: Vec<usize> = f.c.iter().filter_map(|a| f.gamma_index(a)).collect();
        assert_eq!(in_gamma.len(), 2);
        assert!(in_gamma.contains(&3) && in_gamma.contains(&7));

        let a = asymptotic_example();
        let in_gamma: Vec<usize> = a.c.iter().filter_map(|x| a.gamma_index(x)).collect();
        assert_eq!(in_gamma, vec![2]);
        assert_eq!(asymptotic_alphas().len(), 6);
        assert!(a.c.contains(&asymptotic_alpha5()));
        assert_eq!(t0().gamma.len(), 3);
    }
}
