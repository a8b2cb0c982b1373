use serde::{Deserialize, Serialize};

use super::HurwitzVector;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, GroupMap, GroupType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Forward,
    Inverse,
}

/// One braid generator `σ_i^{±1}`; `index` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidMove {
    pub index: usize,
    pub direction: Direction,
}

/// `σ_i: (a, b) ↦ (a b a⁻¹, a)` and `σ_i⁻¹: (a, b) ↦ (b, b⁻¹ a b)` on
/// positions `pos`, `pos + 1` (0-based).
pub(crate) fn braid_slice(group: &FiniteGroup, entries: &mut [Elem], pos: usize, direction: Direction) {
    let (a, b) = (entries[pos], entries[pos + 1]);
    match direction {
        Direction::Forward => {
            entries[pos] = group.conjugate(b, a);
            entries[pos + 1] = a;
        }
        Direction::Inverse => {
            entries[pos] = b;
            entries[pos + 1] = group.conjugate(a, group.inv(b));
        }
    }
}

/// Applies `σ_i^{±1}` to a genus-0 vector.
pub fn braid_move(v: &HurwitzVector, i: usize, direction: Direction) -> Result<HurwitzVector> {
    if v.genus() > 0 {
        return Err(Error::Precondition("braid moves are defined here for genus-0 vectors only".into()));
    }
    let r = v.len();
    if i == 0 || i >= r {
        return Err(Error::Index(format!("braid index {i} outside 1..={}", r.saturating_sub(1))));
    }
    let mut entries = v.branches().to_vec();
    braid_slice(v.group(), &mut entries, i - 1, direction);
    Ok(HurwitzVector::unchecked(v.group(), Vec::new(), entries))
}

pub fn apply_moves(v: &HurwitzVector, moves: &[BraidMove]) -> Result<HurwitzVector> {
    moves.iter().try_fold(v.clone(), |w, m| braid_move(&w, m.index, m.direction))
}

/// Componentwise action of an automorphism of the vector's group.
pub fn apply_aut(v: &HurwitzVector, phi: &GroupMap) -> Result<HurwitzVector> {
    if **phi.target() != **v.group() {
        return Err(Error::GroupMismatch { left: phi.target().name().to_string(), right: v.group().name().to_string() });
    }
    v.map(phi)
}

/// Braids three consecutive reflections at positions `i, i+1, i+2` (1-based)
/// until two adjacent ones coincide, using only `σ_i^{-1}` and `σ_{i+1}`.
///
/// Works on the rotation exponents `a, b, c` of `y x^a, y x^b, y x^c`:
/// `σ_{i+1}` turns `(b, c)` into `(2b − c, b)`, lowering `b − a` by `c − b`,
/// and `σ_i⁻¹` turns `(a, b)` into `(b, 2b − a)`, lowering `c − b` by `b − a`.
/// This is the subtractive Euclidean algorithm on the two differences mod n.
pub fn normalize_triple(v: &HurwitzVector, i: usize) -> Result<(HurwitzVector, Vec<BraidMove>)> {
    let group = v.group();
    if !matches!(group.kind(), GroupType::Type1 | GroupType::Dihedral) {
        return Err(Error::Precondition(format!("triple normalisation needs D_n or D_n x Z/2, got {}", group.name())));
    }
    if v.genus() > 0 {
        return Err(Error::Precondition("triple normalisation needs a genus-0 vector".into()));
    }
    if i == 0 || i + 2 > v.len() {
        return Err(Error::Index(format!("triple at {i} does not fit a vector of length {}", v.len())));
    }
    let n = group.n() as i64;
    let rot = |w: &HurwitzVector, p: usize| group.element(w.branches()[p]).rotation as i64;
    let triple = &v.branches()[i - 1..i + 2];
    if !triple.iter().all(|&e| group.element(e).is_reflection()) {
        return Err(Error::Precondition("triple normalisation needs three reflections".into()));
    }
    let mut w = v.clone();
    let mut moves = Vec::new();
    loop {
        let d1 = (rot(&w, i) - rot(&w, i - 1)).rem_euclid(n);
        let d2 = (rot(&w, i + 1) - rot(&w, i)).rem_euclid(n);
        if d1 == 0 || d2 == 0 {
            break;
        }
        let m = if d1 >= d2 {
            BraidMove { index: i + 1, direction: Direction::Forward }
        } else {
            BraidMove { index: i, direction: Direction::Inverse }
        };
        w = braid_move(&w, m.index, m.direction)?;
        moves.push(m);
    }
    Ok((w, moves))
}

#[cfg(test)]
mod tests {
    use std::collections::{HashSet, VecDeque};
    use std::sync::Arc;

    use super::*;
    use crate::group::{make_group, GroupElement};

    fn reflections(g: &Arc<FiniteGroup>, rots: &[(u32, u8)]) -> HurwitzVector {
        let b: Vec<GroupElement> = rots.iter().map(|&(l, s)| GroupElement::new(1, l, s)).collect();
        HurwitzVector::from_elements(g, &[], &b).unwrap()
    }

    #[test]
    fn forward_then_inverse_is_identity() {
        let g = make_group(GroupType::Type1, 5).unwrap();
        let v = reflections(&g, &[(0, 1), (2, 0), (3, 1), (1, 0)]);
        for i in 1..v.len() {
            let w = braid_move(&v, i, Direction::Forward).unwrap();
            assert_eq!(braid_move(&w, i, Direction::Inverse).unwrap(), v);
        }
    }

    #[test]
    fn braid_preserves_product() {
        let g = make_group(GroupType::Type1, 5).unwrap();
        let v = reflections(&g, &[(0, 1), (2, 0), (3, 1), (1, 0)]);
        let p = g.product(v.branches().iter().copied());
        let w = braid_move(&v, 2, Direction::Forward).unwrap();
        assert_eq!(g.product(w.branches().iter().copied()), p);
    }

    #[test]
    fn braid_errors() {
        let g = make_group(GroupType::Type1, 3).unwrap();
        let v = reflections(&g, &[(0, 1), (0, 1)]);
        assert!(matches!(braid_move(&v, 0, Direction::Forward), Err(Error::Index(_))));
        assert!(matches!(braid_move(&v, 2, Direction::Forward), Err(Error::Index(_))));
        let x = g.elem(&GroupElement::new(0, 1, 0)).unwrap();
        let y = g.elem(&GroupElement::new(1, 0, 0)).unwrap();
        let h = HurwitzVector::new(&g, vec![(x, y)], vec![x]).unwrap();
        assert!(matches!(braid_move(&h, 1, Direction::Forward), Err(Error::Precondition(_))));
    }

    /// Everything reachable from `v` by `σ_i^{±1}, σ_{i+1}^{±1}`.
    fn local_orbit(v: &HurwitzVector, i: usize) -> HashSet<Vec<Elem>> {
        let g = v.group();
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([v.branches().to_vec()]);
        seen.insert(v.branches().to_vec());
        while let Some(w) = queue.pop_front() {
            for pos in [i - 1, i] {
                for d in [Direction::Forward, Direction::Inverse] {
                    let mut next = w.clone();
                    braid_slice(g, &mut next, pos, d);
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        seen
    }

    #[test]
    fn normalize_triple_against_local_orbit() {
        for n in [3u32, 4, 5, 6, 8, 9] {
            let g = make_group(GroupType::Type1, n).unwrap();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let v = reflections(&g, &[(a, 1), (b, 0), (c, 1), (0, 0)]);
                        let (w, moves) = normalize_triple(&v, 1).unwrap();
                        assert!(moves.iter().all(|m| m.index == 1 || m.index == 2));
                        assert_eq!(apply_moves(&v, &moves).unwrap(), w);
                        assert_eq!(w.branches()[3], v.branches()[3]);
                        let adj = |p: usize| g.element(w.branches()[p]).rotation == g.element(w.branches()[p + 1]).rotation;
                        assert!(adj(0) || adj(1), "n={n} ({a},{b},{c}) -> {w}");
                        assert!(local_orbit(&v, 1).contains(w.branches()));
                    }
                }
            }
        }
    }

    #[test]
    fn normalize_triple_in_bare_dihedral() {
        let g = make_group(GroupType::Dihedral, 7).unwrap();
        let b: Vec<GroupElement> = [1u32, 4, 6].iter().map(|&l| GroupElement::new(1, l, 0)).collect();
        let v = HurwitzVector::from_elements(&g, &[], &b).unwrap();
        let (w, _) = normalize_triple(&v, 1).unwrap();
        let r: Vec<u32> = w.elements().iter().map(|e| e.rotation).collect();
        assert!(r[0] == r[1] || r[1] == r[2]);
    }

    #[test]
    fn normalize_triple_rejects_other_groups() {
        let g = make_group(GroupType::Type2, 4).unwrap();
        let y = g.elem(&GroupElement::new(1, 0, 0)).unwrap();
        let v = HurwitzVector::unchecked(&g, vec![], vec![y, y, y]);
        assert!(normalize_triple(&v, 1).is_err());
    }
}
