use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use super::braid::{braid_slice, Direction};
use super::HurwitzVector;
use crate::error::{Error, Result};
use crate::group::{generating_subset, Elem, FiniteGroup, GroupMap};

pub const DEFAULT_NODE_CAP: usize = 10_000_000;

/// Orbit members are stored packed, one byte per entry.
const MAX_LEN: usize = 16;

fn pack(entries: &[Elem]) -> u128 {
    entries.iter().rev().fold(0u128, |acc, e| (acc << 8) | e.0 as u128)
}

fn unpack(key: u128, len: usize, out: &mut [Elem]) {
    for (i, slot) in out.iter_mut().enumerate().take(len) {
        *slot = Elem(((key >> (8 * i)) & 0xff) as u16);
    }
}

/// A finished (or truncated) breadth-first exploration of a
/// `B_r × Aut` orbit of genus-0 vectors.
#[derive(Clone, Debug)]
pub struct OrbitSearch {
    group: Arc<FiniteGroup>,
    len: usize,
    members: HashSet<u128>,
    exhausted: bool,
}

impl OrbitSearch {
    /// Explores the orbit of `start` under all `σ_i^{±1}` and the maps in
    /// `auts`. Stops after `node_cap` vectors; `exhausted()` then reports
    /// `false`.
    pub fn run(start: &HurwitzVector, auts: &[GroupMap], node_cap: usize) -> Result<OrbitSearch> {
        Self::run_until(start, auts, node_cap, |_| false)
    }

    fn run_until(
        start: &HurwitzVector,
        auts: &[GroupMap],
        node_cap: usize,
        mut stop: impl FnMut(&[Elem]) -> bool,
    ) -> Result<OrbitSearch> {
        if start.genus() > 0 {
            return Err(Error::Precondition("orbit search needs a genus-0 vector".into()));
        }
        let group = start.group().clone();
        if group.order() > 256 || start.len() > MAX_LEN {
            return Err(Error::Precondition(format!(
                "orbit search supports groups of order at most 256 and at most {MAX_LEN} entries"
            )));
        }
        for phi in auts {
            if **phi.source() != *group || **phi.target() != *group {
                return Err(Error::GroupMismatch { left: phi.source().name().to_string(), right: group.name().to_string() });
            }
        }
        let auts = generating_subset(auts);
        let len = start.len();
        let first = pack(start.branches());
        let mut members = HashSet::from([first]);
        let mut queue = VecDeque::from([first]);
        let mut exhausted = true;
        let mut v = [Elem(0); MAX_LEN];
        let mut w = [Elem(0); MAX_LEN];
        'search: while let Some(key) = queue.pop_front() {
            unpack(key, len, &mut v);
            if stop(&v[..len]) {
                exhausted = false;
                break;
            }
            let braids = 2 * len.saturating_sub(1);
            for m in 0..braids + auts.len() {
                w[..len].copy_from_slice(&v[..len]);
                if m < braids {
                    let dir = if m % 2 == 0 { Direction::Forward } else { Direction::Inverse };
                    braid_slice(&group, &mut w[..len], m / 2, dir);
                } else {
                    let phi = &auts[m - braids];
                    for e in &mut w[..len] {
                        *e = phi.apply(*e);
                    }
                }
                let next = pack(&w[..len]);
                if members.contains(&next) {
                    continue;
                }
                if members.len() >= node_cap {
                    exhausted = false;
                    break 'search;
                }
                members.insert(next);
                queue.push_back(next);
            }
        }
        Ok(OrbitSearch { group, len, members, exhausted })
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted
    }

    pub fn contains(&self, v: &HurwitzVector) -> bool {
        v.genus() == 0 && *self.group == **v.group() && self.contains_entries(v.branches())
    }

    pub fn contains_entries(&self, entries: &[Elem]) -> bool {
        entries.len() == self.len && self.members.contains(&pack(entries))
    }

    pub fn members(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        self.members.iter().map(|&key| {
            let mut out = vec![Elem(0); self.len];
            unpack(key, self.len, &mut out);
            out
        })
    }

    /// Lexicographically least member in the element order.
    pub fn representative(&self) -> HurwitzVector {
        // with entry 0 in the low byte, lexicographic order is the order of
        // the byte-reversed key
        let min = self.members.iter().min_by_key(|&&k| k.swap_bytes()).expect("orbit contains its start");
        let mut out = vec![Elem(0); self.len];
        unpack(*min, self.len, &mut out);
        HurwitzVector::unchecked(&self.group, Vec::new(), out)
    }

    pub fn summary(&self, auts: usize) -> OrbitClass {
        let rep = self.representative();
        OrbitClass {
            braid_generators: rep.len().saturating_sub(1),
            automorphisms: auts,
            representative: rep,
            size: self.size(),
            exhausted: self.exhausted,
        }
    }
}

/// Result of an orbit computation.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitClass {
    #[serde(serialize_with = "serialize_vector")]
    pub representative: HurwitzVector,
    pub size: usize,
    pub braid_generators: usize,
    pub automorphisms: usize,
    pub exhausted: bool,
}

fn serialize_vector<S: serde::Serializer>(v: &HurwitzVector, s: S) -> std::result::Result<S::Ok, S::Error> {
    v.to_document().serialize(s)
}

pub fn orbit(v: &HurwitzVector, auts: &[GroupMap], node_cap: usize) -> Result<OrbitClass> {
    Ok(OrbitSearch::run(v, auts, node_cap)?.summary(auts.len()))
}

/// Whether `w` lies in the orbit of `v`. Returns `None` if the cap was hit
/// before either finding `w` or finishing the orbit.
pub fn same_orbit(v: &HurwitzVector, w: &HurwitzVector, auts: &[GroupMap], node_cap: usize) -> Result<Option<bool>> {
    if **v.group() != **w.group() {
        return Err(Error::GroupMismatch { left: v.group().name().to_string(), right: w.group().name().to_string() });
    }
    if v.genus() != 0 || w.genus() != 0 {
        return Err(Error::Precondition("orbit search needs genus-0 vectors".into()));
    }
    if v.len() != w.len() || v.signature() != w.signature() {
        return Ok(Some(false));
    }
    let target = w.branches();
    let mut found = false;
    let search = OrbitSearch::run_until(v, auts, node_cap, |e| {
        found = e == target;
        found
    })?;
    if found || search.contains(w) {
        Ok(Some(true))
    } else if search.exhausted() {
        Ok(Some(false))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{automorphisms, make_group, GroupElement, GroupType, DEFAULT_ORDER_BOUND};

    fn el(k: u8, l: u32, s: u8) -> GroupElement {
        GroupElement::new(k, l, s)
    }

    #[test]
    fn orbit_of_pair_in_klein() {
        // (a, a) with a of order 2: braids only swap; automorphisms move a
        // to the other two involutions of Z/2 x Z/2.
        let g = make_group(GroupType::Dihedral, 2).unwrap();
        let y = g.elem(&el(1, 0, 0)).unwrap();
        let v = HurwitzVector::genus0(&g, vec![y, y]).unwrap();
        assert_eq!(orbit(&v, &[], 100).unwrap().size, 1);
        let auts = automorphisms(&g, DEFAULT_ORDER_BOUND).unwrap();
        let o = orbit(&v, &auts, 100).unwrap();
        assert_eq!(o.size, 3);
        assert!(o.exhausted);
    }

    #[test]
    fn orbit_invariants() {
        let g = make_group(GroupType::Type1, 3).unwrap();
        let b = [el(1, 0, 1), el(1, 0, 1), el(1, 1, 1), el(1, 1, 1), el(0, 0, 1), el(0, 0, 1)];
        let v = HurwitzVector::from_elements(&g, &[], &b).unwrap();
        let auts = automorphisms(&g, DEFAULT_ORDER_BOUND).unwrap();
        let search = OrbitSearch::run(&v, &auts, DEFAULT_NODE_CAP).unwrap();
        assert!(search.exhausted());
        for m in search.members() {
            let w = HurwitzVector::unchecked(&g, vec![], m);
            assert!(w.product_one() && w.generates());
            assert_eq!(w.signature(), v.signature());
        }
        let rep = search.representative();
        assert!(search.contains(&rep));
        let again = orbit(&rep, &auts, DEFAULT_NODE_CAP).unwrap();
        assert_eq!(again.size, search.size());
        assert_eq!(again.representative, rep);
    }

    #[test]
    fn node_cap_truncates() {
        let g = make_group(GroupType::Type1, 5).unwrap();
        let b = [el(1, 0, 1), el(1, 0, 1), el(1, 1, 1), el(1, 1, 1), el(0, 0, 1), el(0, 0, 1)];
        let v = HurwitzVector::from_elements(&g, &[], &b).unwrap();
        let o = orbit(&v, &[], 10).unwrap();
        assert!(!o.exhausted);
        assert!(o.size <= 10);
    }

    #[test]
    fn same_orbit_detects_moves() {
        let g = make_group(GroupType::Type1, 4).unwrap();
        let b = [el(1, 0, 1), el(1, 0, 1), el(1, 1, 1), el(1, 1, 1), el(0, 0, 1), el(0, 0, 1)];
        let v = HurwitzVector::from_elements(&g, &[], &b).unwrap();
        let w = super::super::braid_move(&v, 2, Direction::Forward).unwrap();
        assert_eq!(same_orbit(&v, &w, &[], DEFAULT_NODE_CAP).unwrap(), Some(true));
        let other = [el(1, 0, 1), el(1, 0, 1), el(1, 2, 1), el(1, 2, 1), el(0, 0, 1), el(0, 0, 1)];
        let u = HurwitzVector::from_elements(&g, &[], &other).unwrap();
        // u does not generate, so it cannot share an orbit with v
        assert!(!u.generates());
        assert_eq!(same_orbit(&v, &u, &[], DEFAULT_NODE_CAP).unwrap(), Some(false));
    }
}
