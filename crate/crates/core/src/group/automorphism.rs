use std::fmt;
use std::sync::Arc;

use super::element::Elem;
use super::finite::FiniteGroup;
use super::subgroup::Subgroup;
use crate::error::{Error, Result};

/// Default bound on `|G|` for automorphism enumeration.
pub const DEFAULT_ORDER_BOUND: usize = 200;

/// A homomorphism between two finite groups, stored as the image of every
/// element of the source.
#[derive(Clone)]
pub struct GroupMap {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    images: Vec<Elem>,
}

impl fmt::Debug for GroupMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .source
            .generators()
            .iter()
            .map(|&g| format!("{} -> {}", self.source.element(g), self.target.element(self.apply(g))))
            .collect();
        f.debug_struct("GroupMap").field("source", &self.source.name()).field("on_generators", &gens).finish()
    }
}

impl PartialEq for GroupMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images && *self.source == *other.source && *self.target == *other.target
    }
}

impl Eq for GroupMap {}

impl GroupMap {
    pub fn identity(group: &Arc<FiniteGroup>) -> GroupMap {
        GroupMap { source: group.clone(), target: group.clone(), images: group.iter().collect() }
    }

    /// Extends `gens[i] ↦ images[i]` to a homomorphism `source → target`,
    /// or returns `None` when the assignment does not define one.
    ///
    /// `gens` must generate `source`.
    pub fn extend(
        source: &Arc<FiniteGroup>,
        target: &Arc<FiniteGroup>,
        gens: &[Elem],
        images: &[Elem],
    ) -> Option<GroupMap> {
        assert_eq!(gens.len(), images.len());
        let mut map: Vec<Option<Elem>> = vec![None; source.order()];
        map[source.identity().idx()] = Some(target.identity());
        let mut queue = std::collections::VecDeque::from([source.identity()]);
        while let Some(u) = queue.pop_front() {
            let image_u = map[u.idx()].expect("queued elements are mapped");
            for (&g, &img) in gens.iter().zip(images) {
                let w = source.mul(u, g);
                let value = target.mul(image_u, img);
                match map[w.idx()] {
                    None => {
                        map[w.idx()] = Some(value);
                        queue.push_back(w);
                    }
                    Some(existing) if existing != value => return None,
                    Some(_) => {}
                }
            }
        }
        let images = map.into_iter().collect::<Option<Vec<_>>>()?;
        Some(GroupMap { source: source.clone(), target: target.clone(), images })
    }

    /// Extends images of `source.generators()`.
    pub fn from_generator_images(
        source: &Arc<FiniteGroup>,
        target: &Arc<FiniteGroup>,
        images: &[Elem],
    ) -> Option<GroupMap> {
        GroupMap::extend(source, target, source.generators(), images)
    }

    /// Builds a map from an explicit image table, checking the homomorphism
    /// property exhaustively.
    pub fn from_images(source: &Arc<FiniteGroup>, target: &Arc<FiniteGroup>, images: Vec<Elem>) -> Result<GroupMap> {
        if images.len() != source.order() {
            return Err(Error::Precondition("image table has the wrong length".into()));
        }
        let map = GroupMap { source: source.clone(), target: target.clone(), images };
        if !map.is_homomorphism() {
            return Err(Error::Precondition("map is not a homomorphism".into()));
        }
        Ok(map)
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, e: Elem) -> Elem {
        self.images[e.idx()]
    }

    pub fn is_homomorphism(&self) -> bool {
        self.source.iter().all(|a| {
            self.source
                .iter()
                .all(|b| self.apply(self.source.mul(a, b)) == self.target.mul(self.apply(a), self.apply(b)))
        })
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut seen = vec![false; self.target.order()];
        self.images.iter().all(|&e| !std::mem::replace(&mut seen[e.idx()], true))
    }

    pub fn is_automorphism(&self) -> bool {
        *self.source == *self.target && self.is_bijective() && self.is_homomorphism()
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &GroupMap) -> Result<GroupMap> {
        if *other.target != *self.source {
            return Err(Error::GroupMismatch {
                left: self.source.name().to_string(),
                right: other.target.name().to_string(),
            });
        }
        Ok(GroupMap {
            source: other.source.clone(),
            target: self.target.clone(),
            images: other.images.iter().map(|&e| self.apply(e)).collect(),
        })
    }

    pub fn inverse(&self) -> Option<GroupMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut images = vec![Elem(0); self.images.len()];
        for (i, &e) in self.images.iter().enumerate() {
            images[e.idx()] = Elem(i as u16);
        }
        Some(GroupMap { source: self.target.clone(), target: self.source.clone(), images })
    }

    /// Whether `φ(S) = S` as a set.
    pub fn preserves(&self, subgroup: &Subgroup) -> bool {
        subgroup.members().iter().all(|&e| subgroup.contains(self.apply(e)))
    }
}

/// All automorphisms of `group`, found by assigning order-compatible images
/// to the fixed generating tuple and keeping the assignments that extend to
/// bijective homomorphisms.
///
/// Refuses groups larger than `bound` instead of returning a partial list.
pub fn automorphisms(group: &Arc<FiniteGroup>, bound: usize) -> Result<Vec<GroupMap>> {
    if group.order() > bound {
        return Err(Error::OrderBound { order: group.order(), bound });
    }
    let gens = group.generators();
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| group.iter().filter(|&e| group.elem_order(e) == group.elem_order(g)).collect())
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![Elem(0); gens.len()];
    search(group, &candidates, 0, &mut choice, &mut out);
    out.sort_by(|a, b| a.images.cmp(&b.images));
    Ok(out)
}

fn search(group: &Arc<FiniteGroup>, candidates: &[Vec<Elem>], depth: usize, choice: &mut Vec<Elem>, out: &mut Vec<GroupMap>) {
    if depth == candidates.len() {
        if group.closure_size(choice) != group.order() {
            return;
        }
        if let Some(map) = GroupMap::extend(group, group, group.generators(), choice) {
            if map.is_bijective() {
                out.push(map);
            }
        }
        return;
    }
    for &c in &candidates[depth] {
        choice[depth] = c;
        search(group, candidates, depth + 1, choice, out);
    }
}

/// `Aut(G)_S`: the automorphisms leaving `subgroup` invariant.
pub fn automorphisms_fixing(group: &Arc<FiniteGroup>, subgroup: &Subgroup, bound: usize) -> Result<Vec<GroupMap>> {
    if **subgroup.parent() != **group {
        return Err(Error::GroupMismatch { left: group.name().into(), right: subgroup.parent().name().into() });
    }
    Ok(automorphisms(group, bound)?.into_iter().filter(|phi| phi.preserves(subgroup)).collect())
}

/// A subset of `maps` generating the same group under composition.
///
/// Orbit searches only need generators, which keeps the branching factor
/// small.
pub fn generating_subset(maps: &[GroupMap]) -> Vec<GroupMap> {
    let Some(first) = maps.first() else { return Vec::new() };
    let group = first.source().clone();
    let mut chosen: Vec<GroupMap> = Vec::new();
    let mut generated: std::collections::HashSet<Vec<Elem>> = [GroupMap::identity(&group).images].into();
    for phi in maps {
        if generated.contains(&phi.images) {
            continue;
        }
        chosen.push(phi.clone());
        // close under right multiplication by the chosen maps
        let mut stack: Vec<Vec<Elem>> = generated.iter().cloned().collect();
        while let Some(images) = stack.pop() {
            for psi in &chosen {
                let next: Vec<Elem> = images.iter().map(|&e| psi.apply(e)).collect();
                if generated.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
        if generated.len() == maps.len() {
            break;
        }
    }
    chosen
}
