use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;


use super::automorphism::GroupMap;
use super::element::{Elem, GroupElement};
use super::finite::{make_group, FiniteGroup, GroupDocument, GroupType};
use crate::error::{Error, Result};

/// A subgroup of a [`FiniteGroup`], with an optional catalog label such as
/// `"H_{1,3}"`.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<Elem>,
    mask: Vec<bool>,
    label: Option<String>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("parent", &self.parent.name())
            .field("label", &self.label)
            .field("order", &self.order())
            .finish()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && *self.parent == *other.parent
    }
}

impl Eq for Subgroup {}

/// Dihedral witnesses: `r` of order `|S|/2`, `s` of order 2 with `s r s⁻¹ = r⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DihedralWitness {
    pub rotation: Elem,
    pub reflection: Elem,
}

impl Subgroup {
    fn from_mask(parent: &Arc<FiniteGroup>, mask: Vec<bool>, label: Option<String>) -> Subgroup {
        let members = parent.iter().filter(|e| mask[e.idx()]).collect();
        Subgroup { parent: parent.clone(), members, mask, label }
    }

    /// The subgroup generated by `generators`.
    pub fn closure(parent: &Arc<FiniteGroup>, generators: &[Elem]) -> Subgroup {
        Subgroup::from_mask(parent, parent.closure_mask(generators), None)
    }

    /// Checks that `members` is a subgroup and wraps it.
    pub fn from_members(parent: &Arc<FiniteGroup>, members: &[Elem], label: Option<String>) -> Result<Subgroup> {
        let mut mask = vec![false; parent.order()];
        for &m in members {
            mask[m.idx()] = true;
        }
        let closed = mask[parent.identity().idx()]
            && members.iter().all(|&a| mask[parent.inv(a).idx()] && members.iter().all(|&b| mask[parent.mul(a, b).idx()]));
        if !closed {
            return Err(Error::Precondition("element set is not closed under the group law".into()));
        }
        Ok(Subgroup::from_mask(parent, mask, label))
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup::from_mask(parent, vec![true; parent.order()], Some("G".into()))
    }

    /// The distinguished index-2 subgroup `H ≅ D_n` of the extension types
    /// (the elements with trivial extension coordinate).
    pub fn distinguished(parent: &Arc<FiniteGroup>) -> Option<Subgroup> {
        match parent.kind() {
            GroupType::Type1 | GroupType::Type2 | GroupType::Type3 => {
                let mask = parent.elements().iter().map(|e| e.ext == 0).collect();
                Some(Subgroup::from_mask(parent, mask, Some("H".into())))
            }
            _ => None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Subgroup {
        self.label = Some(label.into());
        self
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.mask[e.idx()]
    }

    pub fn is_normal(&self) -> bool {
        self.parent
            .iter()
            .all(|g| self.members.iter().all(|&h| self.contains(self.parent.conjugate(h, g))))
    }

    /// Realizes the subgroup as a group in its own right, labelled by the
    /// parent's normal forms. Returns the group and the embedding
    /// (`embedding[i]` is the parent element of the subgroup's `Elem(i)`).
    pub fn to_group(&self) -> (Arc<FiniteGroup>, Vec<Elem>) {
        let parent = &self.parent;
        let name = match &self.label {
            Some(l) => format!("{l} < {}", parent.name()),
            None => format!("subgroup of order {} < {}", self.order(), parent.name()),
        };
        let labels: Vec<GroupElement> = self.members.iter().map(|&e| parent.element(e)).collect();
        let g = FiniteGroup::from_fn(
            GroupType::Explicit,
            parent.n(),
            name,
            labels,
            |a, b| parent.element(parent.mul(parent.find(&a).unwrap(), parent.find(&b).unwrap())),
            None,
        );
        // labels are sorted in parent order, so the embedding is `members`
        (Arc::new(g), self.members.clone())
    }

    /// Dihedral witnesses, searched smallest normal form first; `None` when
    /// the subgroup is not dihedral of order `|S|`.
    ///
    /// Order-4 subgroups count as `D_2` when they are Klein four groups.
    pub fn is_dihedral(&self) -> Option<DihedralWitness> {
        let size = self.order();
        if size < 4 || size % 2 != 0 {
            return None;
        }
        let g = &self.parent;
        let half = (size / 2) as u32;
        for &r in self.members.iter().filter(|&&r| g.elem_order(r) == half) {
            let r_inv = g.inv(r);
            for &s in self.members.iter().filter(|&&s| g.elem_order(s) == 2 && s != r) {
                if g.conjugate(r, s) == r_inv && g.closure_size(&[r, s]) == size {
                    return Some(DihedralWitness { rotation: r, reflection: s });
                }
            }
        }
        None
    }

    /// A fixed isomorphism from this subgroup onto the abstract `D_k`,
    /// `k = |S|/2`.
    ///
    /// `H_{1,3}` and `H_{1,5}` send their catalog generators, in order, to
    /// `x^(m+1), y, x^m`; every other dihedral subgroup sends its
    /// [`is_dihedral`](Self::is_dihedral) witnesses to `(x, y)`.
    pub fn dihedral_identification(&self) -> Result<GroupMap> {
        let witness = self
            .is_dihedral()
            .ok_or_else(|| Error::NotDihedral(self.label.clone().unwrap_or_else(|| format!("order {}", self.order()))))?;
        let k = (self.order() / 2) as u32;
        let target = make_group(GroupType::Dihedral, k)?;
        let (source, embedding) = self.to_group();
        let local = |e: Elem| Elem(embedding.binary_search(&e).expect("member") as u16);
        let xt = |l: u32| target.find(&GroupElement::new(0, l % k, 0)).expect("rotation");
        let yt = target.find(&GroupElement::new(1, 0, 0)).expect("reflection");

        let conventional = matches!(self.label.as_deref(), Some("H_{1,3}") | Some("H_{1,5}"))
            && self.parent.kind() == GroupType::Type1;
        let (gens, images) = if conventional {
            let n = self.parent.n();
            let m = n / 2;
            let gens: Vec<Elem> = catalog_generators(&self.parent, self.label.as_deref().unwrap())
                .expect("catalog label")
                .into_iter()
                .map(local)
                .collect();
            (gens, vec![xt(m + 1), yt, xt(m)])
        } else {
            (vec![local(witness.rotation), local(witness.reflection)], vec![xt(1), yt])
        };
        let map = GroupMap::extend(&source, &target, &gens, &images)
            .filter(|m| m.is_bijective())
            .ok_or_else(|| Error::NotDihedral(format!("generator assignment for {:?} is not an isomorphism", self.label)))?;
        Ok(map)
    }

    pub fn to_document(&self) -> GroupDocument {
        GroupDocument {
            kind: self.parent.kind(),
            n: self.parent.n(),
            label: self.label.clone(),
            elements: self.members.iter().map(|&e| self.parent.element(e).to_string()).collect(),
        }
    }
}

fn el(k: u8, l: u32, s: u8) -> GroupElement {
    GroupElement::new(k, l, s)
}

/// Named subgroups of the extension types with their generators.
fn catalog(parent: &FiniteGroup) -> Vec<(&'static str, Vec<GroupElement>)> {
    let n = parent.n();
    let x2 = 2 % n;
    let yx = el(1, 1 % n, 0);
    match parent.kind() {
        GroupType::Type1 => {
            let mut c = vec![
                ("H", vec![el(0, 1, 0), el(1, 0, 0)]),
                ("K", vec![el(0, 1, 0)]),
                ("H_{1,1}", vec![el(0, 1, 0), el(0, 0, 1)]),
                ("H_{1,2}", vec![el(0, 1, 0), el(1, 0, 1)]),
            ];
            if n % 2 == 0 {
                c.extend([
                    ("H_{1,3}", vec![el(0, x2, 0), el(1, 0, 0), el(0, 0, 1)]),
                    ("H_{1,4}", vec![el(0, x2, 0), el(1, 0, 0), el(0, 1, 1)]),
                    ("H_{1,5}", vec![el(0, x2, 0), yx, el(0, 0, 1)]),
                    ("H_{1,6}", vec![el(0, x2, 0), yx, el(0, 1, 1)]),
                ]);
            }
            c
        }
        GroupType::Type2 => vec![
            // x = z², so (0, 1, 0) is z² and (0, 0, 1) is z
            ("H", vec![el(0, 1, 0), el(1, 0, 0)]),
            ("H_{2,1}", vec![el(0, 0, 1)]),
            ("H_{2,2}", vec![el(0, 1, 0), el(1, 0, 1)]),
        ],
        GroupType::Type3 => vec![
            ("H", vec![el(0, 1, 0), el(1, 0, 0)]),
            ("K", vec![el(0, 1, 0)]),
            ("H_{3,1}", vec![el(0, 1, 0), el(0, 0, 1)]),
            ("H_{3,2}", vec![el(0, 1, 0), el(1, 0, 1)]),
            ("H_{3,3}", vec![el(0, x2, 0), el(1, 0, 0), el(0, 0, 1)]),
            ("H_{3,4}", vec![el(0, x2, 0), el(1, 0, 0), el(0, 1, 1)]),
            ("H_{3,5}", vec![el(0, x2, 0), yx, el(0, 0, 1)]),
            ("H_{3,6}", vec![el(0, x2, 0), yx, el(0, 1, 1)]),
        ],
        _ => Vec::new(),
    }
}

fn catalog_generators(parent: &FiniteGroup, label: &str) -> Option<Vec<Elem>> {
    catalog(parent)
        .into_iter()
        .find(|(l, _)| *l == label)
        .map(|(_, gens)| gens.iter().map(|g| parent.find(g).expect("catalog generator in group")).collect())
}

/// The named subgroup `label` (e.g. `"H_{1,4}"`), built as the closure of
/// its catalog generators.
pub fn named_subgroup(parent: &Arc<FiniteGroup>, label: &str) -> Option<Subgroup> {
    let gens = catalog_generators(parent, label)?;
    Some(Subgroup::closure(parent, &gens).with_label(label))
}

/// `subgroup_closure(G, generators)`.
pub fn subgroup_closure(parent: &Arc<FiniteGroup>, generators: &[Elem]) -> Subgroup {
    let s = Subgroup::closure(parent, generators);
    label_against_catalog(s)
}

fn label_against_catalog(s: Subgroup) -> Subgroup {
    for (label, _) in catalog(&s.parent) {
        if let Some(named) = named_subgroup(&s.parent, label) {
            if named.members == s.members {
                return s.with_label(label);
            }
        }
    }
    s
}

/// All index-2 subgroups, computed as kernels of the surjections onto `Z/2`
/// and labelled against the subgroup catalog. Labelled subgroups come first,
/// in catalog order.
pub fn index2_subgroups(parent: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let z2 = make_group(GroupType::Dihedral, 2)
        .map(|d2| Subgroup::closure(&d2, &[d2.find(&el(1, 0, 0)).unwrap()]).to_group().0)
        .expect("Z/2");
    let gens = parent.generators();
    let mut kernels: BTreeSet<Vec<Elem>> = BTreeSet::new();
    for bits in 1u32..(1 << gens.len()) {
        let images: Vec<Elem> = (0..gens.len()).map(|i| Elem(((bits >> i) & 1) as u16)).collect();
        if let Some(map) = GroupMap::extend(parent, &z2, gens, &images) {
            let kernel: Vec<Elem> = parent.iter().filter(|&e| map.apply(e) == z2.identity()).collect();
            kernels.insert(kernel);
        }
    }
    let order: Vec<&str> = catalog(parent).into_iter().map(|(l, _)| l).collect();
    let mut subgroups: Vec<Subgroup> = kernels
        .into_iter()
        .map(|k| label_against_catalog(Subgroup::from_members(parent, &k, None).expect("kernel is a subgroup")))
        .collect();
    subgroups.sort_by_key(|s| {
        let rank = s.label().and_then(|l| order.iter().position(|&o| o == l)).unwrap_or(usize::MAX);
        (rank, s.members.clone())
    });
    subgroups
}

/// Every subgroup of `parent`, grown by adjoining one element at a time.
pub fn all_subgroups(parent: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut found: BTreeSet<Vec<bool>> = BTreeSet::new();
    let trivial = parent.closure_mask(&[]);
    found.insert(trivial.clone());
    let mut frontier = vec![trivial];
    while let Some(mask) = frontier.pop() {
        for g in parent.iter().filter(|g| !mask[g.idx()]) {
            let mut gens: Vec<Elem> = parent.iter().filter(|e| mask[e.idx()]).collect();
            gens.push(g);
            let next = parent.closure_mask(&gens);
            if found.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    found.into_iter().map(|m| label_against_catalog(Subgroup::from_mask(parent, m, None))).collect()
}
