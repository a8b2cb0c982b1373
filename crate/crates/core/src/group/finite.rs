use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::element::{dihedral_mul, Elem, GroupElement};
use crate::error::{Error, Result};

/// Which family a [`FiniteGroup`] belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GroupType {
    /// `D_n × Z/2`.
    Type1,
    /// `D_2n = <z, y>` with distinguished subgroup `<z², y>`; requires `n` even.
    Type2,
    /// `D_n ⋊ <β₂>` with `β₂ y β₂⁻¹ = y x²`, `β₂ x β₂⁻¹ = x^(2h-1)`; requires `n = 4h`, `h` odd.
    Type3,
    /// The bare dihedral group `D_n` of order `2n`.
    #[serde(rename = "Dn")]
    Dihedral,
    /// A group given by an explicit multiplication table.
    #[serde(rename = "ExplicitTable")]
    Explicit,
}

impl GroupType {
    pub fn from_number(t: u8) -> Option<GroupType> {
        match t {
            1 => Some(GroupType::Type1),
            2 => Some(GroupType::Type2),
            3 => Some(GroupType::Type3),
            _ => None,
        }
    }

    pub fn number(self) -> Option<u8> {
        match self {
            GroupType::Type1 => Some(1),
            GroupType::Type2 => Some(2),
            GroupType::Type3 => Some(3),
            _ => None,
        }
    }

    /// Whether `make_group(self, n)` accepts `n`.
    pub fn admits(self, n: u32) -> bool {
        check_parameters(self, n).is_ok()
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupType::Type1 => "Type1",
            GroupType::Type2 => "Type2",
            GroupType::Type3 => "Type3",
            GroupType::Dihedral => "Dn",
            GroupType::Explicit => "ExplicitTable",
        };
        f.write_str(s)
    }
}

/// A finite group with a precomputed Cayley table.
///
/// Elements are stored sorted by their normal form, so `Elem(i) < Elem(j)`
/// iff the corresponding normal forms compare the same way. All data is
/// immutable after construction.
pub struct FiniteGroup {
    kind: GroupType,
    n: u32,
    name: String,
    elements: Vec<GroupElement>,
    lookup: HashMap<GroupElement, Elem>,
    table: Vec<Elem>,
    inverses: Vec<Elem>,
    orders: Vec<u32>,
    identity: Elem,
    generators: Vec<Elem>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order())
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.n == other.n && self.name == other.name && self.elements == other.elements
    }
}

impl Eq for FiniteGroup {}

fn check_parameters(kind: GroupType, n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::GroupParameters(format!("n = {n} violates n >= 2")));
    }
    match kind {
        GroupType::Type2 if n % 2 != 0 => Err(Error::GroupParameters(format!(
            "group type 2 requires n = 2d (n even), got n = {n}"
        ))),
        GroupType::Type3 if n % 4 != 0 || (n / 4) % 2 != 1 => Err(Error::GroupParameters(format!(
            "group type 3 requires n = 4h with h odd, got n = {n}"
        ))),
        GroupType::Explicit => Err(Error::GroupParameters(
            "explicit tables are built with FiniteGroup::from_table".into(),
        )),
        _ => Ok(()),
    }
}

/// Builds one of the structured groups.
///
/// ```
/// use dihedral_loci::group::{make_group, GroupType};
/// let g = make_group(GroupType::Type1, 3).unwrap();
/// assert_eq!(g.order(), 12);
/// assert!(make_group(GroupType::Type2, 3).is_err());
/// ```
pub fn make_group(kind: GroupType, n: u32) -> Result<Arc<FiniteGroup>> {
    check_parameters(kind, n)?;
    let dn = |ext_values: u8| -> Vec<GroupElement> {
        let mut v = Vec::new();
        for k in 0..2u8 {
            for l in 0..n {
                for s in 0..ext_values {
                    v.push(GroupElement::new(k, l, s));
                }
            }
        }
        v
    };
    let g = match kind {
        GroupType::Type1 => FiniteGroup::from_fn(
            kind,
            n,
            format!("D_{n} x Z/2"),
            dn(2),
            |a, b| {
                let (k, l) = dihedral_mul(n, (a.reflection, a.rotation), (b.reflection, b.rotation));
                GroupElement::new(k, l, a.ext ^ b.ext)
            },
            Some(vec![GroupElement::new(0, 1, 0), GroupElement::new(1, 0, 0), GroupElement::new(0, 0, 1)]),
        ),
        GroupType::Dihedral => FiniteGroup::from_fn(
            kind,
            n,
            format!("D_{n}"),
            dn(1),
            |a, b| {
                let (k, l) = dihedral_mul(n, (a.reflection, a.rotation), (b.reflection, b.rotation));
                GroupElement::new(k, l, 0)
            },
            Some(vec![GroupElement::new(0, 1, 0), GroupElement::new(1, 0, 0)]),
        ),
        GroupType::Type2 => {
            let two_n = 2 * n;
            FiniteGroup::from_fn(
                kind,
                n,
                format!("D_{two_n} (type 2, n = {n})"),
                dn(2),
                move |a, b| {
                    let ja = 2 * a.rotation + a.ext as u32;
                    let jb = 2 * b.rotation + b.ext as u32;
                    let (k, j) = dihedral_mul(two_n, (a.reflection, ja), (b.reflection, jb));
                    GroupElement::new(k, j / 2, (j % 2) as u8)
                },
                // z, y
                Some(vec![GroupElement::new(0, 0, 1), GroupElement::new(1, 0, 0)]),
            )
        }
        GroupType::Type3 => {
            let h = n / 4;
            let twist = 2 * h - 1;
            // conjugation by β₂ on D_n
            let phi = move |(k, l): (u8, u32)| -> (u8, u32) {
                let rot = (twist as u64 * l as u64 % n as u64) as u32;
                if k == 0 {
                    (0, rot)
                } else {
                    (1, (2 + rot) % n)
                }
            };
            FiniteGroup::from_fn(
                kind,
                n,
                format!("D_{n} x| Z/2 (type 3, h = {h})"),
                dn(2),
                move |a, b| {
                    let mut right = (b.reflection, b.rotation);
                    if a.ext == 1 {
                        right = phi(right);
                    }
                    let (k, l) = dihedral_mul(n, (a.reflection, a.rotation), right);
                    GroupElement::new(k, l, a.ext ^ b.ext)
                },
                Some(vec![GroupElement::new(0, 1, 0), GroupElement::new(1, 0, 0), GroupElement::new(0, 0, 1)]),
            )
        }
        GroupType::Explicit => unreachable!("rejected by check_parameters"),
    };
    Ok(Arc::new(g))
}

impl FiniteGroup {
    /// Builds a group from its element labels and a closed multiplication
    /// rule. The caller guarantees closure and the group axioms.
    pub(crate) fn from_fn(
        kind: GroupType,
        n: u32,
        name: String,
        mut elements: Vec<GroupElement>,
        mul: impl Fn(GroupElement, GroupElement) -> GroupElement,
        generators: Option<Vec<GroupElement>>,
    ) -> FiniteGroup {
        elements.sort();
        elements.dedup();
        assert!(elements.len() <= u16::MAX as usize);
        let lookup: HashMap<GroupElement, Elem> =
            elements.iter().enumerate().map(|(i, &e)| (e, Elem(i as u16))).collect();
        let size = elements.len();
        let mut table = Vec::with_capacity(size * size);
        for &a in &elements {
            for &b in &elements {
                let c = mul(a, b);
                table.push(*lookup.get(&c).unwrap_or_else(|| panic!("{name}: product {a} * {b} = {c} not closed")));
            }
        }
        let generators = generators.map(|gens| gens.iter().map(|g| lookup[g]).collect());
        FiniteGroup::assemble(kind, n, name, elements, lookup, table, generators)
    }

    /// Builds an `ExplicitTable` group from labels and a table of indices
    /// into `labels` (`table[i][j]` is the index of `labels[i] * labels[j]`).
    ///
    /// The group axioms are verified exhaustively.
    pub fn from_table(name: impl Into<String>, n: u32, labels: Vec<GroupElement>, table: &[Vec<usize>]) -> Result<FiniteGroup> {
        let name = name.into();
        let size = labels.len();
        if size == 0 || table.len() != size || table.iter().any(|row| row.len() != size) {
            return Err(Error::GroupParameters(format!("{name}: table is not {size} x {size}")));
        }
        if table.iter().flatten().any(|&c| c >= size) {
            return Err(Error::GroupParameters(format!("{name}: table entry out of range")));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != size {
            return Err(Error::GroupParameters(format!("{name}: duplicate element labels")));
        }
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::GroupParameters(format!("{name}: table is not associative")));
                    }
                }
            }
        }
        let identity = (0..size)
            .find(|&e| (0..size).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::GroupParameters(format!("{name}: no identity")))?;
        for a in 0..size {
            if !(0..size).any(|b| table[a][b] == identity) {
                return Err(Error::GroupParameters(format!("{name}: element {} has no inverse", labels[a])));
            }
        }
        let position: HashMap<GroupElement, usize> = labels.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        Ok(FiniteGroup::from_fn(
            GroupType::Explicit,
            n,
            name,
            labels.clone(),
            |a, b| labels[table[position[&a]][position[&b]]],
            None,
        ))
    }

    fn assemble(
        kind: GroupType,
        n: u32,
        name: String,
        elements: Vec<GroupElement>,
        lookup: HashMap<GroupElement, Elem>,
        table: Vec<Elem>,
        generators: Option<Vec<Elem>>,
    ) -> FiniteGroup {
        let size = elements.len();
        let identity = (0..size)
            .map(|i| Elem(i as u16))
            .find(|&e| table[e.idx() * size + e.idx()] == e)
            .expect("group has an idempotent");
        let inverses = (0..size)
            .map(|a| {
                let b = (0..size).find(|&b| table[a * size + b] == identity).expect("inverse exists");
                Elem(b as u16)
            })
            .collect();
        let orders = (0..size)
            .map(|a| {
                let mut k = 1;
                let mut p = Elem(a as u16);
                while p != identity {
                    p = table[p.idx() * size + a];
                    k += 1;
                }
                k
            })
            .collect();
        let mut group = FiniteGroup {
            kind,
            n,
            name,
            elements,
            lookup,
            table,
            inverses,
            orders,
            identity,
            generators: Vec::new(),
        };
        group.generators = match generators {
            Some(g) => g,
            None => group.greedy_generators(),
        };
        debug_assert_eq!(group.closure_size(&group.generators), size);
        group
    }

    fn greedy_generators(&self) -> Vec<Elem> {
        let mut gens: Vec<Elem> = Vec::new();
        let mut current = 1;
        while current < self.order() {
            let (best, size) = self
                .iter()
                .map(|g| {
                    let mut trial = gens.clone();
                    trial.push(g);
                    (g, self.closure_size(&trial))
                })
                .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
                .expect("nonempty group");
            gens.push(best);
            current = size;
        }
        gens
    }

    pub fn kind(&self) -> GroupType {
        self.kind
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    /// The fixed generating tuple used for automorphism search.
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.elements.len()).map(|i| Elem(i as u16))
    }

    pub fn element(&self, e: Elem) -> GroupElement {
        self.elements[e.idx()]
    }

    pub fn find(&self, e: &GroupElement) -> Option<Elem> {
        self.lookup.get(e).copied()
    }

    /// Looks up an element, failing with a diagnostic naming the group.
    pub fn elem(&self, e: &GroupElement) -> Result<Elem> {
        self.find(e).ok_or_else(|| Error::ForeignElement { element: e.to_string(), group: self.name.clone() })
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a.idx() * self.elements.len() + b.idx()]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a.idx()]
    }

    #[inline]
    pub fn elem_order(&self, a: Elem) -> u32 {
        self.orders[a.idx()]
    }

    /// `b a b⁻¹`.
    #[inline]
    pub fn conjugate(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(b, a), self.inv(b))
    }

    /// `a b a⁻¹ b⁻¹`.
    #[inline]
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn pow(&self, a: Elem, k: u32) -> Elem {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn product(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.identity, |acc, e| self.mul(acc, e))
    }

    /// Checked multiplication on normal forms.
    pub fn mul_elements(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        Ok(self.element(self.mul(self.elem(a)?, self.elem(b)?)))
    }

    pub fn inv_element(&self, a: &GroupElement) -> Result<GroupElement> {
        Ok(self.element(self.inv(self.elem(a)?)))
    }

    pub fn order_of(&self, a: &GroupElement) -> Result<u32> {
        Ok(self.elem_order(self.elem(a)?))
    }

    /// Checked `b a b⁻¹` on normal forms.
    pub fn conjugate_elements(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        Ok(self.element(self.conjugate(self.elem(a)?, self.elem(b)?)))
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn closure_mask(&self, gens: &[Elem]) -> Vec<bool> {
        let mut mask = vec![false; self.order()];
        mask[self.identity.idx()] = true;
        let mut stack = vec![self.identity];
        while let Some(a) = stack.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if !mask[b.idx()] {
                    mask[b.idx()] = true;
                    stack.push(b);
                }
            }
        }
        mask
    }

    pub fn closure_size(&self, gens: &[Elem]) -> usize {
        self.closure_mask(gens).iter().filter(|&&b| b).count()
    }

    pub fn generated_by(&self, gens: &[Elem]) -> bool {
        self.closure_size(gens) == self.order()
    }

    pub fn center(&self) -> Vec<Elem> {
        self.iter().filter(|&a| self.iter().all(|b| self.mul(a, b) == self.mul(b, a))).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.center().len() == self.order()
    }

    /// The direct product with `Z/2`; the new factor is stored in bit 1 of
    /// the extension coordinate.
    pub fn times_z2(&self, name: impl Into<String>) -> FiniteGroup {
        let labels: Vec<GroupElement> = self
            .elements
            .iter()
            .flat_map(|&e| [e, GroupElement { ext: e.ext | 2, ..e }])
            .collect();
        let split = |e: GroupElement| (GroupElement { ext: e.ext & 1, ..e }, e.ext & 2);
        FiniteGroup::from_fn(
            GroupType::Explicit,
            self.n,
            name.into(),
            labels,
            |a, b| {
                let (a0, ta) = split(a);
                let (b0, tb) = split(b);
                let c = self.element(self.mul(self.lookup[&a0], self.lookup[&b0]));
                GroupElement { ext: c.ext | (ta ^ tb), ..c }
            },
            None,
        )
    }

    pub fn to_document(&self) -> GroupDocument {
        GroupDocument {
            kind: self.kind,
            n: self.n,
            label: None,
            elements: self.elements.iter().map(|e| e.to_string()).collect(),
        }
    }
}

/// JSON form of a group or subgroup: `{ "type": "Type1", "n": 6, "elements": [...] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDocument {
    #[serde(rename = "type")]
    pub kind: GroupType,
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<String>,
    pub elements: Vec<String>,
}

impl GroupDocument {
    /// Rebuilds a structured group from its document, checking that the
    /// element list matches.
    pub fn to_group(&self) -> Result<Arc<FiniteGroup>> {
        let g = make_group(self.kind, self.n)?;
        let expected: Vec<String> = g.elements().iter().map(|e| e.to_string()).collect();
        if expected != self.elements {
            return Err(Error::Parse(format!("element list does not match {}", g.name())));
        }
        Ok(g)
    }
}
