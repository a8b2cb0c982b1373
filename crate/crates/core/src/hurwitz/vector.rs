use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, GroupElement, GroupMap, GroupType};

/// Monodromy of a Galois cover `C → C/G`: handle pairs `(a_j, b_j)` for the
/// base genus and one entry per branch point.
///
/// Identity branch entries are dropped on construction: an unramified point
/// is not a branch point.
#[derive(Clone)]
pub struct HurwitzVector {
    group: Arc<FiniteGroup>,
    handles: Vec<(Elem, Elem)>,
    branches: Vec<Elem>,
}

impl PartialEq for HurwitzVector {
    fn eq(&self, other: &Self) -> bool {
        self.handles == other.handles && self.branches == other.branches && *self.group == *other.group
    }
}

impl Eq for HurwitzVector {}

impl fmt::Debug for HurwitzVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HurwitzVector[{}]({self})", self.group.name())
    }
}

impl fmt::Display for HurwitzVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = &self.group;
        let handles: Vec<String> = self
            .handles
            .iter()
            .flat_map(|&(a, b)| [g.element(a).to_string(), g.element(b).to_string()])
            .collect();
        let branches: Vec<String> = self.branches.iter().map(|&e| g.element(e).to_string()).collect();
        if handles.is_empty() {
            write!(f, "{}", branches.join(", "))
        } else {
            write!(f, "{}; {}", handles.join(", "), branches.join(", "))
        }
    }
}

impl HurwitzVector {
    /// Builds a vector, checking the product-one relation.
    pub fn new(group: &Arc<FiniteGroup>, handles: Vec<(Elem, Elem)>, branches: Vec<Elem>) -> Result<HurwitzVector> {
        let v = HurwitzVector::unchecked(group, handles, branches);
        if !v.product_one() {
            return Err(Error::Precondition(format!("product-one relation fails for ({v})")));
        }
        Ok(v)
    }

    /// Builds a genus-0 vector from branch entries, checking product-one.
    pub fn genus0(group: &Arc<FiniteGroup>, branches: Vec<Elem>) -> Result<HurwitzVector> {
        HurwitzVector::new(group, Vec::new(), branches)
    }

    /// Builds a vector without checking product-one (candidates read from
    /// tables, or intermediate search states).
    pub fn unchecked(group: &Arc<FiniteGroup>, handles: Vec<(Elem, Elem)>, mut branches: Vec<Elem>) -> HurwitzVector {
        branches.retain(|&e| e != group.identity());
        HurwitzVector { group: group.clone(), handles, branches }
    }

    /// Looks up normal forms in `group`.
    pub fn from_elements(
        group: &Arc<FiniteGroup>,
        handles: &[(GroupElement, GroupElement)],
        branches: &[GroupElement],
    ) -> Result<HurwitzVector> {
        let handles = handles.iter().map(|(a, b)| Ok((group.elem(a)?, group.elem(b)?))).collect::<Result<_>>()?;
        let branches = branches.iter().map(|e| group.elem(e)).collect::<Result<_>>()?;
        Ok(HurwitzVector::unchecked(group, handles, branches))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn genus(&self) -> u32 {
        self.handles.len() as u32
    }

    pub fn handles(&self) -> &[(Elem, Elem)] {
        &self.handles
    }

    pub fn branches(&self) -> &[Elem] {
        &self.branches
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    /// `Π [a_j, b_j] · Π γ_i = 1`.
    pub fn product_one(&self) -> bool {
        let g = &self.group;
        let handles = g.product(self.handles.iter().map(|&(a, b)| g.commutator(a, b)));
        g.mul(handles, g.product(self.branches.iter().copied())) == g.identity()
    }

    /// All entries, handles first.
    pub fn entries(&self) -> Vec<Elem> {
        self.handles.iter().flat_map(|&(a, b)| [a, b]).chain(self.branches.iter().copied()).collect()
    }

    /// Whether the entries generate the whole group.
    pub fn generates(&self) -> bool {
        self.group.generated_by(&self.entries())
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.genus(), self.branches.iter().map(|&e| self.group.elem_order(e)).collect())
    }

    /// Componentwise image under `phi`, which must be defined on this
    /// vector's group. The target may be a different group.
    pub fn map(&self, phi: &GroupMap) -> Result<HurwitzVector> {
        if **phi.source() != *self.group {
            return Err(Error::GroupMismatch {
                left: phi.source().name().to_string(),
                right: self.group.name().to_string(),
            });
        }
        Ok(HurwitzVector::unchecked(
            phi.target(),
            self.handles.iter().map(|&(a, b)| (phi.apply(a), phi.apply(b))).collect(),
            self.branches.iter().map(|&e| phi.apply(e)).collect(),
        ))
    }

    /// Same entries viewed in another group through an element map
    /// (e.g. a subgroup embedding).
    pub fn transport(&self, target: &Arc<FiniteGroup>, f: impl Fn(Elem) -> Elem) -> HurwitzVector {
        HurwitzVector::unchecked(
            target,
            self.handles.iter().map(|&(a, b)| (f(a), f(b))).collect(),
            self.branches.iter().map(|&e| f(e)).collect(),
        )
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.branches.iter().map(|&e| self.group.element(e)).collect()
    }

    pub fn to_document(&self) -> HurwitzVectorDocument {
        let g = &self.group;
        HurwitzVectorDocument {
            group: GroupRef { kind: g.kind(), n: g.n(), name: g.name().to_string() },
            genus: self.genus(),
            handles: self
                .handles
                .iter()
                .map(|&(a, b)| [g.element(a).to_string(), g.element(b).to_string()])
                .collect(),
            branches: self.branches.iter().map(|&e| g.element(e).to_string()).collect(),
        }
    }
}

/// Compact reference to a group inside other documents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRef {
    #[serde(rename = "type")]
    pub kind: GroupType,
    pub n: u32,
    pub name: String,
}

/// JSON form: `{ "group": …, "genus": 1, "handles": [["…","…"]], "branches": ["…"] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HurwitzVectorDocument {
    pub group: GroupRef,
    pub genus: u32,
    pub handles: Vec<[String; 2]>,
    pub branches: Vec<String>,
}

impl HurwitzVectorDocument {
    /// Rebuilds the vector over `group`, which must match the reference.
    pub fn to_vector(&self, group: &Arc<FiniteGroup>) -> Result<HurwitzVector> {
        if group.kind() != self.group.kind || group.n() != self.group.n {
            return Err(Error::GroupMismatch { left: self.group.name.clone(), right: group.name().to_string() });
        }
        if self.handles.len() as u32 != self.genus {
            return Err(Error::Parse("genus does not match the number of handle pairs".into()));
        }
        let parse = |s: &String| -> Result<GroupElement> { s.parse() };
        let handles: Vec<(GroupElement, GroupElement)> =
            self.handles.iter().map(|[a, b]| Ok((parse(a)?, parse(b)?))).collect::<Result<_>>()?;
        let branches: Vec<GroupElement> = self.branches.iter().map(parse).collect::<Result<_>>()?;
        HurwitzVector::from_elements(group, &handles, &branches)
    }
}

/// Base genus plus the multiset of branching indices, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub genus: u32,
    pub orders: Vec<u32>,
}

impl Signature {
    pub fn new(genus: u32, mut orders: Vec<u32>) -> Signature {
        orders.retain(|&m| m > 1);
        orders.sort_unstable();
        Signature { genus, orders }
    }

    pub fn branch_points(&self) -> usize {
        self.orders.len()
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<String> = self.orders.iter().map(|m| m.to_string()).collect();
        write!(f, "({}; {})", self.genus, orders.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_group, GroupType};

    fn el(k: u8, l: u32, s: u8) -> GroupElement {
        GroupElement::new(k, l, s)
    }

    fn cover_i_normal_form(n: u32) -> HurwitzVector {
        let g = make_group(GroupType::Type1, n).unwrap();
        let b = [el(1, 0, 1), el(1, 0, 1), el(1, 1, 1), el(1, 1, 1), el(0, 0, 1), el(0, 0, 1)];
        HurwitzVector::from_elements(&g, &[], &b).unwrap()
    }

    #[test]
    fn cover_i_normal_form_properties() {
        let v = cover_i_normal_form(3);
        assert!(v.product_one());
        assert!(v.generates());
        assert_eq!(v.signature(), Signature::new(0, vec![2; 6]));
        assert_eq!(v.signature().to_string(), "(0; 2,2,2,2,2,2)");
    }

    #[test]
    fn non_generating_vector() {
        let g = make_group(GroupType::Type1, 3).unwrap();
        let b = [el(1, 0, 1), el(1, 0, 1), el(0, 0, 1), el(0, 0, 1), el(0, 0, 1), el(0, 0, 1)];
        let v = HurwitzVector::from_elements(&g, &[], &b).unwrap();
        assert!(v.product_one());
        assert!(!v.generates());
    }

    #[test]
    fn identity_entries_are_erased() {
        let g = make_group(GroupType::Type1, 3).unwrap();
        let b = [el(1, 0, 1), el(0, 0, 0), el(1, 0, 1)];
        let v = HurwitzVector::from_elements(&g, &[], &b).unwrap();
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn new_checks_product_one() {
        let g = make_group(GroupType::Type1, 3).unwrap();
        let y = g.elem(&el(1, 0, 0)).unwrap();
        let x = g.elem(&el(0, 1, 0)).unwrap();
        assert!(HurwitzVector::genus0(&g, vec![y, x]).is_err());
        assert!(HurwitzVector::genus0(&g, vec![y, y]).is_ok());
        // [x, y] = x y x⁻¹ y⁻¹ = x²; x² · x = 1 in D_3
        assert!(HurwitzVector::new(&g, vec![(x, y)], vec![x]).is_ok());
    }

    #[test]
    fn json_shape() {
        let v = cover_i_normal_form(3);
        let doc = v.to_document();
        let json = serde_json::to_value(&doc).unwrap();
        assert_eq!(json["genus"], 0);
        assert_eq!(json["branches"][0], "y^1 x^0 | 1");
        assert_eq!(json["group"]["type"], "Type1");
        let back = doc.to_vector(v.group()).unwrap();
        assert_eq!(back, v);
    }
}
