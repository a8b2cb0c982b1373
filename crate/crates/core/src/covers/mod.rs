//! Cover-type admissibility, enumeration of admissible Hurwitz vectors,
//! restriction to index-2 subgroups and dimension bookkeeping.

mod catalog;
mod restrict;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::hurwitz::HurwitzVector;

pub use catalog::{iiic_catalog, iiic_extension};
pub use restrict::{dimension_pair, restrict_index2, restricted_signature, Lift, RestrictedCover, RestrictedCoverDocument};

/// The five branching configurations of a cover `C → C/G ≅ P¹` with an
/// intermediate quotient `C/H` of the same fixed-locus dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CoverType {
    I,
    II,
    IIIa,
    IIIb,
    IIIc,
}

impl CoverType {
    pub const ALL: [CoverType; 5] = [CoverType::I, CoverType::II, CoverType::IIIa, CoverType::IIIb, CoverType::IIIc];

    /// Cover types with `[G : H] = 2`.
    pub const INDEX_TWO: [CoverType; 4] = [CoverType::I, CoverType::II, CoverType::IIIa, CoverType::IIIb];

    pub fn branch_points(self) -> usize {
        match self {
            CoverType::I => 6,
            CoverType::II => 5,
            _ => 4,
        }
    }

    pub fn subgroup_index(self) -> usize {
        if self == CoverType::IIIc {
            4
        } else {
            2
        }
    }

    /// `δ_H = 3 g_{C/H} − 3 + r` for the intermediate cover.
    pub fn delta_h(self) -> i64 {
        match self {
            CoverType::I => 3,
            CoverType::II => 2,
            _ => 1,
        }
    }

    /// Genus of `C/H`.
    pub fn genus_h(self) -> u32 {
        match self {
            CoverType::I => 2,
            CoverType::II | CoverType::IIIa => 1,
            _ => 0,
        }
    }

    /// Images of the branch entries in `G/H ≅ Z/2` (index-2 types only).
    pub fn quotient_pattern(self) -> Option<Vec<u8>> {
        use Position::*;
        (self != CoverType::IIIc).then(|| self.slots().iter().map(|s| u8::from(s.position == Outside)).collect())
    }

    fn slots(self) -> Vec<Slot> {
        use OrderRule::*;
        use Position::*;
        let s = |position, order| Slot { position, order };
        match self {
            CoverType::I => vec![s(Outside, Two); 6],
            CoverType::II => vec![s(Outside, Two), s(Outside, Two), s(Outside, Two), s(Outside, Two), s(Inside, AtLeastTwo)],
            CoverType::IIIa => vec![s(Outside, Two), s(Outside, Two), s(Outside, Two), s(Outside, EvenAtLeastFour)],
            CoverType::IIIb => vec![s(Outside, Two), s(Outside, Two), s(Inside, AtLeastTwo), s(Inside, AboveTwo)],
            CoverType::IIIc => vec![s(Outside, Two), s(Outside, Two), s(Outside, Two), s(Inside, AboveTwo)],
        }
    }
}

impl fmt::Display for CoverType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoverType::I => "I",
            CoverType::II => "II",
            CoverType::IIIa => "III-a",
            CoverType::IIIb => "III-b",
            CoverType::IIIc => "III-c",
        })
    }
}

impl FromStr for CoverType {
    type Err = Error;

    fn from_str(s: &str) -> Result<CoverType> {
        let key: String = s.chars().filter(|c| *c != '-' && *c != '_').collect::<String>().to_ascii_lowercase();
        match key.as_str() {
            "i" | "1" => Ok(CoverType::I),
            "ii" | "2" => Ok(CoverType::II),
            "iiia" => Ok(CoverType::IIIa),
            "iiib" => Ok(CoverType::IIIb),
            "iiic" => Ok(CoverType::IIIc),
            _ => Err(Error::Parse(format!("unknown cover type {s:?} (expected I, II, IIIa, IIIb or IIIc)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Position {
    /// Image in `G/H` is trivial.
    Inside,
    /// Image in `G/H` is non-trivial (for III-c: pairwise distinct).
    Outside,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum OrderRule {
    Two,
    AtLeastTwo,
    AboveTwo,
    EvenAtLeastFour,
}

impl OrderRule {
    fn accepts(self, m: u32) -> bool {
        match self {
            OrderRule::Two => m == 2,
            OrderRule::AtLeastTwo => m >= 2,
            OrderRule::AboveTwo => m > 2,
            OrderRule::EvenAtLeastFour => m >= 4 && m % 2 == 0,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Slot {
    position: Position,
    order: OrderRule,
}

/// `G`, its distinguished normal subgroup `H` and the coset of every element.
struct Setting<'a> {
    group: &'a Arc<FiniteGroup>,
    coset: Vec<usize>,
}

impl<'a> Setting<'a> {
    fn new(h: &'a Subgroup, cover_type: CoverType) -> Result<Setting<'a>> {
        let group = h.parent();
        let index = h.index();
        if index != cover_type.subgroup_index() {
            return Err(Error::SubgroupIndex { expected: cover_type.subgroup_index(), found: index });
        }
        if !h.is_normal() {
            return Err(Error::Precondition("the distinguished subgroup must be normal".into()));
        }
        // coset label: least element of g·H
        let mut coset = vec![usize::MAX; group.order()];
        let mut labels = Vec::new();
        for g in group.iter() {
            if coset[g.idx()] != usize::MAX {
                continue;
            }
            let label = labels.len();
            labels.push(g);
            for &x in h.members() {
                coset[group.mul(g, x).idx()] = label;
            }
        }
        if cover_type == CoverType::IIIc && group.iter().any(|g| !h.contains(group.mul(g, g))) {
            return Err(Error::Precondition("G/H must be (Z/2)^2 for cover type III-c".into()));
        }
        Ok(Setting { group, coset })
    }

    fn slot_accepts(&self, slot: Slot, e: Elem) -> bool {
        let inside = self.coset[e.idx()] == self.coset[self.group.identity().idx()];
        let pos_ok = match slot.position {
            Position::Inside => inside,
            Position::Outside => !inside,
        };
        pos_ok && slot.order.accepts(self.group.elem_order(e))
    }

    /// Checks beyond the per-position rules.
    fn global_accepts(&self, cover_type: CoverType, entries: &[Elem]) -> bool {
        let g = self.group;
        match cover_type {
            CoverType::IIIb => g.elem_order(entries[2]) <= g.elem_order(entries[3]),
            CoverType::IIIc => {
                let c: Vec<usize> = entries[..3].iter().map(|e| self.coset[e.idx()]).collect();
                c[0] != c[1] && c[0] != c[2] && c[1] != c[2]
            }
            _ => true,
        }
    }
}

/// Whether `v` realizes `cover_type` over `G ⊃ H`: it generates `G`, its
/// branch orders fit the cover type's signature, and its images in `G/H`
/// follow the cover type's pattern position by position.
pub fn is_admissible(v: &HurwitzVector, cover_type: CoverType, h: &Subgroup) -> Result<bool> {
    if **h.parent() != **v.group() {
        return Err(Error::GroupMismatch { left: h.parent().name().to_string(), right: v.group().name().to_string() });
    }
    let setting = Setting::new(h, cover_type)?;
    if v.genus() != 0 {
        return Ok(false);
    }
    let slots = cover_type.slots();
    let entries = v.branches();
    Ok(entries.len() == slots.len()
        && slots.iter().zip(entries).all(|(&s, &e)| setting.slot_accepts(s, e))
        && setting.global_accepts(cover_type, entries)
        && v.product_one()
        && v.generates())
}

/// Every admissible vector for `cover_type` over `G = h.parent()`, in
/// lexicographic order of entries. The last entry is forced by the
/// product-one relation.
pub fn enumerate_admissible(h: &Subgroup, cover_type: CoverType, order_bound: usize) -> Result<Vec<HurwitzVector>> {
    let group = h.parent();
    if group.order() > order_bound {
        return Err(Error::OrderBound { order: group.order(), bound: order_bound });
    }
    let setting = Setting::new(h, cover_type)?;
    let slots = cover_type.slots();
    let candidates: Vec<Vec<Elem>> =
        slots.iter().map(|&s| group.iter().filter(|&e| setting.slot_accepts(s, e)).collect()).collect();
    let last = slots.len() - 1;
    let last_ok: Vec<bool> = group.iter().map(|e| setting.slot_accepts(slots[last], e)).collect();
    let mut search = Enumerator {
        setting: &setting,
        cover_type,
        candidates: &candidates,
        last_ok: &last_ok,
        entries: vec![group.identity(); slots.len()],
        out: Vec::new(),
    };
    search.descend(0, group.identity());
    Ok(search.out)
}

struct Enumerator<'a> {
    setting: &'a Setting<'a>,
    cover_type: CoverType,
    candidates: &'a [Vec<Elem>],
    last_ok: &'a [bool],
    entries: Vec<Elem>,
    out: Vec<HurwitzVector>,
}

impl Enumerator<'_> {
    fn descend(&mut self, depth: usize, acc: Elem) {
        let group = self.setting.group;
        let last = self.entries.len() - 1;
        if depth == last {
            let closing = group.inv(acc);
            if !self.last_ok[closing.idx()] {
                return;
            }
            self.entries[last] = closing;
            if self.setting.global_accepts(self.cover_type, &self.entries) && group.generated_by(&self.entries) {
                self.out.push(HurwitzVector::unchecked(group, Vec::new(), self.entries.clone()));
            }
            return;
        }
        for &e in &self.candidates[depth] {
            self.entries[depth] = e;
            self.descend(depth + 1, group.mul(acc, e));
        }
    }
}

/// Images of the branch entries in `G/H' ≅ Z/2` (0 inside `H'`, 1 outside).
pub fn quotient_vector(v: &HurwitzVector, h_prime: &Subgroup) -> Result<Vec<u8>> {
    if **h_prime.parent() != **v.group() {
        return Err(Error::GroupMismatch { left: h_prime.parent().name().to_string(), right: v.group().name().to_string() });
    }
    if h_prime.index() != 2 {
        return Err(Error::SubgroupIndex { expected: 2, found: h_prime.index() });
    }
    Ok(v.branches().iter().map(|&e| u8::from(!h_prime.contains(e))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_group, named_subgroup, GroupElement, GroupType, DEFAULT_ORDER_BOUND};
    use crate::notation::parse_pair_list;
    use crate::hurwitz::Signature;

    fn setting(n: u32) -> (Arc<FiniteGroup>, Subgroup) {
        let g = make_group(GroupType::Type1, n).unwrap();
        let h = Subgroup::distinguished(&g).unwrap();
        (g, h)
    }

    fn vector(g: &Arc<FiniteGroup>, text: &str) -> HurwitzVector {
        let els = parse_pair_list(text, g.n()).unwrap();
        HurwitzVector::from_elements(g, &[], &els).unwrap()
    }

    #[test]
    fn cover_i_normal_form_is_admissible() {
        for n in 2..=8 {
            let (g, h) = setting(n);
            let v = vector(&g, "((y,1),(y,1),(yx,1),(yx,1),(e,1),(e,1))");
            assert!(is_admissible(&v, CoverType::I, &h).unwrap(), "n = {n}");
            assert!(!is_admissible(&v, CoverType::II, &h).unwrap());
        }
    }

    #[test]
    fn non_surjective_candidate_is_rejected() {
        let (g, h) = setting(4);
        let v = vector(&g, "((y,1),(yx,1),(x,1),(x,1),(x^2,1),(e,1))");
        assert!(!v.generates() || !is_admissible(&v, CoverType::I, &h).unwrap());
        let w = vector(&g, "((y,1),(y,1),(e,1),(e,1),(e,1),(e,1))");
        assert!(w.product_one());
        assert!(!is_admissible(&w, CoverType::I, &h).unwrap());
    }

    #[test]
    fn enumeration_matches_filtered_brute_force() {
        // brute force over all 6-tuples is too large; use cover type IIIb at
        // n = 3 and compare with a filter over every 4-tuple
        let (g, h) = setting(3);
        let fast = enumerate_admissible(&h, CoverType::IIIb, DEFAULT_ORDER_BOUND).unwrap();
        let all: Vec<Elem> = g.iter().collect();
        let mut slow = Vec::new();
        for &a in &all {
            for &b in &all {
                for &c in &all {
                    for &d in &all {
                        let v = HurwitzVector::unchecked(&g, vec![], vec![a, b, c, d]);
                        if v.len() == 4 && is_admissible(&v, CoverType::IIIb, &h).unwrap() {
                            slow.push(v);
                        }
                    }
                }
            }
        }
        assert!(!fast.is_empty());
        assert_eq!(fast, slow);
    }

    #[test]
    fn cover_iiia_exists_for_all_n() {
        // For odd n the element (x,1) has order 2n, so the last branch index
        // is 2n rather than n and the family does not disappear.
        for n in [3, 5, 7] {
            let (g, h) = setting(n);
            let all = enumerate_admissible(&h, CoverType::IIIa, DEFAULT_ORDER_BOUND).unwrap();
            let v = HurwitzVector::from_elements(&g, &[], &parse_pair_list("((y,1),(yx^{-1},1),(e,1),(x,1))", n).unwrap()).unwrap();
            assert!(all.contains(&v));
            assert_eq!(v.signature(), Signature::new(0, vec![2, 2, 2, 2 * n]));
        }
        let (_, h) = setting(4);
        assert!(!enumerate_admissible(&h, CoverType::IIIa, DEFAULT_ORDER_BOUND).unwrap().is_empty());
    }

    #[test]
    fn enumeration_respects_bound_and_index() {
        let (g, h) = setting(3);
        assert!(matches!(enumerate_admissible(&h, CoverType::I, 10), Err(Error::OrderBound { .. })));
        assert!(matches!(enumerate_admissible(&h, CoverType::IIIc, 200), Err(Error::SubgroupIndex { .. })));
        let k = named_subgroup(&g, "K").unwrap();
        assert!(is_admissible(&HurwitzVector::unchecked(&g, vec![], vec![]), CoverType::I, &k).is_err());
    }

    #[test]
    fn quotient_vectors() {
        let (g, _) = setting(6);
        let v = vector(&g, "((y,1),(y,1),(yx,1),(yx,1),(e,1),(e,1))");
        let h12 = named_subgroup(&g, "H_{1,2}").unwrap();
        assert_eq!(quotient_vector(&v, &h12).unwrap(), vec![0, 0, 0, 0, 1, 1]);
        let h16 = named_subgroup(&g, "H_{1,6}").unwrap();
        assert_eq!(quotient_vector(&v, &h16).unwrap(), vec![0, 0, 1, 1, 1, 1]);
        let h = Subgroup::distinguished(&g).unwrap();
        assert_eq!(quotient_vector(&v, &h).unwrap(), vec![1; 6]);
        assert!(quotient_vector(&v, &Subgroup::whole(&g)).is_err());
        let odd = v.branches().iter().filter(|&&e| !h12.contains(e)).count();
        assert_eq!(odd % 2, 0);
        let _ = GroupElement::IDENTITY;
    }

    #[test]
    fn parse_cover_types() {
        assert_eq!("III-a".parse::<CoverType>().unwrap(), CoverType::IIIa);
        assert_eq!("iiib".parse::<CoverType>().unwrap(), CoverType::IIIb);
        assert_eq!("I".parse::<CoverType>().unwrap(), CoverType::I);
        assert!("IV".parse::<CoverType>().is_err());
        for c in CoverType::ALL {
            assert_eq!(c.to_string().parse::<CoverType>().unwrap(), c);
        }
    }
}
