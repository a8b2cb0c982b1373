//! Checked-in transcription of the published normal forms and result tables.
//!
//! The JSON is a verbatim copy of the printed data. Nothing here is derived
//! from the code under test.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::covers::CoverType;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement, GroupMap};
use crate::hurwitz::HurwitzVector;
use crate::notation::{parse_pair, parse_pair_list, parse_word_vector, Condition};

const TABLES_JSON: &str = include_str!("../../fixtures/tables.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Fixtures {
    pub conventions: Conventions,
    pub normal_forms: Vec<NormalForm>,
    pub tables: Vec<TableFixture>,
    pub corollary_pairs: BTreeMap<String, Vec<(i64, i64)>>,
    pub equivalence_remark: EquivalenceRemark,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Conventions {
    pub subgroup_conditions: Vec<SubgroupCondition>,
    /// Images in `D_n` of the catalog generators, in order.
    pub identifications: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubgroupCondition {
    pub subgroups: Vec<String>,
    pub condition: Condition,
}

/// A published representative of one equivalence class of admissible vectors
/// over `D_n × Z/2`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NormalForm {
    pub id: String,
    pub cover_type: CoverType,
    pub condition: Condition,
    pub vector: String,
    /// Another form this one is asserted to be equivalent to.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equivalent_to: Option<String>,
}

impl NormalForm {
    pub fn applies(&self, n: u32) -> bool {
        self.condition.holds(n)
    }

    /// The vector over `group` (which must be of type 1 with the right `n`).
    pub fn to_vector(&self, group: &Arc<FiniteGroup>) -> Result<HurwitzVector> {
        let entries = parse_pair_list(&self.vector, group.n())?;
        HurwitzVector::from_elements(group, &[], &entries)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableFixture {
    /// Id of the normal form the table belongs to.
    pub id: String,
    pub condition: Condition,
    /// Printed restriction to `H`, when the table heading gives one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_h: Option<String>,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableRow {
    pub subgroup: String,
    pub condition: Condition,
    pub v_quot: Vec<u8>,
    pub genus: u32,
    pub delta: i64,
    pub v_prime: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquivalenceRemark {
    pub first: String,
    pub second: String,
    pub witness: Vec<(String, String)>,
}

impl Fixtures {
    /// The embedded fixture set, parsed once.
    pub fn embedded() -> &'static Fixtures {
        static CELL: OnceLock<Fixtures> = OnceLock::new();
        CELL.get_or_init(|| Fixtures::parse(TABLES_JSON).expect("embedded fixtures are well formed"))
    }

    pub fn parse(json: &str) -> Result<Fixtures> {
        let f: Fixtures = serde_json::from_str(json)?;
        for t in &f.tables {
            if f.normal_form(&t.id).is_none() {
                return Err(Error::Fixture(format!("table {} has no normal form", t.id)));
            }
        }
        let links = f.normal_forms.iter().filter_map(|nf| nf.equivalent_to.as_ref());
        for id in [&f.equivalence_remark.first, &f.equivalence_remark.second].into_iter().chain(links) {
            if f.normal_form(id).is_none() {
                return Err(Error::Fixture(format!("unknown normal form {id}")));
            }
        }
        Ok(f)
    }

    pub fn normal_form(&self, id: &str) -> Option<&NormalForm> {
        self.normal_forms.iter().find(|nf| nf.id == id)
    }

    pub fn normal_forms_for(&self, ct: CoverType, n: u32) -> impl Iterator<Item = &NormalForm> {
        self.normal_forms.iter().filter(move |nf| nf.cover_type == ct && nf.applies(n))
    }

    /// The standing assumption on `n` whenever `subgroup` appears in a table.
    pub fn subgroup_condition(&self, subgroup: &str) -> Condition {
        self.conventions
            .subgroup_conditions
            .iter()
            .filter(|c| c.subgroups.iter().any(|s| s == subgroup))
            .fold(Condition::always(), |acc, c| acc.and(&c.condition))
    }

    /// Whether a row is in force for `n`: its own condition, the table's and
    /// the subgroup convention must all hold.
    pub fn row_applies(&self, table: &TableFixture, row: &TableRow, n: u32) -> bool {
        table.condition.holds(n) && row.condition.holds(n) && self.subgroup_condition(&row.subgroup).holds(n)
    }

    pub fn corollary_pairs(&self, ct: CoverType) -> Vec<(i64, i64)> {
        self.corollary_pairs.get(&format!("{ct:?}")).cloned().unwrap_or_default()
    }

    /// The witness automorphism of the equivalence remark on `group`.
    pub fn remark_witness(&self, group: &Arc<FiniteGroup>) -> Result<GroupMap> {
        let n = group.n();
        let (gens, images): (Vec<_>, Vec<_>) = self
            .equivalence_remark
            .witness
            .iter()
            .map(|(a, b)| Ok((group.elem(&parse_pair(a, n)?)?, group.elem(&parse_pair(b, n)?)?)))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .unzip();
        GroupMap::extend(group, group, &gens, &images)
            .filter(GroupMap::is_bijective)
            .ok_or_else(|| Error::Fixture("remark witness does not define an automorphism".into()))
    }
}

/// Parses a printed `D_n` vector (`(a,b,…)` or `(a,b;c,…)`) into `dn`,
/// without checking product-one.
pub fn parse_dihedral_vector(text: &str, dn: &Arc<FiniteGroup>) -> Result<HurwitzVector> {
    let w = parse_word_vector(text, dn.n())?;
    let look = |e: &GroupElement| dn.elem(e);
    let handles = w.handles.iter().map(|(a, b)| Ok((look(a)?, look(b)?))).collect::<Result<Vec<_>>>()?;
    let branches = w.branches.iter().map(look).collect::<Result<Vec<_>>>()?;
    Ok(HurwitzVector::unchecked(dn, handles, branches))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{make_group, GroupType};

    #[test]
    fn fixtures_parse() {
        let f = Fixtures::embedded();
        assert_eq!(f.normal_forms.len(), 12);
        assert_eq!(f.tables.len(), 12);
        assert_eq!(f.corollary_pairs(CoverType::I), vec![(3, 4), (3, 5)]);
        assert!(f.corollary_pairs(CoverType::IIIc).is_empty());
    }

    #[test]
    fn every_printed_vector_parses() {
        let f = Fixtures::embedded();
        for n in [2u32, 3, 4, 6, 10] {
            let g = make_group(GroupType::Type1, n).unwrap();
            let dn = make_group(GroupType::Dihedral, n).unwrap();
            for nf in f.normal_forms.iter().filter(|nf| nf.applies(n)) {
                nf.to_vector(&g).unwrap();
            }
            for t in &f.tables {
                for row in t.rows.iter().filter(|r| f.row_applies(t, r, n)) {
                    parse_dihedral_vector(&row.v_prime, &dn).unwrap();
                }
            }
        }
    }

    #[test]
    fn conventions() {
        let f = Fixtures::embedded();
        let c = f.subgroup_condition("H_{1,3}");
        assert!(c.holds(6) && c.holds(2) && !c.holds(4) && !c.holds(5));
        assert!(f.subgroup_condition("H_{1,1}").holds(2));
        assert!(!f.subgroup_condition("H_{1,1}").holds(4));
        assert!(f.subgroup_condition("H_{1,2}").holds(7));
        assert_eq!(f.conventions.identifications["H_{1,5}"], ["x^{m+1}", "y", "x^m"]);
    }

    #[test]
    fn witness_is_an_automorphism_moving_h() {
        let f = Fixtures::embedded();
        for n in [4u32, 6] {
            let g = make_group(GroupType::Type1, n).unwrap();
            let phi = f.remark_witness(&g).unwrap();
            assert!(phi.is_automorphism());
            let h = crate::group::Subgroup::distinguished(&g).unwrap();
            assert!(!phi.preserves(&h));
        }
    }
}
