//! Full classification runs, comparison against the published fixtures and
//! report generation.

mod checks;
mod fixtures;
mod markdown;
mod tables;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use serde::Serialize;

use crate::covers::{enumerate_admissible, iiic_extension, is_admissible, CoverType};
use crate::error::{Error, Result};
use crate::group::{automorphisms_fixing, make_group, Elem, FiniteGroup, GroupType, Subgroup, DEFAULT_ORDER_BOUND};
use crate::notation::format_vector;
use crate::hurwitz::{HurwitzVector, HurwitzVectorDocument, OrbitSearch, DEFAULT_NODE_CAP};

pub use checks::{
    verify_corollary_pairs, verify_nonexistence, verify_remark_equivalence, CorollaryReport, NonexistenceEntry,
    NonexistenceReport, RemarkReport,
};
pub use fixtures::{parse_dihedral_vector, Fixtures, NormalForm, TableFixture, TableRow};
pub use markdown::ToMarkdown;
pub use tables::{verify_tables, CellCheck, RowReport, TableReport, TablesReport};

/// Version of the JSON report layout.
pub const REPORT_SCHEMA: u32 = 1;

/// Environment variable overriding the default orbit node cap.
pub const NODE_CAP_ENV: &str = "DLOCI_NODE_CAP";

/// The node cap from [`NODE_CAP_ENV`], or [`DEFAULT_NODE_CAP`].
pub fn node_cap_from_env() -> usize {
    std::env::var(NODE_CAP_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_NODE_CAP)
}

/// One equivalence class of admissible vectors.
#[derive(Clone, Debug, Serialize)]
pub struct ClassEntry {
    pub index: usize,
    /// Least admissible member in element order.
    pub representative: HurwitzVectorDocument,
    /// The representative in `(word,s)` notation.
    pub display: String,
    pub signature: String,
    /// Number of admissible vectors in the class.
    pub admissible_members: usize,
    /// Size of the full `B_r × Aut(G)_H` orbit, which also contains
    /// rearrangements that violate the positional template.
    pub orbit_size: usize,
    pub exhausted: bool,
    pub normal_forms: Vec<String>,
}

/// Outcome of matching one published normal form.
#[derive(Clone, Debug, Serialize)]
pub struct NormalFormMatch {
    pub vector: String,
    pub admissible: bool,
    pub class: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub schema: u32,
    pub cover_type: CoverType,
    pub group_type: GroupType,
    pub n: u32,
    pub group: String,
    pub group_order: usize,
    /// `|Aut(G)_H|`.
    pub automorphisms: usize,
    pub admissible_count: usize,
    pub classes: Vec<ClassEntry>,
    pub matched_normal_forms: BTreeMap<String, NormalFormMatch>,
    pub unmatched_orbits: Vec<usize>,
    /// Every orbit search finished below the node cap.
    pub complete: bool,
    pub passed: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// The pair `(G, H)` searched for a given cover and group type. III-c uses
/// the index-4 catalog entry built on the group of that type.
pub fn setting(ct: CoverType, gt: GroupType, n: u32) -> Result<(Arc<FiniteGroup>, Subgroup)> {
    if ct == CoverType::IIIc {
        return iiic_extension(gt, n);
    }
    let g = make_group(gt, n)?;
    let h = Subgroup::distinguished(&g).ok_or_else(|| Error::GroupParameters(format!("{gt:?} has no distinguished subgroup")))?;
    Ok((g, h))
}

/// Enumerates the admissible vectors, partitions them into
/// `B_r × Aut(G)_H` classes and matches the published normal forms.
pub fn classify(ct: CoverType, gt: GroupType, n: u32, node_cap: usize) -> Result<ClassificationReport> {
    let (g, h) = setting(ct, gt, n)?;
    let auts = automorphisms_fixing(&g, &h, DEFAULT_ORDER_BOUND)?;
    let admissible = enumerate_admissible(&h, ct, DEFAULT_ORDER_BOUND)?;

    let position: HashMap<&[Elem], usize> = admissible.iter().enumerate().map(|(i, v)| (v.branches(), i)).collect();
    let mut class_of: Vec<Option<usize>> = vec![None; admissible.len()];
    let mut classes = Vec::new();
    let mut complete = true;
    for start in 0..admissible.len() {
        if class_of[start].is_some() {
            continue;
        }
        let search = OrbitSearch::run(&admissible[start], &auts, node_cap)?;
        complete &= search.exhausted();
        let index = classes.len();
        let mut members = 0;
        for (i, slot) in class_of.iter_mut().enumerate().skip(start) {
            if slot.is_none() && search.contains_entries(admissible[i].branches()) {
                *slot = Some(index);
                members += 1;
            }
        }
        // the enumeration is lexicographic, so the first unassigned vector
        // is the least member of its class
        let rep = &admissible[start];
        classes.push(ClassEntry {
            index,
            representative: rep.to_document(),
            display: format_vector(rep, true),
            signature: rep.signature().to_string(),
            admissible_members: members,
            orbit_size: search.size(),
            exhausted: search.exhausted(),
            normal_forms: Vec::new(),
        });
    }

    let mut matched = BTreeMap::new();
    let mut linked = Vec::new();
    if gt == GroupType::Type1 && ct != CoverType::IIIc {
        for nf in Fixtures::embedded().normal_forms_for(ct, n) {
            if let Some(target) = &nf.equivalent_to {
                linked.push((nf.id.clone(), target.clone()));
            }
            let v = nf.to_vector(&g)?;
            let ok = is_admissible(&v, ct, &h)?;
            let class = if ok { position.get(v.branches()).and_then(|&i| class_of[i]) } else { None };
            if let Some(c) = class {
                classes[c].normal_forms.push(nf.id.clone());
            }
            matched.insert(nf.id.clone(), NormalFormMatch { vector: nf.vector.clone(), admissible: ok, class });
        }
    }

    let unmatched: Vec<usize> = classes.iter().filter(|c| c.normal_forms.is_empty()).map(|c| c.index).collect();
    // forms asserted equivalent share a class; all others are pairwise apart
    let primary = |id: &String| linked.iter().find(|(a, _)| a == id).map_or_else(|| id.clone(), |(_, b)| b.clone());
    let links_hold = linked.iter().all(|(a, b)| matched.get(b).map_or(true, |t| t.class == matched[a].class));
    let forms_ok = matched.values().all(|m| m.class.is_some())
        && links_hold
        && classes.iter().all(|c| c.normal_forms.iter().map(primary).collect::<BTreeSet<_>>().len() <= 1);
    let passed = complete && forms_ok && unmatched.is_empty();

    let mut notes = Vec::new();
    if ct == CoverType::IIIc {
        notes.push(format!("search scope: catalog group {}", g.name()));
    }
    if !complete {
        notes.push(format!("node cap {node_cap} reached; classes may be split"));
    }

    Ok(ClassificationReport {
        schema: REPORT_SCHEMA,
        cover_type: ct,
        group_type: gt,
        n,
        group: g.name().to_string(),
        group_order: g.order(),
        automorphisms: auts.len(),
        admissible_count: admissible.len(),
        classes,
        matched_normal_forms: matched,
        unmatched_orbits: unmatched,
        complete,
        passed,
        notes,
    })
}

impl ClassificationReport {
    /// Σ admissible class sizes equals the admissible count.
    pub fn partition_is_consistent(&self) -> bool {
        self.classes.iter().map(|c| c.admissible_members).sum::<usize>() == self.admissible_count
    }
}

/// The admissible vectors for `(ct, gt, n)` in enumeration order.
pub fn enumerate(ct: CoverType, gt: GroupType, n: u32) -> Result<Vec<HurwitzVector>> {
    let (_, h) = setting(ct, gt, n)?;
    enumerate_admissible(&h, ct, DEFAULT_ORDER_BOUND)
}

/// Aggregate of every verification for a set of `n`.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyAllReport {
    pub schema: u32,
    pub n_values: Vec<u32>,
    pub classifications: Vec<ClassificationReport>,
    pub tables: Vec<TablesReport>,
    pub nonexistence: NonexistenceReport,
    pub corollary: Vec<CorollaryReport>,
    pub remark: Vec<RemarkReport>,
    pub complete: bool,
    pub passed: bool,
}

/// The default verification set, cut at `n_max`.
pub const DEFAULT_N_VALUES: [u32; 7] = [2, 3, 4, 5, 6, 10, 12];

pub fn verify_all(n_max: u32, node_cap: usize) -> Result<VerifyAllReport> {
    let ns: Vec<u32> = DEFAULT_N_VALUES.iter().copied().filter(|&n| n <= n_max).collect();
    let mut classifications = Vec::new();
    for &n in &ns {
        for ct in CoverType::INDEX_TWO {
            classifications.push(classify(ct, GroupType::Type1, n, node_cap)?);
        }
    }
    let tables = ns.iter().map(|&n| verify_tables(n, node_cap)).collect::<Result<Vec<_>>>()?;
    let nonexistence = verify_nonexistence(n_max)?;
    let corollary = ns.iter().map(|&n| verify_corollary_pairs(n)).collect::<Result<Vec<_>>>()?;
    let remark =
        ns.iter().filter(|&&n| n % 2 == 0 && n > 2).map(|&n| verify_remark_equivalence(n, node_cap)).collect::<Result<Vec<_>>>()?;
    let complete = classifications.iter().all(|c| c.complete) && tables.iter().all(|t| t.complete) && remark.iter().all(|r| r.complete);
    let passed = classifications.iter().all(|c| c.passed)
        && tables.iter().all(|t| t.passed)
        && nonexistence.passed
        && corollary.iter().all(|c| c.passed)
        && remark.iter().all(|r| r.passed);
    Ok(VerifyAllReport { schema: REPORT_SCHEMA, n_values: ns, classifications, tables, nonexistence, corollary, remark, complete, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cover_i_odd_n_single_class() {
        let r = classify(CoverType::I, GroupType::Type1, 5, DEFAULT_NODE_CAP).unwrap();
        assert!(r.complete && r.partition_is_consistent());
        assert_eq!(r.classes.len(), 1);
        assert_eq!(r.matched_normal_forms["I-1"].class, Some(0));
        assert!(r.passed);
    }

    #[test]
    fn cover_i_six_second_and_third_forms_merge() {
        // (x,0) -> (x^{2-m},0), (y,0) -> (y,0), (e,1) -> (x^m,1) fixes H and
        // sends the second form to the third up to two adjacent swaps
        let r = classify(CoverType::I, GroupType::Type1, 6, DEFAULT_NODE_CAP).unwrap();
        assert!(r.complete && r.partition_is_consistent());
        assert_eq!(r.admissible_count, 10080);
        assert_eq!(r.classes.len(), 2);
        let class = |id: &str| r.matched_normal_forms[id].class;
        assert_ne!(class("I-1"), class("I-2"));
        assert_eq!(class("I-2"), class("I-3"));
        assert!(!r.passed);
    }

    #[test]
    fn cover_i_merge_witness() {
        use crate::group::{automorphisms_fixing, GroupMap, DEFAULT_ORDER_BOUND};
        use crate::notation::parse_pair;
        use crate::hurwitz::{apply_aut, same_orbit};
        let (g, h) = setting(CoverType::I, GroupType::Type1, 6).unwrap();
        let fx = Fixtures::embedded();
        let a = fx.normal_form("I-2").unwrap().to_vector(&g).unwrap();
        let b = fx.normal_form("I-3").unwrap().to_vector(&g).unwrap();
        let pair = |t: &str| g.elem(&parse_pair(t, 6).unwrap()).unwrap();
        let gens = [pair("(x,0)"), pair("(y,0)"), pair("(e,1)")];
        let images = [pair("(x^{-1},0)"), pair("(y,0)"), pair("(x^3,1)")];
        let psi = GroupMap::extend(&g, &g, &gens, &images).unwrap();
        assert!(psi.is_automorphism() && psi.preserves(&h));
        assert!(automorphisms_fixing(&g, &h, DEFAULT_ORDER_BOUND).unwrap().contains(&psi));
        assert_eq!(same_orbit(&apply_aut(&a, &psi).unwrap(), &b, &[], DEFAULT_NODE_CAP).unwrap(), Some(true));
    }

    #[test]
    fn cover_i_at_two_uses_the_small_list() {
        let r = classify(CoverType::I, GroupType::Type1, 2, DEFAULT_NODE_CAP).unwrap();
        assert_eq!(r.admissible_count, 840);
        assert_eq!(r.matched_normal_forms.keys().collect::<Vec<_>>(), ["I-4", "I-5"]);
        assert!(r.passed, "{r:#?}");
        // the general even-n forms degenerate onto the two small ones
        let (g, h) = setting(CoverType::I, GroupType::Type1, 2).unwrap();
        let auts = crate::group::automorphisms_fixing(&g, &h, crate::group::DEFAULT_ORDER_BOUND).unwrap();
        let fx = Fixtures::embedded();
        let v = |id: &str| fx.normal_form(id).unwrap().to_vector(&g).unwrap();
        let same = |a: &str, b: &str| crate::hurwitz::same_orbit(&v(a), &v(b), &auts, DEFAULT_NODE_CAP).unwrap();
        assert_eq!(same("I-1", "I-4"), Some(true));
        assert_eq!(same("I-2", "I-5"), Some(true));
        assert_eq!(same("I-3", "I-5"), Some(true));
    }

    #[test]
    fn cover_ii_at_two_is_one_class() {
        let r = classify(CoverType::II, GroupType::Type1, 2, DEFAULT_NODE_CAP).unwrap();
        assert_eq!(r.classes.len(), 1);
        assert_eq!(r.classes[0].normal_forms, ["II-1", "II-5"]);
        assert!(r.passed);
    }

    #[test]
    fn type2_has_nothing() {
        let r = classify(CoverType::II, GroupType::Type2, 4, DEFAULT_NODE_CAP).unwrap();
        assert_eq!(r.admissible_count, 0);
        assert!(r.classes.is_empty() && r.passed);
    }

    #[test]
    fn iiic_setting_uses_catalog() {
        let (g, h) = setting(CoverType::IIIc, GroupType::Type1, 3).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(h.index(), 4);
        let (g, _) = setting(CoverType::IIIc, GroupType::Type2, 4).unwrap();
        assert_eq!(g.order(), 32);
        assert!(g.name().starts_with("D_8"));
    }

    #[test]
    fn node_cap_env_default() {
        // the variable is not set in the test environment
        if std::env::var(NODE_CAP_ENV).is_err() {
            assert_eq!(node_cap_from_env(), DEFAULT_NODE_CAP);
        }
    }
}
