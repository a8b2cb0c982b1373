use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::Serialize;

use super::fixtures::Fixtures;
use super::{setting, REPORT_SCHEMA};
use crate::covers::{enumerate_admissible, iiic_catalog, quotient_vector, restrict_index2, restricted_signature, CoverType};
use crate::error::Result;
use crate::group::{automorphisms, automorphisms_fixing, index2_subgroups, make_group, GroupType, Subgroup, DEFAULT_ORDER_BOUND};
use crate::hurwitz::{apply_aut, delta, orbifold_euler, riemann_hurwitz_genus, same_orbit};

#[derive(Clone, Debug, Serialize)]
pub struct NonexistenceEntry {
    pub group_type: GroupType,
    pub n: u32,
    pub cover_type: CoverType,
    pub group: String,
    pub admissible_count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct NonexistenceReport {
    pub schema: u32,
    pub n_max: u32,
    pub entries: Vec<NonexistenceEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub passed: bool,
}

/// Counts admissible vectors for group types 2 and 3 (all index-2 cover
/// types) and for cover type III-c over the catalog, for every valid
/// `n ≤ n_max`.
pub fn verify_nonexistence(n_max: u32) -> Result<NonexistenceReport> {
    let mut entries = Vec::new();
    let mut notes = Vec::new();
    let mut push = |gt: GroupType, n: u32, ct: CoverType| -> Result<()> {
        let (g, h) = setting(ct, gt, n)?;
        let count = enumerate_admissible(&h, ct, DEFAULT_ORDER_BOUND)?.len();
        entries.push(NonexistenceEntry { group_type: gt, n, cover_type: ct, group: g.name().to_string(), admissible_count: count });
        Ok(())
    };
    for gt in [GroupType::Type2, GroupType::Type3] {
        for n in (2..=n_max).filter(|&n| gt.admits(n)) {
            for ct in CoverType::INDEX_TWO {
                push(gt, n, ct)?;
            }
        }
    }
    // the catalog groups have order 8n
    let catalog_max = n_max.min((DEFAULT_ORDER_BOUND / 8) as u32);
    if catalog_max < n_max {
        notes.push(format!("III-c catalog searched for n ≤ {catalog_max} (order bound {DEFAULT_ORDER_BOUND})"));
    }
    for n in 2..=catalog_max {
        for gt in [GroupType::Type1, GroupType::Type2, GroupType::Type3].into_iter().filter(|gt| gt.admits(n)) {
            push(gt, n, CoverType::IIIc)?;
        }
    }
    let passed = entries.iter().all(|e| e.admissible_count == 0);
    Ok(NonexistenceReport { schema: REPORT_SCHEMA, n_max, entries, notes, passed })
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryEntry {
    pub cover_type: CoverType,
    pub vectors: usize,
    /// Labels of the dihedral index-2 subgroups other than `H`.
    pub subgroups: Vec<String>,
    /// Every observed `(δ_H, δ_{H'})` with its multiplicity.
    pub observed: BTreeMap<String, usize>,
    /// Observed pairs with `δ_H < δ_{H'}`.
    pub strict_pairs: Vec<(i64, i64)>,
    pub allowed_pairs: Vec<(i64, i64)>,
    /// `δ_H` of every vector equals the value for the cover type.
    pub delta_h_consistent: bool,
    /// Restrictions checked for genus agreement and Euler doubling.
    pub arithmetic_checks: usize,
    pub arithmetic_failures: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorollaryReport {
    pub schema: u32,
    pub n: u32,
    pub entries: Vec<CorollaryEntry>,
    pub passed: bool,
}

/// Dimension pairs and Riemann–Hurwitz consistency over every admissible
/// vector of group type 1 and every dihedral index-2 subgroup.
pub fn verify_corollary_pairs(n: u32) -> Result<CorollaryReport> {
    let fixtures = Fixtures::embedded();
    let g = make_group(GroupType::Type1, n)?;
    let h = Subgroup::distinguished(&g).expect("type 1 has H");
    let dihedral: Vec<Subgroup> = index2_subgroups(&g).into_iter().filter(|s| s.is_dihedral().is_some()).collect();
    let mut entries = Vec::new();
    for ct in CoverType::ALL {
        let allowed = fixtures.corollary_pairs(ct);
        if ct == CoverType::IIIc {
            // the catalog holds no III-c vector, so nothing can be observed
            let vectors = iiic_catalog(n)?
                .iter()
                .map(|(_, h)| enumerate_admissible(h, ct, DEFAULT_ORDER_BOUND).map(|v| v.len()))
                .sum::<Result<usize>>()?;
            entries.push(CorollaryEntry {
                cover_type: ct,
                vectors,
                subgroups: Vec::new(),
                observed: BTreeMap::new(),
                strict_pairs: Vec::new(),
                allowed_pairs: allowed,
                delta_h_consistent: true,
                arithmetic_checks: 0,
                arithmetic_failures: Vec::new(),
                passed: vectors == 0,
            });
            continue;
        }
        let vectors = enumerate_admissible(&h, ct, DEFAULT_ORDER_BOUND)?;
        let mut observed = BTreeMap::new();
        let mut strict = std::collections::BTreeSet::new();
        let mut delta_h_consistent = true;
        let mut checks = 0;
        let mut failures = Vec::new();
        let pattern = ct.quotient_pattern().expect("index two");
        for v in &vectors {
            let base_sig = v.signature();
            let genus_c = riemann_hurwitz_genus(g.order(), &base_sig)?;
            let euler = orbifold_euler(&base_sig);
            let dh = delta(&restricted_signature(v, &h)?);
            delta_h_consistent &= dh == ct.delta_h();
            if quotient_vector(v, &h)? != pattern {
                failures.push(format!("{v}: quotient to G/H differs from the cover-type pattern"));
            }
            for s in &dihedral {
                let r = restrict_index2(v, s)?;
                let sig = r.signature();
                checks += 1;
                let expected_len: usize = v
                    .branches()
                    .iter()
                    .zip(r.quotient())
                    .map(|(&e, &q)| match (q, g.elem_order(e)) {
                        (0, m) if m > 1 => 2,
                        (1, m) if m > 2 => 1,
                        _ => 0,
                    })
                    .sum();
                let w = r.vector();
                let ok = riemann_hurwitz_genus(s.order(), &sig)? == genus_c
                    && orbifold_euler(&sig) == euler * Ratio::from_integer(2)
                    && sig == restricted_signature(v, s)?
                    && r.branches().len() == expected_len
                    && w.product_one()
                    && w.generates();
                if !ok {
                    failures.push(format!("{v} restricted to {}", s.label().unwrap_or("?")));
                }
                if s.members() == h.members() {
                    continue;
                }
                let dp = delta(&sig);
                *observed.entry(format!("({dh},{dp})")).or_insert(0) += 1;
                if dh < dp {
                    strict.insert((dh, dp));
                }
            }
        }
        let strict_pairs: Vec<(i64, i64)> = strict.into_iter().collect();
        let passed = delta_h_consistent && failures.is_empty() && strict_pairs.iter().all(|p| allowed.contains(p));
        failures.truncate(20);
        entries.push(CorollaryEntry {
            cover_type: ct,
            vectors: vectors.len(),
            subgroups: dihedral.iter().filter(|s| s.members() != h.members()).map(|s| s.label().unwrap_or("?").to_string()).collect(),
            observed,
            strict_pairs,
            allowed_pairs: allowed,
            delta_h_consistent,
            arithmetic_checks: checks,
            arithmetic_failures: failures,
            passed,
        });
    }
    let passed = entries.iter().all(|e| e.passed);
    Ok(CorollaryReport { schema: REPORT_SCHEMA, n, entries, passed })
}

#[derive(Clone, Debug, Serialize)]
pub struct RemarkReport {
    pub schema: u32,
    pub n: u32,
    pub first: String,
    pub second: String,
    /// Same `B_4 × Aut(G)` orbit (`None`: node cap reached).
    pub equivalent_under_aut_g: Option<bool>,
    /// Same `B_4 × Aut(G)_H` orbit.
    pub equivalent_under_aut_g_h: Option<bool>,
    pub witness_is_automorphism: bool,
    pub witness_preserves_h: bool,
    /// The witness sends one form into the pure braid orbit of the other.
    pub witness_connects: Option<bool>,
    pub complete: bool,
    pub passed: bool,
}

/// The two index-2 normal forms of the equivalence remark are equivalent as
/// Hurwitz vectors but not as admissible maps.
pub fn verify_remark_equivalence(n: u32, node_cap: usize) -> Result<RemarkReport> {
    let fixtures = Fixtures::embedded();
    let remark = &fixtures.equivalence_remark;
    let g = make_group(GroupType::Type1, n)?;
    let h = Subgroup::distinguished(&g).expect("type 1 has H");
    let a = fixtures.normal_form(&remark.first).expect("checked at load").to_vector(&g)?;
    let b = fixtures.normal_form(&remark.second).expect("checked at load").to_vector(&g)?;
    let all = automorphisms(&g, DEFAULT_ORDER_BOUND)?;
    let fixing = automorphisms_fixing(&g, &h, DEFAULT_ORDER_BOUND)?;
    let full = same_orbit(&a, &b, &all, node_cap)?;
    let restricted = same_orbit(&a, &b, &fixing, node_cap)?;
    let phi = fixtures.remark_witness(&g)?;
    let phi_inv = phi.inverse().expect("bijective");
    let connects = [
        same_orbit(&apply_aut(&a, &phi)?, &b, &[], node_cap)?,
        same_orbit(&apply_aut(&b, &phi)?, &a, &[], node_cap)?,
        same_orbit(&apply_aut(&a, &phi_inv)?, &b, &[], node_cap)?,
        same_orbit(&apply_aut(&b, &phi_inv)?, &a, &[], node_cap)?,
    ];
    let witness_connects = if connects.contains(&Some(true)) {
        Some(true)
    } else if connects.iter().all(Option::is_some) {
        Some(false)
    } else {
        None
    };
    let complete = full.is_some() && restricted.is_some() && witness_connects.is_some();
    let passed = full == Some(true)
        && restricted == Some(false)
        && phi.is_automorphism()
        && !phi.preserves(&h)
        && witness_connects == Some(true);
    Ok(RemarkReport {
        schema: REPORT_SCHEMA,
        n,
        first: remark.first.clone(),
        second: remark.second.clone(),
        equivalent_under_aut_g: full,
        equivalent_under_aut_g_h: restricted,
        witness_is_automorphism: phi.is_automorphism(),
        witness_preserves_h: phi.preserves(&h),
        witness_connects,
        complete,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::DEFAULT_NODE_CAP;

    #[test]
    fn nonexistence_small() {
        let r = verify_nonexistence(4).unwrap();
        assert!(r.passed);
        assert!(r.entries.iter().any(|e| e.group_type == GroupType::Type3 && e.n == 4));
        assert!(r.entries.iter().any(|e| e.cover_type == CoverType::IIIc && e.n == 3));
    }

    #[test]
    fn remark_at_four() {
        let r = verify_remark_equivalence(4, DEFAULT_NODE_CAP).unwrap();
        assert_eq!(r.equivalent_under_aut_g, Some(true));
        assert_eq!(r.equivalent_under_aut_g_h, Some(false));
        assert!(r.passed, "{r:#?}");
    }

    #[test]
    fn corollary_pairs_small() {
        let r = verify_corollary_pairs(4).unwrap();
        assert!(r.passed, "{r:#?}");
        let iiib = r.entries.iter().find(|e| e.cover_type == CoverType::IIIb).unwrap();
        assert!(!iiib.strict_pairs.contains(&(1, 3)));
    }
}
