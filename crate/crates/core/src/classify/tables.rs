use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::fixtures::{parse_dihedral_vector, Fixtures, TableFixture, TableRow};
use super::REPORT_SCHEMA;
use crate::covers::{is_admissible, restrict_index2, CoverType, RestrictedCover};
use crate::error::{Error, Result};
use crate::group::{automorphisms, make_group, named_subgroup, Elem, FiniteGroup, GroupMap, GroupType, Subgroup, DEFAULT_ORDER_BOUND};
use crate::hurwitz::{delta, riemann_hurwitz_genus, same_orbit, HurwitzVector};
use crate::notation::format_vector;

/// One compared cell.
#[derive(Clone, Debug, Serialize)]
pub struct CellCheck {
    pub expected: String,
    pub computed: String,
    pub passed: bool,
    /// How the comparison was made (`exact`, `orbit`, `profile`).
    pub method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// `false` when an orbit search hit the node cap before deciding.
    #[serde(skip_serializing_if = "is_true")]
    pub decided: bool,
}

fn is_true(b: &bool) -> bool {
    *b
}

impl CellCheck {
    fn exact(expected: impl ToString, computed: impl ToString) -> CellCheck {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let passed = expected == computed;
        CellCheck { expected, computed, passed, method: "exact", detail: None, decided: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub subgroup: String,
    pub condition: String,
    pub v_quot: CellCheck,
    pub genus: CellCheck,
    pub delta: CellCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v_prime: Option<CellCheck>,
    pub passed: bool,
}

impl RowReport {
    fn cells(&self) -> impl Iterator<Item = &CellCheck> {
        [&self.v_quot, &self.genus, &self.delta].into_iter().chain(self.v_prime.as_ref())
    }

    pub fn decided(&self) -> bool {
        self.cells().all(|c| c.decided)
    }

    pub fn mismatched_cells(&self) -> usize {
        self.cells().filter(|c| !c.passed).count()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableReport {
    pub id: String,
    pub cover_type: CoverType,
    pub vector: String,
    pub admissible: bool,
    /// The restriction to `H` against the section heading and printed `v_H`.
    pub heading: RowReport,
    pub rows: Vec<RowReport>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TablesReport {
    pub schema: u32,
    pub n: u32,
    pub tables: Vec<TableReport>,
    /// Tables whose applicability predicate fails for this `n`.
    pub not_applicable: Vec<String>,
    pub notes: Vec<String>,
    pub complete: bool,
    pub passed: bool,
}

impl TablesReport {
    pub fn mismatched_cells(&self) -> usize {
        self.tables.iter().flat_map(|t| std::iter::once(&t.heading).chain(&t.rows)).map(RowReport::mismatched_cells).sum()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&TableReport, &RowReport)> {
        self.tables.iter().flat_map(|t| t.rows.iter().map(move |r| (t, r)))
    }
}

fn bits(v: &[u8]) -> String {
    format!("({})", v.iter().map(u8::to_string).collect::<Vec<_>>().join(","))
}

/// Recomputes every applicable table for `n` and compares it cell by cell.
pub fn verify_tables(n: u32, node_cap: usize) -> Result<TablesReport> {
    let fixtures = Fixtures::embedded();
    let g = make_group(GroupType::Type1, n)?;
    let dn = make_group(GroupType::Dihedral, n)?;
    let dn_auts = automorphisms(&dn, DEFAULT_ORDER_BOUND)?;
    let h = Subgroup::distinguished(&g).expect("type 1 has H");

    let mut tables = Vec::new();
    let mut not_applicable = Vec::new();
    for table in &fixtures.tables {
        if !table.condition.holds(n) {
            not_applicable.push(table.id.clone());
            continue;
        }
        tables.push(verify_table(fixtures, table, &g, &h, &dn, &dn_auts, node_cap)?);
    }

    let mut notes = Vec::new();
    let even_tables = fixtures.tables.iter().filter(|t| !t.condition.holds(3) && !t.condition.holds(5)).count();
    if n % 2 == 1 && even_tables > 0 {
        let verified: Vec<&str> = tables.iter().map(|t| t.id.as_str()).collect();
        notes.push(format!("no applicable even-n tables; n-odd tables verified: {}", verified.join(", ")));
    }
    let complete = tables.iter().all(|t| t.heading.decided() && t.rows.iter().all(RowReport::decided));
    let passed = complete && tables.iter().all(|t| t.passed);
    Ok(TablesReport { schema: REPORT_SCHEMA, n, tables, not_applicable, notes, complete, passed })
}

fn verify_table(
    fixtures: &Fixtures,
    table: &TableFixture,
    g: &Arc<FiniteGroup>,
    h: &Subgroup,
    dn: &Arc<FiniteGroup>,
    dn_auts: &[GroupMap],
    node_cap: usize,
) -> Result<TableReport> {
    let nf = fixtures.normal_form(&table.id).expect("checked at load");
    let ct = nf.cover_type;
    let v = nf.to_vector(g)?;
    let admissible = v.product_one() && is_admissible(&v, ct, h)?;

    let heading = {
        let r = restrict_index2(&v, h)?;
        let pattern = ct.quotient_pattern().expect("tables are for index-2 cover types");
        let v_prime = table.v_h.as_deref().map(|text| compare_restriction(&r, text, dn, dn_auts, node_cap)).transpose()?;
        row_report("H", "all", &r, &pattern, ct.genus_h(), ct.delta_h(), v_prime)
    };

    let mut rows = Vec::new();
    for row in table.rows.iter().filter(|r| fixtures.row_applies(table, r, g.n())) {
        rows.push(verify_row(row, &v, g, dn, dn_auts, node_cap)?);
    }
    let passed = admissible && heading.passed && rows.iter().all(|r| r.passed);
    Ok(TableReport { id: table.id.clone(), cover_type: ct, vector: nf.vector.clone(), admissible, heading, rows, passed })
}

fn verify_row(
    row: &TableRow,
    v: &HurwitzVector,
    g: &Arc<FiniteGroup>,
    dn: &Arc<FiniteGroup>,
    dn_auts: &[GroupMap],
    node_cap: usize,
) -> Result<RowReport> {
    let s = named_subgroup(g, &row.subgroup).ok_or_else(|| Error::Fixture(format!("unknown subgroup {}", row.subgroup)))?;
    let r = restrict_index2(v, &s)?;
    let v_prime = compare_restriction(&r, &row.v_prime, dn, dn_auts, node_cap)?;
    Ok(row_report(&row.subgroup, &row.condition.to_string(), &r, &row.v_quot, row.genus, row.delta, Some(v_prime)))
}

fn row_report(
    subgroup: &str,
    condition: &str,
    r: &RestrictedCover,
    v_quot: &[u8],
    genus: u32,
    delta_expected: i64,
    v_prime: Option<CellCheck>,
) -> RowReport {
    let mut row = RowReport {
        subgroup: subgroup.to_string(),
        condition: condition.to_string(),
        v_quot: CellCheck::exact(bits(v_quot), bits(r.quotient())),
        genus: CellCheck::exact(genus, r.genus()),
        delta: CellCheck::exact(delta_expected, r.delta()),
        v_prime,
        passed: false,
    };
    row.passed = row.mismatched_cells() == 0;
    row
}

/// Compares the computed restriction with a printed `D_n` vector: by
/// `B_r × Aut(D_n)` orbit in genus 0, by invariant profile otherwise.
fn compare_restriction(
    r: &RestrictedCover,
    printed: &str,
    dn: &Arc<FiniteGroup>,
    dn_auts: &[GroupMap],
    node_cap: usize,
) -> Result<CellCheck> {
    let computed = r.dihedral_vector()?;
    // the identification targets a fresh copy of D_n; move it onto `dn`
    let computed = computed.transport(dn, |e| e);
    let expected = parse_dihedral_vector(printed, dn)?;
    let mut cell = CellCheck {
        expected: printed.to_string(),
        computed: format_vector(&computed, false),
        passed: false,
        method: if computed.genus() == 0 { "orbit" } else { "profile" },
        detail: None,
        decided: true,
    };
    if let Some(problem) = validity_problem(&expected) {
        cell.detail = Some(problem);
        return Ok(cell);
    }
    if expected.signature() != computed.signature() {
        cell.detail = Some(format!("signature {} vs computed {}", expected.signature(), computed.signature()));
        return Ok(cell);
    }
    if computed.genus() == 0 {
        match same_orbit(&computed, &expected, dn_auts, node_cap)? {
            Some(true) => cell.passed = true,
            Some(false) => cell.detail = Some("different B_r × Aut(D_n) orbits".into()),
            None => {
                cell.decided = false;
                cell.detail = Some(format!("node cap {node_cap} reached"));
            }
        }
    } else {
        let (a, b) = (Profile::of(&expected, dn_auts)?, Profile::of(&computed, dn_auts)?);
        cell.passed = a == b;
        if !cell.passed {
            cell.detail = Some(format!("profile {a:?} vs computed {b:?}"));
        }
    }
    Ok(cell)
}

/// Why a printed vector is not a valid generating vector, if it is not.
///
/// The commutator convention for handles is not fixed by the source, so both
/// `aba⁻¹b⁻¹` and `a⁻¹b⁻¹ab` are accepted.
fn validity_problem(v: &HurwitzVector) -> Option<String> {
    let g = v.group();
    let branch_product = g.product(v.branches().iter().copied());
    let standard = g.product(v.handles().iter().map(|&(a, b)| g.commutator(a, b)));
    let other = g.product(v.handles().iter().map(|&(a, b)| g.commutator(g.inv(a), g.inv(b))));
    let one = g.identity();
    if g.mul(standard, branch_product) != one && g.mul(other, branch_product) != one {
        return Some("printed entries violate the product-one relation".into());
    }
    if !v.generates() {
        return Some("printed entries do not generate D_n".into());
    }
    None
}

/// Invariants of a positive-genus vector that do not depend on the marking.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Profile {
    signature: String,
    genus_c: u32,
    delta: i64,
    /// Least sorted list of conjugacy-class ids over `Aut(D_n)`.
    classes: Vec<usize>,
    generates: bool,
}

impl Profile {
    fn of(v: &HurwitzVector, auts: &[GroupMap]) -> Result<Profile> {
        let g = v.group();
        let sig = v.signature();
        let class_id = |e: Elem| g.iter().map(|x| g.conjugate(e, x)).min().expect("nonempty").idx();
        let classes = auts
            .iter()
            .map(|phi| {
                let mut c: Vec<usize> = v.branches().iter().map(|&e| class_id(phi.apply(e))).collect();
                c.sort_unstable();
                c
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .next()
            .unwrap_or_default();
        Ok(Profile {
            genus_c: riemann_hurwitz_genus(g.order(), &sig)?,
            delta: delta(&sig),
            signature: sig.to_string(),
            classes,
            generates: v.generates(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hurwitz::DEFAULT_NODE_CAP;

    #[test]
    fn odd_n_only_first_cover_i_table() {
        let r = verify_tables(7, DEFAULT_NODE_CAP).unwrap();
        let ids: Vec<&str> = r.tables.iter().map(|t| t.id.as_str()).collect();
        assert!(ids.contains(&"I-1"));
        assert!(!ids.contains(&"I-2"));
        let first = r.tables.iter().find(|t| t.id == "I-1").unwrap();
        assert_eq!(first.rows.len(), 1);
        assert!(first.passed, "{first:#?}");
        assert!(r.notes[0].starts_with("no applicable even-n tables"));
    }

    #[test]
    fn first_cover_i_table_at_six() {
        let r = verify_tables(6, DEFAULT_NODE_CAP).unwrap();
        let t = r.tables.iter().find(|t| t.id == "I-1").unwrap();
        assert_eq!(t.rows.len(), 5);
        // the printed H_{1,4} row has four branch points outside H' yet genus 0,
        // and the printed H_{1,5} entries do not generate D_n when m is odd
        let failing: Vec<&str> = t.rows.iter().filter(|r| !r.passed).map(|r| r.subgroup.as_str()).collect();
        assert_eq!(failing, ["H_{1,4}", "H_{1,5}"]);
        let h14 = &t.rows[2];
        assert_eq!((h14.genus.computed.as_str(), h14.delta.computed.as_str()), ("1", "4"));
        assert!(h14.v_quot.passed);
    }

    #[test]
    fn mismatches_at_six_are_exactly_the_known_misprints() {
        let r = verify_tables(6, DEFAULT_NODE_CAP).unwrap();
        assert!(r.complete);
        let failing: Vec<(String, String)> =
            r.rows().filter(|(_, row)| !row.passed).map(|(t, row)| (t.id.clone(), row.subgroup.clone())).collect();
        let expected = [
            ("I-1", "H_{1,4}"),
            ("I-1", "H_{1,5}"),
            ("I-2", "H_{1,5}"),
            ("I-3", "H_{1,3}"),
            ("I-3", "H_{1,4}"),
            ("II-1", "H_{1,4}"),
            ("IIIa-1", "H_{1,2}"),
        ];
        assert_eq!(failing, expected.map(|(a, b)| (a.to_string(), b.to_string())));
        assert!(r.tables.iter().all(|t| t.heading.passed));
    }

    #[test]
    fn profile_ignores_marking() {
        let dn = make_group(GroupType::Dihedral, 6).unwrap();
        let auts = automorphisms(&dn, DEFAULT_ORDER_BOUND).unwrap();
        let a = parse_dihedral_vector("(e,yx;y,y,y,y)", &dn).unwrap();
        let b = parse_dihedral_vector("(e,y;yx,yx,yx,yx)", &dn).unwrap();
        let c = parse_dihedral_vector("(e,yx;y,y,yx,yx)", &dn).unwrap();
        assert_eq!(Profile::of(&a, &auts).unwrap(), Profile::of(&b, &auts).unwrap());
        assert_ne!(Profile::of(&a, &auts).unwrap(), Profile::of(&c, &auts).unwrap());
    }
}
