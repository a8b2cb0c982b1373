use std::sync::Arc;

use crate::error::Result;
use crate::group::{make_group, Elem, FiniteGroup, GroupType, Subgroup};

/// Concrete groups `G ⊃ H ≅ D_n` with `G/H ≅ (Z/2)²`, used as the search
/// scope for cover type III-c:
///
/// * `D_n × (Z/2)²`,
/// * `D_{2n} × Z/2` with `H = <z², y> × {0}` (n even),
/// * the type-3 extension times a central `Z/2` (n = 4h, h odd).
///
/// In each case `H` is the set of elements with extension coordinate 0.
pub fn iiic_catalog(n: u32) -> Result<Vec<(Arc<FiniteGroup>, Subgroup)>> {
    [GroupType::Type1, GroupType::Type2, GroupType::Type3]
        .into_iter()
        .filter(|kind| kind.admits(n))
        .map(|kind| iiic_extension(kind, n))
        .collect()
}

/// The catalog entry built on the group of type `kind`: that group times a
/// further `Z/2`, with `H` the elements of extension coordinate 0.
pub fn iiic_extension(kind: GroupType, n: u32) -> Result<(Arc<FiniteGroup>, Subgroup)> {
    let name = match kind {
        GroupType::Type2 => format!("D_{} x Z/2", 2 * n),
        GroupType::Type3 => format!("(D_{n} x| Z/2) x Z/2"),
        _ => format!("D_{n} x (Z/2)^2"),
    };
    let base = make_group(kind, n)?;
    let g = Arc::new(base.times_z2(name));
    let members: Vec<Elem> = g.iter().filter(|&e| g.element(e).ext == 0).collect();
    let h = Subgroup::from_members(&g, &members, Some("H".into()))?;
    Ok((g, h))
}
