//! Inputs shared by the benchmarks.

use std::sync::Arc;

use dihedral_loci::classify::setting;
use dihedral_loci::covers::CoverType;
use dihedral_loci::group::{FiniteGroup, GroupType, Subgroup};
use dihedral_loci::hurwitz::HurwitzVector;
use dihedral_loci::notation::parse_pair_list;

/// `D_n × Z/2` with its distinguished `H`.
pub fn type1(n: u32) -> (Arc<FiniteGroup>, Subgroup) {
    setting(CoverType::I, GroupType::Type1, n).expect("n >= 2")
}

/// The first cover-I normal form, valid for every `n`.
pub fn cover_i_vector(g: &Arc<FiniteGroup>) -> HurwitzVector {
    let entries = parse_pair_list("((y,1),(y,1),(yx,1),(yx,1),(e,1),(e,1))", g.n()).expect("well-formed");
    HurwitzVector::from_elements(g, &[], &entries).expect("product one")
}
