//! Exact arithmetic in `D_n` and its order-`4n` extensions, plus subgroup
//! and automorphism enumeration.

mod automorphism;
pub(crate) mod element;
mod finite;
mod subgroup;

pub use automorphism::{automorphisms, automorphisms_fixing, generating_subset, GroupMap, DEFAULT_ORDER_BOUND};
pub use element::{Elem, GroupElement};
pub use finite::{make_group, FiniteGroup, GroupDocument, GroupType};
pub use subgroup::{
    all_subgroups, index2_subgroups, named_subgroup, subgroup_closure, DihedralWitness, Subgroup,
};
