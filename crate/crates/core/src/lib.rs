//! Reconstruction of the classification of pairs of dihedral subgroups
//! `H, H' ≅ D_n` of the mapping class group with nested fixed loci, by
//! exhaustive search over Hurwitz vectors.
//!
//! The crate is organised bottom-up:
//!
//! * [`group`]: the groups `D_n × Z/2`, `D_2n`, `D_n ⋊ Z/2` and friends,
//!   their subgroups and automorphisms;
//! * [`hurwitz`]: Hurwitz vectors, the braid and automorphism actions, orbit
//!   enumeration and Riemann–Hurwitz arithmetic;
//! * [`covers`]: admissibility for each cover type, restriction of a cover to
//!   an index-2 subgroup and the dimension bookkeeping;
//! * [`classify`]: full classification runs, table fixtures and reports.

pub mod classify;
pub mod covers;
mod error;
pub mod group;
pub mod hurwitz;
pub mod notation;

pub use error::{Error, Result};
