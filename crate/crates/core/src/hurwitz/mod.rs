//! Hurwitz vectors and the actions of braids and automorphisms on them.

mod arith;
mod braid;
mod orbit;
mod vector;

pub use arith::{delta, orbifold_euler, riemann_hurwitz_genus};
pub use braid::{apply_aut, apply_moves, braid_move, normalize_triple, BraidMove, Direction};
pub use orbit::{orbit, same_orbit, OrbitClass, OrbitSearch, DEFAULT_NODE_CAP};
pub use vector::{GroupRef, HurwitzVector, HurwitzVectorDocument, Signature};
