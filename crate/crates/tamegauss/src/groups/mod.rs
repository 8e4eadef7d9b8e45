//! Split metacyclic groups, their characters and degree-0 Brauer
//! decompositions.

pub mod brauer;
pub mod characters;
pub mod metacyclic;
pub mod snf;

pub use brauer::{deg0_decompose, BrauerSolver, Deg0Decomp, Deg0Term, Family};
pub use characters::{induce, linear_characters, restrict, CharTable, ClassFn, IrrChar, LinearChar, RootSum, VirtualChar};
pub use metacyclic::{brauer_subgroups, Elem, MetacyclicGroup, Subgroup};
