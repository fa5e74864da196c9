//! Exact finite-group arithmetic.

pub mod abelian;
pub mod cube;
pub mod group;
pub mod subgroup;

pub use abelian::{abelian_invariants, isomorphic, subgroup_invariants, AbelianGroup, Invariants};
pub use cube::{cube_group, cube_membership, cube_vector, CubeKind, CubeOracle, TupleGroupElement, TupleSubgroup, VertexSet};
pub use group::{build_group, FiniteGroup, GroupSpec};
pub use subgroup::{center, commutator_series, Subgroup};
