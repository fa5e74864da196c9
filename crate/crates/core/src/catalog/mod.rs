//! Constructions of parallelepiped structures.

mod coset;
mod group_model;
mod iso;
mod pullback;
mod restrict;
mod tensor;

pub use coset::{coset_structure, CosetModel, CosetSpace};
pub use group_model::{abelian_structure, group_structure, GroupModel};
pub use iso::{find_isomorphism, is_isomorphism};
pub use pullback::{inverse_image, PullbackModel};
pub use restrict::{counterexample, counterexample_points, restrict, RestrictedModel, COUNTEREXAMPLE_MAX_P};
pub use tensor::{find_injection, tensor_embed, TensorEmbedding, TensorModel};
