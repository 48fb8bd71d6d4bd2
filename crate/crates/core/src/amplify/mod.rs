//! Amplification and conversion operators on almost homomorphisms. Every
//! operator recomputes the bounds it promises and fails with
//! `BoundViolated` if one does not hold.

pub mod convert;
pub mod product;
pub mod scalars;
pub mod tensor;
pub mod trace;

pub use convert::{inverse_transpose, to_projective, to_rank};
pub use product::direct_product_hom;
pub use scalars::{restrict_hom, specialize_hom, SpecializedHom};
pub use tensor::{amplify_jordan, amplify_rank, rank_amplify, tensor_square_iterate, tower_dim, DEFAULT_DIM_CAP};
pub use trace::{AmplifyTrace, BoundCheck, StageRecord};
