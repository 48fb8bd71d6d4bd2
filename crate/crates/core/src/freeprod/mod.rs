//! Free products of two finite groups: reduced words, a verified finite
//! permutation quotient separating short words, and the almost homomorphism
//! of the free product assembled from almost homomorphisms of the factors.

pub mod monomial;
pub mod quotient;
pub mod word;
pub mod zeta;

pub use monomial::{nth_roots, translation_rank_bound, BlockMonomial};
pub use quotient::{build_separating_quotient, SearchLimits, SeparatingQuotient, WordCheck};
pub use word::{FreeProduct, ReducedWord, Syllable};
pub use zeta::{double_involutions, zeta_build, Zeta, ZetaOptions};
