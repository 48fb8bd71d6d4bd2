//! Length functions on `GL_n(K)` and Jordan invariants.

pub mod jordan;
pub mod lengths;
pub mod report;
pub mod schedule;

pub use jordan::{jordan_type, JordanComponent, JordanType};
pub use lengths::{eigenvalues, len_hamming, len_jordan, len_rank};
pub use report::{iota, iota_alpha, iota_report, kappa, LengthReport};
pub use schedule::{f_map, f_schedule};
