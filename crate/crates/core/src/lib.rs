//! Linear complementary pairs (LCPs) of subspace codes over finite fields.
//!
//! Two subspace codes `𝒞, 𝒟 ⊆ P_q(n)` form an LCP when every `C ∈ 𝒞` meets
//! every `D ∈ 𝒟` only in the zero vector. The crate provides exact finite
//! field linear algebra, four equivalent LCP tests, constructions (Plotkin
//! sums, the `S_λ` combination, matrix-code lifts, spreads) and a one-
//! dimensional insertion-error channel that decodes with a spread-backed LCP.

pub mod algebra;
pub mod channel;
pub mod cli;
pub mod code;
pub mod construct;
pub mod error;
pub mod lcp;
pub mod subspace;

pub use algebra::{Field, FieldElement, Matrix, Polynomial};
pub use channel::{correct, detect, insert_error, simulate, CaseTag, ChannelInstance, DecodeResult};
pub use code::{LinearCode, SubspaceCode};
pub use error::{Error, Result};
pub use lcp::{check_lcp, is_lcp, Criterion, LcpReport};
pub use subspace::Subspace;
