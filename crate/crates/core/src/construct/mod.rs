//! Constructions of LCPs: Plotkin-type sums, the `S_λ` combination, matrix-code
//! lifts and spreads.

pub mod lift;
pub mod plotkin;
pub mod s_lambda;
pub mod spread;

pub use lift::{flatten_column_major, lift_family, lift_matrix_code};
pub use plotkin::{
    plotkin, plotkin_lcp_pair, plotkin_matrices, plotkin_tilde, plotkin_tilde_matrices, plotkin_tilde_pair,
    BlockMatrices,
};
pub use s_lambda::{s_lambda, s_lambda_dual_lcp, s_lambda_lcd, s_lambda_lcp, s_lambda_matrices, HookOutcome};
pub use spread::{
    companion_matrix, irreducible_over, multiplication_matrices, spread_field, spread_matrix, spread_partition,
    spread_size, verify_spread, Spread, SpreadFailure, SpreadVerdict,
};
