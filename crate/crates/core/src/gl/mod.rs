//! GL-side combinatorics: linkage, ladders, Jacquet modules and derivatives.

pub mod derivative;
pub mod ladder;
pub mod lcrc;
pub mod segment;
pub mod tadic;

pub use derivative::{
    block_symbols, derivative_chain, derivative_sequence, max_left_derivative, max_m_derivative,
    max_m_derivative_sum, ChainResult, DerivGrid, Derivative, DerivativeSymbol,
};
pub use ladder::{mstar_full, mstar_ladder, mu_star_gl_terms, GLTerm, Ladder};
pub use lcrc::{lc, lc_rc_irreducible, rc, z01_first_block_dual, z01_first_block_irreducible};
pub use segment::{linked, precedes};
pub use tadic::tadic_reducible;
