//! Dirichlet characters and L-functions.

pub mod character;
pub mod closed;
pub mod gamma;
pub mod hurwitz;
pub mod lseries;

pub use character::{
    all_characters, character_eta, character_mod24, characters_mod24, chi4, gauss_sum, gauss_sum_raw, jacobi_twist,
    kronecker_character, one3, one6, psi_n_character, DirichletCharacter,
};
pub use closed::{a_j, a_n, completed_lambda, completed_lambda_primitive, z_n_closed, CorrectionTable};
pub use gamma::{gamma, ln_gamma};
pub use hurwitz::{hurwitz_zeta, hurwitz_zeta_with_error};
pub use lseries::{
    dirichlet_l, dirichlet_l_truncated, l_removed_23, l_squarefree_restricted, riemann_zeta, zeta_ratio, LMethod,
    LSeriesValue, SquarefreeTable,
};
