//! Dense matrix numerics underpinning every geometric formula: symmetric
//! eigendecomposition, matrix exponential, principal logarithm, fractional
//! powers, SPD square root, polar decomposition, signature, and congruence
//! normalization to `J_p`.
//!
//! All operations are pure functions over immutable values.

mod eig;
mod expm;
mod factor;
mod logm;
mod matrix;

pub use eig::{eig_sym, sym_inverse, sym_spectral_map, SymEigen};
pub use expm::expm;
pub use factor::{
    abs_det_general, congruence_to_canonical, inverse_general, polar_decompose, signature_of,
};
pub use logm::{
    log_principal, log_principal_with_witness, log_spd_quotient, power_frac, power_spd,
    sqrt_and_inv_sqrt_spd, sqrt_spd,
};
pub use matrix::{GeneralMatrix, Signature, SymMatrix};
