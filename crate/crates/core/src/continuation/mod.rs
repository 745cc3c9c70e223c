//! Continuation of solutions across the walls `z_i = z_{i+1}`: the two-term
//! connection formula for `F_q`, the normalized two-variable solutions, the
//! continuation matrices on the full solution space and the Boltzmann
//! weights with the same inversion structure.
//!
//! "A solution at `s_i z`" always means the series attached to the relevant
//! Weyl element evaluated at the point with coordinates `i` and `i+1`
//! swapped. Powers of `z_i / z_{i+1}` use the principal branch, so ratios on
//! the negative real axis are rejected.

mod boltzmann;
mod braid;
mod connection;

pub use boltzmann::{boltzmann_w, weight_matrix, BoltzmannWeights};
pub use braid::{
    braid_generator, braid_matrix, dual_zone_residual, swap_coordinates, verify_braid_relations,
    BraidReport, ConnectionMatrix,
};
pub use connection::{
    check_path, fq_connection, normalized_a1, normalized_a1_continuation, theta_nonresonant,
    RESONANCE_TOL,
};
