//! Harish Chandra series solutions: the coefficient recursion, evaluation in
//! the asymptotic zone, eigen-residual checks, leading coefficients of the
//! matrix-element normalizations, and residue-sum oracles for the contour
//! integrals behind them.

mod eval;
mod leading;
pub mod residue;
mod solve;
mod table;

pub use eval::{standard_points, Evaluation, TAIL_TOL};
pub use leading::{leading_coefficient, one_point_coefficient, root_factor, two_point_matrix_element};
pub use residue::{
    circle_integral, integral_rep_fq, integral_rep_fq_contour, integral_rep_fq_residues,
    integral_rep_fq_rhs, power_integral_binomial, power_integral_closed_form, power_integral_contour,
    residue_integral_prop6,
};
pub use solve::{default_truncation, kappa, solve_coefficients, HCSolution, NONDEGENERACY_TOL};
pub use table::{compositions, PowerTable};
