//! The commuting difference operators `D^m_z(q, t)`, their eigenvalues,
//! application at points and on symmetric Laurent polynomials, and the
//! operator identities used by the series and integral constructions.

mod apply;
mod identities;
mod interp;
mod laurent;
mod spectral;

pub use apply::{eigenvalue_c, macdonald_apply_numeric, MacdonaldOperator, COINCIDENCE_TOL};
pub use identities::{
    contraction_kernel, duality_check, gauge_factor, gauge_identity_residual,
    kernel_identity_residual, weight_exchange_kernel, weight_exchange_residual,
};
pub use interp::{
    apply_operator_poly, decreasing_vectors, macdonald_apply_poly, macdonald_apply_poly_seeded,
};
pub use laurent::LaurentPoly;
pub use spectral::{rho, SpectralData, WeylElement};
