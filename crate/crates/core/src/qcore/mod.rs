//! Scalar q-special functions: infinite products, `Gamma_q`, `Theta_q`,
//! double products, the bracket `[v]`, contraction kernels and the basic
//! hypergeometric series `F_q(a, b, c; z)`.

mod gamma;
mod kernels;
mod params;
mod products;
mod series;

pub use gamma::{pole_index, qgamma, rgamma_q};
pub use kernels::{bracket_v, g1, kernel_s, kernel_s_xr, kernel_t, kernel_t_xr};
pub use params::{Mode, QParams, XRParams, DEFAULT_EPS};
pub use products::{double_pochhammer, qpochhammer_inf, theta};
pub use series::{
    fq, fq_coefficients, fq_terminating_coeffs, qbinomial_series, qpochhammer_n,
    terminating_degree,
};

pub(crate) use products::{qpoch, theta_raw};

use crate::C64;

/// Tolerance on `|1 - q^{a+m}|` for treating `a` as the integer `-m`.
pub const POLE_TOL: f64 = 1e-10;

/// Principal-branch power `q^a` for real positive `q`.
pub fn qpow(q: f64, a: C64) -> C64 {
    (a * q.ln()).exp()
}
