use crate::error::{Error, Result};
use crate::C64;

use super::params::{Mode, QParams, XRParams};
use super::products::{double_poch, qpoch, theta_raw};
use super::DEFAULT_EPS;

fn xpow(x: f64, e: C64) -> C64 {
    (e * x.ln()).exp()
}

/// The bracket `[v] = x^{v^2/r - v} Theta_{x^{2r}}(x^{2v})`.
pub fn bracket_v(v: C64, xr: &XRParams) -> C64 {
    let (x, r) = (xr.x(), xr.r());
    xpow(x, v * v / r - v) * theta_raw(xpow(x, 2.0 * v), x.powf(2.0 * r))
}

/// `g_1(z) = {x^2 z}{x^{2r+2n-2} z} / ({x^{2r} z}{x^{2n} z})` with
/// `{z} = (z; x^{2r}, x^{2n})_inf`.
pub fn g1(z: C64, xr: &XRParams, n: usize) -> Result<C64> {
    if n < 2 {
        return Err(Error::Domain(format!("g1 needs n >= 2, got {n}")));
    }
    let (x, r, nf) = (xr.x(), xr.r(), n as f64);
    let (p1, p2) = (x.powf(2.0 * r), x.powf(2.0 * nf));
    let dp = |c: f64| double_poch(c * z, p1, p2, DEFAULT_EPS);
    let den = dp(x.powf(2.0 * r)) * dp(x.powf(2.0 * nf));
    if den.norm() == 0.0 {
        return Err(Error::Singular(format!("g1 denominator vanishes at z = {z}")));
    }
    Ok(dp(x * x) * dp(x.powf(2.0 * r + 2.0 * nf - 2.0)) / den)
}

/// `s(z) = (q^{(1+k)/2} z; q)_inf / (q^{(1-k)/2} z; q)_inf`.
pub fn kernel_s(z: C64, p: &QParams) -> C64 {
    let (q, k, e) = (p.q(), p.k(), p.eps());
    qpoch(q.powf((1.0 + k) / 2.0) * z, q, e) / qpoch(q.powf((1.0 - k) / 2.0) * z, q, e)
}

/// `t(z) = (1 - z)(q^{1-k} z; q)_inf / (q^k z; q)_inf`.
pub fn kernel_t(z: C64, p: &QParams) -> C64 {
    let (q, k, e) = (p.q(), p.k(), p.eps());
    (1.0 - z) * qpoch(q.powf(1.0 - k) * z, q, e) / qpoch(q.powf(k) * z, q, e)
}

fn require_mode_a(xr: &XRParams) -> Result<()> {
    match xr.mode() {
        Mode::ModeA => Ok(()),
        Mode::ModeB => Err(Error::Domain("the x-form kernels use r = 1/(1-k)".into())),
    }
}

/// `s(z)` written through `x`: `(x^{2r-1} z; x^{2r})_inf / (x z; x^{2r})_inf`.
pub fn kernel_s_xr(z: C64, xr: &XRParams) -> Result<C64> {
    require_mode_a(xr)?;
    let (x, r) = (xr.x(), xr.r());
    let b = x.powf(2.0 * r);
    Ok(qpoch(x.powf(2.0 * r - 1.0) * z, b, DEFAULT_EPS) / qpoch(x * z, b, DEFAULT_EPS))
}

/// `t(z)` written through `x`: `(1 - z)(x^2 z; x^{2r})_inf / (x^{2r-2} z; x^{2r})_inf`.
pub fn kernel_t_xr(z: C64, xr: &XRParams) -> Result<C64> {
    require_mode_a(xr)?;
    let (x, r) = (xr.x(), xr.r());
    let b = x.powf(2.0 * r);
    Ok((1.0 - z) * qpoch(x * x * z, b, DEFAULT_EPS) / qpoch(x.powf(2.0 * r - 2.0) * z, b, DEFAULT_EPS))
}
