use crate::error::{Error, Result};
use crate::C64;

use super::products::qpoch;
use super::{qpow, DEFAULT_EPS, POLE_TOL};

fn check_q(q: f64) -> Result<()> {
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("q = {q} must lie in (0, 1)")))
    }
}

/// Returns `Some(m)` when `a` sits within tolerance of the pole `-m`.
pub fn pole_index(a: C64, q: f64) -> Option<i64> {
    let m = (-a.re).round();
    if m < 0.0 {
        return None;
    }
    if (1.0 - qpow(q, a + m)).norm() < POLE_TOL {
        Some(m as i64)
    } else {
        None
    }
}

/// `Gamma_q(a) = (q; q)_inf (1 - q)^{1 - a} / (q^a; q)_inf`.
///
/// Near `a = -m` (within `|1 - q^{a + m}| < 1e-10`) this returns
/// [`Error::Pole`] carrying `-m`.
pub fn qgamma(a: C64, q: f64) -> Result<C64> {
    check_q(q)?;
    if let Some(m) = pole_index(a, q) {
        return Err(Error::Pole(-m));
    }
    let num = qpoch(C64::new(q, 0.0), q, DEFAULT_EPS) * ((1.0 - a) * (1.0 - q).ln()).exp();
    Ok(num / qpoch(qpow(q, a), q, DEFAULT_EPS))
}

/// `1 / Gamma_q(a)`, entire in `a`; exactly zero within the pole tolerance.
pub fn rgamma_q(a: C64, q: f64) -> Result<C64> {
    check_q(q)?;
    if pole_index(a, q).is_some() {
        return Ok(C64::new(0.0, 0.0));
    }
    let den = qpoch(C64::new(q, 0.0), q, DEFAULT_EPS) * ((1.0 - a) * (1.0 - q).ln()).exp();
    Ok(qpoch(qpow(q, a), q, DEFAULT_EPS) / den)
}
