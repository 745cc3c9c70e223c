use crate::error::{Error, Result};
use crate::C64;

use super::DEFAULT_EPS;

const MAX_FACTORS: usize = 50_000_000;

fn check_base(q: f64, name: &str) -> Result<()> {
    if q.is_finite() && q.abs() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} = {q} must satisfy |{name}| < 1")))
    }
}

/// `(z; q)_inf` for a base already known to satisfy `|q| < 1`.
pub(crate) fn qpoch(z: C64, q: f64, eps: f64) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    let mut term = z;
    let mut i = 0;
    while term.norm() >= eps && i < MAX_FACTORS {
        acc *= 1.0 - term;
        term *= q;
        i += 1;
    }
    // log(1 - u) ~ -u on the remaining factors
    acc * (-term / (1.0 - q)).exp()
}

/// The infinite product `(z; q)_inf = prod_{i >= 0} (1 - z q^i)`.
///
/// Factors are multiplied until `|z q^i| < eps`; the rest of the product is
/// replaced by its first-order logarithmic tail `exp(-z q^i / (1 - q))`.
pub fn qpochhammer_inf(z: C64, q: f64, eps: f64) -> Result<C64> {
    check_base(q, "q")?;
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("eps = {eps} must be positive")));
    }
    Ok(qpoch(z, q, eps))
}

pub(crate) fn theta_raw(z: C64, q: f64) -> C64 {
    qpoch(z, q, DEFAULT_EPS) * qpoch(q / z, q, DEFAULT_EPS) * qpoch(C64::new(q, 0.0), q, DEFAULT_EPS)
}

/// `Theta_q(z) = (z; q)_inf (q/z; q)_inf (q; q)_inf`.
pub fn theta(z: C64, q: f64) -> Result<C64> {
    check_base(q, "q")?;
    if z == C64::new(0.0, 0.0) {
        return Err(Error::Domain("theta is undefined at z = 0".into()));
    }
    Ok(theta_raw(z, q))
}

pub(crate) fn double_poch(z: C64, p1: f64, p2: f64, eps: f64) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    let mut row = z;
    let mut i = 0;
    while row.norm() >= eps && i < MAX_FACTORS {
        acc *= qpoch(row, p1, eps);
        row *= p2;
        i += 1;
    }
    acc * (-row / ((1.0 - p1) * (1.0 - p2))).exp()
}

/// The double product `prod_{i1, i2 >= 0} (1 - p1^i1 p2^i2 z)`.
///
/// Rows along `p2` are taken until `|z p2^i2| < eps`, each row being a
/// [`qpochhammer_inf`] in `p1`; the discarded rows contribute the tail
/// `exp(-z p2^I / ((1 - p1)(1 - p2)))`.
pub fn double_pochhammer(z: C64, p1: f64, p2: f64, eps: f64) -> Result<C64> {
    check_base(p1, "p1")?;
    check_base(p2, "p2")?;
    if !(eps > 0.0) {
        return Err(Error::Domain(format!("eps = {eps} must be positive")));
    }
    Ok(double_poch(z, p1, p2, eps))
}
