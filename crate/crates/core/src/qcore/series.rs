use crate::error::{Error, Result};
use crate::C64;

use super::gamma::pole_index;
use super::{qpow, DEFAULT_EPS};

const MAX_TERMS: usize = 1_000_000;

fn check_q(q: f64) -> Result<()> {
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("q = {q} must lie in (0, 1)")))
    }
}

/// The finite product `(z; q)_n`.
pub fn qpochhammer_n(z: C64, q: f64, n: usize) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    let mut term = z;
    for _ in 0..n {
        acc *= 1.0 - term;
        term *= q;
    }
    acc
}

fn term_ratio(a: C64, b: C64, c: C64, q: f64, j: usize) -> C64 {
    let j = j as f64;
    (1.0 - qpow(q, a + j)) * (1.0 - qpow(q, b + j)) / ((1.0 - q.powf(1.0 + j)) * (1.0 - qpow(q, c + j)))
}

/// Degree of the polynomial when the series terminates because `a` or `b`
/// is (within tolerance) a nonpositive integer.
pub fn terminating_degree(a: C64, b: C64, q: f64) -> Option<usize> {
    match (pole_index(a, q), pole_index(b, q)) {
        (Some(x), Some(y)) => Some(x.min(y) as usize),
        (Some(x), None) | (None, Some(x)) => Some(x as usize),
        (None, None) => None,
    }
}

fn check_denominator(c: C64, q: f64, upto: Option<usize>) -> Result<()> {
    if let Some(mc) = pole_index(c, q) {
        if upto.is_none_or(|m| (mc as usize) < m) {
            return Err(Error::Pole(-mc));
        }
    }
    Ok(())
}

/// First `count` coefficients of the basic hypergeometric series `F_q(a, b, c; z)`.
pub fn fq_coefficients(a: C64, b: C64, c: C64, q: f64, count: usize) -> Result<Vec<C64>> {
    check_q(q)?;
    let m = terminating_degree(a, b, q);
    let last = count.saturating_sub(1);
    check_denominator(c, q, Some(m.map_or(last, |m| m.min(last))))?;
    let mut out = Vec::with_capacity(count);
    let mut coef = C64::new(1.0, 0.0);
    for j in 0..count {
        if m.is_some_and(|m| j > m) {
            coef = C64::new(0.0, 0.0);
        }
        out.push(coef);
        coef *= term_ratio(a, b, c, q, j);
    }
    Ok(out)
}

/// Coefficients `1, c_1, ..., c_m` of a terminating series.
pub fn fq_terminating_coeffs(a: C64, b: C64, c: C64, q: f64) -> Result<Vec<C64>> {
    check_q(q)?;
    let m = terminating_degree(a, b, q)
        .ok_or_else(|| Error::Domain("series does not terminate".into()))?;
    fq_coefficients(a, b, c, q, m + 1)
}

fn horner(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

/// Sums `sum_n t_n` where `t_{n+1} = t_n * ratio(n) * z`, stopping once the
/// term times the geometric tail factor drops below `eps` (relative to the
/// partial sum when that exceeds one).
fn sum_ratio_series(z: C64, eps: f64, ratio: impl Fn(usize) -> C64) -> Result<C64> {
    let zn = z.norm();
    let mut sum = C64::new(1.0, 0.0);
    let mut term = C64::new(1.0, 0.0);
    for n in 0..MAX_TERMS {
        let step = ratio(n) * z;
        term *= step;
        sum += term;
        let rho = step.norm().max(zn);
        if rho < 1.0 && term.norm() / (1.0 - rho) < eps * sum.norm().max(1.0) {
            return Ok(sum);
        }
    }
    Err(Error::Convergence(format!(
        "series did not reach tolerance {eps} within {MAX_TERMS} terms at |z| = {zn}"
    )))
}

/// The basic hypergeometric series
/// `F_q(a, b, c; z) = sum_n prod_{j<n} (1-q^{a+j})(1-q^{b+j}) / ((1-q^{1+j})(1-q^{c+j})) z^n`.
///
/// Terminating series (`a` or `b` a nonpositive integer) are summed exactly
/// for any `z`; otherwise `|z| < 1` is required.
pub fn fq(a: C64, b: C64, c: C64, z: C64, q: f64, eps: f64) -> Result<C64> {
    check_q(q)?;
    if let Some(m) = terminating_degree(a, b, q) {
        check_denominator(c, q, Some(m))?;
        return Ok(horner(&fq_coefficients(a, b, c, q, m + 1)?, z));
    }
    check_denominator(c, q, None)?;
    if !(z.norm() < 1.0) {
        return Err(Error::Domain(format!(
            "non-terminating series diverges at |z| = {}",
            z.norm()
        )));
    }
    sum_ratio_series(z, eps, |j| term_ratio(a, b, c, q, j))
}

/// `(q^a z; q)_inf / (z; q)_inf` summed as `sum_n (q^a; q)_n / (q; q)_n z^n`.
pub fn qbinomial_series(a: C64, z: C64, q: f64) -> Result<C64> {
    check_q(q)?;
    if !(z.norm() < 1.0) {
        return Err(Error::Domain(format!(
            "binomial series diverges at |z| = {}",
            z.norm()
        )));
    }
    sum_ratio_series(z, DEFAULT_EPS, |j| {
        let j = j as f64;
        (1.0 - qpow(q, a + j)) / (1.0 - q.powf(1.0 + j))
    })
}
