//! Contour integrals of theta-function ratios, evaluated both by summing
//! residues at the poles `q^{(1-k)/2 + m}` and by trapezoidal quadrature on
//! a circle, together with their closed forms.

use crate::error::{Error, Result};
use crate::qcore::{fq, qgamma, qpoch, qpochhammer_n, qpow, rgamma_q, theta_raw, QParams};
use crate::C64;

const MAX_TERMS: usize = 200_000;
const MAX_NODES: usize = 1 << 18;

fn r(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `(1 / 2 pi i) \oint_{|y| = radius} g(y) dy` by the trapezoidal rule,
/// doubling the node count until two successive values agree to `tol`
/// (relative).
pub fn circle_integral<F: Fn(C64) -> C64>(g: F, radius: f64, tol: f64) -> Result<C64> {
    let node = |theta: f64| {
        let y = C64::from_polar(radius, theta);
        g(y) * y
    };
    let mut m = 32usize;
    let (mut sum, mut mass) = (C64::new(0.0, 0.0), 0.0);
    for j in 0..m {
        let v = node(std::f64::consts::TAU * j as f64 / m as f64);
        sum += v;
        mass += v.norm();
    }
    let mut prev = sum / m as f64;
    while m < MAX_NODES {
        for j in 0..m {
            let v = node(std::f64::consts::TAU * (2 * j + 1) as f64 / (2 * m) as f64);
            sum += v;
            mass += v.norm();
        }
        m *= 2;
        let cur = sum / m as f64;
        // the mean modulus on the circle sets the scale when the integral is small
        let scale = cur.norm().max(mass / m as f64).max(f64::MIN_POSITIVE);
        if (cur - prev).norm() <= tol * scale {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Convergence(format!(
        "circle quadrature did not settle within {MAX_NODES} nodes"
    )))
}

/// Sums `sum_m term(m)` whose terms eventually shrink by `rho` per step.
fn sum_residues(rho: f64, eps: f64, mut term: impl FnMut(usize) -> C64) -> Result<C64> {
    if !(rho < 1.0) {
        return Err(Error::Convergence(format!(
            "residue series diverges (asymptotic ratio {rho})"
        )));
    }
    let mut sum = C64::new(0.0, 0.0);
    let mut prev = f64::INFINITY;
    for m in 0..MAX_TERMS {
        let t = term(m);
        sum += t;
        let ratio = (t.norm() / prev).max(rho);
        prev = t.norm();
        if m > 2 && ratio < 1.0 && t.norm() * ratio / (1.0 - ratio) <= eps * sum.norm() {
            return Ok(sum);
        }
    }
    Err(Error::Convergence(format!(
        "residue series not settled after {MAX_TERMS} terms"
    )))
}

fn beta(p: &QParams) -> f64 {
    p.q().powf((1.0 - p.k()) / 2.0)
}

/// Integrand `y^n Theta(q^{l21 + (1+k)/2} / y) / Theta(q^{(1+k)/2} / y) (q^{(1+k)/2}/y; q) / (q^{(1-k)/2}/y; q)`
/// of the one-variable integral, to be integrated against `dy / (2 pi i y)`.
pub fn power_integrand(y: C64, n_pow: u32, lam12: C64, p: &QParams) -> C64 {
    let (q, k, e) = (p.q(), p.k(), p.eps());
    let a = q.powf((1.0 + k) / 2.0);
    let b = qpow(q, -lam12 + (1.0 + k) / 2.0);
    y.powu(n_pow) * theta_raw(b / y, q) / theta_raw(a / y, q) * qpoch(a / y, q, e) / qpoch(beta(p) / y, q, e)
}

/// The one-variable integral summed over its residues at `y_m = q^{(1-k)/2 + m}`.
///
/// With `w = q^{l21 + k}` the residues are
/// `y_m^n (q^{l12} beta y_m; q) / (beta y_m; q) (w; q) / (q; q) prod_{i<=m} (q^i - w)/(q^i - 1)`,
/// which converge when `|w| q^n < 1`.
pub fn residue_integral_prop6(n_pow: u32, lam12: C64, p: &QParams) -> Result<C64> {
    let (q, k, e) = (p.q(), p.k(), p.eps());
    let bt = beta(p);
    let w = qpow(q, -lam12 + k);
    let front = qpoch(w, q, e) / qpoch(r(q), q, e);
    let ql12 = qpow(q, lam12);
    let mut prod = r(1.0);
    sum_residues(w.norm() * q.powi(n_pow as i32), e, |m| {
        if m > 0 {
            let qi = q.powi(m as i32);
            prod *= (qi - w) / (qi - 1.0);
        }
        let y = bt * q.powi(m as i32);
        front * prod * y.powi(n_pow as i32) * qpoch(ql12 * bt * y, q, e) / qpoch(r(bt * y), q, e)
    })
}

/// Closed form
/// `Gamma_q(1-k) / (Gamma_q(l21+1) Gamma_q(l12+1-k)) * Gamma_q(l21+k+n) Gamma_q(l21+1) / (Gamma_q(l21+k) Gamma_q(l21+n+1)) * q^{(1-k)n/2}`.
pub fn power_integral_closed_form(n_pow: u32, lam12: C64, p: &QParams) -> Result<C64> {
    let (q, k) = (p.q(), p.k());
    let l21 = -lam12;
    let nf = n_pow as f64;
    let front = qgamma(r(1.0 - k), q)? * rgamma_q(lam12 + 1.0 - k, q)?;
    let ratio = qgamma(l21 + k + nf, q)? * rgamma_q(l21 + k, q)? * rgamma_q(l21 + nf + 1.0, q)?;
    Ok(front * ratio * q.powf((1.0 - k) * nf / 2.0))
}

/// The same integral after binomial expansion of the theta ratio:
/// `sum_m (q^{l12}; q)_m / (q; q)_m beta^{2m+n} (q^{l21+k}; q)_{m+n} / (q; q)_{m+n}`.
pub fn power_integral_binomial(n_pow: u32, lam12: C64, p: &QParams) -> Result<C64> {
    let (q, k, e) = (p.q(), p.k(), p.eps());
    let bt = beta(p);
    let ql12 = qpow(q, lam12);
    let w = qpow(q, -lam12 + k);
    let n = n_pow as usize;
    let mut left = r(1.0);
    let mut right = qpochhammer_n(w, q, n) / qpochhammer_n(r(q), q, n);
    sum_residues(bt * bt, e, |m| {
        if m > 0 {
            let j = (m - 1) as i32;
            left *= (1.0 - ql12 * q.powi(j)) / (1.0 - q.powi(j + 1));
            let jj = (m + n - 1) as i32;
            right *= (1.0 - w * q.powi(jj)) / (1.0 - q.powi(jj + 1));
        }
        left * right * bt.powi(2 * m as i32 + n as i32)
    })
}

/// The one-variable integral by quadrature on the unit circle.
pub fn power_integral_contour(n_pow: u32, lam12: C64, p: &QParams) -> Result<C64> {
    circle_integral(|y| power_integrand(y, n_pow, lam12, p) / y, 1.0, 1e-14)
}

/// Integrand of the representation of `F_q`, in `u = y / z1` with
/// `X = z1 / z2`, against `du / (2 pi i u)`:
/// `Theta(q^{l21+(1+k)/2}/u) / Theta(q^{(1+k)/2}/u) (q^{(1+k)/2}/u; q)/(q^{(1-k)/2}/u; q) (q^{(1+k)/2} u X; q)/(q^{(1-k)/2} u X; q)`.
pub fn fq_integrand(u: C64, lam: [C64; 2], x: C64, p: &QParams) -> C64 {
    let (q, k, e) = (p.q(), p.k(), p.eps());
    let a = q.powf((1.0 + k) / 2.0);
    let bt = beta(p);
    let b = qpow(q, lam[1] - lam[0] + (1.0 + k) / 2.0);
    theta_raw(b / u, q) / theta_raw(a / u, q) * qpoch(a / u, q, e) / qpoch(bt / u, q, e) * qpoch(a * u * x, q, e)
        / qpoch(bt * u * x, q, e)
}

fn ratio_in_zone(z1: C64, z2: C64, p: &QParams) -> Result<C64> {
    if z2.norm() == 0.0 {
        return Err(Error::Zone("z2 must be nonzero".into()));
    }
    let x = z1 / z2;
    if !(x.norm() * p.q().powf(1.0 - p.k()) < 1.0) {
        return Err(Error::Zone(format!(
            "|q^(1-k) z1/z2| = {} must be below 1",
            x.norm() * p.q().powf(1.0 - p.k())
        )));
    }
    Ok(x)
}

/// The right-hand side `Gamma_q(1-k) / (Gamma_q(l12+1-k) Gamma_q(l21+1)) F_q(k, l21+k, l21+1, q^{1-k} z1/z2)`.
pub fn integral_rep_fq_rhs(lam: [C64; 2], z1: C64, z2: C64, p: &QParams) -> Result<C64> {
    let (q, k) = (p.q(), p.k());
    let x = ratio_in_zone(z1, z2, p)?;
    let (l12, l21) = (lam[0] - lam[1], lam[1] - lam[0]);
    let front = qgamma(r(1.0 - k), q)? * rgamma_q(l12 + 1.0 - k, q)? * rgamma_q(l21 + 1.0, q)?;
    Ok(front * fq(r(k), l21 + k, l21 + 1.0, q.powf(1.0 - k) * x, q, p.eps())?)
}

/// Residue sum of the `F_q` representation; converges when `|q^{l21+k}| < 1`.
pub fn integral_rep_fq_residues(lam: [C64; 2], z1: C64, z2: C64, p: &QParams) -> Result<C64> {
    let (q, k, e) = (p.q(), p.k(), p.eps());
    let x = ratio_in_zone(z1, z2, p)?;
    let l12 = lam[0] - lam[1];
    let w = qpow(q, -l12 + k);
    let front = qpoch(w, q, e) / qpoch(r(q), q, e);
    let top = qpow(q, l12 + 1.0 - k);
    let mut prod = r(1.0);
    sum_residues(w.norm(), e, |m| {
        let qm = q.powi(m as i32);
        if m > 0 {
            prod *= (qm - w) / (qm - 1.0);
        }
        let lo = q.powf(1.0 - k) * qm;
        front * prod * qpoch(top * qm, q, e) / qpoch(r(lo), q, e) * qpoch(qm * q * x, q, e) / qpoch(lo * x, q, e)
    })
}

/// The `F_q` representation by quadrature on a circle separating the poles
/// `q^{(1-k)/2 + m}` from the rest.
pub fn integral_rep_fq_contour(lam: [C64; 2], z1: C64, z2: C64, p: &QParams) -> Result<C64> {
    let x = ratio_in_zone(z1, z2, p)?;
    let bt = beta(p);
    let outer = (1.0 / bt).min(if x.norm() > 0.0 { 1.0 / (bt * x.norm()) } else { f64::INFINITY });
    let radius = (bt * outer).sqrt();
    circle_integral(|u| fq_integrand(u, lam, x, p) / u, radius, 1e-14)
}

/// Ratio `|q^{l21+k}|` above which [`integral_rep_fq`] switches from residues
/// to quadrature.
pub const RESIDUE_RATIO_LIMIT: f64 = 0.9;

/// The `F_q` representation, by residues when they converge quickly and by
/// contour quadrature otherwise.
pub fn integral_rep_fq(lam: [C64; 2], z1: C64, z2: C64, p: &QParams) -> Result<C64> {
    let w = qpow(p.q(), lam[1] - lam[0] + p.k());
    if w.norm() < RESIDUE_RATIO_LIMIT {
        integral_rep_fq_residues(lam, z1, z2, p)
    } else {
        integral_rep_fq_contour(lam, z1, z2, p)
    }
}
