use crate::error::{Error, Result};
use crate::operators::SpectralData;
use crate::qcore::{fq, pole_index, qgamma, qpow, Mode, QParams};
use crate::C64;

fn root_gamma(a: C64, q: f64, root: (usize, usize)) -> Result<C64> {
    if let Some(m) = pole_index(a, q) {
        return Err(Error::RootPole { root, at: -m });
    }
    qgamma(a, q)
}

/// Factor attached to a positive root with pairing `d = (w lambda, alpha)`.
///
/// ModeA: `q^{d(d+k)/2} Gamma_q(1-k) / (Gamma_q(d+1) Gamma_q(-d+1-k))`;
/// ModeB: `q^{d(d+1-k)/2} Gamma_q(k) / (Gamma_q(d+1) Gamma_q(-d+k))`.
/// `root` holds the 1-based pair `(i, j)` of `e_i - e_j` for error reports.
pub fn root_factor(d: C64, p: &QParams, mode: Mode, root: (usize, usize)) -> Result<C64> {
    let (q, k) = (p.q(), p.k());
    let (shift, top) = match mode {
        Mode::ModeA => (k, 1.0 - k),
        Mode::ModeB => (1.0 - k, k),
    };
    let num = qpow(q, d * (d + shift) / 2.0) * root_gamma(C64::new(top, 0.0), q, root)?;
    let den = root_gamma(d + 1.0, q, root)? * root_gamma(-d + top, q, root)?;
    Ok(num / den)
}

/// Leading asymptotic coefficient `(-1)^{n(n-1)/2} prod_{i<j} root_factor(eta_i - eta_j)`
/// of the matrix-element normalization selected by `mode`.
pub fn leading_coefficient(s: &SpectralData, p: &QParams, mode: Mode) -> Result<C64> {
    let n = s.n();
    let eta = s.eta();
    let mut acc = C64::new(if (n * (n - 1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 }, 0.0);
    for i in 0..n {
        for j in i + 1..n {
            acc *= root_factor(eta[i] - eta[j], p, mode, (i + 1, j + 1))?;
        }
    }
    Ok(acc)
}

/// One-point coefficient `(-1)^{i-1} prod_{s<i} root_factor_A(lambda_i - lambda_s)`
/// for 1-based `i`.
pub fn one_point_coefficient(lambda: &[C64], i: usize, p: &QParams) -> Result<C64> {
    if i == 0 || i > lambda.len() {
        return Err(Error::Domain(format!("index {i} outside 1..={}", lambda.len())));
    }
    let mut acc = C64::new(if i % 2 == 1 { 1.0 } else { -1.0 }, 0.0);
    for s in 1..i {
        acc *= root_factor(lambda[i - 1] - lambda[s - 1], p, Mode::ModeA, (i, s))?;
    }
    Ok(acc)
}

/// Two-point matrix element for the pair `(i, j)` (1-based, `i != j`),
/// evaluated at `(z1, z2)`:
/// `(-1)^{i+j} prod_{s<i, s!=j} f(lambda_i - lambda_s) prod_{s<j, s!=i} f(lambda_j - lambda_s) f(lambda_i - lambda_j)`
/// `* z1^{lambda_i + k/2} z2^{lambda_j - k/2} F_q(k, l + k, l + 1, q^{1-k} z1/z2)`
/// with `l = lambda_i - lambda_j` and `f` the ModeA root factor.
pub fn two_point_matrix_element(lambda: &[C64], i: usize, j: usize, z1: C64, z2: C64, p: &QParams) -> Result<C64> {
    let n = lambda.len();
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::Domain(format!("need distinct indices in 1..={n}, got ({i}, {j})")));
    }
    let (q, k) = (p.q(), p.k());
    let f = |a: usize, b: usize| root_factor(lambda[a - 1] - lambda[b - 1], p, Mode::ModeA, (a, b));
    let mut c = C64::new(if (i + j).is_multiple_of(2) { 1.0 } else { -1.0 }, 0.0);
    for s in (1..i).filter(|&s| s != j) {
        c *= f(i, s)?;
    }
    for s in (1..j).filter(|&s| s != i) {
        c *= f(j, s)?;
    }
    c *= f(i, j)?;
    let l = lambda[i - 1] - lambda[j - 1];
    let kk = C64::new(k, 0.0);
    let series = fq(kk, l + kk, l + 1.0, q.powf(1.0 - k) * z1 / z2, q, p.eps())?;
    Ok(c * z1.powc(lambda[i - 1] + k / 2.0) * z2.powc(lambda[j - 1] - k / 2.0) * series)
}
