use crate::error::{Error, Result};
use crate::qcore::{kernel_s, qpoch, QParams};
use crate::C64;

use super::MacdonaldOperator;

fn rel(lhs: C64, rhs: C64) -> f64 {
    (lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(f64::MIN_POSITIVE)
}

/// Residual of `D^{n-1}(q, t) phi = t^{n(n+1)/2} D^1(1/q, 1/t) phi` at `z`,
/// relative to `|phi(z)|`.
///
/// The second operator shifts by `1/q` with weight `1/t`; both sides agree on
/// homogeneous eigenfunctions of total degree zero.
pub fn duality_check<F>(sol_eval: F, z: &[C64], p: &QParams) -> Result<f64>
where
    F: Fn(&[C64]) -> Result<C64>,
{
    let n = z.len();
    if n < 2 {
        return Err(Error::Domain(format!("duality needs n >= 2, got {n}")));
    }
    let lhs = MacdonaldOperator::new(n - 1, p).apply(&sol_eval, z)?;
    let nn = n as i32;
    let rhs = p.t().powi(nn * (nn + 1) / 2) * MacdonaldOperator::inverted(1, p).apply(&sol_eval, z)?;
    let phi = sol_eval(z)?;
    Ok((lhs - rhs).norm() / phi.norm())
}

/// `prod_{i,j} s(z_i / y_j)`.
pub fn contraction_kernel(z: &[C64], y: &[C64], p: &QParams) -> C64 {
    z.iter()
        .flat_map(|zi| y.iter().map(move |yj| zi / yj))
        .map(|u| kernel_s(u, p))
        .product()
}

/// Relative residual of the kernel identity
/// `D^1_z(q, t) Pi = t (t^{n+1} D^1_y(1/q, 1/t) + 1) Pi` with
/// `Pi = prod s(z_i / y_j)`, `z` of length `n + 1` and `y` of length `n`.
pub fn kernel_identity_residual(z: &[C64], y: &[C64], p: &QParams) -> Result<f64> {
    let n = y.len();
    if z.len() != n + 1 || n == 0 {
        return Err(Error::Domain(format!(
            "need len(z) = len(y) + 1 >= 2, got {} and {n}",
            z.len()
        )));
    }
    let t = p.t();
    let lhs = MacdonaldOperator::new(1, p).apply(|zz: &[C64]| Ok(contraction_kernel(zz, y, p)), z)?;
    let dy = MacdonaldOperator::inverted(1, p).apply(|yy: &[C64]| Ok(contraction_kernel(z, yy, p)), y)?;
    let rhs = t * (t.powi(n as i32 + 1) * dy + contraction_kernel(z, y, p));
    Ok(rel(lhs, rhs))
}

/// `prod_{l<s} (y_l/y_s; q)(y_s/y_l; q) / ((t y_l/y_s; q)(t y_s/y_l; q))`.
pub fn weight_exchange_kernel(y: &[C64], p: &QParams) -> C64 {
    let (q, t, e) = (p.q(), p.t(), p.eps());
    let mut acc = C64::new(1.0, 0.0);
    for l in 0..y.len() {
        for s in l + 1..y.len() {
            let (a, b) = (y[l] / y[s], y[s] / y[l]);
            acc *= qpoch(a, q, e) * qpoch(b, q, e) / (qpoch(t * a, q, e) * qpoch(t * b, q, e));
        }
    }
    acc
}

fn shifted(z: &[C64], i: usize, by: f64) -> Vec<C64> {
    let mut v = z.to_vec();
    v[i] *= by;
    v
}

/// Relative residual, for the test function `f` at `y`, of
/// `sum_i T_{q,y_i} [W_i K f] = K t^{1-n} sum_i prod_{j!=i} (t y_i - y_j)/(y_i - y_j) T_{q,y_i} f`
/// where `W_i = prod_{j!=i} (y_i/t - y_j)/(y_i - y_j)` and `K` is
/// [`weight_exchange_kernel`].
pub fn weight_exchange_residual<F>(y: &[C64], f: F, p: &QParams) -> Result<f64>
where
    F: Fn(&[C64]) -> Result<C64>,
{
    let n = y.len();
    super::apply::check_distinct(y)?;
    let (q, t) = (p.q(), p.t());
    let mut lhs = C64::new(0.0, 0.0);
    for i in 0..n {
        let ys = shifted(y, i, q);
        let mut w = C64::new(1.0, 0.0);
        for j in (0..n).filter(|&j| j != i) {
            w *= (ys[i] / t - ys[j]) / (ys[i] - ys[j]);
        }
        lhs += w * weight_exchange_kernel(&ys, p) * f(&ys)?;
    }
    let sum = MacdonaldOperator::new(1, p).apply(&f, y)? / t;
    let rhs = weight_exchange_kernel(y, p) * t.powi(1 - n as i32) * sum;
    Ok(rel(lhs, rhs))
}

/// `prod_{i<j} z_j^{1-2k} (q^k z_i/z_j; q) / (q^{1-k} z_i/z_j; q)`.
pub fn gauge_factor(z: &[C64], p: &QParams) -> C64 {
    let (q, k, e) = (p.q(), p.k(), p.eps());
    let mut acc = C64::new(1.0, 0.0);
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let u = z[i] / z[j];
            acc *= z[j].powc(C64::new(1.0 - 2.0 * k, 0.0)) * qpoch(q.powf(k) * u, q, e)
                / qpoch(q.powf(1.0 - k) * u, q, e);
        }
    }
    acc
}

/// Relative residual, for the test function `f` at `z`, of the gauge identity
/// `[sum_i prod_{j!=i} (t z_i - z_j)/(z_i - z_j) T_{q,z_i}] G f = G sum_i prod_{j!=i} ((q/t) z_i - z_j)/(z_i - z_j) T_{q,z_i} f`
/// with `G` from [`gauge_factor`].
pub fn gauge_identity_residual<F>(z: &[C64], f: F, p: &QParams) -> Result<f64>
where
    F: Fn(&[C64]) -> Result<C64>,
{
    let (q, t) = (p.q(), p.t());
    let lhs = MacdonaldOperator::new(1, p).apply(|x: &[C64]| Ok(gauge_factor(x, p) * f(x)?), z)? / t;
    let op = MacdonaldOperator {
        m: 1,
        shift: q,
        weight: q / t,
    };
    let rhs = gauge_factor(z, p) * op.apply(&f, z)? * (t / q);
    Ok(rel(lhs, rhs))
}
