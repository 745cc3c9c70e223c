use crate::error::{Error, Result};
use crate::operators::MacdonaldOperator;
use crate::C64;

use super::HCSolution;

/// Relative tail size above which an evaluation is flagged as truncated.
pub const TAIL_TOL: f64 = 1e-10;

/// A series value together with a crude estimate of the discarded tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: C64,
    /// Estimated modulus of the omitted terms, on the scale of `value`.
    pub tail_estimate: f64,
    /// Set when `tail_estimate` exceeds [`TAIL_TOL`] relative to `|value|`.
    pub truncated: bool,
}

fn ratios(z: &[C64]) -> Result<Vec<C64>> {
    if z.iter().any(|c| c.norm() == 0.0) {
        return Err(Error::Zone("coordinates must be nonzero".into()));
    }
    Ok(z.windows(2).map(|w| w[0] / w[1]).collect())
}

impl HCSolution {
    /// `prod z_i^{(eta+rho)_i}` on the principal branch.
    pub fn prefactor(&self, z: &[C64]) -> C64 {
        z.iter()
            .zip(&self.prefactor_exponent)
            .map(|(zi, e)| zi.powc(*e))
            .product()
    }

    fn evaluate_within(&self, z: &[C64], bound: f64) -> Result<Evaluation> {
        if z.len() != self.n() {
            return Err(Error::Domain(format!("expected {} coordinates, got {}", self.n(), z.len())));
        }
        let x = ratios(z)?;
        if let Some(i) = x.iter().position(|xi| !(xi.norm() < bound)) {
            return Err(Error::Zone(format!(
                "|z_{} / z_{}| = {} is not below {bound}",
                i + 1,
                i + 2,
                x[i].norm()
            )));
        }
        let series = self.table.eval(&x);
        let levels = self.table.level_norms(&x);
        let nmax = levels.len() - 1;
        let last = levels[nmax];
        let rho = if nmax >= 1 && levels[nmax - 1] > 0.0 {
            last / levels[nmax - 1]
        } else {
            x.iter().map(|c| c.norm()).fold(0.0, f64::max)
        };
        let tail_series = if rho < 1.0 { last * rho / (1.0 - rho) } else { f64::INFINITY };
        let pre = self.prefactor(z);
        let value = pre * series;
        let tail_estimate = tail_series * pre.norm();
        Ok(Evaluation {
            value,
            tail_estimate,
            truncated: tail_estimate > TAIL_TOL * value.norm(),
        })
    }

    /// Evaluates in the asymptotic zone `|z_i / z_{i+1}| < 1`.
    pub fn evaluate(&self, z: &[C64]) -> Result<Evaluation> {
        self.evaluate_within(z, 1.0)
    }

    /// Evaluates on the wider region `|z_i / z_{i+1}| < q^{k-1}` where the
    /// series still converges; the truncation error grows towards its edge.
    pub fn evaluate_in_annulus(&self, z: &[C64]) -> Result<Evaluation> {
        let p = &self.params;
        self.evaluate_within(z, p.q().powf(p.k() - 1.0))
    }

    /// `|D^m phi - c^m phi| / |c^m phi|` at `z`, with every shifted point
    /// required to stay in the zone.
    pub fn eigen_residual(&self, m: usize, z: &[C64]) -> Result<f64> {
        let n = self.n();
        if m == 0 || m > n {
            return Err(Error::Domain(format!("m = {m} must lie in 1..={n}")));
        }
        let c = self.spectral.eigenvalues(&self.params)[m - 1];
        let phi = |y: &[C64]| self.evaluate(y).map(|e| e.value);
        let d = MacdonaldOperator::new(m, &self.params).apply(phi, z)?;
        let cphi = c * phi(z)?;
        Ok((d - cphi).norm() / cphi.norm())
    }
}

/// Evaluation points `z_i = q^{-3(i-1)}` whose single `q`-shifts keep all
/// ratios at most `q^2`.
pub fn standard_points(n: usize, q: f64) -> Vec<C64> {
    (0..n).map(|i| C64::new(q.powi(-3 * i as i32), 0.0)).collect()
}
