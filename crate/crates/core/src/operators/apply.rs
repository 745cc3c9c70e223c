use itertools::Itertools;

use crate::error::{Error, Result};
use crate::qcore::{qpow, QParams};
use crate::C64;

/// `c^m_gamma = sum_{i_1 < .. < i_m} prod_s q^{gamma_{i_s}} t^{i_s}` with
/// 1-based indices `i_s`.
pub fn eigenvalue_c(gamma: &[C64], m: usize, p: &QParams) -> Result<C64> {
    let n = gamma.len();
    if m == 0 || m > n {
        return Err(Error::Domain(format!("m = {m} must lie in 1..={n}")));
    }
    let (q, t) = (p.q(), p.t());
    Ok((0..n)
        .combinations(m)
        .map(|idx| {
            idx.iter()
                .map(|&i| qpow(q, gamma[i]) * t.powi(i as i32 + 1))
                .product::<C64>()
        })
        .sum())
}

/// The difference operator
/// `D^m = t^{m(m+1)/2} sum_I prod_{s in I, j not in I} (t z_s - z_j)/(z_s - z_j) prod_{s in I} T_{q, z_s}`
/// with the shift `q` and weight `t` free, so that `(1/q, 1/t)` variants
/// share the same code.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MacdonaldOperator {
    pub m: usize,
    pub shift: f64,
    pub weight: f64,
}

/// Relative tolerance below which two coordinates count as coincident.
pub const COINCIDENCE_TOL: f64 = 1e-10;

pub(crate) fn check_distinct(z: &[C64]) -> Result<()> {
    let scale = z.iter().map(|c| c.norm()).fold(0.0, f64::max);
    for (i, j) in (0..z.len()).tuple_combinations() {
        if (z[i] - z[j]).norm() < COINCIDENCE_TOL * scale {
            return Err(Error::Singular(format!(
                "coordinates {} and {} coincide",
                i + 1,
                j + 1
            )));
        }
    }
    Ok(())
}

impl MacdonaldOperator {
    pub fn new(m: usize, p: &QParams) -> Self {
        MacdonaldOperator {
            m,
            shift: p.q(),
            weight: p.t(),
        }
    }

    /// The operator with `q -> 1/q`, `t -> 1/t`.
    pub fn inverted(m: usize, p: &QParams) -> Self {
        MacdonaldOperator {
            m,
            shift: 1.0 / p.q(),
            weight: 1.0 / p.t(),
        }
    }

    /// Applies the operator to `f` at the point `z`.
    pub fn apply<F>(&self, f: F, z: &[C64]) -> Result<C64>
    where
        F: Fn(&[C64]) -> Result<C64>,
    {
        let n = z.len();
        if self.m == 0 || self.m > n {
            return Err(Error::Domain(format!("m = {} must lie in 1..={n}", self.m)));
        }
        check_distinct(z)?;
        let tw = self.weight;
        let mut total = C64::new(0.0, 0.0);
        let mut shifted = z.to_vec();
        for subset in (0..n).combinations(self.m) {
            let mut inside = vec![false; n];
            for &s in &subset {
                inside[s] = true;
            }
            let mut coef = C64::new(1.0, 0.0);
            for &s in &subset {
                for j in (0..n).filter(|&j| !inside[j]) {
                    coef *= (tw * z[s] - z[j]) / (z[s] - z[j]);
                }
            }
            shifted.copy_from_slice(z);
            for &s in &subset {
                shifted[s] *= self.shift;
            }
            total += coef * f(&shifted)?;
        }
        let mm = self.m as i32;
        Ok(total * tw.powi(mm * (mm + 1) / 2))
    }
}

/// `D^m_z(q, t) f` evaluated at `z`.
pub fn macdonald_apply_numeric<F>(f: F, m: usize, z: &[C64], p: &QParams) -> Result<C64>
where
    F: Fn(&[C64]) -> Result<C64>,
{
    MacdonaldOperator::new(m, p).apply(f, z)
}
