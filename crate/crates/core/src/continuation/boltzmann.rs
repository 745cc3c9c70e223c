use crate::error::{Error, Result};
use crate::qcore::{bracket_v, g1, XRParams};
use crate::C64;

/// The two Boltzmann weights at spectral parameter `v` and charge difference
/// `mu_ij`, with their common prefactor `r1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoltzmannWeights {
    pub mu_ij: C64,
    pub v: C64,
    /// `r1 [v - mu][1] / ([v - 1][mu])`
    pub w_same: C64,
    /// `r1 [v][mu - 1] / ([v - 1][mu])`
    pub w_cross: C64,
    /// `z^{((r-1)/r)((n-1)/n)} g1(1/z) / g1(z)` with `z = x^{2v}`
    pub r1: C64,
}

fn xpow(x: f64, e: C64) -> C64 {
    (e * x.ln()).exp()
}

/// `[v]` vanishes exactly on `v in r Z`.
fn nonzero_bracket(v: C64, xr: &XRParams, what: &str) -> Result<C64> {
    let u = v / xr.r();
    if (u - u.re.round()).norm() < 1e-10 {
        return Err(Error::Resonance(format!("bracket [{what}] vanishes at {v}")));
    }
    Ok(bracket_v(v, xr))
}

pub fn boltzmann_w(mu_ij: C64, v: C64, xr: &XRParams, n: usize) -> Result<BoltzmannWeights> {
    let (x, r) = (xr.x(), xr.r());
    let one = C64::new(1.0, 0.0);
    let den = nonzero_bracket(v - 1.0, xr, "v - 1")? * nonzero_bracket(mu_ij, xr, "mu")?;
    let z = xpow(x, 2.0 * v);
    let r1 = xpow(x, 2.0 * v * ((r - 1.0) / r) * ((n as f64 - 1.0) / n as f64)) * g1(1.0 / z, xr, n)? / g1(z, xr, n)?;
    Ok(BoltzmannWeights {
        mu_ij,
        v,
        w_same: r1 * bracket_v(v - mu_ij, xr) * bracket_v(one, xr) / den,
        w_cross: r1 * bracket_v(v, xr) * bracket_v(mu_ij - 1.0, xr) / den,
        r1,
    })
}

/// `[[S(mu), C(mu)], [C(-mu), S(-mu)]]` with `S`, `C` the same-charge and
/// crossing weights at `v`.
pub fn weight_matrix(mu_ij: C64, v: C64, xr: &XRParams, n: usize) -> Result<[[C64; 2]; 2]> {
    let a = boltzmann_w(mu_ij, v, xr, n)?;
    let b = boltzmann_w(-mu_ij, v, xr, n)?;
    Ok([[a.w_same, a.w_cross], [b.w_cross, b.w_same]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::Mode;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn xr() -> XRParams {
        XRParams::new(0.85, 2.5, Mode::ModeA).unwrap()
    }

    #[test]
    fn factorwise_recomputation() {
        let xr = xr();
        let (v, mu) = (c(0.23), c(0.61));
        let w = boltzmann_w(mu, v, &xr, 2).unwrap();
        let z = c(0.85f64.powf(0.46));
        let r1 = z.powf(0.6 * 0.5) * g1(1.0 / z, &xr, 2).unwrap() / g1(z, &xr, 2).unwrap();
        assert!((w.r1 - r1).norm() < 1e-13 * r1.norm());
        let b = |u: f64| bracket_v(c(u), &xr);
        let same = r1 * b(0.23 - 0.61) * b(1.0) / (b(0.23 - 1.0) * b(0.61));
        let cross = r1 * b(0.23) * b(0.61 - 1.0) / (b(0.23 - 1.0) * b(0.61));
        assert!((w.w_same - same).norm() < 1e-13 * same.norm());
        assert!((w.w_cross - cross).norm() < 1e-13 * cross.norm());
    }

    #[test]
    fn cross_weight_vanishes_at_zero() {
        let w = boltzmann_w(c(0.61), c(0.0), &xr(), 2).unwrap();
        assert_eq!(w.w_cross, c(0.0));
    }

    #[test]
    fn inversion() {
        let xr = xr();
        for (v, mu) in [(0.23, 0.61), (0.4, -0.35), (-0.15, 1.3)] {
            let a = weight_matrix(c(mu), c(v), &xr, 2).unwrap();
            let b = weight_matrix(c(mu), c(-v), &xr, 2).unwrap();
            for (i, row) in a.iter().enumerate() {
                for j in 0..2 {
                    let e: C64 = row.iter().zip(&b).map(|(x, brow)| x * brow[j]).sum();
                    let id = if i == j { 1.0 } else { 0.0 };
                    assert!((e - id).norm() < 1e-8, "v={v} mu={mu} ({i},{j}) {e}");
                }
            }
        }
    }

    #[test]
    fn resonant_brackets() {
        let xr = xr();
        assert!(matches!(boltzmann_w(c(0.6), c(1.0), &xr, 2), Err(Error::Resonance(_))));
        assert!(matches!(boltzmann_w(c(2.5), c(0.3), &xr, 2), Err(Error::Resonance(_))));
    }
}
