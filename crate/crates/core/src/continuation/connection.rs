use crate::error::{Error, Result};
use crate::qcore::{fq, qgamma, qpow, rgamma_q, terminating_degree, theta_raw, QParams};
use crate::C64;

fn r(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Lattice tolerance for theta zeros.
pub const RESONANCE_TOL: f64 = 1e-10;

/// `Theta_q(z)`, refusing points within tolerance of the zero set `q^Z`.
pub fn theta_nonresonant(z: C64, q: f64, what: &str) -> Result<C64> {
    if z.norm() == 0.0 {
        return Err(Error::Resonance(format!("{what}: theta argument vanishes")));
    }
    let m = (z.norm().ln() / q.ln()).round() as i32;
    if (z * q.powi(-m) - 1.0).norm() < RESONANCE_TOL {
        return Err(Error::Resonance(format!("{what}: theta argument {z} lies on q^Z")));
    }
    Ok(theta_raw(z, q))
}

/// Both sides of the two-term continuation of `F_q(a, b, c; z)` to `1/z`:
/// `lhs = F_q(a, b, c; z)` and
/// `rhs = G(c)G(b-a)/(G(b)G(c-a)) Theta(q^a z)/Theta(z) F_q(a, a-c+1, a-b+1; q^{c+1-a-b}/z) + (a <-> b)`.
///
/// Away from termination, `z` must lie in the annulus
/// `|q^{c+1-a-b}| < |z| < 1` where every series converges.
pub fn fq_connection(a: C64, b: C64, c: C64, z: C64, p: &QParams) -> Result<(C64, C64)> {
    let (q, e) = (p.q(), p.eps());
    let inner = qpow(q, c + 1.0 - a - b);
    let lhs_terminates = terminating_degree(a, b, q).is_some();
    if !lhs_terminates && !(z.norm() < 1.0) {
        return Err(Error::Zone(format!("|z| = {} must be below 1", z.norm())));
    }
    let w = inner / z;
    let th_z = theta_nonresonant(z, q, "connection at z")?;
    let lhs = fq(a, b, c, z, q, e)?;
    let mut rhs = r(0.0);
    for (x, y) in [(a, b), (b, a)] {
        let front = rgamma_q(y, q)? * rgamma_q(c - x, q)?;
        if front == r(0.0) {
            continue;
        }
        let series_terminates = terminating_degree(x, x - c + 1.0, q).is_some();
        if !series_terminates && !(w.norm() < 1.0) {
            return Err(Error::Zone(format!(
                "|q^(c+1-a-b)/z| = {} must be below 1",
                w.norm()
            )));
        }
        let g = qgamma(c, q)? * qgamma(y - x, q)? * front;
        rhs += g * theta_raw(qpow(q, x) * z, q) / th_z * fq(x, x - c + 1.0, x - y + 1.0, w, q, e)?;
    }
    Ok((lhs, rhs))
}

/// The normalized two-variable solution
/// `G(1-k) / (G(-l+1-k) G(l+1)) z1^{l1+k/2} z2^{l2-k/2} F_q(k, l+k, l+1; q^{1-k} z1/z2)`
/// with `l = l1 - l2` for `lam = (l1, l2)`.
pub fn normalized_a1(lam: [C64; 2], z1: C64, z2: C64, p: &QParams) -> Result<C64> {
    let (q, k) = (p.q(), p.k());
    let l = lam[0] - lam[1];
    let x = q.powf(1.0 - k) * z1 / z2;
    if !(x.norm() < 1.0) {
        return Err(Error::Zone(format!("|q^(1-k) z1/z2| = {} must be below 1", x.norm())));
    }
    let front = qgamma(r(1.0 - k), q)? * rgamma_q(-l + 1.0 - k, q)? * rgamma_q(l + 1.0, q)?;
    let pw = z1.powc(lam[0] + k / 2.0) * z2.powc(lam[1] - k / 2.0);
    Ok(front * pw * fq(r(k), l + k, l + 1.0, x, q, p.eps())?)
}

/// Coefficients `(c_other, c_same)` with
/// `f(lam; z1, z2) = c_other f(swap lam; z2, z1) + c_same f(lam; z2, z1)`
/// for the normalized solutions of [`normalized_a1`]; `Z = z1/z2`:
/// `c_other = Z^k Theta(q^{l+k}) Theta(1/Z) / (Theta(q^l) Theta(q^k/Z))`,
/// `c_same = Z^{l+k} Theta(q^k) Theta(q^{-l}/Z) / (Theta(q^{-l}) Theta(q^k/Z))`.
pub fn normalized_a1_continuation(lam: [C64; 2], z1: C64, z2: C64, p: &QParams) -> Result<[C64; 2]> {
    let (q, k) = (p.q(), p.k());
    let l = lam[0] - lam[1];
    let zr = z1 / z2;
    check_path(zr)?;
    let den = theta_nonresonant(qpow(q, r(k)) / zr, q, "q^k z2/z1")?;
    let other = zr.powf(k) * theta_raw(qpow(q, l + k), q) * theta_raw(1.0 / zr, q)
        / (theta_nonresonant(qpow(q, l), q, "q^(l1-l2)")? * den);
    let same = zr.powc(l + k) * theta_raw(qpow(q, r(k)), q) * theta_raw(qpow(q, -l) / zr, q)
        / (theta_nonresonant(qpow(q, -l), q, "q^(l2-l1)")? * den);
    Ok([other, same])
}

/// Rejects ratios on the cut of the principal branch (the negative real axis).
pub fn check_path(ratio: C64) -> Result<()> {
    if ratio.norm() == 0.0 {
        return Err(Error::Domain("ratio z_i/z_{i+1} must be nonzero".into()));
    }
    if ratio.re < 0.0 && ratio.im.abs() <= 1e-14 * ratio.norm() {
        return Err(Error::Domain(format!(
            "ratio {ratio} lies on the negative real axis; the continuation path is undefined there"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> QParams {
        QParams::new(0.5, 0.4).unwrap()
    }

    #[test]
    fn connection_in_annulus() {
        let p = p();
        let (lhs, rhs) = fq_connection(r(0.3), r(0.7), r(1.2), r(0.95), &p).unwrap();
        assert!((lhs - rhs).norm() < 1e-9 * lhs.norm());
        // swapping a and b exchanges the two terms
        let (_, rhs2) = fq_connection(r(0.7), r(0.3), r(1.2), r(0.95), &p).unwrap();
        assert!((rhs - rhs2).norm() < 1e-13 * rhs.norm());
        assert!(matches!(fq_connection(r(0.3), r(0.7), r(1.2), r(1.1), &p), Err(Error::Zone(_))));
        assert!(matches!(fq_connection(r(0.3), r(0.7), r(1.2), r(0.4), &p), Err(Error::Zone(_))));
    }

    #[test]
    fn connection_for_two_variable_parameters() {
        // argument q^{1-k} z with z = 1.1 for a = k, b = l + k, c = l + 1
        let p = p();
        let (q, k) = (0.5f64, 0.4);
        let l = 0.37;
        let z = r(1.1 * q.powf(1.0 - k));
        let (lhs, rhs) = fq_connection(r(k), r(l + k), r(l + 1.0), z, &p).unwrap();
        assert!((lhs - rhs).norm() < 1e-9 * lhs.norm());
    }

    #[test]
    fn terminating_connection() {
        let p = p();
        for z in [r(0.95), r(1.7), C64::new(-0.4, 2.0)] {
            let (lhs, rhs) = fq_connection(r(0.3), r(-2.0), r(1.2), z, &p).unwrap();
            assert!((lhs - rhs).norm() < 1e-10 * lhs.norm().max(1.0), "z={z}");
        }
    }

    #[test]
    fn normalized_continuation() {
        let p = p();
        let lam = [r(0.23), r(-0.23)];
        for (z1, z2) in [(r(1.2), r(1.0)), (C64::new(0.9, 0.5), r(1.0)), (r(1.0), r(1.3))] {
            let lhs = normalized_a1(lam, z1, z2, &p).unwrap();
            let [co, cs] = normalized_a1_continuation(lam, z1, z2, &p).unwrap();
            let rhs = co * normalized_a1([lam[1], lam[0]], z2, z1, &p).unwrap() + cs * normalized_a1(lam, z2, z1, &p).unwrap();
            assert!((lhs - rhs).norm() < 1e-10 * lhs.norm(), "z1={z1}");
        }
        assert!(check_path(r(-2.0)).is_err());
    }

    #[test]
    fn special_value_through_continuation() {
        // at z1 = 1, z2 = t the continued combination reproduces the closed form
        let p = QParams::new(0.5, 0.3).unwrap();
        let (q, k, t) = (0.5f64, 0.3, p.t());
        let l = 0.41;
        let lam = [r(l / 2.0), r(-l / 2.0)];
        let (z1, z2) = (r(1.0), r(t));
        let [co, cs] = normalized_a1_continuation(lam, z1, z2, &p).unwrap();
        let cont = co * normalized_a1([lam[1], lam[0]], z2, z1, &p).unwrap() + cs * normalized_a1(lam, z2, z1, &p).unwrap();
        let g = |x: f64| qgamma(r(x), q).unwrap();
        let front = g(1.0 - k) / (g(-l + 1.0 - k) * g(l + 1.0)) * z2.powf(-l / 2.0 - k / 2.0);
        let closed = g(l + 1.0) * g(1.0 - 2.0 * k) / (g(l + 1.0 - k) * g(1.0 - k));
        assert!((cont / front - closed).norm() < 1e-10 * closed.norm());
    }

    #[test]
    fn resonant_theta_is_flagged() {
        assert!(matches!(theta_nonresonant(r(0.25), 0.5, "x"), Err(Error::Resonance(_))));
        assert!(theta_nonresonant(r(0.3), 0.5, "x").is_ok());
    }
}
