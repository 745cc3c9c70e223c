//! Symmetric Macdonald polynomials: the two-variable family given by a
//! terminating `F_q`, a general triangular construction on the monomial
//! symmetric basis, and the comparison with terminating series solutions.

mod partition;

pub use partition::Partition;

use crate::error::{Error, Result};
use crate::hcseries::solve_coefficients;
use crate::operators::{eigenvalue_c, macdonald_apply_poly, macdonald_apply_poly_seeded, LaurentPoly, SpectralData, WeylElement};
use crate::qcore::{fq_coefficients, QParams};
use crate::C64;

/// Relative size below which two diagonal entries count as equal.
pub const COLLISION_TOL: f64 = 1e-10;

/// `z2^m F_q(k, -m, -m-k+1; (q/t) z1/z2)` as a polynomial in `(z1, z2)`.
pub fn macdonald_a1(m: u32, p: &QParams) -> LaurentPoly {
    let (q, k, t) = (p.q(), p.k(), p.t());
    let r = |x: f64| C64::new(x, 0.0);
    let coeffs = fq_coefficients(r(k), r(-(m as f64)), r(-(m as f64) - k + 1.0), q, m as usize + 1)
        .expect("the lower parameter never reaches a pole for 0 < k < 1");
    let mut poly = LaurentPoly::zero(2);
    for (j, c) in coeffs.into_iter().enumerate() {
        let j = j as i32;
        poly.add_term(vec![j, m as i32 - j], c * (q / t).powi(j));
    }
    poly
}

fn monomial(mu: &Partition, n: usize) -> Result<LaurentPoly> {
    let e: Vec<i32> = mu.padded(n)?.into_iter().map(|x| x as i32).collect();
    Ok(LaurentPoly::monomial_symmetric(&e))
}

fn symmetric_coeff(poly: &LaurentPoly, mu: &Partition, n: usize) -> Result<C64> {
    let e: Vec<i32> = mu.padded(n)?.into_iter().map(|x| x as i32).collect();
    Ok(poly.coeff(&e))
}

/// The monic symmetric eigenfunction `m_lam + sum_{mu < lam} c_mu m_mu` of
/// `D^1` in `n` variables.
///
/// `D^1` is triangular on the monomial basis under dominance, so the
/// coefficients follow by back substitution over the partitions dominated by
/// `lam`, largest first.
pub fn macdonald_poly(lam: &Partition, n: usize, p: &QParams) -> Result<LaurentPoly> {
    build(lam, n, |poly| macdonald_apply_poly(poly, 1, p, 0))
}

/// [`macdonald_poly`] with an explicit seed for the sample points of the fit.
pub fn macdonald_poly_seeded(lam: &Partition, n: usize, p: &QParams, seed: u64) -> Result<LaurentPoly> {
    build(lam, n, |poly| macdonald_apply_poly_seeded(poly, 1, p, 0, seed))
}

fn build<F>(lam: &Partition, n: usize, apply: F) -> Result<LaurentPoly>
where
    F: Fn(&LaurentPoly) -> Result<LaurentPoly>,
{
    if n < 2 {
        return Err(Error::Domain(format!("need at least 2 variables, got {n}")));
    }
    let ideal = lam.dominance_ideal(n)?;
    let images = ideal
        .iter()
        .map(|mu| apply(&monomial(mu, n)?))
        .collect::<Result<Vec<_>>>()?;
    // a[i][j]: coefficient of m_{ideal[i]} in D m_{ideal[j]}
    let a = |i: usize, j: usize| symmetric_coeff(&images[j], &ideal[i], n);
    let top = a(0, 0)?;
    let mut c = vec![C64::new(0.0, 0.0); ideal.len()];
    c[0] = C64::new(1.0, 0.0);
    for i in 1..ideal.len() {
        let gap = top - a(i, i)?;
        if gap.norm() < COLLISION_TOL * top.norm().max(1.0) {
            return Err(Error::Resonance(format!(
                "eigenvalues of {lam} and {} coincide",
                ideal[i]
            )));
        }
        let mut s = C64::new(0.0, 0.0);
        for (j, cj) in c.iter().enumerate().take(i) {
            s += a(i, j)? * cj;
        }
        c[i] = s / gap;
    }
    let mut out = LaurentPoly::zero(n);
    for (mu, ci) in ideal.iter().zip(c) {
        out = out.add(&monomial(mu, n)?.scale(ci));
    }
    Ok(out.pruned(1e-14))
}

/// The `D^m` eigenvalue of the polynomial attached to `lam`.
pub fn macdonald_eigenvalue(lam: &Partition, n: usize, m: usize, p: &QParams) -> Result<C64> {
    let gamma: Vec<C64> = lam.padded(n)?.iter().rev().map(|&x| C64::new(x as f64, 0.0)).collect();
    eigenvalue_c(&gamma, m, p)
}

/// Largest deviation between the series solution at the spectral point
/// `lambda = ((-m-k)/2, (m+k)/2)`, multiplied by `(z1 z2)^{m/2}`, and
/// [`macdonald_a1`]`(m)`; coefficients beyond degree `m` must vanish.
pub fn degeneration_check(m: u32, p: &QParams) -> Result<f64> {
    let k = p.k();
    let half = (m as f64 + k) / 2.0;
    let s = SpectralData::from_real(&[-half, half], WeylElement::identity(2))?;
    let sol = solve_coefficients(&s, p, m as usize + 6)?;
    let target = macdonald_a1(m, p);
    let mut worst: f64 = 0.0;
    for (idx, a) in sol.table.iter() {
        let j = idx[0] as i32;
        let want = if j <= m as i32 { target.coeff(&[j, m as i32 - j]) } else { C64::new(0.0, 0.0) };
        worst = worst.max((a - want).norm());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::macdonald_apply_numeric;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn r(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn two_variable_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let (q, k) = (rng.random_range(0.05..0.95), rng.random_range(0.05..0.95));
            let p = QParams::new(q, k).unwrap();
            let t = p.t();
            let close = |a: C64, b: f64| (a - b).norm() <= 1e-12 * b.abs().max(1.0);
            assert_eq!(macdonald_a1(0, &p).coeff(&[0, 0]), r(1.0));
            let p1 = macdonald_a1(1, &p);
            assert!(close(p1.coeff(&[1, 0]), 1.0) && close(p1.coeff(&[0, 1]), 1.0));
            let p2 = macdonald_a1(2, &p);
            assert!(close(p2.coeff(&[1, 1]), (1.0 - t) * (1.0 + q) / (1.0 - t * q)));
            assert!(close(p2.coeff(&[2, 0]), 1.0));
            let p3 = macdonald_a1(3, &p);
            let c3 = (1.0 - t) * (1.0 + q + q * q) / (1.0 - q * q * t);
            assert!(close(p3.coeff(&[2, 1]), c3) && close(p3.coeff(&[1, 2]), c3));
            let p4 = macdonald_a1(4, &p);
            let c31 = (1.0 - t) * (1.0 + q + q * q + q * q * q) / (1.0 - q * q * q * t);
            let c22 = (1.0 + q * q) * (1.0 + q + q * q) * (1.0 - t) * (1.0 - q * t)
                / ((1.0 - q * q * t) * (1.0 - q * q * q * t));
            assert!(close(p4.coeff(&[3, 1]), c31) && close(p4.coeff(&[1, 3]), c31));
            assert!(close(p4.coeff(&[2, 2]), c22));
            for m in 0..5 {
                assert!(macdonald_a1(m, &p).is_symmetric(1e-12));
            }
        }
    }

    #[test]
    fn triangular_construction_matches_two_variable_family() {
        let p = QParams::new(0.5, 0.4).unwrap();
        for m in 1..5 {
            let lam = Partition::new(vec![m, 0]).unwrap();
            let poly = macdonald_poly(&lam, 2, &p).unwrap();
            assert!(poly.max_abs_diff(&macdonald_a1(m, &p)) < 1e-10, "m={m}");
        }
    }

    #[test]
    fn elementary_symmetric() {
        let p = QParams::new(0.5, 0.4).unwrap();
        let poly = macdonald_poly(&part(&[1, 1, 0]), 3, &p).unwrap();
        let e2 = LaurentPoly::monomial_symmetric(&[1, 1, 0]);
        assert!(poly.max_abs_diff(&e2) < 1e-12);
    }

    #[test]
    fn eigen_equations_three_variables() {
        let p = QParams::new(0.37, 0.61).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for lam in [part(&[2, 1, 0]), part(&[3, 1, 0]), part(&[2, 2, 1])] {
            let poly = macdonald_poly(&lam, 3, &p).unwrap();
            assert!(poly.is_symmetric(1e-12));
            for mu in poly.symmetric_coefficients().keys() {
                let mu = Partition::new(mu.iter().map(|&x| x as u32).collect()).unwrap();
                assert!(Partition::new(lam.padded(3).unwrap()).unwrap().dominates(&mu));
            }
            for m in 1..=3 {
                let c = macdonald_eigenvalue(&lam, 3, m, &p).unwrap();
                for _ in 0..10 {
                    let z: Vec<C64> = (0..3)
                        .map(|_| C64::from_polar(rng.random_range(0.5..1.5), rng.random_range(0.0..std::f64::consts::TAU)))
                        .collect();
                    let d = macdonald_apply_numeric(|y: &[C64]| Ok(poly.eval(y)), m, &z, &p).unwrap();
                    let rhs = c * poly.eval(&z);
                    assert!((d - rhs).norm() < 1e-10 * rhs.norm(), "lam={lam} m={m}");
                }
            }
        }
    }

    #[test]
    fn resonance_detected() {
        // the gap between (2,0) and (1,1) is t(1-q)(1-qt), which collapses as q -> 1
        let p = QParams::new(1.0 - 1e-12, 0.5).unwrap();
        assert!(matches!(macdonald_poly(&part(&[2, 0]), 2, &p), Err(Error::Resonance(_))));
    }

    #[test]
    fn degeneration() {
        let p = QParams::new(0.5, 0.4).unwrap();
        assert_eq!(degeneration_check(0, &p).unwrap(), 0.0);
        for m in 1..5 {
            assert!(degeneration_check(m, &p).unwrap() < 1e-10, "m={m}");
        }
    }
}
