use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::qcore::QParams;
use crate::C64;

use super::{LaurentPoly, MacdonaldOperator};

const ATTEMPTS: usize = 3;
const HELD_OUT: usize = 6;
const FIT_TOL: f64 = 1e-10;
const DEFAULT_SEED: u64 = 0x5eed;

/// Weakly decreasing integer vectors of length `n` with entries in
/// `lo..=hi` and sum `d`, in reverse lexicographic order.
pub fn decreasing_vectors(n: usize, lo: i32, hi: i32, d: i32) -> Vec<Vec<i32>> {
    fn rec(n: usize, lo: i32, hi: i32, d: i32, prefix: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if n == 0 {
            if d == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let nn = n as i32;
        for a in (lo..=hi).rev() {
            // the remaining n-1 entries lie in lo..=a
            if a + (nn - 1) * lo > d || a + (nn - 1) * a < d {
                continue;
            }
            prefix.push(a);
            rec(n - 1, lo, a, d - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, lo, hi, d, &mut Vec::with_capacity(n), &mut out);
    out
}

fn sample_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    loop {
        let z: Vec<C64> = (0..n)
            .map(|_| C64::from_polar(rng.random_range(1.0..2.0), rng.random_range(0.0..std::f64::consts::TAU)))
            .collect();
        let moduli_distinct = (0..n)
            .tuple_combinations()
            .all(|(i, j)| (z[i].norm() - z[j].norm()).abs() > 1e-3);
        if moduli_distinct {
            return z;
        }
    }
}

/// `D^m(q, t) P`, fitted with a fixed default seed.
pub fn macdonald_apply_poly(poly: &LaurentPoly, m: usize, p: &QParams, sample_count: usize) -> Result<LaurentPoly> {
    apply_operator_poly(poly, &MacdonaldOperator::new(m, p), sample_count, DEFAULT_SEED)
}

/// `D^m(q, t) P` with an explicit sampling seed.
pub fn macdonald_apply_poly_seeded(
    poly: &LaurentPoly,
    m: usize,
    p: &QParams,
    sample_count: usize,
    seed: u64,
) -> Result<LaurentPoly> {
    apply_operator_poly(poly, &MacdonaldOperator::new(m, p), sample_count, seed)
}

/// Applies a difference operator to a symmetric Laurent polynomial.
///
/// The image is symmetric, keeps each homogeneous degree and stays within the
/// exponent range of `poly`, so it is fitted on the monomial symmetric basis
/// of that box from point evaluations at random sample points `r_i u_i`
/// (`r_i` in `[1, 2]`, `|u_i| = 1`). A fit that is rank deficient or misses
/// held-out points is retried with fresh points; after three failures the
/// error is [`Error::NumericDegeneracy`].
pub fn apply_operator_poly(
    poly: &LaurentPoly,
    op: &MacdonaldOperator,
    sample_count: usize,
    seed: u64,
) -> Result<LaurentPoly> {
    let n = poly.n();
    if !poly.is_symmetric(1e-12) {
        return Err(Error::Domain("polynomial is not symmetric".into()));
    }
    let Some((lo, hi)) = poly.exponent_range() else {
        return Ok(LaurentPoly::zero(n));
    };
    let basis: Vec<LaurentPoly> = poly
        .degrees()
        .into_iter()
        .flat_map(|d| decreasing_vectors(n, lo, hi, d))
        .map(|mu| LaurentPoly::monomial_symmetric(&mu))
        .collect();
    let unknowns = basis.len();
    let rows = sample_count.max(2 * unknowns);
    let image_at = |z: &[C64]| op.apply(|y: &[C64]| Ok(poly.eval(y)), z);

    for attempt in 0..ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let points: Vec<Vec<C64>> = (0..rows + HELD_OUT).map(|_| sample_point(&mut rng, n)).collect();
        let values: Vec<C64> = points.iter().map(|z| image_at(z)).collect::<Result<_>>()?;
        let a = DMatrix::from_fn(rows, unknowns, |i, j| basis[j].eval(&points[i]));
        let b = DVector::from_iterator(rows, values[..rows].iter().copied());
        let svd = a.svd(true, true);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        if !(smin > 1e-12 * smax) {
            continue;
        }
        let Ok(x) = svd.solve(&b, 0.0) else { continue };
        let fitted = basis
            .iter()
            .zip(x.iter())
            .fold(LaurentPoly::zero(n), |acc, (m, c)| acc.add(&m.scale(*c)));
        let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        let held_ok = points[rows..]
            .iter()
            .zip(&values[rows..])
            .all(|(z, v)| (fitted.eval(z) - v).norm() <= FIT_TOL * scale);
        if held_ok {
            return Ok(fitted.pruned(1e-12));
        }
    }
    Err(Error::NumericDegeneracy(ATTEMPTS))
}
