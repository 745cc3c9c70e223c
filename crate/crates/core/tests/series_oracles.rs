use std::collections::BTreeMap;
use std::f64::consts::TAU;

use macdonald_hc::hcseries::{compositions, solve_coefficients};
use macdonald_hc::operators::{MacdonaldOperator, SpectralData, WeylElement};
use macdonald_hc::qcore::{qpow, QParams};
use macdonald_hc::C64;

const RADIUS: f64 = 0.1;
const NODES: usize = 24;

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Coordinates with `z_i / z_{i+1} = x_i` and `z_n = 1`.
fn coords(x: &[C64]) -> Vec<C64> {
    let n = x.len() + 1;
    let mut z = vec![c(1.0); n];
    for i in (0..n - 1).rev() {
        z[i] = z[i + 1] * x[i];
    }
    z
}

fn torus(nv: usize) -> Vec<(Vec<usize>, Vec<C64>)> {
    let mut out = vec![(vec![], vec![])];
    for _ in 0..nv {
        out = out
            .into_iter()
            .flat_map(|(idx, x)| {
                (0..NODES).map(move |j| {
                    let mut i2 = idx.clone();
                    i2.push(j);
                    let mut x2 = x.clone();
                    x2.push(C64::from_polar(RADIUS, TAU * j as f64 / NODES as f64));
                    (i2, x2)
                })
            })
            .collect()
    }
    out
}

/// Coefficient of `x^p` in `(D^1 - c) [z^e S] / z^e` for the truncated
/// series `S = sum_{p'} a(p') x^{p'}`, by a discrete Fourier transform on a
/// small torus.
fn residual_coefficient(s: &SpectralData, p: &QParams, a: &BTreeMap<Vec<u32>, C64>, target: &[u32]) -> C64 {
    let e = s.exponent(p.k());
    let cval = s.eigenvalues(p)[0];
    let op = MacdonaldOperator::new(1, p);
    let series = |z: &[C64]| -> C64 {
        let x: Vec<C64> = z.windows(2).map(|w| w[0] / w[1]).collect();
        a.iter()
            .map(|(idx, v)| v * idx.iter().zip(&x).map(|(&k, xi)| xi.powi(k as i32)).product::<C64>())
            .sum()
    };
    let pre = |z: &[C64]| -> C64 { z.iter().zip(&e).map(|(zi, ei)| zi.powc(*ei)).product() };
    let nv = target.len();
    let pts = torus(nv);
    let mut acc = c(0.0);
    for (idx, x) in &pts {
        let z = coords(x);
        let d = op.apply(|y: &[C64]| Ok(pre(y) * series(y)), &z).unwrap();
        let r = d / pre(&z) - cval * series(&z);
        let phase: f64 = idx.iter().zip(target).map(|(&j, &k)| TAU * (j as f64) * (k as f64) / NODES as f64).sum();
        let scale = RADIUS.powi(target.iter().sum::<u32>() as i32);
        acc += r * C64::from_polar(1.0 / scale, -phase);
    }
    acc / pts.len() as f64
}

/// Coefficients up to total degree `d`, each fitted from the vanishing of the
/// matching residual coefficient given the lower ones.
fn fourier_coefficients(s: &SpectralData, p: &QParams, d: u32) -> BTreeMap<Vec<u32>, C64> {
    let nv = s.n() - 1;
    let mut a = BTreeMap::new();
    a.insert(vec![0; nv], c(1.0));
    for deg in 1..=d {
        for idx in compositions(deg, nv) {
            let mut trial = a.clone();
            trial.insert(idx.clone(), c(0.0));
            let r0 = residual_coefficient(s, p, &trial, &idx);
            trial.insert(idx.clone(), c(1.0));
            let r1 = residual_coefficient(s, p, &trial, &idx);
            a.insert(idx, -r0 / (r1 - r0));
        }
    }
    a
}

#[test]
fn three_variable_low_orders_from_operator() {
    let p = QParams::new(0.5, 0.4).unwrap();
    let lam: Vec<C64> = [0.31, -0.11, -0.20].iter().map(|&x| c(x)).collect();
    for w in [[1, 2, 3], [2, 3, 1]] {
        let s = SpectralData::new(lam.clone(), WeylElement::from_one_based(&w).unwrap()).unwrap();
        let sol = solve_coefficients(&s, &p, 4).unwrap();
        let oracle = fourier_coefficients(&s, &p, 2);
        for (idx, v) in &oracle {
            let got = sol.table.get(idx);
            assert!((got - v).norm() < 1e-9 * v.norm().max(1.0), "w={w:?} p={idx:?}: {got} vs {v}");
        }
    }
}

#[test]
fn two_variable_coefficients_are_hypergeometric() {
    // a(p) = (q^k; q)_p (q^{l+k}; q)_p / ((q; q)_p (q^{l+1}; q)_p) q^{(1-k) p}
    let p = QParams::new(0.37, 0.62).unwrap();
    let (q, k) = (0.37f64, 0.62);
    for lam in [[0.21, -0.21], [-0.4, 0.4]] {
        let s = SpectralData::from_real(&lam, WeylElement::identity(2)).unwrap();
        let sol = solve_coefficients(&s, &p, 30).unwrap();
        let l = c(lam[0] - lam[1]);
        let mut want = c(1.0);
        for j in 0..=30u32 {
            if j > 0 {
                let jm = (j - 1) as f64;
                want *= (1.0 - q.powf(k + jm)) * (1.0 - qpow(q, l + k + jm))
                    / ((1.0 - q.powf(1.0 + jm)) * (1.0 - qpow(q, l + 1.0 + jm)))
                    * q.powf(1.0 - k);
            }
            let got = sol.table.get(&[j]);
            assert!((got - want).norm() < 1e-12 * want.norm(), "j={j}");
        }
    }
}

#[test]
fn oracle_on_two_variables() {
    let p = QParams::new(0.5, 0.4).unwrap();
    let s = SpectralData::from_real(&[0.27, -0.27], WeylElement::identity(2)).unwrap();
    let sol = solve_coefficients(&s, &p, 4).unwrap();
    for (idx, v) in fourier_coefficients(&s, &p, 3) {
        assert!((sol.table.get(&idx) - v).norm() < 1e-9, "p={idx:?}");
    }
}
