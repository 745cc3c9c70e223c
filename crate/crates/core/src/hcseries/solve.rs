use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{eigenvalue_c, SpectralData, WeylElement};
use crate::qcore::{qpow, Mode, QParams};
use crate::C64;

use super::leading::leading_coefficient;
use super::PowerTable;

/// Relative size below which a recursion divisor counts as a resonance.
pub const NONDEGENERACY_TOL: f64 = 1e-10;

/// Default truncation degree for `n` variables.
pub fn default_truncation(n: usize) -> usize {
    match n {
        0..=2 => 24,
        3 => 16,
        4 => 10,
        _ => 8,
    }
}

/// A Harish Chandra series `z^{eta + rho} sum_p a(p) prod (z_i / z_{i+1})^{p_i}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HCSolution {
    pub spectral: SpectralData,
    pub prefactor_exponent: Vec<C64>,
    pub table: PowerTable,
    /// `None` when a q-Gamma factor of the normalization sits on a pole.
    pub leading_coefficient_mode_a: Option<C64>,
    pub leading_coefficient_mode_b: Option<C64>,
    pub params: QParams,
}

/// `kappa(p)_i = p_i - p_{i-1}` with `p_0 = p_n = 0`.
pub fn kappa(p: &[u32]) -> Vec<i32> {
    let n = p.len() + 1;
    (0..n)
        .map(|i| {
            let cur = if i < n - 1 { p[i] as i32 } else { 0 };
            let prev = if i > 0 { p[i - 1] as i32 } else { 0 };
            cur - prev
        })
        .collect()
}

/// Expansion of `prod_{j != i}` of the weight factors of `D^1` in the zone
/// `|z_1| < .. < |z_n|`, as a series in the ratios `z_l / z_{l+1}`.
fn weight_expansion(i: usize, n: usize, t: f64, max_degree: usize) -> PowerTable {
    let nv = n - 1;
    let mut acc = PowerTable::zeros(nv, max_degree);
    acc.set(&vec![0; nv], C64::new(1.0, 0.0));
    for j in (0..n).filter(|&j| j != i) {
        let (lo, hi) = (i.min(j), i.max(j));
        let (lead, rest) = if j > i { (1.0, 1.0 - t) } else { (t, t - 1.0) };
        let mut f = PowerTable::zeros(nv, max_degree);
        f.set(&vec![0; nv], C64::new(lead, 0.0));
        for m in 1..=max_degree as u32 {
            let r: Vec<u32> = (0..nv).map(|l| if l >= lo && l < hi { m } else { 0 }).collect();
            match f.position(&r) {
                Some(pos) => f.set_at(pos, C64::new(rest, 0.0)),
                None => break,
            }
        }
        acc = acc.mul(&f);
    }
    acc
}

struct Recursion {
    n: usize,
    t: f64,
    q: f64,
    /// `q^{(eta + rho)_i}`
    base: Vec<C64>,
    target: C64,
    weights: Vec<PowerTable>,
}

impl Recursion {
    fn new(s: &SpectralData, p: &QParams, max_degree: usize) -> Self {
        let n = s.n();
        let base = s.exponent(p.k()).iter().map(|&e| qpow(p.q(), e)).collect();
        let target = eigenvalue_c(&s.shifted_lambda(p.k()), 1, p).expect("m = 1 is valid");
        let weights = (0..n).map(|i| weight_expansion(i, n, p.t(), max_degree)).collect();
        Recursion {
            n,
            t: p.t(),
            q: p.q(),
            base,
            target,
            weights,
        }
    }

    /// `q^{(eta + rho + kappa(p))_i}`
    fn qexp(&self, p: &[u32], i: usize) -> C64 {
        self.base[i] * self.q.powi(kappa(p)[i])
    }

    /// `c^1_{lambda+rho} - c^1_{eta+rho+kappa(p)}`
    fn divisor(&self, p: &[u32]) -> C64 {
        let own: C64 = (0..self.n)
            .map(|i| self.qexp(p, i) * self.t.powi(i as i32 + 1))
            .sum();
        self.target - own
    }

    /// The contribution of strictly lower degrees to the coefficient of `p`.
    fn lower_terms(&self, p: &[u32], a: &PowerTable) -> C64 {
        let mut s = C64::new(0.0, 0.0);
        let mut pr = vec![0u32; p.len()];
        for i in 0..self.n {
            for (r, v) in self.weights[i].iter() {
                if v == C64::new(0.0, 0.0) || r.iter().all(|&x| x == 0) {
                    continue;
                }
                if r.iter().zip(p).any(|(x, y)| x > y) {
                    continue;
                }
                for l in 0..p.len() {
                    pr[l] = p[l] - r[l];
                }
                s += self.t * self.qexp(&pr, i) * v * a.get(&pr);
            }
        }
        s
    }
}

fn leading_or_none(s: &SpectralData, p: &QParams, mode: Mode) -> Result<Option<C64>> {
    match leading_coefficient(s, p, mode) {
        Ok(v) => Ok(Some(v)),
        Err(Error::RootPole { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Builds `a(p)`, `|p| <= N`, from the first-order eigen-equation.
///
/// Matching the coefficient of `z^{eta + rho + kappa(p)}` in
/// `D^1 phi = c^1_{lambda + rho} phi` gives
/// `(c^1_{lambda+rho} - c^1_{eta+rho+kappa(p)}) a(p) = sum_i sum_{0 != r <= p} t q^{(eta+rho+kappa(p-r))_i} W_i[r] a(p - r)`
/// where `W_i` is the zone expansion of the `i`-th weight. A divisor below
/// `1e-10 |c^1|` is reported as [`Error::Nondegeneracy`].
pub fn solve_coefficients(s: &SpectralData, p: &QParams, max_degree: usize) -> Result<HCSolution> {
    let n = s.n();
    let rec = Recursion::new(s, p, max_degree);
    let mut table = PowerTable::zeros(n - 1, max_degree);
    table.set_at(0, C64::new(1.0, 0.0));
    for idx in 1..table.len() {
        let pi = table.multi_index(idx).to_vec();
        let d = rec.divisor(&pi);
        if d.norm() < NONDEGENERACY_TOL * rec.target.norm() {
            return Err(Error::Nondegeneracy {
                p: pi,
                divisor: d.norm(),
            });
        }
        let v = rec.lower_terms(&pi, &table) / d;
        table.set_at(idx, v);
    }
    Ok(HCSolution {
        spectral: s.clone(),
        prefactor_exponent: s.exponent(p.k()),
        table,
        leading_coefficient_mode_a: leading_or_none(s, p, Mode::ModeA)?,
        leading_coefficient_mode_b: leading_or_none(s, p, Mode::ModeB)?,
        params: *p,
    })
}

impl HCSolution {
    pub fn n(&self) -> usize {
        self.spectral.n()
    }

    pub fn max_degree(&self) -> usize {
        self.table.max_degree()
    }

    /// Largest relative mismatch of the recursion over all stored `a(p)`.
    pub fn recursion_residual(&self) -> f64 {
        let rec = Recursion::new(&self.spectral, &self.params, self.table.max_degree());
        let mut worst: f64 = 0.0;
        for idx in 1..self.table.len() {
            let pi = self.table.multi_index(idx);
            let lhs = rec.divisor(pi) * self.table.coeff_at(idx);
            let rhs = rec.lower_terms(pi, &self.table);
            let scale = lhs.norm().max(rhs.norm());
            if scale > 0.0 {
                worst = worst.max((lhs - rhs).norm() / scale);
            }
        }
        worst
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    re: f64,
    im: f64,
}

impl From<C64> for ComplexJson {
    fn from(c: C64) -> Self {
        ComplexJson { re: c.re, im: c.im }
    }
}

impl From<&ComplexJson> for C64 {
    fn from(c: &ComplexJson) -> Self {
        C64::new(c.re, c.im)
    }
}

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    p: Vec<u32>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
struct HCSolutionJson {
    n: usize,
    q: f64,
    k: f64,
    lambda: Vec<ComplexJson>,
    w: WeylElement,
    #[serde(rename = "N")]
    max_degree: usize,
    prefactor_exponent: Vec<ComplexJson>,
    coeffs: Vec<CoeffJson>,
    #[serde(rename = "leading_coefficient_modeA")]
    leading_a: Option<ComplexJson>,
    #[serde(rename = "leading_coefficient_modeB")]
    leading_b: Option<ComplexJson>,
}

impl Serialize for HCSolution {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        HCSolutionJson {
            n: self.n(),
            q: self.params.q(),
            k: self.params.k(),
            lambda: self.spectral.lambda().iter().map(|&c| c.into()).collect(),
            w: self.spectral.w().clone(),
            max_degree: self.max_degree(),
            prefactor_exponent: self.prefactor_exponent.iter().map(|&c| c.into()).collect(),
            coeffs: self
                .table
                .iter()
                .map(|(p, a)| CoeffJson {
                    p: p.to_vec(),
                    re: a.re,
                    im: a.im,
                })
                .collect(),
            leading_a: self.leading_coefficient_mode_a.map(Into::into),
            leading_b: self.leading_coefficient_mode_b.map(Into::into),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for HCSolution {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = HCSolutionJson::deserialize(de)?;
        let params = QParams::new(j.q, j.k).map_err(D::Error::custom)?;
        let spectral = SpectralData::new(j.lambda.iter().map(C64::from).collect(), j.w).map_err(D::Error::custom)?;
        if spectral.n() != j.n {
            return Err(D::Error::custom("n does not match the length of lambda"));
        }
        let mut table = PowerTable::zeros(j.n - 1, j.max_degree);
        let mut filled = vec![false; table.len()];
        for c in &j.coeffs {
            let pos = table
                .position(&c.p)
                .ok_or_else(|| D::Error::custom(format!("multi-index {:?} outside the table", c.p)))?;
            table.set_at(pos, C64::new(c.re, c.im));
            filled[pos] = true;
        }
        if filled.iter().any(|f| !f) {
            return Err(D::Error::custom("coefficient table is incomplete"));
        }
        Ok(HCSolution {
            spectral,
            prefactor_exponent: j.prefactor_exponent.iter().map(C64::from).collect(),
            table,
            leading_coefficient_mode_a: j.leading_a.as_ref().map(C64::from),
            leading_coefficient_mode_b: j.leading_b.as_ref().map(C64::from),
            params,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::fq_coefficients;

    fn p() -> QParams {
        QParams::new(0.5, 0.4).unwrap()
    }

    #[test]
    fn kappa_differences() {
        assert_eq!(kappa(&[3]), vec![3, -3]);
        assert_eq!(kappa(&[1, 4]), vec![1, 3, -4]);
    }

    #[test]
    fn first_coefficient_two_variables() {
        let p = p();
        let (q, k, t) = (p.q(), p.k(), p.t());
        let s = SpectralData::from_real(&[0.3, -0.3], WeylElement::identity(2)).unwrap();
        let sol = solve_coefficients(&s, &p, 4).unwrap();
        assert_eq!(sol.table.get(&[0]), C64::new(1.0, 0.0));
        let l = 0.6;
        let expect = (1.0 - q.powf(k)) * (1.0 - q.powf(l + k)) / ((1.0 - q) * (1.0 - q.powf(l + 1.0))) * (q / t);
        assert!((sol.table.get(&[1]) - expect).norm() < 1e-14);
    }

    #[test]
    fn two_variables_match_hypergeometric_coefficients() {
        let p = p();
        let (q, k, t) = (p.q(), p.k(), p.t());
        for w in WeylElement::all(2) {
            let s = SpectralData::from_real(&[0.37, -0.37], w).unwrap();
            let sol = solve_coefficients(&s, &p, 30).unwrap();
            let e = s.eta();
            let l = e[0] - e[1];
            let c = fq_coefficients(C64::new(k, 0.0), l + k, l + 1.0, q, 31).unwrap();
            for d in 0..=30u32 {
                let expect = c[d as usize] * (q / t).powi(d as i32);
                let got = sol.table.get(&[d]);
                assert!((got - expect).norm() <= 1e-12 * expect.norm().max(1e-300), "d={d}");
            }
        }
    }

    #[test]
    fn recursion_is_consistent() {
        let s = SpectralData::from_real(&[0.31, -0.11, -0.2], WeylElement::from_one_based(&[2, 3, 1]).unwrap()).unwrap();
        let sol = solve_coefficients(&s, &p(), 10).unwrap();
        assert!(sol.recursion_residual() < 1e-12);
        assert!(sol.leading_coefficient_mode_a.is_some());
    }

    #[test]
    fn resonant_spectrum_is_rejected() {
        // eta_1 - eta_2 = -1 makes the divisor vanish at p = 1
        let s = SpectralData::from_real(&[-0.5, 0.5], WeylElement::identity(2)).unwrap();
        match solve_coefficients(&s, &p(), 5) {
            Err(Error::Nondegeneracy { p, .. }) => assert_eq!(p, vec![1]),
            other => panic!("expected nondegeneracy error, got {other:?}"),
        }
    }

    #[test]
    fn json_round_trip_is_exact() {
        let s = SpectralData::new(
            vec![C64::new(0.31, 0.05), C64::new(-0.11, -0.02), C64::new(-0.2, -0.03)],
            WeylElement::from_one_based(&[3, 1, 2]).unwrap(),
        )
        .unwrap();
        let sol = solve_coefficients(&s, &p(), 6).unwrap();
        let text = serde_json::to_string(&sol).unwrap();
        let back: HCSolution = serde_json::from_str(&text).unwrap();
        assert_eq!(back, sol);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["N"], 6);
        assert_eq!(v["w"], serde_json::json!([3, 1, 2]));
        assert!(v["leading_coefficient_modeA"]["re"].is_f64());
        assert_eq!(v["coeffs"][0]["p"], serde_json::json!([0, 0]));
    }
}
