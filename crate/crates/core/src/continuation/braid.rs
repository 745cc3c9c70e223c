use nalgebra::DMatrix;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hcseries::{leading_coefficient, solve_coefficients};
use crate::operators::{SpectralData, WeylElement};
use crate::qcore::{qpow, theta_raw, Mode, QParams};
use crate::C64;

use super::connection::{check_path, theta_nonresonant};

/// Continuation coefficients across the wall `z_i = z_{i+1}`.
///
/// With `Phi_w` the series solution for `w` scaled by its ModeA leading
/// coefficient and `s = s_i` the adjacent transposition,
/// `Phi_w(z)    = entries[0][0] Phi_w(s z) + entries[0][1] Phi_{s w}(s z)`,
/// `Phi_{s w}(z) = entries[1][0] Phi_w(s z) + entries[1][1] Phi_{s w}(s z)`,
/// where `s z` swaps the coordinates `i` and `i+1`, and `ratio = z_i / z_{i+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionMatrix {
    /// 1-based index of the transposition.
    pub i: usize,
    pub w: WeylElement,
    pub ratio: C64,
    pub entries: [[C64; 2]; 2],
}

/// `(c_same, c_swap)` for the row of `eta` at ratio `zr`:
/// `c_same = Theta(q^k) Theta(q^{e'}/Z) / (Theta(q^{e'}) Theta(q^k/Z)) Z^{e+k}`,
/// `c_swap = q^{k e} Theta(q^{e+k}) Theta(1/Z) / (Theta(q^e) Theta(q^k/Z)) Z^k`,
/// with `e = eta_i - eta_{i+1}`, `e' = -e`.
fn row(eta: &[C64], i: usize, zr: C64, p: &QParams) -> Result<[C64; 2]> {
    let (q, k) = (p.q(), p.k());
    let e = eta[i] - eta[i + 1];
    let qk = C64::new(q.powf(k), 0.0);
    let den = theta_nonresonant(qk / zr, q, "q^k z_{i+1}/z_i")?;
    let same = theta_raw(qk, q) * theta_raw(qpow(q, -e) / zr, q)
        / (theta_nonresonant(qpow(q, -e), q, "spectral difference")? * den)
        * zr.powc(e + k);
    let swap = qpow(q, e * k) * theta_raw(qpow(q, e + k), q) * theta_raw(1.0 / zr, q)
        / (theta_nonresonant(qpow(q, e), q, "spectral difference")? * den)
        * zr.powf(k);
    Ok([same, swap])
}

fn check_index(n: usize, i: usize, z: &[C64]) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::Domain(format!("transposition index {i} outside 1..={}", n - 1)));
    }
    if z.len() != n {
        return Err(Error::Domain(format!("expected {n} coordinates, got {}", z.len())));
    }
    Ok(())
}

/// Continuation matrix across the wall `z_i = z_{i+1}` (1-based `i`) at `z`.
pub fn braid_matrix(s: &SpectralData, i: usize, z: &[C64], p: &QParams) -> Result<ConnectionMatrix> {
    check_index(s.n(), i, z)?;
    let zr = z[i - 1] / z[i];
    check_path(zr)?;
    let [a, b] = row(s.eta(), i - 1, zr, p)?;
    let sw = s.w().swap_adjacent(i - 1);
    let [d, c] = row(&sw.act(s.lambda()), i - 1, zr, p)?;
    Ok(ConnectionMatrix {
        i,
        w: s.w().clone(),
        ratio: zr,
        entries: [[a, b], [c, d]],
    })
}

/// Swaps coordinates `i` and `i+1` (0-based `i`).
pub fn swap_coordinates(z: &[C64], i: usize) -> Vec<C64> {
    let mut v = z.to_vec();
    v.swap(i, i + 1);
    v
}

/// The continuation across wall `i` (1-based) on the full solution space,
/// indexed by [`WeylElement::all`].
pub fn braid_generator(lambda: &[C64], i: usize, z: &[C64], p: &QParams) -> Result<DMatrix<C64>> {
    let n = lambda.len();
    check_index(n, i, z)?;
    let zr = z[i - 1] / z[i];
    check_path(zr)?;
    let all = WeylElement::all(n);
    let mut m = DMatrix::zeros(all.len(), all.len());
    for (a, w) in all.iter().enumerate() {
        let [same, swap] = row(&w.act(lambda), i - 1, zr, p)?;
        let b = all
            .iter()
            .position(|x| *x == w.swap_adjacent(i - 1))
            .expect("permutations are closed under transpositions");
        m[(a, a)] = same;
        m[(a, b)] = swap;
    }
    Ok(m)
}

/// Deviations found by [`verify_braid_relations`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BraidReport {
    /// `|B_i(z) B_i(s_i z) - 1|` for each wall.
    pub double_crossing: Vec<f64>,
    /// Relative braid-relation defect for `n = 3`.
    pub braid: Option<f64>,
    /// Whether all Weyl images share the eigenvalue tuple.
    pub eigenvalues_preserved: bool,
    pub max_deviation: f64,
}

fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Checks that crossing a wall twice is the identity and, for `n = 3`, that
/// `B_1(z) B_2(s_1 z) B_1(s_2 s_1 z) = B_2(z) B_1(s_2 z) B_2(s_1 s_2 z)`.
pub fn verify_braid_relations(s: &SpectralData, p: &QParams, z: &[C64]) -> Result<BraidReport> {
    let n = s.n();
    if n > 3 {
        return Err(Error::Domain(format!("braid verification supports n <= 3, got {n}")));
    }
    let lam = s.lambda();
    let mut double_crossing = Vec::new();
    for i in 1..n {
        let prod = braid_generator(lam, i, z, p)? * braid_generator(lam, i, &swap_coordinates(z, i - 1), p)?;
        let id = DMatrix::<C64>::identity(prod.nrows(), prod.ncols());
        double_crossing.push(max_abs(&(prod - id)));
    }
    let braid = if n == 3 {
        let side = |a: usize, b: usize| -> Result<DMatrix<C64>> {
            let z1 = swap_coordinates(z, a - 1);
            let z2 = swap_coordinates(&z1, b - 1);
            Ok(braid_generator(lam, a, z, p)? * braid_generator(lam, b, &z1, p)? * braid_generator(lam, a, &z2, p)?)
        };
        let (l, r) = (side(1, 2)?, side(2, 1)?);
        Some(max_abs(&(&l - &r)) / max_abs(&l))
    } else {
        None
    };
    let reference = s.eigenvalues(p);
    let eigenvalues_preserved = WeylElement::all(n)
        .into_iter()
        .map(|w| s.with_w(w).map(|x| x.eigenvalues(p)))
        .collect::<Result<Vec<_>>>()?
        .iter()
        .all(|e| *e == reference);
    let max_deviation = double_crossing.iter().chain(braid.iter()).fold(0.0, |a, &b| f64::max(a, b));
    Ok(BraidReport {
        double_crossing,
        braid,
        eigenvalues_preserved,
        max_deviation,
    })
}

/// `|Phi_w(z) - (row_0 . (Phi_w, Phi_{s w})(s z))| / |Phi_w(z)|` with every
/// series truncated at total degree `max_degree` and evaluated on the
/// annulus where it still converges.
pub fn dual_zone_residual(s: &SpectralData, i: usize, z: &[C64], p: &QParams, max_degree: usize) -> Result<f64> {
    let m = braid_matrix(s, i, z, p)?;
    let other = s.with_w(s.w().swap_adjacent(i - 1))?;
    let own = (leading_coefficient(s, p, Mode::ModeA)?, solve_coefficients(s, p, max_degree)?);
    let swapped = (leading_coefficient(&other, p, Mode::ModeA)?, solve_coefficients(&other, p, max_degree)?);
    let sz = swap_coordinates(z, i - 1);
    let lhs = own.0 * own.1.evaluate_in_annulus(z)?.value;
    let rhs = m.entries[0][0] * own.0 * own.1.evaluate_in_annulus(&sz)?.value
        + m.entries[0][1] * swapped.0 * swapped.1.evaluate_in_annulus(&sz)?.value;
    Ok((lhs - rhs).norm() / lhs.norm())
}

#[derive(Serialize, Deserialize)]
struct CJson {
    re: f64,
    im: f64,
}

impl From<C64> for CJson {
    fn from(c: C64) -> Self {
        CJson { re: c.re, im: c.im }
    }
}

#[derive(Serialize, Deserialize)]
struct ConnectionJson {
    i: usize,
    w: WeylElement,
    ratio: CJson,
    entries: [[CJson; 2]; 2],
}

impl Serialize for ConnectionMatrix {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let e = self.entries;
        ConnectionJson {
            i: self.i,
            w: self.w.clone(),
            ratio: self.ratio.into(),
            entries: [[e[0][0].into(), e[0][1].into()], [e[1][0].into(), e[1][1].into()]],
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ConnectionMatrix {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let j = ConnectionJson::deserialize(de)?;
        let c = |x: &CJson| C64::new(x.re, x.im);
        Ok(ConnectionMatrix {
            i: j.i,
            w: j.w,
            ratio: c(&j.ratio),
            entries: [
                [c(&j.entries[0][0]), c(&j.entries[0][1])],
                [c(&j.entries[1][0]), c(&j.entries[1][1])],
            ],
        })
    }
}
