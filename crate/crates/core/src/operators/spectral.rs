use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::QParams;
use crate::C64;

use super::eigenvalue_c;

/// A permutation of `{0, .., n-1}`; read and written 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct WeylElement(Vec<usize>);

impl TryFrom<Vec<usize>> for WeylElement {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        WeylElement::from_one_based(&v)
    }
}

impl From<WeylElement> for Vec<usize> {
    fn from(w: WeylElement) -> Self {
        w.one_based()
    }
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement((0..n).collect())
    }

    /// The longest element `i -> n + 1 - i`.
    pub fn reversal(n: usize) -> Self {
        WeylElement((0..n).rev().collect())
    }

    pub fn from_one_based(v: &[usize]) -> Result<Self> {
        let n = v.len();
        let mut seen = vec![false; n];
        for &i in v {
            if i == 0 || i > n || seen[i - 1] {
                return Err(Error::Domain(format!("{v:?} is not a permutation of 1..{n}")));
            }
            seen[i - 1] = true;
        }
        Ok(WeylElement(v.iter().map(|i| i - 1).collect()))
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// All `n!` elements in lexicographic order of their one-line notation.
    pub fn all(n: usize) -> Vec<Self> {
        use itertools::Itertools;
        (0..n).permutations(n).map(WeylElement).collect()
    }

    /// `sigma_i w`: swaps positions `i` and `i + 1` (0-based `i`) of the
    /// one-line notation, so that `(sigma_i w) lambda` swaps `eta_i, eta_{i+1}`.
    pub fn swap_adjacent(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.swap(i, i + 1);
        WeylElement(v)
    }

    /// `(w lambda)_i = lambda_{w(i)}`.
    pub fn act<T: Copy>(&self, lambda: &[T]) -> Vec<T> {
        self.0.iter().map(|&j| lambda[j]).collect()
    }
}

/// `rho_i = k ((n + 1)/2 - i)` for `i = 1..n`.
pub fn rho(n: usize, k: f64) -> Vec<f64> {
    (1..=n).map(|i| k * ((n as f64 + 1.0) / 2.0 - i as f64)).collect()
}

/// Spectral vector `lambda` with `sum lambda = 0`, a Weyl element `w`, and
/// the derived `eta = w lambda`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralData {
    lambda: Vec<C64>,
    w: WeylElement,
    eta: Vec<C64>,
}

impl SpectralData {
    pub fn new(lambda: Vec<C64>, w: WeylElement) -> Result<Self> {
        let n = lambda.len();
        if n < 2 {
            return Err(Error::Domain(format!("need n >= 2, got {n}")));
        }
        if w.n() != n {
            return Err(Error::Domain(format!(
                "Weyl element acts on {} letters but lambda has {n} entries",
                w.n()
            )));
        }
        let s: C64 = lambda.iter().sum();
        if s.norm() > 1e-12 {
            return Err(Error::Domain(format!("lambda must sum to zero, sum = {s}")));
        }
        let eta = w.act(&lambda);
        Ok(SpectralData { lambda, w, eta })
    }

    pub fn from_real(lambda: &[f64], w: WeylElement) -> Result<Self> {
        Self::new(lambda.iter().map(|&x| C64::new(x, 0.0)).collect(), w)
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[C64] {
        &self.lambda
    }

    pub fn w(&self) -> &WeylElement {
        &self.w
    }

    pub fn eta(&self) -> &[C64] {
        &self.eta
    }

    /// Same `lambda`, different Weyl element.
    pub fn with_w(&self, w: WeylElement) -> Result<Self> {
        Self::new(self.lambda.clone(), w)
    }

    /// `eta + rho`, the exponent of the leading monomial.
    pub fn exponent(&self, k: f64) -> Vec<C64> {
        self.eta
            .iter()
            .zip(rho(self.n(), k))
            .map(|(e, r)| e + r)
            .collect()
    }

    /// `lambda + rho`.
    pub fn shifted_lambda(&self, k: f64) -> Vec<C64> {
        self.lambda
            .iter()
            .zip(rho(self.n(), k))
            .map(|(e, r)| e + r)
            .collect()
    }

    /// The eigenvalue tuple `c^1 .. c^n` at `lambda + rho`.
    pub fn eigenvalues(&self, p: &QParams) -> Vec<C64> {
        let g = self.shifted_lambda(p.k());
        (1..=self.n())
            .map(|m| eigenvalue_c(&g, m, p).expect("m within 1..=n"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_basics() {
        let all = WeylElement::all(3);
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], WeylElement::identity(3));
        assert_eq!(all[5], WeylElement::reversal(3));
        let w = WeylElement::from_one_based(&[2, 3, 1]).unwrap();
        assert_eq!(w.one_based(), vec![2, 3, 1]);
        assert_eq!(w.act(&[10, 20, 30]), vec![20, 30, 10]);
        assert_eq!(w.swap_adjacent(0).act(&[10, 20, 30]), vec![30, 20, 10]);
        assert!(WeylElement::from_one_based(&[1, 1, 2]).is_err());
        assert!(WeylElement::from_one_based(&[0, 1]).is_err());
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, "[2,3,1]");
        assert_eq!(serde_json::from_str::<WeylElement>(&s).unwrap(), w);
    }

    #[test]
    fn spectral_validation() {
        assert!(SpectralData::from_real(&[0.3, -0.2], WeylElement::identity(2)).is_err());
        assert!(SpectralData::from_real(&[0.3, -0.3], WeylElement::identity(3)).is_err());
        assert!(SpectralData::from_real(&[0.0], WeylElement::identity(1)).is_err());
        let s = SpectralData::from_real(&[0.31, -0.11, -0.2], WeylElement::from_one_based(&[3, 1, 2]).unwrap()).unwrap();
        let eta: Vec<f64> = s.eta().iter().map(|c| c.re).collect();
        assert_eq!(eta, vec![-0.2, 0.31, -0.11]);
        let e = s.exponent(0.4);
        assert!((e[0].re - (-0.2 + 0.4)).abs() < 1e-15);
        assert!((e[2].re - (-0.11 - 0.4)).abs() < 1e-15);
    }

    #[test]
    fn rho_is_staircase() {
        assert_eq!(rho(2, 0.4), vec![0.2, -0.2]);
        let r = rho(4, 1.0);
        assert_eq!(r, vec![1.5, 0.5, -0.5, -1.5]);
    }
}
