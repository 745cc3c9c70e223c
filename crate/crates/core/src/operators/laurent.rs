use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// A Laurent polynomial in `n` variables; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LaurentJson", into = "LaurentJson")]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Vec<i32>, C64>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<i32>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    n: usize,
    terms: Vec<TermJson>,
}

impl TryFrom<LaurentJson> for LaurentPoly {
    type Error = Error;
    fn try_from(j: LaurentJson) -> Result<Self> {
        let mut p = LaurentPoly::zero(j.n);
        for t in j.terms {
            if t.exp.len() != j.n {
                return Err(Error::Domain(format!(
                    "exponent {:?} has length {} but n = {}",
                    t.exp,
                    t.exp.len(),
                    j.n
                )));
            }
            p.add_term(t.exp, C64::new(t.re, t.im));
        }
        Ok(p)
    }
}

impl From<LaurentPoly> for LaurentJson {
    fn from(p: LaurentPoly) -> Self {
        LaurentJson {
            n: p.n,
            terms: p
                .terms
                .into_iter()
                .map(|(exp, c)| TermJson { exp, re: c.re, im: c.im })
                .collect(),
        }
    }
}

impl LaurentPoly {
    pub fn zero(n: usize) -> Self {
        LaurentPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: C64) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    /// The monomial symmetric function `m_mu`: sum of `z^a` over the distinct
    /// rearrangements `a` of `mu`.
    pub fn monomial_symmetric(mu: &[i32]) -> Self {
        let n = mu.len();
        let mut p = Self::zero(n);
        for a in mu.iter().copied().permutations(n).unique() {
            p.add_term(a, C64::new(1.0, 0.0));
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &C64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[i32]) -> C64 {
        self.terms.get(exp).copied().unwrap_or_default()
    }

    pub fn add_term(&mut self, exp: Vec<i32>, c: C64) {
        assert_eq!(exp.len(), self.n, "exponent length must equal n");
        let zero = C64::new(0.0, 0.0);
        match self.terms.entry(exp) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == zero {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                if c != zero {
                    v.insert(c);
                }
            }
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = Self::zero(self.n);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, v) in &other.terms {
            out.add_term(e.clone(), *v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn eval(&self, z: &[C64]) -> C64 {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(z).fold(*c, |acc, (&a, &zi)| acc * zi.powi(a)))
            .sum()
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficient-wise difference `max |a_e - b_e|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).max_abs()
    }

    /// Drops coefficients with modulus at most `rel * max_abs()`.
    pub fn pruned(&self, rel: f64) -> Self {
        let cut = rel * self.max_abs();
        LaurentPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.norm() > cut)
                .map(|(e, c)| (e.clone(), *c))
                .collect(),
        }
    }

    /// Smallest and largest exponent occurring in any variable.
    pub fn exponent_range(&self) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().flatten().copied();
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), a| (lo.min(a), hi.max(a))))
    }

    /// Distinct total degrees, ascending.
    pub fn degrees(&self) -> Vec<i32> {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<i32>())
            .sorted()
            .dedup()
            .collect()
    }

    /// Whether every coordinate permutation maps the polynomial to itself,
    /// coefficient-wise within `tol * max_abs()`.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        let cut = tol * self.max_abs().max(f64::MIN_POSITIVE);
        self.terms.iter().all(|(e, c)| {
            e.iter()
                .copied()
                .permutations(self.n)
                .all(|a| (self.coeff(&a) - c).norm() <= cut)
        })
    }

    /// Coefficients on the monomial symmetric basis, keyed by the weakly
    /// decreasing exponent vector.
    pub fn symmetric_coefficients(&self) -> BTreeMap<Vec<i32>, C64> {
        self.terms
            .iter()
            .filter(|(e, _)| e.windows(2).all(|w| w[0] >= w[1]))
            .map(|(e, c)| (e.clone(), *c))
            .collect()
    }
}
