use std::collections::HashMap;

use crate::C64;

/// Compositions of `d` into `parts` nonnegative parts, lexicographically ascending.
pub fn compositions(d: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(d: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for a in 0..=d {
            prefix.push(a);
            rec(d - a, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(d, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// Dense table of coefficients indexed by multi-indices `p` with `|p| <= N`,
/// stored in graded order (total degree, then lexicographic).
#[derive(Debug, Clone, PartialEq)]
pub struct PowerTable {
    n_vars: usize,
    max_degree: usize,
    index: Vec<Vec<u32>>,
    lookup: HashMap<Vec<u32>, usize>,
    coeffs: Vec<C64>,
}

impl PowerTable {
    pub fn zeros(n_vars: usize, max_degree: usize) -> Self {
        let index: Vec<Vec<u32>> = (0..=max_degree as u32)
            .flat_map(|d| compositions(d, n_vars))
            .collect();
        let lookup = index.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let coeffs = vec![C64::new(0.0, 0.0); index.len()];
        PowerTable {
            n_vars,
            max_degree,
            index,
            lookup,
            coeffs,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn position(&self, p: &[u32]) -> Option<usize> {
        self.lookup.get(p).copied()
    }

    /// Coefficient at `p`, zero outside the table.
    pub fn get(&self, p: &[u32]) -> C64 {
        self.position(p).map_or(C64::new(0.0, 0.0), |i| self.coeffs[i])
    }

    pub fn set(&mut self, p: &[u32], v: C64) {
        let i = self
            .position(p)
            .unwrap_or_else(|| panic!("multi-index {p:?} outside the table"));
        self.coeffs[i] = v;
    }

    pub fn multi_index(&self, i: usize) -> &[u32] {
        &self.index[i]
    }

    pub fn coeff_at(&self, i: usize) -> C64 {
        self.coeffs[i]
    }

    pub(crate) fn set_at(&mut self, i: usize, v: C64) {
        self.coeffs[i] = v;
    }

    /// `(p, a(p))` in graded order.
    pub fn iter(&self) -> impl Iterator<Item = (&[u32], C64)> {
        self.index.iter().map(|p| p.as_slice()).zip(self.coeffs.iter().copied())
    }

    /// Product of two tables truncated at this table's degree.
    pub fn mul(&self, other: &PowerTable) -> PowerTable {
        let mut out = PowerTable::zeros(self.n_vars, self.max_degree);
        for (a, va) in self.iter() {
            if va == C64::new(0.0, 0.0) {
                continue;
            }
            for (b, vb) in other.iter() {
                let c: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if let Some(i) = out.position(&c) {
                    out.coeffs[i] += va * vb;
                }
            }
        }
        out
    }

    /// `sum_p a(p) x^p`.
    pub fn eval(&self, x: &[C64]) -> C64 {
        self.iter()
            .map(|(p, a)| p.iter().zip(x).fold(a, |acc, (&e, &xi)| acc * xi.powu(e)))
            .sum()
    }

    /// `sum_{|p| = d} |a(p)| |x^p|` for each degree `d`.
    pub fn level_norms(&self, x: &[C64]) -> Vec<f64> {
        let mut out = vec![0.0; self.max_degree + 1];
        for (p, a) in self.iter() {
            let d: u32 = p.iter().sum();
            let m = p.iter().zip(x).fold(a.norm(), |acc, (&e, xi)| acc * xi.norm().powi(e as i32));
            out[d as usize] += m;
        }
        out
    }

    /// Restriction to degrees `<= n`.
    pub fn truncated(&self, n: usize) -> PowerTable {
        let mut out = PowerTable::zeros(self.n_vars, n.min(self.max_degree));
        for i in 0..out.len() {
            let v = self.get(&out.index[i]);
            out.coeffs[i] = v;
        }
        out
    }
}
