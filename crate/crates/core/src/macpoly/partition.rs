use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("parts {parts:?} are not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.iter().take_while(|&&x| x > 0).count()
    }

    /// The parts padded with zeros (or stripped of trailing zeros) to length `n`.
    pub fn padded(&self, n: usize) -> Result<Vec<u32>> {
        if self.length() > n {
            return Err(Error::Domain(format!("partition {self} has more than {n} parts")));
        }
        let mut v = self.0[..self.length()].to_vec();
        v.resize(n, 0);
        Ok(v)
    }

    /// Dominance order: equal sizes and every partial sum at least as large.
    pub fn dominates(&self, other: &Partition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let len = self.0.len().max(other.0.len());
        let (mut a, mut b) = (0u32, 0u32);
        for i in 0..len {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    /// All partitions of `size` with at most `n` parts, in reverse
    /// lexicographic order (a linear extension of dominance).
    pub fn all(size: u32, n: usize) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if slots == 0 {
                if rest == 0 {
                    out.push(Partition(prefix.clone()));
                }
                return;
            }
            for a in (0..=max.min(rest)).rev() {
                if (a as u64) * (slots as u64) < rest as u64 {
                    break;
                }
                prefix.push(a);
                rec(rest - a, a, slots - 1, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(size, size, n, &mut Vec::with_capacity(n), &mut out);
        out
    }

    /// Partitions with at most `n` parts dominated by `self`, largest first.
    pub fn dominance_ideal(&self, n: usize) -> Result<Vec<Partition>> {
        let me = Partition(self.padded(n)?);
        Ok(Partition::all(self.size(), n)
            .into_iter()
            .filter(|mu| me.dominates(mu))
            .collect())
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn validation_and_padding() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(part(&[2, 1, 0, 0]).padded(2).unwrap(), vec![2, 1]);
        assert_eq!(part(&[2]).padded(3).unwrap(), vec![2, 0, 0]);
        assert!(part(&[1, 1, 1]).padded(2).is_err());
    }

    #[test]
    fn dominance() {
        assert!(part(&[3, 0, 0]).dominates(&part(&[2, 1, 0])));
        assert!(part(&[2, 1]).dominates(&part(&[1, 1, 1])));
        assert!(!part(&[1, 1, 1]).dominates(&part(&[2, 1])));
        // incomparable pair
        assert!(!part(&[3, 1, 1, 1]).dominates(&part(&[2, 2, 2])));
        assert!(!part(&[2, 2, 2]).dominates(&part(&[3, 1, 1, 1])));
        assert!(!part(&[2]).dominates(&part(&[1])));
    }

    #[test]
    fn enumeration() {
        let all: Vec<Vec<u32>> = Partition::all(4, 3).into_iter().map(Into::into).collect();
        assert_eq!(all, vec![vec![4, 0, 0], vec![3, 1, 0], vec![2, 2, 0], vec![2, 1, 1]]);
        let ideal = part(&[2, 2]).dominance_ideal(3).unwrap();
        assert_eq!(ideal, vec![part(&[2, 2, 0]), part(&[2, 1, 1])]);
        assert_eq!(Partition::all(0, 2), vec![part(&[0, 0])]);
    }

    #[test]
    fn json() {
        let p: Partition = serde_json::from_str("[2,1,0]").unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[2,1,0]");
        assert!(serde_json::from_str::<Partition>("[0,1]").is_err());
    }
}
