//! Integer partitions and compositions.
//!
//! Partitions compare lexicographically; [`partitions`] lists them in
//! decreasing lexicographic order, which refines dominance order, so every
//! unitriangular transition matrix in this crate is lower triangular in
//! that listing.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Self(parts))
    }

    /// Sorts `parts` into a partition, dropping zeros.
    pub fn from_multiset(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    pub fn is_bounded(&self, k: usize) -> bool {
        self.largest() <= k
    }

    pub fn check_bounded(&self, k: usize) -> Result<()> {
        if self.is_bounded(k) {
            Ok(())
        } else {
            Err(Error::NotBounded { parts: self.0.clone(), k })
        }
    }

    /// Dominance order: every partial sum of `self` is at least that of `other`.
    pub fn dominates(&self, other: &Partition) -> bool {
        let (mut a, mut b) = (0, 0);
        for i in 0..self.len().max(other.len()) {
            a += self.0.get(i).copied().unwrap_or(0);
            b += other.0.get(i).copied().unwrap_or(0);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Parts of the conjugate partition.
    pub fn conjugate(&self) -> Partition {
        let cols = self.largest();
        Partition((0..cols).map(|c| self.0.iter().filter(|&&p| p > c).count()).collect())
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn partitions(n: usize) -> Vec<Partition> {
    bounded_partitions(n, n)
}

/// All partitions of `n` with largest part at most `k`, in decreasing
/// lexicographic order.
pub fn bounded_partitions(n: usize, k: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(rest)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut Vec::new(), &mut out);
    out
}

/// Sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidComposition(parts));
        }
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn single(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Self(vec![n])
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The partition obtained by sorting the parts.
    pub fn sorted(&self) -> Partition {
        Partition::from_multiset(self.0.clone())
    }

    /// `[i_1, .., i_{r-1}, i_r + j_1, j_2, .., j_s]`.
    pub fn near_concat(&self, other: &Composition) -> Composition {
        match (self.0.split_last(), other.0.split_first()) {
            (Some((last, init)), Some((first, tail))) => {
                let mut parts = init.to_vec();
                parts.push(last + first);
                parts.extend_from_slice(tail);
                Composition(parts)
            }
            _ => self.concat(other),
        }
    }

    /// `[i_1, .., i_r, j_1, .., j_s]`.
    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Composition(parts)
    }

    /// All compositions obtained by merging runs of adjacent parts, including
    /// `self`.
    pub fn coarsenings(&self) -> Vec<Composition> {
        if self.0.is_empty() {
            return vec![Composition::empty()];
        }
        let cuts = self.0.len() - 1;
        (0u64..1 << cuts)
            .map(|mask| {
                let mut parts = vec![self.0[0]];
                for (c, &p) in self.0[1..].iter().enumerate() {
                    if mask >> c & 1 == 1 {
                        *parts.last_mut().unwrap() += p;
                    } else {
                        parts.push(p);
                    }
                }
                Composition(parts)
            })
            .collect()
    }

    /// All compositions refining `self`, including `self`.
    pub fn refinements(&self) -> Vec<Composition> {
        let mut out = vec![Composition::empty()];
        for &p in &self.0 {
            let pieces = compositions(p);
            out = out.iter().flat_map(|prefix| pieces.iter().map(move |c| prefix.concat(c))).collect();
        }
        out
    }

    /// `true` when `self` is obtained from `other` by merging adjacent parts.
    pub fn is_coarsening_of(&self, other: &Composition) -> bool {
        if self.size() != other.size() {
            return false;
        }
        let mut partial = 0;
        let mut cuts = other.0.iter().scan(0, |s, &p| {
            *s += p;
            Some(*s)
        });
        self.0.iter().all(|&p| {
            partial += p;
            cuts.any(|c| c == partial)
        })
    }
}

impl TryFrom<Vec<usize>> for Composition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<Composition> for Vec<usize> {
    fn from(c: Composition) -> Self {
        c.0
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// All compositions of `n` (the empty composition when `n == 0`).
pub fn compositions(n: usize) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition::empty()];
    }
    Composition::single(n).refinements_by_cuts()
}

impl Composition {
    fn refinements_by_cuts(&self) -> Vec<Composition> {
        let n = self.size();
        let cuts = n - 1;
        let mut out: Vec<Composition> = (0u64..1 << cuts)
            .map(|mask| {
                let mut parts = vec![1];
                for c in 0..cuts {
                    if mask >> c & 1 == 1 {
                        parts.push(1);
                    } else {
                        *parts.last_mut().unwrap() += 1;
                    }
                }
                Composition(parts)
            })
            .collect();
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..9).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(bounded_partitions(4, 2).len(), 3);
    }

    #[test]
    fn lex_order_refines_dominance() {
        for n in 0..8 {
            let ps = partitions(n);
            for (i, a) in ps.iter().enumerate() {
                for b in &ps[i + 1..] {
                    assert!(a > b);
                    assert!(!b.dominates(a) || a == b);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Composition::new(vec![1, 0, 2]).is_err());
        assert_eq!(Partition::from_multiset(vec![1, 3, 0, 2]).parts(), &[3, 2, 1]);
    }

    #[test]
    fn compositions_and_orders() {
        assert_eq!(compositions(4).len(), 8);
        let j = Composition::new(vec![2, 1]).unwrap();
        let refs: Vec<_> = j.refinements().iter().map(|c| c.parts().to_vec()).collect();
        assert_eq!(refs, vec![vec![1, 1, 1], vec![2, 1]]);
        let co: Vec<_> = j.coarsenings().iter().map(|c| c.parts().to_vec()).collect();
        assert_eq!(co, vec![vec![2, 1], vec![3]]);
        assert!(Composition::single(3).is_coarsening_of(&j));
        assert!(!Composition::new(vec![1, 2]).unwrap().is_coarsening_of(&j));
        let i = Composition::new(vec![1, 2]).unwrap();
        assert_eq!(i.near_concat(&j).parts(), &[1, 4, 1]);
        assert_eq!(i.concat(&j).parts(), &[1, 2, 2, 1]);
    }

    #[test]
    fn conjugate() {
        let p = Partition::new(vec![3, 1]).unwrap();
        assert_eq!(p.conjugate().parts(), &[2, 1, 1]);
    }
}
