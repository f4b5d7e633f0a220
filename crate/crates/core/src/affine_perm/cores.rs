//! (k+1)-cores, the vehicle for the bijection between 0-Grassmannian
//! elements and k-bounded partitions.
//!
//! A cell `(r, c)` (zero-based) has residue `c - r mod (k+1)`. The simple
//! reflection `s_i` acts on a core by adding every addable cell of residue
//! `i`, or removing every removable one when none is addable.

use super::{AffinePerm, Rank};
use crate::partition::Partition;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Core {
    rows: Vec<usize>,
}

impl Core {
    pub fn empty() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn as_partition(&self) -> Partition {
        Partition::from_multiset(self.rows.clone())
    }

    fn column_height(&self, c: usize) -> usize {
        self.rows.iter().take_while(|&&len| len > c).count()
    }

    pub fn hook(&self, r: usize, c: usize) -> usize {
        let arm = self.rows[r] - c - 1;
        let leg = self.column_height(c) - r - 1;
        arm + leg + 1
    }

    /// No cell has hook length exactly `period`.
    pub fn is_core(&self, period: usize) -> bool {
        (0..self.rows.len()).all(|r| (0..self.rows[r]).all(|c| self.hook(r, c) != period))
    }

    fn residue(r: usize, c: usize, period: usize) -> usize {
        (c + period - r % period) % period
    }

    fn addable(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..=self.rows.len() {
            let len = self.rows.get(r).copied().unwrap_or(0);
            if r == 0 || self.rows[r - 1] > len {
                out.push((r, len));
            }
        }
        out
    }

    fn removable(&self) -> Vec<(usize, usize)> {
        (0..self.rows.len())
            .filter(|&r| self.rows.get(r + 1).copied().unwrap_or(0) < self.rows[r])
            .map(|r| (r, self.rows[r] - 1))
            .collect()
    }

    /// Action of `s_i`.
    pub fn apply_simple(&self, i: usize, period: usize) -> Self {
        let add: Vec<_> = self.addable().into_iter().filter(|&(r, c)| Self::residue(r, c, period) == i).collect();
        let mut rows = self.rows.clone();
        if !add.is_empty() {
            for (r, _) in add {
                if r == rows.len() {
                    rows.push(1);
                } else {
                    rows[r] += 1;
                }
            }
        } else {
            for (r, c) in self.removable() {
                if Self::residue(r, c, period) == i {
                    rows[r] -= 1;
                }
            }
            while rows.last() == Some(&0) {
                rows.pop();
            }
        }
        Self { rows }
    }

    /// Core of a 0-Grassmannian element: act on the empty core with a reduced
    /// word, rightmost letter first.
    pub fn from_grassmannian(w: &AffinePerm) -> Self {
        let period = w.rank().period();
        w.reduced_word().iter().rev().fold(Self::empty(), |core, &i| core.apply_simple(i, period))
    }

    /// Reverse of [`Core::from_grassmannian`]: peel off all removable cells of
    /// one residue at a time.
    pub fn to_grassmannian(&self, rank: Rank) -> AffinePerm {
        let period = rank.period();
        let mut word = Vec::new();
        let mut core = self.clone();
        while !core.rows.is_empty() {
            let (r, c) = core.removable()[0];
            let i = Self::residue(r, c, period);
            word.push(i);
            core = core.apply_simple(i, period);
        }
        AffinePerm::from_word(rank, &word).expect("residues are in range")
    }

    /// `lambda_r = #{cells in row r with hook length <= k}`.
    pub fn to_bounded_partition(&self, rank: Rank) -> Partition {
        let k = rank.k();
        let parts = (0..self.rows.len()).map(|r| (0..self.rows[r]).filter(|&c| self.hook(r, c) <= k).count()).collect();
        Partition::from_multiset(parts)
    }

    /// Builds rows bottom-up, sliding each row right until all of its
    /// `lambda_r` cells have hook length at most `k`.
    pub fn from_bounded_partition(rank: Rank, lambda: &Partition) -> Self {
        let k = rank.k();
        let parts = lambda.parts();
        let mut rows = vec![0usize; parts.len()];
        for r in (0..parts.len()).rev() {
            let below = rows.get(r + 1).copied().unwrap_or(0);
            let mut shift = below.saturating_sub(parts[r]);
            loop {
                let len = shift + parts[r];
                let fits = (shift..len).all(|c| {
                    let leg = rows[r + 1..].iter().take_while(|&&l| l > c).count();
                    (len - c - 1) + leg < k
                });
                if fits {
                    rows[r] = len;
                    break;
                }
                shift += 1;
            }
        }
        Self { rows }
    }
}
