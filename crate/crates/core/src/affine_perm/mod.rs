//! The affine symmetric group of rank `k`, realized as bijections
//! `w: Z -> Z` with `w(n + k + 1) = w(n) + k + 1`.
//!
//! Elements are stored by their window `[w(1), .., w(k+1)]`. Products
//! compose as functions with the right factor applied first, so the word
//! `s_{i_1} s_{i_2} .. s_{i_l}` evaluates `s_{i_l}` innermost.

mod cores;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use cores::Core;

use crate::error::{Error, Result};
use crate::partition::Partition;

/// Largest length accepted by enumeration routines. Window entries of an
/// element of length `L` are bounded by `(L + 1)(k + 1)` in absolute value,
/// so any bound that fits in memory is far from overflowing `i64`.
pub const MAX_LENGTH: usize = 24;

/// Number of non-affine simple generators; the period is `k + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Rank(usize);

impl Rank {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            Err(Error::InvalidRank(k))
        } else {
            Ok(Self(k))
        }
    }

    pub fn k(self) -> usize {
        self.0
    }

    pub fn period(self) -> usize {
        self.0 + 1
    }

    pub fn residues(self) -> std::ops::RangeInclusive<usize> {
        0..=self.0
    }

    fn check_residue(self, i: usize) -> Result<()> {
        if i > self.0 {
            Err(Error::ResidueOutOfRange { residue: i, k: self.0 })
        } else {
            Ok(())
        }
    }
}

impl TryFrom<usize> for Rank {
    type Error = Error;
    fn try_from(k: usize) -> Result<Self> {
        Self::new(k)
    }
}

impl From<Rank> for usize {
    fn from(r: Rank) -> usize {
        r.0
    }
}

/// An element of the affine symmetric group, in window notation.
///
/// The derived order is lexicographic on windows; it is only used to make
/// iteration deterministic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePerm {
    window: Box<[i64]>,
}

impl AffinePerm {
    pub fn identity(rank: Rank) -> Self {
        Self { window: (1..=rank.period() as i64).collect() }
    }

    /// Validates the window: one entry per residue class and the sum
    /// `1 + 2 + .. + (k+1)`.
    pub fn from_window(window: Vec<i64>) -> Result<Self> {
        let n = window.len();
        if n < 2 {
            return Err(Error::InvalidWindow { window, reason: "window needs at least two entries" });
        }
        let period = n as i64;
        let residues: BTreeSet<i64> = window.iter().map(|v| v.rem_euclid(period)).collect();
        if residues.len() != n {
            return Err(Error::InvalidWindow { window, reason: "entries repeat a residue class" });
        }
        let sum = window.iter().try_fold(0i64, |acc, &v| acc.checked_add(v));
        if sum != Some(period * (period + 1) / 2) {
            return Err(Error::InvalidWindow { window, reason: "entries do not sum to (k+1)(k+2)/2" });
        }
        Ok(Self { window: window.into_boxed_slice() })
    }

    pub fn simple(rank: Rank, i: usize) -> Result<Self> {
        rank.check_residue(i)?;
        let n = rank.period();
        let mut window: Vec<i64> = (1..=n as i64).collect();
        if i == 0 {
            window[0] = 0;
            window[n - 1] = n as i64 + 1;
        } else {
            window.swap(i - 1, i);
        }
        Ok(Self { window: window.into_boxed_slice() })
    }

    /// Evaluates `s_{word[0]} s_{word[1]} ..` (no reducedness check).
    pub fn from_word(rank: Rank, word: &[usize]) -> Result<Self> {
        let mut w = Self::identity(rank);
        for &i in word.iter().rev() {
            rank.check_residue(i)?;
            w = w.left_mul_simple(i);
        }
        Ok(w)
    }

    /// Like [`AffinePerm::from_word`] but rejects non-reduced words.
    pub fn from_reduced_word(rank: Rank, word: &[usize]) -> Result<Self> {
        let w = Self::from_word(rank, word)?;
        if w.length() != word.len() {
            return Err(Error::NotReduced(word.to_vec()));
        }
        Ok(w)
    }

    /// The affine transposition swapping `i + m(k+1)` and `j + m(k+1)` for all `m`.
    pub fn transposition(rank: Rank, i: i64, j: i64) -> Result<Self> {
        let period = rank.period() as i64;
        if (i - j).rem_euclid(period) == 0 {
            return Err(Error::CongruentTransposition { i, j, period: rank.period() });
        }
        let window = (1..=period)
            .map(|p| {
                if (p - i).rem_euclid(period) == 0 {
                    p + (j - i)
                } else if (p - j).rem_euclid(period) == 0 {
                    p - (j - i)
                } else {
                    p
                }
            })
            .collect();
        Ok(Self { window })
    }

    pub fn rank(&self) -> Rank {
        Rank(self.window.len() - 1)
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    fn period(&self) -> i64 {
        self.window.len() as i64
    }

    pub fn apply(&self, n: i64) -> i64 {
        let period = self.period();
        let r = (n - 1).rem_euclid(period);
        let q = (n - 1 - r) / period;
        self.window[r as usize] + q * period
    }

    /// `w^{-1}(n)`.
    pub fn apply_inverse(&self, n: i64) -> i64 {
        let period = self.period();
        let (p, v) = self
            .window
            .iter()
            .enumerate()
            .find(|(_, &v)| (v - n).rem_euclid(period) == 0)
            .expect("window covers every residue");
        p as i64 + 1 + (n - v) / period * period
    }

    pub fn check_rank(&self, other: &Self) -> Result<()> {
        if self.window.len() != other.window.len() {
            Err(Error::RankMismatch(self.rank().k(), other.rank().k()))
        } else {
            Ok(())
        }
    }

    /// `self * other`: apply `other` first.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        Self { window: other.window.iter().map(|&v| self.apply(v)).collect() }
    }

    pub fn inverse(&self) -> Self {
        let period = self.period();
        let mut window = vec![0; self.window.len()];
        for (p, &v) in self.window.iter().enumerate() {
            let r = (v - 1).rem_euclid(period);
            let q = (v - 1 - r) / period;
            window[r as usize] = p as i64 + 1 - q * period;
        }
        Self { window: window.into_boxed_slice() }
    }

    /// Coxeter length, from the inversion count
    /// `sum_{1 <= i < j <= k+1} |floor((w(j) - w(i)) / (k+1))|`.
    pub fn length(&self) -> usize {
        let period = self.period();
        let w = &self.window;
        let mut total = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                total += (w[j] - w[i]).div_euclid(period).unsigned_abs() as usize;
            }
        }
        total
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().zip(1..).all(|(&v, p)| v == p)
    }

    /// `s_i * self`: swaps the values `i` and `i + 1` modulo `k + 1`.
    pub fn left_mul_simple(&self, i: usize) -> Self {
        let period = self.period();
        let i = i as i64;
        let window = self
            .window
            .iter()
            .map(|&v| match (v - i).rem_euclid(period) {
                0 => v + 1,
                1 => v - 1,
                _ => v,
            })
            .collect();
        Self { window }
    }

    /// `self * s_i`: swaps the positions `i` and `i + 1`.
    pub fn right_mul_simple(&self, i: usize) -> Self {
        let mut window = self.window.to_vec();
        let n = window.len();
        if i == 0 {
            let (first, last) = (window[0], window[n - 1]);
            window[0] = last - n as i64;
            window[n - 1] = first + n as i64;
        } else {
            window.swap(i - 1, i);
        }
        Self { window: window.into_boxed_slice() }
    }

    /// `s_i` is a left descent when `l(s_i w) < l(w)`, i.e. `w^{-1}(i) > w^{-1}(i+1)`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        let i = i as i64;
        self.apply_inverse(i) > self.apply_inverse(i + 1)
    }

    /// `s_i` is a right descent when `w(i) > w(i+1)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        let i = i as i64;
        self.apply(i) > self.apply(i + 1)
    }

    pub fn left_descents(&self) -> BTreeSet<usize> {
        self.rank().residues().filter(|&i| self.has_left_descent(i)).collect()
    }

    pub fn right_descents(&self) -> BTreeSet<usize> {
        self.rank().residues().filter(|&i| self.has_right_descent(i)).collect()
    }

    /// A reduced word, built by peeling off the smallest left descent each time.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length());
        let mut w = self.clone();
        while let Some(i) = w.rank().residues().find(|&i| w.has_left_descent(i)) {
            word.push(i);
            w = w.left_mul_simple(i);
        }
        word
    }

    /// Minimal length representative of its coset `w W_0`: the window is increasing.
    pub fn is_grassmannian(&self) -> bool {
        self.window.windows(2).all(|p| p[0] < p[1])
    }

    /// Member of the finite subgroup `W_0 = <s_1, .., s_k>`.
    pub fn is_finite(&self) -> bool {
        let n = self.period();
        self.window.iter().all(|&v| (1..=n).contains(&v))
    }

    /// `w = w_grass * w_finite` with `w_grass` 0-Grassmannian and `w_finite`
    /// in `W_0`; lengths add.
    pub fn grassmannian_factorize(&self) -> (Self, Self) {
        let mut sorted = self.window.to_vec();
        sorted.sort_unstable();
        let grass = Self { window: sorted.into_boxed_slice() };
        let finite = grass.inverse().mul_unchecked(self);
        (grass, finite)
    }

    /// Length of the 0-Grassmannian part.
    pub fn grassmannian_length(&self) -> usize {
        self.grassmannian_factorize().0.length()
    }

    pub fn to_partition(&self) -> Result<Partition> {
        grassmannian_to_partition(self)
    }
}

impl fmt::Debug for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffinePerm{:?}", self.window)
    }
}

impl fmt::Display for AffinePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = self.reduced_word();
        if word.is_empty() {
            return write!(f, "1");
        }
        for i in word {
            write!(f, "s{i}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PermJson {
    k: usize,
    window: Vec<i64>,
}

impl Serialize for AffinePerm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PermJson { k: self.rank().k(), window: self.window.to_vec() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffinePerm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = PermJson::deserialize(d)?;
        if raw.window.len() != raw.k + 1 {
            return Err(serde::de::Error::custom("window length must be k + 1"));
        }
        Self::from_window(raw.window).map_err(serde::de::Error::custom)
    }
}

/// `w_lambda` for a k-bounded partition, through its (k+1)-core.
pub fn partition_to_grassmannian(rank: Rank, lambda: &Partition) -> Result<AffinePerm> {
    lambda.check_bounded(rank.k())?;
    let core = Core::from_bounded_partition(rank, lambda);
    Ok(core.to_grassmannian(rank))
}

/// Inverse of [`partition_to_grassmannian`].
pub fn grassmannian_to_partition(w: &AffinePerm) -> Result<Partition> {
    if !w.is_grassmannian() {
        return Err(Error::NotGrassmannian(w.clone()));
    }
    Ok(Core::from_grassmannian(w).to_bounded_partition(w.rank()))
}

/// All elements of length at most `max_len`, grouped by length; each level is
/// sorted by window.
pub fn elements_up_to(rank: Rank, max_len: usize) -> Result<Vec<Vec<AffinePerm>>> {
    if max_len > MAX_LENGTH {
        return Err(Error::LengthBound { requested: max_len, max: MAX_LENGTH });
    }
    let mut levels = vec![vec![AffinePerm::identity(rank)]];
    for len in 1..=max_len {
        let next: BTreeSet<AffinePerm> = levels[len - 1]
            .iter()
            .flat_map(|w| rank.residues().filter(|&i| !w.has_left_descent(i)).map(move |i| w.left_mul_simple(i)))
            .collect();
        levels.push(next.into_iter().collect());
    }
    Ok(levels)
}

/// 0-Grassmannian elements of length exactly `len`.
pub fn grassmannian_elements(rank: Rank, len: usize) -> Result<Vec<AffinePerm>> {
    // Every prefix of a W^0 element, read from the right, stays in W^0.
    let mut level = vec![AffinePerm::identity(rank)];
    if len > MAX_LENGTH {
        return Err(Error::LengthBound { requested: len, max: MAX_LENGTH });
    }
    for _ in 0..len {
        let next: BTreeSet<AffinePerm> = level
            .iter()
            .flat_map(|w| {
                rank.residues()
                    .filter(|&i| !w.has_left_descent(i))
                    .map(move |i| w.left_mul_simple(i))
                    .filter(AffinePerm::is_grassmannian)
            })
            .collect();
        level = next.into_iter().collect();
    }
    Ok(level)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rk(k: usize) -> Rank {
        Rank::new(k).unwrap()
    }

    fn word(k: usize, w: &[usize]) -> AffinePerm {
        AffinePerm::from_word(rk(k), w).unwrap()
    }

    #[test]
    fn identity_and_simples() {
        assert_eq!(AffinePerm::identity(rk(2)).window(), &[1, 2, 3]);
        assert_eq!(AffinePerm::identity(rk(3)).window(), &[1, 2, 3, 4]);
        assert_eq!(AffinePerm::identity(rk(3)).length(), 0);
        assert_eq!(AffinePerm::simple(rk(2), 1).unwrap().window(), &[2, 1, 3]);
        assert_eq!(AffinePerm::simple(rk(2), 0).unwrap().window(), &[0, 2, 4]);
        assert!(AffinePerm::simple(rk(2), 3).is_err());
        for i in 0..=3 {
            let s = AffinePerm::simple(rk(3), i).unwrap();
            assert!(s.multiply(&s).unwrap().is_identity());
        }
    }

    #[test]
    fn marking_example_values() {
        let y = word(2, &[1, 2, 0]);
        assert_eq!(y.apply(1), -2);
        assert_eq!(y.apply(4), 1);
        assert_eq!(AffinePerm::identity(rk(2)).apply(17), 17);
    }

    #[test]
    fn transpositions() {
        let r = rk(2);
        assert_eq!(AffinePerm::transposition(r, 0, 1).unwrap(), AffinePerm::simple(r, 0).unwrap());
        assert_eq!(AffinePerm::transposition(r, 1, 2).unwrap(), AffinePerm::simple(r, 1).unwrap());
        let y = word(2, &[1, 2, 0]);
        let x = word(2, &[0, 1, 2, 0]);
        let t = y.inverse().multiply(&x).unwrap();
        assert_eq!(t, AffinePerm::transposition(r, -4, 1).unwrap());
        assert_eq!(t, AffinePerm::transposition(r, -1, 4).unwrap());
        assert!(AffinePerm::transposition(r, 1, 4).is_err());
    }

    #[test]
    fn products_and_lengths() {
        let w = word(2, &[1, 0]);
        assert_eq!(w.window(), &[0, 1, 5]);
        assert_eq!(w.length(), 2);
        assert_eq!(word(2, &[0, 1, 2, 0]).length(), 4);
        assert!(AffinePerm::identity(rk(2)).multiply(&AffinePerm::identity(rk(3))).is_err());
    }

    #[test]
    fn window_validation() {
        assert!(AffinePerm::from_window(vec![0, 2, 4]).is_ok());
        assert!(AffinePerm::from_window(vec![1, 4, 3]).is_err());
        assert!(AffinePerm::from_window(vec![1, 2, 4]).is_err());
    }

    #[test]
    fn reduced_words_reproduce() {
        for level in elements_up_to(rk(3), 6).unwrap() {
            for w in level {
                let word = w.reduced_word();
                assert_eq!(word.len(), w.length());
                assert_eq!(AffinePerm::from_word(w.rank(), &word).unwrap(), w);
            }
        }
    }

    #[test]
    fn from_reduced_word_rejects() {
        assert!(AffinePerm::from_reduced_word(rk(2), &[0, 0]).is_err());
        assert!(AffinePerm::from_reduced_word(rk(2), &[0, 1, 0]).is_ok());
    }

    #[test]
    fn enumeration() {
        let levels = elements_up_to(rk(2), 1).unwrap();
        assert_eq!(levels[1].len(), 3);
        let levels = elements_up_to(rk(2), 4).unwrap();
        let grass: Vec<_> = levels[4].iter().filter(|w| w.is_grassmannian()).collect();
        assert_eq!(grass.len(), 3);
        let expected: BTreeSet<_> =
            [vec![1, 2, 1, 0], vec![0, 1, 2, 0], vec![0, 2, 1, 0]].iter().map(|w| word(2, w)).collect();
        assert_eq!(grass.into_iter().cloned().collect::<BTreeSet<_>>(), expected);
        assert!(elements_up_to(rk(2), MAX_LENGTH + 1).is_err());
    }

    #[test]
    fn factorization_basics() {
        let s1 = AffinePerm::simple(rk(2), 1).unwrap();
        let (g, f) = s1.grassmannian_factorize();
        assert!(g.is_identity());
        assert_eq!(f, s1);
        let w = word(2, &[1, 0]);
        let (g, f) = w.grassmannian_factorize();
        assert_eq!(g, w);
        assert!(f.is_identity());
    }

    #[test]
    fn bijection_examples() {
        let r = rk(2);
        let two = Partition::new(vec![2]).unwrap();
        let one_one = Partition::new(vec![1, 1]).unwrap();
        assert_eq!(partition_to_grassmannian(r, &two).unwrap(), word(2, &[1, 0]));
        assert_eq!(partition_to_grassmannian(r, &one_one).unwrap(), word(2, &[2, 0]));
        assert!(partition_to_grassmannian(r, &Partition::empty()).unwrap().is_identity());
        assert!(partition_to_grassmannian(r, &Partition::new(vec![3]).unwrap()).is_err());
        assert!(grassmannian_to_partition(&word(2, &[0, 1])).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let w = word(3, &[0, 3, 2, 0]);
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(serde_json::from_str::<AffinePerm>(&s).unwrap(), w);
        assert!(serde_json::from_str::<AffinePerm>(r#"{"k":2,"window":[1,2,4]}"#).is_err());
    }
}
