//! The affine nilCoxeter algebra: free Z-module on `u_w`, with
//! `u_v u_w = u_{vw}` when lengths add and `0` otherwise.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::affine_perm::{AffinePerm, Rank};
use crate::error::{Error, Result};

/// `vw` when `l(vw) = l(v) + l(w)`.
pub fn basis_product(v: &AffinePerm, w: &AffinePerm) -> Option<AffinePerm> {
    let vw = v.mul_unchecked(w);
    (vw.length() == v.length() + w.length()).then_some(vw)
}

pub(crate) fn checked_coeff_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("coefficient overflow")
}

pub(crate) fn checked_coeff_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("coefficient overflow")
}

/// Sparse integer combination of basis elements `u_w`; zero coefficients are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NilCoxElem {
    rank: Rank,
    terms: BTreeMap<AffinePerm, i64>,
}

impl NilCoxElem {
    pub fn zero(rank: Rank) -> Self {
        Self { rank, terms: BTreeMap::new() }
    }

    pub fn scalar(rank: Rank, c: i64) -> Self {
        let mut e = Self::zero(rank);
        e.add_term(AffinePerm::identity(rank), c);
        e
    }

    pub fn one(rank: Rank) -> Self {
        Self::scalar(rank, 1)
    }

    pub fn basis(w: AffinePerm) -> Self {
        let mut e = Self::zero(w.rank());
        e.add_term(w, 1);
        e
    }

    pub fn from_terms(rank: Rank, terms: impl IntoIterator<Item = (AffinePerm, i64)>) -> Result<Self> {
        let mut e = Self::zero(rank);
        for (w, c) in terms {
            if w.rank() != rank {
                return Err(Error::RankMismatch(rank.k(), w.rank().k()));
            }
            e.add_term(w, c);
        }
        Ok(e)
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &AffinePerm) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AffinePerm, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    /// Terms ordered by `(length, window)`.
    pub fn sorted_terms(&self) -> Vec<(&AffinePerm, i64)> {
        let mut out: Vec<_> = self.terms().collect();
        out.sort_by_cached_key(|(w, _)| (w.length(), (*w).clone()));
        out
    }

    pub fn add_term(&mut self, w: AffinePerm, c: i64) {
        debug_assert_eq!(w.rank(), self.rank);
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = checked_coeff_add(*e.get(), c);
                if sum == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_rank(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            Err(Error::RankMismatch(self.rank.k(), other.rank.k()))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero(self.rank);
        }
        Self { rank: self.rank, terms: self.terms.iter().map(|(w, &a)| (w.clone(), checked_coeff_mul(a, c))).collect() }
    }

    /// Bilinear extension of [`basis_product`].
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_rank(other)?;
        let mut out = Self::zero(self.rank);
        let right: Vec<_> = other.terms().map(|(w, c)| (w, w.length(), c)).collect();
        for (v, a) in self.terms() {
            let lv = v.length();
            for &(w, lw, b) in &right {
                let vw = v.mul_unchecked(w);
                if vw.length() == lv + lw {
                    out.add_term(vw, checked_coeff_mul(a, b));
                }
            }
        }
        Ok(out)
    }

    /// Right multiplication by a single basis element.
    pub fn mul_basis(&self, w: &AffinePerm) -> Self {
        let mut out = Self::zero(self.rank);
        for (v, c) in self.terms() {
            if let Some(vw) = basis_product(v, w) {
                out.add_term(vw, c);
            }
        }
        out
    }

    /// `<a, b> = sum_w coeff(a, w) coeff(b, w)`; the `u_w` are orthonormal.
    pub fn inner(&self, other: &Self) -> Result<i64> {
        self.check_rank(other)?;
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        Ok(small.terms().map(|(w, c)| checked_coeff_mul(c, large.coeff(w))).fold(0, checked_coeff_add))
    }

    /// The common length of all terms, if homogeneous and nonzero.
    pub fn degree(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(AffinePerm::length);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn graded_pieces(&self) -> BTreeMap<usize, NilCoxElem> {
        let mut out: BTreeMap<usize, NilCoxElem> = BTreeMap::new();
        for (w, c) in self.terms() {
            out.entry(w.length()).or_insert_with(|| Self::zero(self.rank)).add_term(w.clone(), c);
        }
        out
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear(&self, mut f: impl FnMut(&AffinePerm) -> Result<NilCoxElem>) -> Result<Self> {
        let mut out = Self::zero(self.rank);
        for (w, c) in self.terms() {
            let image = f(w)?;
            out.check_rank(&image)?;
            for (v, d) in image.terms() {
                out.add_term(v.clone(), checked_coeff_mul(c, d));
            }
        }
        Ok(out)
    }
}

impl Add<&NilCoxElem> for &NilCoxElem {
    type Output = NilCoxElem;
    fn add(self, rhs: &NilCoxElem) -> NilCoxElem {
        self.try_add(rhs).expect("rank mismatch in addition")
    }
}

impl Sub<&NilCoxElem> for &NilCoxElem {
    type Output = NilCoxElem;
    fn sub(self, rhs: &NilCoxElem) -> NilCoxElem {
        self.try_sub(rhs).expect("rank mismatch in subtraction")
    }
}

impl Mul<&NilCoxElem> for &NilCoxElem {
    type Output = NilCoxElem;
    fn mul(self, rhs: &NilCoxElem) -> NilCoxElem {
        self.try_mul(rhs).expect("rank mismatch in product")
    }
}

impl Neg for &NilCoxElem {
    type Output = NilCoxElem;
    fn neg(self) -> NilCoxElem {
        self.scale(-1)
    }
}

impl AddAssign<&NilCoxElem> for NilCoxElem {
    fn add_assign(&mut self, rhs: &NilCoxElem) {
        assert_eq!(self.rank, rhs.rank, "rank mismatch in addition");
        for (w, c) in rhs.terms() {
            self.add_term(w.clone(), c);
        }
    }
}

/// `u_0u_1u_2` style rendering of a basis element, from its reduced word.
pub fn render_word(w: &AffinePerm) -> String {
    let word = w.reduced_word();
    if word.is_empty() {
        return "1".into();
    }
    word.iter().map(|i| format!("u_{i}")).collect()
}

impl fmt::Display for NilCoxElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (w, c)) in self.sorted_terms().into_iter().enumerate() {
            let word = render_word(w);
            let sign = if c < 0 { "-" } else { "+" };
            if idx == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            match (a, word.as_str()) {
                (1, _) => write!(f, "{word}")?,
                (_, "1") => write!(f, "{a}")?,
                _ => write!(f, "{a}{word}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NilCoxElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NilCoxElem(k={}, {})", self.rank.k(), self)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    window: Vec<i64>,
    coeff: i64,
}

#[derive(Serialize, Deserialize)]
struct ElemJson {
    k: usize,
    terms: Vec<TermJson>,
}

impl Serialize for NilCoxElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElemJson {
            k: self.rank.k(),
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(w, c)| TermJson { window: w.window().to_vec(), coeff: c })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NilCoxElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ElemJson::deserialize(d)?;
        let rank = Rank::new(raw.k).map_err(D::Error::custom)?;
        let mut e = Self::zero(rank);
        for t in raw.terms {
            if t.window.len() != raw.k + 1 {
                return Err(D::Error::custom("window length must be k + 1"));
            }
            let w = AffinePerm::from_window(t.window).map_err(D::Error::custom)?;
            e.add_term(w, t.coeff);
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rk(k: usize) -> Rank {
        Rank::new(k).unwrap()
    }

    fn u(k: usize, word: &[usize]) -> NilCoxElem {
        NilCoxElem::basis(AffinePerm::from_word(rk(k), word).unwrap())
    }

    #[test]
    fn free_module() {
        let a = u(2, &[1, 0]);
        assert!((&a + &a.scale(-1)).is_zero());
        assert!((&a - &a).is_zero());
        assert_eq!(&NilCoxElem::one(rk(2)) * &a, a);
        assert_eq!(&a * &NilCoxElem::one(rk(2)), a);
        assert!(a.try_add(&u(3, &[0])).is_err());
    }

    #[test]
    fn nil_relations() {
        let (u0, u1) = (u(2, &[0]), u(2, &[1]));
        assert!((&u0 * &u0).is_zero());
        assert_eq!(&(&u0 * &u1) * &u0, &(&u1 * &u0) * &u1);
        assert!((&a_zero() * &u0).is_zero());
        fn a_zero() -> NilCoxElem {
            NilCoxElem::zero(Rank::new(2).unwrap())
        }
    }

    #[test]
    fn square_of_degree_one_sum() {
        let h1 = &(&u(2, &[0]) + &u(2, &[1])) + &u(2, &[2]);
        let sq = &h1 * &h1;
        let mut expected = NilCoxElem::zero(rk(2));
        for w in [[0, 1], [0, 2], [1, 0], [1, 2], [2, 0], [2, 1]] {
            expected += &u(2, &w);
        }
        assert_eq!(sq, expected);
    }

    #[test]
    fn inner_product() {
        let a = &u(2, &[0]).scale(3) + &u(2, &[1, 0]);
        let w = AffinePerm::from_word(rk(2), &[1, 0]).unwrap();
        assert_eq!(a.inner(&NilCoxElem::basis(w.clone())).unwrap(), a.coeff(&w));
        assert_eq!(u(2, &[0]).inner(&u(2, &[0])).unwrap(), 1);
        assert_eq!(u(2, &[0]).inner(&u(2, &[1])).unwrap(), 0);
    }

    #[test]
    fn display_and_json() {
        let a = &(&u(2, &[0, 1]).scale(2) - &u(2, &[2])) + &NilCoxElem::one(rk(2));
        assert_eq!(a.to_string(), "1 - u_2 + 2u_0u_1");
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(
            s,
            r#"{"k":2,"terms":[{"window":[1,2,3],"coeff":1},{"window":[1,3,2],"coeff":-1},{"window":[2,0,4],"coeff":2}]}"#
        );
        assert_eq!(serde_json::from_str::<NilCoxElem>(&s).unwrap(), a);
    }

    #[test]
    #[should_panic(expected = "coefficient overflow")]
    fn overflow_is_loud() {
        let a = u(2, &[0]).scale(i64::MAX);
        let _ = &a + &a;
    }
}
