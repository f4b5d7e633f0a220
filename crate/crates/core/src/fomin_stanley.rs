//! Cyclically decreasing elements, the generators `h_i` of the affine
//! Fomin-Stanley subalgebra `B`, noncommutative k-Schur functions and the
//! basis `b_w = s^(k)_lambda u_{w_(0)}` of the whole algebra.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, LazyLock};

use serde::{Deserialize, Serialize};

use crate::affine_perm::{grassmannian_to_partition, partition_to_grassmannian, AffinePerm, Rank};
use crate::cache::Memo;
use crate::error::{Error, Result};
use crate::linalg::LowerUnitriangular;
use crate::nilcoxeter::{checked_coeff_add, checked_coeff_mul, NilCoxElem};
use crate::partition::{bounded_partitions, Partition};

/// A proper subset of `{0, .., k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ResidueSet {
    rank: Rank,
    members: Vec<usize>,
}

impl ResidueSet {
    pub fn new(rank: Rank, mut members: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = members.iter().find(|&&i| i > rank.k()) {
            return Err(Error::ResidueOutOfRange { residue: bad, k: rank.k() });
        }
        members.sort_unstable();
        members.dedup();
        if members.len() == rank.period() {
            return Err(Error::FullResidueSet(rank.k()));
        }
        Ok(Self { rank, members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// All residue sets of the given size (none when `size > k`).
    pub fn all_of_size(rank: Rank, size: usize) -> Vec<ResidueSet> {
        let n = rank.period();
        if size >= n {
            return Vec::new();
        }
        (0u64..1 << n)
            .filter(|m| m.count_ones() as usize == size)
            .map(|m| ResidueSet { rank, members: (0..n).filter(|i| m >> i & 1 == 1).collect() })
            .collect()
    }

    /// Maximal cyclic runs `a, a+1, .., b`, each emitted as `s_b s_{b-1} .. s_a`.
    pub fn cyclically_decreasing_word(&self) -> Vec<usize> {
        let n = self.rank.period();
        let contains = |i: usize| self.members.binary_search(&i).is_ok();
        let Some(gap) = (0..n).find(|&i| !contains(i)) else {
            unreachable!("residue sets are proper");
        };
        let mut word = Vec::with_capacity(self.members.len());
        let mut run = Vec::new();
        for step in 1..=n {
            let i = (gap + step) % n;
            if contains(i) {
                run.push(i);
            } else {
                word.extend(run.drain(..).rev());
            }
        }
        word
    }
}

/// The unique cyclically decreasing element with letters `D`.
pub fn cyclically_decreasing(d: &ResidueSet) -> AffinePerm {
    AffinePerm::from_word(d.rank, &d.cyclically_decreasing_word()).expect("residues in range")
}

static H_MEMO: LazyLock<Memo<(usize, usize), NilCoxElem>> = LazyLock::new(Memo::new);
static H_LAMBDA_MEMO: LazyLock<Memo<(usize, Partition), NilCoxElem>> = LazyLock::new(Memo::new);

/// `h_i = sum_{|D| = i} u_{w_D}`. Errors for `i > k`, where the sum is empty.
pub fn h(rank: Rank, i: usize) -> Result<NilCoxElem> {
    if i > rank.k() {
        return Err(Error::GeneratorOutOfRange { i, k: rank.k() });
    }
    Ok((*h_cached(rank, i)).clone())
}

pub(crate) fn h_cached(rank: Rank, i: usize) -> Arc<NilCoxElem> {
    H_MEMO.get_or_compute(&(rank.k(), i), || {
        let mut e = NilCoxElem::zero(rank);
        for d in ResidueSet::all_of_size(rank, i) {
            e.add_term(cyclically_decreasing(&d), 1);
        }
        e
    })
}

/// `h_lambda = h_{lambda_1} h_{lambda_2} ..`.
pub fn h_lambda(rank: Rank, lambda: &Partition) -> Result<NilCoxElem> {
    Ok((*h_lambda_cached(rank, lambda)?).clone())
}

pub(crate) fn h_lambda_cached(rank: Rank, lambda: &Partition) -> Result<Arc<NilCoxElem>> {
    lambda.check_bounded(rank.k())?;
    H_LAMBDA_MEMO.try_get_or_compute(&(rank.k(), lambda.clone()), || {
        let mut acc = NilCoxElem::one(rank);
        for &part in lambda.parts().iter().rev() {
            acc = h_cached(rank, part).try_mul(&acc)?;
        }
        Ok(acc)
    })
}

/// Which basis of `B` a coefficient map refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BBasis {
    #[serde(rename = "h")]
    H,
    #[serde(rename = "kschur")]
    KSchur,
}

/// Coordinates of an element of `B` in the `h_lambda` or `s^(k)_lambda` basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BExpansion {
    pub basis: BBasis,
    pub rank: Rank,
    pub coeffs: BTreeMap<Partition, i64>,
}

impl BExpansion {
    pub fn new(basis: BBasis, rank: Rank) -> Self {
        Self { basis, rank, coeffs: BTreeMap::new() }
    }

    pub fn single(basis: BBasis, rank: Rank, lambda: Partition) -> Self {
        let mut e = Self::new(basis, rank);
        e.add(lambda, 1);
        e
    }

    pub fn add(&mut self, lambda: Partition, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(lambda.clone()).or_insert(0);
        *entry = checked_coeff_add(*entry, c);
        if *entry == 0 {
            self.coeffs.remove(&lambda);
        }
    }

    pub fn coeff(&self, lambda: &Partition) -> i64 {
        self.coeffs.get(lambda).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The element of the nilCoxeter algebra these coordinates describe.
    pub fn to_element(&self) -> Result<NilCoxElem> {
        let mut out = NilCoxElem::zero(self.rank);
        for (lambda, &c) in &self.coeffs {
            let basis = match self.basis {
                BBasis::H => h_lambda_cached(self.rank, lambda)?,
                BBasis::KSchur => kschur_cached(self.rank, lambda)?,
            };
            out += &basis.scale(c);
        }
        Ok(out)
    }

    /// Re-expresses in the other basis.
    pub fn convert(&self, target: BBasis) -> Result<BExpansion> {
        if target == self.basis {
            return Ok(self.clone());
        }
        let mut out = BExpansion::new(target, self.rank);
        for (lambda, &c) in &self.coeffs {
            let table = kschur_degree(self.rank, lambda.size())?;
            let i = table.index_of(lambda);
            match target {
                // s_lambda = sum_mu (M^{-1})[lambda][mu] h_mu
                BBasis::H => {
                    for (j, mu) in table.partitions.iter().enumerate() {
                        out.add(mu.clone(), checked_coeff_mul(c, table.inverse.entry(i, j)));
                    }
                }
                // h_mu = sum_nu M[mu][nu] s_nu
                BBasis::KSchur => {
                    for (j, nu) in table.partitions.iter().enumerate() {
                        out.add(nu.clone(), checked_coeff_mul(c, table.matrix.entry(i, j)));
                    }
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for BExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let name = match self.basis {
            BBasis::H => "h",
            BBasis::KSchur => "s",
        };
        for (idx, (lambda, &c)) in self.coeffs.iter().rev().enumerate() {
            if idx > 0 {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            let a = c.unsigned_abs();
            if a != 1 {
                write!(f, "{a}")?;
            }
            write!(f, "{name}{lambda}")?;
        }
        Ok(())
    }
}

/// Degree-`n` data: the k-bounded partitions of `n` in decreasing
/// lexicographic order, their Grassmannian elements, and the lower
/// unitriangular matrix `M[mu][nu] = <h_mu, u_{w_nu}>`.
#[derive(Debug)]
pub struct KSchurDegree {
    pub rank: Rank,
    pub degree: usize,
    pub partitions: Vec<Partition>,
    pub grassmannian: Vec<AffinePerm>,
    pub matrix: LowerUnitriangular,
    pub inverse: LowerUnitriangular,
    pub kschur: Vec<NilCoxElem>,
    index: HashMap<Partition, usize>,
}

impl KSchurDegree {
    pub fn index_of(&self, lambda: &Partition) -> usize {
        self.index[lambda]
    }

    pub fn position(&self, lambda: &Partition) -> Option<usize> {
        self.index.get(lambda).copied()
    }
}

static KSCHUR_MEMO: LazyLock<Memo<(usize, usize), KSchurDegree>> = LazyLock::new(Memo::new);

pub fn kschur_degree(rank: Rank, n: usize) -> Result<Arc<KSchurDegree>> {
    KSCHUR_MEMO.try_get_or_compute(&(rank.k(), n), || build_degree(rank, n))
}

fn build_degree(rank: Rank, n: usize) -> Result<KSchurDegree> {
    let partitions = bounded_partitions(n, rank.k());
    let grassmannian = partitions.iter().map(|p| partition_to_grassmannian(rank, p)).collect::<Result<Vec<_>>>()?;
    let h_elems = partitions.iter().map(|p| h_lambda_cached(rank, p)).collect::<Result<Vec<_>>>()?;
    let rows = h_elems.iter().map(|h| grassmannian.iter().map(|w| h.coeff(w)).collect()).collect();
    let matrix = LowerUnitriangular::new(rows)?;
    let inverse = matrix.inverse();
    let kschur = (0..partitions.len())
        .map(|i| {
            let mut e = NilCoxElem::zero(rank);
            for (j, h) in h_elems.iter().enumerate() {
                let c = inverse.entry(i, j);
                if c != 0 {
                    e += &h.scale(c);
                }
            }
            e
        })
        .collect();
    let index = partitions.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    Ok(KSchurDegree { rank, degree: n, partitions, grassmannian, matrix, inverse, kschur, index })
}

pub(crate) fn kschur_cached(rank: Rank, lambda: &Partition) -> Result<Arc<NilCoxElem>> {
    lambda.check_bounded(rank.k())?;
    let table = kschur_degree(rank, lambda.size())?;
    Ok(Arc::new(table.kschur[table.index_of(lambda)].clone()))
}

/// The noncommutative k-Schur function `s^(k)_lambda` as an element of `B`.
pub fn noncomm_kschur(rank: Rank, lambda: &Partition) -> Result<NilCoxElem> {
    lambda.check_bounded(rank.k())?;
    let table = kschur_degree(rank, lambda.size())?;
    Ok(table.kschur[table.index_of(lambda)].clone())
}

/// `s^(k)_lambda` in the `h` basis.
pub fn kschur_h_expansion(rank: Rank, lambda: &Partition) -> Result<BExpansion> {
    lambda.check_bounded(rank.k())?;
    BExpansion::single(BBasis::KSchur, rank, lambda.clone()).convert(BBasis::H)
}

static B_MEMO: LazyLock<Memo<AffinePerm, NilCoxElem>> = LazyLock::new(Memo::new);

/// `b_w = s^(k)_lambda u_{w_(0)}` where `w = w_lambda w_(0)`.
pub fn b_element(w: &AffinePerm) -> Result<NilCoxElem> {
    Ok((*b_cached(w)?).clone())
}

fn b_cached(w: &AffinePerm) -> Result<Arc<NilCoxElem>> {
    B_MEMO.try_get_or_compute(w, || {
        let (grass, finite) = w.grassmannian_factorize();
        let lambda = grassmannian_to_partition(&grass)?;
        Ok(kschur_cached(w.rank(), &lambda)?.mul_basis(&finite))
    })
}

/// Coefficients `c_w` with `a = sum_w c_w b_w`.
///
/// The leading term of `b_w` is `u_w` for the order: longer first, then
/// longer Grassmannian part; any other term of `b_w` has the same length
/// and a strictly shorter Grassmannian part, so peeling off maximal terms
/// terminates.
pub fn expand_in_b_basis(a: &NilCoxElem) -> Result<BTreeMap<AffinePerm, i64>> {
    let mut remainder = a.clone();
    let mut out = BTreeMap::new();
    let mut keys: HashMap<AffinePerm, (usize, usize)> = HashMap::new();
    let mut key = |w: &AffinePerm| *keys.entry(w.clone()).or_insert_with(|| (w.length(), w.grassmannian_length()));
    while !remainder.is_zero() {
        let (lead, c) = remainder
            .terms()
            .map(|(w, c)| (key(w), w, c))
            .max_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(b.1)))
            .map(|(_, w, c)| (w.clone(), c))
            .expect("nonzero remainder");
        let b = b_cached(&lead)?;
        debug_assert_eq!(b.coeff(&lead), 1);
        remainder = remainder.try_sub(&b.scale(c))?;
        out.insert(lead, c);
    }
    Ok(out)
}

/// Reassembles `sum_w c_w b_w`.
pub fn from_b_basis(rank: Rank, coeffs: &BTreeMap<AffinePerm, i64>) -> Result<NilCoxElem> {
    let mut out = NilCoxElem::zero(rank);
    for (w, &c) in coeffs {
        out += &b_cached(w)?.scale(c);
    }
    Ok(out)
}

/// Membership in `B`. Reads candidate coordinates off the Grassmannian terms
/// of each graded piece and checks that `sum_lambda c_{w_lambda} s^(k)_lambda`
/// reproduces the input; returns the k-Schur expansion on success.
pub fn is_in_b(a: &NilCoxElem) -> Result<Option<BExpansion>> {
    let rank = a.rank();
    let mut expansion = BExpansion::new(BBasis::KSchur, rank);
    for piece in a.graded_pieces().into_values() {
        let mut candidate = NilCoxElem::zero(rank);
        for (w, c) in piece.terms() {
            if w.is_grassmannian() {
                let lambda = grassmannian_to_partition(w)?;
                candidate += &kschur_cached(rank, &lambda)?.scale(c);
                expansion.add(lambda, c);
            }
        }
        if candidate != piece {
            return Ok(None);
        }
    }
    Ok(Some(expansion))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_perm::elements_up_to;

    fn rk(k: usize) -> Rank {
        Rank::new(k).unwrap()
    }

    fn perm(k: usize, word: &[usize]) -> AffinePerm {
        AffinePerm::from_word(rk(k), word).unwrap()
    }

    fn elem(k: usize, words: &[&[usize]]) -> NilCoxElem {
        NilCoxElem::from_terms(rk(k), words.iter().map(|w| (perm(k, w), 1))).unwrap()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn cyclically_decreasing_examples() {
        let r = rk(2);
        let d = |m: Vec<usize>| cyclically_decreasing(&ResidueSet::new(r, m).unwrap());
        assert_eq!(d(vec![0, 1]), perm(2, &[1, 0]));
        assert_eq!(d(vec![0, 2]), perm(2, &[0, 2]));
        assert!(d(vec![]).is_identity());
        assert!(ResidueSet::new(r, vec![0, 1, 2]).is_err());
        for k in 2..=4 {
            for size in 0..=k {
                for set in ResidueSet::all_of_size(rk(k), size) {
                    assert_eq!(cyclically_decreasing(&set).length(), size);
                }
            }
        }
    }

    #[test]
    fn generators() {
        assert_eq!(h(rk(2), 0).unwrap(), NilCoxElem::one(rk(2)));
        assert_eq!(h(rk(2), 1).unwrap(), elem(2, &[&[0], &[1], &[2]]));
        assert_eq!(h(rk(2), 2).unwrap(), elem(2, &[&[1, 0], &[2, 1], &[0, 2]]));
        assert!(h(rk(2), 3).is_err());
        let u0 = elem(2, &[&[0]]);
        assert_eq!(&h(rk(2), 2).unwrap() * &u0, elem(2, &[&[0, 2, 0], &[2, 1, 0]]));
    }

    #[test]
    fn h_lambda_products() {
        assert_eq!(h_lambda(rk(2), &Partition::empty()).unwrap(), NilCoxElem::one(rk(2)));
        let all_len2 = elem(2, &[&[0, 1], &[0, 2], &[1, 0], &[1, 2], &[2, 0], &[2, 1]]);
        assert_eq!(h_lambda(rk(2), &p(&[1, 1])).unwrap(), all_len2);
        assert!(h_lambda(rk(2), &p(&[3])).is_err());
    }

    #[test]
    fn generators_commute() {
        for k in 2..=4 {
            for i in 0..=k {
                for j in 0..=k {
                    let (hi, hj) = (h(rk(k), i).unwrap(), h(rk(k), j).unwrap());
                    assert_eq!(&hi * &hj, &hj * &hi, "k={k} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn kschur_degree_two() {
        let r = rk(2);
        assert_eq!(noncomm_kschur(r, &p(&[2])).unwrap(), elem(2, &[&[1, 0], &[2, 1], &[0, 2]]));
        assert_eq!(noncomm_kschur(r, &p(&[1, 1])).unwrap(), elem(2, &[&[0, 1], &[1, 2], &[2, 0]]));
        let hx = kschur_h_expansion(r, &p(&[1, 1])).unwrap();
        assert_eq!(hx.coeff(&p(&[1, 1])), 1);
        assert_eq!(hx.coeff(&p(&[2])), -1);
        assert_eq!(hx.coeffs.len(), 2);
    }

    #[test]
    fn single_row_kschur_is_generator() {
        for k in 2..=3 {
            for r in 0..=k {
                assert_eq!(noncomm_kschur(rk(k), &p(&[r][..(r > 0) as usize])).unwrap(), h(rk(k), r).unwrap());
            }
        }
    }

    #[test]
    fn unique_grassmannian_term() {
        for k in 2..=3 {
            for n in 0..=6 {
                let table = kschur_degree(rk(k), n).unwrap();
                for (i, s) in table.kschur.iter().enumerate() {
                    assert_eq!(s.degree().unwrap_or(n), n);
                    let grass: Vec<_> = s.terms().filter(|(w, _)| w.is_grassmannian()).collect();
                    assert_eq!(grass, vec![(&table.grassmannian[i], 1)]);
                }
            }
        }
    }

    #[test]
    fn b_basis() {
        let r = rk(2);
        let s = noncomm_kschur(r, &p(&[2, 1])).unwrap();
        let w = partition_to_grassmannian(r, &p(&[2, 1])).unwrap();
        assert_eq!(expand_in_b_basis(&s).unwrap(), BTreeMap::from([(w, 1)]));
        let s1 = perm(2, &[1]);
        assert_eq!(b_element(&s1).unwrap(), NilCoxElem::basis(s1.clone()));
        assert_eq!(expand_in_b_basis(&NilCoxElem::basis(s1.clone())).unwrap(), BTreeMap::from([(s1, 1)]));
    }

    #[test]
    fn b_basis_unitriangular() {
        for k in 2..=3 {
            for level in elements_up_to(rk(k), 5).unwrap() {
                for w in level {
                    let b = b_element(&w).unwrap();
                    assert_eq!(b.coeff(&w), 1);
                    let key = (w.length(), w.grassmannian_length());
                    for (v, _) in b.terms() {
                        assert!(v == &w || (v.length(), v.grassmannian_length()) < key);
                    }
                }
            }
        }
    }

    #[test]
    fn membership() {
        for k in 2..=3 {
            for n in 0..=6 {
                for lambda in bounded_partitions(n, k) {
                    let hl = h_lambda(rk(k), &lambda).unwrap();
                    let exp = is_in_b(&hl).unwrap().expect("h_lambda lies in B");
                    assert_eq!(exp.to_element().unwrap(), hl);
                    assert_eq!(exp.convert(BBasis::H).unwrap(), BExpansion::single(BBasis::H, rk(k), lambda));
                }
            }
        }
        assert!(is_in_b(&elem(2, &[&[0]])).unwrap().is_none());
    }

    #[test]
    fn k_pieri_rule() {
        // h_i s_lambda = sum of s_nu over weak strips w_lambda -> w_nu of size i.
        for k in 2..=3 {
            let r = rk(k);
            for n in 0..=4 {
                for lambda in bounded_partitions(n, k) {
                    let w = partition_to_grassmannian(r, &lambda).unwrap();
                    let s = noncomm_kschur(r, &lambda).unwrap();
                    for i in 1..=k {
                        let prod = is_in_b(&(&h(r, i).unwrap() * &s)).unwrap().unwrap();
                        let mut expected = BExpansion::new(BBasis::KSchur, r);
                        for d in ResidueSet::all_of_size(r, i) {
                            let v = cyclically_decreasing(&d).multiply(&w).unwrap();
                            if v.length() == n + i && v.is_grassmannian() {
                                expected.add(grassmannian_to_partition(&v).unwrap(), 1);
                            }
                        }
                        assert_eq!(prod, expected, "k={k} lambda={lambda} i={i}");
                    }
                }
            }
        }
    }

    #[test]
    fn display() {
        let hx = kschur_h_expansion(rk(2), &p(&[1, 1])).unwrap();
        assert_eq!(hx.to_string(), "-h(2) + h(1,1)");
    }
}
