//! Sparse symmetric and quasisymmetric functions with integer coefficients:
//! monomial, complete homogeneous, quasisymmetric monomial and fundamental
//! bases, k-Schur and dual k-Schur coordinates, and the perp operators that
//! connect them to the Fomin-Stanley subalgebra.

mod strong;

pub use strong::{
    skew_kschur, strong_schur, strong_schur_below, strong_schur_f, strong_schur_h, strong_schur_kschur, strong_schur_m,
    StrongSchur,
};

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, LazyLock};

use serde::{Deserialize, Serialize};

use crate::affine_perm::{partition_to_grassmannian, AffinePerm, Rank};
use crate::cache::Memo;
use crate::error::{Error, Result};
use crate::fomin_stanley::{h_lambda_cached, kschur_degree, BBasis, BExpansion};
use crate::nilcoxeter::{checked_coeff_add, checked_coeff_mul};
use crate::partition::{bounded_partitions, partitions, Composition, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "m")]
    Monomial,
    #[serde(rename = "h")]
    Homogeneous,
    #[serde(rename = "M")]
    QuasiMonomial,
    #[serde(rename = "F")]
    Fundamental,
    #[serde(rename = "kschur")]
    KSchur,
    #[serde(rename = "dual_kschur")]
    DualKSchur,
}

impl Basis {
    pub fn tag(self) -> &'static str {
        match self {
            Basis::Monomial => "m",
            Basis::Homogeneous => "h",
            Basis::QuasiMonomial => "M",
            Basis::Fundamental => "F",
            Basis::KSchur => "kschur",
            Basis::DualKSchur => "dual_kschur",
        }
    }

    pub fn indexed_by_compositions(self) -> bool {
        matches!(self, Basis::QuasiMonomial | Basis::Fundamental)
    }

    fn text_symbol(self) -> &'static str {
        match self {
            Basis::Monomial => "m",
            Basis::Homogeneous => "h",
            Basis::QuasiMonomial => "M",
            Basis::Fundamental => "F",
            Basis::KSchur => "s",
            Basis::DualKSchur => "sbar",
        }
    }

    fn latex_symbol(self) -> &'static str {
        match self {
            Basis::Monomial => "m",
            Basis::Homogeneous => "h",
            Basis::QuasiMonomial => "M",
            Basis::Fundamental => "F",
            Basis::KSchur => "s^{(k)}",
            Basis::DualKSchur => "\\bar{s}^{(k)}",
        }
    }
}

impl std::str::FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Basis::Monomial,
            Basis::Homogeneous,
            Basis::QuasiMonomial,
            Basis::Fundamental,
            Basis::KSchur,
            Basis::DualKSchur,
        ]
        .into_iter()
        .find(|b| b.tag() == s)
        .ok_or_else(|| Error::Parse(format!("unknown basis {s:?}")))
    }
}

impl From<BBasis> for Basis {
    fn from(b: BBasis) -> Self {
        match b {
            BBasis::H => Basis::Homogeneous,
            BBasis::KSchur => Basis::KSchur,
        }
    }
}

/// A homogeneous function of degree `degree` written in one basis. Indices
/// are partitions (weakly decreasing) or compositions depending on the basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SymFuncJson", into = "SymFuncJson")]
pub struct SymFunc {
    basis: Basis,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, i64>,
}

impl SymFunc {
    pub fn zero(basis: Basis, degree: usize) -> Self {
        Self { basis, degree, coeffs: BTreeMap::new() }
    }

    /// The constant `1` (degree 0).
    pub fn one(basis: Basis) -> Self {
        let mut f = Self::zero(basis, 0);
        f.coeffs.insert(Vec::new(), 1);
        f
    }

    pub fn single(basis: Basis, index: Vec<usize>) -> Result<Self> {
        let mut f = Self::zero(basis, index.iter().sum());
        f.add(index, 1)?;
        Ok(f)
    }

    pub fn from_terms(basis: Basis, degree: usize, terms: impl IntoIterator<Item = (Vec<usize>, i64)>) -> Result<Self> {
        let mut f = Self::zero(basis, degree);
        for (index, c) in terms {
            f.add(index, c)?;
        }
        Ok(f)
    }

    /// The same coordinates viewed as a symmetric function.
    pub fn from_b_expansion(e: &BExpansion, degree: usize) -> Result<Self> {
        Self::from_terms(e.basis.into(), degree, e.coeffs.iter().map(|(p, &c)| (p.parts().to_vec(), c)))
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, index: &[usize]) -> i64 {
        self.coeffs.get(index).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], i64)> {
        self.coeffs.iter().map(|(i, &c)| (i.as_slice(), c))
    }

    fn check_index(&self, index: &[usize]) -> Result<()> {
        if index.contains(&0) {
            return Err(Error::InvalidComposition(index.to_vec()));
        }
        if !self.basis.indexed_by_compositions() && index.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::InvalidPartition(index.to_vec()));
        }
        let size: usize = index.iter().sum();
        if size != self.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, got: size });
        }
        Ok(())
    }

    pub fn add(&mut self, index: Vec<usize>, c: i64) -> Result<()> {
        self.check_index(&index)?;
        self.add_unchecked(index, c);
        Ok(())
    }

    fn add_unchecked(&mut self, index: Vec<usize>, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(index.clone()).or_insert(0);
        *entry = checked_coeff_add(*entry, c);
        if *entry == 0 {
            self.coeffs.remove(&index);
        }
    }

    pub fn try_add(&self, other: &SymFunc) -> Result<SymFunc> {
        if self.basis != other.basis {
            return Err(Error::BasisMismatch { expected: self.basis.tag(), got: other.basis.tag() });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, got: other.degree });
        }
        let mut out = self.clone();
        for (i, &c) in &other.coeffs {
            out.add_unchecked(i.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: i64) -> SymFunc {
        let mut out = SymFunc::zero(self.basis, self.degree);
        for (i, &a) in &self.coeffs {
            out.add_unchecked(i.clone(), checked_coeff_mul(a, c));
        }
        out
    }

    fn expect_basis(&self, basis: Basis) -> Result<()> {
        if self.basis != basis {
            return Err(Error::BasisMismatch { expected: basis.tag(), got: self.basis.tag() });
        }
        Ok(())
    }

    /// The coordinates as a `BExpansion` (h or k-Schur bases only).
    pub fn to_b_expansion(&self, rank: Rank) -> Result<BExpansion> {
        let basis = match self.basis {
            Basis::Homogeneous => BBasis::H,
            Basis::KSchur => BBasis::KSchur,
            other => return Err(Error::BasisMismatch { expected: "h", got: other.tag() }),
        };
        let mut out = BExpansion::new(basis, rank);
        for (i, &c) in &self.coeffs {
            let p = Partition::new(i.clone())?;
            p.check_bounded(rank.k())?;
            out.add(p, c);
        }
        Ok(out)
    }

    fn render(&self, f: &mut fmt::Formatter<'_>, latex: bool) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (idx, (index, &c)) in self.coeffs.iter().rev().enumerate() {
            if idx > 0 {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            let a = c.unsigned_abs();
            if index.is_empty() {
                write!(f, "{a}")?;
                continue;
            }
            if a != 1 {
                write!(f, "{a}")?;
                if latex {
                    write!(f, " ")?;
                }
            }
            let body = index.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
            let (open, close) = if self.basis.indexed_by_compositions() { ("[", "]") } else { ("(", ")") };
            if latex {
                write!(f, "{}_{{{open}{body}{close}}}", self.basis.latex_symbol())?;
            } else {
                write!(f, "{}{open}{body}{close}", self.basis.text_symbol())?;
            }
        }
        Ok(())
    }

    pub fn to_latex(&self) -> String {
        struct Latex<'a>(&'a SymFunc);
        impl fmt::Display for Latex<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.render(f, true)
            }
        }
        Latex(self).to_string()
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.render(f, false)
    }
}

#[derive(Serialize, Deserialize)]
struct SymFuncJson {
    basis: Basis,
    degree: usize,
    coeffs: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    index: Vec<usize>,
    coeff: i64,
}

impl From<SymFunc> for SymFuncJson {
    fn from(f: SymFunc) -> Self {
        SymFuncJson {
            basis: f.basis,
            degree: f.degree,
            coeffs: f.coeffs.into_iter().rev().map(|(index, coeff)| TermJson { index, coeff }).collect(),
        }
    }
}

impl TryFrom<SymFuncJson> for SymFunc {
    type Error = Error;

    fn try_from(j: SymFuncJson) -> Result<Self> {
        if let Some(t) = j.coeffs.iter().find(|t| t.coeff == 0) {
            return Err(Error::Parse(format!("zero coefficient at {:?}", t.index)));
        }
        SymFunc::from_terms(j.basis, j.degree, j.coeffs.into_iter().map(|t| (t.index, t.coeff)))
    }
}

/// `F_J = sum_{I refining J} M_I`.
#[allow(non_snake_case)]
pub fn F_to_M(f: &SymFunc) -> Result<SymFunc> {
    f.expect_basis(Basis::Fundamental)?;
    let mut out = SymFunc::zero(Basis::QuasiMonomial, f.degree);
    for (j, &c) in &f.coeffs {
        for i in Composition::new(j.clone())?.refinements() {
            out.add_unchecked(i.parts().to_vec(), c);
        }
    }
    Ok(out)
}

/// Distinct orderings of a multiset of parts.
pub fn distinct_permutations(parts: &[usize]) -> Vec<Vec<usize>> {
    fn go(counts: &mut BTreeMap<usize, usize>, current: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        let keys: Vec<usize> = counts.iter().filter(|(_, &c)| c > 0).map(|(&p, _)| p).collect();
        for p in keys {
            *counts.get_mut(&p).unwrap() -= 1;
            current.push(p);
            go(counts, current, n, out);
            current.pop();
            *counts.get_mut(&p).unwrap() += 1;
        }
    }
    let mut counts = BTreeMap::new();
    for &p in parts {
        *counts.entry(p).or_insert(0) += 1;
    }
    let mut out = Vec::new();
    go(&mut counts, &mut Vec::new(), parts.len(), &mut out);
    out
}

/// Collapses an M-expansion to the monomial basis; fails with a pair of
/// rearranged compositions carrying different coefficients.
#[allow(non_snake_case)]
pub fn M_to_m_if_symmetric(f: &SymFunc) -> Result<SymFunc> {
    f.expect_basis(Basis::QuasiMonomial)?;
    let mut out = SymFunc::zero(Basis::Monomial, f.degree);
    let mut seen = std::collections::BTreeSet::new();
    for index in f.coeffs.keys() {
        let lambda = Partition::from_multiset(index.clone());
        if !seen.insert(lambda.clone()) {
            continue;
        }
        let c = f.coeff(lambda.parts());
        for other in distinct_permutations(lambda.parts()) {
            if f.coeff(&other) != c {
                return Err(Error::NotSymmetric(lambda.parts().to_vec(), other));
            }
        }
        out.add_unchecked(lambda.parts().to_vec(), c);
    }
    Ok(out)
}

static M_PRODUCT_MEMO: LazyLock<Memo<(Partition, Partition), BTreeMap<Partition, i64>>> = LazyLock::new(Memo::new);

/// `m_lambda m_mu = sum_nu c_nu m_nu`, where `c_nu` counts the ways to split
/// the exponent vector `nu` as a rearrangement of `lambda` plus one of `mu`.
pub fn m_product(lambda: &Partition, mu: &Partition) -> Arc<BTreeMap<Partition, i64>> {
    let key = if lambda <= mu { (lambda.clone(), mu.clone()) } else { (mu.clone(), lambda.clone()) };
    M_PRODUCT_MEMO.get_or_compute(&key, || {
        let (a, b) = &key;
        let lo = a.len().max(b.len());
        let hi = a.len() + b.len();
        let mut out = BTreeMap::new();
        for nu in partitions(a.size() + b.size()) {
            let n = nu.len();
            if n < lo || n > hi {
                continue;
            }
            let mut padded = a.parts().to_vec();
            padded.resize(n, 0);
            let mut count = 0i64;
            for alpha in distinct_permutations(&padded) {
                let mut rest = Vec::with_capacity(n);
                let mut ok = true;
                for (x, y) in nu.parts().iter().zip(&alpha) {
                    if x < y {
                        ok = false;
                        break;
                    }
                    if x > y {
                        rest.push(x - y);
                    }
                }
                if ok && Partition::from_multiset(rest) == *b {
                    count += 1;
                }
            }
            if count != 0 {
                out.insert(nu, count);
            }
        }
        out
    })
}

/// Product of two monomial-basis expansions.
pub fn multiply_m(f: &SymFunc, g: &SymFunc) -> Result<SymFunc> {
    f.expect_basis(Basis::Monomial)?;
    g.expect_basis(Basis::Monomial)?;
    let mut out = SymFunc::zero(Basis::Monomial, f.degree + g.degree);
    for (a, &x) in &f.coeffs {
        for (b, &y) in &g.coeffs {
            let xy = checked_coeff_mul(x, y);
            for (nu, &c) in m_product(&Partition::new(a.clone())?, &Partition::new(b.clone())?).iter() {
                out.add_unchecked(nu.parts().to_vec(), checked_coeff_mul(xy, c));
            }
        }
    }
    Ok(out)
}

static H_TO_M_MEMO: LazyLock<Memo<Partition, SymFunc>> = LazyLock::new(Memo::new);

/// `h_mu` in the monomial basis, from `h_r = sum_{lambda |- r} m_lambda` and
/// repeated monomial products.
pub fn h_to_m(mu: &Partition) -> Arc<SymFunc> {
    H_TO_M_MEMO.get_or_compute(mu, || {
        let mut acc = SymFunc::one(Basis::Monomial);
        for &r in mu.parts() {
            let hr =
                SymFunc::from_terms(Basis::Monomial, r, partitions(r).into_iter().map(|p| (p.parts().to_vec(), 1)))
                    .expect("valid indices");
            acc = multiply_m(&acc, &hr).expect("monomial basis");
        }
        acc
    })
}

/// Rows `L[mu][lambda]` of the h-to-m transition over all partitions of `n`
/// in decreasing lexicographic order.
pub fn h_to_m_matrix(n: usize) -> Vec<Vec<i64>> {
    let parts = partitions(n);
    parts
        .iter()
        .map(|mu| {
            let h = h_to_m(mu);
            parts.iter().map(|lambda| h.coeff(lambda.parts())).collect()
        })
        .collect()
}

/// Number of semistandard tableaux of shape `lambda` and content `mu`,
/// enumerated by peeling horizontal strips of sizes `mu_l, .., mu_1`.
pub fn kostka(lambda: &Partition, mu: &Partition) -> Result<u64> {
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch(lambda.size(), mu.size()));
    }
    fn remove_strip(shape: &[usize], row: usize, left: usize, next: &mut Vec<usize>, content: &[usize]) -> u64 {
        if row == shape.len() {
            if left != 0 {
                return 0;
            }
            let mut trimmed = next.clone();
            while trimmed.last() == Some(&0) {
                trimmed.pop();
            }
            return count(&trimmed, content);
        }
        let floor = shape.get(row + 1).copied().unwrap_or(0);
        let max_take = (shape[row] - floor).min(left);
        let mut total = 0;
        for take in 0..=max_take {
            next.push(shape[row] - take);
            total += remove_strip(shape, row + 1, left - take, next, content);
            next.pop();
        }
        total
    }
    fn count(shape: &[usize], content: &[usize]) -> u64 {
        match content.split_last() {
            None => u64::from(shape.is_empty()),
            Some((&last, rest)) => remove_strip(shape, 0, last, &mut Vec::new(), rest),
        }
    }
    Ok(count(lambda.parts(), mu.parts()))
}

/// Converts to the monomial basis. Symmetric-function coordinates only; the
/// k-Schur and dual k-Schur bases need the rank.
pub fn to_monomial(f: &SymFunc, rank: Option<Rank>) -> Result<SymFunc> {
    let need_rank = || rank.ok_or(Error::BasisMismatch { expected: "m", got: f.basis.tag() });
    match f.basis {
        Basis::Monomial => Ok(f.clone()),
        Basis::Homogeneous => {
            let mut out = SymFunc::zero(Basis::Monomial, f.degree);
            for (mu, &c) in &f.coeffs {
                for (lambda, &a) in &h_to_m(&Partition::new(mu.clone())?).coeffs {
                    out.add_unchecked(lambda.clone(), checked_coeff_mul(a, c));
                }
            }
            Ok(out)
        }
        Basis::QuasiMonomial => M_to_m_if_symmetric(f),
        Basis::Fundamental => M_to_m_if_symmetric(&F_to_M(f)?),
        Basis::KSchur => {
            let h = f.to_b_expansion(need_rank()?)?.convert(BBasis::H)?;
            to_monomial(&SymFunc::from_b_expansion(&h, f.degree)?, None)
        }
        Basis::DualKSchur => {
            let rank = need_rank()?;
            let mut out = SymFunc::zero(Basis::Monomial, f.degree);
            for (lambda, &c) in &f.coeffs {
                let w = partition_to_grassmannian(rank, &Partition::new(lambda.clone())?)?;
                for (mu, &a) in &affine_stanley(&w).coeffs {
                    out.add_unchecked(mu.clone(), checked_coeff_mul(a, c));
                }
            }
            Ok(out)
        }
    }
}

/// Ribbon Schur function `s_J` in the h basis, by
/// `s_J = h_{j1} s_{[j2,..]} - s_{[j1+j2,..]}` and `s_[r] = h_r`.
pub fn ribbon_in_h(composition: &Composition) -> SymFunc {
    fn go(parts: &[usize], out: &mut BTreeMap<Vec<usize>, i64>, sign: i64, prefix: &mut Vec<usize>) {
        match parts {
            [] => {
                let key = Partition::from_multiset(prefix.clone()).parts().to_vec();
                *out.entry(key).or_insert(0) += sign;
            }
            [r] => {
                prefix.push(*r);
                go(&[], out, sign, prefix);
                prefix.pop();
            }
            [first, second, rest @ ..] => {
                prefix.push(*first);
                let mut tail = vec![*second];
                tail.extend_from_slice(rest);
                go(&tail, out, sign, prefix);
                prefix.pop();
                let mut merged = vec![first + second];
                merged.extend_from_slice(rest);
                go(&merged, out, -sign, prefix);
            }
        }
    }
    let mut coeffs = BTreeMap::new();
    go(composition.parts(), &mut coeffs, 1, &mut Vec::new());
    SymFunc::from_terms(Basis::Homogeneous, composition.size(), coeffs).expect("valid indices")
}

/// Affine Stanley symmetric function, as its image in the quotient:
/// `sum_{lambda k-bounded} <h_lambda, u_w> m_lambda`.
pub fn affine_stanley(w: &AffinePerm) -> SymFunc {
    let rank = w.rank();
    let n = w.length();
    let mut out = SymFunc::zero(Basis::Monomial, n);
    for lambda in bounded_partitions(n, rank.k()) {
        let c = h_lambda_cached(rank, &lambda).expect("bounded").coeff(w);
        out.add_unchecked(lambda.parts().to_vec(), c);
    }
    out
}

/// Coordinates in the dual k-Schur basis of the image of `f` in the
/// quotient by the ideal spanned by `m_lambda`, `lambda_1 > k`.
pub fn dual_kschur_expand(f: &SymFunc, rank: Rank) -> Result<SymFunc> {
    f.expect_basis(Basis::Monomial)?;
    let table = kschur_degree(rank, f.degree)?;
    // sbar_lambda = sum_mu M[mu][lambda] m_mu, so the m-coordinates are M c.
    let rhs: Vec<i64> = table.partitions.iter().map(|p| f.coeff(p.parts())).collect();
    let c = table.matrix.solve(&rhs)?;
    SymFunc::from_terms(
        Basis::DualKSchur,
        f.degree,
        table.partitions.iter().zip(c).map(|(p, c)| (p.parts().to_vec(), c)),
    )
}

/// The k-bounded part of the monomial expansion of `f`.
fn truncated_monomial(f: &SymFunc, rank: Rank) -> Result<SymFunc> {
    let m = to_monomial(f, Some(rank))?;
    SymFunc::from_terms(
        Basis::Monomial,
        m.degree,
        m.coeffs.into_iter().filter(|(i, _)| i.first().is_none_or(|&p| p <= rank.k())),
    )
}

static PERP_MEMO: LazyLock<Memo<(Rank, SymFunc, Partition), SymFunc>> = LazyLock::new(Memo::new);

/// `f^perp(s^(k)_mu)` in the k-Schur basis. The coefficient of `s^(k)_nu` is
/// `<s^(k)_mu, f sbar_nu>`, read off the dual k-Schur expansion of the
/// product in the quotient.
pub fn perp_on_kschur(f: &SymFunc, rank: Rank, mu: &Partition) -> Result<BExpansion> {
    mu.check_bounded(rank.k())?;
    let mut out = BExpansion::new(BBasis::KSchur, rank);
    if f.degree > mu.size() {
        return Ok(out);
    }
    let fm = truncated_monomial(f, rank)?;
    for nu in bounded_partitions(mu.size() - f.degree, rank.k()) {
        let product = PERP_MEMO.try_get_or_compute(&(rank, fm.clone(), nu.clone()), || {
            let w = partition_to_grassmannian(rank, &nu)?;
            dual_kschur_expand(&multiply_m(&fm, &affine_stanley(&w))?, rank)
        })?;
        out.add(nu, product.coeff(mu.parts()));
    }
    Ok(out)
}
