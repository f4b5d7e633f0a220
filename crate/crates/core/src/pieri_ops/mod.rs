//! The operators `U_j` (left multiplication by `h_j`), `D_i` (strong strips),
//! `D_J` (paths with ascent composition `J`) and the extension of linear maps
//! on `B` to the whole algebra through the basis `b_w`.

pub mod verify;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, LazyLock};

use crate::affine_perm::{grassmannian_to_partition, partition_to_grassmannian, AffinePerm};
use crate::cache::Memo;
use crate::error::{Error, Result};
use crate::fomin_stanley::{expand_in_b_basis, h_cached, is_in_b, kschur_cached, BBasis, BExpansion};
use crate::nilcoxeter::NilCoxElem;
use crate::partition::{Composition, Partition};
use crate::strip_graphs::{paths_with_ascomp, strong_strip_targets, Multiset};

fn from_multiset(w: &AffinePerm, m: &Multiset) -> NilCoxElem {
    NilCoxElem::from_terms(w.rank(), m.iter().map(|(v, &c)| (v.clone(), c))).expect("same rank")
}

/// `U_j(a) = h_j a`; zero for `j > k`.
pub fn up(j: usize, a: &NilCoxElem) -> NilCoxElem {
    let rank = a.rank();
    if j > rank.k() {
        return NilCoxElem::zero(rank);
    }
    h_cached(rank, j).try_mul(a).expect("same rank")
}

static DOWN_MEMO: LazyLock<Memo<(usize, AffinePerm), NilCoxElem>> = LazyLock::new(Memo::new);
static DOWN_COMP_MEMO: LazyLock<Memo<(Composition, AffinePerm), NilCoxElem>> = LazyLock::new(Memo::new);

/// `D_i` on a basis element.
pub fn down_basis(i: usize, w: &AffinePerm) -> Arc<NilCoxElem> {
    DOWN_MEMO.get_or_compute(&(i, w.clone()), || from_multiset(w, &strong_strip_targets(w, i)))
}

/// `D_J` on a basis element.
pub fn down_comp_basis(composition: &Composition, w: &AffinePerm) -> Arc<NilCoxElem> {
    DOWN_COMP_MEMO
        .get_or_compute(&(composition.clone(), w.clone()), || from_multiset(w, &paths_with_ascomp(w, composition)))
}

fn linear(a: &NilCoxElem, f: impl Fn(&AffinePerm) -> Arc<NilCoxElem>) -> NilCoxElem {
    let mut out = NilCoxElem::zero(a.rank());
    for (w, c) in a.terms() {
        out += &f(w).scale(c);
    }
    out
}

/// `D_i`: sum over strong strips of size `i`.
pub fn down(i: usize, a: &NilCoxElem) -> NilCoxElem {
    linear(a, |w| down_basis(i, w))
}

/// `D_J`: sum over paths whose labels have ascent composition `J`.
pub fn down_comp(composition: &Composition, a: &NilCoxElem) -> NilCoxElem {
    linear(a, |w| down_comp_basis(composition, w))
}

/// `D^lambda = D_{lambda_1} o .. o D_{lambda_l}` (rightmost applied first).
pub fn down_pow(parts: &[usize], a: &NilCoxElem) -> NilCoxElem {
    parts.iter().rev().fold(a.clone(), |acc, &i| down(i, &acc))
}

/// `f^` applied to `a`: expand in the `b_w` basis and send
/// `b_w = s^(k)_lambda u_{w_(0)}` to `f(s^(k)_lambda) u_{w_(0)}`.
///
/// `f` receives `lambda` and returns the image of `s^(k)_lambda` in either
/// basis of `B`; every image must be homogeneous.
pub fn hat_extend(f: &dyn Fn(&Partition) -> Result<BExpansion>, a: &NilCoxElem) -> Result<NilCoxElem> {
    let rank = a.rank();
    let mut images: BTreeMap<Partition, NilCoxElem> = BTreeMap::new();
    let mut out = NilCoxElem::zero(rank);
    for (w, c) in expand_in_b_basis(a)? {
        let (grass, finite) = w.grassmannian_factorize();
        let lambda = grassmannian_to_partition(&grass)?;
        if !images.contains_key(&lambda) {
            let image = f(&lambda)?;
            if image.rank != rank {
                return Err(Error::RankMismatch(rank.k(), image.rank.k()));
            }
            let mut sizes = image.coeffs.keys().map(Partition::size);
            if let Some(first) = sizes.next() {
                if let Some(bad) = sizes.find(|&s| s != first) {
                    return Err(Error::DegreeMismatch { expected: first, got: bad });
                }
            }
            images.insert(lambda.clone(), image.to_element()?);
        }
        out += &images[&lambda].mul_basis(&finite).scale(c);
    }
    Ok(out)
}

/// The restriction of `D_J` to `B`, on the k-Schur basis.
pub fn down_comp_on_kschur(composition: &Composition, lambda: &Partition, rank: crate::Rank) -> Result<BExpansion> {
    let s = kschur_cached(rank, lambda)?;
    is_in_b(&down_comp(composition, &s))?
        .ok_or_else(|| Error::Inconsistent(format!("D{composition}(s{lambda}) is not in B")))
}

/// Strong strips of size `i` from `w_lambda` that end at 0-Grassmannian
/// elements, as partitions with multiplicity; checks the result against the
/// k-Schur expansion of `D_i(s^(k)_lambda)`.
pub fn kschur_pieri_perp(rank: crate::Rank, lambda: &Partition, i: usize) -> Result<Vec<(Partition, i64)>> {
    let w = partition_to_grassmannian(rank, lambda)?;
    let mut strips = BExpansion::new(BBasis::KSchur, rank);
    for (v, c) in strong_strip_targets(&w, i) {
        if v.is_grassmannian() {
            strips.add(grassmannian_to_partition(&v)?, c);
        }
    }
    let s = kschur_cached(rank, lambda)?;
    let image = is_in_b(&down(i, &s))?.ok_or_else(|| Error::Inconsistent(format!("D_{i}(s{lambda}) is not in B")))?;
    if image != strips {
        return Err(Error::Inconsistent(format!("D_{i}(s{lambda}) = {image}, strong strips give {strips}")));
    }
    Ok(strips.coeffs.into_iter().collect())
}

/// Operator expressions accepted on the command line: `U2`, `D1`, `D[2,1]`,
/// and compositions such as `D1.U2` (rightmost applied first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpSpec {
    Up(usize),
    Down(usize),
    DownComp(Composition),
    Compose(Vec<OpSpec>),
}

impl OpSpec {
    pub fn apply(&self, a: &NilCoxElem) -> NilCoxElem {
        match self {
            OpSpec::Up(j) => up(*j, a),
            OpSpec::Down(i) => down(*i, a),
            OpSpec::DownComp(c) => down_comp(c, a),
            OpSpec::Compose(ops) => ops.iter().rev().fold(a.clone(), |acc, op| op.apply(&acc)),
        }
    }
}

impl fmt::Display for OpSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpSpec::Up(j) => write!(f, "U{j}"),
            OpSpec::Down(i) => write!(f, "D{i}"),
            OpSpec::DownComp(c) => write!(f, "D{c}"),
            OpSpec::Compose(ops) => {
                for (idx, op) in ops.iter().enumerate() {
                    if idx > 0 {
                        write!(f, ".")?;
                    }
                    write!(f, "{op}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for OpSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad operator {s:?}"));
        let atoms: Vec<&str> = s.split(['.', '∘']).map(str::trim).collect();
        if atoms.len() > 1 {
            return Ok(OpSpec::Compose(atoms.iter().map(|a| a.parse()).collect::<Result<_>>()?));
        }
        let atom = atoms[0];
        let (head, rest) = atom.split_at_checked(1).ok_or_else(bad)?;
        match head {
            "U" => rest.parse().map(OpSpec::Up).map_err(|_| bad()),
            "D" if rest.starts_with('[') && rest.ends_with(']') => {
                let parts = rest[1..rest.len() - 1]
                    .split(',')
                    .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                Ok(OpSpec::DownComp(Composition::new(parts)?))
            }
            "D" => rest.parse().map(OpSpec::Down).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}
