//! Strong Schur functions `Strong_{u/v}`: generating functions of paths in
//! the strong order graph, graded by fundamental quasisymmetric functions of
//! their ascent compositions, together with their m-, h- and k-Schur
//! expansions computed through the Pieri operators.

use std::collections::BTreeMap;
use std::sync::{Arc, LazyLock};

use serde::Serialize;

use super::{perp_on_kschur, to_monomial, Basis, SymFunc};
use crate::affine_perm::{partition_to_grassmannian, AffinePerm, Rank};
use crate::cache::Memo;
use crate::error::{Error, Result};
use crate::fomin_stanley::BBasis;
use crate::nilcoxeter::NilCoxElem;
use crate::partition::{bounded_partitions, partitions, Partition};
use crate::pieri_ops::{down_pow, hat_extend};
use crate::strip_graphs::ascent_profile;

/// The four expansions of one `Strong_{u/v}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongSchur {
    #[serde(rename = "F")]
    pub f: SymFunc,
    pub m: SymFunc,
    pub h: SymFunc,
    pub kschur: SymFunc,
}

impl StrongSchur {
    fn zero(degree: usize) -> Self {
        StrongSchur {
            f: SymFunc::zero(Basis::Fundamental, degree),
            m: SymFunc::zero(Basis::Monomial, degree),
            h: SymFunc::zero(Basis::Homogeneous, degree),
            kschur: SymFunc::zero(Basis::KSchur, degree),
        }
    }

    /// Compares the expansions through the change-of-basis maps; returns one
    /// message per disagreement.
    pub fn check(&self, rank: Rank) -> Vec<String> {
        let mut out = Vec::new();
        match to_monomial(&self.f, None) {
            Err(e) => out.push(format!("F-expansion {} is not symmetric: {e}", self.f)),
            Ok(m) if m != self.m => out.push(format!("F gives {m}, D^lambda gives {}", self.m)),
            Ok(_) => {}
        }
        if let Some((i, c)) = self.m.terms().find(|&(_, c)| c < 0) {
            out.push(format!("negative monomial coefficient {c} at {i:?}"));
        }
        if let Some((i, _)) = self.h.terms().find(|(i, _)| i.first().is_some_and(|&p| p > rank.k())) {
            out.push(format!("h-expansion uses unbounded index {i:?}"));
        }
        match to_monomial(&self.h, None) {
            Ok(m) if m != self.m => out.push(format!("h-expansion gives {m}, expected {}", self.m)),
            Err(e) => out.push(e.to_string()),
            Ok(_) => {}
        }
        let via_h = self
            .h
            .to_b_expansion(rank)
            .and_then(|e| e.convert(BBasis::KSchur))
            .and_then(|e| SymFunc::from_b_expansion(&e, self.h.degree()));
        match via_h {
            Ok(s) if s != self.kschur => {
                out.push(format!("h-expansion gives {s}, k-Schur route gives {}", self.kschur))
            }
            Err(e) => out.push(e.to_string()),
            Ok(_) => {}
        }
        out
    }
}

type Table = BTreeMap<AffinePerm, StrongSchur>;

static STRONG_MEMO: LazyLock<Memo<AffinePerm, Table>> = LazyLock::new(Memo::new);

fn entry<'a>(table: &'a mut Table, u: &AffinePerm, v: &AffinePerm) -> &'a mut StrongSchur {
    table.entry(v.clone()).or_insert_with(|| StrongSchur::zero(u.length() - v.length()))
}

/// `Strong_{u/v}` for every `v` reachable from `u`, plus any `v` at which
/// one of the operator routes produced a (spurious) coefficient.
pub fn strong_schur_below(u: &AffinePerm) -> Result<Arc<Table>> {
    STRONG_MEMO.try_get_or_compute(u, || {
        let rank = u.rank();
        let a = NilCoxElem::basis(u.clone());
        let mut table = Table::new();
        for (v, comps) in ascent_profile(u).iter() {
            let e = entry(&mut table, u, v);
            for (j, &c) in comps {
                e.f.add(j.parts().to_vec(), c)?;
            }
        }
        for d in 0..=u.length() {
            for lambda in partitions(d) {
                for (v, c) in down_pow(lambda.parts(), &a).terms() {
                    entry(&mut table, u, v).m.add(lambda.parts().to_vec(), c)?;
                }
                let m_lambda = SymFunc::single(Basis::Monomial, lambda.parts().to_vec())?;
                let image = hat_extend(&|mu: &Partition| perp_on_kschur(&m_lambda, rank, mu), &a)?;
                for (v, c) in image.terms() {
                    entry(&mut table, u, v).h.add(lambda.parts().to_vec(), c)?;
                }
            }
            for lambda in bounded_partitions(d, rank.k()) {
                let dual = SymFunc::single(Basis::DualKSchur, lambda.parts().to_vec())?;
                let image = hat_extend(&|mu: &Partition| perp_on_kschur(&dual, rank, mu), &a)?;
                for (v, c) in image.terms() {
                    entry(&mut table, u, v).kschur.add(lambda.parts().to_vec(), c)?;
                }
            }
        }
        Ok(table)
    })
}

/// All four expansions of `Strong_{u/v}`; zero (of degree
/// `max(l(u) - l(v), 0)`) when there is no path.
pub fn strong_schur(u: &AffinePerm, v: &AffinePerm) -> Result<StrongSchur> {
    if u.rank() != v.rank() {
        return Err(Error::RankMismatch(u.rank().k(), v.rank().k()));
    }
    if v.length() > u.length() {
        return Ok(StrongSchur::zero(0));
    }
    Ok(strong_schur_below(u)?.get(v).cloned().unwrap_or_else(|| StrongSchur::zero(u.length() - v.length())))
}

/// `Strong_{u/v}` in fundamental quasisymmetric functions.
pub fn strong_schur_f(u: &AffinePerm, v: &AffinePerm) -> Result<SymFunc> {
    Ok(strong_schur(u, v)?.f)
}

/// Monomial coefficients `<D^lambda(u_u), u_v>`.
pub fn strong_schur_m(u: &AffinePerm, v: &AffinePerm) -> Result<SymFunc> {
    Ok(strong_schur(u, v)?.m)
}

/// h-coefficients `<(m_lambda^perp)^(u_u), u_v>`.
pub fn strong_schur_h(u: &AffinePerm, v: &AffinePerm) -> Result<SymFunc> {
    Ok(strong_schur(u, v)?.h)
}

/// k-Schur coefficients `<(sbar_lambda^perp)^(u_u), u_v>`.
pub fn strong_schur_kschur(u: &AffinePerm, v: &AffinePerm) -> Result<SymFunc> {
    Ok(strong_schur(u, v)?.kschur)
}

/// The skew k-Schur function `sbar_nu^perp(s^(k)_mu)` in the k-Schur basis.
pub fn skew_kschur(rank: Rank, mu: &Partition, nu: &Partition) -> Result<SymFunc> {
    mu.check_bounded(rank.k())?;
    nu.check_bounded(rank.k())?;
    if nu.size() > mu.size() {
        return Ok(SymFunc::zero(Basis::KSchur, 0));
    }
    // Validates that nu names a Grassmannian element as well.
    partition_to_grassmannian(rank, nu)?;
    let dual = SymFunc::single(Basis::DualKSchur, nu.parts().to_vec())?;
    SymFunc::from_b_expansion(&perp_on_kschur(&dual, rank, mu)?, mu.size() - nu.size())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_perm::elements_up_to;
    use crate::nilcoxeter::NilCoxElem;
    use crate::partition::compositions;
    use crate::pieri_ops::down_comp;

    fn rk(k: usize) -> Rank {
        Rank::new(k).unwrap()
    }

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn empty_path() {
        let u = AffinePerm::from_word(rk(2), &[0, 1, 2, 0]).unwrap();
        let s = strong_schur(&u, &u).unwrap();
        assert_eq!(s.f, SymFunc::one(Basis::Fundamental));
        assert_eq!(s.kschur, SymFunc::one(Basis::KSchur));
        let id = AffinePerm::identity(rk(2));
        assert!(strong_schur(&id, &u).unwrap().f.is_zero());
    }

    #[test]
    fn grassmannian_top_is_kschur() {
        let r = rk(2);
        let u = partition_to_grassmannian(r, &p(&[2])).unwrap();
        let s = strong_schur(&u, &AffinePerm::identity(r)).unwrap();
        assert_eq!(s.kschur, SymFunc::single(Basis::KSchur, vec![2]).unwrap());
        assert_eq!(s.h, SymFunc::single(Basis::Homogeneous, vec![2]).unwrap());
    }

    #[test]
    fn f_coefficients_are_path_counts() {
        let r = rk(2);
        for level in elements_up_to(r, 5).unwrap() {
            for u in level {
                let a = NilCoxElem::basis(u.clone());
                let table = strong_schur_below(&u).unwrap();
                for d in 0..=u.length() {
                    for j in compositions(d) {
                        for (v, c) in down_comp(&j, &a).terms() {
                            assert_eq!(table[v].f.coeff(j.parts()), c, "{u} -> {v} {j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn expansions_agree_k2() {
        let r = rk(2);
        for level in elements_up_to(r, 5).unwrap() {
            for u in level {
                for (v, s) in strong_schur_below(&u).unwrap().iter() {
                    assert_eq!(s.check(r), Vec::<String>::new(), "{u} / {v}");
                }
            }
        }
    }

    #[test]
    fn skew_routes() {
        let r = rk(2);
        for n in 0..=4 {
            for mu in bounded_partitions(n, 2) {
                let wmu = partition_to_grassmannian(r, &mu).unwrap();
                assert_eq!(
                    skew_kschur(r, &mu, &Partition::empty()).unwrap(),
                    SymFunc::single(Basis::KSchur, mu.parts().to_vec()).unwrap()
                );
                assert_eq!(skew_kschur(r, &mu, &mu).unwrap(), SymFunc::one(Basis::KSchur));
                for m in 0..=n {
                    for nu in bounded_partitions(m, 2) {
                        let wnu = partition_to_grassmannian(r, &nu).unwrap();
                        assert_eq!(
                            skew_kschur(r, &mu, &nu).unwrap(),
                            strong_schur_kschur(&wmu, &wnu).unwrap(),
                            "{mu} / {nu}"
                        );
                    }
                }
            }
        }
    }
}
