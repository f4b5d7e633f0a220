//! Exhaustive verification sweeps. Each sweep checks one identity on every
//! basis element in range, in parallel, and collects every counterexample.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{down, down_comp, down_comp_on_kschur, down_pow, hat_extend, kschur_pieri_perp, up};
use crate::affine_perm::{
    elements_up_to, grassmannian_elements, grassmannian_to_partition, partition_to_grassmannian, AffinePerm, Core, Rank,
};
use crate::error::{Error, Result};
use crate::fomin_stanley::{h, h_lambda, is_in_b, kschur_degree};
use crate::nilcoxeter::NilCoxElem;
use crate::partition::{bounded_partitions, compositions, Composition, Partition};
use crate::symfunc::{
    affine_stanley, dual_kschur_expand, multiply_m, perp_on_kschur, ribbon_in_h, skew_kschur, strong_schur_below,
    strong_schur_kschur, Basis, SymFunc,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterRange {
    pub k: usize,
    pub length_bound: usize,
    pub index_bounds: String,
}

/// Outcome of one sweep; it passes exactly when `failures` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorReport {
    pub identity_name: String,
    pub parameter_range: ParameterRange,
    pub checked_count: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

impl OperatorReport {
    fn new(name: &str, k: usize, length_bound: usize, index_bounds: String, outcome: Outcome) -> Self {
        OperatorReport {
            identity_name: name.to_string(),
            parameter_range: ParameterRange { k, length_bound, index_bounds },
            checked_count: outcome.checked,
            passed: outcome.failures.is_empty(),
            failures: outcome.failures,
        }
    }
}

#[derive(Default)]
struct Outcome {
    checked: usize,
    failures: Vec<String>,
}

impl Outcome {
    fn expect(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    fn expect_eq(&mut self, lhs: &NilCoxElem, rhs: &NilCoxElem, what: impl FnOnce() -> String) {
        self.expect(lhs == rhs, || format!("{}: {lhs} != {rhs}", what()));
    }

    fn merge(mut self, other: Outcome) -> Outcome {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        self
    }
}

fn sweep<T: Sync>(items: &[T], check: impl Fn(&T, &mut Outcome) -> Result<()> + Sync) -> Result<Outcome> {
    let parts = items
        .par_iter()
        .map(|item| {
            let mut o = Outcome::default();
            check(item, &mut o).map(|()| o)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.into_iter().fold(Outcome::default(), Outcome::merge))
}

fn elements(rank: Rank, max_len: usize) -> Result<Vec<AffinePerm>> {
    Ok(elements_up_to(rank, max_len)?.into_iter().flatten().collect())
}

fn compositions_up_to(max_size: usize) -> Vec<Composition> {
    (1..=max_size).flat_map(compositions).collect()
}

/// `D_i U_j = sum_e U_{j-e} D_{i-e}` and `D_i U_j - U_j D_i = D_{i-1} U_{j-1}`.
pub fn verify_commutation(k: usize, max_len: usize, imax: usize, jmax: usize) -> Result<OperatorReport> {
    let rank = Rank::new(k)?;
    if jmax > k {
        return Err(Error::GeneratorOutOfRange { i: jmax, k });
    }
    let outcome = sweep(&elements(rank, max_len)?, |w, o| {
        let a = NilCoxElem::basis(w.clone());
        for i in 1..=imax {
            for j in 1..=jmax {
                let lhs = down(i, &up(j, &a));
                let mut rhs = NilCoxElem::zero(rank);
                for e in 0..=i.min(j) {
                    rhs += &up(j - e, &down(i - e, &a));
                }
                o.expect_eq(&lhs, &rhs, || format!("commutation i={i} j={j} at {w}"));
                let bracket = lhs.try_sub(&up(j, &down(i, &a)))?;
                o.expect_eq(&bracket, &down(i - 1, &up(j - 1, &a)), || format!("bracket i={i} j={j} at {w}"));
            }
        }
        Ok(())
    })?;
    Ok(OperatorReport::new("commutation", k, max_len, format!("i<={imax}, j<={jmax}"), outcome))
}

/// `D_I D_J = D_{I near-concat J} + D_{I concat J}`.
pub fn verify_product_rule(k: usize, max_len: usize, max_size: usize) -> Result<OperatorReport> {
    let rank = Rank::new(k)?;
    let comps = compositions_up_to(max_size);
    let outcome = sweep(&elements(rank, max_len)?, |w, o| {
        let a = NilCoxElem::basis(w.clone());
        for i in &comps {
            for j in &comps {
                let lhs = down_comp(i, &down_comp(j, &a));
                let rhs = &down_comp(&i.near_concat(j), &a) + &down_comp(&i.concat(j), &a);
                o.expect_eq(&lhs, &rhs, || format!("I={i} J={j} at {w}"));
            }
        }
        Ok(())
    })?;
    Ok(OperatorReport::new("product_rule", k, max_len, format!("|I|,|J|<={max_size}"), outcome))
}

/// `sum_{J coarsening I} D_J = D_{i_1} .. D_{i_r}`.
pub fn verify_refinement_sum(k: usize, max_len: usize, max_size: usize) -> Result<OperatorReport> {
    let rank = Rank::new(k)?;
    let comps = compositions_up_to(max_size);
    let outcome = sweep(&elements(rank, max_len)?, |w, o| {
        let a = NilCoxElem::basis(w.clone());
        for i in &comps {
            let mut lhs = NilCoxElem::zero(rank);
            for j in i.coarsenings() {
                lhs += &down_comp(&j, &a);
            }
            o.expect_eq(&lhs, &down_pow(i.parts(), &a), || format!("I={i} at {w}"));
        }
        Ok(())
    })?;
    Ok(OperatorReport::new("refinement_sum", k, max_len, format!("|I|<={max_size}"), outcome))
}

/// `D_i(h_r) = h_{r-i}` for `i <= r <= k`.
pub fn verify_dh(k: usize) -> Result<OperatorReport> {
    let rank = Rank::new(k)?;
    let rs: Vec<usize> = (0..=k).collect();
    let outcome = sweep(&rs, |&r, o| {
        let hr = h(rank, r)?;
        for i in 0..=r {
            o.expect_eq(&down(i, &hr), &h(rank, r - i)?, || format!("D_{i}(h_{r})"));
        }
        Ok(())
    })?;
    Ok(OperatorReport::new("d_of_h", k, k, "i<=r<=k".into(), outcome))
}

/// `D_J(h_lambda)` lies in `B`.
pub fn verify_b_stability(k: usize, max_degree: usize) -> Result<OperatorReport> {
    let rank = Rank::new(k)?;
    let lambdas: Vec<Partition> = (0..=max_degree).flat_map(|n| bounded_partitions(n, k)).collect();
    let comps = compositions_up_to(max_degree);
    let outcome = sweep(&lambdas, |lambda, o| {
        let hl = h_lambda(rank, lambda)?;
        for j in comps.iter().filter(|j| j.size() <= lambda.size()) {
            o.expect(is_in_b(&down_comp(j, &hl))?.is_some(), || format!("D{j}(h{lambda}) not in B"));
        }
        Ok(())
    })?;
    Ok(OperatorReport::new("b_stability", k, max_degree, format!("|J|<=|lambda|<={max_degree}"), outcome))
}

fn finite_group(rank: Rank) -> Result<Vec<AffinePerm>> {
    let longest = rank.k() * (rank.k() + 1) / 2;
    Ok(elements(rank, longest)?.into_iter().filter(AffinePerm::is_finite).collect())
}

/// `U_j(u_w u_v) = U_j(u_w) u_v` and `D_i(u_w u_v) = D_i(u_w) u_v` for `v` in
/// the finite group whenever lengths add; `D_i(u_v) = 0` there.
pub fn verify_module_morphism(k: usize, max_len: usize) -> Result<OperatorReport> {
    let rank = Rank::new(k)?;
    let finite = finite_group(rank)?;
    let mut outcome = sweep(&elements(rank, max_len)?, |w, o| {
        let a = NilCoxElem::basis(w.clone());
        for v in &finite {
            let Some(wv) = crate::nilcoxeter::basis_product(w, v) else { continue };
            let b = NilCoxElem::basis(wv);
            for j in 1..=k {
                o.expect_eq(&up(j, &b), &up(j, &a).mul_basis(v), || format!("U_{j} at {w} * {v}"));
            }
            for i in 1..=b.degree().unwrap_or(0) {
                o.expect_eq(&down(i, &b), &down(i, &a).mul_basis(v), || format!("D_{i} at {w} * {v}"));
            }
        }
        Ok(())
    })?;
    for v in &finite {
        for i in 1..=v.length().max(1) {
            let image = down(i, &NilCoxElem::basis(v.clone()));
            outcome.expect(image.is_zero(), || format!("D_{i}(u_{v}) = {image}"));
        }
    }
    Ok(OperatorReport::new("module_morphism", k, max_len, format!("v in W_0, j<={k}"), outcome))
}

/// `D_J D_K = D_K D_J`.
pub fn verify_commuting_family(k: usize, max_len: usize, max_size: usize) -> Result<OperatorReport> {
    let rank = Rank::new(k)?;
    let comps = compositions_up_to(max_size);
    let outcome = sweep(&elements(rank, max_len)?, |w, o| {
        let a = NilCoxElem::basis(w.clone());
        for (x, j) in comps.iter().enumerate() {
            for kk in &comps[x + 1..] {
                let lhs = down_comp(j, &down_comp(kk, &a));
                let rhs = down_comp(kk, &down_comp(j, &a));
                o.expect_eq(&lhs, &rhs, || format!("J={j} K={kk} at {w}"));
            }
        }
        Ok(())
    })?;
    Ok(OperatorReport::new("commuting_family", k, max_len, format!("|J|,|K|<={max_size}"), outcome))
}

/// Each `s^(k)_lambda` has the single Grassmannian term `u_{w_lambda}`.
pub fn verify_kschur_grassmannian_term(k: usize, max_degree: usize) -> Result<OperatorReport> {
    let rank = Rank::new(k)?;
    let degrees: Vec<usize> = (0..=max_degree).collect();
    let outcome = sweep(&degrees, |&n, o| {
        let table = kschur_degree(rank, n)?;
        for (lambda, s) in table.partitions.iter().zip(&table.kschur) {
            let grass: Vec<_> = s.terms().filter(|(w, _)| w.is_grassmannian()).collect();
            let w = partition_to_grassmannian(rank, lambda)?;
            o.expect(grass.len() == 1 && grass[0].0 == &w && grass[0].1 == 1, || {
                format!("s{lambda} has Grassmannian terms {grass:?}")
            });
        }
        Ok(())
    })?;
    Ok(OperatorReport::new("kschur_grassmannian_term", k, max_degree, "|lambda|".into(), outcome))
}

/// `D_i(s^(k)_lambda) = sum` over strong strips `w_lambda -> w_mu` of size `i`.
pub fn verify_pieri_perp(k: usize, max_degree: usize, imax: usize) -> Result<OperatorReport> {
    let rank = Rank::new(k)?;
    let lambdas: Vec<Partition> = (0..=max_degree).flat_map(|n| bounded_partitions(n, k)).collect();
    let outcome = sweep(&lambdas, |lambda, o| {
        for i in 1..=imax {
            let result = kschur_pieri_perp(rank, lambda, i);
            o.expect(result.is_ok(), || format!("i={i} lambda={lambda}: {}", result.unwrap_err()));
        }
        Ok(())
    })?;
    Ok(OperatorReport::new("pieri_perp", k, max_degree, format!("i<={imax}"), outcome))
}

/// On `B`, `D_J` (graph traversal) equals the perp of the ribbon function
/// `s_J` (pairing computation).
pub fn verify_restriction(k: usize, max_degree: usize, max_size: usize) -> Result<OperatorReport> {
    let rank = Rank::new(k)?;
    let mus: Vec<Partition> = (0..=max_degree).flat_map(|n| bounded_partitions(n, k)).collect();
    let ribbons: Vec<(Composition, SymFunc)> = compositions_up_to(max_size)
        .into_iter()
        .map(|j| {
            let r = ribbon_in_h(&j);
            (j, r)
        })
        .collect();
    let outcome = sweep(&mus, |mu, o| {
        for (j, ribbon) in &ribbons {
            let graph = down_comp_on_kschur(j, mu, rank)?;
            let perp = perp_on_kschur(ribbon, rank, mu)?;
            o.expect(graph == perp, || format!("J={j} mu={mu}: graph {graph}, ribbon perp {perp}"));
        }
        Ok(())
    })?;
    Ok(OperatorReport::new("restriction", k, max_degree, format!("|J|<={max_size}"), outcome))
}

/// Extending the restriction of `D_J` to `B` through the `b_w` basis gives
/// back `D_J` on the whole algebra.
pub fn verify_hat_extension(k: usize, max_len: usize, max_size: usize) -> Result<OperatorReport> {
    let rank = Rank::new(k)?;
    let comps = compositions_up_to(max_size);
    let outcome = sweep(&elements(rank, max_len)?, |w, o| {
        let a = NilCoxElem::basis(w.clone());
        for j in &comps {
            let restricted = |lambda: &Partition| down_comp_on_kschur(j, lambda, rank);
            o.expect_eq(&hat_extend(&restricted, &a)?, &down_comp(j, &a), || format!("J={j} at {w}"));
        }
        Ok(())
    })?;
    Ok(OperatorReport::new("hat_extension", k, max_len, format!("|J|<={max_size}"), outcome))
}

/// Strong Schur functions: symmetry and positivity of the F-expansion,
/// k-bounded h-expansion, agreement of all bases, `Strong_{mu/0} = s_mu`,
/// Grassmannian coefficients `<s_mu, sbar_lambda sbar_nu>`, and the two
/// skew k-Schur routes.
pub fn verify_strong_schur(k: usize, max_len: usize) -> Result<OperatorReport> {
    let rank = Rank::new(k)?;
    let outcome = sweep(&elements(rank, max_len)?, |u, o| {
        let table = strong_schur_below(u)?;
        for (v, s) in table.iter() {
            o.checked += 1;
            o.failures.extend(s.check(rank).into_iter().map(|f| format!("{u} / {v}: {f}")));
        }
        if !u.is_grassmannian() {
            return Ok(());
        }
        let mu = grassmannian_to_partition(u)?;
        let top = table.get(&AffinePerm::identity(rank)).map(|s| s.kschur.clone());
        let expected = SymFunc::single(Basis::KSchur, mu.parts().to_vec())?;
        o.expect(top.as_ref() == Some(&expected), || format!("Strong_{mu}/0 = {top:?}"));
        for m in 0..=mu.size() {
            for nu in bounded_partitions(m, k) {
                let w_nu = partition_to_grassmannian(rank, &nu)?;
                let strong = strong_schur_kschur(u, &w_nu)?;
                let skew = skew_kschur(rank, &mu, &nu)?;
                o.expect(strong == skew, || format!("skew {mu}/{nu}: strong {strong}, perp {skew}"));
                let sbar_nu = affine_stanley(&w_nu);
                for lambda in bounded_partitions(mu.size() - m, k) {
                    let w_lambda = partition_to_grassmannian(rank, &lambda)?;
                    let product = dual_kschur_expand(&multiply_m(&affine_stanley(&w_lambda), &sbar_nu)?, rank)?;
                    let c = product.coeff(mu.parts());
                    let got = strong.coeff(lambda.parts());
                    o.expect(c == got, || format!("coefficient of s{lambda} in Strong_{mu}/{nu}: {got}, pairing {c}"));
                }
            }
        }
        Ok(())
    })?;
    Ok(OperatorReport::new("strong_schur", k, max_len, "all v below u".into(), outcome))
}

/// Grassmannian elements of length `n` are counted by k-bounded partitions
/// of `n`, and the core bijections round-trip.
pub fn verify_counting(k: usize, max_n: usize) -> Result<OperatorReport> {
    let rank = Rank::new(k)?;
    let ns: Vec<usize> = (0..=max_n).collect();
    let outcome = sweep(&ns, |&n, o| {
        let grass = grassmannian_elements(rank, n)?;
        let parts = bounded_partitions(n, k);
        o.expect(grass.len() == parts.len(), || format!("n={n}: {} elements, {} partitions", grass.len(), parts.len()));
        for w in &grass {
            let core = Core::from_grassmannian(w);
            o.expect(core.is_core(rank.period()) && core.to_grassmannian(rank) == *w, || format!("core of {w}"));
            let lambda = core.to_bounded_partition(rank);
            o.expect(Core::from_bounded_partition(rank, &lambda) == core, || format!("core of {lambda}"));
            o.expect(partition_to_grassmannian(rank, &lambda)? == *w && lambda.size() == n, || {
                format!("w_{lambda} != {w}")
            });
        }
        Ok(())
    })?;
    Ok(OperatorReport::new("counting", k, max_n, "n".into(), outcome))
}

/// Names accepted by [`run_identity`].
pub const IDENTITIES: &[&str] = &[
    "commutation",
    "product_rule",
    "refinement_sum",
    "d_of_h",
    "b_stability",
    "module_morphism",
    "commuting_family",
    "kschur_grassmannian_term",
    "pieri_perp",
    "restriction",
    "hat_extension",
    "strong_schur",
    "counting",
];

/// Runs one named sweep with its standard bounds derived from `k` and the
/// length bound `max_len`.
pub fn run_identity(name: &str, k: usize, max_len: usize) -> Result<OperatorReport> {
    match name {
        "commutation" => verify_commutation(k, max_len, k, k),
        "product_rule" => verify_product_rule(k, max_len, 3),
        "refinement_sum" => verify_refinement_sum(k, max_len, 4),
        "d_of_h" => verify_dh(k),
        "b_stability" => verify_b_stability(k, max_len),
        "module_morphism" => verify_module_morphism(k, max_len),
        "commuting_family" => verify_commuting_family(k, max_len, 3),
        "kschur_grassmannian_term" => verify_kschur_grassmannian_term(k, max_len),
        "pieri_perp" => verify_pieri_perp(k, max_len, 3),
        "restriction" => verify_restriction(k, max_len, 4),
        "hat_extension" => verify_hat_extension(k, max_len.min(5), 3),
        "strong_schur" => verify_strong_schur(k, max_len),
        "counting" => verify_counting(k, max_len.max(8)),
        other => Err(Error::Parse(format!("unknown identity {other:?}"))),
    }
}

/// Every sweep in [`IDENTITIES`].
pub fn run_all(k: usize, max_len: usize) -> Result<Vec<OperatorReport>> {
    IDENTITIES.iter().map(|name| run_identity(name, k, max_len)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_pass(r: OperatorReport) {
        assert!(r.passed, "{}: {:?}", r.identity_name, &r.failures[..r.failures.len().min(5)]);
        assert!(r.checked_count > 0);
    }

    #[test]
    fn small_sweeps_pass() {
        assert_pass(verify_commutation(2, 4, 2, 2).unwrap());
        assert_pass(verify_product_rule(2, 4, 2).unwrap());
        assert_pass(verify_refinement_sum(2, 4, 3).unwrap());
        assert_pass(verify_dh(3).unwrap());
        assert_pass(verify_b_stability(2, 4).unwrap());
        assert_pass(verify_module_morphism(2, 3).unwrap());
        assert_pass(verify_commuting_family(2, 4, 2).unwrap());
        assert_pass(verify_kschur_grassmannian_term(2, 5).unwrap());
        assert_pass(verify_pieri_perp(2, 4, 3).unwrap());
        assert_pass(verify_restriction(2, 4, 3).unwrap());
        assert_pass(verify_hat_extension(2, 4, 2).unwrap());
        assert_pass(verify_strong_schur(2, 4).unwrap());
        assert_pass(verify_counting(3, 6).unwrap());
    }

    #[test]
    fn report_json() {
        let r = verify_dh(2).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["identity_name"], "d_of_h");
        assert_eq!(v["passed"], true);
        assert_eq!(v["parameter_range"]["k"], 2);
    }

    #[test]
    fn bad_bounds() {
        assert!(verify_commutation(2, 3, 2, 3).is_err());
        assert!(run_identity("nope", 2, 3).is_err());
        assert!(verify_commutation(2, 99, 1, 1).is_err());
    }
}
