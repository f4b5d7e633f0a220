//! The weak order graph G↑ and the marked strong order graph G↓, weak and
//! strong strips, and path counting by ascent composition.
//!
//! G↓ has one edge `x -> y` labelled `y(j) = x(i)` for every representation
//! `y^{-1} x = t_{i,j}` with `i <= 0 < j`, whenever `l(y) = l(x) - 1`. Edges
//! are kept individually; the labels drive every path constraint below.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, LazyLock};

use serde::{Deserialize, Serialize};

use crate::affine_perm::{elements_up_to, AffinePerm, Rank};
use crate::cache::Memo;
use crate::error::{Error, Result};
use crate::fomin_stanley::{cyclically_decreasing, ResidueSet};
use crate::nilcoxeter::{checked_coeff_add, checked_coeff_mul};
use crate::partition::Composition;

/// Endpoints of a family of paths, with multiplicity.
pub type Multiset = BTreeMap<AffinePerm, i64>;

/// A marked strong cover `source -> target` with `target * t_{i,j} = source`,
/// `i <= 0 < j`, and label `target(j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StrongEdge {
    pub source: AffinePerm,
    pub target: AffinePerm,
    pub label: i64,
    pub i: i64,
    pub j: i64,
}

impl StrongEdge {
    /// Re-checks the defining conditions from scratch.
    pub fn is_valid(&self) -> bool {
        let Ok(t) = AffinePerm::transposition(self.source.rank(), self.i, self.j) else {
            return false;
        };
        self.i <= 0
            && self.j > 0
            && self.source.length() == self.target.length() + 1
            && self.target.multiply(&t).ok().as_ref() == Some(&self.source)
            && self.target.apply(self.j) == self.label
            && self.source.apply(self.i) == self.label
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeJson {
    pub src: Vec<i64>,
    pub dst: Vec<i64>,
    pub label: i64,
}

impl From<&StrongEdge> for EdgeJson {
    fn from(e: &StrongEdge) -> Self {
        Self { src: e.source.window().to_vec(), dst: e.target.window().to_vec(), label: e.label }
    }
}

static EDGE_MEMO: LazyLock<Memo<AffinePerm, Vec<StrongEdge>>> = LazyLock::new(Memo::new);

/// All marked strong edges out of `x`, ordered by (target window, label).
pub fn strong_edges_from(x: &AffinePerm) -> Arc<Vec<StrongEdge>> {
    EDGE_MEMO.get_or_compute(x, || compute_strong_edges(x, shift_bound(x)))
}

/// Reflections `t_{a,a+d}` with `d` beyond this bound are longer than
/// `2 l(x) - 1` and cannot give a cover.
fn shift_bound(x: &AffinePerm) -> i64 {
    let n = x.rank().period() as i64;
    n * (2 * x.length() as i64 + 2)
}

pub(crate) fn compute_strong_edges(x: &AffinePerm, max_gap: i64) -> Vec<StrongEdge> {
    let len = x.length();
    if len == 0 {
        return Vec::new();
    }
    let rank = x.rank();
    let n = rank.period() as i64;
    let mut edges = Vec::new();
    for a in 1..=n {
        for d in (1..=max_gap).filter(|d| d % n != 0) {
            let b = a + d;
            let t = AffinePerm::transposition(rank, a, b).expect("a and b are not congruent");
            let y = x.mul_unchecked(&t);
            if y.length() + 1 != len {
                continue;
            }
            // shifts m with a + mn <= 0 < b + mn
            let lo = (1 - b).div_euclid(n) + i64::from((1 - b).rem_euclid(n) != 0);
            let hi = (-a).div_euclid(n);
            for m in lo..=hi {
                let (i, j) = (a + m * n, b + m * n);
                edges.push(StrongEdge { source: x.clone(), target: y.clone(), label: y.apply(j), i, j });
            }
        }
    }
    edges.sort_by(|e, f| (&e.target, e.label).cmp(&(&f.target, f.label)));
    edges
}

/// Ascent composition of a label sequence: ascents are positions `a` with
/// `labels[a] < labels[a + 1]`.
pub fn ascent_composition(labels: &[i64]) -> Result<Composition> {
    if labels.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut parts = Vec::new();
    let mut run = 1;
    for w in labels.windows(2) {
        if w[0] < w[1] {
            parts.push(run);
            run = 1;
        } else {
            run += 1;
        }
    }
    parts.push(run);
    Composition::new(parts)
}

/// All `w_D w` with `|D| = j` and `l(w_D w) = l(w) + j`.
pub fn weak_strip_targets(w: &AffinePerm, j: usize) -> Vec<AffinePerm> {
    let len = w.length();
    let mut out: Vec<AffinePerm> = ResidueSet::all_of_size(w.rank(), j)
        .iter()
        .map(|d| cyclically_decreasing(d).mul_unchecked(w))
        .filter(|v| v.length() == len + j)
        .collect();
    out.sort();
    out
}

fn bump(map: &mut Multiset, w: AffinePerm, c: i64) {
    let e = map.entry(w).or_insert(0);
    *e = checked_coeff_add(*e, c);
}

/// Endpoints of strong strips of size `i` from `w`: paths with strictly
/// decreasing labels.
pub fn strong_strip_targets(w: &AffinePerm, i: usize) -> Multiset {
    // (vertex, last label) -> number of paths
    let mut states: HashMap<(AffinePerm, i64), i64> = HashMap::from([((w.clone(), i64::MAX), 1)]);
    for _ in 0..i {
        let mut next: HashMap<(AffinePerm, i64), i64> = HashMap::new();
        for ((v, last), count) in states {
            for e in strong_edges_from(&v).iter().filter(|e| e.label < last) {
                let c = next.entry((e.target.clone(), e.label)).or_insert(0);
                *c = checked_coeff_add(*c, count);
            }
        }
        states = next;
    }
    let mut out = Multiset::new();
    for ((v, _), c) in states {
        bump(&mut out, v, c);
    }
    out
}

/// Endpoints of all paths from `w` of length `|J|` whose label sequence has
/// ascent composition exactly `J`.
pub fn paths_with_ascomp(w: &AffinePerm, composition: &Composition) -> Multiset {
    let parts = composition.parts();
    if parts.is_empty() {
        return Multiset::from([(w.clone(), 1)]);
    }
    // (vertex, last label, current part, labels used in the current part)
    type State = (AffinePerm, i64, usize, usize);
    let mut states: HashMap<State, i64> = HashMap::from([((w.clone(), i64::MAX, 0, 0), 1)]);
    for _ in 0..composition.size() {
        let mut next: HashMap<State, i64> = HashMap::new();
        for ((v, last, part, used), count) in states {
            for e in strong_edges_from(&v).iter() {
                let state = if used == 0 {
                    (part, 1)
                } else if e.label > last {
                    // ascent: the current part must be complete
                    if used != parts[part] || part + 1 == parts.len() {
                        continue;
                    }
                    (part + 1, 1)
                } else {
                    if used == parts[part] {
                        continue;
                    }
                    (part, used + 1)
                };
                let c = next.entry((e.target.clone(), e.label, state.0, state.1)).or_insert(0);
                *c = checked_coeff_add(*c, count);
            }
        }
        states = next;
    }
    let mut out = Multiset::new();
    for ((v, _, part, used), c) in states {
        debug_assert!(part + 1 == parts.len() && used == parts[part]);
        bump(&mut out, v, c);
    }
    out
}

/// Path counts from one vertex, by endpoint and ascent composition.
pub type Profile = BTreeMap<AffinePerm, BTreeMap<Composition, i64>>;

/// For every endpoint `v` below `w`, the number of paths `w -> .. -> v` with
/// each ascent composition. The empty path contributes `(w, [])`.
pub fn ascent_profile(w: &AffinePerm) -> Arc<Profile> {
    static PROFILE_MEMO: LazyLock<Memo<AffinePerm, Profile>> = LazyLock::new(Memo::new);
    PROFILE_MEMO.get_or_compute(w, || {
        let mut out: BTreeMap<AffinePerm, BTreeMap<Composition, i64>> = BTreeMap::new();
        out.entry(w.clone()).or_default().insert(Composition::empty(), 1);
        // (vertex, last label, composition so far)
        let mut states: HashMap<(AffinePerm, i64, Vec<usize>), i64> = HashMap::from([((w.clone(), 0, Vec::new()), 1)]);
        while !states.is_empty() {
            let mut next: HashMap<(AffinePerm, i64, Vec<usize>), i64> = HashMap::new();
            for ((v, last, comp), count) in states {
                for e in strong_edges_from(&v).iter() {
                    let mut comp = comp.clone();
                    if comp.is_empty() || e.label > last {
                        comp.push(1);
                    } else {
                        *comp.last_mut().unwrap() += 1;
                    }
                    let c = next.entry((e.target.clone(), e.label, comp)).or_insert(0);
                    *c = checked_coeff_add(*c, count);
                }
            }
            for ((v, _, comp), &c) in &next {
                let slot = out
                    .entry(v.clone())
                    .or_default()
                    .entry(Composition::new(comp.clone()).expect("positive parts"))
                    .or_insert(0);
                *slot = checked_coeff_add(*slot, c);
            }
            states = next;
        }
        out
    })
}

/// Scales every multiplicity by `c`.
pub fn scale_multiset(m: &Multiset, c: i64) -> Multiset {
    m.iter().map(|(w, &a)| (w.clone(), checked_coeff_mul(a, c))).collect()
}

/// A finite piece of G↓.
#[derive(Clone, Debug)]
pub struct StrongGraph {
    pub rank: Rank,
    pub vertices: BTreeSet<AffinePerm>,
    pub edges: Vec<StrongEdge>,
}

impl StrongGraph {
    /// All elements of length at most `max_len` with their out-edges.
    pub fn up_to_length(rank: Rank, max_len: usize) -> Result<Self> {
        let vertices: BTreeSet<_> = elements_up_to(rank, max_len)?.into_iter().flatten().collect();
        Ok(Self::on_vertices(rank, vertices))
    }

    /// Everything reachable from `tops` along strong edges.
    pub fn below(rank: Rank, tops: &[AffinePerm]) -> Self {
        let mut vertices = BTreeSet::new();
        let mut stack: Vec<AffinePerm> = tops.to_vec();
        while let Some(v) = stack.pop() {
            if vertices.insert(v.clone()) {
                stack.extend(strong_edges_from(&v).iter().map(|e| e.target.clone()));
            }
        }
        Self::on_vertices(rank, vertices)
    }

    fn on_vertices(rank: Rank, vertices: BTreeSet<AffinePerm>) -> Self {
        let edges = vertices.iter().flat_map(|v| strong_edges_from(v).iter().cloned().collect::<Vec<_>>()).collect();
        Self { rank, vertices, edges }
    }

    pub fn edge_list(&self) -> Vec<EdgeJson> {
        let mut out: Vec<EdgeJson> = self.edges.iter().map(EdgeJson::from).collect();
        out.sort();
        out
    }

    pub fn to_dot(&self) -> String {
        let edges = self.edges.iter().map(|e| (&e.source, &e.target, e.label.to_string()));
        render_dot("strong", &self.vertices, edges)
    }
}

/// A finite piece of G↑ (left weak order, edges `v -> s_i v` labelled `i`).
#[derive(Clone, Debug)]
pub struct WeakGraph {
    pub rank: Rank,
    pub vertices: BTreeSet<AffinePerm>,
    pub edges: Vec<(AffinePerm, AffinePerm, usize)>,
}

impl WeakGraph {
    pub fn up_to_length(rank: Rank, max_len: usize) -> Result<Self> {
        let vertices: BTreeSet<_> = elements_up_to(rank, max_len)?.into_iter().flatten().collect();
        Ok(Self::induced(rank, vertices))
    }

    /// The subgraph induced on `vertices`.
    pub fn induced(rank: Rank, vertices: BTreeSet<AffinePerm>) -> Self {
        let mut edges = Vec::new();
        for v in &vertices {
            for i in rank.residues() {
                if !v.has_left_descent(i) {
                    let w = v.left_mul_simple(i);
                    if vertices.contains(&w) {
                        edges.push((v.clone(), w, i));
                    }
                }
            }
        }
        Self { rank, vertices, edges }
    }

    pub fn to_dot(&self) -> String {
        let edges = self.edges.iter().map(|(v, w, i)| (v, w, i.to_string()));
        render_dot("weak", &self.vertices, edges)
    }
}

fn node_name(w: &AffinePerm) -> String {
    let word = w.reduced_word();
    if word.is_empty() {
        "1".into()
    } else {
        word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join("")
    }
}

fn render_dot<'a>(
    name: &str,
    vertices: &BTreeSet<AffinePerm>,
    edges: impl Iterator<Item = (&'a AffinePerm, &'a AffinePerm, String)>,
) -> String {
    let mut out = format!("digraph {name} {{\n  rankdir=BT;\n");
    let mut sorted: Vec<_> = vertices.iter().collect();
    sorted.sort_by_cached_key(|w| (w.length(), (*w).clone()));
    for w in sorted {
        let _ = writeln!(out, "  \"{}\" [label=\"{}\"];", node_name(w), node_name(w));
    }
    let mut lines: Vec<String> = edges
        .map(|(v, w, label)| format!("  \"{}\" -> \"{}\" [label=\"{label}\"];", node_name(v), node_name(w)))
        .collect();
    lines.sort();
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rk(k: usize) -> Rank {
        Rank::new(k).unwrap()
    }

    fn perm(k: usize, word: &[usize]) -> AffinePerm {
        AffinePerm::from_word(rk(k), word).unwrap()
    }

    fn ms(k: usize, entries: &[(&[usize], i64)]) -> Multiset {
        entries.iter().map(|(w, c)| (perm(k, w), *c)).collect()
    }

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn marking_example() {
        let x = perm(2, &[0, 1, 2, 0]);
        let y = perm(2, &[1, 2, 0]);
        let mut labels: Vec<_> =
            strong_edges_from(&x).iter().filter(|e| e.target == y).map(|e| (e.label, e.i, e.j)).collect();
        labels.sort();
        assert_eq!(labels, vec![(-2, -4, 1), (1, -1, 4)]);
    }

    #[test]
    fn edges_out_of_s0() {
        let edges = strong_edges_from(&perm(2, &[0]));
        assert_eq!(edges.len(), 1);
        assert!(edges[0].target.is_identity());
        assert_eq!(edges[0].label, 1);
    }

    #[test]
    fn edges_out_of_top_element() {
        let got: Vec<_> =
            strong_edges_from(&perm(2, &[0, 1, 2, 0])).iter().map(|e| (e.target.clone(), e.label)).collect();
        let mut expected = vec![
            (perm(2, &[0, 2, 0]), -1),
            (perm(2, &[0, 2, 0]), 2),
            (perm(2, &[0, 1, 2]), 2),
            (perm(2, &[1, 2, 0]), -2),
            (perm(2, &[1, 2, 0]), 1),
            (perm(2, &[0, 1, 0]), 1),
        ];
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn edges_are_valid_and_bound_is_sufficient() {
        for k in 2..=3 {
            for level in elements_up_to(rk(k), 6).unwrap() {
                for x in level {
                    let edges = strong_edges_from(&x);
                    assert!(edges.iter().all(StrongEdge::is_valid));
                    let wide = compute_strong_edges(&x, 2 * shift_bound(&x));
                    assert_eq!(*edges, wide);
                }
            }
        }
    }

    #[test]
    fn ascent_compositions() {
        assert_eq!(ascent_composition(&[3, 2, 0, 3, 4, 1]).unwrap(), comp(&[3, 1, 2]));
        assert_eq!(ascent_composition(&[5, 4, 3]).unwrap(), comp(&[3]));
        assert_eq!(ascent_composition(&[1, 2, 3, 4]).unwrap(), comp(&[1, 1, 1, 1]));
        assert!(ascent_composition(&[]).is_err());
    }

    #[test]
    fn weak_strips() {
        let s0 = perm(2, &[0]);
        let mut expected = vec![perm(2, &[2, 0]), perm(2, &[1, 0])];
        expected.sort();
        assert_eq!(weak_strip_targets(&s0, 1), expected);
        assert_eq!(weak_strip_targets(&s0, 0), vec![s0.clone()]);
        let mut expected = vec![perm(2, &[0, 2, 0]), perm(2, &[2, 1, 0])];
        expected.sort();
        assert_eq!(weak_strip_targets(&s0, 2), expected);
    }

    #[test]
    fn strong_strips() {
        let x = perm(2, &[0, 1, 2, 0]);
        assert_eq!(
            strong_strip_targets(&x, 1),
            ms(2, &[(&[0, 2, 0], 2), (&[0, 1, 2], 1), (&[1, 2, 0], 2), (&[0, 1, 0], 1)])
        );
        assert_eq!(strong_strip_targets(&x, 2), ms(2, &[(&[0, 2], 1), (&[1, 2], 1), (&[2, 0], 1), (&[1, 0], 1)]));
        assert_eq!(strong_strip_targets(&x, 0), ms(2, &[(&[0, 1, 2, 0], 1)]));
        assert!(strong_strip_targets(&perm(2, &[1]), 1).is_empty());
    }

    #[test]
    fn paths_by_ascent_composition() {
        let x = perm(2, &[1, 2, 1, 0]);
        assert_eq!(paths_with_ascomp(&x, &comp(&[3])), ms(2, &[(&[2], 1), (&[0], 1)]));
        assert_eq!(paths_with_ascomp(&x, &comp(&[2, 1])), ms(2, &[(&[2], 1), (&[0], 2), (&[1], 1)]));
        assert_eq!(paths_with_ascomp(&x, &comp(&[1, 2])), ms(2, &[(&[2], 1), (&[0], 2), (&[1], 1)]));
        assert_eq!(paths_with_ascomp(&x, &comp(&[1, 1, 1])), ms(2, &[(&[0], 1), (&[1], 1)]));
    }

    #[test]
    fn profile_agrees_with_path_queries() {
        for k in 2..=3 {
            for level in elements_up_to(rk(k), 5).unwrap() {
                for x in level {
                    let profile = ascent_profile(&x);
                    for m in 1..=x.length() {
                        for j in crate::partition::compositions(m) {
                            let direct = paths_with_ascomp(&x, &j);
                            let from_profile: Multiset = profile
                                .iter()
                                .filter_map(|(v, comps)| comps.get(&j).map(|&c| (v.clone(), c)))
                                .collect();
                            assert_eq!(direct, from_profile, "{x} {j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dot_output() {
        let g = StrongGraph::below(rk(2), &[perm(2, &[0])]);
        let dot = g.to_dot();
        assert!(dot.contains("\"s0\" -> \"1\" [label=\"1\"];"));
        let w = WeakGraph::up_to_length(rk(2), 1).unwrap();
        assert_eq!(w.edges.len(), 3);
        assert!(w.to_dot().contains("\"1\" -> \"s0\" [label=\"0\"];"));
    }
}
