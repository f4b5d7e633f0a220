//! Published worked examples and graph drawings, stored as JSON under
//! `golden/`, and the checks that reproduce them.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::affine_perm::{AffinePerm, Rank};
use crate::error::{Error, Result};
use crate::fomin_stanley::h;
use crate::nilcoxeter::{render_word, NilCoxElem};
use crate::pieri_ops::{down, OpSpec};
use crate::strip_graphs::{ascent_composition, strong_edges_from, weak_strip_targets, StrongGraph};

pub const OPERATORS_JSON: &str = include_str!("../golden/operators.json");
pub const WEAK_GRAPH_JSON: &str = include_str!("../golden/weak_graph.json");
pub const STRONG_GRAPH_JSON: &str = include_str!("../golden/strong_graph.json");

#[derive(Deserialize)]
struct Operators {
    k: usize,
    examples: Vec<OperatorExample>,
    ascent_composition: AscentExample,
    marking: MarkingExample,
    d_of_h_ranks: Vec<usize>,
}

#[derive(Deserialize)]
struct OperatorExample {
    op: String,
    elem: Vec<usize>,
    result: Vec<Term>,
}

#[derive(Deserialize)]
struct Term {
    word: Vec<usize>,
    coeff: i64,
}

#[derive(Deserialize)]
struct AscentExample {
    labels: Vec<i64>,
    composition: Vec<usize>,
}

#[derive(Deserialize)]
struct MarkingExample {
    x: Vec<usize>,
    y: Vec<usize>,
    edges: Vec<MarkedEdge>,
}

#[derive(Deserialize, PartialEq, Eq, PartialOrd, Ord)]
struct MarkedEdge {
    i: i64,
    j: i64,
    label: i64,
}

#[derive(Deserialize)]
struct DrawnGraph {
    k: usize,
    #[serde(default)]
    tops: Vec<Vec<usize>>,
    edges: Vec<DrawnEdge>,
}

#[derive(Deserialize, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct DrawnEdge {
    src: Vec<usize>,
    dst: Vec<usize>,
    #[serde(default)]
    label: i64,
}

/// Outcome of one golden comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GoldenCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl GoldenCheck {
    fn new(name: String, expected: String, got: String) -> Self {
        let passed = expected == got;
        let detail = if passed { got } else { format!("expected {expected}, got {got}") };
        GoldenCheck { name, passed, detail }
    }
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn element(rank: Rank, terms: &[Term]) -> Result<NilCoxElem> {
    NilCoxElem::from_terms(
        rank,
        terms
            .iter()
            .map(|t| Ok((AffinePerm::from_reduced_word(rank, &t.word)?, t.coeff)))
            .collect::<Result<Vec<_>>>()?,
    )
}

fn word_name(w: &[usize]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        w.iter().map(|i| format!("s{i}")).collect()
    }
}

/// Runs every golden comparison.
pub fn reproduce() -> Result<Vec<GoldenCheck>> {
    let ops: Operators = parse(OPERATORS_JSON)?;
    let rank = Rank::new(ops.k)?;
    let mut out = Vec::new();

    for ex in &ops.examples {
        let op: OpSpec = ex.op.parse()?;
        let input = NilCoxElem::basis(AffinePerm::from_reduced_word(rank, &ex.elem)?);
        let expected = element(rank, &ex.result)?;
        out.push(GoldenCheck::new(
            format!("{}({})", ex.op, render_word(&AffinePerm::from_reduced_word(rank, &ex.elem)?)),
            expected.to_string(),
            op.apply(&input).to_string(),
        ));
    }

    let asc = &ops.ascent_composition;
    out.push(GoldenCheck::new(
        format!("ascent composition of {:?}", asc.labels),
        crate::partition::Composition::new(asc.composition.clone())?.to_string(),
        ascent_composition(&asc.labels)?.to_string(),
    ));

    let mk = &ops.marking;
    let x = AffinePerm::from_reduced_word(rank, &mk.x)?;
    let y = AffinePerm::from_reduced_word(rank, &mk.y)?;
    let mut got: Vec<String> = strong_edges_from(&x)
        .iter()
        .filter(|e| e.target == y)
        .map(|e| format!("t({},{}) label {}", e.i, e.j, e.label))
        .collect();
    got.sort();
    let mut expected: Vec<String> = mk.edges.iter().map(|e| format!("t({},{}) label {}", e.i, e.j, e.label)).collect();
    expected.sort();
    out.push(GoldenCheck::new(
        format!("marked edges {} -> {}", word_name(&mk.x), word_name(&mk.y)),
        expected.join(", "),
        got.join(", "),
    ));

    out.push(check_weak_graph()?);
    out.push(check_strong_graph()?);

    for &k in &ops.d_of_h_ranks {
        let r = Rank::new(k)?;
        let mut failures = Vec::new();
        for top in 0..=k {
            let ht = h(r, top)?;
            for i in 0..=top {
                if down(i, &ht) != h(r, top - i)? {
                    failures.push(format!("D_{i}(h_{top})"));
                }
            }
        }
        out.push(GoldenCheck::new(
            format!("D_i(h_r) = h_(r-i), k={k}"),
            "all hold".into(),
            if failures.is_empty() { "all hold".into() } else { failures.join(", ") },
        ));
    }
    Ok(out)
}

/// Every edge in the weak order drawing is a cover `v -> s_i v`.
fn check_weak_graph() -> Result<GoldenCheck> {
    let fig: DrawnGraph = parse(WEAK_GRAPH_JSON)?;
    let rank = Rank::new(fig.k)?;
    let mut bad = Vec::new();
    for e in &fig.edges {
        let v = AffinePerm::from_reduced_word(rank, &e.src)?;
        let w = AffinePerm::from_reduced_word(rank, &e.dst)?;
        if !weak_strip_targets(&v, 1).contains(&w) {
            bad.push(format!("{} -> {}", word_name(&e.src), word_name(&e.dst)));
        }
    }
    Ok(GoldenCheck::new(
        format!("weak order drawing ({} edges)", fig.edges.len()),
        "all edges are covers".into(),
        if bad.is_empty() { "all edges are covers".into() } else { bad.join(", ") },
    ))
}

/// The marked strong graph below the drawing's top elements has exactly the
/// drawn edge multiset.
fn check_strong_graph() -> Result<GoldenCheck> {
    let fig: DrawnGraph = parse(STRONG_GRAPH_JSON)?;
    let rank = Rank::new(fig.k)?;
    let tops = fig.tops.iter().map(|w| AffinePerm::from_reduced_word(rank, w)).collect::<Result<Vec<_>>>()?;
    let graph = StrongGraph::below(rank, &tops);
    let render = |edges: Vec<DrawnEdge>| {
        let mut edges = edges;
        edges.sort();
        edges
            .iter()
            .map(|e| format!("{}->{}:{}", word_name(&e.src), word_name(&e.dst), e.label))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let computed = graph
        .edges
        .iter()
        .map(|e| DrawnEdge { src: e.source.reduced_word(), dst: e.target.reduced_word(), label: e.label })
        .collect();
    // Drawn words may be any reduced word; canonicalize first.
    let canon = |edges: &[DrawnEdge]| -> Result<Vec<DrawnEdge>> {
        edges
            .iter()
            .map(|e| {
                Ok(DrawnEdge {
                    src: AffinePerm::from_reduced_word(rank, &e.src)?.reduced_word(),
                    dst: AffinePerm::from_reduced_word(rank, &e.dst)?.reduced_word(),
                    label: e.label,
                })
            })
            .collect()
    };
    let vertices: BTreeSet<_> = graph.vertices.iter().collect();
    Ok(GoldenCheck::new(
        format!("strong order drawing ({} edges, {} vertices)", fig.edges.len(), vertices.len()),
        render(canon(&fig.edges)?),
        render(computed),
    ))
}

/// `true` when every check passed.
pub fn all_passed(checks: &[GoldenCheck]) -> bool {
    checks.iter().all(|c| c.passed)
}
