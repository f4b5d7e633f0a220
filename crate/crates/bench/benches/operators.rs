//! Operator and graph caches are warm after the first iteration, so these
//! figures are steady-state costs.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use nilcox_core::affine_perm::elements_up_to;
use nilcox_core::pieri_ops::{down, down_comp, up, verify};
use nilcox_core::strip_graphs::{paths_with_ascomp, strong_strip_targets, StrongGraph};
use nilcox_core::symfunc::{m_product, strong_schur_below};
use nilcox_core::{AffinePerm, Composition, NilCoxElem, Partition, Rank};

fn top(k: usize, len: usize) -> AffinePerm {
    let levels = elements_up_to(Rank::new(k).unwrap(), len).unwrap();
    levels[len].last().unwrap().clone()
}

fn graphs(c: &mut Criterion) {
    let r = Rank::new(3).unwrap();
    c.bench_function("strong graph k=3 L=5", |b| b.iter(|| StrongGraph::up_to_length(r, black_box(5)).unwrap()));
    let w = top(3, 6);
    c.bench_function("strong strips size 3", |b| b.iter(|| strong_strip_targets(black_box(&w), 3)));
    let j = Composition::new(vec![1, 2, 1]).unwrap();
    c.bench_function("ascent composition paths [1,2,1]", |b| b.iter(|| paths_with_ascomp(black_box(&w), &j)));
}

fn operators(c: &mut Criterion) {
    let a = NilCoxElem::basis(top(3, 6));
    c.bench_function("U_2 on length-6 element", |b| b.iter(|| up(2, black_box(&a))));
    c.bench_function("D_2 on length-6 element", |b| b.iter(|| down(2, black_box(&a))));
    let j = Composition::new(vec![2, 1]).unwrap();
    c.bench_function("D[2,1] on length-6 element", |b| b.iter(|| down_comp(&j, black_box(&a))));
    c.bench_function("commutation sweep k=2 L=5", |b| b.iter(|| verify::verify_commutation(2, 5, 2, 2).unwrap()));
}

fn symmetric_functions(c: &mut Criterion) {
    let l = Partition::new(vec![3, 2, 1]).unwrap();
    let m = Partition::new(vec![2, 2]).unwrap();
    c.bench_function("m(3,2,1) * m(2,2)", |b| b.iter(|| m_product(black_box(&l), black_box(&m))));
    let u = top(2, 6);
    c.bench_function("strong Schur table k=2 length 6", |b| b.iter(|| strong_schur_below(black_box(&u)).unwrap()));
}

criterion_group!(benches, graphs, operators, symmetric_functions);
criterion_main!(benches);
