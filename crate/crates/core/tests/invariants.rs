use nilcox_core::affine_perm::{elements_up_to, AffinePerm, Rank};
use nilcox_core::nilcoxeter::{basis_product, NilCoxElem};
use nilcox_core::strip_graphs::{strong_edges_from, strong_strip_targets};
use proptest::prelude::*;

fn arb_perm() -> impl Strategy<Value = AffinePerm> {
    (2usize..=4).prop_flat_map(|k| {
        proptest::collection::vec(0..=k, 0..12)
            .prop_map(move |word| AffinePerm::from_word(Rank::new(k).unwrap(), &word).unwrap())
    })
}

fn arb_pair() -> impl Strategy<Value = (AffinePerm, AffinePerm, AffinePerm)> {
    (2usize..=4).prop_flat_map(|k| {
        let w = || proptest::collection::vec(0..=k, 0..8);
        (w(), w(), w()).prop_map(move |(a, b, c)| {
            let r = Rank::new(k).unwrap();
            (
                AffinePerm::from_word(r, &a).unwrap(),
                AffinePerm::from_word(r, &b).unwrap(),
                AffinePerm::from_word(r, &c).unwrap(),
            )
        })
    })
}

fn check_window(w: &AffinePerm) -> Result<(), TestCaseError> {
    let n = w.rank().period() as i64;
    let mut residues: Vec<i64> = w.window().iter().map(|x| x.rem_euclid(n)).collect();
    residues.sort();
    prop_assert_eq!(residues, (0..n).collect::<Vec<_>>());
    prop_assert_eq!(w.window().iter().sum::<i64>(), n * (n + 1) / 2);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn window_and_periodicity(w in arb_perm()) {
        check_window(&w)?;
        let n = w.rank().period() as i64;
        for x in -50..=50 {
            prop_assert_eq!(w.apply(x + n), w.apply(x) + n);
            prop_assert_eq!(w.apply_inverse(w.apply(x)), x);
        }
    }

    #[test]
    fn lengths(w in arb_perm()) {
        prop_assert_eq!(w.reduced_word().len(), w.length());
        prop_assert_eq!(AffinePerm::from_reduced_word(w.rank(), &w.reduced_word()).unwrap(), w.clone());
        prop_assert_eq!(w.inverse().length(), w.length());
    }

    #[test]
    fn grassmannian_factorization(w in arb_perm()) {
        let (grass, finite) = w.grassmannian_factorize();
        prop_assert!(grass.is_grassmannian());
        prop_assert!(finite.is_finite());
        prop_assert_eq!(grass.length() + finite.length(), w.length());
        prop_assert_eq!(grass.multiply(&finite).unwrap(), w);
    }

    #[test]
    fn products((a, b, c) in arb_pair()) {
        let ab = a.multiply(&b).unwrap();
        check_window(&ab)?;
        prop_assert!(ab.length() <= a.length() + b.length());
        prop_assert_eq!(basis_product(&a, &b).is_some(), ab.length() == a.length() + b.length());
        prop_assert_eq!(ab.multiply(&c).unwrap(), a.multiply(&b.multiply(&c).unwrap()).unwrap());
        let (ua, ub, uc) = (NilCoxElem::basis(a.clone()), NilCoxElem::basis(b.clone()), NilCoxElem::basis(c));
        let prod = &ua * &ub;
        prop_assert!(prod.len() <= 1);
        for (w, coeff) in prod.terms() {
            prop_assert_eq!(coeff, 1);
            prop_assert_eq!(w.length(), a.length() + b.length());
        }
        prop_assert_eq!(&prod * &uc, &ua * &(&ub * &uc));
    }
}

#[test]
fn generator_relations() {
    for k in 2..=4 {
        let r = Rank::new(k).unwrap();
        let u = |i: usize| NilCoxElem::basis(AffinePerm::simple(r, i).unwrap());
        let n = k + 1;
        for i in 0..=k {
            assert!((&u(i) * &u(i)).is_zero());
            for j in 0..=k {
                let adjacent = (i + 1) % n == j || (j + 1) % n == i;
                if i == j {
                    continue;
                }
                if adjacent {
                    assert_eq!(&(&u(i) * &u(j)) * &u(i), &(&u(j) * &u(i)) * &u(j), "k={k} {i} {j}");
                } else {
                    assert_eq!(&u(i) * &u(j), &u(j) * &u(i), "k={k} {i} {j}");
                }
            }
        }
    }
}

#[test]
fn strong_edges_are_covers() {
    for k in [2, 3] {
        for level in elements_up_to(Rank::new(k).unwrap(), 6).unwrap() {
            for x in level {
                for e in strong_edges_from(&x).iter() {
                    assert!(e.is_valid(), "{x}: {e:?}");
                    assert_eq!(e.target.length() + 1, x.length());
                    assert_eq!(e.target.multiply(&AffinePerm::transposition(x.rank(), e.i, e.j).unwrap()).unwrap(), x);
                    assert!(e.i <= 0 && e.j > 0);
                    assert_eq!(e.label, e.target.apply(e.j));
                }
            }
        }
    }
}

#[test]
fn strips_into_grassmannian_start_grassmannian() {
    for k in [2, 3] {
        for level in elements_up_to(Rank::new(k).unwrap(), 6).unwrap() {
            for w in level.iter().filter(|w| !w.is_grassmannian()) {
                for i in 1..=w.length() {
                    for v in strong_strip_targets(w, i).keys() {
                        assert!(!v.is_grassmannian(), "{w} -> {v}");
                    }
                }
            }
        }
    }
}
