mod common;

use std::collections::{BTreeSet, HashSet};

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use okada::cellular::{act, cell_action, gram_matrix, gram_matrix_with, CellDatum, CellVector};
use okada::dominance::{dominance_leq, dominance_lt, dominance_meet};
use okada::fibonacci::{chain_count, enumerate_yfs};
use okada::half::{enumerate_diagrams, enumerate_half};
use okada::monoid::{r_class, r_class_rep, GreenClasses, MonoidElement};
use okada::{
    diagram_to_perm, evaluate_word, free_element, free_involution, ideal_basis, multiply_words,
    perm_to_diagram, AlgebraElement, ArcDiagram, Permutation, Polynomial, Word,
};

#[test]
fn involutive_elements_are_idempotent() {
    for n in 0..=6 {
        let mut involutive = 0;
        for d in enumerate_diagrams(n) {
            let e = MonoidElement(d);
            if e.is_involutive() {
                assert!(e.is_idempotent(), "{}", e.0);
                involutive += 1;
            }
        }
        let involutions = Permutation::all(n).iter().filter(|p| p.is_involution()).count();
        assert_eq!(involutive, involutions, "rank {n}");
    }
}

#[test]
fn products_only_lower_the_propagating_label() {
    for n in 0..=5 {
        let ds = enumerate_diagrams(n);
        for e in &ds {
            let pe = e.prop_lab();
            for f in &ds {
                let ef = e.monoid_product(f).unwrap();
                let p = ef.prop_lab();
                let meet = dominance_meet(&pe, &f.prop_lab()).unwrap();
                assert!(dominance_leq(&p, &meet).unwrap(), "{e} · {f}");
                assert!(ef.bra() == e.bra() || dominance_lt(&p, &pe).unwrap(), "{e} · {f}");
                assert!(ef.ket() == f.ket() || dominance_lt(&p, &f.prop_lab()).unwrap(), "{e} · {f}");
            }
        }
    }
}

#[test]
fn left_classes_mirror_right_classes() {
    for n in 1..=5 {
        let g = GreenClasses::new(n).unwrap();
        for d in g.elements() {
            let mirrored: BTreeSet<ArcDiagram> = g.r_classes()[g.r_class_of(&d.mirror()).unwrap()]
                .iter()
                .map(|e| e.mirror())
                .collect();
            let l: BTreeSet<ArcDiagram> = g.l_classes()[g.l_class_of(d).unwrap()].iter().cloned().collect();
            assert_eq!(l, mirrored, "{d}");
        }
    }
}

#[test]
fn orbit_closure_agrees_with_strongly_connected_components() {
    for n in 1..=5 {
        let g = GreenClasses::new(n).unwrap();
        for d in g.elements() {
            let e = MonoidElement(d.clone());
            let from_orbit: BTreeSet<ArcDiagram> = r_class(&e).unwrap().into_iter().map(|m| m.0).collect();
            let from_graph: BTreeSet<ArcDiagram> =
                g.r_classes()[g.r_class_of(d).unwrap()].iter().cloned().collect();
            assert_eq!(from_orbit, from_graph, "{d}");
            let rep = r_class_rep(&e).unwrap();
            assert!(rep.is_involutive() && from_graph.contains(&rep.0));
        }
    }
}

#[test]
fn ideals_are_down_sets_of_dominance() {
    for n in 0..=5 {
        let diagrams: Vec<(Permutation, ArcDiagram)> = Permutation::all(n)
            .into_iter()
            .map(|p| {
                let d = perm_to_diagram(&p).unwrap();
                (p, d)
            })
            .collect();
        let sets = enumerate_yfs(n);
        let ideals: Vec<BTreeSet<Permutation>> =
            sets.iter().map(|s| ideal_basis(s).unwrap().into_iter().collect()).collect();
        for (s, ideal) in sets.iter().zip(&ideals) {
            let support: BTreeSet<Permutation> = diagrams
                .iter()
                .filter(|(_, d)| dominance_leq(&d.prop_lab(), s).unwrap())
                .map(|(p, _)| p.clone())
                .collect();
            assert_eq!(*ideal, support, "{s}");
        }
        for (s, is) in sets.iter().zip(&ideals) {
            for (t, it) in sets.iter().zip(&ideals) {
                assert_eq!(is.is_subset(it), dominance_leq(s, t).unwrap(), "{s} / {t}");
            }
        }
        assert_eq!(ideal_basis(&okada::FibonacciSet::full(n)).unwrap().len(), factorial(n));
    }
}

#[test]
fn free_elements_have_their_label() {
    for n in 0..=10 {
        for s in enumerate_yfs(n) {
            let sigma = free_involution(&s);
            assert!(sigma.is_involution());
            assert_eq!(perm_to_diagram(&sigma).unwrap().prop_lab(), s);
            assert_eq!(free_element(&s), AlgebraElement::basis(&sigma));
        }
    }
    let e = free_involution(&set(4, &[]));
    assert_eq!(e, Permutation::from_word(&[1, 3], 4).unwrap());
}

fn random_element<R: Rng>(rng: &mut R, n: usize, terms: usize) -> AlgebraElement {
    let mut a = AlgebraElement::zero(n);
    for _ in 0..terms {
        let mut p: Vec<usize> = (1..=n).collect();
        p.shuffle(rng);
        a.add_term(Permutation::new(p).unwrap(), Polynomial::constant(rng.gen_range(-3..=3)));
    }
    a
}

#[test]
fn cell_modules_are_modules() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for n in 1..=5 {
        let datum = CellDatum::new(n).unwrap();
        for s in enumerate_yfs(n) {
            let cell = datum.cell(&s).unwrap();
            assert_eq!(cell.len() as u64, chain_count(&s));
            for h in cell {
                let id = cell_action(&ArcDiagram::identity(n), h, &s).unwrap();
                assert_eq!(id, CellVector::from([(h.clone(), Polynomial::one())]));
            }
            for _ in 0..20 {
                let a = random_element(&mut rng, n, 2);
                let b = random_element(&mut rng, n, 2);
                let h = &cell[rng.gen_range(0..cell.len())];
                let v = CellVector::from([(h.clone(), Polynomial::one())]);
                let ab = a.multiply(&b).unwrap();
                assert_eq!(act(&ab, &v, &s).unwrap(), act(&a, &act(&b, &v, &s).unwrap(), &s).unwrap(), "{s}");
            }
        }
    }
    for n in 0..=6 {
        for s in enumerate_yfs(n) {
            assert_eq!(enumerate_half(n, Some(&s)).unwrap().len() as u64, chain_count(&s));
        }
    }
}

#[test]
fn cell_action_rejects_foreign_halves() {
    let h = enumerate_half(3, Some(&set(3, &[1]))).unwrap();
    assert!(cell_action(&ArcDiagram::identity(3), &h[0], &set(3, &[3])).is_err());
}

#[test]
fn bilinear_form_is_independent_of_outer_halves() {
    for n in 0..=5 {
        for s in enumerate_yfs(n) {
            let reference = gram_matrix(&s).unwrap();
            let basis = &reference.basis;
            for l in basis {
                for r in basis {
                    let g = gram_matrix_with(&s, basis, l, r).unwrap();
                    assert_eq!(g.entries, reference.entries, "{s} with outer {l} / {r}");
                }
            }
        }
    }
    let top = gram_matrix(&okada::FibonacciSet::full(4)).unwrap();
    assert_eq!(top.entries, vec![vec![Polynomial::one()]]);
}

#[test]
fn compositions_stay_valid() {
    for n in 0..=5 {
        let ds = enumerate_diagrams(n);
        for c in &ds {
            for d in &ds {
                let (p, _) = c.compose(d).unwrap();
                assert!(p.is_valid(), "{c} ∘ {d}");
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let random = |rng: &mut ChaCha8Rng| {
        let mut p: Vec<usize> = (1..=8).collect();
        p.shuffle(rng);
        perm_to_diagram(&Permutation::new(p).unwrap()).unwrap()
    };
    for _ in 0..10_000 {
        let (c, d) = (random(&mut rng), random(&mut rng));
        let (p, _) = c.compose(&d).unwrap();
        assert!(p.is_valid(), "{c} ∘ {d}");
    }
}

#[test]
fn mirror_reverses_products() {
    for n in 0..=4 {
        let ds = enumerate_diagrams(n);
        for c in &ds {
            for d in &ds {
                let (m, cd) = c.product_y1(d).unwrap();
                let (m2, dc) = d.mirror().product_y1(&c.mirror()).unwrap();
                assert_eq!((m, cd.mirror()), (m2, dc));
            }
        }
    }
}

#[test]
fn distinct_diagrams_give_distinct_permutations() {
    for n in 0..=6 {
        let perms: HashSet<Permutation> =
            enumerate_diagrams(n).iter().map(|d| diagram_to_perm(d).unwrap()).collect();
        assert_eq!(perms.len(), factorial(n));
    }
}

fn word_strategy(max_n: usize, max_len: usize) -> impl Strategy<Value = Word> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(1..n, 0..=max_len).prop_map(move |l| Word::new(n, l).unwrap())
    })
}

fn word_pair(max_n: usize, max_len: usize) -> impl Strategy<Value = (Word, Word, Word)> {
    (2..=max_n).prop_flat_map(move |n| {
        let w = move || prop::collection::vec(1..n, 0..=max_len).prop_map(move |l| Word::new(n, l).unwrap());
        (w(), w(), w())
    })
}

fn reversed(w: &Word) -> Word {
    let mut l = w.letters();
    l.reverse();
    Word::new(w.rank(), l).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn word_products_are_associative((a, b, c) in word_pair(8, 12)) {
        let ea = AlgebraElement::from_word(&a).unwrap();
        let eb = AlgebraElement::from_word(&b).unwrap();
        let ec = AlgebraElement::from_word(&c).unwrap();
        prop_assert_eq!(
            ea.multiply(&eb).unwrap().multiply(&ec).unwrap(),
            ea.multiply(&eb.multiply(&ec).unwrap()).unwrap()
        );
    }

    #[test]
    fn reversal_is_an_anti_automorphism((a, b, _c) in word_pair(8, 12)) {
        let ab = multiply_words(&a, &b).unwrap();
        let ba = multiply_words(&reversed(&b), &reversed(&a)).unwrap();
        prop_assert_eq!(ab.coefficient, ba.coefficient);
        prop_assert_eq!(
            perm_to_diagram(&ab.permutation).unwrap().mirror(),
            perm_to_diagram(&ba.permutation).unwrap()
        );
    }

    #[test]
    fn evaluation_is_a_monoid_morphism((a, b, _c) in word_pair(8, 12)) {
        let (_, da) = evaluate_word(&a).unwrap();
        let (_, db) = evaluate_word(&b).unwrap();
        let (_, dab) = evaluate_word(&a.concat(&b).unwrap()).unwrap();
        prop_assert_eq!(da.monoid_product(&db).unwrap(), dab);
    }

    #[test]
    fn diagrams_split_and_glue(w in word_strategy(10, 30)) {
        let (_, d) = evaluate_word(&w).unwrap();
        prop_assert!(d.is_valid());
        prop_assert_eq!(okada::glue(&d.bra(), &d.ket()).unwrap(), d.clone());
        prop_assert_eq!(d.bra().prop_lab(), d.ket().prop_lab());
        prop_assert_eq!(perm_to_diagram(&diagram_to_perm(&d).unwrap()).unwrap(), d);
    }

    #[test]
    fn aperiodicity_index_is_attained(w in word_strategy(8, 20)) {
        let (_, d) = evaluate_word(&w).unwrap();
        let e = MonoidElement(d);
        let k = e.aperiodicity_index().unwrap();
        prop_assert_eq!(e.power(k), e.power(k + 1));
        if k > 1 {
            prop_assert_ne!(e.power(k - 1), e.power(k));
        }
    }
}

#[test]
fn forms_stay_nondegenerate_at_y_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for n in 0..=6 {
        for s in enumerate_yfs(n) {
            let xs: Vec<i64> = (0..n).map(|_| rng.gen_range(2..1000)).collect();
            let det = gram_matrix(&s).unwrap().y_one().determinant_at(okada::cellular::assignment(&xs, &[]));
            assert!(det != num_rational::BigRational::from_integer(0.into()), "{s}");
        }
    }
}
