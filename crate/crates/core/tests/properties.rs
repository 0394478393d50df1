//! Randomized invariants: bead-set round trips, the two constructions of
//! the double-distinct partition, l-index periodicity, word actions and the
//! equation layer.

use std::collections::BTreeSet;

use affine_cores::abacus::{
    associate_two_sided, completion_case, double_distinct, weight_shape, Abacus, BeadSet,
    Partition, WeightShape,
};
use affine_cores::action::{apply_sigma, apply_word, beta_of, WeylWord};
use affine_cores::cartan::{AffineContext, Family};
use affine_cores::dioph::{
    apply_f, equation_for, equiv_class, rep_count, signed_permutations, RepMethod,
};
use affine_cores::exactnum::{Quad2, Rational};
use affine_cores::uglov::{abacus_from_uglov, is_core, uglov_vector};
use affine_cores::weyl::{atomic_length, height_via_realization};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

/// A family with a rank in its supported range up to 4.
fn context() -> impl Strategy<Value = AffineContext> {
    family().prop_flat_map(|f| {
        (f.minimum_rank()..=4).prop_map(move |l| AffineContext::of(f, l).unwrap())
    })
}

fn context_and_charge() -> impl Strategy<Value = (AffineContext, usize)> {
    context().prop_flat_map(|c| {
        let l = c.rank();
        (Just(c), 0..=l)
    })
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0i64..12, 0..10).prop_map(|mut parts| {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn bead_sets_round_trip(p in partition(), charge in -6i64..6) {
        let beads = BeadSet::from_partition(&p, charge);
        prop_assert_eq!(beads.charge(), Some(charge));
        prop_assert_eq!(beads.to_partition().unwrap(), (p.clone(), charge));
        prop_assert_eq!(p.conjugate().conjugate(), p.clone());
        prop_assert_eq!(Partition::from_cells(&p.cells()).unwrap(), p);
    }

    #[test]
    fn l_index_is_periodic(c in context(), x in -200i64..200) {
        let (q, label) = c.l_index(x);
        prop_assert_eq!(c.l_index(x + c.period), (q + 2, label));
        prop_assert!(c.index_alphabet.contains(&label));
    }

    #[test]
    fn both_double_distinct_constructions_agree(
        c in context(),
        raw in prop::collection::btree_set(0i64..20, 0..7),
    ) {
        let l = c.rank() as i64;
        for base in [0, l, l + 1] {
            if completion_case(&c, base).is_err() {
                continue;
            }
            let beads: BTreeSet<i64> = raw.iter().map(|x| x + base).collect();
            let (two_sided, _) = associate_two_sided(&c, base, &beads).unwrap();
            prop_assert_eq!(two_sided, double_distinct(&c, base, &beads).unwrap());
        }
    }

    #[test]
    fn random_words_give_cores_with_consistent_heights(
        (c, j) in context_and_charge(),
        letters in prop::collection::vec(0usize..5, 0..12),
    ) {
        let l = c.rank();
        let word = WeylWord(letters.into_iter().map(|i| i % (l + 1)).collect());
        let start = Abacus::weight(&c, j).unwrap();
        let run = apply_word(&c, &start, &word).unwrap();
        prop_assert!(is_core(&c, &run.abacus));
        prop_assert_eq!(beta_of(&c, &run.abacus).unwrap(), run.tally.clone());
        prop_assert_eq!(atomic_length(&c, j, &word).unwrap(), run.tally.height());
        prop_assert_eq!(height_via_realization(&c, &run.abacus).unwrap(), run.tally.height());
        let u = uglov_vector(&c, &run.abacus);
        prop_assert_eq!(abacus_from_uglov(&c, j, &u).unwrap(), run.abacus.clone());
        let spec = equation_for(&c, j).unwrap();
        let t = apply_f(&spec, &u).unwrap();
        prop_assert_eq!(t.iter().map(|x| x * x).sum::<i64>(), spec.a * run.tally.height() + spec.b);
    }

    #[test]
    fn generators_are_involutions((c, j) in context_and_charge(), letters in prop::collection::vec(0usize..5, 0..8), i in 0usize..5) {
        let l = c.rank();
        let i = i % (l + 1);
        let word = WeylWord(letters.into_iter().map(|x| x % (l + 1)).collect());
        let start = Abacus::weight(&c, j).unwrap();
        let abacus = apply_word(&c, &start, &word).unwrap().abacus;
        let (once, m1) = apply_sigma(&c, &abacus, i).unwrap();
        let (twice, m2) = apply_sigma(&c, &once, i).unwrap();
        prop_assert_eq!(twice, abacus);
        prop_assert_eq!(m1, -m2);
    }

    #[test]
    fn whole_weight_abaci_are_empty_partitions((c, j) in context_and_charge()) {
        let weight = Abacus::weight(&c, j).unwrap();
        match weight_shape(&c, j).unwrap() {
            WeightShape::Whole => prop_assert_eq!(weight.partition().cloned(), Some(Partition::empty())),
            WeightShape::Half { base, .. } => prop_assert_eq!(weight.base(), Some(base)),
        }
        prop_assert!(is_core(&c, &weight));
    }

    #[test]
    fn signed_permutations_preserve_norm_and_class(t in prop::collection::vec(-20i64..20, 1..5), k in 2i64..7) {
        let norm: i64 = t.iter().map(|x| x * x).sum();
        let class = equiv_class(&t, 2 * k);
        for s in signed_permutations(&t) {
            prop_assert_eq!(s.iter().map(|x| x * x).sum::<i64>(), norm);
            prop_assert_eq!(equiv_class(&s, 2 * k), class.clone());
        }
    }

    #[test]
    fn closed_forms_match_brute_force(n in 1i64..400) {
        for squares in [2usize, 4] {
            prop_assert_eq!(
                rep_count(n, squares, RepMethod::Formula).unwrap(),
                rep_count(n, squares, RepMethod::BruteForce).unwrap()
            );
        }
    }

    #[test]
    fn quadratic_field_arithmetic(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in 1i64..20) {
        let x = Quad2::new(Rational::new(a, d), Rational::from_int(b));
        let y = Quad2::new(Rational::from_int(c), Rational::new(b, d));
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.recip().unwrap(), Quad2::from_int(1));
        }
        prop_assert_eq!(x.norm(), (&x * &x.conjugate()).to_rational().unwrap());
    }
}
