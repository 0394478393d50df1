//! Property checks of the affine-isometry realization against the abacus
//! action.

use std::collections::BTreeSet;

use affine_cores::action::{apply_word, enumerate_cores, random_descent_word, WeylWord};
use affine_cores::cartan::{AffineContext, Family};
use affine_cores::exactnum::QVector;
use affine_cores::weyl::{
    alcove_coords, atomic_length, check_semidirect_compat, generator_isometry,
    height_via_realization, in_tits_cone, node_heights_via_realization, semidirect, word_isometry,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn contexts(max_rank: usize) -> Vec<AffineContext> {
    Family::ALL
        .iter()
        .flat_map(|&f| (f.minimum_rank()..=max_rank).map(move |l| AffineContext::of(f, l).unwrap()))
        .collect()
}

#[test]
fn heights_agree_three_ways_and_uglov_relation_holds() {
    for ctx in contexts(4) {
        for j in 0..=ctx.rank() {
            for rec in enumerate_cores(&ctx, j, 12).unwrap() {
                let tally = rec.height();
                assert_eq!(atomic_length(&ctx, j, &rec.word).unwrap(), tally);
                assert_eq!(height_via_realization(&ctx, &rec.abacus).unwrap(), tally);
                let per_node = node_heights_via_realization(&ctx, &rec.abacus).unwrap();
                assert_eq!(per_node, rec.beta.0, "{} j={j} {}", ctx.kind, rec.abacus);
                assert!(
                    check_semidirect_compat(&ctx, &rec.abacus).unwrap(),
                    "{} j={j} {}",
                    ctx.kind,
                    rec.abacus
                );
            }
        }
    }
}

#[test]
fn decomposition_reproduces_the_isometry() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for ctx in contexts(4) {
        let real = ctx.realization();
        let l = ctx.rank();
        for _ in 0..100 {
            let length = rng.gen_range(0..10);
            let word = WeylWord((0..length).map(|_| rng.gen_range(0..=l)).collect());
            let split = semidirect(real, &word).unwrap();
            let point = QVector::from_ints(&(0..l).map(|_| rng.gen_range(-5..=5)).collect::<Vec<_>>());
            let direct = word_isometry(real, &word).unwrap().apply(&point).unwrap();
            let recomposed = split
                .finite_part
                .apply(&point)
                .unwrap()
                .try_add(&split.translation)
                .unwrap();
            assert_eq!(direct, recomposed);
            let mut stepwise = point.clone();
            for &i in word.letters().iter().rev() {
                stepwise = generator_isometry(real, i).unwrap().apply(&stepwise).unwrap();
            }
            assert_eq!(direct, stepwise);
        }
    }
}

#[test]
fn atomic_length_is_independent_of_reduced_word() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for ctx in contexts(4) {
        for j in 0..=ctx.rank() {
            for rec in enumerate_cores(&ctx, j, 10).unwrap() {
                let other = random_descent_word(&ctx, &rec.abacus, &mut rng).unwrap();
                let start = affine_cores::abacus::Abacus::weight(&ctx, j).unwrap();
                assert_eq!(apply_word(&ctx, &start, &other).unwrap().abacus, rec.abacus);
                assert_eq!(
                    atomic_length(&ctx, j, &other).unwrap(),
                    atomic_length(&ctx, j, &rec.word).unwrap()
                );
            }
        }
    }
}

#[test]
fn rank_two_alcoves_tile_the_tits_cone() {
    for family in Family::ALL.into_iter().filter(|f| f.minimum_rank() <= 2) {
        let ctx = AffineContext::of(family, 2).unwrap();
        let real = ctx.realization();
        for j in 0..=2 {
            let cores = enumerate_cores(&ctx, j, 6).unwrap();
            let mut interiors = BTreeSet::new();
            for rec in &cores {
                let alcove = alcove_coords(real, &rec.word.inverse()).unwrap();
                assert!(in_tits_cone(real, j, &alcove.interior).unwrap(), "{family} j={j} {}", rec.abacus);
                assert!(interiors.insert(format!("{}", alcove.interior)));
            }
            for rec in cores.iter().filter(|r| !r.word.is_empty()) {
                let parent = WeylWord(rec.word.letters()[1..].to_vec());
                let here = alcove_coords(real, &rec.word.inverse()).unwrap();
                let there = alcove_coords(real, &parent.inverse()).unwrap();
                let shared = here.vertices.iter().filter(|v| there.vertices.contains(v)).count();
                assert_eq!(shared, 2, "{family} j={j} {}", rec.abacus);
            }
        }
    }
}
