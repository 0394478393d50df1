//! Cross-checks of the Uglov map on abaci reachable by single moves.

use std::collections::BTreeSet;

use affine_cores::abacus::{Abacus, Partition};
use affine_cores::action::{apply_sigma, enumerate_cores, reachable_by_moves};
use affine_cores::cartan::{AffineContext, Family};
use affine_cores::exactnum::Rational;
use affine_cores::uglov::{
    abacus_from_uglov, compare_type_a, core_certificate, display_ops, doubled_uglov_vector,
    elementary_ops, sigma_on_uglov, uglov_vector,
};

fn contexts(max_rank: usize) -> Vec<AffineContext> {
    Family::ALL
        .iter()
        .flat_map(|&f| (f.minimum_rank()..=max_rank).map(move |l| AffineContext::of(f, l).unwrap()))
        .collect()
}

#[test]
fn native_ops_match_display_oracle() {
    for ctx in contexts(3) {
        for j in 0..=ctx.rank() {
            for (abacus, _) in reachable_by_moves(&ctx, j, 6).unwrap() {
                let native: BTreeSet<(BTreeSet<i64>, bool)> = elementary_ops(&ctx, &abacus)
                    .iter()
                    .map(|op| (op.positions(), op.is_second_kind()))
                    .collect();
                let oracle: BTreeSet<(BTreeSet<i64>, bool)> = display_ops(&ctx, &abacus)
                    .into_iter()
                    .map(|op| (op.positions, op.second_kind))
                    .collect();
                assert_eq!(native, oracle, "{} j={j} {abacus}", ctx.kind);
            }
        }
    }
}

#[test]
fn three_core_criteria_agree() {
    for ctx in contexts(3) {
        for j in 0..=ctx.rank() {
            for (abacus, beta) in reachable_by_moves(&ctx, j, 6).unwrap() {
                let cert = core_certificate(&ctx, &abacus, Some(&beta)).unwrap();
                assert!(cert.consistent(), "{} j={j} {abacus}: {cert:?}", ctx.kind);
            }
        }
    }
}

#[test]
fn odd_entries_count_the_charge_on_whole_abaci() {
    for ctx in contexts(4) {
        for j in 0..=ctx.rank() {
            for rec in enumerate_cores(&ctx, j, 10).unwrap() {
                let u = uglov_vector(&ctx, &rec.abacus);
                if rec.abacus.is_half() {
                    continue;
                }
                assert_eq!(u.odd_count(), j, "{} j={j} {}", ctx.kind, rec.abacus);
            }
        }
    }
}

#[test]
fn doubling_doubles_the_uglov_vector() {
    for ctx in contexts(4) {
        for j in 0..=ctx.rank() {
            for rec in enumerate_cores(&ctx, j, 10).unwrap() {
                if !rec.abacus.is_half() {
                    continue;
                }
                let u = uglov_vector(&ctx, &rec.abacus);
                let doubled = doubled_uglov_vector(&ctx, &rec.abacus).unwrap();
                assert_eq!(
                    doubled,
                    u.scale(&Rational::from_int(2)),
                    "{} j={j} {}",
                    ctx.kind,
                    rec.abacus
                );
            }
        }
    }
}

#[test]
fn generators_act_naturally_on_vectors() {
    for ctx in contexts(4) {
        for j in 0..=ctx.rank() {
            for rec in enumerate_cores(&ctx, j, 10).unwrap() {
                let u = uglov_vector(&ctx, &rec.abacus);
                assert_eq!(abacus_from_uglov(&ctx, j, &u).unwrap(), rec.abacus);
                for i in 0..=ctx.rank() {
                    let (moved, _) = apply_sigma(&ctx, &rec.abacus, i).unwrap();
                    assert_eq!(
                        uglov_vector(&ctx, &moved),
                        sigma_on_uglov(&ctx, j, &u, i).unwrap(),
                        "{} j={j} i={i} {}",
                        ctx.kind,
                        rec.abacus
                    );
                }
            }
        }
    }
}

#[test]
fn type_a_comparisons_hold() {
    let mut checked = 0;
    for ctx in contexts(3) {
        let l = ctx.rank();
        let charges: Vec<usize> = if ctx.family() == Family::A2lMinus1Twisted {
            vec![0, l]
        } else {
            vec![0]
        };
        for j in charges {
            for (abacus, _) in reachable_by_moves(&ctx, j, 8).unwrap() {
                let report = compare_type_a(&ctx, &abacus).unwrap();
                assert!(report.equivalent(), "{} j={j} {abacus}: {report:?}", ctx.kind);
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn conjugation_examples_in_rank_five() {
    let b5 = AffineContext::of(Family::B, 5).unwrap();
    let core = |parts: &[i64], j: usize| {
        let a = Abacus::from_partition(&b5, Partition::new(parts.to_vec()).unwrap(), j).unwrap();
        elementary_ops(&b5, &a).is_empty()
    };
    assert!(core(&[5, 1, 1], 2));
    assert!(!core(&[3, 1, 1, 1, 1], 3));
    assert!(core(&[3, 1, 1, 1, 1], 4));
    assert!(core(&[9, 1], 2));
    for j in 2..5 {
        assert!(!core(&[2, 1, 1, 1, 1, 1, 1, 1, 1], j));
    }
    assert!(core(&[5, 1], 2));
    assert!(core(&[2, 1, 1, 1, 1], 3));
}

#[test]
fn conjugation_preserves_cores_in_symmetric_types() {
    for ctx in contexts(4) {
        let l = ctx.rank();
        let range = match ctx.family() {
            Family::C => 0..=l,
            Family::DTwisted => 1..=l - 1,
            Family::D if l >= 4 => 2..=l - 2,
            _ => continue,
        };
        for j in range {
            for rec in enumerate_cores(&ctx, j, 10).unwrap() {
                let conjugate = rec.abacus.conjugate(&ctx).unwrap();
                assert!(elementary_ops(&ctx, &conjugate).is_empty(), "{} {}", ctx.kind, rec.abacus);
            }
        }
    }
}
