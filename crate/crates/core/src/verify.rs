//! The verification suite: eleven checks, each comparing independent
//! computations over bounded ranges. Shared by the `verify` command and the
//! acceptance test target.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::abacus::{Abacus, BeadSet, Partition};
use crate::action::{apply_sigma, beta_of, enumerate_cores, reachable_by_moves, WeylWord};
use crate::cartan::{AffineContext, Family};
use crate::cli::{render_enumeration, OutputFormat};
use crate::dioph::{
    c3_form_image, c3_size_set, count_cores_by_formula, count_cores_by_solutions, equation_for,
    height_from_uglov, missing_up_to, rep_count, verify_completeness, RepMethod,
};
use crate::error::{Error, Result};
use crate::exactnum::{QVector, Quad2, Rational};
use crate::uglov::{
    abacus_from_uglov, apply_elementary_op, compare_type_a, core_certificate, elementary_ops,
    runner_charges, sigma_on_uglov, uglov_vector, UglovVector,
};
use crate::weyl::{atomic_length, height_via_realization, semidirect, semidirect_check};

/// Identifies one check of the suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckId {
    /// Worked examples reproduced exactly.
    Examples,
    /// No elementary operation ⇔ zero defect ⇔ orbit membership.
    CoreCriteria,
    /// Four independent height computations agree on every core.
    HeightAgreement,
    /// Translation/finite-part relation and naturality of the Uglov vector.
    UglovRelations,
    /// The nine completely parametrized equations.
    Completeness,
    /// Two-square closed forms in rank two.
    TwoSquareCounts,
    /// Three- and four-square closed forms.
    ThreeFourSquareCounts,
    /// Heights of rank-three type C charge-0 cores and the ternary form.
    C3Heights,
    /// Comparisons with type A cores and conjugation in rank five.
    TypeAComparisons,
    /// Conjugate cores and multiplicativity of counts.
    ConjugationMultiplicativity,
    /// Enumeration output independent of the worker count.
    Determinism,
}

impl CheckId {
    /// All checks in suite order.
    pub const ALL: [CheckId; 11] = [
        CheckId::Examples,
        CheckId::CoreCriteria,
        CheckId::HeightAgreement,
        CheckId::UglovRelations,
        CheckId::Completeness,
        CheckId::TwoSquareCounts,
        CheckId::ThreeFourSquareCounts,
        CheckId::C3Heights,
        CheckId::TypeAComparisons,
        CheckId::ConjugationMultiplicativity,
        CheckId::Determinism,
    ];

    /// Position in the suite, starting at 1.
    pub fn number(self) -> usize {
        CheckId::ALL.iter().position(|&c| c == self).unwrap_or(0) + 1
    }

    /// Command-line name.
    pub fn name(self) -> &'static str {
        match self {
            CheckId::Examples => "examples",
            CheckId::CoreCriteria => "core-criteria",
            CheckId::HeightAgreement => "height-agreement",
            CheckId::UglovRelations => "uglov-relations",
            CheckId::Completeness => "completeness",
            CheckId::TwoSquareCounts => "two-square-counts",
            CheckId::ThreeFourSquareCounts => "three-four-square-counts",
            CheckId::C3Heights => "c3-heights",
            CheckId::TypeAComparisons => "type-a-comparisons",
            CheckId::ConjugationMultiplicativity => "conjugation-multiplicativity",
            CheckId::Determinism => "determinism",
        }
    }

    /// One-line description.
    pub fn description(self) -> &'static str {
        match self {
            CheckId::Examples => "worked examples: bead sets, l-index labels, displays, Uglov vectors, heights, decomposition",
            CheckId::CoreCriteria => "no elementary op ⇔ zero defect ⇔ orbit membership on reachable abaci",
            CheckId::HeightAgreement => "β tally = atomic length = realization formula = Uglov inversion",
            CheckId::UglovRelations => "weighted Uglov vector = ratio·q + w̄(ω_j); generators act naturally on vectors",
            CheckId::Completeness => "the nine sums-of-squares equations are completely parametrized by cores",
            CheckId::TwoSquareCounts => "rank-two core counts = χ₄ divisor sums = enumeration",
            CheckId::ThreeFourSquareCounts => "three- and four-square core counts = enumeration; r₄ = Jacobi",
            CheckId::C3Heights => "rank-three type C charge-0 heights = ternary form image; exceptions {2,12,13,73}",
            CheckId::TypeAComparisons => "type A core comparisons on reachable abaci; rank-five conjugation facts",
            CheckId::ConjugationMultiplicativity => "conjugate cores reverse and complement u; multiplicativity of counts",
            CheckId::Determinism => "enumeration output identical for 1, 4 and 8 workers",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == s || c.number().to_string() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = CheckId::ALL.iter().map(|c| c.name()).collect();
                Error::Parse(format!("unknown check {s:?}; expected one of {names:?}"))
            })
    }
}

/// Ranges examined by the suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteBounds {
    /// Maximal number of single moves for reachable-abacus checks.
    pub move_steps: usize,
    /// Core height bound in ranks 2 and 3.
    pub height_low_rank: i64,
    /// Core height bound in rank 4.
    pub height_rank_four: i64,
    /// Height bound for two-square completeness.
    pub two_square_n: i64,
    /// Height bound for three-square completeness.
    pub three_square_n: i64,
    /// Height bound for four-square completeness.
    pub four_square_n: i64,
    /// Height bound for rank-two counts.
    pub rank_two_count_n: i64,
    /// Height bound for rank-three counts.
    pub rank_three_count_n: i64,
    /// Height bound for rank-four counts.
    pub rank_four_count_n: i64,
    /// Height bound for the rank-three type C height set.
    pub c3_height: i64,
    /// Bound for the ternary form image.
    pub form_n: i64,
    /// Bound on N₁, N₂ for multiplicativity.
    pub multiplicativity_n: i64,
    /// Height bound for the determinism check.
    pub determinism_height: i64,
}

impl Default for SuiteBounds {
    fn default() -> Self {
        SuiteBounds {
            move_steps: 8,
            height_low_rank: 30,
            height_rank_four: 15,
            two_square_n: 50,
            three_square_n: 30,
            four_square_n: 20,
            rank_two_count_n: 100,
            rank_three_count_n: 40,
            rank_four_count_n: 25,
            c3_height: 200,
            form_n: 500,
            multiplicativity_n: 12,
            determinism_height: 12,
        }
    }
}

impl SuiteBounds {
    /// Replaces every core-height bound by `h`.
    pub fn with_max_height(mut self, h: i64) -> Self {
        self.height_low_rank = h;
        self.height_rank_four = h;
        self.c3_height = h;
        self.determinism_height = h;
        self
    }

    /// Replaces every equation-side bound N by `n`.
    pub fn with_max_n(mut self, n: i64) -> Self {
        self.two_square_n = n;
        self.three_square_n = n;
        self.four_square_n = n;
        self.rank_two_count_n = n;
        self.rank_three_count_n = n;
        self.rank_four_count_n = n;
        self.form_n = n;
        self.multiplicativity_n = n;
        self
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    /// Position in the suite.
    pub number: usize,
    /// The check.
    pub check: CheckId,
    /// Whether every case passed.
    pub passed: bool,
    /// Number of individual cases compared.
    pub cases: u64,
    /// Summary lines (counts per family and the like).
    pub details: Vec<String>,
    /// The first failing cases, serialized for reproduction.
    pub failures: Vec<String>,
    /// Total number of failing cases.
    pub failure_count: u64,
    /// Wall time in milliseconds.
    pub elapsed_ms: u128,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<30} {:>8} cases {:>8} ms  {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.number,
            self.check.name(),
            self.cases,
            self.elapsed_ms,
            self.check.description()
        )
    }
}

/// Failing cases kept per check.
const FAILURES_KEPT: usize = 20;

/// Accumulates cases and failures of one check.
#[derive(Default)]
struct Tally {
    cases: u64,
    failures: Vec<String>,
    failure_count: u64,
    details: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(describe());
        }
    }

    fn expect_eq<T: PartialEq + fmt::Debug>(&mut self, what: &str, got: T, expected: T) {
        let ok = got == expected;
        self.check(ok, || format!("{what}: got {got:?}, expected {expected:?}"));
    }

    fn fail(&mut self, message: String) {
        self.failure_count += 1;
        if self.failures.len() < FAILURES_KEPT {
            self.failures.push(message);
        }
    }

    fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < FAILURES_KEPT {
                self.failures.push(f);
            }
        }
        self.details.extend(other.details);
    }

    fn into_report(self, check: CheckId, started: Instant) -> CheckReport {
        CheckReport {
            number: check.number(),
            check,
            passed: self.failure_count == 0 && self.cases > 0,
            cases: self.cases,
            details: self.details,
            failures: self.failures,
            failure_count: self.failure_count,
            elapsed_ms: started.elapsed().as_millis(),
        }
    }
}

/// Runs one check.
pub fn run_check(check: CheckId, bounds: &SuiteBounds) -> Result<CheckReport> {
    let started = Instant::now();
    let tally = match check {
        CheckId::Examples => examples()?,
        CheckId::CoreCriteria => core_criteria(bounds)?,
        CheckId::HeightAgreement => height_agreement(bounds)?,
        CheckId::UglovRelations => uglov_relations(bounds)?,
        CheckId::Completeness => completeness(bounds)?,
        CheckId::TwoSquareCounts => two_square_counts(bounds)?,
        CheckId::ThreeFourSquareCounts => three_four_square_counts(bounds)?,
        CheckId::C3Heights => c3_heights(bounds)?,
        CheckId::TypeAComparisons => type_a_comparisons(bounds)?,
        CheckId::ConjugationMultiplicativity => conjugation_multiplicativity(bounds)?,
        CheckId::Determinism => determinism(bounds)?,
    };
    Ok(tally.into_report(check, started))
}

/// Runs the given checks in suite order.
pub fn run_suite(checks: &[CheckId], bounds: &SuiteBounds) -> Result<Vec<CheckReport>> {
    checks.iter().map(|&c| run_check(c, bounds)).collect()
}

fn ctx(family: Family, l: usize) -> Result<AffineContext> {
    AffineContext::of(family, l)
}

fn whole(c: &AffineContext, parts: &[i64], j: usize) -> Result<Abacus> {
    Abacus::from_partition(c, Partition::new(parts.to_vec())?, j)
}

/// Every (context, charge) with rank in the given range.
fn charged_contexts(ranks: std::ops::RangeInclusive<usize>) -> Result<Vec<(AffineContext, usize)>> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for l in ranks.clone() {
            if l < family.minimum_rank() {
                continue;
            }
            let c = ctx(family, l)?;
            for j in 0..=l {
                out.push((c.clone(), j));
            }
        }
    }
    Ok(out)
}

fn par_tally<T, F>(items: Vec<T>, f: F) -> Result<Tally>
where
    T: Send,
    F: Fn(T) -> Result<Tally> + Sync + Send,
{
    let parts = items.into_par_iter().map(f).collect::<Result<Vec<Tally>>>()?;
    let mut total = Tally::default();
    for part in parts {
        total.merge(part);
    }
    Ok(total)
}

fn examples() -> Result<Tally> {
    let mut t = Tally::default();

    // Bead set of (7,5,4,1,1) at charge 0.
    let beads = BeadSet::from_partition(&Partition::new(vec![7, 5, 4, 1, 1])?, 0);
    let window: Vec<i64> = (-8..=8).filter(|&x| beads.has(x)).collect();
    t.expect_eq("beads of (7,5,4,1,1) in [-8,8]", window, vec![-8, -7, -6, -4, -3, 1, 3, 6]);
    t.expect_eq("charge of (7,5,4,1,1)", beads.charge(), Some(0));

    // l-index labels of the twisted D family in rank 2.
    let d2 = ctx(Family::DTwisted, 2)?;
    let labels: Vec<i64> = (-1..=6).map(|x| d2.l_index(x).1).collect();
    t.expect_eq("labels at positions -1..6", labels, vec![0, 1, 2, 3, -2, -1, 0, 1]);
    t.expect_eq("l-index of 0", d2.l_index(0), (0, 1));
    t.expect_eq("l-index of 3", d2.l_index(3), (1, -2));
    t.expect_eq("l-index of -1", d2.l_index(-1), (-1, 0));

    // Display of ((5,2,1,1,1,1,1),1) and its elementary operations.
    let before = whole(&d2, &[5, 2, 1, 1, 1, 1, 1], 1)?;
    t.expect_eq("runner charges of ((5,2,1^5),1)", runner_charges(&d2, &before), vec![-1, 1]);
    let ops = elementary_ops(&d2, &before);
    let first = ops.iter().filter(|op| !op.is_second_kind()).count();
    let second = ops.len() - first;
    t.expect_eq("first/second kind ops on ((5,2,1^5),1)", (first, second), (2, 0));
    let mut after = before.clone();
    for op in ops.iter().filter(|op| !op.is_second_kind()) {
        after = apply_elementary_op(&after, op)?;
    }
    let later = elementary_ops(&d2, &after);
    t.check(later.iter().any(|op| op.is_second_kind()), || {
        format!("no second-kind op after the first-kind ones on {after}")
    });

    // The core ((4,2,1,1,1,1,1),1): Uglov vector, heights, word, decomposition.
    let core = whole(&d2, &[4, 2, 1, 1, 1, 1, 1], 1)?;
    t.expect_eq("u of ((4,2,1^5),1)", uglov_vector(&d2, &core), UglovVector::from_ints(&[-2, 1]));
    let beta = beta_of(&d2, &core)?;
    t.expect_eq("per-node heights", beta.0.clone(), vec![2, 5, 4]);
    t.expect_eq("total height", beta.height(), 11);
    let word: WeylWord = "1,2,1,0,1".parse()?;
    let replay = crate::action::apply_word(&d2, &Abacus::weight(&d2, 1)?, &word)?;
    t.expect_eq("word 1,2,1,0,1 reaches the core", replay.abacus, core.clone());
    t.expect_eq("atomic length of 1,2,1,0,1", atomic_length(&d2, 1, &word)?, 11);
    let split = semidirect(d2.realization(), &word)?;
    let q = QVector::new(vec![-Quad2::sqrt2(), Quad2::from_int(0)]);
    t.expect_eq("translation part", split.translation, q);
    t.expect_eq("finite part", split.finite_word, WeylWord(vec![1]));
    t.details.push("bead set, l-index row, display charges (-1,1), u=(-2,1), ht=(2,5,4), q=(-√2,0), w̄=σ1".into());
    Ok(t)
}

fn core_criteria(bounds: &SuiteBounds) -> Result<Tally> {
    let steps = bounds.move_steps;
    par_tally(charged_contexts(2..=4)?, |(c, j)| {
        let mut t = Tally::default();
        let reachable = reachable_by_moves(&c, j, steps)?;
        let mut cores = 0;
        for (abacus, beta) in &reachable {
            let cert = core_certificate(&c, abacus, Some(beta))?;
            cores += usize::from(cert.no_elementary_ops);
            t.check(cert.consistent() && cert.defect_zero.is_some(), || {
                format!("{} j={j} {abacus}: {cert:?}", c.kind)
            });
        }
        t.details.push(format!("{} j={j}: {} abaci, {cores} cores", c.kind, reachable.len()));
        Ok(t)
    })
}

fn core_sets(bounds: &SuiteBounds) -> Result<Vec<(AffineContext, usize, i64)>> {
    let mut out = Vec::new();
    for (c, j) in charged_contexts(2..=4)? {
        let h = if c.rank() == 4 {
            bounds.height_rank_four
        } else {
            bounds.height_low_rank
        };
        out.push((c, j, h));
    }
    Ok(out)
}

fn height_agreement(bounds: &SuiteBounds) -> Result<Tally> {
    par_tally(core_sets(bounds)?, |(c, j, h)| {
        let mut t = Tally::default();
        let spec = equation_for(&c, j)?;
        let cores = enumerate_cores(&c, j, h)?;
        for rec in &cores {
            let tally = rec.height();
            let atomic = atomic_length(&c, j, &rec.word)?;
            let realization = height_via_realization(&c, &rec.abacus)?;
            let inversion = height_from_uglov(&spec, &uglov_vector(&c, &rec.abacus))?;
            t.check(tally == atomic && tally == realization && tally == inversion, || {
                format!(
                    "{} j={j} {}: tally {tally}, atomic {atomic}, realization {realization}, inversion {inversion}",
                    c.kind, rec.abacus
                )
            });
        }
        t.details.push(format!("{} j={j}: {} cores of height ≤ {h}", c.kind, cores.len()));
        Ok(t)
    })
}

fn uglov_relations(bounds: &SuiteBounds) -> Result<Tally> {
    par_tally(core_sets(bounds)?, |(c, j, h)| {
        let mut t = Tally::default();
        for rec in enumerate_cores(&c, j, h)? {
            let check = semidirect_check(&c, &rec.abacus)?;
            t.check(check.holds(), || {
                format!(
                    "{} j={j} {}: weighted u {} vs {}",
                    c.kind, rec.abacus, check.weighted_uglov, check.predicted
                )
            });
            let u = uglov_vector(&c, &rec.abacus);
            for i in 0..=c.rank() {
                let (moved, _) = apply_sigma(&c, &rec.abacus, i)?;
                let direct = uglov_vector(&c, &moved);
                let predicted = sigma_on_uglov(&c, j, &u, i)?;
                t.check(direct == predicted, || {
                    format!("{} j={j} σ{i} on {}: {direct} vs {predicted}", c.kind, rec.abacus)
                });
            }
        }
        Ok(t)
    })
}

/// The nine completely parametrized equations, each with the charges whose
/// cores parametrize it. (Rank-four type B at charge 3 yields the same
/// equation as charge 2 but leaves some orbits without a core.)
pub fn complete_equations() -> Vec<(Family, usize, Vec<usize>)> {
    vec![
        (Family::C, 2, vec![0, 2]),
        (Family::C, 2, vec![1]),
        (Family::C, 3, vec![1, 2]),
        (Family::B, 3, vec![2]),
        (Family::B, 4, vec![2]),
        (Family::DTwisted, 2, vec![0, 2]),
        (Family::DTwisted, 2, vec![1]),
        (Family::DTwisted, 3, vec![1, 2]),
        (Family::D, 4, vec![2]),
    ]
}

fn completeness(bounds: &SuiteBounds) -> Result<Tally> {
    let mut items = Vec::new();
    for (index, (family, l, charges)) in complete_equations().into_iter().enumerate() {
        for j in charges {
            items.push((index + 1, family, l, j));
        }
    }
    par_tally(items, |(index, family, l, j)| {
        let mut t = Tally::default();
        let c = ctx(family, l)?;
        let spec = equation_for(&c, j)?;
        let max_n = match l {
            2 => bounds.two_square_n,
            3 => bounds.three_square_n,
            _ => bounds.four_square_n,
        };
        let report = verify_completeness(&c, &spec, max_n)?;
        t.cases += report.orbits as u64;
        for failure in &report.failures {
            t.fail(format!(
                "({index}) {} j={j} {spec}: orbit of {:?} at N={} has no core",
                c.kind, failure.canonical.t, failure.canonical.n
            ));
        }
        t.details.push(format!(
            "({index}) {} j={j}: {spec}, N ≤ {max_n}, {} orbits",
            c.kind, report.orbits
        ));
        Ok(t)
    })
}

fn heights_histogram(c: &AffineContext, j: usize, max_n: i64) -> Result<BTreeMap<i64, u64>> {
    let mut by_height = BTreeMap::new();
    for rec in enumerate_cores(c, j, max_n)? {
        *by_height.entry(rec.height()).or_default() += 1;
    }
    Ok(by_height)
}

/// Compares enumeration, the closed form and the solution side for every
/// N ≤ max_n selected by `include`.
fn compare_counts(
    t: &mut Tally,
    c: &AffineContext,
    j: usize,
    max_n: i64,
    include: impl Fn(i64) -> bool,
) -> Result<()> {
    let spec = equation_for(c, j)?;
    let by_height = heights_histogram(c, j, max_n)?;
    for n in (0..=max_n).filter(|&n| include(n)) {
        let enumerated = by_height.get(&n).copied().unwrap_or(0);
        let formula = count_cores_by_formula(c, j, n)?;
        let solutions = count_cores_by_solutions(c, &spec, n)?;
        t.check(formula == Some(enumerated) && solutions == enumerated, || {
            format!(
                "{} j={j} N={n}: enumeration {enumerated}, formula {formula:?}, solutions {solutions}",
                c.kind
            )
        });
    }
    Ok(())
}

fn two_square_counts(bounds: &SuiteBounds) -> Result<Tally> {
    let mut items = Vec::new();
    for family in [Family::C, Family::DTwisted] {
        for j in 0..=2 {
            items.push((family, j));
        }
    }
    let max_n = bounds.rank_two_count_n;
    let mut t = par_tally(items, |(family, j)| {
        let mut t = Tally::default();
        compare_counts(&mut t, &ctx(family, 2)?, j, max_n, |_| true)?;
        Ok(t)
    })?;
    let c2 = ctx(Family::C, 2)?;
    t.expect_eq("C~1 rank 2 j=1 N=2", count_cores_by_formula(&c2, 1, 2)?, Some(2));
    t.details.push(format!("C~1 and D~2 rank 2, j = 0,1,2, N ≤ {max_n}"));
    Ok(t)
}

fn three_four_square_counts(bounds: &SuiteBounds) -> Result<Tally> {
    let r3 = bounds.rank_three_count_n;
    let r4 = bounds.rank_four_count_n;
    let rows: Vec<(Family, usize, i64, bool)> = vec![
        (Family::DTwisted, 3, r3, false),
        (Family::B, 3, r3, true),
        (Family::B, 4, r4, false),
        (Family::D, 4, r4, true),
    ];
    let mut t = par_tally(rows, |(family, l, max_n, odd_only)| {
        let mut t = Tally::default();
        compare_counts(&mut t, &ctx(family, l)?, 2, max_n, |n| !odd_only || n.is_odd())?;
        t.details.push(format!(
            "{family} rank {l} j=2, {} N ≤ {max_n}",
            if odd_only { "odd" } else { "all" }
        ));
        Ok(t)
    })?;
    let jacobi_max = 8 * r4.max(r3) + 6;
    for n in 1..=jacobi_max {
        let brute = rep_count(n, 4, RepMethod::BruteForce)?;
        let formula = rep_count(n, 4, RepMethod::Formula)?;
        t.check(brute == formula, || format!("r4({n}): brute force {brute}, Jacobi {formula}"));
    }
    t.details.push(format!("r4 = Jacobi for 1 ≤ n ≤ {jacobi_max}"));
    Ok(t)
}

fn c3_heights(bounds: &SuiteBounds) -> Result<Tally> {
    let mut t = Tally::default();
    let h = bounds.c3_height;
    let expected = |limit: i64| -> Vec<i64> {
        [2, 12, 13, 73].into_iter().filter(|&x| x <= limit).collect()
    };
    let heights = c3_size_set(h)?;
    t.expect_eq("missing core heights", missing_up_to(&heights, h), expected(h));
    let image = c3_form_image(bounds.form_n);
    t.expect_eq("missing form values", missing_up_to(&image, bounds.form_n), expected(bounds.form_n));
    t.details.push(format!(
        "core heights ≤ {h} equal the form image; form misses {:?} up to {}",
        missing_up_to(&image, bounds.form_n),
        bounds.form_n
    ));
    Ok(t)
}

fn type_a_comparisons(bounds: &SuiteBounds) -> Result<Tally> {
    let mut items = Vec::new();
    for family in Family::ALL {
        for l in family.minimum_rank().max(2)..=3 {
            items.push((family, l, 0));
            if family == Family::A2lMinus1Twisted {
                items.push((family, l, l));
            }
        }
    }
    let steps = bounds.move_steps;
    let mut t = par_tally(items, |(family, l, j)| {
        let mut t = Tally::default();
        let c = ctx(family, l)?;
        let reachable = reachable_by_moves(&c, j, steps)?;
        let mut kinds = BTreeMap::new();
        for abacus in reachable.keys() {
            let report = compare_type_a(&c, abacus)?;
            *kinds.entry(format!("{:?}", report.comparison)).or_insert(0) += 1;
            t.check(report.equivalent(), || format!("{} j={j} {abacus}: {report:?}", c.kind));
        }
        t.details.push(format!("{} j={j}: {kinds:?}", c.kind));
        Ok(t)
    })?;

    let b5 = ctx(Family::B, 5)?;
    let is_core = |parts: &[i64], j: usize| -> Result<bool> {
        Ok(elementary_ops(&b5, &whole(&b5, parts, j)?).is_empty())
    };
    t.expect_eq("((5,1,1),2) is a core", is_core(&[5, 1, 1], 2)?, true);
    t.expect_eq("((3,1,1,1,1),3) is a core", is_core(&[3, 1, 1, 1, 1], 3)?, false);
    t.expect_eq("((3,1,1,1,1),4) is a core", is_core(&[3, 1, 1, 1, 1], 4)?, true);
    t.expect_eq("((9,1),2) is a core", is_core(&[9, 1], 2)?, true);
    for j in 2..=4 {
        t.expect_eq(
            &format!("((2,1^8),{j}) is a core"),
            is_core(&[2, 1, 1, 1, 1, 1, 1, 1, 1], j)?,
            false,
        );
    }
    t.expect_eq("((5,1),2) is a core", is_core(&[5, 1], 2)?, true);
    t.expect_eq("((2,1,1,1,1),3) is a core", is_core(&[2, 1, 1, 1, 1], 3)?, true);
    Ok(t)
}

/// Charges for which conjugation maps cores to cores in the C and D
/// families.
fn conjugation_charges(c: &AffineContext) -> Option<std::ops::RangeInclusive<usize>> {
    let l = c.rank();
    match c.family() {
        Family::C => Some(0..=l),
        Family::DTwisted => Some(1..=l - 1),
        Family::D if l >= 4 => Some(2..=l - 2),
        _ => None,
    }
}

/// The node heights of a type C core predicted from its Uglov vector.
fn type_c_node_heights(u: &UglovVector, j: usize) -> Vec<Rational> {
    let l = u.len();
    let sq: Rational = u.entries().iter().fold(Rational::from_int(0), |acc, x| acc + x * x);
    let prefix = |i: usize| -> Rational {
        u.entries()[..i].iter().fold(Rational::from_int(0), |acc, x| acc + x)
    };
    let j_q = Rational::from_int(j as i64);
    let quarter = Rational::new(1, 4);
    let half = Rational::half();
    (0..=l)
        .map(|i| {
            if i == 0 {
                &quarter * &(&sq - &j_q)
            } else if i == l {
                &quarter * &(&sq + &j_q) - &half * &prefix(l)
            } else if j <= i {
                &half * &sq - prefix(i) + &half * &j_q
            } else {
                let shift = Rational::new(2 * i as i64 - j as i64, 2);
                &half * &sq - prefix(i) + shift
            }
        })
        .collect()
}

fn conjugation_multiplicativity(bounds: &SuiteBounds) -> Result<Tally> {
    let mut items = Vec::new();
    for (c, j, h) in core_sets(bounds)? {
        if conjugation_charges(&c).is_some_and(|r| r.contains(&j)) {
            items.push((c, j, h));
        }
    }
    let mut t = par_tally(items, |(c, j, h)| {
        let mut t = Tally::default();
        let l = c.rank();
        for rec in enumerate_cores(&c, j, h)? {
            let u = uglov_vector(&c, &rec.abacus);
            let conjugate = rec.abacus.conjugate(&c)?;
            let flipped = UglovVector(
                u.entries().iter().rev().map(|x| Rational::from_int(1) - x).collect(),
            );
            t.check(uglov_vector(&c, &conjugate) == flipped, || {
                format!("{} j={j} {}: conjugate vector is not {flipped}", c.kind, rec.abacus)
            });
            let rebuilt = abacus_from_uglov(&c, l - j, &flipped)?;
            t.check(rebuilt == conjugate, || {
                format!("{} j={j} {}: {flipped} rebuilds {rebuilt}", c.kind, rec.abacus)
            });
            let conj_beta = beta_of(&c, &conjugate)?;
            let mirrored: Vec<i64> = rec.beta.0.iter().rev().copied().collect();
            t.check(conj_beta.0 == mirrored, || {
                format!("{} j={j} {}: node heights not mirrored", c.kind, rec.abacus)
            });
            if c.family() == Family::C {
                let predicted = type_c_node_heights(&u, j);
                let actual: Vec<Rational> = rec.beta.0.iter().map(|&b| Rational::from_int(b)).collect();
                t.check(predicted == actual, || {
                    format!("{} j={j} {}: node heights {predicted:?} vs {actual:?}", c.kind, rec.abacus)
                });
            }
        }
        Ok(t)
    })?;

    let m = bounds.multiplicativity_n;
    for (family, a) in [(Family::C, 8), (Family::DTwisted, 3)] {
        let c = ctx(family, 2)?;
        let spec = equation_for(&c, 1)?;
        let mut cache: BTreeMap<i64, (u64, u64)> = BTreeMap::new();
        let mut counts = |n: i64| -> Result<(u64, u64)> {
            if let Some(&v) = cache.get(&n) {
                return Ok(v);
            }
            let formula = count_cores_by_formula(&c, 1, n)?
                .ok_or_else(|| Error::Inconsistency(format!("no closed form for {family} N={n}")))?;
            let solutions = count_cores_by_solutions(&c, &spec, n)?;
            cache.insert(n, (formula, solutions));
            Ok((formula, solutions))
        };
        for n1 in 0..=m {
            for n2 in n1..=m {
                if (a * n1 + 1).gcd(&(a * n2 + 1)) != 1 {
                    continue;
                }
                let (f1, s1) = counts(n1)?;
                let (f2, s2) = counts(n2)?;
                let n = a * n1 * n2 + n1 + n2;
                let (f, s) = counts(n)?;
                t.check(f1 * f2 == f && s1 * s2 == s, || {
                    format!("{family} j=1: N1={n1}, N2={n2}: {f1}·{f2} vs {f}, {s1}·{s2} vs {s}")
                });
            }
        }
        t.details.push(format!("{family} rank 2 j=1 multiplicativity for N1, N2 ≤ {m}"));
    }
    Ok(t)
}

fn determinism(bounds: &SuiteBounds) -> Result<Tally> {
    let mut t = Tally::default();
    let cases = [
        (Family::C, 2, 1),
        (Family::DTwisted, 2, 1),
        (Family::B, 3, 3),
        (Family::A2lTwisted, 3, 0),
        (Family::D, 4, 2),
    ];
    for (family, l, j) in cases {
        let c = ctx(family, l)?;
        for format in [OutputFormat::Json, OutputFormat::Csv] {
            let reference = render_enumeration(&c, j, bounds.determinism_height, Some(1), format)?;
            for workers in [4, 8] {
                let other = render_enumeration(&c, j, bounds.determinism_height, Some(workers), format)?;
                t.check(other == reference, || {
                    format!("{} j={j} {format:?}: output differs with {workers} workers", c.kind)
                });
            }
        }
    }
    t.details.push(format!("5 contexts, heights ≤ {}, JSON and CSV", bounds.determinism_height));
    Ok(t)
}
