//! Sums-of-squares equations satisfied by core heights.
//!
//! For every type and charge the height N of a core with Uglov vector u
//! satisfies |k·u − c|² = a·N + b. This module holds the coefficient tables
//! (cross-derived from the realization height formula by completing the
//! square), the map F(u) = k·u − c, brute-force solution enumeration,
//! signed-permutation orbits, the criterion deciding which solutions come
//! from cores, residue classes, representation numbers r_2/r_3/r_4 with
//! their closed forms, closed-form core counts, completeness reports and
//! the height set of rank-3 type-C charge-0 cores.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::abacus::{Abacus, WeightShape};
use crate::action::{beta_of, enumerate_cores};
use crate::cartan::{AffineContext, Family};
use crate::error::{Error, Result};
use crate::exactnum::{inner_product, Quad2, Rational};
use crate::uglov::{abacus_from_uglov, elementary_ops, UglovVector};

/// The values an Uglov vector entry can take at a charge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum UDomain {
    /// Integers.
    Integer,
    /// Elements of ℤ + ½.
    HalfInteger,
}

/// The equation |k·u − c|² = a·N + b of one type and charge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquationSpec {
    /// Family.
    pub family: Family,
    /// Rank l.
    pub rank: usize,
    /// Charge j.
    pub charge: usize,
    /// Coefficient of N.
    pub a: i64,
    /// Constant term.
    pub b: i64,
    /// Scale k of F.
    pub k: i64,
    /// Offsets c_1..c_l of F.
    pub c: Vec<i64>,
    /// Domain of the Uglov entries.
    pub u_domain: UDomain,
    /// Required number of odd entries of u (whole abaci only).
    pub odd_count: Option<usize>,
}

impl fmt::Display for EquationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let squares: Vec<String> = (1..=self.rank).map(|i| format!("x{i}²")).collect();
        write!(f, "{} = {}N + {}", squares.join(" + "), self.a, self.b)
    }
}

/// Coefficients (k, c, a, b) from the per-type height identities.
fn tabulated(family: Family, l: i64, j: i64) -> (i64, Vec<i64>, i64, i64) {
    let odd_offsets: Vec<i64> = (1..=l).map(|i| 2 * (l - i) + 1).collect();
    let plain_offsets: Vec<i64> = (1..=l).map(|i| l - i + 1).collect();
    let cubic_odd = l * (2 * l + 1) * (2 * l - 1) / 3;
    let cubic_sq = l * (l + 1) * (2 * l + 1) / 6;
    match family {
        Family::A2lMinus1Twisted => {
            if j <= 1 {
                (4 * l - 2, odd_offsets, 8 * (2 * l - 1), cubic_odd)
            } else {
                (
                    2 * l - 1,
                    odd_offsets,
                    4 * (2 * l - 1),
                    cubic_odd - j * (2 * l - 1) * (2 * l - 2 * j + 1),
                )
            }
        }
        Family::A2lTwisted => {
            if j == 0 {
                (4 * l + 2, odd_offsets, 8 * (2 * l + 1), cubic_odd)
            } else {
                (
                    2 * l + 1,
                    odd_offsets,
                    4 * (2 * l + 1),
                    cubic_odd - j * (2 * l + 1) * (2 * l - 2 * j - 1),
                )
            }
        }
        Family::B => {
            if j <= 1 {
                (2 * l, plain_offsets, 4 * l, cubic_sq)
            } else if j < l {
                (l, plain_offsets, 2 * l, cubic_sq - j * l * (l - j + 1))
            } else {
                (2 * l, plain_offsets, 4 * l, cubic_sq - l * l)
            }
        }
        Family::C => (2 * l, odd_offsets, 8 * l, cubic_odd - 4 * l * j * (l - j)),
        Family::D => {
            let offsets = (1..=l).map(|i| l - i).collect();
            let base = (l - 1) * l * (2 * l - 1) / 6;
            if j <= 1 || j >= l - 1 {
                (2 * l - 2, offsets, 4 * (l - 1), base)
            } else {
                (l - 1, offsets, 2 * (l - 1), base - j * (l - 1) * (l - j))
            }
        }
        Family::DTwisted => {
            if j == 0 || j == l {
                (2 * l + 2, plain_offsets, 4 * (l + 1), cubic_sq)
            } else {
                (l + 1, plain_offsets, 2 * (l + 1), cubic_sq - j * (l + 1) * (l - j))
            }
        }
    }
}

/// Coefficients (c, a, b) obtained from the realization height formula
/// ht = c₀(h/2)(|s·u|² − |ω_j|²) − (s·u − ω_j, ρ^∨), with s the Uglov
/// weight, by completing the square and scaling so that the coefficient of
/// u is k.
pub fn derive_coefficients(
    ctx: &AffineContext,
    j: usize,
    k: i64,
) -> Result<(Vec<Rational>, Rational, Rational)> {
    let real = ctx.realization();
    let rational = |q: Quad2, what: &str| {
        q.to_rational()
            .ok_or_else(|| Error::Inconsistency(format!("{what} is irrational: {q}")))
    };
    let weight = ctx.family().uglov_weight();
    let weight_sq = rational(&weight * &weight, "squared Uglov weight")?;
    let inverse_ratio = ctx.comark_ratio(j).recip()?;
    let half_h = Rational::new(ctx.coxeter_h, 2);
    // ht = quad·|u|² − (u, lin) + constant
    let quad = &(&inverse_ratio * &half_h) * &weight_sq;
    let lin = real.rho_check.scale(&weight);
    let omega = real.weight_or_zero(j);
    let constant = rational(
        &inner_product(&omega, &real.rho_check)?
            - &(&Quad2::from_rational(&inverse_ratio * &half_h) * &inner_product(&omega, &omega)?),
        "height constant",
    )?;
    let lin_entries = lin
        .entries()
        .iter()
        .map(|x| rational(x.clone(), "linear coefficient"))
        .collect::<Result<Vec<_>>>()?;
    let lin_norm = rational(inner_product(&lin, &lin)?, "linear norm")?;
    let two_quad = &quad * &Rational::from_int(2);
    let scale = &Rational::from_int(k) * &two_quad.recip()?;
    let scale_sq = &scale * &scale;
    let c = lin_entries.iter().map(|x| &scale * x).collect();
    let four_quad = &quad * &Rational::from_int(4);
    let a = &scale_sq * &four_quad;
    let b = &scale_sq * &(&lin_norm - &(&four_quad * &constant));
    Ok((c, a, b))
}

/// The equation of a type and charge, checked against the derivation from
/// the realization.
pub fn equation_for(ctx: &AffineContext, j: usize) -> Result<EquationSpec> {
    ctx.check_charge(j)?;
    let l = ctx.rank();
    let (k, c, a, b) = tabulated(ctx.family(), l as i64, j as i64);
    let (dc, da, db) = derive_coefficients(ctx, j, k)?;
    let derived_c: Vec<Rational> = c.iter().map(|&x| Rational::from_int(x)).collect();
    if dc != derived_c || da != Rational::from_int(a) || db != Rational::from_int(b) {
        return Err(Error::Inconsistency(format!(
            "{} charge {j}: tabulated (k={k}, c={c:?}, a={a}, b={b}) disagrees with derived (c={dc:?}, a={da}, b={db})",
            ctx.kind
        )));
    }
    let (u_domain, odd_count) = match crate::abacus::weight_shape(ctx, j)? {
        WeightShape::Whole => (UDomain::Integer, Some(j)),
        WeightShape::Half { base: 0, .. } => (UDomain::Integer, None),
        WeightShape::Half { .. } => (UDomain::HalfInteger, None),
    };
    if u_domain == UDomain::HalfInteger && k % 2 != 0 {
        return Err(Error::Inconsistency(format!(
            "{} charge {j}: odd scale {k} on a half-integer domain",
            ctx.kind
        )));
    }
    Ok(EquationSpec {
        family: ctx.family(),
        rank: l,
        charge: j,
        a,
        b,
        k,
        c,
        u_domain,
        odd_count,
    })
}

/// An integer solution t of Σ t_i² = a·N + b.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Solution {
    /// The entries.
    pub t: Vec<i64>,
    /// The height N.
    #[serde(rename = "N")]
    pub n: i64,
}

fn in_domain(spec: &EquationSpec, u: &UglovVector) -> bool {
    u.entries().iter().all(|x| match spec.u_domain {
        UDomain::Integer => x.is_integer(),
        UDomain::HalfInteger => (x + &Rational::half()).is_integer(),
    })
}

/// F(u) = k·u − c.
pub fn apply_f(spec: &EquationSpec, u: &UglovVector) -> Result<Vec<i64>> {
    if u.len() != spec.rank {
        return Err(Error::DimensionMismatch { left: u.len(), right: spec.rank });
    }
    if !in_domain(spec, u) {
        return Err(Error::Domain(format!("Uglov vector {u} outside the {:?} domain", spec.u_domain)));
    }
    u.entries()
        .iter()
        .zip(&spec.c)
        .map(|(x, &c)| {
            (&(x * &Rational::from_int(spec.k)) - &Rational::from_int(c))
                .to_i64()
                .ok_or_else(|| Error::Inconsistency(format!("F({u}) is not integral")))
        })
        .collect()
}

/// The height N = (|F(u)|² − b)/a.
pub fn height_from_uglov(spec: &EquationSpec, u: &UglovVector) -> Result<i64> {
    let t = apply_f(spec, u)?;
    let norm: i64 = t.iter().map(|x| x * x).sum();
    let (n, rem) = (norm - spec.b).div_rem(&spec.a);
    if rem != 0 {
        return Err(Error::Inconsistency(format!(
            "|F({u})|² − b = {} is not divisible by {}",
            norm - spec.b,
            spec.a
        )));
    }
    Ok(n)
}

/// All integer vectors of length `len` whose squares sum to `target`, in
/// lexicographic order.
pub fn vectors_with_norm(target: i64, len: usize) -> Vec<Vec<i64>> {
    fn fill(rest: i64, len: usize, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if len == 0 {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if len == 1 {
            let root = rest.max(0).isqrt();
            if root * root == rest {
                for x in if root == 0 { vec![0] } else { vec![-root, root] } {
                    prefix.push(x);
                    out.push(prefix.clone());
                    prefix.pop();
                }
            }
            return;
        }
        let bound = rest.max(0).isqrt();
        for x in -bound..=bound {
            prefix.push(x);
            fill(rest - x * x, len - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if target >= 0 {
        fill(target, len, &mut Vec::new(), &mut out);
    }
    out
}

/// All solutions at height N.
pub fn solve(spec: &EquationSpec, n: i64) -> Vec<Solution> {
    vectors_with_norm(spec.a * n + spec.b, spec.rank)
        .into_iter()
        .map(|t| Solution { t, n })
        .collect()
}

/// All signed permutations of a vector.
pub fn signed_permutations(t: &[i64]) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    let mut frontier = vec![t.to_vec()];
    out.insert(t.to_vec());
    while let Some(v) = frontier.pop() {
        let mut neighbours = Vec::new();
        for i in 0..v.len() {
            let mut flipped = v.clone();
            flipped[i] = -flipped[i];
            neighbours.push(flipped);
            if i + 1 < v.len() {
                let mut swapped = v.clone();
                swapped.swap(i, i + 1);
                neighbours.push(swapped);
            }
        }
        for w in neighbours {
            if out.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    out
}

/// Orbit representative: absolute values in descending order.
fn orbit_key(t: &[i64]) -> Vec<i64> {
    let mut key: Vec<i64> = t.iter().map(|x| x.abs()).collect();
    key.sort_unstable_by(|a, b| b.cmp(a));
    key
}

/// One signed-permutation orbit of solutions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionOrbit {
    /// Representative with non-negative entries in descending order.
    pub canonical: Solution,
    /// Number of members.
    pub members: usize,
    /// Number of members that come from cores (filled in by
    /// [`orbits_with_parametrization`]).
    pub parametrized_members: usize,
}

/// Groups solutions into signed-permutation orbits (explicit closure).
pub fn orbits_of(solutions: &[Solution]) -> Result<Vec<SolutionOrbit>> {
    let mut groups: BTreeMap<(i64, Vec<i64>), BTreeSet<Vec<i64>>> = BTreeMap::new();
    for s in solutions {
        groups.entry((s.n, orbit_key(&s.t))).or_default().insert(s.t.clone());
    }
    groups
        .into_iter()
        .map(|((n, key), present)| {
            let closure = signed_permutations(&key);
            if closure != present {
                return Err(Error::Inconsistency(format!(
                    "solution set at N={n} is not closed under signed permutations of {key:?}"
                )));
            }
            Ok(SolutionOrbit {
                canonical: Solution { t: key, n },
                members: closure.len(),
                parametrized_members: 0,
            })
        })
        .collect()
}

/// The candidate Uglov vector (t + c)/k when it satisfies the criterion of
/// the charge: integral with j odd entries (whole abaci), integral (half
/// abaci on base 0) or in ℤ + ½ (half abaci on base l or l+1).
pub fn criterion_vector(spec: &EquationSpec, t: &[i64]) -> Option<UglovVector> {
    if t.len() != spec.rank {
        return None;
    }
    let u = UglovVector(
        t.iter()
            .zip(&spec.c)
            .map(|(&x, &c)| Rational::new(x + c, spec.k))
            .collect(),
    );
    if !in_domain(spec, &u) {
        return None;
    }
    if let Some(j) = spec.odd_count {
        if u.odd_count() != j {
            return None;
        }
    }
    Some(u)
}

/// The core whose F-image is `t`, if any. The candidate vector is rebuilt
/// into an abacus by inverse Uglov placement; only a core of exactly this
/// charge counts. A rebuilt abacus that passes the criterion but is not a
/// core, or whose height differs from N, is reported as an inconsistency.
pub fn is_parametrized(
    ctx: &AffineContext,
    spec: &EquationSpec,
    solution: &Solution,
) -> Result<Option<Abacus>> {
    let norm: i64 = solution.t.iter().map(|x| x * x).sum();
    if norm != spec.a * solution.n + spec.b {
        return Err(Error::Domain(format!(
            "{:?} does not solve {spec} at N={}",
            solution.t, solution.n
        )));
    }
    let Some(u) = criterion_vector(spec, &solution.t) else {
        return Ok(None);
    };
    let abacus = match abacus_from_uglov(ctx, spec.charge, &u) {
        Ok(a) => a,
        Err(Error::Shape(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    if !elementary_ops(ctx, &abacus).is_empty() {
        return Err(Error::Inconsistency(format!(
            "solution {:?} passes the criterion but rebuilds to the non-core {abacus}",
            solution.t
        )));
    }
    let height = beta_of(ctx, &abacus)?.height();
    if height != solution.n {
        return Err(Error::Inconsistency(format!(
            "solution {:?} rebuilds to {abacus} of height {height}, not {}",
            solution.t, solution.n
        )));
    }
    Ok(Some(abacus))
}

/// Orbits at height N with their parametrized-member counts.
pub fn orbits_with_parametrization(
    ctx: &AffineContext,
    spec: &EquationSpec,
    n: i64,
) -> Result<Vec<SolutionOrbit>> {
    let mut orbits = orbits_of(&solve(spec, n))?;
    for orbit in &mut orbits {
        let mut count = 0;
        for t in signed_permutations(&orbit.canonical.t) {
            if is_parametrized(ctx, spec, &Solution { t, n })?.is_some() {
                count += 1;
            }
        }
        orbit.parametrized_members = count;
    }
    Ok(orbits)
}

/// Canonical representative of the residue class of t modulo m: residues
/// folded into [0, m/2] and sorted.
pub fn equiv_class(t: &[i64], modulus: i64) -> Vec<i64> {
    let mut rep: Vec<i64> = t
        .iter()
        .map(|x| {
            let r = x.rem_euclid(modulus);
            r.min(modulus - r)
        })
        .collect();
    rep.sort_unstable();
    rep
}

/// How to compute a representation number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RepMethod {
    /// Exhaustive enumeration.
    BruteForce,
    /// Closed formula (two or four squares).
    Formula,
}

/// χ₄(d): 1, −1 or 0 as d ≡ 1, 3 or even mod 4.
pub fn chi4(d: i64) -> i64 {
    match d.rem_euclid(4) {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

fn divisors(n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

fn count_representations(rest: i64, squares: usize) -> u64 {
    if rest < 0 {
        return 0;
    }
    if squares == 0 {
        return u64::from(rest == 0);
    }
    if squares == 1 {
        let root = rest.isqrt();
        return match (root * root == rest, root) {
            (false, _) => 0,
            (true, 0) => 1,
            (true, _) => 2,
        };
    }
    let bound = rest.isqrt();
    (-bound..=bound)
        .map(|x| count_representations(rest - x * x, squares - 1))
        .sum()
}

/// r_k(n): ordered signed representations of n as k squares.
///
/// The two-square formula is 4·Σ_{d|n} χ₄(d); the four-square formula is
/// 8·(2 + (−1)ⁿ)·Σ_{d|n, d odd} d. Both need n ≥ 1; three squares have no
/// closed form here.
pub fn rep_count(n: i64, squares: usize, method: RepMethod) -> Result<u64> {
    if n < 0 {
        return Err(Error::Domain(format!("cannot represent {n}")));
    }
    match method {
        RepMethod::BruteForce => Ok(count_representations(n, squares)),
        RepMethod::Formula => {
            if n == 0 {
                return Err(Error::Scope("closed forms need n ≥ 1".into()));
            }
            match squares {
                2 => {
                    let sum: i64 = divisors(n).into_iter().map(chi4).sum();
                    Ok((4 * sum) as u64)
                }
                4 => {
                    let odd_sum: i64 = divisors(n).into_iter().filter(|d| d % 2 == 1).sum();
                    let sign = if n % 2 == 0 { 3 } else { 1 };
                    Ok((8 * sign * odd_sum) as u64)
                }
                k => Err(Error::Scope(format!("no closed formula for {k} squares"))),
            }
        }
    }
}

/// Closed-form count of j-cores of height N, for the rows covered by the
/// two-, three- and four-square counting theorems (None elsewhere).
pub fn count_cores_by_formula(ctx: &AffineContext, j: usize, n: i64) -> Result<Option<u64>> {
    let l = ctx.rank();
    let odd = n % 2 == 1;
    let row: Option<(i64, usize, u64)> = match (ctx.family(), l, j) {
        (Family::C, 2, 0 | 2) => Some((16 * n + 10, 2, 8)),
        (Family::DTwisted, 2, 0 | 2) => Some((12 * n + 5, 2, 8)),
        (Family::C, 2, 1) => Some((16 * n + 2, 2, 4)),
        (Family::DTwisted, 2, 1) => Some((6 * n + 2, 2, 4)),
        (Family::DTwisted, 3, 2) => Some((8 * n + 6, 3, if odd { 48 } else { 24 })),
        (Family::B, 3, 2) if odd => Some((6 * n + 2, 3, 12)),
        (Family::B, 4, 2) => Some((8 * n + 6, 4, if odd { 192 } else { 96 })),
        (Family::D, 4, 2) if odd => Some((6 * n + 2, 4, 24)),
        _ => None,
    };
    let Some((value, squares, divisor)) = row else {
        return Ok(None);
    };
    let method = if squares == 3 {
        RepMethod::BruteForce
    } else {
        RepMethod::Formula
    };
    let r = rep_count(value, squares, method)?;
    if r % divisor != 0 {
        return Err(Error::Inconsistency(format!(
            "r_{squares}({value}) = {r} is not divisible by {divisor}"
        )));
    }
    Ok(Some(r / divisor))
}

/// Number of j-cores of height N counted on the solution side: solutions
/// passing the criterion (each is the image of exactly one core).
pub fn count_cores_by_solutions(ctx: &AffineContext, spec: &EquationSpec, n: i64) -> Result<u64> {
    let mut count = 0;
    for solution in solve(spec, n) {
        if is_parametrized(ctx, spec, &solution)?.is_some() {
            count += 1;
        }
    }
    Ok(count)
}

/// An orbit with no member coming from a core.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitFailure {
    /// The orbit representative.
    pub canonical: Solution,
    /// Its residue class modulo 2k.
    pub class: Vec<i64>,
}

/// Completeness of the parametrization up to a height bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompletenessReport {
    /// The equation.
    pub equation: String,
    /// Height bound.
    pub max_n: i64,
    /// Orbits examined.
    pub orbits: usize,
    /// Orbits without a parametrized member.
    pub failures: Vec<OrbitFailure>,
}

impl CompletenessReport {
    /// Whether every orbit is parametrized.
    pub fn complete(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks for each N ≤ max_n that every solution orbit has a member coming
/// from a core.
pub fn verify_completeness(
    ctx: &AffineContext,
    spec: &EquationSpec,
    max_n: i64,
) -> Result<CompletenessReport> {
    let per_n = (0..=max_n)
        .into_par_iter()
        .map(|n| orbits_with_parametrization(ctx, spec, n))
        .collect::<Result<Vec<_>>>()?;
    let mut orbits = 0;
    let mut failures = Vec::new();
    for orbit in per_n.into_iter().flatten() {
        orbits += 1;
        if orbit.parametrized_members == 0 {
            failures.push(OrbitFailure {
                class: equiv_class(&orbit.canonical.t, 2 * spec.k),
                canonical: orbit.canonical,
            });
        }
    }
    Ok(CompletenessReport {
        equation: spec.to_string(),
        max_n,
        orbits,
        failures,
    })
}

/// The value 6(k₁² + k₂² + k₃²) + 3k₁ + k₂ + 5k₃.
pub fn c3_form(k: [i64; 3]) -> i64 {
    6 * (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) + 3 * k[0] + k[1] + 5 * k[2]
}

/// Values ≤ h_max of the ternary form 6(k₁²+k₂²+k₃²)+3k₁+k₂+5k₃.
pub fn c3_form_image(h_max: i64) -> BTreeSet<i64> {
    let bound = ((h_max.max(0) as f64 / 6.0).sqrt().ceil() as i64) + 2;
    let mut out = BTreeSet::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                let v = c3_form([a, b, c]);
                if (0..=h_max).contains(&v) {
                    out.insert(v);
                }
            }
        }
    }
    out
}

/// Heights ≤ h_max of charge-0 cores of type C⁽¹⁾ in rank 3, computed by
/// enumeration and by the ternary form; errors if the two disagree.
pub fn c3_size_set(h_max: i64) -> Result<BTreeSet<i64>> {
    let ctx = AffineContext::of(Family::C, 3)?;
    let enumerated: BTreeSet<i64> = enumerate_cores(&ctx, 0, h_max)?
        .iter()
        .map(|rec| rec.height())
        .collect();
    let form = c3_form_image(h_max);
    if enumerated != form {
        let diff: Vec<i64> = enumerated.symmetric_difference(&form).copied().collect();
        return Err(Error::Inconsistency(format!(
            "core heights and form values differ at {diff:?}"
        )));
    }
    Ok(enumerated)
}

/// Values in 0..=h_max missing from a set.
pub fn missing_up_to(set: &BTreeSet<i64>, h_max: i64) -> Vec<i64> {
    (0..=h_max).filter(|n| !set.contains(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abacus::Partition;

    fn ctx(family: Family, l: usize) -> AffineContext {
        AffineContext::of(family, l).unwrap()
    }

    #[test]
    fn tables_match_derivation_everywhere() {
        for family in Family::ALL {
            for l in family.minimum_rank()..=8 {
                let c = ctx(family, l);
                for j in 0..=l {
                    equation_for(&c, j).unwrap();
                }
            }
        }
    }

    #[test]
    fn worked_equations() {
        let c2 = equation_for(&ctx(Family::C, 2), 1).unwrap();
        assert_eq!((c2.a, c2.b, c2.k, c2.c.clone()), (16, 2, 4, vec![3, 1]));
        let d2 = equation_for(&ctx(Family::DTwisted, 2), 1).unwrap();
        assert_eq!((d2.a, d2.b, d2.k, d2.c.clone()), (6, 2, 3, vec![2, 1]));
        let c3 = equation_for(&ctx(Family::C, 3), 0).unwrap();
        assert_eq!((c3.a, c3.b), (24, 35));
        let b3 = equation_for(&ctx(Family::B, 3), 3).unwrap();
        assert_eq!((b3.k, b3.b), (6, 5));
        let half = UglovVector(vec![Rational::half(); 3]);
        assert_eq!(apply_f(&b3, &half).unwrap(), vec![0, 1, 2]);
        assert_eq!(height_from_uglov(&b3, &half).unwrap(), 0);
    }

    #[test]
    fn worked_map_and_height() {
        let d2 = equation_for(&ctx(Family::DTwisted, 2), 1).unwrap();
        let u = UglovVector::from_ints(&[-2, 1]);
        assert_eq!(apply_f(&d2, &u).unwrap(), vec![-8, 2]);
        assert_eq!(height_from_uglov(&d2, &u).unwrap(), 11);
        let c2 = equation_for(&ctx(Family::C, 2), 1).unwrap();
        assert_eq!(height_from_uglov(&c2, &UglovVector::from_ints(&[1, 0])).unwrap(), 0);
        assert!(apply_f(&c2, &UglovVector(vec![Rational::half(); 2])).is_err());
    }

    #[test]
    fn solving_and_orbits() {
        let c2 = equation_for(&ctx(Family::C, 2), 1).unwrap();
        let sols = solve(&c2, 2);
        assert_eq!(sols.len(), 8);
        let orbits = orbits_of(&sols).unwrap();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].canonical.t, vec![5, 3]);
        assert_eq!(orbits[0].members, 8);
        let c20 = equation_for(&ctx(Family::C, 2), 0).unwrap();
        assert!(solve(&c20, 2).is_empty());
        assert_eq!(signed_permutations(&[2, 2]).len(), 4);
        assert_eq!(signed_permutations(&[3, 0]).len(), 4);
    }

    #[test]
    fn parametrization_examples() {
        let d2c = ctx(Family::DTwisted, 2);
        let d2 = equation_for(&d2c, 1).unwrap();
        let core = is_parametrized(&d2c, &d2, &Solution { t: vec![-8, 2], n: 11 })
            .unwrap()
            .unwrap();
        assert_eq!(core.partition(), Some(&Partition::new(vec![4, 2, 1, 1, 1, 1, 1]).unwrap()));
        assert!(is_parametrized(&d2c, &d2, &Solution { t: vec![8, 2], n: 11 })
            .unwrap()
            .is_none());
        let c2c = ctx(Family::C, 2);
        let c2 = equation_for(&c2c, 1).unwrap();
        let core = is_parametrized(&c2c, &c2, &Solution { t: vec![5, 3], n: 2 })
            .unwrap()
            .unwrap();
        assert_eq!(beta_of(&c2c, &core).unwrap().height(), 2);
    }

    #[test]
    fn residue_classes() {
        assert_eq!(equiv_class(&[0, 0, 1, 5], 6), vec![0, 0, 1, 1]);
        assert_eq!(equiv_class(&[1, 3, 7], 12), vec![1, 3, 5]);
        assert_eq!(equiv_class(&[-7, 3, 1], 12), equiv_class(&[1, 3, 7], 12));
    }

    #[test]
    fn representation_numbers() {
        assert_eq!(rep_count(34, 2, RepMethod::BruteForce).unwrap(), 8);
        assert_eq!(rep_count(34, 2, RepMethod::Formula).unwrap(), 8);
        assert_eq!(rep_count(2, 2, RepMethod::Formula).unwrap(), 4);
        assert_eq!(rep_count(6, 4, RepMethod::Formula).unwrap(), 96);
        assert_eq!(rep_count(6, 4, RepMethod::BruteForce).unwrap(), 96);
        assert!(rep_count(6, 3, RepMethod::Formula).is_err());
        assert!(rep_count(0, 2, RepMethod::Formula).is_err());
        for n in 1..200 {
            assert_eq!(
                rep_count(n, 2, RepMethod::Formula).unwrap(),
                rep_count(n, 2, RepMethod::BruteForce).unwrap()
            );
            assert_eq!(
                rep_count(n, 4, RepMethod::Formula).unwrap(),
                rep_count(n, 4, RepMethod::BruteForce).unwrap()
            );
        }
    }

    #[test]
    fn closed_form_counts() {
        let c2 = ctx(Family::C, 2);
        assert_eq!(count_cores_by_formula(&c2, 1, 2).unwrap(), Some(2));
        assert_eq!(count_cores_by_formula(&c2, 1, 0).unwrap(), Some(1));
        assert_eq!(count_cores_by_formula(&ctx(Family::B, 3), 2, 2).unwrap(), None);
    }

    #[test]
    fn ternary_form_small_range() {
        let set = c3_size_set(20).unwrap();
        assert_eq!(missing_up_to(&set, 20), vec![2, 12, 13]);
        assert!(set.contains(&0));
    }
}
