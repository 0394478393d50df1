//! β-sets and their abacus displays: partitions, whole (two-sided) and half
//! (one-sided) abaci, charge, the abacus of each fundamental weight,
//! conjugation, the two-sided completion of a half abacus, double-distinct
//! partitions, and the type-A e-core test.
//!
//! A whole abacus is stored canonically as a partition plus its charge; a
//! half abacus as its base and finite bead set. [`BeadSet`] is the mutable
//! position-level view used by the bead-moving code.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::cartan::{AffineContext, AffineKind, EndShape, Family};
use crate::error::{Error, Result};

/// A partition: a weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<i64>);

impl Partition {
    /// Validates and wraps the parts; zero parts at the end are dropped.
    pub fn new(mut parts: Vec<i64>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.iter().any(|&p| p <= 0) {
            return Err(Error::Domain(format!("partition {parts:?} has a non-positive part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// The empty partition ∅.
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The parts.
    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether this is ∅.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The size |λ|.
    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    /// The i-th part (1-based), zero past the end.
    pub fn part(&self, i: usize) -> i64 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// The conjugate partition λ′.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(1);
        Partition(
            (1..=width)
                .map(|c| self.0.iter().filter(|&&p| p >= c).count() as i64)
                .collect(),
        )
    }

    /// Builds the partition whose Young diagram is the given set of cells
    /// (row, column), both 1-based; errors when the set is not a diagram.
    pub fn from_cells(cells: &BTreeSet<(i64, i64)>) -> Result<Self> {
        let rows = cells.iter().map(|&(r, _)| r).max().unwrap_or(0);
        let mut parts = Vec::new();
        for r in 1..=rows {
            let len = cells.iter().filter(|&&(row, _)| row == r).count() as i64;
            if (1..=len).any(|c| !cells.contains(&(r, c))) {
                return Err(Error::Shape(format!("row {r} of the cell set is not left-justified")));
            }
            parts.push(len);
        }
        Partition::new(parts)
    }

    /// Cells (row, column) of the Young diagram.
    pub fn cells(&self) -> BTreeSet<(i64, i64)> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (1..=p).map(move |c| (r as i64 + 1, c)))
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Mutable set of bead positions: an explicit finite set plus, for whole
/// abaci, every position strictly below `floor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeadSet {
    floor: Option<i64>,
    explicit: BTreeSet<i64>,
}

impl BeadSet {
    /// A one-sided (finite) bead set.
    pub fn finite(beads: impl IntoIterator<Item = i64>) -> Self {
        BeadSet {
            floor: None,
            explicit: beads.into_iter().collect(),
        }
    }

    /// The two-sided β-set β_j(λ).
    pub fn from_partition(partition: &Partition, charge: i64) -> Self {
        let n = partition.len() as i64;
        BeadSet {
            floor: Some(charge - n),
            explicit: partition
                .parts()
                .iter()
                .enumerate()
                .map(|(i, &p)| p - (i as i64 + 1) + charge)
                .collect(),
        }
    }

    /// Whether every position below some bound is a bead.
    pub fn is_two_sided(&self) -> bool {
        self.floor.is_some()
    }

    /// Whether position `x` holds a bead.
    pub fn has(&self, x: i64) -> bool {
        self.explicit.contains(&x) || self.floor.is_some_and(|f| x < f)
    }

    /// Makes every position ≥ `lo` explicit so that it can be edited.
    pub fn materialize_from(&mut self, lo: i64) {
        if let Some(f) = self.floor.as_mut() {
            while *f > lo {
                *f -= 1;
                self.explicit.insert(*f);
            }
        }
    }

    /// Raises the implicit floor as far as possible (canonical form).
    pub fn normalize(&mut self) {
        if let Some(f) = self.floor.as_mut() {
            while self.explicit.remove(f) {
                *f += 1;
            }
        }
    }

    /// Places a bead at `x`.
    pub fn insert(&mut self, x: i64) {
        if self.floor.is_some_and(|f| x < f) {
            return;
        }
        self.explicit.insert(x);
    }

    /// Removes the bead at `x` (materializing the floor if necessary).
    pub fn remove(&mut self, x: i64) {
        if self.floor.is_some_and(|f| x < f) {
            self.materialize_from(x);
        }
        self.explicit.remove(&x);
    }

    /// Sets or clears position `x`.
    pub fn set(&mut self, x: i64, bead: bool) {
        if bead {
            self.insert(x)
        } else {
            self.remove(x)
        }
    }

    /// Largest bead, if any.
    pub fn max_bead(&self) -> Option<i64> {
        self.explicit
            .last()
            .copied()
            .or_else(|| self.floor.map(|f| f - 1))
    }

    /// Smallest empty position of a two-sided set (after normalization).
    pub fn min_gap(&self) -> Option<i64> {
        let f = self.floor?;
        (f..).find(|x| !self.explicit.contains(x))
    }

    /// Smallest explicit bead.
    pub fn min_explicit(&self) -> Option<i64> {
        self.explicit.first().copied()
    }

    /// Explicit beads in increasing order.
    pub fn explicit(&self) -> impl DoubleEndedIterator<Item = i64> + '_ {
        self.explicit.iter().copied()
    }

    /// Number of explicit beads.
    pub fn explicit_len(&self) -> usize {
        self.explicit.len()
    }

    /// The charge s(B) = |B ∩ ℤ≥0| − |ℤ<0 ∖ B| of a two-sided set.
    pub fn charge(&self) -> Option<i64> {
        let f = self.floor?;
        Some(f + self.explicit.range(f..).count() as i64)
    }

    /// The partition determined by a two-sided set, with its charge.
    pub fn to_partition(&self) -> Result<(Partition, i64)> {
        let charge = self
            .charge()
            .ok_or_else(|| Error::Shape("a one-sided bead set has no partition".into()))?;
        let mut normalized = self.clone();
        normalized.normalize();
        let parts: Vec<i64> = normalized
            .explicit
            .iter()
            .rev()
            .enumerate()
            .map(|(i, &b)| b + i as i64 + 1 - charge)
            .collect();
        Ok((Partition::new(parts)?, charge))
    }
}

/// Whether an abacus is two-sided or one-sided.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(untagged)]
pub enum Shape {
    /// A whole abacus, stored as its partition; the charge lives on the
    /// enclosing [`Abacus`].
    Whole {
        /// The partition.
        partition: Partition,
    },
    /// A half abacus with positions ≥ `base`.
    Half {
        /// The smallest position.
        base: i64,
        /// The beads, all ≥ base.
        beads: BTreeSet<i64>,
    },
}

/// The shape of the abacus attached to a fundamental weight Λ_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightShape {
    /// The whole vacuum abacus (∅, j).
    Whole,
    /// A half abacus with the given base and beads.
    Half {
        /// The smallest position.
        base: i64,
        /// The beads.
        beads: Vec<i64>,
    },
}

/// Which abacus represents Λ_j for the given context.
pub fn weight_shape(ctx: &AffineContext, j: usize) -> Result<WeightShape> {
    ctx.check_charge(j)?;
    let l = ctx.rank();
    let family = ctx.family();
    if family == Family::C || ctx.comarks[j] == 2 * ctx.comarks[0] {
        return Ok(WeightShape::Whole);
    }
    let fork_at_zero = family.zero_end() == EndShape::Fork;
    let shape = if j == 0 {
        WeightShape::Half {
            base: 0,
            beads: vec![],
        }
    } else if j == 1 && fork_at_zero {
        WeightShape::Half {
            base: 0,
            beads: vec![0],
        }
    } else if family == Family::D && j == l - 1 {
        WeightShape::Half {
            base: l as i64,
            beads: vec![l as i64],
        }
    } else if family == Family::D && j == l {
        WeightShape::Half {
            base: l as i64,
            beads: vec![],
        }
    } else if family.l_end() == EndShape::Skip && j == l {
        WeightShape::Half {
            base: l as i64 + 1,
            beads: vec![],
        }
    } else {
        return Err(Error::Inconsistency(format!(
            "no weight abacus rule for {} at charge {j}",
            ctx.kind
        )));
    };
    Ok(shape)
}

/// A charged abacus of a given affine type.
///
/// For whole abaci `charge` is the charge of the β-set; for half abaci it is
/// the index j of the fundamental weight whose abacus has the same base and
/// bead-count parity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Abacus {
    /// Family and rank.
    #[serde(skip)]
    pub kind: AffineKind,
    /// The charge j.
    pub charge: usize,
    /// Whole or half bead data.
    #[serde(flatten)]
    pub shape: Shape,
}

impl Abacus {
    /// The whole abacus (λ, j); errors when Λ_j is represented by a half
    /// abacus in this context.
    pub fn from_partition(ctx: &AffineContext, partition: Partition, j: usize) -> Result<Self> {
        match weight_shape(ctx, j)? {
            WeightShape::Whole => Ok(Abacus {
                kind: ctx.kind,
                charge: j,
                shape: Shape::Whole { partition },
            }),
            WeightShape::Half { base, .. } => Err(Error::Shape(format!(
                "charge {j} of {} uses a half abacus with base {base}",
                ctx.kind
            ))),
        }
    }

    /// A half abacus with the given beads, checked against the weight
    /// abacus for charge j (same base, same bead-count parity where that
    /// distinguishes charges sharing a base).
    pub fn from_beads(
        ctx: &AffineContext,
        beads: impl IntoIterator<Item = i64>,
        j: usize,
    ) -> Result<Self> {
        let beads: BTreeSet<i64> = beads.into_iter().collect();
        match weight_shape(ctx, j)? {
            WeightShape::Whole => Err(Error::Shape(format!(
                "charge {j} of {} uses a whole abacus",
                ctx.kind
            ))),
            WeightShape::Half {
                base,
                beads: weight_beads,
            } => {
                if beads.iter().any(|&b| b < base) {
                    return Err(Error::Shape(format!("bead below base {base}")));
                }
                if sibling_charge(ctx, j).is_some()
                    && beads.len() % 2 != weight_beads.len() % 2
                {
                    return Err(Error::Shape(format!(
                        "bead-count parity does not match charge {j}"
                    )));
                }
                Ok(Abacus {
                    kind: ctx.kind,
                    charge: j,
                    shape: Shape::Half { base, beads },
                })
            }
        }
    }

    /// The abacus representing Λ_j.
    pub fn weight(ctx: &AffineContext, j: usize) -> Result<Self> {
        match weight_shape(ctx, j)? {
            WeightShape::Whole => Abacus::from_partition(ctx, Partition::empty(), j),
            WeightShape::Half { beads, .. } => Abacus::from_beads(ctx, beads, j),
        }
    }

    /// Whether this is a half abacus.
    pub fn is_half(&self) -> bool {
        matches!(self.shape, Shape::Half { .. })
    }

    /// The base of a half abacus (None for whole abaci).
    pub fn base(&self) -> Option<i64> {
        match &self.shape {
            Shape::Half { base, .. } => Some(*base),
            Shape::Whole { .. } => None,
        }
    }

    /// The partition and charge of a whole abacus.
    pub fn to_partition(&self) -> Result<(Partition, usize)> {
        match &self.shape {
            Shape::Whole { partition } => Ok((partition.clone(), self.charge)),
            Shape::Half { .. } => Err(Error::Shape("half abacus has no partition".into())),
        }
    }

    /// The partition of a whole abacus, if it is one.
    pub fn partition(&self) -> Option<&Partition> {
        match &self.shape {
            Shape::Whole { partition } => Some(partition),
            Shape::Half { .. } => None,
        }
    }

    /// The position-level bead view.
    pub fn bead_set(&self) -> BeadSet {
        match &self.shape {
            Shape::Whole { partition } => BeadSet::from_partition(partition, self.charge as i64),
            Shape::Half { beads, .. } => BeadSet::finite(beads.iter().copied()),
        }
    }

    /// Rebuilds an abacus of the same kind, charge and shape class from a
    /// bead view.
    pub fn with_beads(&self, beads: &BeadSet) -> Result<Abacus> {
        let shape = match &self.shape {
            Shape::Whole { .. } => {
                let (partition, charge) = beads.to_partition()?;
                if charge != self.charge as i64 {
                    return Err(Error::Inconsistency(format!(
                        "bead move changed the charge from {} to {charge}",
                        self.charge
                    )));
                }
                Shape::Whole { partition }
            }
            Shape::Half { base, .. } => Shape::Half {
                base: *base,
                beads: beads.explicit().collect(),
            },
        };
        Ok(Abacus {
            kind: self.kind,
            charge: self.charge,
            shape,
        })
    }

    /// Whether position `x` holds a bead.
    pub fn has_bead(&self, x: i64) -> bool {
        match &self.shape {
            Shape::Whole { .. } => self.bead_set().has(x),
            Shape::Half { beads, .. } => beads.contains(&x),
        }
    }

    /// The conjugate (λ′, l − j) of a whole abacus.
    pub fn conjugate(&self, ctx: &AffineContext) -> Result<Abacus> {
        let (partition, j) = self.to_partition()?;
        Abacus::from_partition(ctx, partition.conjugate(), ctx.rank() - j)
    }

    /// Canonical sort key: half abaci by bead list, whole by partition.
    pub fn sort_key(&self) -> (usize, Vec<i64>) {
        match &self.shape {
            Shape::Whole { partition } => (0, partition.parts().to_vec()),
            Shape::Half { beads, .. } => (1, beads.iter().copied().collect()),
        }
    }

    /// ASCII drawing: `●` for a bead, `○` for an empty position, `|`
    /// between positions −1 and 0 (whole) or before the base (half).
    pub fn render_ascii(&self) -> String {
        let beads = self.bead_set();
        match &self.shape {
            Shape::Whole { .. } => {
                let lo = beads.min_gap().unwrap_or(0).min(0) - 2;
                let hi = beads.max_bead().unwrap_or(-1).max(-1) + 3;
                let mut out = String::from("… ");
                for x in lo..=hi {
                    if x == 0 {
                        out.push_str("| ");
                    }
                    out.push_str(if beads.has(x) { "● " } else { "○ " });
                }
                out.push('…');
                out
            }
            Shape::Half { base, .. } => {
                let hi = beads.max_bead().unwrap_or(*base).max(*base) + 3;
                let mut out = format!("[{base}] ");
                for x in *base..=hi {
                    out.push_str(if beads.has(x) { "● " } else { "○ " });
                }
                out.push('…');
                out
            }
        }
    }
}

/// For half abaci, another charge whose weight abacus shares the base (the
/// two are then told apart by bead-count parity).
pub fn sibling_charge(ctx: &AffineContext, j: usize) -> Option<usize> {
    let WeightShape::Half { base, .. } = weight_shape(ctx, j).ok()? else {
        return None;
    };
    (0..=ctx.rank()).find(|&other| {
        other != j
            && matches!(weight_shape(ctx, other), Ok(WeightShape::Half { base: b, .. }) if b == base)
    })
}

impl fmt::Display for Abacus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.shape {
            Shape::Whole { partition } => write!(f, "({partition}, {})", self.charge),
            Shape::Half { base, beads } => {
                let list: Vec<String> = beads.iter().map(i64::to_string).collect();
                write!(f, "B≥{base}{{{}}} (charge {})", list.join(","), self.charge)
            }
        }
    }
}

/// Which of the three two-sided completion rules applies to a half abacus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletionCase {
    /// Mirror x ↦ 2k−1−x (no label 0; base 0, or base l for type D⁽¹⁾).
    MirrorOdd,
    /// Mirror x ↦ −2−x (label 0 present; base 0).
    MirrorEven,
    /// Mirror x ↦ 2l−x and drop position l (label l+1 present; base l+1).
    MirrorEvenDropL,
}

/// Selects the completion rule for a half abacus with the given base.
pub fn completion_case(ctx: &AffineContext, base: i64) -> Result<CompletionCase> {
    let l = ctx.rank() as i64;
    let family = ctx.family();
    let mirror_odd = (base == 0 && !ctx.has_zero_index && family != Family::C)
        || (base == l && family == Family::D);
    if mirror_odd {
        Ok(CompletionCase::MirrorOdd)
    } else if base == 0 && ctx.has_zero_index {
        Ok(CompletionCase::MirrorEven)
    } else if base == l + 1 && ctx.has_l_plus_one_index {
        Ok(CompletionCase::MirrorEvenDropL)
    } else {
        Err(Error::Shape(format!(
            "no two-sided completion for base {base} in {}",
            ctx.kind
        )))
    }
}

/// The two-sided β-set associated with a half abacus, as a whole
/// (partition, charge) pair.
pub fn associate_two_sided(
    ctx: &AffineContext,
    base: i64,
    beads: &BTreeSet<i64>,
) -> Result<(Partition, i64)> {
    if beads.iter().any(|&b| b < base) {
        return Err(Error::Shape(format!("bead below base {base}")));
    }
    let case = completion_case(ctx, base)?;
    let l = ctx.rank() as i64;
    let mirror = |x: i64| match case {
        CompletionCase::MirrorOdd => 2 * base - 1 - x,
        CompletionCase::MirrorEven | CompletionCase::MirrorEvenDropL => 2 * base - 2 - x,
    };
    let excluded: BTreeSet<i64> = beads.iter().map(|&x| mirror(x)).collect();
    let lowest = excluded.first().copied().unwrap_or(base).min(base) - 1;
    let mut set = BeadSet {
        floor: Some(lowest),
        explicit: BTreeSet::new(),
    };
    for x in lowest..base {
        let dropped = case == CompletionCase::MirrorEvenDropL && x == l;
        if !excluded.contains(&x) && !dropped {
            set.insert(x);
        }
    }
    for &b in beads {
        set.insert(b);
    }
    set.normalize();
    set.to_partition()
}

/// The shifted Young diagram of a half abacus: row i holds
/// λ_i = a_i − k + i + v_1 − v_i cells starting after column v_i, where
/// a_1 > a_2 > … are the beads, k the base and v the shift vector of the
/// completion case ((0,2,2,4,4,…), (0,1,2,…) or (1,2,3,…)).
pub fn shifted_diagram(
    ctx: &AffineContext,
    base: i64,
    beads: &BTreeSet<i64>,
) -> Result<BTreeSet<(i64, i64)>> {
    if beads.iter().any(|&b| b < base) {
        return Err(Error::Shape(format!("bead below base {base}")));
    }
    let case = completion_case(ctx, base)?;
    let shift = |i: i64| -> i64 {
        match case {
            CompletionCase::MirrorOdd => 2 * (i / 2),
            CompletionCase::MirrorEven => i - 1,
            CompletionCase::MirrorEvenDropL => i,
        }
    };
    let mut cells = BTreeSet::new();
    for (idx, &a) in beads.iter().rev().enumerate() {
        let i = idx as i64 + 1;
        let len = a - base + i + shift(1) - shift(i);
        for c in 1..=len {
            cells.insert((i, shift(i) + c));
        }
    }
    Ok(cells)
}

/// The double-distinct partition λ̈ of a half abacus, built from its
/// shifted Young diagram (independently of [`associate_two_sided`]).
pub fn double_distinct(
    ctx: &AffineContext,
    base: i64,
    beads: &BTreeSet<i64>,
) -> Result<Partition> {
    let shifted = shifted_diagram(ctx, base, beads)?;
    let case = completion_case(ctx, base)?;
    let m = beads.len() as i64;
    let mut cells = shifted.clone();
    match case {
        CompletionCase::MirrorOdd => {
            for i in 1..=m {
                cells.insert((i, i));
            }
            for &(r, c) in &shifted {
                cells.insert((c, r));
            }
        }
        CompletionCase::MirrorEven => {
            for &(r, c) in &shifted {
                cells.insert((c + 1, r));
            }
        }
        CompletionCase::MirrorEvenDropL => {
            for &(r, c) in &shifted {
                cells.insert((c - 1, r));
            }
        }
    }
    Partition::from_cells(&cells)
}

/// Whether the Young diagram of λ has an even number of diagonal nodes.
pub fn is_even(partition: &Partition) -> bool {
    let diagonal = (1..=partition.len())
        .filter(|&i| partition.part(i) >= i as i64)
        .count();
    diagonal % 2 == 0
}

/// Whether λ is an e-core (no hook of length e), via the e-runner abacus:
/// no bead may have an empty position exactly e below it.
pub fn is_core_type_a(partition: &Partition, e: i64) -> Result<bool> {
    if e < 2 {
        return Err(Error::Domain(format!("core modulus {e} must be at least 2")));
    }
    let beads = BeadSet::from_partition(partition, 0);
    let is_core = beads.explicit().all(|b| beads.has(b - e));
    Ok(is_core)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(parts: &[i64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, -1]).is_err());
        assert_eq!(Partition::new(vec![3, 1, 0, 0]).unwrap(), part(&[3, 1]));
        assert_eq!(part(&[5, 2]).conjugate(), part(&[2, 2, 1, 1, 1]));
    }

    #[test]
    fn example_bead_set() {
        let beads = BeadSet::from_partition(&part(&[7, 5, 4, 1, 1]), 0);
        for x in [6, 3, 1, -3, -4, -6, -7, -20] {
            assert!(beads.has(x), "{x}");
        }
        for x in [7, 5, 4, 2, 0, -1, -2, -5] {
            assert!(!beads.has(x), "{x}");
        }
        assert_eq!(beads.charge(), Some(0));
        assert_eq!(beads.to_partition().unwrap(), (part(&[7, 5, 4, 1, 1]), 0));
    }

    #[test]
    fn charged_example_bead_set() {
        let beads = BeadSet::from_partition(&part(&[4, 2, 1, 1, 1, 1, 1]), 1);
        for x in [4, 1, -1, -2, -3, -4, -5, -7, -8] {
            assert!(beads.has(x), "{x}");
        }
        for x in [0, 2, 3, -6] {
            assert!(!beads.has(x), "{x}");
        }
    }

    #[test]
    fn bead_set_edits_keep_partition() {
        let mut beads = BeadSet::from_partition(&part(&[2, 1]), 0);
        beads.materialize_from(-10);
        assert_eq!(beads.to_partition().unwrap(), (part(&[2, 1]), 0));
        beads.remove(-1);
        beads.insert(0);
        assert_eq!(beads.to_partition().unwrap(), (part(&[2, 2]), 0));
        let vacuum = BeadSet::from_partition(&Partition::empty(), 5);
        assert_eq!(vacuum.to_partition().unwrap(), (Partition::empty(), 5));
    }

    #[test]
    fn weight_abaci() {
        let c2 = AffineContext::of(Family::C, 2).unwrap();
        assert_eq!(weight_shape(&c2, 1).unwrap(), WeightShape::Whole);
        let b3 = AffineContext::of(Family::B, 3).unwrap();
        assert_eq!(
            weight_shape(&b3, 0).unwrap(),
            WeightShape::Half { base: 0, beads: vec![] }
        );
        assert_eq!(
            weight_shape(&b3, 3).unwrap(),
            WeightShape::Half { base: 4, beads: vec![] }
        );
        // Every charge of every family resolves to a rule.
        for family in Family::ALL {
            for l in family.minimum_rank()..=6 {
                let ctx = AffineContext::of(family, l).unwrap();
                for j in 0..=l {
                    let abacus = Abacus::weight(&ctx, j).unwrap();
                    assert_eq!(abacus.charge, j);
                }
            }
        }
    }

    #[test]
    fn conjugation() {
        let c2 = AffineContext::of(Family::C, 2).unwrap();
        let a = Abacus::from_partition(&c2, part(&[5, 2]), 1).unwrap();
        let conj = a.conjugate(&c2).unwrap();
        assert_eq!(conj.to_partition().unwrap(), (part(&[2, 2, 1, 1, 1]), 1));
        assert_eq!(conj.conjugate(&c2).unwrap(), a);
        let vac = Abacus::weight(&c2, 0).unwrap();
        assert_eq!(vac.conjugate(&c2).unwrap().to_partition().unwrap(), (Partition::empty(), 2));
        let b3 = AffineContext::of(Family::B, 3).unwrap();
        assert!(Abacus::weight(&b3, 0).unwrap().conjugate(&b3).is_err());
        assert!(Abacus::from_partition(&b3, part(&[1]), 0).is_err());
    }

    #[test]
    fn two_sided_completion_example() {
        let b3 = AffineContext::of(Family::B, 3).unwrap();
        let beads: BTreeSet<i64> = [0, 3, 5, 7, 8, 10].into_iter().collect();
        let expected = part(&[11, 10, 10, 9, 8, 6, 5, 5, 4, 3, 1]);
        assert_eq!(associate_two_sided(&b3, 0, &beads).unwrap(), (expected.clone(), 0));
        assert_eq!(double_distinct(&b3, 0, &beads).unwrap(), expected);
        let empty = BTreeSet::new();
        assert_eq!(associate_two_sided(&b3, 0, &empty).unwrap(), (Partition::empty(), 0));
        assert_eq!(double_distinct(&b3, 0, &empty).unwrap(), Partition::empty());
    }

    #[test]
    fn evenness_and_type_a_cores() {
        assert!(is_even(&Partition::empty()));
        assert!(!is_even(&part(&[1])));
        assert!(is_even(&part(&[11, 10, 10, 9, 8, 6, 5, 5, 4, 3, 1])));
        assert!(is_core_type_a(&Partition::empty(), 3).unwrap());
        assert!(!is_core_type_a(&part(&[2, 1]), 3).unwrap());
        assert!(is_core_type_a(&part(&[3, 1, 1]), 4).unwrap());
        assert!(is_core_type_a(&part(&[1]), 1).is_err());
    }
}
