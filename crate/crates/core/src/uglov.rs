//! The Uglov map: restacking an abacus into l runners (plus the half
//! columns carrying labels 0 and l+1), runner charges and Uglov vectors,
//! elementary operations (computed natively on the abacus and checked
//! against the runner display), the three-way core test, the action of the
//! generators on Uglov vectors, the inverse placement from a vector back to
//! a core, and comparisons with type-A cores.
//!
//! Display geometry. A position x with label ±i sits on runner i; positions
//! with label 0 or l+1 sit on half columns, which are bounded above by a
//! top row. Cells coming from negative labels (and from the negative part of
//! a whole abacus) show the reversed colour: a cell is "on" iff the position
//! holds a bead XOR the cell is reversed. On every runner the cells are on
//! far below and off far above, so each runner is itself a β-set whose
//! charge is (#on rows ≥ 1) − (#off rows ≤ 0).

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::abacus::{
    associate_two_sided, double_distinct, is_core_type_a, is_even, Abacus, BeadSet, Partition,
    Shape,
};
use crate::action::{beta_of, grassmannian_word, WeylWord};
use crate::cartan::{AffineContext, EndShape, Family, RootCoords};
use crate::error::{Error, Result};
use crate::exactnum::{QVector, Quad2, Rational};

/// A column of the Uglov display.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ColumnId {
    /// Runner i (1 ≤ i ≤ l), carrying labels i and −i.
    Runner(usize),
    /// The half column of label 0.
    ZeroColumn,
    /// The half column of label l+1.
    TopColumn,
}

/// Where a position lands in the display.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cell {
    /// Column.
    pub column: ColumnId,
    /// Row.
    pub row: i64,
    /// Whether the cell shows the reversed colour of its position.
    pub reversed: bool,
}

/// Placement rules of one context and abacus shape (whole, or half with a
/// given base).
#[derive(Clone, Copy, Debug)]
pub struct Geometry<'a> {
    ctx: &'a AffineContext,
    base: Option<i64>,
}

impl<'a> Geometry<'a> {
    /// Geometry for a whole abacus (`base = None`) or a half abacus.
    pub fn new(ctx: &'a AffineContext, base: Option<i64>) -> Self {
        Geometry { ctx, base }
    }

    /// Geometry of an abacus.
    pub fn of(ctx: &'a AffineContext, abacus: &Abacus) -> Self {
        Geometry::new(ctx, abacus.base())
    }

    fn period(&self) -> i64 {
        self.ctx.period
    }

    /// Whether the base is l or l+1 (rows then sit on a half-shifted grid).
    fn upper_base(&self) -> bool {
        self.base.is_some_and(|b| b > 0)
    }

    /// The columns of the display: runners 1..l, then the half columns.
    pub fn columns(&self) -> Vec<ColumnId> {
        let mut out: Vec<ColumnId> = (1..=self.ctx.rank()).map(ColumnId::Runner).collect();
        if self.ctx.has_zero_index {
            out.push(ColumnId::ZeroColumn);
        }
        if self.ctx.has_l_plus_one_index {
            out.push(ColumnId::TopColumn);
        }
        out
    }

    /// The top (smallest) row of a half column; None for runners.
    pub fn top_row(&self, column: ColumnId) -> Option<i64> {
        match column {
            ColumnId::Runner(_) => None,
            ColumnId::ZeroColumn if self.base.is_none() => Some(2),
            _ => Some(1),
        }
    }

    /// The runner label shown in the display header.
    pub fn label(&self, column: ColumnId) -> i64 {
        match column {
            ColumnId::Runner(i) => i as i64,
            ColumnId::ZeroColumn => 0,
            ColumnId::TopColumn => self.ctx.rank() as i64 + 1,
        }
    }

    /// The cell of position x (None below the base of a half abacus).
    pub fn cell_of(&self, x: i64) -> Option<Cell> {
        if self.base.is_some_and(|b| x < b) {
            return None;
        }
        let period = self.period();
        let section = x.div_euclid(period);
        let label = self.ctx.index_alphabet[x.rem_euclid(period) as usize];
        let l = self.ctx.rank() as i64;
        let cell = |column, row, reversed| Some(Cell { column, row, reversed });
        match self.base {
            None => match label {
                0 if x >= 0 => cell(ColumnId::ZeroColumn, 2 * section + 3, false),
                0 => cell(ColumnId::ZeroColumn, -2 * section, true),
                lab if lab == l + 1 && x >= 0 => cell(ColumnId::TopColumn, 2 * section + 1, false),
                lab if lab == l + 1 => cell(ColumnId::TopColumn, -2 * section, true),
                lab if lab > 0 => cell(ColumnId::Runner(lab as usize), 2 * section + 1, false),
                lab => cell(ColumnId::Runner((-lab) as usize), -2 * section, true),
            },
            Some(_) => {
                let upper = self.upper_base();
                match label {
                    0 => cell(ColumnId::ZeroColumn, section + 1, false),
                    lab if lab == l + 1 => {
                        cell(ColumnId::TopColumn, if upper { section } else { section + 1 }, false)
                    }
                    lab if lab > 0 => cell(ColumnId::Runner(lab as usize), section + 1, false),
                    lab => cell(
                        ColumnId::Runner((-lab) as usize),
                        if upper { 1 - section } else { -section },
                        true,
                    ),
                }
            }
        }
    }

    /// The position shown at a cell, with its reversal flag (None when the
    /// cell does not exist).
    pub fn position_of(&self, column: ColumnId, row: i64) -> Option<(i64, bool)> {
        let period = self.period();
        let l = self.ctx.rank() as i64;
        let residue_of = |label: i64| self.ctx.residue_of_label(label);
        if let Some(top) = self.top_row(column) {
            if row < top {
                return None;
            }
        }
        let located = match (self.base, column) {
            (None, ColumnId::Runner(i)) => {
                let i = i as i64;
                if row.rem_euclid(2) == 1 {
                    ((row - 1) / 2 * period + residue_of(i)?, false)
                } else {
                    ((-row / 2) * period + residue_of(-i)?, true)
                }
            }
            (None, ColumnId::ZeroColumn) => {
                let r = residue_of(0)?;
                if row.rem_euclid(2) == 1 {
                    ((row - 3) / 2 * period + r, false)
                } else {
                    ((-row / 2) * period + r, true)
                }
            }
            (None, ColumnId::TopColumn) => {
                let r = residue_of(l + 1)?;
                if row.rem_euclid(2) == 1 {
                    ((row - 1) / 2 * period + r, false)
                } else {
                    ((-row / 2) * period + r, true)
                }
            }
            (Some(_), ColumnId::Runner(i)) => {
                let i = i as i64;
                let split = if self.upper_base() { 2 } else { 1 };
                if row >= split {
                    ((row - 1) * period + residue_of(i)?, false)
                } else {
                    let section = if self.upper_base() { 1 - row } else { -row };
                    (section * period + residue_of(-i)?, true)
                }
            }
            (Some(_), ColumnId::ZeroColumn) => ((row - 1) * period + residue_of(0)?, false),
            (Some(_), ColumnId::TopColumn) => {
                let section = if self.upper_base() { row } else { row - 1 };
                (section * period + residue_of(l + 1)?, false)
            }
        };
        if self.base.is_some_and(|b| located.0 < b) {
            return None;
        }
        Some(located)
    }

    /// Whether a cell is on for the given beads.
    pub fn is_on(&self, beads: &BeadSet, column: ColumnId, row: i64) -> bool {
        match self.position_of(column, row) {
            Some((x, reversed)) => beads.has(x) != reversed,
            None => false,
        }
    }

    /// A row bound beyond which every cell shows its default colour.
    fn row_bound(&self, beads: &BeadSet) -> i64 {
        let lo = match self.base {
            Some(b) => b,
            None => beads.min_gap().unwrap_or(0) - 1,
        };
        let hi = beads.max_bead().unwrap_or(0).max(lo) + 1;
        let sections = (lo.abs().max(hi.abs())) / self.period() + 1;
        2 * sections + 4
    }
}

/// One column of a rendered display over a finite row window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DisplayColumn {
    /// Which column.
    pub column: ColumnId,
    /// Header label (i for runner i, 0 or l+1 for half columns).
    pub label: i64,
    /// Top row of a half column.
    pub top: Option<i64>,
    /// Lowest row of the window; runner rows below it are on.
    pub lowest_row: i64,
    /// Highest row of the window; rows above it are off.
    pub highest_row: i64,
    /// Rows inside the window that are on.
    pub on_rows: Vec<i64>,
}

impl DisplayColumn {
    /// Whether a row is on.
    pub fn is_on(&self, row: i64) -> bool {
        if self.top.is_some_and(|t| row < t) {
            return false;
        }
        if row < self.lowest_row {
            return self.top.is_none();
        }
        row <= self.highest_row && self.on_rows.binary_search(&row).is_ok()
    }

    /// The β-set charge of a runner: (#on rows ≥ 1) − (#off rows ≤ 0).
    pub fn charge(&self) -> i64 {
        let on_above = self.on_rows.iter().filter(|&&r| r >= 1).count() as i64;
        let off_below = (self.lowest_row..=0).filter(|&r| !self.is_on(r)).count() as i64;
        on_above - off_below
    }
}

/// The Uglov image of an abacus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UglovDisplay {
    /// Runners 1..l followed by the half columns present.
    pub columns: Vec<DisplayColumn>,
}

impl UglovDisplay {
    /// Runner charges s_1..s_l.
    pub fn runner_charges(&self) -> Vec<i64> {
        self.columns
            .iter()
            .filter(|c| matches!(c.column, ColumnId::Runner(_)))
            .map(DisplayColumn::charge)
            .collect()
    }

    /// Text grid: one line per row (highest first), ● on, ○ off, blank for
    /// nonexistent cells.
    pub fn render_ascii(&self) -> String {
        let hi = self.columns.iter().map(|c| c.highest_row).max().unwrap_or(0);
        let lo = self.columns.iter().map(|c| c.lowest_row).min().unwrap_or(0);
        let mut out = String::from("row |");
        for c in &self.columns {
            out.push_str(&format!("{:>3}", c.label));
        }
        out.push('\n');
        for row in (lo..=hi).rev() {
            out.push_str(&format!("{row:>3} |"));
            for c in &self.columns {
                let glyph = if c.top.is_some_and(|t| row < t) {
                    " "
                } else if c.is_on(row) {
                    "●"
                } else {
                    "○"
                };
                out.push_str(&format!("  {glyph}"));
            }
            out.push('\n');
        }
        out
    }
}

/// The Uglov display of a bead set in the given geometry.
pub fn display_of_beads(geometry: &Geometry<'_>, beads: &BeadSet) -> UglovDisplay {
    let bound = geometry.row_bound(beads);
    let columns = geometry
        .columns()
        .into_iter()
        .map(|column| {
            let top = geometry.top_row(column);
            let lowest_row = top.unwrap_or(-bound);
            let on_rows = (lowest_row..=bound)
                .filter(|&r| geometry.is_on(beads, column, r))
                .collect();
            DisplayColumn {
                column,
                label: geometry.label(column),
                top,
                lowest_row,
                highest_row: bound,
                on_rows,
            }
        })
        .collect();
    UglovDisplay { columns }
}

/// The Uglov display of an abacus.
pub fn uglov_map(ctx: &AffineContext, abacus: &Abacus) -> UglovDisplay {
    display_of_beads(&Geometry::of(ctx, abacus), &abacus.bead_set())
}

/// Runner charges of an abacus's display.
pub fn runner_charges(ctx: &AffineContext, abacus: &Abacus) -> Vec<i64> {
    uglov_map(ctx, abacus).runner_charges()
}

/// An Uglov vector u_1..u_l (integers, or elements of ℤ−½ for half abaci
/// with base l or l+1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct UglovVector(pub Vec<Rational>);

impl UglovVector {
    /// From integer entries.
    pub fn from_ints(values: &[i64]) -> Self {
        UglovVector(values.iter().map(|&v| Rational::from_int(v)).collect())
    }

    /// The entries.
    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether the vector has no entries.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of odd integer entries.
    pub fn odd_count(&self) -> usize {
        self.0
            .iter()
            .filter(|x| x.is_integer() && x.to_i64().is_some_and(|v| v.rem_euclid(2) == 1))
            .count()
    }

    /// Entrywise multiple.
    pub fn scale(&self, factor: &Rational) -> UglovVector {
        UglovVector(self.0.iter().map(|x| x * factor).collect())
    }
}

impl fmt::Display for UglovVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Uglov vector of a bead set: runner charges, shifted by −½ for half
/// abaci with base l or l+1.
pub fn uglov_vector_of_beads(geometry: &Geometry<'_>, beads: &BeadSet) -> UglovVector {
    let shift = if geometry.upper_base() {
        Rational::half()
    } else {
        Rational::zero()
    };
    UglovVector(
        display_of_beads(geometry, beads)
            .runner_charges()
            .into_iter()
            .map(|s| &Rational::from_int(s) - &shift)
            .collect(),
    )
}

/// The Uglov vector of an abacus.
pub fn uglov_vector(ctx: &AffineContext, abacus: &Abacus) -> UglovVector {
    uglov_vector_of_beads(&Geometry::of(ctx, abacus), &abacus.bead_set())
}

/// The weighted Uglov vector: u scaled by √2/2 (type C⁽¹⁾), √2 (type D⁽²⁾)
/// or 1.
pub fn weighted_uglov(ctx: &AffineContext, u: &UglovVector) -> QVector {
    let weight = ctx.family().uglov_weight();
    QVector::new(
        u.0.iter()
            .map(|x| &Quad2::from_rational(x.clone()) * &weight)
            .collect(),
    )
}

/// The action of σ_i on Uglov vectors of charge-j abaci.
pub fn sigma_on_uglov(
    ctx: &AffineContext,
    j: usize,
    u: &UglovVector,
    i: usize,
) -> Result<UglovVector> {
    let l = ctx.rank();
    ctx.check_charge(j)?;
    if u.len() != l {
        return Err(Error::DimensionMismatch { left: u.len(), right: l });
    }
    if i > l {
        return Err(Error::Domain(format!("node {i} outside 0..={l}")));
    }
    let mut v = u.0.clone();
    let ratio = ctx.comark_ratio(j);
    if i == 0 {
        match ctx.family().zero_end() {
            EndShape::Fork => {
                let (a, b) = (v[0].clone(), v[1].clone());
                v[0] = &ratio - &b;
                v[1] = &ratio - &a;
            }
            EndShape::Skip => v[0] = &ratio - &v[0],
            EndShape::Simple => v[0] = &(&ratio * &Rational::from_int(2)) - &v[0],
        }
    } else if i == l {
        if ctx.family() == Family::D {
            let (a, b) = (v[l - 2].clone(), v[l - 1].clone());
            v[l - 2] = -b;
            v[l - 1] = -a;
        } else {
            v[l - 1] = -v[l - 1].clone();
        }
    } else {
        v.swap(i - 1, i);
    }
    Ok(UglovVector(v))
}

/// An elementary operation on an abacus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ElementaryOp {
    /// Put beads on two empty 0-adjoint positions.
    FillPair {
        /// Smaller position.
        first: i64,
        /// Larger position.
        second: i64,
    },
    /// Remove the beads on two l-adjoint positions.
    RemovePair {
        /// Smaller position.
        first: i64,
        /// Larger position.
        second: i64,
    },
    /// Move a bead down by one period.
    Slide {
        /// Source position.
        from: i64,
        /// Target position.
        to: i64,
    },
    /// Set or remove a single bead (the top cell of a half column).
    ToggleSingle {
        /// The position.
        position: i64,
        /// True when a bead is placed, false when one is removed.
        fill: bool,
    },
}

impl ElementaryOp {
    /// Positions whose bead state the operation flips.
    pub fn positions(&self) -> BTreeSet<i64> {
        match *self {
            ElementaryOp::FillPair { first, second } | ElementaryOp::RemovePair { first, second } => {
                [first, second].into_iter().collect()
            }
            ElementaryOp::Slide { from, to } => [from, to].into_iter().collect(),
            ElementaryOp::ToggleSingle { position, .. } => [position].into_iter().collect(),
        }
    }

    /// Whether the operation is of the second kind (top of a half column).
    pub fn is_second_kind(&self) -> bool {
        matches!(self, ElementaryOp::ToggleSingle { .. })
    }
}

impl fmt::Display for ElementaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementaryOp::FillPair { first, second } => write!(f, "fill {first},{second}"),
            ElementaryOp::RemovePair { first, second } => write!(f, "remove {first},{second}"),
            ElementaryOp::Slide { from, to } => write!(f, "slide {from}→{to}"),
            ElementaryOp::ToggleSingle { position, fill: true } => write!(f, "fill {position}"),
            ElementaryOp::ToggleSingle { position, fill: false } => write!(f, "remove {position}"),
        }
    }
}

/// Sum of two 0-adjoint positions.
fn zero_adjoint_sum(ctx: &AffineContext) -> i64 {
    if ctx.has_zero_index {
        -2
    } else {
        -1
    }
}

/// Sum of two l-adjoint positions for the given base.
fn l_adjoint_sum(ctx: &AffineContext, base: Option<i64>) -> i64 {
    let l = ctx.rank() as i64;
    match base {
        Some(b) if b > 0 => 2 * ctx.period - 1 - i64::from(ctx.has_zero_index),
        _ => 2 * l - 1 + i64::from(ctx.has_l_plus_one_index),
    }
}

/// Elementary operations on a bead set, computed from adjoint positions and
/// period slides.
pub fn elementary_ops_on_beads(
    ctx: &AffineContext,
    beads: &BeadSet,
    base: Option<i64>,
) -> Vec<ElementaryOp> {
    let mut ops = BTreeSet::new();
    let max_bead = beads.max_bead().unwrap_or(-1);
    let removal_sum = l_adjoint_sum(ctx, base);
    let lowest = base.unwrap_or_else(|| removal_sum - max_bead);
    for x in lowest..=removal_sum.div_euclid(2) {
        let y = removal_sum - x;
        if beads.has(x) && beads.has(y) {
            ops.insert(if x == y {
                ElementaryOp::ToggleSingle { position: x, fill: false }
            } else {
                ElementaryOp::RemovePair { first: x, second: y }
            });
        }
    }
    match base {
        None => {
            let fill_sum = zero_adjoint_sum(ctx);
            let start = beads.min_gap().unwrap_or(0);
            for x in start..=fill_sum.div_euclid(2) {
                let y = fill_sum - x;
                if !beads.has(x) && !beads.has(y) {
                    ops.insert(if x == y {
                        ElementaryOp::ToggleSingle { position: x, fill: true }
                    } else {
                        ElementaryOp::FillPair { first: x, second: y }
                    });
                }
            }
        }
        Some(b) => {
            let period = ctx.period;
            for y in beads.explicit() {
                if y - period >= b && !beads.has(y - period) {
                    ops.insert(ElementaryOp::Slide { from: y, to: y - period });
                }
            }
            let l = ctx.rank() as i64;
            if b == 0 && ctx.has_zero_index && beads.has(period - 1) {
                ops.insert(ElementaryOp::ToggleSingle { position: period - 1, fill: false });
            }
            if b > 0 && ctx.has_l_plus_one_index && beads.has(period + l) {
                ops.insert(ElementaryOp::ToggleSingle { position: period + l, fill: false });
            }
        }
    }
    ops.into_iter().collect()
}

/// Elementary operations available on an abacus.
pub fn elementary_ops(ctx: &AffineContext, abacus: &Abacus) -> Vec<ElementaryOp> {
    elementary_ops_on_beads(ctx, &abacus.bead_set(), abacus.base())
}

/// Applies an elementary operation.
pub fn apply_elementary_op(abacus: &Abacus, op: &ElementaryOp) -> Result<Abacus> {
    let mut beads = abacus.bead_set();
    for x in op.positions() {
        let has = beads.has(x);
        beads.set(x, !has);
    }
    beads.normalize();
    let mut out = abacus.with_beads(&beads);
    if let (Err(_), Shape::Whole { .. }) = (&out, &abacus.shape) {
        // A whole-abacus operation changes the charge by ±2 or ±1; report the
        // resulting β-set without forcing the original charge.
        let (partition, charge) = beads.to_partition()?;
        out = Ok(Abacus {
            kind: abacus.kind,
            charge: charge.max(0) as usize,
            shape: Shape::Whole { partition },
        });
    }
    out
}

/// A display-side elementary operation: the flipped positions and whether
/// it is of the second kind.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DisplayOp {
    /// Positions whose bead state flips.
    pub positions: BTreeSet<i64>,
    /// Whether it removes the top cell of a half column.
    pub second_kind: bool,
}

/// Elementary operations read off the display: a first-kind operation moves
/// an on cell to the off cell directly below it in the same column
/// (row x → x−1); a second-kind operation clears the on top cell of a half
/// column. Used as an oracle for [`elementary_ops`].
pub fn display_ops(ctx: &AffineContext, abacus: &Abacus) -> Vec<DisplayOp> {
    let geometry = Geometry::of(ctx, abacus);
    let beads = abacus.bead_set();
    let bound = geometry.row_bound(&beads);
    let mut out = BTreeSet::new();
    for column in geometry.columns() {
        let top = geometry.top_row(column);
        let first_row = top.map_or(-bound, |t| t + 1);
        for row in first_row..=bound {
            if geometry.position_of(column, row - 1).is_none() {
                continue;
            }
            if geometry.is_on(&beads, column, row) && !geometry.is_on(&beads, column, row - 1) {
                let (x, _) = geometry.position_of(column, row).expect("cell exists");
                let (y, _) = geometry.position_of(column, row - 1).expect("cell exists");
                out.insert(DisplayOp {
                    positions: [x, y].into_iter().collect(),
                    second_kind: false,
                });
            }
        }
        if let Some(t) = top {
            if let Some((x, _)) = geometry.position_of(column, t) {
                if geometry.is_on(&beads, column, t) {
                    out.insert(DisplayOp {
                        positions: [x].into_iter().collect(),
                        second_kind: true,
                    });
                }
            }
        }
    }
    out.into_iter().collect()
}

/// The three equivalent core criteria evaluated independently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreCertificate {
    /// No elementary operation applies.
    pub no_elementary_ops: bool,
    /// The elementary operations found.
    pub ops: Vec<ElementaryOp>,
    /// Descent reaches the weight abacus and the word replays to the abacus.
    pub in_orbit: bool,
    /// The Grassmannian word when in the orbit.
    pub word: Option<WeylWord>,
    /// β when known (from the descent, or supplied).
    pub beta: Option<RootCoords>,
    /// Whether def(Λ_j − β) = 0, when β is known.
    pub defect_zero: Option<bool>,
}

impl CoreCertificate {
    /// Whether all evaluated criteria agree.
    pub fn consistent(&self) -> bool {
        self.no_elementary_ops == self.in_orbit
            && self.defect_zero.is_none_or(|d| d == self.no_elementary_ops)
    }
}

/// Whether no elementary operation can be done.
pub fn is_core(ctx: &AffineContext, abacus: &Abacus) -> bool {
    elementary_ops(ctx, abacus).is_empty()
}

/// Evaluates all three core criteria. `known_beta` supplies β for abaci
/// outside the orbit (where descent cannot recover it).
pub fn core_certificate(
    ctx: &AffineContext,
    abacus: &Abacus,
    known_beta: Option<&RootCoords>,
) -> Result<CoreCertificate> {
    let ops = elementary_ops(ctx, abacus);
    let word = match grassmannian_word(ctx, abacus) {
        Ok(w) => Some(w),
        Err(Error::NotACore(_)) | Err(Error::NotInOrbit(_)) => None,
        Err(e) => return Err(e),
    };
    let beta = match (&word, known_beta) {
        (Some(_), _) => Some(beta_of(ctx, abacus)?),
        (None, Some(b)) => Some(b.clone()),
        (None, None) => None,
    };
    let defect_zero = beta.as_ref().map(|b| ctx.defect(abacus.charge, b).is_zero());
    Ok(CoreCertificate {
        no_elementary_ops: ops.is_empty(),
        ops,
        in_orbit: word.is_some(),
        word,
        beta,
        defect_zero,
    })
}

/// Rebuilds the core abacus of charge j whose Uglov vector is `u`: every
/// runner is justified at its charge, half columns are empty.
///
/// Errors with a shape error when the vector has the wrong domain or the
/// rebuilt abacus belongs to a different charge.
pub fn abacus_from_uglov(ctx: &AffineContext, j: usize, u: &UglovVector) -> Result<Abacus> {
    let l = ctx.rank();
    if u.len() != l {
        return Err(Error::DimensionMismatch { left: u.len(), right: l });
    }
    let weight = Abacus::weight(ctx, j)?;
    let geometry = Geometry::of(ctx, &weight);
    let shift = if geometry.upper_base() {
        Rational::half()
    } else {
        Rational::zero()
    };
    let charges = u
        .0
        .iter()
        .map(|x| {
            (x + &shift)
                .to_i64()
                .ok_or_else(|| Error::Shape(format!("Uglov entry {x} has the wrong domain")))
        })
        .collect::<Result<Vec<i64>>>()?;
    let extent = charges.iter().map(|s| s.abs()).max().unwrap_or(0) + 3;
    let reach = (extent + 2) * ctx.period;
    let on = |column: ColumnId, row: i64| match column {
        ColumnId::Runner(i) => row <= charges[i - 1],
        _ => false,
    };
    let lo = weight.base().unwrap_or(-reach);
    let mut beads = match weight.base() {
        Some(_) => BeadSet::finite([]),
        None => BeadSet::from_partition(&Partition::empty(), lo),
    };
    for x in lo..=reach {
        let cell = geometry
            .cell_of(x)
            .ok_or_else(|| Error::Inconsistency(format!("position {x} has no cell")))?;
        beads.set(x, on(cell.column, cell.row) != cell.reversed);
    }
    beads.normalize();
    match &weight.shape {
        Shape::Whole { .. } => {
            let (partition, charge) = beads.to_partition()?;
            if charge != j as i64 {
                return Err(Error::Shape(format!(
                    "vector {u} places a β-set of charge {charge}, not {j}"
                )));
            }
            Abacus::from_partition(ctx, partition, j)
        }
        Shape::Half { .. } => Abacus::from_beads(ctx, beads.explicit(), j),
    }
}

/// Which comparison with type-A cores applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TypeAComparison {
    /// Charge 0 of C⁽¹⁾: λ is a self-conjugate 2l-core.
    SelfConjugateWhole,
    /// Charge l of A₂ₗ₋₁⁽²⁾: λ is a self-conjugate 2l-core.
    SelfConjugateWholeAtL,
    /// Charge 0 of D⁽¹⁾ and A₂ₗ₋₁⁽²⁾: λ̈ is an even self-conjugate 2l-core.
    EvenSelfConjugateDouble,
    /// Charge 0 of A₂ₗ⁽²⁾: λ̈ is a (2l+1)-core.
    DoubleCoreOdd,
    /// Charge 0 of B⁽¹⁾: λ̈ is an even self-conjugate (2l+1)-core.
    EvenSelfConjugateDoubleOdd,
    /// Charge 0 of D⁽²⁾: λ̈ is a (2l+2)-core.
    DoubleCoreEven,
}

/// Outcome of a comparison with type-A cores.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeAReport {
    /// Which comparison was evaluated.
    pub comparison: TypeAComparison,
    /// The partition tested on the type-A side (λ or λ̈).
    pub tested: Partition,
    /// Whether the abacus is a core of its own type.
    pub is_core_here: bool,
    /// Whether the type-A condition holds.
    pub type_a_side: bool,
}

impl TypeAReport {
    /// Whether the two sides agree.
    pub fn equivalent(&self) -> bool {
        self.is_core_here == self.type_a_side
    }
}

/// Compares the core property with the matching type-A condition.
pub fn compare_type_a(ctx: &AffineContext, abacus: &Abacus) -> Result<TypeAReport> {
    let l = ctx.rank() as i64;
    let family = ctx.family();
    let j = abacus.charge;
    let self_conjugate = |p: &Partition| p.conjugate() == *p;
    let (comparison, tested) = match (&abacus.shape, family, j) {
        (Shape::Whole { partition }, Family::C, 0) => {
            (TypeAComparison::SelfConjugateWhole, partition.clone())
        }
        (Shape::Whole { partition }, Family::A2lMinus1Twisted, jj) if jj as i64 == l => {
            (TypeAComparison::SelfConjugateWholeAtL, partition.clone())
        }
        (Shape::Half { base: 0, beads }, _, 0) => {
            let double = double_distinct(ctx, 0, beads)?;
            let comparison = match family {
                Family::D | Family::A2lMinus1Twisted => TypeAComparison::EvenSelfConjugateDouble,
                Family::A2lTwisted => TypeAComparison::DoubleCoreOdd,
                Family::B => TypeAComparison::EvenSelfConjugateDoubleOdd,
                Family::DTwisted => TypeAComparison::DoubleCoreEven,
                Family::C => unreachable!("type C has no half abaci"),
            };
            (comparison, double)
        }
        _ => {
            return Err(Error::Scope(format!(
                "no type-A comparison for {} at charge {j}",
                ctx.kind
            )))
        }
    };
    let type_a_side = match comparison {
        TypeAComparison::SelfConjugateWhole | TypeAComparison::SelfConjugateWholeAtL => {
            self_conjugate(&tested) && is_core_type_a(&tested, 2 * l)?
        }
        TypeAComparison::EvenSelfConjugateDouble => {
            is_even(&tested) && self_conjugate(&tested) && is_core_type_a(&tested, 2 * l)?
        }
        TypeAComparison::DoubleCoreOdd => is_core_type_a(&tested, 2 * l + 1)?,
        TypeAComparison::EvenSelfConjugateDoubleOdd => {
            is_even(&tested) && self_conjugate(&tested) && is_core_type_a(&tested, 2 * l + 1)?
        }
        TypeAComparison::DoubleCoreEven => is_core_type_a(&tested, 2 * l + 2)?,
    };
    Ok(TypeAReport {
        comparison,
        tested,
        is_core_here: is_core(ctx, abacus),
        type_a_side,
    })
}

/// The Uglov vector of the two-sided completion of a half abacus, read
/// with the whole-abacus placement rules.
pub fn doubled_uglov_vector(ctx: &AffineContext, abacus: &Abacus) -> Result<UglovVector> {
    let Shape::Half { base, beads } = &abacus.shape else {
        return Err(Error::Shape("doubling needs a half abacus".into()));
    };
    let (partition, charge) = associate_two_sided(ctx, *base, beads)?;
    let whole = BeadSet::from_partition(&partition, charge);
    Ok(uglov_vector_of_beads(&Geometry::new(ctx, None), &whole))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{apply_word, enumerate_cores};

    fn ctx(family: Family, l: usize) -> AffineContext {
        AffineContext::of(family, l).unwrap()
    }

    fn whole(c: &AffineContext, parts: &[i64], j: usize) -> Abacus {
        Abacus::from_partition(c, Partition::new(parts.to_vec()).unwrap(), j).unwrap()
    }

    #[test]
    fn cell_and_position_are_inverse() {
        for family in Family::ALL {
            for l in family.minimum_rank()..=4 {
                let c = ctx(family, l);
                for j in 0..=l {
                    let a = Abacus::weight(&c, j).unwrap();
                    let g = Geometry::of(&c, &a);
                    let start = a.base().unwrap_or(-40);
                    let mut seen = BTreeSet::new();
                    for x in start..60 {
                        let cell = g.cell_of(x).unwrap();
                        assert!(seen.insert((cell.column, cell.row)), "{family} l={l} x={x}");
                        assert_eq!(g.position_of(cell.column, cell.row), Some((x, cell.reversed)));
                    }
                }
            }
        }
    }

    #[test]
    fn worked_display_vectors() {
        let d2 = ctx(Family::DTwisted, 2);
        let core = whole(&d2, &[4, 2, 1, 1, 1, 1, 1], 1);
        assert_eq!(uglov_vector(&d2, &core), UglovVector::from_ints(&[-2, 1]));
        let example = whole(&d2, &[5, 2, 1, 1, 1, 1, 1], 1);
        assert_eq!(runner_charges(&d2, &example), vec![-1, 1]);
        let vac = Abacus::weight(&d2, 0).unwrap();
        assert_eq!(uglov_vector(&d2, &vac), UglovVector::from_ints(&[0, 0]));
    }

    #[test]
    fn half_shift_for_upper_bases() {
        let b3 = ctx(Family::B, 3);
        let u = uglov_vector(&b3, &Abacus::weight(&b3, 3).unwrap());
        assert_eq!(u, UglovVector(vec![Rational::half(); 3]));
    }

    #[test]
    fn elementary_ops_of_worked_example() {
        let d2 = ctx(Family::DTwisted, 2);
        let example = whole(&d2, &[5, 2, 1, 1, 1, 1, 1], 1);
        let ops = elementary_ops(&d2, &example);
        assert_eq!(ops.iter().filter(|o| !o.is_second_kind()).count(), 2);
        assert!(ops.iter().all(|o| !o.is_second_kind()));
        let mut current = example;
        for op in ops.iter() {
            current = apply_elementary_op(&current, op).unwrap();
        }
        let after = elementary_ops(&d2, &current);
        assert!(after.iter().any(ElementaryOp::is_second_kind), "{after:?}");
    }

    #[test]
    fn cores_have_no_ops_and_match_display_oracle() {
        for family in Family::ALL {
            for l in family.minimum_rank()..=3 {
                let c = ctx(family, l);
                for j in 0..=l {
                    for rec in enumerate_cores(&c, j, 8).unwrap() {
                        assert!(is_core(&c, &rec.abacus));
                        assert!(display_ops(&c, &rec.abacus).is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn sigma_on_vectors() {
        let d2 = ctx(Family::DTwisted, 2);
        let u = UglovVector::from_ints(&[-2, 1]);
        assert_eq!(sigma_on_uglov(&d2, 1, &u, 0).unwrap(), UglovVector::from_ints(&[4, 1]));
        let c3 = ctx(Family::C, 3);
        let v = UglovVector::from_ints(&[1, 2, 3]);
        assert_eq!(sigma_on_uglov(&c3, 0, &v, 3).unwrap(), UglovVector::from_ints(&[1, 2, -3]));
        let swapped = sigma_on_uglov(&c3, 0, &v, 1).unwrap();
        assert_eq!(sigma_on_uglov(&c3, 0, &swapped, 1).unwrap(), v);
    }

    #[test]
    fn weighted_vector_of_worked_example() {
        let d2 = ctx(Family::DTwisted, 2);
        let w = weighted_uglov(&d2, &UglovVector::from_ints(&[-2, 1]));
        let expected = QVector::from_ints(&[-2, 1]).scale(&Quad2::sqrt2());
        assert_eq!(w, expected);
    }

    #[test]
    fn inverse_placement_round_trip() {
        let d2 = ctx(Family::DTwisted, 2);
        let core = apply_word(&d2, &Abacus::weight(&d2, 1).unwrap(), &"1,2,1,0,1".parse().unwrap())
            .unwrap()
            .abacus;
        let u = uglov_vector(&d2, &core);
        assert_eq!(abacus_from_uglov(&d2, 1, &u).unwrap(), core);
    }

    #[test]
    fn certificates_and_comparisons() {
        let c2 = ctx(Family::C, 2);
        let one = whole(&c2, &[1], 0);
        let cert = core_certificate(&c2, &one, None).unwrap();
        assert!(cert.no_elementary_ops && cert.in_orbit && cert.defect_zero == Some(true));
        let two = whole(&c2, &[2], 0);
        let cert = core_certificate(&c2, &two, None).unwrap();
        assert!(!cert.no_elementary_ops && !cert.in_orbit && cert.consistent());
        let report = compare_type_a(&c2, &one).unwrap();
        assert!(report.is_core_here && report.type_a_side);
        let report = compare_type_a(&c2, &two).unwrap();
        assert!(!report.is_core_here && !report.type_a_side);
        assert!(compare_type_a(&c2, &whole(&c2, &[1], 1)).is_err());
    }
}
