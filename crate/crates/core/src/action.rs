//! Bead moves f_i / e_i, the Weyl generator action σ_i on abaci, height
//! tallies, residue logs, Grassmannian word recovery by descent, and
//! breadth-first enumeration of core abaci.
//!
//! Positions are classified by their runner label (see
//! [`AffineContext::l_index`]). Interior nodes move a bead one step from
//! label i to label i+1 and from label −i−1 to label −i. The end nodes 0 and
//! l move beads one step (simple bond), two steps over the extra label 0 or
//! l+1 with multiplicity two (outward double bond), or two steps from each of
//! two labels (fork). Half abaci additionally create or remove beads at
//! their base.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::abacus::{shifted_diagram, Abacus, BeadSet, Shape};
use crate::cartan::{AffineContext, EndShape, Family, RootCoords};
use crate::error::{Error, Result};

/// Whether a move lowers the weight (f) or raises it back (e).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    /// A bead moves up (or beads are created).
    F,
    /// A bead moves down (or beads are removed).
    E,
}

/// Which rule produced a move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MoveKind {
    /// Node strictly between 0 and l.
    Interior,
    /// Ordinary move of node 0.
    ZeroEnd,
    /// Ordinary move of node l.
    LEnd,
    /// Bead creation or removal at the base of a half abacus.
    Special,
}

/// The positions touched by a move.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MoveEffect {
    /// A bead moves from one position to another.
    Shift {
        /// Source position.
        from: i64,
        /// Target position.
        to: i64,
    },
    /// Beads appear at these (previously empty) positions.
    Create(Vec<i64>),
    /// Beads disappear from these positions.
    Remove(Vec<i64>),
}

/// One legal bead move of a node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Move {
    /// The node 0..=l.
    pub node: usize,
    /// f or e.
    pub direction: Direction,
    /// The rule that produced it.
    pub kind: MoveKind,
    /// The positions involved.
    pub effect: MoveEffect,
    /// Contribution to the height tally of the node (1 or 2).
    pub weight: i64,
}

/// A word in the generators σ_0..σ_l. The word `[d1, …, dn]` denotes
/// σ_{d1}⋯σ_{dn}; acting on an abacus, the rightmost letter acts first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    /// Number of letters.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether this is the identity word.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The letters, leftmost first.
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    /// The inverse word (letters reversed).
    pub fn inverse(&self) -> WeylWord {
        WeylWord(self.0.iter().rev().copied().collect())
    }

    /// Checks every letter against the rank.
    pub fn check_rank(&self, rank: usize) -> Result<()> {
        match self.0.iter().find(|&&i| i > rank) {
            Some(i) => Err(Error::Domain(format!("generator σ{i} outside 0..={rank}"))),
            None => Ok(()),
        }
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "id");
        }
        for i in &self.0 {
            write!(f, "σ{i}")?;
        }
        Ok(())
    }
}

impl FromStr for WeylWord {
    type Err = Error;
    /// Parses comma- or space-separated node indices, e.g. `"1,2,1,0,1"`.
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.trim_start_matches('σ')
                    .trim_start_matches('s')
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad generator {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WeylWord(letters))
    }
}

/// A node of a (possibly shifted) Young diagram with the residue of the
/// generator that created or removed it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ResiduedNode {
    /// Row (1-based).
    pub row: i64,
    /// Column (1-based).
    pub column: i64,
    /// Node index of the generator.
    pub residue: usize,
}

/// Diagram change caused by one letter of a word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepLog {
    /// Position of the letter in application order (0 = first applied).
    pub step: usize,
    /// The generator applied.
    pub node: usize,
    /// Signed multiplicity of the step.
    pub multiplicity: i64,
    /// Nodes added to the diagram.
    pub added: Vec<ResiduedNode>,
    /// Nodes removed from the diagram.
    pub removed: Vec<ResiduedNode>,
}

/// One ordinary move rule: beads on `source_label` move `step` positions up.
struct Template {
    source_label: i64,
    step: i64,
    weight: i64,
    kind: MoveKind,
}

fn templates(ctx: &AffineContext, i: usize) -> Vec<Template> {
    let l = ctx.rank();
    let li = l as i64;
    let rule = |source_label, step, weight, kind| Template {
        source_label,
        step,
        weight,
        kind,
    };
    if i == 0 {
        let k = MoveKind::ZeroEnd;
        match ctx.family().zero_end() {
            EndShape::Simple => vec![rule(-1, 1, 1, k)],
            EndShape::Skip => vec![rule(-1, 2, 2, k)],
            EndShape::Fork => vec![rule(-1, 2, 1, k), rule(-2, 2, 1, k)],
        }
    } else if i == l {
        let k = MoveKind::LEnd;
        match ctx.family().l_end() {
            EndShape::Simple => vec![rule(li, 1, 1, k)],
            EndShape::Skip => vec![rule(li, 2, 2, k)],
            EndShape::Fork => vec![rule(li, 2, 1, k), rule(li - 1, 2, 1, k)],
        }
    } else {
        let ii = i as i64;
        vec![
            rule(ii, 1, 1, MoveKind::Interior),
            rule(-ii - 1, 1, 1, MoveKind::Interior),
        ]
    }
}

/// Positions that a special move of node i creates on a half abacus with
/// the given base (empty when the node has no special move there).
fn special_positions(ctx: &AffineContext, base: i64, i: usize) -> Vec<i64> {
    let l = ctx.rank();
    let li = l as i64;
    let family = ctx.family();
    if i == 0 && base == 0 {
        match family.zero_end() {
            EndShape::Skip => vec![0],
            EndShape::Fork => vec![0, 1],
            EndShape::Simple => vec![],
        }
    } else if i == l && base == li + 1 && family.l_end() == EndShape::Skip {
        vec![li + 1]
    } else if i == l && base == li && family == Family::D {
        vec![li, li + 1]
    } else {
        vec![]
    }
}

/// Legal moves of node `i` in the given direction on a bead view; `base` is
/// the base of a half abacus (None for whole abaci).
pub fn moves_on_beads(
    ctx: &AffineContext,
    beads: &BeadSet,
    base: Option<i64>,
    i: usize,
    direction: Direction,
) -> Vec<Move> {
    let mut out = Vec::new();
    let period = ctx.period;
    let (lo, hi) = match base {
        Some(b) => (b, beads.max_bead().unwrap_or(b).max(b) + 3),
        None => (
            beads.min_gap().unwrap_or(0) - 3,
            beads.max_bead().unwrap_or(0) + 3,
        ),
    };
    for template in templates(ctx, i) {
        let Some(residue) = ctx.residue_of_label(template.source_label) else {
            continue;
        };
        let first = lo + (residue - lo).rem_euclid(period);
        let mut x = first;
        while x <= hi {
            let y = x + template.step;
            let (from, to, legal) = match direction {
                Direction::F => (x, y, beads.has(x) && !beads.has(y)),
                Direction::E => (y, x, beads.has(y) && !beads.has(x)),
            };
            if legal {
                out.push(Move {
                    node: i,
                    direction,
                    kind: template.kind,
                    effect: MoveEffect::Shift { from, to },
                    weight: template.weight,
                });
            }
            x += period;
        }
    }
    if let Some(b) = base {
        let positions = special_positions(ctx, b, i);
        if !positions.is_empty() {
            let (legal, effect) = match direction {
                Direction::F => (
                    positions.iter().all(|&p| !beads.has(p)),
                    MoveEffect::Create(positions.clone()),
                ),
                Direction::E => (
                    positions.iter().all(|&p| beads.has(p)),
                    MoveEffect::Remove(positions.clone()),
                ),
            };
            if legal {
                out.push(Move {
                    node: i,
                    direction,
                    kind: MoveKind::Special,
                    effect,
                    weight: 1,
                });
            }
        }
    }
    out
}

/// All currently legal moves of node `i` in the given direction.
pub fn available_moves(
    ctx: &AffineContext,
    abacus: &Abacus,
    i: usize,
    direction: Direction,
) -> Vec<Move> {
    moves_on_beads(ctx, &abacus.bead_set(), abacus.base(), i, direction)
}

fn apply_effect(beads: &mut BeadSet, effect: &MoveEffect) {
    match effect {
        MoveEffect::Shift { from, to } => {
            beads.remove(*from);
            beads.insert(*to);
        }
        MoveEffect::Create(positions) => positions.iter().for_each(|&p| beads.insert(p)),
        MoveEffect::Remove(positions) => positions.iter().for_each(|&p| beads.remove(p)),
    }
}

/// Applies a single move, returning the new abacus.
pub fn apply_move(abacus: &Abacus, mv: &Move) -> Result<Abacus> {
    let mut beads = abacus.bead_set();
    apply_effect(&mut beads, &mv.effect);
    beads.normalize();
    abacus.with_beads(&beads)
}

/// The signed tally change of a move: +weight for f, −weight for e.
pub fn signed_weight(mv: &Move) -> i64 {
    match mv.direction {
        Direction::F => mv.weight,
        Direction::E => -mv.weight,
    }
}

/// Applies every available move of `direction` for node `i` repeatedly until
/// none remain; returns the total weight moved.
fn saturate(
    ctx: &AffineContext,
    beads: &mut BeadSet,
    base: Option<i64>,
    i: usize,
    direction: Direction,
) -> i64 {
    let mut total = 0;
    loop {
        let moves = moves_on_beads(ctx, beads, base, i, direction);
        if moves.is_empty() {
            return total;
        }
        for mv in &moves {
            apply_effect(beads, &mv.effect);
            total += mv.weight;
        }
    }
}

/// The generator σ_i: all f_i-moves to saturation when any exist, otherwise
/// all e_i-moves. Returns the new abacus and the signed multiplicity
/// (+ for f, − for e, 0 when the abacus is fixed).
pub fn apply_sigma(ctx: &AffineContext, abacus: &Abacus, i: usize) -> Result<(Abacus, i64)> {
    if i > ctx.rank() {
        return Err(Error::Domain(format!("node {i} outside 0..={}", ctx.rank())));
    }
    let mut beads = abacus.bead_set();
    let base = abacus.base();
    let up = saturate(ctx, &mut beads, base, i, Direction::F);
    let signed = if up > 0 {
        up
    } else {
        -saturate(ctx, &mut beads, base, i, Direction::E)
    };
    beads.normalize();
    Ok((abacus.with_beads(&beads)?, signed))
}

/// Cells of the diagram drawn for an abacus: the Young diagram of a whole
/// abacus, the shifted Young diagram of a half one.
pub fn diagram_cells(ctx: &AffineContext, abacus: &Abacus) -> Result<BTreeSet<(i64, i64)>> {
    match &abacus.shape {
        Shape::Whole { partition } => Ok(partition.cells()),
        Shape::Half { base, beads } => shifted_diagram(ctx, *base, beads),
    }
}

/// Result of applying a word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordRun {
    /// The final abacus.
    pub abacus: Abacus,
    /// Accumulated signed multiplicities per node.
    pub tally: RootCoords,
    /// Per-letter diagram changes in application order.
    pub log: Vec<StepLog>,
}

/// Applies a word (rightmost letter first), accumulating the height tally
/// and the residues of the added and removed diagram nodes.
pub fn apply_word(ctx: &AffineContext, start: &Abacus, word: &WeylWord) -> Result<WordRun> {
    word.check_rank(ctx.rank())?;
    let mut current = start.clone();
    let mut tally = RootCoords::zero(ctx.rank());
    let mut log = Vec::with_capacity(word.len());
    let mut cells = diagram_cells(ctx, &current)?;
    for (step, &i) in word.letters().iter().rev().enumerate() {
        let (next, m) = apply_sigma(ctx, &current, i)?;
        tally.0[i] += m;
        let next_cells = diagram_cells(ctx, &next)?;
        let tag = |&(row, column): &(i64, i64)| ResiduedNode {
            row,
            column,
            residue: i,
        };
        log.push(StepLog {
            step,
            node: i,
            multiplicity: m,
            added: next_cells.difference(&cells).map(tag).collect(),
            removed: cells.difference(&next_cells).map(tag).collect(),
        });
        current = next;
        cells = next_cells;
    }
    Ok(WordRun {
        abacus: current,
        tally,
        log,
    })
}

/// Applies a word without logging; returns the abacus and tally.
pub fn apply_word_quiet(
    ctx: &AffineContext,
    start: &Abacus,
    word: &WeylWord,
) -> Result<(Abacus, RootCoords)> {
    word.check_rank(ctx.rank())?;
    let mut current = start.clone();
    let mut tally = RootCoords::zero(ctx.rank());
    for &i in word.letters().iter().rev() {
        let (next, m) = apply_sigma(ctx, &current, i)?;
        tally.0[i] += m;
        current = next;
    }
    Ok((current, tally))
}

/// Nodes at which descent is possible: e-moves exist and f-moves do not.
fn descent_nodes(ctx: &AffineContext, abacus: &Abacus) -> Vec<usize> {
    let beads = abacus.bead_set();
    let base = abacus.base();
    (0..=ctx.rank())
        .filter(|&i| {
            !moves_on_beads(ctx, &beads, base, i, Direction::E).is_empty()
                && moves_on_beads(ctx, &beads, base, i, Direction::F).is_empty()
        })
        .collect()
}

/// Descends from `abacus` to its weight abacus, choosing the node with
/// `choose` among the available descents, then replays the word forward and
/// checks that it reproduces the abacus.
fn descend_with(
    ctx: &AffineContext,
    abacus: &Abacus,
    mut choose: impl FnMut(&[usize]) -> usize,
) -> Result<WeylWord> {
    let target = Abacus::weight(ctx, abacus.charge)?;
    let mut current = abacus.clone();
    let mut letters = Vec::new();
    while current != target {
        let options = descent_nodes(ctx, &current);
        if options.is_empty() {
            return Err(Error::NotInOrbit(format!(
                "descent from {abacus} stalls at {current}"
            )));
        }
        let i = choose(&options);
        let (next, m) = apply_sigma(ctx, &current, i)?;
        if m >= 0 {
            return Err(Error::Inconsistency(format!("descent step σ{i} did not descend")));
        }
        letters.push(i);
        current = next;
    }
    let word = WeylWord(letters);
    let (replayed, _) = apply_word_quiet(ctx, &target, &word)?;
    if &replayed != abacus {
        return Err(Error::NotInOrbit(format!(
            "word {word} from the weight abacus gives {replayed}, not {abacus}"
        )));
    }
    Ok(word)
}

/// The Grassmannian word of a core abacus: greedy descent choosing the
/// smallest available node. Applied to the weight abacus (rightmost letter
/// first) the word reproduces the core.
pub fn grassmannian_word(ctx: &AffineContext, abacus: &Abacus) -> Result<WeylWord> {
    descend_with(ctx, abacus, |options| options[0]).map_err(|e| match e {
        Error::NotInOrbit(msg) => Error::NotACore(msg),
        other => other,
    })
}

/// A descent word choosing uniformly at random among available nodes; used
/// to check that tallies and lengths do not depend on the path.
pub fn random_descent_word<R: Rng>(
    ctx: &AffineContext,
    abacus: &Abacus,
    rng: &mut R,
) -> Result<WeylWord> {
    descend_with(ctx, abacus, |options| *options.choose(rng).expect("nonempty"))
}

/// The root β with abacus weight Λ_j − β, computed as the tally of the
/// Grassmannian word.
pub fn beta_of(ctx: &AffineContext, abacus: &Abacus) -> Result<RootCoords> {
    let word = descend_with(ctx, abacus, |options| options[0])?;
    let start = Abacus::weight(ctx, abacus.charge)?;
    Ok(apply_word_quiet(ctx, &start, &word)?.1)
}

/// An enumerated core abacus with its root and Grassmannian word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreRecord {
    /// The core abacus.
    pub abacus: Abacus,
    /// β with abacus weight Λ_j − β.
    pub beta: RootCoords,
    /// A reduced word reaching the core from the weight abacus.
    pub word: WeylWord,
}

impl CoreRecord {
    /// ht(β).
    pub fn height(&self) -> i64 {
        self.beta.height()
    }
}

/// Options for [`enumerate_cores_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct EnumerateOptions {
    /// Worker threads for frontier expansion (None = rayon default).
    pub workers: Option<usize>,
}

/// All j-core abaci of height at most `max_height`, sorted by height then
/// by shape.
pub fn enumerate_cores(ctx: &AffineContext, j: usize, max_height: i64) -> Result<Vec<CoreRecord>> {
    enumerate_cores_with(ctx, j, max_height, EnumerateOptions::default())
}

/// [`enumerate_cores`] with an explicit worker count. The output does not
/// depend on the number of workers.
pub fn enumerate_cores_with(
    ctx: &AffineContext,
    j: usize,
    max_height: i64,
    options: EnumerateOptions,
) -> Result<Vec<CoreRecord>> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = options.workers {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Inconsistency(format!("thread pool: {e}")))?;
    pool.install(|| enumerate_in_pool(ctx, j, max_height))
}

fn enumerate_in_pool(ctx: &AffineContext, j: usize, max_height: i64) -> Result<Vec<CoreRecord>> {
    let root = CoreRecord {
        abacus: Abacus::weight(ctx, j)?,
        beta: RootCoords::zero(ctx.rank()),
        word: WeylWord::default(),
    };
    if max_height < 0 {
        return Ok(Vec::new());
    }
    let mut seen: HashMap<Abacus, ()> = HashMap::new();
    seen.insert(root.abacus.clone(), ());
    let mut all = vec![root.clone()];
    let mut frontier = vec![root];
    while !frontier.is_empty() {
        frontier.sort_by(|a, b| {
            (a.height(), a.abacus.sort_key(), &a.word).cmp(&(b.height(), b.abacus.sort_key(), &b.word))
        });
        let expanded: Vec<Result<Vec<CoreRecord>>> = frontier
            .par_iter()
            .map(|parent| children(ctx, parent, max_height))
            .collect();
        let mut next = Vec::new();
        for kids in expanded {
            for child in kids? {
                if seen.insert(child.abacus.clone(), ()).is_none() {
                    all.push(child.clone());
                    next.push(child);
                }
            }
        }
        frontier = next;
    }
    all.sort_by_key(|rec| (rec.height(), rec.abacus.sort_key()));
    Ok(all)
}

fn children(ctx: &AffineContext, parent: &CoreRecord, max_height: i64) -> Result<Vec<CoreRecord>> {
    let mut out = Vec::new();
    for i in 0..=ctx.rank() {
        let (child, m) = apply_sigma(ctx, &parent.abacus, i)?;
        if m <= 0 || parent.height() + m > max_height {
            continue;
        }
        let mut beta = parent.beta.clone();
        beta.0[i] += m;
        let mut letters = Vec::with_capacity(parent.word.len() + 1);
        letters.push(i);
        letters.extend_from_slice(parent.word.letters());
        out.push(CoreRecord {
            abacus: child,
            beta,
            word: WeylWord(letters),
        });
    }
    Ok(out)
}

/// Every abacus reachable from the weight abacus by at most `steps` single
/// f-moves, with its root β (the signed tally of the moves).
///
/// Reaching the same abacus along different paths must give the same β;
/// a disagreement is reported as an inconsistency.
pub fn reachable_by_moves(
    ctx: &AffineContext,
    j: usize,
    steps: usize,
) -> Result<BTreeMap<Abacus, RootCoords>> {
    let start = Abacus::weight(ctx, j)?;
    let mut seen = BTreeMap::new();
    seen.insert(start.clone(), RootCoords::zero(ctx.rank()));
    let mut frontier = vec![start];
    for _ in 0..steps {
        let mut next = Vec::new();
        for abacus in &frontier {
            let beta = seen[abacus].clone();
            let beads = abacus.bead_set();
            for i in 0..=ctx.rank() {
                for mv in moves_on_beads(ctx, &beads, abacus.base(), i, Direction::F) {
                    let child = apply_move(abacus, &mv)?;
                    let mut child_beta = beta.clone();
                    child_beta.0[i] += mv.weight;
                    match seen.get(&child) {
                        Some(existing) if existing != &child_beta => {
                            return Err(Error::Inconsistency(format!(
                                "{child} reached with roots {:?} and {:?}",
                                existing.0, child_beta.0
                            )));
                        }
                        Some(_) => {}
                        None => {
                            seen.insert(child.clone(), child_beta);
                            next.push(child);
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abacus::Partition;

    fn ctx(family: Family, l: usize) -> AffineContext {
        AffineContext::of(family, l).unwrap()
    }

    fn whole(c: &AffineContext, parts: &[i64], j: usize) -> Abacus {
        Abacus::from_partition(c, Partition::new(parts.to_vec()).unwrap(), j).unwrap()
    }

    #[test]
    fn c2_first_moves() {
        let c2 = ctx(Family::C, 2);
        let vac = Abacus::weight(&c2, 1).unwrap();
        let moves = available_moves(&c2, &vac, 1, Direction::F);
        assert_eq!(moves.len(), 1);
        assert_eq!(moves[0].kind, MoveKind::Interior);
        // Λ_1 is fixed by σ_0 and moved by σ_1.
        assert_eq!(apply_sigma(&c2, &vac, 0).unwrap(), (vac.clone(), 0));
        let (child, m) = apply_sigma(&c2, &vac, 1).unwrap();
        assert_eq!(m, 1);
        assert_eq!(child, whole(&c2, &[1], 1));
    }

    #[test]
    fn b3_special_creation() {
        let b3 = ctx(Family::B, 3);
        let vac = Abacus::weight(&b3, 0).unwrap();
        let moves = available_moves(&b3, &vac, 0, Direction::F);
        assert_eq!(moves.len(), 1);
        assert_eq!(moves[0].effect, MoveEffect::Create(vec![0, 1]));
        assert_eq!(moves[0].kind, MoveKind::Special);
    }

    #[test]
    fn stabilizer_of_weight_abacus() {
        for family in Family::ALL {
            for l in family.minimum_rank()..=4 {
                let c = ctx(family, l);
                for j in 0..=l {
                    let vac = Abacus::weight(&c, j).unwrap();
                    for i in 0..=l {
                        let (image, m) = apply_sigma(&c, &vac, i).unwrap();
                        if i == j {
                            assert!(m > 0, "{family} l={l} j={j}");
                        } else {
                            assert_eq!((image, m), (vac.clone(), 0), "{family} l={l} j={j} i={i}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn worked_height_example() {
        let d2 = ctx(Family::DTwisted, 2);
        let start = Abacus::weight(&d2, 1).unwrap();
        let word: WeylWord = "1,2,1,0,1".parse().unwrap();
        let run = apply_word(&d2, &start, &word).unwrap();
        assert_eq!(run.abacus, whole(&d2, &[4, 2, 1, 1, 1, 1, 1], 1));
        assert_eq!(run.tally, RootCoords(vec![2, 5, 4]));
        let core = run.abacus;
        let greedy = grassmannian_word(&d2, &core).unwrap();
        assert_eq!(greedy.len(), 5);
        assert_eq!(beta_of(&d2, &core).unwrap(), RootCoords(vec![2, 5, 4]));
    }

    #[test]
    fn residue_path_example() {
        let d5 = ctx(Family::D, 5);
        let start = Abacus::weight(&d5, 2).unwrap();
        let run = apply_word(&d5, &start, &"5,4,3,2".parse().unwrap()).unwrap();
        assert_eq!(run.abacus, whole(&d5, &[5], 2));
        let residues: Vec<Vec<usize>> = run
            .log
            .iter()
            .map(|s| s.added.iter().map(|n| n.residue).collect())
            .collect();
        assert_eq!(residues, vec![vec![2], vec![3], vec![4], vec![5, 5]]);
    }

    #[test]
    fn d5_root_example() {
        let d5 = ctx(Family::D, 5);
        // Charge 0 of D₅ uses the half abacus B≥0 = {0,3,5,7,8,10}, whose
        // shifted diagram has rows (11,8,8,5,4).
        let half = Abacus::from_beads(&d5, [0, 3, 5, 7, 8, 10], 0).unwrap();
        assert_eq!(beta_of(&d5, &half).unwrap(), RootCoords(vec![4, 2, 7, 8, 3, 4]));
    }

    #[test]
    fn c2_small_enumeration() {
        let c2 = ctx(Family::C, 2);
        let cores = enumerate_cores(&c2, 1, 2).unwrap();
        let shapes: Vec<(i64, Vec<i64>)> = cores
            .iter()
            .map(|r| (r.height(), r.abacus.partition().unwrap().parts().to_vec()))
            .collect();
        assert_eq!(
            shapes,
            vec![(0, vec![]), (1, vec![1]), (2, vec![1, 1]), (2, vec![2])]
        );
        let zero = enumerate_cores(&c2, 0, 2).unwrap();
        assert_eq!(zero.len(), 2);
        let one = &cores[1];
        assert_eq!(grassmannian_word(&c2, &one.abacus).unwrap(), WeylWord(vec![1]));
    }

    #[test]
    fn enumeration_is_worker_independent() {
        let b3 = ctx(Family::B, 3);
        let one = enumerate_cores_with(&b3, 0, 12, EnumerateOptions { workers: Some(1) }).unwrap();
        let four = enumerate_cores_with(&b3, 0, 12, EnumerateOptions { workers: Some(4) }).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn word_parsing() {
        assert!("σ1σ2".parse::<WeylWord>().is_err());
        assert_eq!("1 2 0".parse::<WeylWord>().unwrap(), WeylWord(vec![1, 2, 0]));
        assert_eq!(WeylWord(vec![1, 0]).to_string(), "σ1σ0");
    }
}
