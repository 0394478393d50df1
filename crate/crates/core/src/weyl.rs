//! Exact affine-isometry realization of the affine Weyl group on ℚ(√2)ˡ.
//!
//! σ_i (i ≥ 1) is the reflection in the hyperplane (v, α_i) = 0 and σ_0 is
//! the reflection in (v, θ) = 1 for the highest root θ. Every element splits
//! as a translation by a coroot-lattice vector q followed by a finite part
//! w̄. The module also computes atomic lengths in the Λ/δ basis, checks the
//! relation between weighted Uglov vectors and (q, w̄), evaluates the
//! realization height formula and produces rank-2 alcove coordinates.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::abacus::Abacus;
use crate::action::{grassmannian_word, WeylWord};
use crate::cartan::{AffineContext, FiniteRealization, WeightCoords};
use crate::error::{Error, Result};
use crate::exactnum::{inner_product, is_rational_integer, solve_linear, QVector, Quad2};
use crate::uglov::{uglov_vector, weighted_uglov};

/// An exact affine map v ↦ linear·v + shift.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineIsometry {
    /// Linear part, row-major.
    pub linear: Vec<Vec<Quad2>>,
    /// Translation part.
    pub shift: QVector,
}

impl AffineIsometry {
    /// The identity of ℚ(√2)ˡ.
    pub fn identity(dim: usize) -> Self {
        AffineIsometry {
            linear: (0..dim)
                .map(|r| (0..dim).map(|c| Quad2::from_int(i64::from(r == c))).collect())
                .collect(),
            shift: QVector::zeros(dim),
        }
    }

    /// Dimension of the ambient space.
    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    fn linear_apply(&self, v: &QVector) -> QVector {
        QVector::new(
            self.linear
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(v.entries())
                        .fold(Quad2::zero(), |acc, (a, x)| &acc + &(a * x))
                })
                .collect(),
        )
    }

    /// Image of a point.
    pub fn apply(&self, v: &QVector) -> Result<QVector> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { left: v.len(), right: self.dim() });
        }
        self.linear_apply(v).try_add(&self.shift)
    }

    /// Image of a vector under the linear part only.
    pub fn apply_linear(&self, v: &QVector) -> Result<QVector> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { left: v.len(), right: self.dim() });
        }
        Ok(self.linear_apply(v))
    }

    /// The composite `self ∘ other` (other acts first).
    pub fn compose(&self, other: &AffineIsometry) -> Result<AffineIsometry> {
        if other.dim() != self.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        let n = self.dim();
        let linear = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        (0..n).fold(Quad2::zero(), |acc, k| {
                            &acc + &(&self.linear[r][k] * &other.linear[k][c])
                        })
                    })
                    .collect()
            })
            .collect();
        let shift = self.linear_apply(&other.shift).try_add(&self.shift)?;
        Ok(AffineIsometry { linear, shift })
    }

    /// The linear part alone, with zero shift.
    pub fn linear_part(&self) -> AffineIsometry {
        AffineIsometry {
            linear: self.linear.clone(),
            shift: QVector::zeros(self.dim()),
        }
    }

    /// Whether this is the identity map.
    pub fn is_identity(&self) -> bool {
        *self == AffineIsometry::identity(self.dim())
    }

    /// Whether the linear part is orthogonal for the standard inner product.
    pub fn preserves_inner_product(&self) -> bool {
        let n = self.dim();
        (0..n).all(|a| {
            (0..n).all(|b| {
                let dot = (0..n).fold(Quad2::zero(), |acc, k| {
                    &acc + &(&self.linear[k][a] * &self.linear[k][b])
                });
                dot == Quad2::from_int(i64::from(a == b))
            })
        })
    }
}

/// The reflection v ↦ v − ((v, root) − level)·root^∨.
fn reflection(root: &QVector, level: i64) -> Result<AffineIsometry> {
    let norm = inner_product(root, root)?;
    let coroot = root.scale(&(Quad2::from_int(2) / norm));
    let n = root.len();
    let linear = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let id = Quad2::from_int(i64::from(r == c));
                    &id - &(&coroot.entries()[r] * &root.entries()[c])
                })
                .collect()
        })
        .collect();
    Ok(AffineIsometry {
        linear,
        shift: coroot.scale(&Quad2::from_int(level)),
    })
}

/// The isometry of generator σ_i.
pub fn generator_isometry(real: &FiniteRealization, i: usize) -> Result<AffineIsometry> {
    let l = real.rank();
    match i {
        0 => reflection(&real.highest_root, 1),
        i if i <= l => reflection(&real.simple_roots[i - 1], 0),
        _ => Err(Error::Domain(format!("node {i} outside 0..={l}"))),
    }
}

/// The isometry of a word σ_{i1}⋯σ_{ik} (rightmost letter acts first).
pub fn word_isometry(real: &FiniteRealization, word: &WeylWord) -> Result<AffineIsometry> {
    let mut out = AffineIsometry::identity(real.rank());
    for &i in word.letters() {
        out = out.compose(&generator_isometry(real, i)?)?;
    }
    Ok(out)
}

/// An element split as a translation followed by a finite part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemidirectDecomp {
    /// The translation vector q.
    pub translation: QVector,
    /// q in the basis of simple coroots.
    pub translation_coords: Vec<i64>,
    /// The finite part w̄ (zero shift).
    pub finite_part: AffineIsometry,
    /// A reduced word for w̄ over nodes 1..l.
    pub finite_word: WeylWord,
}

impl fmt::Display for SemidirectDecomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t_{} · {}", self.translation, self.finite_word)
    }
}

/// Splits a word into translation and finite part. The finite word is
/// recovered by descending the image of ρ^∨ to the dominant chamber,
/// always reflecting in the smallest violated wall.
pub fn semidirect(real: &FiniteRealization, word: &WeylWord) -> Result<SemidirectDecomp> {
    let l = real.rank();
    let whole = word_isometry(real, word)?;
    let finite_part = whole.linear_part();
    let translation = whole.shift.clone();

    let coroot_matrix: Vec<Vec<Quad2>> = (0..l)
        .map(|r| real.simple_coroots.iter().map(|c| c.entries()[r].clone()).collect())
        .collect();
    let coords = solve_linear(&coroot_matrix, translation.entries())?;
    let translation_coords = coords
        .iter()
        .map(|x| {
            is_rational_integer(x)
                .and_then(|n| i64::try_from(n).ok())
                .ok_or_else(|| {
                    Error::Inconsistency(format!("translation {translation} is off the coroot lattice"))
                })
        })
        .collect::<Result<Vec<i64>>>()?;

    let mut point = finite_part.apply_linear(&real.rho_check)?;
    let mut letters = Vec::new();
    let limit = 4 * l * l + 4;
    while let Some(i) = (1..=l).find(|&i| {
        inner_product(&point, &real.simple_roots[i - 1])
            .is_ok_and(|p| p < Quad2::zero())
    }) {
        if letters.len() > limit {
            return Err(Error::Inconsistency("finite descent does not terminate".into()));
        }
        point = generator_isometry(real, i)?.apply(&point)?;
        letters.push(i);
    }
    let finite_word = WeylWord(letters);
    if word_isometry(real, &finite_word)? != finite_part {
        return Err(Error::Inconsistency(format!(
            "finite word {finite_word} does not reproduce the linear part"
        )));
    }
    Ok(SemidirectDecomp {
        translation,
        translation_coords,
        finite_part,
        finite_word,
    })
}

/// The atomic length ⟨Λ_j − w(Λ_j), ρ^∨⟩, computed as the height of
/// Λ_j − w(Λ_j) in the root lattice.
pub fn atomic_length(ctx: &AffineContext, j: usize, word: &WeylWord) -> Result<i64> {
    ctx.check_charge(j)?;
    word.check_rank(ctx.rank())?;
    let mut weight = WeightCoords::fundamental(ctx.rank(), j);
    for &i in word.letters().iter().rev() {
        weight = ctx.reflect_weight(&weight, i);
    }
    Ok(ctx.root_from_weight_drop(j, &weight)?.height())
}

/// The Grassmannian word of a core together with its weighted Uglov vector.
fn core_data(ctx: &AffineContext, core: &Abacus) -> Result<(WeylWord, QVector)> {
    let word = grassmannian_word(ctx, core)?;
    let u = weighted_uglov(ctx, &uglov_vector(ctx, core));
    Ok((word, u))
}

/// Both sides of the relation u = (a_j^∨/a_0^∨)·q + w̄(ω_j) for a core.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemidirectCheck {
    /// The weighted Uglov vector.
    pub weighted_uglov: QVector,
    /// (a_j^∨/a_0^∨)·q + w̄(ω_j).
    pub predicted: QVector,
    /// The decomposition used.
    pub decomposition: SemidirectDecomp,
}

impl SemidirectCheck {
    /// Whether the two sides agree.
    pub fn holds(&self) -> bool {
        self.weighted_uglov == self.predicted
    }
}

/// Evaluates both sides of the translation/finite-part relation for a core.
pub fn semidirect_check(ctx: &AffineContext, core: &Abacus) -> Result<SemidirectCheck> {
    let (word, u) = core_data(ctx, core)?;
    let real = ctx.realization();
    let decomposition = semidirect(real, &word)?;
    let ratio = Quad2::from_rational(ctx.comark_ratio(core.charge));
    let rotated = decomposition
        .finite_part
        .apply_linear(&real.weight_or_zero(core.charge))?;
    let predicted = decomposition.translation.scale(&ratio).try_add(&rotated)?;
    Ok(SemidirectCheck {
        weighted_uglov: u,
        predicted,
        decomposition,
    })
}

/// Whether the translation/finite-part relation holds for a core.
pub fn check_semidirect_compat(ctx: &AffineContext, core: &Abacus) -> Result<bool> {
    Ok(semidirect_check(ctx, core)?.holds())
}

fn require_integer(value: &Quad2, what: &str) -> Result<i64> {
    is_rational_integer(value)
        .and_then(|n| i64::try_from(n).ok())
        .ok_or_else(|| Error::Inconsistency(format!("{what} evaluates to {value}, not an integer")))
}

/// Per-node heights ht_0..ht_l from the weighted Uglov vector u:
/// ht_i = (c·a_i/2·u − ω_i^∨, u) − (c·a_i/2·ω_j − ω_i^∨, ω_j), c = a_0^∨/a_j^∨.
pub fn node_heights_via_realization(ctx: &AffineContext, core: &Abacus) -> Result<Vec<i64>> {
    let j = core.charge;
    let (_, u) = core_data(ctx, core)?;
    let real = ctx.realization();
    let inverse_ratio = Quad2::from_rational(ctx.comark_ratio(j).recip()?);
    let omega = real.weight_or_zero(j);
    (0..=ctx.rank())
        .map(|i| {
            let coweight = real.coweight_or_zero(i);
            let factor = &inverse_ratio * &Quad2::from_rational(crate::exactnum::Rational::new(ctx.marks[i], 2));
            let term = |v: &QVector| -> Result<Quad2> {
                let scaled = v.scale(&factor).try_sub(&coweight)?;
                inner_product(&scaled, v)
            };
            let value = &term(&u)? - &term(&omega)?;
            require_integer(&value, &format!("ht_{i}"))
        })
        .collect()
}

/// Total height c·(h/2)(|u|² − |ω_j|²) − (u − ω_j, ρ^∨), c = a_0^∨/a_j^∨.
pub fn height_via_realization(ctx: &AffineContext, core: &Abacus) -> Result<i64> {
    let j = core.charge;
    let (_, u) = core_data(ctx, core)?;
    let real = ctx.realization();
    let omega = real.weight_or_zero(j);
    let inverse_ratio = Quad2::from_rational(ctx.comark_ratio(j).recip()?);
    let half_h = Quad2::from_rational(crate::exactnum::Rational::new(ctx.coxeter_h, 2));
    let norms = &inner_product(&u, &u)? - &inner_product(&omega, &omega)?;
    let linear = inner_product(&u.try_sub(&omega)?, &real.rho_check)?;
    let value = &(&(&inverse_ratio * &half_h) * &norms) - &linear;
    require_integer(&value, "height")
}

/// A triangle of the rank-2 alcove picture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Alcove {
    /// The three vertices.
    pub vertices: Vec<QVector>,
    /// The centroid, an interior point.
    pub interior: QVector,
}

/// The fundamental alcove of a rank-2 realization: 0 and the two points
/// where one simple wall meets the wall (v, θ) = 1.
fn fundamental_alcove(real: &FiniteRealization) -> Result<Vec<QVector>> {
    let l = real.rank();
    if l != 2 {
        return Err(Error::Scope(format!("alcove coordinates need rank 2, not {l}")));
    }
    let mut vertices = vec![QVector::zeros(l)];
    for i in 0..l {
        let rows: Vec<Vec<Quad2>> = (0..l)
            .map(|k| {
                if k == i {
                    real.highest_root.entries().to_vec()
                } else {
                    real.simple_roots[k].entries().to_vec()
                }
            })
            .collect();
        let rhs: Vec<Quad2> = (0..l).map(|k| Quad2::from_int(i64::from(k == i))).collect();
        vertices.push(QVector::new(solve_linear(&rows, &rhs)?));
    }
    Ok(vertices)
}

/// The alcove w(A_e) of a word (rank 2 only).
pub fn alcove_coords(real: &FiniteRealization, word: &WeylWord) -> Result<Alcove> {
    let base = fundamental_alcove(real)?;
    let iso = word_isometry(real, word)?;
    let vertices = base
        .iter()
        .map(|v| iso.apply(v))
        .collect::<Result<Vec<_>>>()?;
    let mut sum = QVector::zeros(real.rank());
    for v in &vertices {
        sum = sum.try_add(v)?;
    }
    let third = Quad2::one() / Quad2::from_int(3);
    Ok(Alcove {
        interior: sum.scale(&third),
        vertices,
    })
}

/// Whether a point lies strictly inside the generalized Tits cone C_j:
/// (v, α_k) > 0 for every k ≠ j with k ≥ 1, and (v, θ) < 1 unless j = 0.
pub fn in_tits_cone(real: &FiniteRealization, j: usize, point: &QVector) -> Result<bool> {
    for (k, root) in real.simple_roots.iter().enumerate() {
        if k + 1 != j && inner_product(point, root)? <= Quad2::zero() {
            return Ok(false);
        }
    }
    Ok(j == 0 || inner_product(point, &real.highest_root)? < Quad2::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::apply_word;
    use crate::cartan::Family;

    fn ctx(family: Family, l: usize) -> AffineContext {
        AffineContext::of(family, l).unwrap()
    }

    fn word(text: &str) -> WeylWord {
        text.parse().unwrap()
    }

    #[test]
    fn generators_are_involutive_isometries() {
        for family in Family::ALL {
            for l in family.minimum_rank()..=4 {
                let c = ctx(family, l);
                let real = c.realization();
                for i in 0..=l {
                    let g = generator_isometry(real, i).unwrap();
                    assert!(g.preserves_inner_product());
                    assert!(g.compose(&g).unwrap().is_identity());
                }
                for a in 1..=l {
                    for b in a + 1..=l {
                        let m = c.braid_order(a, b);
                        let pair = WeylWord(vec![a, b]);
                        let mut power = AffineIsometry::identity(l);
                        for _ in 0..m {
                            power = power.compose(&word_isometry(real, &pair).unwrap()).unwrap();
                        }
                        assert!(power.is_identity(), "{family} l={l} ({a},{b})^{m}");
                    }
                }
            }
        }
    }

    #[test]
    fn affine_generator_translates_along_highest_coroot() {
        let c2 = ctx(Family::C, 2);
        let g = generator_isometry(c2.realization(), 0).unwrap();
        assert_eq!(g.shift, QVector::new(vec![Quad2::sqrt2(), Quad2::zero()]));
    }

    #[test]
    fn worked_decompositions() {
        let c2 = ctx(Family::C, 2);
        let s0 = semidirect(c2.realization(), &word("0")).unwrap();
        assert_eq!(s0.translation, QVector::new(vec![Quad2::sqrt2(), Quad2::zero()]));
        assert_eq!(s0.finite_word, word("1,2,1"));
        let s1 = semidirect(c2.realization(), &word("1")).unwrap();
        assert!(s1.translation.is_zero());
        assert_eq!(s1.finite_word, word("1"));
        let d2 = ctx(Family::DTwisted, 2);
        let s = semidirect(d2.realization(), &word("1,2,1,0,1")).unwrap();
        assert_eq!(s.translation, QVector::new(vec![-Quad2::sqrt2(), Quad2::zero()]));
        assert_eq!(s.finite_word, word("1"));
    }

    #[test]
    fn atomic_lengths() {
        let d2 = ctx(Family::DTwisted, 2);
        assert_eq!(atomic_length(&d2, 1, &word("1,2,1,0,1")).unwrap(), 11);
        assert_eq!(atomic_length(&d2, 1, &WeylWord(vec![])).unwrap(), 0);
        for family in Family::ALL {
            let c = ctx(family, 3);
            for j in 0..=3 {
                assert_eq!(atomic_length(&c, j, &WeylWord(vec![j])).unwrap(), 1);
            }
        }
    }

    #[test]
    fn worked_height_and_compatibility() {
        let d2 = ctx(Family::DTwisted, 2);
        let start = Abacus::weight(&d2, 1).unwrap();
        let core = apply_word(&d2, &start, &word("1,2,1,0,1")).unwrap().abacus;
        assert_eq!(height_via_realization(&d2, &core).unwrap(), 11);
        assert_eq!(node_heights_via_realization(&d2, &core).unwrap(), vec![2, 5, 4]);
        let check = semidirect_check(&d2, &core).unwrap();
        assert!(check.holds());
        assert_eq!(
            check.predicted,
            QVector::from_ints(&[-2, 1]).scale(&Quad2::sqrt2())
        );
        assert_eq!(height_via_realization(&d2, &start).unwrap(), 0);
        assert!(check_semidirect_compat(&d2, &start).unwrap());
    }

    #[test]
    fn alcoves_in_rank_two() {
        let c2 = ctx(Family::C, 2);
        let real = c2.realization();
        let id = alcove_coords(real, &WeylWord(vec![])).unwrap();
        assert_eq!(id.vertices[0], QVector::zeros(2));
        assert!(in_tits_cone(real, 1, &id.interior).unwrap());
        let across = alcove_coords(real, &word("0")).unwrap();
        let shared = across.vertices.iter().filter(|v| id.vertices.contains(v)).count();
        assert_eq!(shared, 2);
        assert!(alcove_coords(ctx(Family::C, 3).realization(), &word("0")).is_err());
    }
}
