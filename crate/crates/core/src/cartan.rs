//! Static data of one classical affine type at a fixed rank: generalized
//! Cartan matrix, marks and comarks, symmetrizer, symmetric bilinear form,
//! defect, conversion between weight and root coordinates, the runner-label
//! alphabet, and a Euclidean realization of the finite root system over ℚ(√2).
//!
//! Node 0 is the affine node. The Cartan matrix is built from the Dynkin
//! diagram's edge set together with the symmetrizer; marks and comarks are
//! then derived as normalized kernel vectors rather than copied from tables.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{
    inner_product, kernel_basis, solve_linear, QVector, Quad2, Rational,
};

/// The six classical affine families with a one-sided or two-sided abacus
/// model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// Twisted type A₂ₗ₋₁⁽²⁾.
    A2lMinus1Twisted,
    /// Twisted type A₂ₗ⁽²⁾.
    A2lTwisted,
    /// Untwisted type Bₗ⁽¹⁾.
    B,
    /// Untwisted type Cₗ⁽¹⁾.
    C,
    /// Untwisted type Dₗ⁽¹⁾.
    D,
    /// Twisted type D⁽²⁾ with nodes 0..l (the diagram usually written
    /// D₍ₗ₊₁₎⁽²⁾).
    DTwisted,
}

/// Shape of one end of the Dynkin diagram, which governs the bead moves of
/// the end node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EndShape {
    /// A single bond: the end node moves a bead one step.
    Simple,
    /// A double bond pointing outward: the end node moves a bead two steps
    /// over an extra runner label, with multiplicity two.
    Skip,
    /// A fork of two end nodes: the end node moves two kinds of beads two
    /// steps each.
    Fork,
}

impl Family {
    /// All families in a fixed order.
    pub const ALL: [Family; 6] = [
        Family::A2lMinus1Twisted,
        Family::A2lTwisted,
        Family::B,
        Family::C,
        Family::D,
        Family::DTwisted,
    ];

    /// ASCII label used on the command line, e.g. `"C~1"`.
    pub fn label(self) -> &'static str {
        match self {
            Family::A2lMinus1Twisted => "A2l-1~2",
            Family::A2lTwisted => "A2l~2",
            Family::B => "B~1",
            Family::C => "C~1",
            Family::D => "D~1",
            Family::DTwisted => "D~2",
        }
    }

    /// Smallest supported rank.
    pub fn minimum_rank(self) -> usize {
        match self {
            Family::D => 3,
            _ => 2,
        }
    }

    /// Shape of the diagram at node 0.
    pub fn zero_end(self) -> EndShape {
        match self {
            Family::C => EndShape::Simple,
            Family::A2lTwisted | Family::DTwisted => EndShape::Skip,
            Family::A2lMinus1Twisted | Family::B | Family::D => EndShape::Fork,
        }
    }

    /// Shape of the diagram at node l.
    pub fn l_end(self) -> EndShape {
        match self {
            Family::A2lMinus1Twisted | Family::A2lTwisted | Family::C => EndShape::Simple,
            Family::B | Family::DTwisted => EndShape::Skip,
            Family::D => EndShape::Fork,
        }
    }

    /// Whether the runner-label alphabet contains 0.
    pub fn has_zero_index(self) -> bool {
        self.zero_end() == EndShape::Skip
    }

    /// Whether the runner-label alphabet contains l+1.
    pub fn has_l_plus_one_index(self) -> bool {
        self.l_end() == EndShape::Skip
    }

    /// Scale turning an Uglov vector into its weighted version.
    pub fn uglov_weight(self) -> Quad2 {
        match self {
            Family::C => Quad2::new(Rational::zero(), Rational::half()),
            Family::DTwisted => Quad2::sqrt2(),
            _ => Quad2::from_int(1),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|fam| fam.label().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                let known: Vec<&str> = Family::ALL.iter().map(|f| f.label()).collect();
                Error::Parse(format!("unknown family {s:?}; expected one of {known:?}"))
            })
    }
}

/// A family together with its rank l (the number of Uglov runners).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffineKind {
    /// The family.
    pub family: Family,
    /// The rank l.
    pub rank: usize,
}

impl AffineKind {
    /// Builds a kind, checking the family's minimum rank.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        if rank < family.minimum_rank() {
            return Err(Error::InvalidRank {
                family: family.label().to_string(),
                rank,
                minimum: family.minimum_rank(),
            });
        }
        Ok(AffineKind { family, rank })
    }
}

impl fmt::Display for AffineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (l={})", self.family, self.rank)
    }
}

/// Coordinates of an affine weight in the basis {Λ_0,…,Λ_l, δ}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct WeightCoords {
    /// Coefficients of Λ_0..Λ_l.
    pub lambda_coeffs: Vec<i64>,
    /// Coefficient of δ.
    pub delta_coeff: Rational,
}

impl WeightCoords {
    /// The fundamental weight Λ_j of a rank-l context.
    pub fn fundamental(rank: usize, j: usize) -> Self {
        let mut lambda_coeffs = vec![0; rank + 1];
        lambda_coeffs[j] = 1;
        WeightCoords {
            lambda_coeffs,
            delta_coeff: Rational::zero(),
        }
    }
}

/// Coordinates of an element of the root lattice in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct RootCoords(pub Vec<i64>);

impl RootCoords {
    /// The zero element of a rank-l root lattice.
    pub fn zero(rank: usize) -> Self {
        RootCoords(vec![0; rank + 1])
    }

    /// The height Σ k_i.
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Coefficient of α_i.
    pub fn coeff(&self, i: usize) -> i64 {
        self.0[i]
    }
}

/// Euclidean realization of the finite root system (nodes 1..l) in ℚ(√2)ˡ,
/// together with the projection of α_0.
#[derive(Clone, Debug, Serialize)]
pub struct FiniteRealization {
    /// Simple roots α_1..α_l.
    pub simple_roots: Vec<QVector>,
    /// Simple coroots α_1^∨..α_l^∨ (2α/(α,α)); they generate the translation
    /// lattice.
    pub simple_coroots: Vec<QVector>,
    /// Finite part of α_0.
    pub affine_root_projection: QVector,
    /// Fundamental weights ω_1..ω_l, dual to the coroots.
    pub fund_weights: Vec<QVector>,
    /// Fundamental coweights ω_1^∨..ω_l^∨, dual to the roots.
    pub fund_coweights: Vec<QVector>,
    /// ρ^∨ = Σ ω_i^∨.
    pub rho_check: QVector,
    /// The highest root θ, equal to −a_0 times the projection of α_0.
    pub highest_root: QVector,
    /// θ^∨ = 2θ/(θ,θ), the translation part of σ_0.
    pub highest_coroot: QVector,
}

impl FiniteRealization {
    /// The rank l.
    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    /// ω_j with the convention ω_0 = 0.
    pub fn weight_or_zero(&self, j: usize) -> QVector {
        if j == 0 {
            QVector::zeros(self.rank())
        } else {
            self.fund_weights[j - 1].clone()
        }
    }

    /// ω_j^∨ with the convention ω_0^∨ = 0.
    pub fn coweight_or_zero(&self, j: usize) -> QVector {
        if j == 0 {
            QVector::zeros(self.rank())
        } else {
            self.fund_coweights[j - 1].clone()
        }
    }
}

/// All static data of one affine type at a fixed rank.
#[derive(Clone, Debug, Serialize)]
pub struct AffineContext {
    /// Family and rank.
    pub kind: AffineKind,
    /// Generalized Cartan matrix a_{ij}, 0 ≤ i, j ≤ l.
    pub cartan: Vec<Vec<i64>>,
    /// Marks a_0..a_l (kernel of the Cartan matrix).
    pub marks: Vec<i64>,
    /// Comarks a_0^∨..a_l^∨ (kernel of its transpose).
    pub comarks: Vec<i64>,
    /// Symmetrizer d_0..d_l with d_i·a_{ij} symmetric.
    pub symmetrizer: Vec<Rational>,
    /// Symmetric bilinear form c_{ij} = d_i·a_{ij} on simple roots.
    pub gram: Vec<Vec<Rational>>,
    /// h = Σ a_i.
    pub coxeter_h: i64,
    /// The runner-label alphabet in position order within one period.
    pub index_alphabet: Vec<i64>,
    /// Number of labels, i.e. the abacus period.
    pub period: i64,
    /// Whether label 0 occurs.
    pub has_zero_index: bool,
    /// Whether label l+1 occurs.
    pub has_l_plus_one_index: bool,
    #[serde(skip)]
    realization: FiniteRealization,
}

fn diagram_edges(kind: AffineKind) -> Vec<(usize, usize)> {
    let l = kind.rank;
    if kind.family == Family::D && l == 3 {
        return vec![(0, 2), (0, 3), (1, 2), (1, 3)];
    }
    let mut edges = Vec::new();
    let path_start = match kind.family.zero_end() {
        EndShape::Fork => {
            edges.push((0, 2));
            edges.push((1, 2));
            2
        }
        _ => 0,
    };
    let path_end = match kind.family.l_end() {
        EndShape::Fork => {
            edges.push((l - 2, l - 1));
            edges.push((l - 2, l));
            l - 2
        }
        _ => l,
    };
    for k in path_start..path_end {
        edges.push((k, k + 1));
    }
    edges
}

fn symmetrizer_for(kind: AffineKind) -> Vec<Rational> {
    let l = kind.rank;
    let one = Rational::from_int(1);
    let two = Rational::from_int(2);
    let half = Rational::half();
    (0..=l)
        .map(|i| match kind.family {
            Family::A2lMinus1Twisted => {
                if i == l {
                    two.clone()
                } else {
                    one.clone()
                }
            }
            Family::A2lTwisted => {
                if i == 0 {
                    half.clone()
                } else if i == l {
                    two.clone()
                } else {
                    one.clone()
                }
            }
            Family::B => {
                if i == l {
                    half.clone()
                } else {
                    one.clone()
                }
            }
            Family::C => {
                if i == 0 || i == l {
                    one.clone()
                } else {
                    half.clone()
                }
            }
            Family::D => one.clone(),
            Family::DTwisted => {
                if i == 0 || i == l {
                    one.clone()
                } else {
                    two.clone()
                }
            }
        })
        .collect()
}

/// Normalizes a one-dimensional rational kernel to positive coprime integers.
fn primitive_positive(v: &[Rational]) -> Result<Vec<i64>> {
    let mut denom_lcm = num_bigint::BigInt::one();
    for x in v {
        denom_lcm = denom_lcm.lcm(x.denom());
    }
    let ints: Vec<num_bigint::BigInt> = v
        .iter()
        .map(|x| x.numer() * (&denom_lcm / x.denom()))
        .collect();
    let mut g = num_bigint::BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return Err(Error::Inconsistency("zero kernel vector".into()));
    }
    let sign = if ints.iter().any(|x| x.is_negative()) { -1 } else { 1 };
    let out: Vec<i64> = ints
        .iter()
        .map(|x| (x / &g).to_i64().unwrap() * sign)
        .collect();
    if out.iter().any(|&x| x <= 0) {
        return Err(Error::Inconsistency(format!(
            "kernel vector {out:?} is not positive"
        )));
    }
    Ok(out)
}

fn one_dim_kernel(matrix: &[Vec<i64>]) -> Result<Vec<i64>> {
    let rational: Vec<Vec<Rational>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| Rational::from_int(x)).collect())
        .collect();
    let basis = kernel_basis(&rational);
    if basis.len() != 1 {
        return Err(Error::Inconsistency(format!(
            "Cartan matrix kernel has dimension {}",
            basis.len()
        )));
    }
    primitive_positive(&basis[0])
}

/// Explicit simple roots α_1..α_l and the projection of α_0 in the
/// standard orthonormal basis, scaled so that (α_i, α_i) = 2·d_i.
fn realization_roots(kind: AffineKind) -> (Vec<QVector>, QVector) {
    let l = kind.rank;
    let unit = |k: usize| QVector::unit(l, k);
    let diff = |k: usize| unit(k).try_sub(&unit(k + 1)).expect("same length");
    let sum = |a: usize, b: usize| unit(a).try_add(&unit(b)).expect("same length");
    let root2 = Quad2::sqrt2();
    let inv_root2 = Quad2::new(Rational::zero(), Rational::half());
    let mut roots: Vec<QVector> = (0..l - 1)
        .map(|k| match kind.family {
            Family::C => diff(k).scale(&inv_root2),
            Family::DTwisted => diff(k).scale(&root2),
            _ => diff(k),
        })
        .collect();
    let last = match kind.family {
        Family::C | Family::DTwisted => unit(l - 1).scale(&root2),
        Family::A2lTwisted | Family::A2lMinus1Twisted => unit(l - 1).scale(&Quad2::from_int(2)),
        Family::B => unit(l - 1),
        Family::D => sum(l - 2, l - 1),
    };
    roots.push(last);
    let affine = match kind.family {
        Family::C | Family::DTwisted => unit(0).scale(&root2),
        Family::A2lTwisted => unit(0),
        Family::A2lMinus1Twisted | Family::B | Family::D => sum(0, 1),
    }
    .scale(&Quad2::from_int(-1));
    (roots, affine)
}

fn coroot(v: &QVector) -> QVector {
    let norm = inner_product(v, v).expect("same length");
    v.scale(&(Quad2::from_int(2) / norm))
}

/// Vectors x_1..x_l with (x_i, basis_k) = δ_{ik}.
fn dual_basis(basis: &[QVector]) -> Result<Vec<QVector>> {
    let l = basis.len();
    let matrix: Vec<Vec<Quad2>> = basis.iter().map(|b| b.entries().to_vec()).collect();
    (0..l)
        .map(|i| {
            let rhs: Vec<Quad2> = (0..l)
                .map(|k| Quad2::from_int(i64::from(i == k)))
                .collect();
            solve_linear(&matrix, &rhs).map(QVector::new)
        })
        .collect()
}

fn build_realization(kind: AffineKind, marks: &[i64]) -> Result<FiniteRealization> {
    let (simple_roots, affine_root_projection) = realization_roots(kind);
    let simple_coroots: Vec<QVector> = simple_roots.iter().map(coroot).collect();
    let fund_weights = dual_basis(&simple_coroots)?;
    let fund_coweights = dual_basis(&simple_roots)?;
    let mut rho_check = QVector::zeros(kind.rank);
    for w in &fund_coweights {
        rho_check = rho_check.try_add(w)?;
    }
    let highest_root = affine_root_projection.scale(&Quad2::from_int(-marks[0]));
    let highest_coroot = coroot(&highest_root);
    Ok(FiniteRealization {
        simple_roots,
        simple_coroots,
        affine_root_projection,
        fund_weights,
        fund_coweights,
        rho_check,
        highest_root,
        highest_coroot,
    })
}

impl AffineContext {
    /// Builds the full context for a kind.
    pub fn new(kind: AffineKind) -> Result<Self> {
        let kind = AffineKind::new(kind.family, kind.rank)?;
        let l = kind.rank;
        let symmetrizer = symmetrizer_for(kind);
        let mut cartan = vec![vec![0i64; l + 1]; l + 1];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in diagram_edges(kind) {
            for (i, j) in [(a, b), (b, a)] {
                let ratio = &symmetrizer[j] / &symmetrizer[i];
                let strength = if ratio > Rational::from_int(1) {
                    ratio.to_i64().ok_or_else(|| {
                        Error::Inconsistency("non-integral symmetrizer ratio".into())
                    })?
                } else {
                    1
                };
                cartan[i][j] = -strength;
            }
        }
        let gram: Vec<Vec<Rational>> = (0..=l)
            .map(|i| {
                (0..=l)
                    .map(|j| &symmetrizer[i] * &Rational::from_int(cartan[i][j]))
                    .collect()
            })
            .collect();
        let marks = one_dim_kernel(&cartan)?;
        let transpose: Vec<Vec<i64>> = (0..=l)
            .map(|i| (0..=l).map(|j| cartan[j][i]).collect())
            .collect();
        let comarks = one_dim_kernel(&transpose)?;
        let has_zero_index = kind.family.has_zero_index();
        let has_l_plus_one_index = kind.family.has_l_plus_one_index();
        let mut index_alphabet: Vec<i64> = (1..=l as i64).collect();
        if has_l_plus_one_index {
            index_alphabet.push(l as i64 + 1);
        }
        index_alphabet.extend((1..=l as i64).rev().map(|i| -i));
        if has_zero_index {
            index_alphabet.push(0);
        }
        let period = index_alphabet.len() as i64;
        let realization = build_realization(kind, &marks)?;
        Ok(AffineContext {
            kind,
            coxeter_h: marks.iter().sum(),
            cartan,
            marks,
            comarks,
            symmetrizer,
            gram,
            index_alphabet,
            period,
            has_zero_index,
            has_l_plus_one_index,
            realization,
        })
    }

    /// Convenience constructor from family and rank.
    pub fn of(family: Family, rank: usize) -> Result<Self> {
        AffineContext::new(AffineKind { family, rank })
    }

    /// The rank l.
    pub fn rank(&self) -> usize {
        self.kind.rank
    }

    /// The family.
    pub fn family(&self) -> Family {
        self.kind.family
    }

    /// The finite Euclidean realization.
    pub fn realization(&self) -> &FiniteRealization {
        &self.realization
    }

    /// Checks 0 ≤ j ≤ l.
    pub fn check_charge(&self, j: usize) -> Result<()> {
        if j > self.rank() {
            return Err(Error::Domain(format!(
                "charge {j} outside 0..={}",
                self.rank()
            )));
        }
        Ok(())
    }

    /// The ratio a_j^∨ / a_0^∨ (always 1 or 2 for the supported families).
    pub fn comark_ratio(&self, j: usize) -> Rational {
        Rational::new(self.comarks[j], self.comarks[0])
    }

    /// The label of residue `r` within one period.
    pub fn iota(&self, r: i64) -> Result<i64> {
        if !(0..self.period).contains(&r) {
            return Err(Error::Domain(format!(
                "residue {r} outside 0..{}",
                self.period
            )));
        }
        Ok(self.index_alphabet[r as usize])
    }

    /// Residue (within one period) carrying runner label `label`.
    pub fn residue_of_label(&self, label: i64) -> Option<i64> {
        self.index_alphabet
            .iter()
            .position(|&x| x == label)
            .map(|r| r as i64)
    }

    /// The l-index (q, label) of a position.
    pub fn l_index(&self, x: i64) -> (i64, i64) {
        let (section, r) = x.div_mod_floor(&self.period);
        let label = self.index_alphabet[r as usize];
        let q = if label == r + 1 {
            2 * section
        } else {
            2 * section + 1
        };
        (q, label)
    }

    /// The pairing ⟨Λ, α_i^∨⟩ of a weight with a simple coroot.
    pub fn weight_pairing(&self, weight: &WeightCoords, i: usize) -> i64 {
        weight.lambda_coeffs[i]
    }

    /// The Λ/δ coordinates of the simple root α_i.
    pub fn simple_root_as_weight(&self, i: usize) -> WeightCoords {
        WeightCoords {
            lambda_coeffs: (0..=self.rank()).map(|k| self.cartan[k][i]).collect(),
            delta_coeff: if i == 0 {
                Rational::new(1, self.marks[0])
            } else {
                Rational::zero()
            },
        }
    }

    /// Applies the simple reflection σ_i to a weight: v ↦ v − ⟨v,α_i^∨⟩α_i.
    pub fn reflect_weight(&self, weight: &WeightCoords, i: usize) -> WeightCoords {
        let pairing = self.weight_pairing(weight, i);
        let root = self.simple_root_as_weight(i);
        WeightCoords {
            lambda_coeffs: weight
                .lambda_coeffs
                .iter()
                .zip(&root.lambda_coeffs)
                .map(|(m, a)| m - pairing * a)
                .collect(),
            delta_coeff: &weight.delta_coeff - &(&root.delta_coeff * &Rational::from_int(pairing)),
        }
    }

    /// The element β of the root lattice with Λ_j − w = β.
    pub fn root_from_weight_drop(&self, j: usize, w: &WeightCoords) -> Result<RootCoords> {
        self.check_charge(j)?;
        let l = self.rank();
        let start = WeightCoords::fundamental(l, j);
        let drop: Vec<i64> = (0..=l)
            .map(|i| start.lambda_coeffs[i] - w.lambda_coeffs[i])
            .collect();
        let delta_drop = &start.delta_coeff - &w.delta_coeff;
        // δ-part of Σ k_i α_i is k_0 / a_0.
        let k0_rational = &delta_drop * &Rational::from_int(self.marks[0]);
        let k0 = k0_rational.to_i64().ok_or_else(|| {
            Error::Lattice(format!("α_0 coefficient {k0_rational} is not an integer"))
        })?;
        // Rows 1..l of the Cartan system determine k_1..k_l.
        let finite: Vec<Vec<Rational>> = (1..=l)
            .map(|i| (1..=l).map(|k| Rational::from_int(self.cartan[i][k])).collect())
            .collect();
        let rhs: Vec<Rational> = (1..=l)
            .map(|i| Rational::from_int(drop[i] - self.cartan[i][0] * k0))
            .collect();
        let solved = solve_linear(&finite, &rhs)?;
        let mut coeffs = vec![k0];
        for x in solved {
            coeffs.push(x.to_i64().ok_or_else(|| {
                Error::Lattice(format!("root coefficient {x} is not an integer"))
            })?);
        }
        let row0: i64 = (0..=l).map(|k| self.cartan[0][k] * coeffs[k]).sum();
        if row0 != drop[0] {
            return Err(Error::Lattice(format!(
                "Λ_0 coefficient mismatch: {row0} vs {}",
                drop[0]
            )));
        }
        Ok(RootCoords(coeffs))
    }

    /// The pairing ⟨Λ_j − β, α_i^∨⟩ = δ_{ij} − Σ_k a_{ik} k_k.
    pub fn coroot_pairing(&self, j: usize, beta: &RootCoords, i: usize) -> i64 {
        let sum: i64 = (0..=self.rank())
            .map(|k| self.cartan[i][k] * beta.0[k])
            .sum();
        i64::from(i == j) - sum
    }

    /// The defect (Λ_j, β) − ½(β, β).
    pub fn defect(&self, j: usize, beta: &RootCoords) -> Rational {
        let l = self.rank();
        let mut quad = Rational::zero();
        for a in 0..=l {
            for b in 0..=l {
                let coeff = Rational::from_int(beta.0[a] * beta.0[b]);
                quad += &(&coeff * &self.gram[a][b]);
            }
        }
        &(&Rational::from_int(beta.0[j]) * &self.symmetrizer[j]) - &(&quad * &Rational::half())
    }

    /// The finite-type braid order m_{ij} for 1 ≤ i ≠ j ≤ l.
    pub fn braid_order(&self, i: usize, j: usize) -> usize {
        match self.cartan[i][j] * self.cartan[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            _ => 0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_contexts(max_rank: usize) -> Vec<AffineContext> {
        let mut out = Vec::new();
        for family in Family::ALL {
            for l in family.minimum_rank()..=max_rank {
                out.push(AffineContext::of(family, l).unwrap());
            }
        }
        out
    }

    #[test]
    fn c2_basic_data() {
        let ctx = AffineContext::of(Family::C, 2).unwrap();
        assert_eq!(
            ctx.symmetrizer,
            vec![Rational::from_int(1), Rational::half(), Rational::from_int(1)]
        );
        assert_eq!(ctx.period, 4);
        assert!(!ctx.has_zero_index && !ctx.has_l_plus_one_index);
        assert_eq!(ctx.marks, vec![1, 2, 1]);
        assert_eq!(ctx.comarks, vec![1, 1, 1]);
    }

    #[test]
    fn d_twisted_alphabet_and_l_index() {
        let ctx = AffineContext::of(Family::DTwisted, 2).unwrap();
        assert_eq!(ctx.period, 6);
        assert_eq!(ctx.index_alphabet, vec![1, 2, 3, -2, -1, 0]);
        assert_eq!(ctx.iota(0).unwrap(), 1);
        assert_eq!(ctx.iota(3).unwrap(), -2);
        assert_eq!(ctx.iota(5).unwrap(), 0);
        assert!(ctx.iota(6).is_err());
        assert_eq!(ctx.l_index(0), (0, 1));
        assert_eq!(ctx.l_index(3), (1, -2));
        assert_eq!(ctx.l_index(-1), (-1, 0));
    }

    #[test]
    fn rank_minimum_enforced() {
        assert!(AffineContext::of(Family::D, 2).is_err());
        assert!(AffineContext::of(Family::C, 1).is_err());
        assert!(AffineContext::of(Family::D, 3).is_ok());
    }

    #[test]
    fn kernel_symmetry_and_period_invariants() {
        for ctx in all_contexts(6) {
            let l = ctx.rank();
            for i in 0..=l {
                let row: i64 = (0..=l).map(|k| ctx.cartan[i][k] * ctx.marks[k]).sum();
                let col: i64 = (0..=l).map(|k| ctx.comarks[k] * ctx.cartan[k][i]).sum();
                assert_eq!((row, col), (0, 0), "{}", ctx.kind);
                for k in 0..=l {
                    assert_eq!(ctx.gram[i][k], ctx.gram[k][i], "{}", ctx.kind);
                }
            }
            let expected = 2 * l as i64
                + i64::from(ctx.has_zero_index)
                + i64::from(ctx.has_l_plus_one_index);
            assert_eq!(ctx.period, expected);
            assert_eq!(crate::exactnum::gcd_all(&ctx.marks), 1);
            assert_eq!(crate::exactnum::gcd_all(&ctx.comarks), 1);
            // δ-bookkeeping: Σ_j a_j · (δ_{j0}/a_0) = 1.
            let total: Rational = (0..=l)
                .map(|j| &ctx.simple_root_as_weight(j).delta_coeff * &Rational::from_int(ctx.marks[j]))
                .fold(Rational::zero(), |acc, x| acc + x);
            assert_eq!(total, Rational::from_int(1));
        }
    }

    /// The Cartan matrix recomputed from the Euclidean realization, as an
    /// independent route to the edge-and-symmetrizer construction.
    #[test]
    fn realization_reproduces_cartan_and_gram() {
        for ctx in all_contexts(6) {
            let real = ctx.realization();
            let mut vectors = vec![real.affine_root_projection.clone()];
            vectors.extend(real.simple_roots.iter().cloned());
            for (i, vi) in vectors.iter().enumerate() {
                for (k, vk) in vectors.iter().enumerate() {
                    let ip = inner_product(vi, vk).unwrap();
                    assert_eq!(ip, Quad2::from_rational(ctx.gram[i][k].clone()), "{}", ctx.kind);
                    let norm = inner_product(vi, vi).unwrap();
                    let a = (Quad2::from_int(2) * ip) / norm;
                    assert_eq!(a, Quad2::from_int(ctx.cartan[i][k]), "{} ({i},{k})", ctx.kind);
                }
            }
        }
    }

    #[test]
    fn realization_duality_and_anchors() {
        for ctx in all_contexts(6) {
            let real = ctx.realization();
            let l = ctx.rank();
            for i in 0..l {
                for k in 0..l {
                    let delta = Quad2::from_int(i64::from(i == k));
                    let w = inner_product(&real.fund_weights[i], &real.simple_coroots[k]).unwrap();
                    let cw = inner_product(&real.fund_coweights[i], &real.simple_roots[k]).unwrap();
                    assert_eq!((w, cw), (delta.clone(), delta));
                }
            }
            // θ = Σ_{i≥1} a_i α_i.
            let mut theta = QVector::zeros(l);
            for i in 1..=l {
                theta = theta
                    .try_add(&real.simple_roots[i - 1].scale(&Quad2::from_int(ctx.marks[i])))
                    .unwrap();
            }
            assert_eq!(theta, real.highest_root, "{}", ctx.kind);
        }
        let c2 = AffineContext::of(Family::C, 3).unwrap();
        let real = c2.realization();
        assert_eq!(real.fund_coweights[0].entries()[0], Quad2::sqrt2());
        assert_eq!(real.fund_coweights[1].entries()[0], Quad2::sqrt2());
        assert_eq!(
            real.fund_coweights[2].entries()[0],
            Quad2::new(Rational::zero(), Rational::half())
        );
        let mut expected = vec![Quad2::from_int(0); 3];
        expected[0] = Quad2::sqrt2();
        assert_eq!(real.highest_coroot, QVector::new(expected));
        for family in [Family::B, Family::D] {
            let ctx = AffineContext::of(family, 4).unwrap();
            assert_eq!(
                ctx.realization().highest_coroot,
                QVector::from_ints(&[1, 1, 0, 0])
            );
        }
    }

    #[test]
    fn defect_examples() {
        let ctx = AffineContext::of(Family::C, 2).unwrap();
        assert!(ctx.defect(0, &RootCoords::zero(2)).is_zero());
        assert!(ctx.defect(0, &RootCoords(vec![1, 0, 0])).is_zero());
    }

    #[test]
    fn weight_drop_round_trip() {
        for ctx in all_contexts(5) {
            let l = ctx.rank();
            for j in 0..=l {
                let start = WeightCoords::fundamental(l, j);
                assert_eq!(ctx.root_from_weight_drop(j, &start).unwrap(), RootCoords::zero(l));
                let moved = ctx.reflect_weight(&start, j);
                let mut expected = vec![0; l + 1];
                expected[j] = 1;
                assert_eq!(ctx.root_from_weight_drop(j, &moved).unwrap(), RootCoords(expected));
            }
        }
        let ctx = AffineContext::of(Family::C, 2).unwrap();
        let bad = WeightCoords {
            lambda_coeffs: vec![0, 1, 0],
            delta_coeff: Rational::half(),
        };
        assert!(matches!(ctx.root_from_weight_drop(0, &bad), Err(Error::Lattice(_))));
    }

    #[test]
    fn family_labels_parse() {
        for family in Family::ALL {
            assert_eq!(family.label().parse::<Family>().unwrap(), family);
        }
        assert!("E~1".parse::<Family>().is_err());
    }
}
