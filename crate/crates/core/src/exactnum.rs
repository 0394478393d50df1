//! Exact arithmetic: arbitrary-precision rationals, the quadratic field
//! ℚ(√2), and vectors over it with the standard Euclidean inner product.
//!
//! Nothing in this crate evaluates a formula in floating point; every scalar
//! is either an integer, a [`Rational`], or a [`Quad2`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer / denom`; panics if `denom` is zero.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// Builds a rational from big integers; panics if `denom` is zero.
    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer, denom))
    }

    /// The integer `n` as a rational.
    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// One half.
    pub fn half() -> Self {
        Rational::new(1, 2)
    }

    /// Numerator in lowest terms.
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Denominator in lowest terms (always positive).
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Whether the value is an integer.
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as an `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    /// Whether the value is zero.
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Absolute value.
    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse; errors on zero.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of zero".into()));
        }
        Ok(Rational(self.0.recip()))
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        self.0.numer().div_floor(self.0.denom())
    }

    /// Parses `p`, `-p`, or `p/q`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let parse_int = |s: &str| {
            s.trim()
                .parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("{s:?}: {e}")))
        };
        match text.split_once('/') {
            Some((n, d)) => {
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(Error::Parse("zero denominator".into()));
                }
                Ok(Rational::from_big(parse_int(n)?, d))
            }
            None => Ok(Rational(BigRational::from_integer(parse_int(text)?))),
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integers serialize as JSON numbers, proper fractions as `"p/q"` strings.
impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_i64() {
            Some(n) => serializer.serialize_i64(n),
            None => serializer.serialize_str(&self.to_string()),
        }
    }
}

macro_rules! forward_binop {
    ($ty:ident, $trait:ident, $method:ident, $body:expr) => {
        impl $trait<&$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                let f: fn(&$ty, &$ty) -> $ty = $body;
                f(self, rhs)
            }
        }
        impl $trait<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                (&self).$method(rhs)
            }
        }
        impl $trait<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Rational, Add, add, |a, b| Rational(&a.0 + &b.0));
forward_binop!(Rational, Sub, sub, |a, b| Rational(&a.0 - &b.0));
forward_binop!(Rational, Mul, mul, |a, b| Rational(&a.0 * &b.0));
forward_binop!(Rational, Div, div, |a, b| {
    assert!(!b.is_zero(), "division by zero");
    Rational(&a.0 / &b.0)
});

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(BigRational::one())
    }
}

/// An element `rational + surd·√2` of the field ℚ(√2).
///
/// The representation is unique, so equality is componentwise.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Quad2 {
    rational: Rational,
    surd: Rational,
}

impl Quad2 {
    /// Builds `rational + surd·√2`.
    pub fn new(rational: Rational, surd: Rational) -> Self {
        Quad2 { rational, surd }
    }

    /// The rational number `r` embedded in ℚ(√2).
    pub fn from_rational(r: Rational) -> Self {
        Quad2::new(r, Rational::zero())
    }

    /// The integer `n` embedded in ℚ(√2).
    pub fn from_int(n: i64) -> Self {
        Quad2::from_rational(Rational::from_int(n))
    }

    /// The element √2.
    pub fn sqrt2() -> Self {
        Quad2::new(Rational::zero(), Rational::one())
    }

    /// The rational part.
    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    /// The coefficient of √2.
    pub fn surd_part(&self) -> &Rational {
        &self.surd
    }

    /// The Galois conjugate `rational − surd·√2`.
    pub fn conjugate(&self) -> Self {
        Quad2::new(self.rational.clone(), -&self.surd)
    }

    /// The field norm `rational² − 2·surd²`, which is rational.
    pub fn norm(&self) -> Rational {
        &self.rational * &self.rational - Rational::from_int(2) * &self.surd * &self.surd
    }

    /// Whether the element is zero.
    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.surd.is_zero()
    }

    /// The element as a rational when the √2 part vanishes.
    pub fn to_rational(&self) -> Option<Rational> {
        self.surd.is_zero().then(|| self.rational.clone())
    }

    /// Multiplicative inverse; errors on zero.
    pub fn recip(&self) -> Result<Self> {
        let norm = self.norm();
        if norm.is_zero() {
            return Err(Error::Domain("reciprocal of zero in Q(sqrt2)".into()));
        }
        let conj = self.conjugate();
        Ok(Quad2::new(&conj.rational / &norm, &conj.surd / &norm))
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, r: &Rational) -> Self {
        Quad2::new(&self.rational * r, &self.surd * r)
    }

    /// Sign of the real number this element denotes (exact comparison).
    pub fn signum(&self) -> Ordering {
        // Compare rational with −surd·√2 by squaring when signs differ.
        let a = &self.rational;
        let b = &self.surd;
        let sa = a.cmp(&Rational::zero());
        let sb = b.cmp(&Rational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (s1, s2) if s1 == s2 => s1,
            (sa, _) => {
                // a and b√2 have opposite signs; the larger magnitude wins.
                let a2 = a * a;
                let b2 = Rational::from_int(2) * b * b;
                match a2.cmp(&b2) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }
}

impl PartialOrd for Quad2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by the real value the element denotes.
impl Ord for Quad2 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl From<Rational> for Quad2 {
    fn from(r: Rational) -> Self {
        Quad2::from_rational(r)
    }
}

impl From<i64> for Quad2 {
    fn from(n: i64) -> Self {
        Quad2::from_int(n)
    }
}

forward_binop!(Quad2, Add, add, |a, b| Quad2::new(
    &a.rational + &b.rational,
    &a.surd + &b.surd
));
forward_binop!(Quad2, Sub, sub, |a, b| Quad2::new(
    &a.rational - &b.rational,
    &a.surd - &b.surd
));
forward_binop!(Quad2, Mul, mul, |a, b| Quad2::new(
    &a.rational * &b.rational + Rational::from_int(2) * &a.surd * &b.surd,
    &a.rational * &b.surd + &a.surd * &b.rational
));
forward_binop!(Quad2, Div, div, |a, b| a
    * b.recip().expect("division by zero in Q(sqrt2)"));

impl Neg for Quad2 {
    type Output = Quad2;
    fn neg(self) -> Quad2 {
        Quad2::new(-self.rational, -self.surd)
    }
}

impl Neg for &Quad2 {
    type Output = Quad2;
    fn neg(self) -> Quad2 {
        Quad2::new(-&self.rational, -&self.surd)
    }
}

impl AddAssign<&Quad2> for Quad2 {
    fn add_assign(&mut self, rhs: &Quad2) {
        self.rational += &rhs.rational;
        self.surd += &rhs.surd;
    }
}

impl Zero for Quad2 {
    fn zero() -> Self {
        Quad2::default()
    }
    fn is_zero(&self) -> bool {
        Quad2::is_zero(self)
    }
}

impl One for Quad2 {
    fn one() -> Self {
        Quad2::from_int(1)
    }
}

impl fmt::Display for Quad2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let surd_text = |s: &Rational| -> String {
            let abs = s.abs();
            if abs == Rational::one() {
                "√2".to_string()
            } else if abs.is_integer() {
                format!("{abs}√2")
            } else if abs.numer() == &BigInt::one() {
                format!("√2/{}", abs.denom())
            } else {
                format!("{}√2/{}", abs.numer(), abs.denom())
            }
        };
        match (self.rational.is_zero(), self.surd.is_zero()) {
            (_, true) => write!(f, "{}", self.rational),
            (true, false) => {
                let sign = if self.surd < Rational::zero() { "-" } else { "" };
                write!(f, "{sign}{}", surd_text(&self.surd))
            }
            (false, false) => {
                let sign = if self.surd < Rational::zero() { '-' } else { '+' };
                write!(f, "{} {sign} {}", self.rational, surd_text(&self.surd))
            }
        }
    }
}

impl fmt::Debug for Quad2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as its display string, e.g. `"-2√2"` or `"1/2"`.
impl Serialize for Quad2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Returns the integer value of `x` when it is a rational integer.
pub fn is_rational_integer(x: &Quad2) -> Option<BigInt> {
    let r = x.to_rational()?;
    r.is_integer().then(|| r.numer().clone())
}

/// A vector with entries in ℚ(√2).
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct QVector(Vec<Quad2>);

impl QVector {
    /// Wraps a sequence of entries.
    pub fn new(entries: Vec<Quad2>) -> Self {
        QVector(entries)
    }

    /// The zero vector of length `len`.
    pub fn zeros(len: usize) -> Self {
        QVector(vec![Quad2::default(); len])
    }

    /// A vector with rational entries given as integers.
    pub fn from_ints(entries: &[i64]) -> Self {
        QVector(entries.iter().map(|&n| Quad2::from_int(n)).collect())
    }

    /// A vector with rational entries.
    pub fn from_rationals(entries: &[Rational]) -> Self {
        QVector(entries.iter().cloned().map(Quad2::from_rational).collect())
    }

    /// The `i`-th standard basis vector of length `len`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = QVector::zeros(len);
        v.0[i] = Quad2::from_int(1);
        v
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether the vector has no entries.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entries as a slice.
    pub fn entries(&self) -> &[Quad2] {
        &self.0
    }

    /// Mutable access to the entries.
    pub fn entries_mut(&mut self) -> &mut [Quad2] {
        &mut self.0
    }

    /// Multiplies every entry by `s`.
    pub fn scale(&self, s: &Quad2) -> Self {
        QVector(self.0.iter().map(|x| x * s).collect())
    }

    /// Multiplies every entry by a rational `r`.
    pub fn scale_rational(&self, r: &Rational) -> Self {
        QVector(self.0.iter().map(|x| x.scale(r)).collect())
    }

    /// Componentwise sum; errors on length mismatch.
    pub fn try_add(&self, other: &QVector) -> Result<QVector> {
        check_len(self, other)?;
        Ok(QVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    /// Componentwise difference; errors on length mismatch.
    pub fn try_sub(&self, other: &QVector) -> Result<QVector> {
        check_len(self, other)?;
        Ok(QVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// Whether all entries are zero.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Quad2::is_zero)
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn check_len(x: &QVector, y: &QVector) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    Ok(())
}

/// The standard Euclidean inner product Σ xᵢ·yᵢ, computed exactly.
pub fn inner_product(x: &QVector, y: &QVector) -> Result<Quad2> {
    check_len(x, y)?;
    let mut acc = Quad2::default();
    for (a, b) in x.0.iter().zip(&y.0) {
        acc += &(a * b);
    }
    Ok(acc)
}

/// Greatest common divisor of a list of integers (0 for the empty list).
pub fn gcd_all(values: &[i64]) -> i64 {
    values.iter().fold(0i64, |g, &v| g.gcd(&v))
}

/// Field operations needed by the exact linear-algebra helpers below.
pub trait ExactField:
    Clone
    + PartialEq
    + Zero
    + One
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
}

impl ExactField for Rational {}
impl ExactField for Quad2 {}

/// Reduces `rows` (each of equal length) to reduced row-echelon form in
/// place and returns the pivot column of each nonzero row.
fn row_reduce<T: ExactField>(rows: &mut [Vec<T>]) -> Vec<usize> {
    let height = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        if r == height {
            break;
        }
        let Some(p) = (r..height).find(|&k| !rows[k][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = T::one() / rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for k in 0..height {
            if k != r && !rows[k][col].is_zero() {
                let factor = rows[k][col].clone();
                let pivot_row = rows[r].clone();
                for (x, p) in rows[k].iter_mut().zip(pivot_row) {
                    *x = x.clone() - factor.clone() * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Solves the square system `matrix · x = rhs` exactly; errors when the
/// matrix is singular or the shapes disagree.
pub fn solve_linear<T: ExactField>(matrix: &[Vec<T>], rhs: &[T]) -> Result<Vec<T>> {
    let n = matrix.len();
    if rhs.len() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: rhs.len(),
        });
    }
    let mut rows: Vec<Vec<T>> = Vec::with_capacity(n);
    for (row, b) in matrix.iter().zip(rhs) {
        if row.len() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: row.len(),
            });
        }
        let mut augmented = row.clone();
        augmented.push(b.clone());
        rows.push(augmented);
    }
    let pivots = row_reduce(&mut rows);
    if pivots.len() != n || pivots.contains(&n) {
        return Err(Error::Domain("singular linear system".into()));
    }
    Ok(rows.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Returns a basis of the right kernel `{x : matrix · x = 0}`.
pub fn kernel_basis<T: ExactField>(matrix: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut rows = matrix.to_vec();
    let width = rows.first().map_or(0, Vec::len);
    let pivots = row_reduce(&mut rows);
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); width];
            v[f] = T::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -rows[r][f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Quad2 {
        Quad2::new(Rational::from_int(a), Rational::from_int(b))
    }

    #[test]
    fn rational_is_normalized() {
        let r = Rational::new(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn rational_parse_round_trip() {
        for text in ["0", "-7", "3/4", "-5/2"] {
            assert_eq!(Rational::parse(text).unwrap().to_string(), text);
        }
        assert!(Rational::parse("1/0").is_err());
    }

    #[test]
    fn quad2_product_rule() {
        // (1+2√2)(3+4√2) = 3+16 + (4+6)√2
        assert_eq!(q(1, 2) * q(3, 4), q(19, 10));
    }

    #[test]
    fn inner_product_examples() {
        let x = QVector::new(vec![q(1, 0), q(0, 1)]);
        assert_eq!(inner_product(&x, &x).unwrap(), Quad2::from_int(3));
        let u = QVector::from_ints(&[-2, 1]).scale(&Quad2::sqrt2());
        assert_eq!(inner_product(&u, &u).unwrap(), Quad2::from_int(10));
        let zero = QVector::zeros(2);
        assert!(inner_product(&zero, &x).unwrap().is_zero());
        assert!(inner_product(&zero, &QVector::zeros(3)).is_err());
    }

    #[test]
    fn rational_integer_detection() {
        assert_eq!(is_rational_integer(&q(3, 0)), Some(BigInt::from(3)));
        assert_eq!(is_rational_integer(&q(0, 1)), None);
        let half = Quad2::from_rational(Rational::new(5, 2));
        assert_eq!(is_rational_integer(&half), None);
    }

    #[test]
    fn ordering_is_by_real_value() {
        // √2 ≈ 1.414: 1 < √2 < 3/2
        assert!(q(1, 0) < Quad2::sqrt2());
        assert!(Quad2::sqrt2() < Quad2::from_rational(Rational::new(3, 2)));
        assert!(q(-3, 2) < q(0, 0)); // 2√2 − 3 < 0
        assert!(q(3, -2) > q(0, 0));
    }

    #[test]
    fn display_forms() {
        assert_eq!(q(0, -2).to_string(), "-2√2");
        assert_eq!(
            Quad2::new(Rational::zero(), Rational::half()).to_string(),
            "√2/2"
        );
        assert_eq!(q(1, 1).to_string(), "1 + √2");
    }

    #[test]
    fn linear_solver_and_kernel() {
        let m = vec![
            vec![Rational::from_int(2), Rational::from_int(1)],
            vec![Rational::from_int(1), Rational::from_int(3)],
        ];
        let x = solve_linear(&m, &[Rational::from_int(5), Rational::from_int(10)]).unwrap();
        assert_eq!(x, vec![Rational::from_int(1), Rational::from_int(3)]);
        let singular = vec![
            vec![Rational::from_int(1), Rational::from_int(2)],
            vec![Rational::from_int(2), Rational::from_int(4)],
        ];
        let kernel = kernel_basis(&singular);
        assert_eq!(kernel, vec![vec![Rational::from_int(-2), Rational::from_int(1)]]);
        assert!(solve_linear(&singular, &[Rational::zero(), Rational::zero()]).is_err());
    }
}
