//! Coefficient fields for the graded-ring engine.
//!
//! Everything is computed exactly: rational coefficients are arbitrary
//! precision fractions in lowest terms, mod-2 coefficients are bits.
//! The field also fixes which kind of characteristic class lives over it
//! (Pontrjagin classes over `Q` in degrees `4i`, Stiefel-Whitney classes
//! over `F2` in degrees `i`), so the degree step per class index is a
//! constant of the scalar type.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Runtime tag naming the coefficient field, used by the model loader and
/// report renderer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldTag {
    /// The rationals.
    Rat,
    /// The field with two elements.
    F2,
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rat => write!(f, "Q"),
            FieldTag::F2 => write!(f, "F2"),
        }
    }
}

/// Exact coefficient scalar of a graded algebra.
pub trait Scalar: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Which field this is, for runtime dispatch in the CLI.
    const FIELD: FieldTag;

    /// Cohomological degree of the class with index `i` is `i * DEGREE_STEP`:
    /// 4 for Pontrjagin classes, 1 for Stiefel-Whitney classes.
    const DEGREE_STEP: usize;

    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn from_int(n: i64) -> Self;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// The exact value of `num/den`, or `None` when the denominator is not
    /// invertible in this field. `den` must be nonzero.
    fn from_fraction(num: i64, den: i64) -> Option<Self>;

    /// Splits into (is_negative, absolute value) for rendering.
    fn sign_split(&self) -> (bool, Self) {
        (false, self.clone())
    }
}

/// Exact rational scalar, kept in lowest terms with positive denominator.
pub type Rat = BigRational;

/// Build a rational from a numerator/denominator pair of machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl Scalar for BigRational {
    const FIELD: FieldTag = FieldTag::Rat;
    const DEGREE_STEP: usize = 4;

    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn neg(&self) -> Self {
        -self
    }

    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_fraction(num: i64, den: i64) -> Option<Self> {
        (den != 0).then(|| rat(num, den))
    }

    fn sign_split(&self) -> (bool, Self) {
        (self.is_negative(), self.abs())
    }
}

/// An element of the two-element field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mod2(pub bool);

impl fmt::Display for Mod2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.0 { 1 } else { 0 })
    }
}

impl Scalar for Mod2 {
    const FIELD: FieldTag = FieldTag::F2;
    const DEGREE_STEP: usize = 1;

    fn zero() -> Self {
        Mod2(false)
    }

    fn one() -> Self {
        Mod2(true)
    }

    fn is_zero(&self) -> bool {
        !self.0
    }

    fn add(&self, rhs: &Self) -> Self {
        Mod2(self.0 ^ rhs.0)
    }

    fn neg(&self) -> Self {
        *self
    }

    fn mul(&self, rhs: &Self) -> Self {
        Mod2(self.0 && rhs.0)
    }

    fn from_int(n: i64) -> Self {
        Mod2(n.rem_euclid(2) == 1)
    }

    fn from_fraction(num: i64, den: i64) -> Option<Self> {
        // An odd denominator is a unit mod 2 and inverts to 1.
        (den % 2 != 0).then(|| Mod2::from_int(num))
    }
}

/// Canonical string form of a rational: `p` for integers, `p/q` otherwise,
/// always with positive denominator and lowest terms.
pub fn render_rat(x: &Rat) -> String {
    debug_assert!(x.denom().is_positive());
    x.to_string()
}
