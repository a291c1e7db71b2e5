use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// An exact coefficient ring.
///
/// Everything that can sit inside a truncated series implements this: field
/// elements, polynomials, PBW algebra elements, tensor-square elements. The
/// trait is deliberately small — ring ops plus two context hooks:
///
/// * `from_int` embeds an integer (binomial coefficients, relation constants)
///   without knowing the characteristic; for field elements this produces an
///   unbound literal that binds on first contact with a bound element.
/// * `try_inv` is a partial inverse. Series inversion only ever needs the
///   inverse of a leading coefficient, and for symbolic coefficient rings
///   only scalars are invertible, so a total `Inv` would be a lie.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(n: i64) -> Self;

    fn try_inv(&self) -> Option<Self>;
}
