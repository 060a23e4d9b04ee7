//! The exact ordered field every coordinate lives in.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{NumRef, Signed, ToPrimitive};

/// An exact ordered field with enough integer structure to round, print and
/// normalise directions.
///
/// Implemented for `Ratio<I>` over any signed integer backing, so
/// `BigRational` (the default everywhere) and `Ratio<i64>` / `Ratio<i128>`
/// for small inputs. Floating point types are deliberately absent: every
/// predicate in this crate is decided exactly.
pub trait Scalar:
    Clone + Ord + Eq + Hash + Debug + Display + FromStr + NumRef + Signed + Send + Sync + 'static
{
    fn from_int(v: i64) -> Self;

    fn floor_val(&self) -> Self;

    fn ceil_val(&self) -> Self;

    /// Lossy conversion, for display only.
    fn to_f64_lossy(&self) -> f64;

    /// Rescale `(a, b) != (0, 0)` by a positive factor so that both entries
    /// are integers with gcd 1.
    fn primitive_pair(a: &Self, b: &Self) -> (Self, Self);

    /// Convert an integral value to `i64`, if it fits.
    fn to_i64_exact(&self) -> Option<i64>;

    fn half() -> Self {
        Self::one() / Self::from_int(2)
    }
}

impl<I> Scalar for Ratio<I>
where
    I: Integer
        + Signed
        + Clone
        + Hash
        + Debug
        + Display
        + FromStr
        + ToPrimitive
        + From<i32>
        + TryFrom<i64>
        + Send
        + Sync
        + 'static,
{
    fn from_int(v: i64) -> Self {
        match I::try_from(v) {
            Ok(i) => Ratio::from_integer(i),
            Err(_) => panic!("integer {v} does not fit the scalar backing type"),
        }
    }

    fn floor_val(&self) -> Self {
        self.floor()
    }

    fn ceil_val(&self) -> Self {
        self.ceil()
    }

    fn to_f64_lossy(&self) -> f64 {
        let n = self.numer().to_f64().unwrap_or(f64::NAN);
        let d = self.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    }

    fn primitive_pair(a: &Self, b: &Self) -> (Self, Self) {
        let l = a.denom().lcm(b.denom());
        let ia = a.numer().clone() * (l.clone() / a.denom().clone());
        let ib = b.numer().clone() * (l / b.denom().clone());
        let g = ia.gcd(&ib);
        assert!(!g.is_zero(), "primitive_pair of the zero vector");
        (Ratio::from_integer(ia / g.clone()), Ratio::from_integer(ib / g))
    }

    fn to_i64_exact(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }
}
