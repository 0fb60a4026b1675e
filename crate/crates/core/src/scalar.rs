//! Scalar traits used by the generic linear-algebra layer.
//!
//! The normal-form algorithms only need a Euclidean ring with a sign, and the
//! polyhedral code only needs an ordered field. Everything downstream of those
//! layers is instantiated with the arbitrary-precision aliases exported at the
//! crate root ([`crate::Int`], [`crate::Rat`]).

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{Num, Signed};

/// An exact integer type usable for Hermite and Smith normal forms.
pub trait IntScalar: Integer + Signed + Clone + Debug + Display + Hash + Send + Sync {}

impl<T> IntScalar for T where T: Integer + Signed + Clone + Debug + Display + Hash + Send + Sync {}

/// An ordered field. Exactness is the caller's business: `Ratio<BigInt>`
/// gives exact answers, `f64` does not.
pub trait FieldScalar: Num + Signed + Clone + PartialOrd + Debug + Display + Send + Sync {}

impl<T> FieldScalar for T where T: Num + Signed + Clone + PartialOrd + Debug + Display + Send + Sync {}
