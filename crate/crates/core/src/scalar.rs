//! Coefficient rings.
//!
//! Everything in this crate computes over the integers, but the linear
//! algebra and polynomial code is written against [`Ring`] so that the same
//! routines run on machine integers (fast path) and on [`BigInt`] (exact
//! fallback when a checked operation overflows).

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::{BigInt, ToBigInt};
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, Zero};

/// A Euclidean ring of integers with checked arithmetic.
pub trait Ring:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Zero
    + One
    + Signed
    + Integer
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + ToBigInt
    + From<i32>
    + Send
    + Sync
    + 'static
{
    fn to_big(&self) -> BigInt {
        self.to_bigint().expect("integers always convert")
    }
}

impl<T> Ring for T where
    T: Clone
        + Debug
        + Display
        + Eq
        + Ord
        + Hash
        + Zero
        + One
        + Signed
        + Integer
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + ToBigInt
        + From<i32>
        + Send
        + Sync
        + 'static
{
}

/// Raised by checked arithmetic on fixed-width rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

pub(crate) fn add<T: Ring>(a: &T, b: &T) -> Result<T, Overflow> {
    a.checked_add(b).ok_or(Overflow)
}

pub(crate) fn sub<T: Ring>(a: &T, b: &T) -> Result<T, Overflow> {
    a.checked_sub(b).ok_or(Overflow)
}

pub(crate) fn mul<T: Ring>(a: &T, b: &T) -> Result<T, Overflow> {
    a.checked_mul(b).ok_or(Overflow)
}

/// `a - q * b`, checked.
pub(crate) fn sub_mul<T: Ring>(a: &T, q: &T, b: &T) -> Result<T, Overflow> {
    sub(a, &mul(q, b)?)
}

/// Sign `(-1)^k` in any ring.
pub fn sign<T: Ring>(k: usize) -> T {
    if k.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}
