use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Integer scalar used by the lattice routines.
///
/// Any signed Euclidean integer type qualifies. Fixed-width types (`i64`,
/// `i128`) are fine for small inputs; intermediate normal forms of nested
/// constructions can exceed them, which is why the crate-root aliases pick
/// [`num_bigint::BigInt`].
pub trait IntScalar:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Send
    + Sync
    + Signed
    + Integer
    + FromPrimitive
    + ToPrimitive
    + 'static
{
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("scalar type cannot represent an i64 value")
    }
}

impl<T> IntScalar for T where
    T: Clone
        + Debug
        + Display
        + Eq
        + Ord
        + Hash
        + Send
        + Sync
        + Signed
        + Integer
        + FromPrimitive
        + ToPrimitive
        + 'static
{
}

/// Extended gcd `(g, x, y)` with `g = x*a + y*b` and `g >= 0`.
pub(crate) fn xgcd<T: IntScalar>(a: &T, b: &T) -> (T, T, T) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (T::one(), T::zero());
    let (mut old_t, mut t) = (T::zero(), T::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = old_r - q.clone() * r.clone();
        old_r = std::mem::replace(&mut r, nr);
        let ns = old_s - q.clone() * s.clone();
        old_s = std::mem::replace(&mut s, ns);
        let nt = old_t - q * t.clone();
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn xgcd_identity() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                let (g, x, y) = xgcd(&a, &b);
                assert_eq!(g, a.gcd(&b));
                assert_eq!(x * a + y * b, g);
            }
        }
        let (g, x, y) = xgcd(&BigInt::from(84), &BigInt::from(-30));
        assert_eq!(g, BigInt::from(6));
        assert_eq!(x * 84 + y * -30, BigInt::from(6));
    }
}
