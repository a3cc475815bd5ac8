//! Ring-object traits.
//!
//! Rings are values ("descriptors") carrying their parameters; elements are
//! plain data. All arithmetic goes through the ring object, which lets the
//! same generic code run over GF(p^e), F_q(ξ), K((z)) truncations, and
//! polynomial rings without trait-object indirection.

use crate::error::Result;
use std::fmt::Debug;

pub trait Ring: Clone + PartialEq + Debug {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Image of the integer n under the unique ring map ℤ → R.
    fn from_int(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    /// Equality as elements (series rings override this to compare only up
    /// to the common provable precision).
    fn elem_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }
    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
    fn sum(&self, it: impl IntoIterator<Item = Self::Elem>) -> Self::Elem {
        it.into_iter().fold(self.zero(), |a, b| self.add(&a, &b))
    }
    /// Human-readable form of an element (used by the CLI layer).
    fn display(&self, a: &Self::Elem) -> String;
}

pub trait Field: Ring {
    /// Multiplicative inverse; errors on (visibly) zero input.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

/// A ring with a distinguished endomorphism σ (here always a partial
/// q-Frobenius: the q-power map on field-of-definition coefficients, fixing
/// the structural variables t and z).
pub trait SigmaRing: Ring {
    fn sigma(&self, a: &Self::Elem) -> Self::Elem;

    /// σ⁻¹ where it exists (perfect coefficient fields). Default: unsupported.
    fn sigma_inv(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }

    fn sigma_pow(&self, a: &Self::Elem, n: u32) -> Self::Elem {
        let mut x = a.clone();
        for _ in 0..n {
            x = self.sigma(&x);
        }
        x
    }
}

pub trait SigmaField: SigmaRing + Field {}
impl<T: SigmaRing + Field> SigmaField for T {}
