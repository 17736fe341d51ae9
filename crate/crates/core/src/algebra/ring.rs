use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::poly::GradedPoly;

/// Coefficient ring for series. Elements know how to build their own zero
/// and one, since the ring data (alphabet, Chow ring) lives in the value.
pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn scaled(&self, c: &BigInt) -> Self;
    /// Inverse when the element is the constant ±1.
    fn unit_inverse(&self) -> Option<Self>;
}

impl Coeff for GradedPoly {
    fn zero_like(&self) -> Self {
        GradedPoly::zero(self.alphabet())
    }
    fn one_like(&self) -> Self {
        GradedPoly::one(self.alphabet())
    }
    fn is_zero(&self) -> bool {
        GradedPoly::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &BigInt) -> Self {
        self.scale(c)
    }
    fn unit_inverse(&self) -> Option<Self> {
        let c = self.as_integer()?;
        (c.abs().is_one()).then(|| self.clone())
    }
}

impl Coeff for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::from(0)
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &BigInt) -> Self {
        self * c
    }
    fn unit_inverse(&self) -> Option<Self> {
        self.abs().is_one().then(|| self.clone())
    }
}
