//! Exact scalar rings used by the matrix layer.
//!
//! Everything in the crate is computed over a Euclidean domain: the integers
//! (arbitrary precision) or a prime field `Fp<P>`.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A Euclidean domain with exact arithmetic.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Eq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Euclidean size comparison: `true` when `self` is strictly smaller.
    fn size_lt(&self, other: &Self) -> bool;

    /// Division with remainder of Euclidean size smaller than `d`.
    fn div_rem_euclid(&self, d: &Self) -> (Self, Self);

    /// A unit `u` such that `u * self` is the normal representative.
    fn normalizing_unit(&self) -> Self;

    fn is_unit(&self) -> bool;

    /// Inverse of a unit.
    fn unit_inv(&self) -> Self;

    /// `true` when `d` divides `self` exactly.
    fn divisible_by(&self, d: &Self) -> bool {
        if d.is_zero() {
            return self.is_zero();
        }
        self.div_rem_euclid(d).1.is_zero()
    }

    fn from_i64(v: i64) -> Self;
}

impl Scalar for BigInt {
    fn size_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }

    fn div_rem_euclid(&self, d: &Self) -> (Self, Self) {
        // rounded division keeps remainders at most |d|/2
        let (q, r) = self.div_mod_floor(d);
        let twice = &r + &r;
        if twice.magnitude() > d.magnitude() {
            (q + 1, r - d)
        } else {
            (q, r)
        }
    }

    fn normalizing_unit(&self) -> Self {
        if self.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }

    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }

    fn unit_inv(&self) -> Self {
        self.clone()
    }

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

/// Element of the prime field `Z/P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn inv(self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        let mut r = 1u128;
        let mut b = self.0 as u128;
        let mut e = P - 2;
        let m = P as u128;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % m;
            }
            b = b * b % m;
            e >>= 1;
        }
        Some(Fp(r as u64))
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp(((self.0 as u128 + o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> AddAssign for Fp<P> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<const P: u64> SubAssign for Fp<P> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn size_lt(&self, other: &Self) -> bool {
        self.0 == 0 && other.0 != 0
    }

    fn div_rem_euclid(&self, d: &Self) -> (Self, Self) {
        let inv = d.inv().expect("division by zero in Fp");
        (*self * inv, Fp(0))
    }

    fn normalizing_unit(&self) -> Self {
        self.inv().unwrap_or(Fp(1))
    }

    fn is_unit(&self) -> bool {
        self.0 != 0
    }

    fn unit_inv(&self) -> Self {
        self.inv().expect("zero is not a unit")
    }

    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
}
