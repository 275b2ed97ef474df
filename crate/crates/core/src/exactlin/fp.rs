use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Element of the prime field `F_P`, stored as a residue in `0..P`.
///
/// `P` must be a prime no larger than 97; this is checked when an element is
/// constructed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    const CHECK: () = assert!(
        P >= 2 && P <= 97 && is_prime(P),
        "modulus must be a prime <= 97"
    );

    pub fn new(v: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::CHECK;
        Fp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    /// Every element of the field, in residue order.
    pub fn elements() -> impl Iterator<Item = Self> {
        (0..P).map(|v| Self::new(v as i64))
    }

    /// A generator of the multiplicative group.
    pub fn primitive_root() -> Self {
        let order = P - 1;
        let factors: Vec<u32> = (2..=order)
            .filter(|d| order.is_multiple_of(*d) && is_prime(*d))
            .collect();
        Self::elements()
            .skip(1)
            .find(|g| factors.iter().all(|q| g.pow(order / q) != Self::one()))
            .expect("multiplicative group of a prime field is cyclic")
    }
}

pub(crate) const fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp((self.0 + rhs.0) % P)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp((self.0 + P - rhs.0) % P)
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp((self.0 * rhs.0) % P)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u32> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in prime field")
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}
