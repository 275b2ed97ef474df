use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Poly, Q};
use crate::Error;

/// `t`-adic valuation. `Infinite` is the valuation of zero and compares
/// greater than every finite value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// A rational function `num(t)/den(t)` with `den(0) != 0`, i.e. an element
/// of the localization of `Q[t]` at the ideal `(t)`.
///
/// Stored in canonical form: numerator and denominator coprime and the
/// denominator normalized to constant term 1. Structural equality is
/// therefore equality of functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocalFn {
    num: Poly,
    den: Poly,
}

impl LocalFn {
    /// Builds `num/den`, reducing first. Fails if the reduced denominator
    /// vanishes at `t = 0`.
    pub fn new(num: Poly, den: Poly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::PoleAtZero);
        }
        if num.is_zero() {
            return Ok(LocalFn::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let c0 = den.coeff(0);
        if c0.is_zero() {
            return Err(Error::PoleAtZero);
        }
        let inv = c0.recip();
        Ok(LocalFn {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(p: Poly) -> Self {
        LocalFn {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Q) -> Self {
        LocalFn::from_poly(Poly::constant(c))
    }

    /// `c * t^k`.
    pub fn monomial(c: Q, k: usize) -> Self {
        LocalFn::from_poly(Poly::monomial(c, k))
    }

    pub fn t_pow(k: usize) -> Self {
        LocalFn::monomial(Q::one(), k)
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn valuation(&self) -> Valuation {
        match self.num.order() {
            Some(k) => Valuation::Finite(k as u32),
            None => Valuation::Infinite,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Valuation::Finite(0)
    }

    /// Value at `t = 0` (the residue class).
    pub fn at_zero(&self) -> Q {
        self.num.coeff(0)
    }

    /// Value at `x`, or `None` if `x` is a pole.
    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// Quotient inside the local ring; `None` if it would have a pole at 0
    /// (or `rhs` is zero).
    pub fn checked_div(&self, rhs: &LocalFn) -> Option<LocalFn> {
        if rhs.is_zero() {
            return None;
        }
        LocalFn::new(&self.num * &rhs.den, &self.den * &rhs.num).ok()
    }

    pub fn inverse(&self) -> Option<LocalFn> {
        LocalFn::one().checked_div(self)
    }

    /// The first `n` Taylor coefficients at `t = 0`.
    pub fn series(&self, n: usize) -> Vec<Q> {
        // den has constant term 1, so 1/den expands by the usual recursion.
        let mut inv = vec![Q::zero(); n];
        if n > 0 {
            inv[0] = Q::one();
        }
        for k in 1..n {
            let mut acc = Q::zero();
            for j in 1..=k.min(self.den.coeffs().len().saturating_sub(1)) {
                acc -= self.den.coeff(j) * &inv[k - j];
            }
            inv[k] = acc;
        }
        (0..n)
            .map(|k| {
                let mut acc = Q::zero();
                for j in 0..=k.min(self.num.coeffs().len().saturating_sub(1)) {
                    acc += self.num.coeff(j) * &inv[k - j];
                }
                acc
            })
            .collect()
    }

    /// Substitutes `t := inner(t)`; `inner` must vanish at 0 so the result
    /// stays regular there.
    pub fn substitute(&self, inner: &Poly) -> LocalFn {
        assert!(inner.coeff(0).is_zero(), "substitution must fix t = 0");
        LocalFn::new(self.num.compose(inner), self.den.compose(inner))
            .expect("substitution t -> t*u(t) preserves regularity at 0")
    }

    /// Splits `self = t^v * u` with `u` a unit; `None` for zero.
    pub fn split_unit(&self) -> Option<(u32, LocalFn)> {
        let v = self.valuation().finite()?;
        let shifted = Poly::new(self.num.coeffs()[v as usize..].to_vec());
        Some((
            v,
            LocalFn {
                num: shifted,
                den: self.den.clone(),
            },
        ))
    }
}

impl Zero for LocalFn {
    fn zero() -> Self {
        LocalFn {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for LocalFn {
    fn one() -> Self {
        LocalFn::from_poly(Poly::one())
    }
}

fn combine(num: Poly, den: Poly) -> LocalFn {
    LocalFn::new(num, den).expect("local ring is closed under ring operations")
}

impl Add for LocalFn {
    type Output = LocalFn;
    fn add(self, rhs: LocalFn) -> LocalFn {
        &self + &rhs
    }
}

impl Add for &LocalFn {
    type Output = LocalFn;
    fn add(self, rhs: &LocalFn) -> LocalFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return combine(&self.num + &rhs.num, self.den.clone());
        }
        combine(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for LocalFn {
    type Output = LocalFn;
    fn sub(self, rhs: LocalFn) -> LocalFn {
        &self + &(-&rhs)
    }
}

impl Sub for &LocalFn {
    type Output = LocalFn;
    fn sub(self, rhs: &LocalFn) -> LocalFn {
        self + &(-rhs)
    }
}

impl Mul for LocalFn {
    type Output = LocalFn;
    fn mul(self, rhs: LocalFn) -> LocalFn {
        &self * &rhs
    }
}

impl Mul for &LocalFn {
    type Output = LocalFn;
    fn mul(self, rhs: &LocalFn) -> LocalFn {
        if self.is_zero() || rhs.is_zero() {
            return LocalFn::zero();
        }
        combine(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for LocalFn {
    type Output = LocalFn;
    fn neg(self) -> LocalFn {
        -&self
    }
}

impl Neg for &LocalFn {
    type Output = LocalFn;
    fn neg(self) -> LocalFn {
        LocalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for LocalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for LocalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
