//! Truncated formal power series with exact integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{ButterflyError, Result};

/// Default truncation order for named series.
pub const DEFAULT_ORDER: usize = 64;

/// `a_0 + a_1 x + ... + a_{order-1} x^{order-1} + O(x^order)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<BigInt>,
}

impl Series {
    /// Coefficients beyond `order` are dropped, missing ones are zero.
    pub fn new(mut coeffs: Vec<BigInt>, order: usize) -> Self {
        coeffs.resize(order, BigInt::zero());
        Series { coeffs }
    }

    pub fn from_i64(coeffs: &[i64], order: usize) -> Self {
        Series::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), order)
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> BigInt) -> Self {
        Series {
            coeffs: (0..order).map(f).collect(),
        }
    }

    pub fn zero(order: usize) -> Self {
        Series::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Series::constant(BigInt::one(), order)
    }

    pub fn constant(c: BigInt, order: usize) -> Self {
        Series::new(vec![c], order)
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Series::monomial(1, order)
    }

    pub fn monomial(power: usize, order: usize) -> Self {
        Series::from_fn(order, |i| {
            if i == power {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }

    /// Exclusive truncation bound.
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^n`; `None` when `n` is at or beyond the order.
    pub fn coeff(&self, n: usize) -> Option<&BigInt> {
        self.coeffs.get(n)
    }

    /// Coefficient of `x^n`, panicking when it is not known.
    pub fn at(&self, n: usize) -> &BigInt {
        self.coeffs.get(n).unwrap_or_else(|| {
            panic!(
                "coefficient {n} requested from a series of order {}",
                self.order()
            )
        })
    }

    pub fn truncate(&self, order: usize) -> Self {
        Series::new(
            self.coeffs.iter().take(order).cloned().collect(),
            order.min(self.order()),
        )
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        let order = self.order();
        Series::from_fn(order, |i| {
            if i >= k {
                self.coeffs[i - k].clone()
            } else {
                BigInt::zero()
            }
        })
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides every coefficient by `d`, which must divide each exactly.
    pub fn div_exact(&self, d: &BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(ButterflyError::Exactness("division by zero".into()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let (q, r) = a.div_rem(d);
                if r.is_zero() {
                    Ok(q)
                } else {
                    Err(ButterflyError::Exactness(format!(
                        "coefficient {i} = {a} is not divisible by {d}"
                    )))
                }
            })
            .collect::<Result<_>>()?;
        Ok(Series { coeffs })
    }

    /// Multiplicative inverse; the constant term must be `1` or `-1`.
    pub fn reciprocal(&self) -> Result<Self> {
        let order = self.order();
        let c0 = self.coeffs.first().cloned().unwrap_or_else(BigInt::zero);
        if c0.abs() != BigInt::one() {
            return Err(ButterflyError::Exactness(format!(
                "reciprocal needs a unit constant term, found {c0}"
            )));
        }
        let mut inv: Vec<BigInt> = Vec::with_capacity(order);
        if order > 0 {
            inv.push(c0.clone());
        }
        for n in 1..order {
            let s: BigInt = (1..=n).map(|i| &self.coeffs[i] * &inv[n - i]).sum();
            inv.push(-(s * &c0));
        }
        Ok(Series { coeffs: inv })
    }

    pub fn div(&self, rhs: &Series) -> Result<Self> {
        Ok(self * &rhs.reciprocal()?)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut result = Series::one(self.order());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self(inner(x))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Result<Self> {
        if inner.coeffs.first().is_some_and(|c| !c.is_zero()) {
            return Err(ButterflyError::domain(
                "composition needs an inner series with zero constant term",
            ));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        // Horner: a_0 + inner (a_1 + inner (a_2 + ...)).
        let mut acc = Series::zero(order);
        for a in self.coeffs[..order].iter().rev() {
            acc = &(&acc * &inner) + &Series::constant(a.clone(), order);
        }
        Ok(acc)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Add for &Series {
    type Output = Series;

    fn add(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series::from_fn(order, |i| &self.coeffs[i] + &rhs.coeffs[i])
    }
}

impl Sub for &Series {
    type Output = Series;

    fn sub(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series::from_fn(order, |i| &self.coeffs[i] - &rhs.coeffs[i])
    }
}

impl Mul for &Series {
    type Output = Series;

    fn mul(self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let mut out = vec![BigInt::zero(); order];
        for (i, a) in self.coeffs[..order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..order - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Series { coeffs: out }
    }
}

impl Neg for &Series {
    type Output = Series;

    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Series {
            type Output = Series;

            fn $method(self, rhs: Series) -> Series {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
