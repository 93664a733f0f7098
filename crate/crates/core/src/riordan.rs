//! Riordan arrays `(g, f)`: column `j` has generating function `g f^j`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{ButterflyError, Result};
use crate::series::Series;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiordanArray {
    g: Series,
    f: Series,
}

impl RiordanArray {
    /// `g` needs constant term 1; `f` needs `f(0) = 0` and `f'(0) != 0`.
    pub fn new(g: Series, f: Series) -> Result<Self> {
        if g.coeff(0) != Some(&BigInt::one()) {
            return Err(ButterflyError::domain("g must have constant term 1"));
        }
        match (f.coeff(0), f.coeff(1)) {
            (Some(c0), Some(c1)) if c0.is_zero() && !c1.is_zero() => {}
            _ => {
                return Err(ButterflyError::domain(
                    "f must have zero constant term and a nonzero linear term",
                ))
            }
        }
        Ok(RiordanArray { g, f })
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn f(&self) -> &Series {
        &self.f
    }

    /// Number of rows that the truncated `g` and `f` determine.
    pub fn order(&self) -> usize {
        self.g.order().min(self.f.order())
    }

    fn column(&self, j: usize) -> Series {
        let order = self.order();
        &self.g.truncate(order) * &self.f.truncate(order).pow(j)
    }

    /// `[x^i] g f^j`.
    pub fn entry(&self, i: usize, j: usize) -> Result<BigInt> {
        if i >= self.order() {
            return Err(ButterflyError::domain(format!(
                "row {i} is beyond the known order {}",
                self.order()
            )));
        }
        if j > i {
            return Ok(BigInt::zero());
        }
        Ok(self.column(j).at(i).clone())
    }

    /// The lower triangle, rows `0..rows`; row `i` has `i + 1` entries.
    pub fn rows(&self, rows: usize) -> Result<Vec<Vec<BigInt>>> {
        if rows > self.order() {
            return Err(ButterflyError::domain(format!(
                "{rows} rows requested but only {} are known",
                self.order()
            )));
        }
        let mut table: Vec<Vec<BigInt>> = (0..rows).map(|i| Vec::with_capacity(i + 1)).collect();
        let order = self.order();
        let f = self.f.truncate(order);
        let mut col = self.g.truncate(order);
        for j in 0..rows {
            for (i, row) in table.iter_mut().enumerate().skip(j) {
                row.push(col.at(i).clone());
            }
            col = &col * &f;
        }
        Ok(table)
    }

    /// `(g, f) * a = g(x) a(f(x))`, the generating function of the matrix
    /// applied to the coefficient vector of `a`.
    pub fn apply(&self, a: &Series) -> Result<Series> {
        let order = self.order().min(a.order());
        let inner = a.truncate(order).compose(&self.f.truncate(order))?;
        Ok(&self.g.truncate(order) * &inner)
    }
}

pub fn riordan_entry(r: &RiordanArray, i: usize, j: usize) -> Result<BigInt> {
    r.entry(i, j)
}

/// `r * a`, truncated at `order` or at the order `r` and `a` determine,
/// whichever is smaller.
pub fn riordan_apply(r: &RiordanArray, a: &Series, order: usize) -> Result<Series> {
    Ok(r.apply(a)?.truncate(order))
}
