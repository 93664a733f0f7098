//! Closed-form counts and the named generating functions.
//!
//! Names accepted by [`named_series`]:
//!
//! | name | series |
//! |------|--------|
//! | `C` | Catalan numbers, `C = 1 + x C^2` |
//! | `B` | central binomial coefficients, `B^2 (1 - 4x) = 1` |
//! | `S` | large Schröder numbers, `S = 1 + x S + x S^2` |
//! | `Lstar` | plane trees with a distinguished leaf or root, `B / C` |
//! | `L` | plane trees with at least one edge and a distinguished leaf, `(B - 1) / 2` |
//! | `Lsq` | `L^2` |
//! | `chains` | nonempty chains over all plane trees, `C / (1 - 2x C^2)` |
//! | `chains_leaf` | chains ending in a leaf, `1 / (1 - 2x C^2)` |
//! | `chains_total_alt` | `2B / (3 - B)` |
//! | `chain_size_total` | total size of all chains, `4B / (3 - B)^2` |
//! | `one`, `x`, `nat` | `1`, `x`, `1/(1 - x)^2 = 1 + 2x + 3x^2 + ...` |

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{ButterflyError, Result};
use crate::series::Series;

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn central_binomial(n: u64) -> BigInt {
    binomial(2 * n, n)
}

pub fn catalan(n: u64) -> BigInt {
    central_binomial(n) / BigInt::from(n + 1)
}

/// Plane trees with `n` edges and `i` leaves.
pub fn narayana(n: u64, i: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(ButterflyError::domain("Narayana numbers need n >= 1"));
    }
    if i > n {
        return Err(ButterflyError::domain(format!(
            "leaf count {i} exceeds {n}"
        )));
    }
    if i == 0 {
        return Ok(BigInt::zero());
    }
    Ok(binomial(n, i) * binomial(n, i - 1) / BigInt::from(n))
}

/// `[x^n] C^k = k/(2n+k) * binomial(2n+k, n)`; `C^0 = 1`.
pub fn coeff_c_pow(n: u64, k: u64) -> BigInt {
    if k == 0 {
        return if n == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    BigInt::from(k) * binomial(2 * n + k, n) / BigInt::from(2 * n + k)
}

/// `a(n, k) = [x^n] S^k`, with `a(0, k) = 1` and for `n >= 1`
/// `a(n, k) = k/n * sum_{i<n} 2^(i+1) binomial(n+k-1, i) binomial(n, i+1)`.
pub fn a_nk(n: u64, k: u64) -> Result<BigInt> {
    if k == 0 {
        return Err(ButterflyError::domain("a(n, k) needs k >= 1"));
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let sum: BigInt = (0..n)
        .map(|i| (BigInt::one() << (i + 1)) * binomial(n + k - 1, i) * binomial(n, i + 1))
        .sum();
    exact_quotient(BigInt::from(k) * sum, BigInt::from(n))
}

pub fn schroder_number(n: u64) -> BigInt {
    a_nk(n, 1).expect("k = 1 is in range")
}

/// Free Schröder paths of semilength `n`, summed over the number `i` of
/// horizontal steps.
pub fn free_schroder_count(n: u64) -> BigInt {
    (0..=n)
        .map(|i| binomial(2 * n - i, i) * binomial(2 * n - 2 * i, n - i))
        .sum()
}

/// Leaf-colored doubly rooted trees with `n >= 1` edges, summed over the
/// number `i` of leaves: `(2n + 2 - i) 2^(i-1) N(n, i)`.
pub fn leaf_colored_drt_count(n: u64) -> Result<BigInt> {
    (1..=n)
        .map(|i| Ok(BigInt::from(2 * n + 2 - i) * (BigInt::one() << (i - 1)) * narayana(n, i)?))
        .sum()
}

/// Both sides of the leaf-colored identity: the count of leaf-colored doubly
/// rooted trees and the count of free Schröder paths.
pub fn identity9_check(n: u64) -> Result<(BigInt, BigInt)> {
    Ok((leaf_colored_drt_count(n)?, free_schroder_count(n)))
}

fn check_flaw_range(n: u64, m: u64, k: u64) -> Result<()> {
    if 0 < k && k <= m && m <= n {
        Ok(())
    } else {
        Err(ButterflyError::domain(format!(
            "need 0 < k <= m <= n, got n={n}, m={m}, k={k}"
        )))
    }
}

/// Free Dyck paths of semilength `n` with `m` flaws in `k` flaw blocks:
/// `k/(2m-k) binomial(2m-k, m) * (k+1)/(2n-2m+k+1) binomial(2n-2m+k+1, n-m)`.
pub fn flaw_block_count_dyck(n: u64, m: u64, k: u64) -> Result<BigInt> {
    check_flaw_range(n, m, k)?;
    let first = BigRational::new(
        BigInt::from(k) * binomial(2 * m - k, m),
        BigInt::from(2 * m - k),
    );
    let second = BigRational::new(
        BigInt::from(k + 1) * binomial(2 * n - 2 * m + k + 1, n - m),
        BigInt::from(2 * n - 2 * m + k + 1),
    );
    rational_to_integer(first * second)
}

/// Dyck paths of semilength `n` with `k` returns to the axis:
/// `k/(2n-k) binomial(2n-k, n)`.
pub fn deutsch_returns(n: u64, k: u64) -> Result<BigInt> {
    if !(0 < k && k <= n) {
        return Err(ButterflyError::domain(format!(
            "need 0 < k <= n, got n={n}, k={k}"
        )));
    }
    exact_quotient(
        BigInt::from(k) * binomial(2 * n - k, n),
        BigInt::from(2 * n - k),
    )
}

/// Total weight of free Schröder paths with `m` flaws in `k` flaw blocks,
/// where a path ending in an up step weighs 2 and any other path 1:
/// `a(m-k, k) * (a(n-m, k+1) + a(n-m, k))`.
pub fn flaw_block_weight_schroder(n: u64, m: u64, k: u64) -> Result<BigInt> {
    check_flaw_range(n, m, k)?;
    Ok(a_nk(m - k, k)? * (a_nk(n - m, k + 1)? + a_nk(n - m, k)?))
}

pub(crate) fn exact_quotient(num: BigInt, den: BigInt) -> Result<BigInt> {
    let (q, r) = num.div_rem(&den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(ButterflyError::Exactness(format!(
            "{num} is not divisible by {den}"
        )))
    }
}

pub(crate) fn rational_to_integer(q: BigRational) -> Result<BigInt> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(ButterflyError::Exactness(format!("{q} is not an integer")))
    }
}

/// Catalan numbers from `c_{n+1} = sum_i c_i c_{n-i}`.
pub fn catalan_series(order: usize) -> Series {
    let mut c: Vec<BigInt> = Vec::with_capacity(order);
    for n in 0..order {
        if n == 0 {
            c.push(BigInt::one());
        } else {
            let next = (0..n).map(|i| &c[i] * &c[n - 1 - i]).sum();
            c.push(next);
        }
    }
    Series::new(c, order)
}

pub fn central_binomial_series(order: usize) -> Series {
    Series::from_fn(order, |n| central_binomial(n as u64))
}

/// Solves `S = 1 + x S + x S^2` by iteration; each round fixes one more
/// coefficient.
pub fn schroder_series(order: usize) -> Series {
    let one = Series::one(order);
    let mut s = one.clone();
    for _ in 0..order {
        let next = &one + &(&s + &(&s * &s)).shift(1);
        if next == s {
            break;
        }
        s = next;
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedSeries {
    Catalan,
    CentralBinomial,
    Schroder,
    LStar,
    L,
    LSquared,
    Chains,
    ChainsLeaf,
    ChainsTotalAlt,
    ChainSizeTotal,
    One,
    X,
    Naturals,
}

impl NamedSeries {
    pub const ALL: [NamedSeries; 13] = [
        NamedSeries::Catalan,
        NamedSeries::CentralBinomial,
        NamedSeries::Schroder,
        NamedSeries::LStar,
        NamedSeries::L,
        NamedSeries::LSquared,
        NamedSeries::Chains,
        NamedSeries::ChainsLeaf,
        NamedSeries::ChainsTotalAlt,
        NamedSeries::ChainSizeTotal,
        NamedSeries::One,
        NamedSeries::X,
        NamedSeries::Naturals,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedSeries::Catalan => "C",
            NamedSeries::CentralBinomial => "B",
            NamedSeries::Schroder => "S",
            NamedSeries::LStar => "Lstar",
            NamedSeries::L => "L",
            NamedSeries::LSquared => "Lsq",
            NamedSeries::Chains => "chains",
            NamedSeries::ChainsLeaf => "chains_leaf",
            NamedSeries::ChainsTotalAlt => "chains_total_alt",
            NamedSeries::ChainSizeTotal => "chain_size_total",
            NamedSeries::One => "one",
            NamedSeries::X => "x",
            NamedSeries::Naturals => "nat",
        }
    }

    pub fn expand(self, order: usize) -> Result<Series> {
        if order == 0 {
            return Err(ButterflyError::domain("series order must be at least 1"));
        }
        let two = BigInt::from(2);
        let one = Series::one(order);
        let b = || central_binomial_series(order);
        let c = || catalan_series(order);
        // 1 - L = (3 - B) / 2, which has constant term 1.
        let one_minus_l = || (&Series::constant(BigInt::from(3), order) - &b()).div_exact(&two);
        // 1 - 2x C^2
        let klazar_den = || &one - &(&c() * &c()).shift(1).scale(&two);
        Ok(match self {
            NamedSeries::Catalan => c(),
            NamedSeries::CentralBinomial => b(),
            NamedSeries::Schroder => schroder_series(order),
            NamedSeries::LStar => &b() * &c().reciprocal()?,
            NamedSeries::L => (&b() - &one).div_exact(&two)?,
            NamedSeries::LSquared => NamedSeries::L.expand(order)?.pow(2),
            NamedSeries::Chains => c().div(&klazar_den())?,
            NamedSeries::ChainsLeaf => klazar_den().reciprocal()?,
            NamedSeries::ChainsTotalAlt => b().div(&one_minus_l()?)?,
            NamedSeries::ChainSizeTotal => b().div(&one_minus_l()?.pow(2))?,
            NamedSeries::One => one,
            NamedSeries::X => Series::x(order),
            NamedSeries::Naturals => Series::from_fn(order, |n| BigInt::from(n + 1)),
        })
    }
}

impl fmt::Display for NamedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedSeries {
    type Err = ButterflyError;

    fn from_str(s: &str) -> Result<Self> {
        NamedSeries::ALL
            .iter()
            .copied()
            .find(|n| n.name() == s)
            .ok_or_else(|| ButterflyError::UnknownName(s.to_string()))
    }
}

pub fn named_series(name: &str, order: usize) -> Result<Series> {
    name.parse::<NamedSeries>()?.expand(order)
}

/// `H_n`: nonempty chains over all plane trees with `n` edges.
pub fn chains_count(n: usize) -> BigInt {
    NamedSeries::Chains
        .expand(n + 1)
        .expect("chain series is well defined")
        .at(n)
        .clone()
}

/// `R_n`: total size of all chains over all plane trees with `n` edges.
pub fn chains_total_size(n: usize) -> BigInt {
    NamedSeries::ChainSizeTotal
        .expand(n + 1)
        .expect("chain size series is well defined")
        .at(n)
        .clone()
}

/// Chains with `k` vertices over all plane trees with `n` edges:
/// `[x^n] B L^(k-1)`.
pub fn chains_of_size(n: usize, k: usize) -> Result<BigInt> {
    if k == 0 {
        return Err(ButterflyError::domain("chain size must be at least 1"));
    }
    let order = n + 1;
    let l = NamedSeries::L.expand(order)?;
    Ok((&central_binomial_series(order) * &l.pow(k - 1))
        .at(n)
        .clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_values() {
        assert_eq!(catalan(0), BigInt::one());
        assert_eq!(narayana(2, 1).unwrap(), BigInt::one());
        assert_eq!(narayana(2, 2).unwrap(), BigInt::one());
        assert_eq!(narayana(3, 0).unwrap(), BigInt::zero());
        assert!(narayana(0, 0).is_err());
        assert!(narayana(2, 3).is_err());
        assert_eq!(schroder_number(2), BigInt::from(6));
    }

    #[test]
    fn catalan_powers() {
        for n in 0..=12 {
            assert_eq!(coeff_c_pow(n, 1), catalan(n));
        }
        assert_eq!(coeff_c_pow(2, 2), BigInt::from(5));
        assert_eq!(coeff_c_pow(3, 3), BigInt::from(28));
        assert_eq!(coeff_c_pow(0, 0), BigInt::one());
        assert_eq!(coeff_c_pow(3, 0), BigInt::zero());
    }

    #[test]
    fn schroder_powers() {
        assert_eq!(a_nk(0, 7).unwrap(), BigInt::one());
        assert_eq!(a_nk(1, 1).unwrap(), BigInt::from(2));
        assert_eq!(a_nk(2, 1).unwrap(), BigInt::from(6));
        assert!(a_nk(3, 0).is_err());
    }

    #[test]
    fn flaw_formulas() {
        assert_eq!(flaw_block_count_dyck(2, 1, 1).unwrap(), BigInt::from(2));
        for n in 1..=9 {
            for k in 1..=n {
                assert_eq!(
                    flaw_block_count_dyck(n, n, k).unwrap(),
                    deutsch_returns(n, k).unwrap()
                );
            }
        }
        assert!(flaw_block_count_dyck(2, 3, 1).is_err());
        assert!(flaw_block_count_dyck(2, 1, 0).is_err());
        assert_eq!(
            flaw_block_weight_schroder(1, 1, 1).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            flaw_block_weight_schroder(3, 3, 1).unwrap(),
            BigInt::from(12)
        );
    }

    #[test]
    fn identity9_small() {
        assert_eq!(
            identity9_check(1).unwrap(),
            (BigInt::from(3), BigInt::from(3))
        );
        for n in 1..=12 {
            let (l, r) = identity9_check(n).unwrap();
            assert_eq!(l, r, "n = {n}");
        }
    }

    #[test]
    fn named_series_values() {
        assert_eq!(
            named_series("chains", 6).unwrap().coeffs(),
            ints(&[1, 3, 12, 51, 222, 978]).as_slice()
        );
        assert_eq!(
            named_series("chains_leaf", 6).unwrap().coeffs(),
            ints(&[1, 2, 8, 34, 148, 652]).as_slice()
        );
        assert_eq!(
            named_series("Lsq", 6).unwrap().coeffs(),
            ints(&[0, 0, 1, 6, 29, 130]).as_slice()
        );
        assert_eq!(
            named_series("S", 6).unwrap().coeffs(),
            ints(&[1, 2, 6, 22, 90, 394]).as_slice()
        );
        assert!(matches!(
            named_series("nope", 4),
            Err(ButterflyError::UnknownName(_))
        ));
        assert!(named_series("C", 0).is_err());
    }

    #[test]
    fn chain_counts() {
        let h: Vec<BigInt> = (0..6).map(chains_count).collect();
        assert_eq!(h, ints(&[1, 3, 12, 51, 222, 978]));
        let r: Vec<BigInt> = (0..5).map(chains_total_size).collect();
        assert_eq!(r, ints(&[1, 4, 19, 92, 446]));
        assert_eq!(chains_of_size(2, 1).unwrap(), BigInt::from(6));
        assert_eq!(chains_of_size(2, 2).unwrap(), BigInt::from(5));
        assert_eq!(chains_of_size(2, 3).unwrap(), BigInt::from(1));
        for n in 0..=10 {
            let total: BigInt = (1..=n + 1).map(|k| chains_of_size(n, k).unwrap()).sum();
            assert_eq!(total, chains_count(n));
        }
    }
}
