//! Exact chain statistics and their comparison with the leading-order
//! asymptotics `H_n ~ (9/2)^n / 2` and `R_n ~ (n + 9) (9/2)^n / 12`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::counting::NamedSeries;
use crate::error::{ButterflyError, Result};

/// Exact rational numbers.
pub type ExactRational = BigRational;

/// Average number of vertices in a chain of a plane tree with `n` edges,
/// `R_n / H_n`, in lowest terms.
pub fn average_chain_size(n: usize) -> Result<ExactRational> {
    let reports = asymptotic_reports(n)?;
    Ok(reports[n].average.clone())
}

/// Leading-order prediction `(n + 9) / 6` for the average chain size.
pub fn predicted_average(n: usize) -> ExactRational {
    BigRational::new(BigInt::from(n + 9), BigInt::from(6))
}

fn growth_power(n: usize) -> ExactRational {
    BigRational::new(BigInt::from(9).pow(n as u32), BigInt::from(2).pow(n as u32))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticReport {
    pub n: usize,
    /// `H_n`, the number of chains.
    pub chains: BigInt,
    /// `R_n`, the total size of all chains.
    pub total_size: BigInt,
    pub average: ExactRational,
    /// `H_n / ((9/2)^n / 2)`.
    pub chains_ratio: ExactRational,
    /// `R_n / ((n + 9) (9/2)^n / 12)`.
    pub total_size_ratio: ExactRational,
    pub predicted_average: ExactRational,
}

impl AsymptoticReport {
    /// `average - predicted_average`.
    pub fn average_error(&self) -> ExactRational {
        &self.average - &self.predicted_average
    }
}

/// Reports for every `n` in `0..=max_n`, sharing one expansion of each series.
pub fn asymptotic_reports(max_n: usize) -> Result<Vec<AsymptoticReport>> {
    let order = max_n + 1;
    let h = NamedSeries::Chains.expand(order)?;
    let r = NamedSeries::ChainSizeTotal.expand(order)?;
    (0..=max_n)
        .map(|n| {
            let chains = h.at(n).clone();
            let total_size = r.at(n).clone();
            if chains.is_zero() {
                return Err(ButterflyError::Exactness(format!("H_{n} vanished")));
            }
            let average = BigRational::new(total_size.clone(), chains.clone());
            let g = growth_power(n);
            let chains_ratio = BigRational::from_integer(chains.clone() * 2) / &g;
            let total_size_ratio =
                BigRational::from_integer(total_size.clone() * 12) / (g * BigInt::from(n + 9));
            Ok(AsymptoticReport {
                n,
                chains,
                total_size,
                average,
                chains_ratio,
                total_size_ratio,
                predicted_average: predicted_average(n),
            })
        })
        .collect()
}

pub fn asymptotic_report(n: usize) -> Result<AsymptoticReport> {
    Ok(asymptotic_reports(n)?.swap_remove(n))
}

/// Decimal rendering with `digits` significant digits, rounding half to even.
/// Trailing zeros are kept so every value shows the same precision.
pub fn to_decimal(q: &ExactRational, digits: usize) -> String {
    assert!(digits > 0, "at least one significant digit is needed");
    if q.is_zero() {
        return "0".to_string();
    }
    let negative = q.is_negative();
    let q = q.abs();
    let ten = BigInt::from(10);
    let pow10 = |k: i64| -> ExactRational {
        let p = ten.pow(k.unsigned_abs() as u32);
        if k >= 0 {
            BigRational::from_integer(p)
        } else {
            BigRational::new(BigInt::one(), p)
        }
    };
    let len = |x: &BigInt| x.to_string().len() as i64;
    // 10^e <= q < 10^(e+1)
    let mut e = len(q.numer()) - len(q.denom());
    if q < pow10(e) {
        e -= 1;
    }
    let mut shift = digits as i64 - 1 - e;
    let scaled = &q * pow10(shift);
    let (mut int, rem) = scaled.numer().div_rem(scaled.denom());
    let twice: BigInt = rem * 2;
    let round_up = match twice.cmp(scaled.denom()) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Less => false,
        std::cmp::Ordering::Equal => int.is_odd(),
    };
    if round_up {
        int += 1;
    }
    if int == ten.pow(digits as u32) {
        int /= 10;
        shift -= 1;
    }
    let body = int.to_string();
    let rendered = if shift <= 0 {
        format!("{body}{}", "0".repeat(shift.unsigned_abs() as usize))
    } else if (shift as usize) < body.len() {
        let (whole, frac) = body.split_at(body.len() - shift as usize);
        format!("{whole}.{frac}")
    } else {
        format!("0.{}{body}", "0".repeat(shift as usize - body.len()))
    };
    if negative {
        format!("-{rendered}")
    } else {
        rendered
    }
}
