//! Parity-reversing involutions on free paths, where the parity of a path is
//! the parity of its number of flaw blocks, and the signed sums they evaluate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::counting::{a_nk, binomial, rational_to_integer};
use crate::error::{ButterflyError, Result};
use crate::lattice_paths::{
    decompose, enumerate_paths_with, Alphabet, Constraint, LatticePath, SegmentKind, Step,
};
use crate::limits::Limits;

/// Reflects the last irreducible segment of a nonempty free Dyck path.
pub fn dyck_flip(path: &LatticePath) -> Result<LatticePath> {
    if path.is_empty() {
        return Err(ButterflyError::domain("dyck_flip needs a nonempty path"));
    }
    if path.has_horiz() {
        return Err(ButterflyError::domain(format!("{path} is not a Dyck path")));
    }
    let mut segments = decompose(path)?.into_segments();
    let last = segments
        .last_mut()
        .expect("nonempty free path has a segment");
    last.path = last.path.reflect();
    Ok(LatticePath::concat(segments.into_iter().map(|s| s.path)))
}

/// Reflects the last segment that is not a lone horizontal step on the axis,
/// keeping the trailing run of horizontal steps in place.
pub fn schroder_flip(path: &LatticePath) -> Result<LatticePath> {
    if path.count(Step::Up) == 0 {
        return Err(ButterflyError::domain(format!(
            "schroder_flip needs an up step, got {path}"
        )));
    }
    let mut segments = decompose(path)?.into_segments();
    let last = segments
        .iter_mut()
        .rev()
        .find(|s| s.kind != SegmentKind::AxisHoriz)
        .expect("a free path with an up step has a non-horizontal segment");
    last.path = last.path.reflect();
    Ok(LatticePath::concat(segments.into_iter().map(|s| s.path)))
}

fn check_positive(n: u64) -> Result<()> {
    if n == 0 {
        Err(ButterflyError::domain(
            "the signed sum is stated for n >= 1",
        ))
    } else {
        Ok(())
    }
}

/// `sum_i (-1)^i (2i+1)/(2n+1) binomial(2n+1, n-i)`, which vanishes for `n >= 1`.
pub fn signed_block_sum_dyck(n: u64) -> Result<BigInt> {
    check_positive(n)?;
    let sum = (0..=n).fold(BigRational::zero(), |acc, i| {
        let term = BigRational::new(
            BigInt::from(2 * i + 1) * binomial(2 * n + 1, n - i),
            BigInt::from(2 * n + 1),
        );
        if i % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    });
    rational_to_integer(sum)
}

/// `sum_i (-1)^i a(n-i, 2i+1)`, which equals 1 for `n >= 1`.
pub fn signed_block_sum_schroder(n: u64) -> Result<BigInt> {
    check_positive(n)?;
    (0..=n).try_fold(BigInt::zero(), |acc, i| {
        let term = a_nk(n - i, 2 * i + 1)?;
        Ok(if i % 2 == 0 { acc + term } else { acc - term })
    })
}

/// Result of checking an involution exhaustively at one size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionReport {
    pub n: usize,
    /// Paths in the domain of the involution.
    pub checked: usize,
    /// Domain paths the involution maps to themselves.
    pub fixed_points: usize,
    /// Domain paths where the map fails to be a parity-reversing involution.
    pub failures: usize,
    /// `sum (-1)^blocks` over every free path of the alphabet, including any
    /// path outside the domain.
    pub signed_sum: BigInt,
}

impl InvolutionReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.fixed_points == 0
    }
}

fn exhaustive(
    alphabet: Alphabet,
    n: usize,
    limits: &Limits,
    in_domain: impl Fn(&LatticePath) -> bool,
    flip: impl Fn(&LatticePath) -> Result<LatticePath>,
) -> Result<InvolutionReport> {
    let mut report = InvolutionReport {
        n,
        checked: 0,
        fixed_points: 0,
        failures: 0,
        signed_sum: BigInt::zero(),
    };
    for path in enumerate_paths_with(alphabet, n, Constraint::Free, limits)? {
        let blocks = decompose(&path)?.flaw_blocks();
        report.signed_sum += if blocks % 2 == 0 { 1 } else { -1 };
        if !in_domain(&path) {
            continue;
        }
        report.checked += 1;
        let image = flip(&path)?;
        if image == path {
            report.fixed_points += 1;
            continue;
        }
        let image_blocks = decompose(&image)?.flaw_blocks();
        let back = flip(&image)?;
        if back != path || image_blocks % 2 == blocks % 2 || !in_domain(&image) {
            report.failures += 1;
        }
    }
    Ok(report)
}

/// Checks [`dyck_flip`] on every nonempty free Dyck path of semilength `n`.
pub fn check_dyck_flip(n: usize, limits: &Limits) -> Result<InvolutionReport> {
    exhaustive(Alphabet::Dyck, n, limits, |p| !p.is_empty(), dyck_flip)
}

/// Checks [`schroder_flip`] on every free Schröder path of semilength `n`
/// with an up step.
pub fn check_schroder_flip(n: usize, limits: &Limits) -> Result<InvolutionReport> {
    exhaustive(
        Alphabet::Schroder,
        n,
        limits,
        |p| p.count(Step::Up) > 0,
        schroder_flip,
    )
}

/// Number of free paths of semilength `n` with each number of flaw blocks;
/// index `i` holds the count for `i` blocks.
pub fn block_distribution(alphabet: Alphabet, n: usize, limits: &Limits) -> Result<Vec<u64>> {
    let mut dist = vec![0u64; n + 1];
    for path in enumerate_paths_with(alphabet, n, Constraint::Free, limits)? {
        dist[decompose(&path)?.flaw_blocks()] += 1;
    }
    Ok(dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::coeff_c_pow;

    fn p(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    #[test]
    fn dyck_examples() {
        assert_eq!(dyck_flip(&p("UD")).unwrap(), p("DU"));
        assert_eq!(dyck_flip(&p("UDDU")).unwrap(), p("UDUD"));
        assert_eq!(dyck_flip(&p("DUUD")).unwrap(), p("DUDU"));
        assert!(dyck_flip(&p("")).is_err());
        assert!(dyck_flip(&p("UHD")).is_err());
        assert!(dyck_flip(&p("UU")).is_err());
    }

    #[test]
    fn schroder_examples() {
        assert_eq!(schroder_flip(&p("UD")).unwrap(), p("DU"));
        assert_eq!(schroder_flip(&p("UDH")).unwrap(), p("DUH"));
        assert_eq!(schroder_flip(&p("HDU")).unwrap(), p("HUD"));
        assert!(schroder_flip(&p("HH")).is_err());
        assert!(schroder_flip(&p("")).is_err());
    }

    #[test]
    fn signed_sums() {
        for n in 1..=30 {
            assert_eq!(signed_block_sum_dyck(n).unwrap(), BigInt::zero());
            assert_eq!(signed_block_sum_schroder(n).unwrap(), BigInt::from(1));
        }
        assert!(signed_block_sum_dyck(0).is_err());
        assert!(signed_block_sum_schroder(0).is_err());
    }

    #[test]
    fn exhaustive_dyck() {
        let limits = Limits::default();
        for n in 1..=7 {
            let r = check_dyck_flip(n, &limits).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.signed_sum, BigInt::zero());
        }
    }

    #[test]
    fn exhaustive_schroder() {
        let limits = Limits::default();
        for n in 1..=5 {
            let r = check_schroder_flip(n, &limits).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.signed_sum, BigInt::from(1));
        }
    }

    #[test]
    fn block_distributions() {
        let limits = Limits::default();
        for n in 0..=8usize {
            let dist = block_distribution(Alphabet::Dyck, n, &limits).unwrap();
            for (i, &count) in dist.iter().enumerate() {
                let expected = coeff_c_pow((n - i) as u64, 2 * i as u64 + 1);
                assert_eq!(BigInt::from(count), expected, "n={n}, i={i}");
            }
        }
        for n in 0..=5usize {
            let dist = block_distribution(Alphabet::Schroder, n, &limits).unwrap();
            for (i, &count) in dist.iter().enumerate() {
                let expected = a_nk((n - i) as u64, 2 * i as u64 + 1).unwrap();
                assert_eq!(BigInt::from(count), expected, "n={n}, i={i}");
            }
        }
    }
}
