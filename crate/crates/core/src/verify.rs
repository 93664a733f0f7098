//! Exhaustive certification of the bijections and of the counting identities
//! at a fixed size, shared by the command-line tool and the test suites.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bijections::*;
use crate::counting::{
    binomial, catalan, chains_count, coeff_c_pow, deutsch_returns, flaw_block_weight_schroder,
    free_schroder_count, identity9_check, narayana, schroder_number,
};
use crate::error::{ButterflyError, Result};
use crate::involutions::{signed_block_sum_dyck, signed_block_sum_schroder};
use crate::lattice_paths::{
    decompose, enumerate_paths_with, Alphabet, Constraint, LatticePath, SegmentKind, Step,
};
use crate::limits::Limits;
use crate::trees::{
    enumerate_all_chains_with, enumerate_colored_chains_with, enumerate_doubly_rooted_with,
    enumerate_kcolored_with, enumerate_leaf_colored_doubly_rooted_with,
    enumerate_leaf_colored_with, enumerate_trees_with, PlaneTree,
};

/// Palette used when certifying the colored-chain map without an explicit one.
pub const DEFAULT_PALETTE: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BijectionName {
    Butterfly,
    Glove,
    DrtFreeDyck,
    BicoloredFreeDyck,
    DrtBicolored,
    LeafcoloredSchroder,
    LeafcoloredDrtFreeSchroder,
    ChainTricolored,
    ColoredChainKcolored,
}

impl BijectionName {
    pub const ALL: [BijectionName; 9] = [
        BijectionName::Butterfly,
        BijectionName::Glove,
        BijectionName::DrtFreeDyck,
        BijectionName::BicoloredFreeDyck,
        BijectionName::DrtBicolored,
        BijectionName::LeafcoloredSchroder,
        BijectionName::LeafcoloredDrtFreeSchroder,
        BijectionName::ChainTricolored,
        BijectionName::ColoredChainKcolored,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BijectionName::Butterfly => "butterfly",
            BijectionName::Glove => "glove",
            BijectionName::DrtFreeDyck => "drt-free-dyck",
            BijectionName::BicoloredFreeDyck => "bicolored-free-dyck",
            BijectionName::DrtBicolored => "drt-bicolored",
            BijectionName::LeafcoloredSchroder => "leafcolored-schroder",
            BijectionName::LeafcoloredDrtFreeSchroder => "leafcolored-drt-free-schroder",
            BijectionName::ChainTricolored => "chain-tricolored",
            BijectionName::ColoredChainKcolored => "colored-chain-kcolored",
        }
    }
}

impl fmt::Display for BijectionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BijectionName {
    type Err = ButterflyError;

    fn from_str(s: &str) -> Result<Self> {
        BijectionName::ALL
            .iter()
            .copied()
            .find(|b| b.name() == s)
            .ok_or_else(|| ButterflyError::UnknownName(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionReport {
    pub name: BijectionName,
    pub n: usize,
    pub domain_size: usize,
    pub codomain_size: usize,
    /// Closed-form size both sides should have.
    pub expected_size: BigInt,
    pub failures: usize,
    pub counterexample: Option<String>,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
            && BigInt::from(self.domain_size) == self.expected_size
            && BigInt::from(self.codomain_size) == self.expected_size
    }
}

struct Tally {
    failures: usize,
    counterexample: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            failures: 0,
            counterexample: None,
        }
    }

    fn fail(&mut self, what: String) {
        self.failures += 1;
        if self.counterexample.is_none() {
            self.counterexample = Some(what);
        }
    }
}

/// Maps every element of both sides across and back, and checks that the
/// forward images are distinct members of the codomain.
fn round_trip<A, B>(
    domain: impl Iterator<Item = A>,
    codomain: impl Iterator<Item = B>,
    forward: impl Fn(&A) -> Result<B>,
    backward: impl Fn(&B) -> Result<A>,
) -> (usize, usize, Tally)
where
    A: Eq + fmt::Debug,
    B: Ord + fmt::Debug,
{
    let mut tally = Tally::new();
    let mut codomain_set = BTreeSet::new();
    for b in codomain {
        match backward(&b).and_then(|a| forward(&a).map(|again| (a, again))) {
            Ok((_, again)) if again == b => {}
            Ok((a, again)) => tally.fail(format!("{b:?} -> {a:?} -> {again:?}")),
            Err(e) => tally.fail(format!("{b:?}: {e}")),
        }
        codomain_set.insert(b);
    }
    let mut images = BTreeSet::new();
    let mut domain_size = 0;
    for a in domain {
        domain_size += 1;
        match forward(&a).and_then(|b| backward(&b).map(|again| (b, again))) {
            Ok((b, again)) => {
                if again != a {
                    tally.fail(format!("{a:?} -> {b:?} -> {again:?}"));
                } else if !codomain_set.contains(&b) {
                    tally.fail(format!("{a:?} -> {b:?}, outside the codomain"));
                } else if !images.insert(b) {
                    tally.fail(format!("{a:?} collides with an earlier image"));
                }
            }
            Err(e) => tally.fail(format!("{a:?}: {e}")),
        }
    }
    (domain_size, codomain_set.len(), tally)
}

fn free_dyck(n: usize, limits: &Limits) -> Result<impl Iterator<Item = LatticePath>> {
    enumerate_paths_with(Alphabet::Dyck, n, Constraint::Free, limits)
}

/// Certifies one bijection on every structure of size `n`.
pub fn verify_bijection(name: BijectionName, n: usize, limits: &Limits) -> Result<BijectionReport> {
    verify_bijection_with_palette(name, n, DEFAULT_PALETTE, limits)
}

/// As [`verify_bijection`], with the palette of the colored-chain map given.
pub fn verify_bijection_with_palette(
    name: BijectionName,
    n: usize,
    palette: usize,
    limits: &Limits,
) -> Result<BijectionReport> {
    let central = binomial(2 * n as u64, n as u64);
    let (expected_size, (domain_size, codomain_size, tally)) = match name {
        BijectionName::Butterfly => (
            central,
            round_trip(
                enumerate_doubly_rooted_with(n, limits)?,
                all_decompositions(n, limits)?.into_iter(),
                |d| Ok(butterfly_decompose(d)),
                |d| Ok(butterfly_compose(d)),
            ),
        ),
        BijectionName::Glove => {
            limits.check_paths(n)?;
            (
                catalan(n as u64),
                round_trip(
                    enumerate_trees_with(n, limits)?,
                    enumerate_paths_with(Alphabet::Dyck, n, Constraint::NonNegative, limits)?,
                    |t| Ok(glove_tree_to_dyck(t)),
                    glove_dyck_to_tree,
                ),
            )
        }
        BijectionName::DrtFreeDyck => (
            central,
            round_trip(
                enumerate_doubly_rooted_with(n, limits)?,
                free_dyck(n, limits)?,
                |d| Ok(drt_to_free_dyck(d)),
                free_dyck_to_drt,
            ),
        ),
        BijectionName::BicoloredFreeDyck => (
            central,
            round_trip(
                enumerate_kcolored_with(n, 2, limits)?,
                free_dyck(n, limits)?,
                bicolored_to_free_dyck,
                free_dyck_to_bicolored,
            ),
        ),
        BijectionName::DrtBicolored => (
            central,
            round_trip(
                enumerate_doubly_rooted_with(n, limits)?,
                enumerate_kcolored_with(n, 2, limits)?,
                |d| Ok(drt_to_bicolored(d)),
                bicolored_to_drt,
            ),
        ),
        BijectionName::LeafcoloredSchroder => (
            schroder_number(n as u64),
            round_trip(
                enumerate_leaf_colored_with(n, limits)?,
                enumerate_paths_with(Alphabet::Schroder, n, Constraint::NonNegative, limits)?,
                leafcolored_to_schroder,
                schroder_to_leafcolored,
            ),
        ),
        BijectionName::LeafcoloredDrtFreeSchroder => (
            free_schroder_count(n as u64),
            round_trip(
                enumerate_leaf_colored_doubly_rooted_with(n, limits)?,
                enumerate_paths_with(Alphabet::Schroder, n, Constraint::Free, limits)?,
                leafcolored_drt_to_free_schroder,
                free_schroder_to_leafcolored_drt,
            ),
        ),
        BijectionName::ChainTricolored => (
            chains_count(n),
            round_trip(
                enumerate_all_chains_with(n, limits)?,
                enumerate_kcolored_with(n, 3, limits)?,
                |c| Ok(chain_to_tricolored(c)),
                tricolored_to_chain,
            ),
        ),
        BijectionName::ColoredChainKcolored => {
            let k = palette + 2;
            let expected = crate::series::Series::one(n + 1)
                .div(&kcolored_denominator(k, n + 1))?
                .at(n)
                .clone();
            (
                expected,
                round_trip(
                    enumerate_colored_chains_with(n, palette, limits)?,
                    enumerate_kcolored_with(n, k, limits)?,
                    |c| Ok(colored_chain_to_kcolored(c)),
                    kcolored_to_colored_chain,
                ),
            )
        }
    };
    Ok(BijectionReport {
        name,
        n,
        domain_size,
        codomain_size,
        expected_size,
        failures: tally.failures,
        counterexample: tally.counterexample,
    })
}

/// `1 - k x C`, whose reciprocal counts `k`-colored plane trees.
fn kcolored_denominator(k: usize, order: usize) -> crate::series::Series {
    let one = crate::series::Series::one(order);
    let c = crate::counting::catalan_series(order);
    &one - &c.shift(1).scale(&BigInt::from(k))
}

/// Every sequence of butterflies followed by a tail, with `n` edges in
/// total, built without reference to any tree.
fn all_decompositions(n: usize, limits: &Limits) -> Result<Vec<ButterflyDecomposition>> {
    limits.check_paths(n)?;
    let trees: Vec<Vec<PlaneTree>> = (0..=n)
        .map(|i| enumerate_trees_with(i, limits).map(Iterator::collect))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    extend_decompositions(n, &trees, &mut prefix, &mut out);
    Ok(out)
}

fn extend_decompositions(
    budget: usize,
    trees: &[Vec<PlaneTree>],
    prefix: &mut Vec<Butterfly>,
    out: &mut Vec<ButterflyDecomposition>,
) {
    for tail in &trees[budget] {
        out.push(ButterflyDecomposition {
            butterflies: prefix.clone(),
            tail: tail.clone(),
        });
    }
    for weight in 1..=budget {
        for left_size in 0..weight {
            for left in &trees[left_size] {
                for right in &trees[weight - 1 - left_size] {
                    prefix.push(Butterfly {
                        left: left.clone(),
                        right: right.clone(),
                    });
                    extend_decompositions(budget - weight, trees, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
}

/// One expected-versus-observed comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub label: String,
    pub expected: BigInt,
    pub actual: BigInt,
}

impl Check {
    fn new(label: impl Into<String>, expected: BigInt, actual: BigInt) -> Self {
        Check {
            label: label.into(),
            expected,
            actual,
        }
    }

    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentityName {
    Eq9,
    Eq10,
    Eq12,
    ChungFeller,
    ChungFellerRefined,
    SchroderChungFeller,
    Narayana,
    LeafHalf,
}

impl IdentityName {
    pub const ALL: [IdentityName; 8] = [
        IdentityName::Eq9,
        IdentityName::Eq10,
        IdentityName::Eq12,
        IdentityName::ChungFeller,
        IdentityName::ChungFellerRefined,
        IdentityName::SchroderChungFeller,
        IdentityName::Narayana,
        IdentityName::LeafHalf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityName::Eq9 => "eq9",
            IdentityName::Eq10 => "eq10",
            IdentityName::Eq12 => "eq12",
            IdentityName::ChungFeller => "cf",
            IdentityName::ChungFellerRefined => "cf-refined",
            IdentityName::SchroderChungFeller => "schroder-cf",
            IdentityName::Narayana => "narayana",
            IdentityName::LeafHalf => "leaf-half",
        }
    }
}

impl fmt::Display for IdentityName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityName {
    type Err = ButterflyError;

    fn from_str(s: &str) -> Result<Self> {
        IdentityName::ALL
            .iter()
            .copied()
            .find(|i| i.name() == s)
            .ok_or_else(|| ButterflyError::UnknownName(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub name: IdentityName,
    pub n: usize,
    pub checks: Vec<Check>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed())
    }
}

/// Checks an identity at size `n`. Closed-form identities are checked for
/// every size from 1 to `n`; exhaustive ones enumerate size `n` itself.
pub fn verify_identity(name: IdentityName, n: usize, limits: &Limits) -> Result<IdentityReport> {
    let checks = match name {
        IdentityName::Eq9 => eq9_checks(n, limits)?,
        IdentityName::Eq10 => (1..=n as u64)
            .map(|i| {
                Ok(Check::new(
                    format!("n={i}"),
                    BigInt::zero(),
                    signed_block_sum_dyck(i)?,
                ))
            })
            .collect::<Result<_>>()?,
        IdentityName::Eq12 => (1..=n as u64)
            .map(|i| {
                Ok(Check::new(
                    format!("n={i}"),
                    BigInt::from(1),
                    signed_block_sum_schroder(i)?,
                ))
            })
            .collect::<Result<_>>()?,
        IdentityName::ChungFeller => chung_feller_table(n, limits)?
            .into_iter()
            .map(|r| Check::new(format!("m={}", r.flaws), r.formula, r.observed))
            .collect(),
        IdentityName::ChungFellerRefined => {
            let mut checks: Vec<Check> = flaw_block_table(n, limits)?
                .into_iter()
                .map(|r| {
                    Check::new(
                        format!("paths m={} k={}", r.flaws, r.blocks),
                        r.formula,
                        r.observed,
                    )
                })
                .collect();
            for r in stem_prefix_table(n, limits)? {
                checks.push(Check::new(
                    format!("trees prefix={} stem={}", r.flaws, r.blocks),
                    r.formula,
                    r.observed,
                ));
            }
            checks
        }
        IdentityName::SchroderChungFeller => {
            let mut checks: Vec<Check> = schroder_cf_table(n, limits)?
                .into_iter()
                .map(|r| Check::new(format!("m={}", r.flaws), r.formula, r.observed))
                .collect();
            for r in schroder_flaw_block_table(n, limits)? {
                checks.push(Check::new(
                    format!("weighted m={} k={}", r.flaws, r.blocks),
                    r.formula,
                    r.observed,
                ));
            }
            for r in label_image_table(n, limits)? {
                checks.push(Check::new(
                    format!("label images m={}", r.flaws),
                    r.formula,
                    r.observed,
                ));
            }
            checks
        }
        IdentityName::Narayana => narayana_checks(n, limits)?,
        IdentityName::LeafHalf => leaf_half_checks(n, limits)?,
    };
    Ok(IdentityReport { name, n, checks })
}

fn eq9_checks(n: usize, limits: &Limits) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for i in 1..=n as u64 {
        let (lhs, rhs) = identity9_check(i)?;
        checks.push(Check::new(format!("n={i} sum"), rhs, lhs));
    }
    if n >= 1 {
        let observed = enumerate_leaf_colored_doubly_rooted_with(n, limits)?.count();
        checks.push(Check::new(
            format!("n={n} leaf-colored doubly rooted trees"),
            identity9_check(n as u64)?.0,
            BigInt::from(observed),
        ));
        let paths = enumerate_paths_with(Alphabet::Schroder, n, Constraint::Free, limits)?.count();
        checks.push(Check::new(
            format!("n={n} free Schroder paths"),
            free_schroder_count(n as u64),
            BigInt::from(paths),
        ));
    }
    Ok(checks)
}

fn narayana_checks(n: usize, limits: &Limits) -> Result<Vec<Check>> {
    if n == 0 {
        return Err(ButterflyError::domain("Narayana numbers need n >= 1"));
    }
    let mut dist = vec![0usize; n + 1];
    for t in enumerate_trees_with(n, limits)? {
        dist[t.leaf_count()] += 1;
    }
    (0..=n)
        .map(|i| {
            Ok(Check::new(
                format!("leaves={i}"),
                narayana(n as u64, i as u64)?,
                BigInt::from(dist[i]),
            ))
        })
        .collect()
}

fn leaf_half_checks(n: usize, limits: &Limits) -> Result<Vec<Check>> {
    if n == 0 {
        return Err(ButterflyError::domain(
            "the leaf count identity needs n >= 1",
        ));
    }
    let total: usize = enumerate_trees_with(n, limits)?
        .map(|t| t.leaf_count())
        .sum();
    let formula = BigInt::from(n + 1) * catalan(n as u64) / 2;
    Ok(vec![Check::new(
        format!("n={n} total leaves"),
        formula,
        BigInt::from(total),
    )])
}

/// A row of a flaw table: paths (or trees) with a given statistic, counted
/// exhaustively and by formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub flaws: usize,
    pub blocks: usize,
    pub observed: BigInt,
    pub formula: BigInt,
}

/// `[x^m] x^k C^k * [x^(n-m)] C^(k+1)`, valid for `k = 0` too.
fn refined_formula(n: usize, m: usize, k: usize) -> BigInt {
    if k > m || m > n {
        return BigInt::zero();
    }
    coeff_c_pow((m - k) as u64, k as u64) * coeff_c_pow((n - m) as u64, k as u64 + 1)
}

fn schroder_weight(path: &LatticePath) -> usize {
    if path.ends_with(Step::Up) {
        2
    } else {
        1
    }
}

/// Free Dyck paths of semilength `n` by number of flaws, against `c_n`.
pub fn chung_feller_table(n: usize, limits: &Limits) -> Result<Vec<TableRow>> {
    let mut dist = vec![0usize; n + 1];
    for path in free_dyck(n, limits)? {
        dist[decompose(&path)?.flaws()] += 1;
    }
    Ok(dist
        .into_iter()
        .enumerate()
        .map(|(m, count)| TableRow {
            flaws: m,
            blocks: 0,
            observed: BigInt::from(count),
            formula: catalan(n as u64),
        })
        .collect())
}

fn joint_rows(
    n: usize,
    joint: BTreeMap<(usize, usize), usize>,
    formula: impl Fn(usize, usize) -> BigInt,
) -> Vec<TableRow> {
    let mut rows = Vec::new();
    for m in 0..=n {
        for k in 0..=m {
            let expected = formula(m, k);
            let observed = BigInt::from(joint.get(&(m, k)).copied().unwrap_or(0));
            if expected.is_zero() && observed.is_zero() {
                continue;
            }
            rows.push(TableRow {
                flaws: m,
                blocks: k,
                observed,
                formula: expected,
            });
        }
    }
    rows
}

/// Free Dyck paths by (flaws, flaw blocks), against the closed form.
pub fn flaw_block_table(n: usize, limits: &Limits) -> Result<Vec<TableRow>> {
    let mut joint = BTreeMap::new();
    for path in free_dyck(n, limits)? {
        let d = decompose(&path)?;
        *joint.entry((d.flaws(), d.flaw_blocks())).or_insert(0) += 1;
    }
    Ok(joint_rows(n, joint, |m, k| refined_formula(n, m, k)))
}

/// Doubly rooted trees by (prefix edges, stem size), against the same
/// closed form as [`flaw_block_table`].
pub fn stem_prefix_table(n: usize, limits: &Limits) -> Result<Vec<TableRow>> {
    let mut joint = BTreeMap::new();
    for drt in enumerate_doubly_rooted_with(n, limits)? {
        *joint
            .entry((prefix_edge_count(&drt), stem_size(&drt)))
            .or_insert(0) += 1;
    }
    Ok(joint_rows(n, joint, |m, k| refined_formula(n, m, k)))
}

/// Weighted free Schröder paths by number of flaws, against `r_n`. A path
/// ending with an up step weighs 2, any other path 1.
pub fn schroder_cf_table(n: usize, limits: &Limits) -> Result<Vec<TableRow>> {
    let mut dist = vec![0usize; n + 1];
    for path in enumerate_paths_with(Alphabet::Schroder, n, Constraint::Free, limits)? {
        dist[decompose(&path)?.flaws()] += schroder_weight(&path);
    }
    Ok(dist
        .into_iter()
        .enumerate()
        .map(|(m, w)| TableRow {
            flaws: m,
            blocks: 0,
            observed: BigInt::from(w),
            formula: schroder_number(n as u64),
        })
        .collect())
}

/// Weighted free Schröder paths by (flaws, flaw blocks), against the
/// closed form.
pub fn schroder_flaw_block_table(n: usize, limits: &Limits) -> Result<Vec<TableRow>> {
    let mut joint = BTreeMap::new();
    for path in enumerate_paths_with(Alphabet::Schroder, n, Constraint::Free, limits)? {
        let d = decompose(&path)?;
        *joint.entry((d.flaws(), d.flaw_blocks())).or_insert(0) += schroder_weight(&path);
    }
    Ok(joint_rows(n, joint, |m, k| match (m, k) {
        (0, 0) => schroder_number(n as u64),
        (_, 0) => BigInt::zero(),
        _ => flaw_block_weight_schroder(n as u64, m as u64, k as u64).unwrap_or_default(),
    }))
}

/// For each label `m`, sends every fully leaf-colored tree through the
/// vertex labelled `m` to a free Schröder path. The images have `m` flaws,
/// and every such path is hit as often as its weight, so each row totals the
/// number of leaf-colored trees, `r_n`.
pub fn label_image_table(n: usize, limits: &Limits) -> Result<Vec<TableRow>> {
    let trees: Vec<_> = enumerate_leaf_colored_with(n, limits)?.collect();
    let mut rows = Vec::new();
    for m in 0..=n {
        let mut hits: BTreeMap<LatticePath, usize> = BTreeMap::new();
        let mut wrong_flaws = 0usize;
        for t in &trees {
            let path = leafcolored_label_image(t, m)?;
            if decompose(&path)?.flaws() != m {
                wrong_flaws += 1;
            }
            *hits.entry(path).or_insert(0) += 1;
        }
        let mismatched = hits
            .iter()
            .filter(|(p, &c)| c != schroder_weight(p))
            .count();
        let mut expected_paths = 0usize;
        for path in enumerate_paths_with(Alphabet::Schroder, n, Constraint::Free, limits)? {
            if decompose(&path)?.flaws() == m {
                expected_paths += 1;
            }
        }
        let consistent = wrong_flaws == 0 && mismatched == 0 && hits.len() == expected_paths;
        let observed = if consistent {
            BigInt::from(trees.len())
        } else {
            BigInt::from(-1)
        };
        rows.push(TableRow {
            flaws: m,
            blocks: 0,
            observed,
            formula: schroder_number(n as u64),
        });
    }
    Ok(rows)
}

/// Dyck paths of semilength `n` by number of returns to the axis, against
/// the closed form.
pub fn returns_table(n: usize, limits: &Limits) -> Result<Vec<TableRow>> {
    let mut dist = vec![0usize; n + 1];
    for path in enumerate_paths_with(Alphabet::Dyck, n, Constraint::NonNegative, limits)? {
        let returns = decompose(&path)?
            .segments()
            .iter()
            .filter(|s| s.kind == SegmentKind::Positive)
            .count();
        dist[returns] += 1;
    }
    dist.into_iter()
        .enumerate()
        .skip(if n == 0 { 0 } else { 1 })
        .map(|(k, count)| {
            let formula = if n == 0 {
                BigInt::from(1)
            } else {
                deutsch_returns(n as u64, k as u64)?
            };
            Ok(TableRow {
                flaws: 0,
                blocks: k,
                observed: BigInt::from(count),
                formula,
            })
        })
        .collect()
}

/// Chains over every tree with `n` edges, counted by brute force.
pub fn brute_force_chain_count(n: usize, limits: &Limits) -> Result<BigInt> {
    Ok(BigInt::from(enumerate_all_chains_with(n, limits)?.count()))
}

/// Chain counts by size over every tree with `n` edges, by brute force;
/// index `k` holds chains with `k` vertices.
pub fn brute_force_chain_sizes(n: usize, limits: &Limits) -> Result<Vec<BigInt>> {
    let mut dist = vec![0usize; n + 2];
    for c in enumerate_all_chains_with(n, limits)? {
        dist[c.size()] += 1;
    }
    Ok(dist.into_iter().map(BigInt::from).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for b in BijectionName::ALL {
            assert_eq!(b.name().parse::<BijectionName>().unwrap(), b);
        }
        for i in IdentityName::ALL {
            assert_eq!(i.name().parse::<IdentityName>().unwrap(), i);
        }
        assert!("nope".parse::<BijectionName>().is_err());
    }

    #[test]
    fn every_bijection_small() {
        let limits = Limits::default();
        for b in BijectionName::ALL {
            for n in 0..=3 {
                let r = verify_bijection(b, n, &limits).unwrap();
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn every_identity_small() {
        let limits = Limits::default();
        for i in IdentityName::ALL {
            let r = verify_identity(i, 4, &limits).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn returns_match_all_flaw_paths() {
        let limits = Limits::default();
        for r in returns_table(5, &limits).unwrap() {
            assert_eq!(r.observed, r.formula);
            assert_eq!(
                r.formula,
                crate::counting::flaw_block_count_dyck(5, 5, r.blocks as u64).unwrap()
            );
        }
    }
}
