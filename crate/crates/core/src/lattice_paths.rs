//! Dyck and Schröder step sequences and their flaw statistics.
//!
//! Steps are `U = (1, 1)`, `D = (1, -1)` and `H = (2, 0)`. A path of
//! x-extent `2n` has semilength `n`. A *free* path ends on the axis; it is a
//! Dyck or Schröder path when it also never goes below the axis.
//!
//! Every free path splits uniquely into irreducible segments, each of which
//! starts and ends on the axis without touching it in between: positive
//! elevated segments, negative elevated segments (flaw blocks), and single
//! `H` steps lying on the axis.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ButterflyError, Result};
use crate::limits::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Up,
    Down,
    Horiz,
}

impl Step {
    pub fn rise(self) -> i64 {
        match self {
            Step::Up => 1,
            Step::Down => -1,
            Step::Horiz => 0,
        }
    }

    pub fn advance(self) -> usize {
        match self {
            Step::Up | Step::Down => 1,
            Step::Horiz => 2,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Down => 'D',
            Step::Horiz => 'H',
        }
    }

    pub fn reflected(self) -> Step {
        match self {
            Step::Up => Step::Down,
            Step::Down => Step::Up,
            Step::Horiz => Step::Horiz,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Alphabet {
    Dyck,
    Schroder,
}

impl Alphabet {
    /// Steps in enumeration order.
    pub fn steps(self) -> &'static [Step] {
        match self {
            Alphabet::Dyck => &[Step::Up, Step::Down],
            Alphabet::Schroder => &[Step::Up, Step::Down, Step::Horiz],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    Free,
    NonNegative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PathTag {
    Free,
    Dyck,
    Schroder,
    Elevated,
    NegativeElevated,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct LatticePath {
    steps: Vec<Step>,
}

impl LatticePath {
    pub fn new(steps: Vec<Step>) -> Self {
        LatticePath { steps }
    }

    pub fn empty() -> Self {
        LatticePath::default()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn into_steps(self) -> Vec<Step> {
        self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn extent(&self) -> usize {
        self.steps.iter().map(|s| s.advance()).sum()
    }

    /// Half the x-extent.
    pub fn semilength(&self) -> usize {
        self.extent() / 2
    }

    pub fn count(&self, step: Step) -> usize {
        self.steps.iter().filter(|&&s| s == step).count()
    }

    pub fn has_horiz(&self) -> bool {
        self.steps.contains(&Step::Horiz)
    }

    pub fn final_height(&self) -> i64 {
        self.steps.iter().map(|s| s.rise()).sum()
    }

    /// Height after each step.
    pub fn height_profile(&self) -> Vec<i64> {
        self.steps
            .iter()
            .scan(0i64, |h, s| {
                *h += s.rise();
                Some(*h)
            })
            .collect()
    }

    pub fn is_free(&self) -> bool {
        self.final_height() == 0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.height_profile().iter().all(|&h| h >= 0)
    }

    /// Free, nonempty, starts with an up step and stays strictly above the
    /// axis until the last step.
    pub fn is_elevated(&self) -> bool {
        let profile = self.height_profile();
        self.is_free()
            && self.steps.first() == Some(&Step::Up)
            && profile[..profile.len() - 1].iter().all(|&h| h > 0)
    }

    pub fn is_negative_elevated(&self) -> bool {
        self.reflect().is_elevated()
    }

    pub fn reflect(&self) -> LatticePath {
        LatticePath::new(self.steps.iter().map(|s| s.reflected()).collect())
    }

    pub fn concat(parts: impl IntoIterator<Item = LatticePath>) -> LatticePath {
        LatticePath::new(parts.into_iter().flat_map(|p| p.steps).collect())
    }

    /// `U self D`.
    pub fn elevate(&self) -> LatticePath {
        let mut steps = Vec::with_capacity(self.steps.len() + 2);
        steps.push(Step::Up);
        steps.extend_from_slice(&self.steps);
        steps.push(Step::Down);
        LatticePath::new(steps)
    }

    pub fn ends_with(&self, step: Step) -> bool {
        self.steps.last() == Some(&step)
    }

    pub fn to_json(&self, alphabet: Alphabet) -> serde_json::Value {
        serde_json::to_value(PathRecord {
            alphabet,
            steps: self.to_string(),
        })
        .expect("path records serialize")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<(Alphabet, LatticePath)> {
        let record: PathRecord = serde_json::from_value(value.clone())
            .map_err(|e| ButterflyError::domain(format!("bad path JSON: {e}")))?;
        let path = parse_path(&record.steps)?;
        if record.alphabet == Alphabet::Dyck && path.has_horiz() {
            return Err(ButterflyError::domain("Dyck path contains an H step"));
        }
        Ok((record.alphabet, path))
    }
}

#[derive(Serialize, Deserialize)]
struct PathRecord {
    alphabet: Alphabet,
    steps: String,
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for LatticePath {
    type Err = ButterflyError;

    fn from_str(s: &str) -> Result<Self> {
        parse_path(s)
    }
}

/// Parses a word over `U`, `D`, `H`.
pub fn parse_path(text: &str) -> Result<LatticePath> {
    text.char_indices()
        .map(|(i, ch)| match ch {
            'U' => Ok(Step::Up),
            'D' => Ok(Step::Down),
            'H' => Ok(Step::Horiz),
            other => Err(ButterflyError::parse(
                i,
                format!("unexpected step {other:?}"),
            )),
        })
        .collect::<Result<Vec<_>>>()
        .map(LatticePath::new)
}

/// Tags a path. Dyck and Schroder are both non-negative free paths,
/// distinguished by whether any `H` step occurs.
pub fn classify(path: &LatticePath) -> BTreeSet<PathTag> {
    let mut tags = BTreeSet::new();
    if !path.is_free() {
        return tags;
    }
    tags.insert(PathTag::Free);
    if path.is_nonnegative() {
        tags.insert(if path.has_horiz() {
            PathTag::Schroder
        } else {
            PathTag::Dyck
        });
    }
    if path.is_elevated() {
        tags.insert(PathTag::Elevated);
    }
    if path.is_negative_elevated() {
        tags.insert(PathTag::NegativeElevated);
    }
    tags
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SegmentKind {
    /// An elevated segment above the axis.
    Positive,
    /// A negative elevated segment: a flaw block.
    Negative,
    /// A single `H` step on the axis.
    AxisHoriz,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub kind: SegmentKind,
    pub path: LatticePath,
}

/// The irreducible segments of a free path, in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SegmentDecomposition {
    segments: Vec<Segment>,
}

impl SegmentDecomposition {
    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn into_segments(self) -> Vec<Segment> {
        self.segments
    }

    pub fn flaw_blocks(&self) -> usize {
        self.negatives().count()
    }

    /// Up and horizontal steps inside flaw blocks.
    pub fn flaws(&self) -> usize {
        self.negatives()
            .map(|s| s.path.count(Step::Up) + s.path.count(Step::Horiz))
            .sum()
    }

    pub fn recompose(&self) -> LatticePath {
        LatticePath::concat(self.segments.iter().map(|s| s.path.clone()))
    }

    fn negatives(&self) -> impl Iterator<Item = &Segment> {
        self.segments
            .iter()
            .filter(|s| s.kind == SegmentKind::Negative)
    }
}

/// Splits a free path into its irreducible segments.
pub fn decompose(path: &LatticePath) -> Result<SegmentDecomposition> {
    if !path.is_free() {
        return Err(ButterflyError::domain(format!(
            "path {path} ends at height {}, not on the axis",
            path.final_height()
        )));
    }
    let mut segments = Vec::new();
    let mut start = 0;
    let mut height = 0i64;
    for (i, step) in path.steps.iter().enumerate() {
        height += step.rise();
        if height == 0 {
            let piece = LatticePath::new(path.steps[start..=i].to_vec());
            let kind = match path.steps[start] {
                Step::Up => SegmentKind::Positive,
                Step::Down => SegmentKind::Negative,
                Step::Horiz => SegmentKind::AxisHoriz,
            };
            segments.push(Segment { kind, path: piece });
            start = i + 1;
        }
    }
    Ok(SegmentDecomposition { segments })
}

pub fn flaws(path: &LatticePath) -> Result<usize> {
    decompose(path).map(|d| d.flaws())
}

pub fn flaw_blocks(path: &LatticePath) -> Result<usize> {
    decompose(path).map(|d| d.flaw_blocks())
}

pub fn reflect(path: &LatticePath) -> LatticePath {
    path.reflect()
}

/// Streaming depth-first generator of paths of a given semilength, in
/// lexicographic order with `U < D < H`.
#[derive(Clone, Debug)]
pub struct Paths {
    alphabet: &'static [Step],
    constraint: Constraint,
    extent: usize,
    steps: Vec<Step>,
    /// Next alphabet index to try at each depth.
    cursor: Vec<usize>,
    used: usize,
    height: i64,
    done: bool,
}

impl Paths {
    fn new(alphabet: Alphabet, n: usize, constraint: Constraint) -> Self {
        Paths {
            alphabet: alphabet.steps(),
            constraint,
            extent: 2 * n,
            steps: Vec::new(),
            cursor: vec![0],
            used: 0,
            height: 0,
            done: false,
        }
    }

    fn admissible(&self, step: Step) -> bool {
        let used = self.used + step.advance();
        if used > self.extent {
            return false;
        }
        let h = self.height + step.rise();
        if self.constraint == Constraint::NonNegative && h < 0 {
            return false;
        }
        h.unsigned_abs() as usize <= self.extent - used
    }
}

impl Iterator for Paths {
    type Item = LatticePath;

    fn next(&mut self) -> Option<LatticePath> {
        while !self.done {
            if self.used == self.extent {
                let out = LatticePath::new(self.steps.clone());
                self.backtrack();
                return Some(out);
            }
            let depth = self.steps.len();
            let start = self.cursor[depth];
            match (start..self.alphabet.len()).find(|&i| self.admissible(self.alphabet[i])) {
                Some(i) => {
                    let step = self.alphabet[i];
                    self.cursor[depth] = i + 1;
                    self.steps.push(step);
                    self.cursor.push(0);
                    self.used += step.advance();
                    self.height += step.rise();
                }
                None => self.backtrack(),
            }
        }
        None
    }
}

impl Paths {
    fn backtrack(&mut self) {
        self.cursor.pop();
        match self.steps.pop() {
            Some(step) => {
                self.used -= step.advance();
                self.height -= step.rise();
            }
            None => self.done = true,
        }
    }
}

/// All paths of semilength `n` over `alphabet` satisfying `constraint`.
pub fn enumerate_paths(alphabet: Alphabet, n: usize, constraint: Constraint) -> Result<Paths> {
    enumerate_paths_with(alphabet, n, constraint, &Limits::default())
}

pub fn enumerate_paths_with(
    alphabet: Alphabet,
    n: usize,
    constraint: Constraint,
    limits: &Limits,
) -> Result<Paths> {
    limits.check_paths(n)?;
    Ok(Paths::new(alphabet, n, constraint))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LatticePath {
        s.parse().unwrap()
    }

    fn tags(list: &[PathTag]) -> BTreeSet<PathTag> {
        list.iter().copied().collect()
    }

    /// Brute force: every word over the alphabet with matching extent,
    /// filtered by the constraint, sorted with U < D < H.
    fn brute_paths(alphabet: Alphabet, n: usize, constraint: Constraint) -> Vec<LatticePath> {
        let letters = alphabet.steps();
        let mut out = Vec::new();
        let mut frontier = vec![Vec::<Step>::new()];
        while let Some(w) = frontier.pop() {
            let path = LatticePath::new(w.clone());
            let ext = path.extent();
            if ext == 2 * n {
                let ok =
                    path.is_free() && (constraint == Constraint::Free || path.is_nonnegative());
                if ok {
                    out.push(path);
                }
                continue;
            }
            for &s in letters {
                if ext + s.advance() <= 2 * n {
                    let mut next = w.clone();
                    next.push(s);
                    frontier.push(next);
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn parse_examples() {
        let up_down = p("UD");
        assert_eq!(up_down.semilength(), 1);
        assert!(classify(&up_down).contains(&PathTag::Dyck));
        assert_eq!(flaws(&p("DU")).unwrap(), 1);
        assert_eq!(p("H").semilength(), 1);
        assert!(classify(&p("H")).contains(&PathTag::Schroder));
        assert!(matches!(
            parse_path("UDX"),
            Err(ButterflyError::Parse { offset: 2, .. })
        ));
    }

    #[test]
    fn classification() {
        use PathTag::*;
        assert_eq!(classify(&p("UUDD")), tags(&[Free, Dyck, Elevated]));
        assert_eq!(classify(&p("UDDU")), tags(&[Free]));
        assert_eq!(classify(&p("DDUU")), tags(&[Free, NegativeElevated]));
        assert_eq!(classify(&p("UHD")), tags(&[Free, Schroder, Elevated]));
        assert_eq!(classify(&p("H")), tags(&[Free, Schroder]));
        assert!(classify(&p("UUD")).is_empty());
    }

    #[test]
    fn decomposition_examples() {
        use SegmentKind::*;
        let kinds = |s: &str| -> Vec<(SegmentKind, String)> {
            decompose(&p(s))
                .unwrap()
                .segments()
                .iter()
                .map(|seg| (seg.kind, seg.path.to_string()))
                .collect()
        };
        assert_eq!(
            kinds("UDDU"),
            vec![(Positive, "UD".into()), (Negative, "DU".into())]
        );
        assert_eq!(kinds("DDUU"), vec![(Negative, "DDUU".into())]);
        assert_eq!(
            kinds("HDUH"),
            vec![
                (AxisHoriz, "H".into()),
                (Negative, "DU".into()),
                (AxisHoriz, "H".into())
            ]
        );
        let d = decompose(&p("HDUH")).unwrap();
        assert_eq!((d.flaws(), d.flaw_blocks()), (1, 1));
        assert!(matches!(
            decompose(&p("UU")),
            Err(ButterflyError::Domain(_))
        ));
    }

    #[test]
    fn flaw_examples() {
        let fb = |s: &str| (flaws(&p(s)).unwrap(), flaw_blocks(&p(s)).unwrap());
        assert_eq!(fb("UUDD"), (0, 0));
        assert_eq!(fb("DUDU"), (2, 2));
        assert_eq!(fb("DHU"), (2, 1));
        assert_eq!(fb("UDDU"), (1, 1));
        assert_eq!(fb("DDUU"), (2, 1));
    }

    #[test]
    fn segments_are_irreducible_and_recompose() {
        for alphabet in [Alphabet::Dyck, Alphabet::Schroder] {
            for n in 0..=6 {
                for path in enumerate_paths(alphabet, n, Constraint::Free).unwrap() {
                    let d = decompose(&path).unwrap();
                    assert_eq!(d.recompose(), path);
                    for seg in d.segments() {
                        match seg.kind {
                            SegmentKind::Positive => assert!(seg.path.is_elevated()),
                            SegmentKind::Negative => assert!(seg.path.is_negative_elevated()),
                            SegmentKind::AxisHoriz => assert_eq!(seg.path, p("H")),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dyck_flaws_are_half_the_steps_below() {
        for path in enumerate_paths(Alphabet::Dyck, 6, Constraint::Free).unwrap() {
            let d = decompose(&path).unwrap();
            let below: usize = d
                .segments()
                .iter()
                .filter(|s| s.kind == SegmentKind::Negative)
                .map(|s| s.path.len())
                .sum();
            assert_eq!(2 * d.flaws(), below);
        }
    }

    #[test]
    fn enumeration_examples() {
        let strings = |a, n, c| -> Vec<String> {
            enumerate_paths(a, n, c)
                .unwrap()
                .map(|p| p.to_string())
                .collect()
        };
        assert_eq!(strings(Alphabet::Dyck, 2, Constraint::Free).len(), 6);
        let mut schroder = strings(Alphabet::Schroder, 2, Constraint::NonNegative);
        schroder.sort();
        assert_eq!(schroder, vec!["HH", "HUD", "UDH", "UDUD", "UHD", "UUDD"]);
        assert_eq!(
            strings(Alphabet::Schroder, 1, Constraint::Free),
            vec!["UD", "DU", "H"]
        );
        assert_eq!(strings(Alphabet::Dyck, 0, Constraint::Free), vec![""]);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for alphabet in [Alphabet::Dyck, Alphabet::Schroder] {
            for constraint in [Constraint::Free, Constraint::NonNegative] {
                for n in 0..=5 {
                    let got: Vec<_> = enumerate_paths(alphabet, n, constraint).unwrap().collect();
                    assert_eq!(got, brute_paths(alphabet, n, constraint));
                }
            }
        }
    }

    #[test]
    fn enumeration_is_guarded() {
        assert!(matches!(
            enumerate_paths(Alphabet::Dyck, 11, Constraint::Free),
            Err(ButterflyError::Capacity {
                requested: 11,
                max: 10
            })
        ));
    }

    #[test]
    fn reflection() {
        assert_eq!(reflect(&p("UD")), p("DU"));
        assert_eq!(reflect(&p("H")), p("H"));
        for n in 0..=6 {
            for path in enumerate_paths(Alphabet::Schroder, n, Constraint::Free).unwrap() {
                assert_eq!(reflect(&reflect(&path)), path);
            }
        }
    }

    #[test]
    fn json_form() {
        let v = p("UDH").to_json(Alphabet::Schroder);
        assert_eq!(v.to_string(), r#"{"alphabet":"schroder","steps":"UDH"}"#);
        assert_eq!(LatticePath::from_json(&v).unwrap().1, p("UDH"));
        let bad = serde_json::json!({"alphabet": "dyck", "steps": "UDH"});
        assert!(LatticePath::from_json(&bad).is_err());
    }
}
