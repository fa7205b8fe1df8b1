//! Intervals, arrival-ordered instances and coloring results.
//!
//! Intervals are half-open, `[left, right)`: two intervals conflict only if
//! they overlap in a segment of positive length, so intervals that merely
//! touch at an endpoint do not intersect. Instances persist as JSON Lines (one interval per line, in
//! arrival order); results persist as a single JSON document.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::Rational;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("interval {id}: left endpoint {left} is not below right endpoint {right}")]
    EmptyInterval {
        id: usize,
        left: String,
        right: String,
    },
    #[error("interval at position {position} has id {id}; ids must be 0..n-1 in arrival order")]
    NonContiguousId { position: usize, id: usize },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("result: {0}")]
    Result(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// A half-open interval `[left, right)` with its arrival index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub id: usize,
    pub left: Rational,
    pub right: Rational,
}

impl Interval {
    pub fn new(id: usize, left: Rational, right: Rational) -> Result<Self, ModelError> {
        if left >= right {
            return Err(ModelError::EmptyInterval {
                id,
                left: left.to_string(),
                right: right.to_string(),
            });
        }
        Ok(Interval { id, left, right })
    }

    /// The unit interval `[left, left + 1]`.
    pub fn unit(id: usize, left: Rational) -> Self {
        let right = &left + &Rational::one();
        Interval { id, left, right }
    }

    pub fn length(&self) -> Rational {
        &self.right - &self.left
    }

    pub fn is_unit(&self) -> bool {
        self.length() == Rational::one()
    }

    pub fn contains(&self, point: &Rational) -> bool {
        self.left <= *point && *point < self.right
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.left < other.right && other.left < self.right
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}=[{}, {})", self.id, self.left, self.right)
    }
}

/// An arrival sequence. Interval ids equal their position.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Instance {
    intervals: Vec<Interval>,
}

impl Instance {
    pub fn new(intervals: Vec<Interval>) -> Result<Self, ModelError> {
        for (position, iv) in intervals.iter().enumerate() {
            if iv.id != position {
                return Err(ModelError::NonContiguousId {
                    position,
                    id: iv.id,
                });
            }
            if iv.left >= iv.right {
                return Err(ModelError::EmptyInterval {
                    id: iv.id,
                    left: iv.left.to_string(),
                    right: iv.right.to_string(),
                });
            }
        }
        Ok(Instance { intervals })
    }

    /// Numbers `(left, right)` spans in the given order.
    pub fn from_spans<I>(spans: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let intervals = spans
            .into_iter()
            .enumerate()
            .map(|(id, (l, r))| Interval::new(id, l, r))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Instance { intervals })
    }

    /// Unit intervals with the given left endpoints, in order.
    pub fn from_unit_lefts<I>(lefts: I) -> Self
    where
        I: IntoIterator<Item = Rational>,
    {
        let intervals = lefts
            .into_iter()
            .enumerate()
            .map(|(id, l)| Interval::unit(id, l))
            .collect();
        Instance { intervals }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Interval> {
        self.intervals.iter()
    }

    pub fn is_unit(&self) -> bool {
        self.intervals.iter().all(Interval::is_unit)
    }

    /// Renders the instance as JSON Lines, one interval per line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for iv in &self.intervals {
            out.push_str(&serde_json::to_string(iv).expect("interval serializes"));
            out.push('\n');
        }
        out
    }

    /// Parses JSON Lines. Blank lines are ignored; errors carry the 1-based
    /// line number.
    pub fn from_jsonl(text: &str) -> Result<Self, ModelError> {
        let mut intervals = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            if raw.trim().is_empty() {
                continue;
            }
            let iv: Interval = serde_json::from_str(raw).map_err(|e| ModelError::Line {
                line,
                message: e.to_string(),
            })?;
            if iv.id != intervals.len() {
                return Err(ModelError::Line {
                    line,
                    message: format!("expected id {}, found {}", intervals.len(), iv.id),
                });
            }
            if iv.left >= iv.right {
                return Err(ModelError::Line {
                    line,
                    message: format!("left {} is not below right {}", iv.left, iv.right),
                });
            }
            intervals.push(iv);
        }
        Ok(Instance { intervals })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ModelError> {
        Self::from_jsonl(&fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), ModelError> {
        fs::write(path, self.to_jsonl())?;
        Ok(())
    }
}

impl<'a> IntoIterator for &'a Instance {
    type Item = &'a Interval;
    type IntoIter = std::slice::Iter<'a, Interval>;

    fn into_iter(self) -> Self::IntoIter {
        self.intervals.iter()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Kt,
    FirstFit,
    OfflineOptimal,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [
        Algorithm::Kt,
        Algorithm::FirstFit,
        Algorithm::OfflineOptimal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Kt => "kt",
            Algorithm::FirstFit => "first_fit",
            Algorithm::OfflineOptimal => "offline_optimal",
        }
    }

    /// Whether assignments carry Kierstead-Trotter levels.
    pub fn is_level_aware(self) -> bool {
        matches!(self, Algorithm::Kt)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "kt" => Ok(Algorithm::Kt),
            "ff" | "first_fit" | "first-fit" => Ok(Algorithm::FirstFit),
            "opt" | "offline_optimal" | "offline-optimal" => Ok(Algorithm::OfflineOptimal),
            other => Err(format!(
                "unknown algorithm {other:?} (expected kt, ff or opt)"
            )),
        }
    }
}

/// Level and level-local color of one interval. The global color is the
/// pair `(level, color)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment {
    pub id: usize,
    pub level: usize,
    pub color: usize,
}

impl Assignment {
    pub fn global_color(&self) -> (usize, usize) {
        (self.level, self.color)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringResult {
    pub algorithm: Algorithm,
    /// Indexed by interval id.
    pub assignments: Vec<Assignment>,
}

#[derive(Serialize, Deserialize)]
struct ResultDocument {
    algorithm: Algorithm,
    assignments: Vec<Assignment>,
    distinct_colors: usize,
}

impl ColoringResult {
    pub fn new(algorithm: Algorithm, assignments: Vec<Assignment>) -> Result<Self, ModelError> {
        for (position, a) in assignments.iter().enumerate() {
            if a.id != position {
                return Err(ModelError::Result(format!(
                    "assignment at position {position} has id {}",
                    a.id
                )));
            }
            if a.level == 0 || a.color == 0 {
                return Err(ModelError::Result(format!(
                    "interval {}: level and color must be positive",
                    a.id
                )));
            }
        }
        Ok(ColoringResult {
            algorithm,
            assignments,
        })
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn distinct_colors(&self) -> usize {
        self.assignments
            .iter()
            .map(Assignment::global_color)
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// Number of distinct color indices used within each level.
    pub fn palette_sizes(&self) -> BTreeMap<usize, usize> {
        let mut used: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for a in &self.assignments {
            used.entry(a.level).or_default().insert(a.color);
        }
        used.into_iter().map(|(l, s)| (l, s.len())).collect()
    }

    pub fn max_level(&self) -> usize {
        self.assignments.iter().map(|a| a.level).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        let doc = ResultDocument {
            algorithm: self.algorithm,
            assignments: self.assignments.clone(),
            distinct_colors: self.distinct_colors(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("result serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        let doc: ResultDocument = serde_json::from_str(text)?;
        let result = ColoringResult::new(doc.algorithm, doc.assignments)?;
        if result.distinct_colors() != doc.distinct_colors {
            return Err(ModelError::Result(format!(
                "distinct_colors is {} but the assignments use {}",
                doc.distinct_colors,
                result.distinct_colors()
            )));
        }
        Ok(result)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ModelError> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), ModelError> {
        fs::write(path, self.to_json())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use proptest::prelude::*;

    fn iv(id: usize, l: Rational, r: Rational) -> Interval {
        Interval::new(id, l, r).unwrap()
    }

    #[test]
    fn half_open_intersection() {
        let a = iv(0, q(0, 1), q(1, 1));
        assert!(!a.intersects(&iv(1, q(1, 1), q(2, 1))));
        assert!(a.intersects(&iv(1, q(999, 1000), q(2, 1))));
        assert!(a.contains(&q(0, 1)) && !a.contains(&q(1, 1)));
        assert!(!a.intersects(&Interval::unit(1, q(4, 3))));
        assert!(Interval::unit(0, q(13, 3)).intersects(&Interval::unit(1, q(5, 1))));
        assert!(a.intersects(&a));
    }

    #[test]
    fn unit_detection() {
        assert!(Instance::default().is_unit());
        let inst = Instance::from_spans([(q(0, 1), q(3, 2))]).unwrap();
        assert!(!inst.is_unit());
        assert!(Instance::from_unit_lefts([q(1, 3), q(7, 2)]).is_unit());
    }

    #[test]
    fn rejects_degenerate_and_misnumbered() {
        assert!(matches!(
            Interval::new(0, q(1, 1), q(1, 1)),
            Err(ModelError::EmptyInterval { .. })
        ));
        let bad = vec![Interval::unit(1, q(0, 1))];
        assert!(matches!(
            Instance::new(bad),
            Err(ModelError::NonContiguousId { position: 0, id: 1 })
        ));
    }

    #[test]
    fn jsonl_line_parsing() {
        let inst = Instance::from_jsonl("{\"id\":0,\"left\":\"0\",\"right\":\"1\"}\n").unwrap();
        assert_eq!(inst.intervals(), &[iv(0, q(0, 1), q(1, 1))]);
        assert_eq!(
            inst.to_jsonl(),
            "{\"id\":0,\"left\":\"0\",\"right\":\"1\"}\n"
        );

        let zero = "{\"id\":0,\"left\":\"1\",\"right\":\"1\"}\n";
        match Instance::from_jsonl(zero) {
            Err(ModelError::Line { line: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        let gap = "{\"id\":0,\"left\":\"0\",\"right\":\"1\"}\n{\"id\":2,\"left\":\"0\",\"right\":\"1\"}\n";
        match Instance::from_jsonl(gap) {
            Err(ModelError::Line { line: 2, message }) => {
                assert!(message.contains("expected id 1"))
            }
            other => panic!("unexpected {other:?}"),
        }
        let junk = "{\"id\":0,\"left\":\"0\",\"right\":\"1\"}\nnot json\n";
        assert!(matches!(
            Instance::from_jsonl(junk),
            Err(ModelError::Line { line: 2, .. })
        ));
        let bad_rational = "{\"id\":0,\"left\":\"0.5\",\"right\":\"1\"}\n";
        assert!(matches!(
            Instance::from_jsonl(bad_rational),
            Err(ModelError::Line { line: 1, .. })
        ));
    }

    #[test]
    fn result_document_round_trip() {
        let r = ColoringResult::new(
            Algorithm::Kt,
            vec![
                Assignment {
                    id: 0,
                    level: 1,
                    color: 1,
                },
                Assignment {
                    id: 1,
                    level: 2,
                    color: 1,
                },
                Assignment {
                    id: 2,
                    level: 2,
                    color: 2,
                },
            ],
        )
        .unwrap();
        assert_eq!(r.distinct_colors(), 3);
        assert_eq!(r.palette_sizes(), BTreeMap::from([(1, 1), (2, 2)]));
        let text = r.to_json();
        assert!(text.contains("\"distinct_colors\": 3"));
        assert!(text.contains("\"algorithm\": \"kt\""));
        assert_eq!(ColoringResult::from_json(&text).unwrap(), r);

        let tampered = text.replace("\"distinct_colors\": 3", "\"distinct_colors\": 2");
        assert!(ColoringResult::from_json(&tampered).is_err());
    }

    #[test]
    fn algorithm_names() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert_eq!("ff".parse::<Algorithm>().unwrap(), Algorithm::FirstFit);
        assert_eq!(
            "opt".parse::<Algorithm>().unwrap(),
            Algorithm::OfflineOptimal
        );
        assert!("dsatur".parse::<Algorithm>().is_err());
    }

    fn arb_interval() -> impl Strategy<Value = (Rational, Rational)> {
        (-50i64..50, 1i64..8, 1i64..30, 1i64..8).prop_map(|(ln, ld, len_n, len_d)| {
            let l = q(ln, ld);
            let r = &l + &q(len_n, len_d);
            (l, r)
        })
    }

    proptest! {
        #[test]
        fn intersects_symmetric_reflexive(a in arb_interval(), b in arb_interval()) {
            let a = iv(0, a.0, a.1);
            let b = iv(1, b.0, b.1);
            prop_assert_eq!(a.intersects(&b), b.intersects(&a));
            prop_assert!(a.intersects(&a));
        }

        #[test]
        fn unit_intersection_by_left_distance(l1 in -40i64..40, l2 in -40i64..40, d in 1i64..7) {
            let a = Interval::unit(0, q(l1, d));
            let b = Interval::unit(1, q(l2, 3));
            let gap = &a.left - &b.left;
            let abs = if gap.is_negative() { -gap } else { gap };
            prop_assert_eq!(a.intersects(&b), abs < Rational::one());
        }

        #[test]
        fn jsonl_round_trip(spans in proptest::collection::vec(arb_interval(), 0..20)) {
            let inst = Instance::from_spans(spans).unwrap();
            prop_assert_eq!(Instance::from_jsonl(&inst.to_jsonl()).unwrap(), inst);
        }
    }
}
