//! Ground-truth checks for colorings: properness, the color-count bounds
//! that apply to each algorithm, per-level palette caps, the level-2
//! matching structure on unit instances, and an exact chromatic-number
//! oracle for small instances.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::clique::omega;
use crate::model::{Algorithm, ColoringResult, Instance, Interval};

/// Default size cap for [`chromatic_brute`].
pub const BRUTE_FORCE_LIMIT: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("result has {result} assignments but the instance has {instance} intervals")]
    SizeMismatch { instance: usize, result: usize },
    #[error("level-2 matching check applies to unit instances only")]
    NotUnit,
    #[error("brute-force oracle refuses {n} intervals (limit {limit})")]
    TooLarge { n: usize, limit: usize },
}

/// How a bound constrains the quantity it watches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtMost,
    Exactly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub relation: Relation,
    pub limit: i64,
    pub value: i64,
    pub satisfied: bool,
}

impl BoundCheck {
    fn new(relation: Relation, limit: i64, value: i64) -> Self {
        let satisfied = match relation {
            Relation::AtMost => value <= limit,
            Relation::Exactly => value == limit,
        };
        BoundCheck {
            relation,
            limit,
            value,
            satisfied,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub algorithm: Algorithm,
    pub n: usize,
    pub unit: bool,
    pub proper: bool,
    /// Intersecting pairs `(a, b)`, `a < b`, that share a global color.
    pub violations: Vec<(usize, usize)>,
    pub distinct_colors: usize,
    pub omega: usize,
    pub per_level_palette_sizes: BTreeMap<usize, usize>,
    pub bounds: BTreeMap<String, BoundCheck>,
    /// Present for Kierstead-Trotter results on unit instances.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub level2_matching: Option<bool>,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.proper
            && self.bounds.values().all(|b| b.satisfied)
            && self.level2_matching.unwrap_or(true)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Which quantity a registered bound watches.
#[derive(Debug, Clone, Copy)]
enum Watched {
    DistinctColors,
    /// Palette size of exactly this level.
    Level(usize),
    /// Largest palette among levels at or above this one.
    LevelsFrom(usize),
}

struct Bound {
    name: &'static str,
    watched: Watched,
    relation: Relation,
    limit: fn(i64) -> i64,
}

/// Bounds applicable to `algorithm`, keyed on whether the instance is unit.
fn registry(algorithm: Algorithm, unit: bool) -> Vec<Bound> {
    use Relation::*;
    use Watched::*;
    match (algorithm, unit) {
        (Algorithm::Kt, true) => vec![
            Bound {
                name: "kt_colors_unit_3w_minus_3",
                watched: DistinctColors,
                relation: AtMost,
                limit: |w| (3 * w - 3).max(1),
            },
            Bound {
                name: "kt_level1_palette",
                watched: Level(1),
                relation: AtMost,
                limit: |_| 1,
            },
            Bound {
                name: "kt_level2_palette_unit",
                watched: Level(2),
                relation: AtMost,
                limit: |_| 2,
            },
            Bound {
                name: "kt_upper_level_palette",
                watched: LevelsFrom(3),
                relation: AtMost,
                limit: |_| 3,
            },
        ],
        (Algorithm::Kt, false) => vec![
            Bound {
                name: "kt_colors_general_3w_minus_2",
                watched: DistinctColors,
                relation: AtMost,
                limit: |w| (3 * w - 2).max(1),
            },
            Bound {
                name: "kt_level1_palette",
                watched: Level(1),
                relation: AtMost,
                limit: |_| 1,
            },
            Bound {
                name: "kt_upper_level_palette",
                watched: LevelsFrom(2),
                relation: AtMost,
                limit: |_| 3,
            },
        ],
        (Algorithm::FirstFit, true) => vec![Bound {
            name: "ff_colors_unit_2w_minus_1",
            watched: DistinctColors,
            relation: AtMost,
            limit: |w| (2 * w - 1).max(1),
        }],
        (Algorithm::FirstFit, false) => vec![],
        (Algorithm::OfflineOptimal, _) => vec![Bound {
            name: "opt_colors_equal_omega",
            watched: DistinctColors,
            relation: Exactly,
            limit: |w| w,
        }],
    }
}

/// Intersecting pairs sharing a global color, found by a left-to-right sweep
/// over the intervals still open at each left endpoint.
fn conflicts<F>(instance: &Instance, mut same: F) -> Vec<(usize, usize)>
where
    F: FnMut(&Interval, &Interval) -> bool,
{
    let mut order: Vec<&Interval> = instance.iter().collect();
    order.sort_by(|a, b| a.left.cmp(&b.left).then(a.id.cmp(&b.id)));
    let mut active: Vec<&Interval> = Vec::new();
    let mut pairs = Vec::new();
    for v in order {
        active.retain(|u| u.right > v.left);
        for u in &active {
            if same(u, v) {
                pairs.push((u.id.min(v.id), u.id.max(v.id)));
            }
        }
        active.push(v);
    }
    pairs.sort_unstable();
    pairs
}

fn ensure_covers(instance: &Instance, result: &ColoringResult) -> Result<(), VerifyError> {
    if instance.len() != result.len() {
        return Err(VerifyError::SizeMismatch {
            instance: instance.len(),
            result: result.len(),
        });
    }
    Ok(())
}

pub fn check(
    instance: &Instance,
    result: &ColoringResult,
) -> Result<VerificationReport, VerifyError> {
    ensure_covers(instance, result)?;
    let colors = &result.assignments;
    let violations = conflicts(instance, |u, v| {
        colors[u.id].global_color() == colors[v.id].global_color()
    });
    let unit = instance.is_unit();
    let omega = omega(instance).size;
    let distinct_colors = result.distinct_colors();
    let palettes = result.palette_sizes();

    let bounds = registry(result.algorithm, unit)
        .into_iter()
        .map(|b| {
            let value = match b.watched {
                Watched::DistinctColors => distinct_colors,
                Watched::Level(l) => palettes.get(&l).copied().unwrap_or(0),
                Watched::LevelsFrom(l) => palettes.range(l..).map(|(_, &s)| s).max().unwrap_or(0),
            };
            let check = BoundCheck::new(b.relation, (b.limit)(omega as i64), value as i64);
            (b.name.to_string(), check)
        })
        .collect();

    let level2_matching = match (result.algorithm, unit) {
        (Algorithm::Kt, true) => Some(check_level2_matching(instance, result)?),
        _ => None,
    };

    Ok(VerificationReport {
        algorithm: result.algorithm,
        n: instance.len(),
        unit,
        proper: violations.is_empty(),
        violations,
        distinct_colors,
        omega,
        per_level_palette_sizes: palettes,
        bounds,
        level2_matching,
    })
}

/// True iff every level-2 interval intersects at most one other level-2
/// interval.
pub fn check_level2_matching(
    instance: &Instance,
    result: &ColoringResult,
) -> Result<bool, VerifyError> {
    ensure_covers(instance, result)?;
    if !instance.is_unit() {
        return Err(VerifyError::NotUnit);
    }
    let level = |v: &Interval| result.assignments[v.id].level;
    let edges = conflicts(instance, |u, v| level(u) == 2 && level(v) == 2);
    let mut degree = vec![0usize; instance.len()];
    for (a, b) in edges {
        degree[a] += 1;
        degree[b] += 1;
    }
    Ok(degree.iter().all(|&d| d <= 1))
}

/// Exact chromatic number of the intersection graph by backtracking.
///
/// Vertices are colored in order of decreasing degree; a vertex may only
/// open one new color beyond those already used, which removes color
/// permutations from the search.
pub fn chromatic_brute(instance: &Instance, limit: usize) -> Result<usize, VerifyError> {
    let n = instance.len();
    if n > limit {
        return Err(VerifyError::TooLarge { n, limit });
    }
    if n == 0 {
        return Ok(0);
    }
    let ivs = instance.intervals();
    let adj: Vec<Vec<bool>> = ivs
        .iter()
        .map(|a| {
            ivs.iter()
                .map(|b| a.id != b.id && a.intersects(b))
                .collect()
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(adj[i].iter().filter(|&&e| e).count()));

    fn colorable(
        adj: &[Vec<bool>],
        order: &[usize],
        k: usize,
        pos: usize,
        used: usize,
        color: &mut [usize],
    ) -> bool {
        let Some(&v) = order.get(pos) else {
            return true;
        };
        for c in 1..=(used + 1).min(k) {
            if (0..adj.len()).any(|u| adj[v][u] && color[u] == c) {
                continue;
            }
            color[v] = c;
            if colorable(adj, order, k, pos + 1, used.max(c), color) {
                return true;
            }
            color[v] = 0;
        }
        false
    }

    Ok((1..=n)
        .find(|&k| colorable(&adj, &order, k, 0, 0, &mut vec![0; n]))
        .expect("n colors always suffice"))
}
