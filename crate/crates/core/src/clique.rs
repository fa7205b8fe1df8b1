//! Maximum-clique queries on half-open intervals.
//!
//! By the Helly property a clique of intervals shares a common point, so the
//! clique number is the maximum number of intervals covering a single point.
//! Coverage is evaluated with an endpoint sweep in which closings at a
//! coordinate are processed before openings, so intervals that only touch
//! are never counted together.

use std::cmp::Ordering;

use serde::Serialize;

use crate::arith::Rational;
use crate::model::Interval;

/// A maximum clique together with a point every member contains.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueWitness {
    pub size: usize,
    /// `None` only for the empty clique.
    pub point: Option<Rational>,
    /// Ids of the intervals containing `point`, ascending.
    pub members: Vec<usize>,
}

impl CliqueWitness {
    fn empty() -> Self {
        CliqueWitness {
            size: 0,
            point: None,
            members: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Edge {
    Close,
    Open,
}

/// Returns the coordinate of maximum coverage and its depth. `spans` must be
/// nonempty.
fn deepest_point<'a, I>(spans: I) -> (usize, Rational)
where
    I: IntoIterator<Item = (&'a Rational, &'a Rational)>,
{
    let mut events: Vec<(&Rational, Edge)> = Vec::new();
    for (l, r) in spans {
        events.push((l, Edge::Open));
        events.push((r, Edge::Close));
    }
    events.sort_by(|a, b| match a.0.cmp(b.0) {
        Ordering::Equal => a.1.cmp(&b.1),
        ord => ord,
    });

    let mut depth = 0usize;
    let mut best = 0usize;
    let mut at = events[0].0;
    for (x, edge) in events {
        match edge {
            Edge::Open => {
                depth += 1;
                if depth > best {
                    best = depth;
                    at = x;
                }
            }
            Edge::Close => depth -= 1,
        }
    }
    (best, at.clone())
}

/// Clique number of the intersection graph of `intervals`.
pub fn omega<'a, I>(intervals: I) -> CliqueWitness
where
    I: IntoIterator<Item = &'a Interval>,
{
    let set: Vec<&Interval> = intervals.into_iter().collect();
    if set.is_empty() {
        return CliqueWitness::empty();
    }
    let (size, point) = deepest_point(set.iter().map(|iv| (&iv.left, &iv.right)));
    let mut members: Vec<usize> = set
        .iter()
        .filter(|iv| iv.contains(&point))
        .map(|iv| iv.id)
        .collect();
    members.sort_unstable();
    debug_assert_eq!(members.len(), size);
    CliqueWitness {
        size,
        point: Some(point),
        members,
    }
}

/// Size of the largest clique of `intervals ∪ {v}` that contains `v`.
///
/// Only points of `v` are candidates, so each interval is clipped to `v`'s
/// span before the sweep. A member of `intervals` with `v`'s id is treated as
/// `v` itself and counted once.
pub fn omega_containing<'a, I>(intervals: I, v: &Interval) -> CliqueWitness
where
    I: IntoIterator<Item = &'a Interval>,
{
    let others: Vec<&Interval> = intervals
        .into_iter()
        .filter(|u| u.id != v.id && u.intersects(v))
        .collect();
    let clipped: Vec<(&Rational, &Rational)> = std::iter::once((&v.left, &v.right))
        .chain(others.iter().map(|u| {
            (
                std::cmp::max(&u.left, &v.left),
                std::cmp::min(&u.right, &v.right),
            )
        }))
        .collect();
    let (size, point) = deepest_point(clipped);
    let mut members: Vec<usize> = others
        .iter()
        .filter(|u| u.contains(&point))
        .map(|u| u.id)
        .chain(std::iter::once(v.id))
        .collect();
    members.sort_unstable();
    debug_assert_eq!(members.len(), size);
    CliqueWitness {
        size,
        point: Some(point),
        members,
    }
}
