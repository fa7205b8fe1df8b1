//! Online colorers and the offline optimum.
//!
//! [`KiersteadTrotter`] assigns each arriving interval a level, the least
//! `j` such that the largest clique through the interval among intervals of
//! level at most `j` (the new interval included) has at most `j` members,
//! and then colors it First-Fit against the intervals of the same level
//! only. Each level owns its own palette, so a global color is the pair
//! `(level, color)`.
//!
//! [`FirstFit`] is the plain greedy baseline. [`offline_optimal`] colors a
//! whole instance with exactly its clique number of colors.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use serde::Serialize;
use thiserror::Error;

use crate::arith::Rational;
use crate::clique::{self, CliqueWitness};
use crate::model::{Algorithm, Assignment, ColoringResult, Instance, Interval};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColorError {
    #[error("interval {found} arrived out of order; expected id {expected}")]
    OutOfOrder { expected: usize, found: usize },
}

/// Contract shared by the online algorithms: each arrival is colored
/// irrevocably before the next one is seen.
pub trait OnlineColorer {
    fn algorithm(&self) -> Algorithm;

    /// Colors the next arrival. Its id must equal the number of intervals
    /// processed so far.
    fn assign(&mut self, v: &Interval) -> Result<Assignment, ColorError>;

    fn assignments(&self) -> &[Assignment];

    fn into_result(self) -> ColoringResult
    where
        Self: Sized,
    {
        let algorithm = self.algorithm();
        ColoringResult::new(algorithm, self.assignments().to_vec())
            .expect("colorers produce contiguous positive assignments")
    }
}

/// Processed intervals indexed by left endpoint, for neighbourhood queries.
#[derive(Debug, Default, Clone)]
struct ArrivalIndex {
    intervals: Vec<Interval>,
    by_left: BTreeMap<Rational, Vec<usize>>,
    max_len: Option<Rational>,
}

impl ArrivalIndex {
    fn len(&self) -> usize {
        self.intervals.len()
    }

    fn check_next(&self, v: &Interval) -> Result<(), ColorError> {
        if v.id != self.len() {
            return Err(ColorError::OutOfOrder {
                expected: self.len(),
                found: v.id,
            });
        }
        Ok(())
    }

    fn insert(&mut self, v: &Interval) {
        let len = v.length();
        if self.max_len.as_ref().is_none_or(|m| *m < len) {
            self.max_len = Some(len);
        }
        self.by_left.entry(v.left.clone()).or_default().push(v.id);
        self.intervals.push(v.clone());
    }

    /// Ids of processed intervals intersecting `v`, in arrival order.
    fn neighbours(&self, v: &Interval) -> Vec<usize> {
        let Some(max_len) = &self.max_len else {
            return Vec::new();
        };
        // A neighbour u has u.left < v.right and u.right > v.left, hence
        // u.left > v.left - max_len.
        let lo = &v.left - max_len;
        let mut ids: Vec<usize> = self
            .by_left
            .range(lo..v.right.clone())
            .flat_map(|(_, ids)| ids.iter().copied())
            .filter(|&id| self.intervals[id].right > v.left)
            .collect();
        ids.sort_unstable();
        ids
    }
}

/// Smallest positive index absent from `used`.
fn first_free(used: impl IntoIterator<Item = usize>) -> usize {
    let used: BTreeSet<usize> = used.into_iter().collect();
    (1..).find(|c| !used.contains(c)).expect("unbounded search")
}

/// One line of the per-arrival trace of the Kierstead-Trotter colorer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub id: usize,
    pub level: usize,
    pub color: usize,
    /// A point of the largest clique through the interval among intervals
    /// of level at most `level`.
    pub clique_witness_point: Rational,
    pub clique_witness_size: usize,
}

/// Online Kierstead-Trotter colorer.
#[derive(Debug, Default, Clone)]
pub struct KiersteadTrotter {
    index: ArrivalIndex,
    assignments: Vec<Assignment>,
}

impl KiersteadTrotter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn level_of_id(&self, id: usize) -> Option<usize> {
        self.assignments.get(id).map(|a| a.level)
    }

    /// Level the next arrival `v` would receive.
    ///
    /// For every candidate point of `v` the sweep records how many
    /// neighbours of each level cover it; the clique through `v` within
    /// levels `<= j` at that point is then one plus a prefix sum of the
    /// histogram.
    pub fn level(&self, v: &Interval) -> Result<usize, ColorError> {
        self.index.check_next(v)?;
        Ok(self.level_among(v, &self.index.neighbours(v)))
    }

    fn level_among(&self, v: &Interval, neighbours: &[usize]) -> usize {
        if neighbours.is_empty() {
            return 1;
        }
        let top = neighbours
            .iter()
            .map(|&id| self.assignments[id].level)
            .max()
            .unwrap_or(0);

        // (coordinate, is_close, level)
        let mut events: Vec<(&Rational, bool, usize)> = Vec::with_capacity(2 * neighbours.len());
        for &id in neighbours {
            let u = &self.index.intervals[id];
            let level = self.assignments[id].level;
            events.push((std::cmp::max(&u.left, &v.left), false, level));
            events.push((std::cmp::min(&u.right, &v.right), true, level));
        }
        events.sort_by(|a, b| a.0.cmp(b.0).then(b.1.cmp(&a.1)));

        // best[j] = max over points of the clique through v within levels <= j
        let mut hist = vec![0usize; top + 1];
        let mut best = vec![1usize; top + 1];
        for (_, is_close, level) in events {
            if is_close {
                hist[level] -= 1;
                continue;
            }
            hist[level] += 1;
            let mut covered = 1;
            for j in 1..=top {
                covered += hist[j];
                if covered > best[j] {
                    best[j] = covered;
                }
            }
        }
        if let Some(j) = (1..=top).find(|&j| best[j] <= j) {
            return j;
        }
        // Above the highest present level every neighbour counts.
        (top + 1).max(best[top])
    }

    /// Level-local First-Fit color for `v` at `level`.
    fn color_among(&self, neighbours: &[usize], level: usize) -> usize {
        first_free(
            neighbours
                .iter()
                .map(|&id| self.assignments[id])
                .filter(|a| a.level == level)
                .map(|a| a.color),
        )
    }

    fn commit(&mut self, v: &Interval, level: usize, color: usize) -> Assignment {
        let a = Assignment {
            id: v.id,
            level,
            color,
        };
        self.index.insert(v);
        self.assignments.push(a);
        a
    }

    /// Colors `v` and reports the clique that bounds its level.
    pub fn assign_traced(&mut self, v: &Interval) -> Result<TraceRecord, ColorError> {
        self.index.check_next(v)?;
        let neighbours = self.index.neighbours(v);
        let level = self.level_among(v, &neighbours);
        let color = self.color_among(&neighbours, level);
        let witness: CliqueWitness = clique::omega_containing(
            neighbours
                .iter()
                .filter(|&&id| self.assignments[id].level <= level)
                .map(|&id| &self.index.intervals[id]),
            v,
        );
        self.commit(v, level, color);
        Ok(TraceRecord {
            id: v.id,
            level,
            color,
            clique_witness_point: witness.point.expect("v is always a member"),
            clique_witness_size: witness.size,
        })
    }
}

impl OnlineColorer for KiersteadTrotter {
    fn algorithm(&self) -> Algorithm {
        Algorithm::Kt
    }

    fn assign(&mut self, v: &Interval) -> Result<Assignment, ColorError> {
        self.index.check_next(v)?;
        let neighbours = self.index.neighbours(v);
        let level = self.level_among(v, &neighbours);
        let color = self.color_among(&neighbours, level);
        Ok(self.commit(v, level, color))
    }

    fn assignments(&self) -> &[Assignment] {
        &self.assignments
    }
}

/// Online First-Fit: the smallest color unused by any intersecting
/// processed interval. Every assignment records level 1.
#[derive(Debug, Default, Clone)]
pub struct FirstFit {
    index: ArrivalIndex,
    assignments: Vec<Assignment>,
}

impl FirstFit {
    pub fn new() -> Self {
        Self::default()
    }
}

impl OnlineColorer for FirstFit {
    fn algorithm(&self) -> Algorithm {
        Algorithm::FirstFit
    }

    fn assign(&mut self, v: &Interval) -> Result<Assignment, ColorError> {
        self.index.check_next(v)?;
        let color = first_free(
            self.index
                .neighbours(v)
                .into_iter()
                .map(|id| self.assignments[id].color),
        );
        let a = Assignment {
            id: v.id,
            level: 1,
            color,
        };
        self.index.insert(v);
        self.assignments.push(a);
        Ok(a)
    }

    fn assignments(&self) -> &[Assignment] {
        &self.assignments
    }
}

/// Left-to-right sweep coloring with exactly `omega(instance)` colors.
///
/// A color becomes reusable once its holder ends at or before the next left
/// endpoint.
pub fn offline_optimal(instance: &Instance) -> ColoringResult {
    let mut order: Vec<&Interval> = instance.iter().collect();
    order.sort_by(|a, b| a.left.cmp(&b.left).then(a.id.cmp(&b.id)));

    let mut colors = vec![0usize; instance.len()];
    let mut active: BinaryHeap<Reverse<(&Rational, usize)>> = BinaryHeap::new();
    let mut free: BTreeSet<usize> = BTreeSet::new();
    let mut next_fresh = 1;
    for v in order {
        while let Some(Reverse((right, color))) = active.peek() {
            if **right <= v.left {
                free.insert(*color);
                active.pop();
            } else {
                break;
            }
        }
        let color = match free.pop_first() {
            Some(c) => c,
            None => {
                next_fresh += 1;
                next_fresh - 1
            }
        };
        colors[v.id] = color;
        active.push(Reverse((&v.right, color)));
    }

    let assignments = colors
        .into_iter()
        .enumerate()
        .map(|(id, color)| Assignment {
            id,
            level: 1,
            color,
        })
        .collect();
    ColoringResult::new(Algorithm::OfflineOptimal, assignments).expect("every interval colored")
}

fn run_online<C: OnlineColorer>(mut colorer: C, instance: &Instance) -> ColoringResult {
    for v in instance {
        colorer
            .assign(v)
            .expect("instance ids are contiguous arrival indices");
    }
    colorer.into_result()
}

/// Runs `algorithm` over the whole instance in arrival order.
pub fn run(algorithm: Algorithm, instance: &Instance) -> ColoringResult {
    match algorithm {
        Algorithm::Kt => run_online(KiersteadTrotter::new(), instance),
        Algorithm::FirstFit => run_online(FirstFit::new(), instance),
        Algorithm::OfflineOptimal => offline_optimal(instance),
    }
}

/// Runs Kierstead-Trotter and returns the per-arrival trace alongside the
/// result.
pub fn run_kt_traced(instance: &Instance) -> (ColoringResult, Vec<TraceRecord>) {
    let mut kt = KiersteadTrotter::new();
    let trace = instance
        .iter()
        .map(|v| kt.assign_traced(v).expect("contiguous arrival ids"))
        .collect();
    (kt.into_result(), trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::q;
    use crate::clique::{omega, omega_containing};
    use crate::generators::gen_random_general;
    use proptest::prelude::*;

    /// Level straight from the definition: scan j upward, querying the
    /// clique through v among all processed intervals of level <= j.
    fn level_by_definition(processed: &[Interval], levels: &[usize], v: &Interval) -> usize {
        (1..)
            .find(|&j| {
                let sub = processed
                    .iter()
                    .zip(levels)
                    .filter(|(_, &l)| l <= j)
                    .map(|(u, _)| u);
                omega_containing(sub, v).size <= j
            })
            .unwrap()
    }

    fn is_proper(instance: &Instance, result: &ColoringResult) -> bool {
        let ivs = instance.intervals();
        ivs.iter().enumerate().all(|(i, a)| {
            ivs[i + 1..].iter().all(|b| {
                !a.intersects(b)
                    || result.assignments[a.id].global_color()
                        != result.assignments[b.id].global_color()
            })
        })
    }

    fn units(lefts: &[Rational]) -> Instance {
        Instance::from_unit_lefts(lefts.iter().cloned())
    }

    #[test]
    fn first_arrival_is_level_one() {
        let kt = KiersteadTrotter::new();
        assert_eq!(kt.level(&Interval::unit(0, q(5, 7))).unwrap(), 1);
    }

    #[test]
    fn out_of_order_arrival_rejected() {
        let mut kt = KiersteadTrotter::new();
        let err = kt.assign(&Interval::unit(3, q(0, 1))).unwrap_err();
        assert_eq!(
            err,
            ColorError::OutOfOrder {
                expected: 0,
                found: 3
            }
        );
        let mut ff = FirstFit::new();
        assert!(ff.assign(&Interval::unit(1, q(0, 1))).is_err());
    }

    #[test]
    fn alternating_levels_on_a_chain() {
        // Lefts 0, 2/3, 4/3, 2, 8/3 with x = 3.
        let inst = units(&[q(0, 1), q(2, 3), q(4, 3), q(2, 1), q(8, 3)]);
        let r = run(Algorithm::Kt, &inst);
        let levels: Vec<usize> = r.assignments.iter().map(|a| a.level).collect();
        assert_eq!(levels, vec![1, 2, 1, 2, 1]);

        let mut kt = KiersteadTrotter::new();
        for v in &inst {
            kt.assign(v).unwrap();
        }
        assert_eq!(kt.level(&Interval::unit(5, q(1, 3))).unwrap(), 3);
    }

    #[test]
    fn isolated_arrival_gets_index_one() {
        let inst = units(&[q(0, 1), q(1, 2), q(10, 1)]);
        let r = run(Algorithm::Kt, &inst);
        assert_eq!(
            r.assignments[2],
            Assignment {
                id: 2,
                level: 1,
                color: 1
            }
        );
    }

    #[test]
    fn first_fit_small_streams() {
        let disjoint = units(&[q(0, 1), q(3, 1), q(6, 1), q(-4, 1)]);
        let r = run(Algorithm::FirstFit, &disjoint);
        assert!(r.assignments.iter().all(|a| a.color == 1 && a.level == 1));

        let colors = |inst: &Instance| -> Vec<usize> {
            run(Algorithm::FirstFit, inst)
                .assignments
                .iter()
                .map(|a| a.color)
                .collect()
        };
        // [0,1) and [1,2) only touch, so the third arrival reuses color 1.
        let path =
            Instance::from_spans([(q(0, 1), q(1, 1)), (q(1, 2), q(3, 2)), (q(1, 1), q(2, 1))])
                .unwrap();
        assert_eq!(colors(&path), vec![1, 2, 1]);
        // All three contain 3/4.
        let tri =
            Instance::from_spans([(q(0, 1), q(1, 1)), (q(1, 2), q(3, 2)), (q(3, 4), q(7, 4))])
                .unwrap();
        assert_eq!(colors(&tri), vec![1, 2, 3]);
    }

    #[test]
    fn offline_uses_omega_colors() {
        assert_eq!(
            run(Algorithm::OfflineOptimal, &units(&[q(0, 1)])).distinct_colors(),
            1
        );
        assert_eq!(
            run(Algorithm::OfflineOptimal, &Instance::default()).distinct_colors(),
            0
        );
        // Touching intervals may share a color.
        let touching = Instance::from_spans([(q(0, 1), q(1, 1)), (q(1, 1), q(2, 1))]).unwrap();
        assert_eq!(offline_optimal(&touching).distinct_colors(), 1);
        let overlapping =
            Instance::from_spans([(q(0, 1), q(1, 1)), (q(99, 100), q(2, 1))]).unwrap();
        assert_eq!(offline_optimal(&overlapping).distinct_colors(), 2);
        let apart = Instance::from_spans([(q(0, 1), q(1, 1)), (q(3, 2), q(2, 1))]).unwrap();
        assert_eq!(offline_optimal(&apart).distinct_colors(), 1);
    }

    #[test]
    fn empty_instance_uses_no_colors() {
        for a in Algorithm::ALL {
            assert_eq!(run(a, &Instance::default()).distinct_colors(), 0);
        }
    }

    #[test]
    fn first_free_skips_used() {
        assert_eq!(first_free([]), 1);
        assert_eq!(first_free([1, 2, 4]), 3);
        assert_eq!(first_free([2, 3]), 1);
    }

    #[test]
    fn trace_reports_level_bounding_clique() {
        let inst = units(&[q(0, 1), q(2, 3), q(1, 3)]);
        let (r, trace) = run_kt_traced(&inst);
        assert_eq!(r, run(Algorithm::Kt, &inst));
        assert_eq!(trace[2].level, 3);
        assert_eq!(trace[2].clique_witness_size, 3);
        let p = &trace[2].clique_witness_point;
        assert!(q(2, 3) <= *p && *p <= q(1, 1));
        for t in &trace {
            assert!(t.clique_witness_size <= t.level);
        }
    }

    fn arb_instance(max_n: usize) -> impl Strategy<Value = Instance> {
        (0..=max_n, any::<u64>(), 1i64..30, prop::bool::ANY).prop_map(|(n, seed, span, unit)| {
            if unit {
                crate::generators::gen_random_unit(n, seed, &q(span, 1)).unwrap()
            } else {
                gen_random_general(n, seed, &q(span, 1), &q(3, 1)).unwrap()
            }
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn kt_level_matches_definition(inst in arb_instance(40)) {
            let mut kt = KiersteadTrotter::new();
            let mut levels = Vec::new();
            for v in &inst {
                let expected = level_by_definition(&inst.intervals()[..v.id], &levels, v);
                prop_assert_eq!(kt.level(v).unwrap(), expected);
                let a = kt.assign(v).unwrap();
                prop_assert_eq!(a.level, expected);
                levels.push(a.level);
            }
        }

        #[test]
        fn colorings_are_proper(inst in arb_instance(40)) {
            for a in Algorithm::ALL {
                prop_assert!(is_proper(&inst, &run(a, &inst)), "{a}");
            }
        }

        #[test]
        fn kt_structural_invariants(inst in arb_instance(60)) {
            let r = run(Algorithm::Kt, &inst);
            let w = omega(&inst).size;
            for (v, a) in inst.iter().zip(&r.assignments) {
                prop_assert!(a.level <= omega_containing(&inst, v).size);
            }
            prop_assert!(r.max_level() <= w);
            let level1: Vec<&Interval> = inst.iter().filter(|v| r.assignments[v.id].level == 1).collect();
            for (i, a) in level1.iter().enumerate() {
                for b in &level1[i + 1..] {
                    prop_assert!(!a.intersects(b));
                }
            }
            for (&level, &size) in &r.palette_sizes() {
                let cap = match level {
                    1 => 1,
                    2 if inst.is_unit() => 2,
                    _ => 3,
                };
                prop_assert!(size <= cap, "level {} uses {} colors", level, size);
            }
            let bound = if inst.is_unit() { 3 * w as i64 - 3 } else { 3 * w as i64 - 2 };
            prop_assert!(r.distinct_colors() as i64 <= bound.max(1));
        }

        #[test]
        fn online_prefix_consistency(inst in arb_instance(30), cut in 0usize..30) {
            let cut = cut.min(inst.len());
            let prefix = Instance::new(inst.intervals()[..cut].to_vec()).unwrap();
            for a in [Algorithm::Kt, Algorithm::FirstFit] {
                let full = run(a, &inst);
                let part = run(a, &prefix);
                prop_assert_eq!(&full.assignments[..cut], &part.assignments[..]);
            }
        }

        #[test]
        fn offline_matches_omega(inst in arb_instance(40)) {
            prop_assert_eq!(offline_optimal(&inst).distinct_colors(), omega(&inst).size);
        }
    }
}
