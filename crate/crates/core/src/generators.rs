//! Instance generators: the tight adversarial construction for
//! Kierstead-Trotter on unit intervals, and seeded random streams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::Rational;
use crate::model::{Instance, Interval};

/// Random endpoints are multiples of `span / QUANTUM` (and lengths of
/// `max_len / QUANTUM`).
pub const QUANTUM: i64 = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("the tight construction needs x >= 3, got {0}")]
    XTooSmall(u64),
    #[error("span must be positive, got {0}")]
    NonPositiveSpan(Rational),
    #[error("max_len must be positive, got {0}")]
    NonPositiveMaxLen(Rational),
}

/// Parameter of the tight construction; the resulting graph has clique
/// number `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TightParams {
    x: u64,
}

impl TightParams {
    pub fn new(x: u64) -> Result<Self, GenError> {
        if x < 3 {
            return Err(GenError::XTooSmall(x));
        }
        Ok(TightParams { x })
    }

    pub fn x(&self) -> u64 {
        self.x
    }

    /// Sizes of the three phases: the alternating chain, the stacked
    /// levels `3..=x`, and the closing four intervals.
    pub fn phase_sizes(&self) -> [usize; 3] {
        let x = self.x as usize;
        let stacked = (2..x).map(|j| x - j + 3).sum();
        [x + 2, stacked, 4]
    }

    pub fn interval_count(&self) -> usize {
        self.phase_sizes().iter().sum()
    }
}

/// Arrival permutation of the stacked phase: identity except that the
/// third and fourth slots are swapped.
fn slot(a: u64) -> u64 {
    match a {
        3 => 4,
        4 => 3,
        a => a,
    }
}

/// The tight instance for clique number `x`.
///
/// With step `s = 1 - 1/x`:
/// - a chain of `x + 2` unit intervals with lefts `(i-1)s`, `i = 1..=x+2`,
///   alternating between levels 1 and 2;
/// - for each `j = 2..=x-1`, intervals with lefts `(i-1)s + (j-1)/x` for
///   `i` running through the slots `1, 2, 4, 3, 5, ..., x-j+3`, each landing
///   on level `j + 1` and together using three colors there;
/// - four intervals past the chain, at `(x+1)s` plus `1 + 1/x`, `2 + 2/x`,
///   `1 + 2/x`, `2 + 1/x`, the last two on level 2 with two colors.
pub fn gen_tight(params: TightParams) -> Instance {
    let x = params.x as i64;
    let inv_x = Rational::new(1, x).expect("x >= 3");
    let step = &Rational::one() - &inv_x;
    let at = |i: i64| Rational::from(i - 1) * &step;

    let mut lefts = Vec::with_capacity(params.interval_count());
    for i in 1..=x + 2 {
        lefts.push(at(i));
    }
    for j in 2..x {
        let shift = Rational::from(j - 1) * &inv_x;
        for a in 1..=(x - j + 3) {
            lefts.push(at(slot(a as u64) as i64) + &shift);
        }
    }
    let base = Rational::from(x + 1) * &step;
    for (whole, frac) in [(1, 1), (2, 2), (1, 2), (2, 1)] {
        lefts.push(&base + &(Rational::from(whole) + Rational::from(frac) * &inv_x));
    }
    debug_assert_eq!(lefts.len(), params.interval_count());
    Instance::from_unit_lefts(lefts)
}

fn check_span(span: &Rational) -> Result<(), GenError> {
    if !span.is_positive() {
        return Err(GenError::NonPositiveSpan(span.clone()));
    }
    Ok(())
}

/// `n` unit intervals with lefts drawn from `{span * m / QUANTUM : 0 <= m <=
/// QUANTUM}` by a ChaCha8 stream seeded with `seed`.
pub fn gen_random_unit(n: usize, seed: u64, span: &Rational) -> Result<Instance, GenError> {
    check_span(span)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let step = span * &Rational::new(1, QUANTUM).expect("nonzero");
    let lefts: Vec<Rational> = (0..n)
        .map(|_| &step * &Rational::from(rng.gen_range(0..=QUANTUM)))
        .collect();
    Ok(Instance::from_unit_lefts(lefts))
}

/// Like [`gen_random_unit`], with lengths drawn from `{max_len * k /
/// QUANTUM : 1 <= k <= QUANTUM}`.
pub fn gen_random_general(
    n: usize,
    seed: u64,
    span: &Rational,
    max_len: &Rational,
) -> Result<Instance, GenError> {
    check_span(span)?;
    if !max_len.is_positive() {
        return Err(GenError::NonPositiveMaxLen(max_len.clone()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let quantum = Rational::new(1, QUANTUM).expect("nonzero");
    let left_step = span * &quantum;
    let len_step = max_len * &quantum;
    let intervals = (0..n)
        .map(|id| {
            let left = &left_step * &Rational::from(rng.gen_range(0..=QUANTUM));
            let len = &len_step * &Rational::from(rng.gen_range(1..=QUANTUM));
            let right = &left + &len;
            Interval { id, left, right }
        })
        .collect();
    Ok(Instance::new(intervals).expect("positive lengths and contiguous ids"))
}
