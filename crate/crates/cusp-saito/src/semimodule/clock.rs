//! The n-clock `Z/nZ`, separations, circular intervals and level sets.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{oracle_membership, SemimoduleBasis};
use crate::semigroup::CuspSemigroup;

/// A point of the n-clock.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ClockPoint {
    pub residue: i64,
    pub n: i64,
}

impl ClockPoint {
    pub fn new(k: i64, n: i64) -> Self {
        ClockPoint { residue: k.rem_euclid(n), n }
    }

    pub fn shifted(self, k: i64) -> Self {
        ClockPoint::new(self.residue + k, self.n)
    }
}

/// The clock point of `k`: the residue `r` with `m·r ≡ k (mod n)`.
///
/// ```
/// use cusp_saito::semigroup::CuspSemigroup;
/// use cusp_saito::semimodule::zeta;
/// let g = CuspSemigroup::new(7, 36).unwrap();
/// assert_eq!(zeta(&g, 123).residue, 4);
/// ```
pub fn zeta(g: &CuspSemigroup, k: i64) -> ClockPoint {
    ClockPoint::new(k.rem_euclid(g.n) * g.m_inverse_mod_n(), g.n)
}

/// The unique `β ∈ [0, n)` with `Q = P + β`.
pub fn separation(p: ClockPoint, q: ClockPoint) -> i64 {
    debug_assert_eq!(p.n, q.n);
    (q.residue - p.residue).rem_euclid(p.n)
}

/// A circular interval `<start, end>` of the clock, or one of the degenerate shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CircularInterval {
    Empty,
    Full,
    Arc { start: ClockPoint, end: ClockPoint },
}

impl CircularInterval {
    /// Points `start + k` for `0 <= k <= S(start, end)`.
    pub fn points(&self, n: i64) -> BTreeSet<i64> {
        match self {
            CircularInterval::Empty => BTreeSet::new(),
            CircularInterval::Full => (0..n).collect(),
            CircularInterval::Arc { start, end } => (0..=separation(*start, *end)).map(|k| start.shifted(k).residue).collect(),
        }
    }

    /// Recognizes a set of residues as a circular interval.
    pub fn recognize(points: &BTreeSet<i64>, n: i64) -> Option<CircularInterval> {
        if points.is_empty() {
            return Some(CircularInterval::Empty);
        }
        if points.len() as i64 == n {
            return Some(CircularInterval::Full);
        }
        let starts: Vec<i64> = points.iter().copied().filter(|p| !points.contains(&(p - 1).rem_euclid(n))).collect();
        if starts.len() != 1 {
            return None;
        }
        let start = ClockPoint::new(starts[0], n);
        let end = start.shifted(points.len() as i64 - 1);
        Some(CircularInterval::Arc { start, end })
    }
}

/// The level set `R_q = ζ(Λ ∩ I_q)` with `I_q = {nq, ..., nq+n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSet {
    pub q: i64,
    pub points: BTreeSet<i64>,
    pub interval: Option<CircularInterval>,
}

impl LevelSet {
    pub fn is_circular(&self) -> bool {
        self.interval.is_some()
    }
    pub fn is_full(&self) -> bool {
        matches!(self.interval, Some(CircularInterval::Full))
    }
}

pub fn level_set(b: &SemimoduleBasis, q: i64) -> LevelSet {
    let g = &b.gamma;
    let points: BTreeSet<i64> = (g.n * q..g.n * q + g.n).filter(|&k| oracle_membership(b, k)).map(|k| zeta(g, k).residue).collect();
    let interval = CircularInterval::recognize(&points, g.n);
    LevelSet { q, points, interval }
}
