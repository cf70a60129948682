//! Brute-force triangulation counts.
//!
//! A triangulation of a convex polygon with `sides` vertices is a maximal set
//! of pairwise non-crossing diagonals, and every such set has exactly
//! `sides - 3` members. This module counts those sets directly by
//! backtracking, sharing no code with the recursion in [`crate::catalan`].

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{serde_int, ExactInt};

/// Default cap on `sides` for [`count_triangulations`].
pub const DEFAULT_SIDES_LIMIT: usize = 12;

/// Hard ceiling even with an override: diagonal sets are tracked in a `u128`.
pub const MAX_SIDES: usize = 17;

/// A chord between two non-adjacent vertices `i < j` of a convex polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagonal {
    i: usize,
    j: usize,
}

impl Diagonal {
    pub fn new(i: usize, j: usize, sides: usize) -> Result<Self> {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        if j >= sides {
            return Err(Error::invalid(
                "Diagonal::new",
                format!("vertex {j} out of range for {sides} sides"),
            ));
        }
        if j - i < 2 || (i == 0 && j == sides - 1) {
            return Err(Error::invalid(
                "Diagonal::new",
                format!("({i}, {j}) joins adjacent vertices or a vertex to itself"),
            ));
        }
        Ok(Self { i, j })
    }

    pub fn endpoints(self) -> (usize, usize) {
        (self.i, self.j)
    }

    fn shares_endpoint(self, other: Self) -> bool {
        self.i == other.i || self.i == other.j || self.j == other.i || self.j == other.j
    }

    fn crosses(self, other: Self) -> bool {
        if self.shares_endpoint(other) {
            return false;
        }
        let inside = |v: usize| self.i < v && v < self.j;
        inside(other.i) != inside(other.j)
    }
}

/// Whether two diagonals of a convex polygon meet in its interior.
///
/// Purely combinatorial: the chords cross iff exactly one endpoint of the
/// second lies strictly inside the arc spanned by the first. Diagonals that
/// share a vertex never cross.
pub fn diagonals_cross(d1: Diagonal, d2: Diagonal, sides: usize) -> Result<bool> {
    for d in [d1, d2] {
        Diagonal::new(d.i, d.j, sides)?;
    }
    Ok(d1.crosses(d2))
}

/// All diagonals of a `sides`-gon in lexicographic order.
pub fn all_diagonals(sides: usize) -> Vec<Diagonal> {
    let mut out = Vec::new();
    for i in 0..sides {
        for j in i + 2..sides {
            if !(i == 0 && j == sides - 1) {
                out.push(Diagonal { i, j });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationCount {
    pub sides: usize,
    #[serde(with = "serde_int")]
    pub count: ExactInt,
    pub diagonals_per_triangulation: usize,
}

/// Counts triangulations of a convex polygon, refusing `sides` above
/// [`DEFAULT_SIDES_LIMIT`].
pub fn count_triangulations(sides: usize) -> Result<TriangulationCount> {
    count_triangulations_with_limit(sides, DEFAULT_SIDES_LIMIT)
}

/// As [`count_triangulations`] with a caller-chosen cap (at most [`MAX_SIDES`]).
pub fn count_triangulations_with_limit(sides: usize, limit: usize) -> Result<TriangulationCount> {
    if sides < 3 {
        return Err(Error::invalid(
            "count_triangulations",
            format!("a polygon needs at least 3 sides, got {sides}"),
        ));
    }
    let limit = limit.min(MAX_SIDES);
    if sides > limit {
        return Err(Error::Resource(format!(
            "enumerating triangulations of a {sides}-gon exceeds the limit of {limit} sides"
        )));
    }
    let diagonals = all_diagonals(sides);
    // compatible[a] has bit b set iff diagonals a and b can coexist.
    let compatible: Vec<u128> = diagonals
        .iter()
        .map(|&a| {
            diagonals
                .iter()
                .enumerate()
                .filter(|&(_, &b)| a != b && !a.crosses(b))
                .fold(0u128, |mask, (idx, _)| mask | 1 << idx)
        })
        .collect();
    let all: u128 = if diagonals.len() == 128 {
        u128::MAX
    } else {
        (1u128 << diagonals.len()) - 1
    };
    let mut search = Search {
        diagonals: &diagonals,
        compatible: &compatible,
        target: sides - 3,
        chosen: Vec::with_capacity(sides),
        count: 0,
    };
    search.extend(all);
    Ok(TriangulationCount {
        sides,
        count: BigInt::from(search.count),
        diagonals_per_triangulation: sides - 3,
    })
}

struct Search<'a> {
    diagonals: &'a [Diagonal],
    compatible: &'a [u128],
    target: usize,
    chosen: Vec<usize>,
    count: u64,
}

impl Search<'_> {
    /// `candidates` holds diagonals that come after every chosen one in
    /// lexicographic order and are compatible with all of them.
    fn extend(&mut self, candidates: u128) {
        if self.chosen.len() == self.target {
            self.debug_check();
            self.count += 1;
            return;
        }
        if (candidates.count_ones() as usize) < self.target - self.chosen.len() {
            return;
        }
        let mut rest = candidates;
        while rest != 0 {
            let idx = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            // only later diagonals remain eligible, so each set is built once
            let later = rest;
            self.chosen.push(idx);
            self.extend(later & self.compatible[idx]);
            self.chosen.pop();
        }
    }

    fn debug_check(&self) {
        if cfg!(debug_assertions) {
            for (a, &x) in self.chosen.iter().enumerate() {
                for &y in &self.chosen[a + 1..] {
                    debug_assert!(!self.diagonals[x].crosses(self.diagonals[y]));
                }
            }
        }
    }
}
