//! Winner determination: every candidate batch is valued by the material it
//! consumes, and the batch with the most material wins.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::model::{EconomicParams, Layout};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BatchScore {
    pub total_mass: f64,
    pub covered_area: f64,
    pub coverage: f64,
    pub part_count: usize,
    pub income: Option<f64>,
    pub cost: Option<f64>,
}

impl BatchScore {
    pub fn profit(&self) -> Option<f64> {
        Some(self.income? - self.cost?)
    }
}

pub fn score(layout: &Layout) -> BatchScore {
    score_with(layout, None)
}

pub fn score_with(layout: &Layout, economics: Option<&EconomicParams>) -> BatchScore {
    let mass = layout.total_mass();
    BatchScore {
        total_mass: mass,
        covered_area: layout.covered_area(),
        coverage: layout.coverage(),
        part_count: layout.part_count(),
        income: economics.map(|e| income(mass, e)),
        cost: economics.map(|e| cost(mass, e)),
    }
}

/// Expected income `p · m`.
pub fn income(mass: f64, economics: &EconomicParams) -> f64 {
    economics.price_per_unit() * mass
}

/// Production cost `k + c · m`.
pub fn cost(mass: f64, economics: &EconomicParams) -> f64 {
    economics.fixed_cost() + economics.variable_cost() * mass
}

/// Ranking order: more mass first, then more covered area.
/// `Less` means `a` ranks ahead of `b`.
pub fn rank(a: &Layout, b: &Layout) -> Ordering {
    b.total_mass()
        .total_cmp(&a.total_mass())
        .then_with(|| b.covered_area().total_cmp(&a.covered_area()))
}

/// Coverage order used to report the densest layout: more covered area
/// first, then more mass.
pub fn rank_by_coverage(a: &Layout, b: &Layout) -> Ordering {
    b.covered_area()
        .total_cmp(&a.covered_area())
        .then_with(|| b.total_mass().total_cmp(&a.total_mass()))
}

/// Index of the winning candidate. Equal mass and area fall back to the
/// lower index.
pub fn winner_index(candidates: &[Layout]) -> Result<usize> {
    candidates
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| rank(a, b).then(i.cmp(j)))
        .map(|(i, _)| i)
        .ok_or(Error::NoCandidates)
}

pub fn select_winner(candidates: &[Layout]) -> Result<&Layout> {
    winner_index(candidates).map(|i| &candidates[i])
}
