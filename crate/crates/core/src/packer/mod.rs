//! Single-pass guillotine packing over an ordered part list.
//!
//! Parts are taken from the front of the available-parts list and placed in
//! the top-left corner of the first free area that admits them, trying the
//! given orientation before the 90° one. The consumed area is replaced by
//! the strip directly below the part and the full-width remainder to its
//! right. Every step conserves area exactly: placed plus free equals the bed.

mod search;

pub use search::{
    multi_start, ordered_parts, shuffled_parts, Candidate, Ordering, SearchConfig, SearchResult,
    DEFAULT_ITERATIONS, DEFAULT_SEED,
};

use std::collections::VecDeque;

use crate::model::{Footprint, FreeArea, Layout, Part, Placement, Platform};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fit {
    AsIs,
    Rotated,
    NoFit,
}

/// How a footprint dimension is compared against an area dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FitRule {
    /// `≤`: a part may exactly fill an area.
    #[default]
    Inclusive,
    /// `<`: equality is rejected.
    Strict,
}

impl FitRule {
    fn admits(self, needed: f64, available: f64) -> bool {
        match self {
            FitRule::Inclusive => needed <= available,
            FitRule::Strict => needed < available,
        }
    }

    fn fits(self, fp: Footprint, area: &FreeArea) -> bool {
        self.admits(fp.width, area.width) && self.admits(fp.length, area.length)
    }
}

/// Where the two subareas of a consumed area go in the free-area list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AreaInsertion {
    /// At the consumed area's position, below-strip first.
    #[default]
    InPlace,
    /// At the back of the list, below-strip first.
    Append,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PackOptions {
    pub fit_rule: FitRule,
    pub insertion: AreaInsertion,
}

/// Width first, then length; the un-rotated orientation wins when both fit.
pub fn fits(part: Footprint, area: &FreeArea) -> Fit {
    fits_with(part, area, FitRule::Inclusive, false)
}

/// Fit test with an explicit comparison rule and orientation preference.
/// With `rotated_first` the 90° orientation is tried before the given one.
pub fn fits_with(part: Footprint, area: &FreeArea, rule: FitRule, rotated_first: bool) -> Fit {
    let order = if rotated_first {
        [Fit::Rotated, Fit::AsIs]
    } else {
        [Fit::AsIs, Fit::Rotated]
    };
    for fit in order {
        let fp = if fit == Fit::Rotated {
            part.rotate()
        } else {
            part
        };
        if rule.fits(fp, area) {
            return fit;
        }
    }
    Fit::NoFit
}

/// Splits `area` after placing `placed` in its top-left corner.
///
/// Returns `(below, right)`: `below` spans the part's length under it,
/// `right` is the full-width remainder. Either may be degenerate.
///
/// # Panics
///
/// If the footprint does not fit inside the area.
pub fn split_area(area: &FreeArea, placed: Footprint) -> (FreeArea, FreeArea) {
    assert!(
        placed.length <= area.length && placed.width <= area.width,
        "footprint {placed:?} does not fit area {area:?}"
    );
    let below = FreeArea::new(
        area.x,
        area.y + placed.width,
        placed.length,
        area.width - placed.width,
    );
    let right = FreeArea::new(
        area.x + placed.length,
        area.y,
        area.length - placed.length,
        area.width,
    );
    (below, right)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    /// Placed into the free area that was at this list index.
    Placed { area_index: usize, rotated: bool },
    /// No free area admits the part in either orientation.
    Unplaced,
}

/// In-progress packing: the remaining parts, the free areas and what has
/// been placed so far.
#[derive(Debug, Clone)]
pub struct PackState {
    platform: Platform,
    options: PackOptions,
    available_parts: VecDeque<Part>,
    available_areas: Vec<FreeArea>,
    placements: Vec<Placement>,
    unplaced: Vec<Part>,
}

impl PackState {
    pub fn new(platform: &Platform, ordered_parts: &[Part], options: PackOptions) -> Self {
        Self {
            available_parts: ordered_parts.iter().cloned().collect(),
            available_areas: vec![platform.full_area()],
            placements: Vec::with_capacity(ordered_parts.len()),
            unplaced: Vec::new(),
            platform: platform.clone(),
            options,
        }
    }

    pub fn available_parts(&self) -> impl Iterator<Item = &Part> {
        self.available_parts.iter()
    }

    pub fn available_areas(&self) -> &[FreeArea] {
        &self.available_areas
    }

    pub fn placements(&self) -> &[Placement] {
        &self.placements
    }

    pub fn unplaced(&self) -> &[Part] {
        &self.unplaced
    }

    pub fn is_done(&self) -> bool {
        self.available_parts.is_empty()
    }

    /// Allocates the next part with the default orientation preference.
    pub fn step(&mut self) -> Option<StepOutcome> {
        self.step_with(false)
    }

    pub fn step_with(&mut self, rotated_first: bool) -> Option<StepOutcome> {
        let part = self.available_parts.pop_front()?;
        let footprint = part.footprint();
        let hit = self
            .available_areas
            .iter()
            .enumerate()
            .find_map(|(i, area)| {
                match fits_with(footprint, area, self.options.fit_rule, rotated_first) {
                    Fit::NoFit => None,
                    fit => Some((i, fit == Fit::Rotated)),
                }
            });
        let Some((index, rotated)) = hit else {
            self.unplaced.push(part);
            return Some(StepOutcome::Unplaced);
        };

        let area = self.available_areas[index];
        let placed = if rotated {
            footprint.rotate()
        } else {
            footprint
        };
        let (below, right) = split_area(&area, placed);
        let fresh = [below, right].into_iter().filter(|a| !a.is_degenerate());
        match self.options.insertion {
            AreaInsertion::InPlace => {
                self.available_areas.splice(index..=index, fresh);
            }
            AreaInsertion::Append => {
                self.available_areas.remove(index);
                self.available_areas.extend(fresh);
            }
        }
        self.placements
            .push(Placement::new(part, area.x, area.y, rotated));
        Some(StepOutcome::Placed {
            area_index: index,
            rotated,
        })
    }

    pub fn into_layout(mut self) -> Layout {
        self.unplaced.extend(self.available_parts.drain(..));
        Layout::new(self.platform, self.placements, self.unplaced)
    }
}

/// Packs the parts in the given order with default options.
pub fn pack_sequence(platform: &Platform, ordered_parts: &[Part]) -> Layout {
    pack_sequence_with(platform, ordered_parts, PackOptions::default())
}

pub fn pack_sequence_with(
    platform: &Platform,
    ordered_parts: &[Part],
    options: PackOptions,
) -> Layout {
    let mut state = PackState::new(platform, ordered_parts, options);
    while state.step().is_some() {}
    state.into_layout()
}

/// Packs with a per-position orientation preference (`true` tries the
/// rotated footprint first). Used to explore the orientation freedom the
/// default fit rule resolves implicitly.
pub fn pack_sequence_oriented(
    platform: &Platform,
    ordered_parts: &[Part],
    rotated_first: &[bool],
    options: PackOptions,
) -> Layout {
    debug_assert_eq!(ordered_parts.len(), rotated_first.len());
    let mut state = PackState::new(platform, ordered_parts, options);
    for &pref in rotated_first {
        state.step_with(pref);
    }
    state.into_layout()
}
