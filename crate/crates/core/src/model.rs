//! Domain types shared by the packer, the winner determination step and the
//! oracle. All lengths are millimeters; areas mm², volumes and masses mm³.
//!
//! Every type here is immutable once constructed. Names are reference
//! counted so layouts can be cloned freely across search iterations.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// An axis-aligned footprint: `length` along X, `width` along Y.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Footprint {
    pub length: f64,
    pub width: f64,
}

impl Footprint {
    pub fn new(length: f64, width: f64) -> Self {
        Self { length, width }
    }

    /// The footprint turned 90° about the vertical axis.
    pub fn rotate(self) -> Self {
        Self {
            length: self.width,
            width: self.length,
        }
    }

    pub fn area(self) -> f64 {
        self.length * self.width
    }
}

fn check_positive(part: &str, field: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidPart {
            part: part.to_owned(),
            field,
            expected: "positive and finite",
            value,
        })
    }
}

/// A part to print, reduced to its bounding box plus a filling fraction.
#[derive(Debug, Clone, PartialEq)]
pub struct Part {
    name: Arc<str>,
    length: f64,
    width: f64,
    height: f64,
    filling: f64,
}

impl Part {
    pub fn new(
        name: impl Into<Arc<str>>,
        length: f64,
        width: f64,
        height: f64,
        filling: f64,
    ) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::EmptyPartName);
        }
        check_positive(&name, "length", length)?;
        check_positive(&name, "width", width)?;
        check_positive(&name, "height", height)?;
        if !(filling.is_finite() && filling > 0.0 && filling <= 1.0) {
            return Err(Error::InvalidPart {
                part: name.to_string(),
                field: "filling",
                expected: "in (0, 1]",
                value: filling,
            });
        }
        Ok(Self {
            name,
            length,
            width,
            height,
            filling,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn filling(&self) -> f64 {
        self.filling
    }

    pub fn footprint(&self) -> Footprint {
        Footprint::new(self.length, self.width)
    }

    /// Bounding-box volume, `l · w · h`.
    pub fn volume(&self) -> f64 {
        part_volume(self)
    }

    /// Material volume, `volume · filling`.
    pub fn mass(&self) -> f64 {
        part_mass(self)
    }

    /// The same part with length and width exchanged.
    pub fn rotated(&self) -> Self {
        Self {
            name: self.name.clone(),
            length: self.width,
            width: self.length,
            ..*self
        }
    }

    /// Two parts are interchangeable when every physical attribute matches
    /// exactly; only the name differs.
    pub fn same_shape(&self, other: &Part) -> bool {
        self.length == other.length
            && self.width == other.width
            && self.height == other.height
            && self.filling == other.filling
    }
}

pub fn part_volume(part: &Part) -> f64 {
    part.length * part.width * part.height
}

pub fn part_mass(part: &Part) -> f64 {
    part_volume(part) * part.filling
}

/// Size of the sequence-and-orientation space, `2ⁿ · n!`, computed exactly.
pub fn search_space_size(n: u32) -> BigUint {
    let mut acc = BigUint::one();
    for k in 1..=n {
        acc *= 2u32 * k;
    }
    acc
}

/// The printer's build area and chamber height.
#[derive(Debug, Clone, PartialEq)]
pub struct Platform {
    name: Arc<str>,
    length: f64,
    width: f64,
    height: f64,
}

impl Platform {
    pub fn new(name: impl Into<Arc<str>>, length: f64, width: f64, height: f64) -> Result<Self> {
        let name = name.into();
        for (field, value) in [("length", length), ("width", width), ("height", height)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidPlatform {
                    platform: name.to_string(),
                    field,
                    value,
                });
            }
        }
        Ok(Self {
            name,
            length,
            width,
            height,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn area(&self) -> f64 {
        self.length * self.width
    }

    /// The whole bed as a single free area.
    pub fn full_area(&self) -> FreeArea {
        FreeArea {
            x: 0.0,
            y: 0.0,
            length: self.length,
            width: self.width,
        }
    }
}

/// A free rectangle on the bed, addressed by its top-left corner.
/// Y grows downward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeArea {
    pub x: f64,
    pub y: f64,
    pub length: f64,
    pub width: f64,
}

impl FreeArea {
    pub fn new(x: f64, y: f64, length: f64, width: f64) -> Self {
        Self {
            x,
            y,
            length,
            width,
        }
    }

    pub fn area(&self) -> f64 {
        self.length * self.width
    }

    pub fn is_degenerate(&self) -> bool {
        self.length <= 0.0 || self.width <= 0.0
    }
}

/// A part assigned to the batch at a given corner. Presence in a layout is
/// the assignment indicator; there is no separate matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Placement {
    part: Part,
    x: f64,
    y: f64,
    rotated: bool,
}

impl Placement {
    pub fn new(part: Part, x: f64, y: f64, rotated: bool) -> Self {
        Self {
            part,
            x,
            y,
            rotated,
        }
    }

    pub fn part(&self) -> &Part {
        &self.part
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn rotated(&self) -> bool {
        self.rotated
    }

    pub fn footprint(&self) -> Footprint {
        let fp = self.part.footprint();
        if self.rotated {
            fp.rotate()
        } else {
            fp
        }
    }

    pub fn placed_length(&self) -> f64 {
        self.footprint().length
    }

    pub fn placed_width(&self) -> f64 {
        self.footprint().width
    }

    pub fn area(&self) -> f64 {
        self.footprint().area()
    }

    /// True when the open interiors of the two rectangles intersect.
    pub fn overlaps(&self, other: &Placement) -> bool {
        let (a, b) = (self.footprint(), other.footprint());
        self.x < other.x + b.length
            && other.x < self.x + a.length
            && self.y < other.y + b.width
            && other.y < self.y + a.width
    }

    pub fn within(&self, platform: &Platform) -> bool {
        let fp = self.footprint();
        self.x >= 0.0
            && self.y >= 0.0
            && self.x + fp.length <= platform.length
            && self.y + fp.width <= platform.width
    }
}

/// A candidate batch: the parts placed on one platform plus the parts left
/// for later. Metrics are derived once at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    platform: Platform,
    placements: Vec<Placement>,
    unplaced: Vec<Part>,
    covered_area: f64,
    total_mass: f64,
}

impl Layout {
    pub fn new(platform: Platform, placements: Vec<Placement>, unplaced: Vec<Part>) -> Self {
        let covered_area = placements.iter().map(Placement::area).sum();
        let total_mass = placements.iter().map(|p| part_mass(p.part())).sum();
        Self {
            platform,
            placements,
            unplaced,
            covered_area,
            total_mass,
        }
    }

    pub fn empty(platform: Platform) -> Self {
        Self::new(platform, Vec::new(), Vec::new())
    }

    pub fn platform(&self) -> &Platform {
        &self.platform
    }

    pub fn placements(&self) -> &[Placement] {
        &self.placements
    }

    pub fn unplaced(&self) -> &[Part] {
        &self.unplaced
    }

    pub fn covered_area(&self) -> f64 {
        self.covered_area
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    pub fn coverage(&self) -> f64 {
        self.covered_area / self.platform.area()
    }

    /// Coverage in percent, computed from the areas directly so that exact
    /// quotients such as 97.625 stay exact.
    pub fn coverage_pct(&self) -> f64 {
        self.covered_area * 100.0 / self.platform.area()
    }

    pub fn part_count(&self) -> usize {
        self.placements.len()
    }

    /// Names of the placed parts, in placement order.
    pub fn part_names(&self) -> Vec<&str> {
        self.placements.iter().map(|p| p.part().name()).collect()
    }

    /// Pairwise overlap and containment check.
    pub fn is_feasible(&self) -> bool {
        let ps = &self.placements;
        ps.iter().all(|p| p.within(&self.platform))
            && ps
                .iter()
                .enumerate()
                .all(|(i, a)| ps[i + 1..].iter().all(|b| !a.overlaps(b)))
    }

    /// Same parts at the same corners in the same orientation.
    pub fn same_arrangement(&self, other: &Layout) -> bool {
        self.placements.len() == other.placements.len()
            && self.placements.iter().zip(&other.placements).all(|(a, b)| {
                a.part.name == b.part.name && a.x == b.x && a.y == b.y && a.rotated == b.rotated
            })
    }
}

/// Linear economics: cost `k + c·m`, income `p·m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EconomicParams {
    price_per_unit: f64,
    fixed_cost: f64,
    variable_cost: f64,
}

impl EconomicParams {
    pub fn new(price_per_unit: f64, fixed_cost: f64, variable_cost: f64) -> Result<Self> {
        for (field, value) in [
            ("price", price_per_unit),
            ("fixed_cost", fixed_cost),
            ("variable_cost", variable_cost),
        ] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::InvalidEconomics { field, value });
            }
        }
        Ok(Self {
            price_per_unit,
            fixed_cost,
            variable_cost,
        })
    }

    pub fn price_per_unit(&self) -> f64 {
        self.price_per_unit
    }

    pub fn fixed_cost(&self) -> f64 {
        self.fixed_cost
    }

    pub fn variable_cost(&self) -> f64 {
        self.variable_cost
    }
}

/// A validated problem: one platform and the parts competing for it.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    platform: Platform,
    parts: Vec<Part>,
    economics: Option<EconomicParams>,
}

impl Instance {
    pub fn new(
        platform: Platform,
        parts: Vec<Part>,
        economics: Option<EconomicParams>,
    ) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::NoParts);
        }
        let mut seen = HashSet::with_capacity(parts.len());
        for part in &parts {
            if !seen.insert(part.name()) {
                return Err(Error::DuplicatePartName(part.name().to_owned()));
            }
            if part.height() > platform.height() {
                return Err(Error::PartTooTall {
                    part: part.name().to_owned(),
                    platform: platform.name().to_owned(),
                    height: part.height(),
                    max: platform.height(),
                });
            }
        }
        Ok(Self {
            platform,
            parts,
            economics,
        })
    }

    pub fn platform(&self) -> &Platform {
        &self.platform
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn economics(&self) -> Option<&EconomicParams> {
        self.economics.as_ref()
    }

    pub fn with_economics(mut self, economics: Option<EconomicParams>) -> Self {
        self.economics = economics;
        self
    }
}
