#![allow(dead_code)]

use batchplate::packer::{fits_with, Fit, PackOptions, PackState};
use batchplate::{FreeArea, Layout, Part, Platform};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Pairwise disjoint interiors, containment and metric consistency.
pub fn check_layout(layout: &Layout) -> Result<(), String> {
    let plat = layout.platform();
    let placements = layout.placements();
    for (i, a) in placements.iter().enumerate() {
        if !a.within(plat) {
            return Err(format!("{} leaves the platform", a.part().name()));
        }
        for b in &placements[i + 1..] {
            if rect_overlap(
                a.x(),
                a.y(),
                a.placed_length(),
                a.placed_width(),
                b.x(),
                b.y(),
                b.placed_length(),
                b.placed_width(),
            ) {
                return Err(format!("{} overlaps {}", a.part().name(), b.part().name()));
            }
        }
    }
    let area: f64 = placements
        .iter()
        .map(|p| p.placed_length() * p.placed_width())
        .sum();
    let mass: f64 = placements
        .iter()
        .map(|p| p.part().length() * p.part().width() * p.part().height() * p.part().filling())
        .sum();
    if area != layout.covered_area() {
        return Err(format!(
            "covered area {} but placements sum to {area}",
            layout.covered_area()
        ));
    }
    if (mass - layout.total_mass()).abs() > 1e-9 * mass.max(1.0) {
        return Err(format!(
            "total mass {} but placements sum to {mass}",
            layout.total_mass()
        ));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn rect_overlap(ax: f64, ay: f64, al: f64, aw: f64, bx: f64, by: f64, bl: f64, bw: f64) -> bool {
    ax < bx + bl && bx < ax + al && ay < by + bw && by < ay + aw
}

fn free_sum(areas: &[FreeArea]) -> f64 {
    areas.iter().map(|a| a.length * a.width).sum()
}

/// Packs step by step, checking area conservation after every step and
/// that no unplaced part would have fit any later free area.
pub fn pack_checked(
    platform: &Platform,
    parts: &[Part],
    options: PackOptions,
) -> Result<Layout, String> {
    let total = platform.length() * platform.width();
    let mut state = PackState::new(platform, parts, options);
    let mut history: Vec<Vec<FreeArea>> = vec![state.available_areas().to_vec()];
    let mut failed: Vec<(usize, Part)> = Vec::new();
    let mut step = 0;
    loop {
        let Some(next) = state.available_parts().next().cloned() else {
            break;
        };
        let before = state.unplaced().len();
        state.step();
        step += 1;
        if state.unplaced().len() > before {
            failed.push((step, next));
        }
        let placed: f64 = state
            .placements()
            .iter()
            .map(|p| p.placed_length() * p.placed_width())
            .sum();
        let free = free_sum(state.available_areas());
        if free + placed != total {
            return Err(format!(
                "step {step}: free {free} + placed {placed} != {total}"
            ));
        }
        history.push(state.available_areas().to_vec());
    }
    for (at, part) in &failed {
        for areas in &history[*at..] {
            for area in areas {
                for rotated_first in [false, true] {
                    if fits_with(part.footprint(), area, options.fit_rule, rotated_first)
                        != Fit::NoFit
                    {
                        return Err(format!("{} rejected but fits {area:?}", part.name()));
                    }
                }
            }
        }
    }
    let layout = state.into_layout();
    check_layout(&layout)?;
    Ok(layout)
}

/// Integer-dimension instance: platform sides in 20..=300, up to `max_parts`
/// parts with sides up to half the matching platform side (a tenth of them
/// up to the longer side) and fillings in tenths.
pub fn random_integer_instance(rng: &mut ChaCha8Rng, max_parts: usize) -> (Platform, Vec<Part>) {
    let len = rng.gen_range(20..=300) as f64;
    let wid = rng.gen_range(20..=300) as f64;
    let platform = Platform::new("fuzz", len, wid, 100.0).unwrap();
    let n = rng.gen_range(1..=max_parts);
    let parts = (0..n)
        .map(|i| {
            let (max_l, max_w) = if rng.gen_bool(0.1) {
                (len.max(wid), len.max(wid))
            } else {
                (len / 2.0, wid / 2.0)
            };
            Part::new(
                format!("p{i}"),
                rng.gen_range(1..=max_l as u32) as f64,
                rng.gen_range(1..=max_w as u32) as f64,
                rng.gen_range(1..=100) as f64,
                rng.gen_range(1..=10) as f64 / 10.0,
            )
            .unwrap()
        })
        .collect();
    (platform, parts)
}
