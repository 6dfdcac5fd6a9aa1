use serde::{Deserialize, Serialize};

use super::instance::PlatformDoc;
use crate::error::Result;
use crate::model::{EconomicParams, Layout, Part, Placement, Platform};
use crate::packer::{SearchConfig, SearchResult};
use crate::wdp;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacementDoc {
    pub part: String,
    pub x: f64,
    pub y: f64,
    pub rotated: bool,
    /// Placed extent along X.
    pub length: f64,
    /// Placed extent along Y.
    pub width: f64,
    pub height: f64,
    pub filling: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub covered_area_mm2: f64,
    pub coverage_pct: f64,
    pub total_mass_mm3: f64,
    pub part_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub income: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub iterations: usize,
    pub ordering: String,
    /// Position in the mass-ranked candidate list, if it was kept there.
    pub candidate_rank: Option<usize>,
    /// Search iteration that first produced the layout.
    pub iteration: usize,
}

/// One layout as written to disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LayoutReport {
    pub platform: PlatformDoc,
    pub placements: Vec<PlacementDoc>,
    pub unplaced: Vec<String>,
    pub metrics: Metrics,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
}

impl LayoutReport {
    pub fn new(
        layout: &Layout,
        economics: Option<&EconomicParams>,
        provenance: Option<Provenance>,
    ) -> Self {
        let score = wdp::score_with(layout, economics);
        Self {
            platform: layout.platform().into(),
            placements: layout
                .placements()
                .iter()
                .map(|p| PlacementDoc {
                    part: p.part().name().to_owned(),
                    x: p.x(),
                    y: p.y(),
                    rotated: p.rotated(),
                    length: p.placed_length(),
                    width: p.placed_width(),
                    height: p.part().height(),
                    filling: p.part().filling(),
                })
                .collect(),
            unplaced: layout
                .unplaced()
                .iter()
                .map(|p| p.name().to_owned())
                .collect(),
            metrics: Metrics {
                covered_area_mm2: score.covered_area,
                coverage_pct: layout.coverage_pct(),
                total_mass_mm3: score.total_mass,
                part_count: score.part_count,
                income: score.income,
                cost: score.cost,
            },
            provenance,
        }
    }

    /// Rebuilds the placed part of the layout. Unplaced parts only keep
    /// their names in a report, so the rebuilt layout lists none.
    pub fn to_layout(&self) -> Result<Layout> {
        let p = &self.platform;
        let platform = Platform::new(p.name.as_str(), p.length, p.width, p.height)?;
        let placements = self
            .placements
            .iter()
            .map(|d| {
                let (l, w) = if d.rotated {
                    (d.width, d.length)
                } else {
                    (d.length, d.width)
                };
                let part = Part::new(d.part.as_str(), l, w, d.height, d.filling)?;
                Ok(Placement::new(part, d.x, d.y, d.rotated))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Layout::new(platform, placements, Vec::new()))
    }

    /// True when the stored metrics equal those recomputed from placements.
    pub fn metrics_consistent(&self) -> bool {
        let Ok(layout) = self.to_layout() else {
            return false;
        };
        let m = &self.metrics;
        m.covered_area_mm2 == layout.covered_area()
            && m.total_mass_mm3 == layout.total_mass()
            && m.part_count == layout.part_count()
            && m.coverage_pct == layout.coverage_pct()
    }
}

/// Two-decimal percent, ties rounded away from zero.
pub fn format_pct(pct: f64) -> String {
    format!("{:.2}", (pct * 100.0).round() / 100.0)
}

/// Output of the `pack` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackReport {
    pub winner: LayoutReport,
    pub max_coverage: LayoutReport,
    pub candidates: Vec<LayoutReport>,
}

impl PackReport {
    pub fn new(
        result: &SearchResult,
        config: &SearchConfig,
        economics: Option<&EconomicParams>,
    ) -> Self {
        let provenance = |layout: &Layout, iteration: usize| Provenance {
            seed: config.master_seed,
            iterations: config.iterations,
            ordering: config.ordering.as_str().to_owned(),
            candidate_rank: result
                .ranked
                .iter()
                .position(|c| c.layout.same_arrangement(layout)),
            iteration,
        };
        let report = |c: &crate::packer::Candidate| {
            LayoutReport::new(
                &c.layout,
                economics,
                Some(provenance(&c.layout, c.iteration)),
            )
        };
        Self {
            winner: report(result.winner()),
            max_coverage: report(result.best_coverage()),
            candidates: result.ranked.iter().map(report).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_instance;
    use crate::packer::pack_sequence;

    #[test]
    fn report_round_trips_and_rederives() {
        let inst = parse_instance(include_str!("../../fixtures/case_study.json")).unwrap();
        let mut parts = inst.parts().to_vec();
        parts.reverse();
        let layout = pack_sequence(inst.platform(), &parts);

        let econ = EconomicParams::new(2.0, 10.0, 0.5).unwrap();
        let report = LayoutReport::new(&layout, Some(&econ), None);
        assert!(report.metrics_consistent());
        assert_eq!(report.metrics.income, Some(2.0 * layout.total_mass()));

        let text = serde_json::to_string(&report).unwrap();
        let back: LayoutReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        let rebuilt = back.to_layout().unwrap();
        assert!(rebuilt.same_arrangement(&layout));
        assert_eq!(rebuilt.total_mass(), layout.total_mass());
    }

    #[test]
    fn percent_rounds_half_up() {
        assert_eq!(format_pct(39_050.0 * 100.0 / 40_000.0), "97.63");
        assert_eq!(format_pct(37_075.0 * 100.0 / 40_000.0), "92.69");
        assert_eq!(format_pct(100.0), "100.00");
    }

    #[test]
    fn stale_metrics_are_detected() {
        let inst = parse_instance(include_str!("../../fixtures/case_study.json")).unwrap();
        let layout = pack_sequence(inst.platform(), inst.parts());
        let mut report = LayoutReport::new(&layout, None, None);
        report.metrics.total_mass_mm3 += 1.0;
        assert!(!report.metrics_consistent());
    }
}
